"""
Validación aleatoria y reproducible de las identidades de bialgebra de Lie.

Cada identidad se evalúa como un operador de defecto que debe anularse
exactamente. Las tuplas de prueba se generan todas, en orden, a partir de la
semilla antes de evaluarlas, de modo que el reporte no depende del número de
hilos.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import combinations
from typing import Any, Callable, Dict, Optional, Sequence, Tuple

from core.bialgebra import StringBialgebra
from core.combinations import Combo, LinearCombination, TensorCombo
from core.words import CyclicWord
from utils.word_generators import RandomWordGenerator

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TrialOutcome:
    index: int
    operands: Tuple[CyclicWord, ...]
    defect: LinearCombination

    @property
    def passed(self) -> bool:
        return self.defect.is_zero


class IdentityValidator:
    """Evalúa los defectos de las identidades sobre palabras aleatorias"""

    # identidad -> (aridad, subsecuencia aleatoria)
    IDENTITIES = {
        "antisym": (2, 1),
        "jacobi": (3, 2),
        "cojacobi": (1, 3),
        "drinfeld": (2, 4),
        "involutive": (1, 5),
        "conjugacy": (2, 6),
    }
    WITNESS_STREAM = 7

    def __init__(self, algebra: StringBialgebra):
        self.algebra = algebra
        self.rank = algebra.rose.rank
        self._checks: Dict[str, Callable[..., LinearCombination]] = {
            "antisym": self.check_antisymmetry,
            "jacobi": self.check_jacobi,
            "cojacobi": self.check_cojacobi,
            "drinfeld": self.check_drinfeld,
            "involutive": self.check_involutive,
            "conjugacy": self.check_conjugacy,
        }

    # --- defectos por identidad --------------------------------------------

    def check_antisymmetry(self, x: CyclicWord, y: CyclicWord) -> LinearCombination:
        """[x,y] + [y,x]; si se anula, también s2(x) + τ s2(x)"""
        defect = self.algebra.antisymmetry_defect(Combo.from_word(x), Combo.from_word(y))
        if defect:
            return defect
        return self.algebra.coantisymmetry_defect(Combo.from_word(x))

    def check_jacobi(self, x: CyclicWord, y: CyclicWord, z: CyclicWord) -> LinearCombination:
        return self.algebra.jacobi_defect(Combo.from_word(x), Combo.from_word(y), Combo.from_word(z))

    def check_cojacobi(self, x: CyclicWord) -> LinearCombination:
        return self.algebra.cojacobi_defect(Combo.from_word(x))

    def check_drinfeld(self, x: CyclicWord, y: CyclicWord) -> LinearCombination:
        return self.algebra.drinfeld_defect(Combo.from_word(x), Combo.from_word(y))

    def check_involutive(self, x: CyclicWord) -> LinearCombination:
        return self.algebra.e_operator(Combo.from_word(x))

    def check_conjugacy(self, x: CyclicWord, y: CyclicWord) -> LinearCombination:
        """
        Recalcula [x,y] y s2(x) leyendo x e y desde cada una de sus rotaciones.

        Devuelve la primera diferencia no nula respecto a la lectura canónica.
        """
        base_bracket = Combo(self.algebra.word_bracket(x, y))
        base_cobracket = TensorCombo(2, self.algebra.word_cobracket(x))
        for k in range(1, len(x)):
            rotated = CyclicWord(x.rotation(k))
            difference = Combo(self.algebra.word_bracket(rotated, y)) - base_bracket
            if difference:
                return difference
            co_difference = TensorCombo(2, self.algebra.word_cobracket(rotated)) - base_cobracket
            if co_difference:
                return co_difference
        for k in range(1, len(y)):
            rotated = CyclicWord(y.rotation(k))
            difference = Combo(self.algebra.word_bracket(x, rotated)) - base_bracket
            if difference:
                return difference
        return Combo.zero()

    # --- ejecución -----------------------------------------------------------

    def _evaluate(self, identity: str, index: int, operands: Sequence[CyclicWord]) -> TrialOutcome:
        defect = self._checks[identity](*operands)
        if defect:
            logger.info("Defecto no nulo en %s, prueba %d: %s", identity, index,
                        ", ".join(map(str, operands)))
        return TrialOutcome(index, tuple(operands), defect)

    def run_identity(self, identity: str, seed: int, trials: int, max_len: int,
                     workers: int = 1) -> Dict[str, Any]:
        if identity not in self.IDENTITIES:
            raise ValueError(f"Identidad desconocida: {identity}")
        if trials < 1:
            raise ValueError("El número de pruebas debe ser >= 1")
        arity, stream = self.IDENTITIES[identity]
        generator = RandomWordGenerator(self.rank, seed, stream)
        tuples = generator.generate_trials(trials, arity, max_len)
        logger.debug("Evaluando %s: %d pruebas, %d hilos", identity, trials, workers)

        if workers > 1:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                outcomes = list(pool.map(lambda item: self._evaluate(identity, *item),
                                         enumerate(tuples)))
        else:
            outcomes = [self._evaluate(identity, index, operands)
                        for index, operands in enumerate(tuples)]

        failures = [outcome for outcome in outcomes if not outcome.passed]
        return {
            "identity": identity,
            "arity": arity,
            "trials": trials,
            "passed": len(outcomes) - len(failures),
            "failed": len(failures),
            "outcomes": outcomes,
            "counterexample": failures[0] if failures else None,
        }

    def comprehensive_validation(self, identities: Sequence[str], seed: int, trials: int,
                                 max_len: int, workers: int = 1,
                                 witnesses: bool = False) -> Dict[str, Any]:
        """Ejecuta las identidades pedidas y, opcionalmente, busca testigos"""
        results = {}
        for identity in identities:
            results[identity] = self.run_identity(identity, seed, trials, max_len, workers)
        validation = {
            "results": results,
            "all_passed": all(r["failed"] == 0 for r in results.values()),
        }
        if witnesses:
            validation["witnesses"] = self.find_nontriviality_witnesses(seed, max_len)
        return validation

    def find_nontriviality_witnesses(self, seed: int, max_len: int = 8,
                                     attempts: int = 2000) -> Dict[str, Optional[Dict[str, Any]]]:
        """
        Busca un par con corchete no nulo y una clase con co-corchete no nulo.

        Primero prueba pares de generadores; después, palabras aleatorias de la
        subsecuencia reservada para testigos.
        """
        bracket_witness = None
        for i, j in combinations(range(1, self.rank + 1), 2):
            x, y = CyclicWord((i,)), CyclicWord((j,))
            value = self.algebra.bracket(Combo.from_word(x), Combo.from_word(y))
            if value:
                bracket_witness = {"operands": (x, y), "value": value}
                break

        generator = RandomWordGenerator(self.rank, seed, self.WITNESS_STREAM)
        cobracket_witness = None
        for _ in range(attempts):
            if bracket_witness is None:
                x, y = generator.random_tuple(2, max_len)
                value = self.algebra.bracket(Combo.from_word(x), Combo.from_word(y))
                if value:
                    bracket_witness = {"operands": (x, y), "value": value}
            if cobracket_witness is None:
                x = generator.random_word(max_len)
                value = self.algebra.cobracket(Combo.from_word(x))
                if value:
                    cobracket_witness = {"operands": (x,), "value": value}
            if bracket_witness is not None and cobracket_witness is not None:
                break
        return {"bracket": bracket_witness, "cobracket": cobracket_witness}

    # --- reportes ------------------------------------------------------------

    @staticmethod
    def summarize(validation: Dict[str, Any]) -> Dict[str, Any]:
        """Versión serializable del resultado: pasa/falla por prueba y primer contraejemplo"""
        summary = {"all_passed": validation["all_passed"], "results": {}}
        for identity, result in validation["results"].items():
            counterexample = result["counterexample"]
            summary["results"][identity] = {
                "trials": result["trials"],
                "passed": result["passed"],
                "failed": result["failed"],
                "outcomes": [{"trial": o.index, "passed": o.passed} for o in result["outcomes"]],
                "counterexample": None if counterexample is None else {
                    "trial": counterexample.index,
                    "operands": list(counterexample.operands),
                    "defect": counterexample.defect,
                },
            }
        if "witnesses" in validation:
            summary["witnesses"] = validation["witnesses"]
        return summary

    @staticmethod
    def generate_validation_report(validation: Dict[str, Any], render: Callable[[LinearCombination], str]) -> str:
        """Genera un reporte de validación en texto"""
        report = "REPORTE DE VALIDACIÓN DE IDENTIDADES\n"
        report += "=" * 50 + "\n\n"
        for number, (identity, result) in enumerate(validation["results"].items(), start=1):
            status = "OK" if result["failed"] == 0 else "FALLA"
            report += f"{number}. {identity.upper()}: {status}\n"
            report += f"   - Pruebas: {result['trials']}\n"
            report += f"   - Aprobadas: {result['passed']}\n"
            report += f"   - Fallidas: {result['failed']}\n"
            counterexample = result["counterexample"]
            if counterexample is not None:
                operands = ", ".join(str(w) for w in counterexample.operands)
                report += f"   - Contraejemplo (prueba {counterexample.index}): {operands}\n"
                report += f"   - Defecto: {render(counterexample.defect)}\n"
            report += "\n"

        witnesses = validation.get("witnesses")
        if witnesses is not None:
            report += "TESTIGOS DE NO TRIVIALIDAD:\n"
            for name in ("bracket", "cobracket"):
                witness = witnesses[name]
                if witness is None:
                    report += f"   - {name}: no encontrado\n"
                else:
                    operands = ", ".join(str(w) for w in witness["operands"])
                    report += f"   - {name}({operands}) = {render(witness['value'])}\n"
            report += "\n"

        report += "RESULTADO: " + ("TODAS LAS IDENTIDADES SE CUMPLEN" if validation["all_passed"]
                                   else "HAY IDENTIDADES QUE FALLAN") + "\n"
        return report
