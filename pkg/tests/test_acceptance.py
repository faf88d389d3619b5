"""
Pruebas de aceptación del motor completo.

Por defecto se ejecutan con tamaños reducidos; con STRINGTOP_FULL_SUITE=1 se
usan los tamaños completos (200 tuplas de longitud <= 10, 500 palabras de
longitud <= 12, 100 palabras para conjugación).
"""

import unittest
import os
import sys
from pathlib import Path

# Agregar el directorio raíz al path para imports
sys.path.append(str(Path(__file__).parent.parent))

from core.bialgebra import StringBialgebra
from core.combinations import Combo
from core.surface import preset_by_name
from core.validation_tools import IdentityValidator
from core.words import CyclicWord, canonical_form
from tests.test_bialgebra import AbsoluteCrossingAlgebra

FULL_SUITE = os.environ.get("STRINGTOP_FULL_SUITE") == "1"
SURFACES = ("torus1", "pants", "g2b1")

IDENTITY_TRIALS = 200 if FULL_SUITE else 15
IDENTITY_MAX_LEN = 10 if FULL_SUITE else 6
INVOLUTIVE_TRIALS = 500 if FULL_SUITE else 40
INVOLUTIVE_MAX_LEN = 12 if FULL_SUITE else 8
CONJUGACY_TRIALS = 100 if FULL_SUITE else 20


def validator_for(name):
    return IdentityValidator(StringBialgebra(preset_by_name(name)))


class TestLieBialgebraIdentities(unittest.TestCase):
    """Antisimetría, Jacobi, co-Jacobi y compatibilidad sobre palabras aleatorias"""

    def assert_identity(self, identity, trials, max_len, seed=2024):
        for name in SURFACES:
            with self.subTest(surface=name, identity=identity):
                result = validator_for(name).run_identity(identity, seed, trials, max_len)
                counterexample = result["counterexample"]
                self.assertEqual(result["failed"], 0,
                                 f"{name}: {counterexample.operands if counterexample else ''}")

    def test_antisymmetry(self):
        self.assert_identity("antisym", IDENTITY_TRIALS, IDENTITY_MAX_LEN)

    def test_jacobi(self):
        self.assert_identity("jacobi", IDENTITY_TRIALS, IDENTITY_MAX_LEN)

    def test_cojacobi(self):
        self.assert_identity("cojacobi", IDENTITY_TRIALS, IDENTITY_MAX_LEN)

    def test_drinfeld(self):
        self.assert_identity("drinfeld", IDENTITY_TRIALS, IDENTITY_MAX_LEN)

    def test_involutive(self):
        self.assert_identity("involutive", INVOLUTIVE_TRIALS, INVOLUTIVE_MAX_LEN)

    def test_conjugacy(self):
        self.assert_identity("conjugacy", CONJUGACY_TRIALS, IDENTITY_MAX_LEN)


class TestOracleCases(unittest.TestCase):
    """Casos calculados a mano"""

    def test_torus_oracles(self):
        algebra = StringBialgebra(preset_by_name("torus1"))
        a, b = Combo.from_word(CyclicWord.parse("a")), Combo.from_word(CyclicWord.parse("b"))
        self.assertEqual(algebra.bracket(a, b), Combo.from_word(CyclicWord.parse("ab")))
        self.assertTrue(algebra.cobracket(Combo.from_word(CyclicWord.parse("abAb"))).is_zero)

    def test_pants_oracles(self):
        algebra = StringBialgebra(preset_by_name("pants"))
        a, b = Combo.from_word(CyclicWord.parse("a")), Combo.from_word(CyclicWord.parse("b"))
        self.assertTrue(algebra.bracket(a, b).is_zero)
        self.assertTrue(algebra.cobracket(Combo.from_word(CyclicWord.parse("ab"))).is_zero)


class TestNontriviality(unittest.TestCase):
    """El corchete y el co-corchete no son idénticamente nulos"""

    def test_witnesses(self):
        torus = validator_for("torus1").find_nontriviality_witnesses(seed=0, max_len=8)
        self.assertEqual([str(w) for w in torus["bracket"]["operands"]], ["a", "b"])
        self.assertFalse(torus["bracket"]["value"].is_zero)
        pants = validator_for("pants").find_nontriviality_witnesses(seed=0, max_len=8)
        self.assertIsNotNone(pants["cobracket"])
        self.assertFalse(pants["cobracket"]["value"].is_zero)

    def test_all_records_witnesses(self):
        validation = validator_for("pants").comprehensive_validation(
            list(IdentityValidator.IDENTITIES), seed=5, trials=3, max_len=5, witnesses=True)
        self.assertTrue(validation["all_passed"])
        self.assertIn("witnesses", IdentityValidator.summarize(validation))


class TestHarnessDetectsMutation(unittest.TestCase):
    """Con una regla de signo defectuosa el validador debe reportar contraejemplos"""

    def test_absolute_sign_reported(self):
        validator = IdentityValidator(AbsoluteCrossingAlgebra(preset_by_name("torus1")))
        result = validator.run_identity("antisym", seed=11, trials=50, max_len=6)
        self.assertGreater(result["failed"], 0)
        counterexample = result["counterexample"]
        self.assertEqual(len(counterexample.operands), 2)
        self.assertFalse(counterexample.defect.is_zero)


class CanonicalReadingAlgebra(StringBialgebra):
    """Corchete que solo ve el segundo operando en su rotación canónica"""

    def word_bracket(self, alpha, beta):
        if beta != canonical_form(beta.letters):
            return {}
        return super().word_bracket(alpha, beta)


class TestConjugacyCheck(unittest.TestCase):
    """La verificación de conjugación rota ambos operandos"""

    def test_second_operand_rotated(self):
        x, y = CyclicWord.parse("a"), CyclicWord.parse("ab")
        validator = IdentityValidator(CanonicalReadingAlgebra(preset_by_name("torus1")))
        self.assertFalse(validator.algebra.bracket(Combo.from_word(x), Combo.from_word(y)).is_zero)
        self.assertFalse(validator.check_conjugacy(x, y).is_zero)

    def test_consistent_algebra_passes(self):
        x, y = CyclicWord.parse("aB"), CyclicWord.parse("abAb")
        self.assertTrue(validator_for("torus1").check_conjugacy(x, y).is_zero)
        self.assertTrue(validator_for("torus1").check_conjugacy(y, x).is_zero)


class TestDeterminism(unittest.TestCase):
    """Mismos parámetros, mismo resultado para cualquier número de hilos"""

    def test_thread_count_independent(self):
        summaries = []
        for workers in (1, 2, 8):
            validation = validator_for("torus1").comprehensive_validation(
                ["antisym", "involutive"], seed=9, trials=20, max_len=6, workers=workers)
            summaries.append(IdentityValidator.summarize(validation))
        self.assertEqual(summaries[0], summaries[1])
        self.assertEqual(summaries[0], summaries[2])

    def test_same_seed_same_words(self):
        first = validator_for("pants").run_identity("jacobi", 42, 5, 6)
        second = validator_for("pants").run_identity("jacobi", 42, 5, 6)
        self.assertEqual([o.operands for o in first["outcomes"]],
                         [o.operands for o in second["outcomes"]])


def run_all_tests():
    """Ejecuta todas las pruebas unitarias"""
    loader = unittest.TestLoader()
    suite = unittest.TestSuite()
    for case in (TestLieBialgebraIdentities, TestOracleCases, TestNontriviality,
                 TestHarnessDetectsMutation, TestConjugacyCheck, TestDeterminism):
        suite.addTests(loader.loadTestsFromTestCase(case))
    runner = unittest.TextTestRunner(verbosity=2)
    result = runner.run(suite)
    return result.wasSuccessful()


if __name__ == '__main__':
    success = run_all_tests()
    sys.exit(0 if success else 1)
