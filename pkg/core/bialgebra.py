"""
Operadores de cuerdas en dimensión 2: corchete de Goldman (c2), co-corchete
de Turaev (s2), el operador de género uno e = c2 ∘ s2 y los defectos de las
identidades de bialgebra de Lie.

Los cruces se detectan en el árbol recubridor universal de la rosa gruesa.
Un sitio ``i`` de una palabra cíclica ``x_1 ... x_p`` es el hueco antes de
``x_i``; desde él salen dos rayos: ``W_i = x_i x_{i+1} ...`` (adelante) y
``V_i = x_{i-1}^-1 x_{i-2}^-1 ...`` (atrás). El levantamiento de la curva une
el extremo de ``V_i`` con el de ``W_i``. Dos levantamientos se cortan cuando
sus pares de extremos se alternan en el orden circular de los extremos del
árbol plano.
"""

import logging
from collections import Counter, defaultdict
from dataclasses import dataclass
from enum import Enum, IntEnum
from fractions import Fraction
from math import gcd
from typing import Dict, Optional, Tuple

from core.combinations import Combo, LinearCombination, TensorCombo
from core.errors import AlphabetMismatchError, EqualRaysError
from core.surface import FatRose
from core.words import CyclicWord, Letter, Word

logger = logging.getLogger(__name__)

# Rayo crudo: (letras, índice 0-based del sitio, hacia adelante?)
RawRay = Tuple[Word, int, bool]


class Direction(Enum):
    FORWARD = "forward"
    BACKWARD = "backward"


class CrossingVerdict(IntEnum):
    NEGATIVE = -1
    NONE = 0
    POSITIVE = 1


@dataclass(frozen=True)
class Site:
    """Hueco antes de la letra ``position`` (1-based) de una palabra no trivial"""
    word: CyclicWord
    position: int

    def __post_init__(self):
        if self.word.is_trivial:
            raise ValueError("Un sitio requiere una palabra no trivial")
        if not 1 <= self.position <= len(self.word):
            raise ValueError(f"Posición {self.position} fuera de rango 1..{len(self.word)}")


@dataclass(frozen=True)
class Ray:
    site: Site
    direction: Direction

    @property
    def raw(self) -> RawRay:
        return (self.site.word.letters, self.site.position - 1, self.direction is Direction.FORWARD)

    @property
    def period(self) -> int:
        return len(self.site.word)

    def letter(self, depth: int) -> Letter:
        return _ray_letter(self.raw, depth)


@dataclass(frozen=True)
class RayComparison:
    """Resultado de comparar dos rayos: iguales o divergentes a profundidad ``depth``"""
    equal: bool
    depth: int = 0
    dart1: Optional[Letter] = None
    dart2: Optional[Letter] = None
    incoming: Optional[Letter] = None


def _ray_letter(ray: RawRay, depth: int) -> Letter:
    letters, offset, forward = ray
    if forward:
        return letters[(offset + depth - 1) % len(letters)]
    return -letters[(offset - depth) % len(letters)]


def _divergence(ray1: RawRay, ray2: RawRay) -> int:
    """Profundidad de la primera diferencia, o 0 si los rayos son iguales"""
    p, q = len(ray1[0]), len(ray2[0])
    # Fine–Wilf: coincidir hasta p + q - gcd(p, q) implica igualdad
    for depth in range(1, p + q - gcd(p, q) + 1):
        if _ray_letter(ray1, depth) != _ray_letter(ray2, depth):
            return depth
    return 0


def _end_orientation(rose: FatRose, ray1: RawRay, ray2: RawRay, ray3: RawRay) -> int:
    rays = (ray1, ray2, ray3)
    d12 = _divergence(ray1, ray2)
    d13 = _divergence(ray1, ray3)
    d23 = _divergence(ray2, ray3)
    if 0 in (d12, d13, d23):
        raise EqualRaysError("Dos de los rayos coinciden como palabras infinitas")
    deepest = max(d12, d13, d23)
    if d12 == d13 == d23:
        darts = [_ray_letter(ray, deepest) for ray in rays]
    else:
        if d12 == deepest:
            pair, third = (0, 1), 2
        elif d13 == deepest:
            pair, third = (0, 2), 1
        else:
            pair, third = (1, 2), 0
        darts = [None, None, None]
        for k in pair:
            darts[k] = _ray_letter(rays[k], deepest)
        # el tercer extremo queda del lado del dardo entrante
        darts[third] = -_ray_letter(rays[pair[0]], deepest - 1)
    return rose.cyclic_orientation(*darts)


def _crossing_verdict(rose: FatRose, a: Word, i0: int, b: Word, j0: int) -> int:
    entering = -a[i0 - 1]
    # solo cuenta el vértice donde la hebra entrante de alpha deja el eje de beta
    if entering == b[j0] or entering == -b[j0 - 1]:
        return 0
    wa, va = (a, i0, True), (a, i0, False)
    wb, vb = (b, j0, True), (b, j0, False)
    try:
        first = _end_orientation(rose, wa, wb, va)
        second = _end_orientation(rose, wa, va, vb)
    except EqualRaysError:
        return 0
    return first if first == second else 0


def ray_compare(r1: Ray, r2: Ray, rose: FatRose = None) -> RayComparison:
    """Compara dos rayos letra a letra hasta la cota de Fine–Wilf"""
    raw1, raw2 = r1.raw, r2.raw
    if rose is not None:
        for ray in (r1, r2):
            if ray.site.word.rank > rose.rank:
                raise AlphabetMismatchError(f"El rayo {ray} usa letras fuera de la superficie")
    depth = _divergence(raw1, raw2)
    if depth == 0:
        return RayComparison(equal=True)
    incoming = -_ray_letter(raw1, depth - 1) if depth > 1 else None
    return RayComparison(False, depth, _ray_letter(raw1, depth), _ray_letter(raw2, depth), incoming)


def end_order(r1: Ray, r2: Ray, r3: Ray, rose: FatRose) -> int:
    """Orientación (+1 antihoraria) de tres extremos distintos del árbol recubridor"""
    return _end_orientation(rose, r1.raw, r2.raw, r3.raw)


def crossing_sign(alpha: CyclicWord, i: int, beta: CyclicWord, j: int,
                  rose: FatRose, self_pair: bool = False) -> CrossingVerdict:
    """
    Signo del cruce de los levantamientos de alpha (sitio i) y beta (sitio j).

    +1 si el orden antihorario de extremos es (W_i, W_j, V_i, V_j), -1 si es
    (W_i, V_j, V_i, W_j), 0 si no se alternan, si los ejes comparten tramos
    paralelos o si el sitio no es la entrada del tramo común.
    """
    Site(alpha, i)
    Site(beta, j)
    if self_pair and i == j:
        return CrossingVerdict.NONE
    verdict = _crossing_verdict(rose, alpha.letters, i - 1, beta.letters, j - 1)
    return CrossingVerdict(verdict)


class StringBialgebra:
    """
    Bialgebra de Lie de Goldman–Turaev sobre una rosa gruesa.

    Guarda en memoria los corchetes y co-corchetes de pares de palabras
    básicas; las instancias son seguras para uso concurrente porque sus
    tablas solo se rellenan con valores deterministas.
    """

    def __init__(self, rose: FatRose):
        self.rose = rose
        self._bracket_memo: Dict[Tuple[CyclicWord, CyclicWord], Dict[CyclicWord, int]] = {}
        self._cobracket_memo: Dict[CyclicWord, Dict[Tuple[CyclicWord, CyclicWord], int]] = {}

    def clear_cache(self):
        self._bracket_memo.clear()
        self._cobracket_memo.clear()

    def check_alphabet(self, combo: LinearCombination):
        if combo.rank > self.rose.rank:
            raise AlphabetMismatchError(
                f"La combinación usa el generador {combo.rank}, "
                f"pero la superficie tiene rango {self.rose.rank}")

    def crossing(self, a: Word, i0: int, b: Word, j0: int) -> int:
        """Veredicto de cruce sobre palabras crudas con sitios 0-based"""
        return _crossing_verdict(self.rose, a, i0, b, j0)

    # --- operadores sobre palabras básicas --------------------------------

    def word_bracket(self, alpha: CyclicWord, beta: CyclicWord) -> Dict[CyclicWord, int]:
        key = (alpha, beta)
        cached = self._bracket_memo.get(key)
        if cached is not None:
            return cached
        a, b = alpha.letters, beta.letters
        counts = Counter()
        for i0 in range(len(a)):
            for j0 in range(len(b)):
                sign = self.crossing(a, i0, b, j0)
                if sign:
                    product = CyclicWord.from_letters(a[i0:] + a[:i0] + b[j0:] + b[:j0])
                    if not product.is_trivial:
                        counts[product] += sign
        result = {word: c for word, c in counts.items() if c}
        self._bracket_memo[key] = result
        return result

    def word_cobracket(self, alpha: CyclicWord) -> Dict[Tuple[CyclicWord, CyclicWord], int]:
        cached = self._cobracket_memo.get(alpha)
        if cached is not None:
            return cached
        a = alpha.letters
        p = len(a)
        counts = Counter()
        for i0 in range(p):
            for j0 in range(p):
                if i0 == j0:
                    continue
                sign = self.crossing(a, i0, a, j0)
                if not sign:
                    continue
                first = _arc(a, i0, j0)
                second = _arc(a, j0, i0)
                if first.is_trivial or second.is_trivial:
                    continue
                counts[(first, second)] += sign
        result = {key: c for key, c in counts.items() if c}
        self._cobracket_memo[alpha] = result
        return result

    # --- operadores lineales -----------------------------------------------

    def bracket(self, x: Combo, y: Combo) -> Combo:
        """Corchete de Goldman c2, extendido bilinealmente"""
        self.check_alphabet(x)
        self.check_alphabet(y)
        acc = defaultdict(Fraction)
        for alpha, cx in x.items():
            for beta, cy in y.items():
                for word, c in self.word_bracket(alpha, beta).items():
                    acc[word] += cx * cy * c
        return Combo(acc)

    def cobracket(self, x: Combo) -> TensorCombo:
        """Co-corchete de Turaev s2, extendido linealmente"""
        self.check_alphabet(x)
        acc = defaultdict(Fraction)
        for alpha, cx in x.items():
            for key, c in self.word_cobracket(alpha).items():
                acc[key] += cx * c
        return TensorCombo(2, acc)

    def e_operator(self, x: Combo) -> Combo:
        """e = c2 ∘ s2 (operador de género uno)"""
        acc = defaultdict(Fraction)
        for (u, v), c in self.cobracket(x).items():
            for word, cb in self.word_bracket(u, v).items():
                acc[word] += c * cb
        return Combo(acc)

    def bracket_tensor_right(self, t: TensorCombo, w: Combo) -> TensorCombo:
        """[u⊗v, w] = [u,w]⊗v + u⊗[v,w]"""
        self._check_pair_tensor(t)
        acc = defaultdict(Fraction)
        for (u, v), ct in t.items():
            for z, cw in w.items():
                coeff = ct * cw
                for out, cb in self.word_bracket(u, z).items():
                    acc[(out, v)] += coeff * cb
                for out, cb in self.word_bracket(v, z).items():
                    acc[(u, out)] += coeff * cb
        return TensorCombo(2, acc)

    def bracket_tensor_left(self, w: Combo, t: TensorCombo) -> TensorCombo:
        """[w, u⊗v] = [w,u]⊗v + u⊗[w,v]"""
        self._check_pair_tensor(t)
        acc = defaultdict(Fraction)
        for z, cw in w.items():
            for (u, v), ct in t.items():
                coeff = ct * cw
                for out, cb in self.word_bracket(z, u).items():
                    acc[(out, v)] += coeff * cb
                for out, cb in self.word_bracket(z, v).items():
                    acc[(u, out)] += coeff * cb
        return TensorCombo(2, acc)

    @staticmethod
    def _check_pair_tensor(t: TensorCombo):
        if t.arity != 2:
            raise ValueError("La acción del corchete solo está definida sobre tensores de orden 2")

    # --- defectos de las identidades ---------------------------------------

    def antisymmetry_defect(self, x: Combo, y: Combo) -> Combo:
        return self.bracket(x, y) + self.bracket(y, x)

    def coantisymmetry_defect(self, x: Combo) -> TensorCombo:
        s2 = self.cobracket(x)
        return s2 + s2.swap()

    def jacobi_defect(self, x: Combo, y: Combo, z: Combo) -> Combo:
        return (self.bracket(self.bracket(x, y), z)
                + self.bracket(self.bracket(y, z), x)
                + self.bracket(self.bracket(z, x), y))

    def cojacobi_defect(self, x: Combo) -> TensorCombo:
        """(id + τ + τ²)∘(s2⊗id)∘s2 con τ(u⊗v⊗w) = w⊗u⊗v"""
        acc = defaultdict(Fraction)
        for (u, v), c in self.cobracket(x).items():
            for (u1, u2), cu in self.word_cobracket(u).items():
                acc[(u1, u2, v)] += c * cu
        composed = TensorCombo(3, acc)
        tau = composed.permute((2, 0, 1))
        return composed + tau + tau.permute((2, 0, 1))

    def drinfeld_defect(self, x: Combo, y: Combo) -> TensorCombo:
        """s2([x,y]) - [s2(x), y] - [x, s2(y)]"""
        return (self.cobracket(self.bracket(x, y))
                - self.bracket_tensor_right(self.cobracket(x), y)
                - self.bracket_tensor_left(x, self.cobracket(y)))


def _arc(letters: Word, start: int, stop: int) -> CyclicWord:
    """Clase del lazo x_start ... x_{stop-1} (índices 0-based, cíclicos)"""
    if start < stop:
        piece = letters[start:stop]
    else:
        piece = letters[start:] + letters[:stop]
    return CyclicWord.from_letters(piece)


# --- API funcional ------------------------------------------------------------

def goldman_bracket(x: Combo, y: Combo, rose: FatRose) -> Combo:
    return StringBialgebra(rose).bracket(x, y)


def turaev_cobracket(x: Combo, rose: FatRose) -> TensorCombo:
    return StringBialgebra(rose).cobracket(x)


def e_operator(x: Combo, rose: FatRose) -> Combo:
    return StringBialgebra(rose).e_operator(x)


def jacobi_defect(x: Combo, y: Combo, z: Combo, rose: FatRose) -> Combo:
    return StringBialgebra(rose).jacobi_defect(x, y, z)


def cojacobi_defect(x: Combo, rose: FatRose) -> TensorCombo:
    return StringBialgebra(rose).cojacobi_defect(x)


def drinfeld_defect(x: Combo, y: Combo, rose: FatRose) -> TensorCombo:
    return StringBialgebra(rose).drinfeld_defect(x, y)
