"""
Combinaciones lineales formales con coeficientes racionales exactos.

Un ``Combo`` es un elemento del espacio generado por las clases no triviales;
un ``TensorCombo`` lo es de su potencia tensorial r-ésima. La clase trivial
se identifica con cero (teoría reducida): los términos que la contienen se
descartan al construir.
"""

from collections import defaultdict
from fractions import Fraction
from typing import Dict, Iterable, Iterator, Mapping, Tuple

from core.words import CyclicWord


def _as_fraction(value) -> Fraction:
    return value if isinstance(value, Fraction) else Fraction(value)


class LinearCombination:
    """Base común: diccionario clave -> Fraction sin ceros ni claves triviales"""

    __slots__ = ("_terms",)

    def __init__(self, terms=None):
        clean: Dict = {}
        if terms:
            items = terms.items() if isinstance(terms, Mapping) else terms
            for key, coeff in items:
                key = self._check_key(key)
                if key is None:
                    continue
                total = clean.get(key, 0) + _as_fraction(coeff)
                if total == 0:
                    clean.pop(key, None)
                else:
                    clean[key] = total
        self._terms = clean

    def _check_key(self, key):
        raise NotImplementedError

    @staticmethod
    def _key_order(key):
        raise NotImplementedError

    def _new(self, terms):
        return type(self)(terms)

    @property
    def terms(self) -> Dict:
        return dict(self._terms)

    def items(self):
        """Términos en el orden canónico de palabras"""
        return sorted(self._terms.items(), key=lambda item: self._key_order(item[0]))

    def keys(self):
        return [key for key, _ in self.items()]

    def coefficient(self, key) -> Fraction:
        return self._terms.get(key, Fraction(0))

    def combine(self, other: "LinearCombination", scale=1) -> "LinearCombination":
        """Devuelve ``self + scale * other``"""
        self._check_compatible(other)
        scale = _as_fraction(scale)
        merged = list(self._terms.items())
        if scale != 0:
            merged.extend((key, scale * coeff) for key, coeff in other._terms.items())
        return self._new(merged)

    def scaled(self, scale) -> "LinearCombination":
        scale = _as_fraction(scale)
        if scale == 0:
            return self._new(())
        return self._new((key, scale * coeff) for key, coeff in self._terms.items())

    def _check_compatible(self, other):
        if type(other) is not type(self):
            raise TypeError(f"No se puede combinar {type(self).__name__} con {type(other).__name__}")

    def __add__(self, other):
        return self.combine(other, 1)

    def __sub__(self, other):
        return self.combine(other, -1)

    def __neg__(self):
        return self.scaled(-1)

    def __mul__(self, scale):
        return self.scaled(scale)

    __rmul__ = __mul__

    def __eq__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def __iter__(self) -> Iterator:
        return iter(self.items())

    @property
    def is_zero(self) -> bool:
        return not self._terms


class Combo(LinearCombination):
    """Suma formal finita de clases cíclicas no triviales"""

    __slots__ = ()

    def _check_key(self, key):
        if not isinstance(key, CyclicWord):
            raise TypeError(f"Clave no válida para Combo: {key!r}")
        return None if key.is_trivial else key

    @staticmethod
    def _key_order(key):
        return key.sort_key

    @classmethod
    def from_word(cls, word: CyclicWord, coeff=1) -> "Combo":
        return cls([(word, coeff)])

    @classmethod
    def zero(cls) -> "Combo":
        return cls()

    @property
    def rank(self) -> int:
        return max((word.rank for word in self._terms), default=0)

    def __repr__(self):
        return f"Combo({', '.join(f'{c}*{w}' for w, c in self.items()) or '0'})"


class TensorCombo(LinearCombination):
    """Suma formal de r-tuplas ordenadas de clases no triviales"""

    __slots__ = ("arity",)

    def __init__(self, arity: int, terms=None):
        if arity < 1:
            raise ValueError("La aridad de un tensor debe ser >= 1")
        self.arity = arity
        super().__init__(terms)

    def _new(self, terms):
        return TensorCombo(self.arity, terms)

    def _check_key(self, key):
        key = tuple(key)
        if len(key) != self.arity:
            raise ValueError(f"Se esperaba una tupla de {self.arity} factores, no {len(key)}")
        for factor in key:
            if not isinstance(factor, CyclicWord):
                raise TypeError(f"Factor no válido: {factor!r}")
        if any(factor.is_trivial for factor in key):
            return None
        return key

    @staticmethod
    def _key_order(key):
        return tuple(factor.sort_key for factor in key)

    def _check_compatible(self, other):
        super()._check_compatible(other)
        if other.arity != self.arity:
            raise ValueError(f"Aridades incompatibles: {self.arity} y {other.arity}")

    def __eq__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return self.arity == other.arity and self._terms == other._terms

    __hash__ = LinearCombination.__hash__

    @classmethod
    def zero(cls, arity: int) -> "TensorCombo":
        return cls(arity)

    @property
    def rank(self) -> int:
        return max((factor.rank for key in self._terms for factor in key), default=0)

    def permute(self, perm: Tuple[int, ...]) -> "TensorCombo":
        """Reordena factores: el factor ``k`` del resultado es ``key[perm[k]]``"""
        if sorted(perm) != list(range(self.arity)):
            raise ValueError(f"Permutación no válida: {perm}")
        return self._new((tuple(key[p] for p in perm), coeff) for key, coeff in self._terms.items())

    def swap(self) -> "TensorCombo":
        return self.permute(tuple(reversed(range(self.arity))))

    def __repr__(self):
        body = ", ".join(f"{c}*{'⊗'.join(map(str, k))}" for k, c in self.items())
        return f"TensorCombo{self.arity}({body or '0'})"


def combine(c1: LinearCombination, c2: LinearCombination, scale=1) -> LinearCombination:
    """``c1 + scale * c2`` para Combo o TensorCombo"""
    return c1.combine(c2, scale)


def tensor(*factors: LinearCombination) -> TensorCombo:
    """Producto tensorial bilineal de combinaciones"""
    keys = [((), Fraction(1))]
    for factor in factors:
        expanded = []
        for key, coeff in keys:
            for item, c in factor.items():
                part = item if isinstance(item, tuple) else (item,)
                expanded.append((key + part, coeff * c))
        keys = expanded
    arity = sum(f.arity if isinstance(f, TensorCombo) else 1 for f in factors)
    return TensorCombo(arity, keys)


def accumulate(pairs: Iterable[Tuple[object, Fraction]]) -> Dict:
    """Suma coeficientes por clave (auxiliar para agregación de términos)"""
    acc = defaultdict(Fraction)
    for key, coeff in pairs:
        acc[key] += coeff
    return acc
