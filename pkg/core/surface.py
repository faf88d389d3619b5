"""
Superficies orientadas con borde presentadas como rosas gruesas.

Una rosa gruesa es un grafo de cintas con un solo vértice: el orden cíclico
(antihorario) de los 2n dardos ``g_1, g_1^-1, ..., g_n, g_n^-1`` determina la
superficie, su borde y la estructura plana del árbol recubridor universal.
"""

import logging
import re
from dataclasses import dataclass, field
from typing import Dict, List, Sequence, Tuple

from core.errors import MalformedSurfaceError, UnsupportedSurfaceError
from core.words import CyclicWord, Letter, canonical_form, format_word, parse_word

logger = logging.getLogger(__name__)

PRESET_ALIASES = {
    "torus1": (1, 1),
    "one_holed_torus": (1, 1),
    "pants": (0, 3),
    "pair_of_pants": (0, 3),
}

_GENUS_BOUNDARY = re.compile(r"^g(\d+)b(\d+)$")


@dataclass(frozen=True)
class FatRose:
    rank: int
    dart_order: Tuple[Letter, ...]
    _position: Dict[Letter, int] = field(default=None, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "_position", {dart: k for k, dart in enumerate(self.dart_order)})

    def position(self, dart: Letter) -> int:
        return self._position[dart]

    def successor(self, dart: Letter) -> Letter:
        """Dardo siguiente en sentido antihorario"""
        return self.dart_order[(self._position[dart] + 1) % len(self.dart_order)]

    def face_next(self, dart: Letter) -> Letter:
        """Paso de la caminata de caras: sucesor del inverso"""
        return self.successor(-dart)

    def cyclic_orientation(self, d1: Letter, d2: Letter, d3: Letter) -> int:
        """+1 si (d1, d2, d3) aparecen en orden antihorario en el vértice, -1 si no"""
        size = len(self.dart_order)
        p1 = self._position[d1]
        gap2 = (self._position[d2] - p1) % size
        gap3 = (self._position[d3] - p1) % size
        if 0 in (gap2, gap3) or gap2 == gap3:
            raise ValueError("Los tres dardos deben ser distintos")
        return 1 if gap2 < gap3 else -1

    def __str__(self):
        return " ".join(format_word((dart,)) for dart in self.dart_order)


@dataclass(frozen=True)
class SurfaceInvariants:
    euler_char: int
    genus: int
    boundary_count: int
    boundary_words: Tuple[CyclicWord, ...]


def validate_rose(order: Sequence[Letter]) -> FatRose:
    """Valida que cada uno de los 2n dardos aparezca exactamente una vez"""
    order = tuple(order)
    if not order:
        raise MalformedSurfaceError("El orden de dardos está vacío")
    rank = max(abs(dart) for dart in order)
    expected = {sign * index for index in range(1, rank + 1) for sign in (1, -1)}
    seen = set()
    for dart in order:
        if dart in seen:
            raise MalformedSurfaceError(f"Dardo duplicado: {format_word((dart,))}")
        seen.add(dart)
    missing = expected - seen
    if missing:
        names = ", ".join(format_word((d,)) for d in sorted(missing, key=lambda d: (abs(d), d < 0)))
        raise MalformedSurfaceError(f"Faltan dardos: {names}")
    return FatRose(rank, order)


def boundary_words(rose: FatRose) -> List[CyclicWord]:
    """Traza las caras con next(d) = sucesor(d^-1); cada cara es una palabra de borde"""
    visited = set()
    faces = []
    for start in rose.dart_order:
        if start in visited:
            continue
        face = []
        dart = start
        while dart not in visited:
            visited.add(dart)
            face.append(dart)
            dart = rose.face_next(dart)
        faces.append(canonical_form(face))
    return faces


def surface_invariants(rose: FatRose) -> SurfaceInvariants:
    faces = boundary_words(rose)
    euler_char = 1 - rose.rank
    boundary_count = len(faces)
    genus, remainder = divmod(2 - boundary_count - euler_char, 2)
    if remainder:
        raise MalformedSurfaceError("Característica de Euler incompatible con el número de caras")
    return SurfaceInvariants(euler_char, genus, boundary_count, tuple(faces))


def preset(genus: int, boundary: int) -> FatRose:
    """
    Rosa estándar de género ``genus`` con ``boundary`` componentes de borde:
    bloques conmutadores (a_i, b_i, a_i^-1, b_i^-1) seguidos de bloques (c_j, c_j^-1).
    """
    if boundary < 1:
        raise UnsupportedSurfaceError("Las superficies cerradas no están soportadas (b >= 1)")
    if genus < 0:
        raise UnsupportedSurfaceError("El género debe ser no negativo")
    if genus == 0 and boundary == 1:
        raise UnsupportedSurfaceError("El disco tiene grupo fundamental trivial (rango 0)")
    order = []
    index = 1
    for _ in range(genus):
        a, b = index, index + 1
        order.extend((a, b, -a, -b))
        index += 2
    for _ in range(boundary - 1):
        order.extend((index, -index))
        index += 1
    return validate_rose(order)


def preset_by_name(name: str) -> FatRose:
    key = name.strip().lower()
    if key in PRESET_ALIASES:
        return preset(*PRESET_ALIASES[key])
    match = _GENUS_BOUNDARY.match(key)
    if match:
        return preset(int(match.group(1)), int(match.group(2)))
    raise UnsupportedSurfaceError(f"Superficie predefinida desconocida: {name!r}")


def parse_surface(text: str) -> FatRose:
    """Acepta un nombre predefinido o una línea de dardos (``a b A B`` o ``abAB``)"""
    stripped = text.strip()
    key = stripped.lower()
    if key in PRESET_ALIASES or _GENUS_BOUNDARY.match(key):
        return preset_by_name(key)
    try:
        darts = parse_word(stripped)
    except ValueError as exc:
        raise MalformedSurfaceError(f"Línea de dardos no válida: {exc}") from exc
    rose = validate_rose(darts)
    logger.debug("Superficie leída: %s (rango %d)", rose, rose.rank)
    return rose


def load_surface_file(path) -> FatRose:
    with open(path, "r", encoding="utf-8") as handle:
        lines = [line for line in handle.read().splitlines() if line.strip()]
    if len(lines) != 1:
        raise MalformedSurfaceError(f"El archivo {path} debe contener una sola línea de dardos")
    return parse_surface(lines[0])
