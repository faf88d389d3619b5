"""
Cálculo de diagramas de cuerdas generalizados.

Un diagrama D consiste en círculos dirigidos C con un conjunto finito F de
sitios marcados, particionado en partes con orden cíclico (cardinalidad >= 2).
Cada parte se engrosa como un vértice con orden de cinta; los arcos de los
círculos son las aristas del grafo cíclico Γ(D). El borde de la superficie de
cintas Σ(D) distinto de C son las salidas C′.

Convención de reconexión: la salida que llega al sitio f por el arco que
termina en f continúa por el arco que sale del sucesor de f en su parte.
"""

import json
import logging
import re
from dataclasses import dataclass
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from core.errors import InvalidDiagramError, InvalidPartError, InvalidPartitionError

logger = logging.getLogger(__name__)

SiteId = str
Cycle = Tuple[SiteId, ...]

ROMAN_PRESETS = ("I", "II", "III", "IV", "V", "VI", "VII")
PARAMETRIZED_PRESETS = ("I", "II")
_PRESET_WITH_N = re.compile(r"^(I|II)\((\d+)\)$")


def site_sort_key(site: SiteId):
    """Orden natural: identificadores numéricos primero y por valor"""
    return (0, int(site), "") if site.isdigit() else (1, 0, site)


def _min_rotation(cycle: Sequence[SiteId]) -> Cycle:
    if not cycle:
        return ()
    cycle = tuple(cycle)
    keys = [site_sort_key(s) for s in cycle]
    start = min(range(len(cycle)), key=lambda k: keys[k])
    return cycle[start:] + cycle[:start]


@dataclass(frozen=True)
class ChordDiagram:
    circles: Tuple[Cycle, ...]
    parts: Tuple[Cycle, ...]
    multiplicities: Tuple[Tuple[SiteId, int], ...] = ()

    @property
    def sites(self) -> List[SiteId]:
        return [site for circle in self.circles for site in circle]

    @property
    def input_count(self) -> int:
        return len(self.circles)

    @property
    def order(self) -> int:
        """Orden del diagrama anotado: suma de (multiplicidad - 1)"""
        return sum(mult - 1 for _, mult in self.multiplicities)

    def circle_successor(self) -> Dict[SiteId, SiteId]:
        succ = {}
        for circle in self.circles:
            for k, site in enumerate(circle):
                succ[site] = circle[(k + 1) % len(circle)]
        return succ

    def part_successor(self) -> Dict[SiteId, SiteId]:
        succ = {}
        for part in self.parts:
            for k, site in enumerate(part):
                succ[site] = part[(k + 1) % len(part)]
        return succ

    def to_dict(self) -> dict:
        data = {
            "circles": [list(c) for c in self.circles],
            "parts": [{"sites": sorted(p, key=site_sort_key), "order": list(p)} for p in self.parts],
        }
        if self.multiplicities:
            data["multiplicities"] = dict(self.multiplicities)
        return data


@dataclass(frozen=True)
class RibbonGraph:
    """
    Γ(D): un vértice por parte, una arista por arco entre sitios consecutivos.

    Los círculos sin sitios se cuentan aparte en ``free_loops``; cada uno es
    una circunferencia y no cambia la característica de Euler.
    """
    vertices: Tuple[Cycle, ...]
    edges: Tuple[Tuple[SiteId, SiteId], ...]
    free_loops: int = 0

    @property
    def euler_char(self) -> int:
        return len(self.vertices) - len(self.edges)


@dataclass(frozen=True)
class SurgeryResult:
    outputs: Tuple[Cycle, ...]
    genus: int
    euler_char: int
    input_count: int
    output_count: int
    components: int = 1


def validate_diagram(spec: Mapping) -> ChordDiagram:
    """
    Construye un ChordDiagram desde un diccionario con el formato
    ``{"circles": [[...], ...], "parts": [{"sites": [...], "order": [...]}, ...]}``.

    Las partes también pueden darse como listas simples (su orden es el
    orden cíclico). Los identificadores se normalizan a texto.
    """
    if not isinstance(spec, Mapping):
        raise InvalidDiagramError("El diagrama debe ser un objeto con 'circles' y 'parts'")
    raw_circles = spec.get("circles")
    if not isinstance(raw_circles, (list, tuple)) or not raw_circles:
        raise InvalidDiagramError("El diagrama necesita al menos un círculo")

    circles = []
    on_circle = set()
    for circle in raw_circles:
        if not isinstance(circle, (list, tuple)):
            raise InvalidDiagramError(f"Círculo no válido: {circle!r}")
        sites = tuple(str(site) for site in circle)
        for site in sites:
            if site in on_circle:
                raise InvalidPartitionError(f"El sitio {site!r} aparece dos veces en los círculos")
            on_circle.add(site)
        circles.append(sites)

    parts = []
    for raw_part in spec.get("parts", ()):
        order = _part_order(raw_part)
        if len(order) < 2:
            raise InvalidPartError(f"La parte {list(order)} tiene cardinalidad menor que 2")
        parts.append(order)

    covered = set()
    for part in parts:
        for site in part:
            if site not in on_circle:
                raise InvalidPartitionError(f"El sitio {site!r} de una parte no está en ningún círculo")
            if site in covered:
                raise InvalidPartitionError(f"El sitio {site!r} pertenece a más de una parte")
            covered.add(site)
    uncovered = on_circle - covered
    if uncovered:
        names = ", ".join(sorted(uncovered, key=site_sort_key))
        raise InvalidPartitionError(f"Sitios sin parte: {names}")

    multiplicities = []
    for site, mult in dict(spec.get("multiplicities", {})).items():
        site = str(site)
        if site not in on_circle:
            raise InvalidDiagramError(f"Multiplicidad para un sitio desconocido: {site!r}")
        if not isinstance(mult, int) or mult < 1:
            raise InvalidDiagramError(f"Multiplicidad no válida para {site!r}: {mult!r}")
        multiplicities.append((site, mult))
    multiplicities.sort(key=lambda item: site_sort_key(item[0]))

    return ChordDiagram(tuple(circles), tuple(parts), tuple(multiplicities))


def _part_order(raw_part) -> Cycle:
    if isinstance(raw_part, Mapping):
        sites = [str(s) for s in raw_part.get("sites", ())]
        order = [str(s) for s in raw_part.get("order", sites)]
        if len(set(order)) != len(order) or sorted(order) != sorted(sites):
            raise InvalidPartError(f"El orden {order} no es una permutación de la parte {sites}")
        return tuple(order)
    if isinstance(raw_part, (list, tuple)):
        order = tuple(str(s) for s in raw_part)
        if len(set(order)) != len(order):
            raise InvalidPartError(f"Sitio repetido en la parte {list(order)}")
        return order
    raise InvalidDiagramError(f"Parte no válida: {raw_part!r}")


def parse_diagram(text: str) -> ChordDiagram:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidDiagramError(f"JSON de diagrama no válido: {exc}") from exc
    return validate_diagram(data)


def load_diagram_file(path) -> ChordDiagram:
    with open(path, "r", encoding="utf-8") as handle:
        return parse_diagram(handle.read())


def gamma_graph(diagram: ChordDiagram) -> RibbonGraph:
    succ = diagram.circle_successor()
    edges = tuple((site, succ[site]) for site in diagram.sites)
    free_loops = sum(1 for circle in diagram.circles if not circle)
    return RibbonGraph(diagram.parts, edges, free_loops)


def _count_components(diagram: ChordDiagram) -> int:
    parent = {site: site for site in diagram.sites}

    def find(site):
        while parent[site] != site:
            parent[site] = parent[parent[site]]
            site = parent[site]
        return site

    def union(s1, s2):
        r1, r2 = find(s1), find(s2)
        if r1 != r2:
            parent[r1] = r2

    for group in diagram.circles + diagram.parts:
        for site in group[1:]:
            union(group[0], site)
    roots = {find(site) for site in parent}
    return len(roots) + sum(1 for circle in diagram.circles if not circle)


def surgery_outputs(diagram: ChordDiagram) -> SurgeryResult:
    """Recorre σ(f) = succ_P(next_C(f)); cada ciclo es un círculo de salida"""
    next_on_circle = diagram.circle_successor()
    next_in_part = diagram.part_successor()

    outputs: List[Cycle] = []
    owner: Dict[SiteId, int] = {}
    for start in sorted(diagram.sites, key=site_sort_key):
        if start in owner:
            continue
        cycle = []
        site = start
        while site not in owner:
            owner[site] = len(outputs)
            cycle.append(site)
            site = next_in_part[next_on_circle[site]]
        outputs.append(tuple(cycle))
    outputs.extend(() for circle in diagram.circles if not circle)

    euler_char = gamma_graph(diagram).euler_char
    components = _count_components(diagram)
    boundary = diagram.input_count + len(outputs)
    genus, remainder = divmod(2 * components - boundary - euler_char, 2)
    if remainder or genus < 0:
        raise InvalidDiagramError("Cuenta de Euler inconsistente para la superficie de cintas")
    logger.debug("Cirugía: %d entradas, %d salidas, χ=%d, género %d",
                 diagram.input_count, len(outputs), euler_char, genus)
    return SurgeryResult(tuple(outputs), genus, euler_char, diagram.input_count,
                         len(outputs), components)


def operator_degree(diagram: ChordDiagram, d: int) -> int:
    """|F| - Σ_P (|P| - 1)·d"""
    if d < 1:
        raise ValueError("La dimensión d debe ser >= 1")
    return len(diagram.sites) - sum((len(part) - 1) * d for part in diagram.parts)


def dual(diagram: ChordDiagram) -> ChordDiagram:
    """Intercambia entradas y salidas: círculos = salidas, partes en orden inverso"""
    result = surgery_outputs(diagram)
    parts = tuple((part[0],) + tuple(reversed(part[1:])) for part in diagram.parts)
    return ChordDiagram(result.outputs, parts, diagram.multiplicities)


def _normal_form(diagram: ChordDiagram):
    circles = sorted((_min_rotation(c) for c in diagram.circles),
                     key=lambda c: [site_sort_key(s) for s in c])
    parts = sorted((_min_rotation(p) for p in diagram.parts),
                   key=lambda p: [site_sort_key(s) for s in p])
    return tuple(circles), tuple(parts), diagram.multiplicities


def equivalent(first: ChordDiagram, second: ChordDiagram) -> bool:
    """Igualdad salvo rotación y reordenamiento de círculos y partes"""
    return _normal_form(first) == _normal_form(second)


def disjoint_union(first: ChordDiagram, second: ChordDiagram) -> ChordDiagram:
    def relabel(diagram, prefix):
        circles = tuple(tuple(f"{prefix}{s}" for s in c) for c in diagram.circles)
        parts = tuple(tuple(f"{prefix}{s}" for s in p) for p in diagram.parts)
        mults = tuple((f"{prefix}{s}", m) for s, m in diagram.multiplicities)
        return circles, parts, mults

    c1, p1, m1 = relabel(first, "L")
    c2, p2, m2 = relabel(second, "R")
    return ChordDiagram(c1 + c2, p1 + p2, m1 + m2)


# --- diagramas predefinidos ------------------------------------------------------

def diagram_I(n: int) -> ChordDiagram:
    """n círculos con un sitio cada uno y una sola parte: el corchete c_n"""
    _check_arity(n)
    sites = [str(k) for k in range(1, n + 1)]
    return validate_diagram({"circles": [[s] for s in sites], "parts": [sites]})


def diagram_II(n: int) -> ChordDiagram:
    """Un círculo con n sitios y una parte en orden inverso: el co-corchete s_n"""
    _check_arity(n)
    sites = [str(k) for k in range(1, n + 1)]
    return validate_diagram({"circles": [sites], "parts": [list(reversed(sites))]})


def _check_arity(n: int):
    if n < 2:
        raise InvalidDiagramError(f"El diagrama necesita n >= 2 (recibido {n})")


_FIXED_PRESETS = {
    # cactus de Jacobi: dos corchetes encadenados
    "III": {"circles": [["p"], ["q1", "q2"], ["r"]], "parts": [["p", "q1"], ["q2", "r"]]},
    # dos cuerdas internas no enlazadas
    "IV": {"circles": [["1", "2", "3", "4"]], "parts": [["1", "2"], ["3", "4"]]},
    # una cuerda de conexión y una interna
    "V": {"circles": [["u"], ["v", "w1", "w2"]], "parts": [["u", "v"], ["w1", "w2"]]},
    # dos cuerdas de conexión
    "VI": {"circles": [["p1", "p2"], ["q1", "q2"]], "parts": [["p1", "q1"], ["p2", "q2"]]},
    # dos cuerdas enlazadas: relación de género uno
    "VII": {"circles": [["1", "2", "3", "4"]], "parts": [["1", "3"], ["2", "4"]]},
}


def preset(name: str, n: Optional[int] = None) -> ChordDiagram:
    """Diagramas I(n), II(n), III-VII; acepta también ``"I(5)"``"""
    key = name.strip().upper()
    match = _PRESET_WITH_N.match(key)
    if match:
        key, n = match.group(1), int(match.group(2))
    if key == "I":
        return diagram_I(2 if n is None else n)
    if key == "II":
        return diagram_II(2 if n is None else n)
    if key in _FIXED_PRESETS:
        return validate_diagram(_FIXED_PRESETS[key])
    raise InvalidDiagramError(f"Diagrama predefinido desconocido: {name!r}")
