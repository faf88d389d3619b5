import argparse
import logging
import sys
from dataclasses import dataclass
from typing import Any, Dict, Optional, Sequence, Tuple

from core.bialgebra import StringBialgebra
from core.combinations import Combo
from core.diagrams import (PARAMETRIZED_PRESETS, ROMAN_PRESETS, ChordDiagram, dual, gamma_graph, load_diagram_file,
                           operator_degree, preset as diagram_preset, surgery_outputs)
from core.errors import StringTopologyError
from core.surface import FatRose, load_surface_file, parse_surface, surface_invariants
from core.validation_tools import IdentityValidator
from core.words import CyclicWord
from exporters.formats import ExportConfig, FormatConverter, ReportFormat
from exporters.report_exporter import ReportExporter

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VERIFICATION_FAILED = 1
EXIT_INPUT_ERROR = 2

SEED_MASK = 0xFFFFFFFFFFFFFFFF
VERIFY_CHOICES = tuple(IdentityValidator.IDENTITIES) + ("all",)


@dataclass(frozen=True)
class RunConfig:
    """Configuración completa de una ejecución, validada"""
    command: str
    surface: str = "torus1"
    surface_file: Optional[str] = None
    operands: Tuple[str, ...] = ()
    identity: Optional[str] = None
    seed: int = 0
    trials: int = 100
    max_len: int = 8
    d: int = 2
    n: Optional[int] = None
    diagram: Optional[str] = None
    diagram_file: Optional[str] = None
    output_format: ReportFormat = ReportFormat.TEXT
    output: Optional[str] = None
    workers: int = 1
    verbose: bool = False

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> "RunConfig":
        operands = ()
        if args.command == "bracket":
            operands = (args.word1, args.word2)
        elif args.command == "cobracket":
            operands = (args.word,)
        return cls(
            command=args.command,
            surface=args.surface,
            surface_file=args.surface_file,
            operands=operands,
            identity=getattr(args, "identity", None),
            seed=getattr(args, "seed", 0) & SEED_MASK,
            trials=getattr(args, "trials", 100),
            max_len=getattr(args, "max_len", 8),
            d=getattr(args, "d", 2),
            n=getattr(args, "n", None),
            diagram=getattr(args, "diagram", None),
            diagram_file=getattr(args, "diagram_file", None),
            output_format=ReportFormat.JSON if args.json else ReportFormat.TEXT,
            output=args.output,
            workers=getattr(args, "workers", 1),
            verbose=args.verbose,
        )


def configure_logging(verbose: bool):
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )


class CLIInterface:
    def __init__(self, stdout=None, stderr=None):
        self.parser = self._setup_parser()
        self.stdout = stdout
        self.stderr = stderr if stderr is not None else sys.stderr

    def _setup_parser(self):
        common = argparse.ArgumentParser(add_help=False)
        surface_group = common.add_argument_group('Superficie')
        surface_group.add_argument('--surface', type=str, default='torus1',
                                   help='torus1, pants, g<g>b<b> o una línea de dardos como "a b A B" '
                                        '(por defecto: torus1)')
        surface_group.add_argument('--surface-file', type=str,
                                   help='Archivo con una sola línea de dardos')
        output_group = common.add_argument_group('Salida')
        output_group.add_argument('--json', action='store_true',
                                  help='Reporte JSON (schema 1) en lugar de texto')
        output_group.add_argument('--output', '-o', type=str,
                                  help='Escribir también el reporte en este archivo')
        output_group.add_argument('--verbose', '-v', action='store_true',
                                  help='Mostrar información detallada del proceso (stderr)')

        parser = argparse.ArgumentParser(
            prog='stringtop',
            description='Operadores de cuerdas en superficies: corchete de Goldman, '
                        'co-corchete de Turaev y diagramas de cuerdas',
            formatter_class=argparse.RawDescriptionHelpFormatter,
            epilog="""
Ejemplos de uso:
  # Corchete de dos clases en el toro con un agujero
  python main.py bracket --surface torus1 a b

  # Co-corchete en el pantalón
  python main.py cobracket --surface pants ab

  # Verificación aleatoria reproducible de la involutividad
  python main.py verify involutive --surface torus1 --seed 7 --trials 100 --max-len 8

  # Diagrama predefinido con su grado en dimensión 3
  python main.py diagram VII --d 3 --json

Códigos de salida: 0 éxito, 1 falla de verificación, 2 error de entrada.
            """
        )
        subparsers = parser.add_subparsers(dest='command', required=True)

        bracket = subparsers.add_parser('bracket', parents=[common],
                                        help='Corchete de Goldman [x, y]')
        bracket.add_argument('word1', help='Primera palabra (p.ej. abAB)')
        bracket.add_argument('word2', help='Segunda palabra')

        cobracket = subparsers.add_parser('cobracket', parents=[common],
                                          help='Co-corchete de Turaev s2(x)')
        cobracket.add_argument('word', help='Palabra (p.ej. aab)')

        verify = subparsers.add_parser('verify', parents=[common],
                                       help='Verificación aleatoria de identidades')
        verify.add_argument('identity', choices=VERIFY_CHOICES,
                            help='Identidad a verificar')
        verify_group = verify.add_argument_group('Parámetros de verificación')
        verify_group.add_argument('--seed', type=int, default=0,
                                  help='Semilla de 64 bits (por defecto: 0)')
        verify_group.add_argument('--trials', type=int, default=100,
                                  help='Número de pruebas por identidad (por defecto: 100)')
        verify_group.add_argument('--max-len', type=int, default=8,
                                  help='Longitud máxima de las palabras (por defecto: 8)')
        verify_group.add_argument('--workers', type=int, default=1,
                                  help='Hilos para evaluar las pruebas (por defecto: 1)')

        diagram = subparsers.add_parser('diagram', parents=[common],
                                        help='Resumen de un diagrama de cuerdas')
        diagram.add_argument('diagram', nargs='?', type=str.upper, choices=ROMAN_PRESETS,
                             help='Diagrama predefinido I..VII')
        diagram_group = diagram.add_argument_group('Parámetros del diagrama')
        diagram_group.add_argument('--n', type=int,
                                   help='Aridad para I(n) y II(n) (por defecto: 2)')
        diagram_group.add_argument('--d', type=int, default=2,
                                   help='Dimensión de la variedad para el grado (por defecto: 2)')
        diagram_group.add_argument('--diagram-file', type=str,
                                   help='Diagrama en formato JSON')

        return parser

    def _validate_args(self, config: RunConfig):
        """Lanza ValueError si la configuración es inconsistente"""
        if config.command == "verify":
            if config.trials < 1:
                raise ValueError("--trials debe ser >= 1")
            if config.max_len < 1:
                raise ValueError("--max-len debe ser >= 1")
            if config.workers < 1:
                raise ValueError("--workers debe ser >= 1")
        if config.command == "diagram":
            if config.d < 1:
                raise ValueError("--d debe ser >= 1")
            if config.diagram is None and config.diagram_file is None:
                raise ValueError("Indique un diagrama predefinido o --diagram-file")
            if config.diagram is not None and config.diagram_file is not None:
                raise ValueError("Use un diagrama predefinido o --diagram-file, no ambos")
            if config.n is not None:
                if config.diagram not in PARAMETRIZED_PRESETS:
                    raise ValueError("--n solo aplica a los diagramas I y II")
                if config.n < 2:
                    raise ValueError("--n debe ser >= 2")

    def run(self, argv: Sequence[str] = None) -> int:
        """Ejecuta la interfaz y devuelve el código de salida"""
        args = self.parser.parse_args(argv)
        config = RunConfig.from_args(args)
        configure_logging(config.verbose)
        try:
            self._validate_args(config)
            exporter = ReportExporter(ExportConfig(config.output_format, config.output), self.stdout)
            handler = {
                "bracket": self.cmd_bracket,
                "cobracket": self.cmd_cobracket,
                "verify": self.cmd_verify,
                "diagram": self.cmd_diagram,
            }[config.command]
            exit_code, report, text = handler(config)
            exporter.export(report, text)
            return exit_code
        except (StringTopologyError, ValueError, OSError) as e:
            print(f"Error: {e}", file=self.stderr)
            return EXIT_INPUT_ERROR

    # --- comandos ------------------------------------------------------------

    def load_surface(self, config: RunConfig) -> FatRose:
        if config.surface_file:
            rose = load_surface_file(config.surface_file)
        else:
            rose = parse_surface(config.surface)
        if logger.isEnabledFor(logging.INFO):
            invariants = surface_invariants(rose)
            logger.info("Superficie %s: rango %d, género %d, %d bordes", rose, rose.rank,
                        invariants.genus, invariants.boundary_count)
        return rose

    def _surface_header(self, rose: FatRose, config: RunConfig) -> Dict[str, Any]:
        return {"surface": config.surface_file or config.surface, "darts": str(rose)}

    def cmd_bracket(self, config: RunConfig):
        rose = self.load_surface(config)
        x, y = (CyclicWord.parse(text, rose.rank) for text in config.operands)
        value = StringBialgebra(rose).bracket(Combo.from_word(x), Combo.from_word(y))
        report = {"command": "bracket", "operands": [x, y], "result": value,
                  **self._surface_header(rose, config)}
        return EXIT_OK, report, FormatConverter.combo_text(value)

    def cmd_cobracket(self, config: RunConfig):
        rose = self.load_surface(config)
        x = CyclicWord.parse(config.operands[0], rose.rank)
        value = StringBialgebra(rose).cobracket(Combo.from_word(x))
        report = {"command": "cobracket", "operands": [x], "result": value,
                  **self._surface_header(rose, config)}
        return EXIT_OK, report, FormatConverter.combo_text(value)

    def cmd_verify(self, config: RunConfig):
        rose = self.load_surface(config)
        validator = IdentityValidator(StringBialgebra(rose))
        identities = list(IdentityValidator.IDENTITIES) if config.identity == "all" else [config.identity]
        validation = validator.comprehensive_validation(
            identities, config.seed, config.trials, config.max_len,
            workers=config.workers, witnesses=config.identity == "all")
        report = {
            "command": "verify",
            "identity": config.identity,
            "seed": config.seed,
            "trials": config.trials,
            "max_len": config.max_len,
            **self._surface_header(rose, config),
            **IdentityValidator.summarize(validation),
        }
        text = IdentityValidator.generate_validation_report(validation, FormatConverter.combo_inline)
        exit_code = EXIT_OK if validation["all_passed"] else EXIT_VERIFICATION_FAILED
        return exit_code, report, text

    def load_diagram(self, config: RunConfig) -> Tuple[str, ChordDiagram]:
        if config.diagram_file:
            return config.diagram_file, load_diagram_file(config.diagram_file)
        name = config.diagram
        if name in PARAMETRIZED_PRESETS:
            n = 2 if config.n is None else config.n
            return f"{name}({n})", diagram_preset(name, n)
        return name, diagram_preset(name)

    def cmd_diagram(self, config: RunConfig):
        name, diagram = self.load_diagram(config)
        surgery = surgery_outputs(diagram)
        graph = gamma_graph(diagram)
        dual_surgery = surgery_outputs(dual(diagram))
        report = {
            "command": "diagram",
            "diagram": name,
            "inputs": surgery.input_count,
            "outputs": surgery.output_count,
            "genus": surgery.genus,
            "euler_char": surgery.euler_char,
            "vertices": len(graph.vertices),
            "edges": len(graph.edges),
            "free_loops": graph.free_loops,
            "d": config.d,
            "degree": operator_degree(diagram, config.d),
            "order": diagram.order,
            "output_circles": [list(cycle) for cycle in surgery.outputs],
            "dual": {
                "inputs": dual_surgery.input_count,
                "outputs": dual_surgery.output_count,
                "genus": dual_surgery.genus,
            },
        }
        lines = [f"diagram: {name}"]
        for key in ("inputs", "outputs", "genus", "euler_char", "vertices", "edges", "d", "degree"):
            lines.append(f"{key}: {report[key]}")
        if graph.free_loops:
            lines.append(f"free_loops: {graph.free_loops}")
        if diagram.order:
            lines.append(f"order: {diagram.order}")
        for index, cycle in enumerate(surgery.outputs, start=1):
            lines.append(f"output {index}: {' '.join(cycle) if cycle else '(lazo libre)'}")
        lines.append("dual: inputs={inputs} outputs={outputs} genus={genus}".format(**report["dual"]))
        return EXIT_OK, report, "\n".join(lines)
