"""
CLI de edgeideals: diagramas de Betti de J_G e ini(J_G), verificación de la
conjetura de números de Betti extremales y verificación de bases de Gröbner.

Uso:
    python -m src.edgeideals.cli betti --family cycle --n 5 --side initial --method mapping-cone
    python -m src.edgeideals.cli conjecture --family kmn --m 3 --n 1
    python -m src.edgeideals.cli verify-gb --edges grafo.txt --basis base.txt
"""
import argparse
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

from rich.console import Console

from ..utils.reports import (
    CandidateValue,
    ComparisonEntry,
    ConjectureReportModel,
    SpotValue,
    dumps,
)
from .betti_engine import (
    BettiTable,
    ExtremalSet,
    betti_kmn_closed_form,
    certify_table,
    cycle_corner_betti,
    extremal_betti,
    published_reference_values,
    proj_dim,
    regularity,
    semicontinuity_violations,
)
from .config import Settings, load_settings
from .errors import (
    CapExceededError,
    ConfigError,
    EdgeIdealError,
    GraphValidationError,
    IncompatibleMethodError,
    InvalidFamilyError,
    ParseError,
    UnsupportedFamilyError,
)
from .gb_engine import groebner_basis, initial_ideal, parse_basis_text, verify_groebner
from .graph_core import (
    Graph,
    make_complete_bipartite,
    make_complete_graph,
    make_cycle,
    make_two_corner_graph,
    read_graph_file,
)
from .homology_oracle import FieldPrime, koszul_betti, lcm_lattice_betti
from .logging_compute import configure_logging, get_compute_logger
from .rendering import FORMATS, render_corner, render_groebner, render_tables

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_FAILED = 2
EXIT_UNDECIDED = 3

FAMILIES = ("cycle", "kmn", "complete", "two-corner")
SIDES = ("initial", "binomial", "both")
METHODS = ("formula", "mapping-cone", "lcm", "koszul")

stderr = Console(stderr=True, highlight=False)


class UsageError(EdgeIdealError):
    """Combinación de argumentos inválida"""


class _ArgumentParser(argparse.ArgumentParser):
    """argparse sale con 2 ante errores; aquí 2 significa verificación fallida"""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


@dataclass(frozen=True)
class GraphSource:
    graph: Graph
    family: Optional[str] = None
    params: Tuple[int, ...] = ()

    @property
    def label(self) -> str:
        return self.graph.name or "G"


@dataclass
class ConjectureReport:
    """Comparación de los conjuntos extremales de S/J_G y S/ini(J_G)"""
    graph: str
    initial_method: str
    binomial_method: str = "koszul"
    initial_table: Optional[BettiTable] = None
    binomial_table: Optional[BettiTable] = None
    initial_extremal: Optional[ExtremalSet] = None
    binomial_extremal: Optional[ExtremalSet] = None
    semicontinuity_checked: bool = False
    violations: List[Tuple[int, int]] = field(default_factory=list)
    candidates: List[Tuple[str, Optional[int]]] = field(default_factory=list)
    blocking: Optional[str] = None

    @property
    def verdict(self) -> str:
        if self.violations:
            return "unequal"
        if self.initial_extremal is None or self.binomial_extremal is None:
            return "undecided"
        return "equal" if self.initial_extremal == self.binomial_extremal else "unequal"

    def comparison(self) -> List[ComparisonEntry]:
        spots = set()
        for extremal in (self.initial_extremal, self.binomial_extremal):
            if extremal is not None:
                spots.update(extremal.positions)
        out = []
        for i, j in sorted(spots):
            out.append(ComparisonEntry(
                i=i, j=j,
                binomial=_lookup(self.binomial_table, self.binomial_extremal, i, j),
                initial=_lookup(self.initial_table, self.initial_extremal, i, j),
            ))
        return out

    def to_model(self) -> ConjectureReportModel:
        def spots(extremal: Optional[ExtremalSet]) -> Optional[List[SpotValue]]:
            if extremal is None:
                return None
            return [SpotValue(i=i, j=j, value=v) for (i, j), v in extremal.entries]

        violations = [
            ComparisonEntry(i=i, j=j, binomial=self.binomial_table.get(i, j),
                            initial=self.initial_table.get(i, j))
            for i, j in self.violations
        ]
        return ConjectureReportModel(
            graph=self.graph,
            verdict=self.verdict,
            initial_method=self.initial_method,
            binomial_method=self.binomial_method,
            initial_extremal=spots(self.initial_extremal),
            binomial_extremal=spots(self.binomial_extremal),
            comparison=self.comparison(),
            semicontinuity_checked=self.semicontinuity_checked,
            semicontinuity_violations=violations,
            candidates=[CandidateValue(source=s, value=v) for s, v in self.candidates],
            blocking=self.blocking,
        )


def _lookup(table: Optional[BettiTable], extremal: Optional[ExtremalSet], i: int, j: int) -> Optional[int]:
    if table is not None and (not table.bounded or table.region.covers(i, j)):
        return table.get(i, j)
    if extremal is not None:
        return dict(extremal.entries).get((i, j), 0)
    return None


# ---------------------------------------------------------------------------
# Argumentos
# ---------------------------------------------------------------------------

def _add_graph_arguments(parser: argparse.ArgumentParser):
    parser.add_argument("--family", choices=FAMILIES, help="familia de grafos")
    parser.add_argument("--n", type=int, help="n del ciclo / grafo completo, o n de K_{m,n}")
    parser.add_argument("--m", type=int, help="m de K_{m,n}")
    parser.add_argument("--edges", type=Path, help="archivo de grafo (primera línea n, luego `u v`)")


def _add_common_arguments(parser: argparse.ArgumentParser):
    parser.add_argument("--field", type=int, help="primo p del cuerpo Z/p")
    parser.add_argument("--format", choices=FORMATS, default="text", help="formato de salida")
    parser.add_argument("--threads", type=int, help="hilos para los spots independientes")
    parser.add_argument("--caps", type=int, help="máximo de columnas por bloque de Koszul")
    parser.add_argument("--config", type=Path, help="archivo de configuración JSON")
    parser.add_argument("--output", type=Path, help="escribe el reporte en un archivo")
    parser.add_argument("--log-file", help="archivo de log")
    parser.add_argument("--verbose", action="store_true", help="logging a nivel DEBUG")


def build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(prog="edgeideals", description="Números de Betti de ideales binomiales de aristas")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_ArgumentParser)

    betti = sub.add_parser("betti", help="diagrama de Betti de S/J_G y/o S/ini(J_G)")
    _add_graph_arguments(betti)
    betti.add_argument("--side", choices=SIDES, default="both")
    betti.add_argument("--method", choices=METHODS, help="por defecto: lcm (initial), koszul (binomial)")
    betti.add_argument("--i-max", type=int, help="máximo índice homológico (Koszul)")
    betti.add_argument("--j-max", type=int, help="máximo grado interno (Koszul)")
    betti.add_argument("--row-max", type=int, help="máximo j - i (Koszul)")
    _add_common_arguments(betti)

    conjecture = sub.add_parser("conjecture", help="compara los extremales de S/J_G y S/ini(J_G)")
    _add_graph_arguments(conjecture)
    _add_common_arguments(conjecture)

    verify = sub.add_parser("verify-gb", help="verifica la base de Gröbner reducida por S-pares")
    _add_graph_arguments(verify)
    verify.add_argument("--basis", type=Path, help="base candidata (un binomio por línea)")
    _add_common_arguments(verify)
    return parser


def resolve_graph(args: argparse.Namespace) -> GraphSource:
    """Exactamente una fuente: --family (con sus parámetros) o --edges"""
    if (args.family is None) == (args.edges is None):
        raise UsageError("indica exactamente una de --family o --edges")
    if args.edges is not None:
        return GraphSource(read_graph_file(args.edges))
    if args.family == "cycle":
        if args.n is None:
            raise UsageError("--family cycle necesita --n")
        return GraphSource(make_cycle(args.n), "cycle", (args.n,))
    if args.family == "kmn":
        if args.m is None or args.n is None:
            raise UsageError("--family kmn necesita --m y --n")
        return GraphSource(make_complete_bipartite(args.m, args.n), "kmn", (args.m, args.n))
    if args.family == "complete":
        if args.n is None:
            raise UsageError("--family complete necesita --n")
        return GraphSource(make_complete_graph(args.n), "complete", (args.n,))
    return GraphSource(make_two_corner_graph(), "two-corner", ())


def _settings_from_args(args: argparse.Namespace) -> Settings:
    settings = load_settings(args.config)
    return settings.with_overrides({
        "field_prime": args.field,
        "threads": args.threads,
        "max_spot_columns": args.caps,
        "level": "DEBUG" if args.verbose else None,
        "file": args.log_file,
    })


# ---------------------------------------------------------------------------
# Cómputos
# ---------------------------------------------------------------------------

def _initial_subject(source: GraphSource) -> str:
    return f"S/ini(J_{{{source.label}}})"


def _binomial_subject(source: GraphSource) -> str:
    return f"S/J_{{{source.label}}}"


def _is_corner_cycle(source: GraphSource) -> bool:
    return source.family == "cycle" and source.params[0] >= 4


def initial_table(source: GraphSource, method: str, settings: Settings) -> BettiTable:
    """Tabla total de S/ini(J_G) por la fórmula cerrada o por el retículo lcm"""
    if method == "formula":
        if source.family != "kmn":
            raise IncompatibleMethodError("--method formula solo aplica a --family kmn del lado initial")
        m, n = source.params
        table = betti_kmn_closed_form(m, n)
        return BettiTable(_initial_subject(source), table.entries)
    if method == "lcm":
        return lcm_lattice_betti(initial_ideal(source.graph), field=FieldPrime(settings.field_prime),
                                 caps=settings.caps, threads=settings.threads,
                                 subject=_initial_subject(source))
    raise IncompatibleMethodError(f"--method {method} no produce una tabla total del lado initial")


def initial_bounds(source: GraphSource, settings: Settings) -> Tuple[int, int, str]:
    """Cotas de projdim y reg de S/ini(J_G), con la ruta que las certifica"""
    if _is_corner_cycle(source):
        _, certificate = cycle_corner_betti(source.params[0])
        return certificate.projdim_bound, certificate.reg_bound, "mapping-cone"
    method = "formula" if source.family == "kmn" else "lcm"
    table = initial_table(source, method, settings)
    return proj_dim(table), regularity(table), method


def _koszul_region(args: argparse.Namespace, source: GraphSource,
                   settings: Settings) -> Tuple[int, int, Optional[int], Optional[Tuple[int, int]]]:
    """Región explícita de los flags, o la que fijan las cotas del ideal inicial"""
    if args.i_max is not None or args.j_max is not None:
        if args.i_max is None or args.j_max is None:
            raise UsageError("--i-max y --j-max van juntos")
        return args.i_max, args.j_max, args.row_max, None
    p, r, _ = initial_bounds(source, settings)
    return p, p + r, r, (p, r)


def koszul_table(source: GraphSource, side: str, args: argparse.Namespace, settings: Settings) -> BettiTable:
    i_max, j_max, row_max, bounds = _koszul_region(args, source, settings)
    if side == "binomial":
        target, subject = groebner_basis(source.graph), _binomial_subject(source)
    else:
        target, subject = initial_ideal(source.graph), _initial_subject(source)
    table = koszul_betti(target, i_max, j_max, field=FieldPrime(settings.field_prime),
                         caps=settings.caps, row_max=row_max, threads=settings.threads,
                         subject=subject)
    if bounds is not None:
        table = certify_table(table, *bounds)
    return table


def _check_method(side: str, method: Optional[str], source: GraphSource):
    if method is None:
        return
    if method == "formula" and (side != "initial" or source.family != "kmn"):
        raise IncompatibleMethodError("--method formula requiere --side initial y --family kmn")
    if method == "mapping-cone" and (side != "initial" or not _is_corner_cycle(source)):
        raise IncompatibleMethodError("--method mapping-cone requiere --side initial y --family cycle con n >= 4")
    if method == "lcm" and side != "initial":
        raise IncompatibleMethodError("--method lcm solo aplica al ideal inicial (monomial)")


def cmd_betti(args: argparse.Namespace, settings: Settings) -> Tuple[str, int]:
    source = resolve_graph(args)
    _check_method(args.side, args.method, source)
    if args.method == "mapping-cone":
        _, certificate = cycle_corner_betti(source.params[0])
        return render_corner(_initial_subject(source), certificate, args.format), EXIT_OK

    tables: Dict[str, BettiTable] = {}
    if args.side in ("initial", "both"):
        method = args.method or "lcm"
        if method == "koszul":
            tables["initial"] = koszul_table(source, "initial", args, settings)
        else:
            tables["initial"] = initial_table(source, method, settings)
    if args.side in ("binomial", "both"):
        tables["binomial"] = koszul_table(source, "binomial", args, settings)
    return render_tables(tables, args.format), EXIT_OK


def run_conjecture(source: GraphSource, settings: Settings) -> ConjectureReport:
    """Extremales de ambos lados; 'undecided' si algún límite impide certificar"""
    start = time.time()
    logger = get_compute_logger()
    field_prime = FieldPrime(settings.field_prime)
    graph = source.graph

    if _is_corner_cycle(source):
        report = ConjectureReport(graph.describe(), "mapping-cone")
        _, certificate = cycle_corner_betti(source.params[0])
        report.initial_extremal = certificate.extremal()
        bounds = (certificate.projdim_bound, certificate.reg_bound)
        try:
            report.initial_table = initial_table(source, "lcm", settings)
        except CapExceededError as e:
            logger.log_event("cli", "SEMICONTINUITY_SKIPPED", {"reason": str(e)})
    else:
        method = "formula" if source.family == "kmn" else "lcm"
        report = ConjectureReport(graph.describe(), method)
        try:
            report.initial_table = initial_table(source, method, settings)
        except CapExceededError as e:
            report.blocking = f"initial: {e}"
            return report
        report.initial_extremal = extremal_betti(report.initial_table)
        bounds = (proj_dim(report.initial_table), regularity(report.initial_table))

    if source.family == "kmn":
        m, n = source.params
        reference = published_reference_values("kmn", (m, n))
        if reference.disputed:
            position = reference.extremal_position
            closed_form = betti_kmn_closed_form(m, n).get(*position)
            report.candidates = [("theorem", closed_form), ("quoted", n - 1), ("oracle", None)]

    p, r = bounds
    try:
        bounded = koszul_betti(groebner_basis(graph), p, p + r, field=field_prime, caps=settings.caps,
                               row_max=r, threads=settings.threads, subject=_binomial_subject(source))
        report.binomial_table = certify_table(bounded, p, r)
    except CapExceededError as e:
        report.blocking = f"binomial: {e}"
    else:
        report.binomial_extremal = extremal_betti(report.binomial_table)
        if report.candidates:
            position = published_reference_values("kmn", source.params).extremal_position
            report.candidates[-1] = ("oracle", report.binomial_table.get(*position))
        if report.initial_table is not None:
            report.semicontinuity_checked = True
            report.violations = semicontinuity_violations(report.binomial_table, report.initial_table)

    logger.log_event("cli", "CONJECTURE_VERDICT", {
        "graph": report.graph,
        "verdict": report.verdict,
        "initial": str(report.initial_extremal),
        "binomial": str(report.binomial_extremal),
        "blocking": report.blocking,
    }, (time.time() - start) * 1000)
    return report


def render_conjecture(report: ConjectureReport, fmt: str) -> str:
    model = report.to_model()
    if fmt == "json":
        return dumps(model.to_dict())
    if fmt == "csv":
        lines = ["i,j,binomial,initial"]
        for entry in model.comparison:
            lines.append(",".join("" if v is None else str(v)
                                  for v in (entry.i, entry.j, entry.binomial, entry.initial)))
        return "\n".join(lines) + "\n"
    lines = [
        f"Extremal Betti numbers for {model.graph}",
        f"initial ({model.initial_method}): {report.initial_extremal if report.initial_extremal is not None else 'n/a'}",
        f"binomial ({model.binomial_method}): {report.binomial_extremal if report.binomial_extremal is not None else 'n/a'}",
    ]
    if model.semicontinuity_checked:
        status = "ok" if not model.semicontinuity_violations else \
            ", ".join(f"({e.i},{e.j}): {e.binomial} > {e.initial}" for e in model.semicontinuity_violations)
        lines.append(f"semicontinuity: {status}")
    else:
        lines.append("semicontinuity: not checked")
    for candidate in model.candidates:
        value = "n/a" if candidate.value is None else candidate.value
        lines.append(f"corner candidate ({candidate.source}): {value}")
    if model.blocking:
        lines.append(f"blocked by: {model.blocking}")
    lines.append(f"verdict: {model.verdict}")
    return "\n".join(lines) + "\n"


def cmd_conjecture(args: argparse.Namespace, settings: Settings) -> Tuple[str, int]:
    report = run_conjecture(resolve_graph(args), settings)
    code = {"equal": EXIT_OK, "unequal": EXIT_FAILED, "undecided": EXIT_UNDECIDED}[report.verdict]
    return render_conjecture(report, args.format), code


def cmd_verify_gb(args: argparse.Namespace, settings: Settings) -> Tuple[str, int]:
    source = resolve_graph(args)
    basis = None
    if args.basis is not None:
        basis = parse_basis_text(args.basis.read_text(encoding="utf-8"), source.graph.vertex_count)
    report = verify_groebner(source.graph, basis, settings.caps.max_s_pairs)
    return render_groebner(report, args.format), EXIT_OK if report.passed else EXIT_FAILED


COMMANDS = {
    "betti": cmd_betti,
    "conjecture": cmd_conjecture,
    "verify-gb": cmd_verify_gb,
}


def _emit(text: str, output: Optional[Path]):
    if output is None:
        sys.stdout.write(text)
        sys.stdout.flush()
    else:
        output.parent.mkdir(parents=True, exist_ok=True)
        output.write_text(text, encoding="utf-8")


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        settings = _settings_from_args(args)
        configure_logging(settings.logging.level, settings.logging.file,
                          settings.logging.max_payload_chars)
        text, code = COMMANDS[args.command](args, settings)
    except (UsageError, ConfigError, GraphValidationError, InvalidFamilyError, ParseError,
            IncompatibleMethodError, UnsupportedFamilyError) as e:
        stderr.print(f"❌ {e}")
        return EXIT_USAGE
    except CapExceededError as e:
        get_compute_logger().log_error("cli", str(e), {"what": e.what, "count": e.count, "limit": e.limit})
        stderr.print(f"⚠️  {e}")
        return EXIT_UNDECIDED
    except EdgeIdealError as e:
        get_compute_logger().log_error("cli", str(e))
        stderr.print(f"❌ {e}")
        return EXIT_FAILED
    except OSError as e:
        stderr.print(f"❌ {e}")
        return EXIT_USAGE
    _emit(text, args.output)
    return code


if __name__ == "__main__":
    sys.exit(main())
