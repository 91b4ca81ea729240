"""
Salida de tablas y reportes: diagrama de texto, JSON y CSV
"""
import csv
import io
from typing import Dict, List, Sequence, Tuple

from ..utils.reports import (
    BettiReport,
    CornerReport,
    CornerStepModel,
    GroebnerReportModel,
    RegionModel,
    SpotValue,
    dumps,
    parse_betti_report,
)
from .betti_engine import (
    BettiRegion,
    BettiTable,
    CornerCertificate,
    extremal_betti,
    proj_dim,
    regularity,
)
from .gb_engine import GroebnerVerification

FORMATS = ("text", "json", "csv")


def table_to_report(table: BettiTable) -> BettiReport:
    entries = [SpotValue(i=i, j=j, value=v) for (i, j), v in table.nonzero()]
    if table.bounded:
        region = RegionModel(i_max=table.region.i_max, j_max=table.region.j_max,
                             row_max=table.region.row_max)
        return BettiReport(subject=table.subject, bounded=True, region=region, entries=entries)
    extremal = [SpotValue(i=i, j=j, value=v) for (i, j), v in extremal_betti(table).entries]
    return BettiReport(subject=table.subject, bounded=False, entries=entries,
                       projdim=proj_dim(table), reg=regularity(table), extremal=extremal)


def report_to_table(report: BettiReport) -> BettiTable:
    region = None
    if report.bounded:
        if report.region is None:
            raise ValueError("una tabla acotada necesita `region`")
        region = BettiRegion(report.region.i_max, report.region.j_max, report.region.row_max)
    entries = {(e.i, e.j): e.value for e in report.entries}
    return BettiTable(report.subject, entries, region)


def render_table_json(table: BettiTable) -> str:
    return dumps(table_to_report(table).to_dict())


def parse_table_json(text: str) -> BettiTable:
    return report_to_table(parse_betti_report(text))


def _diagram_lines(table: BettiTable) -> List[str]:
    """Columnas = i, filas = j - i, ceros como '.'"""
    if not table.entries:
        return ["(vacía)"]
    max_i = max(i for i, _ in table.entries)
    max_row = max(j - i for i, j in table.entries)
    min_row = min(j - i for i, j in table.entries)
    columns = list(range(max_i + 1))
    totals = {i: 0 for i in columns}
    for (i, _), value in table.entries.items():
        totals[i] += value

    grid: List[List[str]] = [[""] + [str(i) for i in columns],
                             ["total:"] + [str(totals[i]) for i in columns]]
    for row in range(min_row, max_row + 1):
        line = [f"{row}:"]
        for i in columns:
            value = table.entries.get((i, i + row), 0)
            line.append(str(value) if value else ".")
        grid.append(line)

    label_width = max(len(r[0]) for r in grid)
    widths = [max(len(r[k]) for r in grid) for k in range(1, len(columns) + 1)]
    lines = []
    for r in grid:
        cells = " ".join(cell.rjust(w) for cell, w in zip(r[1:], widths))
        lines.append(f"{r[0].rjust(label_width)} {cells}".rstrip())
    return lines


def _extremal_text(entries: Sequence[Tuple[Tuple[int, int], int]]) -> str:
    return "{" + ", ".join(f"(({i},{j}), {v})" for (i, j), v in entries) + "}"


def render_table_text(table: BettiTable) -> str:
    lines = [table.subject]
    lines.extend(_diagram_lines(table))
    if table.bounded:
        region = table.region
        bound = f"i <= {region.i_max}, j <= {region.j_max}"
        if region.row_max is not None:
            bound += f", j-i <= {region.row_max}"
        lines.append(f"bounded: {bound}")
    else:
        lines.append(f"projdim: {proj_dim(table)}")
        lines.append(f"reg: {regularity(table)}")
        lines.append(f"extremal: {_extremal_text(extremal_betti(table).entries)}")
    return "\n".join(lines) + "\n"


def _csv(rows: Sequence[Sequence[object]]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerows(rows)
    return buffer.getvalue()


def render_tables(tables: Dict[str, BettiTable], fmt: str) -> str:
    """Una o dos tablas (lados `initial` / `binomial`) en el formato pedido"""
    if fmt == "text":
        return "\n".join(render_table_text(t) for _, t in sorted(tables.items()))
    if fmt == "json":
        if len(tables) == 1:
            (table,) = tables.values()
            return render_table_json(table)
        return dumps({side: table_to_report(t).to_dict() for side, t in sorted(tables.items())})
    if fmt == "csv":
        rows: List[Sequence[object]] = [("side", "i", "j", "value")]
        for side, table in sorted(tables.items()):
            rows.extend((side, i, j, v) for (i, j), v in table.nonzero())
        return _csv(rows)
    raise ValueError(f"formato desconocido: {fmt}")


def corner_to_report(subject: str, certificate: CornerCertificate) -> CornerReport:
    i, j = certificate.position
    steps = [
        CornerStepModel(
            k=s.k, generator=str(s.generator), i=s.i, j=s.j, colon=str(s.colon),
            quadrics=s.quadric_count, variables=s.variable_count,
            shifted_top_degree=s.shifted_top_degree, regularity_bound=s.regularity_bound,
            running_total=s.running_total,
        )
        for s in certificate.steps
    ]
    return CornerReport(subject=subject, n=certificate.n, value=certificate.value,
                        position=SpotValue(i=i, j=j, value=certificate.value),
                        projdim_bound=certificate.projdim_bound, reg_bound=certificate.reg_bound,
                        steps=steps)


def render_corner(subject: str, certificate: CornerCertificate, fmt: str) -> str:
    report = corner_to_report(subject, certificate)
    if fmt == "json":
        return dumps(report.to_dict())
    if fmt == "csv":
        rows: List[Sequence[object]] = [("k", "generator", "i", "j", "quadrics", "variables",
                                         "shifted_top_degree", "running_total")]
        rows.extend((s.k, s.generator, s.i, s.j, s.quadrics, s.variables,
                     s.shifted_top_degree, s.running_total) for s in report.steps)
        return _csv(rows)
    if fmt != "text":
        raise ValueError(f"formato desconocido: {fmt}")
    base = certificate.base
    lines = [
        f"{subject} corner by mapping-cone induction",
        f"base: J = {base.j_ideal}",
        f"      J:(x1*y{certificate.n}) = {base.j_colon}",
        f"      projdim S/I = {base.projdim}, reg S/I = {base.regularity}",
    ]
    for s in report.steps:
        lines.append(
            f"k={s.k}: v={s.generator} (i={s.i}, j={s.j}) colon={s.colon} "
            f"quadrics={s.quadrics} variables={s.variables} "
            f"shifted top={s.shifted_top_degree} total={s.running_total}"
        )
    i, j = certificate.position
    lines.append(f"corner: beta_{{{i},{j}}} = {certificate.value}")
    lines.append(f"projdim <= {certificate.projdim_bound}, reg <= {certificate.reg_bound}")
    lines.append(f"extremal: {_extremal_text(certificate.extremal().entries)}")
    return "\n".join(lines) + "\n"


def groebner_to_report(report: GroebnerVerification) -> GroebnerReportModel:
    return GroebnerReportModel(
        graph=report.subject,
        elements=report.element_count,
        s_pairs=report.pair_count,
        nonzero_pairs=len(report.nonzero_pairs),
        reducedness_violations=len(report.reducedness_violations),
        missing_generators=[list(e) for e in report.missing_generators],
        foreign_elements=[k + 1 for k in report.foreign_elements],
        passed=report.passed,
        first_counterexample=report.first_counterexample,
    )


def render_groebner(report: GroebnerVerification, fmt: str) -> str:
    model = groebner_to_report(report)
    if fmt == "json":
        return dumps(model.to_dict())
    if fmt == "csv":
        return _csv([
            ("graph", "elements", "s_pairs", "nonzero_pairs", "reducedness_violations", "passed"),
            (model.graph, model.elements, model.s_pairs, model.nonzero_pairs,
             model.reducedness_violations, model.passed),
        ])
    if fmt != "text":
        raise ValueError(f"formato desconocido: {fmt}")
    pairs = "all reduce to 0" if not model.nonzero_pairs else f"{model.nonzero_pairs} with nonzero normal form"
    lines = [
        f"Groebner verification for {model.graph}",
        f"elements: {model.elements}",
        f"S-pairs: {model.s_pairs} ({pairs})",
        f"reduced: {'yes' if not model.reducedness_violations else 'no'}",
        f"edge generators: {'all reduce to 0' if not model.missing_generators else model.missing_generators}",
    ]
    if model.foreign_elements:
        lines.append(f"elements outside J_G: {model.foreign_elements}")
    if model.first_counterexample:
        lines.append(f"first counterexample: {model.first_counterexample}")
    lines.append(f"result: {'PASS' if model.passed else 'FAIL'}")
    return "\n".join(lines) + "\n"

