"""Labels-TSV partition files, JSON result documents and DOT tree rendering."""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

from .basis import CutBasis
from .partition import DataError, GroundSet, Partition, build_partition, intersect_ground
from .solvers import MinCutResult


def parse_partition_text(text: str, source: str = "<string>") -> Partition:
    """Parse ``element<TAB>label[<TAB>weight]`` lines; ``#`` starts a comment."""
    elements: list[str] = []
    weights: list[int] = []
    assignment: dict[str, str] = {}
    first_seen: dict[str, int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip("\r\n")
        if not line.strip():
            continue
        fields = line.rstrip().split("\t")
        if len(fields) not in (2, 3) or not fields[0] or not fields[1]:
            raise DataError(f"{source}, line {lineno}: malformed line, "
                            "expected element<TAB>label[<TAB>weight]")
        elem, label = fields[0].strip(), fields[1].strip()
        weight = 1
        if len(fields) == 3:
            try:
                weight = int(fields[2])
            except ValueError:
                raise DataError(f"{source}, line {lineno}: weight {fields[2]!r} "
                                "is not an integer") from None
            if weight < 0:
                raise DataError(f"{source}, line {lineno}: negative weight {weight}")
        if elem in first_seen:
            raise DataError(f"{source}, line {lineno}: duplicate element {elem!r} "
                            f"(first at line {first_seen[elem]})")
        first_seen[elem] = lineno
        elements.append(elem)
        weights.append(weight)
        assignment[elem] = label
    if not elements:
        raise DataError(f"{source}: no elements")
    return build_partition(GroundSet.of(elements, weights), assignment)


def parse_partition_file(path) -> Partition:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise DataError(f"cannot read {path}: {exc}") from None
    return parse_partition_text(text, str(path))


def format_partition(p: Partition) -> str:
    """Inverse of :func:`parse_partition_text`; weights are written only when not all 1."""
    weighted = bool((p.ground.weights != 1).any())
    lines = []
    for e, lab, w in zip(p.ground.elements, p.labels, p.ground.weights):
        row = [str(e), p.names[lab]] + ([str(int(w))] if weighted else [])
        lines.append("\t".join(row))
    return "\n".join(lines) + "\n"


def write_partition_file(p: Partition, path) -> None:
    Path(path).write_text(format_partition(p), encoding="utf-8")


def align_partitions(pa: Partition, pb: Partition, intersect: bool = False
                     ) -> tuple[Partition, Partition]:
    """Bring two parsed partitions onto one ground set.

    Files listing the same elements in a different order are reconciled
    always; differing element sets need ``intersect``.
    """
    if pa.ground == pb.ground:
        return pa, pb
    if not intersect and set(pa.ground.elements) != set(pb.ground.elements):
        raise DataError("the two inputs cover different elements (use --intersect)")
    return intersect_ground(pa, pb)


# -- result documents ----------------------------------------------------------

def _labels(ps, names) -> list[str] | None:
    return None if ps is None else [names[i] for i in ps]


def fraction_fields(value: Fraction) -> dict:
    return {"total_dissimilarity": float(value),
            "total_dissimilarity_exact": f"{value.numerator}/{value.denominator}"}


def cut_record(s_side, partner, value, mutual, status, rows, cols, source=None, target=None
               ) -> dict:
    rec = {}
    if source is not None:
        rec["source"] = source
        rec["target"] = target
    rec.update({"s_side": _labels(s_side, rows), "partner": _labels(partner, cols),
                "value": value, "mutual": mutual, "status": status.value})
    return rec


def mincut_document(res: MinCutResult, rows, cols, solver: str, mutual: bool | None,
                    metadata: dict | None = None, timings: bool = False) -> dict:
    doc = {"constraint": res.constraint.value, "solver": solver}
    if metadata:
        doc["metadata"] = metadata
    doc["cuts"] = [cut_record(res.s_side, res.partner, res.value, mutual, res.status,
                              rows, cols, rows[res.source], rows[res.target])]
    doc["stats"] = res.stats.as_dict(timings)
    return doc


def basis_document(basis: CutBasis, rows, cols, total: Fraction,
                   metadata: dict | None = None, timings: bool = False) -> dict:
    """JSON-ready dict for a cut basis; part labels replace indices throughout."""
    names = basis.node_names
    constraint = basis.constraint.value if basis.constraint is not None else "cv"
    doc = {"constraint": constraint, "solver": basis.solver}
    if metadata:
        doc["metadata"] = metadata
    doc["cuts"] = [cut_record(c.s_side, c.partner, c.value, c.mutual, c.status, rows, cols,
                              names[c.source], names[c.target]) for c in basis.cuts]
    doc["tree"] = [{"node": names[i], "parent": names[p], "weight": w}
                   for i, p, w in basis.edges()]
    doc.update(fraction_fields(total))
    stats = {k: v for k, v in basis.stats.items() if timings or k != "wall_time"}
    doc["stats"] = stats
    return doc


def dump_json(doc: dict) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def _dot_id(name: str) -> str:
    return '"' + str(name).replace("\\", "\\\\").replace('"', '\\"') + '"'


def emit_dot(basis: CutBasis, name: str = "cut_basis") -> str:
    """The basis tree as an undirected DOT graph labelled with cut values."""
    names = basis.node_names or tuple(str(i) for i in range(basis.size))
    lines = [f"graph {name} {{"]
    lines += [f"  {_dot_id(n)};" for n in names]
    for i, p, w in basis.edges():
        label = "infeasible" if w is None else str(w)
        lines.append(f"  {_dot_id(names[i])} -- {_dot_id(names[p])} [label=\"{label}\"];")
    lines.append("}")
    return "\n".join(lines) + "\n"
