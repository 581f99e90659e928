"""Data model for multicurve diagrams on the boundary of a genus-2 handlebody.

The boundary surface is cut by three disks into two pairs of pants, ``A`` and
``B``.  A diagram records where a multicurve meets the three cutting circles
and how its arcs run through each pants.  Conventions, fixed once and shared
by every consumer:

* circles are numbered 1 (left hole), 2 (right hole), 3 (outer boundary) in
  both pants charts;
* positions on circle ``d`` are numbered ``0 .. N_d - 1`` from the basepoint,
  increasing counterclockwise as seen from pants A;
* every arc is routed through the upper (``above``) or lower (``below``) half
  of its chart, the halves being separated by the horizontal axis through
  the hole centers.

A diagram may also carry ``loop`` components parallel to a cutting circle
that the multicurve does not cross; they are drawn in chart A.

Side labels (the transverse orientation of a separating multicurve) are
derived data, computed on demand and never stored in files.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Mapping

from suturekit.arrangement import (
    DISKS,
    PANTS,
    TAGS,
    Arrangement,
    ArrangementError,
    Chord,
)

__all__ = [
    "Arc",
    "CurveDiagram",
    "CurveFormatError",
    "CuttingSystem",
    "DEFAULT_SYSTEM",
    "RegionDecomposition",
    "RegionInfo",
    "ValidationReport",
    "arc_counts",
    "arrangement_of",
    "assign_transverse_orientation",
    "complement_regions",
    "dump_curve",
    "is_separating",
    "load_curve",
    "parse_curve",
    "save_curve",
    "trace_components",
    "validate_diagram",
]


@dataclass(frozen=True)
class CuttingSystem:
    """The fixed system of three cutting disks.

    There is one sensible instance (:data:`DEFAULT_SYSTEM`); the class exists
    so signatures can say what their convention argument is.
    """

    disks: tuple[int, ...] = DISKS
    pants: tuple[str, ...] = PANTS
    outer: int = 3
    basepoint: str = "top"
    orientation: str = "ccw from pants A"

    @property
    def holes(self) -> tuple[int, ...]:
        return tuple(d for d in self.disks if d != self.outer)


DEFAULT_SYSTEM = CuttingSystem()


@dataclass(frozen=True, order=True)
class Arc:
    """An embedded arc in one pants chart.

    Endpoints are (disk, position) pairs; ``routing`` says which half of the
    chart the arc runs through.  A seam joins two different circles, a return
    arc comes back to the circle it started from.
    """

    pants: str
    end1: tuple[int, int]
    end2: tuple[int, int]
    routing: str

    @property
    def disks(self) -> tuple[int, int]:
        return (self.end1[0], self.end2[0])

    @property
    def is_return(self) -> bool:
        return self.end1[0] == self.end2[0]

    @property
    def is_seam(self) -> bool:
        return not self.is_return

    def other_end(self, end: tuple[int, int]) -> tuple[int, int]:
        if end == self.end1:
            return self.end2
        if end == self.end2:
            return self.end1
        raise ValueError(f"{end} is not an endpoint of {self}")

    def normalized(self) -> "Arc":
        if self.end2 < self.end1:
            return Arc(self.pants, self.end2, self.end1, self.routing)
        return self


class CurveDiagram:
    """A multicurve on the genus-2 surface, in cut position.

    ``counts`` gives the number of crossings with each cutting circle,
    ``arcs`` the arc records of both pants, ``loops`` the cuff-parallel
    closed components (circle -> multiplicity).
    """

    def __init__(
        self,
        counts: Mapping[int, int] | Iterable[int],
        arcs: Iterable[Arc],
        loops: Mapping[int, int] | None = None,
        system: CuttingSystem = DEFAULT_SYSTEM,
    ) -> None:
        if not isinstance(counts, Mapping):
            counts = dict(zip(DISKS, counts))
        self.counts = {d: int(counts.get(d, 0)) for d in DISKS}
        self.arcs = tuple(sorted(a.normalized() for a in arcs))
        self.loops = {d: int(k) for d, k in sorted((loops or {}).items()) if k}
        self.system = system

    def __repr__(self) -> str:
        n = self.counts
        return (f"CurveDiagram(counts=({n[1]}, {n[2]}, {n[3]}), "
                f"arcs={len(self.arcs)}, loops={self.loops or '{}'})")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CurveDiagram):
            return NotImplemented
        return (self.counts == other.counts and self.arcs == other.arcs
                and self.loops == other.loops)

    def __hash__(self) -> int:
        return hash((tuple(sorted(self.counts.items())), self.arcs,
                     tuple(sorted(self.loops.items()))))

    def arcs_in(self, pants: str) -> tuple[Arc, ...]:
        return tuple(a for a in self.arcs if a.pants == pants)

    @functools.cached_property
    def _arc_at(self) -> dict[tuple[str, int, int], Arc]:
        table: dict[tuple[str, int, int], Arc] = {}
        for a in self.arcs:
            for d, p in (a.end1, a.end2):
                table.setdefault((a.pants, d, p), a)
        return table

    def arc_at(self, pants: str, disk: int, position: int) -> Arc | None:
        return self._arc_at.get((pants, disk, position))

    @property
    def total_weight(self) -> int:
        return sum(self.counts.values())


def arrangement_of(diagram: CurveDiagram) -> Arrangement:
    """The cached cell-complex arrangement underlying a diagram."""
    return _arrangement_cached(diagram)


@functools.lru_cache(maxsize=256)
def _arrangement_cached(diagram: CurveDiagram) -> Arrangement:
    orders = {d: list(range(diagram.counts[d])) for d in DISKS}
    chords = [
        Chord(cid=i, pants=a.pants, end1=a.end1, end2=a.end2, tag=a.routing)
        for i, a in enumerate(diagram.arcs)
    ]
    return Arrangement(orders, chords, loops=diagram.loops)


# ---------------------------------------------------------------------------
# validation


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    violations: tuple[str, ...]


def validate_diagram(diagram: CurveDiagram) -> ValidationReport:
    """Check that a diagram is realizable as an embedded multicurve.

    Beyond bookkeeping (declared counts match the positions used, every
    position carries exactly one arc per pants), this verifies that each
    circle's positions split into at most one ``above`` and one ``below``
    block per chart and that no two arcs of the same half-disk interleave.
    """
    basic: list[str] = []
    for d in DISKS:
        if diagram.counts[d] < 0:
            basic.append(f"negative count on circle {d}")
    for a in diagram.arcs:
        if a.pants not in PANTS:
            basic.append(f"unknown pants {a.pants!r}")
        if a.routing not in TAGS:
            basic.append(f"unknown routing {a.routing!r}")
    if basic:
        return ValidationReport(False, tuple(basic))
    arr = arrangement_of(diagram)
    return ValidationReport(arr.ok, tuple(arr.violations))


def arc_counts(diagram: CurveDiagram) -> dict[tuple[str, tuple[int, ...], str], int]:
    """Tally of arcs by (pants, circles joined, routing).

    Seams are keyed by the sorted pair of circles they join, return arcs by
    the one circle they come back to.
    """
    table: dict[tuple[str, tuple[int, ...], str], int] = {}
    for a in diagram.arcs:
        i, j = sorted((a.end1[0], a.end2[0]))
        key = (a.pants, (i,) if i == j else (i, j), a.routing)
        table[key] = table.get(key, 0) + 1
    return table


# ---------------------------------------------------------------------------
# components


def trace_components(diagram: CurveDiagram) -> tuple[tuple, ...]:
    """Split the multicurve into components.

    Each crossing component is a cyclic itinerary of ``(disk, position,
    pants, arc)`` tokens: the strand crosses the circle at that position into
    that pants and runs along that arc.  The itinerary starts at its smallest
    token and always enters pants A there, so equal multicurves trace equal
    component tuples.  Loop components are reported as single
    ``("loop", disk, index)`` tokens.
    """
    report = validate_diagram(diagram)
    if not report.ok:
        raise ValueError("invalid diagram: " + "; ".join(report.violations))
    tokens: list[tuple[int, int]] = [
        (d, p) for d in DISKS for p in range(diagram.counts[d])]
    seen: set[tuple[int, int]] = set()
    components: list[tuple] = []
    for start in tokens:
        if start in seen:
            continue
        itinerary = []
        at = start
        pants = "A"
        while True:
            arc = diagram.arc_at(pants, *at)
            itinerary.append((at[0], at[1], pants, arc))
            seen.add(at)
            at = arc.other_end(at)
            pants = "B" if pants == "A" else "A"
            if at == start and pants == "A":
                break
        k = itinerary.index(min(itinerary, key=lambda t: t[:3]))
        components.append(tuple(itinerary[k:] + itinerary[:k]))
    for d, k in sorted(diagram.loops.items()):
        components.extend((("loop", d, j),) for j in range(1, k + 1))
    return tuple(components)


# ---------------------------------------------------------------------------
# regions


@dataclass(frozen=True)
class RegionInfo:
    index: int
    euler: int
    boundaries: int
    genus: int
    sign: str | None


@dataclass(frozen=True)
class RegionDecomposition:
    """Complement regions of the multicurve, each cut open along it."""

    regions: tuple[RegionInfo, ...]
    two_colored: bool
    total_euler: int
    adjacency: frozenset[tuple[int, int]]

    @property
    def count(self) -> int:
        return len(self.regions)


def complement_regions(diagram: CurveDiagram) -> RegionDecomposition:
    report = validate_diagram(diagram)
    if not report.ok:
        raise ValueError("invalid diagram: " + "; ".join(report.violations))
    arr = arrangement_of(diagram)
    signs = {0: "+", 1: "-", None: None}
    regions = tuple(
        RegionInfo(index=r.index, euler=r.euler, boundaries=r.boundaries,
                   genus=r.genus, sign=signs[r.color])
        for r in arr.regions)
    return RegionDecomposition(
        regions=regions,
        two_colored=arr.two_colorable,
        total_euler=arr.euler_total(),
        adjacency=frozenset(arr.region_adjacency()),
    )


def is_separating(diagram: CurveDiagram) -> bool:
    """Whether the multicurve separates the surface (bounds mod 2)."""
    report = validate_diagram(diagram)
    if not report.ok:
        raise ValueError("invalid diagram: " + "; ".join(report.violations))
    return arrangement_of(diagram).two_colorable


def assign_transverse_orientation(diagram: CurveDiagram) -> dict[tuple[int, int], str]:
    """Side labels of a separating multicurve.

    Labels the circle positions by the sign of the region entered just after
    them in master order; the positive region is the one along the gap after
    position 0 of circle 1.  Raises ``ValueError`` for non-separating
    multicurves, whose complement has no two-coloring.
    """
    report = validate_diagram(diagram)
    if not report.ok:
        raise ValueError("invalid diagram: " + "; ".join(report.violations))
    arr = arrangement_of(diagram)
    try:
        raw = arr.position_labels()
    except ArrangementError:
        raise ValueError("non-separating") from None
    return {pt: "+" if c == 0 else "-" for pt, c in raw.items()}


# ---------------------------------------------------------------------------
# file format


class CurveFormatError(ValueError):
    pass


def parse_curve(text: str, source: str = "<string>") -> CurveDiagram:
    """Parse the plain-text diagram format.

    ::

        # comment
        disks 3
        counts 2 2 2
        arc A 1:0 2:1 above
        loop 1 2

    ``arc`` lines name the pants, the two endpoints as ``disk:position``,
    and the routing half.  ``loop`` lines add cuff-parallel components.
    """
    counts: list[int] | None = None
    arcs: list[Arc] = []
    loops: dict[int, int] = {}
    saw_disks = False

    def err(lineno: int, message: str) -> CurveFormatError:
        return CurveFormatError(f"{source}:{lineno}: {message}")

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        kind = fields[0]
        if kind == "disks":
            if len(fields) != 2 or fields[1] != "3":
                raise err(lineno, "expected 'disks 3'")
            saw_disks = True
        elif kind == "counts":
            if len(fields) != 4:
                raise err(lineno, "expected 'counts N1 N2 N3'")
            try:
                counts = [int(f) for f in fields[1:]]
            except ValueError:
                raise err(lineno, "counts must be integers") from None
        elif kind == "arc":
            if len(fields) != 5:
                raise err(lineno, "expected 'arc <pants> <d:p> <d:p> <routing>'")
            pants = fields[1]
            if pants not in PANTS:
                raise err(lineno, f"unknown pants {pants!r}")
            try:
                ends = [_parse_end(f) for f in fields[2:4]]
            except ValueError as exc:
                raise err(lineno, str(exc)) from None
            routing = fields[4]
            if routing not in TAGS:
                raise err(lineno, f"unknown routing {routing!r}")
            arcs.append(Arc(pants, ends[0], ends[1], routing))
        elif kind == "loop":
            if len(fields) != 3:
                raise err(lineno, "expected 'loop <disk> <count>'")
            try:
                d, k = int(fields[1]), int(fields[2])
            except ValueError:
                raise err(lineno, "loop fields must be integers") from None
            if d not in DISKS or k < 0:
                raise err(lineno, "bad loop record")
            loops[d] = loops.get(d, 0) + k
        else:
            raise err(lineno, f"unknown directive {kind!r}")
    if not saw_disks:
        raise CurveFormatError(f"{source}: missing 'disks 3' header")
    if counts is None:
        raise CurveFormatError(f"{source}: missing 'counts' line")
    return CurveDiagram(counts, arcs, loops)


def _parse_end(field: str) -> tuple[int, int]:
    disk_s, sep, pos_s = field.partition(":")
    if not sep:
        raise ValueError(f"endpoint {field!r} is not of the form disk:position")
    try:
        return int(disk_s), int(pos_s)
    except ValueError:
        raise ValueError(f"endpoint {field!r} is not of the form disk:position")


def load_curve(path: str | Path) -> CurveDiagram:
    path = Path(path)
    return parse_curve(path.read_text(), source=str(path))


def dump_curve(diagram: CurveDiagram, comment: str | None = None) -> str:
    lines = []
    if comment:
        lines.extend(f"# {c}" for c in comment.splitlines())
    n = diagram.counts
    lines.append("disks 3")
    lines.append(f"counts {n[1]} {n[2]} {n[3]}")
    for a in diagram.arcs:
        lines.append(
            f"arc {a.pants} {a.end1[0]}:{a.end1[1]} "
            f"{a.end2[0]}:{a.end2[1]} {a.routing}")
    for d, k in sorted(diagram.loops.items()):
        lines.append(f"loop {d} {k}")
    return "\n".join(lines) + "\n"


def save_curve(diagram: CurveDiagram, path: str | Path,
               comment: str | None = None) -> None:
    Path(path).write_text(dump_curve(diagram, comment))
