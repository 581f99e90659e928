"""Train tracks on the two-pants surface, with integer weight vectors.

A track is a collection of switches and branches.  Branches carry an
itinerary describing how they run over the surface; switches tie branch ends
together with a tangential merge.  The plain-text format is::

    switch <id> sideA <k> sideB <m>
    branch <id> <switch>:<A|B><slot> <switch>:<A|B><slot> itinerary <tok;...>

Itinerary tokens are runs ``pants<A|B>:<above|below>`` naming the half-disk a
stretch of the branch lies in, and punctures ``crossD<i>@<anchor>`` recording
a crossing of circle ``i``.  The anchor is the cyclic rank of the branch's
block of positions among all blocks on that circle, so anchors freeze the
master order once weights are chosen.  Itineraries alternate runs and
punctures and both start and end with a run: branch endpoints are interior
to half-disks, at their switches.

Slot lists of both switch sides are written left to right as seen by a
traveler crossing the switch from side A to side B.  A branch meets a switch
in its canonical strand order (end1 to end2, left to right) exactly when the
travel directions agree: where it leaves from side B or arrives at side A.

A weight vector maps branch ids to non-negative integers.  ``expand`` turns
an admissible weight vector into the carried multicurve: each branch becomes
a bundle of parallel strands, bundles are spliced across switches in slot
order, and the result is an embedded curve diagram.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Mapping

from suturekit.arrangement import DISKS, WALK_BLOCKS
from suturekit.surface_model import Arc, CurveDiagram, trace_components, validate_diagram

__all__ = [
    "Attachment",
    "BranchSpec",
    "Puncture",
    "Run",
    "SwitchCheck",
    "TrackFormatError",
    "TrackSpec",
    "carried_components",
    "check_switch_conditions",
    "dump_track",
    "dump_weights",
    "expand",
    "load_track",
    "load_weights",
    "parse_track",
    "parse_weights",
    "twist_weights",
]


class TrackFormatError(ValueError):
    pass


@dataclass(frozen=True)
class Attachment:
    switch: str
    side: str  # "A" | "B"
    slot: int


@dataclass(frozen=True)
class Run:
    pants: str
    tag: str


@dataclass(frozen=True)
class Puncture:
    disk: int
    anchor: int


@dataclass(frozen=True)
class BranchSpec:
    bid: str
    end1: Attachment
    end2: Attachment
    itinerary: tuple

    @property
    def punctures(self) -> tuple[Puncture, ...]:
        return tuple(t for t in self.itinerary if isinstance(t, Puncture))

    @property
    def runs(self) -> tuple[Run, ...]:
        return tuple(t for t in self.itinerary if isinstance(t, Run))

    def end(self, which: int) -> Attachment:
        return self.end1 if which == 1 else self.end2

    def edge_run(self, which: int) -> Run:
        """The run adjacent to one end: first for end1, last for end2."""
        return self.itinerary[0] if which == 1 else self.itinerary[-1]


class TrackSpec:
    """A validated train track: switches with slot counts, branches."""

    def __init__(self, switches: Mapping[str, tuple[int, int]],
                 branches: Iterable[BranchSpec]) -> None:
        self.switches = dict(switches)
        self.branches = {b.bid: b for b in branches}
        self._validate()

    def _validate(self) -> None:
        fills: dict[tuple[str, str, int], str] = {}
        for b in self.branches.values():
            self._check_itinerary(b)
            for which in (1, 2):
                att = b.end(which)
                if att.switch not in self.switches:
                    raise TrackFormatError(
                        f"unknown switch: branch {b.bid} attaches to "
                        f"{att.switch!r}")
                ka, kb = self.switches[att.switch]
                limit = ka if att.side == "A" else kb
                if att.side not in ("A", "B") or not 0 <= att.slot < limit:
                    raise TrackFormatError(
                        f"slot out of range: branch {b.bid} end{which} at "
                        f"{att.switch}:{att.side}{att.slot}")
                key = (att.switch, att.side, att.slot)
                if key in fills:
                    raise TrackFormatError(
                        f"slot reused: {att.switch}:{att.side}{att.slot} by "
                        f"branches {fills[key]} and {b.bid}")
                fills[key] = b.bid
        for sid, (ka, kb) in self.switches.items():
            for side, k in (("A", ka), ("B", kb)):
                for slot in range(k):
                    if (sid, side, slot) not in fills:
                        raise TrackFormatError(
                            f"slot unfilled: {sid}:{side}{slot}")
        # switch homogeneity: every branch end arriving at a switch must run
        # in the same half-disk
        runs_at: dict[str, set[Run]] = {}
        for b in self.branches.values():
            for which in (1, 2):
                runs_at.setdefault(b.end(which).switch, set()).add(
                    b.edge_run(which))
        for sid, runs in sorted(runs_at.items()):
            if len(runs) > 1:
                raise TrackFormatError(
                    f"switch homogeneity: {sid} joins runs in different "
                    f"half-disks")
        anchors: dict[tuple[int, int], tuple[str, int]] = {}
        for b in self.branches.values():
            for j, p in enumerate(b.punctures):
                key = (p.disk, p.anchor)
                if key in anchors:
                    raise TrackFormatError(
                        f"duplicate anchor: circle {p.disk} rank {p.anchor} "
                        f"used by {anchors[key][0]} and {b.bid}")
                anchors[key] = (b.bid, j)

    @staticmethod
    def _check_itinerary(b: BranchSpec) -> None:
        it = b.itinerary
        if not it or len(it) % 2 == 0:
            raise TrackFormatError(
                f"itinerary alternation: branch {b.bid} must start and end "
                f"with a run")
        for i, tok in enumerate(it):
            want = Run if i % 2 == 0 else Puncture
            if not isinstance(tok, want):
                raise TrackFormatError(
                    f"itinerary alternation: branch {b.bid} token {i}")

    def slot_order(self, switch: str, side: str) -> list[str]:
        """Branch ids filling one switch side, in slot order."""
        k = self.switches[switch][0 if side == "A" else 1]
        out: list[str | None] = [None] * k
        for b in self.branches.values():
            for which in (1, 2):
                att = b.end(which)
                if att.switch == switch and att.side == side:
                    out[att.slot] = b.bid
        return list(out)  # type: ignore[arg-type]

    def attachments_at(self, switch: str, side: str) -> list[tuple[str, int]]:
        """(branch id, end) pairs filling one switch side, in slot order."""
        k = self.switches[switch][0 if side == "A" else 1]
        out: list[tuple[str, int]] = [("", 0)] * k
        for b in self.branches.values():
            for which in (1, 2):
                att = b.end(which)
                if att.switch == switch and att.side == side:
                    out[att.slot] = (b.bid, which)
        return out


# ---------------------------------------------------------------------------
# parsing


_ATT_RE = re.compile(r"^([^:]+):([AB])(\d+)$")
_CROSS_RE = re.compile(r"^crossD([123])@(-?\d+)$")
_RUN_RE = re.compile(r"^pants([AB]):(above|below)$")


def parse_track(text: str, source: str = "<string>") -> TrackSpec:
    switches: dict[str, tuple[int, int]] = {}
    branches: list[BranchSpec] = []

    def err(lineno: int, message: str) -> TrackFormatError:
        return TrackFormatError(f"{source}:{lineno}: {message}")

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if fields[0] == "switch":
            if (len(fields) != 6 or fields[2] != "sideA"
                    or fields[4] != "sideB"):
                raise err(lineno, "expected 'switch <id> sideA <k> sideB <m>'")
            sid = fields[1]
            if sid in switches:
                raise err(lineno, f"switch {sid!r} redeclared")
            try:
                ka, kb = int(fields[3]), int(fields[5])
            except ValueError:
                raise err(lineno, "slot counts must be integers") from None
            if ka < 1 or kb < 1:
                raise err(lineno, "switch sides need at least one slot")
            switches[sid] = (ka, kb)
        elif fields[0] == "branch":
            if len(fields) < 6 or fields[4] != "itinerary":
                raise err(lineno, "expected 'branch <id> <sw:slot> <sw:slot> "
                                  "itinerary <tokens>'")
            bid = fields[1]
            if any(b.bid == bid for b in branches):
                raise err(lineno, f"branch {bid!r} redeclared")
            atts = []
            for f in fields[2:4]:
                m = _ATT_RE.match(f)
                if not m:
                    raise err(lineno, f"bad attachment {f!r}")
                atts.append(Attachment(m.group(1), m.group(2), int(m.group(3))))
            tokens = []
            for tok in " ".join(fields[5:]).split(";"):
                tok = tok.strip()
                if m := _RUN_RE.match(tok):
                    tokens.append(Run(m.group(1), m.group(2)))
                elif m := _CROSS_RE.match(tok):
                    tokens.append(Puncture(int(m.group(1)), int(m.group(2))))
                else:
                    raise err(lineno, f"bad itinerary token {tok!r}")
            branches.append(BranchSpec(bid, atts[0], atts[1], tuple(tokens)))
        else:
            raise err(lineno, f"unknown directive {fields[0]!r}")
    return TrackSpec(switches, branches)


def load_track(path: str | Path) -> TrackSpec:
    path = Path(path)
    return parse_track(path.read_text(), source=str(path))


def dump_track(track: TrackSpec, comment: str | None = None) -> str:
    lines = []
    if comment:
        lines.extend(f"# {c}" for c in comment.splitlines())
    for sid in sorted(track.switches):
        ka, kb = track.switches[sid]
        lines.append(f"switch {sid} sideA {ka} sideB {kb}")
    for bid in sorted(track.branches):
        b = track.branches[bid]
        toks = ";".join(
            f"pants{t.pants}:{t.tag}" if isinstance(t, Run)
            else f"crossD{t.disk}@{t.anchor}"
            for t in b.itinerary)
        e1, e2 = b.end1, b.end2
        lines.append(
            f"branch {bid} {e1.switch}:{e1.side}{e1.slot} "
            f"{e2.switch}:{e2.side}{e2.slot} itinerary {toks}")
    return "\n".join(lines) + "\n"


def parse_weights(text: str, source: str = "<string>") -> dict[str, int]:
    out: dict[str, int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if len(fields) != 2:
            raise TrackFormatError(
                f"{source}:{lineno}: expected '<branch> <weight>'")
        try:
            out[fields[0]] = int(fields[1])
        except ValueError:
            raise TrackFormatError(
                f"{source}:{lineno}: weight must be an integer") from None
    return out


def load_weights(path: str | Path) -> dict[str, int]:
    path = Path(path)
    return parse_weights(path.read_text(), source=str(path))


def dump_weights(weights: Mapping[str, int]) -> str:
    return "".join(f"{b} {w}\n" for b, w in sorted(weights.items()))


# ---------------------------------------------------------------------------
# switch conditions and twisting


@dataclass(frozen=True)
class SwitchCheck:
    ok: bool
    violating: tuple[str, ...]


def _full_weights(track: TrackSpec, weights: Mapping[str, int]) -> dict[str, int]:
    for bid in weights:
        if bid not in track.branches:
            raise ValueError(f"unknown branch id {bid!r}")
    out = {}
    for bid in track.branches:
        if bid not in weights:
            raise ValueError(f"no weight for branch {bid!r}")
        w = int(weights[bid])
        if w < 0:
            raise ValueError(f"negative weight for branch {bid!r}")
        out[bid] = w
    return out


def check_switch_conditions(track: TrackSpec,
                            weights: Mapping[str, int]) -> SwitchCheck:
    """Verify that both sides of every switch carry equal total weight."""
    w = _full_weights(track, weights)
    bad = []
    for sid in sorted(track.switches):
        side_a = sum(w[b] for b in track.slot_order(sid, "A"))
        side_b = sum(w[b] for b in track.slot_order(sid, "B"))
        if side_a != side_b:
            bad.append(sid)
    return SwitchCheck(ok=not bad, violating=tuple(bad))


def twist_weights(base: Mapping[str, int], loop: Mapping[str, int],
                  n: int, intersection: int) -> dict[str, int]:
    """Weights of a curve after ``n`` twists along a carried loop.

    Componentwise ``base + n * intersection * loop``, where ``intersection``
    is the geometric intersection number of the two carried curves.
    """
    if n < 0 or intersection < 0:
        raise ValueError("twist count and intersection number are >= 0")
    keys = set(base) | set(loop)
    return {b: base.get(b, 0) + n * intersection * loop.get(b, 0)
            for b in sorted(keys)}


# ---------------------------------------------------------------------------
# expansion


class _ParityDSU:
    def __init__(self) -> None:
        self.parent: dict = {}
        self.offset: dict = {}

    def find(self, x) -> tuple:
        if self.parent.setdefault(x, x) == x:
            self.offset.setdefault(x, 0)
            return x, 0
        root, off = self.find(self.parent[x])
        self.parent[x] = root
        self.offset[x] ^= off
        return root, self.offset[x]

    def union(self, a, b, parity: int) -> bool:
        ra, oa = self.find(a)
        rb, ob = self.find(b)
        if ra == rb:
            return oa ^ ob == parity
        self.parent[rb] = ra
        self.offset[rb] = oa ^ ob ^ parity
        return True


# Whether a half-disk walk visits a circle's positions in descending master
# order (derived from the walk table so the two modules cannot drift apart).
_WALK_DESCENDS = {
    (pants, tag, disk): direction < 0
    for (pants, tag), blocks in WALK_BLOCKS.items()
    for disk, direction in blocks
}


def _aligned(side: str, end: int) -> bool:
    """Whether a branch presents its strands to the switch sequence in
    canonical order at this attachment (see module docstring)."""
    return (side == "A" and end == 2) or (side == "B" and end == 1)


class _Expander:
    def __init__(self, track: TrackSpec, weights: Mapping[str, int]) -> None:
        self.track = track
        self.w = _full_weights(track, weights)
        check = check_switch_conditions(track, weights)
        if not check.ok:
            raise ValueError(
                "switch conditions violated at: " + ", ".join(check.violating))

    def run(self) -> CurveDiagram:
        self._layout_blocks()
        self._walk_strands()
        self._solve_block_orders()
        return self._emit()

    # -- blocks ---------------------------------------------------------

    def _layout_blocks(self) -> None:
        per_disk: dict[int, list[tuple[int, str, int]]] = {d: [] for d in DISKS}
        for bid, b in sorted(self.track.branches.items()):
            if self.w[bid] == 0:
                continue
            for j, p in enumerate(b.punctures):
                per_disk[p.disk].append((p.anchor, bid, j))
        self.block_base: dict[tuple[str, int], int] = {}
        self.counts = {d: 0 for d in DISKS}
        for d in DISKS:
            base = 0
            for _anchor, bid, j in sorted(per_disk[d]):
                self.block_base[(bid, j)] = base
                base += self.w[bid]
            self.counts[d] = base

    # -- strand chains through switches ----------------------------------

    def _partner(self, att: Attachment, seq: int) -> tuple[str, int, int]:
        """Cross a switch: from a sequence position on one side to the
        branch strand occupying it on the other side."""
        other = "B" if att.side == "A" else "A"
        offset = 0
        for bid, end in self.track.attachments_at(att.switch, other):
            wb = self.w[bid]
            if offset <= seq < offset + wb:
                local = seq - offset
                k = local if _aligned(other, end) else wb - 1 - local
                return bid, end, k
            offset += wb
        raise AssertionError("sequence position out of range")

    def _seq_of(self, bid: str, end: int, k: int) -> tuple[Attachment, int]:
        att = self.track.branches[bid].end(end)
        offset = 0
        for obid, oend in self.track.attachments_at(att.switch, att.side):
            if obid == bid and oend == end:
                wb = self.w[bid]
                local = k if _aligned(att.side, end) else wb - 1 - k
                return att, offset + local
            offset += self.w[obid]
        raise AssertionError("attachment not found")

    def _chain(self, bid: str, end: int, k: int):
        """Leave branch ``bid`` through ``end`` as strand ``k``; cross
        switches (and any crossing-free branches) until entering a branch at
        a puncture.  Returns the target and the runs passed through."""
        runs = [self.track.branches[bid].edge_run(end)]
        cur_bid, cur_end, cur_k = bid, end, k
        guard = 2 * sum(self.w.values()) + 2
        for _ in range(guard):
            att, seq = self._seq_of(cur_bid, cur_end, cur_k)
            nbid, nend, nk = self._partner(att, seq)
            nbr = self.track.branches[nbid]
            runs.append(nbr.edge_run(nend))
            if nbr.punctures:
                # entering at end1 -> first puncture; at end2 -> last
                j = 0 if nend == 1 else len(nbr.punctures) - 1
                return nbid, nend, nk, j, runs
            # crossing-free branch: pass straight through to its other end
            runs.append(nbr.edge_run(3 - nend))
            cur_bid, cur_end, cur_k = nbid, 3 - nend, nk
        raise ValueError("closed strand without circle crossings")

    def _walk_strands(self) -> None:
        # connections[(bid, end, k)] = (bid', end', k', puncture index, run)
        self.connections: dict[tuple[str, int, int], tuple] = {}
        for bid, b in sorted(self.track.branches.items()):
            if self.w[bid] == 0 or not b.punctures:
                continue
            for end in (1, 2):
                for k in range(self.w[bid]):
                    tbid, tend, tk, tj, runs = self._chain(bid, end, k)
                    if len(set(runs)) != 1:
                        raise ValueError(
                            f"expanded arc leaving {bid} spans multiple "
                            f"half-disks: {sorted(set((r.pants, r.tag) for r in runs))}")
                    self.connections[(bid, end, k)] = (tbid, tend, tk, tj, runs[0])
        # every port must be hit exactly twice across the involution
        for (bid, end, k), (tbid, tend, tk, tj, _run) in self.connections.items():
            back = self.connections.get((tbid, tend, tk))
            if back is None or back[:3] != (bid, end, k):
                raise AssertionError("switch chains are not an involution")

    # -- block orders -----------------------------------------------------

    def _solve_block_orders(self) -> None:
        dsu = _ParityDSU()

        # Constraint between two blocks joined by a bundle of parallel arcs
        # inside one half-disk: walk order at one foot reverses at the other
        # (the bundle is nested), with ``extra`` flipped when the strand
        # indexing runs against itself across the bundle.
        def constrain(block1, desc1, block2, desc2, extra: int) -> None:
            if not dsu.union(block1, block2,
                             1 ^ (1 if desc1 else 0) ^ (1 if desc2 else 0)
                             ^ extra):
                raise AssertionError("inconsistent strand ordering")

        for bid, b in sorted(self.track.branches.items()):
            if self.w[bid] < 2:
                continue
            punct = b.punctures
            for j in range(len(punct) - 1):
                run = b.itinerary[2 * j + 2]
                d1 = _WALK_DESCENDS[(run.pants, run.tag, punct[j].disk)]
                d2 = _WALK_DESCENDS[(run.pants, run.tag, punct[j + 1].disk)]
                constrain((bid, j), d1, (bid, j + 1), d2, 0)
        # composite arcs: group the strands leaving each port by the block
        # they land in; each family of two or more constrains the pair (each
        # family is seen from both of its ports; the doubled unions agree)
        for bid, b in sorted(self.track.branches.items()):
            if self.w[bid] == 0 or not b.punctures:
                continue
            for end in (1, 2):
                j_here = 0 if end == 1 else len(b.punctures) - 1
                fam: dict[tuple, list[tuple[int, int]]] = {}
                for k in range(self.w[bid]):
                    tbid, tend, tk, tj, run = self.connections[(bid, end, k)]
                    fam.setdefault((tbid, tend, tj, run), []).append((k, tk))
                for (tbid, tend, tj, run), pairs in fam.items():
                    if len(pairs) < 2:
                        continue
                    pairs.sort()
                    rising = pairs[1][1] > pairs[0][1]
                    here = b.punctures[j_here]
                    there = self.track.branches[tbid].punctures[tj]
                    d1 = _WALK_DESCENDS[(run.pants, run.tag, here.disk)]
                    d2 = _WALK_DESCENDS[(run.pants, run.tag, there.disk)]
                    constrain((bid, j_here), d1, (tbid, tj), d2,
                              0 if rising else 1)
        self.flip: dict[tuple[str, int], int] = {}
        for bid, b in sorted(self.track.branches.items()):
            if self.w[bid] == 0:
                continue
            for j in range(len(b.punctures)):
                self.flip[(bid, j)] = dsu.find((bid, j))[1]

    def _position(self, bid: str, j: int, k: int) -> tuple[int, int]:
        b = self.track.branches[bid]
        disk = b.punctures[j].disk
        base = self.block_base[(bid, j)]
        wb = self.w[bid]
        off = k if self.flip[(bid, j)] == 0 else wb - 1 - k
        return disk, base + off

    # -- arcs -------------------------------------------------------------

    def _emit(self) -> CurveDiagram:
        arcs: set[Arc] = set()
        for bid, b in sorted(self.track.branches.items()):
            punct = b.punctures
            if self.w[bid] == 0 or not punct:
                continue
            for j in range(len(punct) - 1):
                run = b.itinerary[2 * j + 2]
                for k in range(self.w[bid]):
                    arcs.add(Arc(run.pants, self._position(bid, j, k),
                                 self._position(bid, j + 1, k),
                                 run.tag).normalized())
            for end in (1, 2):
                j_here = 0 if end == 1 else len(punct) - 1
                for k in range(self.w[bid]):
                    tbid, tend, tk, tj, run = self.connections[(bid, end, k)]
                    arcs.add(Arc(run.pants, self._position(bid, j_here, k),
                                 self._position(tbid, tj, tk),
                                 run.tag).normalized())
        diagram = CurveDiagram(self.counts, arcs)
        if len(diagram.arcs) != sum(self.counts.values()):
            raise ValueError("expansion lost arcs; track is inconsistent")
        report = validate_diagram(diagram)
        if not report.ok:
            raise ValueError(
                "expansion is not embedded: " + "; ".join(report.violations))
        return diagram


def expand(track: TrackSpec, weights: Mapping[str, int]) -> CurveDiagram:
    """The multicurve carried by ``track`` with the given branch weights."""
    return _Expander(track, weights).run()


def carried_components(track: TrackSpec, weights: Mapping[str, int]) -> int:
    """Number of components of the carried multicurve."""
    return len(trace_components(expand(track, weights)))
