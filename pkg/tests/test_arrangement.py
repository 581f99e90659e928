"""Battery for the planar cell-complex engine underneath the public API."""

from __future__ import annotations

import pytest

from suturekit.arrangement import Arrangement, ArrangementError, Chord

import oracles


def _arr(orders, spec, loops=None):
    chords = [Chord(cid=i, pants=p, end1=e1, end2=e2, tag=t, layer=layer)
              for i, (p, e1, e2, t, layer) in enumerate(spec)]
    return Arrangement(orders, chords, loops)


EMPTY_ORDERS = {1: [], 2: [], 3: []}


def test_empty_complex():
    """The bare surface: three circles, no curve.  Twelve cut vertices, the
    six circle halves plus six axis segments doubled... the frozen counts."""
    arr = Arrangement(EMPTY_ORDERS, [])
    assert arr.ok
    v, e, f = arr.complex_counts()
    assert (v, e, f) == (12, 18, 4)
    assert v - e + f == -2
    assert arr.euler_total() == -2
    assert [(r.euler, r.boundaries, r.genus) for r in arr.regions] == [(-2, 1, 2)]
    assert arr.two_colorable
    assert arr.region_color(0) == 0
    assert arr.position_labels() == {}


def test_hexagon_walks_and_intervals():
    arr = _arr(
        {1: [0, 1], 2: [0, 1], 3: [0, 1]},
        [("A", (1, 0), (2, 1), "above", 0),
         ("A", (2, 0), (3, 0), "above", 0),
         ("A", (3, 1), (1, 1), "above", 0),
         ("B", (2, 1), (3, 1), "above", 0),
         ("B", (1, 1), (2, 0), "above", 0),
         ("B", (3, 0), (1, 0), "above", 0)])
    assert arr.ok
    assert arr.walk("A", "above") == [(1, 1), (1, 0), (2, 1), (2, 0), (3, 0), (3, 1)]
    assert arr.walk("B", "above") == [(1, 0), (1, 1), (2, 0), (2, 1), (3, 1), (3, 0)]
    assert arr.walk("A", "below") == []
    # the (3,1)-chords contain their siblings in both charts
    assert arr.interval(0) == (1, 2)
    assert arr.interval(1) == (3, 4)
    assert arr.interval(2) == (0, 5)
    assert arr.interval(3) == (3, 4)
    assert arr.interval(4) == (1, 2)
    assert arr.interval(5) == (0, 5)
    assert not arr.crossings


def test_hexagon_regions_and_labels():
    arr = _arr(
        {1: [0, 1], 2: [0, 1], 3: [0, 1]},
        [("A", (1, 0), (2, 1), "above", 0),
         ("A", (2, 0), (3, 0), "above", 0),
         ("A", (3, 1), (1, 1), "above", 0),
         ("B", (2, 1), (3, 1), "above", 0),
         ("B", (1, 1), (2, 0), "above", 0),
         ("B", (3, 0), (1, 0), "above", 0)])
    assert arr.ok and arr.two_colorable
    assert sorted((r.euler, r.boundaries, r.genus) for r in arr.regions) == \
        [(-1, 1, 1), (-1, 1, 1)]
    labels = arr.position_labels()
    assert labels[(1, 0)] == 0
    for d in (1, 2, 3):
        assert labels[(d, 0)] != labels[(d, 1)]
    sides = arr.strand_sides()
    assert set(sides.values()) <= {"AB", "BA"}
    # a coherent traversal: consecutive crossings alternate direction signs
    # the same way the labels do
    for d in (1, 2, 3):
        assert (sides[(d, 0)] == sides[(d, 1)]) is False


def test_loops_on_a_bare_circle():
    one = Arrangement(EMPTY_ORDERS, [], loops={1: 1})
    assert one.ok
    assert not one.two_colorable
    assert sorted((r.euler, r.boundaries, r.genus) for r in one.regions) == \
        [(-2, 2, 1)]
    with pytest.raises(ArrangementError):
        one.position_labels()

    two = Arrangement(EMPTY_ORDERS, [], loops={1: 2})
    assert two.ok
    assert two.two_colorable
    assert sorted((r.euler, r.boundaries, r.genus) for r in two.regions) == \
        [(-2, 2, 1), (0, 2, 0)]


def test_loop_rejections():
    bad = Arrangement({1: [0, 1], 2: [], 3: []},
                      [Chord(0, "A", (1, 0), (1, 1), "above", 0),
                       Chord(1, "B", (1, 0), (1, 1), "above", 0)],
                      loops={1: 1})
    assert not bad.ok
    assert any("carries crossings" in v for v in bad.violations)


def test_overlay_crossings_match_geometry():
    """Two transversal handle cores: one crossing per half-disk, and the
    complex still closes up to Euler characteristic -2."""
    arr = _arr(
        {1: ["a", "x", "b", "y"], 2: [], 3: []},
        [("A", (1, "a"), (1, "b"), "above", 0),
         ("B", (1, "a"), (1, "b"), "above", 0),
         ("A", (1, "x"), (1, "y"), "above", 1),
         ("B", (1, "x"), (1, "y"), "above", 1)])
    assert arr.ok
    assert len(arr.crossings) == 2
    same, cross = oracles.geometric_crossings(arr)
    assert same == []
    assert sorted(cross) == sorted((min(c.run, c.riser), max(c.run, c.riser))
                                   for c in arr.crossings)
    assert oracles.crossing_positions_ok(arr)
    v, e, f = arr.complex_counts()
    assert v - e + f == -2
    assert arr.two_colorable  # doubled core is null-homologous mod 2


def test_crossings_are_ordered_along_a_chord():
    """One wide chord over three nested cores: up the west riser through the
    two shallower runs, then the deep riser met along the run."""
    orders = {1: ["a", "x1", "x2", "x3", "b", "y3", "y2", "y1"], 2: [], 3: []}
    spec = [("A", (1, "a"), (1, "b"), "above", 0),
            ("B", (1, "a"), (1, "b"), "above", 0)]
    for i in (1, 2, 3):
        spec.append(("A", (1, f"x{i}"), (1, f"y{i}"), "above", 1))
        spec.append(("B", (1, f"x{i}"), (1, f"y{i}"), "above", 1))
    arr = _arr(orders, spec)
    assert arr.ok
    assert len(arr.crossings) == 6
    along = arr.crossings_along(0)
    partners = [c.riser if c.run == 0 else c.run for c in along]
    assert partners == [6, 4, 2]  # x3-core, x2-core, then x1-core on the run
    assert oracles.crossing_positions_ok(arr)
    v, e, f = arr.complex_counts()
    assert v - e + f == -2


def test_same_layer_interleave_is_a_violation():
    arr = _arr(
        {1: ["a", "x", "b", "y"], 2: [], 3: []},
        [("A", (1, "a"), (1, "b"), "above", 0),
         ("B", (1, "a"), (1, "b"), "above", 0),
         ("A", (1, "x"), (1, "y"), "above", 0),
         ("B", (1, "x"), (1, "y"), "above", 0)])
    assert not arr.ok
    assert any("cross in pants" in v for v in arr.violations)


def test_tag_block_violation():
    # pants-A tags alternating above/below around one circle cannot be drawn
    arr = _arr(
        {1: [0, 1, 2, 3], 2: [], 3: []},
        [("A", (1, 0), (1, 2), "above", 0),
         ("A", (1, 1), (1, 3), "below", 0),
         ("B", (1, 0), (1, 3), "above", 0),
         ("B", (1, 1), (1, 2), "above", 0)])
    assert not arr.ok
    assert any("not contiguous" in v for v in arr.violations)


def test_endpoint_violations():
    arr = _arr({1: [0], 2: [0], 3: []},
               [("A", (1, 0), (2, 0), "above", 0),
                ("B", (1, 0), (2, 5), "above", 0)])
    assert not arr.ok
    assert any("not a position" in v for v in arr.violations)
    assert any("unused" in v for v in arr.violations)

    reuse = _arr({1: [0], 2: [0], 3: []},
                 [("A", (1, 0), (2, 0), "above", 0),
                  ("A", (1, 0), (2, 0), "above", 0),
                  ("B", (1, 0), (2, 0), "above", 0)])
    assert not reuse.ok
    assert any("position reuse" in v for v in reuse.violations)
