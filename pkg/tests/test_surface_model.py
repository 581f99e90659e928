"""Public data model: parsing, validation, regions, labels, components."""

from __future__ import annotations

import random

import pytest
from hypothesis import given, settings, strategies as st

from suturekit.surface_model import (
    Arc,
    CurveDiagram,
    CurveFormatError,
    arc_counts,
    assign_transverse_orientation,
    complement_regions,
    dump_curve,
    is_separating,
    parse_curve,
    trace_components,
    validate_diagram,
)

import oracles


# ---------------------------------------------------------------------------
# parsing and serialization


def test_parse_hexagon():
    d = oracles.hexagon()
    assert d.counts == {1: 2, 2: 2, 3: 2}
    assert len(d.arcs) == 6
    assert validate_diagram(d).ok


def test_dump_parse_roundtrip():
    d = oracles.hexagon()
    assert parse_curve(dump_curve(d)) == d
    with_comment = dump_curve(d, comment="baseline suture")
    assert with_comment.startswith("# baseline suture\n")
    assert parse_curve(with_comment) == d


def test_parse_errors_carry_line_numbers():
    cases = [
        ("disks 4\n", "1"),
        ("disks 3\ncounts 1 2\n", "2"),
        ("disks 3\ncounts 0 0 0\narc A 1:0 2:0 sideways\n", "3"),
        ("disks 3\ncounts 1 1 0\narc C 1:0 2:0 above\n", "3"),
        ("disks 3\ncounts 1 1 0\narc A 1:zero 2:0 above\n", "3"),
        ("disks 3\ncounts 1 1 0\nblorp\n", "3"),
    ]
    for text, lineno in cases:
        with pytest.raises(CurveFormatError) as exc:
            parse_curve(text, source="f.curve")
        assert str(exc.value).startswith(f"f.curve:{lineno}:")


def test_loop_directive():
    d = parse_curve("disks 3\ncounts 0 0 0\nloop 1 2\n")
    assert d.loops == {1: 2}
    assert parse_curve(dump_curve(d)) == d


# ---------------------------------------------------------------------------
# validation


def test_validation_messages():
    # position 1:1 used twice in pants A, 2:1 never
    bad = CurveDiagram(
        {1: 2, 2: 2, 3: 0},
        [Arc("A", (1, 0), (1, 1), "above"),
         Arc("A", (1, 1), (2, 0), "above"),
         Arc("A", (2, 1), (2, 0), "above"),
         Arc("B", (1, 0), (1, 1), "above"),
         Arc("B", (2, 0), (2, 1), "above")])
    report = validate_diagram(bad)
    assert not report.ok
    assert any("position reuse" in v for v in report.violations)
    assert any("unused" in v for v in report.violations)


def test_validation_rejects_bad_counts_and_fields():
    assert not validate_diagram(CurveDiagram({1: -1, 2: 0, 3: 0}, [])).ok
    weird = CurveDiagram({1: 2, 2: 0, 3: 0},
                         [Arc("A", (1, 0), (1, 1), "diagonal"),
                          Arc("B", (1, 0), (1, 1), "above")])
    report = validate_diagram(weird)
    assert not report.ok


def test_empty_diagram_is_valid_and_separating():
    empty = CurveDiagram({1: 0, 2: 0, 3: 0}, [])
    assert validate_diagram(empty).ok
    assert is_separating(empty)
    dec = complement_regions(empty)
    assert dec.count == 1 and dec.total_euler == -2
    assert dec.regions[0].genus == 2


# ---------------------------------------------------------------------------
# the baseline suture


def test_hexagon_separates_into_two_tori():
    d = oracles.hexagon()
    assert is_separating(d)
    assert oracles.region_shape(d) == [(-1, 1, 1), (-1, 1, 1)]
    dec = complement_regions(d)
    assert dec.two_colored and dec.total_euler == -2
    assert sorted(r.sign for r in dec.regions) == ["+", "-"]


def test_hexagon_labels_alternate():
    labels = assign_transverse_orientation(oracles.hexagon())
    assert labels[(1, 0)] == "+"
    for d in (1, 2, 3):
        assert {labels[(d, 0)], labels[(d, 1)]} == {"+", "-"}


def test_hexagon_traces_one_component():
    comps = trace_components(oracles.hexagon())
    assert len(comps) == 1
    assert len(comps[0]) == 6
    # the itinerary alternates pants
    pants = [tok[2] for tok in comps[0]]
    assert pants == ["A", "B"] * 3


def test_handle_core_is_not_separating():
    core = CurveDiagram({1: 2, 2: 0, 3: 0},
                        [Arc("A", (1, 0), (1, 1), "above"),
                         Arc("B", (1, 0), (1, 1), "above")])
    assert validate_diagram(core).ok
    assert not is_separating(core)
    with pytest.raises(ValueError):
        assign_transverse_orientation(core)


def test_arc_counts_table():
    table = arc_counts(oracles.hexagon())
    assert table == {
        ("A", (1, 2), "above"): 1,
        ("A", (2, 3), "above"): 1,
        ("A", (1, 3), "above"): 1,
        ("B", (1, 2), "above"): 1,
        ("B", (2, 3), "above"): 1,
        ("B", (1, 3), "above"): 1,
    }


def test_loop_components_and_regions():
    one = CurveDiagram({1: 0, 2: 0, 3: 0}, [], loops={1: 1})
    assert validate_diagram(one).ok
    assert trace_components(one) == ((("loop", 1, 1),),)
    assert not is_separating(one)

    two = CurveDiagram({1: 0, 2: 0, 3: 0}, [], loops={1: 2})
    assert is_separating(two)
    assert oracles.region_shape(two) == [(-2, 2, 1), (0, 2, 0)]


# ---------------------------------------------------------------------------
# properties on random diagrams


@given(seed=st.integers(0, 10**9))
@settings(max_examples=60, deadline=None)
def test_random_valid_diagrams_have_consistent_topology(seed):
    rng = random.Random(seed)
    d = oracles.random_valid_diagram(rng)
    dec = complement_regions(d)
    assert dec.total_euler == -2
    assert all(r.genus >= 0 and r.boundaries >= 1 for r in dec.regions)

    comps = trace_components(d)
    crossing_tokens = [tok for comp in comps for tok in comp
                       if tok[0] != "loop"]
    assert sorted((t[0], t[1]) for t in crossing_tokens) == \
        sorted((disk, i) for disk in (1, 2, 3)
               for i in range(d.counts[disk]))

    if is_separating(d):
        labels = assign_transverse_orientation(d)
        for disk in (1, 2, 3):
            n = d.counts[disk]
            for i in range(n):
                assert labels[(disk, i)] != labels[(disk, (i + 1) % n)]
        assert all(n % 2 == 0 for n in d.counts.values())
    else:
        with pytest.raises(ValueError):
            assign_transverse_orientation(d)


@given(seed=st.integers(0, 10**9), data=st.data())
@settings(max_examples=40, deadline=None)
def test_relabeling_a_circle_changes_nothing(seed, data):
    rng = random.Random(seed)
    d = oracles.random_valid_diagram(rng)
    disk = data.draw(st.sampled_from([1, 2, 3]))
    n = d.counts[disk]
    if n == 0:
        return
    shift = data.draw(st.integers(1, n))
    rotated = oracles.rotate_circle(d, disk, shift)
    assert validate_diagram(rotated).ok
    assert oracles.region_shape(rotated) == oracles.region_shape(d)
    assert is_separating(rotated) == is_separating(d)
    assert len(trace_components(rotated)) == len(trace_components(d))


@given(seed=st.integers(0, 10**9))
@settings(max_examples=40, deadline=None)
def test_validity_agrees_with_semicircle_geometry(seed):
    """The combinatorial check and the exact-geometry oracle agree on
    whether a random pairing embeds."""
    from suturekit.surface_model import arrangement_of

    rng = random.Random(seed)
    d = oracles.random_matching_diagram(rng)
    report = validate_diagram(d)
    messages = " ".join(report.violations)
    if "not contiguous" in messages or "reuse" in messages:
        return  # geometry is undefined before positions can be placed
    arr = arrangement_of(d)
    same, _cross = oracles.geometric_crossings(arr)
    assert report.ok == (not same)
