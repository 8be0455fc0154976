import time

import pytest

from poissonlab.exact import ExactMatrix, Subspace
from poissonlab.lie import (centralizer, classical, nilpotent_jordan_type, nilpotent_orbits,
                            nilpotent_representative, sample_regular, semisimple_representative)
from poissonlab.mf_gt import (GREEN, RED, SVG_COLOURS, WHITE, SearchExhausted, Unsupported,
                              associated_cone_partition, closed_form_pattern,
                              complete_family_indices, gt_completeness_verdict, jordan_chains,
                              mf_complete_shift_search, paint_pattern, s_values,
                              strongly_nilpotent, white_red_green_checks)
from poissonlab.partitions import Partition, partitions

FIGURES = {
    (3, 2, 1): ["WWWRRR", "WRRGG", "RGGG", "GGG", "GG", "G"],
    (4, 1): ["WRRRR", "RGGG", "GGG", "GG", "G"],
    (2, 2, 2, 1): ["WWWWWRR", "WWWRRG", "WRRGG", "RGGG", "GGG", "GG", "G"],
}


@pytest.mark.parametrize("r", list(FIGURES))
def test_pattern_figures(r):
    pat = paint_pattern(r)
    assert pat.to_ascii().splitlines() == FIGURES[r]
    assert pat == closed_form_pattern(r)


def test_figure_counts():
    assert paint_pattern((3, 2, 1)).count(GREEN) == 11
    assert paint_pattern((3, 2, 1)).count(WHITE) == 4
    assert paint_pattern((4, 1)).count(GREEN) == 9
    p = paint_pattern((2, 2, 2, 1))
    assert (p.count(GREEN), p.count(RED)) == (12, 7)


def test_pattern_counts_exhaustive():
    for n in range(1, 13):
        for r in partitions(n):
            pat = paint_pattern(r)
            assert pat.total == n * (n + 1) // 2
            assert pat.count(RED) == n
            assert pat.count(GREEN) == r.orbit_dim() // 2
            assert pat == closed_form_pattern(r)
            assert len(complete_family_indices(r)) == r.orbit_dim() // 2


def test_cell_generator_and_renderings():
    pat = paint_pattern((3, 2, 1))
    assert pat.cell_generator(0, 1) == (6, 6)
    assert pat.cell_generator(2, 1) == (6, 4)
    svg = pat.to_svg()
    assert svg.count("<rect") == 21
    first = svg.index(SVG_COLOURS[WHITE])
    assert first < svg.index(SVG_COLOURS[RED]) < svg.index(SVG_COLOURS[GREEN])
    js = pat.to_json()
    assert js["cells"]["0,4"] == RED and len(js["cells"]) == 21


def test_s_values():
    assert s_values((3, 2, 1)) == [1, 1, 1, 2, 2, 3]
    assert s_values((5,)) == [1] * 5
    assert s_values((1, 1, 1, 1)) == [1, 2, 3, 4]


def test_literal_index_set_differs():
    r = Partition((3, 2, 1))
    lit = complete_family_indices(r, "literal")
    assert len(lit) == sum(s - 1 for s in r.s_values()) == 4
    assert len(complete_family_indices(r)) == 11
    with pytest.raises(ValueError):
        complete_family_indices(r, "other")


def test_jordan_chains(rng):
    N = nilpotent_representative(classical("gl", 5), (3, 2))
    chains = jordan_chains(N, rng)
    assert sorted(len(c) for c in chains) == [2, 3]
    vecs = [v for c in chains for v in c]
    assert Subspace(5, vecs).dim == 5


def test_strong_21():
    cert = strongly_nilpotent((2, 1))
    e = cert.e
    # e x1 = 0, e x2 = x1 + x3, e x3 = 0 up to the chain-compatible choice; check the shape
    assert nilpotent_jordan_type(e) == Partition((2, 1))
    assert cert.dim_span == 5 and cert.dim_intersection_with_centralizer == 3
    assert cert.corner_partitions[1] == Partition((2,))


def test_strong_regular_and_zero():
    cert = strongly_nilpotent((4,))
    g = classical("gl", 4)
    assert cert.dim_span == g.magic_number
    cert = strongly_nilpotent((1, 1))
    assert cert.e.is_zero() and cert.dim_span == 2 == cert.dim_intersection_with_centralizer


@pytest.mark.parametrize("n", range(1, 6))
def test_strong_all_partitions(n):
    for r in partitions(n):
        cert = strongly_nilpotent(r)
        assert cert.dim_span == n + r.orbit_dim() // 2
        assert cert.dim_intersection_with_centralizer == n


def test_gt_verdict_examples(rng):
    g = classical("gl", 3)
    v = gt_completeness_verdict(g, ExactMatrix.zeros(3), rng)
    assert v.complete and v.orbit_dim == 0
    v = gt_completeness_verdict(g, strongly_nilpotent((2, 1)).e, rng)
    assert v.complete and v.witness_sample == 0 and v.best_q == 2
    s = classical("so", 5)
    v = gt_completeness_verdict(s, sample_regular(s, rng), rng)
    assert v.complete
    with pytest.raises(Unsupported):
        gt_completeness_verdict(classical("sl", 3), ExactMatrix.zeros(3), rng)


def test_nilpotent_reduction_gl3(rng):
    g = classical("gl", 3)
    for vals in ([1, 1, 0], [2, 0, 0], [1, 2, 3]):
        x = semisimple_representative(g, vals)
        r = associated_cone_partition(g, x)
        assert gt_completeness_verdict(g, x, rng).complete
        assert gt_completeness_verdict(g, nilpotent_representative(g, r), rng).complete


def test_associated_cone():
    g = classical("gl", 3)
    assert associated_cone_partition(g, ExactMatrix.diag([1, 1, 0])) == Partition((2, 1))
    assert associated_cone_partition(g, ExactMatrix.diag([1, 2, 3])) == Partition((3,))
    g4 = classical("gl", 4)
    assert associated_cone_partition(g4, nilpotent_representative(g4, (3, 1))) == Partition((3, 1))
    with pytest.raises(Unsupported):
        associated_cone_partition(g, ExactMatrix([[1, 1, 0], [0, 1, 0], [0, 0, 0]]))
    with pytest.raises(Unsupported):
        associated_cone_partition(classical("gl", 2), ExactMatrix([[0, 2], [1, 0]]))


def test_shift_search(rng):
    rep = mf_complete_shift_search(classical("gl", 2), [(2,), (1, 1)], rng)
    assert rep.found and [e["dim_span"] for e in rep.evidence] == [3, 2]
    rep = mf_complete_shift_search(classical("gl", 4), list(partitions(4)), rng)
    assert rep.found and len(rep.evidence) == 5
    rep = mf_complete_shift_search(classical("gl", 3), [ExactMatrix.zeros(3)], rng)
    assert rep.found and rep.attempts == 1


def test_shift_search_exhausted_on_non_complete_orbit(rng):
    # with zero budget nothing is tried
    with pytest.raises(SearchExhausted):
        mf_complete_shift_search(classical("gl", 2), [(2,)], rng, budget=0)


@pytest.mark.parametrize("r", [(3, 2, 1), (4,), (1, 1, 1), (2, 2), (3, 1, 1)])
def test_colour_checks(r, rng):
    rep = white_red_green_checks(r, rng, conjugates=10)
    assert rep.passed
    if r == (3, 2, 1):
        assert (rep.white, rep.red, rep.green) == (4, 6, 11)
    if r == (1, 1, 1):
        assert rep.green == 0
