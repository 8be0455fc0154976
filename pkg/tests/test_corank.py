import pytest

from poissonlab.corank import (PairSpec, coisotropy_suite, hamiltonian_report,
                               sheet_constancy_probe)
from poissonlab.exact import ExactMatrix
from poissonlab.lie import classical, nilpotent_orbits, sample_regular, semisimple_representative
from poissonlab.partitions import Partition


def test_parse_pairs():
    p = PairSpec.parse("gl:3/gl:2")
    assert p.G.identifier == "gl:3" and p.H.identifier == "gl:2" and p.strong_gelfand
    assert not PairSpec.parse("sl:3/sl:2").strong_gelfand
    assert PairSpec.parse("so:5/so:4").identifier == "so:5/so:4"
    for bad in ("gl:3/gl:1", "gl:3/so:2", "gl:3"):
        with pytest.raises(ValueError):
            PairSpec.parse(bad)


def test_h_basis_is_closed():
    p = PairSpec.parse("so:4/so:3")
    hb = p.h_basis()
    for a in hb:
        for b in hb:
            c = a.commutator(b)
            assert p.G.contains(c)


def test_gl2_gl1_regular(rng):
    p = PairSpec.parse("gl:2/gl:1")
    rep = hamiltonian_report(p, ExactMatrix.diag([1, 0]), rng)
    assert rep.dim_orbit == 2 and rep.dim_image == 1 and rep.corank == 0
    assert rep.routes_agree


def test_gl3_gl2_example(rng):
    p = PairSpec.parse("gl:3/gl:2")
    rep = hamiltonian_report(p, ExactMatrix.diag([2, 2, 1]), rng)
    assert rep.corank == 0 and rep.coisotropic and rep.routes_agree
    assert 2 * rep.b_of_image + rep.corank == rep.dim_orbit


def test_sl3_sl2_example_computed_values(rng):
    # the computed generic data; the relation 2 b + corank = dim Gx holds exactly
    p = PairSpec.parse("sl:3/sl:2")
    rep = hamiltonian_report(p, ExactMatrix.diag([1, 1, -2]), rng)
    assert rep.dim_orbit == 4
    assert (rep.dim_image, rep.max_image_orbit_dim, rep.defect) == (3, 2, 1)
    assert rep.b_of_image == 2 and rep.corank == 0
    assert not rep.restricted_route_available and rep.routes_agree


def test_report_identities(rng):
    for ident in ("gl:3/gl:2", "so:4/so:3", "sl:3/sl:2"):
        p = PairSpec.parse(ident)
        x = sample_regular(p.G, rng)
        rep = hamiltonian_report(p, x, rng, budget=5)
        assert rep.max_image_orbit_dim == rep.dim_image - rep.defect
        assert 2 * rep.b_of_image + rep.corank == rep.dim_orbit
        assert rep.defect >= 0 and rep.corank >= 0


def test_coisotropy_gl3(rng):
    p = PairSpec.parse("gl:3/gl:2")
    orbits = [(o.label, o.representative) for o in nilpotent_orbits(p.G)]
    orbits.append(("point", ExactMatrix.zeros(3)))
    rep = coisotropy_suite(p, orbits, rng, budget=8)
    assert rep.passed and len(rep.evidence) == 4


def test_coisotropy_so4(rng):
    p = PairSpec.parse("so:4/so:3")
    orbits = [(str(v), semisimple_representative(p.G, v)) for v in ([1, 0], [1, 2], [1, 1])]
    rep = coisotropy_suite(p, orbits, rng, budget=8)
    assert rep.passed
    with pytest.raises(ValueError):
        coisotropy_suite(PairSpec.parse("sl:3/sl:2"), [], rng)


def test_sheet_probe(rng):
    p = PairSpec.parse("gl:3/gl:2")
    probe = sheet_constancy_probe(p, (2, 1), [ExactMatrix.diag([1, 1, 0]), ExactMatrix.diag([3, 3, -1])],
                                  rng, budget=8)
    assert probe.passed and probe.sample_coranks == [probe.nilpotent_corank] * 2
    probe = sheet_constancy_probe(p, (3,), [ExactMatrix.diag([1, 2, 3])], rng, budget=8)
    assert probe.passed
    assert sheet_constancy_probe(p, Partition((1, 1, 1)), [], rng).passed
    with pytest.raises(ValueError):
        sheet_constancy_probe(p, (3,), [ExactMatrix.diag([1, 1, 0])], rng)
