"""Acceptance oracles: one PASS/FAIL line per criterion, with its wall time."""

import random
import time

import pytest

from poissonlab.cli import main
from poissonlab.corank import PairSpec, coisotropy_suite, hamiltonian_report
from poissonlab.exact import ExactMatrix
from poissonlab.invariants import (check_poisson_commutative, differential_span, gt_subalgebra,
                                   mf_subalgebra, vinberg_limit_check)
from poissonlab.lie import (centralizer, classical, index, nilpotent_orbits, random_element,
                            sample_regular, semisimple_representative, skew_form,
                            subspace_elements)
from poissonlab.mf_gt import (GREEN, RED, closed_form_pattern, gt_completeness_verdict,
                              paint_pattern, strongly_nilpotent)
from poissonlab.partitions import partitions
from poissonlab.pencils import (SkewPencil, check_jk_properties, kernel_sum_L,
                                mf_completeness_verdict)

SEED = "acceptance"


def stream(label):
    return random.Random(f"{SEED}/{label}")


def emit(request, number, text, ok, elapsed, detail=""):
    line = f"{'PASS' if ok else 'FAIL'} criterion {number}: {text} [{elapsed:.1f}s]"
    if detail:
        line += f" -- {detail}"
    reporter = request.config.pluginmanager.getplugin("terminalreporter")
    if reporter is not None:
        reporter.write_line(line)
    print(line)


def criterion(request, number, text, limit, body):
    start = time.perf_counter()
    try:
        ok, detail = body()
    except Exception as exc:                      # report, then re-raise for pytest
        emit(request, number, text, False, time.perf_counter() - start, f"error: {exc!r}")
        raise
    elapsed = time.perf_counter() - start
    if elapsed > limit:
        ok, detail = False, f"{detail}; over the {limit}s time limit".lstrip("; ")
    emit(request, number, text, ok, elapsed, detail)
    assert ok, detail


class Capture:
    def __init__(self):
        self.parts = []

    def write(self, s):
        self.parts.append(s)

    def getvalue(self):
        return "".join(self.parts)


FIGURES = {
    "3,2,1": ["WWWRRR", "WRRGG", "RGGG", "GGG", "GG", "G"],
    "4,1": ["WRRRR", "RGGG", "GGG", "GG", "G"],
    "2,2,2,1": ["WWWWWRR", "WWWRRG", "WRRGG", "RGGG", "GGG", "GG", "G"],
}


def test_criterion_01_pattern_figures(request):
    def body():
        bad = []
        for part, rows in FIGURES.items():
            out = Capture()
            code = main(["gt", "pattern", "--partition", part, "--format", "ascii"], out=out)
            if code != 0 or out.getvalue().split() != rows:
                bad.append(part)
        return not bad, f"mismatching figures: {bad}" if bad else "3 figures cell-for-cell"
    criterion(request, 1, "pattern figures for (3,2,1), (4,1), (2,2,2,1)", 1.0, body)


def test_criterion_02_pattern_counts(request):
    def body():
        count = 0
        for n in range(1, 13):
            for r in partitions(n):
                pat = paint_pattern(r)
                if not (pat.total == n * (n + 1) // 2 and pat.count(RED) == n
                        and pat.count(GREEN) == r.orbit_dim() // 2 and pat == closed_form_pattern(r)):
                    return False, f"partition {r}"
                count += 1
        return True, f"{count} partitions of n <= 12"
    criterion(request, 2, "pattern counts and recipe = closed form, all n <= 12", 10.0, body)


def test_criterion_03_strong_nilpotent(request):
    def body():
        count = 0
        for n in range(1, 7):
            for r in partitions(n):
                cert = strongly_nilpotent(r)          # raises if any invariant fails
                if cert.dim_span != n + r.orbit_dim() // 2 or cert.dim_intersection_with_centralizer != n:
                    return False, f"partition {r}"
                count += 1
        return True, f"{count} certificates"
    criterion(request, 3, "strongly nilpotent certificates for all partitions of n <= 6", 60.0, body)


def _so_orbit_samples(g, rng, count=10):
    out = []
    nil = [o.representative for o in nilpotent_orbits(g)]
    m = g.n // 2
    k = 0
    while len(out) < count:
        kind = k % 3
        if kind == 0:
            vals = [rng.randint(0, 2) for _ in range(m)]
            out.append(("semisimple", semisimple_representative(g, vals)))
        elif kind == 1:
            out.append(("regular", sample_regular(g, rng)))
        else:
            out.append(("nilpotent", nil[(k // 3) % len(nil)]))
        k += 1
    return out


def test_criterion_04_gt_completeness(request):
    def body():
        rng = stream("c4")
        checked = 0
        for n in range(1, 6):
            g = classical("gl", n)
            for o in nilpotent_orbits(g):
                if not gt_completeness_verdict(g, o.representative, rng, budget=20).complete:
                    return False, f"gl:{n} orbit {o.label}"
                checked += 1
        for n in range(2, 6):
            g = classical("so", n)
            for kind, x in _so_orbit_samples(g, rng):
                if not gt_completeness_verdict(g, x, rng, budget=20).complete:
                    return False, f"so:{n} {kind} orbit"
                checked += 1
        return True, f"{checked} orbits witnessed"
    criterion(request, 4, "chain subalgebra complete on gl (n <= 5) and so (n <= 5) orbits", 300.0, body)


def _mf_orbits(g, rng):
    out = [("regular", sample_regular(g, rng)), ("regular", sample_regular(g, rng))]
    if g.family == "gl":
        n = g.n
        out.append(("semisimple", semisimple_representative(g, [1] * (n - 1) + [0])))
        if n >= 4:
            out.append(("semisimple", semisimple_representative(g, [2, 2, -1, -1])))
        out.append(("point", ExactMatrix.zeros(n)))
    else:
        m = g.n // 2
        out.append(("semisimple", semisimple_representative(g, [1] + [0] * (m - 1))))
        if m >= 2:
            out.append(("semisimple", semisimple_representative(g, [1] * m)))
    return out


def test_criterion_05_mf_completeness(request):
    def body():
        rng = stream("c5")
        checked = 0
        for fam, n in (("gl", 2), ("gl", 3), ("gl", 4), ("so", 3), ("so", 4)):
            g = classical(fam, n)
            orbits = _mf_orbits(g, rng)
            for _ in range(5):
                a = sample_regular(g, rng)
                for kind, x in orbits:
                    if not mf_completeness_verdict(g, a, x, rng, budget=20).complete:
                        return False, f"{g.identifier} {kind} orbit"
                    checked += 1
        return True, f"{checked} (a, orbit) verdicts"
    criterion(request, 5, "shift subalgebras complete on regular and semisimple orbits", 300.0, body)


def test_criterion_06_duality(request):
    def body():
        rng = stream("c6")
        for k in range(25):
            g = classical("gl", 3 if k % 2 == 0 else 4)
            x, a = random_element(g, rng), random_element(g, rng)
            if differential_span(mf_subalgebra(g, a), x) != differential_span(mf_subalgebra(g, x), a):
                return False, f"pair {k}"
        return True, "25 pairs"
    criterion(request, 6, "d_x F_a = d_a F_x exactly", 60.0, body)


def _pencils(rng):
    """100 pencils from skew forms of gl, sl, so, sp (dim <= 16), some through singular members."""
    algs = [classical(*s) for s in (("gl", 2), ("gl", 3), ("gl", 4), ("sl", 3), ("sl", 4),
                                    ("so", 4), ("so", 5), ("sp", 4))]
    for k in range(100):
        g = algs[k % len(algs)]
        x = random_element(g, rng, 6)
        if k % 4 == 3 and g.family in ("gl", "sl"):
            vals = [1] * (g.n - 1) + [1 - g.n if g.family == "sl" else 0]
            y = semisimple_representative(g, vals)
        else:
            y = random_element(g, rng, 6)
        yield g.identifier, SkewPencil(skew_form(g, x), skew_form(g, y))


def test_criterion_07_jordan_kronecker(request):
    def body():
        rng = stream("c7")
        ii_checked = singular = 0
        for ident, p in _pencils(rng):
            res = check_jk_properties(p, rng, members=5)
            if not res["i"] or not res["iii"] or res["ii"] is False:
                return False, f"{ident}: {res}"
            ii_checked += res["ii"] is not None
            singular += res["singular_checked"]
        sl2 = classical("sl", 2)
        e, h, f = sl2.basis
        L = kernel_sum_L(SkewPencil(skew_form(sl2, e), skew_form(sl2, f)))
        ok = L.dim == 2 and L.contains(sl2.coords(e)) and L.contains(sl2.coords(f))
        return ok, (f"100 pencils, (ii) on {ii_checked}, {singular} singular members bounded; "
                    f"sl2 L dim {L.dim}")
    criterion(request, 7, "kernel-sum properties on 100 pencils", 120.0, body)


def test_criterion_08_commutativity(request):
    def body():
        rng = stream("c8")
        algebras = []
        for n in (3, 4):
            g = classical("gl", n)
            algebras += [mf_subalgebra(g, sample_regular(g, rng)) for _ in range(3)]
        algebras += [gt_subalgebra(classical("gl", 4)), gt_subalgebra(classical("so", 5))]
        for A in algebras:
            rep = check_poisson_commutative(A, rng, points=100)
            if not rep.passed:
                return False, f"{A.label}: {rep.nonzero[:1]}"
        return True, f"{len(algebras)} subalgebras x 100 points"
    criterion(request, 8, "all generator brackets vanish exactly", 120.0, body)


def test_criterion_09_elashvili(request):
    def body():
        count = 0
        for fam, sizes in (("gl", range(1, 7)), ("so", range(3, 8))):
            for n in sizes:
                g = classical(fam, n)
                for o in nilpotent_orbits(g):
                    cert = index(g, subspace_elements(g, centralizer(g, o.representative)),
                                 stream(f"c9/{g.identifier}/{o.label}"), trials=5, check=False)
                    if cert.value != g.rank_l or cert.agreeing != cert.trials:
                        return False, f"{g.identifier} orbit {o.label}: index {cert.value}"
                    count += 1
        return True, f"{count} nilpotent orbits"
    criterion(request, 9, "index of every nilpotent centraliser equals the rank", 300.0, body)


def test_criterion_10_coisotropy(request):
    def body():
        rng = stream("c10")
        count = 0
        for fam, sizes in (("gl", range(2, 6)), ("so", range(3, 6))):
            for n in sizes:
                pair = PairSpec(classical(fam, n))
                g = pair.G
                orbits = [(o.label, o.representative) for o in nilpotent_orbits(g)]
                for j in range(5):
                    if fam == "gl":
                        vals = [rng.randint(-2, 2) for _ in range(n)]
                    else:
                        vals = [rng.randint(0, 2) for _ in range(n // 2)]
                    orbits.append((f"semisimple {vals}", semisimple_representative(g, vals)))
                rep = coisotropy_suite(pair, orbits, rng, budget=20)
                if not rep.passed:
                    bad = [e for e in rep.evidence if not e["passed"]]
                    return False, f"{pair.identifier}: {bad[:1]}"
                count += len(orbits)
        return True, f"{count} orbits, corank 0 with agreeing routes"
    criterion(request, 10, "chain-pair actions are coisotropic", 300.0, body)


def test_criterion_11a_sl3_example(request):
    def body():
        rep = hamiltonian_report(PairSpec.parse("sl:3/sl:2"), ExactMatrix.diag([1, 1, -2]),
                                 stream("c11a"))
        got = (rep.dim_image, rep.b_of_image, rep.corank)
        return got == (2, 1, 1), (f"expected (dim image, b, corank) = (2, 1, 1), computed "
                                  f"({rep.dim_image}, {rep.b_of_image}, {rep.corank}) with dim Gx "
                                  f"{rep.dim_orbit}")
    criterion(request, "11a", "(sl3, sl2) at diag(1,1,-2)", 10.0, body)


def test_criterion_11b_gl3_example(request):
    def body():
        rep = hamiltonian_report(PairSpec.parse("gl:3/gl:2"), ExactMatrix.diag([2, 2, 1]),
                                 stream("c11b"))
        return rep.corank == 0 and rep.routes_agree, f"corank {rep.corank}"
    criterion(request, "11b", "(gl3, gl2) at diag(2,2,1) is coisotropic", 10.0, body)


def test_criterion_12_vinberg_limit(request):
    def body():
        rng = stream("c12")
        count = 0
        for n in range(2, 5):
            for k in range(2, n + 1):
                for m in range(1, k):
                    if not vinberg_limit_check(n, k, m, rng):
                        return False, f"(n, k, m) = ({n}, {k}, {m})"
                    count += 1
        return True, f"{count} triples"
    criterion(request, 12, "lowest-order terms of chain shifts give the corner invariants", 60.0, body)
