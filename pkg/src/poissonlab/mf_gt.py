"""Orbit-level completeness of shift and chain subalgebras, strongly nilpotent
elements of gl_n, and the white/red/green colour pattern of a partition.

Pattern layout: row m (0-based) lists the generators
d^m H_n, d^m H_{n-1}, ..., d^m H_{m+1}; position p (1-based from the left)
carries H_i with i = n - p + 1.  For the chain subalgebra the same cell
stands for Delta^[m]_{i-m}.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .exact import ExactMatrix, Subspace, inverse, rank
from .invariants import (Invariant, char_poly, differential, differential_span, elementary_invariants,
                         gt_subalgebra)
from .lie import (DEFAULT_BOUND, LieAlgebraSpec, centralizer, classical, nilpotent_jordan_type,
                  orbit_dim, random_conjugate, sample_regular)
from .partitions import Partition

WHITE, RED, GREEN = "white", "red", "green"
_LETTER = {WHITE: "W", RED: "R", GREEN: "G"}
SVG_COLOURS = {WHITE: "#ffffff", RED: "#cc0000", GREEN: "#00aa00"}


class Unsupported(ValueError):
    """Input outside the implemented scope (exit code 3 on the command line)."""


# -- colour patterns ---------------------------------------------------------------

@dataclass(frozen=True)
class ColourPattern:
    n: int
    cells: dict                      # (m, p) -> colour

    def colour(self, m: int, p: int) -> str:
        return self.cells[(m, p)]

    def rows(self) -> list[list[str]]:
        return [[self.cells[(m, p)] for p in range(1, self.n - m + 1)] for m in range(self.n)]

    def count(self, colour: str) -> int:
        return sum(1 for c in self.cells.values() if c == colour)

    @property
    def total(self) -> int:
        return len(self.cells)

    def cell_generator(self, m: int, p: int) -> tuple[int, int]:
        """(i, k): the cell holds d^m H_i, i.e. Delta^[m]_k with k = i - m."""
        i = self.n - p + 1
        return i, i - m

    def to_ascii(self) -> str:
        return "\n".join("".join(_LETTER[c] for c in row) for row in self.rows())

    def to_json(self) -> dict:
        return {"n": self.n,
                "cells": {f"{m},{p}": c for (m, p), c in sorted(self.cells.items())}}

    def to_svg(self, box: int = 20) -> str:
        parts = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{self.n * box}" '
                 f'height="{self.n * box}">']
        for m in range(self.n):
            for p in range(1, self.n - m + 1):
                parts.append(f'<rect x="{(p - 1) * box}" y="{m * box}" width="{box}" '
                             f'height="{box}" fill="{SVG_COLOURS[self.cells[(m, p)]]}" '
                             f'stroke="#000000"/>')
        parts.append("</svg>")
        return "\n".join(parts)

    def render(self, fmt: str = "ascii"):
        if fmt == "ascii":
            return self.to_ascii()
        if fmt == "json":
            return self.to_json()
        if fmt == "svg":
            return self.to_svg()
        raise ValueError(f"unknown format {fmt!r}")


def s_values(r: Partition) -> list[int]:
    """s(i), i = 1..n: the first j with r_1 + ... + r_j >= i."""
    return Partition(r).s_values()


def paint_pattern(r: Partition) -> ColourPattern:
    """Paint the staircase tableau row by row.

    Row m gets a red stripe of length r_{m+1} ending at its rightmost
    non-green box; every box below a red box turns green.
    """
    r = Partition(r)
    n = r.n
    cells = {(m, p): WHITE for m in range(n) for p in range(1, n - m + 1)}
    for m, length in enumerate(r):
        row_len = n - m
        start = max((p for p in range(1, row_len + 1) if cells[(m, p)] != GREEN), default=None)
        if start is None:
            break
        for p in range(start, start - length, -1):
            if p < 1:
                raise AssertionError("red stripe ran off the row")
            cells[(m, p)] = RED
            for below in range(m + 1, n - p + 1):
                cells[(below, p)] = GREEN
    return ColourPattern(n, cells)


def closed_form_pattern(r: Partition) -> ColourPattern:
    """green iff s(i) <= m <= i - 1, red iff m = s(i) - 1, white otherwise."""
    r = Partition(r)
    n = r.n
    s = r.s_values()
    cells = {}
    for m in range(n):
        for p in range(1, n - m + 1):
            i = n - p + 1
            si = s[i - 1]
            if si <= m <= i - 1:
                cells[(m, p)] = GREEN
            elif m == si - 1:
                cells[(m, p)] = RED
            else:
                cells[(m, p)] = WHITE
    return ColourPattern(n, cells)


def complete_family_indices(r: Partition, convention: str = "pattern") -> list[tuple[int, int]]:
    """Pairs (i, k) naming the shifts d^k H_i of the complete family on O(r).

    ``"pattern"``: s(i) <= k <= i - 1, the green cells (count = dim O / 2).
    ``"literal"``: i > k > i - s(i), the inequality as usually printed; its
    count sum(s(i) - 1) generally differs from dim O / 2 and is exposed only
    for comparison.
    """
    r = Partition(r)
    s = r.s_values()
    out = []
    for i in range(1, r.n + 1):
        for k in range(i):
            if convention == "pattern":
                ok = s[i - 1] <= k <= i - 1
            elif convention == "literal":
                ok = i > k > i - s[i - 1]
            else:
                raise ValueError(f"unknown convention {convention!r}")
            if ok:
                out.append((i, k))
    return out


# -- Jordan bases -------------------------------------------------------------------

def _independent(vectors: list) -> bool:
    return not vectors or rank(ExactMatrix(vectors)) == len(vectors)


def _apply(N: ExactMatrix, v: list) -> list:
    return [sum((a * b for a, b in zip(row, v) if a and b), Fraction(0)) for row in N.rows]


def jordan_chains(N: ExactMatrix, rng: random.Random | None = None,
                  first: list | None = None) -> list[list[list[Fraction]]]:
    """Jordan chains [v, Nv, ..., N^{s-1}v] of a nilpotent N, longest first.

    ``first`` optionally fixes the top of the first chain.  Tops are chosen
    greedily from standard vectors, then random combinations; a chain is
    accepted when all chain vectors so far stay independent.
    """
    rng = rng or random.Random("jordan-chains")
    n = N.nrows
    parts = nilpotent_jordan_type(N)
    powers = [ExactMatrix.identity(n)]
    for _ in range(max(parts, default=0)):
        powers.append(powers[-1] @ N)
    chains: list = []
    flat: list = []

    def chain_of(v, size):
        out = [list(v)]
        for _ in range(size - 1):
            out.append(_apply(N, out[-1]))
        return out

    def accept(v, size):
        if any(_apply(powers[size], v)):
            return False
        if not any(_apply(powers[size - 1], v)):
            return False
        ch = chain_of(v, size)
        if _independent(flat + ch):
            chains.append(ch)
            flat.extend(ch)
            return True
        return False

    for idx, size in enumerate(parts):
        if idx == 0 and first is not None:
            if not accept(first, size):
                raise ValueError("prescribed chain top does not generate a largest block")
            continue
        found = False
        for j in range(n):
            v = [Fraction(int(j == c)) for c in range(n)]
            if accept(v, size):
                found = True
                break
        tries = 0
        while not found:
            tries += 1
            if tries > 200:
                raise RuntimeError("could not complete a Jordan basis")
            # random vector of ker N^size
            from .exact import kernel
            K = kernel(powers[size])
            v = [Fraction(0)] * n
            for b in K.basis:
                c = rng.randint(-5, 5)
                v = [a + c * x for a, x in zip(v, b)]
            found = accept(v, size)
    return chains


# -- strongly nilpotent elements -------------------------------------------------------

class CertificateError(AssertionError):
    pass


@dataclass
class StrongNilpotentCertificate:
    e: ExactMatrix
    partition: Partition
    corner_partitions: list
    dim_span: int
    dim_intersection_with_centralizer: int

    @property
    def n(self) -> int:
        return self.partition.n

    def to_json(self) -> dict:
        return {"partition": str(self.partition),
                "e": self.e.to_strings(),
                "corner_partitions": [str(p) for p in self.corner_partitions],
                "dim_span": self.dim_span,
                "dim_intersection_with_centralizer": self.dim_intersection_with_centralizer,
                "orbit_dim": self.partition.orbit_dim()}


def _construct_strong(r: Partition, rng: random.Random) -> ExactMatrix:
    n = r.n
    if len(r) == 1:
        rows = [[Fraction(0)] * n for _ in range(n)]
        for j in range(n - 1):
            rows[j + 1][j] = Fraction(1)          # e v_j = v_{j+1}
        return ExactMatrix(rows)
    if r[0] == 1:
        return ExactMatrix.zeros(n)
    r1 = r[0]
    c = r[0] + r[1]
    eprime = _construct_strong(r.collapse(), rng)          # acts on coordinates 2..n
    chains = jordan_chains(eprime, rng)
    if len(chains[0]) != c - 1:
        raise CertificateError("first block of the corner has the wrong size")
    # basis of k^n: v_1 = x_1, then chain vectors embedded in coordinates 2..n
    def lift(v):
        return [Fraction(0)] + list(v)

    vs = [[Fraction(int(i == 0)) for i in range(n)]] + [lift(v) for v in chains[0]]
    others = [lift(v) for ch in chains[1:] for v in ch]
    basis = vs + others                       # vs[j-1] is v_j for j = 1..c
    # images in the original coordinates
    images = []
    eprime_full = ExactMatrix([[Fraction(0)] * n] + [[Fraction(0)] + list(row) for row in eprime.rows])
    for idx, v in enumerate(basis):
        img = _apply(eprime_full, v)
        j = idx + 1
        if j <= c:
            if j == 1:
                img = [-a for a in vs[r1 + 1]] if r1 + 2 <= c else [Fraction(0)] * n
            elif j == r1:
                img = [a + b for a, b in zip(vs[r1], vs[0])]
            elif j == c:
                img = [Fraction(0)] * n
        images.append(img)
    P = ExactMatrix(basis).T                  # columns are basis vectors
    Img = ExactMatrix(images).T
    return Img @ inverse(P)


def strongly_nilpotent(r: Partition, rng: random.Random | None = None,
                       verify: bool = True) -> StrongNilpotentCertificate:
    """Build e in O(r) whose chain corners are all nilpotent, and certify it."""
    r = Partition(r)
    rng = rng or random.Random(f"strong:{r}")
    e = _construct_strong(r, rng)
    n = r.n
    g = classical("gl", n)
    corner_types = []
    expected = r
    for m in range(n):
        X = g.corner(e, m)
        if any(elementary_invariants(X)[1:]):
            raise CertificateError(f"corner {m} is not nilpotent")
        jt = nilpotent_jordan_type(X)
        corner_types.append(jt)
        if verify and jt != expected:
            raise CertificateError(f"corner {m} has type {jt}, expected {expected}")
        expected = expected.collapse()
    span = differential_span(gt_subalgebra(g), e)
    inter = span.intersection_dim(centralizer(g, e))
    cert = StrongNilpotentCertificate(e, r, corner_types, span.dim, inter)
    if verify:
        if span.dim != n + r.orbit_dim() // 2:
            raise CertificateError(f"span dimension {span.dim} != {n + r.orbit_dim() // 2}")
        if inter != n:
            raise CertificateError(f"intersection with the centraliser {inter} != {n}")
    return cert


# -- orbit-level verdicts ----------------------------------------------------------------

@dataclass
class GTVerdict:
    algebra: str
    complete: bool
    samples: int
    witness_sample: int | None
    orbit_dim: int
    best_q: int
    per_sample: list = field(default_factory=list)

    def to_json(self) -> dict:
        return dict(self.__dict__)


def gt_completeness_verdict(g: LieAlgebraSpec, x: ExactMatrix, rng: random.Random | None = None,
                            budget: int = 20, bound: int = DEFAULT_BOUND) -> GTVerdict:
    """q = dim(span + g^x') - dim g^x' at x itself and at seeded conjugates."""
    if g.family not in ("gl", "so"):
        raise Unsupported("the chain subalgebra is defined for gl and so")
    rng = rng or random.Random("gt-verdict")
    g.check(x)
    A = gt_subalgebra(g)
    d = orbit_dim(g, x)
    best, witness, rows = -1, None, []
    for k in range(max(budget, 1)):
        xs = x if k == 0 else random_conjugate(g, x, rng, bound)
        cent = centralizer(g, xs)
        span = differential_span(A, xs)
        q = (span + cent).dim - cent.dim
        rows.append({"sample": k, "q": q, "dim_span": span.dim})
        best = max(best, q)
        if 2 * q == d:
            witness = k
            break
    return GTVerdict(g.identifier, witness is not None, len(rows), witness, d, best, rows)


def associated_cone_partition(g: LieAlgebraSpec, x: ExactMatrix) -> Partition:
    """Jordan type for nilpotent x; dual of eigenvalue multiplicities for semisimple x."""
    if g.family != "gl":
        raise Unsupported("associated cones are computed for gl only")
    g.check(x)
    n = g.n
    if x.power(n).is_zero():
        return nilpotent_jordan_type(x)
    from .exact import UnivariateRationalPoly
    chi = UnivariateRationalPoly(char_poly(x))
    mults = []
    roots = chi.rational_roots()
    for lam in roots:
        lin = UnivariateRationalPoly([-lam, 1])
        k, rest = 0, chi
        while True:
            q, rem = rest.divmod(lin)
            if not rem.is_zero():
                break
            rest, k = q, k + 1
        mults.append(k)
    if sum(mults) != n:
        raise Unsupported("spectrum is not rational")
    prod = ExactMatrix.identity(n)
    for lam in roots:
        prod = prod @ (x - ExactMatrix.identity(n).scale(lam))
    if not prod.is_zero():
        raise Unsupported("x is neither nilpotent nor semisimple")
    return Partition(sorted(mults, reverse=True)).dual()


@dataclass
class ShiftSearchReport:
    algebra: str
    found: bool
    attempts: int
    a: ExactMatrix | None
    evidence: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {"algebra": self.algebra, "found": self.found, "attempts": self.attempts,
                "a": self.a.to_strings() if self.a is not None else None,
                "evidence": self.evidence}


class SearchExhausted(RuntimeError):
    def __init__(self, report: ShiftSearchReport):
        super().__init__(f"no shift found in {report.attempts} attempts")
        self.report = report


def mf_complete_shift_search(g: LieAlgebraSpec, orbits: Sequence, rng: random.Random | None = None,
                             budget: int = 10, samples: int = 20,
                             bound: int = DEFAULT_BOUND) -> ShiftSearchReport:
    """Find a regular a whose shift subalgebra is complete on every listed orbit.

    ``orbits`` holds representatives: matrices, or partitions (taken as
    nilpotent orbits of the algebra).
    """
    from .lie import nilpotent_representative
    from .pencils import mf_completeness_verdict

    rng = rng or random.Random("shift-search")
    reps = []
    for o in orbits:
        if isinstance(o, ExactMatrix):
            reps.append((str(o), o))
        else:
            part = Partition(o)
            reps.append((str(part), nilpotent_representative(g, part)))
    last = []
    for attempt in range(1, budget + 1):
        a = sample_regular(g, rng, bound)
        evidence, ok = [], True
        for label, x in reps:
            v = mf_completeness_verdict(g, a, x, rng, samples, bound)
            evidence.append({"orbit": label, "complete": v.complete, "dim_span": v.dim_span,
                             "target": v.target})
            if not v.complete:
                ok = False
                break
        last = evidence
        if ok:
            return ShiftSearchReport(g.identifier, True, attempt, a, evidence)
    raise SearchExhausted(ShiftSearchReport(g.identifier, False, budget, None, last))


@dataclass
class ColourCheckReport:
    partition: Partition
    white: int
    red: int
    green: int
    white_vanish: bool
    red_in_centralizer: bool
    red_span_dim: int
    green_rank_mod_centralizer: int

    @property
    def passed(self) -> bool:
        n = self.partition.n
        return (self.white_vanish and self.red_in_centralizer and self.red_span_dim == n
                and self.green_rank_mod_centralizer == self.green == self.partition.orbit_dim() // 2)


class ColourCheckFailed(AssertionError):
    pass


def white_red_green_checks(r: Partition, rng: random.Random | None = None, conjugates: int = 25,
                           bound: int = DEFAULT_BOUND) -> ColourCheckReport:
    """Check the meaning of each colour for the chain generators at a strongly nilpotent e.

    white: vanishes on the orbit; red: differential in the centraliser,
    together spanning the n-dimensional intersection; green: independent
    modulo the centraliser.
    """
    r = Partition(r)
    rng = rng or random.Random(f"colours:{r}")
    n = r.n
    g = classical("gl", n)
    e = strongly_nilpotent(r).e
    pat = closed_form_pattern(r)
    cent = centralizer(g, e)
    cache: dict = {}
    by_colour = {WHITE: [], RED: [], GREEN: []}
    for (m, p), colour in sorted(pat.cells.items()):
        _, k = pat.cell_generator(m, p)
        by_colour[colour].append(((m, p), Invariant(g, "char", k, m)))
    conj = [random_conjugate(g, e, rng, bound) for _ in range(conjugates)]
    white_ok = True
    for cell, F in by_colour[WHITE]:
        if any(F.evaluate(y) for y in conj):
            raise ColourCheckFailed(f"white cell {cell} ({F.name}) does not vanish on the orbit")
    red_vecs = []
    for cell, F in by_colour[RED]:
        v = g.coords(differential(F, e, cache), check=False)
        if not cent.contains(v):
            raise ColourCheckFailed(f"red cell {cell} ({F.name}) leaves the centraliser")
        red_vecs.append(v)
    red_dim = Subspace(g.dim, red_vecs).dim
    full = differential_span(gt_subalgebra(g), e)
    if red_dim != n or full.intersection_dim(cent) != red_dim:
        raise ColourCheckFailed(f"red differentials span {red_dim}, expected {n}")
    green_vecs = [g.coords(differential(F, e, cache), check=False) for _, F in by_colour[GREEN]]
    green_rank = (Subspace(g.dim, green_vecs) + cent).dim - cent.dim
    if green_rank != len(green_vecs) or green_rank != r.orbit_dim() // 2:
        raise ColourCheckFailed(f"green differentials have rank {green_rank} modulo the centraliser")
    return ColourCheckReport(r, len(by_colour[WHITE]), len(by_colour[RED]), len(by_colour[GREEN]),
                             white_ok, True, red_dim, green_rank)
