"""Pencils of skew-symmetric forms and the completeness criterion built on them.

A pencil is the span of two skew forms A, B on V; members are written
A + tB, with t = infinity standing for B itself.  Everything here is exact:
regular rank, kernel sums, Kronecker block sizes and the singular-parameter
polynomial are all decided by rank computations over Q.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .exact import (ExactMatrix, Subspace, UnivariateRationalPoly, det, fraction_str, interpolate,
                    kernel, rank, sum_of_subspaces, to_fraction)
from .lie import (DEFAULT_BOUND, LieAlgebraSpec, centralizer, form_on, index, is_regular, orbit_dim,
                  random_conjugate, random_rational, skew_form, subspace_elements)


class NotSkew(ValueError):
    pass


class DegeneratePencil(ValueError):
    pass


@dataclass(frozen=True)
class SkewPencil:
    A: ExactMatrix
    B: ExactMatrix

    def __post_init__(self):
        for name, M in (("A", self.A), ("B", self.B)):
            if M.nrows != M.ncols:
                raise NotSkew(f"{name} is not square")
            if M.T != -M:
                raise NotSkew(f"{name} is not skew-symmetric")
        if self.A.nrows != self.B.nrows:
            raise NotSkew("A and B have different sizes")

    @property
    def dim(self) -> int:
        return self.A.nrows

    def member(self, t) -> ExactMatrix:
        """A + tB; ``t=None`` denotes the member B at infinity."""
        if t is None:
            return self.B
        return self.A + self.B.scale(t)

    @property
    def max_rank(self) -> int:
        """Generic rank m.

        rank(A + tB) < m only at roots of a nonzero polynomial of degree <= m,
        so dim V + 1 consecutive integer samples are guaranteed to attain m.
        """
        if not hasattr(self, "_m"):
            object.__setattr__(self, "_m", max(rank(self.member(t)) for t in range(self.dim + 1)))
        return self._m

    def is_degenerate(self) -> bool:
        """True when A and B do not span a 2-dimensional space of forms."""
        return rank(ExactMatrix([self.A.flat(), self.B.flat()])) < 2

    def regular_parameters(self, count: int) -> list[int]:
        m = self.max_rank
        out, t = [], 0
        limit = count + self.dim + 1
        while len(out) < count and t < limit:
            if rank(self.member(t)) == m:
                out.append(t)
            t += 1
        if len(out) < count:
            raise RuntimeError("too few regular members among sampled parameters")
        return out

    # -- JSON ---------------------------------------------------------------
    def to_json(self) -> dict:
        return {"dim": self.dim, "A": self.A.to_strings(), "B": self.B.to_strings()}

    @classmethod
    def from_json(cls, data) -> "SkewPencil":
        if isinstance(data, str):
            data = json.loads(data)
        try:
            n = int(data["dim"])
            A = ExactMatrix([[to_fraction(v) for v in row] for row in data["A"]])
            B = ExactMatrix([[to_fraction(v) for v in row] for row in data["B"]])
        except (KeyError, TypeError, ValueError) as exc:
            raise NotSkew(f"malformed pencil: {exc}") from exc
        if A.nrows != n or B.nrows != n:
            raise NotSkew("matrix size disagrees with dim")
        return cls(A, B)


def kernel_sum_L(p: SkewPencil) -> Subspace:
    """L = sum of kernels of the regular members, from dim V + 1 regular samples."""
    if p.A.is_zero() and p.B.is_zero():
        raise DegeneratePencil("both forms vanish")
    ts = p.regular_parameters(p.dim + 1)
    return sum_of_subspaces([kernel(p.member(t)) for t in ts])


@dataclass(frozen=True)
class SingularLocus:
    """Squarefree s(t) whose roots are the singular finite parameters, plus t = infinity."""

    polynomial: UnivariateRationalPoly
    infinity_singular: bool
    rational_roots: tuple = ()
    irrational_factors: tuple = ()        # squarefree factors without rational roots
    multiplicities: tuple = ()            # (factor, multiplicity) of the unreduced gcd

    @property
    def trivial(self) -> bool:
        return self.polynomial.is_constant() and not self.infinity_singular

    @property
    def finite_trivial(self) -> bool:
        return self.polynomial.is_constant()


def _random_projection(rng: random.Random, rows: int, cols: int, bound: int) -> ExactMatrix:
    return ExactMatrix([[rng.randint(-bound, bound) for _ in range(cols)] for _ in range(rows)])


def singular_locus(p: SkewPencil, rng: random.Random | None = None, projections: int = 3,
                   bound: int = DEFAULT_BOUND, max_projections: int = 12) -> SingularLocus:
    """gcd of det(P (A + tB) Q) over random m x n / n x m projections P, Q.

    Each determinant is a random combination of the m x m minors of A + tB
    (Cauchy-Binet), so the gcd converges to the gcd of all maximal minors.
    Rational roots are verified by an exact rank computation; a spurious
    rational root triggers further projections.
    """
    rng = rng or random.Random("singular-locus")
    n, m = p.dim, p.max_rank
    inf_singular = rank(p.B) < m
    if m == 0:
        one = UnivariateRationalPoly.constant(1)
        return SingularLocus(one, False)
    g = None
    used = 0
    while True:
        P = _random_projection(rng, m, n, bound)
        Q = _random_projection(rng, n, m, bound)
        poly = interpolate([(t, det(P @ p.member(t) @ Q)) for t in range(m + 1)])
        used += 1
        if poly.is_zero():
            if used >= max_projections:
                raise RuntimeError("projections keep missing the generic rank")
            continue
        g = poly if g is None else g.gcd(poly)
        if used < projections:
            continue
        roots = g.rational_roots()
        spurious = [r for r in roots if rank(p.member(r)) == m]
        if not spurious or used >= max_projections:
            break
    g = g.monic()
    sq = g.squarefree_part()
    roots = sorted(r for r in sq.rational_roots() if rank(p.member(r)) < m)
    rest = sq
    for r in roots:
        rest = rest // UnivariateRationalPoly([-r, 1])
    irr = () if rest.is_constant() else (rest.monic(),)
    return SingularLocus(sq, inf_singular, tuple(roots), irr, tuple(g.squarefree_decomposition()))


@dataclass(frozen=True)
class PencilReport:
    dim: int
    m: int
    kronecker_count: int
    kronecker_sizes: tuple
    L: Subspace
    locus: SingularLocus
    jordan: tuple                  # (root, rank drop) for rational singular parameters
    infinity_rank_drop: int

    def to_json(self) -> dict:
        loc = self.locus
        return {
            "dim": self.dim,
            "m": self.m,
            "kronecker_count": self.kronecker_count,
            "kronecker_sizes": list(self.kronecker_sizes),
            "L_dim": self.L.dim,
            "L_basis": [[fraction_str(c) for c in v] for v in self.L.basis],
            "singular_polynomial": [fraction_str(c) for c in loc.polynomial.coefficients],
            "infinity_singular": loc.infinity_singular,
            "jordan": [{"t": fraction_str(r), "rank_drop": d} for r, d in self.jordan],
            "irrational_factors": [[fraction_str(c) for c in f.coefficients]
                                   for f in loc.irrational_factors],
            "infinity_rank_drop": self.infinity_rank_drop,
        }


def jordan_kronecker_census(p: SkewPencil, rng: random.Random | None = None) -> PencilReport:
    """Kronecker block sizes from kernel-sum filtration dims, plus singular-parameter data.

    With S_j the sum of kernels over j + 1 regular members,
    dim S_j = sum_i min(j + 1, k_i + 1), so #{i : k_i >= j} = dim S_j - dim S_{j-1}.
    """
    if p.is_degenerate():
        raise DegeneratePencil("A and B are proportional; reparameterize with two independent forms")
    n, m = p.dim, p.max_rank
    ts = p.regular_parameters(n + 1)
    kernels = [kernel(p.member(t)) for t in ts]
    dims = []
    acc = Subspace(n)
    for K in kernels:
        acc = acc + K
        dims.append(acc.dim)
    at_least = [dims[0]] + [dims[j] - dims[j - 1] for j in range(1, len(dims))]
    sizes = []
    for j, c in enumerate(at_least):
        nxt = at_least[j + 1] if j + 1 < len(at_least) else 0
        sizes.extend([2 * j + 1] * (c - nxt))
    sizes.sort(reverse=True)
    loc = singular_locus(p, rng)
    jordan = tuple((r, m - rank(p.member(r))) for r in loc.rational_roots)
    return PencilReport(n, m, n - m, tuple(sizes), acc, loc, jordan, m - rank(p.B))


def check_jk_properties(p: SkewPencil, rng: random.Random, members: int = 5,
                        bound: int = DEFAULT_BOUND) -> dict:
    """The three kernel-sum statements for one pencil; returns per-part booleans."""
    n, m = p.dim, p.max_rank
    L = kernel_sum_L(p)
    part_i = True
    for _ in range(members):
        s, t = Fraction(0), Fraction(0)
        while s == 0 and t == 0:
            s, t = random_rational(rng, bound), random_rational(rng, bound)
        C = p.A.scale(s) + p.B.scale(t)
        if C.is_zero():
            continue
        if L.intersection_dim(kernel(C)) != n - m:
            part_i = False
    loc = singular_locus(p, rng)
    singular_members = [p.member(r) for r in loc.rational_roots]
    if loc.infinity_singular:
        singular_members.append(p.B)
    singular_members = [C for C in singular_members if not C.is_zero()]
    for C in singular_members:
        if L.intersection_dim(kernel(C)) != n - m:
            part_i = False
    part_ii = None
    if loc.trivial:
        part_ii = L.dim == n - m // 2
    part_iii = all(2 * L.dim <= 2 * (n - m) + rank(C) for C in singular_members)
    return {"m": m, "L_dim": L.dim, "i": part_i, "ii": part_ii, "iii": part_iii,
            "singular_checked": len(singular_members)}


# -- completeness of shift subalgebras -----------------------------------------------

class NotRegular(ValueError):
    pass


@dataclass
class MFVerdict:
    algebra: str
    complete: bool
    samples: int
    witness_sample: int | None
    orbit_dim: int
    target: int
    dim_span: int
    intersection_with_centralizer: int
    cond_i: bool
    cond_ii: bool
    index_centralizer: int
    per_sample: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {k: v for k, v in self.__dict__.items()}


def mf_completeness_verdict(g: LieAlgebraSpec, a: ExactMatrix, x: ExactMatrix,
                            rng: random.Random | None = None, budget: int = 20,
                            bound: int = DEFAULT_BOUND) -> MFVerdict:
    """Is the shift subalgebra of ``a`` complete on the orbit of ``x``?

    Sample 0 is x itself, later samples are seeded conjugates.  Per sample:
    cond-i (no singular member on the pencil line off the x-axis), cond-ii
    (restriction of a regular on the centraliser), the span dimension and
    its intersection with the centraliser.  Complete iff the span reaches
    l + dim(Gx)/2 at some sample.
    """
    from .invariants import differential_span, mf_subalgebra

    rng = rng or random.Random("mf-verdict")
    g.check(a)
    g.check(x)
    if not is_regular(g, a):
        raise NotRegular("the shift direction must be regular")
    A = mf_subalgebra(g, a)
    l = g.rank_l
    d_orb = orbit_dim(g, x)
    target = l + d_orb // 2
    ahat = skew_form(g, a)
    ind_gx = index(g, subspace_elements(g, centralizer(g, x)), rng, bound=bound, check=False).value
    best = None
    rows = []
    witness = None
    for k in range(max(budget, 1)):
        xs = x if k == 0 else random_conjugate(g, x, rng, bound)
        pencil = SkewPencil(ahat, skew_form(g, xs))
        cond_i = singular_locus(pencil, rng).finite_trivial and rank(ahat) == pencil.max_rank
        cent = centralizer(g, xs)
        elems = subspace_elements(g, cent)
        cond_ii = rank(form_on(a, elems)) == cent.dim - ind_gx
        span = differential_span(A, xs)
        inter = span.intersection_dim(cent)
        row = {"sample": k, "dim_span": span.dim, "intersection": inter,
               "cond_i": cond_i, "cond_ii": cond_ii}
        rows.append(row)
        if best is None or span.dim > best["dim_span"]:
            best = row
        if span.dim == target:
            witness = k
            best = row
            break
    return MFVerdict(g.identifier, witness is not None, len(rows), witness, d_orb, target,
                     best["dim_span"], best["intersection"], best["cond_i"], best["cond_ii"],
                     ind_gx, rows)
