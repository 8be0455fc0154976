"""Hamiltonian numerics for the action of a chain subgroup H on an orbit Gx.

H is the first chain member (the south-east corner of size n - 1); the
moment map is restriction g* -> h*.  For a point x' of the orbit:

    dim_image        = max dim(h x')
    max_image_orbit  = max rank of (xi, eta) -> <x', [xi, eta]> on h
    defect           = dim_image - max_image_orbit
    b_of_image       = dim_image - max_image_orbit / 2
    corank           = dim Gx - 2 b_of_image

The last identity is checked against two independent routes: the rank of
the orbit symplectic form on the symplectic complement of the tangent
space h x' (works for every pair), and the rank of the skew form of x' on
the differentials of the invariants of g and h (available when these
generate all H-invariants: gl and so pairs).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .exact import ExactMatrix, kernel, rank, trace_pairing
from .invariants import c1_subalgebra, differentials
from .lie import (DEFAULT_BOUND, LieAlgebraSpec, form_on, orbit_dim, parse_algebra,
                  random_conjugate)
from .partitions import Partition


class RouteDisagreement(AssertionError):
    pass


@dataclass(frozen=True)
class PairSpec:
    G: LieAlgebraSpec
    level: int = 1

    def __post_init__(self):
        if self.G.family not in ("gl", "sl", "so"):
            raise ValueError("pairs are fixed for gl, sl and so")
        if self.G.family == "sl" and self.G.n < 3:
            raise ValueError("sl pairs need n >= 3")
        if self.G.family == "so" and self.G.n < 3:
            raise ValueError("so pairs need n >= 3")

    @property
    def H(self) -> LieAlgebraSpec:
        return self.G.level(self.level)

    @property
    def strong_gelfand(self) -> bool:
        return self.G.family in ("gl", "so")

    @property
    def identifier(self) -> str:
        return f"{self.G.identifier}/{self.H.identifier}"

    def h_basis(self) -> list[ExactMatrix]:
        """Basis of h embedded as matrices in g."""
        return [self.G.embed(b, self.level) for b in self.H.basis]

    @classmethod
    def parse(cls, text: str) -> "PairSpec":
        """``gl:3/gl:2``, ``so:5/so:4``, ``sl:3/sl:2``."""
        try:
            left, right = text.split("/")
        except ValueError as exc:
            raise ValueError(f"bad pair identifier {text!r}") from exc
        G = parse_algebra(left)
        H = parse_algebra(right)
        if H.family != G.family or H.n != G.n - 1:
            raise ValueError(f"{text!r} is not a chain pair")
        return cls(G)


@dataclass
class HamiltonianReport:
    pair: str
    dim_orbit: int
    dim_image: int
    max_image_orbit_dim: int
    defect: int
    corank: int
    b_of_image: Fraction
    corank_restricted_form: int | None
    corank_symplectic: int
    samples: int

    @property
    def restricted_route_available(self) -> bool:
        return self.corank_restricted_form is not None

    @property
    def routes_agree(self) -> bool:
        if self.corank_symplectic != self.corank:
            return False
        return self.corank_restricted_form in (None, self.corank)

    @property
    def coisotropic(self) -> bool:
        return self.corank == 0

    def to_json(self) -> dict:
        out = dict(self.__dict__)
        out["b_of_image"] = str(self.b_of_image)
        out["routes_agree"] = self.routes_agree
        out["restricted_route_available"] = self.restricted_route_available
        return out


def hamiltonian_report(pair: PairSpec, x: ExactMatrix, rng: random.Random | None = None,
                       budget: int = 20, bound: int = DEFAULT_BOUND,
                       strict: bool = True) -> HamiltonianReport:
    """Generic rank data of the H-action on Gx, maximised over x and seeded conjugates."""
    G = pair.G
    G.check(x)
    rng = rng or random.Random(f"corank:{pair.identifier}")
    hb = pair.h_basis()
    C1 = c1_subalgebra(G) if pair.strong_gelfand else None
    dim_orb = orbit_dim(G, x)
    dim_image = max_orbit = 0
    route_b = 0 if C1 is not None else None
    per_sample = []
    for k in range(max(budget, 1)):
        xs = x if k == 0 else random_conjugate(G, x, rng, bound)
        brackets = [xs.commutator(b).flat() for b in hb]
        di = rank(ExactMatrix(brackets)) if brackets else 0
        mo = rank(form_on(xs, hb)) if hb else 0
        dim_image = max(dim_image, di)
        max_orbit = max(max_orbit, mo)
        per_sample.append((di, mo, xs))
        if C1 is not None:
            ds = differentials(C1, xs)
            route_b = max(route_b, rank(form_on(xs, ds)) if ds else 0)
    # the complement rank is only meaningful where the H-orbit has maximal dimension
    route_c = max(_complement_rank(G, xs, hb) for di, mo, xs in per_sample
                  if di == dim_image and mo == max_orbit)
    defect = dim_image - max_orbit
    b = Fraction(2 * dim_image - max_orbit, 2)
    corank = dim_orb - (2 * dim_image - max_orbit)
    report = HamiltonianReport(pair.identifier, dim_orb, dim_image, max_orbit, defect, corank, b,
                               route_b, route_c, max(budget, 1))
    if strict and report.routes_agree is False:
        raise RouteDisagreement(f"corank routes disagree: {corank} vs {route_b} vs {route_c}")
    return report


def _complement_rank(G: LieAlgebraSpec, x: ExactMatrix, hb: list[ExactMatrix]) -> int:
    """Rank of omega_x on the symplectic complement of h x inside T_x(Gx).

    Tangent vectors are [xi, x]; the complement is represented by the xi
    with <x, [xi, eta]> = 0 for all eta in h.
    """
    if not hb:
        return rank(form_on(x, G.basis))
    brackets = [x.commutator(b) for b in G.basis]
    A = ExactMatrix([[trace_pairing(c, eta) for c in brackets] for eta in hb])
    W = kernel(A)
    elems = [G.element(v) for v in W.basis]
    return rank(form_on(x, elems)) if elems else 0


@dataclass
class CoisotropyReport:
    pair: str
    passed: bool
    evidence: list = field(default_factory=list)


def coisotropy_suite(pair: PairSpec, orbits: Sequence[tuple[str, ExactMatrix]],
                     rng: random.Random | None = None, budget: int = 20,
                     bound: int = DEFAULT_BOUND) -> CoisotropyReport:
    """Corank 0 and agreeing routes on every listed (label, representative)."""
    if not pair.strong_gelfand:
        raise ValueError("coisotropy is asserted for gl and so pairs only")
    rng = rng or random.Random(f"coisotropy:{pair.identifier}")
    ok = True
    evidence = []
    for label, x in orbits:
        rep = hamiltonian_report(pair, x, rng, budget, bound, strict=False)
        good = rep.corank == 0 and rep.routes_agree is True
        ok = ok and good
        evidence.append({"orbit": label, "corank": rep.corank,
                         "corank_restricted_form": rep.corank_restricted_form, "passed": good})
    return CoisotropyReport(pair.identifier, ok, evidence)


@dataclass
class SheetProbe:
    partition: Partition
    nilpotent_corank: int
    sample_coranks: list
    passed: bool


def sheet_constancy_probe(pair: PairSpec, r: Partition, samples: Sequence[ExactMatrix],
                          rng: random.Random | None = None, budget: int = 20,
                          bound: int = DEFAULT_BOUND) -> SheetProbe:
    """Corank at each semisimple sample equals the corank at the strongly nilpotent e of type r."""
    from .mf_gt import associated_cone_partition, strongly_nilpotent

    if pair.G.family != "gl":
        raise ValueError("the sheet probe is implemented for gl pairs")
    r = Partition(r)
    rng = rng or random.Random(f"sheet:{r}")
    e = strongly_nilpotent(r).e
    base = hamiltonian_report(pair, e, rng, budget, bound).corank
    coranks = []
    for y in samples:
        if associated_cone_partition(pair.G, y) != r:
            raise ValueError("sample does not lie over the orbit of the given partition")
        coranks.append(hamiltonian_report(pair, y, rng, budget, bound).corank)
    return SheetProbe(r, base, coranks, all(c == base for c in coranks))
