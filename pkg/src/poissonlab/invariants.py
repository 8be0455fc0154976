"""Polynomial invariants, their shifts and differentials.

Invariants are black boxes: they can be evaluated at a matrix, and their
derivatives are read off from exact interpolation along lines.  Char
polynomial coefficients additionally carry a closed-form gradient used as a
fast path (the two agree; see the tests).

Sign convention: Delta_k is the k-th elementary symmetric function of the
eigenvalues, i.e. (-1)^k times the coefficient of lambda^(n-k) in
det(lambda I - x).  So Delta_1 = tr and Delta_n = det.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Sequence

from .exact import ExactMatrix, Subspace, interpolate, interpolate_vectors, trace_pairing
from .lie import DEFAULT_BOUND, LieAlgebraSpec, random_element


def elementary_invariants(X: ExactMatrix) -> list[Fraction]:
    """[e_0 = 1, e_1, ..., e_n] of the eigenvalues (Faddeev-LeVerrier)."""
    n = X.nrows
    e = [Fraction(1)]
    M = ExactMatrix.zeros(n)
    identity = ExactMatrix.identity(n)
    coeff = Fraction(1)          # coefficient c_{n-k+1} of det(lambda - X)
    for k in range(1, n + 1):
        M = X @ M + identity.scale(coeff)
        coeff = -(X @ M).trace() / k
        e.append(coeff * (-1) ** k)
    return e


def char_poly(X: ExactMatrix) -> list[Fraction]:
    """Coefficients of det(lambda I - X), ascending in lambda."""
    e = elementary_invariants(X)
    n = X.nrows
    return [e[n - j] * (-1) ** (n - j) for j in range(n + 1)]


def char_gradients(X: ExactMatrix) -> list[ExactMatrix]:
    """Gradients of e_1..e_n w.r.t. tr(xi y): grad e_k = sum_j (-1)^j e_{k-1-j} X^j."""
    n = X.nrows
    e = elementary_invariants(X)
    powers = [ExactMatrix.identity(n)]
    for _ in range(n - 1):
        powers.append(powers[-1] @ X)
    out = []
    for k in range(1, n + 1):
        acc = ExactMatrix.zeros(n)
        for j in range(k):
            c = e[k - 1 - j] * (-1) ** j
            if c:
                acc = acc + powers[j].scale(c)
        out.append(acc)
    return out


def pfaffian(K: ExactMatrix) -> Fraction:
    """Pfaffian of a skew-symmetric matrix by expansion along the first row."""
    n = K.nrows
    if n % 2:
        return Fraction(0)
    if n == 0:
        return Fraction(1)
    total = Fraction(0)
    rest = list(range(1, n))
    for pos, j in enumerate(rest):
        a = K.rows[0][j]
        if a:
            idx = rest[:pos] + rest[pos + 1:]
            total += (-1) ** pos * a * pfaffian(K.submatrix(idx, idx))
    return total


def _line_coefficients(func, x: ExactMatrix, y: ExactMatrix, degree: int) -> list[Fraction]:
    """Coefficients of t -> func(x + t y), a polynomial of known degree bound."""
    pts = [(t, func(x + y.scale(t))) for t in range(degree + 1)]
    p = interpolate(pts)
    return [p.coeff(k) for k in range(degree + 1)]


class Invariant:
    """A char-poly coefficient or Pfaffian of a chain corner.

    ``kind`` is ``"char"`` (Delta_k of the corner) or ``"pf"`` (Pfaffian of
    S * corner for the corner's symmetric form S).  ``level`` is the corner
    level m; the corner has size n - m.
    """

    def __init__(self, algebra: LieAlgebraSpec, kind: str, k: int, level: int = 0):
        size = algebra.n - level
        if kind == "char" and not 1 <= k <= size:
            raise ValueError(f"Delta_{k} undefined on a corner of size {size}")
        if kind == "pf" and (algebra.family != "so" or size % 2 or k != size // 2):
            raise ValueError("Pfaffian member needs an even so corner, k = size/2")
        self.algebra = algebra
        self.kind = kind
        self.k = k
        self.level = level

    @property
    def degree(self) -> int:
        return self.k

    @property
    def name(self) -> str:
        base = f"D{self.k}" if self.kind == "char" else "Pf"
        return base if self.level == 0 else f"{base}[{self.level}]"

    def __repr__(self) -> str:
        return f"Invariant({self.name} on {self.algebra.identifier})"

    def __eq__(self, other) -> bool:
        return (isinstance(other, Invariant) and (self.algebra, self.kind, self.k, self.level)
                == (other.algebra, other.kind, other.k, other.level))

    def __hash__(self) -> int:
        return hash((self.algebra, self.kind, self.k, self.level))

    def evaluate(self, x: ExactMatrix) -> Fraction:
        X = self.algebra.corner(x, self.level)
        if self.kind == "char":
            return elementary_invariants(X)[self.k]
        signs = self.algebra.signs[self.level:]
        return pfaffian(ExactMatrix.diag(signs) @ X)

    __call__ = evaluate

    def full_gradient(self, x: ExactMatrix, cache: dict | None = None) -> ExactMatrix:
        """Gradient as a function on all n x n matrices (w.r.t. tr(xi y))."""
        if self.kind != "char":
            raise NotImplementedError("closed-form gradient exists for char coefficients only")
        X = self.algebra.corner(x, self.level)
        key = (self.level, X)
        if cache is not None and key in cache:
            grads = cache[key]
        else:
            grads = char_gradients(X)
            if cache is not None:
                cache[key] = grads
        G = grads[self.k - 1]
        return self.algebra.embed(G, self.level) if self.level else G


def directional_derivative(F, a: ExactMatrix, k: int, x: ExactMatrix) -> Fraction:
    """partial_a^k F at x, i.e. k! times the t^k coefficient of F(x + t a)."""
    if k > F.degree:
        return Fraction(0)
    coeffs = _line_coefficients(F.evaluate, x, a, F.degree)
    return factorial(k) * coeffs[k]


class Shifted:
    """The shifted function partial_a^k F."""

    def __init__(self, base: Invariant, direction: ExactMatrix, order: int):
        if order < 0:
            raise ValueError("shift order must be non-negative")
        self.base = base
        self.direction = direction
        self.order = order

    @property
    def algebra(self) -> LieAlgebraSpec:
        return self.base.algebra

    @property
    def degree(self) -> int:
        return max(self.base.degree - self.order, 0)

    @property
    def name(self) -> str:
        return self.base.name if self.order == 0 else f"d^{self.order} {self.base.name}"

    def __repr__(self) -> str:
        return f"Shifted({self.name})"

    def evaluate(self, x: ExactMatrix) -> Fraction:
        return directional_derivative(self.base, self.direction, self.order, x)

    __call__ = evaluate


def _generic_differential(F, x: ExactMatrix) -> ExactMatrix:
    """Differential from degree-1 interpolation coefficients along each basis element."""
    g = F.algebra
    deg = max(F.degree, 1)
    c = [_line_coefficients(F.evaluate, x, b, deg)[1] for b in g.basis]
    inv = g.gram_inverse
    coords = [sum((c[k] * inv.rows[k][j] for k in range(g.dim) if c[k]), Fraction(0))
              for j in range(g.dim)]
    return g.element(coords)


def differential(F, x: ExactMatrix, cache: dict | None = None, method: str = "auto") -> ExactMatrix:
    """The element xi of g with <xi, y> = d/dt F(x + t y) at t = 0.

    ``method="interpolate"`` forces the generic route through basis
    directions; ``"auto"`` uses closed-form char gradients where available.
    """
    g = F.algebra
    if method == "interpolate":
        return _generic_differential(F, x)
    if isinstance(F, Invariant):
        if F.kind == "char":
            return g.project(F.full_gradient(x, cache))
        return _generic_differential(F, x)
    if isinstance(F, Shifted):
        base = F.base
        d = base.degree
        if F.order >= d:
            return ExactMatrix.zeros(g.n)
        if base.kind != "char":
            return _generic_differential(F, x)
        # grad of partial_a^k F = partial_a^k grad F: interpolate s -> grad F(x + s a)
        samples = [base.full_gradient(x + F.direction.scale(s), cache).flat() for s in range(d)]
        coeffs = interpolate_vectors(range(d), samples)
        G = ExactMatrix.from_flat(coeffs[F.order], g.n).scale(factorial(F.order))
        return g.project(G)
    raise TypeError(f"cannot differentiate {F!r}")


def poisson_bracket_at(F, G, x: ExactMatrix, cache: dict | None = None) -> Fraction:
    """{F, G}(x) = <x, [d_x F, d_x G]>."""
    dF = differential(F, x, cache)
    dG = differential(G, x, cache)
    return trace_pairing(x, dF.commutator(dG))


# -- families -------------------------------------------------------------------

def generating_invariants(g: LieAlgebraSpec, level: int = 0) -> list[Invariant]:
    """Generators of the invariants of the level-m chain member (whole g for m = 0)."""
    size = g.n - level
    fam = g.family
    if fam == "gl":
        return [Invariant(g, "char", k, level) for k in range(1, size + 1)]
    if fam == "sl":
        if level:
            raise ValueError("corner invariants are fixed for gl and so chains")
        return [Invariant(g, "char", k) for k in range(2, size + 1)]
    if fam == "sp":
        if level:
            raise ValueError("no chain is fixed for sp")
        return [Invariant(g, "char", k) for k in range(2, size + 1, 2)]
    if size < 2:
        return []
    out = [Invariant(g, "char", k, level) for k in range(2, size, 2)]
    if size % 2 == 0:
        out.append(Invariant(g, "pf", size // 2, level))
    return out


@dataclass
class GeneratedSubalgebra:
    """A subalgebra of S(g) given by an explicit generating list."""

    algebra: LieAlgebraSpec
    label: str
    generators: list = field(default_factory=list)
    direction: ExactMatrix | None = None

    def __len__(self) -> int:
        return len(self.generators)

    def names(self) -> list[str]:
        return [F.name for F in self.generators]


def mf_subalgebra(g: LieAlgebraSpec, a: ExactMatrix) -> GeneratedSubalgebra:
    """Argument-shift subalgebra: partial_a^k H_i for 0 <= k < deg H_i."""
    g.check(a)
    gens = [Shifted(H, a, k) for H in generating_invariants(g) for k in range(H.degree)]
    return GeneratedSubalgebra(g, "MF", gens, a)


def gt_subalgebra(g: LieAlgebraSpec) -> GeneratedSubalgebra:
    """Chain subalgebra: invariants of every chain member."""
    if g.family == "gl":
        gens = [Invariant(g, "char", k, m) for m in range(g.n) for k in range(1, g.n - m + 1)]
    elif g.family == "so":
        gens = [H for m in range(g.n - 1) for H in generating_invariants(g, m)]
    else:
        raise ValueError("the chain subalgebra is defined for gl and so")
    return GeneratedSubalgebra(g, "GT", gens)


def c1_subalgebra(g: LieAlgebraSpec) -> GeneratedSubalgebra:
    """Invariants of g together with invariants of the first chain member."""
    if g.family not in ("gl", "so"):
        raise ValueError("C1 is defined for gl and so")
    gens = generating_invariants(g) + generating_invariants(g, 1)
    return GeneratedSubalgebra(g, "C1", gens)


def differentials(A: GeneratedSubalgebra, x: ExactMatrix) -> list[ExactMatrix]:
    cache: dict = {}
    return [differential(F, x, cache) for F in A.generators]


def differential_span(A: GeneratedSubalgebra, x: ExactMatrix) -> Subspace:
    g = A.algebra
    return Subspace(g.dim, [g.coords(d, check=False) for d in differentials(A, x)])


@dataclass(frozen=True)
class CommutativityReport:
    points: int
    pairs: int
    bound: int
    nonzero: tuple = ()        # (point index, name_i, name_j, value)

    @property
    def passed(self) -> bool:
        return not self.nonzero


def check_poisson_commutative(A: GeneratedSubalgebra, rng: random.Random, points: int = 100,
                              bound: int = DEFAULT_BOUND) -> CommutativityReport:
    """Evaluate every generator bracket at random points; any nonzero value is a counterexample."""
    g = A.algebra
    gens = A.generators
    bad = []
    for p in range(points):
        x = random_element(g, rng, bound)
        ds = differentials(A, x)
        for i in range(len(gens)):
            for j in range(i + 1, len(gens)):
                v = trace_pairing(x, ds[i].commutator(ds[j]))
                if v:
                    bad.append((p, gens[i].name, gens[j].name, v))
    npairs = len(gens) * (len(gens) - 1) // 2
    return CommutativityReport(points, npairs, bound, tuple(bad))


def vinberg_limit_check(n: int, k: int, m: int, rng: random.Random | None = None,
                        points: int = 12, bound: int = DEFAULT_BOUND) -> bool:
    """Is the lowest t-order term of partial^m_{a(t)} Delta_k a nonzero multiple of Delta^[m]_{k-m}?

    a(t) = diag(1, t, ..., t^{n-1}).  Both sides are evaluated at random
    points; the t-dependence is recovered by exact interpolation.
    """
    if not 1 <= m < k <= n:
        raise ValueError("need 1 <= m < k <= n")
    from .lie import classical
    g = classical("gl", n)
    rng = rng or random.Random(f"vinberg:{n}:{k}:{m}")
    Dk = Invariant(g, "char", k)
    target = Invariant(g, "char", k - m, m)
    tdeg = m * (n - 1)
    xs = [random_element(g, rng, bound) for _ in range(points)]
    lows = []
    for x in xs:
        vals = []
        for t in range(1, tdeg + 2):
            a = ExactMatrix.diag([Fraction(t) ** i for i in range(n)])
            vals.append((t, directional_derivative(Dk, a, m, x)))
        lows.append(interpolate(vals))
    order = min((next(i for i, c in enumerate(p.coefficients) if c)
                 for p in lows if not p.is_zero()), default=None)
    if order is None:
        return False
    lowest = [p.coeff(order) for p in lows]
    ref = [target.evaluate(x) for x in xs]
    ratio = None
    for lv, rv in zip(lowest, ref):
        if rv == 0:
            if lv != 0:
                return False
            continue
        if ratio is None:
            ratio = lv / rv
        elif lv != ratio * rv:
            return False
    return ratio is not None and ratio != 0
