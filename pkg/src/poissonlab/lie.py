"""Classical Lie algebras as spaces of rational matrices.

``g`` is identified with ``g*`` through the trace form <x, y> = tr(xy).
Orthogonal algebras use the split diagonal form diag(1, -1, 1, -1, ...):
deleting leading rows/columns keeps the chain so_n > so_{n-1} > ... inside
the same realisation, and nilpotent elements exist over Q.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Sequence

from .exact import (ExactMatrix, Subspace, inverse, kernel, rank, rref,
                    to_fraction, trace_pairing)
from .partitions import Partition, jordan_type, partitions

FAMILIES = ("gl", "sl", "so", "sp")
DEFAULT_BOUND = 10


class NotInAlgebra(ValueError):
    pass


def split_signs(n: int, start: int = 1) -> tuple[int, ...]:
    return tuple(start if i % 2 == 0 else -start for i in range(n))


def _sparse(M: ExactMatrix) -> tuple[tuple[int, int, Fraction], ...]:
    return tuple((i, j, v) for i, row in enumerate(M.rows) for j, v in enumerate(row) if v)


class LieAlgebraSpec:
    """A classical matrix Lie algebra with a fixed basis.

    ``family`` is one of gl, sl, so, sp and ``n`` is the matrix size
    (so ``sp`` with n = 4 is sp_4).  ``signs`` fixes the diagonal symmetric
    form for ``so``.
    """

    def __init__(self, family: str, n: int, signs: Sequence[int] | None = None):
        if family not in FAMILIES:
            raise ValueError(f"unknown family {family!r}")
        if n < 1 or (family == "sp" and n % 2):
            raise ValueError(f"bad size {n} for {family}")
        self.family = family
        self.n = n
        if family == "so":
            self.signs = tuple(signs) if signs is not None else split_signs(n)
            if len(self.signs) != n or any(s not in (1, -1) for s in self.signs):
                raise ValueError("so needs n signs in {1, -1}")
        else:
            self.signs = None
        self.basis = tuple(self._make_basis())
        self._basis_sparse = tuple(_sparse(b) for b in self.basis)

    # -- identity ---------------------------------------------------------------

    @property
    def identifier(self) -> str:
        return f"{self.family}:{self.n}"

    def __repr__(self) -> str:
        return f"LieAlgebraSpec({self.identifier})"

    def __eq__(self, other) -> bool:
        return (isinstance(other, LieAlgebraSpec) and self.family == other.family
                and self.n == other.n and self.signs == other.signs)

    def __hash__(self) -> int:
        return hash((self.family, self.n, self.signs))

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def rank_l(self) -> int:
        n = self.n
        return {"gl": n, "sl": n - 1, "so": n // 2, "sp": n // 2}[self.family]

    @property
    def magic_number(self) -> int:
        """(dim g + rk g) / 2."""
        return (self.dim + self.rank_l) // 2

    @cached_property
    def form(self) -> ExactMatrix | None:
        n = self.n
        if self.family == "so":
            return ExactMatrix.diag(self.signs)
        if self.family == "sp":
            h = n // 2
            return ExactMatrix([[1 if j == i + h else -1 if i == j + h else 0
                                 for j in range(n)] for i in range(n)])
        return None

    # -- basis ------------------------------------------------------------------

    def _make_basis(self):
        n = self.n
        E = ExactMatrix.unit
        if self.family == "gl":
            return [E(n, i, j) for i in range(n) for j in range(n)]
        if self.family == "sl":
            upper = [E(n, i, j) for i in range(n) for j in range(i + 1, n)]
            cartan = [E(n, i, i) - E(n, i + 1, i + 1) for i in range(n - 1)]
            lower = [E(n, i, j) for i in range(n) for j in range(i)]
            return upper + cartan + lower
        if self.family == "so":
            s = self.signs
            return [E(n, i, j).scale(s[i]) - E(n, j, i).scale(s[j])
                    for i in range(n) for j in range(i + 1, n)]
        h = n // 2
        out = [E(n, i, j) - E(n, h + j, h + i) for i in range(h) for j in range(h)]
        for i in range(h):
            for j in range(i, h):
                out.append(E(n, i, h + j) + E(n, j, h + i) if i != j else E(n, i, h + i))
        for i in range(h):
            for j in range(i, h):
                out.append(E(n, h + i, j) + E(n, h + j, i) if i != j else E(n, h + i, i))
        return out

    @cached_property
    def _coordinate_map(self):
        """Pivot entries and inverse used to read coordinates off a matrix."""
        flats = [b.flat() for b in self.basis]
        _, pivots = rref(flats)
        square = ExactMatrix([[f[p] for p in pivots] for f in flats])
        # coords @ square == x_flat[pivots]
        return pivots, inverse(square)

    @cached_property
    def gram_inverse(self) -> ExactMatrix:
        gram = ExactMatrix([[trace_pairing(a, b) for b in self.basis] for a in self.basis])
        return inverse(gram)

    @cached_property
    def structure_constants(self) -> dict[tuple[int, int], tuple[tuple[int, Fraction], ...]]:
        """[b_i, b_j] = sum_k c_ij^k b_k for i < j, stored sparsely."""
        out = {}
        for i in range(self.dim):
            for j in range(i + 1, self.dim):
                c = self.coords(self.basis[i].commutator(self.basis[j]), check=False)
                out[(i, j)] = tuple((k, v) for k, v in enumerate(c) if v)
        return out

    # -- membership and coordinates -------------------------------------------

    def contains(self, x: ExactMatrix) -> bool:
        if x.shape != (self.n, self.n):
            return False
        if self.family == "gl":
            return True
        if self.family == "sl":
            return x.trace() == 0
        F = self.form
        return (x.T @ F + F @ x).is_zero()

    def check(self, x: ExactMatrix) -> None:
        if not self.contains(x):
            raise NotInAlgebra(f"matrix is not in {self.identifier}")

    def coords(self, x: ExactMatrix, check: bool = True) -> list[Fraction]:
        if check:
            self.check(x)
        if self.family == "gl":
            return x.flat()
        pivots, inv = self._coordinate_map
        flat = x.flat()
        vals = [flat[p] for p in pivots]
        return [sum((v * inv.rows[r][c] for r, v in enumerate(vals) if v), Fraction(0))
                for c in range(self.dim)]

    def element(self, coords: Sequence) -> ExactMatrix:
        n = self.n
        acc = [[Fraction(0)] * n for _ in range(n)]
        for c, sp in zip(coords, self._basis_sparse):
            c = to_fraction(c)
            if c:
                for i, j, v in sp:
                    acc[i][j] += c * v
        return ExactMatrix(acc)

    def pairings(self, x: ExactMatrix) -> list[Fraction]:
        """<x, b_k> for every basis element."""
        out = []
        rows = x.rows
        for sp in self._basis_sparse:
            out.append(sum((v * rows[j][i] for i, j, v in sp), Fraction(0)))
        return out

    def project(self, G: ExactMatrix) -> ExactMatrix:
        """The xi in g with <xi, y> = tr(G y) for all y in g."""
        if self.family == "gl":
            return G
        c = self.pairings(G)
        inv = self.gram_inverse
        coords = [sum((c[k] * inv.rows[k][j] for k in range(self.dim) if c[k]), Fraction(0))
                  for j in range(self.dim)]
        return self.element(coords)

    # -- chain ------------------------------------------------------------------

    def level(self, m: int) -> "LieAlgebraSpec":
        """The m-th chain member, acting on the last n - m coordinates."""
        if not 0 <= m < self.n:
            raise ValueError("chain level out of range")
        if m == 0:
            return self
        signs = self.signs[m:] if self.family == "so" else None
        if self.family == "sp":
            raise ValueError("no chain is fixed for sp")
        return classical(self.family, self.n - m, signs)

    def corner(self, x: ExactMatrix, m: int) -> ExactMatrix:
        """South-east corner of size n - m."""
        idx = range(m, self.n)
        return x.submatrix(idx, idx)

    def embed(self, y: ExactMatrix, m: int) -> ExactMatrix:
        n = self.n
        rows = [[Fraction(0)] * n for _ in range(n)]
        for i, row in enumerate(y.rows):
            for j, v in enumerate(row):
                rows[m + i][m + j] = v
        return ExactMatrix(rows)


@lru_cache(maxsize=None)
def classical(family: str, n: int, signs: tuple[int, ...] | None = None) -> LieAlgebraSpec:
    return LieAlgebraSpec(family, n, signs)


def parse_algebra(text: str) -> LieAlgebraSpec:
    """Parse ``gl:n``, ``sl:n``, ``so:n`` or ``sp:2n``."""
    try:
        family, size = text.strip().lower().split(":")
        return classical(family, int(size))
    except (ValueError, TypeError) as exc:
        raise ValueError(f"bad algebra identifier {text!r}") from exc


@dataclass(frozen=True)
class ChainSpec:
    """The fixed chain of corner subalgebras of a gl or so algebra."""

    parent: LieAlgebraSpec
    levels: tuple[tuple[int, ...], ...] = field(init=False)

    def __post_init__(self):
        if self.parent.family not in ("gl", "so", "sl"):
            raise ValueError("chains are fixed for gl, sl and so only")
        last = self.parent.n - (1 if self.parent.family != "so" else 2)
        object.__setattr__(self, "levels",
                           tuple(tuple(range(m, self.parent.n)) for m in range(last + 1)))

    def algebra(self, m: int) -> LieAlgebraSpec:
        return self.parent.level(m)

    def corner(self, x: ExactMatrix, m: int) -> ExactMatrix:
        return self.parent.corner(x, m)


# -- skew forms, centralisers, index ------------------------------------------

def skew_form(g: LieAlgebraSpec, x: ExactMatrix) -> ExactMatrix:
    """The form (b_i, b_j) -> <x, [b_i, b_j]> on the basis of g."""
    g.check(x)
    w = g.pairings(x)
    d = g.dim
    rows = [[Fraction(0)] * d for _ in range(d)]
    for (i, j), terms in g.structure_constants.items():
        v = sum((c * w[k] for k, c in terms if w[k]), Fraction(0))
        if v:
            rows[i][j] = v
            rows[j][i] = -v
    return ExactMatrix(rows)


def centralizer(g: LieAlgebraSpec, x: ExactMatrix) -> Subspace:
    """{xi in g : [xi, x] = 0} in basis coordinates."""
    g.check(x)
    cols = [b.commutator(x).flat() for b in g.basis]
    system = [list(r) for r in zip(*cols)]
    return kernel(system)


def orbit_dim(g: LieAlgebraSpec, x: ExactMatrix) -> int:
    return rank(skew_form(g, x))


def is_regular(g: LieAlgebraSpec, x: ExactMatrix) -> bool:
    return g.dim - orbit_dim(g, x) == g.rank_l


def subspace_elements(g: LieAlgebraSpec, space: Subspace) -> list[ExactMatrix]:
    return [g.element(v) for v in space.basis]


class NotSubalgebra(ValueError):
    pass


def form_on(y: ExactMatrix, elements: Sequence[ExactMatrix]) -> ExactMatrix:
    """Matrix of (u, v) -> tr(y [u, v]) on the given elements."""
    brackets = [y.commutator(u) for u in elements]
    return ExactMatrix([[trace_pairing(c, v) for v in elements] for c in brackets])


@dataclass(frozen=True)
class IndexCertificate:
    value: int
    witness: ExactMatrix
    ranks: tuple[int, ...]
    agreeing: int

    @property
    def trials(self) -> int:
        return len(self.ranks)


def random_rational(rng: random.Random, bound: int = DEFAULT_BOUND) -> Fraction:
    return Fraction(rng.randint(-bound, bound), rng.randint(1, bound))


def random_element(g: LieAlgebraSpec, rng: random.Random, bound: int = DEFAULT_BOUND) -> ExactMatrix:
    return g.element([random_rational(rng, bound) for _ in range(g.dim)])


def index(g: LieAlgebraSpec, elements: Sequence[ExactMatrix], rng: random.Random,
          trials: int = 5, bound: int = DEFAULT_BOUND, check: bool = True) -> IndexCertificate:
    """Randomised index of the subalgebra of g spanned by ``elements``.

    Functionals on q are restrictions <y, .> of random y in g.  The value
    dim q - max rank is exact as an upper bound (the witness certifies it);
    ``agreeing`` counts trials that attained the maximum.
    """
    elements = list(elements)
    if check:
        span = Subspace(g.n * g.n, [e.flat() for e in elements])
        if span.dim != len(elements):
            raise ValueError("elements are linearly dependent")
        for i, u in enumerate(elements):
            for v in elements[i + 1:]:
                if not span.contains(u.commutator(v).flat()):
                    raise NotSubalgebra("span is not closed under the bracket")
    dim_q = len(elements)
    if dim_q == 0:
        return IndexCertificate(0, ExactMatrix.zeros(g.n), (0,) * trials, trials)
    ranks = []
    best = (-1, None)
    for _ in range(trials):
        y = random_element(g, rng, bound)
        r = rank(form_on(y, elements))
        ranks.append(r)
        if r > best[0]:
            best = (r, y)
    top = best[0]
    return IndexCertificate(dim_q - top, best[1], tuple(ranks), sum(1 for r in ranks if r == top))


def sample_regular(g: LieAlgebraSpec, rng: random.Random, bound: int = DEFAULT_BOUND,
                   budget: int = 100) -> ExactMatrix:
    for _ in range(budget):
        x = random_element(g, rng, bound)
        if is_regular(g, x):
            return x
    raise RuntimeError(f"no regular element of {g.identifier} found in {budget} draws")


def principal_triple_gl(n: int) -> tuple[ExactMatrix, ExactMatrix, ExactMatrix]:
    """(e, h, f) with e the upper regular Jordan block; relations verified."""
    if n < 2:
        raise ValueError("principal triples need n >= 2")
    E = ExactMatrix.unit
    e = ExactMatrix.zeros(n)
    f = ExactMatrix.zeros(n)
    for i in range(n - 1):
        e = e + E(n, i, i + 1)
        f = f + E(n, i + 1, i).scale((i + 1) * (n - 1 - i))
    h = ExactMatrix.diag([n - 1 - 2 * i for i in range(n)])
    if (h.commutator(e) != e.scale(2) or h.commutator(f) != f.scale(-2)
            or e.commutator(f) != h):
        raise AssertionError("sl2 relations failed")
    return e, h, f


def kostant_section(n: int, coords: Sequence) -> ExactMatrix:
    """f + y with y in the centraliser of e, y = sum c_k e^k (k = 1..n-1)."""
    e, _, f = principal_triple_gl(n)
    out = f
    power = ExactMatrix.identity(n)
    for c in coords:
        power = power @ e
        out = out + power.scale(c)
    return out


# -- conjugation -----------------------------------------------------------------

def _random_unipotent_pair(n: int, rng: random.Random, bound: int) -> tuple[ExactMatrix, ExactMatrix]:
    rows_l = [[(1 if i == j else rng.randint(-bound, bound) if i > j else 0) for j in range(n)]
              for i in range(n)]
    rows_u = [[(1 if i == j else rng.randint(-bound, bound) if i < j else 0) for j in range(n)]
              for i in range(n)]
    return ExactMatrix(rows_l), ExactMatrix(rows_u)


def random_group_element(g: LieAlgebraSpec, rng: random.Random,
                         bound: int = DEFAULT_BOUND) -> tuple[ExactMatrix, ExactMatrix]:
    """A random group element and its inverse."""
    n = g.n
    if g.family in ("gl", "sl"):
        L, U = _random_unipotent_pair(n, rng, bound)
        P = L @ U
        return P, inverse(P)
    identity = ExactMatrix.identity(n)
    while True:
        s = random_element(g, rng, bound)
        try:
            inv = inverse(identity + s)
        except ZeroDivisionError:
            continue
        P = (identity - s) @ inv
        return P, (identity + s) @ inverse(identity - s)


def random_conjugate(g: LieAlgebraSpec, x: ExactMatrix, rng: random.Random,
                     bound: int = DEFAULT_BOUND) -> ExactMatrix:
    g.check(x)
    P, Pinv = random_group_element(g, rng, bound)
    return P @ x @ Pinv


# -- orbit representatives ------------------------------------------------------

def jordan_nilpotent(parts: Sequence[int]) -> ExactMatrix:
    """Block-diagonal nilpotent with upper shift blocks of the given sizes."""
    n = sum(parts)
    rows = [[0] * n for _ in range(n)]
    start = 0
    for p in parts:
        for i in range(p - 1):
            rows[start + i][start + i + 1] = 1
        start += p
    return ExactMatrix(rows)


def nilpotent_jordan_type(x: ExactMatrix) -> Partition:
    n = x.nrows
    ranks = [n]
    power = ExactMatrix.identity(n)
    while ranks[-1]:
        power = power @ x
        r = rank(power)
        if r == ranks[-1]:
            raise ValueError("matrix is not nilpotent")
        ranks.append(r)
    return jordan_type(ranks)


def _orthogonal_nilpotent(parts: Partition, signs: Sequence[int]) -> ExactMatrix:
    """Nilpotent element of so(diag(signs)) with Jordan type ``parts``.

    Builds each Jordan block with an invariant form, splits the result into
    hyperbolic pairs, and maps those onto the hyperbolic pairs of the
    target form.
    """
    n = parts.n
    blocks: list[tuple[str, int]] = []
    counts = {p: parts.count(p) for p in set(parts)}
    for p in sorted(counts, reverse=True):
        if p % 2:
            blocks.extend([("odd", p)] * counts[p])
        else:
            blocks.extend([("even", p)] * (counts[p] // 2))
    # build N and Gram matrix on the model space
    N = [[Fraction(0)] * n for _ in range(n)]
    F = [[Fraction(0)] * n for _ in range(n)]
    hyperbolic: list[tuple[list, list]] = []
    middles: list[tuple[int, int]] = []   # (index, norm)
    offset = 0
    want_sign = 1

    def vec(i):
        v = [Fraction(0)] * n
        v[i] = Fraction(1)
        return v

    for kind, p in blocks:
        if kind == "odd":
            mid = (p - 1) // 2
            # scale c so that the middle vector has norm want_sign
            c = want_sign * (-1) ** mid
            for i in range(p):
                if i + 1 < p:
                    N[offset + i + 1][offset + i] = Fraction(1)
                F[offset + i][offset + p - 1 - i] = Fraction(c * (-1) ** i)
            for i in range(mid):
                scale = Fraction(1, c * (-1) ** i)
                hyperbolic.append((vec(offset + i), [a * scale for a in vec(offset + p - 1 - i)]))
            middles.append((offset + mid, want_sign))
            want_sign = -want_sign
            offset += p
        else:
            for i in range(p):
                if i + 1 < p:
                    N[offset + i + 1][offset + i] = Fraction(1)
                    N[offset + p + i + 1][offset + p + i] = Fraction(1)
                val = Fraction((-1) ** i)
                F[offset + i][offset + p + p - 1 - i] = val
                F[offset + p + p - 1 - i][offset + i] = val
            for i in range(p):
                scale = Fraction((-1) ** i)
                hyperbolic.append((vec(offset + i), [a * scale for a in vec(offset + 2 * p - 1 - i)]))
            offset += 2 * p
    anisotropic = None
    for a in range(0, len(middles) - 1, 2):
        (ia, _), (ib, _) = middles[a], middles[a + 1]
        u = [x + y for x, y in zip(vec(ia), vec(ib))]
        w = [(x - y) / 2 for x, y in zip(vec(ia), vec(ib))]
        hyperbolic.append((u, w))
    if len(middles) % 2:
        anisotropic = vec(middles[-1][0])
    # target hyperbolic basis for diag(signs): pair coordinates with opposite signs
    target_pairs = []
    plus = [i for i, s in enumerate(signs) if s == 1]
    minus = [i for i, s in enumerate(signs) if s == -1]
    for i, j in zip(plus, minus):
        u = vec(i)
        u[j] = Fraction(1)
        w = [Fraction(0)] * n
        w[i] = Fraction(1, 2)
        w[j] = Fraction(-1, 2)
        target_pairs.append((u, w))
    leftovers = plus[len(minus):] + minus[len(plus):]
    if len(leftovers) > 1 or len(target_pairs) != len(hyperbolic):
        raise ValueError("form is not split; no rational nilpotent of this type")
    src_cols, dst_cols = [], []
    for (p, q), (u, w) in zip(hyperbolic, target_pairs):
        src_cols += [p, q]
        dst_cols += [u, w]
    if anisotropic is not None:
        if not leftovers or signs[leftovers[0]] != 1:
            raise ValueError("anisotropic part does not match the target form")
        src_cols.append(anisotropic)
        dst_cols.append(vec(leftovers[0]))
    Msrc = ExactMatrix(zip(*src_cols))
    Mdst = ExactMatrix(zip(*dst_cols))
    Fm = ExactMatrix(F)
    if Msrc.T @ Fm @ Msrc != Mdst.T @ ExactMatrix.diag(signs) @ Mdst:
        raise AssertionError("isometry construction failed")
    phi = Mdst @ inverse(Msrc)
    return phi @ ExactMatrix(N) @ inverse(phi)


@dataclass(frozen=True)
class NilpotentOrbit:
    partition: Partition
    label: str
    representative: ExactMatrix


def nilpotent_representative(g: LieAlgebraSpec, parts: Partition, variant: int = 0) -> ExactMatrix:
    parts = Partition(parts)
    if parts.n != g.n:
        raise ValueError("partition size does not match the algebra")
    if g.family in ("gl", "sl"):
        return jordan_nilpotent(parts)
    if g.family == "so":
        if not parts.is_orthogonal():
            raise ValueError(f"{parts} is not an orthogonal partition")
        e = _orthogonal_nilpotent(parts, g.signs)
        if variant:
            R = ExactMatrix.diag([-1] + [1] * (g.n - 1))
            e = R @ e @ R
        return e
    raise NotImplementedError("nilpotent representatives are built for gl, sl and so")


def nilpotent_orbits(g: LieAlgebraSpec) -> list[NilpotentOrbit]:
    out = []
    for parts in partitions(g.n):
        if g.family == "so":
            if not parts.is_orthogonal():
                continue
            if parts.is_very_even():
                for variant, tag in ((0, "+"), (1, "-")):
                    out.append(NilpotentOrbit(parts, f"{parts}{tag}",
                                              nilpotent_representative(g, parts, variant)))
                continue
        out.append(NilpotentOrbit(parts, str(parts), nilpotent_representative(g, parts)))
    return out


def semisimple_representative(g: LieAlgebraSpec, values: Sequence) -> ExactMatrix:
    """Semisimple element with rational spectrum.

    gl/sl: diag(values) (sl requires trace zero).  so: ``values`` are the
    eigenvalue pairs +-t_i placed on the hyperbolic pairs of the split form;
    zero pads the rest.
    """
    values = [to_fraction(v) for v in values]
    n = g.n
    if g.family in ("gl", "sl"):
        if len(values) != n:
            raise ValueError("need n diagonal values")
        x = ExactMatrix.diag(values)
        g.check(x)
        return x
    if g.family == "so":
        plus = [i for i, s in enumerate(g.signs) if s == 1]
        minus = [i for i, s in enumerate(g.signs) if s == -1]
        pairs = list(zip(plus, minus))
        if len(values) > len(pairs):
            raise ValueError(f"so:{n} has only {len(pairs)} eigenvalue pairs")
        rows = [[Fraction(0)] * n for _ in range(n)]
        # on u = e_i + e_j, w = (e_i - e_j)/2: x u = t u, x w = -t w
        for (i, j), t in zip(pairs, values):
            rows[i][j] = t
            rows[j][i] = t
        x = ExactMatrix(rows)
        g.check(x)
        return x
    raise NotImplementedError("semisimple representatives are built for gl, sl and so")
