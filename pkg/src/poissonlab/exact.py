"""Exact rational linear algebra.

Everything here works over the rationals with ``fractions.Fraction`` entries.
Ranks, determinants and row reductions are done fraction-free on integer
rows (denominators cleared first), so intermediate growth stays polynomial.
"""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Iterable, Sequence

Rational = Fraction


def to_fraction(value) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def fraction_str(value: Fraction) -> str:
    value = to_fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


class ExactMatrix:
    """Immutable dense matrix of Fractions."""

    __slots__ = ("rows", "shape")

    def __init__(self, rows: Iterable[Iterable]):
        data = tuple(tuple(to_fraction(v) for v in row) for row in rows)
        ncols = len(data[0]) if data else 0
        if any(len(row) != ncols for row in data):
            raise ValueError("ragged rows")
        self.rows = data
        self.shape = (len(data), ncols)

    @classmethod
    def zeros(cls, nrows: int, ncols: int | None = None) -> "ExactMatrix":
        ncols = nrows if ncols is None else ncols
        return cls([[0] * ncols for _ in range(nrows)])

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        return cls([[int(i == j) for j in range(n)] for i in range(n)])

    @classmethod
    def unit(cls, n: int, i: int, j: int) -> "ExactMatrix":
        """Matrix unit E_ij (0-based indices)."""
        rows = [[0] * n for _ in range(n)]
        rows[i][j] = 1
        return cls(rows)

    @classmethod
    def diag(cls, values: Sequence) -> "ExactMatrix":
        n = len(values)
        return cls([[values[i] if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def from_flat(cls, values: Sequence, ncols: int) -> "ExactMatrix":
        return cls([values[i:i + ncols] for i in range(0, len(values), ncols)])

    @property
    def nrows(self) -> int:
        return self.shape[0]

    @property
    def ncols(self) -> int:
        return self.shape[1]

    def __getitem__(self, idx):
        i, j = idx
        return self.rows[i][j]

    def __eq__(self, other) -> bool:
        return isinstance(other, ExactMatrix) and self.rows == other.rows

    def __hash__(self) -> int:
        return hash(self.rows)

    def __repr__(self) -> str:
        body = "; ".join(" ".join(fraction_str(v) for v in row) for row in self.rows)
        return f"ExactMatrix[{body}]"

    def __add__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return ExactMatrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __sub__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return ExactMatrix([[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __neg__(self) -> "ExactMatrix":
        return ExactMatrix([[-a for a in r] for r in self.rows])

    def scale(self, c) -> "ExactMatrix":
        c = to_fraction(c)
        return ExactMatrix([[c * a for a in r] for r in self.rows])

    def __rmul__(self, c) -> "ExactMatrix":
        return self.scale(c)

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch")
        cols = list(zip(*other.rows))
        out = []
        for r in self.rows:
            nz = [(k, a) for k, a in enumerate(r) if a]
            out.append([sum((a * col[k] for k, a in nz), Fraction(0)) for col in cols])
        return ExactMatrix(out)

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix(zip(*self.rows)) if self.nrows else self

    @property
    def T(self) -> "ExactMatrix":
        return self.transpose()

    def trace(self) -> Fraction:
        return sum((self.rows[i][i] for i in range(min(self.shape))), Fraction(0))

    def flat(self) -> list[Fraction]:
        return [v for row in self.rows for v in row]

    def is_zero(self) -> bool:
        return not any(v for row in self.rows for v in row)

    def submatrix(self, row_idx: Sequence[int], col_idx: Sequence[int]) -> "ExactMatrix":
        return ExactMatrix([[self.rows[i][j] for j in col_idx] for i in row_idx])

    def power(self, k: int) -> "ExactMatrix":
        out = ExactMatrix.identity(self.nrows)
        for _ in range(k):
            out = out @ self
        return out

    def commutator(self, other: "ExactMatrix") -> "ExactMatrix":
        return self @ other - other @ self

    def to_strings(self) -> list[list[str]]:
        return [[fraction_str(v) for v in row] for row in self.rows]


def trace_pairing(x: ExactMatrix, y: ExactMatrix) -> Fraction:
    """tr(xy) without forming the product."""
    total = Fraction(0)
    for i, row in enumerate(x.rows):
        for k, a in enumerate(row):
            if a:
                b = y.rows[k][i]
                if b:
                    total += a * b
    return total


# -- fraction-free elimination ------------------------------------------------

def _integer_row(row: Sequence) -> list[int]:
    row = [to_fraction(v) for v in row]
    den = reduce(lcm, (v.denominator for v in row), 1)
    return [int(v * den) for v in row]


def _rows_of(M) -> list:
    if isinstance(M, ExactMatrix):
        return list(M.rows)
    return [list(r) for r in M]


def _bareiss(rows: list[list[int]], ncols: int, col_order: Sequence[int] | None = None) -> int:
    """Fraction-free forward elimination in place; returns the rank."""
    order = range(ncols) if col_order is None else col_order
    nrows = len(rows)
    prev = 1
    r = 0
    for c in order:
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        p = rows[r][c]
        prow = rows[r]
        for i in range(r + 1, nrows):
            row = rows[i]
            f = row[c]
            if f:
                rows[i] = [(p * a - f * b) // prev for a, b in zip(row, prow)]
            else:
                rows[i] = [(p * a) // prev for a in row]
        prev = p
        r += 1
    return r


def rank(M, col_order: Sequence[int] | None = None) -> int:
    """Exact rank over Q. ``col_order`` changes the pivot search order."""
    rows = [_integer_row(r) for r in _rows_of(M)]
    if not rows:
        return 0
    return _bareiss(rows, len(rows[0]), col_order)


def det(M: ExactMatrix) -> Fraction:
    n, m = M.shape
    if n != m:
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return Fraction(1)
    scale = Fraction(1)
    rows = []
    for row in M.rows:
        den = reduce(lcm, (v.denominator for v in row), 1)
        scale /= den
        rows.append([int(v * den) for v in row])
    sign = 1
    prev = 1
    for c in range(n):
        piv = next((i for i in range(c, n) if rows[i][c]), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            rows[c], rows[piv] = rows[piv], rows[c]
            sign = -sign
        p = rows[c][c]
        for i in range(c + 1, n):
            f = rows[i][c]
            rows[i] = [(p * a - f * b) // prev for a, b in zip(rows[i], rows[c])]
        prev = p
    return sign * Fraction(rows[n - 1][n - 1]) * scale


def rref(M) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row-echelon form (nonzero rows only) and pivot columns.

    Fraction-free Gauss-Jordan on integer rows; each surviving row is divided
    by its pivot only at the end.
    """
    rows = [_integer_row(r) for r in _rows_of(M)]
    if not rows:
        return [], []
    ncols = len(rows[0])
    nrows = len(rows)
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        prow = rows[r]
        g = reduce(gcd, prow)
        if g > 1:
            prow = rows[r] = [a // g for a in prow]
        p = prow[c]
        for i in range(nrows):
            if i == r:
                continue
            f = rows[i][c]
            if f:
                new = [p * a - f * b for a, b in zip(rows[i], prow)]
                g = reduce(gcd, new)
                rows[i] = [a // g for a in new] if g > 1 else new
        pivots.append(c)
        r += 1
    out = []
    for k, c in enumerate(pivots):
        p = rows[k][c]
        out.append([Fraction(a, p) for a in rows[k]])
    return out, pivots


def inverse(M: ExactMatrix) -> ExactMatrix:
    n, m = M.shape
    if n != m:
        raise ValueError("inverse of a non-square matrix")
    aug = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(M.rows)]
    red, pivots = rref(aug)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        raise ZeroDivisionError("matrix is singular")
    return ExactMatrix([row[n:] for row in red[:n]])


def solve(M: ExactMatrix, b: Sequence) -> list[Fraction] | None:
    """One solution of M v = b, or None when inconsistent."""
    n = M.ncols
    aug = [list(row) + [to_fraction(bi)] for row, bi in zip(M.rows, b)]
    red, pivots = rref(aug)
    if pivots and pivots[-1] == n:
        return None
    v = [Fraction(0)] * n
    for row, c in zip(red, pivots):
        v[c] = row[n]
    return v


# -- subspaces ----------------------------------------------------------------

class Subspace:
    """A subspace of Q^ambient_dim, stored by its reduced row-echelon basis."""

    __slots__ = ("ambient_dim", "basis", "pivots")

    def __init__(self, ambient_dim: int, vectors: Iterable[Sequence] = ()):
        vectors = [list(v) for v in vectors]
        if any(len(v) != ambient_dim for v in vectors):
            raise ValueError("vector length does not match ambient dimension")
        red, pivots = rref(vectors) if vectors else ([], [])
        self.ambient_dim = ambient_dim
        self.basis = tuple(tuple(r) for r in red)
        self.pivots = tuple(pivots)

    @classmethod
    def full(cls, n: int) -> "Subspace":
        return cls(n, [[int(i == j) for j in range(n)] for i in range(n)])

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __eq__(self, other) -> bool:
        return (isinstance(other, Subspace) and self.ambient_dim == other.ambient_dim
                and self.basis == other.basis)

    def __hash__(self) -> int:
        return hash((self.ambient_dim, self.basis))

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim})"

    def reduce(self, v: Sequence) -> list[Fraction]:
        v = [to_fraction(a) for a in v]
        for row, c in zip(self.basis, self.pivots):
            f = v[c]
            if f:
                v = [a - f * b for a, b in zip(v, row)]
        return v

    def contains(self, v: Sequence) -> bool:
        if len(v) != self.ambient_dim:
            raise ValueError("vector length does not match ambient dimension")
        return not any(self.reduce(v))

    def __contains__(self, v) -> bool:
        return self.contains(v)

    def __add__(self, other: "Subspace") -> "Subspace":
        return sum_of_subspaces([self, other])

    def contains_subspace(self, other: "Subspace") -> bool:
        return all(self.contains(v) for v in other.basis)

    def intersection_dim(self, other: "Subspace") -> int:
        return self.dim + other.dim - (self + other).dim

    def intersect(self, other: "Subspace") -> "Subspace":
        """Exact intersection via the kernel of [B1; -B2]^T."""
        if self.ambient_dim != other.ambient_dim:
            raise ValueError("ambient dimension mismatch")
        if not self.dim or not other.dim:
            return Subspace(self.ambient_dim)
        n = self.ambient_dim
        cols = [list(v) for v in self.basis] + [[-a for a in v] for v in other.basis]
        system = [[cols[j][i] for j in range(len(cols))] for i in range(n)]
        ker = kernel(system)
        vecs = []
        for coeffs in ker.basis:
            w = [Fraction(0)] * n
            for c, v in zip(coeffs[: self.dim], self.basis):
                if c:
                    w = [a + c * b for a, b in zip(w, v)]
            vecs.append(w)
        return Subspace(n, vecs)


def kernel(M) -> Subspace:
    """Null space {v : M v = 0}."""
    rows = _rows_of(M)
    if isinstance(M, ExactMatrix):
        ncols = M.ncols
    else:
        ncols = len(rows[0]) if rows else 0
    red, pivots = rref(rows) if rows else ([], [])
    free = [c for c in range(ncols) if c not in set(pivots)]
    vecs = []
    for fcol in free:
        v = [Fraction(0)] * ncols
        v[fcol] = Fraction(1)
        for row, c in zip(red, pivots):
            v[c] = -row[fcol]
        vecs.append(v)
    return Subspace(ncols, vecs)


def sum_of_subspaces(spaces: Sequence[Subspace]) -> Subspace:
    spaces = list(spaces)
    if not spaces:
        raise ValueError("need at least one subspace")
    n = spaces[0].ambient_dim
    if any(s.ambient_dim != n for s in spaces):
        raise ValueError("ambient dimension mismatch")
    return Subspace(n, [v for s in spaces for v in s.basis])


# -- univariate polynomials -----------------------------------------------------

class UnivariateRationalPoly:
    """Polynomial in one variable with Fraction coefficients, ascending degree."""

    __slots__ = ("coefficients",)

    def __init__(self, coefficients: Iterable = ()):
        coeffs = [to_fraction(c) for c in coefficients]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        self.coefficients = tuple(coeffs)

    @classmethod
    def constant(cls, c) -> "UnivariateRationalPoly":
        return cls([c])

    @classmethod
    def from_roots(cls, roots: Iterable) -> "UnivariateRationalPoly":
        p = cls([1])
        for r in roots:
            p = p * cls([-to_fraction(r), 1])
        return p

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coefficients) - 1

    def is_zero(self) -> bool:
        return not self.coefficients

    def is_constant(self) -> bool:
        return self.degree <= 0

    def leading(self) -> Fraction:
        return self.coefficients[-1] if self.coefficients else Fraction(0)

    def coeff(self, k: int) -> Fraction:
        return self.coefficients[k] if 0 <= k < len(self.coefficients) else Fraction(0)

    def __call__(self, t) -> Fraction:
        t = to_fraction(t)
        acc = Fraction(0)
        for c in reversed(self.coefficients):
            acc = acc * t + c
        return acc

    def __eq__(self, other) -> bool:
        return isinstance(other, UnivariateRationalPoly) and self.coefficients == other.coefficients

    def __hash__(self) -> int:
        return hash(self.coefficients)

    def __repr__(self) -> str:
        if not self.coefficients:
            return "0"
        terms = []
        for k, c in enumerate(self.coefficients):
            if c:
                terms.append(fraction_str(c) + ("" if k == 0 else "*t" if k == 1 else f"*t^{k}"))
        return " + ".join(terms)

    def __add__(self, other):
        n = max(len(self.coefficients), len(other.coefficients))
        return UnivariateRationalPoly(self.coeff(k) + other.coeff(k) for k in range(n))

    def __sub__(self, other):
        n = max(len(self.coefficients), len(other.coefficients))
        return UnivariateRationalPoly(self.coeff(k) - other.coeff(k) for k in range(n))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return UnivariateRationalPoly(c * other for c in self.coefficients)
        if self.is_zero() or other.is_zero():
            return UnivariateRationalPoly()
        out = [Fraction(0)] * (len(self.coefficients) + len(other.coefficients) - 1)
        for i, a in enumerate(self.coefficients):
            for j, b in enumerate(other.coefficients):
                out[i + j] += a * b
        return UnivariateRationalPoly(out)

    __rmul__ = __mul__

    def divmod(self, other) -> tuple["UnivariateRationalPoly", "UnivariateRationalPoly"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coefficients)
        dq = other.degree
        lead = other.leading()
        quot = [Fraction(0)] * max(len(rem) - dq, 0)
        for k in range(len(rem) - 1, dq - 1, -1):
            f = rem[k] / lead
            if f:
                quot[k - dq] = f
                for j, b in enumerate(other.coefficients):
                    rem[k - dq + j] -= f * b
        return UnivariateRationalPoly(quot), UnivariateRationalPoly(rem[:dq] if dq > 0 else [])

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def monic(self) -> "UnivariateRationalPoly":
        if self.is_zero():
            return self
        lead = self.leading()
        return UnivariateRationalPoly(c / lead for c in self.coefficients)

    def derivative(self) -> "UnivariateRationalPoly":
        return UnivariateRationalPoly(k * c for k, c in enumerate(self.coefficients) if k)

    def gcd(self, other) -> "UnivariateRationalPoly":
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    def squarefree_part(self) -> "UnivariateRationalPoly":
        if self.is_constant():
            return UnivariateRationalPoly([1]) if not self.is_zero() else self
        return (self // self.gcd(self.derivative())).monic()

    def squarefree_decomposition(self) -> list[tuple["UnivariateRationalPoly", int]]:
        """Yun's algorithm: factors f_i (monic, squarefree, coprime) with multiplicity i."""
        if self.is_constant():
            return []
        f = self.monic()
        out = []
        a = f.gcd(f.derivative())
        b = f // a
        c = f.derivative() // a
        d = c - b.derivative()
        i = 1
        while not b.is_constant():
            a = b.gcd(d)
            b = b // a
            c = d // a if not d.is_zero() else d
            d = c - b.derivative()
            if not a.is_constant():
                out.append((a.monic(), i))
            i += 1
        return out

    def rational_roots(self) -> list[Fraction]:
        """All distinct rational roots, by the rational root test."""
        if self.is_zero():
            raise ValueError("zero polynomial has every root")
        coeffs = list(self.coefficients)
        roots = []
        if coeffs[0] == 0:
            roots.append(Fraction(0))
            while coeffs and coeffs[0] == 0:
                coeffs.pop(0)
        if len(coeffs) <= 1:
            return roots
        ints = _integer_row(coeffs)
        a0, an = abs(ints[0]), abs(ints[-1])
        p = UnivariateRationalPoly(coeffs)
        for num in _divisors(a0):
            for den in _divisors(an):
                if gcd(num, den) != 1:
                    continue
                for cand in (Fraction(num, den), Fraction(-num, den)):
                    if p(cand) == 0 and cand not in roots:
                        roots.append(cand)
        return sorted(roots)


def _divisors(n: int) -> list[int]:
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def interpolate(points: Sequence[tuple]) -> UnivariateRationalPoly:
    """Unique polynomial of degree < len(points) through the given points (Newton form)."""
    xs = [to_fraction(p[0]) for p in points]
    ys = [to_fraction(p[1]) for p in points]
    if len(set(xs)) != len(xs):
        raise ValueError("repeated abscissa")
    n = len(xs)
    coef = list(ys)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    poly = UnivariateRationalPoly([coef[-1]] if n else [])
    for i in range(n - 2, -1, -1):
        poly = poly * UnivariateRationalPoly([-xs[i], 1]) + UnivariateRationalPoly([coef[i]])
    return poly


def interpolate_vectors(ts: Sequence, values: Sequence[Sequence]) -> list[list[Fraction]]:
    """Componentwise interpolation; returns coefficient vectors by ascending degree."""
    ts = [to_fraction(t) for t in ts]
    width = len(values[0])
    polys = [interpolate(list(zip(ts, [v[c] for v in values]))) for c in range(width)]
    return [[p.coeff(k) for p in polys] for k in range(len(ts))]
