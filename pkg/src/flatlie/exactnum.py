"""Exact rational scalars, dense matrices and canonical subspaces.

Every quantity in the package lives over the rationals.  Scalars are
``gmpy2.mpq`` values (always reduced, positive denominator); matrices are
small immutable row-major tables; subspaces are stored by their reduced row
echelon basis so that two equal subspaces compare equal as Python objects.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product
from numbers import Rational as _AbstractRational
from typing import Iterable, Sequence

from gmpy2 import mpq

from .errors import DegenerateFormError, ShapeError

Rational = type(mpq())
Vector = tuple  # tuple of Rational

_ZERO = mpq(0)
_ONE = mpq(1)


def Q(x) -> Rational:
    """Coerce ``x`` to an exact rational.

    Accepts integers, ``Fraction``, ``mpq`` and strings such as ``"3/5"``.
    Floats are rejected because they silently carry binary rounding.
    """
    if isinstance(x, Rational):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(x, int):
        return mpq(x)
    if isinstance(x, Fraction):
        return mpq(x.numerator, x.denominator)
    if isinstance(x, str):
        text = x.strip()
        try:
            return mpq(text)
        except ValueError:
            raise ValueError(f"not a rational literal: {x!r}") from None
    if isinstance(x, _AbstractRational):
        return mpq(x.numerator, x.denominator)
    raise TypeError(f"cannot build an exact rational from {type(x).__name__}")


def format_rational(q) -> str:
    """Serialize as ``"p/q"``, or ``"p"`` when the denominator is 1."""
    q = Q(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def vec(values: Iterable) -> Vector:
    return tuple(Q(v) for v in values)


def zero_vector(n: int) -> Vector:
    return (_ZERO,) * n


def unit_vector(n: int, i: int) -> Vector:
    return tuple(_ONE if k == i else _ZERO for k in range(n))


def add(u: Vector, v: Vector) -> Vector:
    return tuple(a + b for a, b in zip(u, v))


def sub(u: Vector, v: Vector) -> Vector:
    return tuple(a - b for a, b in zip(u, v))


def scale(c, u: Vector) -> Vector:
    c = Q(c)
    return tuple(c * a for a in u)


def combine(coeffs: Sequence, vectors: Sequence[Vector], n: int) -> Vector:
    """Linear combination ``sum(c_k * v_k)`` in dimension ``n``."""
    out = [_ZERO] * n
    for c, v in zip(coeffs, vectors):
        if c:
            for k in range(n):
                if v[k]:
                    out[k] += c * v[k]
    return tuple(out)


def is_zero_vector(u: Vector) -> bool:
    return not any(u)


def max_norm(u: Iterable) -> Rational:
    return max((abs(a) for a in u), default=_ZERO)


class Matrix:
    """Immutable dense matrix over the rationals.

    Columns are images of basis vectors: ``m @ unit_vector(n, j)`` is column
    ``j``.
    """

    __slots__ = ("rows", "cols", "_data")

    def __init__(self, rows: Sequence[Sequence]):
        data = tuple(tuple(Q(x) for x in row) for row in rows)
        ncols = len(data[0]) if data else 0
        if any(len(r) != ncols for r in data):
            raise ShapeError("ragged matrix rows")
        self.rows = len(data)
        self.cols = ncols
        self._data = data

    @classmethod
    def _raw(cls, data: tuple, rows: int, cols: int) -> "Matrix":
        m = object.__new__(cls)
        m.rows = rows
        m.cols = cols
        m._data = data
        return m

    @classmethod
    def zeros(cls, rows: int, cols: int | None = None) -> "Matrix":
        cols = rows if cols is None else cols
        return cls._raw(tuple((_ZERO,) * cols for _ in range(rows)), rows, cols)

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls._raw(tuple(unit_vector(n, i) for i in range(n)), n, n)

    @classmethod
    def diag(cls, values: Sequence) -> "Matrix":
        vals = vec(values)
        n = len(vals)
        return cls._raw(
            tuple(tuple(vals[i] if i == j else _ZERO for j in range(n)) for i in range(n)),
            n,
            n,
        )

    @classmethod
    def from_columns(cls, columns: Sequence[Vector], rows: int | None = None) -> "Matrix":
        columns = [vec(c) for c in columns]
        if not columns:
            return cls.zeros(rows or 0, 0)
        n = len(columns[0])
        return cls._raw(tuple(tuple(c[i] for c in columns) for i in range(n)), n, len(columns))

    def __getitem__(self, idx):
        i, j = idx
        return self._data[i][j]

    def row(self, i: int) -> Vector:
        return self._data[i]

    def col(self, j: int) -> Vector:
        return tuple(r[j] for r in self._data)

    def tolist(self) -> list[list]:
        return [list(r) for r in self._data]

    @property
    def T(self) -> "Matrix":
        return Matrix._raw(tuple(zip(*self._data)) if self.rows else (), self.cols, self.rows)

    def _check_same(self, other: "Matrix") -> None:
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ShapeError(f"shape mismatch {self.rows}x{self.cols} vs {other.rows}x{other.cols}")

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check_same(other)
        return Matrix._raw(
            tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self._data, other._data)),
            self.rows,
            self.cols,
        )

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check_same(other)
        return Matrix._raw(
            tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(self._data, other._data)),
            self.rows,
            self.cols,
        )

    def __neg__(self) -> "Matrix":
        return Matrix._raw(tuple(tuple(-a for a in r) for r in self._data), self.rows, self.cols)

    def __mul__(self, c) -> "Matrix":
        if isinstance(c, Matrix):
            raise TypeError("use @ for matrix products")
        c = Q(c)
        return Matrix._raw(tuple(tuple(c * a for a in r) for r in self._data), self.rows, self.cols)

    __rmul__ = __mul__

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            if self.cols != other.rows:
                raise ShapeError("inner dimensions differ")
            ocols = other.T._data
            data = tuple(
                tuple(_dot(r, c) for c in ocols) for r in self._data
            )
            return Matrix._raw(data, self.rows, other.cols)
        v = tuple(other)
        if len(v) != self.cols:
            raise ShapeError("vector length does not match matrix columns")
        return tuple(_dot(r, v) for r in self._data)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.rows == other.rows and self.cols == other.cols and self._data == other._data

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, self._data))

    def __repr__(self) -> str:
        body = ", ".join("[" + ", ".join(format_rational(a) for a in r) + "]" for r in self._data)
        return f"Matrix([{body}])"

    def is_zero(self) -> bool:
        return not any(any(r) for r in self._data)

    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_symmetric(self) -> bool:
        return self.is_square() and self == self.T

    def trace(self) -> Rational:
        if not self.is_square():
            raise ShapeError("trace of a non-square matrix")
        return sum((self._data[i][i] for i in range(self.rows)), _ZERO)

    def __pow__(self, k: int) -> "Matrix":
        if not self.is_square() or k < 0:
            raise ShapeError("power needs a square matrix and k >= 0")
        out = Matrix.identity(self.rows)
        base = self
        while k:
            if k & 1:
                out = out @ base
            base = base @ base
            k >>= 1
        return out

    def first_difference(self, other: "Matrix") -> tuple[int, int] | None:
        """Index of the first entry where the two matrices differ."""
        self._check_same(other)
        for i in range(self.rows):
            for j in range(self.cols):
                if self._data[i][j] != other._data[i][j]:
                    return (i, j)
        return None

    def vectorized(self) -> Vector:
        return tuple(a for r in self._data for a in r)


def _dot(u, v):
    s = _ZERO
    for a, b in zip(u, v):
        if a and b:
            s += a * b
    return s


def dot(u: Vector, v: Vector) -> Rational:
    return _dot(u, v)


def bilinear(s: Matrix, u: Vector, v: Vector) -> Rational:
    """``u^T S v``."""
    return _dot(u, s @ v)


def commutator(a: Matrix, b: Matrix) -> Matrix:
    return a @ b - b @ a


def rref(m: Matrix) -> tuple[Matrix, tuple[int, ...]]:
    """Reduced row echelon form by exact Gauss-Jordan elimination.

    Pivots are chosen leftmost-first, and within a column the first nonzero
    row is used, so the output is fully deterministic.
    """
    a = [list(r) for r in m._data]
    rows, cols = m.rows, m.cols
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        p = next((i for i in range(r, rows) if a[i][c]), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        pr = a[r]
        for i in range(rows):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], pr)]
        pivots.append(c)
        r += 1
    return Matrix._raw(tuple(tuple(row) for row in a), rows, cols), tuple(pivots)


def rank(m: Matrix) -> int:
    return len(rref(m)[1])


def determinant(m: Matrix) -> Rational:
    if not m.is_square():
        raise ShapeError("determinant of a non-square matrix")
    a = [list(r) for r in m._data]
    n = m.rows
    det = _ONE
    for c in range(n):
        p = next((i for i in range(c, n) if a[i][c]), None)
        if p is None:
            return _ZERO
        if p != c:
            a[c], a[p] = a[p], a[c]
            det = -det
        det *= a[c][c]
        inv = 1 / a[c][c]
        for i in range(c + 1, n):
            if a[i][c]:
                f = a[i][c] * inv
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return det


def inverse(m: Matrix) -> Matrix:
    if not m.is_square():
        raise ShapeError("inverse of a non-square matrix")
    n = m.rows
    aug = Matrix._raw(
        tuple(r + unit_vector(n, i) for i, r in enumerate(m._data)), n, 2 * n
    )
    red, piv = rref(aug)
    if piv[:n] != tuple(range(n)):
        raise DegenerateFormError("matrix is singular")
    return Matrix._raw(tuple(r[n:] for r in red._data), n, n)


def kernel(m: Matrix) -> "Subspace":
    """Null space of ``m`` as a canonical subspace of ``Q^cols``."""
    red, piv = rref(m)
    n = m.cols
    free = [j for j in range(n) if j not in piv]
    basis = []
    for f in free:
        v = [_ZERO] * n
        v[f] = _ONE
        for r, p in enumerate(piv):
            v[p] = -red[r, f]
        basis.append(tuple(v))
    return Subspace.span(n, basis)


def is_nilpotent(m: Matrix) -> bool:
    return (m ** m.rows).is_zero()


def nilpotency_index(m: Matrix) -> int | None:
    """Smallest ``q >= 1`` with ``m^q = 0``, or ``None``."""
    p = m
    for q in range(1, m.rows + 1):
        if p.is_zero():
            return q
        p = p @ m
    return None


class Subspace:
    """Subspace of ``Q^n`` held by its reduced row echelon basis."""

    __slots__ = ("ambient_dim", "basis")

    def __init__(self, ambient_dim: int, basis: tuple):
        # Trusted constructor; use Subspace.span for arbitrary generators.
        self.ambient_dim = ambient_dim
        self.basis = basis

    @classmethod
    def span(cls, ambient_dim: int, vectors: Iterable[Sequence]) -> "Subspace":
        rows = [vec(v) for v in vectors]
        for r in rows:
            if len(r) != ambient_dim:
                raise ShapeError("generator has wrong length")
        if not rows:
            return cls(ambient_dim, ())
        red, piv = rref(Matrix._raw(tuple(rows), len(rows), ambient_dim))
        return cls(ambient_dim, tuple(red.row(i) for i in range(len(piv))))

    @classmethod
    def zero(cls, n: int) -> "Subspace":
        return cls(n, ())

    @classmethod
    def full(cls, n: int) -> "Subspace":
        return cls(n, tuple(unit_vector(n, i) for i in range(n)))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def is_zero(self) -> bool:
        return not self.basis

    def is_full(self) -> bool:
        return self.dim == self.ambient_dim

    def as_matrix(self) -> Matrix:
        """Basis vectors as rows."""
        return Matrix._raw(self.basis, self.dim, self.ambient_dim)

    def contains(self, v: Sequence) -> bool:
        v = vec(v)
        if not self.basis:
            return is_zero_vector(v)
        return Subspace.span(self.ambient_dim, self.basis + (v,)).dim == self.dim

    def __contains__(self, v) -> bool:
        return self.contains(v)

    def __le__(self, other: "Subspace") -> bool:
        return all(other.contains(b) for b in self.basis)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self.basis == other.basis

    def __hash__(self) -> int:
        return hash((self.ambient_dim, self.basis))

    def __add__(self, other: "Subspace") -> "Subspace":
        return Subspace.span(self.ambient_dim, self.basis + other.basis)

    def annihilator(self) -> "Subspace":
        """Orthogonal complement for the standard dot product."""
        if not self.basis:
            return Subspace.full(self.ambient_dim)
        return kernel(self.as_matrix())

    def __and__(self, other: "Subspace") -> "Subspace":
        return (self.annihilator() + other.annihilator()).annihilator()

    def coordinates(self, v: Sequence) -> Vector:
        """Coefficients of ``v`` in this basis; raises if ``v`` lies outside."""
        v = vec(v)
        if not self.basis:
            if is_zero_vector(v):
                return ()
            raise ValueError("vector not in subspace")
        # RREF basis: coefficient k is the entry of v at pivot column k.
        piv = [next(j for j, x in enumerate(b) if x) for b in self.basis]
        coeffs = tuple(v[p] for p in piv)
        if combine(coeffs, self.basis, self.ambient_dim) != v:
            raise ValueError("vector not in subspace")
        return coeffs

    def image(self, m: Matrix) -> "Subspace":
        return Subspace.span(m.rows, (m @ b for b in self.basis))

    def to_json(self) -> list[list[str]]:
        return [[format_rational(x) for x in b] for b in self.basis]

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim}, basis={self.to_json()})"


def signature(s: Matrix) -> tuple[int, int, int]:
    """Inertia ``(n_minus, n_zero, n_plus)`` of a symmetric matrix.

    Uses symmetric Gaussian elimination (Lagrange's reduction) so the count
    is exact; no eigenvalues are computed.
    """
    if not s.is_symmetric():
        raise ShapeError("signature needs a symmetric matrix")
    a = [list(r) for r in s._data]
    n = s.rows
    neg = pos = 0
    active = list(range(n))
    while active:
        p = next((i for i in active if a[i][i]), None)
        if p is None:
            pair = next(
                ((i, j) for i in active for j in active if i < j and a[i][j]), None
            )
            if pair is None:
                break
            i, j = pair
            # congruence e_i -> e_i + e_j makes the diagonal entry 2 a_ij
            for k in range(n):
                a[i][k] += a[j][k]
            for k in range(n):
                a[k][i] += a[k][j]
            p = i
        d = a[p][p]
        if d > 0:
            pos += 1
        else:
            neg += 1
        active.remove(p)
        row = a[p][:]
        for i in active:
            if row[i]:
                f = row[i] / d
                for k in active:
                    a[i][k] -= f * row[k]
        for i in active:
            a[i][p] = a[p][i] = _ZERO
    return neg, n - neg - pos, pos


def orthogonal_complement(w: Subspace, s: Matrix) -> Subspace:
    """``{v : s(v, x) = 0 for all x in w}`` for a nondegenerate form ``s``."""
    if not s.is_symmetric():
        raise ShapeError("form must be symmetric")
    if determinant(s) == 0:
        raise DegenerateFormError("ambient form is degenerate")
    return _perp(w, s)


def _perp(w: Subspace, s: Matrix) -> Subspace:
    if w.is_zero():
        return Subspace.full(w.ambient_dim)
    return kernel(w.as_matrix() @ s)


def restricted_gram(w: Subspace, s: Matrix) -> Matrix:
    b = w.as_matrix()
    return b @ s @ b.T


def radical(w: Subspace, s: Matrix) -> Subspace:
    """``W ∩ W^⊥``, computed from the Gram matrix restricted to ``W``."""
    if not s.is_symmetric():
        raise ShapeError("form must be symmetric")
    if w.is_zero():
        return w
    ker = kernel(restricted_gram(w, s))
    return Subspace.span(
        w.ambient_dim, (combine(c, w.basis, w.ambient_dim) for c in ker.basis)
    )


def is_degenerate(w: Subspace, s: Matrix) -> bool:
    return not radical(w, s).is_zero()


def lattice_points(basis: Sequence[Vector], degree: int, n: int) -> list[Vector]:
    """Points ``sum(a_k b_k)`` with nonnegative integers ``a`` summing to ``degree``.

    A homogeneous polynomial of that degree in the coordinates of the span
    vanishes identically iff it vanishes at all of these points.
    """
    k = len(basis)
    if k == 0:
        return []
    pts = []
    for alpha in product(range(degree + 1), repeat=k):
        if sum(alpha) == degree:
            pts.append(combine(alpha, basis, n))
    return pts
