"""Lie algebras given by structure constants."""

from __future__ import annotations

from itertools import combinations
from typing import Mapping, Sequence

from .errors import JacobiError, ShapeError
from .exactnum import (
    Matrix,
    Subspace,
    Vector,
    format_rational,
    inverse,
    is_zero_vector,
    kernel,
    unit_vector,
    vec,
    zero_vector,
)


class LieAlgebra:
    """A finite-dimensional Lie algebra over the rationals.

    Brackets are stored sparsely for ordered pairs ``i < j``; antisymmetry is
    therefore built in.  Construction rejects data that fails the Jacobi
    identity unless ``check_jacobi=False`` (useful only for diagnostics).

    Args:
        dim: dimension.
        brackets: mapping ``(i, j) -> coefficient vector of [e_i, e_j]``.
            Pairs with ``i > j`` are accepted and stored with a sign flip.
        basis_names: optional labels, default ``e0 .. e{dim-1}``.
    """

    def __init__(
        self,
        dim: int,
        brackets: Mapping[tuple[int, int], Sequence] | None = None,
        basis_names: Sequence[str] | None = None,
        check_jacobi: bool = True,
    ):
        if dim < 0:
            raise ShapeError("dimension must be nonnegative")
        self.dim = dim
        self.basis_names = tuple(basis_names) if basis_names is not None else tuple(
            f"e{i}" for i in range(dim)
        )
        if len(self.basis_names) != dim:
            raise ShapeError("basis_names has wrong length")
        table: dict[tuple[int, int], Vector] = {}
        for (i, j), coeffs in (brackets or {}).items():
            v = vec(coeffs)
            if len(v) != dim or not (0 <= i < dim and 0 <= j < dim):
                raise ShapeError(f"bad bracket entry for ({i}, {j})")
            if i == j:
                if not is_zero_vector(v):
                    raise ShapeError(f"[e{i}, e{i}] must vanish")
                continue
            if i > j:
                i, j, v = j, i, tuple(-x for x in v)
            if (i, j) in table:
                raise ShapeError(f"bracket ({i}, {j}) given twice")
            if not is_zero_vector(v):
                table[(i, j)] = v
        self.brackets = dict(sorted(table.items()))
        self._ad = None
        if check_jacobi:
            bad = jacobi_defect(self)
            if bad is not None:
                names = ", ".join(self.basis_names[k] for k in bad)
                raise JacobiError(f"Jacobi identity fails on ({names})", bad)

    def __repr__(self) -> str:
        return f"LieAlgebra(dim={self.dim}, brackets={len(self.brackets)})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, LieAlgebra):
            return NotImplemented
        return self.dim == other.dim and self.brackets == other.brackets

    def basis_bracket(self, i: int, j: int) -> Vector:
        if i == j:
            return zero_vector(self.dim)
        if i < j:
            return self.brackets.get((i, j), zero_vector(self.dim))
        v = self.brackets.get((j, i))
        return zero_vector(self.dim) if v is None else tuple(-x for x in v)

    def bracket(self, u: Sequence, v: Sequence) -> Vector:
        """``[u, v]`` for coordinate vectors."""
        n = self.dim
        out = zero_vector(n)
        for (i, j), c in self.brackets.items():
            w = u[i] * v[j] - u[j] * v[i]
            if w:
                out = tuple(a + w * b for a, b in zip(out, c))
        return out

    @property
    def ad_matrices(self) -> tuple[Matrix, ...]:
        """``ad(e_i)`` for every basis vector, cached."""
        if self._ad is None:
            n = self.dim
            self._ad = tuple(
                Matrix.from_columns([self.basis_bracket(i, j) for j in range(n)])
                if n
                else Matrix.zeros(0)
                for i in range(n)
            )
        return self._ad

    def is_abelian(self) -> bool:
        return not self.brackets

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "basis": list(self.basis_names),
            "brackets": [
                {"i": i, "j": j, "coeffs": [format_rational(x) for x in c]}
                for (i, j), c in self.brackets.items()
            ],
        }


def abelian(n: int, basis_names: Sequence[str] | None = None) -> LieAlgebra:
    return LieAlgebra(n, {}, basis_names)


def jacobi_defect(L: LieAlgebra) -> tuple[int, int, int] | None:
    """First basis triple ``(i, j, k)`` whose cyclic Jacobi sum is nonzero."""
    n = L.dim
    e = [unit_vector(n, i) for i in range(n)]
    for i, j, k in combinations(range(n), 3):
        s = L.bracket(e[i], L.basis_bracket(j, k))
        s = tuple(a + b for a, b in zip(s, L.bracket(e[j], L.basis_bracket(k, i))))
        s = tuple(a + b for a, b in zip(s, L.bracket(e[k], L.basis_bracket(i, j))))
        if not is_zero_vector(s):
            return (i, j, k)
    return None


def adjoint(L: LieAlgebra, u: Sequence) -> Matrix:
    """Matrix of ``v -> [u, v]``."""
    u = vec(u)
    n = L.dim
    m = Matrix.zeros(n)
    for i, ui in enumerate(u):
        if ui:
            m = m + L.ad_matrices[i] * ui
    return m


def center(L: LieAlgebra) -> Subspace:
    n = L.dim
    if L.is_abelian():
        return Subspace.full(n)
    rows = [r for a in L.ad_matrices for r in a.tolist()]
    return kernel(Matrix(rows))


def derived_ideal(L: LieAlgebra) -> Subspace:
    return Subspace.span(L.dim, L.brackets.values())


def bracket_of(L: LieAlgebra, u: Subspace, v: Subspace) -> Subspace:
    """Span of ``[a, b]`` over basis vectors of two subspaces."""
    return Subspace.span(L.dim, (L.bracket(a, b) for a in u.basis for b in v.basis))


def is_abelian_subspace(L: LieAlgebra, u: Subspace) -> bool:
    return all(is_zero_vector(L.bracket(a, b)) for a, b in combinations(u.basis, 2))


def derived_series(L: LieAlgebra) -> list[Subspace]:
    """``[g, D^1, D^2, ...]`` until the series becomes zero or stationary."""
    series = [Subspace.full(L.dim)]
    while not series[-1].is_zero():
        nxt = bracket_of(L, series[-1], series[-1])
        if nxt == series[-1]:
            break
        series.append(nxt)
    return series


def lower_central_series(L: LieAlgebra) -> list[Subspace]:
    """``[g^1 = g, g^2 = [g, g], g^3 = [g, g^2], ...]``, same stopping rule."""
    g = Subspace.full(L.dim)
    series = [g]
    while not series[-1].is_zero():
        nxt = bracket_of(L, g, series[-1])
        if nxt == series[-1]:
            break
        series.append(nxt)
    return series


def class_labels(L: LieAlgebra) -> dict:
    """Derived length and nilpotency class (``None`` when not solvable/nilpotent).

    The derived length is the number of bracket steps needed to reach zero,
    the nilpotency class the smallest ``k`` with ``g^{k+1} = 0``; an abelian
    algebra has both equal to 1.
    """
    ds = derived_series(L)
    lcs = lower_central_series(L)
    solvable = ds[-1].is_zero()
    nilpotent = lcs[-1].is_zero()
    return {
        "solvable_length": len(ds) - 1 if solvable else None,
        "nilpotency_class": len(lcs) - 1 if nilpotent else None,
    }


def ad_traces(L: LieAlgebra) -> Vector:
    return tuple(a.trace() for a in L.ad_matrices)


def is_unimodular(L: LieAlgebra) -> bool:
    return is_zero_vector(ad_traces(L))


def change_basis(L: LieAlgebra, frame: Sequence[Sequence], names: Sequence[str] | None = None) -> LieAlgebra:
    """Rewrite ``L`` in the basis whose vectors are the rows of ``frame``."""
    n = L.dim
    frame = [vec(f) for f in frame]
    p_inv = inverse(Matrix.from_columns(frame))
    br = {}
    for i, j in combinations(range(n), 2):
        br[(i, j)] = p_inv @ L.bracket(frame[i], frame[j])
    return LieAlgebra(n, br, names)


def from_json(payload: Mapping) -> LieAlgebra:
    dim = payload["dim"]
    names = payload.get("basis")
    brackets = {}
    for entry in payload.get("brackets", []):
        key = (entry["i"], entry["j"])
        if key in brackets or key[::-1] in brackets:
            raise ShapeError(f"bracket {key} listed twice")
        brackets[key] = entry["coeffs"]
    return LieAlgebra(dim, brackets, names)
