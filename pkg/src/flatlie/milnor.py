"""Riemannian flat Lie algebras in normal form.

A Riemannian flat Lie algebra splits orthogonally into its Killing
subalgebra ``span{s_1..s_p}`` and derived ideal ``span{f_1..f_2r}``, both
abelian, where each ``s`` rotates the planes ``(f_{2j-1}, f_{2j})`` at rate
``<s, u_j>``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from .errors import PreconditionError, ShapeError
from .exactnum import Matrix, Subspace, Vector, format_rational, is_zero_vector, vec
from .liealg import LieAlgebra, adjoint, derived_ideal, is_abelian_subspace
from .metric import MetricLieAlgebra, is_flat, killing_subalgebra, left_mult, perp
from .report import CheckReport


@dataclass(frozen=True)
class MilnorData:
    p: int
    u_vectors: tuple[Vector, ...]

    def __post_init__(self):
        object.__setattr__(self, "u_vectors", tuple(vec(u) for u in self.u_vectors))
        if self.p < 0:
            raise ShapeError("p must be nonnegative")
        for u in self.u_vectors:
            if len(u) != self.p:
                raise ShapeError(f"rotation vector {u} is not in Q^{self.p}")
            if is_zero_vector(u):
                raise PreconditionError("rotation vectors must be nonzero")

    @property
    def r(self) -> int:
        return len(self.u_vectors)

    @property
    def dim(self) -> int:
        return self.p + 2 * self.r

    @classmethod
    def from_json(cls, payload: Mapping) -> "MilnorData":
        return cls(int(payload["p"]), tuple(payload.get("u", [])))

    def to_json(self) -> dict:
        return {"p": self.p, "u": [[format_rational(x) for x in u] for u in self.u_vectors]}


def build_riemannian_flat(d: MilnorData, basis_names: Sequence[str] | None = None) -> MetricLieAlgebra:
    """Orthonormal basis ``(s_1..s_p, f_1..f_2r)`` with
    ``[s_i, f_{2j-1}] = u_j[i] f_{2j}`` and ``[s_i, f_{2j}] = -u_j[i] f_{2j-1}``.
    """
    p, n = d.p, d.dim
    brackets = {}
    for j, u in enumerate(d.u_vectors):
        a, b = p + 2 * j, p + 2 * j + 1
        for i in range(p):
            if u[i]:
                brackets[(i, a)] = tuple(u[i] if k == b else 0 for k in range(n))
                brackets[(i, b)] = tuple(-u[i] if k == a else 0 for k in range(n))
    if basis_names is None:
        basis_names = [f"s{i + 1}" for i in range(p)] + [f"f{k + 1}" for k in range(2 * d.r)]
    return MetricLieAlgebra(LieAlgebra(n, brackets, basis_names), Matrix.identity(n))


def milnor_check(M: MetricLieAlgebra) -> CheckReport:
    """Flatness versus the normal-form conditions on a Riemannian algebra.

    Records whether the Killing subalgebra and the derived ideal are abelian
    and orthogonal complements of each other, the curvature verdict, and
    whether the conjunction of the three agrees with it.
    """
    n = M.dim
    if M.signature() != (0, 0, n):
        raise PreconditionError("milnor_check needs a positive definite metric")
    killing = killing_subalgebra(M)
    der = derived_ideal(M.algebra)
    rep = CheckReport()
    a = rep.record("killing_abelian", is_abelian_subspace(M.algebra, killing))
    b = rep.record("derived_abelian", is_abelian_subspace(M.algebra, der))
    kp = perp(M, killing)
    c = rep.record("killing_perp_is_derived", kp == der, {"killing_perp": kp, "derived": der})
    flat = is_flat(M)
    rep.checks["is_flat"] = flat
    rep.record("consistent", (a and b and c) == flat)
    if flat and killing.dim >= 1:
        rep.record("derived_dim_even", der.dim % 2 == 0, der.dim)
    else:
        rep.record("derived_dim_even", None)
    return rep


def milnor_verdict_holds(rep: CheckReport) -> bool:
    """True when the classification verdict holds, flat or not."""
    return rep.checks["consistent"] is True and rep.checks["derived_dim_even"] is not False


def eq12_check(M: MetricLieAlgebra) -> bool:
    """``L_a = ad_a`` on the Killing subalgebra and ``L_a = 0`` on the derived ideal."""
    if not milnor_check(M).checks["is_flat"]:
        raise PreconditionError("the product formula only applies to flat algebras")
    killing = killing_subalgebra(M)
    der = derived_ideal(M.algebra)
    for a in killing.basis:
        if left_mult(M, a) != adjoint(M.algebra, a):
            return False
    return all(left_mult(M, a).is_zero() for a in der.basis)


def normal_form_blocks(M: MetricLieAlgebra) -> tuple[Subspace, Subspace]:
    """Killing subalgebra and derived ideal of a Riemannian flat algebra."""
    return killing_subalgebra(M), derived_ideal(M.algebra)
