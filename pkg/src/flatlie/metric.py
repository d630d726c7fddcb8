"""Metric Lie algebras: Levi-Civita product, curvature and the subalgebras
built from left and right multiplications.

Notation used throughout: ``L_u v = uv`` and ``R_u v = vu`` for the
Levi-Civita product ``uv``; ``X*`` is the adjoint of an endomorphism with
respect to the metric.
"""

from __future__ import annotations

from itertools import combinations
from typing import Mapping, Sequence

from .errors import DegenerateFormError, NotFlatError, ShapeError
from .exactnum import (
    Matrix,
    Rational,
    Subspace,
    Vector,
    bilinear,
    commutator,
    determinant,
    format_rational,
    inverse,
    is_zero_vector,
    kernel,
    lattice_points,
    max_norm,
    orthogonal_complement,
    radical,
    signature,
    unit_vector,
    vec,
)
from .liealg import LieAlgebra, ad_traces, center, derived_ideal
from . import liealg
from .report import CheckReport


class MetricLieAlgebra:
    """A Lie algebra with a nondegenerate symmetric bilinear form.

    The Levi-Civita product table and the left/right multiplication
    matrices of every basis vector are built eagerly.
    """

    def __init__(self, algebra: LieAlgebra, gram: Matrix | Sequence[Sequence]):
        gram = gram if isinstance(gram, Matrix) else Matrix(gram)
        n = algebra.dim
        if gram.rows != n or gram.cols != n:
            raise ShapeError("gram matrix does not match the algebra dimension")
        if not gram.is_symmetric():
            raise ShapeError("gram matrix must be symmetric")
        if determinant(gram) == 0:
            raise DegenerateFormError("gram matrix is degenerate")
        self.algebra = algebra
        self.gram = gram
        self.gram_inv = inverse(gram)
        self.product = koszul_product(algebra, gram, self.gram_inv)
        self.left = tuple(
            Matrix.from_columns([self.product[i][j] for j in range(n)]) for i in range(n)
        )
        self.right = tuple(
            Matrix.from_columns([self.product[j][i] for j in range(n)]) for i in range(n)
        )

    @property
    def dim(self) -> int:
        return self.algebra.dim

    @property
    def basis_names(self) -> tuple[str, ...]:
        return self.algebra.basis_names

    def __repr__(self) -> str:
        return f"MetricLieAlgebra(dim={self.dim}, signature={signature(self.gram)})"

    def inner(self, u: Sequence, v: Sequence) -> Rational:
        return bilinear(self.gram, u, v)

    def adjoint_op(self, x: Matrix) -> Matrix:
        """Metric adjoint ``X*`` with ``<Xu, v> = <u, X* v>``."""
        return self.gram_inv @ x.T @ self.gram

    def multiply(self, u: Sequence, v: Sequence) -> Vector:
        return left_mult(self, u) @ v

    def signature(self) -> tuple[int, int, int]:
        return signature(self.gram)

    def is_riemannian(self) -> bool:
        return self.signature()[0] == 0

    def is_lorentzian(self) -> bool:
        return self.signature() == (1, 0, self.dim - 1)

    def to_json(self) -> dict:
        out = self.algebra.to_json()
        out["metric"] = [[format_rational(x) for x in r] for r in self.gram.tolist()]
        return out


def koszul_product(L: LieAlgebra, gram: Matrix, gram_inv: Matrix | None = None) -> list[list[Vector]]:
    """Levi-Civita product table ``table[i][j] = e_i e_j``.

    Solves ``2<uv, w> = <[u,v],w> + <[w,u],v> + <[w,v],u>`` on basis
    vectors using the inverse Gram matrix.
    """
    n = L.dim
    if gram_inv is None:
        gram_inv = inverse(gram)
    low = [[gram @ L.basis_bracket(i, j) for j in range(n)] for i in range(n)]
    half = Rational(1, 2)
    table = []
    for i in range(n):
        row = []
        for j in range(n):
            rhs = tuple(
                half * (low[i][j][k] + low[k][i][j] + low[k][j][i]) for k in range(n)
            )
            row.append(gram_inv @ rhs)
        table.append(row)
    return table


def _combo(mats: Sequence[Matrix], u: Sequence, n: int) -> Matrix:
    out = Matrix.zeros(n)
    for c, m in zip(u, mats):
        if c:
            out = out + m * c
    return out


def left_mult(M: MetricLieAlgebra, u: Sequence) -> Matrix:
    return _combo(M.left, vec(u), M.dim)


def right_mult(M: MetricLieAlgebra, u: Sequence) -> Matrix:
    return _combo(M.right, vec(u), M.dim)


def mult_operators(M: MetricLieAlgebra, u: Sequence) -> tuple[Matrix, Matrix]:
    """``(L_u, R_u)``."""
    return left_mult(M, u), right_mult(M, u)


def curvature(M: MetricLieAlgebra, u: Sequence, v: Sequence) -> Matrix:
    """``K(u, v) = L_[u,v] - [L_u, L_v]``."""
    w = M.algebra.bracket(vec(u), vec(v))
    return left_mult(M, w) - commutator(left_mult(M, u), left_mult(M, v))


def _basis_curvature(M: MetricLieAlgebra, i: int, j: int) -> Matrix:
    w = M.algebra.basis_bracket(i, j)
    return left_mult(M, w) - commutator(M.left[i], M.left[j])


def curvature_witness(M: MetricLieAlgebra) -> tuple[int, int] | None:
    """First basis pair with nonzero curvature."""
    for i, j in combinations(range(M.dim), 2):
        if not _basis_curvature(M, i, j).is_zero():
            return (i, j)
    return None


def is_flat(M: MetricLieAlgebra) -> bool:
    return curvature_witness(M) is None


def left_symmetric_defect(M: MetricLieAlgebra) -> Rational:
    """Largest coefficient of ``ass(u,v,w) - ass(v,u,w)`` over basis triples.

    Here ``ass(u,v,w) = (uv)w - u(vw)``; zero exactly when the product is
    left-symmetric.
    """
    n = M.dim
    worst = Rational(0)
    table = M.product
    for i in range(n):
        for j in range(i + 1, n):
            lij = left_mult(M, table[i][j])
            lji = left_mult(M, table[j][i])
            for k in range(n):
                a = lij.col(k)
                b = M.left[i] @ table[j][k]
                c = lji.col(k)
                d = M.left[j] @ table[i][k]
                diff = tuple(a_ - b_ - c_ + d_ for a_, b_, c_, d_ in zip(a, b, c, d))
                worst = max(worst, max_norm(diff))
    return worst


def mean_curvature(M: MetricLieAlgebra) -> Vector:
    """``H`` with ``<H, u> = tr(ad_u)``."""
    return M.gram_inv @ ad_traces(M.algebra)


def _linear_kernel(mats: Sequence[Matrix], n: int) -> Subspace:
    """``{u : sum(u_i mats[i]) = 0}``."""
    if not mats:
        return Subspace.zero(0)
    cols = [m.vectorized() for m in mats]
    if all(is_zero_vector(c) for c in cols):
        return Subspace.full(n)
    return kernel(Matrix.from_columns(cols))


def killing_subalgebra(M: MetricLieAlgebra) -> Subspace:
    """``{u : ad_u + ad_u* = 0}``, computed as ``G ad_u + ad_u^T G = 0``."""
    g = M.gram
    return _linear_kernel([g @ a + a.T @ g for a in M.algebra.ad_matrices], M.dim)


def killing_subalgebra_via_right(M: MetricLieAlgebra) -> Subspace:
    """``{u : R_u + R_u* = 0}``; equal to the Killing subalgebra."""
    g = M.gram
    return _linear_kernel([g @ r + r.T @ g for r in M.right], M.dim)


def right_self_adjoint_space(M: MetricLieAlgebra) -> Subspace:
    """``{u : R_u = R_u*}``; equal to the orthogonal of the derived ideal."""
    g = M.gram
    return _linear_kernel([g @ r - r.T @ g for r in M.right], M.dim)


def annihilators(M: MetricLieAlgebra) -> tuple[Subspace, Subspace]:
    """``(N_l, N_r) = ({u : L_u = 0}, {u : R_u = 0})``."""
    return _linear_kernel(M.left, M.dim), _linear_kernel(M.right, M.dim)


def product_span(M: MetricLieAlgebra) -> Subspace:
    """Span of all Levi-Civita products ``uv`` (not the derived ideal)."""
    return Subspace.span(M.dim, (v for row in M.product for v in row))


def derived_perp(M: MetricLieAlgebra) -> Subspace:
    return orthogonal_complement(derived_ideal(M.algebra), M.gram)


def perp(M: MetricLieAlgebra, w: Subspace) -> Subspace:
    return orthogonal_complement(w, M.gram)


def center_degenerate(M: MetricLieAlgebra) -> bool:
    z = center(M.algebra)
    return not z.is_zero() and not radical(z, M.gram).is_zero()


def change_basis(M: MetricLieAlgebra, frame: Sequence[Sequence], names: Sequence[str] | None = None) -> MetricLieAlgebra:
    """Rewrite ``M`` in the basis given by the vectors of ``frame``."""
    frame = [vec(f) for f in frame]
    p = Matrix.from_columns(frame)
    return MetricLieAlgebra(liealg.change_basis(M.algebra, frame, names), p.T @ M.gram @ p)


def general_identities(M: MetricLieAlgebra) -> CheckReport:
    """Identities valid on every metric Lie algebra, flat or not."""
    rep = CheckReport()
    n = M.dim
    L = M.algebra
    table = M.product
    torsion = next(
        (
            (i, j)
            for i in range(n)
            for j in range(n)
            if tuple(a - b for a, b in zip(table[i][j], table[j][i])) != L.basis_bracket(i, j)
        ),
        None,
    )
    rep.record("torsion_free", torsion is None, torsion)
    g = M.gram
    skew = next((i for i in range(n) if not (g @ M.left[i] + M.left[i].T @ g).is_zero()), None)
    rep.record("left_mult_skew", skew is None, skew)
    ad_split = next(
        (i for i in range(n) if M.left[i] - M.right[i] != L.ad_matrices[i]), None
    )
    rep.record("ad_is_L_minus_R", ad_split is None, ad_split)
    _, n_r = annihilators(M)
    gg_perp = perp(M, product_span(M))
    rep.record("right_annihilator_is_product_perp", n_r == gg_perp, {"N_r": n_r, "gg_perp": gg_perp})
    dp = derived_perp(M)
    rsa = right_self_adjoint_space(M)
    rep.record("derived_perp_is_right_self_adjoint", dp == rsa, {"derived_perp": dp, "R_self_adjoint": rsa})
    k1, k2 = killing_subalgebra(M), killing_subalgebra_via_right(M)
    rep.record("killing_via_ad_equals_via_right", k1 == k2, {"via_ad": k1, "via_R": k2})
    h = mean_curvature(M)
    traces = ad_traces(L)
    mc = all(M.inner(h, e) == traces[i] for i, e in enumerate(_basis(n)))
    rep.record("mean_curvature_dual", mc)
    return rep


def _basis(n: int) -> list[Vector]:
    return [unit_vector(n, i) for i in range(n)]


def _first_failure(points, predicate):
    for p in points:
        if not predicate(p):
            return p
    return None


def flat_structure_diagnostics(M: MetricLieAlgebra) -> CheckReport:
    """Structural consequences of flatness on the Killing subalgebra, the
    orthogonal of the derived ideal, the mean curvature vector and the
    center.

    Quadratic and cubic identities in ``u`` are checked on enough lattice
    points of the subspace to make the check exact.  Nilpotency of ``R_u``
    outside the Lorentzian and Riemannian cases is only checked on the
    degree-two lattice points.
    """
    if not is_flat(M):
        raise NotFlatError("flat_structure_diagnostics needs a flat metric Lie algebra")
    n = M.dim
    rep = CheckReport()
    sig = M.signature()
    lorentzian = sig == (1, 0, n - 1)
    riemannian = sig[0] == 0
    killing = killing_subalgebra(M)
    der = derived_ideal(M.algebra)
    dperp = perp(M, der)
    n_l, n_r = annihilators(M)
    gg_perp = perp(M, product_span(M))
    z = center(M.algebra)

    def self_square_zero(u):
        return is_zero_vector(M.multiply(u, u))

    pts2_k = lattice_points(killing.basis, 2, n)
    pts2_d = lattice_points(dperp.basis, 2, n)
    bad = _first_failure(pts2_k + pts2_d, self_square_zero)
    rep.record("self_product_zero", bad is None, bad)

    def r_square_zero(u):
        r = right_mult(M, u)
        return (r @ r).is_zero()

    def r_l_commute(u):
        l, r = mult_operators(M, u)
        return commutator(r, l).is_zero()

    bad = _first_failure(pts2_k, r_square_zero)
    rep.record("killing_R_square_zero", bad is None, bad)
    bad = _first_failure(pts2_k, r_l_commute)
    rep.record("killing_R_L_commute", bad is None, bad)

    def rl_identity(u):
        l, r = mult_operators(M, u)
        return commutator(r, l) == r @ r

    bad = _first_failure(pts2_d, rl_identity)
    rep.record("derived_perp_RL_identity", bad is None, bad)

    if lorentzian:
        def r_cube_zero(u):
            return (right_mult(M, u) ** 3).is_zero()

        bad = _first_failure(lattice_points(dperp.basis, 3, n), r_cube_zero)
        rep.record("derived_perp_R_cube_zero", bad is None, bad)
        rep.record("derived_perp_R_nilpotent", bad is None, bad)
    else:
        rep.record("derived_perp_R_cube_zero", None)
        if riemannian:
            # positive definite: R_u is zero on the orthogonal of the derived ideal
            bad = _first_failure(dperp.basis, lambda u: right_mult(M, u).is_zero())
        else:
            bad = _first_failure(pts2_d, lambda u: (right_mult(M, u) ** n).is_zero())
        rep.record("derived_perp_R_nilpotent", bad is None, bad)

    h = mean_curvature(M)
    rep.record("mean_curvature_in_D_cap_Dperp", der.contains(h) and dperp.contains(h), h)

    if lorentzian:
        rep.record(
            "lorentzian_killing_chain",
            killing == n_r == gg_perp,
            {"killing": killing, "N_r": n_r, "gg_perp": gg_perp},
        )
        rep.record(
            "lorentzian_center_chain",
            z == (n_l & n_r) and z <= killing and killing <= dperp,
            {"center": z, "N_l_cap_N_r": n_l & n_r, "killing": killing, "derived_perp": dperp},
        )
        if any(h):
            rep.record(
                "nonunimodular_D_radical_is_H",
                radical(der, M.gram) == Subspace.span(n, [h]),
            )
    else:
        rep.record("lorentzian_killing_chain", None)
        rep.record("lorentzian_center_chain", None)

    if riemannian:
        rep.record(
            "riemannian_four_way",
            killing == dperp == n_r == gg_perp,
            {"killing": killing, "derived_perp": dperp, "N_r": n_r, "gg_perp": gg_perp},
        )
    else:
        rep.record("riemannian_four_way", None)

    if center_degenerate(M):
        zz = radical(z, M.gram)
        rep.record(
            "degenerate_center_chain",
            (z & der) <= zz and zz <= (n_l & n_r),
            {"Z_cap_D": z & der, "Z_cap_Zperp": zz, "N_l_cap_N_r": n_l & n_r},
        )
    else:
        rep.record("degenerate_center_chain", None)
    return rep


def from_json(payload: Mapping) -> MetricLieAlgebra:
    return MetricLieAlgebra(liealg.from_json(payload), Matrix(payload["metric"]))


def euclidean(L: LieAlgebra) -> MetricLieAlgebra:
    return MetricLieAlgebra(L, Matrix.identity(L.dim))
