"""Double extensions of flat metric Lie algebras.

Given a flat base ``B`` and data ``(xi, D, mu, b0)``, the extension lives on
``span{z} + B + span{zbar}`` (basis order ``z, B..., zbar``) with ``z`` and
``zbar`` isotropic, ``<z, zbar> = 1``, orthogonal to ``B``, and

    [zbar, z] = mu z
    [zbar, a] = D(a) - <b0, a> z
    [a, b]    = [a, b]_B + <(xi - xi*)(a), b> z

The extension is flat exactly when the data is admissible; :func:`split`
recovers base and data from a Lorentzian flat algebra whose center is
degenerate.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Mapping, NamedTuple, Sequence

from .errors import (
    ConstraintError,
    InadmissibleError,
    NotFlatError,
    PreconditionError,
    ShapeError,
)
from .exactnum import (
    Matrix,
    Q,
    Rational,
    Subspace,
    Vector,
    add,
    commutator,
    format_rational,
    inverse,
    is_zero_vector,
    kernel,
    nilpotency_index,
    orthogonal_complement,
    radical,
    scale,
    sub,
    unit_vector,
    vec,
    zero_vector,
)
from .liealg import LieAlgebra, center, derived_ideal
from .metric import MetricLieAlgebra, change_basis, is_flat, killing_subalgebra, right_mult
from .milnor import MilnorData, build_riemannian_flat
from .report import CheckReport


@dataclass(frozen=True)
class ExtensionData:
    """The quadruple ``(xi, D, mu, b0)`` over a base of dimension ``dim``."""

    xi: Matrix
    d: Matrix
    mu: Rational = field(default_factory=lambda: Q(0))
    b0: Vector = ()

    def __post_init__(self):
        xi = self.xi if isinstance(self.xi, Matrix) else Matrix(self.xi)
        d = self.d if isinstance(self.d, Matrix) else Matrix(self.d)
        n = xi.rows
        b0 = vec(self.b0) if len(self.b0) else (Q(0),) * n
        object.__setattr__(self, "xi", xi)
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "mu", Q(self.mu))
        object.__setattr__(self, "b0", b0)
        if not (xi.is_square() and d.is_square() and d.rows == n and len(b0) == n):
            raise ShapeError("xi, D and b0 must all live on the same base dimension")

    @property
    def dim(self) -> int:
        return self.xi.rows

    def d_b0_trivial(self) -> bool:
        return self.d.is_zero() and is_zero_vector(self.b0)

    def to_json(self) -> dict:
        return {
            "xi": [[format_rational(x) for x in r] for r in self.xi.tolist()],
            "D": [[format_rational(x) for x in r] for r in self.d.tolist()],
            "mu": format_rational(self.mu),
            "b0": [format_rational(x) for x in self.b0],
        }

    @classmethod
    def from_json(cls, payload: Mapping) -> "ExtensionData":
        return cls(
            Matrix(payload["xi"]),
            Matrix(payload["D"]),
            Q(payload.get("mu", 0)),
            tuple(payload.get("b0", ())),
        )


def _first_pair(n: int, predicate) -> tuple[int, int] | None:
    for i, j in product(range(n), repeat=2):
        if not predicate(i, j):
            return (i, j)
    return None


def is_admissible(B: MetricLieAlgebra, data: ExtensionData) -> CheckReport:
    """Evaluate the five admissibility conditions on basis vectors.

    The report carries one check per condition and, for failures, the first
    offending basis pair ``(i, j)`` (or matrix entry for the operator
    identities).
    """
    if data.dim != B.dim:
        raise ShapeError("extension data does not match the base dimension")
    if not is_flat(B):
        raise NotFlatError("double extension needs a flat base")
    n = B.dim
    L = B.algebra
    xi, d = data.xi, data.d
    e = [unit_vector(n, i) for i in range(n)]
    rep = CheckReport()

    def cocycle(i, j):
        lhs = xi @ L.basis_bracket(i, j)
        rhs = sub(B.left[i] @ xi.col(j), B.left[j] @ xi.col(i))
        return lhs == rhs

    rep.record("cocycle", (w := _first_pair(n, cocycle)) is None, w)

    def derivation(i, j):
        lhs = d @ L.basis_bracket(i, j)
        rhs = add(L.bracket(d.col(i), e[j]), L.bracket(e[i], d.col(j)))
        return lhs == rhs

    rep.record("derivation", (w := _first_pair(n, derivation)) is None, w)

    a = d - xi
    skew = B.gram @ a + a.T @ B.gram
    rep.record("skew", skew.is_zero(), skew.first_difference(Matrix.zeros(n)))

    lhs = commutator(d, xi)
    rhs = xi @ xi - xi * data.mu - right_mult(B, data.b0)
    rep.record("eq5", lhs == rhs, lhs.first_difference(rhs))

    def eq6(i, j):
        left = sub(B.left[i] @ xi.col(j), xi @ B.product[i][j])
        right = add(
            add(B.right[j] @ d.col(i), B.left[i] @ d.col(j)),
            scale(-1, d @ B.product[i][j]),
        )
        return left == right

    rep.record("eq6", (w := _first_pair(n, eq6)) is None, w)
    return rep


def extend(B: MetricLieAlgebra, data: ExtensionData, check: bool = True) -> MetricLieAlgebra:
    """Double extension of ``B`` by ``data`` in the basis ``(z, B..., zbar)``."""
    if check:
        rep = is_admissible(B, data)
        if not rep.passed:
            raise InadmissibleError(f"inadmissible data: {rep.first_failure()} fails", rep)
    m = B.dim
    n = m + 2
    zi, zb = 0, m + 1
    g0 = B.gram
    xi_star = B.adjoint_op(data.xi)
    skew_part = data.xi - xi_star

    def lift(v: Sequence, zc=0) -> tuple:
        return (Q(zc),) + tuple(v) + (Q(0),)

    brackets = {}
    if data.mu:
        # [zbar, z] = mu z  <=>  [z, zbar] = -mu z
        brackets[(zi, zb)] = lift(zero_vector(m), -data.mu)
    for a in range(m):
        da = data.d.col(a)
        b0a = g0.row(a)
        coeff = sum((x * y for x, y in zip(data.b0, b0a)), Q(0))
        # [a, zbar] = -D(a) + <b0, a> z
        v = lift(tuple(-x for x in da), coeff)
        if not is_zero_vector(v):
            brackets[(a + 1, zb)] = v
    sp = g0 @ skew_part  # <(xi - xi*)(e_a), e_b> = (G0 S)[b, a]
    for a, b in combinations(range(m), 2):
        v = lift(B.algebra.basis_bracket(a, b), sp[b, a])
        if not is_zero_vector(v):
            brackets[(a + 1, b + 1)] = v
    gram = [[Q(0)] * n for _ in range(n)]
    gram[zi][zb] = gram[zb][zi] = Q(1)
    for a in range(m):
        for b in range(m):
            gram[a + 1][b + 1] = g0[a, b]
    names = ("z",) + tuple(B.basis_names) + ("zbar",)
    return MetricLieAlgebra(LieAlgebra(n, brackets, names), Matrix(gram))


class Splitting(NamedTuple):
    base: MetricLieAlgebra
    data: ExtensionData
    frame: tuple[Vector, ...]  # (z, b_1, ..., b_m, zbar) in the original coordinates


def split(M: MetricLieAlgebra) -> Splitting:
    """Write a Lorentzian flat algebra with degenerate center as a double extension.

    ``z`` spans the radical of the center, ``zbar`` is the isotropic partner
    built from the first basis vector pairing nontrivially with ``z``, and the
    base is the orthogonal of ``span{z, zbar}``.  Re-extending the returned
    data reproduces ``M`` written in :attr:`Splitting.frame`.
    """
    if not is_flat(M):
        raise NotFlatError("split needs a flat metric Lie algebra")
    L, g = M.algebra, M.gram
    n = M.dim
    zc = center(L)
    if zc.is_zero():
        raise PreconditionError("center trivial")
    rad = radical(zc, g)
    if rad.is_zero():
        raise PreconditionError("center nondegenerate")
    if not M.is_lorentzian():
        raise PreconditionError("not Lorentzian")
    z = rad.basis[0]
    gz = g @ z
    k = next(i for i in range(n) if gz[i])
    c = gz[k]
    w = unit_vector(n, k)
    zbar = sub(scale(1 / c, w), scale(g[k, k] / (2 * c * c), z))
    base_space = orthogonal_complement(Subspace.span(n, [z, zbar]), g)
    bvecs = base_space.basis
    m = len(bvecs)

    def coords(v: Vector) -> Vector:
        proj = sub(sub(v, scale(M.inner(v, zbar), z)), scale(M.inner(v, z), zbar))
        return base_space.coordinates(proj)

    g0 = Matrix([[M.inner(a, b) for b in bvecs] for a in bvecs]) if m else Matrix.zeros(0)
    brackets = {}
    for i, j in combinations(range(m), 2):
        brackets[(i, j)] = coords(L.bracket(bvecs[i], bvecs[j]))
    names = [f"b{i + 1}" for i in range(m)]
    base = MetricLieAlgebra(LieAlgebra(m, brackets, names), g0)

    d = Matrix.from_columns([coords(L.bracket(zbar, b)) for b in bvecs], rows=m)
    t = tuple(-M.inner(L.bracket(zbar, b), zbar) for b in bvecs)
    b0 = inverse(g0) @ t if m else ()
    mu = M.inner(L.bracket(zbar, z), zbar)
    if mu:
        raise PreconditionError("z is not central")  # cannot happen for z in the center
    xi = Matrix.from_columns([scale(-1, coords(M.multiply(b, zbar))) for b in bvecs], rows=m)
    if m == 0:
        xi = d = Matrix.zeros(0)
    data = ExtensionData(xi, d, mu, b0)
    return Splitting(base, data, (z,) + tuple(bvecs) + (zbar,))


def frame_view(M: MetricLieAlgebra, s: Splitting) -> MetricLieAlgebra:
    """``M`` rewritten in the frame chosen by :func:`split`."""
    names = ("z",) + tuple(s.base.basis_names) + ("zbar",)
    return change_basis(M, s.frame, names)


def same_structure(a: MetricLieAlgebra, b: MetricLieAlgebra) -> bool:
    """Identical structure constants and Gram matrix (names ignored)."""
    return a.algebra == b.algebra and a.gram == b.gram


def round_trip_ok(M: MetricLieAlgebra) -> bool:
    s = split(M)
    return same_structure(extend(s.base, s.data), frame_view(M, s))


# ---------------------------------------------------------------------------
# abelian bases


@dataclass
class AbelianAnalysis:
    a: Matrix
    q: int | None
    filtration: list[Subspace]
    certificate: CheckReport

    def to_json(self) -> dict:
        return {
            "A": [[format_rational(x) for x in r] for r in self.a.tolist()],
            "q": self.q,
            "filtration": [f.to_json() for f in self.filtration],
            "certificate": self.certificate.to_json(),
        }


def abelian_admissibility_analysis(B: MetricLieAlgebra, data: ExtensionData) -> AbelianAnalysis:
    """Structure of ``(A = D - xi, xi)`` on a Riemannian abelian base.

    Computes the nilpotency index ``q`` of ``xi`` and the orthogonal
    splitting ``B = F_0 + ... + F_{q-1}`` with ``F_0 = ker xi`` and
    ``F_k = ker xi^{k+1} ∩ (ker xi^k)^⊥``, then certifies the identities that
    admissible data must satisfy.
    """
    if not B.algebra.is_abelian():
        raise PreconditionError("abelian analysis needs an abelian base")
    n = B.dim
    if B.signature() != (0, 0, n):
        raise PreconditionError("abelian analysis needs a positive definite metric")
    if data.mu:
        raise PreconditionError("abelian analysis assumes mu = 0")
    g = B.gram
    xi = data.xi
    a = data.d - xi
    rep = CheckReport()
    a_skew = (g @ a + a.T @ g).is_zero()
    bracket_eq = commutator(a, xi) == xi @ xi
    admissible = is_admissible(B, data).passed
    rep.record("admissible_iff_reduced_system", admissible == (a_skew and bracket_eq))
    q = nilpotency_index(xi)
    rep.record("xi_nilpotent", q is not None)

    filtration: list[Subspace] = []
    if q is not None:
        kers = [kernel(xi ** k) if k else Subspace.zero(n) for k in range(q + 1)]
        filtration.append(kers[1])
        for k in range(1, q):
            filtration.append(kers[k + 1] & orthogonal_complement(kers[k], g))
        total = sum(f.dim for f in filtration)
        orth = all(
            (f1.as_matrix() @ g @ f2.as_matrix().T).is_zero()
            for f1, f2 in combinations([f for f in filtration if f.dim], 2)
        )
        rep.record("splitting_orthogonal_direct_sum", total == n and orth)
        bad = next(
            (k for k, f in enumerate(filtration) if not all(f.contains(a @ v) for v in f.basis)),
            None,
        )
        rep.record("A_preserves_splitting", bad is None, bad)
        dims_ok = all(
            filtration[k].dim <= kers[j].dim
            for k in range(1, q)
            for j in range(1, k + 2)
        )
        rep.record("splitting_dims_bounded", dims_ok)
        if n >= 3:
            rep.record("q_below_dim", q < n, q)
        else:
            rep.record("q_below_dim", None)
        if q == n and q >= 2:
            rep.record("full_index_forces_A_zero", a.is_zero() and n == 2)
        else:
            rep.record("full_index_forces_A_zero", None)
    else:
        for name in (
            "splitting_orthogonal_direct_sum",
            "A_preserves_splitting",
            "splitting_dims_bounded",
            "q_below_dim",
            "full_index_forces_A_zero",
        ):
            rep.record(name, None)

    bad = None
    xk = xi
    for k in range(1, n + 1):
        nxt = xk @ xi
        if commutator(a, xk) != nxt * k:
            bad = k
            break
        xk = nxt
    rep.record("A_xi_power_identity", bad is None, bad)
    bad = next((k for k in range(2, n + 1) if (xi ** k).trace() != 0), None)
    rep.record("xi_power_traces_zero", bad is None, bad)
    rep.record("ker_A_in_ker_xi2", kernel(a) <= kernel(xi @ xi))
    if not admissible:
        rep.notes.append("data is not admissible; the certificate identities need not hold")
    return AbelianAnalysis(a, q, filtration, rep)


def abelian_base(dim: int) -> MetricLieAlgebra:
    names = [f"e{i + 1}" for i in range(dim)]
    return MetricLieAlgebra(LieAlgebra(dim, {}, names), Matrix.identity(dim))


ABELIAN_FORMS = {
    2: ("zero", "nilpotent", "rotation"),
    3: ("zero", "nilpotent", "rotation"),
    4: ("zero", "f1", "f2", "f3", "f4", "f5"),
}

ABELIAN_FORM_PARAMS = {
    (2, "zero"): (),
    (2, "nilpotent"): ("a",),
    (2, "rotation"): ("lam",),
    (3, "zero"): (),
    (3, "nilpotent"): ("a", "b"),
    (3, "rotation"): ("lam",),
    (4, "zero"): (),
    (4, "f1"): ("a", "b", "c", "d"),
    (4, "f2"): ("a", "b", "c"),
    (4, "f3"): ("a", "b"),
    (4, "f4"): ("a", "b", "c"),
    (4, "f5"): ("a", "b"),
}


def family_abelian(dim: int, form: str, params: Mapping | None = None, b0: Sequence | None = None) -> ExtensionData:
    """Admissible data on the Euclidean abelian base of dimension 2, 3 or 4.

    ``form`` is one of :data:`ABELIAN_FORMS`; ``b0`` is a free parameter
    because right multiplications vanish on an abelian base.
    """
    if (dim, form) not in ABELIAN_FORM_PARAMS:
        raise ConstraintError(f"no abelian form {form!r} in dimension {dim}")
    params = {k: Q(v) for k, v in (params or {}).items()}
    missing = [p for p in ABELIAN_FORM_PARAMS[(dim, form)] if p not in params]
    if missing:
        raise ConstraintError(f"missing parameters {missing}")
    p = params
    zero = [[0] * dim for _ in range(dim)]
    xi = [r[:] for r in zero]
    d = [r[:] for r in zero]
    if form == "zero":
        pass
    elif form == "nilpotent" and dim == 2:
        if p["a"] == 0:
            raise ConstraintError("a must be nonzero")
        xi[0][1] = d[0][1] = p["a"]
    elif form == "nilpotent" and dim == 3:
        if p["a"] == 0 and p["b"] == 0:
            raise ConstraintError("(a, b) must be nonzero")
        xi[0][2] = d[0][2] = p["a"]
        xi[1][2] = d[1][2] = p["b"]
    elif form == "rotation":
        if p["lam"] <= 0:
            raise ConstraintError("lambda must be positive")
        d[0][1], d[1][0] = p["lam"], -p["lam"]
    elif form == "f1":
        if p["a"] * p["d"] - p["b"] * p["c"] == 0:
            raise ConstraintError("ad - bc must be nonzero")
        for m in (xi, d):
            m[0][2], m[0][3], m[1][2], m[1][3] = p["a"], p["b"], p["c"], p["d"]
    elif form == "f2":
        if not (p["a"] or p["b"] or p["c"]):
            raise ConstraintError("(a, b, c) must be nonzero")
        for m in (xi, d):
            m[0][3], m[1][3], m[2][3] = p["a"], p["b"], p["c"]
    elif form == "f3":
        if not (p["a"] or p["b"]):
            raise ConstraintError("(a, b) must be nonzero")
        d[0][1], d[1][0] = p["a"], -p["a"]
        d[2][3], d[3][2] = p["b"], -p["b"]
    elif form == "f4":
        a_, b_, c_ = p["a"], p["b"], p["c"]
        if a_ == 0 or not (b_ or c_):
            raise ConstraintError("need a != 0 and (b, c) != (0, 0)")
        d = [[0, a_, b_, c_], [-a_, 0, -c_, b_], [0, 0, 0, a_], [0, 0, -a_, 0]]
        xi = [[0, 0, b_, c_], [0, 0, -c_, b_], [0, 0, 0, 0], [0, 0, 0, 0]]
    elif form == "f5":
        a_, b_ = p["a"], p["b"]
        if a_ == 0 or b_ == 0:
            raise ConstraintError("need a != 0 and b != 0")
        d = [[0, a_, 0, 0], [-a_, 0, 0, 0], [0, 0, 0, b_], [0, 0, 0, 0]]
        xi[2][3] = b_
    return ExtensionData(Matrix(xi), Matrix(d), 0, tuple(b0) if b0 is not None else ())


def family_nonabelian_dim3(lam, a, b, c, b1) -> tuple[MetricLieAlgebra, ExtensionData]:
    """Admissible data on the 3-dimensional Riemannian flat algebra
    ``[e1, e2] = lam e3, [e1, e3] = -lam e2``."""
    lam, a, b, c, b1 = (Q(v) for v in (lam, a, b, c, b1))
    if lam <= 0:
        raise ConstraintError("lambda must be positive")
    base = build_riemannian_flat(MilnorData(1, [(lam,)]), ["e1", "e2", "e3"])
    xi = Matrix([[0, 0, 0], [a, 0, 0], [b, 0, 0]])
    d = Matrix([[0, 0, 0], [a, 0, c], [b, -c, 0]])
    b0 = (b1, c * a / lam, c * b / lam)
    return base, ExtensionData(xi, d, 0, b0)


def family_nonabelian_dim4(lam1, lam2, x, c, d, f, b1, b2) -> tuple[MetricLieAlgebra, ExtensionData]:
    """Admissible data on the 4-dimensional Riemannian flat algebra
    ``[e_i, f1] = lam_i f2, [e_i, f2] = -lam_i f1``."""
    l1, l2, x, c, d, f, b1, b2 = (Q(v) for v in (lam1, lam2, x, c, d, f, b1, b2))
    if l1 < 0 or l2 < 0 or (l1 == 0 and l2 == 0):
        raise ConstraintError("need lambda_i >= 0, not both zero")
    base = build_riemannian_flat(MilnorData(2, [(l1, l2)]), ["e1", "e2", "f1", "f2"])
    top = [[x * l1 * l2, x * l2 * l2], [-x * l1 * l1, -x * l1 * l2]]
    dm = Matrix([
        top[0] + [0, 0],
        top[1] + [0, 0],
        [c * l1, c * l2, 0, f],
        [d * l1, d * l2, -f, 0],
    ])
    xm = Matrix([
        top[0] + [0, 0],
        top[1] + [0, 0],
        [c * l1, c * l2, 0, 0],
        [d * l1, d * l2, 0, 0],
    ])
    b0 = (b1, b2, f * c, f * d)
    return base, ExtensionData(xm, dm, 0, b0)


# ---------------------------------------------------------------------------
# non-abelian bases


def _orthogonal_projector(w: Subspace, g: Matrix) -> Matrix:
    k = Matrix.from_columns(w.basis, rows=w.ambient_dim)
    return k @ inverse(k.T @ g @ k) @ k.T @ g


def prs_condition_check(B: MetricLieAlgebra, data: ExtensionData) -> CheckReport:
    """Block form of admissibility (``mu = 0``) on a non-abelian Riemannian flat base.

    ``B`` splits orthogonally into its Killing subalgebra ``l`` and derived
    ideal ``d``; every endomorphism ``F`` splits as ``F_1 + F_2`` with values
    in ``l`` and ``d``.  The block conditions are evaluated directly and,
    when they all hold, ``tr(D) = 0`` is checked as well.
    """
    L = B.algebra
    n = B.dim
    if L.is_abelian():
        raise PreconditionError("block conditions need a non-abelian base")
    if B.signature() != (0, 0, n) or not is_flat(B):
        raise PreconditionError("base must be Riemannian flat")
    if data.mu:
        raise PreconditionError("block conditions assume mu = 0")
    g = B.gram
    lsp = killing_subalgebra(B)
    dsp = derived_ideal(L)
    if lsp.dim + dsp.dim != n or not (lsp & dsp).is_zero():
        raise PreconditionError("base is not the orthogonal sum of its Killing subalgebra and derived ideal")
    p1 = _orthogonal_projector(lsp, g)
    p2 = Matrix.identity(n) - p1
    D, xi = data.d, data.xi
    d1, d2, x1, x2 = p1 @ D, p2 @ D, p1 @ xi, p2 @ xi
    rep = CheckReport()

    def skew(x: Matrix) -> bool:
        return (g @ x + x.T @ g).is_zero()

    rep.record("skew_killing_block", skew(p1 @ (D - xi) @ p1))
    rep.record("skew_derived_block", skew(p2 @ (D - xi) @ p2))
    rep.record(
        "1s",
        (d1 @ p2).is_zero() and (x1 @ p2).is_zero() and ((x2 - d2) @ p1).is_zero(),
    )
    lb, db = lsp.basis, dsp.basis
    bad = next(
        ((a, b) for a in lb for b in lb
         if not is_zero_vector(add(L.bracket(d2 @ a, b), L.bracket(a, d2 @ b)))),
        None,
    )
    rep.record("2s", bad is None, bad)
    bad = next(
        ((a, c) for a in lb for c in db
         if d2 @ L.bracket(a, c) != add(L.bracket(d1 @ a, c), L.bracket(a, d2 @ c))),
        None,
    )
    rep.record("3s", bad is None, bad)
    bad = next(
        ((a, c) for a in lb for c in db if x2 @ L.bracket(a, c) != L.bracket(a, x2 @ c)),
        None,
    )
    rep.record("4s", bad is None, bad)
    db1, xb1 = d1 @ p1, x1 @ p1
    rep.record("5s", commutator(db1, xb1) == xb1 @ xb1)
    db2, xb2 = d2 @ p2, x2 @ p2
    rep.record("6s", commutator(db2, xb2) == xb2 @ xb2)
    lhs_op = commutator(d2, x2)
    rhs_op = x2 @ x2 + x2 @ d1
    bad = next(
        (a for a in lb if lhs_op @ a != add(rhs_op @ a, L.bracket(data.b0, a))),
        None,
    )
    rep.record("7s", bad is None, bad)
    if rep.passed:
        rep.record("trace_D_zero", D.trace() == 0, D.trace())
    return rep


def extension_center_degenerate(B: MetricLieAlgebra, data: ExtensionData) -> bool:
    from .metric import center_degenerate

    return center_degenerate(extend(B, data))
