import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from flatlie.doubleext import (
    ABELIAN_FORM_PARAMS,
    ExtensionData,
    abelian_admissibility_analysis,
    abelian_base,
    extend,
    family_abelian,
    family_nonabelian_dim3,
    family_nonabelian_dim4,
    frame_view,
    is_admissible,
    prs_condition_check,
    round_trip_ok,
    same_structure,
    split,
)
from flatlie.errors import ConstraintError, InadmissibleError, NotFlatError, PreconditionError
from flatlie.exactnum import Matrix, Q, Subspace
from flatlie.liealg import LieAlgebra, center, is_unimodular
from flatlie.metric import MetricLieAlgebra, center_degenerate, is_flat

from helpers import affine_line, euclidean_abelian, heisenberg

N2 = Matrix([[0, 1], [0, 0]])
B2 = abelian_base(2)


def test_admissible_examples():
    assert is_admissible(B2, ExtensionData(N2, N2)).passed
    rep = is_admissible(B2, ExtensionData(Matrix.identity(2), Matrix.identity(2)))
    assert rep.failures == ["eq5"]
    assert rep.witnesses["eq5"] == (0, 0)
    rot = Matrix([[0, 1], [-1, 0]])
    assert is_admissible(B2, ExtensionData(Matrix.zeros(2), rot)).passed


def test_admissible_needs_flat_base():
    with pytest.raises(NotFlatError):
        is_admissible(affine_line(), ExtensionData(Matrix.zeros(2), Matrix.zeros(2)))


def test_extend_nilpotent_plane():
    M = extend(B2, ExtensionData(N2, N2))
    # basis (z, e1, e2, zbar)
    assert M.algebra.brackets == {(1, 2): (-1, 0, 0, 0), (2, 3): (0, -1, 0, 0)}
    assert is_flat(M) and M.signature() == (1, 0, 3)


def test_extend_gives_heisenberg():
    M = extend(abelian_base(1), ExtensionData(Matrix.zeros(1), Matrix.zeros(1), 0, (-1,)))
    # [zbar, e1] = z  <=>  [e1, zbar] = -z
    assert M.algebra.brackets == {(1, 2): (-1, 0, 0)}


def test_trivial_data_gives_abelian_with_nondegenerate_center():
    M = extend(B2, ExtensionData(Matrix.zeros(2), Matrix.zeros(2)))
    assert M.algebra.is_abelian()
    assert not center_degenerate(M)


def test_extend_rejects_inadmissible():
    with pytest.raises(InadmissibleError) as exc:
        extend(B2, ExtensionData(Matrix.identity(2), Matrix.identity(2)))
    assert exc.value.report.failures == ["eq5"]


def test_mu_nonzero_moves_z_out_of_center():
    # abelian base, xi = D = 0: every condition holds for any mu
    data = ExtensionData(Matrix.zeros(1), Matrix.zeros(1), 2, (0,))
    M = extend(abelian_base(1), data)
    assert (1, 0, 0) not in center(M.algebra)
    assert is_flat(M)


def test_split_heisenberg():
    s = split(heisenberg())
    assert s.data.xi == Matrix.zeros(1) and s.data.d == Matrix.zeros(1)
    assert s.data.mu == 0 and s.data.b0 == (-1,)
    assert s.base.gram == Matrix.identity(1)


def test_split_rotation_row():
    L = LieAlgebra(4, {(1, 2): (0, 0, 0, 1), (1, 3): (0, 0, -1, 0)}, ["z", "zbar", "e1", "e2"])
    M = MetricLieAlgebra(L, Matrix([[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]))
    s = split(M)
    assert s.data.xi.is_zero()
    assert s.data.b0 == (0, 0)
    d = s.data.d
    assert d == -d.T and not d.is_zero()
    assert round_trip_ok(M)


def test_split_errors():
    with pytest.raises(PreconditionError, match="center nondegenerate"):
        split(euclidean_abelian(3))
    with pytest.raises(NotFlatError):
        split(affine_line())
    so3 = LieAlgebra(3, {(0, 1): (0, 0, 1), (1, 2): (1, 0, 0), (0, 2): (0, -1, 0)})
    with pytest.raises(NotFlatError):
        split(MetricLieAlgebra(so3, Matrix.identity(3)))
    # flat, degenerate center, but signature (2, 0, 3)
    L = LieAlgebra(5, {(1, 4): (1, 0, 0, 0, 0)})
    g = Matrix([[0, 1, 0, 0, 0], [1, 0, 0, 0, 0], [0, 0, 0, 1, 0], [0, 0, 1, 0, 0], [0, 0, 0, 0, 1]])
    with pytest.raises(PreconditionError, match="not Lorentzian"):
        split(MetricLieAlgebra(L, g))


def test_split_recovers_data_up_to_gauge():
    B, data = family_nonabelian_dim4(1, 2, 1, 1, -1, 1, 2, 0)
    M = extend(B, data)
    s = split(M)
    assert is_admissible(s.base, s.data).passed
    assert s.data.mu == 0 and not s.data.d_b0_trivial()
    assert same_structure(extend(s.base, s.data), frame_view(M, s))


def test_abelian_analysis_examples():
    an = abelian_admissibility_analysis(B2, ExtensionData(N2, N2))
    assert an.q == 2
    assert an.filtration == [Subspace.span(2, [(1, 0)]), Subspace.span(2, [(0, 1)])]
    assert an.a.is_zero()
    assert an.certificate.passed

    rot = ExtensionData(Matrix.zeros(2), Matrix([[0, 3], [-3, 0]]))
    an = abelian_admissibility_analysis(B2, rot)
    assert an.q == 1 and len(an.filtration) == 1 and an.certificate.passed

    f4 = family_abelian(4, "f4", {"a": 1, "b": 1, "c": 0})
    an = abelian_admissibility_analysis(abelian_base(4), f4)
    assert an.q == 2
    assert [f.dim for f in an.filtration] == [2, 2]
    assert an.certificate.passed


def test_abelian_analysis_flags_inadmissible_data():
    bad = ExtensionData(Matrix.identity(2), Matrix.identity(2))
    an = abelian_admissibility_analysis(B2, bad)
    assert an.certificate.checks["admissible_iff_reduced_system"] is True
    assert an.certificate.checks["xi_nilpotent"] is False


def test_abelian_analysis_needs_abelian_base():
    B, data = family_nonabelian_dim3(1, 1, 0, 0, 0)
    with pytest.raises(PreconditionError):
        abelian_admissibility_analysis(B, data)


def test_family_abelian_examples():
    assert family_abelian(2, "nilpotent", {"a": 1}).xi == N2
    f3 = family_abelian(4, "f3", {"a": 1, "b": 2})
    assert f3.xi.is_zero()
    assert f3.d == Matrix([[0, 1, 0, 0], [-1, 0, 0, 0], [0, 0, 0, 2], [0, 0, -2, 0]])
    f5 = family_abelian(4, "f5", {"a": 1, "b": 1})
    assert f5.xi == Matrix([[0, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 1], [0, 0, 0, 0]])
    assert f5.d == Matrix([[0, 1, 0, 0], [-1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 0, 0]])
    with pytest.raises(ConstraintError):
        family_abelian(2, "nilpotent", {"a": 0})
    with pytest.raises(ConstraintError):
        family_abelian(4, "f1", {"a": 1, "b": 2, "c": 2, "d": 4})


def test_family_nonabelian_dim3_examples():
    _, d = family_nonabelian_dim3(1, 1, 0, 0, 0)
    assert d.xi == d.d == Matrix([[0, 0, 0], [1, 0, 0], [0, 0, 0]])
    assert d.b0 == (0, 0, 0)
    _, d = family_nonabelian_dim3(1, 0, 0, 1, 0)
    assert d.xi.is_zero() and d.d == Matrix([[0, 0, 0], [0, 0, 1], [0, -1, 0]])
    _, d = family_nonabelian_dim3(2, 1, 1, 2, 3)
    assert d.b0 == (3, 1, 1)
    with pytest.raises(ConstraintError):
        family_nonabelian_dim3(0, 1, 0, 0, 0)


def test_family_nonabelian_dim4_examples():
    _, d = family_nonabelian_dim4(1, 0, 0, 1, 0, 0, 5, 6)
    expected = Matrix([[0, 0, 0, 0], [0, 0, 0, 0], [1, 0, 0, 0], [0, 0, 0, 0]])
    assert d.d == d.xi == expected and d.b0 == (5, 6, 0, 0)
    _, d = family_nonabelian_dim4(3, 4, 1, 0, 0, 0, 0, 0)
    block = Matrix([[12, 16, 0, 0], [-9, -12, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0]])
    assert d.d == d.xi == block
    _, d = family_nonabelian_dim4(1, 1, 0, 0, 0, 2, 1, 1)
    assert d.d - d.xi == Matrix([[0, 0, 0, 0], [0, 0, 0, 0], [0, 0, 0, 2], [0, 0, -2, 0]])
    assert d.b0 == (1, 1, 0, 0)
    with pytest.raises(ConstraintError):
        family_nonabelian_dim4(0, 0, 1, 0, 0, 0, 0, 0)


def test_block_conditions_examples():
    assert prs_condition_check(*family_nonabelian_dim3(1, 1, 0, 0, 0)).passed
    assert prs_condition_check(*family_nonabelian_dim4(1, 0, 0, 1, 0, 0, 0, 0)).passed


def test_block_conditions_identity_derivation():
    # D = xi = I on the 3-dimensional base: D - xi = 0 is skew and the
    # off-diagonal blocks of I vanish, so the first condition holds; the
    # failure shows up in the bracket compatibility and commutator blocks.
    B, _ = family_nonabelian_dim3(1, 0, 0, 0, 0)
    ident = ExtensionData(Matrix.identity(3), Matrix.identity(3))
    rep = prs_condition_check(B, ident)
    assert rep.checks["1s"] is True
    assert set(rep.failures) == {"3s", "5s", "6s"}
    assert not is_admissible(B, ident).passed


def test_block_conditions_need_nonabelian_base():
    with pytest.raises(PreconditionError):
        prs_condition_check(B2, ExtensionData(N2, N2))


def _abelian_members():
    values = [Q(1), Q(-2), Q("1/2")]
    for (dim, form), names in sorted(ABELIAN_FORM_PARAMS.items()):
        for combo in itertools.product(values, repeat=len(names)):
            params = dict(zip(names, combo))
            if "lam" in params:
                params["lam"] = abs(params["lam"])
            try:
                yield dim, form, family_abelian(dim, form, params, [1] + [0] * (dim - 1))
            except ConstraintError:
                continue


@pytest.mark.parametrize("dim, form, data", list(_abelian_members()), ids=lambda v: str(v) if isinstance(v, (int, str)) else "")
def test_abelian_family_member(dim, form, data):
    B = abelian_base(dim)
    assert is_admissible(B, data).passed
    M = extend(B, data)
    assert is_flat(M) and M.signature() == (1, 0, dim + 1) and is_unimodular(M.algebra)
    assert data.d.trace() == 0
    an = abelian_admissibility_analysis(B, data)
    assert an.certificate.passed, an.certificate.failures
    assert center_degenerate(M)
    assert round_trip_ok(M)


# The implication "(D, b0) != (0, 0)  =>  degenerate center" fails on the
# non-abelian families: a derivation that is inner up to the z-direction can
# be absorbed by a change of basis, leaving a nondegenerate center.  These
# tests pin down exactly where it fails.

def test_dim3_family_center_degenerate_iff_b1_nonzero():
    vals = [Q(0), Q(1), Q(-2)]
    for a, b, c, b1 in itertools.product(vals, repeat=4):
        B, data = family_nonabelian_dim3(1, a, b, c, b1)
        if data.d_b0_trivial():
            continue
        M = extend(B, data)
        assert is_flat(M) and M.signature() == (1, 0, 4)
        assert center_degenerate(M) == (b1 != 0), (a, b, c, b1)


def test_dim4_family_center_degenerate_iff_x_or_b_nonzero():
    for l1, l2 in [(1, 0), (0, 1), (1, 2)]:
        for x, c, d, f, b1, b2 in itertools.product([Q(0), Q(1)], repeat=6):
            B, data = family_nonabelian_dim4(l1, l2, x, c, d, f, b1, b2)
            if data.d_b0_trivial():
                continue
            M = extend(B, data)
            assert center_degenerate(M) == bool(x or b1 or b2)


def test_inner_derivation_counterexample():
    B, data = family_nonabelian_dim3(2, 0, 0, 1, 0)
    assert not data.d_b0_trivial()
    M = extend(B, data)
    assert is_flat(M)
    zc = center(M.algebra)
    assert zc.dim == 2
    assert not center_degenerate(M)
    with pytest.raises(PreconditionError, match="center nondegenerate"):
        split(M)


scal = st.sampled_from([Q(x) for x in ("0", "1", "-1", "2", "1/2", "-3/2")])
pos = st.sampled_from([Q(x) for x in ("1", "2", "1/2", "3")])


@settings(max_examples=40, deadline=None)
@given(pos, scal, scal, scal, scal)
def test_dim3_family_always_admissible(lam, a, b, c, b1):
    B, data = family_nonabelian_dim3(lam, a, b, c, b1)
    assert is_admissible(B, data).passed
    rep = prs_condition_check(B, data)
    assert rep.passed and rep.checks["trace_D_zero"] is True
    M = extend(B, data)
    assert is_flat(M) and is_unimodular(M.algebra)
    if center_degenerate(M):
        assert round_trip_ok(M)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([(1, 0), (0, 1), (1, 2), (3, 4), (Q("1/2"), 1)]), scal, scal, scal, scal, scal, scal)
def test_dim4_family_always_admissible(lams, x, c, d, f, b1, b2):
    B, data = family_nonabelian_dim4(*lams, x, c, d, f, b1, b2)
    assert is_admissible(B, data).passed
    assert prs_condition_check(B, data).passed
    M = extend(B, data)
    assert is_flat(M) and is_unimodular(M.algebra)
    if center_degenerate(M):
        assert round_trip_ok(M)


def test_extension_data_json_round_trip():
    data = ExtensionData(N2, N2, Q("1/3"), (1, -2))
    assert ExtensionData.from_json(data.to_json()) == data
