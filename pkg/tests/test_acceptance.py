"""Acceptance suite.  Every check is an exact equality; there are no tolerances.

Each test records a ``criterion N: PASS/FAIL`` line, printed at the end of the
pytest run.  Criteria 2 and 3 do not hold as stated for the non-abelian
families (a derivation that is inner up to the z-direction leaves the center
nondegenerate, so no split exists).  Those tests assert the full statement and
are marked strict xfail; the parts that do hold are asserted separately.
"""

import time
from functools import lru_cache

import pytest

from flatlie import catalog
from flatlie.doubleext import (
    ExtensionData,
    abelian_admissibility_analysis,
    abelian_base,
    extend,
    is_admissible,
    prs_condition_check,
    round_trip_ok,
)
from flatlie.errors import PreconditionError
from flatlie.exactnum import Matrix
from flatlie.liealg import is_unimodular
from flatlie.metric import (
    center_degenerate,
    flat_structure_diagnostics,
    general_identities,
    is_flat,
    left_symmetric_defect,
)
from flatlie.milnor import build_riemannian_flat, eq12_check, milnor_check, milnor_verdict_holds

from helpers import affine_line, fuzz_admissible, milnor_grid, nonflat_controls, perturbed_candidates, report_criterion

CENTER_GAP = "nondegenerate center after extension on inner-derivation data"


@lru_cache(maxsize=None)
def fuzz_extensions():
    out = []
    for label, B, data in fuzz_admissible(100):
        out.append((label, data, extend(B, data)))
    return tuple(out)


@lru_cache(maxsize=None)
def catalog_instances():
    out = []
    for e in catalog.entries():
        for p in catalog.sample_params(e, 3):
            out.append((e.id, catalog.instantiate(e.id, p)))
    return tuple(out)


@lru_cache(maxsize=None)
def milnor_builds():
    return tuple(build_riemannian_flat(d) for d in milnor_grid())


def every_instance():
    yield from (M for _, M in catalog_instances())
    yield from milnor_builds()
    yield from (M for _, _, M in fuzz_extensions())
    yield from nonflat_controls()


def test_criterion_1_catalog_reproduction():
    start = time.perf_counter()
    rep = catalog.verify_all(samples=3)
    elapsed = time.perf_counter() - start
    dims = sorted(e.dim for e in catalog.entries())
    counts = tuple(dims.count(d) for d in (3, 4, 5, 6))
    enough = all(len(r["samples"]) >= 3 for r in rep["entries"])
    ok = rep["pass"] and rep["total"] == 16 and counts == (1, 3, 4, 8) and enough and elapsed < 5
    report_criterion("1", ok, f"{rep['summary']} entries, counts {counts}, {elapsed:.2f}s")
    assert ok


@pytest.mark.xfail(strict=True, reason="two table rows have nondegenerate center on part of their parameter range")
def test_criterion_1_supplement_full_grid_scan():
    failing = {}
    for e in catalog.entries():
        scan = catalog.scan_entry(e.id)
        if not scan["pass"]:
            failing[e.id] = scan["failures"]
    ok = not failing
    report_criterion("1-grid", ok, f"full parameter-grid scan, failing rows {failing}")
    assert ok


def test_criterion_2_sound_parts():
    """Flat, Lorentzian and unimodular on every draw; the trivial control
    has nondegenerate center; the abelian forms always give degenerate center."""
    bad = []
    for label, data, M in fuzz_extensions():
        n = M.dim
        if not (is_flat(M) and M.signature() == (1, 0, n - 1) and is_unimodular(M.algebra)):
            bad.append(label)
        if label.startswith("abelian") and not data.d_b0_trivial() and not center_degenerate(M):
            bad.append(label)
    for dim in (1, 2, 3, 4):
        control = extend(abelian_base(dim), ExtensionData(Matrix.zeros(dim), Matrix.zeros(dim)))
        if center_degenerate(control):
            bad.append(f"control{dim}")
    assert not bad, bad


@pytest.mark.xfail(strict=True, reason=CENTER_GAP)
def test_criterion_2_extension_statement():
    total = 0
    failures = {"flat": 0, "lorentzian": 0, "unimodular": 0, "degenerate_center": 0}
    for _, data, M in fuzz_extensions():
        total += 1
        failures["flat"] += not is_flat(M)
        failures["lorentzian"] += M.signature() != (1, 0, M.dim - 1)
        failures["unimodular"] += not is_unimodular(M.algebra)
        if not data.d_b0_trivial():
            failures["degenerate_center"] += not center_degenerate(M)
    control = extend(abelian_base(2), ExtensionData(Matrix.zeros(2), Matrix.zeros(2)))
    control_ok = not center_degenerate(control)
    ok = total == 100 and not any(failures.values()) and control_ok
    report_criterion("2", ok, f"{total} draws, failures {failures}, control nondegenerate={control_ok}")
    assert ok


def test_criterion_3_sound_parts():
    """Round trip holds wherever the center is degenerate."""
    for _, M in catalog_instances():
        assert round_trip_ok(M)
    for label, _, M in fuzz_extensions():
        if center_degenerate(M):
            assert round_trip_ok(M), label


@pytest.mark.xfail(strict=True, reason=CENTER_GAP)
def test_criterion_3_round_trip():
    cat_fail = sum(not round_trip_ok(M) for _, M in catalog_instances())
    fuzz_fail = 0
    for _, _, M in fuzz_extensions():
        try:
            fuzz_fail += not round_trip_ok(M)
        except PreconditionError:
            fuzz_fail += 1
    n_cat, n_fuzz = len(catalog_instances()), len(fuzz_extensions())
    ok = cat_fail == 0 and fuzz_fail == 0
    report_criterion(
        "3", ok,
        f"catalog {n_cat - cat_fail}/{n_cat}, fuzzed {n_fuzz - fuzz_fail}/{n_fuzz} (failures cannot be split)",
    )
    assert ok


def test_criterion_4_milnor_suite():
    bad = []
    for M in milnor_builds():
        rep = milnor_check(M)
        four_way = flat_structure_diagnostics(M).checks["riemannian_four_way"]
        if not (rep.passed and rep.checks["derived_dim_even"] and eq12_check(M) and four_way):
            bad.append(M)
    control = milnor_check(affine_line())
    control_ok = (
        not control.passed
        and control.checks["is_flat"] is False
        and not is_flat(affine_line())
        and milnor_verdict_holds(control)
    )
    ok = not bad and control_ok
    report_criterion("4", ok, f"{len(milnor_builds()) - len(bad)}/{len(milnor_builds())} builds, control consistent={control_ok}")
    assert ok


def test_criterion_5_general_identities():
    total, bad = 0, []
    for M in every_instance():
        total += 1
        rep = general_identities(M)
        if not rep.passed:
            bad.append((M, rep.failures))
    ok = not bad
    report_criterion("5", ok, f"{total - len(bad)}/{total} instances")
    assert ok, bad


def test_criterion_6_flat_diagnostics():
    flat_total, diag_bad, defect_bad, total = 0, [], [], 0
    for M in every_instance():
        total += 1
        flat = is_flat(M)
        if flat != (left_symmetric_defect(M) == 0):
            defect_bad.append(M)
        if flat:
            flat_total += 1
            rep = flat_structure_diagnostics(M)
            if not rep.passed:
                diag_bad.append((M, rep.failures))
    ok = not diag_bad and not defect_bad
    report_criterion(
        "6", ok,
        f"diagnostics {flat_total - len(diag_bad)}/{flat_total} flat, defect<=>flat {total - len(defect_bad)}/{total}",
    )
    assert ok, (diag_bad, defect_bad)


REQUIRED_CERTIFICATE = (
    "A_xi_power_identity",
    "xi_nilpotent",
    "A_preserves_splitting",
    "ker_A_in_ker_xi2",
)


def test_criterion_7_abelian_analysis_and_block_conditions():
    n_abelian, cert_bad = 0, []
    for label, data, _ in fuzz_extensions():
        if not label.startswith("abelian"):
            continue
        n_abelian += 1
        an = abelian_admissibility_analysis(abelian_base(data.dim), data)
        checks = an.certificate.checks
        q_ok = checks["q_below_dim"] is not False and (data.dim < 3 or checks["q_below_dim"] is True)
        if not (an.certificate.passed and q_ok and all(checks[k] for k in REQUIRED_CERTIFICATE)):
            cert_bad.append((label, an.certificate.failures))
    agree, admissible, n_cand = 0, 0, 0
    for _, B, data in perturbed_candidates(100):
        n_cand += 1
        adm = is_admissible(B, data).passed
        admissible += adm
        agree += prs_condition_check(B, data).passed == adm
    ok = not cert_bad and agree == n_cand == 100
    report_criterion(
        "7", ok,
        f"abelian certificates {n_abelian - len(cert_bad)}/{n_abelian}, "
        f"block conditions agree {agree}/{n_cand} ({admissible} admissible)",
    )
    assert ok, cert_bad
