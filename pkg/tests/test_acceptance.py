"""End-to-end acceptance checks on the default grids; one line per criterion."""

import os
import subprocess
import sys
import time
from pathlib import Path

import pytest

from satakecheck.harness import ShiftCalibration, VerificationJob, run_suite

from conftest import record_criterion

GRID_TYPES = ("A1", "A2", "C2")
ALL_TYPES = ("A1", "A2", "B2", "C2")


@pytest.fixture(scope="module")
def reports():
    out = {}
    for t in ALL_TYPES:
        t0 = time.perf_counter()
        out[t] = (run_suite(VerificationJob(cartan_type=t, cutoff=12, seed=42, trials=20)), time.perf_counter() - t0)
    return out


def _select(reports, types, prefix):
    recs = [r for t in types for r in reports[t][0].checks if r.check_id.startswith(prefix)]
    bad = [(r.check_id, r.inputs, r.status, r.detail) for r in recs if r.status != "PASS"]
    return recs, bad


def _check(n, reports, types, prefix, extra=""):
    recs, bad = _select(reports, types, prefix)
    ok = bool(recs) and not bad
    record_criterion(n, ok, f"{len(recs) - len(bad)}/{len(recs)} checks pass on {','.join(types)}{extra}")
    assert recs, f"no {prefix} records"
    assert not bad, bad[:5]


def test_criterion_1_lusztig_identity(reports):
    secs = sum(sum(r.runtime for r in reports[t][0].checks if r.check_id.startswith("lusztig")) for t in GRID_TYPES)
    _check(1, reports, GRID_TYPES, "lusztig.", f" in {secs:.1f}s")
    assert secs <= 600


def test_criterion_2_multiplicities(reports):
    _check(2, reports, ALL_TYPES, "mult.")


def test_criterion_3_base_case(reports):
    secs = sum(sum(r.runtime for r in reports[t][0].checks if r.check_id.startswith("gr.")) for t in GRID_TYPES)
    shifts = {t: reports[t][0].observed_shifts.get(f"gr/{t}") for t in GRID_TYPES}
    same = all(v == ShiftCalibration.PREDICTED for v in shifts.values())
    recs, bad = _select(reports, GRID_TYPES, "gr.")
    record_criterion(3, bool(recs) and not bad and same,
                     f"{len(recs) - len(bad)}/{len(recs)} pairs; shifts {shifts}; {secs:.1f}s")
    assert recs and not bad, bad[:5]
    assert same, shifts
    assert secs <= 1200


def test_criterion_4_spectral_freeness_and_ranks(reports):
    _check(4, reports, GRID_TYPES, "main.")
    for t in GRID_TYPES:
        ids = {r.check_id for r in reports[t][0].checks}
        assert {"main.free_total_rank", "main.coset_ranks", "main.weight_numerator",
                "main.principal_hilbert"} <= ids


def test_criterion_5_slices(reports):
    _check(5, reports, ALL_TYPES, "slices.")
    for t in ALL_TYPES:
        torsor = [r for r in reports[t][0].checks if r.check_id == "slices.section_torsor"]
        levis = {r.inputs["I"] for r in torsor}
        assert all(sum(r.inputs["I"] == I for r in torsor) >= 20 for I in levis)


def test_criterion_6_localization(reports):
    _check(6, reports, GRID_TYPES, "localization.")


PROPERTY_FILES = ["test_rootdata.py", "test_affweyl.py", "test_klpoly.py", "test_qmult.py", "test_hwrep.py"]


def test_criterion_7_property_suites_cold(tmp_path):
    here = Path(__file__).parent
    env = {k: v for k, v in os.environ.items() if k != "SATAKECHECK_CACHE_DIR"}
    t0 = time.perf_counter()
    proc = subprocess.run(
        [sys.executable, "-m", "pytest", "-q", "-p", "no:cacheprovider", "-k", "A1 or not [",
         *[str(here / f) for f in PROPERTY_FILES]],
        cwd=tmp_path, env=env, capture_output=True, text=True, check=False,
    )
    secs = time.perf_counter() - t0
    last = proc.stdout.strip().splitlines()[-1] if proc.stdout.strip() else proc.stderr[-200:]
    ok = proc.returncode == 0 and secs <= 300 and not any(tmp_path.rglob("*.json"))
    record_criterion(7, ok, f"{last} ({secs:.1f}s, cold)")
    assert proc.returncode == 0, proc.stdout[-2000:]
    assert secs <= 300
