"""The acceptance gate: every criterion at its contracted sample counts.

Each test prints one PASS/FAIL line (visible with -s or on failure) and
asserts the criterion outcome; `cremona-lab verify` runs the same code.
"""

import os

from cremona_lab import acceptance

JOBS = max(1, os.cpu_count() or 1)


def _check(result):
    line = f"{'PASS' if result.passed else 'FAIL'} criterion-{result.number}: " \
           f"{result.title} [{result.elapsed:.1f}s] {result.detail}"
    print(line)
    assert result.passed, line


def test_criterion_01_degree_identities():
    _check(acceptance.criterion_1(jobs=1))


def test_criterion_02_family_invariants():
    _check(acceptance.criterion_2(jobs=JOBS))


def test_criterion_03_birationality_cross_validation():
    _check(acceptance.criterion_3(jobs=JOBS))


def test_criterion_04_ruled_dichotomy():
    _check(acceptance.criterion_4(jobs=JOBS))


def test_criterion_05_hudson_point_types():
    _check(acceptance.criterion_5(jobs=JOBS))


def test_criterion_06_missing_rows():
    _check(acceptance.criterion_6(jobs=JOBS))


def test_criterion_07_deformation_endpoints():
    _check(acceptance.criterion_7(jobs=JOBS))


def test_criterion_08_emptiness_scan():
    _check(acceptance.criterion_8(jobs=JOBS))


def test_criterion_09_golden_rational_examples():
    _check(acceptance.criterion_9(jobs=1))


def test_criterion_10_kernel_property_suites():
    _check(acceptance.criterion_10(jobs=1))


def test_table_integrity_guard():
    from cremona_lab.hudson import load_table

    load_table(verify=True)
