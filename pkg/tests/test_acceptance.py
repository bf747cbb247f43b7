"""Acceptance criteria, one test per criterion at full trial counts.

Each test prints a single pass/fail line (run pytest with -s to see them)
and enforces the stated time budget.  Seeds are fixed so the whole run is
reproducible.
"""

from larmour import selftest

SEED = selftest.DEFAULT_SEED

BUDGETS = {1: 1.0, 2: 1.0, 3: 10.0, 4: 5.0, 5: 20.0, 6: 10.0, 7: 2.0, 8: 2.0, 9: 5.0, 10: 1.0}


def _check(result):
    print(result.line())
    for note in result.notes[:5]:
        print("   ", note)
    assert result.failures == 0, result.notes[:5]
    budget = BUDGETS[result.criterion]
    assert result.elapsed < budget, f"criterion {result.criterion}: {result.elapsed:.2f}s >= {budget}s"


def test_criterion_01_table_reproduction():
    _check(selftest.suite_classification_fixtures(SEED))


def test_criterion_02_symmetric_uniformizers():
    _check(selftest.suite_uniformizer(SEED, trials=200))


def test_criterion_03_witness_soundness():
    _check(selftest.suite_witness_soundness(SEED, forms=500))


def test_criterion_04_hensel_round_trips():
    _check(selftest.suite_hensel_roundtrip(SEED, trials=100))


def test_criterion_05_boundary_homomorphism():
    _check(selftest.suite_boundary_homomorphism(SEED, pairs_per_case=200, zero_trials=100))


def test_criterion_06_well_definedness():
    _check(selftest.suite_well_definedness(SEED, trials_per_case=100))


def test_criterion_07_even_s_unramified():
    _check(selftest.suite_remark_even_s(SEED, trials_per_case=100))


def test_criterion_08_springer_engine():
    _check(selftest.suite_springer(SEED, pairs=200))


def test_criterion_09_witt_oracles():
    _check(selftest.suite_witt_oracles(SEED))


def test_criterion_10_residue_shapes():
    _check(selftest.suite_residue_shapes(SEED))
