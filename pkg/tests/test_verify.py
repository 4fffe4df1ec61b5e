"""Self-check suite plumbing."""

import pytest

from fadecap.distributions import make_gamma_diversity, make_max_exponential
from fadecap.verify import run_checks


def test_fast_level_all_pass():
    results = run_checks(make_gamma_diversity(2), level="fast")
    assert results, "no checks ran"
    failed = [r.name for r in results if not r.passed]
    assert not failed, failed


def test_fast_level_handles_degenerate_inversion():
    # single-branch gain: inversion capacity is identically zero and the
    # checks must treat that as the expected behavior, not a failure
    results = run_checks(make_gamma_diversity(1), level="fast")
    failed = [r.name for r in results if not r.passed]
    assert not failed, failed


def test_full_level_includes_mc_checks():
    results = run_checks(make_max_exponential(2), level="full", seed=0)
    names = {r.name for r in results}
    assert {"mc_oa", "mc_ra", "mc_ci", "mc_tci", "mc_ctci"} <= names
    failed = [r.name for r in results if not r.passed]
    assert not failed, failed


def test_unknown_level_rejected():
    with pytest.raises(ValueError):
        run_checks(make_gamma_diversity(2), level="paranoid")
