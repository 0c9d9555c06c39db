#!/usr/bin/env python3
"""
Tests for the two class-number oracles
"""

import pytest
from pydantic import ValidationError

from arith import Prime, is_prime
from sums.class_number import (
    HStarMethod,
    HStarResult,
    dirichlet_sum,
    h_star_dirichlet,
    h_star_forms,
    reduced_forms,
)


def test_dirichlet_examples():
    assert h_star_dirichlet(Prime(7)).h_star == 1
    assert h_star_dirichlet(Prime(13)).h_star == 0
    assert h_star_dirichlet(Prime(31)).h_star == 3
    assert h_star_dirichlet(Prime(7)).method is HStarMethod.DIRICHLET


def test_forms_examples():
    assert h_star_forms(Prime(7)).h_star == 1
    assert h_star_forms(Prime(31)).h_star == 3
    assert h_star_forms(Prime(131)).h_star == 5
    assert h_star_forms(Prime(13)).h_star == 0


def test_reduced_forms_lists():
    assert reduced_forms(-7) == [(1, 1, 2)]
    assert reduced_forms(-31) == [(1, 1, 8), (2, -1, 4), (2, 1, 4)]
    assert reduced_forms(-23) == [(1, 1, 6), (2, -1, 3), (2, 1, 3)]
    assert len(reduced_forms(-4)) == 1
    with pytest.raises(ValueError):
        reduced_forms(5)
    with pytest.raises(ValueError):
        reduced_forms(-6)


def test_oracles_agree_up_to_2000():
    for p in range(5, 2001):
        if not is_prime(p):
            continue
        prime = Prime(p)
        assert h_star_dirichlet(prime).h_star == h_star_forms(prime).h_star


def test_dirichlet_sum_sign_and_divisibility():
    for p in range(5, 2001):
        if not is_prime(p):
            continue
        total = dirichlet_sum(Prime(p))
        if p % 4 == 1:
            assert total == 0
        else:
            assert total < 0 and total % p == 0


def test_h_star_result_validation():
    assert HStarResult(p=7, h_star=1, method="forms").method is HStarMethod.FORMS
    with pytest.raises(ValidationError):
        HStarResult(p=7, h_star=0, method="forms")
    with pytest.raises(ValidationError):
        HStarResult(p=13, h_star=2, method="dirichlet")
    with pytest.raises(ValidationError):
        HStarResult(p=7, h_star=-1, method="dirichlet")


def main():
    """Run all tests"""
    print("🔢 Class Number Oracles - Tests")
    print("=" * 40)

    tests = [(name, fn) for name, fn in globals().items() if name.startswith("test_") and callable(fn)]
    passed = 0
    for name, fn in tests:
        try:
            fn()
            passed += 1
            print(f"   {name}: ✅ PASS")
        except AssertionError as e:
            print(f"   {name}: ❌ FAIL {e}")

    print(f"\n🎯 Overall: {passed}/{len(tests)} tests passed")
    return passed == len(tests)


if __name__ == "__main__":
    raise SystemExit(0 if main() else 1)
