#!/usr/bin/env python3
"""
Tests for the elliptic surface: the global map and character, the global sum
by every route, and the row identities behind the fast path
"""

import pytest
from pydantic import ValidationError

from arith import Prime, cubic_exponent_value, is_prime, legendre_value, omega_value
from arith.curve import CurveParams, CurvePoint
from arith.errors import InvalidPrimeError, KernelPointError, NotOnCurveError, ZeroArgumentError
from sums import CyclotomicSum
from sums.class_number import h_star_forms
from sums.isogeny3 import FiberIsogeny, tau_apply
from sums.surface import (
    SurfaceMethod,
    SurfacePoint,
    SurfaceSumResult,
    beta_value,
    chi_surface,
    count_hyperbola,
    count_y_quadratic,
    indicator_count,
    row_profile,
    row_sum,
    s_xy,
    s_xy_direct,
    surface_sum_direct,
    surface_sum_fast,
    surface_sum_fiberwise,
    surface_sum_pointwise,
    tau_surface,
)

P7 = Prime(7)


def _cubic_primes(limit: int):
    return [p for p in range(7, limit + 1) if p % 3 == 1 and is_prime(p)]


def _surface_points(prime: Prime):
    p = prime.p
    for z in range(1, p):
        for x in range(p):
            for y in range(p):
                if (y * y - x ** 3 - z * z) % p == 0:
                    yield SurfacePoint(prime, x, y, z)


def test_surface_point_validation():
    assert SurfacePoint(P7, 0, 1, 1).fiber == 1
    with pytest.raises(ValueError):
        SurfacePoint(P7, 0, 0, 0)
    with pytest.raises(NotOnCurveError):
        SurfacePoint(P7, 1, 1, 1)


def test_beta_is_a_square_root_of_minus_27():
    for p in _cubic_primes(200):
        b = beta_value(p)
        assert (b * b + 27) % p == 0 and b <= p - b


def test_tau_surface_lands_on_the_surface_and_respects_fibers():
    for p in (7, 13, 19):
        prime = Prime(p)
        beta = beta_value(p)
        for pt in _surface_points(prime):
            if pt.x == 0:
                with pytest.raises(KernelPointError):
                    tau_surface(pt)
                continue
            image = tau_surface(pt)
            assert image.z == beta * pt.z % p

            fiber = FiberIsogeny(prime, pt.z * pt.z % p)
            assert tau_apply(fiber, CurvePoint(pt.x, pt.y)) == CurvePoint(image.x, image.y)


def test_chi_surface_trivial_on_the_image():
    for p in (7, 13):
        prime = Prime(p)
        for pt in _surface_points(prime):
            if pt.x != 0:
                assert chi_surface(tau_surface(pt)).is_trivial


def test_chi_surface_on_the_kernel_line():
    """(0, w, w) is T on its fiber, where the character is (4w^2 / p)_3"""
    for p in (7, 13, 31):
        prime = Prime(p)
        for w in range(1, p):
            expected = cubic_exponent_value(4 * w * w, p)
            assert chi_surface(SurfacePoint(prime, 0, w, w)).exponent == expected
            assert chi_surface(SurfacePoint(prime, 0, p - w, w)).exponent == (2 * expected) % 3


def test_chi_surface_conjugates_with_omega():
    prime = Prime(13)
    conjugate = omega_value(13) ** 2 % 13
    for pt in _surface_points(prime):
        assert chi_surface(pt, omega=conjugate) == chi_surface(pt).conjugate()


def test_anchor_values():
    for p, expected in ((7, -14), (13, -78), (31, -372)):
        prime = Prime(p)
        for method in (surface_sum_fiberwise, surface_sum_direct, surface_sum_fast):
            result = method(prime)
            assert result.integer_value == expected
            assert result.quotient == expected // p


def test_main_identity_up_to_499():
    """Fiberwise, direct and fast agree with p (h* - (p - 1)/2)"""
    for p in _cubic_primes(499):
        prime = Prime(p)
        expected = p * (h_star_forms(prime).h_star - (p - 1) // 2)
        fiberwise = surface_sum_fiberwise(prime)
        direct = surface_sum_direct(prime)
        fast = surface_sum_fast(prime)
        assert fiberwise.integer_value == direct.integer_value == fast.integer_value == expected
        assert fiberwise.method is SurfaceMethod.FIBERWISE and fast.method is SurfaceMethod.FAST


def test_pointwise_definition_matches():
    for p in (7, 13, 19, 31):
        prime = Prime(p)
        assert surface_sum_pointwise(prime).integer_value == surface_sum_fiberwise(prime).integer_value


def test_fiberwise_is_worker_independent():
    prime = Prime(37)
    assert surface_sum_fiberwise(prime, workers=3) == surface_sum_fiberwise(prime)


def test_surface_sums_need_p_1_mod_3():
    for method in (surface_sum_fiberwise, surface_sum_direct, surface_sum_fast, surface_sum_pointwise):
        with pytest.raises(InvalidPrimeError):
            method(Prime(11))


def test_surface_sum_result_validation():
    with pytest.raises(ValidationError):
        SurfaceSumResult(p=7, total=CyclotomicSum(a=-14), integer_value=-14, quotient=-1, method="fast")
    with pytest.raises(ValidationError):
        SurfaceSumResult(p=7, total=CyclotomicSum(a=1, b=2), integer_value=-1, quotient=0, method="direct")


def test_s_xy_examples():
    prime = P7
    assert s_xy(prime, 2, 1) == 0  # y^2 = x^3
    assert s_xy(prime, 3, 0) == 2
    assert s_xy(prime, 1, 0) == 0  # -1 is not a square mod 7
    assert {s_xy(prime, x, y) for x in range(1, 7) for y in range(7)} <= {0, 2, -1}
    with pytest.raises(ZeroArgumentError):
        s_xy(prime, 0, 1)


def test_s_xy_matches_the_direct_z_sum():
    for p in _cubic_primes(61):
        prime = Prime(p)
        for x in range(1, p):
            for y in range(p):
                assert s_xy_direct(prime, x, y).integer_value() == s_xy(prime, x, y)


def test_symbols_at_both_roots_are_inverse():
    for p in (7, 13, 31):
        beta = beta_value(p)
        for x in range(1, p):
            for y in range(p):
                for z in range(1, p):
                    if (y * y - x ** 3 + 27 * z * z) % p == 0:
                        plus = cubic_exponent_value(y + beta * z, p)
                        minus = cubic_exponent_value(y - beta * z, p)
                        assert (plus + minus) % 3 == 0


def test_row_identities_up_to_199():
    for p in _cubic_primes(199):
        prime = Prime(p)
        for x in range(1, p):
            square = legendre_value(x, p) == 1
            assert row_sum(prime, x) == (-2 if square else 0)
            assert count_y_quadratic(prime, x) == ((p - 3) // 2 if square else (p - 1) // 2)


def test_count_y_quadratic_examples():
    assert count_y_quadratic(P7, 3) == 3
    assert count_y_quadratic(P7, 1) == 2


def test_row_profile_and_hyperbola():
    for p in (7, 13, 31, 61):
        prime = Prime(p)
        sixth, third = (p - 1) // 6, (p - 1) // 3
        for x in range(1, p):
            profile = row_profile(prime, x)
            if legendre_value(x, p) == 1:
                assert (profile[2], profile[-1]) == (sixth - 1, third)
            else:
                assert (profile[2], profile[-1]) == (sixth, third)
            assert count_hyperbola(prime, x) == p - 1


def test_weighted_rows_give_the_fast_sum():
    for p in (7, 13, 31):
        prime = Prime(p)
        assert sum(x * row_sum(prime, x) for x in range(1, p)) == surface_sum_fast(prime).integer_value


def test_indicator_count():
    for p in (7, 13, 19):
        prime = Prime(p)
        expected = 0
        for z in range(1, p):
            curve = CurveParams.mordell(prime, -27 * z * z)
            expected += sum(1 for pt in curve.enumerate_affine() if pt.x != 0)
        assert indicator_count(prime) == expected


def main():
    """Run all tests"""
    print("🌐 Elliptic Surface - Tests")
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
