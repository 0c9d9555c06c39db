#!/usr/bin/env python3
"""
Simple test script to verify the verifier setup: imports, configuration
and the optional config file
"""

import io
import os
import tempfile
from contextlib import redirect_stderr, redirect_stdout
from unittest import mock

import pytest

from config import settings
from config.settings import FILE_KEYS, Config


def test_imports():
    """Test that all required imports work"""
    print("🧪 Testing imports...")

    import numpy  # noqa: F401
    import pydantic  # noqa: F401
    import dotenv  # noqa: F401

    from arith import Prime  # noqa: F401
    from sums.orchestrator import run_sweep  # noqa: F401
    from run import main  # noqa: F401

    print("✅ Imports")


def test_configuration():
    """Test configuration defaults and validation"""
    print("\n🧪 Testing configuration...")
    assert Config.validate()
    assert Config.NAIVE_CAP >= 5
    assert Config.EXHAUSTIVE_LIMIT >= 7

    with mock.patch.object(Config, "OUTPUT_FORMAT", "xml"):
        with pytest.raises(ValueError):
            Config.validate()
    with mock.patch.object(Config, "NAIVE_CAP", 1):
        with pytest.raises(ValueError):
            Config.validate()
    print("✅ Configuration validation passed")


def test_worker_count_reads_the_environment():
    with mock.patch.dict(os.environ, {"ISOSUM_WORKERS": "6"}):
        assert Config.worker_count() == 6
    with mock.patch.dict(os.environ, {"ISOSUM_WORKERS": "0"}):
        with pytest.raises(ValueError):
            Config.validate()
    with mock.patch.dict(os.environ, {}, clear=False):
        os.environ.pop("ISOSUM_WORKERS", None)
        assert Config.worker_count() == Config.WORKERS


def test_non_integer_settings_are_reported_not_raised():
    with mock.patch.dict(os.environ, {"ISOSUM_WORKERS": "many"}):
        with pytest.raises(ValueError, match="ISOSUM_WORKERS must be an integer"):
            Config.worker_count()
        with pytest.raises(ValueError, match="ISOSUM_WORKERS must be an integer"):
            Config.validate()

    with mock.patch.dict(settings._UNPARSED), mock.patch.dict(os.environ, {"ISOSUM_NAIVE_CAP": "lots"}):
        assert settings._env_int("ISOSUM_NAIVE_CAP", 20000) == 20000
        with pytest.raises(ValueError, match="ISOSUM_NAIVE_CAP must be an integer, got 'lots'"):
            Config.validate()
    assert "ISOSUM_NAIVE_CAP" not in settings._UNPARSED

    with mock.patch.dict(os.environ, {"ISOSUM_TABLE_LIMIT": " "}):
        assert settings._env_int("ISOSUM_TABLE_LIMIT", 7) == 7


def test_cli_reports_bad_environment():
    from run import main as cli_main

    err = io.StringIO()
    with mock.patch.dict(os.environ, {"ISOSUM_WORKERS": "many"}), redirect_stderr(err), redirect_stdout(io.StringIO()):
        assert cli_main(["class-number", "--p", "7"]) == 2
    assert "❌" in err.getvalue() and "ISOSUM_WORKERS" in err.getvalue()


def test_load_file():
    assert Config.load_file(None) == {}
    assert Config.load_file("") == {}

    with tempfile.TemporaryDirectory() as tmp:
        with pytest.raises(ValueError):
            Config.load_file(os.path.join(tmp, "nope.env"))

        path = os.path.join(tmp, "sweep.env")
        with open(path, "w", encoding="utf-8") as fh:
            fh.write("# sweep settings\nFROM=7\nTo=199\nFAIL-FAST=true\nworkers=4\n")
        assert Config.load_file(path) == {"from": "7", "to": "199", "fail_fast": "true", "workers": "4"}

        with open(path, "a", encoding="utf-8") as fh:
            fh.write("PRECISION=high\n")
        with pytest.raises(ValueError, match="precision"):
            Config.load_file(path)

    assert "from" in FILE_KEYS and "timing" in FILE_KEYS


def main():
    """Run all tests"""
    print("🧮 Isogeny Sum Verifier - System Test")
    print("=" * 40)

    tests = [
        ("Imports", test_imports),
        ("Configuration", test_configuration),
        ("Workers", test_worker_count_reads_the_environment),
        ("Bad environment", test_non_integer_settings_are_reported_not_raised),
        ("CLI environment", test_cli_reports_bad_environment),
        ("Config file", test_load_file),
    ]

    results = []
    for name, fn in tests:
        try:
            fn()
            results.append((name, True))
        except (AssertionError, ImportError, ValueError) as e:
            print(f"❌ {name}: {e}")
            results.append((name, False))

    print("\n" + "=" * 40)
    print("📊 Test Results:")

    passed = 0
    for name, result in results:
        status = "✅ PASS" if result else "❌ FAIL"
        print(f"   {name}: {status}")
        if result:
            passed += 1

    total = len(results)
    print(f"\n🎯 Overall: {passed}/{total} tests passed")

    if passed == total:
        print("\n🚀 All tests passed! The verifier is ready to run.")
        print("   Start with: python run.py verify --from 7 --to 199")
    else:
        print(f"\n⚠️  {total - passed} test(s) failed. Please check the issues above.")
    return passed == total


if __name__ == "__main__":
    raise SystemExit(0 if main() else 1)
