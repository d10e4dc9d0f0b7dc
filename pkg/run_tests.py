"""Test runner for sigma-spectra."""

import sys
import subprocess


def run_tests():
    """Run the fast suite, or everything with --slow."""
    print("=" * 60)
    print("Running sigma-spectra Tests")
    print("=" * 60)
    print()

    command = [sys.executable, "-m", "pytest", "tests/", "-v", "--tb=short"]
    if "--slow" in sys.argv[1:]:
        command += ["-m", "slow or not slow"]

    result = subprocess.run(command, capture_output=False)
    return result.returncode


if __name__ == "__main__":
    sys.exit(run_tests())
