"""
Console Progress

Human-readable progress for the pipelines, written to standard error so
standard output carries nothing but the JSON report. `--quiet` switches it off.
"""

import sys

_QUIET = False


def set_quiet(quiet: bool) -> None:
    global _QUIET
    _QUIET = quiet


def _emit(text: str) -> None:
    if not _QUIET:
        print(text, file=sys.stderr)


def banner(title: str) -> None:
    """Section header framed by rules of '='."""
    _emit("\n" + "=" * 60)
    _emit(title)
    _emit("=" * 60)


def step(message: str) -> None:
    _emit(message)


def ok(message: str) -> None:
    _emit(f"✓ {message}")


def warn(message: str) -> None:
    _emit(f"⚠ {message}")


def fail(message: str) -> None:
    _emit(f"✗ {message}")


def error(message: str) -> None:
    """Errors are printed even in quiet mode."""
    print(f"✗ {message}", file=sys.stderr)
