import os
import sys

BANNER_WIDTH = 60

QUIET, NORMAL, VERBOSE = 0, 1, 2

_state = {"verbosity": NORMAL}


def set_verbosity(level):
    """
    Set how chatty the diagnostics on stderr are.

    Parameters
    ----------
    level : int
        One of ``QUIET``, ``NORMAL`` or ``VERBOSE``.
    """
    _state["verbosity"] = level


def verbosity():
    return _state["verbosity"]


def _colour(tag, code):
    if os.environ.get("NO_COLOR") is not None or not sys.stderr.isatty():
        return tag
    return f"\033[{code}m{tag}\033[0m"


def log(tag, message, level=VERBOSE):
    """
    Print a bracket-tagged diagnostic line to stderr.

    Parameters
    ----------
    tag : str
        The unit of work, e.g. ``"Orbit A2"`` or ``"Catalog p1"``.
    message : str
    level : int
        Minimal verbosity at which the line is shown.
    """
    if _state["verbosity"] >= level:
        print(f"{_colour(f'[{tag}]', '36')} {message}", file=sys.stderr)


def warn(tag, message):
    if _state["verbosity"] >= NORMAL:
        print(f"{_colour(f'[{tag}]', '33')} WARNING: {message}", file=sys.stderr)


def error(tag, message):
    print(f"{_colour(f'[{tag}]', '31')} ERROR: {message}", file=sys.stderr)


def banner(message, level=NORMAL):
    """Print ``message`` between two 60-character rules on stderr."""
    if _state["verbosity"] >= level:
        print(f"\n{'=' * BANNER_WIDTH}", file=sys.stderr)
        print(message, file=sys.stderr)
        print(f"{'=' * BANNER_WIDTH}\n", file=sys.stderr)


def bit_height(value):
    """Total bit length of the numerators and denominators in an exact value."""
    coeffs = getattr(value, "coeffs", None)
    if coeffs is None:
        return 0
    return sum(c.numerator.bit_length() + c.denominator.bit_length() for c in coeffs)
