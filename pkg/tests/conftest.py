"""Shared inner-class grid for the test suite.

Inner classes are built once per session and cached; every builder goes
through make_ic so tables (involutions, fibers, X) are shared between
test modules.
"""

from liepar import from_type, inner_class_from_perm, trivial_inner_class

_CACHE = {}


def make_ic(type_string, isogeny, twist="c"):
    """twist is 'c' (identity) or a tuple permutation of simple roots."""
    key = (type_string, isogeny, twist)
    if key not in _CACHE:
        rd = from_type(type_string, isogeny)
        if twist == "c":
            _CACHE[key] = trivial_inner_class(rd)
        else:
            _CACHE[key] = inner_class_from_perm(rd, twist)
    return _CACHE[key]


# the standard grid: small types, both isogenies, both twists where the
# diagram has an involution
GRID = [
    ("A1", "sc", "c"),
    ("A1", "ad", "c"),
    ("A1.A1", "sc", "c"),
    ("A1.A1", "sc", (1, 0)),
    ("A1.A1", "ad", "c"),
    ("A1.A1", "ad", (1, 0)),
    ("A2", "sc", "c"),
    ("A2", "sc", (1, 0)),
    ("A2", "ad", "c"),
    ("A2", "ad", (1, 0)),
    ("B2", "sc", "c"),
    ("B2", "ad", "c"),
    ("C2", "sc", "c"),
    ("C2", "ad", "c"),
    ("G2", "sc", "c"),
    ("A3", "sc", "c"),
    ("A3", "sc", (2, 1, 0)),
    ("A3", "ad", "c"),
    ("A3", "ad", (2, 1, 0)),
]

GRID_IDS = ["-".join([t, iso, "u" if tw != "c" else "c"])
            for t, iso, tw in GRID]
