"""Shared triangulation fixtures for the test suite."""

from surfcat.surface import MarkedSurface, load_triangulation, build_admissible

# Twice-punctured triangle: marked points M0 (top), M1 (right), M2 (left);
# arc 1 = loop at M2 around P0 (folded side g1), arc 4 = loop at M1 around
# P1 (folded side g4), arcs 2/3 the upper/lower M2-M1 connectors.
TWICE_PUNCTURED_TRIANGLE = """\
surface g=0 punctures=2 boundary=3
arc 1 M2 M2
arc 2 M2 M1
arc 3 M1 M2
arc 4 M1 M1
arc g1 M2 P0
arc g4 M1 P1
tri 1 2 3
tri 3 4 B1
tri 2 B2 B0
trisf g1 1
trisf g4 4
"""


def d5_triangulation():
    return load_triangulation(TWICE_PUNCTURED_TRIANGLE)


def polygon(m):
    return build_admissible(MarkedSurface(0, [m], 0))


def pentagon():
    return polygon(5)


def hexagon():
    return polygon(6)


def once_punctured(m):
    return build_admissible(MarkedSurface(0, [m], 1))
