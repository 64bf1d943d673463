"""Axial coordinates on the hexagonal tile lattice.

Conventions used throughout the package:

* A cell is a plain tuple ``(q, r)`` of ints.  The tile centred on ``(q, r)``
  sits at the Cartesian point ``q*(1, 0) + r*(1/2, sqrt(3)/2)``, so adjacent
  tile centres are at unit distance.
* Directions are ints ``0..5``, counterclockwise, direction 0 along +x.
  ``step(k + 3) == -step(k)``.
* Rotation by one sixth-turn (60 degrees CCW about the origin) is the exact
  integer map ``(q, r) -> (-r, q + r)``.
* Angles that are multiples of pi/3 are handled as integer sixth-turns; no
  floating point enters any lattice computation.  Cartesian floats appear
  only in the rendering helpers at the bottom.
"""

from __future__ import annotations

import math
from typing import Iterable, Iterator

Cell = tuple[int, int]

# step(k) for k = 0..5; CCW, step(k+3) = -step(k)
STEPS: tuple[Cell, ...] = ((1, 0), (0, 1), (-1, 1), (-1, 0), (0, -1), (1, -1))

SQRT3 = math.sqrt(3.0)


def step(k: int) -> Cell:
    return STEPS[k % 6]


def neighbor(c: Cell, k: int) -> Cell:
    dq, dr = STEPS[k % 6]
    return (c[0] + dq, c[1] + dr)


def neighbors(c: Cell) -> list[Cell]:
    q, r = c
    return [(q + dq, r + dr) for dq, dr in STEPS]


def add(a: Cell, b: Cell) -> Cell:
    return (a[0] + b[0], a[1] + b[1])


def sub(a: Cell, b: Cell) -> Cell:
    return (a[0] - b[0], a[1] - b[1])


def scale(c: Cell, m: int) -> Cell:
    return (c[0] * m, c[1] * m)


def rotate_coord(c: Cell, k: int) -> Cell:
    """Rotate a cell about the origin by k sixth-turns (CCW, exact)."""
    q, r = c
    for _ in range(k % 6):
        q, r = -r, q + r
    return (q, r)


def hex_distance(a: Cell, b: Cell) -> int:
    """Graph distance between cells (number of steps)."""
    dq = a[0] - b[0]
    dr = a[1] - b[1]
    return (abs(dq) + abs(dr) + abs(dq + dr)) // 2


def polar_to_cell(rho: int, theta: int) -> Cell:
    """Lattice point at distance rho along direction theta (sixth-turns).

    Only radial multiples of lattice directions are representable; rho must
    be a non-negative int.
    """
    if rho < 0:
        raise ValueError("rho must be >= 0")
    dq, dr = STEPS[theta % 6]
    return (rho * dq, rho * dr)


def spiral_anchor(n: int) -> Cell:
    """Centre of the n-th spiral patch: x_0 = (0,0) and each further hop
    doubles in length while turning by 4 sixth-turns."""
    if n < 0:
        raise ValueError("n must be >= 0")
    q, r = 0, 0
    for i in range(1, n + 1):
        dq, dr = STEPS[(4 * i) % 6]
        q += dq << (i - 1)
        r += dr << (i - 1)
    return (q, r)


# --- edges and vertices ----------------------------------------------------
#
# The edge of cell c toward direction k is the same segment as the edge of
# neighbor(c, k) toward direction k+3.  The canonical id keeps k in 0..2.
# The vertex v_j of c (at angle j*60 - 30 from its centre) is shared with
# neighbor(c, j) (as its v_{j+4}) and neighbor(c, j+5) (as its v_{j+2}).

EdgeId = tuple[Cell, int]
VertexId = tuple[Cell, int]


def edge_id(c: Cell, k: int) -> EdgeId:
    k %= 6
    if k < 3:
        return (c, k)
    return (neighbor(c, k), k - 3)


def vertex_id(c: Cell, j: int) -> VertexId:
    j %= 6
    reps = [
        (c, j),
        (neighbor(c, j), (j + 4) % 6),
        (neighbor(c, j + 5), (j + 2) % 6),
    ]
    return min(reps)


def cells_in_ball(center: Cell, radius: int) -> list[Cell]:
    """All cells within hex graph distance radius, ordered centre outward
    (ties broken by coordinate) so the list doubles as a growth order."""
    cq, cr = center
    out = []
    for dq in range(-radius, radius + 1):
        lo = max(-radius, -dq - radius)
        hi = min(radius, -dq + radius)
        for dr in range(lo, hi + 1):
            out.append((cq + dq, cr + dr))
    out.sort(key=lambda c: (hex_distance(center, c), c))
    return out


def ring(center: Cell, radius: int) -> Iterator[Cell]:
    """Cells at exact graph distance radius, CCW from the +q side."""
    if radius == 0:
        yield center
        return
    c = add(center, scale(STEPS[0], radius))
    for k in range(6):
        for _ in range(radius):
            yield c
            c = neighbor(c, (k + 2) % 6)


# --- Cartesian embedding (rendering only) ----------------------------------


def center_xy(c: Cell) -> tuple[float, float]:
    q, r = c
    return (q + 0.5 * r, (SQRT3 / 2.0) * r)


def vertex_xy(c: Cell, j: int) -> tuple[float, float]:
    # circumradius 1/sqrt(3), vertices at angles j*60 - 30
    x, y = center_xy(c)
    ang = math.radians(j * 60.0 - 30.0)
    return (x + math.cos(ang) / SQRT3, y + math.sin(ang) / SQRT3)


def norm_xy(c: Cell) -> float:
    """Cartesian length of a lattice vector (used for period bounds)."""
    x, y = center_xy(c)
    return math.hypot(x, y)


def bounds_xy(cells: Iterable[Cell], pad: float = 1.0) -> tuple[float, float, float, float]:
    xs, ys = [], []
    for c in cells:
        x, y = center_xy(c)
        xs.append(x)
        ys.append(y)
    if not xs:
        return (-pad, -pad, pad, pad)
    return (min(xs) - pad, min(ys) - pad, max(xs) + pad, max(ys) + pad)
