"""Reference constructions: spiral patches, triangles, strips and seeds.

The spiral patch P_n is the recursive heart of the tiling.  P_0 is one tile
at the origin; P_n glues a fresh centre tile at the anchor x_n to the old
patch and to three rotated copies of it, pushed out by 2^(n-1) steps:

    P_n = { x_n : 4n }  u  P_{n-1}
          u  R4(P_{n-1} - x_{n-1}) + x_n + 2^(n-1) step(4n-2)
          u  R3(P_{n-1} - x_{n-1}) + x_n + 2^(n-1) step(4n)
          u  R4(P_{n-1} - x_{n-1}) + x_n + 2^(n-1) step(4n+1)

(rotations in sixth-turns, acting on cells and orientations alike).  The
cell data is template-independent; whether the copies meet legally is what
calibration checks.  |P_n| = (4^(n+1) - 1) / 3.

Everything else here is built from small constraint solves over the R1
rule rather than from hand-entered orientation tables: triangle frames,
fault-line strips, the periodic control lattice, and the cycle seeds used
by the refutation searches.
"""

from __future__ import annotations

from typing import Iterable, Iterator, Sequence

from .engine import AssemblyError, Patch
from .hexlattice import (
    Cell,
    add,
    cells_in_ball,
    hex_distance,
    neighbor,
    rotate_coord,
    scale,
    spiral_anchor,
    step,
    sub,
)
from .prototile import DEFAULT_TEMPLATE, PrototileTemplate, tables_for


# --- spiral patches ----------------------------------------------------------

_pn_cache: list[dict[Cell, int]] = []


def _pn_tiles(n: int) -> dict[Cell, int]:
    while len(_pn_cache) <= n:
        m = len(_pn_cache)
        if m == 0:
            _pn_cache.append({(0, 0): 0})
            continue
        prev = _pn_cache[m - 1]
        xp = spiral_anchor(m - 1)
        x = spiral_anchor(m)
        tiles = dict(prev)
        tiles[x] = (4 * m) % 6
        if x in prev:
            raise AssemblyError("centre tile collides with previous patch")
        r = 1 << (m - 1)
        for rot, d in ((4, (4 * m - 2) % 6), (3, (4 * m) % 6), (4, (4 * m + 1) % 6)):
            shift = add(x, scale(step(d), r))
            for c, o in prev.items():
                cc = add(rotate_coord(sub(c, xp), rot), shift)
                oo = (o + rot) % 6
                if tiles.setdefault(cc, oo) != oo:
                    raise AssemblyError(f"copy collision at {cc}")
        if len(tiles) != (4 ** (m + 1) - 1) // 3:
            raise AssemblyError("copies overlap: spiral cardinality broken")
        _pn_cache.append(tiles)
    return _pn_cache[n]


def build_Pn(n: int, template: PrototileTemplate = DEFAULT_TEMPLATE) -> Patch:
    """The n-th spiral patch, centred so P_0 is the origin tile."""
    if n < 0:
        raise ValueError("n must be >= 0")
    return Patch(_pn_tiles(n), template)


def build_T0(radius: int, template: PrototileTemplate = DEFAULT_TEMPLATE) -> Patch:
    """The radius-ball of the spiral limit tiling around the origin.

    The spiral patches are nested, so the limit is their union; the smallest
    patch already covering the ball is cropped to it.
    """
    ball = cells_in_ball((0, 0), radius)
    n = 0
    while True:
        tiles = _pn_tiles(n)
        if all(c in tiles for c in ball):
            return Patch({c: tiles[c] for c in ball}, template)
        n += 1
        if n > 16:
            raise AssemblyError("spiral does not cover the ball (bad radius?)")


# --- generic R1 constraint solving -------------------------------------------


def solve_r1(
    template: PrototileTemplate,
    free: Sequence[tuple[Cell, Iterable[int]]],
    fixed: dict[Cell, int] | None = None,
    limit: int | None = None,
) -> Iterator[dict[Cell, int]]:
    """All R1-consistent orientation assignments for the free cells, given
    already-fixed context tiles.  Deterministic depth-first order; domains
    are tried in the order given.  Cells are assigned in list order, so
    callers should order them for strong forward pruning."""
    t = tables_for(template)
    r1 = t.r1_ok
    fixed = dict(fixed) if fixed else {}
    cells = [c for c, _ in free]
    index = {c: i for i, c in enumerate(cells)}
    base_domains = [tuple(dom) for _, dom in free]

    # neighbour wiring: (other index or -1 fixed orientation marker, direction)
    nb_free: list[list[tuple[int, int]]] = [[] for _ in cells]
    nb_fixed: list[list[tuple[int, int]]] = [[] for _ in cells]
    for i, c in enumerate(cells):
        for k in range(6):
            nb = neighbor(c, k)
            j = index.get(nb)
            if j is not None:
                nb_free[i].append((j, k))
            elif nb in fixed:
                nb_fixed[i].append((fixed[nb], k))

    n = len(cells)
    if n == 0:
        yield {}
        return

    # prune by fixed context once
    domains: list[tuple[int, ...]] = []
    for i in range(n):
        dom = tuple(
            o for o in base_domains[i]
            if all(r1[k][o][b] for b, k in nb_fixed[i])
        )
        if not dom:
            return
        domains.append(dom)

    assigned: list[int | None] = [None] * n
    iters: list[Iterator[int]] = [iter(())] * n

    def options(d: int) -> Iterator[int]:
        return (
            o for o in domains[d]
            if all(
                assigned[j] is None or r1[k][o][assigned[j]]
                for j, k in nb_free[d]
            )
        )

    yielded = 0
    depth = 0
    iters[0] = options(0)
    while depth >= 0:
        o = next(iters[depth], None)
        if o is None:
            assigned[depth] = None
            depth -= 1
            continue
        assigned[depth] = o
        if depth == n - 1:
            yield {cells[j]: assigned[j] for j in range(n)}  # type: ignore[misc]
            yielded += 1
            if limit is not None and yielded >= limit:
                return
        else:
            depth += 1
            iters[depth] = options(depth)


# --- triangles ----------------------------------------------------------------


def _curve_orients(template: PrototileTemplate, e_in: int, e_out: int) -> tuple[int, ...]:
    """Orientations whose decoration joins world edges e_in and e_out with
    a single curve (a stripe when opposite, an arc when adjacent)."""
    return tuple(
        o for o in range(6)
        if template.curve_partner((e_in - o) % 6) == (e_out - o) % 6
    )


def triangle_walk(corner: Cell, d: int, length: int) -> list[tuple[Cell, int, int]]:
    """Boundary cells in traversal order as (cell, entry_edge, exit_edge).

    The closed curve starts at `corner`, runs length+1 steps along d, turns
    by a third-turn (direction + 2), and so on around.  Even d points the
    triangle up, odd d down.  Entry edge faces the previous cell; the cell's
    curve must join entry to exit, which makes the three turn cells arcs and
    everything else stripes.
    """
    s = length + 1
    legs = []
    c = corner
    for leg in range(3):
        dd = (d + 2 * leg) % 6
        for _ in range(s):
            legs.append((c, dd))
            c = neighbor(c, dd)
    if c != corner:
        raise AssemblyError("triangle walk did not close")
    m = len(legs)
    return [
        (cell, (legs[(t - 1) % m][1] + 3) % 6, d_out)
        for t, (cell, d_out) in enumerate(legs)
    ]


def triangle_region(corner: Cell, d: int, length: int) -> tuple[list[Cell], list[Cell]]:
    """(boundary walk cells in order, interior cells sorted)."""
    s = length + 1
    walk = [w[0] for w in triangle_walk(corner, d, length)]
    on_walk = set(walk)
    u, v = step(d), step((d + 2) % 6)
    interior = sorted(
        c
        for i in range(s + 1)
        for j in range(i + 1)
        if (c := add(corner, add(scale(u, i), scale(v, j)))) not in on_walk
    )
    return walk, interior


def triangle_loop_candidates(
    template: PrototileTemplate,
    length: int,
    limit: int | None = None,
    corner: Cell = (0, 0),
    d: int = 0,
    fixed: dict[Cell, int] | None = None,
) -> Iterator[dict[Cell, int]]:
    """R1-consistent fillings of a closed triangle (boundary curve plus
    interior), in deterministic order."""
    walk = triangle_walk(corner, d, length)
    _, interior = triangle_region(corner, d, length)
    free: list[tuple[Cell, Iterable[int]]] = [
        (cell, _curve_orients(template, e_in, e_out)) for cell, e_in, e_out in walk
    ]
    free += [(c, range(6)) for c in interior]
    return solve_r1(template, free, fixed=fixed, limit=limit)


def build_triangle(
    length: int,
    corner: Cell = (0, 0),
    d: int = 0,
    template: PrototileTemplate = DEFAULT_TEMPLATE,
    fixed: dict[Cell, int] | None = None,
) -> Patch:
    """First triangle filling in solver order, as a patch."""
    for sol in triangle_loop_candidates(template, length, limit=1, corner=corner, d=d, fixed=fixed):
        return Patch(sol, template)
    raise AssemblyError(f"no length-{length} triangle exists for this template")


# --- propagating solver (one solution) -----------------------------------------


def _mask_tables(template: PrototileTemplate) -> tuple[list[list[int]], list[list[int]]]:
    """(union_row, col): union_row[k][mask] is the bitmask of orientations a
    direction-k neighbour may take when this cell's domain is `mask`;
    col[k][b] the mask this cell may take when that neighbour is fixed at b."""
    t = tables_for(template)
    row = [
        [sum(1 << b for b in range(6) if t.r1_ok[k][a][b]) for a in range(6)]
        for k in range(6)
    ]
    union_row = [
        [0] * 64 for _ in range(6)
    ]
    for k in range(6):
        for m in range(64):
            acc = 0
            for a in range(6):
                if m >> a & 1:
                    acc |= row[k][a]
            union_row[k][m] = acc
    col = [
        [sum(1 << a for a in range(6) if t.r1_ok[k][a][b]) for b in range(6)]
        for k in range(6)
    ]
    return union_row, col


def solve_masks(
    template: PrototileTemplate,
    domains: list[int],
    adj: list[list[tuple[int, int]]],
) -> list[int] | None:
    """First R1-consistent assignment by arc propagation plus backtracking.

    domains are 6-bit masks; adj[i] lists (j, k) pairs meaning cell j is the
    direction-k neighbour of cell i.  Branching tries orientations in
    ascending order at the first undecided cell, so the result is a
    deterministic function of the inputs.
    """
    union_row, _ = _mask_tables(template)
    n = len(domains)

    def propagate(masks: list[int], seed: Iterable[int]) -> bool:
        queue = list(seed)
        while queue:
            i = queue.pop()
            mi = masks[i]
            for j, k in adj[i]:
                mj = masks[j] & union_row[k][mi]
                if mj != masks[j]:
                    if not mj:
                        return False
                    masks[j] = mj
                    queue.append(j)
        return True

    masks = list(domains)
    if not propagate(masks, range(n)):
        return None

    def solve(masks: list[int]) -> list[int] | None:
        for i in range(n):
            if masks[i].bit_count() > 1:
                for o in range(6):
                    if masks[i] >> o & 1:
                        trial = list(masks)
                        trial[i] = 1 << o
                        if propagate(trial, [i]):
                            got = solve(trial)
                            if got is not None:
                                return got
                return None
        return masks

    got = solve(masks)
    if got is None:
        return None
    return [m.bit_length() - 1 for m in got]


def fill_region_first(
    template: PrototileTemplate,
    free: Sequence[tuple[Cell, Iterable[int]]],
    fixed: dict[Cell, int] | None = None,
) -> dict[Cell, int] | None:
    """One R1-consistent filling of the free cells against fixed context,
    or None; deterministic."""
    _, col = _mask_tables(template)
    fixed = fixed or {}
    cells = [c for c, _ in free]
    index = {c: i for i, c in enumerate(cells)}
    domains = []
    adj: list[list[tuple[int, int]]] = [[] for _ in cells]
    for i, (c, dom) in enumerate(free):
        m = 0
        for o in dom:
            m |= 1 << o
        for k in range(6):
            nb = neighbor(c, k)
            j = index.get(nb)
            if j is not None:
                adj[i].append((j, k))
            elif nb in fixed:
                m &= col[k][fixed[nb]]
        domains.append(m)
    got = solve_masks(template, domains, adj)
    if got is None:
        return None
    return {cells[i]: got[i] for i in range(len(cells))}


# --- fault lines ----------------------------------------------------------------


def faultline_corner_lattice(levels: int, choices: Sequence[int]) -> list[int]:
    """Base positions l_m of the level-m corner lattice along the line.

    choices[0] in {0,1} is the parity phase; each later choice picks
    l_m = l_{m-1} +- 2^(m-1), the two classes left over after level m-1.
    Level-m corners then sit at l_m + k 2^(m+1).
    """
    if len(choices) < levels + 1:
        raise ValueError("need one choice per level, plus the phase")
    l = [choices[0] & 1]
    for m in range(1, levels + 1):
        c = 1 if choices[m] >= 0 and choices[m] != 0 else -1
        l.append((l[-1] + c * (1 << (m - 1))) % (1 << (m + 1)))
    return l


def _strip_cells(width: int, rows: Iterable[int]) -> list[Cell]:
    return [
        (i - (r // 2), r)
        for r in rows
        for i in range(width)
    ]


def build_faultline(
    width: int = 64,
    levels: int = 3,
    choices_above: Sequence[int] | None = None,
    choices_below: Sequence[int] | None = None,
    template: PrototileTemplate = DEFAULT_TEMPLATE,
) -> Patch:
    """A strip of the fault-line tiling: a straight stripe line with the
    two half-planes' triangle towers pinned by the given choice sequences.

    The strip spans rows -2^levels..2^levels.  Triangles whose corner tile
    sits on the line at a level-m lattice position are pinned by restricting
    their perimeter cells to curve-compatible orientations; a single global
    propagate-and-branch solve then fixes everything at once (the floating
    triangles between the pinned ones included), so the result is a
    deterministic function of the choice sequences.
    """
    if choices_above is None:
        choices_above = (0,) + (1,) * levels
    if choices_below is None:
        choices_below = (0,) + (-1,) * levels
    h = 1 << levels
    cells = _strip_cells(width, range(-h, h + 1))
    order = sorted(cells, key=lambda c: (abs(c[1]), c[1], c[0]))
    domains: dict[Cell, set[int]] = {c: set(range(6)) for c in order}
    for i in range(width):
        domains[(i, 0)] = {5}

    for d, lat in ((1, faultline_corner_lattice(levels, choices_above)),
                   (4, faultline_corner_lattice(levels, choices_below))):
        for m in range(levels, -1, -1):
            length = (1 << m) - 1
            period = 1 << (m + 1)
            for p in range(lat[m], width, period):
                walk = triangle_walk((p, 0), d, length)
                if not all(w[0] in domains for w in walk):
                    continue
                for c, e_in, e_out in walk:
                    domains[c] &= set(_curve_orients(template, e_in, e_out))
                    if not domains[c]:
                        raise AssemblyError(
                            f"level-{m} triangle at {p} clashes with the pins"
                        )

    fill = fill_region_first(template, [(c, domains[c]) for c in order])
    if fill is None:
        raise AssemblyError("strip filling failed around the pinned triangles")
    return Patch(fill, template)


# --- periodic control lattice ----------------------------------------------------


def build_periodic(
    m: int = 1,
    nx: int = 4,
    ny: int = 4,
    template: PrototileTemplate = DEFAULT_TEMPLATE,
) -> Patch:
    """A genuinely periodic R1-consistent patch, the negative control.

    Solves the matching rules on the torus with periods (2^(m+1), 0) and
    (2^m, 2^m), then unrolls nx x ny fundamental domains.  Period norms are
    2^(m+1) on the nose, and the dendrite rule is deliberately not imposed:
    the unrolled patch decomposes into several tree components, which is
    exactly why growth cannot reach it.
    """
    s = 1 << m
    reps = [(q, r) for r in range(s) for q in range(2 * s)]
    index = {c: i for i, c in enumerate(reps)}

    def reduce(c: Cell) -> Cell:
        t = c[1] // s
        q, r = c[0] - t * s, c[1] - t * s
        return (q % (2 * s), r)

    adj = [
        [(index[reduce(neighbor(c, k))], k) for k in range(6)]
        for c in reps
    ]
    got = solve_masks(template, [63] * len(reps), adj)
    if got is None:
        raise AssemblyError(f"no periodic solution at level {m}")
    tiles: dict[Cell, int] = {}
    for (q, r), o in zip(reps, got):
        for a in range(nx):
            for b in range(ny):
                tiles[(q + 2 * s * a + s * b, r + s * b)] = o
    return Patch(tiles, template)
