"""Feature extraction and consistency reports for finished patches.

The R1 decorations of a patch knit together into curves: each tile joins
three pairs of its edge crossings, and adjacent tiles hand a curve across
their shared edge.  Tracing those curves yields the patch's features:

* TRIANGLE        a closed curve with exactly three arc turns of the same
                  handedness and equal straight runs between them; its
                  length is the run length (0 for the tightest loop)
* CLOSED_OTHER    any other closed curve (legal growths never make these,
                  but arbitrary R1-consistent patches can)
* SEGMENT         an open straight run, cut off by the patch boundary
* PATH            any other open curve

The R2 decorations induce a plain graph on tiles (edges where neighbouring
trees touch); legal growth keeps each component a tree, so cycle detection
and component counts are the interesting reports.
"""

from __future__ import annotations

from dataclasses import dataclass

from .engine import Patch, r2_links
from .hexlattice import Cell, hex_distance, neighbor
from .prototile import PrototileTemplate


@dataclass(frozen=True)
class Feature:
    kind: str
    cells: tuple[Cell, ...]
    closed: bool
    length: int | None = None
    corners: tuple[Cell, ...] = ()

    def key(self) -> tuple:
        return (min(self.cells), self.kind, len(self.cells))


def _exit_edge(template: PrototileTemplate, orientation: int, e_in: int) -> int:
    j = (e_in - orientation) % 6
    return (template.curve_partner(j) + orientation) % 6


def trace_r1(patch: Patch) -> list[Feature]:
    """All curve features of the patch, deterministically ordered."""
    t = patch.template
    visited: set[tuple[Cell, int]] = set()  # (cell, entry edge) of used half-curves
    features: list[Feature] = []

    def walk(start: Cell, e_in: int) -> tuple[list[tuple[Cell, int, int]], bool]:
        """Follow the curve from entering `start` through its e_in edge;
        returns (steps, closed)."""
        steps = []
        c, e = start, e_in
        while True:
            e_out = _exit_edge(t, patch[c], e)
            steps.append((c, e, e_out))
            visited.add((c, e))
            visited.add((c, e_out))
            nxt = neighbor(c, e_out)
            if nxt not in patch:
                return steps, False
            c, e = nxt, (e_out + 3) % 6
            if (c, e) in visited:
                return steps, True

    # open curves first: every boundary crossing starts one
    for c in sorted(patch.cells()):
        for k in range(6):
            if (c, k) in visited or neighbor(c, k) in patch:
                continue
            steps, closed = walk(c, k)
            features.append(_classify_steps(steps, closed=False))
    # remaining curves are closed
    for c in sorted(patch.cells()):
        for k in range(6):
            if (c, k) in visited:
                continue
            steps, closed = walk(c, k)
            if not closed:
                raise AssertionError("open curve discovered after boundary sweep")
            features.append(_classify_steps(steps, closed=True))
    features.sort(key=Feature.key)
    return features


def _classify_steps(steps: list[tuple[Cell, int, int]], closed: bool) -> Feature:
    cells = tuple(c for c, _, _ in steps)
    # turn per tile: 0 for a stripe, +-2 sixth-turns for an arc
    turns = [((e_out - e_in - 3) % 6) for _, e_in, e_out in steps]
    arcs = [i for i, tr in enumerate(turns) if tr != 0]
    if closed:
        if len(arcs) == 3 and len(set(turns[i] for i in arcs)) == 1:
            n = len(steps)
            runs = [(arcs[(i + 1) % 3] - arcs[i]) % n - 1 for i in range(3)]
            if len(set(runs)) == 1:
                return Feature(
                    "TRIANGLE", cells, True, runs[0],
                    tuple(sorted(cells[i] for i in arcs)),
                )
        return Feature("CLOSED_OTHER", cells, True)
    if not arcs:
        return Feature("SEGMENT", cells, False, len(steps))
    return Feature("PATH", cells, False)


def fully_interior(patch: Patch, feature: Feature) -> bool:
    return all(neighbor(c, k) in patch for c in feature.cells for k in range(6))


def interior_triangle_lengths(patch: Patch) -> set[int]:
    """Lengths of closed triangles all of whose tiles are surrounded."""
    return {
        f.length for f in trace_r1(patch)
        if f.kind == "TRIANGLE" and f.length is not None and fully_interior(patch, f)
    }


# --- dendrite graph -----------------------------------------------------------


@dataclass(frozen=True)
class R2Graph:
    nodes: int
    edges: tuple[tuple[Cell, Cell], ...]
    components: int

    @property
    def is_forest(self) -> bool:
        return len(self.edges) == self.nodes - self.components

    @property
    def is_tree(self) -> bool:
        return self.components <= 1 and self.is_forest

    @property
    def cycle_rank(self) -> int:
        return len(self.edges) - self.nodes + self.components


def r2_graph(patch: Patch) -> R2Graph:
    parent: dict[Cell, Cell] = {c: c for c in patch.cells()}

    def find(x: Cell) -> Cell:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    edges = []
    comps = len(parent)
    for a, b in r2_links(patch):
        edges.append((a, b) if a <= b else (b, a))
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
            comps -= 1
    edges.sort()
    return R2Graph(len(parent), tuple(edges), comps if parent else 0)


def r2_components(patch: Patch) -> list[frozenset[Cell]]:
    parent: dict[Cell, Cell] = {c: c for c in patch.cells()}

    def find(x: Cell) -> Cell:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in r2_links(patch):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
    groups: dict[Cell, set[Cell]] = {}
    for c in parent:
        groups.setdefault(find(c), set()).add(c)
    return sorted((frozenset(g) for g in groups.values()), key=min)


def detect_r2_cycles(patch: Patch) -> list[tuple[Cell, ...]]:
    """Independent cycles of the dendrite graph, one witness per non-tree
    edge of a breadth-first spanning forest.  Legal growth from a seed can
    in principle close a cycle (a tile may touch two trees at once), and
    the shortest possible cycle has length four: two tiles never share two
    edges, and a three-cycle would need the two contacts adjacent on some
    tile with signs that work out opposite on both, which the sign layout
    forbids.  Cycles are how the would-be periodic counterexamples die.
    """
    adj: dict[Cell, list[Cell]] = {c: [] for c in patch.cells()}
    for a, b in r2_links(patch):
        adj[a].append(b)
        adj[b].append(a)
    for v in adj.values():
        v.sort()
    parent: dict[Cell, Cell | None] = {}
    depth: dict[Cell, int] = {}
    cycles: list[tuple[Cell, ...]] = []
    seen_edges: set[tuple[Cell, Cell]] = set()
    for root in sorted(adj):
        if root in parent:
            continue
        parent[root] = None
        depth[root] = 0
        queue = [root]
        i = 0
        while i < len(queue):
            u = queue[i]
            i += 1
            for w in adj[u]:
                if w not in parent:
                    parent[w] = u
                    depth[w] = depth[u] + 1
                    queue.append(w)
                elif parent[u] != w:
                    e = (u, w) if u <= w else (w, u)
                    if e in seen_edges:
                        continue
                    seen_edges.add(e)
                    cycles.append(_cycle_through(parent, depth, u, w))
    return cycles


def _cycle_through(parent, depth, u: Cell, w: Cell) -> tuple[Cell, ...]:
    pu, pw = [u], [w]
    a, b = u, w
    while depth[a] > depth[b]:
        a = parent[a]
        pu.append(a)
    while depth[b] > depth[a]:
        b = parent[b]
        pw.append(b)
    while a != b:
        a = parent[a]
        b = parent[b]
        pu.append(a)
        pw.append(b)
    return tuple(pu + pw[::-1][1:])


# --- family consistency -------------------------------------------------------


@dataclass(frozen=True)
class C0Report:
    ok: bool
    shared_corner_tiles: int
    violations: tuple[tuple[Cell, tuple[int, ...]], ...]


def check_c0(patch: Patch) -> C0Report:
    """Corner-sharing law: a tile hosting corners of two closed triangles
    (it has two arcs, so it can) must see equal lengths on both."""
    by_cell: dict[Cell, list[int]] = {}
    for f in trace_r1(patch):
        if f.kind == "TRIANGLE" and f.length is not None:
            for c in f.corners:
                by_cell.setdefault(c, []).append(f.length)
    shared = 0
    bad = []
    for c, lengths in sorted(by_cell.items()):
        if len(lengths) >= 2:
            shared += 1
            if len(set(lengths)) > 1:
                bad.append((c, tuple(sorted(lengths))))
    return C0Report(not bad, shared, tuple(bad))


@dataclass(frozen=True)
class PeriodReport:
    periods: tuple[Cell, ...]
    window: int
    unreliable: bool


def period_check(patch: Patch, max_norm: int) -> PeriodReport:
    """Translation vectors (up to sign) that reproduce the patch on the
    overlap window.  A tiny overlap can vacuously agree, so the report is
    flagged unreliable when the smallest window checked is under 32 tiles
    or under a fifth of the patch."""
    tiles = patch.to_dict()
    vectors = [
        (q, r)
        for q in range(-max_norm, max_norm + 1)
        for r in range(-max_norm, max_norm + 1)
        if 0 < hex_distance((0, 0), (q, r)) <= max_norm and ((q, r) > (0, 0))
    ]
    found = []
    min_window = len(tiles)
    for v in sorted(vectors, key=lambda v: (hex_distance((0, 0), v), v)):
        window = 0
        ok = True
        for c, o in tiles.items():
            o2 = tiles.get((c[0] + v[0], c[1] + v[1]))
            if o2 is None:
                continue
            window += 1
            if o2 != o:
                ok = False
                break
        if ok and window > 0:
            found.append(v)
            min_window = min(min_window, window)
    threshold = max(32, len(tiles) // 5)
    unreliable = bool(found) and min_window < threshold
    return PeriodReport(tuple(found), min_window if found else 0, unreliable)


def classify(patch: Patch) -> str:
    """C0_CONSISTENT / C1_CONSISTENT / BOTH / NEITHER for a window.

    C0-consistency means every closed curve is a triangle and the
    corner-sharing law holds.  C1-consistency means a straight curve spans
    the window (both ends on the boundary, length at least the window's
    spread), the fingerprint of a fault line.
    """
    feats = trace_r1(patch)
    c0 = check_c0(patch).ok and not any(f.kind == "CLOSED_OTHER" for f in feats)
    spread = max(
        (hex_distance(a, b) for a in _extremes(patch) for b in _extremes(patch)),
        default=0,
    )
    c1 = any(
        f.kind == "SEGMENT" and len(f.cells) >= max(2, spread // 2)
        for f in feats
    )
    if c0 and c1:
        return "BOTH"
    if c0:
        return "C0_CONSISTENT"
    if c1:
        return "C1_CONSISTENT"
    return "NEITHER"


def _extremes(patch: Patch) -> list[Cell]:
    cells = list(patch.cells())
    if not cells:
        return []
    out = []
    for key in (
        lambda c: c[0], lambda c: c[1], lambda c: c[0] + c[1],
    ):
        out.append(min(cells, key=key))
        out.append(max(cells, key=key))
    return out
