"""Patches of oriented tiles and the placement legality rules.

A patch is an immutable value: a template plus a finite map from cells to
orientations.  Growth legality for a candidate tile against an existing
patch is judged edge-locally:

* OCCUPIED      the cell already holds a tile
* DISCONNECTED  the patch is non-empty but no neighbouring cell is occupied
* R1_FAIL       some shared edge's curve crossings do not coincide
* R2_FAIL       every shared edge passes R1 but none connects the trees
* LEGAL         otherwise; the first tile of an empty patch is the seed and
                is exempt from the R2 requirement

A patch is directly constructible when some ordering of its tiles replays
as an all-LEGAL growth sequence from a seed.  That holds exactly when the
patch is R1-consistent and its tree-connection graph is connected, and a
breadth-first order over tree links is then a valid witness.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Iterator, Mapping

from .hexlattice import Cell, add, neighbor, rotate_coord
from .prototile import DEFAULT_TEMPLATE, PrototileTemplate, tables_for


class Verdict(Enum):
    LEGAL = "LEGAL"
    OCCUPIED = "OCCUPIED"
    DISCONNECTED = "DISCONNECTED"
    R1_FAIL = "R1_FAIL"
    R2_FAIL = "R2_FAIL"


@dataclass(frozen=True)
class EdgeCheck:
    direction: int
    neighbor: Cell
    neighbor_orientation: int
    r1_ok: bool
    r2_link: bool


@dataclass(frozen=True)
class LegalityReport:
    verdict: Verdict
    cell: Cell
    orientation: int
    edges: tuple[EdgeCheck, ...]

    def as_dict(self) -> dict:
        return {
            "verdict": self.verdict.value,
            "cell": list(self.cell),
            "orientation": self.orientation,
            "edges": [
                {
                    "direction": e.direction,
                    "neighbor": list(e.neighbor),
                    "neighbor_orientation": e.neighbor_orientation,
                    "r1_ok": e.r1_ok,
                    "r2_link": e.r2_link,
                }
                for e in self.edges
            ],
        }


class IllegalPlacement(ValueError):
    def __init__(self, report: LegalityReport):
        super().__init__(f"{report.verdict.value} at {report.cell}")
        self.report = report


class AssemblyError(ValueError):
    """Overlapping patches disagree on a cell's orientation."""


class Patch:
    """Immutable cell -> orientation map under a fixed template."""

    __slots__ = ("_tiles", "template")

    def __init__(self, tiles: Mapping[Cell, int] | None = None,
                 template: PrototileTemplate = DEFAULT_TEMPLATE):
        self._tiles: dict[Cell, int] = dict(tiles) if tiles else {}
        self.template = template

    @classmethod
    def seed(cls, cell: Cell = (0, 0), orientation: int = 0,
             template: PrototileTemplate = DEFAULT_TEMPLATE) -> "Patch":
        return cls({cell: orientation % 6}, template)

    def __len__(self) -> int:
        return len(self._tiles)

    def __contains__(self, cell: Cell) -> bool:
        return cell in self._tiles

    def __eq__(self, other) -> bool:
        return (isinstance(other, Patch) and self.template == other.template
                and self._tiles == other._tiles)

    def __repr__(self) -> str:
        return f"Patch({len(self._tiles)} tiles)"

    def get(self, cell: Cell, default=None):
        return self._tiles.get(cell, default)

    def __getitem__(self, cell: Cell) -> int:
        return self._tiles[cell]

    def cells(self) -> Iterator[Cell]:
        return iter(self._tiles)

    def items(self) -> Iterator[tuple[Cell, int]]:
        return iter(self._tiles.items())

    def to_dict(self) -> dict[Cell, int]:
        return dict(self._tiles)


def can_place(patch: Patch, cell: Cell, orientation: int,
              r2: bool = True) -> LegalityReport:
    """Judge placing one tile against the patch.  r2=False restricts the
    check to curve continuity (used when exploring R1-only completions)."""
    orientation %= 6
    if cell in patch:
        return LegalityReport(Verdict.OCCUPIED, cell, orientation, ())
    if len(patch) == 0:
        return LegalityReport(Verdict.LEGAL, cell, orientation, ())
    t = tables_for(patch.template)
    edges = []
    any_r2 = False
    all_r1 = True
    for k in range(6):
        nb = neighbor(cell, k)
        b = patch.get(nb)
        if b is None:
            continue
        ok = t.r1_ok[k][orientation][b]
        link = t.r2_link[k][orientation][b]
        edges.append(EdgeCheck(k, nb, b, ok, link))
        all_r1 = all_r1 and ok
        any_r2 = any_r2 or link
    edges_t = tuple(edges)
    if not edges_t:
        return LegalityReport(Verdict.DISCONNECTED, cell, orientation, edges_t)
    if not all_r1:
        return LegalityReport(Verdict.R1_FAIL, cell, orientation, edges_t)
    if r2 and not any_r2:
        return LegalityReport(Verdict.R2_FAIL, cell, orientation, edges_t)
    return LegalityReport(Verdict.LEGAL, cell, orientation, edges_t)


def legal_orientations(patch: Patch, cell: Cell, r2: bool = True) -> tuple[int, ...]:
    return tuple(o for o in range(6)
                 if can_place(patch, cell, o, r2=r2).verdict is Verdict.LEGAL)


def place(patch: Patch, cell: Cell, orientation: int, r2: bool = True) -> Patch:
    report = can_place(patch, cell, orientation, r2=r2)
    if report.verdict is not Verdict.LEGAL:
        raise IllegalPlacement(report)
    tiles = patch.to_dict()
    tiles[cell] = orientation % 6
    return Patch(tiles, patch.template)


def transform_patch(patch: Patch, rotation: int = 0,
                    translation: Cell = (0, 0)) -> Patch:
    """Rotate by sixth-turns about the origin, then translate."""
    rotation %= 6
    tiles = {
        add(rotate_coord(c, rotation), translation): (o + rotation) % 6
        for c, o in patch.items()
    }
    return Patch(tiles, patch.template)


def union(*patches: Patch) -> Patch:
    """Merge patches that are disjoint or agree wherever they overlap."""
    if not patches:
        return Patch()
    template = patches[0].template
    tiles: dict[Cell, int] = {}
    for p in patches:
        if p.template != template:
            raise AssemblyError("patches use different templates")
        for c, o in p.items():
            prev = tiles.get(c)
            if prev is not None and prev != o:
                raise AssemblyError(f"orientation conflict at {c}: {prev} vs {o}")
            tiles[c] = o
    return Patch(tiles, template)


def r1_violations(patch: Patch) -> list[tuple[Cell, int, Cell]]:
    """All interior edges whose crossings fail to coincide, each reported
    once as (cell, direction in 0..2, neighbour)."""
    t = tables_for(patch.template)
    out = []
    for c, a in patch.items():
        for k in range(3):
            nb = neighbor(c, k)
            b = patch.get(nb)
            if b is not None and not t.r1_ok[k][a][b]:
                out.append((c, k, nb))
    return out


def r2_links(patch: Patch) -> Iterator[tuple[Cell, Cell]]:
    """All tree-connected neighbour pairs, each yielded once."""
    t = tables_for(patch.template)
    for c, a in patch.items():
        for k in range(3):
            nb = neighbor(c, k)
            b = patch.get(nb)
            if b is not None and t.r2_link[k][a][b]:
                yield c, nb


def is_directly_constructible(patch: Patch) -> tuple[bool, tuple[Cell, ...] | None]:
    """Whether some placement order replays the patch as all-LEGAL growth,
    with a breadth-first witness order when it does."""
    n = len(patch)
    if n == 0:
        return True, ()
    if r1_violations(patch):
        return False, None
    adj: dict[Cell, list[Cell]] = {c: [] for c in patch.cells()}
    for a, b in r2_links(patch):
        adj[a].append(b)
        adj[b].append(a)
    start = min(patch.cells())
    order = [start]
    seen = {start}
    i = 0
    while i < len(order):
        for nb in sorted(adj[order[i]]):
            if nb not in seen:
                seen.add(nb)
                order.append(nb)
        i += 1
    if len(order) != n:
        return False, None
    return True, tuple(order)


# --- patch files ------------------------------------------------------------

FORMAT_HEADER = "hexmono v1"


@dataclass(frozen=True)
class LoadReport:
    patch: Patch
    r1_violation_count: int
    r2_component_count: int

    @property
    def r1_ok(self) -> bool:
        return self.r1_violation_count == 0


def dumps_patch(patch: Patch) -> str:
    lines = [FORMAT_HEADER]
    for (q, r), o in sorted(patch.items()):
        lines.append(f"{q} {r} {o}")
    return "\n".join(lines) + "\n"


def loads_patch(text: str, template: PrototileTemplate = DEFAULT_TEMPLATE) -> LoadReport:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines or lines[0] != FORMAT_HEADER:
        raise ValueError(f"expected '{FORMAT_HEADER}' header")
    tiles: dict[Cell, int] = {}
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 3:
            raise ValueError(f"malformed tile line: {ln!r}")
        q, r, o = (int(x) for x in parts)
        if not 0 <= o <= 5:
            raise ValueError(f"orientation out of range: {ln!r}")
        cell = (q, r)
        if cell in tiles and tiles[cell] != o:
            raise ValueError(f"conflicting duplicate tile at {cell}")
        tiles[cell] = o
    patch = Patch(tiles, template)
    comps = _component_count(patch)
    return LoadReport(patch, len(r1_violations(patch)), comps)


def save_patch(patch: Patch, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps_patch(patch))


def load_patch(path, template: PrototileTemplate = DEFAULT_TEMPLATE) -> LoadReport:
    with open(path, "r", encoding="utf-8") as fh:
        return loads_patch(fh.read(), template)


def _component_count(patch: Patch) -> int:
    parent: dict[Cell, Cell] = {c: c for c in patch.cells()}

    def find(x: Cell) -> Cell:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    n = len(parent)
    for a, b in r2_links(patch):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
            n -= 1
    return n
