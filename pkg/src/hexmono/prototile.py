"""The decorated hexagonal prototile and its matching predicates.

A template fixes, for the orientation-0 tile, where each of the two rule
decorations meets the six edges:

* R1 (curve rule): three disjoint curves pair up the edges -- one straight
  stripe across an opposite pair, and one arc around each of the two corner
  vertices not touched by the stripe.  Each edge is crossed exactly once, in
  one off-centre half (NEAR_START or NEAR_END in the tile's own CCW boundary
  order).  Two adjacent tiles match along their shared edge iff their
  crossing points coincide, which in local terms means the two halves are
  opposite.
* R2 (dendrite rule): a tree inside the tile reaches exactly four of the six
  edges, at one off-centre contact point each, encoded as a sign.  The trees
  of two adjacent tiles touch iff both edges carry a contact and the signs
  are opposite (again: the same spatial point).

Orientation o maps template edge j to world direction (j + o) % 6.  All
predicates below are rotation-equivariant by construction.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import IntEnum
from typing import Iterable


class Crossing(IntEnum):
    NEAR_START = 0
    NEAR_END = 1


PLUS = 1
MINUS = -1

_SIGN_CHARS = {PLUS: "+", MINUS: "-", 0: "."}
_CHAR_SIGNS = {"+": PLUS, "-": MINUS, ".": 0}


class TemplateError(ValueError):
    pass


@dataclass(frozen=True)
class PrototileTemplate:
    """Immutable decoration data for the orientation-0 tile.

    r1_offsets[j] is the Crossing half of the R1 curve on template edge j.
    stripe_pair names the opposite edge pair joined by the straight curve;
    the remaining four edges split into the two corner arcs.  r2_signs[j] is
    0 where the tree does not reach edge j, else PLUS/MINUS for the contact
    half (PLUS = NEAR_END half).
    """

    r1_offsets: tuple[int, int, int, int, int, int]
    stripe_pair: tuple[int, int]
    r2_signs: tuple[int, int, int, int, int, int]

    def __post_init__(self):
        if len(self.r1_offsets) != 6 or any(v not in (0, 1) for v in self.r1_offsets):
            raise TemplateError("r1_offsets must be six 0/1 values")
        a, b = self.stripe_pair
        if (a - b) % 6 != 3:
            raise TemplateError("stripe_pair must be an opposite edge pair")
        if len(self.r2_signs) != 6 or any(v not in (-1, 0, 1) for v in self.r2_signs):
            raise TemplateError("r2_signs must be six values in {-1,0,+1}")
        if sum(1 for v in self.r2_signs if v) != 4:
            raise TemplateError("exactly four edges must carry a tree contact")

    # --- derived structure -------------------------------------------------

    @property
    def arc_pairs(self) -> tuple[tuple[int, int], tuple[int, int]]:
        """The two adjacent edge pairs not used by the stripe, each as
        (j, j+1); the arc's corner vertex is v_{j+1}."""
        s = self.stripe_pair[0] % 6
        # removing an opposite pair always leaves {s+1, s+2} and {s+4, s+5}
        return (((s + 1) % 6, (s + 2) % 6), ((s + 4) % 6, (s + 5) % 6))

    def curve_pairs(self) -> tuple[tuple[int, int], ...]:
        a1, a2 = self.arc_pairs
        return (self.stripe_pair, a1, a2)

    @property
    def r2_edges(self) -> frozenset[int]:
        return frozenset(j for j in range(6) if self.r2_signs[j])

    def curve_partner(self, j: int) -> int:
        """The template edge whose crossing is joined to edge j's inside the
        tile (stripe partner or arc partner)."""
        for a, b in self.curve_pairs():
            if j == a:
                return b
            if j == b:
                return a
        raise TemplateError("unreachable")

    def structural_issues(self) -> list[str]:
        """Checks beyond basic shape: stripe asymmetry and arc coherence."""
        out = []
        a, b = self.stripe_pair
        if self.r1_offsets[a] == self.r1_offsets[b]:
            out.append("stripe crossings are centrally symmetric")
        for j, k in self.arc_pairs:
            # an arc crosses its two edges either both toward its corner
            # vertex (tight) or both away from it (wide)
            tight = self.r1_offsets[j] == 1 and self.r1_offsets[k] == 0
            wide = self.r1_offsets[j] == 0 and self.r1_offsets[k] == 1
            if not (tight or wide):
                out.append(f"arc {{{j},{k}}} crossings are not a coherent corner arc")
        return out

    # --- serialization ------------------------------------------------------

    def to_text(self) -> str:
        off = "".join("E" if v else "S" for v in self.r1_offsets)
        signs = "".join(_SIGN_CHARS[v] for v in self.r2_signs)
        return (
            "prototile v1\n"
            f"stripe {self.stripe_pair[0]} {self.stripe_pair[1]}\n"
            f"r1 {off}\n"
            f"r2 {signs}\n"
        )

    @classmethod
    def from_text(cls, text: str) -> "PrototileTemplate":
        lines = [ln.strip() for ln in text.strip().splitlines() if ln.strip()]
        if not lines or lines[0] != "prototile v1":
            raise TemplateError("not a prototile v1 block")
        fields = dict(ln.split(None, 1) for ln in lines[1:])
        a, b = fields["stripe"].split()
        off = tuple(1 if ch == "E" else 0 for ch in fields["r1"])
        signs = tuple(_CHAR_SIGNS[ch] for ch in fields["r2"])
        return cls(off, (int(a), int(b)), signs)  # type: ignore[arg-type]


# --- matching predicates ----------------------------------------------------


def r1_signature(template: PrototileTemplate, orientation: int, k: int) -> Crossing:
    """Crossing half of the tile's R1 curve on its world-direction-k edge."""
    return Crossing(template.r1_offsets[(k - orientation) % 6])


def r1_match(a: Crossing, b: Crossing) -> bool:
    """True when two tiles' crossings on a shared edge are the same spatial
    point.  The neighbours traverse the edge in opposite directions, so the
    halves must be opposite."""
    return a != b


def r2_contact(template: PrototileTemplate, orientation: int, k: int) -> int:
    """Sign of the tree contact on the world-direction-k edge, 0 if none."""
    return template.r2_signs[(k - orientation) % 6]


def r2_connects(a: int, b: int) -> bool:
    """Trees of two neighbours touch iff both contacts exist with opposite
    local signs (same spatial point, as for r1_match)."""
    return a != 0 and b != 0 and a == -b


class LegalityTables:
    """Dense per-template lookup tables for the hot paths.

    r1_ok[k][a][b] is True when orientation-a tile and orientation-b tile at
    its direction-k neighbour satisfy R1 across the shared edge; r2_link is
    the same for a dendrite connection.
    """

    def __init__(self, template: PrototileTemplate):
        self.template = template
        f = template.r1_offsets
        s = template.r2_signs
        self.r1_ok = [
            [
                [f[(k - a) % 6] + f[(k + 3 - b) % 6] == 1 for b in range(6)]
                for a in range(6)
            ]
            for k in range(6)
        ]
        self.r2_link = [
            [
                [r2_connects(s[(k - a) % 6], s[(k + 3 - b) % 6]) for b in range(6)]
                for a in range(6)
            ]
            for k in range(6)
        ]


_tables_cache: dict[PrototileTemplate, LegalityTables] = {}


def tables_for(template: PrototileTemplate) -> LegalityTables:
    t = _tables_cache.get(template)
    if t is None:
        t = _tables_cache[template] = LegalityTables(template)
    return t


# --- shipped default --------------------------------------------------------
#
# Chosen by calibrate() over the full structural search space (see that
# function); the spiral patches P_1..P_3 admit exactly one R1 offset class,
# up to the global half-flip that leaves the matching relation unchanged,
# and one tree layout class up to a global sign flip.  The stripe sits on
# the {1,4} axis of the orientation-0 tile with both corner arcs wide.

DEFAULT_TEMPLATE = PrototileTemplate(
    r1_offsets=(1, 1, 0, 1, 0, 0),
    stripe_pair=(1, 4),
    r2_signs=(PLUS, PLUS, 0, PLUS, MINUS, 0),
)


# --- calibration ------------------------------------------------------------


@dataclass
class CalibrationResult:
    chosen: PrototileTemplate
    winners: list[PrototileTemplate]
    candidates_tested: int
    notes: list[str]


class NoTemplateError(RuntimeError):
    """No candidate in the search space satisfies the certificates."""


def _offset_candidates(allow_symmetric_stripe: bool) -> list[tuple[tuple[int, ...], tuple[int, int]]]:
    """All structurally coherent offset tables: stripe axis (3 rotations),
    stripe half choice, and tight/wide chirality per arc."""
    out = []
    stripe_choices = [(1, 0), (0, 1)] if not allow_symmetric_stripe else [(0, 0), (1, 1)]
    for s in range(3):
        stripe = (s, s + 3)
        arcs = ((s + 1) % 6, (s + 2) % 6), ((s + 4) % 6, (s + 5) % 6)
        for so in stripe_choices:
            for chi1 in ((1, 0), (0, 1)):
                for chi2 in ((1, 0), (0, 1)):
                    f = [0] * 6
                    f[stripe[0]], f[stripe[1] % 6] = so
                    (j1, k1), (j2, k2) = arcs
                    f[j1], f[k1] = chi1
                    f[j2], f[k2] = chi2
                    out.append((tuple(f), stripe))
    return out


def _sign_layouts() -> list[tuple[int, int, int, int, int, int]]:
    from itertools import combinations, product

    out = []
    for edges in combinations(range(6), 4):
        for signs in product((PLUS, MINUS), repeat=4):
            row = [0] * 6
            for e, sg in zip(edges, signs):
                row[e] = sg
            out.append(tuple(row))
    return out


def calibrate(allow_symmetric_stripe: bool = False, max_n: int = 3) -> CalibrationResult:
    """Exhaustive search over the structural template space.

    A candidate survives iff the first three spiral patches assemble
    R1-consistently and are directly constructible, closed triangle curves
    of lengths 0, 1 and 3 are completable, and the third spiral patch's
    dendrite graph is a tree.  Raises NoTemplateError when nothing survives
    (e.g. when restricted to symmetric stripes).
    """
    from . import constructions
    from .engine import is_directly_constructible, r1_violations
    from .analysis import r2_graph

    notes: list[str] = []
    tested = 0

    # R1 screen first: the offset table alone decides R1 consistency and
    # triangle completability, so filter before touching tree layouts.
    r1_survivors = []
    for offsets, stripe in _offset_candidates(allow_symmetric_stripe):
        tested += 1
        probe = PrototileTemplate(offsets, stripe, (PLUS, PLUS, PLUS, MINUS, 0, 0))
        patches = [constructions.build_Pn(n, template=probe) for n in range(1, max_n + 1)]
        if any(r1_violations(p) for p in patches):
            continue
        if not all(_triangle_completable(probe, length) for length in (0, 1, 3)):
            continue
        r1_survivors.append((offsets, stripe))

    winners = []
    for offsets, stripe in r1_survivors:
        for signs in _sign_layouts():
            tested += 1
            cand = PrototileTemplate(offsets, stripe, signs)
            ok = True
            for n in range(1, max_n + 1):
                p = constructions.build_Pn(n, template=cand)
                constructible, _ = is_directly_constructible(p)
                if not constructible:
                    ok = False
                    break
            if not ok:
                continue
            g = r2_graph(constructions.build_Pn(max_n, template=cand))
            if not g.is_tree:
                continue
            winners.append(cand)

    if not winners:
        raise NoTemplateError(
            f"no template passed the certificates ({tested} candidates)"
        )
    winners.sort(key=lambda t: (t.r1_offsets, t.stripe_pair, t.r2_signs))
    notes.append(f"{len(r1_survivors)} offset tables passed the R1 certificates")
    notes.append(f"{len(winners)} full templates passed all certificates")
    chosen = DEFAULT_TEMPLATE if DEFAULT_TEMPLATE in winners else winners[0]
    return CalibrationResult(chosen, winners, tested, notes)


def _triangle_completable(template: PrototileTemplate, length: int) -> bool:
    """Does a closed triangular R1 curve of the given side length exist?

    Solves the small constraint problem on the loop cells directly: every
    side tile must run its stripe along the side, every corner tile must
    turn with an arc, and all shared-edge crossings must coincide.  For
    length >= 2 the loop interior must also admit an R1-consistent filling.
    """
    from .constructions import triangle_loop_candidates

    return any(True for _ in triangle_loop_candidates(template, length, limit=1))
