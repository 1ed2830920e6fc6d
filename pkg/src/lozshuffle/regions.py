"""Regions on the triangular lattice.

Coordinates
-----------
Lattice points use skew coordinates ``(i, r)``: the point sits at cartesian
``(i + r/2, r*sqrt(3)/2)``.  Horizontal strip ``r`` lies between the lattice
lines at heights ``r`` and ``r + 1``.  A cell is addressed by
``Cell(row, pos, orient)`` with ``i = pos - 1``:

* up cell:   vertices ``(i, r), (i+1, r), (i, r+1)``
* down cell: vertices ``(i, r+1), (i+1, r+1), (i+1, r)``

The axis is the lattice line ``r = 0``.  Axis position ``p`` is the unit
interval from ``(p-1, 0)`` to ``(p, 0)``; the up cell ``(0, p, up)`` sits on
it from above and the down cell ``(-1, p, down)`` from below.  Together they
form the vertical lozenge at position ``p``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, NamedTuple, Optional, Sequence

UP = "up"
DOWN = "down"


class RegionError(ValueError):
    """Raised when region parameters violate a builder's preconditions."""


class Cell(NamedTuple):
    row: int
    pos: int
    orient: str

    @property
    def is_up(self) -> bool:
        return self.orient == UP

    def vertices(self):
        i, r = self.pos - 1, self.row
        if self.orient == UP:
            return ((i, r), (i + 1, r), (i, r + 1))
        return ((i, r + 1), (i + 1, r + 1), (i + 1, r))


def up(row: int, pos: int) -> Cell:
    return Cell(row, pos, UP)


def down(row: int, pos: int) -> Cell:
    return Cell(row, pos, DOWN)


def lattice_neighbors(c: Cell) -> tuple[Cell, Cell, Cell]:
    """The three edge-adjacent cells of ``c`` on the infinite lattice."""
    if c.orient == UP:
        return (down(c.row, c.pos - 1), down(c.row, c.pos), down(c.row - 1, c.pos))
    return (up(c.row, c.pos), up(c.row, c.pos + 1), up(c.row + 1, c.pos))


def edge(a: Cell, b: Cell) -> frozenset:
    return frozenset((a, b))


def vertical_edge(p: int) -> frozenset:
    """The dual edge of the vertical lozenge at axis position ``p``."""
    return edge(up(0, p), down(-1, p))


def rotate_cell(c: Cell, center: tuple[int, int]) -> Cell:
    """Image of ``c`` under the half-turn ``(i, r) -> (P - i, h - r)``."""
    P, h = center
    flipped = DOWN if c.orient == UP else UP
    return Cell(h - c.row - 1, P - c.pos + 1, flipped)


def reflect_cell(c: Cell) -> Cell:
    """Mirror image of ``c`` across the axis line ``r = 0``."""
    if c.orient == UP:
        return down(-c.row - 1, c.pos + c.row)
    return up(-c.row - 1, c.pos + c.row + 1)


# ---------------------------------------------------------------------------
# index sets and ferns


def index_set(values: Iterable[int], name: str = "index set") -> tuple[int, ...]:
    """Normalize to a strictly increasing tuple of positive integers."""
    vals = tuple(sorted(int(v) for v in values))
    if len(set(vals)) != len(vals):
        raise RegionError(f"{name} has repeated elements: {vals}")
    if vals and vals[0] < 1:
        raise RegionError(f"{name} must contain positive integers: {vals}")
    return vals


def mirror(values: Iterable[int], total: int) -> tuple[int, ...]:
    """``(total + 1) - values`` as a sorted tuple."""
    return tuple(sorted(total + 1 - v for v in values))


def shift_left(values: Iterable[int]) -> tuple[int, ...]:
    vals = tuple(values)
    if 1 in vals:
        raise RegionError("cannot shift a set containing 1 to the left")
    return tuple(v - 1 for v in vals)


def flip(orient: str) -> str:
    return DOWN if orient == UP else UP


@dataclass(frozen=True)
class Fern:
    """A chain of triangles of alternating orientation along the axis."""

    lengths: tuple[int, ...] = ()
    first: str = UP

    def __post_init__(self):
        object.__setattr__(self, "lengths", tuple(int(a) for a in self.lengths))
        if any(a < 0 for a in self.lengths):
            raise RegionError(f"fern lengths must be nonnegative: {self.lengths}")
        if self.first not in (UP, DOWN):
            raise RegionError(f"bad fern orientation {self.first!r}")

    def orientations(self) -> list[str]:
        return [self.first if k % 2 == 0 else flip(self.first) for k in range(len(self.lengths))]

    def triangles(self):
        return list(zip(self.orientations(), self.lengths))

    @property
    def total(self) -> int:
        return sum(self.lengths)

    @property
    def up_total(self) -> int:
        return sum(a for o, a in self.triangles() if o == UP)

    @property
    def down_total(self) -> int:
        return sum(a for o, a in self.triangles() if o == DOWN)

    def mirrored(self) -> "Fern":
        """Image under a half-turn: order reversed, orientations flipped."""
        if not self.lengths:
            return Fern((), self.first)
        last = self.orientations()[-1]
        return Fern(tuple(reversed(self.lengths)), flip(last))

    def then(self, other: "Fern") -> "Fern":
        """Concatenate, keeping orientations alternating."""
        if not self.lengths:
            return other
        if not other.lengths:
            return self
        if other.first == self.orientations()[-1]:
            raise RegionError("concatenated ferns would not alternate")
        return Fern(self.lengths + other.lengths, self.first)

    def starting_up(self) -> "Fern":
        """Equivalent fern whose first triangle points up (prepends a 0)."""
        if self.first == UP:
            return self
        return Fern((0,) + self.lengths, UP)

    def to_json(self) -> dict:
        return {"lengths": list(self.lengths), "first": self.first}

    @classmethod
    def from_json(cls, obj) -> "Fern":
        if isinstance(obj, Fern):
            return obj
        if isinstance(obj, (list, tuple)):
            return cls(tuple(obj), UP)
        return cls(tuple(obj.get("lengths", ())), obj.get("first", UP))


# ---------------------------------------------------------------------------
# the region value


@dataclass(frozen=True)
class Region:
    cells: frozenset
    forbidden: frozenset = frozenset()
    axis_len: int = 0
    barriers: tuple[int, ...] = ()
    center: Optional[tuple[int, int]] = None
    untileable: bool = False
    spec: object = field(default=None, compare=False, hash=False, repr=False)

    def __len__(self):
        return len(self.cells)

    @property
    def n_up(self) -> int:
        return sum(1 for c in self.cells if c.orient == UP)

    @property
    def n_down(self) -> int:
        return len(self.cells) - self.n_up

    @property
    def balanced(self) -> bool:
        return self.n_up == self.n_down

    @property
    def axis_free(self) -> tuple[int, ...]:
        """Axis positions carrying neither a dent nor a barrier."""
        bar = set(self.barriers)
        return tuple(
            p
            for p in range(1, self.axis_len + 1)
            if p not in bar and up(0, p) in self.cells and down(-1, p) in self.cells
        )

    @property
    def has_sigma(self) -> bool:
        return self.center is not None

    def sigma(self, c: Cell) -> Cell:
        if self.center is None:
            raise RegionError("region carries no central symmetry")
        return rotate_cell(c, self.center)

    def allowed(self, a: Cell, b: Cell) -> bool:
        return edge(a, b) not in self.forbidden

    def neighbors(self, c: Cell) -> list[Cell]:
        """Cells of the region that can share a lozenge with ``c``."""
        return [
            n
            for n in lattice_neighbors(c)
            if n in self.cells and edge(c, n) not in self.forbidden
        ]

    def delete(self, removed: Iterable[Cell]) -> "Region":
        """Region with the given cells removed (keeps the symmetry if preserved)."""
        removed = frozenset(removed)
        missing = removed - self.cells
        if missing:
            raise RegionError(f"cells not in region: {sorted(missing)}")
        cells = self.cells - removed
        forbidden = frozenset(e for e in self.forbidden if e <= cells)
        center = self.center
        if center is not None and frozenset(rotate_cell(c, center) for c in removed) != removed:
            center = None
        return Region(cells, forbidden, self.axis_len, self.barriers, center, self.untileable, self.spec)

    def with_center(self, center) -> "Region":
        return Region(self.cells, self.forbidden, self.axis_len, self.barriers, center,
                      self.untileable, self.spec)

    def rotated(self) -> "Region":
        """The region turned by 180 degrees (positions stay positive)."""
        verts = [v for c in self.cells for v in c.vertices()]
        if not verts:
            return self
        P = min(v[0] for v in verts) + max(v[0] for v in verts)
        rot = (P, 0)
        cells = frozenset(rotate_cell(c, rot) for c in self.cells)
        forbidden = frozenset(frozenset(rotate_cell(c, rot) for c in e) for e in self.forbidden)
        center = None
        if self.center is not None:
            Pc, hc = self.center
            center = (2 * P - Pc, -hc)
        return Region(cells, forbidden, self.axis_len, tuple(sorted(self.axis_len + 1 - b for b in self.barriers)),
                      center, self.untileable, None)


@lru_cache(maxsize=1024)
def _hexagon_cells(P: int, Q: int, lo: int, hi: int) -> frozenset:
    """Cells inside ``0 <= i <= P, 0 <= i + r <= Q, -lo <= r <= hi``."""
    out = []
    for r in range(-lo, hi):
        for i in range(-lo - 1, max(P, Q) + lo + 1):
            for orient in (UP, DOWN):
                c = Cell(r, i + 1, orient)
                if all(0 <= a <= P and 0 <= a + b <= Q and -lo <= b <= hi for a, b in c.vertices()):
                    out.append(c)
    return frozenset(out)


def _is_symmetric(cells: frozenset, forbidden: frozenset, center) -> bool:
    if any(rotate_cell(c, center) not in cells for c in cells):
        return False
    return all(frozenset(rotate_cell(c, center) for c in e) in forbidden for e in forbidden)


def symmetry_map(region: Region) -> dict:
    """The half-turn involution on the cells of a centrally symmetric region."""
    center = region.center
    if center is None:
        center = bounding_center(region)
        if center is None or not _is_symmetric(region.cells, region.forbidden, center):
            raise RegionError("region is not centrally symmetric")
    return {c: rotate_cell(c, center) for c in region.cells}


def bounding_center(region: Region):
    """Half-turn parameters ``(P, h)`` fixing the bounding box, or None."""
    if not region.cells:
        return (0, 0)
    rows = [c.row for c in region.cells]
    h = min(rows) + max(rows) + 1
    verts = [v for c in region.cells for v in c.vertices()]
    P = min(v[0] for v in verts) + max(v[0] for v in verts)
    if min(v[0] + v[1] for v in verts) + max(v[0] + v[1] for v in verts) != P + h:
        return None
    return (P, h)


# ---------------------------------------------------------------------------
# builders


def _check_nonneg(**kw):
    for k, v in kw.items():
        if int(v) != v or v < 0:
            raise RegionError(f"{k} must be a nonnegative integer, got {v!r}")


def build_hexagon(a: int, b: int, c: int) -> Region:
    """Hexagon with sides a, b, c, a, b, c clockwise from the north side."""
    _check_nonneg(a=a, b=b, c=c)
    cells = _hexagon_cells(a + b, a + c, b, c)
    return Region(cells, frozenset(), a + min(b, c), (), (a + b, c - b), spec=HexSpec(a, b, c))


def build_T(a: int, b: int, dents) -> Region:
    """Dented semihexagon: upper half of the hexagon b,a,a,b,a,a minus ``a`` base up-cells.

    The subscripts of this region are written in both orders in the
    literature; when ``len(dents) == b`` (and ``!= a``) the roles of ``a`` and
    ``b`` are swapped, so the number of dents always equals the height.
    """
    _check_nonneg(a=a, b=b)
    dents = index_set(dents, "dents")
    height, north = a, b
    if len(dents) != a:
        if len(dents) == b:
            height, north = b, a
        else:
            raise RegionError(f"T_{{{a},{b}}} needs {a} dents, got {len(dents)}")
    base = height + north
    if dents and dents[-1] > base:
        raise RegionError(f"dent {dents[-1]} outside base [1, {base}]")
    cells = _hexagon_cells(base, base, 0, height) - {up(0, p) for p in dents}
    return Region(frozenset(cells), frozenset(), base, (), None, spec=TSpec(a, b, dents))


def dent_intervals(seq: Sequence[int]) -> tuple[int, ...]:
    """Base positions covered by the odd-indexed entries a1, a3, ... of ``seq``."""
    out, cursor = [], 0
    for k, a in enumerate(seq):
        if k % 2 == 0:
            out.extend(range(cursor + 1, cursor + a + 1))
        cursor += a
    return tuple(out)


def build_S(seq: Sequence[int]) -> Region:
    """Generalized dented semihexagon, obtained from a T region by forcing."""
    seq = tuple(int(a) for a in seq)
    if not seq:
        raise RegionError("S needs a nonempty sequence")
    _check_nonneg(**{f"a{k + 1}": a for k, a in enumerate(seq)})
    odd, even = sum(seq[0::2]), sum(seq[1::2])
    base = odd + even
    dents = dent_intervals(seq)
    cells = _hexagon_cells(base, base, 0, odd) - {up(0, p) for p in dents}
    t = Region(frozenset(cells), frozenset(), base, (), None)
    reduced = remove_forced(t)
    return Region(reduced.cells, reduced.forbidden, base, (), None, reduced.untileable, SSpec(seq))


def _axis_hexagon(A: int, hU: int, hD: int, U, D, B) -> Region:
    cells = _hexagon_cells(A, A, hD, hU)
    cells = cells - {up(0, p) for p in U} - {down(-1, p) for p in D}
    forbidden = frozenset(vertical_edge(p) for p in B)
    center = None
    if hU == hD and _is_symmetric(cells, forbidden, (A, 0)):
        center = (A, 0)
    return Region(frozenset(cells), forbidden, A, tuple(B), center)


def build_H(x: int, y: int, U, D, B=()) -> Region:
    """Doubly-dented hexagon with up-dents U, down-dents D and barriers B."""
    _check_nonneg(x=x, y=y)
    U, D, B = index_set(U, "U"), index_set(D, "D"), index_set(B, "B")
    W = set(U) | set(D)
    n = len(W)
    A = x + y + n
    for name, S in (("U", U), ("D", D), ("B", B)):
        if S and S[-1] > A:
            raise RegionError(f"{name} must lie in [1, x+y+n] = [1, {A}], got {S}")
    if set(B) & W:
        raise RegionError("B must be disjoint from U and D")
    if len(B) > x:
        raise RegionError(f"|B| = {len(B)} exceeds x = {x}")
    reg = _axis_hexagon(A, y + len(U), y + len(D), U, D, B)
    return _respec(reg, HSpec(x, y, U, D, B))


def cs_index_sets(x: int, y: int, U, D, B=()):
    """Validate CS parameters; return ``(N, U_H, D_H, B_H)`` of the underlying H region."""
    _check_nonneg(x=x, y=y)
    U, D, B = index_set(U, "U"), index_set(D, "D"), index_set(B, "B")
    W = set(U) | set(D)
    n = len(W)
    N = x + y + 2 * n
    for name, S in (("U", U), ("D", D), ("B", B)):
        if S and S[-1] > N:
            raise RegionError(f"{name} must lie in [1, {N}], got {S}")
    if W & set(mirror(W, N)):
        raise RegionError("U u D must be disjoint from its mirror image")
    if set(B) & W or set(B) & set(mirror(W, N)):
        raise RegionError("barriers must avoid U u D and its mirror image")
    if set(B) & set(mirror(B, N)):
        raise RegionError("B must be disjoint from its mirror image")
    if 2 * len(B) > x:
        raise RegionError(f"2|B| = {2 * len(B)} exceeds x = {x}")
    if N % 2 == 1 and (N + 1) // 2 in W | set(B):
        raise RegionError("the central position cannot carry a dent or barrier")
    UH = tuple(sorted(set(U) | set(mirror(D, N))))
    DH = tuple(sorted(set(D) | set(mirror(U, N))))
    BH = tuple(sorted(set(B) | set(mirror(B, N))))
    return N, UH, DH, BH


def build_CS(x: int, y: int, U, D, B=()) -> Region:
    """Centrally symmetric doubly-dented hexagon."""
    N, UH, DH, BH = cs_index_sets(x, y, U, D, B)
    reg = build_H(x, y, UH, DH, BH)
    assert reg.axis_len == N
    if reg.center != (N, 0):
        raise AssertionError("CS construction lost its symmetry")
    return _respec(reg, CSSpec(x, y, index_set(U), index_set(D), index_set(B)))


def triangle_cells(orient: str, start: int, length: int) -> set:
    """Cells of a triangle of side ``length`` with its base on the axis at ``start..``."""
    cells = set()
    for r in range(length):
        for p in range(start, start + length - r):
            cells.add(up(r, p))
        for p in range(start, start + length - 1 - r):
            cells.add(down(r, p))
    if orient == DOWN:
        cells = {reflect_cell(c) for c in cells}
    return cells


def fern_layout(ferns: Sequence[Fern], gaps: Sequence[int]):
    """Triangles ``(orient, start, length)`` of the ferns placed left to right from position 1."""
    out, cursor = [], 1
    for k, f in enumerate(ferns):
        for o, a in f.triangles():
            out.append((o, cursor, a))
            cursor += a
        if k < len(gaps):
            cursor += gaps[k]
    return out, cursor - 1


def build_R(x: int, y: int, ferns, gaps) -> Region:
    """Hexagon with ferns removed along the axis."""
    _check_nonneg(x=x, y=y)
    ferns = [Fern.from_json(f) for f in ferns]
    gaps = [int(g) for g in gaps]
    if len(gaps) != max(len(ferns) - 1, 0):
        raise RegionError("need exactly one gap between consecutive ferns")
    if any(g < 0 for g in gaps):
        raise RegionError(f"gaps must be nonnegative: {gaps}")
    if sum(gaps) != x + y:
        raise RegionError(f"gaps must sum to x + y = {x + y}, got {sum(gaps)}")
    u = sum(f.up_total for f in ferns)
    d = sum(f.down_total for f in ferns)
    A = x + y + u + d
    layout, used = fern_layout(ferns, gaps)
    assert used == A
    cells = set(_hexagon_cells(A, A, y + d, y + u))
    for o, start, a in layout:
        tri = triangle_cells(o, start, a)
        if not tri <= cells:
            raise RegionError("fern does not fit inside the hexagon")
        cells -= tri
    cells = frozenset(cells)
    center = (A, 0) if u == d and _is_symmetric(cells, frozenset(), (A, 0)) else None
    return Region(cells, frozenset(), A, (), center, spec=RSpec(x, y, tuple(ferns), tuple(gaps)))


def e_ferns(ferns, gaps, prime: bool):
    """Full fern and gap lists of the symmetric E (or E') region."""
    ferns = [Fern.from_json(f) for f in ferns]
    gaps = [int(g) for g in gaps]
    if not ferns:
        raise RegionError("E needs at least one fern")
    if len(gaps) != len(ferns) - 1:
        raise RegionError("need exactly one gap between consecutive ferns")
    head = ferns[:-1]
    tail = [f.mirrored() for f in reversed(head)]
    last = ferns[-1]
    if prime:
        all_ferns = head + [last, last.mirrored()] + tail
        all_gaps = gaps + [1] + list(reversed(gaps))
    else:
        all_ferns = head + [last.then(last.mirrored())] + tail
        all_gaps = gaps + list(reversed(gaps))
    return all_ferns, all_gaps


def build_E(x: int, y: int, ferns, gaps) -> Region:
    if (x + y) % 2:
        raise RegionError("E needs x + y even")
    fs, gs = e_ferns(ferns, gaps, prime=False)
    reg = build_R(x, y, fs, gs)
    if reg.center is None:
        raise AssertionError("E construction is not centrally symmetric")
    return _respec(reg, ESpec(x, y, tuple(Fern.from_json(f) for f in ferns), tuple(gaps)))


def build_E_prime(x: int, y: int, ferns, gaps) -> Region:
    if (x + y) % 2 == 0:
        raise RegionError("E' needs x + y odd")
    fs, gs = e_ferns(ferns, gaps, prime=True)
    reg = build_R(x, y, fs, gs)
    if reg.center is None:
        raise AssertionError("E' construction is not centrally symmetric")
    return _respec(reg, EPrimeSpec(x, y, tuple(Fern.from_json(f) for f in ferns), tuple(gaps)))


def _respec(reg: Region, spec) -> Region:
    return Region(reg.cells, reg.forbidden, reg.axis_len, reg.barriers, reg.center, reg.untileable, spec)


# ---------------------------------------------------------------------------
# forced lozenges


def remove_forced(region: Region) -> Region:
    """Strip lozenges present in every tiling.

    Repeatedly pairs a cell having a single available neighbour with that
    neighbour.  A cell left with no neighbour marks the region untileable
    (the returned region has ``untileable=True``).
    """
    cells = set(region.cells)
    forbidden = region.forbidden

    def avail(c):
        return [n for n in lattice_neighbors(c) if n in cells and edge(c, n) not in forbidden]

    untileable = region.untileable
    queue = list(cells)
    while queue and not untileable:
        c = queue.pop()
        if c not in cells:
            continue
        nb = avail(c)
        if not nb:
            untileable = True
        elif len(nb) == 1:
            partner = nb[0]
            cells.discard(c)
            cells.discard(partner)
            for m in itertools.chain(lattice_neighbors(c), lattice_neighbors(partner)):
                if m in cells:
                    queue.append(m)
    cells = frozenset(cells)
    forbidden = frozenset(e for e in forbidden if e <= cells)
    center = region.center
    if center is not None and not _is_symmetric(cells, forbidden, center):
        center = None
    barriers = tuple(b for b in region.barriers if vertical_edge(b) in forbidden)
    return Region(cells, forbidden, region.axis_len, barriers, center, untileable, region.spec)


# ---------------------------------------------------------------------------
# declarative specs


def _ints(v):
    return tuple(int(a) for a in v)


@dataclass(frozen=True)
class HexSpec:
    a: int
    b: int
    c: int
    type = "hex"

    def build(self):
        return build_hexagon(self.a, self.b, self.c)

    def to_json(self):
        return {"type": self.type, "a": self.a, "b": self.b, "c": self.c}


@dataclass(frozen=True)
class TSpec:
    a: int
    b: int
    dents: tuple
    type = "t"

    def build(self):
        return build_T(self.a, self.b, self.dents)

    def to_json(self):
        return {"type": self.type, "a": self.a, "b": self.b, "dents": list(self.dents)}


@dataclass(frozen=True)
class SSpec:
    seq: tuple
    type = "s"

    def build(self):
        return build_S(self.seq)

    def to_json(self):
        return {"type": self.type, "seq": list(self.seq)}


@dataclass(frozen=True)
class HSpec:
    x: int
    y: int
    U: tuple = ()
    D: tuple = ()
    B: tuple = ()
    type = "h"

    def build(self):
        return build_H(self.x, self.y, self.U, self.D, self.B)

    def to_json(self):
        return {"type": self.type, "x": self.x, "y": self.y,
                "U": list(self.U), "D": list(self.D), "B": list(self.B)}


@dataclass(frozen=True)
class CSSpec(HSpec):
    type = "cs"

    def build(self):
        return build_CS(self.x, self.y, self.U, self.D, self.B)


@dataclass(frozen=True)
class RSpec:
    x: int
    y: int
    ferns: tuple = ()
    gaps: tuple = ()
    type = "r"

    def build(self):
        return build_R(self.x, self.y, self.ferns, self.gaps)

    def to_json(self):
        return {"type": self.type, "x": self.x, "y": self.y,
                "ferns": [f.to_json() for f in self.ferns], "gaps": list(self.gaps)}


@dataclass(frozen=True)
class ESpec(RSpec):
    type = "e"

    def build(self):
        return build_E(self.x, self.y, self.ferns, self.gaps)


@dataclass(frozen=True)
class EPrimeSpec(RSpec):
    type = "eprime"

    def build(self):
        return build_E_prime(self.x, self.y, self.ferns, self.gaps)


SPEC_TYPES = {cls.type: cls for cls in (HexSpec, TSpec, SSpec, HSpec, CSSpec, RSpec, ESpec, EPrimeSpec)}


def spec_from_json(obj: dict):
    """Parse one RegionSpec JSON object (see ``to_json`` on each spec class)."""
    if not isinstance(obj, dict) or "type" not in obj:
        raise RegionError("region spec must be an object with a 'type' key")
    kind = obj["type"]
    if kind not in SPEC_TYPES:
        raise RegionError(f"unknown region type {kind!r}")
    try:
        if kind == "hex":
            return HexSpec(int(obj["a"]), int(obj["b"]), int(obj["c"]))
        if kind == "t":
            return TSpec(int(obj["a"]), int(obj["b"]), index_set(obj["dents"], "dents"))
        if kind == "s":
            return SSpec(_ints(obj["seq"]))
        if kind in ("h", "cs"):
            return SPEC_TYPES[kind](int(obj["x"]), int(obj["y"]), index_set(obj.get("U", ()), "U"),
                                    index_set(obj.get("D", ()), "D"), index_set(obj.get("B", ()), "B"))
        ferns = tuple(Fern.from_json(f) for f in obj.get("ferns", ()))
        return SPEC_TYPES[kind](int(obj["x"]), int(obj["y"]), ferns, _ints(obj.get("gaps", ())))
    except (KeyError, TypeError, AttributeError) as exc:
        raise RegionError(f"malformed {kind} spec: {exc}") from None
