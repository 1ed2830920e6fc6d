"""Exact counting of lozenge tilings (perfect matchings of the dual graph).

Two independent strategies are provided:

* ``sweep``: a transfer-matrix pass over horizontal strips, top to bottom,
  one cell at a time.  The state is a bitmask of pending vertical lozenges
  plus one bit for a cell waiting for its left neighbour.
* ``backtrack``: memoized branching on the uncovered cell with the fewest
  available partners.

Centrally symmetric tilings are counted on the quotient.  The sweep cuts the
region along its centre line (or centre strip) and sums the upper-half
counts over boundary states fixed by the half-turn.  The backtracking
variant places lozenge orbits ``{t, sigma(t)}`` together.
"""

from __future__ import annotations

import itertools
from functools import lru_cache
from typing import Iterable, Iterator

from .regions import DOWN, UP, Cell, Region, RegionError, down, edge, lattice_neighbors, rotate_cell, up

STRATEGIES = ("sweep", "backtrack")


# ---------------------------------------------------------------------------
# strip sweep


def _layout(cells: frozenset):
    rows = sorted({c.row for c in cells}, reverse=True)
    lo = min((c.pos for c in cells), default=1) - 1
    hi = max((c.pos for c in cells), default=1) + 1
    return rows, lo, hi


def _sweep_rows(cells: frozenset, forbidden: frozenset, rows, lo: int, hi: int, states: dict) -> dict:
    """Advance ``states`` through the given strips (each processed right to left)."""
    pend = 1 << (hi - lo + 2)
    for r in rows:
        for pos in range(hi, lo - 1, -1):
            bit = 1 << (pos - lo)
            # down cell at (r, pos) comes right of the up cell at (r, pos)
            d = down(r, pos)
            if d in cells:
                right = up(r, pos + 1)
                can_join = right in cells and edge(d, right) not in forbidden
                new = {}
                for s, v in states.items():
                    if s & bit:
                        if s & pend:
                            continue
                        t = s ^ bit
                        new[t] = new.get(t, 0) + v
                    elif s & pend:
                        if can_join:
                            t = s ^ pend
                            new[t] = new.get(t, 0) + v
                    else:
                        t = s | pend
                        new[t] = new.get(t, 0) + v
                states = new
            else:
                states = {s: v for s, v in states.items() if not s & pend}
            u = up(r, pos)
            if u in cells:
                right = down(r, pos)
                can_join = right in cells and edge(u, right) not in forbidden
                below = down(r - 1, pos)
                can_drop = below in cells and edge(u, below) not in forbidden
                new = {}
                for s, v in states.items():
                    if s & pend:
                        if can_join:
                            t = s ^ pend
                            new[t] = new.get(t, 0) + v
                    else:
                        t = s | pend
                        new[t] = new.get(t, 0) + v
                        if can_drop:
                            t = s | bit
                            new[t] = new.get(t, 0) + v
                states = new
            else:
                states = {s: v for s, v in states.items() if not s & pend}
        states = {s: v for s, v in states.items() if not s & pend}
        if not states:
            break
    return states


@lru_cache(maxsize=4096)
def _count_sweep(cells: frozenset, forbidden: frozenset) -> int:
    if not cells:
        return 1
    rows, lo, hi = _layout(cells)
    return _sweep_rows(cells, forbidden, rows, lo, hi, {0: 1}).get(0, 0)


@lru_cache(maxsize=512)
def _upper_states(cells: frozenset, forbidden: frozenset, cut: int) -> tuple:
    """Sweep states after the strips at or above ``cut``, as ``(states, lo, hi)``."""
    rows, lo, hi = _layout(cells)
    return _sweep_rows(cells, forbidden, [r for r in rows if r >= cut], lo, hi, {0: 1}), lo, hi


def _crossing(s: int, lo: int, hi: int) -> list:
    return [p for p in range(lo, hi + 1) if s >> (p - lo) & 1]


@lru_cache(maxsize=4096)
def _count_sym_sweep(cells: frozenset, forbidden: frozenset, center: tuple) -> int:
    """All tilings of a half-turn-symmetric region whose centre lies on a lattice line.

    The lower half is the rotated upper half, so the count is the sum over
    crossing sets ``V`` of ``top(V) * top(P + 1 - V)``.
    """
    P, h = center
    states, lo, hi = _upper_states(cells, forbidden, h // 2)
    total = 0
    for s, v in states.items():
        t = 0
        for p in _crossing(s, lo, hi):
            t |= 1 << (P + 1 - p - lo)
        total += v * states.get(t, 0)
    return total


def _strip_matchable(strip: list, cells: frozenset, forbidden: frozenset) -> bool:
    """Can the left-to-right run of cells ``strip`` be matched horizontally?"""
    pending = None
    for c in strip:
        if pending is None:
            pending = c
            continue
        if not _adjacent_in_strip(pending, c) or edge(pending, c) in forbidden:
            return False
        pending = None
    return pending is None


def _adjacent_in_strip(a: Cell, b: Cell) -> bool:
    return b in lattice_neighbors(a) and a.row == b.row


@lru_cache(maxsize=4096)
def _count_cs_sweep(cells: frozenset, forbidden: frozenset, center: tuple) -> int:
    if not cells:
        return 1
    P, h = center
    rows, lo, hi = _layout(cells)
    if h % 2 == 0:
        states, lo, hi = _upper_states(cells, forbidden, h // 2)
        total = 0
        for s, v in states.items():
            # bit for position p means up(cut, p) matched with down(cut - 1, p)
            ps = _crossing(s, lo, hi)
            if sorted(P + 1 - p for p in ps) == ps:
                total += v
        return total
    mid = (h - 1) // 2
    top = [r for r in rows if r > mid]
    states = _sweep_rows(cells, forbidden, top, lo, hi, {0: 1})
    strip = sorted((c for c in cells if c.row == mid), key=lambda c: (c.pos, c.orient == DOWN))
    total = 0
    for s, v in states.items():
        covered = {down(mid, p) for p in range(lo, hi + 1) if s >> (p - lo) & 1}
        dropped = {rotate_cell(d, center) for d in covered}
        # dropped up cells pair with the mirror of the covering lozenges
        if not all(c in cells for c in dropped):
            continue
        if any(edge(c, down(mid - 1, c.pos)) in forbidden for c in dropped):
            continue
        rest = [c for c in strip if c not in covered and c not in dropped]
        if _strip_matchable(rest, cells, forbidden):
            total += v
    return total


# ---------------------------------------------------------------------------
# backtracking


class _Graph:
    def __init__(self, region: Region):
        self.cells = sorted(region.cells)
        self.index = {c: k for k, c in enumerate(self.cells)}
        self.adj = []
        for c in self.cells:
            m = 0
            for n in region.neighbors(c):
                m |= 1 << self.index[n]
            self.adj.append(m)
        self.full = (1 << len(self.cells)) - 1


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _pick(adj, mask):
    best, best_deg = -1, 4
    for k in _bits(mask):
        deg = bin(adj[k] & mask).count("1")
        if deg < best_deg:
            best, best_deg = k, deg
            if deg <= 1:
                break
    return best, best_deg


def _count_backtrack(region: Region) -> int:
    g = _Graph(region)
    adj = g.adj
    memo = {0: 1}

    def go(mask):
        if mask in memo:
            return memo[mask]
        k, deg = _pick(adj, mask)
        total = 0
        if deg:
            for n in _bits(adj[k] & mask):
                total += go(mask & ~(1 << k) & ~(1 << n))
        memo[mask] = total
        return total

    return go(g.full)


def _count_cs_backtrack(region: Region) -> int:
    g = _Graph(region)
    adj = g.adj
    sig = [g.index[region.sigma(c)] for c in g.cells]
    memo = {0: 1}

    def go(mask):
        if mask in memo:
            return memo[mask]
        k, deg = _pick(adj, mask)
        total = 0
        if deg:
            for n in _bits(adj[k] & mask):
                sk, sn = sig[k], sig[n]
                if sk == n:
                    total += go(mask & ~(1 << k) & ~(1 << n))
                    continue
                orbit = (1 << k) | (1 << n) | (1 << sk) | (1 << sn)
                if bin(orbit).count("1") != 4 or orbit & mask != orbit:
                    continue
                if not adj[sk] >> sn & 1:
                    continue
                total += go(mask & ~orbit)
        memo[mask] = total
        return total

    return go(g.full)


# ---------------------------------------------------------------------------
# public surface


def count_tilings(region: Region, strategy: str = "sweep") -> int:
    """Exact number of lozenge tilings of ``region`` (1 for the empty region)."""
    if region.untileable:
        return 0
    if region.n_up != region.n_down:
        return 0
    if strategy == "sweep":
        if region.center is not None and region.center[1] % 2 == 0 and region.cells:
            return _count_sym_sweep(region.cells, region.forbidden, region.center)
        return _count_sweep(region.cells, region.forbidden)
    if strategy == "backtrack":
        return _count_backtrack(region)
    raise ValueError(f"unknown strategy {strategy!r}")


def count_cs_tilings(region: Region, strategy: str = "sweep") -> int:
    """Exact number of tilings invariant under the region's half-turn."""
    if region.center is None:
        raise RegionError("region carries no central symmetry")
    if region.untileable or region.n_up != region.n_down:
        return 0
    if strategy == "sweep":
        return _count_cs_sweep(region.cells, region.forbidden, region.center)
    if strategy == "backtrack":
        return _count_cs_backtrack(region)
    raise ValueError(f"unknown strategy {strategy!r}")


def enumerate_tilings(region: Region) -> Iterator[frozenset]:
    """Yield every tiling once, as a frozenset of lozenges (frozenset cell pairs)."""
    if region.untileable or region.n_up != region.n_down:
        return
    g = _Graph(region)
    adj = g.adj
    cells = g.cells
    chosen = []

    def go(mask):
        if not mask:
            yield frozenset(frozenset((cells[a], cells[b])) for a, b in chosen)
            return
        k, deg = _pick(adj, mask)
        if not deg:
            return
        for n in _bits(adj[k] & mask):
            chosen.append((k, n))
            yield from go(mask & ~(1 << k) & ~(1 << n))
            chosen.pop()

    yield from go(g.full)


def is_cs_tiling(tiling: Iterable[frozenset], sigma) -> bool:
    """True iff the lozenge set is mapped onto itself by ``sigma``.

    ``sigma`` is a region (its half-turn is used), a mapping, or a callable.
    """
    if isinstance(sigma, Region):
        f = sigma.sigma
    elif hasattr(sigma, "__getitem__"):
        f = sigma.__getitem__
    else:
        f = sigma
    lozenges = frozenset(tiling)
    return all(frozenset(f(c) for c in t) in lozenges for t in lozenges)


def count_with_deletions(region: Region, deleted: Iterable[Cell], strategy: str = "sweep") -> int:
    """Tilings of the region with the given cells removed."""
    return count_tilings(region.delete(deleted), strategy)


def count_cs_with_deletions(region: Region, deleted: Iterable[Cell], strategy: str = "sweep") -> int:
    """Symmetric tilings of the region with a half-turn-invariant set of cells removed."""
    deleted = frozenset(deleted)
    if region.center is None:
        raise RegionError("region carries no central symmetry")
    if frozenset(region.sigma(c) for c in deleted) != deleted:
        raise RegionError("deleted cells are not closed under the half-turn")
    return count_cs_tilings(region.delete(deleted), strategy)


def count_cs_by_filter(region: Region) -> int:
    """Oracle: enumerate every tiling and keep the symmetric ones."""
    return sum(1 for t in enumerate_tilings(region) if is_cs_tiling(t, region))
