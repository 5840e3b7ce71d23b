"""Tiles, mosaics, validity predicates and the two injection maps."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, NamedTuple, Sequence

import numpy as np

SIDES = ("N", "E", "S", "W")
OPPOSITE = {"N": "S", "S": "N", "E": "W", "W": "E"}
# row/col step taken when leaving a tile through a side
STEP = {"N": (-1, 0), "S": (1, 0), "E": (0, 1), "W": (0, -1)}


class Tile(enum.IntEnum):
    T0 = 0
    T1 = 1
    T2 = 2
    T3 = 3
    T4 = 4
    T5 = 5
    T6 = 6
    T7 = 7
    T8 = 8
    T9 = 9  # crossing, E-W strand over
    T10 = 10  # crossing, N-S strand over
    B_NS = 11
    B_EW = 12
    B_NSEW = 13

    @property
    def is_inf(self) -> bool:
        return self >= Tile.B_NS

    @property
    def is_crossing(self) -> bool:
        return self in (Tile.T9, Tile.T10)

    @property
    def over(self) -> str | None:
        """Which strand of a crossing tile is on top: 'EW' or 'NS'."""
        if self == Tile.T9:
            return "EW"
        if self == Tile.T10:
            return "NS"
        return None

    @property
    def arcs(self) -> tuple[tuple[str, str], ...]:
        return _ARCS[self]

    @property
    def token(self) -> str:
        return _TOKENS[self]

    def __str__(self) -> str:
        return self.token


_ARCS: dict[Tile, tuple[tuple[str, str], ...]] = {
    Tile.T0: (),
    Tile.T1: (("S", "W"),),
    Tile.T2: (("S", "E"),),
    Tile.T3: (("N", "E"),),
    Tile.T4: (("N", "W"),),
    Tile.T5: (("E", "W"),),
    Tile.T6: (("N", "S"),),
    Tile.T7: (("N", "W"), ("S", "E")),
    Tile.T8: (("N", "E"), ("S", "W")),
    Tile.T9: (("N", "S"), ("E", "W")),
    Tile.T10: (("N", "S"), ("E", "W")),
    Tile.B_NS: (("N", "S"),),
    Tile.B_EW: (("E", "W"),),
    Tile.B_NSEW: (("N", "S"), ("E", "W")),
}

_TOKENS = {t: str(int(t)) for t in Tile if t <= Tile.T8}
_TOKENS.update({Tile.T9: "9o", Tile.T10: "9u", Tile.B_NS: "B:NS", Tile.B_EW: "B:EW", Tile.B_NSEW: "B:NSEW"})
_BY_TOKEN = {v: k for k, v in _TOKENS.items()}
_BY_TOKEN.update({"T" + str(int(t)): t for t in Tile if t <= Tile.T10})

_CONN = {t: frozenset(s for arc in arcs for s in arc) for t, arcs in _ARCS.items()}

INF_BY_CONN = {frozenset("NS"): Tile.B_NS, frozenset("EW"): Tile.B_EW, frozenset("NSEW"): Tile.B_NSEW}


def conn_points(t: Tile) -> frozenset[str]:
    return _CONN[Tile(t)]


def tile_from_token(tok: str) -> Tile:
    try:
        return _BY_TOKEN[tok]
    except KeyError:
        raise ValueError(f"unknown tile token {tok!r}") from None


def as_tile(x) -> Tile:
    if isinstance(x, Tile):
        return x
    if isinstance(x, int):
        return Tile(x)
    return tile_from_token(str(x))


class Kind(str, enum.Enum):
    PLAIN = "plain"
    KNOT = "knot"
    TANGLE = "tangle"
    RVKNOT = "rvknot"
    RVTANGLE = "rvtangle"

    def __str__(self) -> str:
        return self.value


class ConnProfile(NamedTuple):
    """Boundary flags per side, listed in increasing row/col index."""

    north: tuple[bool, ...]
    south: tuple[bool, ...]
    east: tuple[bool, ...]
    west: tuple[bool, ...]

    def side(self, s: str) -> tuple[bool, ...]:
        return {"N": self.north, "S": self.south, "E": self.east, "W": self.west}[s]

    @property
    def strands(self) -> int:
        return sum(self.north) + sum(self.south) + sum(self.east) + sum(self.west)


@dataclass(frozen=True)
class Mosaic:
    tiles: tuple[tuple[Tile, ...], ...]

    def __post_init__(self):
        n = len(self.tiles)
        if n == 0 or any(len(row) != n for row in self.tiles):
            raise ValueError("mosaic must be a non-empty square array")

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable]) -> "Mosaic":
        return cls(tuple(tuple(as_tile(x) for x in row) for row in rows))

    @classmethod
    def blank(cls, n: int) -> "Mosaic":
        return cls(((Tile.T0,) * n,) * n)

    @property
    def dim(self) -> int:
        return len(self.tiles)

    def __getitem__(self, pos: tuple[int, int]) -> Tile:
        i, j = pos
        if not (1 <= i <= self.dim and 1 <= j <= self.dim):
            raise IndexError(pos)
        return self.tiles[i - 1][j - 1]

    def positions(self) -> Iterator[tuple[int, int]]:
        n = self.dim
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                yield i, j

    @cached_property
    def array(self) -> np.ndarray:
        """Tile codes as an int8 array (row 0 is row 1 of the mosaic)."""
        n = self.dim
        return np.frombuffer(b"".join(bytes(row) for row in self.tiles), dtype=np.int8).reshape(n, n)

    @cached_property
    def inf_positions(self) -> tuple[tuple[int, int], ...]:
        ii, jj = np.nonzero(self.array >= Tile.B_NS)
        return tuple((int(i) + 1, int(j) + 1) for i, j in zip(ii, jj))

    @cached_property
    def kind(self) -> Kind:
        return classify(self)

    def crossing_count(self) -> int:
        a = self.array
        return int(np.count_nonzero((a == Tile.T9) | (a == Tile.T10)))

    def replace(self, changes: dict[tuple[int, int], Tile]) -> "Mosaic":
        rows = [list(r) for r in self.tiles]
        for (i, j), t in changes.items():
            rows[i - 1][j - 1] = as_tile(t)
        return Mosaic(tuple(tuple(r) for r in rows))

    def block(self, i: int, j: int, h: int, w: int) -> tuple[tuple[Tile, ...], ...]:
        return tuple(self.tiles[r][j - 1 : j - 1 + w] for r in range(i - 1, i - 1 + h))

    def __str__(self) -> str:
        return "\n".join(" ".join(t.token for t in row) for row in self.tiles)


_SIDE_FLAGS = {s: np.array([s in _CONN[t] for t in Tile]) for s in SIDES}


def _has(M: Mosaic, i: int, j: int, side: str) -> bool:
    return side in _CONN[M.tiles[i - 1][j - 1]]


def interior_mismatches(M: Mosaic) -> list[tuple[tuple[int, int], str]]:
    """Adjacent pairs whose shared edge has a connection point on one side only."""
    a = M.array
    flag = {s: _SIDE_FLAGS[s][a] for s in SIDES}
    bad = [((int(i) + 1, int(j) + 1), "E") for i, j in zip(*np.nonzero(flag["E"][:, :-1] != flag["W"][:, 1:]))]
    bad += [((int(i) + 1, int(j) + 1), "S") for i, j in zip(*np.nonzero(flag["S"][:-1, :] != flag["N"][1:, :]))]
    return sorted(bad, key=lambda b: (b[0], b[1] == "S"))


def boundary_profile(M: Mosaic) -> ConnProfile:
    n = M.dim
    return ConnProfile(
        north=tuple(_has(M, 1, j, "N") for j in range(1, n + 1)),
        south=tuple(_has(M, n, j, "S") for j in range(1, n + 1)),
        east=tuple(_has(M, i, n, "E") for i in range(1, n + 1)),
        west=tuple(_has(M, i, 1, "W") for i in range(1, n + 1)),
    )


def is_suitably_connected(M: Mosaic, allow_boundary: bool = False) -> bool:
    if interior_mismatches(M):
        return False
    return allow_boundary or boundary_profile(M).strands == 0


def _inf_violations(M: Mosaic) -> list[str]:
    n = M.dim
    out = []
    for i, j in M.inf_positions:
        if i in (1, n) or j in (1, n):
            out.append(f"T-inf tile at ({i},{j}) lies on the boundary")
        for di, dj in ((0, 1), (1, 0)):
            a, b = i + di, j + dj
            if a <= n and b <= n and M[a, b].is_inf:
                out.append(f"T-inf tiles at ({i},{j}) and ({a},{b}) are adjacent")
    return out


def violations(M: Mosaic, kind: Kind) -> list[str]:
    """Reasons why M fails to be a mosaic of the given kind (empty if it is one)."""
    kind = Kind(kind)
    if kind == Kind.PLAIN:
        return []
    out = [f"tiles ({i},{j}) disagree across their {s} edge" for (i, j), s in interior_mismatches(M)]
    has_inf = bool(M.inf_positions)
    if kind in (Kind.KNOT, Kind.TANGLE) and has_inf:
        out.append("T-inf tiles are not allowed")
    if kind in (Kind.KNOT, Kind.RVKNOT) and boundary_profile(M).strands:
        out.append("connection points on the outer boundary")
    if kind in (Kind.RVKNOT, Kind.RVTANGLE):
        out.extend(_inf_violations(M))
    if kind == Kind.RVTANGLE and len(M.inf_positions) == M.dim * M.dim:
        out.append("a mosaic made only of T-inf tiles")
    return out


def classify(M: Mosaic) -> Kind:
    for kind in (Kind.KNOT, Kind.TANGLE, Kind.RVKNOT, Kind.RVTANGLE):
        if not violations(M, kind):
            return kind
    return Kind.PLAIN


def knot_inject(M: Mosaic) -> Mosaic:
    if M.kind not in (Kind.KNOT, Kind.RVKNOT):
        raise ValueError(f"knot_inject needs a knot mosaic, got {M.kind}")
    blank = (Tile.T0,)
    rows = [row + blank for row in M.tiles]
    rows.append(blank * (M.dim + 1))
    return Mosaic(tuple(rows))


def tangle_inject(M: Mosaic) -> Mosaic:
    # knot kinds are tangles with no boundary points, so they are accepted too
    if M.kind == Kind.PLAIN:
        raise ValueError("tangle_inject needs a tangle mosaic, got plain")
    prof = boundary_profile(M)
    rows = [row + ((Tile.T5 if e else Tile.T0),) for row, e in zip(M.tiles, prof.east)]
    rows.append(tuple(Tile.T6 if s else Tile.T0 for s in prof.south) + (Tile.T0,))
    return Mosaic(tuple(rows))


def deinject(M: Mosaic) -> Mosaic | None:
    """Inverse of the injections: the top-left block, if M is an injected image."""
    n = M.dim
    if n < 2:
        return None
    inner = Mosaic(tuple(row[:-1] for row in M.tiles[:-1]))
    if inner.kind == Kind.PLAIN:
        return None
    image = tangle_inject(inner)
    return inner if image == M else None


# -- component tracing ---------------------------------------------------


class Event(NamedTuple):
    pos: tuple[int, int]
    what: str  # 'o' over, 'u' under, 'v' vertex pass


class Component(NamedTuple):
    closed: bool
    events: tuple[Event, ...]
    tiles: tuple[tuple[int, int], ...]
    ends: tuple[tuple[int, int, str], ...] = ()  # boundary points of an open strand


def _arc_event(t: Tile, arc: tuple[str, str], pos) -> Event | None:
    if t.is_crossing:
        horiz = set(arc) == {"E", "W"}
        over = (t.over == "EW") == horiz
        return Event(pos, "o" if over else "u")
    if t.is_inf:
        return Event(pos, "v")
    return None


def components(M: Mosaic) -> list[Component]:
    """Trace strands through connection points.

    A degree-4 T-inf tile is two transverse strands, like a crossing.
    Open components (ending on the boundary) come first.
    """
    n = M.dim
    seen: set[tuple[int, int, int]] = set()

    def arc_at(i, j, side):
        for k, arc in enumerate(M.tiles[i - 1][j - 1].arcs):
            if side in arc:
                return k, arc
        return None

    def walk(i, j, side):
        # enter tile (i,j) through `side`, follow until boundary or loop closes
        events, tiles = [], []
        while True:
            found = arc_at(i, j, side)
            if found is None:
                raise ValueError(f"strand enters ({i},{j}) through {side} without a connection point")
            k, arc = found
            if (i, j, k) in seen:
                return True, events, tiles
            seen.add((i, j, k))
            t = M.tiles[i - 1][j - 1]
            ev = _arc_event(t, arc, (i, j))
            if ev:
                events.append(ev)
            tiles.append((i, j))
            out = arc[1] if arc[0] == side else arc[0]
            di, dj = STEP[out]
            a, b = i + di, j + dj
            if not (1 <= a <= n and 1 <= b <= n):
                events.append((i, j, out))
                return False, events, tiles
            i, j, side = a, b, OPPOSITE[out]

    comps = []
    starts = [(1, j, "N") for j in range(1, n + 1)] + [(i, n, "E") for i in range(1, n + 1)]
    starts += [(n, j, "S") for j in range(n, 0, -1)] + [(i, 1, "W") for i in range(n, 0, -1)]
    for i, j, s in starts:
        if _has(M, i, j, s):
            found = arc_at(i, j, s)
            if (i, j, found[0]) not in seen:
                closed, ev, tl = walk(i, j, s)
                end = ev.pop()
                comps.append(Component(False, tuple(ev), tuple(tl), ((i, j, s), end)))
    for i, j in M.positions():
        for k, arc in enumerate(M[i, j].arcs):
            if (i, j, k) not in seen:
                closed, ev, tl = walk(i, j, arc[0])
                comps.append(Component(True, tuple(ev), tuple(tl)))
    return comps


# -- text format ---------------------------------------------------------


def format_mosaic(M: Mosaic, kind: Kind | None = None) -> str:
    kind = M.kind if kind is None else Kind(kind)
    return f"mosaic {M.dim} {kind}\n{M}\n"


def parse_mosaic(text: str) -> tuple[Mosaic, Kind]:
    lines = [ln for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines:
        raise ValueError("empty mosaic file")
    head = lines[0].split()
    if len(head) != 3 or head[0] != "mosaic":
        raise ValueError(f"bad mosaic header {lines[0]!r}")
    n, kind = int(head[1]), Kind(head[2])
    body = [ln.split() for ln in lines[1:]]
    if len(body) != n or any(len(r) != n for r in body):
        raise ValueError(f"expected {n} rows of {n} tokens")
    return Mosaic(tuple(tuple(tile_from_token(t) for t in r) for r in body)), kind


def read_mosaic(path) -> Mosaic:
    with open(path) as fh:
        M, _ = parse_mosaic(fh.read())
    return M


def write_mosaic(path, M: Mosaic, kind: Kind | None = None) -> None:
    with open(path, "w") as fh:
        fh.write(format_mosaic(M, kind))


def mosaic(rows: Sequence[Sequence]) -> Mosaic:
    """Shorthand used in tests and examples: ints 0-10 or tokens."""
    return Mosaic.from_rows(rows)
