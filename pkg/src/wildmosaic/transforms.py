"""D4 action, p-zoom, oriented embeddings and boundary adjustment."""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple

from .grid import (
    INF_BY_CONN,
    Kind,
    Mosaic,
    Tile,
    boundary_profile,
    conn_points,
)

_NAMES = ("e", "r", "r2", "r3", "f", "rf", "r2f", "r3f")


@dataclass(frozen=True, order=True)
class D4Element:
    """r^rot f^flip; r is the generator the action turns by a quarter."""

    rot: int = 0
    flip: int = 0

    def __post_init__(self):
        object.__setattr__(self, "rot", self.rot % 4)
        object.__setattr__(self, "flip", self.flip % 2)

    def __mul__(self, other: "D4Element") -> "D4Element":
        sign = -1 if self.flip else 1
        return D4Element(self.rot + sign * other.rot, self.flip + other.flip)

    def inverse(self) -> "D4Element":
        if self.flip:
            return self
        return D4Element(-self.rot, 0)

    def __pow__(self, k: int) -> "D4Element":
        out = IDENTITY
        for _ in range(k % 4 if not self.flip else k % 2):
            out = out * self
        return out

    @property
    def name(self) -> str:
        return _NAMES[self.flip * 4 + self.rot]

    def __str__(self) -> str:
        return self.name

    def __repr__(self) -> str:
        return f"D4Element({self.name})"

    @classmethod
    def parse(cls, name: str) -> "D4Element":
        try:
            k = _NAMES.index(name.strip())
        except ValueError:
            raise ValueError(f"unknown D4 element {name!r}") from None
        return cls(k % 4, k // 4)


IDENTITY = D4Element(0, 0)
R = D4Element(1, 0)
F = D4Element(0, 1)
D4 = tuple(D4Element(k % 4, k // 4) for k in range(8))

# side maps of the two generators, for T-inf connection data and profiles
_SIDE_F = {"N": "W", "W": "N", "S": "E", "E": "S"}
_SIDE_R = {"N": "E", "E": "S", "S": "W", "W": "N"}

_TILE_F = {Tile.T1: Tile.T3, Tile.T3: Tile.T1, Tile.T5: Tile.T6, Tile.T6: Tile.T5}
_TILE_R = {
    Tile.T1: Tile.T4, Tile.T2: Tile.T1, Tile.T3: Tile.T2, Tile.T4: Tile.T3,
    Tile.T5: Tile.T6, Tile.T6: Tile.T5, Tile.T7: Tile.T8, Tile.T8: Tile.T7,
    Tile.T9: Tile.T10, Tile.T10: Tile.T9,
}


def _inf_map(side_map):
    return {t: INF_BY_CONN[frozenset(side_map[s] for s in conn_points(t))] for t in INF_BY_CONN.values()}


_TILE_F.update(_inf_map(_SIDE_F))
_TILE_R.update(_inf_map(_SIDE_R))


@lru_cache(maxsize=None)
def side_map(sigma: D4Element) -> dict[str, str]:
    out = {s: s for s in "NESW"}
    if sigma.flip:
        out = {s: _SIDE_F[s] for s in out}
    for _ in range(sigma.rot):
        out = {s: _SIDE_R[t] for s, t in out.items()}
    return out


@lru_cache(maxsize=None)
def tile_map(sigma: D4Element) -> tuple[Tile, ...]:
    """tile_map(σ)[t] is the tile that t becomes under σ."""
    out = []
    for t in Tile:
        u = _TILE_F.get(t, t) if sigma.flip else t
        for _ in range(sigma.rot):
            u = _TILE_R.get(u, u)
        out.append(u)
    return tuple(out)


def map_index(sigma: D4Element, n: int, pos: tuple[int, int]) -> tuple[int, int]:
    """Where the tile at pos of an n-mosaic lands in σ·M."""
    a, b = pos
    if sigma.flip:
        a, b = b, a
    for _ in range(sigma.rot):
        a, b = b, n + 1 - a
    return a, b


@lru_cache(maxsize=None)
def _gather(sigma: D4Element, n: int) -> tuple[int, ...]:
    src = [0] * (n * n)
    for a in range(1, n + 1):
        for b in range(1, n + 1):
            i, j = map_index(sigma, n, (a, b))
            src[(i - 1) * n + j - 1] = (a - 1) * n + b - 1
    return tuple(src)


def d4_act(sigma: D4Element, M: Mosaic) -> Mosaic:
    if sigma == IDENTITY:
        return M
    n = M.dim
    tm = tile_map(sigma)
    flat = [t for row in M.tiles for t in row]
    new = [tm[flat[k]] for k in _gather(sigma, n)]
    return Mosaic(tuple(tuple(new[r * n : (r + 1) * n]) for r in range(n)))


def zoom(p: int, M: Mosaic) -> Mosaic:
    if p < 1 or p % 2 == 0:
        raise ValueError(f"zoom factor must be odd and positive, got {p}")
    if p == 1:
        return M
    n, q = M.dim, (p + 1) // 2
    rows = [[Tile.T0] * (p * n) for _ in range(p * n)]
    for i in range(n):
        for j in range(n):
            t = M.tiles[i][j]
            ci, cj = p * i + q - 1, p * j + q - 1
            rows[ci][cj] = t
            sides = conn_points(t)
            if "W" in sides:
                for c in range(p * j, cj):
                    rows[ci][c] = Tile.T5
            if "E" in sides:
                for c in range(cj + 1, p * (j + 1)):
                    rows[ci][c] = Tile.T5
            if "N" in sides:
                for r in range(p * i, ci):
                    rows[r][cj] = Tile.T6
            if "S" in sides:
                for r in range(ci + 1, p * (i + 1)):
                    rows[r][cj] = Tile.T6
    return Mosaic(tuple(tuple(r) for r in rows))


class EmbedError(ValueError):
    pass


class ConnectionMismatch(EmbedError):
    def __init__(self, side: str, detail: str):
        super().__init__(f"connection mismatch on side {side}: {detail}")
        self.side = side


class DimensionError(EmbedError):
    pass


_SPEC_RE = re.compile(r"^\(?\s*(\d+)\s*,\s*(\d+)\s*(?:,\s*([a-z0-9]+)\s*)?\)?$")


class EmbedSpec(NamedTuple):
    a: int
    b: int
    sigma: D4Element = IDENTITY

    @property
    def pos(self) -> tuple[int, int]:
        return self.a, self.b

    def __str__(self) -> str:
        return f"({self.a},{self.b},{self.sigma})"

    @classmethod
    def parse(cls, text: str) -> "EmbedSpec":
        m = _SPEC_RE.match(text.strip())
        if not m:
            raise ValueError(f"bad embed spec {text!r}")
        sigma = D4Element.parse(m.group(3)) if m.group(3) else IDENTITY
        return cls(int(m.group(1)), int(m.group(2)), sigma)


def profile_mismatch(child: Mosaic, conn: frozenset[str]) -> tuple[str, str] | None:
    """First side on which child's boundary differs from a T-inf's conn data.

    Each side in conn needs exactly one boundary point, at the centre cell;
    the other sides need none.
    """
    prof = boundary_profile(child)
    m = child.dim
    for side in "NESW":
        flags = prof.side(side)
        if side in conn:
            want = tuple(k == (m - 1) // 2 for k in range(m))
            if flags != want:
                return side, "expected a single connection at the centre cell"
        elif any(flags):
            return side, "expected no connections"
    return None


def embed(child: Mosaic, parent: Mosaic, spec: EmbedSpec) -> Mosaic:
    m = child.dim
    if m % 2 == 0:
        raise DimensionError(f"child dimension must be odd, got {m}")
    a, b = spec.a, spec.b
    if not (1 <= a <= parent.dim and 1 <= b <= parent.dim):
        raise EmbedError(f"position ({a},{b}) outside the parent")
    target = parent[a, b]
    if not target.is_inf:
        raise EmbedError(f"parent tile at ({a},{b}) is not a T-inf tile")
    oriented = d4_act(spec.sigma, child)
    bad = profile_mismatch(oriented, conn_points(target))
    if bad:
        raise ConnectionMismatch(*bad)
    W = zoom(m, parent)
    rows = [list(r) for r in W.tiles]
    for i in range(m):
        rows[m * (a - 1) + i][m * (b - 1) : m * b] = oriented.tiles[i]
    return Mosaic(tuple(tuple(r) for r in rows))


def zoom_position(m: int, pos: tuple[int, int]) -> tuple[int, int]:
    """Centre cell of the block that pos is sent to by an m-zoom."""
    q = (m + 1) // 2
    return m * (pos[0] - 1) + q, m * (pos[1] - 1) + q


def embedded_position(child_dim: int, spec: EmbedSpec, pos: tuple[int, int]) -> tuple[int, int]:
    """Where tile pos of the child sits inside embed(child, parent, spec)."""
    t, u = map_index(spec.sigma, child_dim, pos)
    return child_dim * (spec.a - 1) + t, child_dim * (spec.b - 1) + u


# -- boundary adjustment ------------------------------------------------


class Route(NamedTuple):
    start: tuple[str, int]  # side of the input mosaic and index along it
    target: str  # side of the output mosaic
    lane: int
    cells: tuple[tuple[int, int], ...]


class Adjustment(NamedTuple):
    mosaic: Mosaic
    routes: tuple[Route, ...]
    pad: tuple[int, int]  # rows/cols added on the N/W sides


class UnsupportedArity(ValueError):
    pass


def boundary_points(M: Mosaic) -> list[tuple[str, int]]:
    """Boundary points in clockwise order starting at the NW corner."""
    prof = boundary_profile(M)
    n = M.dim
    out = [("N", j) for j in range(1, n + 1) if prof.north[j - 1]]
    out += [("E", i) for i in range(1, n + 1) if prof.east[i - 1]]
    out += [("S", j) for j in range(n, 0, -1) if prof.south[j - 1]]
    out += [("W", i) for i in range(n, 0, -1) if prof.west[i - 1]]
    return out


def is_adjusted(M: Mosaic) -> bool:
    n = M.dim
    if n % 2 == 0:
        return False
    pts = boundary_points(M)
    c = (n + 1) // 2
    if any(k != c for _, k in pts):
        return False
    sides = {s for s, _ in pts}
    if len(pts) == 2:
        return sides in ({"N", "S"}, {"E", "W"})
    return len(pts) == 4


_EXIT = {"N": "S", "S": "N", "E": "W", "W": "E"}  # side of a ring cell facing the inner block
_CUT_ORDER = {"NW": "NESW", "NE": "ESWN", "SE": "SWNE", "SW": "WNES"}


def _clockwise_pos(n: int, side: str, k: int) -> int:
    return {"N": k - 1, "E": n + k - 1, "S": 3 * n - k, "W": 4 * n - k}[side]


def _route_all(n, W, pts, targets, cut):
    """Lane routing in a ring of width W around an n-block; None on collision.

    pts are listed clockwise from the cut corner.  A strand moving
    clockwise takes a lane above every later clockwise mover, a strand
    moving counter-clockwise one above every earlier one, which keeps
    nested strands apart.
    """
    extra = 1 if n % 2 == 0 else 0
    N = n + 2 * W + extra
    c = (N + 1) // 2
    lo, hi = W + 1, W + n

    def loop(h):
        top, bot, left, right = lo - h, hi + h, lo - h, hi + h
        cells = [(top, j) for j in range(left, right + 1)]
        cells += [(i, right) for i in range(top + 1, bot + 1)]
        cells += [(bot, j) for j in range(right - 1, left - 1, -1)]
        cells += [(i, left) for i in range(bot - 1, top, -1)]
        return cells

    def on_lane(h, side, k):
        return {"N": (lo - h, k), "S": (hi + h, k), "E": (k, hi + h), "W": (k, lo - h)}[side]

    shift = "NW NE SE SW".split().index(cut)

    def theta(h, cell):
        cells = loop(h)
        L = len(cells)
        return (cells.index(cell) - shift * L // 4) % L

    base = [(s, W + k) for s, k in pts]
    dirs = []
    for (s, k), t in zip(base, targets):
        d = theta(1, on_lane(1, t, c)) - theta(1, on_lane(1, s, k))
        dirs.append(1 if d >= 0 else -1)
    m = len(base)
    lanes = []
    for i in range(m):
        if dirs[i] > 0:
            lanes.append(1 + sum(1 for j in range(i + 1, m) if dirs[j] > 0))
        else:
            lanes.append(1 + sum(1 for j in range(i) if dirs[j] < 0))
    if max(lanes) > W:
        return None
    routes, used = [], set()
    for i, ((s, k), t) in enumerate(zip(base, targets)):
        h = lanes[i]
        path = [on_lane(r, s, k) for r in range(1, h)]
        cells = loop(h)
        q, p1 = cells.index(on_lane(h, s, k)), cells.index(on_lane(h, t, c))
        path.append(cells[q])
        while q != p1:
            q = (q + dirs[i]) % len(cells)
            path.append(cells[q])
        depth = W + (extra if t in "SE" else 0)
        path.extend(on_lane(r, t, c) for r in range(h + 1, depth + 1))
        if len(set(path)) != len(path) or used & set(path):
            return None
        used |= set(path)
        routes.append((s, k - W, t, h, tuple(path)))
    return N, routes


def _side_between(a, b):
    return {(-1, 0): "N", (1, 0): "S", (0, 1): "E", (0, -1): "W"}[(b[0] - a[0], b[1] - a[1])]


_TILE_BY_SIDES = {frozenset(t.arcs[0]): t for t in (Tile.T1, Tile.T2, Tile.T3, Tile.T4, Tile.T5, Tile.T6)}


def boundary_adjust(M: Mosaic, min_dim: int | None = None) -> Adjustment:
    """Pad M with a routing ring so that boundary points sit at side centres.

    Two points go to opposite sides, four points one per side.  The
    returned routes are the certificate: each strand's cells in the ring.
    """
    if M.kind not in (Kind.TANGLE, Kind.RVTANGLE):
        raise ValueError(f"boundary_adjust needs a tangle mosaic, got {M.kind}")
    pts = boundary_points(M)
    if len(pts) not in (2, 4):
        raise UnsupportedArity(f"boundary_adjust supports 2 or 4 boundary points, got {len(pts)}")
    if is_adjusted(M) and (min_dim is None or M.dim >= min_dim):
        return Adjustment(M, (), (0, 0))
    n = M.dim
    options = []
    for cut, order in _CUT_ORDER.items():
        origin = "NW NE SE SW".split().index(cut) * n
        rot = sorted(pts, key=lambda p: (_clockwise_pos(n, *p) - origin) % (4 * n))
        if len(pts) == 4:
            options.append((cut, rot, tuple(order)))
        else:
            options.append((cut, rot, (order[0], order[2])))
            options.append((cut, rot, (order[1], order[3])))
    extra = 1 if n % 2 == 0 else 0
    best = None
    for W in range(1, 4 * n + 4):
        if min_dim is not None and n + 2 * W + extra < min_dim:
            continue
        for cut, rot, targets in options:
            res = _route_all(n, W, rot, targets, cut)
            if res is not None:
                total = sum(len(r[4]) for r in res[1])
                if best is None or total < best[0]:
                    best = (total, W, res)
        if best:
            break
    if best is None:
        raise RuntimeError("no disjoint routing found")
    _, W, (N, routes) = best
    rows = [[Tile.T0] * N for _ in range(N)]
    for i in range(n):
        rows[W + i][W : W + n] = M.tiles[i]
    out = []
    for s, k, t, h, path in routes:
        entry = _EXIT[s]
        for idx, cell in enumerate(path):
            leave = _side_between(cell, path[idx + 1]) if idx + 1 < len(path) else t
            rows[cell[0] - 1][cell[1] - 1] = _TILE_BY_SIDES[frozenset((entry, leave))]
            entry = _EXIT[leave]
        out.append(Route((s, k), t, h, path))
    return Adjustment(Mosaic(tuple(tuple(r) for r in rows)), tuple(out), (W, W))
