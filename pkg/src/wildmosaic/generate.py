"""Random test data: suitably connected mosaics and valid tree mosaics.

Everything takes a random.Random so runs are reproducible from a seed.
"""

from __future__ import annotations

import math
import random
from typing import Mapping

from .grid import INF_BY_CONN, Mosaic, Tile, conn_points
from .transforms import D4, D4Element, EmbedSpec, d4_act, tile_map
from .tree import RaySpec, TreeMosaic, _reorder

PLAIN_TILES = tuple(Tile(k) for k in range(11))
_INF = (Tile.B_NS, Tile.B_EW, Tile.B_NSEW)
_DEFAULT_WEIGHTS = {Tile.T0: 3.0, **{Tile(k): 1.0 for k in range(1, 11)}}


class GenerationError(RuntimeError):
    pass


class _Budget(Exception):
    pass


def _weighted_order(rng: random.Random, tiles, weights):
    # Efraimidis-Spirakis: sort by u^(1/w)
    keyed = [(math.log(rng.random() or 1e-300) / weights.get(t, 1.0), t) for t in tiles]
    keyed.sort(reverse=True)
    return [t for _, t in keyed]


def random_mosaic(
    rng: random.Random,
    n: int,
    boundary: str | Mapping[str, tuple[bool, ...]] = "none",
    fixed: Mapping[tuple[int, int], Tile] | None = None,
    weights: Mapping[Tile, float] | None = None,
    tiles=PLAIN_TILES,
    node_budget: int = 20_000,
    restarts: int = 50,
) -> Mosaic:
    """Backtracking fill, row-major, honouring neighbour agreement.

    boundary is 'none' (knot mosaic), 'free' (any boundary points) or a
    per-side map of exact flags.  fixed cells are kept as given.
    """
    fixed = dict(fixed or {})
    weights = dict(_DEFAULT_WEIGHTS if weights is None else weights)
    conn = {t: conn_points(t) for t in Tile}

    def edge_rule(i, j, side):
        # None means unconstrained, else the required flag
        if boundary == "free":
            return None
        if boundary == "none":
            return False
        k = j - 1 if side in "NS" else i - 1
        return boundary[side][k]

    grid: dict[tuple[int, int], Tile] = {}
    cells = [(i, j) for i in range(1, n + 1) for j in range(1, n + 1)]

    def allowed(i, j, t):
        c = conn[t]
        checks = []
        if i == 1:
            checks.append(("N", edge_rule(i, j, "N")))
        else:
            checks.append(("N", "S" in conn[grid[i - 1, j]]))
        if j == 1:
            checks.append(("W", edge_rule(i, j, "W")))
        else:
            checks.append(("W", "E" in conn[grid[i, j - 1]]))
        if i == n:
            checks.append(("S", edge_rule(i, j, "S")))
        elif (i + 1, j) in fixed:
            checks.append(("S", "N" in conn[fixed[i + 1, j]]))
        if j == n:
            checks.append(("E", edge_rule(i, j, "E")))
        elif (i, j + 1) in fixed:
            checks.append(("E", "W" in conn[fixed[i, j + 1]]))
        return all(want is None or (s in c) == want for s, want in checks)

    for _ in range(restarts):
        nodes = [0]

        def fill(k):
            if k == len(cells):
                return True
            i, j = cells[k]
            options = [fixed[i, j]] if (i, j) in fixed else _weighted_order(rng, tiles, weights)
            for t in options:
                nodes[0] += 1
                if nodes[0] > node_budget:
                    raise _Budget
                if allowed(i, j, t):
                    grid[i, j] = t
                    if fill(k + 1):
                        return True
                    del grid[i, j]
            return False

        grid.clear()
        try:
            if fill(0):
                return Mosaic(tuple(tuple(grid[i, j] for j in range(1, n + 1)) for i in range(1, n + 1)))
            raise GenerationError("constraints are unsatisfiable")
        except _Budget:
            continue
    raise GenerationError(f"no mosaic found within {restarts} restarts")


def centre_profile(m: int, conn) -> dict[str, tuple[bool, ...]]:
    mid = (m - 1) // 2
    return {s: tuple(s in conn and k == mid for k in range(m)) for s in "NESW"}


def inf_sites(rng: random.Random, n: int, k: int) -> list[tuple[int, int]]:
    """k interior, pairwise non-adjacent positions (fewer if they do not fit)."""
    cand = [(i, j) for i in range(2, n) for j in range(2, n)]
    rng.shuffle(cand)
    out = []
    for p in cand:
        if len(out) == k:
            break
        if all(abs(p[0] - q[0]) + abs(p[1] - q[1]) > 1 for q in out):
            out.append(p)
    return sorted(out)


def random_kind(rng: random.Random, kind: str, n: int) -> Mosaic:
    """A random mosaic of the given kind name."""
    if kind == "knot":
        return random_mosaic(rng, n)
    if kind == "tangle":
        return random_mosaic(rng, n, "free")
    sites = inf_sites(rng, n, rng.randint(1, 2)) if n >= 3 else []
    infs = {p: rng.choice(_INF) for p in sites}
    return random_mosaic(rng, n, "none" if kind == "rvknot" else "free", fixed=infs)


def random_child(
    rng: random.Random,
    conn,
    sigma: D4Element,
    m: int,
    infs: Mapping[tuple[int, int], Tile] | None = None,
) -> tuple[Mosaic, dict[tuple[int, int], Tile]]:
    """A child that fits a T-inf with the given conn once acted on by sigma.

    infs are placed in the oriented frame; the returned map gives the
    child's own T-inf tiles.
    """
    oriented = random_mosaic(rng, m, centre_profile(m, conn), fixed=infs)
    child = d4_act(sigma.inverse(), oriented)
    return child, {p: child[p] for p in child.inf_positions}


def random_tree(
    rng: random.Random,
    max_vertices: int = 6,
    dims=(3, 5),
    rays: int = 0,
    max_period: int = 2,
    max_product: int | None = None,
    name: str = "random",
) -> TreeMosaic:
    """A valid tree mosaic with a random finite core and up to `rays` rays.

    max_product caps the product of core dimensions, which is the
    dimension of the fully contracted mosaic.
    """
    while True:
        tm = _try_tree(rng, max_vertices, dims, rays, max_period, max_product, name)
        if tm is not None:
            return tm


def _try_tree(rng, max_vertices, dims, rays, max_period, max_product, name):
    n_core = rng.randint(1, max_vertices)
    slots_wanted = n_core - 1 + rays
    root_dim = rng.choice([d for d in dims if d >= 3])
    k_root = min(slots_wanted, rng.randint(1, 2)) if slots_wanted else 0
    if k_root == 0 and slots_wanted:
        return None
    sites = inf_sites(rng, root_dim, k_root)
    root = random_mosaic(rng, root_dim, fixed={p: rng.choice(_INF) for p in sites})
    mosaics = {"v0": root}
    parent, edges = {}, {}
    open_slots = [("v0", p) for p in root.inf_positions]
    product = root_dim
    count = 1
    while count < n_core and open_slots:
        u, pos = open_slots.pop(rng.randrange(len(open_slots)))
        m = rng.choice([d for d in dims if d >= 3 and d % 2])
        if max_product is not None and product * m > max_product:
            open_slots.append((u, pos))
            break
        room = n_core - count - 1 + rays - len(open_slots)
        k = min(max(room, 0), rng.randint(0, 2)) if m >= 3 else 0
        sigma = rng.choice(D4)
        conn = conn_points(mosaics[u][pos])
        oriented_sites = inf_sites(rng, m, k)
        infs = {p: rng.choice(_INF) for p in oriented_sites}
        child, _ = random_child(rng, conn, sigma, m, infs)
        vid = f"v{count}"
        mosaics[vid] = child
        parent[vid] = u
        edges[vid] = EmbedSpec(pos[0], pos[1], sigma)
        open_slots.extend((vid, p) for p in child.inf_positions)
        product *= m
        count += 1
    if len(open_slots) < rays:
        return None
    rng.shuffle(open_slots)
    ray_list = []
    for _ in range(rays):
        u, pos = open_slots.pop()
        ray_list.append((u, pos))
    # leftover slots: plug with crossing-free straight children
    for u, pos in open_slots:
        if max_product is not None and product * 3 > max_product:
            return None
        vid = f"v{count}"
        sigma = rng.choice(D4)
        child, _ = random_child(rng, conn_points(mosaics[u][pos]), sigma, 3)
        mosaics[vid], parent[vid], edges[vid] = child, u, EmbedSpec(pos[0], pos[1], sigma)
        product *= 3
        count += 1
    counts: dict[str, int] = {}
    specs = []
    for u, pos in ray_list:
        k = counts.get(u, 0)
        counts[u] = k + 1
        entry_tile = mosaics[u][pos]
        specs.append(random_ray(rng, f"{u}#{k}", u, pos, entry_tile, dims, rng.randint(1, max_period)))
    tm = TreeMosaic(name, "v0", mosaics, parent, edges, tuple(specs), tuple(mosaics))
    return _reorder(tm)


def random_ray(
    rng: random.Random,
    name: str,
    attach: str,
    pos: tuple[int, int],
    attach_tile: Tile,
    dims=(3, 5),
    p: int = 1,
) -> RaySpec:
    """A periodic ray whose elements each hold one T-inf tile."""
    entry_sigma = rng.choice(D4)
    sigmas = [entry_sigma if k == 0 else rng.choice(D4) for k in range(p)]
    wrap_sigma = rng.choice(D4)
    # element 0's own boundary sides, in its unoriented frame
    own0 = INF_BY_CONN[conn_points(tile_map(entry_sigma.inverse())[attach_tile])]
    # the last element's T-inf must read like own0 seen through wrap_sigma
    last_inf = tile_map(wrap_sigma)[own0]
    period = []
    prev_tile = attach_tile
    for k in range(p):
        m = rng.choice([d for d in dims if d >= 3 and d % 2])
        sigma = sigmas[k]
        (site,) = inf_sites(rng, m, 1)
        if k == p - 1:
            want = tile_map(sigma)[last_inf]
        else:
            want = rng.choice(_INF)
        child, infs = random_child(rng, conn_points(prev_tile), sigma, m, {site: want})
        period.append(child)
        prev_tile = child[child.inf_positions[0]]
    specs = [EmbedSpec(0, 0, wrap_sigma)] + [None] * (p - 1)
    for k in range(1, p):
        a, b = period[k - 1].inf_positions[0]
        specs[k] = EmbedSpec(a, b, sigmas[k])
    a, b = period[-1].inf_positions[0]
    specs[0] = EmbedSpec(a, b, wrap_sigma)
    return RaySpec(name, attach, EmbedSpec(pos[0], pos[1], entry_sigma), tuple(zip(period, specs)))


def two_vertex_tree(rng: random.Random, dims=(3, 5)) -> TreeMosaic:
    n = rng.choice(dims)
    (site,) = inf_sites(rng, n, 1)
    root = random_mosaic(rng, n, fixed={site: rng.choice(_INF)})
    sigma = rng.choice(D4)
    m = rng.choice([d for d in dims if d % 2])
    child, _ = random_child(rng, conn_points(root[site]), sigma, m)
    return TreeMosaic("pair", "root", {"root": root, "leaf": child}, {"leaf": "root"},
                      {"leaf": EmbedSpec(site[0], site[1], sigma)}, (), ("root", "leaf"))


def with_pattern(rng: random.Random, patch, n: int, pos: tuple[int, int], boundary="free") -> Mosaic:
    """A random mosaic containing patch with its top-left tile at pos."""
    k = len(patch)
    fixed = {(pos[0] + di, pos[1] + dj): patch[di][dj] for di in range(k) for dj in range(k)}
    return random_mosaic(rng, n, boundary, fixed=fixed)
