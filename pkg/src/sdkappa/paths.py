"""Paths in the grid ``[m] x [n]`` and the posets built from them.

A *path* is a non-empty chain in the product order of ``[m] x [n]``, stored
as the sorted tuple of its points; two paths are equal iff their images are.
A face of ``Delta[m]`` is stored as the sorted tuple of its image.  A chain of
face pairs ``(z, w)`` is a pair of equally long tuples of faces with
``z[i] <= z[i+1]`` and ``w[i] <= w[i+1]`` as subsets (repeats allowed).
"""

from __future__ import annotations

from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass
from itertools import combinations

from .errors import (
    BadCase,
    DegenerateChain,
    EmptyResult,
    NotAChain,
    PointNotInBase,
    PointNotOnPath,
    ScaleGuard,
)
from .poset import (
    OrderMap,
    Poset,
    _bits,
    iterated_cylinder,
    product_poset,
    total_order,
)

Point = tuple[int, int]
Path = tuple[Point, ...]
Face = tuple[int, ...]

GRID_CELL_LIMIT = 24


# -- faces and paths ----------------------------------------------------------


def faces(m: int) -> list[Face]:
    """Non-degenerate simplices of ``Delta[m]``, by dimension then lexicographically."""
    out = []
    for k in range(m + 1):
        out.extend(combinations(range(m + 1), k + 1))
    return out


def face_poset(m: int) -> Poset:
    """``Delta[m]#``: faces ordered by inclusion."""
    fs = faces(m)
    sets = [frozenset(f) for f in fs]
    up = [sum(1 << j for j, b in enumerate(sets) if a <= b) for a in sets]
    return Poset(fs, up)


def pair_poset(m: int, n: int) -> Poset:
    """``D^{m,n} = Delta[m]# x Delta[n]#``."""
    return product_poset(face_poset(m), face_poset(n))


def is_chain(points: Sequence[Point]) -> bool:
    return all(a[0] <= b[0] and a[1] <= b[1] and a != b for a, b in zip(points, points[1:]))


def make_path(points: Iterable[Point]) -> Path:
    """Canonical path from a set of points; raises NotAChain if they are not totally ordered."""
    pts = tuple(sorted(set(tuple(p) for p in points)))
    if not pts:
        raise EmptyResult("a path needs at least one point")
    if not is_chain(pts):
        raise NotAChain(f"{pts} is not totally ordered")
    return pts


def chains_in(xs: Sequence[int], ys: Sequence[int]) -> Iterator[Path]:
    """All paths with points in ``xs x ys``, in lexicographic order."""
    pts = [(a, b) for a in xs for b in ys]

    def rec(start: int, acc: list[Point]) -> Iterator[Path]:
        for i in range(start, len(pts)):
            p = pts[i]
            if acc and not (acc[-1][0] <= p[0] and acc[-1][1] <= p[1]):
                continue
            acc.append(p)
            yield tuple(acc)
            yield from rec(i + 1, acc)
            acc.pop()

    yield from rec(0, [])


def proj_sharp(gamma: Path) -> tuple[Face, Face]:
    """``(pr1#, pr2#)(gamma)``: the images of the two coordinate projections."""
    return tuple(sorted({p for p, _ in gamma})), tuple(sorted({q for _, q in gamma}))


def is_path_for(gamma: Path, mu: Face, nu: Face) -> bool:
    return proj_sharp(gamma) == (tuple(mu), tuple(nu))


def full_meet(gamma: Path, mu: Face, nu: Face) -> Path | None:
    """``gamma n L`` if ``gamma`` is ``(mu, nu)``-full, otherwise ``None``."""
    mus, nus = set(mu), set(nu)
    beta = tuple(p for p in gamma if p[0] in mus and p[1] in nus)
    if beta and is_path_for(beta, mu, nu):
        return beta
    return None


def union_paths(alpha: Path, beta: Path) -> Path:
    return make_path(alpha + beta)


def diff_paths(beta: Path, L: tuple[Face, Face]) -> Path:
    """``beta \\ L`` for ``L = im(mu) x im(nu)``; raises EmptyResult if nothing is left."""
    mus, nus = set(L[0]), set(L[1])
    rest = tuple(p for p in beta if not (p[0] in mus and p[1] in nus))
    if not rest:
        raise EmptyResult("path lies entirely inside L")
    return rest


# -- path posets --------------------------------------------------------------


def subset_poset(paths: Sequence[Path]) -> Poset:
    """Paths ordered by image inclusion."""
    sets = [frozenset(p) for p in paths]
    by_point: dict[Point, int] = {}
    for j, s in enumerate(sets):
        for pt in s:
            by_point[pt] = by_point.get(pt, 0) | (1 << j)
    full = (1 << len(paths)) - 1
    up = []
    for s in sets:
        mask = full
        for pt in s:
            mask &= by_point[pt]
        up.append(mask)
    return Poset(paths, up)


@dataclass(frozen=True)
class PathPoset:
    """A poset of paths in ``[m] x [n]`` with the condition that defines it."""

    m: int
    n: int
    tag: str
    poset: Poset

    def __len__(self) -> int:
        return len(self.poset)

    def __iter__(self):
        return iter(self.poset)

    def __contains__(self, gamma) -> bool:
        return gamma in self.poset

    @property
    def paths(self) -> tuple[Path, ...]:
        return self.poset.elements


def enumerate_nondeg(m: int, n: int, force: bool = False) -> PathPoset:
    """``C^{m,n}``: all paths in ``[m] x [n]``."""
    if m < 0 or n < 0:
        raise ValueError("grid bounds must be non-negative")
    if (m + 1) * (n + 1) > GRID_CELL_LIMIT and not force:
        raise ScaleGuard(f"[{m}]x[{n}] has more than {GRID_CELL_LIMIT} points")
    paths = list(chains_in(range(m + 1), range(n + 1)))
    return PathPoset(m, n, "C", subset_poset(paths))


def _check_face(f: Face, bound: int) -> Face:
    f = tuple(f)
    if not f or list(f) != sorted(set(f)) or f[0] < 0 or f[-1] > bound:
        raise ValueError(f"{f} is not a face of Delta[{bound}]")
    return f


def paths_for(mu: Face, nu: Face) -> list[Path]:
    return [g for g in chains_in(mu, nu) if is_path_for(g, mu, nu)]


def path_poset(mu: Face, nu: Face, m: int | None = None, n: int | None = None) -> PathPoset:
    """``P^{mu,nu}``: paths whose coordinate images are exactly ``mu`` and ``nu``."""
    m = mu[-1] if m is None else m
    n = nu[-1] if n is None else n
    mu, nu = _check_face(mu, m), _check_face(nu, n)
    return PathPoset(m, n, f"P^{{{mu},{nu}}}", subset_poset(paths_for(mu, nu)))


def check_sd_pair(z: Sequence[Face], w: Sequence[Face], m: int, n: int) -> tuple[tuple[Face, ...], tuple[Face, ...]]:
    z, w = tuple(_check_face(f, m) for f in z), tuple(_check_face(f, n) for f in w)
    if len(z) != len(w) or not z:
        raise ValueError("z and w must be non-empty and equally long")
    for i in range(len(z) - 1):
        if not (set(z[i]) <= set(z[i + 1]) and set(w[i]) <= set(w[i + 1])):
            raise ValueError("(z, w) is not increasing")
    return z, w


def is_nondegenerate(z: Sequence[Face], w: Sequence[Face]) -> bool:
    return all((z[i], w[i]) != (z[i + 1], w[i + 1]) for i in range(len(z) - 1))


def chain_paths(z: Sequence[Face], w: Sequence[Face]) -> list[Path]:
    """``(z_r, w_r)``-paths that are ``(z_j, w_j)``-full for every ``j < r``."""
    top = [g for g in chains_in(z[-1], w[-1]) if is_path_for(g, z[-1], w[-1])]
    return [g for g in top if all(full_meet(g, z[j], w[j]) is not None for j in range(len(z) - 1))]


def path_poset_chain(z: Sequence[Face], w: Sequence[Face], m: int | None = None, n: int | None = None) -> PathPoset:
    """``P^{z,w}`` for a possibly degenerate chain ``(z, w)``."""
    m = z[-1][-1] if m is None else m
    n = w[-1][-1] if n is None else n
    z, w = check_sd_pair(z, w, m, n)
    return PathPoset(m, n, f"P^{{z={z},w={w}}}", subset_poset(chain_paths(z, w)))


def through(poset: PathPoset, *points: Point) -> PathPoset:
    """The subposet of paths through all the given points."""
    keep = [g for g in poset.paths if all(p in g for p in points)]
    label = ",".join(str(p) for p in points)
    return PathPoset(poset.m, poset.n, f"{poset.tag}_{{{label}}}", poset.poset.subposet(keep))


def sd_pairs(m: int, n: int, r: int, degenerate: bool = False) -> Iterator[tuple[tuple[Face, ...], tuple[Face, ...]]]:
    """``r``-simplices ``(z, w)`` of ``Sd Delta[m] x Sd Delta[n]``.

    Non-degenerate ones only, unless ``degenerate`` is set.
    """
    D = pair_poset(m, n)
    elems = D.elements

    def rec(acc: list[int]) -> Iterator:
        if len(acc) == r + 1:
            yield tuple(elems[i][0] for i in acc), tuple(elems[i][1] for i in acc)
            return
        mask = D._up[acc[-1]]
        if not degenerate:
            mask &= ~(1 << acc[-1])
        for j in _bits(mask):
            acc.append(j)
            yield from rec(acc)
            acc.pop()

    for i in range(len(elems)):
        yield from rec([i])


# -- the F-sequence -------------------------------------------------------------


@dataclass(frozen=True)
class FSequence:
    """``F_r -> ... -> F_0`` for a non-degenerate ``(z, w)``.

    ``maps[i - 1]`` is ``phi_i : F_i -> F_{i-1}``, ``gamma -> gamma n L_{i-1}``.
    """

    z: tuple[Face, ...]
    w: tuple[Face, ...]
    layers: tuple[Poset, ...]
    maps: tuple[OrderMap, ...]
    union: Poset
    xi: OrderMap

    @property
    def r(self) -> int:
        return len(self.z) - 1

    def L(self, i: int) -> tuple[Face, Face]:
        return self.z[i], self.w[i]


def f_sequence(z: Sequence[Face], w: Sequence[Face], m: int | None = None, n: int | None = None) -> FSequence:
    m = z[-1][-1] if m is None else m
    n = w[-1][-1] if n is None else n
    z, w = check_sd_pair(z, w, m, n)
    if not is_nondegenerate(z, w):
        raise DegenerateChain("the F-sequence needs a non-degenerate chain")
    r = len(z) - 1
    layer_paths = [chain_paths(z[: i + 1], w[: i + 1]) for i in range(r + 1)]
    layers = tuple(subset_poset(ps) for ps in layer_paths)
    maps = tuple(
        OrderMap(layers[i], layers[i - 1], {g: full_meet(g, z[i - 1], w[i - 1]) for g in layers[i]})
        for i in range(1, r + 1)
    )
    union = subset_poset([g for ps in layer_paths for g in ps])
    xi = OrderMap(union, total_order(r), {g: i for i, ps in enumerate(layer_paths) for g in ps})
    return FSequence(z, w, layers, maps, union, xi)


def lambda_union(z: Sequence[Face], w: Sequence[Face], m: int | None = None, n: int | None = None) -> tuple[Poset, OrderMap, list[Poset]]:
    """``P_0 u ... u P_r`` with ``lambda`` and the individual ``P_i``."""
    m = z[-1][-1] if m is None else m
    n = w[-1][-1] if n is None else n
    z, w = check_sd_pair(z, w, m, n)
    if not is_nondegenerate(z, w):
        raise DegenerateChain("lambda needs a non-degenerate chain")
    r = len(z) - 1
    parts = [paths_for(z[i], w[i]) for i in range(r + 1)]
    union = subset_poset([g for ps in parts for g in ps])
    lam = OrderMap(union, total_order(r), {g: i for i, ps in enumerate(parts) for g in ps})
    return union, lam, [union.subposet(ps) for ps in parts]


def cylinder_comparison(seq: FSequence) -> list[str]:
    """Differences between ``F_0 u ... u F_r`` and ``P(phi_r, ..., phi_1)``; empty when equal."""
    cyl = iterated_cylinder(list(seq.maps), layers=None if seq.maps else [seq.layers[0]])
    relabelled = cyl.poset.relabel(lambda x: x[1])
    problems = []
    if set(relabelled.elements) != set(seq.union.elements):
        problems.append("element sets differ")
        return problems
    if relabelled.relation() != seq.union.relation():
        extra = relabelled.relation() - seq.union.relation()
        missing = seq.union.relation() - relabelled.relation()
        problems.append(f"order differs: {len(extra)} extra, {len(missing)} missing relations")
    for g in seq.union:
        if cyl.coordinate(_find_tag(cyl, g)) != seq.xi(g):
            problems.append(f"xi and pi disagree at {g}")
    return problems


def _find_tag(cyl, g):
    for i, layer in enumerate(cyl.layers):
        if g in layer:
            return (i, g)
    raise KeyError(g)


def interior_factorization_witnesses(z: Sequence[Face], w: Sequence[Face], m: int | None = None, n: int | None = None) -> list[tuple[Path, ...]]:
    """Chains of ``P_0 u ... u P_r`` surjecting onto ``[r]`` that leave ``F_0 u ... u F_r``.

    Degenerate simplices have the same values as their non-degenerate parts,
    so chains cover every simplex.
    """
    union, lam, _ = lambda_union(z, w, m, n)
    seq = f_sequence(z, w, m, n)
    inside = set(seq.union.elements)
    r = len(z) - 1
    witnesses = []
    for chain in union.chains():
        if {lam(g) for g in chain} == set(range(r + 1)) and not all(g in inside for g in chain):
            witnesses.append(chain)
    return witnesses


def interior_factorization_check(z: Sequence[Face], w: Sequence[Face], m: int | None = None, n: int | None = None) -> bool:
    return not interior_factorization_witnesses(z, w, m, n)


# -- splitting ----------------------------------------------------------------


def split_at(gamma: Path, pq: Point) -> tuple[Path, Path]:
    """Cut a path at one of its points into a lower part and a shifted upper part."""
    pq = tuple(pq)
    if pq not in gamma:
        raise PointNotOnPath(f"{pq} is not on {gamma}")
    j = gamma.index(pq)
    p, q = pq
    return gamma[: j + 1], tuple((a - p, b - q) for a, b in gamma[j:])


def join_at(lower: Path, upper: Path, pq: Point) -> Path:
    """Inverse of :func:`split_at`."""
    p, q = pq
    if lower[-1] != tuple(pq) or upper[0] != (0, 0):
        raise PointNotOnPath("pieces do not meet at the split point")
    return lower + tuple((a + p, b + q) for a, b in upper[1:])


def _split_face(f: Face, c: int) -> tuple[Face, Face]:
    return tuple(a for a in f if a <= c), tuple(a - c for a in f if a >= c)


def split_pair(pair: tuple[Face, Face], pq: Point) -> tuple[tuple[Face, Face], tuple[Face, Face]]:
    mu, nu = pair
    p, q = pq
    if p not in mu or q not in nu:
        raise PointNotInBase(f"{pq} is not in im(mu) x im(nu)")
    mu1, mu2 = _split_face(mu, p)
    nu1, nu2 = _split_face(nu, q)
    return (mu1, nu1), (mu2, nu2)


def split_chain(z: Sequence[Face], w: Sequence[Face], pq: Point):
    """Split every layer of ``(z, w)`` at ``pq``, which must lie in ``im(z_0) x im(w_0)``."""
    p, q = pq
    if p not in z[0] or q not in w[0]:
        raise PointNotInBase(f"{pq} is not in im(z_0) x im(w_0)")
    lo = [_split_face(f, p)[0] for f in z], [_split_face(f, q)[0] for f in w]
    hi = [_split_face(f, p)[1] for f in z], [_split_face(f, q)[1] for f in w]
    return (tuple(lo[0]), tuple(lo[1])), (tuple(hi[0]), tuple(hi[1]))


# -- covers used in the contractibility induction ----------------------------------


@dataclass(frozen=True)
class Cover:
    ambient: PathPoset
    pieces: tuple[PathPoset, ...]
    points: tuple[tuple[Point, ...], ...]


def q_cover(case: str, **params) -> Cover:
    """The covers ``Q_j`` of a path poset by right ideals.

    Cases:
        ``"base"`` (``m``, ``n``): ``P^{m+1,n}`` covered by paths through ``(m, j)``.
        ``"s1"`` (``x``, ``y``): ``x_0`` one-dimensional, ``y_0`` of dimension
            ``t >= 1``; ``Q_j`` are the paths through ``(x_0(0), y_0(j))`` and
            ``(x_0(1), y_0(j+1))``.
        ``"s2"`` (``x``, ``y``): ``x_0`` of dimension ``s >= 2``; ``Q_j`` are the
            paths through ``(x_0(s-1), y_0(j))``.
    """
    if case == "base":
        m, n = params["m"], params["n"]
        ambient = path_poset(tuple(range(m + 2)), tuple(range(n + 1)))
        pts = tuple(((m, j),) for j in range(n + 1))
    elif case in ("s1", "s2"):
        x, y = params["x"], params["y"]
        ambient = path_poset_chain(x, y, params.get("m"), params.get("n"))
        zeta, eta = x[0], y[0]
        s, t = len(zeta) - 1, len(eta) - 1
        if case == "s1":
            if s != 1 or t < 1:
                raise BadCase("case s1 needs dim x_0 = 1 and dim y_0 >= 1")
            pts = tuple(((zeta[0], eta[j]), (zeta[1], eta[j + 1])) for j in range(t))
        else:
            if s < 2:
                raise BadCase("case s2 needs dim x_0 >= 2")
            pts = tuple(((zeta[s - 1], eta[j]),) for j in range(t + 1))
    else:
        raise BadCase(f"unknown case {case!r}")
    pieces = tuple(through(ambient, *p) for p in pts)
    return Cover(ambient, pieces, pts)
