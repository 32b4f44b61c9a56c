"""Ordinary and reduced mapping cylinders, reduction maps and their iterates.

The ordinary cylinder of ``f : X -> Y`` is the pushout of
``X x Delta[1] <- X -> Y`` along the bottom end ``i_0``.  The reduced cylinder
is only built for nerves of order-preserving maps, where it is the nerve of
the cylinder poset.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass

from .errors import CompositionMismatch
from .poset import (
    IteratedCylinderPoset,
    OrderMap,
    Poset,
    grid,
    iterated_cylinder,
    iterated_projection,
    mapping_cylinder,
    total_order,
)
from .simplicial import (
    Product,
    Pushout,
    SimplicialMap,
    SimplicialSet,
    delta,
    identity_map,
    nerve,
    nerve_map,
    normalize,
    product,
    product_map,
    pushout,
)


def constant_vertex_map(X: SimplicialSet, target: SimplicialSet, vertex) -> SimplicialMap:
    """The map sending everything to the vertex ``vertex`` of ``target``."""
    return SimplicialMap(X, target, {x: (vertex, (0,) * (X.dim(x) + 1)) for x in X.nondegenerate()})


@dataclass(frozen=True, eq=False)
class CylinderPackage:
    """A mapping cylinder with its structure maps.

    ``coordinate`` goes to ``Delta[1]`` for single cylinders and to ``Delta[r]``
    for iterated ones.  ``prod`` and ``glue`` are only set for ordinary
    cylinders; ``poset`` only for reduced ones.
    """

    total: SimplicialSet
    front: SimplicialMap
    back: SimplicialMap
    projection: SimplicialMap
    coordinate: SimplicialMap
    source_map: SimplicialMap | None = None
    prod: Product | None = None
    glue: Pushout | None = None
    poset: Poset | None = None


def ordinary_cylinder(f: SimplicialMap) -> CylinderPackage:
    """``T(f) = X x Delta[1] u_X Y``."""
    X, Y = f.source, f.target
    D1 = delta(1)
    XI = product(X, D1)
    idX = identity_map(X)
    i0 = XI.pair(idX, constant_vertex_map(X, D1, (0,)))
    i1 = XI.pair(idX, constant_vertex_map(X, D1, (1,)))
    glue = pushout(i0, f, name=f"T({X.name}->{Y.name})")
    coordinate = glue.induced(XI.pr2, constant_vertex_map(Y, D1, (0,)))
    projection = glue.induced(XI.pr1.then(f), identity_map(Y))
    front = i1.then(glue.j_B)
    return CylinderPackage(glue.total, front, glue.j_C, projection, coordinate, f, XI, glue)


def reduced_cylinder(phi: OrderMap) -> CylinderPackage:
    """``M(N phi) = N(P(phi))``."""
    cyl = mapping_cylinder(phi)
    total = nerve(cyl.poset, name="M")
    NV, NW = nerve(phi.source), nerve(phi.target)
    return CylinderPackage(
        total,
        nerve_map(cyl.front, NV, total),
        nerve_map(cyl.back, NW, total),
        nerve_map(cyl.projection, total, NW),
        nerve_map(cyl.coordinate, total, delta(1)),
        nerve_map(phi, NV, NW),
        poset=cyl.poset,
    )


def rho(phi: OrderMap, P: Poset) -> OrderMap:
    """``rho : V x [1] -> P(phi)``: ``(v, 1) -> In(v)`` and ``(v, 0) -> In'(phi(v))``."""
    V = phi.source
    VI = _product_with_interval(V)
    return OrderMap(VI, P, {(v, t): (1, v) if t == 1 else (0, phi(v)) for v, t in VI})


def _product_with_interval(V: Poset) -> Poset:
    from .poset import product_poset

    return product_poset(V, total_order(1))


def product_vertex_map(prod: Product, target: SimplicialSet, fn) -> SimplicialMap:
    """Map out of a product of nerves into a nerve, given on vertex pairs."""
    values = {}
    for label in prod.total.nondegenerate():
        x, y, path = label
        values[label] = normalize(tuple(fn((x[a], y[b])) for a, b in path))
    return SimplicialMap(prod.total, target, values)


@dataclass(frozen=True, eq=False)
class Reduction:
    ordinary: CylinderPackage
    reduced: CylinderPackage
    red: SimplicialMap
    rho: OrderMap
    n_rho: SimplicialMap  # red restricted to X x Delta[1]


def reduction_map(phi: OrderMap) -> Reduction:
    """``red : T(N phi) -> M(N phi)``, induced by ``N rho`` and ``In'``."""
    M = reduced_cylinder(phi)
    T = ordinary_cylinder(M.source_map)
    r = rho(phi, M.poset)
    n_rho = product_vertex_map(T.prod, M.total, lambda vt: r((vt[0], vt[1])))
    red = T.glue.induced(n_rho, M.back)
    return Reduction(T, M, red, r, n_rho)


def cylinder_map(src: CylinderPackage, tgt: CylinderPackage, h: SimplicialMap) -> SimplicialMap:
    """``T(g) -> T(g')`` induced by ``h : A -> A'`` with ``g' o h = g`` and the identity on the target."""
    g, g2 = src.source_map, tgt.source_map
    for x in g.source.nondegenerate():
        if g2(h.on(x)) != g.on(x):
            raise CompositionMismatch("h does not commute with the cylinder maps")
    hB = product_map(src.prod, tgt.prod, h, identity_map(src.prod.right)).then(tgt.glue.j_B)
    return src.glue.induced(hB, tgt.glue.j_C)


# -- iterated cylinders ---------------------------------------------------------


def _check_chain(maps: Sequence) -> None:
    for i in range(1, len(maps)):
        if maps[i].target is not maps[i - 1].source and set(maps[i].target.nondegenerate()) != set(maps[i - 1].source.nondegenerate()):
            raise CompositionMismatch(f"f_{i + 1} does not land in the source of f_{i}")


@dataclass(frozen=True, eq=False)
class IteratedOrdinary:
    """``T(f_r, ..., f_1)`` with its projection to ``X_0`` and the map to ``T^r``."""

    total: SimplicialSet
    projection: SimplicialMap
    package: CylinderPackage | None  # outermost cylinder (None when r = 0)
    inner: IteratedOrdinary | None


def iterated_ordinary(maps: Sequence[SimplicialMap], base: SimplicialSet | None = None) -> IteratedOrdinary:
    """``T(f_r, ..., f_1) = T(f_1 o pr)``; ``maps[i - 1] = f_i``.  For ``r = 0`` pass ``base``."""
    maps = list(maps)
    _check_chain(maps)
    if not maps:
        if base is None:
            raise CompositionMismatch("r = 0 needs the base simplicial set")
        return IteratedOrdinary(base, identity_map(base), None, None)
    if len(maps) == 1:
        pkg = ordinary_cylinder(maps[0])
        return IteratedOrdinary(pkg.total, pkg.projection, pkg, None)
    inner = iterated_ordinary(maps[1:])
    pkg = ordinary_cylinder(inner.projection.then(maps[0]))
    return IteratedOrdinary(pkg.total, pkg.projection, pkg, inner)


@dataclass(frozen=True, eq=False)
class IteratedReduced:
    total: SimplicialSet
    cylinder: IteratedCylinderPoset
    coordinate: SimplicialMap
    projection: SimplicialMap


def iterated_reduced(maps: Sequence[OrderMap], layers: Sequence[Poset] | None = None) -> IteratedReduced:
    """``M(f_r, ..., f_1) = N(P(phi_r, ..., phi_1))`` and its coordinate projection."""
    cyl = iterated_cylinder(maps, layers)
    total = nerve(cyl.poset, name="M")
    r = len(cyl.layers) - 1
    coordinate = nerve_map(cyl.coordinate, total, delta(r))
    projection = nerve_map(iterated_projection(list(maps), cyl), total, nerve(cyl.layers[0]))
    return IteratedReduced(total, cyl, coordinate, projection)


def shift_tags(Q: Poset, offset: int) -> Poset:
    return Q.relabel(lambda x: (x[0] + offset, x[1]))


@dataclass(frozen=True, eq=False)
class IteratedReduction:
    """``red : T(f_r, ..., f_1) -> M(f_r, ..., f_1)`` and the pieces it is built from."""

    ordinary: IteratedOrdinary
    reduced: IteratedReduced
    red: SimplicialMap
    first: SimplicialMap | None  # T(T' -> X_0) -> T(M' -> X_0)
    step: Reduction | None  # reduction for psi_1 = phi_1 o pr
    inner: IteratedReduction | None


def iterated_reduction(maps: Sequence[OrderMap], layers: Sequence[Poset] | None = None) -> IteratedReduction:
    """The ``r``-fold iterated reduction map for ``V_r -> ... -> V_0`` (``maps[i - 1] = phi_i``)."""
    maps = list(maps)
    r = len(maps)
    M = iterated_reduced(maps, layers)
    if r == 0:
        V0 = M.cylinder.layers[0]
        NV0 = nerve(V0)
        red = SimplicialMap(NV0, M.total, {c: (tuple((0, v) for v in c), tuple(range(len(c)))) for c in NV0.nondegenerate()})
        return IteratedReduction(iterated_ordinary([], NV0), M, red, None, None, None)
    if r == 1:
        step = reduction_map(maps[0])
        T = IteratedOrdinary(step.ordinary.total, step.ordinary.projection, step.ordinary, None)
        red = _retarget(step.red, M.total, lambda x: x)
        return IteratedReduction(T, M, red, None, step, None)
    inner = iterated_reduction(maps[1:])
    # psi_1 = phi_1 o (psi_2 v 1) on P(phi_r, ..., phi_2), whose tags run from 0.
    P_inner = inner.reduced.cylinder
    pr = iterated_projection(maps[1:], P_inner)
    psi = pr.then(maps[0])
    step = reduction_map(psi)
    Tpkg = ordinary_cylinder(inner.ordinary.projection.then(_nerve_between(maps[0], inner.ordinary.projection.target)))
    ordinary = IteratedOrdinary(Tpkg.total, Tpkg.projection, Tpkg, inner.ordinary)
    first = cylinder_map(Tpkg, step.ordinary, inner.red)
    relabel = lambda x: (x[1][0] + 1, x[1][1]) if x[0] == 1 else (0, x[1])
    second = _retarget(step.red, M.total, relabel)
    red = first.then(second)
    return IteratedReduction(ordinary, M, red, first, step, inner)


def _nerve_between(phi: OrderMap, source: SimplicialSet) -> SimplicialMap:
    return nerve_map(phi, source, nerve(phi.target))


def _retarget(f: SimplicialMap, target: SimplicialSet, relabel) -> SimplicialMap:
    """Post-compose a map into a nerve with a relabelling of the poset elements."""
    values = {x: (tuple(relabel(v) for v in c), s) for x, (c, s) in f.values.items()}
    return SimplicialMap(f.source, target, values)


# -- terminal cylinders ---------------------------------------------------------


def terminal_maps(r: int) -> list[OrderMap]:
    pt = total_order(0)
    return [OrderMap.identity(pt) for _ in range(r)]


def terminal_reduction(r: int) -> IteratedReduction:
    """``red : T^r -> M^r``."""
    return iterated_reduction(terminal_maps(r), layers=[total_order(0)] if r == 0 else None)


def theta_sigma(r: int) -> tuple[OrderMap, OrderMap]:
    """``theta : [r-1] x [1] -> [r]`` and its section ``sigma``."""
    if r < 1:
        raise ValueError("theta needs r >= 1")
    G, R = grid(r - 1, 1), total_order(r)
    theta = OrderMap(G, R, {(i, t): 0 if t == 0 else i + 1 for i, t in G})
    sigma = OrderMap(R, G, {j: (0, 0) if j == 0 else (j - 1, 1) for j in R})
    return theta, sigma
