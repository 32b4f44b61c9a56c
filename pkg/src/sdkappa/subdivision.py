"""Kan subdivision, Barratt nerves and the maps relating them.

A non-degenerate simplex of ``Sd X`` is labelled ``(x, chain)`` where ``x`` is
a non-degenerate ``d``-simplex of ``X`` and ``chain`` is a strictly increasing
sequence of non-empty subsets of ``[d]`` (sorted tuples) ending in ``[d]``
itself.  These are exactly the simplices of ``Sd Delta[d]`` not lying in the
subdivided boundary, which is why the colimit formula for ``Sd X`` has them
as its non-degenerate part.
"""

from __future__ import annotations

from collections.abc import Iterator

from .poset import OrderMap, Poset, _bits
from .simplicial import (
    Label,
    Product,
    SimplicialMap,
    SimplicialSet,
    Simplex,
    identity_op,
    nerve,
    nerve_map,
    normalize,
    product,
)


# -- the poset of non-degenerate simplices ------------------------------------


def nondeg_part(X: SimplicialSet, simplex: Simplex) -> tuple[Label, tuple[int, ...]]:
    """``(x#, s)`` with ``simplex = x# . s``; simplices are stored in this form already."""
    x, s = simplex
    X.dim(x)
    return x, tuple(s)


def nondeg_poset(X: SimplicialSet) -> Poset:
    """``X#``: non-degenerate simplices ordered by the face relation."""
    labels = sorted(X.nondegenerate(), key=X.dim)
    index = {x: i for i, x in enumerate(labels)}
    down = [0] * len(labels)
    for i, x in enumerate(labels):
        mask = 1 << i
        for z, _ in X.elementary_faces(x):
            mask |= down[index[z]]
        down[i] = mask
    up = [0] * len(labels)
    for i, mask in enumerate(down):
        for j in _bits(mask):
            up[j] |= 1 << i
    return Poset(labels, up)


def barratt_nerve(X: SimplicialSet, poset: Poset | None = None) -> SimplicialSet:
    return nerve(poset if poset is not None else nondeg_poset(X), name=f"B({X.name})")


def induced_sharp(f: SimplicialMap, source: Poset | None = None, target: Poset | None = None) -> OrderMap:
    """``f#``: ``x -> f(x)#`` between posets of non-degenerate simplices."""
    source = source if source is not None else nondeg_poset(f.source)
    target = target if target is not None else nondeg_poset(f.target)
    return OrderMap(source, target, {x: f.on(x)[0] for x in source})


# -- Kan subdivision --------------------------------------------------------


def _interior_chains(d: int) -> Iterator[tuple[tuple[int, ...], ...]]:
    """Chains of non-empty subsets of ``[d]`` ending at ``[d]``, shortest first."""
    full = tuple(range(d + 1))

    def below(top: tuple[int, ...]) -> Iterator[tuple[tuple[int, ...], ...]]:
        yield (top,)
        n = len(top)
        for mask in range(1, (1 << n) - 1):
            sub = tuple(top[i] for i in range(n) if mask >> i & 1)
            for rest in below(sub):
                yield rest + (top,)

    return iter(sorted(below(full), key=len))


def _push_chain(chain, s: tuple[int, ...]) -> tuple[tuple, tuple[int, ...]]:
    """Image of a chain of subsets under the operator ``s``, normalised."""
    return normalize(tuple(tuple(sorted({s[i] for i in S})) for S in chain))


def sd(X: SimplicialSet) -> SimplicialSet:
    """``Sd X`` computed from the colimit formula."""
    dims: dict[Label, int] = {}
    faces: dict[Label, tuple[Simplex, ...]] = {}
    for x in X.nondegenerate():
        d = X.dim(x)
        for chain in _interior_chains(d):
            k = len(chain) - 1
            label = (x, chain)
            dims[label] = k
            if k == 0:
                continue
            fs = [((x, chain[:i] + chain[i + 1:]), identity_op(k - 1)) for i in range(k)]
            rest = chain[:-1]
            top = rest[-1]
            y, s = X.act(X.simplex(x), top)
            pos = {v: j for j, v in enumerate(top)}
            local = tuple(tuple(pos[v] for v in S) for S in rest)
            new_chain, degen = _push_chain(local, s)
            fs.append(((y, new_chain), degen))
            faces[label] = tuple(fs)
    dims = dict(sorted(dims.items(), key=lambda kv: kv[1]))
    return SimplicialSet(dims, faces, name=f"Sd({X.name})")


def sd_map(f: SimplicialMap, source: SimplicialSet | None = None, target: SimplicialSet | None = None) -> SimplicialMap:
    """``Sd f``.  Pass precomputed subdivisions to avoid rebuilding them."""
    source = source if source is not None else sd(f.source)
    target = target if target is not None else sd(f.target)
    values = {}
    for label in source.nondegenerate():
        x, chain = label
        y, s = f.on(x)
        new_chain, degen = _push_chain(chain, s)
        values[label] = ((y, new_chain), degen)
    return SimplicialMap(source, target, values)


def b_map(X: SimplicialSet, SdX: SimplicialSet | None = None, BX: SimplicialSet | None = None) -> SimplicialMap:
    """The natural map ``b_X : Sd X -> B(X)``."""
    SdX = SdX if SdX is not None else sd(X)
    BX = BX if BX is not None else barratt_nerve(X)
    values = {}
    for label in SdX.nondegenerate():
        x, chain = label
        seq = tuple(X.act(X.simplex(x), S)[0] for S in chain)
        values[label] = normalize(seq)
    return SimplicialMap(SdX, BX, values)


def last_vertex(X: SimplicialSet, SdX: SimplicialSet | None = None) -> SimplicialMap:
    """The last vertex map ``d_X : Sd X -> X``."""
    SdX = SdX if SdX is not None else sd(X)
    values = {}
    for label in SdX.nondegenerate():
        x, chain = label
        values[label] = X.act(X.simplex(x), tuple(S[-1] for S in chain))
    return SimplicialMap(SdX, X, values)


# -- the comparison map kappa ---------------------------------------------------


class Kappa:
    """``kappa = (Sd pr1, Sd pr2) : Sd(X x Y) -> Sd X x Sd Y`` with its ingredients."""

    def __init__(self, X: SimplicialSet, Y: SimplicialSet):
        self.X, self.Y = X, Y
        self.XY: Product = product(X, Y)
        self.sd_XY = sd(self.XY.total)
        self.sd_X = sd(X)
        self.sd_Y = sd(Y)
        self.target: Product = product(self.sd_X, self.sd_Y)
        self.sd_pr1 = sd_map(self.XY.pr1, self.sd_XY, self.sd_X)
        self.sd_pr2 = sd_map(self.XY.pr2, self.sd_XY, self.sd_Y)
        self.map: SimplicialMap = self.target.pair(self.sd_pr1, self.sd_pr2)


def kappa(X: SimplicialSet, Y: SimplicialSet) -> SimplicialMap:
    return Kappa(X, Y).map


def nerve_kappa(C: Poset, pr1: OrderMap, pr2: OrderMap, NC: SimplicialSet | None = None) -> tuple[SimplicialMap, Product]:
    """``N(pr1#, pr2#)`` written as a map ``N(C) -> N(X#) x N(Y#)``.

    The codomain is the simplicial product of the two nerves, so the result
    is directly comparable with ``kappa`` once ``Sd`` is identified with ``B``.
    """
    NC = NC if NC is not None else nerve(C)
    P = product(nerve(pr1.target), nerve(pr2.target))
    f = nerve_map(pr1, NC, P.left)
    g = nerve_map(pr2, NC, P.right)
    return P.pair(f, g), P


# -- improvement ----------------------------------------------------------------


def improvement(X: SimplicialSet) -> SimplicialSet:
    """``I(X) = B(Sd X)``."""
    return barratt_nerve(sd(X))


def b_functor(f: SimplicialMap, source_poset: Poset | None = None, target_poset: Poset | None = None) -> SimplicialMap:
    """``B(f) = N(f#)``."""
    sharp = induced_sharp(f, source_poset, target_poset)
    return nerve_map(sharp)


def improvement_map(X: SimplicialSet, Y: SimplicialSet) -> tuple[SimplicialMap, Product]:
    """``I(X x Y) -> I(X) x I(Y)`` induced by the two projections."""
    P = product(X, Y)
    sd_XY, sd_X, sd_Y = sd(P.total), sd(X), sd(Y)
    p_XY, p_X, p_Y = nondeg_poset(sd_XY), nondeg_poset(sd_X), nondeg_poset(sd_Y)
    I_XY, I_X, I_Y = nerve(p_XY, "I(XxY)"), nerve(p_X, "I(X)"), nerve(p_Y, "I(Y)")
    s1 = induced_sharp(sd_map(P.pr1, sd_XY, sd_X), p_XY, p_X)
    s2 = induced_sharp(sd_map(P.pr2, sd_XY, sd_Y), p_XY, p_Y)
    target = product(I_X, I_Y)
    f = nerve_map(s1, I_XY, I_X)
    g = nerve_map(s2, I_XY, I_Y)
    return target.pair(f, g), target
