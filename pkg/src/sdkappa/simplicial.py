"""Finite simplicial sets stored through their non-degenerate simplices.

A simplex is a pair ``(label, degeneracy)`` where ``label`` names a
non-degenerate simplex of dimension ``d`` and ``degeneracy`` is a surjective
order-preserving tuple ``[k] -> [d]``; the simplex has dimension ``k``.  Only
non-degenerate simplices are materialised.  Every operator acts through the
epi-mono (Eilenberg-Zilber) factorisation, using the stored elementary faces
of the non-degenerate simplices.

Operators ``[k] -> [m]`` are plain tuples ``(a(0), ..., a(k))``.
"""

from __future__ import annotations

import json
from collections.abc import Callable, Hashable, Iterable, Iterator, Mapping, Sequence
from dataclasses import dataclass, field
from itertools import combinations

from .errors import NotCofibration, NotSimplicial, UnknownElement
from .poset import OrderMap, Poset, make_poset

Label = Hashable
Op = tuple[int, ...]
Simplex = tuple[Label, Op]


# -- operators --------------------------------------------------------------


def identity_op(k: int) -> Op:
    return tuple(range(k + 1))


def compose(a: Op, b: Op) -> Op:
    """``a o b``: first ``b``, then ``a``."""
    return tuple(a[x] for x in b)


def is_monotone(op: Sequence[int]) -> bool:
    return all(x <= y for x, y in zip(op, op[1:]))


def is_injective_op(op: Sequence[int]) -> bool:
    return all(x < y for x, y in zip(op, op[1:]))


def is_surjective_op(op: Sequence[int], m: int) -> bool:
    return bool(op) and op[0] == 0 and op[-1] == m and all(y - x <= 1 for x, y in zip(op, op[1:]))


def epi_mono(op: Op) -> tuple[Op, Op]:
    """Factor a monotone ``op`` as ``mono o epi``; returns ``(epi, mono)``."""
    mono: list[int] = []
    epi: list[int] = []
    for x in op:
        if not mono or mono[-1] != x:
            mono.append(x)
        epi.append(len(mono) - 1)
    return tuple(epi), tuple(mono)


def coface(d: int, i: int) -> Op:
    """The elementary face operator ``[d-1] -> [d]`` skipping ``i``."""
    return tuple(j for j in range(d + 1) if j != i)


def codegeneracy(d: int, i: int) -> Op:
    """The elementary degeneracy operator ``[d+1] -> [d]`` repeating ``i``."""
    return tuple(j if j <= i else j - 1 for j in range(d + 2))


def normalize(seq: Sequence[Hashable]) -> tuple[tuple, Op]:
    """Split a weakly increasing sequence into distinct values and a degeneracy."""
    values: list = []
    degen: list[int] = []
    for x in seq:
        if not values or values[-1] != x:
            values.append(x)
        degen.append(len(values) - 1)
    return tuple(values), tuple(degen)


@dataclass(frozen=True)
class Operator:
    """A monotone function ``[k] -> [m]`` given by its values."""

    values: Op
    target_dim: int

    def __post_init__(self):
        if not self.values or not is_monotone(self.values):
            raise ValueError(f"{self.values} is not a monotone non-empty sequence")
        if self.values[0] < 0 or self.values[-1] > self.target_dim:
            raise ValueError(f"{self.values} does not land in [{self.target_dim}]")

    @property
    def source_dim(self) -> int:
        return len(self.values) - 1

    def is_face(self) -> bool:
        return is_injective_op(self.values)

    def is_degeneracy(self) -> bool:
        return is_surjective_op(self.values, self.target_dim)

    def __matmul__(self, other: Operator) -> Operator:
        if other.target_dim != self.source_dim:
            raise ValueError("operators do not compose")
        return Operator(compose(self.values, other.values), self.target_dim)

    def factor(self) -> tuple[Operator, Operator]:
        """``(degeneracy, face)`` with ``self == face @ degeneracy``."""
        epi, mono = epi_mono(self.values)
        return Operator(epi, len(mono) - 1), Operator(mono, self.target_dim)

    def image(self) -> frozenset[int]:
        return frozenset(self.values)


# -- simplicial sets --------------------------------------------------------


class SimplicialSet:
    """A finite simplicial set.

    Args:
        dims: dimension of each non-degenerate simplex, keyed by label, in the
            preferred enumeration order.
        faces: for each label of dimension ``d >= 1``, the ``d + 1`` faces
            ``d_0 x, ..., d_d x`` as simplices ``(label, degeneracy)``.
        name: optional display name.
    """

    def __init__(self, dims: Mapping[Label, int], faces: Mapping[Label, Sequence[Simplex]], name: str = ""):
        self._dims = dict(dims)
        self._faces = {x: tuple(faces.get(x, ())) for x in self._dims}
        self.name = name
        self._by_dim: dict[int, list[Label]] = {}
        for x, d in self._dims.items():
            self._by_dim.setdefault(d, []).append(x)
            if len(self._faces[x]) != (d + 1 if d > 0 else 0):
                raise ValueError(f"{x!r} has {len(self._faces[x])} faces, expected {d + 1 if d else 0}")
        self._face_cache: dict[tuple[Label, Op], Simplex] = {}

    def __repr__(self) -> str:
        counts = ", ".join(str(len(self._by_dim.get(k, []))) for k in range(self.top_dim + 1))
        return f"SimplicialSet({self.name or 'anonymous'}: [{counts}])"

    def __len__(self) -> int:
        return len(self._dims)

    def __contains__(self, x: object) -> bool:
        try:
            return x in self._dims
        except TypeError:
            return False

    @property
    def top_dim(self) -> int:
        return max(self._by_dim, default=-1)

    def dim(self, x: Label) -> int:
        try:
            return self._dims[x]
        except (KeyError, TypeError):
            raise UnknownElement(x) from None

    def nondegenerate(self, k: int | None = None) -> list[Label]:
        if k is None:
            return list(self._dims)
        return list(self._by_dim.get(k, []))

    def counts(self) -> list[int]:
        return [len(self._by_dim.get(k, [])) for k in range(self.top_dim + 1)]

    def elementary_faces(self, x: Label) -> tuple[Simplex, ...]:
        return self._faces[x]

    def simplex(self, x: Label) -> Simplex:
        """``x`` as a simplex with identity degeneracy."""
        return (x, identity_op(self.dim(x)))

    # -- operator action --------------------------------------------------

    def face(self, x: Label, delta: Op) -> Simplex:
        """Act on non-degenerate ``x`` by the injective operator ``delta``."""
        d = self._dims[x]
        if len(delta) == d + 1:
            return (x, delta)
        key = (x, delta)
        hit = self._face_cache.get(key)
        if hit is not None:
            return hit
        present = set(delta)
        i = next(j for j in range(d + 1) if j not in present)
        rest = tuple(v if v < i else v - 1 for v in delta)
        result = self.act(self._faces[x][i], rest)
        self._face_cache[key] = result
        return result

    def act(self, simplex: Simplex, op: Sequence[int]) -> Simplex:
        """The simplex ``simplex . op`` for a monotone ``op : [j] -> [k]``."""
        y, s = simplex
        beta = tuple(s[v] for v in op)
        epi, mono = epi_mono(beta)
        z, t = self.face(y, mono)
        return (z, tuple(t[e] for e in epi))

    def vertices(self, x: Label) -> tuple[Label, ...]:
        return tuple(self.face(x, (i,))[0] for i in range(self.dim(x) + 1))

    def simplex_vertices(self, simplex: Simplex) -> tuple[Label, ...]:
        verts = self.vertices(simplex[0])
        return tuple(verts[i] for i in simplex[1])

    def is_nonsingular(self) -> bool:
        return all(len(set(self.vertices(x))) == self.dim(x) + 1 for x in self._dims)

    def simplices(self, k: int) -> Iterator[Simplex]:
        """All ``k``-simplices, degenerate ones included."""
        for d in range(min(k, self.top_dim) + 1):
            surjections = list(_surjections(k, d))
            for x in self._by_dim.get(d, []):
                for s in surjections:
                    yield (x, s)

    def face_closure(self, x: Label) -> set[Label]:
        """Labels of the non-degenerate simplices in the subcomplex generated by ``x``."""
        seen = {x}
        stack = [x]
        while stack:
            y = stack.pop()
            for z, _ in self._faces[y]:
                if z not in seen:
                    seen.add(z)
                    stack.append(z)
        return seen

    def subcomplex(self, labels: Iterable[Label], name: str = "") -> SimplicialSet:
        keep = set(labels)
        for x in keep:
            for z, _ in self._faces[x]:
                if z not in keep:
                    raise ValueError(f"face {z!r} of {x!r} missing from subcomplex")
        return SimplicialSet(
            {x: d for x, d in self._dims.items() if x in keep},
            {x: f for x, f in self._faces.items() if x in keep},
            name=name,
        )

    def check_identities(self) -> None:
        """Verify ``d_i d_j = d_{j-1} d_i`` for ``i < j`` on every non-degenerate simplex."""
        for x, d in self._dims.items():
            for fx, s in self._faces[x]:
                if fx not in self._dims:
                    raise NotSimplicial(f"face {fx!r} of {x!r} is not a simplex")
                if not is_surjective_op(s, self._dims[fx]) or len(s) != d:
                    raise NotSimplicial(f"bad degeneracy on a face of {x!r}")
            if d < 2:
                continue
            for j in range(d + 1):
                for i in range(j):
                    lhs = self.act(self._faces[x][j], coface(d - 1, i))
                    rhs = self.act(self._faces[x][i], coface(d - 1, j - 1))
                    if lhs != rhs:
                        raise NotSimplicial(f"simplicial identity fails on {x!r} (i={i}, j={j})")

    def check_operator_functoriality(self, max_dim: int | None = None) -> None:
        """Exhaustively check ``(x.a).b == x.(a o b)`` for composable operator pairs."""
        top = self.top_dim if max_dim is None else max_dim
        for k in range(top + 1):
            for x in self.simplices(k):
                for a in _monotone_maps_into(k, top):
                    xa = self.act(x, a)
                    for b in _monotone_maps_into(len(a) - 1, top):
                        if self.act(xa, b) != self.act(x, compose(a, b)):
                            raise NotSimplicial(f"action not functorial at {x!r}")

    def relabel(self, fn: Callable[[Label], Label], name: str = "") -> SimplicialSet:
        return SimplicialSet(
            {fn(x): d for x, d in self._dims.items()},
            {fn(x): tuple((fn(z), s) for z, s in f) for x, f in self._faces.items()},
            name=name or self.name,
        )


def _surjections(k: int, d: int) -> Iterator[Op]:
    """Surjective monotone maps ``[k] -> [d]``."""
    for jumps in combinations(range(1, k + 1), d):
        op, level, js = [], 0, set(jumps)
        for i in range(k + 1):
            if i in js:
                level += 1
            op.append(level)
        yield tuple(op)


def _monotone_maps_into(k: int, top: int) -> Iterator[Op]:
    """Monotone maps ``[j] -> [k]`` for ``j <= top``, including non-surjective ones."""
    for j in range(top + 1):
        for combo in _multisets(k, j + 1):
            yield combo


def _multisets(k: int, size: int) -> Iterator[Op]:
    if size == 0:
        yield ()
        return

    def rec(start: int, left: int, acc: list[int]):
        if left == 0:
            yield tuple(acc)
            return
        for v in range(start, k + 1):
            acc.append(v)
            yield from rec(v, left - 1, acc)
            acc.pop()

    yield from rec(0, size, [])


# -- maps ---------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class SimplicialMap:
    """A simplicial map, given by the image of every non-degenerate source simplex."""

    source: SimplicialSet
    target: SimplicialSet
    values: Mapping[Label, Simplex] = field(repr=False)

    def __call__(self, simplex: Simplex) -> Simplex:
        y, s = simplex
        return self.target.act(self.values[y], s)

    def on(self, x: Label) -> Simplex:
        return self.values[x]

    def check(self) -> None:
        """Raise NotSimplicial unless the map commutes with all elementary faces."""
        for x in self.source.nondegenerate():
            if x not in self.values:
                raise NotSimplicial(f"no image for {x!r}")
            z, t = self.values[x]
            d = self.source.dim(x)
            if z not in self.target or len(t) != d + 1 or not is_surjective_op(t, self.target.dim(z)):
                raise NotSimplicial(f"image of {x!r} is not a {d}-simplex of the target")
            for i, fx in enumerate(self.source.elementary_faces(x)):
                if self(fx) != self.target.act((z, t), coface(d, i)):
                    raise NotSimplicial(f"face {i} of {x!r} does not commute")

    def then(self, other: SimplicialMap) -> SimplicialMap:
        """``other o self``."""
        return SimplicialMap(self.source, other.target, {x: other(v) for x, v in self.values.items()})

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SimplicialMap):
            return NotImplemented
        return set(self.values) == set(other.values) and all(
            self.values[x] == other.values[x] for x in self.values
        )

    __hash__ = None

    def is_isomorphism(self) -> bool:
        seen = set()
        for x, (z, t) in self.values.items():
            if t != identity_op(self.source.dim(x)) or z in seen:
                return False
            seen.add(z)
        return len(seen) == len(self.target)

    def is_injective(self) -> bool:
        images = [self.values[x] for x in self.source.nondegenerate()]
        return all(t == identity_op(len(t) - 1) for _, t in images) and len({z for z, _ in images}) == len(images)

    def inverse(self) -> SimplicialMap:
        if not self.is_isomorphism():
            raise ValueError("map is not an isomorphism")
        return SimplicialMap(self.target, self.source, {z: self.source.simplex(x) for x, (z, _) in self.values.items()})


def identity_map(X: SimplicialSet) -> SimplicialMap:
    return SimplicialMap(X, X, {x: X.simplex(x) for x in X.nondegenerate()})


def vertex_map(source: SimplicialSet, target: SimplicialSet, fn: Callable[[Label], Label]) -> SimplicialMap:
    """Map into a nerve determined by a vertex function on a nerve-like source.

    Both sets must be nerves of posets (labels are chains).
    """
    values = {}
    for chain in source.nondegenerate():
        verts, degen = normalize(tuple(fn(v) for v in chain))
        values[chain] = (verts, degen)
    return SimplicialMap(source, target, values)


# -- nerves -----------------------------------------------------------------


def nerve(V: Poset, name: str = "") -> SimplicialSet:
    """The nerve of ``V``; non-degenerate ``k``-simplices are chains of ``k + 1`` elements."""
    dims = {}
    faces = {}
    for chain in V.chains():
        k = len(chain) - 1
        dims[chain] = k
        if k:
            faces[chain] = tuple((chain[:i] + chain[i + 1:], identity_op(k - 1)) for i in range(k + 1))
    dims = dict(sorted(dims.items(), key=lambda kv: kv[1]))
    return SimplicialSet(dims, faces, name=name or "N(V)")


def nerve_map(phi: OrderMap, source: SimplicialSet | None = None, target: SimplicialSet | None = None) -> SimplicialMap:
    source = source if source is not None else nerve(phi.source)
    target = target if target is not None else nerve(phi.target)
    return vertex_map(source, target, phi)


def delta(m: int) -> SimplicialSet:
    """The standard simplex ``Delta[m] = N([m])``."""
    from .poset import total_order

    return nerve(total_order(m), name=f"Delta[{m}]")


def boundary(m: int) -> SimplicialSet:
    """``dDelta[m]``: ``Delta[m]`` without its top simplex."""
    if m < 1:
        raise ValueError("boundary needs m >= 1")
    D = delta(m)
    top = tuple(range(m + 1))
    return D.subcomplex([x for x in D.nondegenerate() if x != top], name=f"dDelta[{m}]")


def disjoint_union(X: SimplicialSet, Y: SimplicialSet) -> SimplicialSet:
    dims = {(0, x): d for x, d in ((x, X.dim(x)) for x in X.nondegenerate())}
    dims.update({(1, y): Y.dim(y) for y in Y.nondegenerate()})
    faces = {(0, x): tuple(((0, z), s) for z, s in X.elementary_faces(x)) for x in X.nondegenerate()}
    faces.update({(1, y): tuple(((1, z), s) for z, s in Y.elementary_faces(y)) for y in Y.nondegenerate()})
    return SimplicialSet(dims, faces, name=f"{X.name} + {Y.name}")


# -- products ---------------------------------------------------------------


def _lattice_paths(p: int, q: int) -> Iterator[tuple[tuple[int, int], ...]]:
    """Chains from ``(0, 0)`` to ``(p, q)`` with steps in {(1,0), (0,1), (1,1)}."""

    def rec(a: int, b: int, acc: list[tuple[int, int]]):
        if (a, b) == (p, q):
            yield tuple(acc)
            return
        for da, db in ((0, 1), (1, 0), (1, 1)):
            na, nb = a + da, b + db
            if na <= p and nb <= q:
                acc.append((na, nb))
                yield from rec(na, nb, acc)
                acc.pop()

    yield from rec(0, 0, [(0, 0)])


def _pair_up(x: Label, s: Op, y: Label, t: Op) -> Simplex:
    path, degen = normalize(tuple(zip(s, t)))
    return ((x, y, path), degen)


@dataclass(frozen=True, eq=False)
class Product:
    """``X x Y`` with its projections."""

    total: SimplicialSet
    pr1: SimplicialMap
    pr2: SimplicialMap
    left: SimplicialSet
    right: SimplicialSet

    def pair(self, f: SimplicialMap, g: SimplicialMap) -> SimplicialMap:
        """The map ``(f, g) : Z -> X x Y``."""
        values = {}
        for z in f.source.nondegenerate():
            (x, s), (y, t) = f.on(z), g.on(z)
            values[z] = _pair_up(x, s, y, t)
        return SimplicialMap(f.source, self.total, values)


def product(X: SimplicialSet, Y: SimplicialSet) -> Product:
    dims: dict[Label, int] = {}
    faces: dict[Label, tuple[Simplex, ...]] = {}
    for x in X.nondegenerate():
        p = X.dim(x)
        for y in Y.nondegenerate():
            q = Y.dim(y)
            for path in _lattice_paths(p, q):
                label = (x, y, path)
                k = len(path) - 1
                dims[label] = k
                if k == 0:
                    continue
                fs = []
                for i in range(k + 1):
                    rest = path[:i] + path[i + 1:]
                    xs = X.act((x, identity_op(p)), tuple(a for a, _ in rest))
                    ys = Y.act((y, identity_op(q)), tuple(b for _, b in rest))
                    fs.append(_pair_up(xs[0], xs[1], ys[0], ys[1]))
                faces[label] = tuple(fs)
    dims = dict(sorted(dims.items(), key=lambda kv: kv[1]))
    total = SimplicialSet(dims, faces, name=f"{X.name} x {Y.name}")
    pr1 = SimplicialMap(total, X, {lab: (lab[0], tuple(a for a, _ in lab[2])) for lab in dims})
    pr2 = SimplicialMap(total, Y, {lab: (lab[1], tuple(b for _, b in lab[2])) for lab in dims})
    return Product(total, pr1, pr2, X, Y)


def product_map(P: Product, Q: Product, f: SimplicialMap, g: SimplicialMap) -> SimplicialMap:
    """``f x g : P.total -> Q.total``."""
    return Q.pair(P.pr1.then(f), P.pr2.then(g))


def nerve_product_iso(P: Product, V: Poset, W: Poset, NVW: SimplicialSet) -> SimplicialMap:
    """``N(V) x N(W) -> N(V x W)`` for nerves of posets."""
    values = {}
    for label in P.total.nondegenerate():
        x, y, path = label
        values[label] = (tuple((x[a], y[b]) for a, b in path), identity_op(len(path) - 1))
    return SimplicialMap(P.total, NVW, values)


# -- pushouts -----------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class Pushout:
    """``B u_A C`` for a cofibration ``i : A -> B`` and any ``g : A -> C``.

    Labels are ``("C", c)`` and ``("B", b)`` for ``b`` outside the image of ``i``.
    """

    total: SimplicialSet
    j_B: SimplicialMap
    j_C: SimplicialMap
    i: SimplicialMap
    g: SimplicialMap

    def induced(self, h_B: SimplicialMap, h_C: SimplicialMap) -> SimplicialMap:
        """The unique map out of the pushout restricting to ``h_B`` and ``h_C``."""
        values = {}
        for label in self.total.nondegenerate():
            tag, z = label
            values[label] = h_C.on(z) if tag == "C" else h_B.on(z)
        return SimplicialMap(self.total, h_B.target, values)


def pushout(i: SimplicialMap, g: SimplicialMap, name: str = "") -> Pushout:
    if not i.is_injective():
        raise NotCofibration("the map along which we glue must be levelwise injective")
    A, B, C = i.source, i.target, g.target
    preimage = {z: a for a, (z, _) in i.values.items()}

    def image_in_pushout(simplex: Simplex) -> Simplex:
        b, s = simplex
        if b in preimage:
            c, t = C.act(g.on(preimage[b]), s)
            return (("C", c), t)
        return (("B", b), s)

    dims: dict[Label, int] = {("C", c): C.dim(c) for c in C.nondegenerate()}
    faces: dict[Label, tuple[Simplex, ...]] = {("C", c): tuple((("C", z), s) for z, s in C.elementary_faces(c)) for c in C.nondegenerate()}
    for b in B.nondegenerate():
        if b in preimage:
            continue
        dims[("B", b)] = B.dim(b)
        faces[("B", b)] = tuple(image_in_pushout(f) for f in B.elementary_faces(b))
    dims = dict(sorted(dims.items(), key=lambda kv: kv[1]))
    total = SimplicialSet(dims, faces, name=name or f"{B.name} u {C.name}")
    j_B = SimplicialMap(B, total, {b: image_in_pushout(B.simplex(b)) for b in B.nondegenerate()})
    j_C = SimplicialMap(C, total, {c: (("C", c), identity_op(C.dim(c))) for c in C.nondegenerate()})
    return Pushout(total, j_B, j_C, i, g)


def inclusion(sub: SimplicialSet, X: SimplicialSet) -> SimplicialMap:
    return SimplicialMap(sub, X, {x: X.simplex(x) for x in sub.nondegenerate()})


def find_isomorphism(X: SimplicialSet, Y: SimplicialSet) -> SimplicialMap | None:
    """Backtracking search for an isomorphism ``X -> Y``; small inputs only."""
    if X.counts() != Y.counts():
        return None
    order = sorted(X.nondegenerate(), key=X.dim)
    assign: dict[Label, Label] = {}
    used: set[Label] = set()

    def ok(x: Label, y: Label) -> bool:
        for (fx, s), (fy, t) in zip(X.elementary_faces(x), Y.elementary_faces(y)):
            if s != t or assign.get(fx) != fy:
                return False
        return True

    def search(k: int) -> bool:
        if k == len(order):
            return True
        x = order[k]
        for y in Y.nondegenerate(X.dim(x)):
            if y in used or not ok(x, y):
                continue
            assign[x] = y
            used.add(y)
            if search(k + 1):
                return True
            del assign[x]
            used.discard(y)
        return False

    if not search(0):
        return None
    return SimplicialMap(X, Y, {x: Y.simplex(y) for x, y in assign.items()})


# -- restriction over a subcomplex ------------------------------------------


def restrict_over(f: SimplicialMap, Z: Iterable[Label]) -> SimplicialMap:
    """``f^{-1}(Z) -> Z`` for a subcomplex ``Z`` given by its non-degenerate labels."""
    keep = set(Z)
    sub_target = f.target.subcomplex(keep)
    pre = [x for x in f.source.nondegenerate() if f.on(x)[0] in keep]
    sub_source = f.source.subcomplex(pre)
    return SimplicialMap(sub_source, sub_target, {x: f.on(x) for x in pre})


# -- JSON interchange -----------------------------------------------------------


def _to_jsonable(obj):
    if isinstance(obj, tuple):
        return [_to_jsonable(v) for v in obj]
    return obj


def _from_jsonable(obj):
    if isinstance(obj, list):
        return tuple(_from_jsonable(v) for v in obj)
    return obj


def sset_to_json(X: SimplicialSet) -> dict:
    simplices = {str(k): [_to_jsonable(x) for x in X.nondegenerate(k)] for k in range(X.top_dim + 1)}
    faces = [
        [_to_jsonable(x), [[_to_jsonable(z), list(s)] for z, s in X.elementary_faces(x)]]
        for x in X.nondegenerate()
        if X.dim(x) > 0
    ]
    return {"schema": "sdkappa.sset/1", "dims": X.top_dim, "simplices": simplices, "faces": faces, "degens_implicit": True}


def sset_from_json(data: Mapping) -> SimplicialSet:
    dims = {}
    for k, labels in sorted(data["simplices"].items(), key=lambda kv: int(kv[0])):
        for x in labels:
            dims[_from_jsonable(x)] = int(k)
    faces = {}
    for x, fs in data["faces"]:
        faces[_from_jsonable(x)] = tuple((_from_jsonable(z), tuple(s)) for z, s in fs)
    X = SimplicialSet(dims, faces)
    X.check_identities()
    return X


def smap_to_json(f: SimplicialMap) -> dict:
    return {
        "schema": "sdkappa.smap/1",
        "source": sset_to_json(f.source),
        "target": sset_to_json(f.target),
        "values": [[_to_jsonable(x), [_to_jsonable(z), list(t)]] for x, (z, t) in f.values.items()],
    }


def smap_from_json(data: Mapping) -> SimplicialMap:
    X = sset_from_json(data["source"])
    Y = sset_from_json(data["target"])
    values = {_from_jsonable(x): (_from_jsonable(z), tuple(t)) for x, (z, t) in data["values"]}
    f = SimplicialMap(X, Y, values)
    f.check()
    return f


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True)
