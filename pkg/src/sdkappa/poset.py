"""Finite posets, order-preserving maps, ideals, mapping-cylinder posets and cores.

Elements are arbitrary hashable labels.  Internally every element has an
index, and the order is stored as two lists of Python-int bitsets: ``up[i]``
has bit ``j`` set iff ``element i <= element j`` and ``down[i]`` is the
transpose.  Everything is immutable after construction.
"""

from __future__ import annotations

from collections.abc import Callable, Hashable, Iterable, Iterator, Mapping, Sequence
from dataclasses import dataclass

from .errors import (
    CompositionMismatch,
    CycleError,
    DuplicateLabelError,
    NotOrderPreserving,
    UnknownElement,
)

Label = Hashable


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class Poset:
    """A finite partially ordered set with O(1) comparability."""

    __slots__ = ("elements", "_index", "_up", "_down", "_covers")

    def __init__(self, elements: Sequence[Label], up: Sequence[int]):
        # Trusted constructor: ``up`` must already be a reflexive, transitive,
        # antisymmetric relation.  Use make_poset / Poset.from_leq otherwise.
        self.elements = tuple(elements)
        self._index = {x: i for i, x in enumerate(self.elements)}
        if len(self._index) != len(self.elements):
            raise DuplicateLabelError("poset labels must be pairwise distinct")
        self._up = tuple(up)
        down = [0] * len(self.elements)
        for i, mask in enumerate(self._up):
            for j in _bits(mask):
                down[j] |= 1 << i
        self._down = tuple(down)
        self._covers = None

    # -- construction -----------------------------------------------------

    @classmethod
    def from_leq(cls, elements: Iterable[Label], leq: Callable[[Label, Label], bool]) -> Poset:
        """Build a poset from a comparison predicate that is already a partial order."""
        elements = tuple(elements)
        up = []
        for a in elements:
            mask = 0
            for j, b in enumerate(elements):
                if a == b or leq(a, b):
                    mask |= 1 << j
            up.append(mask)
        poset = cls(elements, up)
        for i in range(len(elements)):
            for j in _bits(poset._up[i]):
                if i != j and poset._up[j] >> i & 1:
                    raise CycleError(f"{elements[i]!r} and {elements[j]!r} are mutually <=")
        return poset

    # -- basic queries ----------------------------------------------------

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[Label]:
        return iter(self.elements)

    def __contains__(self, x: object) -> bool:
        try:
            return x in self._index
        except TypeError:
            return False

    def __repr__(self) -> str:
        return f"Poset({len(self)} elements, {len(self.covers())} covers)"

    def __eq__(self, other: object) -> bool:
        # Equal as sets with the same relation; element order is irrelevant.
        if not isinstance(other, Poset):
            return NotImplemented
        if set(self.elements) != set(other.elements):
            return False
        return self.relation() == other.relation()

    def __hash__(self) -> int:
        return hash((frozenset(self.elements), len(self.relation())))

    def index(self, x: Label) -> int:
        try:
            return self._index[x]
        except (KeyError, TypeError):
            raise UnknownElement(x) from None

    def leq(self, a: Label, b: Label) -> bool:
        return bool(self._up[self.index(a)] >> self.index(b) & 1)

    def lt(self, a: Label, b: Label) -> bool:
        return a != b and self.leq(a, b)

    def up_mask(self, x: Label) -> int:
        return self._up[self.index(x)]

    def down_mask(self, x: Label) -> int:
        return self._down[self.index(x)]

    def labels_of(self, mask: int) -> list[Label]:
        return [self.elements[i] for i in _bits(mask)]

    def relation(self) -> frozenset[tuple[Label, Label]]:
        """All pairs ``(a, b)`` with ``a <= b``."""
        return frozenset(
            (self.elements[i], self.elements[j])
            for i, mask in enumerate(self._up)
            for j in _bits(mask)
        )

    def covers(self) -> list[tuple[int, int]]:
        """Covering pairs ``(i, j)`` of element indices, sorted."""
        if self._covers is None:
            out = []
            for i, mask in enumerate(self._up):
                strict = mask & ~(1 << i)
                for j in _bits(strict):
                    between = strict & self._down[j] & ~(1 << j)
                    if not between:
                        out.append((i, j))
            self._covers = tuple(out)
        return list(self._covers)

    def cover_pairs(self) -> list[tuple[Label, Label]]:
        return [(self.elements[i], self.elements[j]) for i, j in self.covers()]

    def minimum(self) -> Label | None:
        full = (1 << len(self)) - 1
        for i, mask in enumerate(self._up):
            if mask == full:
                return self.elements[i]
        return None

    def maximum(self) -> Label | None:
        full = (1 << len(self)) - 1
        for i, mask in enumerate(self._down):
            if mask == full:
                return self.elements[i]
        return None

    def minimal_elements(self) -> list[Label]:
        return [x for i, x in enumerate(self.elements) if self._down[i] == 1 << i]

    def maximal_elements(self) -> list[Label]:
        return [x for i, x in enumerate(self.elements) if self._up[i] == 1 << i]

    def height(self) -> int:
        """Number of elements in a longest chain (0 for the empty poset)."""
        rank = self.ranks()
        return 1 + max(rank.values()) if rank else 0

    def ranks(self) -> dict[Label, int]:
        """Length of the longest chain ending at each element, starting from 0."""
        rank: dict[int, int] = {}
        for i in self.linear_extension_indices():
            below = self._down[i] & ~(1 << i)
            rank[i] = 1 + max((rank[j] for j in _bits(below)), default=-1)
        return {self.elements[i]: r for i, r in rank.items()}

    def linear_extension_indices(self) -> list[int]:
        return sorted(range(len(self)), key=lambda i: (bin(self._down[i]).count("1"), i))

    # -- derived posets ---------------------------------------------------

    def subposet(self, subset: Iterable[Label]) -> Poset:
        """Induced order on ``subset``, keeping this poset's element order."""
        keep = set(subset)
        for x in keep:
            self.index(x)
        idx = [i for i, x in enumerate(self.elements) if x in keep]
        new_pos = {old: new for new, old in enumerate(idx)}
        up = []
        for old in idx:
            mask = 0
            for j in _bits(self._up[old]):
                if j in new_pos:
                    mask |= 1 << new_pos[j]
            up.append(mask)
        return Poset([self.elements[i] for i in idx], up)

    def relabel(self, fn: Callable[[Label], Label]) -> Poset:
        return Poset([fn(x) for x in self.elements], self._up)

    def dual(self) -> Poset:
        return Poset(self.elements, self._down)

    def chains(self, max_size: int | None = None) -> Iterator[tuple[Label, ...]]:
        """Non-empty strictly increasing chains, depth-first in index order."""
        n = len(self)
        strict_up = [self._up[i] & ~(1 << i) for i in range(n)]

        def extend(chain: list[int], allowed: int) -> Iterator[tuple[Label, ...]]:
            yield tuple(self.elements[i] for i in chain)
            if max_size is not None and len(chain) >= max_size:
                return
            for j in _bits(allowed):
                chain.append(j)
                yield from extend(chain, allowed & strict_up[j])
                chain.pop()

        for i in range(n):
            yield from extend([i], strict_up[i])

    def is_chain(self, seq: Sequence[Label]) -> bool:
        return all(self.lt(a, b) for a, b in zip(seq, seq[1:]))


# -- module-level constructors ----------------------------------------------


def make_poset(labels: Iterable[Label], relation_pairs: Iterable[tuple[Label, Label]]) -> Poset:
    """Reflexive-transitive closure of ``relation_pairs`` on ``labels``.

    Raises:
        CycleError: if the closure is not antisymmetric.
        DuplicateLabelError: if a label repeats.
        UnknownElement: if a pair mentions a label not in ``labels``.
    """
    labels = tuple(labels)
    index: dict[Label, int] = {}
    for i, x in enumerate(labels):
        if x in index:
            raise DuplicateLabelError(x)
        index[x] = i
    n = len(labels)
    succ = [0] * n
    for a, b in relation_pairs:
        if a not in index:
            raise UnknownElement(a)
        if b not in index:
            raise UnknownElement(b)
        if a != b:
            succ[index[a]] |= 1 << index[b]
    # Closure by memoised DFS; a back edge means a cycle.
    up: list[int | None] = [None] * n
    state = [0] * n  # 0 new, 1 on stack, 2 done
    for start in range(n):
        if state[start]:
            continue
        stack = [(start, iter(list(_bits(succ[start]))))]
        state[start] = 1
        while stack:
            node, it = stack[-1]
            advanced = False
            for nxt in it:
                if state[nxt] == 1:
                    raise CycleError(f"cycle through {labels[nxt]!r}")
                if state[nxt] == 0:
                    state[nxt] = 1
                    stack.append((nxt, iter(list(_bits(succ[nxt])))))
                    advanced = True
                    break
            if advanced:
                continue
            mask = 1 << node
            for j in _bits(succ[node]):
                mask |= up[j]
            up[node] = mask
            state[node] = 2
            stack.pop()
    return Poset(labels, up)


def total_order(m: int) -> Poset:
    """The chain ``[m] = {0 < 1 < ... < m}``."""
    return Poset(range(m + 1), [((1 << (m + 1)) - 1) & ~((1 << i) - 1) for i in range(m + 1)])


def antichain(labels: Iterable[Label]) -> Poset:
    labels = tuple(labels)
    return Poset(labels, [1 << i for i in range(len(labels))])


def product_poset(p: Poset, q: Poset) -> Poset:
    """Product order on ``p x q``, elements ``(a, b)`` in lexicographic index order."""
    elements = [(a, b) for a in p.elements for b in q.elements]
    nq = len(q)
    up = []
    for i in range(len(p)):
        for k in range(nq):
            mask = 0
            for i2 in _bits(p._up[i]):
                base = i2 * nq
                for k2 in _bits(q._up[k]):
                    mask |= 1 << (base + k2)
            up.append(mask)
    return Poset(elements, up)


def grid(m: int, n: int) -> Poset:
    """``[m] x [n]`` with the product order."""
    return product_poset(total_order(m), total_order(n))


def down_set(poset: Poset, v: Label) -> Poset:
    """The left ideal ``V/v`` of all elements below ``v``."""
    return poset.subposet(poset.labels_of(poset.down_mask(v)))


def up_set(poset: Poset, v: Label) -> Poset:
    return poset.subposet(poset.labels_of(poset.up_mask(v)))


def is_left_ideal(poset: Poset, subset: Iterable[Label]) -> bool:
    mask = 0
    for x in subset:
        mask |= 1 << poset.index(x)
    return all(poset._down[i] & ~mask == 0 for i in _bits(mask))


def is_right_ideal(poset: Poset, subset: Iterable[Label]) -> bool:
    mask = 0
    for x in subset:
        mask |= 1 << poset.index(x)
    return all(poset._up[i] & ~mask == 0 for i in _bits(mask))


def find_isomorphism(p: Poset, q: Poset) -> dict[Label, Label] | None:
    """Backtracking search for an order isomorphism ``p -> q``.  Small posets only."""
    if len(p) != len(q) or len(p.covers()) != len(q.covers()):
        return None

    def signature(poset: Poset, i: int) -> tuple[int, int]:
        return (bin(poset._up[i]).count("1"), bin(poset._down[i]).count("1"))

    sig_q: dict[tuple[int, int], list[int]] = {}
    for j in range(len(q)):
        sig_q.setdefault(signature(q, j), []).append(j)
    order = sorted(range(len(p)), key=lambda i: (len(sig_q.get(signature(p, i), ())), i))
    assign: dict[int, int] = {}
    used: set[int] = set()

    def consistent(i: int, j: int) -> bool:
        for i2, j2 in assign.items():
            if bool(p._up[i] >> i2 & 1) != bool(q._up[j] >> j2 & 1):
                return False
            if bool(p._up[i2] >> i & 1) != bool(q._up[j2] >> j & 1):
                return False
        return True

    def search(k: int) -> bool:
        if k == len(order):
            return True
        i = order[k]
        for j in sig_q.get(signature(p, i), ()):
            if j in used or not consistent(i, j):
                continue
            assign[i] = j
            used.add(j)
            if search(k + 1):
                return True
            del assign[i]
            used.discard(j)
        return False

    if not search(0):
        return None
    return {p.elements[i]: q.elements[j] for i, j in assign.items()}


# -- order-preserving maps --------------------------------------------------


@dataclass(frozen=True)
class OrderMap:
    """An order-preserving function between finite posets."""

    source: Poset
    target: Poset
    assignment: Mapping[Label, Label]

    def __post_init__(self):
        for x in self.source:
            if x not in self.assignment:
                raise UnknownElement(f"no value for {x!r}")
            if self.assignment[x] not in self.target:
                raise UnknownElement(f"value {self.assignment[x]!r} not in target")
        for i, j in self.source.covers():
            a, b = self.source.elements[i], self.source.elements[j]
            if not self.target.leq(self.assignment[a], self.assignment[b]):
                raise NotOrderPreserving(f"{a!r} <= {b!r} but images are not ordered")

    @classmethod
    def from_function(cls, source: Poset, target: Poset, fn: Callable[[Label], Label]) -> OrderMap:
        return cls(source, target, {x: fn(x) for x in source})

    @classmethod
    def identity(cls, poset: Poset) -> OrderMap:
        return cls(poset, poset, {x: x for x in poset})

    @classmethod
    def constant(cls, source: Poset, target: Poset, value: Label) -> OrderMap:
        return cls(source, target, {x: value for x in source})

    def __call__(self, x: Label) -> Label:
        try:
            return self.assignment[x]
        except KeyError:
            raise UnknownElement(x) from None

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, OrderMap):
            return NotImplemented
        return (
            self.source == other.source
            and self.target == other.target
            and all(self(x) == other(x) for x in self.source)
        )

    def __hash__(self) -> int:
        return hash((len(self.source), len(self.target)))

    def then(self, other: OrderMap) -> OrderMap:
        """The composite ``other o self``."""
        if set(self.target.elements) != set(other.source.elements):
            raise CompositionMismatch("target of first map is not the source of the second")
        return OrderMap(self.source, other.target, {x: other(self(x)) for x in self.source})

    def is_injective(self) -> bool:
        return len(set(self.assignment[x] for x in self.source)) == len(self.source)

    def is_surjective(self) -> bool:
        return set(self.assignment[x] for x in self.source) == set(self.target.elements)

    def fiber(self, w: Label) -> list[Label]:
        return [x for x in self.source if self.assignment[x] == w]


def restrict_map(phi: OrderMap, v: Label) -> OrderMap:
    """``phi/v : V/v -> W/phi(v)``."""
    source = down_set(phi.source, v)
    target = down_set(phi.target, phi(v))
    return OrderMap(source, target, {x: phi(x) for x in source})


# -- mapping cylinders ------------------------------------------------------


@dataclass(frozen=True)
class CylinderPoset:
    """``P(phi) = V u_phi W`` together with its structure maps.

    Elements of ``V`` are tagged ``(1, v)`` and elements of ``W`` are tagged
    ``(0, w)``.
    """

    poset: Poset
    front: OrderMap  # In : V -> P(phi)
    back: OrderMap  # In' : W -> P(phi)
    projection: OrderMap  # pr = phi v 1 : P(phi) -> W
    coordinate: OrderMap  # pi : P(phi) -> [1]


def mapping_cylinder(phi: OrderMap) -> CylinderPoset:
    """Disjoint union of ``V`` and ``W`` with the order generated by ``phi(v) < v``."""
    V, W = phi.source, phi.target
    labels = [(1, v) for v in V] + [(0, w) for w in W]
    pairs = [((1, V.elements[i]), (1, V.elements[j])) for i, j in V.covers()]
    pairs += [((0, W.elements[i]), (0, W.elements[j])) for i, j in W.covers()]
    pairs += [((0, phi(v)), (1, v)) for v in V]
    P = make_poset(labels, pairs)
    front = OrderMap(V, P, {v: (1, v) for v in V})
    back = OrderMap(W, P, {w: (0, w) for w in W})
    projection = OrderMap(P, W, {x: phi(x[1]) if x[0] == 1 else x[1] for x in P})
    coordinate = OrderMap(P, total_order(1), {x: x[0] for x in P})
    return CylinderPoset(P, front, back, projection, coordinate)


def _check_composable(maps: Sequence[OrderMap]) -> None:
    for i in range(1, len(maps)):
        # maps[i] : V_{i+1} -> V_i must land in the source of maps[i-1].
        if set(maps[i].target.elements) != set(maps[i - 1].source.elements):
            raise CompositionMismatch(f"phi_{i + 1} does not land in the source of phi_{i}")


@dataclass(frozen=True)
class IteratedCylinderPoset:
    """``P(phi_r, ..., phi_1)`` with its coordinate projection onto ``[r]``.

    Elements of ``V_i`` are tagged ``(i, v)``.
    """

    poset: Poset
    coordinate: OrderMap
    layers: tuple[Poset, ...]


def iterated_cylinder(maps: Sequence[OrderMap], layers: Sequence[Poset] | None = None) -> IteratedCylinderPoset:
    """Iterated mapping-cylinder poset of ``V_r -> ... -> V_0``.

    ``maps[i - 1]`` is ``phi_i : V_i -> V_{i-1}``.  For ``r = 0`` pass an empty
    ``maps`` and ``layers=[V_0]``.
    """
    maps = list(maps)
    _check_composable(maps)
    if maps:
        layers = [maps[0].target] + [phi.source for phi in maps]
    elif layers is None or len(layers) != 1:
        raise CompositionMismatch("r = 0 needs exactly one layer")
    r = len(maps)
    labels = [(i, v) for i, V in enumerate(layers) for v in V]
    pairs = []
    for i, V in enumerate(layers):
        pairs += [((i, V.elements[a]), (i, V.elements[b])) for a, b in V.covers()]
    for i, phi in enumerate(maps, start=1):
        pairs += [((i - 1, phi(v)), (i, v)) for v in phi.source]
    P = make_poset(labels, pairs)
    coordinate = OrderMap(P, total_order(r), {x: x[0] for x in P})
    return IteratedCylinderPoset(P, coordinate, tuple(layers))


def iterated_projection(maps: Sequence[OrderMap], cyl: IteratedCylinderPoset) -> OrderMap:
    """``psi_1 v 1 : P(phi_r, ..., phi_1) -> V_0``, composing down to layer 0."""

    def down(x):
        i, v = x
        for phi in reversed(maps[:i]):
            v = phi(v)
        return v

    return OrderMap.from_function(cyl.poset, cyl.layers[0], down)


def iterated_cylinder_inductive(maps: Sequence[OrderMap]) -> IteratedCylinderPoset:
    """Build ``P(phi_r, ..., phi_1)`` as ``P(psi_1)`` by repeated single cylinders.

    ``psi_r = phi_r`` and ``psi_j = phi_j o (psi_{j+1} v 1)``; after each step
    the tags ``(1, q)`` are flattened back to ``q`` and ``(0, w)`` becomes
    ``(j - 1, w)`` so the result is directly comparable with
    :func:`iterated_cylinder`.
    """
    maps = list(maps)
    _check_composable(maps)
    r = len(maps)
    if r == 0:
        raise CompositionMismatch("inductive construction needs r >= 1")
    top = maps[-1].source
    Q = top.relabel(lambda v: (r, v))
    psi = OrderMap(Q, maps[-1].target, {(r, v): maps[-1](v) for v in top})
    for j in range(r, 0, -1):
        cyl = mapping_cylinder(psi)
        Q = cyl.poset.relabel(lambda x, j=j: x[1] if x[0] == 1 else (j - 1, x[1]))
        if j > 1:
            pr = {q: (psi(q) if q[0] >= j else q[1]) for q in Q}
            phi = maps[j - 2]
            psi = OrderMap(Q, phi.target, {q: phi(pr[q]) for q in Q})
    coordinate = OrderMap(Q, total_order(r), {x: x[0] for x in Q})
    layers = [maps[0].target] + [phi.source for phi in maps]
    return IteratedCylinderPoset(Q, coordinate, tuple(layers))


# -- dismantling ------------------------------------------------------------


@dataclass(frozen=True)
class BeatRemoval:
    element: Label
    kind: str  # "up": unique minimal strict upper bound; "down": dual
    witness: Label


def _beat_witness(poset: Poset, alive: int, i: int) -> tuple[str, int] | None:
    ups = poset._up[i] & alive & ~(1 << i)
    if ups:
        for j in _bits(ups):
            if ups & ~poset._up[j] == 0:
                return "up", j
    downs = poset._down[i] & alive & ~(1 << i)
    if downs:
        for j in _bits(downs):
            if downs & ~poset._down[j] == 0:
                return "down", j
    return None


def core(poset: Poset) -> tuple[Poset, list[BeatRemoval]]:
    """Remove beat points, lowest index first, until none remain.

    Returns the core and the removal trace.  The order complex keeps its
    homotopy type at every step.
    """
    alive = (1 << len(poset)) - 1
    trace: list[BeatRemoval] = []
    progress = True
    while progress and alive & (alive - 1):
        progress = False
        for i in _bits(alive):
            hit = _beat_witness(poset, alive, i)
            if hit is not None:
                kind, j = hit
                trace.append(BeatRemoval(poset.elements[i], kind, poset.elements[j]))
                alive &= ~(1 << i)
                progress = True
                break
    return poset.subposet(poset.labels_of(alive)), trace


def replay_dismantling(poset: Poset, trace: Sequence[BeatRemoval]) -> Poset:
    """Re-check a removal trace step by step; raises ValueError on a bad step."""
    alive = (1 << len(poset)) - 1
    for step in trace:
        i = poset.index(step.element)
        j = poset.index(step.witness)
        if not alive >> i & 1 or not alive >> j & 1:
            raise ValueError(f"{step.element!r} or its witness already removed")
        if step.kind == "up":
            rest = poset._up[i] & alive & ~(1 << i)
            ok = rest >> j & 1 and rest & ~poset._up[j] == 0
        elif step.kind == "down":
            rest = poset._down[i] & alive & ~(1 << i)
            ok = rest >> j & 1 and rest & ~poset._down[j] == 0
        else:
            ok = False
        if not ok:
            raise ValueError(f"{step.element!r} is not a beat point at this stage")
        alive &= ~(1 << i)
    return poset.subposet(poset.labels_of(alive))

