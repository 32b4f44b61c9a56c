"""Machine-checkable evidence for simplicity and contractibility.

Every certificate carries enough payload to be re-verified by ``check()``
without trusting whoever produced it.  ``check()`` returns ``None`` on
success and raises :class:`CertificateError` otherwise.  Composite
certificates check their children recursively.
"""

from __future__ import annotations

from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field
from typing import Any, Callable, ClassVar

from ..errors import SdKappaError
from ..poset import BeatRemoval, OrderMap, Poset, replay_dismantling, restrict_map
from ..simplicial import SimplicialMap
from .collapse import replay_collapse
from .homology import Homology, simplicial_homology


class CertificateError(SdKappaError):
    """A certificate failed verification."""


def _describe_map(f) -> dict:
    if isinstance(f, OrderMap):
        return {"kind": "order_map", "source_size": len(f.source), "target_size": len(f.target)}
    if isinstance(f, SimplicialMap):
        return {"kind": "simplicial_map", "source": f.source.counts(), "target": f.target.counts()}
    return {"kind": type(f).__name__}


@dataclass(frozen=True, eq=False)
class Certificate:
    variant: ClassVar[str] = "Certificate"

    def check(self) -> None:  # pragma: no cover - overridden
        raise NotImplementedError

    def children(self) -> Sequence[Certificate]:
        return ()

    def payload(self) -> dict:
        return {}

    def is_valid(self) -> bool:
        try:
            self.check()
        except CertificateError:
            return False
        return True

    def to_json(self) -> dict:
        out = {"variant": self.variant, "payload": self.payload()}
        kids = self.children()
        if kids:
            out["children"] = [k.to_json() for k in kids]
        return out

    def size(self) -> int:
        return 1 + sum(k.size() for k in self.children())

    def leaves(self) -> list[Certificate]:
        kids = self.children()
        if not kids:
            return [self]
        return [leaf for k in kids for leaf in k.leaves()]

    def walk(self):
        yield self
        for k in self.children():
            yield from k.walk()


# -- contractibility ----------------------------------------------------------


@dataclass(frozen=True, eq=False)
class ConePoint(Certificate):
    """``apex`` is the minimum or the maximum of ``poset``, so its order complex is a cone."""

    variant: ClassVar[str] = "ConePoint"
    poset: Poset
    apex: Any

    def check(self) -> None:
        if self.apex not in self.poset:
            raise CertificateError("apex is not an element")
        if self.poset.minimum() != self.apex and self.poset.maximum() != self.apex:
            raise CertificateError("apex is neither a minimum nor a maximum")

    def payload(self) -> dict:
        return {"apex": repr(self.apex), "size": len(self.poset)}


@dataclass(frozen=True, eq=False)
class CollapseSequence(Certificate):
    """Elementary collapses taking a simplicial complex down to one vertex."""

    variant: ClassVar[str] = "CollapseSequence"
    simplices: tuple[tuple, ...]
    steps: tuple[tuple[tuple, tuple], ...]

    def check(self) -> None:
        try:
            rest = replay_collapse(self.simplices, self.steps)
        except ValueError as exc:
            raise CertificateError(str(exc)) from None
        if len(rest) != 1:
            raise CertificateError(f"{len(rest)} simplices remain after collapsing")

    def payload(self) -> dict:
        return {"simplices": len(self.simplices), "steps": len(self.steps)}


@dataclass(frozen=True, eq=False)
class DismantlingTrace(Certificate):
    """Beat-point removals; either they end in a point or ``then`` certifies the core.

    ``then`` is a collapse of the core's order complex, whose vertices are the
    core's element indices along ``core_order``.
    """

    variant: ClassVar[str] = "DismantlingTrace"
    poset: Poset
    trace: tuple[BeatRemoval, ...]
    then: CollapseSequence | None = None

    def check(self) -> None:
        try:
            core = replay_dismantling(self.poset, self.trace)
        except ValueError as exc:
            raise CertificateError(str(exc)) from None
        if len(core) == 1:
            return
        if self.then is None:
            raise CertificateError(f"dismantling stops at {len(core)} elements")
        from .homology import order_complex

        if set(map(tuple, self.then.simplices)) != set(order_complex(core)):
            raise CertificateError("collapse does not start from the core's order complex")
        self.then.check()

    def children(self):
        return (self.then,) if self.then is not None else ()

    def payload(self) -> dict:
        return {"size": len(self.poset), "removed": len(self.trace)}


@dataclass(frozen=True, eq=False)
class HomologyRefutation(Certificate):
    """Non-trivial reduced homology; ``degree -1`` encodes the empty space, ``0`` disconnection."""

    variant: ClassVar[str] = "HomologyRefutation"
    simplices: tuple[tuple, ...]
    homology: Homology

    def check(self) -> None:
        h = simplicial_homology(self.simplices)
        if h != self.homology:
            raise CertificateError("recorded homology does not match")
        if h.is_trivial():
            raise CertificateError("homology is trivial; nothing is refuted")

    def payload(self) -> dict:
        return {"homology": self.homology.to_json(), "degree": self.homology.first_nontrivial()}


# -- simplicity ---------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class SectionOverTarget(Certificate):
    """``f`` has a section ``s`` with ``s f`` comparable to the identity.

    ``direction`` is ``"below"`` (``s f(v) <= v`` for all ``v``), ``"above"``
    (``s f(v) >= v``) or ``"equal"`` (an isomorphism, also for simplicial
    maps).  A comparison gives a homotopy over the target, so the nerve of
    ``f`` is simple.
    """

    variant: ClassVar[str] = "SectionOverTarget"
    f: Any
    s: Any
    direction: str

    def check(self) -> None:
        f, s = self.f, self.s
        if isinstance(f, SimplicialMap):
            if self.direction != "equal":
                raise CertificateError("simplicial sections must be inverse isomorphisms")
            for y in f.target.nondegenerate():
                if f(s.on(y)) != f.target.simplex(y):
                    raise CertificateError("s is not a section")
            for x in f.source.nondegenerate():
                if s(f.on(x)) != f.source.simplex(x):
                    raise CertificateError("s f is not the identity")
            return
        if set(s.source.elements) != set(f.target.elements) or set(s.target.elements) != set(f.source.elements):
            raise CertificateError("section has the wrong source or target")
        for w in f.target:
            if f(s(w)) != w:
                raise CertificateError(f"f s({w!r}) != {w!r}")
        P = f.source
        for v in P:
            u = s(f(v))
            ok = {
                "below": P.leq(u, v),
                "above": P.leq(v, u),
                "equal": u == v,
            }.get(self.direction)
            if ok is None:
                raise CertificateError(f"unknown direction {self.direction!r}")
            if not ok:
                raise CertificateError(f"s f({v!r}) is not {self.direction} {v!r}")

    def payload(self) -> dict:
        return {"map": _describe_map(self.f), "direction": self.direction}


@dataclass(frozen=True, eq=False)
class Composition(Certificate):
    """``second o first`` is simple because both factors are.

    ``subject``, when given, is the composite ``OrderMap`` being certified and is
    compared with the factors' maps.
    """

    variant: ClassVar[str] = "Composition"
    first: Certificate
    second: Certificate
    subject: OrderMap | None = None
    description: str = ""

    def check(self) -> None:
        self.first.check()
        self.second.check()
        if self.subject is not None:
            f, g = subject_map(self.first), subject_map(self.second)
            if f is None or g is None:
                raise CertificateError("factors do not expose their maps")
            if any(g(f(v)) != self.subject(v) for v in self.subject.source):
                raise CertificateError("factors do not compose to the subject")
            if set(f.source.elements) != set(self.subject.source.elements):
                raise CertificateError("first factor has the wrong source")

    def children(self):
        return (self.first, self.second)

    def payload(self) -> dict:
        return {"description": self.description}


@dataclass(frozen=True, eq=False)
class Gluing(Certificate):
    """A map of pushout diagrams whose pieces are simple induces a simple map.

    ``witness``, when present, is a callable that re-verifies the concrete
    simplicial maps (commutation with the pushout inclusions) and raises or
    returns a falsy value on failure.
    """

    variant: ClassVar[str] = "Gluing"
    parts: tuple[Certificate, ...]
    description: str
    witness: Callable[[], bool] | None = None

    def check(self) -> None:
        for p in self.parts:
            p.check()
        if self.witness is not None:
            try:
                ok = self.witness()
            except SdKappaError as exc:
                raise CertificateError(f"gluing witness failed: {exc}") from None
            if not ok:
                raise CertificateError("gluing witness failed")

    def children(self):
        return self.parts

    def payload(self) -> dict:
        return {"description": self.description, "concrete": self.witness is not None}


@dataclass(frozen=True, eq=False)
class CriterionWJR2416(Certificate):
    """``red : T(N phi) -> M(N phi)`` is simple because every ``N(phi/v)`` is."""

    variant: ClassVar[str] = "CriterionWJR2416"
    phi: OrderMap
    parts: Mapping[Any, Certificate]

    def check(self) -> None:
        for v in self.phi.source:
            cert = self.parts.get(v)
            if cert is None:
                raise CertificateError(f"no certificate for phi/{v!r}")
            cert.check()
            got = subject_map(cert)
            if got is None:
                raise CertificateError(f"certificate for phi/{v!r} does not name its map")
            want = restrict_map(self.phi, v)
            if set(got.source.elements) != set(want.source.elements) or any(got(x) != want(x) for x in want.source):
                raise CertificateError(f"certificate for phi/{v!r} is about a different map")

    def children(self):
        return tuple(self.parts[v] for v in self.phi.source)

    def payload(self) -> dict:
        return {"map": _describe_map(self.phi)}


@dataclass(frozen=True, eq=False)
class RightCancellation(Certificate):
    """``g`` is simple since ``g o f`` and ``f`` are."""

    variant: ClassVar[str] = "RightCancellation"
    composite: Certificate
    right: Certificate
    description: str = ""

    def check(self) -> None:
        self.composite.check()
        self.right.check()

    def children(self):
        return (self.composite, self.right)

    def payload(self) -> dict:
        return {"description": self.description}


@dataclass(frozen=True, eq=False)
class PullbackCellwise(Certificate):
    """A map is simple because it is simple over every open cell of the target.

    ``checks`` are re-run combinatorial identifications of the restriction
    over each cell; each must return an empty list of problems.
    """

    variant: ClassVar[str] = "PullbackCellwise"
    cells: Mapping[Any, Certificate]
    expected_cells: tuple = ()
    checks: Mapping[Any, Callable[[], list]] = field(default_factory=dict)

    def check(self) -> None:
        missing = [c for c in self.expected_cells if c not in self.cells]
        if missing:
            raise CertificateError(f"{len(missing)} cells lack a certificate")
        for cell, cert in self.cells.items():
            cert.check()
            probe = self.checks.get(cell)
            if probe is not None:
                problems = probe()
                if problems:
                    raise CertificateError(f"cell {cell!r}: {problems[0]}")

    def children(self):
        return tuple(self.cells.values())

    def payload(self) -> dict:
        return {"cells": len(self.cells), "expected": len(self.expected_cells)}


@dataclass(frozen=True, eq=False)
class SampledFibers(Certificate):
    """Evidence only: every sampled point inverse was classified contractible.

    ``recheck`` re-runs the sampling and must reproduce ``report``.
    """

    variant: ClassVar[str] = "SampledFibers"
    report: dict
    recheck: Callable[[], dict] | None = None
    subject: Any = None

    def check(self) -> None:
        if self.report.get("noncontractible", 1):
            raise CertificateError("a sampled fibre is not contractible")
        if self.recheck is not None and self.recheck() != self.report:
            raise CertificateError("re-sampling does not reproduce the report")

    def payload(self) -> dict:
        return dict(self.report)


def subject_map(cert: Certificate):
    """The ``OrderMap`` whose nerve a certificate proves simple, if it names one."""
    if isinstance(cert, SectionOverTarget) and isinstance(cert.f, OrderMap):
        return cert.f
    if isinstance(cert, Composition):
        if cert.subject is not None:
            return cert.subject
        f, g = subject_map(cert.first), subject_map(cert.second)
        if f is not None and g is not None:
            return f.then(g)
    if isinstance(cert, SampledFibers) and isinstance(cert.subject, OrderMap):
        return cert.subject
    return None
