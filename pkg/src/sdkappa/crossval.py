"""Sample the point inverses of every map a certificate tree vouches for.

Leaves about order maps are sampled through their nerves.  Criterion nodes
are sampled through the single reduction map they certify.  Composites out
of singular iterated cylinders are covered through these pieces only.
"""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass, field

from .cylinders import reduction_map
from .engine.certificates import Certificate, CriterionWJR2416, SectionOverTarget
from .geometry import check_reduction_sampled, check_simple_sampled
from .poset import OrderMap
from .simplicial import SimplicialMap, nerve, nerve_map


def _map_key(phi: OrderMap) -> tuple:
    return (
        phi.source.elements,
        phi.source.relation(),
        phi.target.elements,
        phi.target.relation(),
        tuple(phi(x) for x in phi.source),
    )


@dataclass
class CrossValidation:
    per_cell: int = 3
    seed: int = 0
    nerve_maps: dict = field(default_factory=dict)
    reductions: dict = field(default_factory=dict)
    simplicial: list = field(default_factory=list)
    failures: list = field(default_factory=list)

    def add(self, cert: Certificate) -> None:
        for node in cert.walk():
            if isinstance(node, SectionOverTarget):
                if isinstance(node.f, OrderMap):
                    self._nerve(node.f)
                elif isinstance(node.f, SimplicialMap):
                    self._simplicial(node.f)
            elif isinstance(node, CriterionWJR2416):
                self.add_reduction(node.phi)

    def add_all(self, certs: Iterable[Certificate]) -> None:
        for c in certs:
            self.add(c)

    def _nerve(self, phi: OrderMap) -> None:
        key = _map_key(phi)
        if key in self.nerve_maps:
            return
        f = nerve_map(phi, nerve(phi.source), nerve(phi.target))
        v = check_simple_sampled(f, self.per_cell, self.seed, name="N(phi)")
        self.nerve_maps[key] = v
        if not v.positive:
            self.failures.append(("nerve", phi, v))

    def add_reduction(self, phi: OrderMap) -> None:
        key = _map_key(phi)
        if key in self.reductions:
            return
        v = check_reduction_sampled(reduction_map(phi), self.per_cell, self.seed)
        self.reductions[key] = v
        if not v.positive:
            self.failures.append(("reduction", phi, v))

    def _simplicial(self, f: SimplicialMap) -> None:
        if not (f.source.is_nonsingular() and f.target.is_nonsingular()):
            return
        v = check_simple_sampled(f, self.per_cell, self.seed)
        self.simplicial.append(v)
        if not v.positive:
            self.failures.append(("simplicial", f, v))

    def summary(self) -> dict:
        points = sum(v.certificate.report["points"] for v in self._all())
        return {
            "nerve_maps": len(self.nerve_maps),
            "reductions": len(self.reductions),
            "simplicial_maps": len(self.simplicial),
            "points": points,
            "failures": len(self.failures),
        }

    def _all(self):
        yield from self.nerve_maps.values()
        yield from self.reductions.values()
        yield from self.simplicial
