"""Interchange formats: canonical JSON, DOT views and CSV summaries."""

from __future__ import annotations

import csv
import hashlib
import io
import json
from collections.abc import Mapping, Sequence

from .engine.certificates import Certificate
from .poset import OrderMap, Poset, make_poset
from .simplicial import _from_jsonable, _to_jsonable

POSET_SCHEMA = "sdkappa.poset/1"
MAP_SCHEMA = "sdkappa.ordermap/1"
PATH_SCHEMA = "sdkappa.path/1"
SEQUENCE_SCHEMA = "sdkappa.sequence/1"
REPORT_SCHEMA = "sdkappa.report/1"


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=True) + "\n"


def digest(obj) -> str:
    text = obj if isinstance(obj, (str, bytes)) else json.dumps(obj, sort_keys=True, separators=(",", ":"))
    data = text.encode() if isinstance(text, str) else text
    return hashlib.sha256(data).hexdigest()


# -- posets and maps ----------------------------------------------------------------


def poset_to_json(P: Poset) -> dict:
    return {
        "schema": POSET_SCHEMA,
        "elements": [_to_jsonable(x) for x in P.elements],
        "covers": [list(c) for c in P.covers()],
    }


def poset_from_json(data: Mapping) -> Poset:
    elements = [_from_jsonable(x) for x in data["elements"]]
    return make_poset(elements, [(elements[i], elements[j]) for i, j in data["covers"]])


def order_map_to_json(phi: OrderMap) -> dict:
    return {
        "schema": MAP_SCHEMA,
        "source": poset_to_json(phi.source),
        "target": poset_to_json(phi.target),
        "values": [[_to_jsonable(x), _to_jsonable(phi(x))] for x in phi.source],
    }


def order_map_from_json(data: Mapping, source: Poset | None = None, target: Poset | None = None) -> OrderMap:
    source = source if source is not None else poset_from_json(data["source"])
    target = target if target is not None else poset_from_json(data["target"])
    return OrderMap(source, target, {_from_jsonable(x): _from_jsonable(y) for x, y in data["values"]})


def sequence_from_json(data: Mapping) -> list[OrderMap]:
    """``{"posets": [V_0, ..., V_r], "maps": [values of phi_1, ..., phi_r]}``; ``phi_i : V_i -> V_{i-1}``."""
    posets = [poset_from_json(p) for p in data["posets"]]
    if len(data["maps"]) != len(posets) - 1:
        raise ValueError("a sequence of r maps needs r + 1 posets")
    return [
        OrderMap(posets[i], posets[i - 1], {_from_jsonable(x): _from_jsonable(y) for x, y in values})
        for i, values in enumerate(data["maps"], start=1)
    ]


def sequence_to_json(maps: Sequence[OrderMap]) -> dict:
    posets = [maps[0].target] + [phi.source for phi in maps]
    return {
        "schema": SEQUENCE_SCHEMA,
        "posets": [poset_to_json(P) for P in posets],
        "maps": [[[_to_jsonable(x), _to_jsonable(phi(x))] for x in phi.source] for phi in maps],
    }


def path_to_json(gamma, m: int, n: int) -> dict:
    return {"schema": PATH_SCHEMA, "m": m, "n": n, "points": [list(p) for p in gamma]}


def path_from_json(data: Mapping):
    from .paths import make_path

    return make_path(tuple(p) for p in data["points"])


def path_poset_to_json(pp) -> dict:
    out = poset_to_json(pp.poset)
    out.update({"tag": pp.tag, "m": pp.m, "n": pp.n})
    return out


# -- DOT ----------------------------------------------------------------------------


def _dot_id(x) -> str:
    return json.dumps(repr(x))


def poset_to_dot(P: Poset, name: str = "P") -> str:
    """Hasse diagram; elements of equal rank (longest chain below) share a row."""
    ranks = P.ranks()
    lines = [f"digraph {json.dumps(name)} {{", "  rankdir=BT;"]
    rows: dict[int, list] = {}
    for x in P.elements:
        rows.setdefault(ranks[x], []).append(x)
        lines.append(f"  {_dot_id(x)};")
    for k in sorted(rows):
        lines.append("  { rank=same; " + " ".join(_dot_id(x) for x in rows[k]) + " }")
    for a, b in P.cover_pairs():
        lines.append(f"  {_dot_id(a)} -> {_dot_id(b)};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def certificate_to_dot(cert: Certificate, name: str = "proof") -> str:
    lines = [f"digraph {json.dumps(name)} {{", "  node [shape=box];"]
    counter = [0]

    def visit(c: Certificate) -> str:
        node = f"n{counter[0]}"
        counter[0] += 1
        parts = [c.variant]
        desc = c.payload().get("description") or c.payload().get("direction")
        if desc:
            parts.append(desc)
        label = "\\n".join(json.dumps(p)[1:-1] for p in parts)
        lines.append(f'  {node} [label="{label}"];')
        for child in c.children():
            lines.append(f"  {node} -> {visit(child)};")
        return node

    visit(cert)
    lines.append("}")
    return "\n".join(lines) + "\n"


# -- CSV ----------------------------------------------------------------------------


def rows_to_csv(rows: Sequence[Sequence]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerows(rows)
    return buf.getvalue()
