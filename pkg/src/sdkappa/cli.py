"""Command-line front end.

Exit codes: 0 success, 1 failed self-test or bad input, 2 refutation found,
3 undecided where a definite verdict was needed, 4 scale guard.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from pathlib import Path

from . import __version__
from .errors import InconsistentVerdict, ScaleGuard, SdKappaError
from .io import (
    REPORT_SCHEMA,
    canonical_json,
    certificate_to_dot,
    digest,
    path_poset_to_json,
    poset_to_dot,
    rows_to_csv,
    sequence_from_json,
)

EXIT_OK, EXIT_FAIL, EXIT_REFUTED, EXIT_UNKNOWN, EXIT_SCALE = 0, 1, 2, 3, 4
FORMATS = ("json", "csv", "dot")


@dataclass
class RunConfig:
    command: str
    m: int | None = None
    n: int | None = None
    r_max: int | None = None
    per_cell: int = 3
    seed: int = 0
    force_scale: bool = False
    out: str | None = None
    format: str = "json"
    options: dict = field(default_factory=dict)

    def validate(self) -> None:
        if self.format not in FORMATS:
            raise ValueError(f"unknown format {self.format!r}")
        for name in ("m", "n", "r_max"):
            value = getattr(self, name)
            if value is not None and value < 0:
                raise ValueError(f"{name} must be non-negative")
        if self.per_cell < 0:
            raise ValueError("--per-cell must be non-negative")

    def to_json(self) -> dict:
        out = asdict(self)
        out.pop("out")  # where a report goes does not change what it says
        return out


@dataclass
class Report:
    result: dict
    exit_code: int = EXIT_OK
    inputs: dict = field(default_factory=dict)
    dot: str = ""
    csv_rows: list = field(default_factory=list)


def envelope(config: RunConfig, report: Report) -> dict:
    return {
        "schema": REPORT_SCHEMA,
        "tool": {"name": "sdkappa", "version": __version__},
        "config": config.to_json(),
        "inputs": report.inputs,
        "result": report.result,
        "exit_code": report.exit_code,
    }


def render(config: RunConfig, report: Report) -> str:
    if config.format == "dot":
        return report.dot
    if config.format == "csv":
        return rows_to_csv(report.csv_rows)
    return canonical_json(envelope(config, report))


def _exit_for(kinds) -> int:
    kinds = set(kinds)
    if kinds & {"NotSimple", "NotContractible"}:
        return EXIT_REFUTED
    if "Unknown" in kinds:
        return EXIT_UNKNOWN
    return EXIT_OK


def _parse_face(text: str, bound: int):
    if text == "full":
        return tuple(range(bound + 1))
    return tuple(int(t) for t in text.split(",") if t != "")


def _read_json(path: str) -> tuple[dict, str]:
    raw = Path(path).read_bytes()
    return json.loads(raw), digest(raw)


# -- commands ------------------------------------------------------------------------


def cmd_paths(cfg: RunConfig) -> Report:
    from .engine.verdicts import contractible_verdict
    from .paths import GRID_CELL_LIMIT, faces, path_poset, path_poset_chain

    m, n = cfg.m, cfg.n
    if (m + 1) * (n + 1) > GRID_CELL_LIMIT and not cfg.force_scale:
        raise ScaleGuard(f"[{m}]x[{n}] has more than {GRID_CELL_LIMIT} points")
    opts = cfg.options
    inputs = {}
    if opts.get("chain"):
        data, h = _read_json(opts["chain"])
        inputs["chain"] = h
        z = [tuple(f) for f in data["z"]]
        w = [tuple(f) for f in data["w"]]
        posets = [path_poset_chain(z, w, m, n)]
    elif opts.get("mu") is not None or opts.get("nu") is not None:
        mu = _parse_face(opts.get("mu") or "full", m)
        nu = _parse_face(opts.get("nu") or "full", n)
        posets = [path_poset(mu, nu, m, n)]
    else:
        posets = [path_poset(mu, nu, m, n) for mu in faces(m) for nu in faces(n)]
    entries, rows, dots = [], [["tag", "size", "height", "verdict", "stage"]], []
    for pp in posets:
        v = contractible_verdict(pp.poset)
        entries.append({
            "poset": path_poset_to_json(pp),
            "size": len(pp),
            "height": pp.poset.height() if len(pp) else -1,
            "verdict": v.to_json(),
        })
        rows.append([pp.tag, len(pp), pp.poset.height() if len(pp) else -1, v.kind, v.stage])
        dots.append(poset_to_dot(pp.poset, pp.tag))
    code = _exit_for(e["verdict"]["verdict"] for e in entries)
    return Report({"m": m, "n": n, "posets": entries}, code, inputs, "".join(dots), rows)


def cmd_kappa(cfg: RunConfig) -> Report:
    from .engine.verdicts import KAPPA_CELL_LIMIT, kappa_cellwise_report, reconcile
    from .geometry import sample_fibers, _verdict_from_report
    from .simplicial import delta
    from .subdivision import Kappa

    m, n = cfg.m, cfg.n
    if (m + 1) * (n + 1) > KAPPA_CELL_LIMIT and not cfg.force_scale:
        raise ScaleGuard(f"kappa pipeline on [{m}]x[{n}] exceeds {KAPPA_CELL_LIMIT} grid points")
    K = Kappa(delta(m), delta(n))
    iso = K.map.is_isomorphism()
    cells = kappa_cellwise_report(m, n, cfg.r_max, force=cfg.force_scale)
    fibres = sample_fibers(K.map, cfg.per_cell, cfg.seed, name=f"kappa({m},{n})")
    sampled = _verdict_from_report(fibres, None)
    combined = reconcile(cells.overall, sampled)
    if cells.overall.positive and not sampled.definite:
        combined = sampled
    result = {
        "m": m,
        "n": n,
        "isomorphism": iso,
        "simplices": {"source": K.map.source.counts(), "target": K.map.target.counts()},
        "verdict": combined.kind,
        "cellwise": cells.to_json(certificates=True),
        "fibres": fibres.to_json(),
    }
    dot = certificate_to_dot(cells.overall.certificate, "kappa") if cells.overall.certificate else ""
    rows = [["z", "w", "r", "verdict", "stage"]] + [
        [json.dumps([list(f) for f in c.z]), json.dumps([list(f) for f in c.w]), len(c.z) - 1, c.verdict.kind, c.verdict.stage]
        for c in cells.cells
    ]
    return Report(result, _exit_for([combined.kind]), {}, dot, rows)


def _builtin_sequence(opts: dict):
    from .cylinders import terminal_maps
    from .poset import OrderMap, total_order

    if opts.get("terminal") is not None:
        return terminal_maps(opts["terminal"]), {"terminal": opts["terminal"]}
    if opts.get("sigma") is not None:
        values = {0: {0: 0, 1: 0, 2: 1}, 1: {0: 0, 1: 1, 2: 1}}[opts["sigma"]]
        return [OrderMap(total_order(2), total_order(1), values)], {"sigma": opts["sigma"]}
    data, h = _read_json(opts["spec"])
    return sequence_from_json(data), {"spec": h}


def cmd_cylinder(cfg: RunConfig) -> Report:
    from .cylinders import iterated_reduction
    from .engine.verdicts import sequence_reduction_verdict, terminal_reduction_verdict
    from .io import poset_to_json
    from .simplicial import nerve_map

    maps, inputs = _builtin_sequence(cfg.options)
    r = len(maps)
    red = iterated_reduction(maps)
    red.red.check()
    M, T = red.reduced, red.ordinary
    coherence = {}
    if r == 1:
        step = red.step
        NV = step.ordinary.source_map.source
        coherence["pr_after_front_is_nerve_map"] = step.reduced.front.then(step.reduced.projection) == step.reduced.source_map
        coherence["red_after_front_is_front"] = step.ordinary.front.then(step.red) == step.reduced.front
        coherence["vertex_counts_agree"] = len(T.total.nondegenerate(0)) == len(M.total.nondegenerate(0))
        coherence["source_map_is_nerve"] = step.reduced.source_map == nerve_map(maps[0], NV, step.reduced.source_map.target)
    if cfg.options.get("terminal") is not None:
        verdict = terminal_reduction_verdict(r)
    else:
        verdict = sequence_reduction_verdict(maps)
    top = M.total.top_dim
    result = {
        "r": r,
        "layers": [poset_to_json(P) for P in M.cylinder.layers],
        "ordinary": {"simplices": T.total.counts(), "nonsingular": T.total.is_nonsingular()},
        "reduced": {"simplices": M.total.counts(), "top_simplices": [list(map(list, c)) for c in M.total.nondegenerate(top)]},
        "red_is_isomorphism": red.red.is_isomorphism(),
        "coherence": coherence,
        "verdict": verdict.to_json(),
    }
    code = _exit_for([verdict.kind])
    if not all(coherence.values()):
        code = EXIT_REFUTED
    dot = certificate_to_dot(verdict.certificate, "reduction") if verdict.certificate else poset_to_dot(M.cylinder.poset)
    rows = [["dimension", "ordinary", "reduced"]] + [
        [k, T.total.counts()[k] if k < len(T.total.counts()) else 0, M.total.counts()[k] if k < len(M.total.counts()) else 0]
        for k in range(max(T.total.top_dim, M.total.top_dim) + 1)
    ]
    return Report(result, code, inputs, dot, rows)


def _builtin_map(name: str):
    from .simplicial import SimplicialMap, delta, disjoint_union, identity_map
    from .subdivision import kappa, last_vertex

    kind, _, arg = name.partition(":")
    nums = [int(a) for a in arg.split(",") if a]
    if kind == "kappa":
        return kappa(delta(nums[0]), delta(nums[1]))
    if kind == "fold":
        D1 = delta(1)
        U = disjoint_union(D1, D1)
        return SimplicialMap(U, D1, {x: D1.simplex(x[1]) for x in U.nondegenerate()})
    if kind == "last-vertex":
        return last_vertex(delta(nums[0]))
    if kind == "identity":
        return identity_map(delta(nums[0]))
    raise ValueError(f"unknown built-in map {name!r}")


def _decode_label(text: str):
    from .simplicial import _from_jsonable

    return _from_jsonable(json.loads(text))


def cmd_fiber(cfg: RunConfig) -> Report:
    from .geometry import FiberIndex, RationalPoint, fiber_homotopy_report, sample_fibers
    from .simplicial import smap_from_json

    opts = cfg.options
    inputs = {}
    if opts.get("builtin"):
        f = _builtin_map(opts["builtin"])
        inputs["builtin"] = opts["builtin"]
    else:
        data, h = _read_json(opts["map"])
        f = smap_from_json(data)
        inputs["map"] = h
    if opts.get("cell") is None:
        report = sample_fibers(f, cfg.per_cell, cfg.seed, name=opts.get("builtin") or "map")
        bad = [r for r in report.records if not r.fiber_class.verdict.positive]
        kinds = [r.fiber_class.verdict.kind for r in bad] or ["Contractible"]
        return Report(report.to_json(), _exit_for(kinds), inputs, "", report.csv_rows())
    cell = _decode_label(opts["cell"])
    k = f.target.dim(cell) + 1
    coords = tuple(Fraction(c) for c in opts["coords"].split(",")) if opts.get("coords") else (Fraction(1, k),) * k
    point = RationalPoint(cell, coords)
    F = FiberIndex(f).fiber(point)
    cls = fiber_homotopy_report(F)
    cells = []
    for tau in F.cells:
        Q = F.polytopes[tau]
        cells.append({
            "host": repr(tau),
            "dim": Q.dim,
            "blocks": [list(b) for b in Q.blocks],
            "vertices": [[str(t) for t in v] for v in Q.vertices()],
        })
    result = {"point": F.point.to_json(), "cells": cells, **cls.to_json(), "verdict": cls.verdict.kind}
    rows = [["host", "dim", "vertices"]] + [[c["host"], c["dim"], len(c["vertices"])] for c in cells]
    dims = {x: F.polytopes[x].dim for x in F.cells}
    dot = poset_to_dot(F.cells.relabel(lambda x: (dims[x], repr(x))), "fibre")
    return Report(result, _exit_for([cls.verdict.kind]), inputs, dot, rows)


# Reference reports regenerated and compared byte for byte by ``selftest``.
GOLDEN_DIR = Path(__file__).parent / "golden"
GOLDEN = {
    "paths_1_2_full.json": ["paths", "1", "2", "--mu", "full", "--nu", "full"],
    "paths_1_1_all.json": ["paths", "1", "1"],
    "kappa_1_0.json": ["kappa", "1", "0", "--per-cell", "1"],
    "cylinder_sigma1.json": ["cylinder", "--sigma", "1"],
    "cylinder_terminal3.json": ["cylinder", "--terminal", "3"],
    "fiber_fold.json": ["fiber", "--builtin", "fold", "--per-cell", "1"],
}


def report_text(argv: list[str]) -> str:
    """The report ``sdkappa argv`` would print."""
    cfg = config_from_args(build_parser().parse_args(argv))
    return render(cfg, COMMANDS[cfg.command](cfg))


def write_golden(directory: Path = GOLDEN_DIR) -> None:
    directory.mkdir(parents=True, exist_ok=True)
    for name, argv in GOLDEN.items():
        (directory / name).write_text(report_text(argv))


def check_golden(directory: Path = GOLDEN_DIR) -> list[str]:
    """Names of golden reports that are missing or differ from a fresh run."""
    bad = []
    for name, argv in GOLDEN.items():
        path = directory / name
        if not path.is_file() or path.read_text() != report_text(argv):
            bad.append(name)
    return bad


def cmd_selftest(cfg: RunConfig) -> Report:
    from .acceptance import run

    echo = lambda line: print(line, file=sys.stderr)
    outcomes = run(quick=cfg.options.get("quick", False), echo=echo)
    golden_dir = Path(cfg.options.get("golden", GOLDEN_DIR))
    mismatched = check_golden(golden_dir)
    echo(f"[{'FAIL' if mismatched else 'PASS'}] golden reports: {len(GOLDEN) - len(mismatched)}/{len(GOLDEN)} match"
         + (f", differing: {', '.join(mismatched)}" if mismatched else ""))
    result = {
        "criteria": [
            {"number": o.criterion.number, "title": o.criterion.title, "passed": o.passed, "skipped": o.skipped, "detail": o.detail}
            for o in outcomes
        ],
        "golden": {"checked": sorted(GOLDEN), "mismatched": mismatched},
    }
    rows = [["criterion", "status", "detail"]] + [
        [o.criterion.number, "skip" if o.skipped else ("pass" if o.passed else "fail"), o.detail] for o in outcomes
    ] + [["golden", "fail" if mismatched else "pass", " ".join(mismatched)]]
    code = EXIT_OK if all(o.passed for o in outcomes) and not mismatched else EXIT_FAIL
    return Report(result, code, {}, "", rows)


COMMANDS = {"paths": cmd_paths, "kappa": cmd_kappa, "cylinder": cmd_cylinder, "fiber": cmd_fiber, "selftest": cmd_selftest}


# -- argument parsing ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="sampling seed (default 0)")
    common.add_argument("--per-cell", type=int, default=3, help="random points per cell besides the barycentre (default 3)")
    common.add_argument("--r-max", type=int, default=None, help="largest cell dimension to examine")
    common.add_argument("--out", default=None, help="write the report here instead of stdout")
    common.add_argument("--format", choices=FORMATS, default="json")
    common.add_argument("--force-scale", action="store_true", help="ignore the size guards")

    parser = argparse.ArgumentParser(prog="sdkappa", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"sdkappa {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("paths", parents=[common], help="path posets in a grid and their verdicts")
    p.add_argument("m", type=int)
    p.add_argument("n", type=int)
    p.add_argument("--mu", help="face of [m]: 'full' or comma list like 0,2")
    p.add_argument("--nu", help="face of [n]: 'full' or comma list")
    p.add_argument("--chain", help="JSON file {\"z\": [...], \"w\": [...]}")

    k = sub.add_parser("kappa", parents=[common], help="cellwise proof and sampled fibres for kappa")
    k.add_argument("m", type=int)
    k.add_argument("n", type=int)

    c = sub.add_parser("cylinder", parents=[common], help="mapping cylinders and reduction maps of a sequence")
    src = c.add_mutually_exclusive_group(required=True)
    src.add_argument("spec", nargs="?", help="JSON sequence file")
    src.add_argument("--terminal", type=int, help="the sequence of r identities of a point")
    src.add_argument("--sigma", type=int, choices=(0, 1), help="the degeneracy [2] -> [1] collapsing i, i+1")

    f = sub.add_parser("fiber", parents=[common], help="point inverses of a simplicial map")
    fsrc = f.add_mutually_exclusive_group(required=True)
    fsrc.add_argument("map", nargs="?", help="JSON simplicial map file")
    fsrc.add_argument("--builtin", help="kappa:m,n | fold | last-vertex:d | identity:d")
    f.add_argument("--cell", help="target cell label as JSON; omit to sample every cell")
    f.add_argument("--coords", help="barycentric coordinates like 1/3,2/3 (default: barycentre)")

    s = sub.add_parser("selftest", parents=[common], help="run the acceptance criteria")
    s.add_argument("--quick", action="store_true", help="skip the stretch criterion")
    s.add_argument("--golden", help="directory of reference reports (default: the bundled ones)")
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    base = {"command", "m", "n", "r_max", "per_cell", "seed", "force_scale", "out", "format"}
    values = vars(args)
    options = {k: v for k, v in sorted(values.items()) if k not in base and v is not None and v is not False}
    cfg = RunConfig(
        command=args.command,
        m=values.get("m"),
        n=values.get("n"),
        r_max=args.r_max,
        per_cell=args.per_cell,
        seed=args.seed,
        force_scale=args.force_scale,
        out=args.out,
        format=args.format,
        options=options,
    )
    cfg.validate()
    return cfg


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = config_from_args(args)
        report = COMMANDS[cfg.command](cfg)
    except ScaleGuard as exc:
        print(f"scale guard: {exc} (use --force-scale)", file=sys.stderr)
        return EXIT_SCALE
    except InconsistentVerdict as exc:
        print(f"inconsistent verdicts: {exc}", file=sys.stderr)
        return EXIT_REFUTED
    except (SdKappaError, ValueError, OSError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    text = render(cfg, report)
    if cfg.out:
        Path(cfg.out).write_text(text)
    else:
        try:
            sys.stdout.write(text)
            sys.stdout.flush()
        except BrokenPipeError:
            sys.stderr.close()
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
