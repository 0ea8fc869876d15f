"""Command-line interface: JSON scenes in, reports/CSV/manifests out.

Exit codes: 0 on success, 1 on usage or input errors (including blocked
experiment preconditions), 2 when the experiment ran but an acceptance
verdict inside the report failed.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from typing import Optional

import numpy as np

from . import __version__
from .geometry import (
    ConvexBody,
    GeometryError,
    hausdorff,
    hausdorff_via_support,
    hull,
    nearest_point,
    point_distance,
    shapley_folkman_gap,
    support_face,
)
from .randomsets import DiscreteRandomSet, NotExposed, expectation
from .simulate import (
    DegenerateFace,
    ExperimentConfig,
    ExperimentReport,
    IncompatibleSelection,
    InsideBody,
    NoFacet,
    clt_exposed_experiment,
    clt_facet_experiment,
    clt_hausdorff_experiment,
    clt_tangent_experiment,
    facet_frequency_experiment,
    lln_experiment,
)

SCENE_VERSION = 1
SIMULATE_KINDS = ("lln", "clt-hausdorff", "clt-exposed", "clt-tangent", "clt-facet", "facet-freq")

_USAGE_ERRORS = (
    GeometryError,
    NotExposed,
    IncompatibleSelection,
    NoFacet,
    InsideBody,
    DegenerateFace,
    ValueError,
    OSError,
)


class SceneError(ValueError):
    """Scene file violates the schema; ``path`` locates the offending field."""

    def __init__(self, path: str, reason: str):
        self.path = path
        super().__init__(f"{path}: {reason}")


class UsageError(ValueError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse would sys.exit(2); keep 1 for usage errors
        raise UsageError(message)


# ---------------------------------------------------------------------------
# scene format

def _reject_constant(token: str):
    raise SceneError("$", f"non-finite literal {token!r} is not allowed")


def parse_scene(text: str) -> DiscreteRandomSet:
    """Parse a JSON scene into a random set; vertex lists are hulled."""
    try:
        doc = json.loads(text, parse_constant=_reject_constant)
    except json.JSONDecodeError as exc:
        raise SceneError("$", f"invalid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise SceneError("$", "top level must be an object")
    if doc.get("version") != SCENE_VERSION:
        raise SceneError("version", f"unsupported version {doc.get('version')!r}, expected {SCENE_VERSION}")
    dim = doc.get("dim")
    if not isinstance(dim, int) or dim < 1:
        raise SceneError("dim", "must be a positive integer")
    atoms = doc.get("atoms")
    if not isinstance(atoms, list) or not atoms:
        raise SceneError("atoms", "must be a nonempty list")

    weights = []
    bodies = []
    for i, atom in enumerate(atoms):
        where = f"atoms[{i}]"
        if not isinstance(atom, dict):
            raise SceneError(where, "must be an object")
        w = atom.get("weight")
        if not isinstance(w, (int, float)) or isinstance(w, bool) or not np.isfinite(w) or w <= 0:
            raise SceneError(f"{where}.weight", "must be a finite positive number")
        vertices = atom.get("vertices")
        if not isinstance(vertices, list) or not vertices:
            raise SceneError(f"{where}.vertices", "must be a nonempty list of points")
        for j, v in enumerate(vertices):
            if not isinstance(v, list) or len(v) != dim:
                raise SceneError(f"{where}.vertices[{j}]", f"must be a list of {dim} numbers")
            for c in v:
                if not isinstance(c, (int, float)) or isinstance(c, bool) or not np.isfinite(c):
                    raise SceneError(f"{where}.vertices[{j}]", "coordinates must be finite numbers")
        weights.append(float(w))
        bodies.append(hull(np.asarray(vertices, dtype=float)))

    total = sum(weights)
    if abs(total - 1.0) > 1e-6:
        raise SceneError("atoms", f"weights sum to {total!r}, outside 1 +/- 1e-06")
    return DiscreteRandomSet(weights=np.array(weights), bodies=tuple(bodies))


def serialize_scene(y: DiscreteRandomSet) -> dict:
    return {
        "version": SCENE_VERSION,
        "dim": y.dim,
        "atoms": [
            {"weight": float(w), "vertices": body.vertices.tolist()}
            for w, body in zip(y.weights, y.bodies)
        ],
    }


def load_scene(path: str) -> DiscreteRandomSet:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_scene(fh.read())


def load_scene_point_sets(path: str) -> list[np.ndarray]:
    """Raw per-atom vertex lists, unhulled (interior points preserved)."""
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    parse_scene(text)  # full validation
    doc = json.loads(text)
    return [np.asarray(atom["vertices"], dtype=float) for atom in doc["atoms"]]


# ---------------------------------------------------------------------------
# report output

def _format_float(x: float) -> str:
    return repr(float(x))


def write_report(report: ExperimentReport, out_dir: str,
                 manifest: Optional[dict] = None) -> dict:
    """Write report JSON, records CSV and (optionally) a manifest.

    The CSV is byte-stable for a fixed report: one row per record with
    header ``replication,N,stat`` (scalar) or ``replication,N,stat_0..``.
    """
    os.makedirs(out_dir, exist_ok=True)
    paths = {
        "report": os.path.join(out_dir, "report.json"),
        "records": os.path.join(out_dir, "records.csv"),
    }
    width = report.stat_width
    header = "replication,N,stat" if width == 1 else \
        "replication,N," + ",".join(f"stat_{i}" for i in range(width))
    lines = [header]
    for rep, n, stat in report.records:
        lines.append(f"{rep},{n}," + ",".join(_format_float(s) for s in stat))
    with open(paths["records"], "w", encoding="utf-8", newline="") as fh:
        fh.write("\n".join(lines) + "\n")

    doc = {
        "experiment": report.experiment,
        "config": report.config,
        "moments": report.moments,
        "verdicts": report.verdicts,
        "discarded": report.discarded,
        "duration_seconds": report.duration_seconds,
        "passed": report.passed(),
        "record_count": len(report.records),
    }
    with open(paths["report"], "w", encoding="utf-8") as fh:
        json.dump(doc, fh, indent=2, sort_keys=True, default=_json_default)
        fh.write("\n")

    if manifest is not None:
        paths["manifest"] = os.path.join(out_dir, "manifest.json")
        manifest = dict(manifest)
        manifest["artifacts"] = ["report.json", "records.csv"]
        manifest["tool_version"] = __version__
        with open(paths["manifest"], "w", encoding="utf-8") as fh:
            json.dump(manifest, fh, indent=2, sort_keys=True, default=_json_default)
            fh.write("\n")
    return paths


def _json_default(obj):
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, (np.floating, np.integer, np.bool_)):
        return obj.item()
    raise TypeError(f"cannot serialize {type(obj)!r}")


# ---------------------------------------------------------------------------
# argument plumbing

def _parse_numbers(text: str, what: str) -> list[float]:
    try:
        values = [float(part) for part in text.split(",") if part != ""]
    except ValueError as exc:
        raise UsageError(f"invalid {what}: {text!r}") from exc
    if not values:
        raise UsageError(f"empty {what}")
    return values


def _parse_sizes(text: str) -> tuple[int, ...]:
    sizes = []
    for part in text.split(","):
        if part == "":
            continue
        try:
            sizes.append(int(part))
        except ValueError as exc:
            raise UsageError(f"invalid sample size {part!r}") from exc
    if not sizes:
        raise UsageError("empty size list")
    return tuple(sizes)


def build_parser() -> _Parser:
    parser = _Parser(prog="setmeans",
                     description="Convex random-set expectations and sample-mean experiments.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("expectation", help="print the vertices of the expected body")
    p.add_argument("--scene", required=True)

    p = sub.add_parser("hausdorff", help="distances between the expectations of two scenes")
    p.add_argument("scene_a")
    p.add_argument("scene_b")
    p.add_argument("--grid", type=int, default=3600)

    p = sub.add_parser("face", help="support face of the expectation in a direction")
    p.add_argument("--scene", required=True)
    p.add_argument("--dir", required=True)

    p = sub.add_parser("nearest", help="nearest point of the expectation to a query point")
    p.add_argument("--scene", required=True)
    p.add_argument("--point", required=True)

    p = sub.add_parser("sfs-bound", help="raw-sum convexification gap of the scene's vertex sets")
    p.add_argument("--scene", required=True)
    p.add_argument("--repeat", type=int, default=1)

    p = sub.add_parser("simulate", help="run a seeded sample-mean experiment")
    p.add_argument("kind", choices=SIMULATE_KINDS)
    p.add_argument("--scene", required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--reps", type=int, required=True)
    p.add_argument("--sizes", required=True)
    p.add_argument("--dir", default=None)
    p.add_argument("--point", default=None)
    p.add_argument("--out", required=True)

    p = sub.add_parser("replay", help="re-run a simulate command from its manifest")
    p.add_argument("manifest")
    p.add_argument("--out", required=True)
    return parser


def _print_body(body: ConvexBody, file=None):
    for row in body.vertices:
        print(" ".join(_format_float(c) for c in row), file=file or sys.stdout)


def _run_simulate(kind: str, scene_path: str, seed: int, reps: int,
                  sizes: tuple[int, ...], direction, point, out_dir: str) -> int:
    y = load_scene(scene_path)
    config = ExperimentConfig(master_seed=seed, sample_sizes=sizes, replications=reps)
    if kind in ("clt-exposed", "clt-tangent", "facet-freq"):
        if direction is None:
            raise UsageError(f"simulate {kind} requires --dir")
        vec = np.asarray(direction, dtype=float)
        if vec.shape[0] != y.dim:
            raise UsageError(f"--dir must have {y.dim} components")
    if kind == "clt-facet":
        if point is None:
            raise UsageError("simulate clt-facet requires --point")
        pt = np.asarray(point, dtype=float)
        if pt.shape[0] != y.dim:
            raise UsageError(f"--point must have {y.dim} components")

    if kind == "lln":
        report = lln_experiment(y, config)
    elif kind == "clt-hausdorff":
        report = clt_hausdorff_experiment(y, config)
    elif kind == "clt-exposed":
        report = clt_exposed_experiment(y, vec, config)
    elif kind == "clt-tangent":
        report = clt_tangent_experiment(y, vec, config)
    elif kind == "clt-facet":
        report = clt_facet_experiment(y, pt, config)
    else:
        report = facet_frequency_experiment(y, vec, config)

    manifest = {
        "command": "simulate",
        "kind": kind,
        "config": {
            "scene": scene_path,
            "seed": seed,
            "reps": reps,
            "sizes": list(sizes),
            "dir": list(direction) if direction is not None else None,
            "point": list(point) if point is not None else None,
        },
        "master_seed": seed,
        "created_unix": int(time.time()),
    }
    paths = write_report(report, out_dir, manifest=manifest)
    print(f"wrote {paths['report']}")
    print(f"wrote {paths['records']}")
    for name, verdict in report.verdicts.items():
        print(f"verdict {name}: {'pass' if verdict['pass'] else 'FAIL'}")
    if not report.passed():
        print(f"verdict failure: {', '.join(report.failed_verdicts())}", file=sys.stderr)
        return 2
    return 0


def run_command(argv) -> int:
    """Execute one CLI invocation; returns the process exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1

    try:
        if args.command == "expectation":
            _print_body(expectation(load_scene(args.scene)))
            return 0

        if args.command == "hausdorff":
            a = expectation(load_scene(args.scene_a))
            b = expectation(load_scene(args.scene_b))
            exact = hausdorff(a, b)
            approx = hausdorff_via_support(a, b, args.grid)
            print(f"exact {_format_float(exact)}")
            print(f"grid[m={args.grid}] {_format_float(approx)}")
            return 0

        if args.command == "face":
            y = load_scene(args.scene)
            direction = _parse_numbers(args.dir, "direction")
            cert = support_face(expectation(y), direction)
            print("direction " + " ".join(_format_float(c) for c in cert.direction))
            print(f"support_value {_format_float(cert.support_value)}")
            print(f"is_exposed {str(cert.is_exposed).lower()}")
            if cert.facet_direction is not None:
                print("facet_direction " + " ".join(_format_float(c) for c in cert.facet_direction))
            print("face_vertices:")
            _print_body(cert.face)
            return 0

        if args.command == "nearest":
            y = load_scene(args.scene)
            point = _parse_numbers(args.point, "point")
            ey = expectation(y)
            k = nearest_point(ey, point)
            print("nearest " + " ".join(_format_float(c) for c in k))
            print(f"distance {_format_float(point_distance(ey, point))}")
            return 0

        if args.command == "sfs-bound":
            if args.repeat < 1:
                raise UsageError("--repeat must be positive")
            sets = load_scene_point_sets(args.scene) * args.repeat
            gap, bound = shapley_folkman_gap(sets)
            print(f"sets {len(sets)}")
            print(f"gap {_format_float(gap)}")
            print(f"bound {_format_float(bound)}")
            print(f"within_bound {str(gap <= bound + 1e-12).lower()}")
            return 0

        if args.command == "simulate":
            if args.reps < 1:
                raise UsageError("--reps must be positive")
            direction = _parse_numbers(args.dir, "direction") if args.dir is not None else None
            point = _parse_numbers(args.point, "point") if args.point is not None else None
            return _run_simulate(args.kind, args.scene, args.seed, args.reps,
                                 _parse_sizes(args.sizes), direction, point, args.out)

        if args.command == "replay":
            with open(args.manifest, "r", encoding="utf-8") as fh:
                manifest = json.load(fh)
            if manifest.get("command") != "simulate":
                raise UsageError("manifest does not describe a simulate run")
            cfg = manifest["config"]
            return _run_simulate(manifest["kind"], cfg["scene"], int(cfg["seed"]),
                                 int(cfg["reps"]), tuple(int(n) for n in cfg["sizes"]),
                                 cfg.get("dir"), cfg.get("point"), args.out)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except SceneError as exc:
        print(f"error: scene: {exc}", file=sys.stderr)
        return 1
    except _USAGE_ERRORS as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    raise AssertionError("unreachable")


def entry():
    sys.exit(run_command(sys.argv[1:]))


if __name__ == "__main__":
    entry()
