"""Command-line entry point.

Every command prints JSON on stdout (``--format text`` for a terse human form),
writes diagnostics to stderr, and exits 0 on success, 1 on domain errors and
2 on usage errors. All numbers are exact rational strings.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import census as census_mod
from .combinatorics import canonical_certificate, isometry_induced_automorphisms, is_similar
from .exact_math import format_rational, parse_rational
from .kr_norm import gauge_norm, optimal_plan, transport_norm
from .metric_space import (
    DistanceMatrix,
    LabeledPoint,
    euclidean_type_test,
    extremality_metric_test,
    parse_distance_matrix,
    require_metric,
    validate_metric,
)
from .polytope import (
    VRepresentation,
    build_face_lattice,
    build_fundamental_polytope,
    enumerate_facets,
    f_vector,
    hrep_to_json,
    lattice_to_json,
    vertex_facet_incidence,
    vrep_to_json,
)


class DomainError(Exception):
    pass


def _load(path: str) -> DistanceMatrix | VRepresentation:
    """A distance matrix (text or JSON) or a V-representation previously emitted by ``polytope --vrep``."""
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise DomainError(f"{path}: {exc.strerror}") from None
    stripped = text.strip()
    if stripped.startswith("{"):
        try:
            obj = json.loads(stripped)
        except json.JSONDecodeError as exc:
            raise DomainError(f"{path}: invalid JSON: {exc}") from None
        if isinstance(obj, dict) and "vrep" in obj:
            obj = obj["vrep"]
        if isinstance(obj, dict) and "points" in obj:
            return _vrep_from_json(obj, path)
    try:
        return parse_distance_matrix(text)
    except ValueError as exc:
        raise DomainError(f"{path}: {exc}") from None


def _vrep_from_json(obj: dict, path: str) -> VRepresentation:
    try:
        points = tuple(
            LabeledPoint(p["from"], p["to"], tuple(parse_rational(c) for c in p["coords"])) for p in obj["points"]
        )
        flags = tuple(bool(p["is_vertex"]) for p in obj["points"])
        return VRepresentation(int(obj["ambient_dim"]), points, flags)
    except (KeyError, TypeError, ValueError) as exc:
        raise DomainError(f"{path}: malformed V-representation: {exc}") from None


def _load_metric(path: str) -> DistanceMatrix:
    D = _load(path)
    if not isinstance(D, DistanceMatrix):
        raise DomainError(f"{path}: expected a distance matrix")
    return D


def _require_metric(D: DistanceMatrix, path: str) -> None:
    try:
        require_metric(D)
    except ValueError as exc:
        raise DomainError(f"{path}: {exc}") from None


def _parse_vector(tokens: list[str]) -> list:
    try:
        return [parse_rational(t) for tok in tokens for t in tok.split()]
    except ValueError as exc:
        raise DomainError(str(exc)) from None


def _vrep_for(source, path: str) -> VRepresentation:
    if isinstance(source, VRepresentation):
        return source
    if not source.is_symmetric_positive():
        raise DomainError(f"{path}: distances must be symmetric and positive")
    if not validate_metric(source).is_valid:
        print(f"warning: {path} is not a metric; building the polytope anyway", file=sys.stderr)
    return build_fundamental_polytope(source)


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def cmd_validate(args) -> dict:
    D = _load_metric(args.matrix)
    report = validate_metric(D)
    extremal = extremality_metric_test(D) if D.is_symmetric_positive() else False
    return {
        "is_metric_axioms": report.is_valid,
        "is_metric_extremality": extremal,
        "violations": [{"kind": kind, "witness": list(w)} for kind, w in report.violations],
    }


def cmd_polytope(args) -> dict:
    V = _vrep_for(_load(args.matrix), args.matrix)
    wanted = [k for k in ("vrep", "hrep", "lattice", "fvector") if getattr(args, k)] or ["fvector"]
    try:
        H = enumerate_facets(V)
    except ValueError as exc:
        raise DomainError(str(exc)) from None
    inc = vertex_facet_incidence(V, H)
    lattice = build_face_lattice(inc)
    out: dict = {}
    if "vrep" in wanted:
        out["vrep"] = vrep_to_json(V)
    if "hrep" in wanted:
        out["hrep"] = hrep_to_json(H)
    if "lattice" in wanted:
        out["lattice"] = lattice_to_json(lattice, inc)
    if "fvector" in wanted:
        out["fvector"] = str(f_vector(lattice))
    return out


def cmd_canon(args) -> dict:
    source = _load(args.matrix)
    V = _vrep_for(source, args.matrix)
    try:
        H = enumerate_facets(V)
    except ValueError as exc:
        raise DomainError(str(exc)) from None
    ctype = canonical_certificate(vertex_facet_incidence(V, H))
    out = {
        "digest": ctype.digest,
        "certificate": ctype.certificate,
        "automorphism_order": ctype.automorphism_order,
        "num_vertices": ctype.num_vertices,
        "num_facets": ctype.num_facets,
    }
    if isinstance(source, DistanceMatrix) and validate_metric(source).is_valid:
        out["isometry_group_order"] = len(isometry_induced_automorphisms(source))
    return out


def cmd_similar(args) -> dict:
    D1, D2 = _load_metric(args.first), _load_metric(args.second)
    _require_metric(D1, args.first)
    _require_metric(D2, args.second)
    return {"similar": is_similar(D1, D2)}


def _norm_payload(args, with_plan: bool) -> dict:
    D = _load_metric(args.matrix)
    _require_metric(D, args.matrix)
    v = _parse_vector(args.vector)
    if len(v) != D.n:
        raise DomainError(f"vector has {len(v)} coordinates, matrix has {D.n} points")
    if sum(v) != 0:
        raise DomainError(f"vector coordinates sum to {format_rational(sum(v))}, not 0")
    H = enumerate_facets(build_fundamental_polytope(D))
    lp, gauge = transport_norm(D, v), gauge_norm(H, v)
    out = {"lp_value": format_rational(lp), "gauge_value": format_rational(gauge), "equal": lp == gauge}
    if with_plan:
        out["plan"] = [[format_rational(x) for x in row] for row in optimal_plan(D, v).psi]
    return out


def cmd_norm(args) -> dict:
    return _norm_payload(args, with_plan=False)


def cmd_plan(args) -> dict:
    return _norm_payload(args, with_plan=True)


def cmd_census(args) -> dict:
    params = census_mod.SamplerParams(args.mode, args.bound, args.strict)
    inject = [DistanceMatrix.unit(args.n)] if args.inject_unit else []
    try:
        registry = census_mod.run_census(args.n, args.samples, args.seed, params, args.workers, inject)
    except ValueError as exc:
        raise DomainError(str(exc)) from None
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        census_mod.write_registry_jsonl(registry, out / "registry.jsonl")
        census_mod.write_snapshot(registry, out / "snapshot.json")
    return census_mod.registry_report(registry)


def cmd_embed_check(args) -> dict:
    D = _load_metric(args.matrix)
    _require_metric(D, args.matrix)
    return {"euclidean": euclidean_type_test(D)}


def cmd_root(args) -> dict:
    if args.n < 2:
        raise DomainError("n must be at least 2")
    return DistanceMatrix.unit(args.n).to_json()


# ---------------------------------------------------------------------------
# text rendering
# ---------------------------------------------------------------------------


def _as_text(command: str, payload: dict) -> str:
    if command == "census":
        return census_mod.format_report(payload)
    if command == "root":
        return DistanceMatrix(payload["d"]).to_text()
    if command == "polytope" and list(payload) == ["fvector"]:
        return payload["fvector"] + "\n"
    lines = []
    for key, value in payload.items():
        if isinstance(value, (dict, list)):
            value = json.dumps(value, sort_keys=True)
        elif isinstance(value, bool):
            value = str(value).lower()
        lines.append(f"{key}: {value}")
    return "\n".join(lines) + "\n"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="krpoly", description=__doc__.splitlines()[0])
    parser.add_argument("--format", choices=("json", "text"), default="json")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check metric axioms and the extremality criterion")
    p.add_argument("matrix")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("polytope", help="V-rep, H-rep, face lattice, f-vector")
    p.add_argument("matrix", help="distance matrix, or a V-rep JSON emitted by --vrep")
    p.add_argument("--vrep", "--frep", action="store_true", dest="vrep")
    p.add_argument("--hrep", action="store_true")
    p.add_argument("--lattice", action="store_true")
    p.add_argument("--fvector", action="store_true")
    p.set_defaults(func=cmd_polytope)

    p = sub.add_parser("canon", help="canonical combinatorial certificate")
    p.add_argument("matrix")
    p.set_defaults(func=cmd_canon)

    p = sub.add_parser("similar", help="compare combinatorial types of two metrics")
    p.add_argument("first")
    p.add_argument("second")
    p.set_defaults(func=cmd_similar)

    for name, func in (("norm", cmd_norm), ("plan", cmd_plan)):
        p = sub.add_parser(name, help="Kantorovich-Rubinstein norm of a sum-zero vector")
        p.add_argument("matrix")
        p.add_argument("vector", nargs="+", help="rationals; quote them or put '--' before negative entries")
        p.set_defaults(func=func)

    p = sub.add_parser("census", help="sample metrics and count combinatorial types")
    p.add_argument("n", type=int)
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--mode", choices=("closure", "euclidean"), default="closure")
    p.add_argument("--bound", type=int, default=1000, help="denominator bound of sampled rationals")
    p.add_argument("--strict", action="store_true", help="resample until all triangle inequalities are strict")
    p.add_argument("--inject-unit", action="store_true", help="add the unit metric as an extra sample")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out", help="directory for registry.jsonl and snapshot.json")
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("embed-check", help="Euclidean embeddability")
    p.add_argument("matrix")
    p.set_defaults(func=cmd_embed_check)

    p = sub.add_parser("root", help="emit the unit metric on n points")
    p.add_argument("n", type=int)
    p.set_defaults(func=cmd_root)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        payload = args.func(args)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if args.format == "text":
        sys.stdout.write(_as_text(args.command, payload))
    else:
        sys.stdout.write(json.dumps(payload, sort_keys=True, indent=2) + "\n")
    return 0


if __name__ == "__main__":
    sys.exit(main())
