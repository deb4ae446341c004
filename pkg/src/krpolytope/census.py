"""Census of combinatorial types over randomly sampled metrics.

Every sample ``i`` of a run with seed ``s`` is drawn from its own generator
keyed by ``(s, i)``, so a registry does not depend on how samples are split
across workers. Registries merge by adding counts per certificate; the stored
representative is always the sample with the smallest ``(seed, index)``,
which makes merging commutative and associative.
"""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Sequence

from .combinatorics import canonical_certificate
from .metric_space import DistanceMatrix, euclidean_type_test, parse_distance_matrix, random_metric
from .polytope import analyze, facet_size_histogram

FORMAT_VERSION = "1"
MIN_N, MAX_N = 3, 6


@dataclass(frozen=True)
class CensusRecord:
    n: int
    digest: str
    certificate: str
    sample_count: int
    representative: DistanceMatrix
    first_seen: tuple[int, int]
    f_vector: tuple[int, ...]
    facet_size_histogram: dict[int, int]
    automorphism_order: int
    euclidean_count: int
    candidate_generic: bool

    def to_json(self) -> dict:
        return {
            "format_version": FORMAT_VERSION,
            "n": self.n,
            "digest": self.digest,
            "certificate": self.certificate,
            "sample_count": self.sample_count,
            "representative": self.representative.to_json(),
            "first_seen": list(self.first_seen),
            "f_vector": list(self.f_vector),
            "facet_size_histogram": {str(k): v for k, v in sorted(self.facet_size_histogram.items())},
            "automorphism_order": self.automorphism_order,
            "euclidean_count": self.euclidean_count,
            "candidate_generic": self.candidate_generic,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "CensusRecord":
        return cls(
            n=obj["n"],
            digest=obj["digest"],
            certificate=obj["certificate"],
            sample_count=obj["sample_count"],
            representative=parse_distance_matrix(json.dumps(obj["representative"])),
            first_seen=tuple(obj["first_seen"]),
            f_vector=tuple(obj["f_vector"]),
            facet_size_histogram={int(k): v for k, v in obj["facet_size_histogram"].items()},
            automorphism_order=obj["automorphism_order"],
            euclidean_count=obj["euclidean_count"],
            candidate_generic=obj["candidate_generic"],
        )


@dataclass(frozen=True)
class SamplerParams:
    mode: str = "closure"
    denominator_bound: int = 1000
    strict: bool = False

    def to_json(self) -> dict:
        return {"mode": self.mode, "denominator_bound": self.denominator_bound, "strict": self.strict}


@dataclass
class TypeRegistry:
    n: int
    sampler: SamplerParams = field(default_factory=SamplerParams)
    records: dict[str, CensusRecord] = field(default_factory=dict)
    total_samples: int = 0
    seeds: tuple[int, ...] = ()

    def add(self, record: CensusRecord) -> None:
        old = self.records.get(record.digest)
        self.total_samples += record.sample_count
        if old is None:
            self.records[record.digest] = record
            return
        if old.certificate != record.certificate:
            raise RuntimeError(f"certificate digest collision on {record.digest}")
        keep = old if old.first_seen <= record.first_seen else record
        self.records[record.digest] = replace(
            keep,
            sample_count=old.sample_count + record.sample_count,
            euclidean_count=old.euclidean_count + record.euclidean_count,
        )

    def sorted_records(self) -> list[CensusRecord]:
        return sorted(self.records.values(), key=lambda r: r.digest)

    def to_json(self) -> dict:
        return {
            "format_version": FORMAT_VERSION,
            "n": self.n,
            "sampler": self.sampler.to_json(),
            "seeds": list(self.seeds),
            "total_samples": self.total_samples,
            "records": [r.to_json() for r in self.sorted_records()],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "TypeRegistry":
        if obj.get("format_version") != FORMAT_VERSION:
            raise ValueError(f"unsupported registry format {obj.get('format_version')!r}")
        reg = cls(obj["n"], SamplerParams(**obj["sampler"]), seeds=tuple(obj["seeds"]))
        for rec in obj["records"]:
            reg.add(CensusRecord.from_json(rec))
        if reg.total_samples != obj["total_samples"]:
            raise ValueError("total_samples does not match the records")
        return reg


def classify_sample(D: DistanceMatrix, first_seen: tuple[int, int]) -> CensusRecord:
    """Run the full pipeline on one metric and package it as a one-sample record."""
    data = analyze(D)
    ctype = canonical_certificate(data.incidence)
    hist = facet_size_histogram(data.incidence)
    dim = D.n - 1
    generic = all(data.vrep.is_vertex) and set(hist) == {dim}
    return CensusRecord(
        n=D.n,
        digest=ctype.digest,
        certificate=ctype.certificate,
        sample_count=1,
        representative=D,
        first_seen=first_seen,
        f_vector=data.fvector.counts,
        facet_size_histogram=hist,
        automorphism_order=ctype.automorphism_order,
        euclidean_count=int(euclidean_type_test(D)),
        candidate_generic=generic,
    )


def _sample_metric(n: int, seed: int, index: int, params: SamplerParams) -> DistanceMatrix:
    return random_metric(n, f"{seed}:{index}", params.denominator_bound, params.mode, params.strict)


def _run_chunk(args) -> TypeRegistry:
    n, seed, indices, params, injected = args
    reg = TypeRegistry(n, params, seeds=(seed,))
    for i in indices:
        D = injected[i] if i in injected else _sample_metric(n, seed, i, params)
        reg.add(classify_sample(D, (seed, i)))
    return reg


def run_census(
    n: int,
    samples: int,
    seed: int,
    params: SamplerParams | None = None,
    workers: int = 1,
    inject: Sequence[DistanceMatrix] = (),
) -> TypeRegistry:
    """Sample ``samples`` metrics and bucket them by combinatorial type.

    ``inject`` appends fixed metrics (e.g. the unit metric) after the random
    samples; they count as samples with the following indices.
    """
    if not MIN_N <= n <= MAX_N:
        raise ValueError(f"census supports {MIN_N} <= n <= {MAX_N}; got n={n} (face lattices grow too fast beyond)")
    if samples < 1:
        raise ValueError("samples must be at least 1")
    params = params or SamplerParams()
    injected = {samples + k: D for k, D in enumerate(inject)}
    for D in inject:
        if D.n != n:
            raise ValueError("injected metric has the wrong number of points")
    total = samples + len(injected)
    workers = max(1, min(workers, total))
    chunks = [(n, seed, range(w, total, workers), params, injected) for w in range(workers)]
    if workers == 1:
        parts = [_run_chunk(chunks[0])]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_run_chunk, chunks))
    registry = TypeRegistry(n, params, seeds=(seed,))
    for part in parts:
        registry = merge_registries(registry, part)
    return registry


def merge_registries(r1: TypeRegistry, r2: TypeRegistry) -> TypeRegistry:
    if r1.n != r2.n:
        raise ValueError(f"cannot merge registries for n={r1.n} and n={r2.n}")
    if r1.sampler.mode != r2.sampler.mode:
        raise ValueError(f"cannot merge sampler modes {r1.sampler.mode!r} and {r2.sampler.mode!r}")
    # differing bounds or strictness: keep a deterministic choice so merging stays commutative
    params = min(r1.sampler, r2.sampler, key=lambda p: (p.denominator_bound, p.strict))
    merged = TypeRegistry(r1.n, params, seeds=tuple(sorted(set(r1.seeds) | set(r2.seeds))))
    for rec in list(r1.records.values()) + list(r2.records.values()):
        merged.add(rec)
    return merged


# ---------------------------------------------------------------------------
# persistence
# ---------------------------------------------------------------------------


def _dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def write_registry_jsonl(registry: TypeRegistry, path: str | Path, append: bool = False) -> None:
    with open(path, "a" if append else "w", encoding="utf-8") as fh:
        for rec in registry.sorted_records():
            fh.write(_dumps(rec.to_json()) + "\n")


def read_registry_jsonl(path: str | Path) -> list[CensusRecord]:
    with open(path, encoding="utf-8") as fh:
        return [CensusRecord.from_json(json.loads(line)) for line in fh if line.strip()]


def write_snapshot(registry: TypeRegistry, path: str | Path) -> None:
    Path(path).write_text(json.dumps(registry.to_json(), sort_keys=True, indent=1) + "\n", encoding="utf-8")


def read_snapshot(path: str | Path) -> TypeRegistry:
    return TypeRegistry.from_json(json.loads(Path(path).read_text(encoding="utf-8")))


# ---------------------------------------------------------------------------
# reporting
# ---------------------------------------------------------------------------


def registry_report(registry: TypeRegistry) -> dict:
    """Types by frequency, plus which types were realized by a Euclidean-embeddable sample."""
    records = sorted(registry.records.values(), key=lambda r: (-r.sample_count, r.digest))
    rows = [
        {
            "digest": r.digest[:16],
            "f_vector": "(" + ",".join(map(str, r.f_vector)) + ")",
            "facet_size_histogram": {str(k): v for k, v in sorted(r.facet_size_histogram.items())},
            "sample_count": r.sample_count,
            "euclidean_count": r.euclidean_count,
            "automorphism_order": r.automorphism_order,
            "candidate_generic": r.candidate_generic,
        }
        for r in records
    ]
    euclidean = [row["digest"] for row in rows if row["euclidean_count"] > 0]
    return {
        "n": registry.n,
        "total_samples": registry.total_samples,
        "num_types": len(rows),
        "num_candidate_generic": sum(row["candidate_generic"] for row in rows),
        "euclidean_realized": euclidean,
        "num_euclidean_types": len(euclidean),
        "rows": rows,
    }


def format_report(report: dict) -> str:
    lines = [
        f"n={report['n']}  samples={report['total_samples']}  types={report['num_types']}  "
        f"euclidean-realized={report['num_euclidean_types']}  candidate-generic={report['num_candidate_generic']}",
        f"{'digest':<17}{'f-vector':<24}{'count':>7}{'eucl':>7}{'aut':>7}  generic  facets",
    ]
    for row in report["rows"]:
        hist = " ".join(f"{k}:{v}" for k, v in row["facet_size_histogram"].items())
        lines.append(
            f"{row['digest']:<17}{row['f_vector']:<24}{row['sample_count']:>7}{row['euclidean_count']:>7}"
            f"{row['automorphism_order']:>7}  {'yes' if row['candidate_generic'] else 'no':<7}  {hist}"
        )
    return "\n".join(lines) + "\n"


def reverify(record: CensusRecord) -> bool:
    """Re-run the pipeline on the stored representative and compare everything derivable from it."""
    fresh = classify_sample(record.representative, record.first_seen)
    return (
        fresh.certificate == record.certificate
        and fresh.f_vector == record.f_vector
        and fresh.facet_size_histogram == record.facet_size_histogram
        and fresh.candidate_generic == record.candidate_generic
        and fresh.automorphism_order == record.automorphism_order
    )
