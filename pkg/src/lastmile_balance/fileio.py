"""JSON instance/result files, CSV tables and GeoJSON assignment maps.

Instance document::

    {
      "name": "day-1",
      "depot": [x, y],
      "speed_m_s": 1.3889,          # or "speed_km_h": 5, exactly one of the two
      "default_t_in_s": 57.64,      # optional, per-point fallback
      "default_t_ex_s": 132.76,     # optional, per-point fallback
      "n_workers": 12,
      "points": [{"id": 0, "x": ..., "y": ..., "t_in_s": ..., "t_ex_s": ...}, ...]
    }
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import asdict, fields
from pathlib import Path

import numpy as np

from .bench import BREAKDOWN_COLUMNS, RunStats, breakdown_report
from .exceptions import BalanceError, InstanceFormatError
from .generate import GeneratorSpec
from .model import DEFAULT_T_EX, DEFAULT_T_IN, KMH_TO_MS, DeliveryPoint, Evaluation, Instance


def _number(doc, key, where="document"):
    if key not in doc:
        raise InstanceFormatError(f"{where}: missing field {key!r}", key)
    v = doc[key]
    if isinstance(v, bool) or not isinstance(v, (int, float)) or not math.isfinite(v):
        raise InstanceFormatError(f"{where}: field {key!r} must be a finite number, got {v!r}", key)
    return float(v)


def instance_from_dict(doc: dict) -> Instance:
    if not isinstance(doc, dict):
        raise InstanceFormatError("instance document must be a JSON object")
    has_ms, has_kmh = "speed_m_s" in doc, "speed_km_h" in doc
    if has_ms == has_kmh:
        raise InstanceFormatError("exactly one of 'speed_m_s' / 'speed_km_h' is required", "speed_m_s")
    speed = _number(doc, "speed_m_s") if has_ms else _number(doc, "speed_km_h") * KMH_TO_MS
    if speed <= 0:
        raise InstanceFormatError(f"speed must be positive, got {speed}", "speed_m_s" if has_ms else "speed_km_h")

    depot = doc.get("depot")
    if not isinstance(depot, (list, tuple)) or len(depot) != 2:
        raise InstanceFormatError("'depot' must be a pair [x, y]", "depot")
    depot = (_number({"x": depot[0]}, "x", "depot"), _number({"y": depot[1]}, "y", "depot"))

    if "n_workers" not in doc:
        raise InstanceFormatError("missing field 'n_workers'", "n_workers")
    n_workers = doc["n_workers"]
    if isinstance(n_workers, bool) or not isinstance(n_workers, int) or n_workers < 1:
        raise InstanceFormatError(f"'n_workers' must be a positive integer, got {n_workers!r}", "n_workers")

    d_in = _number(doc, "default_t_in_s") if "default_t_in_s" in doc else DEFAULT_T_IN
    d_ex = _number(doc, "default_t_ex_s") if "default_t_ex_s" in doc else DEFAULT_T_EX

    raw = doc.get("points")
    if not isinstance(raw, list) or not raw:
        raise InstanceFormatError("'points' must be a non-empty list", "points")
    points = {}
    for k, p in enumerate(raw):
        where = f"points[{k}]"
        if not isinstance(p, dict):
            raise InstanceFormatError(f"{where} must be an object", "points")
        if "id" not in p or isinstance(p["id"], bool) or not isinstance(p["id"], int):
            raise InstanceFormatError(f"{where}: 'id' must be an integer", "id")
        pid = p["id"]
        if pid in points:
            raise InstanceFormatError(f"duplicate point id {pid}", "id")
        t_in = _number(p, "t_in_s", where) if "t_in_s" in p else d_in
        t_ex = _number(p, "t_ex_s", where) if "t_ex_s" in p else d_ex
        if t_in < 0 or t_ex < 0:
            raise InstanceFormatError(f"{where}: handling times must be non-negative", "t_in_s")
        points[pid] = DeliveryPoint(pid, _number(p, "x", where), _number(p, "y", where), t_in, t_ex)
    if sorted(points) != list(range(len(points))):
        raise InstanceFormatError("point ids must be exactly 0..N_p-1", "id")
    try:
        return Instance(depot, tuple(points[i] for i in range(len(points))), n_workers, speed,
                        str(doc.get("name", "")), d_in, d_ex)
    except BalanceError as exc:
        raise InstanceFormatError(str(exc), "n_workers") from exc


def instance_to_dict(instance: Instance) -> dict:
    return {
        "name": instance.name,
        "depot": [instance.depot[0], instance.depot[1]],
        "speed_m_s": instance.speed,
        "default_t_in_s": instance.default_t_in,
        "default_t_ex_s": instance.default_t_ex,
        "n_workers": instance.n_workers,
        "points": [{"id": p.id, "x": p.x, "y": p.y, "t_in_s": p.t_in, "t_ex_s": p.t_ex}
                   for p in instance.points],
    }


def load_instance(path) -> Instance:
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except json.JSONDecodeError as exc:
        raise InstanceFormatError(f"{path}: not valid JSON ({exc})") from exc
    return instance_from_dict(doc)


def save_instance(instance: Instance, path) -> None:
    _write_json(instance_to_dict(instance), path)


def _write_json(doc, path) -> None:
    Path(path).write_text(json.dumps(doc, indent=2) + "\n")


def load_generator_spec(path) -> GeneratorSpec:
    doc = json.loads(Path(path).read_text())
    known = {f.name for f in fields(GeneratorSpec)}
    unknown = set(doc) - known
    if unknown:
        raise InstanceFormatError(f"unknown generator fields: {sorted(unknown)}", sorted(unknown)[0])
    if "bbox" in doc:
        doc["bbox"] = tuple(doc["bbox"])
    return GeneratorSpec(**doc)


def generator_spec_to_dict(spec: GeneratorSpec) -> dict:
    d = asdict(spec)
    d["bbox"] = list(d["bbox"])
    return d


def breakdown_dicts(evaluation: Evaluation) -> list[dict]:
    return [dict(zip(BREAKDOWN_COLUMNS, row)) for row in breakdown_report(evaluation)]


def result_to_dict(algorithm: str, seed: int, params: dict, result, instance: Instance) -> dict:
    """Serializable solve result. Wall time is left out so files are reproducible."""
    ev = result.best_evaluation
    doc = {
        "algorithm": algorithm,
        "seed": seed,
        "instance": instance.name,
        "params": params,
        "fitness_s": ev.fitness,
        "total_time_s": ev.total_time,
        "assignment": [int(a) for a in result.best_solution],
        "per_worker": breakdown_dicts(ev),
        "history": [float(h) for h in result.history],
        "generations": result.generations,
        "evaluations": result.evaluations,
    }
    if result.circles is not None:
        doc["circles"] = [[float(v) for v in c] for c in np.asarray(result.circles)]
    return doc


def save_result(doc: dict, path) -> None:
    _write_json(doc, path)


def write_breakdown_csv(evaluation: Evaluation, path) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(BREAKDOWN_COLUMNS)
        for row in breakdown_report(evaluation):
            w.writerow([row.worker] + [repr(float(v)) for v in row[1:]])


STATS_COLUMNS = ("algorithm", "n_runs", "min_s", "max_s", "mean_s", "std_s")


def write_stats_csv(stats, path, per_run_path=None) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(STATS_COLUMNS)
        for s in stats:
            w.writerow([s.algorithm, s.n_runs, repr(s.min_s), repr(s.max_s), repr(s.mean_s), repr(s.std_s)])
    if per_run_path is not None:
        with open(per_run_path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(("algorithm", "seed", "fitness_s", "total_time_s", "wall_time_s"))
            for s in stats:
                for r in s.per_run:
                    w.writerow([s.algorithm, r.seed, repr(r.fitness), repr(r.total_time), repr(r.wall_time)])


def read_stats_csv(path) -> list[RunStats]:
    with open(path, newline="") as fh:
        rows = list(csv.DictReader(fh))
    return [RunStats(r["algorithm"], int(r["n_runs"]), float(r["min_s"]), float(r["max_s"]),
                     float(r["mean_s"]), float(r["std_s"]), ()) for r in rows]


def export_assignment_geojson(instance: Instance, assignment, path) -> None:
    """One Point feature per delivery (``id``, ``worker``) plus the depot (``role: depot``).

    Coordinates are written as-is (planar meters); no CRS is implied.
    """
    assignment = np.asarray(assignment, dtype=np.int64)
    features = [{
        "type": "Feature",
        "geometry": {"type": "Point", "coordinates": [p.x, p.y]},
        "properties": {"role": "delivery", "id": p.id, "worker": int(assignment[p.id])},
    } for p in instance.points]
    features.append({
        "type": "Feature",
        "geometry": {"type": "Point", "coordinates": list(instance.depot)},
        "properties": {"role": "depot"},
    })
    _write_json({"type": "FeatureCollection", "features": features}, path)


def read_assignment_geojson(path) -> np.ndarray:
    doc = json.loads(Path(path).read_text())
    pairs = [(f["properties"]["id"], f["properties"]["worker"]) for f in doc["features"]
             if f["properties"].get("role") == "delivery"]
    out = np.empty(len(pairs), dtype=np.int64)
    for pid, w in pairs:
        out[pid] = w
    return out
