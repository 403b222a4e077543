"""Command handlers shared by the CLI and the HTTP service.

Every handler consumes a parsed graph document plus options and produces a
JSON-ready report with the fields {command, input_hash, verdict, witness?,
certificate?, budget_used} and a process exit code: 0 the property holds or
an artifact was produced, 1 the property fails (witness emitted), 2 the
search budget ran out, 3 invalid input.
"""
from __future__ import annotations

import hashlib
import json
import os
from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Any, Callable, Optional

from . import catalog, mgf, multigraph, orientation, partitions, planar, reducer
from .multigraph import Multigraph, graph_key
from .orientation import Boundary, BudgetExhausted, Orientation

EXIT_HOLDS = 0
EXIT_FAILS = 1
EXIT_BUDGET = 2
EXIT_INPUT = 3


@dataclass
class CommandResult:
    report: dict
    exit_code: int


def input_hash(g: Multigraph) -> str:
    return hashlib.sha256(graph_key(g).encode()).hexdigest()


class VerdictCache:
    """Append-only verdict store keyed by (canonical form, modulus, command)."""

    def __init__(self, path: Optional[str]):
        self.path = path
        self.entries: dict[str, Any] = {}
        if path and os.path.exists(path):
            with open(path) as fh:
                for line in fh:
                    line = line.strip()
                    if not line:
                        continue
                    row = json.loads(line)
                    self.entries[row["key"]] = row["verdict"]

    @staticmethod
    def key(g: Multigraph, k: Optional[int], command: str) -> str:
        return f"{graph_key(g)}|k={k}|{command}"

    def get(self, key: str) -> Optional[Any]:
        return self.entries.get(key)

    def put(self, key: str, verdict: Any) -> None:
        if key in self.entries:
            return
        self.entries[key] = verdict
        if self.path:
            with open(self.path, "a") as fh:
                fh.write(json.dumps({"key": key, "verdict": verdict}) + "\n")


def _jsonable(value: Any) -> Any:
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}"
    if isinstance(value, frozenset):
        return sorted(value)
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if hasattr(value, "__dataclass_fields__"):
        return _jsonable(asdict(value))
    return value


def _partition_json(p: partitions.VertexPartition) -> list[list[int]]:
    return [sorted(part) for part in p.parts]


def _orientation_json(d: Orientation) -> list[list[int]]:
    return [[t, h] for t, h in d.arcs]


def _report(command: str, g: Multigraph, verdict: Any, *, witness: Any = None,
            certificate: Any = None, budget_used: int = 0) -> dict:
    out = {
        "command": command,
        "input_hash": input_hash(g),
        "verdict": verdict,
        "budget_used": budget_used,
    }
    if witness is not None:
        out["witness"] = _jsonable(witness)
    if certificate is not None:
        out["certificate"] = _jsonable(certificate)
    return out


def _parse_beta(raw: str | list[int], n: int, k: int) -> Boundary:
    if isinstance(raw, str):
        try:
            values = [int(x) for x in raw.split(",")]
        except ValueError:
            raise mgf.MgfError("--beta expects comma-separated integers")
    else:
        values = list(raw)
    if len(values) != n:
        raise mgf.MgfError(f"boundary needs {n} values, got {len(values)}")
    if any(not (0 <= b < k) for b in values):
        raise mgf.MgfError(f"boundary residues must lie in 0..{k - 1}")
    if sum(values) % k != 0:
        raise mgf.MgfError("boundary values must sum to 0 mod k")
    return Boundary(k, tuple(values))


def _require_rotation(doc: mgf.GraphDocument) -> planar.RotationSystem:
    if doc.rotation is not None:
        faces = planar.trace_faces(doc.graph, doc.rotation)
        if doc.graph.is_connected() and doc.graph.edge_count:
            euler = doc.graph.vertex_count - doc.graph.edge_count + len(faces.faces)
            if euler != 2:
                raise mgf.MgfError("rotation block is not a planar embedding")
        return doc.rotation
    return planar.embed(doc.graph)


# ---------- handlers ----------


def handle_weight(doc: mgf.GraphDocument, opts: dict) -> CommandResult:
    w, argmin = partitions.graph_weight(doc.graph)
    cert = {"weight": w, "argmin_partition": _partition_json(argmin)}
    return CommandResult(_report("weight", doc.graph, w, certificate=cert), EXIT_HOLDS)


def handle_contractible(doc: mgf.GraphDocument, opts: dict) -> CommandResult:
    ok, witness = catalog.is_s5_contractible(doc.graph)
    if ok:
        return CommandResult(_report("contractible", doc.graph, True), EXIT_HOLDS)
    wjson = dict(witness)
    wjson["partition"] = _partition_json(witness["partition"])
    return CommandResult(
        _report("contractible", doc.graph, False, witness=wjson), EXIT_FAILS
    )


def handle_szk(doc: mgf.GraphDocument, opts: dict) -> CommandResult:
    k = opts.get("k", 5)
    cache: Optional[VerdictCache] = opts.get("cache")
    key = VerdictCache.key(doc.graph, k, "szk") if cache else None
    if cache and key and cache.get(key) is not None:
        cached = cache.get(key)
        ok = cached["ok"]
        witness = cached.get("witness")
        report = _report("szk", doc.graph, ok, witness=witness)
        report["cached"] = True
        return CommandResult(report, EXIT_HOLDS if ok else EXIT_FAILS)
    try:
        ok, witness = orientation.is_strongly_zk(doc.graph, k, opts.get("budget"))
    except BudgetExhausted as exc:
        return CommandResult(
            _report("szk", doc.graph, "budget-exhausted", witness=exc.context),
            EXIT_BUDGET,
        )
    wjson = list(witness.values) if witness else None
    if cache and key:
        cache.put(key, {"ok": ok, "witness": wjson})
    if ok:
        return CommandResult(_report("szk", doc.graph, True), EXIT_HOLDS)
    return CommandResult(
        _report("szk", doc.graph, False, witness={"beta": wjson}), EXIT_FAILS
    )


def handle_orient(doc: mgf.GraphDocument, opts: dict) -> CommandResult:
    k = opts.get("k", 5)
    beta = _parse_beta(opts["beta"], doc.graph.vertex_count, k)
    try:
        d = orientation.find_beta_orientation(doc.graph, beta, opts.get("budget"))
    except BudgetExhausted as exc:
        return CommandResult(
            _report("orient", doc.graph, "budget-exhausted", witness=exc.context),
            EXIT_BUDGET,
        )
    if d is None:
        return CommandResult(
            _report("orient", doc.graph, False, witness={"beta": list(beta.values)}),
            EXIT_FAILS,
        )
    cert = {"k": k, "beta": list(beta.values), "arcs": _orientation_json(d)}
    return CommandResult(_report("orient", doc.graph, True, certificate=cert), EXIT_HOLDS)


def handle_mod_orient(doc: mgf.GraphDocument, opts: dict) -> CommandResult:
    k = opts.get("k", 5)
    try:
        d = orientation.mod_orientation(doc.graph, k, opts.get("budget"))
    except BudgetExhausted as exc:
        return CommandResult(
            _report("mod-orient", doc.graph, "budget-exhausted", witness=exc.context),
            EXIT_BUDGET,
        )
    if d is None:
        return CommandResult(_report("mod-orient", doc.graph, False), EXIT_FAILS)
    cert = {"k": k, "arcs": _orientation_json(d)}
    return CommandResult(
        _report("mod-orient", doc.graph, True, certificate=cert), EXIT_HOLDS
    )


def handle_circular(doc: mgf.GraphDocument, opts: dict) -> CommandResult:
    t = opts.get("t", 2)
    try:
        cert = orientation.circular_flow_cert(doc.graph, t, opts.get("budget"))
    except BudgetExhausted as exc:
        return CommandResult(
            _report("circular", doc.graph, "budget-exhausted", witness=exc.context),
            EXIT_BUDGET,
        )
    if cert is None:
        return CommandResult(_report("circular", doc.graph, False), EXIT_FAILS)
    payload = {
        "kind": list(cert.kind),
        "k": cert.k,
        "values": list(cert.values),
        "arcs": _orientation_json(cert.orientation),
    }
    return CommandResult(
        _report("circular", doc.graph, True, certificate=payload), EXIT_HOLDS
    )


def handle_asf(doc: mgf.GraphDocument, opts: dict) -> CommandResult:
    d = Orientation(tuple(doc.graph.edges))
    try:
        cert = orientation.asf_cert(doc.graph, d, opts.get("budget"))
    except BudgetExhausted as exc:
        return CommandResult(
            _report("asf", doc.graph, "budget-exhausted", witness=exc.context),
            EXIT_BUDGET,
        )
    if cert is None:
        return CommandResult(_report("asf", doc.graph, False), EXIT_FAILS)
    payload = {
        "kind": "antisymmetric",
        "k": cert.k,
        "values": list(cert.values),
        "arcs": _orientation_json(cert.orientation),
    }
    return CommandResult(_report("asf", doc.graph, True, certificate=payload), EXIT_HOLDS)


def _trace_json(step: reducer.TraceStep) -> dict:
    if isinstance(step, reducer.BaseBruteForce):
        return {"kind": "base", "hash": step.hash}
    if isinstance(step, reducer.ContractSubgraph):
        return {
            "kind": "contract",
            "hash": step.hash,
            "subgraph": sorted(step.subgraph),
            "quotient": _trace_json(step.child),
            "inside": _trace_json(step.child_h),
        }
    assert isinstance(step, reducer.LiftAndContract)
    return {
        "kind": "lift-and-contract",
        "hash": step.hash,
        "lifts": [
            {
                "path": list(l.path),
                "edge_ids": list(l.edge_ids),
                "face_witness": sorted(w),
            }
            for l, w in zip(step.lifts, step.face_witnesses)
        ],
        "subgraph": sorted(step.subgraph),
        "quotient": _trace_json(step.child),
        "inside": _trace_json(step.child_h),
    }


def handle_reduce(doc: mgf.GraphDocument, opts: dict) -> CommandResult:
    try:
        rot = _require_rotation(doc)
    except planar.NonPlanarError as exc:
        return CommandResult(
            _report("reduce", doc.graph, False, witness={"kuratowski": list(exc.witness_edges)}),
            EXIT_FAILS,
        )
    try:
        trace = reducer.reduce(doc.graph, rot, opts.get("budget"))
    except reducer.ReductionError as exc:
        return CommandResult(
            _report("reduce", doc.graph, False, witness={"reason": str(exc)}), EXIT_FAILS
        )
    except BudgetExhausted as exc:
        return CommandResult(
            _report("reduce", doc.graph, "budget-exhausted", witness=exc.context),
            EXIT_BUDGET,
        )
    return CommandResult(
        _report("reduce", doc.graph, True, certificate={"trace": _trace_json(trace.root)}),
        EXIT_HOLDS,
    )


def handle_discharge(doc: mgf.GraphDocument, opts: dict) -> CommandResult:
    try:
        rot = _require_rotation(doc)
    except planar.NonPlanarError as exc:
        return CommandResult(
            _report("discharge", doc.graph, False, witness={"kuratowski": list(exc.witness_edges)}),
            EXIT_FAILS,
        )
    transcript = planar.discharge(doc.graph, rot)
    t0, t1, t2 = transcript.totals
    payload = {
        "face_degrees": list(transcript.face_degrees),
        "ch0": [_jsonable(c) for c in transcript.ch0],
        "ch1": [_jsonable(c) for c in transcript.ch1],
        "ch2": [_jsonable(c) for c in transcript.ch2],
        "transfers": [
            {"rule": rule, "from": a, "to": b, "amount": _jsonable(amt)}
            for rule, a, b, amt in transcript.transfers
        ],
        "totals": [_jsonable(t0), _jsonable(t1), _jsonable(t2)],
        "negative_faces": transcript.negative_faces,
        "t1_review": [list(x) for x in transcript.t1_review],
    }
    return CommandResult(
        _report("discharge", doc.graph, True, certificate=payload), EXIT_HOLDS
    )


def handle_scan(doc: mgf.GraphDocument, opts: dict) -> CommandResult:
    report = reducer.forbidden_scan(doc.graph)
    findings = {
        "t113": [list(t) for t in report.t113],
        "t222_two_paths": _jsonable(report.t222_two_paths),
        "q2333_short_path": _jsonable(report.q2333_short_path),
        "q2233_paths": _jsonable(report.q2233_paths),
        "q2223_triple": _jsonable(report.q2223_triple),
    }
    face_violations = None
    try:
        rot = _require_rotation(doc)
        face_violations = [_jsonable(v) for v in planar.face_config_scan(doc.graph, rot)]
    except planar.NonPlanarError:
        pass
    if face_violations is not None:
        findings["face_conditions"] = face_violations
    clean = report.is_clean() and not face_violations
    if clean:
        return CommandResult(_report("scan", doc.graph, True, certificate=findings), EXIT_HOLDS)
    return CommandResult(
        _report("scan", doc.graph, False, witness=findings), EXIT_FAILS
    )


def handle_trees(doc: mgf.GraphDocument, opts: dict) -> CommandResult:
    k, forests = partitions.tree_packing_number(doc.graph)
    bound = partitions.tree_packing_bound(doc.graph)
    cert = {"count": k, "partition_bound": bound, "trees": [list(f) for f in forests]}
    return CommandResult(_report("trees", doc.graph, k, certificate=cert), EXIT_HOLDS)


def sweep_four_vertex(
    min_edges: int = 12,
    max_edges: int = 13,
    mu_max: int = 4,
    require_trees: int = 4,
    cache: Optional[VerdictCache] = None,
    jobs: int = 1,
) -> dict:
    """Enumerate 4-vertex classes in the edge window; report the non-SZ5 ones
    among those with the required number of edge-disjoint spanning trees."""
    classes = multigraph.enumerate_class(
        4, min_edges, max_edges, mu_max=mu_max, connected=True
    )
    survivors = [
        g for g in classes if partitions.tree_packing_number(g)[0] >= require_trees
    ]

    def verdict(g: Multigraph) -> tuple[bool, Optional[list[int]]]:
        key = VerdictCache.key(g, 5, "szk") if cache else None
        if cache and key:
            hit = cache.get(key)
            if hit is not None:
                return hit["ok"], hit.get("witness")
        ok, witness = orientation.is_strongly_zk(g, 5)
        wjson = list(witness.values) if witness else None
        if cache and key:
            cache.put(key, {"ok": ok, "witness": wjson})
        return ok, wjson

    if jobs > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_szk_worker, survivors))
    else:
        results = [verdict(g) for g in survivors]

    non_sz5 = []
    for g, (ok, witness) in zip(survivors, results):
        if not ok:
            name = catalog.n5_name(g)
            non_sz5.append(
                {
                    "canonical": list(multigraph.canonical_form(g)[1]),
                    "edges": g.edge_count,
                    "name": name,
                    "witness_beta": witness,
                }
            )
    non_sz5.sort(key=lambda row: (row["edges"], row["canonical"]))
    return {
        "classes": len(classes),
        "with_tree_packing": len(survivors),
        "non_sz5": non_sz5,
    }


def _szk_worker(g: Multigraph) -> tuple[bool, Optional[list[int]]]:
    ok, witness = orientation.is_strongly_zk(g, 5)
    return ok, (list(witness.values) if witness else None)


def handle_enumerate4v(doc: Optional[mgf.GraphDocument], opts: dict) -> CommandResult:
    summary = sweep_four_vertex(
        min_edges=opts.get("min_edges", 12),
        max_edges=opts.get("max_edges", 13),
        mu_max=opts.get("mu_max", 4),
        require_trees=opts.get("require_trees", 4),
        cache=opts.get("cache"),
        jobs=opts.get("jobs", 1),
    )
    report = {
        "command": "enumerate4v",
        "input_hash": hashlib.sha256(
            json.dumps(
                {k: opts.get(k) for k in ("min_edges", "max_edges", "mu_max", "require_trees")},
                sort_keys=True,
            ).encode()
        ).hexdigest(),
        "verdict": True,
        "budget_used": 0,
        "certificate": summary,
    }
    return CommandResult(report, EXIT_HOLDS)


HANDLERS: dict[str, Callable[[mgf.GraphDocument, dict], CommandResult]] = {
    "weight": handle_weight,
    "contractible": handle_contractible,
    "szk": handle_szk,
    "orient": handle_orient,
    "mod-orient": handle_mod_orient,
    "circular": handle_circular,
    "asf": handle_asf,
    "reduce": handle_reduce,
    "discharge": handle_discharge,
    "scan": handle_scan,
    "trees": handle_trees,
}


def run_command(command: str, graph_text: Optional[str], opts: dict) -> CommandResult:
    """Dispatch a command; exit code 3 reports any input problem."""
    try:
        if command == "enumerate4v":
            return handle_enumerate4v(None, opts)
        if command not in HANDLERS:
            raise mgf.MgfError(f"unknown command {command!r}")
        if graph_text is None:
            raise mgf.MgfError("this command needs a graph document")
        doc = mgf.parse_graph(graph_text)
        return HANDLERS[command](doc, opts)
    except (mgf.MgfError, ValueError) as exc:
        return CommandResult(
            {"command": command, "verdict": "input-error", "error": str(exc)},
            EXIT_INPUT,
        )
