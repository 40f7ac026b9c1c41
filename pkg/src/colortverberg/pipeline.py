"""End-to-end orchestration: one consolidated report with per-stage status."""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from .complex import is_balanced, is_rainbow_balanced, symm_deleted_join_cells
from .errors import PreconditionError
from .homology import morse_inequality_violations, verify_connectivity_bound
from .instance import Instance
from .kneser import check_proposition
from .morse import (
    connectivity_certificate,
    replay_traces,
    run_matching,
    verify_acyclic,
    verify_critical_census,
    verify_pi_monotone,
    verify_traces,
    verify_vector_field,
)
from .params import validate_parameters
from .tverberg import PointConfiguration, search_tverberg
from .unavoidability import is_collectively_rs_unavoidable, is_rs_rainbow_unavoidable

PASS, FAIL, SKIPPED, CAPPED = "PASS", "FAIL", "SKIPPED", "CAPPED"

# homology is exact sparse elimination; beyond this many cells it is marked capped
HOMOLOGY_CELL_CAP = 60_000


class StageError(RuntimeError):
    """A stage crashed; carries the stage name for the CLI diagnostic."""

    def __init__(self, stage: str, cause: Exception):
        super().__init__(f"stage {stage!r}: {type(cause).__name__}: {cause}")
        self.stage = stage
        self.cause = cause


@dataclass
class Stage:
    name: str
    status: str
    detail: dict = field(default_factory=dict)
    seconds: float = 0.0

    def to_json(self) -> dict:
        return {"stage": self.name, "status": self.status, "seconds": round(self.seconds, 3), **self.detail}


@dataclass
class PipelineReport:
    stages: list[Stage] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(s.status != FAIL for s in self.stages)

    def stage(self, name: str) -> Stage:
        return next(s for s in self.stages if s.name == name)

    def to_json(self) -> dict:
        return {"status": PASS if self.ok else FAIL, "stages": [s.to_json() for s in self.stages]}


def _is_rainbow_family(inst: Instance) -> bool:
    c = inst.coloring
    return c is not None and all(c.is_rainbow(f) for K in inst.family for f in K.faces)


def _parameters(inst: Instance, ctx: dict) -> tuple[str, dict]:
    theorem = "CTCRUC" if ctx["rainbow"] else "TTRSU"
    rep = validate_parameters(inst.r, inst.k, inst.s, inst.d, inst.m, theorem=theorem)
    return (PASS if rep["ok"] else FAIL), {"report": rep}


def _balancedness(inst: Instance, ctx: dict) -> tuple[str, dict]:
    per = []
    for i, K in enumerate(inst.family, 1):
        if ctx["rainbow"]:
            ok = is_rainbow_balanced(K, inst.coloring, inst.k)
        else:
            ok = is_balanced(K, inst.m, inst.k)
        per.append({"complex": i, "balanced": ok})
    ctx["balanced"] = all(x["balanced"] for x in per)
    kind = "rainbow-balanced" if ctx["rainbow"] else "balanced"
    return (PASS if ctx["balanced"] else FAIL), {"kind": kind, "complexes": per}


def _unavoidability(inst: Instance, ctx: dict) -> tuple[str, dict]:
    if ctx["rainbow"]:
        mode = "rainbow-rs"
        v = is_rs_rainbow_unavoidable(inst.family, inst.coloring, inst.s)
    else:
        mode = "collective-rs"
        v = is_collectively_rs_unavoidable(inst.family, inst.s)
    ctx["unavoidable"] = v.holds
    return (PASS if v.holds else FAIL), {"mode": mode, **v.to_json()}


def _kneser(inst: Instance, ctx: dict) -> tuple[str, dict]:
    if not ctx["balanced"]:
        return SKIPPED, {"reason": "Gamma is only defined for balanced complexes"}
    rep = check_proposition(inst.family, inst.s, inst.k, inst.coloring if ctx["rainbow"] else None)
    ctx["no_clique"] = not rep["has_clique"]
    return rep["status"], rep


def _morse_gate(inst: Instance, ctx: dict) -> str | None:
    reasons = []
    if not ctx["unavoidable"]:
        reasons.append("family is not (r,s)-unavoidable")
    if not ctx["rainbow"]:
        reasons.append("matching needs a coloring with every complex rainbow")
    elif not ctx["balanced"]:
        reasons.append("family is not rainbow balanced")
    return "; ".join(reasons) or None


def _morse(inst: Instance, ctx: dict) -> tuple[str, dict]:
    reason = _morse_gate(inst, ctx)
    if reason:
        return SKIPPED, {"reason": reason}
    cells = ctx["cells"]
    run = run_matching(inst.family, inst.coloring, inst.k, inst.s, cells=cells)
    dvf = run.field
    params = inst.params
    field_rep = verify_vector_field(dvf, cells)
    acyc = verify_acyclic(dvf)
    pi_rep = verify_pi_monotone(dvf, replay_traces(dvf, inst.coloring, inst.k))
    trace_rep = verify_traces(run, inst.coloring)
    census = verify_critical_census(dvf, params, inst.family)
    cert = connectivity_certificate(dvf, params, inst.family, cells, run.warnings)
    ctx["critical_by_dim"] = dvf.critical_by_dim()
    checks = {
        "field": field_rep.to_json(),
        "acyclic": acyc.to_json(),
        "pi": pi_rep.to_json(),
        "traces": trace_rep.to_json(),
        "census": census.to_json(),
    }
    ok = field_rep.ok and acyc.acyclic and pi_rep.ok and trace_rep.ok and census.ok and cert.certified
    detail = {
        "cells": len(cells),
        "pairs": len(dvf.pairs),
        "critical_by_dim": {str(q): n for q, n in ctx["critical_by_dim"].items()},
        "certificate": cert.to_json(),
        "checks": checks,
    }
    return (PASS if ok else FAIL), detail


def _homology(inst: Instance, ctx: dict) -> tuple[str, dict]:
    reason = _morse_gate(inst, ctx)
    if reason:
        return SKIPPED, {"reason": reason}
    if len(ctx["cells"]) > HOMOLOGY_CELL_CAP:
        return CAPPED, {"reason": f"{len(ctx['cells'])} cells exceed the homology cap {HOMOLOGY_CELL_CAP}"}
    primes = sorted({inst.params.prime or 2, 2})
    verdict = verify_connectivity_bound(inst.family, inst.params, primes, cells=ctx["cells"])
    crit = ctx.get("critical_by_dim", {})
    morse_bad = {res.coefficients: morse_inequality_violations(res.betti, crit) for res in verdict.results}
    detail = verdict.to_json()
    detail["morse_inequality_violations"] = morse_bad
    ok = verdict.ok and all(verdict.euler_identity.values()) and not any(morse_bad.values())
    return (PASS if ok else FAIL), detail


def _tverberg(inst: Instance, ctx: dict) -> tuple[str, dict]:
    config: PointConfiguration | None = ctx.get("points")
    if config is None:
        return SKIPPED, {"reason": "no point configuration supplied"}
    w = search_tverberg(config, inst.family, cells=ctx["cells"])
    # outside the rainbow setting the clique condition may stand in for unavoidability
    gate = ctx["unavoidable"] or (not ctx["rainbow"] and ctx.get("no_clique", False))
    hypotheses = ctx["parameters_ok"] and ctx["balanced"] and gate and config.d == inst.d
    if w is None:
        return (FAIL if hypotheses else PASS), {"result": "NONE_FOUND", "anomaly": hypotheses}
    problems = w.verify(config, inst.family)
    return (FAIL if problems else PASS), {"result": "FOUND", "witness": w.to_json(),
                                          "dims": w.dims(), "problems": problems}


STAGES = [
    ("parameters", _parameters),
    ("balancedness", _balancedness),
    ("unavoidability", _unavoidability),
    ("kneser", _kneser),
    ("morse", _morse),
    ("homology", _homology),
    ("tverberg", _tverberg),
]


def run_pipeline(inst: Instance, points: PointConfiguration | None = None, cap: int | None = None) -> PipelineReport:
    """Run every stage in order; a crashing stage raises :class:`StageError`."""
    report = PipelineReport()
    ctx: dict = {"rainbow": _is_rainbow_family(inst), "points": points, "balanced": False, "unavoidable": False}
    for name, fn in STAGES:
        t0 = time.perf_counter()
        try:
            if name == "morse" or (name == "tverberg" and points is not None):
                ctx.setdefault("cells", symm_deleted_join_cells(inst.family, cap))
            if name == "homology" and "cells" not in ctx:
                ctx["cells"] = symm_deleted_join_cells(inst.family, cap)
            status, detail = fn(inst, ctx)
        except PreconditionError as exc:
            status, detail = SKIPPED, {"reason": str(exc)}
        except Exception as exc:
            raise StageError(name, exc) from exc
        if name == "parameters":
            ctx["parameters_ok"] = status == PASS
        report.stages.append(Stage(name, status, detail, time.perf_counter() - t0))
    return report
