"""Run every applicable decider on an input and collect a machine-readable report.

Verdict values are ``True``, ``False`` or ``"exhausted"``. A ``False`` verdict
always carries either a ``witness`` index into the report's witness list or a
``failed`` list naming the condition that does not hold; ``"exhausted"``
verdicts carry the search statistics.
"""
from __future__ import annotations

import time
from dataclasses import dataclass, field

from .frames import SPARK_CAP, Frame, frame_bounds, is_full_spark, spark
from .linalg import DEFAULT_TOL
from .projections import (
    ProjectionFamily,
    SpanWitness,
    bound_advisories,
    fusion_norm_retrieval,
)
from .search import SearchBudget, projection_pr_falsify, projection_wpr_falsify, wpr_falsify
from .vector_retrieval import PARTITION_CAP, PartitionWitness, does_norm_retrieval, does_phase_retrieval
from .weak_phase import WeakWitness, classify_wpr_r2, phase_relation, wpr_necessary_conditions


@dataclass
class Options:
    tol: float = DEFAULT_TOL
    cap: int = PARTITION_CAP
    budget: SearchBudget = field(default_factory=SearchBudget)

    @property
    def spark_cap(self) -> int:
        return max(self.cap, SPARK_CAP)


def witness_record(w, prop: str) -> dict:
    """Flatten any witness object into a dict with a construction tag."""
    if isinstance(w, PartitionWitness):
        return {"property": prop, "construction": "complement-partition", "partition": list(w.partition),
                "u": w.u, "v": w.v, "x": w.x, "y": w.y, "norm_gap": w.norm_gap}
    if isinstance(w, WeakWitness):
        rec = {"property": prop, "construction": w.construction, "x": w.x, "y": w.y,
               "verified": w.verified, "relation": phase_relation(w.x, w.y)}
        if w.partition is not None:
            rec["partition"] = list(w.partition)
        if w.details:
            rec["details"] = w.details
        return rec
    if isinstance(w, SpanWitness):
        return {"property": prop, "construction": "span-deficiency", "x": w.x,
                "achieved_rank": w.achieved_rank, "spanned": w.spanned, "exact": w.exact}
    raise TypeError(f"unknown witness type {type(w).__name__}")


class _Builder:
    def __init__(self):
        self.verdicts: dict = {}
        self.witnesses: list = []

    def add(self, name: str, value, witness=None, prop: str | None = None, **extra) -> dict:
        entry = {"value": value, **extra}
        if witness is not None:
            self.witnesses.append(witness_record(witness, prop or name))
            entry["witness"] = len(self.witnesses) - 1
        self.verdicts[name] = entry
        return entry


def _frame_verdicts(F: Frame, opts: Options, b: _Builder) -> None:
    n, m = F.dim, F.m
    fb = frame_bounds(F)
    b.add("frame", fb.is_frame, lower=fb.lower, upper=fb.upper,
          **({} if fb.is_frame else {"failed": ["the vectors do not span R^n"]}))
    b.add("tight", fb.is_tight, **({} if fb.is_tight else {"failed": ["lower and upper bounds differ"]}))
    sp = spark(F, opts.spark_cap)
    b.add("spark", sp)
    fs = is_full_spark(F, opts.spark_cap)
    b.add("full_spark", fs, **({} if fs else {"failed": [f"spark {sp} <= n = {n}" if m >= n else f"m = {m} < n = {n}"]}))

    pr = does_phase_retrieval(F, opts.cap)
    b.add("complement_property", pr.holds, pr.witness, certificate=pr.certificate)
    b.add("phase_retrieval", pr.holds, pr.witness, certificate=pr.certificate)
    nr = does_norm_retrieval(F, opts.cap)
    b.add("norm_retrieval", nr.holds, nr.witness, certificate=nr.certificate)

    nc = wpr_necessary_conditions(F)
    b.add("wpr_necessary_conditions", not nc.definitely_not_wpr, nc.witness, prop="weak_phase_retrieval",
          **({"failed": list(nc.failed)} if nc.failed else {}))

    if pr.holds:
        b.add("weak_phase_retrieval", True, method="phase retrieval implies weak phase retrieval")
        return
    if n == 2 and m == 2:
        c = classify_wpr_r2(F.vectors[0], F.vectors[1])
        b.add("weak_phase_retrieval", c.does_wpr, c.witness, method="classifier")
        return
    res = wpr_falsify(F, opts.budget, opts.cap)
    if res.found:
        b.add("weak_phase_retrieval", False, res.witness, method="falsifier", stats=res.stats)
    elif nc.failed:
        b.add("weak_phase_retrieval", False, method="necessary conditions", failed=list(nc.failed), stats=res.stats)
    elif res.complete:
        b.add("weak_phase_retrieval", True, method="exact one-parameter decider", stats=res.stats)
    else:
        b.add("weak_phase_retrieval", "exhausted", method="falsifier", stats=res.stats)


def _family_verdicts(PF: ProjectionFamily, opts: Options, b: _Builder) -> None:
    fb = frame_bounds(PF)
    b.add("frame", fb.is_frame, lower=fb.lower, upper=fb.upper,
          **({} if fb.is_frame else {"failed": ["the subspaces do not span R^n"]}))
    b.add("tight", fb.is_tight, **({} if fb.is_tight else {"failed": ["lower and upper bounds differ"]}))
    adv = bound_advisories(PF)
    b.add("bound_advisories", not adv.phase_retrieval_impossible,
          phase_retrieval_impossible=adv.phase_retrieval_impossible, objections=list(adv.objections),
          **({"failed": list(adv.objections)} if adv.objections else {}))

    nr = fusion_norm_retrieval(PF, cap=opts.cap)
    b.add("norm_retrieval", nr.holds, nr.witness, certificate=nr.certificate)

    lines = PF.line_generators()
    if lines is not None:
        pr = does_phase_retrieval(lines, opts.cap)
        b.add("phase_retrieval", pr.holds, pr.witness, method="rank-one family: generator frame", certificate=pr.certificate)
    else:
        res = projection_pr_falsify(PF, opts.budget)
        if res.found:
            b.add("phase_retrieval", False, res.witness, method="span criterion falsifier", stats=res.stats)
        elif adv.phase_retrieval_impossible:
            b.add("phase_retrieval", False, method="count bound", failed=list(adv.objections), stats=res.stats)
        else:
            b.add("phase_retrieval", "exhausted", method="span criterion falsifier", stats=res.stats)

    if lines is not None and lines.dim == 2 and lines.m == 2 and lines.spans():
        c = classify_wpr_r2(*lines.vectors)
        b.add("weak_phase_retrieval", c.does_wpr, c.witness, method="rank-one family: classifier")
        return
    res = wpr_falsify(lines, opts.budget, opts.cap) if lines is not None else projection_wpr_falsify(PF, opts.budget)
    if res.found:
        b.add("weak_phase_retrieval", False, res.witness, method="falsifier", stats=res.stats)
    elif lines is not None and res.complete:
        b.add("weak_phase_retrieval", True, method="rank-one family: exact one-parameter decider", stats=res.stats)
    else:
        b.add("weak_phase_retrieval", "exhausted", method="falsifier", stats=res.stats)


def analyze(obj, opts: Options | None = None, source: str | None = None) -> dict:
    """Build the analysis report for a :class:`Frame` or :class:`ProjectionFamily`."""
    opts = opts or Options()
    start = time.perf_counter()
    b = _Builder()
    if isinstance(obj, Frame):
        kind, exact, promoted = "frame", obj.exact, obj.promoted
        _frame_verdicts(obj, opts, b)
        count = obj.m
    elif isinstance(obj, ProjectionFamily):
        kind, exact, promoted = "subspaces", obj.exact, False
        _family_verdicts(obj, opts, b)
        count = len(obj)
    else:
        raise TypeError("analyze expects a Frame or a ProjectionFamily")
    return {
        "input": {"kind": kind, "dim": obj.dim, "count": count, "label": obj.label, "source": source},
        "mode": "exact" if exact else "float",
        "promoted": promoted,
        "tolerance": opts.tol,
        "budget": {"trials": opts.budget.trials, "seed": opts.budget.seed, "samples": opts.budget.samples},
        "verdicts": b.verdicts,
        "witnesses": b.witnesses,
        "timing": {"seconds": round(time.perf_counter() - start, 6)},
    }


def render_text(report: dict) -> str:
    """Human-readable summary of a report produced by :func:`analyze`."""
    from .linalg import format_vector

    inp = report["input"]
    lines = [f"{inp['kind']} in R^{inp['dim']} with {inp['count']} members ({report['mode']} arithmetic)"]
    for name, v in report["verdicts"].items():
        val = v["value"]
        shown = {True: "yes", False: "no"}.get(val, val) if isinstance(val, bool) or val == "exhausted" else val
        extra = f" [{v['method']}]" if "method" in v else ""
        lines.append(f"  {name.replace('_', ' ')}: {shown}{extra}")
        for cond in v.get("failed", []):
            lines.append(f"      failed: {cond}")
        if "witness" in v:
            w = report["witnesses"][v["witness"]]
            for key in ("partition", "x", "y", "u", "v"):
                if key in w:
                    vec = w[key]
                    lines.append(f"      {key} = {format_vector(vec) if key != 'partition' else list(vec)}")
            if "achieved_rank" in w:
                lines.append(f"      rank = {w['achieved_rank']}")
            lines.append(f"      construction: {w['construction']}")
        if val == "exhausted":
            lines.append(f"      stats: {v.get('stats')}")
    lines.append(f"  elapsed: {report['timing']['seconds']:.3f}s")
    return "\n".join(lines)
