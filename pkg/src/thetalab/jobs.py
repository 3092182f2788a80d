"""JSON job files: parsing, task execution and report rendering.

Schema (version 1)::

    {
      "version": 1,
      "ring": {"variables": ["x", "y", "u", "v"], "weights": [1, 1, 1, 1], "equation": "x*u + y*v"},
      "modules": [
        {"name": "M", "ideal": ["x", "y"]},
        {"name": "P", "degrees": [0, 0], "relations": [["x", "0"], ["y", "x"]]}
      ],
      "tasks": [
        {"type": "check"},
        {"type": "theta", "M": "M", "N": "M", "route": "both"},
        {"type": "gram", "modules": ["M", "P"]},
        {"type": "series", "M": "M", "N": "M", "D": 12},
        {"type": "bezout", "C": "M", "D": "P"},
        {"type": "weighted", "pairs": [["M", "M"]]}
      ],
      "options": {"degree_bound": null, "window": 4, "max_degree": 60, "route": "both",
                  "check_singularity": true, "cache_dir": null}
    }

``relations`` lists the columns of the presentation matrix; each column has
one entry per generator.  A module may instead give ``ideal`` (a cyclic
quotient, optionally with ``degree``), ``free`` (list of degrees) or
``residue_field: true``; ``twist`` raises every generator degree.
"""
from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

from .cache import ResolutionCache
from .pairing import bezout_defect, gram_matrix
from .poly import PolynomialError
from .ring import HypersurfaceRing, ModulePresentation, check_isolated_singularity
from .series import theta_route_B, verify_series_identity
from .tor import ResolutionStore, ThetaEngine, ThetaOptions, rigidity_notes
from .weighted import build_cover, theta_S

SCHEMA_VERSION = 1
TASK_TYPES = ("check", "theta", "gram", "series", "bezout", "weighted")
ALIASES = {"check_ring": "check"}


class JobError(ValueError):
    """Malformed job input; ``where`` locates the problem."""

    def __init__(self, where: str, message: str):
        super().__init__("%s: %s" % (where, message))
        self.where = where


@dataclass
class Job:
    ring: HypersurfaceRing
    modules: Dict[str, ModulePresentation]
    tasks: List[dict]
    options: Dict[str, Any] = field(default_factory=dict)
    source: dict = field(default_factory=dict)


def _need(d, key, where, kind=None):
    if not isinstance(d, dict) or key not in d:
        raise JobError(where, "missing %r" % key)
    v = d[key]
    if kind is not None and not isinstance(v, kind):
        raise JobError("%s.%s" % (where, key), "expected %s" % getattr(kind, "__name__", kind))
    return v


def parse_ring(block) -> HypersurfaceRing:
    variables = _need(block, "variables", "ring", list)
    equation = _need(block, "equation", "ring", str)
    weights = block.get("weights")
    try:
        return HypersurfaceRing(variables, equation, weights)
    except (PolynomialError, ValueError) as exc:
        raise JobError("ring", str(exc)) from exc


def parse_module(ring, block, index) -> ModulePresentation:
    where = "modules[%d]" % index
    name = _need(block, "name", where, str)
    where = "module %r" % name
    try:
        if "ideal" in block:
            M = ModulePresentation.cyclic(ring, name, block["ideal"], block.get("degree", 0))
        elif "free" in block:
            M = ModulePresentation.free(ring, name, block["free"])
        elif block.get("residue_field"):
            M = ModulePresentation.residue_field(ring, name)
        else:
            degrees = _need(block, "degrees", where, list)
            rel = block.get("relations", [])
            if not isinstance(rel, list) or any(not isinstance(c, list) for c in rel):
                raise JobError(where, "relations must be a list of columns")
            M = ModulePresentation(ring, name, degrees, rel, block.get("source_degrees"))
    except JobError:
        raise
    except (PolynomialError, ValueError) as exc:
        raise JobError(where, str(exc)) from exc
    if block.get("twist"):
        M = M.twist(int(block["twist"]), name)
    return M


def parse_job(data: dict) -> Job:
    if not isinstance(data, dict):
        raise JobError("job", "top level must be an object")
    version = data.get("version", SCHEMA_VERSION)
    if version != SCHEMA_VERSION:
        raise JobError("version", "unsupported schema version %r" % version)
    ring = parse_ring(_need(data, "ring", "job", dict))
    modules: Dict[str, ModulePresentation] = {}
    for k, block in enumerate(data.get("modules", [])):
        M = parse_module(ring, block, k)
        if M.name in modules:
            raise JobError("module %r" % M.name, "duplicate name")
        modules[M.name] = M
    tasks = data.get("tasks", [{"type": "check"}])
    if not isinstance(tasks, list):
        raise JobError("tasks", "expected a list")
    for k, t in enumerate(tasks):
        where = "tasks[%d]" % k
        kind = _need(t, "type", where, str)
        if kind in ALIASES:
            kind = t["type"] = ALIASES[kind]
        if kind not in TASK_TYPES:
            raise JobError(where, "unknown task type %r" % kind)
        for key in ("M", "N", "C", "D"):
            if key in t and not (kind == "series" and key == "D"):
                _module(modules, t[key], where)
        for name in t.get("modules", []):
            _module(modules, name, where)
        for pair in t.get("pairs", []):
            for name in pair:
                _module(modules, name, where)
        if kind == "theta" and t.get("route", "both") not in ("a", "b", "both", "A", "B"):
            raise JobError(where, "route must be a, b or both")
    options = data.get("options", {})
    if not isinstance(options, dict):
        raise JobError("options", "expected an object")
    return Job(ring, modules, tasks, options, data)


def _module(modules, name, where):
    if name not in modules:
        raise JobError(where, "unknown module %r" % name)
    return modules[name]


def load_job(path: str) -> Job:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except OSError as exc:
        raise JobError(path, str(exc)) from exc
    except json.JSONDecodeError as exc:
        raise JobError("%s:%d:%d" % (path, exc.lineno, exc.colno), exc.msg) from exc
    return parse_job(data)


# ------------------------------------------------------------- running

class Runner:
    def __init__(self, job: Job, overrides: Optional[dict] = None):
        self.job = job
        opts = dict(job.options)
        opts.update({k: v for k, v in (overrides or {}).items() if v is not None})
        self.opts = opts
        self.cache = ResolutionCache.from_settings(opts.get("cache_dir"))
        self.engine = ThetaEngine(ThetaOptions(
            degree_bound=opts.get("degree_bound"),
            window=int(opts.get("window", 4)),
            max_degree=int(opts.get("max_degree", 60)),
            check_singularity=bool(opts.get("check_singularity", True))), ResolutionStore(self.cache))

    def default_route(self):
        route = str(self.opts.get("route", "both")).lower()
        if not self.job.ring.grading.is_standard and route != "a":
            return "a"
        return route

    def run(self, only: Optional[str] = None) -> dict:
        ring = self.job.ring
        results, timings = [], []
        tasks = self.job.tasks
        if only == "check":
            tasks = [{"type": "check"}]
        elif only is not None:
            tasks = [t for t in tasks if t["type"] == only]
            if not tasks:
                raise JobError("tasks", "job has no %r task" % only)
        for t in tasks:
            start = time.perf_counter()
            results.append(dict(self.run_task(t), type=t["type"]))
            timings.append(round(time.perf_counter() - start, 3))
        return {
            "version": SCHEMA_VERSION,
            "ring": {"variables": list(ring.variables), "weights": list(ring.grading.weights),
                     "equation": str(ring.f), "n": ring.n, "d": ring.d},
            "results": results,
            "timings": timings,
        }

    def mod(self, name):
        return self.job.modules[name]

    def run_task(self, t: dict) -> dict:
        kind = t["type"]
        if kind == "check":
            cert = check_isolated_singularity(self.job.ring)
            return {"certified": cert.certified, "jacobian_dimension": cert.total_dimension,
                    "hilbert": cert.hilbert.as_list(), "reason": cert.reason}
        if kind == "theta":
            M, N = self.mod(t["M"]), self.mod(t["N"])
            route = str(t.get("route", self.default_route())).lower()
            if not self.job.ring.grading.is_standard:
                route = "a"
            out: Dict[str, Any] = {"M": M.name, "N": N.name}
            a = None
            if route in ("a", "both"):
                a = self.engine.route_a(M, N)
                out["route_A"] = a.summary()
                out["value"] = a.value
                out["rigidity"] = rigidity_notes(M, N, a)
            if route in ("b", "both"):
                b = theta_route_B(M, N, self.engine, route_a=a)
                out["route_B"] = b.summary()
                out["value"] = b.value
                if a is not None:
                    out["routes_agree"] = a.value == b.value
            return out
        if kind == "gram":
            mods = [self.mod(n) for n in t["modules"]]
            rb = self.default_route() == "both" and self.job.ring.grading.is_standard
            rep = gram_matrix(mods, self.engine, route_b=bool(t.get("route_b", rb)))
            return rep.summary()
        if kind == "series":
            rep = verify_series_identity(self.mod(t["M"]), self.mod(t["N"]), int(t.get("D", 12)), self.engine)
            return {"M": t["M"], "N": t["N"], "D": rep.D, "passed": rep.passed,
                    "first_mismatch": rep.first_mismatch}
        if kind == "bezout":
            r = bezout_defect(self.mod(t["C"]), self.mod(t["D"]), self.engine, int(self.opts.get("window", 4)))
            return dict(r.summary(), C=t["C"], D=t["D"])
        if kind == "weighted":
            setup = build_cover(self.job.ring, t.get("cover_variables"),
                                bool(self.opts.get("check_singularity", True)))
            engine_r = ThetaEngine(self.engine.options, ResolutionStore(self.cache))
            pairs = []
            for a, b in t.get("pairs", []):
                w = theta_S(setup, self.mod(a), self.mod(b), engine_r, self.engine)
                pairs.append(dict(w.summary(), M=a, N=b))
            return {"cover": str(setup.R.f), "c": setup.c, "pairs": pairs}
        raise JobError("task", "unknown type %r" % kind)


def render_text(report: dict) -> str:
    r = report["ring"]
    lines = ["ring: k[%s]/(%s)  weights %s  n=%d d=%d" % (",".join(r["variables"]), r["equation"],
                                                        r["weights"], r["n"], r["d"])]
    for res in report["results"]:
        kind = res["type"]
        if kind == "check":
            lines.append("check: %s (Jacobian ring dimension %s)" % (
                "certified" if res["certified"] else "NOT certified", res["jacobian_dimension"]))
        elif kind == "theta":
            s = "theta(%s, %s) = %s" % (res["M"], res["N"], res["value"])
            if "route_A" in res:
                a = res["route_A"]
                s += "  [E=%d, lengths %s, periodicity %s]" % (a["E"], a["lengths"], "ok" if a["periodicity"] else "?")
            if "routes_agree" in res:
                s += "  routes agree" if res["routes_agree"] else "  ROUTES DISAGREE"
            for note in res.get("rigidity", []):
                s += "; " + note
            lines.append(s)
        elif kind == "gram":
            lines.append("gram %s: %s  verdict %s (expected sign %s: %s), rank %d" % (
                res["modules"], res["gram"], res["verdict"], res["expected_sign"],
                "holds" if res["expected_sign_holds"] else "FAILS", res["rank"]))
        elif kind == "series":
            lines.append("series identity (%s, %s) to degree %d: %s" % (
                res["M"], res["N"], res["D"], "pass" if res["passed"] else "FAIL at t^%s" % res["first_mismatch"]))
        elif kind == "bezout":
            lines.append("intersection(%s, %s) = %d  (deg %d, %d; theta %d)" % (
                res["C"], res["D"], res["intersection"], res["deg_C"], res["deg_D"], res["theta"]))
        elif kind == "weighted":
            lines.append("cover: %s, c = %d" % (res["cover"], res["c"]))
            for p in res["pairs"]:
                lines.append("  theta_S(%s, %s) = %s  (theta_R %d, direct %s)" % (
                    p["M"], p["N"], p["theta_S"], p["theta_R"], p["direct"]))
    return "\n".join(lines)
