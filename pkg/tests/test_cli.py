import json
import os

import pytest

from thetalab.cache import ENV_VAR, ResolutionCache
from thetalab.cli import main
from thetalab.jobs import JobError, Runner, parse_job
from thetalab.resolution import resolve
from thetalab import ModulePresentation

QUADRIC_JOB = {
    "version": 1,
    "ring": {"variables": ["x", "y", "u", "v"], "equation": "x*u + y*v"},
    "modules": [{"name": "L", "ideal": ["x", "y"]}, {"name": "P", "ideal": ["x", "v"]}],
    "tasks": [
        {"type": "check"},
        {"type": "theta", "M": "L", "N": "L"},
        {"type": "gram", "modules": ["L", "P"]},
        {"type": "bezout", "C": "L", "D": "P"},
        {"type": "series", "M": "L", "N": "P", "D": 10},
    ],
}


def write(tmp_path, data, name="job.json"):
    p = tmp_path / name
    p.write_text(json.dumps(data) if not isinstance(data, str) else data)
    return str(p)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def strip_timings(text):
    d = json.loads(text)
    d.pop("timings")
    return d


def test_run_all(tmp_path, capsys):
    code, out, _ = run(capsys, "run", write(tmp_path, QUADRIC_JOB), "--json")
    assert code == 0
    rep = json.loads(out)
    kinds = [r["type"] for r in rep["results"]]
    assert kinds == ["check", "theta", "gram", "bezout", "series"]
    theta = rep["results"][1]
    assert theta["value"] == 1 and theta["routes_agree"]
    assert rep["results"][2]["gram"] == [[1, -1], [-1, 1]]
    assert rep["results"][3]["intersection"] == 1
    assert rep["results"][4]["passed"]


def test_single_verb_and_text_output(tmp_path, capsys):
    code, out, _ = run(capsys, "theta", write(tmp_path, QUADRIC_JOB), "--route", "a")
    assert code == 0
    assert out.startswith("ring:") and "theta(L, L) = 1" in out
    assert "routes agree" not in out


def test_check_verb_without_check_task(tmp_path, capsys):
    job = dict(QUADRIC_JOB, tasks=[{"type": "gram", "modules": ["L"]}])
    code, out, _ = run(capsys, "check", write(tmp_path, job))
    assert code == 0 and "certified" in out


def test_deterministic_json(tmp_path, capsys):
    path = write(tmp_path, QUADRIC_JOB)
    _, a, _ = run(capsys, "run", path, "--json")
    _, b, _ = run(capsys, "run", path, "--json")
    assert strip_timings(a) == strip_timings(b)


@pytest.mark.parametrize("data, fragment", [
    ("{not json", "job.json:1:2"),
    (dict(QUADRIC_JOB, tasks=[{"type": "theta", "M": "L", "N": "Q"}]), "unknown module 'Q'"),
    (dict(QUADRIC_JOB, tasks=[{"type": "magic"}]), "unknown task type"),
    (dict(QUADRIC_JOB, ring={"variables": ["x", "y"], "equation": "x*y + z"}), "ring"),
    (dict(QUADRIC_JOB, modules=[{"name": "L", "ideal": ["x", "y^2 + x"]}]), "module 'L'"),
    (dict(QUADRIC_JOB, version=7), "version"),
])
def test_input_errors_exit_2(tmp_path, capsys, data, fragment):
    code, _, err = run(capsys, "run", write(tmp_path, data))
    assert code == 2 and fragment in err


def test_missing_file_exit_2(tmp_path, capsys):
    code, _, err = run(capsys, "run", str(tmp_path / "nope.json"))
    assert code == 2 and "input error" in err


def test_mathematical_error_exit_1(tmp_path, capsys):
    job = {"ring": {"variables": ["x", "y", "z"], "equation": "x*y*z"},
           "modules": [{"name": "M", "ideal": ["x"]}],
           "tasks": [{"type": "theta", "M": "M", "N": "M", "route": "a"}]}
    code, _, err = run(capsys, "run", write(tmp_path, job))
    assert code == 1 and "isolated singularity" in err


def test_weighted_job(tmp_path, capsys):
    job = {"ring": {"variables": ["y0", "y1"], "weights": [2, 3], "equation": "y0^3 + y1^2"},
           "modules": [{"name": "A", "ideal": ["y0"]}, {"name": "k", "residue_field": True}],
           "tasks": [{"type": "weighted", "pairs": [["A", "A"], ["A", "k"], ["k", "k"]]},
                     {"type": "theta", "M": "A", "N": "k"}]}
    code, out, _ = run(capsys, "run", write(tmp_path, job), "--json")
    assert code == 0
    rep = json.loads(out)
    assert rep["results"][0]["c"] == 6
    assert all(p["agree"] and p["theta_S"] == "0" for p in rep["results"][0]["pairs"])
    assert "route_B" not in rep["results"][1]


def test_cache_roundtrip(tmp_path, capsys, monkeypatch):
    path = write(tmp_path, QUADRIC_JOB)
    cache = tmp_path / "cache"
    _, cold, _ = run(capsys, "theta", path, "--json", "--cache-dir", str(cache))
    files = os.listdir(cache)
    assert files and all(f.endswith(".json") for f in files)
    monkeypatch.setenv(ENV_VAR, str(cache))
    _, warm, _ = run(capsys, "theta", path, "--json")
    assert strip_timings(cold) == strip_timings(warm)


def test_cache_store_and_load(tmp_path, quadric):
    M = ModulePresentation.cyclic(quadric, "L", ["x", "y"])
    cache = ResolutionCache(str(tmp_path))
    res = resolve(M, 4, 8)
    cache.store(res)
    back = cache.load(M, 4, 8)
    assert back is not None and back.betti() == res.betti()
    # a different presentation of another module has a different key
    assert cache.path(M) != cache.path(ModulePresentation.cyclic(quadric, "L", ["x", "u"]))


def test_module_forms(quadric):
    job = parse_job({"ring": {"variables": ["x", "y", "u", "v"], "equation": "x*u + y*v"},
                     "modules": [{"name": "F", "free": [0, 1]},
                                 {"name": "T", "ideal": ["x"], "twist": 2},
                                 {"name": "G", "degrees": [0, 0], "relations": [["x", "0"], ["y", "x"]]}],
                     "tasks": [{"type": "check_ring"}]})
    assert job.modules["F"].F0.generator_degrees == (0, 1)
    assert job.modules["T"].F0.generator_degrees == (2,)
    assert job.modules["G"].F1.generator_degrees == (1, 1)
    assert Runner(job).run()["results"][0]["certified"]


def test_parse_job_rejects_duplicates():
    with pytest.raises(JobError, match="duplicate"):
        parse_job({"ring": {"variables": ["x", "y"], "equation": "x*y"},
                   "modules": [{"name": "A", "ideal": ["x"]}, {"name": "A", "ideal": ["y"]}]})
