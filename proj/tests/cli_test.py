"""End-to-end checks of the heytica binary: payload schemas, exit codes, determinism."""
import json
import os
import subprocess
import sys
import tempfile
from pathlib import Path

import jsonschema
from referencing import Registry, Resource

BIN = sys.argv[1]
SCHEMAS = Path(sys.argv[2])
failures = []

registry = Registry()
for f in SCHEMAS.glob("*.schema.json"):
    registry = registry.with_resource(f.name, Resource.from_contents(json.loads(f.read_text())))


def validator(name):
    schema = json.loads((SCHEMAS / name).read_text())
    return jsonschema.Draft202012Validator(schema, registry=registry)


PAYLOAD = validator("payload.schema.json")


def run(*args, env=None):
    e = dict(os.environ)
    e.pop("HEYTICA_CATALOG", None)
    e.update(env or {})
    return subprocess.run([BIN, *args], capture_output=True, text=True, env=e)


def check(name, cond, extra=""):
    print(("ok   " if cond else "FAIL ") + name + (f"  {extra}" if extra and not cond else ""))
    if not cond:
        failures.append(name)


def expect(name, args, code, env=None):
    r = run(*args, env=env)
    check(f"{name} exit {code}", r.returncode == code, f"got {r.returncode}: {r.stderr.strip()[:300]}")
    if code in (0, 1):
        try:
            payload = json.loads(r.stdout)
            errs = list(PAYLOAD.iter_errors(payload))
            check(f"{name} schema", not errs, errs[0].message if errs else "")
            return payload
        except json.JSONDecodeError as ex:
            check(f"{name} json", False, str(ex))
    return None


tmp = Path(tempfile.mkdtemp())
C3 = '{"n":2,"covers":[[0,1]]}'
B4 = '{"n":2,"covers":[]}'
(tmp / "d.json").write_text(
    json.dumps({"a": {"n": 1, "covers": []}, "b": json.loads(C3), "c": json.loads(C3), "e_b": [0, 0], "e_c": [0, 0]})
)
(tmp / "h.json").write_text(
    json.dumps({"source": {"n": 1, "covers": []}, "target": json.loads(C3), "dual_map": [0, 0]})
)
(tmp / "c3.json").write_text(C3)
(tmp / "c3b.json").write_text('{"n":2,"covers":[[1,0]]}')

p = expect("of-poset", ["algebra", "of-poset", "--json", C3], 0)
check("of-poset size", p and p["size"] == 3)
expect("dualize", ["algebra", "dualize", "--json", B4], 0)
expect("validate", ["algebra", "validate", "--json", B4], 0)
bad_tables = json.dumps({"size": 2, "meet": [[0, 0], [0, 0]], "join": [[0, 1], [1, 1]],
                         "implies": [[1, 1], [0, 1]], "zero": 0, "one": 1})
expect("validate bad tables", ["algebra", "validate", "--json", bad_tables], 1)
expect("gen", ["algebra", "gen", "--json", B4, "--gens", "[[0]]"], 0)
p = expect("star", ["algebra", "star", "--json", C3, "--term", "(-> x (and x 0))", "--x", "[1]"], 0)
check("star identity", p and p["verdicts"]["star_identity"])
expect("aut", ["algebra", "aut", "--json", B4], 0)
p = expect("amalgamate", ["amalgamate", "--diagram", str(tmp / "d.json")], 0)
check("amalgamate size", p and p["amalgam"]["dual"]["n"] == 4)
expect("order natural", ["order", "natural", "--json", B4], 0)
expect("order admissible", ["order", "admissible", "--json", B4, "--perm", "[0,2,1,3]"], 0)
expect("order extend", ["order", "extend", str(tmp / "h.json"), "--perm", "[0,1]"], 0)
expect("order amalgamate",
       ["order", "amalgamate", "--diagram", str(tmp / "d.json"), "--left", "[0,1,2]", "--right", "[0,1,2]"], 0)
expect("witness hneg", ["witness", "hneg"], 1)
expect("witness amenability", ["witness", "amenability"], 0)
expect("witness forgetful", ["witness", "forgetful"], 0)
expect("witness roelcke", ["witness", "roelcke", "-n", "3"], 0)
expect("witness orbit", ["witness", "orbit", "-k", "3"], 0)
# stationarity has counterexamples even on small samples, so the honest exit is 1
p = expect("axioms", ["axioms", "--samples", "20", "--seed", "1"], 1)
check("axioms only stationarity false", p and [k for k, v in p["verdicts"].items() if not v] == ["stationarity"])
chain = tmp / "chain.json"
dot = tmp / "top.dot"
expect("limit grow", ["limit", "grow", "--rounds", "1", "--out", str(chain), "--dot", str(dot)], 0)
check("chain file schema", chain.exists() and not list(validator("chain.schema.json").iter_errors(json.loads(chain.read_text()))))
check("dot written", dot.exists() and dot.read_text().startswith("digraph"))
for what in ("density", "irreducible", "extension"):
    expect(f"limit check {what}", ["limit", "check", what, "--chain", str(chain)], 0)
cat = tmp / "cat.txt"
expect("catalog build", ["catalog", "build", "-n", "4", "-o", str(cat)], 0)
check("catalog LF lines", cat.exists() and b"\r" not in cat.read_bytes())
p = expect("catalog stats env", ["catalog", "stats"], 0, env={"HEYTICA_CATALOG": str(cat)})
check("catalog counts", p and p["counts"] == [1, 2, 5, 16])
expect("catalog iso", ["catalog", "iso", str(tmp / "c3.json"), str(tmp / "c3b.json")], 0)

# input and usage errors
expect("no subcommand", [], 2)
expect("unknown flag", ["algebra", "of-poset", "--nope"], 2)
expect("bad json", ["algebra", "of-poset", "--json", "{"], 2)
expect("cyclic poset", ["algebra", "of-poset", "--json", '{"n":2,"covers":[[0,1],[1,0]]}'], 2)
expect("missing file", ["algebra", "of-poset", str(tmp / "absent.json")], 2)
expect("not an up-set", ["algebra", "gen", "--json", C3, "--gens", "[[0]]"], 2)
expect("bad diagram", ["amalgamate", "--json", '{"a":{"n":1,"covers":[]}}'], 2)

# determinism
for args in (["limit", "grow", "--seed", "7", "--rounds", "2"], ["axioms", "--samples", "15", "--seed", "3"],
             ["witness", "orbit", "-k", "3", "--seed", "2"]):
    a, b = run(*args), run(*args)
    check("deterministic " + " ".join(args), a.stdout == b.stdout and a.returncode == b.returncode)

# verify: honest run, tolerated run, fault injection
r = run("verify")
check("verify exits 1 on the known-false clauses", r.returncode == 1)
r = run("verify", "--known-ok")
check("verify --known-ok exit 0", r.returncode == 0, r.stderr[-400:])
check("verify schema", r.returncode == 0 and not list(PAYLOAD.iter_errors(json.loads(r.stdout))))
r2 = run("verify", "--known-ok")
check("verify deterministic", r.stdout == r2.stdout)
f = run("verify", "--known-ok", "--fault-independence")
fp = json.loads(f.stdout) if f.stdout else {}
check("fault exit 1", f.returncode == 1)
check("fault names independence", fp.get("verdicts", {}).get("independence") is False
      and any(x.startswith("independence:") for x in fp.get("unexpected_failures", [])))

print(f"{len(failures)} failures")
sys.exit(1 if failures else 0)
