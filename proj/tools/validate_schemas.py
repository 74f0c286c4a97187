#!/usr/bin/env python3
"""Run the CLI over the corpus and validate every output against schemas/."""
import json
import pathlib
import subprocess
import sys
import tempfile

try:
    import jsonschema
    from referencing import Registry, Resource
except ImportError:
    print("jsonschema not available; skipping")
    sys.exit(77)

cli, schema_dir, corpus = sys.argv[1], pathlib.Path(sys.argv[2]), pathlib.Path(sys.argv[3])

schemas = {p.name: json.loads(p.read_text()) for p in schema_dir.glob("*.schema.json")}
registry = Registry().with_resources(
    (s["$id"], Resource.from_contents(s)) for s in schemas.values()
)
failures = 0


def check(schema, args):
    global failures
    proc = subprocess.run([cli, *args], capture_output=True, text=True)
    try:
        doc = json.loads(proc.stdout)
    except json.JSONDecodeError:
        print(f"FAIL {' '.join(args)}: stdout is not JSON")
        failures += 1
        return None
    if isinstance(doc, dict) and "error" in doc:
        schema = "error.schema.json"
    elif isinstance(doc, dict) and "witness" in doc:
        schema = "verdict.schema.json"
    validator = jsonschema.Draft202012Validator(schemas[schema], registry=registry)
    errors = list(validator.iter_errors(doc))
    if errors:
        print(f"FAIL {' '.join(args)} against {schema}: {errors[0].message}")
        failures += 1
    else:
        print(f"ok   {' '.join(args)} ({schema})")
    return doc


functions = sorted(corpus.glob("f_*.json")) + sorted((corpus / "extra").glob("f_*.json"))
polys = sorted((corpus / "extra").glob("w_*.json"))

with tempfile.TemporaryDirectory() as tmp:
    for f in functions:
        input_schema = jsonschema.Draft202012Validator(schemas["function.schema.json"], registry=registry)
        if list(input_schema.iter_errors(json.loads(f.read_text()))):
            print(f"FAIL input {f.name} against function.schema.json")
            failures += 1
        check("verdict.schema.json", ["verify", str(f)])
        check("function.schema.json", ["reduce", str(f)])
        check("function.schema.json", ["lift", str(f)])
        for form in ("schur", "transfer", "pencil"):
            doc = check("realization.schema.json", ["realize", "--form", form, str(f)])
            if doc and "form" in doc:
                path = pathlib.Path(tmp) / f"{f.stem}_{form}.json"
                path.write_text(json.dumps(doc))
                check("certify_result.schema.json", ["certify", str(path)])
    for w in polys:
        check("sos_factor.schema.json", ["sos", str(w)])
    check("batch_summary.schema.json", ["batch", str(corpus)])
    check("batch_summary.schema.json", ["batch", "--command", "verify", str(corpus / "extra")])
    check("error.schema.json", ["verify", str(corpus / "missing.json")])

sys.exit(1 if failures else 0)
