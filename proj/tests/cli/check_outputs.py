"""Every document gm emits validates against the published schema, and
re-running on the embedded input reproduces the document byte for byte."""

import json
import pathlib
import subprocess
import sys

import jsonschema


def run(gm, *args, stdin=None):
    p = subprocess.run([gm, *args], input=stdin, capture_output=True, text=True)
    return p.returncode, p.stdout


def main():
    gm, schema_path, data, out = sys.argv[1:5]
    data, out = pathlib.Path(data), pathlib.Path(out)
    out.mkdir(parents=True, exist_ok=True)
    validator = jsonschema.Draft7Validator(json.loads(pathlib.Path(schema_path).read_text()))
    failures = 0

    def check(doc, label):
        nonlocal failures
        errors = sorted(validator.iter_errors(doc), key=str)
        if errors:
            failures += 1
            print(f"FAIL schema {label}: {errors[0].message}")

    for path in sorted(data.glob("*.json")):
        for flags in ([], ["--trace"]):
            label = f"{path.name} {' '.join(flags)}".strip()
            code, text = run(gm, "run", str(path), *flags)
            doc = json.loads(text)
            check(doc, label)
            if "error" in doc:
                if code == 0:
                    failures += 1
                    print(f"FAIL {label}: error document with exit 0")
                continue
            if code != 0:
                failures += 1
                print(f"FAIL {label}: verdict with exit {code}")
            again_code, again = run(gm, "run", "-", *flags, stdin=json.dumps(doc["input"]))
            if again_code != 0 or again != text:
                failures += 1
                print(f"FAIL round trip {label}")
            else:
                print(f"ok {label}: {doc['verdict']} {doc['f_sequence']}")

    code, text = run(gm, "run", "--seed-demo")
    check(json.loads(text), "--seed-demo")

    for path in sorted(data.glob("*.jsonl")):
        code, text = run(gm, "batch", str(path), "--trace")
        for i, line in enumerate(text.splitlines()):
            check(json.loads(line), f"{path.name}:{i + 1}")

    print("schema and round trip:", "FAIL" if failures else "PASS")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
