#!/usr/bin/env python3
"""Validate `dice --format json roll` output for every corpus line against the schema."""
import json
import subprocess
import sys

import jsonschema


def main():
    dice, schema_path, corpus_path = sys.argv[1:4]
    with open(schema_path) as f:
        schema = json.load(f)
    validator = jsonschema.Draft7Validator(schema)
    failures = 0
    checked = 0
    with open(corpus_path) as f:
        for line in f:
            line = line.rstrip("\n")
            if not line or line.startswith("# "):
                continue
            expr, _, script = line.partition("\t")
            proc = subprocess.run([dice, "--format", "json", "roll", expr, "--script", script],
                                  capture_output=True, text=True)
            if proc.returncode not in (0, 2, 3):
                print(f"FAIL {expr!r}: exit {proc.returncode}")
                failures += 1
                continue
            doc = json.loads(proc.stdout)
            errors = list(validator.iter_errors(doc))
            if errors:
                print(f"FAIL {expr!r}: {errors[0].message}")
                failures += 1
            checked += 1
    print(f"{checked} documents checked, {failures} failures")
    return 1 if failures or checked < 200 else 0


if __name__ == "__main__":
    sys.exit(main())
