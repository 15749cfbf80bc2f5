"""Run each CLI command with --format json and validate against the schema."""

import argparse
import json
import subprocess
import sys

import jsonschema

COMMANDS = [
    ["threshold", "--family", "depolarizing", "--d", "3", "--r", "2"],
    ["threshold", "--family", "dephasing", "--d", "4", "--r", "3"],
    ["threshold", "--family", "depolarizing", "--d", "3", "--criterion", "ppt"],
    ["sweep", "--family", "depolarizing", "--d", "3", "--r", "2", "--grid", "21"],
    ["sweep", "--family", "dephasing", "--d", "4", "--r", "2", "--grid", "5"],
    ["snac", "--p-grid", "4", "--q-grid", "6"],
    ["snac", "--d", "4", "--p-grid", "2", "--q-grid", "2", "--k", "1"],
    ["verify", "--suite", "t4"],
    ["verify", "--suite", "relations", "--d", "4", "--r", "2"],
]


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--cli", required=True)
    parser.add_argument("--schema", required=True)
    args = parser.parse_args()

    with open(args.schema) as fh:
        schema = json.load(fh)
    jsonschema.Draft202012Validator.check_schema(schema)
    validator = jsonschema.Draft202012Validator(schema)

    failed = 0
    for cmd in COMMANDS:
        proc = subprocess.run([args.cli, *cmd, "--format", "json"], capture_output=True, text=True)
        label = " ".join(cmd)
        if proc.returncode != 0:
            print(f"FAIL {label}: exit {proc.returncode}: {proc.stderr.strip()}")
            failed += 1
            continue
        errors = list(validator.iter_errors(json.loads(proc.stdout)))
        if errors:
            print(f"FAIL {label}: {errors[0].message}")
            failed += 1
        else:
            print(f"ok   {label}")

    # A report of the wrong shape must be rejected.
    if validator.is_valid({"family": "depolarizing", "d": 3}):
        print("FAIL schema accepts an incomplete threshold report")
        failed += 1
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
