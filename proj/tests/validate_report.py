"""Run a bnctl command with --format json and validate its output."""

import json
import subprocess
import sys

import jsonschema


def main() -> int:
    schema_path, *command = sys.argv[1:]
    with open(schema_path, encoding="utf-8") as fh:
        schema = json.load(fh)
    out = subprocess.run(command + ["--format", "json"], check=True,
                         capture_output=True, text=True).stdout
    jsonschema.validate(json.loads(out), schema)
    print("report valid")
    return 0


if __name__ == "__main__":
    sys.exit(main())
