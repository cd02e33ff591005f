"""Driving the batch front end from Python, as a shell user would."""

import json
from pathlib import Path

from kittideal.cli import main

problems = Path(__file__).resolve().parents[1] / "docs" / "problems"

print("$ kittideal colon xy_squares.json --format text")
main(["colon", str(problems / "xy_squares.json"), "--format", "text"])

print("\n$ kittideal en generic_2x3.json --d 0")
code = main(["en", str(problems / "generic_2x3.json"), "--d", "0", "--format", "text"])
print("exit code", code)

print("\n$ kittideal verify gf3_example.json --expect-equal")
code = main(["verify", str(problems / "gf3_example.json"), "--expect-equal", "--format", "text"])
print("exit code", code, "(2 means a requested check failed)")
