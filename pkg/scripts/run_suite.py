#!/usr/bin/env python3
"""Run a verification suite profile and print the report stream.

Thin wrapper over the CLI so the bundle is runnable from a checkout:
    python scripts/run_suite.py --profile quick --seed 42 --format text
"""

import sys

from sp4lab.cli import main

if __name__ == "__main__":
    sys.exit(main(["suite"] + sys.argv[1:]))
