#!/usr/bin/env python3
"""Render an ambiguity cut or surface from an ambiguity CSV."""

import argparse
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent))
from figlib import FigureSpec, SchemaError, render  # noqa: E402


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("csv", help="ambiguity CSV: (tau_s,mag), (fd_hz,mag) or (tau_s,fd_hz,mag)")
    ap.add_argument("output", help="output image path (PNG)")
    ap.add_argument("--title", default="")
    args = ap.parse_args(argv)
    try:
        for path in render(FigureSpec((args.csv,), "ambiguity", args.output, args.title)):
            print(path)
    except SchemaError as exc:
        print(f"schema error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
