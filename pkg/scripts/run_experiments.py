#!/usr/bin/env python3
"""Run the full experiment set into one run directory.

Drives the CLI end to end: waveform export (binary + CSV), zero-Doppler
ambiguity cut, radar accuracy sweep, and BER sweep. The resulting CSVs are
what the figure scripts consume; `make figures` renders them.
"""

import argparse
import sys

from chirpjrc.cli import main as cli


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--preset", choices=("paper", "desk"), default="desk")
    ap.add_argument("--seed", type=int, default=7)
    ap.add_argument("--out", default="runs/demo")
    ap.add_argument("--trials", type=int, default=None, help="radar trials per SNR point")
    ap.add_argument("--bits", type=int, default=None, help="BER bits per SNR point")
    ap.add_argument("--threads", type=int, default=None)
    args = ap.parse_args(argv)

    common = ["--preset", args.preset, "--seed", str(args.seed)]
    if args.threads is not None:
        common += ["--threads", str(args.threads)]

    steps = [
        ["waveform", *common, "--shape", "triangle", "--csv",
         "--out", f"{args.out}/waveform"],
        ["ambiguity", *common, "--method", "numeric", "--cut", "delay",
         "--out", f"{args.out}/ambiguity"],
        ["radar-sweep", *common, "--out", f"{args.out}/radar"]
        + (["--trials", str(args.trials)] if args.trials else []),
        ["ber-sweep", *common, "--out", f"{args.out}/ber"]
        + (["--bits", str(args.bits)] if args.bits else []),
    ]
    for step in steps:
        print("+ chirpjrc " + " ".join(step))
        code = cli(step)
        if code != 0:
            return code
    return 0


if __name__ == "__main__":
    sys.exit(main())
