#!/usr/bin/env python3
"""Measure how the sampled quasi-joint error shrinks with the shot count.

For each N the quasi joint is estimated from fresh seeded draws and the RMS
entry error against the closed form is recorded; rms*sqrt(N) should be flat.
Writes a CSV (n,rms,rms_sqrt_n) and prints the table.  Example:

    python scripts/mc_convergence.py --theta 0.7 --vartheta 1.1 --seeds 32
"""

from __future__ import annotations

import argparse
import math

import numpy as np

from quasijoint import (
    MarkerConfig,
    estimate_quasi_joint,
    operational_joint_discrete,
    quasi_joint_closed_form,
    sample_discrete,
)
from quasijoint.cli import parse_state


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument(
        "--state", default="0.9238795325112867,0,0.3826834323650898,0", help="re,im,re,im"
    )
    parser.add_argument("--theta", type=float, default=0.7)
    parser.add_argument("--vartheta", type=float, default=1.1)
    parser.add_argument("--seeds", type=int, default=32, help="replicas per shot count")
    parser.add_argument("--base-seed", type=int, default=9000)
    parser.add_argument(
        "--shots", default="1000,10000,100000,1000000", help="comma-separated N values"
    )
    parser.add_argument("--out", default="mc_convergence.csv")
    args = parser.parse_args()

    state = parse_state(args.state, "reim")
    config = MarkerConfig(args.theta, args.vartheta)
    measured = operational_joint_discrete(state, config)
    truth = quasi_joint_closed_form(state, config).as_array()

    rows = []
    for n in (int(piece) for piece in args.shots.split(",")):
        squared = []
        for offset in range(args.seeds):
            counts = sample_discrete(measured, n, args.base_seed + offset)
            estimate = estimate_quasi_joint(counts, config)
            squared.append(float(((estimate.joint.as_array() - truth) ** 2).mean()))
        rms = math.sqrt(float(np.mean(squared)))
        rows.append((n, rms, rms * math.sqrt(n)))
        print(f"N={n:>9d}  rms={rms:.3e}  rms*sqrt(N)={rms * math.sqrt(n):.4f}")

    with open(args.out, "w") as handle:
        handle.write("n,rms,rms_sqrt_n\n")
        for n, rms, scaled in rows:
            handle.write(f"{n},{rms:.16e},{scaled:.16e}\n")
    print(f"wrote {args.out}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
