#!/usr/bin/env python3
"""Regenerate the shipped L-shape reference-energy table.

The multi-material L-shape problem has no closed-form solution, so the
reference Ritz energy per (sigma1, sigma2) is obtained by Richardson
extrapolation of uniform-mesh energies at N = 32, 64, 128: the energy
gap decays like C * N^(-p) with a sigma-dependent rate p, so

    p      = log2((J_32 - J_64) / (J_64 - J_128))
    J(u)  ~= J_128 - (J_64 - J_128) / (2^p - 1).

The (1, 1) row is pinned to -0.00668986, a high-accuracy reference
computed externally on an adaptively refined high-order triangulation;
the script prints the discrepancy between that value and our own
extrapolation as a sanity check (it should be well below 1e-4 relative).

Run from the repository root:

    python scripts/generate_lshape_reference.py
"""

import os
import sys
import time

import numpy as np

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from ritzmesh.experiments import write_csv          # noqa: E402
from ritzmesh.pipeline import evaluate_uniform      # noqa: E402
from ritzmesh.problems import lshape                # noqa: E402
from ritzmesh.sampling import default_axes          # noqa: E402

LEVELS = (32, 64, 128)
REFERENCE_UNIT_SIGMA = -0.00668986


def extrapolate(sigma1, sigma2):
    energies = [evaluate_uniform(lshape(sigma1, sigma2, n_elements=n)).J for n in LEVELS]
    j32, j64, j128 = energies
    d1, d2 = j32 - j64, j64 - j128
    if d2 <= 0 or d1 <= 0:
        return j128
    rate = np.log2(d1 / d2)
    return j128 - d2 / (2.0**rate - 1.0)


def main():
    axes = default_axes("lshape")
    values1 = axes[0].values()
    values2 = axes[1].values()
    rows = []
    start = time.time()
    done = 0
    for s1 in values1:
        for s2 in values2:
            rows.append((float(s1), float(s2), extrapolate(s1, s2)))
            done += 1
        print(f"sigma1 = {s1:9.5f}  ({done}/{values1.size * values2.size}, "
              f"{time.time() - start:6.1f}s)", flush=True)

    check = extrapolate(1.0, 1.0)
    rel = abs(check - REFERENCE_UNIT_SIGMA) / abs(REFERENCE_UNIT_SIGMA)
    print(f"extrapolated J(1,1) = {check:.8f}, reference {REFERENCE_UNIT_SIGMA}, "
          f"relative gap {rel:.2e}")
    rows.append((1.0, 1.0, REFERENCE_UNIT_SIGMA))
    rows.sort(key=lambda r: (r[0], r[1]))

    out = os.path.join(os.path.dirname(__file__), "..", "src", "ritzmesh", "data",
                       "lshape_reference.csv")
    os.makedirs(os.path.dirname(out), exist_ok=True)
    write_csv(out, ("sigma1", "sigma2", "J_exact"), rows)
    print(f"wrote {len(rows)} rows to {out}")


if __name__ == "__main__":
    main()
