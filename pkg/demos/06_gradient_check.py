#!/usr/bin/env python3
"""The identity that makes the whole method cheap.

The energy E = 1/2 c.Bc - l.c is stationary in c at the discrete
solution, so the gradient of the energy with respect to mesh logits
needs only the closed-form derivatives of B and l contracted with the
solved coefficients; the linear solve itself is never differentiated.

This demo compares that reduced gradient against central finite
differences of the *full* pipeline (mesh -> assemble -> solve -> J,
re-solving at every perturbed logit) on all five benchmark families.
Agreement to ~1e-6 relative, at one solve instead of 2n solves.
"""

import numpy as np

from ritzmesh.pipeline import evaluate_with_gradient, finite_difference_gradient
from ritzmesh.problems import arctan1d, arctan2d, lshape, power1d, twomaterial1d

rng = np.random.default_rng(0)
cases = [
    arctan1d(12.0, 0.4, n_elements=12),
    power1d(0.8, n_elements=12),
    twomaterial1d(5.0, n_elements=12),
    arctan2d(6.0, 0.3, 0.6, n_elements=5, order=8),
    lshape(2.0, 0.5, n_elements=6),
]

print(f"{'family':14s} {'logits':>6s} {'J':>12s} {'rel. gradient error':>20s}")
for problem in cases:
    theta = rng.normal(0, 0.25, problem.theta_size)
    ev, grad = evaluate_with_gradient(problem, theta)
    fd = finite_difference_gradient(problem, theta)
    rel = np.linalg.norm(grad - fd) / np.linalg.norm(fd)
    print(f"{problem.family:14s} {problem.theta_size:6d} {ev.J:12.6f} {rel:20.2e}")
