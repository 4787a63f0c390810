#!/usr/bin/env python3
"""Three-way solver comparison on constant-coefficient linear problems.

For each (alpha, lambda, forcing) the certified Picard iterate, the
Mittag-Leffler closed form and the predictor-corrector oracle are run on the
certified interval and the pairwise sup-norm disagreements are tabulated.

Usage: python scripts/solver_agreement.py [grid_points]
"""

import sys
from pathlib import Path

import numpy as np

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from fracpainleve.existence import IvpProblem, certify_nonlinear  # noqa: E402
from fracpainleve.solvers import abm_solve, picard_solve, solve_linear_ml  # noqa: E402


def main() -> None:
    points = int(sys.argv[1]) if len(sys.argv) > 1 else 600
    header = f"{'alpha':>5} {'lam':>4} {'f':>3} {'h_cert':>8} {'pic-ml':>9} {'abm-ml':>9} {'abm-pic':>9} {'iters':>5}"
    print(header)
    print("-" * len(header))
    for alpha in (0.3, 0.5, 0.7, 1.0):
        for lam in (1.0, -1.0):
            for f_const in (0.0, 1.0):
                def rhs(t, y, lam=lam, f_const=f_const):
                    return f_const - lam * y

                problem = IvpProblem(alpha, rhs, (0.0, 1.0), 1.0, 1.0, lipschitz=1.0)
                cert = certify_nonlinear(problem)
                pic = picard_solve(problem, cert, grid_points=points, tol=1e-10)
                forcing = (lambda t, f_const=f_const: f_const) if f_const else None
                ml = solve_linear_ml(alpha, lam, forcing, 1.0, pic.grid)
                abm = abm_solve(
                    IvpProblem(alpha, rhs, (0.0, cert.h), 1.0, 1.0, lipschitz=1.0),
                    grid_points=points,
                )
                d1 = float(np.max(np.abs(pic.values - ml.values)))
                d2 = float(np.max(np.abs(abm.values - ml.values)))
                d3 = float(np.max(np.abs(abm.values - pic.values)))
                print(
                    f"{alpha:5.2f} {lam:+4.0f} {f_const:3.0f} {cert.h:8.4f} "
                    f"{d1:9.2e} {d2:9.2e} {d3:9.2e} {pic.iterations:5d}"
                )


if __name__ == "__main__":
    main()
