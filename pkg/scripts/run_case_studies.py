#!/usr/bin/env python3
"""Run the bundled case studies end to end and print a compact summary.

Usage: python scripts/run_case_studies.py
"""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from fracpainleve.cli import parse_problem  # noqa: E402
from fracpainleve.existence import certify_nonlinear  # noqa: E402
from fracpainleve.painleve import analyze_multiterm, run_test  # noqa: E402
from fracpainleve.solvers import abm_solve  # noqa: E402

PROBLEMS = Path(__file__).resolve().parent.parent / "problems"


def describe(report):
    res = ", ".join(f"{r.value:+.6f}[{r.classification.value}]" for r in report.resonances)
    amp = report.leading.amplitude
    amp_text = "unset" if amp is None else f"{amp:+.6f}"
    return (
        f"verdict={report.verdict.value}  sigma={report.leading.sigma:.4f}  "
        f"A={amp_text}\n    resonances: {res or '(none)'}"
    )


def main() -> None:
    for name in ("logistic_a04", "logistic_a05", "cubic_amplitude_a08"):
        problem = parse_problem(str(PROBLEMS / f"{name}.json")).to_power_law()
        print(f"{name}:")
        print("   ", describe(run_test(problem, depth=12)))

    pid = parse_problem(str(PROBLEMS / "pid_form.json")).to_multiterm()
    print("pid_form:")
    print("   ", describe(analyze_multiterm(pid)))

    blowup = parse_problem(str(PROBLEMS / "blowup_y2.json")).to_ivp()
    cert = certify_nonlinear(blowup)
    traj = abm_solve(blowup, grid_points=4000)
    print("blowup_y2:")
    print(
        f"    certificate: h={cert.h:.4f} k={cert.k:.3f}  |  "
        f"abm: blew_up={traj.blew_up} last_valid_time={traj.last_valid_time:.4f}"
    )


if __name__ == "__main__":
    main()
