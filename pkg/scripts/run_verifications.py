"""Run the theorem-level verifications and write one JSON and one markdown report each.

    python3 scripts/run_verifications.py --out results/
    python3 scripts/run_verifications.py --only thm1 thm2
"""

import argparse
import sys
from pathlib import Path

from axiomlab import verify as vf
from axiomlab.axioms import CheckBounds
from axiomlab.rules import get_rule

RUNS = {
    "lemma1": lambda b: vf.verify_lemma1(get_rule("quota1"), b),
    "prop1": lambda b: vf.verify_prop1(get_rule("quota1"), b),
    "prop2": lambda b: vf.verify_prop2(b),
    "prop3": lambda b: vf.verify_prop3(b),
    "remark2": lambda b: vf.verify_remark2(2, 2),
    "thm1": lambda b: vf.verify_theorem1(2, 1, 4, 60.0),
    "thm2": lambda b: vf.verify_theorem2(2, b),
    "independence": lambda b: vf.independence_matrix(3, b),
}


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--out", default="results", help="directory for the reports")
    parser.add_argument("--only", nargs="*", choices=sorted(RUNS), help="subset of verifications")
    parser.add_argument("--nmax", type=int, default=3)
    parser.add_argument("--nclone", type=int, default=2)
    args = parser.parse_args(argv)

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    bounds = CheckBounds(args.nmax, args.nclone)
    worst = 0
    for name in args.only or RUNS:
        report = RUNS[name](bounds)
        (out / f"{name}.json").write_text(report.dumps() + "\n", encoding="utf-8")
        (out / f"{name}.md").write_text(report.render("markdown") + "\n", encoding="utf-8")
        print(f"{name:13s} {report.outcome:24s} {report.wall_time:7.2f}s")
        worst = max(worst, report.exit_code)
    return worst


if __name__ == "__main__":
    sys.exit(main())
