"""Command-line front end.

Exit codes: 0 pass/confirmed, 1 fail/refuted, 2 inconclusive or error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field

from . import axioms as ax
from . import verify as vf
from .errors import AxiomlabError, PreconditionError
from .prefcore import (
    DEFAULT_CAP,
    alt_to_json,
    domain_to_json,
    enumerate_linear_orders,
    enumerate_separable,
    fmt_alt,
    preference_to_json,
    read_profile_document,
    subsets_domain,
    universal_domain,
)
from .rules import get_rule

EXIT_ERROR = 2


@dataclass
class RunConfig:
    command: str
    objects: int = 2
    alternatives: int | None = None
    n_max: int = 3
    n_clone_max: int = 2
    cap: int | None = None
    budget: float = 60.0
    rules: list = field(default_factory=list)
    fmt: str = "human"
    out: str | None = None

    def __post_init__(self):
        if self.objects < 1 or self.n_max < 1 or self.n_clone_max < 1:
            raise ValueError("bounds must be positive")
        if self.alternatives is not None and self.alternatives < 1:
            raise ValueError("alternative count must be positive")
        for name in self.rules:
            get_rule(name, max(self.objects, 2))

    @property
    def bounds(self) -> ax.CheckBounds:
        return ax.CheckBounds(self.n_max, self.n_clone_max)


def _parse_cap(raw: str | None) -> int | None:
    if raw is None:
        return None
    return DEFAULT_CAP if raw == "default" else int(raw)


def _common(objects: int = 2) -> argparse.ArgumentParser:
    # a fresh parent per command: argparse shares parent actions, so defaults would leak
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--json", action="store_true", help="shorthand for --format json")
    p.add_argument("--format", choices=("human", "json", "markdown"), default="human")
    p.add_argument("--out", help="write the report to this path instead of stdout")
    p.add_argument("--seed", type=int, default=0, help="reserved; every run is deterministic")
    p.add_argument("--objects", type=int, default=objects)
    p.add_argument("--nmax", type=int, default=3)
    p.add_argument("--nclone", type=int, default=2)
    return p


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="axiomlab", description="Bounded checks of voting-rule axioms.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enumerate", parents=[_common()], help="list a preference domain")
    p.add_argument("--domain", choices=("all", "separable", "universal"), default="all")
    p.add_argument("--alternatives", type=int, help="alternative count for the universal domain")
    p.add_argument("--cap", help="enumeration cap, or 'default'")
    p.add_argument("--list", action="store_true", help="print every preference")

    p = sub.add_parser("eval", parents=[_common()], help="evaluate a rule on a profile file")
    p.add_argument("--rule", required=True)
    p.add_argument("--profile", required=True, help="JSON document with 'domain' and 'profile'")

    p = sub.add_parser("check", parents=[_common()], help="check one axiom (or all) for a rule")
    p.add_argument("--rule", required=True)
    p.add_argument("--axiom", required=True, help=f"one of {', '.join(ax.AXIOMS)}, or 'all'")
    p.add_argument("--domain", choices=("all", "separable"), help="override the rule's domain")
    p.add_argument("--alternatives", type=int, help="universal domain size, for rules that allow it")

    p = sub.add_parser("verify", parents=[_common()], help="run a theorem-level verification")
    p.add_argument("--theorem", required=True, choices=vf.THEOREMS)
    p.add_argument("--rule", help="rule for lemma1/prop1 (default quota1)")
    p.add_argument("--budget", type=float, default=60.0, help="search budget in seconds")
    p.add_argument("--ceiling", type=int, default=4, help="deepest n_max tried by thm1")
    p.add_argument("--alternatives", type=int, default=2, help="alternative count for remark2")
    p.add_argument("--society", type=int, default=2, help="society size for remark2")

    sub.add_parser("matrix", parents=[_common(objects=3)], help="independence matrix of the five rules")
    return parser


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    else:
        print(text)


def _dumps(doc) -> str:
    return json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False)


def cmd_enumerate(args, fmt) -> tuple[str, int]:
    cap = _parse_cap(args.cap)
    if args.domain == "universal":
        domain = universal_domain(args.alternatives or 3)
    else:
        domain = subsets_domain(args.objects, args.domain)
    if domain.kind == "separable":
        prefs = enumerate_separable(domain.objects, cap)
    else:
        prefs = enumerate_linear_orders(domain.alternatives, cap)
    if fmt == "json":
        doc = {"domain": domain_to_json(domain), "count": len(prefs)}
        if args.list:
            doc["preferences"] = [preference_to_json(p, domain) for p in prefs]
        return _dumps(doc), 0
    lines = [f"{domain.describe()}: {len(prefs)} preferences"]
    if args.list:
        lines += [("- " if fmt == "markdown" else "  ") + str(p) for p in prefs]
    return "\n".join(lines), 0


def cmd_eval(args, fmt) -> tuple[str, int]:
    with open(args.profile, encoding="utf-8") as fh:
        profile, pdomain = read_profile_document(json.load(fh))
    if pdomain.is_subsets:
        rule = get_rule(args.rule, pdomain.objects)
    else:
        rule = get_rule(args.rule, alternatives=pdomain.alternatives)
    rule.domain.check_profile(profile)
    out = rule.evaluate(profile)
    if fmt == "json":
        return _dumps({"rule": rule.name, "profile": ax.profile_to_json(profile, rule.domain),
                       "outcome": alt_to_json(out, rule.domain)}), 0
    return fmt_alt(out, rule.domain.objects), 0


def _check_rule(args):
    domain = None
    if args.alternatives is not None:
        return get_rule(args.rule, alternatives=args.alternatives)
    if args.domain is not None:
        domain = subsets_domain(args.objects, args.domain)
    return get_rule(args.rule, args.objects, domain=domain)


def cmd_check(args, fmt) -> tuple[str, int]:
    rule = _check_rule(args)
    bounds = ax.CheckBounds(args.nmax, args.nclone)
    if args.axiom == "all":
        names = [a for a in ax.AXIOMS if a != "neutrality" or ax.closed_under_relabeling(rule.domain)]
    else:
        names = [args.axiom]
    results = [ax.check(name, rule, bounds) for name in names]
    code = 0 if all(r.passed for r in results) else 1
    if fmt == "json":
        docs = [r.to_json() for r in results]
        return _dumps(docs[0] if args.axiom != "all" else {"rule": rule.name, "reports": docs}), code
    if fmt == "markdown":
        rows = ["| axiom | verdict |", "|---|---|"] + [f"| {r.axiom} | {r.verdict} |" for r in results]
        details = [f"\n```\n{r.render()}\n```" for r in results if not r.passed]
        return "\n".join(rows + details), code
    return "\n".join(r.render() for r in results), code


def cmd_verify(args, fmt) -> tuple[str, int]:
    bounds = ax.CheckBounds(args.nmax, args.nclone)
    t = args.theorem
    if t in ("lemma1", "prop1"):
        rule = get_rule(args.rule or "quota1", args.objects)
        fn = vf.verify_lemma1 if t == "lemma1" else vf.verify_prop1
        report = fn(rule, bounds)
    elif t == "prop2":
        report = vf.verify_prop2(bounds, args.objects)
    elif t == "prop3":
        report = vf.verify_prop3(bounds, args.objects)
    elif t == "remark2":
        report = vf.verify_remark2(args.alternatives, args.society)
    elif t == "thm1":
        report = vf.verify_theorem1(args.objects, 1, args.ceiling, args.budget)
    elif t == "thm2":
        report = vf.verify_theorem2(args.objects, bounds)
    else:
        report = vf.independence_matrix(args.objects, bounds)
    return _render_report(report, fmt), report.exit_code


def cmd_matrix(args, fmt) -> tuple[str, int]:
    report = vf.independence_matrix(args.objects, ax.CheckBounds(args.nmax, args.nclone))
    return _render_report(report, fmt), report.exit_code


def _render_report(report, fmt) -> str:
    return report.dumps() if fmt == "json" else report.render(fmt)


COMMANDS = {"enumerate": cmd_enumerate, "eval": cmd_eval, "check": cmd_check, "verify": cmd_verify,
            "matrix": cmd_matrix}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    fmt = "json" if args.json else args.format
    try:
        RunConfig(args.command, args.objects, getattr(args, "alternatives", None), args.nmax, args.nclone,
                  fmt=fmt, out=args.out,
                  rules=[args.rule] if getattr(args, "rule", None) and args.command != "eval" else [])
        text, code = COMMANDS[args.command](args, fmt)
    except PreconditionError as exc:
        msg = f"precondition not met: {exc}"
        if fmt == "json":
            doc = {"error": "precondition-not-met", "message": str(exc)}
            if exc.result is not None:
                doc["check"] = exc.result.to_json()
            _emit(_dumps(doc), args.out)
        else:
            print(msg, file=sys.stderr)
        return EXIT_ERROR
    except (AxiomlabError, ValueError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    _emit(text, args.out)
    return code


if __name__ == "__main__":
    sys.exit(main())
