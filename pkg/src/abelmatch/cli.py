"""Command-line driver.

    abelmatch construct '{"panhandle": {"n": 3, "s": 4, "m": 5, "a": [2, -1, 0]}}'
    abelmatch bases M.json --format table
    abelmatch match M.json N.json
    abelmatch verify asy-panhandle --max-m 6
    abelmatch verify losonczy --mod 9
    abelmatch examples

Inputs are inline JSON, a file path, or ``-`` for stdin.
Exit codes: 0 success or matched, 1 campaign failure or not matched, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import campaigns
from .errors import AbelMatchError
from .groups import GroupCtx
from .matching import METHODS, matroid_matched
from .serialize import matroid_from_json, matroid_to_json

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2


class UsageError(Exception):
    pass


def load_json(arg: str):
    if arg == "-":
        text = sys.stdin.read()
    elif arg.lstrip().startswith(("{", "[")):
        text = arg
    else:
        path = Path(arg)
        if not path.exists():
            raise UsageError(f"no such file and not inline JSON: {arg}")
        text = path.read_text(encoding="utf-8")
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"invalid JSON: {exc}") from None


def _emit(obj, out: str | None) -> None:
    text = json.dumps(obj, indent=2)
    if out:
        Path(out).write_text(text + "\n", encoding="utf-8")
    else:
        print(text)


def _fmt_element(x) -> str:
    return str(x[0]) if len(x) == 1 else "(" + ",".join(map(str, x)) + ")"


def _table(rows: list[list[str]], header: list[str]) -> str:
    widths = [max(len(str(r[i])) for r in [header] + rows) for i in range(len(header))]
    lines = ["  ".join(str(h).ljust(w) for h, w in zip(header, widths))]
    lines.append("  ".join("-" * w for w in widths))
    lines += ["  ".join(str(c).ljust(w) for c, w in zip(r, widths)) for r in rows]
    return "\n".join(lines)


def cmd_construct(args) -> int:
    M = matroid_from_json(load_json(args.input))
    doc = matroid_to_json(M)
    summary = f"rank={M.rank} ground={M.size} bases={len(M.bases)}"
    if args.output:
        _emit(doc, args.output)
        print(summary)
    elif args.format == "json":
        _emit(doc, None)
        print(summary, file=sys.stderr)
    else:
        print(summary)
    return EXIT_OK


def cmd_bases(args) -> int:
    M = matroid_from_json(load_json(args.input))
    if args.format == "json":
        _emit({"rank": M.rank, "bases": [[list(x) for x in b] for b in M.bases_as_elements()]}, args.output)
    else:
        rows = [[str(i), " ".join(_fmt_element(x) for x in b)] for i, b in enumerate(M.bases_as_elements())]
        print(_table(rows, ["#", "basis"]))
    return EXIT_OK


def cmd_match(args) -> int:
    M = matroid_from_json(load_json(args.M))
    N = matroid_from_json(load_json(args.N))
    if M.rank != N.rank:
        raise UsageError(f"ranks differ: r(M)={M.rank}, r(N)={N.rank}")
    report = matroid_matched(M, N, method=args.method)
    if args.format == "json":
        _emit(report.to_json(), args.output)
    else:
        print(f"matched: {report.matched}")
        if report.counterexample is not None:
            bad = [_fmt_element(M.ground[i]) for i in report.counterexample]
            print(f"counterexample basis: {{{', '.join(bad)}}}")
        rows = [
            [" ".join(_fmt_element(M.ground[i]) for i, _ in w.pairs),
             " ".join(_fmt_element(N.ground[j]) for _, j in w.pairs)]
            for w in report.witnesses
        ]
        if rows:
            print(_table(rows, ["source (ordered)", "target (paired)"]))
    return EXIT_OK if report.matched else EXIT_FAIL


def run_campaign(name: str, args) -> campaigns.CampaignResult:
    if name == "asy-panhandle":
        return campaigns.verify_asy_panhandle(max_m=args.max_m or 7, min_n=args.min_n)
    if name == "asy-schubert":
        return campaigns.verify_asymmetric_schubert(max_m=args.max_m or 6)
    if name == "paving":
        return campaigns.verify_paving_theorem(trials=args.trials, seed=args.seed)
    if name == "paving-general":
        return campaigns.verify_paving_general(trials=args.trials, seed=args.seed)
    if name == "losonczy":
        if args.mod:
            ctx = GroupCtx.finite(args.mod)
            universe = range(args.mod)
        else:
            ctx = GroupCtx.free(1)
            universe = range(-args.radius, args.radius + 1)
        return campaigns.verify_losonczy(ctx, universe, args.max_size)
    if name == "small-sets":
        return campaigns.verify_small_sets(p=args.mod or 13, trials=args.trials, seed=args.seed)
    if name == "examples":
        return campaigns.verify_examples()
    raise UsageError(f"unknown campaign {name!r}; choose from {sorted(campaigns.CAMPAIGNS)}")


def _print_results(results: list[campaigns.CampaignResult], fmt: str, out: str | None) -> None:
    if fmt == "json":
        payload = [r.to_json() for r in results]
        _emit(payload[0] if len(payload) == 1 else payload, out)
        return
    rows = [[r.campaign, "PASS" if r.passed else "FAIL", r.instances, r.skipped,
             len(r.failures), f"{r.elapsed:.2f}s"] for r in results]
    print(_table(rows, ["campaign", "status", "instances", "skipped", "failures", "time"]))
    for r in results:
        for note in r.notes:
            print(f"note [{r.campaign}]: {note}")
        for f in r.failures[:5]:
            print(f"failure [{r.campaign}]: {json.dumps(f)}")
        if len(r.failures) > 5:
            print(f"... {len(r.failures) - 5} more failures in {r.campaign} (use --format json)")


def cmd_verify(args) -> int:
    names = sorted(campaigns.CAMPAIGNS) if args.campaign == "all" else [args.campaign]
    results = [run_campaign(name, args) for name in names]
    _print_results(results, args.format, args.output)
    return EXIT_OK if all(r.passed for r in results) else EXIT_FAIL


def cmd_examples(args) -> int:
    args.campaign = "examples"
    return cmd_verify(args)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="abelmatch", description="Matchability of matroids over abelian groups")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["json", "table"], default="json")
    common.add_argument("--output", "-o", default=None, help="write JSON here instead of stdout")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", parents=[common], help="build and validate a matroid document")
    p.add_argument("input", help="inline JSON, file path, or -")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("bases", parents=[common], help="list the bases of a matroid")
    p.add_argument("input")
    p.set_defaults(func=cmd_bases)

    p = sub.add_parser("match", parents=[common], help="is M matched to N?")
    p.add_argument("M")
    p.add_argument("N")
    p.add_argument("--method", choices=METHODS, default="auto")
    p.set_defaults(func=cmd_match)

    campaign_opts = argparse.ArgumentParser(add_help=False)
    campaign_opts.add_argument("--seed", type=int, default=0)
    campaign_opts.add_argument("--trials", type=int, default=1000)
    campaign_opts.add_argument("--max-m", type=int, default=None)
    campaign_opts.add_argument("--min-n", type=int, default=1)
    campaign_opts.add_argument("--mod", type=int, default=None, help="modulus for losonczy / prime for small-sets")
    campaign_opts.add_argument("--radius", type=int, default=4, help="losonczy universe {-r..r} in Z")
    campaign_opts.add_argument("--max-size", type=int, default=None)

    p = sub.add_parser("verify", parents=[common, campaign_opts], help="run a verification campaign")
    p.add_argument("campaign", help=f"one of {sorted(campaigns.CAMPAIGNS)} or 'all'")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("examples", parents=[common, campaign_opts], help="reproduce the worked examples")
    p.set_defaults(func=cmd_examples)
    return ap


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (UsageError, AbelMatchError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
