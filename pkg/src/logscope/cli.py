"""Command-line front end.

Exit codes: 0 on success, 1 on data errors (parse failures, violations
found, missing files), 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import infer, report, search, server, sim2pc
from .errors import LogscopeError
from .graph import CausalGraph, build_graph, max_events_limit
from .logmodel import ParseConfig, ParsedLog, parse_log, validate
from .sim2pc import SimConfig, Vote

PROG = "logscope"

MOTIF_HELP = (
    "motif text form: steps in brackets joined by links, e.g. "
    "'[action=prepare] -comm-> [*] -comm-> [host=node-2]'. "
    "Step predicates: action=NAME, host=NAME, desc~TEXT, or * for any; "
    "combine with commas. Links: -hb-> (happens-before), -comm-> "
    "(communication edge), -next-> (next event on the same host)."
)


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text(encoding="utf-8")


def _parse_file(path: str, pattern: str | None, allow_unmatched: bool) -> ParsedLog:
    cfg = ParseConfig(pattern=pattern) if pattern else ParseConfig()
    mode = "collect" if allow_unmatched else "error"
    log = parse_log(_read_text(path), cfg, on_unmatched=mode)
    for line_no, line in log.unmatched:
        print(f"warning: line {line_no} skipped: {line}", file=sys.stderr)
    return log


def _load_graph(path: str, pattern: str | None = None, allow_unmatched: bool = False) -> CausalGraph:
    return build_graph(_parse_file(path, pattern, allow_unmatched), max_events_limit())


def _add_log_options(p: argparse.ArgumentParser) -> None:
    p.add_argument("--log", required=True, help="log file to analyze ('-' for stdin)")
    p.add_argument("--pattern", help="custom line regex with named groups host, clock, event")
    p.add_argument(
        "--allow-unmatched",
        action="store_true",
        help="downgrade non-matching lines to warnings instead of failing",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog=PROG,
        description="Happens-before analysis of vector-clock-annotated logs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("parse", help="parse a log and summarize it")
    _add_log_options(p)
    p.add_argument("--json", action="store_true", help="emit events as JSON")

    p = sub.add_parser("validate", help="check a log against the clock update rules")
    p.add_argument("log", help="log file to validate")
    p.add_argument("--pattern", help="custom line regex with named groups host, clock, event")
    p.add_argument("--allow-unmatched", action="store_true")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("search", help="keyword or motif search over the causal graph")
    _add_log_options(p)
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--keyword", help="keyword to search for")
    group.add_argument("--motif", help=MOTIF_HELP)
    p.add_argument(
        "--mode",
        choices=[search.ACTION_EXACT, search.SUBSTRING],
        default=search.ACTION_EXACT,
        help="keyword matching mode (default: action-exact)",
    )
    p.add_argument(
        "--allow-repeats",
        action="store_true",
        help="let one event fill several motif steps",
    )
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("grep", help="substring filter over raw log lines")
    p.add_argument("pattern", help="substring to look for (empty matches all lines)")
    p.add_argument("file", nargs="?", default="-", help="input file (default: stdin)")
    p.add_argument("--head", type=int, help="keep only the first K matches")
    p.add_argument("--tail", type=int, help="keep only the last K matches")

    p = sub.add_parser("order", help="happens-before ordering of two events")
    _add_log_options(p)
    p.add_argument("--a", type=int, required=True, help="first event id")
    p.add_argument("--b", type=int, required=True, help="second event id")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("concurrent", help="list all causally incomparable event pairs")
    _add_log_options(p)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("infer", help="rank root-cause classes for a symptom class")
    _add_log_options(p)
    p.add_argument("--symptom", required=True, help="effect class (an action value)")
    p.add_argument("--top", type=int, default=5, help="how many causes to report (default 5)")
    p.add_argument("--alpha", type=float, default=1.0, help="Laplace smoothing (default 1)")
    p.add_argument("--model-out", help="also write the estimated model as JSON")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("simulate-2pc", help="run the deterministic 2PC simulator")
    p.add_argument("--manager", default=None, help="manager host (default node-2)")
    p.add_argument("--participants", default=None, help="comma-separated participant hosts")
    p.add_argument("--votes", default=None, help="comma-separated host=commit|abort pairs")
    p.add_argument(
        "--delay",
        action="append",
        default=[],
        metavar="SRC,DST,MS",
        help="propagation delay for one ordered pair (repeatable)",
    )
    p.add_argument("--default-delay", type=int, help="delay for pairs not set via --delay")
    p.add_argument(
        "--processing",
        action="append",
        default=[],
        metavar="HOST=MS",
        help="per-host processing delay before outgoing messages (repeatable)",
    )
    p.add_argument("--seed", type=int, default=0, help="reserved for randomized delay modes")
    p.add_argument("--config", help="JSON file with the simulation config")
    p.add_argument("--fig4-labels", action="store_true", help="use the published example's event labels")
    p.add_argument("--out", help="write the log here instead of stdout")
    p.add_argument("--export", help="also write the graph export JSON (includes sim times)")

    p = sub.add_parser("export", help="write the causal-graph JSON export")
    _add_log_options(p)
    p.add_argument("--out", required=True, help="output JSON path")

    p = sub.add_parser("report", help="write a time-space diagram and events TSV")
    _add_log_options(p)
    p.add_argument("--out-dir", required=True, help="directory for report files")
    p.add_argument("--format", choices=["png", "svg"], default="png")
    p.add_argument("--keyword", help="highlight events matching this keyword")
    p.add_argument(
        "--mode",
        choices=[search.ACTION_EXACT, search.SUBSTRING],
        default=search.ACTION_EXACT,
    )

    p = sub.add_parser("serve", help="serve the export JSON and UI bundle over HTTP")
    p.add_argument("--data", required=True, help="graph export JSON file")
    p.add_argument("--bundle", help="directory with built UI assets")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)

    return parser


def _cmd_parse(args: argparse.Namespace) -> int:
    log = _parse_file(args.log, args.pattern, args.allow_unmatched)
    if args.json:
        doc = [
            {
                "id": e.id,
                "host": e.host,
                "clock": dict(e.clock.items()),
                "action": e.action,
                "description": e.description,
            }
            for e in log.events
        ]
        print(json.dumps(doc, indent=2))
    else:
        print(f"{len(log.events)} events over {len(log.hosts)} hosts: {', '.join(log.hosts)}")
    return 0


def _cmd_validate(args: argparse.Namespace) -> int:
    log = _parse_file(args.log, args.pattern, args.allow_unmatched)
    violations = validate(log)
    if args.json:
        print(
            json.dumps(
                [
                    {"kind": v.kind, "event": v.event_id, "host": v.host, "message": v.message}
                    for v in violations
                ],
                indent=2,
            )
        )
    else:
        for v in violations:
            print(str(v))
        if not violations:
            print(f"ok: {len(log.events)} events, no violations")
    return 1 if violations else 0


def _cmd_search(args: argparse.Namespace) -> int:
    g = _load_graph(args.log, args.pattern, args.allow_unmatched)
    if args.keyword is not None:
        ids = sorted(search.keyword_search(g, args.keyword, mode=args.mode))
        if args.json:
            print(json.dumps(ids))
        else:
            for eid in ids:
                print(f"{eid}\t{g.event(eid).render()}")
            print(f"{len(ids)} match(es)", file=sys.stderr)
        return 0
    motif = search.parse_motif(args.motif, distinct=not args.allow_repeats)
    matches = search.motif_search(g, motif)
    if args.json:
        print(json.dumps([list(t) for t in matches]))
    else:
        for t in matches:
            print(" -> ".join(f"{eid}:{g.event(eid).action}" for eid in t))
        print(f"{len(matches)} match(es)", file=sys.stderr)
    return 0


def _cmd_grep(args: argparse.Namespace) -> int:
    text = _read_text(args.file)
    sys.stdout.write(search.grep_filter(text, args.pattern, head=args.head, tail=args.tail))
    return 0


def _cmd_order(args: argparse.Namespace) -> int:
    g = _load_graph(args.log, args.pattern, args.allow_unmatched)
    ordering = g.ordering(args.a, args.b)
    if args.json:
        print(json.dumps({"a": args.a, "b": args.b, "ordering": str(ordering)}))
    else:
        print(str(ordering))
    return 0


def _cmd_concurrent(args: argparse.Namespace) -> int:
    g = _load_graph(args.log, args.pattern, args.allow_unmatched)
    pairs = g.concurrent_pairs()
    if args.json:
        print(json.dumps([list(p) for p in pairs]))
    else:
        for a, b in pairs:
            print(f"{a}\t{b}\t{g.event(a).action} || {g.event(b).action}")
        print(f"{len(pairs)} concurrent pair(s)", file=sys.stderr)
    return 0


def _cmd_infer(args: argparse.Namespace) -> int:
    g = _load_graph(args.log, args.pattern, args.allow_unmatched)
    model = infer.estimate_model(g, alpha=args.alpha)
    if args.model_out:
        Path(args.model_out).write_text(
            json.dumps(model.to_dict(), indent=2) + "\n", encoding="utf-8"
        )
    ranked = infer.rank_root_causes(model, args.symptom, args.top)
    if args.json:
        print(json.dumps([{"cause": p.cause, "probability": p.probability} for p in ranked]))
    else:
        for p in ranked:
            print(f"{p.probability:.6f}\t{p.cause}")
        if not ranked:
            print("no causal ancestors found", file=sys.stderr)
    return 0


def _parse_sim_args(args: argparse.Namespace) -> SimConfig:
    if args.config:
        return sim2pc.load_config(args.config)
    base = sim2pc.fig4_config()
    manager = args.manager or base.manager
    participants = (
        tuple(h.strip() for h in args.participants.split(",") if h.strip())
        if args.participants
        else base.participants
    )
    if args.votes:
        votes = {}
        for pair in args.votes.split(","):
            host, _, value = pair.partition("=")
            votes[host.strip()] = Vote.parse(value)
    else:
        votes = dict(base.votes) if participants == base.participants else {}
    delays: dict[tuple[str, str], int] = {}
    if not args.delay and not args.default_delay and participants == base.participants and manager == base.manager:
        delays = dict(base.delays)
    for spec in args.delay:
        try:
            src, dst, ms = spec.split(",")
            delays[(src.strip(), dst.strip())] = int(ms)
        except ValueError:
            raise sim2pc.InvalidConfig(f"bad --delay {spec!r}, expected SRC,DST,MS") from None
    if args.default_delay is not None:
        for p in participants:
            delays.setdefault((manager, p), args.default_delay)
            delays.setdefault((p, manager), args.default_delay)
    processing: dict[str, int] = {}
    for spec in args.processing:
        host, _, ms = spec.partition("=")
        try:
            processing[host.strip()] = int(ms)
        except ValueError:
            raise sim2pc.InvalidConfig(f"bad --processing {spec!r}, expected HOST=MS") from None
    return SimConfig(
        manager=manager,
        participants=participants,
        delays=delays,
        votes=votes,
        local_processing=processing,
        seed=args.seed,
    )


def _cmd_simulate(args: argparse.Namespace) -> int:
    cfg = _parse_sim_args(args)
    log = sim2pc.simulate(cfg, paper_labels=args.fig4_labels)
    text = log.render()
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    if args.export:
        g = build_graph(log, max_events_limit())
        Path(args.export).write_text(g.to_json(), encoding="utf-8")
    return 0


def _cmd_export(args: argparse.Namespace) -> int:
    g = _load_graph(args.log, args.pattern, args.allow_unmatched)
    Path(args.out).write_text(g.to_json(), encoding="utf-8")
    return 0


def _cmd_report(args: argparse.Namespace) -> int:
    g = _load_graph(args.log, args.pattern, args.allow_unmatched)
    highlight: set[int] = set()
    if args.keyword:
        highlight = search.keyword_search(g, args.keyword, mode=args.mode)
    paths = report.write_report(g, Path(args.out_dir), image_format=args.format, highlight=highlight)
    for path in paths:
        print(str(path))
    return 0


def _cmd_serve(args: argparse.Namespace) -> int:
    httpd = server.make_server(args.data, bundle_dir=args.bundle, host=args.host, port=args.port)
    print(f"serving on http://{args.host}:{httpd.server_address[1]}/ (Ctrl-C to stop)")
    try:
        httpd.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        httpd.server_close()
    return 0


_HANDLERS = {
    "parse": _cmd_parse,
    "validate": _cmd_validate,
    "search": _cmd_search,
    "grep": _cmd_grep,
    "order": _cmd_order,
    "concurrent": _cmd_concurrent,
    "infer": _cmd_infer,
    "simulate-2pc": _cmd_simulate,
    "export": _cmd_export,
    "report": _cmd_report,
    "serve": _cmd_serve,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _HANDLERS[args.command](args)
    except LogscopeError as exc:
        print(f"{PROG}: error: {exc}", file=sys.stderr)
        return 1
    except FileNotFoundError as exc:
        print(f"{PROG}: error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"{PROG}: error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"{PROG}: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
