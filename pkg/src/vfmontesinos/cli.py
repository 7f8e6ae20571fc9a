"""Command-line front end.

Exit codes: 0 certificate PASS (or a batch without failures), 1 the theorem
does not apply, 2 a proof obligation failed (a bug, never a discovery),
3 malformed input, 4 I/O failure.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import product

from . import graph_manifold as gm
from .cover import build_curve_system, build_cover_tower, decompose_arcs, f1_dot, incidence_dot
from .pipeline import Outcome, run
from .seifert import cover_euler_data
from .tangle import (
    MontesinosLink,
    TangleFraction,
    TangleParseError,
    component_count,
    parse_montesinos,
    validate_theorem_hypotheses,
)

EXIT_PASS, EXIT_NOT_APPLICABLE, EXIT_FAIL, EXIT_PARSE, EXIT_IO = 0, 1, 2, 3, 4

FAIL_NOTE = "proof obligation failed; this is a bug in the checker, not a mathematical discovery"


@dataclass(frozen=True)
class RunConfig:
    command: str
    notation: str | None = None
    p_range: tuple[int, int] | None = None
    n_range: tuple[int, int] | None = None
    q_set: tuple[int, ...] = ()
    output_format: str = "text"
    dot: str | None = None
    out: str | None = None
    jobs: int = 1


def _use_color(stream) -> bool:
    return "NO_COLOR" not in os.environ and hasattr(stream, "isatty") and stream.isatty()


def _paint(text: str, status: str, color: bool) -> str:
    if not color:
        return text
    code = {"PASS": "32", "FAIL": "31", "NotApplicable": "33"}.get(status)
    return f"\033[{code}m{text}\033[0m" if code else text


def parse_range(text: str) -> tuple[int, int]:
    """``a..b`` (inclusive) or a single integer."""
    if ".." in text:
        lo, hi = text.split("..", 1)
        return int(lo), int(hi)
    v = int(text)
    return v, v


def parse_set(text: str) -> tuple[int, ...]:
    text = text.strip().strip("{}")
    if not text:
        return ()
    out = []
    for part in text.split(","):
        part = part.strip()
        if ".." in part[1:]:
            cut = part.index("..", 1)
            lo, hi = int(part[:cut]), int(part[cut + 2:])
            out.extend(range(lo, hi + 1))
        else:
            out.append(int(part))
    return tuple(sorted(set(out)))


def _emit(text: str, out: str | None):
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _exit_for(outcome: Outcome) -> int:
    return {"PASS": EXIT_PASS, "NotApplicable": EXIT_NOT_APPLICABLE}.get(outcome.status, EXIT_FAIL)


def _text_report(o: Outcome, color: bool) -> str:
    lines = [f"link: {o.to_dict()['input']}"]
    if o.invariants:
        inv = o.invariants
        lines.append(f"e(W_K) = {inv['euler_number_wk']}   chi = {inv['chi_orb']}   geometry = {inv['geometry']}")
    if o.certificate is None:
        lines.append(_paint(f"verdict: NotApplicable ({o.reason})", "NotApplicable", color))
        return "\n".join(lines) + "\n"
    cert = o.certificate
    a, inv, sb = cert.applicability, cert.invariants, cert.semibundle["solution"]
    lines.append(f"case: {a['case']}   class: {a['link_class']}" + ("   (extrapolated)" if a["extrapolated"] else ""))
    lines.append(f"e = {inv['e']}   e~ = {inv['e_tilde']}   genus(F) = {inv['f_genus']}")
    lines.append(f"(lambda, lambda_bar) = ({sb['lambda']}, {sb['lambda_bar']})   eps = ({sb['eps1']}, {sb['eps2']})")
    lines.append(f"Gamma: {len(cert.gamma)} tori   crossing records: {len(cert.records)} nonzero")
    for name, (ok, anchor) in sorted(cert.checks.items()):
        mark = "ok  " if ok else "FAIL"
        lines.append(f"  [{mark}] {name}  ({anchor})")
    lines.append(_paint(f"verdict: {cert.verdict}", cert.verdict, color))
    if not cert.passed:
        lines.append(FAIL_NOTE)
    return "\n".join(lines) + "\n"


def _dot_for(link: MontesinosLink, which: str) -> str:
    report = validate_theorem_hypotheses(link)
    if not report.applicable:
        raise ValueError(f"no diagram: {report.reason}")
    if which in ("incidence", "f1"):
        system = build_curve_system(build_cover_tower(link))
        return incidence_dot(system) if which == "incidence" else f1_dot(decompose_arcs(system))
    if which in ("jsj", "jsj-doubled"):
        basis = gm.BasisChange.for_class(component_count(link))
        ced = cover_euler_data(link)
        return gm.build_jsj_graph(ced.p, basis, ced.e_tilde, doubled=which == "jsj-doubled").to_dot()
    raise ValueError(f"unknown diagram {which!r}")


def run_check(cfg: RunConfig) -> int:
    try:
        link = parse_montesinos(cfg.notation)
    except TangleParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    outcome = run(link)
    try:
        if cfg.dot:
            if outcome.certificate is None:
                print(f"not applicable: {outcome.reason}", file=sys.stderr)
                return EXIT_NOT_APPLICABLE
            _emit(_dot_for(link, cfg.dot), cfg.out)
        elif cfg.output_format == "json":
            _emit(outcome.to_json(), cfg.out)
        else:
            _emit(_text_report(outcome, _use_color(sys.stdout) and not cfg.out), cfg.out)
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO
    if outcome.status == "FAIL":
        print(FAIL_NOTE, file=sys.stderr)
    return _exit_for(outcome)


def sweep(p_range, n_range, q_set) -> list[MontesinosLink]:
    """Links of the sweep in lexicographic (p, n, q) order; even p are skipped."""
    links = []
    if not q_set:
        return links
    for p in range(p_range[0], p_range[1] + 1):
        if p % 2 == 0 or p < 2:
            continue
        for n in range(n_range[0], n_range[1] + 1):
            for qs in product(q_set, repeat=n):
                links.append(MontesinosLink(tuple(TangleFraction(q, p) for q in qs)))
    return links


def _row(link: MontesinosLink) -> dict:
    o = run(link)
    inv = o.invariants or {}
    return {
        "input": str(link),
        "p": str(link.common_denominator()),
        "n": str(link.n),
        "e_wk": inv.get("euler_number_wk"),
        "chi_orb": inv.get("chi_orb"),
        "geometry": inv.get("geometry"),
        "case": o.report.case.value,
        "verdict": o.status,
        "reason": o.reason,
    }


def run_batch(cfg: RunConfig) -> int:
    links = sweep(cfg.p_range, cfg.n_range, cfg.q_set)
    if cfg.jobs > 1 and len(links) > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            rows = list(pool.map(_row, links))
    else:
        rows = [_row(link) for link in links]
    if cfg.output_format == "json":
        text = json.dumps(rows, sort_keys=True, indent=2) + "\n"
    else:
        color = _use_color(sys.stdout) and not cfg.out
        head = f"{'link':<40} {'e(W_K)':>8} {'chi':>8} {'case':<13} verdict"
        lines = [head]
        for r in rows:
            verdict = r["verdict"] + (f" ({r['reason']})" if r["reason"] else "")
            lines.append(
                f"{r['input']:<40} {r['e_wk'] or '-':>8} {r['chi_orb'] or '-':>8} {r['case']:<13} "
                + _paint(verdict, r["verdict"], color)
            )
        counts = {}
        for r in rows:
            counts[r["verdict"]] = counts.get(r["verdict"], 0) + 1
        lines.append(f"{len(rows)} rows: " + ", ".join(f"{k} {v}" for k, v in sorted(counts.items())))
        text = "\n".join(lines) + "\n"
    try:
        _emit(text, cfg.out)
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO
    if any(r["verdict"] == "FAIL" for r in rows):
        print(FAIL_NOTE, file=sys.stderr)
        return EXIT_FAIL
    return EXIT_PASS


def run_dot(cfg: RunConfig) -> int:
    try:
        link = parse_montesinos(cfg.notation)
    except TangleParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    try:
        text = _dot_for(link, cfg.dot)
    except ValueError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_NOT_APPLICABLE
    try:
        _emit(text, cfg.out)
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_PASS


class _Parser(argparse.ArgumentParser):
    # usage errors are malformed input, not exit status 2 (reserved for FAIL)
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_PARSE)


RANGE_FLAGS = ("--p", "--n", "--q")


def _attach_range_values(argv: list[str]) -> list[str]:
    """Turn ``--q -2..2`` into ``--q=-2..2`` so a leading minus is not an option."""
    out, it = [], iter(argv)
    for tok in it:
        if tok in RANGE_FLAGS:
            nxt = next(it, None)
            out.append(tok if nxt is None else f"{tok}={nxt}")
        else:
            out.append(tok)
    return out


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="vfmontesinos", description="Virtual-fibration certificates for classic Montesinos links.")
    sub = ap.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", help="certify a single link")
    c.add_argument("link", help='tangle notation, e.g. "(1/5, 1/5, 1/5)"')
    c.add_argument("--json", action="store_true", help="emit the JSON certificate")
    c.add_argument("--dot", choices=("incidence", "f1", "jsj", "jsj-doubled"), help="emit a DOT diagram instead")
    c.add_argument("--out", help="write to this path instead of stdout")

    b = sub.add_parser("batch", help="sweep p, n and numerators")
    b.add_argument("--p", required=True, help="p range a..b (even values skipped)")
    b.add_argument("--n", default="3", help="n range a..b")
    b.add_argument("--q", required=True, help="numerator set, e.g. 1,2 or -2..2")
    b.add_argument("--json", action="store_true")
    b.add_argument("--jobs", type=int, default=1)
    b.add_argument("--out")

    d = sub.add_parser("cover-dot", help="DOT for the curve-incidence or F_1 graph")
    d.add_argument("link")
    d.add_argument("--which", choices=("incidence", "f1"), default="f1")
    d.add_argument("--out")

    j = sub.add_parser("jsj-dot", help="DOT for the JSJ graph of M or its double cover")
    j.add_argument("link")
    j.add_argument("--doubled", action="store_true")
    j.add_argument("--out")
    return ap


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    args = build_parser().parse_args(_attach_range_values(argv))
    try:
        if args.command == "check":
            cfg = RunConfig("check", args.link, output_format="json" if args.json else "text", dot=args.dot, out=args.out)
            return run_check(cfg)
        if args.command == "batch":
            cfg = RunConfig(
                "batch",
                p_range=parse_range(args.p),
                n_range=parse_range(args.n),
                q_set=parse_set(args.q),
                output_format="json" if args.json else "text",
                out=args.out,
                jobs=max(1, args.jobs),
            )
            return run_batch(cfg)
        if args.command == "cover-dot":
            return run_dot(RunConfig("cover-dot", args.link, output_format="dot", dot=args.which, out=args.out))
        return run_dot(
            RunConfig("jsj-dot", args.link, output_format="dot", dot="jsj-doubled" if args.doubled else "jsj", out=args.out)
        )
    except ValueError as exc:
        # bad ranges or sets on the command line
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
