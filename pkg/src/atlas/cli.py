"""Command-line entry point.

Exit codes: 0 success, 1 validation/data failure, 2 usage error. Artifacts go
to stdout, diagnostics to stderr; nothing is written except through -o.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .cases import build_report, event_to_json, parse_case, thread_placements
from .coa import ActionMap, build_coa_matrix, coa_to_json, render_coa
from .data import load_corpus, load_defense_map
from .diamond import enumerate_paths, pivot
from .errors import AtlasError
from .killchain import PhaseMap
from .profiles import build_profile, export_navigator_layer, layer_to_json


def _profile_markdown(profile) -> str:
    lines = [f"# {profile.group.name} ({profile.group.id})", ""]
    if profile.description:
        lines.extend([profile.description, ""])
    lines.append("Aliases: " + ", ".join(profile.aliases))
    if profile.software:
        lines.append("Software: " + ", ".join(s.name for s in profile.software))
    lines.extend(["", "| Tactic | Technique |", "| --- | --- |"])
    for tactic, pairs in profile.ttp.items():
        for tid, name in pairs:
            lines.append(f"| {tactic.display} | {tid} {name} |")
    return "\n".join(lines) + "\n"


def _emit(text: str, out_path: str | None) -> None:
    if out_path:
        Path(out_path).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _cmd_profile(args) -> int:
    corpus = load_corpus(args.attack)
    profile = build_profile(corpus, args.group, include_software_derived=args.software_derived)
    _emit(_profile_markdown(profile), args.output)
    return 0


def _cmd_layer(args) -> int:
    corpus = load_corpus(args.attack)
    profile = build_profile(corpus, args.group)
    layer = export_navigator_layer(profile, color=args.color)
    _emit(layer_to_json(layer), args.output)
    return 0


def _cmd_case_validate(args) -> int:
    case = parse_case(Path(args.file).read_bytes())
    print(
        f"OK: {args.file} ({len(case.observations)} observations, "
        f"{len(case.thread.events)} events, {len(case.thread.arcs)} arcs)"
    )
    return 0


def _cmd_case_report(args) -> int:
    case = parse_case(Path(args.file).read_bytes())
    report = build_report(
        case,
        load_corpus(args.attack),
        load_defense_map(args.defense),
        PhaseMap.default(),
        ActionMap.default(),
    )
    _emit(report.markdown(), args.output)
    return 0


def _case_matrix(args):
    case = parse_case(Path(args.file).read_bytes())
    phase_map = PhaseMap.default().with_overrides(case.phase_overrides)
    return build_coa_matrix(
        case.observation_pairs(),
        phase_map,
        load_defense_map(args.defense),
        ActionMap.default(),
        extra_placements=thread_placements(case.thread),
    )


def _cmd_coa(args) -> int:
    matrix = _case_matrix(args)
    if args.format == "json":
        text = json.dumps(coa_to_json(matrix), indent=2, ensure_ascii=False) + "\n"
    else:
        text = render_coa(matrix, {"md": "markdown"}.get(args.format, args.format))
    _emit(text, args.output)
    return 0


def _cmd_pivot(args) -> int:
    case = parse_case(Path(args.file).read_bytes())
    events = pivot(case.thread, args.field, args.value)
    _emit(json.dumps([event_to_json(e) for e in events], indent=2, ensure_ascii=False) + "\n",
          args.output)
    return 0


def _cmd_paths(args) -> int:
    case = parse_case(Path(args.file).read_bytes())
    _emit(json.dumps(enumerate_paths(case.thread)) + "\n", args.output)
    return 0


def _cmd_serve(args) -> int:
    from .service import run_server

    run_server(data_dir=args.data_dir, bind=args.bind)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="atlas",
        description="Threat-informed defense toolkit: profiles, kill chains, "
        "diamond threads and course-of-action matrices.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_shared(p, attack=False, defense=False, output=True):
        if attack:
            p.add_argument("--attack", metavar="PATH", help="ATT&CK bundle path")
        if defense:
            p.add_argument("--defense", metavar="PATH", help="defense map path")
        if output:
            p.add_argument("-o", "--output", metavar="PATH", help="write to file instead of stdout")

    p = sub.add_parser("profile", help="render an adversary profile")
    p.add_argument("group")
    p.add_argument("--software-derived", action="store_true",
                   help="include techniques used by the group's software")
    add_shared(p, attack=True)
    p.set_defaults(func=_cmd_profile)

    p = sub.add_parser("layer", help="export a Navigator layer for a group")
    p.add_argument("group")
    p.add_argument("--color", default="#ff6666", help="highlight color")
    add_shared(p, attack=True)
    p.set_defaults(func=_cmd_layer)

    case_parser = sub.add_parser("case", help="case file operations")
    case_sub = case_parser.add_subparsers(dest="case_command", required=True)

    p = case_sub.add_parser("validate", help="validate a case file")
    p.add_argument("file")
    p.set_defaults(func=_cmd_case_validate)

    p = case_sub.add_parser("report", help="render the full case report")
    p.add_argument("file")
    add_shared(p, attack=True, defense=True)
    p.set_defaults(func=_cmd_case_report)

    p = sub.add_parser("coa", help="course-of-action matrix for a case")
    p.add_argument("file")
    p.add_argument("--format", choices=["md", "markdown", "csv", "json"], default="md")
    add_shared(p, defense=True)
    p.set_defaults(func=_cmd_coa)

    p = sub.add_parser("pivot", help="query diamond events in a case")
    p.add_argument("file")
    p.add_argument("--field", required=True)
    p.add_argument("--value", required=True)
    add_shared(p)
    p.set_defaults(func=_cmd_pivot)

    p = sub.add_parser("paths", help="enumerate maximal attack paths in a case")
    p.add_argument("file")
    add_shared(p)
    p.set_defaults(func=_cmd_paths)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--bind", metavar="HOST:PORT", default=None)
    p.add_argument("--data-dir", metavar="PATH", default=None)
    p.set_defaults(func=_cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except AtlasError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
