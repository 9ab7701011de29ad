"""
Main Entry Point for the coxsplit toolkit

Analyzes visual splittings of Coxeter groups, builds decompositions that are
irreducible with respect to minimal splittings and certifies split sequences

Usage:
    python main.py analyze minimal --system sysA.json
    python main.py word reduce --system a2.json --word "s t s t"
    python main.py decompose --system sysB.json --trace
    python main.py validate --system sysB.json --gog bad.json
    python main.py measure c --system dinf.json --gog split.json --search 6
    python main.py certify --system sysD.json --trace trace.json
    python main.py export --system sysC.json --format dot --out gog.dot
    python main.py corpus --out corpus/
"""

import os
import sys
import json
import logging
import argparse
from typing import Any, Callable, Dict, List, Optional

# Add project root to path
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from pydantic import ValidationError

from config import (
    COXSPLIT_CAPS,
    CORPUS_FILES,
    DEFAULT_SEARCH_BOUND,
    EXIT_FINDINGS,
    EXIT_INPUT_ERROR,
    EXIT_OK,
    EXIT_RESOURCE_BOUND,
    GOG_EXPORT_FORMATS,
)
from errors import InputError, InvalidMoveError, PreconditionError, ResourceBoundExceeded
from models import EngineCaps, RunConfig, SplitMove
from analysis.accessibility_analyzer import AccessibilityAnalyzer, create_analyzer
from data.sample_systems import get_sample_systems
from utils.system_utils import format_subset

logger = logging.getLogger("coxsplit")

ANALYZE_ACTIONS = ("finite-type", "split-ea", "lk2", "separators", "minimal", "kgroups", "cliques", "conjugates")
WORD_ACTIONS = ("reduce", "equal", "lett", "coset", "intersect")
MEASURE_ACTIONS = ("c", "bound", "traces")


# ============================================================================
# TEXT REPORTS
# ============================================================================

def format_separator_table(records: List[Dict[str, Any]]) -> str:
    """Separators with their components, infinite-type part and minimality"""
    lines = [
        "{:<22} {:<30} {:<16} {:<8}".format("Separator", "Components", "E", "Minimal"),
        "-" * 80,
    ]
    for record in records:
        minimal = record.get("minimal")
        flag = "-" if minimal is None else ("yes" if minimal else "no")
        lines.append("{:<22} {:<30} {:<16} {:<8}".format(
            format_subset(record["C"]),
            " ".join(format_subset(c) for c in record["components"]),
            format_subset(record["E"]),
            flag,
        ))
    lines.append("-" * 80)
    lines.append(f"Separators: {len(records)}  Minimal: {sum(1 for r in records if r.get('minimal'))}")
    return "\n".join(lines)


def format_gog(gog: Dict[str, Any]) -> List[str]:
    lines = ["Vertices:"]
    for vertex in gog["vertices"]:
        lines.append(f"  v{vertex['id']}: {format_subset(vertex['label'])}")
    lines.append("Edges:")
    for edge in gog["edges"]:
        lines.append(f"  v{edge['u']} -- v{edge['v']}: {format_subset(edge['label'])}")
    return lines


def format_decomposition(report: Dict[str, Any]) -> str:
    lines = ["IRREDUCIBLE VISUAL DECOMPOSITION", "=" * 60]
    lines += format_gog(report["gog"])
    lines.append(f"Looks irreducible: {report['looks_irreducible']}")
    if report.get("trace") is not None:
        lines.append(f"Trace ({len(report['trace'])} moves):")
        for i, move in enumerate(report["trace"], 1):
            lines.append(
                f"  {i}. split {format_subset(move['vertex_label'])} over {format_subset(move['E'])}"
                f" into {format_subset(move['part_a'])} | {format_subset(move['part_b'])}"
            )
    return "\n".join(lines)


def format_certification(report: Dict[str, Any]) -> str:
    lines = [
        "{:<6} {:<26} {:<14} {:>14} {:>14}  {}".format("Step", "Vertex", "E", "c before", "c after", "Status"),
        "-" * 90,
    ]
    for step in report["steps"]:
        lines.append("{:<6} {:<26} {:<14} {:>14} {:>14}  {}".format(
            step["index"],
            format_subset(step["vertex_label"]),
            format_subset(step["E"]),
            step["c_before"],
            step["c_after"],
            step["status"],
        ))
    lines.append("-" * 90)
    lines.append(f"Length {report['length']} <= bound: {report['within_bound']}")
    lines.append(f"Certified: {report['certified']}")
    return "\n".join(lines)


def format_generic(payload: Any) -> str:
    """Top-level key: value lines, nested values as compact JSON"""
    if not isinstance(payload, dict):
        return json.dumps(payload)
    lines = []
    for key, value in payload.items():
        if isinstance(value, (dict, list)):
            value = json.dumps(value)
        lines.append(f"{key}: {value}")
    return "\n".join(lines)


def emit(config: RunConfig, payload: Any, text_format: Callable[[Any], str] = format_generic) -> None:
    """Write a report as JSON or text to --out or standard output"""
    if config.output_format == "text":
        body = text_format(payload)
    else:
        body = json.dumps(payload, indent=2)
    write_output(config, body)


def write_output(config: RunConfig, body: str) -> None:
    if config.out:
        directory = os.path.dirname(config.out)
        if directory:
            os.makedirs(directory, exist_ok=True)
        with open(config.out, "w", encoding="utf-8") as f:
            f.write(body if body.endswith("\n") else body + "\n")
        print(f"Output saved to: {config.out}")
    else:
        print(body)


# ============================================================================
# INPUT HELPERS
# ============================================================================

def read_text(path: Optional[str], what: str) -> str:
    if not path:
        raise InputError(f"--{what} is required for this command")
    try:
        with open(path, "r", encoding="utf-8") as f:
            return f.read()
    except OSError as e:
        raise InputError(f"cannot read {what} file {path}: {e}") from e


def parse_word(text: str) -> List[str]:
    return text.split()


def load_trace(text: str) -> List[SplitMove]:
    """Trace JSON: a list of moves, or an object with a "trace" list as written by decompose"""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError(f"trace is not valid JSON: {e}") from e
    if isinstance(data, dict):
        data = data.get("trace")
    if not isinstance(data, list):
        raise InputError("trace must be a list of split moves")
    try:
        return [SplitMove.model_validate(step) for step in data]
    except ValidationError as e:
        raise InputError(f"invalid trace step: {e.errors()[0].get('msg', str(e))}") from e


def dump(model: Any) -> Any:
    if isinstance(model, list):
        return [dump(item) for item in model]
    if hasattr(model, "model_dump"):
        return model.model_dump(mode="json")
    return model


# ============================================================================
# COMMANDS
# ============================================================================

def run_analyze(config: RunConfig, analyzer: AccessibilityAnalyzer) -> int:
    action = config.action
    if action == "finite-type":
        emit(config, dump(analyzer.finite_type(config.subset)))
    elif action == "split-ea":
        emit(config, dump(analyzer.split_ea(config.subset)))
    elif action == "lk2":
        subset = analyzer.subset(config.subset)
        emit(config, {"subset": list(subset), "lk2": list(analyzer.lk2(subset))})
    elif action == "separators":
        emit(config, dump(analyzer.separators()), format_separator_table)
    elif action == "minimal":
        emit(config, dump(analyzer.minimal()), format_separator_table)
    elif action == "kgroups":
        emit(config, dump(analyzer.kgroups(dedupe=config.dedupe)))
    elif action == "cliques":
        emit(config, {"cliques": [list(c) for c in analyzer.cliques()]})
    elif action == "conjugates":
        emit(config, {
            "radius": config.conjugacy_search,
            "found": dump(analyzer.conjugates(config.conjugacy_search)),
        })
    return EXIT_OK


def run_word(config: RunConfig, analyzer: AccessibilityAnalyzer) -> int:
    words = [parse_word(text) for text in config.words] or [[]]
    engine = analyzer.words
    action = config.action
    if action == "reduce":
        emit(config, dump(engine.reduce_to_geodesic(words[0])))
    elif action == "equal":
        if len(words) != 2:
            raise InputError("word equal needs exactly two --word arguments")
        emit(config, {"equal": engine.equal(words[0], words[1])})
    elif action == "lett":
        emit(config, {"lett": list(engine.lett(words[0]))})
    elif action == "coset":
        emit(config, dump(engine.min_double_coset_rep(config.left, words[0], config.right)))
    elif action == "intersect":
        conjugator, kept = engine.special_intersection(config.left, words[0], config.right)
        emit(config, {"conjugator": list(conjugator), "K": list(kept)})
    return EXIT_OK


def run_decompose(config: RunConfig, analyzer: AccessibilityAnalyzer) -> int:
    result = analyzer.decompose()
    payload = dump(result)
    if not config.show_trace:
        payload.pop("trace")
    emit(config, payload, format_decomposition)
    return EXIT_OK if result.looks_irreducible else EXIT_FINDINGS


def run_validate(config: RunConfig, analyzer: AccessibilityAnalyzer) -> int:
    gog = analyzer.load_gog(read_text(config.gog_path, "gog"))
    report = analyzer.validate(gog)
    emit(config, dump(report))
    return EXIT_OK if report.valid else EXIT_FINDINGS


def run_measure(config: RunConfig, analyzer: AccessibilityAnalyzer) -> int:
    if config.action == "bound":
        emit(config, {"k_count": analyzer.measure.k_count(), "bound": analyzer.measure_bound()})
        return EXIT_OK
    if config.action == "traces":
        emit(config, dump(analyzer.explore_traces()))
        return EXIT_OK

    gog = analyzer.load_gog(read_text(config.gog_path, "gog"))
    report = analyzer.validate(gog)
    if not report.valid:
        emit(config, dump(report))
        return EXIT_FINDINGS
    emit(config, dump(analyzer.measure_c(gog, config.search_bound)))
    return EXIT_OK


def run_certify(config: RunConfig, analyzer: AccessibilityAnalyzer) -> int:
    trace = load_trace(read_text(config.trace_path, "trace"))
    report = analyzer.certify(trace, config.search_bound)
    emit(config, dump(report), format_certification)
    return EXIT_OK if report.certified else EXIT_FINDINGS


def run_export(config: RunConfig, analyzer: AccessibilityAnalyzer) -> int:
    if config.output_format not in GOG_EXPORT_FORMATS:
        raise InputError(f"export format must be one of {', '.join(GOG_EXPORT_FORMATS)}, got '{config.output_format}'")
    gog = analyzer.load_gog(read_text(config.gog_path, "gog")) if config.gog_path else None
    if gog is not None:
        report = analyzer.validate(gog)
        if not report.valid:
            emit(config, dump(report))
            return EXIT_FINDINGS
    write_output(config, analyzer.export(gog, config.output_format))
    return EXIT_OK


def run_corpus(config: RunConfig) -> int:
    """Write the bundled systems as JSON files into --out (default corpus/)"""
    directory = config.out or "corpus"
    os.makedirs(directory, exist_ok=True)
    systems = get_sample_systems()
    written = []
    for name, filename in CORPUS_FILES.items():
        path = os.path.join(directory, filename)
        with open(path, "w", encoding="utf-8") as f:
            json.dump(systems[name], f, indent=2)
        written.append(path)
    print(json.dumps({"written": written}, indent=2))
    return EXIT_OK


COMMAND_HANDLERS = {
    "analyze": run_analyze,
    "word": run_word,
    "decompose": run_decompose,
    "validate": run_validate,
    "measure": run_measure,
    "certify": run_certify,
    "export": run_export,
}


def run(config: RunConfig) -> int:
    """
    Dispatch one CLI invocation

    Returns:
        0 on success, 1 on input errors, 2 on validation or certification
        findings, 3 when a resource bound was exceeded
    """
    try:
        if config.command == "corpus":
            return run_corpus(config)
        if not config.system_path:
            raise InputError("--system is required")
        analyzer = create_analyzer(system_path=config.system_path, caps=config.caps, search_bound=config.search_bound)
        return COMMAND_HANDLERS[config.command](config, analyzer)
    except InputError as e:
        print(f"ERROR: {e}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    except ResourceBoundExceeded as e:
        print(f"ERROR: {e}", file=sys.stderr)
        return EXIT_RESOURCE_BOUND
    except (InvalidMoveError, PreconditionError) as e:
        print(f"ERROR: {e}", file=sys.stderr)
        return EXIT_FINDINGS


# ============================================================================
# ARGUMENTS
# ============================================================================

def split_symbols(values: Optional[List[str]]) -> List[str]:
    """Accept --subset x c y as well as --subset x,c,y"""
    symbols = []
    for value in values or []:
        symbols.extend(part for part in value.replace(",", " ").split() if part)
    return symbols


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--system", type=str, default=None, help="Path to the system JSON file")
    common.add_argument("--caps", type=str, default=None,
                        help="Resource caps as key=value,... (or set COXSPLIT_CAPS)")
    common.add_argument("--format", type=str, default=None, choices=["json", "text", "dot"],
                        help="Report format (json by default, dot for export)")
    common.add_argument("--text", action="store_true", help="Shorthand for --format text")
    common.add_argument("--out", type=str, default=None, help="Write the report to this path")
    common.add_argument("--search", type=int, default=DEFAULT_SEARCH_BOUND,
                        help="Conjugator length L for n(G)")
    common.add_argument("--verbose", action="store_true", help="Log engine progress to stderr")

    parser = argparse.ArgumentParser(
        description="Visual minimal splittings and strong accessibility of Coxeter groups"
    )
    commands = parser.add_subparsers(dest="command", required=True)

    analyze = commands.add_parser("analyze", parents=[common], help="Finiteness, separators and K(W,S)")
    analyze.add_argument("action", choices=ANALYZE_ACTIONS)
    analyze.add_argument("--subset", nargs="*", default=[], help="Generators, space or comma separated")
    analyze.add_argument("--no-dedupe", action="store_true", help="Keep every (A, D, M) record of K(W,S)")
    analyze.add_argument("--dedupe", action="store_true", help="Deduplicate K(W,S) records (default)")
    analyze.add_argument("--order-cap", type=int, default=None, help="Largest finite subgroup enumerated")
    analyze.add_argument("--conjugacy-search", type=int, default=2,
                         help="Conjugator length for non-separating subsets")

    word = commands.add_parser("word", parents=[common], help="Word problem and double cosets")
    word.add_argument("action", choices=WORD_ACTIONS)
    word.add_argument("--word", action="append", default=[], help="Whitespace separated generators")
    word.add_argument("--left", nargs="*", default=[], help="Subset I")
    word.add_argument("--right", nargs="*", default=[], help="Subset J")

    decompose = commands.add_parser("decompose", parents=[common], help="Irreducible visual decomposition")
    decompose.add_argument("--trace", action="store_true", help="Include the split moves")

    validate = commands.add_parser("validate", parents=[common], help="Check a decomposition")
    validate.add_argument("--gog", type=str, required=True, help="Decomposition JSON file")

    measure = commands.add_parser("measure", parents=[common], help="Potential and bound")
    measure.add_argument("action", choices=MEASURE_ACTIONS)
    measure.add_argument("--gog", type=str, default=None, help="Decomposition JSON file")

    certify = commands.add_parser("certify", parents=[common], help="Certify a split trace")
    certify.add_argument("--trace", type=str, required=True, help="Trace JSON file")

    export = commands.add_parser("export", parents=[common], help="DOT or JSON export")
    export.add_argument("--gog", type=str, default=None, help="Decomposition JSON file; computed when absent")

    commands.add_parser("corpus", parents=[common], help="Write the bundled systems")
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    """
    Raises:
        InputError: bad caps text
        ValidationError: config invariants fail
    """
    caps = EngineCaps.from_text(COXSPLIT_CAPS)
    caps = EngineCaps.from_text(args.caps, base=caps)
    if getattr(args, "order_cap", None) is not None:
        caps = caps.model_copy(update={"order": args.order_cap})
        caps = EngineCaps.model_validate(caps.model_dump())

    output_format = "text" if args.text else args.format
    if output_format is None:
        output_format = "dot" if args.command == "export" else "json"

    trace = getattr(args, "trace", None)
    return RunConfig(
        command=args.command,
        action=getattr(args, "action", None),
        system_path=args.system,
        gog_path=getattr(args, "gog", None),
        trace_path=trace if isinstance(trace, str) else None,
        subset=split_symbols(getattr(args, "subset", [])),
        words=getattr(args, "word", []),
        left=split_symbols(getattr(args, "left", [])),
        right=split_symbols(getattr(args, "right", [])),
        search_bound=args.search,
        conjugacy_search=getattr(args, "conjugacy_search", 2),
        caps=caps,
        output_format=output_format,
        out=args.out,
        dedupe=not getattr(args, "no_dedupe", False),
        show_trace=trace is True,
        verbose=args.verbose,
    )


def main(argv: Optional[List[str]] = None) -> int:
    """Main entry point"""
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(asctime)s %(name)s %(levelname)s %(message)s",
        stream=sys.stderr,
    )
    try:
        config = config_from_args(args)
    except (InputError, ValidationError) as e:
        print(f"ERROR: {e}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    logger.debug(f"Running {config.command} {config.action or ''}")
    return run(config)


if __name__ == "__main__":
    sys.exit(main())
