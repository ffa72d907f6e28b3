import argparse
import sys
from typing import Any, Dict, List, Optional, Sequence

from . import __version__
from .config import load_scenario_file
from .converters.report import Report, ReportConverter
from .core.alpha import AlphaFamily, roundtrip_check
from .core.classify import ALL_PROPERTIES, OperatorClassifier, Property, PropertyReport
from .core.engine import LatticeReport, default_corpus, forward_discrepancies, reproduce_counterexamples, run_lattice, Direction
from .core.ifpn import check_ifpn_axioms
from .core.structures import RESOLUTION_FACTORS, DecisionOutcome, SampleGrid, Verdict, default_alpha_grid
from .errors import BracketExceeded, DomainError, IfpnError
from .norms.axioms import check_pseudo_norm_axioms
from .utils.logger import configure_logging, get_logger
from .utils.point_utils import PointUtils

logger = get_logger(__name__)

EXIT_OK = 0
EXIT_REFUTED = 1
EXIT_FAILURE = 2


def _verdict_item(name: str, outcome: DecisionOutcome) -> Dict[str, Any]:
    return {"name": name, "verdict": outcome.verdict.value, "witness": outcome.witness,
            "certificate": outcome.certificate, "resolution": outcome.resolution,
            "diagnostics": list(outcome.diagnostics)}


def _property_item(report: PropertyReport) -> Dict[str, Any]:
    return _verdict_item(report.property.value, report.outcome)


def _base_report(command: List[str], seed: int, resolution: str) -> Report:
    return Report(command=command,
                  resolution={"seed": seed, "resolution": resolution, "factor": RESOLUTION_FACTORS[resolution]})


# ----- commands -----

def cmd_validate(config_path: str, seed: int = 42, resolution: str = "default",
                 command: Optional[List[str]] = None) -> Report:
    """Axiom verdicts for every declared space: the pseudo norm, then its pair."""
    factor = RESOLUTION_FACTORS[resolution]
    scenario_file = load_scenario_file(config_path, seed, factor)
    report = _base_report(command or ["validate", "--config", config_path], seed, resolution)
    all_hold = True
    for name, space in scenario_file.spaces.items():
        grid = SampleGrid.default(space.dimension, seed, factor)
        norm_outcome = check_pseudo_norm_axioms(space.norm, grid)
        pair_outcome = check_ifpn_axioms(space.pair, grid)
        all_hold = all_hold and norm_outcome.is_holds and pair_outcome.is_holds
        report.add({"kind": "space", "title": f"space {name}",
                    "verdicts": [_verdict_item("pseudo_norm", norm_outcome),
                                 _verdict_item("ifpn_axioms", pair_outcome)]})
    report.exit_status = EXIT_OK if all_hold else EXIT_REFUTED
    report.summary = {"spaces": len(scenario_file.spaces), "all_hold": all_hold}
    return report


def cmd_alpha(config_path: str, space: str, point: str, alphas: Optional[Sequence[float]] = None,
              seed: int = 42, resolution: str = "default", command: Optional[List[str]] = None) -> Report:
    """‖x‖_α and ‖x‖*_α per requested α, plus the round-trip verdict of the space."""
    factor = RESOLUTION_FACTORS[resolution]
    scenario_file = load_scenario_file(config_path, seed, factor)
    target = scenario_file.space(space)
    x = PointUtils.parse(point)
    PointUtils.check_dimension(x, target.dimension, "point")
    fam = AlphaFamily(target.pair)
    report = _base_report(command or ["alpha", "--config", config_path, "--space", space, "--point", point],
                          seed, resolution)

    rows = []
    for a in (alphas or default_alpha_grid()):
        row: Dict[str, Any] = {"alpha": a}
        try:
            row["ascending"] = fam.ascending(x, a)
        except BracketExceeded as e:
            row["ascending_error"] = str(e)
        try:
            row["descending"] = fam.descending(x, a)
        except BracketExceeded as e:
            row["descending_error"] = str(e)
        rows.append(row)
    report.add({"kind": "alpha", "title": f"{space} at x={PointUtils.as_list(x)}", "rows": rows})

    roundtrip = roundtrip_check(target.pair, SampleGrid.default(target.dimension, seed, factor), 1e-6, fam)
    report.add({"kind": "roundtrip", "title": f"round trip of {space}",
                "verdicts": [_verdict_item("roundtrip", roundtrip)]})
    report.exit_status = EXIT_REFUTED if roundtrip.is_refuted else EXIT_OK
    report.summary = {"alphas": len(rows), "roundtrip": roundtrip.verdict.value}
    return report


def cmd_classify(config_path: str, scenario: Optional[str] = None,
                 properties: Optional[Sequence[Property]] = None, seed: int = 42,
                 resolution: str = "default", command: Optional[List[str]] = None) -> Report:
    """Requested properties for one scenario (or all); DomainError is reported per scenario."""
    factor = RESOLUTION_FACTORS[resolution]
    scenario_file = load_scenario_file(config_path, seed, factor)
    chosen = [scenario_file.scenario(scenario)] if scenario else scenario_file.scenarios
    props = list(properties or ALL_PROPERTIES)
    report = _base_report(command or ["classify", "--config", config_path], seed, resolution)

    status = EXIT_OK
    counts = {v.value: 0 for v in Verdict}
    for s in chosen:
        try:
            classifier = OperatorClassifier(s.operator, s.f_dom, s.f_cod, s.config)
            reports = classifier.classify(props)
        except DomainError as e:
            logger.warning("%s: %s", s.name, e)
            report.add({"kind": "classify", "title": s.name, "error": str(e)})
            status = max(status, EXIT_FAILURE)
            continue
        for r in reports:
            counts[r.verdict.value] += 1
        if any(r.verdict is Verdict.REFUTED for r in reports):
            status = max(status, EXIT_REFUTED)
        report.add({"kind": "classify", "title": s.name, "verdicts": [_property_item(r) for r in reports]})
    report.exit_status = status
    report.summary = {"scenarios": len(chosen), **counts}
    return report


def _lattice_section(r: LatticeReport) -> Dict[str, Any]:
    section = {"kind": "lattice", "title": r.scenario,
               "verdicts": [_property_item(p) for p in r.reports],
               "edges": [e.to_dict() for e in r.edge_results.values()]}
    if r.expectations:
        section["expectations"] = r.expectations
    return section


def cmd_theorems(config_path: Optional[str] = None, seed: int = 42, resolution: str = "default",
                 command: Optional[List[str]] = None) -> Report:
    """
    Lattice reports over the configured scenarios, or over the builtin corpus
    plus the cubic counterexamples when no config is given. Only forward
    discrepancies fail the run.
    """
    factor = RESOLUTION_FACTORS[resolution]
    if config_path:
        scenarios = load_scenario_file(config_path, seed, factor).scenarios
    else:
        scenarios = default_corpus(seed, factor)
    report = _base_report(command or ["theorems"], seed, resolution)

    def progress(done, total):
        logger.info("lattice progress %d/%d", done, total)

    results = run_lattice(scenarios, progress_callback=progress)
    for r in results:
        report.add(_lattice_section(r))
    if not config_path:
        for r in reproduce_counterexamples():
            report.add(_lattice_section(r))

    forward = forward_discrepancies(results)
    converse = [(r.scenario, er.edge.id) for r in results for er in r.discrepant(Direction.CONVERSE)]
    report.exit_status = EXIT_REFUTED if forward else EXIT_OK
    report.summary = {"scenarios": len(results),
                      "forward_discrepant": [list(x) for x in forward],
                      "converse_discrepant": [list(x) for x in converse]}
    return report


# ----- argument parsing -----

def _alpha_list(text: str) -> List[float]:
    try:
        return [float(a) for a in text.split(",") if a.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma separated numbers, got {text!r}")


def _property_list(text: str) -> List[Property]:
    try:
        return [Property.parse(p) for p in text.split(",") if p.strip()]
    except IfpnError as e:
        raise argparse.ArgumentTypeError(str(e))


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="scenario file (JSON, version 1)")
    common.add_argument("--report", choices=("text", "json"), default="text")
    common.add_argument("--seed", type=int, default=42)
    common.add_argument("--resolution", choices=tuple(RESOLUTION_FACTORS), default="default")
    common.add_argument("--out", help="write the report here instead of stdout")
    common.add_argument("-v", "--verbose", action="count", default=0)

    parser = argparse.ArgumentParser(prog="ifpn", description="IFPN verification toolkit")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("validate", parents=[common], help="check the axioms of every declared space")

    p = sub.add_parser("alpha", parents=[common], help="α-norms of a point and the round trip")
    p.add_argument("--space", required=True)
    p.add_argument("--point", required=True, help="coordinates, e.g. '2' or '1,-0.5'")
    p.add_argument("--alphas", type=_alpha_list, help="comma separated α values in (0, 1)")

    p = sub.add_parser("classify", parents=[common], help="run the property classifiers")
    p.add_argument("--scenario")
    p.add_argument("--properties", type=_property_list,
                   help=f"comma separated subset of {','.join(x.value for x in Property)}")

    sub.add_parser("theorems", parents=[common], help="score the implication lattice")
    return parser


def _dispatch(args, argv: List[str]) -> Report:
    if args.command != "theorems" and not args.config:
        raise IfpnError(f"{args.command} needs --config")
    if args.command == "validate":
        return cmd_validate(args.config, args.seed, args.resolution, argv)
    if args.command == "alpha":
        return cmd_alpha(args.config, args.space, args.point, args.alphas, args.seed, args.resolution, argv)
    if args.command == "classify":
        return cmd_classify(args.config, args.scenario, args.properties, args.seed, args.resolution, argv)
    return cmd_theorems(args.config, args.seed, args.resolution, argv)


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_FAILURE
    configure_logging(args.verbose)

    try:
        report = _dispatch(args, argv)
        text = ReportConverter.render(report, args.report)
        if args.out:
            with open(args.out, "w", encoding="utf-8") as f:
                f.write(text)
        else:
            sys.stdout.write(text)
    except (IfpnError, OSError) as e:
        logger.error("%s", e)
        sys.stderr.write(f"ifpn: error: {e}\n")
        return EXIT_FAILURE
    return report.exit_status


if __name__ == "__main__":
    sys.exit(main())
