"""
cvbench command line.

    cvbench fit      --data d.csv --response Outcome --id CID --sets Burden:24,Pharm:147
    cvbench assess   --run RUN [--metric auc] [--m 100] [--threshold 0.5]
    cvbench curves   --run RUN [--splits 1] [--meths RF,KNN] [--series descriptors]
    cvbench mcs      --run RUN [--metric enhancement]
    cvbench import   --run RUN --predictions external.csv
    cvbench defaults [--n 500 --p 24 --nfolds 10 --continuous]
    cvbench summary  --run RUN

Exit codes: 0 success, 1 library error (a JSON error record goes to
stderr), 2 usage error.
"""
import argparse
import json
import sys
import time
from typing import List, Optional

from pydantic import ValidationError

from .. import __version__
from ..config import (DEFAULT_IE_TESTS, DEFAULT_METHODS, DEFAULT_METRIC, DEFAULT_NFOLDS,
                      DEFAULT_NSPLITS, DEFAULT_THRESHOLD, SEED_STEP)
from .config import DatasetSchema, RunConfig, SetSchema
from .curves import SERIES
from .learners import apply_user_params, make_model_defaults
from .orchestrator import (combine_splits, import_predictions, plot_curves, run_model_train,
                           summarize_run)
from .utils.errors import CvbenchError
from .utils.logger import app_logger


def _int_list(text: str) -> List[int]:
    try:
        return [int(item) for item in text.split(",") if item.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got '{text}'")


def _str_list(text: str) -> List[str]:
    return [item.strip() for item in text.split(",") if item.strip()]


def _set_list(text: str) -> List[SetSchema]:
    """Parse Name:length,Name:length into descriptor-set schemas."""
    sets = []
    for item in _str_list(text):
        name, sep, length = item.rpartition(":")
        if not sep or not name:
            raise argparse.ArgumentTypeError(f"expected Name:length, got '{item}'")
        try:
            sets.append(SetSchema(name=name, length=int(length)))
        except (ValueError, ValidationError):
            raise argparse.ArgumentTypeError(f"invalid descriptor-set length in '{item}'")
    return sets


def _load_params(path: Optional[str]) -> dict:
    if not path:
        return {}
    try:
        with open(path, encoding="utf-8") as f:
            return json.load(f)
    except (OSError, json.JSONDecodeError) as e:
        raise CvbenchError(f"Cannot read parameter file {path}: {e}",
                           {"module": "cli", "operation": "cmd_fit"}) from e


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cvbench",
        description="Repeated k-fold cross-validation and significance assessment of "
                    "descriptor-set x method combinations")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    fit = sub.add_parser("fit", help="Fit all D-M combinations under repeated k-fold CV")
    fit.add_argument("--data", required=True, help="CSV dataset with a header row")
    fit.add_argument("--response", help="Response column name")
    fit.add_argument("--id", dest="id_col", help="ID column name")
    fit.add_argument("--sets", type=_set_list,
                     help="Descriptor sets as Name:length,... in column order")
    fit.add_argument("--schema", help="JSON schema file {id_col, response_col, sets}")
    fit.add_argument("--methods", type=_str_list, default=list(DEFAULT_METHODS),
                     help="Comma-separated built-in methods (default: %(default)s)")
    fit.add_argument("--params", help="JSON file of per-method parameter overrides")
    fit.add_argument("--nfolds", type=int, default=DEFAULT_NFOLDS)
    fit.add_argument("--nsplits", type=int, default=DEFAULT_NSPLITS)
    fit.add_argument("--seeds", type=_int_list, help="One seed per split, comma-separated")
    fit.add_argument("--base-seed", type=int, default=SEED_STEP,
                     help="Seed mixed into every learner task seed")
    fit.add_argument("--threads", type=int, help="Worker count (overrides CVBENCH_THREADS)")
    fit.add_argument("--force-continuous", action="store_true",
                     help="Treat an all-0/1 response as continuous")
    fit.add_argument("--binarize-response", type=float, metavar="T",
                     help="Convert the response to 1 where y >= T, else 0")
    fit.add_argument("--out", default="cvbench_run", help="Run directory")

    def assessment_flags(p):
        p.add_argument("--run", required=True, help="Run directory")
        p.add_argument("--metric", default=DEFAULT_METRIC)
        p.add_argument("--m", type=int, default=DEFAULT_IE_TESTS,
                       help="Tests for initial enhancement")
        p.add_argument("--threshold", type=float, default=DEFAULT_THRESHOLD)
        p.add_argument("--out", help="Output directory (default: the run directory)")

    assessment_flags(sub.add_parser("assess", help="ANOVA, Tukey comparisons and MCS plot"))
    assessment_flags(sub.add_parser("mcs", help="Write the MCS plot for one measure"))

    curves = sub.add_parser("curves", help="Accumulation-curve SVGs")
    curves.add_argument("--run", required=True)
    curves.add_argument("--splits", type=_int_list)
    curves.add_argument("--meths", type=_str_list)
    curves.add_argument("--series", choices=SERIES, default="methods")
    curves.add_argument("--max-select", type=int)
    curves.add_argument("--out")

    imp = sub.add_parser("import", help="Merge external out-of-fold predictions into a run")
    imp.add_argument("--run", required=True)
    imp.add_argument("--predictions", required=True,
                     help="CSV with split, descriptor_set, method, id, prediction")

    defaults = sub.add_parser("defaults", help="Print the default parameter registry as JSON")
    defaults.add_argument("--n", type=int, default=500)
    defaults.add_argument("--p", type=int, default=10)
    defaults.add_argument("--nfolds", type=int, default=DEFAULT_NFOLDS)
    defaults.add_argument("--continuous", action="store_true")
    defaults.add_argument("--params", help="JSON overrides to merge before printing")

    summary = sub.add_parser("summary", help="Top performers across several measures")
    summary.add_argument("--run", required=True)
    summary.add_argument("--threshold", type=float, default=DEFAULT_THRESHOLD)
    summary.add_argument("--out", help="CSV path (default: <run>/summary.csv)")
    return parser


def cmd_fit(args, parser) -> int:
    if args.schema:
        schema = DatasetSchema.from_json(args.schema)
        if args.force_continuous or args.binarize_response is not None:
            schema = schema.model_copy(update={
                "force_continuous": args.force_continuous or schema.force_continuous,
                "response_threshold": args.binarize_response
                if args.binarize_response is not None else schema.response_threshold})
    else:
        if not args.response:
            parser.error("the following arguments are required: --response (or --schema)")
        schema = DatasetSchema(response_col=args.response, id_col=args.id_col, sets=args.sets,
                               force_continuous=args.force_continuous,
                               response_threshold=args.binarize_response)

    config = RunConfig.from_env(data_path=args.data, dataset=schema, methods=args.methods,
                                params=_load_params(args.params), nfolds=args.nfolds,
                                nsplits=args.nsplits, seeds=args.seeds, base_seed=args.base_seed,
                                out_dir=args.out, threads=args.threads)
    started = time.perf_counter()
    result = run_model_train(config)
    grid = result.manifest["grid"]
    print(f"Run directory: {result.run_dir}")
    print(f"Grid: {len(result.manifest['dataset']['descriptor_sets'])} descriptor sets x "
          f"{len(config.methods)} methods = {len(grid)} combinations; "
          f"{result.plan.nsplits} splits x {result.plan.nfolds} folds; "
          f"seeds {list(result.plan.seeds)}")
    print(f"Response: {result.manifest['dataset']['response_kind']}, "
          f"n = {result.manifest['dataset']['n']}")
    print(f"Elapsed: {time.perf_counter() - started:.2f}s")
    return 0


def cmd_assess(args) -> int:
    assessment = combine_splits(args.run, metric=args.metric, m=args.m,
                                threshold=args.threshold, out_dir=args.out)
    sys.stdout.write(assessment.anova_text)
    for path in assessment.paths:
        print(f"Wrote {path}")
    return 0


def cmd_mcs(args) -> int:
    assessment = combine_splits(args.run, metric=args.metric, m=args.m,
                                threshold=args.threshold, out_dir=args.out)
    matrix = assessment.matrix
    print(f"Ordering by mean {matrix.title}, best first:")
    for rank, label in enumerate(matrix.ordering, start=1):
        print(f"{rank:>3}. {label:<30} {matrix.means[label]:.4f}")
    print(f"Wrote {assessment.paths[-1]}")
    return 0


def cmd_curves(args) -> int:
    paths = plot_curves(args.run, series=args.series, splits=args.splits, meths=args.meths,
                        max_select=args.max_select, out_dir=args.out)
    for path in paths:
        print(f"Wrote {path}")
    return 0


def cmd_import(args) -> int:
    added = import_predictions(args.predictions, args.run)
    for split, set_name, method in added:
        print(f"Imported split {split}: {set_name}-{method}")
    return 0


def cmd_defaults(args) -> int:
    registry = make_model_defaults(args.n, args.p, classify=not args.continuous,
                                   nfolds=args.nfolds)
    registry = apply_user_params(registry, _load_params(args.params))
    print(json.dumps(registry, indent=2))
    return 0


def cmd_summary(args) -> int:
    table = summarize_run(args.run, threshold=args.threshold)
    out = args.out or f"{args.run}/summary.csv"
    table.to_csv(out, index=False)
    print(table.to_string(index=False))
    print(f"Wrote {out}")
    return 0


def main(argv: Optional[List[str]] = None) -> int:
    """Run one subcommand; returns the process exit code."""
    parser = build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "assess": cmd_assess,
        "mcs": cmd_mcs,
        "curves": cmd_curves,
        "import": cmd_import,
        "defaults": cmd_defaults,
        "summary": cmd_summary,
    }
    try:
        if args.command == "fit":
            return cmd_fit(args, parser)
        return handlers[args.command](args)
    except CvbenchError as e:
        app_logger.error(str(e), extra={"context": e.context, "error": type(e).__name__})
        return 1
    except ValidationError as e:
        app_logger.error(f"Invalid configuration: {e}",
                         extra={"context": {"module": "cli", "operation": args.command},
                                "error": "ValidationError"})
        return 1
    except OSError as e:
        app_logger.error(f"I/O error: {e}",
                         extra={"context": {"module": "cli", "operation": args.command},
                                "error": type(e).__name__})
        return 1


def cli() -> None:
    sys.exit(main())


if __name__ == "__main__":
    cli()
