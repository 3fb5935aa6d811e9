"""
`test`: run the classification-permutation test (or the dcor baseline) on a data file.
"""
import argparse
import logging

import pandas as pd
from pydantic import ValidationError

from app.core.config import settings
from app.core.exceptions import EmptySelection, InvalidConfig, UsageError
from app.ingest.csv_loader import load_paired_csv
from app.ingest.sparse_market import load_sparse_market
from app.schema.classifier import ClassifierConfig
from app.schema.report import DcorReport
from app.service.baseline_service import dcor_test
from app.service.test_service import run_cpc
from app.utils.output import canonical_json, write_text

logger = logging.getLogger(__name__)

_FIELD_FLAGS = {"kind": "--classifier", "dropout_rate": "--dropout"}


def register(subparsers) -> None:
    parser = subparsers.add_parser("test", help="Test independence of the X and Y blocks of a dataset.")
    source = parser.add_argument_group("input")
    source.add_argument("--csv", help="CSV file with a header row.")
    source.add_argument("--x", help="Comma-separated X columns of --csv.")
    source.add_argument("--y", help="Comma-separated Y columns of --csv.")
    source.add_argument("--sparse-x", help="Triplet (matrix market style) file for X.")
    source.add_argument("--sparse-y", help="Triplet (matrix market style) file for Y.")
    source.add_argument("--transpose", action="store_true", help="Sparse files store observations as columns.")

    parser.add_argument("--method", choices=["cpc", "dcor"], default="cpc")
    parser.add_argument("--seed", type=int, default=settings.DEFAULT_SEED)
    parser.add_argument("--permutations", type=int, default=settings.DCOR_PERMUTATIONS, help="dcor permutation count B.")
    parser.add_argument("--no-standardize", action="store_true", help="Skip column standardization.")
    parser.add_argument("--output", help="Write the report here instead of stdout.")
    parser.add_argument("--format", choices=["json", "csv"], default="json")
    parser.add_argument("--save-model", help="Also write the fitted classifier as JSON.")

    clf = parser.add_argument_group("classifier")
    clf.add_argument("--classifier", choices=["mlp", "logistic", "quadratic"], default=settings.DEFAULT_CLASSIFIER)
    clf.add_argument("--hidden", type=int)
    clf.add_argument("--l1-penalty", type=float)
    clf.add_argument("--dropout", type=float)
    clf.add_argument("--epochs", type=int)
    clf.add_argument("--batch", type=int)
    clf.add_argument("--step", type=float)
    clf.add_argument("--optimizer", choices=["adam", "sgd"])
    clf.add_argument("--lam", type=float, help="L1 weight for logistic / quadratic.")
    clf.add_argument("--max-iter", type=int)
    clf.add_argument("--s1", type=int)
    clf.add_argument("--k-n", type=int)
    parser.set_defaults(handler=run_test)


def classifier_from_args(args) -> ClassifierConfig:
    try:
        return ClassifierConfig(
            kind=args.classifier,
            hidden=args.hidden,
            l1_penalty=args.l1_penalty,
            dropout_rate=args.dropout,
            epochs=args.epochs,
            batch=args.batch,
            step=args.step,
            optimizer=args.optimizer,
            lam=args.lam,
            max_iter=args.max_iter,
            s1=args.s1,
            k_n=args.k_n,
        )
    except ValidationError as e:
        first = e.errors()[0]
        field = str(first["loc"][0])
        flag = _FIELD_FLAGS.get(field, "--" + field.replace("_", "-"))
        raise InvalidConfig(f"Invalid value for {flag}: {first['msg']}")


def load_input(args):
    if args.csv:
        if args.sparse_x or args.sparse_y:
            raise UsageError(code="CONFLICTING_INPUT", message="Use either --csv or --sparse-x/--sparse-y, not both.")
        if not args.x:
            raise EmptySelection("--x")
        if not args.y:
            raise EmptySelection("--y")
        return load_paired_csv(args.csv, args.x, args.y)
    if args.sparse_x and args.sparse_y:
        return load_sparse_market(args.sparse_x, args.sparse_y, transpose=args.transpose)
    raise UsageError(code="MISSING_INPUT", message="Provide --csv with --x/--y, or both --sparse-x and --sparse-y.")


def _emit(payload: dict, text: str, args) -> None:
    if args.format == "csv":
        flat = {k: v for k, v in payload.items() if not isinstance(v, (dict, list))}
        text = pd.DataFrame([flat]).to_csv(index=False)
    if args.output:
        write_text(args.output, text)
    else:
        print(text)


def run_test(args: argparse.Namespace) -> int:
    classifier = classifier_from_args(args)
    sample = load_input(args)
    logger.info("loaded n=%s d1=%s d2=%s", sample.n, sample.d1, sample.d2)

    if args.method == "dcor":
        dense = sample.to_dense()
        result = dcor_test(dense.x_rows, dense.y_rows, args.permutations, args.seed)
        report = DcorReport(
            dcov_sq=result.dcov_sq,
            dcor=result.dcor,
            p_value=result.p_value,
            permutations=args.permutations,
            seed=args.seed,
            n=sample.n,
            d1=sample.d1,
            d2=sample.d2,
            config={"permutations": args.permutations},
        )
    else:
        outcome = run_cpc(sample, classifier, seed=args.seed, standardize_inputs=not args.no_standardize)
        report = outcome.report
        for warning in report.warnings:
            logger.warning(warning)
        if args.save_model:
            write_text(args.save_model, canonical_json(outcome.model.to_dict()))

    _emit(report.model_dump(), report.to_json(), args)
    return 0
