"""Command-line interface.

Subcommands: train, predict, screen, kappa, simulate, serve. Results go to
stdout (``--format json`` for machine-readable output, ``table`` for
aligned text); diagnostics go to stderr. Exit codes: 0 success, 1 usage
error, 2 data error, 3 numerical error.
"""

from __future__ import annotations

import argparse
import dataclasses
import sys
from pathlib import Path
from typing import Sequence

from .domain import Category, Dataset, Platform, Rating, factor_prevalence_filter
from .errors import DataError, InvariantViolation, NumericalError
from .io import (
    ModelDocument,
    canonical_json,
    load_campaign,
    load_dataset,
    load_model,
    load_synth_spec,
    make_document,
    model_to_document,
    paper_baseline,
    save_model,
)
from .pipeline import (
    BuildSpec,
    build_baseline,
    build_specific,
    recovery_experiment,
    screen_factors,
)
from .stats import (
    AgreementMatrix,
    cohen_kappa,
    meets_agreement_gate,
    predict,
    regressors_for,
)


class UsageError(Exception):
    """Bad command line; maps to exit code 1."""


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        raise UsageError(message)


def _table(headers: Sequence[str], rows: Sequence[Sequence[str]]) -> str:
    widths = [
        max(len(headers[i]), *(len(r[i]) for r in rows)) if rows else len(headers[i])
        for i in range(len(headers))
    ]
    lines = [
        "  ".join(h.ljust(widths[i]) for i, h in enumerate(headers)).rstrip(),
        "  ".join("-" * w for w in widths),
    ]
    for row in rows:
        lines.append("  ".join(c.ljust(widths[i]) for i, c in enumerate(row)).rstrip())
    return "\n".join(lines)


def _num(value: float | None, digits: int = 10) -> str:
    if value is None:
        return "-"
    return f"{value:.{digits}g}"


def _model_table(doc: ModelDocument) -> str:
    model = doc.model
    rows = [
        ["(intercept)", "intercept", _num(model.intercept, 6), "-", "-"],
    ]
    for term in model.terms:
        rows.append(
            [
                term.name,
                term.role,
                _num(term.coefficient, 6),
                _num(term.std_error, 4),
                _num(term.p_value, 4),
            ]
        )
    head = _table(["term", "role", "coefficient", "std_error", "p_value"], rows)
    sigma = _num(model.residual_sigma, 6)
    tail = (
        f"n {model.n}  p {model.p}  r2 {_num(model.r2, 6)}  "
        f"adj_r2 {_num(model.adj_r2, 6)}  residual_sigma {sigma}"
    )
    return f"{head}\n{tail}"


def _parse_mode(mode: str) -> tuple[str, Platform | Category | None]:
    if mode == "baseline":
        return "baseline", None
    if mode.startswith("platform="):
        return "platform", Platform.from_code(mode.split("=", 1)[1])
    if mode.startswith("category="):
        return "category", Category.from_code(mode.split("=", 1)[1])
    raise UsageError(
        f"--mode must be baseline, platform=<KS|IGG>, or category=<3DP|SW> (got {mode!r})"
    )


def _resolve_model(ref: str) -> ModelDocument:
    """A model reference is the bundled id or a document path."""
    if ref == "paper-baseline":
        return paper_baseline()
    return load_model(ref)


def _cmd_train(args: argparse.Namespace) -> int:
    dataset = load_dataset(args.dataset)
    kind, group = _parse_mode(args.mode)
    spec = BuildSpec(
        k_folds=args.k,
        seed=args.seed,
        screen_alpha=args.alpha,
        prevalence_threshold=args.threshold,
    )
    if kind == "baseline":
        result = build_baseline(dataset, spec)
        fitted_on = dataset
    else:
        if kind == "platform":
            records = tuple(r for r in dataset.records if r.platform is group)
        else:
            records = tuple(r for r in dataset.records if r.category is group)
        fitted_on = Dataset(records=records)
        criticals = _resolve_model(args.baseline).model.encoding_meta.factor_ids
        result = build_specific(fitted_on, criticals, spec)
        result = dataclasses.replace(
            result,
            final_model=dataclasses.replace(
                result.final_model, name=f"{kind}-{group.code}"
            ),
        )

    doc = make_document(
        result.final_model,
        provenance=f"rwwfund train --mode {args.mode} --k {args.k} --seed {args.seed}",
    )
    if args.out:
        save_model(doc, args.out)
        print(f"model written to {args.out}", file=sys.stderr)
    if args.report:
        from .report import prediction_band_figure

        report_dir = Path(args.report)
        report_dir.mkdir(parents=True, exist_ok=True)
        figure = prediction_band_figure(
            result.final_model, fitted_on, report_dir / "predicted_vs_actual.png"
        )
        print(f"figure written to {figure}", file=sys.stderr)

    if args.format == "json":
        payload = {
            "selected": list(result.selected),
            "final_score": result.final_score,
            "fold_scores": list(result.fold_scores),
            "trace": [dataclasses.asdict(step) for step in result.trace],
            "model": model_to_document(doc),
        }
        print(canonical_json(payload), end="")
    else:
        print(f"selected: {', '.join(result.selected) if result.selected else '(none)'}")
        print(f"cv fold scores: {' '.join(_num(s, 4) for s in result.fold_scores)}")
        print(f"search score: {_num(result.final_score, 6)}")
        for step in result.trace:
            print(
                f"  step {step.step}: {step.action} {step.term} "
                f"({_num(step.score_before, 6)} -> {_num(step.score_after, 6)})"
            )
        print(_model_table(doc))
    return 0


def _cmd_predict(args: argparse.Namespace) -> int:
    doc = _resolve_model(args.model)
    record = load_campaign(args.campaign)
    regressors = regressors_for(doc.model, record)
    result = predict(doc.model, regressors, interval_level=args.interval)
    contributions = {
        term.name: term.coefficient * regressors[term.name]
        for term in doc.model.terms
    }
    if args.format == "json":
        payload = {
            "model": doc.model.name,
            "ln_amount": result.ln_amount,
            "amount": result.amount,
            "interval": dataclasses.asdict(result.interval)
            if result.interval
            else None,
            "intercept": doc.model.intercept,
            "per_term_contributions": contributions,
        }
        print(canonical_json(payload), end="")
    else:
        print(f"ln_amount {_num(result.ln_amount)}")
        print(f"amount {_num(result.amount)}")
        if result.interval is not None:
            print(
                f"interval {result.interval.level:g}: "
                f"[{_num(result.interval.lower)}, {_num(result.interval.upper)}]"
            )
        elif args.interval is not None:
            print(
                "interval unavailable: model carries no training design information",
                file=sys.stderr,
            )
    return 0


def _cmd_screen(args: argparse.Namespace) -> int:
    dataset = load_dataset(args.dataset)
    kept, dropped = factor_prevalence_filter(dataset, args.threshold)
    report = screen_factors(dataset, args.alpha, factors=kept)
    if args.report:
        from .report import screening_figure

        report_dir = Path(args.report)
        report_dir.mkdir(parents=True, exist_ok=True)
        figure = screening_figure(report, report_dir / "screening.png")
        print(f"figure written to {figure}", file=sys.stderr)

    if args.format == "json":
        payload = {
            "alpha": report.alpha,
            "prevalence_dropped": list(dropped),
            "factors": [
                {
                    "factor": s.factor,
                    "mean_by_platform": dict(s.mean_by_platform),
                    "mean_by_category": dict(s.mean_by_category),
                    "platform_t": s.platform_test.t_stat if s.platform_test else None,
                    "platform_p": s.platform_test.p_value if s.platform_test else None,
                    "category_t": s.category_test.t_stat if s.category_test else None,
                    "category_p": s.category_test.p_value if s.category_test else None,
                    "platform_significant": s.platform_significant,
                    "category_significant": s.category_significant,
                    "in_pool": s.in_pool,
                }
                for s in report.screens
            ],
            "candidate_pool": list(report.candidate_pool),
        }
        print(canonical_json(payload), end="")
    else:
        rows = []
        for s in report.screens:
            rows.append(
                [
                    s.factor,
                    _num(s.mean_by_platform["IGG"], 3),
                    _num(s.mean_by_platform["KS"], 3),
                    _num(s.platform_test.p_value if s.platform_test else None, 3),
                    _num(s.mean_by_category["3DP"], 3),
                    _num(s.mean_by_category["SW"], 3),
                    _num(s.category_test.p_value if s.category_test else None, 3),
                    "yes" if s.in_pool else "no",
                ]
            )
        print(
            _table(
                ["factor", "IGG", "KS", "p_plat", "3DP", "SW", "p_cat", "in_pool"],
                rows,
            )
        )
        if dropped:
            print(f"dropped by prevalence filter: {', '.join(dropped)}")
        print(f"candidate pool: {', '.join(report.candidate_pool) or '(empty)'}")
    return 0


def _read_ratings_file(path: str) -> list[Rating]:
    ratings = []
    for line_num, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        text = line.strip()
        if not text:
            continue
        try:
            ratings.append(Rating.from_score(float(text)))
        except ValueError:
            ratings.append(Rating.from_label(text))
    return ratings


def _cmd_kappa(args: argparse.Namespace) -> int:
    rater_a = _read_ratings_file(args.a)
    rater_b = _read_ratings_file(args.b)
    if len(rater_a) != len(rater_b):
        raise InvariantViolation(
            "ratings", f"rater files differ in length ({len(rater_a)} vs {len(rater_b)})"
        )
    weighting = "linear" if args.weights == "linear" else "unweighted"
    matrix = AgreementMatrix.from_ratings(rater_a, rater_b)
    kappa = cohen_kappa(matrix, weighting=weighting)
    gate = meets_agreement_gate(kappa)
    if args.format == "json":
        payload = {
            "kappa": kappa,
            "weighting": weighting,
            "n_items": matrix.total,
            "meets_gate": gate,
            "counts": [list(row) for row in matrix.counts],
        }
        print(canonical_json(payload), end="")
    else:
        print(f"kappa {kappa:.4f}")
        print(f"weighting {weighting}")
        print(f"items {matrix.total}")
        print(f"meets 0.80 agreement gate: {'yes' if gate else 'no'}")
    return 0


def _cmd_simulate(args: argparse.Namespace) -> int:
    spec = load_synth_spec(args.spec)
    build = BuildSpec(k_folds=args.k, seed=args.seed, screen_alpha=args.screen_alpha)
    report = recovery_experiment(spec, args.trials, build)
    if args.report:
        from .report import selection_rates_figure

        report_dir = Path(args.report)
        report_dir.mkdir(parents=True, exist_ok=True)
        figure = selection_rates_figure(report, report_dir / "selection_rates.png")
        print(f"figure written to {figure}", file=sys.stderr)

    if args.format == "json":
        payload = {
            "trials": report.trials,
            "planted": list(report.planted),
            "recall": report.recall,
            "exact_match": report.exact_match,
            "selection_rates": dict(report.selection_rates),
        }
        print(canonical_json(payload), end="")
    else:
        print(f"trials {report.trials}")
        print(f"planted {', '.join(report.planted) or '(none)'}")
        print(f"recall {report.recall:.3f}")
        print(f"exact_match {report.exact_match:.3f}")
        picked = {q: r for q, r in report.selection_rates.items() if r > 0}
        rows = [
            [q, f"{rate:.2f}", "planted" if q in report.planted else ""]
            for q, rate in sorted(picked.items())
        ]
        if rows:
            print(_table(["factor", "rate", ""], rows))
    return 0


def _cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service import create_app

    extra = {}
    for path in args.model or []:
        doc = load_model(path)
        extra[doc.model.name] = doc
    app = create_app(extra_models=extra)
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return 0


def _build_parser() -> _Parser:
    parser = _Parser(prog="rwwfund", description=__doc__)
    sub = parser.add_subparsers(dest="command", metavar="command")

    train = sub.add_parser("train", help="fit a model by stepwise selection")
    train.add_argument("dataset", help="campaign CSV file")
    train.add_argument("--mode", default="baseline",
                       help="baseline | platform=<KS|IGG> | category=<3DP|SW>")
    train.add_argument("--k", type=int, default=5, help="cross-validation folds")
    train.add_argument("--seed", type=int, default=0, help="fold-split seed")
    train.add_argument("--alpha", type=float, default=0.05,
                       help="screening significance level; <= 0 disables the screen")
    train.add_argument("--threshold", type=float, default=0.03,
                       help="prevalence threshold for dropping rare factors")
    train.add_argument("--baseline", default="paper-baseline",
                       help="model whose factors are forced in specific modes")
    train.add_argument("--out", help="write the fitted model document here")
    train.add_argument("--report", help="directory for report figures")
    train.set_defaults(func=_cmd_train)

    pred = sub.add_parser("predict", help="predict funding for one campaign")
    pred.add_argument("--model", required=True,
                      help="model document path, or the bundled id paper-baseline")
    pred.add_argument("--campaign", required=True, help="campaign JSON file")
    pred.add_argument("--interval", type=float, default=None,
                      help="prediction-interval level in (0,1)")
    pred.set_defaults(func=_cmd_predict)

    screen = sub.add_parser("screen", help="cross-group t-test screening table")
    screen.add_argument("dataset", help="campaign CSV file")
    screen.add_argument("--alpha", type=float, default=0.05)
    screen.add_argument("--threshold", type=float, default=0.03)
    screen.add_argument("--report", help="directory for report figures")
    screen.set_defaults(func=_cmd_screen)

    kappa = sub.add_parser("kappa", help="inter-rater agreement between two rating files")
    kappa.add_argument("--a", required=True, help="first rater's file, one rating per line")
    kappa.add_argument("--b", required=True, help="second rater's file")
    kappa.add_argument("--weights", choices=("linear", "none"), default="linear")
    kappa.set_defaults(func=_cmd_kappa)

    sim = sub.add_parser("simulate", help="planted-model recovery experiment")
    sim.add_argument("--spec", required=True, help="synthetic-data recipe JSON")
    sim.add_argument("--trials", type=int, default=100)
    sim.add_argument("--k", type=int, default=5)
    sim.add_argument("--seed", type=int, default=0)
    sim.add_argument("--screen-alpha", type=float, default=0.0,
                     help="t-test screen level per trial; 0 disables")
    sim.add_argument("--report", help="directory for report figures")
    sim.set_defaults(func=_cmd_simulate)

    serve = sub.add_parser("serve", help="run the HTTP prediction service")
    serve.add_argument("--port", type=int, default=8000)
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--model", action="append",
                       help="extra model document to register (repeatable)")
    serve.set_defaults(func=_cmd_serve)

    for command in (train, pred, screen, kappa, sim):
        command.add_argument("--format", choices=("json", "table"), default="table")
    return parser


def run_cli(argv: Sequence[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        if getattr(args, "func", None) is None:
            raise UsageError("a subcommand is required (see --help)")
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except FileNotFoundError as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return 2
    except DataError as exc:
        print(f"data error: {exc}", file=sys.stderr)
        return 2
    except NumericalError as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return 3


def main() -> None:
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
