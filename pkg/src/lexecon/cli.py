"""Command line front end.

Subcommands: ``lexstat``, ``features train|predict|crossval``, ``split``,
``index``, ``econ adf|johansen|vecm|irf|fevd``.  Every stage reads the
declarative JSON config (flags win over file values), seeds its own
stream from the global seed plus the stage label, and writes plain
CSV/JSON outputs with ``.meta.json`` sidecars.

Exit codes: 0 success, 2 config error, 3 data error, 4 numerical failure.
"""

from __future__ import annotations

import argparse
import logging
import sys

from lexecon import econometrics as econ
from lexecon import extrapolation, lexicon, resampling, sentiment, structure
from lexecon._rng import derive_seed
from lexecon.errors import (ConfigError, DataError, LexeconError,
                            MissingBundleError, MissingModelError,
                            NumericalError)
from lexecon.output import (word_list_digest, write_csv, write_json,
                            write_sidecar)
from lexecon.runconfig import RunConfig, load_run_config

log = logging.getLogger(__name__)


# -- lexstat -----------------------------------------------------------------

def cmd_lexstat(cfg: RunConfig, args) -> None:
    params = cfg.stage("lexstat")
    table_path, scale = cfg.rating_table(params.get("table", "affect"))
    table = lexicon.load_rating_table(table_path, scale)
    n_resamples = params.get("n_resamples", 10_000)
    comparisons = params.get("comparisons")
    if not comparisons:
        raise ConfigError("lexstat.comparisons is not configured")
    seed = cfg.stage_seed("lexstat")
    summary = {"seed": seed, "n_resamples": n_resamples,
               "table": str(table_path), "sides": {}}
    for side, block in comparisons.items():
        target_name = block.get("target")
        if not target_name:
            raise ConfigError(f"lexstat.comparisons.{side} needs a 'target'")
        refs = block.get("references", [])
        if not refs:
            log.warning("lexstat %s: no reference lists; means only", side)
        rated = {}
        for name in [target_name] + list(refs):
            wl = lexicon.load_word_list(cfg.word_list_path(name), name=name)
            rated[name] = lexicon.join(wl, table)
        rows = []
        side_summary = {"target": target_name, "lists": {}, "tests": {}}
        for name, rws in rated.items():
            means = lexicon.feature_means(rws)
            side_summary["lists"][name] = {
                "coverage": rws.coverage, "n_rated": len(rws.words),
                "means": {f: float(m) for f, m in
                          zip(rws.feature_names, means)}}
        for f, feature in enumerate(table.feature_names):
            row = [feature]
            for name in [target_name] + list(refs):
                row.append(float(lexicon.feature_means(rated[name])[f]))
            for ref in refs:
                test_seed = derive_seed(seed, f"{side}:{target_name}:{ref}:{feature}")
                res = resampling.mc_mean_diff_test(
                    rated[target_name].values[:, f],
                    rated[ref].values[:, f],
                    n_resamples=n_resamples, seed=test_seed)
                row.append(res.p_value)
                side_summary["tests"].setdefault(ref, {})[feature] = res.to_dict()
            rows.append(tuple(row))
        header = (["feature", f"mean_{target_name}"]
                  + [f"mean_{r}" for r in refs]
                  + [f"p_{target_name}_vs_{r}" for r in refs])
        out_csv = cfg.out_dir / f"lexstat_{side}.csv"
        write_csv(out_csv, header, rows)
        write_sidecar(out_csv, "lexstat", seed, cfg.hash,
                      {"sides": side, "table": str(table_path)})
        summary["sides"][side] = side_summary
    out_json = cfg.out_dir / "lexstat.json"
    write_json(out_json, summary)
    write_sidecar(out_json, "lexstat", seed, cfg.hash)


# -- features ----------------------------------------------------------------

def _regressor_config(params: dict) -> extrapolation.RegressorConfig:
    defaults = extrapolation.RegressorConfig()
    return extrapolation.RegressorConfig(
        hidden_units=params.get("hidden_units", defaults.hidden_units),
        max_epochs=params.get("max_epochs", defaults.max_epochs),
        patience=params.get("patience", defaults.patience),
        validation_fraction=params.get("validation_fraction",
                                       defaults.validation_fraction),
        learning_rate=params.get("learning_rate", defaults.learning_rate))


def _load_embeddings(cfg: RunConfig) -> extrapolation.EmbeddingTable:
    if cfg.embeddings is None:
        raise ConfigError("embeddings file is not configured")
    return extrapolation.load_embeddings(cfg.embeddings)


def cmd_features(cfg: RunConfig, args) -> None:
    params = cfg.stage("features")
    seed = cfg.stage_seed("features")
    bundle_path = cfg.out_dir / "feature_regressors.npz"
    if args.action == "train":
        table_path, scale = cfg.rating_table(params.get("table", "semantic"))
        ratings = lexicon.load_rating_table(table_path, scale)
        bundle = extrapolation.train_feature_regressors(
            ratings, _load_embeddings(cfg), _regressor_config(params),
            seed=seed, min_overlap=params.get("min_overlap", 100))
        bundle.save(bundle_path)
        write_sidecar(bundle_path, "features", seed, cfg.hash)
        report = cfg.out_dir / "features_validation.csv"
        write_csv(report, ["feature", "validation_r", "validation_mse"],
                  [(n, float(r), float(m)) for n, r, m in
                   zip(bundle.feature_names, bundle.validation_r,
                       bundle.validation_mse)])
        write_sidecar(report, "features", seed, cfg.hash)
    elif args.action == "predict":
        if not bundle_path.is_file():
            raise MissingBundleError(
                f"no trained bundle at {bundle_path}; run 'features train'")
        bundle = extrapolation.FeatureRegressorBundle.load(bundle_path)
        embeddings = _load_embeddings(cfg)
        lists = params.get("predict_lists")
        if not lists:
            raise ConfigError("features.predict_lists is not configured")
        for name in lists:
            wl = lexicon.load_word_list(cfg.word_list_path(name), name=name)
            matrix = extrapolation.predict_features(bundle, wl, embeddings)
            out = cfg.out_dir / f"features_{name}.csv"
            extrapolation.write_feature_matrix_csv(matrix, out)
            write_sidecar(out, "features", seed, cfg.hash,
                          {"list": name, "dropped": list(matrix.dropped)})
    elif args.action == "crossval":
        table_path, scale = cfg.rating_table(params.get("table", "semantic"))
        ratings = lexicon.load_rating_table(table_path, scale)
        result = extrapolation.cross_validate(
            ratings, _load_embeddings(cfg), _regressor_config(params),
            k_folds=params.get("k_folds", 5), seed=seed)
        out = cfg.out_dir / "features_crossval.csv"
        write_csv(out, ["feature", "mean_r"],
                  [(n, float(r)) for n, r in
                   zip(result.feature_names, result.correlations)])
        write_sidecar(out, "features", seed, cfg.hash,
                      {"k_folds": result.k_folds, "n_words": result.n_words})
    else:  # pragma: no cover - argparse restricts choices
        raise ConfigError(f"unknown features action {args.action!r}")


# -- split -------------------------------------------------------------------

def cmd_split(cfg: RunConfig, args) -> None:
    params = cfg.stage("split")
    seed = cfg.stage_seed("split")
    list_name = params.get("list")
    if not list_name:
        raise ConfigError("split.list is not configured")
    features_csv = params.get("features_csv")
    features_path = (cfg.base_dir / features_csv if features_csv
                     else cfg.out_dir / f"features_{list_name}.csv")
    if not features_path.is_file():
        raise DataError(f"predicted features not found at {features_path}; "
                        "run 'features predict' first")
    matrix = extrapolation.read_feature_matrix_csv(features_path)
    wl = lexicon.load_word_list(cfg.word_list_path(list_name), name=list_name)

    corr_features = params.get("correlation_features") or list(
        matrix.feature_names)
    corr = structure.feature_correlations(matrix, corr_features)
    corr_csv = cfg.out_dir / "split_correlations.csv"
    write_csv(corr_csv, ["feature"] + list(corr.feature_names),
              [(name,) + tuple(float(v) for v in corr.matrix[i])
               for i, name in enumerate(corr.feature_names)])
    write_sidecar(corr_csv, "split", seed, cfg.hash)

    pca_features = params.get("pca_features")
    if not pca_features:
        raise ConfigError("split.pca_features is not configured")
    pca = structure.pca_project(matrix, pca_features,
                                n_components=params.get("n_components", 2))
    assignment = structure.kmeans_cluster(
        pca, k=2, n_restarts=params.get("n_restarts", 100), seed=seed)
    scores_csv = cfg.out_dir / "split_scores.csv"
    write_csv(scores_csv, ["word", "pc1", "pc2", "cluster"],
              [(w, float(pca.scores[i, 0]), float(pca.scores[i, 1]),
                int(assignment.labels[i]))
               for i, w in enumerate(pca.words)])
    write_sidecar(scores_csv, "split", seed, cfg.hash)
    write_json(cfg.out_dir / "split_pca.json", {
        "features": list(pca.feature_names),
        "explained_variance": [float(v) for v in pca.explained],
        "loadings": pca.loadings.tolist(),
        "standardization": {"mean": pca.mean.tolist(),
                            "std": pca.std.tolist()},
        "basis": pca.basis,
        "inertia": assignment.inertia,
        "centroids": assignment.centroids.tolist(),
        "n_restarts": assignment.n_restarts, "seed": seed})
    write_sidecar(cfg.out_dir / "split_pca.json", "split", seed, cfg.hash)

    label_features = tuple(params.get("label_features",
                                      ("Cognition", "Drive")))
    alt1, alt2 = structure.split_word_list(
        wl, assignment, matrix, label_features=label_features,
        override_tie=bool(params.get("override_tie", False)))
    for alt in (alt1, alt2):
        path = cfg.out_dir / f"{alt.name}.txt"
        lexicon.write_word_list(alt, path)
        write_sidecar(path, "split", seed, cfg.hash,
                      {"n_words": len(alt), "label_features": list(label_features)})


# -- index -------------------------------------------------------------------

def cmd_index(cfg: RunConfig, args) -> None:
    params = cfg.stage("index")
    seed = cfg.stage_seed("index")
    if cfg.corpus is None:
        raise ConfigError("corpus file is not configured")
    pairs = params.get("pairs")
    if not pairs:
        raise ConfigError("index.pairs is not configured")
    tags = cfg.tags or None
    for pair in pairs:
        name = pair.get("name")
        if not name or "negative" not in pair:
            raise ConfigError("each index pair needs 'name' and 'negative'")
        negative = lexicon.load_word_list(
            cfg.word_list_path(pair["negative"]), name=pair["negative"])
        if pair.get("positive"):
            positive = lexicon.load_word_list(
                cfg.word_list_path(pair["positive"]), name=pair["positive"])
        else:  # avoidance-only index: the positive term is always zero
            positive = lexicon.WordList(name="(none)", words=())
        articles = sentiment.iter_corpus(cfg.corpus, tags=tags)
        try:
            series = sentiment.build_monthly_index(
                articles, positive, negative, name=name,
                weight_by_length=bool(params.get("weight_by_length", False)))
        except DataError:
            raise DataError(
                f"no scorable articles for index {name!r} "
                f"(tag filter: {list(tags) if tags else 'none'})") from None
        out = cfg.out_dir / f"index_{name}.csv"
        sentiment.write_series_csv(series, out)
        write_sidecar(out, "index", seed, cfg.hash, {
            "metadata": series.metadata,
            "tags": list(tags) if tags else [],
            "positive_digest": word_list_digest(positive.words),
            "negative_digest": word_list_digest(negative.words)})


# -- econ --------------------------------------------------------------------

def _assemble_panel(cfg: RunConfig) -> econ.MacroPanel:
    params = cfg.stage("econ")
    panel_file = params.get("panel")
    if not panel_file:
        raise ConfigError("econ.panel is not configured")
    series = {}
    for name, rel in (params.get("series") or {}).items():
        p = cfg.base_dir / rel
        if not p.is_file():
            p = cfg.out_dir / rel
        if not p.is_file():
            raise DataError(f"series file for {name!r} not found: {rel}")
        series[name] = sentiment.read_series_csv(p, name=name)
    return econ.assemble_panel(cfg.base_dir / panel_file, series=series,
                               log_columns=params.get("log_columns", ()),
                               order=params.get("order"))


def _nonstationary(panel: econ.MacroPanel, params: dict) -> list[str]:
    stationary = set(params.get("stationary", ()))
    unknown = stationary - set(panel.variable_names)
    if unknown:
        raise ConfigError(f"stationary variables not in panel: "
                          f"{sorted(unknown)}")
    return [n for n in panel.variable_names if n not in stationary]


def _resolve_lag(panel: econ.MacroPanel, params: dict) -> int:
    lag = params.get("lag")
    if lag is None:
        lag = econ.select_lag(panel.values, params.get("max_lag", 12))
        log.info("selected lag %d by the Schwarz criterion", lag)
    return lag


def cmd_econ(cfg: RunConfig, args) -> None:
    params = cfg.stage("econ")
    seed = cfg.stage_seed("econ")
    model_path = cfg.out_dir / "econ_model.npz"
    if args.action in ("irf", "fevd") and not model_path.is_file():
        raise MissingModelError(
            f"no estimated model at {model_path}; run 'econ vecm' first")
    if args.action in ("adf", "johansen", "vecm"):
        panel = _assemble_panel(cfg)

    if args.action == "adf":
        results = [econ.adf_test(panel.column(name),
                                 max_lag=params.get("max_lag", 12),
                                 variable=name)
                   for name in panel.variable_names]
        out = cfg.out_dir / "econ_adf.csv"
        write_csv(out, ["variable", "statistic", "lag", "cv_1pct", "cv_5pct",
                        "cv_10pct", "rejected_at_5pct", "nobs"],
                  [(r.variable, r.statistic, r.lag,
                    r.critical_values[0.01], r.critical_values[0.05],
                    r.critical_values[0.10], r.rejected_at_5pct, r.nobs)
                   for r in results])
        write_sidecar(out, "econ", seed, cfg.hash)
        write_json(cfg.out_dir / "econ_adf.json",
                   {"results": [r.to_dict() for r in results]})
        write_sidecar(cfg.out_dir / "econ_adf.json", "econ", seed, cfg.hash)
    elif args.action == "johansen":
        names = _nonstationary(panel, params)
        block = panel.subset(names)
        lag = _resolve_lag(panel, params)
        result = econ.johansen_trace(block.values, lag, names)
        out = cfg.out_dir / "econ_johansen.json"
        write_json(out, result.to_dict())
        write_sidecar(out, "econ", seed, cfg.hash)
    elif args.action == "vecm":
        lag = _resolve_lag(panel, params)
        rank = params.get("rank")
        if rank is None:
            names = _nonstationary(panel, params)
            rank = econ.johansen_trace(panel.subset(names).values, lag,
                                       names).selected_rank
            log.info("selected cointegration rank %d by the trace test", rank)
        spec = econ.VecmSpec(lag=lag, rank=rank,
                             stationary=tuple(params.get("stationary", ())))
        model = econ.estimate_vecm(panel, spec)
        model.save(model_path)
        write_sidecar(model_path, "econ", seed, cfg.hash)
        out = cfg.out_dir / "econ_vecm.json"
        write_json(out, model.to_dict())
        write_sidecar(out, "econ", seed, cfg.hash)
    elif args.action in ("irf", "fevd"):
        model = econ.VecmModel.load(model_path)
        horizon = params.get("horizon", 24)
        if args.action == "irf":
            replications = params.get("replications", 1000)
            if replications > 0:
                result = econ.hall_bootstrap_irf(
                    model, replications=replications,
                    level=params.get("level", 0.95), horizon=horizon,
                    seed=seed)
                header = ["horizon", "response", "shock", "point", "lower",
                          "upper"]
            else:
                result = econ.impulse_response(model, horizon)
                header = ["horizon", "response", "shock", "point"]
            out = cfg.out_dir / "econ_irf.csv"
            write_csv(out, header, result.rows())
            write_sidecar(out, "econ", seed, cfg.hash, {
                "level": result.level,
                "replications": result.n_replications,
                "dropped_replications": result.n_dropped})
        else:
            result = econ.fevd(model, horizon)
            out = cfg.out_dir / "econ_fevd.csv"
            write_csv(out, ["horizon", "variable", "shock", "share"],
                      result.rows())
            write_sidecar(out, "econ", seed, cfg.hash)
    else:  # pragma: no cover
        raise ConfigError(f"unknown econ action {args.action!r}")


# -- parser ------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="lexecon",
        description="Affect word-list analytics, sentiment indices and "
                    "VECM shock measurement.")
    parser.add_argument("-v", "--verbose", action="store_true",
                        help="enable info logging")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", required=True, help="JSON run config")
    common.add_argument("--seed", type=int, default=None,
                        help="override the global seed")
    common.add_argument("--out", default=None,
                        help="override the output directory")
    common.add_argument("--tags", default=None,
                        help="comma-separated tag filter override")
    common.add_argument("--set", action="append", default=[],
                        metavar="KEY=VALUE",
                        help="override a config entry (dotted path)")

    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("lexstat", parents=[common],
                       help="word-list means and randomization tests")
    p.set_defaults(func=cmd_lexstat, stage="lexstat")

    p = sub.add_parser("features", parents=[common],
                       help="train/apply feature regressors")
    p.add_argument("action", choices=["train", "predict", "crossval"])
    p.set_defaults(func=cmd_features, stage="features")

    p = sub.add_parser("split", parents=[common],
                       help="PCA + k-means split of a word-list")
    p.set_defaults(func=cmd_split, stage="split")

    p = sub.add_parser("index", parents=[common],
                       help="build monthly sentiment indices")
    p.set_defaults(func=cmd_index, stage="index")

    p = sub.add_parser("econ", parents=[common],
                       help="unit roots, cointegration, VECM, IRF, FEVD")
    p.add_argument("action",
                   choices=["adf", "johansen", "vecm", "irf", "fevd"])
    p.set_defaults(func=cmd_econ, stage="econ")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s")
    stage = getattr(args, "stage", args.command)
    try:
        cfg = load_run_config(args.config, seed=args.seed, out=args.out,
                              tags=(args.tags.split(",") if args.tags
                                    else None),
                              sets=args.set)
        cfg.out_dir.mkdir(parents=True, exist_ok=True)
        args.func(cfg, args)
        return 0
    except ConfigError as exc:
        print(f"config error [{stage}]: {exc}", file=sys.stderr)
        return 2
    except DataError as exc:
        print(f"data error [{stage}]: {exc}", file=sys.stderr)
        return 3
    except NumericalError as exc:
        print(f"numerical error [{stage}]: {exc}", file=sys.stderr)
        return 4
    except LexeconError as exc:  # base-class fallback
        print(f"error [{stage}]: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
