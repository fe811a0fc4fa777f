"""Synthetic end-to-end fixture: lexicons, ratings, embeddings, corpus,
macro panel and a run config wired together in a temporary directory.

The data are small but structured: the avoidance list holds two planted
word groups (one high on Cognition/Drive, one on Fearful/Surprised), the
embeddings predict the semantic features linearly, articles carry a
persistent latent sentiment, and the macro block contains one planted
cointegration relation plus a stationary variable.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

SEMANTIC_FEATURES = ("Vision", "Arousal", "Unpleasant", "Fearful",
                   "Surprised", "Cognition", "Drive", "Size")
MONTHS = [f"{1998 + i // 12:04d}-{i % 12 + 1:02d}" for i in range(168)]


def _words(prefix: str, n: int) -> list[str]:
    return [f"{prefix}{i:03d}" for i in range(n)]


def _write_list(path: Path, name: str, words: list[str]) -> None:
    lines = [f"# {name}"]
    for i, w in enumerate(words):
        lines.append(w.upper() if i % 7 == 3 else w)  # exercise lowercasing
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def _affect_rows(rng, words, v, a, d, spread=0.05):
    rows = {}
    for w in words:
        vals = np.clip(rng.normal([v, a, d], spread), 0.0, 1.0)
        rows[w] = vals
    return rows


def build_pipeline_fixture(root: Path, seed: int = 20240801) -> Path:
    """Create the fixture tree under ``root``; returns the config path."""
    rng = np.random.default_rng(seed)
    data = root / "data"
    data.mkdir(parents=True, exist_ok=True)

    approach = _words("appr", 40)
    avoid_cd = _words("avoidcd", 30)
    avoid_fs = _words("avoidfs", 30)
    avoidance = avoid_cd + avoid_fs
    fin_pos, fin_neg = _words("finpos", 40), _words("finneg", 50)
    gen_pos, gen_neg = _words("genpos", 45), _words("genneg", 55)
    filler = _words("filler", 200)
    semantic_words = _words("sem", 160)

    lists = {"approach": approach, "avoidance": avoidance,
             "fin_positive": fin_pos, "fin_negative": fin_neg,
             "gen_positive": gen_pos, "gen_negative": gen_neg}
    for name, words in lists.items():
        _write_list(data / f"{name}.txt", name, words)

    # affect rating table; a few list words are left unrated
    rows = {}
    rows.update(_affect_rows(rng, approach, 0.86, 0.65, 0.75))
    rows.update(_affect_rows(rng, avoidance, 0.18, 0.73, 0.36))
    rows.update(_affect_rows(rng, fin_pos, 0.85, 0.57, 0.76))
    rows.update(_affect_rows(rng, fin_neg, 0.23, 0.59, 0.38))
    rows.update(_affect_rows(rng, gen_pos, 0.76, 0.49, 0.68))
    rows.update(_affect_rows(rng, gen_neg, 0.25, 0.60, 0.40))
    rows.update(_affect_rows(rng, filler, 0.50, 0.50, 0.50, spread=0.15))
    unrated = {approach[-1], fin_neg[-1], gen_pos[-1]}
    lines = ["word,valence,arousal,dominance"]
    for w, vals in rows.items():
        if w in unrated:
            continue
        lines.append(",".join([w] + [f"{v:.4f}" for v in vals]))
    (data / "affect.csv").write_text("\n".join(lines) + "\n", encoding="utf-8")

    # embeddings predict the semantic features linearly
    dim = 16
    n_feat = len(SEMANTIC_FEATURES)
    w_true = rng.normal(0.0, 0.35, size=(n_feat, dim))
    fear_ix = [SEMANTIC_FEATURES.index(f) for f in ("Fearful", "Surprised")]
    cog_ix = [SEMANTIC_FEATURES.index(f) for f in ("Cognition", "Drive")]
    for i in fear_ix:
        w_true[i, 0:2] += 1.2
    for i in cog_ix:
        w_true[i, 2:4] += 1.2

    def emb_for(words, shift=None):
        out = {}
        for w in words:
            e = rng.normal(size=dim)
            if shift is not None:
                e = e + shift
            out[w] = e
        return out

    shift_cd = np.zeros(dim)
    shift_cd[2:4] = 1.8
    shift_cd[0:2] = -0.9
    shift_fs = np.zeros(dim)
    shift_fs[0:2] = 1.8
    shift_fs[2:4] = -0.9
    embeddings = {}
    embeddings.update(emb_for(semantic_words))
    embeddings.update(emb_for(approach))
    embeddings.update(emb_for(avoid_cd, shift_cd))
    embeddings.update(emb_for(avoid_fs, shift_fs))
    embeddings.update(emb_for(fin_pos + fin_neg + gen_pos + gen_neg))
    for w in (avoid_cd[-1], avoid_fs[-1]):  # exercise the drop report
        del embeddings[w]
    emb_lines = [f"{len(embeddings)} {dim}"]
    for w, e in embeddings.items():
        emb_lines.append(" ".join([w] + [f"{v:.6f}" for v in e]))
    (data / "embeddings.txt").write_text("\n".join(emb_lines) + "\n",
                                         encoding="utf-8")

    semantic_lines = ["word," + ",".join(SEMANTIC_FEATURES)]
    for w in semantic_words:
        vals = np.clip(3.5 + w_true @ embeddings[w]
                       + rng.normal(0, 0.3, n_feat), 0.0, 7.0)
        semantic_lines.append(",".join([w] + [f"{v:.4f}" for v in vals]))
    (data / "semantic.csv").write_text("\n".join(semantic_lines) + "\n",
                                     encoding="utf-8")

    # corpus with a persistent latent avoidance intensity
    latent = np.zeros(len(MONTHS))
    for t in range(1, len(MONTHS)):
        latent[t] = 0.95 * latent[t - 1] + rng.normal(0, 0.15)
    records = []
    art_id = 0
    for t, month in enumerate(MONTHS):
        p_avoid = float(np.clip(0.06 + 0.03 * latent[t], 0.005, 0.3))
        for j in range(3):
            n_tok = int(rng.integers(40, 90))
            tokens = []
            for _ in range(n_tok):
                u = rng.random()
                if u < 0.05:
                    tokens.append(approach[int(rng.integers(len(approach)))])
                elif u < 0.05 + p_avoid:
                    tokens.append(avoidance[int(rng.integers(len(avoidance)))])
                else:
                    tokens.append(filler[int(rng.integers(len(filler)))])
            tag = "New York" if j < 2 else "Boston"
            records.append({"id": f"a{art_id:05d}",
                            "date": f"{month}-{int(rng.integers(1, 28)):02d}",
                            "tags": [tag],
                            "text": " ".join(tokens) + "."})
            art_id += 1
    (data / "corpus.jsonl").write_text(
        "\n".join(json.dumps(r) for r in records) + "\n", encoding="utf-8")

    # macro block: planted cointegration between log RGDP and log SP
    t_len = len(MONTHS)
    trend = np.cumsum(rng.normal(0.002, 0.01, t_len))
    gap = np.zeros(t_len)
    infexp = np.zeros(t_len)
    fed = np.zeros(t_len)
    for t in range(1, t_len):
        gap[t] = 0.7 * gap[t - 1] + rng.normal(0, 0.02)
        infexp[t] = 0.6 * infexp[t - 1] + rng.normal(0, 0.2)
        fed[t] = fed[t - 1] + rng.normal(0, 0.05)
    log_rgdp = 9.0 + 0.5 * trend
    log_sp = 2.0 + 0.75 * trend + gap
    macro_lines = ["month,RGDP,SP,FEDFUND,INFEXP"]
    for i, m in enumerate(MONTHS):
        macro_lines.append(
            f"{m},{np.exp(log_rgdp[i]):.6f},{np.exp(log_sp[i]):.6f},"
            f"{4.0 + fed[i]:.6f},{3.0 + infexp[i]:.6f}")
    (data / "macro.csv").write_text("\n".join(macro_lines) + "\n",
                                    encoding="utf-8")

    config = {
        "seed": 42,
        "out_dir": "out",
        "word_lists": {name: f"data/{name}.txt" for name in lists},
        "rating_tables": {
            "affect": {"path": "data/affect.csv", "scale": [0, 1]},
            "semantic": {"path": "data/semantic.csv", "scale": [0, 7]},
        },
        "embeddings": "data/embeddings.txt",
        "corpus": "data/corpus.jsonl",
        "tags": ["New York", "Washington D.C."],
        "lexstat": {
            "table": "affect",
            "n_resamples": 2000,
            "comparisons": {
                "positive": {"target": "approach",
                             "references": ["fin_positive", "gen_positive"]},
                "negative": {"target": "avoidance",
                             "references": ["fin_negative", "gen_negative"]},
            },
        },
        "features": {
            "table": "semantic",
            "hidden_units": 24, "max_epochs": 120, "patience": 15,
            "learning_rate": 0.02, "k_folds": 3, "min_overlap": 100,
            "predict_lists": ["avoidance"],
        },
        "split": {
            "list": "avoidance",
            "correlation_features": ["Fearful", "Surprised", "Cognition",
                                     "Drive", "Arousal"],
            "pca_features": ["Fearful", "Surprised", "Cognition", "Drive"],
            "label_features": ["Cognition", "Drive"],
            "n_restarts": 20,
        },
        "index": {
            "pairs": [
                {"name": "base", "positive": "approach",
                 "negative": "avoidance"},
                {"name": "fin", "positive": "fin_positive",
                 "negative": "fin_negative"},
                {"name": "alt1", "positive": "approach",
                 "negative": "avoidance_alt1"},
                {"name": "alt2", "positive": "approach",
                 "negative": "avoidance_alt2"},
            ],
        },
        "econ": {
            "panel": "data/macro.csv",
            "series": {"SENT": "index_alt1.csv"},
            "log_columns": ["RGDP", "SP"],
            "stationary": ["INFEXP"],
            "order": ["RGDP", "SP", "FEDFUND", "INFEXP", "SENT"],
            "lag": 2, "rank": 1, "max_lag": 6,
            "horizon": 8, "replications": 100, "level": 0.95,
        },
    }
    cfg_path = root / "config.json"
    cfg_path.write_text(json.dumps(config, indent=2) + "\n", encoding="utf-8")
    return cfg_path


PIPELINE_COMMANDS = [
    ["lexstat"],
    ["features", "train"],
    ["features", "crossval"],
    ["features", "predict"],
    ["split"],
    ["index"],
    ["econ", "adf"],
    ["econ", "johansen"],
    ["econ", "vecm"],
    ["econ", "irf"],
    ["econ", "fevd"],
]


def run_pipeline_inprocess(cfg_path: Path, out_dir: str) -> None:
    """Run every stage through cli.main in this process."""
    from lexecon.cli import main
    for cmd in PIPELINE_COMMANDS:
        rc = main(cmd + ["--config", str(cfg_path), "--out", out_dir])
        assert rc == 0, f"stage {cmd} exited {rc}"


def tree_bytes(root: Path) -> dict[str, bytes]:
    return {str(p.relative_to(root)): p.read_bytes()
            for p in sorted(root.rglob("*")) if p.is_file()}
