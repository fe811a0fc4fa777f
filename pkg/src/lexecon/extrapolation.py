"""Predict semantic feature ratings for arbitrary words from embeddings.

One small regression network is fitted per rated feature (embedding in,
rating out); the fitted bundle then extrapolates the full feature space
to any word with an embedding.  Everything is plain numpy so that a
(seed, config, data) triple reproduces the bundle bit for bit.
"""

from __future__ import annotations

import io
import json
import logging
import zipfile
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from lexecon._rng import derive_seed, stream
from lexecon.errors import (DataError, DimensionMismatchError, NoOverlapError,
                            NumericalError)
from lexecon.lexicon import RatingTable, WordList

log = logging.getLogger(__name__)

_BUNDLE_FORMAT = 1


@dataclass(frozen=True)
class EmbeddingTable:
    """Word vectors of a single dimension."""

    dimension: int
    vectors: dict[str, np.ndarray]

    def __len__(self) -> int:
        return len(self.vectors)


@dataclass(frozen=True)
class FeatureMatrix:
    """Words x named features, with the rating scale the values live on."""

    words: tuple[str, ...]
    feature_names: tuple[str, ...]
    values: np.ndarray = field(repr=False)
    scale: tuple[float, float] = (0.0, 7.0)
    dropped: tuple[str, ...] = ()

    def __post_init__(self):
        if self.values.shape != (len(self.words), len(self.feature_names)):
            raise DataError("feature matrix is not rectangular")

    def feature(self, name: str) -> np.ndarray:
        try:
            i = self.feature_names.index(name)
        except ValueError:
            raise DataError(f"no feature named {name!r}") from None
        return self.values[:, i]

    def rows_for(self, words) -> np.ndarray:
        index = {w: i for i, w in enumerate(self.words)}
        missing = [w for w in words if w not in index]
        if missing:
            raise DataError(f"feature matrix lacks {len(missing)} words "
                            f"(first: {missing[:3]})")
        return self.values[[index[w] for w in words]]


@dataclass(frozen=True)
class RegressorConfig:
    """Training configuration, recorded verbatim in the bundle."""

    hidden_units: int = 100
    max_epochs: int = 500
    patience: int = 20
    validation_fraction: float = 0.1
    learning_rate: float = 0.01

    def to_dict(self) -> dict:
        return {"hidden_units": self.hidden_units,
                "max_epochs": self.max_epochs,
                "patience": self.patience,
                "validation_fraction": self.validation_fraction,
                "learning_rate": self.learning_rate}


def load_embeddings(path: str | Path) -> EmbeddingTable:
    """Load text-format embeddings: ``token v1 ... vd`` per line.

    An optional first line ``count dimension`` is accepted.  Duplicate
    words keep the first occurrence.
    """
    path = Path(path)
    if not path.is_file():
        raise DataError(f"embedding file not found: {path}")
    vectors: dict[str, np.ndarray] = {}
    dim = -1

    def parse_row(raw: str, lineno: int) -> None:
        nonlocal dim
        parts = raw.split()
        if not parts:
            return
        word, nums = parts[0], parts[1:]
        if dim < 0:
            dim = len(nums)
            if dim == 0:
                raise DimensionMismatchError(
                    f"{path}:{lineno}: row has no vector components")
        elif len(nums) != dim:
            raise DimensionMismatchError(
                f"{path}:{lineno}: expected {dim} components, "
                f"got {len(nums)}")
        vec = np.array([float(v) for v in nums], dtype=np.float64)
        if not np.all(np.isfinite(vec)):
            raise DataError(f"{path}:{lineno}: non-finite component")
        vectors.setdefault(word, vec)

    with path.open(encoding="utf-8") as fh:
        first = fh.readline()
        head = first.split()
        header = len(head) == 2 and head[0].isdigit() and head[1].isdigit()
        if not header:
            parse_row(first, 1)
        for lineno, raw in enumerate(fh, 2):
            parse_row(raw, lineno)
    if not vectors:
        raise DataError(f"{path}: no embeddings parsed")
    return EmbeddingTable(dimension=dim, vectors=vectors)


# -- deterministic npz container --------------------------------------------

def save_npz(path: str | Path, **arrays: np.ndarray) -> None:
    """Write an uncompressed ``.npz`` with fixed zip metadata.

    Unlike ``np.savez`` this embeds no timestamps, so two identical runs
    produce byte-identical files.
    """
    with zipfile.ZipFile(path, "w", zipfile.ZIP_STORED) as zf:
        for name in sorted(arrays):
            buf = io.BytesIO()
            np.save(buf, np.asarray(arrays[name]), allow_pickle=False)
            info = zipfile.ZipInfo(name + ".npy", date_time=(1980, 1, 1, 0, 0, 0))
            zf.writestr(info, buf.getvalue())


# -- the per-feature network -------------------------------------------------

class _Network:
    """Single-hidden-layer ReLU regression network on standardized inputs."""

    __slots__ = ("w1", "b1", "w2", "b2", "mean", "std")

    def __init__(self, w1, b1, w2, b2, mean, std):
        self.w1, self.b1, self.w2, self.b2 = w1, b1, w2, b2
        self.mean, self.std = mean, std

    def predict(self, x: np.ndarray) -> np.ndarray:
        z = (x - self.mean) / self.std
        h = np.maximum(z @ self.w1 + self.b1, 0.0)
        return h @ self.w2 + self.b2


def _pearson(a: np.ndarray, b: np.ndarray) -> float:
    sa, sb = np.std(a), np.std(b)
    if sa < 1e-300 or sb < 1e-300:
        return 0.0
    return float(np.mean((a - np.mean(a)) * (b - np.mean(b))) / (sa * sb))


def _fit_network(x: np.ndarray, y: np.ndarray, config: RegressorConfig,
                 rng: np.random.Generator, label: str = "") -> tuple[_Network, float, float]:
    """Fit one network with early stopping; returns (net, val_r, val_mse)."""
    n, d = x.shape
    n_val = max(1, int(round(config.validation_fraction * n)))
    if n_val >= n:
        raise DataError(f"{label}: validation split leaves no training rows")
    perm = rng.permutation(n)
    val_idx, tr_idx = perm[:n_val], perm[n_val:]
    xt, yt = x[tr_idx], y[tr_idx]
    xv, yv = x[val_idx], y[val_idx]

    mean = xt.mean(axis=0)
    std = xt.std(axis=0)
    std = np.where(std < 1e-12, 1.0, std)
    zt = (xt - mean) / std
    zv = (xv - mean) / std

    h = config.hidden_units
    w1 = rng.normal(0.0, np.sqrt(2.0 / d), size=(d, h))
    b1 = np.zeros(h)
    w2 = rng.normal(0.0, np.sqrt(2.0 / h), size=(h, 1))
    b2 = np.array([float(yt.mean())])  # start at the target mean
    params = [w1, b1, w2, b2]
    m_adam = [np.zeros_like(p) for p in params]
    v_adam = [np.zeros_like(p) for p in params]
    beta1, beta2, eps = 0.9, 0.999, 1e-8
    lr = config.learning_rate

    yt2 = yt[:, None]
    best = (np.inf, None)
    wait = 0
    for epoch in range(1, config.max_epochs + 1):
        a1 = zt @ w1 + b1
        hid = np.maximum(a1, 0.0)
        out = hid @ w2 + b2
        err = out - yt2
        loss = float(np.mean(err ** 2))
        if not np.isfinite(loss):
            raise NumericalError(
                f"{label}: non-finite training loss at epoch {epoch}")

        g_out = 2.0 * err / err.shape[0]
        g_w2 = hid.T @ g_out
        g_b2 = g_out.sum(axis=0)
        g_hid = (g_out @ w2.T) * (a1 > 0.0)
        g_w1 = zt.T @ g_hid
        g_b1 = g_hid.sum(axis=0)
        for p, g, ma, va in zip(params, [g_w1, g_b1, g_w2, g_b2],
                                m_adam, v_adam):
            ma *= beta1
            ma += (1 - beta1) * g
            va *= beta2
            va += (1 - beta2) * g * g
            mhat = ma / (1 - beta1 ** epoch)
            vhat = va / (1 - beta2 ** epoch)
            p -= lr * mhat / (np.sqrt(vhat) + eps)

        val_pred = (np.maximum(zv @ w1 + b1, 0.0) @ w2 + b2)[:, 0]
        val_mse = float(np.mean((val_pred - yv) ** 2))
        if val_mse < best[0] - 1e-12:
            best = (val_mse, [p.copy() for p in params])
            wait = 0
        else:
            wait += 1
            if wait >= config.patience:
                break

    if best[1] is not None:
        w1, b1, w2, b2 = best[1]
    net = _Network(w1, b1, w2, b2, mean, std)
    val_pred = net.predict(xv)[:, 0]
    return net, _pearson(val_pred, yv), float(np.mean((val_pred - yv) ** 2))


@dataclass
class FeatureRegressorBundle:
    """One fitted regressor per feature plus the exact training config."""

    feature_names: tuple[str, ...]
    networks: list[_Network]
    config: RegressorConfig
    seed: int
    scale: tuple[float, float]
    validation_r: np.ndarray
    validation_mse: np.ndarray

    def predict_raw(self, x: np.ndarray) -> np.ndarray:
        """Unclamped predictions, one column per feature."""
        cols = [net.predict(x)[:, 0] for net in self.networks]
        return np.column_stack(cols)

    def save(self, path: str | Path) -> None:
        meta = {"format": _BUNDLE_FORMAT, "seed": self.seed,
                "scale": list(self.scale),
                "feature_names": list(self.feature_names),
                "config": self.config.to_dict()}
        arrays = {"meta": np.frombuffer(
            json.dumps(meta, sort_keys=True).encode(), dtype=np.uint8),
            "validation_r": self.validation_r,
            "validation_mse": self.validation_mse}
        for i, net in enumerate(self.networks):
            arrays[f"w1_{i}"] = net.w1
            arrays[f"b1_{i}"] = net.b1
            arrays[f"w2_{i}"] = net.w2
            arrays[f"b2_{i}"] = net.b2
            arrays[f"mean_{i}"] = net.mean
            arrays[f"std_{i}"] = net.std
        save_npz(path, **arrays)

    @classmethod
    def load(cls, path: str | Path) -> "FeatureRegressorBundle":
        path = Path(path)
        if not path.is_file():
            raise DataError(f"bundle file not found: {path}")
        with np.load(path) as data:
            meta = json.loads(bytes(data["meta"]).decode())
            if meta.get("format") != _BUNDLE_FORMAT:
                raise DataError(f"{path}: unsupported bundle format")
            names = tuple(meta["feature_names"])
            nets = [_Network(data[f"w1_{i}"], data[f"b1_{i}"],
                             data[f"w2_{i}"], data[f"b2_{i}"],
                             data[f"mean_{i}"], data[f"std_{i}"])
                    for i in range(len(names))]
            return cls(feature_names=names, networks=nets,
                       config=RegressorConfig(**meta["config"]),
                       seed=meta["seed"], scale=tuple(meta["scale"]),
                       validation_r=data["validation_r"].copy(),
                       validation_mse=data["validation_mse"].copy())


def _aligned_data(ratings: RatingTable,
                  embeddings: EmbeddingTable) -> tuple[list[str], np.ndarray, np.ndarray]:
    words = [w for w in ratings.entries if w in embeddings.vectors]
    if not words:
        raise NoOverlapError("no rated word has an embedding")
    x = np.vstack([embeddings.vectors[w] for w in words])
    y = np.vstack([ratings.entries[w] for w in words])
    return words, x, y


def train_feature_regressors(ratings: RatingTable,
                             embeddings: EmbeddingTable,
                             config: RegressorConfig | None = None,
                             seed: int = 0,
                             min_overlap: int = 100) -> FeatureRegressorBundle:
    """Fit one regressor per feature of ``ratings``.

    Each feature's job draws from its own stream ``(seed, feature)``, so
    the jobs are order independent.
    """
    config = config or RegressorConfig()
    words, x, y = _aligned_data(ratings, embeddings)
    if len(words) < min_overlap:
        raise DataError(f"only {len(words)} rated words have embeddings "
                        f"(need >= {min_overlap})")
    base = derive_seed(seed, "feature-train")
    nets, rs, mses = [], [], []
    for f, name in enumerate(ratings.feature_names):
        net, r, mse = _fit_network(x, y[:, f], config, stream(base, f),
                                   label=f"feature {name!r}")
        nets.append(net)
        rs.append(r)
        mses.append(mse)
    log.info("trained %d regressors on %d words (median val r=%.3f)",
             len(nets), len(words), float(np.median(rs)))
    return FeatureRegressorBundle(
        feature_names=ratings.feature_names, networks=nets, config=config,
        seed=seed, scale=ratings.scale, validation_r=np.array(rs),
        validation_mse=np.array(mses))


@dataclass(frozen=True)
class CrossValResult:
    feature_names: tuple[str, ...]
    correlations: np.ndarray
    k_folds: int
    seed: int
    n_words: int


def cross_validate(ratings: RatingTable, embeddings: EmbeddingTable,
                   config: RegressorConfig | None = None,
                   k_folds: int = 5, seed: int = 0) -> CrossValResult:
    """K-fold held-out correlation per feature.

    Held-out predictions are pooled across folds before the Pearson
    correlation is taken, which keeps leave-one-out (k = n) well defined.
    """
    config = config or RegressorConfig()
    if k_folds < 2:
        raise DataError("k_folds must be >= 2")
    words, x, y = _aligned_data(ratings, embeddings)
    n = len(words)
    if k_folds > n:
        raise DataError(f"k_folds={k_folds} leaves empty folds (n={n})")
    split_rng = stream(derive_seed(seed, "cv-split"))
    folds = np.array_split(split_rng.permutation(n), k_folds)
    base = derive_seed(seed, "cv-fit")
    n_feat = len(ratings.feature_names)
    preds = np.empty((n, n_feat))
    for k, test_idx in enumerate(folds):
        train_idx = np.setdiff1d(np.arange(n), test_idx)
        for f in range(n_feat):
            net, _, _ = _fit_network(x[train_idx], y[train_idx, f], config,
                                     stream(base, k, f),
                                     label=f"fold {k}, feature {f}")
            preds[test_idx, f] = net.predict(x[test_idx])[:, 0]
    corr = np.array([_pearson(preds[:, f], y[:, f]) for f in range(n_feat)])
    return CrossValResult(feature_names=ratings.feature_names,
                          correlations=corr, k_folds=k_folds, seed=seed,
                          n_words=n)


def write_feature_matrix_csv(matrix: FeatureMatrix, path: str | Path) -> None:
    """Write ``word,<feature1>,...`` rows with full-precision floats."""
    lines = [",".join(("word",) + matrix.feature_names)]
    for i, word in enumerate(matrix.words):
        lines.append(",".join([word] + [repr(float(v))
                                        for v in matrix.values[i]]))
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def read_feature_matrix_csv(path: str | Path,
                            scale: tuple[float, float] = (0.0, 7.0)) -> FeatureMatrix:
    """Read a matrix written by :func:`write_feature_matrix_csv`."""
    path = Path(path)
    if not path.is_file():
        raise DataError(f"feature matrix file not found: {path}")
    lines = path.read_text(encoding="utf-8").splitlines()
    if not lines or not lines[0].startswith("word,"):
        raise DataError(f"{path}: not a feature matrix file")
    names = tuple(lines[0].split(",")[1:])
    words, rows = [], []
    for lineno, line in enumerate(lines[1:], 2):
        if not line.strip():
            continue
        parts = line.split(",")
        if len(parts) != len(names) + 1:
            raise DataError(f"{path}:{lineno}: ragged row")
        words.append(parts[0])
        rows.append([float(v) for v in parts[1:]])
    return FeatureMatrix(words=tuple(words), feature_names=names,
                         values=np.array(rows, dtype=np.float64), scale=scale)


def predict_features(bundle: FeatureRegressorBundle, words: WordList,
                     embeddings: EmbeddingTable) -> FeatureMatrix:
    """Predict the bundle's features for a word-list, clamped to its scale.

    Words without an embedding are dropped and reported on the result.
    """
    kept = [w for w in words.words if w in embeddings.vectors]
    dropped = tuple(w for w in words.words if w not in embeddings.vectors)
    if not kept:
        raise NoOverlapError(
            f"no word of {words.name!r} has an embedding")
    if dropped:
        log.info("%s: %d words lack embeddings and were dropped",
                 words.name, len(dropped))
    x = np.vstack([embeddings.vectors[w] for w in kept])
    raw = bundle.predict_raw(x)
    lo, hi = bundle.scale
    return FeatureMatrix(words=tuple(kept),
                         feature_names=bundle.feature_names,
                         values=np.clip(raw, lo, hi), scale=bundle.scale,
                         dropped=dropped)
