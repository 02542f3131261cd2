"""A compact random-forest regressor used for feature relevance scoring.

Trees split on a quantile-binned view of the design matrix (up to 256 bins
per feature, edges frozen into the model), which keeps training a pure
histogram exercise: every candidate split at a tree level is scored from
two bincount passes instead of per-node sorting.  Splits are axis-aligned
thresholds chosen to maximize the usual variance-reduction criterion
sum_L^2/n_L + sum_R^2/n_R; each node draws ceil(sqrt(d)) candidate
features.  Bootstrap sampling, feature subsets, and therefore the whole
model are reproducible from a single integer seed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class EnsembleConfig:
    tree_count: int = 100
    max_depth: int = 8
    seed: int = 0
    n_bins: int = 256
    min_samples_split: int = 2
    # bootstrap samples are capped so training stays tractable on
    # million-row inputs; below the cap the draw has the input's size
    max_bootstrap_rows: int = 100_000

    def __post_init__(self) -> None:
        if self.tree_count < 1:
            raise ValueError("tree_count must be at least 1")
        if self.max_depth < 1:
            raise ValueError("max_depth must be at least 1")
        if not 2 <= self.n_bins <= 256:
            raise ValueError("n_bins must lie in [2, 256]")
        if self.max_bootstrap_rows < 1:
            raise ValueError("max_bootstrap_rows must be positive")


@dataclass(frozen=True)
class Tree:
    """Flat node arrays; feature < 0 marks a leaf."""

    feature: np.ndarray
    threshold: np.ndarray  # bin index: code <= threshold goes left
    left: np.ndarray
    right: np.ndarray
    value: np.ndarray


_GAIN_EPS = 1e-12


def _compute_edges(x: np.ndarray, n_bins: int) -> tuple[np.ndarray, ...]:
    qs = np.linspace(0.0, 1.0, n_bins + 1)[1:-1]
    edges = []
    for j in range(x.shape[1]):
        edges.append(np.unique(np.quantile(x[:, j], qs)))
    return tuple(edges)


def _bin(x: np.ndarray, edges: tuple[np.ndarray, ...]) -> np.ndarray:
    codes = np.empty(x.shape, dtype=np.uint8)
    for j, e in enumerate(edges):
        codes[:, j] = np.searchsorted(e, x[:, j], side="right")
    return codes


class _TreeBuilder:
    """Level-wise growth over binned features."""

    def __init__(self, n_bins: int, max_depth: int, min_split: int, k_features: int):
        self.n_bins = n_bins
        self.max_depth = max_depth
        self.min_split = min_split
        self.k = k_features
        self.feature: list[int] = []
        self.threshold: list[int] = []
        self.left: list[int] = []
        self.right: list[int] = []
        self.value: list[float] = []

    def _new_node(self) -> int:
        self.feature.append(-1)
        self.threshold.append(0)
        self.left.append(-1)
        self.right.append(-1)
        self.value.append(0.0)
        return len(self.feature) - 1

    def fit(self, codes: np.ndarray, y: np.ndarray, rng: np.random.Generator) -> Tree:
        n, d = codes.shape
        b = self.n_bins
        slot = np.zeros(n, dtype=np.int64)  # -1 once the sample settles in a leaf
        node_of_slot = [self._new_node()]
        for depth in range(self.max_depth + 1):
            nslots = len(node_of_slot)
            if nslots == 0:
                break
            alive_idx = np.nonzero(slot >= 0)[0]
            s_alive = slot[alive_idx]
            y_alive = y[alive_idx]
            cnt_tot = np.bincount(s_alive, minlength=nslots).astype(np.float64)
            sum_tot = np.bincount(s_alive, weights=y_alive, minlength=nslots)
            with np.errstate(divide="ignore", invalid="ignore"):
                parent = np.where(cnt_tot > 0, sum_tot**2 / cnt_tot, 0.0)

            may_split = (cnt_tot >= self.min_split) & (depth < self.max_depth)
            best_gain = np.full(nslots, -np.inf)
            best_feat = np.full(nslots, -1, dtype=np.int64)
            best_bin = np.zeros(nslots, dtype=np.int64)
            if may_split.any():
                subset = np.zeros((nslots, d), dtype=bool)
                for s in range(nslots):
                    if may_split[s]:
                        subset[s, rng.choice(d, size=self.k, replace=False)] = True
                for f in range(d):
                    use = subset[:, f] & may_split
                    if not use.any():
                        continue
                    key = s_alive * b + codes[alive_idx, f]
                    h_cnt = np.bincount(key, minlength=nslots * b).reshape(nslots, b)
                    h_sum = np.bincount(key, weights=y_alive, minlength=nslots * b).reshape(
                        nslots, b
                    )
                    c_left = np.cumsum(h_cnt, axis=1)[:, :-1].astype(np.float64)
                    s_left = np.cumsum(h_sum, axis=1)[:, :-1]
                    c_right = cnt_tot[:, None] - c_left
                    s_right = sum_tot[:, None] - s_left
                    with np.errstate(divide="ignore", invalid="ignore"):
                        score = s_left**2 / c_left + s_right**2 / c_right
                    score[(c_left == 0) | (c_right == 0)] = -np.inf
                    gain = score - parent[:, None]
                    gain[~use] = -np.inf
                    cand = np.argmax(gain, axis=1)
                    cand_gain = gain[np.arange(nslots), cand]
                    better = cand_gain > best_gain
                    best_gain[better] = cand_gain[better]
                    best_feat[better] = f
                    best_bin[better] = cand[better]

            threshold = _GAIN_EPS * (np.abs(parent) + 1.0)
            split = may_split & (best_gain > threshold) & (best_feat >= 0)

            split_f = np.full(nslots, -1, dtype=np.int64)
            split_b = np.zeros(nslots, dtype=np.int64)
            left_slot = np.full(nslots, -1, dtype=np.int64)
            right_slot = np.full(nslots, -1, dtype=np.int64)
            next_nodes: list[int] = []
            for s in range(nslots):
                node = node_of_slot[s]
                if split[s]:
                    f = int(best_feat[s])
                    self.feature[node] = f
                    self.threshold[node] = int(best_bin[s])
                    lc = self._new_node()
                    rc = self._new_node()
                    self.left[node] = lc
                    self.right[node] = rc
                    split_f[s] = f
                    split_b[s] = best_bin[s]
                    left_slot[s] = len(next_nodes)
                    next_nodes.append(lc)
                    right_slot[s] = len(next_nodes)
                    next_nodes.append(rc)
                else:
                    self.value[node] = float(sum_tot[s] / cnt_tot[s]) if cnt_tot[s] else 0.0

            sf = split_f[s_alive]
            leaf = sf < 0
            at = codes[alive_idx, np.maximum(sf, 0)]
            go_left = at <= split_b[s_alive]
            new_slot = np.where(
                leaf, -1, np.where(go_left, left_slot[s_alive], right_slot[s_alive])
            )
            slot[alive_idx] = new_slot
            node_of_slot = next_nodes

        return Tree(
            feature=np.asarray(self.feature, dtype=np.int64),
            threshold=np.asarray(self.threshold, dtype=np.int64),
            left=np.asarray(self.left, dtype=np.int64),
            right=np.asarray(self.right, dtype=np.int64),
            value=np.asarray(self.value, dtype=np.float64),
        )


def _predict_tree(tree: Tree, codes: np.ndarray) -> np.ndarray:
    node = np.zeros(len(codes), dtype=np.int64)
    rows = np.arange(len(codes))
    while True:
        f = tree.feature[node]
        active = f >= 0
        if not active.any():
            break
        at = codes[rows, np.maximum(f, 0)]
        nxt = np.where(at <= tree.threshold[node], tree.left[node], tree.right[node])
        node = np.where(active, nxt, node)
    return tree.value[node]


@dataclass(frozen=True)
class EnsembleModel:
    """A trained forest; prediction is the plain mean over trees."""

    config: EnsembleConfig
    feature_count: int
    bin_edges: tuple[np.ndarray, ...]
    trees: tuple[Tree, ...]
    constant_target: bool

    def predict_per_tree(self, x: np.ndarray) -> np.ndarray:
        x = self._check(x)
        codes = _bin(x, self.bin_edges)
        return np.stack([_predict_tree(t, codes) for t in self.trees])

    def predict(self, x: np.ndarray) -> np.ndarray:
        x = self._check(x)
        codes = _bin(x, self.bin_edges)
        out = np.zeros(len(codes), dtype=np.float64)
        for t in self.trees:
            out += _predict_tree(t, codes)
        return out / len(self.trees)

    def _check(self, x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=np.float64)
        if x.ndim != 2 or x.shape[1] != self.feature_count:
            raise ValueError(
                f"expected a 2-d matrix with {self.feature_count} columns, got {x.shape}"
            )
        return x


def train_forest(x: np.ndarray, y: np.ndarray, config: EnsembleConfig | None = None) -> EnsembleModel:
    """Train a forest of ``config.tree_count`` regression trees.

    Two runs with the same inputs and seed produce bit-identical models: a
    seed sequence is spawned per tree, covering both its bootstrap draw and
    its per-node feature subsets.  A constant target is flagged on the
    model; the trees degenerate to single leaves.
    """
    cfg = config or EnsembleConfig()
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if x.ndim != 2:
        raise ValueError("x must be a 2-d matrix")
    if len(x) != len(y):
        raise ValueError("x and y disagree on row count")
    if len(x) == 0:
        raise ValueError("cannot train on an empty matrix")
    if not (np.isfinite(x).all() and np.isfinite(y).all()):
        raise ValueError("training data must be finite")
    n, d = x.shape
    edges = _compute_edges(x, cfg.n_bins)
    codes = _bin(x, edges)
    constant = bool(np.ptp(y) == 0.0) if len(y) else True
    k = max(1, math.ceil(math.sqrt(d)))
    seeds = np.random.SeedSequence(cfg.seed).spawn(cfg.tree_count)
    sample_size = min(n, cfg.max_bootstrap_rows)
    trees = []
    for ss in seeds:
        rng = np.random.default_rng(ss)
        idx = rng.integers(0, n, size=sample_size)
        builder = _TreeBuilder(cfg.n_bins, cfg.max_depth, cfg.min_samples_split, k)
        trees.append(builder.fit(codes[idx], y[idx], rng))
    return EnsembleModel(
        config=cfg,
        feature_count=d,
        bin_edges=edges,
        trees=tuple(trees),
        constant_target=constant,
    )
