"""Lloyd k-means over pluggable dissimilarities, with labelled-accuracy scoring.

The hybrid variant evaluates point-to-centroid dissimilarity with the
(simulated) swap test; assignment and centroid updates stay classical.
Centroids are updated as arithmetic means in the IQ plane and re-embedded
every iteration.

Determinism rules: ties in the assignment step go to the lowest centroid
index; empty clusters keep their previous centroid; shot sampling derives
one sub-seed per iteration from the metric's master seed.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, replace

import numpy as np
from scipy.optimize import linear_sum_assignment

from .distances import (
    DistanceMetric,
    Euclidean,
    QuantumAnalytic,
    QuantumSampled,
    pairwise_dissimilarity,
)
from .embedding import RescaledAngle, StandardAngle, dataset_rmax
from .seeding import derive_seed
from .signals import LabeledDataset, Synthetic, as_complex


@dataclass(frozen=True)
class ConstellationInit:
    """Start centroids at the alphabet's ideal symbols; cluster j means symbol j."""


@dataclass(frozen=True)
class KMeansPlusPlus:
    """Distance-squared seeding from the data; clusters carry no symbol semantics."""

    seed: int = 0


@dataclass(frozen=True)
class ExplicitInit:
    """Caller-provided start centroids, one per cluster index."""

    points: tuple[complex, ...]


Initializer = ConstellationInit | KMeansPlusPlus | ExplicitInit

SCORING_MODES = ("init", "hungarian")


@dataclass(frozen=True)
class KMeansConfig:
    """Engine configuration.

    ``scoring`` selects how clusters are matched to true symbols: "init"
    keeps the index semantics fixed by the initialization, "hungarian"
    matches clusters to symbols by maximum-weight assignment before
    scoring. k-means++ initialization always scores with matching because
    its cluster indices are arbitrary.
    """

    k: int
    metric: DistanceMetric = Euclidean()
    max_iterations: int = 5
    init: Initializer = ConstellationInit()
    convergence_epsilon: float = 0.0
    scoring: str = "init"

    def __post_init__(self) -> None:
        if self.k < 1:
            raise ValueError("k must be >= 1")
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be >= 1")
        if self.convergence_epsilon < 0:
            raise ValueError("convergence_epsilon must be >= 0")
        if self.scoring not in SCORING_MODES:
            raise ValueError(f"scoring must be one of {SCORING_MODES}")


@dataclass
class ClusteringOutcome:
    """Result of one k-means run plus its accuracy bookkeeping."""

    assignments: np.ndarray
    centroids: np.ndarray
    iterations_run: int
    accuracy: float
    confusion: np.ndarray
    history: list[np.ndarray]
    mapping: np.ndarray
    scoring: str
    config: dict

    def to_dict(self) -> dict:
        return {
            "assignments": self.assignments.tolist(),
            "centroids": [[c.real, c.imag] for c in self.centroids],
            "iterations_run": self.iterations_run,
            "accuracy": self.accuracy,
            "confusion": self.confusion.tolist(),
            "history": [[[c.real, c.imag] for c in snap] for snap in self.history],
            "cluster_to_symbol": self.mapping.tolist(),
            "scoring": self.scoring,
            "config": self.config,
        }

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)


def _metric_descriptor(metric: DistanceMetric) -> dict:
    if isinstance(metric, Euclidean):
        return {"variant": "euclidean"}
    kind = metric.kind
    kind_desc = (
        {"embedding": "standard_angle"}
        if isinstance(kind, StandardAngle)
        else {"embedding": "rescaled_angle", "r_max": kind.r_max}
    )
    if isinstance(metric, QuantumAnalytic):
        return {"variant": "quantum_analytic", **kind_desc}
    return {
        "variant": "quantum_sampled",
        **kind_desc,
        "shots": metric.policy.shots,
        "sampling_seed": metric.policy.seed,
    }


def _initial_centroids(data: LabeledDataset, config: KMeansConfig) -> np.ndarray:
    init = config.init
    if isinstance(init, ConstellationInit):
        cents = data.constellation.ideal_points()
    elif isinstance(init, ExplicitInit):
        cents = as_complex(init.points)
    else:
        cents = _kmeanspp_centroids(data.points, config.k, init.seed)
    if len(cents) != config.k:
        raise ValueError(f"initialization provides {len(cents)} centroids for k={config.k}")
    return cents.astype(np.complex128)


def _kmeanspp_centroids(points: np.ndarray, k: int, seed: int) -> np.ndarray:
    rng = np.random.default_rng(seed)
    chosen = [points[rng.integers(len(points))]]
    while len(chosen) < k:
        d2 = np.min(
            np.abs(points[:, None] - np.array(chosen)[None, :]) ** 2, axis=1
        )
        total = d2.sum()
        if total == 0:
            chosen.append(points[rng.integers(len(points))])
            continue
        chosen.append(points[rng.choice(len(points), p=d2 / total)])
    return np.array(chosen)


def _iteration_metric(
    metric: DistanceMetric, points: np.ndarray, centroids: np.ndarray
) -> DistanceMetric:
    # Rescaled embeddings refresh r_max from data plus current centroids so
    # centroid drift cannot leave the embedding domain.
    if isinstance(metric, (QuantumAnalytic, QuantumSampled)) and isinstance(
        metric.kind, RescaledAngle
    ):
        r_max = max(dataset_rmax(points), dataset_rmax(centroids))
        return replace(metric, kind=RescaledAngle(r_max))
    return metric


def run_kmeans(data: LabeledDataset, config: KMeansConfig) -> ClusteringOutcome:
    """Run Lloyd iteration until centroid movement <= epsilon or the cap."""
    points = data.points
    if len(points) == 0:
        raise ValueError("cannot cluster an empty dataset")
    centroids = _initial_centroids(data, config)
    history: list[np.ndarray] = []
    assignments = np.zeros(len(points), dtype=int)
    iterations_run = 0
    for iteration in range(config.max_iterations):
        metric = _iteration_metric(config.metric, points, centroids)
        rng = None
        if isinstance(metric, QuantumSampled):
            rng = np.random.default_rng(derive_seed(metric.policy.seed, iteration))
        dist = pairwise_dissimilarity(points, centroids, metric, rng)
        assignments = dist.argmin(axis=1)
        new_centroids = centroids.copy()
        for j in range(config.k):
            members = assignments == j
            if members.any():
                new_centroids[j] = points[members].mean()
        movement = float(np.abs(new_centroids - centroids).max())
        centroids = new_centroids
        history.append(centroids.copy())
        iterations_run = iteration + 1
        if movement <= config.convergence_epsilon:
            break
    scoring = "hungarian" if isinstance(config.init, KMeansPlusPlus) else config.scoring
    accuracy, confusion, mapping = score(
        assignments, data.labels, config.k, scoring=scoring
    )
    echo = {
        "k": config.k,
        "metric": _metric_descriptor(config.metric),
        "max_iterations": config.max_iterations,
        "init": type(config.init).__name__,
        "convergence_epsilon": config.convergence_epsilon,
        "scoring": scoring,
        "seeds": _collect_seeds(data, config),
    }
    return ClusteringOutcome(
        assignments=assignments,
        centroids=centroids,
        iterations_run=iterations_run,
        accuracy=accuracy,
        confusion=confusion,
        history=history,
        mapping=mapping,
        scoring=scoring,
        config=echo,
    )


def _collect_seeds(data: LabeledDataset, config: KMeansConfig) -> dict:
    seeds: dict[str, int] = {}
    if isinstance(data.provenance, Synthetic):
        seeds["channel"] = data.provenance.params.seed
    if isinstance(config.metric, QuantumSampled):
        seeds["sampling"] = config.metric.policy.seed
    if isinstance(config.init, KMeansPlusPlus):
        seeds["init"] = config.init.seed
    return seeds


def score(
    assignments, labels, k: int, scoring: str = "init"
) -> tuple[float, np.ndarray, np.ndarray]:
    """Accuracy, confusion matrix, and the cluster-to-symbol mapping used.

    The confusion matrix has true symbols on rows and mapped clusters on
    columns, so correct decisions sit on the diagonal and
    accuracy == trace / total.
    """
    assignments = np.asarray(assignments, dtype=int)
    labels = np.asarray(labels, dtype=int)
    if len(assignments) != len(labels):
        raise ValueError("assignments and labels must have the same length")
    if len(labels) == 0:
        raise ValueError("cannot score an empty assignment")
    if labels.max() >= k or assignments.max() >= k:
        raise ValueError("cluster or label index out of range")
    raw = np.zeros((k, k), dtype=int)
    np.add.at(raw, (labels, assignments), 1)
    if scoring == "hungarian":
        symbol_idx, cluster_idx = linear_sum_assignment(-raw)
        mapping = np.empty(k, dtype=int)
        mapping[cluster_idx] = symbol_idx
    elif scoring == "init":
        mapping = np.arange(k)
    else:
        raise ValueError(f"scoring must be one of {SCORING_MODES}")
    confusion = np.zeros_like(raw)
    confusion[:, mapping] = raw
    accuracy = float(np.trace(confusion) / len(labels))
    return accuracy, confusion, mapping
