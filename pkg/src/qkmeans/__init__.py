"""Hybrid quantum-classical k-means for noisy M-QAM signals.

Pipeline: synthetic (or ingested) IQ datasets -> single-qubit angle
embedding -> swap-test overlap estimation with shot noise -> trigonometric
distance loss -> Lloyd k-means, benchmarked against classical Euclidean
k-means.
"""

from .bench import (
    CompareRow,
    GateTimeModel,
    LAUNCH_POWER_PRESETS,
    SweepRow,
    SweepSpec,
    aggregate_compare,
    compare_table,
    estimate_qpu_time,
    noise_grid,
    replay_row,
    run_sweep,
    summarize,
)
from .clustering import (
    ClusteringOutcome,
    ConstellationInit,
    ExplicitInit,
    KMeansConfig,
    KMeansPlusPlus,
    run_kmeans,
    score,
)
from .distances import (
    DistanceMetric,
    Euclidean,
    QuantumAnalytic,
    QuantumSampled,
    dissimilarity,
    dlf_origin_closed_form,
    pairwise_dissimilarity,
)
from .embedding import (
    EmbeddedPoint,
    EmbeddingKind,
    QubitState,
    RescaledAngle,
    StandardAngle,
    dataset_rmax,
    embed,
    prepare_state,
)
from .signals import (
    ChannelParams,
    ConstellationSpec,
    IQPoint,
    Ingested,
    LabeledDataset,
    Synthetic,
    apply_channel,
    dbm_to_watts,
    generate_dataset,
    ideal_constellation,
    ingest_dataset,
    save_dataset,
)
from .swaptest import (
    ShotPolicy,
    SwapTestOutcome,
    estimator_variance,
    overlap,
    swap_test_exact,
    swap_test_sampled,
    swap_test_state,
)

__version__ = "0.1.0"

__all__ = [
    "ChannelParams",
    "ClusteringOutcome",
    "CompareRow",
    "ConstellationInit",
    "ConstellationSpec",
    "DistanceMetric",
    "EmbeddedPoint",
    "EmbeddingKind",
    "Euclidean",
    "ExplicitInit",
    "GateTimeModel",
    "IQPoint",
    "Ingested",
    "KMeansConfig",
    "KMeansPlusPlus",
    "LAUNCH_POWER_PRESETS",
    "LabeledDataset",
    "QuantumAnalytic",
    "QuantumSampled",
    "QubitState",
    "RescaledAngle",
    "ShotPolicy",
    "StandardAngle",
    "SwapTestOutcome",
    "SweepRow",
    "SweepSpec",
    "Synthetic",
    "aggregate_compare",
    "apply_channel",
    "compare_table",
    "dataset_rmax",
    "dbm_to_watts",
    "dissimilarity",
    "dlf_origin_closed_form",
    "embed",
    "estimate_qpu_time",
    "estimator_variance",
    "generate_dataset",
    "ideal_constellation",
    "ingest_dataset",
    "noise_grid",
    "overlap",
    "pairwise_dissimilarity",
    "prepare_state",
    "replay_row",
    "run_kmeans",
    "run_sweep",
    "save_dataset",
    "score",
    "summarize",
    "swap_test_exact",
    "swap_test_sampled",
    "swap_test_state",
]
