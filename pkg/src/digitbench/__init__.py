"""digitbench: an interactive digit-recognition workbench.

Draw 12x8 binary digit patterns, train a small backpropagation network on
them in real time, inspect class probabilities, view pattern sets in a 2D
PCA space, and evaluate saved models against shared test sets.
"""

from .errors import (
    DigitBenchError,
    IdxFormatError,
    InvalidInputError,
    ModelFormatError,
    PatternFormatError,
    TrainingDivergedError,
)
from .estimators import DigitClassifier, PlanarPCA
from .evaluator import EvalReport, evaluate
from .ingest import ConversionConfig, GrayImage, convert_dataset, read_idx_dataset, to_two_tone
from .network import (
    Network,
    NetworkTopology,
    TrainConfig,
    TrainReport,
    classify,
    forward,
    init_network,
    load_model,
    mse_loss,
    predict_proba,
    save_model,
    softmax,
    train,
    train_epoch,
)
from .patterns import (
    DigitPattern,
    PatternSet,
    dedup,
    load_patterns,
    preprocess,
    save_patterns,
    toggle_cell,
)
from .projection import Projection, build_features, pca_project

__version__ = "0.1.0"

__all__ = [
    "ConversionConfig",
    "DigitBenchError",
    "DigitClassifier",
    "DigitPattern",
    "EvalReport",
    "GrayImage",
    "IdxFormatError",
    "InvalidInputError",
    "ModelFormatError",
    "Network",
    "NetworkTopology",
    "PatternFormatError",
    "PatternSet",
    "PlanarPCA",
    "Projection",
    "TrainConfig",
    "TrainReport",
    "TrainingDivergedError",
    "classify",
    "convert_dataset",
    "dedup",
    "evaluate",
    "forward",
    "init_network",
    "load_model",
    "load_patterns",
    "mse_loss",
    "pca_project",
    "build_features",
    "predict_proba",
    "preprocess",
    "read_idx_dataset",
    "save_model",
    "save_patterns",
    "softmax",
    "to_two_tone",
    "toggle_cell",
    "train",
    "train_epoch",
]
