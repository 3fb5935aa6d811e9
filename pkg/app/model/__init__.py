from app.model.evaluation import ScoredEvaluation
from app.model.sample import PairedSample, SparseColumnMatrix, SparsePairedView, StandardizationStats
from app.model.split import CyclicPairing, SplitPlan

__all__ = [
    "PairedSample",
    "SparseColumnMatrix",
    "SparsePairedView",
    "StandardizationStats",
    "CyclicPairing",
    "SplitPlan",
    "ScoredEvaluation",
]
