from app.service.preprocess_service import standardize, standardize_columns
from app.service.split_service import TrainingSets, build_training_sets, cyclic_permute, split_indices
from app.service.test_service import cpc_test, run_cpc, score_evaluation
from app.service.baseline_service import dcor_test, distance_correlation, permutation_pvalue

__all__ = [
    "standardize",
    "standardize_columns",
    "TrainingSets",
    "build_training_sets",
    "cyclic_permute",
    "split_indices",
    "cpc_test",
    "run_cpc",
    "score_evaluation",
    "dcor_test",
    "distance_correlation",
    "permutation_pvalue",
]
