"""
Application settings.
Defaults for every tunable; override with CPC_* environment variables or a .env file.
"""
from pydantic_settings import BaseSettings


class Settings(BaseSettings):
    # Reproducibility
    DEFAULT_SEED: int = 42
    JOBS: int = 1

    # Test pipeline
    MIN_SAMPLE_SIZE: int = 8
    SCORE_EPS: float = 1e-7
    VARIANCE_FLOOR: float = 1e-4
    STANDARDIZE: bool = True

    # Classifier defaults
    DEFAULT_CLASSIFIER: str = "mlp"
    MLP_HIDDEN_FACTOR: int = 2  # hidden nodes = factor * (d1 + d2)
    MLP_HIDDEN_CAP: int = 256
    MLP_L1_PENALTY: float = 1e-4
    MLP_DROPOUT: float = 0.1
    MLP_EPOCHS: int = 50
    MLP_BATCH_SIZE: int = 64
    MLP_STEP_SIZE: float = 1e-3
    MLP_OPTIMIZER: str = "adam"
    LOGISTIC_LAMBDA: float = 1e-3
    LOGISTIC_MAX_ITER: int = 500
    LOGISTIC_TOL: float = 1e-8

    # Basis expansion / penalized quadratic
    BASIS_S1: int = 1
    BASIS_K: int = 3
    BASIS_DIMENSION_CAP: int = 200_000
    QUAD_TOL: float = 1e-8
    QUAD_MAX_SWEEPS: int = 5_000

    # Baselines
    DCOR_PERMUTATIONS: int = 200

    # Optional
    PROJECT_NAME: str = "CPC Independence Test"
    LOG_LEVEL: str = "INFO"

    def default_hidden(self, d1: int, d2: int) -> int:
        return max(1, min(self.MLP_HIDDEN_FACTOR * (d1 + d2), self.MLP_HIDDEN_CAP))

    class Config:
        env_file = ".env"
        env_prefix = "CPC_"
        extra = "ignore"


settings = Settings()
