from app.ingest.csv_loader import load_paired_csv, write_paired_csv
from app.ingest.sparse_market import load_sparse_market, read_triplet_matrix

__all__ = [
    "load_paired_csv",
    "write_paired_csv",
    "load_sparse_market",
    "read_triplet_matrix",
]
