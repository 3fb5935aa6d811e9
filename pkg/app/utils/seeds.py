"""
Deterministic 64-bit seed derivation.

derive(master, k1, k2, ...) folds each key into the state with
    state = splitmix64(state ^ splitmix64(key))
where integer keys are taken mod 2**64 and string keys are first hashed
with 64-bit FNV-1a. splitmix64 is the finalizer of Steele, Lea and Flood:
    z += 0x9E3779B97F4A7C15
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB
    z ^= z >> 31
all arithmetic mod 2**64. Any language with 64-bit unsigned integers
reproduces the same streams.
"""
from typing import Union

MASK64 = (1 << 64) - 1
_FNV_OFFSET = 0xCBF29CE484222325
_FNV_PRIME = 0x100000001B3

SeedKey = Union[int, str]


def splitmix64(z: int) -> int:
    z = (z + 0x9E3779B97F4A7C15) & MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def fnv1a64(text: str) -> int:
    h = _FNV_OFFSET
    for byte in text.encode("utf-8"):
        h ^= byte
        h = (h * _FNV_PRIME) & MASK64
    return h


def derive(master: int, *keys: SeedKey) -> int:
    """Derive a child seed from a master seed and an ordered key path."""
    state = master & MASK64
    for key in keys:
        k = fnv1a64(key) if isinstance(key, str) else key & MASK64
        state = splitmix64(state ^ splitmix64(k))
    return state
