"""
Named random streams derived from one root seed.

Each stream is seeded from SeedSequence([root, crc32(name), *indices]), so
draws from one stream never perturb another and adding a stream leaves the
existing ones unchanged.
"""

import zlib

import numpy as np

GOAL = "goal"
NOISE = "noise"
TEMPLATE = "template"
EVAL = "eval"
MATRIX = "matrix"


def explore_stream(role: str) -> str:
    return f"explore-{role}"


def stream_key(name: str) -> int:
    return zlib.crc32(name.encode("utf-8"))


def derive_seed_sequence(root_seed: int, name: str, *indices: int) -> np.random.SeedSequence:
    return np.random.SeedSequence([int(root_seed), stream_key(name), *(int(i) for i in indices)])


def derive_rng(root_seed: int, name: str, *indices: int) -> np.random.Generator:
    return np.random.default_rng(derive_seed_sequence(root_seed, name, *indices))


def derive_seed(root_seed: int, name: str, *indices: int) -> int:
    """Integer seed for components that take a plain seed (e.g. repetition roots)."""
    return int(derive_seed_sequence(root_seed, name, *indices).generate_state(1, np.uint32)[0])
