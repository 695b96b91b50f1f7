"""Reproducible random streams built on the Philox counter-based generator.

Every stochastic step in the package draws from a stream derived from a
master seed and a short path of small integers (repetition, walker,
evaluation, ...).  The 128-bit Philox4x64 key is::

    key = (master_seed, path[0]<<48 | path[1]<<32 | path[2]<<16 | path[3])

so a run manifest (seed + path semantics) pins every stream exactly, in any
runtime with a Philox implementation.
"""

from __future__ import annotations

import numpy as np

from .errors import InvalidInputError

_PATH_BITS = 16
_MAX_COMPONENT = (1 << _PATH_BITS) - 1
_MAX_DEPTH = 4


def pack_path(*path: int) -> int:
    """Pack up to four small integers into one 64-bit word, first component highest."""
    if len(path) > _MAX_DEPTH:
        raise InvalidInputError(f"stream path supports at most {_MAX_DEPTH} components")
    word = 0
    for k in range(_MAX_DEPTH):
        component = path[k] if k < len(path) else 0
        if not 0 <= component <= _MAX_COMPONENT:
            raise InvalidInputError(
                f"stream path component {component} outside [0, {_MAX_COMPONENT}]"
            )
        word = (word << _PATH_BITS) | component
    return word


def stream(master_seed: int, *path: int) -> np.random.Generator:
    """Generator for the substream of ``master_seed`` addressed by ``path``."""
    if not 0 <= int(master_seed) < 2**64:
        raise InvalidInputError("master seed must fit in 64 bits")
    key = np.array([master_seed, pack_path(*path)], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))
