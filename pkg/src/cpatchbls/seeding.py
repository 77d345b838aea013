"""Deterministic 64-bit seed derivation for independent fit tasks.

Every (patch-size, branch, channel) combination gets its own RNG seed,
derived only from the master seed and the task's indices. Execution order
and worker count therefore never influence results: a task computes the
same thing whether it runs first, last, or concurrently with others.

The mixing function folds each index into the running state with a
splitmix64 step, so ``mix64(mix64(a, b), c) == mix64(a, b, c)``.
"""

_MASK64 = (1 << 64) - 1

BRANCH_BASIC = 0
BRANCH_SKP = 1


def _splitmix64(value: int) -> int:
    value = (value + 0x9E3779B97F4A7C15) & _MASK64
    z = value
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return (z ^ (z >> 31)) & _MASK64


def mix64(seed: int, *parts: int) -> int:
    """Fold integer parts into a 64-bit seed, one splitmix64 step per part."""
    state = seed & _MASK64
    for part in parts:
        state = _splitmix64(state ^ _splitmix64(part & _MASK64))
    return state


def scale_seed(master_seed: int, scale_index: int) -> int:
    """Seed for one patch-size sub-model."""
    return mix64(master_seed, scale_index)


def branch_channel_seed(scale_level_seed: int, branch_id: int, channel_index: int) -> int:
    """Seed for one (branch, channel) fit within a patch-size sub-model."""
    return mix64(scale_level_seed, branch_id, channel_index)
