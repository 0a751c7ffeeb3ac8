"""Deterministic seed derivation for parallel Monte Carlo.

Per-task seeds come from the splitmix64 finalizer applied to
master + (index + 1) * golden-ratio increment, so serial and parallel
runs see identical streams regardless of execution order.
"""

_MASK = (1 << 64) - 1


def _splitmix64(x: int) -> int:
    x &= _MASK
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9 & _MASK
    x = (x ^ (x >> 27)) * 0x94D049BB133111EB & _MASK
    return x ^ (x >> 31)


def derive_seed(master_seed: int, index: int) -> int:
    """64-bit seed for subtask `index` of a run keyed by `master_seed`."""
    return _splitmix64(master_seed + (index + 1) * 0x9E3779B97F4A7C15)
