"""Deterministic seed derivation for independent random streams.

Trial-level reproducibility must not depend on execution order, so every
stream seed is derived by mixing a tuple of integers (master seed, point
index, trial index, ...) through splitmix64.  The same tuple always yields
the same seed, on any platform.
"""

from __future__ import annotations

_MASK64 = (1 << 64) - 1


def splitmix64(x: int) -> int:
    x = (x + 0x9E3779B97F4A7C15) & _MASK64
    z = x
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


def derive_seed(*parts: int) -> int:
    """Fold integer parts into one 64-bit stream seed."""
    x = 0x243F6A8885A308D3
    for p in parts:
        x = splitmix64(x ^ (p & _MASK64))
    return x
