"""Categorical sampling kernels: compiled core with a pure-numpy fallback.

The backend is picked once at import: the compiled extension when it built
and imports cleanly, otherwise the numpy fallback. Setting the environment
variable ``RANKFREQ_PURE_PYTHON=1`` forces the fallback. Both backends
consume the uniform stream identically, so samples are bit-identical across
backends for the same seed (test_kernels verifies this; the benchmark in
benchmarks/bench_sampling.py compares their speed).
"""

from __future__ import annotations

import math
import os

import numpy as np

from . import _alias_py

try:
    from . import _alias_cy
except ImportError:
    _alias_cy = None

if os.environ.get("RANKFREQ_PURE_PYTHON", "").strip() not in ("", "0"):
    _default_impl, DEFAULT_BACKEND = _alias_py, "python"
elif _alias_cy is not None:
    _default_impl, DEFAULT_BACKEND = _alias_cy, "compiled"
else:
    _default_impl, DEFAULT_BACKEND = _alias_py, "python"

# Uniforms are drawn from the generator in fixed-size chunks; the chunk size
# is part of the stream contract and must not vary between backends.
_CHUNK = 1 << 20


def available_backends() -> tuple[str, ...]:
    return ("python", "compiled") if _alias_cy is not None else ("python",)


def _impl_for(backend):
    if backend is None:
        return _default_impl
    if backend == "python":
        return _alias_py
    if backend == "compiled":
        if _alias_cy is None:
            raise ValueError("compiled kernel backend is not built")
        return _alias_cy
    raise ValueError(f"unknown backend {backend!r}")


class AliasSampler:
    """Walker/Vose alias sampler over a fixed categorical distribution.

    Table construction is O(K); each draw costs two uniforms and O(1) work.
    """

    def __init__(self, probs, backend: str | None = None):
        probs = np.ascontiguousarray(probs, dtype=np.float64)
        if probs.ndim != 1 or probs.size == 0:
            raise ValueError("probs must be a non-empty 1-d array")
        if not np.all(np.isfinite(probs)) or np.any(probs < 0.0):
            raise ValueError("probs must be finite and non-negative")
        total = float(probs.sum())
        if not math.isclose(total, 1.0, rel_tol=0.0, abs_tol=1e-9):
            raise ValueError(f"probs must sum to 1 within 1e-9, got {total!r}")
        self._impl = _impl_for(backend)
        self.backend = "python" if self._impl is _alias_py else "compiled"
        self.n_categories = probs.shape[0]
        self._prob, self._alias = self._impl.build_tables(probs)

    def sample_counts(self, n: int, rng: np.random.Generator) -> np.ndarray:
        """Draw n tokens and return the per-category count vector (int64)."""
        if isinstance(n, bool) or not isinstance(n, int) or n < 0:
            raise ValueError(f"n must be a non-negative integer, got {n!r}")
        counts = np.zeros(self.n_categories, dtype=np.int64)
        remaining = n
        while remaining > 0:
            m = min(_CHUNK, remaining)
            u_cat = rng.random(m)
            u_mix = rng.random(m)
            self._impl.draw_into(self._prob, self._alias, u_cat, u_mix, counts)
            remaining -= m
        return counts
