"""Shared input checks.

Small helpers so the estimator entry points validate consistently and
raise the package error types instead of bare asserts.
"""

import numpy as np

from .exceptions import DegenerateSpectrumError, InvalidInputError


def as_float_vector(values, name="values"):
    arr = np.asarray(values, dtype=float)
    if arr.ndim != 1:
        raise InvalidInputError(f"{name} must be one-dimensional, got shape {arr.shape}")
    if arr.size == 0:
        raise InvalidInputError(f"{name} must be non-empty")
    if not np.all(np.isfinite(arr)):
        raise InvalidInputError(f"{name} must be finite")
    return arr


def check_descending(arr, name="values", strict=False):
    diffs = np.diff(arr)
    bad = np.where(diffs >= 0)[0] if strict else np.where(diffs > 0)[0]
    if bad.size:
        i = int(bad[0])
        raise InvalidInputError(
            f"{name} must be sorted in descending order: "
            f"position {i + 1} has {arr[i + 1]!r} after {arr[i]!r}"
        )
    return arr


def check_positive_scalar(value, name):
    if not np.isfinite(value) or value <= 0:
        raise InvalidInputError(f"{name} must be a positive finite number, got {value!r}")
    return float(value)


def check_index_range(k, lo, hi, name="k"):
    if not isinstance(k, (int, np.integer)):
        raise InvalidInputError(f"{name} must be an integer, got {type(k).__name__}")
    if not lo <= k <= hi:
        raise InvalidInputError(f"{name} must satisfy {lo} <= {name} <= {hi}, got {k}")
    return int(k)


def check_all_positive(arr, name="eigenvalues"):
    if np.any(arr <= 0):
        i = int(np.argmax(arr <= 0))
        raise DegenerateSpectrumError(f"{name} must be strictly positive, got {arr[i]!r} at position {i}")
    return arr
