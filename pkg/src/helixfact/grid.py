"""Sampled fields, mode unfolding and helical (vectorizing) coordinate maps.

A :class:`Field` stores its samples as an ``ndarray`` of shape ``dims``.  Its
*canonical linear layout* is first-axis-fastest (Fortran order), so that the
column-wise helix ``p = m + M n`` of a 2-D field is exactly ``field.data``.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Sequence

import numpy as np

from .exceptions import RangeError, ShapeError

__all__ = [
    "Field",
    "HelicalOrder",
    "HelicalVector",
    "as_field",
    "helical_index",
    "helical_map",
    "helical_unmap",
    "unfold",
]

MAX_NDIM = 3


def _readonly(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=np.float64, copy=True)
    a.flags.writeable = False
    return a


@dataclass(frozen=True, eq=False)
class Field:
    """Real samples on a regular d-dimensional grid (d in {1, 2, 3}).

    Parameters
    ----------
    values : array_like
        Samples indexed ``values[i0, i1, ...]``; ``values.shape`` gives the dims.
    steps : sequence of float, optional
        Sampling period of each axis (e.g. metres, seconds).  Defaults to 1.0.
    """

    values: np.ndarray
    steps: tuple = dc_field(default=None)

    def __post_init__(self):
        values = np.asarray(self.values)
        if np.iscomplexobj(values):
            raise ShapeError("Field samples must be real")
        values = _readonly(values)
        if not 1 <= values.ndim <= MAX_NDIM:
            raise ShapeError(f"Field must have 1 to {MAX_NDIM} axes, got {values.ndim}")
        if values.size == 0:
            raise ShapeError(f"every axis length must be positive, got {values.shape}")
        steps = (1.0,) * values.ndim if self.steps is None else tuple(float(s) for s in self.steps)
        if len(steps) != values.ndim:
            raise ShapeError(f"{len(steps)} steps given for {values.ndim} axes")
        if not all(s > 0 and np.isfinite(s) for s in steps):
            raise ShapeError(f"steps must be positive and finite, got {steps}")
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "steps", steps)

    @classmethod
    def from_canonical(cls, data, dims: Sequence[int], steps=None) -> "Field":
        """Build a field from samples in canonical (first-axis-fastest) layout."""
        data = np.asarray(data, dtype=np.float64).ravel()
        dims = tuple(int(n) for n in dims)
        if any(n <= 0 for n in dims):
            raise ShapeError(f"every axis length must be positive, got {dims}")
        if data.size != int(np.prod(dims, dtype=np.int64)):
            raise ShapeError(f"{data.size} samples do not fill dims {dims}")
        return cls(data.reshape(dims, order="F"), steps)

    @property
    def dims(self) -> tuple:
        return self.values.shape

    @property
    def ndim(self) -> int:
        return self.values.ndim

    @property
    def size(self) -> int:
        return self.values.size

    @property
    def data(self) -> np.ndarray:
        """Samples in canonical layout (first axis fastest)."""
        return self.values.ravel(order="F")

    def energy(self) -> float:
        return float(np.sum(self.values**2))

    def with_values(self, values) -> "Field":
        """New field on the same grid with different samples."""
        values = np.asarray(values)
        if values.shape != self.dims:
            raise ShapeError(f"expected shape {self.dims}, got {values.shape}")
        return Field(values, self.steps)

    def __eq__(self, other):
        if not isinstance(other, Field):
            return NotImplemented
        return self.steps == other.steps and np.array_equal(self.values, other.values)

    __hash__ = None

    def __repr__(self):
        return f"Field(dims={self.dims}, steps={self.steps})"


def as_field(x) -> Field:
    """Coerce a :class:`Field` or array-like into a :class:`Field`."""
    if isinstance(x, Field):
        return x
    return Field(np.asarray(x, dtype=np.float64))


@dataclass(frozen=True)
class HelicalOrder:
    """Axis traversal order of a helix, listed fastest to slowest.

    The last axis is the unbounded (time-like) one.  ``HelicalOrder((0, 1))``
    is the column-wise map ``p = m + M n``; ``HelicalOrder((1, 0))`` is the
    row-wise map ``p = N m + n``.
    """

    axis_order: tuple

    def __post_init__(self):
        order = tuple(int(a) for a in self.axis_order)
        if sorted(order) != list(range(len(order))):
            raise ShapeError(f"axis_order {order} is not a permutation of 0..{len(order) - 1}")
        object.__setattr__(self, "axis_order", order)

    @classmethod
    def column_wise(cls, ndim: int) -> "HelicalOrder":
        return cls(tuple(range(ndim)))

    @classmethod
    def row_wise(cls, ndim: int) -> "HelicalOrder":
        return cls(tuple(reversed(range(ndim))))

    @property
    def ndim(self) -> int:
        return len(self.axis_order)

    @property
    def slow_axis(self) -> int:
        return self.axis_order[-1]


def _resolve_order(order, ndim: int) -> HelicalOrder:
    if order is None:
        return HelicalOrder.column_wise(ndim)
    if not isinstance(order, HelicalOrder):
        order = HelicalOrder(order)
    if order.ndim != ndim:
        raise ShapeError(f"order {order.axis_order} does not match {ndim} axes")
    return order


@dataclass(frozen=True, eq=False)
class HelicalVector:
    """1-D helix of a field plus what is needed to invert the map."""

    data: np.ndarray
    dims: tuple
    order: HelicalOrder
    steps: tuple = None

    def __post_init__(self):
        data = _readonly(np.asarray(self.data).ravel())
        dims = tuple(int(n) for n in self.dims)
        if data.size != int(np.prod(dims, dtype=np.int64)):
            raise ShapeError(f"helix of length {data.size} does not match dims {dims}")
        object.__setattr__(self, "data", data)
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "order", _resolve_order(self.order, len(dims)))


def helical_index(multi_index: Sequence[int], dims: Sequence[int], order=None) -> int:
    """Mixed-radix linear index of ``multi_index`` along the helix.

    >>> helical_index((2, 1), (4, 3))
    6
    >>> helical_index((1, 2, 3), (2, 4, 5))
    29
    """
    dims = tuple(int(n) for n in dims)
    if len(multi_index) != len(dims):
        raise ShapeError(f"index {tuple(multi_index)} has wrong arity for dims {dims}")
    for i, n in zip(multi_index, dims):
        if not 0 <= i < n:
            raise RangeError(f"index {tuple(multi_index)} out of range for dims {dims}")
    order = _resolve_order(order, len(dims))
    p = 0
    for ax in reversed(order.axis_order):
        p = p * dims[ax] + int(multi_index[ax])
    return p


def helical_map(f, order=None) -> HelicalVector:
    """Vectorize a field along the helix given by ``order``."""
    f = as_field(f)
    order = _resolve_order(order, f.ndim)
    data = np.transpose(f.values, order.axis_order).ravel(order="F")
    return HelicalVector(data, f.dims, order, f.steps)


def helical_unmap(v: HelicalVector) -> Field:
    """Exact inverse of :func:`helical_map`."""
    order = v.order.axis_order
    permuted = tuple(v.dims[ax] for ax in order)
    values = v.data.reshape(permuted, order="F")
    return Field(np.transpose(values, np.argsort(order)), v.steps)


def unfold(f, mode: int) -> np.ndarray:
    """Mode-``mode`` unfolding: the mode fibers arranged as matrix columns.

    Columns are ordered with the remaining axes in canonical order (lowest
    axis fastest).
    """
    f = as_field(f)
    if not 0 <= mode < f.ndim:
        raise RangeError(f"mode {mode} out of range for a {f.ndim}-axis field")
    moved = np.moveaxis(f.values, mode, 0)
    return moved.reshape(f.dims[mode], -1, order="F")
