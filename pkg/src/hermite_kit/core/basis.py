"""Multi-indices, truncated bases and coefficient vectors."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import comb

import numpy as np


@dataclass(frozen=True, order=False)
class MultiIndex:
    """A multi-index ``xi`` in ``N_0^n``.

    Ordering is by total degree with a lexicographic tie-break.
    """

    entries: tuple

    def __post_init__(self):
        ent = tuple(int(e) for e in self.entries)
        if any(e < 0 for e in ent):
            raise ValueError(f"negative entry in multi-index {ent}")
        object.__setattr__(self, "entries", ent)

    @property
    def dimension(self):
        return len(self.entries)

    @property
    def order(self):
        return sum(self.entries)

    @property
    def eigenvalue(self):
        return 2 * self.order + self.dimension

    def _key(self):
        return (self.order, self.entries)

    def __lt__(self, other):
        return self._key() < other._key()

    def __le__(self, other):
        return self._key() <= other._key()

    def __gt__(self, other):
        return self._key() > other._key()

    def __ge__(self, other):
        return self._key() >= other._key()


@lru_cache(maxsize=64)
def _enumerate(n, K):
    if n == 1:
        return np.arange(K + 1).reshape(-1, 1)
    rows = []
    for d in range(K + 1):
        rows.extend(_compositions(n, d))
    return np.array(rows, dtype=np.int64).reshape(-1, n)


def _compositions(n, d):
    """All n-tuples of non-negative ints summing to d, ascending lex order."""
    if n == 1:
        return [(d,)]
    out = []
    for first in range(d + 1):
        for rest in _compositions(n - 1, d - first):
            out.append((first,) + rest)
    return out


@dataclass(frozen=True)
class BasisSpec:
    """Truncated Hermite basis ``{h_xi : |xi| <= K}`` in dimension ``n``.

    Indices are enumerated in graded lexicographic order, so that each
    total-degree block is a contiguous slice.

    Parameters
    ----------
    dimension : int
    degree : int
        Maximal total degree ``K``.
    """

    dimension: int
    degree: int
    _lookup: dict = field(default=None, repr=False, compare=False, hash=False)

    def __post_init__(self):
        if self.dimension < 1:
            raise ValueError("dimension must be at least 1")
        if self.degree < 0:
            raise ValueError("degree must be non-negative")

    @property
    def count(self):
        return comb(self.degree + self.dimension, self.dimension)

    @property
    def indices(self):
        """Integer array of shape ``(count, n)``."""
        return _enumerate(self.dimension, self.degree)

    @property
    def orders(self):
        return self.indices.sum(axis=1)

    @property
    def eigenvalues(self):
        return 2.0 * self.orders + self.dimension

    def block(self, d):
        """Slice of positions holding indices of total degree ``d``."""
        n = self.dimension
        start = comb(d - 1 + n, n) if d > 0 else 0
        return slice(start, comb(d + n, n))

    def multi_index(self, pos):
        return MultiIndex(tuple(self.indices[pos]))

    def position(self, xi):
        """Enumeration position of ``xi``; ``KeyError`` if outside the basis."""
        pos = self.positions(np.asarray(getattr(xi, "entries", xi)).reshape(1, -1))[0]
        if pos < 0:
            raise KeyError(f"{tuple(getattr(xi, 'entries', xi))} not in basis of degree {self.degree}")
        return int(pos)

    def positions(self, idx):
        """Vectorized positions of an ``(m, n)`` index array; -1 where absent."""
        idx = np.asarray(idx, dtype=np.int64)
        valid = (idx >= 0).all(axis=1) & (idx.sum(axis=1) <= self.degree)
        if self.dimension == 1:
            return np.where(valid, idx[:, 0], -1)
        out = np.full(idx.shape[0], -1, dtype=np.int64)
        out[valid] = _rank(idx[valid], self.dimension)
        return out


def _rank(idx, n):
    """Graded-lex rank of each row of ``idx`` (all rows valid)."""
    d = idx.sum(axis=1)
    # number of indices of total degree < d
    rank = np.array([comb(int(v) - 1 + n, n) if v > 0 else 0 for v in d], dtype=np.int64)
    rem = d.copy()
    for i in range(n - 1):
        k = n - i  # variables left, including the current one
        a = idx[:, i]
        # tuples with current entry b < a: sum_{b<a} C(rem-b + k-2, k-2)
        # = C(rem + k-1, k-1) - C(rem - a + k-1, k-1)
        rank += np.array(
            [comb(int(r) + k - 1, k - 1) - comb(int(r - ai) + k - 1, k - 1) for r, ai in zip(rem, a)],
            dtype=np.int64,
        )
        rem = rem - a
    return rank


@dataclass(frozen=True)
class CoefVec:
    """Finite Hermite coefficient vector aligned with a :class:`BasisSpec`."""

    basis: BasisSpec
    values: np.ndarray

    def __post_init__(self):
        vals = np.asarray(self.values)
        if vals.dtype.kind not in "fc":
            vals = vals.astype(float)
        if vals.shape != (self.basis.count,):
            raise ValueError(f"expected {self.basis.count} coefficients, got shape {vals.shape}")
        vals = vals.copy()
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)

    @classmethod
    def zeros(cls, basis, dtype=float):
        return cls(basis, np.zeros(basis.count, dtype=dtype))

    @classmethod
    def unit(cls, basis, xi):
        v = np.zeros(basis.count)
        v[basis.position(xi)] = 1.0
        return cls(basis, v)

    @property
    def dimension(self):
        return self.basis.dimension

    def norm(self):
        return float(np.sqrt(np.sum(np.abs(self.values) ** 2)))

    def inner(self, other):
        """``sum_xi c_xi conj(d_xi)`` after aligning both to a common basis."""
        K = max(self.basis.degree, other.basis.degree)
        a = reindex(self, K).values
        b = reindex(other, K).values
        return complex(np.sum(a * np.conj(b))) if (np.iscomplexobj(a) or np.iscomplexobj(b)) else float(a @ b)

    def __add__(self, other):
        K = max(self.basis.degree, other.basis.degree)
        return CoefVec(BasisSpec(self.dimension, K), reindex(self, K).values + reindex(other, K).values)

    def __sub__(self, other):
        return self + (-1.0) * other

    def __mul__(self, scalar):
        return CoefVec(self.basis, self.values * scalar)

    __rmul__ = __mul__


def reindex(c, degree):
    """Embed or truncate ``c`` into the basis of total degree ``degree``."""
    if degree == c.basis.degree:
        return c
    new = BasisSpec(c.basis.dimension, degree)
    if degree > c.basis.degree:
        vals = np.zeros(new.count, dtype=c.values.dtype)
        vals[: c.basis.count] = c.values
    else:
        vals = c.values[: new.count]
    return CoefVec(new, vals)
