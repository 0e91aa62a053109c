"""Linear algebra over GF(3).

Vectors and matrices are plain numpy arrays of dtype ``uint8`` holding values
in {0, 1, 2}. Every nonzero element is its own inverse (1*1 = 2*2 = 1 mod 3),
so pivot scaling is a multiplication by the pivot itself.

Symplectic vectors are flat arrays ``(u | v)`` of length ``2n``; the
:class:`SymplecticVector` wrapper exists for callers that prefer named parts.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .errors import InvalidInputError

P = 3
DTYPE = np.uint8


def asmatrix(m) -> np.ndarray:
    """Coerce ``m`` to a 2-D uint8 array reduced mod 3."""
    a = np.asarray(m, dtype=np.int64)
    if a.ndim == 1:
        a = a.reshape(1, -1)
    if a.ndim != 2:
        raise InvalidInputError(f"expected a matrix, got shape {a.shape}")
    return np.mod(a, P).astype(DTYPE)


def asvector(v) -> np.ndarray:
    a = np.asarray(v, dtype=np.int64).ravel()
    return np.mod(a, P).astype(DTYPE)


@dataclass(frozen=True)
class SymplecticVector:
    u: tuple[int, ...]
    v: tuple[int, ...]

    def __post_init__(self):
        if len(self.u) != len(self.v):
            raise InvalidInputError("u and v parts must have equal length")

    @classmethod
    def from_flat(cls, flat) -> SymplecticVector:
        a = asvector(flat)
        if a.size % 2:
            raise InvalidInputError("flat symplectic vector must have even length")
        n = a.size // 2
        return cls(tuple(int(x) for x in a[:n]), tuple(int(x) for x in a[n:]))

    @property
    def n(self) -> int:
        return len(self.u)

    @property
    def flat(self) -> np.ndarray:
        return asvector(self.u + self.v)

    def __str__(self):
        return "".join(map(str, self.u)) + "|" + "".join(map(str, self.v))


def _flat(a) -> np.ndarray:
    if isinstance(a, SymplecticVector):
        return a.flat
    return asvector(a)


def rref(m) -> tuple[np.ndarray, int]:
    """Reduced row echelon form over GF(3) and the rank.

    The returned matrix has the same shape as ``m``; zero rows sit at the
    bottom.
    """
    a = asmatrix(m).astype(np.int64)
    rows, cols = a.shape
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + nz[0]
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        a[r] = (a[r] * a[r, c]) % P
        col = a[:, c].copy()
        col[r] = 0
        hit = np.nonzero(col)[0]
        if hit.size:
            a[hit] = (a[hit] - np.outer(col[hit], a[r])) % P
        r += 1
    return a.astype(DTYPE), r


def rank(m) -> int:
    a = asmatrix(m)
    if a.size == 0:
        return 0
    return rref(a)[1]


def pivots(reduced: np.ndarray, rk: int) -> list[int]:
    return [int(np.nonzero(reduced[i])[0][0]) for i in range(rk)]


def kernel(m) -> np.ndarray:
    """Basis of ``{x : m @ x = 0}`` as the rows of a matrix.

    One basis vector per free column, in increasing column order, each scaled
    so its first nonzero entry is 1. Returns a ``(0, n_cols)`` array when the
    kernel is trivial.
    """
    a = asmatrix(m)
    cols = a.shape[1]
    red, rk = rref(a)
    piv = pivots(red, rk)
    free = [c for c in range(cols) if c not in set(piv)]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for i, f in enumerate(free):
        basis[i, f] = 1
        for row, pc in enumerate(piv):
            basis[i, pc] = -int(red[row, f]) % P
        lead = basis[i, np.nonzero(basis[i])[0][0]]
        basis[i] = (basis[i] * lead) % P
    return basis.astype(DTYPE)


def in_row_span(vec, m) -> bool:
    base = asmatrix(m)
    if base.size == 0:
        return not np.any(asvector(vec))
    return rank(np.vstack([base, asvector(vec)])) == rank(base)


def symplectic_product(a, b) -> int:
    """``u_a . v_b - u_b . v_a`` mod 3."""
    fa, fb = _flat(a), _flat(b)
    if fa.size != fb.size or fa.size % 2:
        raise InvalidInputError(
            f"symplectic vectors of mismatched length {fa.size} and {fb.size}")
    n = fa.size // 2
    ua, va = fa[:n].astype(np.int64), fa[n:].astype(np.int64)
    ub, vb = fb[:n].astype(np.int64), fb[n:].astype(np.int64)
    return int((ua @ vb - ub @ va) % P)


def symplectic_gram(h) -> np.ndarray:
    """Matrix of pairwise symplectic products of the rows of ``h``."""
    a = asmatrix(h).astype(np.int64)
    n = a.shape[1] // 2
    u, v = a[:, :n], a[:, n:]
    return ((u @ v.T - v @ u.T) % P).astype(DTYPE)


def symplectic_dual(h) -> np.ndarray:
    """Basis of all symplectic vectors orthogonal to every row of ``h``."""
    a = asmatrix(h)
    n = a.shape[1] // 2
    # [row, x] = u_row . x_v - v_row . x_u, so the constraint matrix is (-v | u)
    omega = np.hstack([(-a[:, n:].astype(np.int64)) % P, a[:, :n]])
    return kernel(omega)


def support_weight(vecs: np.ndarray, n: int) -> np.ndarray:
    """Symplectic support size of each row of a ``(N, 2n)`` array."""
    return np.count_nonzero((vecs[:, :n] != 0) | (vecs[:, n:] != 0), axis=1)


def span_blocks(gens, block_rank: int = 10) -> Iterator[np.ndarray]:
    """Yield the row span of ``gens`` in blocks of at most ``3**block_rank`` rows.

    All ``3**len(gens)`` combinations are produced exactly once. Generators
    are assumed independent.
    """
    g = asmatrix(gens) if np.size(gens) else np.zeros((0, np.shape(gens)[-1]), DTYPE)
    width = g.shape[1]
    head, tail = g[:block_rank], g[block_rank:]
    base = np.zeros((1, width), dtype=DTYPE)
    for row in head:
        base = np.concatenate([base, (base + row) % P, (base + 2 * row) % P])
    if len(tail) == 0:
        yield base
        return
    tail64 = tail.astype(np.int64)
    for coeffs in np.ndindex(*([P] * len(tail))):
        offset = (np.asarray(coeffs, dtype=np.int64) @ tail64) % P
        yield ((base + offset.astype(DTYPE)) % P).astype(DTYPE)


def span(gens) -> np.ndarray:
    """All ``3**k`` elements of the row span, as one array."""
    return np.concatenate(list(span_blocks(gens, block_rank=64)))


def pack_trits(vec) -> int:
    """Pack a GF(3) vector into an integer with 2 bits per entry."""
    out = 0
    for i, t in enumerate(asvector(vec)):
        out |= int(t) << (2 * i)
    return out


def unpack_trits(packed: int, length: int) -> np.ndarray:
    out = np.array([(packed >> (2 * i)) & 3 for i in range(length)], dtype=np.int64)
    if np.any(out == 3) or packed >> (2 * length):
        raise InvalidInputError("packed value is not a valid trit vector")
    return out.astype(DTYPE)


def support_mask(vec) -> int:
    """Bit i set iff entry i is nonzero."""
    return sum(1 << i for i, t in enumerate(asvector(vec)) if t)
