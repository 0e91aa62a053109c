"""Weight enumerators of qutrit stabilizer codes.

Simple enumerators count group elements by symplectic support size. The
CSS fast path never touches the ``9**k`` stabilizer elements: it tallies the
classical codewords by support mask, then counts pairs ``(a, b)`` by the
union of their supports with a zeta transform, a pointwise square and a
Mobius inversion over the subset lattice.
"""

from __future__ import annotations

import hashlib
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import gf3, poly
from .classical import ClassicalTernaryCode, is_self_orthogonal, support_distribution
from .errors import (
    InconsistentEnumeratorError,
    InexactDivisionError,
    InvalidInputError,
    LogicalNotInDualError,
    NotSelfOrthogonalError,
    ParseError,
    ResourceLimitError,
)
from .stabilizer import StabilizerCode, dual_basis

MAX_NAIVE_RANK = 22
MAX_COMPLETE_RANK = 12
DEFAULT_MEM_CAP = 2 << 30
KINDS = ("A", "B", "coset", "classical")
WENUM_HEADER = "WENUM v1"


@dataclass(frozen=True)
class WeightEnumerator:
    """``sum_w coeffs[w] z**w`` for a code of length ``n``."""

    coeffs: tuple[int, ...]
    n: int
    kind: str = "A"
    k: int | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise InvalidInputError(f"unknown enumerator kind {self.kind!r}")
        if len(self.coeffs) > self.n + 1:
            raise InvalidInputError(f"degree {len(self.coeffs) - 1} exceeds n={self.n}")
        if any(c < 0 for c in self.coeffs):
            raise InvalidInputError("enumerator coefficients must be nonnegative")

    @classmethod
    def from_counts(cls, counts, n, kind="A", k=None) -> WeightEnumerator:
        return cls(poly.trim(int(c) for c in counts), n, kind, k)

    def __call__(self, z):
        return poly.evaluate(self.coeffs, z)

    def __getitem__(self, w: int) -> int:
        return self.coeffs[w] if 0 <= w < len(self.coeffs) else 0

    def derivative(self, order: int = 1) -> tuple:
        p = self.coeffs
        for _ in range(order):
            p = poly.derivative(p)
        return p

    def total(self) -> int:
        return sum(self.coeffs)

    def digest(self) -> str:
        """Stable hash of ``n`` and the coefficient sequence."""
        payload = f"{self.n}:" + ",".join(str(c) for c in self.coeffs)
        return hashlib.sha256(payload.encode()).hexdigest()[:16]

    def __str__(self):
        return poly.to_str(self.coeffs)


def _stabilizer_counts(gens: np.ndarray, n: int, offset=None, max_rank=MAX_NAIVE_RANK):
    if gens.shape[0] > max_rank:
        raise ResourceLimitError(
            f"naive enumeration of 3^{gens.shape[0]} elements exceeds budget 3^{max_rank}")
    counts = np.zeros(n + 1, dtype=np.int64)
    if gens.shape[0] == 0:
        gens = np.zeros((0, 2 * n), dtype=gf3.DTYPE)
    for block in gf3.span_blocks(gens):
        if offset is not None:
            block = (block + offset) % 3
        counts += np.bincount(gf3.support_weight(block, n), minlength=n + 1)
    return counts


def simple_wenum_naive(code: StabilizerCode, max_rank: int = MAX_NAIVE_RANK) -> WeightEnumerator:
    """A(z) by enumerating all ``3**r`` stabilizer group elements."""
    return WeightEnumerator.from_counts(
        _stabilizer_counts(code.h, code.n, max_rank=max_rank), code.n, "A", code.k)


def dual_wenum_naive(code: StabilizerCode, max_rank: int = MAX_NAIVE_RANK) -> WeightEnumerator:
    """B(z) by enumerating all ``3**(n+k)`` elements of the dual."""
    rows = dual_basis(code).rows
    return WeightEnumerator.from_counts(
        _stabilizer_counts(rows, code.n, max_rank=max_rank), code.n, "B", code.k)


def fast_path_bytes(n: int) -> int:
    return 8 << n


def subset_zeta(f: np.ndarray, n: int) -> None:
    """In place: ``f[S] <- sum_{T subset S} f[T]``."""
    for i in range(n):
        view = f.reshape(-1, 2, 1 << i)
        view[:, 1, :] += view[:, 0, :]


def subset_mobius(f: np.ndarray, n: int) -> None:
    """In place inverse of :func:`subset_zeta`."""
    for i in range(n):
        view = f.reshape(-1, 2, 1 << i)
        view[:, 1, :] -= view[:, 0, :]


def popcounts(n: int) -> np.ndarray:
    pc = np.zeros(1 << n, dtype=np.uint8)
    for i in range(n):
        pc.reshape(-1, 2, 1 << i)[:, 1, :] += 1
    return pc


def simple_wenum_css_fast(code: ClassicalTernaryCode, mem_cap: int = DEFAULT_MEM_CAP,
                          check: bool = True) -> WeightEnumerator:
    """A(z) of the CSS code built from two copies of ``code``."""
    if check and not is_self_orthogonal(code):
        raise NotSelfOrthogonalError(f"{code.id}: classical code is not self-orthogonal")
    n = code.n
    if fast_path_bytes(n) > mem_cap:
        raise ResourceLimitError(
            f"{code.id}: fast enumerator needs {fast_path_bytes(n)} bytes, cap is {mem_cap}")
    f = support_distribution(code).counts
    subset_zeta(f, n)
    np.multiply(f, f, out=f)
    subset_mobius(f, n)
    pc = popcounts(n)
    coeffs = [int(f[pc == w].sum()) for w in range(n + 1)]
    return WeightEnumerator(poly.trim(coeffs), n, "A", n - 2 * code.k)


def macwilliams(a: WeightEnumerator, n: int, k: int) -> WeightEnumerator:
    """``3**-(n-k) * sum_w a_w (1-z)**w (1+8z)**(n-w)``, exactly.

    Maps A to B; passing ``-k`` maps B back to A.
    """
    if a[0] != 1:
        raise InvalidInputError("enumerator must have constant term 1")
    if len(a.coeffs) > n + 1:
        raise InvalidInputError(f"degree exceeds n={n}")
    if k > n:
        raise InvalidInputError(f"k={k} exceeds n={n}")
    minus = [poly.power((1, -1), w) for w in range(n + 1)]
    plus = [poly.power((1, 8), w) for w in range(n + 1)]
    total: tuple = ()
    for w, c in enumerate(a.coeffs):
        if c:
            total = poly.add(total, poly.scale(poly.mul(minus[w], plus[n - w]), c))
    scale = 3 ** (n - k)
    out = []
    for c in total:
        q, rem = divmod(c, scale)
        if rem or q < 0:
            raise InexactDivisionError(
                f"coefficient {c} is not a nonnegative multiple of 3^{n - k}; "
                "input is not a stabilizer enumerator")
        out.append(q)
    kind = "A" if a.kind == "B" else "B"
    return WeightEnumerator(poly.trim(out), n, kind, k if kind == "B" else -k)


def distance_from_enums(a: WeightEnumerator, b: WeightEnumerator) -> int | None:
    """Lowest degree of ``B - A``; None when they coincide."""
    if a.n != b.n:
        raise InvalidInputError(f"length mismatch: {a.n} vs {b.n}")
    diff = poly.sub(b.coeffs, a.coeffs)
    if any(c < 0 for c in diff):
        raise InconsistentEnumeratorError("B - A has a negative coefficient")
    return poly.order_at_zero(diff)


# -- complete and coset enumerators ------------------------------------------

def _symbols(block: np.ndarray, n: int) -> np.ndarray:
    return 3 * block[:, :n].astype(np.int64) + block[:, n:]


def complete_wenum(code: StabilizerCode, max_rank: int = MAX_COMPLETE_RANK,
                   offset=None) -> Counter:
    """Complete enumerator as ``Counter`` of 9-tuples of exponents.

    Entry ``3*i + j`` of a key is the exponent of ``y_ij``: the number of
    coordinates whose symplectic pair is ``(i, j)``.
    """
    if code.r > max_rank:
        raise ResourceLimitError(f"complete enumeration of 3^{code.r} elements exceeds budget")
    terms: Counter = Counter()
    gens = code.h if code.r else np.zeros((0, 2 * code.n), dtype=gf3.DTYPE)
    for block in gf3.span_blocks(gens):
        if offset is not None:
            block = (block + offset) % 3
        sym = _symbols(block, code.n)
        expo = np.stack([(sym == s).sum(axis=1) for s in range(9)], axis=1)
        keys, counts = np.unique(expo, axis=0, return_counts=True)
        for key, c in zip(keys, counts):
            terms[tuple(int(x) for x in key)] += int(c)
    return terms


def dual_complete_wenum(code: StabilizerCode, max_rank: int = MAX_COMPLETE_RANK) -> Counter:
    rows = dual_basis(code).rows
    dual = StabilizerCode(rows, code.n, code.id + "-dual")
    return complete_wenum(dual, max_rank=max_rank)


def evaluate_complete(terms: Counter, values) -> object:
    """Substitute ``y_ij -> values[i][j]`` (any numeric type)."""
    flat = [values[i][j] for i in range(3) for j in range(3)]
    total = 0
    for key, c in terms.items():
        term = c
        for s, e in enumerate(key):
            if e:
                term = term * flat[s] ** e
        total = total + term
    return total


def specialize_complete(terms: Counter, n: int) -> WeightEnumerator:
    """Set ``y_00 -> 1`` and every other variable to ``z``."""
    counts = [0] * (n + 1)
    for key, c in terms.items():
        counts[n - key[0]] += c
    return WeightEnumerator.from_counts(counts, n)


def _as_flat(logical, n: int) -> np.ndarray:
    flat = logical.flat if isinstance(logical, gf3.SymplecticVector) else gf3.asvector(logical)
    if flat.size != 2 * n:
        raise InvalidInputError(f"logical has length {flat.size}, expected {2 * n}")
    return flat


def coset_wenum(code: StabilizerCode, logical, max_rank: int = MAX_NAIVE_RANK) -> WeightEnumerator:
    """Simple enumerator of the coset ``S + logical``."""
    flat = _as_flat(logical, code.n)
    if code.r and np.any(gf3.symplectic_gram(np.vstack([code.h, flat]))[-1]):
        raise LogicalNotInDualError("logical operator does not commute with the stabilizer")
    counts = _stabilizer_counts(code.h, code.n, offset=flat, max_rank=max_rank)
    return WeightEnumerator.from_counts(counts, code.n, "coset", code.k)


def coset_complete_wenum(code: StabilizerCode, logical,
                         max_rank: int = MAX_COMPLETE_RANK) -> Counter:
    flat = _as_flat(logical, code.n)
    if code.r and np.any(gf3.symplectic_gram(np.vstack([code.h, flat]))[-1]):
        raise LogicalNotInDualError("logical operator does not commute with the stabilizer")
    return complete_wenum(code, max_rank=max_rank, offset=flat)


def logical_translate(pair, a: int, b: int) -> np.ndarray:
    """Symplectic vector ``a * xbar + b * zbar``."""
    return ((a * pair.xbar.flat.astype(np.int64) + b * pair.zbar.flat.astype(np.int64)) % 3
            ).astype(gf3.DTYPE)


# -- exact evaluation helpers ------------------------------------------------

def eval_homogeneous(a: WeightEnumerator, x, y):
    """``sum_w a_w x**(n-w) y**w``."""
    n = a.n
    return sum(c * x ** (n - w) * y ** w for w, c in enumerate(a.coeffs) if c)


def at_minus_half(a: WeightEnumerator, order: int = 0) -> Fraction:
    return poly.evaluate(a.derivative(order), Fraction(-1, 2))


# -- WENUM v1 format ----------------------------------------------------------

def format_wenum(a: WeightEnumerator) -> str:
    k = "" if a.k is None else a.k
    lines = [WENUM_HEADER, f"n={a.n} k={k} kind={a.kind}"]
    lines += [f"{w} {c}" for w, c in enumerate(a.coeffs) if c]
    return "\n".join(lines) + "\n"


def parse_wenum(text: str, source=None) -> WeightEnumerator:
    lines = [(i, raw.split("#", 1)[0].strip()) for i, raw in enumerate(text.splitlines(), 1)]
    lines = [(i, s) for i, s in lines if s]
    if not lines or lines[0][1] != WENUM_HEADER:
        raise ParseError(f"expected {WENUM_HEADER!r} header", lines[0][0] if lines else 1, source)
    if len(lines) < 2:
        raise ParseError("missing parameter line", None, source)
    lineno, header = lines[1]
    fields = dict(tok.partition("=")[::2] for tok in header.split())
    try:
        n = int(fields["n"])
        k = int(fields["k"]) if fields.get("k", "") != "" else None
    except (KeyError, ValueError):
        raise ParseError("header needs n= and k= fields", lineno, source) from None
    kind = fields.get("kind", "A")
    if kind not in KINDS:
        raise ParseError(f"unknown kind {kind!r}", lineno, source)
    coeffs = [0] * (n + 1)
    last = -1
    for lineno, line in lines[2:]:
        parts = line.split()
        if len(parts) != 2 or not all(p.isdigit() for p in parts):
            raise ParseError("expected '<degree> <coefficient>'", lineno, source)
        w, c = int(parts[0]), int(parts[1])
        if w <= last:
            raise ParseError("degrees must be strictly ascending", lineno, source)
        if w > n:
            raise ParseError(f"degree {w} exceeds n={n}", lineno, source)
        coeffs[w] = c
        last = w
    return WeightEnumerator(poly.trim(coeffs), n, kind, k)
