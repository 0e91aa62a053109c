"""Qutrit stabilizer codes in the symplectic picture.

A code is a matrix ``h`` over GF(3) with ``2n`` columns; each row ``(u | v)``
is one generator D(u, v). Only trivial-syndrome codes (every generator has
eigenvalue 1) are represented.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from . import gf3
from .classical import ClassicalTernaryCode, is_self_orthogonal
from .errors import (
    DegenerateShorteningError,
    DependentRowsError,
    EvenLengthError,
    InvalidInputError,
    NonCommutingRowsError,
    NotSelfOrthogonalError,
    ParseError,
    UnsupportedError,
)
from .gf3 import SymplecticVector

STABILIZER_HEADER = "STABILIZER-CODE v1"


@dataclass(frozen=True, eq=False)
class StabilizerCode:
    h: np.ndarray
    n: int
    id: str = "code"

    def __post_init__(self):
        if self.h.shape[1] != 2 * self.n:
            raise InvalidInputError(f"h has {self.h.shape[1]} columns, expected {2 * self.n}")
        self.h.setflags(write=False)

    @classmethod
    def from_rows(cls, rows, n: int | None = None, id="code", check=True) -> StabilizerCode:
        a = np.asarray(rows)
        if a.size == 0:
            if n is None:
                raise InvalidInputError("cannot infer n from an empty stabilizer")
            h = np.zeros((0, 2 * n), dtype=gf3.DTYPE)
        else:
            h = gf3.asmatrix(a)
            n = h.shape[1] // 2 if n is None else n
        code = cls(np.ascontiguousarray(h), n, id)
        if check:
            validate(code)
        return code

    @classmethod
    def from_strings(cls, rows: list[str], n: int | None = None, id="code") -> StabilizerCode:
        """Build from rows written as ``"uuu|vvv"``."""
        parsed = []
        for row in rows:
            u, _, v = row.partition("|")
            parsed.append([int(c) for c in u + v])
        return cls.from_rows(parsed, n=n, id=id)

    @property
    def r(self) -> int:
        return self.h.shape[0]

    @property
    def k(self) -> int:
        return self.n - self.r

    @property
    def u(self) -> np.ndarray:
        return self.h[:, :self.n]

    @property
    def v(self) -> np.ndarray:
        return self.h[:, self.n:]

    def is_css(self) -> bool:
        """True when every generator is purely X-type or purely Z-type."""
        return bool(np.all(~np.any(self.u, axis=1) | ~np.any(self.v, axis=1)))

    def row_strings(self) -> list[str]:
        return ["".join(map(str, row[:self.n])) + "|" + "".join(map(str, row[self.n:]))
                for row in self.h]

    def __eq__(self, other):
        if not isinstance(other, StabilizerCode):
            return NotImplemented
        return self.n == other.n and np.array_equal(self.h, other.h)

    def __hash__(self):
        return hash((self.n, self.h.tobytes()))

    def __repr__(self):
        return f"StabilizerCode(id={self.id!r}, n={self.n}, k={self.k})"


@dataclass(frozen=True)
class DualBasis:
    rows: np.ndarray

    @property
    def dim(self) -> int:
        return self.rows.shape[0]


@dataclass(frozen=True)
class LogicalPair:
    xbar: SymplecticVector
    zbar: SymplecticVector


def validate(code: StabilizerCode) -> None:
    """Raise unless rows are independent and pairwise commuting."""
    if code.r == 0:
        return
    if gf3.rank(code.h) != code.r:
        raise DependentRowsError(f"{code.id}: stabilizer rows are linearly dependent")
    gram = gf3.symplectic_gram(code.h)
    bad = np.argwhere(np.triu(gram, 1))
    if bad.size:
        i, j = (int(x) for x in bad[0])
        raise NonCommutingRowsError(i, j)


def css_from_classical(code: ClassicalTernaryCode) -> StabilizerCode:
    """Two copies of a self-orthogonal code: ``H = (G 0; 0 G)``."""
    if not is_self_orthogonal(code):
        raise NotSelfOrthogonalError(f"{code.id}: classical code is not self-orthogonal")
    if code.n % 2 == 0:
        raise EvenLengthError(f"{code.id}: CSS construction needs odd length, got n={code.n}")
    g = code.generator
    zero = np.zeros_like(g)
    h = np.vstack([np.hstack([g, zero]), np.hstack([zero, g])])
    return StabilizerCode(np.ascontiguousarray(h), code.n, code.id)


def dual_basis(code: StabilizerCode) -> DualBasis:
    if code.r == 0:
        return DualBasis(np.eye(2 * code.n, dtype=gf3.DTYPE))
    return DualBasis(gf3.symplectic_dual(code.h))


def logical_operators(code: StabilizerCode) -> LogicalPair:
    """Deterministic logical X/Z representatives for a ``k = 1`` code.

    Dual basis rows are scanned in order: the first one outside the
    stabilizer span is X-bar, the first one outside span(stabilizer, X-bar)
    is Z-bar, rescaled so the symplectic pairing is exactly 1.
    """
    if code.k != 1:
        raise UnsupportedError(f"{code.id}: logical operators need k=1, got k={code.k}")
    span = code.h
    xbar = zbar = None
    for row in dual_basis(code).rows:
        if xbar is None:
            if not gf3.in_row_span(row, span):
                xbar = row
                span = np.vstack([span, row])
        elif not gf3.in_row_span(row, span):
            zbar = row
            break
    assert xbar is not None and zbar is not None
    pairing = gf3.symplectic_product(xbar, zbar)
    zbar = (zbar.astype(np.int64) * pairing) % 3  # pairing is its own inverse
    return LogicalPair(SymplecticVector.from_flat(xbar), SymplecticVector.from_flat(zbar))


def sl2_z3() -> list[np.ndarray]:
    """The 24 matrices of SL(2, Z_3), in lexicographic order of entries."""
    out = []
    for a, b, c, d in itertools.product(range(3), repeat=4):
        if (a * d - b * c) % 3 == 1:
            out.append(np.array([[a, b], [c, d]], dtype=np.int64))
    return out


def apply_local_rotation(h: np.ndarray, n: int, coord: int, rot: np.ndarray) -> np.ndarray:
    """Apply a 2x2 symplectic map to the ``(u, v)`` pair at ``coord`` (0-based)."""
    out = h.astype(np.int64).copy()
    pair = out[:, [coord, n + coord]]
    out[:, [coord, n + coord]] = (pair @ rot.T) % 3
    return out.astype(gf3.DTYPE)


def shorten(state: StabilizerCode, coord: int, rotation: int = 0) -> StabilizerCode:
    """Shorten an ``[[n, 0]]`` state at ``coord`` (1-based) to an ``[[n-1, 1]]`` code.

    ``rotation`` indexes :func:`sl2_z3`. The surviving subgroup is the set of
    stabilizer elements acting trivially on ``coord``; that coordinate is then
    deleted.
    """
    if state.k != 0:
        raise InvalidInputError(f"{state.id}: shortening needs an [[n,0]] state, got k={state.k}")
    n = state.n
    if not 1 <= coord <= n:
        raise InvalidInputError(f"coordinate {coord} outside 1..{n}")
    c = coord - 1
    rots = sl2_z3()
    h = apply_local_rotation(state.h, n, c, rots[rotation])
    local = h[:, [c, n + c]]
    coeffs = gf3.kernel(local.T)
    if coeffs.shape[0] != n - 2:
        raise DegenerateShorteningError(
            f"{state.id}: {coeffs.shape[0]} stabilizers survive at coordinate {coord}, "
            f"expected {n - 2}")
    sub = (coeffs.astype(np.int64) @ h.astype(np.int64)) % 3
    keep = [j for j in range(2 * n) if j not in (c, n + c)]
    rows = sub[:, keep]
    if rows.shape[0]:
        rows = gf3.rref(rows)[0][:rows.shape[0]]
    return StabilizerCode.from_rows(rows, n=n - 1, id=f"{state.id}-s{coord}r{rotation}")


def shorten_all(state: StabilizerCode, coords=None, all_rotations=True):
    """Try every (coordinate, rotation) pair.

    Yields ``(coord, rotation, code_or_error)``; degenerate cases come back as
    :class:`DegenerateShorteningError` instances.
    """
    coords = range(1, state.n + 1) if coords is None else coords
    rotations = range(24) if all_rotations else (0,)
    for coord in coords:
        for rot in rotations:
            try:
                yield coord, rot, shorten(state, coord, rot)
            except DegenerateShorteningError as exc:
                yield coord, rot, exc


# -- text format --------------------------------------------------------------

def parse_stabilizer(text: str, source=None) -> StabilizerCode:
    lines = [(i, raw.split("#", 1)[0].strip()) for i, raw in enumerate(text.splitlines(), 1)]
    lines = [(i, s) for i, s in lines if s]
    if not lines or lines[0][1] != STABILIZER_HEADER:
        raise ParseError(f"expected {STABILIZER_HEADER!r} header", lines[0][0] if lines else 1, source)
    if len(lines) < 2:
        raise ParseError("missing parameter line", None, source)
    lineno, header = lines[1]
    fields = {}
    for tok in header.split():
        key, eq, value = tok.partition("=")
        if not eq:
            raise ParseError(f"malformed header token {tok!r}", lineno, source)
        fields[key] = value
    try:
        p, n, r = int(fields["p"]), int(fields["n"]), int(fields["r"])
    except (KeyError, ValueError):
        raise ParseError("header needs p=, n= and r= integer fields", lineno, source) from None
    if p != 3:
        raise ParseError(f"only p=3 is supported, got p={p}", lineno, source)
    body = lines[2:]
    if len(body) != r:
        raise ParseError(f"expected {r} rows, found {len(body)}", lineno, source)
    rows = []
    for lineno, row in body:
        u, bar, v = row.partition("|")
        if not bar or len(u) != n or len(v) != n:
            raise ParseError(f"row must be {n} symbols, '|', {n} symbols", lineno, source)
        bad = [ch for ch in u + v if ch not in "012"]
        if bad:
            raise ParseError(f"invalid symbol {bad[0]!r} in row", lineno, source)
        rows.append([int(ch) for ch in u + v])
    arr = np.array(rows, dtype=np.int64).reshape(r, 2 * n)
    return StabilizerCode.from_rows(arr, n=n, id=fields.get("id", "code"))


def format_stabilizer(code: StabilizerCode) -> str:
    lines = [STABILIZER_HEADER, f"p=3 n={code.n} r={code.r} id={code.id}"]
    lines += code.row_strings()
    return "\n".join(lines) + "\n"
