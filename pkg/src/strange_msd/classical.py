"""Classical linear codes over GF(3).

Includes the ``TERNARY-CODE v1`` text format and a best-effort reader for
MAGMA-style matrix listings.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

import numpy as np

from . import gf3
from .errors import NotSelfOrthogonalError, ParseError, RankMismatchError, ResourceLimitError

MAX_CODEWORD_RANK = 30
TERNARY_HEADER = "TERNARY-CODE v1"
_ROW_RE = re.compile(r"[012]+")


@dataclass(frozen=True, eq=False)
class ClassicalTernaryCode:
    """A linear ``[n, k]_3`` code, stored by its rref generator matrix."""

    generator: np.ndarray
    n: int
    k: int
    id: str = "code"

    def __post_init__(self):
        self.generator.setflags(write=False)

    @classmethod
    def from_rows(cls, rows, n=None, id="code", k=None) -> ClassicalTernaryCode:
        """Row-reduce ``rows`` and drop zero rows.

        If ``k`` is given, the computed rank must equal it.
        """
        g = np.asarray(rows)
        if g.size == 0:
            if n is None:
                raise ParseError("cannot infer length of an empty generator")
            g = np.zeros((0, n), dtype=gf3.DTYPE)
        g = gf3.asmatrix(g) if g.size else g.astype(gf3.DTYPE)
        width = g.shape[1]
        if n is not None and width != n:
            raise ParseError(f"rows have length {width}, expected {n}")
        if g.shape[0]:
            red, rk = gf3.rref(g)
            red = red[:rk]
        else:
            red, rk = g, 0
        if k is not None and rk != k:
            raise RankMismatchError(f"{id}: declared k={k} but generator has rank {rk}")
        return cls(np.ascontiguousarray(red), width, rk, id)

    def __eq__(self, other):
        if not isinstance(other, ClassicalTernaryCode):
            return NotImplemented
        return (self.n == other.n and self.k == other.k
                and np.array_equal(self.generator, other.generator))

    def __hash__(self):
        return hash((self.n, self.k, self.generator.tobytes()))

    def __repr__(self):
        return f"ClassicalTernaryCode(id={self.id!r}, n={self.n}, k={self.k})"


@dataclass
class SupportDistribution:
    """Codeword counts indexed by support mask (bit i set iff entry i nonzero)."""

    n: int
    counts: np.ndarray = field(repr=False)

    def items(self):
        for mask in np.nonzero(self.counts)[0]:
            yield int(mask), int(self.counts[mask])

    def as_dict(self) -> dict[int, int]:
        return dict(self.items())

    def total(self) -> int:
        return int(self.counts.sum())


def is_self_orthogonal(code: ClassicalTernaryCode) -> bool:
    g = code.generator.astype(np.int64)
    return not np.any((g @ g.T) % 3)


def require_self_orthogonal(code: ClassicalTernaryCode) -> None:
    if not is_self_orthogonal(code):
        raise NotSelfOrthogonalError(f"{code.id}: generator rows are not self-orthogonal")


def _check_budget(code: ClassicalTernaryCode, max_rank: int) -> None:
    if code.k > max_rank:
        raise ResourceLimitError(
            f"{code.id}: enumerating 3^{code.k} codewords exceeds budget 3^{max_rank}")


def codeword_masks(code: ClassicalTernaryCode, max_rank: int = MAX_CODEWORD_RANK):
    """Yield arrays of support masks covering every codeword exactly once."""
    _check_budget(code, max_rank)
    weights = (np.int64(1) << np.arange(code.n, dtype=np.int64))
    for block in gf3.span_blocks(code.generator):
        yield (block != 0).astype(np.int64) @ weights


def support_distribution(code: ClassicalTernaryCode,
                         max_rank: int = MAX_CODEWORD_RANK) -> SupportDistribution:
    counts = np.zeros(1 << code.n, dtype=np.int64)
    for masks in codeword_masks(code, max_rank):
        counts += np.bincount(masks, minlength=1 << code.n)
    return SupportDistribution(code.n, counts)


def classical_wenum(code: ClassicalTernaryCode, max_rank: int = MAX_CODEWORD_RANK):
    """Hamming weight enumerator, by enumeration of all codewords."""
    from .enumerators import WeightEnumerator

    _check_budget(code, max_rank)
    counts = np.zeros(code.n + 1, dtype=np.int64)
    for block in gf3.span_blocks(code.generator):
        counts += np.bincount(np.count_nonzero(block, axis=1), minlength=code.n + 1)
    return WeightEnumerator.from_counts(counts, code.n, kind="classical", k=code.k)


# -- text formats -------------------------------------------------------------

def _content_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line


def _parse_header_fields(line: str, lineno: int, source) -> dict[str, str]:
    fields = {}
    for tok in line.split():
        if "=" not in tok:
            raise ParseError(f"malformed header token {tok!r}", lineno, source)
        key, value = tok.split("=", 1)
        fields[key] = value
    return fields


def _int_field(fields, key, lineno, source) -> int:
    try:
        return int(fields[key])
    except (KeyError, ValueError):
        raise ParseError(f"header needs integer field {key}=", lineno, source) from None


def parse_classical(text: str, source=None) -> ClassicalTernaryCode:
    """Parse a ``TERNARY-CODE v1`` document.

    The compact single-line form ``"n=3 k=1; 111"`` is also accepted.
    """
    stripped = text.strip()
    if not stripped.startswith(TERNARY_HEADER) and ";" in stripped.splitlines()[0]:
        head, _, body = stripped.partition(";")
        text = f"{TERNARY_HEADER}\n{head}\n" + "\n".join(body.split())
    lines = list(_content_lines(text))
    if not lines or lines[0][1] != TERNARY_HEADER:
        raise ParseError(f"expected {TERNARY_HEADER!r} header", lines[0][0] if lines else 1, source)
    if len(lines) < 2:
        raise ParseError("missing parameter line", None, source)
    lineno, header = lines[1]
    fields = _parse_header_fields(header, lineno, source)
    n = _int_field(fields, "n", lineno, source)
    k = _int_field(fields, "k", lineno, source)
    code_id = fields.get("id", "code")
    body = lines[2:]
    if len(body) != k:
        raise ParseError(f"expected {k} generator rows, found {len(body)}", lineno, source)
    rows = []
    for lineno, row in body:
        if len(row) != n:
            raise ParseError(f"row has {len(row)} symbols, expected {n}", lineno, source)
        if not _ROW_RE.fullmatch(row):
            bad = next(ch for ch in row if ch not in "012")
            raise ParseError(f"invalid symbol {bad!r} in row", lineno, source)
        rows.append([int(ch) for ch in row])
    return ClassicalTernaryCode.from_rows(
        np.array(rows, dtype=np.int64).reshape(k, n), n=n, id=code_id, k=k)


def format_classical(code: ClassicalTernaryCode) -> str:
    lines = [TERNARY_HEADER, f"n={code.n} k={code.k} id={code.id}"]
    lines += ["".join(str(int(x)) for x in row) for row in code.generator]
    return "\n".join(lines) + "\n"


_MAGMA_MATRIX_RE = re.compile(
    r"Matrix\s*\(\s*GF\s*\(\s*3\s*\)\s*,\s*(\d+)\s*,\s*(\d+)\s*,\s*\[([^\]]*)\]", re.S)
_DIGITS_RE = re.compile(r"-?\d+")


def parse_magma_listing(text: str, source=None, prefix="magma"):
    """Extract generator matrices from a MAGMA-style listing.

    Two layouts are recognised: ``Matrix(GF(3), k, n, [flat entries])`` calls,
    and blocks of consecutive lines each holding one row of digits separated
    by spaces or commas (brackets and punctuation ignored). A row block ends
    at any line that is not a row of the same length.

    Returns a list of ``(code_or_error, lineno)`` pairs; malformed blocks come
    back as :class:`ParseError` instances so callers can report and continue.
    """
    out = []
    consumed = set()
    for m in _MAGMA_MATRIX_RE.finditer(text):
        lineno = text.count("\n", 0, m.start()) + 1
        k, n = int(m.group(1)), int(m.group(2))
        entries = [int(x) % 3 for x in _DIGITS_RE.findall(m.group(3))]
        idx = len(out)
        code_id = f"{prefix}-{idx + 1}"
        if len(entries) != k * n:
            out.append((ParseError(f"expected {k * n} entries, found {len(entries)}",
                                   lineno, source), lineno))
        else:
            out.append((_validated(np.array(entries).reshape(k, n), n, code_id, lineno, source),
                        lineno))
        consumed.update(range(text.count("\n", 0, m.start()) + 1,
                              text.count("\n", 0, m.end()) + 2))

    block: list[list[int]] = []
    start = 0

    def flush():
        if len(block) >= 1:
            idx = len(out)
            rows = np.array(block)
            out.append((_validated(rows, rows.shape[1], f"{prefix}-{idx + 1}", start, source),
                        start))
        block.clear()

    for lineno, raw in enumerate(text.splitlines(), 1):
        if lineno in consumed:
            flush()
            continue
        cleaned = re.sub(r"[\[\]\(\),;|<>]", " ", raw)
        tokens = cleaned.split()
        is_row = len(tokens) >= 2 and all(t.isdigit() and len(t) == 1 for t in tokens)
        if is_row:
            row = [int(t) for t in tokens]
            if block and len(row) != len(block[0]):
                flush()
            if not block:
                start = lineno
            block.append(row)
        else:
            flush()
    flush()
    return out


def _validated(rows, n, code_id, lineno, source):
    if np.any(np.asarray(rows) > 2) or np.any(np.asarray(rows) < 0):
        return ParseError("entries outside {0,1,2}", lineno, source)
    try:
        code = ClassicalTernaryCode.from_rows(rows, n=n, id=code_id, k=len(rows))
    except RankMismatchError as exc:
        return ParseError(str(exc), lineno, source)
    return code


def magma_to_ternary(text: str, source=None) -> list[str]:
    """Convert a MAGMA-style listing to ``TERNARY-CODE v1`` documents.

    Blocks that fail rank or self-orthogonality checks are dropped.
    """
    docs = []
    for item, _ in parse_magma_listing(text, source):
        if isinstance(item, ClassicalTernaryCode) and is_self_orthogonal(item):
            docs.append(format_classical(item))
    return docs
