"""Dense-matrix checks for small qudit counts.

Builds Heisenberg-Weyl displacements ``D(u, v) = w**(-uv/2) Z**v X**u``,
phase point operators and code projectors as explicit matrices, and compares
traces against the enumerator formulas. Double precision is enough here: the
identities are exact and the matrices are at most 243 x 243.

With ``X|k> = |k+1>`` and ``Z|k> = w**k |k>`` we have ``ZX = w XZ``, so the
Z-first ordering equals ``w**(uv/2) X**u Z**v``. This is the ordering for
which ``D(chi)^dagger = D(-chi)``, ``D(chi) D(chi') = w**([chi, chi']/2)
D(chi + chi')``, and ``A(0, 0)`` is the parity operator.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache, reduce

import numpy as np

from . import gf3
from .enumerators import (
    coset_complete_wenum,
    dual_complete_wenum,
    evaluate_complete,
    logical_translate,
)
from .errors import InvalidInputError, ResourceLimitError
from .stabilizer import StabilizerCode, logical_operators, validate

MAX_DIM = 243


def _check_prime(p: int) -> None:
    if p < 3 or p % 2 == 0 or any(p % d == 0 for d in range(3, int(p ** 0.5) + 1, 2)):
        raise InvalidInputError(f"p={p} must be an odd prime")


def _check_size(p: int, n: int) -> None:
    if p ** n > MAX_DIM:
        raise ResourceLimitError(f"dimension {p}^{n} exceeds {MAX_DIM}")


@lru_cache(maxsize=None)
def _shift_clock(p: int) -> tuple[np.ndarray, np.ndarray]:
    x = np.roll(np.eye(p), 1, axis=0)  # X|k> = |k+1>
    z = np.diag(np.exp(2j * np.pi * np.arange(p) / p))
    return x, z


@lru_cache(maxsize=None)
def _hw_cached(p: int, u: int, v: int) -> np.ndarray:
    x, z = _shift_clock(p)
    half = (p + 1) // 2
    phase = (-half * u * v) % p
    m = np.exp(2j * np.pi * phase / p) * (np.linalg.matrix_power(z, v)
                                         @ np.linalg.matrix_power(x, u))
    m.setflags(write=False)
    return m


def heisenberg_weyl(p: int, u: int, v: int) -> np.ndarray:
    _check_prime(p)
    return _hw_cached(p, u % p, v % p).copy()


def displacement(p: int, u, v) -> np.ndarray:
    """Tensor product of single-qudit displacements."""
    _check_prime(p)
    _check_size(p, len(u))
    return reduce(np.kron, (_hw_cached(p, int(a) % p, int(b) % p) for a, b in zip(u, v)),
                  np.eye(1))


def displacement_flat(p: int, chi) -> np.ndarray:
    chi = np.asarray(chi).ravel()
    n = chi.size // 2
    return displacement(p, chi[:n], chi[n:])


@lru_cache(maxsize=None)
def _phase_point_cached(p: int, u: int, v: int) -> np.ndarray:
    a00 = sum(_hw_cached(p, a, b) for a in range(p) for b in range(p)) / p
    d = _hw_cached(p, u, v)
    m = d @ a00 @ d.conj().T
    m.setflags(write=False)
    return m


def phase_point(p: int, u: int, v: int) -> np.ndarray:
    _check_prime(p)
    return _phase_point_cached(p, u % p, v % p).copy()


def phase_point_multi(p: int, u, v) -> np.ndarray:
    _check_size(p, len(u))
    return reduce(np.kron, (_phase_point_cached(p, int(a) % p, int(b) % p)
                            for a, b in zip(u, v)), np.eye(1))


def wigner(rho: np.ndarray) -> np.ndarray:
    """``W[u, v] = tr(rho A(u, v)) / p`` for a single qudit."""
    p = rho.shape[0]
    _check_prime(p)
    return np.array([[np.trace(rho @ _phase_point_cached(p, u, v)).real / p
                      for v in range(p)] for u in range(p)])


def projector(code: StabilizerCode) -> np.ndarray:
    """``(1/|S|) sum_{M in S} M`` for a trivial-syndrome qutrit code."""
    if code.n > 5:
        raise ResourceLimitError(f"dense projector limited to n <= 5, got n={code.n}")
    dim = 3 ** code.n
    gens = code.h if code.r else np.zeros((0, 2 * code.n), dtype=gf3.DTYPE)
    elems = gf3.span(gens)
    total = np.zeros((dim, dim), dtype=complex)
    for chi in elems:
        total += displacement_flat(3, chi)
    return total / len(elems)


def strange_ket() -> np.ndarray:
    return np.array([0, 1, -1], dtype=complex) / np.sqrt(2)


def strange_state(epsilon) -> np.ndarray:
    eps = float(epsilon)
    if not 0 <= eps <= 1:
        raise InvalidInputError(f"epsilon={eps} outside [0, 1]")
    s = strange_ket()
    return (1 - eps) * np.outer(s, s.conj()) + eps * np.eye(3) / 3


def check_density(rho: np.ndarray, tol: float = 1e-12) -> None:
    if not np.allclose(rho, rho.conj().T, atol=tol):
        raise InvalidInputError("density matrix is not Hermitian")
    if abs(np.trace(rho) - 1) > tol:
        raise InvalidInputError("density matrix does not have unit trace")


def tensor_power(rho: np.ndarray, n: int) -> np.ndarray:
    return reduce(np.kron, [rho] * n, np.eye(1))


def verify_trace_identity(code: StabilizerCode, rho: np.ndarray) -> float:
    """``|tr(Pi rho^n) - w(S_perp; W(rho))|`` for one code and state."""
    if code.n > 5:
        raise ResourceLimitError(f"dense check limited to n <= 5, got n={code.n}")
    check_density(rho, 1e-10)
    lhs = np.trace(projector(code) @ tensor_power(rho, code.n)).real
    rhs = evaluate_complete(dual_complete_wenum(code), wigner(rho))
    return abs(lhs - rhs)


def verify_output_wigner(code: StabilizerCode, rho: np.ndarray) -> float:
    """Largest deviation between the decoded output Wigner function and coset enumerators.

    Dense side: ``tr(A_bar(u, v) Pi rho^n) / (p * nu)`` with logical phase
    point operators built from the chosen logical representatives.
    """
    pair = logical_operators(code)
    pi_rho = projector(code) @ tensor_power(rho, code.n)
    nu = np.trace(pi_rho).real
    w = wigner(rho)
    a00 = sum(displacement_flat(3, logical_translate(pair, a, b))
              for a in range(3) for b in range(3)) / 3
    worst = 0.0
    for u, v in itertools.product(range(3), repeat=2):
        d = displacement_flat(3, logical_translate(pair, u, v))
        abar = d @ a00 @ d.conj().T
        dense = np.trace(abar @ pi_rho).real / (3 * nu)
        exact = evaluate_complete(coset_complete_wenum(code, logical_translate(pair, u, v)), w) / nu
        worst = max(worst, abs(dense - exact))
    return worst


def in_dual(code: StabilizerCode, chi) -> bool:
    if code.r == 0:
        return True
    return not np.any(gf3.symplectic_gram(np.vstack([code.h, gf3.asvector(chi)]))[-1])


@dataclass
class PhasePointReport:
    ok: bool
    points: int
    in_dual: int
    max_error: float


def verify_phase_point_pattern(code: StabilizerCode, tol: float = 1e-9) -> PhasePointReport:
    """Exhaustive phase-point trace pattern plus the displaced-projector checks.

    For every ``chi``: ``tr(Pi A(chi))`` is 1 on the dual and 0 off it; the
    conjugated projector ``D(chi)^-1 Pi D(chi)`` is a projector whose
    syndrome is trivial exactly on the dual; and its overlap with
    ``A(0,0)^n`` vanishes for nontrivial syndromes.
    """
    if code.n > 4:
        raise ResourceLimitError(f"phase-point check limited to n <= 4, got n={code.n}")
    validate(code)
    n = code.n
    pi = projector(code)
    a0 = phase_point_multi(3, [0] * n, [0] * n)
    gens = [displacement_flat(3, row) for row in code.h]
    omega = np.exp(2j * np.pi / 3)
    worst = 0.0
    hits = 0
    ok = True
    for chi in itertools.product(range(3), repeat=2 * n):
        chi = np.array(chi)
        member = in_dual(code, chi)
        hits += member
        t = np.trace(pi @ phase_point_multi(3, chi[:n], chi[n:])).real
        worst = max(worst, abs(t - member))
        d = displacement_flat(3, chi)
        ps = d.conj().T @ pi @ d
        worst = max(worst, np.abs(ps @ ps - ps).max())
        syndrome = []
        for g in gens:
            gp = g @ ps
            scale = np.vdot(ps, gp) / np.vdot(ps, ps)
            a = int(round(np.angle(scale) / (2 * np.pi / 3))) % 3
            worst = max(worst, np.abs(gp - omega ** a * ps).max())
            syndrome.append(a)
        trivial = not any(syndrome)
        ok &= trivial == member
        worst = max(worst, abs(np.trace(ps @ a0).real - (1.0 if trivial else 0.0)))
    ok &= worst < tol
    return PhasePointReport(bool(ok), 9 ** n, hits, float(worst))


def random_stabilizer_code(n: int, rng: np.random.Generator, r: int | None = None,
                           id="random") -> StabilizerCode:
    """Random isotropic subspace of rank ``r`` (random in 0..n when None)."""
    if r is None:
        r = int(rng.integers(0, n + 1))
    while True:
        rows: list[np.ndarray] = []
        for _ in range(200):
            if len(rows) == r:
                break
            cand = rng.integers(0, 3, size=2 * n).astype(gf3.DTYPE)
            if not np.any(cand):
                continue
            if rows and np.any(gf3.symplectic_gram(np.vstack(rows + [cand]))[-1]):
                continue
            if rows and gf3.in_row_span(cand, np.vstack(rows)):
                continue
            rows.append(cand)
        if len(rows) == r:
            h = np.vstack(rows) if rows else np.zeros((0, 2 * n), dtype=gf3.DTYPE)
            return StabilizerCode.from_rows(h, n=n, id=id)


def random_density(rng: np.random.Generator, p: int = 3) -> np.ndarray:
    g = rng.normal(size=(p, p)) + 1j * rng.normal(size=(p, p))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


@dataclass
class OracleSummary:
    trials: int
    max_residual: float
    failures: int
    pattern_ok: bool


def run_oracle(n_values=(2, 3), trials: int = 50, seed: int = 0, tol: float = 1e-9
               ) -> OracleSummary:
    """Randomized trace-identity trials plus the phase-point pattern on each trial code."""
    rng = np.random.default_rng(seed)
    worst, failures, pattern_ok = 0.0, 0, True
    n_values = list(n_values)
    for t in range(trials):
        n = n_values[t % len(n_values)]
        code = random_stabilizer_code(n, rng, id=f"trial-{t}")
        rho = random_density(rng)
        res = verify_trace_identity(code, rho)
        worst = max(worst, res)
        failures += res >= tol
        if n <= 3:
            pattern_ok &= verify_phase_point_pattern(code, tol).ok
    return OracleSummary(trials, worst, failures, pattern_ok)
