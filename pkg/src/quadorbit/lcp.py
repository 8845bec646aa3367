"""Linear complexity profiles and closed-form lower bounds.

The profile L(S, N) is synthesized incrementally (Berlekamp-Massey over
F_p); for a purely periodic sequence the stabilized value is also computed
independently as T - deg gcd(X^T - 1, s^T(X)), and the two routes are kept
separate so each can check the other.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator

from .errors import DomainError
from .diagram import cycle_modulus
from .generator import KIND_LOGISTIC, GeneratorSpec, orbit
from .ivsets import in_iv_set


def _bm_steps(seq: list[int], p: int) -> Iterator[int]:
    """Yield L(S, N) for N = 1..len(seq), one prefix at a time."""
    conn = [1]  # connection polynomial, constant term first
    prev = [1]  # last polynomial before the previous length change
    length = 0
    gap = 1  # X-power separating conn from prev
    prev_disc_inv = 1
    for n, s_n in enumerate(seq):
        disc = s_n
        for i in range(1, len(conn)):
            disc += conn[i] * seq[n - i]
        disc %= p
        if disc != 0:
            coef = disc * prev_disc_inv % p
            jump = 2 * length <= n
            saved = conn[:] if jump else None
            need = gap + len(prev)
            if need > len(conn):
                conn.extend([0] * (need - len(conn)))
            for i, v in enumerate(prev):
                if v:
                    conn[gap + i] = (conn[gap + i] - coef * v) % p
            while len(conn) > 1 and conn[-1] == 0:
                conn.pop()
            if jump:
                prev = saved
                prev_disc_inv = pow(disc, -1, p)
                length = n + 1 - length
                gap = 1
            else:
                gap += 1
        else:
            gap += 1
        yield length


def berlekamp_massey_profile(seq: Iterable[int], p: int, n_max: int | None = None) -> list[int]:
    """The linear complexity profile [L(S,1), ..., L(S,n_max)] of seq over F_p."""
    data = [s % p for s in seq]
    if n_max is None:
        n_max = len(data)
    if n_max > len(data):
        raise DomainError(f"profile to N={n_max} needs {n_max} terms, got {len(data)}")
    profile = []
    for n, length in enumerate(_bm_steps(data, p), start=1):
        profile.append(length)
        if n == n_max:
            break
    return profile


def _poly_divmod_degree(u: list[int], v: list[int], p: int) -> list[int]:
    """Remainder of u by v over F_p; u and v are coefficient lists, v != 0."""
    r = u[:]
    dv = len(v) - 1
    inv_lead = pow(v[-1], -1, p)
    for i in range(len(r) - 1, dv - 1, -1):
        q = r[i] * inv_lead % p
        if q:
            for j in range(dv + 1):
                r[i - dv + j] = (r[i - dv + j] - q * v[j]) % p
    while r and r[-1] == 0:
        r.pop()
    return r


def linear_complexity_via_gcd(cycle: list[int], p: int) -> int:
    """L(S) of the T-periodic sequence with one period given by cycle.

    Computed as T - deg gcd(X^T - 1, s^T(X)) by polynomial Euclid over F_p.
    An all-zero cycle gives 0.
    """
    t = len(cycle)
    if t == 0:
        raise DomainError("cycle must be nonempty")
    u = [(-1) % p] + [0] * (t - 1) + [1]
    v = [c % p for c in cycle]
    while v and v[-1] == 0:
        v.pop()
    while v:
        u, v = v, _poly_divmod_degree(u, v, p)
    return t - (len(u) - 1)


@lru_cache(maxsize=64)
def _cycle_complexity_cached(p: int, canonical_cycle: tuple[int, ...]) -> int:
    return linear_complexity_via_gcd(list(canonical_cycle), p)


def _cycle_complexity(cycle: list[int], p: int) -> int:
    """linear_complexity_via_gcd, cached up to rotation.

    L(S) of a periodic sequence is shift-invariant (rotating multiplies
    s^T(X) by a power of X, coprime to X^T - 1), and orbit cycles visit
    distinct states, so starting the cycle at its minimum canonicalizes it.
    Seeds on a shared cycle then pay for one gcd instead of one each.
    """
    k = cycle.index(min(cycle))
    return _cycle_complexity_cached(p, tuple(cycle[k:] + cycle[:k]))


def bound_quadratic(n: int, period: int, modulus: int) -> float:
    """Lower bound min(N^2, 4T^2) / (16m) - sqrt(m) for seeds in the IV set.

    May be negative for small N; callers clamp to zero for display only.
    """
    return min(n * n, 4 * period * period) / (16 * modulus) - math.sqrt(modulus)


def bound_sqrt(n: int, linear_complexity: int) -> float:
    """Lower bound min(sqrt(2N) - 3, L(S)), valid for any periodic sequence."""
    return min(math.sqrt(2 * n) - 3, float(linear_complexity))


def bound_dickson(n: int, period: int, p: int) -> float:
    """The older degree-2 Dickson bound min(N^2, 4T^2) / (16(p+1)) - sqrt(p+1).

    Kept as a comparison curve; the IV-set bound dominates it pointwise.
    """
    return min(n * n, 4 * period * period) / (16 * (p + 1)) - math.sqrt(p + 1)


@dataclass(frozen=True)
class BoundCurve:
    """A lower-bound curve, clamped at zero for plotting/CSV display."""

    kind: str  # quadratic | sqrt | dickson
    values: list[tuple[int, float]]


def bound_curve(
    kind: str,
    n_max: int,
    *,
    period: int | None = None,
    modulus: int | None = None,
    p: int | None = None,
    linear_complexity: int | None = None,
) -> BoundCurve:
    if kind == "quadratic":
        points = [(n, bound_quadratic(n, period, modulus)) for n in range(1, n_max + 1)]
    elif kind == "sqrt":
        points = [(n, bound_sqrt(n, linear_complexity)) for n in range(1, n_max + 1)]
    elif kind == "dickson":
        points = [(n, bound_dickson(n, period, p)) for n in range(1, n_max + 1)]
    else:
        raise DomainError(f"unknown bound kind {kind!r}")
    return BoundCurve(kind=kind, values=[(n, max(0.0, v)) for n, v in points])


@dataclass(frozen=True)
class LcpProfile:
    """Profile L(S,N) for N = 1..n_max plus the stabilized complexity."""

    p: int
    profile: list[int]
    period: int
    linear_complexity: int

    @property
    def n_max(self) -> int:
        return len(self.profile)


def profile_for_seed(p: int, seed: int, n_max: int | None = None) -> LcpProfile:
    """Profile of the logistic output sequence from seed, on its periodic part.

    The sequence analyzed is the orbit's cycle repeated; seeds in the
    initial-value set are on cycles already, so there the sequence is just
    the generator output.  The stabilized complexity comes from the gcd
    route, independently of the synthesis loop.
    """
    rep = orbit(GeneratorSpec(kind=KIND_LOGISTIC, p=p, seed=seed))
    t = rep.period
    if n_max is None:
        n_max = 2 * t
    reps = -(-n_max // t)
    seq = (rep.cycle * reps)[:n_max]
    return LcpProfile(
        p=p,
        profile=berlekamp_massey_profile(seq, p),
        period=t,
        linear_complexity=_cycle_complexity(rep.cycle, p),
    )


@dataclass(frozen=True, slots=True)
class BoundViolation:
    n: int
    observed: int
    bound: float
    kind: str


@dataclass(frozen=True)
class BoundCheckReport:
    """Outcome of checking both profile bounds against one seed's profile."""

    p: int
    seed: int
    period: int
    modulus: int
    linear_complexity: int
    n_checked: int
    violations: list[BoundViolation]

    @property
    def holds(self) -> bool:
        return not self.violations


# Comparison slack for the irrational sqrt terms in the bounds; observed
# profile values are integers, so anything tighter than 0.5 is safe.
BOUND_SLACK = 1e-9


def verify_profile_bounds(p: int, seed: int, n_max: int | None = None) -> BoundCheckReport:
    """Check L(S,N) against both lower bounds for all N <= n_max (default 2T).

    Any violation is reported with full context rather than raised, so a
    falsification would be visible instead of crashing the sweep.  Once the
    profile climbs above the maximum of both bound curves the remaining N
    are implied (the profile never decreases) and synthesis stops early.
    """
    seed %= p
    if not in_iv_set(seed, p):
        raise DomainError(f"seed {seed} is not in the initial-value set of F_{p}")
    # IV seeds sit on cycles, so the orbit is the pure cycle through the seed.
    cycle = [seed]
    x = 4 * seed * (seed + 1) % p
    while x != seed:
        cycle.append(x)
        x = 4 * x * (x + 1) % p
        if len(cycle) > p:
            raise AssertionError(f"walk from {seed} mod {p} never returned")
    t = len(cycle)
    m = cycle_modulus(p)
    if n_max is None:
        n_max = 2 * t
    l_s = _cycle_complexity(cycle, p)
    reps = -(-n_max // t)
    seq = (cycle * reps)[:n_max]
    threshold = max(bound_quadratic(n_max, t, m), bound_sqrt(n_max, l_s))
    violations = []
    # Inlined bound_quadratic / bound_sqrt for the per-step loop.
    four_t2 = 4 * t * t
    inv_16m = 1.0 / (16 * m)
    sqrt_m = math.sqrt(m)
    l_s_float = float(l_s)
    for n, length in enumerate(_bm_steps(seq, p), start=1):
        n2 = n * n
        quad = (n2 if n2 < four_t2 else four_t2) * inv_16m - sqrt_m
        if length < quad - BOUND_SLACK:
            violations.append(BoundViolation(n=n, observed=length, bound=quad, kind="quadratic"))
        sqr = math.sqrt(2 * n) - 3
        if sqr > l_s_float:
            sqr = l_s_float
        if length < sqr - BOUND_SLACK:
            violations.append(BoundViolation(n=n, observed=length, bound=sqr, kind="sqrt"))
        if n >= n_max or length >= threshold:
            break
    return BoundCheckReport(
        p=p,
        seed=seed,
        period=t,
        modulus=m,
        linear_complexity=l_s,
        n_checked=n_max,
        violations=violations,
    )
