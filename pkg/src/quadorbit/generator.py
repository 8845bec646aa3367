"""The quadratic generators and their orbit analysis.

Two conjugate maps over F_p drive everything: the logistic map
s -> 4s(s+1) and the degree-2 Dickson map x -> x^2 - 2.  The affine change
of variable x = 4s + 2 carries orbits of the first onto orbits of the
second, which is what makes the order-based period prediction work.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import BudgetExceededError, DomainError, InvalidFieldError
from .numtheory import (
    factorize,
    fp2_context,
    is_prime,
    legendre,
    mult_order,
    order_up_to_sign,
    split_two_power,
    sqrt_mod,
)

KIND_LOGISTIC = "logistic"
KIND_DICKSON = "dickson2"
KIND_LOGISTIC_GENERAL = "logistic_general"

_KINDS = (KIND_LOGISTIC, KIND_DICKSON, KIND_LOGISTIC_GENERAL)


def logistic_map(s: int, p: int, mu: int = 4) -> int:
    """One logistic step mu * s * (s + 1) mod p."""
    return mu * s * (s + 1) % p


def dickson2_map(x: int, p: int) -> int:
    """One degree-2 Dickson step x^2 - 2 mod p."""
    return (x * x - 2) % p


def conjugate_seed(s: int, p: int) -> int:
    """Map a logistic state to the Dickson state 4s + 2 that shadows it."""
    return (4 * s + 2) % p


def dickson_eval(e: int, x: int, a: int, p: int) -> int:
    """Degree-e Dickson polynomial value D_e(x, a) mod p.

    O(log e) Lucas-style ladder for the recurrence D_0 = 2, D_1 = x,
    D_e = x * D_{e-1} - a * D_{e-2}, using the doubling identities
    D_{2k} = D_k^2 - 2a^k and D_{2k+1} = D_k * D_{k+1} - a^k * x.
    """
    if e < 0:
        raise DomainError(f"Dickson degree must be >= 0, got {e}")
    x %= p
    a %= p
    if e == 0:
        return 2 % p
    lo, hi = 2 % p, x  # D_k, D_{k+1} for k = 0
    ak = 1  # a^k
    for bit in bin(e)[2:]:
        mid = (lo * hi - ak * x) % p
        if bit == "1":
            lo = mid
            hi = (hi * hi - 2 * ak * a) % p
            ak = ak * ak * a % p
        else:
            hi = mid
            lo = (lo * lo - 2 * ak) % p
            ak = ak * ak % p
    return lo


@dataclass(frozen=True, slots=True)
class GeneratorSpec:
    """Which map to iterate, over which field, from which seed."""

    kind: str
    p: int
    seed: int
    mu: int | None = None

    def __post_init__(self) -> None:
        if self.kind not in _KINDS:
            raise DomainError(f"unknown generator kind {self.kind!r}")
        if not is_prime(self.p) or self.p == 2:
            raise InvalidFieldError(f"{self.p} is not an odd prime")
        if self.kind != KIND_DICKSON and self.p <= 3:
            raise DomainError(f"logistic kinds need p > 3, got p={self.p}")
        if self.kind == KIND_LOGISTIC_GENERAL:
            if self.mu is None or self.mu % self.p == 0:
                raise DomainError("logistic_general needs a nonzero control parameter mu")
        object.__setattr__(self, "seed", self.seed % self.p)


def step(spec: GeneratorSpec, s: int) -> int:
    """Apply the spec's map once to state s."""
    if spec.kind == KIND_LOGISTIC:
        return logistic_map(s, spec.p)
    if spec.kind == KIND_DICKSON:
        return dickson2_map(s, spec.p)
    return logistic_map(s, spec.p, spec.mu % spec.p)


@dataclass(frozen=True)
class OrbitReport:
    """Exact tail and cycle of an iterated-map orbit."""

    tail: list[int]
    cycle: list[int]

    @property
    def tail_length(self) -> int:
        return len(self.tail)

    @property
    def period(self) -> int:
        return len(self.cycle)


def orbit(spec: GeneratorSpec, max_steps: int | None = None) -> OrbitReport:
    """Iterate from the seed until the first repeated state.

    First-repeat detection with a hash map keeps the exact tail, which the
    cycle-structure bookkeeping needs.  Any max_steps >= p is guaranteed to
    suffice; smaller budgets raise BudgetExceededError if exhausted.
    """
    budget = max_steps if max_steps is not None else spec.p
    seen = {spec.seed: 0}
    seq = [spec.seed]
    for i in range(1, budget + 1):
        nxt = step(spec, seq[-1])
        if nxt in seen:
            start = seen[nxt]
            return OrbitReport(tail=seq[:start], cycle=seq[start:])
        seen[nxt] = i
        seq.append(nxt)
    raise BudgetExceededError(f"no repeat within {budget} steps from seed {spec.seed} mod {spec.p}")


def logistic_preimages(a: int, p: int) -> tuple[int, ...]:
    """All x with 4x(x+1) = a mod p, sorted; solved via (2x+1)^2 = a + 1."""
    a %= p
    rhs = (a + 1) % p
    inv2 = (p + 1) // 2
    if rhs == 0:
        return ((p - 1) * inv2 % p,)
    if legendre(rhs, p) == -1:
        return ()
    r = sqrt_mod(rhs, p)
    return tuple(sorted(((r - 1) * inv2 % p, (-r - 1) * inv2 % p)))


@dataclass(frozen=True, slots=True)
class OrbitPrediction:
    """Analytically predicted tail length and period for an orbit.

    degenerate is set when the underlying parameter has 2-power order
    (Dickson seeds on the 0 -> -2 -> 2 spine), where the period is 1.
    """

    tail_length: int
    period: int
    degenerate: bool = False


def _order_of_quadratic_root(u: int, p: int) -> int:
    """Order of a root of X^2 - u*X + 1 in the multiplicative group of F_{p^2}."""
    inv2 = (p + 1) // 2
    disc = (u * u - 4) % p
    if disc == 0:
        t = u * inv2 % p  # t = 1 or p - 1
        return 1 if t == 1 else 2
    if legendre(disc, p) == 1:
        t = (u + sqrt_mod(disc, p)) * inv2 % p
        return mult_order(t, p, factorize(p - 1))
    ctx = fp2_context(p)
    c1 = sqrt_mod(disc * pow(ctx.non_residue, -1, p) % p, p)
    t = ctx.elem(u * inv2, c1 * inv2)
    # The two roots are Frobenius conjugates with product 1, so norm(t) = 1
    # and the order divides p + 1.
    return ctx.element_order(t, p + 1)


def predict_orbit(p: int, seed: int, seed_class: str = "iv_set") -> OrbitPrediction:
    """Predict (tail length, period) of the logistic orbit of seed mod p.

    seed_class "iv_set" requires the seed to lie in the long-period
    initial-value set and derives the orbit shape from the order of a
    hyperbola-parameter preimage: writing that order as 2^e * m with m odd,
    the tail is 0 for e = 0 and e - 1 otherwise, and the period is the
    least k with 2^k = +-1 mod m.

    seed_class "any" accepts every seed and works on the conjugate Dickson
    seed 4s + 2 via a root of X^2 - (4s+2)X + 1; there the tail is e.  The
    conjugation is a bijection on states, so tail and period apply to the
    logistic orbit of the seed as well.
    """
    if not is_prime(p) or p <= 3:
        raise InvalidFieldError(f"{p} is not a prime > 3")
    seed %= p
    if seed_class == "iv_set":
        sign = 1 if p % 4 == 3 else -1
        if legendre(seed, p) != sign or legendre(seed + 1, p) != 1:
            raise DomainError(f"seed {seed} is not in the initial-value set of F_{p}")
        if p % 4 == 3:
            t = (sqrt_mod(seed, p) + sqrt_mod(seed + 1, p)) % p
            order = mult_order(t, p, factorize(p - 1))
        else:
            ctx = fp2_context(p)
            c1 = sqrt_mod(seed * pow(ctx.non_residue, -1, p) % p, p)
            t = ctx.elem(sqrt_mod(seed + 1, p), c1)
            order = ctx.element_order(t, p + 1)
        e, m = split_two_power(order)
        # Parameters of the initial-value set always have m >= 3: the
        # 2-power-order elements of either parameter group are just +-1.
        return OrbitPrediction(tail_length=0 if e == 0 else e - 1, period=order_up_to_sign(m))
    if seed_class == "any":
        order = _order_of_quadratic_root(conjugate_seed(seed, p), p)
        e, m = split_two_power(order)
        if m == 1:
            return OrbitPrediction(tail_length=e, period=1, degenerate=True)
        return OrbitPrediction(tail_length=e, period=order_up_to_sign(m))
    raise DomainError(f"unknown seed class {seed_class!r}")
