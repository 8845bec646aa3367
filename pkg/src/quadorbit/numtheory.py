"""Exact arithmetic over F_p and its quadratic extension.

Elements of F_p are plain Python ints reduced into [0, p); the quadratic
extension F_{p^2} gets a real element class because its arithmetic is not
built into the language.  Everything here is pure and deterministic: the
same inputs always produce the same outputs, byte for byte.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd

from .errors import InvalidElementError, InvalidFieldError

# Deterministic Miller-Rabin witnesses, valid for every n < 3.3 * 10^24
# (covers the full 64-bit range this package is specified for).
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53)

_TRIAL_DIVISION_LIMIT = 10**6


@lru_cache(maxsize=None)
def is_prime(n: int) -> bool:
    """Deterministic primality test for n >= 0 (no probabilistic failures)."""
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def primes_up_to(n: int) -> list[int]:
    """All primes <= n by a sieve of Eratosthenes."""
    if n < 2:
        return []
    sieve = bytearray(b"\x01") * (n + 1)
    sieve[0] = sieve[1] = 0
    for p in range(2, int(n**0.5) + 1):
        if sieve[p]:
            start = p * p
            sieve[start :: p] = b"\x00" * ((n - start) // p + 1)
    return [i for i, flag in enumerate(sieve) if flag]


def primes_in_range(lo: int, hi: int) -> list[int]:
    """All primes p with lo <= p < hi."""
    return [p for p in primes_up_to(hi - 1) if p >= lo]


def legendre(a: int, p: int) -> int:
    """Legendre symbol of a modulo an odd prime p: one of -1, 0, +1.

    Computed by the quadratic-reciprocity (Jacobi) iteration rather than by
    Euler's criterion; the criterion is kept as a test oracle only.
    """
    if p == 2 or not is_prime(p):
        raise InvalidFieldError(f"{p} is not an odd prime")
    a %= p
    if a == 0:
        return 0
    result = 1
    n = p
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result


def sqrt_mod(a: int, p: int) -> int:
    """A square root of a modulo an odd prime p, normalized to min(r, p - r).

    Tonelli-Shanks, with the direct exponentiation shortcut for p = 3 mod 4.
    Raises DomainError (via legendre's residue check) if a is a non-residue.
    """
    a %= p
    if a == 0:
        return 0
    if legendre(a, p) != 1:
        raise InvalidElementError(f"{a} is not a quadratic residue mod {p}")
    if p % 4 == 3:
        r = pow(a, (p + 1) // 4, p)
        return min(r, p - r)
    # Write p - 1 = q * 2^s with q odd.
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while legendre(z, p) != -1:
        z += 1
    c = pow(z, q, p)
    r = pow(a, (q + 1) // 2, p)
    t = pow(a, q, p)
    m = s
    while t != 1:
        t2i = t
        i = 0
        for i in range(1, m):
            t2i = t2i * t2i % p
            if t2i == 1:
                break
        b = pow(c, 1 << (m - i - 1), p)
        r = r * b % p
        c = b * b % p
        t = t * c % p
        m = i
    return min(r, p - r)


def _brent_rho(n: int) -> int:
    """A nontrivial factor of composite n (Brent's cycle-detection rho).

    The parameter sequence is fixed, so the factor found is deterministic.
    """
    if n % 2 == 0:
        return 2
    for c in range(1, n):
        y, r, q = 2, 1, 1
        g, x, ys = 1, y, y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(128, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = gcd(q, n)
                k += 128
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = gcd(abs(x - ys), n)
        if g != n:
            return g
    raise ArithmeticError(f"rho failed to split {n}")  # unreachable for composite n


@lru_cache(maxsize=None)
def _factorize(n: int) -> tuple[tuple[int, int], ...]:
    factors: dict[int, int] = {}
    d = 2
    while d * d <= n and d <= _TRIAL_DIVISION_LIMIT:
        while n % d == 0:
            factors[d] = factors.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        if is_prime(m):
            factors[m] = factors.get(m, 0) + 1
        else:
            f = _brent_rho(m)
            stack.append(f)
            stack.append(m // f)
    return tuple(sorted(factors.items()))


def factorize(n: int) -> dict[int, int]:
    """Complete prime factorization of n >= 1 as {prime: exponent}.

    Trial division up to 10^6, then Brent-rho for any remaining cofactor;
    results are cached, so repeated calls are cheap.
    """
    if n < 1:
        raise InvalidElementError(f"cannot factorize {n}")
    return dict(_factorize(n))


def divisors(n: int) -> list[int]:
    """All positive divisors of n, sorted ascending."""
    divs = [1]
    for prime, exp in _factorize(n):
        divs = [d * prime**k for d in divs for k in range(exp + 1)]
    return sorted(divs)


def euler_phi(n: int) -> int:
    """Euler's totient of n >= 1."""
    phi = 1
    for prime, exp in _factorize(n):
        phi *= prime ** (exp - 1) * (prime - 1)
    return phi


def mult_order(g: int, n: int, group_order_factorization: dict[int, int] | None = None) -> int:
    """Order of g in (Z/nZ)^x: the least k >= 1 with g^k = 1 mod n.

    Starts from the group order (Euler's totient of n, or any multiple of
    the order supplied by the caller) and divides out prime factors.
    """
    g %= n
    if g == 0 or gcd(g, n) != 1:
        raise InvalidElementError(f"{g} is not invertible mod {n}")
    fact = group_order_factorization
    if fact is None:
        fact = factorize(euler_phi(n))
    k = 1
    for prime, exp in fact.items():
        k *= prime**exp
    for prime in fact:
        while k % prime == 0 and pow(g, k // prime, n) == 1:
            k //= prime
    return k


def order_up_to_sign(m: int, g: int = 2) -> int:
    """Least k >= 1 with g^k = +1 or -1 mod m, for odd m >= 3.

    Equals the order of g mod m when -1 is not a power of g, and half the
    order otherwise.
    """
    if m < 3 or m % 2 == 0:
        raise InvalidElementError(f"order up to sign needs odd m >= 3, got {m}")
    k = mult_order(g, m)
    if k % 2 == 0 and pow(g, k // 2, m) == m - 1:
        return k // 2
    return k


def split_two_power(n: int) -> tuple[int, int]:
    """Write n = 2^e * m with m odd; returns (e, m)."""
    e = 0
    while n % 2 == 0:
        n //= 2
        e += 1
    return e, n


@dataclass(frozen=True, slots=True)
class Fp2Element:
    """c0 + c1*a in F_{p^2}, where a is a fixed square root of a non-residue."""

    c0: int
    c1: int
    ctx: "Fp2Context"

    def __add__(self, other: "Fp2Element") -> "Fp2Element":
        p = self.ctx.p
        return Fp2Element((self.c0 + other.c0) % p, (self.c1 + other.c1) % p, self.ctx)

    def __sub__(self, other: "Fp2Element") -> "Fp2Element":
        p = self.ctx.p
        return Fp2Element((self.c0 - other.c0) % p, (self.c1 - other.c1) % p, self.ctx)

    def __neg__(self) -> "Fp2Element":
        p = self.ctx.p
        return Fp2Element(-self.c0 % p, -self.c1 % p, self.ctx)

    def __mul__(self, other: "Fp2Element") -> "Fp2Element":
        p, ns = self.ctx.p, self.ctx.non_residue
        c0 = (self.c0 * other.c0 + ns * self.c1 * other.c1) % p
        c1 = (self.c0 * other.c1 + self.c1 * other.c0) % p
        return Fp2Element(c0, c1, self.ctx)

    def __pow__(self, e: int) -> "Fp2Element":
        base = self.inverse() if e < 0 else self
        e = abs(e)
        result = self.ctx.one
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def inverse(self) -> "Fp2Element":
        nrm = self.norm()
        if nrm == 0:
            raise InvalidElementError("zero has no inverse")
        inv_norm = pow(nrm, -1, self.ctx.p)
        return Fp2Element(self.c0 * inv_norm % self.ctx.p, -self.c1 * inv_norm % self.ctx.p, self.ctx)

    def frobenius(self) -> "Fp2Element":
        """The p-power map; on this representation it just flips the sign of c1."""
        return Fp2Element(self.c0, -self.c1 % self.ctx.p, self.ctx)

    def norm(self) -> int:
        """Norm down to F_p: c0^2 - non_residue * c1^2."""
        return (self.c0 * self.c0 - self.ctx.non_residue * self.c1 * self.c1) % self.ctx.p

    def in_base_field(self) -> bool:
        return self.c1 == 0

    def __repr__(self) -> str:
        return f"({self.c0}+{self.c1}a mod {self.ctx.p})"


@dataclass(frozen=True, slots=True)
class Fp2Context:
    """Arithmetic context for F_{p^2} = F_p(a) with a^2 = non_residue."""

    p: int
    non_residue: int

    def elem(self, c0: int, c1: int = 0) -> Fp2Element:
        return Fp2Element(c0 % self.p, c1 % self.p, self)

    @property
    def one(self) -> Fp2Element:
        return Fp2Element(1, 0, self)

    def element_order(self, x: Fp2Element, group_order: int | None = None) -> int:
        """Order of x in the multiplicative group F_{p^2}^x.

        Callers that know a smaller multiple of the order (e.g. p + 1 for
        norm-one elements) can pass it to skip factoring p^2 - 1.
        """
        if x.c0 == 0 and x.c1 == 0:
            raise InvalidElementError("zero has no multiplicative order")
        n = group_order if group_order is not None else self.p * self.p - 1
        k = n
        for prime in factorize(n):
            while k % prime == 0 and (x ** (k // prime)) == self.one:
                k //= prime
        return k


def fp2_context(p: int) -> Fp2Context:
    """Quadratic extension context for an odd prime p.

    The non-residue is the smallest positive one, so representations (and
    any tables printed from them) are reproducible across runs.
    """
    if p == 2 or not is_prime(p):
        raise InvalidFieldError(f"{p} is not an odd prime")
    ns = 2
    while legendre(ns, p) != -1:
        ns += 1
    return Fp2Context(p, ns)
