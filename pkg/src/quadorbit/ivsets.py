"""Long-period initial-value sets and their hyperbola parametrization.

The seeds guaranteed to sit on logistic cycles are cut out by two Legendre
conditions: for p = 3 mod 4 both a and a + 1 must be nonzero squares, for
p = 1 mod 4 the element a must be a non-square while a + 1 is a square.
Each such set is the image of a four-to-one map t -> ((t - 1/t)/2)^2 whose
parameter t ranges over F_p minus {0, +-1} in the first case (the split
torus) and over the norm-one subgroup of F_{p^2} minus {+-1} in the second.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DegenerateParameterError, DomainError, InvalidFieldError
from .generator import logistic_map, logistic_preimages
from .numtheory import Fp2Element, fp2_context, is_prime, legendre, sqrt_mod

KIND_SPLIT = "split"
KIND_NORM_ONE = "norm_one"


def param_kind(p: int) -> str:
    """Which parameter space F_p uses: split for p = 3 mod 4, norm_one else."""
    if not is_prime(p) or p <= 3:
        raise InvalidFieldError(f"{p} is not a prime > 3")
    return KIND_SPLIT if p % 4 == 3 else KIND_NORM_ONE


def in_iv_set(a: int, p: int) -> bool:
    """Membership test for the initial-value set of F_p."""
    sign = 1 if param_kind(p) == KIND_SPLIT else -1
    a %= p
    return legendre(a, p) == sign and legendre(a + 1, p) == 1


@dataclass(frozen=True)
class IvSet:
    """The initial-value set of F_p, with the parameter space it comes from."""

    p: int
    kind: str
    elements: list[int]

    @property
    def expected_size(self) -> int:
        return (self.p - 3) // 4 if self.kind == KIND_SPLIT else (self.p - 1) // 4


def build_iv_set(p: int) -> IvSet:
    """Exact membership scan over F_p.

    Built from a residue table rather than through the parametrization, so
    it stays an independent oracle for the latter.
    """
    kind = param_kind(p)
    squares = {x * x % p for x in range(1, p)}
    if kind == KIND_SPLIT:
        elements = [a for a in range(1, p - 1) if a in squares and a + 1 in squares]
    else:
        elements = [a for a in range(1, p - 1) if a not in squares and a + 1 in squares]
    return IvSet(p=p, kind=kind, elements=elements)


def _seed_from_split_param(t: int, p: int) -> int:
    t %= p
    if t in (0, 1, p - 1):
        raise DegenerateParameterError(f"parameter {t} mod {p} is outside the split torus")
    half_diff = (t - pow(t, -1, p)) * ((p + 1) // 2) % p
    return half_diff * half_diff % p


def _seed_from_norm_one_param(t: Fp2Element) -> int:
    p = t.ctx.p
    if t.norm() != 1:
        raise DomainError(f"parameter {t} does not have norm 1")
    if t.c1 == 0:
        raise DegenerateParameterError(f"parameter {t} is +-1")
    diff = t - t.inverse()
    inv2 = (p + 1) // 2
    half_diff = Fp2Element(diff.c0 * inv2 % p, diff.c1 * inv2 % p, t.ctx)
    sq = half_diff * half_diff
    if sq.c1 != 0:
        raise AssertionError(f"image of {t} left the base field")
    return sq.c0


def seed_from_param(t: int | Fp2Element, p: int | None = None) -> int:
    """Image of a hyperbola parameter in the initial-value set.

    Split parameters are ints (p required); norm-one parameters are
    Fp2Element values carrying their own context.
    """
    if isinstance(t, Fp2Element):
        return _seed_from_norm_one_param(t)
    if p is None:
        raise DomainError("split parameters need the modulus p")
    return _seed_from_split_param(t, p)


def _norm_one_params(p: int) -> list[Fp2Element]:
    """The norm-one subgroup of F_{p^2}^x minus {+-1}, sorted by (c0, c1)."""
    ctx = fp2_context(p)
    inv_ns = pow(ctx.non_residue, -1, p)
    params = []
    for c0 in range(p):
        rhs = (c0 * c0 - 1) * inv_ns % p
        if rhs == 0:
            continue  # t = +-1
        if legendre(rhs, p) == 1:
            c1 = sqrt_mod(rhs, p)
            params.append(ctx.elem(c0, c1))
            params.append(ctx.elem(c0, p - c1))
    params.sort(key=lambda t: (t.c0, t.c1))
    return params


def param_fibers(p: int) -> dict[int, list[int] | list[Fp2Element]]:
    """Map every initial-value element to its four parameter preimages.

    Fibers are sorted (ints ascending, extension elements by (c0, c1)) and
    are closed under t -> -t and t -> 1/t.
    """
    fibers: dict[int, list] = {}
    if param_kind(p) == KIND_SPLIT:
        for t in range(2, p - 1):
            fibers.setdefault(_seed_from_split_param(t, p), []).append(t)
    else:
        for t in _norm_one_params(p):
            fibers.setdefault(_seed_from_norm_one_param(t), []).append(t)
    for a, fiber in fibers.items():
        if len(fiber) != 4:
            raise AssertionError(f"fiber of {a} mod {p} has size {len(fiber)}")
    return dict(sorted(fibers.items()))


def canonical_param(a: int, p: int) -> int | Fp2Element:
    """The smallest parameter mapping to a (ints by value, else (c0, c1) order).

    Recovered from square roots of a and a + 1 in O(log p) rather than by
    scanning the parameter space; the tie-break is an artifact convention.
    """
    a %= p
    if not in_iv_set(a, p):
        raise DomainError(f"{a} is not in the initial-value set of F_{p}")
    if param_kind(p) == KIND_SPLIT:
        t = (sqrt_mod(a, p) + sqrt_mod(a + 1, p)) % p
        t_inv = pow(t, -1, p)
        return min(t, p - t, t_inv, p - t_inv)
    ctx = fp2_context(p)
    c1 = sqrt_mod(a * pow(ctx.non_residue, -1, p) % p, p)
    t = ctx.elem(sqrt_mod(a + 1, p), c1)
    t_inv = t.inverse()
    return min((t, -t, t_inv, -t_inv), key=lambda x: (x.c0, x.c1))


def conjugation_check(t: int | Fp2Element, p: int | None = None) -> tuple[int, int]:
    """Both sides of the transport law: (LM(image(t)), image(t^2)).

    Equality is the tested identity.  If t^2 lands on +-1 the right-hand
    image is undefined and DegenerateParameterError propagates; that cannot
    happen for valid parameters (the parameter groups have order 2 * odd),
    so it is signalled rather than silently skipped.
    """
    if isinstance(t, Fp2Element):
        a = _seed_from_norm_one_param(t)
        return logistic_map(a, t.ctx.p), _seed_from_norm_one_param(t * t)
    if p is None:
        raise DomainError("split parameters need the modulus p")
    a = _seed_from_split_param(t, p)
    return logistic_map(a, p), _seed_from_split_param(t * t % p, p)


def preimage_signs(a: int, p: int) -> tuple[int, int]:
    """Legendre symbols of the two logistic preimages of an IV element.

    Ordered by preimage value; the two signs always differ, which is what
    pins every initial-value element onto a cycle.
    """
    a %= p
    if not in_iv_set(a, p):
        raise DomainError(f"{a} is not in the initial-value set of F_{p}")
    pre = logistic_preimages(a, p)
    if len(pre) != 2:
        raise AssertionError(f"IV element {a} mod {p} has {len(pre)} preimages")
    return legendre(pre[0], p), legendre(pre[1], p)
