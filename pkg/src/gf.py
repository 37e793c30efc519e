#!/usr/bin/env python3
"""
Finite Field Arithmetic

Field contexts for prime fields GF(p) and binary extension fields GF(2^m),
m <= 16, built on top of ``galois`` field arrays. Scalars are 0-dimensional
``galois.FieldArray`` values; vectors and matrices are ordinary field arrays
of the same class, so numpy operators work on them directly.
"""

import logging
from dataclasses import dataclass, field as dataclass_field
from functools import lru_cache
from typing import Iterable, List, Optional, Sequence

import galois
import numpy as np

from code_constants import BINARY_FIELD_MODULI, MAX_BINARY_DEGREE
from ec_errors import FieldError

logger = logging.getLogger(__name__)

# Scalars, vectors and matrices are all galois field arrays
GfElement = galois.FieldArray


@dataclass(frozen=True)
class GfContext:
    """A finite field F_q together with the modulus that defines it.

    For prime fields ``modulus`` is the prime itself; for GF(2^m) it is the
    bitmask of the irreducible polynomial (leading term included).
    """

    q: int
    modulus: int
    field: type = dataclass_field(repr=False, compare=False)

    @property
    def characteristic(self) -> int:
        return int(self.field.characteristic)

    @property
    def group_order(self) -> int:
        """Order of the multiplicative group."""
        return self.q - 1

    def element(self, value: int) -> GfElement:
        if not 0 <= int(value) < self.q:
            raise FieldError(f"Value {value} is not a canonical element of GF({self.q})")
        return self.field(int(value))

    def vector(self, values: Iterable[int]) -> GfElement:
        return self.field([int(self.element(v)) for v in values])

    def zeros(self, shape) -> GfElement:
        return self.field.Zeros(shape)

    def zero(self) -> GfElement:
        return self.field(0)

    def one(self) -> GfElement:
        return self.field(1)

    def to_dict(self) -> dict:
        return {"q": self.q, "modulus": self.modulus}


@lru_cache(maxsize=None)
def make_context(q: int, modulus: Optional[int] = None) -> GfContext:
    """Build (or fetch the cached) field context for order ``q``.

    Args:
        q: Field order, a prime or a power of two up to 2^16
        modulus: Irreducible polynomial bitmask for GF(2^m); defaults to the
            fixed moduli table

    Returns:
        GfContext for the requested field
    """
    if q < 2:
        raise FieldError(f"Field order must be at least 2, got {q}")

    if galois.is_prime(q):
        if modulus is not None and modulus != q:
            raise FieldError(f"Prime field GF({q}) cannot use modulus {modulus}")
        return GfContext(q=q, modulus=q, field=galois.GF(q))

    if q & (q - 1) == 0:
        m = q.bit_length() - 1
        if m > MAX_BINARY_DEGREE:
            raise FieldError(f"GF(2^{m}) exceeds the supported degree {MAX_BINARY_DEGREE}")
        mask = BINARY_FIELD_MODULI[m] if modulus is None else int(modulus)
        poly = galois.Poly.Int(mask)
        if poly.degree != m or not poly.is_irreducible():
            raise FieldError(f"Modulus {mask:#x} is not an irreducible polynomial of degree {m}")
        logger.debug("Building GF(2^%d) with modulus %#x", m, mask)
        return GfContext(q=q, modulus=mask, field=galois.GF(q, irreducible_poly=poly))

    raise FieldError(f"Field order {q} is neither a prime nor a power of two")


def _check_same_field(a: GfElement, b: GfElement) -> None:
    if type(a) is not type(b):
        raise FieldError(f"Context mismatch: {type(a).name} vs {type(b).name}")


def add(a: GfElement, b: GfElement) -> GfElement:
    _check_same_field(a, b)
    return a + b


def mul(a: GfElement, b: GfElement) -> GfElement:
    _check_same_field(a, b)
    return a * b


def inv(a: GfElement) -> GfElement:
    if int(a) == 0:
        raise FieldError("Zero has no multiplicative inverse")
    return a ** -1


def power(a: GfElement, e: int) -> GfElement:
    """Raise ``a`` to an integer power; ``a ** 0`` is one."""
    if int(a) == 0 and e < 0:
        raise FieldError("Zero cannot be raised to a negative power")
    return a ** int(e)


def element_order(a: GfElement) -> int:
    """Smallest e >= 1 with a^e = 1 (always a divisor of q - 1)."""
    if int(a) == 0:
        raise FieldError("Zero has no multiplicative order")
    field_cls = type(a)
    one = field_cls(1)
    for e in galois.divisors(int(field_cls.order) - 1):
        if a ** e == one:
            return int(e)
    # unreachable: a^(q-1) = 1 for every nonzero a
    raise FieldError(f"Could not determine the order of {a}")


def primitive_nth_root(ctx: GfContext, n: int) -> GfElement:
    """Smallest canonical element of multiplicative order exactly ``n``."""
    if n < 1 or ctx.group_order % n != 0:
        raise FieldError(f"n={n} does not divide q-1={ctx.group_order}")
    if n == 1:
        return ctx.one()
    for value in range(2, ctx.q):
        candidate = ctx.field(value)
        if element_order(candidate) == n:
            return candidate
    raise FieldError(f"GF({ctx.q}) has no element of order {n}")


def smallest_field_for(n: int, binary: bool = False) -> GfContext:
    """Smallest field whose multiplicative group has a subgroup of order ``n``.

    The default scans primes p = 1 (mod n). With ``binary=True`` the smallest
    GF(2^m), m <= 16, with n | 2^m - 1 is returned instead.
    """
    if n < 1:
        raise FieldError(f"Code length must be positive, got {n}")

    if binary:
        for m in range(1, MAX_BINARY_DEGREE + 1):
            if ((1 << m) - 1) % n == 0:
                return make_context(1 << m)
        raise FieldError(f"No GF(2^m) with m <= {MAX_BINARY_DEGREE} has n={n} | q-1")

    candidate = n + 1
    while not galois.is_prime(candidate):
        candidate += n
    logger.debug("Smallest prime field for n=%d is GF(%d)", n, candidate)
    return make_context(candidate)


def random_elements(ctx: GfContext, shape, rng: np.random.Generator) -> GfElement:
    """Uniform field elements drawn from a seeded numpy generator."""
    return ctx.field(rng.integers(0, ctx.q, size=shape))


def to_hex(a: GfElement) -> str:
    return format(int(a), "x")


def from_hex(ctx: GfContext, text: str) -> GfElement:
    try:
        value = int(text, 16)
    except (TypeError, ValueError) as exc:
        raise FieldError(f"Invalid hex field element: {text!r}") from exc
    return ctx.element(value)


def vector_to_hex(values: Sequence) -> List[str]:
    return [to_hex(v) for v in np.asarray(values).ravel()]


def vector_from_hex(ctx: GfContext, items: Sequence[str]) -> GfElement:
    return ctx.vector(int(from_hex(ctx, item)) for item in items)
