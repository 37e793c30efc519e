#!/usr/bin/env python3
"""
Polynomials, Cosets and CRT Lifting

Univariate polynomial helpers over F_q together with the coset structure used
by the locality constructions: the evaluation set {1, g, ..., g^(n-1)} of a
primitive n-th root g is split into the subgroup generated by g^nu and its
nu cosets. Each coset has an annihilator x^n_l - (g^i)^n_l, and the CRT
idempotents e_i(x) glue nu low-degree "local" polynomials into one lifted
polynomial of degree < n.
"""

import logging
from dataclasses import dataclass
from typing import Dict, List, Sequence, Tuple

import galois
import numpy as np

from ec_errors import FieldError, ParameterError
from gf import GfContext, GfElement, from_hex, primitive_nth_root, to_hex

logger = logging.getLogger(__name__)

Poly = galois.Poly


@dataclass(frozen=True, eq=False)
class CosetStructure:
    """Evaluation cosets, annihilators and idempotents for (n, n_l).

    ``idempotent_coeffs[s, a]`` is the coefficient of x^(a*n_l) in e_s(x);
    every other coefficient of e_s is zero.
    """

    ctx: GfContext
    n: int
    n_l: int
    nu: int
    gamma: GfElement
    cosets: Tuple[GfElement, ...]
    annihilators: Tuple[Poly, ...]
    idempotents: Tuple[Poly, ...]
    idempotent_coeffs: GfElement
    modulus_poly: Poly

    @property
    def points(self) -> GfElement:
        """All n evaluation points, coset-major."""
        return self.ctx.field(np.concatenate([np.asarray(c) for c in self.cosets]))

    def coset_of(self, position: int) -> int:
        return position // self.n_l


@dataclass(frozen=True)
class LinearForm:
    """One coefficient of a lifted polynomial as a linear form in the parts.

    ``terms`` pairs a part index s with the idempotent coefficient e_s[a]
    multiplying that part's coefficient b.
    """

    index: int
    a: int
    b: int
    terms: Tuple[Tuple[int, GfElement], ...]


@dataclass(frozen=True)
class LiftedCoefficientMap:
    support: Tuple[int, ...]
    forms: Dict[int, LinearForm]
    r_deg: int
    nu: int

    def as_matrix(self, cs: CosetStructure) -> GfElement:
        """n x (nu*r_deg) matrix taking stacked part coefficients to lifted ones."""
        matrix = cs.ctx.zeros((cs.n, self.nu * self.r_deg))
        for t, form in self.forms.items():
            for s, coeff in form.terms:
                matrix[t, s * self.r_deg + form.b] = coeff
        return matrix


def zero_poly(ctx: GfContext) -> Poly:
    return Poly.Zero(ctx.field)


def poly_from_coeffs(ctx: GfContext, coeffs: Sequence) -> Poly:
    """Polynomial from ascending coefficients (index = degree)."""
    values = coeffs if isinstance(coeffs, galois.FieldArray) else ctx.vector(coeffs)
    if values.size == 0:
        return zero_poly(ctx)
    return Poly(values, order="asc")


def poly_coeffs(p: Poly, size: int) -> GfElement:
    """Ascending coefficients of ``p`` padded to ``size``."""
    if p.degree >= size:
        raise ParameterError(f"Polynomial of degree {p.degree} does not fit {size} coefficients")
    return p.coefficients(size, order="asc")


def poly_mod(a: Poly, f: Poly) -> Poly:
    if f == Poly.Zero(f.field):
        raise FieldError("Division by the zero polynomial")
    return a % f


def evaluate(p: Poly, points: GfElement) -> GfElement:
    """Horner evaluation of ``p`` at every point."""
    return p(points)


def interpolate(xs: GfElement, ys: GfElement) -> Poly:
    """Unique polynomial of degree < len(xs) through the given points."""
    field_cls = type(xs)
    if len(xs) != len(ys):
        raise FieldError("Abscissae and ordinates differ in length")
    if len(xs) == 0:
        return Poly.Zero(field_cls)
    if len(set(int(x) for x in xs)) != len(xs):
        raise FieldError("Interpolation points must have distinct abscissae")
    if len(xs) == 1:
        return Poly(ys[:1])
    return galois.lagrange_poly(xs, ys)


def build_cosets(ctx: GfContext, n: int, n_l: int) -> CosetStructure:
    """Cosets of the order-n_l subgroup of <gamma>, with annihilators and idempotents.

    Args:
        ctx: Field context; n must divide q - 1
        n: Code length (size of the evaluation set)
        n_l: Local length; must divide n

    Returns:
        CosetStructure with idempotents computed by extended Euclid
    """
    if n_l < 1 or n % n_l != 0:
        raise ParameterError(f"n_l={n_l} must divide n={n}", invariant="n_l | n")
    if ctx.group_order % n != 0:
        raise ParameterError(f"n={n} must divide q-1={ctx.group_order}", invariant="n | q-1")

    field_cls = ctx.field
    nu = n // n_l
    gamma = primitive_nth_root(ctx, n)
    subgroup = (gamma ** nu) ** np.arange(n_l)
    cosets = tuple((gamma ** i) * subgroup for i in range(nu))

    x_nl = Poly.Degrees([n_l], field=field_cls)
    annihilators = tuple(x_nl - Poly([int((gamma ** i) ** n_l)], field=field_cls) for i in range(nu))
    modulus_poly = Poly.Degrees([n], field=field_cls) - Poly.One(field_cls)

    idempotents = []
    coeffs = ctx.zeros((nu, nu))
    for i, f_i in enumerate(annihilators):
        cofactor = modulus_poly // f_i
        _, _, t = galois.egcd(f_i, cofactor)
        e_i = (t * cofactor) % modulus_poly
        dense = poly_coeffs(e_i, n)
        strided = dense[::n_l]
        # e_i must live in span{x^(a*n_l)}
        rest = dense.copy()
        rest[::n_l] = 0
        if np.any(rest != 0) or (nu > 1 and e_i.degree != n_l * (nu - 1)):
            raise FieldError(f"Idempotent e_{i} has unexpected support (degree {e_i.degree})")
        coeffs[i, :] = strided
        idempotents.append(e_i)

    logger.debug("Built %d cosets of size %d over GF(%d), gamma=%s", nu, n_l, ctx.q, int(gamma))
    return CosetStructure(
        ctx=ctx,
        n=n,
        n_l=n_l,
        nu=nu,
        gamma=gamma,
        cosets=cosets,
        annihilators=annihilators,
        idempotents=tuple(idempotents),
        idempotent_coeffs=coeffs,
        modulus_poly=modulus_poly,
    )


def lift(parts: Sequence[Poly], cs: CosetStructure) -> Poly:
    """Unique M(x) of degree < n with M mod f_i = parts[i] for every coset."""
    if len(parts) != cs.nu:
        raise ParameterError(f"Expected {cs.nu} parts, got {len(parts)}")
    lifted = Poly.Zero(cs.ctx.field)
    for part, e_i in zip(parts, cs.idempotents):
        if part.degree >= cs.n_l:
            raise ParameterError(f"Part of degree {part.degree} exceeds n_l - 1 = {cs.n_l - 1}")
        lifted = lifted + part * e_i
    return lifted % cs.modulus_poly


def residues(p: Poly, cs: CosetStructure) -> List[Poly]:
    """The local polynomials p mod f_i, one per coset."""
    return [poly_mod(p, f_i) for f_i in cs.annihilators]


def lifted_coefficient_map(cs: CosetStructure, r_deg: int) -> LiftedCoefficientMap:
    """Coefficient forms of lifted polynomials whose parts have degree < r_deg.

    For t = a*n_l + b the lifted coefficient is sum_s e_s[a] * part_s[b] when
    b < r_deg and identically zero otherwise.
    """
    if not 1 <= r_deg <= cs.n_l:
        raise ParameterError(f"r_deg={r_deg} must lie in [1, {cs.n_l}]")
    forms = {}
    for a in range(cs.nu):
        for b in range(r_deg):
            t = a * cs.n_l + b
            terms = tuple((s, cs.idempotent_coeffs[s, a]) for s in range(cs.nu))
            forms[t] = LinearForm(index=t, a=a, b=b, terms=terms)
    return LiftedCoefficientMap(support=tuple(sorted(forms)), forms=forms, r_deg=r_deg, nu=cs.nu)


def poly_to_hex(p: Poly, size: int = 0) -> List[str]:
    size = max(size, p.degree + 1)
    return [to_hex(c) for c in p.coefficients(size, order="asc")]


def poly_from_hex(ctx: GfContext, items: Sequence[str]) -> Poly:
    values = [int(from_hex(ctx, item)) for item in items]
    return poly_from_coeffs(ctx, values)
