#!/usr/bin/env python3
"""
Coset and CRT Lifting Tests

Uses the n=15, n_l=5 coset split of GF(16) and the n=12, n_l=6 split of GF(13).
"""

import os
import sys

import numpy as np
import pytest

script_dir = os.path.dirname(os.path.abspath(__file__))
sys.path.insert(0, os.path.join(script_dir, 'src'))

from ec_errors import FieldError, ParameterError
from gf import make_context, primitive_nth_root, random_elements
from poly_crt import (
    build_cosets, evaluate, interpolate, lift, lifted_coefficient_map, poly_coeffs,
    poly_from_coeffs, poly_from_hex, poly_mod, poly_to_hex, residues, zero_poly,
)


def _random_parts(cs, degree, rng):
    return [poly_from_coeffs(cs.ctx, random_elements(cs.ctx, degree + 1, rng)) for _ in range(cs.nu)]


def test_cosets_of_gf16():
    ctx = make_context(16)
    cs = build_cosets(ctx, 15, 5)
    gamma = primitive_nth_root(ctx, 15)
    assert cs.nu == 3
    base = gamma ** np.array([0, 3, 6, 9, 12])
    for i, coset in enumerate(cs.cosets):
        assert np.array_equal(coset, (gamma ** i) * base)
    assert len({int(p) for p in cs.points}) == 15


def test_annihilators_vanish_on_their_coset():
    cs = build_cosets(make_context(13), 12, 6)
    for i, f_i in enumerate(cs.annihilators):
        assert np.all(evaluate(f_i, cs.cosets[i]) == 0)
        other = cs.cosets[(i + 1) % cs.nu]
        assert np.all(evaluate(f_i, other) != 0)


def test_idempotents_are_coset_indicators():
    cs = build_cosets(make_context(16), 15, 5)
    for i, e_i in enumerate(cs.idempotents):
        for j, coset in enumerate(cs.cosets):
            expected = 1 if i == j else 0
            assert np.all(evaluate(e_i, coset) == expected)
        assert e_i.degree == 5 * (cs.nu - 1)


def test_lift_and_residues_round_trip():
    rng = np.random.default_rng(11)
    cs = build_cosets(make_context(16), 15, 5)
    for _ in range(10):
        parts = _random_parts(cs, 2, rng)
        lifted = lift(parts, cs)
        assert lifted.degree < 15
        assert residues(lifted, cs) == parts


def test_lifted_support_matches_monomial_pattern():
    rng = np.random.default_rng(12)
    cs = build_cosets(make_context(16), 15, 5)
    allowed = {0, 1, 2, 5, 6, 7, 10, 11, 12}
    for _ in range(10):
        lifted = lift(_random_parts(cs, 2, rng), cs)
        coeffs = poly_coeffs(lifted, 15)
        support = {t for t in range(15) if int(coeffs[t]) != 0}
        assert support <= allowed
    assert lifted_coefficient_map(cs, 3).support == (0, 1, 2, 5, 6, 7, 10, 11, 12)


def test_coefficient_map_matrix_matches_lift():
    rng = np.random.default_rng(13)
    cs = build_cosets(make_context(13), 12, 6)
    coefficient_map = lifted_coefficient_map(cs, 4)
    matrix = coefficient_map.as_matrix(cs)
    parts = _random_parts(cs, 3, rng)
    stacked = cs.ctx.field(np.concatenate([np.asarray(poly_coeffs(p, 4)) for p in parts]))
    assert np.array_equal(matrix @ stacked, poly_coeffs(lift(parts, cs), 12))


def test_lift_rejects_high_degree_parts():
    cs = build_cosets(make_context(13), 12, 6)
    parts = [poly_from_coeffs(cs.ctx, [1] * 7), zero_poly(cs.ctx)]
    with pytest.raises(ParameterError):
        lift(parts, cs)
    with pytest.raises(ParameterError):
        lift(parts[:1], cs)


def test_build_cosets_parameter_errors():
    ctx = make_context(16)
    with pytest.raises(ParameterError):
        build_cosets(ctx, 15, 4)
    with pytest.raises(ParameterError):
        build_cosets(ctx, 12, 6)


def test_interpolation():
    rng = np.random.default_rng(14)
    ctx = make_context(13)
    xs = ctx.vector([1, 2, 3, 4])
    p = poly_from_coeffs(ctx, random_elements(ctx, 4, rng))
    assert interpolate(xs, evaluate(p, xs)) == p
    assert interpolate(xs[:1], ctx.vector([7])) == poly_from_coeffs(ctx, [7])
    with pytest.raises(FieldError):
        interpolate(ctx.vector([1, 1]), ctx.vector([2, 3]))


def test_poly_mod_and_hex():
    ctx = make_context(13)
    p = poly_from_coeffs(ctx, [3, 0, 5])
    assert poly_to_hex(p) == ["3", "0", "5"]
    assert poly_from_hex(ctx, ["3", "0", "5"]) == p
    with pytest.raises(FieldError):
        poly_mod(p, zero_poly(ctx))


if __name__ == "__main__":
    for name, func in list(globals().items()):
        if name.startswith("test_") and callable(func):
            func()
            print(f"✅ {name}")
