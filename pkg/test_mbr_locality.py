#!/usr/bin/env python3
"""
MBR-Locality Code Tests

Mostly the n=12, n_l=6, r=3, d=4, K=13 code over GF(13): two local
product-matrix MBR codes tied together by five dependencies.
"""

import os
import sys
from itertools import combinations

import numpy as np
import pytest

script_dir = os.path.dirname(os.path.abspath(__file__))
sys.path.insert(0, os.path.join(script_dir, 'src'))

from code_model import certify_locality
from codes.mbr_locality import (
    MbrLocalityParams, column_polynomial, column_support, degree_caps, dependency_table,
    expected_dimension, group_dimension, mbrloc_decode, mbrloc_encode, mbrloc_helper_symbol,
    mbrloc_local_repair, nearest_rate_optimal, rate_optimal_dimensions,
)
from ec_errors import DecodeError, ParameterError, RepairError
from gf import make_context, random_elements
from gf_linalg import rank, restrict_thick
from oracle import dmin_oracle, verify_rank_profile


def _params(K=13):
    return MbrLocalityParams.build(make_context(13), 12, 6, 3, 4, K)


def _codeword(params, seed):
    msg = random_elements(params.ctx, params.K, np.random.default_rng(seed))
    return msg, mbrloc_encode(msg, params)


def test_derived_parameters():
    params = _params()
    assert (params.nu, params.K_l, params.mu, params.rho, params.rho_inv) == (2, 9, 1, 4, 1)
    assert (params.alpha, params.beta, params.delta) == (4, 1, 4)
    assert degree_caps(params) == [9, 6, 6, 6]
    assert column_support(params, 0) == [0, 1, 2, 3, 6, 7, 8, 9]
    assert column_support(params, 3) == [0, 1, 2, 6, 7, 8]


def test_dependency_system():
    params = _params()
    system = params.system
    assert len(system.raw) == 8
    assert len(system.unique) == 5
    assert system.dimension == 13 == expected_dimension(params)
    table = dependency_table(system, params.nu)
    assert [(row["column"], row["count"]) for row in table] == [(3, 2), (2, 3), (1, 3)]
    assert table[0]["rows"][0] == {"t": 8, "form": "e0_1*m0_{2,3} + e1_1*m1_{2,3} = 0"}
    unique_entries = {(c.x, c.y) for c in system.unique}
    assert unique_entries == {(2, 3), (1, 3), (2, 2), (1, 2), (1, 1)}
    assert np.all(system.matrix @ system.kernel.T == 0)


def test_each_group_keeps_full_local_dimension():
    params = _params()
    for g in range(params.nu):
        assert group_dimension(params.system, params, g) == params.K_l


def test_no_dependencies_when_fully_stacked():
    params = _params(K=18)
    assert len(params.system.unique) == 0
    assert params.system.dimension == 18


def test_rate_optimal_dimensions():
    assert rate_optimal_dimensions(6, 3, 4, 2) == [9, 13, 16, 18]
    assert nearest_rate_optimal(6, 3, 4, 2, 12) == 13
    assert nearest_rate_optimal(6, 3, 4, 2, 11) == 9


def test_invalid_dimensions_name_the_nearest_valid_k():
    with pytest.raises(ParameterError) as info:
        _params(K=12)
    assert info.value.nearest == 13
    with pytest.raises(ParameterError) as info:
        _params(K=8)
    assert info.value.nearest == 9
    with pytest.raises(ParameterError):
        MbrLocalityParams.build(make_context(13), 12, 5, 3, 4, 13)
    with pytest.raises(ParameterError):
        MbrLocalityParams.build(make_context(13), 12, 6, 3, 6, 13)


def test_column_polynomials_respect_degree_caps():
    params = _params()
    _, word = _codeword(params, 41)
    for j, cap in enumerate(degree_caps(params)):
        assert column_polynomial(word, j, params).degree <= cap


def test_local_rank_profile():
    params = _params()
    g = params.generator
    for group in params.locality().groups:
        local = restrict_thick(g, params.alpha, group)
        assert rank(local) == params.K_l
        assert verify_rank_profile(local, params.alpha, params.rank_profile())


def test_local_repair_from_every_helper_set():
    params = _params()
    _, word = _codeword(params, 42)
    for failed in range(params.n):
        group = failed // params.n_l
        members = [p for p in range(group * 6, group * 6 + 6) if p != failed]
        for helpers in combinations(members, params.d):
            helpers = list(helpers)
            symbols = params.ctx.field([int(mbrloc_helper_symbol(word.node(h), failed, params)) for h in helpers])
            assert np.array_equal(mbrloc_local_repair(failed, helpers, symbols, params), word.node(failed))


def test_cross_group_helpers_are_rejected():
    params = _params()
    with pytest.raises(RepairError):
        mbrloc_local_repair(0, [1, 2, 3, 6], params.ctx.zeros(4), params)


def test_minimum_distance_and_decoding():
    params = _params()
    dmin = dmin_oracle(params.generator, params.alpha)
    assert dmin == 12 - 7 + 1
    msg, word = _codeword(params, 43)
    assert np.array_equal(mbrloc_decode(word.erase([0, 2, 5, 7, 11]), params), msg)
    with pytest.raises(DecodeError):
        mbrloc_decode(word.erase([0, 1, 2, 3, 4, 5]), params)


def test_locality_certificate():
    params = _params()
    assert certify_locality(params.generator, params.alpha, params.locality())


if __name__ == "__main__":
    for name, func in list(globals().items()):
        if name.startswith("test_") and callable(func):
            func()
            print(f"✅ {name}")
