#!/usr/bin/env python3
"""
Product-Matrix MBR Tests

The (n, k, d) = (5, 3, 4) code: message layout, encoding as polynomial
evaluation, exact repair from every helper set and data collection from
every k-subset of nodes.
"""

import os
import sys
from itertools import combinations

import numpy as np
import pytest

script_dir = os.path.dirname(os.path.abspath(__file__))
sys.path.insert(0, os.path.join(script_dir, 'src'))

from codes.pm_mbr import (
    PmMbrParams, check_helpers, message_entries, message_matrix, message_size,
    pm_data_collect, pm_encode, pm_helper_symbol, pm_repair,
)
from ec_errors import DecodeError, FieldError, ParameterError, RepairError
from gf import make_context, random_elements, smallest_field_for
from oracle import RankProfile, dmin_oracle, verify_rank_profile
from poly_crt import evaluate, poly_from_coeffs


def _params():
    return PmMbrParams.build(smallest_field_for(5), 5, 3, 4)


def test_parameters():
    params = _params()
    assert params.ctx.q == 11
    assert (params.B, params.alpha, params.beta) == (9, 4, 1)
    assert message_size(3, 4) == 9
    assert params.generator.shape == (9, 20)


def test_parameter_errors():
    ctx = make_context(11)
    with pytest.raises(ParameterError):
        PmMbrParams.build(ctx, 5, 4, 3)
    with pytest.raises(ParameterError):
        PmMbrParams.build(ctx, 5, 3, 5)
    with pytest.raises(ParameterError):
        PmMbrParams.build(ctx, 5, 3, 4, points=[1, 2, 3, 4, 4])
    with pytest.raises(FieldError):
        PmMbrParams.build(ctx, 5, 3, 4, points=[1, 2, 3, 4, 11])
    with pytest.raises(ParameterError):
        PmMbrParams.build(make_context(5), 5, 3, 4)


def test_message_matrix_layout():
    ctx = make_context(11)
    msg = ctx.vector(range(1, 10))
    m = message_matrix(ctx, msg, 3, 4)
    assert np.array_equal(m, m.T)
    assert int(m[3, 3]) == 0
    assert np.array_equal(message_entries(m, 3), msg)
    with pytest.raises(ParameterError):
        message_matrix(ctx, msg[:8], 3, 4)


def test_encoding_is_column_polynomial_evaluation():
    params = _params()
    msg = random_elements(params.ctx, params.B, np.random.default_rng(21))
    word = pm_encode(msg, params)
    m = message_matrix(params.ctx, msg, params.k, params.d)
    for j in range(params.d):
        column_poly = poly_from_coeffs(params.ctx, m[:, j])
        assert np.array_equal(word.nodes[:, j], evaluate(column_poly, params.points))


def test_exact_repair_from_every_helper_set():
    params = _params()
    for seed in range(100):
        msg = random_elements(params.ctx, params.B, np.random.default_rng(seed))
        word = pm_encode(msg, params)
        for failed in range(params.n):
            others = [i for i in range(params.n) if i != failed]
            for helpers in combinations(others, params.d):
                symbols = params.ctx.field([int(pm_helper_symbol(word.node(h), failed, params)) for h in helpers])
                assert np.array_equal(pm_repair(failed, list(helpers), symbols, params), word.node(failed))


def test_data_collection_from_every_k_subset():
    params = _params()
    for seed in range(100, 200):
        msg = random_elements(params.ctx, params.B, np.random.default_rng(seed))
        word = pm_encode(msg, params)
        for nodes in combinations(range(params.n), params.k):
            contents = word.nodes[list(nodes)]
            assert np.array_equal(pm_data_collect(list(nodes), contents, params), msg)
    with pytest.raises(DecodeError):
        pm_data_collect([0, 1], word.nodes[[0, 1]], params)


def test_repair_preconditions():
    with pytest.raises(RepairError):
        check_helpers(0, [1, 1, 2, 3], 4)
    with pytest.raises(RepairError):
        check_helpers(0, [0, 1, 2, 3], 4)
    with pytest.raises(RepairError):
        check_helpers(0, [1, 2, 3], 4)
    params = _params()
    with pytest.raises(RepairError):
        pm_repair(7, [0, 1, 2, 3], params.ctx.zeros(4), params)


def test_rank_profile():
    params = _params()
    assert params.rank_profile() == RankProfile.mbr(5, 3, 4)
    assert verify_rank_profile(params.generator, 4, RankProfile.mbr(5, 3, 4))


def test_minimum_distance():
    params = _params()
    assert dmin_oracle(params.generator, params.alpha) == params.n - params.k + 1


if __name__ == "__main__":
    for name, func in list(globals().items()):
        if name.startswith("test_") and callable(func):
            func()
            print(f"✅ {name}")
