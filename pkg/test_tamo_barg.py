#!/usr/bin/env python3
"""
Tamo-Barg Code Tests

The [15, 6] code over GF(16) with r = 3, delta = 3 (n_l = 5, three cosets),
plus a k that is not a multiple of r.
"""

import os
import sys
from itertools import combinations

import numpy as np
import pytest

script_dir = os.path.dirname(os.path.abspath(__file__))
sys.path.insert(0, os.path.join(script_dir, 'src'))

from codes.tamo_barg import (
    TbParams, monomial_support, tb_decode, tb_distance_lower_bound, tb_encode,
    tb_local_parts, tb_local_repair,
)
from ec_errors import ParameterError, RepairError
from gf import make_context, random_elements
from oracle import dmin_oracle, lrc_bound


def _params(k=6):
    return TbParams.build(make_context(16), 15, k, 3, 3)


def test_parameters_and_support():
    params = _params()
    assert (params.n_l, params.nu) == (5, 3)
    assert params.support == (0, 1, 2, 5, 6, 7, 10, 11, 12)
    assert params.message_support == (0, 1, 2, 5, 6, 7)
    assert monomial_support(4, 2, 2) == (0, 1, 4, 5)


def test_parameter_errors():
    ctx = make_context(16)
    with pytest.raises(ParameterError):
        TbParams.build(ctx, 15, 6, 2, 3)
    with pytest.raises(ParameterError):
        TbParams.build(ctx, 15, 10, 3, 3)
    with pytest.raises(ParameterError):
        TbParams.build(ctx, 15, 6, 3, 1)


def test_local_parts_have_degree_below_r():
    params = _params()
    rng = np.random.default_rng(31)
    for _ in range(5):
        msg = random_elements(params.ctx, params.k, rng)
        word = tb_encode(msg, params)
        for g, part in enumerate(tb_local_parts(msg, params)):
            assert part.degree < params.r
            assert np.array_equal(part(params.cs.cosets[g]), word[g * 5:(g + 1) * 5])


def test_local_repair_from_any_r_helpers():
    params = _params()
    msg = random_elements(params.ctx, params.k, np.random.default_rng(32))
    word = tb_encode(msg, params)
    for erased in range(params.n):
        group = erased // params.n_l
        members = [p for p in range(group * 5, group * 5 + 5) if p != erased]
        for helpers in combinations(members, params.r):
            helpers = list(helpers)
            assert tb_local_repair(erased, helpers, word[helpers], params) == word[erased]


def test_local_repair_preconditions():
    params = _params()
    word = tb_encode(random_elements(params.ctx, params.k, np.random.default_rng(33)), params)
    with pytest.raises(RepairError):
        tb_local_repair(0, [1, 2, 5], word[[1, 2, 5]], params)
    with pytest.raises(RepairError):
        tb_local_repair(0, [1, 2], word[[1, 2]], params)
    with pytest.raises(RepairError):
        tb_local_repair(0, [0, 1, 2], word[[0, 1, 2]], params)


def test_decode_from_surviving_positions():
    params = _params()
    msg = random_elements(params.ctx, params.k, np.random.default_rng(34))
    word = tb_encode(msg, params)
    surviving = {i: word[i:i + 1] for i in range(params.n) if i not in (0, 4, 6, 9, 11, 14, 2)}
    assert np.array_equal(tb_decode(surviving, params), msg)


def test_minimum_distance_meets_lrc_bound():
    params = _params()
    dmin = dmin_oracle(params.generator, 1)
    assert dmin == lrc_bound(15, 6, 3, 3) == 8


def test_k_not_multiple_of_r():
    params = _params(k=5)
    dmin = dmin_oracle(params.generator, 1)
    assert tb_distance_lower_bound(params) == 15 - 6
    assert dmin >= tb_distance_lower_bound(params)
    assert dmin <= lrc_bound(15, 5, 3, 3)


if __name__ == "__main__":
    for name, func in list(globals().items()):
        if name.startswith("test_") and callable(func):
            func()
            print(f"✅ {name}")
