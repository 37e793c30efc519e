#!/usr/bin/env python3
"""
Code Model Tests

Vector codewords and their JSON form, locality structures, the generic
erasure decoder and locality certification.
"""

import os
import sys

import numpy as np
import pytest

script_dir = os.path.dirname(os.path.abspath(__file__))
sys.path.insert(0, os.path.join(script_dir, 'src'))

from code_model import LocalityStructure, VectorCodeword, certify_locality, row_basis, solve_message
from codes import TbParams
from ec_errors import DecodeError, ParameterError
from gf import make_context, random_elements
from gf_linalg import SolveStatus, rank


def test_vector_codeword_shape_and_erase():
    ctx = make_context(13)
    word = VectorCodeword(random_elements(ctx, (5, 3), np.random.default_rng(1)))
    assert (word.n, word.alpha) == (5, 3)
    assert len(word.flatten()) == 15
    survivors = word.erase([1, 3])
    assert sorted(survivors) == [0, 2, 4]
    scalar = VectorCodeword(ctx.vector([1, 2, 3]))
    assert (scalar.n, scalar.alpha) == (3, 1)


def test_vector_codeword_json():
    ctx = make_context(16)
    word = VectorCodeword(ctx.field([[1, 15], [10, 0], [3, 4]]))
    data = word.to_json(erased=[1])
    assert data == {"nodes": [["1", "f"], None, ["3", "4"]]}
    parsed, erased = VectorCodeword.from_json(ctx, data)
    assert erased == [1]
    assert np.array_equal(parsed.node(0), word.node(0))
    assert np.all(parsed.node(1) == 0)
    with pytest.raises(ParameterError):
        VectorCodeword.from_json(ctx, {"nodes": [["1"], ["1", "2"]]})


def test_locality_structure():
    ls = LocalityStructure.contiguous(12, 6, 3, 2)
    assert ls.n_l == 6
    assert ls.group_of(7) == 1
    assert ls.to_dict()["groups"][0] == [0, 1, 2, 3, 4, 5]
    with pytest.raises(ParameterError):
        LocalityStructure.contiguous(12, 5, 3, 2)
    with pytest.raises(ParameterError):
        ls.group_of(12)


def test_solve_message_and_decode_errors():
    params = TbParams.build(make_context(16), 15, 6, 3, 3)
    g = params.generator
    msg = random_elements(params.ctx, 6, np.random.default_rng(2))
    word = msg @ g
    survivors = {i: word[i:i + 1] for i in range(15) if i % 2 == 0}
    assert np.array_equal(solve_message(g, 1, survivors), msg)

    with pytest.raises(DecodeError) as info:
        solve_message(g, 1, {i: word[i:i + 1] for i in range(3)})
    assert info.value.status is SolveStatus.UNDERDETERMINED
    with pytest.raises(DecodeError):
        solve_message(g, 1, {})


def test_row_basis_and_certify_locality():
    params = TbParams.build(make_context(16), 15, 6, 3, 3)
    g = params.generator
    basis = row_basis(g)
    assert basis.shape[0] == rank(g) == 6
    assert certify_locality(g, 1, params.locality())
    # declaring a larger delta than the local codes achieve fails
    assert not certify_locality(g, 1, LocalityStructure.contiguous(15, 5, 3, 4))


if __name__ == "__main__":
    for name, func in list(globals().items()):
        if name.startswith("test_") and callable(func):
            func()
            print(f"✅ {name}")
