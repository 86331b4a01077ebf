import json
import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from filiform.affine import (
    AffineProduct,
    adjoint_type_build,
    affine_from_symplectic,
    check_left_symmetric,
    is_complete,
    l1_from_tabulated,
    polarization_check,
    tabulated_l1_first,
)
from filiform.ceforms import basis_form, symplectic_exists
from filiform.families import instantiate, sample_point
from filiform.liecore import StructureTable, abelian, ad_matrix, heisenberg, model_filiform, unit

SEEDED = settings(max_examples=100, derandomize=True, deadline=None)


def zero_product(n):
    return AffineProduct(n, [[[F(0)] * n for _ in range(n)] for _ in range(n)])


def half_ad(T):
    n = T.dim
    return AffineProduct(n, [[[x / 2 for x in row] for row in ad_matrix(T, unit(n, i))] for i in range(n)])


def random_product(n, rng):
    return AffineProduct(
        n, [[[F(rng.randint(-2, 2)) if rng.random() < 0.3 else F(0) for _ in range(n)] for _ in range(n)] for _ in range(n)]
    )


def test_zero_product_on_abelian():
    P = zero_product(4)
    assert check_left_symmetric(P, abelian(4))
    assert is_complete(P)
    assert not check_left_symmetric(P, StructureTable(4, {(0, 1, 2): F(1)}))


def test_half_adjoint_on_heisenberg():
    H = heisenberg()
    P = half_ad(H)
    assert check_left_symmetric(P, H)
    assert P.basis_product(0, 1) == [0, 0, F(1, 2)]
    bad = half_ad(H)
    bad.L[0][2][1] = F(1)
    rep = check_left_symmetric(bad, H)
    assert not rep and rep.residual_polys()


def test_dimension_mismatch():
    with pytest.raises(ValueError):
        check_left_symmetric(zero_product(3), abelian(4))


def test_adjoint_type_needs_a_genuine_first_matrix():
    T = instantiate("t2t8", {"t": 1})
    P = adjoint_type_build(T, [[F(0)] * 8 for _ in range(8)])
    assert not check_left_symmetric(P, T, stop_early=True)


def test_tabulated_matrix_needs_the_adjoint_added_back():
    T = instantiate("t2t8", {"t": 0})
    raw = tabulated_l1_first(0, [0] * 6)
    assert not check_left_symmetric(adjoint_type_build(T, raw), T, stop_early=True)
    assert check_left_symmetric(adjoint_type_build(T, l1_from_tabulated(T, raw)), T)


def test_affine_from_symplectic_examples():
    P = affine_from_symplectic(abelian(2), basis_form(2, 0, 1))
    assert all(not any(P.basis_product(i, j)) for i in range(2) for j in range(2))
    L4 = model_filiform(4)
    res = symplectic_exists(L4)
    assert res.exists
    assert check_left_symmetric(affine_from_symplectic(L4, res.witness), L4)
    T = instantiate("t1alpha", {"alpha": 1})
    P = affine_from_symplectic(T, symplectic_exists(T).witness)
    assert check_left_symmetric(P, T)
    assert is_complete(P)
    with pytest.raises(ValueError):
        affine_from_symplectic(L4, basis_form(4, 1, 3))
    with pytest.raises(ValueError):
        affine_from_symplectic(L4, basis_form(4, 0, 1))


def test_identity_right_multiplication_is_not_complete():
    n = 3
    L = [[[F(0)] * n for _ in range(n)] for _ in range(n)]
    # X_i . X_j = delta_ij X_i on the diagonal gives R_{X_0} with nonzero trace
    for i in range(n):
        L[i][i][i] = F(1)
    rep = is_complete(AffineProduct(n, L))
    assert not rep and any(rep.traces)


def test_polarization_on_valid_products():
    H = heisenberg()
    assert polarization_check(half_ad(H))
    T = instantiate("t1alpha", {"alpha": 1})
    P = affine_from_symplectic(T, symplectic_exists(T).witness)
    rep = polarization_check(P)
    assert rep.a_vanishes and rep.cyclic_jacobi
    # the alternative right-hand side 2 * sum mu(s(X, Y), Z) is not an identity
    assert not rep.quoted_cyclic


@SEEDED
@given(st.integers(0, 10 ** 6))
def test_polarization_cyclic_identity_always_holds(seed):
    P = random_product(4, random.Random(seed))
    rep = polarization_check(P)
    assert rep.cyclic_jacobi
    mu_table = {
        (i, j, k): c
        for i in range(4) for j in range(i + 1, 4)
        for k, c in enumerate(a - b for a, b in zip(P.basis_product(i, j), P.basis_product(j, i)))
        if c
    }
    T = StructureTable(4, mu_table)
    # the commutator always matches, so A vanishes exactly for left-symmetric products
    assert rep.a_vanishes == bool(check_left_symmetric(P, T))


def test_json_round_trip():
    T = instantiate("t1alpha", {"alpha": 1})
    P = affine_from_symplectic(T, symplectic_exists(T).witness)
    data = json.loads(json.dumps(P.to_json()))
    assert AffineProduct.from_json(data).L == P.L
    with pytest.raises(IndexError):
        AffineProduct.from_json({"dim": 2, "products": {"0,2": {"0": "1"}}})
    with pytest.raises(IndexError):
        AffineProduct.from_json({"dim": 2, "products": {"0,1": {"5": "1"}}})


@pytest.mark.parametrize("family", ["fil8c1", "t1alpha"])
def test_symplectic_products_are_left_symmetric(family):
    rng = random.Random(8)
    checked = 0
    for _ in range(10):
        T = instantiate(family, sample_point(family, rng))
        res = symplectic_exists(T)
        if not res:
            continue
        P = affine_from_symplectic(T, res.witness)
        assert check_left_symmetric(P, T)
        checked += 1
    assert checked
