import random
from fractions import Fraction as F

import pytest

from filiform.families import (
    FAMILIES,
    J_Z,
    ConstraintViolation,
    component_of,
    constraint_values,
    contact_shortcut,
    family_ids,
    get_family,
    instantiate,
    open_conditions_hold,
    quotient_family_table,
    representatives,
    sample_point,
)
from filiform.liecore import StructureTable, check_jacobi, is_filiform, model_filiform
from filiform.scalars import Poly
from filiform.vergnegen import alias_substitution, generic_filiform, jacobi_ideal

P = Poly.parse


def table(n, brackets):
    coeffs = {(0, i, i + 1): F(1) for i in range(1, n - 1)}
    for (i, j), row in brackets.items():
        for k, c in row.items():
            coeffs[(i, j, k)] = c
    return StructureTable(n, coeffs)


@pytest.mark.parametrize("n,family", [(8, "fil8"), (9, "fil9"), (10, "fil10"), (11, "fil11")])
def test_generic_table_matches_transcription(n, family):
    G = generic_filiform(n)
    assert G.table.subs(alias_substitution(n)) == get_family(family).table()


def test_one_parameter_family_first_component():
    for alpha in (F(0), F(1), F(-3, 2), F(7)):
        want = table(8, {
            (1, 5): {7: alpha},
            (2, 4): {7: 1},
            (1, 4): {6: alpha + 1, 7: 1},
            (2, 3): {6: 1},
            (1, 3): {5: alpha + 2, 6: 1},
            (1, 2): {4: alpha + 2, 5: 1},
        })
        assert instantiate("t1alpha", {"alpha": alpha}) == want


def test_one_parameter_family_second_component():
    for t in (F(0), F(2), F(-1, 3)):
        want = table(8, {
            (2, 5): {7: 1},
            (1, 5): {6: 1, 7: 1},
            (3, 4): {7: -1},
            (2, 4): {7: F(-2, 5)},
            (1, 4): {5: 1, 6: F(3, 5), 7: t},
            (2, 3): {6: F(-2, 5), 7: -t},
            (1, 3): {4: 1, 5: F(1, 5)},
            (1, 2): {3: 1, 4: F(1, 5)},
        })
        assert instantiate("t2t8", {"t": t}) == want
        assert check_jacobi(want) == []


def test_symbolic_instantiation():
    T = instantiate("t2t8", {"t": P("t")})
    assert T.coeff(1, 4, 7) == P("t")
    assert T.subs({"t": 3}) == instantiate("t2t8", {"t": 3})


def test_constraint_violation_names_polynomial():
    with pytest.raises(ConstraintViolation) as info:
        instantiate("fil8", {"a1": 1, "a2": 1})
    assert info.value.poly == P("a1*(5*a4 + 2*a2)")
    assert info.value.value == 2
    with pytest.raises(KeyError):
        instantiate("fil8", {"a3": 1})
    with pytest.raises(KeyError):
        get_family("fil12")


def test_constraint_values_and_open_conditions():
    vals = constraint_values("fil9", {"a2": 1, "a4": 1, "a6": 1})
    assert [v for _, v in vals] == [F(2)]
    assert open_conditions_hold("contact9", {"a2": -1, "a4": 1, "a6": -1})
    assert not open_conditions_hold("contact9", {"a2": 0, "a4": 1, "a6": 1})


def test_component_membership():
    assert component_of("fil8", {"a2": 0, "a4": 1, "a5": 1}) == {"Fil8(1)": True, "Fil8(2)": False}
    assert component_of("fil8", {"a1": 1, "a2": 5, "a4": -2}) == {"Fil8(1)": False, "Fil8(2)": True}
    assert component_of("fil8", {}) == {"Fil8(1)": True, "Fil8(2)": True}
    with pytest.raises(KeyError):
        component_of("fil7", {})


def test_fil10_samples_land_in_their_component():
    rng = random.Random(3)
    for stratum in range(3):
        for _ in range(20):
            pt = sample_point("fil10", rng, stratum)
            flags = component_of("fil10", pt)
            assert any(flags.values())
            assert check_jacobi(instantiate("fil10", pt)) == []


@pytest.mark.parametrize("list_id,size", [("Fil8_1", 15), ("Fil8_2", 4)])
def test_representatives(list_id, size):
    symbolic = representatives(list_id)
    assert len(symbolic) == size
    for lam in (0, 1, 2, -1):
        for tup, T in representatives(list_id, lam):
            assert check_jacobi(T) == []
            assert is_filiform(T)
    zero = [T for tup, T in representatives(list_id, 1) if not any(tup)]
    if list_id == "Fil8_1":
        assert zero == [model_filiform(8)]
    with pytest.raises(KeyError):
        representatives("Fil9")


def test_symbolic_representative_keeps_parameter():
    tup, T = representatives("Fil8_2")[2]
    assert "lam" in str(T.coeff(1, 3, 7)) or "lam" in str(T.coeff(1, 2, 7))


def test_contact_shortcut_examples():
    assert contact_shortcut({"a2": 1, "a4": -1, "a7": 1, "a10": -1}, 11)
    assert not contact_shortcut({"a2": 1, "a4": -1, "a7": 0, "a10": -1}, 11)
    assert contact_shortcut({"a2": -1, "a4": 1, "a6": -1}, 9)
    assert contact_shortcut({"a01_06": 1, "a02_05": 2, "a03_04": 3}, 9)
    with pytest.raises(ValueError):
        contact_shortcut({}, 8)


def test_quoted_ten_dimensional_table_fails_jacobi():
    pt = sample_point("fil11", random.Random(5), 0)
    values = {k: v for k, v in pt.items() if k in get_family("sympl10tab").params}
    assert check_jacobi(instantiate("sympl10tab", values))
    assert check_jacobi(instantiate("sympl10", values)) == []
    assert quotient_family_table("fil11", pt) == instantiate("sympl10", values)


def test_b_aliases_describe_the_quotient():
    rng = random.Random(11)
    fil9 = get_family("fil9")
    for _ in range(20):
        pt = sample_point("fil9", rng)
        b = {k: v for k, v in fil9.alias_values(pt).items()}
        assert quotient_family_table("fil9", pt) == instantiate("sympl8b", b)
        sub = {k: v for k, v in pt.items() if k in get_family("sympl8a").params}
        assert quotient_family_table("fil9", pt) == instantiate("sympl8a", sub, check=False)


def _generic_components(n):
    sub = alias_substitution(n)
    return [p.subs(sub) for eq in jacobi_ideal(generic_filiform(n)) for p in eq.polys]


def _unit_multiple(p, q):
    if not p or not q:
        return False
    mono, c = q.leading()
    ratio = p.terms.get(mono)
    return ratio is not None and p == q * (ratio / c)


def test_short_name_quadric_in_dimension_eleven():
    z = get_family("fil11").aliases
    j1 = J_Z["J1"].subs(z)
    comps = _generic_components(11)
    assert any(_unit_multiple(j1, c) for c in comps)
    # the variant with z3 = a4 + a10 does not describe any Jacobi component
    variant = J_Z["J1"].subs({**z, "z3": P("a4 + a10")})
    assert not any(_unit_multiple(variant, c) for c in comps)


@pytest.mark.parametrize("family", ["fil8", "fil9", "fil10", "fil11"])
def test_samplers_produce_valid_algebras(family):
    rng = random.Random(2024)
    for _ in range(25):
        T = instantiate(family, sample_point(family, rng))
        assert check_jacobi(T) == []
        assert is_filiform(T)


def test_unconstrained_families_sample_uniformly():
    rng = random.Random(1)
    for fid in ("fil8c1", "fil8c2", "t9", "sympl8b"):
        T = instantiate(fid, sample_point(fid, rng))
        assert check_jacobi(T) == []
    with pytest.raises(ValueError):
        sample_point("contact11", rng)


def test_registry_lists_builders():
    ids = family_ids()
    assert "modelL" in ids and "model2p1" in ids
    assert set(FAMILIES) <= set(ids)
    assert instantiate("modelL", {"n": 6}) == model_filiform(6)
    assert is_filiform(instantiate("model2p1", {"p": 4, "lam": 2}))
