"""Acceptance suite: ten end-to-end criteria, one PASS/FAIL line each.

Run directly (``python3 tests/test_acceptance.py``) or through pytest; the
per-criterion summary is printed at the end of the session.
"""

import itertools
import random
import sys
import time
from fractions import Fraction as F

import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from filiform.affine import (
    adjoint_type_build,
    affine_from_symplectic,
    check_left_symmetric,
    corrected_l1_second,
    is_complete,
    l1_from_tabulated,
    tabulated_l1_first,
    tabulated_l1_second,
)
from filiform.ceforms import (
    ExtElement,
    basis_form,
    central_extension,
    d_one_form,
    is_closed_two_form,
    is_contact_algebra,
    is_contact_form,
    symplectic_exists,
)
from filiform.cohomdef import coboundary_space, h2_dim
from filiform.families import contact_shortcut, get_family, instantiate, sample_point
from filiform.liecore import (
    StructureTable,
    bracket_eval,
    central_series,
    change_basis,
    characteristic_sequence,
    check_jacobi,
    is_filiform,
    model_filiform,
    quotient_by_center,
    same_subspace,
    unit,
)
from filiform.scalars import Poly, det, linear_span_basis, span_contains
from filiform.vergnegen import (
    alias_substitution,
    equation_count,
    generic_filiform,
    jacobi_ideal,
    reduce_ideal,
    reduced_count_for,
    verify_certificate,
)

P = Poly.parse
V = Poly.var

PROPERTY = settings(
    max_examples=100, derandomize=True, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)


def criterion(k, title):
    return pytest.mark.criterion(k, title)


def unit_multiple(p: Poly, q: Poly):
    """Rational c != 0 with p == c*q, else None."""
    if not p or not q:
        return None
    m, c = q.leading()
    ratio = p.terms.get(m)
    if ratio is None:
        return None
    ratio = ratio / c
    return ratio if p == q * ratio else None


# ---------------------------------------------------------------------------
# 1. family re-derivation

Z11 = {
    "z1": P("a2 + a4"), "z2": P("a4 + a7"), "z3": P("a7 + a10"), "z4": P("a10"),
    "z5": P("a5 + a11"), "z6": P("a8 + a11"), "z7": P("a11"),
    "z8": P("a9 + a12"), "z9": P("a12 + a14"), "z10": P("a14"),
}

REFERENCE_CONSTRAINTS = {
    8: ["a1*(5*a4 + 2*a2)"],
    9: ["-3*a4^2 + 2*a6^2 + 2*a2*a6 + a4*a6"],
    10: [
        "a1*(2*a2 + 7*a4 + 7*a7)",
        "3*a4^2 + 3*a4*a7 - 2*a2*a7",
        "a1*(2*a9 + 5*a11) - 2*a2*a10 + a4*(7*a8 - 2*a10) + a7*(-3*a5 + 2*a8 - 7*a10)",
    ],
    11: [
        "3*z2^2 + 3*z2*z3 - 2*z1*z3",
        "z7*(2*z1 + 2*z2 + z3) + z3*(3*z5 + z6) - 7*z2*z6",
        "z4*(2*z1 + 7*(z2 + z3)) - 2*z3*(2*z2 + z3)",
        "z4*(2*z8 + 5*z9) - z10*(2*z1 + 9*z2 + 12*z3) - z7*(3*z5 + 7*z6 - z7) + 4*z6^2"
        " - 2*z3*(2*z8 + 7*z9) + 8*z9*(z2 + 2*z3)",
    ],
}


def _reference(n):
    return [P(s).subs(Z11) if n == 11 else P(s) for s in REFERENCE_CONSTRAINTS[n]]


@criterion(1, "family re-derivation from the generic Jacobi ideal (dims 8-11)")
@pytest.mark.parametrize("n", [8, 9, 10, 11])
def test_c1_family_rederivation(n):
    start = time.perf_counter()
    G = generic_filiform(n)
    sub = alias_substitution(n)
    comps = [q.subs(sub) for e in jacobi_ideal(G) for q in e.polys]
    reference = _reference(n)
    for p in reference:
        units = [unit_multiple(p, q) for q in comps]
        assert any(u is not None for u in units), f"dim {n}: {p} is not a unit multiple of a generator"
    basis = linear_span_basis(reference)
    for q in comps:
        assert span_contains(basis, q), f"dim {n}: generator {q} outside the reference span"
    assert time.perf_counter() - start < 30


# ---------------------------------------------------------------------------
# 2. reduction certificate


@criterion(2, "weight-graded reduction with exact shift certificates")
def test_c2_reduction_dim11():
    G = generic_filiform(11)
    eqs = jacobi_ideal(G)
    assert sorted(e.triple for e in eqs) == [(1, 2, 3), (1, 2, 4), (1, 2, 5), (1, 3, 4)]
    red = reduce_ideal(eqs)
    assert red.generator_triples == [(1, 2, 3), (1, 3, 4)]
    assert sorted(red.eliminated) == [(1, 2, 4), (1, 2, 5)]
    assert all(c.kind == "x0" for c in red.certificates)
    assert all(verify_certificate(eqs, c) for c in red.certificates)


@criterion(2, "weight-graded reduction with exact shift certificates")
def test_c2_reduction_dim8():
    eqs = jacobi_ideal(generic_filiform(8))
    red = reduce_ideal(eqs)
    assert len(red.generators) == 1
    assert all(verify_certificate(eqs, c) for c in red.certificates)


# ---------------------------------------------------------------------------
# 3. contact criteria


@criterion(3, "contact verdicts agree with the antidiagonal product (dims 9, 11)")
@pytest.mark.parametrize("family,dim", [("fil9", 9), ("fil11", 11)])
def test_c3_contact_equivalence(family, dim):
    start = time.perf_counter()
    rng = random.Random(20240 + dim)
    seen = {True: 0, False: 0}
    for _ in range(100):
        pt = sample_point(family, rng)
        T = instantiate(family, pt)
        verdict = is_contact_algebra(T)
        assert verdict == contact_shortcut(pt, dim), pt
        seen[verdict] += 1
    assert seen[True] and seen[False]
    assert time.perf_counter() - start < 60


@criterion(3, "contact verdicts agree with the antidiagonal product (dims 9, 11)")
def test_c3_dim11_point_and_dform():
    pt = {"a2": 1, "a4": -1, "a7": 1, "a10": -1}
    T = instantiate("contact11", pt)
    assert is_contact_form(T, basis_form(11, 10))
    sym = {k: V(k) for k in ("a2", "a4", "a7", "a10")}
    Ts = instantiate("contact11", sym, check=False)
    expected = ExtElement(11, {
        (0, 9): -1, (1, 8): -V("a2"), (2, 7): -V("a4"), (3, 6): -V("a7"), (4, 5): -V("a10"),
    })
    assert d_one_form(Ts, basis_form(11, 10)) == expected


# ---------------------------------------------------------------------------
# 4. dim-8 symplectic sweep


def _factor_criterion(a2, a4):
    if 5 * a4 + 2 * a2 == 0:
        return a2 == 0 and a4 == 0
    return a4 * (a2 + a4) * (2 * a2 - a4) * (a2 + 2 * a4) != 0


def _short_factor_list(a2, a4):
    # the same factor list with (a2 + a4) dropped
    if 5 * a4 + 2 * a2 == 0:
        return a2 == 0 and a4 == 0
    return a4 * (a2 + 2 * a4) * (2 * a2 - a4) != 0


@criterion(4, "dim-8 symplectic sweep against the reference factor list")
def test_c4_symplectic_grid():
    vals = [-2, -1, 0, 1, 2]
    mismatches, derivation_gaps, verdicts = [], [], {True: 0, False: 0}
    for a2, a4, a5, a6 in itertools.product(vals, repeat=4):
        T = instantiate("fil8c1", {"a2": a2, "a4": a4, "a5": a5, "a6": a6})
        r = symplectic_exists(T)
        if r.exists:
            assert det_ok(r.witness, T)
        verdicts[r.exists] += 1
        if r.exists != _factor_criterion(a2, a4):
            mismatches.append((a2, a4, a5, a6))
        if r.exists != _short_factor_list(a2, a4):
            derivation_gaps.append((a2, a4))
    print(f"\n  symplectic {verdicts[True]}, not symplectic {verdicts[False]}")
    print(f"  points where the shorter derivation factor disagrees: {len(derivation_gaps)}")
    assert not mismatches, mismatches[:10]
    # the recorded discrepancy: (a2 + a4) is needed, the derivation line omits it
    assert derivation_gaps and all(a2 + a4 == 0 for a2, a4 in derivation_gaps)


def det_ok(theta, T):
    from filiform.ceforms import gram_matrix

    return is_closed_two_form(T, theta) and det(gram_matrix(theta)) != 0


@criterion(4, "dim-8 symplectic sweep against the reference factor list")
def test_c4_t1alpha_exceptions():
    for alpha in (F(-2), F(1, 2), F(-5, 2)):
        assert not symplectic_exists(instantiate("t1alpha", {"alpha": alpha})).exists
    for alpha in (F(1), F(3), F(-3), F(2), F(1, 3), F(5), F(-1, 2)):
        assert symplectic_exists(instantiate("t1alpha", {"alpha": alpha})).exists


@criterion(4, "dim-8 symplectic sweep against the reference factor list")
def test_c4_b_parameter_factor():
    vals = range(-3, 4)
    good, misprint = [], []
    for b2, b4 in itertools.product(vals, repeat=2):
        T = instantiate("sympl8b", {"b2": b2, "b4": b4, "b5": 1})
        truth = symplectic_exists(T).exists
        generic = 5 * b4 + 2 * b2 != 0
        corrected = (b2 == 0 and b4 == 0) or (generic and b4 * (b2 + b4) * (2 * b2 - b4) * (b2 + 2 * b4) != 0)
        as_tabulated = (b2 == 0 and b4 == 0) or (generic and b4 * (b2 + b4) * (b2 - b4) * (b2 + 2 * b4) != 0)
        if truth != corrected:
            good.append((b2, b4))
        if truth != as_tabulated:
            misprint.append((b2, b4))
    assert not good, good
    print(f"\n  (b2 - b4) reading disagrees at {misprint}")
    assert misprint


# ---------------------------------------------------------------------------
# 5. extension / quotient duality


def symplectic_samples(count, seed):
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        a2, a4 = F(rng.randint(-4, 4)), F(rng.randint(-4, 4))
        if not _factor_criterion(a2, a4):
            continue
        pt = {"a2": a2, "a4": a4, **{k: F(rng.randint(-3, 3)) for k in ("a5", "a6", "a7", "a8")}}
        T = instantiate("fil8c1", pt)
        res = symplectic_exists(T, seed=len(out))
        assert res.exists, pt
        out.append((pt, T, res.witness))
    return out


@criterion(5, "central extension of symplectic witnesses is filiform contact and quotients back")
def test_c5_extension_quotient():
    for pt, T, theta in symplectic_samples(25, seed=5):
        E = central_extension(T, theta)
        assert E.dim == 9
        assert not check_jacobi(E)
        assert is_filiform(E)
        assert is_contact_form(E, basis_form(9, 8))
        assert quotient_by_center(E) == T


# ---------------------------------------------------------------------------
# 6. cohomology dimensions


@criterion(6, "restricted H2 dimensions")
def test_c6_rigid_families():
    assert h2_dim("t1alpha", {"alpha": 1}) == 1
    for t in (1, 2, 3):
        assert h2_dim("t2t8", {"t": t}) == 1
        assert h2_dim("fil8c2", {"a1": 1, "a2": 1, "a5": t, "a6": -t}) == 1


@criterion(6, "restricted H2 dimensions")
def test_c6_dim9_bounds():
    rng = random.Random(6)
    for _ in range(40):
        assert h2_dim("fil9", sample_point("fil9", rng)) >= 1
    for t, u in ((1, 0), (2, 3), (F(1, 2), -1), (-3, F(2, 5)), (3, 1)):
        assert h2_dim("t9", {"t": t, "u": u}) == 2, (t, u)


@criterion(6, "restricted H2 dimensions")
def test_c6_dim11_bound():
    rng = random.Random(11)
    dims = [h2_dim("fil11", sample_point("fil11", rng)) for _ in range(25)]
    assert min(dims) >= 3, dims


@criterion(6, "restricted H2 dimensions")
def test_c6_fil8c2_case_table():
    # points of the second component, deformed inside the whole dim-8 variety:
    # with a1 = 0 they also lie on the first component and gain its tangent direction
    rng = random.Random(24)

    def r(nonzero=False):
        while True:
            v = F(rng.randint(-4, 4), rng.choice((1, 2, 3)))
            if v or not nonzero:
                return v

    def point(a1, a2):
        return {"a1": a1, "a2": a2, "a4": F(-2, 5) * a2, **{k: r() for k in ("a5", "a6", "a7", "a8")}}

    for _ in range(50):
        assert h2_dim("fil8", point(0, 0)) >= 3
        assert h2_dim("fil8", point(0, r(True))) >= 2
        assert h2_dim("fil8", point(r(True), 0)) >= 1


# ---------------------------------------------------------------------------
# 7. coboundary formulas


def al(i):
    return V(f"alpha{i}")


def be(i):
    return V(f"beta{i}")


def first_component_display():
    a2, a4, a5, a6, a7, a8 = (V(x) for x in ("a2", "a4", "a5", "a6", "a7", "a8"))
    b1 = be(1)
    return {
        "u2": a2 * (b1 - 2 * al(0)),
        "u4": a4 * (b1 - 2 * al(0)),
        "u5": a5 * (b1 - 3 * al(0)) + al(1) * (-2 * a2 ** 2 - 5 * a2 * a4 - 5 * a4 ** 2),
        "u6": a6 * (b1 - 3 * al(0)) + al(1) * (-3 * a2 * a4 - 3 * a4 ** 2),
        "u7": a7 * (b1 - 4 * al(0)) - 2 * a4 * be(3) - al(1) * (a5 + a6) * (5 * a2 + 9 * a4),
        "u8": a8 * (b1 - 5 * al(0)) - 3 * a7 * al(1) * (2 * a2 + 3 * a4) - 2 * a6 * be(3) - 3 * a4 * be(4)
        + 3 * al(3) * a4 * (a2 + 2 * a4) - al(1) * (a5 + a6) * (3 * a5 + 2 * a6),
    }


def second_component_display():
    a1, a2, a5, a6, a7, a8 = (V(x) for x in ("a1", "a2", "a5", "a6", "a7", "a8"))
    b1, q = be(1), F(1, 5)
    return {
        "u1": a1 * (b1 - al(0) - al(1) * a1),
        "u2": a2 * (b1 - 2 * al(0) - 3 * al(1) * a1),
        "u5": a5 * (b1 - 3 * al(0) - 5 * al(1) * a1) - al(1) * (2 * a1 * a6 + 4 * q * a2 ** 2)
        + 2 * al(3) * a1 ** 2 - 2 * be(3) * a1,
        "u6": a6 * (b1 - 3 * al(0) - 2 * a1 * al(1)) + al(1) * (a1 * a5 + F(18, 25) * a2 ** 2)
        - 2 * al(3) * a1 ** 2 + 2 * be(3) * a1,
        "u7": a7 * (b1 - 4 * al(0) - 5 * al(1) * a1) - 7 * q * al(1) * a2 * (a5 + a6)
        - 4 * q * al(3) * a1 * a2 + 4 * q * be(3) * a2,
        "u8": a8 * (b1 - 5 * al(0) - 5 * al(1) * a1)
        - al(1) * (12 * q * a2 * a7 + (a5 + a6) * (3 * a5 + 2 * a6))
        + al(3) * (2 * a1 * (a5 + 2 * a6) - F(6, 25) * a2 ** 2)
        - 4 * q * al(4) * a1 * a2 + 2 * al(5) * a1 ** 2 - 2 * be(3) * a6 + 6 * q * be(4) * a2 - 2 * be(5) * a1,
    }


def dim9_display():
    a2, a4, a5, a6, a7, a8, a9 = (V(x) for x in ("a2", "a4", "a5", "a6", "a7", "a8", "a9"))
    b1 = be(1)
    return {
        "u2": a2 * (b1 - 2 * al(0)),
        "u4": a4 * (b1 - 2 * al(0)),
        "u6": a6 * (b1 - 2 * al(0)),
        "u5": a5 * (b1 - 3 * al(0)) - al(1) * (2 * a2 ** 2 + 9 * a4 ** 2 + 6 * a2 * a4 + 5 * a4 * a6),
        "u7": a7 * (b1 - 3 * al(0)) - al(1) * (7 * a6 ** 2 + 3 * a2 * a4 + 7 * a2 * a6 + 11 * a4 * a6),
        "u8": a8 * (b1 - 4 * al(0)) - al(1) * ((5 * a2 + 11 * a4 + 5 * a6) * a5 + (6 * a2 + 19 * a4 + 10 * a6) * a7)
        - 2 * be(3) * a4,
        "u9": a9 * (b1 - 4 * al(0)) - al(1) * ((3 * a4 + 4 * a6) * a5 + (4 * a2 + 9 * a4 + 8 * a6) * a7)
        - 2 * be(3) * a6,
    }


def _symbolic(family):
    return {p: V(p) for p in get_family(family).params}


@criterion(7, "generic coboundary coordinates equal the reference formulas")
def test_c7_fil8_components():
    B1 = coboundary_space("fil8c1", _symbolic("fil8c1"))
    for u, want in first_component_display().items():
        assert B1.v[u] == want, u
    B2 = coboundary_space("fil8c2", _symbolic("fil8c2"))
    for u, want in second_component_display().items():
        assert B2.v[u] == want, u


@criterion(7, "generic coboundary coordinates equal the reference formulas")
def test_c7_dim9_display():
    B = coboundary_space("fil9", _symbolic("fil9"), check=False)
    constraint = get_family("fil9").constraints[0]
    for u, want in dim9_display().items():
        diff = B.v[u] - want
        if diff:
            # the display holds on the variety: the gap is a multiple of alpha1 * constraint
            assert unit_multiple(diff, al(1) * constraint) is not None, (u, diff)
    # the partially displayed coordinates: explicit beta/alpha0 parts and homogeneity of the rest
    v10, v11 = B.v["u10"], B.v["u11"]
    lin = lambda v, x: v.coeffs_in(x).get(1, Poly())
    a = {k: V(k) for k in ("a4", "a6", "a7", "a9", "a10", "a11")}
    assert lin(v10, "beta1") == a["a10"] and lin(v10, "alpha0") == -5 * a["a10"]
    assert lin(v10, "beta4") == -3 * (a["a4"] + a["a6"]) and lin(v10, "beta3") == -2 * a["a7"]
    assert lin(v11, "beta1") == a["a11"] and lin(v11, "alpha0") == -6 * a["a11"]
    assert lin(v11, "beta3") == -2 * a["a9"] and lin(v11, "beta4") == -3 * a["a7"]
    assert lin(v11, "beta5") == -2 * (2 * a["a4"] + a["a6"])
    for v, x, allowed in ((v10, "alpha3", {"a2", "a4", "a6"}), (v11, "alpha4", {"a2", "a4", "a6"})):
        c = lin(v, x)
        assert c.is_homogeneous() and c.degree() == 2 and set(c.variables()) <= allowed


@criterion(7, "generic coboundary coordinates equal the reference formulas")
def test_c7_dim9_exact_at_points():
    rng = random.Random(7)
    disp = dim9_display()
    for _ in range(10):
        pt = sample_point("fil9", rng)
        B = coboundary_space("fil9", pt)
        for u, want in disp.items():
            assert B.v[u] == want.subs(pt), (u, pt)


# ---------------------------------------------------------------------------
# 8. affine structures


def _t2t8(t):
    return instantiate("t2t8", {"t": t})


@criterion(8, "affine structures of adjoint type and from symplectic forms")
def test_c8_first_matrix_symbolic():
    T = _t2t8(V("t"))
    prod = adjoint_type_build(T, l1_from_tabulated(T, tabulated_l1_first(alphas=[0] * 6)))
    assert check_left_symmetric(prod, T)
    assert is_complete(prod)
    assert not any(x for row in prod.L[7] for x in row)
    # also fully symbolic in every free entry
    prod = adjoint_type_build(T, l1_from_tabulated(T, tabulated_l1_first()))
    assert check_left_symmetric(prod, T)
    assert is_complete(prod)


@criterion(8, "affine structures of adjoint type and from symplectic forms")
def test_c8_second_matrix_symbolic():
    T = _t2t8(V("t"))
    prod = adjoint_type_build(T, l1_from_tabulated(T, tabulated_l1_second()))
    rep = check_left_symmetric(prod, T)
    residuals = linear_span_basis(rep.residual_polys())
    # verification imposes one linear relation on the free entries
    relation = P("2*alpha3 + 28/25*alpha6 - 2/3*t + 28/125")
    assert len(residuals) == 1 and unit_multiple(residuals[0], relation) is not None
    solved = P("1/3*t - 14/25*alpha6 - 14/125")
    on_locus = prod.subs({"alpha3": solved})
    assert check_left_symmetric(on_locus, T)
    assert is_complete(on_locus)
    at_zero = on_locus.subs({f"alpha{i}": 0 for i in (1, 2, 4, 5, 6)})
    assert check_left_symmetric(at_zero, T) and is_complete(at_zero)
    # entry (6,1) read as 2*alpha3, as in the first table: valid with every entry free
    fixed = adjoint_type_build(T, l1_from_tabulated(T, corrected_l1_second()))
    assert check_left_symmetric(fixed, T) and is_complete(fixed)


@criterion(8, "affine structures of adjoint type and from symplectic forms")
def test_c8_grid():
    grid = (-1, 0, 1)
    for t in grid:
        T = _t2t8(t)
        for i in range(6):
            for v in grid:
                alphas = [0] * 6
                alphas[i] = v
                for build in (tabulated_l1_first, corrected_l1_second):
                    prod = adjoint_type_build(T, l1_from_tabulated(T, build(t=t, alphas=alphas)))
                    assert check_left_symmetric(prod, T, stop_early=True), (build.__name__, t, alphas)
                    assert is_complete(prod, samples=2)


@criterion(8, "affine structures of adjoint type and from symplectic forms")
def test_c8_from_symplectic():
    for pt, T, theta in symplectic_samples(10, seed=8):
        prod = affine_from_symplectic(T, theta)
        assert check_left_symmetric(prod, T)
        n = T.dim
        for x in range(n):
            for y in range(n):
                xy = prod.basis_product(x, y)
                for z in range(n):
                    lhs = theta.evaluate(xy, unit(n, z))
                    rhs = -theta.evaluate(unit(n, y), bracket_eval(T, unit(n, x), unit(n, z)))
                    assert lhs == rhs


# ---------------------------------------------------------------------------
# 9. general odd dimension


@criterion(9, "general (2p+1)-dimensional machinery and counting formulas")
@pytest.mark.parametrize("p", [4, 5, 6])
def test_c9_alternating_model(p):
    T = instantiate("model2p1", {"p": p})
    assert T.dim == 2 * p + 1
    assert not check_jacobi(T)
    assert is_filiform(T)
    assert is_contact_algebra(T)


@criterion(9, "general (2p+1)-dimensional machinery and counting formulas")
def test_c9_free_counts_and_formulas():
    rows = []
    for p in range(3, 8):
        G = generic_filiform(2 * p + 1)
        assert G.free_count == (p - 1) ** 2
        counts = equation_count(p, brute_force=True)
        red = reduce_ideal(jacobi_ideal(G)) if counts["brute_force"] else None
        nr = reduced_count_for(p)
        generators = len(red.generators) if red else 0
        rows.append((p, counts, nr, generators))
        # the series without the mod-3 term is what the generator reproduces
        assert counts["series"] == counts["brute_force"] == counts["triples"]
    flags = []
    for p, counts, nr, generators in rows:
        if not counts["literal_matches"]:
            flags.append(f"p={p}: series+eps={counts['literal']} vs brute force {counts['brute_force']}")
        if nr["value"] is not None and nr["value"] != generators:
            flags.append(f"p={p}: N_r(m={nr['m']},r={nr['r']})={nr['value']} vs reduction {generators}")
    # the tabulated p=7 line pairs (m, r) = (4, 2) with 6 parameters and N_r = 10
    m, r = divmod(2 * 7 - 2, 3)
    if (m, r) != (4, 2):
        flags.append(f"p=7: 2p-2=12 gives (m,r)=({m},{r}), not (4,2)")
    print("\n  " + "\n  ".join(flags))
    assert any(f.startswith("p=7: 2p-2") for f in flags)
    assert rows[-1][2]["value"] == 7 and rows[-1][3] == 7


@criterion(9, "general (2p+1)-dimensional machinery and counting formulas")
@pytest.mark.parametrize("n,limit", [(13, 120), (15, 600)])
def test_c9_generation_runtime(n, limit):
    start = time.perf_counter()
    eqs = jacobi_ideal(generic_filiform(n))
    assert eqs
    assert time.perf_counter() - start < limit


# ---------------------------------------------------------------------------
# 10. property suites

rationals = st.fractions(min_value=-5, max_value=5, max_denominator=4)


@st.composite
def fil9_tables(draw):
    seed = draw(st.integers(0, 10 ** 6))
    pt = sample_point("fil9", random.Random(seed))
    return instantiate("fil9", pt)


@st.composite
def filiform_tables(draw):
    family = draw(st.sampled_from(["fil8", "fil9", "fil10", "fil11"]))
    seed = draw(st.integers(0, 10 ** 6))
    return instantiate(family, sample_point(family, random.Random(seed)))


@criterion(10, "property suites (>= 100 seeded cases each)")
@PROPERTY
@given(filiform_tables(), st.integers(0, 10))
def test_c10_d_squared_zero(T, i):
    i %= T.dim
    assert is_closed_two_form(T, d_one_form(T, basis_form(T.dim, i)))


@criterion(10, "property suites (>= 100 seeded cases each)")
@PROPERTY
@given(fil9_tables(), st.lists(rationals, min_size=27, max_size=27))
def test_c10_jacobi_random_vectors(T, coords):
    x, y, z = coords[:9], coords[9:18], coords[18:]
    br = lambda u, v: bracket_eval(T, u, v)
    terms = (br(br(x, y), z), br(br(y, z), x), br(br(z, x), y))
    assert all(sum(c) == 0 for c in zip(*terms))


@st.composite
def unitriangular(draw, n):
    M = [[F(int(i == j)) for j in range(n)] for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            M[i][j] = draw(st.fractions(min_value=-2, max_value=2, max_denominator=2))
    perm = draw(st.permutations(range(n)))
    return [M[perm[i]] for i in range(n)]


@criterion(10, "property suites (>= 100 seeded cases each)")
@PROPERTY
@given(fil9_tables(), unitriangular(9))
def test_c10_change_of_basis_invariance(T, M):
    S = change_basis(T, M)
    assert not check_jacobi(S)
    assert is_filiform(S) == is_filiform(T)
    a, b = central_series(T), central_series(S)
    assert a["descending"] == b["descending"] and a["ascending"] == b["ascending"]


@criterion(10, "property suites (>= 100 seeded cases each)")
@PROPERTY
@given(filiform_tables())
def test_c10_central_series_duality(T):
    n = T.dim
    cs = central_series(T)
    asc, desc = cs["ascending_bases"], cs["descending_bases"]
    for i in range(n - 1):
        assert same_subspace(asc[i], desc[n - i - 1], n)


@criterion(10, "property suites (>= 100 seeded cases each)")
@PROPERTY
@given(st.integers(3, 14))
def test_c10_characteristic_sequence_models(n):
    assert characteristic_sequence(model_filiform(n), unit(n, 0)) == (n - 1, 1)


@criterion(10, "property suites (>= 100 seeded cases each)")
@PROPERTY
@given(filiform_tables())
def test_c10_characteristic_sequence_families(T):
    assert characteristic_sequence(T, unit(T.dim, 0)) == (T.dim - 1, 1)


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
