"""Left-symmetric (affine) products on Lie algebras given by structure tables.

A product is stored by its left multiplications: ``L[i]`` is the matrix of
``Y -> X_i . Y`` acting on column vectors, so ``X_i . X_j`` is column ``j``
of ``L[i]``.  Entries may be Fractions or Polys.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .ceforms import ExtElement, gram_matrix, is_closed_two_form
from .liecore import StructureTable, ad_matrix, unit
from .scalars import Poly, det, solve_linear

__all__ = [
    "AffineProduct",
    "LeftSymmetryReport",
    "check_left_symmetric",
    "adjoint_type_build",
    "l1_from_tabulated",
    "tabulated_l1_first",
    "tabulated_l1_second",
    "corrected_l1_second",
    "affine_from_symplectic",
    "is_complete",
    "polarization_check",
    "polarization_parts",
]

Matrix = list[list]


def _zero(n: int) -> Matrix:
    return [[Fraction(0)] * n for _ in range(n)]


def _matmul(A: Matrix, B: Matrix) -> Matrix:
    n = len(A)
    out = _zero(n)
    for i in range(n):
        for k in range(n):
            a = A[i][k]
            if not a:
                continue
            row = B[k]
            for j in range(n):
                if row[j]:
                    out[i][j] = out[i][j] + a * row[j]
    return out


def _sub(A: Matrix, B: Matrix) -> Matrix:
    return [[x - y for x, y in zip(r, s)] for r, s in zip(A, B)]


def _add(A: Matrix, B: Matrix) -> Matrix:
    return [[x + y for x, y in zip(r, s)] for r, s in zip(A, B)]


def _apply(A: Matrix, v: Sequence) -> list:
    n = len(A)
    return [sum((A[i][j] * v[j] for j in range(n) if v[j] and A[i][j]), Fraction(0)) for i in range(n)]


def _clean(x):
    if isinstance(x, Poly) and x.is_constant():
        return x.constant_value()
    return x


@dataclass
class AffineProduct:
    dim: int
    L: list[Matrix]

    def mul(self, x: Sequence, y: Sequence) -> list:
        out = [Fraction(0)] * self.dim
        for i, xi in enumerate(x):
            if not xi:
                continue
            col = _apply(self.L[i], y)
            for k in range(self.dim):
                if col[k]:
                    out[k] = out[k] + xi * col[k]
        return [_clean(c) for c in out]

    def basis_product(self, i: int, j: int) -> list:
        return [_clean(self.L[i][k][j]) for k in range(self.dim)]

    def right(self, y: Sequence) -> Matrix:
        """Matrix of ``X -> X . y``."""
        cols = [_apply(self.L[i], y) for i in range(self.dim)]
        return [[cols[j][i] for j in range(self.dim)] for i in range(self.dim)]

    def subs(self, values: Mapping[str, object]) -> "AffineProduct":
        def s(x):
            return _clean(x.subs(values)) if isinstance(x, Poly) else x

        return AffineProduct(self.dim, [[[s(x) for x in row] for row in M] for M in self.L])

    def to_json(self) -> dict:
        products = {}
        for i in range(self.dim):
            for j in range(self.dim):
                col = self.basis_product(i, j)
                nz = {str(k): str(c) for k, c in enumerate(col) if c}
                if nz:
                    products[f"{i},{j}"] = nz
        return {"dim": self.dim, "products": products}

    @classmethod
    def from_json(cls, data: Mapping) -> "AffineProduct":
        from .scalars import parse_scalar

        n = int(data["dim"])
        L = [_zero(n) for _ in range(n)]
        for key, col in data.get("products", {}).items():
            i, j = (int(x) for x in key.split(","))
            if not (0 <= i < n and 0 <= j < n):
                raise IndexError(f"product index {key} out of range for dim {n}")
            for k, c in col.items():
                k = int(k)
                if not 0 <= k < n:
                    raise IndexError(f"product component {k} out of range for dim {n}")
                L[i][k][j] = parse_scalar(c)
        return cls(n, L)


@dataclass
class LeftSymmetryReport:
    ok: bool
    bracket_failures: list = field(default_factory=list)
    associator_failures: list = field(default_factory=list)

    def __bool__(self):
        return self.ok

    def residual_polys(self) -> list[Poly]:
        out = []
        for *_, res in self.bracket_failures + self.associator_failures:
            for c in res:
                if c:
                    out.append(Poly.coerce(c))
        return out


def _bracket_vec(T: StructureTable, i: int, j: int) -> list:
    v = [Fraction(0)] * T.dim
    for k, c in T.bracket(i, j).items():
        v[k] = c
    return v


def check_left_symmetric(P: AffineProduct, T: StructureTable, stop_early: bool = False) -> LeftSymmetryReport:
    """Commutator equals the bracket and the associator is symmetric in its first two slots.

    Failures are ``(i, j, residual)`` and ``(i, j, k, residual)`` on basis elements.
    """
    if P.dim != T.dim:
        raise ValueError("dimension mismatch")
    n = P.dim
    br_fail, as_fail = [], []
    prods = [[P.basis_product(i, j) for j in range(n)] for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            b = _bracket_vec(T, i, j)
            res = [_clean(prods[i][j][k] - prods[j][i][k] - b[k]) for k in range(n)]
            if any(res):
                br_fail.append((i, j, res))
                if stop_early:
                    return LeftSymmetryReport(False, br_fail, as_fail)

    def assoc(i, j, k):
        left = _apply(P.L[i], prods[j][k])
        right = P.mul(prods[i][j], unit(n, k))
        return [a - b for a, b in zip(left, right)]

    for i in range(n):
        for j in range(i + 1, n):
            for k in range(n):
                res = [_clean(a - b) for a, b in zip(assoc(i, j, k), assoc(j, i, k))]
                if any(res):
                    as_fail.append((i, j, k, res))
                    if stop_early:
                        return LeftSymmetryReport(False, br_fail, as_fail)
    return LeftSymmetryReport(not br_fail and not as_fail, br_fail, as_fail)


def adjoint_type_build(T: StructureTable, L1: Matrix) -> AffineProduct:
    """``L_0 = ad X_0``, the given ``L_1``, and ``L_i = [L_0, L_{i-1}]``."""
    n = T.dim
    L0 = ad_matrix(T, unit(n, 0))
    Ls = [L0, [list(r) for r in L1]]
    for _ in range(2, n):
        prev = Ls[-1]
        Ls.append(_sub(_matmul(L0, prev), _matmul(prev, L0)))
    return AffineProduct(n, [[[_clean(x) for x in row] for row in M] for M in Ls])


def l1_from_tabulated(T: StructureTable, M: Matrix) -> Matrix:
    """The tabulated matrices list ``L_1 - ad X_0``; add ``ad X_0`` back."""
    return _add(M, ad_matrix(T, unit(T.dim, 0)))


def _symbols(t, alphas):
    t = Poly.var("t") if t is None else Poly.coerce(t)
    if alphas is None:
        alphas = [Poly.var(f"alpha{i}") for i in range(1, 7)]
    return t, [Poly.coerce(a) for a in alphas]


def tabulated_l1_first(t=None, alphas=None) -> Matrix:
    t, (a1, a2, a3, a4, a5, a6) = _symbols(t, alphas)
    c = (a6 * 70 - t * 25 - 42) * Fraction(1, 375)
    z = Fraction(0)
    rows = [
        [z, a1, z, a2, z, z, z, z],
        [z] * 8,
        [z] * 8,
        [z, Fraction(-1, 5), z, z, z, z, z, z],
        [z] * 8,
        [z, c * 2, z, z, z, z, z, z],
        [z, a3 * 2, c, (a6 * 5 - 3) * Fraction(-2, 25), Fraction(1, 5), z, z, z],
        [z, a4, a3, a5, t * Fraction(1, 2) - (a6 * 5 - 3) * Fraction(3, 25), a6, Fraction(-1, 2), z],
    ]
    return [[_clean(x) for x in r] for r in rows]


def tabulated_l1_second(t=None, alphas=None, entry_61=None) -> Matrix:
    t, (a1, a2, a3, a4, a5, a6) = _symbols(t, alphas)
    d = (a6 * -210 + t * 125 - 42) * Fraction(1, 375)
    z = Fraction(0)
    rows = [
        [z, a1, z, a2, z, z, z, z],
        [z] * 8,
        [z] * 8,
        [z, Fraction(3, 5), z, z, z, z, z, z],
        [z, z, Fraction(2, 5), z, z, z, z, z],
        [z, d * 2, z, Fraction(-2, 5), z, z, z, z],
        [z, d * 2 if entry_61 is None else entry_61, d, (a6 * 5 + 1) * Fraction(-14, 25), Fraction(-3, 5), z, z, z],
        [z, a4, a3, a5, t * Fraction(1, 2) - (a6 * 5 + 1) * Fraction(21, 25), a6, Fraction(-1, 2), z],
    ]
    return [[_clean(x) for x in r] for r in rows]


def corrected_l1_second(t=None, alphas=None) -> Matrix:
    """Second table with entry (6, 1) read as ``2*alpha3`` (as in the first table)."""
    _, al = _symbols(t, alphas)
    return tabulated_l1_second(t, alphas, entry_61=al[2] * 2)


def affine_from_symplectic(T: StructureTable, theta: ExtElement) -> AffineProduct:
    """Product with ``theta(X.Y, Z) = -theta(Y, [X, Z])`` for a symplectic ``theta``."""
    n = T.dim
    if not is_closed_two_form(T, theta):
        raise ValueError("form is not closed")
    G = gram_matrix(theta)
    if det(G) == 0:
        raise ValueError("form is degenerate")
    GT = [[G[c][z] for c in range(n)] for z in range(n)]
    L = [_zero(n) for _ in range(n)]
    for x in range(n):
        for y in range(n):
            rhs = []
            for z in range(n):
                acc = Fraction(0)
                for k, c in T.bracket(x, z).items():
                    acc += G[y][k] * c
                rhs.append(-acc)
            sol = solve_linear(GT, rhs)
            for c in range(n):
                L[x][c][y] = sol[c]
    return AffineProduct(n, L)


def _mat_pow_zero(R: Matrix, n: int) -> bool:
    M = R
    for _ in range(n - 1):
        M = _matmul(M, R)
    return not any(_clean(x) for row in M for x in row)


@dataclass
class CompletenessReport:
    complete: bool
    traces: list
    nilpotent: list[bool]

    def __bool__(self):
        return self.complete


def is_complete(P: AffineProduct, samples: int = 5, seed: int = 0) -> CompletenessReport:
    """Trace of ``R_Y`` vanishes and ``R_Y^n = 0`` for basis and sampled ``Y``."""
    n = P.dim
    rng = random.Random(seed)
    ys = [unit(n, i) for i in range(n)]
    ys += [[Fraction(rng.randint(-3, 3)) for _ in range(n)] for _ in range(samples)]
    traces, nil = [], []
    for y in ys:
        R = P.right(y)
        traces.append(_clean(sum((R[i][i] for i in range(n)), Fraction(0))))
        nil.append(_mat_pow_zero(R, n))
    return CompletenessReport(all(not tr for tr in traces) and all(nil), traces, nil)


def polarization_parts(P: AffineProduct):
    """Bilinear maps ``mu = nabla - nabla^op`` and ``s = nabla + nabla^op`` on vectors."""

    def mu(x, y):
        return [a - b for a, b in zip(P.mul(x, y), P.mul(y, x))]

    def s(x, y):
        return [a + b for a, b in zip(P.mul(x, y), P.mul(y, x))]

    return mu, s


def _A(mu, s, X, Y, Z):
    terms = [
        (1, mu(mu(X, Y), Z)), (1, mu(s(Y, Z), X)), (-1, mu(s(Z, X), Y)), (2, s(mu(X, Y), Z)),
        (-1, s(mu(Y, Z), X)), (1, s(mu(X, Z), Y)), (-1, s(s(Y, Z), X)), (1, s(s(X, Z), Y)),
    ]
    n = len(X)
    return [_clean(sum((c * v[k] for c, v in terms), Fraction(0))) for k in range(n)]


@dataclass
class PolarizationReport:
    """``a_vanishes`` is the affine condition; ``cyclic_jacobi`` is the formal
    identity ``A(X,Y,Z) + A(Y,Z,X) + A(Z,X,Y) = Jac_mu(X,Y,Z)``.

    ``quoted_cyclic`` records whether the commonly quoted right-hand side
    ``2(mu(s(X,Y),Z) + mu(s(Y,Z),X) + mu(s(Z,X),Y))`` also matches; it does
    not in general.
    """

    a_vanishes: bool
    cyclic_jacobi: bool
    quoted_cyclic: bool
    a_failures: list = field(default_factory=list)

    def __bool__(self):
        return self.a_vanishes and self.cyclic_jacobi


def _cyc(f, X, Y, Z):
    return [a + b + c for a, b, c in zip(f(X, Y, Z), f(Y, Z, X), f(Z, X, Y))]


def polarization_check(P: AffineProduct) -> PolarizationReport:
    """Evaluate the polarized affine condition ``A`` and its cyclic sums on basis triples."""
    n = P.dim
    mu, s = polarization_parts(P)
    e = [unit(n, i) for i in range(n)]
    fails, jac_ok, quoted_ok = [], True, True
    for i in range(n):
        for j in range(n):
            for k in range(n):
                a = _A(mu, s, e[i], e[j], e[k])
                if any(a):
                    fails.append((i, j, k, a))
    A = lambda X, Y, Z: _A(mu, s, X, Y, Z)  # noqa: E731
    jac = lambda X, Y, Z: mu(mu(X, Y), Z)  # noqa: E731
    ms = lambda X, Y, Z: [2 * c for c in mu(s(X, Y), Z)]  # noqa: E731
    for i, j, k in itertools.combinations_with_replacement(range(n), 3):
        for X, Y, Z in {(i, j, k), (i, k, j)}:
            lhs = _cyc(A, e[X], e[Y], e[Z])
            if any(_clean(a - b) for a, b in zip(lhs, _cyc(jac, e[X], e[Y], e[Z]))):
                jac_ok = False
            if any(_clean(a - b) for a, b in zip(lhs, _cyc(ms, e[X], e[Y], e[Z]))):
                quoted_ok = False
    return PolarizationReport(not fails, jac_ok, quoted_ok, fails)
