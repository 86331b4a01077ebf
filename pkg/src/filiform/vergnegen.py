"""Generic filiform brackets in a Vergne basis and their Jacobi ideals.

The free data are the top constants ``C_{i,j}^{n-1}`` with ``1 <= i < j``,
``i + j <= n - 1`` and ``(i, j) != (1, n - 2)``.  Every lower constant follows
from the shift relation ``C_{i,j}^{m-1} = C_{i+1,j}^m + C_{i,j+1}^m``, which is
the Jacobi identity for triples containing ``X_0``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Mapping, Sequence

from .liecore import StructureTable, _bracket_sparse, check_jacobi, jacobi_residual
from .scalars import Poly, var_key

__all__ = [
    "GenericBracket",
    "JacobiEquation",
    "Certificate",
    "Reduction",
    "param_name",
    "generic_filiform",
    "jacobi_ideal",
    "shift",
    "reduce_ideal",
    "verify_certificate",
    "equation_count",
    "series_terms",
    "triple_count",
    "reduced_count",
    "reduced_count_for",
    "ALIASES",
    "alias_substitution",
]


def param_name(i: int, j: int) -> str:
    """Canonical name of ``C_{i,j}^{n-1}``."""
    return f"a{i:02d}_{j:02d}"


@dataclass(frozen=True)
class SquareStep:
    """One normalization step: a Jacobi component equal to ``c * L^2``."""

    triple: tuple
    component: int
    poly: Poly
    linear: Poly
    eliminated: str
    value: Poly


@dataclass
class GenericBracket:
    dim: int
    params: list[str]
    table: StructureTable
    relations: dict[str, Poly] = field(default_factory=dict)
    steps: list[SquareStep] = field(default_factory=list)
    leftover: list = field(default_factory=list)

    @property
    def free_count(self) -> int:
        return len(self.params)

    def coefficient(self, i: int, j: int, k: int):
        return self.table.coeff(i, j, k)


def _raw_top(n: int) -> dict[tuple[int, int], Poly]:
    top = {}
    for i in range(1, n):
        for j in range(i + 1, n):
            if i + j <= n - 1 and (i, j) != (1, n - 2):
                top[(i, j)] = Poly.var(param_name(i, j))
    return top


def _table_from_top(n: int, top: Mapping[tuple[int, int], object]) -> StructureTable:
    memo: dict = {}

    def get(i, j, k):
        if i == j or j > n - 1 or k > n - 1 or k < i + j:
            return 0
        if i > j:
            return -get(j, i, k)
        if k == n - 1:
            return top.get((i, j), 0)
        key = (i, j, k)
        if key not in memo:
            memo[key] = get(i + 1, j, k + 1) + get(i, j + 1, k + 1)
        return memo[key]

    coeffs = {}
    for i in range(1, n - 1):
        coeffs[(0, i, i + 1)] = Fraction(1)
    for i in range(1, n):
        for j in range(i + 1, n):
            for k in range(i + j, n):
                c = get(i, j, k)
                if c:
                    coeffs[(i, j, k)] = c
    return StructureTable(n, coeffs)


def _rank_one_root(q: Poly) -> Poly | None:
    """If ``q = c * L^2`` for a linear form ``L``, return ``L`` (up to scale)."""
    if q.degree() != 2 or not q.is_homogeneous():
        return None
    for v in q.variables():
        cvv = q.terms.get(((v, 2),))
        if cvv:
            half = q.diff(v) * Fraction(1, 2)
            if half * half == q * cvv:
                return half
            return None
    return None


def _weight_zero(T: StructureTable) -> list[tuple[tuple, int, Poly]]:
    out = []
    n = T.dim
    for i, j, k in combinations(range(1, n), 3):
        m = i + j + k
        if m > n - 1:
            continue
        r = jacobi_residual(T, i, j, k).get(m)
        if r:
            out.append(((i, j, k), m, Poly.coerce(r)))
    return out


def generic_filiform(n: int, normalize: bool = True) -> GenericBracket:
    """Generic Vergne-basis bracket of dimension ``n``.

    With ``normalize`` the weight-zero Jacobi components (those involving only
    the constants with ``i + j = n - 1``) are scanned for perfect squares
    ``c * L^2``; each one forces ``L = 0`` on the reduced variety, which is
    imposed by eliminating the last variable of ``L``.  The scan repeats until
    no square remains.
    """
    if n < 5:
        raise ValueError("generic filiform brackets need n >= 5")
    top = _raw_top(n)
    relations: dict[str, Poly] = {}
    steps: list[SquareStep] = []
    T = _table_from_top(n, top)
    leftover: list = []
    if normalize:
        while True:
            found = None
            for triple, m, q in _weight_zero(T):
                root = _rank_one_root(q)
                if root is not None:
                    found = (triple, m, q, root)
                    break
            if found is None:
                leftover = _weight_zero(T)
                break
            triple, m, q, root = found
            lin = root.linear_coefficients()
            var = max(lin, key=var_key)
            value = -(root - Poly.var(var) * lin[var]) * (1 / lin[var])
            steps.append(SquareStep(triple, m, q, root, var, value))
            relations = {k: v.subs({var: value}) for k, v in relations.items()}
            relations[var] = value
            top = {key: Poly.coerce(c).subs({var: value}) for key, c in top.items()}
            T = _table_from_top(n, top)
    params = sorted({v for c in top.values() for v in Poly.coerce(c).variables()}, key=var_key)
    return GenericBracket(n, params, T, relations, steps, leftover)


# ---------------------------------------------------------------------------
# Jacobi equations


@dataclass(frozen=True)
class JacobiEquation:
    dim: int
    triple: tuple
    components: tuple  # ((m, Poly), ...) sorted by m

    @property
    def weight(self) -> int:
        return sum(self.triple)

    @property
    def polys(self) -> list[Poly]:
        return [p for _, p in self.components]

    def component(self, m: int) -> Poly:
        return dict(self.components).get(m, Poly())

    def as_dict(self) -> dict[int, Poly]:
        return dict(self.components)


def jacobi_ideal(G: GenericBracket) -> list[JacobiEquation]:
    """Nonzero Jacobiators of the generic bracket, ordered by weight."""
    eqs = []
    for fail in check_jacobi(G.table):
        comps = tuple((m, Poly.coerce(p)) for m, p in sorted(fail.residual.items()))
        eqs.append(JacobiEquation(G.dim, fail.triple, comps))
    eqs.sort(key=lambda e: (e.weight, e.triple))
    return eqs


def shift(vec: Mapping[int, object], n: int) -> dict[int, object]:
    """``[X_0, v]`` for ``v`` supported on ``X_1..X_{n-1}``."""
    return {m + 1: c for m, c in vec.items() if 1 <= m < n - 1 and c}


def _shift_terms(s: tuple, n: int) -> list[tuple]:
    i, j, k = s
    out = []
    for t in ((i + 1, j, k), (i, j + 1, k), (i, j, k + 1)):
        if t[2] <= n - 1 and len(set(t)) == 3:
            out.append(t)
    return out


# ---------------------------------------------------------------------------
# reduction


@dataclass
class Certificate:
    """How an eliminated equation is recovered from others.

    ``kind == "x0"``: ``J(target) = sum c * [X_0, J(s)] - sum c * J(u)`` with
    ``sources = [(c, s), ...]`` and ``others = [(c, u), ...]``.

    ``kind == "x1"``: ``guard * J(target)`` equals the remaining terms of the
    four-term identity for the quadruple ``(1, i, j, k)``; valid where the
    guard constant is nonzero.
    """

    target: tuple
    kind: str
    sources: list = field(default_factory=list)
    others: list = field(default_factory=list)
    quadruple: tuple | None = None
    guard: object = None


@dataclass
class Reduction:
    generators: list[JacobiEquation]
    certificates: list[Certificate]
    eliminated: list[tuple]

    @property
    def generator_triples(self) -> list[tuple]:
        return [g.triple for g in self.generators]


def _elimination_order(t: tuple):
    # eliminate the most unbalanced triples first
    i, j, k = t
    return (-k, -j, i)


def _add_into(acc: dict, vec: Mapping, c) -> None:
    for m, v in vec.items():
        acc[m] = acc.get(m, 0) + c * v


def reduce_ideal(
    eqs: Sequence[JacobiEquation],
    generic: GenericBracket | None = None,
    use_x1: bool = False,
    point: Mapping[str, object] | None = None,
) -> Reduction:
    """Greedy ascending-weight reduction with shift certificates.

    Equations of weight ``w`` are related to weight ``w - 1`` ones through
    ``[X_0, J(i,j,k)] = J(i+1,j,k) + J(i,j+1,k) + J(i,j,k+1)``.  At each weight
    the relations are row-reduced; pivot triples are eliminated and the rest
    are kept.  With ``use_x1`` (requires ``generic`` and ``point``) a kept
    triple may also be eliminated through the quadruple identity on
    ``(X_1, X_i, X_j, X_k)`` when its guarding constant is nonzero at
    ``point``.
    """
    if not eqs:
        return Reduction([], [], [])
    n = eqs[0].dim
    eqmap = {e.triple: e for e in eqs}
    weights = sorted({e.weight for e in eqs})
    generators: list[JacobiEquation] = []
    certs: list[Certificate] = []
    eliminated: list[tuple] = []
    x1_rows = _x1_rows(generic, point, set(eqmap)) if use_x1 else {}
    locked: set = set()

    for w in range(weights[0], weights[-1] + 1):
        unknown = sorted((t for t in eqmap if sum(t) == w), key=_elimination_order)
        if not unknown:
            continue
        col = {t: c for c, t in enumerate(unknown)}
        rows, srcs = [], []
        for s in combinations(range(1, n), 3):
            if sum(s) != w - 1:
                continue
            terms = [t for t in _shift_terms(s, n) if t in col]
            if not terms:
                continue
            row = [Fraction(0)] * len(unknown)
            for t in terms:
                row[col[t]] += 1
            rows.append(row)
            srcs.append(s)
        pivots = _rref_with_history(rows, len(unknown))
        pivot_cols = set()
        for pc, row, hist in pivots:
            t = unknown[pc]
            pivot_cols.add(pc)
            others = [(row[c], unknown[c]) for c in range(len(unknown)) if c != pc and row[c]]
            sources = [(h, srcs[r]) for r, h in enumerate(hist) if h]
            certs.append(Certificate(t, "x0", sources, others))
            eliminated.append(t)
        free = [unknown[c] for c in range(len(unknown)) if c not in pivot_cols]
        kept = []
        for t in free:
            row = x1_rows.get(t) if t not in locked else None
            if row is not None:
                quad, guard, top_terms = row
                blockers = [u for u in top_terms if u != t and u in free and u not in kept and u not in locked]
                if not blockers:
                    locked.update(u for u in top_terms if u != t)
                    certs.append(Certificate(t, "x1", quadruple=quad, guard=guard))
                    eliminated.append(t)
                    continue
            kept.append(t)
            locked.add(t)
        generators.extend(eqmap[t] for t in sorted(kept))
    generators.sort(key=lambda e: (e.weight, e.triple))
    return Reduction(generators, certs, eliminated)


def _rref_with_history(rows: list[list[Fraction]], ncols: int):
    """Row reduction keeping the combination of original rows for each pivot."""
    m = len(rows)
    A = [list(r) for r in rows]
    H = [[Fraction(int(a == b)) for b in range(m)] for a in range(m)]
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, m) if A[i][c]), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        H[r], H[p] = H[p], H[r]
        inv = 1 / A[r][c]
        A[r] = [x * inv for x in A[r]]
        H[r] = [x * inv for x in H[r]]
        for i in range(m):
            if i != r and A[i][c]:
                f = A[i][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[r])]
                H[i] = [x - f * y for x, y in zip(H[i], H[r])]
        pivots.append((c, A[r], H[r]))
        r += 1
        if r == m:
            break
    return pivots


def _sparse_unit(i: int) -> dict:
    return {i: Fraction(1)}


def _jac_vec(T: StructureTable, u: Mapping, v: Mapping, w: Mapping) -> dict:
    total: dict = {}
    for a, b, c in ((u, v, w), (v, w, u), (w, u, v)):
        _add_into(total, _bracket_sparse(T, _bracket_sparse(T, a, b), c), 1)
    return {m: x for m, x in total.items() if x}


def _quad_sides(T: StructureTable, quad: tuple):
    """Both sides of the four-term Jacobiator identity on basis elements.

    ``[x,J(y,z,w)] - [y,J(x,z,w)] + [z,J(x,y,w)] - [w,J(x,y,z)]
    = J([x,y],z,w) - J([x,z],y,w) + J([x,w],y,z) + J([y,z],x,w) - J([y,w],x,z) + J([z,w],x,y)``
    """
    x, y, z, w = (_sparse_unit(q) for q in quad)
    br = lambda a, b: _bracket_sparse(T, a, b)  # noqa: E731
    lhs: dict = {}
    _add_into(lhs, br(x, _jac_vec(T, y, z, w)), 1)
    _add_into(lhs, br(y, _jac_vec(T, x, z, w)), -1)
    _add_into(lhs, br(z, _jac_vec(T, x, y, w)), 1)
    _add_into(lhs, br(w, _jac_vec(T, x, y, z)), -1)
    rhs_terms = [
        (1, br(x, y), z, w),
        (-1, br(x, z), y, w),
        (1, br(x, w), y, z),
        (1, br(y, z), x, w),
        (-1, br(y, w), x, z),
        (1, br(z, w), x, y),
    ]
    return lhs, rhs_terms


def _expand_rhs(rhs_terms) -> dict[tuple, tuple[int, object]]:
    """Collect ``J(X_m, X_a, X_b)`` contributions as sorted triple -> coefficient."""
    out: dict = {}
    for sign, vec, b, c in rhs_terms:
        (bi,) = b
        (ci,) = c
        for m, coef in vec.items():
            idx = (m, bi, ci)
            if len(set(idx)) < 3:
                continue
            order = sorted(idx)
            perm_sign = _perm_sign(idx)
            out[tuple(order)] = out.get(tuple(order), 0) + sign * perm_sign * coef
    return {t: c for t, c in out.items() if c}


def _perm_sign(seq) -> int:
    inv = sum(1 for a, b in combinations(seq, 2) if a > b)
    return -1 if inv % 2 else 1


def _x1_rows(generic: GenericBracket | None, point, live_triples: set):
    """For each triple, a quadruple identity where it is the top-weight guarded term."""
    if generic is None or point is None:
        raise ValueError("X_1 reduction needs the generic bracket and an evaluation point")
    T = generic.table
    n = T.dim
    rows: dict = {}
    for i, j, k in combinations(range(2, n), 3):
        _, rhs_terms = _quad_sides(T, (1, i, j, k))
        expanded = _expand_rhs(rhs_terms)
        live = {t: c for t, c in expanded.items() if t in live_triples and _nonzero_at(c, point)}
        if not live:
            continue
        top = max(sum(t) for t in live)
        top_terms = sorted((t for t in live if sum(t) == top), key=_elimination_order)
        target = top_terms[0]
        if target in rows:
            continue
        rows[target] = ((1, i, j, k), expanded[target], top_terms)
    return rows


def _nonzero_at(c, point) -> bool:
    if isinstance(c, Poly):
        missing = [v for v in c.variables() if v not in point]
        if missing:
            return bool(c)
        return c.eval(point) != 0
    return c != 0


def verify_certificate(
    eqs: Sequence[JacobiEquation], cert: Certificate, generic: GenericBracket | None = None
) -> bool:
    """Recompute the stated combination exactly."""
    n = eqs[0].dim
    eqmap = {e.triple: e.as_dict() for e in eqs}
    target = eqmap.get(cert.target, {})
    if cert.kind == "x0":
        acc: dict = {}
        for c, s in cert.sources:
            _add_into(acc, shift(eqmap.get(s, {}), n), c)
        for c, u in cert.others:
            _add_into(acc, eqmap.get(u, {}), -c)
        diff = dict(acc)
        _add_into(diff, target, -1)
        return not any(diff.values())
    if cert.kind == "x1":
        if generic is None:
            raise ValueError("X_1 certificates need the generic bracket")
        lhs, rhs_terms = _quad_sides(generic.table, cert.quadruple)
        expanded = _expand_rhs(rhs_terms)
        # guard * J(target) = lhs - sum of the other rhs terms
        acc = dict(lhs)
        for t, c in expanded.items():
            if t != cert.target:
                _add_into(acc, eqmap.get(t, {}), -c)
        diff = dict(acc)
        _add_into(diff, target, -cert.guard)
        return not any(Poly.coerce(v) for v in diff.values())
    raise ValueError(f"unknown certificate kind {cert.kind!r}")


# ---------------------------------------------------------------------------
# counting formulas


def series_terms(p: int) -> list[int]:
    """``(p-3)^2, (p-4)(p-5), (p-6)^2, (p-7)(p-8), ...`` up to the first vanishing factor."""
    terms = []
    k = 0
    while True:
        if k % 2 == 0:
            f = p - 3 - 3 * k // 2
            if f <= 0:
                break
            terms.append(f * f)
        else:
            f = p - 4 - 3 * (k - 1) // 2
            if f - 1 <= 0:
                break
            terms.append(f * (f - 1))
        k += 1
    return terms


def _epsilon(p: int) -> int:
    return {0: 2, 1: 1, 2: 4}[p % 3]


def triple_count(p: int) -> int:
    """Triples ``1 <= i < j < k`` of weight at most ``2p - 2``."""
    return sum(1 for t in combinations(range(1, 2 * p), 3) if sum(t) <= 2 * p - 2)


def equation_count(p: int, brute_force: bool = False) -> dict:
    """Series with its mod-3 correction, next to independent counts.

    ``triples`` counts triples of weight ``<= 2p - 2`` (the ones that can carry
    a quadratic equation); ``brute_force`` additionally counts the nonzero
    Jacobiators of ``generic_filiform(2p + 1)``.
    """
    if p < 3:
        raise ValueError("p must be at least 3")
    terms = series_terms(p)
    series = sum(terms)
    eps = _epsilon(p)
    out = {
        "p": p,
        "terms": terms,
        "series": series,
        "epsilon": eps,
        "literal": series + eps,
        "triples": triple_count(p),
    }
    if brute_force:
        out["brute_force"] = len(jacobi_ideal(generic_filiform(2 * p + 1)))
    truth = out.get("brute_force", out["triples"])
    out["literal_matches"] = out["literal"] == truth
    out["series_matches"] = series == truth
    return out


def reduced_count(m: int, r: int) -> int:
    """``N_r`` for ``2p - 2 = 3m + r``."""
    if r == 0 and m % 2 == 0:
        h = m // 2
        return 3 * h * h - 3 * h + 1
    if r == 1 and m % 2 == 1:
        h = (m - 1) // 2
        return 3 * h * h + 3 * h
    if r == 2 and m % 2 == 0:
        h = m // 2
        return 3 * h * h - h
    raise ValueError(f"no closed formula for m={m}, r={r}")


def reduced_count_for(p: int) -> dict:
    m, r = divmod(2 * p - 2, 3)
    try:
        value = reduced_count(m, r)
    except ValueError:
        value = None
    return {"p": p, "m": m, "r": r, "value": value}


# ---------------------------------------------------------------------------
# alias maps: customary short names against canonical top constants

ALIASES: dict[int, dict[str, tuple[int, int]]] = {
    8: {"a1": (2, 5), "a2": (1, 5), "a4": (2, 4), "a5": (1, 4), "a6": (2, 3), "a7": (1, 3), "a8": (1, 2)},
    9: {
        "a2": (1, 6), "a4": (2, 5), "a6": (3, 4), "a5": (1, 5), "a7": (2, 4),
        "a8": (1, 4), "a9": (2, 3), "a10": (1, 3), "a11": (1, 2),
    },
    10: {
        "a1": (2, 7), "a2": (1, 7), "a4": (2, 6), "a5": (1, 6), "a7": (3, 5), "a8": (2, 5),
        "a9": (1, 5), "a10": (3, 4), "a11": (2, 4), "a12": (1, 4), "a13": (2, 3),
        "a14": (1, 3), "a15": (1, 2),
    },
    11: {
        "a2": (1, 8), "a4": (2, 7), "a5": (1, 7), "a7": (3, 6), "a8": (2, 6), "a9": (1, 6),
        "a10": (4, 5), "a11": (3, 5), "a12": (2, 5), "a13": (1, 5), "a14": (3, 4),
        "a15": (2, 4), "a16": (1, 4), "a17": (2, 3), "a18": (1, 3), "a19": (1, 2),
    },
}


def alias_substitution(n: int) -> dict[str, Poly]:
    """Canonical parameter -> Poly in the short names, for dims with an alias map."""
    if n not in ALIASES:
        raise KeyError(f"no alias map for dimension {n}")
    return {param_name(i, j): Poly.var(name) for name, (i, j) in ALIASES[n].items()}
