"""Deformation cohomology restricted to a family's bracket pattern.

A family is affine-linear in its parameters, ``mu(a) = mu_0 + sum a_p Phi_p``.
Cochains are ``psi = sum u_p Phi_p``; a cochain is a cocycle at ``a`` when the
first-order (t-linear) part of every family constraint at ``a + t u``
vanishes.  Coboundaries come from endomorphisms ``f`` determined by
``f(X_0)`` and ``f(X_1)``.

Sign convention: ``delta f(X, Y) = [fX, Y] + [X, fY] - f[X, Y]``.
"""
from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .ceforms import ExtElement, central_extension, gram_matrix, is_closed_two_form
from .families import ConstraintViolation, FamilyDescriptor, coerce_params, get_family
from .liecore import StructureTable, _bracket_sparse, check_jacobi, quotient_by_center
from .scalars import Poly, det, rank, rank_kernel

__all__ = [
    "CochainSpace",
    "CoboundaryMap",
    "PatternEscape",
    "DeformationReport",
    "LINEAR_AMBIENTS",
    "resolve_point",
    "cocycle_space",
    "coboundary_space",
    "cohomology",
    "h2_dim",
    "check_linear_deformation",
    "symplectic_deformation_check",
    "sweep",
]

# families whose pattern is affine-linear and whose parameters are the cochain coordinates
LINEAR_AMBIENTS = ("fil8", "fil8c1", "fil8c2", "fil9", "fil10", "fil11", "sympl8b", "sympl8a", "sympl10")

_T = "_t"


class PatternEscape(ValueError):
    def __init__(self, family: str, pairs):
        self.family = family
        self.pairs = sorted(pairs)
        super().__init__(f"{family}: coboundary leaves the cochain pattern at {self.pairs}")


def _u(name: str) -> str:
    return "u" + name[1:]


def resolve_point(family_id: str, params: Mapping[str, object] | None) -> tuple[FamilyDescriptor, dict]:
    """Map a point of a (possibly specialized) family to its linear ambient family."""
    desc = get_family(family_id)
    values = coerce_params(params)
    unknown = set(values) - set(desc.params)
    if unknown:
        raise KeyError(f"{family_id}: unknown parameters {sorted(unknown)}")
    point = {p: values.get(p, Fraction(0)) for p in desc.params}
    while desc.id not in LINEAR_AMBIENTS:
        if desc.base is None:
            raise ValueError(f"{family_id}: no linear ambient family for cohomology")
        base = get_family(desc.base)
        new = {}
        for p in base.params:
            if p in desc.base_values:
                v = desc.base_values[p].subs(point)
            else:
                v = point.get(p, Fraction(0))
            new[p] = v.constant_value() if isinstance(v, Poly) and v.is_constant() else v
        desc, point = base, new
    return desc, point


def _check_constraints(desc: FamilyDescriptor, point: Mapping) -> None:
    for c in desc.constraints:
        v = c.subs(point)
        if v:
            raise ConstraintViolation(desc.id, c, v)


def _table_vector(T: StructureTable) -> dict:
    return {(i, j, k): c for i, j, k, c in T.triples() if c}


@dataclass
class CochainSpace:
    family: str
    point: dict
    coords: tuple[str, ...]
    directions: list[list[Fraction]]
    basis: list[StructureTable]
    linear_conditions: list[Poly]
    higher_conditions: list[Poly] = field(default_factory=list)

    @property
    def dim(self) -> int:
        return len(self.directions)

    def contains(self, u: Sequence) -> bool:
        assign = dict(zip(self.coords, u))
        return all(c.subs(assign) == 0 for c in self.linear_conditions)


def cocycle_space(family_id: str, params: Mapping[str, object] | None = None) -> CochainSpace:
    """Pattern cochains tangent to the family at ``params``.

    The t-free part of each constraint is the base-point check; the t-linear
    part gives the linear cocycle conditions.  Higher t-coefficients are
    reported in ``higher_conditions`` and tested by
    :func:`check_linear_deformation`.
    """
    desc, point = resolve_point(family_id, params)
    _check_constraints(desc, point)
    _, parts = desc.linear_part()
    coords = tuple(_u(p) for p in desc.params)
    t = Poly.var(_T)
    shifted = {p: Poly.coerce(point[p]) + t * Poly.var(_u(p)) for p in desc.params}
    linear, higher = [], []
    for c in desc.constraints:
        by_deg = c.subs(shifted).coeffs_in(_T)
        for deg, q in sorted(by_deg.items()):
            if deg == 1 and q:
                linear.append(q)
            elif deg >= 2 and q:
                higher.append(q)
    rows = [[q.linear_coefficients().get(u, Fraction(0)) for u in coords] for q in linear]
    if any(q.degree() > 1 for q in linear):
        raise ValueError("cocycle_space needs a rational base point")
    _, kernel = rank_kernel(rows, len(coords))
    basis = []
    for vec in kernel:
        acc = StructureTable(desc.dim, {})
        for p, c in zip(desc.params, vec):
            if c:
                acc = acc + parts[p].scale(c)
        basis.append(acc)
    return CochainSpace(desc.id, point, coords, kernel, basis, linear, higher)


@dataclass
class CoboundaryMap:
    family: str
    point: dict
    coords: tuple[str, ...]
    alphas: tuple[str, ...]
    betas: tuple[str, ...]
    v: dict[str, Poly]

    @property
    def unknowns(self) -> tuple[str, ...]:
        return self.alphas + self.betas

    def matrix(self) -> list[list]:
        """Rows indexed by cochain coordinates, columns by (alpha, beta)."""
        out = []
        for u in self.coords:
            lin = self.v[u]
            row = []
            for x in self.unknowns:
                c = lin.coeffs_in(x).get(1, Poly())
                row.append(c.constant_value() if c.is_constant() else c)
            out.append(row)
        return out

    def rank(self) -> int:
        m = self.matrix()
        if any(isinstance(x, Poly) for row in m for x in row):
            raise ValueError("rank needs a rational base point")
        return rank(m, len(self.unknowns))

    def image_basis(self) -> list[list[Fraction]]:
        m = self.matrix()
        cols = [[m[r][c] for r in range(len(m))] for c in range(len(self.unknowns))]
        out: list[list[Fraction]] = []
        for col in cols:
            if rank(out + [col], len(self.coords)) > len(out):
                out.append(col)
        return out


def endomorphism_images(T: StructureTable) -> tuple[list[dict], tuple[str, ...], tuple[str, ...]]:
    """Images ``f(X_i)`` for f fixed by free ``f(X_0)``, ``f(X_1)``."""
    n = T.dim
    alphas = tuple(f"alpha{i}" for i in range(n))
    betas = tuple(f"beta{i}" for i in range(1, n))
    f = [{i: Poly.var(a) for i, a in enumerate(alphas)}, {i + 1: Poly.var(b) for i, b in enumerate(betas)}]
    for k in range(2, n):
        prev = {k - 1: Fraction(1)}
        img = _bracket_sparse(T, f[0], prev)
        for m, c in _bracket_sparse(T, {0: Fraction(1)}, f[k - 1]).items():
            img[m] = img.get(m, 0) + c
        f.append({m: c for m, c in img.items() if c})
    return f, alphas, betas


def coboundary_vector(T: StructureTable) -> tuple[dict, tuple, tuple]:
    """All components of ``delta f`` keyed by ``(i, j, k)`` with ``i < j``."""
    f, alphas, betas = endomorphism_images(T)
    n = T.dim
    out = {}
    for i in range(n):
        for j in range(i + 1, n):
            val = _bracket_sparse(T, f[i], {j: Fraction(1)})
            for m, c in _bracket_sparse(T, {i: Fraction(1)}, f[j]).items():
                val[m] = val.get(m, 0) + c
            for m, c in T.bracket(i, j).items():
                for k, d in f[m].items():
                    val[k] = val.get(k, 0) - c * d
            for k, c in val.items():
                if c:
                    out[(i, j, k)] = Poly.coerce(c)
    return out, alphas, betas


def coboundary_space(
    family_id: str, params: Mapping[str, object] | None = None, check: bool = True
) -> CoboundaryMap:
    """Coordinates of ``delta f`` in the cochain basis, linear in (alpha, beta).

    Parameters may be Polys for a generic computation; pass ``check=False``
    when the family constraints cannot hold identically at such a point (the
    pattern relations are then only solved on independent rows, not verified).
    Raises :class:`PatternEscape` when some component of ``delta f`` cannot
    be written in the family's pattern.
    """
    desc, point = resolve_point(family_id, params)
    if check:
        _check_constraints(desc, point)
    _, parts = desc.linear_part()
    T = desc.table(point)
    D, alphas, betas = coboundary_vector(T)
    vecs = {p: _table_vector(parts[p]) for p in desc.params}
    support = sorted(set().union(*vecs.values()) if vecs else set())
    escaped = {(i, j) for (i, j, k) in D if (i, j, k) not in set(support)}
    if escaped:
        raise PatternEscape(desc.id, escaped)
    # choose independent pattern rows, solve there, then verify the rest
    chosen, rows = [], []
    for key in support:
        row = [vecs[p].get(key, Fraction(0)) for p in desc.params]
        if rank(rows + [row], len(desc.params)) > len(rows):
            rows.append(row)
            chosen.append(key)
    if len(rows) < len(desc.params):
        raise ValueError(f"{desc.id}: pattern directions are linearly dependent")
    inv = _inverse(rows)
    coords = tuple(_u(p) for p in desc.params)
    v = {}
    for r, u in enumerate(coords):
        acc = Poly()
        for c, key in enumerate(chosen):
            if inv[r][c]:
                acc = acc + D.get(key, Poly()) * inv[r][c]
        v[u] = acc
    bad = set()
    for key in support if check else ():
        recon = Poly()
        for p, u in zip(desc.params, coords):
            c = vecs[p].get(key)
            if c:
                recon = recon + v[u] * c
        if recon != D.get(key, Poly()):
            bad.add(key[:2])
    if bad:
        raise PatternEscape(desc.id, bad)
    return CoboundaryMap(desc.id, point, coords, alphas, betas, v)


def _inverse(m: list[list[Fraction]]) -> list[list[Fraction]]:
    n = len(m)
    a = [list(map(Fraction, row)) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    for c in range(n):
        p = next(r for r in range(c, n) if a[r][c])
        a[c], a[p] = a[p], a[c]
        inv = 1 / a[c][c]
        a[c] = [x * inv for x in a[c]]
        for r in range(n):
            if r != c and a[r][c]:
                f = a[r][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return [row[n:] for row in a]


@dataclass
class CohomologyReport:
    family: str
    point: dict
    dim_z2: int
    rank_b2: int

    @property
    def dim_h2(self) -> int:
        return self.dim_z2 - self.rank_b2

    def as_dict(self) -> dict:
        return {"family": self.family, "dimZ2": self.dim_z2, "rankB2": self.rank_b2, "dimH2": self.dim_h2}


def cohomology(family_id: str, params: Mapping[str, object] | None = None) -> CohomologyReport:
    Z = cocycle_space(family_id, params)
    B = coboundary_space(family_id, params)
    for col in B.image_basis():
        if not Z.contains(col):
            raise AssertionError(f"{family_id}: coboundary outside the cocycle space")
    return CohomologyReport(Z.family, Z.point, Z.dim, B.rank())


def h2_dim(family_id: str, params: Mapping[str, object] | None = None) -> int:
    return cohomology(family_id, params).dim_h2


@dataclass
class DeformationReport:
    ok: bool
    failures: list[tuple[tuple[int, int, int], int, int, object]] = field(default_factory=list)

    def __bool__(self):
        return self.ok

    def failing_degrees(self) -> set[int]:
        return {f[2] for f in self.failures}


def check_linear_deformation(mu0: StructureTable, psi: StructureTable) -> DeformationReport:
    """Jacobi for ``mu0 + t psi`` identically in t.

    Failures are ``(triple, component, t_degree, coefficient)``.
    """
    if mu0.dim != psi.dim:
        raise ValueError("dimension mismatch")
    t = Poly.var(_T)
    T = mu0 + psi.map_coeffs(lambda c: t * c)
    failures = []
    for fail in check_jacobi(T):
        for k, c in fail.residual.items():
            for deg, q in sorted(Poly.coerce(c).coeffs_in(_T).items()):
                if q:
                    failures.append((fail.triple, k, deg, q.constant_value() if q.is_constant() else q))
    return DeformationReport(not failures, failures)


@dataclass
class SymplecticDeformation:
    ok: bool
    reason: str = ""

    def __bool__(self):
        return self.ok


def _require_symplectic(T: StructureTable, theta: ExtElement) -> None:
    if not is_closed_two_form(T, theta):
        raise ValueError("witness is not closed")
    if det(gram_matrix(theta)) == 0:
        raise ValueError("witness is degenerate")


def symplectic_deformation_check(
    g0: StructureTable, theta0: ExtElement, g1: StructureTable, theta1: ExtElement, psi: StructureTable
) -> SymplecticDeformation:
    """Is ``ext(g1) = ext(g0) + psi`` a linear deformation keeping the center?"""
    _require_symplectic(g0, theta0)
    _require_symplectic(g1, theta1)
    e0 = central_extension(g0, theta0)
    e1 = central_extension(g1, theta1)
    for g, e in ((g0, e0), (g1, e1)):
        if quotient_by_center(e) != g:
            raise ValueError("quotient of the extension does not recover the algebra")
    z = g0.dim
    if psi.dim != e0.dim:
        return SymplecticDeformation(False, "cochain has the wrong dimension")
    if any(z in (i, j) for i, j, k, c in psi.triples() if c):
        return SymplecticDeformation(False, "cochain does not vanish on the central vector")
    if e0 + psi != e1:
        return SymplecticDeformation(False, "extensions do not differ by the cochain")
    rep = check_linear_deformation(e0, psi)
    if not rep:
        return SymplecticDeformation(False, f"Jacobi fails at t-degrees {sorted(rep.failing_degrees())}")
    return SymplecticDeformation(True)


def _sweep_point(args):
    family_id, point = args
    try:
        return {"params": {k: str(v) for k, v in point.items()}, **cohomology(family_id, point).as_dict()}
    except ConstraintViolation as exc:
        return {"params": {k: str(v) for k, v in point.items()}, "skipped": str(exc)}


def sweep(family_id: str, grid: Mapping[str, Sequence], fixed: Mapping[str, object] | None = None, workers: int = 1) -> list[dict]:
    """Cohomology over the product grid, in deterministic grid order."""
    names = sorted(grid)
    points = []
    for combo in itertools.product(*(grid[n] for n in names)):
        pt = dict(coerce_params(fixed))
        pt.update(coerce_params(dict(zip(names, combo))))
        points.append((family_id, pt))
    if workers <= 1:
        return [_sweep_point(p) for p in points]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_sweep_point, points))
