"""Exterior calculus on the dual basis: d, wedge, contact and symplectic forms."""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Mapping, Sequence

from .liecore import StructureTable, bracket_eval, is_filiform
from .scalars import Poly, det, parse_scalar, rank, rank_kernel, scalar_str

__all__ = [
    "ExtElement",
    "basis_form",
    "d_one_form",
    "d_two_form",
    "is_closed_two_form",
    "closedness_residuals",
    "wedge",
    "wedge_power",
    "gram_matrix",
    "is_contact_form",
    "contact_rank_check",
    "is_contact_algebra",
    "closed_two_form_basis",
    "SymplecticResult",
    "symplectic_exists",
    "central_extension",
]


class ExtElement:
    """Element of the exterior algebra on ``omega_0..omega_{n-1}``.

    ``terms`` maps strictly increasing index tuples to nonzero coefficients
    (Fractions or Polys).
    """

    __slots__ = ("dim", "_terms")

    def __init__(self, dim: int, terms: Mapping[tuple, object] | None = None):
        self.dim = dim
        clean = {}
        for key, c in (terms or {}).items():
            key = tuple(key)
            if any(not 0 <= i < dim for i in key):
                raise IndexError(f"form index out of range in {key} for dimension {dim}")
            if list(key) != sorted(set(key)):
                sign, key = _sort_sign(key)
                if sign == 0:
                    continue
                c = c * sign
            if not isinstance(c, Poly):
                c = Fraction(c)
            total = clean.get(key, 0) + c
            if total:
                clean[key] = total
            else:
                clean.pop(key, None)
        self._terms = clean

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return sorted(self._terms.items())

    def coeff(self, key: Sequence[int]):
        return self._terms.get(tuple(key), Fraction(0))

    def degree(self) -> int | None:
        degs = {len(k) for k in self._terms}
        if not degs:
            return None
        if len(degs) > 1:
            raise ValueError("form is not homogeneous")
        return degs.pop()

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __add__(self, other: "ExtElement") -> "ExtElement":
        out = dict(self._terms)
        for k, c in other._terms.items():
            out[k] = out.get(k, 0) + c
        return ExtElement(self.dim, out)

    def __neg__(self):
        return ExtElement(self.dim, {k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, s) -> "ExtElement":
        return ExtElement(self.dim, {k: c * s for k, c in self._terms.items()})

    def __mul__(self, s):
        return self.scale(s)

    __rmul__ = __mul__

    def __xor__(self, other: "ExtElement") -> "ExtElement":
        return wedge(self, other)

    def __eq__(self, other):
        if not isinstance(other, ExtElement):
            return NotImplemented
        return self.dim == other.dim and self._terms == other._terms

    def __hash__(self):
        return hash((self.dim, frozenset(self._terms.items())))

    def subs(self, assignment) -> "ExtElement":
        out = {}
        for k, c in self._terms.items():
            if isinstance(c, Poly):
                c = c.subs(assignment)
                if c.is_constant():
                    c = c.constant_value()
            out[k] = c
        return ExtElement(self.dim, out)

    def evaluate(self, *vectors: Sequence) -> object:
        """Value on coordinate vectors (degree equals the number of vectors)."""
        total = Fraction(0)
        p = len(vectors)
        for key, c in self._terms.items():
            if len(key) != p:
                continue
            minor = [[vectors[r][key[s]] for s in range(p)] for r in range(p)]
            total = total + c * det(minor)
        return total

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for k, c in self.items():
            basis = "^".join(f"w{i}" for i in k) or "1"
            parts.append(f"({scalar_str(c)})*{basis}")
        return " + ".join(parts)

    __repr__ = __str__

    def to_json(self) -> dict:
        return {
            "degree": self.degree() or 0,
            "terms": {",".join(map(str, k)): scalar_str(c) for k, c in self.items()},
        }

    @classmethod
    def from_json(cls, dim: int, data: Mapping) -> "ExtElement":
        terms = {}
        deg = data.get("degree")
        for key, c in data.get("terms", {}).items():
            idx = tuple(int(x) for x in key.split(",")) if key else ()
            if deg is not None and len(idx) != deg:
                raise ValueError(f"term {key!r} does not have degree {deg}")
            terms[idx] = parse_scalar(c)
        return cls(dim, terms)


def _sort_sign(key):
    if len(set(key)) != len(key):
        return 0, key
    inv = sum(1 for a, b in combinations(key, 2) if a > b)
    return (-1 if inv % 2 else 1), tuple(sorted(key))


def basis_form(n: int, *idx: int) -> ExtElement:
    return ExtElement(n, {tuple(idx): Fraction(1)})


def wedge(a: ExtElement, b: ExtElement) -> ExtElement:
    """Exterior product with shuffle signs."""
    if a.dim != b.dim:
        raise ValueError("dimension mismatch")
    out: dict = {}
    for ka, ca in a._terms.items():
        sa = set(ka)
        for kb, cb in b._terms.items():
            if sa.intersection(kb):
                continue
            inv = sum(1 for x in ka for y in kb if y < x)
            key = tuple(sorted(ka + kb))
            val = ca * cb
            if inv % 2:
                val = -val
            out[key] = out.get(key, 0) + val
    return ExtElement(a.dim, out)


def wedge_power(a: ExtElement, p: int) -> ExtElement:
    if p < 0:
        raise ValueError("power must be nonnegative")
    result = ExtElement(a.dim, {(): Fraction(1)})
    for _ in range(p):
        result = wedge(result, a)
    return result


def d_one_form(T: StructureTable, omega: ExtElement) -> ExtElement:
    """``d omega = -sum_{i<j} omega([X_i, X_j]) omega_i ^ omega_j``."""
    if omega.degree() not in (1, None):
        raise ValueError("d_one_form needs a 1-form")
    coef = {k[0]: c for k, c in omega.items()}
    out = {}
    for (i, j), row in T.items():
        val = sum((c * coef[k] for k, c in row.items() if k in coef), Fraction(0))
        if val:
            out[(i, j)] = -val
    return ExtElement(T.dim, out)


def _theta_on_bracket(T: StructureTable, theta: Mapping, i: int, j: int, k: int):
    # theta([X_i, X_j], X_k)
    total = Fraction(0)
    for m, c in T.bracket(i, j).items():
        if m == k:
            continue
        key = (m, k) if m < k else (k, m)
        t = theta.get(key, 0)
        if t:
            total = total + (c * t if m < k else -c * t)
    return total


def d_two_form(T: StructureTable, theta: ExtElement) -> ExtElement:
    """``d theta(X,Y,Z) = -(theta([X,Y],Z) + theta([Y,Z],X) + theta([Z,X],Y))``."""
    if theta.degree() not in (2, None):
        raise ValueError("d_two_form needs a 2-form")
    th = theta.terms
    out = {}
    for i, j, k in combinations(range(T.dim), 3):
        val = (
            _theta_on_bracket(T, th, i, j, k)
            + _theta_on_bracket(T, th, j, k, i)
            + _theta_on_bracket(T, th, k, i, j)
        )
        if val:
            out[(i, j, k)] = -val
    return ExtElement(T.dim, out)


def closedness_residuals(T: StructureTable, theta: ExtElement) -> dict:
    """Nonzero cyclic sums keyed by basis triple."""
    return {k: -c for k, c in d_two_form(T, theta).items()}


def is_closed_two_form(T: StructureTable, theta: ExtElement) -> bool:
    return d_two_form(T, theta).is_zero()


def gram_matrix(theta: ExtElement) -> list[list]:
    n = theta.dim
    G = [[Fraction(0)] * n for _ in range(n)]
    for (i, j), c in theta.items():
        G[i][j] = c
        G[j][i] = -c
    return G


# ---------------------------------------------------------------------------
# contact forms


def _top(n):
    return tuple(range(n))


def is_contact_form(T: StructureTable, omega: ExtElement) -> bool:
    """``omega ^ (d omega)^p != 0`` by full exterior expansion (n = 2p+1)."""
    n = T.dim
    if n % 2 == 0:
        raise ValueError("contact forms live on odd-dimensional algebras")
    if omega.degree() != 1:
        raise ValueError("a contact form is a nonzero 1-form")
    p = (n - 1) // 2
    vol = wedge(omega, wedge_power(d_one_form(T, omega), p))
    return bool(vol.coeff(_top(n)))


def contact_volume(T: StructureTable, omega: ExtElement):
    """Coefficient of ``omega_0 ^ ... ^ omega_{n-1}`` in ``omega ^ (d omega)^p``."""
    n = T.dim
    p = (n - 1) // 2
    return wedge(omega, wedge_power(d_one_form(T, omega), p)).coeff(_top(n))


def contact_rank_check(T: StructureTable, omega: ExtElement) -> bool:
    """Independent verdict: ``d omega`` restricted to ``ker omega`` has full rank 2p."""
    n = T.dim
    coef = [omega.coeff((i,)) for i in range(n)]
    if not any(coef):
        return False
    _, ker = rank_kernel([coef], n)
    dw = d_one_form(T, omega)
    G = gram_matrix(dw)
    restricted = [
        [sum((u[a] * G[a][b] * v[b] for a in range(n) for b in range(n) if u[a] and v[b]), Fraction(0)) for v in ker]
        for u in ker
    ]
    return rank(restricted, len(ker)) == n - 1


def is_contact_algebra(T: StructureTable) -> bool:
    """A filiform algebra is contact iff the last dual basis form is contact."""
    n = T.dim
    if n % 2 == 0:
        raise ValueError("contact algebras have odd dimension")
    if not is_filiform(T):
        raise ValueError("is_contact_algebra expects a filiform algebra in a Vergne basis")
    return is_contact_form(T, basis_form(n, n - 1))


# ---------------------------------------------------------------------------
# closed and symplectic 2-forms


def _pairs(n):
    return list(combinations(range(n), 2))


def closed_two_form_basis(T: StructureTable) -> list[ExtElement]:
    """Basis of the space of closed 2-forms (kernel of the closedness system)."""
    n = T.dim
    pairs = _pairs(n)
    col = {p: c for c, p in enumerate(pairs)}
    rows = []
    for i, j, k in combinations(range(n), 3):
        row = [Fraction(0)] * len(pairs)
        for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
            for m, coef in T.bracket(a, b).items():
                if m == c:
                    continue
                if m < c:
                    row[col[(m, c)]] += coef
                else:
                    row[col[(c, m)]] -= coef
        if any(row):
            rows.append(row)
    _, ker = rank_kernel(rows, len(pairs))
    return [ExtElement(n, {pairs[c]: v for c, v in enumerate(vec) if v}) for vec in ker]


@dataclass
class SymplecticResult:
    exists: bool
    witness: ExtElement | None = None
    method: str = ""
    closed_dim: int = 0
    pfaffian: Poly | None = None
    notes: list = field(default_factory=list)

    def __bool__(self):
        return self.exists


def _combine(basis: Sequence[ExtElement], coeffs: Sequence) -> ExtElement:
    total = ExtElement(basis[0].dim)
    for b, c in zip(basis, coeffs):
        if c:
            total = total + b.scale(c)
    return total


def _nonvanishing_point(p: Poly, names: Sequence[str]) -> dict:
    """A rational point where the nonzero polynomial ``p`` does not vanish."""
    point: dict = {}
    current = p
    for name in names:
        deg = max(current.degree(name), 0)
        for value in range(deg + 1):
            trial = current.subs({name: Fraction(value)})
            if trial:
                point[name] = Fraction(value)
                current = trial
                break
    return point


def symplectic_exists(T: StructureTable, seed: int = 0, trials: int = 50) -> SymplecticResult:
    """Search the closed 2-forms for a nondegenerate one.

    Seeded random rational points first; if none is nondegenerate, the
    Pfaffian is expanded symbolically over the closed-form coordinates so a
    negative answer is exact.
    """
    n = T.dim
    if n % 2:
        raise ValueError("symplectic forms need even dimension")
    if n == 0:
        return SymplecticResult(True, ExtElement(0), "trivial", 0)
    basis = closed_two_form_basis(T)
    if not basis:
        return SymplecticResult(False, None, "empty", 0)
    rng = random.Random(seed)
    p = n // 2
    for _ in range(trials):
        coeffs = [Fraction(rng.randint(-3, 3)) for _ in basis]
        theta = _combine(basis, coeffs)
        if theta and det(gram_matrix(theta)) != 0:
            return SymplecticResult(True, theta, "random", len(basis))
    names = [f"c{i}" for i in range(len(basis))]
    theta_sym = _combine(basis, [Poly.var(v) for v in names])
    top = wedge_power(theta_sym, p).coeff(_top(n))
    top = Poly.coerce(top)
    if not top:
        return SymplecticResult(False, None, "symbolic", len(basis), pfaffian=top)
    point = _nonvanishing_point(top, names)
    coeffs = [point.get(v, Fraction(0)) for v in names]
    theta = _combine(basis, coeffs)
    return SymplecticResult(True, theta, "symbolic", len(basis), pfaffian=top)


def central_extension(T: StructureTable, theta: ExtElement) -> StructureTable:
    """``g + K Z`` with ``[X, Y]' = [X, Y] + theta(X, Y) Z`` and ``Z = X_n`` central."""
    n = T.dim
    if theta.dim != n:
        raise ValueError("form and algebra dimensions differ")
    if not is_closed_two_form(T, theta):
        raise ValueError("central extension needs a closed 2-form")
    coeffs = {(i, j, k): c for i, j, k, c in T.triples()}
    for (i, j), c in theta.items():
        coeffs[(i, j, n)] = c
    return StructureTable(n + 1, coeffs)
