"""Lie algebras given by structure constants in a fixed basis X_0..X_{n-1}."""
from __future__ import annotations

import json
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from .scalars import Poly, det, parse_scalar, rank, rank_kernel, scalar_str, solve_linear, var_key

__all__ = [
    "StructureTable",
    "JacobiFailure",
    "bracket_eval",
    "unit",
    "check_jacobi",
    "jacobi_residual",
    "central_series",
    "is_filiform",
    "ad_matrix",
    "characteristic_sequence",
    "characteristic_sequence_of_algebra",
    "center",
    "quotient_by_center",
    "change_basis",
    "model_filiform",
    "abelian",
    "heisenberg",
]


class StructureTable:
    """Antisymmetric bracket ``[X_i, X_j] = sum_k C_{i,j}^k X_k``.

    Only pairs ``i < j`` are stored, zero coefficients are dropped, and the
    entries are Fractions or :class:`Poly`.  Instances are treated as immutable.
    """

    __slots__ = ("dim", "_coeffs")

    def __init__(self, dim: int, coeffs: Mapping | None = None):
        if dim < 0:
            raise ValueError("dimension must be nonnegative")
        self.dim = dim
        store: dict[tuple[int, int], dict[int, object]] = {}
        for key, value in (coeffs or {}).items():
            if len(key) == 3:
                i, j, k = key
                self._put(store, i, j, k, value)
            else:
                i, j = key
                for k, c in value.items():
                    self._put(store, i, j, k, c)
        self._coeffs = store

    def _put(self, store, i, j, k, c):
        n = self.dim
        for idx in (i, j, k):
            if not (isinstance(idx, int) and 0 <= idx < n):
                raise IndexError(f"index {idx} out of range for dimension {n}")
        if i == j:
            if c:
                raise ValueError(f"[X_{i}, X_{i}] must vanish")
            return
        if i > j:
            i, j, c = j, i, -c
        if not isinstance(c, Poly):
            c = Fraction(c)
        row = store.setdefault((i, j), {})
        total = row.get(k, 0) + c
        if total:
            row[k] = total
        else:
            row.pop(k, None)
            if not row:
                del store[(i, j)]

    # access -------------------------------------------------------------
    def coeff(self, i: int, j: int, k: int):
        if i == j:
            return Fraction(0)
        if i < j:
            return self._coeffs.get((i, j), {}).get(k, Fraction(0))
        return -self._coeffs.get((j, i), {}).get(k, Fraction(0))

    def bracket(self, i: int, j: int) -> dict[int, object]:
        """``[X_i, X_j]`` as a sparse {k: coefficient} dict."""
        if i == j:
            return {}
        if i < j:
            return dict(self._coeffs.get((i, j), {}))
        return {k: -c for k, c in self._coeffs.get((j, i), {}).items()}

    def items(self):
        """Iterate ``((i, j), {k: c})`` over stored pairs in index order."""
        for key in sorted(self._coeffs):
            yield key, dict(self._coeffs[key])

    def triples(self):
        for (i, j), row in self.items():
            for k in sorted(row):
                yield i, j, k, row[k]

    def is_symbolic(self) -> bool:
        return any(isinstance(c, Poly) and not c.is_constant() for *_, c in self.triples())

    def variables(self) -> list[str]:
        names = set()
        for *_, c in self.triples():
            if isinstance(c, Poly):
                names.update(c.variables())
        return sorted(names, key=var_key)

    def subs(self, assignment: Mapping[str, object]) -> "StructureTable":
        """Substitute values for parameters; fully numeric results hold Fractions."""
        out = {}
        for i, j, k, c in self.triples():
            if isinstance(c, Poly):
                c = c.subs(assignment)
                if c.is_constant():
                    c = c.constant_value()
            out[(i, j, k)] = c
        return StructureTable(self.dim, out)

    def map_coeffs(self, fn) -> "StructureTable":
        return StructureTable(self.dim, {(i, j, k): fn(c) for i, j, k, c in self.triples()})

    def __add__(self, other: "StructureTable") -> "StructureTable":
        if self.dim != other.dim:
            raise ValueError("dimension mismatch")
        out: dict = {}
        for t in (self, other):
            for i, j, k, c in t.triples():
                out[(i, j, k)] = out.get((i, j, k), 0) + c
        return StructureTable(self.dim, out)

    def scale(self, s) -> "StructureTable":
        return self.map_coeffs(lambda c: c * s)

    def __eq__(self, other):
        if not isinstance(other, StructureTable):
            return NotImplemented
        return self.dim == other.dim and self._coeffs == other._coeffs

    def __hash__(self):
        return hash((self.dim, tuple(self.triples())))

    def __repr__(self):
        return f"StructureTable(dim={self.dim}, pairs={len(self._coeffs)})"

    def pretty(self) -> str:
        lines = []
        for (i, j), row in self.items():
            rhs = " + ".join(
                f"({scalar_str(c)})*X{k}" if isinstance(c, Poly) else f"{scalar_str(c)}*X{k}"
                for k, c in sorted(row.items())
            )
            lines.append(f"[X{i}, X{j}] = {rhs}")
        return "\n".join(lines)

    # serialization ----------------------------------------------------
    def to_json(self, params: Mapping[str, object] | None = None) -> dict:
        brackets = [
            {"i": i, "j": j, "coeffs": {str(k): scalar_str(c) for k, c in sorted(row.items())}}
            for (i, j), row in self.items()
        ]
        return {
            "dim": self.dim,
            "brackets": brackets,
            "params": {k: scalar_str(v) for k, v in (params or {}).items()},
        }

    @classmethod
    def from_json(cls, data: Mapping | str) -> "StructureTable":
        """Validate and load the JSON algebra format (rational entries only)."""
        if isinstance(data, str):
            data = json.loads(data)
        if not isinstance(data, Mapping) or "dim" not in data:
            raise ValueError("algebra JSON needs a 'dim' field")
        n = data["dim"]
        if not isinstance(n, int) or n < 0:
            raise ValueError("'dim' must be a nonnegative integer")
        coeffs = {}
        for entry in data.get("brackets", []):
            i, j = entry["i"], entry["j"]
            if not (isinstance(i, int) and isinstance(j, int)) or not i < j:
                raise ValueError(f"bracket entries need integer i < j, got ({i}, {j})")
            for k, c in entry.get("coeffs", {}).items():
                try:
                    kk = int(k)
                except ValueError as exc:
                    raise ValueError(f"bad basis index {k!r}") from exc
                if (i, j, kk) in coeffs:
                    raise ValueError(f"duplicate coefficient ({i}, {j}, {kk})")
                coeffs[(i, j, kk)] = parse_scalar(c)
        return cls(n, coeffs)


# ---------------------------------------------------------------------------
# vectors are dense lists of length n


def _vec(n, sparse: Mapping[int, object] | None = None):
    v = [Fraction(0)] * n
    for k, c in (sparse or {}).items():
        v[k] = v[k] + c
    return v


def unit(n: int, i: int):
    return _vec(n, {i: Fraction(1)})


def bracket_eval(T: StructureTable, x: Sequence, y: Sequence) -> list:
    """Bilinear extension of the table to arbitrary coordinate vectors."""
    n = T.dim
    if len(x) != n or len(y) != n:
        raise ValueError(f"vectors must have length {n}")
    out = [Fraction(0)] * n
    for (i, j), row in T.items():
        w = x[i] * y[j] - x[j] * y[i]
        if not w:
            continue
        for k, c in row.items():
            out[k] = out[k] + w * c
    return out


def _bracket_sparse(T: StructureTable, u: Mapping[int, object], v: Mapping[int, object]) -> dict:
    out: dict[int, object] = {}
    for a, x in u.items():
        for b, y in v.items():
            if a == b:
                continue
            for k, c in T.bracket(a, b).items():
                out[k] = out.get(k, 0) + x * y * c
    return {k: c for k, c in out.items() if c}


def jacobi_residual(T: StructureTable, i: int, j: int, k: int) -> dict[int, object]:
    """``[[X_i,X_j],X_k] + [[X_j,X_k],X_i] + [[X_k,X_i],X_j]`` as a sparse vector."""
    total: dict[int, object] = {}
    for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
        for m, v in _bracket_sparse(T, T.bracket(a, b), {c: Fraction(1)}).items():
            total[m] = total.get(m, 0) + v
    return {m: v for m, v in sorted(total.items()) if v}


class JacobiFailure(tuple):
    """A failing triple with its residual vector (``(triple, residual)``)."""

    __slots__ = ()

    def __new__(cls, triple, residual):
        return super().__new__(cls, (triple, residual))

    @property
    def triple(self):
        return self[0]

    @property
    def residual(self):
        return self[1]


def check_jacobi(T: StructureTable) -> list[JacobiFailure]:
    """All basis triples with a nonzero Jacobiator; an empty list means Lie.

    For Poly entries the residuals are polynomials and "ok" means they vanish
    identically, so the returned residuals are the Jacobi ideal generators.
    """
    fails = []
    for i, j, k in combinations(range(T.dim), 3):
        r = jacobi_residual(T, i, j, k)
        if r:
            fails.append(JacobiFailure((i, j, k), r))
    return fails


# ---------------------------------------------------------------------------
# central series


def _span_basis(vectors: Iterable[Sequence], n: int) -> list[list[Fraction]]:
    rows = [list(v) for v in vectors if any(v)]
    if not rows:
        return []
    rk = rank(rows, n)
    basis: list[list[Fraction]] = []
    for v in rows:
        if rank(basis + [v], n) > len(basis):
            basis.append([Fraction(x) for x in v])
        if len(basis) == rk:
            break
    return basis


def _bracket_space(T: StructureTable, A: list, B: list) -> list:
    n = T.dim
    return _span_basis((bracket_eval(T, a, b) for a in A for b in B), n)


def _descending(T: StructureTable) -> list[list]:
    n = T.dim
    full = [unit(n, i) for i in range(n)]
    series = [full]
    while True:
        nxt = _bracket_space(T, full, series[-1])
        if len(nxt) == len(series[-1]):
            break
        series.append(nxt)
        if not nxt:
            break
    return series


def _ascending(T: StructureTable) -> list[list]:
    n = T.dim
    series: list[list] = [[]]
    while True:
        prev = series[-1]
        # X is in the next term iff q . [X, X_b] = 0 for all b and all q annihilating prev
        if prev:
            _, ann = rank_kernel(prev, n)
        else:
            ann = [unit(n, k) for k in range(n)]
        rows = []
        for b in range(n):
            cols = [T.bracket(a, b) for a in range(n)]
            for q in ann:
                row = [sum((q[k] * c for k, c in cols[a].items() if q[k]), Fraction(0)) for a in range(n)]
                if any(row):
                    rows.append(row)
        _, ker = rank_kernel(rows, n)
        nxt = _span_basis(ker, n)
        if len(nxt) == len(prev):
            break
        series.append(nxt)
        if len(nxt) == n:
            break
    return series


def central_series(T: StructureTable) -> dict:
    """Dimensions of the descending and ascending central series.

    ``nilindex`` is the least ``i`` with ``C^i g = 0`` (``None`` when the
    algebra is not nilpotent).
    """
    if T.is_symbolic():
        raise ValueError("central series needs rational entries")
    desc = _descending(T)
    asc = _ascending(T)
    desc_dims = [len(s) for s in desc]
    nilpotent = desc_dims[-1] == 0
    return {
        "descending": desc_dims,
        "ascending": [len(s) for s in asc],
        "nilindex": len(desc_dims) - 1 if nilpotent else None,
        "descending_bases": desc,
        "ascending_bases": asc,
    }


def same_subspace(A: list, B: list, n: int) -> bool:
    if len(A) != len(B):
        return False
    return rank(A + B, n) == len(A) if A else not B


def is_filiform(T: StructureTable) -> bool:
    """``dim C_i g = i`` for ``0 <= i <= n-2`` (equivalently nilindex n-1)."""
    n = T.dim
    if n < 2:
        return False
    asc = [len(s) for s in _ascending(T)]
    if asc[-1] != n:
        return False
    return all(i < len(asc) and asc[i] == i for i in range(n - 1))


# ---------------------------------------------------------------------------
# characteristic sequence


def ad_matrix(T: StructureTable, x: Sequence) -> list[list]:
    """Matrix of ``ad x`` (column j = [x, X_j])."""
    n = T.dim
    cols = [bracket_eval(T, list(x), unit(n, j)) for j in range(n)]
    return [[cols[j][i] for j in range(n)] for i in range(n)]


def _matmul(A, B):
    n, m, p = len(A), len(B), len(B[0]) if B else 0
    return [[sum((A[i][k] * B[k][j] for k in range(m) if A[i][k]), Fraction(0)) for j in range(p)] for i in range(n)]


def characteristic_sequence(T: StructureTable, x: Sequence) -> tuple[int, ...]:
    """Jordan block sizes of the nilpotent operator ``ad x``, decreasing."""
    n = T.dim
    A = ad_matrix(T, x)
    ranks = [n]
    P = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for _ in range(n + 1):
        P = _matmul(P, A)
        r = rank(P, n)
        ranks.append(r)
        if r == 0:
            break
    if ranks[-1] != 0:
        raise ValueError("ad x is not nilpotent")
    # number of blocks of size >= k is rank(A^{k-1}) - rank(A^k)
    at_least = [ranks[k - 1] - ranks[k] for k in range(1, len(ranks))]
    parts = []
    for k in range(len(at_least), 0, -1):
        exact = at_least[k - 1] - (at_least[k] if k < len(at_least) else 0)
        parts.extend([k] * exact)
    return tuple(parts)


def characteristic_sequence_of_algebra(T: StructureTable, grid: Sequence = (0, 1, -1, 2)) -> dict:
    """Lexicographic max of ``c(x)`` over a finite probe set outside ``C^1 g``.

    Probes are the basis vectors plus ``X_0 + sum l_i X_i`` with one nonzero
    ``l_i`` from ``grid``.  The result is a lower bound for ``c(g)``; it is
    certified exact when it reaches ``(n-1, 1)``, the maximum possible.
    """
    n = T.dim
    derived = _descending(T)
    derived1 = derived[1] if len(derived) > 1 else []
    probes = [unit(n, i) for i in range(n)]
    for i in range(1, n):
        for lam in grid:
            if lam:
                v = unit(n, 0)
                v[i] = Fraction(lam)
                probes.append(v)
    best, best_x = None, None
    for v in probes:
        if rank(derived1 + [v], n) == len(derived1):
            continue
        try:
            c = characteristic_sequence(T, v)
        except ValueError:
            continue
        if best is None or c > best:
            best, best_x = c, v
    exact = best is not None and n >= 2 and best == (n - 1, 1)
    return {"sequence": best, "vector": best_x, "certified": exact}


# ---------------------------------------------------------------------------
# center, quotient, change of basis


def center(T: StructureTable) -> list[list[Fraction]]:
    n = T.dim
    rows = []
    for b in range(n):
        block = [[Fraction(0)] * n for _ in range(n)]
        for a in range(n):
            for k, c in T.bracket(a, b).items():
                block[k][a] += c
        rows.extend(block)
    _, ker = rank_kernel(rows, n)
    return ker


def quotient_by_center(T: StructureTable) -> StructureTable:
    """Drop the last basis vector, which must span the center."""
    n = T.dim
    z = center(T)
    if len(z) != 1 or any(z[0][k] for k in range(n - 1)):
        raise ValueError("center is not spanned by the last basis vector X_{n-1}")
    out = {}
    for i, j, k, c in T.triples():
        if k == n - 1:
            continue
        if i == n - 1 or j == n - 1:
            continue
        out[(i, j, k)] = c
    return StructureTable(n - 1, out)


def _inverse(P):
    n = len(P)
    inv_cols = []
    for j in range(n):
        e = [Fraction(int(i == j)) for i in range(n)]
        col = solve_linear(P, e)
        inv_cols.append(col)
    return [[inv_cols[j][i] for j in range(n)] for i in range(n)]


def change_basis(T: StructureTable, P: Sequence[Sequence]) -> StructureTable:
    """Transport the bracket along ``P``: ``[x, y]' = P^{-1}[P x, P y]``."""
    n = T.dim
    P = [[Fraction(x) for x in row] for row in P]
    if len(P) != n or det(P) == 0:
        raise ValueError("change of basis needs an invertible n x n matrix")
    Pinv = _inverse(P)
    cols = [[P[r][c] for r in range(n)] for c in range(n)]
    out = {}
    for i in range(n):
        for j in range(i + 1, n):
            w = bracket_eval(T, cols[i], cols[j])
            if not any(w):
                continue
            img = [sum((Pinv[r][k] * w[k] for k in range(n) if w[k]), Fraction(0)) for r in range(n)]
            for k, c in enumerate(img):
                if c:
                    out[(i, j, k)] = c
    return StructureTable(n, out)


# ---------------------------------------------------------------------------
# small reference algebras


def model_filiform(n: int) -> StructureTable:
    """``[X_0, X_i] = X_{i+1}`` for ``1 <= i <= n-2``, all other brackets zero."""
    return StructureTable(n, {(0, i, i + 1): 1 for i in range(1, n - 1)})


def abelian(n: int) -> StructureTable:
    return StructureTable(n)


def heisenberg() -> StructureTable:
    return StructureTable(3, {(0, 1, 2): 1})
