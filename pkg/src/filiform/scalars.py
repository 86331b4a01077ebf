"""Exact rationals, sparse multivariate polynomials over Q, and exact linear algebra.

Rationals are plain :class:`fractions.Fraction`.  Polynomials are :class:`Poly`,
an immutable sparse map from monomials to nonzero Fractions.  Every routine in
the package is written against the ``+ - *`` protocol so table entries can be
either kind.
"""
from __future__ import annotations

import ast
import re
from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Iterable, Mapping, Sequence, Union

__all__ = [
    "Fraction",
    "Poly",
    "Scalar",
    "parse_scalar",
    "scalar_str",
    "is_zero",
    "to_fraction",
    "poly_eval",
    "rank_kernel",
    "rank",
    "det",
    "solve_linear",
    "linear_span_basis",
]

Scalar = Fraction
_RATIONAL_RE = re.compile(r"^\s*[+-]?\d+(\s*/\s*\d+)?\s*$")
_CHUNK_RE = re.compile(r"(\d+)")


def parse_scalar(text: Union[str, int, Fraction]) -> Fraction:
    """Parse ``"p"`` or ``"p/q"``; anything else (floats, names) is rejected."""
    if isinstance(text, Fraction):
        return text
    if isinstance(text, int) and not isinstance(text, bool):
        return Fraction(text)
    if not isinstance(text, str) or not _RATIONAL_RE.match(text):
        raise ValueError(f"not a rational literal: {text!r}")
    value = Fraction(text.replace(" ", ""))
    return value


def scalar_str(x) -> str:
    if isinstance(x, Poly):
        return str(x)
    return str(Fraction(x))


def is_zero(x) -> bool:
    return not x


def to_fraction(x) -> Fraction:
    if isinstance(x, Poly):
        if not x.is_constant():
            raise ValueError(f"polynomial {x} is not constant")
        return x.constant_value()
    return Fraction(x)


def var_key(name: str):
    """Natural sort key: ``a2 < a10``, ``a_01_06 < a_02_05``."""
    return tuple(int(c) if c.isdigit() else c for c in _CHUNK_RE.split(name) if c)


Monomial = tuple  # tuple[tuple[str, int], ...] sorted by var_key


def _mono_mul(m1: Monomial, m2: Monomial) -> Monomial:
    if not m1:
        return m2
    if not m2:
        return m1
    exps = dict(m1)
    for v, e in m2:
        exps[v] = exps.get(v, 0) + e
    return tuple(sorted(exps.items(), key=lambda ve: var_key(ve[0])))


def _mono_deg(m: Monomial) -> int:
    return sum(e for _, e in m)


def _grlex_key(m: Monomial):
    # descending total degree, then lexicographic on the exponent vector
    return (-_mono_deg(m), [(var_key(v), -e) for v, e in m])


class Poly:
    """Immutable sparse polynomial with rational coefficients.

    >>> a, b = Poly.var("a"), Poly.var("b")
    >>> str((a + b) ** 2)
    'a^2 + 2*a*b + b^2'
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, Fraction] | None = None):
        clean = {}
        if terms:
            for m, c in terms.items():
                if c:
                    clean[m] = Fraction(c)
        self._terms = clean
        self._hash = None

    # construction -----------------------------------------------------
    @classmethod
    def const(cls, c) -> "Poly":
        return cls({(): Fraction(c)})

    @classmethod
    def var(cls, name: str) -> "Poly":
        return cls({((name, 1),): Fraction(1)})

    @classmethod
    def coerce(cls, x) -> "Poly":
        if isinstance(x, Poly):
            return x
        if isinstance(x, (int, Fraction)):
            return cls.const(x)
        raise TypeError(f"cannot coerce {type(x).__name__} to Poly")

    @classmethod
    def parse(cls, text: str) -> "Poly":
        """Parse expressions such as ``"3/2*a1^2*a4 - (a2 + 1)*a3"``.

        ``^`` and ``**`` both denote powers; division is allowed by rational
        constants only.
        """
        if not str(text).strip():
            raise ValueError("empty polynomial")
        try:
            tree = ast.parse(str(text).replace("^", "**"), mode="eval")
        except SyntaxError as exc:
            raise ValueError(f"cannot parse polynomial {text!r}") from exc
        return cls._from_ast(tree.body, text)

    @classmethod
    def _from_ast(cls, node, text) -> "Poly":
        if isinstance(node, ast.Constant) and isinstance(node.value, int) and not isinstance(node.value, bool):
            return cls.const(node.value)
        if isinstance(node, ast.Name):
            return cls.var(node.id)
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            inner = cls._from_ast(node.operand, text)
            return -inner if isinstance(node.op, ast.USub) else inner
        if isinstance(node, ast.BinOp):
            left = cls._from_ast(node.left, text)
            if isinstance(node.op, ast.Pow):
                exp = cls._from_ast(node.right, text)
                if not exp.is_constant() or exp.constant_value().denominator != 1 or exp.constant_value() < 0:
                    raise ValueError(f"bad exponent in {text!r}")
                return left ** int(exp.constant_value())
            right = cls._from_ast(node.right, text)
            if isinstance(node.op, ast.Add):
                return left + right
            if isinstance(node.op, ast.Sub):
                return left - right
            if isinstance(node.op, ast.Mult):
                return left * right
            if isinstance(node.op, ast.Div):
                if not right.is_constant() or not right:
                    raise ValueError(f"division by a non-constant or zero in {text!r}")
                return left * (1 / right.constant_value())
        raise ValueError(f"cannot parse polynomial {text!r}")

    # inspection -------------------------------------------------------
    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def variables(self) -> list[str]:
        names = {v for m in self._terms for v, _ in m}
        return sorted(names, key=var_key)

    def degree(self, var: str | None = None) -> int:
        if not self._terms:
            return -1
        if var is None:
            return max(_mono_deg(m) for m in self._terms)
        return max(dict(m).get(var, 0) for m in self._terms)

    def is_constant(self) -> bool:
        return all(m == () for m in self._terms)

    def constant_value(self) -> Fraction:
        return self._terms.get((), Fraction(0))

    def is_homogeneous(self) -> bool:
        return len({_mono_deg(m) for m in self._terms}) <= 1

    def homogeneous_part(self, d: int) -> "Poly":
        return Poly({m: c for m, c in self._terms.items() if _mono_deg(m) == d})

    def leading(self) -> tuple[Monomial, Fraction]:
        m = min(self._terms, key=_grlex_key)
        return m, self._terms[m]

    def monic(self) -> "Poly":
        """Scale so the graded-lex leading coefficient is 1 (canonical up to units)."""
        if not self._terms:
            return self
        return self * (1 / self.leading()[1])

    def coeffs_in(self, var: str) -> dict[int, "Poly"]:
        """Split as a polynomial in ``var`` with Poly coefficients."""
        out: dict[int, dict] = {}
        for m, c in self._terms.items():
            e = dict(m).get(var, 0)
            rest = tuple((v, k) for v, k in m if v != var)
            out.setdefault(e, {})[rest] = c
        return {e: Poly(t) for e, t in out.items()}

    def diff(self, var: str) -> "Poly":
        out = {}
        for m, c in self._terms.items():
            e = dict(m).get(var, 0)
            if e == 0:
                continue
            nm = tuple((v, k - 1 if v == var else k) for v, k in m if not (v == var and k == 1))
            out[nm] = out.get(nm, 0) + c * e
        return Poly(out)

    def linear_coefficients(self) -> dict[str, Fraction]:
        """Coefficients of a polynomial of degree <= 1, keyed by variable ('' = constant)."""
        if self.degree() > 1:
            raise ValueError(f"{self} is not linear")
        out = {}
        for m, c in self._terms.items():
            out[m[0][0] if m else ""] = c
        return out

    # evaluation -------------------------------------------------------
    def eval(self, assignment: Mapping[str, object]):
        """Exact value at a point; every variable must be assigned."""
        missing = [v for v in self.variables() if v not in assignment]
        if missing:
            raise KeyError(f"missing variables in assignment: {', '.join(missing)}")
        return self.subs(assignment).constant_value()

    def subs(self, assignment: Mapping[str, object]) -> "Poly":
        """Substitute Fractions or Polys for some variables."""
        if not assignment:
            return self
        cache: dict = {}
        total: dict = {}
        result = Poly()
        for m, c in self._terms.items():
            term = Poly.const(c)
            keep = []
            for v, e in m:
                if v in assignment:
                    key = (v, e)
                    if key not in cache:
                        cache[key] = Poly.coerce(assignment[v]) ** e
                    term = term * cache[key]
                else:
                    keep.append((v, e))
            if keep:
                term = term * Poly({tuple(keep): Fraction(1)})
            if term.is_constant():
                total[()] = total.get((), 0) + term.constant_value()
            else:
                result = result + term
        return result + Poly(total)

    # arithmetic -------------------------------------------------------
    def __add__(self, other):
        if isinstance(other, Poly):
            out = dict(self._terms)
            for m, c in other._terms.items():
                out[m] = out.get(m, 0) + c
            return Poly(out)
        if isinstance(other, (int, Fraction)):
            if not other:
                return self
            out = dict(self._terms)
            out[()] = out.get((), 0) + other
            return Poly(out)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return Poly({m: -c for m, c in self._terms.items()})

    def __pos__(self):
        return self

    def __sub__(self, other):
        if isinstance(other, (Poly, int, Fraction)):
            return self + (-other)
        return NotImplemented

    def __rsub__(self, other):
        if isinstance(other, (int, Fraction)):
            return (-self) + other
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, Poly):
            out: dict = {}
            for m1, c1 in self._terms.items():
                for m2, c2 in other._terms.items():
                    m = _mono_mul(m1, m2)
                    out[m] = out.get(m, 0) + c1 * c2
            return Poly(out)
        if isinstance(other, (int, Fraction)):
            if not other:
                return Poly()
            return Poly({m: c * other for m, c in self._terms.items()})
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        if isinstance(other, Poly) and other.is_constant() and other:
            return self * (1 / other.constant_value())
        return NotImplemented

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result, base = Poly.const(1), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self.is_constant() and self.constant_value() == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            if self.is_constant():
                self._hash = hash(self.constant_value())
            else:
                self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for m in sorted(self._terms, key=_grlex_key):
            c = self._terms[m]
            mono = "*".join(v if e == 1 else f"{v}^{e}" for v, e in m)
            mag = abs(c)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            parts.append(("-" if c < 0 else "+", body))
        text = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self):
        return f"Poly({str(self)!r})"


def poly_eval(p, assignment: Mapping[str, object]) -> Fraction:
    """Evaluate a Poly (or pass a Fraction through) at a rational point."""
    if isinstance(p, Poly):
        return p.eval(assignment)
    return Fraction(p)


# ---------------------------------------------------------------------------
# exact linear algebra over Q


def _integer_rows(rows: Sequence[Sequence]) -> list[list[int]]:
    out = []
    for row in rows:
        fr = [Fraction(x) for x in row]
        den = reduce(lcm, (x.denominator for x in fr), 1)
        out.append([int(x * den) for x in fr])
    return out


def _bareiss_echelon(rows: Sequence[Sequence], ncols: int):
    """Fraction-free row echelon form; returns (matrix, pivot columns)."""
    a = _integer_rows(rows)
    nrows = len(a)
    pivots: list[int] = []
    prev = 1
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if a[i][c]), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        piv = a[r][c]
        for i in range(r + 1, nrows):
            lead = a[i][c]
            row_i, row_r = a[i], a[r]
            for j in range(c, ncols):
                num = piv * row_i[j] - lead * row_r[j]
                q, rem = divmod(num, prev)
                assert rem == 0, "Bareiss division must be exact"
                row_i[j] = q
        # entries left of c in rows below are already zero
        prev = piv
        pivots.append(c)
        r += 1
    return a, pivots


def rank_kernel(rows: Sequence[Sequence], ncols: int | None = None):
    """Rank and a kernel basis of a rational matrix.

    Elimination is fraction-free (Bareiss) on integer-scaled rows; the kernel
    is read off the echelon form by back substitution and each vector is
    scaled to coprime integers.
    """
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    if not rows:
        basis = []
        for f in range(ncols):
            v = [Fraction(0)] * ncols
            v[f] = Fraction(1)
            basis.append(v)
        return 0, basis
    a, pivots = _bareiss_echelon(rows, ncols)
    rk = len(pivots)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for r in range(rk - 1, -1, -1):
            c = pivots[r]
            s = sum((a[r][j] * x[j] for j in range(c + 1, ncols) if x[j]), Fraction(0))
            x[c] = -s / a[r][c]
        den = reduce(lcm, (v.denominator for v in x), 1)
        ints = [int(v * den) for v in x]
        g = reduce(gcd, ints, 0) or 1
        basis.append([Fraction(v, g) for v in ints])
    return rk, basis


def rank(rows: Sequence[Sequence], ncols: int | None = None) -> int:
    if not rows:
        return 0
    if ncols is None:
        ncols = len(rows[0])
    return len(_bareiss_echelon(rows, ncols)[1])


def det(m: Sequence[Sequence]):
    """Exact determinant: Bareiss for rational matrices, minor expansion for Poly entries."""
    n = len(m)
    if any(len(row) != n for row in m):
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return Fraction(1)
    if any(isinstance(x, Poly) for row in m for x in row):
        return _poly_det(m)
    dens = [reduce(lcm, (Fraction(x).denominator for x in row), 1) for row in m]
    a = _integer_rows(m)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            p = next((i for i in range(k + 1, n) if a[i][k]), None)
            if p is None:
                return Fraction(0)
            a[k], a[p] = a[p], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[k][k] * a[i][j] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return Fraction(sign * a[n - 1][n - 1], reduce(lambda x, y: x * y, dens, 1))


def _poly_det(m):
    # Laplace expansion along rows, memoized on the set of used columns
    n = len(m)
    memo = {0: Poly.const(1)}
    for r in range(n):
        nxt = {}
        for mask, val in memo.items():
            if not val:
                continue
            for c in range(n):
                if mask >> c & 1:
                    continue
                entry = m[r][c]
                if not entry:
                    continue
                sign = -1 if bin(mask >> c).count("1") % 2 else 1
                key = mask | (1 << c)
                nxt[key] = nxt.get(key, Poly()) + val * entry * sign
        memo = nxt
    return memo.get((1 << n) - 1, Poly())


def solve_linear(rows: Sequence[Sequence], rhs: Sequence):
    """Solve ``A x = b`` for rational ``A`` and Fraction- or Poly-valued ``b``.

    Returns one particular solution (free variables set to 0) or ``None`` when
    the system is inconsistent.
    """
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    a = [[Fraction(x) for x in row] for row in rows]
    b = list(rhs)
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, nrows) if a[i][c]), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        b[r], b[p] = b[p], b[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        b[r] = b[r] * inv
        for i in range(nrows):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
                b[i] = b[i] - b[r] * f
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    if any(b[i] for i in range(r, nrows)):
        return None
    x = [Fraction(0)] * ncols
    for i, c in enumerate(pivots):
        x[c] = b[i]
    return x


def linear_span_basis(polys: Iterable[Poly]) -> list[Poly]:
    """Reduced echelon basis of the Q-span of some polynomials (canonical)."""
    polys = [Poly.coerce(p) for p in polys]
    monos = sorted({m for p in polys for m, _ in p.items()}, key=_grlex_key)
    rows = [[p.terms.get(m, Fraction(0)) for m in monos] for p in polys]
    out = []
    # reduced row echelon form over Q
    a = [list(r) for r in rows]
    r = 0
    for c in range(len(monos)):
        p = next((i for i in range(r, len(a)) if a[i][c]), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        r += 1
    for row in a[:r]:
        out.append(Poly({m: x for m, x in zip(monos, row)}))
    return out


def span_contains(basis_polys: Sequence[Poly], p: Poly) -> bool:
    """True when ``p`` is a rational linear combination of ``basis_polys``."""
    before = len(linear_span_basis(basis_polys))
    return len(linear_span_basis(list(basis_polys) + [Poly.coerce(p)])) == before

