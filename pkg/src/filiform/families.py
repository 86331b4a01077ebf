"""Named parametrized filiform families in a Vergne basis.

Each family stores the non-chain brackets as ``(i, j) -> {k: Poly}``; the
chain ``[X_0, X_i] = X_{i+1}`` is added at instantiation.  Specialized
families are derived from a base family by substituting parameters.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from .liecore import StructureTable, model_filiform, quotient_by_center
from .scalars import Poly, parse_scalar, var_key

__all__ = [
    "FamilyDescriptor",
    "ConstraintViolation",
    "FAMILIES",
    "family_ids",
    "get_family",
    "instantiate",
    "component_of",
    "representatives",
    "contact_shortcut",
    "antidiagonal",
    "coerce_params",
    "constraint_values",
    "open_conditions_hold",
    "sample_point",
]

P = Poly.parse


class ConstraintViolation(ValueError):
    def __init__(self, family: str, poly: Poly, value):
        self.family = family
        self.poly = poly
        self.value = value
        super().__init__(f"{family}: constraint {poly} evaluates to {value}, not 0")


@dataclass(frozen=True)
class FamilyDescriptor:
    id: str
    dim: int
    params: tuple[str, ...]
    pattern: Mapping[tuple[int, int], Mapping[int, Poly]]
    constraints: tuple[Poly, ...] = ()
    aliases: Mapping[str, Poly] = field(default_factory=dict)
    open_conditions: tuple[Poly, ...] = ()
    summary: str = ""
    base: str | None = None
    base_values: Mapping[str, Poly] = field(default_factory=dict)

    def table(self, values: Mapping[str, object] | None = None) -> StructureTable:
        """Pattern with parameters substituted (no constraint check)."""
        values = values or {}
        coeffs = {(0, i, i + 1): Fraction(1) for i in range(1, self.dim - 1)}
        for (i, j), row in self.pattern.items():
            for k, c in row.items():
                v = c.subs(values) if values else c
                if v.is_constant():
                    v = v.constant_value()
                coeffs[(i, j, k)] = v
        return StructureTable(self.dim, coeffs)

    def linear_part(self) -> tuple[StructureTable, dict[str, StructureTable]]:
        """``pattern = base + sum_p p * Phi_p`` when the pattern is affine-linear."""
        zero = {p: Fraction(0) for p in self.params}
        base = self.table(zero)
        parts = {}
        for p in self.params:
            coeffs = {}
            for (i, j), row in self.pattern.items():
                for k, c in row.items():
                    if c.degree(p) > 1:
                        raise ValueError(f"{self.id}: pattern is not linear in {p}")
                    lin = c.linear_coefficients().get(p, Fraction(0))
                    if lin:
                        coeffs[(i, j, k)] = lin
            parts[p] = StructureTable(self.dim, coeffs)
        for (i, j), row in self.pattern.items():
            for k, c in row.items():
                if c.degree() > 1:
                    raise ValueError(f"{self.id}: pattern is not affine-linear")
        return base, parts

    def alias_values(self, values: Mapping[str, object]) -> dict[str, object]:
        return {name: expr.subs(values) for name, expr in self.aliases.items()}


def _pattern(spec: Mapping[tuple[int, int], Mapping[int, str]]) -> dict:
    return {ij: {k: P(s) for k, s in row.items()} for ij, row in spec.items()}


def _specialize(base: FamilyDescriptor, new_id: str, values: Mapping[str, str], params=None, **extra) -> FamilyDescriptor:
    sub = {k: P(v) if isinstance(v, str) else Poly.coerce(v) for k, v in values.items()}
    pattern = {}
    for ij, row in base.pattern.items():
        new_row = {}
        for k, c in row.items():
            v = c.subs(sub)
            if v:
                new_row[k] = v
        if new_row:
            pattern[ij] = new_row
    constraints = tuple(c for c in (q.subs(sub) for q in base.constraints) if c)
    if params is None:
        names = {v for row in pattern.values() for c in row.values() for v in c.variables()}
        params = tuple(sorted(names, key=var_key))
    aliases = {k: v.subs(sub) for k, v in base.aliases.items()}
    return FamilyDescriptor(
        new_id,
        base.dim,
        tuple(params),
        pattern,
        extra.pop("constraints", constraints),
        extra.pop("aliases", aliases),
        base=base.id,
        base_values=sub,
        **extra,
    )


# ---------------------------------------------------------------------------
# dimension 8

FIL8 = FamilyDescriptor(
    "fil8",
    8,
    ("a1", "a2", "a4", "a5", "a6", "a7", "a8"),
    _pattern({
        (2, 5): {7: "a1"},
        (1, 5): {6: "a1", 7: "a2"},
        (3, 4): {7: "-a1"},
        (2, 4): {7: "a4"},
        (1, 4): {5: "a1", 6: "a2 + a4", 7: "a5"},
        (2, 3): {6: "a4", 7: "a6"},
        (1, 3): {4: "a1", 5: "a2 + 2*a4", 6: "a5 + a6", 7: "a7"},
        (1, 2): {3: "a1", 4: "a2 + 2*a4", 5: "a5 + a6", 6: "a7", 7: "a8"},
    }),
    (P("a1*(5*a4 + 2*a2)"),),
    summary="all 8-dimensional filiform brackets",
)

FIL8C1 = _specialize(FIL8, "fil8c1", {"a1": "0"}, summary="first component, a1 = 0")
FIL8C2 = _specialize(
    FIL8, "fil8c2", {"a4": "-2/5*a2"}, params=("a1", "a2", "a5", "a6", "a7", "a8"),
    summary="second component, 5*a4 + 2*a2 = 0",
)
T1ALPHA = _specialize(
    FIL8C1, "t1alpha", {"a2": "alpha", "a4": "1", "a5": "1", "a6": "0", "a7": "0", "a8": "0"},
    open_conditions=(P("alpha + 1"),),
    summary="one-parameter family dense in the first component",
)
T2T8 = _specialize(
    FIL8C2, "t2t8", {"a1": "1", "a2": "1", "a5": "t", "a6": "-t", "a7": "0", "a8": "0"},
    summary="one-parameter family dense in the second component",
)

# b-parameter form of the first component (symplectic candidates)
SYMPL8B = FamilyDescriptor(
    "sympl8b",
    8,
    ("b2", "b4", "b5", "b6", "b7", "b8"),
    _pattern({
        (1, 5): {7: "b2"},
        (2, 4): {7: "b4"},
        (1, 4): {6: "b2 + b4", 7: "b5"},
        (2, 3): {6: "b4", 7: "b6"},
        (1, 3): {5: "b2 + 2*b4", 6: "b5 + b6", 7: "b7"},
        (1, 2): {4: "b2 + 2*b4", 5: "b5 + b6", 6: "b7", 7: "b8"},
    }),
    open_conditions=(P("b4*(b2 + b4)*(2*b2 - b4)*(b2 + 2*b4)"),),
    summary="symplectic candidates in b-parameters",
)
SYMPL8 = _specialize(
    SYMPL8B, "sympl8", {"b5": "0", "b6": "0", "b7": "0", "b8": "0"},
    open_conditions=SYMPL8B.open_conditions,
    summary="symplectic model family in (b2, b4)",
)

# ---------------------------------------------------------------------------
# dimension 9

_Z9 = {"b2": P("a2 + a4"), "b4": P("a4 + a6"), "b5": P("a5 + a7"), "b6": P("a7"), "b7": P("a8 + a9"), "b8": P("a10")}

FIL9 = FamilyDescriptor(
    "fil9",
    9,
    ("a2", "a4", "a5", "a6", "a7", "a8", "a9", "a10", "a11"),
    _pattern({
        (1, 6): {8: "a2"},
        (2, 5): {8: "a4"},
        (1, 5): {7: "a2 + a4", 8: "a5"},
        (3, 4): {8: "a6"},
        (2, 4): {7: "a4 + a6", 8: "a7"},
        (1, 4): {6: "a2 + 2*a4 + a6", 7: "a5 + a7", 8: "a8"},
        (2, 3): {6: "a4 + a6", 7: "a7", 8: "a9"},
        (1, 3): {5: "a2 + 3*a4 + 2*a6", 6: "a5 + 2*a7", 7: "a8 + a9", 8: "a10"},
        (1, 2): {4: "a2 + 3*a4 + 2*a6", 5: "a5 + 2*a7", 6: "a8 + a9", 7: "a10", 8: "a11"},
    }),
    (P("-3*a4^2 + 2*a6^2 + 2*a2*a6 + a4*a6"),),
    aliases=_Z9,
    summary="all 9-dimensional filiform brackets",
)

T9 = _specialize(
    FIL9, "t9",
    {"a2": "3/2*t^2 - 1/2*t - 1", "a4": "t", "a5": "1", "a6": "1", "a7": "0", "a8": "u", "a9": "0", "a10": "0", "a11": "0"},
    params=("t", "u"),
    open_conditions=(P("t"), P("t + 1"), P("2*t + 1")),
    summary="two-parameter family dense in dimension 9",
)
CONTACT9 = _specialize(
    FIL9, "contact9", {k: "0" for k in ("a5", "a7", "a8", "a9", "a10", "a11")},
    open_conditions=(P("a2*a4*a6"),),
    summary="contact model in dimension 9",
)

# quotient of the dimension-9 family by its center, in a-parameters
SYMPL8A = FamilyDescriptor(
    "sympl8a",
    8,
    ("a2", "a4", "a5", "a6", "a7", "a8", "a9", "a10"),
    _pattern({
        (1, 5): {7: "a2 + a4"},
        (2, 4): {7: "a4 + a6"},
        (1, 4): {6: "a2 + 2*a4 + a6", 7: "a5 + a7"},
        (2, 3): {6: "a4 + a6", 7: "a7"},
        (1, 3): {5: "a2 + 3*a4 + 2*a6", 6: "a5 + 2*a7", 7: "a8 + a9"},
        (1, 2): {4: "a2 + 3*a4 + 2*a6", 5: "a5 + 2*a7", 6: "a8 + a9", 7: "a10"},
    }),
    (P("-3*a4^2 + 2*a6^2 + 2*a2*a6 + a4*a6"),),
    aliases=_Z9,
    open_conditions=(P("a2*a4*a6"),),
    summary="symplectic candidates written with dimension-9 parameters",
)

# ---------------------------------------------------------------------------
# dimension 10

FIL10 = FamilyDescriptor(
    "fil10",
    10,
    ("a1", "a2", "a4", "a5", "a7", "a8", "a9", "a10", "a11", "a12", "a13", "a14", "a15"),
    _pattern({
        (2, 7): {9: "a1"},
        (1, 7): {8: "a1", 9: "a2"},
        (3, 6): {9: "-a1"},
        (2, 6): {9: "a4"},
        (1, 6): {7: "a1", 8: "a2 + a4", 9: "a5"},
        (4, 5): {9: "a1"},
        (3, 5): {9: "a7"},
        (2, 5): {8: "a4 + a7", 9: "a8"},
        (1, 5): {6: "a1", 7: "a2 + 2*a4 + a7", 8: "a5 + a8", 9: "a9"},
        (3, 4): {8: "a7", 9: "a10"},
        (2, 4): {7: "a4 + 2*a7", 8: "a8 + a10", 9: "a11"},
        (1, 4): {5: "a1", 6: "a2 + 3*a4 + 3*a7", 7: "a5 + 2*a8 + a10", 8: "a9 + a11", 9: "a12"},
        (2, 3): {6: "a4 + 2*a7", 7: "a8 + a10", 8: "a11", 9: "a13"},
        (1, 3): {4: "a1", 5: "a2 + 4*a4 + 5*a7", 6: "a5 + 3*a8 + 2*a10", 7: "a9 + 2*a11", 8: "a12 + a13", 9: "a14"},
        (1, 2): {3: "a1", 4: "a2 + 4*a4 + 5*a7", 5: "a5 + 3*a8 + 2*a10", 6: "a9 + 2*a11", 7: "a12 + a13", 8: "a14", 9: "a15"},
    }),
    (
        P("a1*(2*a2 + 7*a4 + 7*a7)"),
        P("3*a4^2 + 3*a4*a7 - 2*a2*a7"),
        P("a1*(2*a9 + 5*a11) - 2*a2*a10 + a4*(7*a8 - 2*a10) + a7*(-3*a5 + 2*a8 - 7*a10)"),
    ),
    summary="all 10-dimensional filiform brackets",
)

FIL10_COMPONENTS = {
    1: (P("a1"), P("3*a4^2 + 3*a4*a7 - 2*a2*a7"), P("-2*a2*a10 + a4*(7*a8 - 2*a10) + a7*(-3*a5 + 2*a8 - 7*a10)")),
    2: (P("a2"), P("a4 + a7"), P("a1*(2*a9 + 5*a11) + a4*(3*a5 + 5*a8 + 5*a10)")),
    3: (P("a2 + 2*a4"), P("3*a4 + 7*a7"), P("a1*(2*a9 + 5*a11) + a4*(9/7*a5 + 43/7*a8 + 5*a10)")),
}

# ---------------------------------------------------------------------------
# dimension 11

_Z11 = {
    "z1": P("a2 + a4"), "z2": P("a4 + a7"), "z3": P("a7 + a10"), "z4": P("a10"),
    "z5": P("a5 + a11"), "z6": P("a8 + a11"), "z7": P("a11"),
    "z8": P("a9 + a12"), "z9": P("a12 + a14"), "z10": P("a14"),
}

J_Z = {
    "J1": P("3*z2^2 + 3*z2*z3 - 2*z1*z3"),
    "J2": P("z7*(2*z1 + 2*z2 + z3) + z3*(3*z5 + z6) - 7*z2*z6"),
    "J3": P("z4*(2*z1 + 7*(z2 + z3)) - 2*z3*(2*z2 + z3)"),
    "J4": P(
        "z4*(2*z8 + 5*z9) - z10*(2*z1 + 9*z2 + 12*z3) - z7*(3*z5 + 7*z6 - z7) + 4*z6^2"
        " - 2*z3*(2*z8 + 7*z9) + 8*z9*(z2 + 2*z3)"
    ),
}

_FIL11_SPEC = {
    (1, 8): {10: "a2"},
    (2, 7): {10: "a4"},
    (1, 7): {9: "a2 + a4", 10: "a5"},
    (3, 6): {10: "a7"},
    (2, 6): {9: "a4 + a7", 10: "a8"},
    (1, 6): {8: "a2 + 2*a4 + a7", 9: "a5 + a8", 10: "a9"},
    (4, 5): {10: "a10"},
    (3, 5): {9: "a7 + a10", 10: "a11"},
    (2, 5): {8: "a4 + 2*a7 + a10", 9: "a8 + a11", 10: "a12"},
    (1, 5): {7: "a2 + 3*a4 + 3*a7 + a10", 8: "a5 + 2*a8 + a11", 9: "a9 + a12", 10: "a13"},
    (3, 4): {8: "a7 + a10", 9: "a11", 10: "a14"},
    (2, 4): {7: "a4 + 3*a7 + 2*a10", 8: "a8 + 2*a11", 9: "a12 + a14", 10: "a15"},
    (1, 4): {6: "a2 + 4*a4 + 6*a7 + 3*a10", 7: "a5 + 3*a8 + 3*a11", 8: "a9 + 2*a12 + a14", 9: "a13 + a15", 10: "a16"},
    (2, 3): {6: "a4 + 3*a7 + 2*a10", 7: "a8 + 2*a11", 8: "a12 + a14", 9: "a15", 10: "a17"},
    (1, 3): {
        5: "a2 + 5*a4 + 9*a7 + 5*a10", 6: "a5 + 4*a8 + 5*a11", 7: "a9 + 3*a12 + 2*a14",
        8: "a13 + 2*a15", 9: "a16 + a17", 10: "a18",
    },
    (1, 2): {
        4: "a2 + 5*a4 + 9*a7 + 5*a10", 5: "a5 + 4*a8 + 5*a11", 6: "a9 + 3*a12 + 2*a14",
        7: "a13 + 2*a15", 8: "a16 + a17", 9: "a18", 10: "a19",
    },
}

FIL11 = FamilyDescriptor(
    "fil11",
    11,
    ("a2", "a4", "a5", "a7", "a8", "a9", "a10", "a11", "a12", "a13", "a14", "a15", "a16", "a17", "a18", "a19"),
    _pattern(_FIL11_SPEC),
    tuple(J_Z[k].subs(_Z11) for k in ("J1", "J2", "J3", "J4")),
    aliases=_Z11,
    summary="all 11-dimensional filiform brackets",
)

CONTACT11 = _specialize(
    FIL11, "contact11",
    {k: "0" for k in ("a5", "a8", "a9", "a11", "a12", "a13", "a14", "a15", "a16", "a17", "a18", "a19")},
    open_conditions=(P("a2*a4*a7*a10"),),
    summary="contact model in dimension 11",
)


def _drop_top(desc: FamilyDescriptor, new_id: str, constraints, **extra) -> FamilyDescriptor:
    top = desc.dim - 1
    pattern = {}
    for ij, row in desc.pattern.items():
        if top in ij:
            continue
        new_row = {k: c for k, c in row.items() if k != top}
        if new_row:
            pattern[ij] = new_row
    names = {v for row in pattern.values() for c in row.values() for v in c.variables()}
    return FamilyDescriptor(
        new_id, desc.dim - 1, tuple(sorted(names, key=var_key)), pattern, tuple(constraints),
        aliases=desc.aliases, base=desc.id, **extra,
    )


SYMPL10 = _drop_top(
    FIL11, "sympl10", (J_Z["J1"].subs(_Z11), J_Z["J2"].subs(_Z11)),
    open_conditions=(P("a2*a4*a7*a10"),),
    summary="quotient of the 11-dimensional family by its center",
)

SYMPL10_MODEL = _specialize(
    SYMPL10, "sympl10m",
    {k: "0" for k in ("a5", "a8", "a9", "a11", "a12", "a13", "a14", "a15", "a16", "a17", "a18")},
    open_conditions=(P("a2*a4*a7*a10"),),
    summary="symplectic model family in dimension 10",
)

# a commonly quoted 10-dimensional symplectic table, kept for comparison
SYMPL10_TAB = FamilyDescriptor(
    "sympl10tab",
    10,
    SYMPL10.params,
    _pattern({
        (1, 7): {9: "a2 + a4"},
        (2, 6): {9: "a4 + a7"},
        (1, 6): {8: "a2 + 2*a4 + a7", 9: "a5 + a8"},
        (3, 5): {9: "a7 + a10"},
        (2, 5): {8: "a4 + 2*a7 + a10", 9: "a8 + a11"},
        (1, 5): {7: "a2 + 3*a4 + 3*a7 + a10", 8: "a5 + 2*a8 + a11", 9: "a9 + a12"},
        (3, 4): {8: "a7 + a10", 9: "a11"},
        (2, 4): {7: "a4 + 3*a7 + 2*a10", 8: "a8 + a11", 9: "a12 + a14"},
        (1, 4): {6: "a2 + 4*a4 + 6*a7 + 3*a10", 7: "a5 + 3*a8 + a11", 8: "a9 + a12 + a14", 9: "a13 + a15"},
        (2, 3): {6: "a4 + 3*a7 + 2*a10", 7: "a8 + 2*a11", 8: "a12 + a14", 9: "a15"},
        (1, 3): {5: "a2 + 5*a4 + 9*a7 + 5*a10", 6: "a5 + 4*a8 + 5*a11", 7: "a9 + 3*a12 + 2*a14", 8: "a13 + 2*a15", 9: "a16 + a17"},
        (1, 2): {4: "a2 + 5*a4 + 9*a7 + 5*a10", 5: "a5 + 4*a8 + 5*a11", 6: "a9 + 3*a12 + 2*a14", 7: "a13 + 2*a15", 8: "a16 + a17", 9: "a18"},
    }),
    (J_Z["J1"].subs(_Z11), J_Z["J2"].subs(_Z11)),
    aliases=_Z11,
    open_conditions=(P("a2*a4*a7*a10"),),
    summary="quoted 10-dimensional symplectic table (fails Jacobi)",
)


FAMILIES: dict[str, FamilyDescriptor] = {
    d.id: d
    for d in (
        FIL8, FIL8C1, FIL8C2, T1ALPHA, T2T8, SYMPL8, SYMPL8B, SYMPL8A,
        FIL9, T9, CONTACT9, FIL10, FIL11, CONTACT11, SYMPL10, SYMPL10_MODEL, SYMPL10_TAB,
    )
}

_BUILDERS = ("modelL", "model2p1")


def family_ids() -> list[str]:
    return sorted(FAMILIES) + list(_BUILDERS)


def get_family(family_id: str) -> FamilyDescriptor:
    try:
        return FAMILIES[family_id]
    except KeyError:
        raise KeyError(f"unknown family {family_id!r}; known: {', '.join(family_ids())}") from None


def coerce_params(params: Mapping[str, object] | None) -> dict[str, object]:
    out = {}
    for k, v in (params or {}).items():
        if isinstance(v, Poly):
            out[k] = v.constant_value() if v.is_constant() else v
        elif isinstance(v, str):
            try:
                out[k] = parse_scalar(v)
            except ValueError:
                out[k] = P(v)
        else:
            out[k] = Fraction(v)
    return out


def antidiagonal(p: int, lam=1) -> dict[str, object]:
    """Values ``a_{i,2p-1-i} = (-1)^(i+1) * lam`` in canonical names, other top constants zero."""
    from .vergnegen import param_name

    return {param_name(i, 2 * p - 1 - i): (-1) ** (i + 1) * lam for i in range(1, p)}


def _build_model2p1(params: Mapping[str, object]) -> StructureTable:
    from .liecore import check_jacobi
    from .vergnegen import generic_filiform

    p = int(params.get("p", 4))
    lam = params.get("lam", Fraction(1))
    G = generic_filiform(2 * p + 1)
    values = {name: Fraction(0) for name in G.params}
    values.update(antidiagonal(p, lam))
    T = G.table.subs(values)
    fails = check_jacobi(T)
    if fails:
        raise ConstraintViolation("model2p1", Poly(), fails[0].residual)
    return T


def instantiate(family_id: str, params: Mapping[str, object] | None = None, check: bool = True) -> StructureTable:
    """Family table at ``params``; unspecified parameters default to 0.

    Values may be rationals, ``"p/q"`` strings or Polys (symbolic
    instantiation).  Each constraint is checked exactly; a violation raises
    :class:`ConstraintViolation` naming the polynomial.
    """
    values = coerce_params(params)
    if family_id == "modelL":
        return model_filiform(int(values.get("n", 8)))
    if family_id == "model2p1":
        return _build_model2p1(values)
    desc = get_family(family_id)
    unknown = set(values) - set(desc.params)
    if unknown:
        raise KeyError(f"{family_id}: unknown parameters {sorted(unknown)}; expected {list(desc.params)}")
    full = {p: values.get(p, Fraction(0)) for p in desc.params}
    if check:
        for c in desc.constraints:
            v = c.subs(full)
            if v:
                raise ConstraintViolation(family_id, c, v)
    return desc.table(full)


def constraint_values(family_id: str, params: Mapping[str, object]) -> list[tuple[Poly, object]]:
    desc = get_family(family_id)
    values = coerce_params(params)
    full = {p: values.get(p, Fraction(0)) for p in desc.params}
    return [(c, c.subs(full)) for c in desc.constraints]


def open_conditions_hold(family_id: str, params: Mapping[str, object]) -> bool:
    desc = get_family(family_id)
    values = coerce_params(params)
    full = {p: values.get(p, Fraction(0)) for p in desc.params}
    return all(c.subs(full) != 0 for c in desc.open_conditions)


def component_of(variety: str, params: Mapping[str, object]) -> dict[str, bool]:
    """Membership flags for the components of ``fil8`` or ``fil10``."""
    values = coerce_params(params)
    if variety == "fil8":
        full = {p: values.get(p, Fraction(0)) for p in FIL8.params}
        return {
            "Fil8(1)": P("a1").subs(full) == 0,
            "Fil8(2)": P("5*a4 + 2*a2").subs(full) == 0,
        }
    if variety == "fil10":
        full = {p: values.get(p, Fraction(0)) for p in FIL10.params}
        return {f"Fil10({k})": all(c.subs(full) == 0 for c in eqs) for k, eqs in FIL10_COMPONENTS.items()}
    raise KeyError(f"unknown variety {variety!r}")


# first component: (a2, a4, a5, a6, a7, a8); second: (a1, a2, a5, a6, a7, a8)
_REPS = {
    "Fil8_1": (
        "fil8c1",
        ("a2", "a4", "a5", "a6", "a7", "a8"),
        [
            ("lam", 1, -1, 1, 0, 0), ("lam", 1, 0, 0, 0, 0), (-2, 1, 1, 0, 0, 0), (1, 0, -1, 1, "lam", 0),
            (0, 0, "lam", 1, 1, 0), (0, 0, "lam", 1, 0, 0), ("lam", 0, 0, 0, 1, 1), (1, 0, 0, 0, 1, 0),
            (1, 0, 0, 0, 0, 1), (1, 0, 0, 0, 0, 0), (0, 0, 1, 0, 1, 0), (0, 0, 1, 0, 0, 0),
            (0, 0, 0, 0, 1, 0), (0, 0, 0, 0, 0, 1), (0, 0, 0, 0, 0, 0),
        ],
    ),
    "Fil8_2": (
        "fil8c2",
        ("a1", "a2", "a5", "a6", "a7", "a8"),
        [(1, 0, 0, 0, 0, 0), (1, 0, 0, 0, 1, 0), (1, 0, 1, 0, "lam", 0), (1, 1, "lam", -2, 0, 0)],
    ),
}


def representatives(list_id: str, lam=None) -> list[tuple[tuple, StructureTable]]:
    """Instantiate a classification list; ``lam=None`` keeps the free parameter symbolic."""
    if list_id not in _REPS:
        raise KeyError(f"unknown representative list {list_id!r}")
    fam, names, tuples = _REPS[list_id]
    lam_val = Poly.var("lam") if lam is None else Fraction(lam)
    out = []
    for tup in tuples:
        values = {n: (lam_val if v == "lam" else Fraction(v)) for n, v in zip(names, tup)}
        out.append((tup, instantiate(fam, values)))
    return out


def contact_shortcut(params: Mapping[str, object], dim: int) -> bool:
    """Nonvanishing of the product of the antidiagonal top constants.

    ``params`` may use canonical names ``aII_JJ`` or, in dimensions 9 and 11,
    the short names (``a2, a4, a6`` / ``a2, a4, a7, a10``).
    """
    from .vergnegen import ALIASES, param_name

    if dim % 2 == 0:
        raise ValueError("contact criterion needs odd dimension")
    p = (dim - 1) // 2
    values = coerce_params(params)
    short = {v: k for k, v in ALIASES.get(dim, {}).items()}
    prod = Fraction(1)
    for i in range(1, p):
        j = 2 * p - 1 - i
        name = param_name(i, j)
        if name in values:
            v = values[name]
        else:
            v = values.get(short.get((i, j), name), Fraction(0))
        prod = prod * v
    return prod != 0


def quotient_family_table(family_id: str, params: Mapping[str, object]) -> StructureTable:
    return quotient_by_center(instantiate(family_id, params))


# ---------------------------------------------------------------------------
# seeded rational points on the constrained families


def _rand(rng, lo=-4, hi=4, nonzero=False):
    while True:
        v = Fraction(rng.randint(lo, hi), rng.choice((1, 1, 2, 3)))
        if v or not nonzero:
            return v


def _fil9_point(rng, stratum):
    # -3 a4^2 + 2 a6^2 + 2 a2 a6 + a4 a6 = 0, i.e. a2 = (3 a4^2 - a4 a6 - 2 a6^2) / (2 a6)
    if stratum == 1:
        a4 = a6 = _rand(rng, nonzero=True)
    elif stratum == 2:
        a6 = _rand(rng, nonzero=True) * 3
        a4 = -2 * a6 / 3
    elif stratum == 3:
        a4 = a6 = Fraction(0)
        a2 = _rand(rng)
    if stratum != 3:
        if stratum == 0:
            a4, a6 = _rand(rng), _rand(rng, nonzero=True)
        a2 = (3 * a4 * a4 - a4 * a6 - 2 * a6 * a6) / (2 * a6)
    pt = {"a2": a2, "a4": a4, "a6": a6}
    for p in ("a5", "a7", "a8", "a9", "a10", "a11"):
        pt[p] = _rand(rng)
    return pt


def _fil11_z_head(rng, stratum):
    """(z1, z2, z3, z4) on J1 = J3 = 0."""
    if stratum == 1:  # a10 = 0
        z2 = _rand(rng, nonzero=True)
        return 3 * z2 / 4, z2, -2 * z2, Fraction(0)
    if stratum == 2:  # z2 = z3 = 0, z1 = 0
        return Fraction(0), Fraction(0), Fraction(0), _rand(rng)
    while True:
        z2, z3 = _rand(rng, nonzero=True), _rand(rng, nonzero=True)
        z1 = 3 * z2 * (z2 + z3) / (2 * z3)
        den = 2 * z1 + 7 * z2 + 7 * z3
        if den:
            return z1, z2, z3, 2 * z3 * (2 * z2 + z3) / den


def _fil11_point(rng, stratum):
    z1, z2, z3, z4 = _fil11_z_head(rng, stratum)
    z6, z7, z9, z10 = (_rand(rng) for _ in range(4))
    if z3:
        z5 = (7 * z2 * z6 - z7 * (2 * z1 + 2 * z2 + z3) - z3 * z6) / (3 * z3)
    else:
        # J2 reduces to 2 z1 z7 - 7 z2 z6 (= 0 here since z1 = z2 = 0 in that stratum)
        z5 = _rand(rng)
    # J4 is linear in z8, z9, z10; solve for the first one with a nonzero coefficient
    c8 = 2 * z4 - 4 * z3
    c9 = 5 * z4 - 14 * z3 + 8 * (z2 + 2 * z3)
    c10 = -(2 * z1 + 9 * z2 + 12 * z3)
    rest = -z7 * (3 * z5 + 7 * z6 - z7) + 4 * z6 * z6
    z8 = Fraction(0) if c8 else _rand(rng)
    if c8:
        z8 = -(rest + c9 * z9 + c10 * z10) / c8
    elif c9:
        z9 = -(rest + c10 * z10) / c9
    elif c10:
        z10 = -rest / c10
    elif rest:
        return _fil11_point(rng, stratum)
    a = {}
    a["a10"] = z4
    a["a7"] = z3 - z4
    a["a4"] = z2 - a["a7"]
    a["a2"] = z1 - a["a4"]
    a["a11"] = z7
    a["a8"] = z6 - z7
    a["a5"] = z5 - z7
    a["a14"] = z10
    a["a12"] = z9 - z10
    a["a9"] = z8 - a["a12"]
    for p in ("a13", "a15", "a16", "a17", "a18", "a19"):
        a[p] = _rand(rng)
    return a


def _fil10_point(rng, stratum):
    pt = {p: _rand(rng) for p in FIL10.params}
    if stratum == 0:
        pt["a1"] = Fraction(0)
        a4, a7 = pt["a4"], _rand(rng, nonzero=True)
        pt["a7"] = a7
        pt["a2"] = 3 * a4 * (a4 + a7) / (2 * a7)
        # third equation is linear in a10 with coefficient -(2 a2 + 2 a4 + 7 a7)
        c = -(2 * pt["a2"] + 2 * a4 + 7 * a7)
        if c:
            pt["a10"] = Fraction(0)
            r = FIL10_COMPONENTS[1][2].subs(pt).constant_value()
            pt["a10"] = -r / c
        else:
            pt["a5"] = Fraction(0)
            pt["a8"] = Fraction(0)
            pt["a10"] = Fraction(0)
            pt["a7"] = Fraction(0) if pt["a2"] else pt["a7"]
    else:
        if stratum == 1:
            pt["a2"] = Fraction(0)
            pt["a7"] = -pt["a4"]
        else:
            pt["a4"] = 7 * _rand(rng)
            pt["a7"] = -3 * pt["a4"] / 7
            pt["a2"] = -2 * pt["a4"]
        pt["a1"] = _rand(rng, nonzero=True)
        pt["a9"] = Fraction(0)
        r = FIL10_COMPONENTS[stratum + 1][2].subs(pt).constant_value()
        pt["a9"] = -r / (2 * pt["a1"])
    return pt


def sample_point(family_id: str, rng, stratum: int | None = None) -> dict[str, Fraction]:
    """A rational point satisfying the family constraints.

    ``stratum`` selects special sub-cases (e.g. vanishing antidiagonal
    constants) so that both verdicts of a criterion get exercised.
    """
    if family_id == "fil9":
        return _fil9_point(rng, rng.randrange(4) if stratum is None else stratum)
    if family_id == "fil11":
        return _fil11_point(rng, rng.choice((0, 0, 1, 2)) if stratum is None else stratum)
    if family_id == "fil10":
        return _fil10_point(rng, rng.randrange(3) if stratum is None else stratum)
    if family_id == "fil8":
        pt = {p: _rand(rng) for p in FIL8.params}
        if (rng.randrange(2) if stratum is None else stratum) == 0:
            pt["a1"] = Fraction(0)
        else:
            pt["a4"] = -2 * pt["a2"] / 5
        return pt
    desc = get_family(family_id)
    if desc.constraints:
        raise ValueError(f"no sampler for constrained family {family_id}")
    return {p: _rand(rng) for p in desc.params}
