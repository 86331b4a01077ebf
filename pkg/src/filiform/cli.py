"""Command-line interface: ``filiform <verb> ...``.

Reports are JSON on stdout.  A negative mathematical answer is still exit
code 0; bad input or a violated precondition gives exit code 2 with an
``error`` object.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import os
import random
import sys
from fractions import Fraction
from typing import Any

from . import affine as aff
from . import ceforms, cohomdef, families, liecore, vergnegen
from .scalars import Poly, parse_scalar, scalar_str

DEFAULT_SEED = 0


class CliError(Exception):
    def __init__(self, code: str, message: str):
        self.code = code
        super().__init__(message)


# ---------------------------------------------------------------------------
# helpers


def _seed(args) -> int:
    if getattr(args, "seed", None) is not None:
        return args.seed
    env = os.environ.get("FILIFORM_SEED")
    if env is None:
        return DEFAULT_SEED
    try:
        return int(env)
    except ValueError:
        raise CliError("bad_seed", f"FILIFORM_SEED must be an integer, got {env!r}") from None


def parse_params(text: str | None) -> dict[str, Fraction]:
    """``"a2=1,a4=-2/5"`` -> {name: Fraction}."""
    out: dict[str, Fraction] = {}
    if not text:
        return out
    for item in text.split(","):
        item = item.strip()
        if not item:
            continue
        if "=" not in item:
            raise CliError("bad_params", f"expected name=value, got {item!r}")
        k, v = item.split("=", 1)
        try:
            out[k.strip()] = parse_scalar(v.strip())
        except ValueError:
            raise CliError("bad_params", f"value for {k.strip()!r} is not rational: {v!r}") from None
    return out


def _read_json(path: str) -> Any:
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except FileNotFoundError:
        raise CliError("io_error", f"no such file: {path}") from None
    except json.JSONDecodeError as exc:
        raise CliError("bad_json", f"{path}: {exc}") from None


def parse_algebra(path: str) -> liecore.StructureTable:
    data = _read_json(path)
    try:
        return liecore.StructureTable.from_json(data)
    except (ValueError, IndexError, KeyError, TypeError) as exc:
        raise CliError("bad_algebra", str(exc)) from None


class Context:
    """Collects what a report must echo: input hash, seed, evaluated constraints."""

    def __init__(self, args):
        self.seed = _seed(args)
        self.hasher = hashlib.sha256()
        self.constraints: list[dict] = []
        self.hasher.update(" ".join(sys.argv[1:] if args._argv is None else args._argv).encode())

    def add_file(self, path: str):
        if path == "-":
            return
        try:
            with open(path, "rb") as fh:
                self.hasher.update(fh.read())
        except OSError:
            pass

    def algebra(self, args) -> tuple[liecore.StructureTable, dict | None]:
        if getattr(args, "algebra", None):
            self.add_file(args.algebra)
            return parse_algebra(args.algebra), None
        fam = getattr(args, "family", None)
        if not fam:
            raise CliError("missing_input", "give --algebra or --family")
        params = parse_params(getattr(args, "params", None))
        T = self.instantiate(fam, params)
        return T, {"family": fam, "params": {k: scalar_str(v) for k, v in params.items()}}

    def instantiate(self, fam: str, params: dict) -> liecore.StructureTable:
        try:
            if fam not in ("modelL", "model2p1"):
                for poly, value in families.constraint_values(fam, params):
                    self.constraints.append({"poly": str(poly), "value": str(value)})
            return families.instantiate(fam, params)
        except families.ConstraintViolation as exc:
            raise CliError("constraint_violation", str(exc)) from None
        except KeyError as exc:
            raise CliError("unknown_family", str(exc.args[0])) from None

    def report(self, verb: str, body: dict) -> dict:
        return {
            "verb": verb,
            "seed": self.seed,
            "input_sha256": self.hasher.hexdigest(),
            "constraints": self.constraints,
            **body,
        }


def _jsonable(x):
    if isinstance(x, (Fraction, Poly)):
        return scalar_str(x) if isinstance(x, Fraction) else str(x)
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


# ---------------------------------------------------------------------------
# verbs


def cmd_verify(args, ctx: Context) -> dict:
    T, src = ctx.algebra(args)
    fails = liecore.check_jacobi(T)
    return {
        "source": src,
        "dim": T.dim,
        "jacobi": not fails,
        "jacobi_failures": [{"triple": list(f.triple), "residual": f.residual} for f in fails[:20]],
        "filiform": liecore.is_filiform(T) if not fails else False,
    }


def cmd_invariants(args, ctx: Context) -> dict:
    T, src = ctx.algebra(args)
    cs = liecore.central_series(T)
    seq = liecore.characteristic_sequence_of_algebra(T)
    return {
        "source": src,
        "dim": T.dim,
        "descending": cs["descending"],
        "ascending": cs["ascending"],
        "nilindex": cs["nilindex"],
        "center_dim": len(liecore.center(T)),
        "characteristic_sequence": list(seq["sequence"]) if seq["sequence"] else None,
        "characteristic_certified": seq["certified"],
        "filiform": liecore.is_filiform(T),
    }


def cmd_family(args, ctx: Context) -> dict:
    if args.list:
        return {"families": {fid: _family_info(fid) for fid in families.family_ids()}}
    params = parse_params(args.params)
    T = ctx.instantiate(args.id, params)
    return {"family": args.id, "algebra": T.to_json(params), "filiform": liecore.is_filiform(T)}


def _family_info(fid: str) -> dict:
    if fid == "modelL":
        return {"params": ["n"], "summary": "model filiform algebra"}
    if fid == "model2p1":
        return {"params": ["p", "lam"], "summary": "alternating antidiagonal model in dimension 2p+1"}
    d = families.get_family(fid)
    return {
        "dim": d.dim,
        "params": list(d.params),
        "constraints": [str(c) for c in d.constraints],
        "open_conditions": [str(c) for c in d.open_conditions],
        "summary": d.summary,
    }


def cmd_contact(args, ctx: Context) -> dict:
    T, src = ctx.algebra(args)
    if T.dim % 2 == 0:
        raise CliError("precondition", "contact structures need odd dimension")
    n = T.dim
    top = ceforms.basis_form(n, n - 1)
    out = {
        "source": src,
        "dim": n,
        "contact": ceforms.is_contact_algebra(T),
        "top_form_is_contact": ceforms.is_contact_form(T, top),
        "d_top_form": ceforms.d_one_form(T, top).to_json(),
    }
    if src and src["family"] not in ("modelL",):
        d = families.get_family(src["family"]) if src["family"] != "model2p1" else None
        if d is None:
            out["shortcut"] = True
        elif d.dim in (9, 11):
            out["shortcut"] = families.contact_shortcut(parse_params(args.params), n)
    return out


def cmd_symplectic(args, ctx: Context) -> dict:
    T, src = ctx.algebra(args)
    if T.dim % 2:
        raise CliError("precondition", "symplectic structures need even dimension")
    res = ceforms.symplectic_exists(T, seed=ctx.seed)
    return {
        "source": src,
        "dim": T.dim,
        "symplectic": res.exists,
        "method": res.method,
        "closed_dim": res.closed_dim,
        "witness": res.witness.to_json() if res.witness is not None else None,
    }


def cmd_extend(args, ctx: Context) -> dict:
    T, src = ctx.algebra(args)
    if args.form:
        ctx.add_file(args.form)
        try:
            theta = ceforms.ExtElement.from_json(T.dim, _read_json(args.form))
        except (ValueError, KeyError) as exc:
            raise CliError("bad_form", str(exc)) from None
    else:
        res = ceforms.symplectic_exists(T, seed=ctx.seed)
        if not res.exists:
            raise CliError("precondition", "no symplectic form to extend by")
        theta = res.witness
    try:
        E = ceforms.central_extension(T, theta)
    except ValueError as exc:
        raise CliError("precondition", str(exc)) from None
    top = ceforms.basis_form(E.dim, E.dim - 1)
    return {
        "source": src,
        "form": theta.to_json(),
        "algebra": E.to_json(),
        "filiform": liecore.is_filiform(E),
        "top_form_is_contact": ceforms.is_contact_form(E, top) if E.dim % 2 else None,
        "quotient_recovers": liecore.quotient_by_center(E) == T,
    }


def cmd_quotient(args, ctx: Context) -> dict:
    T, src = ctx.algebra(args)
    try:
        Q = liecore.quotient_by_center(T)
    except ValueError as exc:
        raise CliError("precondition", str(exc)) from None
    return {"source": src, "algebra": Q.to_json(), "filiform": liecore.is_filiform(Q)}


def cmd_cohomology(args, ctx: Context) -> dict:
    params = parse_params(args.params)
    try:
        if args.sweep:
            ctx.add_file(args.sweep)
            grid_data = _read_json(args.sweep)
            grid = {k: [parse_scalar(str(v)) for v in vals] for k, vals in grid_data.get("grid", grid_data).items()}
            rows = cohomdef.sweep(args.family, grid, fixed=params, workers=args.workers)
            return {"family": args.family, "sweep": rows}
        for poly, value in families.constraint_values(args.family, params):
            ctx.constraints.append({"poly": str(poly), "value": str(value)})
        rep = cohomdef.cohomology(args.family, params)
    except families.ConstraintViolation as exc:
        raise CliError("constraint_violation", str(exc)) from None
    except KeyError as exc:
        raise CliError("unknown_family", str(exc.args[0])) from None
    except cohomdef.PatternEscape as exc:
        raise CliError("pattern_escape", str(exc)) from None
    return {"family": args.family, "params": {k: scalar_str(v) for k, v in params.items()}, **rep.as_dict()}


def cmd_jacobi_gen(args, ctx: Context) -> dict:
    if args.dim < 5:
        raise CliError("precondition", "dimension must be at least 5")
    G = vergnegen.generic_filiform(args.dim)
    eqs = vergnegen.jacobi_ideal(G)
    out = {
        "dim": args.dim,
        "free_params": list(G.params),
        "free_count": G.free_count,
        "relations": {k: str(v) for k, v in G.relations.items()},
        "equations": [
            {"triple": list(e.triple), "weight": e.weight, "components": {str(m): str(p) for m, p in e.as_dict().items()}}
            for e in eqs
        ],
    }
    if args.reduce:
        point = None
        if args.x1:
            # guards are tested at a seeded point with nonzero coordinates
            rng = random.Random(ctx.seed)
            point = {k: Fraction(rng.randint(1, 9)) for k in G.params}
            out["x1_point"] = {k: scalar_str(v) for k, v in point.items()}
        red = vergnegen.reduce_ideal(eqs, G, use_x1=args.x1, point=point)
        out["generators"] = [list(t) for t in red.generator_triples]
        out["certificates"] = [
            {"target": list(c.target), "kind": c.kind, "verified": vergnegen.verify_certificate(eqs, c, G)}
            for c in red.certificates
        ]
    if args.dim % 2:
        p = (args.dim - 1) // 2
        out["counts"] = _jsonable(vergnegen.equation_count(p))
    return out


def cmd_affine(args, ctx: Context) -> dict:
    T, src = ctx.algebra(args)
    if args.mode == "verify":
        if not args.product:
            raise CliError("missing_input", "affine verify needs --product")
        ctx.add_file(args.product)
        data = _read_json(args.product)
        try:
            P = aff.AffineProduct.from_json(data)
        except (ValueError, IndexError, KeyError) as exc:
            raise CliError("bad_product", str(exc)) from None
        if P.dim != T.dim:
            raise CliError("precondition", "product and algebra dimensions differ")
    else:
        res = ceforms.symplectic_exists(T, seed=ctx.seed) if T.dim % 2 == 0 else None
        if not res or not res.exists:
            raise CliError("precondition", "algebra has no symplectic form")
        P = aff.affine_from_symplectic(T, res.witness)
    rep = aff.check_left_symmetric(P, T)
    out = {
        "source": src,
        "left_symmetric": rep.ok,
        "bracket_failures": [[i, j] for i, j, _ in rep.bracket_failures[:20]],
        "associator_failures": [[i, j, k] for i, j, k, _ in rep.associator_failures[:20]],
    }
    if rep.ok:
        out["complete"] = aff.is_complete(P, seed=ctx.seed).complete
    if args.mode == "from-symplectic":
        out["product"] = P.to_json()
    return out


def cmd_sweep(args, ctx: Context) -> dict:
    ctx.add_file(args.grid)
    grid_data = _read_json(args.grid)
    grid = grid_data.get("grid", grid_data)
    fixed = parse_params(args.params)
    names = sorted(grid)
    import itertools

    rows = []
    for combo in itertools.product(*(grid[n] for n in names)):
        point = dict(fixed)
        point.update({n: parse_scalar(str(v)) for n, v in zip(names, combo)})
        row: dict = {"params": {k: scalar_str(v) for k, v in point.items()}}
        try:
            if args.what == "cohomology":
                row.update(cohomdef.cohomology(args.family, point).as_dict())
            else:
                T = families.instantiate(args.family, point)
                if args.what == "symplectic":
                    row["symplectic"] = ceforms.symplectic_exists(T, seed=ctx.seed).exists
                elif args.what == "contact":
                    row["contact"] = ceforms.is_contact_algebra(T)
                else:
                    row["jacobi"] = not liecore.check_jacobi(T)
                    row["filiform"] = liecore.is_filiform(T)
        except families.ConstraintViolation as exc:
            row["skipped"] = str(exc)
        rows.append(row)
    return {"family": args.family, "what": args.what, "rows": rows}


# ---------------------------------------------------------------------------
# parser


def _add_source(p):
    p.add_argument("--algebra", help="algebra JSON file ('-' for stdin)")
    p.add_argument("--family", help="family id (see `family --list`)")
    p.add_argument("--params", help="comma-separated name=value pairs")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="filiform", description="Exact computations with filiform Lie algebras.")
    ap.add_argument("--pretty", action="store_true", help="human-readable output")
    ap.add_argument("--seed", type=int, default=None, help="random seed (default: FILIFORM_SEED or 0)")
    sub = ap.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("verify", help="Jacobi identity and filiform test")
    _add_source(p)
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("invariants", help="central series and characteristic sequence")
    _add_source(p)
    p.set_defaults(fn=cmd_invariants)

    p = sub.add_parser("family", help="instantiate a named family")
    p.add_argument("--id", default="fil8")
    p.add_argument("--params")
    p.add_argument("--list", action="store_true")
    p.set_defaults(fn=cmd_family)

    p = sub.add_parser("contact", help="contact structure test")
    _add_source(p)
    p.set_defaults(fn=cmd_contact)

    p = sub.add_parser("symplectic", help="search for a symplectic form")
    _add_source(p)
    p.set_defaults(fn=cmd_symplectic)

    p = sub.add_parser("extend", help="central extension by a closed 2-form")
    _add_source(p)
    p.add_argument("--form", help="2-form JSON; defaults to a symplectic witness")
    p.set_defaults(fn=cmd_extend)

    p = sub.add_parser("quotient", help="quotient by the center")
    _add_source(p)
    p.set_defaults(fn=cmd_quotient)

    p = sub.add_parser("cohomology", help="restricted H^2 dimension")
    p.add_argument("--family", required=True)
    p.add_argument("--params")
    p.add_argument("--sweep", help="grid JSON {name: [values]}")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(fn=cmd_cohomology)

    p = sub.add_parser("jacobi-gen", help="generic Jacobi equations in a Vergne basis")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--reduce", action="store_true")
    p.add_argument("--x1", action="store_true", help="also try the guarded X_1 relation")
    p.set_defaults(fn=cmd_jacobi_gen)

    p = sub.add_parser("affine", help="left-symmetric products")
    p.add_argument("mode", choices=["verify", "from-symplectic"])
    _add_source(p)
    p.add_argument("--product", help="product JSON (verify mode)")
    p.set_defaults(fn=cmd_affine)

    p = sub.add_parser("sweep", help="evaluate a predicate over a parameter grid")
    p.add_argument("--family", required=True)
    p.add_argument("--grid", required=True, help="grid JSON {name: [values]}")
    p.add_argument("--params", help="fixed parameters")
    p.add_argument("--what", choices=["symplectic", "contact", "cohomology", "jacobi"], default="jacobi")
    p.set_defaults(fn=cmd_sweep)
    return ap


def _pretty(obj, indent=0) -> str:
    pad = "  " * indent
    lines = []
    if isinstance(obj, dict):
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}{k}:")
                lines.append(_pretty(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {v}")
    elif isinstance(obj, list):
        for v in obj:
            if isinstance(v, (dict, list)):
                lines.append(f"{pad}-")
                lines.append(_pretty(v, indent + 1))
            else:
                lines.append(f"{pad}- {v}")
    else:
        lines.append(f"{pad}{obj}")
    return "\n".join(lines)


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    args._argv = argv
    try:
        ctx = Context(args)
        body = args.fn(args, ctx)
        report = _jsonable(ctx.report(args.verb, body))
        code = 0
    except CliError as exc:
        report = {"verb": args.verb, "error": {"code": exc.code, "message": str(exc)}}
        code = 2
    except (ValueError, KeyError) as exc:
        report = {"verb": args.verb, "error": {"code": "invalid", "message": str(exc)}}
        code = 2
    if args.pretty:
        print(_pretty(report))
    else:
        print(json.dumps(report, sort_keys=True))
    return code


if __name__ == "__main__":
    sys.exit(main())
