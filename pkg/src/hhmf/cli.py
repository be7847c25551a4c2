"""Command-line front end.

    hhmf analyze E12
    hhmf hh fermat3 --t-max 5 --mode both
    hhmf unfolding tacnode --assign u4=1/2
    hhmf specseq fermat --n 3
    hhmf algebra-hh cusp --p-max 2 --s-min -8
    hhmf report fermat 3

Polynomials are given by a built-in name (``fermat3``, ``cusp_doublecover2``,
``E12``, ``tacnode_phi_gm``, ...) or a JSON file::

    {"variables": ["x", "y"],
     "terms": [{"coeff": "1", "exp": [2, 0]}, {"coeff": "1", "exp": [0, 4]}],
     "cone_terms": [{"coeff": "1", "exp": [4, 0, 1]}],
     "group": {"kind": "full"}}

``cone_terms`` (optional) are extra monomials over ``x_0, ..., x_n``.  The
group may also come from ``--group FILE`` holding
``{"group": {"kind": "explicit", "generators": [["1/2", "0"]]}}``.

Exit codes: 0 success, 2 input error, 3 internal consistency failure.
"""
from __future__ import annotations

import argparse
import io
import json
import os
import sys
from contextlib import redirect_stdout
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from . import catalog, koszul, specseq, symmetry, trivext, wpoly
from .catalog import Case, cone
from .hochschild import (HHError, HHTable, check_cr_hh0, deformation_weights,
                         hh_cone, hh_mf, twisted_deformation_detector)
from .symmetry import CharacterLattice, SubgroupSpec, sector_census
from .unfolding import UnknownParameter, build_unfolded_polynomial, unfolding_basis

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_CONSISTENCY = 3


class InputError(Exception):
    pass


class ConsistencyError(Exception):
    pass


@dataclass
class JobSpec:
    command: str
    inputs: List[str]
    options: Dict[str, object] = field(default_factory=dict)


def frac_str(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def parse_frac(s) -> Fraction:
    if isinstance(s, bool) or isinstance(s, float):
        raise InputError(f"rationals must be integers or 'p/q' strings, got {s!r}")
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError, TypeError) as exc:
        raise InputError(f"bad rational {s!r}") from exc


# ---------------------------------------------------------------------------
# input
# ---------------------------------------------------------------------------

def _load_json(path: str):
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from exc


def _parse_terms(raw, nvars: int, where: str):
    if not isinstance(raw, list):
        raise InputError(f"{where}: expected a list of terms")
    out = []
    for i, t in enumerate(raw):
        if not isinstance(t, dict) or "exp" not in t:
            raise InputError(f"{where}[{i}]: expected {{'coeff': ..., 'exp': [...]}}")
        exp = t["exp"]
        if not isinstance(exp, list) or len(exp) != nvars or not all(isinstance(e, int) and e >= 0 for e in exp):
            raise InputError(f"{where}[{i}]: exponent must be {nvars} nonnegative integers")
        out.append((parse_frac(t.get("coeff", "1")), tuple(exp)))
    return out


def parse_group(raw) -> SubgroupSpec:
    if raw is None:
        return symmetry.FULL
    if not isinstance(raw, dict) or "kind" not in raw:
        raise InputError("group: expected {'kind': ..., 'generators': [...]}")
    gens = raw.get("generators", [])
    try:
        return SubgroupSpec(raw["kind"], tuple(tuple(parse_frac(x) for x in g) for g in gens))
    except symmetry.SymmetryError as exc:
        raise InputError(f"group: {exc}") from exc


def case_from_json(data, name: str = "input") -> Case:
    if not isinstance(data, dict) or "variables" not in data or "terms" not in data:
        raise InputError("polynomial: expected keys 'variables' and 'terms'")
    names = data["variables"]
    if not isinstance(names, list) or not all(isinstance(v, str) for v in names):
        raise InputError("variables: expected a list of names")
    terms = _parse_terms(data["terms"], len(names), "terms")
    weights, h = data.get("weights"), data.get("h")
    w = wpoly.polynomial(names, terms, weights, h).with_weights()
    sub = parse_group(data.get("group"))
    extra = _parse_terms(data.get("cone_terms", []), len(names) + 1, "cone_terms")
    if extra:
        L = CharacterLattice(w, sub)
        for i, (_, e) in enumerate(extra):
            if L.mono_class(e) != L.chi:
                raise InputError(f"cone_terms[{i}]: monomial is not semi-invariant of character chi")
    return Case(name, w, sub, cone(w, extra))


def load_case(source: str, group_path: Optional[str] = None) -> Case:
    if os.path.exists(source):
        case = case_from_json(_load_json(source), os.path.splitext(os.path.basename(source))[0])
    else:
        try:
            case = catalog.by_name(source)
        except KeyError as exc:
            raise InputError(f"{source!r} is neither a file nor a built-in case") from exc
    if group_path:
        raw = _load_json(group_path)
        case = Case(case.name, case.w, parse_group(raw.get("group") if isinstance(raw, dict) else None), case.W)
    return case


# ---------------------------------------------------------------------------
# commands: each returns (json data, table text)
# ---------------------------------------------------------------------------

def cmd_analyze(case: Case) -> Tuple[dict, str]:
    ws = case.w.weight_system
    mu = wpoly.milnor_number(ws)
    wt, tail = wpoly.exponents_w_vector(ws)
    L = CharacterLattice(case.w, case.sub)
    census = sector_census(L)
    data = {
        "name": case.name, "polynomial": wpoly.format_polynomial(case.w),
        "weights": list(ws.d), "h": ws.h, "mu": mu, "w_vector": tail, "w_tilde": wt,
        "group": case.sub.kind, "character_group": L.describe(), "torsion": list(L.torsion),
        "d0": L.d0, "sectors": len(L.sectors()), "census": census,
    }
    text = "\n".join([
        f"{case.name}: {data['polynomial']}",
        f"weights {ws}  mu = {mu}",
        f"w = ({','.join(map(str, tail))})",
        f"group {case.sub.kind}: character group {L.describe()}, d0 = {L.d0}",
        f"sectors {data['sectors']}: " + ", ".join(f"{k} {v}" for k, v in census.items()),
    ])
    return data, text


def _tables(case: Case, t_max: int, mode: str, strict: bool, jobs: int) -> Dict[str, HHTable]:
    L = CharacterLattice(case.w, case.sub)
    if mode in ("cone", "both") and not case.x0_free:
        raise InputError("cone mode needs a polynomial not involving x0; use --mode general")
    out = {}
    if mode in ("cone", "both"):
        out["cone"] = hh_cone(L, t_max, strict=strict, jobs=jobs)
    if mode in ("general", "both"):
        out["general"] = hh_mf(case.W, L, t_max, strict=strict, jobs=jobs)
    if mode == "both":
        diff = out["cone"].same_rows(out["general"])
        if diff:
            lines = [f"HH^{t}: cone {out['cone'].render_row(t)} | general {out['general'].render_row(t)}" for t in diff]
            raise ConsistencyError("paths disagree\n" + "\n".join(lines))
    return out


def cmd_hh(case: Case, t_max: int, mode: str = "general", strict: bool = False, jobs: int = 1) -> Tuple[dict, str]:
    tables = _tables(case, t_max, mode, strict, jobs)
    table = tables.get("general") or tables["cone"]
    data = {"name": case.name, "t_max": t_max, "mode": mode, "rows": table.to_json(provenance=False)}
    if table.weights_tracked:
        tw = twisted_deformation_detector(table)
        data["twisted"] = tw.to_json()
        data["deformation_weights"] = deformation_weights(table)
        data["cr"] = check_cr_hh0(table).to_json()
    text = [f"{case.name} ({mode})", table.render()]
    if table.weights_tracked:
        text.append("twisted deformations: " + ("present" if data["twisted"]["twisted_deformations"] else "none"))
    return data, "\n".join(text)


def _parse_assignment(items: Sequence[str]) -> Dict[str, Fraction]:
    out = {}
    for item in items:
        if "=" not in item:
            raise InputError(f"--assign expects name=value, got {item!r}")
        k, v = item.split("=", 1)
        out[k.strip()] = parse_frac(v.strip())
    return out


def cmd_unfolding(case: Case, assign: Sequence[str] = ()) -> Tuple[dict, str]:
    L = CharacterLattice(case.w, case.sub)
    Jw, J = unfolding_basis(case.w, L)
    names = case.w.variables
    params = [{"name": d.name, "w": d.w_j, "monomial": wpoly.format_monomial(("x0",) + tuple(names), (d.w_j,) + d.j)}
              for d in sorted(J, key=lambda d: (-d.w_j, d.j))]
    data = {"name": case.name, "jacobi_basis": len(Jw), "dim_U": len(J), "parameters": params}
    text = [f"{case.name}: dim U = {len(J)} (Jacobi basis {len(Jw)})"]
    text += [f"  {p['name']}: {p['monomial']}" for p in params]
    if assign:
        values = _parse_assignment(assign)
        try:
            W = build_unfolded_polynomial(case.w, L, values)
        except UnknownParameter as exc:
            raise InputError(f"unknown parameter {exc.args[0]!r}") from exc
        data["unfolded"] = {"variables": list(W.variables),
                            "terms": [{"coeff": frac_str(c), "exp": list(e)} for c, e in sorted(W.terms, key=lambda t: t[1])]}
        text.append("unfolded: " + wpoly.format_polynomial(W))
    return data, "\n".join(text)


def load_strata(source: str, n: Optional[int]) -> specseq.StrataData:
    if source in ("fermat", "doublecover"):
        if n is None:
            raise InputError(f"{source} strata need --n")
        gen = specseq.fermat_strata if source == "fermat" else specseq.doublecover_strata
        return gen(n)
    if not os.path.exists(source):
        raise InputError(f"{source!r} is neither a strata file nor 'fermat'/'doublecover'")
    return specseq.StrataData.from_json(_load_json(source))


def _default_p_min(strata: specseq.StrataData, n_max: int) -> int:
    kmax = max(strata.kappa) if strata.kappa else 1
    return -((n_max + 1) * kmax // 2)


def cmd_specseq(strata: specseq.StrataData, n_max: int = 6, p_min: Optional[int] = None) -> Tuple[dict, str]:
    if p_min is None:
        p_min = _default_p_min(strata, n_max)
    page = specseq.e1_page(strata, p_min)
    bounds = specseq.degree_bounds(page, n_max, strata)
    data = {"strata": strata.to_json(), "page": page.to_json(), "bounds": [b.to_json() for b in bounds]}
    text = [page.render()]
    for b in bounds:
        text.append(f"SH^{b.degree}: " + (f"{b.upper}" if b.exact else f"[{b.lower}, {b.upper}]"))
    return data, "\n".join(text)


def load_algebra(source: str, d: int) -> trivext.QuiverAlgebra:
    if source == "cusp":
        return trivext.cusp_algebra()
    if source.startswith("tensor:"):
        try:
            lengths = [int(x) for x in source[len("tensor:"):].split(",")]
        except ValueError as exc:
            raise InputError(f"bad tensor lengths in {source!r}") from exc
        return trivext.trivial_extension(trivext.tensor_A_quiver_algebra(lengths), d)
    raise InputError(f"unknown algebra {source!r}; use 'cusp' or 'tensor:a,b,...'")


def cmd_algebra_hh(A: trivext.QuiverAlgebra, p_max: int = 2, s_min: int = -8, r_max: int = 12) -> Tuple[dict, str]:
    table = trivext.hochschild_algebra(A, p_max, s_min, r_max)
    _, eu = trivext.euler_derivation(A)
    neg = {p: sum(v for (pp, s), v in table.items() if pp == p and s < 0) for p in range(p_max + 1)}
    data = {"dim": A.dim, "p_max": p_max, "s_min": s_min,
            "cells": [{"p": p, "s": s, "dim": v} for (p, s), v in sorted(table.items()) if v],
            "negative_totals": {str(p): v for p, v in neg.items()}, "euler": eu.to_json()}
    text = [f"algebra of dimension {A.dim}, s >= {s_min}"]
    for p in range(p_max + 1):
        cells = ", ".join(f"s={s}: {v}" for (pp, s), v in sorted(table.items()) if pp == p and v)
        text.append(f"HH^{p}: {cells or '0'}   (s < 0 total {neg[p]})")
    text.append(f"Euler derivation: cocycle {eu.cocycle}, nontrivial {eu.nontrivial}")
    return data, "\n".join(text)


_MIRRORS = {
    "fermat": lambda n: ([n] * n, n - 1),
    "doublecover": lambda n: ([1] + [2 * n - 1] * (n - 1), n - 1),
}
MAX_MIRROR_DIM = 2000


def cmd_report(family: str, n: int, t_max: int = 5, strict: bool = False, jobs: int = 1) -> Tuple[dict, str]:
    if family not in _MIRRORS:
        raise InputError(f"report supports {sorted(_MIRRORS)}, got {family!r}")
    case = catalog.by_name(f"{family}{n}")
    hh_data, hh_text = cmd_hh(case, t_max, "cone", strict, jobs)
    un_data, un_text = cmd_unfolding(case)
    strata = specseq.fermat_strata(n) if family == "fermat" else specseq.doublecover_strata(n)
    ss_data, ss_text = cmd_specseq(strata)
    bounds = [specseq.DegreeBound(b["degree"], b["lower"], b["upper"]) for b in ss_data["bounds"]]
    lengths, d = _MIRRORS[family](n)
    A0 = trivext.tensor_A_quiver_algebra(lengths)
    alg: Dict[Tuple[int, int], int] = {}
    if 2 * A0.dim <= MAX_MIRROR_DIM:
        A = trivext.trivial_extension(A0, d)
        H = trivext.RelativeHochschild(A, r_max=4)
        alg = {(p, 0): H.hh_dim(p, 0) for p in (0, 1)}
    cert = specseq.formality_obstruction_report(bounds, alg)
    data = {"name": case.name, "hh": hh_data, "unfolding": un_data, "specseq": ss_data,
            "mirror_algebra": {"lengths": lengths, "d": d, "dim": 2 * A0.dim,
                               "hh": [{"p": p, "s": s, "dim": v} for (p, s), v in sorted(alg.items())]},
            "certificate": cert.to_json()}
    text = "\n\n".join([hh_text, un_text, ss_text,
                        f"mirror trivial extension of A{lengths} (degree {d}), dim {2 * A0.dim}: "
                        + (f"HH^1_0 = {alg.get((1, 0))}" if alg else "too large, skipped"),
                        f"certificate: {cert.verdict} ({cert.reason})"])
    return data, text


# ---------------------------------------------------------------------------
# golden corpus
# ---------------------------------------------------------------------------

def run_golden(directory: str, update: bool = False) -> List[str]:
    """Re-run every ``*.json`` golden file ({"argv", "exit", "output"}); return the names that differ."""
    bad = []
    for fname in sorted(os.listdir(directory)):
        if not fname.endswith(".json"):
            continue
        path = os.path.join(directory, fname)
        entry = _load_json(path)
        buf = io.StringIO()
        with redirect_stdout(buf):
            code = main(entry["argv"])
        if update:
            entry["exit"], entry["output"] = code, buf.getvalue()
            with open(path, "w") as fh:
                json.dump(entry, fh, indent=2)
                fh.write("\n")
        elif code != entry["exit"] or buf.getvalue() != entry["output"]:
            bad.append(fname)
    return bad


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="hhmf", description="Graded invariants of weighted homogeneous singularities.")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--format", choices=["json", "table"], default="table")
        p.add_argument("--strict", action="store_true", help="run the degree-convention self-test first")
        p.add_argument("--jobs", type=int, default=1)

    p = sub.add_parser("analyze", help="weights, Milnor number, symmetry group, sectors")
    p.add_argument("poly")
    p.add_argument("--group")
    common(p)

    p = sub.add_parser("hh", help="Hochschild cohomology table")
    p.add_argument("poly")
    p.add_argument("--group")
    p.add_argument("--t-max", type=int, default=4)
    p.add_argument("--mode", choices=["cone", "general", "both"], default="general")
    common(p)

    p = sub.add_parser("unfolding", help="equivariant positive unfolding parameters")
    p.add_argument("poly")
    p.add_argument("--group")
    p.add_argument("--assign", action="append", default=[], metavar="NAME=VALUE")
    common(p)

    p = sub.add_parser("specseq", help="E1 page and degree bounds")
    p.add_argument("strata", help="'fermat', 'doublecover' or a strata JSON file")
    p.add_argument("--n", type=int)
    p.add_argument("--p-min", type=int)
    p.add_argument("--n-max", type=int, default=6)
    common(p)

    p = sub.add_parser("algebra-hh", help="graded Hochschild cohomology of a quiver algebra")
    p.add_argument("algebra", help="'cusp' or 'tensor:a,b,...' (trivial extension)")
    p.add_argument("--d", type=int, default=2, help="degree of the dual in the trivial extension")
    p.add_argument("--p-max", type=int, default=2)
    p.add_argument("--s-min", type=int, default=-8)
    common(p)

    p = sub.add_parser("report", help="HH, unfolding, spectral sequence and formality certificate")
    p.add_argument("family", choices=sorted(_MIRRORS))
    p.add_argument("n", type=int)
    p.add_argument("--t-max", type=int, default=5)
    common(p)

    p = sub.add_parser("golden", help="regenerate and compare a golden corpus directory")
    p.add_argument("directory")
    p.add_argument("--update", action="store_true")
    return ap


def _dispatch(args) -> Tuple[dict, str]:
    c = args.command
    if c == "analyze":
        return cmd_analyze(load_case(args.poly, args.group))
    if c == "hh":
        if args.t_max < 0:
            raise InputError("--t-max must be >= 0")
        return cmd_hh(load_case(args.poly, args.group), args.t_max, args.mode, args.strict, args.jobs)
    if c == "unfolding":
        return cmd_unfolding(load_case(args.poly, args.group), args.assign)
    if c == "specseq":
        return cmd_specseq(load_strata(args.strata, args.n), args.n_max, args.p_min)
    if c == "algebra-hh":
        return cmd_algebra_hh(load_algebra(args.algebra, args.d), args.p_max, args.s_min)
    if c == "report":
        return cmd_report(args.family, args.n, args.t_max, args.strict, args.jobs)
    raise InputError(f"unknown command {c}")


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.command == "golden":
        try:
            bad = run_golden(args.directory, args.update)
        except InputError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_INPUT
        for name in bad:
            print(f"MISMATCH {name}")
        return EXIT_CONSISTENCY if bad else EXIT_OK
    if getattr(args, "jobs", 1) < 1:
        print("error: --jobs must be >= 1", file=sys.stderr)
        return EXIT_INPUT
    try:
        if args.strict:
            koszul.calibrate()
        data, text = _dispatch(args)
    except (InputError, wpoly.WPolyError, symmetry.SymmetryError, specseq.SpecSeqError,
            trivext.TrivExtError, HHError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (ConsistencyError, koszul.DegreeConventionUnvalidated, koszul.KoszulError) as exc:
        print(f"consistency failure: {exc}", file=sys.stderr)
        return EXIT_CONSISTENCY
    if args.format == "json":
        print(json.dumps(data, indent=2))
    else:
        print(text)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
