"""The ``detkit`` command line."""

from __future__ import annotations

import argparse
import json
import sys

from . import serialize as ser
from .poly import MonomialOrder, Polynomial, Ring, parse_poly, poly_to_json
from .suites import CLAIMS, SUITES, FieldConfig, UnknownSuiteError, run_suite


class UsageError(ValueError):
    pass


# -- shared helpers ---------------------------------------------------------------------

def _order(args, ring: Ring | None = None) -> MonomialOrder | None:
    spec = getattr(args, "order", None)
    if not spec:
        return None
    kind, _, names = spec.partition(":")
    if kind != "revlex":
        raise UsageError(f"unsupported order {kind!r}; only revlex:<vars> is available")
    names = [n for n in names.split(",") if n] if names else None
    if ring is not None and names is not None and sorted(names) != sorted(ring.names):
        raise UsageError("the order must list every ring variable exactly once")
    return MonomialOrder(names)


def _matrix(args):
    if not getattr(args, "matrix", None):
        raise UsageError("a --matrix FILE is required")
    _, M = ser.load(ser.read_json(args.matrix), "matrix", args.fc.p)
    return M


def _ideal(args) -> list[Polynomial]:
    if getattr(args, "ideal", None):
        _, gens = ser.load(ser.read_json(args.ideal), "ideal", args.fc.p)
        return gens
    if getattr(args, "gens", None) and getattr(args, "vars", None):
        R = Ring(args.vars.split(","), args.fc.p)
        return [parse_poly(R, g) for g in args.gens]
    raise UsageError("give --ideal FILE or --vars with --gens")


def _poly_in(ring: Ring, text: str) -> Polynomial:
    return parse_poly(ring, text)


def _records(pairs) -> list[dict]:
    """[(claim, ok, witness)] -> report array."""
    out = []
    for claim, ok, witness in pairs:
        rec = {"claim": claim, "status": "pass" if ok else "fail"}
        if witness is not None:
            rec["witness"] = witness
        out.append(rec)
    return out


def _emit(args, payload, text: str | None = None) -> None:
    if args.json or text is None:
        body = ser.dumps(payload)
    else:
        body = text
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(body + "\n")
    else:
        print(body)


def _report_exit(records) -> int:
    return 0 if all(r["status"] != "fail" for r in records) else 1


# -- matrix commands ---------------------------------------------------------------------

def cmd_det(args) -> int:
    from .matrix import determinant
    d = determinant(_matrix(args))
    _emit(args, poly_to_json(d), str(d))
    return 0


def cmd_adj(args) -> int:
    from .matrix import adjugate, matrix_to_json
    A = adjugate(_matrix(args))
    _emit(args, matrix_to_json(A), str(A))
    return 0


def cmd_minors(args) -> int:
    from .matrix import minors
    M = _matrix(args)
    out = [{"rows": list(r), "cols": list(c), "minor": poly_to_json(v)} for r, c, v in minors(M, args.t)]
    text = "\n".join(f"{tuple(o['rows'])} {tuple(o['cols'])}: {v}"
                     for o, (_, _, v) in zip(out, minors(M, args.t)))
    _emit(args, out, text)
    return 0


def cmd_rank(args) -> int:
    from .matrix import rank
    cert = rank(_matrix(args), seed=args.seed)
    payload = {"rank": cert.rank, "rows": list(cert.rows), "cols": list(cert.cols),
               "lower": cert.lower, "upper": cert.upper}
    _emit(args, payload, str(cert.rank))
    return 0


# -- gen ------------------------------------------------------------------------------------

GEN_ARITY = {"generic": (1, 2), "subhankel": (1, 1), "hollow": (1, 1), "banded": (3, 3),
             "ladder": (2, 2), "ladder-tilde": (2, 2), "gor-ladder-phi": (1, 1),
             "koszul": (0, 0), "hb": (3, 3), "sparse-example": (0, 0)}


def generate(name: str, params, p: int | None = None, seed: int = 1, polys=None, vars_=None):
    from . import catalog as cat
    if name not in GEN_ARITY:
        raise UsageError(f"unknown generator {name!r}; known: {', '.join(sorted(GEN_ARITY))}")
    lo, hi = GEN_ARITY[name]
    if not lo <= len(params) <= hi:
        raise UsageError(f"{name} takes {lo}..{hi} integer parameters")
    if name == "generic":
        return cat.generic_matrix(*params, p=p)
    if name == "subhankel":
        return cat.sub_hankel(params[0], p)
    if name == "hollow":
        return cat.hollow_symmetric(params[0], p)
    if name == "banded":
        return cat.banded_section(*params, p=p)
    if name in ("ladder", "ladder-tilde"):
        m, k = params
        lad = cat.upper_ladder(m, k, p=p) if name == "ladder" else cat.lower_ladder(m, k, p=p)
        if isinstance(lad, cat.EmptyLadder):
            raise UsageError(f"the ladder ({m}, {k}) is empty")
        return lad.matrix
    if name == "gor-ladder-phi":
        return cat.gorenstein_ladder_phi(params[0], p)
    if name == "koszul":
        R = Ring((vars_ or "x,y,z").split(","), p)
        gs = [parse_poly(R, g) for g in (polys or R.names[:3])]
        if len(gs) != 3:
            raise UsageError("koszul needs three polynomials")
        return cat.koszul_matrix(*gs)
    if name == "hb":
        from .homology import random_block_hb
        d, n, a = params
        return random_block_hb(d, n, a, seed, p).phi
    return cat.sparse_cofactor_example(p)


def cmd_gen(args) -> int:
    from .matrix import matrix_to_json
    M = generate(args.name, args.params, args.fc.p, args.seed, args.polys, args.vars)
    _emit(args, matrix_to_json(M), str(M))
    return 0


# -- Groebner commands --------------------------------------------------------------------

def cmd_gb(args) -> int:
    from .groebner import Ideal, buchberger
    gens = _ideal(args)
    order = _order(args, gens[0].ring)
    G = buchberger(Ideal.of(gens, order), order, p=args.fc.p)
    _emit(args, ser.ideal_to_json(G.basis or [gens[0].ring.zero()], gens[0].ring),
          "\n".join(str(g) for g in G.basis))
    return 0


def cmd_height(args) -> int:
    from .groebner import ideal_height
    gens = _ideal(args)
    h = ideal_height(gens, _order(args, gens[0].ring), p=args.fc.p)
    h = "inf" if h == float("inf") else h
    _emit(args, {"height": h}, str(h))
    return 0


def cmd_member(args) -> int:
    from .groebner import member
    gens = _ideal(args)
    f = _poly_in(gens[0].ring, args.poly)
    ok = member(f, gens, _order(args, gens[0].ring))
    _emit(args, {"member": ok}, "yes" if ok else "no")
    return 0 if ok else 1


# -- maps ----------------------------------------------------------------------------------

def _form(args) -> Polynomial:
    if not (args.poly and args.vars):
        raise UsageError("give --poly with --vars")
    return parse_poly(Ring(args.vars.split(","), args.fc.p), args.poly)


def _substitution_json(sigma) -> dict:
    return {"source": list(sigma.source.names), "target": list(sigma.target.names),
            "images": [poly_to_json(g) for g in sigma.images], "kind": sigma.label}


def cmd_map(args) -> int:
    from . import maps
    kind = args.kind
    if kind == "cofactor":
        sigma = maps.cofactor_map(_matrix(args))
        _emit(args, _substitution_json(sigma))
        return 0
    if kind == "polar":
        sigma = maps.polar_map(_form(args))
        _emit(args, _substitution_json(sigma))
        return 0
    if kind == "dual":
        f = _form(args)
        rk, wit = maps.rank_mod_hessian(f, seed=args.seed)
        recs = [{"claim": "rank of the Hessian modulo f", "status": "pass", "witness": rk},
                {"claim": "dimension of the dual variety", "status": "pass", "witness": rk - 2}]
        _emit(args, recs)
        return 0
    if kind == "invfactors":
        if args.matrix:
            L = _matrix(args)
        else:
            L = maps.random_linear_matrix(4, 3, 3, args.seed, p=args.fc.p)
        try:
            data = maps.inversion_factors(L)
        except maps.GenericityError as exc:
            _emit(args, _records([("genericity preconditions", False, str(exc))]))
            return 1
        from .matrix import matrix_to_json
        from .suites import inversion_complex
        payload = {"factors": [poly_to_json(D) for D in data.factors],
                   "psi": matrix_to_json(data.psi),
                   "complex": ser.complex_to_json(inversion_complex(data))}
        _emit(args, payload, "\n".join(f"D_{k + 1} = {D}" for k, D in enumerate(data.factors)))
        return 0
    if kind == "grassmann":
        if len(args.params) != 2:
            raise UsageError("grassmann takes N M")
        rep = maps.verify_rank(*args.params, seed=args.seed)
        recs = _records([(f"rank Theta({rep.n},{rep.m}) = {rep.expected}", rep.ok,
                          {"rank": rep.rank, "kernel_zero": rep.kernel_zero,
                           "kernel_rank": rep.kernel_rank})])
        _emit(args, recs)
        return _report_exit(recs)
    if kind == "check-kernel":
        if args.matrix:
            sigma = maps.cofactor_map(_matrix(args))
        else:
            sigma = maps.polar_map(_form(args))
        if not args.candidates:
            raise UsageError("list candidate kernel elements with --candidate")
        pairs = []
        for text in args.candidates:
            res = maps.kernel_member(parse_poly(sigma.source, text), sigma)
            pairs.append((text, res.in_kernel, res.status.value))
        recs = _records(pairs)
        _emit(args, recs)
        return _report_exit(recs)
    raise UsageError(f"unknown map command {kind!r}")


# -- complexes -----------------------------------------------------------------------------

def cmd_complex(args) -> int:
    from . import homology as hom
    kind = args.kind
    p = args.fc.p
    report: dict = {}
    if kind == "br":
        if args.matrix:
            psi = _matrix(args)
        else:
            from .suites import seeded_br_matrix
            if len(args.params) != 2:
                raise UsageError("br takes S R (or --matrix FILE)")
            s, r = args.params
            psi = seeded_br_matrix(s, r, args.seed, p)
        C = hom.buchsbaum_rim(psi)
        report["betti_expected"] = hom.br_betti(psi.cols, psi.rows)
    elif kind == "hb":
        if args.matrix:
            phi = _matrix(args)
        else:
            from .rees import example_deg4, example_deg4_bis
            phi = example_deg4_bis() if args.example == "deg4-bis" else example_deg4()
        hb = hom.hilbert_burch(phi, p)
        C = hb.complex
        report["height"] = hb.height
    elif kind == "gor-ladder":
        if len(args.params) != 1:
            raise UsageError("gor-ladder takes M")
        rep = hom.gorenstein_ladder_suite(args.params[0], p=p, seed=args.seed)
        C = rep.complex
        report.update(pfaffians_equal=rep.pfaffians_equal_ladder, grade_delta=rep.grade_delta,
                      grade_phi_at_least=rep.grade_phi, ok=rep.ok)
    elif kind == "subhankel":
        if len(args.params) != 1:
            raise UsageError("subhankel takes M")
        m = args.params[0]
        rep = hom.sub_hankel_suite(m, p=p, seed=args.seed)
        C = rep.complex
        report.update(linear_rank=rep.linear_rank, height_J=rep.height_J, delta11=str(rep.delta11),
                      minimal=rep.minimal, ok=rep.ok)
    elif kind == "saturation":
        from .suites import seeded_block_hb
        hb = seeded_block_hb(args.seed, p)
        rep = hom.saturation_reduction_suite(hb, p=p)
        res = hom.fixed_minor_ideal(hb, p)
        C = res.quotient
        report.update(branch=rep.branch, height=rep.height, power_equal=rep.power_equal,
                      containment=rep.containment, determinants_zero=rep.determinants_zero,
                      ok=rep.ok)
    else:
        raise UsageError(f"unknown complex {kind!r}")
    be = hom.be_acyclicity(C, seed=args.seed)
    report.update(is_complex=hom.is_complex(C), be=be.ok, ranks=C.ranks(),
                  display=str(C))
    payload = {"complex": ser.complex_to_json(C), "report": _plain(report)}
    text = str(C) + "\n" + "\n".join(f"{k}: {v}" for k, v in payload["report"].items()
                                     if k != "display")
    _emit(args, payload, text)
    ok = report["is_complex"] and report["be"] and report.get("ok", True)
    return 0 if ok else 1


def _plain(obj):
    from .suites import _jsonable
    return _jsonable(obj)


# -- Rees ------------------------------------------------------------------------------------

def _rees_setup(args):
    from .matrix import signed_maximal_minors
    from .rees import TVARS, example_deg4, example_deg4_bis, sym_presentation
    if args.matrix:
        phi = _matrix(args)
        tv = tuple(f"T_{k + 1}" for k in range(phi.rows))
    else:
        phi = example_deg4_bis() if args.example == "deg4-bis" else example_deg4()
        tv = TVARS
    gens = signed_maximal_minors(phi)
    return phi, gens, sym_presentation(phi, gens, tv)


def cmd_rees(args) -> int:
    from .rees import BigradedForm, rees_member
    kind = args.kind
    if kind == "present":
        _, _, forms = _rees_setup(args)
        _emit(args, [f.to_json() for f in forms], "\n".join(f"{f.bidegree}: {f}" for f in forms))
        return 0
    if kind == "member":
        _, gens, forms = _rees_setup(args)
        S = forms[0].ring
        if args.form:
            _, h = ser.load(ser.read_json(args.form), "form", args.fc.p)
        elif args.poly:
            h = BigradedForm.of(parse_poly(S, args.poly), forms[0].tvars)
        else:
            raise UsageError("give --poly or --form FILE")
        ok = rees_member(h, gens)
        recs = _records([(str(h), ok, {"bidegree": list(h.bidegree)})])
        _emit(args, recs)
        return _report_exit(recs)
    if kind == "sylvester":
        from .rees import deg4_bis_report, deg4_report
        if args.matrix:
            raise UsageError("sylvester runs on the built-in examples (--example)")
        rep = deg4_bis_report() if args.example == "deg4-bis" else deg4_report()
        payload = {"datum": rep.datum.to_json(), "forms": [f.to_json() for f in rep.forms],
                   "members": rep.members, "checks": rep.checks}
        text = f"psi = {rep.datum.psi}\ndet = {rep.datum.det}"
        _emit(args, payload, text)
        return 0 if rep.ok else 1
    raise UsageError(f"unknown rees command {kind!r}")


# -- suites and I/O ----------------------------------------------------------------------------

def cmd_suite(args) -> int:
    if args.verify_all:
        name = "all"
    elif args.name:
        name = args.name
    else:
        raise UsageError(f"name a suite or pass --verify-all; known: {', '.join(sorted(SUITES))}")
    skip = set(args.skip.split(",")) if args.skip else set()
    unknown = skip - set(CLAIMS)
    if unknown:
        raise UsageError(f"unknown claim ids {sorted(unknown)}")
    rep = run_suite(name, args.seed, args.fc, confirm_qq=args.confirm_qq,
                    threads=args.threads, skip=skip)
    lines = [f"{c.id} {c.status.upper():7s} {c.runtime_ms:7d} ms  [{c.field}] {c.anchor}"
             for c in rep.claims]
    lines.append(f"suite {rep.suite}: {'PASS' if rep.ok else 'FAIL'} (seed {rep.seed})")
    _emit(args, rep.to_json(timings=not args.no_timings), "\n".join(lines))
    return rep.exit_code


def cmd_roundtrip(args) -> int:
    obj = ser.read_json(args.file)
    out = ser.io_roundtrip(obj, args.kind, args.fc.p)
    _emit(args, out, ser.dumps(out))
    return 0


# -- parser ----------------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", default="fp", help="qq or fp:<prime> (default fp:2147483647)")
    common.add_argument("--seed", type=int, default=1)
    common.add_argument("--json", action="store_true", help="emit JSON instead of text")
    common.add_argument("--out", help="write output to FILE")
    common.add_argument("--order", help="revlex:<comma separated variables>")

    ap = argparse.ArgumentParser(prog="detkit", description="Exact determinantal algebra toolkit.")
    sub = ap.add_subparsers(dest="command", required=True)

    for name, fn, extra in (("det", cmd_det, None), ("adj", cmd_adj, None),
                            ("minors", cmd_minors, "t"), ("rank", cmd_rank, None)):
        sp = sub.add_parser(name, parents=[common])
        sp.add_argument("matrix", help="JSON matrix file, - for stdin")
        if extra:
            sp.add_argument("-t", type=int, required=True, help="minor size")
        sp.set_defaults(func=fn)

    sp = sub.add_parser("gen", parents=[common], help="emit a catalog matrix")
    sp.add_argument("name", choices=sorted(GEN_ARITY))
    sp.add_argument("params", type=int, nargs="*")
    sp.add_argument("--polys", nargs=3, help="three polynomials for koszul")
    sp.add_argument("--vars", help="ring variables for koszul")
    sp.set_defaults(func=cmd_gen)

    for name, fn in (("gb", cmd_gb), ("height", cmd_height), ("member", cmd_member)):
        sp = sub.add_parser(name, parents=[common])
        sp.add_argument("--ideal", help="JSON ideal file")
        sp.add_argument("--vars", help="comma separated variables")
        sp.add_argument("--gens", nargs="+", help="generators as text")
        if name == "member":
            sp.add_argument("--poly", required=True)
        sp.set_defaults(func=fn)

    sp = sub.add_parser("map", parents=[common], help="rational maps and their certificates")
    sp.add_argument("kind", choices=["cofactor", "polar", "dual", "invfactors", "grassmann",
                                     "check-kernel"])
    sp.add_argument("params", type=int, nargs="*")
    sp.add_argument("--matrix")
    sp.add_argument("--poly")
    sp.add_argument("--vars")
    sp.add_argument("--candidate", dest="candidates", action="append")
    sp.set_defaults(func=cmd_map)

    sp = sub.add_parser("complex", parents=[common], help="graded free complexes")
    sp.add_argument("kind", choices=["br", "hb", "gor-ladder", "subhankel", "saturation"])
    sp.add_argument("params", type=int, nargs="*")
    sp.add_argument("--matrix")
    sp.add_argument("--example", choices=["deg4", "deg4-bis"], default="deg4")
    sp.set_defaults(func=cmd_complex)

    sp = sub.add_parser("rees", parents=[common], help="Rees algebra presentations")
    sp.add_argument("kind", choices=["present", "member", "sylvester"])
    sp.add_argument("--matrix")
    sp.add_argument("--example", choices=["deg4", "deg4-bis"], default="deg4")
    sp.add_argument("--poly")
    sp.add_argument("--form")
    sp.set_defaults(func=cmd_rees)

    sp = sub.add_parser("suite", parents=[common], help="run named verification suites")
    sp.add_argument("name", nargs="?", help=", ".join(sorted(SUITES)))
    sp.add_argument("--verify-all", action="store_true")
    sp.add_argument("--confirm-qq", action="store_true",
                    help="rerun every modular claim over the rationals")
    sp.add_argument("--skip", help="comma separated claim ids")
    sp.add_argument("--threads", type=int)
    sp.add_argument("--no-timings", action="store_true")
    sp.set_defaults(func=cmd_suite)

    sp = sub.add_parser("roundtrip", parents=[common], help="validate and reprint a JSON artifact")
    sp.add_argument("file")
    sp.add_argument("--kind", choices=list(ser.KINDS))
    sp.set_defaults(func=cmd_roundtrip)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        args.fc = FieldConfig.parse(args.field)
        return args.func(args)
    except (UsageError, UnknownSuiteError, ser.SchemaViolation) as exc:
        msg = exc.args[0] if isinstance(exc, UnknownSuiteError) else str(exc)
        print(f"detkit: error: {msg}", file=sys.stderr)
        return 2
    except (ValueError, json.JSONDecodeError, OSError) as exc:
        print(f"detkit: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
