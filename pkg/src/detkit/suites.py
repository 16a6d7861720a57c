"""Named verification suites.

Every claim is a function ``(seed, p) -> (ok, witness)``; ``p`` is None for
exact rational arithmetic or a prime.  Claims that only make sense over the
rationals ignore ``p`` and report the field they actually used.
"""

from __future__ import annotations

import os
import random
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from math import comb
from typing import Callable

from gmpy2 import is_prime, mpq

from .poly import DEFAULT_PRIME, Ring, exact_div


# -- field configuration -----------------------------------------------------------

@dataclass(frozen=True)
class FieldConfig:
    p: int | None = DEFAULT_PRIME

    @classmethod
    def parse(cls, text: str) -> "FieldConfig":
        t = text.strip().lower()
        if t in ("qq", "q"):
            return cls(None)
        if t == "fp":
            return cls(DEFAULT_PRIME)
        if t.startswith("fp:"):
            try:
                p = int(t[3:])
            except ValueError:
                raise ValueError(f"bad prime in field spec {text!r}") from None
            if not is_prime(p):
                raise ValueError(f"{p} is not a prime")
            return cls(p)
        raise ValueError(f"unknown field {text!r}; use qq or fp:<prime>")

    @property
    def label(self) -> str:
        return "qq" if self.p is None else f"fp:{self.p}"


QQ = FieldConfig(None)


# -- claims ----------------------------------------------------------------------------

def _random_constant_matrix(R: Ring, m: int, rng: random.Random, p: int | None):
    from .matrix import PolyMatrix
    if p is None:
        draw = lambda: R.const(mpq(rng.randint(-9, 9), rng.randint(1, 4)))
    else:
        draw = lambda: R.const(rng.randrange(p))
    return PolyMatrix(R, [[draw() for _ in range(m)] for _ in range(m)])


def c01_adjugate_laws(seed: int, p: int | None):
    from .matrix import adjugate, determinant, identity
    R = Ring(["x"], p)
    rng = random.Random(seed)
    bad = []
    for k in range(500):
        m = 2 + k % 4
        M = _random_constant_matrix(R, m, rng, p)
        A, d = adjugate(M), determinant(M)
        if M @ A != identity(R, m, d) or adjugate(A) != M.scale(d ** (m - 2)):
            bad.append(k)
    return not bad, {"matrices": 500, "failures": bad}


def adjugate_two_minor_cases(p: int | None = None):
    from .catalog import banded_section, generic_matrix
    cases = [(f"generic {m}", generic_matrix(m, p=p)) for m in range(2, 6)]
    for m in range(3, 6):
        for r in range(m - 1):
            for s in range(r, m - 1):
                cases.append((f"banded {m},{r},{s}", banded_section(m, r, s, p=p)))
    return cases


def c02_two_minors_divisible(seed: int, p: int | None):
    from .matrix import adjugate, determinant, minors
    bad, count = [], 0
    cases = adjugate_two_minor_cases(p)
    for name, L in cases:
        A, f = adjugate(L), determinant(L)
        for rows, cols, v in minors(A, 2):
            count += 1
            if exact_div(v, f) is None:
                bad.append((name, rows, cols))
    return not bad, {"matrices": len(cases), "minors": count, "failures": bad}


def c03_sparse_example(seed: int, p: int | None):
    from .catalog import SPARSE_EXAMPLE_PAIRS, generic_matrix, sparse_cofactor_example
    from .maps import KernelStatus, cofactor_map, image_minor_relations, kernel_member
    from .matrix import minors
    L = sparse_cofactor_example(p)
    sigma = cofactor_map(L)
    Y = generic_matrix(4, name="y", p=p)
    checked, bad = 0, []
    for rows, cols in SPARSE_EXAMPLE_PAIRS:
        sub = Y.submatrix([i - 1 for i in rows], [j - 1 for j in cols])
        two = [g for _, _, g in minors(sub, 2)]
        # the general relation recipe must produce exactly these minors
        if sorted(map(str, image_minor_relations(L, rows, cols))) != sorted(map(str, two)):
            bad.append((rows, cols, "relation recipe"))
        for g in two:
            checked += 1
            if kernel_member(g, sigma).status is not KernelStatus.ZERO:
                bad.append((rows, cols, str(g)))
    return not bad, {"blocks": len(SPARSE_EXAMPLE_PAIRS), "minors": checked, "failures": bad}


def c04_grassmann(seed: int, p: int | None):
    from .maps import verify_rank
    out = {}
    ok = True
    for n, m in ((4, 2), (5, 2), (5, 3)):
        rep = verify_rank(n, m, seed=seed)
        out[f"{n},{m}"] = {"rank": rep.rank, "expected": rep.expected, "kernel_zero": rep.kernel_zero}
        ok &= rep.ok
    return ok, out


def c05_gorenstein_ladder(seed: int, p: int | None):
    from .homology import gorenstein_ladder_suite
    out, ok = {}, True
    for m in (3, 4):
        rep = gorenstein_ladder_suite(m, p=p, seed=seed)
        out[str(m)] = {"pfaffians_equal": rep.pfaffians_equal_ladder, "grade_delta": rep.grade_delta,
                       "grade_phi_at_least": rep.grade_phi, "be": rep.be.ok}
        ok &= rep.ok
    return ok, out


def c06_hollow(seed: int, p: int | None):
    from .maps import homaloidal_certificate_hollow
    out, ok = {}, True
    for m in (3, 4):
        cert = homaloidal_certificate_hollow(m, symbolic=True, seed=seed)
        out[str(m)] = {"certified": cert.certified, "linear_rank": cert.linear_rank,
                       "reason": cert.reason}
        ok &= cert.certified
    return ok, out


def c07_sub_hankel(seed: int, p: int | None):
    from .homology import sub_hankel_suite
    out, ok = {}, True
    for m in (3, 4):
        rep = sub_hankel_suite(m, p=p, seed=seed)
        out[str(m)] = {"support": rep.support, "divisibility": rep.divisibility,
                       "quotient_heights": [str(h) for h in rep.quotient_heights],
                       "relations": rep.relations, "linear_rank": rep.linear_rank,
                       "delta11": str(rep.delta11), "delta11_sign": rep.delta11_sign,
                       "delta11_in_J": rep.delta11_in_J, "height_J": rep.height_J}
        ok &= rep.ok
    return ok, out


def inversion_complex(data):
    """0 <- R <- R(-(d(d-1)-1))^d <- R(-(d^2-1))^d <- R(-d^2) <- 0."""
    from .homology import FreeComplex, GradedFreeModule
    from .matrix import PolyMatrix
    R = data.L.ring
    d = R.nvars
    mods = [GradedFreeModule((0,)), GradedFreeModule.uniform(d, -(d * (d - 1) - 1)),
            GradedFreeModule.uniform(d, -(d * d - 1)), GradedFreeModule((-d * d,))]
    D = PolyMatrix(R, [list(data.factors)])
    x = PolyMatrix(R, [[v] for v in R.gens()])
    return FreeComplex(mods, [D, data.psi, x], ["D", "Psi", "x"])


def c08_inversion_factors(seed: int, p: int | None):
    from .groebner import ideal_height
    from .homology import be_acyclicity, is_complex
    from .maps import GenericityError, inversion_factors, random_linear_matrix
    good, bad, skipped = [], [], {}
    for k in range(5):
        s = seed * 100 + k
        L = random_linear_matrix(4, 3, 3, s, p=p)
        try:
            data = inversion_factors(L)
        except GenericityError as exc:
            skipped[s] = str(exc)
            continue
        C = inversion_complex(data)
        h = ideal_height(data.factors, p=p)
        be = be_acyclicity(C, seed=s, p=p if p is not None else DEFAULT_PRIME)
        (good if is_complex(C) and be.ok and h == 2 else bad).append(s)
    ok = not bad and len(good) >= 3
    return ok, {"passed": good, "failed": bad, "precondition_failures": skipped}


BANDED_HEIGHT_CASES = ((3, 0, 0), (3, 1, 1), (4, 1, 2))


def c09_banded_height(seed: int, p: int | None):
    from .catalog import banded_section
    from .groebner import Ideal, buchberger, initial_ideal, monomial_height, multiplicity
    from .matrix import minor_ideal_gens
    out, ok = {}, True
    for m, r, s in BANDED_HEIGHT_CASES:
        G = buchberger(Ideal.of(minor_ideal_gens(banded_section(m, r, s, p=p), m - 1)), p=p)
        h, e = monomial_height(initial_ideal(G)), multiplicity(G)
        want = m * m * (m + 1) * (m - 1) // 12
        out[f"{m},{r},{s}"] = {"height": h, "multiplicity": e, "expected_multiplicity": want}
        ok &= h == 4 and e == want
    return ok, out


def c10_cofactor_kernel(seed: int, p: int | None):
    from .maps import cofactor_image_ideal_check
    out, ok = {}, True
    for m, r, s in ((4, 1, 1), (4, 1, 2), (5, 2, 2)):
        rep = cofactor_image_ideal_check(m, r, s, with_height=False, p=p)
        out[f"{m},{r},{s}"] = {"generators": rep.checked, "failures": [str(f) for f in rep.failures]}
        ok &= rep.ok and rep.checked > 0
    return ok, out


def c11_ladder_height(seed: int, p: int | None):
    from .catalog import lower_ladder, upper_ladder
    from .groebner import ideal_height
    out, ok = {}, True
    for m, r in ((4, 1), (5, 2)):
        gens = upper_ladder(m, r, p=p).polys() + lower_ladder(m, r, p=p).polys()
        h = ideal_height(gens, p=p)
        out[f"{m},{r}"] = {"height": h, "expected": 2 * comb(r + 1, 2)}
        ok &= h == 2 * comb(r + 1, 2)
    return ok, out


def c12_hessian(seed: int, p: int | None):
    from .catalog import banded_section
    from .maps import banded_hessian_relation, hessian_determinant_verdict, rank_mod_hessian
    from .matrix import determinant
    f = determinant(banded_section(4, 0, 1))
    verdict = hessian_determinant_verdict(f, relation=banded_hessian_relation(4, 0, 1), seed=seed)
    out = {"det_hessian_4_0_1_zero": verdict.zero, "method": verdict.method}
    ok = verdict.zero
    for m in (3, 4):
        g = determinant(banded_section(m, m - 2, m - 2))
        rk, _ = rank_mod_hessian(g, seed=seed)
        out[f"rank_mod_{m}"] = rk
        ok &= rk == 2 * m
    return ok, out


BR_CASES = ((3, 1), (4, 2), (5, 3))


def seeded_br_matrix(s: int, r: int, seed: int, p: int | None = None, attempts: int = 6):
    """Seeded linear r×s matrix whose maximal minors have the expected height."""
    from .groebner import ideal_height
    from .maps import random_linear_matrix
    from .matrix import minor_ideal_gens
    for k in range(attempts):
        psi = random_linear_matrix(r, s, s - r + 1, seed * 31 + k, bound=9, p=p)
        if ideal_height(minor_ideal_gens(psi, r), p=p) == s - r + 1:
            return psi
    raise ArithmeticError(f"no seeded {r}x{s} matrix of maximal height")


def c13_buchsbaum_rim(seed: int, p: int | None):
    from .homology import be_acyclicity, br_betti, buchsbaum_rim, is_complex, t_eta_identity
    out, ok = {}, True
    for s, r in BR_CASES:
        psi = seeded_br_matrix(s, r, seed, p)
        C = buchsbaum_rim(psi)
        betti = [m.rank for m in C.modules[2:]]
        be = be_acyclicity(C, seed=seed, p=p if p is not None else DEFAULT_PRIME)
        rec = {"betti": betti, "expected": br_betti(s, r), "complex": is_complex(C), "be": be.ok}
        good = betti == br_betti(s, r) and rec["complex"] and be.ok
        if r == s - 2:
            rec["t_eta"] = t_eta_identity(psi)
            good &= rec["t_eta"]
        out[f"{s},{r}"] = rec
        ok &= good
    return ok, out


def seeded_block_hb(seed: int, p: int | None = None, attempts: int = 6):
    from .homology import random_block_hb
    last = None
    for k in range(attempts):
        try:
            return random_block_hb(3, 5, 3, seed * 17 + k, p=p)
        except (ValueError, ArithmeticError) as exc:
            last = exc
    raise ArithmeticError(f"no valid seeded block instance: {last}")


def c14_saturation(seed: int, p: int | None):
    from .homology import saturation_reduction_suite
    rep = saturation_reduction_suite(seeded_block_hb(seed, p), p=p)
    return rep.ok, {"branch": rep.branch, "height": rep.height, "power_equal": rep.power_equal,
                    "containment": rep.containment, "N": rep.monomial_count,
                    "determinants_zero": rep.determinants_zero}


def c15_rees(seed: int, p: int | None):
    from .rees import deg4_bis_report, deg4_report
    out, ok = {}, True
    for rep in (deg4_report(), deg4_bis_report()):
        out[rep.name] = {**rep.checks, **{f"member_{k}": v for k, v in rep.members.items()},
                         "det": str(rep.datum.det)}
        ok &= rep.ok
    return ok, out


def anti_diagonal_exponents(R: Ring, rows, cols, name: str = "x"):
    t = len(rows)
    e = [0] * R.nvars
    for k in range(t):
        e[R.vars.index[f"{name}_{rows[k]}_{cols[t - 1 - k]}"]] += 1
    return R.pack(e)


def c16_anti_diagonal(seed: int, p: int | None):
    from .catalog import generic_matrix
    from .groebner import is_groebner
    from .matrix import minors
    bad, count = [], 0
    for m in range(1, 5):
        for n in range(1, 5):
            X = generic_matrix(m, n, p=p)
            R = X.ring
            for t in range(1, min(m, n, 3) + 1):
                ms = minors(X, t)
                count += len(ms)
                if any(v.leading()[0] != anti_diagonal_exponents(R, rows, cols)
                       for rows, cols, v in ms):
                    bad.append((m, n, t, "leading term"))
                if not is_groebner([v for _, _, v in ms]):
                    bad.append((m, n, t, "not a Groebner basis"))
    return not bad, {"minors": count, "failures": bad}


# -- registry ----------------------------------------------------------------------------

@dataclass(frozen=True)
class Claim:
    id: str
    anchor: str
    run: Callable
    exact_only: bool = False     # ignores the prime and always works over the rationals


CLAIMS = {c.id: c for c in (
    Claim("c01", "adjugate laws on random constant matrices", c01_adjugate_laws),
    Claim("c02", "2-minors of the adjugate are divisible by the determinant", c02_two_minors_divisible),
    Claim("c03", "sparse 4x4 example: block 2-minors lie in the cofactor kernel", c03_sparse_example),
    Claim("c04", "rank of the Grassmann Jacobian", c04_grassmann, exact_only=True),
    Claim("c05", "Gorenstein ladder: Pfaffians and resolution", c05_gorenstein_ladder),
    Claim("c06", "hollow symmetric determinant is homaloidal", c06_hollow, exact_only=True),
    Claim("c07", "sub-Hankel determinant: polar syzygies and resolution", c07_sub_hankel),
    Claim("c08", "inversion factors of random 4x3 linear matrices", c08_inversion_factors),
    Claim("c09", "banded sections: height and multiplicity of submaximal minors", c09_banded_height),
    Claim("c10", "ladder minors vanish under the cofactor map", c10_cofactor_kernel),
    Claim("c11", "height of the two-ladder sum in the balanced case", c11_ladder_height),
    Claim("c12", "Hessian dichotomy for banded determinants", c12_hessian, exact_only=True),
    Claim("c13", "Buchsbaum-Rim complexes of seeded linear matrices", c13_buchsbaum_rim),
    Claim("c14", "saturation and reduction for a block Hilbert-Burch matrix", c14_saturation),
    Claim("c15", "Sylvester forms of the two degree-four examples", c15_rees, exact_only=True),
    Claim("c16", "anti-diagonal leading terms of generic minors", c16_anti_diagonal),
)}

SUITES = {
    "adjugate": ("c01", "c02"),
    "sparse-example": ("c03",),
    "grassmann": ("c04",),
    "gorenstein-ladder": ("c05",),
    "hollow": ("c06",),
    "sub-hankel": ("c07",),
    "inversion-factors": ("c08",),
    "banded": ("c09",),
    "cofactor-kernel": ("c10",),
    "ladder-height": ("c11",),
    "hessian": ("c12",),
    "buchsbaum-rim": ("c13",),
    "saturation": ("c14",),
    "rees": ("c15",),
    "anti-diagonal": ("c16",),
}


class UnknownSuiteError(KeyError):
    pass


@dataclass
class ClaimResult:
    id: str
    anchor: str
    status: str
    field: str
    runtime_ms: int
    witness: object = None

    def to_json(self) -> dict:
        out = {"id": self.id, "anchor": self.anchor, "status": self.status,
               "field": self.field, "runtime_ms": self.runtime_ms}
        if self.witness is not None:
            out["witness"] = self.witness
        return out


@dataclass
class SuiteReport:
    suite: str
    seed: int
    field: str
    claims: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.status != "fail" for c in self.claims)

    @property
    def exit_code(self) -> int:
        return 0 if self.ok else 1

    def to_json(self, timings: bool = True) -> dict:
        claims = [c.to_json() for c in self.claims]
        if not timings:
            for c in claims:
                c.pop("runtime_ms")
        return {"suite": self.suite, "seed": self.seed, "field": self.field, "claims": claims}


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (bool, int, str)) or obj is None:
        return obj
    if isinstance(obj, float):
        return obj if obj != float("inf") else "inf"
    return str(obj)


def run_claim(claim: Claim, seed: int, fc: FieldConfig, confirm_qq: bool = False) -> ClaimResult:
    p = None if claim.exact_only else fc.p
    t0 = time.perf_counter()
    try:
        ok, witness = claim.run(seed, p)
        witness = _jsonable(witness)
    except Exception as exc:      # a crashing check is a failed claim, not a crashed suite
        ok, witness = False, {"error": f"{type(exc).__name__}: {exc}"}
    label = "qq" if p is None else fc.label
    if confirm_qq and p is not None:
        # the rational run is authoritative; the modular one stays as a witness
        ok_q, wq = claim.run(seed, None)
        witness = {"modular": witness, "rational": _jsonable(wq)}
        ok, label = ok_q, f"{label}+qq"
    ms = int((time.perf_counter() - t0) * 1000)
    return ClaimResult(claim.id, claim.anchor, "pass" if ok else "fail", label, ms, witness)


def default_threads() -> int:
    try:
        return max(1, int(os.environ.get("DETKIT_THREADS", "1")))
    except ValueError:
        return 1


def run_claims(ids, seed: int = 1, fc: FieldConfig = FieldConfig(), confirm_qq: bool = False,
               threads: int | None = None, skip=()) -> list[ClaimResult]:
    ids = sorted(ids)
    todo = [CLAIMS[i] for i in ids if i not in skip]
    threads = threads or default_threads()
    if threads > 1 and len(todo) > 1:
        with ThreadPoolExecutor(max_workers=threads) as ex:
            done = list(ex.map(lambda c: run_claim(c, seed, fc, confirm_qq), todo))
    else:
        done = [run_claim(c, seed, fc, confirm_qq) for c in todo]
    out = {r.id: r for r in done}
    for i in ids:
        if i in skip:
            out[i] = ClaimResult(i, CLAIMS[i].anchor, "skipped", fc.label, 0)
    return [out[i] for i in ids]


def run_suite(name: str, seed: int = 1, field: FieldConfig | str = FieldConfig(),
              confirm_qq: bool = False, threads: int | None = None, skip=()) -> SuiteReport:
    fc = FieldConfig.parse(field) if isinstance(field, str) else field
    if name == "all":
        ids = list(CLAIMS)
    elif name in SUITES:
        ids = list(SUITES[name])
    else:
        raise UnknownSuiteError(f"unknown suite {name!r}; known: {', '.join(sorted(SUITES))}")
    claims = run_claims(ids, seed, fc, confirm_qq, threads, skip)
    return SuiteReport(name, seed, fc.label, claims)
