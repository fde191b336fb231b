"""``smt``: command-line front end.

Every subcommand prints one JSON document (or a flat table) of the form
{"command", "seed", "params", "result"}.  Exit codes: 0 pass, 1 theorem
violation or failed check, 2 usage error.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from pathlib import Path

from . import __version__
from .combinat import (doset_axioms_check, enumerate_standard, lattice_check,
                       word_from_json, word_to_json)
from .errors import SMTError, TheoremViolation
from .exactalg import q_str
from .report import Report

VERIFY_TAGS = ("capMain", "iden", "iso", "sing", "mainprime", "present", "standard", "dos", "dalg")
VERIFY_LIMITS = {"n": 3, "m": 5, "d": 4}


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# argument helpers


def _common(p: argparse.ArgumentParser):
    p.add_argument("--seed", type=int, default=0, help="PRNG seed (echoed in the output)")
    p.add_argument("--threads", type=int, default=1, help="worker processes (output is invariant)")
    p.add_argument("--format", choices=("json", "table"), default="json")
    p.add_argument("--out", type=Path, help="write the document here instead of stdout")


def _mn(p, need_n=True, form=True):
    p.add_argument("--m", type=int, required=True)
    if need_n:
        p.add_argument("--n", type=int, required=True)
    if form:
        p.add_argument("--form", choices=("antidiagonal", "identity"), default="antidiagonal")


def _json_arg(text: str, name: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"{name}: invalid JSON at line {exc.lineno} column {exc.colno} "
                         f"(char {exc.pos}): {exc.msg}") from None


def _word_arg(text: str):
    try:
        return word_from_json(_json_arg(text, "--word"))
    except ValueError as exc:
        raise UsageError(f"--word: {exc}") from None


def _tuple_arg(text: str, name: str) -> tuple:
    obj = _json_arg(text, name)
    if not isinstance(obj, list) or not all(isinstance(x, int) for x in obj):
        raise UsageError(f"{name}: expected a JSON array of integers")
    return tuple(obj)


def _ints(text: str) -> tuple:
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _ctx(a):
    from .invariants import InvariantContext
    return InvariantContext(a.m, a.n, a.form)


# ---------------------------------------------------------------------------
# commands; each returns (params, result, passed)


def cmd_enumerate(a):
    if a.family == "traces":
        if a.triple is None:
            raise UsageError("--family traces needs --triple r,s,t")
        words = enumerate_standard(a.m, family="traces", degree=a.triple)
        params = {"family": a.family, "m": a.m, "triple": list(a.triple)}
    else:
        if a.d is None and a.multidegree is None:
            raise UsageError("give --d or --multidegree")
        words = enumerate_standard(a.m, a.n, a.family, degree=a.d, multidegree=a.multidegree,
                                   t=a.t)
        params = {"family": a.family, "m": a.m, "n": a.n, "t": a.t, "d": a.d,
                  "multidegree": list(a.multidegree) if a.multidegree else None}
    return params, {"count": len(words), "words": [word_to_json(w) for w in words]}, True


def cmd_straighten(a):
    from .straighten import load_catalog, residual, straighten_rewrite, straighten_solve
    word = _word_arg(a.word)
    if a.family == "dt":
        from .detvar import straighten_sym
        if a.t is None:
            raise UsageError("--family dt needs --t")
        rel = straighten_sym(word, a.m, a.t)
        return {"family": "dt", "m": a.m, "t": a.t}, rel.to_json(), True
    if a.n is None:
        raise UsageError("--family s needs --n")
    ctx = _ctx(a)
    if a.method == "rewrite":
        rel = straighten_rewrite(ctx, word, load_catalog(ctx, not a.no_cache))
    else:
        rel = straighten_solve(ctx, word)
    if residual(ctx, rel):
        raise TheoremViolation(f"{list(word)} straightens with a nonzero residual")
    params = {"family": "s", "n": a.n, "m": a.m, "form": a.form, "method": a.method}
    return params, rel.to_json(), True


def cmd_hilbert(a):
    from .detvar import hilbert_Dt
    from .dosetalg import discrete_standard_count, hilbert_KP, hilbert_RD
    need = {"dt": ("t",), "s": ("n",), "rd": ("n",), "kd": ("n",), "kp": ("n",)}[a.family]
    for k in need:
        if getattr(a, k) is None:
            raise UsageError(f"--family {a.family} needs --{k}")
    if a.family == "dt":
        value = hilbert_Dt(a.m, a.t, a.d)
    elif a.family == "s":
        value = len(enumerate_standard(a.m, a.n, "s", degree=a.d))
    elif a.family == "rd":
        value = hilbert_RD(a.m, a.n, a.d)
    elif a.family == "kd":
        value = discrete_standard_count(a.m, a.n, a.d)
    else:
        value = hilbert_KP(a.m, a.n, a.d)
    return {"family": a.family, "m": a.m, "n": a.n, "t": a.t, "d": a.d}, {"value": value}, True


def cmd_presentation(a):
    if a.family == "dt":
        from .detvar import presentation_Dt
        if a.t is None:
            raise UsageError("--family dt needs --t")
        return {"family": "dt", "m": a.m, "t": a.t}, presentation_Dt(a.m, a.t, not a.no_cache), True
    from .straighten import presentation
    if a.n is None:
        raise UsageError("--family s needs --n")
    params = {"family": "s", "n": a.n, "m": a.m, "form": a.form}
    return params, presentation(_ctx(a), not a.no_cache), True


def cmd_invariants(a):
    from .invariants import gram_entry, invariance_suite, lemma_residual, p_minor, u_det
    ctx = _ctx(a)
    params = {"n": a.n, "m": a.m, "form": a.form, "action": a.action}
    if a.action == "gram":
        params.update(i=a.i, j=a.j)
        return params, gram_entry(ctx, a.i, a.j).to_json(), True
    if a.action == "p":
        A, B = _tuple_arg(a.A, "--A"), _tuple_arg(a.B, "--B")
        params.update(A=list(A), B=list(B))
        return params, p_minor(ctx, A, B).to_json(), True
    if a.action == "u":
        I = _tuple_arg(a.I, "--I")
        params.update(I=list(I))
        return params, u_det(ctx, I).to_json(), True
    if a.action == "lemma":
        I, J = _tuple_arg(a.I, "--I"), _tuple_arg(a.J, "--J")
        res = lemma_residual(ctx, I, J)
        params.update(I=list(I), J=list(J))
        return params, {"zero": not res, "form_det": ctx.form_det, "residual": res.to_json()}, True
    rep = invariance_suite(ctx, a.seed, a.samples, a.degree)
    params.update(samples=a.samples, degree=a.degree)
    return params, rep.to_json(), rep.passed


def cmd_detvar(a):
    from . import detvar
    params = {"m": a.m, "t": a.t, "action": a.action}
    if a.action == "dim":
        rep = detvar.dim_check(a.m, a.t, a.seed)
    elif a.action == "sing":
        rep = detvar.singular_locus_check(a.m, a.t, a.seed)
    elif a.action == "points":
        if a.d is None:
            raise UsageError("detvar points needs --d")
        samples = a.samples or 3 * detvar.hilbert_Dt(a.m, a.t, a.d) + 2
        params.update(d=a.d, samples=samples)
        rep = detvar.independence_by_points(a.m, a.t, a.d, samples, a.seed)
    else:
        rep = detvar.shape_check_dt(a.m, a.t)
    return params, rep.to_json(), rep.passed


def cmd_doset(a):
    from . import dosetalg
    params = {"m": a.m, "n": a.n, "action": a.action}
    if a.action == "axioms":
        rep = doset_axioms_check(a.m, a.n)
    elif a.action == "lattice":
        rep = lattice_check(a.m, a.n)
    elif a.action == "dalg":
        rep = dosetalg.dalg_axioms_check(a.m, a.n, form=a.form)
        params["form"] = a.form
    elif a.action == "hilbert":
        rep = dosetalg.hilbert_report(a.m, a.n, a.d)
        params["d"] = a.d
    else:
        rep = dosetalg.discrete_associativity_check(a.m, a.n)
    return params, rep.to_json(), rep.passed


def cmd_sl2(a):
    from . import sl2traces as sl
    ctx = sl.Sl2Context(a.m)
    params = {"m": a.m, "action": a.action}
    if a.action == "trace2":
        params.update(i=a.i, j=a.j)
        return params, sl.trace2(ctx, a.i, a.j).to_json(), True
    if a.action == "trace3":
        params.update(i=a.i, j=a.j, k=a.k)
        return params, sl.trace3(ctx, a.i, a.j, a.k).to_json(), True
    if a.action == "theta":
        rep = sl.theta_embed_check(a.m)
    elif a.action == "omega":
        rep = sl.omega_bijection_check(a.m)
    else:
        triple = (a.r, a.s, a.t)
        params["triple"] = list(triple)
        if a.action == "transition":
            rep = sl.transition_report(a.m, triple)
            if rep.passed:
                tm = sl.transition_matrix(a.m, triple)
                rep.details["rows"] = [word_to_json(w) for w in tm.rows]
                rep.details["matrix"] = [[q_str(x) for x in row] for row in tm.matrix]
        else:
            rep = sl.trace_basis_check(a.m, triple, a.seed)
    return params, rep.to_json(), rep.passed


# ---------------------------------------------------------------------------
# verify


def _verify_one(tag: str, n: int, m: int, d: int, seed: int) -> dict:
    start = time.perf_counter()
    try:
        reports = CHECKS[tag](n, m, d, seed)
    except (SMTError, ValueError, OSError, KeyError) as exc:
        rep = Report(tag, False)
        msg = str(exc) if isinstance(exc, SMTError) else f"THEOREM-VIOLATION: {type(exc).__name__}: {exc}"
        rep.fail("error", msg)
        reports = [rep]
    return {"tag": tag, "passed": all(r.passed for r in reports),
            "seconds": round(time.perf_counter() - start, 3),
            "reports": [r.to_json() for r in reports]}


def _v_capmain(n, m, d, seed):
    from .invariants import InvariantContext
    from .straighten import basis_check
    return [basis_check(InvariantContext(m, n), d)]


def _v_iden(n, m, d, seed):
    from .invariants import InvariantContext, all_u_indices, lemma_residual
    from .straighten import expand
    from .combinat import Pair, UIndex
    out = []
    for form in ("identity", "antidiagonal"):
        ctx = InvariantContext(m, n, form)
        rep = Report("lemma", True, {"n": n, "m": m, "form": form, "form_det": ctx.form_det})
        idx = all_u_indices(ctx)
        for k, I in enumerate(idx):
            for J in idx[k:]:
                if form == "identity":
                    bad = bool(lemma_residual(ctx, I, J))
                else:
                    lhs = expand(ctx, (UIndex(I), UIndex(J)))
                    bad = lhs != expand(ctx, (Pair(I, J),)).scale(ctx.form_det)
                if bad:
                    rep.fail("lemma", f"THEOREM-VIOLATION: u{I}u{J} != det(F) p({I},{J})")
        out.append(rep)
    return out


def _v_iso(n, m, d, seed):
    from .detvar import dim_check
    mm = min(m, 4)
    return [dim_check(mm, t, seed) for t in range(1, mm + 2)]


def _v_sing(n, m, d, seed):
    from .detvar import singular_locus_check
    mm = min(m, 3)
    return [singular_locus_check(mm, t, seed) for t in range(2, mm + 1)]


def _v_mainprime(n, m, d, seed):
    from .invariants import InvariantContext, gram_independence_check, invariance_suite
    out = [invariance_suite(InvariantContext(m, n), seed, samples=20, max_degree=2)]
    if m <= n:
        out.append(gram_independence_check(m, n, seed))
    return out


def _v_present(n, m, d, seed):
    from .invariants import InvariantContext
    from .straighten import (WeightContext, catalog_integrity_check, load_catalog,
                             rewrite_agreement_check, verify_shape, weight_law_check)
    ctx = InvariantContext(m, n)
    cat = load_catalog(ctx)
    out = [catalog_integrity_check(ctx, cat)]
    shape = Report("shape", True, {"n": n, "m": m, "relations": len(cat)})
    for rel in cat:
        sub = verify_shape(rel)
        for v in sub.violations:
            shape.fail(v["clause"], v["message"])
    out.append(shape)
    out.append(weight_law_check(ctx, cat, WeightContext(m, n)))
    out.append(weight_law_check(ctx, cat, WeightContext.strict(m, n)))
    out.append(rewrite_agreement_check(ctx, cat, seed, count=100, max_degree=max(d, 2)))
    return out


def _v_standard(n, m, d, seed):
    from . import sl2traces as sl
    out = [sl.theta_embed_check(3), sl.omega_bijection_check(m)]
    triples = [(r, s, t) for r in range(3) for s in range(3) for t in range(3) if r + s + t <= 2]
    for tr in triples:
        out.append(sl.transition_report(m, tr))
        out.append(sl.trace_basis_check(m, tr, seed))
    out.append(sl.adjoint_invariance_check(3, seed))
    return out


def _v_dos(n, m, d, seed):
    out = []
    for nn in range(1, n + 1):
        for mm in range(nn, m + 1):
            out += [doset_axioms_check(mm, nn), lattice_check(mm, nn)]
    return out


def _v_dalg(n, m, d, seed):
    from .dosetalg import dalg_axioms_check, hilbert_report
    return [dalg_axioms_check(m, n), hilbert_report(m, n, d)]


CHECKS = {"capMain": _v_capmain, "iden": _v_iden, "iso": _v_iso, "sing": _v_sing,
          "mainprime": _v_mainprime, "present": _v_present, "standard": _v_standard,
          "dos": _v_dos, "dalg": _v_dalg}


def cmd_verify(a):
    for k, hi in VERIFY_LIMITS.items():
        if not 1 <= getattr(a, k) <= hi:
            raise UsageError(f"--{k} must lie in [1, {hi}]")
    if a.m < a.n:
        raise UsageError(f"m={a.m} < n={a.n}: the S family needs m >= n")
    tags = [t for t in (a.only or VERIFY_TAGS) if t not in (a.skip or ())]
    args = [(t, a.n, a.m, a.d, a.seed) for t in tags]
    if a.threads > 1:
        with ProcessPoolExecutor(max_workers=a.threads) as pool:
            results = list(pool.map(_verify_one, *zip(*args)))
    else:
        results = [_verify_one(*x) for x in args]
    for r in results:
        print(f"{'PASS' if r['passed'] else 'FAIL'} {r['tag']} ({r['seconds']:.1f}s)", file=sys.stderr)
        for rep in r["reports"]:
            for v in rep["violations"]:
                msg = v["message"]
                if not msg.startswith(("THEOREM-VIOLATION", "INDEPENDENCE-VIOLATION")):
                    msg = f"THEOREM-VIOLATION: {msg}"
                print(f"  {msg}", file=sys.stderr)
    params = {"n": a.n, "m": a.m, "d": a.d, "tags": tags, "version": __version__}
    return params, {"checks": results}, all(r["passed"] for r in results)


# ---------------------------------------------------------------------------
# parser and output


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="smt", description="Standard monomial computations.")
    ap.add_argument("--version", action="version", version=f"smt {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enumerate", help="list standard words")
    _common(p)
    p.add_argument("--family", choices=("s", "dt", "rd", "traces"), default="s")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int)
    p.add_argument("--t", type=int)
    p.add_argument("--d", type=int)
    p.add_argument("--multidegree", type=_ints)
    p.add_argument("--triple", type=_ints, help="r,s,t for --family traces")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("straighten", help="straighten one word")
    _common(p)
    p.add_argument("--family", choices=("s", "dt"), default="s")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int)
    p.add_argument("--t", type=int)
    p.add_argument("--form", choices=("antidiagonal", "identity"), default="antidiagonal")
    p.add_argument("--word", required=True, help="JSON array of symbols")
    p.add_argument("--method", choices=("solve", "rewrite"), default="solve")
    p.add_argument("--no-cache", action="store_true")
    p.set_defaults(func=cmd_straighten)

    p = sub.add_parser("hilbert", help="graded dimension in one degree")
    _common(p)
    p.add_argument("--family", choices=("s", "dt", "rd", "kd", "kp"), required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int)
    p.add_argument("--t", type=int)
    p.add_argument("--d", type=int, required=True)
    p.set_defaults(func=cmd_hilbert)

    p = sub.add_parser("presentation", help="generators and degree-2 relations")
    _common(p)
    p.add_argument("--family", choices=("s", "dt"), default="s")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int)
    p.add_argument("--t", type=int)
    p.add_argument("--form", choices=("antidiagonal", "identity"), default="antidiagonal")
    p.add_argument("--no-cache", action="store_true")
    p.set_defaults(func=cmd_presentation)

    p = sub.add_parser("invariants", help="O_n / SO_n generators and invariance")
    _common(p)
    p.add_argument("action", choices=("gram", "p", "u", "lemma", "check"))
    _mn(p)
    p.add_argument("--i", type=int)
    p.add_argument("--j", type=int)
    p.add_argument("--A")
    p.add_argument("--B")
    p.add_argument("--I")
    p.add_argument("--J")
    p.add_argument("--samples", type=int, default=20)
    p.add_argument("--degree", type=int, default=2)
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("detvar", help="symmetric determinantal varieties")
    _common(p)
    p.add_argument("action", choices=("dim", "sing", "points", "shape"))
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--d", type=int)
    p.add_argument("--samples", type=int)
    p.set_defaults(func=cmd_detvar)

    p = sub.add_parser("doset", help="doset and doset-algebra checks")
    _common(p)
    p.add_argument("action", choices=("axioms", "lattice", "dalg", "hilbert", "assoc"))
    _mn(p)
    p.add_argument("--d", type=int, default=3)
    p.set_defaults(func=cmd_doset)

    p = sub.add_parser("sl2", help="adjoint SL_2 trace invariants")
    _common(p)
    p.add_argument("action", choices=("trace2", "trace3", "transition", "basis", "theta", "omega"))
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--i", type=int, default=1)
    p.add_argument("--j", type=int, default=1)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--r", type=int, default=0)
    p.add_argument("--s", type=int, default=0)
    p.add_argument("--t", type=int, default=0)
    p.set_defaults(func=cmd_sl2)

    p = sub.add_parser("verify", help="run the tagged check suite")
    _common(p)
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--m", type=int, default=4)
    p.add_argument("--d", type=int, default=3)
    p.add_argument("--only", action="append", choices=VERIFY_TAGS)
    p.add_argument("--skip", action="append", choices=VERIFY_TAGS)
    p.set_defaults(func=cmd_verify)
    return ap


def _jsonable(x):
    if isinstance(x, Fraction):
        return q_str(x)
    raise TypeError(f"not JSON serializable: {type(x).__name__}")


def render(doc: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(doc, indent=2, sort_keys=True, default=_jsonable) + "\n"
    lines = []

    def walk(prefix, x):
        if isinstance(x, dict):
            for k in sorted(x):
                walk(f"{prefix}.{k}" if prefix else str(k), x[k])
        elif isinstance(x, list) and x and isinstance(x[0], (dict, list)):
            for k, y in enumerate(x):
                walk(f"{prefix}[{k}]", y)
        else:
            lines.append(f"{prefix}\t{json.dumps(x, sort_keys=True, default=_jsonable)}")

    walk("", doc)
    return "\n".join(lines) + "\n"


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    a = ap.parse_args(argv)
    if a.threads < 1:
        ap.error("--threads must be >= 1")
    try:
        params, result, passed = a.func(a)
    except UsageError as exc:
        print(f"smt: error: {exc}", file=sys.stderr)
        return 2
    except TheoremViolation as exc:
        print(str(exc), file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"smt: error: {exc}", file=sys.stderr)
        return 2
    doc = {"command": a.command, "seed": a.seed, "params": params, "result": result}
    text = render(doc, a.format)
    if a.out:
        a.out.write_text(text)
    else:
        sys.stdout.write(text)
    return 0 if passed else 1


if __name__ == "__main__":
    sys.exit(main())
