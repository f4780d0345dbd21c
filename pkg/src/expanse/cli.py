"""The ``expanse`` command line.

Exit codes: 0 verdict computed, 1 a theorem harness found a discrepancy,
2 invalid input, 3 budget or search limit exhausted.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time

from . import __version__
from . import ideal_props as ip
from . import polymatroid as pm
from . import semigroup as sg
from . import sortable as so
from . import sweeps, toric
from .core import InducedSharp, Lex, MonomialIdeal, MonomialSet
from .document import ConfigDocument, InputError, format_monomial, load_document, parse_alpha, parse_monomial
from .errors import BudgetExhausted, DimensionMismatch, PreconditionError, SearchTooLarge
from .expansion import ExpansionShape, contract_vector, expand_ideal, expand_set
from .goldens import run_goldens
from .polymatroid import BaseSet, expand_bases
from .semigroup import NotNormal, krull_dimension
from .sweeps import SUITES
from .toric import YBinomial, spair_budget

EXIT_OK, EXIT_VIOLATION, EXIT_INPUT, EXIT_LIMIT = 0, 1, 2, 3

THEOREMS = ("poly", "wp", "lq", "pi0", "ohh-grob", "grob-exp", "sort", "normal", "dim")


class Violation(Exception):
    """A harness observed a property failing; carries the partial report."""

    def __init__(self, payload):
        super().__init__("property violated")
        self.payload = payload


# ------------------------------------------------------------------ rendering


def _binomial(b, config, shape=None) -> dict:
    return {
        "plus": [format_monomial(config[i], shape) for i in b.plus_indices()],
        "minus": [format_monomial(config[i], shape) for i in b.minus_indices()],
    }


def _binomials(bs, config, shape=None) -> list:
    return [_binomial(b, config, shape) for b in bs]


def _rows(vectors, shape=None) -> list:
    return [format_monomial(u, shape) for u in vectors]


# ------------------------------------------------------------------- helpers


def _y_order(doc: ConfigDocument, config):
    base = doc.order or Lex()
    return InducedSharp(base, tuple(config))


def _need_alpha(doc: ConfigDocument, args) -> ExpansionShape:
    shape = _alpha(doc, args)
    if shape is None:
        raise InputError("this command needs an expansion shape (--alpha or a document 'alpha')")
    return shape


def _alpha(doc: ConfigDocument, args):
    if getattr(args, "alpha", None):
        shape = parse_alpha(args.alpha)
        if shape.n != doc.n:
            raise InputError(f"alpha has {shape.n} entries, expected {doc.n}")
        return shape
    return doc.alpha


def _ideal(doc):
    return MonomialIdeal(doc.monomials, doc.n)


def _set(doc):
    S = MonomialSet.of(doc.monomials, doc.n)
    return S


# ------------------------------------------------------------------ commands


def cmd_expand(doc, args):
    shape = _need_alpha(doc, args)
    if doc.kind == "ideal":
        out = expand_ideal(_ideal(doc), shape).generators
    elif doc.kind == "bases":
        out = expand_bases(BaseSet.of(doc.monomials), shape).bases
    else:
        out = expand_set(_set(doc), shape).vectors.members
    return {
        "verdict": len(out),
        "document": {"n": shape.total, "kind": doc.kind, "monomials": [list(u) for u in out]},
        "monomials": _rows(out, shape),
    }


def cmd_check(doc, args):
    shape = _alpha(doc, args)
    I = _ideal(doc)
    if shape is not None:
        I = expand_ideal(I, shape)
    gens = I.generators
    out = {"generators": _rows(gens, shape)}
    prop = args.property
    if prop == "polymatroidal":
        bad = None if not I.is_equigenerated() else ip.exchange_violation(gens)
        ok = ip.is_polymatroidal(I)
        out["verdict"] = ok
        if not ok:
            out["witness"] = (
                "generators differ in degree" if bad is None else
                {"u": format_monomial(bad[0], shape), "v": format_monomial(bad[1], shape), "i": bad[2] + 1}
            )
    elif prop == "weakly-polymatroidal":
        order = ip.find_weakly_polymatroidal_order(I, search_limit=args.search_limit)
        out["verdict"] = order is not None
        if order is not None:
            out["variable_order"] = [_var_name(p, I.dim, shape) for p in order]
    elif prop == "linear-quotients":
        order = ip.find_linear_quotients_order(I, limit=args.search_limit)
        out["verdict"] = order is not None
        if order is not None:
            out["generator_order"] = [format_monomial(gens[k], shape) for k in order]
    else:
        k = args.k if args.k is not None else I.dim - 1
        cert = ip.is_k_decomposable(I, k, limit=args.search_limit)
        out["verdict"] = cert is not None
        out["k"] = k
        if cert is not None:
            out["certificate"] = _certificate(cert, shape)
    return out


def _var_name(p, dim, shape):
    return format_monomial(tuple(int(k == p) for k in range(dim)), shape)


def _certificate(cert, shape):
    if cert.u is None:
        return {"generators": _rows(cert.gens, shape)}
    return {
        "shedding": format_monomial(cert.u, shape),
        "upper": _certificate(cert.upper, shape),
        "lower": _certificate(cert.lower, shape),
    }


def cmd_toric(doc, args):
    shape = _alpha(doc, args)
    S = _set(doc)
    action = args.action
    if action == "gb":
        config = expand_set(S, shape).vectors.members if shape else S.members
        G = toric.toric_gb(config, _y_order(doc, config) if not shape else None)
        return {"verdict": len(G), "configuration": _rows(config, shape), "basis": _binomials(G, config, shape)}
    if action == "expand-gb":
        shape = _need_alpha(doc, args)
        return _expand_gb_report(S, shape)
    if action == "verify-gb":
        config = expand_set(S, shape).vectors.members if shape else S.members
        cand = _candidate(doc, config, shape)
        ok = toric.verify_gb(cand, config, _y_order(doc, config) if not shape else None)
        return {"verdict": ok, "candidate": _binomials(cand, config, shape)}
    # contract-gb
    if not args.vars:
        raise InputError("contract-gb needs --vars")
    config = expand_set(S, shape).vectors.members if shape else S.members
    G = toric.toric_gb(config, _y_order(doc, config) if not shape else None)
    T = _parse_vars(args.vars, doc.n, shape)
    H = toric.contract_gb(G, T)
    return {
        "verdict": len(H),
        "subconfiguration": _rows(H.configuration, shape),
        "basis": _binomials(H, H.configuration, shape),
    }


def _parse_vars(text, n, shape):
    out = []
    for tok in text.split(","):
        v = parse_monomial(tok.strip(), n, shape)
        if sum(v) != 1:
            raise InputError(f"{tok!r} is not a single variable")
        out.append(v.index(1))
    return out


def _candidate(doc, config, shape):
    raw = (doc.extra or {}).get("candidate")
    if not isinstance(raw, list):
        raise InputError("verify-gb needs a 'candidate' list of {plus: [...], minus: [...]} binomials")
    index = {u: k for k, u in enumerate(config)}
    out = []
    for b in raw:
        if not isinstance(b, dict) or not isinstance(b.get("plus"), list) or not isinstance(b.get("minus"), list):
            raise InputError("each candidate binomial needs 'plus' and 'minus' lists")
        sides = []
        for side in (b["plus"], b["minus"]):
            idx = []
            for mono in side:
                v = parse_monomial(mono, len(config[0]), shape) if isinstance(mono, str) else tuple(mono)
                if v not in index:
                    raise InputError(f"{mono!r} is not in the configuration")
                idx.append(index[v])
            sides.append(idx)
        try:
            out.append(YBinomial.from_indices(sides[0], sides[1], len(config)))
        except ValueError as e:
            raise InputError(str(e)) from None
    return out


def _expand_gb_report(S, shape):
    GA = toric.toric_gb(S)
    out = {"base_basis": _binomials(GA, GA.configuration)}
    steps = [i for i, k in enumerate(shape.alpha) for _ in range(k - 1)]
    if len(steps) == 1:
        G0, G1 = toric.expand_gb_single_split(S, GA, steps[0])
        config = expand_set(S, shape).vectors.members
        out["G0"] = _binomials(G0, config, shape)
        out["G1"] = _binomials(G1, config, shape)
    G = toric.expand_gb(S, GA, shape)
    direct = toric.toric_gb(expand_set(S, shape).vectors)
    ok = G.labelled() == direct.labelled()
    out["basis"] = _binomials(G, G.configuration, shape)
    out["verdict"] = ok
    if not ok:
        raise Violation(out)
    return out


def cmd_white(doc, args):
    B = pm.BaseSet.of(doc.monomials)
    shape = _alpha(doc, args)
    action = args.action
    if action == "theorem-main":
        shape = _need_alpha(doc, args)
        premise = pm.check_white(B)
        E = pm.expand_bases(B, shape)
        conclusion = pm.check_white(E)
        out = {"premise": premise, "conclusion": conclusion, "verdict": (not premise) or conclusion}
        if not out["verdict"]:
            raise Violation(out)
        return out
    if shape is not None:
        B = pm.expand_bases(B, shape)
    out = {"bases": _rows(B.bases, shape)}
    if action == "check":
        ok = pm.check_white(B)
        out["verdict"] = ok
        out["quadrics"] = _binomials(pm.swap_quadrics(B), B.bases, shape)
    else:
        ok, witness = pm.fiber_connected_oracle(B, args.degree)
        out["verdict"] = ok
        if witness is not None:
            out["witness"] = {
                "multidegree": list(witness.multidegree),
                "fiber": [[format_monomial(B.bases[k], shape) for k in ms] for ms in witness.fiber],
                "component": [[format_monomial(B.bases[k], shape) for k in ms] for ms in witness.component],
            }
    return out


def cmd_sortable(doc, args):
    S = _set(doc)
    shape = _alpha(doc, args)
    if args.action == "theorem-sort":
        shape = _need_alpha(doc, args)
        a = so.is_sortable(S)[0]
        b = so.is_sortable(expand_set(S, shape).vectors)[0]
        out = {"base": a, "expanded": b, "verdict": a == b}
        if a != b:
            raise Violation(out)
        return out
    if shape is not None:
        S = expand_set(S, shape).vectors
    if args.action == "check":
        ok, w = so.is_sortable(S)
        out = {"verdict": ok}
        if w is not None:
            out["witness"] = {"pair": _rows(w[:2], shape), "sorted": _rows(w[2:], shape)}
        return out
    rel = so.sorting_relations(S)
    return {"verdict": len(rel), "relations": _binomials(rel, S.members, shape)}


def cmd_normal(doc, args):
    S = _set(doc)
    if args.bound is None:
        raise InputError("normal needs --bound")
    if args.action == "theorem-normal":
        shape = _need_alpha(doc, args)
        cmp = sg.compare_normality(S, shape, args.bound)
        out = {
            "base": _verdict(cmp.base, None),
            "expanded": _verdict(cmp.expanded, shape),
            "verdict": cmp.agree,
        }
        if cmp.lifted is not None:
            out["lifted_witness"] = format_monomial(cmp.lifted, shape)
        if cmp.contracted is not None:
            out["contracted_witness"] = format_monomial(cmp.contracted)
        if not cmp.agree:
            raise Violation(out)
        return out
    shape = _alpha(doc, args)
    config = expand_set(S, shape).vectors if shape else S
    v = sg.is_normal_up_to(config, args.bound)
    out = _verdict(v, shape)
    out["verdict"] = v.normal
    return out


def _verdict(v, shape):
    if isinstance(v, NotNormal):
        return {"kind": "NotNormal", "witness": list(v.witness), "witness_monomial": format_monomial(v.witness, shape)}
    return {"kind": "NormalUpTo", "bound": v.bound}


def cmd_dim(doc, args):
    shape = _alpha(doc, args)
    config = expand_set(_set(doc), shape).vectors.members if shape else doc.monomials
    return {"verdict": krull_dimension(config)}


def cmd_verify(doc, args):
    shape = _need_alpha(doc, args)
    tid = args.theorem
    out = {"theorem": tid}
    if tid in ("poly", "wp", "lq"):
        I = _ideal(doc)
        J = expand_ideal(I, shape)
        if tid == "poly":
            a, b = ip.is_polymatroidal(I), ip.is_polymatroidal(J)
        elif tid == "wp":
            a = ip.find_weakly_polymatroidal_order(I, search_limit=args.search_limit) is not None
            b = ip.find_weakly_polymatroidal_order(J, search_limit=max(args.search_limit, shape.total)) is not None
        else:
            a = ip.find_linear_quotients_order(I, limit=args.search_limit) is not None
            b = ip.find_linear_quotients_order(J, limit=max(args.search_limit, len(J))) is not None
        out.update(base=a, expanded=b, verdict=a == b)
    elif tid == "pi0":
        S = _set(doc)
        E = expand_set(S, shape).vectors
        GE = toric.toric_gb(E)
        flat = []
        index = {u: k for k, u in enumerate(S.members)}
        for g in GE:
            p = [index[contract_vector(E.members[i], shape)] for i in g.plus_indices()]
            q = [index[contract_vector(E.members[i], shape)] for i in g.minus_indices()]
            if sorted(p) != sorted(q):
                flat.append(toric.YBinomial.from_indices(p, q, len(S)))
        in_kernel = all(toric.kernel_test(b, S) for b in flat)
        gen = toric.generates(flat, S)
        out.update(flattened=len(flat), in_kernel=in_kernel, generates=gen, verdict=in_kernel and gen)
    elif tid == "ohh-grob":
        S = _set(doc)
        E = expand_set(S, shape).vectors
        GE = toric.toric_gb(E)
        firsts = [shape.flat(i, 0) for i in range(shape.n)]
        H = toric.contract_gb(GE, firsts)
        GA = toric.toric_gb(S)
        lhs = H.relabelled(lambda w: contract_vector(w, shape))
        out.update(contracted=_binomials(H, H.configuration, shape), base=_binomials(GA, GA.configuration),
                   verdict=lhs == GA.labelled())
    elif tid == "grob-exp":
        out.update(_expand_gb_report(_set(doc), shape))
    elif tid == "sort":
        S = _set(doc)
        a = so.is_sortable(S)[0]
        b = so.is_sortable(expand_set(S, shape).vectors)[0]
        out.update(base=a, expanded=b, verdict=a == b)
    elif tid == "normal":
        if args.bound is None:
            raise InputError("verify normal needs --bound")
        cmp = sg.compare_normality(_set(doc), shape, args.bound)
        out.update(base=_verdict(cmp.base, None), expanded=_verdict(cmp.expanded, shape), verdict=cmp.agree)
    else:
        a = sg.krull_dimension(doc.monomials)
        b = sg.krull_dimension(expand_set(_set(doc), shape).vectors)
        out.update(base=a, expanded=b, verdict=a <= b)
    if not out["verdict"]:
        raise Violation(out)
    return out


def cmd_paper_examples(doc, args):
    results = run_goldens()
    out = {"examples": results, "verdict": all(r["reproduced"] for r in results)}
    if not out["verdict"]:
        raise Violation(out)
    return out


def cmd_sweep(doc, args):
    suites = sweeps.SUITES if args.suite == "all" else (args.suite,)
    results = [sweeps.run_suite(name, seed=args.seed, count=args.count, workers=args.workers) for name in suites]
    out = {
        "seed": args.seed,
        "generator": sweeps.GENERATOR,
        "budget": _budget(),
        "suites": [r.to_json() for r in results],
        "verdict": all(not r.violations for r in results),
    }
    if not out["verdict"]:
        raise Violation(out)
    return out


def _budget():
    return spair_budget()


# --------------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="expanse", description="Expansion functor checks on monomial data.")
    p.add_argument("--version", action="version", version=f"expanse {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, needs_input=True, **kw):
        sp = sub.add_parser(name, **kw)
        if needs_input:
            sp.add_argument("--input", "-i", required=True, help="JSON document, or - for stdin")
            sp.add_argument("--alpha", help="expansion shape, e.g. 1,1,1,2")
        sp.add_argument("--format", choices=("json", "text"), default="json")
        sp.add_argument("--timing", action="store_true", help="add wall-clock timing to the report")
        return sp

    add("expand", help="expand an ideal, set or base set")
    sp = add("check", help="decide an ideal property")
    sp.add_argument("property", choices=("polymatroidal", "weakly-polymatroidal", "linear-quotients", "k-decomposable"))
    sp.add_argument("--k", type=int)
    sp.add_argument("--search-limit", type=int, default=None)
    sp = add("toric", help="toric Groebner bases")
    sp.add_argument("action", choices=("gb", "expand-gb", "verify-gb", "contract-gb"))
    sp.add_argument("--vars", help="variables kept by contract-gb, e.g. x1,x2_1")
    sp = add("white", help="double-swap generation of base ring toric ideals")
    sp.add_argument("action", choices=("check", "oracle", "theorem-main"))
    sp.add_argument("--degree", type=int, help="fiber degree bound for the oracle")
    sp = add("sortable", help="sortable sets")
    sp.add_argument("action", choices=("check", "relations", "theorem-sort"))
    sp = add("normal", help="bounded normality")
    sp.add_argument("action", nargs="?", choices=("check", "theorem-normal"), default="check")
    sp.add_argument("--bound", type=int)
    add("dim", help="Krull dimension as exponent-matrix rank")
    sp = add("verify", help="run both sides of a transfer theorem")
    sp.add_argument("theorem", choices=THEOREMS)
    sp.add_argument("--bound", type=int)
    sp.add_argument("--search-limit", type=int, default=None)
    add("paper-examples", needs_input=False, help="reproduce the worked examples")
    sp = add("sweep", needs_input=False, help="randomized and exhaustive property suites")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--count", type=int, default=None)
    sp.add_argument("--suite", default="all")
    sp.add_argument("--workers", type=int, default=1, help="threads for independent instances")
    return p


COMMANDS = {
    "expand": cmd_expand,
    "check": cmd_check,
    "toric": cmd_toric,
    "white": cmd_white,
    "sortable": cmd_sortable,
    "normal": cmd_normal,
    "dim": cmd_dim,
    "verify": cmd_verify,
    "paper-examples": cmd_paper_examples,
    "sweep": cmd_sweep,
}


def _read_input(path: str, stdin) -> bytes:
    if path == "-":
        return stdin.buffer.read() if hasattr(stdin, "buffer") else stdin.read().encode("utf-8")
    try:
        with open(path, "rb") as fh:
            return fh.read()
    except OSError as e:
        raise InputError(f"cannot read {path}: {e.strerror}") from None


def _render_text(report: dict) -> str:
    lines = []
    for key in sorted(report):
        val = report[key]
        if isinstance(val, (dict, list)):
            val = json.dumps(val, sort_keys=True)
        lines.append(f"{key}: {val}")
    return "\n".join(lines) + "\n"


def run(argv=None, stdin=None, stdout=None) -> int:
    """Parse ``argv``, run the command, write the report; returns the exit code."""
    stdin = stdin or sys.stdin
    stdout = stdout or sys.stdout
    parser = build_parser()
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_INPUT
    if getattr(args, "search_limit", "unset") is None:
        args.search_limit = _default_limit(args)
    if args.command == "sweep" and args.suite != "all":
        if args.suite not in SUITES:
            print(f"expanse: unknown suite {args.suite!r}; choose from {', '.join(SUITES)} or all", file=sys.stderr)
            return EXIT_INPUT
    report = {"command": argv, "version": __version__, "input_digest": None}
    code = EXIT_OK
    start = time.perf_counter()
    try:
        doc = None
        if hasattr(args, "input"):
            raw = _read_input(args.input, stdin)
            report["input_digest"] = "sha256:" + hashlib.sha256(raw).hexdigest()
            doc = load_document(raw)
        report.update(COMMANDS[args.command](doc, args))
    except Violation as v:
        report.update(v.payload)
        code = EXIT_VIOLATION
    except (InputError, DimensionMismatch, PreconditionError) as e:
        report["error"] = {"kind": "invalid-input", "message": str(e)}
        if isinstance(e, InputError) and e.offset is not None:
            report["error"]["offset"] = e.offset
        code = EXIT_INPUT
    except (SearchTooLarge, BudgetExhausted, RecursionError) as e:
        report["error"] = {"kind": "limit", "message": str(e) or type(e).__name__}
        code = EXIT_LIMIT
    if args.timing:
        report["timing_seconds"] = round(time.perf_counter() - start, 6)
    report["exit_code"] = code
    if args.format == "text":
        stdout.write(_render_text(report))
    else:
        stdout.write(json.dumps(report, sort_keys=True, indent=2) + "\n")
    return code


def _default_limit(args) -> int:
    if args.command == "check" and args.property == "weakly-polymatroidal":
        return 8
    return 10


def main() -> None:
    sys.exit(run())
