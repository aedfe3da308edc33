"""Command-line front end.

Exit codes: 0 when every requested check passes, 1 when some invariant
fails, 2 on malformed input.  Reports are JSON (``--format json``, the
default) or aligned text (``--format table``); ``--output`` also writes the
JSON report to a file.
"""

from __future__ import annotations

import argparse
import random
import sys
import time

from . import __version__, lattice
from .io import DescriptorError, dumps, load_json, write_json
from .scalars import parse_scalar, scalar_to_str

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class Report:
    def __init__(self, command: str, inputs: dict):
        self.command = command
        self.inputs = inputs
        self.results: list[dict] = []
        self.flags: dict = {}
        self.payload: dict = {}
        self.tables: list[tuple[str, dict]] = []
        self._t0 = time.perf_counter()

    def add(self, check: str, ok: bool, witness=None, **extra):
        row = {"check": check, "status": "pass" if ok else "fail", "witness": witness if witness is not None else []}
        row.update(extra)
        self.results.append(row)

    @property
    def ok(self) -> bool:
        return all(r["status"] == "pass" for r in self.results)

    def to_json(self) -> dict:
        return {
            "schema_version": 1,
            "tool_version": __version__,
            "command": self.command,
            "inputs": self.inputs,
            "results": self.results,
            "flags": self.flags,
            "payload": self.payload,
            "timing": {"seconds": round(time.perf_counter() - self._t0, 6)},
        }


def format_table(report: Report) -> str:
    lines = [f"{report.command}: {'PASS' if report.ok else 'FAIL'}"]
    width = max((len(r["check"]) for r in report.results), default=0)
    for r in report.results:
        lines.append(f"  {r['check']:<{width}}  {r['status']}")
    for k, v in sorted(report.payload.items()):
        if isinstance(v, (str, int)):
            lines.append(f"  {k}: {v}")
    for title, table in report.tables:
        lines.append("")
        lines.append(title)
        lines.extend(weight_grid(table))
    for k, v in sorted(report.flags.items()):
        lines.append(f"  flag {k}: {v}")
    return "\n".join(lines)


def weight_grid(table: dict) -> list[str]:
    """Aligned multiplicity grid for 2-d labels, one line per label otherwise."""
    if not table:
        return ["  (empty)"]
    labels = sorted(table)
    if len(labels[0]) != 2:
        w = max(len(str(list(l))) for l in labels)
        return [f"  {str(list(l)):<{w}}  {table[l]}" for l in labels]
    xs = sorted({l[0] for l in labels})
    ys = sorted({l[1] for l in labels}, reverse=True)
    cell = max(max(len(str(v)) for v in table.values()), max(len(str(x)) for x in xs), 1)
    head = " " * 6 + " ".join(f"{x:>{cell}}" for x in xs)
    out = [head]
    for y in ys:
        row = " ".join(f"{table[(x, y)]:>{cell}}" if (x, y) in table else " " * (cell - 1) + "." for x in xs)
        out.append(f"  {y:>3} {row}")
    return out


def _ints(text: str, what: str) -> tuple:
    try:
        return tuple(int(x) for x in text.split(",") if x.strip() != "")
    except ValueError:
        raise DescriptorError(f"option '{what}': expected comma-separated integers, got {text!r}") from None


# ---- subcommands -------------------------------------------------------------


def cmd_bracket(args) -> Report:
    from .lie import bracket, element_from_json, element_to_json

    lhs = element_from_json(load_json(args.lhs))
    rhs = element_from_json(load_json(args.rhs))
    z = bracket(lhs, rhs)
    rep = Report("bracket", {"lhs": args.lhs, "rhs": args.rhs})
    rep.payload = {"result": element_to_json(z), "text": repr(z)}
    rep.add("antisymmetry", bracket(rhs, lhs) == -z)
    return rep


def cmd_grading(args) -> Report:
    from .lie import Algebra, bracket, graded_component, graded_coordinates

    m = _ints(args.degree, "--degree")
    if len(m) < 2:
        raise DescriptorError("option '--degree': need at least two coordinates")
    comp = graded_component(args.algebra, m)
    n = len(m)
    rep = Report("grading", {"degree": list(m), "algebra": args.algebra})
    rep.payload = {"dim": comp.dim, "basis": [repr(x) for x in comp.basis]}
    if Algebra(args.algebra) is Algebra.EXTENDED:
        expect = n + 1 if not any(m) else n
        rep.add("dimension", comp.dim == expect, [] if comp.dim == expect else [comp.dim])
        if any(m):
            opp = graded_component(args.algebra, lattice.neg(m))
            bad = [[repr(x), repr(y)] for x in comp.basis for y in opp.basis if bracket(x, y)]
            rep.add("opposite_degree_commutation", not bad, bad)
        for x in comp.basis:
            graded_coordinates(x, m)
    return rep


def cmd_irrep(args) -> Report:
    from .irreps import build_irrep, irrep_to_json, weyl_dim
    from .linalg import SparseMatrix

    lam = _ints(args.lam, "--lambda")
    c = parse_scalar(args.c)
    R = build_irrep(lam, args.n, c, cap=args.cap)
    rep = Report("irrep", {"n": args.n, "lambda": list(lam), "c": scalar_to_str(c)})
    rep.payload = {"dim": R.dim}
    rep.add("weyl_dimension", R.dim == weyl_dim(lam, args.n))
    bad = R.commutator_violations()
    rep.add("gl_commutators", not bad, [list(b) for b in bad[:20]])
    rep.add("identity_scalar", R.identity_action() == SparseMatrix.identity(R.dim, c))
    hw = {R.hw_index: 1}
    killed = all(not R.apply(i, j, hw) for i in range(args.n) for j in range(i + 1, args.n))
    rep.add("highest_weight_vector", killed)
    if args.save:
        write_json(args.save, irrep_to_json(R))
    return rep


def _jet_from(path):
    from .jet import jet_params_from_json

    return jet_params_from_json(load_json(path))


def cmd_jet_check(args) -> Report:
    from .jet import check_associativity, check_module_axiom, is_irreducible

    params = _jet_from(args.module)
    rep = Report("jet-check", {"module": args.module, "window": args.window, "algebra": args.algebra})
    ax = check_module_axiom(params, window=args.window, algebra=args.algebra, jobs=args.jobs)
    rep.add("module_axiom", ax.ok, ax.violations[:20], checked=ax.checked)
    asc = check_associativity(params, window=args.window)
    rep.add("associativity", asc.ok, asc.violations[:20], checked=asc.checked)
    verdict, notes = is_irreducible(params, "G")
    rep.payload = {"irreducible_G": verdict.value, "notes": notes}
    rep.flags["window_limited"] = True
    return rep


def cmd_jet_support(args) -> Report:
    from .jet import JetModule, weight_support

    params = _jet_from(args.module)
    ws = weight_support(params, window=args.window)
    dim = JetModule(params).dim
    rep = Report("jet-support", {"module": args.module, "window": args.window})
    bad = [list(s) for s, k in ws.multiplicity.items() if k != dim]
    rep.add("constant_multiplicity", not bad, bad)
    rep.payload = {"base": [scalar_to_str(a) for a in ws.base], "multiplicity": dim}
    rep.tables.append(("weight multiplicities (label = s)", ws.multiplicity))
    rep.flags["window_limited"] = True
    return rep


def _verma_from(path):
    from .dumps import verma_from_descriptor

    return verma_from_descriptor(load_json(path))


def cmd_verma_build(args) -> Report:
    from .dumps import table_to_json, verma_dump

    mod = _verma_from(args.module)
    rep = Report("verma-build", {"module": args.module})
    table = mod.weight_table()
    rep.payload = {"weight_table": table_to_json(table), "dim": sum(table.values())}
    rep.tables.append(("PBW weight multiplicities (label = weight - mu)", table))
    if args.dump:
        write_json(args.dump, verma_dump(mod, quotient=args.quotient))
    rep.flags["leakage_terms"] = mod.leak_count
    return rep


def cmd_singular(args) -> Report:
    from .verma import find_singular_vectors

    mod = _verma_from(args.module)
    if not 1 <= args.level <= mod.depth:
        raise DescriptorError(f"option '--level': must be in 1..{mod.depth}")
    res = find_singular_vectors(mod, args.level)
    rep = Report("singular", {"module": args.module, "level": args.level})
    dims = res.dims()
    rep.payload = {"dims": [{"label": list(l), "dim": k} for l, k in sorted(dims.items())]}
    rep.tables.append((f"singular dimensions at level {args.level}", dims))
    rep.flags.update(window_limited=True, window_unreliable=res.window_unreliable)
    return rep


def cmd_quotient(args) -> Report:
    from .dumps import table_to_json
    from .verma import irreducible_quotient

    mod = _verma_from(args.module)
    q = irreducible_quotient(mod)
    table = q.weight_table()
    rep = Report("quotient", {"module": args.module})
    bad = q.support_violations()
    rep.add("support_law", not bad, [list(b) for b in bad])
    rep.add("singular_closure_in_N", not q.closure_violations, [list(b) for b in q.closure_violations[:20]])
    rep.payload = {"weight_table": table_to_json(table)}
    rep.tables.append(("quotient weight multiplicities", table))
    rep.flags.update(window_limited=True, window_unreliable=q.window_unreliable, leakage_terms=mod.leak_count)
    return rep


def cmd_classify(args) -> Report:
    from .dumps import load_module, table_to_json, view_from_dump
    from .jet import JetWindow
    from .verma import classify_truncated

    data = load_json(args.module)
    kind, obj = load_module(data)
    rep = Report("classify", {"module": args.module, "bound": args.bound})
    if kind == "jet":
        view = JetWindow(obj, args.window, args.gen_window)
    elif kind == "verma":
        view = obj
    else:
        view, stored = view_from_dump(obj)
        fresh = view.weight_table() if hasattr(view, "weight_table") else view.multiplicities()
        diff = sorted(set(stored.items()) ^ set(fresh.items()))
        rep.add("dump_consistency", not diff, [[list(l), k] for l, k in diff[:20]])
    res = classify_truncated(view, args.bound)
    rep.payload = res.to_json()
    rep.flags["window_limited"] = True
    if getattr(view, "leakage", None):
        rep.flags["leakage"] = True
    if args.expect:
        rep.add("expected_verdict", res.verdict.value == args.expect, [res.verdict.value])
    return rep


def cmd_halfplane(args) -> Report:
    from .verma import QuadraticIrrational, alpha_halfplane, find_between

    a, b, d, q = _parse_alpha(args.alpha)
    alpha = QuadraticIrrational(a, b, d, q)
    plus, minus = alpha_halfplane(alpha, args.window)
    rep = Report("halfplane", {"alpha": args.alpha, "window": args.window})
    P, Mi = set(plus), set(minus)
    anti = [list(p) for p in plus if (-p[0], -p[1]) not in Mi] + [list(p) for p in minus if (-p[0], -p[1]) not in P]
    rep.add("antisymmetry", not anti, anti[:20])
    bad = []
    for x in plus:
        for y in plus:
            s = (x[0] + y[0], x[1] + y[1])
            if max(abs(s[0]), abs(s[1])) <= args.window and s not in P:
                bad.append([list(x), list(y)])
    rep.add("closed_under_addition", not bad, bad[:20])
    rng = random.Random(args.seed)
    fails = []
    for _ in range(args.density):
        p = rng.choice(plus)
        try:
            r, s = find_between(alpha, *p)
        except ValueError:
            fails.append(list(p))
            continue
        if not (alpha.sign(r, s) > 0 and alpha.sign(p[0] - r, p[1] - s) > 0):
            fails.append(list(p))
    rep.add("density", not fails, fails)
    rep.payload = {"plus": len(plus), "minus": len(minus)}
    return rep


def _parse_alpha(text):
    """'sqrt2' or 'a,b,d,q' meaning (a + b sqrt(d))/q."""
    t = text.strip().lower()
    if t.startswith("sqrt"):
        return 0, 1, int(t[4:]), 1
    parts = _ints(text, "--alpha")
    if len(parts) == 3:
        parts = parts + (1,)
    if len(parts) != 4:
        raise DescriptorError("option '--alpha': expected 'sqrtD' or 'a,b,d[,q]'")
    return parts


# ---- entry point ---------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="divfree", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "table"), default="json")
    common.add_argument("--output", help="also write the JSON report here")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("bracket", parents=[common], help="bracket of two algebra elements")
    s.add_argument("--lhs", required=True)
    s.add_argument("--rhs", required=True)
    s.set_defaults(func=cmd_bracket)

    s = sub.add_parser("grading", parents=[common], help="basis of a graded component")
    s.add_argument("--degree", required=True, help="comma-separated lattice vector")
    s.add_argument("--algebra", choices=("Witt", "DivZero", "Extended"), default="Extended")
    s.set_defaults(func=cmd_grading)

    s = sub.add_parser("irrep", parents=[common], help="build and validate V(lambda, c)")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--lambda", dest="lam", required=True, help="comma-separated marks")
    s.add_argument("--c", default="0")
    s.add_argument("--cap", type=int, default=5000)
    s.add_argument("--save", help="write the irrep descriptor here")
    s.set_defaults(func=cmd_irrep)

    s = sub.add_parser("jet-check", parents=[common], help="Lie-action and associativity checks")
    s.add_argument("--module", required=True)
    s.add_argument("--window", type=int, default=1)
    s.add_argument("--algebra", choices=("Extended", "WittA"), default="Extended")
    s.add_argument("--jobs", type=int, default=None, help="defaults to DIVFREE_JOBS or the core count")
    s.set_defaults(func=cmd_jet_check)

    s = sub.add_parser("jet-support", parents=[common], help="weight multiplicities of a jet module")
    s.add_argument("--module", required=True)
    s.add_argument("--window", type=int, default=1)
    s.set_defaults(func=cmd_jet_support)

    s = sub.add_parser("verma-build", parents=[common], help="truncated Verma weight table")
    s.add_argument("--module", required=True)
    s.add_argument("--dump", help="write a verma dump here")
    s.add_argument("--quotient", action="store_true", help="dump the irreducible quotient")
    s.set_defaults(func=cmd_verma_build)

    s = sub.add_parser("singular", parents=[common], help="singular vectors at one level")
    s.add_argument("--module", required=True)
    s.add_argument("--level", type=int, default=1)
    s.set_defaults(func=cmd_singular)

    s = sub.add_parser("quotient", parents=[common], help="irreducible quotient and support law")
    s.add_argument("--module", required=True)
    s.set_defaults(func=cmd_quotient)

    s = sub.add_parser("classify", parents=[common], help="cuspidal / GHW classification")
    s.add_argument("--module", required=True, help="jet or verma descriptor, or a dump")
    s.add_argument("--bound", type=int, required=True)
    s.add_argument("--window", type=int, default=1, help="slice radius for jet descriptors")
    s.add_argument("--gen-window", type=int, default=None)
    s.add_argument("--expect", choices=("CuspidalConsistent", "GHW", "Inconclusive"))
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("halfplane", parents=[common], help="alpha-order half-planes")
    s.add_argument("--alpha", default="sqrt2", help="'sqrtD' or 'a,b,d,q' for (a + b sqrt d)/q")
    s.add_argument("--window", type=int, default=10)
    s.add_argument("--density", type=int, default=50, help="number of random density checks")
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_halfplane)
    return p


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code not in (0, None) else EXIT_OK
    try:
        report = args.func(args)
    except (DescriptorError, ValueError, TypeError, KeyError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"divfree {args.command}: input error: {msg}", file=sys.stderr)
        return EXIT_INPUT
    data = report.to_json()
    if args.output:
        write_json(args.output, data)
    if args.format == "table":
        print(format_table(report))
    else:
        sys.stdout.write(dumps(data))
    return EXIT_OK if report.ok else EXIT_FAIL


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
