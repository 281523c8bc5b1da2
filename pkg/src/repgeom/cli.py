"""Command line front end: ``repgeom <subcommand> ...``.

Exit codes: 0 computed true / success, 1 computed false / witness found,
2 usage, input or budget error. Errors are printed as ``error[<code>]: ...``.
"""

import argparse
import json
import os
import sys

from .errors import WorkbenchError
from .field import field_from_spec
from .fox import iterated_fox, taylor_expand, truncate, TruncatedElement
from .geometry import (
    DEFAULT_MAX_CANDIDATES, EquationSet, QuasiIdentity, algebraic_set, check_quasi_identity,
    closed_submodule_signature, closure_member, count_points, find_counterexample,
    group_closure_member, refute_equivalence,
)
from .group_algebra import (
    RightIdealBasis, annihilator, kernel_via_ideal, quotient_module_representation, stabilizer,
)
from .operators import (
    FilterSpec, cartesian_product, filtered_product, generated_subrepresentation, inflate_along_epimorphism,
    factor_group,
)
from .parser import parse_module_expr, parse_ring_expr, parse_word
from .repfile import load_rep, rep_to_data
from .representation import (
    DEFAULT_GROUP_BOUND, action_kernel, eval_point, faithful_image, regular_representation,
)


class UsageError(WorkbenchError):
    code = "usage"


class Report:
    def __init__(self, code=0, result="ok"):
        self.code = code
        self.lines = []
        self.record = {"result": result, "witness": None, "seed": None, "points_enumerated": None}

    def line(self, text):
        self.lines.append(text)

    def render(self, fmt):
        if fmt == "json":
            return json.dumps(self.record, sort_keys=True) + "\n"
        return "".join(line + "\n" for line in self.lines)


# ---------------------------------------------------------------- argument helpers

def _ints(text):
    text = text.replace(",", " ").strip()
    try:
        return [int(x) for x in text.split()] if text else []
    except ValueError:
        raise UsageError(f"expected integers, got {text!r}") from None


def _budget_points(args):
    if args.max_points is not None:
        return args.max_points
    return int(os.environ.get("REPGEOM_MAX_POINTS", "1000000"))


def _load(args, path):
    return load_rep(path, bound=args.max_group)


def _equations(rep, args):
    action = [parse_module_expr(t, rep.field) for t in (args.eq or [])]
    group = [parse_word(t) for t in (getattr(args, "group_eq", None) or [])]
    return EquationSet(action, group)


def _fmt_vec(v):
    return "(" + ",".join(str(int(x)) for x in v) + ")"


def _fmt_point(pt):
    alpha = " ".join(f"x{k + 1}={_fmt_vec(v)}" for k, v in enumerate(pt.alpha))
    beta = " ".join(f"y{k + 1}=g{b}" for k, b in enumerate(pt.beta))
    return " ".join(s for s in (alpha, beta) if s)


def _dims(args, *sources):
    nx = max([args.nx or 0] + [s.max_x() for s in sources])
    ny = max([args.ny or 0] + [s.max_y() for s in sources])
    return nx, ny


def _rep_report(rep, report):
    import yaml
    data = rep_to_data(rep)
    report.record["rep"] = data
    report.record["order"] = rep.order
    report.line(f"# |G| = {rep.order}, dim V = {rep.action_dim}")
    report.lines.extend(yaml.safe_dump(data, sort_keys=False, default_flow_style=None).rstrip("\n").split("\n"))
    return report


def _elements_list(name, elems, report):
    report.record[name] = list(elems)
    report.line(f"{name}: " + (" ".join(f"g{i}" for i in elems) or "(none)"))


# ---------------------------------------------------------------- core algebra

def cmd_fox(args):
    field = field_from_spec(args.field)
    u = parse_ring_expr(args.expr, field)
    v = iterated_fox(args.var, u, args.rank)
    r = Report()
    r.record["value"] = str(v)
    r.line(str(v))
    return r


def cmd_taylor(args):
    field = field_from_spec(args.field)
    u = parse_ring_expr(args.expr, field)
    head, tail = taylor_expand(u, args.order, args.rank)
    r = Report()
    r.record["head"] = {",".join(map(str, s)): str(field.signed(c)) for s, c in sorted(head.items())}
    r.record["tail"] = {",".join(map(str, s)): str(v) for s, v in sorted(tail.items())}
    for s, c in sorted(head.items(), key=lambda kv: (len(kv[0]), kv[0])):
        r.line(f"e[{','.join(map(str, s))}] = {field.signed(c)}")
    for s, v in sorted(tail.items()):
        r.line(f"d[{','.join(map(str, s))}] = {v}")
    return r


def cmd_truncate(args):
    field = field_from_spec(args.field)
    u = parse_ring_expr(args.expr, field)
    t = truncate(u, args.degree, args.rank)
    vec = [str(field.signed(c)) for c in t.vector()]
    r = Report()
    r.record["value"] = str(t)
    r.record["coordinates"] = vec
    r.line(str(t))
    r.line(f"dim {TruncatedElement.dimension(t.m, t.n)}: [{' '.join(vec)}]")
    return r


# ---------------------------------------------------------------- geometry

def cmd_eval(args):
    rep = _load(args, args.rep)
    w = parse_module_expr(args.expr, rep.field)
    alpha = [_ints(v) for v in (args.alpha or [])]
    beta = _ints(args.beta or "")
    for b in beta:
        if not 0 <= b < rep.order:
            raise UsageError(f"group element index {b} out of range 0..{rep.order - 1}")
    if len(alpha) < w.max_x() or len(beta) < w.max_y():
        raise UsageError("assignment does not cover every variable of the expression")
    value = eval_point(rep, alpha, beta, w)
    r = Report()
    r.record["value"] = list(value)
    r.line(_fmt_vec(value))
    return r


def cmd_vset(args):
    rep = _load(args, args.rep)
    T = _equations(rep, args)
    nx, ny = _dims(args, T)
    pts = algebraic_set(rep, T, nx, ny, _budget_points(args))
    r = Report()
    r.record["points_enumerated"] = count_points(rep, nx, ny)
    r.record["points"] = [{"alpha": [list(v) for v in p.alpha], "beta": list(p.beta)} for p in pts]
    r.line(f"points: {len(pts)} of {count_points(rep, nx, ny)}")
    for p in pts:
        r.line(_fmt_point(p))
    return r


def cmd_closure(args):
    rep = _load(args, args.rep)
    T = _equations(rep, args)
    if (args.w0 is None) == (args.f0 is None):
        raise UsageError("give exactly one of --w0 or --f0")
    if args.w0 is not None:
        target = parse_module_expr(args.w0, rep.field)
        nx, ny = _dims(args, T, EquationSet([target]))
        inside = closure_member(rep, T, target, nx, ny, _budget_points(args))
    else:
        target = parse_word(args.f0)
        nx, ny = _dims(args, T, EquationSet((), [target]))
        inside = group_closure_member(rep, T, target, nx, ny, _budget_points(args))
    r = Report(0 if inside else 1, "true" if inside else "false")
    r.record["points_enumerated"] = count_points(rep, nx, ny)
    r.line("IN CLOSURE" if inside else "NOT IN CLOSURE")
    return r


def cmd_qcheck(args):
    rep = _load(args, args.rep)
    prem = [parse_module_expr(t, rep.field) for t in (args.premise or [])]
    gprem = [parse_word(t) for t in (args.group_premise or [])]
    if (args.conclusion is None) == (args.group_conclusion is None):
        raise UsageError("give exactly one of --conclusion or --group-conclusion")
    if args.conclusion is not None:
        q = QuasiIdentity(prem, parse_module_expr(args.conclusion, rep.field), gprem)
    else:
        q = QuasiIdentity(prem, None, gprem, parse_word(args.group_conclusion))
    nx = max(args.nx or 0, q.max_x())
    ny = max(args.ny or 0, q.max_y())
    budget = _budget_points(args)
    holds = check_quasi_identity(rep, q, nx, ny, budget)
    r = Report(0 if holds else 1, "true" if holds else "false")
    r.record["points_enumerated"] = count_points(rep, nx, ny)
    r.line("HOLDS" if holds else "FAILS")
    if not holds:
        pt = find_counterexample(rep, q, nx, ny, budget)
        r.record["witness"] = _fmt_point(pt)
        r.line(f"counterexample: {_fmt_point(pt)}")
    return r


def cmd_equiv(args):
    rep1 = _load(args, args.rep1)
    rep2 = _load(args, args.rep2)
    res = refute_equivalence(
        rep1, rep2, nx=args.nx or 1, ny=args.ny or 1, max_premises=args.max_premises,
        max_len=args.max_len, budget=args.budget, seed=args.seed, workers=args.workers,
        max_points=_budget_points(args),
    )
    w = res.witness
    r = Report(1 if w else 0, "witness" if w else "none")
    r.record["seed"] = args.seed
    r.record["sampled"] = res.sampled
    r.record["candidates_checked"] = res.candidates_checked
    r.record["candidates_total"] = res.candidates_total
    if w:
        prem = "; ".join(str(p) for p in w.premises) or "(none)"
        side = args.rep1 if w.closed_in == 1 else args.rep2
        r.record["witness"] = {"premises": [str(p) for p in w.premises], "conclusion": str(w.conclusion),
                               "closed_in": w.closed_in}
        r.line("NOT EQUIVALENT")
        r.line(f"premises: {prem}")
        r.line(f"conclusion: {w.conclusion}")
        r.line(f"holds in: {side}")
    else:
        r.line("NO WITNESS (inconclusive within bounds)")
    mode = "sampled" if res.sampled else "exhaustive"
    r.line(f"searched: {res.candidates_checked} of {res.candidates_total} premise sets ({mode})")
    r.line(f"seed: {args.seed}")
    return r


def cmd_chain(args):
    rep = _load(args, args.rep)
    eqs = [parse_module_expr(t, rep.field) for t in (args.eq or [])]
    nx, ny = _dims(args, EquationSet(eqs))
    nx, ny = max(nx, 1), max(ny, 1)
    sigs = []
    for i in range(len(eqs) + 1):
        sigs.append(closed_submodule_signature(rep, EquationSet(eqs[:i]), args.max_len, nx, ny,
                                               _budget_points(args)))
    monotone = all(all(a <= b for a, b in zip(s, t)) for s, t in zip(sigs, sigs[1:]))
    stable = next(i for i in range(len(sigs)) if all(s == sigs[i] for s in sigs[i:]))
    r = Report(0 if monotone else 1, "true" if monotone else "false")
    r.record["weights"] = [sum(s) for s in sigs]
    r.record["stable_from"] = stable
    for i, s in enumerate(sigs):
        r.line(f"T{i}: {sum(s)} of {len(s)} candidates closed")
    r.line(f"monotone: {'yes' if monotone else 'no'}")
    r.line(f"stable from: T{stable}")
    return r


# ---------------------------------------------------------------- group algebra

def _ideal(rep, rows):
    vecs = [_ints(v) for v in rows or []]
    for v in vecs:
        if len(v) != rep.order:
            raise UsageError(f"ideal vectors need {rep.order} coordinates (one per group element)")
    return RightIdealBasis.span(rep, vecs)


def cmd_ann(args):
    rep = _load(args, args.rep)
    vecs = [_ints(v) for v in args.vec or []]
    ann = annihilator(rep, vecs)
    r = Report()
    r.record["dim"] = ann.dim
    r.record["basis"] = [list(b) for b in ann.basis]
    r.line(f"dim {ann.dim} (coordinates over g0..g{rep.order - 1})")
    for b in ann.basis:
        r.line(_fmt_vec(b))
    return r


def cmd_stab(args):
    rep = _load(args, args.rep)
    vecs = [_ints(v) for v in args.vec or []]
    st = stabilizer(rep, vecs)
    r = Report()
    r.record["ann_dim"] = st.ann.dim
    _elements_list("elements", st.group_elements(), r)
    r.line(f"1 + ann, ann of dim {st.ann.dim}")
    return r


def cmd_ker(args):
    rep = _load(args, args.rep)
    r = Report()
    if args.ideal:
        _elements_list("kernel", kernel_via_ideal(rep, _ideal(rep, args.ideal)), r)
    else:
        _elements_list("kernel", action_kernel(rep), r)
    return r


def cmd_regular(args):
    return _rep_report(regular_representation(_load(args, args.rep)), Report())


def cmd_quotmod(args):
    rep = _load(args, args.rep)
    q, _ = quotient_module_representation(rep, _ideal(rep, args.ideal))
    return _rep_report(q, Report())


# ---------------------------------------------------------------- operators

def cmd_product(args):
    reps = [_load(args, p) for p in args.reps]
    if not reps and args.p is None:
        raise UsageError("an empty product needs --p")
    return _rep_report(cartesian_product(reps, p=args.p, bound=args.max_group), Report())


def cmd_fprod(args):
    reps = [_load(args, p) for p in args.reps]
    sets = [_ints(s) for s in args.set or []]
    n = len(reps)
    flt = FilterSpec.generated_by(n, sets) if args.generate else FilterSpec(n, sets)
    fp = filtered_product(reps, flt, bound=args.max_group)
    r = _rep_report(fp.rep, Report())
    r.record["core"] = list(fp.core)
    r.lines.insert(0, "# core: " + " ".join(map(str, fp.core)))
    return r


def cmd_subrep(args):
    rep = _load(args, args.rep)
    sub = generated_subrepresentation(rep, [_ints(v) for v in args.vec or []], _ints(args.elems or ""))
    r = _rep_report(sub.as_representation(), Report())
    r.record["module_basis"] = [list(b) for b in sub.module_basis]
    r.record["group"] = list(sub.group)
    return r


def cmd_quot(args):
    rep = _load(args, args.rep)
    normal = _ints(args.normal) if args.normal is not None else action_kernel(rep)
    return _rep_report(factor_group(rep, normal), Report())


def cmd_inflate(args):
    rep = _load(args, args.rep)
    big = _load(args, args.larger)
    gens = [big.group_matrix(i) for i in big.generators]
    return _rep_report(inflate_along_epimorphism(rep, gens, _ints(args.images), bound=args.max_group), Report())


def cmd_faithful(args):
    return _rep_report(faithful_image(_load(args, args.rep)), Report())


# ---------------------------------------------------------------- parser

def _positive(text):
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["text", "json"], default="text")
    common.add_argument("--max-points", type=_positive, default=None,
                        help="point enumeration budget (default $REPGEOM_MAX_POINTS or 1e6)")
    common.add_argument("--max-group", type=_positive, default=DEFAULT_GROUP_BOUND)

    algebra = argparse.ArgumentParser(add_help=False)
    algebra.add_argument("--field", default="q", help="'q' or a prime p (default q)")
    algebra.add_argument("--rank", type=_positive, default=None, help="number of generators m")

    dims = argparse.ArgumentParser(add_help=False)
    dims.add_argument("--nx", type=int, default=None, help="|X|")
    dims.add_argument("--ny", type=int, default=None, help="|Y|")

    parser = argparse.ArgumentParser(prog="repgeom", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, *parents, help=None):
        sp = sub.add_parser(name, parents=[common, *parents], help=help)
        sp.set_defaults(fn=fn)
        return sp

    sp = add("fox", cmd_fox, algebra, help="iterated Fox derivative")
    sp.add_argument("--var", type=_positive, action="append", required=True,
                    help="generator index; repeat for iterated derivatives")
    sp.add_argument("expr")

    sp = add("taylor", cmd_taylor, algebra, help="Taylor coefficients up to order k")
    sp.add_argument("--order", "-k", type=_positive, required=True)
    sp.add_argument("expr")

    sp = add("truncate", cmd_truncate, algebra, help="image modulo the n-th augmentation power")
    sp.add_argument("--degree", "-n", type=_positive, required=True)
    sp.add_argument("expr")

    sp = add("eval", cmd_eval, help="evaluate a module element at a point")
    sp.add_argument("rep")
    sp.add_argument("expr")
    sp.add_argument("--alpha", action="append", help="vector for x1, x2, ... (repeat)")
    sp.add_argument("--beta", help="group element indices for y1, y2, ...")

    sp = add("vset", cmd_vset, dims, help="algebraic set of equations")
    sp.add_argument("rep")
    sp.add_argument("--eq", action="append")
    sp.add_argument("--group-eq", action="append")

    sp = add("closure", cmd_closure, dims, help="closure membership")
    sp.add_argument("rep")
    sp.add_argument("--eq", action="append")
    sp.add_argument("--group-eq", action="append")
    sp.add_argument("--w0")
    sp.add_argument("--f0")

    sp = add("qcheck", cmd_qcheck, dims, help="quasi-identity satisfaction")
    sp.add_argument("rep")
    sp.add_argument("--premise", action="append")
    sp.add_argument("--group-premise", action="append")
    sp.add_argument("--conclusion")
    sp.add_argument("--group-conclusion")

    sp = add("equiv", cmd_equiv, dims, help="bounded search for a non-equivalence witness")
    sp.add_argument("rep1")
    sp.add_argument("rep2")
    sp.add_argument("--max-len", type=int, default=2)
    sp.add_argument("--max-premises", type=int, default=1)
    sp.add_argument("--budget", type=_positive, default=DEFAULT_MAX_CANDIDATES)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--workers", type=_positive, default=1)

    sp = add("chain", cmd_chain, dims, help="closure signatures along a chain of equation sets")
    sp.add_argument("rep")
    sp.add_argument("--eq", action="append")
    sp.add_argument("--max-len", type=int, default=2)

    sp = add("ann", cmd_ann, help="annihilator of vectors in KG")
    sp.add_argument("rep")
    sp.add_argument("--vec", action="append")

    sp = add("stab", cmd_stab, help="stabilizer 1 + ann")
    sp.add_argument("rep")
    sp.add_argument("--vec", action="append")

    sp = add("ker", cmd_ker, help="action kernel, or (1 + U) n G for a two-sided ideal U")
    sp.add_argument("rep")
    sp.add_argument("--ideal", action="append", help="spanning vector of U over g0..g(n-1)")

    sp = add("regular", cmd_regular, help="regular representation of the group")
    sp.add_argument("rep")

    sp = add("quotmod", cmd_quotmod, help="quotient module KG/U")
    sp.add_argument("rep")
    sp.add_argument("--ideal", action="append")

    sp = add("product", cmd_product, help="Cartesian product")
    sp.add_argument("reps", nargs="*")
    sp.add_argument("--p", type=int, default=None, help="field for the empty product")

    sp = add("fprod", cmd_fprod, help="filtered product over explicit filter sets")
    sp.add_argument("reps", nargs="+")
    sp.add_argument("--set", action="append", help="member set of the filter (1-based indices)")
    sp.add_argument("--generate", action="store_true", help="take the filter generated by the sets")

    sp = add("subrep", cmd_subrep, help="generated subrepresentation")
    sp.add_argument("rep")
    sp.add_argument("--vec", action="append")
    sp.add_argument("--elems", help="group element indices")

    sp = add("quot", cmd_quot, help="quotient of the group by a normal subgroup acting trivially")
    sp.add_argument("rep")
    sp.add_argument("--normal", help="element indices (default: the action kernel)")

    sp = add("inflate", cmd_inflate, help="pull back along an epimorphism")
    sp.add_argument("rep")
    sp.add_argument("larger", help="rep file whose group generators define the larger group")
    sp.add_argument("--images", required=True, help="image element index of each generator")

    sp = add("faithful", cmd_faithful, help="faithful image (V, G/ker)")
    sp.add_argument("rep")
    return parser


def run_command(argv, stdout=None, stderr=None):
    """Run one command; returns the exit code."""
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        report = args.fn(args)
    except WorkbenchError as exc:
        stderr.write(f"error[{exc.code}]: {exc}\n")
        return 2
    except (ValueError, ZeroDivisionError) as exc:
        stderr.write(f"error[usage]: {exc}\n")
        return 2
    except OSError as exc:
        stderr.write(f"error[io]: {exc}\n")
        return 2
    stdout.write(report.render(args.format))
    return report.code


def main(argv=None):
    sys.exit(run_command(sys.argv[1:] if argv is None else argv))


if __name__ == "__main__":
    main()
