"""Command-line entry point: ``soficdyn <subcommand> ...``.

Exit codes: 0 when a verdict was produced (negative verdicts included), 1 on
errors, 2 when a semi-algorithm ran out of its bound.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import random
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from . import autospace as A
from . import beta as B
from . import metric as M
from . import symbolic as S
from . import toral as T
from .errors import SoficError
from .quadratic import QuadraticNumber

EXIT_OK, EXIT_ERROR, EXIT_BOUND = 0, 1, 2


@dataclass
class Report:
    op: str
    verdict: str
    lines: list[str] = field(default_factory=list)
    window: int | None = None
    witnesses: list = field(default_factory=list)
    extra: dict = field(default_factory=dict)
    inputs: dict = field(default_factory=dict)
    exit_code: int = EXIT_OK


def _read(path: str, inputs: dict) -> str:
    text = Path(path).read_text()
    inputs[path] = hashlib.sha256(text.encode()).hexdigest()
    return text


def _word(w) -> str:
    return " ".join(w) if any(len(t) > 1 for t in w) else "".join(w)


def _frac(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _presentation(path, inputs):
    return S.from_text(_read(path, inputs))


def _relation(path, inputs):
    return S.relation_from_text(_read(path, inputs))


# -- subcommands ---------------------------------------------------------------------

def cmd_check_sft(a) -> Report:
    r = Report("check-sft", "")
    x = _presentation(a.file, r.inputs)
    mf = S.minimal_forbidden_words(x)
    if mf.finite:
        words = [_word(w) for w in mf.words]
        r.verdict = "SFT"
        r.window = max((len(w) for w in mf.words), default=0)
        r.lines.append(f"SFT: yes; minimal forbidden: {', '.join(words) if words else '(none)'}")
        r.witnesses = words
    else:
        sample = [_word(w) for w in mf.sample(a.limit)]
        r.verdict = "not SFT"
        r.lines.append(f"SFT: no; infinitely many minimal forbidden words, e.g. {', '.join(sample)}")
        r.witnesses = sample
    return r


def cmd_min_forbidden(a) -> Report:
    r = Report("min-forbidden", "")
    x = _presentation(a.file, r.inputs)
    mf = S.minimal_forbidden_words(x)
    words = mf.words if mf.finite else mf.sample(a.limit)
    r.verdict = "finite" if mf.finite else "infinite"
    r.witnesses = [_word(w) for w in words]
    r.lines.append(f"{r.verdict} set of minimal forbidden words")
    r.lines += r.witnesses
    return r


def cmd_compose(a) -> Report:
    r = Report("compose", "composed")
    c = S.compose(_relation(a.r, r.inputs), _relation(a.s, r.inputs))
    r.lines.append(S.relation_to_text(c).rstrip())
    r.extra["vertices"] = c.presentation.n
    return r


def cmd_transitive_closure(a) -> Report:
    r = Report("transitive-closure", "")
    rel, x = _relation(a.r, r.inputs), _presentation(a.x, r.inputs)
    out = S.transitive_closure_semialg(rel, x, a.mmax)
    if isinstance(out, S.Closed):
        r.verdict = f"closed at m = {out.m}"
        r.window = out.m
        r.lines.append(r.verdict)
        r.lines.append(S.relation_to_text(out.relation).rstrip())
    else:
        r.verdict = f"not transitive after {out.m_max} rounds"
        r.lines.append(r.verdict)
        r.exit_code = EXIT_BOUND
    return r


def cmd_equivalence(a) -> Report:
    r = Report("equivalence", "")
    rel, x = _relation(a.r, r.inputs), _presentation(a.x, r.inputs)
    rep = S.equivalence_check(rel, x)
    r.verdict = "equivalence" if rep.is_equivalence else "not an equivalence"
    r.extra = {"reflexive": rep.reflexive, "symmetric": rep.symmetric, "transitive": rep.transitive}
    r.lines.append(f"reflexive: {rep.reflexive}; symmetric: {rep.symmetric}; transitive: {rep.transitive}")
    return r


def cmd_expansive(a) -> Report:
    r = Report("expansive", "")
    y, z = _presentation(a.y, r.inputs), _relation(a.z, r.inputs)
    out = S.is_expansive(y, z, k_max=a.kmax)
    if isinstance(out, S.ExpansiveWithWindow):
        r.verdict, r.window = "expansive", out.k
        r.lines.append(f"expansive: window {out.k}")
    elif isinstance(out, S.NotExpansive):
        r.verdict = "not expansive"
        r.witnesses = [_word(w) for w in out.witnesses]
        r.lines.append(f"not expansive; kernel forbids infinitely many words, e.g. {', '.join(r.witnesses)}")
    else:
        r.verdict = f"unknown within k <= {out.k_max}"
        r.witnesses = [_word(w) for w in out.witnesses]
        r.lines.append(r.verdict)
        r.lines += [f"k={k}: {w}" for k, w in enumerate(r.witnesses, 1)]
        r.exit_code = EXIT_BOUND
    return r


def cmd_entropy(a) -> Report:
    r = Report("entropy", "")
    h = S.entropy(_presentation(a.file, r.inputs))
    r.verdict = f"{h:.12g}"
    r.lines.append(f"entropy (natural log): {h:.12g}")
    return r


def _system(a, inputs):
    if a.system == "interval":
        return M.interval_system()
    if a.system:
        return M.parse_graph_system(_read(a.system, inputs))
    return M.build_shift_graph_system(_presentation(a.y, inputs), _relation(a.z, inputs))


def _point(text, g):
    if isinstance(g, M.ExplicitGraphSystem):
        return tuple(text.split(","))
    return S.EventuallyPeriodicPoint.parse(text)


def cmd_metric_bracket(a) -> Report:
    r = Report("metric-bracket", "")
    g = _system(a, r.inputs)
    x, y = _point(a.x, g), _point(a.yp, g)
    depth = a.depth if a.depth is not None else 3
    if depth > a.mmax:
        raise ValueError(f"depth {depth} exceeds --mmax {a.mmax}")
    rows = []
    for m in range(1, depth + 1):
        b = M.distance_bracket(g, x, y, m)
        rows.append({"m": m, "lower": _frac(b.lower), "upper": _frac(b.upper)})
        r.lines.append(f"m={m}: [{_frac(b.lower)}, {_frac(b.upper)}]  ~ [{float(b.lower):.6g}, {float(b.upper):.6g}]")
    r.verdict = f"[{rows[-1]['lower']}, {rows[-1]['upper']}]"
    r.extra["brackets"] = rows
    return r


def cmd_dimension_bound(a) -> Report:
    r = Report("dimension-bound", "")
    y, z = _presentation(a.y, r.inputs), _relation(a.z, r.inputs)
    q, c = M.telescope_constant(y, z)
    v = M.dimension_upper_bound(y, z)
    r.verdict = f"{v:.12g}"
    r.extra = {"q": q, "c": c}
    r.lines.append(f"dimension <= {v:.12g}  (c = {c}, q = {q})")
    return r


def _matrix(text: str):
    rows = [[int(v) for v in row.split(",")] for row in text.replace(" ", "").split(";")]
    if len(rows) != 2 or any(len(row) != 2 for row in rows):
        raise ValueError("matrix must be 2x2, e.g. '1,1;1,0'")
    return rows


def cmd_toral_kernel(a) -> Report:
    r = Report("toral-kernel", "")
    spec = T.toral_spec(_matrix(a.matrix), a.digits)
    cover = _presentation(a.cover, r.inputs) if a.cover else None
    k = T.toral_kernel(spec, cover)
    r.verdict = "kernel"
    r.extra = {"digits": spec.n, "box": len(T.lattice_box(spec)), "vertices": k.presentation.n}
    r.lines.append(f"digits 0..{spec.n - 1}; lattice box of {len(T.lattice_box(spec))} points")
    r.lines.append(S.relation_to_text(k).rstrip())
    return r


def cmd_golden_pipeline(a) -> Report:
    r = Report("golden-pipeline", "")
    gp = T.golden_pipeline()
    prof = gp.profile()
    r.verdict = f"{len(gp.patterns)} patterns"
    r.extra["profile"] = {str(k): v for k, v in sorted(prof.items())}
    r.lines.append(f"{len(gp.patterns)} minimal forbidden patterns without 11 on either track; "
                   + ", ".join(f"width {k}: {v}" for k, v in sorted(prof.items())))
    if a.emit_patterns:
        for w in gp.patterns:
            top, bottom = T.pattern_rows(w)
            r.lines.append(f"{top} {bottom}")
        r.witnesses = [" ".join(T.pattern_rows(w)) for w in gp.patterns]
    return r


def cmd_mult_table(a) -> Report:
    r = Report("mult-table", "closed")
    X, rels = T.golden_table_relations()
    table = T.multiplication_table(rels, X)
    r.lines.append(table.format())
    r.extra["table"] = {f"{x} o {y}": v for (x, y), v in table.entries.items()}
    return r


def cmd_beta_classify(a) -> Report:
    r = Report("beta-classify", "")
    if a.dstar:
        d = B.parse_dstar(a.dstar)
    elif a.beta:
        g = B.greedy_dstar(QuadraticNumber.parse(a.beta), a.prefix, max_steps=max(a.prefix, 200))
        r.lines.append(f"d_beta(1) prefix: {''.join(map(str, g.digits))}")
        if g.dstar is None:
            r.verdict = "no eventually periodic d* detected"
            r.lines.append(r.verdict)
            r.exit_code = EXIT_BOUND
            return r
        d = g.dstar
    else:
        raise ValueError("give --dstar u:v or --beta EXPR")
    rep = B.classify_beta(d)
    r.verdict = rep.cls.value
    r.extra = {"dstar": str(d), "shift_window": rep.shift_window, "kernel_window": rep.kernel_window,
               "shift_forbidden": [_word(w) for w in rep.shift_forbidden],
               "kernel_forbidden": [_word(w) for w in rep.kernel_forbidden]}
    r.lines.append(f"d* = {d}: {rep.cls.value}")
    r.lines.append(f"S_beta forbidden: {', '.join(r.extra['shift_forbidden']) or '(none)'}")
    r.lines.append(f"K_beta forbidden (sample): {', '.join(r.extra['kernel_forbidden']) or '(none)'}")
    return r


def cmd_simplicial(a) -> Report:
    r = Report("simplicial", "")
    text = _read(a.facets_file, r.inputs).strip() if a.facets_file else a.facets
    k = A.SimplicialComplex.parse(text)
    space = A.simplex_space(k)
    r.extra = {"d": k.d, "states": space.y.n_states, "remainders": sorted(A.remainder_states(space))}
    r.verdict = "automatic"
    r.lines.append(f"complex on {k.d} vertices, {len(k.facets)} facets; prefix automaton with "
                   f"{space.y.n_states} states; remainders {sorted(A.remainder_states(space))}")
    if a.suspend:
        y, z = A.suspension(space, side=a.suspend)
        r.extra["suspension"] = {"y_vertices": y.n, "z_vertices": z.presentation.n}
        if a.emit == "sofic-pair":
            r.lines.append(S.to_text(y).rstrip())
            r.lines.append("---")
            r.lines.append(S.relation_to_text(z).rstrip())
        else:
            r.lines.append(f"suspension ({a.suspend}): Y has {y.n} vertices, Z has {z.presentation.n}")
    return r


def cmd_dot_export(a) -> Report:
    r = Report("dot-export", "dot")
    r.lines.append(S.to_dot(_presentation(a.file, r.inputs)).rstrip())
    return r


# -- parser --------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit a JSON report")
    common.add_argument("--kmax", type=int, default=12, help="window bound for expansivity")
    common.add_argument("--mmax", type=int, default=7, help="depth / round bound")
    common.add_argument("--depth", type=int, default=None, help="bracket depth m")
    common.add_argument("--seed", type=int, default=None, help="seed for randomized helpers")

    p = argparse.ArgumentParser(prog="soficdyn", description="Sofic shifts, sofic relations and their quotients.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.set_defaults(fn=fn)
        return sp

    sp = add("check-sft", cmd_check_sft, "decide whether a sofic shift is an SFT")
    sp.add_argument("file")
    sp.add_argument("--limit", type=int, default=6)
    sp = add("min-forbidden", cmd_min_forbidden, "list minimal forbidden words")
    sp.add_argument("file")
    sp.add_argument("--limit", type=int, default=20)
    sp = add("compose", cmd_compose, "compose two relations")
    sp.add_argument("r")
    sp.add_argument("s")
    sp = add("transitive-closure", cmd_transitive_closure, "iterate R until transitive")
    sp.add_argument("r")
    sp.add_argument("x")
    sp = add("equivalence", cmd_equivalence, "check reflexivity, symmetry, transitivity")
    sp.add_argument("r")
    sp.add_argument("x")
    sp = add("expansive", cmd_expansive, "expansivity of Y/Z")
    sp.add_argument("y")
    sp.add_argument("z")
    sp = add("entropy", cmd_entropy, "topological entropy")
    sp.add_argument("file")
    sp = add("metric-bracket", cmd_metric_bracket, "certified distance brackets")
    sp.add_argument("y", nargs="?")
    sp.add_argument("z", nargs="?")
    sp.add_argument("--system", help="'interval' or a leveled graph-system file")
    sp.add_argument("--x", required=True, help="point, e.g. (0)1(0), or a comma-separated ray")
    sp.add_argument("--y", dest="yp", required=True, help="second point")
    sp = add("dimension-bound", cmd_dimension_bound, "upper bound on topological dimension")
    sp.add_argument("y")
    sp.add_argument("z")
    sp = add("toral-kernel", cmd_toral_kernel, "kernel of a hyperbolic toral automorphism coding")
    sp.add_argument("--matrix", default="1,1;1,0")
    sp.add_argument("--digits", type=int, default=None)
    sp.add_argument("--cover", default=None, help="sofic cover file (default: full digit shift)")
    sp = add("golden-pipeline", cmd_golden_pipeline, "golden-mean kernel and its forbidden patterns")
    sp.add_argument("--emit-patterns", action="store_true")
    add("mult-table", cmd_mult_table, "composition table of the golden relations")
    sp = add("beta-classify", cmd_beta_classify, "classify a beta-shift quotient")
    sp.add_argument("--dstar", help="u:v for d* = u v^inf")
    sp.add_argument("--beta", help="quadratic number, e.g. (1+sqrt(5))/2")
    sp.add_argument("--prefix", type=int, default=20)
    sp = add("simplicial", cmd_simplicial, "automatic presentation of a simplicial complex")
    sp.add_argument("--facets", default=None, help="e.g. 12,13,23")
    sp.add_argument("--facets-file", default=None)
    sp.add_argument("--suspend", choices=["N", "Z"], default=None)
    sp.add_argument("--emit", choices=["summary", "sofic-pair"], default="summary")
    sp = add("dot-export", cmd_dot_export, "Graphviz export of a presentation")
    sp.add_argument("file")
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_ERROR if e.code else EXIT_OK
    if args.seed is not None:
        random.seed(args.seed)
    if args.command == "simplicial" and not (args.facets or args.facets_file):
        print("error: give --facets or --facets-file", file=sys.stderr)
        return EXIT_ERROR
    t0 = time.perf_counter()
    try:
        rep = args.fn(args)
    except (SoficError, ValueError, OSError, KeyError) as e:
        msg = str(e).splitlines()[0] if str(e) else type(e).__name__
        if args.json:
            print(json.dumps({"op": args.command, "error": type(e).__name__, "message": msg}))
        else:
            print(f"error: {type(e).__name__}: {msg}", file=sys.stderr)
        return EXIT_ERROR
    if args.json:
        out = {"op": rep.op, "verdict": rep.verdict, "window": rep.window, "witnesses": rep.witnesses,
               "inputs": rep.inputs, "timing_s": round(time.perf_counter() - t0, 3), **rep.extra}
        print(json.dumps(out, sort_keys=True))
    else:
        print("\n".join(rep.lines))
    return rep.exit_code


if __name__ == "__main__":
    sys.exit(main())
