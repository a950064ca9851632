"""Command line interface: ``vaw <command> --graph ... [args]``."""
from __future__ import annotations

import argparse
import json
import os
import sys

from . import coxeter, presentations, roots, virtual, wordproblem
from .errors import (CapExceeded, GraphParseError, MixedSignRoot, NotInKernel, NotSpherical,
                     UndeterminedLabel, VawError, WordParseError)

EXIT_OK, EXIT_PARSE, EXIT_PRECONDITION, EXIT_UNSUPPORTED, EXIT_UNDETERMINED = 0, 2, 3, 4, 5


class _ParseFailure(Exception):
    pass


class _ArgParser(argparse.ArgumentParser):
    def error(self, message):
        raise _ParseFailure(message)


def build_parser():
    common = _ArgParser(add_help=False)
    src = common.add_mutually_exclusive_group(required=True)
    src.add_argument("--graph", help="inline graph text (';' separates lines)")
    src.add_argument("--graph-file", help="path to a graph file")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--depth", type=int, default=None,
                        help="search depth for infinite groups (default 8); for roots, truncation depth")
    common.add_argument("--cap", type=int, default=None,
                        help="enumeration cap (default $VAW_CAP or 1000000)")

    p = _ArgParser(prog="vaw", description="Computations in virtual Artin groups.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_ArgParser)
    sub.add_parser("classify", parents=[common], help="spherical/affine/other per component")
    sub.add_parser("roots", parents=[common], help="list the root system")
    m = sub.add_parser("mhat", parents=[common], help="derived label of two roots")
    m.add_argument("beta")
    m.add_argument("gamma")
    pr = sub.add_parser("present", parents=[common], help="KVA or PVA presentation")
    pr.add_argument("which", choices=("kva", "pva"))
    grp = pr.add_mutually_exclusive_group()
    grp.add_argument("--support", nargs="+", help="roots spanning X")
    grp.add_argument("--full", action="store_true", help="X = all roots (finite W)")
    rw = sub.add_parser("rewrite", parents=[common], help="rewrite a kernel word over delta generators")
    rw.add_argument("word")
    sv = sub.add_parser("solve", parents=[common], help="decide triviality of a word")
    sv.add_argument("word")
    an = sub.add_parser("analyze", parents=[common], help="free-of-infinity analysis")
    an.add_argument("--support", nargs="+", help="roots spanning X (default: all roots)")
    sub.add_parser("dims", parents=[common], help="dimension report")
    return p


def parse_root(text: str, g: coxeter.CoxeterGraph, depth: int) -> roots.Root:
    """``[c1,...,cn]`` coordinates or a witness ``w1,w2,...:s``."""
    text = text.strip()
    if text.startswith("["):
        try:
            coords = roots.parse_coords(text, g)
        except ValueError as exc:
            raise WordParseError(str(exc)) from None
        beta = roots.Root(g, coords)
        try:
            return virtual.canonical_root(beta, depth)
        except ValueError as exc:
            raise _NotARoot(str(exc)) from None
    if ":" not in text:
        raise WordParseError(f"root must be [coords] or word:s, got {text!r}")
    word, s = text.rsplit(":", 1)
    letters = tuple(x for x in word.replace(",", " ").split() if x)
    for v in letters + (s,):
        if v not in g.index:
            raise WordParseError(f"unknown vertex {v!r} in root {text!r}")
    return virtual.canonical_root(roots.Root.from_witness(g, letters, s), depth)


class _NotARoot(VawError):
    pass


def _load_graph(args):
    if args.graph is not None:
        return coxeter.parse_graph(args.graph)
    try:
        with open(args.graph_file, encoding="utf-8") as fh:
            return coxeter.parse_graph(fh.read())
    except OSError as exc:
        raise GraphParseError(f"cannot read graph file: {exc}") from None


def _emit(out, args, payload, text):
    if args.format == "json":
        out.write(json.dumps(payload, indent=2) + "\n")
    else:
        out.write(text.rstrip("\n") + "\n")


def _support(args, g):
    if not args.support:
        return None
    return [parse_root(x, g, args.depth) for x in args.support]


def _cmd_classify(args, g, out):
    c = g.classification
    lines = [f"kind: {c.kind}"]
    for comp in c.components:
        lines.append(f"component {' '.join(comp.vertices)}: {comp.kind}" +
                     (f" ({comp.family})" if comp.family else ""))
    payload = {"command": "classify", **c.to_dict()}
    _emit(out, args, payload, "\n".join(lines))
    return EXIT_OK


def _cmd_roots(args, g, out):
    depth = args.explicit_depth
    if depth is None and g.classification.kind != "spherical":
        depth = args.depth
    rs = roots.enumerate_roots(g, depth, args.cap)
    rows = [{"coords": roots.format_root(r), "witness": " ".join(r.word), "simple": r.simple,
             "positive": roots.is_positive(r)} for r in rs]
    lines = [f"{len(rs)} roots" + ("" if rs.complete else f" (witness length <= {depth})")]
    lines += [f"{x['coords']}  {x['witness'] + ':' if x['witness'] else ':'}{x['simple']}" for x in rows]
    payload = {"command": "roots", "complete": rs.complete, "depth": depth, "count": len(rs), "roots": rows}
    _emit(out, args, payload, "\n".join(lines))
    return EXIT_OK


def _cmd_mhat(args, g, out):
    b = parse_root(args.beta, g, args.depth)
    c = parse_root(args.gamma, g, args.depth)
    m = roots.mhat(b, c, g, args.depth)
    value = str(m) if isinstance(m, roots.Undetermined) else roots.format_label(m)
    payload = {"command": "mhat", "beta": roots.format_root(b), "gamma": roots.format_root(c), "label": value}
    _emit(out, args, payload, value)
    return EXIT_UNDETERMINED if isinstance(m, roots.Undetermined) else EXIT_OK


def _cmd_present(args, g, out):
    X = _support(args, g)
    if X is None:
        if g.classification.kind != "spherical":
            if args.full:
                raise NotSpherical("--full needs a finite Coxeter group")
            X = roots.enumerate_roots(g, 0).simple()
    h = presentations.gamma_hat(g, X, args.depth)
    pres = presentations.kva_presentation(h) if args.which == "kva" else presentations.pva_presentation(h)
    _emit(out, args, {"command": "present", "which": args.which, **pres.to_dict()}, pres.to_text())
    return EXIT_OK


def _cmd_rewrite(args, g, out):
    w = virtual.parse_word(args.word, g)
    k = virtual.kernel_rewrite(w, args.depth)
    sup = [roots.format_root(r) for r in k.support]
    labels = [{"pair": [sup[i], sup[j]], "label": roots.format_label(m)} for (i, j), m in sorted(k.labels.items())]
    lines = [f"word: {virtual.format_kernel_word(k) or '1'}", "support: " + " ".join(sup)]
    lines += [f"label {x['pair'][0]} {x['pair'][1]}: {x['label']}" for x in labels]
    payload = {"command": "rewrite", "kernel_word": virtual.format_kernel_word(k), "support": sup,
               "labels": labels}
    _emit(out, args, payload, "\n".join(lines))
    return EXIT_OK


def _cmd_solve(args, g, out):
    w = virtual.parse_word(args.word, g)
    o = wordproblem.va_solve(g, w, args.depth)
    lines = [str(o)]
    for c in o.certificate:
        lines.append("  " + ", ".join(f"{k}={v if isinstance(v, str) else ' '.join(v)}" for k, v in c.items()))
    _emit(out, args, {"command": "solve", **o.to_dict()}, "\n".join(lines))
    return EXIT_UNSUPPORTED if o.verdict == "unsupported" else EXIT_OK


def _cmd_analyze(args, g, out):
    X = _support(args, g)
    h = presentations.gamma_hat(g, X, args.depth)
    rep = presentations.foi_analysis(h, g)
    lines = [f"{len(rep.rows)} free-of-infinity subsets",
             f"n_sph(X) = {rep.n_sph_X}, n_sph(base) = {rep.n_sph_base}: "
             f"{'holds' if rep.nsph_ok else 'FAILS'}",
             f"max |Y| = {rep.max_size} <= 2*{rep.n_sph_base}: {'holds' if rep.size_ok else 'FAILS'}"]
    for row in rep.rows:
        lines.append(f"{{{' '.join(row.subset)}}}: {row.kind}" + (f" ({row.family})" if row.family else "") +
                     f" n_sph={row.n_sph}")
    _emit(out, args, {"command": "analyze", **rep.to_dict()}, "\n".join(lines))
    return EXIT_OK if rep.ok else EXIT_PRECONDITION


def _cmd_dims(args, g, out):
    rep = presentations.dimension_report(g)
    _emit(out, args, {"command": "dims", **rep}, presentations.format_dimension_report(rep))
    return EXIT_OK


COMMANDS = {"classify": _cmd_classify, "roots": _cmd_roots, "mhat": _cmd_mhat, "present": _cmd_present,
            "rewrite": _cmd_rewrite, "solve": _cmd_solve, "analyze": _cmd_analyze, "dims": _cmd_dims}


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
    except _ParseFailure as exc:
        err.write(f"vaw: {exc}\n")
        return EXIT_PARSE
    args.explicit_depth = args.depth
    if args.depth is None:
        args.depth = roots.DEFAULT_DEPTH
    if args.cap is None:
        args.cap = int(os.environ.get("VAW_CAP", coxeter.DEFAULT_CAP))
    try:
        g = _load_graph(args)
        return COMMANDS[args.command](args, g, out)
    except (GraphParseError, WordParseError) as exc:
        err.write(f"vaw: parse error: {exc}\n")
        return EXIT_PARSE
    except UndeterminedLabel as exc:
        err.write(f"vaw: {exc}\n")
        return EXIT_UNDETERMINED
    except (NotInKernel, NotSpherical, CapExceeded, MixedSignRoot, _NotARoot, VawError) as exc:
        err.write(f"vaw: {exc}\n")
        return EXIT_PRECONDITION


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
