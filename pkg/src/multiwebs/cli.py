"""Command-line front end.

Subcommands: ``verify``, ``annulus``, ``skein``, ``pants``, ``sample``.
Exit codes: 0 ok, 2 input error, 3 determinant/trace mismatch, 4 surface not
supported.  ``--format machine`` prints one JSON object with a fixed field
order; exact values are rendered as rationals first, decimals second.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from pathlib import Path

from . import annulus as ann
from .algebra import LaurentPoly, Matrix, MultiPoly, rational_str
from .connection import Connection, identity_connection, random_sl
from .document import DocumentError, load, multiweb_loads
from .kasteleyn import verify_main
from .multiweb import Multiweb, MultiwebSampler
from .skein import ReductionError, UnsupportedSurface, pants_Z1, reduce_multiweb
from .surface import GraphError

EXIT_OK, EXIT_INPUT, EXIT_MISMATCH, EXIT_UNSUPPORTED = 0, 2, 3, 4


class InputError(Exception):
    pass


# ---------------------------------------------------------------------------
# value rendering

def render(x):
    """JSON-friendly rendering of exact values."""
    if isinstance(x, bool) or x is None or isinstance(x, str):
        return x
    if isinstance(x, (int, Fraction)):
        return {"exact": rational_str(x), "decimal": float(x)}
    if isinstance(x, MultiPoly):
        return {"poly": str(x), "variables": list(x.variables), "terms": x.to_terms()}
    if isinstance(x, LaurentPoly):
        return {"laurent": str(x),
                "coefficients": [[k, rational_str(x.coefficient(k))]
                                 for k in sorted(x.terms)]}
    if isinstance(x, float):
        return x
    if isinstance(x, dict):
        return {str(k): render(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [render(v) for v in x]
    return str(x)


def render_text(x) -> str:
    if isinstance(x, (int, Fraction)) and not isinstance(x, bool):
        s = rational_str(x)
        return s if isinstance(x, int) or x.denominator == 1 else f"{s} ({float(x):.12g})"
    return str(x)


class RunReport:
    """Ordered report: command, inputs, outputs, checks, wall time."""

    def __init__(self, command: str, inputs: dict):
        self.command = command
        self.inputs = inputs
        self.outputs = {}
        self.checks = {}
        self.lines = []
        self.start = time.perf_counter()

    def as_dict(self) -> dict:
        return {
            "command": self.command,
            "inputs": self.inputs,
            "outputs": {k: render(v) for k, v in self.outputs.items()},
            "checks": self.checks,
            "wall_time": round(time.perf_counter() - self.start, 6),
        }

    def emit(self, fmt: str, out=None):
        out = out or sys.stdout
        if fmt == "machine":
            out.write(json.dumps(self.as_dict()) + "\n")
        else:
            out.write(f"# {self.command} " + " ".join(
                f"{k}={v}" for k, v in self.inputs.items()) + "\n")
            for line in self.lines:
                out.write(line + "\n")
            for k, v in self.checks.items():
                out.write(f"check {k}: {'ok' if v else 'FAILED'}\n")


# ---------------------------------------------------------------------------
# inputs

def _load_graph(path):
    try:
        return load(path)
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None
    except DocumentError as exc:
        raise InputError(f"{path}: {exc}") from None


def _connection(spec: str, doc, n: int) -> Connection:
    g = doc.graph
    if spec == "identity":
        return identity_connection(g, n)
    if spec == "document":
        if doc.connection is None:
            raise InputError("graph document has no connection")
        if doc.connection.n != n:
            raise InputError(f"document connection has rank {doc.connection.n}, not {n}")
        return doc.connection
    if spec.startswith("random:"):
        try:
            seed = int(spec.split(":", 1)[1])
        except ValueError:
            raise InputError(f"bad seed in {spec!r}") from None
        return random_sl(g, n, seed)
    if spec.startswith("file:"):
        path = spec.split(":", 1)[1]
        try:
            data = json.loads(Path(path).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise InputError(f"{path}: {exc}") from None
        mats = data.get("connection", data) if isinstance(data, dict) else None
        try:
            c = Connection(n, {int(e): Matrix.from_strings(m) for e, m in mats.items()})
        except (AttributeError, TypeError, ValueError, ZeroDivisionError) as exc:
            raise InputError(f"{path}: bad connection: {exc}") from None
        missing = set(g.edges) - set(c.matrices)
        if missing:
            raise InputError(f"{path}: no matrix for edges {sorted(missing)}")
        return c
    raise InputError(f"unknown connection source {spec!r}")


# ---------------------------------------------------------------------------
# commands

def cmd_verify(args) -> tuple:
    doc = _load_graph(args.graph)
    n = args.n or doc.n
    default = "document" if doc.connection is not None and doc.connection.n == n else "identity"
    spec = args.connection or default
    c = _connection(spec, doc, n)
    report = RunReport("verify", {"graph": str(args.graph), "n": n, "connection": spec})
    executor = ProcessPoolExecutor(args.jobs) if args.jobs and args.jobs > 1 else None
    try:
        r = verify_main(doc.graph, n, c, cilia=None, executor=executor)
    finally:
        if executor is not None:
            executor.shutdown()
    report.outputs.update(det=r.det, trace_sum=r.trace_sum, sign=r.sign)
    report.checks["match"] = r.match
    report.lines += [f"det = {render_text(r.det)}",
                     f"trace_sum = {render_text(r.trace_sum)}",
                     f"sign = {r.sign:+d}",
                     f"match = {str(r.match).lower()}"]
    return report, EXIT_OK if r.match else EXIT_MISMATCH


def cmd_annulus(args) -> tuple:
    m, n = args.m, args.height
    try:
        ann.AnnulusGrid(m, n)
    except GraphError as exc:
        raise InputError(str(exc)) from None
    report = RunReport("annulus", {"m": m, "height": n, "what": args.what})
    what = args.what
    if what == "detz":
        d = ann.det_Kz(m, n)
        report.outputs["det_Kz"] = d
        report.lines.append(f"det K(z) = {d}")
        cmp = ann.compare_closed_form(m, n)
        report.outputs["closed_form_shift"] = str(Fraction(cmp["shift"]).limit_denominator(2))
        report.outputs["closed_form_rel_error"] = cmp["rel_error"]
        report.checks["closed_form"] = cmp["rel_error"] < 1e-9
        report.lines.append(f"closed form: z-shift {cmp['shift']:+g}, "
                            f"max relative error {cmp['rel_error']:.3e}")
    elif what in ("uv", "pgf"):
        p = ann.det_uv(m, n) if what == "uv" else ann.pgf(m, n)
        report.outputs[what] = p
        report.lines.append(f"{what} = {p}")
        rows = ann.pgf_table(p)
        report.outputs["table"] = [[j, k, c] for j, k, c in rows]
        report.lines.append("j k c_jk")
        for j, k, c in rows:
            report.lines.append(f"{j} {k} {render_text(c)}")
        if what == "pgf":
            report.checks["sums_to_one"] = p.evaluate((1, 1)) == 1
            report.checks["nonnegative"] = all(c >= 0 for _, _, c in rows)
    elif what == "means":
        exact = ann.mean_from_pgf(ann.pgf(m, n))
        report.outputs["mean_exact"] = exact
        report.lines.append(f"mean (from pgf) = {render_text(exact)}")
        if n % 2 == 0:
            finite = ann.mean_crossings(m, n)
            report.outputs["mean_finite_sum"] = finite
            report.checks["finite_sum"] = abs(finite - float(exact)) < 1e-9
            report.lines.append(f"mean (finite sum) = {finite:.12g}")
        if args.plot_data:
            taus = [0.1 * i for i in range(1, 31)]
            with open(args.plot_data, "w") as fh:
                for t in taus:
                    fh.write(f"{t:.4f} {ann.asymptotic_mean(t, args.terms):.12g}\n")
            report.lines.append(f"plot data written to {args.plot_data}")
    elif what == "exponents":
        table = []
        ok = True
        for j in range(args.max_jk + 1):
            for k in range(args.max_jk + 1):
                f, o = ann.crossing_exponent(j, k), ann.crossing_exponent_oracle(j, k)
                table.append([j, k, f, o, "ok" if f == o else "DIFF"])
                ok &= f == o
        report.outputs["exponents"] = table
        report.checks["oracle_agrees"] = ok
        report.lines.append("j k formula oracle status")
        report.lines += [" ".join(map(str, r)) for r in table]
    return report, EXIT_OK


def _reduce_one(g, m):
    return reduce_multiweb(g, m)


def cmd_skein(args) -> tuple:
    doc = _load_graph(args.graph)
    try:
        mw = multiweb_loads(Path(args.multiweb).read_text())
    except OSError as exc:
        raise InputError(f"{args.multiweb}: {exc.strerror}") from None
    except DocumentError as exc:
        raise InputError(f"{args.multiweb}: {exc}") from None
    m = Multiweb(3, mw)
    if not m.is_valid(doc.graph):
        raise InputError("multiweb does not have degree 3 at every vertex")
    result = reduce_multiweb(doc.graph, m)
    report = RunReport("skein", {"graph": str(args.graph), "multiweb": str(args.multiweb)})
    table = [[j, k, c] for (j, k), c in sorted(result.items())]
    report.outputs["reduction"] = table
    report.lines.append("j k coefficient")
    report.lines += [f"{j} {k} {c}" for j, k, c in table]
    return report, EXIT_OK


def cmd_pants(args) -> tuple:
    doc = _load_graph(args.graph)
    r = pants_Z1(doc.graph)
    report = RunReport("pants", {"graph": str(args.graph)})
    report.outputs.update(Z0=r.Z0, Z1=r.Z1, Z3d=r.Z3d,
                          det_in_a=[rational_str(c) for c in r.coefficients])
    report.checks["Z0+6Z1=Z3d"] = r.check
    report.lines += [f"Z0 = {r.Z0}", f"Z1 = {r.Z1}", f"Z0 + 6 Z1 = {r.Z0 + 6 * r.Z1}",
                     f"Z3d = {r.Z3d}"]
    return report, EXIT_OK if r.check else EXIT_MISMATCH


def cmd_sample(args) -> tuple:
    import random
    doc = _load_graph(args.graph)
    n = args.n or doc.n
    try:
        sampler = MultiwebSampler(doc.graph, n)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    rng = random.Random(args.seed)
    counts = Counter(sampler.draw(rng) for _ in range(args.count))
    report = RunReport("sample", {"graph": str(args.graph), "n": n,
                                  "count": args.count, "seed": args.seed})
    rows = []
    for m in sampler.webs:
        p = sampler.probability(m)
        rows.append({"multiweb": m.to_dict(), "count": counts.get(m, 0),
                     "frequency": counts.get(m, 0) / args.count, "probability": p})
    report.outputs["samples"] = rows
    report.lines.append("multiweb count frequency probability")
    for r in rows:
        report.lines.append(f"{json.dumps(r['multiweb'])} {r['count']} "
                            f"{r['frequency']:.6f} {render_text(r['probability'])}")
    return report, EXIT_OK


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="multiwebs", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--format", choices=("text", "machine"), default="text")
        sp.add_argument("--jobs", type=int, default=1, help="worker processes")

    sp = sub.add_parser("verify", help="compare det K~ with the sum of multiweb traces")
    sp.add_argument("--graph", required=True)
    sp.add_argument("--n", type=int)
    sp.add_argument("--connection", help="identity | random:SEED | file:PATH | document")
    common(sp)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("annulus", help="annulus grid determinants and statistics")
    sp.add_argument("--m", type=int, required=True, help="half-circumference (odd)")
    sp.add_argument("--height", type=int, required=True)
    sp.add_argument("--what", choices=("detz", "uv", "pgf", "means", "exponents"),
                    default="pgf")
    sp.add_argument("--max-jk", type=int, default=6)
    sp.add_argument("--plot-data", help="write tau / asymptotic mean columns here")
    sp.add_argument("--terms", type=int, default=50)
    common(sp)
    sp.set_defaults(func=cmd_annulus)

    sp = sub.add_parser("skein", help="reduce a 3-multiweb to loop classes")
    sp.add_argument("--graph", required=True)
    sp.add_argument("--multiweb", required=True)
    common(sp)
    sp.set_defaults(func=cmd_skein)

    sp = sub.add_parser("pants", help="Z0, Z1 on a pair of pants")
    sp.add_argument("--graph", required=True)
    common(sp)
    sp.set_defaults(func=cmd_pants)

    sp = sub.add_parser("sample", help="sample multiwebs exactly")
    sp.add_argument("--graph", required=True)
    sp.add_argument("--n", type=int)
    sp.add_argument("--count", type=int, default=1000)
    sp.add_argument("--seed", type=int, default=0)
    common(sp)
    sp.set_defaults(func=cmd_sample)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        report, code = args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except UnsupportedSurface as exc:
        print(f"unsupported: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except (GraphError, DocumentError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ReductionError as exc:
        print(f"reduction failed: {exc}", file=sys.stderr)
        return EXIT_MISMATCH
    report.emit(args.format)
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
