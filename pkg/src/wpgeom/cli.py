"""Command-line front end.

Subcommands expose the module operations plus the acceptance runner; all
numeric output is serialized with 17 significant digits, either as JSON
records or as CSV tables, and table-producing commands can render a figure
next to the delimited output.

Exit codes: 0 success / all checks pass, 1 check failure, 2 usage error,
3 I/O error.
"""

from __future__ import annotations

import argparse
import re
import sys

import numpy as np

from . import acceptance, cat0, circle, coxeter, cusp, energy, funk, tensor_core as tc, torus
from .rng import substream

FMT = "%.17g"


# ---------------------------------------------------------------------------
# serialization helpers


def dumps17(obj, indent: int = 0) -> str:
    """JSON with every number rendered at 17 significant digits."""
    pad = "  " * indent
    if isinstance(obj, dict):
        items = [
            f'{pad}  "{k}": {dumps17(v, indent + 1).lstrip()}' for k, v in obj.items()
        ]
        return pad + "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(obj, (list, tuple)):
        items = [f"{pad}  {dumps17(v, indent + 1).lstrip()}" for v in obj]
        return pad + "[\n" + ",\n".join(items) + "\n" + pad + "]"
    if isinstance(obj, (bool, np.bool_)):
        return pad + ("true" if obj else "false")
    if obj is None:
        return pad + "null"
    if isinstance(obj, (int, np.integer)):
        return pad + str(int(obj))
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        if x != x:
            return pad + "NaN"
        return pad + (FMT % x)
    if isinstance(obj, complex):
        return dumps17({"re": obj.real, "im": obj.imag}, indent)
    return pad + '"' + str(obj).replace("\\", "\\\\").replace('"', '\\"') + '"'


def emit(obj, out: str | None) -> None:
    text = dumps17(obj) + "\n"
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def write_csv(path: str | None, header: list[str], rows) -> None:
    lines = [",".join(header)]
    for row in rows:
        cells = []
        for v in row:
            if v is None or (isinstance(v, float) and v != v):
                cells.append("")
            else:
                cells.append(FMT % v)
        lines.append(",".join(cells))
    text = "\n".join(lines) + "\n"
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def parse_complex(s: str) -> complex:
    return complex(s.strip().replace("i", "j"))


def parse_pair(s: str) -> tuple[float, float]:
    a, b = s.split(",")
    return float(a), float(b)


# ---------------------------------------------------------------------------
# torus


def cmd_torus(args) -> int:
    if args.action == "geodesic":
        g0 = torus.metric_from_tau(parse_complex(args.tau))
        a, b = parse_pair(args.h)
        h = torus.project_traceless(g0.metric, tc.SymTensor2(a, b, -a))
        gt = torus.wp_geodesic(g0, h, args.t)
        emit(
            {
                "tau": {"re": gt.tau.real, "im": gt.tau.imag},
                "metric": {"g11": gt.metric.g11, "g12": gt.metric.g12, "g22": gt.metric.g22},
                "t": args.t,
                "speed": torus.wp_norm(g0.metric, h),
            },
            args.out,
        )
    elif args.action == "dist":
        g1 = torus.metric_from_tau(parse_complex(args.tau1))
        g2 = torus.metric_from_tau(parse_complex(args.tau2))
        emit({"value": torus.wp_distance(g1, g2)}, args.out)
    elif args.action in ("teich-dist", "thurston"):
        g1 = torus.metric_from_tau(parse_complex(args.tau1))
        g2 = torus.metric_from_tau(parse_complex(args.tau2))
        fn = torus.teich_distance_ext if args.action == "teich-dist" else torus.thurston_metric
        r = fn(g1, g2, args.cutoff)
        emit(
            {
                "value": r.value,
                "argmax_class": [r.argmax_class.p, r.argmax_class.q],
                "cutoff": r.cutoff,
            },
            args.out,
        )
    return 0


# ---------------------------------------------------------------------------
# energy


def cmd_energy(args) -> int:
    g0 = torus.metric_from_tau(parse_complex(args.tau0))
    a, b = parse_pair(args.h)
    h = torus.project_traceless(g0.metric, tc.SymTensor2(a, b, -a))
    lo, hi = (float(v) for v in args.range.split(":"))
    prof = energy.energy_profile(g0, h, (lo, hi), args.samples)
    rows = zip(prof.t, prof.energy, [None if s != s else s for s in prof.second])
    write_csv(args.out, ["t", "E", "E_second"], rows)
    if args.plot:
        from . import plots

        target = (args.out or "profile.csv").rsplit(".", 1)[0] + ".png"
        plots.plot_profile(prof.t, prof.energy, prof.second, target)
    return 0


# ---------------------------------------------------------------------------
# cusp


def cmd_cusp(args) -> int:
    params = cusp.ModelParams(args.prefactor)
    if args.action == "geodesic":
        du, dth = parse_pair(args.v)
        path = cusp.geodesic(cusp.CuspPoint(args.u0, args.theta0), (du, dth), args.T, params)
        rows = zip(path.t, path.u, path.theta, path.du, path.dtheta)
        write_csv(args.out, ["t", "u", "theta", "du", "dtheta"], rows)
        if args.plot:
            from . import plots

            target = (args.out or "cusp_path.csv").rsplit(".", 1)[0] + ".png"
            plots.plot_cusp_path(path.u, path.theta, target, path.hit_stratum)
        if path.hit_stratum:
            sys.stderr.write("note: geodesic terminated at the stratum\n")
    elif args.action == "curvature":
        emit({"value": cusp.curvature(args.u, params)}, args.out)
    elif args.action == "strata-distance":
        emit({"value": cusp.distance_to_stratum(cusp.CuspPoint(args.u), params)}, args.out)
    return 0


# ---------------------------------------------------------------------------
# funk


def cmd_funk(args) -> int:
    omega = funk.read_polytope(args.polytope)
    x = np.array([float(v) for v in args.x.split(",")])
    y = np.array([float(v) for v in args.y.split(",")])
    if args.mode == "ray":
        val = funk.funk_ray(omega, x, y)
    elif args.mode == "sup":
        val = funk.funk_sup(omega, x, y)
    else:
        val = funk.hilbert(omega, x, y)
    emit({"value": val, "mode": args.mode}, args.out)
    return 0


# ---------------------------------------------------------------------------
# coxeter


def _load_matrix(args) -> coxeter.CoxeterMatrix:
    if args.curves:
        return coxeter.coxeter_matrix(coxeter.read_curve_system(args.curves))
    if args.generators:
        if args.pattern == "commuting":
            return coxeter.CoxeterMatrix.all_commuting(args.generators)
        return coxeter.CoxeterMatrix.free_product(args.generators)
    raise SystemExit(2)


def cmd_coxeter(args) -> int:
    if args.action == "matrix":
        cs = coxeter.read_curve_system(args.curves)
        m = coxeter.coxeter_matrix(cs)
        table = [
            ["inf" if not np.isfinite(m.entry(i, j)) else int(m.entry(i, j)) for j in range(m.n)]
            for i in range(m.n)
        ]
        emit({"names": list(cs.names), "matrix": table}, args.out)
    elif args.action == "reduce":
        m = _load_matrix(args)
        word = [int(tok.lstrip("s")) for tok in args.word.split(",") if tok]
        nf = coxeter.reduce_word(word, m)
        emit({"word": list(word), "normal_form": list(nf)}, args.out)
    elif args.action == "enumerate":
        m = _load_matrix(args)
        res = coxeter.enumerate_group(m, args.maxlen)
        emit(
            {
                "count": len(res.elements),
                "finite": res.finite,
                "order": res.order,
                "max_len": res.max_len,
                "elements": [",".join(str(x) for x in w) for w in res.elements],
            },
            args.out,
        )
    return 0


# ---------------------------------------------------------------------------
# circle


def _parse_phi(expr: str):
    expr = expr.replace("^", "**")
    expr = re.sub(r"(?<![\w.])i(?![\w.])", "(1j)", expr)
    code = compile(expr, "<phi>", "eval")

    def phi(eta):
        return eval(  # noqa: S307 - closed-form user expression, documented
            code,
            {"__builtins__": {}},
            {"eta": eta, "abs": np.abs, "conj": np.conj, "exp": np.exp, "pi": np.pi},
        )

    return phi


def cmd_circle(args) -> int:
    if args.action == "pair":
        f1 = circle.read_coefficients(args.coeffs)
        f2 = circle.read_coefficients(args.coeffs2) if args.coeffs2 else f1
        emit(
            {
                "pairing": circle.wp_pairing(f1, f2),
                "kk_form": circle.kk_form(f1, f2),
                "h32_norm": circle.sobolev_norm(f1, 1.5),
            },
            args.out,
        )
    elif args.action == "hilbert":
        if args.coeffs:
            f = circle.read_coefficients(args.coeffs)
        else:
            modes = {int(m): 1.0 + 0j for m in args.modes.split(",")}
            f = circle.FourierVectorField.from_modes(modes)
        n = args.samples
        u = f.samples(n)
        v = circle.hilbert_transform_fn(u)
        write_csv(args.out, ["theta", "u", "hilbert_u"], zip(2 * np.pi * np.arange(n) / n, u, v))
    elif args.action == "ahlfors":
        phi = _parse_phi(args.phi)

        def mu(eta):
            return np.imag(eta) ** 2 * np.conj(phi(eta))

        z = parse_complex(args.z)
        res = circle.ahlfors_projection(mu, z, tol=args.tol)
        emit(
            {
                "value": {"re": res.value.real, "im": res.value.imag},
                "mu_at_z": {"re": mu(np.array(z)).real.item(), "im": mu(np.array(z)).imag.item()},
                "error_estimate": res.error_estimate,
                "cells": res.cells,
                "flagged": res.flagged,
            },
            args.out,
        )
    return 0


# ---------------------------------------------------------------------------
# cat0


def _read_points(path: str, space: str):
    rows = []
    with open(path) as fh:
        for line in fh:
            parts = line.split()
            if parts:
                rows.append([float(v) for v in parts])
    arr = np.array(rows)
    if space == "euclid":
        return cat0.EuclideanSpace(arr.shape[1]), arr
    if space == "h2":
        return cat0.HyperbolicPlane(), arr[:, 0] + 1j * arr[:, 1]
    if space == "cusp":
        return cat0.CuspSpace(), arr
    if space == "product-cusp":
        k = arr.shape[1] // 2
        return cat0.ProductCuspSpace(k), arr.reshape(len(arr), k, 2)
    if space == "glued-halfplanes":
        sp = cat0.glue(cat0.EuclideanSpace(2), cat0.EuclideanSpace(2), cat0.line_gate())
        return sp, cat0.GluedPoint(arr[:, 0].astype(int), arr[:, 1:3])
    raise SystemExit(2)


def cmd_cat0(args) -> int:
    if args.action == "check":
        val = acceptance.min_slack_for_space(args.space, args.trials, args.seed)
        emit(
            {"space": args.space, "min_slack": val, "trials": args.trials, "seed": args.seed},
            args.out,
        )
    elif args.action == "fr":
        sp, pts = _read_points(args.points, args.space)
        rep = cat0.fr_diagnostic(sp, pts)
        emit(
            {
                "diameter": rep.diameter,
                "circumradius": rep.circumradius,
                "ratio": rep.ratio,
                "implied_rank": rep.implied_rank,
                "converged": rep.converged,
            },
            args.out,
        )
    return 0


# ---------------------------------------------------------------------------
# tensor


def cmd_tensor(args) -> int:
    h = tc.read_tensor_field(args.input)
    dec = tc.l2_decompose(h)
    rec = tc.reassemble(dec, h.n)
    diff = rec - h
    import math

    rel = math.sqrt(tc.field_inner(diff, diff)) / max(math.sqrt(tc.field_inner(h, h)), 1e-300)
    if args.output_prefix:
        tc.write_tensor_field(args.output_prefix + "_lie.txt", tc.lie_derivative_flat(dec.vector[..., 0], dec.vector[..., 1]))
        tc.write_tensor_field(args.output_prefix + "_conformal.txt", tc.lichnerowicz_adjoint(dec.scalar))
    emit(
        {
            "constant_traceless": {
                "h11": dec.constant_traceless.h11,
                "h12": dec.constant_traceless.h12,
                "h22": dec.constant_traceless.h22,
            },
            "mean_trace": dec.mean_trace,
            "reconstruction_rel_error": rel,
            "mode_condition": dec.max_condition,
        },
        args.out,
    )
    return 0


# ---------------------------------------------------------------------------
# verify


def cmd_verify(args) -> int:
    results = acceptance.run_suite(args.suite, args.seed)
    for r in results:
        print(r.line())
    if args.report:
        emit(
            [
                {
                    "name": r.name,
                    "passed": r.passed,
                    "measured": r.measured,
                    "expected": r.expected,
                    "tol": r.tol,
                    "runtime": r.runtime,
                }
                for r in results
            ],
            args.report,
        )
    if args.figdir:
        import os

        from . import plots

        os.makedirs(args.figdir, exist_ok=True)
        plots.plot_verify_summary(results, os.path.join(args.figdir, "verify_summary.png"))
    return 0 if all(r.passed for r in results) else 1


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="wp-geom", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    t = sub.add_parser("torus", help="flat-torus moduli operations")
    ts = t.add_subparsers(dest="action", required=True)
    g = ts.add_parser("geodesic")
    g.add_argument("--tau", required=True)
    g.add_argument("--h", required=True, help="a,b: direction [[a,b],[b,-a]] projected trace-free")
    g.add_argument("--t", type=float, required=True)
    g.add_argument("--out")
    for name in ("dist", "teich-dist", "thurston"):
        d = ts.add_parser(name)
        d.add_argument("--tau1", required=True)
        d.add_argument("--tau2", required=True)
        if name != "dist":
            d.add_argument("--cutoff", type=int, default=50)
        d.add_argument("--out")
    t.set_defaults(func=cmd_torus)

    e = sub.add_parser("energy", help="energy profiles along geodesics")
    es = e.add_subparsers(dest="action", required=True)
    p = es.add_parser("profile")
    p.add_argument("--tau0", required=True)
    p.add_argument("--h", required=True)
    p.add_argument("--range", default="-1:1")
    p.add_argument("--samples", type=int, default=201)
    p.add_argument("--out")
    p.add_argument("--plot", action="store_true")
    e.set_defaults(func=cmd_energy)

    c = sub.add_parser("cusp", help="stratum model operations")
    cs = c.add_subparsers(dest="action", required=True)
    g = cs.add_parser("geodesic")
    g.add_argument("--u0", type=float, required=True)
    g.add_argument("--theta0", type=float, default=0.0)
    g.add_argument("--v", required=True, help="du,dtheta initial velocity")
    g.add_argument("--T", type=float, required=True)
    g.add_argument("--out")
    g.add_argument("--plot", action="store_true")
    for name in ("curvature", "strata-distance"):
        k = cs.add_parser(name)
        k.add_argument("--u", type=float, required=True)
        k.add_argument("--out")
    for pr in cs.choices.values():
        pr.add_argument("--prefactor", type=float, default=4 * np.pi**3, help="c^2")
    c.set_defaults(func=cmd_cusp)

    f = sub.add_parser("funk", help="Funk/Hilbert metrics on polytopes")
    f.add_argument("--polytope", required=True)
    f.add_argument("--x", required=True)
    f.add_argument("--y", required=True)
    f.add_argument("--mode", choices=["ray", "sup", "hilbert"], default="ray")
    f.add_argument("--out")
    f.set_defaults(func=cmd_funk)

    x = sub.add_parser("coxeter", help="curve systems and word calculus")
    xs = x.add_subparsers(dest="action", required=True)
    mm = xs.add_parser("matrix")
    mm.add_argument("--curves", required=True)
    mm.add_argument("--out")
    rr = xs.add_parser("reduce")
    rr.add_argument("--word", required=True, help="comma-separated letters, e.g. s1,s2,s1 or 1,2,1")
    rr.add_argument("--curves")
    rr.add_argument("--generators", type=int)
    rr.add_argument("--pattern", choices=["commuting", "free"], default="free")
    rr.add_argument("--out")
    en = xs.add_parser("enumerate")
    en.add_argument("--maxlen", type=int, default=8)
    en.add_argument("--curves")
    en.add_argument("--generators", type=int)
    en.add_argument("--pattern", choices=["commuting", "free"], default="free")
    en.add_argument("--out")
    x.set_defaults(func=cmd_coxeter)

    ci = sub.add_parser("circle", help="circle vector-field operations")
    cis = ci.add_subparsers(dest="action", required=True)
    pp = cis.add_parser("pair")
    pp.add_argument("--coeffs", required=True)
    pp.add_argument("--coeffs2")
    pp.add_argument("--out")
    hh = cis.add_parser("hilbert")
    hh.add_argument("--coeffs")
    hh.add_argument("--modes", help="comma-separated cosine modes, e.g. 2,5")
    hh.add_argument("--samples", type=int, default=256)
    hh.add_argument("--out")
    aa = cis.add_parser("ahlfors")
    aa.add_argument("--phi", required=True, help='holomorphic part, e.g. "(eta+i)^-4"')
    aa.add_argument("--z", required=True)
    aa.add_argument("--tol", type=float, default=1e-3)
    aa.add_argument("--out")
    ci.set_defaults(func=cmd_circle)

    k = sub.add_parser("cat0", help="comparison-geometry checks")
    ks = k.add_subparsers(dest="action", required=True)
    ch = ks.add_parser("check")
    ch.add_argument(
        "--space",
        choices=["euclid", "h2", "cusp", "product-cusp", "glued-halfplanes"],
        required=True,
    )
    ch.add_argument("--trials", type=int, default=1000)
    ch.add_argument("--seed", type=int, default=42)
    ch.add_argument("--out")
    fr = ks.add_parser("fr")
    fr.add_argument(
        "--space",
        choices=["euclid", "h2", "cusp", "product-cusp", "glued-halfplanes"],
        required=True,
    )
    fr.add_argument("--points", required=True)
    fr.add_argument("--out")
    k.set_defaults(func=cmd_cat0)

    te = sub.add_parser("tensor", help="tensor-field splitting")
    tes = te.add_subparsers(dest="action", required=True)
    dd = tes.add_parser("decompose")
    dd.add_argument("--input", required=True)
    dd.add_argument("--output-prefix")
    dd.add_argument("--out")
    te.set_defaults(func=cmd_tensor)

    v = sub.add_parser("verify", help="run the acceptance suite")
    v.add_argument("--suite", default="all")
    v.add_argument("--seed", type=int, default=42)
    v.add_argument("--report")
    v.add_argument("--figdir")
    v.set_defaults(func=cmd_verify)

    return ap


_DASH_VALUE_OPTS = {
    "--range", "--h", "--v", "--x", "--y", "--z",
    "--tau", "--tau0", "--tau1", "--tau2", "--phi",
}


def _join_dash_values(argv: list[str]) -> list[str]:
    """Let numeric option values start with '-' (e.g. --range -1:1)."""
    out = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        if tok in _DASH_VALUE_OPTS and i + 1 < len(argv) and argv[i + 1].startswith("-"):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


def main(argv=None) -> int:
    ap = build_parser()
    if argv is None:
        argv = sys.argv[1:]
    args = ap.parse_args(_join_dash_values(list(argv)))
    try:
        return args.func(args)
    except OSError as exc:
        sys.stderr.write(f"io error: {exc}\n")
        return 3
    except (ValueError, KeyError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
