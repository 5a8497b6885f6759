"""Command-line driver: simulation tables, verification suites, asymptotic scans.

Outputs are deterministic: identical configurations produce byte-identical
CSV/JSON (fixed field order, floats at 17 significant digits, no timestamps).
Exact amplitudes are emitted as mantissa/half-exponent strings of the form
``m*2^(-t/2)`` so downstream tools can reconstruct exactness; decimal columns
are a convenience.

Exit codes: 0 success, 1 verification failure, 2 I/O or configuration error.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import os
import random
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from . import asymptotics, genfun, jacobi, ring, walk

WORKERS_ENV = "HADWALK_WORKERS"


def _fmt(x: float) -> str:
    return format(x, ".17g")


def _exact_str(mantissa: int, t: int) -> str:
    return f"{mantissa}*2^(-{t}/2)"


# ---------------------------------------------------------------------------
# simulate
# ---------------------------------------------------------------------------


def cmd_simulate(args) -> int:
    state = walk.evolve(walk.initial_state(), args.t, args.orientation)
    rows = []
    for n in range(-state.t, state.t + 1):
        if (n - state.t) % 2:
            continue
        mr = state.mantissa_r(n)
        ml = state.mantissa_l(n)
        prob = walk.probability(state, n)
        rows.append({
            "n": n,
            "t": state.t,
            "psiL": _exact_str(ml, state.t),
            "psiR": _exact_str(mr, state.t),
            "psiL_dec": _fmt(walk.mantissa_to_float(ml, state.t)),
            "psiR_dec": _fmt(walk.mantissa_to_float(mr, state.t)),
            "prob": f"{prob.numerator}/{prob.denominator}",
            "prob_dec": _fmt(float(prob)),
        })
    fields = ["n", "t", "psiL", "psiR", "psiL_dec", "psiR_dec", "prob", "prob_dec"]
    with open(args.out, "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=fields, lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
    if args.plot:
        probs = [(r["n"], float(Fraction(r["prob"]))) for r in rows]
        _write_svg_bars(args.plot, probs, f"occupation probability at t={state.t}")
    return 0


def _write_svg_bars(path: str, pairs, title: str) -> None:
    width, height, margin = 800, 400, 45
    if not pairs:
        pairs = [(0, 0.0)]
    xs = [p[0] for p in pairs]
    ymax = max(p[1] for p in pairs) or 1.0
    span = max(xs) - min(xs) or 1
    bar_w = max(1.0, (width - 2 * margin) / (len(pairs) * 1.5))
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
        f'<text x="{width // 2}" y="20" text-anchor="middle" '
        f'font-family="monospace" font-size="14">{title}</text>',
        f'<line x1="{margin}" y1="{height - margin}" x2="{width - margin}" '
        f'y2="{height - margin}" stroke="black"/>',
    ]
    for n, p in pairs:
        frac = (n - min(xs)) / span
        x = margin + frac * (width - 2 * margin) - bar_w / 2
        h = (height - 2 * margin) * (p / ymax)
        y = height - margin - h
        parts.append(f'<rect x="{x:.2f}" y="{y:.2f}" width="{bar_w:.2f}" '
                     f'height="{h:.2f}" fill="steelblue"/>')
    lo, hi = min(xs), max(xs)
    parts.append(f'<text x="{margin}" y="{height - margin + 18}" '
                 f'font-family="monospace" font-size="12">{lo}</text>')
    parts.append(f'<text x="{width - margin}" y="{height - margin + 18}" '
                 f'text-anchor="end" font-family="monospace" font-size="12">{hi}</text>')
    parts.append("</svg>")
    with open(path, "w") as fh:
        fh.write("\n".join(parts) + "\n")


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------


@dataclass
class VerifyConfig:
    t_max: int = 40
    order: int = 24
    m_max: int = 6
    quad_t_max: int = 24
    tol: float = 1e-9
    seed: int = 0
    inject_fault: bool = False


def _suite_exact_equivalence(cfg: VerifyConfig, cache: walk.WalkCache) -> dict:
    if cfg.t_max == 0:
        return {"passed": True, "vacuous": True, "detail": "t_max=0"}
    for t in range(cfg.t_max + 1):
        for n in range(-t, t + 1, 2 if t else 1):
            if (n - t) % 2:
                continue
            if (cache.amp_r(n, t) != jacobi.psi_closed_r(n, t)
                    or cache.amp_l(n, t) != jacobi.psi_closed_l(n, t)):
                return {"passed": False, "witness": {"n": n, "t": t},
                        "detail": "closed form != simulator"}
        if t and t % 2 == 0:
            if (cache.amp_r(0, t) != jacobi.psi_center_r(t)
                    or cache.amp_l(0, t) != jacobi.psi_center_l(t)):
                return {"passed": False, "witness": {"n": 0, "t": t},
                        "detail": "center closed form != simulator"}
    return {"passed": True, "vacuous": False,
            "detail": f"all amplitudes equal through t={cfg.t_max}"}


def _suite_symmetry(cfg: VerifyConfig, cache: walk.WalkCache) -> dict:
    if cfg.t_max == 0:
        return {"passed": True, "vacuous": True, "detail": "t_max=0"}
    states = {t: cache.state(t) for t in range(cfg.t_max + 1)}
    if cfg.inject_fault:
        t_bad = max(1, cfg.t_max // 2)
        bad = states[t_bad]
        mant = list(bad.psi_r)
        mant[t_bad] += 1  # flip one mantissa at position 0
        states[t_bad] = walk.WalkState(t_bad, tuple(mant), bad.psi_l)
    for t in range(cfg.t_max + 1):
        st = states[t]
        for n in range(-t, t + 1):
            if (n - t) % 2:
                continue
            ok_r = True
            if abs(n + 2) <= t:
                ok_r = (st.mantissa_r(-n) == (-1) ** (n + 1) * st.mantissa_r(n + 2))
            ok_l = ((t - n) * st.mantissa_l(-n)
                    == (-1) ** n * (t + n) * st.mantissa_l(n))
            if not (ok_r and ok_l):
                return {"passed": False, "witness": {"n": n, "t": t},
                        "detail": "reflection relation violated"}
    return {"passed": True, "vacuous": False,
            "detail": f"reflection relations exact through t={cfg.t_max}"}


def _suite_generating_function(cfg: VerifyConfig, cache: walk.WalkCache) -> dict:
    if cfg.order < 2:
        return {"passed": True, "vacuous": True, "detail": f"order={cfg.order}"}
    rep = genfun.equivalence_ledger(cache, m_max=cfg.m_max, order=cfg.order)
    if not rep.passed:
        item, witness = rep.failures[0]
        return {"passed": False, "witness": {"item": item, "at": list(witness)},
                "detail": f"{len(rep.failures)} failures of {rep.checked} checks"}
    for m in range(cfg.m_max + 1):
        for r in genfun.check_intermediate_relations(cache, m, cfg.order):
            if not r.passed:
                return {"passed": False,
                        "witness": {"relation": r.name, "m": m,
                                    "coefficient": r.first_mismatch},
                        "detail": "intermediate relation violated"}
    return {"passed": True, "vacuous": False,
            "detail": f"{rep.checked} equivalence checks exact"}


def _suite_jacobi_identity(cfg: VerifyConfig, cache: walk.WalkCache) -> dict:
    m_id = min(cfg.t_max, 20)
    if m_id == 0:
        return {"passed": True, "vacuous": True, "detail": "t_max=0"}
    rep = jacobi.check_jacobi_identities(m_max=m_id, uv_max=6)
    if not rep.passed:
        name, params = rep.failures[0]
        return {"passed": False,
                "witness": {"identity": name, "params": [str(p) for p in params]},
                "detail": f"{len(rep.failures)} failures of {rep.checked}"}
    kmax = min(cfg.order, 20)
    if kmax < 2:
        return {"passed": True, "vacuous": False,
                "detail": f"{rep.checked} identity instances exact (series sweep skipped)"}
    for r in range(0, 4):
        for s in range(0, 4):
            series = genfun.jacobi_generating(0, r, s, kmax)
            for k in range(kmax + 1):
                if series.coefficient(k) != ring.Sqrt2Scalar(jacobi.jacobi_at(k, r, s)):
                    return {"passed": False, "witness": {"k": k, "r": r, "s": s},
                            "detail": "generating-function coefficient mismatch"}
    return {"passed": True, "vacuous": False,
            "detail": f"{rep.checked} identity instances exact"}


def _suite_quadrature(cfg: VerifyConfig, cache: walk.WalkCache) -> dict:
    if cfg.quad_t_max == 0:
        return {"passed": True, "vacuous": True, "detail": "quad_t_max=0"}
    worst = 0.0
    for t in range(cfg.quad_t_max + 1):
        for n in range(-t, t + 1):
            if (n - t) % 2:
                continue
            qr, ql = asymptotics.quadrature_psi(n, t, tol=cfg.tol * 0.1)
            dr = abs(qr.real - cache.amp_r_float(n, t))
            dl = abs(ql.real - cache.amp_l_float(n, t))
            worst = max(worst, dr, dl)
            if dr > cfg.tol or dl > cfg.tol:
                return {"passed": False, "witness": {"n": n, "t": t},
                        "detail": f"|numeric - exact| = {max(dr, dl):.3e}"}
    return {"passed": True, "vacuous": False,
            "detail": f"max deviation {worst:.3e} through t={cfg.quad_t_max}"}


def _suite_lagrange(cfg: VerifyConfig, cache: walk.WalkCache) -> dict:
    if cfg.order < 2:
        return {"passed": True, "vacuous": True, "detail": f"order={cfg.order}"}
    order = max(4, min(cfg.order, 20))
    phi = ring.RationalSeries(
        [Fraction(1, math.factorial(k)) for k in range(order + 1)], order)
    ident = ring.RationalSeries.z(order)
    tree = genfun.lagrange_invert(genfun.LagrangeProblem(phi, ident, order))
    for n in range(1, order + 1):
        want = Fraction(n ** (n - 1), math.factorial(n))
        if tree.coefficient(n) != ring.Sqrt2Scalar(want):
            return {"passed": False, "witness": {"n": n},
                    "detail": "tree-function coefficient mismatch"}
    rng = random.Random(cfg.seed)
    for trial in range(5):
        phi_rand = ring.random_rational_series(rng, order, constant=1)
        w = genfun.lagrange_invert(genfun.LagrangeProblem(phi_rand, ident, order))
        if phi_rand.compose(w).shift(1) != w:
            return {"passed": False, "witness": {"trial": trial},
                    "detail": "w != z*phi(w) for randomized phi"}
    ss = genfun.srivastava_singhal_series(
        genfun.SrivastavaSinghalSpec(0, 0, 0, 0, max(cfg.order, 4)))
    if ss != genfun.jacobi_generating(0, 0, 0, max(cfg.order, 4)):
        return {"passed": False, "witness": {"case": "a=b=gamma=beta=0"},
                "detail": "implicit series != 1/sqrt(1+z^2)"}
    return {"passed": True, "vacuous": False, "detail": "inversion checks exact"}


_SUITES = {
    "exact-equivalence": _suite_exact_equivalence,
    "generating-function": _suite_generating_function,
    "jacobi-identity": _suite_jacobi_identity,
    "lagrange": _suite_lagrange,
    "quadrature": _suite_quadrature,
    "symmetry": _suite_symmetry,
}


def run_verify(cfg: VerifyConfig) -> dict:
    cache = walk.WalkCache("canonical")
    cache.state(max(cfg.t_max, 2 * cfg.order + 1, cfg.quad_t_max))
    workers = int(os.environ.get(WORKERS_ENV, "0")) or None
    names = sorted(_SUITES)
    with ThreadPoolExecutor(max_workers=workers or min(len(names), os.cpu_count() or 1)
                            ) as pool:
        futures = {name: pool.submit(_SUITES[name], cfg, cache) for name in names}
        results = {name: futures[name].result() for name in names}
    report = {
        "config": {"t_max": cfg.t_max, "order": cfg.order, "m_max": cfg.m_max,
                   "quad_t_max": cfg.quad_t_max, "tol": cfg.tol, "seed": cfg.seed,
                   "inject_fault": cfg.inject_fault},
        "suites": {name: results[name] for name in names},
        "all_passed": all(r["passed"] for r in results.values()),
    }
    return report


def cmd_verify(args) -> int:
    cfg = VerifyConfig(t_max=args.t_max, order=args.order, m_max=args.m_max,
                       quad_t_max=args.quad_t_max, tol=args.tol, seed=args.seed,
                       inject_fault=args.inject_fault)
    report = run_verify(cfg)
    payload = json.dumps(report, indent=2, sort_keys=True) + "\n"
    if args.report == "-":
        sys.stdout.write(payload)
    else:
        with open(args.report, "w") as fh:
            fh.write(payload)
    for name in sorted(report["suites"]):
        entry = report["suites"][name]
        status = "PASS" if entry["passed"] else "FAIL"
        vac = " (vacuous)" if entry.get("vacuous") else ""
        print(f"{status:4s} {name}{vac}: {entry.get('detail', '')}")
    return 0 if report["all_passed"] else 1


# ---------------------------------------------------------------------------
# asymptotics
# ---------------------------------------------------------------------------


def cmd_asymptotics(args) -> int:
    ts = sorted({int(x) for x in args.t.split(",") if x.strip()})
    if not ts or any(t <= 0 for t in ts):
        print("asymptotics needs positive --t values", file=sys.stderr)
        return 2
    cache = walk.WalkCache("canonical")
    cache.state(max(ts))
    count = int(round((args.alpha_stop - args.alpha_start) / args.alpha_step)) + 1
    rows = []
    for t in ts:
        for i in range(count):
            alpha = args.alpha_start + i * args.alpha_step
            n = int(round(alpha * t))
            if (n - t) % 2:
                n += 1 if alpha * t >= n else -1
            row = {"alpha": _fmt(alpha), "t": t, "exact": "", "asymptotic": "",
                   "rel_error": "", "btilde": "", "b": "", "n": n, "status": "ok"}
            exact = cache.amp_r_float(n, t)
            row["exact"] = _fmt(exact)
            try:
                asym_r, _ = asymptotics.psi_asymptotic(n, t, eps=args.eps)
                a_eff = abs(n) / t
                row["asymptotic"] = _fmt(asym_r)
                row["rel_error"] = _fmt(abs(asym_r / exact - 1.0)) if exact else "inf"
                row["btilde"] = _fmt(asymptotics.btilde(a_eff))
                row["b"] = _fmt(asymptotics.b_pathintegral(a_eff))
            except asymptotics.ValidityError:
                row["status"] = "excluded"
            rows.append(row)
    fields = ["alpha", "t", "exact", "asymptotic", "rel_error", "btilde", "b",
              "n", "status"]
    with open(args.out, "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=fields, lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
    return 0


# ---------------------------------------------------------------------------
# parser / entry point
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hadwalk",
        description="Exact and asymptotic laboratory for the Hadamard walk on the line")
    sub = parser.add_subparsers(dest="command", required=True)

    sim = sub.add_parser("simulate", help="exact amplitude/probability table")
    sim.add_argument("--t", type=int, required=True)
    sim.add_argument("--orientation", choices=walk.ORIENTATIONS, default="canonical")
    sim.add_argument("--out", required=True)
    sim.add_argument("--plot", default=None, help="optional SVG output path")
    sim.set_defaults(func=cmd_simulate)

    ver = sub.add_parser("verify", help="run the exact verification suites")
    ver.add_argument("--t-max", type=int, default=40)
    ver.add_argument("--order", type=int, default=24)
    ver.add_argument("--m-max", type=int, default=6)
    ver.add_argument("--quad-t-max", type=int, default=24)
    ver.add_argument("--tol", type=float, default=1e-9)
    ver.add_argument("--seed", type=int, default=0)
    ver.add_argument("--inject-fault", action="store_true",
                     help="flip one mantissa to exercise failure reporting")
    ver.add_argument("--report", required=True, help="JSON report path, - for stdout")
    ver.set_defaults(func=cmd_verify)

    asy = sub.add_parser("asymptotics", help="decay-region error table")
    asy.add_argument("--alpha-start", type=float, required=True)
    asy.add_argument("--alpha-stop", type=float, required=True)
    asy.add_argument("--alpha-step", type=float, required=True)
    asy.add_argument("--t", required=True, help="comma-separated times")
    asy.add_argument("--eps", type=float, default=1e-3)
    asy.add_argument("--out", required=True)
    asy.set_defaults(func=cmd_asymptotics)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
