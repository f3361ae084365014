"""Command-line verification front-end.

Each subcommand checks one family of identities and prints one JSON line
per case (fields: identity, parameters, lhs, rhs, abs_err, rel_err,
tolerance, passed, tails, runtime_ms).  Complex numbers are serialized as
[re, im] pairs.  Exit status is 0 when every case passed, 1 when any case
failed, and 2 for usage errors.  `sweep` runs a cartesian parameter grid
concurrently and `report` re-renders stored JSON-line output (optionally
as a CSV summary).
"""

from __future__ import annotations

import argparse
import concurrent.futures
import csv
import itertools
import json
import sys
import time

import numpy as np

from .arithmetic import DirichletCharacter, lemma41_verify
from .moments import (L_q_decomposed, L_q_direct_with_tail, assemble_rhs,
                      eisenstein_level1)
from .spectral import first_moment_lhs, kuznetsov_sides, load_dataset
from .special import bessel_j
from .transforms import (F1, F2, F3, H_plus, TestFunction, bessel_j_contour)

__all__ = ["main", "DEFAULT_TOLERANCES"]

DEFAULT_TOLERANCES = {
    "lemma41": 1e-5,
    "kernels": 1e-7,
    "kernels_even_k": 1e-8,
    "jbessel_mellin": 1e-8,
    "hplus": 1e-6,
    "prop32": 1e-5,
    "kuznetsov": 1e-3,       # relative, plus reported tails
    "first_moment": 1e-2,    # relative
}


def _c(z):
    z = complex(z)
    return [z.real, z.imag]


def _report(identity, parameters, lhs, rhs, tolerance, tails=None,
            runtime_ms=0, relative=False, extra_allowance=0.0):
    lhs = complex(lhs)
    rhs = complex(rhs)
    abs_err = abs(lhs - rhs)
    scale = max(abs(lhs), abs(rhs))
    rel_err = abs_err / scale if scale > 0 else abs_err
    if relative:
        passed = abs_err <= tolerance * scale + extra_allowance
    else:
        passed = abs_err <= tolerance or rel_err <= tolerance
    return {
        "identity": identity,
        "parameters": parameters,
        "lhs": _c(lhs),
        "rhs": _c(rhs),
        "abs_err": abs_err,
        "rel_err": rel_err,
        "tolerance": tolerance,
        "passed": bool(passed),
        "tails": dict(tails or {}),
        "runtime_ms": int(runtime_ms),
    }


def _emit(report, stream=None):
    stream = stream or sys.stdout
    stream.write(json.dumps(report, allow_nan=True) + "\n")
    stream.flush()


def _timed(fn):
    t0 = time.perf_counter()
    out = fn()
    return out, (time.perf_counter() - t0) * 1000.0


# ---------------------------------------------------------------------------
# Case generators: each returns a list of report dicts.


def run_lemma41(modulus=None, big_m=None, n=None, s=None, q_max=100000,
                cases=100, seed=0, tolerance=None):
    tol = DEFAULT_TOLERANCES["lemma41"] if tolerance is None else tolerance
    reports = []
    rng = np.random.default_rng(seed)
    if modulus is not None:
        N = int(modulus)
        M = int(big_m) if big_m else N
        specs = [(DirichletCharacter.trivial(N), M, int(n),
                  complex(s if s is not None else 1.0))]
    else:
        specs = []
        for _ in range(cases):
            N = int(rng.integers(1, 13))
            group = DirichletCharacter.all_mod(N)
            chi = group[int(rng.integers(0, len(group)))]
            M = N * int(rng.integers(1, 24 // N + 1))
            nn = int(rng.integers(1, 51)) * int(rng.choice([-1, 1]))
            ss = complex(rng.uniform(0.7, 1.5), 0.0)
            specs.append((chi, M, nn, ss))
    for chi, M, nn, ss in specs:
        N = chi.modulus
        (out, ms) = _timed(lambda: lemma41_verify(ss, nn, chi, M, q_max))
        lhs, rhs, tail = out
        rep = _report(
            "lemma41", {"modulus": N, "M": M, "n": nn, "s": _c(ss),
                        "q_max": q_max},
            lhs, rhs, tol, tails={"q_truncation": tail}, runtime_ms=ms)
        # Accept residuals explained by the reported truncation tail.
        if not rep["passed"] and rep["abs_err"] <= tail:
            rep["passed"] = True
        reports.append(rep)
    return reports


def _kernel_draw(rng, which):
    s = complex(rng.uniform(0.55, 1.2), rng.uniform(-0.5, 0.5))
    u = complex(s.real + rng.uniform(0.15, 0.6), rng.uniform(-0.3, 0.3))
    x = float(rng.choice([rng.uniform(0.05, 0.95), 1.0,
                          rng.uniform(1.05, 8.0)]))
    if which == "F2":
        order = int(rng.integers(1, 7)) * 2  # even weight k
    else:
        order = complex(rng.uniform(0.03, 0.42), rng.uniform(-0.35, 0.35))
    return s, u, order, x


def run_kernels(draws=50, seed=7, tolerance=None):
    tol = DEFAULT_TOLERANCES["kernels"] if tolerance is None else tolerance
    tol_even = DEFAULT_TOLERANCES["kernels_even_k"]
    rng = np.random.default_rng(seed)
    reports = []
    for name, fn in (("F1", F1), ("F2", F2), ("F3", F3)):
        for _ in range(draws):
            s, u, order, x = _kernel_draw(rng, name)
            reps = ["hypergeometric", "barnes", "integral_rep"]
            vals = {}
            t0 = time.perf_counter()
            for rep_name in reps:
                try:
                    vals[rep_name] = fn(s, u, order, x,
                                        representation=rep_name)
                except ValueError:
                    continue  # representation not valid on this branch
            ms = (time.perf_counter() - t0) * 1000.0
            pairs = list(itertools.combinations(sorted(vals), 2))
            for ra, rb in pairs:
                reports.append(_report(
                    "kernel_%s_%s_vs_%s" % (name, ra, rb),
                    {"s": _c(s), "u": _c(u), "order": _c(order), "x": x},
                    vals[ra], vals[rb], tol, runtime_ms=ms / max(len(pairs), 1)))
    # Even-k coincidence: F1 with nu = (k-1)/2 equals F2 with weight k.
    for _ in range(max(1, draws * 2 // 5)):
        s, u, k, x = _kernel_draw(rng, "F2")
        nu = (k - 1) / 2.0
        (pair, ms) = _timed(lambda: (F1(s, u, nu, x, representation="barnes"),
                                     F2(s, u, k, x)))
        reports.append(_report(
            "kernel_even_k_F1_eq_F2",
            {"s": _c(s), "u": _c(u), "k": k, "x": x},
            pair[0], pair[1], tol_even, runtime_ms=ms))
    return reports


def run_jbessel_mellin(draws=20, seed=11, tolerance=None):
    tol = DEFAULT_TOLERANCES["jbessel_mellin"] if tolerance is None \
        else tolerance
    rng = np.random.default_rng(seed)
    reports = []
    for _ in range(draws):
        two_u = complex(rng.uniform(0.2, 2.0), rng.uniform(-1.0, 1.0))
        x = float(rng.uniform(0.1, 20.0))
        (pair, ms) = _timed(lambda: (bessel_j(two_u, x),
                                     bessel_j_contour(two_u, x).value))
        reports.append(_report(
            "jbessel_mellin", {"order2u": _c(two_u), "x": x},
            pair[0], pair[1], tol, runtime_ms=ms))
    return reports


def run_hplus(draws=20, seed=13, T=6.0, alpha=0.5, tolerance=None):
    tol = DEFAULT_TOLERANCES["hplus"] if tolerance is None else tolerance
    rng = np.random.default_rng(seed)
    hf = TestFunction(T, alpha)
    reports = []
    for _ in range(draws):
        # Physical arguments are x = 4 pi sqrt(mn)/q < 18 for the bundled
        # coefficient range; the real-line form needs x < 20.
        x = float(rng.uniform(0.05, 17.8))
        (pair, ms) = _timed(lambda: (H_plus(x, hf, form="real_line"),
                                     H_plus(x, hf, form="contour")))
        reports.append(_report(
            "hplus_real_vs_contour", {"x": x, "T": T, "alpha": alpha},
            pair[0], pair[1], tol, runtime_ms=ms))
    return reports


def run_prop32(s=0.9, u=1.3, t=0.3, q=1, n=1, m_max=None, tolerance=None):
    tol = DEFAULT_TOLERANCES["prop32"] if tolerance is None else tolerance
    s = complex(s)
    u = complex(u)
    form = eisenstein_level1(float(t))
    kwargs = {} if m_max is None else {"m_max": int(m_max)}

    def compute():
        direct, dtail = L_q_direct_with_tail(s, u, form, n, q, **kwargs)
        dec = L_q_decomposed(s, u, form, n, q, **kwargs)
        return direct, dtail, dec

    (out, ms) = _timed(compute)
    direct, dtail, dec = out
    tails = {"direct_truncation": dtail}
    tails.update(dec.tails)
    return [_report(
        "prop32_decomposition",
        {"s": _c(s), "u": _c(u), "t": t, "q": int(q), "n": int(n)},
        direct, dec.total(), tol, tails=tails, runtime_ms=ms)]


def run_kuznetsov(m=1, n=1, T=12.0, alpha=0.5, data=None, q_max=150,
                  tolerance=None):
    tol = DEFAULT_TOLERANCES["kuznetsov"] if tolerance is None else tolerance
    dataset = load_dataset(data)

    def compute():
        hf = TestFunction(float(T), float(alpha))
        return kuznetsov_sides(dataset, m, n, hf, q_max=q_max)

    (rep, ms) = _timed(compute)
    allowance = sum(rep.tails.values())
    return [_report(
        "kuznetsov_level1",
        {"m": int(m), "n": int(n), "T": T, "alpha": alpha, "q_max": q_max},
        rep.spectral_total(), rep.geometric_total(), tol,
        tails=rep.tails, runtime_ms=ms, relative=True,
        extra_allowance=allowance)]


def run_first_moment(n=1, t=0.0, T=12.0, alpha=0.5, data=None,
                     tolerance=None):
    tol = DEFAULT_TOLERANCES["first_moment"] if tolerance is None \
        else tolerance
    dataset = load_dataset(data)

    def compute():
        hf = TestFunction(float(T), float(alpha))
        lhs_rep = first_moment_lhs(dataset, n, t, hf)
        rhs_rep = assemble_rhs(0.5, eisenstein_level1(float(t)), n, hf)
        return lhs_rep, rhs_rep

    (out, ms) = _timed(compute)
    lhs_rep, rhs_rep = out
    tails = {"lhs_" + k: v for k, v in lhs_rep.tails.items()}
    tails.update({"rhs_" + k: float(v) for k, v in rhs_rep.tails.items()})
    return [_report(
        "first_moment_level1",
        {"n": int(n), "t": t, "T": T, "alpha": alpha},
        lhs_rep.total(), rhs_rep.total(), tol,
        tails=tails, runtime_ms=ms, relative=True)]


_RUNNERS = {
    "verify-lemma41": run_lemma41,
    "verify-kernels": run_kernels,
    "verify-jbessel-mellin": run_jbessel_mellin,
    "verify-hplus": run_hplus,
    "verify-prop32": run_prop32,
    "verify-kuznetsov": run_kuznetsov,
    "verify-first-moment": run_first_moment,
}


# ---------------------------------------------------------------------------
# CSV and report re-rendering.

_CSV_FIELDS = ["identity", "parameters", "lhs_re", "lhs_im", "rhs_re",
               "rhs_im", "abs_err", "rel_err", "tolerance", "passed",
               "tails", "runtime_ms"]


def _write_csv(reports, path):
    with open(path, "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=_CSV_FIELDS)
        writer.writeheader()
        for r in reports:
            writer.writerow({
                "identity": r["identity"],
                "parameters": json.dumps(r["parameters"]),
                "lhs_re": r["lhs"][0], "lhs_im": r["lhs"][1],
                "rhs_re": r["rhs"][0], "rhs_im": r["rhs"][1],
                "abs_err": r["abs_err"], "rel_err": r["rel_err"],
                "tolerance": r["tolerance"], "passed": r["passed"],
                "tails": json.dumps(r["tails"]),
                "runtime_ms": r["runtime_ms"],
            })


def _parse_value(text):
    try:
        return json.loads(text)
    except json.JSONDecodeError:
        return text


def _sweep_cases(grid_args):
    keys = []
    value_lists = []
    for item in grid_args:
        if "=" not in item:
            raise SystemExit(2)
        key, _, vals = item.partition("=")
        keys.append(key.replace("-", "_"))
        value_lists.append([_parse_value(v) for v in vals.split(",")])
    return [dict(zip(keys, combo))
            for combo in itertools.product(*value_lists)]


def _run_one_sweep_case(runner_name, kwargs):
    return _RUNNERS[runner_name](**kwargs)


# ---------------------------------------------------------------------------
# Argument parsing and dispatch.


def _build_parser():
    p = argparse.ArgumentParser(
        prog="rsmoment",
        description="Numerical verification of first-moment identities.")
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("verify-lemma41", help="divisor-sum closed form")
    sp.add_argument("--modulus", type=int)
    sp.add_argument("--M", type=int, dest="big_m")
    sp.add_argument("--n", type=int)
    sp.add_argument("--s", type=complex)
    sp.add_argument("--qmax", type=int, default=100000)
    sp.add_argument("--cases", type=int, default=100)
    sp.add_argument("--seed", type=int, default=0)

    sp = sub.add_parser("verify-kernels",
                        help="F1/F2/F3 cross-representation agreement")
    sp.add_argument("--draws", type=int, default=50)
    sp.add_argument("--seed", type=int, default=7)

    sp = sub.add_parser("verify-jbessel-mellin",
                        help="Bessel J vs its Mellin-Barnes contour form")
    sp.add_argument("--draws", type=int, default=20)
    sp.add_argument("--seed", type=int, default=11)

    sp = sub.add_parser("verify-hplus",
                        help="H_plus real-line vs contour forms")
    sp.add_argument("--draws", type=int, default=20)
    sp.add_argument("--seed", type=int, default=13)
    sp.add_argument("--T", type=float, default=6.0)
    sp.add_argument("--alpha", type=float, default=0.5)

    sp = sub.add_parser("verify-prop32",
                        help="Kloosterman-Bessel series decomposition")
    sp.add_argument("--s", type=complex, default=complex(0.9))
    sp.add_argument("--u", type=complex, default=complex(1.3))
    sp.add_argument("--t", type=float, default=0.3)
    sp.add_argument("--q", type=int, default=1)
    sp.add_argument("--n", type=int, default=1)
    sp.add_argument("--mmax", type=int)

    sp = sub.add_parser("verify-kuznetsov",
                        help="Kuznetsov trace formula at level 1")
    sp.add_argument("--m", type=int, default=1)
    sp.add_argument("--n", type=int, default=1)
    sp.add_argument("--T", type=float, default=12.0)
    sp.add_argument("--alpha", type=float, default=0.5)
    sp.add_argument("--data")
    sp.add_argument("--qmax", type=int, default=150)

    sp = sub.add_parser("verify-first-moment",
                        help="central first moment, spectral vs assembled")
    sp.add_argument("--n", type=int, default=1)
    sp.add_argument("--t", type=float, default=0.0)
    sp.add_argument("--T", type=float, default=12.0)
    sp.add_argument("--alpha", type=float, default=0.5)
    sp.add_argument("--data")

    sp = sub.add_parser("sweep",
                        help="cartesian parameter grid for a verifier")
    sp.add_argument("verifier", choices=sorted(_RUNNERS))
    sp.add_argument("--param", action="append", default=[],
                    metavar="KEY=V1,V2,...",
                    help="grid values for one runner keyword")
    sp.add_argument("--jobs", type=int, default=1)

    sp = sub.add_parser("report",
                        help="re-render stored JSON-line reports")
    sp.add_argument("path", help="file of JSON-line reports, or - for stdin")

    for name, spp in sub.choices.items():
        spp.add_argument("--tolerance", type=float)
        spp.add_argument("--csv", help="also write a CSV summary here")
    return p


def _dispatch(args):
    cmd = args.command
    if cmd == "report":
        fh = sys.stdin if args.path == "-" else open(args.path)
        try:
            reports = [json.loads(line) for line in fh if line.strip()]
        finally:
            if fh is not sys.stdin:
                fh.close()
        return reports
    if cmd == "sweep":
        cases = _sweep_cases(args.param) or [{}]
        reports = []
        if args.jobs > 1:
            with concurrent.futures.ProcessPoolExecutor(args.jobs) as pool:
                futures = [pool.submit(_run_one_sweep_case, args.verifier,
                                       dict(kw, tolerance=args.tolerance))
                           for kw in cases]
                for fut in futures:
                    reports.extend(fut.result())
        else:
            for kw in cases:
                reports.extend(_RUNNERS[args.verifier](
                    **dict(kw, tolerance=args.tolerance)))
        return reports
    if cmd == "verify-lemma41":
        return run_lemma41(modulus=args.modulus, big_m=args.big_m,
                           n=args.n, s=args.s, q_max=args.qmax,
                           cases=args.cases, seed=args.seed,
                           tolerance=args.tolerance)
    if cmd == "verify-kernels":
        return run_kernels(args.draws, args.seed, tolerance=args.tolerance)
    if cmd == "verify-jbessel-mellin":
        return run_jbessel_mellin(args.draws, args.seed,
                                  tolerance=args.tolerance)
    if cmd == "verify-hplus":
        return run_hplus(args.draws, args.seed, args.T, args.alpha,
                         tolerance=args.tolerance)
    if cmd == "verify-prop32":
        return run_prop32(args.s, args.u, args.t, args.q, args.n,
                          m_max=args.mmax, tolerance=args.tolerance)
    if cmd == "verify-kuznetsov":
        return run_kuznetsov(args.m, args.n, args.T, args.alpha,
                             data=args.data, q_max=args.qmax,
                             tolerance=args.tolerance)
    if cmd == "verify-first-moment":
        return run_first_moment(args.n, args.t, args.T, args.alpha,
                                data=args.data, tolerance=args.tolerance)
    raise SystemExit(2)


def main(argv=None):
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        reports = _dispatch(args)
    except (ValueError, OSError) as exc:
        parser.exit(2, "error: %s\n" % exc)
    for rep in reports:
        _emit(rep)
    if getattr(args, "csv", None):
        _write_csv(reports, args.csv)
    return 0 if all(r["passed"] for r in reports) else 1


if __name__ == "__main__":
    sys.exit(main())
