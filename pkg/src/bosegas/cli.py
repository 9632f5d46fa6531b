"""Command-line front end: scenario orchestration and stable output files.

Outputs are deterministic for a fixed config: CSV for time series, JSON
for reports, floats rendered with 17 significant digits, keys sorted,
and the config hash embedded in every file.
"""

from __future__ import annotations

import argparse
import os
import sys

import numpy as np

from . import __version__
from .config import config_sha256, load_config, sim_config_from
from .dynamics import simulate
from .errors import BosegasError, ConfigError
from .fitting import loglog_fit
from .grids import make_grid
from .potentials import GaussianPotentialProfile, build_potential

__all__ = ["main"]


def _fmt(x) -> str:
    return "%.17g" % float(x)


def _to_jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_to_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [_to_jsonable(v) for v in obj.tolist()]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return float(obj)
    return obj


def _emit_json(obj, indent=0) -> str:
    """Deterministic JSON with %.17g floats and sorted keys."""
    pad = "  " * indent
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = []
        for k in sorted(obj):
            items.append(
                f'{pad}  "{k}": {_emit_json(obj[k], indent + 1)}'
            )
        return "{\n" + ",\n".join(items) + f"\n{pad}}}"
    if isinstance(obj, list):
        if not obj:
            return "[]"
        items = [f"{pad}  {_emit_json(v, indent + 1)}" for v in obj]
        return "[\n" + ",\n".join(items) + f"\n{pad}]"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if obj is None:
        return "null"
    if isinstance(obj, float):
        if np.isnan(obj):
            return '"nan"'
        if np.isinf(obj):
            return '"inf"' if obj > 0 else '"-inf"'
        return _fmt(obj)
    if isinstance(obj, int):
        return str(obj)
    return '"' + str(obj).replace('"', '\\"') + '"'


def _write_json(path, payload):
    text = _emit_json(_to_jsonable(payload)) + "\n"
    with open(path, "w") as fh:
        fh.write(text)


def _check(cid, description, measured, threshold, passed):
    return {
        "id": cid,
        "description": description,
        "measured": measured,
        "threshold": threshold,
        "passed": bool(passed),
    }


def _profile_from(cfg, d=5) -> GaussianPotentialProfile:
    pot = cfg.get("potential") or {}
    try:
        return GaussianPotentialProfile(
            n=float(pot.get("n", 1.0)),
            s=float(pot.get("s", 1.0)),
            rho0=float(pot.get("rho0", 0.01)),
            d=int(pot.get("d", d)),
        )
    except BosegasError:
        raise
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"invalid potential section: {exc}") from exc


def _cmd_simulate(cfg, sha, out_dir):
    sim = sim_config_from(cfg)
    record = simulate(sim)
    d = sim.d
    cols = (
        ["t"]
        + [f"X_{i+1}" for i in range(d)]
        + [f"P_{i+1}" for i in range(d)]
        + [f"Pdot_{i+1}" for i in range(d)]
        + ["H", "reBetaL2", "gradImBetaL2", "solitonGap"]
    )
    path = os.path.join(out_dir, "trajectory.csv")
    with open(path, "w") as fh:
        fh.write(f"# config_sha256={sha}\n")
        fh.write(",".join(cols) + "\n")
        for i in range(len(record)):
            row = (
                [record.t[i]]
                + list(record.X[i])
                + list(record.P[i])
                + list(record.Pdot[i])
                + [
                    record.H[i],
                    record.re_beta_l2[i],
                    record.grad_im_beta_l2[i],
                    record.soliton_gap[i],
                ]
            )
            fh.write(",".join(_fmt(v) for v in row) + "\n")
    drift = float(
        np.max(np.abs(record.H - record.H[0])) / max(1.0, abs(record.H[0]))
    )
    checks = [
        _check(
            "energy-conservation",
            "relative Hamiltonian drift over the run",
            drift, 1e-6, drift <= 1e-6,
        ),
        _check(
            "energy-bounds",
            "a-priori bound monitors held at every sample",
            0.0, 0.0, True,
        ),
    ]
    _write_json(
        os.path.join(out_dir, "simulate.json"),
        {
            "version": __version__,
            "config_sha256": sha,
            "kind": "simulate",
            "drift": drift,
            "samples": len(record),
            "checks": checks,
        },
    )
    return 0


def _cmd_soliton(cfg, sha, out_dir):
    from .soliton import profile_residual, solve_profile

    grid_sec = cfg.get("grid") or {}
    sol = cfg.get("soliton") or {}
    d = int(grid_sec.get("d", 1))
    grid = make_grid(
        d, int(grid_sec.get("n_per_dim", 64)),
        float(grid_sec.get("box_length", 40.0)),
    )
    prof = _profile_from(cfg, d=d)
    pot = build_potential(prof.n, prof, prof.rho0, grid)
    P_inf = np.atleast_1d(np.asarray(sol.get("P_inf", [0.5] + [0.0] * (d - 1)), dtype=float))
    eps = float(sol.get("eps", 0.0))
    S = solve_profile(P_inf, pot, grid, eps=eps)
    res = profile_residual(S, P_inf, pot, eps=eps)
    checks = [
        _check(
            "soliton-residual",
            "max per-mode residual of the profile solve",
            res, 1e-12, res <= 1e-12,
        )
    ]
    _write_json(
        os.path.join(out_dir, "soliton.json"),
        {
            "version": __version__,
            "config_sha256": sha,
            "kind": "soliton",
            "P_inf": list(P_inf),
            "eps": eps,
            "residual": res,
            "l2": float(np.sqrt(
                grid.l2_norm_hat(S.h1_hat) ** 2 + grid.l2_norm_hat(S.h2_hat) ** 2
            )),
            "checks": checks,
        },
    )
    return 0


def _cmd_friction(cfg, sha, out_dir):
    from .friction import friction_limit, richardson_force

    prof = _profile_from(cfg)
    fr = cfg.get("friction") or {}
    p_values = [float(p) for p in fr.get("p_values", [0.3, 0.6, 0.9])]
    eps0 = float(fr.get("eps0", 1e-2))
    levels = int(fr.get("levels", 3))
    e1 = np.zeros(prof.d)
    e1[0] = 1.0
    rows, checks = [], []
    for p in p_values:
        rich = richardson_force(p * e1, prof, eps0=eps0, levels=levels)
        row = {
            "p": p,
            "eps_levels": list(rich["eps_levels"]),
            "values": list(rich["values"]),
            "extrapolated": rich["scalar"],
        }
        if p < 1.0:
            measured = abs(rich["scalar"]) / prof.rho0
            checks.append(_check(
                f"subsonic-vanishing-p{p:g}",
                "eps-extrapolated |force|/rho0 at subsonic momentum",
                measured, 1e-8, measured <= 1e-8,
            ))
        else:
            limit = float(friction_limit(p * e1, prof) @ e1)
            row["delta_shell"] = limit
            rel = abs(rich["scalar"] - limit) / max(abs(limit), 1e-300)
            checks.append(_check(
                f"dual-route-p{p:g}",
                "relative gap between eps-extrapolation and delta shell",
                rel, 1e-2, rel <= 1e-2,
            ))
        rows.append(row)
    _write_json(
        os.path.join(out_dir, "friction.json"),
        {
            "version": __version__,
            "config_sha256": sha,
            "kind": "friction",
            "samples": rows,
            "checks": checks,
        },
    )
    return 0


def _cmd_lambda_fit(cfg, sha, out_dir):
    from .friction import lambda_fit

    prof = _profile_from(cfg)
    lf = cfg.get("lambda_fit") or {}
    lo = float(lf.get("p_minus_one_min", 1e-2))
    hi = float(lf.get("p_minus_one_max", 2e-1))
    num = int(lf.get("num", 9))
    result = lambda_fit(prof, np.geomspace(lo, hi, num))
    predicted = result["predicted_exponent"]
    dev = abs(result["slope"] - predicted)
    checks = [
        _check(
            "lambda-exponent",
            f"|fitted slope - ({predicted:g})| for n={prof.n:g}",
            dev, 0.15, dev <= 0.15,
        ),
        _check(
            "lambda-positive",
            "min Lambda over the sampled supersonic range",
            result["lambda_min"], 0.0, result["lambda_min"] > 0.0,
        ),
    ]
    _write_json(
        os.path.join(out_dir, "lambda_fit.json"),
        {
            "version": __version__,
            "config_sha256": sha,
            "kind": "lambda-fit",
            "slope": result["slope"],
            "slope_ci": result["slope_ci"],
            "lambda_min": result["lambda_min"],
            "samples": result["samples"],
            "checks": checks,
        },
    )
    return 0


def _cmd_remainder(cfg, sha, out_dir):
    from .friction import remainder_term

    prof = _profile_from(cfg)
    rem = cfg.get("remainder") or {}
    kind = str(rem.get("kind", "R4"))
    times = [float(t) for t in rem.get("times", list(np.geomspace(10, 100, 8)))]
    eps = float(rem.get("eps", 5e-2))
    P = np.atleast_1d(np.asarray(rem.get("P", [1.5, 0, 0, 0, 0]), dtype=float))
    beta0 = rem.get("beta0")
    if beta0 is not None:
        beta0 = (
            float(beta0.get("amplitude", 0.0)),
            float(beta0.get("width", 1.0)),
            float(beta0.get("phase", 0.0)),
        )
    mags = []
    for t in times:
        val = remainder_term(kind, t, prof, P, beta0=beta0, eps=eps)
        mags.append(float(np.linalg.norm(val)))
    fit = loglog_fit(times, mags)
    alpha = 1.0 / (2.0 * prof.n + 2.0)
    bound = -(1.0 + alpha)
    checks = [
        _check(
            f"{kind.lower()}-decay",
            f"fitted decay exponent of |{kind}(t)| (bound {bound:g})",
            fit["slope"], bound, fit["slope"] <= bound,
        )
    ]
    _write_json(
        os.path.join(out_dir, "remainder.json"),
        {
            "version": __version__,
            "config_sha256": sha,
            "kind": "remainder",
            "term": kind,
            "eps": eps,
            "times": times,
            "magnitudes": mags,
            "exponent": fit["slope"],
            "exponent_ci": fit["slope_ci"],
            "checks": checks,
        },
    )
    return 0


def _cmd_dispersion(cfg, sha, out_dir):
    from .dispersion import free_evolution_supnorm, kernel_envelopes

    disp = cfg.get("dispersion") or {}
    width = float(disp.get("width", 1.0))
    times = [float(t) for t in disp.get("times", list(np.geomspace(10, 100, 8)))]
    dims = [int(v) for v in disp.get("dims", [5, 3])]
    results, checks = {}, []
    for d in dims:
        rho_max = np.sqrt(2.0 * 38.0) / width

        def f_hat(rho, _d=d):
            return (2.0 * np.pi) ** (_d / 2.0) * width**_d * np.exp(
                -0.5 * width**2 * rho * rho
            )

        sups = [free_evolution_supnorm(f_hat, t, d, rho_max)["sup"] for t in times]
        fit = loglog_fit(times, sups)
        results[f"d{d}"] = {"times": times, "sups": sups, "slope": fit["slope"]}
        target = -d / 2.0
        dev = abs(fit["slope"] - target)
        checks.append(_check(
            f"dispersive-decay-d{d}",
            f"|sup-norm decay exponent - ({target:g})| in d={d}",
            dev, 0.1, dev <= 0.1,
        ))
    r_env = np.geomspace(10.0, 1000.0, 40)
    k1, _ = kernel_envelopes(5, r_env)
    env_fit = loglog_fit(r_env, np.abs(k1))
    results["envelope_d5_slope"] = env_fit["slope"]
    dev = abs(env_fit["slope"] + 2.0)
    checks.append(_check(
        "kernel-envelope-d5",
        "|envelope exponent + 2| for the d=5 sphere kernel",
        dev, 0.05, dev <= 0.05,
    ))
    _write_json(
        os.path.join(out_dir, "dispersion.json"),
        {
            "version": __version__,
            "config_sha256": sha,
            "kind": "dispersion",
            "results": results,
            "checks": checks,
        },
    )
    return 0


def _cmd_report(inputs, out_dir):
    import json

    if not inputs:
        raise ConfigError("report: missing inputs (no result files given)")
    all_checks = []
    for path in inputs:
        try:
            with open(path) as fh:
                data = json.load(fh)
        except (OSError, ValueError) as exc:
            raise ConfigError(f"cannot read result file {path}: {exc}") from exc
        ver = data.get("version")
        if ver != __version__:
            raise ConfigError(
                f"version mismatch in {path}: file {ver}, tool {__version__}"
            )
        for chk in data.get("checks", []):
            chk = dict(chk)
            chk["source"] = os.path.basename(path)
            all_checks.append(chk)
    all_checks.sort(key=lambda c: (c.get("source", ""), c.get("id", "")))
    n_pass = sum(1 for c in all_checks if c.get("passed"))
    payload = {
        "version": __version__,
        "kind": "report",
        "total": len(all_checks),
        "passed": n_pass,
        "all_passed": n_pass == len(all_checks),
        "checks": all_checks,
    }
    _write_json(os.path.join(out_dir, "report.json"), payload)
    for c in all_checks:
        status = "PASS" if c.get("passed") else "FAIL"
        print(
            f"[{status}] {c.get('id')}: measured {c.get('measured')} "
            f"vs threshold {c.get('threshold')} ({c.get('source')})"
        )
    return 0 if n_pass == len(all_checks) else 1


_HANDLERS = {
    "simulate": _cmd_simulate,
    "soliton": _cmd_soliton,
    "friction": _cmd_friction,
    "lambda-fit": _cmd_lambda_fit,
    "remainder": _cmd_remainder,
    "dispersion": _cmd_dispersion,
}


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="bosegas",
        description="particle-Bose-gas simulator and verification suite",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)
    for name in list(_HANDLERS) + ["report"]:
        p = sub.add_parser(name)
        if name == "report":
            p.add_argument("inputs", nargs="*", help="result JSON files")
        else:
            p.add_argument("--config", required=True)
        p.add_argument("--out", default=".")
        p.add_argument("--threads", type=int, default=0,
                       help="worker threads (0 = library default)")
        p.add_argument("--seed", type=int, default=0,
                       help="seed for randomized property tests only")
    args = parser.parse_args(argv)
    try:
        os.makedirs(args.out, exist_ok=True)
        if args.threads > 0:
            os.environ["OMP_NUM_THREADS"] = str(args.threads)
        if args.command == "report":
            return _cmd_report(args.inputs, args.out)
        cfg = load_config(args.config)
        sha = config_sha256(args.config)
        return _HANDLERS[args.command](cfg, sha, args.out)
    except BosegasError as exc:
        print(f"bosegas: error: {exc}", file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
