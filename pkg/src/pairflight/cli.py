"""Command-line driver: scenario configuration, batch runs, CSV emission.

Every subcommand writes plain CSV files with a commented metadata header
(version, conventions, quadrature fingerprint) plus a plain-text manifest,
using full 17-significant-digit decimals so downstream plotting is lossless.
Grids and reductions are fixed, so repeated runs with the same configuration
are bit-identical regardless of worker count.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .specfun import faddeeva_w, erfc_complex
from .wavepacket import CoherentState
from .pairstats import (
    ExchangeStatistics,
    ParticlePair,
    normalization_sq,
    pair_density_free,
    overlap_pair,
    overlap_limits,
)
from .barrier import (
    Channel,
    DeltaBarrier,
    EpsilonConvention,
    reflection_amp,
    transmission_amp,
    psi_T_asym,
    psi_T_exact,
)
from .relkin import RelativisticState, rel_pair_screen_density, lightfront_reference_density
from .flighttime import (
    QuadratureSpec,
    QuadratureError,
    Weighting,
    arrival_family,
    screen_density_free,
)
from .analysis import (
    ALL_STATS,
    SCAN_GAMMAS,
    case_by_name,
    gamma_scan,
    linear_fit,
    mean_time_table,
    predicted_intercept,
    CASE_I,
)

KNOWN_KEYS = {
    "case",
    "out_dir",
    "epsilon",
    "epsilon_convention",
    "screen",
    "weighting",
    "propagator",
    "workers",
    "tau_points",
    "z_points",
    "tau_max",
    "z_window_halfwidth",
    "tail_tolerance",
    "gammas",
    "kappa",
    "rel_x1",
    "rel_x2",
    "beta1",
    "beta2",
}

_REL_CASES = {
    # screen-side geometry of the relativistic comparison scenarios
    "I": {"rel_x1": -3.5, "rel_x2": -3.0, "beta1": 0.99, "beta2": 0.99},
    "II": {"rel_x1": -3.0, "rel_x2": -3.0, "beta1": 0.984, "beta2": 0.996},
}


def _fmt(v) -> str:
    return format(float(v), ".17g")


def read_config(path: str) -> dict:
    cfg = {}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise SystemExit(f"{path}:{lineno}: expected 'key = value', got {raw!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        if key not in KNOWN_KEYS:
            raise SystemExit(f"{path}:{lineno}: unknown configuration key {key!r}")
        cfg[key] = value
    return cfg


def _settings(args) -> dict:
    cfg = read_config(args.config) if getattr(args, "config", None) else {}
    for key in KNOWN_KEYS:
        flag = getattr(args, key, None)
        if flag is not None:
            cfg[key] = flag
    return cfg


def _quad(cfg) -> QuadratureSpec:
    return QuadratureSpec(
        z_window_halfwidth=float(cfg.get("z_window_halfwidth", 12.0)),
        z_points=int(cfg.get("z_points", 4096)),
        tau_max=None if cfg.get("tau_max") in (None, "auto") else float(cfg["tau_max"]),
        tau_points=int(cfg.get("tau_points", 2401)),
        tail_tolerance=float(cfg.get("tail_tolerance", 1e-6)),
        propagator=str(cfg.get("propagator", "asymptotic")),
    )


def _weighting(cfg) -> Weighting:
    return Weighting(str(cfg.get("weighting", "current")))


def _convention(cfg) -> EpsilonConvention:
    return EpsilonConvention(str(cfg.get("epsilon_convention", "alpha_of_k")))


def _meta(cfg, quad) -> str:
    return (
        f"convention={_convention(cfg).value};weighting={_weighting(cfg).value};"
        f"quad[{quad.fingerprint()}]"
    )


def write_csv(path: Path, columns: dict, meta: str):
    names = list(columns)
    arrays = [np.atleast_1d(np.asarray(columns[n])) for n in names]
    with path.open("w") as fh:
        fh.write(f"# pairflight {__version__}\n")
        fh.write(f"# {meta}\n")
        fh.write(f"# columns: {','.join(names)}\n")
        fh.write(",".join(names) + "\n")
        for row in zip(*arrays):
            fh.write(",".join(_fmt(v) for v in row) + "\n")


def write_manifest(outdir: Path, name: str, cfg: dict, quad: QuadratureSpec, files):
    lines = [
        f"pairflight {__version__}",
        f"subcommand: {name}",
        f"convention: {_convention(cfg).value}",
        f"weighting: {_weighting(cfg).value}",
        f"quadrature: {quad.fingerprint()}",
    ]
    for key in sorted(cfg):
        lines.append(f"config {key} = {cfg[key]}")
    for f in files:
        lines.append(f"file: {f.name}")
    (outdir / f"{name}_manifest.txt").write_text("\n".join(lines) + "\n")


def _outdir(cfg) -> Path:
    out = Path(cfg.get("out_dir", "."))
    out.mkdir(parents=True, exist_ok=True)
    return out


def _case(cfg):
    return case_by_name(str(cfg.get("case", "I")))


def _stats_columns(fn):
    return {f"{s.value}": fn(s) for s in ALL_STATS}


def cmd_free_dist(args) -> int:
    cfg = _settings(args)
    case = _case(cfg)
    quad = _quad(cfg)
    out = _outdir(cfg)
    screen = float(cfg.get("screen", case.screen_abs))
    x_grid = np.linspace(case.mean_x - 20.0, case.mean_x + 20.0, 2001)
    initial = {"x": x_grid}
    for s in ALL_STATS:
        initial[s.value] = pair_density_free(case.pair(s), x_grid, 0.0)
    tau_fp = case.free_flight_time
    tau_grid = np.linspace(max(tau_fp - 25.0, 0.0), tau_fp + 25.0, 2001)
    arrive = {"tau": tau_grid}
    for s in ALL_STATS:
        rho = screen_density_free(case.pair(s), screen, tau_grid)
        arrive[s.value] = rho
        arrive[f"{s.value}_peak_norm"] = rho / np.max(rho)
    meta = _meta(cfg, quad)
    f1 = out / f"free_initial_case{case.name}.csv"
    f2 = out / f"free_arrival_case{case.name}.csv"
    write_csv(f1, initial, meta)
    write_csv(f2, arrive, meta)
    write_manifest(out, f"free-dist-case{case.name}", cfg, quad, [f1, f2])
    return 0


def cmd_survival(args) -> int:
    cfg = _settings(args)
    case = _case(cfg)
    quad = _quad(cfg)
    out = _outdir(cfg)
    tau_grid = np.linspace(0.0, 10.0, 2001)
    cols = {"tau": tau_grid}
    for s in ALL_STATS:
        cols[s.value] = overlap_pair(case.pair(s), tau_grid)
    dx = case.positions[1] - case.positions[0]
    dk = case.momenta[1] - case.momenta[0]
    cols["boson_limit"] = overlap_limits(ExchangeStatistics.BOSON, dx, dk, tau_grid)
    cols["fermion_limit"] = overlap_limits(ExchangeStatistics.FERMION, dx, dk, tau_grid)
    f1 = out / f"survival_case{case.name}.csv"
    write_csv(f1, cols, _meta(cfg, quad))
    write_manifest(out, f"survival-case{case.name}", cfg, quad, [f1])
    return 0


def cmd_rel_dist(args) -> int:
    cfg = _settings(args)
    name = str(cfg.get("case", "I")).upper()
    rel = dict(_REL_CASES[name])
    for key in rel:
        if cfg.get(key) is not None:
            rel[key] = float(cfg[key])
    kappa = float(cfg.get("kappa", 1.0))
    quad = _quad(cfg)
    out = _outdir(cfg)
    screen = float(cfg.get("screen", 0.0))
    s1 = RelativisticState(rel["rel_x1"], rel["beta1"], kappa)
    s2 = RelativisticState(rel["rel_x2"], rel["beta2"], kappa)
    tau_grid = np.linspace(0.0, 8.0, 2001)
    cols = {
        "tau": tau_grid,
        "photons": rel_pair_screen_density(
            s1, s2, ExchangeStatistics.BOSON, screen, tau_grid, massless=True
        ),
        "electrons": rel_pair_screen_density(
            s1, s2, ExchangeStatistics.FERMION, screen, tau_grid
        ),
        "electrons_lightfront": 0.5
        * (
            lightfront_reference_density(s1, screen, tau_grid)
            + lightfront_reference_density(s2, screen, tau_grid)
        ),
    }
    f1 = out / f"rel_arrival_case{name}.csv"
    write_csv(f1, cols, _meta(cfg, quad))
    write_manifest(out, f"rel-dist-case{name}", cfg, quad, [f1])
    return 0


def cmd_barrier_dist(args) -> int:
    cfg = _settings(args)
    case = _case(cfg)
    quad = _quad(cfg)
    out = _outdir(cfg)
    weighting = _weighting(cfg)
    workers = int(cfg.get("workers", 1))
    ref = case.pair(ExchangeStatistics.DISTINGUISHABLE)
    cols = {}
    for channel, screen, tag in (
        (Channel.TRANSMITTED, case.screen_abs, "transmitted"),
        (Channel.REFLECTED, -case.screen_abs, "reflected"),
    ):
        fam = arrival_family(ref, case.barrier(), channel, screen, quad, weighting, workers)
        for s in ALL_STATS:
            cols.setdefault("tau", fam[s].tau_grid)
            cols[f"{tag}_{s.value}"] = fam[s].arrival_density
    f1 = out / f"barrier_arrival_case{case.name}.csv"
    write_csv(f1, cols, _meta(cfg, quad))
    write_manifest(out, f"barrier-dist-case{case.name}", cfg, quad, [f1])
    return 0


def cmd_mean_times(args) -> int:
    cfg = _settings(args)
    case = _case(cfg)
    quad = _quad(cfg)
    out = _outdir(cfg)
    table = mean_time_table(case, quad, _weighting(cfg), workers=int(cfg.get("workers", 1)))
    cols = {
        "statistics": np.arange(len(ALL_STATS)),
        "transmitted": [table[Channel.TRANSMITTED][s] for s in ALL_STATS],
        "reflected": [table[Channel.REFLECTED][s] for s in ALL_STATS],
    }
    f1 = out / f"mean_times_case{case.name}.csv"
    names = [s.value for s in ALL_STATS]
    with f1.open("w") as fh:
        fh.write(f"# pairflight {__version__}\n")
        fh.write(f"# {_meta(cfg, quad)}\n")
        fh.write("# columns: statistics,transmitted,reflected\n")
        fh.write("statistics,transmitted,reflected\n")
        for i, s in enumerate(names):
            fh.write(
                f"{s},{_fmt(cols['transmitted'][i])},{_fmt(cols['reflected'][i])}\n"
            )
    write_manifest(out, f"mean-times-case{case.name}", cfg, quad, [f1])
    for i, s in enumerate(names):
        print(f"{s}: transmitted {cols['transmitted'][i]:.4f} reflected {cols['reflected'][i]:.4f}")
    return 0


def cmd_gamma_scan(args) -> int:
    cfg = _settings(args)
    quad = _quad(cfg)
    out = _outdir(cfg)
    gammas = (
        tuple(float(g) for g in str(cfg["gammas"]).split(",")) if "gammas" in cfg else SCAN_GAMMAS
    )
    points = gamma_scan(
        gammas, CASE_I, quad, _weighting(cfg), workers=int(cfg.get("workers", 1))
    )
    first = points[ExchangeStatistics.DISTINGUISHABLE]
    cols = {"gamma": [p.gamma_width for p in first]}
    for s in ALL_STATS:
        cols[f"transmitted_{s.value}"] = [p.mean_tau_T for p in points[s]]
        cols[f"reflected_{s.value}"] = [p.mean_tau_R for p in points[s]]
    meta = _meta(cfg, quad)
    f1 = out / "gamma_scan.csv"
    write_csv(f1, cols, meta)
    f2 = out / "gamma_scan_fit.csv"
    pred_a = predicted_intercept(CASE_I, EpsilonConvention.ALPHA_OF_K)
    pred_r = predicted_intercept(CASE_I, EpsilonConvention.REDUCED_COUPLING)
    with f2.open("w") as fh:
        fh.write(f"# pairflight {__version__}\n")
        fh.write(f"# {meta}\n")
        header = (
            "statistics,channel,slope_b,intercept_c,r_squared,intercept_stderr,"
            "predicted_alpha_of_k,predicted_reduced_coupling"
        )
        fh.write(f"# columns: {header}\n{header}\n")
        for s in ALL_STATS:
            for tag, vals in (
                ("transmitted", [p.mean_tau_T for p in points[s]]),
                ("reflected", [p.mean_tau_R for p in points[s]]),
            ):
                fit = linear_fit(cols["gamma"], vals)
                fh.write(
                    f"{s.value},{tag},{_fmt(fit.slope_b)},{_fmt(fit.intercept_c)},"
                    f"{_fmt(fit.r_squared)},{_fmt(fit.intercept_stderr)},"
                    f"{_fmt(pred_a)},{_fmt(pred_r)}\n"
                )
    write_manifest(out, "gamma-scan", cfg, quad, [f1, f2])
    return 0


def cmd_selftest(args) -> int:
    failures = []

    def check(name, ok):
        print(f"[{'PASS' if ok else 'FAIL'}] {name}")
        if not ok:
            failures.append(name)

    check("faddeeva w(0) = 1", abs(faddeeva_w(0) - 1.0) < 1e-14)
    check("erfc(0) = 1", abs(erfc_complex(0) - 1.0) < 1e-14)
    ks = np.linspace(0.1, 100.0, 200)
    barrier = DeltaBarrier(1.0)
    uni = np.abs(reflection_amp(ks, barrier)) ** 2 + np.abs(transmission_amp(ks, barrier)) ** 2
    check("|R|^2 + |T|^2 = 1", np.max(np.abs(uni - 1.0)) < 1e-14)
    x = np.linspace(-360.0, 60.0, 40001)
    for s in ALL_STATS:
        pair = CASE_I.pair(s)
        norm = np.trapezoid(pair_density_free(pair, x, 20.0), x)
        check(f"free pair density normalized ({s.value})", abs(norm - 1.0) < 1e-8)
    st = CoherentState(-300.0, 10.0)
    exact = psi_T_exact(st, barrier, 450.0, 75.0)
    asym = psi_T_asym(st, barrier, 450.0, 75.0)
    check("exact vs asymptotic propagator", abs(exact - asym) / abs(exact) < 1e-3)
    pair = ParticlePair(CoherentState(0, 0), CoherentState(1e-4, 0), ExchangeStatistics.FERMION)
    of = overlap_pair(pair, 2.0)
    check("fermion overlap limit", abs(of - 0.5) < 1e-5)
    check("pair norm positive", normalization_sq(pair) > 0)
    quad = QuadratureSpec(tau_points=601, z_points=1024)
    fam = arrival_family(
        CASE_I.pair(ExchangeStatistics.BOSON),
        barrier,
        Channel.TRANSMITTED,
        450.0,
        quad,
    )
    for s in ALL_STATS:
        p = fam[s]
        total = np.trapezoid(p.arrival_density, p.tau_grid)
        check(f"arrival distribution normalized ({s.value})", abs(total - 1.0) < 1e-6)
    if failures:
        print(f"{len(failures)} self-test failure(s)", file=sys.stderr)
        return 1
    print("selftest OK")
    return 0


def cmd_specfun(args) -> int:
    z = complex(args.re, args.im)
    print(f"w({z}) = {faddeeva_w(z)}")
    print(f"erfc({z}) = {erfc_complex(z)}")
    return 0


def _add_common(sub):
    sub.add_argument("--config", help="plain-text key = value configuration file")
    sub.add_argument("--case", choices=["I", "II"], help="benchmark case")
    sub.add_argument("--out-dir", dest="out_dir", help="output directory")
    sub.add_argument("--epsilon-convention", dest="epsilon_convention",
                     choices=[c.value for c in EpsilonConvention])
    sub.add_argument("--weighting", choices=[w.value for w in Weighting])
    sub.add_argument("--propagator", choices=["asymptotic", "exact"])
    sub.add_argument("--workers", type=int)
    sub.add_argument("--tau-points", dest="tau_points", type=int)
    sub.add_argument("--z-points", dest="z_points", type=int)
    sub.add_argument("--tau-max", dest="tau_max")
    sub.add_argument("--screen", type=float)
    sub.add_argument("--gammas", help="comma-separated width parameters for the scan")


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="pairflight",
        description="Flight-time distributions for pairs of identical particles",
    )
    parser.add_argument("--version", action="version", version=f"pairflight {__version__}")
    subs = parser.add_subparsers(dest="command", required=True)
    for name, fn, desc in (
        ("free-dist", cmd_free_dist, "free-flight initial and screen densities"),
        ("survival", cmd_survival, "pair survival overlap and its limit forms"),
        ("rel-dist", cmd_rel_dist, "relativistic photon/electron screen densities"),
        ("barrier-dist", cmd_barrier_dist, "barrier arrival-time distributions"),
        ("mean-times", cmd_mean_times, "mean transmitted/reflected flight times"),
        ("gamma-scan", cmd_gamma_scan, "mean times versus width parameter, with fits"),
        ("selftest", cmd_selftest, "run the quick invariant suite"),
    ):
        sub = subs.add_parser(name, help=desc)
        _add_common(sub)
        sub.set_defaults(func=fn)
    # debugging helper, deliberately undocumented
    spec = subs.add_parser("specfun")
    spec.add_argument("action", choices=["eval"])
    spec.add_argument("re", type=float)
    spec.add_argument("im", type=float)
    spec.set_defaults(func=cmd_specfun)
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except QuadratureError as exc:
        print(f"quadrature failure: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
