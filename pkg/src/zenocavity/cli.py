"""Command-line front end.

Subcommands: fig2, fig3, theorem, compare, info.  Parameters come from
built-in defaults, then an optional ``key = value`` config file, then
command-line flags, in increasing precedence.  All interface units are SI
seconds and rad/s.

Exit codes: 0 success, 1 configuration error, 2 numerical accuracy error,
3 I/O error.
"""

import argparse
import dataclasses
import math
import sys
from dataclasses import dataclass

from .analytic import (
    CavityParams,
    PulseSchedule,
    critical_tau_m,
    displacement_alpha,
    mean_photon_zeno,
    photon_bound,
)
from .errors import AccuracyError, ConfigError, ParameterError, TruncationError
from .propagator import IntegratorConfig
from .sweep import (
    TheoremRow,
    default_grid,
    fig2_curves,
    fig3_grid,
    oracle_compare,
    write_csv,
)
from .zenotheorem import random_zeno_system, verify_system, zeno_convergence

CRIT_OFFSET_S = 3.5e-6   # offset of the near-critical comparison curve


@dataclass
class RunConfig:
    """Defaults are the reference parameter set under the angular convention."""

    chi_rad_per_s: float = 1.0e4
    delta_rad_per_s: float = 0.5
    f_rad_per_s: float = 400.0
    omega_rad_per_s: float = 0.0
    tau_s: float = 5.0e-5
    tau_m_s: float = 5.0e-3
    n_cycles: int = 100
    t_total_s: float = 1.0e-3
    seed: int = 42
    steps_per_pulse: int = 1024

    def validate(self):
        if self.tau_s <= 0:
            raise ConfigError(f"tau_s must be > 0, got {self.tau_s}")
        if self.tau_m_s < 0:
            raise ConfigError(f"tau_m_s must be >= 0, got {self.tau_m_s}")
        if self.f_rad_per_s < 0:
            raise ConfigError(f"f_rad_per_s must be >= 0, got {self.f_rad_per_s}")
        if self.t_total_s <= 0:
            raise ConfigError(f"t_total_s must be > 0, got {self.t_total_s}")
        if self.n_cycles < 1:
            raise ConfigError(f"n_cycles must be >= 1, got {self.n_cycles}")
        if self.steps_per_pulse < 16:
            raise ConfigError(f"steps_per_pulse must be >= 16, got {self.steps_per_pulse}")

    def cavity_params(self) -> CavityParams:
        return CavityParams(
            omega=self.omega_rad_per_s,
            delta=self.delta_rad_per_s,
            f=self.f_rad_per_s,
            chi=self.chi_rad_per_s,
        )


_FIELDS = {f.name: f for f in dataclasses.fields(RunConfig)}
_INT_FIELDS = {"n_cycles", "seed", "steps_per_pulse"}


def parse_config_file(path) -> dict:
    """Read ``key = value`` lines; '#' starts a comment; unknown keys rejected."""
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.readlines()
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from exc
    values = {}
    for lineno, raw in enumerate(lines, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected 'key = value', got {raw.strip()!r}")
        key, _, text = line.partition("=")
        key, text = key.strip(), text.strip()
        if key not in _FIELDS:
            raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
        try:
            values[key] = int(text) if key in _INT_FIELDS else float(text)
        except ValueError as exc:
            raise ConfigError(f"{path}:{lineno}: cannot parse value for {key!r}: {text!r}") from exc
    return values


def parse_config(path=None, overrides=None) -> RunConfig:
    """Defaults, then config file, then explicit overrides."""
    values = {}
    if path is not None:
        values.update(parse_config_file(path))
    for key, val in (overrides or {}).items():
        if val is None:
            continue
        if key not in _FIELDS:
            raise ConfigError(f"unknown configuration key {key!r}")
        values[key] = int(val) if key in _INT_FIELDS else float(val)
    cfg = RunConfig(**values)
    cfg.validate()
    return cfg


def _add_shared_flags(parser):
    parser.add_argument("--config", metavar="FILE", help="key = value config file")
    parser.add_argument("--chi", dest="chi_rad_per_s", type=float, help="dispersive shift g^2/Delta [rad/s]")
    parser.add_argument("--delta", dest="delta_rad_per_s", type=float, help="drive detuning [rad/s]")
    parser.add_argument("--f", dest="f_rad_per_s", type=float, help="drive strength [rad/s]")
    parser.add_argument("--omega", dest="omega_rad_per_s", type=float, help="cavity frequency [rad/s]")
    parser.add_argument("--tau", dest="tau_s", type=float, help="drive pulse duration [s]")
    parser.add_argument("--tau-m", dest="tau_m_s", type=float, help="measurement duration [s]")
    parser.add_argument("--n-cycles", dest="n_cycles", type=int, help="number of drive/measure cycles")
    parser.add_argument("--t-total", dest="t_total_s", type=float, help="total drive-on time [s]")
    parser.add_argument("--seed", dest="seed", type=int, help="random seed for theorem systems")
    parser.add_argument("--steps-per-pulse", dest="steps_per_pulse", type=int, help="integrator substeps per pulse")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="zenocavity",
        description="Pulsed-drive cavity simulator: photon-growth freezing by dispersive kicks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("fig2", help="n(N) curves: free growth, frozen, near-critical")
    _add_shared_flags(p)
    p.add_argument("--n-max", type=int, default=200)
    p.add_argument("--tau-m-zeno", type=float, default=None, help="frozen-curve tau_m [s] (default: config tau_m_s)")
    p.add_argument("--tau-m-crit", type=float, default=None, help="near-critical tau_m [s] (default: 2 pi/chi + 3.5 us)")
    p.add_argument("--out", default="fig2.csv")

    p = sub.add_parser("fig3", help="normalized n over the (tau, tau_m) grid")
    _add_shared_flags(p)
    p.add_argument("--out", default="fig3.csv")

    p = sub.add_parser("theorem", help="finite-dimensional freezing-theorem checks")
    _add_shared_flags(p)
    p.add_argument("--dim", type=int, default=3)
    p.add_argument("--n-list", default="64,128,256,512", help="comma-separated cycle counts")
    p.add_argument("--sys-tau-m", type=float, default=0.4, help="kick duration of the test system [s]")
    p.add_argument("--sys-t-total", type=float, default=1.0, help="fixed total time of the test system [s]")
    p.add_argument("--out", default="theorem.csv")

    p = sub.add_parser("compare", help="analytic vs propagated mean photon number")
    _add_shared_flags(p)
    p.add_argument("--dim", type=int, default=None, help="Fock truncation (default: auto)")
    p.add_argument("--out", default="compare.csv")

    p = sub.add_parser("info", help="derived quantities from the configuration alone")
    _add_shared_flags(p)
    return parser


def _config_from_args(args) -> RunConfig:
    overrides = {name: getattr(args, name, None) for name in _FIELDS}
    return parse_config(path=args.config, overrides=overrides)


def _cmd_fig2(args, cfg: RunConfig) -> int:
    params = cfg.cavity_params()
    tau_m_zeno = cfg.tau_m_s if args.tau_m_zeno is None else args.tau_m_zeno
    if args.tau_m_crit is None:
        tau_m_crit = critical_tau_m(params, 1) + CRIT_OFFSET_S
    else:
        tau_m_crit = args.tau_m_crit
    rows = fig2_curves(params, cfg.tau_s, args.n_max, tau_m_zeno, tau_m_crit)
    write_csv(rows, args.out)
    print(f"wrote {len(rows)} rows to {args.out} "
          f"(tau_m_zeno={tau_m_zeno:g} s, tau_m_crit={tau_m_crit:g} s)")
    return 0


def _cmd_fig3(args, cfg: RunConfig) -> int:
    params = cfg.cavity_params()
    grid = default_grid(params)
    rows = fig3_grid(params, grid)
    write_csv(rows, args.out)
    flagged = len(grid.flagged_taus)
    print(f"wrote {len(rows)} rows to {args.out} "
          f"({flagged} tau values flagged as not dividing t_total)")
    return 0


def _cmd_theorem(args, cfg: RunConfig) -> int:
    try:
        n_list = [int(part) for part in args.n_list.split(",") if part.strip()]
    except ValueError as exc:
        raise ConfigError(f"cannot parse --n-list {args.n_list!r}") from exc
    if not n_list:
        raise ConfigError("--n-list must name at least one cycle count")
    sys_t = random_zeno_system(
        args.dim, cfg.seed, tau=args.sys_t_total / max(n_list),
        tau_m=args.sys_tau_m, n_cycles=max(n_list),
    )
    report = verify_system(sys_t)
    conv = zeno_convergence(sys_t, args.sys_t_total, n_list)
    rows = [TheoremRow(n=n, zeno_error=err) for n, err in conv.entries]
    write_csv(rows, args.out)
    print(f"system: dim={args.dim} seed={cfg.seed} tau_m={args.sys_tau_m:g} t={args.sys_t_total:g}")
    print(f"factorization max elementwise error: {report.max_elementwise_error:.3e}")
    print(f"lambda-factor vs geometric sum:      {report.lambda_check_error:.3e}")
    if conv.critical_detected:
        print("warning: tau_m resonant for at least one level pair; convergence claim void")
    for n, err in conv.entries:
        print(f"  N={n:6d}  zeno_error={err:.6e}")
    print(f"wrote {len(rows)} rows to {args.out}")
    return 0


def _cmd_compare(args, cfg: RunConfig) -> int:
    params = cfg.cavity_params()
    sched = PulseSchedule(cfg.tau_s, cfg.tau_m_s, cfg.n_cycles)
    icfg = IntegratorConfig(steps_per_pulse=cfg.steps_per_pulse)
    rows = oracle_compare(params, sched, icfg, dim=args.dim)
    write_csv(rows, args.out)
    worst = max(row.abs_err for row in rows)
    print(f"wrote {len(rows)} rows to {args.out}; max |analytic - numeric| = {worst:.3e}")
    return 0


def _cmd_info(args, cfg: RunConfig) -> int:
    params = cfg.cavity_params()
    sched = PulseSchedule(cfg.tau_s, cfg.tau_m_s, cfg.n_cycles)
    alpha = displacement_alpha(params, cfg.tau_s)
    print(f"xi_m = chi * tau_m            = {params.chi * cfg.tau_m_s:.6e} rad")
    for k in (1, 2, 3):
        print(f"critical tau_m (k={k})          = {critical_tau_m(params, k):.6e} s")
    print(f"|alpha(tau)|^2                = {abs(alpha) ** 2:.6e}")
    bound = photon_bound(params, sched)
    bound_text = "unbounded (resonant tau_m)" if math.isinf(bound) else f"{bound:.6e}"
    print(f"photon-number bound           = {bound_text}")
    print(f"n(N={cfg.n_cycles})                    = {mean_photon_zeno(params, sched):.6e}")
    return 0


_COMMANDS = {
    "fig2": _cmd_fig2,
    "fig3": _cmd_fig3,
    "theorem": _cmd_theorem,
    "compare": _cmd_compare,
    "info": _cmd_info,
}


def dispatch(command: str, args, cfg: RunConfig) -> int:
    return _COMMANDS[command](args, cfg)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _config_from_args(args)
        return dispatch(args.command, args, cfg)
    except (ConfigError, ParameterError) as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 1
    except (AccuracyError, TruncationError) as exc:
        print(f"numerical accuracy error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    raise SystemExit(main())
