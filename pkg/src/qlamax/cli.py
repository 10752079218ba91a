"""Command-line driver: ``qlamax <command> [--flag=value ...]``.

Commands: simulate, converge, checks, gates, permittivity, scales,
covariant-check. Exit status 0 means success / all checks passed.
"""

from __future__ import annotations

import argparse
import logging
import math
import sys
from dataclasses import asdict, dataclass
from pathlib import Path

import numpy as np

from qlamax import checks, gates, plasma
from qlamax.constants import AMU, C
from qlamax.fields import FieldGrid, energy_and_norm, gauss_residual
from qlamax.gamma import PlaneWaveSpec, gaussian_pulse_state, plane_wave_state, reference_evolve
from qlamax.lattice import StepParams, evolve, measure_convergence, reference_dt
from qlamax.snapshot import write_snapshot

log = logging.getLogger("qlamax")

DIAG_COLUMNS = ("step", "time", "norm_sq", "energy", "gauss_algebraic", "gauss_differential", "oracle_error")
ORDER_BAND = (1.8, 2.2)


@dataclass
class RunConfig:
    nx: int = 64
    ny: int = 64
    theta: float = 0.05
    dx: float = 0.2
    steps: int = 100
    snap_every: int = 0
    init: str = "planewave"
    kx: int = 1
    ky: int = 1
    pol: str = "Ez"
    center_x: float | None = None
    center_y: float | None = None
    width: float = 1.0
    eps_rel: float = 1.0
    length_unit: float = 1.0
    out: str = "qla_out"
    oracle: bool = False
    threads: int = 1

    def validate(self) -> None:
        problems = []
        if self.nx < 4 or self.ny < 4:
            problems.append("nx and ny must be >= 4")
        if self.oracle and (self.nx < 8 or self.ny < 8):
            problems.append("--oracle needs nx, ny >= 8")
        if not (self.theta > 0 and self.dx > 0):
            problems.append("theta and dx must be positive")
        if self.steps < 0:
            problems.append("steps must be >= 0")
        if self.snap_every < 0 or self.snap_every > max(self.steps, 0):
            problems.append("snap-every must be between 0 and steps")
        if self.init not in ("planewave", "gaussian"):
            problems.append("init must be planewave or gaussian")
        if self.pol not in ("Ez", "Bz"):
            problems.append("pol must be Ez or Bz")
        if not (self.eps_rel > 0 and self.width > 0 and self.length_unit > 0):
            problems.append("eps-rel, width and length-unit must be positive")
        if self.threads < 1:
            problems.append("threads must be >= 1")
        if problems:
            raise ValueError("; ".join(problems))

    @property
    def params(self) -> StepParams:
        return StepParams(self.theta, self.dx)

    def seconds_per_step(self) -> float:
        # lattice evolution is medium independent; the dielectric slows light by sqrt(eps_rel)
        return self.params.dt_eff * self.length_unit * math.sqrt(self.eps_rel) / C

    def command_line(self) -> str:
        flags = []
        for k, v in asdict(self).items():
            if v is None or k == "threads":
                continue
            name = k.replace("_", "-")
            if isinstance(v, bool):
                if v:
                    flags.append(f"--{name}")
            else:
                flags.append(f"--{name}={v}")
        return "qlamax simulate " + " ".join(flags)


def initial_state(cfg: RunConfig) -> FieldGrid:
    lx, ly = cfg.nx * cfg.dx, cfg.ny * cfg.dx
    k = (2 * math.pi * cfg.kx / lx, 2 * math.pi * cfg.ky / ly)
    if cfg.init == "planewave":
        return plane_wave_state(PlaneWaveSpec(k, 1.0, cfg.pol), 0.0, cfg.nx, cfg.ny, cfg.dx)
    center = (lx / 2 if cfg.center_x is None else cfg.center_x, ly / 2 if cfg.center_y is None else cfg.center_y)
    return gaussian_pulse_state(cfg.nx, cfg.ny, cfg.dx, center, cfg.width, k)


def _fmt(v) -> str:
    if isinstance(v, int):
        return str(v)
    if v is None:
        return ""
    return repr(float(v))


def run_simulate(cfg: RunConfig) -> int:
    cfg.validate()
    out = Path(cfg.out)
    out.mkdir(parents=True, exist_ok=True)
    g0 = initial_state(cfg)
    p = cfg.params
    sec = cfg.seconds_per_step()
    ref_dt = reference_dt(p)
    state = {"ref": g0}

    def row(n: int, g: FieldGrid) -> str:
        norm_sq, energy = energy_and_norm(g)
        alg, diff = gauss_residual(g)
        err = None
        if cfg.oracle:
            if n > 0:
                state["ref"] = reference_evolve(state["ref"], p.dt_eff, ref_dt)
            err = float(np.max(np.abs(g.psi - state["ref"].psi)))
        return ",".join(_fmt(v) for v in (n, n * sec, norm_sq, energy, alg, diff, err))

    def snap(n: int, g: FieldGrid) -> None:
        write_snapshot(out / f"snap_{n:06d}.qla", g)

    with open(out / "diagnostics.csv", "w", newline="\n") as fh:
        fh.write(",".join(DIAG_COLUMNS) + "\n")
        fh.write(row(0, g0) + "\n")
        snap(0, g0)

        def on_step(n: int, g: FieldGrid) -> None:
            fh.write(row(n, g) + "\n")
            if (cfg.snap_every and n % cfg.snap_every == 0) or n == cfg.steps:
                snap(n, g)

        evolve(g0, p, cfg.steps, workers=cfg.threads, callback=on_step)
    (out / "command.txt").write_text(cfg.command_line() + "\n")
    log.info("wrote %d diagnostics rows to %s", cfg.steps + 1, out)
    return 0


def run_convergence(eps: list[float], kx: int = 1, ky: int = 1, t_final: float = 1.0, length: float = 6.4,
                    ablate: bool = False, pol: str = "Ez", threads: int = 1, stream=None) -> int:
    stream = stream or sys.stdout
    if len(eps) < 3:
        raise ValueError("converge needs at least three --eps values")
    spec = PlaneWaveSpec.from_modes(kx, ky, length, polarization=pol)
    report = measure_convergence(spec, eps, t_final=t_final, length=length, symmetrized=not ablate, workers=threads)
    label = "unsymmetrized (U sweeps only)" if ablate else "symmetrized"
    print(f"convergence study, {label}, modes=({kx},{ky}), L={length}, t={t_final}", file=stream)
    for line in report.lines():
        print(line, file=stream)
    ok = report.order is not None and ORDER_BAND[0] <= report.order <= ORDER_BAND[1]
    print(f"order in [{ORDER_BAND[0]}, {ORDER_BAND[1]}]: {'PASS' if ok else 'FAIL'}", file=stream)
    return 0 if ok else 1


def _print_suites(suites: dict, stream) -> int:
    failed = 0
    for name, rows in suites.items():
        print(f"[{name}]", file=stream)
        for label, passed, detail in rows:
            failed += not passed
            extra = f"  ({detail})" if detail else ""
            print(f"  {label} : {'PASS' if passed else 'FAIL'}{extra}", file=stream)
    print(f"{'all PASS' if failed == 0 else f'{failed} FAILED'}", file=stream)
    return 0 if failed == 0 else 1


def run_checks(stream=None) -> int:
    return _print_suites(checks.all_suites(), stream or sys.stdout)


def run_covariant_check(stream=None) -> int:
    return _print_suites({"covariant": checks.covariant_suite()}, stream or sys.stdout)


def parse_ion(text: str) -> plasma.PlasmaSpecies:
    try:
        z, mass_amu, density = (float(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"--ion expects Z,mass_amu,density, got {text!r}") from None
    return plasma.PlasmaSpecies(z, mass_amu * AMU, density)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="qlamax", description=__doc__.splitlines()[0])
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    d = RunConfig()
    sim = sub.add_parser("simulate", help="run the QLA and write diagnostics and snapshots")
    sim.add_argument("--nx", type=int, default=d.nx)
    sim.add_argument("--ny", type=int, default=d.ny)
    sim.add_argument("--theta", type=float, default=d.theta)
    sim.add_argument("--dx", type=float, default=d.dx)
    sim.add_argument("--steps", type=int, default=d.steps)
    sim.add_argument("--snap-every", type=int, default=d.snap_every,
                     help="snapshot interval in steps; 0 writes only the first and last")
    sim.add_argument("--init", choices=("planewave", "gaussian"), default=d.init)
    sim.add_argument("--kx", type=int, default=d.kx, help="x wavenumber as an integer mode of the box")
    sim.add_argument("--ky", type=int, default=d.ky, help="y wavenumber as an integer mode of the box")
    sim.add_argument("--pol", choices=("Ez", "Bz"), default=d.pol)
    sim.add_argument("--center-x", type=float, default=None, help="gaussian center (lattice length units)")
    sim.add_argument("--center-y", type=float, default=None)
    sim.add_argument("--width", type=float, default=d.width, help="gaussian width (lattice length units)")
    sim.add_argument("--eps-rel", type=float, default=d.eps_rel, help="relative permittivity of a uniform dielectric")
    sim.add_argument("--length-unit", type=float, default=d.length_unit, help="meters per lattice length unit")
    sim.add_argument("--out", default=d.out)
    sim.add_argument("--oracle", action="store_true", help="compare against the reference solver every step")
    sim.add_argument("--threads", type=int, default=d.threads)

    conv = sub.add_parser("converge", help="convergence study against the reference solver")
    conv.add_argument("--eps", default="0.2,0.1,0.05", help="comma-separated eps values (theta=eps/4, dx=eps)")
    conv.add_argument("--kx", type=int, default=1)
    conv.add_argument("--ky", type=int, default=1)
    conv.add_argument("--pol", choices=("Ez", "Bz"), default="Ez")
    conv.add_argument("--t-final", type=float, default=1.0)
    conv.add_argument("--length", type=float, default=6.4)
    conv.add_argument("--ablate", action="store_true", help="drop the tilde sweeps")
    conv.add_argument("--threads", type=int, default=1)

    sub.add_parser("checks", help="gamma, Lorentz, permittivity and gate identity suites")
    sub.add_parser("gates", help="print CNOT, Hadamard and Bell-decode truth tables")
    sub.add_parser("covariant-check", help="boost, interval and covariant Maxwell residual checks")

    perm = sub.add_parser("permittivity", help="cold-plasma susceptibilities and permittivity tensor")
    perm.add_argument("--omega", type=float, required=True, help="angular frequency, rad/s")
    perm.add_argument("--b0", type=float, default=0.0, help="ambient field along z, tesla")
    perm.add_argument("--ne", type=float, default=0.0, help="electron density, m^-3")
    perm.add_argument("--ion", type=parse_ion, action="append", default=[], help="Z,mass_amu,density (repeatable)")
    perm.add_argument("--relative", action="store_true", help="print eps/eps0 instead of F/m")

    sc = sub.add_parser("scales", help="interparticle distance, de Broglie wavelength, Debye length")
    sc.add_argument("--n", type=float, required=True, help="density, m^-3")
    sc.add_argument("--T", type=float, required=True, help="temperature, K")
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        if args.command == "simulate":
            fields = {k: v for k, v in vars(args).items() if k in RunConfig.__dataclass_fields__}
            return run_simulate(RunConfig(**fields))
        if args.command == "converge":
            eps = [float(v) for v in args.eps.split(",") if v.strip()]
            return run_convergence(eps, args.kx, args.ky, args.t_final, args.length, args.ablate, args.pol, args.threads)
        if args.command == "checks":
            return run_checks()
        if args.command == "covariant-check":
            return run_covariant_check()
        if args.command == "gates":
            print("\n".join(gates.truth_tables()))
            return 0
        if args.command == "permittivity":
            st = plasma.PlasmaState(args.b0, args.ne, tuple(args.ion))
            chi11, chi12, chi33 = plasma.susceptibilities(args.omega, st)
            eps = plasma.permittivity_tensor(args.omega, st, relative=args.relative)
            print(f"omega_pe={st.omega_pe:.6e} omega_ce={st.omega_ce:.6e} rad/s")
            print(f"chi11={chi11:.10g} chi12={chi12:.10g} chi33={chi33:.10g}")
            print(f"permittivity ({'relative' if args.relative else 'F/m'}):")
            for r in eps.matrix:
                print("  " + "  ".join(f"{z.real:+.6e}{z.imag:+.6e}j" for z in r))
            return 0
        if args.command == "scales":
            ip, db, dl = plasma.plasma_scales(args.n, args.T)
            print(f"interparticle distance = {ip:.4e} m")
            print(f"de Broglie wavelength  = {db:.4e} m")
            print(f"Debye length           = {dl:.4e} m")
            return 0
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 2


if __name__ == "__main__":
    sys.exit(main())
