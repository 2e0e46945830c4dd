"""Batch front-end: JSON configuration in, CSV out.

Subcommands (presets encode the reference experiment settings):

* ``fidelity-sweep``  Trotter-convergence table over (T, L); preset
  ``fig-fidelity``: N=6 PBC half filling, v=0.5, w=1.5,
  T in {1, 5, 15, 80}, L in {1, 10, 20, 30, 40, 50, 60, 80, 100, 120, 150}.
* ``berry-sweep``     Berry phase vs intercell hopping and interaction
  imbalance; preset ``fig-berry``: v=1, U_A=0.01, w from 0 to 2 in steps of
  0.25 with the critical point replaced by 0.99 and 1.01, dU logarithmic
  from 3e-4 to 3e-1, T=1, L=40, PBC half filling.
* ``polarization``    Sublattice-polarization profiles under OBC at
  n = 2N + 2; preset ``fig-polarization``: v=0.1, w=1.0, U_A=0.01,
  same dU list.
* ``sample``          Raw (bitstring, count) CSV from the prepared and
  evolved state.
* ``oracle-check``    Exact-diagonalization contract checks at small N.

Configuration: ``--config file.json`` with keys merged over the preset;
unknown keys are rejected.  ``--seed``, ``--shots``, ``--threads``,
``--out`` override file values.  Exit codes: 0 success, 2 usage error,
3 numeric/contract failure, 4 resource cap.

CSV format: comma separated, header row, UTF-8, LF endings, floats with 17
significant digits; unavailable quantities are empty fields.  Exact-mode
output is bit-identical across runs at a fixed thread count.  When
shots > 0 each sweep point emits two rows: the exact readout (shots column
0) followed by the sampled estimators (shots column M).
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from dataclasses import dataclass, field, replace

from .adiabatic import Schedule, run_adiabatic
from .errors import NumericError, ResourceError, UsageError
from .model import OBC, PBC, SSHHParams, SpinFilling
from .observables import EstimateReport, exact_report, sampled_report
from .oracle import adiabatic_benchmark, crosscheck_pauli_vs_fermionic
from .simulator import sample
from .singleparticle import check_weak_interaction
from .stateprep import prepare_ground_state

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_NUMERIC = 3
EXIT_RESOURCE = 4

PAPER_L_LIST = [1, 10, 20, 30, 40, 50, 60, 80, 100, 120, 150]
PAPER_T_LIST = [1.0, 5.0, 15.0, 80.0]
PAPER_W_LIST = [0.0, 0.25, 0.5, 0.75, 0.99, 1.01, 1.25, 1.5, 1.75, 2.0]
PAPER_DU_LIST = [3e-4, 1e-3, 3e-3, 1e-2, 3e-2, 1e-1, 3e-1]


@dataclass(frozen=True)
class ExperimentConfig:
    N: int = 6
    v: complex = 1.0
    w: complex = 1.5
    U_A: float = 0.0
    U_B: float = 0.0
    boundary: str = PBC
    filling: str | tuple[int, int] = "half"
    T: float = 1.0
    L: int = 40
    shots: int = 0
    seed: int = 1
    out: str = "-"
    T_list: list = field(default_factory=lambda: list(PAPER_T_LIST))
    L_list: list = field(default_factory=lambda: list(PAPER_L_LIST))
    w_list: list = field(default_factory=lambda: list(PAPER_W_LIST))
    delta_U_list: list = field(default_factory=lambda: list(PAPER_DU_LIST))
    flip_boundary_sign: bool = False  # oracle-check mutation hook

    def resolve_filling(self) -> SpinFilling:
        if self.filling == "half":
            return SpinFilling.half(self.N)
        if self.filling == "half_plus_two":
            return SpinFilling.half_plus_two(self.N)
        if (isinstance(self.filling, (tuple, list)) and len(self.filling) == 2
                and all(isinstance(x, int) for x in self.filling)):
            return SpinFilling(self.filling[0], self.filling[1])
        raise UsageError(f"filling: expected 'half', 'half_plus_two' or [n_up, n_down], "
                         f"got {self.filling!r}")

    def params(self, **overrides) -> SSHHParams:
        base = dict(N=self.N, v=self.v, w=self.w, U_A=self.U_A, U_B=self.U_B,
                    boundary=self.boundary)
        base.update(overrides)
        try:
            return SSHHParams(**base)
        except ValueError as exc:
            raise UsageError(f"model: {exc}") from exc


_COMPLEX_KEYS = {"v", "w"}
_INT_KEYS = {"N", "L", "shots", "seed"}
_FLOAT_KEYS = {"U_A", "U_B", "T"}
_LIST_KEYS = {"T_list", "L_list", "w_list", "delta_U_list"}


def _parse_number(value, key: str):
    if key in _COMPLEX_KEYS:
        if isinstance(value, (int, float)):
            return complex(value)
        if (isinstance(value, list) and len(value) == 2
                and all(isinstance(x, (int, float)) for x in value)):
            return complex(value[0], value[1])
        raise UsageError(f"{key}: expected a number or [re, im], got {value!r}")
    if key in _INT_KEYS:
        if not isinstance(value, int) or isinstance(value, bool):
            raise UsageError(f"{key}: expected an integer, got {value!r}")
        return value
    if key in _FLOAT_KEYS:
        if not isinstance(value, (int, float)) or isinstance(value, bool):
            raise UsageError(f"{key}: expected a number, got {value!r}")
        return float(value)
    return value


def load_config(path: str | None, args: argparse.Namespace,
                preset: ExperimentConfig) -> ExperimentConfig:
    """Preset <- JSON file <- command-line flags, unknown keys rejected."""
    config = preset
    if path is not None:
        try:
            with open(path, encoding="utf-8") as fh:
                raw = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"--config {path}: {exc}") from exc
        if not isinstance(raw, dict):
            raise UsageError("--config: top-level JSON must be an object")
        known = set(ExperimentConfig.__dataclass_fields__)
        for key, value in raw.items():
            if key not in known:
                raise UsageError(f"--config: unknown key {key!r}")
            if key in _LIST_KEYS and not isinstance(value, list):
                raise UsageError(f"{key}: expected a list")
            if key == "filling" and isinstance(value, list):
                value = tuple(value)
            config = replace(config, **{key: _parse_number(value, key)})
    for flag in ("shots", "seed", "out"):
        value = getattr(args, flag, None)
        if value is not None:
            config = replace(config, **{flag: value})
    if getattr(args, "threads", None) is not None:
        if args.threads < 1:
            raise UsageError("--threads must be >= 1")
        os.environ["SSHH_THREADS"] = str(args.threads)
    if config.shots < 0:
        raise UsageError("shots must be >= 0")
    return config


# CSV plumbing ---------------------------------------------------------------

def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return f"{value:.17g}"
    return str(value)


def observable_columns(n_cells: int) -> list[str]:
    return (["z_re", "z_im", "z_mag", "gamma_rad", "gamma_over_pi", "charge_center"]
            + [f"p_{j}" for j in range(n_cells)]
            + ["edge_occ", "fidelity", "shots", "seed",
               "z_spin_re", "z_spin_im", "gamma_spin_rad", "gamma_spin_over_pi"])


def report_fields(report: EstimateReport, seed) -> list:
    row = [report.z_bar.real, report.z_bar.imag, report.z_magnitude,
           report.gamma_bar,
           report.gamma_bar / math.pi if report.gamma_bar is not None else None,
           report.charge_center]
    row += list(report.polarization)
    row += [report.edge_occupation, None, report.shots, seed]
    z_s = report.z_spin_bar
    row += [z_s.real if z_s is not None else None,
            z_s.imag if z_s is not None else None,
            report.gamma_spin,
            report.gamma_spin / math.pi if report.gamma_spin is not None else None]
    return row


def write_csv(out: str, header: list[str], rows: list[list]) -> None:
    text = ",".join(header) + "\n"
    for row in rows:
        text += ",".join(_fmt(x) for x in row) + "\n"
    if out == "-":
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


# Experiments ----------------------------------------------------------------

def _evolved_state(params: SSHHParams, filling: SpinFilling, schedule: Schedule):
    initial, energy = prepare_ground_state(params, filling)
    final = run_adiabatic(params, filling, schedule, initial)
    return final, energy


def cmd_fidelity_sweep(config: ExperimentConfig) -> int:
    from .adiabatic import fidelity_sweep

    params = config.params()
    filling = config.resolve_filling()
    rows_in = fidelity_sweep(params, config.T_list, config.L_list, filling)
    columns = observable_columns(config.N)
    header = ["T", "L"] + columns
    rows = []
    for T, L, fid in rows_in:
        obs = [None] * len(columns)
        obs[columns.index("fidelity")] = fid
        obs[columns.index("shots")] = 0
        obs[columns.index("seed")] = config.seed
        rows.append([T, L] + obs)
    write_csv(config.out, header, rows)
    return EXIT_OK


def cmd_berry_sweep(config: ExperimentConfig) -> int:
    if config.boundary != PBC:
        raise UsageError("berry-sweep requires periodic boundaries")
    filling = config.resolve_filling()
    if filling.n_up != filling.n_down:
        raise UsageError("berry-sweep requires a spin-balanced filling")
    for w in config.w_list:
        if complex(w) == 1.0 + 0j and config.v == 1.0 + 0j:
            raise UsageError(
                "w = v closes the gap; the Berry phase is ill-defined there "
                "(the critical point is omitted by construction)")
    schedule = Schedule(config.T, config.L)
    header = ["w", "delta_U"] + observable_columns(config.N)
    rows = []
    n_electrons = filling.total
    for du in config.delta_U_list:
        for w in config.w_list:
            params = config.params(w=_parse_number(w, "w"),
                                   U_B=config.U_A + float(du))
            final, _ = _evolved_state(params, filling, schedule)
            exact = exact_report(final, config.N, n_electrons)
            rows.append([float(w), float(du)] + report_fields(exact, config.seed))
            if config.shots > 0:
                batch = sample(final, config.shots, config.seed)
                est = sampled_report(batch, config.N, n_electrons)
                rows.append([float(w), float(du)] + report_fields(est, config.seed))
    write_csv(config.out, header, rows)
    return EXIT_OK


def cmd_polarization(config: ExperimentConfig) -> int:
    if config.boundary != OBC:
        raise UsageError("the polarization profile experiment is OBC by construction")
    filling = config.resolve_filling()
    schedule = Schedule(config.T, config.L)
    header = ["delta_U"] + observable_columns(config.N)
    rows = []
    for du in config.delta_U_list:
        params = config.params(U_B=config.U_A + float(du))
        final, _ = _evolved_state(params, filling, schedule)
        exact = exact_report(final, config.N, filling.total)
        rows.append([float(du)] + report_fields(exact, config.seed))
        if config.shots > 0:
            batch = sample(final, config.shots, config.seed)
            est = sampled_report(batch, config.N, filling.total)
            rows.append([float(du)] + report_fields(est, config.seed))
    write_csv(config.out, header, rows)
    return EXIT_OK


def cmd_sample(config: ExperimentConfig) -> int:
    if config.shots < 1:
        raise UsageError("sample requires shots >= 1")
    filling = config.resolve_filling()
    params = config.params()
    if filling.total == 0:
        from .simulator import zero_state
        final = zero_state(4 * config.N)
    else:
        final, _ = _evolved_state(params, filling, Schedule(config.T, config.L))
    batch = sample(final, config.shots, config.seed)
    rows = sorted(batch.counts.items())
    write_csv(config.out, ["bitstring", "count"], [list(r) for r in rows])
    return EXIT_OK


def cmd_oracle_check(config: ExperimentConfig) -> int:
    if config.N > 4:
        raise ResourceError("oracle checks are limited to N <= 4")
    lines = []
    failed = False
    grid = [
        (0.5 + 0j, 1.5 + 0j, 0.0, 0.0),
        (1.0 + 0j, 0.5 + 0j, 0.3, 0.3),
        (0.5 + 0j, 1.5 + 0j, 0.2, 0.7),
        (1.0 + 0j, 1.0 + 0j, 0.5, 0.1),
        (0.5 + 0.2j, 1.5 - 0.3j, 0.1, 0.4),
    ]
    filling = config.resolve_filling()
    for boundary in (OBC, PBC):
        for v, w, ua, ub in grid:
            params = SSHHParams(N=config.N, v=v, w=w, U_A=ua, U_B=ub, boundary=boundary)
            dev = crosscheck_pauli_vs_fermionic(params, filling, 1.0)
            ok = dev < 1e-10
            failed |= not ok
            lines.append(f"crosscheck {boundary} v={v} w={w} U=({ua},{ub}): "
                         f"deviation {dev:.3e} {'PASS' if ok else 'FAIL'}")
    bench_params = SSHHParams(N=config.N, v=0.5, w=1.5, U_A=0.5, U_B=0.5,
                              boundary=config.boundary)
    if config.flip_boundary_sign:
        from .stateprep import prepare_ground_state as _prep
        from .oracle import ground_state_sector, sector_energy
        from .simulator import fidelity as _fid
        initial, _ = _prep(bench_params, filling)
        final = run_adiabatic(bench_params, filling, Schedule(10.0, 400),
                              initial, flip_boundary_sign=True)
        exact = ground_state_sector(bench_params, filling, 1.0)
        fid = _fid(final, exact.state)
        err = sector_energy(bench_params, filling, 1.0, final) - exact.energy
    else:
        fid, err = adiabatic_benchmark(bench_params, filling, Schedule(10.0, 400))
    ok = fid >= 0.99 and abs(err) <= 0.02
    failed |= not ok
    lines.append(f"adiabatic benchmark ({bench_params.boundary}): fidelity {fid:.6f} "
                 f"energy error {err:.3e} {'PASS' if ok else 'FAIL'}")
    text = "\n".join(lines) + "\n"
    if config.out == "-":
        sys.stdout.write(text)
    else:
        with open(config.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    if failed:
        raise NumericError("oracle contract violated; see report")
    return EXIT_OK


# Entry point ----------------------------------------------------------------

_PRESETS = {
    "fidelity-sweep": dict(v=0.5 + 0j, w=1.5 + 0j, U_A=0.0, U_B=0.0,
                           boundary=PBC, filling="half"),
    "berry-sweep": dict(v=1.0 + 0j, U_A=0.01, boundary=PBC, filling="half"),
    "polarization": dict(v=0.1 + 0j, w=1.0 + 0j, U_A=0.01, boundary=OBC,
                         filling="half_plus_two"),
    "sample": dict(v=1.0 + 0j, w=1.5 + 0j, U_A=0.01, U_B=0.01,
                   boundary=PBC, filling="half", shots=100_000),
    "oracle-check": dict(N=2, v=0.5 + 0j, w=1.5 + 0j, boundary=PBC, filling="half"),
}

_COMMANDS = {
    "fidelity-sweep": cmd_fidelity_sweep,
    "berry-sweep": cmd_berry_sweep,
    "polarization": cmd_polarization,
    "sample": cmd_sample,
    "oracle-check": cmd_oracle_check,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sshh",
        description="SSH-Hubbard adiabatic statevector experiments")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in _COMMANDS:
        cmd = sub.add_parser(name)
        cmd.add_argument("--config", help="JSON configuration file")
        cmd.add_argument("--out", help="output path ('-' for stdout)")
        cmd.add_argument("--seed", type=int, help="sampling seed")
        cmd.add_argument("--shots", type=int, help="shot count (0 = exact mode)")
        cmd.add_argument("--threads", type=int, help="worker cap (sets SSHH_THREADS)")
    return parser


def run(argv=None) -> int:
    args = build_parser().parse_args(argv)
    preset = ExperimentConfig(**_PRESETS[args.command])
    config = load_config(args.config, args, preset)
    return _COMMANDS[args.command](config)


def main(argv=None) -> int:
    try:
        code = run(argv)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NumericError as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except ResourceError as exc:
        print(f"resource cap: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    return code


if __name__ == "__main__":
    sys.exit(main())
