"""Figure-data tables and the computations behind each CLI subcommand.

Every table is deterministic for fixed inputs: fixed grids, serial evaluation,
and a meta block that carries only the inputs (plus their hash), never a clock.
"""

from __future__ import annotations

import hashlib
import io
import json
import math
from dataclasses import dataclass, field

import numpy as np

from dipolewave.bloch import AtomParams, DriveAmplitude
from dipolewave.errors import DomainError, UndefinedCorrelationError
from dipolewave.oracle import flux_exact, g2_exact
from dipolewave.overlap import dipole_overlap, max_overlap_longitudinal, max_overlap_transverse
from dipolewave.quadrature import DEFAULT_N_ALPHA, DEFAULT_N_BETA, default_grid
from dipolewave.spectra import dipole_spectrum, quabis_spectrum, sine_spectrum, truncated_dipole_spectrum
from dipolewave.stats import DetectionChannel, weak_drive_g2

TOOL = "dipolewave"
TOOL_VERSION = "0.1.0"

FIG1_PHASES = tuple(range(1, 8))
FIG2_A_VALUES = (2.0, 1.0, 0.0)


@dataclass
class FigureTable:
    columns: list[str]
    rows: list[list] = field(default_factory=list)
    meta: dict = field(default_factory=dict)

    def add_row(self, row) -> None:
        if len(row) != len(self.columns):
            raise ValueError(f"row has {len(row)} cells, table has {len(self.columns)} columns")
        self.rows.append(list(row))

    def column(self, name: str) -> list:
        i = self.columns.index(name)
        return [r[i] for r in self.rows]

    def to_csv(self) -> str:
        buf = io.StringIO()
        for key in sorted(self.meta):
            buf.write(f"# {key}: {json.dumps(self.meta[key], sort_keys=True)}\n")
        buf.write(",".join(self.columns) + "\n")
        for row in self.rows:
            buf.write(",".join(_fmt(c) for c in row) + "\n")
        return buf.getvalue()

    def to_json(self) -> str:
        rows = [[_json_cell(c) for c in r] for r in self.rows]
        return json.dumps({"meta": self.meta, "columns": self.columns, "rows": rows}, sort_keys=True, indent=1) + "\n"

    def render(self, fmt: str = "csv") -> str:
        if fmt == "csv":
            return self.to_csv()
        if fmt == "json":
            return self.to_json()
        raise DomainError(f"unknown output format {fmt!r}")


def _fmt(cell) -> str:
    if isinstance(cell, str):
        return cell
    if isinstance(cell, (bool, np.bool_)):
        return str(bool(cell)).lower()
    if isinstance(cell, (int, np.integer)):
        return str(int(cell))
    x = float(cell)
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return repr(x)


def _json_cell(cell):
    if isinstance(cell, str):
        return cell
    if isinstance(cell, (int, np.integer)) and not isinstance(cell, bool):
        return int(cell)
    x = float(cell)
    return x if math.isfinite(x) else _fmt(x)


def make_meta(command: str, inputs: dict, n_alpha: int | None = None, n_beta: int | None = None, **extra) -> dict:
    payload = json.dumps({"command": command, "inputs": inputs}, sort_keys=True, default=str)
    meta = {
        "tool": f"{TOOL} {TOOL_VERSION}",
        "command": command,
        "inputs": inputs,
        "input_hash": hashlib.sha256(payload.encode()).hexdigest()[:16],
    }
    if n_alpha is not None:
        meta["grid"] = {"n_alpha": n_alpha, "n_beta": n_beta}
    meta.update(extra)
    return meta


# -- overlaps ---------------------------------------------------------------

def _parse_target(target, family: str, pol: str):
    if target in (None, "auto"):
        if family == "sine" or (family == "truncated-dipole" and pol == "transverse"):
            return "x"
        return 0
    if isinstance(target, str) and target.lstrip("+-").isdigit():
        return int(target)
    return target


def cmd_overlap(family: str = "quabis", a: float = 0.0, theta: float = np.pi / 2, target="auto",
                pol: str = "longitudinal", M: int = 0, n_alpha: int = DEFAULT_N_ALPHA,
                n_beta: int = DEFAULT_N_BETA) -> FigureTable:
    """Single-row overlap table.  ``M`` selects the spectrum for ``family='dipole'``; ``target`` the dipole wave."""
    if family == "dipole":
        theta = np.pi
    grid = default_grid(float(theta), n_alpha, n_beta)
    if family == "quabis":
        spec = quabis_spectrum(a, theta, grid)
    elif family == "sine":
        spec = sine_spectrum(theta, grid)
    elif family == "truncated-dipole":
        spec = truncated_dipole_spectrum(pol, theta, grid)
    elif family == "dipole":
        spec = dipole_spectrum(int(M))
    else:
        raise DomainError(f"unknown family {family!r} (quabis, sine, truncated-dipole, dipole)")
    tgt = _parse_target(target if family != "dipole" or target != "auto" else M, family, pol)
    res = dipole_overlap(spec, tgt, grid)
    table = FigureTable(["family", "a", "theta", "pol", "target", "overlap_re", "overlap_im", "p", "norm_const",
                         "n_alpha", "n_beta"])
    table.add_row([family, float(a) if family == "quabis" else math.nan, float(theta),
                   pol if family == "truncated-dipole" else "", str(tgt), res.overlap.real, res.overlap.imag,
                   res.content, spec.norm_const, n_alpha, n_beta])
    inputs = {"family": family, "a": a, "theta": float(theta), "target": str(tgt), "pol": pol, "M": M}
    table.meta = make_meta("overlap", inputs, n_alpha, n_beta)
    return table


def quabis_content(a: float, theta: float, n_alpha: int = DEFAULT_N_ALPHA, n_beta: int = DEFAULT_N_BETA) -> float:
    grid = default_grid(float(theta), n_alpha, n_beta)
    return dipole_overlap(quabis_spectrum(a, theta, grid), 0, grid).content


def sine_content(theta: float, n_alpha: int = DEFAULT_N_ALPHA, n_beta: int = DEFAULT_N_BETA) -> float:
    grid = default_grid(float(theta), n_alpha, n_beta)
    return dipole_overlap(sine_spectrum(theta, grid), "x", grid).content


def theta_axis(steps: int = 181) -> np.ndarray:
    return np.linspace(0.0, np.pi, steps)


def cmd_fig1(steps: int = 801, eta_max: float = 8.0) -> FigureTable:
    """Weak-drive g2(0) against |eta| for phases pi/(2n), n = 1..7."""
    table = FigureTable(["abs_eta"] + [f"g2_phase_n{n}" for n in FIG1_PHASES])
    for r in np.linspace(0.0, eta_max, steps):
        row = [float(r)]
        for n in FIG1_PHASES:
            row.append(weak_drive_g2(r * np.exp(1j * np.pi / (2 * n)), strict=False))
        table.add_row(row)
    table.meta = make_meta("fig1", {"steps": steps, "eta_max": eta_max},
                           model="weak resonant driving closed form", phases="pi/(2n), n=1..7")
    return table


def cmd_fig2(steps: int = 181, n_alpha: int = DEFAULT_N_ALPHA, n_beta: int = DEFAULT_N_BETA) -> FigureTable:
    """Dipole content of the longitudinal beams for a = 2, 1, 0 and the maximal content."""
    table = FigureTable(["theta", "p_a2", "p_a1", "p_a0", "p_max"])
    for th in theta_axis(steps):
        if th == 0.0:
            # empty cap: every content vanishes
            table.add_row([0.0, 0.0, 0.0, 0.0, 0.0])
            continue
        table.add_row([float(th)] + [quabis_content(a, th, n_alpha, n_beta) for a in FIG2_A_VALUES]
                      + [max_overlap_longitudinal(th)])
    table.meta = make_meta("fig2", {"steps": steps}, n_alpha, n_beta,
                           theta_range="[0, pi]; the theta=0 row is the empty-cap limit")
    return table


def cmd_fig3(steps: int = 181, n_alpha: int = DEFAULT_N_ALPHA, n_beta: int = DEFAULT_N_BETA) -> FigureTable:
    """Maximal transverse and longitudinal contents and the Sine-wave content (theta <= pi/2 only)."""
    table = FigureTable(["theta", "p_trans_max", "p_long_max", "p_sine"])
    for th in theta_axis(steps):
        if th == 0.0:
            p_sine = 0.0
        elif th <= np.pi / 2 + 1e-15:
            p_sine = sine_content(min(th, np.pi / 2), n_alpha, n_beta)
        else:
            p_sine = math.nan
        table.add_row([float(th), max_overlap_transverse(th), max_overlap_longitudinal(th), p_sine])
    table.meta = make_meta("fig3", {"steps": steps}, n_alpha, n_beta,
                           sine_validity="theta <= pi/2; nan beyond")
    return table


# -- photon statistics ------------------------------------------------------

STATS_MODES = ("closed", "oracle", "both")


def _stats_values(eta: complex, s: float, delta: float, taus, mode: str) -> dict:
    if mode not in STATS_MODES:
        raise DomainError(f"mode must be one of {STATS_MODES}")
    if not (np.isfinite(s) and s >= 0):
        raise DomainError(f"saturation must be >= 0, got {s!r}")
    out = {}
    if mode in ("closed", "both"):
        out["F_over_F0_closed"] = abs(eta - 2.0) ** 2
        out["g2_0_closed"] = weak_drive_g2(eta, strict=False)
    if mode in ("oracle", "both"):
        channel = DetectionChannel()
        params = AtomParams.from_delta(delta)
        drive = DriveAmplitude.from_saturation(s, params.gamma)
        F0 = abs(channel.d_factor * drive.beta) ** 2
        out["F_over_F0_oracle"] = flux_exact(channel, eta, drive, params) / F0 if F0 > 0 else "undefined"
        try:
            g2 = g2_exact(channel, eta, drive, params, np.array([0.0, *taus]))
            out["g2_0_oracle"] = float(g2[0])
            tau_vals = [float(x) for x in g2[1:]]
        except UndefinedCorrelationError:
            out["g2_0_oracle"] = "undefined"
            tau_vals = ["undefined"] * len(taus)
    else:
        tau_vals = [math.nan] * len(taus)
    for t, v in zip(taus, tau_vals):
        out[f"g2_tau_{t:g}"] = v
    if mode == "both":
        out["rel_dev_F"] = _rel_dev(out["F_over_F0_oracle"], out["F_over_F0_closed"])
        out["rel_dev_g2"] = _rel_dev(out["g2_0_oracle"], out["g2_0_closed"])
    return out


def _rel_dev(exact, closed):
    if isinstance(exact, str) or not math.isfinite(closed):
        return math.nan
    return abs(exact - closed) / max(closed, 1.0)


def cmd_stats(eta_re: float = 1.0, eta_im: float = 0.0, s: float = 1e-4, delta: float = 0.0,
              taus=(), mode: str = "both") -> FigureTable:
    """Flux ratio F/F0 and g2 at one parameter point (units Gamma = 1, D = 1, beta real)."""
    taus = [float(t) for t in taus]
    if any(t < 0 or not math.isfinite(t) for t in taus):
        raise DomainError("delays must be finite and >= 0")
    vals = _stats_values(complex(eta_re, eta_im), s, delta, taus, mode)
    table = FigureTable(["eta_re", "eta_im", "s", "delta"] + list(vals))
    table.add_row([float(eta_re), float(eta_im), float(s), float(delta)] + list(vals.values()))
    inputs = {"eta_re": eta_re, "eta_im": eta_im, "s": s, "delta": delta, "taus": taus, "mode": mode}
    table.meta = make_meta("stats", inputs, units="Gamma=1, D=1, beta=sqrt(s/8)",
                           closed_form="weak resonant driving")
    return table


# -- generic sweeps ---------------------------------------------------------

SWEEP_VARIABLES = ("theta", "abs_eta", "a", "s", "delta")


@dataclass
class SweepSpec:
    """One-parameter sweep; ``lo``/``hi`` for ``theta`` are radians here (the CLI takes degrees)."""

    variable: str
    lo: float
    hi: float
    steps: int
    fixed: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.variable not in SWEEP_VARIABLES:
            raise DomainError(f"sweep variable must be one of {SWEEP_VARIABLES}")
        if not (self.lo < self.hi):
            raise DomainError("sweep range needs lo < hi")
        if self.steps < 2:
            raise DomainError("sweep needs at least 2 steps")

    def values(self) -> np.ndarray:
        return np.linspace(self.lo, self.hi, self.steps)


def cmd_sweep(spec: SweepSpec, n_alpha: int = DEFAULT_N_ALPHA, n_beta: int = DEFAULT_N_BETA) -> FigureTable:
    f = dict(spec.fixed)
    v = spec.variable
    if v in ("theta", "a"):
        a0 = float(f.get("a", 0.0))
        th0 = float(f.get("theta", np.pi / 2))
        table = FigureTable([v, "p_quabis", "p_long_max", "p_trans_max"])
        for x in spec.values():
            a, th = (a0, x) if v == "theta" else (x, th0)
            table.add_row([float(x), quabis_content(a, th, n_alpha, n_beta),
                           max_overlap_longitudinal(th), max_overlap_transverse(th)])
        fixed = {"a": a0} if v == "theta" else {"theta": th0}
    else:
        eta_abs = float(f.get("abs_eta", 1.0))
        phase = float(f.get("eta_phase", 0.0))
        s = float(f.get("s", 1e-4))
        delta = float(f.get("delta", 0.0))
        mode = f.get("mode", "both")
        taus = [float(t) for t in f.get("taus", [])]
        table = None
        for x in spec.values():
            if v == "abs_eta":
                eta_abs = x
            elif v == "s":
                s = x
            else:
                delta = x
            vals = _stats_values(eta_abs * np.exp(1j * phase), s, delta, taus, mode)
            if table is None:
                table = FigureTable([v] + list(vals))
            table.add_row([float(x)] + list(vals.values()))
        fixed = {"abs_eta": eta_abs, "eta_phase": phase, "s": s, "delta": delta, "mode": mode, "taus": taus}
        fixed.pop(v)
    inputs = {"variable": v, "lo": spec.lo, "hi": spec.hi, "steps": spec.steps, "fixed": fixed}
    table.meta = make_meta("sweep", inputs, n_alpha if v in ("theta", "a") else None, n_beta)
    return table
