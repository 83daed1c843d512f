"""Config-driven sweeps, structural audits, and dataset emission.

``run_sweep`` measures Zeno-limit errors over a (gamma, t) grid for a
named model or a user-supplied generator pair, evaluates the requested
bounds at implementation-measured constants, emits a CSV with the frozen
column order

    gamma, t, error_plain, error_peripheral,
    bound_adiabatic, bound_cptp, bound_simplified

and a JSON summary carrying the fitted convergence slope (top half of the
gamma grid, with the full-grid fit alongside), the worst bound violation
(positive values mean a bound was beaten, which would falsify the
underlying estimates), and wall-clock time.  Grid points are evaluated
concurrently; aggregation is ordered by (gamma, t), so the output is
byte-identical regardless of scheduling.  The environment variable
ZENO_LIMITS_THREADS caps the worker count.

``spectral_property_check`` audits the structural facts that make a
compiled generator a valid strong generator: spectrum confined to the
closed left half-plane with 0 an eigenvalue, semisimple peripheral
eigenvalues, a CPTP peripheral projection commuting with the generator,
and CPTP peripheral maps e^{t L_phi} P_phi at positive and negative
times.
"""

from __future__ import annotations

import io
import math
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .errors import ValidationError
from .gkls import (GklsSystem, Superoperator, cptp_check,
                   dissipator_superoperator, hamiltonian_superoperator,
                   liouvillian)
from .jsonio import load_json, superoperator_from_json
from .linalg import spectral_norm
from .models import ThreeLevelParams, dephasing_qubit_example, three_level_generators
from .spectral import decompose, peripheral_projection
from .zeno import (
    BoundInputs,
    adiabatic_error,
    bound_adiabatic,
    bound_cptp,
    bound_simplified,
    zeno_split,
)

__all__ = [
    "SweepConfig",
    "SweepResult",
    "run_sweep",
    "SpectralPropertyReport",
    "spectral_property_check",
]

CSV_COLUMNS = ("gamma", "t", "error_plain", "error_peripheral",
               "bound_adiabatic", "bound_cptp", "bound_simplified")

#: errors below this are treated as exactly converged (C = 0 style configs)
DEGENERATE_ERROR = 1e-12


def _worker_count() -> int:
    env = os.environ.get("ZENO_LIMITS_THREADS", "")
    if env.strip():
        return max(1, int(env))
    return os.cpu_count() or 1


@dataclass(frozen=True)
class SweepConfig:
    """Declarative description of one gamma/t sweep."""

    model: str = "three-level"
    params: ThreeLevelParams | None = None
    strong_path: str | None = None
    weak_path: str | None = None
    gamma_grid: tuple[float, ...] = (10.0, 30.0, 100.0, 300.0, 1000.0)
    t_start: float = 0.25
    t_stop: float = 2.0
    t_count: int = 16
    t_spacing: str = "linear"
    variants: tuple[str, ...] = ("plain", "peripheral")
    bounds: tuple[str, ...] = ("adiabatic", "cptp", "simplified")
    output: str | None = None
    seed: int = 0

    def __post_init__(self):
        if list(self.gamma_grid) != sorted(set(self.gamma_grid)):
            raise ValidationError("gamma_grid must be strictly increasing")
        if any(g <= 0 for g in self.gamma_grid):
            raise ValidationError("gamma values must be positive")
        if self.t_spacing not in ("linear", "log"):
            raise ValidationError("t_spacing must be 'linear' or 'log'")
        bad = set(self.variants) - {"plain", "peripheral"}
        if bad:
            raise ValidationError(f"unknown variants {sorted(bad)}")
        bad = set(self.bounds) - {"adiabatic", "cptp", "simplified"}
        if bad:
            raise ValidationError(f"unknown bounds {sorted(bad)}")
        if "peripheral" in self.variants and self.t_start <= 0:
            raise ValidationError(
                "the peripheral variant needs t_start > 0 (the limit holds on compact subsets of (0, inf))")

    @classmethod
    def from_json(cls, obj) -> "SweepConfig":
        model = obj.get("model", "three-level")
        strong = weak = None
        if isinstance(model, dict):
            strong, weak = model.get("strong"), model.get("weak")
            model = "files"
        params = None
        if obj.get("params"):
            params = ThreeLevelParams(**obj["params"])
        tg = obj.get("t_grid", {})
        return cls(
            model=model,
            params=params,
            strong_path=strong,
            weak_path=weak,
            gamma_grid=tuple(float(g) for g in obj.get("gamma_grid", (10, 30, 100, 300, 1000))),
            t_start=float(tg.get("start", 0.25)),
            t_stop=float(tg.get("stop", 2.0)),
            t_count=int(tg.get("count", 16)),
            t_spacing=tg.get("spacing", "linear"),
            variants=tuple(obj.get("variants", ("plain", "peripheral"))),
            bounds=tuple(obj.get("bounds", ("adiabatic", "cptp", "simplified"))),
            output=obj.get("output"),
            seed=int(obj.get("seed", 0)),
        )

    def t_grid(self) -> np.ndarray:
        if self.t_spacing == "log":
            return np.geomspace(self.t_start, self.t_stop, self.t_count)
        return np.linspace(self.t_start, self.t_stop, self.t_count)


@dataclass(frozen=True)
class SweepResult:
    rows: list[dict]
    summary: dict
    csv_text: str


def _load_pair(cfg: SweepConfig) -> tuple[np.ndarray, np.ndarray]:
    if cfg.model == "three-level":
        weak, strong = three_level_generators(cfg.params or ThreeLevelParams())
        return strong.mat, weak.mat
    if cfg.model == "dephasing-qubit":
        ex = dephasing_qubit_example()
        # fast-oscillation pair: strong commutator of H, weak dephasing part
        strong = hamiltonian_superoperator(ex.hamiltonian)
        weak = dissipator_superoperator([ex.jump], 2)
        return strong, weak
    if cfg.model == "files":
        if not (cfg.strong_path and cfg.weak_path):
            raise ValidationError("file model needs strong and weak paths")
        b = superoperator_from_json(load_json(cfg.strong_path)).mat
        c = superoperator_from_json(load_json(cfg.weak_path)).mat
        return b, c
    raise ValidationError(f"unknown model {cfg.model!r}")


def _loglog_slope(points) -> float:
    gammas = np.log([g for g, _ in points])
    errs = np.log([e for _, e in points])
    return float(np.polyfit(gammas, errs, 1)[0])


def _format_row(row: dict) -> str:
    cells = []
    for col in CSV_COLUMNS:
        val = row.get(col)
        cells.append("" if val is None else repr(float(val)))
    return ",".join(cells)


def run_sweep(cfg: SweepConfig) -> SweepResult:
    """Execute one sweep; returns rows, summary, and the CSV text.

    Writes the CSV to ``cfg.output`` (and the summary next to it with a
    ``.summary.json`` suffix) when an output path is configured.
    """
    start = time.monotonic()
    b, c = _load_pair(cfg)
    split = zeno_split(b, c)
    inputs = BoundInputs.from_split(split, t_max=cfg.t_stop, gamma_max=max(cfg.gamma_grid))
    t_grid = cfg.t_grid()
    points = [(g, t) for g in cfg.gamma_grid for t in t_grid]

    def evaluate(point):
        g, t = point
        row = {"gamma": g, "t": t, "error_plain": None, "error_peripheral": None,
               "bound_adiabatic": None, "bound_cptp": None, "bound_simplified": None}
        if "plain" in cfg.variants:
            row["error_plain"] = adiabatic_error(split, g, t, "plain")
        if "peripheral" in cfg.variants:
            row["error_peripheral"] = adiabatic_error(split, g, t, "peripheral")
        if "adiabatic" in cfg.bounds:
            row["bound_adiabatic"] = bound_adiabatic(inputs, g, t)
        if "cptp" in cfg.bounds:
            row["bound_cptp"] = bound_cptp(inputs, g, t)
        if "simplified" in cfg.bounds:
            row["bound_simplified"] = bound_simplified(inputs, g, t)
        return row

    with ThreadPoolExecutor(max_workers=_worker_count()) as pool:
        rows = list(pool.map(evaluate, points))
    rows.sort(key=lambda r: (r["gamma"], r["t"]))

    # bound audit: positive slack means a bound was violated
    slack = -math.inf
    err_key = "error_peripheral" if "peripheral" in cfg.variants else "error_plain"
    for row in rows:
        err = row[err_key]
        if err is None:
            continue
        for bkey in ("bound_adiabatic", "bound_cptp", "bound_simplified"):
            if row[bkey] is not None:
                slack = max(slack, err - row[bkey])

    # convergence slope on sup-over-t errors; the headline fit uses the top
    # half of the gamma grid (the small-gamma points are pre-asymptotic),
    # the full-grid fit is reported alongside
    sup_errors = []
    for g in cfg.gamma_grid:
        errs = [row[err_key] for row in rows if row["gamma"] == g and row[err_key] is not None]
        if errs:
            sup_errors.append((g, max(errs)))
    slope = slope_full = None
    notice = None
    if sup_errors and all(e <= DEGENERATE_ERROR for _, e in sup_errors):
        notice = "degenerate-data: all errors at roundoff, slope fit refused"
    elif len(sup_errors) >= 4 and all(e > 0 for _, e in sup_errors):
        slope = _loglog_slope(sup_errors[len(sup_errors) // 2:])
        slope_full = _loglog_slope(sup_errors)
    elif sup_errors:
        notice = "degenerate-data: need >= 4 gamma points with positive errors"

    summary = {
        "model": cfg.model,
        "gamma_grid": list(cfg.gamma_grid),
        "slope": slope,
        "slope_full_grid": slope_full,
        "max_bound_violation": None if slack == -math.inf else slack,
        "sup_errors": [[g, e] for g, e in sup_errors],
        "notice": notice,
        "wall_clock_s": time.monotonic() - start,
    }

    buf = io.StringIO()
    buf.write(",".join(CSV_COLUMNS) + "\n")
    for row in rows:
        buf.write(_format_row(row) + "\n")
    csv_text = buf.getvalue()

    if cfg.output:
        from pathlib import Path
        out = Path(cfg.output)
        out.write_text(csv_text)
        import json
        Path(str(out) + ".summary.json").write_text(json.dumps(summary, indent=2) + "\n")
    return SweepResult(rows=rows, summary=summary, csv_text=csv_text)


# ---------------------------------------------------------------------------
# structural audit
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SpectralPropertyReport:
    left_half_plane: bool
    zero_is_eigenvalue: bool
    peripheral_semisimple: bool
    peripheral_projection_cptp: bool
    projection_commutes: bool
    peripheral_map_cptp: bool
    details: dict = field(default_factory=dict)

    @property
    def all_pass(self) -> bool:
        return (self.left_half_plane and self.zero_is_eigenvalue
                and self.peripheral_semisimple and self.peripheral_projection_cptp
                and self.projection_commutes and self.peripheral_map_cptp)

    def as_dict(self) -> dict:
        return {
            "left_half_plane": self.left_half_plane,
            "zero_is_eigenvalue": self.zero_is_eigenvalue,
            "peripheral_semisimple": self.peripheral_semisimple,
            "peripheral_projection_cptp": self.peripheral_projection_cptp,
            "projection_commutes": self.projection_commutes,
            "peripheral_map_cptp": self.peripheral_map_cptp,
            "all_pass": self.all_pass,
            "details": self.details,
        }


def spectral_property_check(sys_or_superop, times=(-1.0, 1.0)) -> SpectralPropertyReport:
    """Audit the spectral structure of a (compiled) GKLS generator."""
    if isinstance(sys_or_superop, GklsSystem):
        sop = liouvillian(sys_or_superop)
    elif isinstance(sys_or_superop, Superoperator):
        sop = sys_or_superop
    else:
        mat = np.asarray(sys_or_superop, dtype=complex)
        d = int(round(math.isqrt(mat.shape[0])))
        sop = Superoperator(d=d, mat=mat, provenance="full")
    mat = sop.mat
    norm = max(spectral_norm(mat), 1e-300)
    tol = 1e-7 * norm

    eigs = np.linalg.eigvals(mat)
    lhp = bool(np.all(eigs.real <= tol))
    zero_eig = bool(np.min(np.abs(eigs)) <= tol)

    details: dict = {"max_real_part": float(eigs.real.max())}
    try:
        dec = decompose(mat)
        peripheral_ok = all(c.semisimple for c in dec.peripheral_clusters)
    except Exception as exc:  # defective peripheral cluster or worse
        details["decomposition_error"] = str(exc)
        return SpectralPropertyReport(
            left_half_plane=lhp, zero_is_eigenvalue=zero_eig,
            peripheral_semisimple=False, peripheral_projection_cptp=False,
            projection_commutes=False, peripheral_map_cptp=False, details=details)

    p_phi = peripheral_projection(dec)
    proj_report = cptp_check(Superoperator(sop.d, p_phi, "projected"))
    commute = spectral_norm(mat @ p_phi - p_phi @ mat) <= 1e-8 * norm
    details["projection_commutator_norm"] = float(spectral_norm(mat @ p_phi - p_phi @ mat))

    # peripheral part L_phi = sum over peripheral clusters of b_k P_k
    l_phi = np.zeros_like(mat)
    for c in dec.peripheral_clusters:
        l_phi += c.eigenvalue * c.projection
    peripheral_map_ok = True
    for t in times:
        phi_map = _expm_peripheral(l_phi, t) @ p_phi
        rep = cptp_check(Superoperator(sop.d, phi_map, "projected"))
        details[f"peripheral_map_min_choi_t={t}"] = rep.min_choi_eigenvalue
        peripheral_map_ok = peripheral_map_ok and rep.completely_positive and rep.trace_preserving

    return SpectralPropertyReport(
        left_half_plane=lhp,
        zero_is_eigenvalue=zero_eig,
        peripheral_semisimple=peripheral_ok,
        peripheral_projection_cptp=bool(proj_report.completely_positive
                                        and proj_report.trace_preserving),
        projection_commutes=bool(commute),
        peripheral_map_cptp=bool(peripheral_map_ok),
        details=details,
    )


def _expm_peripheral(l_phi: np.ndarray, t: float) -> np.ndarray:
    from .linalg import expm

    return expm(l_phi, t)
