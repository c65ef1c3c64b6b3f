"""Command-line interface: config ingestion, pipelines, sweeps, tabular output.

Subcommands: rates, steady-state, sweep, fig2, midir, validate,
verify-parseval.  Configuration is a single JSON file validated against
the shipped schema before any computation; every physical quantity is
converted from practical units (um/nm, meV, ps^-1, e*nm) to internal CGS
exactly once, at the boundary.

Exit codes: 0 success, 2 config error, 3 physics error, 4 numerical
failure.
"""

import argparse
import hashlib
import importlib.resources
import json
import sys
from concurrent.futures import ThreadPoolExecutor

import jsonschema
import numpy as np

from . import __version__
from .coupling import parseval_sum
from .dielectric import Constant, DielectricStack, Lorentz
from .emitter import EmitterSheet, InfiniteWell, Subband, effective_dipole, fermi_dirac, transition_freq
from .errors import ConfigError, NumericalError, PhysicsError
from .golden_rule import (
    purcell_ratio,
    rate_cavity,
    rate_free_space,
    rate_planewave,
    rate_waveguide,
)
from .langevin import (
    LangevinParams,
    effective_linewidth,
    steady_state,
)
from .mc_validator import (
    KBins,
    SdeConfig,
    binned_photon_number,
    binned_response,
    check_decay_without_noise,
    check_noise_correlators,
    euler_stationary_photon_number,
    simulate_steady_state,
)
from .modes import Cavity, Geometry, PlaneWave, Waveguide, solve_dispersion, rabi_squared
from .units import (
    C,
    HBAR,
    inv_ps_to_radps,
    mass_m0_to_g,
    mev_to_erg,
    mev_to_radps,
    nm_to_cm,
    um_to_cm,
)

_K_GRID_DEFAULT_POINTS = 256


def fmt(value):
    """Shortest representation capped at 12 significant digits."""
    if isinstance(value, str):
        return value
    if isinstance(value, (bool, np.bool_)):
        return str(bool(value)).lower()
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return f"{float(value):.12g}"


def load_config(path):
    try:
        with open(path) as fh:
            cfg = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config is not valid JSON: {exc}") from exc
    validate_config(cfg)
    return cfg


def validate_config(cfg):
    schema = json.loads(
        importlib.resources.files("purcell2d").joinpath("config_schema.json").read_text()
    )
    try:
        jsonschema.validate(cfg, schema)
    except jsonschema.ValidationError as exc:
        path = "/".join(str(p) for p in exc.absolute_path) or "<root>"
        raise ConfigError(f"config invalid at {path}: {exc.message}") from exc


def config_hash(cfg):
    return hashlib.sha256(
        json.dumps(cfg, sort_keys=True, separators=(",", ":")).encode()
    ).hexdigest()


def _require(cfg, key):
    if key not in cfg:
        raise ConfigError(f"missing required config block '{key}'")
    return cfg[key]


def build_stack(cfg):
    block = _require(cfg, "stack")
    thicknesses, models = [], []
    for layer in block["layers"]:
        thicknesses.append(um_to_cm(layer["thickness_um"]))
        m = layer["model"]
        if m["type"] == "constant":
            models.append(Constant(eps=m["eps"]))
        else:
            models.append(
                Lorentz(
                    eps_inf=m["eps_inf"],
                    plasma_freq=mev_to_radps(m["plasma_mev"]),
                    resonance_freq=mev_to_radps(m["resonance_mev"]),
                )
            )
    return DielectricStack.from_thicknesses(thicknesses, models)


def build_geometry(cfg, stack):
    block = _require(cfg, "geometry")
    return Geometry(
        Lx=um_to_cm(block["lx_um"]), Ly=um_to_cm(block["ly_um"]), Lz=stack.Lz
    )


def build_mode(cfg):
    block = _require(cfg, "mode")
    kind = block["type"]
    if kind == "planewave":
        if "q_per_cm" not in block:
            raise ConfigError("planewave mode requires q_per_cm")
        return PlaneWave(qx=block["q_per_cm"][0], qy=block["q_per_cm"][1])
    if kind == "waveguide":
        if "qx_per_cm" not in block:
            raise ConfigError("waveguide mode requires qx_per_cm")
        return Waveguide(qx=block["qx_per_cm"])
    if "n" not in block:
        raise ConfigError("cavity mode requires n")
    return Cavity(N=block["n"])


def mode_bracket(cfg):
    block = _require(cfg, "mode")
    if "bracket_mev" not in block:
        return None
    lo, hi = block["bracket_mev"]
    return (mev_to_radps(lo), mev_to_radps(hi))


def build_sheet(cfg, geometry):
    block = _require(cfg, "emitter")
    well = block["well"]
    width = nm_to_cm(well["width_nm"])
    if width > geometry.Lz * (1 + 1e-12):
        raise ConfigError("well width exceeds the stack thickness")
    m1 = mass_m0_to_g(well["masses_m0"][0])
    m2 = mass_m0_to_g(well["masses_m0"][1])
    de = mev_to_erg(well["delta_e_mev"])
    sb1 = Subband(
        index=1,
        edge_energy=0.0,
        effective_mass=m1,
        psi=InfiniteWell(n=well.get("n_lower", 1), width=width),
    )
    sb2 = Subband(
        index=2,
        edge_energy=de,
        effective_mass=m2,
        psi=InfiniteWell(n=well.get("n_upper", 2), width=width),
    )

    pops = block["populations"]
    kgrid_block = block.get("k_grid", {})
    if pops["type"] == "table":
        k = np.asarray(pops["k_per_cm"], dtype=float)
        n1 = np.asarray(pops["n1"], dtype=float)
        n2 = np.asarray(pops["n2"], dtype=float)
        if not (k.shape == n1.shape == n2.shape):
            raise ConfigError("table populations need matching array lengths")
    else:
        k_max = kgrid_block.get("k_max_per_cm", 2e6)
        points = kgrid_block.get("points", _K_GRID_DEFAULT_POINTS)
        k = np.linspace(0.0, k_max, points)
        if pops["type"] == "fermi":
            mu = mev_to_erg(pops["ef_mev"])
            temp = mev_to_erg(pops["t_mev"])
            w1 = HBAR**2 * k**2 / (2 * m1)
            w2 = de + HBAR**2 * k**2 / (2 * m2)
            n1 = fermi_dirac(w1, mu, temp)
            n2 = fermi_dirac(w2, mu, temp)
        else:  # inverted: flat occupations held by pumping
            n1 = np.full_like(k, pops["n1"])
            n2 = np.full_like(k, pops["n2"])
    gamma21 = np.full_like(k, mev_to_radps(block["gamma21_mev"]))
    return EmitterSheet(
        subband1=sb1,
        subband2=sb2,
        k_grid=k,
        n1=n1,
        n2=n2,
        gamma21=gamma21,
        degeneracy=block.get("degeneracy", 2.0),
    )


def _rate_from(block, name):
    mev_key, ps_key = f"{name}_mev", f"{name}_per_ps"
    if mev_key in block and ps_key in block:
        raise ConfigError(f"specify {mev_key} or {ps_key}, not both")
    if mev_key in block:
        return mev_to_radps(block[mev_key])
    if ps_key in block:
        return inv_ps_to_radps(block[ps_key])
    return 0.0


def build_params(cfg):
    block = _require(cfg, "langevin")
    return LangevinParams(
        gamma_r=_rate_from(block, "gamma_r"),
        gamma_sigma=_rate_from(block, "gamma_sigma"),
        t_r=mev_to_erg(block.get("t_r_mev", 0.0)),
        t_sigma=mev_to_erg(block.get("t_sigma_mev", 0.0)),
    )


def audit_units(cfg, stream=None):
    """Print every configured quantity in internal CGS for spot-checking."""
    if stream is None:
        stream = sys.stderr
    stack = build_stack(cfg)
    print(f"# audit stack Lz_cm={fmt(stack.Lz)}", file=stream)
    for i, lay in enumerate(stack.layers):
        print(
            f"# audit layer{i} z_lo_cm={fmt(lay.z_lo)} z_hi_cm={fmt(lay.z_hi)} "
            f"model={lay.model!r}",
            file=stream,
        )
    if "geometry" in cfg:
        geo = build_geometry(cfg, stack)
        print(
            f"# audit geometry Lx_cm={fmt(geo.Lx)} Ly_cm={fmt(geo.Ly)} "
            f"Lz_cm={fmt(geo.Lz)}",
            file=stream,
        )
        if "emitter" in cfg:
            sheet = build_sheet(cfg, geo)
            print(
                f"# audit emitter width_cm={fmt(sheet.well_width)} "
                f"m1_g={fmt(sheet.subband1.effective_mass)} "
                f"m2_g={fmt(sheet.subband2.effective_mass)} "
                f"delta_e_erg={fmt(sheet.subband2.edge_energy)} "
                f"gamma21_radps={fmt(sheet.gamma21[0])}",
                file=stream,
            )
    if "langevin" in cfg:
        p = build_params(cfg)
        print(
            f"# audit langevin gamma_r_radps={fmt(p.gamma_r)} "
            f"gamma_sigma_radps={fmt(p.gamma_sigma)} t_r_erg={fmt(p.t_r)} "
            f"t_sigma_erg={fmt(p.t_sigma)}",
            file=stream,
        )


class Writer:
    """Buffered tabular output: CSV with # metadata lines, or JSON."""

    def __init__(self, cfg, out_path=None):
        self.fmt = cfg.get("output", {}).get("format", "csv")
        self.meta = {
            "config_sha256": config_hash(cfg),
            "version": __version__,
            "units": "lengths um/nm in, energies meV in, rates rad/s out, power erg/s out",
        }
        self.out_path = out_path
        self.columns = None
        self.rows = []

    def header(self, columns):
        self.columns = list(columns)

    def row(self, values):
        self.rows.append([fmt(v) for v in values])

    def dump(self):
        if self.fmt == "json":
            text = json.dumps(
                {"meta": self.meta, "columns": self.columns, "rows": self.rows},
                indent=1,
            ) + "\n"
        else:
            lines = [f"# {k}={v}" for k, v in self.meta.items()]
            lines.append(",".join(self.columns))
            lines.extend(",".join(r) for r in self.rows)
            text = "\n".join(lines) + "\n"
        if self.out_path:
            with open(self.out_path, "w") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)


def _solve_pipeline(cfg):
    stack = build_stack(cfg)
    geometry = build_geometry(cfg, stack)
    mode = build_mode(cfg)
    sol = solve_dispersion(stack, geometry, mode, bracket=mode_bracket(cfg))
    sheet = build_sheet(cfg, geometry)
    d_eff = effective_dipole(sheet, stack, sol.omega)
    rabi2 = rabi_squared(d_eff, stack, geometry, mode, sol.omega)
    return stack, geometry, mode, sol, sheet, d_eff, rabi2


STEADY_COLUMNS = [
    "omega_nu_radps",
    "rabi2_radps2",
    "delta_omega_shift_radps",
    "gamma_medium_radps",
    "photon_number",
    "power_erg_per_s",
    "delta_omega_eff_radps",
    "q_eff",
    "limit_narrow_erg_per_s",
    "limit_wide_erg_per_s",
    "regime",
]


def _steady_row(cfg):
    _, geometry, _, sol, sheet, _, rabi2 = _solve_pipeline(cfg)
    params = build_params(cfg)
    res = steady_state(
        sheet, geometry, rabi2, sol.omega, params,
        absorb_shift=cfg.get("absorb_shift", False),
    )
    return [
        sol.omega,
        rabi2,
        res.delta_omega_shift,
        res.gamma_medium,
        res.photon_number,
        res.power,
        res.delta_omega_eff,
        res.q_eff,
        res.limit_narrow,
        res.limit_wide,
        res.regime,
    ]


def cmd_steady_state(cfg, args):
    w = Writer(cfg, args.out)
    w.header(STEADY_COLUMNS)
    w.row(_steady_row(cfg))
    w.dump()


def cmd_sweep(cfg, args):
    block = _require(cfg, "sweep")
    if "values" in block:
        values = list(block["values"])
    else:
        for key in ("start", "stop", "points"):
            if key not in block:
                raise ConfigError(f"sweep needs 'values' or '{key}'")
        if block.get("scale", "linear") == "log":
            values = list(np.geomspace(block["start"], block["stop"], block["points"]))
        else:
            values = list(np.linspace(block["start"], block["stop"], block["points"]))

    path = block["parameter"].split(".")

    def with_value(v):
        sub = json.loads(json.dumps(cfg))
        node = sub
        for key in path[:-1]:
            if key not in node:
                raise ConfigError(f"sweep parameter path '{block['parameter']}' not in config")
            node = node[key]
        if path[-1] not in node:
            raise ConfigError(f"sweep parameter path '{block['parameter']}' not in config")
        node[path[-1]] = v
        sub.pop("sweep", None)
        validate_config(sub)
        return sub

    w = Writer(cfg, args.out)
    w.header([block["parameter"]] + STEADY_COLUMNS)
    if args.threads > 1:
        with ThreadPoolExecutor(max_workers=args.threads) as pool:
            rows = list(pool.map(lambda v: _steady_row(with_value(v)), values))
    else:
        rows = [_steady_row(with_value(v)) for v in values]
    for v, r in zip(values, rows):
        w.row([v] + r)
    w.dump()


def cmd_rates(cfg, args):
    stack, geometry, mode, sol, sheet, d_eff, _ = _solve_pipeline(cfg)
    params = build_params(cfg)
    omega21 = float(transition_freq(sheet, 0.0))
    delta_omega = 2.0 * (params.gamma_r + params.gamma_sigma)
    w = Writer(cfg, args.out)
    w.header(["quantity", "value", "unit"])
    w.row(["omega21_radps", omega21, "rad/s"])
    w.row(["omega_nu_radps", sol.omega, "rad/s"])
    w.row(["effective_dipole_abs", abs(d_eff), "esu cm"])

    def attempt(label, fn):
        try:
            res = fn()
        except (PhysicsError, NumericalError) as exc:
            w.row([label, "nan", f"unavailable: {type(exc).__name__}"])
            return
        w.row([label, res.rate, "1/s"])

    attempt("rate_planewave", lambda: rate_planewave(sheet, stack, geometry, omega21))
    attempt("rate_waveguide", lambda: rate_waveguide(sheet, stack, geometry, omega21))
    if isinstance(mode, Cavity) and delta_omega > 0:
        attempt(
            "rate_cavity",
            lambda: rate_cavity(
                sheet, stack, geometry, mode, delta_omega,
                omega21=omega21, bracket=mode_bracket(cfg),
            ),
        )
    if stack.is_uniform_nondispersive:
        eps = stack.uniform_eps
        d_bare = abs(d_eff) * eps
        w.row(["rate_free_space", rate_free_space(d_bare, omega21, eps), "1/s"])
        if delta_omega > 0:
            pr = purcell_ratio(geometry, stack, omega21, delta_omega)
            w.row(["purcell_ratio", pr.formula, "dimensionless"])
            w.row(["purcell_ratio_direct", pr.direct_quotient, "dimensionless"])
    w.dump()


def cmd_fig2(cfg, args):
    block = _require(cfg, "fig2")
    gamma21 = mev_to_radps(block["gamma21_mev"])
    if "g_mev" not in block:
        print(
            "warning: fig2.g_mev not given; using g = gamma_sigma + gamma = 0",
            file=sys.stderr,
        )
    g = mev_to_radps(block.get("g_mev", 0.0))
    points = block.get("points", 201)
    omega21 = 1.0  # Q_norm = 2*gamma21/dw_eff is frequency-independent

    w = Writer(cfg, args.out)
    w.header(["gamma_r_over_gamma21", "q_norm"])
    for x in np.geomspace(1e-2, 1e2, points):
        params = LangevinParams(gamma_r=x * gamma21, gamma_sigma=g)
        dw = effective_linewidth(gamma21, omega21, omega21, params)
        w.row([x, 2.0 * gamma21 / dw])
    w.dump()

    inset_points = block.get("detuning_points", 201)
    inset = Writer(cfg, _inset_path(args.out))
    inset.header(["detuning_over_gamma21", "q_norm"])
    params = LangevinParams(gamma_r=gamma21, gamma_sigma=g)
    for d in np.linspace(-5.0, 5.0, inset_points):
        dw = effective_linewidth(gamma21, omega21, omega21 + d * gamma21, params)
        inset.row([d, 2.0 * gamma21 / dw])
    inset.dump()


def _inset_path(out):
    if out is None:
        return None
    if out.endswith(".csv"):
        return out[:-4] + ".inset.csv"
    return out + ".inset"


def cmd_midir(cfg, args):
    block = _require(cfg, "midir")
    eps = block["eps"]
    energies = block.get("hbar_omega21_mev", [100.0, 200.0])
    fwhm = mev_to_radps(block.get("fwhm_mev", 10.0))
    gamma21 = fwhm / 2.0
    points = block.get("gamma_r_points", 7)

    geo_factor = None
    if "geometry" in cfg and "stack" in cfg:
        stack = build_stack(cfg)
        geometry = build_geometry(cfg, stack)
        volume = geometry.Lx * geometry.Ly * geometry.Lz

    w = Writer(cfg, args.out)
    w.header(
        [
            "hbar_omega21_mev",
            "gamma_r_over_gamma21",
            "q_eff",
            "q_eff_limit_gamma_r_to_0",
            "geometric_factor",
        ]
    )
    for e_mev in energies:
        omega21 = mev_to_radps(e_mev)
        if "lambda_medium_um" in block:
            lam_med = um_to_cm(block["lambda_medium_um"])
        else:
            lam_med = 2.0 * np.pi * C / (omega21 * np.sqrt(eps))
        if "geometry" in cfg and "stack" in cfg:
            geo_factor = 6.0 / np.pi**2 * (lam_med / 2.0) ** 3 / volume
        q_limit = omega21 / (2.0 * gamma21)
        for x in np.geomspace(1e-2, 1e2, points):
            params = LangevinParams(gamma_r=x * gamma21, gamma_sigma=0.0)
            dw = effective_linewidth(gamma21, omega21, omega21, params)
            w.row(
                [
                    e_mev,
                    x,
                    omega21 / dw,
                    q_limit,
                    geo_factor if geo_factor is not None else "nan",
                ]
            )
    w.dump()


def cmd_validate(cfg, args):
    stack, geometry, _, sol, sheet, _, rabi2 = _solve_pipeline(cfg)
    params = build_params(cfg)
    mc = cfg.get("mc", {})
    seed = args.seed if args.seed is not None else mc.get("seed", 0)

    bins = KBins.from_sheet(sheet, geometry, mc.get("k_modes", 8))
    _, gamma = binned_response(bins, rabi2, sol.omega)
    gamma_t = params.gamma_r + params.gamma_sigma + gamma
    fastest = max(
        float(np.max(bins.gamma21)),
        gamma_t,
        float(np.max(np.abs(bins.omega21 - sol.omega), initial=0.0)),
    )
    slowest = min(float(np.min(bins.gamma21)), gamma_t)
    sde = SdeConfig(
        dt=mc.get("dt_scale", 5e-3) / fastest,
        t_end=mc.get("t_end_scale", 50.0) / slowest,
        burn_in=mc.get("burn_in_scale", 10.0) / slowest,
        n_trajectories=mc.get("n_trajectories", 500),
        seed=seed,
        k_modes=mc.get("k_modes", 8),
    )

    checks = []
    # exact stationary value of the simulated chain (includes the O(dt) bias)
    exact_chain = euler_stationary_photon_number(bins, rabi2, sol.omega, params, sde.dt)
    closed_form = binned_photon_number(bins, rabi2, sol.omega, params)
    est = simulate_steady_state(bins, rabi2, sol.omega, params, sde)
    sigma = max(est.std_error, 1e-300)
    checks.append(
        {
            "check": "steady_state_photon_number",
            "value": est.photon_number_mean,
            "expected": exact_chain,
            "closed_form": closed_form,
            "std_error": est.std_error,
            "passed": bool(abs(est.photon_number_mean - exact_chain) <= 3.0 * sigma),
        }
    )
    noise = check_noise_correlators(sde, n_samples=200_000)
    checks.append(
        {
            "check": "noise_correlators",
            "value": [ch.empirical for ch in noise.channels],
            "expected": [ch.expected for ch in noise.channels],
            "passed": bool(noise.passed),
        }
    )
    decay = check_decay_without_noise(params, sde)
    checks.append(
        {
            "check": "deterministic_decay",
            "value": decay.amplitude_rel_error,
            "expected": decay.error_bound,
            "passed": bool(decay.passed),
        }
    )

    lines = [json.dumps(c, sort_keys=True) for c in checks]
    text = "\n".join(lines) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    n_pass = sum(c["passed"] for c in checks)
    print(f"validate: {n_pass}/{len(checks)} checks passed", file=sys.stderr)
    if n_pass != len(checks):
        raise NumericalError("Monte Carlo validation failed")


def cmd_verify_parseval(cfg, args):
    stack = build_stack(cfg)
    geometry = build_geometry(cfg, stack)
    w = Writer(cfg, args.out)
    w.header(["variant", "parseval_sum", "target"])
    w.row(["waveguide_y", parseval_sum(Waveguide(qx=0.0), geometry), 0.5])
    w.row(["cavity_x_odd", _x_only(geometry, 1), 0.5])
    w.row(["cavity_x_even", _x_only(geometry, 2), 0.5])
    w.row(["cavity_product", parseval_sum(Cavity(N=1), geometry), 0.25])
    w.dump()


def _x_only(geometry, n):
    from .coupling import _parseval_1d, x_factor

    g = n * np.pi / geometry.Lx
    return _parseval_1d(
        lambda kp: x_factor(0.0, kp, geometry.Lx, n),
        [-g, g],
        geometry.Lx,
        0.0,
        400,
        24,
    )


_COMMANDS = {
    "rates": cmd_rates,
    "steady-state": cmd_steady_state,
    "sweep": cmd_sweep,
    "fig2": cmd_fig2,
    "midir": cmd_midir,
    "validate": cmd_validate,
    "verify-parseval": cmd_verify_parseval,
}


def build_parser():
    parser = argparse.ArgumentParser(
        prog="purcell2d",
        description="Spontaneous emission of 2D emitters in subwavelength cavities",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in _COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--config", required=True, help="JSON config path")
        p.add_argument("--out", default=None, help="output file (stdout if omitted)")
        p.add_argument("--threads", type=int, default=1)
        p.add_argument("--seed", type=int, default=None, help="override mc seed")
        p.add_argument("--audit-units", action="store_true")
    return parser


def run(argv):
    args = build_parser().parse_args(argv)
    cfg = load_config(args.config)
    if args.audit_units:
        audit_units(cfg)
    _COMMANDS[args.command](cfg, args)
    return 0


def main(argv=None):
    try:
        return run(sys.argv[1:] if argv is None else argv)
    except ConfigError as exc:
        print(f"error: code=2 kind={type(exc).__name__} msg={exc}", file=sys.stderr)
        return 2
    except PhysicsError as exc:
        print(f"error: code=3 kind={type(exc).__name__} msg={exc}", file=sys.stderr)
        return 3
    except NumericalError as exc:
        print(f"error: code=4 kind={type(exc).__name__} msg={exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
