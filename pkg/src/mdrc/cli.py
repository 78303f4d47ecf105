"""Command-line front end.

    mdrc example1 --out DIR [--verify]
    mdrc pmdc --out DIR [--verify] [--discretization euler|zoh]
    mdrc simulate --config FILE --out DIR

Exit codes: 0 success, 1 validation failure, 2 I/O failure, 3 numerical failure.
"""

import argparse
import os
import sys

import numpy as np

from . import experiments as ex
from .config import ParseError, ValidationError, load_config
from .errors import InvalidPlant, MdrcError, NumericalError, ObserverUnstable, UnstableRequest
from .io import gain_report, write_report, write_trace_csv
from .observer import EsoState
from .plant import extend, validate_plant
from .sim import DisturbanceSignal, Scenario, disturbance_free_reference, simulate, trace_metrics
from .synthesis import gesobc_gain, place_poles, synthesize, validate_observer_gain

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_IO = 2
EXIT_NUMERICAL = 3

EXACTNESS_TOL = 1e-9


class _Checks:
    def __init__(self, stream):
        self.stream = stream
        self.failed = []

    def check(self, name, ok, detail=""):
        status = "PASS" if ok else "FAIL"
        if not ok:
            self.failed.append(name)
        print(f"{status} {name}{': ' + detail if detail else ''}", file=self.stream)
        return ok

    def compare(self, name, ok, detail=""):
        # comparison with a published figure; informational, never fails the run
        print(f"{'MATCH' if ok else 'DIFFERS'} {name}{': ' + detail if detail else ''}", file=self.stream)


def _prepare(output_dir):
    os.makedirs(output_dir, exist_ok=True)


def run_example1(output_dir, verify=False, stream=None):
    """Known-disturbance example: preview compensation against GESOBC and pure feedback."""
    stream = stream or sys.stdout
    _prepare(output_dir)
    plant = ex.example1_plant()
    gains = synthesize(plant, ex.EX1_K)
    k_ges = gesobc_gain(plant.A, plant.b_u, plant.b_d, plant.c_o, gains.K)
    k_placed = place_poles(plant.A, plant.b_u, *ex.EX1_POLES)
    disturbance = DisturbanceSignal.step(ex.EX1_MAGNITUDE, ex.EX1_ONSET)

    def scenario(law, dist):
        return Scenario(law, plant, gains, dist, ex.EX1_X0, ex.EX1_HORIZON, sample_period=ex.EX1_PERIOD)

    traces = {
        "known_preview": simulate(scenario("known_preview", disturbance)),
        "gesobc_baseline": simulate(scenario("gesobc_baseline", disturbance)),
        "feedback_only": simulate(scenario("feedback_only", DisturbanceSignal.zero())),
    }
    for name, trace in traces.items():
        write_trace_csv(trace, os.path.join(output_dir, f"{name}.csv"))
    write_report(
        gain_report(plant, gains, extra=[("K_from_poles", " ".join(f"{v:.12g}" for v in k_placed.ravel()))]),
        os.path.join(output_dir, "gains.txt"),
    )

    preview, reference = traces["known_preview"], traces["feedback_only"]
    checks = _Checks(stream)
    dev = float(np.max(np.abs(preview.y_o - reference.y_o)))
    checks.check("preview_exactness", dev <= EXACTNESS_TOL, f"max |y_o - y_o(d=0)| = {dev:.3e}")
    onset = ex.EX1_ONSET
    ref = disturbance_free_reference(plant, gains.K, preview.x[onset - 1], ex.EX1_HORIZON - onset + 1)
    dev_ref = float(np.max(np.abs(preview.y_o[onset:] - ref)))
    checks.check("disturbance_free_reference", dev_ref <= EXACTNESS_TOL, f"max deviation from onset = {dev_ref:.3e}")
    if verify:
        checks.check("g0", abs(gains.g0 - 95.0) <= 1e-6, f"{gains.g0:.12g}")
        checks.check("g1", abs(gains.g1 + 100.0) <= 1e-6, f"{gains.g1:.12g}")
        checks.check("gesobc_K_d", abs(k_ges + 5.0) <= 1e-6, f"{k_ges:.12g}")
        peak_ges = trace_metrics(traces["gesobc_baseline"], onset, 1e-6).peak_dev
        peak_prev = float(np.max(np.abs(preview.y_o[onset:] - reference.y_o[onset:])))
        checks.check(
            "gesobc_transient_visible", peak_ges > 0.01 and peak_prev <= EXACTNESS_TOL,
            f"GESOBC peak |dy_o| = {peak_ges:.4g}, preview = {peak_prev:.3e}",
        )
    return EXIT_OK if not checks.failed else EXIT_VALIDATION


def run_pmdc(output_dir, verify=False, discretization="euler", stream=None):
    """PMDC speed regulation under an unknown 5 N m load step, ESO output feedback."""
    stream = stream or sys.stdout
    _prepare(output_dir)
    plant = ex.pmdc_plant(discretization)
    report = validate_plant(plant)
    if not report.ok:
        raise ValidationError([f"{discretization} discretization: {f}" for f in report.failures()])
    es = extend(plant)
    rho_obs = validate_observer_gain(es, ex.PMDC_L_BAR)
    if rho_obs >= 1.0:
        raise ObserverUnstable(f"observer gain gives spectral radius {rho_obs:.6f} on this discretization")
    gains = synthesize(plant, ex.PMDC_K, ex.PMDC_L_BAR)
    T = ex.PMDC_PERIOD
    onset = int(round(ex.PMDC_ONSET_TIME / T))
    horizon = int(round(ex.PMDC_DURATION / T))
    trace = simulate(
        Scenario(
            "eso_output_feedback", plant, gains, DisturbanceSignal.step(ex.PMDC_LOAD, onset),
            np.zeros(2), horizon, observer_init=EsoState.zero(), sample_period=T,
        )
    )
    speed = trace_metrics(trace, onset, 0.0, "x1")
    speed_band = 0.05 * speed.peak_dev
    speed = trace_metrics(trace, onset, speed_band, "x1")
    current = trace_metrics(trace, onset, 0.05 * trace_metrics(trace, onset, 0.0, "x2").peak_dev, "x2")
    d_hat_final = float(trace.d_hat[-1])
    metrics = [
        ("discretization", discretization),
        ("sample_period_s", T),
        ("onset_step", str(onset)),
        ("speed_peak_dev_rad_s", speed.peak_dev),
        ("speed_settling_band_rad_s", speed_band),
        ("speed_settling_time_s", speed.settling_steps * T),
        ("speed_steady_bias_rad_s", speed.steady_bias),
        ("current_peak_dev_A", current.peak_dev),
        ("current_settling_time_s", current.settling_steps * T),
        ("current_steady_bias_A", current.steady_bias),
        ("d_hat_final_Nm", d_hat_final),
        ("observer_spectral_radius", rho_obs),
    ]
    write_trace_csv(trace, os.path.join(output_dir, "pmdc.csv"))
    write_report(gain_report(plant, gains), os.path.join(output_dir, "gains.txt"))
    write_report(metrics, os.path.join(output_dir, "metrics.txt"))

    checks = _Checks(stream)
    checks.check("observer_schur", rho_obs < 1.0, f"rho(A_bar - L_bar C_bar) = {rho_obs:.6f}")
    checks.check("d_hat_converges", abs(d_hat_final - ex.PMDC_LOAD) <= 1e-3, f"d_hat(end) = {d_hat_final:.9g}")
    checks.check("speed_steady_bias", abs(speed.steady_bias) <= 1e-3, f"{speed.steady_bias:.3e} rad/s")
    if verify:
        checks.compare("speed_peak_below_10", speed.peak_dev < 10.0, f"{speed.peak_dev:.4g} rad/s")
        checks.compare("current_peak_below_3", current.peak_dev < 3.0, f"{current.peak_dev:.4g} A")
        settle = speed.settling_steps * T
        checks.compare("speed_settling_about_0.1s", 0.05 <= settle <= 0.15, f"{settle:.3f} s")
        checks.compare("K_d_near_5.3", 5.1 <= gains.K_d <= 5.5, f"K_d = {gains.K_d:.6g}")
    return EXIT_OK if not checks.failed else EXIT_VALIDATION


def run_config(config_path, output_dir, stream=None):
    stream = stream or sys.stdout
    cfg = load_config(config_path)
    _prepare(output_dir)
    sc = cfg.scenario()
    trace = simulate(sc)
    name = cfg.output or f"{cfg.law}.csv"
    write_trace_csv(trace, os.path.join(output_dir, name))
    write_report(gain_report(cfg.plant, sc.gains), os.path.join(output_dir, "gains.txt"))
    print(f"wrote {os.path.join(output_dir, name)} ({len(trace)} samples)", file=stream)
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(prog="mdrc", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)
    p1 = sub.add_parser("example1", help="known-disturbance example (preview vs GESOBC)")
    p2 = sub.add_parser("pmdc", help="PMDC motor with unknown load torque")
    p2.add_argument("--discretization", choices=("euler", "zoh"), default="euler")
    p3 = sub.add_parser("simulate", help="run a scenario from a JSON config")
    p3.add_argument("--config", required=True)
    for p in (p1, p2, p3):
        p.add_argument("--out", default="out", help="output directory (default: ./out)")
    for p in (p1, p2):
        p.add_argument("--verify", action="store_true", help="print oracle and published-value checks")
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        if args.command == "example1":
            return run_example1(args.out, args.verify)
        if args.command == "pmdc":
            return run_pmdc(args.out, args.verify, args.discretization)
        return run_config(args.config, args.out)
    except ValidationError as exc:
        print("validation failed:", file=sys.stderr)
        for problem in exc.problems:
            print(f"  - {problem}", file=sys.stderr)
        return EXIT_VALIDATION
    except (ParseError, InvalidPlant, UnstableRequest, ObserverUnstable) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (NumericalError, MdrcError, ArithmeticError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
