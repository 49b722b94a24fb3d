"""Command-line front end.

Couplings are in rad/us (``--g`` is also accepted as ``--mhz-angular``, the
"MHz" figures quoted in the literature for this setup being angular), times
in us.  Settings come from built-in defaults, then an optional ``key = value``
config file, then flags.  ``SUPERSINGLET_OUTPUT_DIR`` sets the directory for
relative ``--output`` paths.
"""

from __future__ import annotations

import argparse
import json
import logging
import math
import os
import sys
from dataclasses import asdict, dataclass, fields

import numpy as np

from . import search
from .amplitudes import InteractionParams, propagator
from .detection import DetectionSpec, aux_pass_and_measure, certified_vacuum_protocol, optimal_aux_time
from .metrics import PureAtomicState, fidelity, supersinglet
from .oracle import OdeConfig, integrate_propagators
from .protocol import DEFAULT_CUTOFF, JointState, project_cavity, three_atom_state

log = logging.getLogger("supersinglet")

OUTPUT_DIR_ENV = "SUPERSINGLET_OUTPUT_DIR"


@dataclass
class RunConfig:
    g1: float = 1.0
    g2: float = 1.0
    delta: float = 0.0
    photon_cutoff: int = DEFAULT_CUTOFF
    output: str | None = None
    format: str = "csv"
    seed: int = 0
    workers: int = 1

    def params(self) -> InteractionParams:
        return InteractionParams(self.g1, self.g2, self.delta)


def read_config_file(path: str) -> dict:
    """Parse ``key = value`` lines; ``#`` starts a comment."""
    types = {f.name: f.type for f in fields(RunConfig)}
    out = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected 'key = value'")
            key, value = (s.strip() for s in line.split("=", 1))
            key = key.replace("-", "_")
            if key == "g":
                out["g1"] = out["g2"] = float(value)
                continue
            if key not in types:
                raise ValueError(f"{path}:{lineno}: unknown key {key!r}")
            kind = types[key]
            if kind in ("float", float):
                out[key] = float(value)
            elif kind in ("int", int):
                out[key] = int(value)
            else:
                out[key] = value
    return out


def build_config(args) -> RunConfig:
    values = asdict(RunConfig())
    if args.config:
        values.update(read_config_file(args.config))
    if args.g is not None:
        values["g1"] = values["g2"] = args.g
    for name in ("g1", "g2", "delta", "photon_cutoff", "output", "format", "seed", "workers"):
        v = getattr(args, name, None)
        if v is not None:
            values[name] = v
    if values["format"] not in ("csv", "json"):
        raise ValueError(f"unknown output format {values['format']!r}")
    return RunConfig(**values)


def parse_floats(text: str, count: int | None = None) -> list[float]:
    try:
        values = [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated list of numbers: {text!r}")
    if count is not None and len(values) != count:
        raise argparse.ArgumentTypeError(f"expected {count} values, got {len(values)}")
    if any(not math.isfinite(v) for v in values):
        raise argparse.ArgumentTypeError(f"non-finite value in {text!r}")
    return values


def parse_times(text: str) -> list[float]:
    values = parse_floats(text, 3)
    if min(values) < 0:
        raise argparse.ArgumentTypeError("interaction times must be non-negative")
    return values


def parse_range(text: str) -> tuple[float, float, float]:
    """``start:stop:step``."""
    parts = text.split(":")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"expected start:stop:step, got {text!r}")
    return tuple(float(p) for p in parts)


def open_output(cfg: RunConfig):
    if cfg.output is None or cfg.output == "-":
        return sys.stdout, False
    path = cfg.output
    base = os.environ.get(OUTPUT_DIR_ENV)
    if base and not os.path.isabs(path):
        path = os.path.join(base, path)
    return open(path, "w", encoding="utf-8", newline="\n"), True


def emit(cfg: RunConfig, csv_text: str | None, payload):
    fh, close = open_output(cfg)
    try:
        if cfg.format == "json" or csv_text is None:
            fh.write(json.dumps(payload, indent=2) + "\n")
        else:
            fh.write(csv_text)
    finally:
        if close:
            fh.close()


def _record_dict(rec: search.ScanRecord) -> dict:
    return dict(zip(search.CSV_HEADER, (rec.t1, rec.t2, rec.t3, rec.g, rec.delta, rec.fidelity, rec.success_prob)))


def _require_symmetric(cfg: RunConfig, what: str):
    if cfg.g1 != cfg.g2:
        raise ValueError(f"{what} assumes g1 = g2; got g1={cfg.g1}, g2={cfg.g2}")


def cmd_protocol(args, cfg: RunConfig) -> dict:
    p = cfg.params()
    joint = three_atom_state(args.times, p, cfg.photon_cutoff)
    report = {
        "t1_us": args.times[0],
        "t2_us": args.times[1],
        "t3_us": args.times[2],
        "g1_rad_per_us": cfg.g1,
        "g2_rad_per_us": cfg.g2,
        "delta_rad_per_us": cfg.delta,
        "projection": args.project,
    }
    if args.project == "ideal":
        atomic, prob = project_cavity(joint, 0)
        report["success_prob"] = prob
    else:
        spec = DetectionSpec(args.t_prime, args.num_aux, p)
        cert = certified_vacuum_protocol(joint, spec)
        atomic = cert.state
        report["success_prob"] = cert.success_prob
        report["error_bound"] = cert.error_bound
        report["vacuum_confidence"] = cert.vacuum_confidence
        report["t_prime_us"] = args.t_prime
        report["num_aux"] = args.num_aux
    report["fidelity"] = fidelity(PureAtomicState.from_joint(atomic), supersinglet(3))
    report["amplitudes"] = [
        {"levels": r["levels"], "re": r["re"], "im": r["im"]} for r in atomic.to_records()
    ]

    if cfg.format == "json":
        emit(cfg, None, report)
    else:
        lines = [f"F={report['fidelity']:.6f} P={report['success_prob']:.3f}"]
        if "error_bound" in report:
            lines.append(f"error_bound={report['error_bound']:.3e} vacuum_confidence={report['vacuum_confidence']:.6f}")
        lines.append("levels,re,im")
        lines += [f"{a['levels']},{a['re']:.9g},{a['im']:.9g}" for a in report["amplitudes"]]
        emit(cfg, "\n".join(lines) + "\n", report)
    return report


def cmd_scan(args, cfg: RunConfig):
    _require_symmetric(cfg, "scan")
    axes = {}
    fixed = {"g": cfg.g1}
    for name in ("t1", "t2", "t3"):
        value = getattr(args, name)
        if isinstance(value, tuple):
            axes[name] = value
        else:
            fixed[name] = value
    if args.delta_range is not None:
        if args.delta is not None:
            raise ValueError("give either --delta or --delta-range, not both")
        axes["delta"] = args.delta_range
    else:
        fixed["delta"] = cfg.delta
    records = search.scan(search.GridSpec(axes), fixed, workers=cfg.workers, cutoff=cfg.photon_cutoff)
    emit(cfg, search.records_to_csv(records), [_record_dict(r) for r in records])
    return records


def cmd_sweep_detuning(args, cfg: RunConfig):
    _require_symmetric(cfg, "sweep-detuning")
    deltas = search.axis_values(*args.delta_range)
    records = search.sweep_detuning(args.times, cfg.g1, deltas, workers=cfg.workers)
    emit(cfg, search.records_to_csv(records), [_record_dict(r) for r in records])
    return records


def cmd_surface(args, cfg: RunConfig):
    _require_symmetric(cfg, "surface")
    t2 = search.axis_values(*args.t2)
    t3 = search.axis_values(*args.t3)
    matrix = search.scan_surface(args.t1, t2, t3, cfg.g1, cfg.delta, workers=cfg.workers)
    payload = {"t1_us": args.t1, "t2_us": t2, "t3_us": t3, "fidelity": matrix.tolist()}
    emit(cfg, search.surface_to_csv(t2, t3, matrix), payload)
    return matrix


def cmd_refine(args, cfg: RunConfig):
    _require_symmetric(cfg, "refine")
    rec = search.refine_optimum(args.times, cfg.g1, cfg.delta, radius=args.radius, tol=args.tol)
    emit(cfg, search.records_to_csv([rec]), _record_dict(rec))
    return rec


def cmd_detect(args, cfg: RunConfig):
    p = cfg.params()
    t_prime = args.t_prime
    if t_prime is None:
        t_prime = optimal_aux_time(p, tuple(args.window))
    spec = DetectionSpec(t_prime, args.num_aux, p)
    if args.times is not None:
        state = three_atom_state(args.times, p, cfg.photon_cutoff)
        source = "protocol"
    else:
        state = JointState(0, max(cfg.photon_cutoff, args.photons), {((), args.photons): 1 + 0j})
        source = f"fock {args.photons}"
    out = aux_pass_and_measure(state, spec)
    report = {
        "source": source,
        "t_prime_us": t_prime,
        "num_aux": args.num_aux,
        "prob_g": out.prob_g,
        "residual": out.residual,
        "conditional_residual": out.conditional_residual,
        "step_probs": list(out.step_probs),
    }
    if args.times is not None:
        cert = certified_vacuum_protocol(state, spec)
        report["fidelity"] = fidelity(PureAtomicState.from_joint(cert.state), supersinglet(3))
        report["vacuum_confidence"] = cert.vacuum_confidence
    csv_text = "key,value\n" + "".join(
        f"{k},{v:.9g}\n" if isinstance(v, float) else f"{k},{v}\n"
        for k, v in report.items()
        if not isinstance(v, list)
    )
    emit(cfg, csv_text, report)
    return report


def cmd_oracle_check(args, cfg: RunConfig) -> float:
    times = sorted(args.times_list)
    rows = []
    worst = 0.0
    ode = OdeConfig(safety=args.safety)

    def check(n, p):
        nonlocal worst
        for t, numeric in zip(times, integrate_propagators(n, times, p, ode)):
            err = float(np.abs(propagator(n, t, p).matrix - numeric).max())
            worst = max(worst, err)
            rows.append((n, p.g1, p.g2, p.delta, t, err))

    if args.random:
        rng = np.random.default_rng(cfg.seed)
        for _ in range(args.random):
            g1, g2 = rng.uniform(0.1, 20, size=2)
            p = InteractionParams(g1, g2, rng.uniform(-min(g1, g2), min(g1, g2)))
            check(int(rng.integers(-2, args.n_max + 1)), p)
    else:
        for n in range(-2, args.n_max + 1):
            for d in args.delta_fractions:
                check(n, InteractionParams(cfg.g1, cfg.g2, d * cfg.g1))
    csv_text = "n,g1,g2,delta,t_us,max_abs_error\n" + "".join(
        f"{n},{g1:.9g},{g2:.9g},{d:.9g},{t:.9g},{e:.3e}\n" for n, g1, g2, d, t, e in rows
    )
    emit(cfg, csv_text, {"max_abs_error": worst, "tolerance": args.tol, "rows": [list(r) for r in rows]})
    log.info("largest closed-form vs RK4 deviation: %.3e", worst)
    if worst > args.tol:
        raise RuntimeError(f"closed form deviates from RK4 by {worst:.3e} > {args.tol:.1e}")
    return worst


def cmd_reproduce(args, cfg: RunConfig):
    records = search.reproduce_table(args.table, workers=cfg.workers)
    emit(cfg, search.records_to_csv(records), [_record_dict(r) for r in records])
    return records


def _time_or_range(text: str):
    return parse_range(text) if ":" in text else float(text)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="key = value settings file")
    common.add_argument("--g", "--mhz-angular", dest="g", type=float, help="set g1 = g2 (rad/us)")
    common.add_argument("--g1", type=float)
    common.add_argument("--g2", type=float)
    common.add_argument("--delta", type=float, help="detuning (rad/us)")
    common.add_argument("--cutoff", dest="photon_cutoff", type=int)
    common.add_argument("--output", "-o")
    common.add_argument("--format", choices=("csv", "json"))
    common.add_argument("--seed", type=int)
    common.add_argument("--workers", type=int)
    common.add_argument("-v", "--verbose", action="store_true")

    ap = argparse.ArgumentParser(prog="supersinglet", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("protocol", parents=[common], help="run the three-atom protocol once")
    p.add_argument("--times", type=parse_times, required=True, help="t1,t2,t3 in us")
    p.add_argument("--project", choices=("ideal", "auxiliary"), default="ideal")
    p.add_argument("--t-prime", type=float, default=4.71)
    p.add_argument("--num-aux", type=int, default=1)
    p.set_defaults(func=cmd_protocol)

    p = sub.add_parser("scan", parents=[common], help="grid scan; each time is a value or start:stop:step")
    p.add_argument("--t1", type=_time_or_range, required=True)
    p.add_argument("--t2", type=_time_or_range, required=True)
    p.add_argument("--t3", type=_time_or_range, required=True)
    p.add_argument("--delta-range", type=parse_range)
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("sweep-detuning", parents=[common], help="fidelity versus detuning at fixed times")
    p.add_argument("--times", type=parse_times, required=True)
    p.add_argument("--delta-range", type=parse_range, required=True)
    p.set_defaults(func=cmd_sweep_detuning)

    p = sub.add_parser("surface", parents=[common], help="fidelity over (t2, t3) at fixed t1")
    p.add_argument("--t1", type=float, required=True)
    p.add_argument("--t2", type=parse_range, required=True)
    p.add_argument("--t3", type=parse_range, required=True)
    p.set_defaults(func=cmd_surface)

    p = sub.add_parser("refine", parents=[common], help="coordinate-ascent polish of a seed point")
    p.add_argument("--times", type=parse_times, required=True)
    p.add_argument("--radius", type=float, default=0.5)
    p.add_argument("--tol", type=float, default=1e-3)
    p.set_defaults(func=cmd_refine)

    p = sub.add_parser("detect", parents=[common], help="auxiliary-atom vacuum detection")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--photons", type=int, help="start from a Fock state")
    src.add_argument("--times", type=parse_times, help="start from the protocol state")
    p.add_argument("--t-prime", type=float, help="default: optimal time inside --window")
    p.add_argument("--window", type=lambda s: parse_floats(s, 2), default=[4.0, 5.0])
    p.add_argument("--num-aux", type=int, default=1)
    p.set_defaults(func=cmd_detect)

    p = sub.add_parser("oracle-check", parents=[common], help="closed-form propagators vs RK4")
    p.add_argument("--n-max", type=int, default=4)
    p.add_argument("--times-list", type=parse_floats, default=[0.5, 5.0, 23.0, 95.0])
    p.add_argument("--delta-fractions", type=parse_floats, default=[0.0, 0.1, 0.5])
    p.add_argument("--random", type=int, default=0, help="check this many random parameter sets instead")
    p.add_argument("--safety", type=float, default=1e-3, help="RK4 step times Rabi frequency")
    p.add_argument("--tol", type=float, default=1e-6)
    p.set_defaults(func=cmd_oracle_check)

    p = sub.add_parser("reproduce", parents=[common], help="recompute a published table as CSV")
    p.add_argument("--table", type=int, choices=(1, 2, 3, 4), required=True)
    p.set_defaults(func=cmd_reproduce)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        cfg = build_config(args)
        args.func(args, cfg)
    except (ValueError, RuntimeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
