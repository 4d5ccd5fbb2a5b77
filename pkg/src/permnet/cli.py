"""Command-line front end.

Every subcommand reads an optional JSON job file (``--input``), overlays the
command-line flags, and writes a JSON result document to ``--output`` (or
stdout). Exit codes: 0 success, 1 failed invariant or verification, 2
malformed input, 3 size-cap violation.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys

import numpy as np

from . import jsonio
from .entanglement import BeamSplitter, entanglement_power_mc, qubit_power_analytic
from .errors import GuardViolation
from .permanent import MAX_EXACT_DIM, as_unitary, permanent
from .transform import MAX_TRANSFORM_PHOTONS, matrix_element, transform_state
from .verification import SUITES

SEED_ENV = "PERMNET_SEED"
NORM_TOL = 1e-10

_NETWORK = {"unitary", "beam_splitter"}
_FIELDS = {
    "per": ({"matrix"}, {"method"}),
    "matelem": ({"out", "in"}, {"max_photons"}),
    "transform": ({"in"}, {"max_photons"}),
    "entpower": ({"N", "samples", "seed"}, {"workers"}),
    "verify": ({"suite"}, {"seed", "samples", "workers"}),
}
_DEFAULT_CAPS = {"matelem": MAX_EXACT_DIM, "transform": MAX_TRANSFORM_PHOTONS}


class JobError(ValueError):
    """The job document is malformed."""


class InvariantFailure(RuntimeError):
    pass


def _occupation_flag(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip() != ""]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="permnet", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--input", help="JSON job file")
        p.add_argument("--output", help="write the result document here instead of stdout")
        p.add_argument("--seed", type=int)
        p.add_argument("--samples", type=int)
        p.add_argument("--workers", type=int)
        p.add_argument("--max-photons", type=int, dest="max_photons")

    def network(p):
        g = p.add_argument_group("beam splitter (alternative to a unitary in --input)")
        g.add_argument("--per", type=float, help="permanent |T|^2 - |R|^2 of the beam splitter")
        g.add_argument("--t-abs", type=float, dest="t_abs", help="|T|")
        g.add_argument("--t-phase", type=float, dest="t_phase", default=None)
        g.add_argument("--r-phase", type=float, dest="r_phase", default=None)

    p = sub.add_parser("per", help="permanent of a square matrix")
    common(p)
    p.add_argument("--method", choices=["ryser", "glynn", "naive"])

    p = sub.add_parser("matelem", help="Fock matrix element <out|U|in>")
    common(p)
    network(p)
    p.add_argument("--out", type=_occupation_flag)
    p.add_argument("--in", type=_occupation_flag, dest="in_")

    p = sub.add_parser("transform", help="full output state U|in>")
    common(p)
    network(p)
    p.add_argument("--in", type=_occupation_flag, dest="in_")

    p = sub.add_parser("entpower", help="Monte Carlo entangling power of a beam splitter")
    common(p)
    network(p)
    p.add_argument("--N", type=int, help="highest Fock level of each input")

    p = sub.add_parser("verify", help="run a seeded invariant suite")
    common(p)
    p.add_argument("suite", choices=sorted(SUITES))
    return parser


def resolve_job(args: argparse.Namespace) -> dict:
    """Merge the ``--input`` document with flags (flags win) into a job dict."""
    job: dict = {}
    if args.input:
        try:
            with open(args.input) as fh:
                job = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise JobError(f"cannot read job file {args.input}: {exc}") from None
        if not isinstance(job, dict):
            raise JobError("job file must contain a JSON object")
        if job.get("command", args.command) != args.command:
            raise JobError(f"job file is for {job['command']!r}, not {args.command!r}")
        job.pop("command", None)

    flags = {
        "seed": args.seed,
        "samples": args.samples,
        "workers": args.workers,
        "max_photons": args.max_photons,
        "method": getattr(args, "method", None),
        "out": getattr(args, "out", None),
        "in": getattr(args, "in_", None),
        "N": getattr(args, "N", None),
        "suite": getattr(args, "suite", None),
    }
    job.update({k: v for k, v in flags.items() if v is not None})

    if getattr(args, "per", None) is not None and getattr(args, "t_abs", None) is not None:
        raise JobError("give either --per or --t-abs, not both")
    t_abs = getattr(args, "t_abs", None)
    if getattr(args, "per", None) is not None:
        if not -1.0 <= args.per <= 1.0:
            raise JobError(f"--per {args.per} outside [-1, 1]")
        t_abs = math.sqrt((1.0 + args.per) / 2.0)
    if t_abs is not None:
        job.pop("unitary", None)
        job["beam_splitter"] = {
            "t_abs": t_abs,
            "t_phase": args.t_phase or 0.0,
            "r_phase": args.r_phase or 0.0,
        }

    if args.command == "entpower":
        if "seed" not in job:
            job["seed"] = int(os.environ.get(SEED_ENV, 0))
        job.setdefault("workers", os.cpu_count() or 1)
    if args.command == "verify" and "seed" not in job:
        job["seed"] = int(os.environ.get(SEED_ENV, 0))
    return {"command": args.command, **job}


def validate_job(job: dict) -> None:
    cmd = job.get("command")
    if cmd not in _FIELDS:
        raise JobError(f"unknown command {cmd!r}")
    required, optional = _FIELDS[cmd]
    keys = set(job) - {"command"}
    if cmd in ("matelem", "transform", "entpower"):
        net = keys & _NETWORK
        if len(net) != 1:
            raise JobError(f"{cmd} needs exactly one of 'unitary' or 'beam_splitter'")
        keys -= net
    missing = required - keys
    if missing:
        raise JobError(f"{cmd} is missing {sorted(missing)}")
    extra = keys - required - optional
    if extra:
        raise JobError(f"{cmd} does not take {sorted(extra)}")


def _network(job: dict) -> np.ndarray:
    if "unitary" in job:
        return as_unitary(jsonio.matrix_from_json(job["unitary"]))
    bs = job["beam_splitter"]
    if not isinstance(bs, dict) or set(bs) - {"t_abs", "t_phase", "r_phase"} or "t_abs" not in bs:
        raise JobError("beam_splitter needs t_abs and optional t_phase, r_phase")
    t_abs = float(bs["t_abs"])
    if not 0.0 <= t_abs <= 1.0:
        raise JobError(f"t_abs {t_abs} outside [0, 1]")
    r_abs = math.sqrt(1.0 - t_abs * t_abs)
    T = t_abs * np.exp(1j * float(bs.get("t_phase", 0.0)))
    R = r_abs * np.exp(1j * float(bs.get("r_phase", 0.0)))
    return BeamSplitter(T, R).matrix


def _cap(job: dict, err) -> int:
    default = _DEFAULT_CAPS[job["command"]]
    cap = int(job.get("max_photons", default))
    if cap > default:
        print(f"warning: raising the photon cap to {cap} (default {default}) may be slow", file=err)
    return cap


def run(job: dict, err=None) -> tuple[int, dict]:
    """Execute a resolved job; returns ``(exit code, result document)``."""
    err = sys.stderr if err is None else err
    validate_job(job)
    cmd = job["command"]
    doc = {"command": cmd, "input_digest": jsonio.digest(job)}

    if cmd == "per":
        m = jsonio.matrix_from_json(job["matrix"])
        method = job.get("method", "ryser")
        doc.update(method=method, order=m.shape[0], permanent=jsonio.complex_to_json(permanent(m, method)))
        return 0, doc

    if cmd == "matelem":
        u = _network(job)
        out = jsonio.occupation_from_json(job["out"])
        inp = jsonio.occupation_from_json(job["in"])
        amp = matrix_element(u, out, inp, max_photons=_cap(job, err))
        doc.update(
            unitary=jsonio.matrix_to_json(u), out=list(out), **{"in": list(inp)},
            amplitude=jsonio.complex_to_json(amp), probability=abs(amp) ** 2,
        )
        return 0, doc

    if cmd == "transform":
        u = _network(job)
        inp = jsonio.occupation_from_json(job["in"])
        state = transform_state(u, inp, max_photons=_cap(job, err))
        norm2 = state.norm2()
        doc.update(unitary=jsonio.matrix_to_json(u), **{"in": list(inp)}, state=state.to_json(), norm2=norm2)
        if abs(norm2 - 1.0) > NORM_TOL:
            raise InvariantFailure(f"output norm^2 = {norm2!r} deviates from 1")
        return 0, doc

    if cmd == "entpower":
        u = _network(job)
        N, samples, seed = int(job["N"]), int(job["samples"]), int(job["seed"])
        workers = int(job.get("workers", 1))
        if workers > 1:
            print(f"note: result is bit-reproducible only with --workers {workers}", file=err)
        est = entanglement_power_mc(u, N, samples, seed, workers)
        per_u = u[0, 0] * u[1, 1] + u[0, 1] * u[1, 0]
        doc.update(
            unitary=jsonio.matrix_to_json(u), N=N, permanent=jsonio.complex_to_json(per_u),
            mean=est.mean, std_error=est.std_error, samples=est.samples, seed=est.seed, workers=workers,
        )
        if N == 1:
            p = min(1.0, max(-1.0, per_u.real))
            analytic = qubit_power_analytic(p)
            doc.update(analytic=analytic, within_3_std_errors=bool(abs(est.mean - analytic) <= 3 * est.std_error))
        return 0, doc

    suite = job["suite"]
    kwargs = {"seed": int(job["seed"])}
    if "samples" in job:
        if suite not in ("moments", "power"):
            raise JobError(f"suite {suite!r} does not take samples")
        kwargs["samples"] = int(job["samples"])
    if "workers" in job:
        if suite != "power":
            raise JobError(f"suite {suite!r} does not take workers")
        kwargs["workers"] = int(job["workers"])
    checks = SUITES[suite](**kwargs)
    for c in checks:
        print(c.line(), file=err)
    passed = all(c.passed for c in checks)
    doc.update(suite=suite, passed=passed, checks=[c.to_json() for c in checks])
    return (0 if passed else 1), doc


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        job = resolve_job(args)
        code, doc = run(job)
    except GuardViolation as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except InvariantFailure as exc:
        print(f"error: invariant failed: {exc}", file=sys.stderr)
        return 1
    except (ValueError, KeyError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    text = jsonio.dumps(doc)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
