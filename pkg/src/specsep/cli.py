"""Command-line front end.

Subcommands: classify, construct, transform, witness, bounds, falsify.
Exit codes: 0 = ran (verdicts carry the science), 2 = invalid input,
3 = a construction precondition was violated.
"""

from __future__ import annotations

import argparse
import math
import sys

import numpy as np

from . import __version__, channels, criteria, fileio, oracles, states, witnesses
from .states import InvalidStateError

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_PRECONDITION = 3


def _parent():
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--seed", type=int, default=0, help="seed for randomized steps")
    p.add_argument("--output", help="write the machine-readable result here")
    p.add_argument("--tol-override", type=float, default=None,
                   help="scale validation tolerances (discouraged)")
    return p


def build_parser():
    parser = argparse.ArgumentParser(prog="specsep",
                                     description="Spectral separability toolkit")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)
    parent = _parent()

    p = sub.add_parser("classify", parents=[parent],
                       help="run every spectral criterion on a state file")
    p.add_argument("state")
    p.add_argument("--compare-criteria", action="store_true",
                   help="also tabulate the named reference states at these dims")

    p = sub.add_parser("construct", parents=[parent], help="build a named state")
    p.add_argument("name", choices=["maximally_mixed", "seed_state", "werner",
                                    "phi_plus", "omega_t", "rho_tilde"])
    p.add_argument("--d-a", type=int, default=2)
    p.add_argument("--d-b", type=int, default=2)
    p.add_argument("--t", type=float, default=None)

    p = sub.add_parser("transform", parents=[parent],
                       help="synthesize a stochastic unital map rho -> sigma")
    p.add_argument("rho")
    p.add_argument("sigma")
    p.add_argument("--c", type=float, default=None, help="branch weight in (0, 1/(1+k)]")

    p = sub.add_parser("witness", parents=[parent], help="build or evaluate a witness")
    p.add_argument("kind", choices=["ppt", "separating"])
    p.add_argument("--d-a", type=int, default=2)
    p.add_argument("--d-b", type=int, default=2)
    p.add_argument("--evaluate", help="state file to evaluate the witness on")

    p = sub.add_parser("bounds", parents=[parent], help="closed-form bounds")
    p.add_argument("--copies", type=float, default=None, metavar="R",
                   help="copy bound for a state of spectral ratio R")
    p.add_argument("--ratio", type=float, default=None,
                   help="ratio input for --copies when given as a bare flag")
    p.add_argument("--h-norm", type=float, default=None, help="Hamiltonian sup norm")
    p.add_argument("--l", type=int, default=None, help="side-dimension cutoff")
    p.add_argument("--k-b", type=float, default=1.0)

    p = sub.add_parser("falsify", parents=[parent],
                       help="Haar-search for an entangling unitary")
    p.add_argument("state")
    p.add_argument("--samples", type=int, default=1000)

    return parser


def _tol_scale(args):
    return args.tol_override if args.tol_override else 1.0


def _load_spectrum(path, tol_scale):
    rho, spec = fileio.load_state(path, tol_scale=tol_scale)
    if spec is None:
        spec = states.spectrum(rho)
    return rho, spec


def _verdict_payload(v):
    return {"name": v.name, "status": v.status.value,
            "computed": {k: float(x) for k, x in v.computed.items()},
            "reason": v.reason}


def _print_verdicts(report, label):
    print("criteria report for %s (dims %s):" % (label, "x".join(map(str, report.dims.locals))))
    for v in report.verdicts:
        extra = " ".join("%s=%.6g" % (k, x) for k, x in sorted(v.computed.items()))
        print("  %-20s %-13s %s" % (v.name, v.status.value, extra))


def cmd_classify(args):
    _, spec = _load_spectrum(args.state, _tol_scale(args))
    report = criteria.run_all(spec, spec.dims)
    _print_verdicts(report, args.state)
    if args.compare_criteria:
        _print_comparison(spec.dims)
    if args.output:
        payload = {
            "command": "classify",
            "input_digest": fileio.digest(fileio.state_to_payload(spec=spec)),
            "dims": list(spec.dims.locals),
            "spectrum": [float(v) for v in spec.values],
            "verdicts": [_verdict_payload(v) for v in report.verdicts],
            "tool_version": __version__,
            "seed": args.seed,
        }
        fileio.save_report(args.output, payload)
    return EXIT_OK


def _named_states_for(dims):
    d_a, d_b = dims.bipartite()
    out = [("maximally_mixed", states.maximally_mixed(dims))]
    if (d_a, d_b) == (2, 2):
        out.append(("seed_state", states.make_named_state("seed_state")))
        out.append(("werner", states.make_named_state("werner")))
    if 2 <= d_a < d_b:
        out.append(("rho_tilde", states.make_rho_tilde(d_a, d_b)))
    return out


def _print_comparison(dims):
    print("named-state comparison at dims %s:" % ("x".join(map(str, dims.locals))))
    rows = _named_states_for(dims)
    for name, rho in rows:
        report = criteria.run_all(states.spectrum(rho), dims)
        detected = [v.name for v in report.verdicts if v.status is criteria.Status.DETECTED]
        print("  %-16s detected-by: %s" % (name, ", ".join(detected) or "(none)"))


def cmd_construct(args):
    params = {"d_a": args.d_a, "d_b": args.d_b}
    if args.t is not None:
        params["t"] = args.t
    rho = states.make_named_state(args.name, **params)
    out = args.output or ("%s.state.json" % args.name)
    fileio.save_state(out, rho=rho)
    spec = states.spectrum(rho)
    print("wrote %s; spectrum: %s" % (out, " ".join(format(v, ".12g") for v in spec.values)))
    return EXIT_OK


def cmd_transform(args):
    tol = _tol_scale(args)
    rho, _ = fileio.load_state(args.rho, tol_scale=tol)
    sigma, _ = fileio.load_state(args.sigma, tol_scale=tol)
    if rho is None or sigma is None:
        raise InvalidStateError("transform needs explicit matrix state files")
    instrument, plan = channels.construct_transformation(rho, sigma, c_choice=args.c)
    out, prob = channels.apply_map(instrument, rho)
    q = channels.validate_map(instrument)
    image = channels.apply_to_operator(instrument, np.eye(rho.dims.total, dtype=complex))
    unitality_residual = float(np.abs(image - q * np.eye(rho.dims.total)).max())
    output_residual = float(np.abs(out / prob - sigma.matrix).max())
    monotone = oracles.verify_ratio_monotone(instrument, rho)
    print("plan: alpha=%.12g beta=%.12g k=%.12g c=%.12g theta=%.12g"
          % (plan.alpha, plan.beta, plan.k, plan.c, plan.theta))
    print("success probability: %.12g" % prob)
    print("unitality residual: %.3e   output residual: %.3e   ratio monotone: %s"
          % (unitality_residual, output_residual, monotone))
    if args.output:
        payload = {
            "command": "transform",
            "plan": {"alpha": plan.alpha, "beta": plan.beta, "k": plan.k,
                     "c": plan.c, "theta": plan.theta},
            "branches": [
                {"effect": [[[z.real, z.imag] for z in row] for row in effect],
                 "output": fileio.state_to_payload(rho=output)}
                for effect, output in instrument.branches
            ],
            "unitality_factor": q,
            "success_probability": prob,
            "verification": {"unitality_residual": unitality_residual,
                             "output_residual": output_residual,
                             "ratio_monotone": monotone},
            "tool_version": __version__,
            "seed": args.seed,
        }
        fileio.save_report(args.output, payload)
    return EXIT_OK


def cmd_witness(args):
    dims = states.bipartite_dims(args.d_a, args.d_b)
    if args.kind == "ppt":
        w = witnesses.make_ppt_witness(dims)
    else:
        w = witnesses.make_separating_witness(args.d_a, args.d_b)
    print("%s witness on %dx%d: trace=%.12g trace_norm=%.12g"
          % (args.kind, args.d_a, args.d_b, w.trace, witnesses.trace_norm(w)))
    value = None
    if args.evaluate:
        rho, spec = fileio.load_state(args.evaluate, tol_scale=_tol_scale(args))
        if rho is None:
            raise InvalidStateError("witness evaluation needs a matrix state file")
        value = witnesses.evaluate(w, rho)
        print("Tr(W rho) = %.12g  (%s)" % (value, "detects" if value < 0 else "no detection"))
    if args.output:
        payload = {
            "command": "witness",
            "kind": args.kind,
            "dims": list(dims.locals),
            "matrix": [[[z.real, z.imag] for z in row] for row in w.matrix],
            "trace_norm": witnesses.trace_norm(w),
            "tool_version": __version__,
            "seed": args.seed,
        }
        if value is not None:
            payload["expectation"] = value
        fileio.save_report(args.output, payload)
    return EXIT_OK


def cmd_bounds(args):
    results = {}
    copies_ratio = args.copies if args.copies is not None else None
    if copies_ratio is None and args.ratio is not None:
        copies_ratio = args.ratio
    if copies_ratio is not None:
        n = criteria.copy_bound(copies_ratio)
        results["copy_bound"] = {"ratio": copies_ratio, "n": n}
        print("copy bound for R = %.12g: n = %d" % (copies_ratio, n))
    if args.h_norm is not None:
        if args.l is None:
            raise InvalidStateError("--h-norm requires --l")
        t_star = criteria.gibbs_threshold(args.h_norm, args.l, k_b=args.k_b)
        results["gibbs_threshold"] = {"h_norm": args.h_norm, "l": args.l,
                                      "k_b": args.k_b, "temperature": t_star}
        print("entanglement-free above T* = %.12g" % t_star)
    if not results:
        raise InvalidStateError("bounds: nothing requested (use --copies or --h-norm)")
    if args.output:
        results["tool_version"] = __version__
        results["seed"] = args.seed
        fileio.save_report(args.output, results)
    return EXIT_OK


def cmd_falsify(args):
    _, spec = _load_spectrum(args.state, _tol_scale(args))
    result = oracles.as_falsify_search(spec, spec.dims, args.samples, args.seed)
    if result.found:
        print("found: NPT after %d samples (unitary seed %d, min PT eigenvalue %.12g)"
              % (result.samples_used, result.unitary_seed, result.min_pt_eigenvalue))
    else:
        print("not found after %d samples (min PT eigenvalue seen %.12g); inconclusive"
              % (result.samples_used, result.min_pt_eigenvalue))
    if args.output:
        payload = {
            "command": "falsify",
            "input_digest": fileio.digest(fileio.state_to_payload(spec=spec)),
            "found": result.found,
            "unitary_seed": result.unitary_seed,
            "min_pt_eigenvalue": result.min_pt_eigenvalue,
            "samples_used": result.samples_used,
            "samples_requested": args.samples,
            "tool_version": __version__,
            "seed": args.seed,
        }
        fileio.save_report(args.output, payload)
    return EXIT_OK


_COMMANDS = {
    "classify": cmd_classify,
    "construct": cmd_construct,
    "transform": cmd_transform,
    "witness": cmd_witness,
    "bounds": cmd_bounds,
    "falsify": cmd_falsify,
}


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (InvalidStateError, criteria.CriterionInapplicable) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_INVALID
    except (channels.RatioTooSmall, channels.InputIsCAS) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_PRECONDITION
    except ValueError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
