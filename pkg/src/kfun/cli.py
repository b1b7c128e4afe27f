"""Command-line interface.

Single results print deterministic JSON (sorted keys, two-space indent);
sweeps print CSV.  Exit codes: 0 success, 1 domain error (the message
names the error code), 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .errors import KfunError
from .gaussian import (build_k_kernel, cluster_b_matrix, graph_from_dict,
                       k_eval, label_to_xvec, squeezed_vacuum_state,
                       state_from_dict, tmsv_state, vacuum_state)
from .gbs import PhotonPattern, fock_probability, herald, pattern_probability
from .kstate import coherent_overlap, subtract, success_probability
from .loss import (apply_uniform_loss, lossy_marginal_probability,
                   lossy_pattern_probability)
from .scenarios import (Method, Scenario, compare_bell_schemes,
                        five_photon_tmsv, grid, sweep, write_sweep_csv)


class _UsageError(Exception):
    pass


def _parse_ints(text: str) -> tuple:
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError:
        raise _UsageError(f"expected comma-separated integers, got {text!r}")


def _parse_floats(text: str) -> tuple:
    try:
        return tuple(float(part) for part in text.split(","))
    except ValueError:
        raise _UsageError(f"expected comma-separated numbers, got {text!r}")


def _parse_complexes(text: str) -> tuple:
    try:
        return tuple(complex(part) for part in text.split(","))
    except ValueError:
        raise _UsageError(
            f"expected comma-separated complex numbers, got {text!r}")


def _parse_grid(text: str) -> tuple:
    parts = text.split(":")
    if len(parts) != 3:
        raise _UsageError(f"expected start:stop:step, got {text!r}")
    try:
        start, stop, step = (float(p) for p in parts)
    except ValueError:
        raise _UsageError(f"expected start:stop:step, got {text!r}")
    return grid(start, stop, step)


def _load_json(path: str) -> dict:
    with open(path, "r", encoding="utf-8") as handle:
        return json.load(handle)


def _add_state_flags(sub) -> None:
    sub.add_argument("--state", required=True,
                     choices=["vacuum", "sv", "tmsv", "cluster", "file"],
                     help="input Gaussian state")
    sub.add_argument("--r", type=float, help="squeezing parameter")
    sub.add_argument("--n-modes", type=int, default=1,
                     help="mode count for the vacuum state")
    sub.add_argument("--graph-file",
                     help="JSON adjacency file for --state cluster")
    sub.add_argument("--state-file",
                     help="JSON covariance file for --state file")


def _kernel_from_args(args, flags: dict):
    if args.state == "vacuum":
        flags["n_modes"] = args.n_modes
        return build_k_kernel(vacuum_state(args.n_modes))
    if args.state in ("sv", "tmsv"):
        if args.r is None:
            raise _UsageError(f"--state {args.state} requires --r")
        flags["r"] = args.r
        state = squeezed_vacuum_state(args.r) if args.state == "sv" \
            else tmsv_state(args.r)
        return build_k_kernel(state)
    if args.state == "cluster":
        if not args.graph_file:
            raise _UsageError("--state cluster requires --graph-file")
        return cluster_b_matrix(graph_from_dict(_load_json(args.graph_file)))
    if not args.state_file:
        raise _UsageError("--state file requires --state-file")
    return build_k_kernel(state_from_dict(_load_json(args.state_file)))


def _emit(doc: dict, out: str | None) -> None:
    text = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    if out:
        with open(out, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


def _pair(z: complex) -> list:
    return [z.real, z.imag]


def _cmd_kfunc(args) -> int:
    flags: dict = {}
    kernel = _kernel_from_args(args, flags)
    doc = {"command": "kfunc", "flags": flags,
           "n_modes": kernel.n_modes,
           "det_gamma": kernel.det_gamma,
           "norm": kernel.norm.real,
           "kernel_re": kernel.B.real.tolist(),
           "kernel_im": kernel.B.imag.tolist()}
    if args.at is not None:
        labels = _parse_complexes(args.at)
        if len(labels) != kernel.n_modes:
            raise _UsageError("--at needs one label per mode")
        flags["at"] = [_pair(z) for z in labels]
        doc["value"] = _pair(k_eval(kernel, label_to_xvec(labels)))
    _emit(doc, args.out)
    return 0


def _cmd_subtract(args) -> int:
    flags: dict = {}
    kernel = _kernel_from_args(args, flags)
    counts = _parse_ints(args.m)
    taus = _parse_floats(args.tau)
    if len(taus) == 1:
        taus = taus * len(counts)
    if len(counts) != kernel.n_modes or len(taus) != kernel.n_modes:
        raise _UsageError("--m and --tau must cover every mode")
    flags["m"] = list(counts)
    flags["tau"] = list(taus)
    state = subtract(kernel, counts, taus)
    doc = {"command": "subtract", "flags": flags,
           "p_success": success_probability(state)}
    if args.gamma is not None:
        labels = _parse_complexes(args.gamma)
        flags["gamma"] = [_pair(z) for z in labels]
        overlap = coherent_overlap(state, labels)
        doc["overlap"] = _pair(overlap)
        doc["overlap_abs"] = abs(overlap)
    if args.detect is not None:
        detect = _parse_ints(args.detect)
        flags["detect"] = list(detect)
        doc["p_detect"] = fock_probability(state, detect)
    _emit(doc, args.out)
    return 0


def _pattern_from_args(args, n_modes: int, need_modes: bool):
    if args.pattern_file:
        doc = _load_json(args.pattern_file)
        counts = tuple(int(c) for c in doc["pattern"])
        modes = tuple(int(m) for m in doc.get(
            "modes", range(1, len(counts) + 1)))
    else:
        if args.pattern is None:
            raise _UsageError("need --pattern or --pattern-file")
        counts = _parse_ints(args.pattern)
        raw_modes = getattr(args, "modes", None)
        if need_modes and raw_modes is None:
            raise _UsageError("need --modes (or --pattern-file with modes)")
        modes = _parse_ints(raw_modes) if raw_modes is not None \
            else tuple(range(1, len(counts) + 1))
    return counts, modes


def _cmd_gbs(args) -> int:
    flags: dict = {}
    kernel = _kernel_from_args(args, flags)
    counts, _ = _pattern_from_args(args, kernel.n_modes, need_modes=False)
    flags["pattern"] = list(counts)
    if args.loss is not None:
        flags["loss"] = args.loss
        mixed = apply_uniform_loss(kernel, args.loss)
        prob = lossy_pattern_probability(mixed, counts)
    else:
        prob = pattern_probability(kernel, counts)
    _emit({"command": "gbs", "flags": flags, "probability": prob}, args.out)
    return 0


def _cmd_herald(args) -> int:
    flags: dict = {}
    kernel = _kernel_from_args(args, flags)
    counts, modes = _pattern_from_args(args, kernel.n_modes, need_modes=True)
    flags["pattern"] = list(counts)
    flags["modes"] = list(modes)
    doc = {"command": "herald", "flags": flags}
    if args.loss is not None:
        flags["loss"] = args.loss
        mixed = apply_uniform_loss(kernel, args.loss)
        doc["probability"] = lossy_marginal_probability(mixed, counts, modes)
    else:
        state, prob = herald(kernel, PhotonPattern(counts=counts,
                                                   measured_modes=modes))
        doc["probability"] = prob
        doc["surviving_modes"] = [i + 1 for i in state.live_modes]
    _emit(doc, args.out)
    return 0


def _result_payload(res) -> dict:
    return {"p_success": res.p_success, "fidelity": res.fidelity}


def _cmd_scenario(args) -> int:
    methods = [Method.CLOSED_FORM, Method.ENGINE] if args.method == "both" \
        else [Method(args.method)]
    flags = {"qgamma": args.qgamma, "r": args.r, "tau": args.tau}
    results: dict = {}
    if args.which == "five":
        flags["pgamma"] = args.pgamma
        for method in methods:
            res = five_photon_tmsv(args.qgamma, args.pgamma, args.r,
                                   args.tau, method)
            results.setdefault(res.scenario.value, {})[method.value] = \
                _result_payload(res)
    else:
        for method in methods:
            for res in compare_bell_schemes(args.qgamma, args.r, args.tau,
                                            method):
                results.setdefault(res.scenario.value, {})[method.value] = \
                    _result_payload(res)
    _emit({"command": "scenario", "flags": flags, "results": results},
          args.out)
    return 0


_SWEEP_SETS = {
    "five": (Scenario.FIVE_FIVE,),
    "bell": (Scenario.SPLIT_CAT_I, Scenario.JOINT_SUBTRACT_II),
    "all": (Scenario.FIVE_FIVE, Scenario.SPLIT_CAT_I,
            Scenario.JOINT_SUBTRACT_II),
}


def _cmd_sweep(args) -> int:
    values = _parse_grid(args.grid)
    rows = sweep(_SWEEP_SETS[args.scenario], args.qgamma, values, values)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as handle:
            write_sweep_csv(rows, handle)
    else:
        write_sweep_csv(rows, sys.stdout)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kfun",
        description="Coherent-label calculus for Gaussian states")
    parser.add_argument("--version", action="version",
                        version=f"kfun {__version__}")
    subs = parser.add_subparsers(dest="command", required=True)

    kfunc = subs.add_parser("kfunc", help="dump a state's label kernel")
    _add_state_flags(kfunc)
    kfunc.add_argument("--at", help="labels to evaluate at, e.g. 0.1+0.2j,0.3")
    kfunc.add_argument("--out", help="write JSON here instead of stdout")
    kfunc.set_defaults(func=_cmd_kfunc)

    sub = subs.add_parser("subtract", help="photon-subtract a state")
    _add_state_flags(sub)
    sub.add_argument("--m", required=True, help="photons per mode, e.g. 5,5")
    sub.add_argument("--tau", required=True,
                     help="tap transmittance(s), scalar or per mode")
    sub.add_argument("--gamma", help="coherent labels for an overlap")
    sub.add_argument("--detect", help="photon counts for detection stats")
    sub.add_argument("--out", help="write JSON here instead of stdout")
    sub.set_defaults(func=_cmd_subtract)

    gbs = subs.add_parser("gbs", help="full photon-pattern probability")
    _add_state_flags(gbs)
    gbs.add_argument("--pattern", help="counts on every mode, e.g. 2,2")
    gbs.add_argument("--pattern-file", help="JSON pattern file")
    gbs.add_argument("--loss", type=float,
                     help="uniform loss transmittance before detection")
    gbs.add_argument("--out", help="write JSON here instead of stdout")
    gbs.set_defaults(func=_cmd_gbs)

    her = subs.add_parser("herald", help="detect a pattern on some modes")
    _add_state_flags(her)
    her.add_argument("--pattern", help="counts on the measured modes")
    her.add_argument("--modes", help="1-based measured modes, e.g. 2")
    her.add_argument("--pattern-file", help="JSON pattern file")
    her.add_argument("--loss", type=float,
                     help="uniform loss transmittance; reports the "
                          "marginal pattern probability")
    her.add_argument("--out", help="write JSON here instead of stdout")
    her.set_defaults(func=_cmd_herald)

    scen = subs.add_parser("scenario", help="cat-state benchmarks")
    scen.add_argument("which", choices=["five", "bell"])
    scen.add_argument("--qgamma", type=float, required=True)
    scen.add_argument("--pgamma", type=float, default=0.0)
    scen.add_argument("--r", type=float, required=True)
    scen.add_argument("--tau", type=float, required=True)
    scen.add_argument("--method", default="closed_form",
                      choices=["closed_form", "engine", "both"])
    scen.add_argument("--out", help="write JSON here instead of stdout")
    scen.set_defaults(func=_cmd_scenario)

    swp = subs.add_parser("sweep", help="CSV sweep over an (r, tau) grid")
    swp.add_argument("--scenario", default="bell",
                     choices=sorted(_SWEEP_SETS))
    swp.add_argument("--qgamma", type=float, required=True)
    swp.add_argument("--grid", required=True,
                     help="start:stop:step for both r and tau")
    swp.add_argument("--out", help="write CSV here instead of stdout")
    swp.set_defaults(func=_cmd_sweep)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code
        return int(code) if code is not None else 0
    try:
        return args.func(args)
    except _UsageError as err:
        print(f"usage error: {err}", file=sys.stderr)
        return 2
    except KfunError as err:
        print(f"error: {err.code}: {err}", file=sys.stderr)
        return 1
    except (ValueError, OSError, KeyError) as err:
        print(f"error: invalid-input: {err}", file=sys.stderr)
        return 1
