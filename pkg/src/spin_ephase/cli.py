"""``spin-ephase`` command-line front end.

Exit status: 0 on success, 1 on a domain error (JSON error document on
stderr), 2 on a usage error.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .bell_audit import audit_isotropic, chsh
from .errors import SpinEphaseError
from .inference import (
    born_single,
    conditional_pi,
    consistency_report,
    interference_decomposition,
    joint_pi,
    marginal_amplitude,
    sequential_pi,
)
from .phase_space import (
    DirectionSet,
    check_index,
    check_sign,
    directions_from_spherical,
    load_directions,
    sign_str,
)
from .serialize import SCHEMA_VERSION, to_csv, to_json
from .singlet import build_singlet, joint_outcome_distribution, sample_outcomes
from .states import build_eigenstate, build_isotropic, load_dense
from .verify import equivalence_sweep

# a = 0, a' = 90, b = 45, b' = 135 degrees in the x-z plane
DEFAULT_SPHERICAL = [(0.0, 0.0), (90.0, 0.0), (45.0, 0.0), (135.0, 0.0)]


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _sign(text: str) -> int:
    try:
        return check_sign(text)
    except SpinEphaseError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _index_sign(text: str) -> tuple[int, int]:
    try:
        j, s = text.split(":")
        return int(j), check_sign(s)
    except (ValueError, SpinEphaseError):
        raise argparse.ArgumentTypeError(f"expected INDEX:SIGN such as 2:+, got {text!r}")


def _assignment(text: str) -> dict[int, int]:
    out = {}
    for part in text.split(","):
        j, s = _index_sign(part.strip())
        if j in out:
            raise argparse.ArgumentTypeError(f"direction {j} assigned twice")
        out[j] = s
    return out


def _spherical(text: str) -> list[tuple[float, float]]:
    try:
        pairs = []
        for part in text.split(";"):
            t, p = part.split(",")
            pairs.append((float(t), float(p)))
        return pairs
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected 'theta,phi;theta,phi;...' in degrees, got {text!r}")


def _state_spec(text: str) -> str:
    if text == "isotropic" or text.startswith("dense:"):
        return text
    parts = text.split(":")
    if len(parts) == 3 and parts[0] == "eigenstate":
        try:
            int(parts[1])
            check_sign(parts[2])
            return text
        except (ValueError, SpinEphaseError):
            pass
    raise argparse.ArgumentTypeError(f"state must be isotropic, eigenstate:<j>:<+|-> or dense:<path>, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="spin-ephase", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    src = common.add_mutually_exclusive_group()
    src.add_argument("--dirs", metavar="PATH", help="JSON direction document")
    src.add_argument("--spherical", type=_spherical, metavar="T,P;T,P", help="inline (theta, phi) pairs in degrees")
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--output", "-o", metavar="PATH", help="write here instead of stdout")
    stateful = argparse.ArgumentParser(add_help=False)
    stateful.add_argument("--state", type=_state_spec, default="isotropic",
                          help="isotropic | eigenstate:<j>:<+|-> | dense:<path>")

    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def add(name, help, state=True):
        return sub.add_parser(name, help=help, parents=[common, stateful] if state else [common])

    p = add("marginal", "marginal amplitude of a sub-assignment")
    p.add_argument("--assign", type=_assignment, required=True, metavar="J:S,...")
    p = add("prob", "Born-rule probability for one direction")
    p.add_argument("--axis", type=int, required=True)
    p = add("joint", "joint formal distribution over 2 or 3 directions")
    p.add_argument("--axes", type=_int_list, required=True)
    p = add("conditional", "conditional distribution of s_k given s_j")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--given", type=_index_sign, required=True, metavar="J:S")
    p = add("sequential", "sequential distribution: s_j first, then s_k")
    p.add_argument("--first", type=int, required=True)
    p.add_argument("--then", type=int, required=True)
    p = add("interference", "direct/cross split of a marginal's squared norm")
    p.add_argument("--j", type=int, required=True)
    p.add_argument("--sign", type=_sign, required=True)
    p.add_argument("--k", type=int, required=True)
    p = add("consistency", "additivity and order defects")
    p.add_argument("--axes", type=_int_list, required=True)
    p = add("singlet-joint", "joint Alice/Bob outcome law of the singlet", state=False)
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--b", type=int, required=True)
    p = add("sample", "Monte Carlo singlet outcomes", state=False)
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--b", type=int, required=True)
    p.add_argument("--count", type=int, default=10000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--naive-hidden", action="store_true", help="sample classical hidden configurations instead")
    p = add("chsh", "CHSH combination from singlet correlations", state=False)
    for flag in ("--a", "--aprime", "--b", "--bprime"):
        p.add_argument(flag, type=int, required=True)
    add("audit", "classical feasibility of the isotropic self-correlations", state=False)
    p = add("selftest", "closed-form vs exhaustive-sum sweep", state=False)
    p.add_argument("--max-n", type=int, default=10)
    p.add_argument("--sets", type=int, default=2, help="random direction sets per N")
    p.add_argument("--seed", type=int, default=0)
    return parser


def _directions(args) -> DirectionSet:
    if args.dirs:
        return load_directions(args.dirs)
    if args.spherical:
        return directions_from_spherical(args.spherical)
    return directions_from_spherical(DEFAULT_SPHERICAL)


def _state(args, dirs):
    spec = args.state
    if spec == "isotropic":
        return build_isotropic(dirs)
    if spec.startswith("dense:"):
        return load_dense(spec[len("dense:"):])
    _, j, s = spec.split(":")
    return build_eigenstate(dirs, int(j), s)


def execute(args) -> tuple[dict, int]:
    cmd = args.command
    if cmd == "selftest":
        doc = equivalence_sweep(args.max_n, args.sets, args.seed)
        return doc, 0 if doc["passed"] else 1

    dirs = _directions(args)
    if cmd == "singlet-joint":
        doc = joint_outcome_distribution(build_singlet(dirs), args.a, args.b).to_dict()
    elif cmd == "sample":
        run = sample_outcomes(build_singlet(dirs), args.a, args.b, args.count, args.seed, args.naive_hidden)
        doc = {"kind": "sample", **run.to_dict()}
    elif cmd == "chsh":
        value = chsh(build_singlet(dirs), args.a, args.aprime, args.b, args.bprime)
        doc = {"kind": "chsh", "a": args.a, "aprime": args.aprime, "b": args.b, "bprime": args.bprime,
               "S": value, "abs_S": abs(value)}
    elif cmd == "audit":
        doc = {"kind": "feasibility", **audit_isotropic(dirs).to_dict()}
    else:
        state = _state(args, dirs)
        if cmd == "marginal":
            z = marginal_amplitude(state, args.assign)
            doc = {"kind": "marginal", "state": state.describe(),
                   "assignment": {str(j): sign_str((s,)) for j, s in sorted(args.assign.items())},
                   "amplitude": list(z.as_tuple()), "norm2": z.norm2()}
        elif cmd == "prob":
            doc = born_single(state, args.axis).to_dict()
        elif cmd == "joint":
            doc = joint_pi(state, args.axes).to_dict()
        elif cmd == "conditional":
            j, s = args.given
            doc = conditional_pi(state, args.k, j, s).to_dict()
        elif cmd == "sequential":
            doc = sequential_pi(state, args.first, args.then).to_dict()
        elif cmd == "interference":
            doc = interference_decomposition(state, args.j, args.sign, args.k).to_dict()
        elif cmd == "consistency":
            doc = consistency_report(state, args.axes).to_dict()
        else:  # pragma: no cover - argparse restricts choices
            raise AssertionError(cmd)
        doc["state"] = state.describe()
    return doc, 0


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        doc, status = execute(args)
    except SpinEphaseError as exc:
        sys.stderr.write(json.dumps(exc.to_dict()) + "\n")
        return 1
    except (OSError, json.JSONDecodeError, KeyError) as exc:
        sys.stderr.write(json.dumps({"error": "input_error", "message": str(exc)}) + "\n")
        return 1
    doc = {"schema_version": SCHEMA_VERSION, "command": args.command, **doc}
    text = to_csv(doc) if args.format == "csv" else to_json(doc)
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return status


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
