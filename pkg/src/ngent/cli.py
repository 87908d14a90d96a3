"""Command-line front end.

    ngent state tmsn --M 1 --N 0 --xi 0.7
    ngent state bsn --n 1 --m 1 --r 1
    ngent witness tmsn --M 3 --N 3 --xi 0.7
    ngent witness --table moments.mt
    ngent sweep tmsn-region --xi 0.7 --max 10
    ngent sweep hz-region --r 1 --max 10
    ngent blind --limit 1000000

Data goes to ``--out`` (written atomically) or to stdout; the human summary
goes to stdout when ``--out`` is given and to stderr otherwise.  Exit codes:
0 success, 2 parameter error, 3 input-file error.
"""

import argparse
import cmath
import math
import os
import re
import sys
import tempfile

from . import closed_form, serialize, survey, witnesses
from .errors import MissingMomentError, ParameterError, SerializationError
from .fock_core import inner_product
from .states import BSN, TMSN, build_state, schmidt_profile

EXIT_PARAM = 2
EXIT_INPUT = 3
TOL_ENV = "NGENT_TOL"
CUTOFF_TAIL_WARN = 1e-12


class InputFileError(Exception):
    pass


def parse_complex(text):
    """'0.7', '-0.2', '0.5+0.2i', '0.3j', 'i' -> complex."""
    if isinstance(text, (int, float, complex)):
        return complex(text)
    s = str(text).strip().replace(" ", "")
    s = re.sub(r"(?<![0-9.])([ij])", r"1\1", s)
    s = s.replace("i", "j")
    try:
        return complex(s)
    except ValueError:
        raise ParameterError(f"cannot parse complex number {text!r}") from None


def _param(args, name):
    """Complex parameter from --name or --name-abs/--name-arg."""
    cart = getattr(args, name)
    mag = getattr(args, f"{name}_abs")
    arg = getattr(args, f"{name}_arg")
    if cart is not None and (mag is not None or arg is not None):
        raise ParameterError(f"give either --{name} or --{name}-abs/--{name}-arg, not both")
    if cart is not None:
        return parse_complex(cart)
    if mag is None:
        raise ParameterError(f"--{name} (or --{name}-abs) is required")
    return cmath.rect(float(mag), float(arg or 0.0))


def _count(args, name):
    v = getattr(args, name)
    if v is None:
        raise ParameterError(f"--{name} is required")
    v = int(v)
    if v < 0:
        raise ParameterError(f"--{name} must be >= 0, got {v}")
    return v


def _spec(args):
    if args.family == "tmsn":
        return TMSN(_count(args, "M"), _count(args, "N"), _param(args, "xi"))
    if args.family == "bsn":
        return BSN(_count(args, "n"), _count(args, "m"), _param(args, "r"))
    raise ParameterError("a state family (tmsn or bsn) is required")


def _tolerance(args):
    if args.tol is not None:
        return float(args.tol)
    env = os.environ.get(TOL_ENV)
    if env:
        try:
            return float(env)
        except ValueError:
            raise ParameterError(f"{TOL_ENV}={env!r} is not a number") from None
    return witnesses.WITNESS_TOL


def write_atomic(path, text):
    d = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".ngent-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _read(path):
    try:
        with open(path) as fh:
            return fh.read()
    except OSError as exc:
        raise InputFileError(f"cannot read {path}: {exc.strerror}") from None


def _emit(args, data, summary):
    if args.out:
        write_atomic(args.out, data)
        print(summary)
    else:
        sys.stdout.write(data)
        print(summary, file=sys.stderr)


def _build(args, spec):
    state = build_state(spec, args.cutoff)
    if args.cutoff is not None and state.tail_bound > CUTOFF_TAIL_WARN:
        print(
            f"warning: cutoff {args.cutoff} leaves tail bound {state.tail_bound:.2e} > {CUTOFF_TAIL_WARN:g}",
            file=sys.stderr,
        )
    return state


def cmd_state(args):
    spec = _spec(args)
    state = _build(args, spec)
    prof = schmidt_profile(state)
    support = state.support()
    if spec.kind == "tmsn":
        band = f"n_a - n_b = {spec.M - spec.N}"
        rank = f"{prof.rank} on the truncated lattice (exact rank is infinite)"
    else:
        band = f"n_a + n_b = {spec.n + spec.m}"
        rank = f"{prof.rank} (bound n + m + 1 = {spec.n + spec.m + 1})"
    lines = [
        f"state {spec.kind} {spec_str(spec)}",
        f"cutoff {state.cutoff}, norm {math.sqrt(inner_product(state, state).real):.15f}, "
        f"tail_bound {state.tail_bound:.3e}",
        f"support: {len(support)} amplitudes on {band}",
        f"Schmidt rank {rank}",
        "Schmidt coefficients: " + ", ".join(f"{c:.6f}" for c in prof.coefficients[:6])
        + (" ..." if prof.rank > 6 else ""),
    ]
    if len(support) <= 8:
        lines.append(
            "amplitudes: "
            + ", ".join(f"({i},{j}): {complex(state.amplitudes[i, j]):.6f}" for i, j in support)
        )
    _emit(args, serialize.dump_state(state, spec), "\n".join(lines))
    return 0


def spec_str(spec):
    if spec.kind == "tmsn":
        return f"M={spec.M} N={spec.N} xi={spec.xi:g}"
    return f"n={spec.n} m={spec.m} r={spec.r:g}"


def _report_summary(reports, head):
    lines = [head]
    for r in reports:
        flag = "ENTANGLED" if r.entangled else "not detected"
        lines.append(f"  {r.criterion:<11} lhs={r.lhs:< 14.6g} rhs={r.rhs:< 14.6g} {flag}")
    return "\n".join(lines)


def cmd_witness(args):
    tol = _tolerance(args)
    if args.table:
        if args.family:
            raise ParameterError("give either a state family or --table, not both")
        try:
            table = serialize.load_table(_read(args.table))
        except SerializationError as exc:
            raise InputFileError(f"{args.table}: {exc}") from None
        try:
            reports = witnesses.evaluate_table(table, tol)
        except MissingMomentError as exc:
            raise InputFileError(f"{args.table}: {exc.args[0]}") from None
        head = f"witness table {os.path.basename(args.table)} ({len(table)} moments)"
        data = _witness_data(args, reports, None, ())
    else:
        spec = _spec(args)
        state = _build(args, spec)
        table = witnesses.witness_table(state)
        reports = witnesses.evaluate_table(table, tol)
        checks = closed_form.cross_check(spec, state, warn=False)
        bad = [c.quantity for c in checks if not c.ok]
        head = f"witness {spec.kind} {spec_str(spec)} (cutoff {state.cutoff})"
        if bad:
            head += "\n  closed forms disagreeing with numerics: " + ", ".join(bad)
        data = _witness_data(args, reports, spec, checks)
    _emit(args, data, _report_summary(reports, head))
    return 0


def _witness_data(args, reports, spec, checks):
    if args.format == "csv":
        cols = ["criterion", "lhs", "rhs", "margin", "verdict", "inputs_hash"]
        rows = [",".join(cols)]
        for r in reports:
            rows.append(",".join([r.criterion, repr(r.lhs), repr(r.rhs), repr(r.margin), r.verdict, r.inputs_hash]))
        return "\n".join(rows) + "\n"
    return serialize.dump_report(reports, spec, checks)


def cmd_sweep(args):
    size = args.max
    rows = args.rows if args.rows is not None else size
    cols = args.cols if args.cols is not None else size
    if rows is None or cols is None:
        raise ParameterError("--max (or --rows and --cols) is required")
    if args.kind == "tmsn-region":
        grid = survey.tmsn_region(_param(args, "xi"), int(rows), int(cols), args.confirm, args.seed)
    else:
        grid = survey.bsn_hz_region(_param(args, "r"), int(rows), int(cols), args.confirm, args.seed)
    arr = grid.as_array()
    lines = [
        f"sweep {grid.kind} parameter={complex(grid.parameter):g} "
        f"{grid.axes[0]} rows 0..{grid.shape[0] - 1}, {grid.axes[1]} cols 0..{grid.shape[1] - 1}",
        f"detectable cells: {int(arr.sum())} of {arr.size}",
    ]
    lines += ["  " + "".join("#" if v else "." for v in row) for row in arr]
    bad = [k for k, (c, n) in grid.confirmations.items() if c != n]
    if grid.confirmations:
        lines.append(f"numeric confirmation: {len(grid.confirmations) - len(bad)}/{len(grid.confirmations)} agree")
    _emit(args, serialize.dump_grid(grid), "\n".join(lines))
    return 0


def cmd_blind(args):
    limit = int(args.limit)
    pairs = survey.enumerate_blind_pairs(limit)
    comps = survey.compare_with_listing(pairs)
    lines = [f"{len(pairs)} blind pairs with 0 <= m < n <= {limit}"]
    lines += [f"  ({p.m}, {p.n})" for p in pairs]
    for c in comps:
        if c.computed is not None and not c.matches:
            lines.append(
                f"  note: listed pair #{c.index + 1} {c.listed} fails m(m-1)+n(n-1)-4nm=0; computed {c.computed}"
            )
    _emit(args, serialize.dump_blind_pairs(pairs, comps), "\n".join(lines))
    return 0


def _add_common(p):
    p.add_argument("--out", help="data output path (default: stdout)")
    p.add_argument("--config", help="JSON file of option defaults")


def _add_state_params(p):
    p.add_argument("--M", type=int)
    p.add_argument("--N", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--m", type=int)
    for name in ("xi", "r"):
        p.add_argument(f"--{name}", help="complex, e.g. 0.7 or 0.5+0.2i")
        p.add_argument(f"--{name}-abs", dest=f"{name}_abs", type=float)
        p.add_argument(f"--{name}-arg", dest=f"{name}_arg", type=float)
    p.add_argument("--cutoff", type=int, help="lattice cutoff (default: automatic)")


def build_parser():
    parser = argparse.ArgumentParser(prog="ngent", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("state", help="build a state and write its amplitudes")
    p.add_argument("family", choices=["tmsn", "bsn"])
    _add_state_params(p)
    _add_common(p)
    p.set_defaults(func=cmd_state)

    p = sub.add_parser("witness", help="evaluate the separability criteria")
    p.add_argument("family", nargs="?", choices=["tmsn", "bsn"])
    p.add_argument("--table", help="moment-table file instead of a state")
    p.add_argument("--tol", type=float, help=f"witness tolerance (env {TOL_ENV})")
    p.add_argument("--format", choices=["json", "csv"], default=None)
    _add_state_params(p)
    _add_common(p)
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("sweep", help="detectability region on a photon-number grid")
    p.add_argument("kind", choices=["tmsn-region", "hz-region"])
    p.add_argument("--max", type=int)
    p.add_argument("--rows", type=int)
    p.add_argument("--cols", type=int)
    p.add_argument("--confirm", type=int, default=None, help="numerically confirm this many random cells")
    p.add_argument("--seed", type=int, default=None)
    for name in ("xi", "r"):
        p.add_argument(f"--{name}")
        p.add_argument(f"--{name}-abs", dest=f"{name}_abs", type=float)
        p.add_argument(f"--{name}-arg", dest=f"{name}_arg", type=float)
    _add_common(p)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("blind", help="enumerate blind pairs of the fourth-order criterion")
    p.add_argument("--limit", type=int)
    _add_common(p)
    p.set_defaults(func=cmd_blind)
    return parser


FALLBACKS = {"format": "json", "confirm": 0, "seed": 0, "limit": 10**6}


def _apply_config(args):
    config = {}
    if args.config:
        try:
            config = serialize.load_config(_read(args.config))
        except SerializationError as exc:
            raise InputFileError(f"{args.config}: {exc}") from None
    for key, value in config.items():
        key = key.replace("-", "_")
        if not hasattr(args, key):
            raise ParameterError(f"config key {key!r} is not an option of '{args.command}'")
        if getattr(args, key) is None:
            setattr(args, key, value)
    for key, value in FALLBACKS.items():
        if getattr(args, key, "absent") is None:
            setattr(args, key, value)


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        _apply_config(args)
        return args.func(args)
    except ParameterError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARAM
    except InputFileError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
