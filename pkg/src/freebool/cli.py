"""Command-line front end.

Every subcommand prints one JSON document (or a plain table with
``--pretty``) on stdout.  Exit status is 0 on success, 1 when a check fails
and 2 for usage or input errors.  Wall time goes to stderr so that repeated
runs print identical bytes.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time

from . import diagonal as dg
from . import multconv as mc
from . import opmodel as om
from . import transforms as tf
from . import verify
from .gaussian import coeff, from_json as coeff_from_json
from .partitions import ORACLE_CAP
from .series import NcSeries, PowerSeries
from .verdict import Verdict
from .words import words_up_to


class InputError(ValueError):
    pass


# --------------------------------------------------------------------------
# input


def load_json(text: str, what: str):
    """Parse inline JSON, or read it from a file when ``text`` names one."""
    source = what
    stripped = text.lstrip()
    if not stripped.startswith(("{", "[", '"')) and os.path.isfile(text):
        source = text
        with open(text, encoding="utf-8") as fh:
            text = fh.read()
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError(f"{source}: parse error at line {e.lineno}, column {e.colno}: {e.msg}") from None


def _coeff_list(items, what):
    if not isinstance(items, list):
        raise InputError(f"{what}: expected a list of coefficients")
    try:
        return [coeff_from_json(x) for x in items]
    except (ValueError, ZeroDivisionError) as e:
        raise InputError(f"{what}: {e}") from None


def parse_measure(obj, what="measure") -> tf.AtomicMeasure:
    if not isinstance(obj, dict) or "atoms" not in obj:
        raise InputError(f'{what}: expected {{"atoms": [[position, weight], ...]}}')
    try:
        return tf.AtomicMeasure.from_json(obj)
    except (ValueError, TypeError, ZeroDivisionError) as e:
        raise InputError(f"{what}: {e}") from None


def parse_pair(obj, what="pair") -> dg.DeterminingPair:
    if not isinstance(obj, dict) or "alpha" not in obj or "beta" not in obj:
        raise InputError(f'{what}: expected {{"alpha": [...], "beta": [...]}}')
    return dg.DeterminingPair(tuple(_coeff_list(obj["alpha"], what)), tuple(_coeff_list(obj["beta"], what)))


def parse_distribution(obj, order, what="input"):
    """A measure, a one-variable series (``ps1`` or a bare coefficient list) or an ``nc2`` series."""
    if isinstance(obj, list):
        cs = _coeff_list(obj, what)
        n = len(cs) if order is None else order
        if n > len(cs):
            raise InputError(f"{what}: {len(cs)} coefficients given, order {n} requested")
        return PowerSeries(cs[:n], n)
    if isinstance(obj, dict) and "atoms" in obj:
        if order is None:
            raise InputError(f"{what}: a measure needs --order")
        return parse_measure(obj, what).moment_series(order)
    if isinstance(obj, dict) and obj.get("kind") in ("ps1", "nc2"):
        try:
            s = PowerSeries.from_json(obj) if obj["kind"] == "ps1" else NcSeries.from_json(obj)
        except (KeyError, ValueError, TypeError) as e:
            raise InputError(f"{what}: {e}") from None
        if order is not None and order != s.order:
            if order > s.order:
                raise InputError(f"{what}: series has order {s.order}, order {order} requested")
            s = s.truncate(order) if isinstance(s, PowerSeries) else s.with_order(order)
        return s
    raise InputError(f"{what}: expected a measure, a coefficient list, or a ps1/nc2 series")


def _power_series(x, what):
    if not isinstance(x, PowerSeries):
        raise InputError(f"{what}: this operation needs a one-variable series or a measure")
    return x


def _nc_series(x, what):
    if not isinstance(x, NcSeries):
        raise InputError(f"{what}: this operation needs an nc2 series")
    return x


# --------------------------------------------------------------------------
# output


def _s(c):
    return str(c)


def series_json(s):
    out = s.to_json()
    if isinstance(s, PowerSeries):
        out["list"] = [_s(c) for c in s.coefficients()]
    return out


def _table(obj, indent=""):
    lines = []
    if isinstance(obj, dict) and obj.get("kind") == "ps1":
        lines.append(f"{indent}n  coefficient")
        for k, c in enumerate(obj["list"], start=1):
            lines.append(f"{indent}{k:<2} {c}")
        return lines
    if isinstance(obj, dict) and obj.get("kind") == "nc2":
        lines.append(f"{indent}word  coefficient")
        for w, c in obj["coeffs"].items():
            val = c["re"] if c["im"] == "0" else f"{c['re']} + {c['im']}i"
            lines.append(f"{indent}{w:<5} {val}")
        return lines
    if isinstance(obj, dict):
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{indent}{k}:")
                lines.extend(_table(v, indent + "  "))
            else:
                lines.append(f"{indent}{k}: {v}")
        return lines
    if isinstance(obj, list):
        if all(not isinstance(v, (dict, list)) for v in obj):
            return [indent + ", ".join(str(v) for v in obj)]
        for v in obj:
            lines.extend(_table(v, indent + "- "))
        return lines
    return [f"{indent}{obj}"]


def emit(obj, pretty: bool):
    if pretty:
        print("\n".join(_table(obj)))
    else:
        print(json.dumps(obj, sort_keys=False))


def verdict_json(v: Verdict):
    return v.to_json()


# --------------------------------------------------------------------------
# subcommands


TRANSFORM_OPS = (
    "eta", "moments-from-eta", "r", "moments-from-r", "s", "moments-from-s",
    "bbp", "bbp1", "decomplexify", "complexify", "measure-moments", "measure-eta",
)


def cmd_transform(args):
    obj = load_json(args.input, "--in")
    op = args.op
    if op in ("measure-moments", "measure-eta"):
        if args.order is None:
            raise InputError("--order is required")
        sigma = parse_measure(obj, "--in")
        result = sigma.moment_series(args.order) if op == "measure-moments" else tf.eta_of_measure(sigma, args.order)
        return {"op": op, "order": args.order, "result": series_json(result)}, 0
    if op == "moments-from-s" and isinstance(obj, list):
        # a bare list for an S-transform starts at the constant term
        s = PowerSeries.from_full(_coeff_list(obj, "--in"), len(obj) - 1)
        result = tf.moments_from_s(s if args.order is None else s.truncate(args.order))
        return {"op": op, "order": result.order, "result": series_json(result)}, 0
    x = parse_distribution(obj, args.order, "--in")
    one = isinstance(x, PowerSeries)
    if op == "eta":
        result = tf.eta_from_moments1(x) if one else tf.eta_from_moments(x)
    elif op == "moments-from-eta":
        result = tf.moments_from_eta1(x) if one else tf.moments_from_eta(x)
    elif op == "r":
        result = tf.r_from_moments1(x) if one else tf.r_from_moments(x)
    elif op == "moments-from-r":
        result = tf.moments_from_r1(x) if one else tf.moments_from_r(x)
    elif op == "s":
        result = tf.s_transform(_power_series(x, "--in"))
    elif op == "moments-from-s":
        result = tf.moments_from_s(_power_series(x, "--in"))
    elif op == "bbp":
        result = tf.bbp(x)
    elif op == "bbp1":
        result = tf.bbp1(_power_series(x, "--in"))
    elif op == "decomplexify":
        result = tf.decomplexify(_nc_series(x, "--in"))
    else:
        result = tf.complexify(_nc_series(x, "--in"))
    return {"op": op, "order": result.order, "result": series_json(result)}, 0


def cmd_convolve(args):
    a = parse_distribution(load_json(args.a, "--a"), args.order, "--a")
    if args.power is not None:
        if args.b is not None:
            raise InputError("give either --b or --power, not both")
        if args.kind == "mult":
            raise InputError("--power is only defined for free and boolean convolution")
        t = coeff(args.power)
        result = tf.convolution_power(a, t, args.kind)
        return {"kind": args.kind, "power": _s(t), "result": series_json(result)}, 0
    if args.b is None:
        raise InputError("--b or --power is required")
    b = parse_distribution(load_json(args.b, "--b"), args.order, "--b")
    if args.kind == "free":
        result = tf.free_convolve(a, b)
    elif args.kind == "boolean":
        result = tf.boolean_convolve(a, b)
    else:
        result = tf.free_mult_convolve(_power_series(a, "--a"), _power_series(b, "--b"), args.method)
    return {"kind": args.kind, "result": series_json(result)}, 0


def _sigma_arg(text, what, order):
    obj = load_json(text, what)
    if isinstance(obj, dict) and "atoms" in obj:
        return parse_measure(obj, what)
    return _power_series(parse_distribution(obj, order, what), what)


def _products_json(p: dg.ProductTransforms):
    return {"zz": [_s(c) for c in p.zz.coefficients()], "zsz": [_s(c) for c in p.zsz.coefficients()], "method": p.method}


def _need_order(args):
    if args.order is None:
        raise InputError("--order is required")
    return args.order


def cmd_diagonal(args):
    what = args.what
    if what in ("phi", "psi"):
        n = _need_order(args)
        s1 = _sigma_arg(args.sigma1, "--sigma1", n)
        s2 = _sigma_arg(args.sigma2, "--sigma2", n)
        nu = (dg.phi if what == "phi" else dg.psi)(s1, s2, n)
        return {
            "map": what,
            "order": n,
            "pair": nu.pair.to_json(),
            "moments": _products_json(dg.product_moments(nu)),
        }, 0
    if what in ("eta", "r"):
        n = _need_order(args)
        pair = parse_pair(load_json(args.pair, "--pair"), "--pair")
        nu = (dg.make_eta_diagonal if what == "eta" else dg.make_r_diagonal)(pair, n)
        return {"kind": what, "order": n, "moments": series_json(nu.moments)}, 0
    if what == "check":
        m = _nc_series(parse_distribution(load_json(args.moments, "--moments"), args.order, "--moments"), "--moments")
        v = dg.check_eta_diagonal_moments(m)
        return {"eta_diagonal": verdict_json(v)}, 0 if v.ok else 1
    if what == "product-r":
        pair = parse_pair(load_json(args.pair, "--pair"), "--pair")
        n = args.order or len(pair)
        p = dg.product_r(pair, n, method=args.method, cap=args.oracle_cap)
        return {"order": n, "r": _products_json(p)}, 0
    if what == "kms":
        pair = parse_pair(load_json(args.pair, "--pair"), "--pair")
        t = coeff(args.t)
        n = args.order or 2 * len(pair)
        nu = dg.make_r_diagonal(pair, n)
        holds = dg.kms_check(nu, t)
        bad = dg.kms_defects(nu, t, n)
        out = {
            "t": _s(t),
            "order": n,
            "kms": holds,
            "defects": [{"v": v, "w": w, "defect": _s(d)} for v, w, d in bad[:20]],
            "defect_count": len(bad),
        }
        return out, 0 if holds and not bad else 1
    if what == "kms-tau":
        n = _need_order(args)
        sigma = _sigma_arg(args.sigma, "--sigma", n)
        t = coeff(args.t)
        return {"t": _s(t), "order": n, "tau": _products_json(dg.kms_tau(sigma, t, n))}, 0
    # infdiv
    pair = parse_pair(load_json(args.pair, "--pair"), "--pair")
    v = dg.is_infdiv_r_diagonal(pair, args.order)
    return {"infinitely_divisible": verdict_json(v)}, 0 if v.ok else 1


def cmd_multconv(args):
    d = parse_pair(load_json(args.pair1, "--pair1"), "--pair1")
    dp = parse_pair(load_json(args.pair2, "--pair2"), "--pair2")
    n = args.order or min(len(d), len(dp))
    cap = args.oracle_cap
    if args.method == "auto":
        pair, method = mc.boxtimes_determining(d, dp, n, cap)
    elif args.method == "oracle":
        pair, method = mc.boxtimes_determining_oracle(d, dp, n, cap), "partition-sum"
    elif args.method == "composition":
        pair, method = mc.boxtimes_determining_fast(d, dp, n, cap=cap), "composition"
    else:
        pair, method = mc.boxtimes_determining_subordination(d, dp, n, cap=cap), "subordination"
    out = {"order": n, "pair": pair.to_json(), "method": method}
    t = mc.kms_parameter(pair)
    if t is not None:
        out["kms_parameter"] = _s(t)
    return out, 0


def cmd_opmodel(args):
    n = args.order or 6
    if n > om.MAX_WORD:
        raise InputError(f"--order is at most {om.MAX_WORD}")
    s1 = parse_measure(load_json(args.sigma1, "--sigma1"), "--sigma1")
    s2 = parse_measure(load_json(args.sigma2, "--sigma2"), "--sigma2")
    model = om.build_model(s1, s2)
    exact = dg.phi(s1, s2, n)
    numeric = om.model_star_moments(model, n)
    rows = []
    worst = 0.0
    for w in words_up_to(n):
        e = exact.moment(w)
        err = abs(numeric[w] - float(e))
        worst = max(worst, err)
        rows.append({"word": w, "model": f"{numeric[w]:.12g}", "exact": _s(e), "error": f"{err:.3e}"})
    out = {
        "dim_H": model.dim_h,
        "dim_HxH": model.A.shape[0],
        "order": n,
        "tol": args.tol,
        "max_error": f"{worst:.3e}",
        "ok": worst <= args.tol,
        "moments": rows,
    }
    return out, 0 if worst <= args.tol else 1


def cmd_verify(args):
    if args.list:
        return {"suites": verify.suite_ids()}, 0
    if not args.id:
        raise InputError("suite id required (see --list)")
    try:
        report = verify.run_suite(args.id, args.order, args.cases, args.seed, args.oracle_cap, args.tol)
    except KeyError:
        raise InputError(f"unknown suite {args.id!r}; known: {', '.join(verify.suite_ids())}") from None
    return report.to_json(), 0 if report.ok else 1


# --------------------------------------------------------------------------
# parser


def _common(p, order=True):
    if order:
        p.add_argument("--order", "-N", type=int, default=None, help="truncation order")
    p.add_argument("--pretty", action="store_true", help="print a table instead of JSON")
    p.add_argument("--oracle-cap", type=int, default=ORACLE_CAP, help="largest n for partition enumeration")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="freebool", description="Exact free and Boolean transforms of *-distributions.")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = sub.add_parser("transform", help="moment / eta / R / S conversions")
    p.add_argument("--op", required=True, choices=TRANSFORM_OPS)
    p.add_argument("--in", dest="input", required=True, help="inline JSON or a file name")
    _common(p)
    p.set_defaults(func=cmd_transform)

    p = sub.add_parser("convolve", help="free, boolean and free multiplicative convolution")
    p.add_argument("--kind", required=True, choices=("free", "boolean", "mult"))
    p.add_argument("--a", required=True)
    p.add_argument("--b")
    p.add_argument("--power", help="convolution power t > 0 instead of --b")
    p.add_argument("--method", choices=("auto", "s", "oracle"), default="auto", help="route for --kind mult")
    _common(p)
    p.set_defaults(func=cmd_convolve)

    p = sub.add_parser("diagonal", help="eta-diagonal and R-diagonal laws")
    p.add_argument("what", choices=("phi", "psi", "eta", "r", "check", "product-r", "kms", "kms-tau", "infdiv"))
    p.add_argument("--sigma1")
    p.add_argument("--sigma2")
    p.add_argument("--sigma")
    p.add_argument("--pair")
    p.add_argument("--moments")
    p.add_argument("--t", default="1")
    p.add_argument("--method", choices=("both", "composition", "partition-sum"), default="both")
    _common(p)
    p.set_defaults(func=cmd_diagonal)

    p = sub.add_parser("multconv", help="determining pair of a product of free R-diagonal elements")
    p.add_argument("--pair1", required=True)
    p.add_argument("--pair2", required=True)
    p.add_argument("--method", choices=("auto", "oracle", "composition", "subordination"), default="auto")
    _common(p)
    p.set_defaults(func=cmd_multconv)

    p = sub.add_parser("opmodel", help="numeric operator model moments against exact ones")
    p.add_argument("--sigma1", required=True)
    p.add_argument("--sigma2", required=True)
    p.add_argument("--tol", type=float, default=om.MOMENT_TOL)
    _common(p)
    p.set_defaults(func=cmd_opmodel)

    p = sub.add_parser("verify", help="run a seeded randomized check suite")
    p.add_argument("id", nargs="?")
    p.add_argument("--list", action="store_true")
    p.add_argument("--cases", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=float, default=om.MOMENT_TOL)
    _common(p)
    p.set_defaults(func=cmd_verify)
    return parser


def _required(args):
    needs = {
        "phi": ("sigma1", "sigma2"), "psi": ("sigma1", "sigma2"), "eta": ("pair",), "r": ("pair",),
        "check": ("moments",), "product-r": ("pair",), "kms": ("pair",), "kms-tau": ("sigma",), "infdiv": ("pair",),
    }
    if args.command == "diagonal":
        missing = [f"--{k}" for k in needs[args.what] if getattr(args, k) is None]
        if missing:
            raise InputError(f"diagonal {args.what} needs {', '.join(missing)}")


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    start = time.perf_counter()
    try:
        _required(args)
        out, status = args.func(args)
    except ZeroDivisionError as e:
        print(f"freebool: error: {e}", file=sys.stderr)
        return 2
    except ArithmeticError as e:
        # two independent routes disagreed
        print(f"freebool: {e}", file=sys.stderr)
        return 1
    except (ValueError, TypeError) as e:
        print(f"freebool: error: {e}", file=sys.stderr)
        return 2
    emit(out, args.pretty)
    print(f"wall time: {time.perf_counter() - start:.3f}s", file=sys.stderr)
    return status


if __name__ == "__main__":
    sys.exit(main())
