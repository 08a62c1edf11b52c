"""Command-line surface: compute, verify, and emit exact results.

Exit codes: 0 success, 1 verification failure, 2 usage or data error.
Output is deterministic, byte-identical across runs for identical flags;
JSON is the machine format, text is a stable but non-contractual rendering.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import liedata, orbifold as ob, remainder as rm, verify as vf
from . import vertexcore as vc
from .errors import DescentStuck, ParityError, ResourceError
from .scalars import K, LevelScalar, PoleAtLevel, rational_to_str
from .vertexcore import State


def _max_weight_cap() -> int:
    return int(os.environ.get("VOA_MAX_WEIGHT", "12"))


def load_algebra(name: str):
    """Resolve a built-in name or a config-file path to (spec, action or None)."""
    try:
        return liedata.builtin_algebra(name), None
    except KeyError:
        pass
    if os.path.exists(name):
        with open(name, "r", encoding="utf-8") as fh:
            text = fh.read()
        base = os.path.splitext(os.path.basename(name))[0]
        spec, action = liedata.parse_config(text, name=base)
        report = liedata.validate(spec)
        if not report.ok:
            raise ValueError(f"algebra config {name} is invalid:\n{report}")
        if action is not None:
            arep = liedata.validate_action(spec, action)
            if not arep.ok:
                raise ValueError(f"action in {name} is invalid:\n{arep}")
        return spec, action
    raise KeyError(f"unknown algebra {name!r}: not a built-in and not a file")


def resolve_action(spec, name, config_action):
    if name == "orthogonal":
        return liedata.orthogonal_action(spec.dim)
    if name == "adjoint":
        return liedata.adjoint_action(spec)
    if name == "config":
        if config_action is None:
            raise ValueError("--action config requires an [action] block in the algebra file")
        return config_action
    raise KeyError(f"unknown action {name!r}: use orthogonal, adjoint, or config")


def _emit(args, payload: dict, text_lines):
    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        for line in text_lines:
            print(line)


def _parse_indices(s: str):
    return tuple(int(t) for t in s.split(",") if t != "")


# -- commands ----------------------------------------------------------------------


def cmd_ope(args) -> int:
    spec, _ = load_algebra(args.algebra)
    a, b = spec.index(args.a), spec.index(args.b)
    pairs = vc.ope(spec, State.generator(a), State.generator(b))
    payload = {
        "algebra": spec.name,
        "a": args.a,
        "b": args.b,
        "terms": [{"n": n, "state": vc.state_to_json(spec, s)} for n, s in pairs],
    }
    _emit(args, payload, [vc.ope_text(spec, args.a, args.b, pairs)])
    return 0


def cmd_circle(args) -> int:
    spec, _ = load_algebra(args.algebra)
    a, b = spec.index(args.a), spec.index(args.b)
    result = vc.circle_product(spec, State.generator(a), args.n, State.generator(b))
    payload = {
        "algebra": spec.name,
        "a": args.a,
        "n": args.n,
        "b": args.b,
        "state": vc.state_to_json(spec, result),
    }
    _emit(args, payload, [vc.state_text(spec, result)])
    return 0


def cmd_sugawara_check(args) -> int:
    spec, _ = load_algebra(args.algebra)
    if args.hdual is None:
        if spec.name not in liedata.DUAL_COXETER:
            raise ValueError(
                f"no built-in dual Coxeter number for {spec.name}; pass --hdual"
            )
        h_dual = liedata.DUAL_COXETER[spec.name]
    else:
        h_dual = Fraction(args.hdual)
    L = vc.sugawara(spec, h_dual)
    central = (K.scale(spec.dim)) / ((K + LevelScalar.from_fraction(h_dual)).scale(2))
    checks = []
    checks.append(
        ("L o_3 L = (c/2) |0>",
         vc.circle_product(spec, L, 3, L) == State.vacuum(central))
    )
    checks.append(("L o_2 L = 0", vc.circle_product(spec, L, 2, L).is_zero()))
    checks.append(("L o_1 L = 2 L", vc.circle_product(spec, L, 1, L) == L.scale(2)))
    checks.append(
        ("L o_0 L = d L", vc.circle_product(spec, L, 0, L) == vc.derivative(spec, L))
    )
    for g, label in enumerate(spec.labels):
        X = State.generator(g)
        checks.append(
            (f"X^{label} primary of weight one",
             vc.circle_product(spec, L, 1, X) == X
             and all(vc.circle_product(spec, L, nn, X).is_zero() for nn in (2, 3)))
        )
    cc = central.scale(2)
    payload = {
        "algebra": spec.name,
        "h_dual": rational_to_str(h_dual),
        "central_charge": cc.to_json(),
        "checks": [{"label": lab, "ok": ok} for lab, ok in checks],
    }
    lines = [f"central charge: {cc}"]
    lines += [f"{'PASS' if ok else 'FAIL'} {lab}" for lab, ok in checks]
    _emit(args, payload, lines)
    return 0 if all(ok for _, ok in checks) else 1


def cmd_invariants(args) -> int:
    spec, config_action = load_algebra(args.algebra)
    action = resolve_action(spec, args.action, config_action)
    if args.weight > _max_weight_cap():
        raise ResourceError(
            f"weight {args.weight} exceeds VOA_MAX_WEIGHT={_max_weight_cap()}"
        )
    basis = ob.invariant_subspace(spec, action, args.weight)
    payload = {
        "algebra": spec.name,
        "action": action.label,
        "weight": args.weight,
        "dimension": len(basis),
        "basis": [vc.state_to_json(spec, s) for s in basis],
    }
    lines = [f"dimension {len(basis)}"]
    lines += [vc.state_text(spec, s) for s in basis]
    _emit(args, payload, lines)
    return 0


def cmd_table1(args) -> int:
    values = rm.table1(args.n_max, allow_large=args.allow_large)
    payload = [{"n": n, "value": rational_to_str(v)} for n, v in values]
    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        for n, v in values:
            print(f"R_{n} = {rational_to_str(v)}")
    return 0


def cmd_remainder(args) -> int:
    I, J = _parse_indices(args.I), _parse_indices(args.J)
    value = rm.rn(args.n, I, J)
    payload = {"n": args.n, "I": list(I), "J": list(J), "value": rational_to_str(value)}
    _emit(args, payload, [rational_to_str(value)])
    return 0


def cmd_remainder_direct(args) -> int:
    I, J = _parse_indices(args.I), _parse_indices(args.J)
    value = ob.remainder_direct(args.n, I, J)
    payload = {"n": args.n, "I": list(I), "J": list(J), "value": rational_to_str(value)}
    _emit(args, payload, [rational_to_str(value)])
    return 0


def _parse_j_name(name: str) -> int:
    name = name.strip().lower()
    if not name.startswith("j") or not name[1:].isdigit():
        raise ValueError(f"generator name {name!r} not of the form j<even weight index>")
    return int(name[1:])


def cmd_decouple(args) -> int:
    spec, config_action = load_algebra(args.algebra)
    if not spec.is_abelian():
        raise ValueError("decouple search is wired for the abelian (heisenberg) case")
    action = resolve_action(spec, args.action, config_action)
    n = spec.dim
    dictionary = ob.j_dictionary(n, [_parse_j_name(t) for t in args.dict.split(",")])
    target_m = _parse_j_name(args.target)
    target = ob.j_gen(n, target_m)
    if target_m + 2 > _max_weight_cap():
        raise ResourceError(
            f"target weight {target_m + 2} exceeds VOA_MAX_WEIGHT={_max_weight_cap()}"
        )
    result = ob.decouple(spec, action, dictionary, target, max_degree=args.max_degree)
    if result is None:
        _emit(args, {"found": False}, ["no relation found within bounds"])
        return 0
    payload = {"found": True}
    payload.update(result.to_json())
    lines = [
        f"{args.target} = {result.relation!r}",
        "excluded levels: "
        + (", ".join(rational_to_str(q) for q in result.excluded_levels) or "none"),
    ]
    _emit(args, payload, lines)
    return 0


def cmd_sl2_generators(args) -> int:
    import math

    from . import classical as cl

    spec = liedata.sl2_spec()
    action = liedata.adjoint_action(spec)
    rows = []
    for i in range(0, args.max_weight - 1):
        for j in range(i, args.max_weight - 1):
            if i + j + 2 > args.max_weight:
                continue
            q = ob.sl2_tilde_q(i, j)
            inv = all(vc.lie_act(spec, r, q).is_zero() for r in action.lie_generators)
            sym = vc.leading_symbol(q) == cl.sl2_q(i, j).scale(
                math.factorial(i) * math.factorial(j)
            )
            rows.append((f"Qt[{i},{j}]", i + j + 2, inv, sym))
    for k in range(0, args.max_weight):
        for l in range(k + 1, args.max_weight):
            for m in range(l + 1, args.max_weight):
                if k + l + m + 3 > args.max_weight:
                    continue
                c = ob.sl2_tilde_c(k, l, m)
                inv = all(
                    vc.lie_act(spec, r, c).is_zero() for r in action.lie_generators
                )
                sym = vc.leading_symbol(c) == cl.sl2_c(k, l, m).scale(
                    math.factorial(k) * math.factorial(l) * math.factorial(m)
                )
                rows.append((f"Ct[{k},{l},{m}]", k + l + m + 3, inv, sym))
    payload = [
        {"generator": name, "weight": w, "invariant": inv, "leading_symbol_ok": sym}
        for name, w, inv, sym in rows
    ]
    lines = [
        f"{name} weight={w} invariant={'yes' if inv else 'NO'}"
        f" leading_symbol={'ok' if sym else 'MISMATCH'}"
        for name, w, inv, sym in rows
    ]
    _emit(args, payload, lines)
    return 0 if all(inv and sym for _, _, inv, sym in rows) else 1


def cmd_verify(args) -> int:
    if args.suite == "algebra":
        if not args.algebra:
            raise ValueError("verify algebra requires --algebra <config or builtin>")
        spec, action = load_algebra(args.algebra)
        report = liedata.validate(spec)
        payload = {
            "algebra": liedata.spec_to_json(spec),
            "valid": report.ok,
            "failures": [list(map(str, f)) for f in report.failures],
        }
        if args.json:
            print(json.dumps(payload, indent=2))
        else:
            print(json.dumps(liedata.spec_to_json(spec), indent=2))
            print("valid" if report.ok else str(report))
        return 0 if report.ok else 1
    if args.suite == "all":
        results = vf.run_all()
    else:
        results = [vf.run_suite(args.suite)]
    payload = []
    failed_total = 0
    lines = []
    for r in results:
        failed_total += r.failed
        lines.append(f"{r.name}: {r.passed} passed, {r.failed} failed")
        for c in r.checks:
            if not c.ok:
                lines.append(f"  FAIL {c.label} {c.detail}")
        payload.append(
            {
                "suite": r.name,
                "passed": r.passed,
                "failed": r.failed,
                "failures": [c.label for c in r.checks if not c.ok],
            }
        )
    _emit(args, payload, lines)
    return 0 if failed_total == 0 else 1


# -- parser -------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="voa",
        description="Exact vertex-algebra computations: OPEs, invariants, remainders.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, **kwargs):
        sp = sub.add_parser(name, **kwargs)
        sp.set_defaults(fn=fn)
        sp.add_argument("--json", action="store_true", help="emit JSON")
        return sp

    sp = add("ope", cmd_ope, help="singular OPE terms of two generators")
    sp.add_argument("--algebra", required=True)
    sp.add_argument("a")
    sp.add_argument("b")

    sp = add("circle", cmd_circle, help="one circle product of two generators")
    sp.add_argument("--algebra", required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("a")
    sp.add_argument("b")

    sp = add("sugawara-check", cmd_sugawara_check, help="Virasoro checks for the Sugawara vector")
    sp.add_argument("--algebra", default="sl2")
    sp.add_argument("--hdual", default=None,
                    help="dual Coxeter number (rational); defaults from the built-in table")

    sp = add("invariants", cmd_invariants, help="basis of a weight component of the invariant subalgebra")
    sp.add_argument("--algebra", required=True)
    sp.add_argument("--action", required=True, help="orthogonal | adjoint | config")
    sp.add_argument("--weight", type=int, required=True)

    sp = add("table1", cmd_table1, help="diagonal remainder values R_n")
    sp.add_argument("--n-max", dest="n_max", type=int, required=True)
    sp.add_argument("--allow-large", action="store_true",
                    help="opt in to n_max beyond the default resource bound")

    sp = add("remainder", cmd_remainder, help="R_n(I,J) by the recursion")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--I", required=True, help="comma-separated indices")
    sp.add_argument("--J", required=True, help="comma-separated indices")

    sp = add("remainder-direct", cmd_remainder_direct,
             help="R_n(I,J) from scratch in the Heisenberg algebra")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--I", required=True)
    sp.add_argument("--J", required=True)

    sp = add("decouple", cmd_decouple, help="search for a decoupling relation")
    sp.add_argument("--algebra", required=True)
    sp.add_argument("--action", default="orthogonal")
    sp.add_argument("--dict", required=True, help="comma list like j0,j2")
    sp.add_argument("--target", required=True, help="generator like j4")
    sp.add_argument("--max-degree", dest="max_degree", type=int, default=6)

    sp = add("sl2-generators", cmd_sl2_generators,
             help="orbifold generators of the adjoint sl2 invariants, with verdicts")
    sp.add_argument("--max-weight", dest="max_weight", type=int, required=True)

    sp = add("verify", cmd_verify, help="run a named verification suite")
    sp.add_argument("suite", help="all | " + " | ".join(vf.ACCEPTANCE_SUITES) + " | algebra")
    sp.add_argument("--algebra", default=None)

    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (ParityError, ResourceError, PoleAtLevel, DescentStuck,
            ValueError, KeyError, OSError, ZeroDivisionError) as exc:
        kind = type(exc).__name__
        msg = exc.args[0] if exc.args else str(exc)
        print(f"error[{kind}]: {msg}", file=sys.stderr)
        return 2


def entry():  # console_scripts hook
    raise SystemExit(main())


if __name__ == "__main__":
    raise SystemExit(main())
