"""Command-line entry point.

Exit codes: 0 pass/info, 1 check failed, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

import jsonschema

from . import linalg, lhv, ks, logic, quantum
from .errors import BellCheckError, ModelError
from .report import Report

SQRT2 = math.sqrt(2.0)
TSIRELSON = 2.0 * SQRT2
CHSH_TOL = 1e-10
LHV_CHSH_TOL = 1e-12


class UsageError(Exception):
    pass


def _tolerances(report: Report, **tols: float) -> Report:
    for name, value in tols.items():
        report.values[f"tol_{name}"] = value
    return report


def cmd_chsh_quantum() -> Report:
    state, settings = quantum.entangled_state(), quantum.xy_settings()
    e = {f"{a}{b}": quantum.expectation(state, quantum.two_qubit(a, b)) for a in "xy" for b in "xy"}
    partial_1 = e["xx"] + e["yy"]
    partial_2 = -e["xy"] + e["yx"]
    s = quantum.chsh_value(state, settings)
    ok = all(abs(v - target) <= CHSH_TOL for v, target in ((s, TSIRELSON), (partial_1, SQRT2), (partial_2, SQRT2)))
    values = {"s_quantum": s, "partial_xx_yy": partial_1, "partial_xy_yx": partial_2}
    values.update({f"e_{k}": v for k, v in e.items()})
    return Report(
        "chsh-quantum",
        "pass" if ok else "fail",
        values,
        ["state (|+1>|+2> + e^{i pi/4}|-1>|-2>)/sqrt2 with |+1>=|0>, |+2>=|1>", "target 2*sqrt(2)"],
    )


def cmd_chsh_lhv() -> Report:
    bound = lhv.lhv_bound()
    u_values = {lhv.chsh_u(s) for s in lhv.two_point_tables()}
    v_ok = bound.values <= {-2, 2}
    u_ok = u_values <= {-2, 2}
    gap = quantum.chsh_value(quantum.entangled_state(), quantum.xy_settings()) - bound.maximum
    ok = bound.maximum == 2 and v_ok and u_ok
    return Report(
        "chsh-lhv",
        "pass" if ok else "fail",
        {
            "max_lhv": bound.maximum,
            "attaining_strategies": bound.attaining,
            "deterministic_strategies": bound.strategies,
            "v_values_pm2": int(v_ok),
            "two_point_tables": 1 << 8,
            "u_values_pm2": int(u_ok),
            "gap": gap,
        },
        [f"V values seen: {sorted(bound.values)}", f"U values seen: {sorted(u_values)}"],
    )


def cmd_ks_square() -> Report:
    square = ks.mermin_peres_square()
    check = ks.verify_instance(square)
    result = ks.find_coloring(square)
    colorable = not isinstance(result, ks.NoColoring)
    relation = ks.value_entanglement_demo(+1).quantum_relation_holds
    details = []
    for k, c in enumerate(check.contexts):
        names = ", ".join(square.observables[i].label for i in c.members)
        details.append(f"context {k} [{names}] sign {c.sign:+d}: {'ok' if c.ok else 'FAILED'}")
    details.append(f"zz == -(yy)(xx): {'ok' if relation else 'FAILED'}")
    values = {
        "observables": len(square.observables),
        "contexts": len(square.contexts),
        "constraints_verified": sum(c.ok for c in check.contexts),
        "sign_product": square.sign_parity(),
        "colorable": int(colorable),
        "assignments_searched": 1 << len(square.observables),
    }
    if not colorable:
        values["min_violations"] = result.min_violations
        details.append(f"witness {list(result.witness.values)} violates contexts {result.witness.violations(square)}")
    ok = check.ok and relation and not colorable and values.get("min_violations") == 1
    return Report("ks-square", "pass" if ok else "fail", values, details)


def parse_pauli_spec(spec: str) -> quantum.Observable:
    """``"x"`` -> single-qubit sigma_x; ``"x.y"`` -> sigma_x (x) sigma_y."""
    parts = spec.strip().lower().split(".")
    if len(parts) not in (1, 2) or any(p not in quantum.AXES for p in parts):
        raise UsageError(f"bad Pauli spec {spec!r}: use <axis> or <axis>.<axis> with axes in x, y, z, i")
    if len(parts) == 1:
        return quantum.pauli(parts[0])
    return quantum.two_qubit(*parts)


def _reference_state(dim: int) -> quantum.QuantumState:
    rho = quantum.entangled_state().rho
    if dim == 4:
        return quantum.entangled_state()
    # single qubit: marginal of qubit 1
    reduced = rho.reshape(2, 2, 2, 2).trace(axis1=1, axis2=3)
    return quantum.QuantumState("tr_2 psi(t)", reduced)


def cmd_commutator(a_spec: str, b_spec: str) -> Report:
    a, b = parse_pauli_spec(a_spec), parse_pauli_spec(b_spec)
    if a.dim != b.dim:
        raise UsageError(f"{a_spec!r} and {b_spec!r} act on different numbers of qubits")
    f = quantum.commutator_observable(a, b)
    state = _reference_state(a.dim)
    commuting = linalg.allclose(f.matrix, 0.0 * f.matrix)
    return Report(
        "commutator",
        "info",
        {
            "f_norm_expectation": quantum.expectation(state, f),
            "f_max_eigenvalue": linalg.hermitian_eigenvalues(f.matrix)[-1],
            "commuting": int(commuting),
        },
        [f"A = {a.label}", f"B = {b.label}", f"state = {state.label}"],
    )


def cmd_logic_cases(bt: int, c: int) -> Report:
    r = logic.case_analysis(bt, c)
    values = {
        "bt": bt,
        "c": c,
        "consistent": int(r.consistent),
        "covered": int(r.covered),
        "k_unconstrained": int(r.k == "unconstrained"),
    }
    if r.nb is not None:
        values["nb"] = r.nb
    if r.k in (0, 1):
        values["k"] = r.k
    if r.nb_or_k is not None:
        values["nb_or_k"] = r.nb_or_k
    if r.proposition is not None:
        values["proposition"] = r.proposition
    details = [f"verdict: {r.verdict}", *r.constraints]
    if not r.covered:
        details.append("case not covered")
    status = "pass" if r.consistent and r.covered else "info"
    return Report("logic-cases", status, values, details)


def cmd_lhv_eval(model_file: str) -> Report:
    try:
        with open(model_file, encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {model_file}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"{model_file}: invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    try:
        model = lhv.model_from_dict(doc)
    except jsonschema.ValidationError as exc:
        where = "/".join(str(p) for p in exc.absolute_path) or "<root>"
        raise UsageError(f"{model_file}: schema violation at field {where}: {exc.message}") from None
    values = {}
    for sign, a, b in lhv.CHSH_TERMS:
        values[f"e_{a}{b}"] = lhv.lhv_expectation(model, (a, b))
    chsh = lhv.lhv_chsh(model)
    values["chsh"] = chsh
    values["points"] = len(model.space.points)
    status = "fail" if abs(chsh) > 2 + LHV_CHSH_TOL else "pass"
    return Report("lhv-eval", status, values, [f"model {model_file}"])


def cmd_tsirelson() -> Report:
    settings = quantum.xy_settings()
    top = quantum.tsirelson_max(settings)
    achieved = quantum.chsh_value(quantum.entangled_state(), settings)
    ok = abs(top - TSIRELSON) <= CHSH_TOL and abs(top - achieved) <= CHSH_TOL
    return Report(
        "tsirelson",
        "pass" if ok else "fail",
        {"tsirelson_max": top, "s_quantum": achieved, "difference": top - achieved},
        ["Bell operator xx - xy + yx + yy, largest eigenvalue by Jacobi sweeps"],
    )


TOLERANCES = {
    "chsh-quantum": {"chsh": CHSH_TOL, "imag": 1e-12},
    "chsh-lhv": {"chsh": CHSH_TOL},
    "ks-square": {"mat": linalg.EPS_MAT},
    "commutator": {"mat": linalg.EPS_MAT, "spectral": linalg.EPS_SPECTRAL},
    "logic-cases": {},
    "lhv-eval": {"chsh": LHV_CHSH_TOL, "weights": lhv.WEIGHT_TOL},
    "tsirelson": {"chsh": CHSH_TOL, "jacobi": linalg.JACOBI_TOL},
}


def _bit(text: str) -> int:
    if text not in ("0", "1"):
        raise argparse.ArgumentTypeError("must be 0 or 1")
    return int(text)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default=argparse.SUPPRESS)
    common.add_argument("--tolerance-report", action="store_true", default=argparse.SUPPRESS)

    parser = argparse.ArgumentParser(prog="bellcheck", description="Bell/CHSH, Kochen-Specker and logic checks.")
    parser.add_argument("--format", choices=("text", "json"), default="text")
    parser.add_argument("--tolerance-report", action="store_true", default=False,
                        help="include the tolerances used by the check in the report")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    sub.add_parser("chsh-quantum", parents=[common], help="quantum CHSH value of the entangled test state")
    sub.add_parser("chsh-lhv", parents=[common], help="local hidden-variable bound by enumeration")
    sub.add_parser("ks-square", parents=[common], help="Mermin-Peres square constraints and coloring search")
    p = sub.add_parser("commutator", parents=[common], help="commutator observable F(A, B) = |[A, B]|^2")
    p.add_argument("a", metavar="A", help="Pauli spec, e.g. x or x.y")
    p.add_argument("b", metavar="B", help="Pauli spec, e.g. y or y.y")
    p = sub.add_parser("logic-cases", parents=[common], help="truth-value case analysis")
    p.add_argument("--bt", type=_bit, required=True, help="truth value of the Bell theorem (0 or 1)")
    p.add_argument("--c", type=_bit, required=True, help="truth value of proposition C (0 or 1)")
    p = sub.add_parser("lhv-eval", parents=[common], help="evaluate a user-supplied hidden-variable model")
    p.add_argument("model_file", metavar="FILE")
    sub.add_parser("tsirelson", parents=[common], help="largest eigenvalue of the Bell operator")
    return parser


def run(args: argparse.Namespace) -> Report:
    match args.command:
        case "chsh-quantum":
            return cmd_chsh_quantum()
        case "chsh-lhv":
            return cmd_chsh_lhv()
        case "ks-square":
            return cmd_ks_square()
        case "commutator":
            return cmd_commutator(args.a, args.b)
        case "logic-cases":
            return cmd_logic_cases(args.bt, args.c)
        case "lhv-eval":
            return cmd_lhv_eval(args.model_file)
        case "tsirelson":
            return cmd_tsirelson()
    raise UsageError(f"unknown command {args.command!r}")


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        report = run(args)
    except UsageError as exc:
        print(f"bellcheck {args.command}: error: {exc}", file=sys.stderr)
        return 2
    except ModelError as exc:
        print(f"bellcheck {args.command}: ModelError: {exc}", file=sys.stderr)
        return 2
    except BellCheckError as exc:
        report = Report(args.command, "fail", {}, [f"{type(exc).__name__}: {exc}"])
    if args.tolerance_report:
        _tolerances(report, **TOLERANCES.get(args.command, {}))
    print(report.render(args.format))
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
