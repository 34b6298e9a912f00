"""Command-line front end: classify, complete, analyze, verify.

Every verb maps to exactly one library entry point and produces a
deterministic report (identical inputs give byte-identical output).  Exact
rationals are printed ``p/q``; ``--decimals`` appends a clearly marked
20-digit truncated approximation for human readers.  Exit codes: 0 the
computation ran (whatever the verdict), 1 malformed input, 2 an exact
internal cross-check failed (closed form and brute force disagree).
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from math import comb

from . import classify, completion, dual, oracle, radon
from .exactseq import Poly, format_rational
from .spaces import Branch, Circuit, CircuitSpace, TreeShift, UnilateralShift, format_vertex
from .spacefile import SpaceFileError, parse_space_file, serialize_space

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_CONTRADICTION = 2


def _decimal_approx(value: Fraction, digits: int = 20) -> str:
    """Truncated (not rounded) decimal expansion, labeled approximate."""
    sign = "-" if value < 0 else ""
    value = abs(value)
    whole, rem = divmod(value.numerator, value.denominator)
    frac_digits = []
    for _ in range(digits):
        rem *= 10
        d, rem = divmod(rem, value.denominator)
        frac_digits.append(str(d))
    return f"~{sign}{whole}.{''.join(frac_digits)}"


class Report:
    """Ordered key/value report rendered as text or structured JSON."""

    def __init__(self, decimals: bool = False):
        self.items: list[tuple[str, object]] = []
        self.decimals = decimals

    def add(self, key: str, value) -> None:
        self.items.append((key, value))

    def _format_value(self, value) -> str:
        if isinstance(value, bool):
            return "true" if value else "false"
        if isinstance(value, Fraction):
            text = format_rational(value)
            if self.decimals:
                text += f" ({_decimal_approx(value)})"
            return text
        if isinstance(value, (list, tuple)):
            return " ".join(self._format_value(v) for v in value)
        return str(value)

    def text(self) -> str:
        return "\n".join(f"{key}: {self._format_value(value)}" for key, value in self.items) + "\n"

    def structured(self) -> str:
        def plain(value):
            if isinstance(value, bool):
                return value
            if isinstance(value, Fraction):
                return format_rational(value)
            if isinstance(value, (list, tuple)):
                return [plain(v) for v in value]
            return value

        return json.dumps({key: plain(value) for key, value in self.items}, indent=2) + "\n"

    def emit(self, fmt: str) -> None:
        sys.stdout.write(self.structured() if fmt == "structured" else self.text())


def _poly_text(p: Poly) -> str:
    return " ".join(format_rational(c) for c in p.coeffs) if not p.is_zero else "0"


def _witness_text(witnesses) -> list[str]:
    out = []
    for point, value in witnesses:
        label = format_vertex(point) if isinstance(point, (Circuit, Branch)) else f"n={point}"
        out.append(f"{label}={format_rational(value)}")
    return out


# ---------------------------------------------------------------------------
# classify
# ---------------------------------------------------------------------------


def _classify_report(obj, m: int, m_max: int, decimals: bool) -> Report:
    rep = Report(decimals)
    if isinstance(obj, CircuitSpace):
        rep.add("kind", "circuit")
        rep.add("kappa", obj.kappa)
        rep.add("eta", obj.eta)
        result = classify.is_m_isometry_circuit(obj, m, m_max=m_max)
        rep.add("m", m)
        rep.add("is-m-isometry", result.is_m_isometry)
        rep.add("strict", result.strict)
        rep.add("least-order", result.least_order if result.least_order is not None else "none")
        if result.witnesses:
            rep.add("witnesses", _witness_text(result.witnesses))
        rep.add("analytic", classify.is_analytic(obj))
        rng_inf = classify.ranginf_dimension(obj)
        rep.add("ranginf-dimension", rng_inf.dimension)
        for r, norm in rng_inf.residues:
            rep.add(f"ranginf-norm-sq-r{r}", norm)
        rep.add("norm-sq", radon.norm_sq(obj))
        rep.add("inf-h", radon.inf_h(obj))
    elif isinstance(obj, UnilateralShift):
        rep.add("kind", "shift")
        result = classify.shift_is_m_isometry(obj, m, m_max=m_max)
        rep.add("m", m)
        rep.add("is-m-isometry", result.is_m_isometry)
        rep.add("strict", result.strict)
        rep.add("least-order", result.least_order if result.least_order is not None else "none")
        if result.witnesses:
            rep.add("witnesses", _witness_text(result.witnesses))
    elif isinstance(obj, TreeShift):
        rep.add("kind", "tree")
        rep.add("kappa-t", obj.kappa_t)
        rep.add("eta-t", obj.eta_t)
        rep.add("m", m)
        rep.add("is-m-isometry", classify.tree_is_m_isometry(obj, m))
    else:
        raise SpaceFileError(f"cannot classify {type(obj).__name__}")
    return rep


def _cmd_classify(args) -> int:
    obj = parse_space_file(args.file)
    rep = _classify_report(obj, args.m, args.m_max or args.m, args.decimals)
    rep.emit(args.format)
    return EXIT_OK


# ---------------------------------------------------------------------------
# completions
# ---------------------------------------------------------------------------


def _rationals(text: str) -> list[Fraction]:
    try:
        return [Fraction(tok) for tok in text.split()]
    except (ValueError, ZeroDivisionError) as exc:
        raise SpaceFileError(f"bad rational list {text!r}: {exc}") from exc


def _completion_report(result: completion.CompletionResult, decimals: bool, t: Fraction | None,
                       order: int | None = None) -> Report:
    rep = Report(decimals)
    rep.add("status", result.status)
    if result.witness is not None:
        kind, index, value = result.witness
        rep.add("witness", f"{kind} at n={index} value={format_rational(value)}")
    if result.poly is not None:
        rep.add("products-poly", _poly_text(result.poly))
        rep.add("strict", bool(result.strict))
    if isinstance(result.family, completion.ShiftFamily):
        fam = result.family
        rep.add("family-base", _poly_text(fam.extension.base))
        rep.add("family-direction", _poly_text(fam.extension.direction))
        rep.add("family-threshold", fam.threshold)
        rep.add("family-interval", f"[{format_rational(fam.threshold)}, oo)")
        sample = fam.threshold if t is None else t
        rep.add("sample-t", sample)
        rep.add("sample-products", _poly_text(fam.products_at(sample)))
        verdict = classify.shift_is_m_isometry(fam.shift_at(sample), fam.order)
        rep.add("sample-strict-m-isometry", verdict.is_m_isometry and verdict.strict)
    if isinstance(result.family, completion.CircuitFamily):
        fam = result.family
        rep.add("family-base", list(fam.base))
        rep.add("family-direction", "all-ones")
        rep.add("family-threshold", fam.threshold)
        rep.add("family-interval", f"({format_rational(fam.threshold)}, oo)")
        sample = fam.threshold + 1 if t is None else t
        rep.add("sample-t", sample)
        space = fam.space_at(sample)
        rep.add("sample-circuit", list(space.circuit))
        verdict = classify.is_m_isometry_circuit(space, fam.order)
        rep.add("sample-m-isometry", verdict.is_m_isometry)
    if result.space is not None:
        rep.add("circuit", list(result.space.circuit))
        for i in range(1, result.space.eta + 1):
            rep.add(f"branch-{i}-poly", _poly_text(result.space.branch(i).poly))
        if order is not None:
            verdict = classify.is_m_isometry_circuit(result.space, order)
            rep.add("m-isometry", verdict.is_m_isometry)
    return rep


def _cmd_complete_shift(args) -> int:
    prefix = _rationals(args.prefix)
    inter = _rationals(args.intermediates) if args.intermediates else None
    result = completion.complete_shift(prefix, args.m, intermediates=inter)
    t = Fraction(args.t) if args.t else None
    _completion_report(result, args.decimals, t).emit(args.format)
    return EXIT_OK


def _cmd_complete_circuit(args) -> int:
    t = Fraction(args.t) if args.t else None
    if args.circuit:
        vals = _rationals(args.circuit)
        result = completion.complete_circuit_from_circuit(len(vals), vals, args.eta)
        _completion_report(result, args.decimals, t, order=2).emit(args.format)
        return EXIT_OK
    if not args.branch_poly or args.m is None or args.kappa is None:
        raise SpaceFileError("need either --circuit, or --kappa --m with --branch-poly")
    polys = [Poly(tuple(_rationals(text))) for text in args.branch_poly]
    bound = Fraction(args.bound) if args.bound else None
    result = completion.complete_circuit_from_branches(args.kappa, polys, args.m, bound=bound)
    _completion_report(result, args.decimals, t).emit(args.format)
    return EXIT_OK


def _cmd_complete_branch(args) -> int:
    space = completion.complete_branch_prefix(_rationals(args.prefix))
    rep = Report(args.decimals)
    rep.add("status", completion.SOLVED)
    rep.add("circuit", list(space.circuit))
    rep.add("branch-poly", _poly_text(space.branch(1).poly))
    order = space.branch(1).poly.degree() + 2
    verdict = classify.is_m_isometry_circuit(space, order, m_max=order)
    rep.add("m-isometry-order", order)
    rep.add("least-order", verdict.least_order)
    rep.emit(args.format)
    return EXIT_OK


# ---------------------------------------------------------------------------
# dual analysis
# ---------------------------------------------------------------------------


def _cmd_dual(args) -> int:
    obj = parse_space_file(args.file)
    if not isinstance(obj, CircuitSpace):
        raise SpaceFileError("dual analysis applies to circuit spaces")
    rep = Report(args.decimals)
    rep.add("kind", "circuit")
    rep.add("kappa", obj.kappa)
    two_iso = classify.is_m_isometry_circuit(obj, 2).is_m_isometry
    rep.add("two-isometric", two_iso)
    n_max = args.moments
    if obj.kappa == 1 and two_iso:
        mu1 = obj.circuit[0]
        c = sum((obj.branch(i).value(1) for i in range(1, obj.eta + 1)), Fraction(0))
        rep.add("alpha", mu1 / (mu1 + c))
        prefix = dual.dual_moment_prefix(obj, n_max)
        rep.add("moments", list(prefix.values))
        measure = dual.dual_representing_measure(obj)
        rep.add(
            "representing-measure",
            [f"{format_rational(loc)}:{format_rational(mass)}" for loc, mass in measure.atoms],
        )
        agree = all(measure.moment(n) == prefix.values[n] for n in range(n_max + 1))
        rep.add("moments-match-measure", agree)
        rep.add("stieltjes", dual.stieltjes_check(prefix))
        rep.add("kernel-condition", dual.kernel_condition(obj))
        rep.add("delta-regular", dual.delta_regular(obj))
        rep.emit(args.format)
        return EXIT_OK
    rep.add("note", "necessary-condition check only")
    for r in range(1, obj.kappa + 1):
        moments = [oracle.dual_h_bruteforce(obj, Circuit(r), n) for n in range(n_max + 1)]
        rep.add(f"moments-x{r}", moments)
        rep.add(f"stieltjes-x{r}", dual.stieltjes_check(moments))
    rep.add("kernel-condition", dual.kernel_condition(obj))
    rep.add("delta-regular", dual.delta_regular(obj, require_2iso=False))
    rep.emit(args.format)
    return EXIT_OK


# ---------------------------------------------------------------------------
# verify: oracle cross-checks
# ---------------------------------------------------------------------------


def _verify_circuit(space: CircuitSpace, depth_n: int, depth_j: int) -> list[tuple[str, bool]]:
    checks: list[tuple[str, bool]] = []
    points = space.vertices_upto(depth_j)

    ok = all(
        radon.h_n(space, x, n) == oracle.h_n_bruteforce(space, x, n)
        for x in points
        for n in range(depth_n + 1)
    )
    checks.append(("h-closed-form-vs-oracle", ok))

    ok = True
    for x in points[: space.kappa + 2]:
        gamma = oracle.gamma_seq(space, oracle.FiniteFunction.indicator(x), depth_n)
        ok = ok and all(
            gamma[n] == space.mu(x) * oracle.h_n_bruteforce(space, x, n)
            for n in range(depth_n + 1)
        )
    checks.append(("orbit-norms-vs-density", ok))

    ok = True
    for m in range(1, 5):
        lhs = sum(
            (
                space.mu(Circuit(r))
                * sum(((-1) ** p * comb(m, p) * radon.h_n(space, Circuit(r), p) for p in range(m + 1)), Fraction(0))
                for r in range(1, space.kappa + 1)
            ),
            Fraction(0),
        )
        rhs = -sum(
            (
                (-1) ** p * comb(m - 1, p) * space.branch(i).value(p + 1)
                for i in range(1, space.eta + 1)
                for p in range(m)
            ),
            Fraction(0),
        )
        ok = ok and lhs == rhs
    checks.append(("sum-decomposition-identity", ok))

    ok = True
    for m in range(1, 5):
        verdict = classify.is_m_isometry_circuit(space, m).is_m_isometry
        sampled = all(
            oracle.window_sum_bruteforce(space, x, m, n) == 0
            for x in space.vertices_upto(min(depth_j, 6))
            for n in range(3)
        )
        ok = ok and verdict == sampled
    checks.append(("classification-vs-oracle-windows", ok))

    ok = radon.sup_h(space) >= max(radon.h_n(space, x, 1) for x in points)
    ok = ok and radon.inf_h(space) <= min(radon.h_n(space, x, 1) for x in points)
    checks.append(("density-bounds-dominate", ok))

    if space.kappa == 1 and classify.is_m_isometry_circuit(space, 2).is_m_isometry:
        ok = all(
            dual.dual_moment_closed_form(space, x, n) == oracle.dual_h_bruteforce(space, x, n)
            for x in space.vertices_upto(3)
            for n in range(min(depth_n, 8) + 1)
        )
        checks.append(("dual-moments-vs-oracle", ok))
    return checks


def _verify_shift(shift: UnilateralShift, depth_n: int) -> list[tuple[str, bool]]:
    checks = []
    ok = True
    for m in range(1, 5):
        verdict = classify.shift_is_m_isometry(shift, m).is_m_isometry
        windows = all(
            sum(((-1) ** k * comb(m, k) * shift.product(n + k) for k in range(m + 1)), Fraction(0)) == 0
            for n in range(depth_n + 1)
        )
        # windows to finite depth are necessary; the verdict must imply them
        ok = ok and (windows or not verdict)
    checks.append(("shift-windows-vs-verdict", ok))
    return checks


def _verify_tree(tree: TreeShift, depth_n: int) -> list[tuple[str, bool]]:
    def orbit_norm_sq(products, j: int, n: int) -> Fraction:
        return products.value(j + n) / products.value(j)

    checks = []
    ok = True
    for m in range(1, 4):
        verdict = classify.tree_is_m_isometry(tree, m)
        windows = True
        for i in range(1, tree.eta_t + 1):
            prods = tree.branch_products(i)
            for j in range(1, 4):
                for n in range(3):
                    w = sum(
                        ((-1) ** k * comb(m, k) * orbit_norm_sq(prods, j, n + k) for k in range(m + 1)),
                        Fraction(0),
                    )
                    windows = windows and w == 0
        gamma_root = [Fraction(1)] + [
            sum((tree.branch_products(i).value(n) for i in range(1, tree.eta_t + 1)), Fraction(0))
            for n in range(1, depth_n + 1)
        ]
        for n in range(len(gamma_root) - m):
            w = sum(((-1) ** k * comb(m, k) * gamma_root[n + k] for k in range(m + 1)), Fraction(0))
            windows = windows and w == 0
        ok = ok and (windows or not verdict)
    checks.append(("tree-windows-vs-verdict", ok))
    return checks


def _cmd_verify(args) -> int:
    obj = parse_space_file(args.file)
    if isinstance(obj, CircuitSpace):
        checks = _verify_circuit(obj, args.depth_n, args.depth_j)
    elif isinstance(obj, UnilateralShift):
        checks = _verify_shift(obj, args.depth_n)
    else:
        checks = _verify_tree(obj, args.depth_n)
    rep = Report(args.decimals)
    for name, ok in checks:
        rep.add(f"check {name}", "pass" if ok else "fail")
    all_ok = all(ok for _, ok in checks)
    rep.add("result", "pass" if all_ok else "fail")
    rep.emit(args.format)
    return EXIT_OK if all_ok else EXIT_CONTRADICTION


def _cmd_inspect(args) -> int:
    obj = parse_space_file(args.file)
    sys.stdout.write(serialize_space(obj))
    return EXIT_OK


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--format", choices=("text", "structured"), default="text")
    parser.add_argument("--decimals", action="store_true",
                        help="append 20-digit truncated decimal approximations")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="onecircuit",
        description="Exact classification and completion for circuit composition operators",
    )
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("classify", help="classification report for a space file")
    p.add_argument("file")
    p.add_argument("--m", type=int, default=2)
    p.add_argument("--m-max", type=int, default=None)
    _add_common(p)
    p.set_defaults(run=_cmd_classify)

    p = sub.add_parser("complete-shift", help="m-isometric shift completion")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--prefix", required=True, help="squared weights, e.g. '2 27/64'")
    p.add_argument("--intermediates", default=None)
    p.add_argument("--t", default=None, help="family parameter to sample")
    _add_common(p)
    p.set_defaults(run=_cmd_complete_shift)

    p = sub.add_parser("complete-circuit", help="circuit completions (either direction)")
    p.add_argument("--circuit", default=None, help="prescribed circuit measures")
    p.add_argument("--eta", type=int, default=1)
    p.add_argument("--kappa", type=int, default=None)
    p.add_argument("--m", type=int, default=None)
    p.add_argument("--branch-poly", action="append", default=None,
                   help="branch measure polynomial, coefficients low to high (repeatable)")
    p.add_argument("--bound", default=None)
    p.add_argument("--t", default=None)
    _add_common(p)
    p.set_defaults(run=_cmd_complete_circuit)

    p = sub.add_parser("complete-branch", help="branch-prefix completion on a one-point circuit")
    p.add_argument("--prefix", required=True)
    _add_common(p)
    p.set_defaults(run=_cmd_complete_branch)

    p = sub.add_parser("dual", help="Cauchy dual analysis of a circuit space")
    p.add_argument("file")
    p.add_argument("--moments", type=int, default=10)
    _add_common(p)
    p.set_defaults(run=_cmd_dual)

    p = sub.add_parser("verify", help="run the oracle cross-check suite on a space")
    p.add_argument("file")
    p.add_argument("--depth-n", type=int, default=8)
    p.add_argument("--depth-j", type=int, default=6)
    _add_common(p)
    p.set_defaults(run=_cmd_verify)

    p = sub.add_parser("inspect", help="parse and reprint a space file canonically")
    p.add_argument("file")
    _add_common(p)
    p.set_defaults(run=_cmd_inspect)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.run(args)
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (SpaceFileError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except classify.ContradictionError as exc:
        print(f"internal contradiction: {exc}", file=sys.stderr)
        return EXIT_CONTRADICTION


if __name__ == "__main__":
    sys.exit(main())
