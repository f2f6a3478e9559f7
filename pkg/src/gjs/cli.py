"""Command-line front end.

Exit codes: 0 on success, 1 when a gating verification check fails, 2 for bad
flags, malformed input, shape errors and exhausted budgets.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import Any, Callable

from . import planar, serialize
from .bimodules import BimoduleCalculus, CornerElement
from .category import TemperleyLieb, as_fraction
from .fock import FockModule
from .graded import BudgetExceeded, GradedAlgebra, GradedElement
from .verify import SUITES, SuiteConfig, dimension_table, run_suites


class UsageError(Exception):
    """Bad input detected before or during evaluation; maps to exit code 2."""


class EvalError(UsageError):
    def __init__(self, path: str, message: str):
        super().__init__(f"at {path}: {message}")
        self.path = path


def rational(text: str) -> Fraction:
    """Parse ``p/q`` or an integer; decimal points are refused to keep arithmetic exact."""
    if any(ch in text for ch in ".eE"):
        raise argparse.ArgumentTypeError(f"{text!r} is not an exact rational; write it as p/q")
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"{text!r} is not a rational number") from exc


def power_of_two(text: str) -> int:
    value = int(text)
    if value < 1 or value & (value - 1):
        raise argparse.ArgumentTypeError(f"{value} is not a power of two")
    return value


def read_json(path: str) -> Any:
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text(encoding="utf-8")
        return json.loads(text)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path} is not valid JSON: {exc}") from exc


def write_text(path: str, text: str) -> None:
    if path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def dump(data: Any) -> str:
    return json.dumps(data, indent=2, sort_keys=True) + "\n"


# ------------------------------------------------------------------ eval


class Evaluator:
    """Evaluates a JSON expression tree exactly.

    Each node is a one-key object naming an operator. Values are graded
    elements, corner elements or scalars.
    """

    def __init__(self, delta: Fraction):
        self.algebra = GradedAlgebra(TemperleyLieb(delta))
        self.calculus = BimoduleCalculus(self.algebra)
        self.ops: dict[str, Callable[[Any, str], Any]] = {
            "lit": self._literal,
            "jones": self._jones,
            "wedge": self._fold(self.algebra.wedge),
            "walker": self._fold(self.algebra.walker),
            "star": self._star,
            "trace": self._unary(self.algebra.trace),
            "phi": self._unary(self.algebra.phi),
            "E": self._unary(self.algebra.expectation),
            "En": self._leveled(self.algebra.conditional_expectation),
            "iota": self._leveled(self.algebra.iota),
            "inner_right": self._inner(self.calculus.right_inner),
            "inner_left": self._inner(self.calculus.left_inner),
            "fuse": self._fuse,
            "F": self._functor,
            "dot_shift": self._dot_shift,
            "conjugate": self._conjugate,
        }

    def evaluate(self, node: Any, path: str = "$") -> Any:
        if not isinstance(node, dict) or len(node) != 1:
            raise EvalError(path, "expected an object with exactly one operator key")
        (op, arg), = node.items()
        if op not in self.ops:
            raise EvalError(path, f"unknown operator {op!r}")
        try:
            return self.ops[op](arg, f"{path}.{op}")
        except EvalError:
            raise
        except (ValueError, KeyError, TypeError) as exc:
            raise EvalError(f"{path}.{op}", str(exc)) from exc

    # helpers

    def _element(self, node: Any, path: str) -> GradedElement:
        value = self.evaluate(node, path)
        if isinstance(value, CornerElement):
            return value.payload
        if isinstance(value, GradedElement):
            return value
        raise EvalError(path, "expected an element, got a scalar")

    def _corner(self, node: Any, path: str) -> CornerElement:
        value = self.evaluate(node, path)
        if isinstance(value, CornerElement):
            return value
        if isinstance(value, GradedElement):
            try:
                return CornerElement.of(value)
            except ValueError as exc:
                raise EvalError(path, str(exc)) from exc
        raise EvalError(path, "expected a corner element, got a scalar")

    @staticmethod
    def _list(arg: Any, path: str, minimum: int = 1) -> list:
        if not isinstance(arg, list) or len(arg) < minimum:
            raise EvalError(path, f"expected a list of at least {minimum} operands")
        return arg

    @staticmethod
    def _field(arg: Any, key: str, path: str) -> Any:
        if not isinstance(arg, dict) or key not in arg:
            raise EvalError(path, f"missing field {key!r}")
        return arg[key]

    # operators

    def _literal(self, arg: Any, path: str) -> GradedElement | CornerElement:
        if not isinstance(arg, dict) or "terms" not in arg:
            raise EvalError(path, "literal must be an element object with 'terms'")
        if "shape" in arg:
            return serialize.corner_from_json(arg)
        delta, element = serialize.element_from_json(arg)
        if delta is not None and delta != self.algebra.delta:
            raise EvalError(path, f"literal written for loop value {delta}, evaluating at {self.algebra.delta}")
        return element

    def _jones(self, arg: Any, path: str) -> GradedElement:
        if not isinstance(arg, int) or arg < 0:
            raise EvalError(path, "Jones projection level must be a non-negative integer")
        return self.algebra.jones_projection(arg)

    def _fold(self, product):
        def run(arg: Any, path: str) -> GradedElement:
            operands = self._list(arg, path, 2)
            values = [self._element(x, f"{path}[{i}]") for i, x in enumerate(operands)]
            result = values[0]
            for value in values[1:]:
                result = product(result, value)
            return result

        return run

    def _star(self, arg: Any, path: str) -> GradedElement | CornerElement:
        value = self.evaluate(arg, path)
        if isinstance(value, CornerElement):
            l, r = value.shape
            return CornerElement((r, l), self.algebra.star(value.payload))
        if isinstance(value, GradedElement):
            return self.algebra.star(value)
        raise EvalError(path, "cannot star a scalar")

    def _unary(self, fn):
        return lambda arg, path: fn(self._element(arg, path))

    def _leveled(self, fn):
        def run(arg: Any, path: str) -> GradedElement:
            n = self._field(arg, "n", path)
            if not isinstance(n, int) or n < 0:
                raise EvalError(path, "level 'n' must be a non-negative integer")
            return fn(self._element(self._field(arg, "arg", path), f"{path}.arg"), n)

        return run

    def _inner(self, fn):
        def run(arg: Any, path: str) -> GradedElement:
            left, right = self._list(arg, path, 2)[:2]
            return fn(self._corner(left, f"{path}[0]"), self._corner(right, f"{path}[1]"))

        return run

    def _fuse(self, arg: Any, path: str) -> CornerElement:
        operands = self._list(arg, path, 1)
        return self.calculus.fuse([self._corner(x, f"{path}[{i}]") for i, x in enumerate(operands)])

    def _functor(self, arg: Any, path: str) -> CornerElement:
        f = serialize.morphism_from_json(self._field(arg, "morphism", path))
        return self.calculus.functor_on_morphism(f, self._corner(self._field(arg, "arg", path), f"{path}.arg"))

    def _dot_shift(self, arg: Any, path: str) -> CornerElement:
        steps = self._field(arg, "steps", path)
        if not isinstance(steps, int):
            raise EvalError(path, "'steps' must be an integer")
        return self.calculus.dot_shift(self._corner(self._field(arg, "arg", path), f"{path}.arg"), steps)

    def _conjugate(self, arg: Any, path: str) -> CornerElement:
        return self.calculus.conjugate(self._corner(arg, path))

    def to_json(self, value: Any) -> Any:
        delta = self.algebra.delta
        if isinstance(value, CornerElement):
            return serialize.corner_to_json(value, delta)
        if isinstance(value, GradedElement):
            return serialize.element_to_json(value, delta)
        return {"delta": serialize.scalar_to_json(delta), "scalar": serialize.scalar_to_json(value)}


# ------------------------------------------------------------------ commands


def cmd_check(args: argparse.Namespace) -> int:
    try:
        cfg = SuiteConfig(
            delta=args.delta,
            max_level=args.max_level,
            max_bottom=args.max_bottom,
            seed=args.seed,
            suites=tuple(args.suite) if args.suite else SUITES,
            moment_p_max=args.p_max,
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    report = run_suites(cfg)
    write_text(args.out, report.to_jsonl())
    for record in report.failures():
        print(f"FAILED {record.suite}/{record.name}: {record.detail or record.residual}", file=sys.stderr)
    return 0 if report.passed else 1


def cmd_eval(args: argparse.Namespace) -> int:
    tree = read_json(args.expr)
    delta = args.delta
    if isinstance(tree, dict) and "expr" in tree:
        if "delta" in tree:
            delta = as_fraction(tree["delta"])
        tree = tree["expr"]
    evaluator = Evaluator(check_delta(delta))
    write_text(args.out, dump(evaluator.to_json(evaluator.evaluate(tree))))
    return 0


def cmd_dims(args: argparse.Namespace) -> int:
    try:
        rows = dimension_table(args.max_n)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    write_text(args.out, "".join(json.dumps(row) + "\n" for row in rows))
    return 0


def cmd_nc(args: argparse.Namespace) -> int:
    if args.points < 0 or not 0 <= args.bottom <= args.points:
        raise UsageError("need 0 <= bottom <= points")
    if args.points > 20:
        raise UsageError("enumeration is limited to 20 points")
    try:
        pairings = planar.enumerate_nc_pairings(args.points, bottom=args.bottom)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    write_text(args.out, "".join(json.dumps(serialize.pairing_to_json(p)) + "\n" for p in pairings))
    return 0


def _load_element(path: str, algebra: GradedAlgebra) -> GradedElement:
    data = read_json(path)
    try:
        delta, element = serialize.element_from_json(data)
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"{path} is not an element: {exc}") from exc
    if delta is not None and delta != algebra.delta:
        raise UsageError(f"{path} was written for loop value {delta}, not {algebra.delta}")
    return element


def cmd_norm(args: argparse.Namespace) -> int:
    algebra = GradedAlgebra(TemperleyLieb(check_delta(args.delta)))
    element = _load_element(args.input, algebra)
    shape = element.corner()
    if shape is None or shape[0] != shape[1]:
        found = shape if shape is not None else sorted({(l, r) for _, l, r in element.terms})
        raise UsageError(f"norm estimates need an element of a corner (n, n); got shape {found}")
    try:
        estimate = algebra.norm_estimate(element, args.p_max)
    except BudgetExceeded as exc:
        raise UsageError(str(exc)) from exc
    result: dict[str, Any] = {
        "shape": list(shape),
        "exponents": list(estimate.exponents),
        "estimates": list(estimate.values),
    }
    if element.max_bottom() == 0:
        result["gns_norm"] = algebra.gns_norm(element)
    write_text(args.out, dump(result))
    return 0


def cmd_fock(args: argparse.Namespace) -> int:
    algebra = GradedAlgebra(TemperleyLieb(check_delta(args.delta)))
    module = FockModule(algebra, args.depth)
    symbol = _load_element(args.symbol, algebra)
    if any(b != 1 for b, _, _ in symbol.terms):
        raise UsageError("a creation symbol must have exactly one bottom strand in every piece")
    if args.vector:
        vector = module.vector(_load_element(args.vector, algebra))
    else:
        vector = module.vacuum()
    operation = {"create": module.create, "annihilate": module.annihilate, "field": module.field}[args.op]
    result = operation(symbol, vector)
    write_text(args.out, dump(serialize.fock_to_json(result, algebra.delta)))
    return 0


def check_delta(delta: Fraction) -> Fraction:
    if delta <= 2:
        raise UsageError(f"loop value must exceed 2 (got {delta})")
    return delta


# ------------------------------------------------------------------ parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gjs", description="Exact Temperley-Lieb graded algebra computations.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, delta: bool = True) -> None:
        if delta:
            p.add_argument("--delta", type=rational, default=Fraction(5, 2), help="loop value as p/q (default 5/2)")
        p.add_argument("--out", default="-", help="output file, '-' for standard output")

    check = sub.add_parser("check", help="run the verification suites")
    common(check)
    check.add_argument("--max-level", type=int, default=3)
    check.add_argument("--max-bottom", type=int, default=3)
    check.add_argument("--seed", type=int, default=42)
    check.add_argument("--suite", action="append", help=f"suite to run (repeatable): {', '.join(SUITES)}")
    check.add_argument("--p-max", type=power_of_two, default=64)
    check.set_defaults(handler=cmd_check)

    evaluate = sub.add_parser("eval", help="evaluate a JSON expression tree")
    common(evaluate)
    evaluate.add_argument("--expr", required=True, help="expression file, '-' for standard input")
    evaluate.set_defaults(handler=cmd_eval)

    dims = sub.add_parser("dims", help="hom-space dimension table")
    common(dims, delta=False)
    dims.add_argument("--max-n", type=int, default=4)
    dims.set_defaults(handler=cmd_dims)

    nc = sub.add_parser("nc", help="enumerate non-crossing pairings")
    common(nc, delta=False)
    nc.add_argument("--points", type=int, required=True)
    nc.add_argument("--bottom", type=int, default=0)
    nc.set_defaults(handler=cmd_nc)

    norm = sub.add_parser("norm", help="moment estimates of the C*-norm")
    common(norm)
    norm.add_argument("--input", required=True)
    norm.add_argument("--p-max", type=power_of_two, default=64)
    norm.set_defaults(handler=cmd_norm)

    fock = sub.add_parser("fock", help="apply a creation, annihilation or field operator")
    common(fock)
    fock.add_argument("--symbol", required=True, help="element with one bottom strand")
    fock.add_argument("--vector", help="element to act on (default: the vacuum)")
    fock.add_argument("--op", choices=("create", "annihilate", "field"), default="field")
    fock.add_argument("--depth", type=int, default=6)
    fock.set_defaults(handler=cmd_fock)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    try:
        return args.handler(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
