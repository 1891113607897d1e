"""Immutable expression trees over x and y.

Evaluation works on floats and on numpy arrays alike.  ``to_string`` emits a
fully parenthesised form that the parser reads back to the same tree values.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

FUNCTIONS = ("sin", "cos", "tan", "exp", "log", "sqrt")
VARIABLES = ("x", "y")
BINARY_OPS = ("+", "-", "*", "/", "^")


class DomainError(ArithmeticError):
    """An expression was evaluated outside its domain of definition."""


def _is_integer(v) -> bool:
    return float(v).is_integer()


def _check(cond, msg):
    if not np.all(cond):
        raise DomainError(msg)


class Expr:
    __slots__ = ()

    def evaluate(self, x, y):
        raise NotImplementedError

    def __call__(self, x, y):
        return self.evaluate(x, y)

    def to_string(self) -> str:
        raise NotImplementedError

    def __str__(self):
        return self.to_string()

    def variables(self) -> frozenset:
        raise NotImplementedError


@dataclass(frozen=True)
class Num(Expr):
    value: float

    def evaluate(self, x, y):
        return self.value + 0.0 * np.asarray(x) if np.ndim(x) else self.value

    def to_string(self):
        s = repr(float(self.value))
        return f"({s})" if self.value < 0 or s.startswith("-") else s

    def variables(self):
        return frozenset()


@dataclass(frozen=True)
class Var(Expr):
    name: str

    def __post_init__(self):
        if self.name not in VARIABLES:
            raise ValueError(f"unknown variable {self.name!r}")

    def evaluate(self, x, y):
        return x if self.name == "x" else y

    def to_string(self):
        return self.name

    def variables(self):
        return frozenset([self.name])


@dataclass(frozen=True)
class Neg(Expr):
    arg: Expr

    def evaluate(self, x, y):
        return -self.arg.evaluate(x, y)

    def to_string(self):
        return f"(-{self.arg.to_string()})"

    def variables(self):
        return self.arg.variables()


@dataclass(frozen=True)
class BinOp(Expr):
    op: str
    left: Expr
    right: Expr

    def __post_init__(self):
        if self.op not in BINARY_OPS:
            raise ValueError(f"unknown operator {self.op!r}")

    def evaluate(self, x, y):
        a = self.left.evaluate(x, y)
        b = self.right.evaluate(x, y)
        if self.op == "+":
            return a + b
        if self.op == "-":
            return a - b
        if self.op == "*":
            return a * b
        if self.op == "/":
            _check(np.asarray(b) != 0, "division by zero")
            return a / b
        if not self.right.variables() and _is_integer(self.right.evaluate(0.0, 0.0)):
            n = self.right.evaluate(0.0, 0.0)
            if n < 0:
                _check(np.asarray(a) != 0, "zero raised to a negative power")
            return a ** int(n)
        _check(np.asarray(a) > 0, "non-integer power of a non-positive base")
        return a ** b

    def to_string(self):
        return f"({self.left.to_string()} {self.op} {self.right.to_string()})"

    def variables(self):
        return self.left.variables() | self.right.variables()


@dataclass(frozen=True)
class Call(Expr):
    func: str
    arg: Expr

    def __post_init__(self):
        if self.func not in FUNCTIONS:
            raise ValueError(f"unknown function {self.func!r}")

    def evaluate(self, x, y):
        a = self.arg.evaluate(x, y)
        if self.func == "log":
            _check(np.asarray(a) > 0, "log of a non-positive value")
        elif self.func == "sqrt":
            _check(np.asarray(a) >= 0, "sqrt of a negative value")
        elif self.func == "tan":
            _check(np.abs(np.cos(a)) > 1e-300, "tan at a pole")
        if np.ndim(a):
            return getattr(np, self.func)(a)
        return getattr(math, self.func)(a)

    def to_string(self):
        return f"{self.func}({self.arg.to_string()})"

    def variables(self):
        return self.arg.variables()
