"""Symbolic partial derivatives of expression trees, with light constant folding."""
from __future__ import annotations

from .expr import BinOp, Call, Expr, Neg, Num, Var

ZERO = Num(0.0)
ONE = Num(1.0)


def _is(e, v):
    return isinstance(e, Num) and e.value == v


def add(a, b):
    if _is(a, 0):
        return b
    if _is(b, 0):
        return a
    return BinOp("+", a, b)


def sub(a, b):
    if _is(b, 0):
        return a
    if _is(a, 0):
        return neg(b)
    return BinOp("-", a, b)


def neg(a):
    if isinstance(a, Num):
        return Num(-a.value)
    return Neg(a)


def mul(a, b):
    if _is(a, 0) or _is(b, 0):
        return ZERO
    if _is(a, 1):
        return b
    if _is(b, 1):
        return a
    return BinOp("*", a, b)


def div(a, b):
    if _is(a, 0):
        return ZERO
    if _is(b, 1):
        return a
    return BinOp("/", a, b)


def power(a, b):
    if _is(b, 1):
        return a
    return BinOp("^", a, b)


def differentiate(tree: Expr, var: str) -> Expr:
    """Partial derivative of ``tree`` with respect to ``var`` ("x" or "y")."""
    if var not in ("x", "y"):
        raise ValueError(f"can only differentiate with respect to x or y, got {var!r}")
    if var not in tree.variables():
        return ZERO
    if isinstance(tree, Var):
        return ONE
    if isinstance(tree, Neg):
        return neg(differentiate(tree.arg, var))
    if isinstance(tree, Call):
        a = tree.arg
        da = differentiate(a, var)
        f = tree.func
        if f == "sin":
            outer = Call("cos", a)
        elif f == "cos":
            outer = neg(Call("sin", a))
        elif f == "tan":
            outer = div(ONE, power(Call("cos", a), Num(2.0)))
        elif f == "exp":
            outer = tree
        elif f == "log":
            outer = div(ONE, a)
        else:
            outer = div(ONE, mul(Num(2.0), tree))
        return mul(outer, da)
    a, b = tree.left, tree.right
    da, db = differentiate(a, var), differentiate(b, var)
    op = tree.op
    if op == "+":
        return add(da, db)
    if op == "-":
        return sub(da, db)
    if op == "*":
        return add(mul(da, b), mul(a, db))
    if op == "/":
        return div(sub(mul(da, b), mul(a, db)), power(b, Num(2.0)))
    # power
    if var not in b.variables():
        exponent = Num(b.value - 1.0) if isinstance(b, Num) else sub(b, ONE)
        return mul(mul(b, power(a, exponent)), da)
    return mul(tree, add(mul(db, Call("log", a)), div(mul(b, da), a)))
