"""
File:           hyperdual.py
Created on:     13/10/26, 11:25 am

Second-order forward-mode numbers in two variables. A HyperDual carries a value and its first and
second partial derivatives with respect to x (the cold norm) and y (the hot norm); products are
truncated after second order, so derivatives are exact up to rounding.
"""
from typing import Union
from dataclasses import dataclass
import math

from src.constraint_dsl.tokenizer import ConstraintError


class ConstraintDomainError(ConstraintError):
    pass


@dataclass(frozen=True)
class HyperDual:
    v: float
    x: float = 0.0
    y: float = 0.0
    xx: float = 0.0
    xy: float = 0.0
    yy: float = 0.0

    @classmethod
    def constant(cls, value: float) -> "HyperDual":
        return cls(float(value))

    @classmethod
    def variable_x(cls, value: float) -> "HyperDual":
        return cls(float(value), x=1.0)

    @classmethod
    def variable_y(cls, value: float) -> "HyperDual":
        return cls(float(value), y=1.0)

    @property
    def is_constant(self) -> bool:
        return self.x == 0 and self.y == 0 and self.xx == 0 and self.xy == 0 and self.yy == 0

    def __repr__(self):
        return f"{self.v} + {self.x}dx + {self.y}dy + {self.xx}dxx + {self.xy}dxy + {self.yy}dyy"

    def chain(self, f0: float, f1: float, f2: float) -> "HyperDual":
        """ Compose a scalar function with value f0, slope f1 and curvature f2 at self.v """
        return HyperDual(
            v=f0,
            x=f1 * self.x,
            y=f1 * self.y,
            xx=f2 * self.x * self.x + f1 * self.xx,
            xy=f2 * self.x * self.y + f1 * self.xy,
            yy=f2 * self.y * self.y + f1 * self.yy,
        )

    def __neg__(self) -> "HyperDual":
        return HyperDual(-self.v, -self.x, -self.y, -self.xx, -self.xy, -self.yy)

    def __add__(self, other: "Operand") -> "HyperDual":
        other = lift(other)
        return HyperDual(
            self.v + other.v, self.x + other.x, self.y + other.y,
            self.xx + other.xx, self.xy + other.xy, self.yy + other.yy,
        )

    __radd__ = __add__

    def __sub__(self, other: "Operand") -> "HyperDual":
        return self + (-lift(other))

    def __rsub__(self, other: "Operand") -> "HyperDual":
        return lift(other) + (-self)

    def __mul__(self, other: "Operand") -> "HyperDual":
        b = lift(other)
        return HyperDual(
            v=self.v * b.v,
            x=self.x * b.v + self.v * b.x,
            y=self.y * b.v + self.v * b.y,
            xx=self.xx * b.v + 2.0 * self.x * b.x + self.v * b.xx,
            xy=self.xy * b.v + self.x * b.y + self.y * b.x + self.v * b.xy,
            yy=self.yy * b.v + 2.0 * self.y * b.y + self.v * b.yy,
        )

    __rmul__ = __mul__

    def __truediv__(self, other: "Operand") -> "HyperDual":
        return self * inv(lift(other))

    def __rtruediv__(self, other: "Operand") -> "HyperDual":
        return lift(other) * inv(self)

    def __pow__(self, other: "Operand") -> "HyperDual":
        exponent = lift(other)
        if exponent.is_constant:
            return _power_constant(self, exponent.v)
        if self.v <= 0:
            raise ConstraintDomainError(
                f"Variable exponent needs a positive base, got base {self.v}"
            )
        return exp(exponent * log(self))

    def __rpow__(self, other: "Operand") -> "HyperDual":
        return lift(other) ** self


Operand = Union[HyperDual, float, int]


def lift(value: Operand) -> HyperDual:
    if isinstance(value, HyperDual):
        return value
    return HyperDual.constant(value)


def _power_constant(base: HyperDual, p: float) -> HyperDual:
    u = base.v
    if p == 0:
        return HyperDual.constant(1.0)
    if u < 0 and not float(p).is_integer():
        raise ConstraintDomainError(f"Negative base {u} with non-integer exponent {p}")
    if u == 0 and (p < 2 and p != 1):
        raise ConstraintDomainError(f"Power {p} is not twice differentiable at 0")
    if p == 1:
        return base
    try:
        f0 = u ** p
        f1 = p * u ** (p - 1)
        f2 = p * (p - 1) * u ** (p - 2) if p != 2 else 2.0
    except (OverflowError, ZeroDivisionError) as err:
        raise ConstraintDomainError(f"Power {p} of {u} is out of range") from err
    return base.chain(f0, f1, f2)


def inv(u: Operand) -> HyperDual:
    u = lift(u)
    if u.v == 0:
        raise ConstraintDomainError("Division by zero")
    r = 1.0 / u.v
    return u.chain(r, -r * r, 2.0 * r * r * r)


def sqrt(u: Operand) -> HyperDual:
    u = lift(u)
    if u.v <= 0:
        raise ConstraintDomainError(f"sqrt needs a positive argument, got {u.v}")
    root = math.sqrt(u.v)
    return u.chain(root, 0.5 / root, -0.25 / (root * u.v))


def log(u: Operand) -> HyperDual:
    u = lift(u)
    if u.v <= 0:
        raise ConstraintDomainError(f"log needs a positive argument, got {u.v}")
    return u.chain(math.log(u.v), 1.0 / u.v, -1.0 / (u.v * u.v))


def exp(u: Operand) -> HyperDual:
    u = lift(u)
    try:
        value = math.exp(u.v)
    except OverflowError as err:
        raise ConstraintDomainError(f"exp overflow at {u.v}") from err
    return u.chain(value, value, value)


FUNCTIONS = {
    "sqrt": sqrt,
    "log": log,
    "exp": exp,
    "inv": inv,
}
