"""Exact scalars over the rationals or a prime field.

Values are sympy domain elements (``QQ`` or ``GF(p)`` with residues kept in
``0..p-1``); ``Field`` is the context object every ring, matrix and point set
carries, and ``Scalar`` pairs a value with its field for the public API.
"""
from __future__ import annotations

import random
import re
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import Any, Optional, Union

from sympy import isprime
from sympy.polys.domains import GF, QQ
from sympy.polys.domains.domain import Domain

from .errors import ErrorCode, FieldError

DEFAULT_PRIME = 32003

_FRACTION = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$")

ScalarInput = Union[int, Fraction, str, Any]


@lru_cache(maxsize=None)
def _domain_for(prime: Optional[int]) -> Domain:
    if prime is None:
        return QQ
    return GF(prime, symmetric=False)


class FieldOp(str, Enum):
    ADD = "add"
    SUB = "sub"
    MUL = "mul"
    DIV = "div"


@dataclass(frozen=True)
class Field:
    """Ground field: rationals when ``prime`` is None, else F_p."""

    prime: Optional[int] = None

    def __post_init__(self) -> None:
        if self.prime is not None and (self.prime < 2 or not isprime(self.prime)):
            raise FieldError(
                ErrorCode.CHARACTERISTIC,
                f"modulus {self.prime} is not prime",
                {"modulus": self.prime},
            )

    @classmethod
    def rationals(cls) -> "Field":
        return cls(None)

    @classmethod
    def prime_field(cls, prime: int = DEFAULT_PRIME) -> "Field":
        return cls(prime)

    @classmethod
    def parse(cls, text: str) -> "Field":
        """Parse the header of a point file: ``Q`` or ``F p``."""

        parts = text.split()
        if parts == ["Q"]:
            return cls.rationals()
        if len(parts) == 2 and parts[0] == "F" and parts[1].isdigit():
            return cls.prime_field(int(parts[1]))
        raise FieldError(ErrorCode.PARSE, f"unrecognised field spec {text!r}")

    @property
    def domain(self) -> Domain:
        return _domain_for(self.prime)

    @property
    def is_rational(self) -> bool:
        return self.prime is None

    @property
    def characteristic(self) -> int:
        return 0 if self.prime is None else self.prime

    @property
    def label(self) -> str:
        return "Q" if self.prime is None else f"F {self.prime}"

    @property
    def zero(self) -> Any:
        return self.domain.zero

    @property
    def one(self) -> Any:
        return self.domain.one

    def fraction(self, numerator: int, denominator: int = 1) -> Any:
        if denominator == 0:
            raise FieldError(ErrorCode.DIVISION_BY_ZERO, f"{numerator}/0 is undefined")
        if self.prime is None:
            return QQ(numerator, denominator)
        dom = self.domain
        den = dom.convert(denominator)
        if dom.is_zero(den):
            raise FieldError(
                ErrorCode.DIVISION_BY_ZERO,
                f"denominator {denominator} vanishes mod {self.prime}",
            )
        return dom.exquo(dom.convert(numerator), den)

    def element(self, value: ScalarInput) -> Any:
        """Coerce an int, Fraction, ``"a/b"`` string or domain element."""

        if isinstance(value, bool):
            raise FieldError(ErrorCode.PARSE, "booleans are not scalars")
        if isinstance(value, int):
            return self.domain.convert(value)
        if isinstance(value, Fraction):
            return self.fraction(value.numerator, value.denominator)
        if isinstance(value, str):
            match = _FRACTION.match(value)
            if not match:
                raise FieldError(ErrorCode.PARSE, f"not an exact scalar: {value!r}")
            return self.fraction(int(match.group(1)), int(match.group(2) or 1))
        if isinstance(value, float):
            raise FieldError(ErrorCode.PARSE, "floating point values are not exact")
        try:
            return self.domain.convert(value)
        except Exception as exc:  # noqa: BLE001 - sympy raises CoercionFailed and friends
            raise FieldError(ErrorCode.FIELD_MISMATCH, f"cannot coerce {value!r} into {self.label}") from exc

    def is_zero(self, value: Any) -> bool:
        return bool(self.domain.is_zero(value))

    def residue(self, value: Any) -> int:
        """Representative in ``0..p-1`` of a prime-field element."""

        if self.prime is None:
            raise FieldError(ErrorCode.FIELD_MISMATCH, "rationals have no residues")
        return int(self.domain.to_int(value)) % self.prime

    def as_fraction(self, value: Any) -> Fraction:
        if self.prime is None:
            return Fraction(int(value.numerator), int(value.denominator))
        return Fraction(self.residue(value))

    def format(self, value: Any) -> str:
        if self.prime is not None:
            return str(self.residue(value))
        frac = self.as_fraction(value)
        if frac.denominator == 1:
            return str(frac.numerator)
        return f"{frac.numerator}/{frac.denominator}"

    def random_element(self, rng: random.Random, bound: int = 1000) -> Any:
        if self.prime is None:
            return self.domain.convert(rng.randint(-bound, bound))
        return self.domain.convert(rng.randrange(self.prime))

    def scalar(self, value: ScalarInput) -> "Scalar":
        return Scalar(self, self.element(value))


@dataclass(frozen=True)
class Scalar:
    field: Field
    value: Any

    def __add__(self, other: "Scalar") -> "Scalar":
        return field_ops(self, other, FieldOp.ADD)

    def __sub__(self, other: "Scalar") -> "Scalar":
        return field_ops(self, other, FieldOp.SUB)

    def __mul__(self, other: "Scalar") -> "Scalar":
        return field_ops(self, other, FieldOp.MUL)

    def __truediv__(self, other: "Scalar") -> "Scalar":
        return field_ops(self, other, FieldOp.DIV)

    def __neg__(self) -> "Scalar":
        return Scalar(self.field, -self.value)

    def is_zero(self) -> bool:
        return self.field.is_zero(self.value)

    def __str__(self) -> str:
        return self.field.format(self.value)


def field_ops(a: Scalar, b: Scalar, op: FieldOp) -> Scalar:
    """Exact binary arithmetic; operands must share one field."""

    if a.field != b.field:
        raise FieldError(
            ErrorCode.FIELD_MISMATCH,
            f"cannot combine {a.field.label} with {b.field.label}",
        )
    dom = a.field.domain
    if op is FieldOp.ADD:
        value = dom.add(a.value, b.value)
    elif op is FieldOp.SUB:
        value = dom.sub(a.value, b.value)
    elif op is FieldOp.MUL:
        value = dom.mul(a.value, b.value)
    elif op is FieldOp.DIV:
        if dom.is_zero(b.value):
            raise FieldError(ErrorCode.DIVISION_BY_ZERO, f"division of {a} by zero")
        value = dom.exquo(a.value, b.value)
    else:  # pragma: no cover - enum is closed
        raise ValueError(op)
    return Scalar(a.field, value)


__all__ = ["DEFAULT_PRIME", "Field", "FieldOp", "Scalar", "field_ops"]
