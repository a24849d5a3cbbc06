"""Text codec for polynomials.

Grammar: ``term = [coeff "*"] var ["^" exp] ("*" var ["^" exp])*`` with terms
joined by `` + `` / `` - ``. Terms are written in descending order (grevlex
unless another order is asked for) and coefficients as reduced fractions
(rationals) or residues (prime fields), so
``parse_polynomial(ctx, format_polynomial(f)) == f``.
"""
from __future__ import annotations

import re
from tokenize import TokenError
from typing import Sequence

from sympy import Symbol
from sympy.parsing.sympy_parser import convert_xor, parse_expr, standard_transformations
from sympy.polys.polyerrors import CoercionFailed

from ..domain.errors import ErrorCode, ReesError
from ..domain.rings import GREVLEX, MonomialOrder, Polynomial, RingContext, monomial_text
from ..domain.scalars import Field

_ALLOWED = re.compile(r"^[\w\s+\-*/^()]+$")
_IDENTIFIER = re.compile(r"[A-Za-z_]\w*")
_TRANSFORMS = standard_transformations + (convert_xor,)


def format_polynomial(f: Polynomial, field: Field, order: MonomialOrder = GREVLEX) -> str:
    if not f:
        return "0"
    names = [str(s) for s in f.ring.symbols]
    pieces = []
    for monom, coeff in f.terms(order.key(names)):
        frac = field.as_fraction(coeff)
        negative = frac < 0
        magnitude = -frac if negative else frac
        mono = monomial_text(monom, names)
        if magnitude == 1:
            body = mono
        else:
            number = str(magnitude.numerator) if magnitude.denominator == 1 else f"{magnitude.numerator}/{magnitude.denominator}"
            body = number if mono == "1" else f"{number}*{mono}"
        if not pieces:
            pieces.append(f"-{body}" if negative else body)
        else:
            pieces.append(f" - {body}" if negative else f" + {body}")
    return "".join(pieces)


def parse_polynomial(ctx: RingContext, text: str, order: MonomialOrder = GREVLEX) -> Polynomial:
    if not text.strip() or not _ALLOWED.match(text) or "**" in text:
        raise ReesError(ErrorCode.PARSE, f"not a polynomial in the text grammar: {text!r}")
    stray = set(_IDENTIFIER.findall(text)) - set(ctx.names)
    if stray:
        raise ReesError(ErrorCode.PARSE, f"unknown names {sorted(stray)}")
    local = {name: Symbol(name) for name in ctx.names}
    try:
        expr = parse_expr(text, local_dict=local, transformations=_TRANSFORMS, evaluate=True)
    except (SyntaxError, TypeError, ValueError, TokenError) as exc:
        raise ReesError(ErrorCode.PARSE, f"cannot parse {text!r}") from exc
    rational = RingContext(ctx.names, Field.rationals(), ctx.blocks).ring()
    try:
        exact = rational.from_expr(expr)
    except (ValueError, TypeError, CoercionFailed) as exc:
        raise ReesError(ErrorCode.PARSE, f"{text!r} is not a polynomial") from exc
    target = ctx.ring(order)
    terms = {m: ctx.field.fraction(int(c.numerator), int(c.denominator)) for m, c in exact.iterterms()}
    return target.from_dict({m: c for m, c in terms.items() if not ctx.field.is_zero(c)})


def format_many(polys: Sequence[Polynomial], field: Field, order: MonomialOrder = GREVLEX) -> list[str]:
    return [format_polynomial(f, field, order) for f in polys]


__all__ = ["format_many", "format_polynomial", "parse_polynomial"]
