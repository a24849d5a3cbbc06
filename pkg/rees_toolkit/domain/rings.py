"""Ring contexts, monomial orders and the bigrading.

Polynomials are sympy ``PolyElement`` values; a ``RingContext`` fixes the
variable names, the ground field and the block each variable belongs to, and
hands out one cached ``PolyRing`` per monomial order. Elements of rings with
different orders must never be mixed, so every service converts explicitly
through ``RingContext.convert``.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from sympy import Symbol
from sympy.polys.orderings import ProductOrder, grevlex, lex
from sympy.polys.rings import PolyElement, PolyRing

from .errors import ErrorCode, NotBihomogeneousError, ReesError, RingMismatchError
from .scalars import Field

Monomial = Tuple[int, ...]
Polynomial = PolyElement


class VariableBlock(str, Enum):
    W = "w"
    X = "x"
    Y = "y"
    T = "t"


class OrderKind(str, Enum):
    LEX = "lex"
    GREVLEX = "grevlex"
    BLOCK = "block"


class Comparison(str, Enum):
    LT = "LT"
    EQ = "EQ"
    GT = "GT"


class PolyOp(str, Enum):
    ADD = "add"
    SUB = "sub"
    MUL = "mul"


_BASE_ORDERS = {OrderKind.LEX: lex, OrderKind.GREVLEX: grevlex}


@dataclass(frozen=True)
class _Project:
    """Picklable, hashable projection onto a subset of exponent positions."""

    indices: Tuple[int, ...]

    def __call__(self, monomial: Monomial) -> Monomial:
        return tuple(monomial[i] for i in self.indices)


@dataclass(frozen=True)
class MonomialOrder:
    """Lex, grevlex, or a block order given by named variable blocks.

    For a block order, ``blocks`` lists the leading blocks from most to least
    significant; variables not named in any block form one trailing block.
    ``inner`` gives the order inside each block (trailing block last).
    """

    kind: OrderKind = OrderKind.GREVLEX
    blocks: Tuple[Tuple[str, ...], ...] = ()
    inner: Tuple[OrderKind, ...] = ()

    @classmethod
    def grevlex(cls) -> "MonomialOrder":
        return cls(OrderKind.GREVLEX)

    @classmethod
    def lex(cls) -> "MonomialOrder":
        return cls(OrderKind.LEX)

    @classmethod
    def block(cls, *blocks: Sequence[str], inner: Optional[Sequence[OrderKind]] = None) -> "MonomialOrder":
        count = len(blocks) + 1
        kinds = tuple(inner) if inner is not None else (OrderKind.GREVLEX,) * count
        if len(kinds) != count or OrderKind.BLOCK in kinds:
            raise ReesError(ErrorCode.INVALID_CONFIG, "block order needs one base order per block")
        return cls(OrderKind.BLOCK, tuple(tuple(b) for b in blocks), kinds)

    @classmethod
    def parse(cls, name: str) -> "MonomialOrder":
        try:
            kind = OrderKind(name)
        except ValueError as exc:
            raise ReesError(ErrorCode.INVALID_CONFIG, f"unknown monomial order {name!r}") from exc
        if kind is OrderKind.BLOCK:
            raise ReesError(ErrorCode.INVALID_CONFIG, "block orders are built from variable blocks, not by name")
        return cls(kind)

    @property
    def name(self) -> str:
        if self.kind is not OrderKind.BLOCK:
            return self.kind.value
        parts = ["(" + ",".join(b) + ")" for b in self.blocks]
        return "block" + "".join(parts)

    def key(self, names: Sequence[str]) -> Callable[[Monomial], object]:
        if self.kind is not OrderKind.BLOCK:
            return _BASE_ORDERS[self.kind]
        position = {name: i for i, name in enumerate(names)}
        seen: set[str] = set()
        parts = []
        for block, kind in zip(self.blocks, self.inner):
            missing = [v for v in block if v not in position]
            if missing:
                raise RingMismatchError(ErrorCode.RING_MISMATCH, f"order names unknown variables {missing}")
            seen.update(block)
            parts.append((_BASE_ORDERS[kind], _Project(tuple(position[v] for v in block))))
        rest = tuple(i for i, v in enumerate(names) if v not in seen)
        if rest:
            parts.append((_BASE_ORDERS[self.inner[-1]], _Project(rest)))
        return ProductOrder(*parts)


GREVLEX = MonomialOrder.grevlex()


@lru_cache(maxsize=256)
def _ring(names: Tuple[str, ...], field: Field, order: MonomialOrder) -> PolyRing:
    symbols = tuple(Symbol(n) for n in names)
    return PolyRing(symbols, field.domain, order.key(names))


def _block_of(name: str) -> VariableBlock:
    head = name[:1]
    if head == "w":
        return VariableBlock.W
    if head == "y":
        return VariableBlock.Y
    if name == "t":
        return VariableBlock.T
    return VariableBlock.X


def x_name(row: int, col: int, columns: int) -> str:
    """Name of x_{row,col}; concatenated indices while they stay single digits."""

    if columns <= 9 and row <= 9:
        return f"x{row}{col}"
    return f"x_{row}_{col}"


@dataclass(frozen=True)
class RingContext:
    names: Tuple[str, ...]
    field: Field
    blocks: Tuple[VariableBlock, ...]

    def __post_init__(self) -> None:
        if len(set(self.names)) != len(self.names):
            raise RingMismatchError(ErrorCode.RING_MISMATCH, f"duplicate variable names in {self.names}")
        if len(self.blocks) != len(self.names):
            raise RingMismatchError(ErrorCode.RING_MISMATCH, "every variable needs a block")

    # -- constructors ------------------------------------------------------
    @classmethod
    def from_names(cls, names: Iterable[str], field: Field) -> "RingContext":
        names = tuple(names)
        return cls(names, field, tuple(_block_of(n) for n in names))

    @classmethod
    def plane(cls, field: Field, n: int = 3) -> "RingContext":
        return cls.from_names((f"w{i}" for i in range(1, n + 1)), field)

    @classmethod
    def rees(cls, field: Field, columns: int, y_count: int = 0, n: int = 3) -> "RingContext":
        """``w1..wn``, then ``x_{ij}`` column-major, then ``y1..yL``."""

        names = [f"w{i}" for i in range(1, n + 1)]
        names += [x_name(i, j, columns) for j in range(1, columns + 1) for i in range(1, n + 1)]
        names += [f"y{l}" for l in range(1, y_count + 1)]
        return cls.from_names(names, field)

    @classmethod
    def flat(cls, field: Field, count: int, n: int = 3) -> "RingContext":
        names = [f"w{i}" for i in range(1, n + 1)] + [f"x{i}" for i in range(1, count + 1)]
        return cls.from_names(names, field)

    # -- rings and conversion ----------------------------------------------
    def ring(self, order: MonomialOrder = GREVLEX) -> PolyRing:
        return _ring(self.names, self.field, order)

    @property
    def default_ring(self) -> PolyRing:
        return self.ring(GREVLEX)

    @property
    def nvars(self) -> int:
        return len(self.names)

    def gen(self, name: str, order: MonomialOrder = GREVLEX) -> Polynomial:
        try:
            return self.ring(order).gens[self.names.index(name)]
        except ValueError as exc:
            raise RingMismatchError(ErrorCode.RING_MISMATCH, f"no variable {name!r} in context") from exc

    def gens(self, order: MonomialOrder = GREVLEX) -> Tuple[Polynomial, ...]:
        return self.ring(order).gens

    def names_in(self, *blocks: VariableBlock) -> Tuple[str, ...]:
        return tuple(n for n, b in zip(self.names, self.blocks) if b in blocks)

    def extend(self, name: str = "t", block: VariableBlock = VariableBlock.T) -> "RingContext":
        """Prepend an auxiliary variable."""

        if name in self.names:
            raise RingMismatchError(ErrorCode.RING_MISMATCH, f"variable {name!r} already present")
        return RingContext((name,) + self.names, self.field, (block,) + self.blocks)

    def drop(self, names: Iterable[str]) -> "RingContext":
        gone = set(names)
        kept = [(n, b) for n, b in zip(self.names, self.blocks) if n not in gone]
        return RingContext(tuple(n for n, _ in kept), self.field, tuple(b for _, b in kept))

    def owns(self, f: Polynomial) -> bool:
        ring = f.ring
        return tuple(str(s) for s in ring.symbols) == self.names and ring.domain == self.field.domain

    def require(self, *polys: Polynomial) -> None:
        for f in polys:
            if not self.owns(f):
                raise RingMismatchError(
                    ErrorCode.RING_MISMATCH,
                    "polynomial belongs to another ring context",
                    {"expected": list(self.names), "found": [str(s) for s in f.ring.symbols]},
                )

    def convert(self, f: Polynomial, order: MonomialOrder = GREVLEX) -> Polynomial:
        """Move ``f`` into this context's ring for ``order``.

        Variables may be reordered or added; using a variable the context does
        not have is a ring mismatch.
        """

        target = self.ring(order)
        if f.ring == target:
            return f
        if f.ring.domain != target.domain:
            raise RingMismatchError(ErrorCode.FIELD_MISMATCH, "polynomial has another ground field")
        position = {n: i for i, n in enumerate(self.names)}
        source = [str(s) for s in f.ring.symbols]
        terms: Dict[Monomial, object] = {}
        for monom, coeff in f.iterterms():
            exps = [0] * len(self.names)
            for name, e in zip(source, monom):
                if not e:
                    continue
                if name not in position:
                    raise RingMismatchError(
                        ErrorCode.RING_MISMATCH, f"variable {name!r} is not in the target context"
                    )
                exps[position[name]] = e
            terms[tuple(exps)] = coeff
        return target.from_dict(terms)

    def zero(self, order: MonomialOrder = GREVLEX) -> Polynomial:
        return self.ring(order).zero

    def monomial(self, exponents: Dict[str, int], order: MonomialOrder = GREVLEX) -> Polynomial:
        monom = tuple(exponents.get(n, 0) for n in self.names)
        return self.ring(order).from_dict({monom: self.field.one})

    def block_degree(self, monom: Monomial, *blocks: VariableBlock) -> int:
        return sum(e for e, b in zip(monom, self.blocks) if b in blocks)


# -- operations -------------------------------------------------------------

def compare(order: MonomialOrder, m1: Monomial, m2: Monomial, ctx: RingContext) -> Comparison:
    if len(m1) != ctx.nvars or len(m2) != ctx.nvars:
        raise RingMismatchError(ErrorCode.RING_MISMATCH, "monomial length does not match the ring context")
    key = order.key(ctx.names)
    k1, k2 = key(m1), key(m2)
    if k1 == k2:
        return Comparison.EQ
    return Comparison.GT if k1 > k2 else Comparison.LT


def poly_arithmetic(f: Polynomial, g: Polynomial, op: PolyOp) -> Polynomial:
    if f.ring != g.ring:
        raise RingMismatchError(ErrorCode.RING_MISMATCH, "operands live in different rings")
    if op is PolyOp.ADD:
        return f + g
    if op is PolyOp.SUB:
        return f - g
    return f * g


def total_degree(monom: Monomial) -> int:
    return sum(monom)


def degree(f: Polynomial) -> int:
    """Total degree of a homogeneous nonzero polynomial."""

    if not f:
        raise ReesError(ErrorCode.ZERO_POLYNOMIAL, "the zero polynomial has no degree")
    degrees = {sum(m) for m in f.itermonoms()}
    if len(degrees) != 1:
        raise ReesError(ErrorCode.NOT_HOMOGENEOUS, f"terms of degrees {sorted(degrees)}")
    return degrees.pop()


def is_homogeneous(f: Polynomial) -> bool:
    return len({sum(m) for m in f.itermonoms()}) <= 1


def bidegree(f: Polynomial, ctx: RingContext) -> Tuple[int, int]:
    """(w-degree, x/y-degree); the auxiliary ``t`` is not graded."""

    ctx.require(f)
    if not f:
        raise ReesError(ErrorCode.ZERO_POLYNOMIAL, "the zero polynomial has no bidegree")
    found: Dict[Tuple[int, int], Monomial] = {}
    for monom in f.itermonoms():
        bd = (
            ctx.block_degree(monom, VariableBlock.W),
            ctx.block_degree(monom, VariableBlock.X, VariableBlock.Y),
        )
        found.setdefault(bd, monom)
        if len(found) > 1:
            (b1, m1), (b2, m2) = list(found.items())[:2]
            raise NotBihomogeneousError(
                ErrorCode.NOT_BIHOMOGENEOUS,
                f"terms of bidegrees {b1} and {b2}",
                {"witnesses": [monomial_text(m1, ctx.names), monomial_text(m2, ctx.names)]},
            )
    return next(iter(found))


def monomial_text(monom: Monomial, names: Sequence[str]) -> str:
    parts = []
    for name, e in zip(names, monom):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts) if parts else "1"


def monomials_of_degree(nvars: int, t: int) -> List[Monomial]:
    """All exponent vectors of total degree ``t``, descending in grevlex."""

    if t < 0:
        return []
    out: List[Monomial] = []

    def fill(prefix: List[int], left: int, slots: int) -> None:
        if slots == 1:
            out.append(tuple(prefix + [left]))
            return
        for e in range(left, -1, -1):
            fill(prefix + [e], left - e, slots - 1)

    if nvars == 0:
        return [()] if t == 0 else []
    fill([], t, nvars)
    out.sort(key=grevlex, reverse=True)
    return out


__all__ = [
    "Comparison",
    "GREVLEX",
    "Monomial",
    "MonomialOrder",
    "OrderKind",
    "PolyOp",
    "Polynomial",
    "RingContext",
    "VariableBlock",
    "bidegree",
    "compare",
    "degree",
    "is_homogeneous",
    "monomial_text",
    "monomials_of_degree",
    "poly_arithmetic",
    "total_degree",
    "x_name",
]
