from __future__ import annotations

import logging
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from sympy import Matrix, Poly, Symbol

from .errors import (
    DimensionMismatch,
    Degenerate,
    NonSymmetric,
    ParseError,
    UnknownName,
    ZeroForm,
    ZeroTwist,
)
from .utils import IntMatrix, as_matrix, determinant

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class Signature:
    positive: int
    negative: int

    @property
    def rank(self) -> int:
        return self.positive + self.negative

    def __add__(self, other: "Signature") -> "Signature":
        return Signature(self.positive + other.positive, self.negative + other.negative)

    def as_tuple(self) -> Tuple[int, int]:
        return (self.positive, self.negative)


@dataclass(frozen=True)
class IntegralLattice:
    """A nondegenerate symmetric integral Gram matrix, immutable."""

    gram: IntMatrix
    label: Optional[str] = field(default=None, compare=False)

    @property
    def rank(self) -> int:
        return len(self.gram)

    @property
    def even(self) -> bool:
        return all(self.gram[i][i] % 2 == 0 for i in range(self.rank))

    @classmethod
    def empty(cls) -> "IntegralLattice":
        return cls(gram=(), label="0")

    def __str__(self) -> str:
        return self.label or f"lattice(rank={self.rank})"


def make_lattice(gram: Sequence[Sequence[int]], label: Optional[str] = None) -> IntegralLattice:
    g = as_matrix(gram)
    n = len(g)
    if any(len(row) != n for row in g):
        raise DimensionMismatch(f"Gram matrix must be square, got {n} rows of lengths "
                                f"{sorted({len(r) for r in g})}")
    for i in range(n):
        for j in range(i + 1, n):
            if g[i][j] != g[j][i]:
                raise NonSymmetric(f"gram[{i}][{j}]={g[i][j]} but gram[{j}][{i}]={g[j][i]}")
    if determinant(g) == 0:
        raise Degenerate("Gram matrix has zero determinant")
    return IntegralLattice(gram=g, label=label)


# Negated Cartan matrix of E8, Bourbaki numbering (branch node 4 joined to node 2).
_E8_EDGES = ((0, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (1, 3))


def _e8_gram() -> IntMatrix:
    g = [[-2 if i == j else 0 for j in range(8)] for i in range(8)]
    for a, b in _E8_EDGES:
        g[a][b] = g[b][a] = 1
    return as_matrix(g)


def standard_lattice(name: str) -> IntegralLattice:
    key = name.strip().upper()
    if key == "U":
        return IntegralLattice(gram=((0, 1), (1, 0)), label="U")
    if key == "E8":
        return IntegralLattice(gram=_e8_gram(), label="E8")
    raise UnknownName(f"unknown standard lattice {name!r} (known: U, E8)")


def twist(lat: IntegralLattice, k: int) -> IntegralLattice:
    if k == 0:
        raise ZeroTwist("twist factor must be nonzero")
    if k == 1:
        return lat
    gram = tuple(tuple(k * x for x in row) for row in lat.gram)
    return IntegralLattice(gram=gram, label=f"{lat}({k})")


def direct_sum(*parts: IntegralLattice) -> IntegralLattice:
    nonempty = [p for p in parts if p.rank]
    if len(nonempty) == 1:
        return nonempty[0]
    n = sum(p.rank for p in nonempty)
    g = [[0] * n for _ in range(n)]
    off = 0
    for p in nonempty:
        for i in range(p.rank):
            for j in range(p.rank):
                g[off + i][off + j] = p.gram[i][j]
        off += p.rank
    label = "+".join(str(p) for p in nonempty) if nonempty else "0"
    return IntegralLattice(gram=as_matrix(g), label=label)


def rank_one(k: int) -> IntegralLattice:
    if k == 0:
        raise ZeroForm("rank-one form must be nonzero")
    return IntegralLattice(gram=((k,),), label=f"<{k}>")


def enriques_involution_invariant(n: int) -> IntegralLattice:
    """U(2) + E8(2) + <-2(n-1)>, invariant lattice of a natural Enriques involution on S^[n]."""
    if n < 2:
        raise ZeroForm("the <-2(n-1)> summand needs n >= 2")
    lat = direct_sum(
        twist(standard_lattice("U"), 2),
        twist(standard_lattice("E8"), 2),
        rank_one(-2 * (n - 1)),
    )
    return IntegralLattice(gram=lat.gram, label=f"U(2)+E8(2)+<{-2 * (n - 1)}>")


def _check_vector(lat: IntegralLattice, v: Sequence[int]) -> None:
    if len(v) != lat.rank:
        raise DimensionMismatch(f"vector of length {len(v)} for a rank-{lat.rank} lattice")


def inner_product(lat: IntegralLattice, v: Sequence, w: Sequence):
    _check_vector(lat, v)
    _check_vector(lat, w)
    return sum(v[i] * lat.gram[i][j] * w[j]
               for i in range(lat.rank) for j in range(lat.rank)
               if lat.gram[i][j])


def q_value(lat: IntegralLattice, v: Sequence):
    return inner_product(lat, v, v)


def lattice_determinant(lat: IntegralLattice) -> int:
    return determinant(lat.gram)


def signature(lat: IntegralLattice) -> Signature:
    """Sylvester count by exact symmetric pivoting over the rationals."""
    a: List[List[Fraction]] = [[Fraction(x) for x in row] for row in lat.gram]
    pos = neg = 0
    while a:
        n = len(a)
        piv = next((i for i in range(n) if a[i][i] != 0), None)
        if piv is None:
            pair = next(((i, j) for i in range(n) for j in range(i + 1, n) if a[i][j] != 0), None)
            if pair is None:
                # zero block; cannot happen for nondegenerate input
                break
            i, j = pair
            # congruence e_i -> e_i + e_j makes the diagonal entry 2*a[i][j] != 0
            for t in range(n):
                a[i][t] += a[j][t]
            for t in range(n):
                a[t][i] += a[t][j]
            piv = i
        p = a[piv][piv]
        if p > 0:
            pos += 1
        else:
            neg += 1
        rest = [t for t in range(n) if t != piv]
        a = [[a[r][c] - a[r][piv] * a[piv][c] / p for c in rest] for r in rest]
    return Signature(pos, neg)


def signature_by_charpoly(lat: IntegralLattice) -> Signature:
    """Independent count: Sturm sequences on the exact characteristic polynomial."""
    if lat.rank == 0:
        return Signature(0, 0)
    x = Symbol("x")
    p = Poly(Matrix(lat.gram).charpoly(x).as_expr(), x)
    pos = int(p.count_roots(0, None))
    return Signature(pos, lat.rank - pos)


def is_hyperbolic(lat: IntegralLattice) -> bool:
    return signature(lat).positive == 1 and lat.rank >= 1


# --- constructor expressions: U, E8, twist(e,k), sum(e1,e2,...), rank1(k) ---

_TOKEN = re.compile(r"\s*(?:(?P<int>[-+]?\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<sym>[(),]))")


class _ExprParser:
    def __init__(self, text: str):
        self.text = text
        self.tokens: List[Tuple[str, str, int]] = []
        pos = 0
        while pos < len(text):
            if text[pos:].strip() == "":
                break
            m = _TOKEN.match(text, pos)
            if not m or m.end() == pos:
                raise ParseError(f"unexpected character at offset {pos}", source=text)
            kind = m.lastgroup or ""
            self.tokens.append((kind, m.group(kind), m.start(kind)))
            pos = m.end()
        self.i = 0

    def _peek(self) -> Tuple[str, str, int]:
        if self.i < len(self.tokens):
            return self.tokens[self.i]
        return ("end", "", len(self.text))

    def _take(self, kind: str, value: Optional[str] = None) -> str:
        k, v, off = self._peek()
        if k != kind or (value is not None and v != value):
            want = value or kind
            raise ParseError(f"expected {want!r} at offset {off}", source=self.text)
        self.i += 1
        return v

    def _int(self) -> int:
        return int(self._take("int"))

    def parse(self) -> IntegralLattice:
        lat = self._expr()
        k, _, off = self._peek()
        if k != "end":
            raise ParseError(f"trailing input at offset {off}", source=self.text)
        return lat

    def _expr(self) -> IntegralLattice:
        name = self._take("name")
        low = name.lower()
        if low in ("u", "e8"):
            return standard_lattice(name)
        if low == "twist":
            self._take("sym", "(")
            inner = self._expr()
            self._take("sym", ",")
            k = self._int()
            self._take("sym", ")")
            return twist(inner, k)
        if low == "sum":
            self._take("sym", "(")
            parts = [self._expr()]
            while self._peek()[1] == ",":
                self._take("sym", ",")
                parts.append(self._expr())
            self._take("sym", ")")
            if len(parts) < 2:
                raise ParseError("sum() needs at least two operands", source=self.text)
            return direct_sum(*parts)
        if low == "rank1":
            self._take("sym", "(")
            k = self._int()
            self._take("sym", ")")
            return rank_one(k)
        raise UnknownName(f"unknown lattice constructor {name!r}")


def parse_lattice_expression(text: str) -> IntegralLattice:
    lat = _ExprParser(text).parse()
    log.debug("parsed %r as rank-%d lattice", text, lat.rank)
    return lat
