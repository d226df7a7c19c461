"""Sparse exact linear algebra over formal combinations of canonical forms."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Union

from .canon import CanonicalForm

Scalar = Union[int, Fraction]


def as_fraction(x) -> Fraction:
    """Parse ``3``, ``"p/q"`` or a Fraction; floats are rejected."""
    if isinstance(x, float):
        raise TypeError("floating point coefficients are not allowed")
    return Fraction(x)


class LinComb:
    """Finite Q-combination of basis keys (canonical encodings).

    Zero coefficients are never stored.  Instances are treated as immutable
    values; arithmetic returns new objects.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[bytes, Scalar] | None = None):
        clean: dict[bytes, Fraction] = {}
        if terms:
            for k, c in terms.items():
                c = as_fraction(c)
                if c:
                    clean[k] = c
        self._terms = clean

    @classmethod
    def _raw(cls, terms: dict[bytes, Fraction]) -> LinComb:
        obj = cls.__new__(cls)
        obj._terms = terms
        return obj

    @classmethod
    def of(cls, form: CanonicalForm, coeff: Scalar = 1) -> LinComb:
        """Single-term combination; AS-vanishing forms give the empty one."""
        if form.sign == 0:
            return cls()
        return cls({form.encoding: form.sign * as_fraction(coeff)})

    @classmethod
    def sum(cls, items: Iterable[LinComb]) -> LinComb:
        acc: dict[bytes, Fraction] = {}
        for item in items:
            for k, c in item._terms.items():
                acc[k] = acc.get(k, 0) + c
        return cls._raw({k: c for k, c in acc.items() if c})

    @property
    def terms(self) -> dict[bytes, Fraction]:
        return dict(self._terms)

    def keys(self):
        return self._terms.keys()

    def items(self) -> list[tuple[bytes, Fraction]]:
        """Terms in the deterministic (byte-lexicographic) order."""
        return sorted(self._terms.items())

    def __getitem__(self, key: bytes) -> Fraction:
        return self._terms.get(key, Fraction(0))

    def __iter__(self) -> Iterator[bytes]:
        return iter(sorted(self._terms))

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, LinComb):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __add__(self, other: LinComb) -> LinComb:
        return combine(self, 1, other)

    def __sub__(self, other: LinComb) -> LinComb:
        return combine(self, -1, other)

    def __neg__(self) -> LinComb:
        return self.scale(-1)

    def __mul__(self, c: Scalar) -> LinComb:
        return self.scale(c)

    __rmul__ = __mul__

    def scale(self, c: Scalar) -> LinComb:
        c = as_fraction(c)
        if not c:
            return LinComb()
        return LinComb._raw({k: v * c for k, v in self._terms.items()})

    def map_keys(self, fn) -> LinComb:
        """Apply ``fn(key) -> (new_key, sign)`` termwise; sign 0 drops the term."""
        acc: dict[bytes, Fraction] = {}
        for k, c in self._terms.items():
            nk, s = fn(k)
            if s:
                acc[nk] = acc.get(nk, 0) + s * c
        return LinComb._raw({k: c for k, c in acc.items() if c})

    def leading(self) -> bytes:
        return max(self._terms)

    def normalized(self) -> LinComb:
        """Scaled so the leading coefficient is 1 (empty stays empty)."""
        if not self._terms:
            return self
        return self.scale(1 / self._terms[self.leading()])

    def __repr__(self) -> str:
        inner = ", ".join(f"{c}*{k.decode(errors='replace')}" for k, c in self.items())
        return f"LinComb({inner})"


def combine(a: LinComb, c: Scalar, b: LinComb) -> LinComb:
    """``a + c*b`` with zero cleanup."""
    c = as_fraction(c)
    out = dict(a._terms)
    if c:
        for k, v in b._terms.items():
            s = out.get(k, 0) + c * v
            if s:
                out[k] = s
            else:
                out.pop(k, None)
    return LinComb._raw(out)


class RelationSpan:
    """Reduced row-echelon basis of a subspace.

    Each row is monic in its pivot, the byte-largest key of the row, and no
    row mentions another row's pivot.  The reduced form of a subspace is
    unique, so it does not depend on the order relations arrive in.
    """

    def __init__(self) -> None:
        self._rows: dict[bytes, dict[bytes, Fraction]] = {}
        self._cols: dict[bytes, set[bytes]] = {}

    @property
    def rank(self) -> int:
        return len(self._rows)

    @property
    def pivots(self) -> list[bytes]:
        return sorted(self._rows, reverse=True)

    def rows(self) -> list[LinComb]:
        """Rows ordered by strictly decreasing pivot."""
        return [LinComb._raw(dict(self._rows[p])) for p in self.pivots]

    def _reduce_terms(self, terms: dict[bytes, Fraction]) -> dict[bytes, Fraction]:
        for p in [k for k in terms if k in self._rows]:
            c = terms.get(p)
            if not c:
                continue
            for k, v in self._rows[p].items():
                s = terms.get(k, 0) - c * v
                if s:
                    terms[k] = s
                else:
                    terms.pop(k, None)
        return terms

    def add(self, v: LinComb) -> bool:
        """Insert a relation; returns True when the rank grew."""
        terms = self._reduce_terms(dict(v._terms))
        if not terms:
            return False
        p = max(terms)
        inv = 1 / terms[p]
        row = {k: c * inv for k, c in terms.items()}
        for q in list(self._cols.get(p, ())):
            other = self._rows[q]
            c = other[p]
            for k, val in row.items():
                s = other.get(k, 0) - c * val
                if s:
                    if k not in other:
                        self._cols.setdefault(k, set()).add(q)
                    other[k] = s
                else:
                    other.pop(k, None)
                    self._cols[k].discard(q)
        self._rows[p] = row
        for k in row:
            self._cols.setdefault(k, set()).add(p)
        return True

    def reduce(self, v: LinComb) -> LinComb:
        return LinComb._raw(self._reduce_terms(dict(v._terms)))

    def contains(self, v: LinComb) -> bool:
        return not self.reduce(v)

    def __eq__(self, other) -> bool:
        if not isinstance(other, RelationSpan):
            return NotImplemented
        return self._rows == other._rows


def echelonize(relations: Iterable[LinComb]) -> RelationSpan:
    span = RelationSpan()
    for r in relations:
        span.add(r)
    return span


def reduce(v: LinComb, span: RelationSpan) -> LinComb:
    """Canonical coset representative of ``v`` modulo ``span``."""
    return span.reduce(v)
