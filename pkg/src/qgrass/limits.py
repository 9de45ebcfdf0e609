"""Maya diagrams, limit elements, towers, and the projections between them.

A Maya diagram is a strictly increasing integer sequence a_1 < a_2 < ... with
a_i = i from some point on; it is stored as the minimal prefix before the
identity tail.  A diagram of order r names a generator of the limit ring, and
its finite-level shadow is the maximal minor on the row-set
sorted({-a_i : i <= m}).  Negating the truncation is what makes the level
projections compatible: enlarging m appends exactly the new lowest row -m-1,
so the e-ladder strips it back off.  Truncation itself (maya_truncate) stays
on the diagram side and is not negated.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Callable, Optional

from .scalars import LaurentScalar, ZERO, ONE
from .qmatrix import LevelIndex
from .grassmann import MinorExpr, MinorWord, e_project, eval_embed
from .result import CheckItem, clip


@dataclass(frozen=True)
class MayaDiagram:
    """Canonical prefix of a virtual-cardinality-zero diagram."""

    prefix: tuple[int, ...] = ()

    def __post_init__(self):
        p = self.prefix
        if any(b <= a for a, b in zip(p, p[1:])):
            raise ValueError(f"prefix must strictly increase: {p}")
        if p and p[-1] >= len(p):
            raise ValueError(
                f"prefix {p} is not canonical: last entry must be below its index"
            )

    @classmethod
    def from_entries(cls, entries) -> MayaDiagram:
        """Canonicalize a full prefix by stripping entries already on the tail."""
        entries = tuple(int(v) for v in entries)
        while entries and entries[-1] == len(entries):
            entries = entries[:-1]
        return cls(entries)

    @classmethod
    def identity(cls) -> MayaDiagram:
        return cls(())

    @property
    def order(self) -> int:
        return len(self.prefix) + 1

    def entry(self, i: int) -> int:
        if i < 1:
            raise ValueError("entries are indexed from 1")
        return self.prefix[i - 1] if i <= len(self.prefix) else i

    def sort_key(self):
        return (len(self.prefix), self.prefix)

    def render(self) -> str:
        return "[" + ",".join(str(v) for v in self.prefix) + f"|{self.order}]"

    def to_json(self) -> dict:
        return {"prefix": list(self.prefix), "order": self.order}

    def __str__(self) -> str:
        return self.render()


_MAYA_RE = re.compile(r"^\[([0-9,\- ]*)\|\s*(\d+)\s*\]$")


def parse_maya(text: str) -> MayaDiagram:
    m = _MAYA_RE.match(text.strip())
    if not m:
        raise ValueError(f"bad Maya diagram literal {text!r}; expected [a1,...|r]")
    body = m.group(1).strip()
    entries = tuple(int(v) for v in body.split(",")) if body else ()
    declared = int(m.group(2))
    if declared != len(entries) + 1:
        raise ValueError(
            f"order {declared} does not match {len(entries)} prefix entries"
        )
    return MayaDiagram.from_entries(entries)


def maya_order(a: MayaDiagram) -> int:
    return a.order


def maya_truncate(a: MayaDiagram, m: int) -> tuple[int, ...]:
    """First m diagram entries with the implicit tail filled in."""
    if m < 1:
        raise ValueError("truncation length must be positive")
    return tuple(a.entry(i) for i in range(1, m + 1))


def row_support(a: MayaDiagram, m: int) -> tuple[int, ...]:
    """The level-m row-set of the diagram: negated first m entries, sorted."""
    return tuple(sorted(-a.entry(i) for i in range(1, m + 1)))


def maya_from_rows(rows, m: int) -> MayaDiagram:
    """Diagram whose level-m row support is the given row-set."""
    rows = tuple(int(r) for r in rows)
    if len(rows) != m:
        raise ValueError(f"expected {m} rows, got {len(rows)}")
    if any(b <= a for a, b in zip(rows, rows[1:])):
        raise ValueError(f"rows must strictly increase: {rows}")
    if rows and rows[0] < -m:
        raise ValueError(f"lowest row {rows[0]} below -{m}")
    return MayaDiagram.from_entries(-rows[m - 1 - i] for i in range(m))


# ---------------------------------------------------------------------------

MayaWord = tuple[MayaDiagram, ...]


class LimitElement:
    """A linear combination of words in the limit generators D_{a}."""

    __slots__ = ("_terms",)

    def __init__(self, terms: dict[MayaWord, LaurentScalar]):
        self._terms = terms

    @classmethod
    def zero(cls) -> LimitElement:
        return cls({})

    @classmethod
    def one(cls) -> LimitElement:
        return cls({(): ONE})

    @classmethod
    def generator(cls, a: MayaDiagram) -> LimitElement:
        return cls({(a,): ONE})

    def terms_sorted(self):
        return sorted(
            self._terms.items(),
            key=lambda t: (len(t[0]), [d.sort_key() for d in t[0]]),
        )

    def diagrams(self) -> set[MayaDiagram]:
        return {d for w in self._terms for d in w}

    def is_mapping_zero(self) -> bool:
        return not self._terms

    def __add__(self, other: LimitElement) -> LimitElement:
        if not isinstance(other, LimitElement):
            return NotImplemented
        out = dict(self._terms)
        for w, c in other._terms.items():
            s = out.get(w, ZERO) + c
            if s:
                out[w] = s
            else:
                out.pop(w, None)
        return LimitElement(out)

    def __sub__(self, other: LimitElement) -> LimitElement:
        return self + (-other)

    def __neg__(self) -> LimitElement:
        return LimitElement({w: -c for w, c in self._terms.items()})

    def scale(self, s: LaurentScalar) -> LimitElement:
        if s.is_zero():
            return LimitElement.zero()
        return LimitElement({w: c * s for w, c in self._terms.items()})

    def __mul__(self, other: LimitElement) -> LimitElement:
        if not isinstance(other, LimitElement):
            return NotImplemented
        out: dict[MayaWord, LaurentScalar] = {}
        for u, cu in self._terms.items():
            for v, cv in other._terms.items():
                s = out.get(u + v, ZERO) + cu * cv
                if s:
                    out[u + v] = s
                else:
                    out.pop(u + v, None)
        return LimitElement(out)

    def __eq__(self, other) -> bool:
        if not isinstance(other, LimitElement):
            return NotImplemented
        return limit_equal(self, other)

    def render(self) -> str:
        if not self._terms:
            return "0"
        pieces = []
        for w, c in self.terms_sorted():
            body = "*".join(f"D{d.render()}" for d in w) or "1"
            cs = c.render()
            if cs == "1":
                pieces.append(body)
            elif cs == "-1":
                pieces.append(f"-{body}")
            elif c.term_count() > 1:
                pieces.append(f"({cs})*{body}")
            else:
                pieces.append(f"{cs}*{body}")
        out = pieces[0]
        for piece in pieces[1:]:
            out += f" - {piece[1:]}" if piece.startswith("-") else f" + {piece}"
        return out

    def to_json(self) -> dict:
        return {
            "terms": [
                {"coeff": c.to_json(), "word": [d.to_json() for d in w]}
                for w, c in self.terms_sorted()
            ]
        }

    def __repr__(self) -> str:
        return f"<LimitElement {self.render()}>"


def rho_project(x: LimitElement, level: LevelIndex) -> MinorExpr:
    """Finite-level shadow: each diagram becomes its row-support minor, or 0.

    A diagram survives when the level is wide enough: m at least order-1 (so
    the support already carries the whole prefix) and the top row inside the
    window.
    """
    m, n = level.m, level.n
    out = MinorExpr.zero(level)
    for w, c in x.terms_sorted():
        factors = []
        dead = False
        for d in w:
            if m < d.order - 1:
                dead = True
                break
            support = row_support(d, m)
            if support[-1] > n - 1:
                dead = True
                break
            factors.append(support)
        if not dead:
            out = out + MinorExpr.from_word(MinorWord(level, tuple(factors)), c)
    return out


def minimal_dominating_level(*elements: LimitElement) -> LevelIndex:
    """Smallest (m, m+1) level at which every involved diagram survives."""
    m = 1
    for x in elements:
        for d in x.diagrams():
            m = max(m, d.order - 1)
            if d.prefix:
                m = max(m, -d.prefix[0])
    return LevelIndex(m, m + 1)


def limit_equal(x: LimitElement, y: LimitElement) -> bool:
    level = minimal_dominating_level(x, y)
    return eval_embed(rho_project(x - y, level)).is_zero()


# ---------------------------------------------------------------------------
# towers


@dataclass
class Tower:
    """A level-indexed family of Grassmannian elements, realized lazily."""

    slice_fn: Callable[[LevelIndex], MinorExpr]
    core: Optional[LimitElement] = None
    _cache: dict = field(default_factory=dict, repr=False)

    def slice(self, level: LevelIndex) -> MinorExpr:
        hit = self._cache.get(level)
        if hit is None:
            hit = self.slice_fn(level)
            self._cache[level] = hit
        return hit


def tower_from_finite(x: LimitElement) -> Tower:
    return Tower(slice_fn=lambda level: rho_project(x, level), core=x)


def tower_compat_items(t: Tower, pairs) -> list[CheckItem]:
    items = []
    for high, low in pairs:
        if not high.dominates(low):
            raise ValueError(f"{high} does not dominate {low}")
        pushed = e_project(t.slice(high), low)
        resid = eval_embed(pushed - t.slice(low))
        items.append(
            CheckItem(
                f"tower slice {high} -> {low}",
                resid.is_zero(),
                "" if resid.is_zero() else clip(resid.render()),
            )
        )
    return items


def tower_compat_check(t: Tower, pairs) -> bool:
    return all(item.passed for item in tower_compat_items(t, pairs))


def density_approx(t: Tower, k: int) -> LimitElement:
    """Lift the level-(k,k) slice back to a finite limit element.

    The lift inverts row_support factor by factor, so re-projecting to (k,k)
    reproduces the slice exactly.
    """
    if k < 1:
        raise ValueError("approximation level must be positive")
    level = LevelIndex(k, k)
    out = LimitElement.zero()
    for w, c in t.slice(level).terms_sorted():
        word = tuple(maya_from_rows(rows, k) for rows in w.factors)
        out = out + LimitElement({word: c})
    return out


def random_diagram(rng, max_order: int = 4, floor: int = -4) -> MayaDiagram:
    """Seeded sampler over canonical diagrams of bounded order and depth."""
    if max_order < 1:
        raise ValueError("max_order must be at least 1")
    order = rng.randint(1, max_order)
    if order == 1:
        return MayaDiagram.identity()
    entries = sorted(rng.sample(range(floor, order - 1), order - 1))
    return MayaDiagram.from_entries(entries)
