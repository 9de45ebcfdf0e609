"""Finite-level quantum matrix algebras.

Generators a[i,j] are indexed by a row window -m..n-1 and a column window
(-m..n-1, or -m..-1 for the rectangular variant).  Words are reduced to the
normal form whose letters ascend in (row, col) order using the exchange
relations

    a[i,j] a[k,j] = q^-1 a[k,j] a[i,j]                    (i < k)
    a[i,j] a[i,l] = q^-1 a[i,l] a[i,j]                    (j < l)
    a[i,j] a[k,l] = a[k,l] a[i,j]                         (i < k, j > l)
    a[i,j] a[k,l] - a[k,l] a[i,j] = (q^-1 - q) a[k,j] a[i,l]   (i < k, j < l)

Every rewrite step replaces a word by lexicographically smaller words of the
same length, so reduction terminates; a fuel counter still guards the loop and
trips a hard internal error if the bound is ever exceeded.
"""
from __future__ import annotations

from dataclasses import dataclass

from .scalars import LaurentScalar, ZERO, ONE, Q

Letter = tuple[int, int]
Word = tuple[Letter, ...]

_Q_MINUS_QINV = LaurentScalar({1: 1, -1: -1})


class RewriteFuelError(RuntimeError):
    """Internal error: the rewriting engine exceeded its step bound."""


class LevelMismatchError(ValueError):
    """Operands live at different levels."""


@dataclass(frozen=True)
class LevelIndex:
    """A finite level: rows -m..n-1, columns -m..-1 when rect else -m..n-1."""

    m: int
    n: int
    rect: bool = False

    def __post_init__(self):
        if self.m < 1 or self.n < 0:
            raise ValueError(f"bad level ({self.m},{self.n})")

    def row_range(self) -> range:
        return range(-self.m, self.n)

    def col_range(self) -> range:
        return range(-self.m, 0) if self.rect else range(-self.m, self.n)

    def contains_letter(self, letter: Letter) -> bool:
        i, j = letter
        return i in self.row_range() and j in self.col_range()

    def total(self) -> int:
        return self.m + self.n

    def dominates(self, other: LevelIndex) -> bool:
        return self.rect == other.rect and self.m >= other.m and self.n >= other.n

    def square(self) -> LevelIndex:
        return LevelIndex(self.m, self.n)

    def to_json(self):
        return [self.m, self.n]

    def __str__(self) -> str:
        return f"({self.m},{self.n}{',rect' if self.rect else ''})"


# ---------------------------------------------------------------------------
# rewriting engine

_WTL_CACHE: dict[tuple[Word, Letter], dict[Word, LaurentScalar]] = {}
_FUEL = [0]


def _charge_fuel() -> None:
    _FUEL[0] -= 1
    if _FUEL[0] < 0:
        raise RewriteFuelError("rewriting fuel exhausted; relations do not terminate?")


def _set_fuel(word_len: int, span: int, pairs: int = 1) -> None:
    _FUEL[0] = max(_FUEL[0], 64 * pairs * (word_len + 2) ** 2 * (span + 2) ** 2)


def _wtl(word: Word, x: Letter) -> dict[Word, LaurentScalar]:
    """Multiply a normal word by one letter on the right; result is normal."""
    key = (word, x)
    hit = _WTL_CACHE.get(key)
    if hit is not None:
        return hit
    _charge_fuel()
    if not word or word[-1] <= x:
        res = {word + (x,): ONE}
    else:
        v = word[:-1]
        y = word[-1]
        r1, c1 = y
        r2, c2 = x
        if r1 == r2 or c1 == c2:
            res = _poly_times_letter(_wtl(v, x), y, Q)
        elif c1 < c2:
            res = _poly_times_letter(_wtl(v, x), y, ONE)
        else:
            res = _poly_times_letter(_wtl(v, x), y, ONE)
            corr = _poly_times_letter(_wtl(v, (r2, c1)), (r1, c2), _Q_MINUS_QINV)
            res = dict(res)
            for w, c in corr.items():
                s = res.get(w, ZERO) + c
                if s:
                    res[w] = s
                else:
                    res.pop(w, None)
    _WTL_CACHE[key] = res
    return res


def _poly_times_letter(poly: dict[Word, LaurentScalar], y: Letter, scale: LaurentScalar):
    out: dict[Word, LaurentScalar] = {}
    for w, c in poly.items():
        cc = c * scale
        for w2, c2 in _wtl(w, y).items():
            s = out.get(w2, ZERO) + cc * c2
            if s:
                out[w2] = s
            else:
                out.pop(w2, None)
    return out


def _normalize_word(word: Word) -> dict[Word, LaurentScalar]:
    acc: dict[Word, LaurentScalar] = {(): ONE}
    for letter in word:
        acc = _poly_times_letter(acc, letter, ONE)
    return acc


# ---------------------------------------------------------------------------


class NCPoly:
    """A finite k_q-linear combination of normal words at one level."""

    __slots__ = ("level", "_terms")

    def __init__(self, level: LevelIndex, terms: dict[Word, LaurentScalar]):
        # private constructor; terms assumed normal and zero-free
        self.level = level
        self._terms = terms

    # ---- factories ----

    @classmethod
    def zero(cls, level: LevelIndex) -> NCPoly:
        return cls(level, {})

    @classmethod
    def one(cls, level: LevelIndex) -> NCPoly:
        return cls(level, {(): ONE})

    @classmethod
    def scalar(cls, level: LevelIndex, s: LaurentScalar) -> NCPoly:
        return cls(level, {(): s} if s else {})

    @classmethod
    def generator(cls, level: LevelIndex, i: int, j: int) -> NCPoly:
        if not level.contains_letter((i, j)):
            raise ValueError(f"generator a[{i},{j}] outside level {level}")
        return cls(level, {((i, j),): ONE})

    # ---- views ----

    def is_zero(self) -> bool:
        return not self._terms

    def terms_sorted(self) -> list[tuple[Word, LaurentScalar]]:
        return sorted(self._terms.items(), key=lambda t: (len(t[0]), t[0]))

    def term_count(self) -> int:
        return len(self._terms)

    def coefficient(self, word: Word) -> LaurentScalar:
        return self._terms.get(word, ZERO)

    def max_word_length(self) -> int:
        return max((len(w) for w in self._terms), default=0)

    def graded_parts(self) -> dict[int, NCPoly]:
        out: dict[int, dict[Word, LaurentScalar]] = {}
        for w, c in self._terms.items():
            out.setdefault(len(w), {})[w] = c
        return {d: NCPoly(self.level, t) for d, t in out.items()}

    # ---- arithmetic ----

    def _require_same_level(self, other: NCPoly) -> None:
        if self.level != other.level:
            raise LevelMismatchError(f"{self.level} vs {other.level}")

    def __add__(self, other: NCPoly) -> NCPoly:
        if not isinstance(other, NCPoly):
            return NotImplemented
        self._require_same_level(other)
        out = dict(self._terms)
        for w, c in other._terms.items():
            s = out.get(w, ZERO) + c
            if s:
                out[w] = s
            else:
                out.pop(w, None)
        return NCPoly(self.level, out)

    def __sub__(self, other: NCPoly) -> NCPoly:
        return self + (-other)

    def __neg__(self) -> NCPoly:
        return NCPoly(self.level, {w: -c for w, c in self._terms.items()})

    def scale(self, s: LaurentScalar) -> NCPoly:
        if s.is_zero():
            return NCPoly.zero(self.level)
        return NCPoly(self.level, {w: c * s for w, c in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, NCPoly):
            return nc_mul(self, other)
        if isinstance(other, LaurentScalar):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, LaurentScalar):
            return self.scale(other)
        return NotImplemented

    def __eq__(self, other) -> bool:
        if not isinstance(other, NCPoly):
            return NotImplemented
        return self.level == other.level and self._terms == other._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    # ---- text / JSON ----

    def render(self) -> str:
        if not self._terms:
            return "0"
        pieces = []
        for w, c in self.terms_sorted():
            body = render_word(w)
            cs = c.render()
            if not body:
                pieces.append(cs if c.term_count() == 1 else f"({cs})")
            elif cs == "1":
                pieces.append(body)
            elif cs == "-1":
                pieces.append(f"-{body}")
            elif c.term_count() > 1:
                pieces.append(f"({cs})*{body}")
            else:
                pieces.append(f"{cs}*{body}")
        out = pieces[0]
        for piece in pieces[1:]:
            if piece.startswith("-"):
                out += f" - {piece[1:]}"
            else:
                out += f" + {piece}"
        return out

    def to_json(self) -> dict:
        data = {
            "level": self.level.to_json(),
            "terms": [
                {"coeff": c.to_json(), "word": [list(l) for l in w]}
                for w, c in self.terms_sorted()
            ],
        }
        if self.level.rect:
            data["rect"] = True
        return data

    @classmethod
    def from_json(cls, data) -> NCPoly:
        level = LevelIndex(int(data["level"][0]), int(data["level"][1]), bool(data.get("rect")))
        out = cls.zero(level)
        for t in data["terms"]:
            word = tuple((int(i), int(j)) for i, j in t["word"])
            out = out + normalize(level, word, LaurentScalar.from_json(t["coeff"]))
        return out

    def __repr__(self) -> str:
        return f"<NCPoly {self.level} {self.render()}>"


def render_word(word: Word) -> str:
    return "*".join(f"a[{i},{j}]" for i, j in word)


def normalize(level: LevelIndex, word, coeff: LaurentScalar = ONE) -> NCPoly:
    """Normal form of coeff times the (free) word of generators."""
    word = tuple((int(i), int(j)) for i, j in word)
    for letter in word:
        if not level.contains_letter(letter):
            raise ValueError(f"letter a[{letter[0]},{letter[1]}] outside level {level}")
    if coeff.is_zero():
        return NCPoly.zero(level)
    _set_fuel(len(word), level.total())
    terms = {w: c * coeff for w, c in _normalize_word(word).items()}
    return NCPoly(level, terms)


def nc_mul(x: NCPoly, y: NCPoly) -> NCPoly:
    """Product in the quantum matrix algebra."""
    x._require_same_level(y)
    level = x.level
    out: dict[Word, LaurentScalar] = {}
    if not x._terms or not y._terms:
        return NCPoly.zero(level)
    _set_fuel(
        x.max_word_length() + y.max_word_length(),
        level.total(),
        len(x._terms) * len(y._terms),
    )
    for u, cu in x._terms.items():
        for v, cv in y._terms.items():
            acc = {u: cu * cv}
            for letter in v:
                acc = _poly_times_letter(acc, letter, ONE)
            for w, c in acc.items():
                s = out.get(w, ZERO) + c
                if s:
                    out[w] = s
                else:
                    out.pop(w, None)
    return NCPoly(level, out)


# ---------------------------------------------------------------------------
# coalgebra structure (square levels only)


class TensorPoly:
    """Element of A (x) B for two level algebras, in the normal word pair basis.

    The product is componentwise, (a (x) b)(c (x) d) = ac (x) bd; no braiding.
    """

    __slots__ = ("left_level", "right_level", "_terms")

    def __init__(self, left_level, right_level, terms):
        self.left_level = left_level
        self.right_level = right_level
        self._terms = terms

    @classmethod
    def zero(cls, left_level, right_level) -> TensorPoly:
        return cls(left_level, right_level, {})

    @classmethod
    def outer(cls, x: NCPoly, y: NCPoly) -> TensorPoly:
        terms = {}
        for u, cu in x._terms.items():
            for v, cv in y._terms.items():
                terms[(u, v)] = cu * cv
        return cls(x.level, y.level, terms)

    def is_zero(self) -> bool:
        return not self._terms

    def terms_sorted(self):
        return sorted(
            self._terms.items(),
            key=lambda t: (len(t[0][0]), len(t[0][1]), t[0]),
        )

    def _require_same_levels(self, other: TensorPoly) -> None:
        if self.left_level != other.left_level or self.right_level != other.right_level:
            raise LevelMismatchError("tensor levels differ")

    def __add__(self, other: TensorPoly) -> TensorPoly:
        if not isinstance(other, TensorPoly):
            return NotImplemented
        self._require_same_levels(other)
        out = dict(self._terms)
        for k, c in other._terms.items():
            s = out.get(k, ZERO) + c
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return TensorPoly(self.left_level, self.right_level, out)

    def __sub__(self, other: TensorPoly) -> TensorPoly:
        return self + (-other)

    def __neg__(self) -> TensorPoly:
        return TensorPoly(
            self.left_level, self.right_level, {k: -c for k, c in self._terms.items()}
        )

    def scale(self, s: LaurentScalar) -> TensorPoly:
        if s.is_zero():
            return TensorPoly.zero(self.left_level, self.right_level)
        return TensorPoly(
            self.left_level, self.right_level, {k: c * s for k, c in self._terms.items()}
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, TensorPoly):
            return NotImplemented
        return (
            self.left_level == other.left_level
            and self.right_level == other.right_level
            and self._terms == other._terms
        )

    def __bool__(self) -> bool:
        return bool(self._terms)

    def group_by_left(self) -> dict[Word, NCPoly]:
        """Collect right-factor polynomials per left word."""
        out: dict[Word, dict[Word, LaurentScalar]] = {}
        for (u, v), c in self._terms.items():
            out.setdefault(u, {})[v] = c
        return {u: NCPoly(self.right_level, t) for u, t in out.items()}

    def group_by_right(self) -> dict[Word, NCPoly]:
        out: dict[Word, dict[Word, LaurentScalar]] = {}
        for (u, v), c in self._terms.items():
            out.setdefault(v, {})[u] = c
        return {v: NCPoly(self.left_level, t) for v, t in out.items()}

    def map_factors(self, left_fn, right_fn) -> TensorPoly:
        """Apply word -> NCPoly maps to both factors and re-expand."""
        acc: TensorPoly | None = None
        for (u, v), c in self._terms.items():
            piece = TensorPoly.outer(left_fn(u), right_fn(v)).scale(c)
            acc = piece if acc is None else acc + piece
        if acc is None:
            raise ValueError("cannot map factors of an empty tensor without target levels")
        return acc

    def render(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for (u, v), c in self.terms_sorted():
            cs = c.render()
            lu = render_word(u) or "1"
            rv = render_word(v) or "1"
            parts.append(f"({cs})*{lu}(x){rv}")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"<TensorPoly {self.render()}>"


def tensor_mul(x: TensorPoly, y: TensorPoly) -> TensorPoly:
    x._require_same_levels(y)
    out: dict[tuple[Word, Word], LaurentScalar] = {}
    for (u1, v1), c1 in x._terms.items():
        for (u2, v2), c2 in y._terms.items():
            left = nc_mul(NCPoly(x.left_level, {u1: ONE}), NCPoly(x.left_level, {u2: ONE}))
            right = nc_mul(
                NCPoly(x.right_level, {v1: ONE}), NCPoly(x.right_level, {v2: ONE})
            )
            c = c1 * c2
            for u, cu in left._terms.items():
                for v, cv in right._terms.items():
                    s = out.get((u, v), ZERO) + c * cu * cv
                    if s:
                        out[(u, v)] = s
                    else:
                        out.pop((u, v), None)
    return TensorPoly(x.left_level, x.right_level, out)


def comul(x: NCPoly) -> TensorPoly:
    """Matrix comultiplication a[i,j] -> sum_k a[i,k] (x) a[k,j]."""
    level = x.level
    if level.rect:
        raise ValueError("comultiplication lives on the square algebra")
    ks = list(level.row_range())
    if x._terms:
        # every factor word the expansion touches stays within this budget
        depth = x.max_word_length()
        _set_fuel(depth, level.total(), len(x._terms) * max(1, len(ks)) ** depth)
    out: dict[tuple[Word, Word], LaurentScalar] = {}
    for w, c in x._terms.items():
        pairs: dict[tuple[Word, Word], LaurentScalar] = {((), ()): c}
        for (i, j) in w:
            step: dict[tuple[Word, Word], LaurentScalar] = {}
            for (u, v), cc in pairs.items():
                for k in ks:
                    lu = _poly_times_letter({u: cc}, (i, k), ONE)
                    for u2, cu in lu.items():
                        rv = _poly_times_letter({v: cu}, (k, j), ONE)
                        for v2, cv in rv.items():
                            s = step.get((u2, v2), ZERO) + cv
                            if s:
                                step[(u2, v2)] = s
                            else:
                                step.pop((u2, v2), None)
            pairs = step
        for kk, cc in pairs.items():
            s = out.get(kk, ZERO) + cc
            if s:
                out[kk] = s
            else:
                out.pop(kk, None)
    return TensorPoly(level, level, out)


def counit(x: NCPoly) -> LaurentScalar:
    """Counit: a[i,j] -> 1 if i == j else 0, extended multiplicatively."""
    if x.level.rect:
        raise ValueError("counit lives on the square algebra")
    out = ZERO
    for w, c in x._terms.items():
        if all(i == j for i, j in w):
            out = out + c
    return out


# ---------------------------------------------------------------------------
# window substitution: the level projection maps


def window_fate(letter: Letter, to_level: LevelIndex) -> str:
    """keep / one / zero for the projection onto a smaller level window."""
    i, j = letter
    if to_level.contains_letter(letter):
        return "keep"
    if i == j:
        return "one"
    return "zero"


def substitute_letters(x: NCPoly, to_level: LevelIndex, fate=window_fate) -> NCPoly:
    """Apply a per-letter keep/one/zero substitution to each normal word.

    Letters kept from a sorted word stay sorted, so the result needs no
    renormalization.
    """
    out: dict[Word, LaurentScalar] = {}
    for w, c in x._terms.items():
        kept: list[Letter] = []
        dead = False
        for letter in w:
            f = fate(letter, to_level)
            if f == "keep":
                kept.append(letter)
            elif f == "zero":
                dead = True
                break
            elif f != "one":
                raise ValueError(f"bad substitution fate {f!r}")
        if dead:
            continue
        key = tuple(kept)
        s = out.get(key, ZERO) + c
        if s:
            out[key] = s
        else:
            out.pop(key, None)
    return NCPoly(to_level, out)


def level_project_E(x: NCPoly, to_level: LevelIndex) -> NCPoly:
    """Project a bigger level onto a smaller window.

    In-window generators survive, out-of-window diagonal generators become 1,
    everything else dies.
    """
    if not x.level.dominates(to_level):
        raise LevelMismatchError(f"{x.level} does not dominate {to_level}")
    return substitute_letters(x, to_level)
