"""Canonical vertex sets over named vertices and countably infinite families.

A vertex is a string: either a named vertex (``"v0"``) or a family member
``"W#3"`` (family ``W``, index 3, indices start at 1).  The members of a
family that a set contains are described by a :class:`Trace`, an eventually
periodic subset of the positive integers.  Finite and cofinite traces are the
common case; periodic ones exist so that sets such as the even-indexed members
of a family can be written down and shown to lie outside a range algebra.
Boolean operations on traces are exact, so every union, intersection and
difference stays inside the class.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from math import gcd
from typing import Iterable, Iterator

_NAT = re.compile(r"(\d+)")


def natkey(s: str) -> tuple:
    """Sort key comparing digit runs numerically (``"e2" < "e10"``)."""
    return tuple((0, int(p)) if p.isdigit() else (1, p) for p in _NAT.split(s) if p != "")


def split_member(vertex: str) -> tuple[str, int] | None:
    """``"W#3" -> ("W", 3)``; ``None`` for named vertices."""
    if "#" not in vertex:
        return None
    fam, _, idx = vertex.rpartition("#")
    if not idx.isdigit() or int(idx) < 1:
        raise ValueError(f"bad family member {vertex!r}")
    return fam, int(idx)


def vertex_key(vertex: str) -> tuple:
    """Canonical order: named vertices first, then members by (family, index)."""
    m = split_member(vertex)
    if m is None:
        return (0, natkey(vertex))
    return (1, natkey(m[0]), m[1])


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


@dataclass(frozen=True)
class Trace:
    """Eventually periodic subset of {1, 2, 3, ...}.

    Index ``n`` belongs to the set iff ``(n % period in residues) != (n in flips)``.
    Instances are canonical (minimal period), so ``==`` is set equality.
    """

    period: int = 1
    residues: frozenset = frozenset()
    flips: frozenset = frozenset()

    @classmethod
    def make(cls, period: int, residues: Iterable[int], flips: Iterable[int]) -> "Trace":
        res = frozenset(r % period for r in residues)
        fl = frozenset(n for n in flips if n >= 1)
        for d in _divisors(period):
            if all((r in res) == ((r % d) in res) for r in range(period)):
                res = frozenset(r for r in res if r < d)
                period = d
                break
        return cls(period, res, fl)

    @classmethod
    def finite(cls, members: Iterable[int]) -> "Trace":
        return cls.make(1, (), members)

    @classmethod
    def cofinite(cls, exceptions: Iterable[int] = ()) -> "Trace":
        return cls.make(1, (0,), exceptions)

    @classmethod
    def residue(cls, modulus: int, residue: int) -> "Trace":
        return cls.make(modulus, (residue,), ())

    def __contains__(self, n: int) -> bool:
        return ((n % self.period) in self.residues) != (n in self.flips)

    def _pattern(self, n: int) -> bool:
        return (n % self.period) in self.residues

    def _combine(self, other: "Trace", op) -> "Trace":
        p = self.period * other.period // gcd(self.period, other.period)
        res = [r for r in range(p) if op((r % self.period) in self.residues, (r % other.period) in other.residues)]
        rs = frozenset(res)
        flips = [n for n in self.flips | other.flips if op(n in self, n in other) != ((n % p) in rs)]
        return Trace.make(p, res, flips)

    def __or__(self, other):
        return self._combine(other, lambda a, b: a or b)

    def __and__(self, other):
        return self._combine(other, lambda a, b: a and b)

    def __sub__(self, other):
        return self._combine(other, lambda a, b: a and not b)

    def __xor__(self, other):
        return self._combine(other, lambda a, b: a != b)

    def is_empty(self) -> bool:
        return not self.residues and not self.flips

    def is_finite(self) -> bool:
        return not self.residues

    def is_cofinite(self) -> bool:
        return len(self.residues) == self.period

    def members(self) -> list[int]:
        if not self.is_finite():
            raise ValueError("infinite trace has no member list")
        return sorted(self.flips)

    def exceptions(self) -> list[int]:
        if not self.is_cofinite():
            raise ValueError("trace is not cofinite")
        return sorted(self.flips)

    def count_upto(self, n: int) -> int:
        """Number of members in {1, ..., n}."""
        if n <= 0:
            return 0
        total = 0
        for r in self.residues:
            first = r if r >= 1 else self.period
            if first <= n:
                total += (n - first) // self.period + 1
        for f in self.flips:
            if f <= n:
                total += -1 if self._pattern(f) else 1
        return total

    def nth(self, i: int) -> int:
        """The ``i``-th member (0-based) in increasing order."""
        if self.is_finite():
            return self.members()[i]
        hi = max(self.flips, default=0) + self.period
        while self.count_upto(hi) <= i:
            hi *= 2
        lo = 0
        while hi - lo > 1:
            mid = (lo + hi) // 2
            if self.count_upto(mid) > i:
                hi = mid
            else:
                lo = mid
        return hi

    def bound(self) -> int:
        """An index beyond which the trace is purely periodic."""
        return max(self.flips, default=0)

    def sort_key(self) -> tuple:
        return (self.period, tuple(sorted(self.residues)), tuple(sorted(self.flips)))


FULL = Trace.cofinite()


@dataclass(frozen=True)
class VSet:
    """A set of vertices: finitely many named vertices plus a trace per family."""

    named: frozenset = frozenset()
    traces: tuple = ()  # sorted ((family, Trace), ...), empty traces dropped

    @classmethod
    def make(cls, named: Iterable[str] = (), traces: dict | None = None) -> "VSet":
        tr = {f: t for f, t in (traces or {}).items() if not t.is_empty()}
        return cls(frozenset(named), tuple(sorted(tr.items(), key=lambda kv: natkey(kv[0]))))

    @classmethod
    def of(cls, *vertices: str) -> "VSet":
        """Finite set from vertex strings, e.g. ``VSet.of("v0", "W#3")``."""
        named, fams = set(), {}
        for v in vertices:
            m = split_member(v)
            if m is None:
                named.add(v)
            else:
                fams.setdefault(m[0], set()).add(m[1])
        return cls.make(named, {f: Trace.finite(ix) for f, ix in fams.items()})

    @classmethod
    def family(cls, name: str, trace: Trace = FULL) -> "VSet":
        return cls.make((), {name: trace})

    @classmethod
    def empty(cls) -> "VSet":
        return cls()

    def trace(self, family: str) -> Trace:
        for f, t in self.traces:
            if f == family:
                return t
        return Trace()

    @property
    def families(self) -> tuple:
        return tuple(f for f, _ in self.traces)

    def _combine(self, other: "VSet", nop, top) -> "VSet":
        fams = set(self.families) | set(other.families)
        return VSet.make(nop(self.named, other.named), {f: top(self.trace(f), other.trace(f)) for f in fams})

    def __or__(self, other):
        return self._combine(other, frozenset.__or__, Trace.__or__)

    def __and__(self, other):
        return self._combine(other, frozenset.__and__, Trace.__and__)

    def __sub__(self, other):
        return self._combine(other, frozenset.__sub__, Trace.__sub__)

    def __xor__(self, other):
        return self._combine(other, frozenset.__xor__, Trace.__xor__)

    def __le__(self, other):
        return (self - other).is_empty()

    def __contains__(self, vertex: str) -> bool:
        m = split_member(vertex)
        if m is None:
            return vertex in self.named
        return m[1] in self.trace(m[0])

    def is_empty(self) -> bool:
        return not self.named and not self.traces

    def __bool__(self):
        return not self.is_empty()

    def is_finite(self) -> bool:
        return all(t.is_finite() for _, t in self.traces)

    def vertices(self) -> Iterator[str]:
        """Members in canonical order (infinite sets yield forever)."""
        yield from sorted(self.named, key=natkey)
        if self.is_finite():
            for f, t in self.traces:
                for n in t.members():
                    yield f"{f}#{n}"
            return
        i = 0
        while True:
            yield self.infinite_part_nth(i)
            i += 1

    def first(self) -> str | None:
        return next(iter(self.vertices()), None)

    def __len__(self):
        if not self.is_finite():
            raise ValueError("infinite vertex set")
        return len(self.named) + sum(len(t.flips) for _, t in self.traces)

    # enumeration of family members ordered by (index, family); used by the
    # representation to pair vertices with copy slots
    def _member_count_upto(self, n: int) -> int:
        return sum(t.count_upto(n) for _, t in self.traces)

    def infinite_part_nth(self, i: int) -> str:
        hi = 1
        while self._member_count_upto(hi) <= i:
            hi *= 2
        lo = 0
        while hi - lo > 1:
            mid = (lo + hi) // 2
            if self._member_count_upto(mid) > i:
                hi = mid
            else:
                lo = mid
        n = hi
        k = i - self._member_count_upto(n - 1)
        fams = [f for f, t in self.traces if n in t]
        return f"{fams[k]}#{n}"

    def rank(self, vertex: str) -> int:
        """Position of ``vertex`` in the canonical enumeration of this set."""
        named = sorted(self.named, key=natkey)
        m = split_member(vertex)
        if m is None:
            return named.index(vertex)
        f, n = m
        if n not in self.trace(f):
            raise KeyError(vertex)
        before = self._member_count_upto(n - 1)
        before += sum(1 for g, t in self.traces if n in t and natkey(g) < natkey(f))
        return len(named) + before

    def unrank(self, i: int) -> str:
        named = sorted(self.named, key=natkey)
        if i < len(named):
            return named[i]
        return self.infinite_part_nth(i - len(named))

    def sort_key(self) -> tuple:
        return (
            tuple(natkey(v) for v in sorted(self.named, key=natkey)),
            tuple((natkey(f), t.sort_key()) for f, t in self.traces),
        )

    def bound(self) -> int:
        return max((t.bound() for _, t in self.traces), default=0)

    def __str__(self):
        return format_vset(self)

    def __repr__(self):
        return f"VSet({format_vset(self)})"


def format_vset(A: VSet) -> str:
    """Render in the set-literal syntax accepted by :func:`parse_vset`."""
    if A.is_empty():
        return "{}"
    finite = sorted(A.named, key=natkey)
    parts = []
    for f, t in A.traces:
        if t.is_finite():
            finite.extend(f"{f}#{n}" for n in t.members())
        elif t.is_cofinite():
            if t.flips:
                parts.append(f"{f} \\ {{{', '.join(f'{f}#{n}' for n in sorted(t.flips))}}}")
            else:
                parts.append(f)
        else:
            base = " | ".join(f"{f}%{t.period}={r}" for r in sorted(t.residues))
            if t.flips:
                base = f"({base}) ^ {{{', '.join(f'{f}#{n}' for n in sorted(t.flips))}}}"
            parts.append(base if len(t.residues) == 1 and not t.flips else f"({base})")
    if finite:
        parts.insert(0, "{" + ", ".join(finite) + "}")
    return " | ".join(parts)


_TOKEN = re.compile(r"\s*(?:(?P<op>[|&\\^(),{}])|(?P<word>[^\s|&\\^(),{}]+))")


def parse_vset(text: str, families: Iterable[str] = ()) -> VSet:
    """Parse a set literal.

    Grammar: ``term (op term)*`` with ``op`` in ``| & \\ ^`` (left-assoc,
    equal precedence); a term is ``{v, W#3, ...}``, a family name (all its
    members), ``W%m=r`` (members with index = r mod m), ``@none`` or a
    parenthesised expression.  A bare named vertex is also accepted.
    """
    families = set(families)
    toks = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            if text[pos:].strip() == "":
                break
            raise ValueError(f"unexpected character at column {pos + 1} in {text!r}")
        toks.append(m.group("op") or m.group("word"))
        pos = m.end()
    i = 0

    def peek():
        return toks[i] if i < len(toks) else None

    def take(expected=None):
        nonlocal i
        if i >= len(toks):
            raise ValueError(f"unexpected end of set literal {text!r}")
        t = toks[i]
        if expected is not None and t != expected:
            raise ValueError(f"expected {expected!r}, got {t!r} in {text!r}")
        i += 1
        return t

    def word(w: str) -> VSet:
        if w == "@none":
            return VSet()
        if "%" in w:
            fam, _, rest = w.partition("%")
            m, _, r = rest.partition("=")
            return VSet.family(fam, Trace.residue(int(m), int(r)))
        if w in families:
            return VSet.family(w)
        return VSet.of(w)

    def term() -> VSet:
        t = take()
        if t == "(":
            v = expr()
            take(")")
            return v
        if t == "{":
            items = []
            while peek() != "}":
                items.append(take())
                if peek() == ",":
                    take(",")
            take("}")
            out = VSet()
            for w in items:
                out = out | word(w)
            return out
        if t in "|&\\^,)}":
            raise ValueError(f"unexpected {t!r} in {text!r}")
        return word(t)

    ops = {"|": VSet.__or__, ",": VSet.__or__, "&": VSet.__and__, "\\": VSet.__sub__, "^": VSet.__xor__}

    def expr() -> VSet:
        v = term()
        while peek() in ops:
            op = ops[take()]
            v = op(v, term())
        return v

    out = expr()
    if i != len(toks):
        raise ValueError(f"trailing input {toks[i]!r} in {text!r}")
    return out
