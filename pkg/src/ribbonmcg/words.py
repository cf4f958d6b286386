"""Free-group words with a central pivot symbol, and edge relabelings.

A ``PivotWord`` is a freely reduced word in edge symbols together with the
integer exponent of a central letter ``p``.  Since ``p`` is central the pair
(reduced word, exponent) is a normal form, so equality of words is decided
syntactically.

A ``Relabeling`` maps each edge to a word in the *old* labels; it is the
group-case shadow of a slide or twist.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field

Letter = tuple  # (symbol, +1 | -1)


def _free_reduce(letters):
    out = []
    for sym, e in letters:
        if out and out[-1][0] == sym and out[-1][1] == -e:
            out.pop()
        else:
            out.append((sym, e))
    return tuple(out)


@dataclass(frozen=True)
class PivotWord:
    letters: tuple = ()
    pivot_exp: int = 0

    @staticmethod
    def make(letters=(), pivot_exp=0):
        return PivotWord(_free_reduce(letters), pivot_exp)

    @staticmethod
    def gen(sym, e=1):
        return PivotWord(((sym, e),), 0)

    @staticmethod
    def pivot(k=1):
        return PivotWord((), k)

    def __mul__(self, other):
        a, b = self.letters, other.letters
        i = 0
        n = min(len(a), len(b))
        while i < n and a[-1 - i][0] == b[i][0] and a[-1 - i][1] == -b[i][1]:
            i += 1
        return PivotWord(a[:len(a) - i] + b[i:], self.pivot_exp + other.pivot_exp)

    def inverse(self):
        return PivotWord(tuple((s, -e) for s, e in reversed(self.letters)), -self.pivot_exp)

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        out = PivotWord()
        for _ in range(k):
            out = out * self
        return out

    def __len__(self):
        return len(self.letters)

    def is_identity(self):
        return not self.letters and self.pivot_exp == 0

    def symbols(self):
        return {s for s, _ in self.letters}

    def substitute(self, images):
        """Replace each symbol by ``images[symbol]`` (symbols not listed stay)."""
        out = PivotWord((), self.pivot_exp)
        inv_cache = {}
        for s, e in self.letters:
            w = images.get(s)
            if w is None:
                w = PivotWord(((s, 1),), 0)
            if e < 0:
                if s not in inv_cache:
                    inv_cache[s] = w.inverse()
                w = inv_cache[s]
            out = out * w
        return out

    def evaluate(self, values, mul, inv, identity, pivot):
        """Evaluate in a group given by callables ``mul``/``inv``."""
        acc = identity
        for s, e in self.letters:
            x = values[s]
            acc = mul(acc, x if e > 0 else inv(x))
        if self.pivot_exp:
            k = self.pivot_exp
            q = pivot if k > 0 else inv(pivot)
            for _ in range(abs(k)):
                acc = mul(acc, q)
        return acc

    def __str__(self):
        parts = []
        if self.pivot_exp:
            parts.append("p" if self.pivot_exp == 1 else f"p^{self.pivot_exp}")
        for s, e in self.letters:
            parts.append(s if e > 0 else f"{s}^-1")
        return " ".join(parts) if parts else "1"

    def __repr__(self):
        return f"PivotWord({str(self)!r})"


_TOKEN = re.compile(r"\s*(\[|\]|,|\(|\)|\^-?\d+|[A-Za-z_][A-Za-z0-9_']*|\S)")


def parse_word(text, names=None):
    """Parse a word such as ``"p^-1 a2^-1 [b1,a1^-1] x"``.

    ``p`` denotes the pivot, ``[u,v]`` is ``u v u^-1 v^-1`` and ``(...)^k``
    groups.  ``names`` optionally maps identifiers to previously parsed words.
    ``1`` is the empty word.
    """
    names = dict(names or {})
    toks = [t for t in _TOKEN.findall(text) if t.strip()]
    pos = 0

    def peek():
        return toks[pos] if pos < len(toks) else None

    def take(expected=None):
        nonlocal pos
        t = peek()
        if t is None or (expected is not None and t != expected):
            raise ValueError(f"bad word {text!r} near token {pos}: expected {expected}, got {t}")
        pos += 1
        return t

    def product(stop):
        w = PivotWord()
        while peek() is not None and peek() not in stop:
            w = w * factor()
        return w

    def factor():
        t = take()
        if t == "[":
            u = product({","})
            take(",")
            v = product({"]"})
            take("]")
            base = u * v * u.inverse() * v.inverse()
        elif t == "(":
            base = product({")"})
            take(")")
        elif t == "1":
            base = PivotWord()
        elif t == "p":
            base = PivotWord.pivot(1)
        elif re.match(r"[A-Za-z_]", t):
            base = names[t] if t in names else PivotWord.gen(t)
        else:
            raise ValueError(f"unexpected token {t!r} in {text!r}")
        while peek() is not None and peek().startswith("^"):
            base = base ** int(take()[1:])
        return base

    w = product(set())
    return w


@dataclass(frozen=True)
class Relabeling:
    """Edge -> word in the old labels.  Missing edges are not allowed."""

    images: dict = field(default_factory=dict)

    @staticmethod
    def identity(edges):
        return Relabeling({e: PivotWord.gen(e) for e in edges})

    @property
    def edges(self):
        return tuple(self.images)

    def __getitem__(self, e):
        return self.images[e]

    def then(self, other):
        """Apply ``self`` first, then ``other``; labels compose by substitution."""
        return compose(other, self)

    def to_json(self):
        return {e: str(w) for e, w in sorted(self.images.items())}

    def changed(self):
        return {e: w for e, w in self.images.items() if w != PivotWord.gen(e)}

    def evaluate(self, group, pivot, labels):
        return {e: w.evaluate(labels, group.mul, group.inv, group.identity, pivot)
                for e, w in self.images.items()}

    def __str__(self):
        return ", ".join(f"{e} -> {w}" for e, w in self.images.items())


def compose(f, g):
    """``f ∘ g``: first g, then f.  result[e] = f[e] with old labels replaced by g."""
    if set(f.images) != set(g.images):
        raise ValueError("edge-set mismatch in relabeling composition")
    return Relabeling({e: w.substitute(g.images) for e, w in f.images.items()})


def relabeling_eq(f, g):
    return f.images == g.images


def reduce(w):
    return PivotWord.make(w.letters, w.pivot_exp)
