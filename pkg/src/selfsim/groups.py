"""Group backends with exact equality.

Every backend stores elements in a canonical hashable form, so ``==`` and
``hash`` decide equality.  Backends also factor elements into generator
words, which is how actions given by generator tables reach arbitrary
elements.
"""
from __future__ import annotations

import re
from collections import deque
from typing import Any, Hashable, Iterable, Sequence

Element = Hashable
Letter = tuple[int, int]  # (generator index, +1 or -1)


class PresentationUnavailable(Exception):
    """The backend has no finite presentation to offer."""


class WordError(ValueError):
    pass


class GroupBackend:
    """Base class for group backends.

    Subclasses provide ``identity``, ``mul``, ``inv``, ``generators`` (with
    ``generator_names``), ``factor`` and ``render``.
    """

    name = "abstract"
    identity: Element
    generators: tuple
    generator_names: tuple[str, ...]

    def mul(self, a: Element, b: Element) -> Element:
        raise NotImplementedError

    def inv(self, a: Element) -> Element:
        raise NotImplementedError

    def eq(self, a: Element, b: Element) -> bool:
        return a == b

    def factor(self, g: Element) -> list[Letter]:
        """A word ``[(i, ±1), ...]`` whose product (left to right) is ``g``."""
        raise NotImplementedError

    def render(self, g: Element) -> str:
        return self.render_word(self.factor(g))

    def relations(self) -> list[tuple[list[Letter], list[Letter]]]:
        raise PresentationUnavailable(f"{self.name} backend has no presentation")

    def params(self) -> dict[str, Any]:
        return {}

    # -- shared helpers ---------------------------------------------------------

    def letter(self, i: int, sign: int) -> Element:
        g = self.generators[i]
        return g if sign > 0 else self.inv(g)

    def word_value(self, word: Iterable[Letter]) -> Element:
        out = self.identity
        for i, s in word:
            out = self.mul(out, self.letter(i, s))
        return out

    def product(self, items: Iterable[Element]) -> Element:
        out = self.identity
        for x in items:
            out = self.mul(out, x)
        return out

    def power(self, g: Element, k: int) -> Element:
        if k < 0:
            g, k = self.inv(g), -k
        out, base = self.identity, g
        while k:
            if k & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            k >>= 1
        return out

    def render_word(self, word: Sequence[Letter]) -> str:
        if not word:
            return "1"
        return " ".join(
            self.generator_names[i] + ("" if s > 0 else "^-1") for i, s in word)

    def parse_word(self, text: str) -> list[Letter]:
        """Parse whitespace-separated generator names, ``^-1`` marks inverses,
        ``^k`` repeats; ``1`` or the empty string is the identity."""
        word: list[Letter] = []
        index = {n: i for i, n in enumerate(self.generator_names)}
        for tok in text.split():
            if tok == "1":
                continue
            m = re.fullmatch(r"(.+?)(?:\^(-?\d+))?", tok)
            name, exp = m.group(1), int(m.group(2) or 1)
            if name not in index:
                raise WordError(f"unknown generator {name!r} in {text!r}")
            word.extend([(index[name], 1 if exp > 0 else -1)] * abs(exp))
        return word

    def parse(self, text: str) -> Element:
        return self.word_value(self.parse_word(text))

    def ball(self, radius: int) -> list[Element]:
        """Elements of word length at most ``radius``, in BFS order."""
        seen = {self.identity: 0}
        order = [self.identity]
        frontier = deque([self.identity])
        steps = [self.letter(i, s) for i in range(len(self.generators)) for s in (1, -1)]
        while frontier:
            g = frontier.popleft()
            if seen[g] == radius:
                continue
            for s in steps:
                h = self.mul(g, s)
                if h not in seen:
                    seen[h] = seen[g] + 1
                    order.append(h)
                    frontier.append(h)
        return order


class Integers(GroupBackend):
    """Z written multiplicatively, ``z^m`` stored as the int ``m``."""

    name = "integers"

    def __init__(self, generator: str = "z"):
        self.identity = 0
        self.generators = (1,)
        self.generator_names = (generator,)

    def mul(self, a, b):
        return a + b

    def inv(self, a):
        return -a

    def factor(self, g):
        return [(0, 1 if g > 0 else -1)] * abs(g)

    def render(self, g):
        z = self.generator_names[0]
        return "1" if g == 0 else (z if g == 1 else f"{z}^{g}")

    def relations(self):
        return []

    def params(self):
        return {"generator": self.generator_names[0]}

    def ball(self, radius):
        out = [0]
        for k in range(1, radius + 1):
            out += [k, -k]
        return out


class FiniteGroup(GroupBackend):
    """A finite group given by a multiplication table over named elements."""

    name = "finite"

    def __init__(self, elements: Sequence[str], table: Sequence[Sequence[str]],
                 generators: Sequence[str]):
        self.elements = tuple(elements)
        idx = {e: i for i, e in enumerate(self.elements)}
        if len(idx) != len(self.elements):
            raise ValueError("duplicate element names")
        try:
            self.table = tuple(tuple(idx[x] for x in row) for row in table)
            gens = tuple(idx[g] for g in generators)
        except KeyError as exc:
            raise ValueError(f"unknown element {exc.args[0]!r}") from None
        n = len(self.elements)
        if len(self.table) != n or any(len(row) != n for row in self.table):
            raise ValueError("multiplication table must be square over the elements")
        ids = [i for i in range(n) if all(self.table[i][j] == j == self.table[j][i]
                                          for j in range(n))]
        if len(ids) != 1:
            raise ValueError("table has no two-sided identity")
        self.identity = ids[0]
        self._inv = []
        for a in range(n):
            inv = [b for b in range(n) if self.table[a][b] == self.identity]
            if len(inv) != 1 or self.table[inv[0]][a] != self.identity:
                raise ValueError(f"element {self.elements[a]!r} has no inverse")
            self._inv.append(inv[0])
        for a in range(n):
            for b in range(n):
                for c in range(n):
                    if self.table[self.table[a][b]][c] != self.table[a][self.table[b][c]]:
                        raise ValueError("multiplication table is not associative")
        self.generators = gens
        self.generator_names = tuple(generators)
        self._words = self._shortest_words()

    @classmethod
    def cyclic(cls, order: int, generator: str = "t") -> "FiniteGroup":
        names = ["1"] + [generator if k == 1 else f"{generator}{k}" for k in range(1, order)]
        table = [[names[(i + j) % order] for j in range(order)] for i in range(order)]
        return cls(names, table, [generator] if order > 1 else [])

    def _shortest_words(self) -> dict[int, list[Letter]]:
        words = {self.identity: []}
        frontier = deque([self.identity])
        while frontier:
            g = frontier.popleft()
            for i in range(len(self.generators)):
                for s in (1, -1):
                    h = self.mul(g, self.letter(i, s))
                    if h not in words:
                        words[h] = words[g] + [(i, s)]
                        frontier.append(h)
        if len(words) != len(self.elements):
            raise ValueError("generators do not generate the group")
        return words

    def mul(self, a, b):
        return self.table[a][b]

    def inv(self, a):
        return self._inv[a]

    def factor(self, g):
        return list(self._words[g])

    def render(self, g):
        return self.elements[g]

    def parse(self, text):
        t = text.strip()
        if t in self.elements:
            return self.elements.index(t)
        return super().parse(text)

    def relations(self):
        # Cayley-table presentation on the generators: w_x s = w_{xs}
        rels = []
        for x, wx in sorted(self._words.items()):
            for i in range(len(self.generators)):
                y = self.mul(x, self.generators[i])
                lhs, rhs = wx + [(i, 1)], self._words[y]
                if lhs != rhs:
                    rels.append((lhs, rhs))
        return rels

    def params(self):
        return {"elements": list(self.elements),
                "table": [[self.elements[x] for x in row] for row in self.table],
                "generators": list(self.generator_names)}


class FreeGroup(GroupBackend):
    """Free group; elements are reduced tuples of signed ints ``±(i+1)``."""

    name = "free"

    def __init__(self, generators: Sequence[str]):
        self.generator_names = tuple(generators)
        self.generators = tuple((i + 1,) for i in range(len(generators)))
        self.identity = ()

    @staticmethod
    def reduce(word: Iterable[int]) -> tuple[int, ...]:
        out: list[int] = []
        for x in word:
            if out and out[-1] == -x:
                out.pop()
            else:
                out.append(x)
        return tuple(out)

    def mul(self, a, b):
        k = 0
        while k < len(a) and k < len(b) and a[-1 - k] == -b[k]:
            k += 1
        return a[:len(a) - k] + b[k:]

    def inv(self, a):
        return tuple(-x for x in reversed(a))

    def factor(self, g):
        return [(abs(x) - 1, 1 if x > 0 else -1) for x in g]

    def word_value(self, word):
        return self.reduce((i + 1) * s for i, s in word)

    def relations(self):
        return []

    def params(self):
        return {"generators": list(self.generator_names)}


def trivial_group() -> FiniteGroup:
    return FiniteGroup(["1"], [["1"]], [])


def make_backend(kind: str, params: dict[str, Any]) -> GroupBackend:
    """Backend factory used by the spec-file reader."""
    if kind == "integers":
        return Integers(params.get("generator", "z"))
    if kind == "cyclic":
        return FiniteGroup.cyclic(int(params["order"]), params.get("generator", "t"))
    if kind == "finite":
        return FiniteGroup(params["elements"], params["table"], params["generators"])
    if kind == "trivial":
        return trivial_group()
    if kind == "free":
        return FreeGroup(params["generators"])
    if kind == "baumslag_solitar":
        from .ugroup import BaumslagSolitar
        return BaumslagSolitar(int(params["n"]))
    raise ValueError(f"unknown group backend {kind!r}")
