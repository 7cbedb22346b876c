"""Exact element algebra for Hou(F_n), the Houghton-style overgroup of a
free group F_n acting on its own Cayley graph.

Vertices are reduced words in the free generators, stored as tuples of
nonzero ints: +i for x_i, -i for its inverse.  An element is a pair
(mult, perm): far from the identity vertex it acts as left
multiplication by mult, and perm is the finitely supported permutation
recording every deviation, so that

    f(v) = reduce(mult * perm(v)),   perm(v) = v outside the support.

The pair is recovered from the vertex action, which keeps composition
convention-free; (mult, perm) together are canonical, so structural
equality is group equality.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .errors import InvalidIndex, InvalidRank, MalformedToken, UnknownGenerator
from .words import GeneratorAlphabet, GroupWord

FreeVertex = tuple[int, ...]

EPSILON: FreeVertex = ()


def reduce_free(seq: Iterable[int]) -> FreeVertex:
    """Freely reduce a sequence of signed generator indices."""
    stack: list[int] = []
    for x in seq:
        if stack and stack[-1] == -x:
            stack.pop()
        else:
            stack.append(x)
    return tuple(stack)


def invert_free(v: FreeVertex) -> FreeVertex:
    return tuple(-x for x in reversed(v))


def vertex_to_text(v: FreeVertex) -> str:
    """Render a vertex in word syntax, e.g. (1, -2) -> "x1 x2^-1"."""
    return " ".join(f"x{x}" if x > 0 else f"x{-x}^-1" for x in v)


def parse_vertex(text: str, n: int) -> FreeVertex:
    """Parse a vertex in word syntax; the result is freely reduced."""
    out = []
    for token in text.split():
        if token.endswith("^-1"):
            name, sign = token[:-3], -1
        else:
            name, sign = token, 1
        if not name.startswith("x") or not name[1:].isdigit():
            raise MalformedToken(token)
        i = int(name[1:])
        if not 1 <= i <= n:
            raise UnknownGenerator(token)
        out.append(sign * i)
    return reduce_free(out)


@dataclass(frozen=True, eq=False)
class HouFreeElement:
    """An element of Hou(F_n) = S_{F_n} semidirect F_n."""

    n: int
    mult: FreeVertex = EPSILON
    perm: dict[FreeVertex, FreeVertex] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.n < 1:
            raise InvalidRank(f"rank must be at least 1, got {self.n}")
        if reduce_free(self.mult) != self.mult:
            raise ValueError("multiplier is not reduced")
        self._check_letters(self.mult)
        cleaned = {}
        for src, dst in self.perm.items():
            self._check_letters(src)
            self._check_letters(dst)
            if reduce_free(src) != src or reduce_free(dst) != dst:
                raise ValueError("permutation entries must be reduced")
            if src != dst:
                cleaned[src] = dst
        if set(cleaned.values()) != set(cleaned):
            raise ValueError("permutation support is not closed")
        object.__setattr__(self, "perm", cleaned)

    def _check_letters(self, v: FreeVertex) -> None:
        for x in v:
            if x == 0 or abs(x) > self.n:
                raise InvalidIndex(f"letter {x} out of range for rank {self.n}")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, HouFreeElement):
            return NotImplemented
        return (self.n, self.mult, self.perm) == (other.n, other.mult, other.perm)

    def __hash__(self) -> int:
        return hash((self.n, self.mult, tuple(sorted(self.perm.items()))))

    def apply(self, v: FreeVertex) -> FreeVertex:
        return reduce_free(self.mult + self.perm.get(v, v))

    def is_identity(self) -> bool:
        return not self.mult and not self.perm


def identity(n: int) -> HouFreeElement:
    return HouFreeElement(n)


def _check_index(i: int, n: int) -> None:
    if n < 1:
        raise InvalidRank(f"rank must be at least 1, got {n}")
    if not 1 <= i <= n:
        raise InvalidIndex(f"generator index {i} out of range for rank {n}")


def sigma_generator(i: int, n: int) -> HouFreeElement:
    """Swaps the identity vertex with x_i; every other vertex is fixed."""
    _check_index(i, n)
    return HouFreeElement(n, EPSILON, {EPSILON: (i,), (i,): EPSILON})


def mult_generator(i: int, n: int) -> HouFreeElement:
    """Left multiplication by x_i on every vertex."""
    _check_index(i, n)
    return HouFreeElement(n, (i,), {})


def compose(a: HouFreeElement, b: HouFreeElement) -> HouFreeElement:
    """The element acting as v -> b(a(v)), a first."""
    if a.n != b.n:
        raise InvalidRank(f"rank {a.n} vs rank {b.n}")
    mult = reduce_free(b.mult + a.mult)
    inv_a = inverse(a)
    candidates = set(a.perm) | {inv_a.apply(s) for s in b.perm}
    inv_mult = invert_free(mult)
    perm = {}
    for v in candidates:
        image = reduce_free(inv_mult + b.apply(a.apply(v)))
        if image != v:
            perm[v] = image
    return HouFreeElement(a.n, mult, perm)


def inverse(e: HouFreeElement) -> HouFreeElement:
    """Conjugate the inverted permutation by the multiplier.

    With f(v) = m * p(v), the inverse acts as u -> p^-1(m^-1 u), which in
    (mult, perm) form is mult' = m^-1 and perm'(m t) = m s for each pair
    s -> t of p.
    """
    mult = invert_free(e.mult)
    perm = {}
    for src, dst in e.perm.items():
        perm[reduce_free(e.mult + dst)] = reduce_free(e.mult + src)
    return HouFreeElement(e.n, mult, perm)


def hou_alphabet(n: int) -> GeneratorAlphabet:
    names = tuple(f"x{i}" for i in range(1, n + 1)) + \
        tuple(f"sigma{i}" for i in range(1, n + 1))
    return GeneratorAlphabet(names)


def word_to_element(w: GroupWord, n: int) -> HouFreeElement:
    """Evaluate w over {x_i, sigma_i}, leftmost letter acting first."""
    gens: dict[int, HouFreeElement] = {}
    for i in range(1, n + 1):
        for name, g in ((f"x{i}", mult_generator(i, n)),
                        (f"sigma{i}", sigma_generator(i, n))):
            if name in w.alphabet:
                gens[w.alphabet.index(name)] = g
    e = identity(n)
    for letter in w:
        if letter.generator not in gens:
            name = w.alphabet.names[letter.generator]
            raise UnknownGenerator(f"{name!r} is not a Hou(F_{n}) generator")
        g = gens[letter.generator]
        e = compose(e, g if letter.exponent == 1 else inverse(g))
    return e


def is_identity_vertices(w: GroupWord, n: int) -> bool:
    """Identity test by brute vertex evaluation, no element algebra.

    Each letter changes a vertex length by at most one and the swaps only
    touch the ball of radius 1, so fixing every reduced vertex of length
    <= |w| decides the matter.  Independent cross-check on
    word_to_element.
    """
    gens: dict[tuple[int, int], HouFreeElement] = {}
    for i in range(1, n + 1):
        gens[(i, 1)] = mult_generator(i, n)
        gens[(i, -1)] = inverse(gens[(i, 1)])
        gens[(n + i, 1)] = sigma_generator(i, n)
        gens[(n + i, -1)] = gens[(n + i, 1)]

    steps = []
    for letter in w:
        name = w.alphabet.names[letter.generator]
        if name.startswith("sigma"):
            key = (n + int(name[5:]), letter.exponent)
        else:
            key = (int(name[1:]), letter.exponent)
        steps.append(gens[key])

    def image(v: FreeVertex) -> FreeVertex:
        for g in steps:
            v = g.apply(v)
        return v

    for v in enumerate_vertices(n, len(w.letters)):
        if image(v) != v:
            return False
    return True


def enumerate_vertices(n: int, max_len: int) -> Iterable[FreeVertex]:
    """All reduced vertices of length at most max_len, shortest first."""
    frontier: list[FreeVertex] = [EPSILON]
    yield EPSILON
    for _ in range(max_len):
        next_frontier = []
        for v in frontier:
            for x in range(1, n + 1):
                for s in (x, -x):
                    if v and v[-1] == -s:
                        continue
                    u = v + (s,)
                    next_frontier.append(u)
                    yield u
        frontier = next_frontier
