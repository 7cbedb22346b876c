"""Generator alphabets, group words, free reduction, and rotations.

A word is an immutable sequence of signed letters over a fixed finite
alphabet.  Every oracle and every machine in this package consumes the
same word type, so cross-validation never re-parses text.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator

from .errors import MalformedToken, UnknownGenerator

# Characters that would collide with word syntax, stack markers, or the
# end-of-input marker if they appeared inside a generator name.
_FORBIDDEN_CHARS = set("^-$#")


@dataclass(frozen=True)
class GeneratorAlphabet:
    """Ordered list of distinct generator names."""

    names: tuple[str, ...]
    _index: dict[str, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "names", tuple(self.names))
        for name in self.names:
            if not name:
                raise ValueError("generator names must be nonempty")
            if any(c.isspace() or c in _FORBIDDEN_CHARS for c in name):
                raise ValueError(f"illegal character in generator name {name!r}")
        if len(set(self.names)) != len(self.names):
            raise ValueError("generator names must be distinct")
        object.__setattr__(self, "_index", {n: i for i, n in enumerate(self.names)})

    def __len__(self) -> int:
        return len(self.names)

    def __iter__(self) -> Iterator[str]:
        return iter(self.names)

    def __contains__(self, name: object) -> bool:
        return name in self._index

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise UnknownGenerator(name) from None


@dataclass(frozen=True)
class Letter:
    """A generator index with exponent +1 or -1."""

    generator: int
    exponent: int

    def __post_init__(self) -> None:
        if self.exponent not in (1, -1):
            raise ValueError(f"exponent must be +1 or -1, got {self.exponent}")

    def inverse(self) -> "Letter":
        return Letter(self.generator, -self.exponent)


@dataclass(frozen=True)
class GroupWord:
    """A finite, possibly empty sequence of letters over one alphabet."""

    alphabet: GeneratorAlphabet
    letters: tuple[Letter, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "letters", tuple(self.letters))
        for letter in self.letters:
            if not 0 <= letter.generator < len(self.alphabet):
                raise ValueError(f"letter index {letter.generator} out of range")

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[Letter]:
        return iter(self.letters)

    def __bool__(self) -> bool:
        return bool(self.letters)

    def letter_names(self) -> tuple[str, ...]:
        """The word as signed-name tokens, e.g. ``("s1", "s2^-1")``."""
        out = []
        for letter in self.letters:
            name = self.alphabet.names[letter.generator]
            out.append(name if letter.exponent == 1 else name + "^-1")
        return tuple(out)


def parse_word(text: str, alphabet: GeneratorAlphabet) -> GroupWord:
    """Parse whitespace-separated tokens ``name`` or ``name^-1``.

    Empty input yields the empty word.  Tokens naming generators outside
    the alphabet raise UnknownGenerator; any other malformed token raises
    MalformedToken.
    """
    letters = []
    for token in text.split():
        if token.endswith("^-1"):
            name, exponent = token[:-3], -1
        else:
            name, exponent = token, 1
        if not name or any(c in _FORBIDDEN_CHARS for c in name):
            raise MalformedToken(token)
        if name not in alphabet:
            raise UnknownGenerator(token)
        letters.append(Letter(alphabet.index(name), exponent))
    return GroupWord(alphabet, tuple(letters))


def word_to_text(w: GroupWord) -> str:
    """Inverse of parse_word up to whitespace normalization."""
    return " ".join(w.letter_names())


def invert_word(w: GroupWord) -> GroupWord:
    """The formal inverse: reversed sequence with negated exponents."""
    return GroupWord(w.alphabet, tuple(l.inverse() for l in reversed(w.letters)))


def free_reduce(w: GroupWord) -> GroupWord:
    """Delete adjacent mutually inverse pairs until none remain."""
    stack: list[Letter] = []
    for letter in w.letters:
        if stack and stack[-1].generator == letter.generator \
                and stack[-1].exponent == -letter.exponent:
            stack.pop()
        else:
            stack.append(letter)
    return GroupWord(w.alphabet, tuple(stack))


def concat(*ws: GroupWord) -> GroupWord:
    """Concatenate words over the same alphabet (no reduction)."""
    if not ws:
        raise ValueError("need at least one word")
    alphabet = ws[0].alphabet
    letters: list[Letter] = []
    for w in ws:
        if w.alphabet != alphabet:
            raise ValueError("cannot concatenate words over different alphabets")
        letters.extend(w.letters)
    return GroupWord(alphabet, tuple(letters))


def rotations(w: GroupWord) -> list[GroupWord]:
    """All cyclic rotations of w, duplicates retained.

    Returns max(1, |w|) words: the empty word rotates to itself only.
    """
    if not w.letters:
        return [w]
    ls = w.letters
    return [GroupWord(w.alphabet, ls[i:] + ls[:i]) for i in range(len(ls))]
