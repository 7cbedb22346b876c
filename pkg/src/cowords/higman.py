"""Exact prefix-replacement calculus for the Higman-Thompson groups
G_{n,r}.

Points of the boundary space are infinite sequences q_i t_1 t_2 ... with
root q_i in 1..r and t_j in 1..n.  A group element is a bijection given
by prefix replacement along a pair of barriers: finite prefix-free
families meeting every infinite sequence exactly once.  Maps are kept in
reduced form (no complete sibling family that could be merged), which is
the unique minimal representative, so structural equality decides group
equality.

Generating sets are data: tables of domain -> range prefix pairs, loaded
from text (see parse_generator_table) or the built-in rank (2,1) table.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional

from .errors import (
    InvalidGenerators,
    MalformedToken,
    ParameterMismatch,
    UnknownGenerator,
)
from .words import GeneratorAlphabet, GroupWord


@dataclass(frozen=True, order=True)
class PrefixString:
    """A finite prefix q_root t_1 ... t_d of a boundary sequence."""

    root: int
    tail: tuple[int, ...] = ()

    @property
    def depth(self) -> int:
        return len(self.tail)

    def child(self, j: int) -> "PrefixString":
        return PrefixString(self.root, self.tail + (j,))

    def parent(self) -> "PrefixString":
        return PrefixString(self.root, self.tail[:-1])

    def is_prefix_of(self, other: "PrefixString") -> bool:
        return self.root == other.root and \
            other.tail[:len(self.tail)] == self.tail

    def __str__(self) -> str:
        if not self.tail:
            return f"q{self.root}"
        return f"q{self.root}." + "".join(str(t) for t in self.tail)


def parse_prefix(text: str, n: int, r: int) -> PrefixString:
    """Parse ``q<i>`` or ``q<i>.<digits>`` (single-digit arities only)."""
    text = text.strip()
    if not text.startswith("q"):
        raise MalformedToken(text)
    root_text, dot, tail_text = text[1:].partition(".")
    if not root_text.isdigit():
        raise MalformedToken(text)
    root = int(root_text)
    if not 1 <= root <= r:
        raise InvalidGenerators(f"root {root} out of range for r={r}")
    if dot and not tail_text:
        raise MalformedToken(text)
    tail = []
    for c in tail_text:
        if not c.isdigit() or c == "0":
            raise MalformedToken(text)
        if int(c) > n:
            raise InvalidGenerators(f"symbol {c} out of range for n={n}")
        tail.append(int(c))
    return PrefixString(root, tuple(tail))


def validate_barrier(elements: Iterable[PrefixString], n: int, r: int) -> bool:
    """True iff the family is prefix-free and covers every sequence.

    Coverage is the exact weight identity sum n^(-depth) = r, checked
    with rational arithmetic; together with prefix-freeness it forces
    completeness on every root.
    """
    given = list(elements)
    elems = sorted(set(given))
    if len(elems) != len(given):
        return False
    for p in elems:
        if not 1 <= p.root <= r:
            return False
        if any(not 1 <= t <= n for t in p.tail):
            return False
    # prefix violations are always between sort-adjacent elements
    for a, b in zip(elems, elems[1:]):
        if a.is_prefix_of(b):
            return False
    weight = sum(Fraction(1, n ** p.depth) for p in elems)
    return weight == r


@dataclass(frozen=True, eq=False)
class PrefixMap:
    """An element of G_{n,r}: a bijection of two barriers."""

    n: int
    r: int
    pairs: tuple[tuple[PrefixString, PrefixString], ...]

    def __post_init__(self) -> None:
        if self.n < 2 or self.r < 1:
            raise InvalidGenerators(f"bad parameters n={self.n}, r={self.r}")
        pairs = tuple(sorted(self.pairs))
        object.__setattr__(self, "pairs", pairs)
        domain = [u for u, _ in pairs]
        image = [v for _, v in pairs]
        if len(set(domain)) != len(pairs) or len(set(image)) != len(pairs):
            raise InvalidGenerators("prefix map is not a bijection")
        if not validate_barrier(domain, self.n, self.r):
            raise InvalidGenerators("domain is not a barrier")
        if not validate_barrier(image, self.n, self.r):
            raise InvalidGenerators("range is not a barrier")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PrefixMap):
            return NotImplemented
        return (self.n, self.r, self.pairs) == (other.n, other.r, other.pairs)

    def __hash__(self) -> int:
        return hash((self.n, self.r, self.pairs))

    def domain(self) -> tuple[PrefixString, ...]:
        return tuple(u for u, _ in self.pairs)

    def image(self) -> tuple[PrefixString, ...]:
        return tuple(v for _, v in self.pairs)


def identity(n: int, r: int) -> PrefixMap:
    return PrefixMap(n, r, tuple(
        (PrefixString(i), PrefixString(i)) for i in range(1, r + 1)))


def reduce_map(m: PrefixMap) -> PrefixMap:
    """Merge complete sibling families to the unique minimal form."""
    table = dict(m.pairs)
    merged = True
    while merged:
        merged = False
        for u in list(table):
            if u not in table or not u.tail or u.tail[-1] != 1:
                continue
            v = table[u]
            if not v.tail or v.tail[-1] != 1:
                continue
            pu, pv = u.parent(), v.parent()
            if all(table.get(pu.child(j)) == pv.child(j)
                   for j in range(1, m.n + 1)):
                for j in range(1, m.n + 1):
                    del table[pu.child(j)]
                table[pu] = pv
                merged = True
    return PrefixMap(m.n, m.r, tuple(table.items()))


def is_reduced(m: PrefixMap) -> bool:
    return m == reduce_map(m)


def inverse(m: PrefixMap) -> PrefixMap:
    """Swap domain and range; reduction is swap-symmetric."""
    return PrefixMap(m.n, m.r, tuple((v, u) for u, v in m.pairs))


def compose(a: PrefixMap, b: PrefixMap) -> PrefixMap:
    """The reduced map of the bijection w -> b(a(w)), a first."""
    if (a.n, a.r) != (b.n, b.r):
        raise ParameterMismatch(f"({a.n},{a.r}) vs ({b.n},{b.r})")
    pairs = []
    for u, v in a.pairs:
        refined = False
        for d, e in b.pairs:
            if d.is_prefix_of(v):
                t = v.tail[len(d.tail):]
                pairs.append((u, PrefixString(e.root, e.tail + t)))
                refined = True
                break
        if not refined:
            for d, e in b.pairs:
                if v.is_prefix_of(d):
                    s = d.tail[len(v.tail):]
                    pairs.append((PrefixString(u.root, u.tail + s), e))
    return reduce_map(PrefixMap(a.n, a.r, tuple(pairs)))


@dataclass(frozen=True, order=True)
class TestSequence:
    """An eventually-sigma_1 boundary sequence, canonical head.

    The head never ends in symbol 1; trailing 1's are absorbed into the
    implicit infinite tail at construction time.
    """

    __test__ = False  # not a pytest class, despite the name

    root: int
    tail: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        tail = self.tail
        while tail and tail[-1] == 1:
            tail = tail[:-1]
        object.__setattr__(self, "tail", tail)

    def head(self) -> PrefixString:
        return PrefixString(self.root, self.tail)

    def prefix(self, depth: int) -> PrefixString:
        """The length-depth prefix of the infinite sequence."""
        pad = depth - len(self.tail)
        if pad < 0:
            raise ValueError("depth shorter than the canonical head")
        return PrefixString(self.root, self.tail + (1,) * pad)

    def __str__(self) -> str:
        return str(self.head())


def parse_test_sequence(text: str, n: int, r: int) -> TestSequence:
    p = parse_prefix(text, n, r)
    return TestSequence(p.root, p.tail)


def apply_to_sequence(m: PrefixMap, s: TestSequence) -> TestSequence:
    """Prefix replacement of the unique domain element of m on s."""
    for d, e in m.pairs:
        if d.is_prefix_of(s.head()):
            rest = s.tail[len(d.tail):]
            return TestSequence(e.root, e.tail + rest)
        if s.head().is_prefix_of(d) and \
                all(t == 1 for t in d.tail[len(s.tail):]):
            return TestSequence(e.root, e.tail)
    raise InvalidGenerators("domain barrier misses a sequence")


def is_identity(m: PrefixMap) -> bool:
    return reduce_map(m) == identity(m.n, m.r)


def is_identity_sequences(m: PrefixMap) -> bool:
    """Identity test by evaluating on finitely many sequences.

    A reduced nonidentity map moves some eventually-1 sequence whose
    canonical head is at most one level below the domain barrier, so
    checking enumerate_M(n, r, k_bound+1) decides the matter.
    Independent cross-check on reduce_map equality.
    """
    k = k_bound(reduce_map(m)) + 1
    return all(apply_to_sequence(m, s) == s for s in enumerate_M(m.n, m.r, k))


def k_bound(m: PrefixMap) -> int:
    """Maximum tail depth over the domain barrier."""
    return max(u.depth for u in m.domain())


def symmetrized_k(gens: dict[str, PrefixMap]) -> int:
    """Max k_bound over the generators and their inverses."""
    k = 0
    for g in gens.values():
        red = reduce_map(g)
        k = max(k, k_bound(red), k_bound(inverse(red)))
    return k


def enumerate_M(n: int, r: int, k: int) -> list[TestSequence]:
    """All sequences q w sigma_1^infty with |w| = k; exactly r n^k many."""
    out = []

    def grow(root: int, tail: tuple[int, ...]) -> None:
        if len(tail) == k:
            out.append(TestSequence(root, tail))
            return
        for j in range(1, n + 1):
            grow(root, tail + (j,))

    for root in range(1, r + 1):
        grow(root, ())
    return out


def word_to_element(w: GroupWord, gens: dict[str, PrefixMap]) -> PrefixMap:
    """Evaluate w over named generators, leftmost letter acting first."""
    if not gens:
        raise InvalidGenerators("empty generator table")
    some = next(iter(gens.values()))
    e = identity(some.n, some.r)
    for letter in w:
        name = w.alphabet.names[letter.generator]
        if name not in gens:
            raise UnknownGenerator(name)
        g = gens[name]
        e = compose(e, g if letter.exponent == 1 else inverse(g))
    return e


# Thompson's group V = G_{2,1} with the four standard generators: the
# two tree shifts, the 3-cycle of the top cylinders, and the swap of the
# two left cylinders.
DEFAULT_G21_TABLE = """\
gnr n=2 r=1
gen A
q1.11 -> q1.1
q1.12 -> q1.21
q1.2 -> q1.22
gen B
q1.1 -> q1.1
q1.211 -> q1.21
q1.212 -> q1.221
q1.22 -> q1.222
gen C
q1.1 -> q1.21
q1.21 -> q1.22
q1.22 -> q1.1
gen D
q1.11 -> q1.12
q1.12 -> q1.11
q1.2 -> q1.2
"""


def parse_generator_table(text: str) -> tuple[int, int, dict[str, PrefixMap]]:
    """Parse a generator table: header ``gnr n=<n> r=<r>``, then blocks
    ``gen <name>`` of lines ``<domain-prefix> -> <range-prefix>``."""
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("//")]
    if not lines:
        raise InvalidGenerators("empty generator table")
    header = lines[0].split()
    if len(header) != 3 or header[0] != "gnr" or \
            not header[1].startswith("n=") or not header[2].startswith("r="):
        raise MalformedToken(lines[0])
    try:
        n, r = int(header[1][2:]), int(header[2][2:])
    except ValueError:
        raise MalformedToken(lines[0]) from None
    gens: dict[str, PrefixMap] = {}
    name: Optional[str] = None
    pairs: list[tuple[PrefixString, PrefixString]] = []

    def flush() -> None:
        if name is None:
            return
        if name in gens:
            raise InvalidGenerators(f"duplicate generator {name!r}")
        try:
            gens[name] = PrefixMap(n, r, tuple(pairs))
        except InvalidGenerators as exc:
            raise InvalidGenerators(f"generator {name!r}: {exc}") from None

    for line in lines[1:]:
        if line.startswith("gen "):
            flush()
            name = line[4:].strip()
            if not name or any(c.isspace() for c in name):
                raise MalformedToken(line)
            pairs = []
        else:
            if name is None:
                raise MalformedToken(line)
            parts = line.split("->")
            if len(parts) != 2:
                raise MalformedToken(line)
            pairs.append((parse_prefix(parts[0], n, r),
                          parse_prefix(parts[1], n, r)))
    flush()
    if not gens:
        raise InvalidGenerators("table declares no generators")
    return n, r, gens


def format_generator_table(n: int, r: int, gens: dict[str, PrefixMap]) -> str:
    lines = [f"gnr n={n} r={r}"]
    for name in gens:
        lines.append(f"gen {name}")
        for u, v in gens[name].pairs:
            lines.append(f"{u} -> {v}")
    return "\n".join(lines) + "\n"


def default_generators() -> tuple[int, int, dict[str, PrefixMap]]:
    return parse_generator_table(DEFAULT_G21_TABLE)


def generator_alphabet(gens: dict[str, PrefixMap]) -> GeneratorAlphabet:
    return GeneratorAlphabet(tuple(gens))
