"""Machines that are deterministic once their stack is seeded.

A semi-deterministic machine separates the single nondeterministic
guess from the run: a preamble language describes the stack contents
the machine may start from, and the body must be deterministic per
(state, stack top).  Such a machine can be run two ways: compiled into
an ordinary pushdown automaton whose pusher states emit a preamble
first, or decided directly by enumerating every preamble up to the
declared length bound and running the body deterministically on each.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterable, Iterator, Optional

from .npda import BOTTOM, Npda, RunStep

_PUSHER_PREFIX = "pre!"


@dataclass(frozen=True)
class PreambleSpec:
    """All words the guessing phase may push (top of stack first).

    The language is: the empty word, any singleton symbol alone, and
    any nonempty word over the remaining symbols in which no listed
    (above, below) pair sits adjacent.  The bound (m, c) declares that
    preambles longer than m*|input| + c never help, which is what makes
    enumeration a complete decision procedure.
    """

    symbols: tuple[str, ...]
    forbidden: frozenset[tuple[str, str]]
    singletons: frozenset[str]
    bound: tuple[int, int]

    def __post_init__(self) -> None:
        object.__setattr__(self, "symbols", tuple(self.symbols))
        object.__setattr__(self, "forbidden", frozenset(self.forbidden))
        object.__setattr__(self, "singletons", frozenset(self.singletons))
        syms = set(self.symbols)
        if len(syms) != len(self.symbols):
            raise ValueError("duplicate preamble symbols")
        if not self.singletons <= syms:
            raise ValueError("singleton symbols must be preamble symbols")
        for a, b in self.forbidden:
            if a not in syms or b not in syms:
                raise ValueError(f"forbidden pair ({a}, {b}) undeclared")
        m, c = self.bound
        if m < 0 or c < 0:
            raise ValueError("preamble bound must be nonnegative")

    def max_length(self, input_length: int) -> int:
        m, c = self.bound
        return m * input_length + c

    def words(self, up_to: int) -> Iterator[tuple[str, ...]]:
        """Every preamble word of length at most up_to, shortest first."""
        yield ()
        if up_to < 1:
            return
        for s in sorted(self.singletons):
            yield (s,)
        free = [s for s in self.symbols if s not in self.singletons]
        layer: list[tuple[str, ...]] = [(s,) for s in free]
        yield from layer
        for _ in range(up_to - 1):
            layer = [(s,) + w for w in layer for s in free
                     if (s, w[0]) not in self.forbidden]
            yield from layer


@dataclass(frozen=True, eq=False)
class SemiDetPda:
    body: Npda
    preamble: PreambleSpec

    def __post_init__(self) -> None:
        syms = set(self.body.stack_symbols)
        for s in self.preamble.symbols:
            if s not in syms:
                raise ValueError(f"preamble symbol {s!r} not in stack alphabet")
        if BOTTOM in self.preamble.symbols:
            raise ValueError("bottom marker cannot be a preamble symbol")
        for s in self.body.states:
            if s.startswith(_PUSHER_PREFIX):
                raise ValueError(f"state name {s!r} reserved for the pusher")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SemiDetPda):
            return NotImplemented
        return self.body == other.body and self.preamble == other.preamble

    __hash__ = None  # type: ignore[assignment]


def semidet_validate(m: SemiDetPda) -> list[str]:
    """Determinism violations of the body, empty when well formed.

    Per (state, stack top): at most one move for each letter (the end
    marker included), and an epsilon move excludes letter moves and
    other epsilon moves.
    """
    problems = []
    by_slot: dict[tuple[str, str], dict[Optional[str], int]] = {}
    for (p, a, top), moves in m.body.transitions.items():
        slot = by_slot.setdefault((p, top), {})
        slot[a] = slot.get(a, 0) + len(moves)
    for (p, top), slot in sorted(by_slot.items()):
        eps = slot.get(None, 0)
        letters = sum(n for a, n in slot.items() if a is not None)
        if eps > 1:
            problems.append(f"({p}, {top}): {eps} epsilon moves")
        if eps and letters:
            problems.append(f"({p}, {top}): epsilon and letter moves mixed")
        for a, n in sorted((a, n) for a, n in slot.items()
                           if a is not None and n > 1):
            problems.append(f"({p}, {top}): {n} moves on {a!r}")
    return problems


def semidet_to_npda(m: SemiDetPda) -> Npda:
    """One ordinary machine: pusher states guess a preamble, then run."""
    body = m.body
    start = _PUSHER_PREFIX + "start"
    pusher = {s: _PUSHER_PREFIX + s for s in m.preamble.symbols}
    trans: dict = {k: list(v) for k, v in body.transitions.items()}

    def add(key, move) -> None:
        trans.setdefault(key, [])
        if move not in trans[key]:
            trans[key].append(move)

    add((start, None, BOTTOM), (body.initial, (BOTTOM,)))
    free = [s for s in m.preamble.symbols if s not in m.preamble.singletons]
    for s in m.preamble.symbols:
        add((start, None, BOTTOM), (pusher[s], (s, BOTTOM)))
    for s in m.preamble.symbols:
        add((pusher[s], None, s), (body.initial, (s,)))
        if s in m.preamble.singletons:
            continue
        for t in free:
            if (t, s) not in m.preamble.forbidden:
                add((pusher[s], None, s), (pusher[t], (t, s)))
    return Npda(
        states=tuple(body.states) + (start,) + tuple(
            pusher[s] for s in m.preamble.symbols),
        initial=start,
        accepting=body.accepting,
        input_symbols=body.input_symbols,
        stack_symbols=body.stack_symbols,
        transitions={k: tuple(v) for k, v in trans.items()},
        end_marker=body.end_marker,
    )


def run_deterministic(body: Npda, letters: Iterable[str],
                      seed: tuple[str, ...], step_cap: int) -> bool:
    """Run the body from its initial state on a seeded stack.

    Epsilon moves take priority (validation guarantees they are not
    mixed with letter moves).  Exceeds of the step cap count as reject;
    caps are sized by callers so that only genuinely divergent runs hit
    them.
    """
    word = body.full_input(letters)
    stack = list(reversed(seed + (BOTTOM,)))
    state = body.initial
    pos = 0
    for _ in range(step_cap):
        if pos == len(word) and state in body.accepting:
            return True
        top = stack[-1]
        moves = body.moves(state, None, top)
        if not moves and pos < len(word):
            moves = body.moves(state, word[pos], top)
            if moves:
                pos += 1
        if not moves:
            return False
        state, push = moves[0]
        stack.pop()
        stack.extend(reversed(push))
    return False


def semidet_accepts_enum(m: SemiDetPda, letters: Iterable[str]) -> bool:
    """Decide acceptance by trying every preamble within the bound."""
    word = tuple(letters)
    limit = m.preamble.max_length(len(word))
    marker = 0 if m.body.end_marker is None else 1
    for seed in m.preamble.words(limit):
        cap = 8 * (len(word) + marker + len(seed) + 8)
        if run_deterministic(m.body, word, seed, cap):
            return True
    return False


def run_deterministic_steps(body: Npda, letters: Iterable[str],
                            seed: tuple[str, ...],
                            step_cap: int) -> tuple[bool, list[RunStep]]:
    """run_deterministic with the visited configurations recorded."""
    word = body.full_input(letters)
    stack = list(reversed(seed + (BOTTOM,)))
    state = body.initial
    pos = 0
    steps = [RunStep(state, None, tuple(reversed(stack)))]
    for _ in range(step_cap):
        if pos == len(word) and state in body.accepting:
            return True, steps
        top = stack[-1]
        moves = body.moves(state, None, top)
        consumed = None
        if not moves and pos < len(word):
            moves = body.moves(state, word[pos], top)
            if moves:
                consumed = word[pos]
                pos += 1
        if not moves:
            return False, steps
        state, push = moves[0]
        stack.pop()
        stack.extend(reversed(push))
        steps.append(RunStep(state, consumed, tuple(reversed(stack))))
    return False, steps


def semidet_witness_run(
        m: SemiDetPda,
        letters: Iterable[str]) -> Optional[tuple[tuple[str, ...],
                                                  list[RunStep]]]:
    """The first accepting (preamble, body run) within the bound."""
    word = tuple(letters)
    limit = m.preamble.max_length(len(word))
    marker = 0 if m.body.end_marker is None else 1
    for seed in m.preamble.words(limit):
        cap = 8 * (len(word) + marker + len(seed) + 8)
        ok, steps = run_deterministic_steps(m.body, word, seed, cap)
        if ok:
            return seed, steps
    return None
