"""Nondeterministic pushdown automata with exact bookkeeping.

Transitions are keyed by (state, letter, stack top) where letter is None
for epsilon moves; each move pops the matched top and pushes a string
written top-first.  Acceptance is by accepting state once the whole
input (including the end marker, when the machine declares one) has
been consumed.  The bottom marker # never leaves the bottom: moves that
match it must push a string ending in it, and no other move may push
it.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Optional

from ..errors import UnknownLetter

BOTTOM = "#"

TransKey = tuple[str, Optional[str], str]
Move = tuple[str, tuple[str, ...]]


def _check_symbol(sym: str, what: str) -> None:
    if not sym or any(c.isspace() for c in sym):
        raise ValueError(f"{what} {sym!r} must be a nonempty token")


@dataclass(frozen=True, eq=False)
class Npda:
    states: tuple[str, ...]
    initial: str
    accepting: frozenset[str]
    input_symbols: tuple[str, ...]
    stack_symbols: tuple[str, ...]
    transitions: dict[TransKey, tuple[Move, ...]]
    end_marker: Optional[str] = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "states", tuple(self.states))
        object.__setattr__(self, "accepting", frozenset(self.accepting))
        object.__setattr__(self, "input_symbols", tuple(self.input_symbols))
        object.__setattr__(self, "stack_symbols", tuple(self.stack_symbols))
        states = set(self.states)
        if len(states) != len(self.states):
            raise ValueError("duplicate state names")
        for s in self.states:
            _check_symbol(s, "state")
        for s in self.input_symbols:
            _check_symbol(s, "input symbol")
        for s in self.stack_symbols:
            _check_symbol(s, "stack symbol")
        if self.initial not in states:
            raise ValueError(f"initial state {self.initial!r} undeclared")
        if not self.accepting <= states:
            raise ValueError("accepting states must be declared states")
        if BOTTOM not in self.stack_symbols:
            raise ValueError("stack alphabet must include the bottom marker")
        letters = set(self.input_symbols)
        if self.end_marker is not None:
            _check_symbol(self.end_marker, "end marker")
            if self.end_marker in letters:
                raise ValueError("end marker cannot be an input symbol")
        stack = set(self.stack_symbols)
        normalized: dict[TransKey, tuple[Move, ...]] = {}
        for (p, a, top), moves in self.transitions.items():
            if p not in states:
                raise ValueError(f"transition from undeclared state {p!r}")
            if a is not None and a not in letters and a != self.end_marker:
                raise ValueError(f"transition on undeclared letter {a!r}")
            if top not in stack:
                raise ValueError(f"transition on undeclared top {top!r}")
            seen = []
            for q, push in moves:
                if q not in states:
                    raise ValueError(f"transition to undeclared state {q!r}")
                push = tuple(push)
                if any(z not in stack for z in push):
                    raise ValueError(f"push of undeclared symbol in {push}")
                if top == BOTTOM:
                    if not push or push[-1] != BOTTOM:
                        raise ValueError(
                            f"move at bottom must re-push it: {(p, a, top)}")
                    if BOTTOM in push[:-1]:
                        raise ValueError("bottom marker pushed above bottom")
                elif BOTTOM in push:
                    raise ValueError("bottom marker pushed above bottom")
                if (q, push) not in seen:
                    seen.append((q, push))
            if seen:
                normalized[(p, a, top)] = tuple(sorted(seen))
        object.__setattr__(self, "transitions", normalized)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Npda):
            return NotImplemented
        return (sorted(self.states) == sorted(other.states)
                and self.initial == other.initial
                and self.accepting == other.accepting
                and sorted(self.input_symbols) == sorted(other.input_symbols)
                and sorted(self.stack_symbols) == sorted(other.stack_symbols)
                and self.transitions == other.transitions
                and self.end_marker == other.end_marker)

    __hash__ = None  # type: ignore[assignment]

    def moves(self, state: str, letter: Optional[str], top: str) -> tuple[Move, ...]:
        return self.transitions.get((state, letter, top), ())

    def full_input(self, letters: Iterable[str]) -> tuple[str, ...]:
        """Validate letters and append the end marker when declared."""
        allowed = set(self.input_symbols)
        out = []
        for a in letters:
            if a not in allowed:
                raise UnknownLetter(a)
            out.append(a)
        if self.end_marker is not None:
            out.append(self.end_marker)
        return tuple(out)


def is_one_counter(m: Npda) -> bool:
    """True iff the stack alphabet is one counter symbol plus bottom."""
    return len(set(m.stack_symbols)) == 2 and BOTTOM in m.stack_symbols


def simulate(m: Npda, letters: Iterable[str], stack_bound: int) -> bool:
    """Existence of an accepting run whose stack never exceeds the bound.

    Exact for runs within the bound; deeper runs are pruned, so a False
    answer only means no bounded accepting run exists.
    """
    word = m.full_input(letters)
    end = len(word)
    start = (m.initial, 0, (BOTTOM,))
    seen = {start}
    todo = [start]
    while todo:
        state, pos, stack = todo.pop()
        if pos == end and state in m.accepting:
            return True
        top = stack[0]
        options = []
        options.extend(m.moves(state, None, top))
        if pos < end:
            options.extend((q, push, 1) for q, push in
                           m.moves(state, word[pos], top))
        for entry in options:
            if len(entry) == 2:
                q, push = entry
                npos = pos
            else:
                q, push, _ = entry
                npos = pos + 1
            nstack = push + stack[1:]
            if len(nstack) > stack_bound:
                continue
            cfg = (q, npos, nstack)
            if cfg not in seen:
                seen.add(cfg)
                todo.append(cfg)
    return False


def bounded_accepts(m: Npda, letters: Iterable[str], stack_bound: int) -> bool:
    """The simulate verdict at the same bound, without walking configs.

    Tabulates, per (state, stack top, input position), the minimal stack
    peak any run needs to pop the top cell or to accept above it.  The
    tables are polynomial in the bound, so machines whose guessing phase
    fans out into exponentially many stacks still decide quickly.
    """
    word = m.full_input(letters)
    end = len(word)
    if end == 0 and m.initial in m.accepting:
        return True

    # pop[key][(q, j)]: minimal peak height (relative to the cell, which
    # itself counts 1) over runs from key that end popping the cell in
    # state q at position j.  acc[key]: same, for runs that reach an
    # accepting state at input end without popping the cell.
    pop: dict[tuple, dict[tuple[str, int], int]] = {}
    acc: dict[tuple, int] = {}
    watchers: dict[tuple, set[tuple]] = {}
    seen: set[tuple] = set()
    pending: set[tuple] = set()
    queue: deque[tuple] = deque()

    def schedule(key: tuple) -> None:
        if key not in pending:
            pending.add(key)
            queue.append(key)

    def evaluate(key: tuple) -> bool:
        state, top, pos = key
        improved = False
        best = acc.get(key)
        if pos == end and state in m.accepting and (best is None or best > 1):
            acc[key] = best = 1
            improved = True
        pops = pop.setdefault(key, {})
        options = [(q, push, pos) for q, push in m.moves(state, None, top)]
        if pos < end:
            options.extend((q, push, pos + 1) for q, push in
                           m.moves(state, word[pos], top))
        for q, push, npos in options:
            if not push:
                if pops.get((q, npos), stack_bound + 1) > 1:
                    pops[(q, npos)] = 1
                    improved = True
                continue
            depth = len(push)
            frontier = {(q, npos): 1}
            for offset, z in zip(range(depth - 1, -1, -1), push):
                grown: dict[tuple[str, int], int] = {}
                for (s, k), peak in frontier.items():
                    zkey = (s, z, k)
                    watchers.setdefault(zkey, set()).add(key)
                    if zkey not in seen:
                        seen.add(zkey)
                        schedule(zkey)
                    below = acc.get(zkey)
                    if below is not None:
                        cand = max(peak, offset + below)
                        if cand <= stack_bound and (best is None or cand < best):
                            acc[key] = best = cand
                            improved = True
                    for (q2, j2), pv in pop.get(zkey, {}).items():
                        cand = max(peak, offset + pv)
                        if cand > stack_bound:
                            continue
                        if offset:
                            if cand < grown.get((q2, j2), cand + 1):
                                grown[(q2, j2)] = cand
                        elif cand < pops.get((q2, j2), cand + 1):
                            pops[(q2, j2)] = cand
                            improved = True
                frontier = grown
        return improved

    root = (m.initial, BOTTOM, 0)
    seen.add(root)
    schedule(root)
    while queue:
        key = queue.popleft()
        pending.discard(key)
        if evaluate(key):
            for watcher in watchers.get(key, ()):
                schedule(watcher)
    best = acc.get(root)
    return best is not None and best <= stack_bound


@dataclass(frozen=True)
class RunStep:
    state: str
    consumed: Optional[str]
    stack: tuple[str, ...]


def find_accepting_run(m: Npda, letters: Iterable[str],
                       stack_bound: int) -> Optional[list[RunStep]]:
    """A shortest bounded accepting run as a list of steps, or None."""
    word = m.full_input(letters)
    end = len(word)
    start = (m.initial, 0, (BOTTOM,))
    parent: dict = {start: None}
    queue = [start]
    head = 0
    goal = None
    while head < len(queue):
        state, pos, stack = cfg = queue[head]
        head += 1
        if pos == end and state in m.accepting:
            goal = cfg
            break
        top = stack[0]
        nexts = [(q, push, None) for q, push in m.moves(state, None, top)]
        if pos < end:
            nexts.extend((q, push, word[pos]) for q, push in
                         m.moves(state, word[pos], top))
        for q, push, consumed in nexts:
            nstack = push + stack[1:]
            if len(nstack) > stack_bound:
                continue
            ncfg = (q, pos + (consumed is not None), nstack)
            if ncfg not in parent:
                parent[ncfg] = (cfg, consumed)
                queue.append(ncfg)
    if goal is None:
        return None
    steps = []
    cfg = goal
    while cfg is not None:
        prev = parent[cfg]
        state, _, stack = cfg
        steps.append(RunStep(state, None if prev is None else prev[1], stack))
        cfg = None if prev is None else prev[0]
    return list(reversed(steps))


def end_marker_discipline(m: Npda) -> list[str]:
    """Check that the end marker is read exactly once, last.

    Returns violations of the structural condition that makes marker
    erasure in the derived grammar exact: states entered by a
    marker-edge form an epsilon-only zone containing every accepting
    state and not the initial state.
    """
    if m.end_marker is None:
        return []
    problems = []
    zone = {q for (p, a, t), moves in m.transitions.items()
            if a == m.end_marker for q, _ in moves}
    grew = True
    while grew:
        grew = False
        for (p, a, t), moves in m.transitions.items():
            if p in zone:
                if a is not None:
                    problems.append(
                        f"state {p} reads {a!r} after the end marker")
                for q, _ in moves:
                    if q not in zone:
                        zone.add(q)
                        grew = True
    for (p, a, t), moves in m.transitions.items():
        if p not in zone and a != m.end_marker:
            for q, _ in moves:
                if q in zone:
                    problems.append(
                        f"state {q} enterable without the end marker")
    for f in sorted(m.accepting):
        if f not in zone:
            problems.append(f"accepting state {f} reachable without marker")
    if m.initial in zone:
        problems.append("initial state inside the post-marker zone")
    return sorted(set(problems))
