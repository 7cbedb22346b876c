"""Exact translation of a pushdown machine into a grammar.

The pipeline wraps the machine for empty-stack acceptance, normalizes
pushes to length at most two, saturates the reachable pop relation, and
emits triple productions only over realizable state pairs.  When the
machine declares an end marker, its placement is checked structurally
first (read exactly once, last), so erasing the marker terminal from
the grammar afterwards is exact rather than an approximation.
"""

from __future__ import annotations

from .cfg import Cfg
from .npda import BOTTOM, Npda, end_marker_discipline

RawMove = tuple[str, str | None, str, str, tuple[str, ...]]


def _wrap_empty_stack(m: Npda) -> tuple[list[RawMove], str, str, set[str]]:
    """Empty-stack form: fresh outer bottom, drain state after accept."""
    moves: list[RawMove] = []
    for (p, a, top), targets in m.transitions.items():
        for q, push in targets:
            moves.append((p, a, top, q, push))
    outer = "@bot"
    while outer in m.stack_symbols:
        outer += "."
    q_start, q_drain = "@start", "@drain"
    while q_start in m.states:
        q_start += "."
    while q_drain in m.states:
        q_drain += "."
    moves.append((q_start, None, outer, m.initial, (BOTTOM, outer)))
    stack_syms = set(m.stack_symbols) | {outer}
    for f in m.accepting:
        for y in stack_syms:
            moves.append((f, None, y, q_drain, ()))
    for y in stack_syms:
        moves.append((q_drain, None, y, q_drain, ()))
    return moves, q_start, outer, stack_syms


def _normalize_pushes(moves: list[RawMove],
                      taken: set[str]) -> list[RawMove]:
    out: list[RawMove] = []
    chain = 0
    for p, a, top, q, push in moves:
        if len(push) <= 2:
            out.append((p, a, top, q, push))
            continue
        prev = p
        letter = a
        matched = top
        for i in range(len(push) - 1, 1, -1):
            chain += 1
            step = f"@chain{chain}"
            while step in taken:
                step += "."
            taken.add(step)
            out.append((prev, letter, matched, step, (push[i - 1], push[i])))
            prev = step
            letter = None
            matched = push[i - 1]
        out.append((prev, letter, matched, q, (push[0], push[1])))
    return out


def _saturate(moves: list[RawMove]) -> dict[tuple[str, str], set[str]]:
    """All (q, Y) -> p with a run from q that net-pops Y ending in p."""
    pop: dict[tuple[str, str], set[str]] = {}
    push1_into: dict[tuple[str, str], list[tuple[str, str]]] = {}
    push2_into: dict[tuple[str, str], list[tuple[str, str, str]]] = {}
    waiting: dict[tuple[str, str], list[tuple[str, str]]] = {}
    queue: list[tuple[str, str, str]] = []

    def add(q: str, y: str, p: str) -> None:
        found = pop.setdefault((q, y), set())
        if p not in found:
            found.add(p)
            queue.append((q, y, p))

    for p, a, top, q, push in moves:
        if len(push) == 0:
            add(p, top, q)
        elif len(push) == 1:
            push1_into.setdefault((q, push[0]), []).append((p, top))
        else:
            push2_into.setdefault((q, push[0]), []).append((p, top, push[1]))

    while queue:
        q, y, p = queue.pop()
        for q0, y0 in push1_into.get((q, y), ()):
            add(q0, y0, p)
        for q0, y0, z2 in push2_into.get((q, y), ()):
            waiting.setdefault((p, z2), []).append((q0, y0))
            for p2 in pop.get((p, z2), set()).copy():
                add(q0, y0, p2)
        for q0, y0 in waiting.get((q, y), ()):
            add(q0, y0, p)
    return pop


def npda_to_cfg(m: Npda) -> Cfg:
    """Grammar for the machine's language over its input alphabet.

    Raises ValueError when the machine declares an end marker but can
    read it other than exactly once at the end.
    """
    problems = end_marker_discipline(m)
    if problems:
        raise ValueError("end marker misuse: " + "; ".join(problems))

    moves, q_start, outer, _ = _wrap_empty_stack(m)
    taken = set(m.states) | {q_start}
    taken.update(q for _, _, _, q, _ in moves)
    moves = _normalize_pushes(moves, taken)
    pop = _saturate(moves)

    def nt(q: str, y: str, p: str) -> str:
        return f"{q}|{y}|{p}"

    prods: dict[str, set[tuple[str, ...]]] = {}

    def emit(head: str, body: tuple[str, ...]) -> None:
        prods.setdefault(head, set()).add(body)

    for p, a, top, q, push in moves:
        prefix = () if a is None else (a,)
        if len(push) == 0:
            emit(nt(p, top, q), prefix)
        elif len(push) == 1:
            for s in pop.get((q, push[0]), ()):
                emit(nt(p, top, s), prefix + (nt(q, push[0], s),))
        else:
            for s1 in pop.get((q, push[0]), ()):
                for s2 in pop.get((s1, push[1]), ()):
                    emit(nt(p, top, s2),
                         prefix + (nt(q, push[0], s1), nt(s1, push[1], s2)))

    start = "S"
    while start in prods:
        start += "."
    for s in pop.get((q_start, outer), ()):
        emit(start, (nt(q_start, outer, s),))
    prods.setdefault(start, set())

    reachable = {start}
    frontier = [start]
    terminals = set(m.input_symbols)
    if m.end_marker is not None:
        terminals.add(m.end_marker)
    while frontier:
        head = frontier.pop()
        for body in prods.get(head, ()):
            for sym in body:
                if sym not in terminals and sym not in reachable:
                    reachable.add(sym)
                    frontier.append(sym)
    kept = {h: bs for h, bs in prods.items() if h in reachable}

    if m.end_marker is not None:
        marker = m.end_marker
        kept = {h: {tuple(s for s in b if s != marker) for b in bs}
                for h, bs in kept.items()}
        terminals.discard(marker)

    used_terminals = sorted(terminals)
    return Cfg(terminals=tuple(used_terminals),
               nonterminals=tuple(sorted(set(kept) | {start})),
               start=start,
               productions={h: tuple(sorted(bs)) for h, bs in kept.items()})
