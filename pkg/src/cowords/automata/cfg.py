"""Context-free grammars, Chomsky normal form, and CYK membership.

Grammars are kept small and explicit: productions map a nonterminal to
a set of alternative bodies, each body a tuple of symbols (empty tuple
for the empty word).  Membership goes through a cached normal form and
an incremental CYK table that can push and pop one letter at a time, so
sweeping a prefix tree of words costs one new column per node.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from ..errors import UnknownTerminal

Body = tuple[str, ...]


@dataclass(frozen=True, eq=False)
class Cfg:
    terminals: tuple[str, ...]
    nonterminals: tuple[str, ...]
    start: str
    productions: dict[str, tuple[Body, ...]]

    def __post_init__(self) -> None:
        object.__setattr__(self, "terminals", tuple(self.terminals))
        object.__setattr__(self, "nonterminals", tuple(self.nonterminals))
        terms = set(self.terminals)
        nts = set(self.nonterminals)
        if len(terms) != len(self.terminals):
            raise ValueError("duplicate terminals")
        if len(nts) != len(self.nonterminals):
            raise ValueError("duplicate nonterminals")
        if terms & nts:
            raise ValueError("terminals and nonterminals must be disjoint")
        for s in list(terms) + list(nts):
            if not s or any(c.isspace() for c in s):
                raise ValueError(f"symbol {s!r} must be a nonempty token")
        if self.start not in nts:
            raise ValueError(f"start symbol {self.start!r} undeclared")
        normalized: dict[str, tuple[Body, ...]] = {}
        for head, bodies in self.productions.items():
            if head not in nts:
                raise ValueError(f"production head {head!r} undeclared")
            clean = set()
            for body in bodies:
                body = tuple(body)
                for sym in body:
                    if sym not in terms and sym not in nts:
                        raise ValueError(f"undeclared symbol {sym!r} in body")
                clean.add(body)
            if clean:
                normalized[head] = tuple(sorted(clean))
        object.__setattr__(self, "productions", normalized)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Cfg):
            return NotImplemented
        return (set(self.terminals) == set(other.terminals)
                and set(self.nonterminals) == set(other.nonterminals)
                and self.start == other.start
                and self.productions == other.productions)

    __hash__ = None  # type: ignore[assignment]

    def bodies(self, head: str) -> tuple[Body, ...]:
        return self.productions.get(head, ())


def _fresh_namer(used: set[str]):
    def fresh(base: str) -> str:
        name = base
        k = 1
        while name in used:
            k += 1
            name = f"{base}.{k}"
        used.add(name)
        return name
    return fresh


def _trim(prods: dict[str, set[Body]], start: str,
          terms: set[str]) -> dict[str, set[Body]]:
    generating: set[str] = set()
    changed = True
    while changed:
        changed = False
        for head, bodies in prods.items():
            if head in generating:
                continue
            for body in bodies:
                if all(s in terms or s in generating for s in body):
                    generating.add(head)
                    changed = True
                    break
    pruned = {h: {b for b in bs
                  if all(s in terms or s in generating for s in b)}
              for h, bs in prods.items() if h in generating}
    reachable = {start}
    frontier = [start]
    while frontier:
        head = frontier.pop()
        for body in pruned.get(head, ()):
            for s in body:
                if s not in terms and s not in reachable:
                    reachable.add(s)
                    frontier.append(s)
    return {h: bs for h, bs in pruned.items() if h in reachable and bs}


def to_cnf(cfg: Cfg) -> Cfg:
    """Chomsky normal form: A -> B C or A -> a, plus start -> eps.

    The result has a fresh start symbol that never occurs in a body.
    Cached on the grammar object.
    """
    cached = getattr(cfg, "_cnf", None)
    if cached is not None:
        return cached
    terms = set(cfg.terminals)
    prods: dict[str, set[Body]] = {h: set(bs)
                                   for h, bs in cfg.productions.items()}
    prods = _trim(prods, cfg.start, terms)
    used = set(cfg.nonterminals) | terms
    fresh = _fresh_namer(used)

    start = fresh("S!")
    prods[start] = {(cfg.start,)} if cfg.start in prods else set()

    by_terminal: dict[str, str] = {}
    for head in list(prods):
        new_bodies = set()
        for body in prods[head]:
            if len(body) >= 2:
                parts = []
                for sym in body:
                    if sym in terms:
                        if sym not in by_terminal:
                            helper = fresh(f"T!{sym}")
                            by_terminal[sym] = helper
                            prods[helper] = {(sym,)}
                        parts.append(by_terminal[sym])
                    else:
                        parts.append(sym)
                body = tuple(parts)
            new_bodies.add(body)
        prods[head] = new_bodies

    by_suffix: dict[Body, str] = {}
    pending: list[tuple[str, Body]] = []

    def shorten(body: Body) -> Body:
        if len(body) <= 2:
            return body
        suffix = body[1:]
        helper = by_suffix.get(suffix)
        if helper is None:
            helper = fresh("B!")
            by_suffix[suffix] = helper
            pending.append((helper, suffix))
        return (body[0], helper)

    for head in list(prods):
        prods[head] = {shorten(b) for b in prods[head]}
    while pending:
        helper, suffix = pending.pop()
        prods[helper] = {shorten(suffix)}

    nullable: set[str] = set()
    changed = True
    while changed:
        changed = False
        for head, bodies in prods.items():
            if head in nullable:
                continue
            if any(all(s in nullable for s in b) for b in bodies):
                nullable.add(head)
                changed = True
    has_eps = start in nullable
    for head in list(prods):
        new_bodies = set()
        for body in prods[head]:
            keep = [[]]
            for sym in body:
                if sym in nullable:
                    keep = [v + [sym] for v in keep] + [list(v) for v in keep]
                else:
                    keep = [v + [sym] for v in keep]
            for variant in keep:
                if variant:
                    new_bodies.add(tuple(variant))
        prods[head] = new_bodies

    closure: dict[str, set[str]] = {}
    for head in prods:
        reach = {head}
        frontier = [head]
        while frontier:
            cur = frontier.pop()
            for body in prods.get(cur, ()):
                if len(body) == 1 and body[0] not in terms:
                    if body[0] not in reach:
                        reach.add(body[0])
                        frontier.append(body[0])
        closure[head] = reach
    final: dict[str, set[Body]] = {}
    for head, reach in closure.items():
        bodies = set()
        for other in reach:
            for body in prods.get(other, ()):
                if len(body) == 2 or (len(body) == 1 and body[0] in terms):
                    bodies.add(body)
        final[head] = bodies

    final = _trim(final, start, terms)
    if has_eps:
        final.setdefault(start, set()).add(())
    nts = sorted(set(final) | {start})
    result = Cfg(terminals=tuple(sorted(terms)),
                 nonterminals=tuple(nts),
                 start=start,
                 productions={h: tuple(sorted(bs))
                              for h, bs in final.items()})
    object.__setattr__(cfg, "_cnf", result)
    return result


@dataclass(frozen=True)
class CykTables:
    start: int
    nullable_start: bool
    terminals: frozenset[str]
    term: dict[str, frozenset[int]]
    by_left: dict[int, tuple[tuple[int, int], ...]]


def membership_tables(cfg: Cfg) -> CykTables:
    """Interned CYK lookup tables for the grammar; cached."""
    cached = getattr(cfg, "_cyk", None)
    if cached is not None:
        return cached
    cnf = to_cnf(cfg)
    index = {name: i for i, name in enumerate(cnf.nonterminals)}
    term: dict[str, set[int]] = {}
    by_left: dict[int, list[tuple[int, int]]] = {}
    nullable = False
    for head, bodies in cnf.productions.items():
        a = index[head]
        for body in bodies:
            if body == ():
                nullable = True
            elif len(body) == 1:
                term.setdefault(body[0], set()).add(a)
            else:
                b, c = index[body[0]], index[body[1]]
                by_left.setdefault(b, []).append((c, a))
    tables = CykTables(
        start=index[cnf.start],
        nullable_start=nullable,
        terminals=frozenset(cfg.terminals),
        term={a: frozenset(s) for a, s in term.items()},
        by_left={b: tuple(sorted(pairs)) for b, pairs in by_left.items()},
    )
    object.__setattr__(cfg, "_cyk", tables)
    return tables


class IncrementalCyk:
    """CYK table grown and shrunk one letter at a time.

    Pushing a letter adds one column; popping removes it.  Sweeping a
    prefix tree of words by push/pop therefore reuses every shared
    prefix instead of reparsing it.
    """

    def __init__(self, cfg: Cfg):
        self.tables = membership_tables(cfg)
        self.cols: list[list[set[int]]] = []

    def __len__(self) -> int:
        return len(self.cols)

    def push(self, letter: str) -> None:
        t = self.tables
        if letter not in t.terminals:
            raise UnknownTerminal(letter)
        j = len(self.cols)
        col: list[set[int]] = [set() for _ in range(j + 1)]
        col[j] = set(t.term.get(letter, ()))
        for i in range(j - 1, -1, -1):
            acc = col[i]
            for k in range(i, j):
                left = self.cols[k][i]
                right = col[k + 1]
                if not left or not right:
                    continue
                for b in left:
                    for c, a in t.by_left.get(b, ()):
                        if c in right:
                            acc.add(a)
        self.cols.append(col)

    def pop(self) -> None:
        self.cols.pop()

    def accepts(self) -> bool:
        if not self.cols:
            return self.tables.nullable_start
        return self.tables.start in self.cols[-1][0]


def cfg_membership(cfg: Cfg, letters: Sequence[str] | Iterable[str]) -> bool:
    """Whether the grammar generates the given word."""
    cyk = IncrementalCyk(cfg)
    for a in letters:
        cyk.push(a)
    return cyk.accepts()
