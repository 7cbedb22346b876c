"""Closure of a context-free language under cyclic rotation.

Works on the Chomsky normal form.  For each nonterminal X the new
grammar carries a companion X' generating (right context of X) followed
by (left context of X) relative to a derivation from the start symbol.
Rooting the rotated word at the derivation-tree leaf of its pivot
letter gives: rotations(L) = { a . r . l : S =>* l (T -> a) r } plus
the empty word when L has it, which the productions below spell out.
"""

from __future__ import annotations

from .cfg import Body, Cfg, to_cnf


def cyclic_closure(cfg: Cfg) -> Cfg:
    """Grammar for all rotations of all words of the given grammar."""
    cnf = to_cnf(cfg)
    terms = set(cnf.terminals)

    def alloc(prefix: str, i: int) -> str:
        name = f"{prefix}{i}"
        while name in terms:
            name += "!"
        return name

    order = list(cnf.nonterminals)
    plain = {x: alloc("N", i) for i, x in enumerate(order)}
    companion = {x: alloc("U", i) for i, x in enumerate(order)}
    start = "R0"
    while start in terms:
        start += "!"

    prods: dict[str, set[Body]] = {start: set()}

    def emit(head: str, body: Body) -> None:
        prods.setdefault(head, set()).add(body)

    for head, bodies in cnf.productions.items():
        for body in bodies:
            if body == ():
                emit(start, ())
            elif len(body) == 1:
                emit(plain[head], body)
                emit(start, (body[0], companion[head]))
            else:
                b, c = body
                emit(plain[head], (plain[b], plain[c]))
                emit(companion[b], (plain[c], companion[head]))
                emit(companion[c], (companion[head], plain[b]))
    emit(companion[cnf.start], ())

    nts = sorted(set(prods) | set(plain.values()) | set(companion.values()))
    return Cfg(terminals=cnf.terminals,
               nonterminals=tuple(nts),
               start=start,
               productions={h: tuple(sorted(bs)) for h, bs in prods.items()})
