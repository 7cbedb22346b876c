"""Plain-text machine files.

One record per line, keyword first, whitespace separated, sorted
canonically so that formatting is byte-deterministic and a format/parse
round trip is lossless.  The token `eps` stands for the empty letter in
transitions and for the empty body in productions, so no symbol may be
named `eps` in a serialized machine.
"""

from __future__ import annotations

from .cfg import Cfg
from .npda import Npda
from .semidet import PreambleSpec, SemiDetPda

_EPS = "eps"
_ARROW = "->"


def _check_token(tok: str) -> str:
    if tok == _EPS or tok == _ARROW or not tok or any(
            c.isspace() for c in tok):
        raise ValueError(f"symbol {tok!r} cannot be serialized")
    return tok


def format_npda(m: Npda) -> str:
    lines = ["npda"]
    lines.append(" ".join(["inputs"] +
                          sorted(_check_token(s) for s in m.input_symbols)))
    if m.end_marker is not None:
        lines.append(f"endmarker {_check_token(m.end_marker)}")
    lines.append(" ".join(["stack"] +
                          sorted(_check_token(s) for s in m.stack_symbols)))
    lines.append(f"initial {_check_token(m.initial)}")
    for s in sorted(m.states):
        lines.append(f"state {_check_token(s)}")
    for s in sorted(m.accepting):
        lines.append(f"accept {s}")
    trans = []
    for (p, a, top), moves in m.transitions.items():
        for q, push in moves:
            head = [p, _EPS if a is None else a, top, _ARROW, q]
            trans.append(" ".join(head + list(push)))
    for line in sorted(trans):
        lines.append(f"trans {line}")
    return "\n".join(lines) + "\n"


def _split(text: str) -> list[list[str]]:
    rows = []
    for raw in text.splitlines():
        line = raw.strip()
        if line and not line.startswith("//"):
            rows.append(line.split())
    return rows


def parse_npda(text: str) -> Npda:
    rows = _split(text)
    if not rows or rows[0] != ["npda"]:
        raise ValueError("expected a machine file starting with 'npda'")
    inputs: list[str] = []
    stack: list[str] = []
    states: list[str] = []
    accepting: list[str] = []
    initial = None
    end_marker = None
    transitions: dict = {}
    for row in rows[1:]:
        kw, rest = row[0], row[1:]
        if kw == "inputs":
            inputs = rest
        elif kw == "endmarker" and len(rest) == 1:
            end_marker = rest[0]
        elif kw == "stack":
            stack = rest
        elif kw == "initial" and len(rest) == 1:
            initial = rest[0]
        elif kw == "state" and len(rest) == 1:
            states.append(rest[0])
        elif kw == "accept" and len(rest) == 1:
            accepting.append(rest[0])
        elif kw == "trans" and len(rest) >= 5 and rest[3] == _ARROW:
            p, a, top, _, q = rest[:5]
            push = tuple(rest[5:])
            letter = None if a == _EPS else a
            key = (p, letter, top)
            moves = transitions.setdefault(key, [])
            if (q, push) not in moves:
                moves.append((q, push))
        else:
            raise ValueError(f"unrecognized machine line: {' '.join(row)}")
    if initial is None:
        raise ValueError("machine file missing an initial state")
    return Npda(states=tuple(states),
                initial=initial,
                accepting=frozenset(accepting),
                input_symbols=tuple(inputs),
                stack_symbols=tuple(stack),
                transitions={k: tuple(v) for k, v in transitions.items()},
                end_marker=end_marker)


def format_cfg(g: Cfg) -> str:
    lines = ["cfg"]
    lines.append(" ".join(["terminals"] +
                          sorted(_check_token(s) for s in g.terminals)))
    lines.append(" ".join(["nonterminals"] +
                          sorted(_check_token(s) for s in g.nonterminals)))
    lines.append(f"start {g.start}")
    prods = []
    for head, bodies in g.productions.items():
        for body in bodies:
            rhs = list(body) if body else [_EPS]
            prods.append(" ".join([head, _ARROW] + rhs))
    for line in sorted(prods):
        lines.append(f"prod {line}")
    return "\n".join(lines) + "\n"


def parse_cfg(text: str) -> Cfg:
    rows = _split(text)
    if not rows or rows[0] != ["cfg"]:
        raise ValueError("expected a grammar file starting with 'cfg'")
    terminals: list[str] = []
    nonterminals: list[str] = []
    start = None
    prods: dict[str, list] = {}
    for row in rows[1:]:
        kw, rest = row[0], row[1:]
        if kw == "terminals":
            terminals = rest
        elif kw == "nonterminals":
            nonterminals = rest
        elif kw == "start" and len(rest) == 1:
            start = rest[0]
        elif kw == "prod" and len(rest) >= 3 and rest[1] == _ARROW:
            head = rest[0]
            body = () if rest[2:] == [_EPS] else tuple(rest[2:])
            bodies = prods.setdefault(head, [])
            if body not in bodies:
                bodies.append(body)
        else:
            raise ValueError(f"unrecognized grammar line: {' '.join(row)}")
    if start is None:
        raise ValueError("grammar file missing a start symbol")
    return Cfg(terminals=tuple(terminals),
               nonterminals=tuple(nonterminals),
               start=start,
               productions={h: tuple(v) for h, v in prods.items()})


def format_semidet(m: SemiDetPda) -> str:
    lines = ["semidetpda"]
    lines.append(" ".join(
        ["preamble-symbols"] +
        sorted(_check_token(s) for s in m.preamble.symbols)))
    for a, b in sorted(m.preamble.forbidden):
        lines.append(f"preamble-forbid {a} {b}")
    for s in sorted(m.preamble.singletons):
        lines.append(f"preamble-singleton {s}")
    mult, add = m.preamble.bound
    lines.append(f"preamble-bound {mult} {add}")
    lines.append("body")
    return "\n".join(lines) + "\n" + format_npda(m.body)


def parse_semidet(text: str) -> SemiDetPda:
    head, sep, tail = text.partition("\nbody\n")
    if not sep:
        raise ValueError("semi-deterministic machine file missing its body")
    rows = _split(head)
    if not rows or rows[0] != ["semidetpda"]:
        raise ValueError("expected a file starting with 'semidetpda'")
    symbols: list[str] = []
    forbidden: list[tuple[str, str]] = []
    singletons: list[str] = []
    bound = None
    for row in rows[1:]:
        kw, rest = row[0], row[1:]
        if kw == "preamble-symbols":
            symbols = rest
        elif kw == "preamble-forbid" and len(rest) == 2:
            forbidden.append((rest[0], rest[1]))
        elif kw == "preamble-singleton" and len(rest) == 1:
            singletons.append(rest[0])
        elif kw == "preamble-bound" and len(rest) == 2:
            bound = (int(rest[0]), int(rest[1]))
        else:
            raise ValueError(f"unrecognized preamble line: {' '.join(row)}")
    if bound is None:
        raise ValueError("semi-deterministic machine missing its bound")
    spec = PreambleSpec(symbols=tuple(symbols),
                        forbidden=frozenset(forbidden),
                        singletons=frozenset(singletons),
                        bound=bound)
    return SemiDetPda(body=parse_npda(tail), preamble=spec)


def format_automaton(m) -> str:
    if isinstance(m, SemiDetPda):
        return format_semidet(m)
    if isinstance(m, Npda):
        return format_npda(m)
    if isinstance(m, Cfg):
        return format_cfg(m)
    raise TypeError(f"cannot serialize {type(m).__name__}")


def parse_automaton(text: str):
    rows = _split(text)
    if not rows:
        raise ValueError("empty machine file")
    tag = rows[0][0]
    if tag == "semidetpda":
        return parse_semidet(text)
    if tag == "npda":
        return parse_npda(text)
    if tag == "cfg":
        return parse_cfg(text)
    raise ValueError(f"unrecognized machine file tag {tag!r}")
