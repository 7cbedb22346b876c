"""Sweeps and samplers tying each group's machines to its oracle.

A GroupHandle bundles what the front end and the validation suite need
per group: the signed generator tokens, a nontriviality oracle computed
by group algebra, the machine-side decision engine, and the built
reports.  Machine engines decide the full co-word problem: the
semi-deterministic recognizers directly, the sub-language machines
through their rotation-closed grammars.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import product
from typing import Callable, Iterator, Optional

from . import higman, houfree, houghton
from .automata import cfg_membership, semidet_accepts_enum
from .constructions import (ConstructionReport, build_gnr_coword,
                            build_gnr_fixset_machine, build_h2_machine,
                            build_hn_coword, build_hn_fixpoint_ocl,
                            build_hou_free_machine)
from .errors import InvalidRayCount
from .words import GeneratorAlphabet, GroupWord, Letter

DEFAULT_SEED = 1729

SIM_SLOPE = 3
SIM_OFFSET = 10


def sim_bound(length: int) -> int:
    """Stack allowance used for bounded runs on a length-n input."""
    return SIM_SLOPE * length + SIM_OFFSET


def signed_tokens(alphabet: GeneratorAlphabet) -> tuple[str, ...]:
    out = []
    for name in alphabet.names:
        out.extend([name, name + "^-1"])
    return tuple(out)


def word_maker(alphabet: GeneratorAlphabet) -> Callable[..., GroupWord]:
    """Token tuples to GroupWord without re-parsing text."""
    table = {}
    for index, name in enumerate(alphabet.names):
        table[name] = Letter(index, 1)
        table[name + "^-1"] = Letter(index, -1)

    def make(tokens) -> GroupWord:
        return GroupWord(alphabet, tuple(table[t] for t in tokens))

    return make


def iter_words(tokens: tuple[str, ...],
               max_len: int) -> Iterator[tuple[str, ...]]:
    for length in range(max_len + 1):
        yield from product(tokens, repeat=length)


def sample_words(tokens: tuple[str, ...], count: int, min_len: int,
                 max_len: int, seed: int) -> list[tuple[str, ...]]:
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        length = rng.randint(min_len, max_len)
        out.append(tuple(rng.choice(tokens) for _ in range(length)))
    return out


@dataclass(frozen=True)
class GroupHandle:
    """One group wired to its oracle, machine engine, and reports."""

    label: str
    file_stem: str
    alphabet: GeneratorAlphabet
    tokens: tuple[str, ...]
    nontrivial: Callable[[tuple[str, ...]], bool]
    automaton: Callable[[tuple[str, ...]], bool]
    reports: tuple[ConstructionReport, ...]
    point_images: Callable[[tuple[str, ...], str], list[str]]

    def engine(self, name: str) -> Callable[[tuple[str, ...]], bool]:
        if name == "oracle":
            return self.nontrivial
        if name == "automaton":
            return self.automaton
        raise ValueError(f"unknown engine {name!r}")


def houghton_handle(n: int) -> GroupHandle:
    if not isinstance(n, int) or n < 2:
        raise InvalidRayCount(n)
    if n == 2:
        rep = build_h2_machine()
        reports = (rep,)
        gens = houghton.h2_generators()
        machine = rep.machine

        def automaton(tokens) -> bool:
            return semidet_accepts_enum(machine, tokens)
    else:
        rep = build_hn_fixpoint_ocl(n)
        coword = build_hn_coword(n)
        reports = (rep, coword)
        gens = houghton.s_generators(n)
        grammar = coword.machine

        def automaton(tokens) -> bool:
            return cfg_membership(grammar, tokens)

    make = word_maker(rep.alphabet)

    def nontrivial(tokens) -> bool:
        return not houghton.evaluate_word(make(tokens), gens).is_identity()

    def point_images(tokens, text: str) -> list[str]:
        point = houghton.parse_point(text)
        trail = houghton.trace_point(make(tokens), point, n, gens)
        return [str(p) for p in trail]

    return GroupHandle(label=rep.group, file_stem=f"houghton-{n}",
                       alphabet=rep.alphabet,
                       tokens=signed_tokens(rep.alphabet),
                       nontrivial=nontrivial, automaton=automaton,
                       reports=reports, point_images=point_images)


def hou_free_handle(rank: int) -> GroupHandle:
    rep = build_hou_free_machine(rank)
    machine = rep.machine
    make = word_maker(rep.alphabet)

    def nontrivial(tokens) -> bool:
        return not houfree.word_to_element(make(tokens), rank).is_identity()

    def automaton(tokens) -> bool:
        return semidet_accepts_enum(machine, tokens)

    elements = {}
    for i in range(1, rank + 1):
        elements[f"x{i}"] = houfree.mult_generator(i, rank)
        elements[f"sigma{i}"] = houfree.sigma_generator(i, rank)
    for name, e in list(elements.items()):
        elements[name + "^-1"] = houfree.inverse(e)

    def point_images(tokens, text: str) -> list[str]:
        vertex = houfree.parse_vertex("" if text == "eps" else text, rank)
        out = [houfree.vertex_to_text(vertex) or "eps"]
        for token in tokens:
            vertex = elements[token].apply(vertex)
            out.append(houfree.vertex_to_text(vertex) or "eps")
        return out

    return GroupHandle(label=rep.group, file_stem=f"hou-free-{rank}",
                       alphabet=rep.alphabet,
                       tokens=signed_tokens(rep.alphabet),
                       nontrivial=nontrivial, automaton=automaton,
                       reports=(rep,), point_images=point_images)


def higman_handle(n: int, r: int,
                  gens: dict[str, higman.PrefixMap]) -> GroupHandle:
    rep = build_gnr_fixset_machine(n, r, gens)
    coword = build_gnr_coword(n, r, gens)
    grammar = coword.machine
    make = word_maker(rep.alphabet)

    def nontrivial(tokens) -> bool:
        return not higman.is_identity(higman.word_to_element(make(tokens),
                                                             gens))

    def automaton(tokens) -> bool:
        return cfg_membership(grammar, tokens)

    maps = {}
    for name, f in gens.items():
        maps[name] = f
        maps[name + "^-1"] = higman.inverse(f)

    def point_images(tokens, text: str) -> list[str]:
        seq = higman.parse_test_sequence(text, n, r)
        out = [str(seq)]
        for token in tokens:
            seq = higman.apply_to_sequence(maps[token], seq)
            out.append(str(seq))
        return out

    return GroupHandle(label=rep.group, file_stem=f"higman-{n}-{r}",
                       alphabet=rep.alphabet,
                       tokens=signed_tokens(rep.alphabet),
                       nontrivial=nontrivial, automaton=automaton,
                       reports=(rep, coword), point_images=point_images)


@dataclass(frozen=True)
class CheckOutcome:
    exhaustive: int
    sampled: int
    disagreements: tuple[tuple[str, ...], ...]

    @property
    def ok(self) -> bool:
        return not self.disagreements


def check_handle(handle: GroupHandle, max_len: int, sample: int = 0,
                 seed: int = DEFAULT_SEED) -> CheckOutcome:
    """Oracle versus machine engine, exhaustive then sampled."""
    bad = []
    count = 0
    for w in iter_words(handle.tokens, max_len):
        count += 1
        if handle.automaton(w) != handle.nontrivial(w):
            bad.append(w)
    extra = []
    if sample > 0 and max_len >= 1:
        extra = sample_words(handle.tokens, sample, max_len + 1,
                             2 * max_len, seed)
        for w in extra:
            if handle.automaton(w) != handle.nontrivial(w):
                bad.append(w)
    return CheckOutcome(exhaustive=count, sampled=len(extra),
                        disagreements=tuple(sorted(set(bad))))
