"""Exact element algebra for the Houghton groups H_n.

H_n acts on the star of n rays: the center point, written Origin here,
and points (k, l) with k >= 1 on ray l in 1..n.  An element is stored as
its eventual per-ray shifts plus the finite table of points that do not
yet follow the shift rule.  That pair determines the bijection exactly,
so identity testing is structural equality against the trivial element.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional

from .errors import InvalidRay, InvalidRayCount, RayCountMismatch
from .words import GeneratorAlphabet, GroupWord


@dataclass(frozen=True)
class RayPoint:
    """A point of the n-ray star: Origin (k=0) or (k, l) with k >= 1."""

    k: int
    l: int

    def __post_init__(self) -> None:
        if self.k == 0:
            # Origin carries no ray index; normalize to l=0.
            if self.l != 0:
                raise InvalidRay(f"origin must have ray 0, got {self.l}")
        elif self.k < 1 or self.l < 1:
            raise InvalidRay(f"bad point ({self.k},{self.l})")

    @property
    def is_origin(self) -> bool:
        return self.k == 0

    def check(self, n: int) -> "RayPoint":
        if self.l > n:
            raise InvalidRay(f"ray {self.l} out of range for {n} rays")
        return self

    def __str__(self) -> str:
        return "0" if self.is_origin else f"({self.k},{self.l})"


ORIGIN = RayPoint(0, 0)


def pair(k: int, l: int) -> RayPoint:
    return RayPoint(k, l)


def parse_point(text: str) -> RayPoint:
    """Parse ``0`` or ``(k,l)``."""
    text = text.strip()
    if text == "0":
        return ORIGIN
    if text.startswith("(") and text.endswith(")"):
        parts = text[1:-1].split(",")
        if len(parts) == 2:
            try:
                return RayPoint(int(parts[0]), int(parts[1]))
            except ValueError:
                pass
    raise InvalidRay(f"cannot parse point {text!r}")


@dataclass(frozen=True, eq=False)
class HoughtonElement:
    """An element of H_n: eventual shifts plus exceptional table.

    Far out on ray l the element sends (k, l) to (k + shifts[l-1], l);
    the table lists exactly the points whose image breaks that rule
    (Origin is listed iff it moves).  Canonical, so == is the group
    equality.
    """

    n: int
    shifts: tuple[int, ...]
    table: dict[RayPoint, RayPoint] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.n < 2:
            raise InvalidRayCount(f"need at least 2 rays, got {self.n}")
        if len(self.shifts) != self.n:
            raise InvalidRay("shift vector length differs from ray count")
        if sum(self.shifts) != 0:
            raise InvalidRay(f"shifts must sum to 0, got {self.shifts}")
        cleaned = {}
        for src, dst in self.table.items():
            src.check(self.n)
            dst.check(self.n)
            if self._eventual(src) != dst:
                cleaned[src] = dst
        if len(set(cleaned.values())) != len(cleaned):
            raise InvalidRay("exceptional table is not injective")
        object.__setattr__(self, "table", cleaned)

    def __hash__(self) -> int:
        return hash((self.n, self.shifts, tuple(sorted(
            (s.k, s.l, d.k, d.l) for s, d in self.table.items()))))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, HoughtonElement):
            return NotImplemented
        return (self.n, self.shifts, self.table) == (other.n, other.shifts, other.table)

    def _eventual(self, p: RayPoint) -> Optional[RayPoint]:
        """Image under the shift rule alone; None where the rule is mute."""
        if p.is_origin:
            return p
        k = p.k + self.shifts[p.l - 1]
        return RayPoint(k, p.l) if k >= 1 else None

    def apply(self, p: RayPoint) -> RayPoint:
        p.check(self.n)
        if p in self.table:
            return self.table[p]
        image = self._eventual(p)
        if image is None:
            raise InvalidRay(f"element table incomplete at {p}")
        return image

    def is_identity(self) -> bool:
        return not self.table and all(s == 0 for s in self.shifts)


def identity(n: int) -> HoughtonElement:
    return HoughtonElement(n, (0,) * n)


def shift_generator(i: int, n: int) -> HoughtonElement:
    """The shift s_i: pulls ray i inward one step, pushing the freed
    center point out along ray i+1 (rays modulo n)."""
    if n < 2:
        raise InvalidRayCount(f"need at least 2 rays, got {n}")
    if not 1 <= i <= n:
        raise InvalidRay(f"ray {i} out of range for {n} rays")
    j = i % n + 1
    shifts = [0] * n
    shifts[i - 1] = -1
    shifts[j - 1] = 1
    table = {RayPoint(1, i): ORIGIN, ORIGIN: RayPoint(1, j)}
    return HoughtonElement(n, tuple(shifts), table)


def _ray_threshold(e: HoughtonElement, l: int) -> int:
    """Largest k with (k, l) in the exceptional domain (0 if none)."""
    return max((p.k for p in e.table if not p.is_origin and p.l == l), default=0)


def compose(a: HoughtonElement, b: HoughtonElement) -> HoughtonElement:
    """The element acting as p -> b(a(p)), a first."""
    if a.n != b.n:
        raise RayCountMismatch(f"{a.n} rays vs {b.n} rays")
    n = a.n
    shifts = tuple(sa + sb for sa, sb in zip(a.shifts, b.shifts))
    table: dict[RayPoint, RayPoint] = {}
    candidates: list[RayPoint] = [ORIGIN]
    for l in range(1, n + 1):
        # Beyond this k both factors act by pure shifts on ray l, so the
        # composite follows its own shift rule there.
        bound = max(_ray_threshold(a, l), _ray_threshold(b, l) - a.shifts[l - 1], 0)
        candidates.extend(RayPoint(k, l) for k in range(1, bound + 1))
    for p in candidates:
        table[p] = b.apply(a.apply(p))
    return HoughtonElement(n, shifts, table)


def inverse(e: HoughtonElement) -> HoughtonElement:
    shifts = tuple(-s for s in e.shifts)
    table = {dst: src for src, dst in e.table.items()}
    return HoughtonElement(e.n, shifts, table)


def s_alphabet(n: int) -> GeneratorAlphabet:
    return GeneratorAlphabet(tuple(f"s{i}" for i in range(1, n + 1)))


def s_generators(n: int) -> dict[str, HoughtonElement]:
    return {f"s{i}": shift_generator(i, n) for i in range(1, n + 1)}


def h2_generators() -> dict[str, HoughtonElement]:
    """The rank-2 pair: a translation t and the transposition tau.

    t moves every point one step toward ray 1 (ray 2 feeds the center,
    the center feeds ray 1); tau swaps the center with (1,1).
    """
    t = shift_generator(2, 2)
    tau = HoughtonElement(2, (0, 0), {ORIGIN: RayPoint(1, 1), RayPoint(1, 1): ORIGIN})
    return {"t": t, "tau": tau}


def generator_alphabet(gens: dict[str, HoughtonElement]) -> GeneratorAlphabet:
    return GeneratorAlphabet(tuple(gens))


def _letter_elements(w: GroupWord,
                     gens: dict[str, HoughtonElement]) -> Iterable[HoughtonElement]:
    table: dict[int, tuple[HoughtonElement, HoughtonElement]] = {}
    for name, g in gens.items():
        if name in w.alphabet:
            table[w.alphabet.index(name)] = (g, inverse(g))
    for letter in w:
        if letter.generator not in table:
            name = w.alphabet.names[letter.generator]
            raise InvalidRay(f"no Houghton generator named {name!r}")
        plus, minus = table[letter.generator]
        yield plus if letter.exponent == 1 else minus


def evaluate_word(w: GroupWord, gens: dict[str, HoughtonElement]) -> HoughtonElement:
    """Fold the named generators over w, leftmost letter acting first."""
    e = None
    for g in _letter_elements(w, gens):
        e = g if e is None else compose(e, g)
    if e is None:
        n = next(iter(gens.values())).n if gens else 2
        return identity(n)
    return e


def word_to_element(w: GroupWord, n: int) -> HoughtonElement:
    """Evaluate w in H_n over the shifts s_1..s_n."""
    e = evaluate_word(w, s_generators(n))
    if e.n != n:
        raise RayCountMismatch(f"{e.n} rays vs {n} rays")
    return e


def trace_point(w: GroupWord, p: RayPoint, n: int,
                gens: Optional[dict[str, HoughtonElement]] = None) -> list[RayPoint]:
    """Images of p under successive prefixes of w (|w|+1 entries)."""
    p.check(n)
    out = [p]
    for g in _letter_elements(w, gens if gens is not None else s_generators(n)):
        p = g.apply(p)
        out.append(p)
    return out


def is_identity_points(w: GroupWord, n: int,
                       gens: Optional[dict[str, HoughtonElement]] = None) -> bool:
    """Identity test by brute pointwise evaluation, no element algebra.

    A word of length L moves no point across more than L ray steps, so
    fixing the origin and every (k, l) with k <= L+1 decides the matter.
    Used as an independent cross-check on word_to_element.
    """
    if gens is None:
        gens = s_generators(n)
    elements = list(_letter_elements(w, gens))

    def image(p: RayPoint) -> RayPoint:
        for g in elements:
            p = g.apply(p)
        return p

    if image(ORIGIN) != ORIGIN:
        return False
    for l in range(1, n + 1):
        for k in range(1, len(w.letters) + 2):
            p = RayPoint(k, l)
            if image(p) != p:
                return False
    return True
