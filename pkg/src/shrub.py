#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Shrubberies: the light leaves of the affine A1 Hecke category towards
the unit object.

This module provides functionality to build, parse and enumerate
shrubberies, to read off their words and decorated 01-sequences, to
compare them in the partial order used for Gaussian elimination, and
to uproot stems.
"""

import logging
import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

from src.dg import alternating_word, build_tilde_C, is_subword
from src.exceptions import ArgError, LengthMismatch, NoStem, ParseError

# Logger setup
logger = logging.getLogger(__name__)

RED = "red"
BLUE = "blue"
SHRUB_COLORS = (RED, BLUE)
LETTER = {RED: "s", BLUE: "t"}
OPPOSITE = {RED: BLUE, BLUE: RED}

OPEN, DOT, CLOSE, SEPARATOR = "U1", "U0", "D1", "D0"


@dataclass(frozen=True)
class Shrub:
    """
    A dot (no slots) or an arch of the given color over k >= 1 slots,
    each slot a shrubbery of the opposite color.
    """

    color: str
    slots: Tuple["Shrubbery", ...] = ()

    def __post_init__(self):
        if self.color not in SHRUB_COLORS:
            raise ArgError(f"Unknown shrub color '{self.color}'")
        for slot in self.slots:
            if any(inner.color == self.color for inner in slot.shrubs):
                raise ArgError(f"A {self.color} arch can only hold {OPPOSITE[self.color]} shrubs")

    @property
    def is_dot(self) -> bool:
        return not self.slots

    @property
    def length(self) -> int:
        if self.is_dot:
            return 1
        return len(self.slots) + 1 + sum(slot.length for slot in self.slots)

    @property
    def stem_count(self) -> int:
        return max(len(self.slots) - 1, 0) + sum(slot.stem_count for slot in self.slots)

    def tail(self) -> "Shrub":
        """The shrub over all slots but the first."""
        return Shrub(self.color, self.slots[1:])


@dataclass(frozen=True)
class Shrubbery:
    shrubs: Tuple[Shrub, ...] = ()

    @property
    def length(self) -> int:
        return sum(s.length for s in self.shrubs)

    @property
    def stem_count(self) -> int:
        return sum(s.stem_count for s in self.shrubs)

    @property
    def is_trivial(self) -> bool:
        return not self.shrubs

    def __add__(self, other: "Shrubbery") -> "Shrubbery":
        return Shrubbery(self.shrubs + other.shrubs)

    def __str__(self):
        return format_shrubbery(self)


TRIVIAL = Shrubbery()


def dot(color: str) -> Shrubbery:
    return Shrubbery((Shrub(color),))


def arch(color: str, *slots: Shrubbery) -> Shrubbery:
    if not slots:
        raise ArgError("An arch needs at least one slot")
    return Shrubbery((Shrub(color, tuple(slots)),))


def well_tended(k: int, color: str) -> Shrubbery:
    """The complete stemless shrub with k strands of the given outer color."""
    if k < 1:
        raise ArgError(f"Well-tended shrubs need k >= 1, got {k}")
    if k == 1:
        return dot(color)
    return arch(color, well_tended(k - 1, OPPOSITE[color]))


def length(L: Shrubbery) -> int:
    return L.length


def format_shrubbery(L: Shrubbery, top: bool = True) -> str:
    """
    Bracket string: B(...) and R(...) arches, b and r dots, | between
    slots; the trivial shrubbery prints as 1 at top level.
    """
    if top and L.is_trivial:
        return "1"
    parts = []
    for shrub in L.shrubs:
        if shrub.is_dot:
            parts.append("b" if shrub.color == BLUE else "r")
        else:
            inner = "|".join(format_shrubbery(slot, top=False) for slot in shrub.slots)
            parts.append(("B" if shrub.color == BLUE else "R") + "(" + inner + ")")
    return "".join(parts)


def parse_shrubbery(text: str) -> Shrubbery:
    """
    Inverse of format_shrubbery.

    Raises:
        ParseError: on malformed input or a color clash inside an arch
    """
    text = text.strip()
    if text == "1":
        return TRIVIAL
    position = 0

    def parse_sequence() -> Shrubbery:
        nonlocal position
        shrubs = []
        while position < len(text) and text[position] not in "|)":
            symbol = text[position]
            if symbol in "br":
                shrubs.append(Shrub(BLUE if symbol == "b" else RED))
                position += 1
            elif symbol in "BR" and position + 1 < len(text) and text[position + 1] == "(":
                color = BLUE if symbol == "B" else RED
                position += 2
                slots = [parse_sequence()]
                while position < len(text) and text[position] == "|":
                    position += 1
                    slots.append(parse_sequence())
                if position >= len(text) or text[position] != ")":
                    raise ParseError(f"Unclosed arch in '{text}'")
                position += 1
                try:
                    shrubs.append(Shrub(color, tuple(slots)))
                except ArgError as e:
                    raise ParseError(f"Invalid shrub in '{text}': {str(e)}")
            else:
                raise ParseError(f"Unexpected '{symbol}' at position {position} in '{text}'")
        return Shrubbery(tuple(shrubs))

    result = parse_sequence()
    if position != len(text):
        raise ParseError(f"Trailing input at position {position} in '{text}'")
    return result


def to_word_and_sequence(L: Shrubbery) -> Tuple[Tuple[str, ...], Tuple[str, ...]]:
    """
    Starting word (letters s and t) and decorations U1, U0, D1, D0 in
    reading order: ( -> U1, dot -> U0, ) -> D1, | -> D0.
    """
    word: List[str] = []
    decorations: List[str] = []

    def walk(shrubbery: Shrubbery) -> None:
        for shrub in shrubbery.shrubs:
            letter = LETTER[shrub.color]
            if shrub.is_dot:
                word.append(letter)
                decorations.append(DOT)
                continue
            word.append(letter)
            decorations.append(OPEN)
            for j, slot in enumerate(shrub.slots):
                if j:
                    word.append(letter)
                    decorations.append(SEPARATOR)
                walk(slot)
            word.append(letter)
            decorations.append(CLOSE)

    walk(L)
    return tuple(word), tuple(decorations)


def is_alternating(word: Sequence[str]) -> bool:
    return all(a != b for a, b in zip(word, word[1:]))


def is_complete(L: Shrubbery) -> bool:
    """Every shrub has an alternating starting word."""
    return all(is_alternating(to_word_and_sequence(Shrubbery((s,)))[0]) for s in L.shrubs)


def is_well_tended(L: Shrubbery) -> bool:
    return is_complete(L) and L.stem_count == 0


def predicates(L: Shrubbery) -> Dict[str, object]:
    return {
        "is_complete": is_complete(L),
        "is_well_tended": is_well_tended(L),
        "stem_count": L.stem_count,
    }


def has_empty_arch(L: Shrubbery) -> bool:
    return any(not slot.shrubs or has_empty_arch(slot) for shrub in L.shrubs for slot in shrub.slots)


@lru_cache(maxsize=None)
def _shrubs_of_length(n: int, color: str, basis_only: bool) -> Tuple[Shrub, ...]:
    if n < 1:
        return ()
    if n == 1:
        return (Shrub(color),)
    found = []
    inner = OPPOSITE[color]
    for k in range(1, n):
        for sizes in _slot_sizes(n - k - 1, k, 1 if basis_only else 0):
            choices = [_shrubberies_of_length(size, inner, basis_only) for size in sizes]
            for slots in itertools.product(*choices):
                found.append(Shrub(color, tuple(slots)))
    return tuple(found)


def _slot_sizes(total: int, k: int, minimum: int) -> List[Tuple[int, ...]]:
    if k == 0:
        return [()] if total == 0 else []
    sizes = []
    for first in range(minimum, total - minimum * (k - 1) + 1):
        sizes.extend((first,) + rest for rest in _slot_sizes(total - first, k - 1, minimum))
    return sizes


@lru_cache(maxsize=None)
def _shrubberies_of_length(n: int, color: Optional[str], basis_only: bool) -> Tuple[Shrubbery, ...]:
    """Shrubberies of length n whose shrubs all have the given color (None: any)."""
    if n == 0:
        return (TRIVIAL,)
    found = []
    colors = SHRUB_COLORS if color is None else (color,)
    for first_length in range(1, n + 1):
        firsts = [s for c in colors for s in _shrubs_of_length(first_length, c, basis_only)]
        rests = _shrubberies_of_length(n - first_length, color, basis_only)
        for first in firsts:
            for rest in rests:
                found.append(Shrubbery((first,)) + rest)
    return tuple(found)


def enumerate_shrubberies(max_len: Optional[int] = None, word: Optional[Sequence[str]] = None,
                          blue_only: bool = False, basis_only: bool = True) -> List[Shrubbery]:
    """
    Enumerate shrubberies.

    Args:
        max_len: All lengths 0..max_len
        word: Only shrubberies with exactly this starting word
        blue_only: Keep shrubberies all of whose shrubs are blue
        basis_only: Exclude empty arches

    Returns:
        The shrubberies, shortest first
    """
    if word is not None:
        lengths = [len(word)]
    elif max_len is not None:
        lengths = list(range(max_len + 1))
    else:
        raise ArgError("Give either max_len or word")
    color = BLUE if blue_only else None
    found = []
    for n in lengths:
        for L in _shrubberies_of_length(n, color, basis_only):
            if word is None or to_word_and_sequence(L)[0] == tuple(word):
                found.append(L)
    logger.debug(f"Enumerated {len(found)} shrubberies (max_len={max_len}, word={word})")
    return found


def antispherical_basis(n: int) -> List[Shrubbery]:
    """Blue basis shrubberies whose word is a subword of s t s t ... of length 2n."""
    target = alternating_word("s", 2 * n)
    return [L for L in enumerate_shrubberies(max_len=2 * n, blue_only=True)
            if is_subword(to_word_and_sequence(L)[0], target)]


def euler_check(n: int) -> bool:
    """
    Compare the Euler characteristic of the shrubbery basis with that of
    the reduced antispherical complex of index n.
    """
    if n < 0:
        raise ArgError(f"euler_check needs n >= 0, got {n}")
    shrub_side = sum((-1) ** L.length for L in antispherical_basis(n))
    reduced = build_tilde_C(n, True)
    monomial_side = sum((-1) ** len(m) for labels in reduced.basis.values() for m in labels)
    logger.debug(f"Euler characteristics for n={n}: {shrub_side} (shrubberies), {monomial_side} (monomials)")
    return shrub_side == monomial_side


def _slots_after_uprooting(shrub: Shrub, chosen: FrozenSet[int], offset: int) -> Tuple[Shrub, int]:
    slots: List[Shrubbery] = []
    current: Optional[Shrubbery] = None
    for j, slot in enumerate(shrub.slots):
        if j:
            separator = offset
            offset += 1
        new_slot, offset = _uproot_shrubbery(slot, chosen, offset)
        if j == 0:
            current = new_slot
        elif separator in chosen:
            current = current + new_slot
        else:
            slots.append(current)
            current = new_slot
    if current is not None:
        slots.append(current)
    return Shrub(shrub.color, tuple(slots)), offset


def _uproot_shrubbery(L: Shrubbery, chosen: FrozenSet[int], offset: int) -> Tuple[Shrubbery, int]:
    shrubs = []
    for shrub in L.shrubs:
        new, offset = _slots_after_uprooting(shrub, chosen, offset)
        shrubs.append(new)
    return Shrubbery(tuple(shrubs)), offset


def uproot(L: Shrubbery, stems: Iterable[int]) -> Shrubbery:
    """
    Uproot the stems with the given indices (stems numbered 0, 1, ... in
    reading order); the slots on both sides of an uprooted stem merge.
    """
    chosen = frozenset(stems)
    if any(not 0 <= s < L.stem_count for s in chosen):
        raise ArgError(f"Stem indices {sorted(chosen)} out of range for {L.stem_count} stems")
    result, _ = _uproot_shrubbery(L, chosen, 0)
    return result


def leftmost_outer_stem(L: Shrubbery) -> int:
    """
    Reading-order index of the stem uprooted by uproot_leftmost.

    Raises:
        NoStem: if L has no stem
    """
    offset = 0
    for shrub in L.shrubs:
        if shrub.stem_count:
            return offset + _outer_stem_of_shrub(shrub)
        offset += shrub.stem_count
    raise NoStem(f"{format_shrubbery(L)} has no stem")


def _outer_stem_of_shrub(shrub: Shrub) -> int:
    if len(shrub.slots) > 1:
        return shrub.slots[0].stem_count
    return leftmost_outer_stem(shrub.slots[0])


def uproot_leftmost(L: Shrubbery) -> Shrubbery:
    """
    u(L): in the first shrub with a stem, merge its first two slots, or
    recurse into the only slot.

    Raises:
        NoStem: if L has no stem
    """
    for i, shrub in enumerate(L.shrubs):
        if shrub.stem_count:
            return Shrubbery(L.shrubs[:i] + (_uproot_shrub(shrub),) + L.shrubs[i + 1:])
    raise NoStem(f"{format_shrubbery(L)} has no stem")


def _uproot_shrub(shrub: Shrub) -> Shrub:
    if len(shrub.slots) > 1:
        merged = shrub.slots[0] + shrub.slots[1]
        return Shrub(shrub.color, (merged,) + shrub.slots[2:])
    return Shrub(shrub.color, (uproot_leftmost(shrub.slots[0]),))


@dataclass
class EFClasses:
    """Uprootings of L split by whether the leftmost outer stem went."""

    E: List[Shrubbery]
    F: List[Shrubbery]
    pairs: List[Tuple[Shrubbery, Shrubbery]]

    @property
    def is_bijection(self) -> bool:
        images = [image for _, image in self.pairs]
        return len(set(images)) == len(images) == len(set(self.F)) and set(images) == set(self.F)


def ef_classes(L: Shrubbery) -> EFClasses:
    """
    Raises:
        ArgError: if L is not complete or is well-tended
    """
    if not is_complete(L) or is_well_tended(L):
        raise ArgError(f"{format_shrubbery(L)} must be complete and not well-tended")
    lead = leftmost_outer_stem(L)
    E, F = [], []
    for size in range(L.stem_count + 1):
        for subset in itertools.combinations(range(L.stem_count), size):
            (F if lead in subset else E).append(uproot(L, subset))
    pairs = [(M, uproot_leftmost(M)) for M in E]
    return EFClasses(E, F, pairs)


def _strictly_below_shrub(a: Shrub, b: Shrub) -> bool:
    if a.color != b.color or a.is_dot or b.is_dot:
        return False
    first_a, first_b = a.slots[0], b.slots[0]
    if first_a.length != first_b.length:
        return first_a.length < first_b.length
    if first_a != first_b:
        return _strictly_below(first_a, first_b)
    if len(a.slots) == 1 or len(b.slots) == 1:
        return False
    return _strictly_below_shrub(a.tail(), b.tail())


def _strictly_below(a: Shrubbery, b: Shrubbery) -> bool:
    if a == b or a.is_trivial or b.is_trivial:
        return False
    if len(a.shrubs) == 1 and len(b.shrubs) == 1:
        return _strictly_below_shrub(a.shrubs[0], b.shrubs[0])
    head_a, head_b = a.shrubs[0], b.shrubs[0]
    if head_a.length != head_b.length:
        return head_a.length < head_b.length
    if head_a != head_b:
        return _strictly_below_shrub(head_a, head_b)
    return _strictly_below(Shrubbery(a.shrubs[1:]), Shrubbery(b.shrubs[1:]))


def order_leq(a: Shrubbery, b: Shrubbery) -> bool:
    """
    Partial order on shrubberies of equal length: compare first shrubs
    by length, then recursively, then the rest; shrubs of one color
    compare by their first slot the same way.

    Raises:
        LengthMismatch: if the lengths differ
    """
    if a.length != b.length:
        raise LengthMismatch(f"Cannot compare lengths {a.length} and {b.length}")
    return a == b or _strictly_below(a, b)


def _stroll_step(element: Tuple[str, int], letter: str) -> Tuple[bool, Tuple[str, int]]:
    """One step of the Bruhat stroll: (goes up, element times letter)."""
    last, size = element
    if size == 0 or last != letter:
        return True, (letter, size + 1)
    if size == 1:
        return False, ("", 0)
    return False, ("s" if letter == "t" else "t", size - 1)


_FORBIDDEN = {(OPEN, SEPARATOR), (OPEN, CLOSE), (SEPARATOR, SEPARATOR), (SEPARATOR, CLOSE)}


def brute_force_count(n: int, blue_only: bool = False, basis_only: bool = True) -> int:
    """
    Count decorated 01-sequences of length n whose Bruhat stroll ends at
    the identity, optionally keeping only blue ones and dropping the
    empty-arch patterns.
    """
    count = 0
    for word in itertools.product("st", repeat=n):
        for bits in itertools.product((0, 1), repeat=n):
            element = ("", 0)
            decorations = []
            valid = True
            for letter, bit in zip(word, bits):
                if element[1] == 0 and blue_only and letter != "t":
                    valid = False
                    break
                up, product = _stroll_step(element, letter)
                decorations.append((OPEN if bit else DOT) if up else (CLOSE if bit else SEPARATOR))
                if bit:
                    element = product
            if not valid or element[1] != 0:
                continue
            if basis_only and any(pair in _FORBIDDEN for pair in zip(decorations, decorations[1:])):
                continue
            count += 1
    return count
