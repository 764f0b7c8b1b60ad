#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Reduced dg-algebra and its dg-modules.

This module provides functionality to build the truncated dg-algebra on
the generators rho_k and beta_k, the dg-modules C_n and their
antispherical quotients together with their splitting by total
parameter, and a general container for bounded complexes of free modules
with sparse polynomial differentials.
"""

import json
import logging
from dataclasses import dataclass
from typing import Any, Callable, Dict, Hashable, Iterator, List, Optional, Sequence, Tuple

from src.exceptions import ArgError
from src.qnum import qbinomial
from src.ring import A_S, A_T, BiPoly, format_poly

# Logger setup
logger = logging.getLogger(__name__)

RHO = "rho"
BETA = "beta"
LEIBNIZ_RULES = ("right", "left")

# rho carries the s-color quantum numbers (x), beta the t-color ones (y)
_OWN_COLOR = {RHO: "x", BETA: "y"}
_OTHER_COLOR = {RHO: "y", BETA: "x"}
_FIRST_LETTER = {RHO: "s", BETA: "t"}


@dataclass(frozen=True, order=True)
class Generator:
    """A generator rho_k or beta_k, of cohomological degree 1 - 2k."""

    color: str
    k: int

    def __post_init__(self):
        if self.color not in (RHO, BETA):
            raise ArgError(f"Unknown generator color: {self.color}")
        if self.k < 1:
            raise ArgError(f"Generators need k >= 1, got {self.k}")

    @property
    def degree(self) -> int:
        return 1 - 2 * self.k

    def __str__(self):
        return f"{'r' if self.color == RHO else 'b'}{self.k}"


def rho(k: int) -> Generator:
    return Generator(RHO, k)


def beta(k: int) -> Generator:
    return Generator(BETA, k)


@dataclass(frozen=True)
class GenMonomial:
    """Word in the generators; the empty word is the unit."""

    word: Tuple[Generator, ...] = ()

    @classmethod
    def betas(cls, *parts: int) -> "GenMonomial":
        return cls(tuple(beta(k) for k in parts))

    @property
    def degree(self) -> int:
        return sum(g.degree for g in self.word)

    @property
    def total(self) -> int:
        """Total parameter m, the sum of the indices."""
        return sum(g.k for g in self.word)

    @property
    def composition(self) -> Tuple[int, ...]:
        return tuple(g.k for g in self.word)

    @property
    def is_beta_only(self) -> bool:
        return all(g.color == BETA for g in self.word)

    def sort_key(self) -> Tuple:
        return (self.composition, tuple(g.color for g in self.word))

    def __mul__(self, other: "GenMonomial") -> "GenMonomial":
        return GenMonomial(self.word + other.word)

    def __len__(self):
        return len(self.word)

    def __str__(self):
        if not self.word:
            return "1"
        if self.is_beta_only:
            parts = self.composition
            if all(k < 10 for k in parts):
                return "".join(str(k) for k in parts)
            return ",".join(str(k) for k in parts)
        return "".join(str(g) for g in self.word)


FormalSum = Dict[GenMonomial, BiPoly]


def _accumulate(target: FormalSum, monomial: GenMonomial, coefficient: BiPoly) -> None:
    value = target.get(monomial, None)
    value = coefficient if value is None else value + coefficient
    if value.is_zero():
        target.pop(monomial, None)
    else:
        target[monomial] = value


def diff_generator(g: Generator) -> FormalSum:
    """
    Differential of a generator.

    Args:
        g: Generator with k >= 1

    Returns:
        Map from monomials to coefficients
    """
    result: FormalSum = {}
    k = g.k
    if k == 1:
        if g.color == RHO:
            result[GenMonomial()] = A_S
        else:
            result[GenMonomial()] = -A_T
        return result
    own = _OWN_COLOR[g.color]
    other = _OTHER_COLOR[g.color]
    for i in range(1, k):
        if g.color == RHO:
            _accumulate(result, GenMonomial((rho(i), rho(k - i))), -qbinomial(k, i, own))
            _accumulate(result, GenMonomial((rho(i), beta(k - i))), qbinomial(k - 1, i - 1, other))
            _accumulate(result, GenMonomial((beta(i), rho(k - i))), qbinomial(k - 1, k - i - 1, other))
        else:
            _accumulate(result, GenMonomial((beta(i), beta(k - i))), qbinomial(k, i, own))
            _accumulate(result, GenMonomial((rho(i), beta(k - i))), -qbinomial(k - 1, k - i - 1, other))
            _accumulate(result, GenMonomial((beta(i), rho(k - i))), -qbinomial(k - 1, i - 1, other))
    return result


def diff_monomial(m: GenMonomial, rule: str = "right") -> FormalSum:
    """
    Differential of a monomial through the Leibniz rule.

    With the right rule d(uv) = u d(v) + (-1)^{|v|} d(u) v, the factor at
    position j carries the sign (-1)^{number of generators right of j}.
    The left rule d(uv) = d(u) v + (-1)^{|u|} u d(v) counts generators on
    the left instead.

    Args:
        m: Monomial
        rule: "right" or "left"

    Returns:
        Map from monomials to coefficients
    """
    if rule not in LEIBNIZ_RULES:
        raise ArgError(f"Unknown Leibniz rule '{rule}', expected one of {LEIBNIZ_RULES}")
    result: FormalSum = {}
    r = len(m.word)
    for j, g in enumerate(m.word):
        crossed = (r - 1 - j) if rule == "right" else j
        sign = -1 if crossed % 2 else 1
        before = GenMonomial(m.word[:j])
        after = GenMonomial(m.word[j + 1:])
        for piece, coefficient in diff_generator(g).items():
            _accumulate(result, before * piece * after, coefficient * sign)
    return result


def antispherical_quotient(s: FormalSum) -> FormalSum:
    """Impose rho_k = 0 and a_s = a_t = 0."""
    result: FormalSum = {}
    for monomial, coefficient in s.items():
        if not monomial.is_beta_only:
            continue
        reduced = coefficient.without_roots()
        if not reduced.is_zero():
            result[monomial] = reduced
    return result


def reverse_monomial(m: GenMonomial) -> GenMonomial:
    """Reverse the generator word; intertwines the right and left rules."""
    return GenMonomial(tuple(reversed(m.word)))


def reverse_sum(s: FormalSum) -> FormalSum:
    return {reverse_monomial(m): c for m, c in s.items()}


def alternating_word(first: str, length: int) -> Tuple[str, ...]:
    """The alternating Coxeter word of the given length starting with first."""
    if first not in ("s", "t"):
        raise ArgError(f"Unknown simple reflection: {first}")
    letters = (first, "t" if first == "s" else "s")
    return tuple(letters[i % 2] for i in range(length))


def associated_word(m: GenMonomial) -> Tuple[str, ...]:
    """Concatenation of s_{2k-1} for rho_k and t_{2k-1} for beta_k."""
    word: Tuple[str, ...] = ()
    for g in m.word:
        word += alternating_word(_FIRST_LETTER[g.color], 2 * g.k - 1)
    return word


def _match_subword(u: Sequence[str], w: Sequence[str], start: int = 0) -> Optional[int]:
    position = start
    for letter in u:
        while position < len(w) and w[position] != letter:
            position += 1
        if position == len(w):
            return None
        position += 1
    return position


def is_subword(u: Sequence[str], w: Sequence[str]) -> bool:
    """True if u is a not necessarily contiguous subsequence of w."""
    return _match_subword(u, w) is not None


Label = Hashable
Entry = BiPoly


class DgComplex:
    """
    Bounded complex of finite-rank free modules.

    The differential from degree p is stored sparsely as a map from
    (row, column) to a nonzero polynomial, rows indexing the basis of
    degree p + 1 and columns the basis of degree p.
    """

    def __init__(self, basis: Dict[int, List[Label]], diff: Optional[Dict[int, Dict[Tuple[int, int], Entry]]] = None,
                 name: str = ""):
        self.name = name
        if basis:
            low, high = min(basis), max(basis)
            self.basis = {d: list(basis.get(d, [])) for d in range(low, high + 1)}
        else:
            self.basis = {}
        self.diff: Dict[int, Dict[Tuple[int, int], Entry]] = {}
        for degree, entries in (diff or {}).items():
            clean = {key: value for key, value in entries.items() if not value.is_zero()}
            if clean:
                if degree not in self.basis or degree + 1 not in self.basis:
                    raise ArgError(f"Differential from degree {degree} leaves the complex {name}")
                self.diff[degree] = clean

    @property
    def degrees(self) -> List[int]:
        return sorted(self.basis)

    def rank(self, degree: int) -> int:
        return len(self.basis.get(degree, []))

    def ranks(self) -> Dict[int, int]:
        return {d: len(labels) for d, labels in sorted(self.basis.items())}

    def size(self) -> int:
        return sum(len(labels) for labels in self.basis.values())

    def entries(self, degree: int) -> Dict[Tuple[int, int], Entry]:
        return self.diff.get(degree, {})

    def entry(self, degree: int, row: int, col: int) -> Entry:
        return self.diff.get(degree, {}).get((row, col), BiPoly())

    def matrix(self, degree: int, convert: Callable[[Entry], Any] = lambda e: e, zero: Any = None) -> List[List[Any]]:
        """Dense matrix of the differential leaving degree, rows = targets."""
        zero_value = convert(BiPoly()) if zero is None else zero
        rows, cols = self.rank(degree + 1), self.rank(degree)
        dense = [[zero_value] * cols for _ in range(rows)]
        for (row, col), value in self.entries(degree).items():
            dense[row][col] = convert(value)
        return dense

    def edges(self) -> Iterator[Tuple[int, Label, Label, Entry]]:
        for degree in self.degrees:
            for (row, col), value in sorted(self.entries(degree).items(), key=lambda item: (item[0][1], item[0][0])):
                yield degree, self.basis[degree][col], self.basis[degree + 1][row], value

    def restrict(self, keep: Callable[[Label], bool], name: str = "") -> "DgComplex":
        """Subcomplex on the basis elements satisfying keep (valid for direct summands)."""
        basis = {d: [label for label in labels if keep(label)] for d, labels in self.basis.items()}
        position = {d: {label: i for i, label in enumerate(labels)} for d, labels in basis.items()}
        diff = {}
        for degree, entries in self.diff.items():
            kept = {}
            for (row, col), value in entries.items():
                source = self.basis[degree][col]
                target = self.basis[degree + 1][row]
                if source in position[degree] and target in position[degree + 1]:
                    kept[(position[degree + 1][target], position[degree][source])] = value
            diff[degree] = kept
        return DgComplex(_trim(basis), diff, name or self.name)

    def to_json(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "degrees": self.degrees,
            "basis": [[str(label) for label in self.basis[d]] for d in self.degrees],
            "diff": [
                {
                    "deg": degree,
                    "entries": [[row, col, format_poly(value)] for (row, col), value in sorted(self.entries(degree).items())],
                }
                for degree in self.degrees if self.entries(degree)
            ],
        }

    def __repr__(self):
        return f"DgComplex({self.name!r}, ranks={self.ranks()})"


def _trim(basis: Dict[int, List[Label]]) -> Dict[int, List[Label]]:
    occupied = [d for d, labels in basis.items() if labels]
    if not occupied:
        return {}
    return {d: basis.get(d, []) for d in range(min(occupied), max(occupied) + 1)}


def direct_sum(complexes: Sequence[DgComplex], name: str = "") -> DgComplex:
    """Direct sum; labels are tagged with the summand index."""
    basis: Dict[int, List[Label]] = {}
    offsets: List[Dict[int, int]] = []
    for position, c in enumerate(complexes):
        offset = {}
        for degree in c.degrees:
            labels = basis.setdefault(degree, [])
            offset[degree] = len(labels)
            labels.extend((position, label) for label in c.basis[degree])
        offsets.append(offset)
    diff: Dict[int, Dict[Tuple[int, int], Entry]] = {}
    for c, offset in zip(complexes, offsets):
        for degree, entries in c.diff.items():
            target = diff.setdefault(degree, {})
            for (row, col), value in entries.items():
                target[(row + offset[degree + 1], col + offset[degree])] = value
    return DgComplex(_trim(basis), diff, name)


def enumerate_monomials(n: int, antispherical: bool) -> List[GenMonomial]:
    """
    All monomials whose associated word is a subword of s_{2n}.

    Args:
        n: Half-length of the ambient alternating word
        antispherical: Keep beta-only monomials

    Returns:
        Monomials in deterministic order
    """
    ambient = alternating_word("s", 2 * n)
    colors = (BETA,) if antispherical else (RHO, BETA)
    found: List[GenMonomial] = []

    def extend(word: Tuple[Generator, ...], position: int) -> None:
        found.append(GenMonomial(word))
        for k in range(1, n + 1):
            for color in colors:
                piece = alternating_word(_FIRST_LETTER[color], 2 * k - 1)
                matched = _match_subword(piece, ambient, position)
                if matched is not None:
                    extend(word + (Generator(color, k),), matched)

    extend((), 0)
    return sorted(found, key=GenMonomial.sort_key)


def truncation_monomials(max_total: int, antispherical: bool = False) -> List[GenMonomial]:
    """All monomials of total parameter at most max_total."""
    colors = (BETA,) if antispherical else (RHO, BETA)
    found: List[GenMonomial] = []

    def extend(word: Tuple[Generator, ...], total: int) -> None:
        found.append(GenMonomial(word))
        for k in range(1, max_total - total + 1):
            for color in colors:
                extend(word + (Generator(color, k),), total + k)

    extend((), 0)
    return sorted(found, key=GenMonomial.sort_key)


def complex_from_monomials(monomials: Sequence[GenMonomial], antispherical: bool, rule: str = "right",
                           name: str = "") -> DgComplex:
    """
    Assemble the complex spanned by a d-closed set of monomials.

    Args:
        monomials: Basis monomials
        antispherical: Pass to the quotient by rho_k and a_s, a_t
        rule: Leibniz sign convention
        name: Name of the complex

    Returns:
        The complex, stored unshifted (a monomial sits in degree r - 2m)
    """
    basis: Dict[int, List[GenMonomial]] = {}
    for monomial in monomials:
        basis.setdefault(monomial.degree, []).append(monomial)
    index = {d: {m: i for i, m in enumerate(labels)} for d, labels in basis.items()}
    diff: Dict[int, Dict[Tuple[int, int], Entry]] = {}
    for degree, labels in basis.items():
        for col, monomial in enumerate(labels):
            image = diff_monomial(monomial, rule)
            if antispherical:
                image = antispherical_quotient(image)
            for target, coefficient in image.items():
                row = index.get(degree + 1, {}).get(target)
                if row is None:
                    raise AssertionError(f"d({monomial}) leaves the span: term {target}")
                diff.setdefault(degree, {})[(row, col)] = coefficient
    return DgComplex(basis, diff, name)


def build_tilde_C(n: int, antispherical: bool, rule: str = "right") -> DgComplex:
    """
    Build C_n or its antispherical quotient.

    Args:
        n: Index, n >= 0
        antispherical: Impose rho_k = 0
        rule: Leibniz sign convention

    Returns:
        The complex of monomials whose word is a subword of s_{2n}
    """
    if n < 0:
        raise ArgError(f"build_tilde_C needs n >= 0, got {n}")
    monomials = enumerate_monomials(n, antispherical)
    name = f"{'I' if antispherical else ''}C{n}"
    complex_ = complex_from_monomials(monomials, antispherical, rule, name)
    logger.debug(f"Built {name} with ranks {complex_.ranks()}")
    return complex_


def full_gamma_truncation(max_total: int, rule: str = "right") -> DgComplex:
    """Complex of all rho/beta monomials with total parameter <= max_total."""
    monomials = truncation_monomials(max_total)
    return complex_from_monomials(monomials, False, rule, f"Gamma<={max_total}")


def split_B(c: DgComplex) -> List[DgComplex]:
    """
    Split an antispherical complex by total parameter.

    Args:
        c: Complex built with antispherical=True

    Returns:
        The pieces B_0, ..., B_n
    """
    totals = sorted({label.total for labels in c.basis.values() for label in labels})
    pieces = []
    for m in range(0, max(totals, default=-1) + 1):
        pieces.append(c.restrict(lambda label, m=m: label.total == m, name=f"B{m}"))
    return pieces


def build_B(m: int, rule: str = "right") -> DgComplex:
    """The piece B_m on its own."""
    return split_B(build_tilde_C(m, True, rule))[m]


def compose_is_zero(c: DgComplex, degree: int) -> bool:
    """True if d_{degree+1} o d_degree vanishes."""
    first = c.entries(degree)
    second = c.entries(degree + 1)
    if not first or not second:
        return True
    by_row: Dict[int, List[Tuple[int, Entry]]] = {}
    for (row, middle), value in second.items():
        by_row.setdefault(middle, []).append((row, value))
    product: Dict[Tuple[int, int], Entry] = {}
    for (middle, col), value in first.items():
        for row, other in by_row.get(middle, []):
            key = (row, col)
            product[key] = product.get(key, BiPoly()) + other * value
    return all(value.is_zero() for value in product.values())


def check_d_squared(c: DgComplex) -> bool:
    """True if all consecutive differentials compose to zero."""
    for degree in c.degrees:
        if not compose_is_zero(c, degree):
            logger.warning(f"d^2 != 0 in {c.name} at degree {degree}")
            return False
    return True


def to_dot(c: DgComplex, name: Optional[str] = None) -> str:
    """
    Graph description of a complex.

    One node per basis element labelled by its label text, one edge per
    nonzero differential entry labelled by the coefficient.
    """
    lines = [f'digraph "{name or c.name or "complex"}" {{', "  rankdir=LR;"]
    node_ids: Dict[Tuple[int, int], str] = {}
    for degree in c.degrees:
        for i, label in enumerate(c.basis[degree]):
            node_id = f"n{len(node_ids)}"
            node_ids[(degree, i)] = node_id
            lines.append(f'  {node_id} [label="{label}"];')
    for degree in c.degrees:
        for (row, col), value in sorted(c.entries(degree).items(), key=lambda item: (item[0][1], item[0][0])):
            lines.append(f'  {node_ids[(degree, col)]} -> {node_ids[(degree + 1, row)]} [label="{format_poly(value)}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def complex_summary(c: DgComplex) -> Dict[str, Any]:
    return {
        "name": c.name,
        "ranks": {str(d): r for d, r in c.ranks().items()},
        "edges": sum(len(entries) for entries in c.diff.values()),
    }


def dump_json(c: DgComplex) -> str:
    return json.dumps(c.to_json(), indent=2)
