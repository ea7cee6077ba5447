"""Knot-expression and braid-word languages.

Grammar (whitespace-insensitive, '#' left-associative)::

    expr := term ('#' term)*
    term := atom | 'sat(' name ',' expr ')' | 'T(' int ',' int ')'

Braid words are whitespace-separated tokens ``s<i>`` / ``s<i>^-1`` with i >= 1.
"""
import math
import re
from dataclasses import dataclass
from typing import Dict, List, Sequence, Tuple, Union

import sympy as sp
from sympy.combinatorics.free_groups import FreeGroup, FreeGroupElement, free_group

from cjones.errors import ParseError, UnsupportedLinkError


# =============================================================================
# ATOM REGISTRY
# =============================================================================

@dataclass(frozen=True)
class AtomInfo:
    name: str
    kind: str  # "unknot", "hyperbolic", "torus", "link" or "pattern"
    evaluable: bool


ATOMS: Dict[str, AtomInfo] = {
    "U": AtomInfo("U", "unknot", True),
    "4_1": AtomInfo("4_1", "hyperbolic", True),
    "3_1": AtomInfo("3_1", "torus", False),
    "hopf": AtomInfo("hopf", "link", True),
    "whitehead": AtomInfo("whitehead", "pattern", False),
}
PATTERNS = frozenset(name for name, info in ATOMS.items() if info.kind == "pattern")

_TORUS_NAME = re.compile(r"T\((\d+),(\d+)\)$")


def atom_info(name: str) -> AtomInfo:
    if name in ATOMS:
        return ATOMS[name]
    if _TORUS_NAME.match(name):
        return AtomInfo(name, "torus", False)
    raise KeyError(name)


# =============================================================================
# AST
# =============================================================================

@dataclass(frozen=True)
class Atom:
    name: str


@dataclass(frozen=True)
class ConnectedSum:
    left: "KnotExpr"
    right: "KnotExpr"


@dataclass(frozen=True)
class Satellite:
    pattern: str
    companion: "KnotExpr"


KnotExpr = Union[Atom, ConnectedSum, Satellite]


def summands(expr: KnotExpr) -> List[KnotExpr]:
    """Flatten nested connected sums into their operand list."""
    if isinstance(expr, ConnectedSum):
        return summands(expr.left) + summands(expr.right)
    return [expr]


def contains_hopf(expr: KnotExpr) -> bool:
    if isinstance(expr, Atom):
        return expr.name == "hopf"
    if isinstance(expr, ConnectedSum):
        return contains_hopf(expr.left) or contains_hopf(expr.right)
    return contains_hopf(expr.companion)


def render_knot(expr: KnotExpr) -> str:
    if isinstance(expr, Atom):
        return expr.name
    if isinstance(expr, ConnectedSum):
        return f"{render_knot(expr.left)} # {render_knot(expr.right)}"
    return f"sat({expr.pattern}, {render_knot(expr.companion)})"


# =============================================================================
# KNOT EXPRESSION PARSER
# =============================================================================

_TOKEN = re.compile(r"\s*(?:(?P<word>[A-Za-z0-9_]+)|(?P<punct>[#(),])|(?P<bad>\S))")


@dataclass(frozen=True)
class _Token:
    kind: str  # "word", "punct" or "end"
    text: str
    offset: int


def _tokenize(text: str) -> List[_Token]:
    tokens = []
    pos = 0
    while True:
        match = _TOKEN.match(text, pos)
        if match is None:
            # only trailing whitespace left
            break
        kind = match.lastgroup
        start = match.start(kind)
        offset = len(text[:start].encode("utf-8"))
        if kind == "bad":
            raise ParseError(offset, f"unexpected character {match.group(kind)!r}")
        tokens.append(_Token(kind, match.group(kind), offset))
        pos = match.end()
    tokens.append(_Token("end", "", len(text.encode("utf-8"))))
    return tokens


class _KnotParser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.index = 0

    @property
    def current(self) -> _Token:
        return self.tokens[self.index]

    def _describe(self, token: _Token) -> str:
        return "end of input" if token.kind == "end" else repr(token.text)

    def advance(self) -> _Token:
        token = self.current
        self.index += 1
        return token

    def expect(self, text: str) -> _Token:
        token = self.current
        if token.text != text or token.kind == "end":
            raise ParseError(token.offset, f"expected '{text}', found {self._describe(token)}")
        return self.advance()

    def peek_is(self, text: str, ahead: int = 0) -> bool:
        token = self.tokens[min(self.index + ahead, len(self.tokens) - 1)]
        return token.kind == "punct" and token.text == text

    def parse(self) -> KnotExpr:
        expr = self.expr()
        if self.current.kind != "end":
            raise ParseError(self.current.offset, f"unexpected {self._describe(self.current)}")
        return expr

    def expr(self) -> KnotExpr:
        left = self.term()
        while self.peek_is("#"):
            hash_token = self.advance()
            right = self.term()
            if contains_hopf(left) or contains_hopf(right):
                raise ParseError(hash_token.offset, "the Hopf link cannot be a connected-sum operand")
            left = ConnectedSum(left, right)
        return left

    def term(self) -> KnotExpr:
        token = self.current
        if token.kind != "word":
            raise ParseError(token.offset, f"expected a knot, found {self._describe(token)}")

        if token.text == "sat" and self.peek_is("(", 1):
            return self.satellite()
        if token.text == "T" and self.peek_is("(", 1):
            return self.torus()

        self.advance()
        if token.text in PATTERNS:
            raise ParseError(token.offset, f"pattern '{token.text}' is only valid inside sat(...)")
        if token.text not in ATOMS:
            raise ParseError(token.offset, f"unknown atom '{token.text}'")
        return Atom(token.text)

    def satellite(self) -> Satellite:
        self.advance()
        self.expect("(")
        name = self.current
        if name.kind != "word":
            raise ParseError(name.offset, f"expected pattern name, found {self._describe(name)}")
        if name.text not in PATTERNS:
            raise ParseError(name.offset, f"unknown satellite pattern '{name.text}'")
        self.advance()
        self.expect(",")
        companion_token = self.current
        companion = self.expr()
        if contains_hopf(companion):
            raise ParseError(companion_token.offset, "satellite companion must be a knot")
        self.expect(")")
        return Satellite(name.text, companion)

    def torus(self) -> Atom:
        head = self.advance()
        self.expect("(")
        p = self._integer()
        self.expect(",")
        q = self._integer()
        self.expect(")")
        if p < 2 or q < 2:
            raise ParseError(head.offset, f"torus parameters must be >= 2, got T({p},{q})")
        if math.gcd(p, q) != 1:
            raise ParseError(head.offset, f"torus parameters must be coprime, got T({p},{q})")
        return Atom(f"T({p},{q})")

    def _integer(self) -> int:
        token = self.current
        if token.kind != "word" or not token.text.isdigit():
            raise ParseError(token.offset, f"expected integer, found {self._describe(token)}")
        self.advance()
        return int(token.text)


def parse_knot(text: str) -> KnotExpr:
    return _KnotParser(text).parse()


# =============================================================================
# BRAID WORDS
# =============================================================================

_BRAID_LETTER = re.compile(r"s(\d+)(\^-1)?$")
_BRAID_CHUNK = re.compile(r"\S+")


@dataclass(frozen=True)
class BraidWord:
    strands: int
    letters: Tuple[Tuple[int, int], ...]

    def permutation(self) -> List[int]:
        """Strand permutation induced by the word (position -> strand)."""
        perm = list(range(self.strands))
        for index, _ in self.letters:
            perm[index - 1], perm[index] = perm[index], perm[index - 1]
        return perm

    def closure_components(self) -> int:
        perm = self.permutation()
        seen = [False] * self.strands
        cycles = 0
        for start in range(self.strands):
            if seen[start]:
                continue
            cycles += 1
            j = start
            while not seen[j]:
                seen[j] = True
                j = perm[j]
        return cycles


def parse_braid(text: str) -> BraidWord:
    letters = []
    for chunk in _BRAID_CHUNK.finditer(text):
        offset = len(text[: chunk.start()].encode("utf-8"))
        match = _BRAID_LETTER.match(chunk.group())
        if match is None:
            raise ParseError(offset, f"malformed braid letter {chunk.group()!r}")
        index = int(match.group(1))
        if index < 1:
            raise ParseError(offset, "braid generator indices start at 1")
        letters.append((index, -1 if match.group(2) else 1))
    if not letters:
        raise ParseError(len(text.encode("utf-8")), "empty braid word")
    strands = 1 + max(index for index, _ in letters)
    return BraidWord(strands, tuple(letters))


# =============================================================================
# GROUP PRESENTATIONS
# =============================================================================

@dataclass(frozen=True)
class GroupPresentation:
    """Deficiency-one presentation over a sympy free group.

    Every generator abelianizes to the meridian t.
    """

    group: FreeGroup
    relators: Tuple[FreeGroupElement, ...]

    @property
    def n_generators(self) -> int:
        return self.group.rank

    def index_of(self, symbol: sp.Symbol) -> int:
        return self.group.symbols.index(symbol)

    def abelian_degree(self, generator: int) -> int:
        return 1

    def exponent_sum(self, word: FreeGroupElement) -> int:
        return sum(exp * self.abelian_degree(self.index_of(symbol)) for symbol, exp in word.array_form)


def _artin_images(gens: Sequence[FreeGroupElement], i: int, exponent: int) -> List[FreeGroupElement]:
    # action of sigma_{i+1}^{±1} on the free generators x_0..x_{n-1}
    images = list(gens)
    a, b = gens[i], gens[i + 1]
    if exponent == 1:
        images[i], images[i + 1] = a * b * a**-1, a
    else:
        images[i], images[i + 1] = b, b**-1 * a * b
    return images


def _substitute(word: FreeGroupElement, images: Sequence[FreeGroupElement], index: Dict) -> FreeGroupElement:
    out = images[0].group.identity
    for symbol, exp in word.array_form:
        out = out * images[index[symbol]] ** exp
    return out


def presentation_from_braid(b: BraidWord) -> GroupPresentation:
    """Group of the braid closure: relators β(x_i)·x_i⁻¹, the last one dropped."""
    components = b.closure_components()
    if components != 1:
        raise UnsupportedLinkError(f"braid closure has {components} components; only knots are supported")

    n = b.strands
    group, *gens = free_group([sp.Symbol(f"x{j}") for j in range(n)])
    index = {symbol: j for j, symbol in enumerate(group.symbols)}
    images = list(gens)
    for i, exponent in b.letters:
        action = _artin_images(gens, i - 1, exponent)
        images = [_substitute(word, action, index) for word in images]

    relators = tuple(images[j] * gens[j] ** -1 for j in range(n))
    return GroupPresentation(group, relators[:-1])
