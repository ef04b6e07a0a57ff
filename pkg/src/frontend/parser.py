"""
Problem File Parser
Line-oriented `.q` files declaring a quiver, an order, named polynomials and
named generator sets.

    # comment
    vertices v1 v2 v3
    arrow a : v1 -> v2
    order lenllex
    poly f = 5*a*b - 2/3*[v1] + c^3
    ideal I side=twosided : f, a*b
"""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple
import logging
import re

from src.config import get_settings
from src.core.algebra import Polynomial
from src.core.order import OrderKind, PathOrder, Side
from src.core.quiver_core import Path, Quiver, compose
from src.errors import GroebnerError, ProblemSyntaxError, UsageError
from src.groebner.groebner import GeneratorSet

logger = logging.getLogger(__name__)

IDENT = r'[A-Za-z_][A-Za-z0-9_]*'
_TOKEN = re.compile(
    rf'(?P<space>\s+)|(?P<number>\d+)|(?P<vertex>\[\s*{IDENT}\s*\])|(?P<ident>{IDENT})|(?P<op>[+\-*/^])'
)
_ARROW_LINE = re.compile(rf'^arrow\s+(?P<name>{IDENT})\s*:\s*(?P<src>{IDENT})\s*->\s*(?P<dst>{IDENT})\s*$')
_POLY_LINE = re.compile(rf'^poly\s+(?P<name>{IDENT})\s*=')
_IDEAL_LINE = re.compile(rf'^ideal\s+(?P<name>{IDENT})\s+side\s*=\s*(?P<side>{IDENT})\s*:')


@dataclass
class ProblemFile:
    quiver: Quiver
    order: PathOrder
    polys: Dict[str, Polynomial] = field(default_factory=dict)
    ideals: Dict[str, GeneratorSet] = field(default_factory=dict)
    source: Optional[str] = None

    def poly(self, name: str) -> Polynomial:
        try:
            return self.polys[name]
        except KeyError:
            raise UsageError(f"no polynomial named '{name}'") from None

    def ideal(self, name: str) -> GeneratorSet:
        try:
            return self.ideals[name]
        except KeyError:
            raise UsageError(f"no ideal named '{name}'") from None

    def with_order(self, name: str) -> "ProblemFile":
        return ProblemFile(self.quiver, PathOrder.named(name, self.quiver),
                           self.polys, self.ideals, self.source)


class _ExpressionParser:
    """Recursive descent over one expression: terms of coefficients and factors."""

    def __init__(self, quiver: Quiver, text: str, line: int, offset: int, source: Optional[str]):
        self.quiver = quiver
        self.line = line
        self.source = source
        self.tokens: List[Tuple[str, str, int]] = []
        position = 0
        while position < len(text):
            match = _TOKEN.match(text, position)
            if match is None:
                self._fail(f"unexpected character '{text[position]}'", offset + position)
            if match.lastgroup != 'space':
                self.tokens.append((match.lastgroup, match.group(), offset + position))
            position = match.end()
        self.index = 0
        self.end_column = offset + len(text)

    def _fail(self, message: str, column: int):
        raise ProblemSyntaxError(message, self.line, column + 1, self.source)

    def _peek(self) -> Optional[Tuple[str, str, int]]:
        return self.tokens[self.index] if self.index < len(self.tokens) else None

    def _next(self, expected: str) -> Tuple[str, str, int]:
        token = self._peek()
        if token is None:
            self._fail(f"expected {expected} at end of expression", self.end_column)
        self.index += 1
        return token

    def parse(self) -> Polynomial:
        if not self.tokens:
            self._fail("empty expression", self.end_column)
        total = Polynomial.zero(self.quiver)
        sign = 1
        token = self._peek()
        if token[0] == 'op' and token[1] in '+-':
            sign = -1 if token[1] == '-' else 1
            self.index += 1
        while True:
            total = total.add(self._term(), Fraction(sign))
            token = self._peek()
            if token is None:
                return total
            if token[0] != 'op' or token[1] not in '+-':
                self._fail(f"expected '+' or '-' but found '{token[1]}'", token[2])
            sign = -1 if token[1] == '-' else 1
            self.index += 1

    def _term(self) -> Polynomial:
        coefficient = Fraction(1)
        factors: List[Tuple[Path, str, int]] = []
        while True:
            kind, text, column = self._next("a coefficient, arrow or vertex")
            if kind == 'number':
                coefficient *= self._rational(text, column)
            elif kind == 'vertex':
                name = text[1:-1].strip()
                if not self.quiver.has_vertex(name):
                    self._fail(f"unknown vertex '{name}'", column)
                factors.append((self.quiver.trivial(name), text, column))
            elif kind == 'ident':
                factors.extend(self._power(text, column))
            else:
                self._fail(f"unexpected '{text}'", column)
            token = self._peek()
            if token is None or token[1] != '*':
                break
            self.index += 1

        if not factors:
            return Polynomial.identity(self.quiver).scale(coefficient)
        path, name, _ = factors[0]
        for factor, factor_name, column in factors[1:]:
            product = compose(path, factor)
            if product is None:
                target = self.quiver.vertices[path.target]
                source = self.quiver.vertices[factor.source]
                self._fail(
                    f"path {name}*{factor_name} not composable: "
                    f"target({name})={target}, source({factor_name})={source}", column
                )
            path, name = product, factor_name
        return Polynomial.monomial(path, coefficient)

    def _rational(self, text: str, column: int) -> Fraction:
        numerator = int(text)
        token = self._peek()
        if token is None or token[1] != '/':
            return Fraction(numerator)
        self.index += 1
        kind, denominator, where = self._next("a denominator")
        if kind != 'number':
            self._fail(f"malformed rational: expected a denominator after '/', found '{denominator}'", where)
        if int(denominator) == 0:
            self._fail("malformed rational: zero denominator", where)
        return Fraction(numerator, int(denominator))

    def _power(self, name: str, column: int) -> List[Tuple[Path, str, int]]:
        if not self.quiver.has_arrow(name):
            self._fail(f"unknown arrow '{name}'", column)
        arrow = self.quiver.path([name])
        token = self._peek()
        if token is None or token[1] != '^':
            return [(arrow, name, column)]
        self.index += 1
        kind, exponent, where = self._next("an exponent")
        if kind != 'number' or int(exponent) < 1:
            self._fail(f"exponent of '{name}' must be a positive integer", where)
        if int(exponent) > 1 and arrow.source != arrow.target:
            self._fail(f"'{name}^{exponent}' needs a loop", column)
        cap = get_settings().max_path_length
        if int(exponent) > cap:
            self._fail(f"exponent of '{name}' exceeds the path length cap {cap}", where)
        return [(arrow, name, column)] * int(exponent)


def parse_expression(quiver: Quiver, text: str, line: int = 1, offset: int = 0,
                     source: Optional[str] = None) -> Polynomial:
    return _ExpressionParser(quiver, text, line, offset, source).parse()


def _split_items(text: str, offset: int) -> List[Tuple[str, int]]:
    items, start = [], 0
    for position, char in enumerate(text + ','):
        if char == ',':
            piece = text[start:position]
            stripped = piece.lstrip()
            items.append((stripped.rstrip(), offset + start + len(piece) - len(stripped)))
            start = position + 1
    return items


def parse_problem(text: str, source: Optional[str] = None) -> ProblemFile:
    """Parse a problem file; every error carries its 1-based line and column."""
    vertices: List[str] = []
    arrows: List[Tuple[str, str, str]] = []
    quiver: Optional[Quiver] = None
    order_name = OrderKind.LEN_LLEX.value
    polys: Dict[str, Polynomial] = {}
    ideals: Dict[str, GeneratorSet] = {}

    def fail(message: str, line: int, column: int = 1):
        raise ProblemSyntaxError(message, line, column, source)

    def frozen(line: int) -> Quiver:
        nonlocal quiver
        if quiver is None:
            if not vertices:
                fail("no vertices declared before use", line)
            try:
                quiver = Quiver.from_names(vertices, arrows)
            except GroebnerError as e:
                fail(str(e), line)
        return quiver

    for number, raw in enumerate(text.splitlines(), start=1):
        content = raw.split('#', 1)[0]
        stripped = content.strip()
        if not stripped:
            continue
        indent = len(content) - len(content.lstrip())
        keyword = stripped.split()[0]

        if keyword == 'vertices':
            if quiver is not None or arrows:
                fail("vertices must be declared before arrows and polynomials", number, indent + 1)
            for name in stripped.split()[1:]:
                if not re.fullmatch(IDENT, name):
                    fail(f"invalid vertex name '{name}'", number, content.find(name) + 1)
                if name in vertices:
                    fail(f"duplicate vertex '{name}'", number, content.find(name) + 1)
                vertices.append(name)
        elif keyword == 'arrow':
            if quiver is not None:
                fail("arrows must be declared before the quiver is used", number, indent + 1)
            match = _ARROW_LINE.match(stripped)
            if match is None:
                fail("expected 'arrow NAME : SRC -> DST'", number, indent + 1)
            name, src, dst = match.group('name', 'src', 'dst')
            for end in (src, dst):
                if end not in vertices:
                    fail(f"unknown vertex '{end}'", number, content.find(end, content.find(':')) + 1)
            if name in vertices or any(a[0] == name for a in arrows):
                fail(f"duplicate name '{name}'", number, content.find(name) + 1)
            arrows.append((name, src, dst))
        elif keyword == 'order':
            parts = stripped.split()
            if len(parts) != 2:
                fail("expected 'order lenllex|lenrlex|llex|rlex'", number, indent + 1)
            try:
                OrderKind(parts[1].lower())
            except ValueError:
                fail(f"unknown order '{parts[1]}'", number, content.find(parts[1]) + 1)
            order_name = parts[1].lower()
        elif keyword == 'poly':
            match = _POLY_LINE.match(stripped)
            if match is None:
                fail("expected 'poly NAME = EXPR'", number, indent + 1)
            name = match.group('name')
            if name in polys:
                fail(f"duplicate polynomial '{name}'", number, indent + 1)
            start = indent + match.end()
            polys[name] = parse_expression(frozen(number), content[start:], number, start, source)
        elif keyword == 'ideal':
            match = _IDEAL_LINE.match(stripped)
            if match is None:
                fail("expected 'ideal NAME side=left|right|twosided : f, g, ...'", number, indent + 1)
            name, side_name = match.group('name', 'side')
            if name in ideals:
                fail(f"duplicate ideal '{name}'", number, indent + 1)
            try:
                side = Side(side_name.lower())
            except ValueError:
                fail(f"unknown side '{side_name}'", number, content.find(side_name, indent) + 1)
            start = indent + match.end()
            generators = []
            for item, column in _split_items(content[start:], start):
                if not item:
                    fail("empty generator in ideal list", number, column + 1)
                if item in polys:
                    generators.append(polys[item])
                else:
                    generators.append(parse_expression(frozen(number), item, number, column, source))
            if any(g.is_zero() for g in generators):
                fail(f"ideal '{name}' has a zero generator", number, indent + 1)
            ideals[name] = GeneratorSet(tuple(generators), side)
        else:
            fail(f"unknown statement '{keyword}'", number, indent + 1)

    final = frozen(len(text.splitlines()) or 1)
    logger.debug(f"Parsed {source or 'problem'}: {final}, {len(polys)} polys, {len(ideals)} ideals")
    return ProblemFile(final, PathOrder.named(order_name, final), polys, ideals, source)


def load_problem(path: str) -> ProblemFile:
    with open(path, 'rb') as handle:
        raw = handle.read()
    try:
        text = raw.decode('utf-8')
    except UnicodeDecodeError as e:
        line = raw.count(b'\n', 0, e.start) + 1
        column = e.start - (raw.rfind(b'\n', 0, e.start) + 1) + 1
        raise ProblemSyntaxError(f"invalid UTF-8 byte 0x{raw[e.start]:02x}", line, column, path) from None
    return parse_problem(text, source=path)
