"""The deformation function R(u, v): expression language, parser, evaluator and builtins.

Grammar (recursive descent, one token of lookahead)::

    expr     := term (('+' | '-') term)*
    term     := unary (('*' | '/') unary)*
    unary    := '-' unary | power
    power    := atom ('^' exponent)*
    exponent := ['-'] INT | '(' ['-'] INT ['/' INT] ')'
    atom     := INT | NAME | '(' expr ')'

Names are ``u``, ``v`` (variables) and ``p``, ``q``, ``mu``, ``nu``, ``g``
(parameters bound from :class:`~rpqv.scalar.BaseParams`).  Exponents are
literal half-integers.  ``^`` binds tighter than unary minus, so ``-u^2``
is ``-(u^2)``; chained powers associate to the left.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Union

from .errors import ExponentError, LexError, ParseError, PoleError, DomainError
from .scalar import BaseParams, FAMILIES, as_scalar, exact_sqrt, family_number, format_scalar, half_power

VARIABLES = ("u", "v")
PARAMETERS = ("p", "q", "mu", "nu", "g")


# --- AST -------------------------------------------------------------------

@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class Param:
    name: str


@dataclass(frozen=True)
class Num:
    value: int


@dataclass(frozen=True)
class Neg:
    operand: "Node"


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Pow:
    base: "Node"
    exponent: Fraction


Node = Union[Var, Param, Num, Neg, BinOp, Pow]


# --- lexer -----------------------------------------------------------------

@dataclass(frozen=True)
class Token:
    kind: str  # INT, NAME, OP, END
    text: str
    pos: int


def tokenize(source: str) -> list[Token]:
    tokens = []
    i, n = 0, len(source)
    while i < n:
        ch = source[i]
        if ch.isspace():
            i += 1
        elif ch.isascii() and ch.isdigit():
            j = i
            while j < n and source[j].isascii() and source[j].isdigit():
                j += 1
            tokens.append(Token("INT", source[i:j], i))
            i = j
        elif ch.isascii() and ch.isalpha():
            j = i
            while j < n and source[j].isascii() and source[j].isalnum():
                j += 1
            word = source[i:j]
            if word not in VARIABLES + PARAMETERS:
                raise LexError(f"unknown name {word!r}", i, VARIABLES + PARAMETERS)
            tokens.append(Token("NAME", word, i))
            i = j
        elif ch in "+-*/^()":
            tokens.append(Token("OP", ch, i))
            i += 1
        elif ch == "−":
            tokens.append(Token("OP", "-", i))
            i += 1
        else:
            raise LexError(f"unexpected character {ch!r}", i)
    tokens.append(Token("END", "", n))
    return tokens


# --- parser ----------------------------------------------------------------

class _Parser:
    def __init__(self, source: str):
        self.tokens = tokenize(source)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def at(self, text: str) -> bool:
        return self.tok.kind == "OP" and self.tok.text == text

    def advance(self) -> Token:
        tok = self.tok
        self.i += 1
        return tok

    def expect(self, text: str):
        if not self.at(text):
            self.fail(f"expected {text!r}", (text,))
        self.advance()

    def fail(self, message, expected=()):
        where = "end of input" if self.tok.kind == "END" else f"{self.tok.text!r}"
        raise ParseError(f"{message}, found {where}", self.tok.pos, expected)

    def parse(self) -> Node:
        node = self.expr()
        if self.tok.kind != "END":
            self.fail("unexpected token", ("+", "-", "*", "/", "^", "end of input"))
        return node

    def expr(self) -> Node:
        node = self.term()
        while self.at("+") or self.at("-"):
            op = self.advance().text
            node = BinOp(op, node, self.term())
        return node

    def term(self) -> Node:
        node = self.unary()
        while self.at("*") or self.at("/"):
            op = self.advance().text
            node = BinOp(op, node, self.unary())
        return node

    def unary(self) -> Node:
        if self.at("-"):
            self.advance()
            return Neg(self.unary())
        return self.power()

    def power(self) -> Node:
        node = self.atom()
        while self.at("^"):
            self.advance()
            node = Pow(node, self.exponent())
        return node

    def exponent(self) -> Fraction:
        start = self.tok.pos
        if self.at("("):
            self.advance()
            value = self._signed_int()
            if self.at("/"):
                self.advance()
                den = self._int()
                if den == 0:
                    raise ExponentError("zero denominator in exponent", start)
                value = Fraction(value, den)
            self.expect(")")
        else:
            value = Fraction(self._signed_int())
        if value.denominator not in (1, 2):
            raise ExponentError(f"exponent {value} is not a half-integer", start)
        return value

    def _signed_int(self) -> int:
        sign = 1
        if self.at("-"):
            self.advance()
            sign = -1
        return sign * self._int()

    def _int(self) -> int:
        if self.tok.kind != "INT":
            if self.tok.kind == "NAME" or self.at("("):
                raise ExponentError("exponent must be a literal half-integer", self.tok.pos, ("integer",))
            self.fail("expected an integer", ("integer",))
        return int(self.advance().text)

    def atom(self) -> Node:
        tok = self.tok
        if tok.kind == "INT":
            self.advance()
            return Num(int(tok.text))
        if tok.kind == "NAME":
            self.advance()
            return Var(tok.text) if tok.text in VARIABLES else Param(tok.text)
        if self.at("("):
            self.advance()
            node = self.expr()
            self.expect(")")
            return node
        self.fail("expected an operand", ("(", "-", "integer", "name"))


def parse_r(source: str) -> Node:
    """Parse R-expression text into an AST; raises a :class:`ParseError` subclass."""
    return _Parser(source).parse()


# --- printer ---------------------------------------------------------------

_PREC = {"+": 1, "-": 1, "*": 2, "/": 2}


def _prec(node: Node) -> int:
    if isinstance(node, BinOp):
        return _PREC[node.op]
    if isinstance(node, Neg):
        return 3
    if isinstance(node, Pow):
        return 4
    return 5


def to_source(node: Node) -> str:
    """Print with the fewest parentheses that reparse to the same tree."""
    if isinstance(node, (Var, Param)):
        return node.name
    if isinstance(node, Num):
        return str(node.value)
    if isinstance(node, Neg):
        inner = to_source(node.operand)
        return f"-{inner}" if _prec(node.operand) >= 3 else f"-({inner})"
    if isinstance(node, Pow):
        base = to_source(node.base)
        if _prec(node.base) < 4:
            base = f"({base})"
        e = node.exponent
        exp = str(e.numerator) if e.denominator == 1 and e >= 0 else f"({format_scalar(e)})"
        return f"{base}^{exp}"
    prec = _PREC[node.op]
    left, right = to_source(node.left), to_source(node.right)
    if _prec(node.left) < prec:
        left = f"({left})"
    if _prec(node.right) <= prec:
        right = f"({right})"
    return f"{left} {node.op} {right}"


# --- evaluation ------------------------------------------------------------

def _power(value: Fraction, e: Fraction, node: Node) -> Fraction:
    if value == 0 and e < 0:
        raise PoleError(f"zero raised to a negative power in {to_source(node)!r}", to_source(node))
    if e.denominator == 1:
        return value ** e.numerator
    root = exact_sqrt(value)
    if root is None:
        raise DomainError(f"{value}^{e} is not rational in {to_source(node)!r}")
    return root ** e.numerator


def eval_ast(node: Node, base: BaseParams, u, v) -> Fraction:
    """Evaluate exactly; a vanishing denominator raises :class:`PoleError` naming it."""
    if isinstance(node, Var):
        return as_scalar(u if node.name == "u" else v)
    if isinstance(node, Param):
        return getattr(base, node.name)
    if isinstance(node, Num):
        return Fraction(node.value)
    if isinstance(node, Neg):
        return -eval_ast(node.operand, base, u, v)
    if isinstance(node, Pow):
        return _power(eval_ast(node.base, base, u, v), node.exponent, node)
    left = eval_ast(node.left, base, u, v)
    right = eval_ast(node.right, base, u, v)
    if node.op == "+":
        return left + right
    if node.op == "-":
        return left - right
    if node.op == "*":
        return left * right
    if right == 0:
        sub = to_source(node.right)
        raise PoleError(f"denominator {sub!r} vanishes at u={u}, v={v}", sub)
    return left / right


# --- builtins --------------------------------------------------------------

BUILTINS = FAMILIES + ("CJP",)


def _builtin_value(name: str, base: BaseParams, u: Fraction, v: Fraction) -> Fraction:
    p, q = base.p, base.q

    def guard(den, what):
        if den == 0:
            raise PoleError(f"{name}: {what} vanishes at u={u}, v={v}", what)
        return den

    if name == "JS":
        return (u - v) / guard(p - q, "p - q")
    if name == "CJ":
        return (1 - u * v) / guard((1 / p - q) * u, "(1/p - q)*u")
    if name == "CJP":
        guard(u, "u")
        guard(v, "v")
        return (1 / u - 1 / v) / guard(p - q, "p - q")
    quesne = (u * v - 1) / guard((q - 1 / p) * v, "(q - 1/p)*v")
    if name == "Quesne":
        return quesne
    if name in ("HN", "HB"):
        guard(u, "u")
        weight = _power(v, base.nu, Var("v")) / _power(u, base.mu, Var("u"))
        return base.g * weight * quesne
    raise ValueError(f"unknown builtin {name!r}; expected one of {BUILTINS}")


def _builtin_source(name: str, base: BaseParams) -> str:
    mu, nu = format_scalar(base.mu), format_scalar(base.nu)
    texts = {
        "JS": "(u - v)/(p - q)",
        "CJ": "(1 - u*v)/((1/p - q)*u)",
        "CJP": "(1/u - 1/v)/(p - q)",
        "Quesne": "(u*v - 1)/((q - 1/p)*v)",
        "HN": f"g*v^({nu})/u^({mu})*(u*v - 1)/((q - 1/p)*v)",
        "HB": f"g*v^({nu})/u^({mu})*(u*v - 1)/((q - 1/p)*v)",
    }
    return texts[name]


@dataclass(frozen=True)
class RFunction:
    """An evaluable R(u, v) bound to base parameters.

    ``family`` names the builtin closed form, or is ``None`` for a custom
    expression carried in ``ast``.
    """

    name: str
    base: BaseParams
    family: Optional[str] = None
    ast: Optional[Node] = field(default=None, compare=False)

    def __call__(self, u, v) -> Fraction:
        u, v = as_scalar(u), as_scalar(v)
        if self.family is not None:
            return _builtin_value(self.family, self.base, u, v)
        return eval_ast(self.ast, self.base, u, v)

    def number(self, n) -> Fraction:
        return deformed_number(self, n)

    def source(self) -> str:
        if self.family is not None:
            return _builtin_source(self.family, self.base)
        return to_source(self.ast)

    def with_base(self, base: BaseParams) -> "RFunction":
        return RFunction(self.name, base, self.family, self.ast)


def builtin(name: str, base: BaseParams) -> RFunction:
    if name not in BUILTINS:
        raise ValueError(f"unknown builtin {name!r}; expected one of {BUILTINS}")
    return RFunction(name, base, family=name)


def custom(text: str, base: BaseParams, name: Optional[str] = None) -> RFunction:
    return RFunction(name or text, base, ast=parse_r(text))


def eval_r(r: RFunction, u, v) -> Fraction:
    return r(u, v)


def deformed_number(r: RFunction, n) -> Fraction:
    """``[n]_R = R(p**n, q**n)``."""
    return r(half_power(r.base, "p", n), half_power(r.base, "q", n))


def family_closed_form(r: RFunction, n) -> Fraction:
    """Closed-form value of a builtin's number at ``n``, computed without R."""
    if r.family == "CJP":
        return -half_power(r.base, "pq", -n) * family_number(r.base, "JS", n)
    return family_number(r.base, r.family, n)


# Malformed inputs with the error class each must raise.
MALFORMED_CORPUS = (
    ("u +", ParseError),
    ("", ParseError),
    ("(u - v", ParseError),
    ("u - v)", ParseError),
    ("u ** v", ParseError),
    ("u^v", ExponentError),
    ("u^(1/3)", ExponentError),
    ("u^(1/0)", ExponentError),
    ("u^1.5", LexError),
    ("x + 1", LexError),
    ("u $ v", LexError),
    ("u v", ParseError),
)
