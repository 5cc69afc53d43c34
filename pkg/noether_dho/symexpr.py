""" Expression kernel

Expressions are SymPy trees restricted to a closed function class:
polynomials in t, u, u1 times exp(lambda*t) times sin/cos/sinh/cosh(omega*t),
with exact rational coefficients. This module parses the expression
grammar, differentiates, substitutes, canonicalizes and decides zero.
"""
import dataclasses
import re

import numpy as np
import sympy
from sympy.printing.str import StrPrinter
from sympy.simplify.fu import TR8

from . import config, errors


Expr = sympy.Expr

t = sympy.Symbol('t', real=True)
u = sympy.Symbol('u', real=True)
u1 = sympy.Symbol('u1', real=True)
# Formal second derivative; only the variational layer produces it.
U2 = sympy.Symbol('u2', real=True)

m = sympy.Symbol('m', positive=True)
c = sympy.Symbol('c', nonnegative=True)
k = sympy.Symbol('k', positive=True)

VARIABLES = (t, u, u1)
PARAMETERS = (m, c, k)
RESERVED = {s.name: s for s in VARIABLES + PARAMETERS}

FUNCTIONS = {
    'exp': sympy.exp,
    'sin': sympy.sin,
    'cos': sympy.cos,
    'sinh': sympy.sinh,
    'cosh': sympy.cosh,
    'sqrt': sympy.sqrt,
}


@dataclasses.dataclass(frozen=True)
class Params:
    """Oscillator coefficients of u'' + (c/m)u' + (k/m)u = 0 """
    m: sympy.Rational
    c: sympy.Rational
    k: sympy.Rational

    def __post_init__(self):
        for name in ('m', 'c', 'k'):
            object.__setattr__(self, name, sympy.Rational(getattr(self, name)))
        if not self.m > 0:
            raise ValueError(f'mass must be positive, got {self.m}')
        if not self.k > 0:
            raise ValueError(f'spring constant must be positive, got {self.k}')
        if self.c < 0:
            raise ValueError(f'damping must be non-negative, got {self.c}')

    @property
    def discriminant(self):
        return self.c ** 2 - 4 * self.k * self.m

    def bindings(self):
        return {m: self.m, c: self.c, k: self.k}

    def as_tuple(self):
        return (self.m, self.c, self.k)

    def __str__(self):
        return f'(m, c, k) = ({self.m}, {self.c}, {self.k})'


""" Parsing """

_TOKEN = re.compile(
    r'\s*(?:(?P<number>\d+(?:\.\d+)?|\.\d+)'
    r'|(?P<name>[A-Za-z_][A-Za-z_0-9]*)'
    r'|(?P<op>[-+*/^()]))'
)


def _tokenize(text):
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == '':
            break
        match = _TOKEN.match(text, pos)
        if not match:
            offset = len(text) - len(text[pos:].lstrip())
            raise errors.ExprSyntaxError(text, offset, 'unexpected character')
        kind = match.lastgroup
        yield kind, match.group(kind), match.start(kind)
        pos = match.end()


class _Parser:
    """Recursive descent over

        expr   := term (('+'|'-') term)*
        term   := factor (('*'|'/') factor)*
        factor := ('+'|'-') factor | base ('^' exponent)?
        base   := number | symbol | '(' expr ')' | func '(' expr ')'
    """

    def __init__(self, text, symbols):
        self.text = text
        self.tokens = list(_tokenize(text))
        self.index = 0
        self.symbols = symbols

    def peek(self):
        if self.index < len(self.tokens):
            return self.tokens[self.index]
        return ('end', None, len(self.text))

    def advance(self):
        token = self.peek()
        self.index += 1
        return token

    def fail(self, message, position=None):
        if position is None:
            position = self.peek()[2]
        raise errors.ExprSyntaxError(self.text, position, message)

    def is_op(self, *ops):
        kind, value, _ = self.peek()
        return kind == 'op' and value in ops

    def expect(self, op):
        if not self.is_op(op):
            self.fail(f"expected '{op}'")
        self.advance()

    def parse(self):
        if not self.tokens:
            self.fail('empty expression', 0)
        result = self.expr()
        if self.peek()[0] != 'end':
            self.fail('unexpected token')
        return result

    def expr(self):
        result = self.term()
        while self.is_op('+', '-'):
            _, op, _ = self.advance()
            rhs = self.term()
            result = result + rhs if op == '+' else result - rhs
        return result

    def term(self):
        result = self.factor()
        while self.is_op('*', '/'):
            _, op, _ = self.advance()
            rhs = self.factor()
            result = result * rhs if op == '*' else result / rhs
        return result

    def factor(self):
        if self.is_op('-'):
            self.advance()
            return -self.factor()
        if self.is_op('+'):
            self.advance()
            return self.factor()
        base = self.base()
        if self.is_op('^'):
            self.advance()
            return base ** self.exponent()
        return base

    def exponent(self):
        sign = 1
        if self.is_op('-', '+'):
            sign = -1 if self.advance()[1] == '-' else 1
        if self.peek()[0] == 'number':
            return sign * self.integer()
        if self.is_op('('):
            self.advance()
            if self.is_op('-', '+'):
                sign *= -1 if self.advance()[1] == '-' else 1
            numerator = self.integer()
            denominator = 1
            if self.is_op('/'):
                self.advance()
                position = self.peek()[2]
                denominator = self.integer()
                if denominator not in (1, 2):
                    self.fail('only integer or half-integer powers', position)
            self.expect(')')
            return sign * sympy.Rational(numerator, denominator)
        self.fail('expected an integer or half-integer exponent')

    def integer(self):
        kind, value, position = self.peek()
        if kind != 'number' or not value.isdigit():
            self.fail('expected an integer', position)
        self.advance()
        return sympy.Integer(int(value))

    def base(self):
        kind, value, position = self.peek()
        if kind == 'number':
            self.advance()
            return sympy.Rational(value)
        if kind == 'name':
            self.advance()
            if value in FUNCTIONS:
                self.expect('(')
                argument = self.expr()
                self.expect(')')
                return FUNCTIONS[value](argument)
            if value in self.symbols:
                return self.symbols[value]
            raise errors.UnknownSymbolError(value, position)
        if self.is_op('('):
            self.advance()
            result = self.expr()
            self.expect(')')
            return result
        self.fail('unexpected token' if kind != 'end' else 'unexpected end')


def parse(text, declared=()):
    """Parse `text` in the expression grammar.

    `declared` names extra symbols allowed besides t, u, u1, m, c, k.
    """
    symbols = dict(RESERVED)
    for name in declared:
        symbols.setdefault(name, sympy.Symbol(name, real=True))
    return _Parser(text, symbols).parse()


""" Printing """


class _GrammarPrinter(StrPrinter):

    def _print_Exp1(self, expr):
        return 'exp(1)'


def to_string(e):
    """Render `e` in the expression grammar accepted by `parse`. """
    return _GrammarPrinter().doprint(sympy.sympify(e)).replace('**', '^')


""" Canonical form """


def _expand(e):
    e = sympy.expand(e, power_exp=False)
    e = sympy.powsimp(e, combine='exp')
    return sympy.expand(e, power_exp=False)


def canonical(e):
    """Expanded sum of terms with merged exponentials.

    Hyperbolic functions are written as exponentials and products of
    sin/cos are rewritten as sums, so most identities of the class
    reduce to a literal zero.
    """
    e = sympy.sympify(e)
    if e.has(sympy.sinh, sympy.cosh):
        e = e.replace(sympy.sinh,
                      lambda a: (sympy.exp(a) - sympy.exp(-a)) / 2)
        e = e.replace(sympy.cosh,
                      lambda a: (sympy.exp(a) + sympy.exp(-a)) / 2)
    e = _expand(e)
    if e.has(sympy.sin, sympy.cos):
        e = _expand(TR8(e))
    return e


def free_symbols(e):
    return sympy.sympify(e).free_symbols


def diff(e, v):
    """Exact partial derivative; parameters are constants. """
    if v not in VARIABLES and v != U2:
        raise ValueError(f'cannot differentiate with respect to {v}')
    return canonical(sympy.diff(e, v))


def _symbol(key):
    if isinstance(key, sympy.Symbol):
        return key
    if key == U2.name:
        return U2
    if key in RESERVED:
        return RESERVED[key]
    return sympy.Symbol(key, real=True)


def substitute(e, bindings):
    """Simultaneous substitution followed by canonicalization. """
    mapping = {_symbol(key): sympy.sympify(value)
               for key, value in bindings.items()}
    return canonical(sympy.sympify(e).subs(mapping, simultaneous=True))


""" Numerics """


def evaluate(e, assignment):
    """Evaluate `e` at an Assignment of every free symbol to a number. """
    e = sympy.sympify(e)
    values = {_symbol(key): value for key, value in assignment.items()}
    missing = e.free_symbols - set(values)
    if missing:
        raise errors.EvaluationError(
            e, 'unbound %s' % ', '.join(sorted(s.name for s in missing)))
    value = complex(e.evalf(subs=values))
    if abs(value.imag) > 1e-12 * (1 + abs(value.real)):
        raise errors.EvaluationError(e, assignment)
    return value.real


def numeric(e, params=None, variables=VARIABLES):
    """Vectorized numpy callable of `variables`; constants broadcast. """
    e = sympy.sympify(e)
    if params is not None:
        e = e.subs(params.bindings())
    fn = sympy.lambdify(variables, e, modules='numpy')

    def call(*args):
        shape = np.broadcast(*args).shape if args else ()
        value = np.asarray(fn(*args), dtype=float)
        return np.broadcast_to(value, shape)

    return call


def _draw(rng, symbols, interval):
    low, high = interval
    point = rng.uniform(low, high, len(symbols))
    signs = rng.choice([-1.0, 1.0], len(symbols))
    # parameters left free are sampled positive
    return [x if s in PARAMETERS else x * sign
            for s, x, sign in zip(symbols, point, signs)]


def is_zero(e, params=None, settings=None):
    """Decide whether `e` vanishes identically.

    True when the canonical form is literally 0. Otherwise `e` is evaluated
    at random points; a nonzero expression can be reported as zero only if
    it vanishes at every sampled point (one-sided error). The generator is
    seeded from the settings, so answers are reproducible.
    """
    settings = settings or config.DEFAULTS
    e = sympy.sympify(e)
    if params is not None:
        e = e.subs(params.bindings())
    e = canonical(e)
    if e == 0:
        return True

    symbols = sorted(e.free_symbols, key=lambda s: s.name)
    terms = sympy.Add.make_args(e)
    fn = sympy.lambdify(symbols, list(terms), modules='numpy')
    rng = np.random.default_rng(settings.zero_seed)

    accepted = 0
    attempts = 0
    while accepted < settings.zero_points:
        if attempts >= settings.zero_points + settings.zero_retries:
            raise errors.EvaluationError(e, 'no admissible sample point')
        attempts += 1
        point = _draw(rng, symbols, settings.zero_interval)
        with np.errstate(all='ignore'):
            values = np.array([complex(v) for v in fn(*point)])
        if not np.all(np.isfinite(values)) or \
                np.any(np.abs(values.imag) > 1e-12 * (1 + np.abs(values.real))):
            continue
        values = values.real
        scale = np.sum(np.abs(values))
        if abs(np.sum(values)) >= settings.zero_tolerance * (1 + scale):
            return False
        accepted += 1
    return True
