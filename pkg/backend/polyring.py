# polyring.py - polynomials over Q, Groebner bases, ideal intersection, Hilbert polynomials
"""
Exact multivariate polynomial arithmetic over the rationals.

A Poly is a map from exponent tuples to nonzero Fractions in a fixed number
of variables x0, x1, ... Monomial orders are objects with a sort key: the
larger key is the larger monomial.

Groebner bases come from Buchberger's algorithm with the normal selection
strategy (smallest lcm first) and both of Buchberger's criteria. Ideal
intersection eliminates an auxiliary variable t from t*I + (1-t)*J under a
block order. Hilbert functions are counted from the leading-term ideal of a
grevlex basis.
"""

from __future__ import annotations

import re
import time
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations_with_replacement
from pathlib import Path

from backend.app_logging import get_logger

logger = get_logger(__name__)


class PolyError(ValueError):
    """Base error for polynomial computations"""


class PolyParseError(PolyError):
    """Malformed polynomial text"""


class NonHomogeneousError(PolyError):
    """A graded computation received non-homogeneous input"""


class RingMismatchError(PolyError):
    """Operands live in rings with different variable counts"""


class HilbertStabilizationError(PolyError):
    """The Hilbert function did not become polynomial below the degree bound"""

    def __init__(self, message, values=None, bound=None):
        self.values = values or {}
        self.bound = bound
        super().__init__(message)


# ------------------------------------------------------------
# Monomial orders
# ------------------------------------------------------------

@lru_cache(maxsize=None)
def _grevlex_key(e):
    return (sum(e), tuple(-x for x in reversed(e)))


@lru_cache(maxsize=None)
def _lex_key(e):
    return e


@dataclass(frozen=True)
class MonomialOrder:
    """name is "grevlex", "lex" or "block:k" (grevlex on the first k variables, then grevlex on the rest)"""

    name: str

    def key(self, e):
        if self.name == "grevlex":
            return _grevlex_key(e)
        if self.name == "lex":
            return e
        if self.name.startswith("block:"):
            return _block_key(e, int(self.name.split(":", 1)[1]))
        raise PolyError(f"unknown monomial order {self.name!r}")

    def __str__(self):
        return self.name


@lru_cache(maxsize=None)
def _block_key(e, k):
    return (_grevlex_key(e[:k]), _grevlex_key(e[k:]))


GREVLEX = MonomialOrder("grevlex")
LEX = MonomialOrder("lex")


def block_order(k):
    """Elimination order for the first k variables"""
    return MonomialOrder(f"block:{k}")


def _as_order(order):
    if isinstance(order, MonomialOrder):
        return order
    if order in ("grevlex", "lex") or str(order).startswith("block:"):
        return MonomialOrder(str(order))
    raise PolyError(f"unknown monomial order {order!r}")


# ------------------------------------------------------------
# Polynomials
# ------------------------------------------------------------

def _add_exp(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _sub_exp(a, b):
    return tuple(x - y for x, y in zip(a, b))


def _divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def _lcm_exp(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def _coprime(a, b):
    return all(x == 0 or y == 0 for x, y in zip(a, b))


class Poly:
    """
    Polynomial with Fraction coefficients in nvars variables.

    Treated as immutable after construction.
    """

    __slots__ = ('nvars', 'terms', '_hash')

    def __init__(self, nvars, terms=None):
        self.nvars = nvars
        clean = {}
        for e, c in (terms or {}).items():
            e = tuple(e)
            if len(e) != nvars:
                raise RingMismatchError(f"exponent {e} does not have {nvars} entries")
            c = Fraction(c)
            if c:
                clean[e] = clean.get(e, 0) + c
                if not clean[e]:
                    del clean[e]
        self.terms = clean
        self._hash = None

    @classmethod
    def constant(cls, nvars, c):
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def variable(cls, nvars, i):
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, {tuple(e): 1})

    @classmethod
    def variables(cls, nvars):
        return [cls.variable(nvars, i) for i in range(nvars)]

    @classmethod
    def linear(cls, coeffs):
        """sum c_i x_i"""
        n = len(coeffs)
        return cls(n, {tuple(1 if k == i else 0 for k in range(n)): c for i, c in enumerate(coeffs)})

    def _lift(self, other):
        if isinstance(other, Poly):
            if other.nvars != self.nvars:
                raise RingMismatchError(f"cannot combine polynomials in {self.nvars} and {other.nvars} variables")
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return Poly.constant(self.nvars, other)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        terms = dict(self.terms)
        for e, c in other.terms.items():
            v = terms.get(e, 0) + c
            if v:
                terms[e] = v
            else:
                terms.pop(e, None)
        return Poly._raw(self.nvars, terms)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            if not other:
                return Poly(self.nvars)
            return Poly._raw(self.nvars, {e: c * other for e, c in self.terms.items()})
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        terms = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = _add_exp(e1, e2)
                v = terms.get(e, 0) + c1 * c2
                if v:
                    terms[e] = v
                else:
                    terms.pop(e, None)
        return Poly._raw(self.nvars, terms)

    __rmul__ = __mul__

    def __truediv__(self, c):
        if isinstance(c, Poly):
            if not c.is_constant() or c.is_zero():
                raise PolyError("division by a non-constant polynomial")
            c = c.constant_term()
        if not c:
            raise ZeroDivisionError("polynomial division by zero")
        return self * (1 / Fraction(c))

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise PolyError(f"exponent must be a non-negative integer, got {k!r}")
        result = Poly.constant(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    @classmethod
    def _raw(cls, nvars, terms):
        p = cls.__new__(cls)
        p.nvars = nvars
        p.terms = terms
        p._hash = None
        return p

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            other = Poly.constant(self.nvars, other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return all(not any(e) for e in self.terms)

    def constant_term(self):
        return self.terms.get((0,) * self.nvars, Fraction(0))

    def degree(self):
        """Total degree; -1 for the zero polynomial"""
        return max((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self):
        return len({sum(e) for e in self.terms}) <= 1

    def leading_monomial(self, order=GREVLEX):
        if not self.terms:
            raise PolyError("the zero polynomial has no leading monomial")
        return max(self.terms, key=_as_order(order).key)

    def leading_coefficient(self, order=GREVLEX):
        return self.terms[self.leading_monomial(order)]

    def monic(self, order=GREVLEX):
        if not self.terms:
            return self
        return self * (1 / self.leading_coefficient(order))

    def partial(self, i):
        terms = {}
        for e, c in self.terms.items():
            if e[i]:
                d = list(e)
                d[i] -= 1
                terms[tuple(d)] = c * e[i]
        return Poly._raw(self.nvars, terms)

    def evaluate(self, point):
        """Value at a point given as a sequence of rationals"""
        if len(point) != self.nvars:
            raise RingMismatchError(f"point has {len(point)} coordinates, ring has {self.nvars} variables")
        total = Fraction(0)
        for e, c in self.terms.items():
            v = c
            for x, k in zip(point, e):
                if k:
                    v *= Fraction(x) ** k
            total += v
        return total

    def substitute(self, values):
        """
        Replace variables by polynomials or rationals.

        Args:
            values: {variable index: Poly or rational}
        """
        subs = {i: (v if isinstance(v, Poly) else Poly.constant(self.nvars, v)) for i, v in values.items()}
        result = Poly(self.nvars)
        for e, c in self.terms.items():
            kept = tuple(0 if i in subs else k for i, k in enumerate(e))
            term = Poly._raw(self.nvars, {kept: c})
            for i, k in enumerate(e):
                if k and i in subs:
                    term = term * subs[i] ** k
            result = result + term
        return result

    def extend(self, front=0, back=0):
        """Same polynomial in a ring with extra variables before and after"""
        pre = (0,) * front
        post = (0,) * back
        return Poly._raw(self.nvars + front + back, {pre + e + post: c for e, c in self.terms.items()})

    def drop(self, index):
        """Remove a variable that does not occur"""
        if any(e[index] for e in self.terms):
            raise PolyError(f"x{index} occurs in the polynomial")
        return Poly._raw(self.nvars - 1, {e[:index] + e[index + 1:]: c for e, c in self.terms.items()})

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"Poly({self.nvars}, {format_poly(self)!r})"


def variable_names(nvars):
    return [f"x{i}" for i in range(nvars)]


def format_poly(p, names=None):
    """
    Text form of a polynomial, terms in decreasing grevlex order.

    Examples:
        format_poly(parse_poly("x1*x2 - 3/2*x0^2*x3")) -> "3/2*x0^2*x3 - x1*x2"
    """
    names = names or variable_names(p.nvars)
    if not p.terms:
        return "0"
    out = []
    for e in sorted(p.terms, key=_grevlex_key, reverse=True):
        c = p.terms[e]
        factors = [names[i] + (f"^{k}" if k > 1 else "") for i, k in enumerate(e) if k]
        mag = abs(c)
        if factors:
            body = "*".join(factors) if mag == 1 else f"{mag}*" + "*".join(factors)
        else:
            body = str(mag)
        if not out:
            out.append(("-" if c < 0 else "") + body)
        else:
            out.append(("- " if c < 0 else "+ ") + body)
    return " ".join(out)


# ------------------------------------------------------------
# Parsing
# ------------------------------------------------------------

_TOKEN_RE = re.compile(r'\s*(?:(\d+)|(x\d+)|(\*\*|[-+*/^()]))')


def _tokenize(text):
    tokens = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m or m.end() == pos:
            raise PolyParseError(f"unexpected character at position {pos}: {text[pos:pos + 10]!r}")
        num, var, op = m.groups()
        if num is not None:
            tokens.append(('num', int(num)))
        elif var is not None:
            tokens.append(('var', int(var[1:])))
        else:
            tokens.append(('op', '^' if op == '**' else op))
        pos = m.end()
    return tokens


class _Parser:
    """Recursive descent over + - * / ^ and parentheses"""

    def __init__(self, tokens, nvars):
        self.tokens = tokens
        self.pos = 0
        self.nvars = nvars

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else (None, None)

    def take(self):
        tok = self.peek()
        self.pos += 1
        return tok

    def expect(self, op):
        kind, value = self.take()
        if kind != 'op' or value != op:
            raise PolyParseError(f"expected {op!r}, got {value!r}")

    def expr(self):
        result = self.term()
        while self.peek() in (('op', '+'), ('op', '-')):
            _, op = self.take()
            rhs = self.term()
            result = result + rhs if op == '+' else result - rhs
        return result

    def term(self):
        result = self.unary()
        while self.peek() in (('op', '*'), ('op', '/')):
            _, op = self.take()
            rhs = self.unary()
            if op == '*':
                result = result * rhs
            else:
                if not rhs.is_constant() or rhs.is_zero():
                    raise PolyParseError("division is only allowed by nonzero constants")
                result = result / rhs
        return result

    def unary(self):
        if self.peek() == ('op', '-'):
            self.take()
            return -self.unary()
        if self.peek() == ('op', '+'):
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek() == ('op', '^'):
            self.take()
            kind, value = self.take()
            if kind != 'num':
                raise PolyParseError("exponent must be a non-negative integer literal")
            return base ** value
        return base

    def atom(self):
        kind, value = self.take()
        if kind == 'num':
            return Poly.constant(self.nvars, value)
        if kind == 'var':
            if value >= self.nvars:
                raise PolyParseError(f"x{value} is outside a ring with {self.nvars} variables")
            return Poly.variable(self.nvars, value)
        if (kind, value) == ('op', '('):
            inner = self.expr()
            self.expect(')')
            return inner
        raise PolyParseError(f"unexpected token {value!r}")


def parse_poly(text, nvars=None):
    """
    Parse "3/2*x0^2*x3 - x1*x2" style text.

    Args:
        text: polynomial text in variables x0..x9
        nvars: ring size; defaults to one more than the largest index used (at least 1)
    """
    tokens = _tokenize(text)
    if not tokens:
        raise PolyParseError("empty polynomial")
    used = [v for kind, v in tokens if kind == 'var']
    if any(v > 9 for v in used):
        raise PolyParseError("variables are limited to x0..x9")
    if nvars is None:
        nvars = max(used, default=0) + 1
    parser = _Parser(tokens, nvars)
    result = parser.expr()
    if parser.pos != len(tokens):
        raise PolyParseError(f"trailing input after token {parser.pos}")
    return result


def read_ideal_file(path, nvars=None):
    """
    Read one generator per line; "#" starts a comment.

    Returns:
        Ideal in max(variables used)+1 variables unless nvars is given
    """
    lines = []
    for raw in Path(path).read_text(encoding='utf-8').splitlines():
        line = raw.split('#', 1)[0].strip()
        if line:
            lines.append(line)
    if not lines:
        raise PolyParseError(f"{path} contains no generators")
    if nvars is None:
        used = [v for line in lines for kind, v in _tokenize(line) if kind == 'var']
        nvars = max(used, default=0) + 1
    return Ideal(tuple(parse_poly(line, nvars) for line in lines), nvars)


# ------------------------------------------------------------
# Ideals and Groebner bases
# ------------------------------------------------------------

@dataclass(frozen=True)
class Ideal:
    generators: tuple
    nvars: int

    def __post_init__(self):
        gens = tuple(g for g in self.generators if not g.is_zero())
        for g in gens:
            if g.nvars != self.nvars:
                raise RingMismatchError(f"generator {g} is not in a ring with {self.nvars} variables")
        object.__setattr__(self, 'generators', gens)

    @classmethod
    def of(cls, *generators):
        if not generators:
            raise PolyError("use Ideal((), nvars) for the zero ideal")
        return cls(tuple(generators), generators[0].nvars)

    def is_homogeneous(self):
        return all(g.is_homogeneous() for g in self.generators)

    def max_degree(self):
        return max((g.degree() for g in self.generators), default=0)

    def __str__(self):
        return "ideal(" + ", ".join(format_poly(g) for g in self.generators) + ")"


@dataclass(frozen=True)
class GroebnerBasis:
    basis: tuple
    order: str
    nvars: int
    stats: dict = field(default_factory=dict, compare=False, hash=False)

    def leading_monomials(self):
        order = _as_order(self.order)
        return [g.leading_monomial(order) for g in self.basis]

    def as_ideal(self):
        return Ideal(self.basis, self.nvars)

    def __len__(self):
        return len(self.basis)

    def __iter__(self):
        return iter(self.basis)


def _reduce_terms(terms, basis, key):
    """Full reduction of a term dict by monic (lm, terms) pairs"""
    p = dict(terms)
    rem = {}
    while p:
        lm = max(p, key=key)
        c = p[lm]
        for g_lm, g_terms in basis:
            if _divides(g_lm, lm):
                shift = _sub_exp(lm, g_lm)
                for e, gc in g_terms.items():
                    ne = _add_exp(e, shift)
                    v = p.get(ne, 0) - c * gc
                    if v:
                        p[ne] = v
                    else:
                        p.pop(ne, None)
                break
        else:
            rem[lm] = c
            del p[lm]
    return rem


def _monic_terms(terms, key):
    lm = max(terms, key=key)
    inv = 1 / terms[lm]
    return lm, {e: c * inv for e, c in terms.items()}


def _s_poly(a, b):
    a_lm, a_terms = a
    b_lm, b_terms = b
    lcm = _lcm_exp(a_lm, b_lm)
    sa = _sub_exp(lcm, a_lm)
    sb = _sub_exp(lcm, b_lm)
    out = {}
    for e, c in a_terms.items():
        out[_add_exp(e, sa)] = c
    for e, c in b_terms.items():
        ne = _add_exp(e, sb)
        v = out.get(ne, 0) - c
        if v:
            out[ne] = v
        else:
            out.pop(ne, None)
    return out


def buchberger(ideal, order=GREVLEX):
    """
    Reduced Groebner basis of an ideal.

    Pairs are processed smallest lcm first (degree, then the order, then
    indices). Coprime leading monomials are skipped, and so is a pair (i, j)
    whenever some k has lm(k) | lcm(i, j) with (i, k) and (j, k) already treated.

    Returns:
        GroebnerBasis with monic elements sorted by decreasing leading monomial
    """
    order = _as_order(order)
    key = order.key
    started = time.perf_counter()

    G = []
    pairs = {}

    def add(terms):
        lm, monic = _monic_terms(terms, key)
        G.append((lm, monic))
        new = len(G) - 1
        for i in range(new):
            lcm = _lcm_exp(G[i][0], lm)
            pairs[(i, new)] = (sum(lcm), key(lcm), i, new)

    for g in ideal.generators:
        r = _reduce_terms(g.terms, G, key)
        if r:
            add(r)

    treated = 0
    skipped = 0
    while pairs:
        i, j = min(pairs, key=pairs.get)
        del pairs[(i, j)]
        lm_i, lm_j = G[i][0], G[j][0]
        if _coprime(lm_i, lm_j):
            skipped += 1
            continue
        lcm = _lcm_exp(lm_i, lm_j)
        if any(k != i and k != j and _divides(G[k][0], lcm)
               and (min(i, k), max(i, k)) not in pairs
               and (min(j, k), max(j, k)) not in pairs
               for k in range(len(G))):
            skipped += 1
            continue
        treated += 1
        h = _reduce_terms(_s_poly(G[i], G[j]), G, key)
        if h:
            add(h)

    # minimal basis, then tail reduction
    keep = []
    for idx, (lm, terms) in enumerate(G):
        if any(_divides(G[k][0], lm) and (G[k][0] != lm or k < idx)
               for k in range(len(G)) if k != idx):
            continue
        keep.append((lm, terms))
    reduced = []
    for idx, (lm, terms) in enumerate(keep):
        others = [g for k, g in enumerate(keep) if k != idx]
        tail = dict(terms)
        c = tail.pop(lm)
        rem = _reduce_terms(tail, others, key)
        rem[lm] = c
        reduced.append((lm, rem))
    reduced.sort(key=lambda g: key(g[0]), reverse=True)

    elapsed = time.perf_counter() - started
    stats = {"pairs_treated": treated, "pairs_skipped": skipped, "elapsed": elapsed}
    logger.debug(
        f"Groebner basis ({order}) in {ideal.nvars} variables: {len(ideal.generators)} generators, "
        f"{treated} pairs reduced, {skipped} skipped, {len(reduced)} elements, {elapsed:.3f}s")
    basis = tuple(Poly._raw(ideal.nvars, terms) for _, terms in reduced)
    return GroebnerBasis(basis, order.name, ideal.nvars, stats)


@lru_cache(maxsize=256)
def groebner(ideal, order="grevlex"):
    """Cached buchberger for hashable ideals"""
    return buchberger(ideal, _as_order(order))


def normal_form(f, gb):
    """Remainder of f on division by a Groebner basis"""
    order = _as_order(gb.order)
    basis = [(g.leading_monomial(order), g.terms) for g in gb.basis]
    return Poly._raw(f.nvars, _reduce_terms(f.terms, basis, order.key))


def ideal_contains(ideal, f):
    if f.nvars != ideal.nvars:
        raise RingMismatchError("polynomial and ideal live in different rings")
    return normal_form(f, groebner(ideal)).is_zero()


def ideals_equal(a, b):
    """Equality via reduced grevlex bases"""
    if a.nvars != b.nvars:
        return False
    return groebner(a).basis == groebner(b).basis


def ideal_sum(a, b):
    if a.nvars != b.nvars:
        raise RingMismatchError("ideals live in different rings")
    return Ideal(a.generators + b.generators, a.nvars)


def ideal_product(a, b):
    if a.nvars != b.nvars:
        raise RingMismatchError("ideals live in different rings")
    return Ideal(tuple(f * g for f in a.generators for g in b.generators), a.nvars)


def ideal_power(a, k):
    if k < 1:
        raise PolyError("ideal powers start at 1")
    result = a
    for _ in range(k - 1):
        result = ideal_product(result, a)
    return result


def ideal_intersect(a, b):
    """
    Generators of the intersection of two ideals.

    Computes a Groebner basis of t*I + (1-t)*J in the ring (t, x0, ...)
    under an order eliminating t; the t-free elements generate I n J and
    form its reduced grevlex basis.
    """
    if a.nvars != b.nvars:
        raise RingMismatchError("ideals live in different rings")
    n = a.nvars
    if not a.generators or not b.generators:
        return Ideal((), n)
    t = Poly.variable(n + 1, 0)
    one_minus_t = 1 - t
    gens = [t * f.extend(front=1) for f in a.generators]
    gens += [one_minus_t * g.extend(front=1) for g in b.generators]
    gb = buchberger(Ideal(tuple(gens), n + 1), block_order(1))
    kept = tuple(g.drop(0) for g in gb.basis if all(e[0] == 0 for e in g.terms))
    return Ideal(kept, n)


def intersect_all(ideals, balanced=False):
    """Intersection of several ideals, sequentially or as a balanced tree"""
    ideals = list(ideals)
    if not ideals:
        raise PolyError("nothing to intersect")
    if balanced:
        while len(ideals) > 1:
            nxt = [ideal_intersect(ideals[k], ideals[k + 1]) for k in range(0, len(ideals) - 1, 2)]
            if len(ideals) % 2:
                nxt.append(ideals[-1])
            ideals = nxt
        return ideals[0]
    result = ideals[0]
    for other in ideals[1:]:
        result = ideal_intersect(result, other)
    return result


# ------------------------------------------------------------
# Hilbert functions
# ------------------------------------------------------------

def _minimal_monomials(monomials):
    mons = sorted(set(monomials), key=sum)
    out = []
    for m in mons:
        if not any(_divides(g, m) for g in out):
            out.append(m)
    return out


def _monomials_of_degree(nvars, m):
    for combo in combinations_with_replacement(range(nvars), m):
        e = [0] * nvars
        for v in combo:
            e[v] += 1
        yield tuple(e)


def _require_homogeneous(ideal):
    for g in ideal.generators:
        if not g.is_homogeneous():
            raise NonHomogeneousError(f"generator {format_poly(g)} is not homogeneous")


def hilbert_function(ideal, m):
    """
    dim_k (R/I)_m for a homogeneous ideal, counted on the leading-term ideal.

    Examples:
        zero ideal in 4 variables, m=2 -> 10
        ideal(x0, x3), m -> m + 1
    """
    _require_homogeneous(ideal)
    if m < 0:
        return 0
    lms = _minimal_monomials(groebner(ideal).leading_monomials())
    return sum(1 for e in _monomials_of_degree(ideal.nvars, m) if not any(_divides(g, e) for g in lms))


@dataclass(frozen=True)
class HilbertPolynomial:
    """
    P(m) = sum coeffs[k] * m^k with rational coefficients.

    regularity_index is the first degree from which the Hilbert function
    agrees with P up to the checked bound.
    """

    coeffs: tuple
    regularity_index: int = 0
    bound: int = 0

    def __post_init__(self):
        cs = [Fraction(c) for c in self.coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, 'coeffs', tuple(cs))

    def __call__(self, m):
        total = Fraction(0)
        for c in reversed(self.coeffs):
            total = total * m + c
        return total

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def __eq__(self, other):
        if isinstance(other, HilbertPolynomial):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            mag = abs(c)
            if k == 0:
                body = str(mag)
            else:
                power = "m" if k == 1 else f"m^{k}"
                body = power if mag == 1 else f"{mag}*{power}"
            if not parts:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append(("- " if c < 0 else "+ ") + body)
        return " ".join(parts)


def _interpolate(points):
    """Power-basis coefficients of the polynomial through (m, v) pairs (Newton form)"""
    xs = [Fraction(x) for x, _ in points]
    table = [Fraction(v) for _, v in points]
    n = len(points)
    newton = [table[0]]
    for level in range(1, n):
        table = [(table[k + 1] - table[k]) / (xs[k + level] - xs[k]) for k in range(n - level)]
        newton.append(table[0])
    coeffs = [Fraction(0)] * n
    for k in range(n - 1, -1, -1):
        # coeffs = coeffs * (m - xs[k]) + newton[k]
        shifted = [Fraction(0)] + coeffs[:-1]
        coeffs = [s - xs[k] * c for s, c in zip(shifted, coeffs)]
        coeffs[0] += newton[k]
    return coeffs


def default_degree_bound(ideal):
    """4 + twice the largest generator degree"""
    top = max((g.degree() for g in ideal.generators), default=0)
    return 4 + 2 * top


def hilbert_polynomial(ideal, degree_bound=None):
    """
    Eventual polynomial of the Hilbert function of a homogeneous ideal.

    A window of nvars+2 values ending at the degree bound is differenced
    until a difference row vanishes; the interpolated polynomial is then
    checked at two further degrees.

    Raises:
        HilbertStabilizationError with the computed values and the bound
    """
    _require_homogeneous(ideal)
    n = ideal.nvars
    bound = degree_bound if degree_bound is not None else default_degree_bound(ideal)
    bound = max(bound, n + 1)
    window = list(range(bound - n - 1, bound + 1))
    values = {m: hilbert_function(ideal, m) for m in window}

    row = [values[m] for m in window]
    degree = None
    for k in range(n + 1):
        row = [b - a for a, b in zip(row, row[1:])]
        if all(v == 0 for v in row):
            degree = k
            break
    if degree is None:
        raise HilbertStabilizationError(
            f"Hilbert function not polynomial of degree <= {n} on [{window[0]}, {bound}]",
            values, bound)

    pts = [(m, values[m]) for m in window[-(degree + 1):]]
    poly = HilbertPolynomial(tuple(_interpolate(pts)))
    for m in (bound + 1, bound + 2):
        values[m] = hilbert_function(ideal, m)
        if poly(m) != values[m]:
            raise HilbertStabilizationError(
                f"interpolated {poly} disagrees with the Hilbert function at m={m} "
                f"({poly(m)} != {values[m]}); raise the degree bound above {bound}",
                values, bound)

    reg = window[0]
    while reg > 0:
        prev = reg - 1
        if prev not in values:
            values[prev] = hilbert_function(ideal, prev)
        if values[prev] != poly(prev):
            break
        reg = prev
    logger.debug(f"Hilbert polynomial {poly} (bound {bound}, agrees from m={reg})")
    return HilbertPolynomial(poly.coeffs, reg, bound)


def line_arrangement_genus(k, points):
    """Arithmetic genus points - k + 1 of a connected nodal union of k lines"""
    if k < 1 or points < k - 1:
        raise PolyError(f"{k} lines with {points} nodes cannot be connected")
    return points - k + 1


def line_arrangement_hilbert_polynomial(k, points):
    """
    k*m + 1 - g for a connected nodal union of k lines meeting in the given
    number of points.

    Examples:
        27 lines, 135 points -> 27*m - 108
    """
    genus = line_arrangement_genus(k, points)
    return HilbertPolynomial((1 - genus, k))


def jacobian_smoothness(f):
    """
    True iff the projective hypersurface f = 0 is smooth.

    The Jacobian ideal (f, df/dx_i) must contain a pure power of every
    variable in its leading-term ideal.
    """
    if f.is_zero():
        raise PolyError("the zero polynomial does not define a hypersurface")
    if not f.is_homogeneous():
        raise NonHomogeneousError("jacobian_smoothness needs a homogeneous polynomial")
    gens = (f,) + tuple(f.partial(i) for i in range(f.nvars))
    lms = groebner(Ideal(gens, f.nvars)).leading_monomials()
    for i in range(f.nvars):
        if not any(e[i] > 0 and sum(e) == e[i] for e in lms):
            return False
    return True


if __name__ == "__main__":
    x0, x1, x2, x3 = Poly.variables(4)
    line = Ideal.of(x0, x3)
    print(hilbert_polynomial(line))
    print(ideal_intersect(Ideal.of(x0, x3), Ideal.of(x1, x3)))
