"""Sparse exact multivariate polynomials with deterministic monomial orders.

Monomials are exponent tuples of fixed length (the ambient variable count).
Polynomials are dicts {exponent tuple: coefficient} over Q or Q(zeta_n);
zero coefficients are never stored.  The canonical order of a ring is
degree-lexicographic in the ring's variable order, which keeps every
printed basis and generator list reproducible byte for byte.
"""

from __future__ import annotations

from fractions import Fraction

from .exactnum import Cyclotomic, CoefficientField, ExactNumError, QQ


class PolyError(ValueError):
    """Structural error in polynomial construction or arithmetic."""


# -- monomial helpers (exponent tuples) -------------------------------------


def mono_mul(a, b):
    return tuple(x + y for x, y in zip(a, b))


def mono_divides(a, b):
    """True when x^a divides x^b."""
    return all(x <= y for x, y in zip(a, b))


def mono_div(a, b):
    """Exponent of x^a / x^b; requires divisibility."""
    return tuple(x - y for x, y in zip(a, b))


def mono_lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def mono_degree(a):
    return sum(a)


class MonomialOrder:
    """A monomial order: lex, deglex, degrevlex, or a block order.

    A block order is given as [(kind, length), ...]; the blocks partition
    the variable list and earlier blocks dominate, so a block order is an
    elimination order for its leading blocks.
    """

    __slots__ = ("kind", "blocks")

    def __init__(self, kind: str, blocks=None):
        if kind == "block":
            if not blocks:
                raise PolyError("block order needs a non-empty block list")
            blocks = tuple((k, int(n)) for k, n in blocks)
            for k, n in blocks:
                if k not in ("lex", "deglex", "degrevlex"):
                    raise PolyError(f"unknown order kind {k!r}")
                if n <= 0:
                    raise PolyError("block lengths must be positive")
        elif kind not in ("lex", "deglex", "degrevlex"):
            raise PolyError(f"unknown order kind {kind!r}")
        else:
            blocks = None
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "blocks", blocks)

    def __setattr__(self, name, value):
        raise AttributeError("MonomialOrder is immutable")

    def key(self, mono):
        """Sort key; key(m1) < key(m2) iff m1 precedes m2 in the order."""
        kind = self.kind
        if kind == "lex":
            return mono
        if kind == "deglex":
            return (sum(mono), mono)
        if kind == "degrevlex":
            return (sum(mono), tuple(-e for e in reversed(mono)))
        parts = []
        start = 0
        for k, length in self.blocks:
            parts.append(MonomialOrder(k).key(mono[start : start + length]))
            start += length
        return tuple(parts)

    def width(self):
        """Number of variables the order expects, or None if any length fits."""
        if self.kind == "block":
            return sum(n for _, n in self.blocks)
        return None

    def __eq__(self, other):
        return (
            isinstance(other, MonomialOrder)
            and self.kind == other.kind
            and self.blocks == other.blocks
        )

    def __hash__(self):
        return hash((self.kind, self.blocks))

    def __repr__(self):
        if self.kind == "block":
            return f"MonomialOrder(block, {list(self.blocks)})"
        return f"MonomialOrder({self.kind})"


LEX = MonomialOrder("lex")
DEGLEX = MonomialOrder("deglex")
DEGREVLEX = MonomialOrder("degrevlex")


def block_order(*blocks) -> MonomialOrder:
    return MonomialOrder("block", blocks)


def monomial_compare(order: MonomialOrder, m1, m2) -> int:
    """-1, 0 or 1 as m1 precedes, equals or follows m2."""
    if len(m1) != len(m2):
        raise PolyError(f"exponent length mismatch: {len(m1)} vs {len(m2)}")
    width = order.width()
    if width is not None and width != len(m1):
        raise PolyError(f"order expects {width} variables, got {len(m1)}")
    k1, k2 = order.key(m1), order.key(m2)
    if k1 < k2:
        return -1
    if k1 > k2:
        return 1
    return 0


class PolyRing:
    """A polynomial ring: ordered variable names over an exact field."""

    __slots__ = ("variables", "field", "_index")

    def __init__(self, variables, field: CoefficientField = QQ):
        variables = tuple(variables)
        if len(set(variables)) != len(variables):
            raise PolyError("duplicate variable names")
        object.__setattr__(self, "variables", variables)
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "_index", {v: i for i, v in enumerate(variables)})

    def __setattr__(self, name, value):
        raise AttributeError("PolyRing is immutable")

    def __eq__(self, other):
        return (
            isinstance(other, PolyRing)
            and self.variables == other.variables
            and self.field == other.field
        )

    def __hash__(self):
        return hash((self.variables, self.field))

    def __repr__(self):
        return f"PolyRing({list(self.variables)}, {self.field!r})"

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise PolyError(f"unknown variable {name!r}") from None

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.constant(self.field.one())

    def constant(self, value) -> "Polynomial":
        value = self.field.coerce(value)
        if not value:
            return self.zero()
        return Polynomial(self, {(0,) * self.nvars: value})

    def var(self, name: str) -> "Polynomial":
        mono = [0] * self.nvars
        mono[self.index(name)] = 1
        return Polynomial(self, {tuple(mono): self.field.one()})

    def monomial(self, exponents, coeff=1) -> "Polynomial":
        exponents = tuple(int(e) for e in exponents)
        if len(exponents) != self.nvars:
            raise PolyError(
                f"exponent length {len(exponents)} != variable count {self.nvars}"
            )
        coeff = self.field.coerce(coeff)
        if not coeff:
            return self.zero()
        return Polynomial(self, {exponents: coeff})

    def from_terms(self, terms) -> "Polynomial":
        out = {}
        for mono, coeff in terms:
            mono = tuple(mono)
            coeff = self.field.coerce(coeff)
            if mono in out:
                coeff = out[mono] + coeff
            if coeff:
                out[mono] = coeff
            else:
                out.pop(mono, None)
        return Polynomial(self, out)

    def parse(self, text: str) -> "Polynomial":
        return _parse_polynomial(self, text)


class Polynomial:
    """A sparse polynomial attached to a ring.

    Supports ring arithmetic, exact evaluation, and a canonical text form
    that round-trips bit-exactly through ``PolyRing.parse``.
    """

    __slots__ = ("ring", "terms")

    def __init__(self, ring: PolyRing, terms: dict):
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "terms", terms)

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    # -- predicates ----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_constant(self) -> bool:
        return not self.terms or set(self.terms) == {(0,) * self.ring.nvars}

    def total_degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(m) for m in self.terms)

    def variables_used(self):
        used = set()
        for mono in self.terms:
            for i, e in enumerate(mono):
                if e:
                    used.add(self.ring.variables[i])
        return used

    # -- arithmetic ----------------------------------------------------------

    def _check_ring(self, other: "Polynomial"):
        if self.ring != other.ring:
            raise PolyError("polynomial ring mismatch")

    def __add__(self, other):
        if isinstance(other, (int, Fraction, Cyclotomic)):
            other = self.ring.constant(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._check_ring(other)
        out = dict(self.terms)
        for mono, coeff in other.terms.items():
            acc = out.get(mono)
            acc = coeff if acc is None else acc + coeff
            if acc:
                out[mono] = acc
            else:
                out.pop(mono, None)
        return Polynomial(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.ring, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, Cyclotomic)):
            other = self.ring.constant(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Cyclotomic)):
            scalar = self.ring.field.coerce(other)
            if not scalar:
                return self.ring.zero()
            return Polynomial(
                self.ring, {m: c * scalar for m, c in self.terms.items()}
            )
        if not isinstance(other, Polynomial):
            return NotImplemented
        self._check_ring(other)
        out = {}
        if len(self.terms) > len(other.terms):
            left, right = other, self
        else:
            left, right = self, other
        for m1, c1 in left.terms.items():
            for m2, c2 in right.terms.items():
                mono = mono_mul(m1, m2)
                prod = c1 * c2
                acc = out.get(mono)
                acc = prod if acc is None else acc + prod
                if acc:
                    out[mono] = acc
                else:
                    out.pop(mono, None)
        return Polynomial(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int) or exponent < 0:
            raise PolyError("polynomial powers must be nonnegative integers")
        result = self.ring.one()
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            exponent >>= 1
            if exponent:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self.terms == other.terms
        return NotImplemented

    def __hash__(self):
        return hash((self.ring, frozenset(self.terms.items())))

    # -- leading data --------------------------------------------------------

    def leading_monomial(self, order: MonomialOrder = DEGLEX):
        if not self.terms:
            raise PolyError("the zero polynomial has no leading monomial")
        key = order.key
        return max(self.terms, key=key)

    def leading_coefficient(self, order: MonomialOrder = DEGLEX):
        return self.terms[self.leading_monomial(order)]

    def monic(self, order: MonomialOrder = DEGLEX) -> "Polynomial":
        if not self.terms:
            return self
        inv = self.ring.field.inv(self.leading_coefficient(order))
        return self * inv

    def sorted_terms(self, order: MonomialOrder = DEGLEX, reverse: bool = True):
        key = order.key
        return sorted(self.terms.items(), key=lambda t: key(t[0]), reverse=reverse)

    # -- evaluation ----------------------------------------------------------

    def eval(self, point: dict):
        """Exact evaluation at a total assignment of the ring's variables."""
        field = self.ring.field
        values = []
        for name in self.ring.variables:
            if name not in point:
                raise PolyError(f"missing assignment for variable {name!r}")
            values.append(field.coerce(point[name]))
        result = field.zero()
        for mono, coeff in self.terms.items():
            term = coeff
            for value, exp in zip(values, mono):
                if exp:
                    term = term * value**exp
            result = result + term
        return result

    def substitute_names(self, target: PolyRing) -> "Polynomial":
        """Reinterpret in another ring containing (at least) the used variables."""
        positions = []
        for name in self.ring.variables:
            positions.append(target._index.get(name))
        out = {}
        zero_mono = [0] * target.nvars
        for mono, coeff in self.terms.items():
            new = list(zero_mono)
            for pos, exp in zip(positions, mono):
                if exp:
                    if pos is None:
                        raise PolyError("variable missing from target ring")
                    new[pos] += exp
            new = tuple(new)
            coeff = target.field.coerce(coeff)
            acc = out.get(new)
            acc = coeff if acc is None else acc + coeff
            if acc:
                out[new] = acc
            else:
                out.pop(new, None)
        return Polynomial(target, out)

    # -- text form -------------------------------------------------------------

    def to_str(self, order: MonomialOrder = DEGLEX) -> str:
        if not self.terms:
            return "0"
        field = self.ring.field
        names = self.ring.variables
        chunks = []
        for mono, coeff in self.sorted_terms(order):
            sign, body = _format_coefficient(field, coeff)
            factors = [
                name if e == 1 else f"{name}^{e}"
                for name, e in zip(names, mono)
                if e
            ]
            if factors:
                text = "*".join(factors)
                if body:
                    text = f"{body}*{text}"
            else:
                text = body if body else "1"
            if not chunks:
                chunks.append(text if sign > 0 else f"-{text}")
            else:
                chunks.append(f"+ {text}" if sign > 0 else f"- {text}")
        return " ".join(chunks)

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"Polynomial({self.to_str()})"


def _format_coefficient(field, coeff):
    """Return (sign, body) where body omits a bare 1 and parenthesizes
    cyclotomic coefficients that are genuine sums."""
    if isinstance(coeff, Cyclotomic):
        nonzero = [(k, c) for k, c in enumerate(coeff.coeffs) if c != 0]
        if len(nonzero) == 1:
            k, c = nonzero[0]
            sign = 1 if c > 0 else -1
            c = abs(c)
            if k == 0:
                return sign, "" if c == 1 else _frac_str(c)
            gen = "zeta" if k == 1 else f"zeta^{k}"
            return sign, gen if c == 1 else f"{_frac_str(c)}*{gen}"
        return 1, f"({coeff})"
    sign = 1 if coeff > 0 else -1
    c = abs(coeff)
    return sign, "" if c == 1 else _frac_str(c)


def _frac_str(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


# -- parser ------------------------------------------------------------------


_NAME_CHARS = set("abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789_,")


def _tokenize_poly(text):
    tokens = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch in "+-*/^()":
            tokens.append(ch)
            i += 1
        elif ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            tokens.append(("int", text[i:j]))
            i = j
        elif ch.isalpha() or ch == "_":
            j = i
            while j < len(text) and text[j] in _NAME_CHARS:
                j += 1
            name = text[i:j].rstrip(",")
            tokens.append(("name", name))
            i = i + len(name)
        else:
            raise PolyError(f"unexpected character {ch!r} in polynomial text")
    return tokens


class _PolyParser:
    def __init__(self, ring: PolyRing, tokens):
        self.ring = ring
        self.tokens = tokens
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self):
        tok = self.peek()
        self.pos += 1
        return tok

    def parse(self) -> Polynomial:
        poly = self.parse_sum()
        if self.peek() is not None:
            raise PolyError(f"trailing tokens in polynomial text: {self.peek()!r}")
        return poly

    def parse_sum(self) -> Polynomial:
        sign = 1
        while self.peek() in ("+", "-"):
            if self.take() == "-":
                sign = -sign
        result = self.parse_product() * sign
        while self.peek() in ("+", "-"):
            sign = 1
            while self.peek() in ("+", "-"):
                if self.take() == "-":
                    sign = -sign
            result = result + self.parse_product() * sign
        return result

    def parse_product(self) -> Polynomial:
        result = self.parse_power()
        while True:
            tok = self.peek()
            if tok == "*":
                self.take()
                result = result * self.parse_power()
            elif tok == "/":
                self.take()
                divisor = self.parse_power()
                if not divisor.is_constant():
                    raise PolyError("division by a non-constant polynomial")
                value = divisor.terms.get((0,) * self.ring.nvars)
                if value is None:
                    raise PolyError("division by zero in polynomial text")
                result = result * self.ring.field.inv(value)
            elif isinstance(tok, tuple) or tok == "(":
                # implicit product, e.g. "2a" is not in the grammar; require '*'
                raise PolyError("missing '*' between factors")
            else:
                break
        return result

    def parse_power(self) -> Polynomial:
        base = self.parse_atom()
        if self.peek() == "^":
            self.take()
            tok = self.take()
            sign = 1
            if tok == "-":
                sign = -1
                tok = self.take()
            if not (isinstance(tok, tuple) and tok[0] == "int"):
                raise PolyError("exponent must be an integer")
            exp = sign * int(tok[1])
            if exp < 0:
                if not base.is_constant():
                    raise PolyError("negative powers only on constants")
                value = base.terms.get((0,) * self.ring.nvars)
                if value is None:
                    raise PolyError("zero to a negative power")
                return self.ring.constant(self.ring.field.inv(value)) ** (-exp)
            return base**exp
        return base

    def parse_atom(self) -> Polynomial:
        tok = self.take()
        if tok == "(":
            inner = self.parse_sum()
            if self.take() != ")":
                raise PolyError("unbalanced parentheses in polynomial text")
            return inner
        if isinstance(tok, tuple):
            kind, value = tok
            if kind == "int":
                return self.ring.constant(Fraction(int(value)))
            if value == "zeta":
                try:
                    return self.ring.constant(self.ring.field.zeta())
                except ExactNumError as exc:
                    raise PolyError(str(exc)) from exc
            if value in self.ring._index:
                return self.ring.var(value)
            raise PolyError(f"unknown variable {value!r}")
        raise PolyError(f"unexpected token {tok!r} in polynomial text")


def _parse_polynomial(ring: PolyRing, text: str) -> Polynomial:
    tokens = _tokenize_poly(text)
    if not tokens:
        raise PolyError("empty polynomial text")
    if tokens == [("int", "0")]:
        return ring.zero()
    return _PolyParser(ring, tokens).parse()
