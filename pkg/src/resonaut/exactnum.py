"""Exact coefficient arithmetic: rationals and the cyclotomic field Q(zeta_n).

All computations in this package are exact.  Rational numbers are plain
``fractions.Fraction`` (already canonical: reduced, positive denominator).
Elements of Q(zeta_n), for prime n, are stored on the Q-basis
1, zeta, ..., zeta^(n-2); the reduction rule is

    zeta^(n-1) = -(1 + zeta + ... + zeta^(n-2)),

which is valid because 1 + zeta + ... + zeta^(n-1) = 0 is the minimal
polynomial of a primitive n-th root of unity when n is prime.  No floating
point approximation of zeta is ever introduced.
"""

from __future__ import annotations

from fractions import Fraction


class ExactNumError(ValueError):
    """Structural error in exact-number construction or arithmetic."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def parse_rational(text: str) -> Fraction:
    """Parse "p/q" or "p" into a Fraction."""
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ExactNumError(f"invalid rational literal {text!r}") from exc


def format_rational(q: Fraction) -> str:
    """Canonical text form: "p/q", or "p" when the denominator is 1."""
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


class Cyclotomic:
    """An element of Q(zeta_n) for prime n, with exact arithmetic.

    ``coeffs`` has length n-1 and holds the coordinates on the basis
    1, zeta, ..., zeta^(n-2).  For n = 2 the single coordinate is the
    rational value itself (zeta = -1).
    """

    __slots__ = ("order", "coeffs")

    def __init__(self, order: int, coeffs) -> None:
        if not is_prime(order):
            raise ExactNumError(f"cyclotomic order {order} is not prime")
        coeffs = tuple(Fraction(c) for c in coeffs)
        if len(coeffs) != order - 1:
            raise ExactNumError(
                f"need {order - 1} coordinates for order {order}, got {len(coeffs)}"
            )
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "coeffs", coeffs)

    def __setattr__(self, name, value):  # immutable
        raise AttributeError("Cyclotomic values are immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, order: int) -> "Cyclotomic":
        return cls(order, (0,) * (order - 1))

    @classmethod
    def one(cls, order: int) -> "Cyclotomic":
        return cls(order, (1,) + (0,) * (order - 2))

    @classmethod
    def from_rational(cls, order: int, value) -> "Cyclotomic":
        return cls(order, (Fraction(value),) + (0,) * (order - 2))

    @classmethod
    def zeta(cls, order: int, power: int = 1) -> "Cyclotomic":
        """zeta^power, reduced to the canonical basis."""
        power %= order
        coeffs = [Fraction(0)] * (order - 1)
        if power == order - 1:
            coeffs = [Fraction(-1)] * (order - 1)
        else:
            coeffs[power] = Fraction(1)
        return cls(order, coeffs)

    # -- predicates --------------------------------------------------------

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise ExactNumError(f"{self} is not rational")
        return self.coeffs[0]

    def __bool__(self) -> bool:
        return not self.is_zero()

    # -- arithmetic --------------------------------------------------------

    def _coerce(self, other) -> "Cyclotomic | None":
        if isinstance(other, Cyclotomic):
            if other.order != self.order:
                raise ExactNumError(
                    f"cyclotomic order mismatch: {self.order} vs {other.order}"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return Cyclotomic.from_rational(self.order, other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return Cyclotomic(
            self.order, tuple(a + b for a, b in zip(self.coeffs, other.coeffs))
        )

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic(self.order, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        n = self.order
        # Convolve, fold exponents mod n, then eliminate zeta^(n-1).
        folded = [Fraction(0)] * n
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                if b == 0:
                    continue
                folded[(i + j) % n] += a * b
        top = folded[n - 1]
        if top != 0:
            return Cyclotomic(n, tuple(c - top for c in folded[: n - 1]))
        return Cyclotomic(n, tuple(folded[: n - 1]))

    __rmul__ = __mul__

    def inverse(self) -> "Cyclotomic":
        """Multiplicative inverse, via the extended Euclidean algorithm in Q[x]
        against 1 + x + ... + x^(n-1)."""
        if self.is_zero():
            raise ExactNumError("division by zero in Q(zeta)")
        if self.is_rational():
            return Cyclotomic.from_rational(self.order, 1 / self.coeffs[0])
        n = self.order
        minimal = [Fraction(1)] * n
        a = list(self.coeffs)
        # Invariant: r0 = u0*a mod minimal, r1 = u1*a mod minimal.
        r0, u0 = minimal, [Fraction(0)]
        r1, u1 = _poly_trim(a), [Fraction(1)]
        while _poly_deg(r1) > 0:
            q, rem = _poly_divmod(r0, r1)
            r0, r1 = r1, rem
            u0, u1 = u1, _poly_sub(u0, _poly_mul(q, u1))
        if not r1:
            raise ExactNumError("inverse does not exist (not coprime to minimal polynomial)")
        scale = 1 / r1[0]
        inv = [c * scale for c in u1]
        _, inv = _poly_divmod(inv, minimal)
        inv += [Fraction(0)] * (n - 1 - len(inv))
        return Cyclotomic(n, tuple(inv[: n - 1]))

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int):
            return NotImplemented
        base = self
        if exponent < 0:
            base = self.inverse()
            exponent = -exponent
        result = Cyclotomic.one(self.order)
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    # -- comparison / hashing ----------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.coeffs[0] == other
        if isinstance(other, Cyclotomic):
            return self.order == other.order and self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        if self.is_rational():
            return hash(self.coeffs[0])
        return hash((self.order, self.coeffs))

    # -- text form -----------------------------------------------------------

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if k == 0:
                body = format_rational(abs(c))
            else:
                gen = "zeta" if k == 1 else f"zeta^{k}"
                body = gen if abs(c) == 1 else f"{format_rational(abs(c))}*{gen}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"Cyclotomic({self.order}, {self})"


def parse_cyclotomic(text: str, order: int) -> Cyclotomic:
    """Parse a linear combination of zeta powers, e.g. "-1 - zeta" or
    "2/3*zeta^2 + 1"."""
    tokens = _tokenize(text)
    pos = 0
    result = Cyclotomic.zero(order)
    sign = 1
    first = True
    while pos < len(tokens):
        tok = tokens[pos]
        if tok in "+-":
            if not first and tokens[pos - 1] in "+-":
                raise ExactNumError(f"malformed cyclotomic literal {text!r}")
            sign = 1 if tok == "+" else -1
            pos += 1
            continue
        term, pos = _parse_cyclo_term(tokens, pos, order)
        result = result + sign * term
        sign = 1
        first = False
    if first:
        raise ExactNumError(f"empty cyclotomic literal {text!r}")
    return result


def _parse_cyclo_term(tokens, pos, order):
    coeff = Fraction(1)
    power = None
    saw_atom = False
    while pos < len(tokens):
        tok = tokens[pos]
        if tok in "+-":
            break
        if tok == "*":
            pos += 1
            continue
        if tok == "zeta":
            if power is not None:
                raise ExactNumError("repeated zeta factor in cyclotomic literal")
            power = 1
            if pos + 2 < len(tokens) and tokens[pos + 1] == "^":
                power = int(tokens[pos + 2])
                pos += 2
            pos += 1
            saw_atom = True
            continue
        # rational literal, possibly "p/q"
        if pos + 2 < len(tokens) and tokens[pos + 1] == "/":
            coeff *= Fraction(int(tok), int(tokens[pos + 2]))
            pos += 3
        else:
            coeff *= Fraction(int(tok))
            pos += 1
        saw_atom = True
    if not saw_atom:
        raise ExactNumError("empty term in cyclotomic literal")
    term = Cyclotomic.from_rational(order, coeff)
    if power is not None:
        term = term * Cyclotomic.zeta(order, power)
    return term, pos


def _tokenize(text):
    tokens = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch in "+-*/^":
            tokens.append(ch)
            i += 1
        elif ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            tokens.append(text[i:j])
            i = j
        elif ch.isalpha():
            j = i
            while j < len(text) and text[j].isalpha():
                j += 1
            word = text[i:j]
            if word != "zeta":
                raise ExactNumError(f"unexpected symbol {word!r} in cyclotomic literal")
            tokens.append(word)
            i = j
        else:
            raise ExactNumError(f"unexpected character {ch!r} in cyclotomic literal")
    return tokens


# -- small dense Q[x] helpers for the extended Euclidean algorithm ---------


def _poly_trim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_deg(p):
    return len(p) - 1


def _poly_sub(a, b):
    out = [Fraction(0)] * max(len(a), len(b))
    for i, c in enumerate(a):
        out[i] += c
    for i, c in enumerate(b):
        out[i] -= c
    return _poly_trim(out)


def _poly_mul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, c in enumerate(a):
        if c == 0:
            continue
        for j, d in enumerate(b):
            out[i + j] += c * d
    return _poly_trim(out)


def _poly_divmod(a, b):
    a = _poly_trim(a)
    b = _poly_trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(0, len(a) - len(b) + 1)
    r = list(a)
    while len(r) >= len(b) and r:
        shift = len(r) - len(b)
        factor = r[-1] / b[-1]
        q[shift] = factor
        for i, c in enumerate(b):
            r[i + shift] -= factor * c
        r = _poly_trim(r)
    return _poly_trim(q), r


class CoefficientField:
    """Tag object for the coefficient field of a polynomial ring.

    Two concrete fields exist: the rationals (elements are Fraction) and
    Q(zeta_n) for prime n (elements are Cyclotomic of that order).
    """

    __slots__ = ("order",)

    def __init__(self, order: int | None = None):
        if order is not None and not is_prime(order):
            raise ExactNumError(f"cyclotomic order {order} is not prime")
        object.__setattr__(self, "order", order)

    def __setattr__(self, name, value):
        raise AttributeError("CoefficientField is immutable")

    @property
    def is_rational(self) -> bool:
        return self.order is None

    def zero(self):
        if self.order is None:
            return Fraction(0)
        return Cyclotomic.zero(self.order)

    def one(self):
        if self.order is None:
            return Fraction(1)
        return Cyclotomic.one(self.order)

    def zeta(self, power: int = 1):
        if self.order is None:
            raise ExactNumError("the rational field has no zeta generator")
        return Cyclotomic.zeta(self.order, power)

    def coerce(self, value):
        if self.order is None:
            if isinstance(value, Cyclotomic):
                return value.rational_value()
            return Fraction(value)
        if isinstance(value, Cyclotomic):
            if value.order != self.order:
                raise ExactNumError(
                    f"cyclotomic order mismatch: {value.order} vs {self.order}"
                )
            return value
        return Cyclotomic.from_rational(self.order, value)

    def inv(self, value):
        value = self.coerce(value)
        if self.order is None:
            if value == 0:
                raise ExactNumError("division by zero in Q")
            return 1 / value
        return value.inverse()

    def format(self, value) -> str:
        if self.order is None:
            return format_rational(value)
        return str(value)

    def parse(self, text: str):
        if self.order is None:
            return parse_rational(text)
        return parse_cyclotomic(text, self.order)

    def __eq__(self, other):
        return isinstance(other, CoefficientField) and self.order == other.order

    def __hash__(self):
        return hash(("CoefficientField", self.order))

    def __repr__(self):
        if self.order is None:
            return "QQ"
        return f"QQ(zeta_{self.order})"


QQ = CoefficientField()


def cyclotomic_field(order: int) -> CoefficientField:
    return CoefficientField(order)
