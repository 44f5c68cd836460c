"""Exact coefficient arithmetic.

Three layers, all built on ``fractions.Fraction`` (no floating point anywhere):

* ``QI`` -- Gaussian rationals a + b*i.
* ``ScalarRing`` / ``GradedScalar`` -- the ring Q(i)[chi] with the odd
  generator chi squaring to a fixed even value (mass/2 by default, so that
  the mass eigenvalue equals 2*chi^2).
* ``OddVariableAlgebra`` -- finite algebras on named anticommuting
  generators, each squaring to 0 (Grassmann) or to a prescribed scalar
  (Clifford).
"""

from __future__ import annotations

import re as _re
from fractions import Fraction


def as_fraction(value) -> Fraction:
    """Coerce an int/Fraction to Fraction; floats are rejected."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError("exact rational expected, got %s" % type(value).__name__)


_RATIONAL_RE = _re.compile(r"^[+-]?\d+(/\d+)?$")


def parse_rational(text: str) -> Fraction:
    """Parse "p/q" (q > 0 after reduction); decimals are not accepted."""
    text = text.strip()
    if not _RATIONAL_RE.match(text):
        raise ValueError("malformed rational %r (expected p or p/q)" % text)
    try:
        return Fraction(text)
    except ZeroDivisionError as exc:
        raise ValueError("malformed rational %r (zero denominator)" % text) from exc


_F0 = Fraction(0)
_F1 = Fraction(1)


def _mk_qi(re_part: Fraction, im_part: Fraction) -> "QI":
    q = QI.__new__(QI)
    q.re = re_part
    q.im = im_part
    return q


class QI:
    """Gaussian rational re + im*i with Fraction components."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = as_fraction(re)
        self.im = as_fraction(im)

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        other = _coerce_qi(other)
        if other is None:
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __add__(self, other):
        other = _coerce_qi(other)
        if other is None:
            return NotImplemented
        return _mk_qi(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce_qi(other)
        if other is None:
            return NotImplemented
        return _mk_qi(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        other = _coerce_qi(other)
        if other is None:
            return NotImplemented
        return _mk_qi(other.re - self.re, other.im - self.im)

    def __neg__(self):
        return _mk_qi(-self.re, -self.im)

    def __mul__(self, other):
        other = _coerce_qi(other)
        if other is None:
            return NotImplemented
        if not self.im and not other.im:
            return _mk_qi(self.re * other.re, _F0)
        return _mk_qi(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce_qi(other)
        if other is None:
            return NotImplemented
        if not other:
            raise ZeroDivisionError("division by zero Gaussian rational")
        if not other.im:
            return _mk_qi(self.re / other.re, self.im / other.re)
        norm = other.re * other.re + other.im * other.im
        return _mk_qi(
            (self.re * other.re + self.im * other.im) / norm,
            (self.im * other.re - self.re * other.im) / norm,
        )

    def conj(self) -> "QI":
        return _mk_qi(self.re, -self.im)

    @property
    def is_real(self) -> bool:
        return not self.im

    def __repr__(self):
        return "QI(%s)" % qi_str(self)

    def __str__(self):
        return qi_str(self)

    @staticmethod
    def parse(text: str) -> "QI":
        return parse_qi(text)


def _coerce_qi(value):
    if isinstance(value, QI):
        return value
    if isinstance(value, (int, Fraction)):
        return _mk_qi(as_fraction(value), _F0)
    return None


QI_ZERO = QI(0)
QI_ONE = QI(1)
QI_I = QI(0, 1)


def qi_str(value: QI) -> str:
    """Canonical rendering: "p/q", "r/si", "p/q+r/si" or "p/q-r/si"."""
    if not value.im:
        return str(value.re)
    imag = ("%si" % value.im) if value.im > 0 else ("-%si" % (-value.im))
    if not value.re:
        return imag
    if value.im > 0:
        return "%s+%s" % (value.re, imag)
    return "%s%s" % (value.re, imag)


_QI_RE = _re.compile(
    r"^(?P<re>[+-]?\d+(/\d+)?)?(?P<im>[+-]?\d+(/\d+)?)?i?$"
)


def parse_qi(text: str) -> QI:
    """Parse the Gaussian literal syntax "p/q", "r/si" or "p/q+r/si"."""
    text = text.strip().replace(" ", "")
    if not text:
        raise ValueError("empty Gaussian rational literal")
    if not text.endswith("i"):
        return QI(parse_rational(text))
    body = text[:-1]
    # split "a+bi" / "a-bi" / "bi": scan for the sign introducing the i-part
    for pos in range(len(body) - 1, 0, -1):
        if body[pos] in "+-" and body[pos - 1] not in "+-/":
            re_text, im_text = body[:pos], body[pos:]
            if _RATIONAL_RE.match(re_text) and _RATIONAL_RE.match(im_text):
                return QI(parse_rational(re_text), parse_rational(im_text))
    if body in ("", "+"):
        return QI(0, 1)
    if body == "-":
        return QI(0, -1)
    return QI(0, parse_rational(body))


class ScalarRing:
    """The coefficient ring Q(i)[chi] with chi*chi folded to ``chi_square``.

    ``chi_square`` defaults to mass/2, the unique choice for which the odd
    scalar (anticommuting past odd operators) is compatible with the module
    closure checks.  A mass of 0 makes chi a Grassmann generator.
    """

    __slots__ = ("mass", "chi_square", "zero", "one", "chi")

    def __init__(self, mass, chi_square=None):
        self.mass = as_fraction(mass)
        if chi_square is None:
            chi_square = QI(Fraction(self.mass, 2))
        elif not isinstance(chi_square, QI):
            chi_square = QI(chi_square)
        self.chi_square = chi_square
        self.zero = _mk_gs(self, QI_ZERO, QI_ZERO)
        self.one = _mk_gs(self, QI_ONE, QI_ZERO)
        self.chi = _mk_gs(self, QI_ZERO, QI_ONE)

    def scalar(self, even=0, odd=0) -> "GradedScalar":
        ev = even if isinstance(even, QI) else QI(even)
        od = odd if isinstance(odd, QI) else QI(odd)
        return _mk_gs(self, ev, od)

    def __repr__(self):
        return "ScalarRing(m=%s, chi^2=%s)" % (self.mass, self.chi_square)


def _mk_gs(ring, even, odd):
    g = GradedScalar.__new__(GradedScalar)
    g.ring = ring
    g.even = even
    g.odd = odd
    return g


class GradedScalar:
    """Element even + odd*chi of a ScalarRing.

    The ring product is commutative; the Koszul sign of moving chi past an
    odd operator or basis vector lives in :meth:`twist`, which callers apply
    exactly when an odd operator crosses the coefficient.
    """

    __slots__ = ("ring", "even", "odd")

    def __init__(self, ring, even=0, odd=0):
        self.ring = ring
        self.even = even if isinstance(even, QI) else QI(even)
        self.odd = odd if isinstance(odd, QI) else QI(odd)

    def _check(self, other) -> "GradedScalar":
        if isinstance(other, GradedScalar):
            if other.ring is not self.ring:
                raise ValueError("scalar ring mismatch")
            return other
        q = _coerce_qi(other)
        if q is None:
            raise TypeError("cannot combine GradedScalar with %r" % (other,))
        return _mk_gs(self.ring, q, QI_ZERO)

    def __bool__(self):
        return bool(self.even) or bool(self.odd)

    def __eq__(self, other):
        if not isinstance(other, GradedScalar):
            other = self._check(other)
        return (
            self.ring is other.ring
            and self.even == other.even
            and self.odd == other.odd
        )

    def __hash__(self):
        return hash((id(self.ring), self.even, self.odd))

    def __add__(self, other):
        other = self._check(other)
        return _mk_gs(self.ring, self.even + other.even, self.odd + other.odd)

    def __sub__(self, other):
        other = self._check(other)
        return _mk_gs(self.ring, self.even - other.even, self.odd - other.odd)

    def __neg__(self):
        return _mk_gs(self.ring, -self.even, -self.odd)

    def __mul__(self, other):
        other = self._check(other)
        if not self.odd:
            if not self.even:
                return self.ring.zero
            return _mk_gs(self.ring, self.even * other.even, self.even * other.odd)
        if not other.odd:
            return _mk_gs(self.ring, self.even * other.even, self.odd * other.even)
        even = self.even * other.even + self.odd * other.odd * self.ring.chi_square
        odd = self.even * other.odd + self.odd * other.even
        return _mk_gs(self.ring, even, odd)

    __rmul__ = __mul__

    def twist(self) -> "GradedScalar":
        """Image under the parity involution (negates the chi part)."""
        if not self.odd:
            return self
        return _mk_gs(self.ring, self.even, -self.odd)

    def conj(self) -> "GradedScalar":
        return _mk_gs(self.ring, self.even.conj(), self.odd.conj())

    @property
    def is_even(self) -> bool:
        return not self.odd

    @property
    def is_odd(self) -> bool:
        return not self.even and bool(self.odd)

    def inverse(self) -> "GradedScalar":
        """Multiplicative inverse; raises ValueError when not a unit."""
        norm = self.even * self.even - self.odd * self.odd * self.ring.chi_square
        if not norm:
            raise ValueError("GradedScalar %s is not invertible" % self)
        return _mk_gs(self.ring, self.even / norm, -self.odd / norm)

    def __str__(self):
        return gs_str(self)

    def __repr__(self):
        return "GradedScalar(%s)" % gs_str(self)


def gs_str(value: GradedScalar) -> str:
    if not value.odd:
        return qi_str(value.even)
    chi_part = "(%s)*chi" % qi_str(value.odd)
    if not value.even:
        return chi_part
    return "%s+%s" % (qi_str(value.even), chi_part)


def parse_gs(ring: ScalarRing, text: str) -> GradedScalar:
    text = text.strip().replace(" ", "")
    if "chi" not in text:
        return ring.scalar(parse_qi(text))
    head, _, _ = text.partition("*chi")
    if head.endswith(")") and "(" in head:
        open_pos = head.rindex("(")
        even_text = head[:open_pos].rstrip("+")
        odd_text = head[open_pos + 1 : -1]
    else:
        raise ValueError("malformed graded scalar %r" % text)
    even = parse_qi(even_text) if even_text else QI_ZERO
    return ring.scalar(even, parse_qi(odd_text))


def mul_odd_words(word1, word2, order, squares):
    """Multiply two canonical odd words with Koszul signs.

    ``order`` maps generator name -> rank, ``squares`` maps name -> QI value
    of the generator's square.  Returns ``(coefficient, word)``; a Grassmann
    square gives coefficient 0.
    """
    seq = list(word1) + list(word2)
    coeff = QI_ONE
    changed = True
    while changed:
        changed = False
        i = 0
        while i + 1 < len(seq):
            a, b = seq[i], seq[i + 1]
            if a == b:
                sq = squares[a]
                if not sq:
                    return QI_ZERO, ()
                coeff = coeff * sq
                del seq[i : i + 2]
                changed = True
                i = max(i - 1, 0)
            elif order[a] > order[b]:
                seq[i], seq[i + 1] = b, a
                coeff = -coeff
                changed = True
                i += 1
            else:
                i += 1
    return coeff, tuple(seq)


class OddVariableAlgebra:
    """Finite exterior/Clifford algebra on named odd generators."""

    def __init__(self, generators):
        # generators: iterable of (name, square) with square 0 for Grassmann
        self.names = tuple(name for name, _ in generators)
        self.order = {name: i for i, (name, _) in enumerate(generators)}
        self.squares = {}
        for name, square in generators:
            self.squares[name] = square if isinstance(square, QI) else QI(square)

    def element(self, terms=None) -> "OddElement":
        elem = OddElement(self)
        if terms:
            for word, coeff in terms.items():
                elem._add_term(tuple(word), coeff if isinstance(coeff, QI) else QI(coeff))
        return elem

    def gen(self, name) -> "OddElement":
        if name not in self.order:
            raise ValueError("unknown odd generator %r" % name)
        return self.element({(name,): QI_ONE})

    def one(self) -> "OddElement":
        return self.element({(): QI_ONE})

    def mul_words(self, word1, word2):
        return mul_odd_words(word1, word2, self.order, self.squares)


class OddElement:
    """Linear combination of canonical odd words over one algebra instance."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra):
        self.algebra = algebra
        self.terms = {}

    def _add_term(self, word, coeff):
        if not coeff:
            return
        cur = self.terms.get(word)
        new = coeff if cur is None else cur + coeff
        if new:
            self.terms[word] = new
        elif cur is not None:
            del self.terms[word]

    def _check(self, other):
        if not isinstance(other, OddElement) or other.algebra is not self.algebra:
            raise ValueError("odd algebra instance mismatch")

    def __add__(self, other):
        self._check(other)
        out = OddElement(self.algebra)
        for word, c in self.terms.items():
            out._add_term(word, c)
        for word, c in other.terms.items():
            out._add_term(word, c)
        return out

    def __sub__(self, other):
        self._check(other)
        out = OddElement(self.algebra)
        for word, c in self.terms.items():
            out._add_term(word, c)
        for word, c in other.terms.items():
            out._add_term(word, -c)
        return out

    def __neg__(self):
        out = OddElement(self.algebra)
        for word, c in self.terms.items():
            out.terms[word] = -c
        return out

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, QI)):
            scale = other if isinstance(other, QI) else QI(other)
            out = OddElement(self.algebra)
            for word, c in self.terms.items():
                out._add_term(word, c * scale)
            return out
        self._check(other)
        out = OddElement(self.algebra)
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                sign, word = self.algebra.mul_words(w1, w2)
                if sign:
                    out._add_term(word, c1 * c2 * sign)
        return out

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, QI)):
            return self.__mul__(other)
        return NotImplemented

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return not self.terms
        if not isinstance(other, OddElement):
            return NotImplemented
        return self.algebra is other.algebra and self.terms == other.terms

    def __bool__(self):
        return bool(self.terms)

    def parity(self):
        """0/1 when every word has uniform parity, else None."""
        parities = {len(word) % 2 for word in self.terms}
        if not parities:
            return 0
        if len(parities) == 1:
            return parities.pop()
        return None

    def __str__(self):
        if not self.terms:
            return "0"
        bits = []
        for word in sorted(self.terms, key=lambda w: (len(w), w)):
            coeff = qi_str(self.terms[word])
            label = "*".join(word) if word else "1"
            bits.append("(%s)%s" % (coeff, label))
        return " + ".join(bits)

    __repr__ = __str__
