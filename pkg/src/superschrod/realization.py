"""Vector-field realizations on polynomial superspace.

Polynomials live in one even time variable t, one even space variable x and
a small set of odd variables: (theta, eta) with eta Clifford for the N=1
algebra, (theta, phi, rho) all Grassmann for N=2.  Differential operators
are sums of (superpolynomial coefficient) x (derivative word); odd
derivatives obey the graded Leibniz rule, realised here by differentiating
monomials directly with the Koszul sign of the variables passed over.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .scalars import QI, as_fraction, mul_odd_words, qi_str
from .superalgebra import StructureTable


class SuperSpace:
    """Variable configuration: odd generator order and squares."""

    def __init__(self, odd_generators):
        self.names = tuple(name for name, _ in odd_generators)
        self.order = {name: i for i, (name, _) in enumerate(odd_generators)}
        self.squares = {name: (sq if isinstance(sq, QI) else QI(sq))
                        for name, sq in odd_generators}

    @staticmethod
    def for_kind(kind: str, m) -> "SuperSpace":
        m = as_fraction(m)
        if kind == "ssch1":
            # {eta, eta} = -m, so eta^2 = -m/2
            return SuperSpace([("theta", 0), ("eta", QI(Fraction(-m, 2)))])
        if kind == "ssch2":
            return SuperSpace([("theta", 0), ("phi", 0), ("rho", 0)])
        raise ValueError("unknown realization kind %r" % kind)


class SuperPoly:
    """Sparse polynomial: (t exponent, x exponent, odd word) -> QI."""

    __slots__ = ("space", "terms")

    def __init__(self, space: SuperSpace, terms=None):
        self.space = space
        self.terms = {}
        if terms:
            for mono, coeff in terms.items():
                if coeff:
                    self.terms[mono] = coeff

    def _check(self, other):
        if not isinstance(other, SuperPoly) or other.space is not self.space:
            raise ValueError("superspace mismatch")

    def add_term(self, mono, coeff):
        cur = self.terms.get(mono)
        new = coeff if cur is None else cur + coeff
        if new:
            self.terms[mono] = new
        elif cur is not None:
            del self.terms[mono]

    def __add__(self, other):
        self._check(other)
        out = SuperPoly(self.space, dict(self.terms))
        for mono, c in other.terms.items():
            out.add_term(mono, c)
        return out

    def __sub__(self, other):
        self._check(other)
        out = SuperPoly(self.space, dict(self.terms))
        for mono, c in other.terms.items():
            out.add_term(mono, -c)
        return out

    def __neg__(self):
        return SuperPoly(self.space, {m: -c for m, c in self.terms.items()})

    def scale(self, coeff) -> "SuperPoly":
        coeff = coeff if isinstance(coeff, QI) else QI(coeff)
        if not coeff:
            return SuperPoly(self.space)
        return SuperPoly(self.space,
                         {m: c * coeff for m, c in self.terms.items()})

    def __mul__(self, other):
        self._check(other)
        out = SuperPoly(self.space)
        order, squares = self.space.order, self.space.squares
        for (t1, x1, w1), c1 in self.terms.items():
            for (t2, x2, w2), c2 in other.terms.items():
                sign, word = mul_odd_words(w1, w2, order, squares)
                if sign:
                    out.add_term((t1 + t2, x1 + x2, word), c1 * c2 * sign)
        return out

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return not self.terms
        if not isinstance(other, SuperPoly):
            return NotImplemented
        return self.space is other.space and self.terms == other.terms

    def parity(self):
        parities = {len(w) % 2 for (_, _, w) in self.terms}
        if not parities:
            return 0
        return parities.pop() if len(parities) == 1 else None

    def __str__(self):
        if not self.terms:
            return "0"
        bits = []
        for mono in sorted(self.terms):
            t, x, word = mono
            label = "".join(
                (["t^%d" % t] if t else []) + (["x^%d" % x] if x else [])
                + list(word)
            ) or "1"
            bits.append("(%s)%s" % (qi_str(self.terms[mono]), label))
        return " + ".join(bits)

    __repr__ = __str__


def poly_mono(space, t=0, x=0, word=(), coeff=1) -> SuperPoly:
    coeff = coeff if isinstance(coeff, QI) else QI(coeff)
    return SuperPoly(space, {(t, x, tuple(word)): coeff})


def derive_even(which: str, poly: SuperPoly) -> SuperPoly:
    out = SuperPoly(poly.space)
    for (t, x, w), c in poly.terms.items():
        if which == "t" and t:
            out.add_term((t - 1, x, w), c * QI(t))
        elif which == "x" and x:
            out.add_term((t, x - 1, w), c * QI(x))
    return out


def derive_odd(name: str, poly: SuperPoly) -> SuperPoly:
    """Left derivative: the sign counts the odd variables passed over."""
    out = SuperPoly(poly.space)
    for (t, x, w), c in poly.terms.items():
        if name not in w:
            continue
        pos = w.index(name)
        sign = -1 if pos % 2 else 1
        out.add_term((t, x, w[:pos] + w[pos + 1:]), c * QI(sign))
    return out


@dataclass
class SuperDiffOp:
    """Sum of terms coeff(t,x,odds) * d_t^a d_x^b d_odd...; application is
    derivative word first (rightmost factor first), then coefficient."""

    space: SuperSpace
    terms: list = field(default_factory=list)  # (SuperPoly, dt, dx, odd tuple)

    def apply(self, poly: SuperPoly) -> SuperPoly:
        out = SuperPoly(self.space)
        for coeff, dt, dx, odds in self.terms:
            g = poly
            for od in reversed(odds):
                g = derive_odd(od, g)
                if not g:
                    break
            if not g:
                continue
            for _ in range(dx):
                g = derive_even("x", g)
            for _ in range(dt):
                g = derive_even("t", g)
            if g:
                out = out + coeff * g
        return out

    def parity(self):
        parities = set()
        for coeff, dt, dx, odds in self.terms:
            cp = coeff.parity()
            if cp is None:
                return None
            parities.add((cp + len(odds)) % 2)
        if not parities:
            return 0
        return parities.pop() if len(parities) == 1 else None

    def max_degree_raise(self) -> int:
        """Largest possible total-degree increase over all terms."""
        best = None
        for coeff, dt, dx, odds in self.terms:
            drop = dt + dx + len(odds)
            for (t, x, w) in coeff.terms:
                raise_by = t + x + len(w) - drop
                best = raise_by if best is None else max(best, raise_by)
        return 0 if best is None else best

    def __add__(self, other):
        if other.space is not self.space:
            raise ValueError("superspace mismatch")
        return SuperDiffOp(self.space, self.terms + other.terms)


def _op(space, *terms) -> SuperDiffOp:
    packed = []
    for coeff, dt, dx, odds in terms:
        if coeff:
            packed.append((coeff, dt, dx, tuple(odds)))
    return SuperDiffOp(space, packed)


def build_realization(kind: str, d, m):
    """Operator table for the generators, on the kind's superspace."""
    d, m = as_fraction(d), as_fraction(m)
    space = SuperSpace.for_kind(kind, m)
    one = poly_mono(space)
    t = poly_mono(space, t=1)
    x = poly_mono(space, x=1)

    if kind == "ssch1":
        theta = poly_mono(space, word=("theta",))
        eta = poly_mono(space, word=("eta",))
        tt = poly_mono(space, t=2)
        tx = poly_mono(space, t=1, x=1)
        ops = {
            "H": _op(space, (one, 1, 0, ())),
            "P": _op(space, (one, 0, 1, ())),
            "M": _op(space, (one.scale(QI(m)), 0, 0, ())),
            "D": _op(space, (t.scale(2), 1, 0, ()), (x, 0, 1, ()),
                     (theta, 0, 0, ("theta",)), (one.scale(QI(-d)), 0, 0, ())),
            "G": _op(space, (t, 0, 1, ()), (x.scale(QI(m)), 0, 0, ()),
                     (theta * eta, 0, 0, ())),
            "K": _op(space, (tt, 1, 0, ()), (tx, 0, 1, ()),
                     (t * theta, 0, 0, ("theta",)),
                     (poly_mono(space, x=2, coeff=Fraction(m, 2)), 0, 0, ()),
                     (x * theta * eta, 0, 0, ()),
                     (t.scale(QI(-d)), 0, 0, ())),
            "Q": _op(space, (-theta, 1, 0, ()), (one, 0, 0, ("theta",))),
            "S": _op(space, (-(theta * t), 1, 0, ()), (-(theta * x), 0, 1, ()),
                     (t, 0, 0, ("theta",)), (x * eta, 0, 0, ()),
                     (theta.scale(QI(d)), 0, 0, ())),
            "X": _op(space, (-theta, 0, 1, ()), (eta, 0, 0, ())),
        }
        return ops

    if kind == "ssch2":
        theta = poly_mono(space, word=("theta",))
        phi = poly_mono(space, word=("phi",))
        rho = poly_mono(space, word=("rho",))
        tt = poly_mono(space, t=2)
        tx = poly_mono(space, t=1, x=1)
        ops = {
            "H": _op(space, (one, 1, 0, ())),
            "P": _op(space, (one, 0, 1, ())),
            "M": _op(space, (one.scale(QI(m)), 0, 0, ())),
            "D": _op(space, (t.scale(2), 1, 0, ()), (x, 0, 1, ()),
                     (theta, 0, 0, ("theta",)), (phi, 0, 0, ("phi",)),
                     (one.scale(QI(-d)), 0, 0, ())),
            "R": _op(space, (-theta, 0, 0, ("theta",)),
                     (phi, 0, 0, ("phi",)), (rho, 0, 0, ("rho",))),
            "G": _op(space, (t, 0, 1, ()),
                     (x.scale(QI(m)) - (theta * rho).scale(QI(m)), 0, 0, ()),
                     (phi, 0, 0, ("rho",))),
            "K": _op(space, (tt, 1, 0, ()), (tx, 0, 1, ()),
                     (t * theta, 0, 0, ("theta",)), (t * phi, 0, 0, ("phi",)),
                     (theta * phi * rho, 0, 0, ("rho",)),
                     (-(x * theta * rho).scale(QI(m)), 0, 0, ()),
                     (poly_mono(space, x=2, coeff=Fraction(m, 2)), 0, 0, ()),
                     (x * phi, 0, 0, ("rho",)),
                     (t.scale(QI(-d)), 0, 0, ())),
            "Q+": _op(space, (-phi, 1, 0, ()), (one, 0, 0, ("theta",))),
            "Q-": _op(space, (-theta, 1, 0, ()), (one, 0, 0, ("phi",))),
            "S+": _op(space, (-(phi * t), 1, 0, ()), (-(phi * x), 0, 1, ()),
                      (-(phi * theta), 0, 0, ("theta",)),
                      (phi * rho, 0, 0, ("rho",)),
                      (t, 0, 0, ("theta",)),
                      (-(x * rho).scale(QI(m)), 0, 0, ()),
                      (phi.scale(QI(d)), 0, 0, ())),
            "S-": _op(space, (-(theta * t), 1, 0, ()), (-(theta * x), 0, 1, ()),
                      (-(theta * phi), 0, 0, ("phi",)),
                      (-(theta * rho), 0, 0, ("rho",)),
                      (t, 0, 0, ("phi",)), (x, 0, 0, ("rho",)),
                      (theta.scale(QI(d)), 0, 0, ())),
            "X+": _op(space, (-phi, 0, 1, ()), (-rho.scale(QI(m)), 0, 0, ())),
            "X-": _op(space, (-theta, 0, 1, ()), (one, 0, 0, ("rho",))),
        }
        return ops

    raise ValueError("unknown realization kind %r" % kind)


def enumerate_polyspace(space: SuperSpace, max_degree: int):
    """All monomials t^a x^b (odd subset) of total degree <= max_degree."""
    subsets = [()]
    for name in space.names:
        subsets = subsets + [s + (name,) for s in subsets]
    out = []
    for word in subsets:
        for a in range(max_degree - len(word) + 1):
            for b in range(max_degree - len(word) - a + 1):
                out.append((a, b, word))
    out.sort()
    return out


@dataclass
class RealizationReport:
    kind: str
    d: Fraction
    m: Fraction
    max_degree: int
    certified_degree: int
    failures: list = field(default_factory=list)
    parity_ok: bool = True
    degree_raise: int = 0

    @property
    def ok(self) -> bool:
        return not self.failures and self.parity_ok


def verify_relations(realization, table: StructureTable, max_degree: int,
                     max_failures=10, d=None, m=None) -> RealizationReport:
    """Check every defining bracket as an operator identity on all
    superspace monomials of total degree <= max_degree.

    Operator application here is exact (no truncation), so agreement on the
    degree <= N monomial basis certifies each identity on every polynomial
    of degree <= N.
    """
    space = next(iter(realization.values())).space
    monos = enumerate_polyspace(space, max_degree)
    polys = [poly_mono(space, t=a, x=b, word=w) for (a, b, w) in monos]
    report = RealizationReport(table.kind,
                               Fraction(0) if d is None else Fraction(d),
                               Fraction(0) if m is None else Fraction(m),
                               max_degree, max_degree)
    raise_by = 0
    for gen, op in realization.items():
        expected = table.parity(gen)
        if op.parity() != expected:
            report.parity_ok = False
            report.failures.append((gen, gen, None, "parity mismatch"))
        raise_by = max(raise_by, op.max_degree_raise())
    report.degree_raise = raise_by
    names = list(table.names)
    applied = {}
    for gen in names:
        op = realization[gen]
        applied[gen] = [op.apply(f) for f in polys]
    for i, xg in enumerate(names):
        px = table.parity(xg)
        for yg in names[i:]:
            py = table.parity(yg)
            sign = -1 if (px and py) else 1
            bracket = table.bracket_gens(xg, yg)
            opx, opy = realization[xg], realization[yg]
            for idx, f in enumerate(polys):
                lhs = opx.apply(applied[yg][idx])
                swapped = opy.apply(applied[xg][idx])
                residual = lhs - swapped.scale(QI(sign))
                for h, c in bracket.items():
                    residual = residual - applied[h][idx].scale(c)
                if residual:
                    report.failures.append(
                        (xg, yg, monos[idx], str(residual)))
                    if len(report.failures) >= max_failures:
                        return report
    return report


# ---------------------------------------------------------------------------
# chi and eta from a single Grassmann variable


def chi_eta_ops(m):
    """Unscaled operator pair: chi = s(phi + d/dphi), eta = s(phi - d/dphi)
    with the formal even scale s satisfying s^2 = m/2.

    Returns (chi_raw, eta_raw, scale_square); every identity of interest is
    polynomial in s^2, so the raw operators together with scale_square carry
    the full content.
    """
    m = as_fraction(m)
    space = SuperSpace([("phi", 0)])
    phi = poly_mono(space, word=("phi",))
    raw_chi = _op(space, (phi, 0, 0, ()), (poly_mono(space), 0, 0, ("phi",)))
    raw_eta = _op(space, (phi, 0, 0, ()),
                  (poly_mono(space, coeff=-1), 0, 0, ("phi",)))
    return raw_chi, raw_eta, Fraction(m, 2)


def verify_chi_eta(m) -> dict:
    """Exact operator identities chi^2 = m/2, eta^2 = -m/2, {chi,eta} = 0.

    The phi-polynomial space is 2-dimensional, so checking the basis {1, phi}
    establishes the identities exactly.
    """
    raw_chi, raw_eta, s2 = chi_eta_ops(m)
    space = raw_chi.space
    basis = [poly_mono(space), poly_mono(space, word=("phi",))]
    results = {"chi_square": True, "eta_square": True, "anticommutator": True}
    for f in basis:
        chi2 = raw_chi.apply(raw_chi.apply(f)).scale(QI(s2))
        if chi2 != f.scale(QI(Fraction(m, 2))):
            results["chi_square"] = False
        eta2 = raw_eta.apply(raw_eta.apply(f)).scale(QI(s2))
        if eta2 != f.scale(QI(Fraction(-m, 2))):
            results["eta_square"] = False
        anti = raw_chi.apply(raw_eta.apply(f)) + raw_eta.apply(raw_chi.apply(f))
        if anti:
            results["anticommutator"] = False
    results["scale_square"] = s2
    return results
