"""Factor modules, the irreducibility classification, and the bilinear form.

A factor module is the base module together with rewriting rules extracted
from singular vectors: each rule orients its vector so the leading monomial
(largest in the k-then-fermion-count order) rewrites to strictly smaller
monomials.  Reduction of a monomial divisible by a rule's lead applies the
appropriate raising prefix to the rule vector, so submodule membership is
decided by confluent rewriting instead of per-weight linear algebra.  New
rules appear during completion only when an odd raising generator collapses
a lead into a new shape (S S -> -K and friends).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional

from .scalars import QI, QI_ONE, qi_str
from .singular import (ANNIHILATORS, WeightCoords, determinant,
                       find_singular, closed_form_n1, closed_form_n2)
from .superalgebra import build_adjoint, verify_adjoint
from .verma import LowestWeight, ModuleVector, VermaModule

_COMPLETION_CAP = 60


def _divides(lead, mono) -> bool:
    return all(l <= m for l, m in zip(lead, mono))


class FactorModule:
    """Quotient of a Verma module by the submodule a set of singular
    vectors generates."""

    def __init__(self, base: VermaModule, rule_vectors, chain=None,
                 verify_singular=True):
        self.base = base
        self.kind = base.kind
        self.lw = base.lw
        self.chain = list(chain or [])
        self.rules = []  # list of (lead monomial, monic ModuleVector)
        for vec in rule_vectors:
            self._install(vec, verify=verify_singular)

    # -- rule machinery ------------------------------------------------------

    def _install(self, vec: ModuleVector, verify=True):
        if verify:
            residuals = [ann for ann in ANNIHILATORS[self.kind]
                         if self.reduce(self.base.act(ann, vec))]
            if residuals:
                raise ValueError(
                    "quotient generator is not singular (fails %s)" % residuals)
        queue = [self.reduce(vec)]
        steps = 0
        while queue:
            steps += 1
            if steps > _COMPLETION_CAP:
                raise RuntimeError("rule completion did not stabilise")
            f = self.reduce(queue.pop(0))
            if not f:
                continue
            f = self._monic(f)
            self.rules.append((f.leading_monomial(), f))
            for gen in self.base.plus_set:
                queue.append(self.base.act(gen, f))

    def _monic(self, vec: ModuleVector) -> ModuleVector:
        lead = vec.leading_monomial()
        coeff = vec.terms[lead]
        try:
            return vec.scale(coeff.inverse())
        except ValueError as exc:
            raise ValueError("rule with non-invertible leading coefficient "
                             "%s at %s" % (coeff, lead)) from exc

    def _prefix_apply(self, delta, vec: ModuleVector) -> ModuleVector:
        """Apply the raising word with exponent vector ``delta``."""
        if self.kind == "ssch1":
            order = (("S", delta[2]), ("K", delta[1]), ("G", delta[0]))
        else:
            order = (("X+", delta[4]), ("S-", delta[3]), ("S+", delta[2]),
                     ("K", delta[1]), ("G", delta[0]))
        for gen, count in order:
            for _ in range(count):
                vec = self.base.act(gen, vec)
        return vec

    def reduce(self, vec: ModuleVector) -> ModuleVector:
        """Confluent reduction to the quotient's canonical representatives."""
        if not self.rules:
            return vec
        vec = vec.copy()
        while True:
            target = None
            for mono in sorted(vec.terms, key=self.base.order_key, reverse=True):
                for lead, rule_vec in self.rules:
                    if _divides(lead, mono):
                        target = (mono, lead, rule_vec)
                        break
                if target:
                    break
            if target is None:
                return vec
            mono, lead, rule_vec = target
            delta = tuple(m - l for m, l in zip(mono, lead))
            shifted = self._prefix_apply(delta, rule_vec)
            s_lead = shifted.leading_monomial()
            if s_lead != mono:
                raise RuntimeError(
                    "reduction order violated: expected lead %s, got %s"
                    % (mono, s_lead))
            factor = vec.terms[mono] * shifted.terms[mono].inverse()
            vec = vec - shifted.scale(factor)

    # -- module protocol (mirrors VermaModule where it matters) ---------------

    @property
    def uses_chi(self) -> bool:
        return self.base.uses_chi

    def subspace_basis(self, weight, cutoff=None):
        return [mono for mono in self.base.subspace_basis(weight, cutoff)
                if not any(_divides(lead, mono) for lead, _ in self.rules)]

    def enumerate_weights(self, max_degree: int):
        out = []
        for weight in self.base.enumerate_weights(max_degree):
            if self.subspace_basis(weight):
                out.append(weight)
        return out

    def act(self, gen, target) -> ModuleVector:
        if isinstance(target, tuple):
            target = self.base.basis_vector(target)
        return self.reduce(self.base.act(gen, target))

    def weight(self, mono):
        return self.base.weight(mono)

    def vacuum_vector(self) -> ModuleVector:
        return self.base.vacuum_vector()

    def closure_failures(self, max_degree: int, max_report=5):
        monos = [m for m in self.base.enumerate_monomials(max_degree)
                 if not any(_divides(lead, m) for lead, _ in self.rules)]
        names = self.base.table.names
        failures = []
        cache = {(g, m): self.act(g, m) for g in names for m in monos}
        for i, x in enumerate(names):
            px = self.base.table.parity(x)
            for y in names[i:]:
                sign = -1 if (px and self.base.table.parity(y)) else 1
                bracket = self.base.table.bracket_gens(x, y)
                for mono in monos:
                    lhs = self.act(x, cache[(y, mono)]) \
                        - self.act(y, cache[(x, mono)]).scale(QI(sign))
                    rhs = ModuleVector(self.base)
                    for h, c in bracket.items():
                        for mn, coeff in cache[(h, mono)].terms.items():
                            rhs.add_term(mn, coeff * c)
                    if lhs != rhs:
                        failures.append((x, y, mono))
                        if len(failures) >= max_report:
                            return failures
        return failures

    # -- dimensions -----------------------------------------------------------

    def _caps(self):
        """Pure-G^j / pure-K^j rule leads bound the even exponents; the
        survivor set is downward closed, so it is finite iff both exist."""
        k_cap = l_cap = None
        zeros = (0,) * (self.base.n_exponents - 1)
        for lead, _ in self.rules:
            if lead[1:] == zeros and (k_cap is None or lead[0] < k_cap):
                k_cap = lead[0]
            if (lead[0],) + lead[2:] == zeros and \
                    (l_cap is None or lead[1] < l_cap):
                l_cap = lead[1]
        return k_cap, l_cap

    def dimension(self) -> Optional[int]:
        """Total dimension (None when infinite)."""
        k_cap, l_cap = self._caps()
        if k_cap is None or l_cap is None:
            return None
        count = 0
        odd_ranges = [(0, 1)] * (self.base.n_exponents - 2)
        def tails(slots):
            if not slots:
                yield ()
                return
            for head in slots[0]:
                for rest in tails(slots[1:]):
                    yield (head,) + rest
        for k in range(k_cap + 1):
            for l in range(l_cap + 1):
                for tail in tails(odd_ranges):
                    mono = (k, l) + tail
                    if not any(_divides(lead, mono) for lead, _ in self.rules):
                        count += 1
        return count

    def all_basis_monomials(self):
        """Every surviving monomial (finite quotients only)."""
        k_cap, l_cap = self._caps()
        if k_cap is None or l_cap is None:
            raise ValueError("module is infinite dimensional")
        out = []
        for mono in self.base.enumerate_monomials(k_cap + 2 * l_cap + 4):
            if mono[0] <= k_cap and mono[1] <= l_cap and \
                    not any(_divides(lead, mono) for lead, _ in self.rules):
                out.append(mono)
        return out


def quotient_by_singular(space, vec: ModuleVector, label: str) -> FactorModule:
    """Quotient a Verma module or an existing factor by one singular vector."""
    if isinstance(space, VermaModule):
        return FactorModule(space, [vec], chain=[label])
    fm = FactorModule(space.base, [], chain=space.chain + [label],
                      verify_singular=False)
    fm.rules = list(space.rules)
    fm._install(vec, verify=True)
    return fm


def find_singular_in_factor(fm: FactorModule, max_degree: int):
    return find_singular(fm, max_degree, match_closed_forms=False)


# ---------------------------------------------------------------------------
# classification


@dataclass
class ClassificationRecord:
    kind: str
    d: Fraction
    m: Fraction
    r: Optional[Fraction]
    verdict: str
    dimension: Optional[int]          # None = infinite
    chain: List[str] = field(default_factory=list)
    cutoff: int = 0
    no_singular_up_to: Optional[int] = None
    terminal: object = field(default=None, repr=False, compare=False)

    def to_json_dict(self) -> dict:
        return {
            "algebra": self.kind,
            "d": str(self.d),
            "m": str(self.m),
            "r": None if self.r is None else str(self.r),
            "verdict": self.verdict,
            "dimension": "infinite" if self.dimension is None else self.dimension,
            "chain": list(self.chain),
            "cutoff": self.cutoff,
            "no_singular_up_to": self.no_singular_up_to,
        }

    @staticmethod
    def from_json_dict(data) -> "ClassificationRecord":
        dim = data["dimension"]
        r = data.get("r")
        return ClassificationRecord(
            kind=data["algebra"], d=Fraction(data["d"]), m=Fraction(data["m"]),
            r=None if r is None else Fraction(r), verdict=data["verdict"],
            dimension=None if dim == "infinite" else dim,
            chain=list(data["chain"]), cutoff=data["cutoff"],
            no_singular_up_to=data["no_singular_up_to"],
        )

    def __eq__(self, other):
        if not isinstance(other, ClassificationRecord):
            return NotImplemented
        return self.to_json_dict() == other.to_json_dict()


def _integer_ge(value, bound) -> Optional[int]:
    value = Fraction(value)
    if value.denominator == 1 and value >= bound:
        return int(value)
    return None


def classify(lw: LowestWeight, cutoff: int = 8, certify: bool = False,
             module: VermaModule = None) -> ClassificationRecord:
    """Follow the quotient chain to the terminal irreducible module."""
    module = module or VermaModule(lw)
    record = ClassificationRecord(lw.kind, lw.d, lw.m, lw.r, "", None,
                                  cutoff=cutoff)
    terminal = module
    if lw.kind == "ssch1":
        if lw.m:
            p = _integer_ge(lw.d + Fraction(1, 2), 0)
            if p is None:
                record.verdict, record.chain = "V^d", ["V^d"]
            else:
                fm = quotient_by_singular(module, closed_form_n1(module, p),
                                          "I^d")
                record.verdict = "V^d/I^d"
                record.chain = ["V^d", "I^d = <(G^2-2mK)^%d (G-2chi S) v0>" % p,
                                "V^d/I^d"]
                terminal = fm
        else:
            fm1 = quotient_by_singular(module, closed_form_n1(module, 1), "I^1")
            p = _integer_ge(lw.d, 0)
            if p is None:
                record.verdict = "V^d/I^1"
                record.chain = ["V^d", "I^1 = <G v0>", "V^d/I^1"]
                terminal = fm1
            else:
                omega_p = fm1.base.basis_vector((0, p, 1))
                fm2 = quotient_by_singular(fm1, omega_p, "I^p")
                record.verdict = "(V^p/I^1)/I^p"
                record.chain = ["V^d", "I^1 = <G v0>", "V^d/I^1",
                                "I^p = <K^%d S w0>" % p, "(V^p/I^1)/I^p"]
                terminal = fm2
    else:
        if lw.m:
            p = _integer_ge(lw.d - Fraction(1, 2), 0)
            if p is None:
                record.verdict, record.chain = "V^{d,r}", ["V^{d,r}"]
            else:
                fm = quotient_by_singular(module, closed_form_n2(module, p),
                                          "I^{d,r}")
                record.verdict = "V^{d,r}/I^{d,r}"
                record.chain = ["V^{d,r}", "I^{d,r} = <(G^2-2mK)^%d u0>" % p,
                                "V^{d,r}/I^{d,r}"]
                terminal = fm
        else:
            fm = quotient_by_singular(module,
                                      module.basis_vector((0, 0, 0, 0, 1)),
                                      "I^0")
            fm = quotient_by_singular(fm,
                                      module.basis_vector((1, 0, 0, 0, 0)),
                                      "II^1")
            record.chain = ["V^{d,r}", "I^0 = <X+ v0>", "V^{d,r}/I^0",
                            "II^1 = <G w0>", "L^{d,r}"]
            d, r = lw.d, lw.r
            if r == -d or r == d:
                sign = "+" if r == -d else "-"
                mono = (0, 0, 1, 0, 0) if sign == "+" else (0, 0, 0, 1, 0)
                fm = quotient_by_singular(fm, module.basis_vector(mono),
                                          "<S%s z0>" % sign)
                record.chain += ["<S%s z0>" % sign, "L%s^d" % sign]
                ell = _integer_ge(d, 0)
                if ell is None:
                    record.verdict = "L%s^d" % sign
                else:
                    other = (0, ell, 0, 1, 0) if sign == "+" else \
                        (0, ell, 1, 0, 0)
                    fm = quotient_by_singular(fm, module.basis_vector(other),
                                              "II^l")
                    record.verdict = "L%s^l/II^l" % sign
                    record.chain += ["II^l = <K^%d S%s |0>>" % (ell,
                                     "-" if sign == "+" else "+"),
                                     record.verdict]
            else:
                p = _integer_ge(d, 1)
                if p is None:
                    record.verdict = "L^{d,r}"
                else:
                    zvec = ModuleVector(module, {
                        (0, p - 1, 1, 1, 0): module.ring.one,
                        (0, p, 0, 0, 0): module.coerce_scalar((d - r) / d),
                    })
                    fm = quotient_by_singular(fm, zvec, "<z_s^{p-1}>")
                    record.verdict = "L^{p,r}"
                    record.chain += ["<z_s^%d>" % (p - 1), "L^{p,r}"]
            terminal = fm
    if isinstance(terminal, FactorModule):
        record.dimension = terminal.dimension()
    else:
        record.dimension = None
    if certify:
        depth = cutoff
        if record.dimension is not None:
            k_cap, l_cap = terminal._caps()
            depth = max(cutoff, k_cap + 2 * l_cap + 4)
        reports = find_singular(terminal, depth, match_closed_forms=False) \
            if isinstance(terminal, VermaModule) else \
            find_singular_in_factor(terminal, depth)
        record.no_singular_up_to = depth if not reports else -1
    record.terminal = terminal
    return record


# ---------------------------------------------------------------------------
# the plus/minus isomorphism for the massless N=2 chain


_RHO_SWAP = {"Q+": "Q-", "Q-": "Q+", "S+": "S-", "S-": "S+",
             "X+": "X-", "X-": "X+"}


def rho_relabel(gen: str):
    """The +/- swapping automorphism: A+- -> A-+, R -> -R, rest fixed."""
    if gen in _RHO_SWAP:
        return _RHO_SWAP[gen], 1
    if gen == "R":
        return "R", -1
    return gen, 1


def build_pm_pair(d, cutoff=8):
    """The massless factor pair (L+^d from r=-d, L-^d from r=+d)."""
    d = Fraction(d)
    rec_plus = classify(LowestWeight("ssch2", d, 0, -d), cutoff=cutoff)
    rec_minus = classify(LowestWeight("ssch2", d, 0, d), cutoff=cutoff)
    return rec_plus.terminal, rec_minus.terminal


def intertwiner_failures(d, max_weight=8):
    """Check that relabelling +<->- carries the L+^d action onto L-^d.

    The map T sends K^l S-^a |0> in L+^d to K^l S+^a |0> in L-^d and must
    satisfy act(g, T v) = T act(rho(g), v) for every generator.
    """
    plus, minus = build_pm_pair(d, cutoff=max_weight)

    def t_map(vec: ModuleVector) -> ModuleVector:
        out = ModuleVector(minus.base)
        for (k, l, a, b, c), coeff in vec.terms.items():
            if a or c:
                raise ValueError("unexpected monomial in L+^d")
            out.add_term((k, l, b, 0, c),
                         minus.base.ring.scalar(coeff.even, coeff.odd))
        return out

    failures = []
    monos = []
    for weight in [(0, 0)] + plus.enumerate_weights(max_weight):
        monos.extend(plus.subspace_basis(weight) if weight != (0, 0)
                     else [plus.base.vacuum])
    for gen in plus.base.table.names:
        image, sign = rho_relabel(gen)
        for mono in monos:
            lhs = minus.act(gen, t_map(plus.base.basis_vector(mono)))
            rhs = t_map(plus.act(image, mono)).scale(QI(sign))
            if lhs != rhs:
                failures.append((gen, mono))
    return failures


# ---------------------------------------------------------------------------
# the bilinear (Shapovalov-style) form


@dataclass
class GramMatrix:
    weight: object
    labels: list           # [(monomial, chi exponent)]
    parities: list         # total parity per label
    matrix: list           # QI entries, even scalar parts
    det: QI
    parity_violations: list = field(default_factory=list)

    @property
    def size(self) -> int:
        return len(self.labels)

    def to_json_dict(self, module) -> dict:
        return {
            "weight": list(self.weight) if isinstance(self.weight, tuple)
            else self.weight,
            "basis": ["%s%s" % ("chi*" if e else "", module.monomial_str(m))
                      for m, e in self.labels],
            "parities": list(self.parities),
            "matrix": [[qi_str(v) for v in row] for row in self.matrix],
            "det": qi_str(self.det),
        }


def _omega1_word(module, label, epsilon, lam):
    """Reversed omega1-image word for a (monomial, chi) label, with sign.

    chi^e G^k K^l ... v0 equals (+-1) (word X^e suffix) v0; omega1 reverses
    the word and maps each letter to a signed single generator, so the
    pairing reduces to applying lowering generators to the right argument.
    """
    mono, e = label
    if module.kind == "ssch1":
        k, l, a = mono
        word = ["X"] * e + ["Q"] * a + ["H"] * l + ["P"] * k
        sign = (-1) ** (a * e + epsilon * k + lam * a + (epsilon + lam) * e)
    else:
        k, l, a, b, c = mono
        if e:
            raise ValueError("N=2 coefficients carry no chi")
        word = ["X-"] * c + ["Q+"] * b + ["Q-"] * a + ["H"] * l + ["P"] * k
        sign = (-1) ** (lam * (a + b) + (epsilon + lam) * c + epsilon * k)
    return word, sign


def gram_pair(module: VermaModule, left_label, right_label, epsilon=0, lam=0):
    """Single pairing value as a GradedScalar (full chi-carrying value)."""
    mono, e = right_label
    coeff = module.ring.one if e == 0 else module.ring.chi
    vec = ModuleVector(module, {mono: coeff})
    word, wsign = _omega1_word(module, left_label, epsilon, lam)
    for gen in reversed(word):
        vec = module.act(gen, vec)
    value = vec.terms.get(module.vacuum, module.ring.zero)
    return value if wsign > 0 else -value


def gram(module: VermaModule, weight, epsilon=0, lam=0,
         check_adjoint=True) -> GramMatrix:
    """Gram matrix of the weight subspace for the omega1-induced pairing.

    The basis doubles chi-dressed monomials (chi v is realised through the
    odd zero-degree generator, so every basis vector is a generator word
    applied to v0).  Entries of mixed total parity vanish in their even
    scalar part; the matrix of even parts is therefore parity-block-diagonal
    and its determinant detects the radical exactly.
    """
    if check_adjoint:
        amap = build_adjoint(module.table, "omega1", epsilon, lam)
        rep = verify_adjoint(module.table, amap)
        if not rep.ok:
            raise ValueError("omega1 failed its anti-automorphism check")
    coords = WeightCoords(module, weight)
    labels = list(coords.labels)

    def parity_of(label):
        mono, e = label
        return (module.monomial_parity(mono) + e) & 1

    labels.sort(key=lambda lab: (parity_of(lab),
                                 [-x for x in module.order_key(lab[0])], lab[1]))
    parities = [parity_of(lab) for lab in labels]
    matrix = []
    violations = []
    right_vecs = {}
    for right in labels:
        mono, e = right
        coeff = module.ring.one if e == 0 else module.ring.chi
        right_vecs[right] = ModuleVector(module, {mono: coeff})
    for left in labels:
        word, wsign = _omega1_word(module, left, epsilon, lam)
        row = []
        pl = parity_of(left)
        for right in labels:
            vec = right_vecs[right]
            for gen in reversed(word):
                vec = module.act(gen, vec)
            value = vec.terms.get(module.vacuum, module.ring.zero)
            if wsign < 0:
                value = -value
            if pl == parity_of(right):
                if value.odd:
                    violations.append((left, right, "chi part on diagonal block"))
            elif value.even:
                violations.append((left, right, "even part across parities"))
            row.append(value.even)
        matrix.append(row)
    det = determinant(matrix) if matrix else QI_ONE
    return GramMatrix(weight, labels, parities, matrix, det,
                      parity_violations=violations)


def reachable_weight(module: VermaModule, source, target) -> bool:
    """Whether target lies in source + (weight monoid of the raising part)."""
    if module.kind == "ssch1":
        return target - source >= 0
    d1 = target[0] - source[0]
    d2 = target[1] - source[1]
    if d1 < 0:
        return False
    for a in (0, 1):
        for b in (0, 1):
            for c in (0, 1):
                if a - b + c == d2 and d1 - a - b >= 0:
                    return True
    return False
