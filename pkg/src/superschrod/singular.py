"""Exact location of singular vectors.

Each homogeneous weight subspace is searched for the joint kernel of the
lowering generators that annihilate the lowest weight vector (Q, P for the
N=1 module; Q+, Q-, P, X- for N=2).  Coefficients carrying the odd scalar
chi are handled by doubling the linear system: the even and odd components
of every coefficient become separate Gaussian-rational coordinates, and the
kernel is computed by fraction-free Gaussian elimination.  Kernel bases are
then regrouped into generators over the chi-extended ring so that one
reported vector corresponds to one singular line.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional

from .scalars import QI, QI_ONE, QI_ZERO, parse_gs
from .verma import LowestWeight, ModuleVector, VermaModule

ANNIHILATORS = {"ssch1": ("Q", "P"), "ssch2": ("Q+", "Q-", "P", "X-")}


# ---------------------------------------------------------------------------
# fraction-free exact linear algebra over the Gaussian rationals


def _clear_denominators(row):
    lcm = 1
    for entry in row:
        for part in (entry.re, entry.im):
            den = part.denominator
            if den != 1:
                g = _gcd(lcm, den)
                lcm = lcm // g * den
    if lcm == 1:
        return list(row)
    scale = QI(lcm)
    return [entry * scale for entry in row]


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def bareiss_echelon(rows):
    """Fraction-free (Bareiss) forward elimination.

    Returns (echelon rows, pivot column list).  Input rows are copied and
    denominator-cleared so all intermediate entries stay Gaussian integers.
    """
    m = [_clear_denominators(r) for r in rows]
    nrows = len(m)
    ncols = len(m[0]) if m else 0
    pivots = []
    prev = QI_ONE
    r = 0
    for col in range(ncols):
        pivot_row = None
        for i in range(r, nrows):
            if m[i][col]:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        if pivot_row != r:
            m[r], m[pivot_row] = m[pivot_row], m[r]
        pivot = m[r][col]
        for i in range(r + 1, nrows):
            head = m[i][col]
            row_i = m[i]
            row_r = m[r]
            for j in range(col, ncols):
                row_i[j] = (pivot * row_i[j] - head * row_r[j]) / prev
            row_i[col] = QI_ZERO
        pivots.append(col)
        prev = pivot
        r += 1
        if r == nrows:
            break
    return m[:r], pivots


def nullspace(rows, ncols):
    """Deterministic kernel basis of the matrix (list of QI rows)."""
    if not rows:
        return [[QI_ONE if j == i else QI_ZERO for j in range(ncols)]
                for i in range(ncols)]
    ech, pivots = bareiss_echelon(rows)
    pivot_set = set(pivots)
    free_cols = [c for c in range(ncols) if c not in pivot_set]
    basis = []
    for free in free_cols:
        vec = [QI_ZERO] * ncols
        vec[free] = QI_ONE
        for r in range(len(pivots) - 1, -1, -1):
            pc = pivots[r]
            acc = QI_ZERO
            row = ech[r]
            for c in range(pc + 1, ncols):
                if vec[c] and row[c]:
                    acc = acc + row[c] * vec[c]
            if acc:
                vec[pc] = -acc / row[pc]
        basis.append(vec)
    return basis


def rank(rows):
    if not rows:
        return 0
    _, pivots = bareiss_echelon(rows)
    return len(pivots)


def determinant(rows):
    """Bareiss determinant of a square QI matrix (exact)."""
    n = len(rows)
    if n == 0:
        return QI_ONE
    m = [list(r) for r in rows]
    prev = QI_ONE
    sign = 1
    for col in range(n - 1):
        pivot_row = None
        for i in range(col, n):
            if m[i][col]:
                pivot_row = i
                break
        if pivot_row is None:
            return QI_ZERO
        if pivot_row != col:
            m[col], m[pivot_row] = m[pivot_row], m[col]
            sign = -sign
        pivot = m[col][col]
        for i in range(col + 1, n):
            for j in range(col + 1, n):
                m[i][j] = (pivot * m[i][j] - m[i][col] * m[col][j]) / prev
            m[i][col] = QI_ZERO
        prev = pivot
    det = m[n - 1][n - 1]
    return det if sign > 0 else -det


# ---------------------------------------------------------------------------
# coordinates on a weight subspace (chi-part doubling)


class WeightCoords:
    """Gaussian-rational coordinates on one weight subspace.

    When the module's coefficients can carry chi, each monomial contributes
    two coordinates (even part, chi part); otherwise one.
    """

    def __init__(self, space, weight):
        self.space = space
        self.module = _space_module(space)
        self.weight = weight
        self.monos = space.subspace_basis(weight)
        self.doubled = space.uses_chi
        self.slots = (0, 1) if self.doubled else (0,)
        self.labels = [(mono, e) for mono in self.monos for e in self.slots]
        self.index = {lab: i for i, lab in enumerate(self.labels)}
        self.dim = len(self.labels)

    def to_coords(self, vec: ModuleVector):
        out = [QI_ZERO] * self.dim
        for mono, coeff in vec.terms.items():
            idx = self.index.get((mono, 0))
            if idx is None:
                raise ValueError("vector leaves the weight subspace")
            out[idx] = coeff.even
            if self.doubled:
                out[idx + 1] = coeff.odd
            elif coeff.odd:
                raise ValueError("unexpected chi component")
        return out

    def from_coords(self, coords) -> ModuleVector:
        module = self.module
        vec = ModuleVector(module)
        for (mono, e), value in zip(self.labels, coords):
            if not value:
                continue
            coeff = module.ring.scalar(value) if e == 0 else \
                module.ring.scalar(QI_ZERO, value)
            vec.add_term(mono, coeff)
        return vec

    def basis_element(self, label) -> ModuleVector:
        mono, e = label
        module = self.module
        coeff = module.ring.one if e == 0 else module.ring.chi
        return ModuleVector(module, {mono: coeff})

    def chi_multiply_coords(self, coords):
        """Coordinates of chi * vector (only meaningful when doubled)."""
        chi_sq = self.module.ring.chi_square
        out = [QI_ZERO] * self.dim
        for i in range(0, self.dim, 2):
            even, odd = coords[i], coords[i + 1]
            out[i] = odd * chi_sq
            out[i + 1] = even
        return out


@dataclass
class SingularVectorReport:
    kind: str
    d: Fraction
    m: Fraction
    r: Optional[Fraction]
    weight: object
    kernel_dim: int
    qi_dim: int
    vectors: List[ModuleVector]
    matched: str = "none"
    contains: tuple = ()
    proportionality: Optional[str] = None
    cutoff: int = 0
    annihilators_checked: bool = False

    def to_json_dict(self) -> dict:
        weight = list(self.weight) if isinstance(self.weight, tuple) else self.weight
        return {
            "algebra": self.kind,
            "d": str(self.d),
            "m": str(self.m),
            "r": None if self.r is None else str(self.r),
            "weight": weight,
            "kernel_dim": self.kernel_dim,
            "qi_dim": self.qi_dim,
            "vectors": [v.render() for v in self.vectors],
            "matched": self.matched,
            "contains": list(self.contains),
            "proportionality": self.proportionality,
            "cutoff": self.cutoff,
            "annihilators_checked": self.annihilators_checked,
        }

    @staticmethod
    def from_json_dict(data, module=None) -> "SingularVectorReport":
        r = data.get("r")
        lw = LowestWeight(data["algebra"], Fraction(data["d"]), Fraction(data["m"]),
                          None if r is None else Fraction(r))
        if module is None:
            module = VermaModule(lw)
        vectors = []
        for vec in data["vectors"]:
            mv = ModuleVector(module)
            for mono_text, coeff_text in vec.items():
                mv.add_term(module.parse_monomial(mono_text),
                            parse_gs(module.ring, coeff_text))
            vectors.append(mv)
        weight = data["weight"]
        if isinstance(weight, list):
            weight = tuple(weight)
        return SingularVectorReport(
            kind=data["algebra"], d=lw.d, m=lw.m, r=lw.r, weight=weight,
            kernel_dim=data["kernel_dim"], qi_dim=data["qi_dim"],
            vectors=vectors, matched=data["matched"],
            contains=tuple(data["contains"]),
            proportionality=data["proportionality"], cutoff=data["cutoff"],
            annihilators_checked=data["annihilators_checked"],
        )

    def __eq__(self, other):
        if not isinstance(other, SingularVectorReport):
            return NotImplemented
        return self.to_json_dict() == other.to_json_dict()


# ---------------------------------------------------------------------------
# the kernel search


def _space_module(space) -> VermaModule:
    return space if isinstance(space, VermaModule) else space.base


def find_singular(space, max_degree: int, annihilators=None,
                  match_closed_forms=True):
    """Joint annihilator kernels on every weight subspace up to max_degree.

    ``space`` is a VermaModule or a FactorModule (anything exposing the
    subspace/act protocol).  Returns the nonempty-kernel reports.
    """
    module = _space_module(space)
    annihilators = annihilators or ANNIHILATORS[module.kind]
    reports = []
    for weight in space.enumerate_weights(max_degree):
        coords = WeightCoords(space, weight)
        if coords.dim == 0:
            continue
        rows = _annihilator_matrix(space, coords, annihilators)
        kernel = nullspace(rows, coords.dim)
        if not kernel:
            continue
        generators = _ring_generators(coords, kernel)
        vectors = []
        # independent re-check: the Verma matrices are assembled from the
        # closed N=1 table, so re-annihilate through the rewriting engine
        recheck = module.act_engine if isinstance(space, VermaModule) \
            else space.act
        for gen_coords in generators:
            vec = coords.from_coords(gen_coords).normalized()
            for ann in annihilators:
                residual = recheck(ann, vec)
                if residual:
                    raise AssertionError(
                        "kernel vector not annihilated by %s at weight %s"
                        % (ann, weight))
            vectors.append(vec)
        report = SingularVectorReport(
            kind=module.kind, d=module.lw.d, m=module.lw.m, r=module.lw.r,
            weight=weight, kernel_dim=len(generators), qi_dim=len(kernel),
            vectors=vectors, cutoff=max_degree, annihilators_checked=True,
        )
        if match_closed_forms and isinstance(space, VermaModule):
            _match_closed_forms(space, report)
        reports.append(report)
    return reports


def _annihilator_matrix(space, coords, annihilators):
    module = _space_module(space)
    rows_by_target = []
    columns = []
    for label in coords.labels:
        vec = coords.basis_element(label)
        images = []
        for ann in annihilators:
            images.append(space.act(ann, vec))
        columns.append(images)
    rows = []
    for a_idx, ann in enumerate(annihilators):
        target_weight = module.shift_weight(coords.weight, ann)
        target = WeightCoords(space, target_weight)
        if target.dim == 0:
            continue
        block = [[QI_ZERO] * coords.dim for _ in range(target.dim)]
        for col, images in enumerate(columns):
            img = target.to_coords(images[a_idx])
            for row_idx, value in enumerate(img):
                if value:
                    block[row_idx][col] = value
        rows.extend(block)
    return rows


def _ring_generators(coords, kernel):
    """Minimal generating set of the kernel over the chi-extended ring."""
    if not coords.doubled:
        return kernel
    selected = []
    span_rows = []
    for vec in kernel:
        if span_rows and rank(span_rows + [vec]) == rank(span_rows):
            continue
        selected.append(vec)
        span_rows.append(vec)
        span_rows.append(coords.chi_multiply_coords(vec))
    return selected


def in_span(space, weight, vectors, candidate) -> bool:
    """Exact span membership test inside one weight subspace."""
    coords = WeightCoords(space, weight)
    rows = [coords.to_coords(v) for v in vectors]
    extended = rows + [coords.to_coords(candidate)]
    return rank(rows) == rank(extended)


# ---------------------------------------------------------------------------
# closed forms


def closed_form_n1(module: VermaModule, p: int) -> ModuleVector:
    """Massive: (G^2-2mK)^p (G-2chi S) v0 at d = p-1/2; massless: G^p v0."""
    if module.kind != "ssch1":
        raise ValueError("closed_form_n1 needs an ssch1 module")
    lw = module.lw
    if lw.m:
        if p < 0 or lw.d != Fraction(2 * p - 1, 2):
            raise ValueError("massive N=1 closed form needs d = p - 1/2")
        vec = module.act("G", module.vacuum_vector())
        svec = module.act("S", module.vacuum_vector())
        vec = vec - svec.scale(module.chi).scale(2)
        return _apply_quadratic(module, vec, p)
    if p < 1:
        raise ValueError("massless N=1 closed form needs p >= 1")
    return module.basis_vector((p, 0, 0))


def closed_form_n2(module: VermaModule, p: int) -> ModuleVector:
    """Massive: (G^2-2mK)^p u0 at d = p+1/2 with the (d+r+1)/(2d+1) mix;
    massless: G^p X+ v0."""
    if module.kind != "ssch2":
        raise ValueError("closed_form_n2 needs an ssch2 module")
    lw = module.lw
    if not lw.m:
        if p < 0:
            raise ValueError("massless N=2 closed form needs p >= 0")
        return module.basis_vector((p, 0, 0, 0, 1))
    if p < 0 or lw.d != Fraction(2 * p + 1, 2):
        raise ValueError("massive N=2 closed form needs d = p + 1/2")
    gamma = (lw.d + lw.r + 1) / (2 * lw.d + 1)
    u0 = ModuleVector(module, {
        (1, 0, 0, 1, 1): module.ring.one,
        (0, 0, 1, 1, 0): module.coerce_scalar(lw.m),
        (0, 1, 0, 0, 0): module.coerce_scalar(2 * lw.m),
    })
    u0 = u0 + ModuleVector(module, {
        (2, 0, 0, 0, 0): module.coerce_scalar(gamma),
        (0, 1, 0, 0, 0): module.coerce_scalar(-2 * lw.m * gamma),
    })
    return _apply_quadratic(module, u0, p)


def closed_form_n2_extra(module: VermaModule, p: int) -> ModuleVector:
    """Massless extra family G^p S- X+ v0 (singular exactly when
    r = d - p - 1)."""
    if module.kind != "ssch2" or module.lw.m:
        raise ValueError("the extra closed form lives in massless N=2 modules")
    if p < 0:
        raise ValueError("p must be nonnegative")
    return module.basis_vector((p, 0, 0, 1, 1))


def _apply_quadratic(module, vec, power):
    """Apply (G^2 - 2mK)^power."""
    two_m = 2 * module.lw.m
    for _ in range(power):
        gg = module.act("G", module.act("G", vec))
        kk = module.act("K", vec).scale(two_m)
        vec = gg - kk
    return vec


def expected_closed_forms(module: VermaModule, weight):
    """Applicable closed-form families (label, vector) at one weight."""
    lw = module.lw
    out = []
    if module.kind == "ssch1":
        if lw.m:
            p2 = lw.d + Fraction(1, 2)
            if p2.denominator == 1 and p2 >= 0 and weight == 2 * p2 + 1:
                out.append(("prop2-massive", closed_form_n1(module, int(p2))))
        else:
            if isinstance(weight, int) and weight >= 1:
                out.append(("prop2-massless", closed_form_n1(module, weight)))
    else:
        if lw.m:
            p2 = lw.d - Fraction(1, 2)
            if p2.denominator == 1 and p2 >= 0 and weight == (2 * p2 + 2, 0):
                out.append(("prop4-massive", closed_form_n2(module, int(p2))))
        else:
            n1, n2 = weight
            if n2 == 1:
                out.append(("prop4-massless", closed_form_n2(module, n1)))
            if n2 == 0 and n1 >= 1 and lw.r == lw.d - n1:
                out.append(("prop4-massless-extra",
                            closed_form_n2_extra(module, n1 - 1)))
    return out


def _match_closed_forms(module: VermaModule, report: SingularVectorReport):
    expected = expected_closed_forms(module, report.weight)
    if not expected:
        return
    contains = []
    coords = WeightCoords(module, report.weight)
    kernel_rows = [coords.to_coords(v) for v in report.vectors]
    if coords.doubled:
        kernel_rows = kernel_rows + [coords.chi_multiply_coords(r)
                                     for r in list(kernel_rows)]
    kernel_rank = rank(kernel_rows)
    expected_rows = []
    for label, vec in expected:
        row = coords.to_coords(vec)
        if rank(kernel_rows + [row]) == kernel_rank:
            contains.append(label)
        expected_rows.append(row)
        if coords.doubled:
            expected_rows.append(coords.chi_multiply_coords(row))
    report.contains = tuple(contains)
    exact = (
        len(contains) == len(expected)
        and rank(expected_rows) == kernel_rank
        and len(expected) == report.kernel_dim
    )
    if exact:
        report.matched = expected[0][0] if len(expected) == 1 else \
            "+".join(label for label, _ in expected)
        if len(expected) == 1 and report.kernel_dim == 1:
            cf = expected[0][1]
            if cf.normalized() == report.vectors[0]:
                report.proportionality = str(cf.terms[cf.leading_monomial()])


# ---------------------------------------------------------------------------
# the recurrence system for the N=2 massive coefficients


@dataclass
class RecurrenceReport:
    passed: dict = field(default_factory=dict)
    constraint_failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(self.passed.values()) and not self.constraint_failures


def binomial_coefficients(p: int, m) -> list:
    """Coefficients a_l of (G^2 - 2mK)^p as a polynomial sum over G^{n-2l}K^l."""
    m = Fraction(m)
    coeffs = [Fraction(1)]
    for l in range(1, p + 1):
        coeffs.append(coeffs[-1] * (-2 * m) * Fraction(p - l + 1, l))
    return coeffs


def check_recurrences(p: int, lw: LowestWeight, coefficients=None,
                      alpha=Fraction(1), gamma=None, delta=None,
                      beta=None) -> RecurrenceReport:
    """Verify the five recurrences for the degree-(2,0) ansatz coefficients.

    The ansatz vector is (alpha G S- X+ + beta S+ S- + gamma G^2 + delta K) v0
    spread along sum_l a_l G^{n-2l} K^l with n = 2p; the defaults take the
    solved values beta = m alpha, gamma = ((d+r+1)/(2d+1)) alpha,
    delta = 2m(alpha - gamma) and binomial a_l.
    """
    if lw.kind != "ssch2" or not lw.m:
        raise ValueError("recurrence check applies to massive N=2 parameters")
    d, r, m = lw.d, lw.r, lw.m
    n = 2 * p
    alpha = Fraction(alpha)
    if gamma is None:
        gamma = (d + r + 1) / (2 * d + 1) * alpha
    if delta is None:
        delta = 2 * m * (alpha - gamma)
    if beta is None:
        beta = m * alpha
    a = list(coefficients) if coefficients is not None else \
        binomial_coefficients(p, m)

    def coeff(l):
        return a[l] if 0 <= l < len(a) else Fraction(0)

    report = RecurrenceReport()
    ok1 = ok2 = ok3 = ok4 = ok5 = True
    for l in range(-1, p + 1):
        k = n - 2 * l
        if ((d - r - n + 2 * l) * alpha + k * gamma) * coeff(l + 1) \
                + (n - 2 * l) * delta * coeff(l):
            ok1 = False
        if (l + 1) * gamma * coeff(l + 1) \
                + ((-d + r + n - 2 * l) * m * alpha + (l + 1) * delta) * coeff(l):
            ok2 = False
        if (l + 1) * coeff(l + 1) + (n - 2 * l) * m * coeff(l):
            ok3 = False
        if (l + 1) * gamma * coeff(l + 1) \
                + ((d + r - 2 * l - 1) * m * alpha + (l + 1) * delta) * coeff(l):
            ok4 = False
        if (-2 * m * alpha + (n - 2 * l) * m * gamma + (l + 2) * delta) * coeff(l + 1) \
                + (n - 2 * l) * m * delta * coeff(l) + (l + 2) * gamma * coeff(l + 2):
            ok5 = False
    report.passed = {"rec1": ok1, "rec2": ok2, "rec3": ok3, "rec4": ok4,
                     "rec5": ok5}
    if d != Fraction(n + 1, 2):
        report.constraint_failures.append("d != (n+1)/2")
    if gamma != (d + r + 1) / (2 * d + 1) * alpha:
        report.constraint_failures.append("gamma != ((d+r+1)/(2d+1)) alpha")
    if delta != 2 * m * (alpha - gamma):
        report.constraint_failures.append("delta != 2m(alpha-gamma)")
    if beta != m * alpha:
        report.constraint_failures.append("beta != m alpha")
    return report
