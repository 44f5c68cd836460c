"""Finite-dimensional Z2-graded Lie superalgebras as structure-constant tables.

Provides the Schroedinger algebra of (1+1)d spacetime with central mass
(``sch1``), its N=1 extension (``ssch1``) and its N=2 extension in the
raising/lowering basis (``ssch2``), together with bracket evaluation,
consistency verifiers, the triangular decomposition and the four adjoint
(anti-automorphism) maps.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from .scalars import QI, QI_ZERO, QI_ONE, qi_str, parse_qi

KINDS = ("sch1", "ssch1", "ssch2")

EVEN = 0
ODD = 1


@dataclass(frozen=True)
class Generator:
    name: str
    parity: int
    degree: tuple


class StructureTable:
    """Bracket table stored once per unordered generator pair.

    Odd-odd pairs are anticommutators, every other pair a commutator; the
    lookup direction is fixed by super-(anti)symmetry
    [x,y} = -(-1)^{|x||y|} [y,x}.
    """

    def __init__(self, kind, generators, brackets):
        self.kind = kind
        self.generators = list(generators)
        self._by_name = {g.name: g for g in self.generators}
        self._index = {g.name: i for i, g in enumerate(self.generators)}
        self._pairs = {}
        for (x, y), value in brackets.items():
            self._store(x, y, {g: self._qi(c) for g, c in value.items()})
        self.names = tuple(g.name for g in self.generators)

    @staticmethod
    def _qi(c):
        return c if isinstance(c, QI) else QI(c)

    def _store(self, x, y, value):
        if x not in self._by_name or y not in self._by_name:
            raise ValueError("unknown generator in bracket (%s, %s)" % (x, y))
        key = (x, y) if self._index[x] <= self._index[y] else (y, x)
        if key != (x, y):
            sign = 1 if self.parity(x) and self.parity(y) else -1
            value = {g: c * sign for g, c in value.items()}
        if key in self._pairs:
            raise ValueError("duplicate bracket for pair %s" % (key,))
        self._pairs[key] = value

    def generator(self, name) -> Generator:
        try:
            return self._by_name[name]
        except KeyError:
            raise ValueError("unknown generator %r" % name) from None

    def parity(self, name) -> int:
        return self.generator(name).parity

    def degree(self, name) -> tuple:
        return self.generator(name).degree

    def bracket_gens(self, x, y) -> dict:
        """[x,y} for generator names, as a dict name -> QI."""
        self.generator(x), self.generator(y)
        if self._index[x] <= self._index[y]:
            return dict(self._pairs.get((x, y), {}))
        value = self._pairs.get((y, x))
        if not value:
            return {}
        sign = 1 if self.parity(x) and self.parity(y) else -1
        return {g: c * sign for g, c in value.items()}

    def bracket(self, x, y) -> dict:
        """Bilinear bracket of elements given as dicts name -> QI (or names)."""
        ex = {x: QI_ONE} if isinstance(x, str) else x
        ey = {y: QI_ONE} if isinstance(y, str) else y
        out = {}
        for gx, cx in ex.items():
            for gy, cy in ey.items():
                for g, c in self.bracket_gens(gx, gy).items():
                    val = out.get(g, QI_ZERO) + cx * cy * c
                    if val:
                        out[g] = val
                    elif g in out:
                        del out[g]
        return out

    def element_parity(self, elem: dict):
        parities = {self.parity(g) for g in elem}
        if not parities:
            return EVEN
        if len(parities) == 1:
            return parities.pop()
        return None

    def to_json_dict(self) -> dict:
        gens = [
            {"name": g.name, "parity": "odd" if g.parity else "even",
             "degree": list(g.degree)}
            for g in self.generators
        ]
        brackets = []
        for (x, y) in sorted(self._pairs, key=lambda p: (self._index[p[0]], self._index[p[1]])):
            value = self._pairs[(x, y)]
            brackets.append({
                "x": x, "y": y,
                "value": {g: qi_str(c) for g, c in sorted(value.items())},
            })
        return {"kind": self.kind, "generators": gens, "brackets": brackets}

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True, indent=2)

    @staticmethod
    def from_json_dict(data) -> "StructureTable":
        gens = [
            Generator(g["name"], ODD if g["parity"] == "odd" else EVEN,
                      tuple(g["degree"]))
            for g in data["generators"]
        ]
        brackets = {}
        for row in data["brackets"]:
            brackets[(row["x"], row["y"])] = {
                g: parse_qi(c) for g, c in row["value"].items()
            }
        return StructureTable(data["kind"], gens, brackets)


def _sch1_generators():
    return [
        Generator("H", EVEN, (-2,)),
        Generator("P", EVEN, (-1,)),
        Generator("G", EVEN, (1,)),
        Generator("D", EVEN, (0,)),
        Generator("K", EVEN, (2,)),
        Generator("M", EVEN, (0,)),
    ]


_SCH1_BRACKETS = {
    ("H", "D"): {"H": 2},
    ("H", "K"): {"D": 1},
    ("D", "K"): {"K": 2},
    ("P", "G"): {"M": 1},
    ("H", "G"): {"P": 1},
    ("D", "G"): {"G": 1},
    ("P", "D"): {"P": 1},
    ("P", "K"): {"G": 1},
}


def build_algebra(kind: str) -> StructureTable:
    """Construct the structure table for ``sch1``, ``ssch1`` or ``ssch2``."""
    if kind == "sch1":
        return StructureTable(kind, _sch1_generators(), dict(_SCH1_BRACKETS))

    if kind == "ssch1":
        gens = _sch1_generators() + [
            Generator("Q", ODD, (-1,)),
            Generator("S", ODD, (1,)),
            Generator("X", ODD, (0,)),
        ]
        brackets = dict(_SCH1_BRACKETS)
        brackets.update({
            ("Q", "Q"): {"H": -2},
            ("S", "S"): {"K": -2},
            ("X", "X"): {"M": -1},
            ("Q", "X"): {"P": -1},
            ("S", "X"): {"G": -1},
            ("Q", "S"): {"D": -1},
            ("Q", "D"): {"Q": 1},
            ("Q", "K"): {"S": 1},
            ("D", "S"): {"S": 1},
            ("H", "S"): {"Q": 1},
            ("Q", "G"): {"X": 1},
            ("P", "S"): {"X": 1},
        })
        return StructureTable(kind, gens, brackets)

    if kind == "ssch2":
        gens = [
            Generator("H", EVEN, (-2, 0)),
            Generator("P", EVEN, (-1, 0)),
            Generator("G", EVEN, (1, 0)),
            Generator("D", EVEN, (0, 0)),
            Generator("K", EVEN, (2, 0)),
            Generator("M", EVEN, (0, 0)),
            Generator("R", EVEN, (0, 0)),
            Generator("Q+", ODD, (-1, 1)),
            Generator("Q-", ODD, (-1, -1)),
            Generator("S+", ODD, (1, 1)),
            Generator("S-", ODD, (1, -1)),
            Generator("X+", ODD, (0, 1)),
            Generator("X-", ODD, (0, -1)),
        ]
        brackets = dict(_SCH1_BRACKETS)
        brackets.update({
            ("Q+", "Q-"): {"H": -2},
            ("S+", "S-"): {"K": -2},
            ("X+", "X-"): {"M": -1},
            ("Q+", "X-"): {"P": -1},
            ("Q-", "X+"): {"P": -1},
            ("S+", "X-"): {"G": -1},
            ("S-", "X+"): {"G": -1},
            ("Q+", "S-"): {"D": -1, "R": -1},
            ("Q-", "S+"): {"D": -1, "R": 1},
        })
        for a, sign in (("+", 1), ("-", -1)):
            brackets.update({
                ("Q" + a, "D"): {"Q" + a: 1},
                ("Q" + a, "K"): {"S" + a: 1},
                ("D", "S" + a): {"S" + a: 1},
                ("H", "S" + a): {"Q" + a: 1},
                ("Q" + a, "G"): {"X" + a: 1},
                ("P", "S" + a): {"X" + a: 1},
                ("R", "Q" + a): {"Q" + a: sign},
                ("R", "S" + a): {"S" + a: sign},
                ("R", "X" + a): {"X" + a: sign},
            })
        return StructureTable(kind, gens, brackets)

    raise ValueError("unknown algebra kind %r" % kind)


# ---------------------------------------------------------------------------
# consistency verifiers


@dataclass
class StructureReport:
    kind: str
    jacobi_failures: list = field(default_factory=list)
    antisymmetry_failures: list = field(default_factory=list)
    degree_failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not (self.jacobi_failures or self.antisymmetry_failures
                    or self.degree_failures)


def _elem_sub(a: dict, b: dict) -> dict:
    out = dict(a)
    for g, c in b.items():
        val = out.get(g, QI_ZERO) - c
        if val:
            out[g] = val
        elif g in out:
            del out[g]
    return out


def verify_structure(table: StructureTable, max_failures=20) -> StructureReport:
    """Exhaustive super-antisymmetry, degree additivity and Jacobi check."""
    report = StructureReport(table.kind)
    names = table.names
    for x in names:
        for y in names:
            sign = -1 if (table.parity(x) and table.parity(y)) else 1
            lhs = table.bracket_gens(x, y)
            rhs = {g: c * sign for g, c in table.bracket_gens(y, x).items()}
            if _elem_sub(lhs, {g: -c for g, c in rhs.items()}) != {}:
                # [x,y} + (-1)^{|x||y|}[y,x} must vanish
                report.antisymmetry_failures.append((x, y))
            expected = tuple(
                dx + dy for dx, dy in zip(table.degree(x), table.degree(y))
            )
            for g in lhs:
                if table.degree(g) != expected:
                    report.degree_failures.append((x, y, g))
    for x in names:
        px = table.parity(x)
        for y in names:
            py = table.parity(y)
            sign = -1 if (px and py) else 1
            for z in names:
                lhs = table.bracket(x, table.bracket_gens(y, z))
                rhs = table.bracket(table.bracket_gens(x, y), z)
                for g, c in table.bracket(y, table.bracket_gens(x, z)).items():
                    val = rhs.get(g, QI_ZERO) + c * sign
                    if val:
                        rhs[g] = val
                    elif g in rhs:
                        del rhs[g]
                if _elem_sub(lhs, rhs):
                    report.jacobi_failures.append((x, y, z))
                    if len(report.jacobi_failures) >= max_failures:
                        return report
    return report


def triangular_decompose(table: StructureTable):
    """Split generators by the sign of the first nonzero degree entry."""
    plus, zero, minus = [], [], []
    for g in table.generators:
        sign = 0
        for entry in g.degree:
            if entry:
                sign = 1 if entry > 0 else -1
                break
        (plus if sign > 0 else minus if sign < 0 else zero).append(g.name)
    return plus, zero, minus


def closes_under_bracket(table: StructureTable, subset):
    """Return (closed, escapes) for a generator subset."""
    subset = set(subset)
    escapes = []
    for x in sorted(subset, key=lambda n: table._index[n]):
        for y in sorted(subset, key=lambda n: table._index[n]):
            for g in table.bracket_gens(x, y):
                if g not in subset:
                    escapes.append((x, y, g))
    return not escapes, escapes


# ---------------------------------------------------------------------------
# adjoint maps


@dataclass
class AdjointMap:
    name: str
    epsilon: int
    lam: int
    antilinear: bool
    images: dict           # generator name -> dict name -> QI
    completed: tuple = ()  # generator names whose image was derived, not quoted

    def apply(self, elem) -> dict:
        """Apply to an element dict (or generator name), conjugating scalars
        when the map is antilinear."""
        if isinstance(elem, str):
            elem = {elem: QI_ONE}
        out = {}
        for g, c in elem.items():
            if g not in self.images:
                raise ValueError("adjoint %s undefined on %r" % (self.name, g))
            cc = c.conj() if self.antilinear else c
            for h, w in self.images[g].items():
                val = out.get(h, QI_ZERO) + cc * w
                if val:
                    out[h] = val
                elif h in out:
                    del out[h]
        return out


def _sgn(k) -> int:
    return -1 if k % 2 else 1


def build_adjoint(table: StructureTable, which: str, epsilon=0, lam=0) -> AdjointMap:
    """Construct omega1/omega2 (any kind) or sigma1/sigma2 (ssch2 only).

    Images the source tables leave implicit (the involution partners, and
    for sigma1 the images of S+/S-/H/G) are completed from the involution
    and anti-automorphism requirements; they are listed in ``completed`` and
    re-validated by :func:`verify_adjoint` rather than trusted.
    """
    if which not in ("omega1", "omega2", "sigma1", "sigma2"):
        raise ValueError("unknown adjoint map %r" % which)
    if which.startswith("sigma") and table.kind != "ssch2":
        raise ValueError(
            "%s is defined for ssch2 only: the N=1 algebra admits no "
            "parity-preserving adjoint squaring to the parity involution"
            % which
        )
    e, l = epsilon % 2, lam % 2
    kind = table.kind
    img = {}
    completed = []

    def one(g, h, coeff):
        img[g] = {h: coeff if isinstance(coeff, QI) else QI(coeff)}

    if which == "omega1":
        one("P", "G", _sgn(e))
        one("G", "P", _sgn(e))
        completed.append("G")
        one("H", "K", 1)
        one("K", "H", 1)
        completed.append("K")
        one("D", "D", 1)
        one("M", "M", 1)
        if kind == "ssch1":
            one("Q", "S", _sgn(l))
            one("S", "Q", _sgn(l))
            completed.append("S")
            one("X", "X", _sgn(e + l))
        elif kind == "ssch2":
            one("R", "R", 1)
            for a, b in (("+", "-"), ("-", "+")):
                one("Q" + a, "S" + b, _sgn(l))
                one("S" + a, "Q" + b, _sgn(l))
                completed.append("S" + a)
                one("X" + a, "X" + b, _sgn(e + l))
        antilinear = False
    elif which == "omega2":
        one("P", "P", _sgn(e))
        one("G", "G", _sgn(e))
        for g in ("H", "K", "D", "M"):
            one(g, g, -1)
        if kind == "ssch1":
            one("Q", "Q", QI(0, _sgn(l)))
            one("S", "S", QI(0, _sgn(l)))
            one("X", "X", QI(0, _sgn(l + e + 1)))
        elif kind == "ssch2":
            one("R", "R", 1)
            for a, b in (("+", "-"), ("-", "+")):
                one("Q" + a, "Q" + b, QI(0, _sgn(l)))
                one("S" + a, "S" + b, QI(0, _sgn(l)))
                one("X" + a, "X" + b, QI(0, _sgn(l + e + 1)))
        # the factors of i force scalar conjugation for idempotence
        antilinear = True
    elif which == "sigma1":
        one("K", "H", 1)
        one("H", "K", 1)
        completed.append("H")
        one("P", "G", 1)
        one("G", "P", 1)
        completed.append("G")
        for g in ("D", "R", "M"):
            one(g, g, 1)
        for a, s in (("+", 1), ("-", -1)):
            b = "-" if a == "+" else "+"
            one("Q" + a, "S" + b, s * _sgn(e))
            one("S" + a, "Q" + b, s * _sgn(e))
            completed.append("S" + a)
            one("X" + a, "X" + b, s * _sgn(e))
        antilinear = True
    else:  # sigma2
        for a, s in (("+", 1), ("-", -1)):
            b = "-" if a == "+" else "+"
            for fam in ("Q", "S", "X"):
                one(fam + a, fam + b, QI(0, s * _sgn(e)))
        one("R", "R", 1)
        for g in ("H", "K", "D", "M", "P", "G"):
            one(g, g, -1)
        antilinear = True

    missing = [g for g in table.names if g not in img]
    if missing:
        raise ValueError("adjoint %s missing images for %s" % (which, missing))
    return AdjointMap(which, e, l, antilinear, img, tuple(completed))


def identity_adjoint(table: StructureTable) -> AdjointMap:
    """The identity map packaged as a candidate adjoint (it is not one)."""
    img = {g: {g: QI_ONE} for g in table.names}
    return AdjointMap("identity", 0, 0, False, img)


@dataclass
class AdjointReport:
    map_name: str
    epsilon: int
    lam: int
    antilinear: bool
    involution: str = ""   # "identity" | "parity" | "none"
    convention: str = ""   # "plain" | "graded" | "none"
    involution_failures: list = field(default_factory=list)
    plain_failures: list = field(default_factory=list)
    graded_failures: list = field(default_factory=list)
    completed: tuple = ()

    @property
    def ok(self) -> bool:
        return self.involution in ("identity", "parity") and \
            self.convention in ("plain", "graded")


def verify_adjoint(table: StructureTable, amap: AdjointMap) -> AdjointReport:
    """Check the involution law and the anti-automorphism law.

    Two candidate sign conventions are tested on every generator pair:
    plain  sigma([x,y}) = [sigma(y), sigma(x)}
    graded sigma([x,y}) = (-1)^{|x||y|} [sigma(y), sigma(x)}
    and the report states which one holds uniformly.
    """
    report = AdjointReport(amap.name, amap.epsilon, amap.lam, amap.antilinear,
                           completed=amap.completed)
    id_ok, par_ok = True, True
    for g in table.names:
        twice = amap.apply(amap.apply(g))
        sign = -1 if table.parity(g) else 1
        if twice != {g: QI_ONE}:
            id_ok = False
        if twice != {g: QI(sign)}:
            par_ok = False
        if twice not in ({g: QI_ONE}, {g: QI(sign)}):
            report.involution_failures.append((g, twice))
    report.involution = "identity" if id_ok else ("parity" if par_ok else "none")

    for x in table.names:
        for y in table.names:
            lhs = amap.apply(table.bracket_gens(x, y))
            rhs = table.bracket(amap.apply(y), amap.apply(x))
            sign = -1 if (table.parity(x) and table.parity(y)) else 1
            if _elem_sub(lhs, rhs):
                report.plain_failures.append((x, y))
            if _elem_sub(lhs, {g: c * sign for g, c in rhs.items()}):
                report.graded_failures.append((x, y))
    if not report.plain_failures:
        report.convention = "plain"
    elif not report.graded_failures:
        report.convention = "graded"
    else:
        report.convention = "none"
    return report
