"""The graded connected Hopf algebra of superclass functions.

Elements are finitely supported rational linear combinations of basis symbols
indexed by labelled partitions, in either the superclass-indicator basis
("kappa") or the arc-containment upper-sum basis ("P").  The product of two
symbols concatenates their ground sets (a single term in the P basis; in the
kappa basis a sum over all ways of adding labelled crossing arcs between the
two blocks).  The coproduct splits the ground set over all clean component
unions, standardizing both sides; it is the same formula in both bases.

The antipode is computed by the standard graded-connected recursion on the
reduced coproduct and is certified only through its defining identities.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Iterator

from .ffield import FieldSpec
from .partitions import (
    LabelledPartition,
    _candidate_positions,
    arc_extensions,
    concat,
    enumerate_partitions,
    partition_sort_key,
    superset_closure,
)

__all__ = [
    "HopfError",
    "SCElement",
    "TensorElement",
    "CheckResult",
    "VerifyReport",
    "verify_bialgebra",
]

BASES = ("kappa", "P")


class HopfError(ValueError):
    """Mixed bases or mismatched contexts."""


def _empty(family: str, fld: FieldSpec) -> LabelledPartition:
    return LabelledPartition.empty(family, 0, fld)


class SCElement:
    """A finitely supported linear combination of basis symbols, one basis."""

    __slots__ = ("family", "field", "basis", "terms")

    def __init__(self, family: str, fld: FieldSpec, basis: str, terms=None):
        if basis not in BASES:
            raise HopfError(f"unknown basis {basis!r}")
        if family == "B":
            raise HopfError("family B carries no product; only D and C are supported here")
        self.family = family
        self.field = fld
        self.basis = basis
        pruned = {}
        for lam, c in (terms or {}).items():
            c = Fraction(c)
            if c:
                if lam.family != family or lam.field != fld:
                    raise HopfError(f"symbol {lam} does not match element context")
                pruned[lam] = c
        self.terms = pruned

    # -- constructors -----------------------------------------------------------

    @classmethod
    def kappa(cls, lam: LabelledPartition) -> "SCElement":
        return cls(lam.family, lam.field, "kappa", {lam: 1})

    @classmethod
    def pbasis(cls, lam: LabelledPartition) -> "SCElement":
        return cls(lam.family, lam.field, "P", {lam: 1})

    @classmethod
    def symbol(cls, basis: str, lam: LabelledPartition) -> "SCElement":
        return cls(lam.family, lam.field, basis, {lam: 1})

    @classmethod
    def unit(cls, family: str, fld: FieldSpec, basis: str = "kappa") -> "SCElement":
        return cls(family, fld, basis, {_empty(family, fld): 1})

    @classmethod
    def zero(cls, family: str, fld: FieldSpec, basis: str = "kappa") -> "SCElement":
        return cls(family, fld, basis, {})

    def _check(self, other: "SCElement"):
        if (other.family, other.field) != (self.family, self.field):
            raise HopfError("elements live over different contexts")
        if other.basis != self.basis:
            raise HopfError("mixed bases are rejected; convert explicitly")

    # -- linear structure ----------------------------------------------------------

    def __add__(self, other: "SCElement") -> "SCElement":
        self._check(other)
        out = dict(self.terms)
        for lam, c in other.terms.items():
            out[lam] = out.get(lam, Fraction(0)) + c
        return SCElement(self.family, self.field, self.basis, out)

    def __sub__(self, other: "SCElement") -> "SCElement":
        return self + (-1) * other

    def __neg__(self) -> "SCElement":
        return (-1) * self

    def __rmul__(self, scalar) -> "SCElement":
        if not isinstance(scalar, (int, Fraction)):
            return NotImplemented
        return SCElement(
            self.family, self.field, self.basis,
            {lam: scalar * c for lam, c in self.terms.items()},
        )

    # -- Hopf structure ---------------------------------------------------------------

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.__rmul__(other)
        if not isinstance(other, SCElement):
            return NotImplemented
        self._check(other)
        out: dict = {}
        for lam, c1 in self.terms.items():
            for mu, c2 in other.terms.items():
                c = c1 * c2
                if self.basis == "P":
                    nu = concat(lam, mu)
                    out[nu] = out.get(nu, Fraction(0)) + c
                else:
                    for nu in _kappa_product_symbols(lam, mu):
                        out[nu] = out.get(nu, Fraction(0)) + c
        return SCElement(self.family, self.field, self.basis, out)

    def coproduct(self) -> "TensorElement":
        out: dict = {}
        for lam, c in self.terms.items():
            comps = lam.components()
            for mask in range(1 << len(comps)):
                members = sorted(
                    x for t, comp in enumerate(comps) if mask >> t & 1 for x in comp
                )
                left, right, clean = lam.restrict_standardize(members)
                if not clean:
                    raise AssertionError("component unions must split cleanly")
                key = (left, right)
                out[key] = out.get(key, Fraction(0)) + c
        return TensorElement(self.family, self.field, self.basis, out)

    def counit(self) -> Fraction:
        return self.terms.get(_empty(self.family, self.field), Fraction(0))

    def antipode(self) -> "SCElement":
        out = SCElement.zero(self.family, self.field, self.basis)
        for lam, c in self.terms.items():
            out = out + c * SCElement(
                self.family, self.field, self.basis, _antipode_symbol(self.basis, lam)
            )
        return out

    # -- basis change -------------------------------------------------------------------

    def to_kappa(self) -> "SCElement":
        """Expand each P symbol as the sum of indicators over its supersets."""
        if self.basis == "kappa":
            return self
        out: dict = {}
        for lam, c in self.terms.items():
            for mu in superset_closure(lam):
                out[mu] = out.get(mu, Fraction(0)) + c
        return SCElement(self.family, self.field, "kappa", out)

    def to_P(self) -> "SCElement":
        """Invert the upper-sum triangularly, by recursion on arc count."""
        if self.basis == "P":
            return self
        out: dict = {}
        for lam, c in self.terms.items():
            for nu, d in _kappa_in_p_terms(lam).items():
                out[nu] = out.get(nu, Fraction(0)) + c * d
        return SCElement(self.family, self.field, "P", out)

    # -- views ----------------------------------------------------------------------------

    def grades(self):
        return sorted({lam.n for lam in self.terms})

    def is_zero(self) -> bool:
        return not self.terms

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: (kv[0].n, partition_sort_key(kv[0])))

    def __eq__(self, other):
        return (
            isinstance(other, SCElement)
            and (other.family, other.field, other.basis) == (self.family, self.field, self.basis)
            and other.terms == self.terms
        )

    def __hash__(self):
        return hash(
            (self.family, self.field, self.basis, tuple(self.sorted_terms()))
        )

    def to_json(self) -> dict:
        doc = {
            "basis": self.basis,
            "family": self.family,
            "q": self.field.q,
            "terms": [
                {"coef": str(c), "label": lam.to_json()} for lam, c in self.sorted_terms()
            ],
        }
        if self.field.r > 1:
            doc["modulus"] = list(self.field.modulus)
        return doc

    @classmethod
    def from_json(cls, doc: dict, fld: FieldSpec | None = None) -> "SCElement":
        if fld is None:
            fld = FieldSpec.from_q(doc["q"], doc.get("modulus"))
        basis = doc["basis"]
        family = doc["family"]
        terms = {}
        for t in doc["terms"]:
            lam = LabelledPartition.from_json(t["label"], fld)
            terms[lam] = terms.get(lam, Fraction(0)) + Fraction(t["coef"])
        return cls(family, fld, basis, terms)

    def __repr__(self):
        if not self.terms:
            return f"SCElement({self.basis}: 0)"
        body = " + ".join(
            f"{c}*{self.basis}[{lam}]" if c != 1 else f"{self.basis}[{lam}]"
            for lam, c in self.sorted_terms()
        )
        return f"SCElement({body})"


class TensorElement:
    """A finitely supported combination of symbol pairs (two-fold tensors)."""

    __slots__ = ("family", "field", "basis", "terms")

    def __init__(self, family: str, fld: FieldSpec, basis: str, terms=None):
        self.family = family
        self.field = fld
        self.basis = basis
        pruned = {}
        for key, c in (terms or {}).items():
            c = Fraction(c)
            if c:
                pruned[key] = c
        self.terms = pruned

    def _check(self, other: "TensorElement"):
        if (other.family, other.field, other.basis) != (self.family, self.field, self.basis):
            raise HopfError("tensor operands do not match")

    def __add__(self, other: "TensorElement") -> "TensorElement":
        self._check(other)
        out = dict(self.terms)
        for key, c in other.terms.items():
            out[key] = out.get(key, Fraction(0)) + c
        return TensorElement(self.family, self.field, self.basis, out)

    def __rmul__(self, scalar):
        if not isinstance(scalar, (int, Fraction)):
            return NotImplemented
        return TensorElement(
            self.family, self.field, self.basis,
            {key: scalar * c for key, c in self.terms.items()},
        )

    def __mul__(self, other):
        """Componentwise product: (a (x) b) (c (x) d) = ac (x) bd."""
        if isinstance(other, (int, Fraction)):
            return self.__rmul__(other)
        if not isinstance(other, TensorElement):
            return NotImplemented
        self._check(other)
        out: dict = {}
        for (l1, r1), c1 in self.terms.items():
            for (l2, r2), c2 in other.terms.items():
                left = SCElement.symbol(self.basis, l1) * SCElement.symbol(self.basis, l2)
                right = SCElement.symbol(self.basis, r1) * SCElement.symbol(self.basis, r2)
                for a, ca in left.terms.items():
                    for b, cb in right.terms.items():
                        key = (a, b)
                        out[key] = out.get(key, Fraction(0)) + c1 * c2 * ca * cb
        return TensorElement(self.family, self.field, self.basis, out)

    def multiply_components(self) -> SCElement:
        """Apply the product map m: a (x) b -> a*b."""
        out = SCElement.zero(self.family, self.field, self.basis)
        for (l, r), c in self.terms.items():
            out = out + c * (SCElement.symbol(self.basis, l) * SCElement.symbol(self.basis, r))
        return out

    def term_count(self) -> Fraction:
        return sum(self.terms.values(), Fraction(0))

    def sorted_terms(self):
        return sorted(
            self.terms.items(),
            key=lambda kv: (
                kv[0][0].n,
                partition_sort_key(kv[0][0]),
                partition_sort_key(kv[0][1]),
            ),
        )

    def __eq__(self, other):
        return (
            isinstance(other, TensorElement)
            and (other.family, other.field, other.basis) == (self.family, self.field, self.basis)
            and other.terms == self.terms
        )

    def __hash__(self):
        return hash((self.family, self.field, self.basis, tuple(self.sorted_terms())))

    def __repr__(self):
        if not self.terms:
            return f"TensorElement({self.basis}: 0)"
        body = " + ".join(
            f"{c}*[{l}](x)[{r}]" if c != 1 else f"[{l}](x)[{r}]"
            for (l, r), c in self.sorted_terms()
        )
        return f"TensorElement({body})"


# -- kappa-basis product -------------------------------------------------------------


def _crossing_positions(family: str, n: int, k: int):
    out = []
    for i, j in _candidate_positions(family, n):
        if (abs(i) <= k) != (abs(j) <= k):
            out.append((i, j))
    return out


def _kappa_product_symbols(lam: LabelledPartition, mu: LabelledPartition) -> Iterator[LabelledPartition]:
    """All partitions restricting to lam on the first block and to the shifted
    mu on the second: the base concatenation plus labelled crossing arcs."""
    base = concat(lam, mu)
    yield from arc_extensions(base, _crossing_positions(lam.family, base.n, lam.n))


# -- antipode and basis-change caches ---------------------------------------------------


_KAPPA_IN_P: dict = {}
_ANTIPODE: dict = {}


def _kappa_in_p_terms(lam: LabelledPartition) -> dict:
    cached = _KAPPA_IN_P.get(lam)
    if cached is not None:
        return cached
    out = {lam: Fraction(1)}
    for mu in superset_closure(lam):
        if mu == lam:
            continue
        for nu, c in _kappa_in_p_terms(mu).items():
            out[nu] = out.get(nu, Fraction(0)) - c
    out = {nu: c for nu, c in out.items() if c}
    _KAPPA_IN_P[lam] = out
    return out


def _antipode_symbol(basis: str, lam: LabelledPartition) -> dict:
    key = (basis, lam)
    cached = _ANTIPODE.get(key)
    if cached is not None:
        return cached
    if lam.n == 0:
        out = {lam: Fraction(1)}
        _ANTIPODE[key] = out
        return out
    acc = SCElement.zero(lam.family, lam.field, basis)
    for (left, right), c in SCElement.symbol(basis, lam).coproduct().terms.items():
        if left.n == lam.n:
            continue
        s_left = SCElement(lam.family, lam.field, basis, _antipode_symbol(basis, left))
        acc = acc + c * (s_left * SCElement.symbol(basis, right))
    out = {nu: -c for nu, c in acc.terms.items()}
    _ANTIPODE[key] = out
    return out


# -- verification harness ------------------------------------------------------------------


@dataclass
class CheckResult:
    name: str
    checked: int = 0
    failures: list = dc_field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def record(self, ok: bool, detail: str):
        self.checked += 1
        if not ok:
            self.failures.append(detail)


@dataclass
class VerifyReport:
    family: str
    q: int
    n_max: int
    results: list

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.results)

    def to_json(self) -> dict:
        return {
            "family": self.family,
            "q": self.q,
            "n_max": self.n_max,
            "ok": self.ok,
            "checks": [
                {
                    "name": r.name,
                    "checked": r.checked,
                    "ok": r.ok,
                    "failures": r.failures[:20],
                }
                for r in self.results
            ],
        }

    def summary(self) -> str:
        lines = []
        for r in self.results:
            state = "ok" if r.ok else f"FAILED ({len(r.failures)})"
            lines.append(f"{r.name}: {r.checked} checked, {state}")
        lines.append(f"verify: {'ALL OK' if self.ok else 'FAILURES PRESENT'}")
        return "\n".join(lines)


def verify_bialgebra(family: str, fld: FieldSpec, n_max: int) -> VerifyReport:
    """Exhaustively check the Hopf axioms on all basis symbols of grade <= n_max."""
    by_grade = {k: list(enumerate_partitions(family, k, fld)) for k in range(n_max + 1)}
    symbols = [lam for k in range(n_max + 1) for lam in by_grade[k]]
    pairs = [
        (a, b)
        for ka in range(n_max + 1)
        for kb in range(n_max + 1 - ka)
        for a in by_grade[ka]
        for b in by_grade[kb]
    ]
    triples = [
        (a, b, c)
        for ka in range(n_max + 1)
        for kb in range(n_max + 1 - ka)
        for kc in range(n_max + 1 - ka - kb)
        for a in by_grade[ka]
        for b in by_grade[kb]
        for c in by_grade[kc]
    ]
    results = []

    rt = CheckResult("basis-change round trip")
    for lam in symbols:
        k = SCElement.kappa(lam)
        p = SCElement.pbasis(lam)
        rt.record(k.to_P().to_kappa() == k, f"kappa->P->kappa failed at {lam}")
        rt.record(p.to_kappa().to_P() == p, f"P->kappa->P failed at {lam}")
    results.append(rt)

    route = CheckResult("product route equivalence (kappa direct vs P transport)")
    for a, b in pairs:
        direct = SCElement.kappa(a) * SCElement.kappa(b)
        transported = (SCElement.kappa(a).to_P() * SCElement.kappa(b).to_P()).to_kappa()
        route.record(direct == transported, f"routes disagree at {a} * {b}")
    results.append(route)

    assoc = CheckResult("associativity")
    for basis in BASES:
        for a, b, c in triples:
            x, y, z = (SCElement.symbol(basis, s) for s in (a, b, c))
            assoc.record((x * y) * z == x * (y * z), f"{basis}: ({a}*{b})*{c}")
    results.append(assoc)

    unit = CheckResult("unit laws")
    for basis in BASES:
        one = SCElement.unit(family, fld, basis)
        for lam in symbols:
            x = SCElement.symbol(basis, lam)
            unit.record(one * x == x and x * one == x, f"{basis}: unit law at {lam}")
    results.append(unit)

    coassoc = CheckResult("coassociativity")
    for basis in BASES:
        for lam in symbols:
            delta = SCElement.symbol(basis, lam).coproduct()
            left: dict = {}
            right: dict = {}
            for (u, v), c in delta.terms.items():
                for (a, b), d in SCElement.symbol(basis, u).coproduct().terms.items():
                    key = (a, b, v)
                    left[key] = left.get(key, Fraction(0)) + c * d
                for (a, b), d in SCElement.symbol(basis, v).coproduct().terms.items():
                    key = (u, a, b)
                    right[key] = right.get(key, Fraction(0)) + c * d
            left = {k: v for k, v in left.items() if v}
            right = {k: v for k, v in right.items() if v}
            coassoc.record(left == right, f"{basis}: coassociativity at {lam}")
    results.append(coassoc)

    counit = CheckResult("counit laws")
    for basis in BASES:
        for lam in symbols:
            x = SCElement.symbol(basis, lam)
            delta = x.coproduct()
            left = SCElement.zero(family, fld, basis)
            right = SCElement.zero(family, fld, basis)
            for (u, v), c in delta.terms.items():
                left = left + (c * SCElement.symbol(basis, u).counit()) * SCElement.symbol(basis, v)
                right = right + (c * SCElement.symbol(basis, v).counit()) * SCElement.symbol(basis, u)
            counit.record(left == x and right == x, f"{basis}: counit law at {lam}")
    results.append(counit)

    compat = CheckResult("coproduct is an algebra map")
    for basis in BASES:
        for a, b in pairs:
            x, y = SCElement.symbol(basis, a), SCElement.symbol(basis, b)
            compat.record(
                (x * y).coproduct() == x.coproduct() * y.coproduct(),
                f"{basis}: compatibility at {a} * {b}",
            )
    results.append(compat)

    antipode = CheckResult("antipode identities")
    for basis in BASES:
        for lam in symbols:
            x = SCElement.symbol(basis, lam)
            delta = x.coproduct()
            left = SCElement.zero(family, fld, basis)
            right = SCElement.zero(family, fld, basis)
            for (u, v), c in delta.terms.items():
                left = left + c * (
                    SCElement.symbol(basis, u).antipode() * SCElement.symbol(basis, v)
                )
                right = right + c * (
                    SCElement.symbol(basis, u) * SCElement.symbol(basis, v).antipode()
                )
            target = x.counit() * SCElement.unit(family, fld, basis)
            antipode.record(
                left == target and right == target, f"{basis}: antipode identity at {lam}"
            )
    results.append(antipode)

    grading = CheckResult("grading")
    for a, b in pairs:
        prod = SCElement.kappa(a) * SCElement.kappa(b)
        grading.record(
            all(lam.n == a.n + b.n for lam in prod.terms),
            f"product grade at {a} * {b}",
        )
    for lam in symbols:
        delta = SCElement.kappa(lam).coproduct()
        grading.record(
            all(u.n + v.n == lam.n for (u, v) in delta.terms),
            f"coproduct grade at {lam}",
        )
    results.append(grading)

    structure = CheckResult("nonnegative integer structure constants")
    for a, b in pairs:
        for basis in BASES:
            prod = SCElement.symbol(basis, a) * SCElement.symbol(basis, b)
            structure.record(
                all(c.denominator == 1 and c > 0 for c in prod.terms.values()),
                f"{basis}: product constants at {a} * {b}",
            )
    for lam in symbols:
        for basis in BASES:
            delta = SCElement.symbol(basis, lam).coproduct()
            structure.record(
                all(c.denominator == 1 and c > 0 for c in delta.terms.values()),
                f"{basis}: coproduct constants at {lam}",
            )
    results.append(structure)

    terms = CheckResult("coproduct term count is 2^components")
    for lam in symbols:
        delta = SCElement.kappa(lam).coproduct()
        expected = Fraction(2 ** len(lam.components()))
        terms.record(
            delta.term_count() == expected,
            f"term count at {lam}: {delta.term_count()} != {expected}",
        )
    results.append(terms)

    return VerifyReport(family, fld.q, n_max, results)
