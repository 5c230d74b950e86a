"""The supercharacter value formula, degrees, and full character tables.

Values live in Q(zeta_p).  A character chi^lambda vanishes on the class of mu
whenever some arc of lambda has an endpoint-sharing arc of mu strictly under
it; otherwise the value is the degree divided by q to a nesting count, times a
product of additive-character values over coinciding arcs.

The nesting count has two candidate readings (an arc of mu nested below
several arcs of lambda counted once, or once per nesting pair); they agree up
to n = 3 and the once-per-arc reading is the default, with the other behind
the ``nesting`` switch.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from fractions import Fraction

from .ffield import CycValue, FieldSpec, theta
from .partitions import LabelledPartition, concat, index_at, pos

__all__ = [
    "CharTable",
    "degree_exponent",
    "degree",
    "chi_value",
    "chi_class_function",
    "char_table",
    "degree_product_check",
]

NESTING_MODES = ("arcs", "pairs")


def _require_family_d(lam: LabelledPartition):
    if lam.family != "D":
        raise ValueError("the character formula is implemented for family D only")


def degree_exponent(lam: LabelledPartition) -> int:
    """Sum over the plus half of pos(j) - pos(i) - 1."""
    _require_family_d(lam)
    n, fam = lam.n, lam.family
    return sum(pos(a.j, n, fam) - pos(a.i, n, fam) - 1 for a in lam.plus)


def degree(lam: LabelledPartition) -> CycValue:
    """chi^lambda(1), a nonnegative power of q."""
    return CycValue.rational(lam.field.p, Fraction(lam.field.q) ** degree_exponent(lam))


def chi_value(lam: LabelledPartition, mu: LabelledPartition, nesting: str = "arcs") -> CycValue:
    """chi^lambda evaluated on the superclass of mu."""
    _require_family_d(lam)
    if (lam.family, lam.n, lam.field) != (mu.family, mu.n, mu.field):
        raise ValueError("chi_value needs lambda and mu in the same context")
    if nesting not in NESTING_MODES:
        raise ValueError(f"nesting must be one of {NESTING_MODES}")
    n, fam = lam.n, lam.family
    p = lam.field.p
    mu_positions = {(a.i, a.j) for a in mu.full_arcs()}

    # vanishing: an arc of mu sharing an endpoint strictly under an arc of lambda
    for a in lam.plus:
        pi, pk = pos(a.i, n, fam), pos(a.j, n, fam)
        for t in range(pi + 1, pk):
            l = index_at(t, n, fam)
            if (a.i, l) in mu_positions or (l, a.j) in mu_positions:
                return CycValue.zero(p)

    nested = 0
    lam_spans = [(pos(a.i, n, fam), pos(a.j, n, fam)) for a in lam.plus]
    for b in mu.plus:
        pk, pl = pos(b.i, n, fam), pos(b.j, n, fam)
        hits = sum(1 for (pi, pj) in lam_spans if pi < pk and pl < pj)
        if hits:
            nested += hits if nesting == "pairs" else 1

    value = CycValue.rational(p, Fraction(lam.field.q) ** (degree_exponent(lam) - nested))
    lam_by_pos = {(a.i, a.j): a.label for a in lam.plus}
    for b in mu.plus:
        a_label = lam_by_pos.get((b.i, b.j))
        if a_label is not None:
            value = value * theta(a_label * b.label)
    return value


@dataclass
class CharTable:
    """Square array chi^lambda(x_mu) over one (family, n, q)."""

    family: str
    n: int
    field: FieldSpec
    labels: tuple
    values: tuple
    class_sizes: dict | None = None

    def value(self, lam, mu) -> CycValue:
        return self.values[self.labels.index(lam)][self.labels.index(mu)]

    def row(self, lam) -> tuple:
        return self.values[self.labels.index(lam)]

    def to_json(self) -> dict:
        doc = {
            "family": self.family,
            "n": self.n,
            "q": self.field.q,
            "labels": [lam.to_json() for lam in self.labels],
            "values": [[v.json_cell() for v in row] for row in self.values],
        }
        if self.class_sizes is not None:
            doc["class_sizes"] = [self.class_sizes[lam] for lam in self.labels]
        return doc

    def to_csv(self) -> str:
        out = io.StringIO()
        writer = csv.writer(out, lineterminator="\n")
        names = [str(lam) for lam in self.labels]
        writer.writerow(["chi\\class"] + names)
        for lam, row in zip(self.labels, self.values):
            cells = []
            for v in row:
                cell = v.json_cell()
                cells.append(f"{cell['scale']}*{cell['coeffs']}")
            writer.writerow([str(lam)] + cells)
        return out.getvalue()


def chi_class_function(lam: LabelledPartition, labels, nesting: str = "arcs"):
    from .oracle import ClassFunction

    values = {mu: chi_value(lam, mu, nesting) for mu in labels}
    return ClassFunction(lam.family, lam.n, lam.field, values)


def char_table(
    family: str,
    n: int,
    field: FieldSpec,
    class_sizes: dict | None = None,
    nesting: str = "arcs",
) -> CharTable:
    from .partitions import enumerate_partitions

    if family != "D":
        raise ValueError("character tables are implemented for family D only")
    labels = tuple(enumerate_partitions(family, n, field))
    values = tuple(
        tuple(chi_value(lam, mu, nesting) for mu in labels) for lam in labels
    )
    return CharTable(family, n, field, labels, values, class_sizes)


def degree_product_check(lam: LabelledPartition, mu: LabelledPartition):
    """Both sides of the degree identity for a product, plus the exponent count.

    alpha counts the arcs of lambda's plus half that reach past its midpoint;
    embedding lambda into the larger ground set raises each such arc's degree
    exponent by 2m, so the scaled product deg(lam)*deg(mu)*q^(2*m*alpha) must
    equal the degree of the concatenation.  Returns (scaled product,
    concatenated degree, alpha).
    """
    _require_family_d(lam)
    _require_family_d(mu)
    alpha = sum(1 for a in lam.plus if a.j < 0)
    m = mu.n
    q = lam.field.q
    lhs = degree(lam) * degree(mu) * (Fraction(q) ** (2 * m * alpha))
    rhs = degree(concat(lam, mu))
    return lhs, rhs, alpha
