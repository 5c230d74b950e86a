"""Brute-force ground truth at desk scale.

Enumerates the full unipotent group of type D (or C) from its (P, Q) block
parametrization, partitions it into superclasses by reducing each element's
algebra partner to canonical form, and evaluates inner products and
group-level restriction maps.  Classes are never derived from the character
formula, so the two routes can disagree -- and such a disagreement would be
detected.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from .ffield import CycValue, FieldSpec
from .matrixrep import (
    UTMatrix,
    _assemble,
    _jconj,
    _matmul,
    _transpose,
    partition_of_matrix,
    verge_reduce,
    x_of_partition,
    x_to_y,
)
from .partitions import LabelledPartition, partition_sort_key, pos

__all__ = [
    "DEFAULT_BUDGET",
    "BudgetExceeded",
    "GroupTable",
    "ClassFunction",
    "group_order",
    "enumerate_group",
    "superclass_partition",
    "class_of_element",
    "kappa_function",
    "inner_product",
    "embed_pair",
    "restrict_eval",
]

DEFAULT_BUDGET = 10**6


class BudgetExceeded(RuntimeError):
    """The requested enumeration is larger than the configured budget."""

    def __init__(self, required: int, budget: int, what: str):
        self.required = required
        self.budget = budget
        super().__init__(f"{what} needs {required} elements, budget is {budget}")


def group_order(family: str, n: int, q: int) -> int:
    if family == "D":
        return q ** (n * (n - 1))
    if family == "C":
        return q ** (n * n)
    raise ValueError(f"no matrix group implemented for family {family!r}")


@dataclass
class GroupTable:
    """One group (family, n, q): its elements and, once classified, its
    superclass census."""

    family: str
    n: int
    field: FieldSpec
    elements: tuple
    class_of: tuple | None = None
    class_sizes: dict | None = None
    labels: tuple | None = None

    @property
    def order(self) -> int:
        return len(self.elements)

    def context(self):
        return (self.family, self.n, self.field)

    def representative(self, lam: LabelledPartition) -> UTMatrix:
        return x_of_partition(lam)

    def census_json(self) -> dict:
        if self.labels is None:
            raise ValueError("table has not been classified yet")
        return {
            "family": self.family,
            "n": self.n,
            "q": self.field.q,
            "group_order": self.order,
            "classes": [
                {
                    "label": lam.to_json(),
                    "size": self.class_sizes[lam],
                    "representative": x_of_partition(lam).to_json(),
                }
                for lam in self.labels
            ],
        }


def _q_block_free_cells(n: int, family: str):
    """Cells of the top-right block determining the rest under the J-symmetry."""
    free = []
    for r in range(1, n + 1):
        for c in range(1, n + 1):
            pr, pc = n + 1 - c, n + 1 - r
            if (r, c) < (pr, pc):
                free.append((r, c))
            elif (r, c) == (pr, pc) and family == "C":
                free.append((r, c))
    return free


def enumerate_group(family: str, n: int, field: FieldSpec, budget: int = DEFAULT_BUDGET) -> GroupTable:
    """Every element of the unipotent group, once, from the (P, Q) blocks."""
    if family not in ("D", "C"):
        raise ValueError(f"no matrix group implemented for family {family!r}")
    order = group_order(family, n, field.q)
    if order > budget:
        raise BudgetExceeded(order, budget, f"enumerating U^{family}_{2 * n}({field.q})")
    f = field
    q = f.q
    sign = -1 if family == "D" else 1
    p_cells = [(r, c) for r in range(n) for c in range(r + 1, n)]
    q_cells = _q_block_free_cells(n, family)
    elements = []
    for p_vals in itertools.product(range(q), repeat=len(p_cells)):
        p_block = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
        for (r, c), v in zip(p_cells, p_vals):
            p_block[r][c] = v
        p_inv_t = _transpose(UTMatrix(f, p_block).inverse_unitriangular().rows)
        br = _jconj(p_inv_t)
        for q_vals in itertools.product(range(q), repeat=len(q_cells)):
            q_block = [[0] * n for _ in range(n)]
            for (r, c), v in zip(q_cells, q_vals):
                q_block[r - 1][c - 1] = v
                mr, mc = n + 1 - c, n + 1 - r
                if (mr, mc) != (r, c):
                    q_block[mr - 1][mc - 1] = v if sign > 0 else f.neg(v)
            pq = _matmul(p_block, q_block, f)
            elements.append(_assemble(p_block, pq, br, f))
    if len(elements) != order:
        raise AssertionError(f"parametrization bug: {len(elements)} != {order}")
    return GroupTable(family, n, field, tuple(elements))


def class_of_element(x: UTMatrix, family: str = "D") -> LabelledPartition:
    """Superclass label of a group element: reduce its algebra partner."""
    return partition_of_matrix(verge_reduce(x_to_y(x, family)), family)


def superclass_partition(table: GroupTable) -> GroupTable:
    """Classify every element; the reduced partner must be of arc form."""
    class_of = tuple(class_of_element(x, table.family) for x in table.elements)
    sizes: dict = {}
    for lam in class_of:
        sizes[lam] = sizes.get(lam, 0) + 1
    labels = tuple(sorted(sizes, key=partition_sort_key))
    return GroupTable(
        table.family, table.n, table.field, table.elements, class_of, sizes, labels
    )


@dataclass
class ClassFunction:
    """A function on superclass labels with values in Q(zeta_p)."""

    family: str
    n: int
    field: FieldSpec
    values: dict = dc_field(default_factory=dict)

    def __call__(self, lam: LabelledPartition) -> CycValue:
        if lam not in self.values:
            raise KeyError(f"no value recorded for {lam}")
        return self.values[lam]

    def context(self):
        return (self.family, self.n, self.field)


def kappa_function(lam: LabelledPartition, labels) -> ClassFunction:
    """The superclass indicator function as a ClassFunction."""
    p = lam.field.p
    one, zero = CycValue.one(p), CycValue.zero(p)
    values = {mu: (one if mu == lam else zero) for mu in labels}
    return ClassFunction(lam.family, lam.n, lam.field, values)


def inner_product(f: ClassFunction, g: ClassFunction, table: GroupTable) -> CycValue:
    """(1/|G|) * sum over classes of size * f * conj(g), exact."""
    if f.context() != g.context() or f.context() != table.context():
        raise ValueError("inner_product needs matching (family, n, q) contexts")
    if table.class_sizes is None:
        raise ValueError("table has not been classified yet")
    p = table.field.p
    acc = CycValue.zero(p)
    for lam, size in table.class_sizes.items():
        acc = acc + f(lam) * g(lam).conj() * size
    return acc * Fraction(1, table.order)


def embed_pair(u1: UTMatrix, u2: UTMatrix, A, n: int, family: str, field: FieldSpec) -> UTMatrix:
    """st_J^{-1}: place u1 on the signed copy of A and u2 on its complement.

    u1 has size 2|A|, u2 size 2|A^c|; the result is the block-embedded element
    of the big group, identity elsewhere.
    """
    A = sorted(set(A))
    comp = [x for x in range(1, n + 1) if x not in set(A)]
    rows = [[1 if i == j else 0 for j in range(2 * n)] for i in range(2 * n)]

    def write(u: UTMatrix, members):
        k = len(members)
        for a in range(2 * k):
            sa = a + 1 if a < k else a - 2 * k
            ta = members[sa - 1] if sa > 0 else -members[-sa - 1]
            for b in range(2 * k):
                if a == b:
                    continue
                v = u.rows[a][b]
                if v:
                    sb = b + 1 if b < k else b - 2 * k
                    tb = members[sb - 1] if sb > 0 else -members[-sb - 1]
                    rows[pos(ta, n, family) - 1][pos(tb, n, family) - 1] = v

    write(u1, A)
    write(u2, comp)
    return UTMatrix(field, rows)


def restrict_eval(f: ClassFunction, A, table_a: GroupTable, table_ac: GroupTable) -> dict:
    """Evaluate a superclass function through the standardization embedding.

    Returns {(mu, nu): value} over the superclass labels of the product group
    U_{2|A|} x U_{2|A^c|}, evaluating f at the embedded representative of each
    pair-class.
    """
    A = sorted(set(A))
    n = table_a.n + table_ac.n
    if f.n != n:
        raise ValueError(f"f lives on n={f.n}, tables give n={n}")
    if len(A) != table_a.n:
        raise ValueError(f"|A|={len(A)} does not match the first table (n={table_a.n})")
    if table_a.labels is None or table_ac.labels is None:
        raise ValueError("factor tables must be classified first")
    family, fld = f.family, f.field
    out = {}
    for mu in table_a.labels:
        x_mu = x_of_partition(mu)
        for nu in table_ac.labels:
            x_nu = x_of_partition(nu)
            big = embed_pair(x_mu, x_nu, A, n, family, fld)
            out[(mu, nu)] = f(class_of_element(big, family))
    return out
