"""Supercharacter theory of unipotent upper-triangular groups of type D
(with type C fully supported and type B enumeration), over F_q with q odd.

Everything is exact: finite-field arithmetic, cyclotomic character values,
and rational Hopf-algebra coefficients.  The ``oracle`` module provides
brute-force group-level ground truth at desk scale.
"""

from .ffield import CharTwoError, CycValue, FieldElement, FieldError, FieldSpec, theta
from .partitions import (
    LabelledArc,
    LabelledPartition,
    PartitionError,
    count_partitions,
    enumerate_partitions,
    superset_closure,
)
from .matrixrep import UTMatrix, membership, verge_reduce, x_of_partition, x_to_y, y_of_partition
from .oracle import (
    BudgetExceeded,
    ClassFunction,
    GroupTable,
    enumerate_group,
    inner_product,
    restrict_eval,
    superclass_partition,
)
from .superchar import CharTable, char_table, chi_value, degree, degree_product_check
from .hopf import SCElement, TensorElement, verify_bialgebra

__all__ = [
    "CharTwoError",
    "CycValue",
    "FieldElement",
    "FieldError",
    "FieldSpec",
    "theta",
    "LabelledArc",
    "LabelledPartition",
    "PartitionError",
    "count_partitions",
    "enumerate_partitions",
    "superset_closure",
    "UTMatrix",
    "membership",
    "verge_reduce",
    "x_of_partition",
    "x_to_y",
    "y_of_partition",
    "BudgetExceeded",
    "ClassFunction",
    "GroupTable",
    "enumerate_group",
    "inner_product",
    "restrict_eval",
    "superclass_partition",
    "CharTable",
    "char_table",
    "chi_value",
    "degree",
    "degree_product_check",
    "SCElement",
    "TensorElement",
    "verify_bialgebra",
]
