"""Labelled arc partitions of the signed ground set, families D, C and B.

The ground set of family D/C at size n is {1..n, -n..-1} in the total order
1 < ... < n < -n < ... < -1; family B inserts 0 between n and -n.  A partition
is stored by its plus half only (left endpoint positive and not past the
midpoint); the mirrored half is materialized on demand with the family's label
rule, which keeps the two halves from ever drifting apart.

Families differ only in which arcs may exist and in the mirror label sign:

* D: no arc may join i to -i.
* C: arcs (i, -i) are allowed and are their own mirror; mirrors of crossing
  arcs (i, -j) keep their label (so the matrix lands in the symplectic
  algebra), mirrors of arcs inside the positive block flip it.
* B: ground set gains 0; at most one arc pair (i, 0), (0, -i) (enforced by
  endpoint uniqueness); only validation and enumeration are supported.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, NamedTuple

from .ffield import FieldElement, FieldSpec

__all__ = [
    "FAMILIES",
    "LabelledArc",
    "LabelledPartition",
    "PartitionError",
    "Violation",
    "ground_set",
    "pos",
    "index_at",
    "mirror_arc",
    "validate_arcs",
    "enumerate_partitions",
    "count_partitions",
    "superset_closure",
    "arc_extensions",
    "concat",
    "partition_sort_key",
]

FAMILIES = ("D", "C", "B")


class PartitionError(ValueError):
    """Raised when an arc set fails to be a valid labelled partition."""

    def __init__(self, violations):
        self.violations = tuple(violations)
        super().__init__("; ".join(str(v) for v in self.violations))


@dataclass(frozen=True)
class Violation:
    kind: str
    arcs: tuple

    def __str__(self):
        arcs = ", ".join(f"{a.i}~{a.j}" for a in self.arcs)
        return f"{self.kind}: {arcs}"


class LabelledArc(NamedTuple):
    i: int
    j: int
    label: FieldElement


def ground_set(family: str, n: int) -> tuple[int, ...]:
    if family == "B":
        return tuple(range(1, n + 1)) + (0,) + tuple(range(-n, 0))
    return tuple(range(1, n + 1)) + tuple(range(-n, 0))


def pos(k: int, n: int, family: str = "D") -> int:
    """1-based position of a signed index in the total order."""
    if k > 0:
        return k
    if family == "B":
        return n + 1 if k == 0 else 2 * n + 2 + k
    if k == 0:
        raise ValueError("index 0 only exists in family B")
    return 2 * n + 1 + k


def index_at(t: int, n: int, family: str = "D") -> int:
    """Inverse of pos: the signed index sitting at 1-based position t."""
    if t <= n:
        return t
    if family == "B":
        return 0 if t == n + 1 else t - (2 * n + 2)
    return t - (2 * n + 1)


def mirror_arc(arc: LabelledArc, family: str) -> LabelledArc:
    i, j, lab = arc
    if family == "C":
        if j == -i:
            return arc
        if i > 0 and j < 0:
            # crossing-block arcs keep their label in the symplectic family
            return LabelledArc(-j, -i, lab)
    return LabelledArc(-j, -i, -lab)


def _is_plus_position(i: int, j: int, family: str) -> bool:
    if i < 1:
        return False
    if j == -i:
        return family == "C"
    if j == 0:
        return family == "B"
    return j > i or (j < 0 and -j > i)


def _arc_endpoints(arc: LabelledArc, family: str):
    """Rows and columns consumed by an arc together with its mirror."""
    m = mirror_arc(arc, family)
    if m == arc:
        return {arc.i}, {arc.j}
    return {arc.i, m.i}, {arc.j, m.j}


def validate_arcs(arcs, family: str, n: int, field: FieldSpec):
    """Check a full arc set; returns the list of violations (empty if valid)."""
    if family not in FAMILIES:
        raise ValueError(f"unknown family {family!r}")
    violations = []
    ground = set(ground_set(family, n))
    arcs = list(arcs)
    for a in arcs:
        if a.i not in ground or a.j not in ground:
            violations.append(Violation("index-out-of-range", (a,)))
            continue
        if pos(a.i, n, family) >= pos(a.j, n, family):
            violations.append(Violation("endpoints-not-increasing", (a,)))
        if a.j == -a.i and family != "C":
            violations.append(Violation("diagonal-arc-forbidden", (a,)))
        if not isinstance(a.label, FieldElement) or a.label.spec != field:
            violations.append(Violation("label-not-in-field", (a,)))
        elif a.label.code == 0:
            violations.append(Violation("label-zero", (a,)))
    if violations:
        return violations

    arcset = set(arcs)
    if len(arcset) != len(arcs):
        violations.append(Violation("duplicate-arc", tuple(arcs)))
    by_pos = {}
    for a in arcset:
        if (a.i, a.j) in by_pos:
            violations.append(Violation("duplicate-position", (by_pos[(a.i, a.j)], a)))
        by_pos[(a.i, a.j)] = a
    for a in arcset:
        m = mirror_arc(a, family)
        if m not in arcset:
            violations.append(Violation("mirror-missing", (a,)))
    rows, cols = {}, {}
    for a in sorted(arcset, key=lambda a: (pos(a.i, n, family), pos(a.j, n, family))):
        if a.i in rows:
            violations.append(Violation("shared-left-endpoint", (rows[a.i], a)))
        rows[a.i] = a
        if a.j in cols:
            violations.append(Violation("shared-right-endpoint", (cols[a.j], a)))
        cols[a.j] = a
    return violations


@dataclass(frozen=True)
class LabelledPartition:
    """A labelled partition, canonically stored via its plus half."""

    family: str
    n: int
    field: FieldSpec
    plus: tuple[LabelledArc, ...]

    @staticmethod
    def _sorted(plus, n, family):
        return tuple(sorted(plus, key=lambda a: (pos(a.i, n, family), pos(a.j, n, family), a.label.code)))

    @classmethod
    def from_plus(cls, family: str, n: int, field: FieldSpec, plus: Iterable[LabelledArc]):
        plus = [LabelledArc(*a) for a in plus]
        bad = [a for a in plus if not _is_plus_position(a.i, a.j, family)]
        if bad:
            raise PartitionError([Violation("not-plus-normal", (a,)) for a in bad])
        full = set(plus) | {mirror_arc(a, family) for a in plus}
        return cls.from_arcs(family, n, field, full)

    @classmethod
    def from_arcs(cls, family: str, n: int, field: FieldSpec, arcs: Iterable[LabelledArc]):
        """Validate a full arc set and return the canonical partition."""
        arcs = {LabelledArc(*a) for a in arcs}
        violations = validate_arcs(arcs, family, n, field)
        if violations:
            raise PartitionError(violations)
        plus = [a for a in arcs if _is_plus_position(a.i, a.j, family)]
        return cls(family, n, field, cls._sorted(plus, n, family))

    @classmethod
    def empty(cls, family: str, n: int, field: FieldSpec):
        return cls(family, n, field, ())

    # -- basic views -----------------------------------------------------------

    def full_arcs(self) -> tuple[LabelledArc, ...]:
        out = list(self.plus)
        for a in self.plus:
            m = mirror_arc(a, self.family)
            if m != a:
                out.append(m)
        return tuple(sorted(out, key=lambda a: (pos(a.i, self.n, self.family), pos(a.j, self.n, self.family))))

    def arc_positions(self) -> frozenset:
        return frozenset((a.i, a.j) for a in self.full_arcs())

    def is_empty(self) -> bool:
        return not self.plus

    @property
    def grade(self) -> int:
        return self.n

    def __le__(self, other: "LabelledPartition") -> bool:
        """Arc-containment order on the full arc sets."""
        return set(self.full_arcs()) <= set(other.full_arcs())

    # -- restriction / standardization ------------------------------------------

    def splits_cleanly(self, A) -> bool:
        A = set(A)
        for a in self.plus:
            ends = {abs(a.i), abs(a.j)}
            if not (ends <= A or ends.isdisjoint(A)):
                return False
        return True

    def restrict_standardize(self, A):
        """Restrict to +-A and +-A^c, relabel both order-preservingly.

        Returns (part_on_A, part_on_Ac, splits_cleanly).
        """
        if self.family == "B":
            raise ValueError("restriction is not defined for family B")
        A = sorted(set(A))
        if any(x < 1 or x > self.n for x in A):
            raise ValueError(f"A = {A} is not a subset of 1..{self.n}")
        comp = [x for x in range(1, self.n + 1) if x not in set(A)]
        return (
            self._restricted(A),
            self._restricted(comp),
            self.splits_cleanly(A),
        )

    def _restricted(self, members) -> "LabelledPartition":
        st = {m: t for t, m in enumerate(sorted(members), start=1)}
        plus = []
        for a in self.plus:
            if abs(a.i) in st and abs(a.j) in st:
                i = st[a.i]
                j = st[a.j] if a.j > 0 else -st[-a.j]
                plus.append(LabelledArc(i, j, a.label))
        return LabelledPartition(
            self.family, len(members), self.field, self._sorted(plus, len(members), self.family)
        )

    def shift_up(self, k: int) -> "LabelledPartition":
        """Re-embed into the top-right block after k positions."""
        if self.family == "B":
            raise ValueError("shifting is not defined for family B")
        plus = []
        for a in self.plus:
            j = a.j + k if a.j > 0 else a.j - k
            plus.append(LabelledArc(a.i + k, j, a.label))
        n = self.n + k
        return LabelledPartition(self.family, n, self.field, self._sorted(plus, n, self.family))

    def components(self) -> tuple[frozenset, ...]:
        """Connected components of {1..n} under i ~ |j| for each plus arc."""
        parent = list(range(self.n + 1))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for a in self.plus:
            x, y = find(abs(a.i)), find(abs(a.j))
            if x != y:
                parent[x] = y
        groups = {}
        for v in range(1, self.n + 1):
            groups.setdefault(find(v), []).append(v)
        return tuple(sorted((frozenset(g) for g in groups.values()), key=min))

    # -- serialization -----------------------------------------------------------

    def to_json(self) -> dict:
        doc = {
            "family": self.family,
            "n": self.n,
            "q": self.field.q,
            "plus": [[a.i, a.j, a.label.code] for a in self.plus],
        }
        if self.field.r > 1:
            doc["modulus"] = list(self.field.modulus)
        return doc

    @classmethod
    def from_json(cls, doc: dict, field: FieldSpec | None = None) -> "LabelledPartition":
        if field is None:
            field = FieldSpec.from_q(doc["q"], doc.get("modulus"))
        elif field.q != doc["q"]:
            raise ValueError(f"document says q={doc['q']}, supplied field has q={field.q}")
        plus = [LabelledArc(i, j, field.element(code)) for i, j, code in doc["plus"]]
        return cls.from_plus(doc["family"], doc["n"], field, plus)

    def __str__(self):
        if not self.plus:
            return f"{self.family}{self.n}:{{}}"
        arcs = ", ".join(f"{a.i}~{a.j}:{a.label.code}" for a in self.plus)
        return f"{self.family}{self.n}:{{{arcs}}}"


def _candidate_positions(family: str, n: int):
    """All plus-normal arc positions at size n, in scan order."""
    out = []
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            out.append((i, j))
        if family == "B":
            out.append((i, 0))
        if family == "C":
            out.append((i, -i))
        for j in range(-n, -i):
            out.append((i, j))
    return sorted(out, key=lambda ij: (pos(ij[0], n, family), pos(ij[1], n, family)))


def _position_endpoints(i, j, family, field):
    probe = LabelledArc(i, j, field.one())
    return _arc_endpoints(probe, family)


def enumerate_partitions(family: str, n: int, field: FieldSpec) -> Iterator[LabelledPartition]:
    """Every valid partition exactly once, in a fixed backtracking order."""
    if family not in FAMILIES:
        raise ValueError(f"unknown family {family!r}")
    candidates = _candidate_positions(family, n)
    footprints = [_position_endpoints(i, j, family, field) for i, j in candidates]
    labels = list(field.nonzero_elements())
    chosen: list[LabelledArc] = []
    used_rows: set[int] = set()
    used_cols: set[int] = set()

    def walk(start: int) -> Iterator[LabelledPartition]:
        yield LabelledPartition(family, n, field, tuple(chosen))
        for idx in range(start, len(candidates)):
            rows, cols = footprints[idx]
            if used_rows & rows or used_cols & cols:
                continue
            i, j = candidates[idx]
            used_rows.update(rows)
            used_cols.update(cols)
            for lab in labels:
                chosen.append(LabelledArc(i, j, lab))
                yield from walk(idx + 1)
                chosen.pop()
            used_rows.difference_update(rows)
            used_cols.difference_update(cols)

    yield from walk(0)


def count_partitions(family: str, n: int, field: FieldSpec) -> int:
    return sum(1 for _ in enumerate_partitions(family, n, field))


def arc_extensions(base: LabelledPartition, positions) -> Iterator[LabelledPartition]:
    """All valid partitions obtained from ``base`` by adding labelled arcs at
    any compatible subset of the given plus positions, each exactly once."""
    family, n, field = base.family, base.n, base.field
    used_rows: set[int] = set()
    used_cols: set[int] = set()
    for a in base.plus:
        rows, cols = _arc_endpoints(a, family)
        used_rows.update(rows)
        used_cols.update(cols)
    taken = {(a.i, a.j) for a in base.plus}
    candidates = [ij for ij in positions if ij not in taken]
    footprints = [_position_endpoints(i, j, family, field) for i, j in candidates]
    labels = list(field.nonzero_elements())
    chosen = list(base.plus)

    def walk(start: int) -> Iterator[LabelledPartition]:
        yield LabelledPartition(family, n, field, LabelledPartition._sorted(chosen, n, family))
        for idx in range(start, len(candidates)):
            rows, cols = footprints[idx]
            if used_rows & rows or used_cols & cols:
                continue
            i, j = candidates[idx]
            used_rows.update(rows)
            used_cols.update(cols)
            for lab in labels:
                chosen.append(LabelledArc(i, j, lab))
                yield from walk(idx + 1)
                chosen.pop()
            used_rows.difference_update(rows)
            used_cols.difference_update(cols)

    yield from walk(0)


def superset_closure(lam: LabelledPartition) -> Iterator[LabelledPartition]:
    """All valid partitions whose arc set contains lam's, each exactly once."""
    yield from arc_extensions(lam, _candidate_positions(lam.family, lam.n))


def concat(lam: LabelledPartition, mu: LabelledPartition) -> LabelledPartition:
    """lam on the first block joined with mu shifted past it."""
    if (lam.family, lam.field) != (mu.family, mu.field):
        raise ValueError("concat needs matching family and field")
    shifted = mu.shift_up(lam.n)
    n = lam.n + mu.n
    return LabelledPartition.from_plus(lam.family, n, lam.field, tuple(lam.plus) + tuple(shifted.plus))


def partition_sort_key(lam: LabelledPartition):
    """A deterministic order on partitions of one context."""
    return tuple(
        (pos(a.i, lam.n, lam.family), pos(a.j, lam.n, lam.family), a.label.code)
        for a in lam.plus
    )
