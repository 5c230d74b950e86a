"""Command-line front end: enumeration, canonical forms, character tables,
Hopf operations, verification suites, and arc-diagram rendering.

Every command is deterministic given its flags (and seed, where one applies);
failures print a machine-readable error object to stderr and exit nonzero.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from fractions import Fraction

from .ffield import CharTwoError, FieldError, FieldSpec
from .hopf import HopfError, SCElement, TensorElement, verify_bialgebra
from .matrixrep import (
    UTMatrix,
    is_verge,
    partition_of_matrix,
    random_strictly_upper,
    random_translate,
    verge_reduce,
)
from .oracle import (
    DEFAULT_BUDGET,
    BudgetExceeded,
    enumerate_group,
    group_order,
    inner_product,
    superclass_partition,
)
from .partitions import LabelledPartition, PartitionError, enumerate_partitions
from .render import svg_arc_diagram
from .superchar import char_table, chi_class_function, degree

_ERRORS = (
    FieldError,
    CharTwoError,
    PartitionError,
    HopfError,
    BudgetExceeded,
    ValueError,
    KeyError,
    OSError,
    json.JSONDecodeError,
)


def _field_from_args(args) -> FieldSpec:
    modulus = None
    if getattr(args, "modulus", None):
        modulus = [int(c) for c in args.modulus.split(",")]
    return FieldSpec.from_q(args.q, modulus)


def _budget(args) -> int:
    if getattr(args, "budget", None):
        return args.budget
    env = os.environ.get("SCD_BUDGET")
    return int(env) if env else DEFAULT_BUDGET


def _load(path: str) -> dict:
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def _emit(text: str, out: str | None):
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")


def _emit_json(doc, out: str | None):
    _emit(json.dumps(doc, indent=2, sort_keys=True) + "\n", out)


def cmd_enumerate(args) -> int:
    fld = _field_from_args(args)
    stream = enumerate_partitions(args.family, args.n, fld)
    if args.count:
        _emit(str(sum(1 for _ in stream)) + "\n", args.out)
        return 0
    doc = {
        "family": args.family,
        "n": args.n,
        "q": fld.q,
        "partitions": [lam.to_json() for lam in stream],
    }
    _emit_json(doc, args.out)
    return 0


def cmd_reduce(args) -> int:
    mat = UTMatrix.from_json(_load(args.infile))
    reduced = verge_reduce(mat)
    doc = {"canonical": reduced.to_json(), "partition": None}
    if is_verge(reduced):
        try:
            doc["partition"] = partition_of_matrix(reduced, args.family).to_json()
        except (PartitionError, ValueError):
            pass
    _emit_json(doc, args.out)
    return 0


def cmd_table(args) -> int:
    fld = _field_from_args(args)
    sizes = None
    if args.family == "D" and group_order("D", args.n, fld.q) <= _budget(args):
        sizes = superclass_partition(enumerate_group("D", args.n, fld, _budget(args))).class_sizes
    table = char_table(args.family, args.n, fld, sizes, nesting=args.nesting)
    if args.format == "csv":
        _emit(table.to_csv(), args.out)
    else:
        _emit_json(table.to_json(), args.out)
    return 0


def cmd_hopf(args) -> int:
    x = SCElement.from_json(_load(args.infile))
    if args.op == "product":
        if not args.infile2:
            raise ValueError("product needs --in2")
        y = SCElement.from_json(_load(args.infile2))
        _emit_json((x * y).to_json(), args.out)
    elif args.op == "coproduct":
        t = x.coproduct()
        doc = {
            "basis": t.basis,
            "family": t.family,
            "q": t.field.q,
            "terms": [
                {"coef": str(c), "left": l.to_json(), "right": r.to_json()}
                for (l, r), c in t.sorted_terms()
            ],
        }
        _emit_json(doc, args.out)
    elif args.op == "antipode":
        _emit_json(x.antipode().to_json(), args.out)
    else:
        raise ValueError(f"unknown hopf op {args.op!r}")
    return 0


def cmd_oracle(args) -> int:
    fld = _field_from_args(args)
    table = superclass_partition(enumerate_group(args.family, args.n, fld, _budget(args)))
    _emit_json(table.census_json(), args.out)
    return 0


def cmd_verify(args) -> int:
    fld = _field_from_args(args)
    budget = _budget(args)
    rng = random.Random(args.seed)
    checks = []

    hopf_report = verify_bialgebra(args.family, fld, args.n_max)
    checks.extend(
        {
            "name": f"hopf: {r.name}",
            "checked": r.checked,
            "ok": r.ok,
            "failures": r.failures[:10],
        }
        for r in hopf_report.results
    )

    for k in range(args.n_max + 1):
        if args.family not in ("D", "C") or group_order(args.family, k, fld.q) > budget:
            continue
        table = superclass_partition(enumerate_group(args.family, k, fld, budget))
        expected = set(enumerate_partitions(args.family, k, fld))
        ok = set(table.labels) == expected and sum(table.class_sizes.values()) == table.order
        checks.append(
            {
                "name": f"oracle indexing at n={k}",
                "checked": len(expected),
                "ok": ok,
                "failures": [] if ok else ["label set or class sizes mismatch"],
            }
        )
        if args.family == "D":
            fails = []
            chis = {lam: chi_class_function(lam, table.labels) for lam in table.labels}
            total = Fraction(0)
            for lam in table.labels:
                for mu in table.labels:
                    ip = inner_product(chis[lam], chis[mu], table)
                    if lam == mu:
                        norm = ip.as_rational()
                        if norm <= 0:
                            fails.append(f"norm not positive at {lam}")
                        else:
                            total += degree(lam).as_rational() ** 2 / norm
                    elif ip != 0:
                        fails.append(f"<chi^{lam}, chi^{mu}> != 0")
            if total != table.order:
                fails.append(f"degree regularity sum {total} != {table.order}")
            checks.append(
                {
                    "name": f"orthogonality at n={k}",
                    "checked": len(table.labels) ** 2,
                    "ok": not fails,
                    "failures": fails[:10],
                }
            )

    fails = []
    for size in (4, 6):
        for _ in range(10):
            m = random_strictly_upper(fld, size, rng)
            r = verge_reduce(m)
            if not is_verge(r) or verge_reduce(r) != r:
                fails.append(f"reduction not idempotent at size {size}")
            if any(verge_reduce(random_translate(m, rng)) != r for _ in range(5)):
                fails.append(f"orbit invariance failed at size {size}")
    checks.append(
        {"name": "canonical form spot checks", "checked": 20, "ok": not fails, "failures": fails[:10]}
    )

    ok = all(c["ok"] for c in checks)
    doc = {
        "family": args.family,
        "q": fld.q,
        "n_max": args.n_max,
        "seed": args.seed,
        "ok": ok,
        "checks": checks,
    }
    _emit_json(doc, args.report or args.out)
    return 0 if ok else 1


def cmd_render(args) -> int:
    lam = LabelledPartition.from_json(_load(args.infile))
    _emit(svg_arc_diagram(lam), args.out)
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="scd",
        description="Supercharacter combinatorics for unipotent groups of classical type D/C/B.",
    )
    sub = parser.add_subparsers(dest="verb", required=True)

    def common(p, family=True, nq=True):
        if family:
            p.add_argument("--family", default="D", choices=("D", "C", "B"))
        if nq:
            p.add_argument("--n", type=int, required=True)
            p.add_argument("--q", type=int, required=True)
            p.add_argument("--modulus", help="comma-separated modulus coefficients, low degree first")
        p.add_argument("--budget", type=int, help="enumeration budget (or env SCD_BUDGET)")
        p.add_argument("--out", help="output path (default stdout)")

    p = sub.add_parser("enumerate", help="stream all partitions of one (family, n, q)")
    common(p)
    p.add_argument("--count", action="store_true", help="print only the number of partitions")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("reduce", help="canonical form of a strictly upper matrix")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--family", default="D", choices=("D", "C", "B"))
    p.add_argument("--out")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("table", help="supercharacter table (family D)")
    common(p)
    p.add_argument("--format", default="json", choices=("json", "csv"))
    p.add_argument("--nesting", default="arcs", choices=("arcs", "pairs"))
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("hopf", help="product, coproduct, or antipode of stored elements")
    p.add_argument("--op", required=True, choices=("product", "coproduct", "antipode"))
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--in2", dest="infile2")
    p.add_argument("--out")
    p.set_defaults(func=cmd_hopf)

    p = sub.add_parser("oracle", help="brute-force superclass census of one group")
    common(p)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("verify", help="run the bundled verification suites")
    p.add_argument("--family", default="D", choices=("D", "C"))
    p.add_argument("--n-max", dest="n_max", type=int, default=2)
    p.add_argument("--q", type=int, default=3)
    p.add_argument("--modulus")
    p.add_argument("--budget", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--report", help="write the JSON report here")
    p.add_argument("--out")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("render", help="SVG arc diagram of a stored partition")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_render)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _ERRORS as exc:
        err = {"error": {"type": type(exc).__name__, "message": str(exc)}}
        sys.stderr.write(json.dumps(err, sort_keys=True) + "\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
