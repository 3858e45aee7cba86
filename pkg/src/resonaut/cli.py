"""Command-line interface.

Subcommands cover the whole pipeline: `matrices`, `hilbert`, `sibirsky`,
`equivariant`, `zeta-reversible`, `check-saturation`, `crosscheck-2d`,
`normal-form`, `integral`, and `vars`.  Spec files are JSON of the shape
{"n": 3, "exponents": [[1,0,0],[0,0,1],[1,0,1]]}; point files map
parameter names to exact coefficient text such as "-1 - zeta" or "2/3".

Exit codes: 0 success, 1 validation error, 2 internal verification
failure (a saturation or cross-check identity that did not hold).

Output is deterministic: identical spec and flags give byte-identical
output.  RESONAUT_THREADS, when set, caps internal parallelism; the
current engine is sequential, so any positive value behaves the same.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .exactnum import ExactNumError, cyclotomic_field
from .groebner import DEGLEX, GroebnerError, Ideal, buchberger
from .invariants import (
    check_saturation_theorems,
    equivariant_ideal,
    sibirsky_ideal,
    spec_hilbert_basis,
    two_dim_crosschecks,
    zeta_reversible_ideal,
)
from .multipoly import PolyError
from .normalform import (
    NormalFormError,
    normal_form,
    truncated_first_integral,
)
from .resonant import (
    A_matrices,
    L_matrix,
    M_matrix,
    SpecError,
    load_spec,
    parameter_vars,
)

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_VERIFICATION = 2

thread_cap = 1


def _matrix_text(matrix) -> str:
    rows = ",".join("[" + ", ".join(str(e) for e in row) + "]" for row in matrix)
    return f"[{rows}]"


def _ideal_payload(ideal: Ideal):
    field = ideal.ring.field
    gens = []
    for g in ideal.generators:
        gens.append(
            {
                "text": g.to_str(),
                "terms": [
                    [list(mono), field.format(coeff)]
                    for mono, coeff in g.sorted_terms()
                ],
            }
        )
    return {"variables": list(ideal.ring.variables), "generators": gens}


def _print_ideal(ideal: Ideal, as_json: bool):
    if as_json:
        print(json.dumps(_ideal_payload(ideal), sort_keys=True))
        return
    if not ideal.generators:
        print("0")
        return
    for g in ideal.generators:
        print(g.to_str())


def _canonical(ideal: Ideal) -> Ideal:
    """Re-present an ideal by its reduced deglex basis, so that different
    construction routes print identically."""
    basis = buchberger(ideal, DEGLEX)
    return Ideal(ideal.ring, list(basis.elements))


def _load_point(path, order):
    field = cyclotomic_field(order)
    with open(path, "r", encoding="utf-8") as handle:
        raw = json.load(handle)
    if not isinstance(raw, dict):
        raise SpecError("point file must be a JSON object")
    point = {}
    for name, value in raw.items():
        if isinstance(value, bool) or isinstance(value, float):
            raise SpecError(
                f"point entry {name!r} must be exact (integer or coefficient text)"
            )
        if isinstance(value, int):
            point[name] = field.coerce(value)
        elif isinstance(value, str):
            point[name] = field.parse(value)
        else:
            raise SpecError(f"point entry {name!r} has unsupported type")
    return point


def cmd_vars(spec, args):
    names = parameter_vars(spec)
    if args.json:
        print(json.dumps({"variables": list(names)}))
    else:
        for name in names:
            print(name)
    return EXIT_OK


def cmd_matrices(spec, args):
    mat_a, mat_ahat = A_matrices(spec)
    table = {
        "L": L_matrix(spec),
        "M": M_matrix(spec),
        "A": mat_a,
        "Ahat": mat_ahat,
    }
    if args.json:
        print(json.dumps({k: [list(r) for r in v] for k, v in table.items()}, sort_keys=True))
    else:
        for name in ("L", "M", "A", "Ahat"):
            print(f"{name} = {_matrix_text(table[name])}")
    return EXIT_OK


def cmd_hilbert(spec, args):
    vectors = spec_hilbert_basis(spec).vectors
    if args.json:
        print(json.dumps({"vectors": [list(v) for v in vectors]}))
    else:
        for v in vectors:
            print("[" + ", ".join(str(e) for e in v) + "]")
    return EXIT_OK


def cmd_sibirsky(spec, args):
    _print_ideal(sibirsky_ideal(spec), args.json)
    return EXIT_OK


def cmd_equivariant(spec, args):
    _print_ideal(_canonical(equivariant_ideal(spec, args.route)), args.json)
    return EXIT_OK


def cmd_zeta_reversible(spec, args):
    _print_ideal(_canonical(zeta_reversible_ideal(spec, args.route)), args.json)
    return EXIT_OK


def cmd_check_saturation(spec, args):
    report = check_saturation_theorems(spec)
    if args.json:
        payload = {
            "spec": spec.describe(),
            "checks": {
                c.name: {
                    "equal": c.equal,
                    "saturation": _ideal_payload(Ideal(c.left.ring, list(c.left_basis.elements))),
                    "direct": _ideal_payload(Ideal(c.right.ring, list(c.right_basis.elements))),
                }
                for c in report.checks
            },
        }
        print(json.dumps(payload, sort_keys=True))
    else:
        for c in report.checks:
            print(f"{c.name}: {'PASS' if c.equal else 'FAIL'}")
    return EXIT_OK if report.all_equal else EXIT_VERIFICATION


def cmd_crosscheck_2d(spec, args):
    report = two_dim_crosschecks(spec)
    results = {
        "sibirsky_equals_scaling_kernel": report.sibirsky_equals_toric,
        "sibirsky_equals_lattice_ideal": report.sibirsky_equals_lattice,
        "reduced_binomials_support_disjoint": report.disjoint_support,
    }
    if args.json:
        print(json.dumps({"spec": spec.describe(), "checks": results}, sort_keys=True))
    else:
        for name, ok in results.items():
            print(f"{name}: {'PASS' if ok else 'FAIL'}")
    return EXIT_OK if report.all_ok else EXIT_VERIFICATION


def cmd_normal_form(spec, args):
    nf = normal_form(spec, args.order)
    keys = sorted(nf.coefficients)
    if args.json:
        field = nf.ring.field
        payload = {
            "order": nf.k_max,
            "coefficients": [
                {
                    "coordinate": k,
                    "power": i,
                    "polynomial": nf.coefficients[(k, i)].to_str(),
                    "terms": [
                        [list(m), field.format(c)]
                        for m, c in nf.coefficients[(k, i)].sorted_terms()
                    ],
                }
                for k, i in keys
            ],
        }
        print(json.dumps(payload, sort_keys=True))
    else:
        if not keys:
            print("no resonant terms at this order")
        for k, i in keys:
            print(f"q[{k},{i}] = {nf.coefficients[(k, i)].to_str()}")
    return EXIT_OK


def cmd_integral(spec, args):
    point = _load_point(args.point, spec.n)
    result = truncated_first_integral(spec, point, args.order)
    field = cyclotomic_field(spec.n)
    if args.json:
        if result.success:
            payload = {
                "success": True,
                "order": result.k_max,
                "coefficients": [
                    [list(m), field.format(c)]
                    for m, c in sorted(result.coefficients.items())
                ],
            }
        else:
            payload = {
                "success": False,
                "obstruction_degree": result.obstruction_degree,
                "residual": [
                    [list(m), field.format(c)]
                    for m, c in sorted(result.residual.items())
                ],
            }
        print(json.dumps(payload, sort_keys=True))
    elif result.success:
        for mono, coeff in sorted(result.coefficients.items()):
            name = "*".join(
                f"x{i + 1}" if e == 1 else f"x{i + 1}^{e}"
                for i, e in enumerate(mono)
                if e
            )
            print(f"{name}: {field.format(coeff)}")
    else:
        for mono, coeff in sorted(result.residual.items()):
            name = "*".join(
                f"x{i + 1}" if e == 1 else f"x{i + 1}^{e}"
                for i, e in enumerate(mono)
                if e
            )
            print(
                f"obstructed at degree {result.obstruction_degree}: "
                f"{name} -> {field.format(coeff)}"
            )
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="resonaut",
        description="Exact invariants, binomial ideals and normal forms "
        "of resonant polynomial ODE families.",
    )
    parser.add_argument("--json", action="store_true", help="emit JSON")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, **kwargs):
        p = sub.add_parser(name, **kwargs)
        p.add_argument("spec", help="path to the spec JSON file")
        p.set_defaults(func=func)
        return p

    add("vars", cmd_vars, help="ordered parameter variables")
    add("matrices", cmd_matrices, help="degree-map and lifted matrices")
    add("hilbert", cmd_hilbert, help="Hilbert basis of the invariant monoid")
    add("sibirsky", cmd_sibirsky, help="Sibirsky ideal generators")

    p = add("equivariant", cmd_equivariant, help="equivariant closure ideal")
    p.add_argument("--route", choices=("elimination", "toric"), default="elimination")

    p = add("zeta-reversible", cmd_zeta_reversible, help="reversible closure ideal")
    p.add_argument(
        "--route", choices=("elimination", "zeta_toric"), default="elimination"
    )

    add("check-saturation", cmd_check_saturation, help="verify saturation identities")
    add("crosscheck-2d", cmd_crosscheck_2d, help="planar ideal identities (n = 2)")

    p = add("normal-form", cmd_normal_form, help="truncated normal form coefficients")
    p.add_argument("--order", type=int, required=True, help="truncation order")

    p = add("integral", cmd_integral, help="truncated first integral at a point")
    p.add_argument("--point", required=True, help="path to the point JSON file")
    p.add_argument("--order", type=int, required=True, help="truncation order")

    return parser


def main(argv=None) -> int:
    global thread_cap
    raw_threads = os.environ.get("RESONAUT_THREADS")
    if raw_threads is not None:
        try:
            cap = int(raw_threads)
        except ValueError:
            print(f"RESONAUT_THREADS must be an integer, got {raw_threads!r}", file=sys.stderr)
            return EXIT_VALIDATION
        if cap < 1:
            print("RESONAUT_THREADS must be at least 1", file=sys.stderr)
            return EXIT_VALIDATION
        thread_cap = cap

    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors; map those onto the validation code
        return EXIT_OK if exc.code == 0 else EXIT_VALIDATION
    try:
        spec = load_spec(args.spec)
        return args.func(spec, args)
    except (SpecError, ExactNumError, PolyError, GroebnerError, NormalFormError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
