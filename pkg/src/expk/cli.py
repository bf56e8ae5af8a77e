"""Command line front end: ``expk <command> MODEL [options]``.

MODEL is either ``builtin:<descriptor>`` (``builtin:s1``, ``builtin:wedge(s1,2)``,
``builtin:disjoint(s1,s1)``, ...) or a path to a simplicial-set JSON file.

Exit status: 0 pass, 1 failed check, 2 inconclusive pi_1, 3 rejected input
or exhausted budget.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import io
from .exp import DEFAULT_BUDGET, BudgetExceeded, build_exp, component_subset, components
from .groups import certify_pi1
from .homology import betti_mod_p, homology_report
from .models import build_model
from .simplicial import SimplicialError, validate
from .verify import dimension_profile, run_example_suite, verify_connectivity, verify_handel


def load_model(ref: str):
    if ref.startswith("builtin:"):
        return build_model(ref)
    return io.load(ref)


def _emit(payload, fmt: str, text: str) -> None:
    if fmt == "json":
        print(json.dumps(payload, indent=2, ensure_ascii=False))
    else:
        print(text)


def _target(args):
    K = load_model(args.model)
    if args.k is None:
        return K, None
    cap = args.max_dim if args.max_dim is not None else args.default_cap(K)
    return K, build_exp(K, args.k, cap, args.budget)


def cmd_build(args) -> int:
    K = load_model(args.model)
    report = validate(K)
    if args.format == "json":
        print(io.dumps(K), end="")
    else:
        print(f"{K.name}: generators by dimension {list(K.counts())}; validate: {'ok' if report else 'FAILED'}")
        for gid, i, j in report.violations:
            print(f"  violation on {gid}: d{i} d{j} != d{j - 1} d{i}")
        for err in report.errors:
            print(f"  error: {err}")
    return 0 if report else 1


def cmd_exp(args) -> int:
    K = load_model(args.model)
    cap = args.max_dim if args.max_dim is not None else max(K.top_dim, 0) * args.k
    E = build_exp(K, args.k, cap, args.budget)
    if args.format == "json":
        print(io.dumps(E.result, E.witness), end="")
    else:
        print(f"{E.result.name} through dimension {cap}: generators by dimension {list(E.result.counts(cap))}")
        for g in E.result:
            faces = ", ".join(str(f) for f in g.faces)
            print(f"  {g.id} (dim {g.dim}) = {E.describe(g.id)}" + (f"  faces: {faces}" if faces else ""))
    return 0


def cmd_homology(args) -> int:
    args.default_cap = lambda K: max(K.top_dim, 0) * args.k + 1
    K, E = _target(args)
    X = E.result if E else K
    top = (X.cap - 1) if X.cap is not None else max(X.top_dim, 0)
    payload = homology_report(X, top)
    if args.mod_p:
        payload["betti_mod_p"] = {str(n): betti_mod_p(X, n, args.mod_p) for n in range(top + 1)}
        payload["p"] = args.mod_p
    lines = [f"{X.name} (cap {X.cap}):"]
    for n, h in payload["homology"].items():
        lines.append(f"  H_{n}: betti {h['betti']} torsion {h['torsion']}")
    if args.mod_p:
        lines.append(f"  mod {args.mod_p} betti: {payload['betti_mod_p']}")
    _emit(payload, args.format, "\n".join(lines))
    return 0


def cmd_pi1(args) -> int:
    args.default_cap = lambda K: 2
    K, E = _target(args)
    X = E.result if E else K
    basepoint = args.basepoint or X.generators(0)[0].id
    cert = certify_pi1(X, basepoint)
    payload = {"model": X.name, "basepoint": basepoint, **cert.to_json()}
    text = "\n".join(
        [f"{X.name} at {basepoint}: {cert.status}",
         f"  presentation: {cert.presentation}",
         f"  simplified:   {cert.simplified}",
         f"  abelianization: rank {cert.abelian[0]} torsion {list(cert.abelian[1])}"]
        + [f"  - {step}" for step in cert.trace]
    )
    _emit(payload, args.format, text)
    return 2 if cert.status == "inconclusive" else 0


def cmd_components(args) -> int:
    args.default_cap = lambda K: 1
    K, E = _target(args)
    X = E.result if E else K
    comps = components(X)
    describe = E.describe if E else str
    groups = []
    for label, verts in enumerate(comps.vertices):
        sub = component_subset(X, comps, label)
        groups.append({"label": label, "vertices": [describe(v) for v in verts], "counts": list(sub.counts())})
    payload = {"model": X.name, "count": len(comps), "components": groups}
    text = "\n".join([f"{X.name}: {len(comps)} components"]
                     + [f"  [{g['label']}] vertices {g['vertices']} generators {g['counts']}" for g in groups])
    _emit(payload, args.format, text)
    return 0


def cmd_verify(args) -> int:
    if args.check == "examples":
        report = run_example_suite(args.budget)
    else:
        if args.model is None or args.k is None:
            raise SimplicialError(f"verify {args.check} needs MODEL and --k")
        K = load_model(args.model)
        if args.check == "connectivity":
            report = verify_connectivity(K, args.k, args.strengthened, args.max_dim, args.budget)
        elif args.check == "handel":
            degrees = [int(d) for d in args.degrees.split(",")]
            report = verify_handel(K, args.k, degrees, args.budget, args.max_dim)
        else:
            report = dimension_profile(K, args.k, args.max_dim, args.budget)
    _emit(report.to_json(args.timing), args.format, report.to_text())
    return report.exit_code


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--k", type=int, help="subset cardinality bound")
    common.add_argument("--max-dim", type=int, help="dimension cap of the build (default: derived from the check)")
    common.add_argument("--format", choices=("json", "text"), default="text")
    common.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="max subsets enumerated per level")

    parser = argparse.ArgumentParser(prog="expk", description="Finite subset spaces of simplicial sets")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", parents=[common], help="build and validate a model")
    p.add_argument("model")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("exp", parents=[common], help="build exp_k of a model")
    p.add_argument("model")
    p.set_defaults(func=cmd_exp)

    p = sub.add_parser("homology", parents=[common], help="integral homology of a model or of exp_k")
    p.add_argument("model")
    p.add_argument("--mod-p", type=int, help="also report Betti numbers over F_p")
    p.set_defaults(func=cmd_homology)

    p = sub.add_parser("pi1", parents=[common], help="fundamental group presentation")
    p.add_argument("model")
    p.add_argument("--basepoint", help="0-generator id (default: first vertex)")
    p.set_defaults(func=cmd_pi1)

    p = sub.add_parser("components", parents=[common], help="connected components")
    p.add_argument("model")
    p.set_defaults(func=cmd_components)

    p = sub.add_parser("verify", parents=[common], help="connectivity, Handel and dimension checks; worked examples")
    p.add_argument("check", choices=("connectivity", "handel", "conjecture-profile", "examples"))
    p.add_argument("model", nargs="?")
    p.add_argument("--strengthened", action="store_true", help="check (k-1)-connectivity for simply connected input")
    p.add_argument("--degrees", default="1", help="comma separated degrees for the handel check")
    p.add_argument("--timing", action="store_true", help="include wall-clock seconds in JSON output")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "k", None) is not None and args.k < 1 and args.command != "build":
        print("expk: error: --k must be >= 1", file=sys.stderr)
        return 3
    try:
        return args.func(args)
    except (ValueError, BudgetExceeded, OSError) as exc:
        print(f"expk: error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
