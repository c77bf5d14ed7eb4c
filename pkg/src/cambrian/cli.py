"""Command-line frontend: build quivers, export DOT/JSON, run verifications.

Exit codes: 0 success, 1 a verification check failed, 2 invalid input,
3 internal invariant violation.
"""

from __future__ import annotations

import argparse
import json
import sys

from .errors import InputError, InternalError
from .lattice import maximal_chains, poset_from_hasse, verify_lattice, verify_quiver_map
from .laurent import LaurentPolynomial, denominator_vector, poly_hash, poly_str
from .mutation import build_bc, check_duality, frame_is_unimodular, frame_mutate, identity_frame
from .quivers import (
    CheckReport,
    ClusterQuiver,
    build_c_cluster_quiver,
    build_exchange_quiver,
    build_tau_tilting_quiver,
    check_arrow_flip,
    check_tau_c_matrix,
    phi_vertex_map,
    psi_vertex_map,
    theta_vertex_map,
)
from .rootsys import CartanSpec, CoxeterElement, Root, cartan_matrix
from .sortables import build_cambrian_hasse, cambrian_vertex_map

BUILD_COMMANDS = ("exchange", "cclusters", "cambrian", "tautilt")
VERIFY_COMMANDS = ("verify-iso", "verify-lattice", "verify-signs", "verify-flip", "verify-all")


def _root_str(r: Root) -> str:
    return "[" + ",".join(str(x) for x in r) + "]"


def _var_payload(v: LaurentPolynomial, rank: int, verbose: bool) -> dict:
    d = {"d": _root_str(denominator_vector(v, rank)), "hash": poly_hash(v)}
    if verbose:
        d["poly"] = poly_str(v)
    return d


def _vertex_payload(q: ClusterQuiver, i: int, rank: int, verbose: bool) -> dict:
    v = q.vertices[i]
    if q.kind == "exchange":
        return {
            "variables": [_var_payload(x, rank, verbose) for x in v.variables],
            "c_vectors": [list(c) for c in v.c_vectors],
            "g_vectors": [list(g) for g in v.g_vectors],
        }
    if q.kind == "ccluster":
        return {"roots": [_root_str(r) for r in v]}
    if q.kind == "tautilt":
        return {
            "module_part": [_root_str(r) for r in v.module_part],
            "projective_part": list(v.projective_part),
            "m_size": v.m_size,
        }
    if q.kind == "cambrian":
        return {
            "word": list(v.word),
            "blocks": [list(b) for b in v.blocks],
            "length": v.length,
        }
    raise InternalError(f"unknown quiver kind {q.kind!r}")


def _edge_label(label: object, rank: int) -> str:
    if isinstance(label, LaurentPolynomial):
        return f"d={_root_str(denominator_vector(label, rank))}#{poly_hash(label)}"
    if isinstance(label, tuple):
        return _root_str(label)
    return str(label)


def quiver_to_json(q: ClusterQuiver, rank: int, verbose: bool = False) -> str:
    doc = {
        "vertices": [
            {"id": i, "payload": _vertex_payload(q, i, rank, verbose)}
            for i in range(q.n_vertices)
        ],
        "edges": [
            {
                "src": e.src,
                "dst": e.dst,
                "out": _edge_label(e.out_label, rank),
                "in": _edge_label(e.in_label, rank),
            }
            for e in q.edges
        ],
    }
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def _vertex_label(q: ClusterQuiver, i: int, rank: int) -> str:
    v = q.vertices[i]
    if q.kind == "exchange":
        return "{" + ",".join(_root_str(denominator_vector(x, rank)) for x in v.variables) + "}"
    if q.kind == "ccluster":
        return "{" + ",".join(_root_str(r) for r in v) + "}"
    if q.kind == "tautilt":
        mods = ",".join(_root_str(r) for r in v.module_part)
        projs = ",".join(str(i) for i in v.projective_part)
        return f"M=[{mods}] P=[{projs}]"
    if q.kind == "cambrian":
        return "s" + ".".join(str(a) for a in v.word) if v.word else "e"
    raise InternalError(f"unknown quiver kind {q.kind!r}")


def quiver_to_dot(q: ClusterQuiver, rank: int) -> str:
    lines = [f"digraph {q.kind} {{"]
    for i in range(q.n_vertices):
        label = _vertex_label(q, i, rank).replace('"', '\\"')
        lines.append(f'  v{i} [label="{label}"];')
    for e in q.edges:
        lines.append(f"  v{e.src} -> v{e.dst};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _parse_coxeter(raw: str, rank: int) -> CoxeterElement:
    try:
        order = tuple(int(x) for x in raw.split(","))
    except ValueError as exc:
        raise InputError(f"coxeter must be comma-separated integers, got {raw!r}") from exc
    if len(order) != rank:
        raise InputError(f"coxeter word length {len(order)} does not match rank {rank}")
    return CoxeterElement(order)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cambrian",
        description="Exchange quivers, c-clusters, Cambrian lattices and their verifications.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    for name in BUILD_COMMANDS + VERIFY_COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--type", required=True, dest="dynkin_type", help="Dynkin type letter A-G")
        p.add_argument("--rank", required=True, type=int)
        p.add_argument("--coxeter", required=True, help="permutation of 1..rank, comma-separated")
        p.add_argument("--format", choices=("json", "dot"), default="json")
        p.add_argument("--output", default=None, help="output path (default stdout)")
        p.add_argument("--verbose", action="store_true")
        p.add_argument("--vertex-cap", type=int, default=None)
    return parser


def _all_quivers(spec: CartanSpec, c: CoxeterElement, cap: int | None):
    exq = build_exchange_quiver(spec, c, "plus", vertex_cap=cap)
    ccq = build_c_cluster_quiver(spec, c)
    ttq = build_tau_tilting_quiver(spec, c, exchange=exq)
    caq = build_cambrian_hasse(spec, c)
    return exq, ccq, ttq, caq


def run_iso_checks(spec: CartanSpec, c: CoxeterElement, cap: int | None = None) -> list[CheckReport]:
    exq, ccq, ttq, caq = _all_quivers(spec, c, cap)
    theta_map = theta_vertex_map(spec, c, exq, ccq)
    phi_map = phi_vertex_map(spec, ttq, ccq)
    psi_map = psi_vertex_map(spec, c, ttq, exq, ccq)
    cl_map = cambrian_vertex_map(spec, c, caq, ccq)
    reports = []
    for label, rep in (
        ("theta exchange->ccluster anti", verify_quiver_map(exq, ccq, theta_map, "anti")),
        ("phi tautilt->ccluster iso", verify_quiver_map(ttq, ccq, phi_map, "iso")),
        ("psi tautilt->exchange anti", verify_quiver_map(ttq, exq, psi_map, "anti")),
        ("cl cambrian->ccluster iso", verify_quiver_map(caq, ccq, cl_map, "iso")),
    ):
        reports.append(CheckReport(label, rep.ok, rep.details, rep.counterexample, rep.stats))
    return reports


def run_lattice_checks(spec: CartanSpec, c: CoxeterElement, cap: int | None = None) -> list[CheckReport]:
    reports = []
    for q in _all_quivers(spec, c, cap):
        rep = verify_lattice(poset_from_hasse(q))
        reports.append(CheckReport(f"lattice {q.kind}", rep.ok, rep.details, rep.counterexample, rep.stats))
    return reports


def run_sign_checks(spec: CartanSpec, c: CoxeterElement, cap: int | None = None) -> list[CheckReport]:
    """Replay every witness path and re-assert sign coherence, duality and
    unimodularity at each cluster of both exchange quivers."""
    reports = []
    for sign in ("plus", "minus"):
        q = build_exchange_quiver(spec, c, sign, vertex_cap=cap)
        b = build_bc(spec, c)
        if sign == "minus":
            b = b.negated()
        checked = 0
        for payload in q.vertices:
            frame = identity_frame(b)
            for k in payload.witness_path:
                frame = frame_mutate(frame, k)
            check_duality(frame)
            if not frame_is_unimodular(frame):
                reports.append(CheckReport(f"signs {sign}", False, ("non-unimodular C-matrix",)))
                break
            if frozenset(frame.c_column(j + 1) for j in range(spec.rank)) != frozenset(payload.c_vectors):
                reports.append(CheckReport(f"signs {sign}", False, ("replayed C-set mismatch",)))
                break
            checked += 1
        else:
            reports.append(
                CheckReport(
                    f"signs {sign}",
                    True,
                    (f"{checked} clusters: sign-coherent, dual, unimodular",),
                    stats=(("clusters", checked),),
                )
            )
    return reports


def run_flip_checks(spec: CartanSpec, c: CoxeterElement, cap: int | None = None) -> list[CheckReport]:
    return [check_arrow_flip(spec, c)]


def run_all_checks(spec: CartanSpec, c: CoxeterElement, cap: int | None = None) -> list[CheckReport]:
    reports = run_iso_checks(spec, c, cap)
    reports += run_lattice_checks(spec, c, cap)
    reports += run_sign_checks(spec, c, cap)
    reports.append(check_arrow_flip(spec, c))
    reports.append(check_tau_c_matrix(spec, c))
    return reports


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        spec = cartan_matrix(args.dynkin_type, args.rank)
        c = _parse_coxeter(args.coxeter, args.rank)
        cap = args.vertex_cap

        if args.command in BUILD_COMMANDS:
            if args.command == "exchange":
                q = build_exchange_quiver(spec, c, "plus", vertex_cap=cap)
            elif args.command == "cclusters":
                q = build_c_cluster_quiver(spec, c)
            elif args.command == "tautilt":
                q = build_tau_tilting_quiver(spec, c)
            else:
                q = build_cambrian_hasse(spec, c)
            if args.format == "json":
                text = quiver_to_json(q, spec.rank, args.verbose)
            else:
                text = quiver_to_dot(q, spec.rank)
            if args.output:
                with open(args.output, "w") as fh:
                    fh.write(text)
            else:
                sys.stdout.write(text)
            return 0

        runner = {
            "verify-iso": run_iso_checks,
            "verify-lattice": run_lattice_checks,
            "verify-signs": run_sign_checks,
            "verify-flip": run_flip_checks,
            "verify-all": run_all_checks,
        }[args.command]
        reports = runner(spec, c, cap)
        lines = []
        ok = True
        for rep in reports:
            status = "PASS" if rep.ok else "FAIL"
            detail = "; ".join(rep.details)
            line = f"{status} {rep.name}: {detail}"
            if rep.counterexample:
                line += f" [counterexample: {rep.counterexample}]"
            lines.append(line)
            ok = ok and rep.ok
        text = "\n".join(lines) + "\n"
        if args.output:
            with open(args.output, "w") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
        return 0 if ok else 1
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except InternalError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
