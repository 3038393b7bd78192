"""Command-line interface.

Verbs: atoms, check-paper, export-dot, atlas, glue, quotient, closure.
Lattice arguments accept either a file path or a builtin name (m3, fm3, T,
T', T'', K/Theta, H_<k>, K_<k>).  Exit codes: 0 success / all claims hold,
1 claim failure, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import re
import sys

from latkit import claims, herringbone as hb, latfile
from latkit.atlas import problem13_report
from latkit.congruence import congruence_generated, quotient as take_quotient
from latkit.constructions import (
    GlueSpec,
    free_modular_3,
    glue as glue_lattices,
    lattice_T,
    lattice_T_doubleprime,
    lattice_T_prime,
    m3,
)
from latkit.core import FiniteLattice, atoms, coatoms
from latkit.errors import LatkitError
from latkit.terms import bounded_closure, TableOps, generated_sublattice

_TRUNCATION_RE = re.compile(r"^([hk])_(\d+)$", re.IGNORECASE)

_BUILTINS = {
    "m3": lambda: ("m3", m3(), None),
    "fm3": lambda: ("fm3", free_modular_3(), ("x", "y", "z")),
    "t": lambda: ("T", lattice_T(), None),
    "t'": lambda: ("T'", lattice_T_prime(), None),
    "t''": lambda: ("T''", lattice_T_doubleprime(), None),
    "k/theta": lambda: ("K/Theta", hb.k_theta_quotient(), None),
    "ktheta": lambda: ("K/Theta", hb.k_theta_quotient(), None),
}


def _resolve_lattice(spec: str):
    """A builtin name or a lattice file path -> (name, lattice, generators)."""
    key = spec.lower()
    if key in _BUILTINS:
        return _BUILTINS[key]()
    match = _TRUNCATION_RE.match(key)
    if match:
        depth = int(match.group(2))
        if depth < 1:
            raise LatkitError("truncation depth must be >= 1")
        if match.group(1).lower() == "h":
            gens = tuple(str(g) for g in hb.generators_H())
            return (f"H_{depth}", hb.truncation_H(depth), gens)
        gens = tuple(str(g) for g in hb.generators_K())
        return (f"K_{depth}", hb.truncation_K(depth), gens)
    try:
        parsed = latfile.load(spec)
    except OSError as exc:
        raise LatkitError(f"cannot read {spec!r}: {exc}") from exc
    return (parsed.name, parsed.lattice, parsed.generators)


def _emit_lattice(lattice: FiniteLattice, name: str, fmt: str, generators=None):
    if fmt == "dot":
        sys.stdout.write(latfile.to_dot(lattice, name))
    elif fmt == "json":
        import json

        payload = {
            "name": name,
            "elements": list(lattice.universe),
            "covers": sorted([a, b] for a, b in _cover_names(lattice)),
        }
        if generators:
            payload["generators"] = list(generators)
        sys.stdout.write(json.dumps(payload, indent=2) + "\n")
    else:
        sys.stdout.write(latfile.serialize(lattice, name, generators))


def _cover_names(lattice: FiniteLattice):
    from latkit.core import covers

    return covers(lattice)


def _cmd_atoms(args) -> int:
    name, lattice, _ = _resolve_lattice(args.lattice)
    ats = atoms(lattice).names()
    coats = coatoms(lattice).names()
    print(f"lattice: {name} ({lattice.n} elements)")
    print(f"atoms: {len(ats)}")
    for a in ats:
        print(f"  {a}")
    print(f"coatoms: {len(coats)}")
    for c in coats:
        print(f"  {c}")
    return 0


def _cmd_export_dot(args) -> int:
    name, lattice, _ = _resolve_lattice(args.lattice)
    sys.stdout.write(latfile.to_dot(lattice, name))
    return 0


def _cmd_atlas(args) -> int:
    report = problem13_report(args.max_size, atlas_path=args.atlas_path)
    if args.format == "json":
        print(report.render_json())
    else:
        print(report.render_text())
    return 0


def _parse_pairs(text: str, what: str):
    pairs = []
    for chunk in text.split(","):
        left, sep, right = chunk.partition("=")
        if not sep:
            raise LatkitError(f"bad {what} {chunk!r}; expected 'x=y'")
        pairs.append((left.strip(), right.strip()))
    return pairs


def _cmd_quotient(args) -> int:
    name, lattice, _ = _resolve_lattice(args.lattice)
    pairs = _parse_pairs(args.collapse, "pair")
    theta = congruence_generated(lattice, pairs)
    quo, projection = take_quotient(lattice, theta)
    print(f"# congruence with {theta.block_count} blocks", file=sys.stderr)
    for block in theta.blocks():
        print("#   {" + " ".join(block) + "}", file=sys.stderr)
    _emit_lattice(quo, f"{name}/theta", args.format)
    return 0


def _cmd_glue(args) -> int:
    name1, lower, _ = _resolve_lattice(args.lower)
    name2, upper, _ = _resolve_lattice(args.upper)
    s1 = tuple(args.s1.split(","))
    s2 = tuple(args.s2.split(","))
    if args.mu:
        mu = dict(_parse_pairs(args.mu, "mu entry"))
    else:
        if len(s1) != len(s2):
            raise LatkitError("fragments differ in size; give --mu explicitly")
        by_height1 = sorted(s1, key=lambda x: sum(lower.leq(y, x) for y in s1))
        by_height2 = sorted(s2, key=lambda x: sum(upper.leq(y, x) for y in s2))
        mu = dict(zip(by_height1, by_height2))
    glued = glue_lattices(GlueSpec(l1=lower, l2=upper, s1=s1, s2=s2, mu=mu))
    _emit_lattice(glued, f"glue({name1},{name2})", args.format)
    return 0


def _cmd_closure(args) -> int:
    name, lattice, file_gens = _resolve_lattice(args.lattice)
    gens = args.gens.split(",") if args.gens else list(file_gens or ())
    if not gens:
        raise LatkitError("no generators given (use --gens or a file with generators:)")
    if args.budget:
        result = bounded_closure(TableOps(lattice), gens, args.budget)
    else:
        result = generated_sublattice(lattice, gens)
    print(f"# closure of {{{', '.join(gens)}}} in {name}")
    print(f"# {len(result)} elements, complete={result.complete}")
    for element in result.elements:
        print(f"{element}\t{result.witness[element]}")
    return 0


def _cmd_check_paper(args) -> int:
    config = claims.CheckConfig(
        seed=args.seed,
        closure_budget=args.budget,
        index_cap=args.max_index,
        law_samples=args.samples,
        atlas_max_size=args.atlas_max_size,
        atlas_path=args.atlas_path,
    )
    try:
        config.validated()
    except ValueError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2
    only = args.claims.split(",") if args.claims else None
    report = claims.run_claims(config, only=only)
    if args.format == "json":
        print(report.render_json(timings=args.timings))
    else:
        print(report.render_text(timings=args.timings))
    return 0 if report.all_ok else 1


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="latkit",
        description="Finite-lattice computations and claim verification.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("atoms", help="print atoms and coatoms of a lattice")
    p.add_argument("lattice", help="lattice file or builtin name")
    p.set_defaults(fn=_cmd_atoms)

    p = sub.add_parser("export-dot", help="Hasse diagram as DOT text")
    p.add_argument("lattice")
    p.set_defaults(fn=_cmd_export_dot)

    p = sub.add_parser("atlas", help="atom statistics of all small lattices")
    p.add_argument("--max-size", type=int, default=7)
    p.add_argument("--atlas-path", default=None, help="cache file for atlas records")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(fn=_cmd_atlas)

    p = sub.add_parser("quotient", help="quotient by a generated congruence")
    p.add_argument("lattice")
    p.add_argument("--collapse", required=True, help="pairs to collapse: a=b,c=d")
    p.add_argument("--format", choices=("text", "json", "dot"), default="text")
    p.set_defaults(fn=_cmd_quotient)

    p = sub.add_parser("glue", help="glue two lattices along fragments")
    p.add_argument("lower")
    p.add_argument("upper")
    p.add_argument("--s1", required=True, help="meet-closed fragment of the lower lattice")
    p.add_argument("--s2", required=True, help="join-closed fragment of the upper lattice")
    p.add_argument("--mu", default=None, help="fragment isomorphism: x=y,...")
    p.add_argument("--format", choices=("text", "json", "dot"), default="text")
    p.set_defaults(fn=_cmd_glue)

    p = sub.add_parser("closure", help="sublattice generated by elements")
    p.add_argument("lattice")
    p.add_argument("--gens", default=None, help="comma-separated generators")
    p.add_argument("--budget", type=int, default=None, help="bounded-closure budget")
    p.set_defaults(fn=_cmd_closure)

    p = sub.add_parser(
        "check-paper", help="run the full verified-claim suite and report"
    )
    p.add_argument("--seed", type=int, default=2024)
    p.add_argument("--budget", type=int, default=10_000, help="square-closure budget")
    p.add_argument("--max-index", type=int, default=500, help="symbolic index cap")
    p.add_argument("--samples", type=int, default=100_000, help="random law checks")
    p.add_argument("--atlas-max-size", type=int, default=7)
    p.add_argument("--atlas-path", default=None)
    p.add_argument("--claims", default=None, help="comma-separated claim ids to run")
    p.add_argument("--timings", action="store_true", help="include runtimes in output")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(fn=_cmd_check_paper)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except LatkitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
