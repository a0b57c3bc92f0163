"""Command-line front end.

Subcommands cover the four layers: set-level queries over formulas (k0,
iso, dim, count), piecewise-affine map queries over JSON descriptions
(aut), the symbolic closed forms (k1, omega-ab), the named verification
suites (verify), and brute-force abelianization of catalogue groups
(abelianize).

Exit codes: 0 on success, 1 for a domain error or a failing verify run,
2 for usage errors.  With --json all output is a single JSON document
with sorted keys, so identical inputs give byte-identical output.
"""

from __future__ import annotations

import argparse
import sys

from . import jsonio
from .counting import count_points_mod_p
from .defsets import boolean_normalize, definable_dim, definably_isomorphic, k0_class
from .errors import WorkbenchError
from .formulas import elaborate, parse_formula
from .groups import DEFAULT_CAP, abelianization
from .suites import SUITE_NAMES, run_suite
from .symbolic import (RingDescriptor, TheoryFlags, derive_flags,
                       k1_free_module, k1_truncation, truncation_levels)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="modelk",
        description="Definable-set geometry and symbolic K1 over free modules.")
    parser.add_argument("--seed", type=int, default=0,
                        help="seed for randomized suites (default 0)")
    parser.add_argument("--cap", type=int, default=DEFAULT_CAP,
                        help=f"group enumeration cap (default {DEFAULT_CAP})")
    parser.add_argument("--json", action="store_true",
                        help="emit machine-readable JSON")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("k0", help="class of a definable set in the dimension ring")
    p.add_argument("formula", help='e.g. "ambient 2; pp(x1 = 0) | pp(x2 = 0)"')

    p = sub.add_parser("iso", help="definable isomorphism test for two formulas")
    p.add_argument("left")
    p.add_argument("right")

    p = sub.add_parser("dim", help="dimension of a definable set")
    p.add_argument("formula")

    p = sub.add_parser("count", help="point count of a formula modulo a prime")
    p.add_argument("formula")
    p.add_argument("--prime", type=int, required=True)

    p = sub.add_parser("aut", help="piecewise-affine map operations")
    p.add_argument("action", choices=["validate", "support", "dim", "decompose"])
    p.add_argument("mapfile", help="path to a PAMap JSON file, or - for stdin")

    p = sub.add_parser("k1", help="closed form of K1 for a free module")
    p.add_argument("--ring", required=True,
                   help="fq:<q> | z | poly-char0 | field:<tag> | ed:<tag>")
    p.add_argument("--unit-sum", action="store_true",
                   help="declare 1 = u + v for units (abstract domains)")
    p.add_argument("--t-closed", action="store_true",
                   help="the module theory is closed under products")
    p.add_argument("--cofinal-even", action="store_true",
                   help="index-finite subgroups of even index are cofinal")
    p.add_argument("--cofinal-odd", action="store_true",
                   help="negation of --cofinal-even")
    p.add_argument("--free-rank", type=int, default=None,
                   help="finite free rank (integers only; default 1 there)")

    p = sub.add_parser("omega-ab",
                       help="abelianized automorphism truncation at level n")
    p.add_argument("--ring", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--unit-sum", action="store_true")
    p.add_argument("--t-closed", action="store_true")
    p.add_argument("--cofinal-even", action="store_true")
    p.add_argument("--cofinal-odd", action="store_true")

    p = sub.add_parser("verify", help="run a named verification suite")
    p.add_argument("--suite", required=True, choices=list(SUITE_NAMES))
    p.add_argument("--cases", type=int, default=None,
                   help="randomized case count, where the suite takes one")

    p = sub.add_parser("abelianize", help="abelianization of a catalogue group")
    p.add_argument("--group", required=True,
                   help="sym:k | cyclic:n | dihedral:m | sl2:q | klein | q8 "
                        "| gl:n:q | sl:n:q | aff:n:q | wreath:<base>:<k>")
    return parser


def _parse_ring(token: str) -> RingDescriptor:
    head, _, rest = token.partition(":")
    if token == "z":
        return RingDescriptor.integers()
    if token == "poly-char0":
        return RingDescriptor.polynomial_ring("F")
    if head == "fq":
        return RingDescriptor.finite_field(int(rest))
    if head == "poly":
        return RingDescriptor.polynomial_ring(rest or "F")
    if head == "field":
        return RingDescriptor.infinite_field(rest or "F")
    if head == "ed":
        return RingDescriptor.abstract_ed(rest or "R")
    raise WorkbenchError(f"unknown ring token {token!r}")


def _ring_and_flags(args) -> tuple[RingDescriptor, TheoryFlags | None]:
    ring = _parse_ring(args.ring)
    if ring.kind == "abstract-ed" and args.unit_sum:
        ring = RingDescriptor.abstract_ed(ring.tag, has_unit_sum=True)
    chosen = [f for f in ("t_closed", "cofinal_even", "cofinal_odd")
              if getattr(args, f)]
    if len(chosen) > 1:
        raise WorkbenchError(
            "--t-closed, --cofinal-even and --cofinal-odd are mutually exclusive")
    if args.t_closed:
        return ring, TheoryFlags(True)
    if args.cofinal_even:
        return ring, TheoryFlags(False, True)
    if args.cofinal_odd:
        return ring, TheoryFlags(False, False)
    return ring, None


def _resolve_group(spec: str, cap: int):
    from .catalogue import by_name
    from .constructions import wreath
    from .matrix_groups import affine_group, gl_group, special_linear
    from .rings import GF

    parts = spec.split(":")
    head = parts[0].lower()
    if head in ("gl", "sl", "aff") and len(parts) == 3:
        n, q = int(parts[1]), int(parts[2])
        if head == "gl":
            return gl_group(n, GF(q), cap=cap)
        if head == "sl":
            return special_linear(n, GF(q), cap=cap)
        return affine_group(n, GF(q), cap=cap)
    if head == "wreath" and len(parts) >= 3:
        base = by_name(":".join(parts[1:-1]))
        return wreath(base, int(parts[-1]), cap=cap)
    return by_name(spec)


def _emit(args, json_obj: dict, text: str) -> None:
    if args.json:
        sys.stdout.write(jsonio.dumps(json_obj))
    else:
        print(text)


def _load_pamap(path: str):
    import json as _json

    raw = sys.stdin.read() if path == "-" else open(path).read()
    return jsonio.pamap_from_json(_json.loads(raw))


def _dim_json(value):
    return None if value == float("-inf") else value


def _dim_text(value) -> str:
    return "-inf (empty)" if value == float("-inf") else str(value)


def _cmd_k0(args) -> int:
    formula = parse_formula(args.formula)
    d = boolean_normalize(elaborate(formula), formula.ambient)
    cls = k0_class(d)
    _emit(args, dict(jsonio.k0_to_json(cls), pretty=cls.pretty()), cls.pretty())
    return 0


def _cmd_iso(args) -> int:
    left = parse_formula(args.left)
    right = parse_formula(args.right)
    dl = boolean_normalize(elaborate(left), left.ambient)
    dr = boolean_normalize(elaborate(right), right.ambient)
    cl, cr = k0_class(dl), k0_class(dr)
    iso = cl == cr
    _emit(args,
          {"isomorphic": iso, "left_class": cl.pretty(),
           "right_class": cr.pretty()},
          f"{'definably isomorphic' if iso else 'not definably isomorphic'}"
          f" (classes {cl.pretty()} and {cr.pretty()})")
    return 0


def _cmd_dim(args) -> int:
    formula = parse_formula(args.formula)
    d = boolean_normalize(elaborate(formula), formula.ambient)
    value = definable_dim(d)
    _emit(args, {"dim": _dim_json(value), "empty": d.is_empty},
          _dim_text(value))
    return 0


def _cmd_count(args) -> int:
    formula = parse_formula(args.formula)
    rep = count_points_mod_p(elaborate(formula), args.prime)
    text = (f"{rep.count} points mod {rep.prime}; "
            f"class predicts {rep.predicted}; "
            f"prime is {'good' if rep.good_prime else 'bad'}")
    _emit(args, rep.to_json(), text)
    return 0


def _cmd_aut(args) -> int:
    f = _load_pamap(args.mapfile)
    if args.action == "validate":
        rep = f.validate()
        _emit(args, rep.to_json(), str(rep))
        return 0
    f.require_valid()
    if args.action == "support":
        supp = f.support()
        value = f.support_dim()
        _emit(args,
              {"support": jsonio.defset_to_json(supp),
               "dim": _dim_json(value)},
              f"support: {supp.pretty()}\ndim: {_dim_text(value)}")
        return 0
    if args.action == "dim":
        value = f.support_dim()
        _emit(args, {"dim": _dim_json(value)}, _dim_text(value))
        return 0
    from .automorphisms import decompose_affine

    g, h = decompose_affine(f)
    matrix = [[jsonio.rat_to_json(x) for x in row] for row in g.matrix]
    offset = [jsonio.rat_to_json(x) for x in g.offset]
    _emit(args,
          {"affine": {"matrix": matrix, "offset": offset},
           "rest": jsonio.pamap_to_json(h),
           "rest_support_dim": _dim_json(h.support_dim())},
          f"affine part: matrix {matrix}, offset {offset}\n"
          f"small-support part has support dimension "
          f"{_dim_text(h.support_dim())}")
    return 0


def _cmd_k1(args) -> int:
    ring, flags = _ring_and_flags(args)
    group = k1_free_module(ring, flags=flags, free_rank=args.free_rank)
    _emit(args, dict(group.to_json(), pretty=group.pretty()), group.pretty())
    return 0


def _cmd_omega_ab(args) -> int:
    ring, flags = _ring_and_flags(args)
    levels = truncation_levels(ring, args.n, flags)
    group = k1_truncation(ring, args.n, flags)
    level_json = []
    level_text = []
    for depth, atoms in enumerate(levels):
        level = args.n - depth
        level_json.append({"level": level,
                           "atoms": [a.to_json() for a in atoms]})
        level_text.append(
            f"level {level}: " + (" + ".join(a.pretty() for a in atoms) or "0"))
    _emit(args,
          {"levels": level_json, "group": group.to_json(),
           "pretty": group.pretty()},
          "\n".join(level_text) + f"\ntotal: {group.pretty()}")
    return 0


def _cmd_verify(args) -> int:
    rep = run_suite(args.suite, seed=args.seed, cases=args.cases, cap=args.cap)
    _emit(args, rep.to_json(), str(rep))
    return 0 if rep.passed else 1


def _cmd_abelianize(args) -> int:
    G = _resolve_group(args.group, args.cap)
    ab = abelianization(G)
    _emit(args,
          {"group": G.name, "order": G.order,
           "abelianization": list(ab.factors), "pretty": str(ab)},
          f"{G.name} (order {G.order}) abelianizes to {ab}")
    return 0


_COMMANDS = {
    "k0": _cmd_k0,
    "iso": _cmd_iso,
    "dim": _cmd_dim,
    "count": _cmd_count,
    "aut": _cmd_aut,
    "k1": _cmd_k1,
    "omega-ab": _cmd_omega_ab,
    "verify": _cmd_verify,
    "abelianize": _cmd_abelianize,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except WorkbenchError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
