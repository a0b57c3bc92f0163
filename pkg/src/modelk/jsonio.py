"""JSON encoding of the geometric and symbolic values.

Rationals become plain ints when integral and "p/q" strings otherwise, so
round-tripping is exact.  Dumps are byte-stable: keys sorted, two-space
indent, and a trailing newline.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .automorphisms import AffineMap, PAMap
from .cosets import AffineCoset
from .defsets import Block, DefinableSet, K0Class, make_block
from .errors import WorkbenchError
from .symbolic import COUNTABLE, Atom, FormalAbGroup

# rationals ------------------------------------------------------------------


def rat_to_json(x: Fraction):
    x = Fraction(x)
    return int(x) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def rat_from_json(v) -> Fraction:
    if isinstance(v, bool) or isinstance(v, float):
        raise WorkbenchError(f"expected an exact rational, got {v!r}")
    if isinstance(v, int):
        return Fraction(v)
    if isinstance(v, str):
        return Fraction(v)
    raise WorkbenchError(f"cannot read a rational from {v!r}")


def _vec_to_json(vec):
    return [rat_to_json(x) for x in vec]


def _rows_to_json(rows):
    return [_vec_to_json(r) for r in rows]


def _rows_from_json(rows):
    return [[rat_from_json(x) for x in row] for row in rows]


# cosets, blocks, sets --------------------------------------------------------


def coset_to_json(c: AffineCoset) -> dict:
    if c.empty:
        return {"ambient": c.ambient, "empty": True}
    return {"ambient": c.ambient, "rows": _rows_to_json(c.rows)}


def coset_from_json(d: dict) -> AffineCoset:
    ambient = int(d["ambient"])
    if d.get("empty"):
        return AffineCoset.empty_set(ambient)
    return AffineCoset.from_rows(ambient, _rows_from_json(d.get("rows", [])))


def block_to_json(b: Block) -> dict:
    return {"carrier": coset_to_json(b.carrier),
            "holes": [coset_to_json(h) for h in b.holes]}


def block_from_json(d: dict) -> Block:
    block = make_block(coset_from_json(d["carrier"]),
                       [coset_from_json(h) for h in d.get("holes", [])])
    if block is None:
        raise WorkbenchError("block in JSON input denotes the empty set")
    return block


def defset_to_json(s: DefinableSet) -> dict:
    return {"ambient": s.ambient, "blocks": [block_to_json(b) for b in s.blocks]}


def defset_from_json(d: dict) -> DefinableSet:
    return DefinableSet.from_blocks(
        int(d["ambient"]), [block_from_json(b) for b in d.get("blocks", [])])


# piecewise-affine maps --------------------------------------------------------


def pamap_to_json(f: PAMap) -> dict:
    pieces = []
    for block, affine in f.pieces:
        pieces.append({
            "carrier": coset_to_json(block.carrier),
            "holes": [coset_to_json(h) for h in block.holes],
            "matrix": _rows_to_json(affine.matrix),
            "offset": _vec_to_json(affine.offset),
        })
    return {"ambient": f.ambient, "pieces": pieces}


def pamap_from_json(d: dict) -> PAMap:
    ambient = int(d["ambient"])
    pieces = []
    for p in d["pieces"]:
        block = block_from_json({"carrier": p["carrier"],
                                 "holes": p.get("holes", [])})
        affine = AffineMap.make(_rows_from_json(p["matrix"]),
                                [rat_from_json(x) for x in p["offset"]])
        pieces.append((block, affine))
    return PAMap(ambient, pieces)


# classes and formal groups ----------------------------------------------------


def k0_to_json(c: K0Class) -> dict:
    return {"coeffs": [int(x) for x in c.coeffs]}


def k0_from_json(d: dict) -> K0Class:
    return K0Class.make([int(x) for x in d.get("coeffs", [])])


def abgroup_to_json(g: FormalAbGroup) -> dict:
    return g.to_json()


def _atom_from_json(d: dict) -> Atom:
    kind = d["atom"]
    if kind == "Zmod":
        return Atom("zmod", k=int(d["k"]))
    if kind == "UnitsOf":
        return Atom("units", ring=str(d["ring"]))
    if kind == "GLab":
        return Atom("glab", ring=str(d["ring"]), n=int(d["n"]))
    if kind == "UndeterminedZ2":
        return Atom("und")
    raise WorkbenchError(f"unknown atom kind {kind!r}")


def abgroup_from_json(d: dict) -> FormalAbGroup:
    pairs = []
    for s in d.get("summands", []):
        mult = s.get("mult", 1)
        if mult != COUNTABLE:
            mult = int(mult)
        pairs.append((_atom_from_json(s), mult))
    return FormalAbGroup.make(pairs)


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"
