"""Finite-field point counts for boolean combinations with integer data.

This is an oracle that is independent of the rational block calculus: points
of F_p^n are enumerated and each leaf system is decided by a mod-p linear
solve, existential variables included.  The good-prime flag certifies that
the count provably equals the Grothendieck class evaluated at p:

  (a) every leaf system keeps its rank pattern mod p (coefficient block,
      augmented matrix, and bound-variable block), so projections behave;
  (b) for every block of the normal form and every subset of its holes, the
      stacked integer system keeps rank and consistency mod p, so the
      inclusion-exclusion over F_p matches the one over Q term by term;
  (c) observed mod-p membership agrees pointwise: the reduced blocks stay
      pairwise disjoint and their union is exactly the reduced raw set.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .cosets import LinearSystem
from .defsets import And, DefinableSet, Leaf, Not, Or, boolean_normalize, expr_leaves, k0_class
from .errors import WorkbenchError
from .linalg import rank, rank_mod_p, solvable_mod_p

_POINT_LIMIT = 10 ** 6


@dataclass(frozen=True)
class CountReport:
    prime: int
    ambient: int
    count: int
    good_prime: bool
    predicted: int

    def to_json(self) -> dict:
        return {
            "prime": self.prime,
            "ambient": self.ambient,
            "count": self.count,
            "good_prime": self.good_prime,
            "class_value": self.predicted,
        }


def _leaf_systems(expr) -> list[LinearSystem]:
    systems = []
    for leaf in expr_leaves(expr):
        if not isinstance(leaf.payload, LinearSystem):
            raise WorkbenchError("counting needs raw linear systems as leaves")
        if not leaf.payload.is_integral():
            raise WorkbenchError("leaf coefficients must be integers")
        systems.append(leaf.payload)
    return systems


def _leaf_rank_pattern_ok(system: LinearSystem, p: int) -> bool:
    n, b = system.ambient, system.bound
    coeff = [[int(x) for x in row[:-1]] for row in system.rows]
    aug = [[int(x) for x in row] for row in system.rows]
    ybl = [[int(x) for x in row[n:n + b]] for row in system.rows]
    return (rank_mod_p(coeff, p) == rank(coeff)
            and rank_mod_p(aug, p) == rank(aug)
            and rank_mod_p(ybl, p) == rank(ybl))


def _lattice_ranks_ok(d: DefinableSet, p: int) -> bool:
    for block in d.blocks:
        base = block.carrier.integer_rows()
        hole_rows = [h.integer_rows() for h in block.holes]
        for size in range(len(hole_rows) + 1):
            for subset in itertools.combinations(range(len(hole_rows)), size):
                stacked = list(base)
                for i in subset:
                    stacked += hole_rows[i]
                coeff = [row[:-1] for row in stacked]
                if rank_mod_p(coeff, p) != rank(coeff):
                    return False
                if rank_mod_p(stacked, p) != rank(stacked):
                    return False
    return True


def _leaf_holds(system: LinearSystem, point, p: int) -> bool:
    n, b = system.ambient, system.bound
    ybl, rhs = [], []
    for row in system.rows:
        shift = sum(int(a) * x for a, x in zip(row[:n], point))
        rhs.append((int(row[-1]) - shift) % p)
        ybl.append([int(v) % p for v in row[n:n + b]])
    if b == 0:
        return all(v == 0 for v in rhs)
    return solvable_mod_p(ybl, rhs, p)


def _expr_holds(expr, truth) -> bool:
    if isinstance(expr, Leaf):
        return truth[id(expr)]
    if isinstance(expr, Not):
        return not _expr_holds(expr.child, truth)
    if isinstance(expr, And):
        return _expr_holds(expr.left, truth) and _expr_holds(expr.right, truth)
    if isinstance(expr, Or):
        return _expr_holds(expr.left, truth) or _expr_holds(expr.right, truth)
    raise WorkbenchError(f"not a boolean expression node: {expr!r}")


def _point_in_rows(int_rows, point, p: int) -> bool:
    return all(sum(a * x for a, x in zip(row[:-1], point)) % p == row[-1] % p
               for row in int_rows)


def count_points_mod_p(expr, p: int) -> CountReport:
    """Count F_p points of the combination; flag when the count is certified
    to equal the class polynomial at p."""
    systems = _leaf_systems(expr)
    if not systems:
        raise WorkbenchError("expression has no leaves")
    ambient = systems[0].ambient
    if any(s.ambient != ambient for s in systems):
        raise WorkbenchError("leaf ambient mismatch")
    if p ** ambient > _POINT_LIMIT:
        raise WorkbenchError(f"{p}^{ambient} points is too many to enumerate")

    normal = boolean_normalize(expr, ambient)
    good = all(_leaf_rank_pattern_ok(s, p) for s in systems)
    good = good and _lattice_ranks_ok(normal, p)

    block_rows = [(b.carrier.integer_rows(), [h.integer_rows() for h in b.holes])
                  for b in normal.blocks]
    leaves = expr_leaves(expr)

    count = 0
    for point in itertools.product(range(p), repeat=ambient):
        truth = {id(leaf): _leaf_holds(leaf.payload, point, p)
                 for leaf in leaves}
        raw = _expr_holds(expr, truth)
        if raw:
            count += 1
        hits = 0
        for carrier_rows, holes_rows in block_rows:
            if _point_in_rows(carrier_rows, point, p) and not any(
                    _point_in_rows(rows, point, p) for rows in holes_rows):
                hits += 1
        if hits > 1 or (hits == 1) != raw:
            good = False

    return CountReport(p, ambient, count, good, k0_class(normal).evaluate(p))
