"""Square matrices over a MatRing, with exact inverse via the adjugate."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import WorkbenchError
from .rings import MatRing


@dataclass(frozen=True)
class Mat:
    ring: MatRing
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        n = len(self.rows)
        if any(len(r) != n for r in self.rows):
            raise ValueError("matrix must be square")
        for r in self.rows:
            for x in r:
                if not (0 <= x < self.ring.size):
                    raise ValueError(f"entry {x} outside {self.ring}")

    @staticmethod
    def identity(ring: MatRing, n: int) -> "Mat":
        return Mat(ring, tuple(tuple(ring.one if i == j else ring.zero for j in range(n))
                               for i in range(n)))

    @staticmethod
    def transvection(ring: MatRing, n: int, i: int, j: int, c: int) -> "Mat":
        """I + c*e_ij with i != j; always invertible (det 1)."""
        if i == j:
            raise ValueError("transvection needs i != j")
        rows = [[ring.one if a == b else ring.zero for b in range(n)] for a in range(n)]
        rows[i][j] = c
        return Mat(ring, tuple(tuple(r) for r in rows))

    @property
    def n(self) -> int:
        return len(self.rows)

    def __mul__(self, other: "Mat") -> "Mat":
        if self.ring is not other.ring and self.ring != other.ring:
            raise ValueError("ring mismatch")
        R, n = self.ring, self.n
        ot = tuple(zip(*other.rows))  # columns of other
        out = []
        for row in self.rows:
            new = []
            for col in ot:
                acc = R.zero
                for a, b in zip(row, col):
                    acc = R.add(acc, R.mul(a, b))
                new.append(acc)
            out.append(tuple(new))
        return Mat(R, tuple(out))

    def det(self) -> int:
        R, n = self.ring, self.n
        if n == 1:
            return self.rows[0][0]
        # Laplace expansion along the first row; fine at the sizes we enumerate
        total = R.zero
        for j in range(n):
            c = self.rows[0][j]
            if c == R.zero:
                continue
            minor = Mat(R, tuple(r[:j] + r[j + 1:] for r in self.rows[1:]))
            term = R.mul(c, minor.det())
            total = R.add(total, term if j % 2 == 0 else R.neg(term))
        return total

    def adjugate(self) -> "Mat":
        R, n = self.ring, self.n
        if n == 1:
            return Mat(R, ((R.one,),))
        cof = [[R.zero] * n for _ in range(n)]
        for i in range(n):
            for j in range(n):
                minor = Mat(R, tuple(r[:j] + r[j + 1:]
                                     for k, r in enumerate(self.rows) if k != i))
                c = minor.det()
                cof[i][j] = c if (i + j) % 2 == 0 else R.neg(c)
        # adjugate is the transpose of the cofactor matrix
        return Mat(R, tuple(tuple(cof[j][i] for j in range(n)) for i in range(n)))

    def inverse(self) -> "Mat":
        R = self.ring
        d = self.det()
        if not R.is_unit(d):
            raise WorkbenchError(f"matrix is singular over {R}: det = {d}")
        dinv = R.inv(d)
        adj = self.adjugate()
        return Mat(R, tuple(tuple(R.mul(dinv, x) for x in row) for row in adj.rows))

    def is_invertible(self) -> bool:
        return self.ring.is_unit(self.det())

    def identity_like(self) -> "Mat":
        return Mat.identity(self.ring, self.n)

    def apply(self, vec: tuple[int, ...]) -> tuple[int, ...]:
        R = self.ring
        out = []
        for row in self.rows:
            acc = R.zero
            for a, x in zip(row, vec):
                acc = R.add(acc, R.mul(a, x))
            out.append(acc)
        return tuple(out)

    @property
    def sort_key(self):
        return self.rows

    def __repr__(self) -> str:
        return f"Mat({self.ring}, {self.rows})"
