"""Exact linear algebra over the rationals.

Dense systems are solved by fraction-free (Bareiss) elimination on an
integer-scaled copy of the augmented matrix.  Absorption systems coming from
Markov chains are first split into strongly connected blocks so that only
the blocks themselves are ever solved densely.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Collection, Sequence

from .graph import sccs

ZERO = Fraction(0)
ONE = Fraction(1)


class SingularSystem(ArithmeticError):
    pass


@dataclass(frozen=True)
class LinearSystem:
    """Square system ``matrix @ x = rhs`` over the rationals."""

    matrix: tuple[tuple[Fraction, ...], ...]
    rhs: tuple[Fraction, ...]

    def __post_init__(self):
        n = len(self.rhs)
        if len(self.matrix) != n or any(len(row) != n for row in self.matrix):
            raise ValueError("matrix must be square and match the right-hand side")

    def solve(self) -> list[Fraction]:
        return bareiss_solve(self.matrix, self.rhs)


def bareiss_solve(matrix: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]) -> list[Fraction]:
    """Solve ``matrix @ x = rhs`` exactly; raise :class:`SingularSystem` if not unique."""
    n = len(rhs)
    if n == 0:
        return []
    # scale every row to integers
    rows: list[list[int]] = []
    for row, b in zip(matrix, rhs):
        entries = [Fraction(a) for a in row] + [Fraction(b)]
        scale = lcm(*(e.denominator for e in entries))
        rows.append([e.numerator * (scale // e.denominator) for e in entries])

    prev = 1
    for k in range(n):
        pivot = next((i for i in range(k, n) if rows[i][k] != 0), None)
        if pivot is None:
            raise SingularSystem(f"no pivot in column {k}")
        if pivot != k:
            rows[k], rows[pivot] = rows[pivot], rows[k]
        rk = rows[k]
        akk = rk[k]
        for i in range(k + 1, n):
            ri = rows[i]
            aik = ri[k]
            for j in range(k + 1, n + 1):
                ri[j] = (ri[j] * akk - rk[j] * aik) // prev
            ri[k] = 0
        prev = akk

    x: list[Fraction] = [ZERO] * n
    for i in range(n - 1, -1, -1):
        ri = rows[i]
        acc = Fraction(ri[n])
        for j in range(i + 1, n):
            if ri[j]:
                acc -= ri[j] * x[j]
        x[i] = acc / ri[i]
    return x


def solve_absorption(
    succ: Sequence[Sequence[int]],
    probs: Sequence[Sequence[Fraction]],
    unknown: Collection[int],
    known: dict[int, Fraction],
) -> dict[int, Fraction]:
    """Solve ``x_v = sum_w p(v, w) x_w`` for ``v`` in ``unknown``.

    Successors of unknown vertices that are neither unknown nor listed in
    ``known`` count as zero.  The system has to be uniquely solvable, which holds
    when every unknown vertex can leave the unknown set with positive
    probability.  Blocks are processed bottom-up so each dense solve only
    involves one strongly connected component.
    """
    unknown = set(unknown)
    values: dict[int, Fraction] = dict(known)
    for comp in sccs(sorted(unknown), lambda v: succ[v]):
        if len(comp) == 1:
            v = comp[0]
            diag = ONE
            acc = ZERO
            for w, p in zip(succ[v], probs[v]):
                if w == v:
                    diag -= p
                else:
                    acc += p * values.get(w, ZERO)
            if diag == 0:
                raise SingularSystem(f"vertex {v} never leaves itself")
            values[v] = acc / diag
            continue
        pos = {v: i for i, v in enumerate(comp)}
        m = len(comp)
        matrix = [[ZERO] * m for _ in range(m)]
        rhs = [ZERO] * m
        for i, v in enumerate(comp):
            matrix[i][i] = ONE
            for w, p in zip(succ[v], probs[v]):
                j = pos.get(w)
                if j is None:
                    rhs[i] += p * values.get(w, ZERO)
                else:
                    matrix[i][j] -= p
        for v, x in zip(comp, bareiss_solve(matrix, rhs)):
            values[v] = x
    return {v: values[v] for v in unknown}
