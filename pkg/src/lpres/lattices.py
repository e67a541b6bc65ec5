"""Exact integer lattice arithmetic.

Everything here works on dense integer row vectors (lists of ints) with
arbitrary-precision arithmetic.  The central objects are row-style
Hermite normal forms, used as canonical bases of subgroups of Z^n, and
Smith invariants, used to name finitely generated abelian groups.

Conventions for the Hermite normal form: rows are ordered by strictly
increasing pivot column, pivots are positive, and every entry above a
pivot lies in [0, pivot).  Two generating sets span the same lattice
exactly when they produce identical HNF rows.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Extended gcd: returns (g, x, y) with g = a*x + b*y and g >= 0."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def row_times_matrix(vec: Sequence[int], matrix: Sequence[Sequence[int]]) -> list[int]:
    """Right action of a matrix on a row vector: (v * M)_j = sum_i v_i M[i][j]."""
    if not matrix:
        return []
    ncols = len(matrix[0])
    out = [0] * ncols
    for vi, row in zip(vec, matrix):
        if vi:
            for j, mij in enumerate(row):
                if mij:
                    out[j] += vi * mij
    return out


def matrix_product(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> list[list[int]]:
    return [row_times_matrix(row, b) for row in a]


@dataclass(frozen=True)
class HNFBasis:
    """Canonical basis of a sublattice of Z^ncols."""

    rows: tuple[tuple[int, ...], ...]
    pivots: tuple[int, ...]
    ncols: int

    @property
    def rank(self) -> int:
        return len(self.rows)

    def __iter__(self):
        return iter(self.rows)


def _hnf_worker(rows: list[list[int]], ncols: int, transform: bool):
    """Row-reduce to canonical HNF; optionally carry a unimodular transform.

    Returns (reduced rows, pivot columns, full transform rows or None).
    With transform=True, the returned matrix U satisfies: U * input has
    the HNF rows on top and zero rows below.
    """
    m = len(rows)
    work = [list(r) for r in rows]
    uni = [[1 if i == j else 0 for j in range(m)] for i in range(m)] if transform else None
    rank = 0
    for col in range(ncols):
        # find a row at or below `rank` with a nonzero entry in this column
        pivot_row = None
        for i in range(rank, m):
            if work[i][col]:
                if pivot_row is None or abs(work[i][col]) < abs(work[pivot_row][col]):
                    pivot_row = i
        if pivot_row is None:
            continue
        # gcd elimination within the column
        while True:
            work[rank], work[pivot_row] = work[pivot_row], work[rank]
            if uni is not None:
                uni[rank], uni[pivot_row] = uni[pivot_row], uni[rank]
            dirty = False
            p = work[rank][col]
            for i in range(rank + 1, m):
                if work[i][col]:
                    q = work[i][col] // p
                    if q:
                        wi, wr = work[i], work[rank]
                        for j in range(col, ncols):
                            wi[j] -= q * wr[j]
                        if uni is not None:
                            ui, ur = uni[i], uni[rank]
                            for j in range(m):
                                ui[j] -= q * ur[j]
                    if work[i][col]:
                        dirty = True
            if not dirty:
                break
            pivot_row = None
            for i in range(rank, m):
                if work[i][col]:
                    if pivot_row is None or abs(work[i][col]) < abs(work[pivot_row][col]):
                        pivot_row = i
        if work[rank][col] < 0:
            work[rank] = [-x for x in work[rank]]
            if uni is not None:
                uni[rank] = [-x for x in uni[rank]]
        # reduce the entries above the pivot into [0, pivot)
        p = work[rank][col]
        for i in range(rank):
            q = work[i][col] // p
            if q:
                wi, wr = work[i], work[rank]
                for j in range(col, ncols):
                    wi[j] -= q * wr[j]
                if uni is not None:
                    ui, ur = uni[i], uni[rank]
                    for j in range(m):
                        ui[j] -= q * ur[j]
        rank += 1
        if rank == m:
            break
    reduced = work[:rank]
    pivots = []
    for row in reduced:
        for j, x in enumerate(row):
            if x:
                pivots.append(j)
                break
    return reduced, pivots, uni


def hnf(rows: Iterable[Sequence[int]], ncols: Optional[int] = None) -> HNFBasis:
    """Canonical Hermite normal form of the lattice spanned by the rows."""
    rows = [list(r) for r in rows]
    if ncols is None:
        if not rows:
            raise ValueError("ncols is required for an empty generating set")
        ncols = len(rows[0])
    for r in rows:
        if len(r) != ncols:
            raise ValueError("rows of unequal length")
    reduced, pivots, _ = _hnf_worker(rows, ncols, transform=False)
    return HNFBasis(tuple(tuple(r) for r in reduced), tuple(pivots), ncols)


def membership(basis: HNFBasis, vector: Sequence[int]) -> Optional[list[int]]:
    """Coefficients of `vector` over the basis rows, or None when outside.

    When the result is coeffs, sum(coeffs[i] * rows[i]) == vector exactly.
    """
    if len(vector) != basis.ncols:
        raise ValueError("vector length does not match the lattice ambient rank")
    v = list(vector)
    coeffs = []
    for row, p in zip(basis.rows, basis.pivots):
        q, r = divmod(v[p], row[p])
        if r:
            return None
        coeffs.append(q)
        if q:
            for j in range(p, basis.ncols):
                v[j] -= q * row[j]
    if any(v):
        return None
    return coeffs


@dataclass(frozen=True)
class ExtensionReport:
    """Outcome of pushing one vector into a lattice.

    dependent     -- the vector was already in the lattice
    rank_grew     -- the rank went up (otherwise only the index dropped)
    coefficients  -- expression of a dependent vector over the old basis
    """

    dependent: bool
    rank_grew: bool
    coefficients: Optional[tuple[int, ...]]


def extend_basis(basis: HNFBasis, vector: Sequence[int]) -> tuple[HNFBasis, ExtensionReport]:
    coeffs = membership(basis, vector)
    if coeffs is not None:
        return basis, ExtensionReport(True, False, tuple(coeffs))
    grown = hnf(list(basis.rows) + [list(vector)], basis.ncols)
    return grown, ExtensionReport(False, grown.rank > basis.rank, None)


def left_kernel(matrix: Sequence[Sequence[int]], nrows: Optional[int] = None) -> list[list[int]]:
    """Basis of {x in Z^nrows : x * matrix = 0}, as canonical HNF rows."""
    rows = [list(r) for r in matrix]
    if nrows is None:
        nrows = len(rows)
    if not rows:
        return [[1 if i == j else 0 for j in range(nrows)] for i in range(nrows)]
    ncols = len(rows[0])
    _, pivots, uni = _hnf_worker(rows, ncols, transform=True)
    rank = len(pivots)
    kernel = uni[rank:]
    if not kernel:
        return []
    reduced, _, _ = _hnf_worker(kernel, nrows, transform=False)
    return [list(r) for r in reduced]


@dataclass(frozen=True)
class AbelianInvariants:
    """A finitely generated abelian group: Z^free_rank + cyclic torsion chain.

    The torsion entries form a dividing chain d1 | d2 | ... with every
    entry > 1, as produced by the Smith normal form.
    """

    free_rank: int
    torsion: tuple[int, ...]

    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def order(self) -> Optional[int]:
        """Group order, or None when infinite."""
        if self.free_rank:
            return None
        out = 1
        for d in self.torsion:
            out *= d
        return out

    def rank(self) -> int:
        """Minimal number of generators."""
        return self.free_rank + len(self.torsion)

    def elementary_exponent(self) -> Optional[int]:
        """p when the group is (Z_p)^k for some prime power p, else None."""
        if self.free_rank or not self.torsion:
            return None
        first = self.torsion[0]
        if all(d == first for d in self.torsion):
            return first
        return None

    def is_quotient_of(self, other: "AbelianInvariants") -> bool:
        """Whether a surjection other -> self can exist.

        Free factors of `other` may cover free or torsion factors of
        self, so other's chain is padded with zeros (read: infinity)
        for its surplus free rank before the entrywise divisibility
        test on right-aligned chains.
        """
        if self.free_rank > other.free_rank:
            return False
        surplus = other.free_rank - self.free_rank
        chain_other = list(other.torsion) + [0] * surplus
        chain_self = list(self.torsion)
        if len(chain_self) > len(chain_other):
            return False
        chain_self = [1] * (len(chain_other) - len(chain_self)) + chain_self
        for a, b in zip(chain_self, chain_other):
            if b == 0:
                continue
            if b % a:
                return False
        return True

    def render(self) -> str:
        """Readable name, e.g. 'Z^2 x Z_4' or '(Z_2)^5' or '1'."""
        p = self.elementary_exponent()
        if p is not None and len(self.torsion) >= 2:
            return "(Z_%d)^%d" % (p, len(self.torsion))
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank:
            parts.append("Z^%d" % self.free_rank)
        parts.extend("Z_%d" % d for d in self.torsion)
        if not parts:
            return "1"
        return " x ".join(parts)

    def __str__(self) -> str:
        return self.render()


def smith_invariants(rows: Iterable[Sequence[int]], ambient_rank: int) -> AbelianInvariants:
    """Invariants of Z^ambient_rank modulo the lattice spanned by the rows."""
    work = [list(r) for r in rows]
    for r in work:
        if len(r) != ambient_rank:
            raise ValueError("relation rows must have length ambient_rank")
    m, n = len(work), ambient_rank
    diag = []
    t = 0
    while t < min(m, n):
        # locate the smallest nonzero entry in the trailing submatrix
        best = None
        for i in range(t, m):
            for j in range(t, n):
                x = work[i][j]
                if x and (best is None or abs(x) < abs(work[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        bi, bj = best
        work[t], work[bi] = work[bi], work[t]
        if bj != t:
            for row in work:
                row[t], row[bj] = row[bj], row[t]
        while True:
            # clear column t
            dirty = False
            p = work[t][t]
            for i in range(t + 1, m):
                if work[i][t]:
                    q = work[i][t] // p
                    if q:
                        wi, wt = work[i], work[t]
                        for j in range(t, n):
                            wi[j] -= q * wt[j]
                    if work[i][t]:
                        dirty = True
            if dirty:
                best = min(
                    (i for i in range(t, m) if work[i][t]),
                    key=lambda i: abs(work[i][t]),
                )
                work[t], work[best] = work[best], work[t]
                continue
            # clear row t
            dirty = False
            p = work[t][t]
            for j in range(t + 1, n):
                if work[t][j]:
                    q = work[t][j] // p
                    if q:
                        for row in work:
                            row[j] -= q * row[t]
                    if work[t][j]:
                        dirty = True
            if dirty:
                jbest = min(
                    (j for j in range(t, n) if work[t][j]),
                    key=lambda j: abs(work[t][j]),
                )
                for row in work:
                    row[t], row[jbest] = row[jbest], row[t]
                continue
            # divisibility sweep: the pivot must divide the rest
            p = abs(work[t][t])
            culprit = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if work[i][j] % p:
                        culprit = i
                        break
                if culprit is not None:
                    break
            if culprit is None:
                break
            wi, wt = work[culprit], work[t]
            for j in range(t, n):
                wt[j] += wi[j]
        diag.append(abs(work[t][t]))
        t += 1
    rank = len(diag)
    torsion = tuple(d for d in diag if d > 1)
    return AbelianInvariants(ambient_rank - rank, torsion)


def subgroup_invariants(
    gens: Iterable[Sequence[int]],
    relations: Iterable[Sequence[int]],
    ncols: int,
) -> AbelianInvariants:
    """Invariants of (V + T) / T for V = span(gens), T = span(relations).

    This names the subgroup generated by the images of `gens` inside
    the quotient Z^ncols / T.
    """
    gens = [list(g) for g in gens]
    relations = [list(r) for r in relations]
    total = hnf(gens + relations, ncols)
    coeff_rows = []
    for r in relations:
        coeffs = membership(total, r)
        if coeffs is None:
            raise AssertionError("relation escaped its own span")
        coeff_rows.append(coeffs)
    return smith_invariants(coeff_rows, total.rank)


def spin_closure(
    seed_rows: Iterable[Sequence[int]],
    matrices: Sequence[Sequence[Sequence[int]]],
    base_rows: Iterable[Sequence[int]] = (),
    ncols: Optional[int] = None,
) -> HNFBasis:
    """Smallest lattice containing seeds and base, closed under the matrices.

    The base rows are included but act as the ambient torsion: closure
    is tested modulo the running lattice, and matrices are applied to
    every vector that enlarges it.  Processing is breadth-first and
    deterministic.
    """
    seeds = [list(r) for r in seed_rows]
    base = [list(r) for r in base_rows]
    if ncols is None:
        probe = seeds or base
        if not probe:
            raise ValueError("ncols is required when both seed and base are empty")
        ncols = len(probe[0])
    lattice = hnf(seeds + base, ncols) if (seeds or base) else hnf([], ncols)
    queue = list(seeds)
    head = 0
    while head < len(queue):
        vec = queue[head]
        head += 1
        for mat in matrices:
            img = row_times_matrix(vec, mat)
            if membership(lattice, img) is None:
                lattice = hnf(list(lattice.rows) + [img], ncols)
                queue.append(img)
    return lattice
