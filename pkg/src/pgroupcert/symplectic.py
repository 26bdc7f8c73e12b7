"""Linear algebra over F_p: symplectic forms, canonical subspaces, isotropic enumeration.

Subspaces are represented by their reduced row echelon basis, which is a
unique canonical form, so subspace equality is matrix equality and
enumeration by pivot pattern visits every subspace exactly once.  The
number of k-dimensional subspaces of F_p^m is the Gaussian binomial
coefficient; the enumerator checks its own count against it.

The isotropy filter is vectorized with numpy (batched B W B^T over all
candidate bases); entries stay far below 2**63 so int64 arithmetic is
exact.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

Matrix = tuple[tuple[int, ...], ...]

#: Default ceiling on how many subspaces an exhaustive enumeration may visit.
DEFAULT_SUBSPACE_BUDGET = 10**7

_CHUNK_ROWS = 60_000


class BudgetExceeded(RuntimeError):
    """An exhaustive enumeration would visit more objects than the budget allows."""

    def __init__(self, needed: int, budget: int, what: str = "subspaces"):
        super().__init__(f"enumeration needs {needed} {what}, budget is {budget}")
        self.needed = needed
        self.budget = budget


def _as_matrix(rows: Sequence[Sequence[int]], p: int) -> Matrix:
    return tuple(tuple(int(x) % p for x in row) for row in rows)


def rref_mod_p(rows: Sequence[Sequence[int]], p: int) -> tuple[list[list[int]], list[int]]:
    """Reduced row echelon form over F_p; returns (nonzero rows, pivot columns)."""
    work = [list(int(x) % p for x in row) for row in rows]
    if not work:
        return [], []
    cols = len(work[0])
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        pivot_row = next((i for i in range(r, len(work)) if work[i][c] % p), None)
        if pivot_row is None:
            continue
        work[r], work[pivot_row] = work[pivot_row], work[r]
        inv = pow(work[r][c], -1, p)
        work[r] = [x * inv % p for x in work[r]]
        for i in range(len(work)):
            if i != r and work[i][c]:
                f = work[i][c]
                work[i] = [(a - f * b) % p for a, b in zip(work[i], work[r])]
        pivots.append(c)
        r += 1
        if r == len(work):
            break
    return work[:r], pivots


def rank_mod_p(rows: Sequence[Sequence[int]], p: int) -> int:
    return len(rref_mod_p(rows, p)[0])


def is_invertible(matrix: Sequence[Sequence[int]], p: int) -> bool:
    m = list(matrix)
    return bool(m) and len(m) == len(m[0]) and rank_mod_p(m, p) == len(m)


def random_invertible(dim: int, p: int, rng: random.Random) -> Matrix:
    """Uniformly sampled entries, rejected until invertible."""
    while True:
        candidate = [[rng.randrange(p) for _ in range(dim)] for _ in range(dim)]
        if is_invertible(candidate, p):
            return _as_matrix(candidate, p)


def matmul_mod_p(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]], p: int) -> Matrix:
    arr = (np.array(a, dtype=np.int64) @ np.array(b, dtype=np.int64)) % p
    return tuple(tuple(int(x) for x in row) for row in arr)


@dataclass(frozen=True)
class SymplecticForm:
    """A nondegenerate antisymmetric bilinear form on F_p^(2n), given by its Gram matrix."""

    p: int
    matrix: Matrix

    def __post_init__(self) -> None:
        m = self.matrix
        dim = len(m)
        if dim == 0 or any(len(row) != dim for row in m):
            raise ValueError("form matrix must be square")
        if dim % 2:
            raise ValueError("symplectic forms need even dimension")
        for i in range(dim):
            if m[i][i] % self.p:
                raise ValueError(f"nonzero diagonal entry at {i}")
            for j in range(dim):
                if (m[i][j] + m[j][i]) % self.p:
                    raise ValueError(f"matrix is not antisymmetric at ({i},{j})")
        if rank_mod_p(m, self.p) != dim:
            raise ValueError("form is degenerate")

    @property
    def dim(self) -> int:
        return len(self.matrix)

    @classmethod
    def standard(cls, n: int, p: int) -> "SymplecticForm":
        """omega((x,y),(x',y')) = sum x_j y'_j - x'_j y_j."""
        m = [[0] * (2 * n) for _ in range(2 * n)]
        for i in range(n):
            m[i][n + i] = 1
            m[n + i][i] = p - 1
        return cls(p, _as_matrix(m, p))

    def evaluate(self, u: Sequence[int], v: Sequence[int]) -> int:
        total = 0
        for i, ui in enumerate(u):
            if ui:
                row = self.matrix[i]
                total += ui * sum(row[j] * v[j] for j in range(len(v)) if v[j])
        return total % self.p

    def pullback(self, a: Sequence[Sequence[int]]) -> "SymplecticForm":
        """The form (u,v) -> self(Au, Av), i.e. Gram matrix A^T M A."""
        arr = np.array(a, dtype=np.int64)
        gram = (arr.T @ np.array(self.matrix, dtype=np.int64) @ arr) % self.p
        return SymplecticForm(self.p, tuple(tuple(int(x) for x in row) for row in gram))

    def as_array(self) -> np.ndarray:
        return np.array(self.matrix, dtype=np.int64)


@dataclass(frozen=True)
class Subspace:
    """A subspace of F_p^m in reduced row echelon form (unique per subspace)."""

    p: int
    basis: Matrix

    def __post_init__(self) -> None:
        if self.basis:
            reduced, _ = rref_mod_p(self.basis, self.p)
            if tuple(tuple(row) for row in reduced) != self.basis:
                raise ValueError("basis is not in reduced row echelon form")

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def ambient(self) -> int:
        return len(self.basis[0]) if self.basis else 0

    @classmethod
    def from_vectors(cls, p: int, vectors: Sequence[Sequence[int]]) -> "Subspace":
        reduced, _ = rref_mod_p(vectors, p)
        return cls(p, tuple(tuple(row) for row in reduced))

    def is_isotropic_for(self, form: SymplecticForm) -> bool:
        return all(
            form.evaluate(a, b) == 0
            for a, b in itertools.combinations_with_replacement(self.basis, 2)
        )


def gaussian_binomial(m: int, k: int, p: int) -> int:
    """Number of k-dimensional subspaces of F_p^m."""
    if k < 0 or k > m:
        return 0
    num = den = 1
    for i in range(k):
        num *= p ** (m - i) - 1
        den *= p ** (k - i) - 1
    assert num % den == 0
    return num // den


def _iter_rref_batches(dim: int, p: int, k: int) -> Iterator[np.ndarray]:
    """Yield batches of all reduced-echelon basis matrices, shape (batch, k, dim)."""
    for pivots in itertools.combinations(range(dim), k):
        pivot_set = set(pivots)
        free = [
            (i, j)
            for i in range(k)
            for j in range(pivots[i] + 1, dim)
            if j not in pivot_set
        ]
        template = np.zeros((k, dim), dtype=np.int64)
        for i, c in enumerate(pivots):
            template[i, c] = 1
        e = len(free)
        count = p**e
        radix = p ** np.arange(e, dtype=np.int64)
        rows_i = np.array([f[0] for f in free], dtype=np.int64)
        cols_j = np.array([f[1] for f in free], dtype=np.int64)
        for start in range(0, count, _CHUNK_ROWS):
            stop = min(start + _CHUNK_ROWS, count)
            idx = np.arange(start, stop, dtype=np.int64)
            batch = np.repeat(template[None, :, :], stop - start, axis=0)
            if e:
                digits = (idx[:, None] // radix) % p
                batch[:, rows_i, cols_j] = digits
            yield batch


def enumerate_isotropic(
    forms: Sequence[SymplecticForm],
    k: int,
    budget: int = DEFAULT_SUBSPACE_BUDGET,
) -> list[Subspace]:
    """All k-dimensional subspaces isotropic for every listed form, canonically enumerated.

    An empty list is a certificate: every subspace was visited and
    rejected.  With an empty form list this simply enumerates all
    k-dimensional subspaces.  Raises BudgetExceeded before doing any
    work if the Gaussian-binomial count is over budget.
    """
    if k < 0:
        raise ValueError("k must be nonnegative")
    if not forms:
        raise ValueError("empty form list: use enumerate_subspaces instead")
    p = forms[0].p
    dim = forms[0].dim
    for f in forms:
        if f.p != p or f.dim != dim:
            raise ValueError("forms must share p and dimension")
    if k > dim:
        return []
    total = gaussian_binomial(dim, k, p)
    if total > budget:
        raise BudgetExceeded(total, budget)
    if k == 0:
        return [Subspace(p, ())]

    arrays = [f.as_array() for f in forms]
    survivors: list[Matrix] = []
    examined = 0
    for batch in _iter_rref_batches(dim, p, k):
        examined += len(batch)
        alive = batch
        for w in arrays:
            if not len(alive):
                break
            gram = np.einsum("nij,jk,nlk->nil", alive, w, alive) % p
            mask = ~gram.reshape(len(alive), -1).any(axis=1)
            alive = alive[mask]
        for basis in alive:
            survivors.append(tuple(tuple(int(x) for x in row) for row in basis))
    assert examined == total, f"enumerated {examined} subspaces, expected {total}"
    return [Subspace(p, basis) for basis in survivors]


def enumerate_subspaces(dim: int, p: int, k: int, budget: int = DEFAULT_SUBSPACE_BUDGET) -> list[Subspace]:
    """All k-dimensional subspaces of F_p^dim (no isotropy constraint)."""
    if k > dim:
        return []
    total = gaussian_binomial(dim, k, p)
    if total > budget:
        raise BudgetExceeded(total, budget)
    if k == 0:
        return [Subspace(p, ())]
    out = []
    for batch in _iter_rref_batches(dim, p, k):
        for basis in batch:
            out.append(Subspace(p, tuple(tuple(int(x) for x in row) for row in basis)))
    assert len(out) == total
    return out
