"""Product subgroups of r copies of the Heisenberg group, glued along a family of symplectic forms.

Given invertible matrices A_1..A_r over F_p, the subgroup consists of
the tuples (g_1, ..., g_r) whose projections satisfy A_1^-1 eta(g_1) =
... = A_r^-1 eta(g_r).  It has order p^(2n+r), and two tuples commute
exactly when the common projection vectors are orthogonal for every
pulled-back form omega_j = omega(A_j . , A_j . ).  So if no k-dimensional
subspace is isotropic for all the omega_j simultaneously, abelian
subgroups have at most p^(r+k) elements.

Families certifying that property exist whenever 4n < r(k-1); the search
below samples matrices pseudorandomly (seeded) and always verifies by
exhaustive subspace enumeration.  A family is never reported as
certified on randomized evidence alone.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Iterator, Sequence

from .groups import HeisenbergElement
from .symplectic import (
    DEFAULT_SUBSPACE_BUDGET,
    BudgetExceeded,
    Matrix,
    SymplecticForm,
    enumerate_isotropic,
    gaussian_binomial,
    is_invertible,
    random_invertible,
)

DEFAULT_SEARCH_ATTEMPTS = 20


def isotropy_free_dimension(n: int, r: int) -> int:
    """The target dimension k = floor(4n/r) + 2; always satisfies 4n < r(k-1).

    When r divides 4n this is exactly 2 + 4n/r; otherwise it is the
    smallest integer choice compatible with the same inequality.
    """
    k = 4 * n // r + 2
    assert 4 * n < r * (k - 1)
    return k


@dataclass
class ProductSubgroupSpec:
    """A family of forms and matrices defining the product subgroup, plus its verification state."""

    n: int
    p: int
    r: int
    k: int
    mats: tuple[Matrix, ...]
    forms: tuple[SymplecticForm, ...]
    certified: bool
    transcript: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        if len(self.mats) != self.r or len(self.forms) != self.r:
            raise ValueError("need exactly r matrices and r forms")
        if not 4 * self.n < self.r * (self.k - 1):
            raise ValueError(f"k={self.k} violates 4n < r(k-1) at n={self.n}, r={self.r}")
        standard = SymplecticForm.standard(self.n, self.p)
        for j, (a, form) in enumerate(zip(self.mats, self.forms), start=1):
            if not is_invertible(a, self.p):
                raise ValueError(f"A_{j} is not invertible mod {self.p}")
            if standard.pullback(a).matrix != form.matrix:
                raise ValueError(f"form {j} does not equal the pullback of the standard form by A_{j}")

    @property
    def order_exponent(self) -> int:
        return 2 * self.n + self.r

    @property
    def abelian_exponent(self) -> int:
        """Structural bound exponent: r + min(k, 2n)."""
        return self.r + min(self.k, 2 * self.n)


def identity_matrix(dim: int) -> Matrix:
    return tuple(tuple(1 if i == j else 0 for j in range(dim)) for i in range(dim))


def olshanskii_search(
    n: int,
    r: int,
    p: int,
    seed: int = 0,
    budget: int = DEFAULT_SUBSPACE_BUDGET,
    attempts: int = DEFAULT_SEARCH_ATTEMPTS,
) -> ProductSubgroupSpec:
    """Search for r symplectic forms on F_p^(2n) with no common k-dimensional isotropic subspace.

    A_1 is always the identity; the rest are sampled from the seeded rng.
    Certification is always by exhaustive enumeration.  If no family
    passes within the attempt budget the result comes back uncertified,
    with the transcript recording every attempt; existence for small
    parameters is not guaranteed, so honest exhaustion is a valid
    outcome.
    """
    if r < 2:
        raise ValueError("r must be at least 2 (the single-factor case uses the plain group bound)")
    if n < 1:
        raise ValueError("n must be at least 1")
    k = isotropy_free_dimension(n, r)
    total = gaussian_binomial(2 * n, k, p)
    if total > budget:
        raise BudgetExceeded(total, budget)
    rng = random.Random(seed)
    standard = SymplecticForm.standard(n, p)
    attempts_log: list[dict] = []
    last: tuple[tuple[Matrix, ...], tuple[SymplecticForm, ...]] | None = None
    for attempt in range(1, attempts + 1):
        mats = (identity_matrix(2 * n),) + tuple(
            random_invertible(2 * n, p, rng) for _ in range(r - 1)
        )
        forms = tuple(standard.pullback(a) for a in mats)
        common = enumerate_isotropic(list(forms), k, budget=budget)
        attempts_log.append({"attempt": attempt, "common_isotropic_found": len(common)})
        last = (mats, forms)
        if not common:
            return ProductSubgroupSpec(
                n=n,
                p=p,
                r=r,
                k=k,
                mats=mats,
                forms=forms,
                certified=True,
                transcript={
                    "seed": seed,
                    "attempts": attempts_log,
                    "subspaces_examined_per_attempt": total,
                },
            )
    assert last is not None
    return ProductSubgroupSpec(
        n=n,
        p=p,
        r=r,
        k=k,
        mats=last[0],
        forms=last[1],
        certified=False,
        transcript={
            "seed": seed,
            "attempts": attempts_log,
            "subspaces_examined_per_attempt": total,
            "exhausted": True,
        },
    )


@dataclass(frozen=True)
class ProductBound:
    order_exponent: int
    abelian_exponent: int
    exact_abelian_exponent: int | None
    max_common_isotropic_dim: int | None


def product_subgroup_bound(
    spec: ProductSubgroupSpec, exact_budget: int = DEFAULT_SUBSPACE_BUDGET
) -> ProductBound:
    """Bound exponents (order, abelian) for a certified family.

    Structurally the abelian exponent is r + min(k, 2n).  When the
    enumerations fit the budget, the exact maximal common-isotropic
    dimension d is computed as well, giving the exact maximal abelian
    order p^(r+d) (the preimage of a maximal common-isotropic subspace
    is abelian and attains it).
    """
    if not spec.certified:
        raise ValueError("bounds are only reported for certified families")
    d_exact: int | None = None
    for d in range(min(spec.k - 1, 2 * spec.n), -1, -1):
        try:
            found = enumerate_isotropic(list(spec.forms), d, budget=exact_budget)
        except BudgetExceeded:
            d_exact = None
            break
        if found:
            d_exact = d
            break
    return ProductBound(
        order_exponent=spec.order_exponent,
        abelian_exponent=spec.abelian_exponent,
        exact_abelian_exponent=None if d_exact is None else spec.r + d_exact,
        max_common_isotropic_dim=d_exact,
    )


# -- explicit product-group elements (used to cross-check the commutation criterion) --


def product_element(
    spec: ProductSubgroupSpec, v: Sequence[int], zs: Sequence[int]
) -> tuple[HeisenbergElement, ...]:
    """The tuple with common projection v and central coordinates zs."""
    n, p = spec.n, spec.p
    if len(v) != 2 * n or len(zs) != spec.r:
        raise ValueError("v must have length 2n and zs length r")
    out = []
    for a, z in zip(spec.mats, zs):
        image = tuple(sum(a[i][j] * v[j] for j in range(2 * n)) % p for i in range(2 * n))
        out.append(HeisenbergElement(n, p, image[:n], image[n:], z))
    return tuple(out)


def product_mul(
    g: tuple[HeisenbergElement, ...], h: tuple[HeisenbergElement, ...]
) -> tuple[HeisenbergElement, ...]:
    return tuple(a * b for a, b in zip(g, h))


def common_projection(spec: ProductSubgroupSpec, g: tuple[HeisenbergElement, ...]) -> tuple[int, ...]:
    """A_1^-1 eta(g_1); with A_1 = I this is just eta(g_1)."""
    n, p = spec.n, spec.p
    a1 = [list(row) for row in spec.mats[0]]
    target = list(g[0].eta())
    # solve A_1 w = eta(g_1) by elimination
    aug = [row + [t] for row, t in zip(a1, target)]
    dim = 2 * n
    r = 0
    for c in range(dim):
        pivot = next((i for i in range(r, dim) if aug[i][c] % p), None)
        if pivot is None:
            continue
        aug[r], aug[pivot] = aug[pivot], aug[r]
        inv = pow(aug[r][c], -1, p)
        aug[r] = [x * inv % p for x in aug[r]]
        for i in range(dim):
            if i != r and aug[i][c]:
                f = aug[i][c]
                aug[i] = [(x - f * y) % p for x, y in zip(aug[i], aug[r])]
        r += 1
    return tuple(aug[i][dim] for i in range(dim))


def iterate_product_group(
    spec: ProductSubgroupSpec, budget: int = 10_000
) -> Iterator[tuple[HeisenbergElement, ...]]:
    """All p^(2n+r) elements of the product subgroup."""
    n, p, r = spec.n, spec.p, spec.r
    order = p ** (2 * n + r)
    if order > budget:
        raise BudgetExceeded(order, budget, what="group elements")
    for v in itertools.product(range(p), repeat=2 * n):
        for zs in itertools.product(range(p), repeat=r):
            yield product_element(spec, v, zs)
