"""Integrable weights of affine su(N) at a fixed level.

Weights are handled in unshifted Dynkin labels ``Lambda_i >= 0`` with
``sum(Lambda_i) <= k``.  The rho-shifted coordinates ``lambda_i = Lambda_i + 1``
(all >= 1, sum < k + N) are used internally where the cyclic diagram
automorphism and the Weyl-group bookkeeping are more natural.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import comb


@dataclass(frozen=True)
class AlgebraSpec:
    """An ordered product of su(N) factors, each at its own level.

    ``factors`` is a tuple of ``(N, k)`` pairs with N >= 2 and k >= 1.
    The shifted level h = k + N is always derived, never stored.
    """

    factors: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if not self.factors:
            raise ValueError("spec needs at least one su(N) factor")
        for n, k in self.factors:
            if n < 2:
                raise ValueError(f"rank parameter N must be >= 2, got {n}")
            if k < 1:
                raise ValueError(f"level must be >= 1, got {k}")

    @classmethod
    def su(cls, n: int, k: int) -> "AlgebraSpec":
        """Single su(n) factor at level k."""
        return cls(((n, k),))

    @property
    def is_single(self) -> bool:
        return len(self.factors) == 1

    def single(self) -> tuple[int, int]:
        """The (N, k) of a one-factor spec; rejects products."""
        if not self.is_single:
            raise ValueError("operation needs a single su(N) factor")
        return self.factors[0]

    def vacuum(self) -> "Weight":
        return Weight(self, tuple(tuple([0] * (n - 1)) for n, _ in self.factors))


@dataclass(frozen=True)
class Weight:
    """An integrable highest weight, one Dynkin label vector per factor."""

    spec: AlgebraSpec
    labels: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.labels) != len(self.spec.factors):
            raise ValueError("one label vector per factor required")
        for (n, k), lab in zip(self.spec.factors, self.labels):
            if len(lab) != n - 1:
                raise ValueError(f"su({n}) labels must have length {n - 1}")
            if any(x < 0 for x in lab):
                raise ValueError(f"labels must be nonnegative, got {lab}")
            if sum(lab) > k:
                raise ValueError(f"label sum {sum(lab)} exceeds level {k}")

    @property
    def single_labels(self) -> tuple[int, ...]:
        self.spec.single()
        return self.labels[0]

    def factor(self, i: int) -> "Weight":
        """Project a product weight onto its i-th factor."""
        return Weight(AlgebraSpec((self.spec.factors[i],)), (self.labels[i],))

    def __sub__(self, other: "Weight") -> "WeightDelta":
        # levels may differ: the difference lives in the bare weight lattice
        if self.spec.single()[0] != other.spec.single()[0]:
            raise ValueError("weights live in different weight lattices")
        return WeightDelta(tuple(a - b for a, b in zip(self.labels[0], other.labels[0])))

    def __str__(self):
        if self.spec.is_single:
            return "(" + ",".join(map(str, self.labels[0])) + ")"
        return "x".join("(" + ",".join(map(str, lab)) + ")" for lab in self.labels)


@dataclass(frozen=True)
class WeightDelta:
    """A formal difference of weights, living in the weight lattice."""

    entries: tuple[int, ...]


def integrable_weights(spec: AlgebraSpec) -> list[Weight]:
    """All integrable weights of a single su(N) factor at level k, in
    lexicographic label order.  The count is C(k+N-1, N-1)."""
    n, k = spec.single()
    out = []
    for lab in itertools.product(range(k + 1), repeat=n - 1):
        if sum(lab) <= k:
            out.append(Weight(spec, (lab,)))
    assert len(out) == comb(k + n - 1, n - 1)
    return out


def color(w: Weight) -> int:
    """Congruence class sum(i * Lambda_i) mod N of a single-factor weight."""
    n, _ = w.spec.single()
    return sum(i * x for i, x in enumerate(w.labels[0], start=1)) % n


def in_root_lattice(d: WeightDelta, n: int) -> bool:
    """True iff the lattice vector lies in the su(n) root lattice."""
    if len(d.entries) != n - 1:
        raise ValueError(f"delta has length {len(d.entries)}, expected {n - 1}")
    return sum(i * x for i, x in enumerate(d.entries, start=1)) % n == 0


def sigma_apply(power: int, w: Weight) -> Weight:
    """Apply the order-N cyclic diagram automorphism ``power`` times.

    In unshifted labels one step maps (L_1,...,L_{N-1}) to
    (k - sum(L), L_1,...,L_{N-2}); for N = 2 this is L -> k - L.
    """
    n, k = w.spec.single()
    lab = w.labels[0]
    for _ in range(power % n):
        lab = (k - sum(lab),) + lab[:-1]
    return Weight(w.spec, (lab,))


def conjugate_weight(w: Weight) -> Weight:
    """Charge conjugation of su(N): reverse the label vector (per factor)."""
    return Weight(w.spec, tuple(tuple(reversed(lab)) for lab in w.labels))


def conformal_weight(w: Weight) -> Fraction:
    """Sugawara conformal weight (L, L + 2*rho) / (2*(k+N)), exact."""
    n, k = w.spec.single()
    lab = w.labels[0]
    rho2 = tuple(x + 2 for x in lab)  # L + 2*rho in labels
    return inner_product(lab, rho2, n) / (2 * (k + n))


# --- su(N) weight-space geometry -----------------------------------------
#
# The quadratic form is normalized so long roots have squared length 2; the
# Gram matrix of the fundamental weights is F_ij = min(i,j) - i*j/N.

def gram_matrix(n: int) -> list[list[Fraction]]:
    return [
        [Fraction(min(i, j)) - Fraction(i * j, n) for j in range(1, n)]
        for i in range(1, n)
    ]


def inner_product(a, b, n: int) -> Fraction:
    """Exact invariant form of two weights given by Dynkin labels."""
    total = Fraction(0)
    for i, ai in enumerate(a, start=1):
        if ai == 0:
            continue
        for j, bj in enumerate(b, start=1):
            if bj:
                total += ai * bj * (Fraction(min(i, j)) - Fraction(i * j, n))
    return total


def v_vector(lab) -> tuple[int, ...]:
    """Partial-sum coordinates (length N) on which the Weyl group permutes.

    v_j = sum(lab[j-1:]) with v_N = 0; Dynkin labels are the successive
    differences, and adding a constant to all coordinates is immaterial.
    """
    out = [0] * (len(lab) + 1)
    acc = 0
    for j in range(len(lab) - 1, -1, -1):
        acc += lab[j]
        out[j] = acc
    return tuple(out)


def labels_from_v(v) -> tuple[int, ...]:
    return tuple(v[i] - v[i + 1] for i in range(len(v) - 1))


def shifted_v(lab) -> tuple[int, ...]:
    """v-coordinates of lab + rho: strictly decreasing, last entry 0."""
    return v_vector(tuple(x + 1 for x in lab))


def root_coordinates(entries, n: int) -> tuple[Fraction, ...]:
    """Coefficients of a weight-lattice vector on the simple roots."""
    gram = gram_matrix(n)
    return tuple(
        sum(gram[i][j] * entries[j] for j in range(n - 1)) for i in range(n - 1)
    )
