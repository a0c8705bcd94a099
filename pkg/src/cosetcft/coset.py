"""Diagonal coset of su(N) inside su(N)_m1 x su(N)_m2.

Sectors are triples of integrable weights (one per upstairs factor, one at
the combined level) passing the root-lattice selection rule; the cyclic
automorphism acts diagonally and non-trivially on every sector of a
well-behaved spec, and the sector ring lives on the orbits.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from .fusion import FusionRing, verlinde_tensor
from .modular import asymptotic_dimension, quantum_dimension, s_matrix
from .weights import (
    AlgebraSpec,
    Weight,
    color,
    conjugate_weight,
    integrable_weights,
    sigma_apply,
)


@dataclass(frozen=True)
class CosetSpec:
    """su(n) diagonally embedded at levels (m1, m2); downstairs level m1+m2.

    Never a conformal inclusion: the coset central charge is positive for
    every m1, m2 >= 1, so no member of this family degenerates.
    """

    n: int
    m1: int
    m2: int

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("n must be >= 2")
        if self.m1 < 1 or self.m2 < 1:
            raise ValueError("both levels must be >= 1")

    @property
    def diagonal_level(self) -> int:
        return self.m1 + self.m2

    def factor_specs(self) -> tuple[AlgebraSpec, AlgebraSpec, AlgebraSpec]:
        return (
            AlgebraSpec.su(self.n, self.m1),
            AlgebraSpec.su(self.n, self.m2),
            AlgebraSpec.su(self.n, self.diagonal_level),
        )

    def vacuum_sector(self) -> "CosetSector":
        s1, s2, sh = self.factor_specs()
        return CosetSector(s1.vacuum(), s2.vacuum(), sh.vacuum())


@dataclass(frozen=True)
class CosetSector:
    """Weight triple (numerator pair, denominator weight)."""

    num1: Weight
    num2: Weight
    den: Weight

    def sort_key(self):
        return (self.num1.labels, self.num2.labels, self.den.labels)

    def __str__(self):
        return f"({self.num1},{self.num2};{self.den})"


@dataclass(frozen=True)
class SectorOrbit:
    """Orbit of a sector under the diagonal cyclic action."""

    members: tuple[CosetSector, ...]

    @property
    def representative(self) -> CosetSector:
        return self.members[0]

    @property
    def size(self) -> int:
        return len(self.members)

    def stabilizer_order(self, n: int) -> int:
        return n // self.size

    def __str__(self):
        return f"[{self.representative}]"


class NotFaithful(ValueError):
    """The cyclic action has a fixed sector; the orbit ring is undefined."""

    def __init__(self, fixed_points):
        self.fixed_points = list(fixed_points)
        example = self.fixed_points[0][0] if self.fixed_points else None
        super().__init__(
            f"cyclic action on the sector set is not faithful; fixed sector {example}"
        )


def exp_set(spec: CosetSpec) -> list[CosetSector]:
    """All weight triples passing the selection rule, in label order.

    The rule is root-lattice membership of num1 + num2 - den, i.e. the
    congruence color(num1) + color(num2) = color(den) mod n.
    """
    s1, s2, sh = spec.factor_specs()
    out = []
    for w1, w2 in itertools.product(integrable_weights(s1), integrable_weights(s2)):
        c = (color(w1) + color(w2)) % spec.n
        for wh in integrable_weights(sh):
            if color(wh) == c:
                out.append(CosetSector(w1, w2, wh))
    out.sort(key=CosetSector.sort_key)
    return out


def sector_sigma(sector: CosetSector, power: int) -> CosetSector:
    """Diagonal cyclic action on a sector."""
    return CosetSector(
        sigma_apply(power, sector.num1),
        sigma_apply(power, sector.num2),
        sigma_apply(power, sector.den),
    )


def identification_orbits(
    spec: CosetSpec,
) -> tuple[list[SectorOrbit], bool, list[tuple[CosetSector, int]]]:
    """Partition the sector set into orbits of the diagonal cyclic action.

    Returns (orbits, faithful, fixed_points); fixed_points lists pairs
    (sector, power) with a nontrivial stabilizing power.  Orbits are keyed
    and sorted by their lexicographically smallest member.
    """
    sectors = exp_set(spec)
    sector_set = set(sectors)
    fixed = []
    seen = set()
    orbits = []
    for s in sectors:
        if s in seen:
            continue
        images = [sector_sigma(s, t) for t in range(spec.n)]
        if any(img not in sector_set for img in images):
            raise AssertionError("cyclic action left the sector set")
        members = sorted(set(images), key=CosetSector.sort_key)
        for m in members:
            for t in range(1, spec.n):
                if sector_sigma(m, t) == m:
                    fixed.append((m, t))
        orbits.append(SectorOrbit(tuple(members)))
        seen.update(members)
    orbits.sort(key=lambda o: o.representative.sort_key())
    # deduplicate fixed-point records
    fixed = sorted(set(fixed), key=lambda p: (p[0].sort_key(), p[1]))
    return orbits, not fixed, fixed


@dataclass
class CosetRing:
    """Sector ring over identification orbits with integer constants."""

    spec: CosetSpec
    basis: tuple[SectorOrbit, ...]
    table: dict[tuple[int, int], dict[int, int]]
    _index: dict[CosetSector, int] = field(init=False, repr=False)

    def __post_init__(self):
        self._index = {}
        for a, orb in enumerate(self.basis):
            for s in orb.members:
                self._index[s] = a

    def index_of_sector(self, s: CosetSector) -> int:
        try:
            return self._index[s]
        except KeyError:
            raise KeyError(f"sector {s} not in any basis orbit") from None

    def coeff(self, a: int, b: int, c: int) -> int:
        return self.table.get((a, b), {}).get(c, 0)

    def dense(self) -> np.ndarray:
        m = len(self.basis)
        t = np.zeros((m, m, m), dtype=np.int64)
        for (a, b), payload in self.table.items():
            for c, v in payload.items():
                t[a, b, c] = v
        return t

    def conjugate_permutation(self) -> list[int]:
        out = []
        for orb in self.basis:
            r = orb.representative
            conj = CosetSector(
                conjugate_weight(r.num1),
                conjugate_weight(r.num2),
                conjugate_weight(r.den),
            )
            out.append(self.index_of_sector(conj))
        return out


def factor_rings(spec: CosetSpec) -> tuple[FusionRing, FusionRing, FusionRing]:
    s1, s2, sh = spec.factor_specs()
    return (
        verlinde_tensor(s_matrix(s1)),
        verlinde_tensor(s_matrix(s2)),
        verlinde_tensor(s_matrix(sh)),
    )


def coset_ring(spec: CosetSpec) -> CosetRing:
    """Orbit ring with constants summed over the cyclic group:
    C_[A][B]^[C] = sum_t N[i,j -> sigma^t(k)] * N[alpha,beta -> sigma^t(delta)].

    Refuses with NotFaithful when any sector has a nontrivial stabilizer.
    """
    orbits, faithful, fixed = identification_orbits(spec)
    if not faithful:
        raise NotFaithful(fixed)
    r1, r2, rh = factor_rings(spec)
    perms = [
        (r1.sigma_permutation(t), r2.sigma_permutation(t), rh.sigma_permutation(t))
        for t in range(spec.n)
    ]
    table: dict[tuple[int, int], dict[int, int]] = {}
    reps = [
        (
            r1.index(o.representative.num1),
            r2.index(o.representative.num2),
            rh.index(o.representative.den),
        )
        for o in orbits
    ]
    for a, (i1, i2, al) in enumerate(reps):
        for b, (j1, j2, be) in enumerate(reps):
            pay1 = r1.table.get((i1, j1), {})
            pay2 = r2.table.get((i2, j2), {})
            payh = rh.table.get((al, be), {})
            row: dict[int, int] = {}
            for c, (k1, k2, de) in enumerate(reps):
                total = 0
                for p1, p2, ph in perms:
                    total += (
                        pay1.get(p1[k1], 0) * pay2.get(p2[k2], 0) * payh.get(ph[de], 0)
                    )
                if total:
                    row[c] = total
            if row:
                table[(a, b)] = row
    return CosetRing(spec, tuple(orbits), table)


def coset_statistical_dimension(spec: CosetSpec, s: CosetSector) -> float:
    """Product of the three constituent quantum dimensions."""
    _require_in_exp(spec, s)
    s1, s2, sh = spec.factor_specs()
    return (
        quantum_dimension(s_matrix(s1), s.num1)
        * quantum_dimension(s_matrix(s2), s.num2)
        * quantum_dimension(s_matrix(sh), s.den)
    )


def kw_identity_check(spec: CosetSpec, s: CosetSector) -> float:
    """Residual of the dimension identity b(sector)/b(vacuum) = d_i * d_alpha,
    with b evaluated through the closed form n * a(num1) a(num2) a(den)."""
    _require_in_exp(spec, s)
    s1, s2, sh = spec.factor_specs()
    m1, m2, mh = s_matrix(s1), s_matrix(s2), s_matrix(sh)
    b = spec.n * (
        asymptotic_dimension(m1, s.num1)
        * asymptotic_dimension(m2, s.num2)
        * asymptotic_dimension(mh, s.den)
    )
    b0 = spec.n * (
        asymptotic_dimension(m1, s1.vacuum())
        * asymptotic_dimension(m2, s2.vacuum())
        * asymptotic_dimension(mh, sh.vacuum())
    )
    d_i = quantum_dimension(m1, s.num1) * quantum_dimension(m2, s.num2)
    d_alpha = quantum_dimension(mh, s.den)
    return abs(b / b0 - d_i * d_alpha)


def class_dimension_sums(spec: CosetSpec) -> dict[int, float]:
    """sum of d_alpha^2 over downstairs weights, per congruence color class."""
    sh = AlgebraSpec.su(spec.n, spec.diagonal_level)
    mh = s_matrix(sh)
    sums: dict[int, float] = {c: 0.0 for c in range(spec.n)}
    for w in integrable_weights(sh):
        sums[color(w)] += quantum_dimension(mh, w) ** 2
    return sums


def dgh(spec: CosetSpec) -> float:
    """Square root of the vacuum-class dimension sum: the statistical
    dimension of the coset inclusion."""
    return math.sqrt(class_dimension_sums(spec)[0])


def formula_31_residual(spec: CosetSpec) -> float:
    """Worst residual of d_i * dgh^2 = sum_alpha d_(i,alpha) d_alpha over all
    upstairs sector pairs i."""
    s1, s2, sh = spec.factor_specs()
    m1, m2, mh = s_matrix(s1), s_matrix(s2), s_matrix(sh)
    d2 = dgh(spec) ** 2
    worst = 0.0
    for w1 in integrable_weights(s1):
        for w2 in integrable_weights(s2):
            d_i = quantum_dimension(m1, w1) * quantum_dimension(m2, w2)
            c = (color(w1) + color(w2)) % spec.n
            total = 0.0
            for wh in integrable_weights(sh):
                if color(wh) == c:
                    d_alpha = quantum_dimension(mh, wh)
                    total += (d_i * d_alpha) * d_alpha
            worst = max(worst, abs(d_i * d2 - total))
    return worst


def vacuum_orbit_membership(spec: CosetSpec, s: CosetSector) -> bool:
    """True iff the sector is a cyclic image of the vacuum triple."""
    vac = spec.vacuum_sector()
    return any(sector_sigma(vac, t) == s for t in range(spec.n))


def _require_in_exp(spec: CosetSpec, s: CosetSector) -> None:
    if (color(s.num1) + color(s.num2) - color(s.den)) % spec.n != 0:
        raise ValueError(f"sector {s} fails the selection rule")
