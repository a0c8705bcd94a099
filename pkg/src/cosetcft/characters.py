"""Truncated graded characters of integrable su(N) modules, and the
branching-function machinery built on them.

Two independent engines compute weight multiplicities per grade:

* the production engine expands the alternating numerator sum over the
  extended Weyl group (finite group times lattice translations with grade
  shift at most the cutoff), divides the series in place by the positive
  grade factors of the denominator product, and resolves each grade slice
  into finite characters;
* a Freudenthal recursion on the extended algebra serves as the oracle.

Both produce exact integer multiplicities; the test suite requires them to
agree entry by entry.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .coset import CosetSpec, CosetSector
from .weights import (
    AlgebraSpec,
    Weight,
    conformal_weight,
    inner_product,
    integrable_weights,
    labels_from_v,
    root_coordinates,
    shifted_v,
    v_vector,
)

Labels = tuple[int, ...]
Poly = dict[Labels, int]


class InconclusiveCutoff(RuntimeError):
    """Branching vanished up to the cutoff; no energy can be reported."""


class NegativeResidual(ArithmeticError):
    """Peeling drove a multiplicity negative: the table is not a nonnegative
    combination of integrable characters (bug or wrong projection)."""


# --- small su(N) combinatorial helpers ------------------------------------

@lru_cache(maxsize=None)
def _perms_with_sign(n: int) -> tuple[tuple[tuple[int, ...], int], ...]:
    out = []
    for perm in itertools.permutations(range(n)):
        inversions = sum(
            1 for a in range(n) for b in range(a + 1, n) if perm[a] > perm[b]
        )
        out.append((perm, -1 if inversions % 2 else 1))
    return tuple(out)


@lru_cache(maxsize=None)
def _cartan_rows(n: int) -> tuple[Labels, ...]:
    rows = []
    for i in range(n - 1):
        row = [0] * (n - 1)
        row[i] = 2
        if i > 0:
            row[i - 1] = -1
        if i < n - 2:
            row[i + 1] = -1
        rows.append(tuple(row))
    return tuple(rows)


@lru_cache(maxsize=None)
def _all_roots(n: int) -> tuple[Labels, ...]:
    """Label vectors of every root of su(n), positive and negative."""
    roots = []
    for a in range(n):
        for b in range(n):
            if a == b:
                continue
            v = [0] * n
            v[a], v[b] = 1, -1
            roots.append(labels_from_v(tuple(v)))
    return tuple(roots)


@lru_cache(maxsize=None)
def _positive_roots(n: int) -> tuple[Labels, ...]:
    roots = []
    for a in range(n):
        for b in range(a + 1, n):
            v = [0] * n
            v[a], v[b] = 1, -1
            roots.append(labels_from_v(tuple(v)))
    return tuple(roots)


def _dominant_rep(labels: Labels) -> Labels:
    v = sorted(v_vector(labels), reverse=True)
    return labels_from_v(tuple(v))


def _norm2_shifted(labels: Labels, n: int) -> Fraction:
    shifted = tuple(x + 1 for x in labels)
    return inner_product(shifted, shifted, n)


def _add(a: Labels, b: Labels) -> Labels:
    return tuple(x + y for x, y in zip(a, b))


def _sub(a: Labels, b: Labels) -> Labels:
    return tuple(x - y for x, y in zip(a, b))


def _orbit(labels: Labels) -> set[Labels]:
    v = v_vector(labels)
    return {
        labels_from_v(tuple(v[p] for p in perm))
        for perm, _ in _perms_with_sign(len(v))
    }


# --- finite irreducible characters -----------------------------------------

@lru_cache(maxsize=None)
def finite_weight_multiplicities(n: int, lam: Labels) -> dict[Labels, int]:
    """Full weight system of the finite su(n) irrep with highest weight lam,
    by the Freudenthal recursion over dominant weights."""
    cartan = _cartan_rows(n)
    # dominant support: lam - sum(c_i alpha_i) with c in a box and labels >= 0
    cmax = root_coordinates(_add(lam, tuple(reversed(lam))), n)
    assert all(c.denominator == 1 for c in cmax)
    dominants = []
    for c in itertools.product(*(range(int(x) + 1) for x in cmax)):
        mu = lam
        for ci, row in zip(c, cartan):
            if ci:
                mu = tuple(m - ci * r for m, r in zip(mu, row))
        if all(x >= 0 for x in mu):
            diff = root_coordinates(_sub(lam, mu), n)
            if all(d.denominator == 1 and d >= 0 for d in diff):
                dominants.append(mu)
    dominants = sorted(set(dominants), key=lambda m: -_norm2_shifted(m, n))
    support = set(dominants)
    top_norm = _norm2_shifted(lam, n)
    mult: dict[Labels, int] = {}
    for mu in dominants:
        if mu == lam:
            mult[mu] = 1
            continue
        den = top_norm - _norm2_shifted(mu, n)
        num = Fraction(0)
        for alpha in _positive_roots(n):
            j = 1
            while True:
                x = _add(mu, tuple(j * a for a in alpha))
                dom = _dominant_rep(x)
                if dom not in support:
                    break
                m = mult.get(dom, 0)
                if m:
                    num += m * inner_product(x, alpha, n)
                j += 1
        value = 2 * num / den
        assert value.denominator == 1 and value >= 0
        mult[mu] = int(value)
    table: dict[Labels, int] = {}
    for mu, m in mult.items():
        if m:
            for w in _orbit(mu):
                table[w] = m
    return table


def weyl_dimension(n: int, lam: Labels) -> int:
    """Weyl dimension formula, exact."""
    rho = tuple(1 for _ in lam)
    dim = Fraction(1)
    for alpha in _positive_roots(n):
        dim *= inner_product(_add(lam, rho), alpha, n) / inner_product(
            rho, alpha, n
        )
    assert dim.denominator == 1
    return int(dim)


# --- graded characters ------------------------------------------------------

@dataclass(frozen=True)
class GradedCharacter:
    """Weight multiplicities of an integrable module, per grade up to cutoff."""

    spec: AlgebraSpec
    top: Weight
    cutoff: int
    slices: tuple[Poly, ...]

    @property
    def table(self) -> dict[tuple[Labels, int], int]:
        return {
            (w, g): m
            for g, sl in enumerate(self.slices)
            for w, m in sl.items()
        }

    def weight_mult(self, labels: Labels, grade: int) -> int:
        if grade > self.cutoff:
            raise ValueError(f"grade {grade} beyond cutoff {self.cutoff}")
        return self.slices[grade].get(tuple(labels), 0)

    def dimension_at(self, grade: int) -> int:
        return sum(self.slices[grade].values())

    def weight_table(self) -> "WeightTable":
        n, _ = self.spec.single()
        return WeightTable(n, self.cutoff, self.slices)


@dataclass(frozen=True)
class WeightTable:
    """A grade-by-grade weight-multiplicity table without module bookkeeping;
    keys live in the weight lattice of su(rank_param)."""

    rank_param: int
    cutoff: int
    slices: tuple[Poly, ...]

    def dimension_at(self, grade: int) -> int:
        return sum(self.slices[grade].values())


MAX_CUTOFF = 40


@lru_cache(maxsize=None)
def graded_character(spec: AlgebraSpec, w: Weight, cutoff: int) -> GradedCharacter:
    """Production engine: alternating sum over the extended Weyl group,
    divided by the grade-positive denominator factors, then resolved into
    finite characters grade by grade."""
    n, k = spec.single()
    if w.spec != spec:
        raise ValueError("weight bound to a different spec")
    if cutoff < 0:
        raise ValueError("cutoff must be >= 0")
    if cutoff > MAX_CUTOFF:
        raise ValueError(f"cutoff {cutoff} beyond configured bound {MAX_CUTOFF}")
    lam = w.labels[0]
    h = k + n
    t = shifted_v(lam)
    perms = _perms_with_sign(n)

    # alternating numerator, rho-shifted: terms at grade
    # (lam+rho, beta) + h*(beta,beta)/2 for beta in the root lattice
    series: list[Poly] = [dict() for _ in range(cutoff + 1)]
    top_norm = float(_norm2_shifted(lam, n))
    reach = (top_norm**0.5 + (top_norm + 2 * h * cutoff) ** 0.5) / h
    lam_min = 2 - 2 * math.cos(math.pi / n)  # smallest Cartan eigenvalue
    cbound = int(reach / lam_min**0.5) + 2
    for c in itertools.product(range(-cbound, cbound + 1), repeat=n - 1):
        vb = [0] * n
        prev = 0
        for i, ci in enumerate(c):
            vb[i] = ci - prev
            prev = ci
        vb[n - 1] = -prev
        grade = sum(ta * vba for ta, vba in zip(t, vb))
        grade += h * sum(x * x for x in vb) // 2
        if not 0 <= grade <= cutoff:
            continue
        u = tuple(ta + h * vba for ta, vba in zip(t, vb))
        for perm, sign in perms:
            mono = labels_from_v(tuple(u[p] for p in perm))
            sl = series[grade]
            sl[mono] = sl.get(mono, 0) + sign
            if sl[mono] == 0:
                del sl[mono]

    # divide in place by each factor (1 - q^j e^{-gamma}) with j >= 1:
    # gamma runs over all roots, and over 0 with multiplicity n-1
    gammas = list(_all_roots(n)) + [tuple([0] * (n - 1))] * (n - 1)
    for j in range(1, cutoff + 1):
        for gamma in gammas:
            for g in range(j, cutoff + 1):
                src = series[g - j]
                if not src:
                    continue
                dst = series[g]
                for mono, coeff in src.items():
                    key = _sub(mono, gamma)
                    dst[key] = dst.get(key, 0) + coeff
                    if dst[key] == 0:
                        del dst[key]

    # resolve each slice (still rho-shifted, equal to slice * finite Weyl
    # denominator) into finite characters by repeated top-term extraction
    slices: list[Poly] = []
    for g in range(cutoff + 1):
        remaining = dict(series[g])
        out: Poly = {}
        while remaining:
            best = max(remaining, key=lambda mono: v_vector(mono))
            coeff = remaining[best]
            vbest = v_vector(best)
            if any(vbest[a] <= vbest[a + 1] for a in range(n - 1)):
                raise ArithmeticError(
                    f"non-dominant leading term {best} in grade {g}"
                )
            if coeff < 0:
                raise ArithmeticError(
                    f"negative character multiplicity at grade {g}"
                )
            mu = tuple(x - 1 for x in best)
            for perm, sign in perms:
                mono = labels_from_v(tuple(vbest[p] for p in perm))
                remaining[mono] = remaining.get(mono, 0) - coeff * sign
                if remaining[mono] == 0:
                    del remaining[mono]
            for wlab, m in finite_weight_multiplicities(n, mu).items():
                out[wlab] = out.get(wlab, 0) + coeff * m
        slices.append(out)

    if slices[0] != finite_weight_multiplicities(n, lam):
        raise ArithmeticError("grade-0 slice disagrees with the finite irrep")
    return GradedCharacter(spec, w, cutoff, tuple(slices))


@lru_cache(maxsize=None)
def freudenthal_character(spec: AlgebraSpec, w: Weight, cutoff: int) -> GradedCharacter:
    """Oracle engine: Freudenthal recursion on the extended algebra."""
    n, k = spec.single()
    lam = w.labels[0]
    h = k + n
    top_norm = _norm2_shifted(lam, n)
    max_norm = top_norm + 2 * h * cutoff
    label_bound = int((4 * float(max_norm)) ** 0.5) + 2
    all_roots = _all_roots(n)
    pos_roots = _positive_roots(n)

    # dominant candidates with the right root-lattice congruence
    candidates = []
    for lab in itertools.product(range(label_bound + 1), repeat=n - 1):
        diff = root_coordinates(_sub(lam, lab), n)
        if any(d.denominator != 1 for d in diff):
            continue
        nrm = _norm2_shifted(lab, n)
        if nrm <= max_norm:
            candidates.append((lab, nrm))
    candidates.sort(key=lambda p: -p[1])

    dom_mult: dict[tuple[Labels, int], int] = {}

    def lookup(labels: Labels, grade: int) -> int:
        if grade < 0:
            return 0
        return dom_mult.get((_dominant_rep(labels), grade), 0)

    for g in range(cutoff + 1):
        bound = top_norm + 2 * h * g
        for mu, nrm in candidates:
            if nrm > bound:
                continue
            if g == 0 and mu == lam:
                dom_mult[(mu, 0)] = 1
                continue
            den = top_norm - nrm + 2 * h * g
            if den <= 0:
                continue
            num = Fraction(0)
            # real roots with grade part m >= 1 (all roots), m = 0 (positive)
            for alpha in pos_roots:
                j = 1
                while True:
                    x = _add(mu, tuple(j * a for a in alpha))
                    if _norm2_shifted(x, n) > bound:
                        break
                    m = lookup(x, g)
                    if m:
                        num += m * inner_product(x, alpha, n)
                    j += 1
            for mpart in range(1, g + 1):
                for alpha in all_roots:
                    for j in range(1, g // mpart + 1):
                        x = _add(mu, tuple(j * a for a in alpha))
                        m = lookup(x, g - j * mpart)
                        if m:
                            num += m * (inner_product(x, alpha, n) + k * mpart)
                # imaginary roots at grade mpart, multiplicity n - 1
                for j in range(1, g // mpart + 1):
                    m = lookup(mu, g - j * mpart)
                    if m:
                        num += m * k * mpart * (n - 1)
            value = 2 * num / den
            assert value.denominator == 1 and value >= 0
            if value:
                dom_mult[(mu, g)] = int(value)

    slices: list[Poly] = [dict() for _ in range(cutoff + 1)]
    for (mu, g), m in dom_mult.items():
        for lab in _orbit(mu):
            slices[g][lab] = m
    return GradedCharacter(spec, w, cutoff, tuple(slices))


# --- products, restriction, peeling ----------------------------------------

def tensor_characters(a, b) -> WeightTable:
    """Convolve two graded tables in weight and grade (same rank)."""
    ta = a.weight_table() if isinstance(a, GradedCharacter) else a
    tb = b.weight_table() if isinstance(b, GradedCharacter) else b
    if ta.rank_param != tb.rank_param:
        raise ValueError("rank mismatch in tensor product")
    cutoff = min(ta.cutoff, tb.cutoff)
    slices: list[Poly] = [dict() for _ in range(cutoff + 1)]
    for g1 in range(cutoff + 1):
        s1 = ta.slices[g1]
        if not s1:
            continue
        for g2 in range(cutoff + 1 - g1):
            s2 = tb.slices[g2]
            if not s2:
                continue
            dst = slices[g1 + g2]
            for w1, m1 in s1.items():
                for w2, m2 in s2.items():
                    key = _add(w1, w2)
                    dst[key] = dst.get(key, 0) + m1 * m2
    return WeightTable(ta.rank_param, cutoff, tuple(slices))


def restrict_character(table, projection) -> WeightTable:
    """Push a table forward along a linear weight map, grade by grade.

    ``projection`` is a matrix given as rows over source label coordinates;
    the number of rows fixes the target rank.
    """
    src = table.weight_table() if isinstance(table, GradedCharacter) else table
    rows = tuple(tuple(r) for r in projection)
    if any(len(r) != src.rank_param - 1 for r in rows):
        raise ValueError("projection row length must match source rank")
    slices: list[Poly] = []
    for sl in src.slices:
        out: Poly = {}
        for wlab, m in sl.items():
            key = tuple(sum(r[j] * wlab[j] for j in range(len(wlab))) for r in rows)
            out[key] = out.get(key, 0) + m
        slices.append(out)
    return WeightTable(len(rows) + 1, src.cutoff, tuple(slices))


def peel_branching(
    table: WeightTable, target: AlgebraSpec, cutoff: int | None = None
) -> dict[Weight, "BranchingFunction"]:
    """Decompose a restricted table into target graded characters.

    Grade by grade, every dominant weight with positive residual
    multiplicity starts that many copies of the target character at the
    current grade (highest-norm weights first); the subtraction must come
    out exactly nonnegative everywhere and exactly zero on each completed
    grade.  Returns one coefficient sequence per integrable target weight,
    including identically zero ones.
    """
    n, k = target.single()
    if table.rank_param != n:
        raise ValueError("table rank does not match target algebra")
    depth = table.cutoff if cutoff is None else min(cutoff, table.cutoff)
    residual = [dict(sl) for sl in table.slices[: depth + 1]]
    targets = integrable_weights(target)
    coeffs: dict[Weight, list[int]] = {t: [0] * (depth + 1) for t in targets}
    for g in range(depth + 1):
        while True:
            positives = [
                (lab, m)
                for lab, m in residual[g].items()
                if m > 0 and all(x >= 0 for x in lab)
            ]
            if not positives:
                break
            positives.sort(key=lambda p: -_norm2_shifted(p[0], n))
            lab, m = positives[0]
            if sum(lab) > k:
                raise NegativeResidual(
                    f"dominant residual {lab} at grade {g} exceeds level {k}"
                )
            wt = Weight(target, (lab,))
            coeffs[wt][g] += m
            char = graded_character(target, wt, depth)
            for dg, sl in enumerate(char.slices[: depth - g + 1]):
                dst = residual[g + dg]
                for wlab, mm in sl.items():
                    dst[wlab] = dst.get(wlab, 0) - m * mm
                    if dst[wlab] == 0:
                        del dst[wlab]
        if residual[g]:
            raise NegativeResidual(
                f"nonzero residual left at grade {g}: {sorted(residual[g].items())[:4]}"
            )
    return {
        t: BranchingFunction(str(t), Fraction(0), tuple(cs))
        for t, cs in coeffs.items()
    }


@dataclass(frozen=True)
class BranchingFunction:
    """Coefficient sequence of a coset multiplicity space, with the exact
    rational energy offset of its grade-0 line."""

    sector: str
    offset: Fraction
    coeffs: tuple[int, ...]

    @property
    def cutoff(self) -> int:
        return len(self.coeffs) - 1

    @property
    def n_min(self) -> int | None:
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        return None

    @property
    def is_zero(self) -> bool:
        return self.n_min is None

    def energy(self) -> Fraction:
        """Lowest coset energy: offset plus the first nonzero grade."""
        if self.is_zero:
            raise InconclusiveCutoff(
                f"branching for {self.sector} vanishes up to grade {self.cutoff}"
            )
        return self.offset + self.n_min

    def multiplicity_at_min(self) -> int:
        if self.is_zero:
            raise InconclusiveCutoff(
                f"branching for {self.sector} vanishes up to grade {self.cutoff}"
            )
        return self.coeffs[self.n_min]

    def with_offset(self, offset: Fraction) -> "BranchingFunction":
        return BranchingFunction(self.sector, offset, self.coeffs)


def reconstitute(
    branchings: dict[Weight, BranchingFunction], target: AlgebraSpec, cutoff: int
) -> WeightTable:
    """Sum of branching coefficients times target characters; inverse of
    peel_branching up to the cutoff."""
    n, _ = target.single()
    slices: list[Poly] = [dict() for _ in range(cutoff + 1)]
    for wt, bf in branchings.items():
        char = None
        for g, c in enumerate(bf.coeffs[: cutoff + 1]):
            if not c:
                continue
            if char is None:
                char = graded_character(target, wt, cutoff)
            for dg in range(cutoff + 1 - g):
                for wlab, m in char.slices[dg].items():
                    dst = slices[g + dg]
                    dst[wlab] = dst.get(wlab, 0) + c * m
                    if dst[wlab] == 0:
                        del dst[wlab]
    return WeightTable(n, cutoff, tuple(slices))


# --- diagonal-coset branching ----------------------------------------------

def diagonal_branching(
    spec: CosetSpec, num1: Weight, num2: Weight, cutoff: int
) -> dict[Weight, BranchingFunction]:
    """Branching functions of the pair (num1, num2) over every downstairs
    weight, with offsets h(num1) + h(num2) - h(den)."""
    c1 = graded_character(num1.spec, num1, cutoff)
    c2 = graded_character(num2.spec, num2, cutoff)
    product = tensor_characters(c1, c2)
    down = AlgebraSpec.su(spec.n, spec.diagonal_level)
    peeled = peel_branching(product, down, cutoff)
    h12 = conformal_weight(num1) + conformal_weight(num2)
    out = {}
    for wt, bf in peeled.items():
        out[wt] = BranchingFunction(
            f"({num1},{num2};{wt})", h12 - conformal_weight(wt), bf.coeffs
        )
    return out


def sector_branching(spec: CosetSpec, sector: CosetSector, cutoff: int) -> BranchingFunction:
    return diagonal_branching(spec, sector.num1, sector.num2, cutoff)[sector.den]


def coset_energy_offset(bf: BranchingFunction) -> Fraction:
    """Lowest eigenvalue of the coset energy operator for the sector."""
    return bf.energy()


def vacuum_membership(spec: CosetSpec, sector: CosetSector, cutoff: int) -> bool:
    """True iff the sector's branching attains energy 0 with multiplicity 1."""
    bf = sector_branching(spec, sector, cutoff)
    if bf.is_zero:
        raise InconclusiveCutoff(
            f"sector {sector} has zero branching up to grade {cutoff}"
        )
    return bf.energy() == 0 and bf.multiplicity_at_min() == 1


# --- truncated trace ratio ---------------------------------------------------

DEFAULT_BETA_FLOOR = 0.3


def kw_numeric_ratio(
    b_num: BranchingFunction,
    b_den: BranchingFunction,
    beta: float,
    beta_floor: float = DEFAULT_BETA_FLOOR,
) -> float:
    """Ratio of truncated traces sum(c_n e^{-beta (offset+n)}).

    A truncation estimate only: it approaches the sector dimension from
    below as beta shrinks, and is meaningless below the trust floor.
    """
    if beta < beta_floor:
        raise ValueError(f"beta {beta} below trust floor {beta_floor}")
    if b_num.cutoff != b_den.cutoff:
        raise ValueError("numerator and denominator cutoffs differ")
    num = sum(
        c * math.exp(-beta * (float(b_num.offset) + g))
        for g, c in enumerate(b_num.coeffs)
    )
    den = sum(
        c * math.exp(-beta * (float(b_den.offset) + g))
        for g, c in enumerate(b_den.coeffs)
    )
    return num / den
