"""q-graded partition-function series and variable substitutions.

All series live on the integer grading g = 4n, where n is the instanton
number; a surface with w1 odd framing slots contributes a universal
quarter offset, carried implicitly by the residue g mod 4 (reported once
per series as its offset), so grade keys stay integers.  A missing grade
at or below the truncation means the coefficient is zero.

Substitutions (sign flips, the two blow-up chart maps) are applied to the
linear forms when terms are constructed, never at evaluation time, so one
evaluation point serves both sides of any identity being checked.

Implemented series:

  * series_zx0      -- orbifold side, summed over colored diagram tuples,
  * series_zx1      -- resolved side, summed over (kvec, Y1, Y2) data,
  * series_zp2      -- plane series, summed over diagram tuples,
  * series_prefactor-- (1 - (-1)^r q)^(+-u) as binomials in the exponent
                       ratio u = (eps1+eps2)(2*sum a + sum m)/(2 eps1 eps2),
  * series_zx1_factorized -- the blow-up factorization: a sum over
    first-Chern vectors of q^(sum k^2) * ell(kvec) times two plane series
    taken at the chart substitutions.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Mapping

from .diagrams import (
    FrameData,
    HalfInt,
    diagram_tuples,
    enum_fixed_points_x0,
    enum_fixed_points_x1,
    enum_kvectors,
)
from .exact import (
    EPS1,
    EPS2,
    Coefficient,
    EvalPoint,
    FactoredTerm,
    Var,
    factored_term,
    linear_form,
    term_mul,
    term_pow,
    term_scale,
    term_substitute,
    var_a,
    var_m,
)
from .localization import ell_factor, term_p2, term_x0, term_x1

SubstitutionRule = Mapping


@dataclass(frozen=True)
class QSeries:
    """Truncated series: grade -> coefficient, all grades = offset mod 4."""

    coeffs: dict
    max_grade: int
    offset: int

    def grades(self) -> range:
        return range(self.offset, self.max_grade + 1, 4)

    def coefficient(self, grade: int) -> Coefficient:
        return self.coeffs.get(grade, ())


def rule_negate_eps() -> dict:
    return {
        EPS1: linear_form({EPS1: -1}),
        EPS2: linear_form({EPS2: -1}),
    }


def rule_negate_all(r: int) -> dict:
    rule = rule_negate_eps()
    for alpha in range(1, r + 1):
        rule[var_a(alpha)] = linear_form({var_a(alpha): -1})
    for f in range(1, 2 * r + 1):
        rule[var_m(f)] = linear_form({var_m(f): -1})
    return rule


def rule_negate_am(r: int) -> dict:
    rule: dict = {}
    for alpha in range(1, r + 1):
        rule[var_a(alpha)] = linear_form({var_a(alpha): -1})
    for f in range(1, 2 * r + 1):
        rule[var_m(f)] = linear_form({var_m(f): -1})
    return rule


def rule_chart(side: int, kvec) -> dict:
    """Blow-up chart substitution for a first-Chern vector.

    Chart 1: (eps1, eps2) -> (2 eps1, eps2 - eps1), a -> a + 2 k eps1.
    Chart 2: (eps1, eps2) -> (eps1 - eps2, 2 eps2), a -> a + 2 k eps2.
    Masses are unchanged.
    """
    if side == 1:
        rule = {
            EPS1: linear_form({EPS1: 2}),
            EPS2: linear_form({EPS1: -1, EPS2: 1}),
        }
        carrier = EPS1
    elif side == 2:
        rule = {
            EPS1: linear_form({EPS1: 1, EPS2: -1}),
            EPS2: linear_form({EPS2: 2}),
        }
        carrier = EPS2
    else:
        raise ValueError("side must be 1 or 2")
    for alpha, k in enumerate(kvec, start=1):
        rule[var_a(alpha)] = linear_form({var_a(alpha): 1, carrier: k.doubled})
    return rule


def compose_rules(first: SubstitutionRule | None, then: SubstitutionRule | None):
    """Rule equivalent to substituting `first`, then `then`."""
    if first is None:
        return then
    if then is None:
        return first
    composed = {v: form.substitute(then) for v, form in first.items()}
    for v, form in then.items():
        composed.setdefault(v, form)
    return composed


def prefactor_exponent(r: int) -> FactoredTerm:
    """The exponent ratio u = (eps1+eps2)(2 sum a + sum m)/(2 eps1 eps2)."""
    eps_sum = linear_form({EPS1: 1, EPS2: 1})
    charge: dict[Var, int] = {var_a(alpha): 2 for alpha in range(1, r + 1)}
    for f in range(1, 2 * r + 1):
        charge[var_m(f)] = 1
    return factored_term(
        Fraction(1, 2),
        [
            (eps_sum, 1),
            (linear_form(charge), 1),
            (linear_form({EPS1: 1}), -1),
            (linear_form({EPS2: 1}), -1),
        ],
    )


def _binomial_poly(j: int) -> list[Fraction]:
    """Coefficients (in x^d) of binom(x, j) = x(x-1)...(x-j+1)/j!."""
    poly = [Fraction(1)]
    for i in range(j):
        shifted = [Fraction(0)] + poly
        poly = [shifted[d] - i * (poly[d] if d < len(poly) else 0) for d in range(len(shifted))]
    inv = Fraction(1, factorial(j))
    return [c * inv for c in poly]


def series_prefactor(r: int, sign: int, max_n: int) -> QSeries:
    """(1 - (-1)^r q)^(sign * u) as a q-series; grade 4j holds the degree-j
    binomial, stored as a polynomial in the single exponent-ratio term."""
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    u = prefactor_exponent(r)
    sigma = 1 if r % 2 == 1 else -1  # -(-1)^r
    coeffs = {}
    for j in range(max_n + 1):
        terms = []
        for d, c in enumerate(_binomial_poly(j)):
            scalar = c * sign ** d * sigma ** j
            if scalar == 0:
                continue
            terms.append(term_scale(term_pow(u, d), scalar))
        coeffs[4 * j] = tuple(terms)
    return QSeries(coeffs, 4 * max_n, 0)


def series_zp2(r: int, max_n: int, rule: SubstitutionRule | None = None) -> QSeries:
    """Plane partition-function series up to q^max_n."""
    coeffs = {}
    for n in range(max_n + 1):
        terms = tuple(
            term_substitute(term_p2(r, tup), rule)
            for tup in diagram_tuples(r, n)
        )
        coeffs[4 * n] = terms
    return QSeries(coeffs, 4 * max_n, 0)


def series_zx0(
    frame: FrameData, k: HalfInt, max4n: int, rule: SubstitutionRule | None = None
) -> QSeries:
    """Orbifold-side series: grade 4*v0 + w1 sums the colored diagram
    tuples with counts (v0, v1), v1 = v0 + w1/2 + k.  Grades where v1 is
    negative or non-integral (parity-infeasible k) hold zero."""
    offset = frame.w1 % 4
    coeffs = {}
    for g in range(offset, max4n + 1, 4):
        if g < frame.w1:
            coeffs[g] = ()
            continue
        v0 = (g - frame.w1) // 4
        v1_doubled = 2 * v0 + frame.w1 + k.doubled
        if v1_doubled < 0 or v1_doubled % 2 != 0:
            coeffs[g] = ()
            continue
        fps = enum_fixed_points_x0(frame, v0, v1_doubled // 2)
        coeffs[g] = tuple(term_substitute(term_x0(frame, fp), rule) for fp in fps)
    return QSeries(coeffs, max4n, offset)


def series_zx1(
    frame: FrameData, k: HalfInt, max4n: int, rule: SubstitutionRule | None = None
) -> QSeries:
    """Resolved-side series: grade 4n sums all (kvec, Y1, Y2) fixed points
    with sum(kvec) = k at that grade.  Parity-infeasible k gives the zero
    series (no admissible first-Chern vectors exist)."""
    offset = frame.w1 % 4
    feasible = (k.doubled + frame.w1) % 2 == 0
    coeffs = {}
    for g in range(offset, max4n + 1, 4):
        if not feasible:
            coeffs[g] = ()
            continue
        fps = enum_fixed_points_x1(frame, k, g)
        coeffs[g] = tuple(term_substitute(term_x1(frame, fp), rule) for fp in fps)
    return QSeries(coeffs, max4n, offset)


def series_mul(a: QSeries, b: QSeries) -> QSeries:
    """Cauchy product.  The product is complete up to the largest grade at
    which both factors still supply every needed coefficient, namely
    min(a.max_grade + b.offset, b.max_grade + a.offset)."""
    offset = (a.offset + b.offset) % 4
    max_grade = min(a.max_grade + b.offset, b.max_grade + a.offset)
    acc: dict[int, list] = {g: [] for g in range(offset, max_grade + 1, 4)}
    for g1 in a.grades():
        c1 = a.coefficient(g1)
        if not c1:
            continue
        for g2 in b.grades():
            g = g1 + g2
            if g > max_grade:
                break
            c2 = b.coefficient(g2)
            if not c2:
                continue
            acc[g].extend(term_mul(t1, t2) for t1 in c1 for t2 in c2)
    return QSeries({g: tuple(ts) for g, ts in acc.items()}, max_grade, offset)


def series_scale(a: QSeries, t: FactoredTerm) -> QSeries:
    coeffs = {g: tuple(term_mul(t, u) for u in c) for g, c in a.coeffs.items()}
    return QSeries(coeffs, a.max_grade, a.offset)


def series_shift(a: QSeries, delta: int) -> QSeries:
    coeffs = {g + delta: c for g, c in a.coeffs.items()}
    return QSeries(coeffs, a.max_grade + delta, (a.offset + delta) % 4)


def series_zx1_factorized(frame: FrameData, k: HalfInt, max4n: int) -> QSeries:
    """Resolved-side series assembled from the blow-up factorization:
    sum over first-Chern vectors of the shift q^(sum k^2) applied to
    ell(kvec) * Zp2(chart 1) * Zp2(chart 2)."""
    offset = frame.w1 % 4
    acc: dict[int, list] = {g: [] for g in range(offset, max4n + 1, 4)}
    feasible = (k.doubled + frame.w1) % 2 == 0
    if feasible:
        for kvec in enum_kvectors(frame, k, max4n):
            base = sum(h.doubled ** 2 for h in kvec)
            max_n = (max4n - base) // 4
            ell = ell_factor(frame, kvec)
            z1 = series_zp2(frame.r, max_n, rule_chart(1, kvec))
            z2 = series_zp2(frame.r, max_n, rule_chart(2, kvec))
            prod = series_mul(z1, z2)
            for g in prod.grades():
                acc[g + base].extend(term_mul(ell, t) for t in prod.coefficient(g))
    return QSeries({g: tuple(ts) for g, ts in acc.items()}, max4n, offset)


def map_to_imo(point: EvalPoint, frame: FrameData) -> dict:
    """Express an evaluation point in the alternate variable convention:
    eps -> -eps, mu_i = m_i - (eps1+eps2)/2 for the first r masses and
    mu_(r+i) = -m_(r+i) + (eps1+eps2)/2 for the rest; a is unchanged."""
    r = frame.r
    half = (point[EPS1] + point[EPS2]) / 2
    out = {"eps1": -point[EPS1], "eps2": -point[EPS2]}
    for alpha in range(1, r + 1):
        out[f"a{alpha}"] = point[var_a(alpha)]
    for i in range(1, r + 1):
        out[f"mu{i}"] = point[var_m(i)] - half
    for i in range(1, r + 1):
        out[f"mu{r + i}"] = -point[var_m(r + i)] + half
    return out
