"""Equivariant Euler classes and per-fixed-point localization terms.

A monomial t1^p t2^q e_1^c1 .. e_r^cr has equivariant weight

    p*eps1 + q*eps2 + c1*a_1 + ... + cr*a_r

and the Euler class of a character is the product of the weights of its
monomials.  The matter bundle contributes, for each mass m_f, the product
of (weight + m_f - (eps1 + eps2)/2) over the tautological fiber: the half
shift is the double-cover identification sqrt(t1*t2), injected here as a
rational coefficient so characters themselves keep integral exponents.

A localization term is matter Euler class divided by tangent Euler class.
A symbolically zero weight can only come from a transcription bug (every
fixed point is isolated at generic parameters), so it is a hard error.
"""

from __future__ import annotations

from fractions import Fraction

from .characters import (
    Character,
    Monomial,
    char_items,
    char_lk,
    char_merge,
    char_tangent_p2,
    char_tangent_x0,
    char_tangent_x1,
    char_times,
    char_v_p2,
    char_v_x0,
    char_v_x1,
    monomial,
)
from .diagrams import FixedPointX0, FixedPointX1, FrameData
from .exact import (
    EPS1,
    EPS2,
    FactoredTerm,
    LinearForm,
    factored_term,
    linear_form,
    term_mul,
    term_pow,
    var_a,
    var_m,
)


class VanishingWeight(ArithmeticError):
    """A monomial with symbolically zero weight entered an Euler class."""


def weight_form(mono: Monomial) -> LinearForm:
    """Equivariant weight of a monomial as a linear form."""
    coeffs = {
        EPS1: Fraction(mono.t1x2, 2),
        EPS2: Fraction(mono.t2x2, 2),
    }
    for alpha, exp in mono.e:
        coeffs[var_a(alpha)] = Fraction(exp)
    return linear_form(coeffs)


def mass_shifted_weight(mono: Monomial, f: int) -> LinearForm:
    """Weight of a matter monomial: weight + m_f - (eps1 + eps2)/2."""
    shift = linear_form({var_m(f): 1, EPS1: Fraction(-1, 2), EPS2: Fraction(-1, 2)})
    return weight_form(mono) + shift


def euler_class(ch: Character) -> FactoredTerm:
    """Product of the weights of a character; empty character gives 1."""
    factors = []
    for mono, mult in char_items(ch):
        form = weight_form(mono)
        if form.is_zero():
            raise VanishingWeight(f"zero weight for monomial {mono}")
        factors.append((form, mult))
    return factored_term(1, factors)


def matter_euler(ch_v0: Character, r: int) -> FactoredTerm:
    """Euler class of the matter bundle: for each of the 2r masses, the
    product of mass-shifted weights over the tautological fiber.  Every
    factor carries m_f with coefficient 1, so none can vanish."""
    factors = []
    for f in range(1, 2 * r + 1):
        for mono, mult in char_items(ch_v0):
            factors.append((mass_shifted_weight(mono, f), mult))
    return factored_term(1, factors)


def term_p2(r: int, diagrams) -> FactoredTerm:
    """Localization term of one diagram tuple on the plane."""
    num = matter_euler(char_v_p2(r, diagrams), r)
    den = euler_class(char_tangent_p2(r, diagrams))
    return term_mul(num, term_pow(den, -1))


def term_x0(frame: FrameData, fp: FixedPointX0) -> FactoredTerm:
    """Localization term of one orbifold fixed point."""
    num = matter_euler(char_v_x0(frame, fp, 0), frame.r)
    den = euler_class(char_tangent_x0(frame, fp))
    return term_mul(num, term_pow(den, -1))


def term_x1(frame: FrameData, fp: FixedPointX1) -> FactoredTerm:
    """Localization term of one resolved-surface fixed point."""
    num = matter_euler(char_v_x1(frame, fp, 0), frame.r)
    den = euler_class(char_tangent_x1(frame, fp))
    return term_mul(num, term_pow(den, -1))


def ell_factor(frame: FrameData, kvec) -> FactoredTerm:
    """Pure line-bundle contribution of a first-Chern vector: matter Euler
    class of the summed twist characters over the Euler class of the
    pairwise twist-difference characters."""
    num_ch = char_merge(
        *(
            char_times(char_lk(kvec[alpha - 1]), monomial(e={alpha: 1}))
            for alpha in range(1, frame.r + 1)
        )
    )
    den_parts = []
    for alpha in range(1, frame.r + 1):
        for beta in range(1, frame.r + 1):
            e = {beta: 1, alpha: -1} if alpha != beta else None
            den_parts.append(
                char_times(char_lk(kvec[beta - 1] - kvec[alpha - 1]), monomial(e=e))
            )
    num = matter_euler(num_ch, frame.r)
    den = euler_class(char_merge(*den_parts))
    return term_mul(num, term_pow(den, -1))
