"""Discrete-series classification data for equal-rank pairs.

A K-type with highest weight mu induces the shifted parameter
lambda = mu + rho_K. The pair admits no parameters at all when the
ranks differ or dim(g/k) is odd; otherwise lambda either lands on a
wall of g (singular, excluded) or is a genuine parameter whose formal
degree is the absolute value of the product of (lambda, a)/(rho, a).

The product runs over all positive roots of g by default, which makes
the fully compact case reduce exactly to the Weyl dimension formula;
a switch restores the product over simple roots only (see README for
the discrepancy the switch preserves).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional

import numpy as np

from ._linalg import mat_inv, solve_left
from .errors import ValidationError
from .jsonutil import fr_str, vec_str
from .repring import (
    IrrLabel,
    dual,
    invariant_multiplicity,
    irr_character,
    product,
)
from .rootsys import (
    RootSystem,
    Weight,
    apply_matrix,
    grlex_key,
    inner,
    is_regular,
    make_dominant,
    wadd,
    weyl_elements,
)
from .spinmod import RealPair, spin_characters

DEGREE_ROOT_CHOICES = ("positive", "simple")

EXCLUSION_SINGULAR = "singular"
EXCLUSION_UNEQUAL_RANK = "unequal_rank"
EXCLUSION_ODD_PARITY = "odd_parity"


@dataclass(frozen=True)
class DiscreteSeriesParameter:
    lam: Weight
    min_k_type: IrrLabel
    formal_degree: Fraction
    signed_trace: Fraction
    pair: RealPair
    chamber_id: int

    def __post_init__(self):
        if self.formal_degree <= 0:
            raise AssertionError("formal degree must be positive")
        if wadd(self.min_k_type.highest_weight, self.pair.k.rho) != self.lam:
            raise AssertionError("parameter does not match its minimal K-type")


@dataclass(frozen=True)
class InductionResult:
    """Either a parameter or one exclusion reason, never both."""

    parameter: Optional[DiscreteSeriesParameter] = None
    exclusion: Optional[str] = None

    def __post_init__(self):
        if (self.parameter is None) == (self.exclusion is None):
            raise AssertionError("exactly one of parameter/exclusion must be set")

    @property
    def ok(self) -> bool:
        return self.parameter is not None


def _degree_root_set(pair: RealPair, degree_roots: str) -> tuple[Weight, ...]:
    if degree_roots not in DEGREE_ROOT_CHOICES:
        raise ValidationError(f"degree_roots must be one of {DEGREE_ROOT_CHOICES}")
    return pair.g.positive_roots if degree_roots == "positive" else pair.g.simple_roots


def trace_product(lam: Weight, pair: RealPair, degree_roots: str = "positive") -> Fraction:
    """Signed product of (lambda, a)/(rho, a) over the configured roots.

    Requires lambda regular for g; the absolute value is the formal
    degree. Exact rational, invariant under rescaling the form.
    """
    g = pair.g
    lam = tuple(Fraction(c) for c in lam)
    if not is_regular(lam, g):
        raise ValidationError("parameter is singular for g")
    out = Fraction(1)
    for a in _degree_root_set(pair, degree_roots):
        out *= inner(lam, a, g) / inner(g.rho, a, g)
    return out


def formal_degree(lam: Weight, pair: RealPair, degree_roots: str = "positive") -> Fraction:
    return abs(trace_product(lam, pair, degree_roots))


def chamber_of(lam: Weight, rs: RootSystem) -> int:
    """Index of the Weyl chamber containing the regular weight lam.

    Chambers are numbered by the breadth-first enumeration of the Weyl
    group: 0 is the dominant chamber, the last index is the chamber of
    the longest element.
    """
    lam = tuple(Fraction(c) for c in lam)
    if not is_regular(lam, rs):
        raise ValidationError("singular weight lies on a chamber wall")
    dom = make_dominant(lam, rs)
    for idx, m in enumerate(weyl_elements(rs)):
        if apply_matrix(m, dom) == lam:
            return idx
    raise AssertionError("regular weight not reached from its dominant representative")


def _label_weight(v) -> Weight:
    hw = v.highest_weight if isinstance(v, IrrLabel) else v
    return tuple(Fraction(c) for c in hw)


def _check_k_dominant(hw: Weight, pair: RealPair) -> None:
    k = pair.k
    for i in range(len(k.simple_roots)):
        c = k.coroot_pairing(hw, i)
        if c < 0:
            raise ValidationError(f"K-type {vec_str(hw)} is not dominant for K")
        if c.denominator != 1:
            raise ValidationError(f"K-type {vec_str(hw)} is not integral for K")


def dirac_induct(v, pair: RealPair, degree_roots: str = "positive") -> InductionResult:
    """Map a K-type to its discrete-series parameter or an exclusion.

    Exclusions, in order: unequal rank, odd parity, singular shifted
    parameter. Successful results carry the exact formal degree and
    the chamber id of lambda.
    """
    hw = _label_weight(v)
    if len(hw) != pair.g.rank:
        raise ValidationError("K-type dimension does not match the pair")
    _check_k_dominant(hw, pair)
    if not pair.equal_rank:
        return InductionResult(exclusion=EXCLUSION_UNEQUAL_RANK)
    if pair.parity == 1:
        return InductionResult(exclusion=EXCLUSION_ODD_PARITY)
    lam = wadd(hw, pair.k.rho)
    if not is_regular(lam, pair.g):
        return InductionResult(exclusion=EXCLUSION_SINGULAR)
    signed = trace_product(lam, pair, degree_roots)
    return InductionResult(
        parameter=DiscreteSeriesParameter(
            lam=lam,
            min_k_type=IrrLabel(hw),
            formal_degree=abs(signed),
            signed_trace=signed,
            pair=pair,
            chamber_id=chamber_of(lam, pair.g),
        )
    )


def _lattice_box(
    pair: RealPair, bound: Fraction, basis: tuple[Weight, ...]
) -> Iterable[Weight]:
    """Integer lattice points mu with (mu + rho_K) inside the bound ball.

    A float bounding box plus a vectorized float norm prefilter prune
    the candidates; only near-boundary survivors reach the exact
    quadratic form, which alone decides membership.
    """
    g = pair.g
    n = g.rank
    rho_k = pair.k.rho
    gram = tuple(
        tuple(inner(bi, bj, g) for bj in basis) for bi in basis
    )
    gram_inv = mat_inv(gram)
    # Center of the ellipsoid in coefficient space: mu = -rho_K.
    center = solve_left(basis, tuple(-c for c in rho_k))
    if center is None:
        raise ValidationError("rho_K is outside the rational span of the lattice basis")
    ranges = []
    for i in range(n):
        half = bound * gram_inv[i][i]
        s = math.sqrt(float(half)) if half > 0 else 0.0
        lo = math.floor(float(center[i]) - s) - 1
        hi = math.ceil(float(center[i]) + s) + 1
        ranges.append(range(lo, hi + 1))
    coeff_grid = np.array(list(itertools.product(*ranges)), dtype=float)
    if coeff_grid.size == 0:
        return
    basis_f = np.array([[float(c) for c in b] for b in basis])
    form_f = np.array([[float(c) for c in row] for row in g.form])
    lam_f = coeff_grid @ basis_f + np.array([float(c) for c in rho_k])
    norms = np.einsum("ij,jk,ik->i", lam_f, form_f, lam_f)
    # absolute slack far above float error; exact test decides below
    candidates = coeff_grid[norms <= float(bound) + 0.5].astype(int)
    for coeffs in candidates:
        mu = tuple(
            sum((Fraction(int(coeffs[i])) * basis[i][j] for i in range(n)), Fraction(0))
            for j in range(n)
        )
        lam = wadd(mu, rho_k)
        if inner(lam, lam, g) <= bound:
            yield mu


def enumerate_discrete_series(
    pair: RealPair,
    bound,
    degree_roots: str = "positive",
    lattice_basis: Optional[tuple[Weight, ...]] = None,
) -> list[DiscreteSeriesParameter]:
    """All parameters with (lambda, lambda) <= bound, sorted.

    K-types run over the integer-coordinate weight lattice by default
    (the double-cover lattice where the catalog K-lattice is coarser),
    restricted to the K-dominant cone. Sorted by (norm, graded-lex);
    lambda values are pairwise distinct by construction and asserted.
    """
    bound = Fraction(bound)
    if bound < 0:
        raise ValidationError("bound must be nonnegative")
    if not pair.equal_rank or pair.parity == 1:
        return []
    g = pair.g
    if lattice_basis is None:
        basis: tuple[Weight, ...] = tuple(
            tuple(Fraction(1 if j == i else 0) for j in range(g.rank)) for i in range(g.rank)
        )
    else:
        basis = tuple(tuple(Fraction(c) for c in b) for b in lattice_basis)
    out = []
    for mu in _lattice_box(pair, bound, basis):
        if any(pair.k.coroot_pairing(mu, i) < 0 for i in range(len(pair.k.simple_roots))):
            continue
        res = dirac_induct(mu, pair, degree_roots)
        if res.ok:
            out.append(res.parameter)
    out.sort(key=lambda p: (inner(p.lam, p.lam, g), grlex_key(p.lam)))
    lams = {p.lam for p in out}
    if len(lams) != len(out):
        raise AssertionError("duplicate parameter in enumeration output")
    return out


def pairing_compact_oracle(h_label, v, pair: RealPair) -> int:
    """Index pairing in the fully compact case via invariants.

    Computes the invariant multiplicity of dual(V) x dual(S) x H over
    K. With the trivial spin module of a compact pair this is exactly
    the Kronecker delta of the two labels.
    """
    if not pair.is_compact:
        raise ValidationError("compact oracle needs a fully compact pair")
    hw_h = _label_weight(h_label)
    hw_v = _label_weight(v)
    sc = spin_characters(pair)
    s_total = sc.s_plus + sc.s_minus
    chi = product(
        product(dual(irr_character(hw_v, pair.k)), dual(s_total)),
        irr_character(hw_h, pair.k),
    )
    return invariant_multiplicity(chi)


def parameter_to_json(p: DiscreteSeriesParameter) -> dict:
    return {
        "pair": p.pair.catalog_name or str(p.pair.g.cartan),
        "lambda": vec_str(p.lam),
        "mu": vec_str(p.min_k_type.highest_weight),
        "formal_degree": fr_str(p.formal_degree),
        "signed_trace": fr_str(p.signed_trace),
        "chamber_id": p.chamber_id,
    }
