"""Spin modules of equal-rank real pairs, and the shipped pair catalog.

A real pair (g, k) is specified combinatorially: an ambient root
system together with a compact/noncompact marking of its positive
roots. The marking must extend additively to a Z/2 grading of all
roots, and the compact part must close into a root subsystem. The
spin module S = S+ (+) S- of the noncompact part is built purely from
weights: its weights are the half sign-sums over the noncompact
positive roots.

Unequal-rank pairs (for the no-discrete-series corollaries) are
representable through catalog metadata, but the sign-vector spin
construction refuses them; the spin difference degenerates to the zero
class instead.
"""

from __future__ import annotations

import functools
import json
import os
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from typing import Iterable, Optional, Union

from ._linalg import solve_left
from .errors import ValidationError
from .jsonutil import parse_vec, vec_str
from .repring import VirtualCharacter, char_from_terms, product, trivial_character, zero_character
from .rootsys import (
    CartanType,
    RootSystem,
    Weight,
    build_root_system,
    grlex_key,
    parse_cartan,
    subsystem,
    wadd,
    wneg,
    wscale,
    wsub,
    wzero,
)

CATALOG_ENV_VAR = "DIRAC_ATLAS_CATALOG"


@dataclass(frozen=True, eq=False)
class RealPair:
    """Equal-rank-aware descriptor of (g, k) by root grading.

    parity is dim(g/k) mod 2; for grading-defined pairs dim(g/k) is
    2 * |noncompact positive| and the parity is 0. Catalog entries
    whose geometry the grading cannot express (complexified groups)
    carry explicit overrides.
    """

    g: RootSystem
    k: RootSystem
    compact_positive: tuple[Weight, ...]
    noncompact_positive: tuple[Weight, ...]
    equal_rank: bool
    dim_g_mod_k: int
    parity: int
    k_lattice: tuple[Weight, ...]
    catalog_name: Optional[str] = None

    @property
    def n_plus(self) -> int:
        return len(self.noncompact_positive)

    @property
    def is_compact(self) -> bool:
        return self.equal_rank and not self.noncompact_positive


@dataclass(frozen=True)
class SpinCharacter:
    s_plus: VirtualCharacter
    s_minus: VirtualCharacter


@dataclass(frozen=True)
class SpinStructure:
    lifts_on_G: bool
    lifts_on_double_cover: bool


def _validate_grading(rs: RootSystem, compact: set[Weight]) -> None:
    """The marking, extended by e(-a) = e(a), must be additive."""
    eps = {}
    for r in rs.positive_roots:
        eps[r] = 0 if r in compact else 1
        eps[wneg(r)] = eps[r]
    all_roots = list(eps)
    root_set = set(all_roots)
    for a in all_roots:
        for b in all_roots:
            s = wadd(a, b)
            if s in root_set and (eps[a] + eps[b]) % 2 != eps[s]:
                raise ValidationError(
                    "compact marking is not an additive Z/2 grading "
                    f"(fails at {vec_str(a)} + {vec_str(b)})"
                )


def build_pair(
    cartan: Union[CartanType, str],
    compact_marking: Union[str, Iterable[Weight]],
    *,
    equal_rank: Optional[bool] = None,
    dim_g_mod_k: Optional[int] = None,
    k_lattice: Optional[Iterable[Weight]] = None,
    name: Optional[str] = None,
) -> RealPair:
    """Validate a compact/noncompact marking and assemble the pair.

    compact_marking is "all" or an iterable of positive-root coordinate
    vectors. The K weight lattice defaults to the fundamental-weight
    lattice (the integer coordinate lattice); catalog entries may
    override it.
    """
    ct = parse_cartan(cartan) if isinstance(cartan, str) else cartan
    g = build_root_system(ct)
    if compact_marking == "all":
        compact = set(g.positive_roots)
    else:
        compact = set()
        for w in compact_marking:
            ww = tuple(Fraction(c) for c in w)
            if ww not in g.positive_roots:
                raise ValidationError(f"{vec_str(ww)} is not a positive root of {ct}")
            compact.add(ww)
    _validate_grading(g, compact)
    k = subsystem(g, sorted(compact, key=grlex_key))
    noncompact = tuple(r for r in g.positive_roots if r not in compact)
    if dim_g_mod_k is None:
        dim_g_mod_k = 2 * len(noncompact)
    if equal_rank is None:
        equal_rank = True
    if k_lattice is None:
        basis: tuple[Weight, ...] = tuple(
            tuple(Fraction(1 if j == i else 0) for j in range(g.rank)) for i in range(g.rank)
        )
    else:
        basis = tuple(tuple(Fraction(c) for c in b) for b in k_lattice)
        if len(basis) != g.rank:
            raise ValidationError("K lattice basis must have full rank")
    return RealPair(
        g=g,
        k=k,
        compact_positive=tuple(sorted(compact, key=grlex_key)),
        noncompact_positive=noncompact,
        equal_rank=equal_rank,
        dim_g_mod_k=dim_g_mod_k,
        parity=dim_g_mod_k % 2,
        k_lattice=basis,
        catalog_name=name,
    )


def rescale_pair(pair: RealPair, factor) -> RealPair:
    """The same pair with the ambient bilinear form scaled by factor.

    Classification data (regularity, degrees, chambers) must not move;
    only norms and norm bounds scale.
    """
    from .rootsys import rescale_form

    g = rescale_form(pair.g, factor)
    k = RootSystem(
        cartan=pair.k.cartan,
        rank=pair.k.rank,
        simple_roots=pair.k.simple_roots,
        positive_roots=pair.k.positive_roots,
        form=g.form,
        rho=pair.k.rho,
    )
    return RealPair(
        g=g,
        k=k,
        compact_positive=pair.compact_positive,
        noncompact_positive=pair.noncompact_positive,
        equal_rank=pair.equal_rank,
        dim_g_mod_k=pair.dim_g_mod_k,
        parity=pair.parity,
        k_lattice=pair.k_lattice,
        catalog_name=pair.catalog_name,
    )


def rho_noncompact(pair: RealPair) -> Weight:
    """Half sum of the noncompact positive roots."""
    total = wzero(pair.g.rank)
    for b in pair.noncompact_positive:
        total = wadd(total, b)
    return wscale(Fraction(1, 2), total)


def lattice_contains(basis: tuple[Weight, ...], w: Weight) -> bool:
    coeffs = solve_left(basis, w)
    return coeffs is not None and all(c.denominator == 1 for c in coeffs)


def spin_characters(pair: RealPair) -> SpinCharacter:
    """S+ and S- from sign vectors over the noncompact positive roots.

    The weights of S are (1/2) sum eps_b * b over all sign vectors;
    grading is by the parity of the number of minus signs. Refuses
    unequal-rank pairs (no shared torus to carry the weights).
    """
    if not pair.equal_rank:
        raise ValidationError("spin characters need an equal-rank pair")
    n = pair.g.rank
    plus: dict[Weight, int] = {}
    minus: dict[Weight, int] = {}
    halves = [wscale(Fraction(1, 2), b) for b in pair.noncompact_positive]
    for mask in range(1 << len(halves)):
        w = wzero(n)
        negs = 0
        for i, h in enumerate(halves):
            if mask >> i & 1:
                w = wsub(w, h)
                negs += 1
            else:
                w = wadd(w, h)
        tgt = plus if negs % 2 == 0 else minus
        tgt[w] = tgt.get(w, 0) + 1
    return SpinCharacter(
        s_plus=char_from_terms(pair.k, plus),
        s_minus=char_from_terms(pair.k, minus),
    )


def spin_difference_character(pair: RealPair) -> VirtualCharacter:
    """S+ - S- as the expanded product of (e^{b/2} - e^{-b/2}).

    This is an independent second code path from spin_characters; the
    two must agree term by term on equal-rank pairs. Unequal-rank
    pairs get the zero class (the spin difference symmetrizes away).
    """
    if not pair.equal_rank:
        return zero_character(pair.k)
    out = trivial_character(pair.k)
    for b in pair.noncompact_positive:
        h = wscale(Fraction(1, 2), b)
        out = product(out, char_from_terms(pair.k, {h: 1, wneg(h): -1}))
    return out


def check_spin_structure(pair: RealPair) -> SpinStructure:
    """Liftability of the isotropy action to the spin group.

    Lifts on G itself iff the half sum of the noncompact positive
    roots lies in the pair's K weight lattice. On the two-fold cover
    the needed character always exists (half-integral weights are
    admitted), so that flag is constantly true.
    """
    if not pair.equal_rank:
        raise ValidationError("spin structure check needs an equal-rank pair")
    rn = rho_noncompact(pair)
    on_g = lattice_contains(pair.k_lattice, rn)
    half_basis = tuple(wscale(Fraction(1, 2), b) for b in pair.k_lattice)
    assert lattice_contains(half_basis, rn), "rho_n escaped the half lattice"
    return SpinStructure(lifts_on_G=on_g, lifts_on_double_cover=True)


_ALLOWED_CATALOG_KEYS = {
    "cartan",
    "compact",
    "equal_rank",
    "dim_g_mod_k",
    "k_lattice",
    "description",
}


def default_catalog_path() -> str:
    env = os.environ.get(CATALOG_ENV_VAR)
    if env:
        return env
    return str(resources.files("dirac_atlas").joinpath("catalog.json"))


def load_catalog(path: Optional[str] = None) -> dict[str, RealPair]:
    """Load and validate the named pair catalog.

    Resolution order: explicit path, the DIRAC_ATLAS_CATALOG
    environment variable, then the packaged file. Loaded catalogs are
    cached per resolved path, so pair objects are shared.
    """
    return _load_catalog_cached(path or default_catalog_path())


@functools.lru_cache(maxsize=None)
def _load_catalog_cached(actual: str) -> dict[str, RealPair]:
    with open(actual, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    if not isinstance(data, dict) or "pairs" not in data or "version" not in data:
        raise ValidationError(f"catalog {actual} lacks version/pairs")
    out: dict[str, RealPair] = {}
    for pname, entry in data["pairs"].items():
        unknown = set(entry) - _ALLOWED_CATALOG_KEYS
        if unknown:
            raise ValidationError(f"catalog entry {pname}: unknown keys {sorted(unknown)}")
        marking: Union[str, list] = entry["compact"]
        if marking != "all":
            marking = [parse_vec(v) for v in marking]
        lattice = entry.get("k_lattice")
        if lattice is not None:
            lattice = [parse_vec(v) for v in lattice]
        out[pname] = build_pair(
            entry["cartan"],
            marking,
            equal_rank=entry.get("equal_rank"),
            dim_g_mod_k=entry.get("dim_g_mod_k"),
            k_lattice=lattice,
            name=pname,
        )
    return out


def get_pair(name: str, path: Optional[str] = None) -> RealPair:
    cat = load_catalog(path)
    if name not in cat:
        raise ValidationError(
            f"unknown pair {name!r}; catalog has {', '.join(sorted(cat))}"
        )
    return cat[name]


def catalog_names(path: Optional[str] = None) -> list[str]:
    return sorted(load_catalog(path))
