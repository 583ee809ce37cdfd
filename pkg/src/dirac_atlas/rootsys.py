"""Exact root systems, weight lattices and Weyl groups.

Weights are tuples of Fractions in the simple-root-dual basis: the
i-th coordinate of a weight x is the coroot pairing 2(x, a_i)/(a_i, a_i)
against the i-th simple root of the ambient system. In that basis the
i-th simple root is the i-th row of the Cartan matrix, rho is (1,...,1),
dominance is coordinate-wise nonnegativity, and the integral weight
lattice is Z^n. Half-integral coordinates (denominator 2) are the
normal currency for spin shifts; arithmetic is closed under all
rational scalars.

Normalization: long roots have squared length 2 in each simple factor,
so formal-degree style ratios (x, a)/(rho, a) are scale-free. The
stored bilinear form is the Gram matrix of the coordinate basis.

Everything here is immutable after construction and safe to share;
all operations are pure functions.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional

from ._linalg import Matrix, identity, mat_inv, mat_mul, solve_left
from .errors import DeskScaleError, ValidationError
from .jsonutil import mat_str, vec_str

Weight = tuple[Fraction, ...]

FAMILIES = ("A", "B", "C", "D", "E", "F", "G")

# Materializing the Weyl group stops at this order; orbit operations
# stream and stay available beyond it.
WEYL_MATERIALIZE_CAP = 100_000


def weight(coords: Iterable) -> Weight:
    return tuple(Fraction(c) for c in coords)


def wzero(n: int) -> Weight:
    return (Fraction(0),) * n


def wadd(a: Weight, b: Weight) -> Weight:
    return tuple(x + y for x, y in zip(a, b))


def wsub(a: Weight, b: Weight) -> Weight:
    return tuple(x - y for x, y in zip(a, b))


def wneg(a: Weight) -> Weight:
    return tuple(-x for x in a)


def wscale(c, a: Weight) -> Weight:
    f = Fraction(c)
    return tuple(f * x for x in a)


def grlex_key(w: Weight):
    """Graded-lexicographic sort key: total coordinate sum, then lex."""
    return (sum(w), w)


@dataclass(frozen=True)
class CartanType:
    """A product of simple factors, e.g. (("A", 2), ("G", 2)).

    The empty factor list is a legal value (torus-only degenerate case)
    but build_root_system rejects it.
    """

    factors: tuple[tuple[str, int], ...]

    def __post_init__(self):
        for fam, rank in self.factors:
            if fam not in FAMILIES:
                raise ValidationError(f"unknown family {fam!r}")
            if not isinstance(rank, int) or rank < 1:
                raise ValidationError(f"rank must be a positive integer, got {rank!r}")
            if fam == "A" and rank < 1:
                raise ValidationError("A requires rank >= 1")
            if fam == "B" and rank < 2:
                raise ValidationError("B requires rank >= 2")
            if fam == "C" and rank < 2:
                raise ValidationError("C requires rank >= 2")
            if fam == "D" and rank < 3:
                raise ValidationError("D requires rank >= 3 (use A1 factors below that)")
            if fam == "E" and rank not in (6, 7, 8):
                raise ValidationError("E requires rank in {6, 7, 8}")
            if fam == "F" and rank != 4:
                raise ValidationError("F requires rank 4")
            if fam == "G" and rank != 2:
                raise ValidationError("G requires rank 2")

    @property
    def rank(self) -> int:
        return sum(r for _, r in self.factors)

    def __str__(self) -> str:
        return "x".join(f"{fam}{rank}" for fam, rank in self.factors) or "0"


def parse_cartan(text: str) -> CartanType:
    """Parse "A2", "A1xA1", "B2 x G2" into a CartanType."""
    toks = [t for t in str(text).replace("+", "x").replace(" ", "x").split("x") if t]
    factors = []
    for tok in toks:
        fam = tok[0].upper()
        try:
            rank = int(tok[1:])
        except ValueError as exc:
            raise ValidationError(f"cannot parse factor {tok!r}") from exc
        factors.append((fam, rank))
    if not factors:
        raise ValidationError(f"cannot parse Cartan type {text!r}")
    return CartanType(tuple(factors))


def _cartan_matrix_simple(fam: str, n: int) -> list[list[int]]:
    """Cartan matrix with the convention C[i][j] = 2(a_i,a_j)/(a_j,a_j)."""
    c = [[2 if i == j else 0 for j in range(n)] for i in range(n)]

    def edge(i, j):
        c[i][j] = -1
        c[j][i] = -1

    if fam == "A":
        for i in range(n - 1):
            edge(i, i + 1)
    elif fam == "B":
        # a_n short: (a_{n-1}, a_n) = -1, short length^2 = 1.
        for i in range(n - 2):
            edge(i, i + 1)
        c[n - 2][n - 1] = -2
        c[n - 1][n - 2] = -1
    elif fam == "C":
        # a_n long, the rest short.
        for i in range(n - 2):
            edge(i, i + 1)
        c[n - 2][n - 1] = -1
        c[n - 1][n - 2] = -2
    elif fam == "D":
        for i in range(n - 2):
            edge(i, i + 1)
        edge(n - 3, n - 1)
    elif fam == "E":
        # Bourbaki numbering: node 2 hangs off node 4.
        chain = [1, 3, 4, 5, 6, 7, 8][: n - 1]
        for a, b in zip(chain, chain[1:]):
            edge(a - 1, b - 1)
        edge(2 - 1, 4 - 1)
    elif fam == "F":
        edge(0, 1)
        c[1][2] = -2
        c[2][1] = -1
        edge(2, 3)
    elif fam == "G":
        # a_1 short (length^2 = 2/3), a_2 long.
        c[0][1] = -1
        c[1][0] = -3
    return c


def _symmetrizer(fam: str, n: int) -> list[Fraction]:
    """d_i = (a_i, a_i)/2 with long roots normalized to length^2 = 2."""
    if fam in ("A", "D", "E"):
        return [Fraction(1)] * n
    if fam == "B":
        return [Fraction(1)] * (n - 1) + [Fraction(1, 2)]
    if fam == "C":
        return [Fraction(1, 2)] * (n - 1) + [Fraction(1)]
    if fam == "F":
        return [Fraction(1), Fraction(1), Fraction(1, 2), Fraction(1, 2)]
    if fam == "G":
        return [Fraction(1, 3), Fraction(1)]
    raise AssertionError(fam)


def positive_roots_from_cartan(cartan_matrix) -> list[tuple[int, ...]]:
    """All positive roots in simple-root coordinates, graded-lex order.

    Standard inductive closure: a candidate b + a_i at the next height
    is a root iff the a_i-string through b allows it, i.e.
    q - <b, a_i_coroot> > 0 where q counts how far the string extends
    downwards.
    """
    n = len(cartan_matrix)
    if n == 0:
        return []

    def pairing(k: tuple[int, ...], i: int) -> int:
        return sum(k[j] * cartan_matrix[j][i] for j in range(n))

    simple = [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]
    roots: set[tuple[int, ...]] = set(simple)
    level = list(simple)
    out = list(simple)
    while level:
        nxt: set[tuple[int, ...]] = set()
        for beta in level:
            for i in range(n):
                q = 0
                probe = list(beta)
                probe[i] -= 1
                while tuple(probe) in roots:
                    q += 1
                    probe[i] -= 1
                if q - pairing(beta, i) > 0:
                    cand = list(beta)
                    cand[i] += 1
                    nxt.add(tuple(cand))
        level = sorted(nxt)
        roots.update(nxt)
        out.extend(level)
    return sorted(out, key=lambda k: (sum(k), k))


@dataclass(frozen=True, eq=False)
class RootSystem:
    """Roots, form and rho in a fixed rational coordinate space.

    Standalone systems built from a CartanType use their own
    fundamental-weight coordinates. Subsystems (see `subsystem`) reuse
    the coordinates and form of the ambient system, so their weights
    mix freely with ambient ones.

    Instances compare and hash by identity; build_root_system caches,
    so the same CartanType yields the same object.
    """

    cartan: CartanType
    rank: int
    simple_roots: tuple[Weight, ...]
    positive_roots: tuple[Weight, ...]
    form: Matrix
    rho: Weight

    @functools.cached_property
    def _coroot_functionals(self) -> tuple[Weight, ...]:
        """Row vectors u with <x, beta_i_coroot> = sum_j x_j u_j."""
        return tuple(self._coroot_functional(b) for b in self.simple_roots)

    def _coroot_functional(self, root: Weight) -> Weight:
        nn = inner(root, root, self)
        if nn == 0:
            raise ValidationError("zero vector is not a root")
        col = tuple(
            sum(self.form[j][k] * root[k] for k in range(self.rank)) for j in range(self.rank)
        )
        return tuple(2 * c / nn for c in col)

    def coroot_pairing(self, x: Weight, i: int) -> Fraction:
        u = self._coroot_functionals[i]
        return sum((xj * uj for xj, uj in zip(x, u)), Fraction(0))


def _check_dim(x: Weight, rs: RootSystem) -> None:
    if len(x) != rs.rank:
        raise ValidationError(f"dimension mismatch: weight has {len(x)} coords, system rank {rs.rank}")


@functools.lru_cache(maxsize=None)
def build_root_system(cartan: CartanType) -> RootSystem:
    """Build the standalone root system of a CartanType.

    Positive roots are complete under the Cartan-matrix closure and
    come in graded-lex order of their simple-root coordinates. The
    empty type is rejected.
    """
    if not cartan.factors:
        raise ValidationError("empty Cartan type has no root system")
    n = cartan.rank
    cm: list[list[Fraction]] = [[Fraction(0)] * n for _ in range(n)]
    sym: list[Fraction] = []
    offset = 0
    simple_coords: list[tuple[int, ...]] = []
    for fam, rank in cartan.factors:
        block = _cartan_matrix_simple(fam, rank)
        for i in range(rank):
            for j in range(rank):
                cm[offset + i][offset + j] = Fraction(block[i][j])
        sym.extend(_symmetrizer(fam, rank))
        for k in positive_roots_from_cartan(block):
            simple_coords.append((0,) * offset + k + (0,) * (n - offset - rank))
        offset += rank
    simple_coords.sort(key=lambda k: (sum(k), k))
    cmat: Matrix = tuple(tuple(row) for row in cm)
    inv = mat_inv(cmat)
    form: Matrix = tuple(
        tuple(inv[i][j] * sym[j] for j in range(n)) for i in range(n)
    )
    # fw coords of a root with simple-root coords k: sum_i k_i * row_i(C).
    def to_fw(k) -> Weight:
        return tuple(
            sum((Fraction(k[i]) * cmat[i][j] for i in range(n)), Fraction(0)) for j in range(n)
        )

    positives = tuple(to_fw(k) for k in simple_coords)
    simples = tuple(to_fw(tuple(1 if j == i else 0 for j in range(n))) for i in range(n))
    rho = wscale(Fraction(1, 2), functools.reduce(wadd, positives, wzero(n)))
    rs = RootSystem(
        cartan=cartan,
        rank=n,
        simple_roots=simples,
        positive_roots=positives,
        form=form,
        rho=rho,
    )
    assert rho == (Fraction(1),) * n
    return rs


def rescale_form(rs: RootSystem, factor) -> RootSystem:
    """Same combinatorial data with the bilinear form scaled by factor.

    Classification ratios like (x, a)/(rho, a) are invariant under
    this; norms and norm bounds scale.
    """
    f = Fraction(factor)
    if f <= 0:
        raise ValidationError("form scale factor must be positive")
    return RootSystem(
        cartan=rs.cartan,
        rank=rs.rank,
        simple_roots=rs.simple_roots,
        positive_roots=rs.positive_roots,
        form=tuple(tuple(f * x for x in row) for row in rs.form),
        rho=rs.rho,
    )


def subsystem(ambient: RootSystem, roots: Iterable[Weight], cartan: Optional[CartanType] = None) -> RootSystem:
    """Root system on a closed set of positive roots of the ambient one.

    The coordinate space and form are inherited. Simple roots are the
    indecomposable elements; the closure they generate must reproduce
    the given set exactly, otherwise the set is not a subsystem.
    """
    pos = sorted(set(roots), key=grlex_key)
    pos_set = set(pos)
    for r in pos:
        if r not in ambient.positive_roots:
            raise ValidationError(f"{vec_str(r)} is not a positive root of the ambient system")
    simples = [r for r in pos if all(wsub(r, s) not in pos_set for s in pos)]
    if simples:
        cm = [[2 * inner(a, b, ambient) / inner(b, b, ambient) for b in simples] for a in simples]
        for row in cm:
            for x in row:
                if x.denominator != 1:
                    raise ValidationError("marked set is not a root subsystem (non-integral Cartan pairing)")
        closure = positive_roots_from_cartan([[int(x) for x in row] for row in cm])
        rebuilt = {
            functools.reduce(wadd, (wscale(k[i], simples[i]) for i in range(len(simples))), wzero(ambient.rank))
            for k in closure
        }
        if rebuilt != pos_set:
            raise ValidationError("marked set is not a root subsystem (closure mismatch)")
    rho = wscale(Fraction(1, 2), functools.reduce(wadd, pos, wzero(ambient.rank)))
    if cartan is None:
        cartan = identify_cartan_type(tuple(simples), ambient)
    return RootSystem(
        cartan=cartan,
        rank=ambient.rank,
        simple_roots=tuple(simples),
        positive_roots=tuple(pos),
        form=ambient.form,
        rho=rho,
    )


def inner(a: Weight, b: Weight, rs: RootSystem) -> Fraction:
    """Symmetric bilinear form, exact."""
    _check_dim(a, rs)
    _check_dim(b, rs)
    total = Fraction(0)
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        row = rs.form[i]
        total += ai * sum((row[j] * bj for j, bj in enumerate(b) if bj != 0), Fraction(0))
    return total


def is_regular(x: Weight, rs: RootSystem) -> bool:
    """True iff (x, a) != 0 for every positive root a."""
    return all(inner(x, a, rs) != 0 for a in rs.positive_roots)


def is_dominant(x: Weight, rs: RootSystem) -> bool:
    """True iff (x, a) >= 0 for every simple root a."""
    return all(rs.coroot_pairing(x, i) >= 0 for i in range(len(rs.simple_roots)))


def reflect(x: Weight, root: Weight, rs: RootSystem) -> Weight:
    """Reflection s_root(x) = x - 2(x,root)/(root,root) * root."""
    nn = inner(root, root, rs)
    if nn == 0:
        raise ValidationError("cannot reflect in an isotropic vector")
    c = 2 * inner(x, root, rs) / nn
    return wsub(x, wscale(c, root))


def make_dominant(x: Weight, rs: RootSystem) -> Weight:
    """The dominant representative of the Weyl orbit of x."""
    cur = x
    while True:
        i = next(
            (k for k in range(len(rs.simple_roots)) if rs.coroot_pairing(cur, k) < 0),
            None,
        )
        if i is None:
            return cur
        cur = wsub(cur, wscale(rs.coroot_pairing(cur, i), rs.simple_roots[i]))


def make_antidominant(x: Weight, rs: RootSystem) -> Weight:
    return wneg(make_dominant(wneg(x), rs))


@functools.lru_cache(maxsize=None)
def weyl_orbit(x: Weight, rs: RootSystem) -> tuple[Weight, ...]:
    """Orbit of x under the simple reflections, sorted graded-lex.

    Streams by breadth-first search; never materializes the group.
    """
    _check_dim(x, rs)
    seen = {x}
    frontier = [x]
    while frontier:
        nxt = []
        for w in frontier:
            for i in range(len(rs.simple_roots)):
                c = rs.coroot_pairing(w, i)
                if c == 0:
                    continue
                img = wsub(w, wscale(c, rs.simple_roots[i]))
                if img not in seen:
                    seen.add(img)
                    nxt.append(img)
        frontier = nxt
    return tuple(sorted(seen, key=grlex_key))


def _reflection_matrix(root: Weight, rs: RootSystem) -> Matrix:
    u = rs._coroot_functional(root)
    n = rs.rank
    return tuple(
        tuple(Fraction(1 if j == k else 0) - u[j] * root[k] for k in range(n)) for j in range(n)
    )


def apply_matrix(m: Matrix, x: Weight) -> Weight:
    n = len(x)
    return tuple(sum((x[j] * m[j][k] for j in range(n)), Fraction(0)) for k in range(n))


@functools.lru_cache(maxsize=None)
def weyl_elements(rs: RootSystem) -> tuple[Matrix, ...]:
    """All Weyl group elements as coordinate matrices.

    Breadth-first by word length with sorted levels, so the identity is
    index 0 and the longest element is last. Raises DeskScaleError past
    the materialization cap.
    """
    gens = [_reflection_matrix(r, rs) for r in rs.simple_roots]
    ident = identity(rs.rank)
    seen = {ident}
    order = [ident]
    frontier = [ident]
    while frontier:
        nxt = set()
        for m in frontier:
            for g in gens:
                prod = mat_mul(m, g)
                if prod not in seen:
                    nxt.add(prod)
        frontier = sorted(nxt)
        seen.update(frontier)
        order.extend(frontier)
        if len(order) > WEYL_MATERIALIZE_CAP:
            raise DeskScaleError(
                f"Weyl group exceeds the materialization cap {WEYL_MATERIALIZE_CAP}"
            )
    return tuple(order)


def weyl_group_order(rs: RootSystem) -> int:
    return len(weyl_elements(rs))


def identify_cartan_type(simples: tuple[Weight, ...], ambient: RootSystem) -> CartanType:
    """Recognize the Cartan type of an independent set of simple roots.

    Brute force at desk scale: split into orthogonality components and
    match each component's Cartan matrix against the known families
    under permutations.
    """
    if not simples:
        return CartanType(())
    m = len(simples)
    pair = [
        [2 * inner(a, b, ambient) / inner(b, b, ambient) for b in simples] for a in simples
    ]
    adj = {i: set() for i in range(m)}
    for i in range(m):
        for j in range(m):
            if i != j and pair[i][j] != 0:
                adj[i].add(j)
    unvisited = set(range(m))
    components = []
    while unvisited:
        start = min(unvisited)
        comp = {start}
        stack = [start]
        while stack:
            v = stack.pop()
            for w in adj[v]:
                if w not in comp:
                    comp.add(w)
                    stack.append(w)
        unvisited -= comp
        components.append(sorted(comp))

    def candidates(r: int) -> list[tuple[str, int]]:
        cands = [("A", r)]
        if r >= 2:
            cands += [("B", r), ("C", r)]
        if r >= 3:
            cands.append(("D", r))
        if r in (6, 7, 8):
            cands.append(("E", r))
        if r == 4:
            cands.append(("F", r))
        if r == 2:
            cands.append(("G", r))
        return cands

    factors = []
    for comp in components:
        r = len(comp)
        sub = [[int(pair[i][j]) for j in comp] for i in comp]
        found = None
        for fam, rank in candidates(r):
            ref = _cartan_matrix_simple(fam, rank)
            for perm in itertools.permutations(range(r)):
                if all(
                    sub[perm[i]][perm[j]] == ref[i][j] for i in range(r) for j in range(r)
                ):
                    found = (fam, rank)
                    break
            if found:
                break
        if found is None:
            raise ValidationError("could not identify the Cartan type of the subsystem")
        factors.append(found)
    factors.sort()
    return CartanType(tuple(factors))


def rootsys_to_json(rs: RootSystem) -> dict:
    return {
        "cartan": [[fam, rank] for fam, rank in rs.cartan.factors],
        "simple_roots": [vec_str(r) for r in rs.simple_roots],
        "positive_roots": [vec_str(r) for r in rs.positive_roots],
        "form": mat_str(rs.form),
        "rho": vec_str(rs.rho),
    }


def fw_to_simple_coords(x: Weight, rs: RootSystem) -> Optional[Weight]:
    """Coordinates of x in the simple-root basis of rs, or None.

    For subsystems the simple roots need not span the ambient space;
    None means x is outside their rational span.
    """
    _check_dim(x, rs)
    if not rs.simple_roots:
        return () if all(c == 0 for c in x) else None
    return solve_left(rs.simple_roots, x)
