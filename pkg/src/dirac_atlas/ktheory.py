"""K0 of finite-dimensional semisimple algebras, at desk scale.

An algebra is a list of matrix block sizes. Idempotents, possibly in
matrix amplifications, map to K0 classes through per-block ranks;
graded module pairs with an odd operator carry an index built by the
literal stabilization recipe (complete u to a surjection, take the
kernel class minus the added free summand) and cross-checked against
per-block kernel/cokernel counting.

Finite groups enter through their convolution algebra under the
mass-one Haar measure. The Wedderburn decomposition is computed
numerically from the regular representation: class sums cut out the
isotypic components, a random Hermitian element of the commutant cuts
each isotypic down to a single irreducible copy, and compressing the
left action to that copy yields unitary irreducible matrices.

Scalars are floating complex with tolerance TAU = 1e-9 for idempotency
and equality; rank decisions use an explicit eigenvalue/singular-value
gap and raise instead of guessing. Inputs with Fraction entries (or
(re, im) Fraction pairs) take an exact Gaussian-rational path.
"""

from __future__ import annotations

import itertools
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

import numpy as np

from .errors import NumericalAmbiguityError, ValidationError

TAU = 1e-9
RANK_GAP = 1e-6
# Singular values or eigenvalue distances inside (gap, AMBIGUITY_FACTOR * gap)
# are neither zero nor clearly nonzero; rank decisions refuse them.
AMBIGUITY_FACTOR = 1000.0

GROUP_ORDER_CAP = 1000


class FormalDifferenceWarning(UserWarning):
    """Trace evaluated on a class with no idempotent representative."""


# ---------------------------------------------------------------------------
# Exact Gaussian-rational matrices


GaussianRational = tuple[Fraction, Fraction]


def _gq(x) -> GaussianRational:
    if isinstance(x, tuple) and len(x) == 2:
        return (Fraction(x[0]), Fraction(x[1]))
    if isinstance(x, (int, Fraction)):
        return (Fraction(x), Fraction(0))
    raise ValidationError(f"entry {x!r} is not a Gaussian rational")


def _gq_mul(a: GaussianRational, b: GaussianRational) -> GaussianRational:
    return (a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0])


@dataclass(frozen=True)
class ExactMatrix:
    """Square matrix over the Gaussian rationals."""

    rows: tuple[tuple[GaussianRational, ...], ...]

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable]) -> "ExactMatrix":
        mat = tuple(tuple(_gq(x) for x in row) for row in rows)
        if any(len(r) != len(mat) for r in mat):
            raise ValidationError("exact matrices must be square")
        return cls(mat)

    @property
    def size(self) -> int:
        return len(self.rows)

    def mul(self, other: "ExactMatrix") -> "ExactMatrix":
        n = self.size
        z = (Fraction(0), Fraction(0))
        out = []
        for i in range(n):
            row = []
            for j in range(n):
                acc = z
                for k in range(n):
                    p = _gq_mul(self.rows[i][k], other.rows[k][j])
                    acc = (acc[0] + p[0], acc[1] + p[1])
                row.append(acc)
            out.append(tuple(row))
        return ExactMatrix(tuple(out))

    def is_idempotent(self) -> bool:
        return self.mul(self).rows == self.rows

    def rank(self) -> int:
        """Exact rank by Gaussian elimination over Q(i)."""
        rows = [list(r) for r in self.rows]
        n = self.size
        rank = 0
        for col in range(n):
            piv = next(
                (r for r in range(rank, n) if rows[r][col] != (0, 0)),
                None,
            )
            if piv is None:
                continue
            rows[rank], rows[piv] = rows[piv], rows[rank]
            a, b = rows[rank][col]
            den = a * a + b * b
            inv = (a / den, -b / den)
            rows[rank] = [_gq_mul(inv, x) for x in rows[rank]]
            for r in range(n):
                if r != rank and rows[r][col] != (0, 0):
                    f = rows[r][col]
                    rows[r] = [
                        (x[0] - (y := _gq_mul(f, rows[rank][c]))[0], x[1] - y[1])
                        for c, x in enumerate(rows[r])
                    ]
            rank += 1
        return rank

    def to_complex(self) -> np.ndarray:
        return np.array(
            [[float(a) + 1j * float(b) for a, b in row] for row in self.rows],
            dtype=complex,
        )


# ---------------------------------------------------------------------------
# Algebras, elements, K0


@dataclass(frozen=True)
class FDAlgebra:
    """Direct sum of complex matrix blocks; K0 is Z^(number of blocks)."""

    blocks: tuple[int, ...]

    def __post_init__(self):
        if not self.blocks or any(n < 1 for n in self.blocks):
            raise ValidationError("block sizes must be a nonempty list of positive integers")

    @property
    def k(self) -> int:
        return len(self.blocks)


BlockMatrix = Union[np.ndarray, ExactMatrix]


@dataclass(frozen=True)
class AlgebraElement:
    """Per-block square matrices in a shared amplification M_amp(A)."""

    algebra: FDAlgebra
    blocks: tuple[BlockMatrix, ...]
    amplification: int

    @classmethod
    def from_blocks(cls, algebra: FDAlgebra, blocks: Sequence) -> "AlgebraElement":
        if len(blocks) != algebra.k:
            raise ValidationError("one matrix per block required")

        def exactable(b) -> bool:
            if isinstance(b, (np.ndarray, ExactMatrix)):
                return isinstance(b, ExactMatrix)
            return all(
                isinstance(x, (int, Fraction)) or (isinstance(x, tuple) and len(x) == 2)
                for row in b
                for x in row
            )

        exact = all(exactable(b) for b in blocks)
        converted: list[BlockMatrix] = []
        for b in blocks:
            if isinstance(b, ExactMatrix):
                converted.append(b)
            elif exact:
                converted.append(ExactMatrix.from_rows(b))
            else:
                mat = b if isinstance(b, np.ndarray) else np.array(
                    [[complex(x) for x in row] for row in b]
                ).reshape(len(list(b)), -1)
                if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
                    raise ValidationError("block matrices must be square")
                converted.append(np.asarray(mat, dtype=complex))
        amps = set()
        for mat, n in zip(converted, algebra.blocks):
            size = mat.size if isinstance(mat, ExactMatrix) else mat.shape[0]
            if size % n != 0:
                raise ValidationError(
                    f"block of size {size} is not an amplification of Mat({n})"
                )
            amps.add(size // n)
        if len(amps) != 1:
            raise ValidationError("all blocks must share one amplification level")
        return cls(algebra=algebra, blocks=tuple(converted), amplification=amps.pop())

    @classmethod
    def zero(cls, algebra: FDAlgebra, amplification: int = 1) -> "AlgebraElement":
        return cls.from_blocks(
            algebra, [np.zeros((n * amplification, n * amplification)) for n in algebra.blocks]
        )

    @classmethod
    def unit(cls, algebra: FDAlgebra, amplification: int = 1) -> "AlgebraElement":
        return cls.from_blocks(
            algebra, [np.eye(n * amplification) for n in algebra.blocks]
        )

    @property
    def is_exact(self) -> bool:
        return any(isinstance(b, ExactMatrix) for b in self.blocks)


@dataclass(frozen=True)
class K0Class:
    """Formal difference of idempotent classes: one integer per block."""

    ranks: tuple[int, ...]

    def __add__(self, other: "K0Class") -> "K0Class":
        return K0Class(tuple(a + b for a, b in zip(self.ranks, other.ranks)))

    def __sub__(self, other: "K0Class") -> "K0Class":
        return K0Class(tuple(a - b for a, b in zip(self.ranks, other.ranks)))


def _idempotent_eigen_rank(mat: np.ndarray, gap: float) -> int:
    """Rank of a numerically idempotent matrix from its spectrum.

    Every eigenvalue must sit within gap of 0 or of 1; anything in the
    open middle band means there is no usable spectral gap.
    """
    if mat.size == 0:
        return 0
    evals = np.linalg.eigvals(mat)
    near0 = np.abs(evals) <= gap
    near1 = np.abs(evals - 1) <= gap
    if not np.all(near0 | near1):
        stray = evals[~(near0 | near1)]
        raise NumericalAmbiguityError(
            f"idempotent rank is ambiguous: eigenvalue(s) {stray} are outside the gap bands"
        )
    return int(near1.sum())


def singular_value_rank(mat: np.ndarray, gap: float = RANK_GAP) -> int:
    """Numerical rank with an explicit gap test.

    Singular values at or below gap count as zero, values at or above
    AMBIGUITY_FACTOR * gap as nonzero; values inside the band raise.
    """
    if mat.size == 0:
        return 0
    svals = np.linalg.svd(mat, compute_uv=False)
    hi = AMBIGUITY_FACTOR * gap
    if np.any((svals > gap) & (svals < hi)):
        band = svals[(svals > gap) & (svals < hi)]
        raise NumericalAmbiguityError(
            f"rank is ambiguous: singular value(s) {band} inside the gap band ({gap}, {hi})"
        )
    return int((svals >= hi).sum())


def _check_idempotent(p: AlgebraElement, tol: float = TAU) -> None:
    for mat in p.blocks:
        if isinstance(mat, ExactMatrix):
            if not mat.is_idempotent():
                raise ValidationError("element is not idempotent (exact check)")
        else:
            err = float(np.max(np.abs(mat @ mat - mat))) if mat.size else 0.0
            if err > tol:
                raise ValidationError(
                    f"element is not idempotent: max |p^2 - p| = {err:.3e} > {tol}"
                )


def k0_class(p: AlgebraElement, algebra: FDAlgebra, *, tol: float = TAU, gap: float = RANK_GAP) -> K0Class:
    """Class of an idempotent: the vector of per-block ranks."""
    if p.algebra != algebra:
        raise ValidationError("element does not belong to the algebra")
    _check_idempotent(p, tol)
    ranks = []
    for mat in p.blocks:
        if isinstance(mat, ExactMatrix):
            ranks.append(mat.rank())
        else:
            ranks.append(_idempotent_eigen_rank(mat, gap))
    return K0Class(tuple(ranks))


def homotopic(p: AlgebraElement, q: AlgebraElement, algebra: FDAlgebra) -> bool:
    """Idempotent homotopy test via the rank classification.

    In a finite-dimensional semisimple algebra two idempotents are
    connected by a path of idempotents iff their per-block ranks agree.
    """
    return k0_class(p, algebra) == k0_class(q, algebra)


@dataclass(frozen=True)
class FredholmModule:
    """Graded pair of f.g. projective modules with an odd operator.

    e0, e1 are multiplicity vectors over the blocks; u and v are the
    two corners of the odd operator, one complex matrix per block with
    u[i] of shape (e1[i], e0[i]). In finite dimension every morphism
    is compact, so no parametrix condition constrains v.
    """

    e0: tuple[int, ...]
    e1: tuple[int, ...]
    u: tuple[np.ndarray, ...]
    v: tuple[np.ndarray, ...]

    @classmethod
    def build(cls, e0: Sequence[int], e1: Sequence[int], u: Sequence, v: Optional[Sequence] = None) -> "FredholmModule":
        e0t = tuple(int(x) for x in e0)
        e1t = tuple(int(x) for x in e1)
        if any(x < 0 for x in e0t + e1t):
            raise ValidationError("module multiplicities must be nonnegative")
        ut = tuple(np.asarray(np.array(m, dtype=complex)).reshape(m1, m0) for m, m1, m0 in zip(u, e1t, e0t))
        if v is None:
            vt = tuple(m.conj().T for m in ut)
        else:
            vt = tuple(np.asarray(np.array(m, dtype=complex)).reshape(m0, m1) for m, m1, m0 in zip(v, e1t, e0t))
        return cls(e0=e0t, e1=e1t, u=ut, v=vt)


def index_by_kernel_cokernel(m: FredholmModule, algebra: FDAlgebra, gap: float = RANK_GAP) -> K0Class:
    """Oracle route: per-block dim ker u - dim coker u."""
    if len(m.e0) != algebra.k:
        raise ValidationError("module shape does not match the algebra")
    ranks = []
    for e0, e1, u in zip(m.e0, m.e1, m.u):
        r = singular_value_rank(u, gap)
        ranks.append((e0 - r) - (e1 - r))
    return K0Class(tuple(ranks))


def fredholm_index(m: FredholmModule, algebra: FDAlgebra, gap: float = RANK_GAP) -> K0Class:
    """Index by the stabilization construction.

    Per block, append the smallest free summand A^n whose columns can
    complete u to a surjection onto E1 (columns chosen from the left
    null space of u), then return [ker(u, w)] - [A^n]. Always defined
    in finite dimension and must agree with the kernel/cokernel count.
    """
    if len(m.e0) != algebra.k:
        raise ValidationError("module shape does not match the algebra")
    defects = []
    for e1, u, n in zip(m.e1, m.u, algebra.blocks):
        r = singular_value_rank(u, gap)
        defects.append((e1 - r, n))
    n_free = max((-(-d // n) for d, n in defects), default=0)
    n_free = max(n_free, 0)
    ranks = []
    for (defect, n), e0, e1, u in zip(defects, m.e0, m.e1, m.u):
        cols = n_free * n
        if e1 == 0:
            ker = e0 + cols
        else:
            w = np.zeros((e1, cols), dtype=complex)
            if defect > 0:
                basis = _cokernel_basis(u, defect, gap)
                w[:, :defect] = basis
            stacked = np.hstack([u, w]) if cols else u
            r_full = singular_value_rank(stacked, gap)
            if r_full != e1:
                raise NumericalAmbiguityError(
                    "stabilized operator failed to become surjective"
                )
            ker = (e0 + cols) - r_full
        ranks.append(ker - cols)
    return K0Class(tuple(ranks))


def _cokernel_basis(u: np.ndarray, dim: int, gap: float) -> np.ndarray:
    """Orthonormal basis of the left null space (cokernel) of u."""
    e1 = u.shape[0]
    if u.size == 0:
        full = np.eye(e1, dtype=complex)
        return full[:, :dim]
    uu, svals, _ = np.linalg.svd(u)
    r = singular_value_rank(u, gap)
    basis = uu[:, r:]
    if basis.shape[1] < dim:
        raise NumericalAmbiguityError("cokernel basis smaller than the rank defect")
    return basis[:, :dim]


def pushforward(theta: Sequence[Sequence[int]], x: K0Class, src: FDAlgebra, dst: FDAlgebra) -> K0Class:
    """Functorial map on K0 from a unital block embedding.

    theta[j][i] is the multiplicity of src block i inside dst block j;
    unitality requires sum_i theta[j][i] * n_i == m_j for every j.
    """
    mat = [[int(c) for c in row] for row in theta]
    if len(mat) != dst.k or any(len(row) != src.k for row in mat):
        raise ValidationError("morphism matrix shape does not match the algebras")
    if any(c < 0 for row in mat for c in row):
        raise ValidationError("block multiplicities must be nonnegative")
    for j, row in enumerate(mat):
        total = sum(c * n for c, n in zip(row, src.blocks))
        if total != dst.blocks[j]:
            raise ValidationError(
                f"morphism is not unital on block {j}: sizes {total} != {dst.blocks[j]}"
            )
    return K0Class(tuple(sum(c * r for c, r in zip(row, x.ranks)) for row in mat))


# ---------------------------------------------------------------------------
# Finite groups


def cyclic_table(n: int) -> np.ndarray:
    if n < 1:
        raise ValidationError("cyclic order must be positive")
    idx = np.arange(n)
    return (idx[:, None] + idx[None, :]) % n


def _table_from_elements(elements: list, compose) -> np.ndarray:
    index = {e: i for i, e in enumerate(elements)}
    n = len(elements)
    table = np.zeros((n, n), dtype=int)
    for i, a in enumerate(elements):
        for j, b in enumerate(elements):
            table[i, j] = index[compose(a, b)]
    return table


def symmetric_table(n: int) -> np.ndarray:
    elements = sorted(itertools.permutations(range(n)))
    return _table_from_elements(
        elements, lambda p, q: tuple(p[q[i]] for i in range(n))
    )


def dihedral_table(n: int) -> np.ndarray:
    """Dihedral group of order 2n: pairs (rotation, flip)."""
    elements = [(r, f) for f in (0, 1) for r in range(n)]

    def compose(a, b):
        r1, f1 = a
        r2, f2 = b
        r = (r1 + (r2 if f1 == 0 else -r2)) % n
        return (r, (f1 + f2) % 2)

    return _table_from_elements(elements, compose)


def quaternion_table() -> np.ndarray:
    """The eight-element quaternion group {+-1, +-i, +-j, +-k}."""
    axes = "1ijk"
    mul = {
        ("1", "1"): (1, "1"), ("1", "i"): (1, "i"), ("1", "j"): (1, "j"), ("1", "k"): (1, "k"),
        ("i", "1"): (1, "i"), ("i", "i"): (-1, "1"), ("i", "j"): (1, "k"), ("i", "k"): (-1, "j"),
        ("j", "1"): (1, "j"), ("j", "i"): (-1, "k"), ("j", "j"): (-1, "1"), ("j", "k"): (1, "i"),
        ("k", "1"): (1, "k"), ("k", "i"): (1, "j"), ("k", "j"): (-1, "i"), ("k", "k"): (-1, "1"),
    }
    elements = [(s, a) for a in axes for s in (1, -1)]

    def compose(x, y):
        s, a = x
        t, b = y
        u, c = mul[(a, b)]
        return (s * t * u, c)

    return _table_from_elements(elements, compose)


GROUP_CATALOG = {
    "s3": lambda: symmetric_table(3),
    "s4": lambda: symmetric_table(4),
    "d4": lambda: dihedral_table(4),
    "q8": lambda: quaternion_table(),
}


def resolve_group_table(name_or_table) -> np.ndarray:
    if isinstance(name_or_table, str):
        name = name_or_table.lower()
        if name in GROUP_CATALOG:
            return GROUP_CATALOG[name]()
        if name.startswith("z") or name.startswith("c"):
            try:
                return cyclic_table(int(name[1:]))
            except ValueError:
                pass
        raise ValidationError(
            f"unknown group {name_or_table!r}; use z<n>, s3, s4, d4, q8 or a table"
        )
    return np.asarray(name_or_table, dtype=int)


def _validate_table(table: np.ndarray) -> tuple[int, np.ndarray]:
    """Check the table is a group; returns (identity index, inverses)."""
    if table.ndim != 2 or table.shape[0] != table.shape[1]:
        raise ValidationError("multiplication table must be square")
    n = table.shape[0]
    if n > GROUP_ORDER_CAP:
        raise ValidationError(f"group order {n} exceeds the desk-scale cap {GROUP_ORDER_CAP}")
    if table.min() < 0 or table.max() >= n:
        raise ValidationError("table entries must be element indices")
    ident = np.arange(n)
    for g in range(n):
        if not (np.array_equal(np.sort(table[g]), ident) and np.array_equal(np.sort(table[:, g]), ident)):
            raise ValidationError("table is not invertible (rows/columns are not permutations)")
    e = next((g for g in range(n) if np.array_equal(table[g], ident) and np.array_equal(table[:, g], ident)), None)
    if e is None:
        raise ValidationError("table has no identity element")
    for a in range(n):
        if not np.array_equal(table[table[a], :], table[a, table]):
            raise ValidationError("table is not associative")
    inv = np.zeros(n, dtype=int)
    for g in range(n):
        inv[g] = int(np.where(table[g] == e)[0][0])
    return e, inv


def validate_group_table(table: np.ndarray) -> tuple[int, np.ndarray]:
    """Public wrapper: checks group axioms, returns (identity, inverses)."""
    return _validate_table(np.asarray(table, dtype=int))


def _conjugacy_classes(table: np.ndarray, inv: np.ndarray) -> list[list[int]]:
    n = table.shape[0]
    seen = set()
    classes = []
    for g in range(n):
        if g in seen:
            continue
        orbit = {int(table[table[h, g], inv[h]]) for h in range(n)}
        seen |= orbit
        classes.append(sorted(orbit))
    classes.sort(key=lambda c: c[0])
    return classes


@dataclass(frozen=True, eq=False)
class FiniteGroupAlgebra:
    """Convolution algebra of a finite group under mass-one Haar.

    wedderburn() attaches the numerical isomorphism onto its matrix
    blocks: unitary irreducible representations compressed out of the
    regular representation. Blocks are sorted by (dimension, rounded
    character vector) so the layout is reproducible for a fixed seed.
    """

    table: np.ndarray
    order: int
    identity: int
    inverses: np.ndarray
    classes: tuple[tuple[int, ...], ...]
    algebra: FDAlgebra
    irreps: tuple[np.ndarray, ...]
    seed: int

    @property
    def haar_weight(self) -> float:
        return 1.0 / self.order

    def block_dims(self) -> tuple[int, ...]:
        return self.algebra.blocks


def _left_regular(table: np.ndarray) -> np.ndarray:
    """Stack of permutation matrices L[g] e_y = e_{g y}."""
    n = table.shape[0]
    L = np.zeros((n, n, n))
    for g in range(n):
        L[g, table[g], np.arange(n)] = 1.0
    return L


def wedderburn(group: Union[str, np.ndarray, Sequence], seed: int = 0) -> FiniteGroupAlgebra:
    """Numerical Wedderburn decomposition of a finite group algebra.

    Two seeded stages: a random Hermitian combination of class sums
    splits the regular representation into isotypic components, and a
    random Hermitian commutant element splits each isotypic into
    irreducible copies, the first of which carries the block.
    """
    table = resolve_group_table(group)
    e, inv = _validate_table(table)
    n = table.shape[0]
    classes = _conjugacy_classes(table, inv)
    L = _left_regular(table)
    rng = np.random.default_rng(seed)

    # Stage 1: isotypic decomposition from the center.
    center_combo = np.zeros((n, n), dtype=complex)
    for cls in classes:
        z = L[cls].sum(axis=0).astype(complex)
        zc = L[[inv[g] for g in cls]].sum(axis=0).astype(complex)
        a, b = rng.normal(size=2)
        center_combo += a * (z + zc) + 1j * b * (z - zc)
    evals, evecs = np.linalg.eigh(center_combo)
    groups = _group_eigenvalues(evals)
    if len(groups) != len(classes):
        raise NumericalAmbiguityError(
            f"isotypic split found {len(groups)} components for {len(classes)} classes"
        )

    # Stage 2: one irreducible copy per isotypic via the commutant.
    coeff = rng.normal(size=n) + 1j * rng.normal(size=n)
    commutant = np.zeros((n, n), dtype=complex)
    for g in range(n):
        r = np.zeros((n, n), dtype=complex)
        r[table[:, g], np.arange(n)] = 1.0
        commutant += coeff[g] * r + np.conj(coeff[g]) * r.conj().T
    blocks = []
    for idx in groups:
        q = evecs[:, idx]
        m2 = q.shape[1]
        dim = int(round(m2 ** 0.5))
        if dim * dim != m2:
            raise NumericalAmbiguityError(
                f"isotypic dimension {m2} is not a perfect square"
            )
        x = q.conj().T @ commutant @ q
        xev, xvec = np.linalg.eigh(x)
        xgroups = _group_eigenvalues(xev)
        first = xgroups[0]
        if len(first) != dim:
            raise NumericalAmbiguityError(
                f"commutant eigenspace has dimension {len(first)}, expected {dim}"
            )
        basis = q @ xvec[:, first]
        rep = np.einsum("pi,gpq,qj->gij", basis.conj(), L, basis)
        blocks.append((dim, rep))

    if sum(d * d for d, _ in blocks) != n:
        raise NumericalAmbiguityError("block dimensions do not satisfy sum d^2 = |G|")

    def sort_key(item):
        dim, rep = item
        chars = tuple(round(float(np.trace(rep[cls[0]]).real), 6) for cls in classes)
        ichars = tuple(round(float(np.trace(rep[cls[0]]).imag), 6) for cls in classes)
        return (dim, chars, ichars)

    blocks.sort(key=sort_key)
    return FiniteGroupAlgebra(
        table=table,
        order=n,
        identity=e,
        inverses=inv,
        classes=tuple(tuple(c) for c in classes),
        algebra=FDAlgebra(tuple(d for d, _ in blocks)),
        irreps=tuple(rep for _, rep in blocks),
        seed=seed,
    )


def _group_eigenvalues(evals: np.ndarray, tol: Optional[float] = None) -> list[list[int]]:
    scale = max(1.0, float(np.max(np.abs(evals))) if evals.size else 1.0)
    if tol is None:
        tol = 1e-7 * scale
    groups: list[list[int]] = [[0]]
    for i in range(1, len(evals)):
        if evals[i] - evals[groups[-1][-1]] <= tol:
            groups[-1].append(i)
        else:
            groups.append([i])
    return groups


def convolve(f: np.ndarray, g: np.ndarray, group: FiniteGroupAlgebra) -> np.ndarray:
    """(f * g)(x) = haar * sum_h f(h) g(h^{-1} x)."""
    table = group.table
    shifted = np.asarray(g, dtype=complex)[table[group.inverses, :]]
    return group.haar_weight * (np.asarray(f, dtype=complex) @ shifted)


def wedderburn_image(f: np.ndarray, group: FiniteGroupAlgebra) -> AlgebraElement:
    """Image of a group function under the block isomorphism."""
    f = np.asarray(f, dtype=complex)
    if f.shape != (group.order,):
        raise ValidationError("group function has the wrong length")
    mats = [
        group.haar_weight * np.einsum("g,gij->ij", f, rep) for rep in group.irreps
    ]
    return AlgebraElement.from_blocks(group.algebra, mats)


def ds_idempotent(group: FiniteGroupAlgebra, block: int, x: Optional[np.ndarray] = None) -> np.ndarray:
    """The idempotent d * conj(matrix coefficient) of one block.

    x is a unit vector in the block's representation space (first
    basis vector by default). The result convolution-squares to itself
    and its block image is a rank-one projector in the chosen block.
    """
    if not 0 <= block < group.algebra.k:
        raise ValidationError("block index out of range")
    rep = group.irreps[block]
    d = group.algebra.blocks[block]
    if x is None:
        x = np.zeros(d, dtype=complex)
        x[0] = 1.0
    x = np.asarray(x, dtype=complex)
    if x.shape != (d,):
        raise ValidationError(f"vector must live in C^{d}")
    if abs(np.linalg.norm(x) - 1.0) > 1e-12:
        raise ValidationError("x must be a unit vector")
    coeff = np.einsum("i,gij,j->g", x.conj(), rep, x)
    return d * np.conj(coeff)


def trace_pairing(x: Union[K0Class, np.ndarray], group: FiniteGroupAlgebra) -> float:
    """The trace f -> f(identity), extended linearly to K0.

    On the class of an idempotent the value is sum rank_i * dim_i; a
    class with a negative component has no idempotent representative
    and is flagged with FormalDifferenceWarning while still computed.
    """
    if isinstance(x, K0Class):
        if len(x.ranks) != group.algebra.k:
            raise ValidationError("class does not match the algebra")
        if any(r < 0 for r in x.ranks):
            warnings.warn(
                "trace of a formal difference (no idempotent representative)",
                FormalDifferenceWarning,
            )
        return float(sum(r * d for r, d in zip(x.ranks, group.algebra.blocks)))
    f = np.asarray(x, dtype=complex)
    if f.shape != (group.order,):
        raise ValidationError("group function has the wrong length")
    val = f[group.identity]
    return float(val.real) if abs(val.imag) < 1e-12 else complex(val)


def spectral_pairing(block: int, x: K0Class) -> int:
    """Component of a K0 class at one block."""
    if not 0 <= block < len(x.ranks):
        raise ValidationError("block index out of range")
    return x.ranks[block]


def group_function_class(f: np.ndarray, group: FiniteGroupAlgebra) -> K0Class:
    """K0 class of an idempotent group function via its block image."""
    return k0_class(wedderburn_image(f, group), group.algebra)
