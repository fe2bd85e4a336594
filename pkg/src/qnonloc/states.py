"""Phase states over tuple supports.

Each support set of size s yields s unnormalized states: member tuples are
enumerated in canonical order, tuple number j gets amplitude omega**(k*j) in
state k, with omega the primitive s-th root of unity.  Squared norm is exactly
s; states of one support are mutually orthogonal by the geometric series, and
states over disjoint supports are orthogonal term by term.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .lattice import Label, SetFamily, TupleSet

DEFAULT_GRAM_TOL = 1e-12


@dataclass(frozen=True)
class DenseState:
    """State vector indexed by mixed-radix rank (position 0 most significant)."""

    radix: tuple[int, ...]
    amplitudes: np.ndarray

    def __post_init__(self):
        if self.amplitudes.ndim != 1 or len(self.amplitudes) != math.prod(self.radix):
            raise ValueError("amplitude length must match the radix product")

    def tensor(self) -> np.ndarray:
        return self.amplitudes.reshape(self.radix)

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))


class PhaseStateSet:
    """The s phase states carried by one support set."""

    def __init__(self, support: TupleSet, label: Label | None = None,
                 bijection: Sequence[int] | None = None):
        if len(support) == 0:
            raise ValueError("support must be nonempty")
        self.support = support
        self.label = label
        s = len(support)
        if bijection is None:
            f = np.arange(s, dtype=np.int64)
        else:
            f = np.asarray(bijection, dtype=np.int64)
            if sorted(f.tolist()) != list(range(s)):
                raise ValueError("bijection must be a permutation of 0..s-1")
        self.bijection = f

    @property
    def s(self) -> int:
        return len(self.support)

    @property
    def radix(self) -> tuple[int, ...]:
        return self.support.radix

    def phases(self, k: int) -> np.ndarray:
        """Amplitudes on the support, canonical tuple order."""
        s = self.s
        if not 0 <= k < s:
            raise ValueError(f"state index {k} out of range for s={s}")
        return np.exp(2j * np.pi * k * self.bijection / s)

    def dense(self, k: int) -> DenseState:
        v = np.zeros(math.prod(self.radix), dtype=np.complex128)
        v[self.support.ranks] = self.phases(k)
        return DenseState(self.radix, v)

    def dense_all(self) -> np.ndarray:
        """(s, D_total) matrix holding every state of the set."""
        out = np.zeros((self.s, math.prod(self.radix)), dtype=np.complex128)
        ks = np.arange(self.s)[:, None]
        out[:, self.support.ranks] = np.exp(2j * np.pi * ks * self.bijection[None, :] / self.s)
        return out

    def __repr__(self) -> str:
        return f"PhaseStateSet(label={self.label!r}, s={self.s})"


def build_state_set(support: TupleSet, label: Label | None = None,
                    bijection: Sequence[int] | None = None) -> PhaseStateSet:
    return PhaseStateSet(support, label=label, bijection=bijection)


def family_states(family: SetFamily) -> list[PhaseStateSet]:
    return [PhaseStateSet(ts, label=l) for l, ts in family.items()]


def symbolic_orthogonality(state_set: PhaseStateSet) -> bool:
    """Exact orthogonality within one set, no floating point.

    For states k != k' the inner product is sum_j omega**(m*f(j)) with
    m = k' - k.  With f a bijection onto Z_s the exponent multiset covers each
    multiple of gcd(m, s) exactly gcd(m, s) times, and the corresponding root
    sums vanish as full geometric series.  Verifies the count profile for
    every m in 1..s-1 by integer arithmetic.
    """
    s = state_set.s
    f = state_set.bijection
    if sorted(f.tolist()) != list(range(s)):
        return False
    for m in range(1, s):
        g = math.gcd(m, s)
        counts = np.bincount((m * f) % s, minlength=s)
        idx = np.arange(s)
        expected = np.where(idx % g == 0, g, 0)
        if not np.array_equal(counts, expected):
            return False
    return True


@dataclass(frozen=True)
class GramReport:
    ok: bool
    structural_overlap: bool
    symbolic_ok: bool
    max_offdiag: float | None
    tol: float | None


def gram_check(state_sets: Sequence[PhaseStateSet], dense: bool = True,
               tol_factor: float = DEFAULT_GRAM_TOL) -> GramReport:
    """Mutual orthogonality of every state across the given sets.

    Exact path: supports must be pairwise disjoint (cross-set inner products
    vanish term by term) and each set must pass the symbolic character-sum
    check.  Overlapping supports are a structural failure, reported before any
    numerics.  With dense=True the full Gram matrix is also formed and its
    off-diagonal maximum compared against tol_factor * max(s).
    """
    if not state_sets:
        raise ValueError("need at least one state set")
    radix = state_sets[0].radix
    if any(ss.radix != radix for ss in state_sets):
        raise ValueError("state sets must share one radix")

    for a, b in itertools.combinations(state_sets, 2):
        if not a.support.isdisjoint(b.support):
            return GramReport(ok=False, structural_overlap=True, symbolic_ok=False,
                              max_offdiag=None, tol=None)

    symbolic_ok = all(symbolic_orthogonality(ss) for ss in state_sets)

    if not dense:
        return GramReport(ok=symbolic_ok, structural_overlap=False,
                          symbolic_ok=symbolic_ok, max_offdiag=None, tol=None)

    V = np.vstack([ss.dense_all() for ss in state_sets])
    gram = V @ V.conj().T
    np.fill_diagonal(gram, 0.0)
    max_off = float(np.abs(gram).max()) if gram.size else 0.0
    tol = tol_factor * max(ss.s for ss in state_sets)
    numeric_ok = max_off <= tol
    return GramReport(ok=symbolic_ok and numeric_ok, structural_overlap=False,
                      symbolic_ok=symbolic_ok, max_offdiag=max_off, tol=tol)


@dataclass(frozen=True)
class Bipartition:
    """Split of parties {0..n-1} into two nonempty groups."""

    left: frozenset[int]
    n_parties: int

    def __post_init__(self):
        object.__setattr__(self, "left", frozenset(self.left))
        if not self.left or not all(0 <= p < self.n_parties for p in self.left):
            raise ValueError("left side must be a nonempty subset of the parties")
        if len(self.left) >= self.n_parties:
            raise ValueError("right side must be nonempty")

    @property
    def right(self) -> frozenset[int]:
        return frozenset(range(self.n_parties)) - self.left

    def __repr__(self) -> str:
        return f"Bipartition({sorted(self.left)}|{sorted(self.right)})"


def iter_bipartitions(n_parties: int) -> list[Bipartition]:
    """One representative per unordered bipartition: party 0 stays on the left."""
    if n_parties < 2:
        raise ValueError("need at least two parties")
    rest = list(range(1, n_parties))
    out = []
    for r in range(len(rest) + 1):
        for extra in itertools.combinations(rest, r):
            left = frozenset({0, *extra})
            if len(left) < n_parties:
                out.append(Bipartition(left, n_parties))
    return out


def schmidt_rank(state: DenseState, cut: Bipartition, tol: float = 1e-9) -> int:
    """Rank of the reshaped amplitude matrix; singular values below
    tol * largest are treated as zero."""
    n = len(state.radix)
    if cut.n_parties != n:
        raise ValueError("cut does not match the state arity")
    left = sorted(cut.left)
    right = sorted(cut.right)
    tensor = state.tensor()
    mat = np.transpose(tensor, left + right).reshape(
        math.prod(state.radix[p] for p in left), -1)
    sv = np.linalg.svd(mat, compute_uv=False)
    if sv.size == 0 or sv[0] == 0.0:
        raise ValueError("zero state has no Schmidt rank")
    return int(np.count_nonzero(sv > tol * sv[0]))


def genuine_entanglement_check(state_sets: Iterable[PhaseStateSet],
                               tol: float = 1e-9) -> bool:
    """True iff every state has Schmidt rank >= 2 across every bipartition."""
    state_sets = list(state_sets)
    if not state_sets:
        raise ValueError("need at least one state set")
    n = len(state_sets[0].radix)
    if n < 2:
        raise ValueError("entanglement needs at least two parties")
    cuts = iter_bipartitions(n)
    for ss in state_sets:
        for k in range(ss.s):
            st = ss.dense(k)
            for cut in cuts:
                if schmidt_rank(st, cut, tol=tol) < 2:
                    return False
    return True
