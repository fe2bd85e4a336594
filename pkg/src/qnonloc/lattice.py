"""Digit-tuple lattices and the recursive circulant set families.

Tuples over Z_{d_1} x ... x Z_{d_N} are stored by their mixed-radix rank
(position 0 most significant), which keeps set algebra, membership and
serialization order all on sorted int64 vectors.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

import numpy as np

from . import caps
from .errors import InadmissibleXiError, InternalConsistencyError, ResourceLimitError

EXTRA_LABEL = "extra"

Label = int | str
Tuple_ = tuple[int, ...]

_RANK_LIMIT = 2**62  # total cube size must stay indexable in int64


def _check_radix(radix: Sequence[int]) -> tuple[int, ...]:
    radix = tuple(int(d) for d in radix)
    if len(radix) == 0:
        raise ValueError("radix must have at least one position")
    if any(d < 1 for d in radix):
        raise ValueError(f"radix entries must be >= 1, got {radix}")
    if math.prod(radix) > _RANK_LIMIT:
        raise ValueError("radix product too large to index")
    return radix


def _weights(radix: Sequence[int]) -> np.ndarray:
    w = np.empty(len(radix), dtype=np.int64)
    acc = 1
    for p in range(len(radix) - 1, -1, -1):
        w[p] = acc
        acc *= radix[p]
    return w


def _decode(ranks: np.ndarray, radix: Sequence[int]) -> np.ndarray:
    """Rank vector -> digit matrix, one row per tuple."""
    w = _weights(radix)
    out = np.empty((len(ranks), len(radix)), dtype=np.int64)
    rem = ranks.astype(np.int64, copy=True)
    for p in range(len(radix)):
        out[:, p] = rem // w[p]
        rem -= out[:, p] * w[p]
    return out


def _encode(digits: np.ndarray, radix: Sequence[int]) -> np.ndarray:
    return digits.astype(np.int64) @ _weights(radix)


class TupleSet:
    """Immutable set of same-radix digit tuples in canonical (lexicographic) order."""

    __slots__ = ("radix", "ranks")

    def __init__(self, radix: Sequence[int], ranks: np.ndarray):
        self.radix = _check_radix(radix)
        ranks = np.asarray(ranks, dtype=np.int64)
        if ranks.ndim != 1:
            raise ValueError("ranks must be a 1-d array")
        total = math.prod(self.radix)
        if len(ranks) and (ranks.min() < 0 or ranks.max() >= total):
            raise ValueError("rank out of range for radix")
        ranks = np.unique(ranks)
        ranks.setflags(write=False)
        self.ranks = ranks

    # ---- constructors -------------------------------------------------

    @classmethod
    def from_tuples(cls, radix: Sequence[int], tuples: Iterable[Sequence[int]]) -> "TupleSet":
        radix = _check_radix(radix)
        rows = [tuple(int(x) for x in t) for t in tuples]
        if not rows:
            return cls(radix, np.empty(0, dtype=np.int64))
        mat = np.asarray(rows, dtype=np.int64)
        if mat.shape[1] != len(radix):
            raise ValueError(f"tuples have arity {mat.shape[1]}, radix has {len(radix)}")
        for p, d in enumerate(radix):
            if (mat[:, p] < 0).any() or (mat[:, p] >= d).any():
                raise ValueError(f"digit out of range at position {p} (radix {d})")
        return cls(radix, _encode(mat, radix))

    @classmethod
    def full_cube(cls, radix: Sequence[int], cap: int | None = None) -> "TupleSet":
        radix = _check_radix(radix)
        total = math.prod(radix)
        limit = caps.enum_cap(cap)
        if total > limit:
            raise ResourceLimitError(f"cube of {total} tuples exceeds enumeration cap {limit}")
        return cls(radix, np.arange(total, dtype=np.int64))

    # ---- basic protocol -----------------------------------------------

    def __len__(self) -> int:
        return len(self.ranks)

    def __iter__(self) -> Iterator[Tuple_]:
        for row in self.members():
            yield tuple(int(x) for x in row)

    def __contains__(self, item: Sequence[int]) -> bool:
        t = tuple(int(x) for x in item)
        if len(t) != len(self.radix):
            return False
        if any(x < 0 or x >= d for x, d in zip(t, self.radix)):
            return False
        r = _encode(np.asarray([t], dtype=np.int64), self.radix)[0]
        i = np.searchsorted(self.ranks, r)
        return i < len(self.ranks) and self.ranks[i] == r

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TupleSet):
            return NotImplemented
        return self.radix == other.radix and np.array_equal(self.ranks, other.ranks)

    def __hash__(self) -> int:
        return hash((self.radix, self.ranks.tobytes()))

    def __repr__(self) -> str:
        return f"TupleSet(radix={self.radix}, size={len(self)})"

    def members(self) -> np.ndarray:
        """Digit matrix in canonical order (rows sorted lexicographically)."""
        return _decode(self.ranks, self.radix)

    def tuples(self) -> list[Tuple_]:
        return list(self)

    # ---- set algebra ----------------------------------------------------

    def _same_radix(self, other: "TupleSet") -> None:
        if self.radix != other.radix:
            raise ValueError(f"radix mismatch: {self.radix} vs {other.radix}")

    def union(self, other: "TupleSet") -> "TupleSet":
        self._same_radix(other)
        return TupleSet(self.radix, np.union1d(self.ranks, other.ranks))

    def intersection(self, other: "TupleSet") -> "TupleSet":
        self._same_radix(other)
        return TupleSet(self.radix, np.intersect1d(self.ranks, other.ranks, assume_unique=True))

    def difference(self, other: "TupleSet") -> "TupleSet":
        self._same_radix(other)
        return TupleSet(self.radix, np.setdiff1d(self.ranks, other.ranks, assume_unique=True))

    def issubset(self, other: "TupleSet") -> bool:
        self._same_radix(other)
        return len(np.setdiff1d(self.ranks, other.ranks, assume_unique=True)) == 0

    def isdisjoint(self, other: "TupleSet") -> bool:
        self._same_radix(other)
        return len(np.intersect1d(self.ranks, other.ranks, assume_unique=True)) == 0

    def drop_position(self, k: int) -> "TupleSet":
        """Project out position k.  Distinct tuples must stay distinct."""
        n = len(self.radix)
        if not 0 <= k < n:
            raise ValueError(f"position {k} out of range for arity {n}")
        if n == 1:
            if len(self.ranks) > 1:
                raise ValueError("projection would collapse distinct tuples")
            return TupleSet((1,), np.zeros(len(self.ranks), dtype=np.int64))
        digits = np.delete(self.members(), k, axis=1)
        reduced = self.radix[:k] + self.radix[k + 1:]
        ranks = _encode(digits, reduced)
        if len(np.unique(ranks)) != len(ranks):
            raise ValueError("projection would collapse distinct tuples")
        return TupleSet(reduced, ranks)


class SetFamily:
    """Labeled collection of pairwise-disjoint TupleSets over one radix.

    Label order is canonical: integer labels ascending, then string labels.
    """

    def __init__(self, radix: Sequence[int], sets: dict[Label, TupleSet],
                 check_disjoint: bool = True):
        self.radix = _check_radix(radix)
        if not sets:
            raise ValueError("family must contain at least one set")
        ordered: dict[Label, TupleSet] = {}
        int_labels = sorted(l for l in sets if isinstance(l, int))
        str_labels = sorted(l for l in sets if isinstance(l, str))
        for l in int_labels + str_labels:
            ts = sets[l]
            if ts.radix != self.radix:
                raise ValueError(f"set {l!r} has radix {ts.radix}, family has {self.radix}")
            ordered[l] = ts
        self._sets = ordered
        if check_disjoint:
            cat = np.concatenate([ts.ranks for ts in ordered.values()])
            if len(np.unique(cat)) != len(cat):
                raise ValueError("member sets are not pairwise disjoint")

    @property
    def labels(self) -> list[Label]:
        return list(self._sets)

    def __getitem__(self, label: Label) -> TupleSet:
        return self._sets[label]

    def __contains__(self, label: Label) -> bool:
        return label in self._sets

    def __len__(self) -> int:
        return len(self._sets)

    def items(self):
        return self._sets.items()

    def sets(self) -> list[TupleSet]:
        return list(self._sets.values())

    def total_size(self) -> int:
        return sum(len(ts) for ts in self._sets.values())

    def union_ranks(self) -> np.ndarray:
        return np.unique(np.concatenate([ts.ranks for ts in self._sets.values()]))

    def drop(self, label: Label) -> "SetFamily":
        """Family with one labeled set removed."""
        if label not in self._sets:
            raise KeyError(label)
        remaining = {l: ts for l, ts in self._sets.items() if l != label}
        return SetFamily(self.radix, remaining, check_disjoint=False)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SetFamily):
            return NotImplemented
        return self.radix == other.radix and self._sets == other._sets

    def __repr__(self) -> str:
        return f"SetFamily(radix={self.radix}, labels={self.labels})"


@dataclass(frozen=True)
class CirculantMatrix:
    """d x d matrix with entry (i, j) = (i - j) mod d; first row [0, d-1, ..., 1]."""

    order: int

    def __post_init__(self):
        if self.order < 1:
            raise ValueError("order must be positive")

    def entry(self, i: int, j: int) -> int:
        d = self.order
        if not (0 <= i < d and 0 <= j < d):
            raise ValueError("index out of range")
        return (i - j) % d

    def row(self, i: int) -> list[int]:
        return [(i - j) % self.order for j in range(self.order)]

    @property
    def first_row(self) -> list[int]:
        return self.row(0)

    def as_array(self) -> np.ndarray:
        d = self.order
        i, j = np.indices((d, d))
        return (i - j) % d


# ====================================================================
# recursive family construction
# ====================================================================

def build_index_family(d: int, n: int, cap: int | None = None) -> SetFamily:
    """The d sets of n-digit tuples generated by the circulant recursion.

    Level 1 puts digit i in set i; level n prepends digit (i - j) mod d to every
    level n-1 tuple of set j.  The result partitions the full cube Z_d**n.
    """
    if d < 2:
        raise ValueError("d must be >= 2")
    if n < 1:
        raise ValueError("n must be >= 1")
    total = d**n
    limit = caps.enum_cap(cap)
    if total > limit:
        raise ResourceLimitError(f"{total} tuples exceed enumeration cap {limit}")

    level = [np.array([i], dtype=np.int64) for i in range(d)]
    for m in range(2, n + 1):
        block = d ** (m - 1)
        level = [
            np.sort(np.concatenate([((i - j) % d) * block + level[j] for j in range(d)]))
            for i in range(d)
        ]
    radix = (d,) * n
    return SetFamily(radix, {i: TupleSet(radix, level[i]) for i in range(d)},
                     check_disjoint=False)


def verify_partition(family: SetFamily) -> bool:
    """True iff the member sets are pairwise disjoint and cover the full cube."""
    cat = np.concatenate([ts.ranks for ts in family.sets()])
    total = math.prod(family.radix)
    if len(cat) != total:
        return False
    uniq = np.unique(cat)
    return len(uniq) == total and uniq[0] == 0 and uniq[-1] == total - 1


def verify_permutation_invariance(tset: TupleSet) -> bool:
    """True iff the set is invariant under every transposition of positions.

    Adjacent transpositions generate the full symmetric group, so only those
    are checked.  Requires a uniform radix.
    """
    radix = tset.radix
    if len(set(radix)) != 1:
        raise ValueError("permutation invariance needs a uniform radix")
    n = len(radix)
    if n == 1 or len(tset) == 0:
        return True
    digits = tset.members()
    for p in range(n - 1):
        swapped = digits.copy()
        swapped[:, [p, p + 1]] = swapped[:, [p + 1, p]]
        ranks = np.sort(_encode(swapped, radix))
        if not np.array_equal(ranks, tset.ranks):
            return False
    return True


def verify_shift_relation(fam_n: SetFamily, fam_n1: SetFamily) -> bool:
    """Check the one-level recursion between families of arity n and n-1.

    Set i at arity n must equal the union over j of {(i - j) mod d} x (set j at
    arity n-1), and the same must hold after cyclically shifting both label
    vectors by any amount.
    """
    radix_n, radix_n1 = fam_n.radix, fam_n1.radix
    if len(set(radix_n)) != 1 or len(set(radix_n1)) != 1 or radix_n[0] != radix_n1[0]:
        raise ValueError("both families must share one uniform radix")
    d = radix_n[0]
    if len(radix_n) != len(radix_n1) + 1:
        raise ValueError("arities must differ by exactly one")
    if fam_n.labels != list(range(d)) or fam_n1.labels != list(range(d)):
        raise ValueError("families must carry labels 0..d-1")
    block = d ** len(radix_n1)
    for shift in range(d):
        for i in range(d):
            parts = [((i - j) % d) * block + fam_n1[(j - shift) % d].ranks for j in range(d)]
            built = np.sort(np.concatenate(parts))
            if not np.array_equal(built, fam_n[(i - shift) % d].ranks):
                return False
    return True


# ====================================================================
# label selection and the modified construction
# ====================================================================

def cyclic_distance(i1: int, i2: int, d: int) -> int:
    if d < 1:
        raise ValueError("d must be positive")
    if not (0 <= i1 < d and 0 <= i2 < d):
        raise ValueError("labels must lie in Z_d")
    delta = abs(i1 - i2)
    return min(delta, d - delta)


@dataclass(frozen=True)
class RowSelection:
    """Kept labels for the modified construction.

    odd_labels holds the odd labels strictly between 0 and floor(d/2);
    anchor_labels is {0, floor(d/2)}.  Their pairwise cyclic distances cover
    every value in [1, floor(d/2)].  The stated guarantee needs d >= 4;
    smaller d still works out but is flagged.
    """

    d: int
    odd_labels: frozenset[int]
    anchor_labels: frozenset[int]
    beyond_guarantee: bool = False

    @property
    def kept(self) -> list[int]:
        return sorted(self.odd_labels | self.anchor_labels)


def select_rows(d: int) -> RowSelection:
    if d < 2:
        raise ValueError("d must be >= 2")
    half = d // 2
    odd = frozenset(t for t in range(1, half) if t % 2 == 1)
    anchors = frozenset({0, half})
    kept = sorted(odd | anchors)
    dists = {cyclic_distance(a, b, d) for a in kept for b in kept if a != b}
    if dists != set(range(1, half + 1)):
        raise InternalConsistencyError(
            f"kept labels {kept} miss cyclic distances {set(range(1, half + 1)) - dists} for d={d}")
    return RowSelection(d=d, odd_labels=odd, anchor_labels=anchors,
                        beyond_guarantee=d < 4)


def residue_class(n: int, d: int) -> int:
    if n < 1 or d < 2:
        raise ValueError("need n >= 1 and d >= 2")
    return n % d


def element_order(a: int, d: int) -> int:
    """Additive order of a in Z_d."""
    if d < 1 or not 0 <= a < d:
        raise ValueError("need 0 <= a < d")
    return d // math.gcd(a, d)


def diagonal_home(xi: int, n: int, d: int) -> int:
    """Label of the set containing the constant tuple (xi, ..., xi) of arity n."""
    if d < 2 or not 0 <= xi < d:
        raise ValueError("need 0 <= xi < d")
    if n < 1:
        raise ValueError("n must be >= 1")
    return (xi * (n % d)) % d


def _mod_inverse(a: int, d: int) -> int:
    g, x, _ = _egcd(a % d, d)
    if g != 1:
        raise ValueError(f"{a} has no inverse mod {d}")
    return x % d


def _egcd(a: int, b: int) -> tuple[int, int, int]:
    if a == 0:
        return b, 0, 1
    g, x, y = _egcd(b % a, a)
    return g, y - (b // a) * x, x


def choose_xi(d: int, n: int, strategy: int | str = "smallest") -> int:
    """Pick the second removed diagonal digit.

    A nonzero digit xi is admissible when its diagonal home is a kept label.
    "smallest" returns the least admissible digit.  "structured" reproduces the
    case split on a = n mod d: a = 0 takes the smallest digit (home 0);
    gcd(a, d) = 1 solves xi * a = floor(d/2) mod d; otherwise xi = d / gcd(a, d)
    lands on home 0.  An integer is validated and returned as-is.
    """
    if d < 2 or n < 1:
        raise ValueError("need d >= 2 and n >= 1")
    sel = select_rows(d)
    kept = set(sel.kept)

    def admissible(x: int) -> bool:
        return x != 0 and diagonal_home(x, n, d) in kept

    if isinstance(strategy, int) and not isinstance(strategy, bool):
        if not 0 <= strategy < d:
            raise InadmissibleXiError(f"xi={strategy} outside Z_{d}")
        if not admissible(strategy):
            raise InadmissibleXiError(
                f"xi={strategy} maps to label {diagonal_home(strategy, n, d)}, "
                f"which is not kept (kept: {sorted(kept)})")
        return strategy

    if strategy == "smallest":
        for x in range(1, d):
            if admissible(x):
                return x
        raise InadmissibleXiError(f"no admissible xi for d={d}, n={n}")

    if strategy == "structured":
        a = n % d
        if a == 0:
            x = 1  # every nonzero digit has home 0
        elif math.gcd(a, d) == 1:
            x = ((d // 2) * _mod_inverse(a, d)) % d
        else:
            x = d // math.gcd(a, d)
        if not admissible(x):
            raise InternalConsistencyError(
                f"structured choice xi={x} inadmissible for d={d}, n={n}")
        return x

    raise ValueError(f"unknown strategy {strategy!r}")


@dataclass
class ModifiedFamily:
    """Construction output: kept recursive sets with two diagonal tuples rehomed.

    The all-zeros tuple leaves set 0 and the all-xi tuple leaves its home set;
    both land in a fresh set under the label "extra".
    """

    family: SetFamily
    d: int
    n: int
    xi: int
    case: str
    removed: list[tuple[Label, Tuple_]] = field(default_factory=list)
    beyond_guarantee: bool = False

    @property
    def labels(self) -> list[Label]:
        return self.family.labels

    def __getitem__(self, label: Label) -> TupleSet:
        return self.family[label]

    def total_size(self) -> int:
        return self.family.total_size()


def _case_tag(a: int, d: int) -> str:
    if a == 0:
        return "I"
    if math.gcd(a, d) == 1:
        return "II"
    return "III"


def build_modified_family(d: int, n: int, xi: int | str | None = None,
                          cap: int | None = None) -> ModifiedFamily:
    """Kept-label family with the two constant tuples moved to an extra set."""
    if d < 2:
        raise ValueError("d must be >= 2")
    if n < 3:
        raise ValueError("n must be >= 3")
    sel = select_rows(d)
    chosen = choose_xi(d, n, "smallest" if xi is None else xi)
    base = build_index_family(d, n, cap=cap)
    radix = (d,) * n

    zero_diag = (0,) * n
    xi_diag = (chosen,) * n
    home = diagonal_home(chosen, n, d)
    if home not in sel.kept:
        raise InternalConsistencyError("chosen xi landed outside kept labels")

    diag_sets: dict[int, list[Tuple_]] = {0: [zero_diag]}
    diag_sets.setdefault(home, []).append(xi_diag)

    sets: dict[Label, TupleSet] = {}
    removed: list[tuple[Label, Tuple_]] = []
    for t in sel.kept:
        ts = base[t]
        for diag in diag_sets.get(t, []):
            if diag not in ts:
                raise InternalConsistencyError(f"{diag} missing from its home set {t}")
            ts = ts.difference(TupleSet.from_tuples(radix, [diag]))
            removed.append((t, diag))
        sets[t] = ts
    sets[EXTRA_LABEL] = TupleSet.from_tuples(radix, [zero_diag, xi_diag])

    family = SetFamily(radix, sets, check_disjoint=False)
    expected = construction_size(d, n)
    if family.total_size() != expected:
        raise InternalConsistencyError(
            f"built {family.total_size()} tuples, size formula says {expected}")
    return ModifiedFamily(family=family, d=d, n=n, xi=chosen,
                          case=_case_tag(n % d, d), removed=removed,
                          beyond_guarantee=sel.beyond_guarantee)


def construction_size(d: int, n: int) -> int:
    """Total tuple count of the modified construction: (|kept| + 1) * d**(n-1) ... expanded."""
    if d < 2 or n < 1:
        raise ValueError("need d >= 2 and n >= 1")
    half = d // 2
    if half % 2 == 1:
        blocks = (half + 1) // 2 + 1
    else:
        blocks = half // 2 + 2
    return blocks * d ** (n - 1)


@dataclass(frozen=True)
class ReferenceSizes:
    """Published comparison sizes for orthogonal genuinely entangled sets.

    The d3_* fields describe constructions specific to d = 3 and are
    informational for other d (see d3_applicable).
    """

    d: int
    n: int
    li_oges: int
    lower_bound: int
    d3_case1: int
    d3_minimum: int
    d3_applicable: bool


def reference_sizes(d: int, n: int) -> ReferenceSizes:
    if d < 2 or n < 1:
        raise ValueError("need d >= 2 and n >= 1")
    return ReferenceSizes(
        d=d, n=n,
        li_oges=d**n - (d - 1) ** n + 1,
        lower_bound=d ** (n - 1) + 1,
        d3_case1=3**n - 2**n,
        d3_minimum=2 * 3 ** (n - 1),
        d3_applicable=(d == 3),
    )
