"""Numerical ground truth: solve for all orthogonality-preserving operators.

For a kept party k, an operator E = I_k (x) Pi acting on the remaining
parties preserves the orthogonality of states a != b iff
sum_{x,y} M[x,y] Pi[x,y] = 0 with M = A_a^H A_b, where A_a is state a
reshaped to d_k rows.  Pi is expanded over the orthonormal Hermitian basis
{E_xx} u {(e_xy + e_yx)/sqrt2} u {i(e_yx - e_xy)/sqrt2}, turning each state
pair into two real-linear rows over D**2 real parameters.  The solution
space always contains the identity; the measurement is trivial exactly when
it contains nothing else.

Rows are processed in batches and only their row space is carried between
batches (an SVD-compressed matrix has the same Gram matrix, hence the same
right singular vectors), so memory stays at O(D**4) regardless of how many
state pairs there are.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from typing import Iterator, Sequence

import numpy as np

from . import caps
from .errors import InternalConsistencyError, ResourceLimitError
from .lattice import Label
from .states import PhaseStateSet

DEFAULT_RANK_TOL = 1e-9
IDENTITY_FEASIBILITY_TOL = 1e-12
ROW_DROP_TOL = 1e-8


@dataclass
class ConstraintSystem:
    """Lazily-batched real-linear constraint rows for one cut."""

    k: int
    d_k: int
    D: int
    radix: tuple[int, ...]
    A: np.ndarray                      # (n_states, d_k, D)
    provenance: list[tuple[Label, int]]
    scales: np.ndarray                 # Frobenius norm of each A_a

    @property
    def n_states(self) -> int:
        return self.A.shape[0]

    @property
    def n_params(self) -> int:
        return self.D * self.D

    @property
    def pair_count(self) -> int:
        n = self.n_states
        return n * (n - 1)

    @property
    def row_count(self) -> int:
        return 2 * self.pair_count

    def iter_row_batches(self, batch_pairs: int = 2000,
                         row_drop_tol: float = ROW_DROP_TOL,
                         ) -> Iterator[tuple[np.ndarray, float]]:
        """Yield (normalized row block, max identity residual of the block).

        Rows whose norm falls below row_drop_tol times the pair scale are
        mathematically zero and dropped; everything else is scaled to unit
        length.  The identity residual is |row . iota| / ||row|| with iota the
        unit identity parameter vector, and must vanish for orthogonal input.
        """
        D = self.D
        pairs = [(a, b) for a in range(self.n_states) for b in range(self.n_states)
                 if a != b]
        iu0, iu1 = np.triu_indices(D, 1)
        diag_idx = np.arange(D)
        inv_sqrt2 = 1.0 / math.sqrt(2.0)
        for start in range(0, len(pairs), batch_pairs):
            chunk = pairs[start:start + batch_pairs]
            ia = np.fromiter((p[0] for p in chunk), dtype=np.int64, count=len(chunk))
            ib = np.fromiter((p[1] for p in chunk), dtype=np.int64, count=len(chunk))
            M = np.einsum("pki,pkj->pij", self.A[ia].conj(), self.A[ib], optimize=True)
            diag = M[:, diag_idx, diag_idx]
            mxy = M[:, iu0, iu1]
            myx = M[:, iu1, iu0]
            c_u = (mxy + myx) * inv_sqrt2
            c_w = 1j * (myx - mxy) * inv_sqrt2
            c = np.concatenate([diag, c_u, c_w], axis=1)
            rows = np.empty((2 * len(chunk), self.n_params), dtype=np.float64)
            rows[0::2] = c.real
            rows[1::2] = c.imag
            # identity component: diag entries sum to tr(M) = <psi_a|psi_b>
            iota_dot = np.abs(np.repeat(diag.sum(axis=1), 2)) / math.sqrt(D)
            norms = np.linalg.norm(rows, axis=1)
            pair_scale = np.repeat(self.scales[ia] * self.scales[ib], 2)
            keep = norms > row_drop_tol * np.maximum(pair_scale, 1e-300)
            if not keep.any():
                continue
            resid = float((iota_dot[keep] / norms[keep]).max()) if keep.any() else 0.0
            yield rows[keep] / norms[keep, None], resid


def assemble_constraints(state_sets: Sequence[PhaseStateSet], k: int,
                         operator_cap: int | None = None) -> ConstraintSystem:
    """Reshape every state with party k in front and record pair provenance."""
    state_sets = list(state_sets)
    if not state_sets:
        raise ValueError("need at least one state set")
    radix = state_sets[0].radix
    if any(ss.radix != radix for ss in state_sets):
        raise ValueError("state sets must share one radix")
    n = len(radix)
    if n < 2:
        raise ValueError("a cut needs at least two parties")
    if not 0 <= k < n:
        raise ValueError(f"cut {k} out of range for arity {n}")
    d_k = radix[k]
    D = math.prod(radix) // d_k
    limit = caps.op_cap(operator_cap)
    if D * D > limit:
        raise ResourceLimitError(
            f"operator space of {D * D} unknowns exceeds operator cap {limit}")

    blocks = []
    provenance: list[tuple[Label, int]] = []
    for ss in state_sets:
        V = ss.dense_all().reshape((ss.s,) + radix)
        blocks.append(np.moveaxis(V, k + 1, 1).reshape(ss.s, d_k, D))
        provenance.extend((ss.label, j) for j in range(ss.s))
    A = np.concatenate(blocks, axis=0)
    scales = np.linalg.norm(A.reshape(A.shape[0], -1), axis=1)
    return ConstraintSystem(k=k, d_k=d_k, D=D, radix=radix, A=A,
                            provenance=provenance, scales=scales)


@dataclass
class NullspaceResult:
    D: int
    dim: int
    rank: int
    basis_params: np.ndarray           # (dim, D**2), orthonormal
    singular_values: np.ndarray        # normalized to the largest
    sv_gap: float
    gap_warning: bool
    identity_residual: float
    rows_total: int
    rows_kept: int

    def basis_operators(self) -> list[np.ndarray]:
        return [params_to_operator(v, self.D) for v in self.basis_params]


def params_to_operator(theta: np.ndarray, D: int) -> np.ndarray:
    """Real parameter vector -> Hermitian D x D matrix."""
    theta = np.asarray(theta, dtype=np.float64)
    if theta.shape != (D * D,):
        raise ValueError(f"expected {D * D} parameters, got {theta.shape}")
    t = D * (D - 1) // 2
    p, u, w = theta[:D], theta[D:D + t], theta[D + t:]
    out = np.zeros((D, D), dtype=np.complex128)
    iu0, iu1 = np.triu_indices(D, 1)
    inv_sqrt2 = 1.0 / math.sqrt(2.0)
    out[iu0, iu1] = (u - 1j * w) * inv_sqrt2
    out[iu1, iu0] = (u + 1j * w) * inv_sqrt2
    out[np.arange(D), np.arange(D)] = p
    return out


def operator_to_params(op: np.ndarray) -> np.ndarray:
    D = op.shape[0]
    if op.shape != (D, D):
        raise ValueError("operator must be square")
    iu0, iu1 = np.triu_indices(D, 1)
    sqrt2 = math.sqrt(2.0)
    p = np.real(np.diag(op))
    u = np.real(op[iu0, iu1] + op[iu1, iu0]) / sqrt2
    w = np.real(1j * (op[iu0, iu1] - op[iu1, iu0])) / sqrt2
    return np.concatenate([p, u, w])


def identity_params(D: int) -> np.ndarray:
    theta = np.zeros(D * D)
    theta[:D] = 1.0
    return theta


def hermitian_nullspace(system: ConstraintSystem, tol: float = DEFAULT_RANK_TOL,
                        batch_pairs: int = 2000,
                        row_drop_tol: float = ROW_DROP_TOL) -> NullspaceResult:
    """Orthonormal basis of the joint nullspace of all constraint rows.

    Batches are folded into a running row-space matrix S (at most D**2 rows):
    stacking S on new rows and keeping sigma * V^T preserves the Gram matrix,
    hence the singular structure of everything seen so far.  Rank is read off
    the final spectrum at the relative threshold tol; a gap between kept and
    discarded singular values below 10 * tol raises the warning flag.
    """
    P = system.n_params
    S = np.empty((0, P))
    identity_residual = 0.0
    rows_kept = 0
    for rows, resid in system.iter_row_batches(batch_pairs=batch_pairs,
                                               row_drop_tol=row_drop_tol):
        identity_residual = max(identity_residual, resid)
        if resid > IDENTITY_FEASIBILITY_TOL:
            raise InternalConsistencyError(
                f"identity violates a constraint (residual {resid:.3e}); "
                "input states are not mutually orthogonal")
        rows_kept += len(rows)
        stacked = np.vstack([S, rows])
        _, sv, vt = np.linalg.svd(stacked, full_matrices=False)
        nz = sv > (sv[0] * 1e-18 if sv.size and sv[0] > 0 else 0.0)
        S = sv[nz, None] * vt[nz]

    if len(S) == 0:
        basis = np.eye(P)
        return NullspaceResult(D=system.D, dim=P, rank=0, basis_params=basis,
                               singular_values=np.zeros(0), sv_gap=math.inf,
                               gap_warning=False, identity_residual=identity_residual,
                               rows_total=system.row_count, rows_kept=0)

    _, sv, vt = np.linalg.svd(S, full_matrices=True)
    sv_norm = sv / sv[0]
    rank = int(np.count_nonzero(sv_norm > tol))
    dim = P - rank
    kept_min = sv_norm[rank - 1]
    disc_max = sv_norm[rank] if rank < len(sv_norm) else 0.0
    gap = float(kept_min - disc_max)
    return NullspaceResult(
        D=system.D, dim=dim, rank=rank, basis_params=vt[rank:],
        singular_values=sv_norm, sv_gap=gap, gap_warning=gap < 10 * tol,
        identity_residual=identity_residual,
        rows_total=system.row_count, rows_kept=rows_kept)


@dataclass(frozen=True)
class TrivialityVerdict:
    status: str                        # "trivial" | "nontrivial"
    dim: int
    identity_distance: float | None = None
    witness: np.ndarray | None = None  # Hermitian, traceless, unit Frobenius norm


def triviality_verdict(ns: NullspaceResult, tol: float = DEFAULT_RANK_TOL) -> TrivialityVerdict:
    """Classify the solution space.

    Dimension 0 is impossible for orthogonal input (the identity always
    solves), and a one-dimensional space can only be the identity line; both
    violations raise.  Dimension >= 2 always yields a traceless witness
    because the identity lies inside the space.
    """
    D = ns.D
    if ns.dim == 0:
        raise InternalConsistencyError(
            "solution space is empty, yet the identity always solves; "
            "input states cannot have been orthogonal")
    if ns.dim == 1:
        B = params_to_operator(ns.basis_params[0], D)
        dist = float(np.linalg.norm(B - (np.trace(B) / D) * np.eye(D)))
        rel = dist / float(np.linalg.norm(B))
        if rel > tol:
            raise InternalConsistencyError(
                f"one-dimensional solution space is not the identity line "
                f"(relative off-identity {rel:.3e})")
        return TrivialityVerdict(status="trivial", dim=1, identity_distance=rel)

    best = None
    best_norm = -1.0
    for v in ns.basis_params:
        B = params_to_operator(v, D)
        W = B - (np.trace(B) / D) * np.eye(D)
        w_norm = float(np.linalg.norm(W))
        if w_norm > best_norm:
            best, best_norm = W, w_norm
    if best is None or best_norm <= tol:
        raise InternalConsistencyError(
            "multi-dimensional solution space collapsed onto the identity line")
    return TrivialityVerdict(status="nontrivial", dim=ns.dim,
                             identity_distance=None, witness=best / best_norm)


@dataclass
class OracleReport:
    k: int
    D: int
    rows: int
    nullspace_dim: int
    verdict: str
    sv_gap: float
    gap_warning: bool
    identity_residual: float
    identity_distance: float | None = None
    witness: np.ndarray | None = None
    elapsed: float = 0.0
    notes: list[str] = field(default_factory=list)


def oracle_verify(state_sets: Sequence[PhaseStateSet], cuts: list[int] | None = None,
                  tol: float = DEFAULT_RANK_TOL, operator_cap: int | None = None,
                  batch_pairs: int = 2000) -> list[OracleReport]:
    """Numerically decide triviality of every requested cut."""
    state_sets = list(state_sets)
    if not state_sets:
        raise ValueError("need at least one state set")
    n = len(state_sets[0].radix)
    if cuts is None:
        cuts = list(range(n))
    reports = []
    for k in cuts:
        t0 = time.perf_counter()
        system = assemble_constraints(state_sets, k, operator_cap=operator_cap)
        ns = hermitian_nullspace(system, tol=tol, batch_pairs=batch_pairs)
        verdict = triviality_verdict(ns, tol=tol)
        reports.append(OracleReport(
            k=k, D=system.D, rows=system.row_count, nullspace_dim=ns.dim,
            verdict=verdict.status, sv_gap=ns.sv_gap, gap_warning=ns.gap_warning,
            identity_residual=ns.identity_residual,
            identity_distance=verdict.identity_distance,
            witness=verdict.witness, elapsed=time.perf_counter() - t0))
    return reports


def oracle_overall(reports: Sequence[OracleReport]) -> str:
    return "trivial" if all(r.verdict == "trivial" for r in reports) else "nontrivial"
