"""Finite-dimensional quantum dynamics and spectral equilibration bounds.

Hamiltonians are handled through their spectral data (hbar = 1 throughout):
evolution multiplies energy-basis matrix elements by gap phases, the
equilibrium state is the dephasing across energy eigenspaces, and the
analytic bound on average distinguishability is controlled by two spectral
quantities, the effective dimension of the state and the largest number of
coinciding energy gaps.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

import numpy as np

from .core import (
    DimensionError,
    DomainError,
    OutcomeDistribution,
    TimeAverageConfig,
    TrajectoryProbe,
)

HERMITIAN_TOL = 1e-10
PSD_TOL = 1e-10
TRACE_TOL = 1e-9
UNITARY_TOL = 1e-9
PURITY_TOL = 1e-9

# Relative factor applied to the spectral range to decide when two
# eigenvalues, or two gaps, count as equal. Exposed because both the
# eigenspace structure and the gap degeneracy are discontinuous in it.
DEGENERACY_REL_TOL = 1e-9
GAP_REL_TOL = 1e-9


def _as_square_complex(matrix, what: str) -> np.ndarray:
    arr = np.asarray(matrix, dtype=complex)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise DimensionError(f"{what} must be a square matrix, got shape {arr.shape}")
    return arr


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Quantum state: Hermitian, unit-trace, positive semidefinite matrix."""

    matrix: np.ndarray

    def __init__(self, matrix):
        arr = _as_square_complex(matrix, "a density matrix")
        if np.abs(arr - arr.conj().T).max() > HERMITIAN_TOL:
            raise DomainError("density matrix is not Hermitian")
        tr = complex(np.trace(arr))
        if abs(tr - 1.0) > TRACE_TOL:
            raise DomainError(f"density matrix has trace {tr!r}, expected 1")
        if np.linalg.eigvalsh(arr).min() < -PSD_TOL:
            raise DomainError("density matrix has a negative eigenvalue")
        arr = arr.copy()
        arr.setflags(write=False)
        object.__setattr__(self, "matrix", arr)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @property
    def purity(self) -> float:
        return float(np.real(np.trace(self.matrix @ self.matrix)))

    @property
    def is_pure(self) -> bool:
        return abs(self.purity - 1.0) <= PURITY_TOL

    @staticmethod
    def from_vector(psi: Sequence[complex] | np.ndarray) -> "DensityMatrix":
        v = np.asarray(psi, dtype=complex).reshape(-1)
        norm = np.linalg.norm(v)
        if norm == 0:
            raise DomainError("cannot build a state from the zero vector")
        v = v / norm
        return DensityMatrix(np.outer(v, v.conj()))


@dataclass(frozen=True, eq=False)
class POVM:
    """Measurement: positive operators summing to the identity."""

    elements: tuple[np.ndarray, ...]

    def __init__(self, elements: Sequence):
        if len(elements) == 0:
            raise DomainError("a measurement needs at least one element")
        mats = []
        dim = None
        for k, el in enumerate(elements):
            arr = _as_square_complex(el, f"measurement element {k}")
            if dim is None:
                dim = arr.shape[0]
            elif arr.shape[0] != dim:
                raise DimensionError("measurement elements have mixed dimensions")
            if np.abs(arr - arr.conj().T).max() > HERMITIAN_TOL:
                raise DomainError(f"measurement element {k} is not Hermitian")
            if np.linalg.eigvalsh(arr).min() < -PSD_TOL:
                raise DomainError(f"measurement element {k} is not positive semidefinite")
            arr = arr.copy()
            arr.setflags(write=False)
            mats.append(arr)
        total = sum(mats)
        if np.abs(total - np.eye(dim)).max() > TRACE_TOL:
            raise DomainError("measurement elements do not sum to the identity")
        object.__setattr__(self, "elements", tuple(mats))

    @property
    def outcome_count(self) -> int:
        return len(self.elements)

    @property
    def dim(self) -> int:
        return self.elements[0].shape[0]

    def probabilities(self, rho: DensityMatrix) -> OutcomeDistribution:
        if rho.dim != self.dim:
            raise DimensionError(f"state is {rho.dim}-d, measurement is {self.dim}-d")
        p = [float(np.real(np.trace(m @ rho.matrix))) for m in self.elements]
        return OutcomeDistribution(p)


def _group_close(values: np.ndarray, tol: float) -> list[list[int]]:
    """Group indices of ascending ``values`` whose consecutive spacing is < tol."""
    groups: list[list[int]] = [[0]]
    for k in range(1, values.size):
        if values[k] - values[k - 1] < tol:
            groups[-1].append(k)
        else:
            groups.append([k])
    return groups


@dataclass(frozen=True, eq=False)
class HamiltonianSpectrum:
    """Spectral data of a Hamiltonian: ascending eigenvalues, a unitary of
    eigenvector columns, and the grouping of indices into degenerate
    eigenspaces at the construction tolerance."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    eigenspaces: tuple[tuple[int, ...], ...]

    def __init__(self, eigenvalues, eigenvectors=None, degeneracy_tol: float | None = None):
        vals = np.asarray(eigenvalues, dtype=float).reshape(-1)
        if vals.size < 1 or not np.all(np.isfinite(vals)):
            raise DomainError("need a nonempty list of finite eigenvalues")
        if np.any(np.diff(vals) < 0):
            raise DomainError("eigenvalues must be ascending")
        d = vals.size
        if eigenvectors is None:
            vecs = np.eye(d, dtype=complex)
        else:
            vecs = _as_square_complex(eigenvectors, "the eigenvector matrix")
            if vecs.shape[0] != d:
                raise DimensionError("eigenvector matrix does not match the eigenvalues")
            if np.abs(vecs.conj().T @ vecs - np.eye(d)).max() > UNITARY_TOL:
                raise DomainError("eigenvector columns are not orthonormal")
        spread = float(vals[-1] - vals[0])
        if degeneracy_tol is None:
            degeneracy_tol = DEGENERACY_REL_TOL * spread
        if spread == 0.0:
            groups = [list(range(d))]
        else:
            groups = _group_close(vals, degeneracy_tol)
            for g in groups:
                if vals[g[-1]] - vals[g[0]] >= degeneracy_tol > 0:
                    raise DomainError(
                        "eigenvalue clustering is ambiguous at this tolerance "
                        f"(chained spread {vals[g[-1]] - vals[g[0]]:.3e})"
                    )
        vals = vals.copy()
        vals.setflags(write=False)
        vecs = vecs.copy()
        vecs.setflags(write=False)
        object.__setattr__(self, "eigenvalues", vals)
        object.__setattr__(self, "eigenvectors", vecs)
        object.__setattr__(self, "eigenspaces", tuple(tuple(g) for g in groups))

    @staticmethod
    def from_matrix(hamiltonian, degeneracy_tol: float | None = None) -> "HamiltonianSpectrum":
        arr = _as_square_complex(hamiltonian, "a Hamiltonian")
        if np.abs(arr - arr.conj().T).max() > HERMITIAN_TOL:
            raise DomainError("Hamiltonian is not Hermitian")
        vals, vecs = np.linalg.eigh(arr)
        return HamiltonianSpectrum(vals, vecs, degeneracy_tol)

    @property
    def dim(self) -> int:
        return self.eigenvalues.size

    @property
    def eigenspace_count(self) -> int:
        return len(self.eigenspaces)

    @cached_property
    def eigenspace_energies(self) -> np.ndarray:
        """Representative (mean) energy per eigenspace, ascending."""
        return np.array([self.eigenvalues[list(g)].mean() for g in self.eigenspaces])

    @cached_property
    def space_of_index(self) -> np.ndarray:
        labels = np.empty(self.dim, dtype=np.int64)
        for s, group in enumerate(self.eigenspaces):
            labels[list(group)] = s
        return labels

    @property
    def spectral_range(self) -> float:
        return float(self.eigenvalues[-1] - self.eigenvalues[0])

    def to_energy_basis(self, matrix: np.ndarray) -> np.ndarray:
        return self.eigenvectors.conj().T @ matrix @ self.eigenvectors

    def from_energy_basis(self, matrix: np.ndarray) -> np.ndarray:
        return self.eigenvectors @ matrix @ self.eigenvectors.conj().T

    def minimum_gap(self) -> float:
        """Smallest energy difference between distinct eigenspaces (0 if none)."""
        if self.eigenspace_count < 2:
            return 0.0
        return float(np.diff(self.eigenspace_energies).min())


@dataclass(frozen=True, eq=False)
class GapTable:
    """All ordered energy gaps between distinct eigenspaces, clustered into
    equal-gap classes at ``tolerance``.

    ``pairs[k]`` is the eigenspace index pair (n, j) of gap ``values[k]``;
    ``classes`` holds index tuples into those arrays. Antisymmetry is built
    in: every (n, j) appears along with (j, n) carrying the opposite value.
    """

    pairs: tuple[tuple[int, int], ...]
    values: np.ndarray
    classes: tuple[tuple[int, ...], ...]
    tolerance: float

    @property
    def max_degeneracy(self) -> int:
        if not self.classes:
            return 1
        return max(len(c) for c in self.classes)


def gap_table(spectrum: HamiltonianSpectrum, gap_tol: float | None = None) -> GapTable:
    """Enumerate and cluster the energy gaps of a spectrum.

    Gaps are taken between distinct eigenspaces only: degenerate levels
    contribute one gap per eigenspace pair, and the zero gaps internal to an
    eigenspace are excluded. Two gaps belong to the same class when they
    differ by less than ``gap_tol`` (default: GAP_REL_TOL times the spectral
    range).
    """
    if gap_tol is None:
        gap_tol = GAP_REL_TOL * spectrum.spectral_range
    energies = spectrum.eigenspace_energies
    s = energies.size
    pairs = [(n, j) for n in range(s) for j in range(s) if n != j]
    if not pairs:
        return GapTable(pairs=(), values=np.empty(0), classes=(), tolerance=float(gap_tol))
    values = np.array([energies[n] - energies[j] for n, j in pairs])
    order = np.argsort(values, kind="stable")
    groups = _group_close(values[order], gap_tol) if gap_tol > 0 else [[k] for k in range(len(pairs))]
    classes = tuple(tuple(int(order[k]) for k in g) for g in groups)
    values = values.copy()
    values.setflags(write=False)
    return GapTable(
        pairs=tuple(pairs), values=values, classes=classes, tolerance=float(gap_tol)
    )


def max_gap_degeneracy(spectrum: HamiltonianSpectrum, gap_tol: float | None = None) -> int:
    """Largest number of ordered eigenspace pairs sharing one gap value.

    A spectrum with fewer than two eigenspaces has no gaps; by convention the
    degeneracy is then 1 (the resulting bound is vacuous and callers should
    flag it).
    """
    if spectrum.eigenspace_count < 2:
        return 1
    return gap_table(spectrum, gap_tol).max_degeneracy


def evolve_density(rho: DensityMatrix, spectrum: HamiltonianSpectrum, t: float) -> DensityMatrix:
    """Unitary evolution for time ``t``: energy-basis element (n, j) picks up
    the phase exp(-i (E_n - E_j) t)."""
    if rho.dim != spectrum.dim:
        raise DimensionError(f"state is {rho.dim}-d, spectrum is {spectrum.dim}-d")
    phases = np.exp(-1j * spectrum.eigenvalues * t)
    rho_e = spectrum.to_energy_basis(rho.matrix)
    evolved = spectrum.from_energy_basis(rho_e * np.outer(phases, phases.conj()))
    # re-Hermitize against rounding before revalidation
    return DensityMatrix(0.5 * (evolved + evolved.conj().T))


def dephase(rho: DensityMatrix, spectrum: HamiltonianSpectrum) -> DensityMatrix:
    """Equilibrium state: erase coherences between distinct eigenspaces.

    Blocks within one degenerate eigenspace survive; everything else is
    zeroed. Idempotent, and equal to the infinite-time average of the
    evolved state.
    """
    if rho.dim != spectrum.dim:
        raise DimensionError(f"state is {rho.dim}-d, spectrum is {spectrum.dim}-d")
    labels = spectrum.space_of_index
    mask = labels[:, None] == labels[None, :]
    rho_e = spectrum.to_energy_basis(rho.matrix)
    out = spectrum.from_energy_basis(np.where(mask, rho_e, 0.0))
    return DensityMatrix(0.5 * (out + out.conj().T))


def eigenspace_weights(rho: DensityMatrix, spectrum: HamiltonianSpectrum) -> np.ndarray:
    """Population of each energy eigenspace, tr(P_s rho)."""
    if rho.dim != spectrum.dim:
        raise DimensionError(f"state is {rho.dim}-d, spectrum is {spectrum.dim}-d")
    diag = np.real(np.diag(spectrum.to_energy_basis(rho.matrix)))
    return np.array([diag[list(g)].sum() for g in spectrum.eigenspaces])


def effective_dimension(rho: DensityMatrix, spectrum: HamiltonianSpectrum) -> float:
    """Inverse participation ratio over energy eigenspaces.

    Roughly the number of eigenspaces the state populates significantly; 1
    for an energy eigenstate, the full dimension for the maximally mixed
    state of a nondegenerate Hamiltonian.
    """
    weights = eigenspace_weights(rho, spectrum)
    return 1.0 / float(np.sum(weights**2))


def equilibration_bound(outcomes: int, gap_degeneracy: int, effective_dim: float) -> float:
    """Bound on the time-averaged distinguishability from spectral data:
    (1/2) sqrt(gap_degeneracy * (outcomes - 1) / effective_dim)."""
    if outcomes < 1:
        raise DomainError(f"outcome count must be >= 1, got {outcomes}")
    if gap_degeneracy < 1:
        raise DomainError(f"gap degeneracy must be >= 1, got {gap_degeneracy}")
    if effective_dim < 1.0:
        raise DomainError(f"effective dimension must be >= 1, got {effective_dim!r}")
    return 0.5 * math.sqrt(gap_degeneracy * (outcomes - 1) / effective_dim)


def equilibration_bound_coarse(outcomes: int, gap_degeneracy: int, effective_dim: float) -> float:
    """Older, looser variant of the bound with ``outcomes`` in place of
    ``outcomes - 1``; kept for tightness comparisons."""
    if outcomes < 1:
        raise DomainError(f"outcome count must be >= 1, got {outcomes}")
    if gap_degeneracy < 1:
        raise DomainError(f"gap degeneracy must be >= 1, got {gap_degeneracy}")
    if effective_dim < 1.0:
        raise DomainError(f"effective dimension must be >= 1, got {effective_dim!r}")
    return 0.5 * math.sqrt(gap_degeneracy * outcomes / effective_dim)


def max_outcomes_for_equilibration(
    epsilon: float, effective_dim: float, gap_degeneracy: int
) -> int:
    """Largest measurement size that still guarantees epsilon-equilibration:
    floor(4 * effective_dim * epsilon^2 / gap_degeneracy + 1)."""
    if not 0.0 <= epsilon < 1.0:
        raise DomainError(f"epsilon must lie in [0, 1), got {epsilon!r}")
    if effective_dim < 1.0:
        raise DomainError(f"effective dimension must be >= 1, got {effective_dim!r}")
    if gap_degeneracy < 1:
        raise DomainError(f"gap degeneracy must be >= 1, got {gap_degeneracy}")
    value = 4.0 * effective_dim * epsilon * epsilon / gap_degeneracy + 1.0
    return int(math.floor(value + 1e-12))


def quantum_probe(
    rho: DensityMatrix, spectrum: HamiltonianSpectrum, povm: POVM
) -> TrajectoryProbe:
    """Probe whose sample(t) lists tr(M_j rho_t) for the POVM elements."""
    if rho.dim != spectrum.dim or povm.dim != spectrum.dim:
        raise DimensionError(
            f"dimensions differ: state {rho.dim}, spectrum {spectrum.dim}, "
            f"measurement {povm.dim}"
        )
    rho_e = spectrum.to_energy_basis(rho.matrix)
    # coefficient tensor: p_j(t) = sum_{nm} coeff[j, n, m] * exp(-i (E_n - E_m) t)
    coeff = np.stack([rho_e * spectrum.to_energy_basis(m).T for m in povm.elements])
    energies = spectrum.eigenvalues
    n_out = povm.outcome_count

    def _block(times: np.ndarray) -> np.ndarray:
        times = np.asarray(times, dtype=float)
        out = np.empty((times.size, n_out))
        chunk = max(1, int(4_000_000 // max(1, energies.size**2)))
        for start in range(0, times.size, chunk):
            ts = times[start : start + chunk]
            u = np.exp(-1j * np.outer(ts, energies))  # (m, d)
            out[start : start + ts.size] = np.real(
                np.einsum("jnm,tn,tm->tj", coeff, u, u.conj(), optimize=True)
            )
        # clip 1-ulp excursions so strict downstream validation stays happy
        return np.clip(out, 0.0, 1.0)

    def sample(t: float) -> OutcomeDistribution:
        return OutcomeDistribution(_block(np.array([t]))[0])

    return TrajectoryProbe(sample=sample, outcome_count=n_out, sample_many=_block)


def default_average_config(
    spectrum: HamiltonianSpectrum,
    samples: int = 10_000,
    seed: int = 0,
    cycles: float = 1_000.0,
) -> TimeAverageConfig:
    """Averaging horizon resolving the slowest oscillation of the spectrum.

    The horizon covers ``cycles`` periods of the smallest nonzero gap,
    under stratified-random sampling. A single-eigenspace spectrum has no
    dynamics at all; any horizon works and 1.0 is used.
    """
    gap = spectrum.minimum_gap()
    horizon = cycles * 2.0 * math.pi / gap if gap > 0 else 1.0
    return TimeAverageConfig(horizon=horizon, samples=samples, seed=seed)


def _support_rotation(rho_e: np.ndarray, spectrum: HamiltonianSpectrum) -> np.ndarray:
    """Basis change, block-diagonal over eigenspaces, rotating each
    within-eigenspace block of a pure state onto a single basis vector."""
    d = spectrum.dim
    w = np.eye(d, dtype=complex)
    for group in spectrum.eigenspaces:
        if len(group) == 1:
            continue
        g = list(group)
        block = rho_e[np.ix_(g, g)]
        vals, vecs = np.linalg.eigh(block)
        # descending population: the support vector comes first
        w[np.ix_(g, g)] = vecs[:, ::-1]
    return w


def projector_second_moment(
    rho: DensityMatrix, projector, spectrum: HamiltonianSpectrum
) -> float:
    """Exact infinite-time average of |tr(P (rho_t - omega))|^2 for pure states.

    Works in an energy basis rotated so the state occupies a single vector
    inside each degenerate eigenspace; then the average is a closed sum over
    equal-gap classes: sum over classes of |sum of rho_nj P_jn|^2. Mixed
    states are rejected; purify them first.
    """
    proj = _as_square_complex(projector, "the projector")
    if rho.dim != spectrum.dim or proj.shape[0] != spectrum.dim:
        raise DimensionError("state, projector and spectrum dimensions differ")
    if not rho.is_pure:
        raise DomainError(
            f"exact second moment needs a pure state (purity {rho.purity:.6f}); "
            "route mixed states through purify()"
        )
    rho_e = spectrum.to_energy_basis(rho.matrix)
    proj_e = spectrum.to_energy_basis(proj)
    w = _support_rotation(rho_e, spectrum)
    rho_r = w.conj().T @ rho_e @ w
    proj_r = w.conj().T @ proj_e @ w

    # after the rotation the state has one support index per eigenspace
    diag = np.real(np.diag(rho_r))
    support = [int(g[np.argmax(diag[list(g)])]) for g in map(list, spectrum.eigenspaces)]

    table = gap_table(spectrum)
    total = 0.0
    for cls in table.classes:
        acc = 0.0 + 0.0j
        for k in cls:
            n_space, j_space = table.pairs[k]
            n_idx, j_idx = support[n_space], support[j_space]
            acc += rho_r[n_idx, j_idx] * proj_r[j_idx, n_idx]
        total += abs(acc) ** 2
    return float(total)


def purify(rho: DensityMatrix) -> DensityMatrix:
    """Pure state on the doubled space whose partial trace over the ancilla
    reproduces ``rho``.

    Built from the eigendecomposition: sqrt-eigenvalue superposition of
    eigenvector (x) ancilla-basis pairs. Pair with ``extend_hamiltonian`` /
    ``extend_povm`` (null ancilla dynamics), under which the purification
    has the same outcome trajectories, effective dimension and gap structure
    as the original state.
    """
    vals, vecs = np.linalg.eigh(rho.matrix)
    vals = np.clip(vals, 0.0, None)
    d = rho.dim
    psi = np.zeros(d * d, dtype=complex)
    for i in range(d):
        if vals[i] > 0.0:
            ancilla = np.zeros(d)
            ancilla[i] = 1.0
            psi += math.sqrt(vals[i]) * np.kron(vecs[:, i], ancilla)
    psi /= np.linalg.norm(psi)
    return DensityMatrix(np.outer(psi, psi.conj()))


def partial_trace_ancilla(rho: DensityMatrix, system_dim: int) -> DensityMatrix:
    """Trace out an ancilla of dimension rho.dim / system_dim."""
    d = rho.dim
    if d % system_dim != 0:
        raise DimensionError(f"cannot split dimension {d} as system {system_dim} x ancilla")
    da = d // system_dim
    reshaped = rho.matrix.reshape(system_dim, da, system_dim, da)
    return DensityMatrix(np.einsum("iaja->ij", reshaped))


def extend_hamiltonian(spectrum: HamiltonianSpectrum, ancilla_dim: int) -> HamiltonianSpectrum:
    """Spectral data of H (x) identity: the system Hamiltonian extended by a
    null ancilla. Eigenvalues repeat per ancilla level, so the distinct
    energies, and with them the gap structure, are unchanged."""
    if ancilla_dim < 1:
        raise DomainError("ancilla dimension must be >= 1")
    vals = np.repeat(spectrum.eigenvalues, ancilla_dim)
    vecs = np.kron(spectrum.eigenvectors, np.eye(ancilla_dim))
    return HamiltonianSpectrum(vals, vecs)


def extend_povm(povm: POVM, ancilla_dim: int) -> POVM:
    """The measurement M_j (x) identity acting on system plus ancilla."""
    if ancilla_dim < 1:
        raise DomainError("ancilla dimension must be >= 1")
    eye = np.eye(ancilla_dim)
    return POVM([np.kron(m, eye) for m in povm.elements])


# --- seeded generators for random instances ---------------------------------

def haar_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed unitary via QR of a complex Gaussian matrix."""
    z = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def random_spectrum(
    dim: int,
    seed: int,
    kind: str = "generic",
    spacing: float = 1.0,
) -> HamiltonianSpectrum:
    """Random Hamiltonian spectral data.

    ``kind="generic"`` draws eigenvalues uniformly over [0, dim] (all gaps
    distinct with probability one); ``kind="equally-spaced"`` builds the
    ladder 0, spacing, 2*spacing, ... whose gaps are maximally degenerate.
    Both use a Haar-random eigenbasis.
    """
    rng = np.random.default_rng(seed)
    if kind == "generic":
        vals = np.sort(rng.uniform(0.0, float(dim), dim))
    elif kind == "equally-spaced":
        vals = spacing * np.arange(dim, dtype=float)
    else:
        raise DomainError(f"unknown spectrum kind {kind!r}")
    return HamiltonianSpectrum(vals, haar_unitary(dim, rng))


def random_pure_state(dim: int, seed: int) -> DensityMatrix:
    rng = np.random.default_rng(seed)
    psi = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    return DensityMatrix.from_vector(psi)


def random_mixed_state(dim: int, seed: int) -> DensityMatrix:
    rng = np.random.default_rng(seed)
    g = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    m = g @ g.conj().T
    return DensityMatrix(m / np.trace(m))


def random_povm(dim: int, outcomes: int, seed: int) -> POVM:
    """Random positive decomposition of the identity: normalize random PSD
    matrices by the inverse square root of their sum."""
    if outcomes < 1:
        raise DomainError("need at least one outcome")
    rng = np.random.default_rng(seed)
    parts = []
    for _ in range(outcomes):
        g = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
        parts.append(g @ g.conj().T)
    total = sum(parts)
    vals, vecs = np.linalg.eigh(total)
    inv_sqrt = vecs @ np.diag(1.0 / np.sqrt(vals)) @ vecs.conj().T
    return POVM([inv_sqrt @ p @ inv_sqrt for p in parts])


def projective_povm(dim: int, outcomes: int, seed: int) -> POVM:
    """Projective measurement from a Haar-random basis, its vectors dealt
    round-robin into ``outcomes`` groups."""
    if not 1 <= outcomes <= dim:
        raise DomainError(f"projective measurement needs 1 <= outcomes <= dim, got {outcomes}")
    rng = np.random.default_rng(seed)
    u = haar_unitary(dim, rng)
    elements = [np.zeros((dim, dim), dtype=complex) for _ in range(outcomes)]
    for col in range(dim):
        v = u[:, col]
        elements[col % outcomes] += np.outer(v, v.conj())
    return POVM(elements)


def uneven_povm(dim: int, outcomes: int, leak: float, seed: int) -> POVM:
    """Measurement with one near-identity element: element 0 is
    (1 - leak) * identity and the rest share leak * identity randomly.
    Any state then has a dominant outcome of weight 1 - leak."""
    if not 0.0 <= leak < 1.0:
        raise DomainError("leak must lie in [0, 1)")
    if outcomes < 2:
        raise DomainError("need at least two outcomes")
    rest = random_povm(dim, outcomes - 1, seed)
    eye = np.eye(dim)
    return POVM([(1.0 - leak) * eye] + [leak * m for m in rest.elements])


# --- export and matrix codecs ------------------------------------------------

def matrix_to_pairs(matrix: np.ndarray) -> dict:
    """Encode a complex matrix as a row-major list of (real, imag) pairs."""
    arr = np.asarray(matrix, dtype=complex)
    return {
        "rows": int(arr.shape[0]),
        "cols": int(arr.shape[1]),
        "data": [[float(v.real), float(v.imag)] for v in arr.reshape(-1)],
    }


def matrix_from_pairs(cfg: dict, path: str = "matrix") -> np.ndarray:
    from .core import ConfigError

    for key in ("rows", "cols", "data"):
        if key not in cfg:
            raise ConfigError(f"{path}.{key}: required")
    rows, cols, data = cfg["rows"], cfg["cols"], cfg["data"]
    if len(data) != rows * cols:
        raise ConfigError(f"{path}.data: expected {rows * cols} pairs, got {len(data)}")
    try:
        flat = np.array([complex(re, im) for re, im in data])
    except (TypeError, ValueError):
        raise ConfigError(f"{path}.data: entries must be (real, imag) pairs") from None
    return flat.reshape(rows, cols)


def write_spectrum_csv(spectrum: HamiltonianSpectrum, path, gap_tol: float | None = None) -> None:
    """Export the gap table as CSV rows
    (space_n, space_j, energy_n, energy_j, gap, gap_class, class_size)."""
    table = gap_table(spectrum, gap_tol)
    class_of = {}
    size_of = {}
    for c, cls in enumerate(table.classes):
        for k in cls:
            class_of[k] = c
            size_of[k] = len(cls)
    energies = spectrum.eigenspace_energies
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(
            ["space_n", "space_j", "energy_n", "energy_j", "gap", "gap_class", "class_size"]
        )
        for k, (n, j) in enumerate(table.pairs):
            writer.writerow(
                [
                    n,
                    j,
                    f"{energies[n]:.17g}",
                    f"{energies[j]:.17g}",
                    f"{table.values[k]:.17g}",
                    class_of[k],
                    size_of[k],
                ]
            )
