"""Mode-space unitaries for beam splitters, polarizing beam splitters,
phase shifters, and attenuators, plus circuit composition.

Phase convention (fixed throughout the package, all golden values
depend on it):

* a beam splitter of reflectivity ``R`` keeps the *reflected* amplitude
  at the input phase (factor ``sqrt(R)``) and gives the *transmitted*
  amplitude a factor ``-i*sqrt(1-R)``;
* a polarizing beam splitter routes the H component straight through
  and the V component onto the reflected rail with phase ``+1`` on both
  (any fixed per-arm phase that cancels over a split/recombine pair
  would do; identity is the simplest such choice).

A mode unitary ``U`` acts on creation operators as
``a_dag[i] -> sum_j U[j, i] * a_dag[j]``, i.e. columns index input
modes and rows index output modes.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

import numpy as np

from .fock import ModeRegistry

UNITARITY_TOL = 1e-10

MAX_UNITARY_DIM = 64  # desk-scale guard; the gate needs 6


class ModeUnitary:
    """Dense complex matrix acting on mode creation operators.

    Checked to satisfy U^dag U = I within :data:`UNITARITY_TOL` on
    construction (composition re-checks because it constructs a new
    instance).  The wrapped array is read-only.
    """

    def __init__(self, matrix):
        mat = np.array(matrix, dtype=complex)
        if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
            raise ValueError(f"mode unitary must be square, got shape {mat.shape}")
        if mat.shape[0] > MAX_UNITARY_DIM:
            raise ValueError(f"mode count {mat.shape[0]} exceeds cap {MAX_UNITARY_DIM}")
        defect = np.max(np.abs(mat.conj().T @ mat - np.eye(mat.shape[0])))
        if defect > UNITARITY_TOL:
            raise ValueError(f"matrix is not unitary (defect {defect:.3e})")
        mat.setflags(write=False)
        self._matrix = mat

    @property
    def matrix(self) -> np.ndarray:
        return self._matrix

    @property
    def dim(self) -> int:
        return self._matrix.shape[0]

    def __matmul__(self, other: "ModeUnitary") -> "ModeUnitary":
        """Matrix product; ``a @ b`` applies ``b`` first, then ``a``."""
        return ModeUnitary(self._matrix @ other._matrix)

    def dagger(self) -> "ModeUnitary":
        return ModeUnitary(self._matrix.conj().T)

    def __repr__(self) -> str:
        return f"ModeUnitary(dim={self.dim})"


def beam_splitter_matrix(reflectivity: float) -> np.ndarray:
    """2x2 beam-splitter matrix for the given reflectivity.

    Diagonal entries are ``sqrt(R)`` (reflection keeps the input
    phase), off-diagonal entries are ``-i*sqrt(1-R)`` (transmission).
    ``R=1`` is the identity; ``R=0`` swaps the modes with a ``-i``
    phase on each.
    """
    r = float(reflectivity)
    if not 0.0 <= r <= 1.0:
        raise ValueError(f"reflectivity must lie in [0, 1], got {r}")
    kept = np.sqrt(r)
    crossed = -1j * np.sqrt(1.0 - r)
    return np.array([[kept, crossed], [crossed, kept]])


def embed(small, targets, registry: ModeRegistry) -> ModeUnitary:
    """Embed a k-mode unitary into the full registry.

    Identity on all non-target modes; the block on ``targets`` (mode
    labels, in order) equals ``small``.
    """
    block = small.matrix if isinstance(small, ModeUnitary) else np.asarray(small, dtype=complex)
    targets = tuple(targets)
    if len(set(targets)) != len(targets):
        raise ValueError(f"duplicate target modes: {targets}")
    if block.shape != (len(targets), len(targets)):
        raise ValueError(
            f"block of shape {block.shape} does not fit {len(targets)} target modes"
        )
    indices = [registry.index(label) for label in targets]
    full = np.eye(registry.count, dtype=complex)
    for a, ia in enumerate(indices):
        for b, ib in enumerate(indices):
            full[ia, ib] = block[a, b]
    return ModeUnitary(full)


def pbs_routing(registry: ModeRegistry, ports) -> ModeUnitary:
    """Polarizing-beam-splitter routing for the named spatial ports.

    Each port label ``p`` must have both ``pH`` and ``pV`` modes in the
    registry.  H is transmitted straight through and V is sent to the
    reflected rail; in this registry the rails carry the same labels as
    the port's polarization modes, so the routing permutation is the
    identity, written out explicitly with the conventional +1 phases.
    """
    routing: dict[int, int] = {}
    for port in ports:
        for tag in ("H", "V"):
            label = f"{port}{tag}"
            if label not in registry.labels:
                raise ValueError(
                    f"port {port!r} is missing its {tag}-polarization mode {label!r}"
                )
            routing[registry.index(label)] = registry.index(label)
    full = np.eye(registry.count, dtype=complex)
    for src, dst in routing.items():
        full[src, src] = 0.0
        full[dst, src] = 1.0
    return ModeUnitary(full)


@dataclass(frozen=True)
class BeamSplitter:
    """Beam splitter of reflectivity ``reflectivity`` on a mode pair."""

    reflectivity: float
    modes: tuple[str, str]

    def to_unitary(self, registry: ModeRegistry) -> ModeUnitary:
        a, b = self.modes
        if a == b:
            raise ValueError(f"beam splitter needs two distinct modes, got {self.modes}")
        return embed(beam_splitter_matrix(self.reflectivity), (a, b), registry)


@dataclass(frozen=True)
class PolarizingBS:
    """Polarizing beam splitter acting on one or more spatial ports."""

    ports: tuple[str, ...]

    def to_unitary(self, registry: ModeRegistry) -> ModeUnitary:
        return pbs_routing(registry, self.ports)


@dataclass(frozen=True)
class PhaseShifter:
    """Single-mode phase shift ``exp(i*angle)``."""

    mode: str
    angle: float

    def to_unitary(self, registry: ModeRegistry) -> ModeUnitary:
        full = np.eye(registry.count, dtype=complex)
        idx = registry.index(self.mode)
        full[idx, idx] = np.exp(1j * self.angle)
        return ModeUnitary(full)


@dataclass(frozen=True)
class Attenuator:
    """Attenuation of a signal mode, realized as a physical beam
    splitter of reflectivity ``reflectivity`` coupling the signal to a
    dedicated vacuum loss mode.

    Keeps the global evolution unitary; loss probability can be read
    from the loss-mode occupations.  A single photon keeps amplitude
    ``sqrt(R)`` in the signal mode.
    """

    reflectivity: float
    signal_mode: str
    loss_mode: str

    def to_unitary(self, registry: ModeRegistry) -> ModeUnitary:
        if self.signal_mode == self.loss_mode:
            raise ValueError("signal and loss modes must differ")
        return embed(
            beam_splitter_matrix(self.reflectivity),
            (self.signal_mode, self.loss_mode),
            registry,
        )


Element = Union[BeamSplitter, PolarizingBS, PhaseShifter, Attenuator]


@dataclass(frozen=True)
class Circuit:
    """Ordered sequence of optical elements over one registry.

    Elements apply in list order; ``compose`` multiplies their matrices
    accordingly (later elements on the left).
    """

    registry: ModeRegistry
    elements: tuple[Element, ...]

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(self.elements))

    def compose(self) -> ModeUnitary:
        total = np.eye(self.registry.count, dtype=complex)
        for element in self.elements:
            total = element.to_unitary(self.registry).matrix @ total
        return ModeUnitary(total)


def haar_random_unitary(dim: int, rng: np.random.Generator) -> ModeUnitary:
    """Haar-distributed random unitary via QR of a Ginibre matrix."""
    z = (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))) / np.sqrt(2.0)
    q, r = np.linalg.qr(z)
    phases = np.diagonal(r) / np.abs(np.diagonal(r))
    return ModeUnitary(q * phases)
