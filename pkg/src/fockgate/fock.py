"""Sparse Fock-state algebra for small multimode photonic systems.

A mode is one optical degree of freedom, labeled by spatial port plus
polarization tag (``q1H``, ``q2V``, ...) or by an ancilla role
(``loss1``).  A basis state is an occupation-number tuple over the
registry's mode order, and a pure state is a sparse map from those
tuples to complex amplitudes.  Sparsity keeps exact interference zeros
representable as absent terms and keeps small-circuit output readable.

States and registries are immutable values; every operation returns a
new object, so they are safe to share across threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property

TOLERANCE = 1e-12
"""Global comparison tolerance; target values are algebraic numbers well
separated at this scale."""

PRUNE_THRESHOLD = 1e-14
"""Amplitudes below this magnitude are dropped after each operation so
exact destructive interference leaves no term behind."""

DEFAULT_PHOTON_CAP = 4

Occupations = tuple[int, ...]


@dataclass(frozen=True)
class ModeRegistry:
    """Ordered, immutable collection of mode labels.

    The index of a label is stable for the registry's lifetime, and the
    per-mode photon cap bounds every occupation number of states built
    against it.
    """

    labels: tuple[str, ...]
    photon_cap: int = DEFAULT_PHOTON_CAP

    def __post_init__(self):
        object.__setattr__(self, "labels", tuple(self.labels))
        if not self.labels:
            raise ValueError("registry needs at least one mode label")
        if len(set(self.labels)) != len(self.labels):
            raise ValueError(f"duplicate mode labels in {self.labels}")
        if self.photon_cap < 1:
            raise ValueError("photon cap must be a positive integer")

    @cached_property
    def _index(self) -> dict[str, int]:
        return {label: i for i, label in enumerate(self.labels)}

    @property
    def count(self) -> int:
        return len(self.labels)

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise ValueError(f"unknown mode label {label!r}") from None

    def validate(self, occupations) -> Occupations:
        """Check an occupation vector against this registry and return it
        as a tuple."""
        occ = tuple(int(n) for n in occupations)
        if len(occ) != self.count:
            raise ValueError(
                f"occupation length {len(occ)} does not match registry "
                f"with {self.count} modes"
            )
        if any(n < 0 for n in occ):
            raise ValueError(f"negative occupation in {occ}")
        if any(n > self.photon_cap for n in occ):
            raise ValueError(
                f"occupation exceeds photon cap {self.photon_cap}: {occ}"
            )
        return occ

    def combine(self, other: "ModeRegistry") -> "ModeRegistry":
        """Concatenate two registries with disjoint label sets."""
        overlap = set(self.labels) & set(other.labels)
        if overlap:
            raise ValueError(f"overlapping mode labels: {sorted(overlap)}")
        return ModeRegistry(
            self.labels + other.labels,
            photon_cap=max(self.photon_cap, other.photon_cap),
        )


@dataclass(frozen=True, eq=False)
class PureState:
    """Sparse complex-amplitude map over Fock basis states.

    ``terms`` maps occupation tuples to amplitudes.  The constructor
    validates every occupation against the registry and prunes
    amplitudes below :data:`PRUNE_THRESHOLD`.  Treat instances as
    immutable; all arithmetic returns new states.
    """

    registry: ModeRegistry
    terms: dict[Occupations, complex] = field(default_factory=dict)

    def __post_init__(self):
        pruned = {}
        for occ, amp in self.terms.items():
            occ = self.registry.validate(occ)
            amp = complex(amp)
            if abs(amp) >= PRUNE_THRESHOLD:
                pruned[occ] = amp
        object.__setattr__(self, "terms", pruned)

    def amplitude(self, occupations) -> complex:
        """Amplitude of one basis state (0 for absent terms)."""
        return self.terms.get(self.registry.validate(occupations), 0j)

    def norm_squared(self) -> float:
        return sum((abs(amp) ** 2 for amp in self.terms.values()), start=0.0)

    def normalize(self) -> tuple["PureState", float]:
        """Return the unit-norm state and the original squared norm.

        Raises:
            ValueError: on a (numerically) zero state.
        """
        n2 = self.norm_squared()
        if not self.terms:
            raise ValueError("cannot normalize a zero state")
        return self.scaled(1.0 / math.sqrt(n2)), n2

    def scaled(self, factor: complex) -> "PureState":
        return PureState(
            self.registry,
            {occ: factor * amp for occ, amp in self.terms.items()},
        )

    def __add__(self, other: "PureState") -> "PureState":
        if self.registry != other.registry:
            raise ValueError("cannot add states over different registries")
        summed = dict(self.terms)
        for occ, amp in other.terms.items():
            summed[occ] = summed.get(occ, 0j) + amp
        return PureState(self.registry, summed)

    def __sub__(self, other: "PureState") -> "PureState":
        return self + other.scaled(-1.0)

    def inner_product(self, other: "PureState") -> complex:
        """Hilbert-space inner product, conjugate-linear in ``self``."""
        if self.registry != other.registry:
            raise ValueError(
                "inner product requires states over the same registry"
            )
        return _overlap(self.terms, other.terms)

    def tensor(self, other: "PureState") -> "PureState":
        """Product state over the concatenated registries.

        Mode label sets must be disjoint; amplitudes multiply, so norms
        multiply as well.
        """
        combined = self.registry.combine(other.registry)
        terms = {}
        for occ_a, amp_a in self.terms.items():
            for occ_b, amp_b in other.terms.items():
                terms[occ_a + occ_b] = amp_a * amp_b
        return PureState(combined, terms)

    def allclose(self, other: "PureState", tol: float = TOLERANCE) -> bool:
        """Amplitude-by-amplitude comparison within ``tol``."""
        if self.registry != other.registry:
            return False
        for occ in self.terms.keys() | other.terms.keys():
            if abs(self.terms.get(occ, 0j) - other.terms.get(occ, 0j)) > tol:
                return False
        return True

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for occ in sorted(self.terms):
            amp = self.terms[occ]
            ket = ",".join(str(n) for n in occ)
            parts.append(f"({amp:.6g})|{ket}>")
        return " + ".join(parts)


def _overlap(a_terms: dict, b_terms: dict) -> complex:
    return sum(
        (amp.conjugate() * b_terms[occ] for occ, amp in a_terms.items() if occ in b_terms),
        start=0j,
    )


def basis_state(registry: ModeRegistry, occupations) -> PureState:
    """Single-term state with amplitude 1 on the given occupation."""
    return PureState(registry, {registry.validate(occupations): 1.0 + 0j})


def vacuum(registry: ModeRegistry) -> PureState:
    return basis_state(registry, (0,) * registry.count)


def single_photon(registry: ModeRegistry, label: str) -> PureState:
    """One photon in the named mode, vacuum everywhere else."""
    occ = [0] * registry.count
    occ[registry.index(label)] = 1
    return basis_state(registry, occ)


def total_photons(occupations: Occupations) -> int:
    return sum(occupations)
