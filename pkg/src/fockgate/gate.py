"""Post-selected two-photon phase gate built from three beam splitters.

The circuit acts on six modes, [q1H, q1V, q2H, q2V, loss1, loss2]:
polarizing beam splitters separate each input port into an H rail and a
V rail, the two H rails interfere on a central beam splitter, each V
rail is attenuated by an identical beam splitter coupling to a vacuum
loss mode, and the rails are recombined.  Post-selecting on one photon
per output port leaves a controlled phase flip: with reflectivity 1/3
everywhere the coincidence amplitudes are 1/3 on |VV>, |VH>, |HV> and
-1/3 on |HH>, a success probability of 1/9 for every input.

Two qubit encodings are provided: the polarization encoding |0> = V,
|1> = H on both ports (phase-gate form), and the rotated target
encoding |0> = (V+H)/sqrt(2), |1> = (V-H)/sqrt(2) on port 2, which
turns the same circuit into a CNOT.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import sqrt

import numpy as np

from .elements import (
    Attenuator,
    BeamSplitter,
    Circuit,
    ModeUnitary,
    PolarizingBS,
    UNITARITY_TOL,
    beam_splitter_matrix,
)
from .evolution import evolve, transition_amplitude
from .fock import ModeRegistry, Occupations, PureState, TOLERANCE, vacuum

QUBIT_MODES = ("q1H", "q1V", "q2H", "q2V")
LOSS_MODES = ("loss1", "loss2")
GATE_MODES = QUBIT_MODES + LOSS_MODES

QUBIT_REGISTRY = ModeRegistry(QUBIT_MODES)
LOSS_REGISTRY = ModeRegistry(LOSS_MODES)
GATE_REGISTRY = ModeRegistry(GATE_MODES)

PORTS = ("q1", "q2")
BASIS_LABELS = ("00", "01", "10", "11")
POLARIZATION_LABELS = ("VV", "VH", "HV", "HH")
ENCODINGS = ("phase", "cnot")

_PORT1_SLOTS = (0, 1)  # q1H, q1V
_PORT2_SLOTS = (2, 3)  # q2H, q2V
_LOSS_SLOTS = (4, 5)


def balanced_reflectivity() -> float:
    """Reflectivity at which the gate succeeds uniformly, solved in
    closed form.

    The two-photon stay-put amplitude at the central beam splitter is
    2R - 1 while a lone photon keeps amplitude sqrt(R); matching the
    single-V attenuation to R makes every coincidence amplitude equal
    in magnitude exactly when |2R - 1| = R.  On [0, 1/2), where the
    two-photon amplitude carries the phase flip, this reads
    1 - 2R = R, so R = 1/3.
    """
    return 1.0 / 3.0


BALANCED_REFLECTIVITY = balanced_reflectivity()


def build_gate_circuit(reflectivity: float = BALANCED_REFLECTIVITY) -> Circuit:
    """Element list of the gate on the six-mode registry.

    Both polarizing splitters route H/V with phase +1 in this mode
    labeling, so the physics sits in the central H-H beam splitter and
    the two V-rail attenuators, all with the same reflectivity.
    """
    return Circuit(
        GATE_REGISTRY,
        (
            PolarizingBS(PORTS),
            BeamSplitter(reflectivity, ("q1H", "q2H")),
            Attenuator(reflectivity, "q1V", "loss1"),
            Attenuator(reflectivity, "q2V", "loss2"),
            PolarizingBS(PORTS),
        ),
    )


@lru_cache(maxsize=None)
def gate_unitary(reflectivity: float = BALANCED_REFLECTIVITY) -> ModeUnitary:
    """Composed 6x6 mode unitary of the gate circuit (cached)."""
    return build_gate_circuit(reflectivity).compose()


def polarization_basis_state(
    label: str, registry: ModeRegistry = QUBIT_REGISTRY
) -> PureState:
    """Two-photon coincidence basis state, e.g. ``"VH"`` = V photon in
    port 1 and H photon in port 2."""
    if len(label) != 2 or any(ch not in "HV" for ch in label):
        raise ValueError(f"unknown polarization label {label!r}; expected e.g. 'VH'")
    occ = [0] * registry.count
    for port, ch in zip(PORTS, label):
        occ[registry.index(f"{port}{ch}")] += 1
    return PureState(registry, {tuple(occ): 1.0 + 0j})


def _port_kets(encoding: str, port: str, bit: str) -> tuple[tuple[str, complex], ...]:
    """Single-photon expansion of one encoded qubit basis state as
    (mode label, amplitude) pairs."""
    h, v = f"{port}H", f"{port}V"
    if encoding == "phase" or port == "q1":
        return ((v, 1.0 + 0j),) if bit == "0" else ((h, 1.0 + 0j),)
    # rotated target: |0> = (V+H)/sqrt(2), |1> = (V-H)/sqrt(2)
    s = 1.0 / sqrt(2.0)
    sign = 1.0 if bit == "0" else -1.0
    return ((v, s + 0j), (h, sign * s + 0j))


def encoded_basis_state(
    encoding: str, label: str, registry: ModeRegistry = QUBIT_REGISTRY
) -> PureState:
    """Unit-norm two-photon state for a two-qubit computational basis
    label like ``"10"`` under the given encoding.

    ``"phase"`` uses |0> = V, |1> = H on both ports; ``"cnot"`` keeps
    that on port 1 (control) and rotates port 2 (target) into
    (V +/- H)/sqrt(2).  The rotated kets are explicitly normalized so
    each encoded basis state has norm 1.
    """
    if encoding not in ENCODINGS:
        raise ValueError(f"unknown encoding {encoding!r}; expected one of {ENCODINGS}")
    if len(label) != 2 or any(ch not in "01" for ch in label):
        raise ValueError(f"unknown basis label {label!r}; expected e.g. '10'")
    terms: dict[Occupations, complex] = {}
    for mode1, amp1 in _port_kets(encoding, "q1", label[0]):
        for mode2, amp2 in _port_kets(encoding, "q2", label[1]):
            occ = [0] * registry.count
            occ[registry.index(mode1)] += 1
            occ[registry.index(mode2)] += 1
            key = tuple(occ)
            terms[key] = terms.get(key, 0j) + amp1 * amp2
    return PureState(registry, terms)


def random_product_state(
    rng: np.random.Generator, registry: ModeRegistry = QUBIT_REGISTRY
) -> PureState:
    """One photon per port, each in an independent random polarization
    superposition (complex-Gaussian amplitudes, normalized)."""
    terms: dict[Occupations, complex] = {}
    coeffs = []
    for _ in PORTS:
        raw = rng.standard_normal(2) + 1j * rng.standard_normal(2)
        coeffs.append(raw / np.linalg.norm(raw))
    for i, pol1 in enumerate("HV"):
        for j, pol2 in enumerate("HV"):
            occ = [0] * registry.count
            occ[registry.index(f"q1{pol1}")] += 1
            occ[registry.index(f"q2{pol2}")] += 1
            terms[tuple(occ)] = complex(coeffs[0][i] * coeffs[1][j])
    return PureState(registry, terms)


def _as_gate_state(state: PureState) -> PureState:
    """Lift a port-only state onto the full registry by tensoring in
    vacuum loss modes; pass six-mode states through unchanged."""
    if state.registry == GATE_REGISTRY:
        return state
    if state.registry == QUBIT_REGISTRY:
        return state.tensor(vacuum(LOSS_REGISTRY))
    raise ValueError(
        "gate input must live on the four port modes or the full six-mode registry"
    )


def _photons_in(occ: Occupations, slots: tuple[int, ...]) -> int:
    return sum(occ[i] for i in slots)


def _in_contract(occ: Occupations) -> bool:
    return (
        _photons_in(occ, _PORT1_SLOTS) == 1
        and _photons_in(occ, _PORT2_SLOTS) == 1
        and _photons_in(occ, _LOSS_SLOTS) == 0
    )


def run_gate(
    input_state: PureState, reflectivity: float = BALANCED_REFLECTIVITY
) -> PureState:
    """Evolve a one-photon-per-port input through the gate circuit.

    Returns the raw six-mode output, losses and bunched terms
    included, with norm 1.  Inputs that do not carry exactly one
    photon in each port (loss modes empty) are rejected.
    """
    state = _as_gate_state(input_state)
    for occ in state.terms:
        if not _in_contract(occ):
            raise ValueError(
                "gate input must have exactly one photon in each port "
                f"and empty loss modes; offending term {occ}"
            )
    return evolve(state, gate_unitary(reflectivity))


@dataclass(frozen=True)
class PostSelectionRule:
    """Conjunction of exact photon-count constraints on mode groups.

    ``constraints`` pairs a tuple of registry mode indexes with the
    total photon number required on that group.
    """

    name: str
    constraints: tuple[tuple[tuple[int, ...], int], ...]

    def accepts(self, occ: Occupations) -> bool:
        return all(
            _photons_in(occ, group) == count for group, count in self.constraints
        )


def full_rule() -> PostSelectionRule:
    """Coincidence rule: exactly one photon in each output port and
    both loss modes empty."""
    return PostSelectionRule(
        "full",
        (
            (_PORT1_SLOTS, 1),
            (_PORT2_SLOTS, 1),
            ((_LOSS_SLOTS[0],), 0),
            ((_LOSS_SLOTS[1],), 0),
        ),
    )


def practical_rule(port: int = 1) -> PostSelectionRule:
    """Single-port rule: both loss modes empty and exactly one photon
    in the designated output port.

    For two-photon inputs photon-number conservation forces the second
    photon into the other port, so this is equivalent to the full
    coincidence rule; with other photon numbers the two can disagree.
    """
    if port not in (1, 2):
        raise ValueError(f"designated port must be 1 or 2, got {port}")
    slots = _PORT1_SLOTS if port == 1 else _PORT2_SLOTS
    return PostSelectionRule(
        f"practical:{port}",
        (
            ((_LOSS_SLOTS[0],), 0),
            ((_LOSS_SLOTS[1],), 0),
            (slots, 1),
        ),
    )


def postselect(
    raw: PureState, rule: PostSelectionRule
) -> tuple[PureState, float]:
    """Project onto the outcomes a rule accepts.

    Returns the normalized conditional state together with the
    projection probability.  A projection with no surviving amplitude
    returns the empty state and probability 0 — an ordinary value, not
    an error.
    """
    kept = {occ: amp for occ, amp in raw.terms.items() if rule.accepts(occ)}
    projected = PureState(raw.registry, kept)
    if not projected.terms:
        return projected, 0.0
    unit, probability = projected.normalize()
    return unit, probability


def _coerce_rule(rule) -> PostSelectionRule:
    if rule is None:
        return full_rule()
    if isinstance(rule, PostSelectionRule):
        return rule
    if rule == "full":
        return full_rule()
    if rule == "practical":
        return practical_rule()
    raise ValueError(f"unknown post-selection rule {rule!r}")


@dataclass(frozen=True)
class ErrorBudget:
    """Exhaustive outcome split for a two-photon input: post-selection
    success, photon loss, or bunching into a single output port."""

    success: float
    loss: float
    bunching: float

    @property
    def total(self) -> float:
        return self.success + self.loss + self.bunching


def error_budget(
    basis_input, reflectivity: float = BALANCED_REFLECTIVITY
) -> ErrorBudget:
    """Success / loss / bunching probabilities for a gate input.

    ``basis_input`` may be a polarization label (``"VV"``, ``"VH"``,
    ``"HV"``, ``"HH"``) or any one-photon-per-port PureState.  The
    three events are disjoint and exhaustive, so the probabilities sum
    to 1 for any unit-norm input.
    """
    if isinstance(basis_input, str):
        basis_input = polarization_basis_state(basis_input)
    raw = run_gate(basis_input, reflectivity)
    success = loss = bunching = 0.0
    for occ, amp in raw.terms.items():
        p = abs(amp) ** 2
        if _photons_in(occ, _LOSS_SLOTS) > 0:
            loss += p
        elif _in_contract(occ):
            success += p
        else:
            bunching += p
    return ErrorBudget(success=success, loss=loss, bunching=bunching)


def ideal_phase_gate() -> np.ndarray:
    """Controlled-Z on the encoded basis: minus sign on |11> only."""
    return np.diag([1.0, 1.0, 1.0, -1.0]).astype(complex)


def ideal_cnot() -> np.ndarray:
    """Controlled-NOT on the encoded basis: swaps |10> and |11>."""
    mat = np.zeros((4, 4), dtype=complex)
    mat[0, 0] = mat[1, 1] = mat[2, 3] = mat[3, 2] = 1.0
    return mat


@dataclass(frozen=True, eq=False)
class GateReport:
    """Truth table and companion statistics for one encoding.

    ``truth_table`` holds the unnormalized coincidence amplitudes
    (columns are inputs), so the design attenuation of 1/3 appears in
    the entries; ``conditional_table`` rescales each column to unit
    norm for the success-conditioned view.  Column norm-squared of the
    truth table equals the per-input success probability.
    """

    encoding: str
    reflectivity: float
    rule: str
    labels: tuple[str, ...]
    truth_table: np.ndarray
    conditional_table: np.ndarray
    success_probabilities: np.ndarray
    budgets: dict[str, ErrorBudget]
    fidelity: float


def _ideal_for(encoding: str) -> np.ndarray:
    return ideal_phase_gate() if encoding == "phase" else ideal_cnot()


def _table_fidelity(table: np.ndarray, ideal: np.ndarray) -> float:
    rescaled = 3.0 * table
    overlap = np.trace(ideal.conj().T @ rescaled)
    return float(abs(overlap) ** 2) / 16.0


def fidelity(report: GateReport, ideal: np.ndarray) -> float:
    """Process fidelity |Tr(ideal^dag T)|^2 / 16 of the rescaled truth
    table against a 4x4 ideal unitary.

    The rescale multiplies the table by 3, undoing the design
    attenuation; at the balanced reflectivity the rescaled table is
    exactly unitary and the value lies in [0, 1].  Away from the
    balanced point the rescale over- or under-normalizes columns, so
    the value measures deviation from the design rather than a bounded
    overlap.
    """
    ideal = np.asarray(ideal, dtype=complex)
    if ideal.shape != (4, 4):
        raise ValueError(f"ideal gate must be 4x4, got shape {ideal.shape}")
    defect = np.max(np.abs(ideal.conj().T @ ideal - np.eye(4)))
    if defect > UNITARITY_TOL:
        raise ValueError(f"ideal gate is not unitary (defect {defect:.3e})")
    return _table_fidelity(report.truth_table, ideal)


def truth_table(
    encoding: str = "phase",
    reflectivity: float = BALANCED_REFLECTIVITY,
    rule=None,
) -> GateReport:
    """Run all four encoded basis inputs through the gate and collect
    the post-selected transfer amplitudes.

    Entry [j, i] is the amplitude from encoded input i to encoded
    output j including the success attenuation; at the balanced
    reflectivity the polarization encoding gives diag(1/3, 1/3, 1/3,
    -1/3) and the rotated-target encoding the CNOT permutation with
    1/3 everywhere.  A single global phase is fixed by making the
    largest entry of the first (|00>) column real positive.
    """
    if encoding not in ENCODINGS:
        raise ValueError(f"unknown encoding {encoding!r}; expected one of {ENCODINGS}")
    selection = _coerce_rule(rule)
    out_basis = [
        encoded_basis_state(encoding, label, GATE_REGISTRY) for label in BASIS_LABELS
    ]
    table = np.zeros((4, 4), dtype=complex)
    probabilities = np.zeros(4)
    budgets: dict[str, ErrorBudget] = {}
    for i, label in enumerate(BASIS_LABELS):
        enc_in = encoded_basis_state(encoding, label)
        raw = run_gate(enc_in, reflectivity)
        conditional, probability = postselect(raw, selection)
        probabilities[i] = probability
        scale = sqrt(probability)
        for j, enc_out in enumerate(out_basis):
            table[j, i] = scale * enc_out.inner_product(conditional)
        budgets[label] = error_budget(enc_in, reflectivity)

    anchor = np.argmax(np.abs(table[:, 0]))
    pivot = table[anchor, 0]
    if abs(pivot) > TOLERANCE:
        table = table * (abs(pivot) / pivot)

    conditional_table = np.zeros_like(table)
    for i, probability in enumerate(probabilities):
        if probability > TOLERANCE:
            conditional_table[:, i] = table[:, i] / sqrt(probability)

    return GateReport(
        encoding=encoding,
        reflectivity=reflectivity,
        rule=selection.name,
        labels=BASIS_LABELS,
        truth_table=table,
        conditional_table=conditional_table,
        success_probabilities=probabilities,
        budgets=budgets,
        fidelity=_table_fidelity(table, _ideal_for(encoding)),
    )


@dataclass(frozen=True)
class EquivalenceRecord:
    """Full-rule vs practical-rule comparison on one input."""

    label: str
    in_contract: bool
    probability_gap: float
    state_gap: float
    equivalent: bool


@dataclass(frozen=True)
class EquivalenceReport:
    """Battery of post-selection-rule comparisons."""

    records: tuple[EquivalenceRecord, ...]

    @property
    def all_equivalent(self) -> bool:
        """True when every in-contract input gave identical outcomes."""
        return all(r.equivalent for r in self.records if r.in_contract)

    @property
    def out_of_contract(self) -> tuple[str, ...]:
        return tuple(r.label for r in self.records if not r.in_contract)


def rule_equivalence(
    inputs=None,
    reflectivity: float = BALANCED_REFLECTIVITY,
    n_random: int = 50,
    rng: np.random.Generator | None = None,
) -> EquivalenceReport:
    """Check that the coincidence rule and the single-port rule select
    the same conditional state with the same probability.

    ``inputs`` is an iterable of (label, PureState) pairs; by default
    the four polarization basis states plus ``n_random`` random
    product states are tested.  The single-port rule is tried with
    both port choices.  Inputs whose terms are not one photon per port
    are evolved anyway but flagged out-of-contract: the equivalence
    claim rests on two-photon number conservation and need not hold
    for them.
    """
    if rng is None:
        rng = np.random.default_rng(0)
    if inputs is None:
        inputs = [
            (label, polarization_basis_state(label)) for label in POLARIZATION_LABELS
        ]
        inputs += [
            (f"random-{k}", random_product_state(rng)) for k in range(n_random)
        ]

    unitary = gate_unitary(reflectivity)
    records = []
    for label, state in inputs:
        gate_state = _as_gate_state(state)
        in_contract = all(_in_contract(occ) for occ in gate_state.terms)
        raw = evolve(gate_state, unitary)
        full_state, full_p = postselect(raw, full_rule())
        probability_gap = 0.0
        state_gap = 0.0
        for port in (1, 2):
            prac_state, prac_p = postselect(raw, practical_rule(port))
            probability_gap = max(probability_gap, abs(full_p - prac_p))
            state_gap = max(
                state_gap, sqrt((full_state - prac_state).norm_squared())
            )
        records.append(
            EquivalenceRecord(
                label=label,
                in_contract=in_contract,
                probability_gap=probability_gap,
                state_gap=state_gap,
                equivalent=probability_gap <= TOLERANCE and state_gap <= TOLERANCE,
            )
        )
    return EquivalenceReport(records=tuple(records))


@dataclass(frozen=True)
class ScanRow:
    """Number-conserving amplitudes of a lone beam splitter at one
    reflectivity: vacuum, one photon on either side, and the
    two-photon coincidence, plus the balance gap |2R-1| - R."""

    reflectivity: float
    amp_00: float
    amp_01: float
    amp_10: float
    amp_11: float
    imbalance: float


def reflectivity_scan(grid) -> list[ScanRow]:
    """Stay-put amplitudes (1, sqrt(R), sqrt(R), 2R-1) across a grid
    of reflectivities.

    The imbalance column is |two-photon amplitude| minus the product
    of the one-photon amplitudes; it crosses zero at the balanced
    reflectivity 1/3 (and trivially at R = 1, where the splitter is an
    identity).
    """
    rows = []
    for r in grid:
        bs = beam_splitter_matrix(float(r))
        amp_00 = transition_amplitude(bs, (0, 0), (0, 0)).real
        amp_01 = transition_amplitude(bs, (0, 1), (0, 1)).real
        amp_10 = transition_amplitude(bs, (1, 0), (1, 0)).real
        amp_11 = transition_amplitude(bs, (1, 1), (1, 1)).real
        rows.append(
            ScanRow(
                reflectivity=float(r),
                amp_00=amp_00,
                amp_01=amp_01,
                amp_10=amp_10,
                amp_11=amp_11,
                imbalance=abs(amp_11) - abs(amp_01 * amp_10),
            )
        )
    if not rows:
        raise ValueError("reflectivity grid is empty")
    return rows
