"""Named invariant checks behind the ``verify`` command.

Two families:

* simulator checks — algebraic identities that hold at any
  reflectivity (permanent correctness, convention reproduction, oracle
  agreement, norm conservation, budget completeness, post-selection
  rule equivalence);
* design checks — properties specific to the balanced gate (uniform
  1/9 efficiency, exact truth tables, unit fidelity).  Running with a
  perturbed reflectivity makes exactly these fail, which is itself a
  useful diagnostic.

Each check returns a pass/fail flag and a one-line detail with the
measured defect, so failures are quantitative.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from math import isclose, sqrt

import numpy as np

from .elements import beam_splitter_matrix, haar_random_unitary
from .evolution import evolve, oracle_evolve, permanent, transition_amplitude
from .fock import ModeRegistry, PureState, TOLERANCE, basis_state
from .gate import (
    BALANCED_REFLECTIVITY,
    BASIS_LABELS,
    GATE_REGISTRY,
    POLARIZATION_LABELS,
    balanced_reflectivity,
    error_budget,
    gate_unitary,
    ideal_cnot,
    ideal_phase_gate,
    polarization_basis_state,
    random_product_state,
    reflectivity_scan,
    rule_equivalence,
    truth_table,
)

PROPERTY_TOL = 1e-10


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


def _naive_permanent(matrix: np.ndarray) -> complex:
    """Permutation-sum definition of the permanent; independent of the
    inclusion-exclusion implementation under test."""
    n = matrix.shape[0]
    total = 0j
    for sigma in permutations(range(n)):
        product = 1.0 + 0j
        for i in range(n):
            product *= matrix[i, sigma[i]]
        total += product
    return total


def _random_fock_state(
    registry: ModeRegistry, rng: np.random.Generator, photons: int
) -> PureState:
    occ = [0] * registry.count
    for _ in range(photons):
        occ[rng.integers(registry.count)] += 1
    return basis_state(registry, tuple(occ))


def check_permanent_against_naive(rng: np.random.Generator) -> CheckResult:
    worst = 0.0
    for n in range(1, 6):
        for _ in range(8):
            matrix = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
            worst = max(worst, abs(permanent(matrix) - _naive_permanent(matrix)))
    passed = worst <= PROPERTY_TOL * 100  # products of Gaussians grow
    return CheckResult(
        "permanent-vs-permutation-sum", passed, f"max deviation {worst:.3e}"
    )


def check_permanent_small_cases(rng: np.random.Generator) -> CheckResult:
    a, b, c, d = rng.standard_normal(4)
    ok = (
        isclose(abs(permanent(np.array([[a]])) - a), 0.0, abs_tol=TOLERANCE)
        and isclose(
            abs(permanent(np.array([[a, b], [c, d]])) - (a * d + b * c)),
            0.0,
            abs_tol=1e-10,
        )
        and isclose(abs(permanent(np.ones((3, 3))) - 6.0), 0.0, abs_tol=TOLERANCE)
    )
    return CheckResult("permanent-small-cases", ok, "1x1, 2x2, 3x3 all-ones")


def check_single_photon_lines(rng: np.random.Generator) -> CheckResult:
    """One photon on a beam splitter: stay amplitude sqrt(R), cross
    amplitude -i sqrt(1-R)."""
    worst = 0.0
    for r in rng.uniform(0.0, 1.0, size=10):
        bs = beam_splitter_matrix(float(r))
        worst = max(
            worst,
            abs(transition_amplitude(bs, (0, 1), (0, 1)) - sqrt(r)),
            abs(transition_amplitude(bs, (0, 1), (1, 0)) - (-1j * sqrt(1 - r))),
            abs(transition_amplitude(bs, (1, 0), (1, 0)) - sqrt(r)),
            abs(transition_amplitude(bs, (1, 0), (0, 1)) - (-1j * sqrt(1 - r))),
        )
    return CheckResult(
        "single-photon-convention", worst <= TOLERANCE, f"max deviation {worst:.3e}"
    )


def check_two_photon_interference(rng: np.random.Generator) -> CheckResult:
    """Two photons, one per side: coincidence amplitude 2R-1, bunched
    amplitudes -i sqrt(2R(1-R))."""
    registry = ModeRegistry(("a", "b"))
    worst = 0.0
    for r in rng.uniform(0.0, 1.0, size=10):
        out = evolve(basis_state(registry, (1, 1)), beam_splitter_matrix(float(r)))
        bunched = -1j * sqrt(2.0 * r * (1.0 - r))
        worst = max(
            worst,
            abs(out.amplitude((1, 1)) - (2.0 * r - 1.0)),
            abs(out.amplitude((2, 0)) - bunched),
            abs(out.amplitude((0, 2)) - bunched),
        )
    return CheckResult(
        "two-photon-interference", worst <= TOLERANCE, f"max deviation {worst:.3e}"
    )


def check_oracle_agreement(rng: np.random.Generator) -> CheckResult:
    worst = 0.0
    for _ in range(20):
        modes = int(rng.integers(2, 5))
        registry = ModeRegistry(tuple(f"m{i}" for i in range(modes)))
        unitary = haar_random_unitary(modes, rng)
        photons = int(rng.integers(1, 4))
        state = _random_fock_state(registry, rng, photons)
        difference = evolve(state, unitary) - oracle_evolve(state, unitary)
        worst = max(worst, sqrt(difference.norm_squared()))
    return CheckResult(
        "oracle-agreement", worst <= PROPERTY_TOL, f"max state gap {worst:.3e}"
    )


def check_norm_conservation(rng: np.random.Generator) -> CheckResult:
    worst = 0.0
    registry = ModeRegistry(("m0", "m1", "m2", "m3"))
    for _ in range(20):
        unitary = haar_random_unitary(4, rng)
        state = _random_fock_state(registry, rng, int(rng.integers(1, 4)))
        worst = max(worst, abs(evolve(state, unitary).norm_squared() - 1.0))
    return CheckResult(
        "norm-conservation", worst <= PROPERTY_TOL, f"max norm defect {worst:.3e}"
    )


def check_composition(rng: np.random.Generator) -> CheckResult:
    """Evolving by U·V equals evolving by V then U."""
    registry = ModeRegistry(("m0", "m1", "m2"))
    worst = 0.0
    for _ in range(10):
        u = haar_random_unitary(3, rng)
        v = haar_random_unitary(3, rng)
        state = _random_fock_state(registry, rng, 2)
        joint = evolve(state, u @ v)
        staged = evolve(evolve(state, v), u)
        worst = max(worst, sqrt((joint - staged).norm_squared()))
    return CheckResult(
        "composition-homomorphism", worst <= PROPERTY_TOL, f"max state gap {worst:.3e}"
    )


def check_gate_unitarity(reflectivity: float) -> CheckResult:
    matrix = gate_unitary(reflectivity).matrix
    defect = float(
        np.max(np.abs(matrix.conj().T @ matrix - np.eye(matrix.shape[0])))
    )
    return CheckResult(
        "gate-unitarity", defect <= 1e-10, f"unitarity defect {defect:.3e}"
    )


def check_budget_completeness(
    reflectivity: float, rng: np.random.Generator
) -> CheckResult:
    worst = 0.0
    for label in POLARIZATION_LABELS:
        worst = max(worst, abs(error_budget(label, reflectivity).total - 1.0))
    for _ in range(20):
        budget = error_budget(random_product_state(rng), reflectivity)
        worst = max(worst, abs(budget.total - 1.0))
    return CheckResult(
        "budget-completeness", worst <= TOLERANCE, f"max |sum - 1| {worst:.3e}"
    )


def check_rule_equivalence(
    reflectivity: float, rng: np.random.Generator
) -> CheckResult:
    report = rule_equivalence(reflectivity=reflectivity, n_random=20, rng=rng)
    worst = max(
        max(r.probability_gap for r in report.records),
        max(r.state_gap for r in report.records),
    )
    adversarial = basis_state(GATE_REGISTRY, (2, 0, 1, 0, 0, 0))
    flagged = rule_equivalence(
        inputs=[("three-photon", adversarial)], reflectivity=reflectivity
    )
    record = flagged.records[0]
    passed = report.all_equivalent and not record.in_contract
    detail = (
        f"max gap {worst:.3e}; three-photon input flagged "
        f"out-of-contract={not record.in_contract}"
    )
    return CheckResult("rule-equivalence", passed, detail)


def check_uniform_efficiency(reflectivity: float) -> CheckResult:
    """Design check: every encoded input succeeds with probability
    exactly 1/9.  Off the balanced point the probabilities spread
    apart, tracking the scan imbalance |2R-1| - R."""
    report = truth_table("phase", reflectivity)
    probabilities = report.success_probabilities
    spread = float(probabilities.max() - probabilities.min())
    worst = float(np.max(np.abs(probabilities - 1.0 / 9.0)))
    gap = reflectivity_scan([reflectivity])[0].imbalance
    passed = worst <= TOLERANCE
    return CheckResult(
        "uniform-efficiency",
        passed,
        f"max |p - 1/9| {worst:.3e}, spread {spread:.3e}, balance gap {gap:.3e}",
    )


def check_truth_tables(reflectivity: float) -> CheckResult:
    """Design check: the two encodings give exactly the balanced
    tables (diagonal phase flip; 1/3-weighted CNOT permutation)."""
    phase = truth_table("phase", reflectivity).truth_table
    cnot = truth_table("cnot", reflectivity).truth_table
    target_phase = np.diag([1.0, 1.0, 1.0, -1.0]).astype(complex) / 3.0
    target_cnot = ideal_cnot() / 3.0
    worst = max(
        float(np.max(np.abs(phase - target_phase))),
        float(np.max(np.abs(cnot - target_cnot))),
    )
    return CheckResult(
        "balanced-truth-tables", worst <= TOLERANCE, f"max entry deviation {worst:.3e}"
    )


def check_fidelity(reflectivity: float) -> CheckResult:
    """Design check: rescaled tables reach unit fidelity against the
    ideal phase gate and CNOT."""
    phase = truth_table("phase", reflectivity).fidelity
    cnot = truth_table("cnot", reflectivity).fidelity
    worst = max(abs(phase - 1.0), abs(cnot - 1.0))
    return CheckResult(
        "unit-fidelity",
        worst <= TOLERANCE,
        f"phase {phase:.12g}, cnot {cnot:.12g}",
    )


def check_balanced_solver() -> CheckResult:
    value = balanced_reflectivity()
    exact = value == 1.0 / 3.0
    grid = [i / 1000.0 for i in range(500)] + [1.0 / 3.0]
    zeros = [
        row.reflectivity
        for row in reflectivity_scan(grid)
        if abs(row.imbalance) <= TOLERANCE
    ]
    passed = exact and zeros == [1.0 / 3.0]
    return CheckResult(
        "balanced-reflectivity",
        passed,
        f"solver {value!r}, scan zeros on [0, 1/2): {zeros}",
    )


def run_all_checks(
    reflectivity: float = BALANCED_REFLECTIVITY, seed: int = 0
) -> list[CheckResult]:
    """Full battery in a fixed order; deterministic for a given seed."""
    rng = np.random.default_rng(seed)
    return [
        check_permanent_against_naive(rng),
        check_permanent_small_cases(rng),
        check_single_photon_lines(rng),
        check_two_photon_interference(rng),
        check_oracle_agreement(rng),
        check_norm_conservation(rng),
        check_composition(rng),
        check_gate_unitarity(reflectivity),
        check_budget_completeness(reflectivity, rng),
        check_rule_equivalence(reflectivity, rng),
        check_uniform_efficiency(reflectivity),
        check_truth_tables(reflectivity),
        check_fidelity(reflectivity),
        check_balanced_solver(),
    ]
