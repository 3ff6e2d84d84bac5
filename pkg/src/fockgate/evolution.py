"""Lift mode unitaries to Fock space.

Main route: the transition amplitude between occupation vectors is a
matrix permanent,

    <out| U_hat |in> = Per(U[out, in]) / sqrt(prod_j out_j! * prod_i in_i!)

where ``U[out, in]`` repeats column ``i`` of the mode matrix ``in_i``
times and row ``j`` ``out_j`` times.  Permanents are computed with
Ryser's inclusion-exclusion formula in Gray-code order.

Cross-check route (:func:`oracle_evolve`): rewrite the input ket as a
product of creation operators, substitute each operator by its image
under the mode matrix, expand the resulting polynomial symbolically,
and read the output amplitudes off the monomials.  No permanents are
involved, so the two routes are algorithmically independent.
"""

from __future__ import annotations

import math
from typing import Iterator

import numpy as np

from .elements import ModeUnitary
from .fock import Occupations, PRUNE_THRESHOLD, PureState, total_photons

MAX_PERMANENT_SIZE = 12


def permanent(matrix) -> complex:
    """Permanent of a square complex matrix, Per(M) = sum over
    permutations of the diagonal products.

    Uses Ryser's formula with Gray-code subset ordering, O(2^n * n).
    The empty matrix has permanent 1 (empty product).
    """
    mat = np.asarray(matrix, dtype=complex)
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
        raise ValueError(f"permanent needs a square matrix, got shape {mat.shape}")
    n = mat.shape[0]
    if n > MAX_PERMANENT_SIZE:
        raise ValueError(f"matrix size {n} exceeds permanent cap {MAX_PERMANENT_SIZE}")
    if n == 0:
        return 1.0 + 0j
    if n == 1:
        return complex(mat[0, 0])

    # Ryser: Per(M) = (-1)^n * sum over non-empty column subsets S of
    # (-1)^|S| * prod_i (sum_{j in S} M[i, j]).  Gray-code ordering
    # changes one column per step, so the row sums update in O(n).
    row_sums = np.zeros(n, dtype=complex)
    total = 0j
    gray = 0
    size = 0
    for k in range(1, 1 << n):
        next_gray = k ^ (k >> 1)
        changed = next_gray ^ gray
        j = changed.bit_length() - 1
        if next_gray & changed:
            row_sums += mat[:, j]
            size += 1
        else:
            row_sums -= mat[:, j]
            size -= 1
        gray = next_gray
        sign = -1.0 if size % 2 else 1.0
        total += sign * np.prod(row_sums)
    if n % 2:
        total = -total
    return complex(total)


def transition_amplitude(unitary, input_occ: Occupations, output_occ: Occupations) -> complex:
    """Amplitude ``<output| U_hat |input>`` for a passive linear circuit.

    Returns 0 when the total photon numbers differ (photon number is
    conserved).  Raises when the repeated matrix would exceed the
    permanent size cap.
    """
    mat = unitary.matrix if isinstance(unitary, ModeUnitary) else np.asarray(unitary, dtype=complex)
    n_in = total_photons(input_occ)
    n_out = total_photons(output_occ)
    if len(input_occ) != mat.shape[1] or len(output_occ) != mat.shape[0]:
        raise ValueError("occupation length does not match the mode matrix dimension")
    if n_in != n_out:
        return 0j
    if n_in > MAX_PERMANENT_SIZE:
        raise ValueError(
            f"total photon number {n_in} exceeds permanent cap {MAX_PERMANENT_SIZE}"
        )
    if n_in == 0:
        return 1.0 + 0j

    cols = [i for i, n in enumerate(input_occ) for _ in range(n)]
    rows = [j for j, n in enumerate(output_occ) for _ in range(n)]
    repeated = mat[np.ix_(rows, cols)]
    weight = 1.0
    for n in input_occ:
        weight *= math.factorial(n)
    for n in output_occ:
        weight *= math.factorial(n)
    return permanent(repeated) / math.sqrt(weight)


def evolve(state: PureState, unitary) -> PureState:
    """Apply a mode unitary to a pure state via transition amplitudes.

    Preserves the norm, conserves total photon number, and prunes
    output amplitudes below the global threshold.
    """
    mat = unitary.matrix if isinstance(unitary, ModeUnitary) else np.asarray(unitary, dtype=complex)
    registry = state.registry
    if mat.shape[0] != registry.count:
        raise ValueError(
            f"unitary dimension {mat.shape[0]} does not match registry "
            f"with {registry.count} modes"
        )
    out_terms: dict[Occupations, complex] = {}
    for occ, amp in state.terms.items():
        n = total_photons(occ)
        if n > registry.photon_cap:
            raise ValueError(
                f"total photon number {n} exceeds per-mode cap "
                f"{registry.photon_cap}; outputs would be truncated"
            )
        for out_occ in _reachable_outputs(mat, occ, registry.photon_cap):
            contribution = amp * transition_amplitude(mat, occ, out_occ)
            if contribution != 0j:
                out_terms[out_occ] = out_terms.get(out_occ, 0j) + contribution
    return PureState(registry, out_terms)


def _reachable_outputs(mat: np.ndarray, occ: Occupations, cap: int) -> Iterator[Occupations]:
    """Occupation vectors with the input's photon total, restricted to
    modes the occupied columns actually couple to."""
    n = total_photons(occ)
    m = len(occ)
    if n == 0:
        yield (0,) * m
        return
    support = [
        j for j in range(m)
        if any(occ[i] > 0 and mat[j, i] != 0 for i in range(m))
    ]
    for filled in _compositions(n, len(support), cap):
        out = [0] * m
        for slot, count in zip(support, filled):
            out[slot] = count
        yield tuple(out)


def _compositions(total: int, slots: int, cap: int) -> Iterator[tuple[int, ...]]:
    """Non-negative integer vectors of length ``slots`` summing to
    ``total`` with every entry at most ``cap``."""
    if slots == 0:
        if total == 0:
            yield ()
        return
    for head in range(min(total, cap), -1, -1):
        for tail in _compositions(total - head, slots - 1, cap):
            yield (head,) + tail


def oracle_evolve(state: PureState, unitary) -> PureState:
    """Fock evolution by symbolic creation-operator expansion.

    Same contract as :func:`evolve`, disjoint algorithm: each photon in
    input mode ``i`` contributes a linear factor
    ``sum_j U[j, i] b_dag[j]``; the product polynomial's monomial
    ``prod_j b_dag[j]^m_j`` maps to the ket ``|m>`` with weight
    ``sqrt(prod_j m_j! / prod_i n_i!)``.
    """
    mat = unitary.matrix if isinstance(unitary, ModeUnitary) else np.asarray(unitary, dtype=complex)
    registry = state.registry
    if mat.shape[0] != registry.count:
        raise ValueError(
            f"unitary dimension {mat.shape[0]} does not match registry "
            f"with {registry.count} modes"
        )
    m = registry.count
    out_terms: dict[Occupations, complex] = {}
    for occ, amp in state.terms.items():
        if total_photons(occ) > registry.photon_cap:
            raise ValueError(
                f"total photon number {total_photons(occ)} exceeds per-mode cap "
                f"{registry.photon_cap}; outputs would be truncated"
            )
        # polynomial in the output creation operators, keyed by exponent vector
        poly: dict[Occupations, complex] = {(0,) * m: 1.0 + 0j}
        for i, n_i in enumerate(occ):
            for _ in range(n_i):
                grown: dict[Occupations, complex] = {}
                for mono, coeff in poly.items():
                    for j in range(m):
                        if mat[j, i] == 0:
                            continue
                        bumped = list(mono)
                        bumped[j] += 1
                        key = tuple(bumped)
                        grown[key] = grown.get(key, 0j) + coeff * mat[j, i]
                poly = grown
        in_weight = 1.0
        for n_i in occ:
            in_weight *= math.factorial(n_i)
        for mono, coeff in poly.items():
            out_weight = 1.0
            for m_j in mono:
                out_weight *= math.factorial(m_j)
            value = amp * coeff * math.sqrt(out_weight / in_weight)
            if abs(value) >= PRUNE_THRESHOLD or mono in out_terms:
                out_terms[mono] = out_terms.get(mono, 0j) + value
    return PureState(registry, out_terms)
