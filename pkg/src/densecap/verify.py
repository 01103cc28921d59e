"""Seeded invariant suites behind the `verify` command.

Each suite returns named checks with the measured worst-case defect and its
tolerance; the report aggregates per-suite maxima so regressions show up as
a single number moving.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg
from .capacity import dcc_pauli_closed_form, one_shot_dcc
from .channels import (
    choi,
    covariance_defects,
    dephasing_spec,
    depolarizing_spec,
    encoding_channel,
    identity_channel,
    maximally_entangled_state,
    apply,
    apply_on_B,
    pauli_channel,
    unitary_channel,
)
from .pauli import all_indices, all_paulis, clock_z, shift_x
from .qinfo import Ensemble, ea_capacity, holevo, relative_entropy, von_neumann_entropy
from .sampling import (
    random_cptp_channel,
    random_density_matrix,
    random_pauli_product,
    random_pauli_spec,
    random_pure_ket,
)
from .simulation import (
    output_probabilities_defect,
    round_trip_ensemble,
    stretching_gap,
    verify_simulation,
)


@dataclass
class Check:
    name: str
    defect: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return self.defect <= self.tolerance

    def as_dict(self) -> dict:
        return {
            "defect": float(self.defect),
            "tolerance": self.tolerance,
            "pass": bool(self.passed),
        }


def pauli_suite(d: int, rng: np.random.Generator, trials: int) -> list[Check]:
    ops = all_paulis(d)
    eye = np.eye(d)
    unitarity = max(
        float(np.max(np.abs(u.conj().T @ u - eye))) for u in ops
    )
    omega = np.exp(2j * np.pi / d)
    x, z = shift_x(d), clock_z(d)
    weyl = float(np.max(np.abs(z @ x - omega * (x @ z))))
    phase_defect = 0.0
    for ux in ops:
        for uy in ops:
            m = ux @ uy
            nmat = uy @ ux
            c = np.trace(nmat.conj().T @ m) / d
            phase_defect = max(
                phase_defect,
                float(np.max(np.abs(m - c * nmat))),
                abs(abs(c) - 1.0),
            )
    twirl = 0.0
    for _ in range(max(1, trials // 5)):
        rho = random_density_matrix(rng, d)
        avg = sum(u @ rho @ u.conj().T for u in ops) / (d * d)
        twirl = max(twirl, float(np.max(np.abs(avg - eye / d))))
    return [
        Check("unitarity", unitarity, 1e-12),
        Check("weyl_commutation", weyl, 1e-12),
        Check("pairwise_phase_covariance", phase_defect, 1e-12),
        Check("twirl_identity", twirl, 1e-12),
    ]


def _choi_defect(e) -> float:
    c = choi(e).matrix
    d = e.dim
    herm = float(np.max(np.abs(c - c.conj().T)))
    tr = abs(float(np.trace(c).real) - 1.0)
    eigs = linalg.eigvalsh(c)
    neg = max(0.0, -float(eigs[0]))
    marg = float(
        np.max(np.abs(linalg.partial_trace(c, (d, d), "A") - np.eye(d) / d))
    )
    return max(herm, tr, neg, marg)


def channels_suite(d: int, rng: np.random.Generator, trials: int) -> list[Check]:
    tested = [identity_channel(d), pauli_channel(random_pauli_spec(rng, d))]
    if d == 2:
        tested += [
            pauli_channel(depolarizing_spec(0.3)),
            pauli_channel(dephasing_spec(0.3)),
        ]
    choi_defect = max(_choi_defect(e) for e in tested)

    e = tested[1]
    base = choi(e).matrix
    ops = all_paulis(d)
    consistency = 0.0
    spectra = 0.0
    covariance = 0.0
    ref = None
    for idx in all_indices(d):
        direct = choi(encoding_channel(e, idx)).matrix
        replayed = apply_on_B(
            e, apply_on_B(unitary_channel(ops[idx.collapsed]), base)
        )
        consistency = max(consistency, float(np.max(np.abs(direct - replayed))))
        eigs = linalg.eigvalsh(direct)
        if ref is None:
            ref = eigs
        spectra = max(spectra, float(np.max(np.abs(eigs - ref))))
    for e_t in tested:
        covariance = max(covariance, float(np.max(covariance_defects(e_t))))
    return [
        Check("choi_state_invariants", choi_defect, 1e-10),
        Check("choi_composition_consistency", consistency, 1e-12),
        Check("pauli_covariance", covariance, 1e-10),
        Check("encoding_spectra_letter_independent", spectra, 1e-10),
    ]


def qinfo_suite(d: int, rng: np.random.Generator, trials: int) -> list[Check]:
    unitary_inv = 0.0
    subadd = 0.0
    contract = 0.0
    bounds = 0.0
    klein = 0.0
    for _ in range(max(1, trials // 5)):
        rho = random_density_matrix(rng, d)
        u = random_pauli_product(rng, d)
        unitary_inv = max(
            unitary_inv,
            abs(von_neumann_entropy(u @ rho @ u.conj().T) - von_neumann_entropy(rho)),
        )
        rho_ab = random_density_matrix(rng, d * d)
        s_ab = von_neumann_entropy(rho_ab)
        s_a = von_neumann_entropy(linalg.partial_trace(rho_ab, (d, d), "A"))
        s_b = von_neumann_entropy(linalg.partial_trace(rho_ab, (d, d), "B"))
        subadd = max(subadd, s_ab - s_a - s_b)

        states = [random_density_matrix(rng, d) for _ in range(3)]
        pi = rng.dirichlet(np.ones(3))
        ens = Ensemble(list(zip(pi, states)))
        lam = random_cptp_channel(rng, d)
        mapped = Ensemble([(p, apply(lam, s)) for p, s in ens.items])
        chi_in = holevo(ens)
        chi_out = holevo(mapped)
        contract = max(contract, chi_out - chi_in)
        bounds = max(
            bounds,
            -chi_in,
            chi_in - np.log2(len(ens)),
            chi_in - np.log2(d),
        )
        sigma = random_density_matrix(rng, d)
        klein = max(
            klein,
            -relative_entropy(states[0], sigma),
            relative_entropy(states[0], states[0]),
        )
    return [
        Check("entropy_unitary_invariance", unitary_inv, 1e-10),
        Check("entropy_subadditivity", subadd, 1e-9),
        Check("holevo_contractivity", contract, 1e-9),
        Check("holevo_bounds", bounds, 1e-9),
        Check("klein_inequality", klein, 1e-9),
    ]


def capacity_suite(d: int, rng: np.random.Generator, trials: int) -> list[Check]:
    oracle = 0.0
    uniform_dev = 0.0
    dirichlet_excess = 0.0
    ordering = 0.0
    bounds = 0.0
    n = d * d
    for _ in range(max(2, trials // 10)):
        spec = random_pauli_spec(rng, d)
        e = pauli_channel(spec)
        result = one_shot_dcc(e)
        closed = dcc_pauli_closed_form(spec)
        oracle = max(oracle, abs(result.value - closed))
        uniform_dev = max(
            uniform_dev, float(np.max(np.abs(result.optimal_pi - 1.0 / n)))
        )
        ordering = max(ordering, result.value - ea_capacity(e))
        bounds = max(bounds, -result.value, result.value - 2 * np.log2(d))
        states = [
            choi(encoding_channel(e, idx)).matrix for idx in all_indices(d)
        ]
        entropies = np.array([von_neumann_entropy(s) for s in states])
        uniform_chi = _chi(np.full(n, 1.0 / n), states, entropies)
        for _ in range(20):
            pi = rng.dirichlet(np.ones(n))
            dirichlet_excess = max(
                dirichlet_excess, _chi(pi, states, entropies) - uniform_chi
            )
    return [
        Check("optimizer_matches_closed_form", oracle, 1e-6),
        Check("optimal_encoder_uniform", uniform_dev, 1e-6),
        Check("uniform_beats_dirichlet_samples", dirichlet_excess, 1e-9),
        Check("dcc_below_ea_capacity", ordering, 1e-9),
        Check("dcc_within_range", bounds, 1e-9),
    ]


def _chi(pi: np.ndarray, states: list[np.ndarray], entropies: np.ndarray) -> float:
    mixture = np.tensordot(pi, np.stack(states), axes=1)
    return von_neumann_entropy(mixture) - float(pi @ entropies)


def simulation_suite(d: int, rng: np.random.Generator, trials: int) -> list[Check]:
    spec = random_pauli_spec(rng, d)
    e = pauli_channel(spec)
    teleport = max(
        verify_simulation(identity_channel(d), max(1, trials // 10), seed=int(rng.integers(2**31))),
        verify_simulation(e, max(1, trials // 10), seed=int(rng.integers(2**31))),
    )
    uniform_prob = output_probabilities_defect(e, random_density_matrix(rng, d))

    pi = rng.dirichlet(np.ones(d * d))
    phi = maximally_entangled_state(d)
    explicit = round_trip_ensemble(e, phi, pi)
    composed = [choi(encoding_channel(e, idx)).matrix for idx in all_indices(d)]
    consistency = max(
        float(np.max(np.abs(rho - ref)))
        for (_, rho), ref in zip(explicit.items, composed)
    )
    checks = [
        Check("teleport_replay_exact", teleport, 1e-9),
        Check("bell_outcomes_uniform", uniform_prob, 1e-10),
        Check("round_trip_matches_choi_ensemble", consistency, 1e-12),
    ]
    if d == 2:
        gap = 0.0
        for _ in range(max(1, trials // 5)):
            joint = rng.dirichlet(np.ones(d**4)).reshape(d * d, d * d)
            lhs, rhs = stretching_gap(e, joint)
            gap = max(gap, lhs - rhs)
        checks.append(Check("stretching_two_letter_bound", gap, 1e-9))
    return checks


SUITES = {
    "pauli": pauli_suite,
    "channels": channels_suite,
    "qinfo": qinfo_suite,
    "capacity": capacity_suite,
    "simulation": simulation_suite,
}


def run_verification(dims: list[int], seed: int, trials: int) -> dict:
    """Run every suite for every dimension; returns a JSON-ready report."""
    rng = np.random.default_rng(seed)
    suites_report: dict = {}
    max_defects: dict = {}
    failures: list[str] = []
    for name, suite in SUITES.items():
        suites_report[name] = {}
        worst = 0.0
        for d in dims:
            checks = suite(d, rng, trials)
            suites_report[name][f"d={d}"] = {c.name: c.as_dict() for c in checks}
            for c in checks:
                worst = max(worst, c.defect)
                if not c.passed:
                    failures.append(f"{name}/d={d}/{c.name}")
        max_defects[name] = worst
    return {
        "seed": seed,
        "trials": trials,
        "dims": dims,
        "suites": suites_report,
        "max_defects": max_defects,
        "failures": failures,
        "pass": not failures,
    }
