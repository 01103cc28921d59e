"""CPTP maps stored as Kraus lists.

Channels are kept in Kraus form because composition and application to one
half of a bipartite state are simplest there; Choi matrices are computed on
demand and normalized to trace one, so they double as density matrices.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import linalg
from .errors import ChannelSpecError, DimensionMismatch, InvalidDistribution, NotAState
from .pauli import PauliIndex, all_paulis

COMPLETENESS_TOL = 1e-10
CHOI_TOL = 1e-10
COVARIANCE_CERT_TOL = 1e-10


@dataclass(frozen=True)
class QuantumChannel:
    """Trace-preserving channel on a d-dimensional system."""

    dim: int
    kraus: tuple

    def __post_init__(self):
        if self.dim < 2:
            raise ValueError(f"dimension must be >= 2, got {self.dim}")
        ops = tuple(linalg.as_matrix(k) for k in self.kraus)
        if not ops:
            raise ValueError("channel needs at least one Kraus operator")
        for k in ops:
            if k.shape != (self.dim, self.dim):
                raise DimensionMismatch(
                    f"Kraus operator shape {k.shape} does not match dim {self.dim}"
                )
        total = sum(k.conj().T @ k for k in ops)
        defect = float(np.max(np.abs(total - np.eye(self.dim))))
        if defect > COMPLETENESS_TOL:
            raise ValueError(
                f"Kraus completeness violated: max|sum K†K - I| = {defect:.3e}"
            )
        object.__setattr__(self, "kraus", ops)


@dataclass(frozen=True)
class PauliChannelSpec:
    """Probability table p[k, r] over the operator alphabet X^k Z^r."""

    dim: int
    probs: np.ndarray = field(repr=False)

    def __post_init__(self):
        p = np.asarray(self.probs, dtype=np.float64)
        if p.shape != (self.dim, self.dim):
            raise DimensionMismatch(
                f"probability table shape {p.shape}, expected {(self.dim, self.dim)}"
            )
        if np.any(p < 0):
            raise InvalidDistribution(
                f"negative probability {p.min():.3e} in Pauli table"
            )
        total = float(p.sum())
        if abs(total - 1.0) > 1e-12:
            raise InvalidDistribution(
                f"Pauli table probabilities sum to {total!r}, expected 1"
            )
        p = p.copy()
        p.setflags(write=False)
        object.__setattr__(self, "probs", p)

    def flat(self) -> np.ndarray:
        """Probabilities in collapsed-index order x = k*d + r."""
        return self.probs.reshape(-1)


@dataclass(frozen=True)
class ChoiMatrix:
    """State (I (x) E)(Phi) on A (x) B with the channel acting on B."""

    dim: int
    matrix: np.ndarray = field(repr=False)

    def __post_init__(self):
        m = linalg.as_matrix(self.matrix)
        d = self.dim
        if m.shape != (d * d, d * d):
            raise DimensionMismatch(
                f"Choi matrix shape {m.shape}, expected {(d * d, d * d)}"
            )
        if float(np.max(np.abs(m - m.conj().T))) > CHOI_TOL:
            raise NotAState("Choi matrix is not Hermitian within 1e-10")
        if abs(float(np.trace(m).real) - 1.0) > CHOI_TOL:
            raise NotAState("Choi matrix trace differs from 1 beyond 1e-10")
        if float(linalg.eigvalsh(m)[0]) < -CHOI_TOL:
            raise NotAState("Choi matrix has an eigenvalue below -1e-10")
        marginal = linalg.partial_trace(m, (d, d), keep="A")
        if float(np.max(np.abs(marginal - np.eye(d) / d))) > CHOI_TOL:
            raise NotAState("Choi marginal on A deviates from I/d (not trace preserving)")
        object.__setattr__(self, "matrix", m)


def maximally_entangled_ket(d: int) -> np.ndarray:
    """(1/sqrt(d)) sum_j |jj>, as a length d^2 vector."""
    phi = np.zeros(d * d, dtype=np.complex128)
    phi[:: d + 1] = 1.0 / np.sqrt(d)
    return phi


def maximally_entangled_state(d: int) -> np.ndarray:
    phi = maximally_entangled_ket(d)
    return np.outer(phi, phi.conj())


def identity_spec(d: int) -> PauliChannelSpec:
    probs = np.zeros((d, d))
    probs[0, 0] = 1.0
    return PauliChannelSpec(d, probs)


def depolarizing_spec(p: float) -> PauliChannelSpec:
    """Qubit depolarizing: keeps the state w.p. 1-3p/4, applies each of the
    three nontrivial Paulis w.p. p/4 (the Y term enters as X Z up to phase)."""
    if not 0.0 <= p <= 1.0:
        raise InvalidDistribution(f"depolarizing parameter p={p} outside [0, 1]")
    return PauliChannelSpec(2, np.array([[1 - 0.75 * p, p / 4], [p / 4, p / 4]]))


def dephasing_spec(p: float) -> PauliChannelSpec:
    """Qubit dephasing: applies Z with probability p."""
    if not 0.0 <= p <= 1.0:
        raise InvalidDistribution(f"dephasing parameter p={p} outside [0, 1]")
    return PauliChannelSpec(2, np.array([[1 - p, p], [0.0, 0.0]]))


def pauli_channel(spec: PauliChannelSpec) -> QuantumChannel:
    """Kraus list {sqrt(p_kr) X^k Z^r} over the nonzero table entries."""
    ops = all_paulis(spec.dim)
    flat = spec.flat()
    kraus = [np.sqrt(p) * ops[x] for x, p in enumerate(flat) if p > 0.0]
    return QuantumChannel(spec.dim, tuple(kraus))


def identity_channel(d: int) -> QuantumChannel:
    return QuantumChannel(d, (np.eye(d, dtype=np.complex128),))


def unitary_channel(u) -> QuantumChannel:
    u = linalg.as_matrix(u)
    return QuantumChannel(u.shape[0], (u,))


def apply(e: QuantumChannel, rho) -> np.ndarray:
    """Apply the channel: sum_k K rho K†."""
    rho = linalg.as_matrix(rho)
    if rho.shape != (e.dim, e.dim):
        raise DimensionMismatch(f"state shape {rho.shape} vs channel dim {e.dim}")
    if float(np.max(np.abs(rho - rho.conj().T))) > 1e-8:
        raise NotAState("input is not Hermitian within 1e-8")
    if abs(float(np.trace(rho).real) - 1.0) > 1e-8:
        raise NotAState("input trace differs from 1 beyond 1e-8")
    out = np.zeros_like(rho)
    for k in e.kraus:
        out += k @ rho @ k.conj().T
    return out


def apply_on_B(e: QuantumChannel, rho_ab) -> np.ndarray:
    """Apply the channel to the second factor of a bipartite matrix."""
    rho_ab = linalg.as_matrix(rho_ab)
    d = e.dim
    if rho_ab.shape[0] % d or rho_ab.shape[0] != rho_ab.shape[1]:
        raise DimensionMismatch(
            f"bipartite shape {rho_ab.shape} incompatible with channel dim {d}"
        )
    da = rho_ab.shape[0] // d
    # contract K on the B index of rho reshaped to (da, d, da, d)
    t = rho_ab.reshape(da, d, da, d)
    out = np.zeros_like(t)
    for k in e.kraus:
        kt = np.einsum("bj,ajcl->abcl", k, t)
        out += np.einsum("abcl,dl->abcd", kt, k.conj())
    return out.reshape(da * d, da * d)


def compose(e2: QuantumChannel, e1: QuantumChannel) -> QuantumChannel:
    """The channel e2 after e1, with Kraus products {K2 K1}."""
    if e1.dim != e2.dim:
        raise DimensionMismatch(f"channel dims differ: {e2.dim} vs {e1.dim}")
    kraus = tuple(k2 @ k1 for k2 in e2.kraus for k1 in e1.kraus)
    return QuantumChannel(e1.dim, kraus)


def encoding_channel(e: QuantumChannel, x: PauliIndex) -> QuantumChannel:
    """Round trip with encoder letter x: channel, Pauli, channel again."""
    if x.d != e.dim:
        raise DimensionMismatch(f"encoder dim {x.d} vs channel dim {e.dim}")
    ux = unitary_channel(all_paulis(e.dim)[x.collapsed])
    return compose(e, compose(ux, e))


def choi(e: QuantumChannel) -> ChoiMatrix:
    """Send half of a maximally entangled pair through the channel."""
    return ChoiMatrix(e.dim, apply_on_B(e, maximally_entangled_state(e.dim)))


def _choi_after_pauli(e: QuantumChannel, u: np.ndarray) -> np.ndarray:
    """Choi matrix of (E after the unitary u), without wrapper validation."""
    composed = compose(e, unitary_channel(u))
    return apply_on_B(composed, maximally_entangled_state(e.dim))


def covariance_defects(e: QuantumChannel) -> np.ndarray:
    """Pauli-covariance defect for every encoder letter.

    Entry x is the minimum over Pauli candidates U' of the trace distance
    between the Choi matrices of E∘U_x and U'∘E. A value at or below 1e-10
    certifies covariance for that letter. Candidate U' = U_x is tried first
    since it certifies every Pauli channel outright.
    """
    d = e.dim
    ops = all_paulis(d)
    candidates: dict[int, np.ndarray] = {}

    def candidate(y: int) -> np.ndarray:
        if y not in candidates:
            composed = compose(unitary_channel(ops[y]), e)
            candidates[y] = apply_on_B(composed, maximally_entangled_state(d))
        return candidates[y]

    defects = np.empty(d * d)
    for x in range(d * d):
        lhs = _choi_after_pauli(e, ops[x])
        best = np.inf
        for y in [x] + [y for y in range(d * d) if y != x]:
            best = min(best, linalg.trace_distance(lhs, candidate(y)))
            if best <= COVARIANCE_CERT_TOL:
                break
        defects[x] = best
    return defects


def covariance_defect(e: QuantumChannel, x: PauliIndex) -> float:
    """Covariance defect for a single encoder letter (see covariance_defects)."""
    if x.d != e.dim:
        raise DimensionMismatch(f"encoder dim {x.d} vs channel dim {e.dim}")
    d = e.dim
    ops = all_paulis(d)
    lhs = _choi_after_pauli(e, ops[x.collapsed])
    best = np.inf
    order = [x.collapsed] + [y for y in range(d * d) if y != x.collapsed]
    for y in order:
        composed = compose(unitary_channel(ops[y]), e)
        rhs = apply_on_B(composed, maximally_entangled_state(d))
        best = min(best, linalg.trace_distance(lhs, rhs))
        if best <= COVARIANCE_CERT_TOL:
            break
    return float(best)


def parse_channel_spec(text: str) -> tuple[str, PauliChannelSpec]:
    """Parse the channel grammar used by the command line.

    Accepted forms:
      identity d=<int>
      depolarizing p=<real>
      dephasing p=<real>
      pauli d=<int> probs=<d*d comma-separated reals in collapsed order>

    Grammar problems raise ChannelSpecError; a well-formed spec whose numbers
    violate a distribution invariant raises InvalidDistribution instead.
    """
    tokens = text.split()
    if not tokens:
        raise ChannelSpecError("empty channel specification")
    family, args = tokens[0], tokens[1:]
    kv = {}
    for tok in args:
        if "=" not in tok:
            raise ChannelSpecError(f"expected key=value, got {tok!r}")
        key, _, value = tok.partition("=")
        kv[key] = value

    def need(key: str) -> str:
        if key not in kv:
            raise ChannelSpecError(f"{family!r} requires {key}=...")
        return kv[key]

    def to_int(s: str) -> int:
        try:
            return int(s)
        except ValueError:
            raise ChannelSpecError(f"expected an integer, got {s!r}") from None

    def to_float(s: str) -> float:
        try:
            return float(s)
        except ValueError:
            raise ChannelSpecError(f"expected a number, got {s!r}") from None

    if family == "identity":
        d = to_int(need("d"))
        if d < 2:
            raise ChannelSpecError(f"identity needs d >= 2, got {d}")
        return family, identity_spec(d)
    if family == "depolarizing":
        return family, depolarizing_spec(to_float(need("p")))
    if family == "dephasing":
        return family, dephasing_spec(to_float(need("p")))
    if family == "pauli":
        d = to_int(need("d"))
        if d < 2:
            raise ChannelSpecError(f"pauli needs d >= 2, got {d}")
        raw = need("probs").split(",")
        if len(raw) != d * d:
            raise ChannelSpecError(
                f"pauli d={d} needs {d * d} probabilities, got {len(raw)}"
            )
        flat = np.array([to_float(s) for s in raw])
        return family, PauliChannelSpec(d, flat.reshape(d, d))
    raise ChannelSpecError(f"unknown channel family {family!r}")
