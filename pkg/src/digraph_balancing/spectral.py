"""Update-matrix construction, spectra, and convergence-rate estimation.

The balancing iteration on the per-node common weights is linear,
w[k+1] = P w[k]; the second-largest eigenvalue modulus of P sets the
geometric decay rate of the imbalance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .graph import Digraph
from .trace import RunTrace
from .validation import broadcast_param

DENSE_SOLVER_CAP = 200

#: eps values at or below this are treated as exactly converged / unusable
#: for log-slope fitting
_UNDERFLOW = 1e-14

#: moduli within this of the spectral radius count as "of maximum modulus"
#: for the primitivity verdict
_MODULUS_TOL = 1e-7


@dataclass(frozen=True)
class UpdateMatrix:
    """Dense update matrix of the balancing iteration with its gains.

    Row j has 1 - beta_j on the diagonal and beta_j / D_j^+ in column i
    for every in-neighbor i of j.
    """

    entries: np.ndarray
    beta: np.ndarray


@dataclass(frozen=True)
class SpectralReport:
    """Spectral summary of an update matrix.

    delta is the largest modulus after excluding the single eigenvalue
    closest to +1; rate = -ln(delta), with math.inf as the one-step
    contraction sentinel when delta vanishes.
    """

    moduli: np.ndarray
    rho: float
    delta: float
    rate: float
    primitive: bool


def build_update_matrix(g: Digraph, beta) -> UpdateMatrix:
    """Assemble the dense update matrix for gains beta (scalar or per-node)."""
    beta = broadcast_param(beta, g.n, "beta")
    if np.any(beta <= 0) or np.any(beta > 1):
        raise ValueError("beta values must lie in (0, 1]")
    if np.any(g.out_degrees == 0):
        raise ValueError("every node needs at least one outgoing edge")
    dplus = g.out_degrees.astype(float)
    p = np.diag(1.0 - beta) + (beta / dplus)[:, None] * g.adjacency()
    return UpdateMatrix(entries=p, beta=beta)


def spectrum(m: UpdateMatrix, cap: int = DENSE_SOLVER_CAP) -> SpectralReport:
    """Full eigenvalue moduli, spectral radius, delta, rate, and the
    primitivity verdict of an update matrix."""
    n = m.entries.shape[0]
    if n > cap:
        raise ValueError(f"matrix order {n} exceeds the dense solver cap {cap}")
    eig = np.linalg.eigvals(m.entries)
    moduli = np.abs(eig)
    order = np.argsort(moduli)[::-1]
    moduli_desc = moduli[order]
    rho = float(moduli_desc[0])
    primitive = int(np.sum(moduli >= rho - _MODULUS_TOL)) == 1
    # exclude exactly one eigenvalue: the one closest to +1 in the plane
    one_idx = int(np.argmin(np.abs(eig - 1.0)))
    rest = np.delete(moduli, one_idx)
    delta = float(rest.max()) if rest.size else 0.0
    if delta <= 1e-12:
        rate = math.inf
    elif delta >= 1.0:
        rate = 0.0
    else:
        rate = -math.log(delta)
    return SpectralReport(moduli=moduli_desc, rho=rho, delta=delta, rate=rate,
                          primitive=primitive)


def convergence_rate(report: SpectralReport) -> float:
    """Geometric rate -ln(delta); errors outside the geometric regime."""
    if report.delta <= 1e-12:
        raise ValueError("one-step contraction: delta = 0, rate is unbounded")
    if not report.primitive or report.delta >= 1.0 - 1e-9:
        raise ValueError("rate undefined: a second eigenvalue sits on the unit circle")
    return -math.log(report.delta)


def empirical_rate(
    trace: RunTrace | Sequence[float],
    tail_fraction: float = 0.5,
    metric: str = "epsilon",
) -> float:
    """Negated least-squares slope of ln(metric[k]) over the trace tail.

    The first 10 rounds are always excluded (transient), as are rounds
    with values at or below 1e-14 (underflow / exact convergence); the
    fit uses the final ``tail_fraction`` of what remains and needs at
    least 10 points.
    """
    if isinstance(trace, RunTrace):
        if metric == "ab":
            if trace.ab is None:
                raise ValueError("trace has no ab series")
            series = trace.ab
        else:
            series = trace.epsilon
    else:
        series = list(trace)
    if not (0.0 < tail_fraction <= 1.0):
        raise ValueError("tail_fraction must lie in (0, 1]")
    vals = np.asarray(series, dtype=float)
    k = np.arange(len(vals))
    usable = (k >= 10) & (vals > _UNDERFLOW)
    ks, vs = k[usable], vals[usable]
    n_tail = int(math.ceil(len(ks) * tail_fraction))
    if n_tail < 10:
        raise ValueError(
            f"too few usable points for a rate fit: tail has {n_tail}, need 10"
        )
    ks, vs = ks[-n_tail:], vs[-n_tail:]
    slope = np.polyfit(ks, np.log(vs), 1)[0]
    return float(-slope)
