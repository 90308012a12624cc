"""Finite-window weight sequences estimating a signal's value and derivatives.

The construction treats the signal on a sliding window as a degree-N
polynomial observed through noise. Writing the window on normalized time
u in [0, 1], an operational-calculus elimination (differentiate the
transform-domain identity, then integrate enough times that every term
becomes a genuine window integral) produces one integral equation per
derivative order:

    integral_0^1 P_a(u) x(u) du  =  sum_{v <= N-a} B[a, v] x^(v)(0),

a triangular linear system in the derivatives x^(v)(0). Solving it yields
density polynomials q_v with the reproducing property

    integral_0^1 q_v(u) u^d du = v! * delta_{v d}   for d <= N,

so x^(v)(0) = integral q_v(u) x(u) du holds exactly for polynomial x. The
densities are derived in exact rational arithmetic, discretized on the W
sample offsets, and the discrete weights are then projected onto the
affine set of weight sequences that reproduce monomials up to degree N
exactly (minimum-norm correction), so discrete exactness is tight.

Weights are causal: weight j multiplies the sample at offset
tau_j = (j - W + 1) * spacing, and the estimate refers to the newest
sample (the window's right edge).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial

import numpy as np

_COND_LIMIT = 1e12


@dataclass(frozen=True)
class EstimatorSpec:
    """Parameters pinning one estimator family.

    Attributes:
        degree: polynomial order N of the local signal model (>= 0).
        window: window length W in samples; must exceed degree + 1.
        spacing: sample interval in time units (> 0).
        smoothing: extra integration count kappa (>= 1); higher values
            trade sharpness for smoother densities.
    """

    degree: int = 2
    window: int = 21
    spacing: float = 1.0
    smoothing: int = 1

    def __post_init__(self) -> None:
        if not isinstance(self.degree, int) or self.degree < 0:
            raise ValueError(f"degree must be a non-negative integer, got {self.degree!r}")
        if not isinstance(self.window, int) or self.window <= self.degree + 1:
            raise ValueError(
                f"underdetermined: window must exceed degree + 1, got window={self.window!r} "
                f"for degree {self.degree}"
            )
        if not self.spacing > 0:
            raise ValueError(f"spacing must be positive, got {self.spacing!r}")
        if not isinstance(self.smoothing, int) or self.smoothing < 1:
            raise ValueError(f"smoothing must be an integer >= 1, got {self.smoothing!r}")


@dataclass(frozen=True)
class KernelBank:
    """Weight sequences w_0 .. w_N for one EstimatorSpec.

    weights[v][j] multiplies the sample at offset (j - W + 1) * spacing;
    the dot product estimates the v-th derivative at the newest sample.
    noise_gains[v] is the Euclidean norm of w_v: independent zero-mean
    noise of standard deviation s on the samples gives estimator output
    noise of standard deviation exactly noise_gains[v] * s.
    """

    spec: EstimatorSpec
    weights: tuple[np.ndarray, ...]
    noise_gains: tuple[float, ...]

    @property
    def offsets(self) -> np.ndarray:
        """Sample offsets tau_j = (j - W + 1) * spacing, oldest first."""
        w = self.spec.window
        return (np.arange(w) - (w - 1)) * self.spec.spacing

    def estimate(self, values: np.ndarray, order: int) -> float:
        """Apply the order-th kernel to one window of samples.

        Args:
            values: the W window samples, oldest first.
            order: derivative order, 0 <= order <= degree.

        Returns:
            The estimated order-th derivative at the newest sample.
        """
        if not 0 <= order <= self.spec.degree:
            raise ValueError(f"order must be in 0..{self.spec.degree}, got {order}")
        values = np.asarray(values, dtype=float)
        if values.shape != (self.spec.window,):
            raise ValueError(
                f"expected {self.spec.window} window samples, got shape {values.shape}"
            )
        return float(self.weights[order] @ values)


def _density_polynomials(degree: int, margin: int) -> list[list[Fraction]]:
    """Exact-rational density polynomials q_0 .. q_N on u in [0, 1].

    margin is the integration margin m (>= 2): every equation term is a
    window integral of a polynomial density times the signal.
    """
    n = degree
    m = margin

    def poly_mul(a, b):
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
        return out

    def poly_add(a, b):
        size = max(len(a), len(b))
        return [
            (a[i] if i < len(a) else Fraction(0)) + (b[i] if i < len(b) else Fraction(0))
            for i in range(size)
        ]

    def one_minus_u_pow(p):
        return [Fraction((-1) ** k * comb(p, k)) for k in range(p + 1)]

    def u_pow(p):
        return [Fraction(0)] * p + [Fraction(1)]

    # Left-hand-side densities P_a, one integral equation per order a.
    densities_p = []
    for a in range(n + 1):
        p = [Fraction(0)]
        for j in range(a + 1):
            c = Fraction(
                comb(a, j) * factorial(n + 1),
                factorial(n + 1 - j) * factorial(m - 2 + j),
            ) * (-1) ** (a - j)
            term = [c * x for x in poly_mul(one_minus_u_pow(m - 2 + j), u_pow(a - j))]
            p = poly_add(p, term)
        densities_p.append(p)

    # Right-hand-side coefficients; B[a][v] multiplies x^(v)(0) in equation a
    # and vanishes for v > n - a, which makes the system triangular.
    b = [[Fraction(0)] * (n + 1) for _ in range(n + 1)]
    for a in range(n + 1):
        for v in range(n - a + 1):
            b[a][v] = Fraction(
                factorial(n - v), factorial(n - v - a) * factorial(m + v + a - 1)
            )

    # Back-substitute from a = n downward: equation n-v isolates x^(v)(0).
    gamma = [[Fraction(0)] * (n + 1) for _ in range(n + 1)]
    for v in range(n + 1):
        a = n - v
        g = [Fraction(0)] * (n + 1)
        g[a] = Fraction(1)
        for k in range(v):
            for a2 in range(n + 1):
                g[a2] -= b[a][k] * gamma[k][a2]
        gamma[v] = [gi / b[a][v] for gi in g]

    qs = []
    for v in range(n + 1):
        q = [Fraction(0)]
        for a in range(n + 1):
            q = poly_add(q, [gamma[v][a] * x for x in densities_p[a]])
        qs.append(q)

    # Reproducing property, checked in exact arithmetic.
    for v in range(n + 1):
        for d in range(n + 1):
            got = sum(c * Fraction(1, k + d + 1) for k, c in enumerate(qs[v]))
            want = Fraction(factorial(v)) if d == v else Fraction(0)
            if got != want:
                raise AssertionError(f"density reproducing property failed at v={v}, d={d}")
    return qs


def build_kernel_bank(spec: EstimatorSpec) -> KernelBank:
    """Construct the weight sequences for one EstimatorSpec.

    The continuous densities fix the kernel family; discretization on the
    W offsets with uniform du scaling gives raw weights; a minimum-norm
    projection onto the discrete exactness constraints removes the
    quadrature bias, so every monomial of degree <= N is reproduced at
    every derivative order to machine precision.

    Raises:
        ValueError: spec invalid, or the exactness system is too
            ill-conditioned to solve reliably.
    """
    n, w = spec.degree, spec.window
    dt = spec.spacing
    qs = _density_polynomials(n, spec.smoothing + 1)

    horizon = (w - 1) * dt
    u = (w - 1 - np.arange(w)) / (w - 1)  # u_j pairs offset tau_j with window time
    du = 1.0 / (w - 1)
    scaled = (np.arange(w) - (w - 1)) / (w - 1)  # tau_j / horizon, in [-1, 0]

    # Exactness constraints in scaled coordinates: A^T w_v = rhs_v where
    # rhs_v[d] = v! / horizon^v at d = v, else 0.
    a_mat = np.vander(scaled, n + 1, increasing=True)
    q_fact, r_fact = np.linalg.qr(a_mat)
    cond = np.linalg.cond(r_fact)
    if not np.isfinite(cond) or cond > _COND_LIMIT:
        raise ValueError(
            f"exactness system too ill-conditioned (cond {cond:.3g}) for degree {n}, "
            f"window {w}"
        )

    weights = []
    gains = []
    for v in range(n + 1):
        coeffs = np.array([float(c) for c in qs[v]])
        density = np.polynomial.polynomial.polyval(u, coeffs)
        raw = ((-1.0) ** v) * density * du / horizon**v
        rhs = np.zeros(n + 1)
        rhs[v] = factorial(v) / horizon**v
        resid = a_mat.T @ raw - rhs
        w_v = raw - q_fact @ np.linalg.solve(r_fact.T, resid)
        w_v.setflags(write=False)
        weights.append(w_v)
        gains.append(float(np.linalg.norm(w_v)))

    bank = KernelBank(spec=spec, weights=tuple(weights), noise_gains=tuple(gains))
    _verify_exactness(bank)
    return bank


def _verify_exactness(bank: KernelBank) -> None:
    # Defensive check of the discrete reproducing property after projection.
    n = bank.spec.degree
    tau = bank.offsets
    for v in range(n + 1):
        for d in range(n + 1):
            got = bank.weights[v] @ tau**d
            want = float(factorial(v)) if d == v else 0.0
            scale = max(1.0, abs(want), float(np.abs(bank.weights[v] * tau**d).sum()))
            if abs(got - want) > 1e-9 * scale:
                raise ValueError(
                    f"exactness violated at order {v}, degree {d}: got {got}, want {want}"
                )


def kernel_noise_gain(bank: KernelBank, order: int) -> float:
    """Euclidean norm of the order-th weight sequence.

    For independent zero-mean noise of standard deviation s added to the
    window samples, the estimator output noise has standard deviation
    exactly gain * s.
    """
    if not 0 <= order <= bank.spec.degree:
        raise ValueError(f"order must be in 0..{bank.spec.degree}, got {order}")
    return float(np.linalg.norm(bank.weights[order]))


def emit_weights(bank: KernelBank) -> str:
    """Weights as delimiter-separated text: offset, w_0, ..., w_N per row."""
    header = "offset," + ",".join(f"w_{v}" for v in range(bank.spec.degree + 1))
    lines = [header]
    for j, tau in enumerate(bank.offsets):
        row = [repr(float(tau))] + [repr(float(w[j])) for w in bank.weights]
        lines.append(",".join(row))
    return "\n".join(lines) + "\n"
