"""Cost functions as composable analytic terms with exact gradients.

A cost is a sum of terms: multivariate monomials, quadratic equality
penalties, swish-rectified inequality penalties, tanh sign-surrogate
plateaus for binary polynomials, and the double-well lattice that confines
a state to the well positions encoding bits.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .errors import PhaseOverflowError

MAX_PHASE_RADIANS = 1e12


def _sigmoid(u):
    # tanh form avoids exp overflow for large |u|
    return 0.5 * (1.0 + np.tanh(0.5 * u))


def swish(u):
    """xi(u) = u * sigmoid(u), smooth rectifier."""
    return u * _sigmoid(u)


def swish_prime(u):
    s = _sigmoid(u)
    return s + u * s * (1.0 - s)


@dataclass(frozen=True)
class PolynomialTerm:
    """coefficient * prod_i x_i^exponents[i]."""

    coefficient: float
    exponents: tuple[int, ...]

    def __post_init__(self):
        if any(e < 0 for e in self.exponents):
            raise ValueError("exponents must be nonnegative")

    def value(self, xs):
        out = self.coefficient
        for x, e in zip(xs, self.exponents):
            if e:
                out = out * x ** e
        return out

    def partial(self, xs, j):
        e_j = self.exponents[j]
        if e_j == 0:
            return 0.0
        out = self.coefficient * e_j
        for i, (x, e) in enumerate(zip(xs, self.exponents)):
            p = e - 1 if i == j else e
            if p:
                out = out * x ** p
        return out


@dataclass(frozen=True)
class Polynomial:
    """Sum of monomials in N variables."""

    terms: tuple[PolynomialTerm, ...]

    def value(self, xs):
        return sum(t.value(xs) for t in self.terms)

    def partial(self, xs, j):
        return sum(t.partial(xs, j) for t in self.terms)


@dataclass(frozen=True)
class EqualityPenalty:
    """lam * (g(x) - c)^2; gradient vanishes on the constraint manifold."""

    g: Polynomial
    c: float
    lam: float

    def __post_init__(self):
        if self.lam < 0:
            raise ValueError("lambda must be nonnegative")

    def value(self, xs):
        return self.lam * (self.g.value(xs) - self.c) ** 2

    def partial(self, xs, j):
        return 2.0 * self.lam * (self.g.value(xs) - self.c) * self.g.partial(xs, j)


@dataclass(frozen=True)
class InequalityPenalty:
    """swish(beta * (d - h(x))): enforces h(x) >= d softly."""

    h: Polynomial
    d: float
    beta: float

    def __post_init__(self):
        if self.beta <= 0:
            raise ValueError("beta must be positive")

    def _arg(self, xs):
        return self.beta * (self.d - self.h.value(xs))

    def value(self, xs):
        return swish(self._arg(xs))

    def partial(self, xs, j):
        return swish_prime(self._arg(xs)) * (-self.beta) * self.h.partial(xs, j)


@dataclass(frozen=True)
class PuboPlateau:
    """alpha * prod_{j in support} tanh(beta * x_j)."""

    alpha: float
    support: tuple[int, ...]
    beta: float

    def __post_init__(self):
        if self.beta <= 0:
            raise ValueError("beta must be positive")
        if any(b not in (0, 1) for b in self.support):
            raise ValueError("support must be a bit vector")

    def value(self, xs):
        out = self.alpha
        for x, b in zip(xs, self.support):
            if b:
                out = out * np.tanh(self.beta * x)
        return out

    def partial(self, xs, j):
        if not self.support[j]:
            return 0.0
        t_j = np.tanh(self.beta * xs[j])
        out = self.alpha * self.beta * (1.0 - t_j ** 2)
        for i, (x, b) in enumerate(zip(xs, self.support)):
            if b and i != j:
                out = out * np.tanh(self.beta * x)
        return out


@dataclass(frozen=True)
class DoubleWell:
    """sum_j (omega^2 / 2) (x_j^2 - lam_w^2)^2: wells at x_j = +-lam_w."""

    omega: float
    lam_w: float

    def __post_init__(self):
        if self.omega <= 0 or self.lam_w <= 0:
            raise ValueError("omega and lam_w must be positive")

    def value(self, xs):
        w2 = 0.5 * self.omega ** 2
        out = 0.0
        for x in xs:
            out = out + w2 * (x ** 2 - self.lam_w ** 2) ** 2
        return out

    def partial(self, xs, j):
        return 2.0 * self.omega ** 2 * xs[j] * (xs[j] ** 2 - self.lam_w ** 2)


@dataclass(frozen=True)
class CostSpec:
    """Composite cost f(x) = sum of terms, with exact analytic gradient."""

    dimension: int
    terms: tuple

    def __post_init__(self):
        for t in self.terms:
            for exps in _term_exponent_vectors(t):
                if len(exps) != self.dimension:
                    raise ValueError(
                        "term exponent length does not match dimension")
            if isinstance(t, PuboPlateau) and len(t.support) != self.dimension:
                raise ValueError("plateau support length does not match dimension")

    def evaluate(self, xs):
        """Cost at a point (length-N sequence of scalars) or broadcast arrays."""
        xs = list(xs)
        if len(xs) != self.dimension:
            raise ValueError(f"expected {self.dimension} coordinates, got {len(xs)}")
        out = 0.0
        for t in self.terms:
            out = out + t.value(xs)
        return out

    def gradient(self, xs):
        """Exact analytic gradient, one entry (scalar or array) per axis."""
        xs = list(xs)
        if len(xs) != self.dimension:
            raise ValueError(f"expected {self.dimension} coordinates, got {len(xs)}")
        return [sum(t.partial(xs, j) for t in self.terms)
                for j in range(self.dimension)]

    def evaluate_point(self, x) -> float:
        return float(self.evaluate(list(np.asarray(x, dtype=float))))

    def gradient_point(self, x) -> np.ndarray:
        return np.array(self.gradient(list(np.asarray(x, dtype=float))),
                        dtype=float)


def _term_exponent_vectors(term):
    if isinstance(term, PolynomialTerm):
        yield term.exponents
    elif isinstance(term, (EqualityPenalty,)):
        for t in term.g.terms:
            yield t.exponents
    elif isinstance(term, InequalityPenalty):
        for t in term.h.terms:
            yield t.exponents


def validate_on_grid(cost: CostSpec, grid, eta_max: float = 1.0,
                     limit: float = MAX_PHASE_RADIANS) -> None:
    """Reject costs whose phase eta*f overflows or is non-finite on the grid.

    Checks every grid corner plus the origin cell; raises PhaseOverflowError.
    """
    corners = itertools.product(*[(-a.half_extent,
                                   a.half_extent - a.spacing)
                                  for a in grid.axes])
    worst = 0.0
    for x in corners:
        v = cost.evaluate_point(x)
        if not np.isfinite(v):
            raise PhaseOverflowError(float("inf"), limit)
        worst = max(worst, abs(v))
    if abs(eta_max) * worst > limit:
        raise PhaseOverflowError(abs(eta_max) * worst, limit)


def styblinski_tang(n: int) -> CostSpec:
    """f(x) = (1/2) sum_i (x_i^4 - 16 x_i^2 + 5 x_i)."""
    if n < 1:
        raise ValueError("dimension must be >= 1")
    terms = []
    for i in range(n):
        for coeff, power in ((0.5, 4), (-8.0, 2), (2.5, 1)):
            exps = [0] * n
            exps[i] = power
            terms.append(PolynomialTerm(coeff, tuple(exps)))
    return CostSpec(n, tuple(terms))


def polynomial_cost(terms, n: int) -> CostSpec:
    """CostSpec from (coefficient, exponent-vector) pairs."""
    return CostSpec(n, tuple(PolynomialTerm(float(c), tuple(int(e) for e in exps))
                             for c, exps in terms))


def equality_penalty(g: Polynomial, c: float, lam: float) -> EqualityPenalty:
    return EqualityPenalty(g, float(c), float(lam))


def inequality_penalty(h: Polynomial, d: float, beta: float) -> InequalityPenalty:
    return InequalityPenalty(h, float(d), float(beta))


DEFAULT_PUBO_BETA = 2.0
DEFAULT_PUBO_OMEGA = 1.0
DEFAULT_PUBO_LAMBDA = 1.5


def pubo_encode(binary_terms, n: int,
                beta: float = DEFAULT_PUBO_BETA,
                omega: float = DEFAULT_PUBO_OMEGA,
                lam_w: float = DEFAULT_PUBO_LAMBDA) -> CostSpec:
    """Encode a binary polynomial sum_b alpha_b * Z^b into the continuum.

    Each Z_j becomes tanh(beta x_j); a per-axis double well at +-lam_w keeps
    the state on the bit lattice (left well x<0 encodes bit 1).
    """
    if beta <= 0 or omega <= 0 or lam_w <= 0:
        raise ValueError("beta, omega, lam_w must be positive")
    terms = []
    for alpha, support in binary_terms:
        support = tuple(int(b) for b in support)
        if len(support) != n:
            raise ValueError(
                f"support length {len(support)} does not match dimension {n}")
        terms.append(PuboPlateau(float(alpha), support, beta))
    terms.append(DoubleWell(omega, lam_w))
    return CostSpec(n, tuple(terms))


def decode_bits(x) -> tuple[int, ...]:
    """bit_j = 1 iff x_j < 0 (left well); exactly 0 decodes to bit 0."""
    return tuple(1 if v < 0 else 0 for v in np.asarray(x, dtype=float))


def binary_cost(binary_terms, bits) -> float:
    """Exact binary polynomial value with Z_j = +1 for bit 0, -1 for bit 1."""
    z = [1.0 - 2.0 * b for b in bits]
    total = 0.0
    for alpha, support in binary_terms:
        prod = alpha
        for zj, bj in zip(z, support):
            if bj:
                prod *= zj
        total += prod
    return total


def brute_force_minimum(binary_terms, n: int):
    """(min value, list of minimizing bitstrings) by exhaustive enumeration."""
    best = None
    argmins = []
    for bits in itertools.product((0, 1), repeat=n):
        v = binary_cost(binary_terms, bits)
        if best is None or v < best - 1e-12:
            best, argmins = v, [bits]
        elif abs(v - best) <= 1e-12:
            argmins.append(bits)
    return best, argmins
