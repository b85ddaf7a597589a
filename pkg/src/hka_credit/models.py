"""Domain models for hka-credit."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import Any, Iterator, Mapping, Optional, Tuple

import numpy as np

from .config import Config
from .errors import ModelDomainError
from .timechange import TimeChange


class _MappingMixin(Mapping[str, Any]):
    """Allow dataclasses to behave like read-only mappings for tabular access."""

    def __getitem__(self, key: str) -> Any:  # pragma: no cover - trivial
        return asdict(self)[key]

    def __iter__(self) -> Iterator[str]:  # pragma: no cover - trivial
        return iter(asdict(self).keys())

    def __len__(self) -> int:  # pragma: no cover - trivial
        return len(asdict(self))


# ---------------------------------------------------------------------------
# Model core
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class QuadraticModelParams(_MappingMixin):
    """Quadratic Gaussian killed-HKA model: V(x) = beta^2 |x|^2 / 2 on a d-dim Wiener state."""

    beta: float
    dim: int
    x0: Tuple[float, ...]
    time_change: TimeChange
    horizon: float = Config.DEFAULT_HORIZON

    def __post_init__(self) -> None:
        beta = float(self.beta)
        if not math.isfinite(beta) or beta < 0.0:
            raise ModelDomainError("model.beta", f"must be finite and non-negative, got {beta!r}")
        if isinstance(self.dim, bool) or int(self.dim) != self.dim or self.dim < 1:
            raise ModelDomainError("model.dim", f"must be a positive integer, got {self.dim!r}")
        x0 = tuple(float(v) for v in np.atleast_1d(np.asarray(self.x0, dtype=float)))
        if len(x0) != int(self.dim):
            raise ModelDomainError(
                "model.x0", f"expected {int(self.dim)} components, got {len(x0)}"
            )
        if not all(math.isfinite(v) for v in x0):
            raise ModelDomainError("model.x0", "components must be finite")
        object.__setattr__(self, "beta", beta)
        object.__setattr__(self, "dim", int(self.dim))
        object.__setattr__(self, "x0", x0)
        object.__setattr__(self, "horizon", float(self.horizon))
        self.time_change.validate(self.horizon)

    @property
    def x_norm_sq(self) -> float:
        """Squared Euclidean norm of the start point; the closed forms depend on x only through it."""
        return math.fsum(v * v for v in self.x0)

    def lam(self, t: float) -> float:
        try:
            value = float(self.time_change(t))
        except OverflowError:
            value = math.inf
        if not math.isfinite(value):
            raise ModelDomainError("model.lambda", f"time change overflows at t = {t!r}")
        return value

    def with_state(self, x0) -> "QuadraticModelParams":
        """Same model observed at a different state (valuation at t > 0)."""
        return QuadraticModelParams(self.beta, self.dim, tuple(x0), self.time_change, self.horizon)

    def with_beta(self, beta: float) -> "QuadraticModelParams":
        return QuadraticModelParams(beta, self.dim, self.x0, self.time_change, self.horizon)


@dataclass(frozen=True)
class PropagatorValue(_MappingMixin):
    """A propagator or Laplace-functional evaluation, held in log space."""

    log_value: float

    @property
    def value(self) -> float:
        return math.exp(self.log_value)

    def __float__(self) -> float:
        return self.value


# ---------------------------------------------------------------------------
# Pricing
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BondQuote(_MappingMixin):
    """Zero coupon bond price at valuation time t for maturity T."""

    t: float
    maturity: float
    price: float
    survived: bool = True
    defaultable: bool = False


@dataclass(frozen=True)
class SpreadPoint(_MappingMixin):
    """Instantaneous credit spread at maturity T."""

    maturity: float
    spread: float


# ---------------------------------------------------------------------------
# Monte Carlo
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class McConfig(_MappingMixin):
    """Monte Carlo run parameters; n_steps is the total number of grid intervals."""

    n_paths: int = Config.MC_DEFAULT_PATHS
    n_steps: int = Config.MC_DEFAULT_STEPS
    seed: int = Config.MC_DEFAULT_SEED
    antithetic: bool = False

    def __post_init__(self) -> None:
        if int(self.n_paths) != self.n_paths or self.n_paths < 2:
            raise ModelDomainError("mc.n_paths", f"must be an integer >= 2, got {self.n_paths!r}")
        if int(self.n_steps) != self.n_steps or self.n_steps < 2:
            raise ModelDomainError("mc.n_steps", f"must be an integer >= 2, got {self.n_steps!r}")
        if int(self.seed) != self.seed or not 0 <= self.seed < 2 ** 64:
            raise ModelDomainError("mc.seed", f"must be a 64-bit unsigned integer, got {self.seed!r}")
        if self.antithetic and (self.n_paths % 2 or self.n_paths < 4):
            raise ModelDomainError("mc.n_paths", "antithetic runs need an even number of paths >= 4")
        object.__setattr__(self, "n_paths", int(self.n_paths))
        object.__setattr__(self, "n_steps", int(self.n_steps))
        object.__setattr__(self, "seed", int(self.seed))
        object.__setattr__(self, "antithetic", bool(self.antithetic))


@dataclass(frozen=True)
class McEstimate(_MappingMixin):
    """Point estimate with its standard error over n_effective i.i.d. samples."""

    mean: float
    std_error: float
    n_effective: int

    def z_score(self, reference: float) -> float:
        """Standardised distance of the estimate from a reference value."""
        diff = self.mean - reference
        if self.std_error == 0.0:
            return 0.0 if abs(diff) <= Config.TIE_TOLERANCE else math.copysign(math.inf, diff)
        return diff / self.std_error


@dataclass(frozen=True, eq=False)
class DefaultScenario:
    """One simulated state path with its integrated hazard and Cox default time."""

    grid: np.ndarray
    state_path: np.ndarray
    integrated_hazard: np.ndarray
    default_time: float = math.inf

    def __post_init__(self) -> None:
        for name in ("grid", "state_path", "integrated_hazard"):
            array = np.array(getattr(self, name), dtype=float)
            array.setflags(write=False)
            object.__setattr__(self, name, array)

    @property
    def defaulted(self) -> bool:
        return math.isfinite(self.default_time)

    def survived_to(self, t: float) -> bool:
        return self.default_time > t


# ---------------------------------------------------------------------------
# Curves
# ---------------------------------------------------------------------------

CURVE_KINDS = ("yield", "spread", "price", "forward")


@dataclass(frozen=True)
class Curve(_MappingMixin):
    """Labelled term structure: strictly increasing maturities with finite values."""

    label: str
    points: Tuple[Tuple[float, float], ...]
    kind: str

    def __post_init__(self) -> None:
        if self.kind not in CURVE_KINDS:
            raise ModelDomainError("curve.kind", f"unknown kind {self.kind!r}")
        points = tuple((float(m), float(v)) for m, v in self.points)
        for (m0, _), (m1, _) in zip(points, points[1:]):
            if not m1 > m0:
                raise ModelDomainError("curve.points", "maturities must be strictly increasing")
        if not all(math.isfinite(v) for _, v in points):
            raise ModelDomainError("curve.points", f"non-finite value in curve {self.label!r}")
        object.__setattr__(self, "points", points)

    @property
    def maturities(self) -> Tuple[float, ...]:
        return tuple(m for m, _ in self.points)

    @property
    def values(self) -> Tuple[float, ...]:
        return tuple(v for _, v in self.points)


@dataclass(frozen=True)
class ShapeReport(_MappingMixin):
    """Monotonicity and hump diagnostics of a curve."""

    monotone_nondecreasing: bool
    monotone_nonincreasing: bool
    hump_at: Optional[float] = None
    crossings: int = 0
