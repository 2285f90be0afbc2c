from dataclasses import dataclass, replace


@dataclass(frozen=True)
class ToleranceConfig:
    """Numerical thresholds, grid sizes, retry budgets and the random seed.

    ``eps_speed`` is relative to the maximum speed of a curve, so regularity
    certificates are scale invariant. ``eps_zero`` is likewise measured
    relative to the maximum speed.
    """

    eps_speed: float = 1e-4
    eps_area: float = 1e-9
    eps_zero: float = 1e-6
    grid_refine: int = 8
    frame_count: int = 64
    retry_budget: int = 16
    rng_seed: int = 0
    n_samples: int = 1024

    def __post_init__(self):
        for name in ("eps_speed", "eps_area", "eps_zero"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be strictly positive")
        if self.grid_refine < 1:
            raise ValueError("grid_refine must be >= 1")
        if self.frame_count < 2:
            raise ValueError("frame_count must be >= 2")
        if self.retry_budget < 0:
            raise ValueError("retry_budget must be >= 0")
        if self.n_samples < 32:
            raise ValueError("n_samples must be >= 32")

    def with_(self, **kw) -> "ToleranceConfig":
        return replace(self, **kw)


DEFAULT = ToleranceConfig()
