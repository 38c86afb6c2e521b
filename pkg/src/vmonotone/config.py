"""Run configuration shared by the CLI and the verification harness."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Tuple


@dataclass(frozen=True)
class Config:
    """Precision targets and grid specs.

    ``tolerance`` replaces every check tolerance when set (useful for
    forcing the failure path of ``verify``).
    """

    quad_panels: int = 64
    quad_nodes: int = 32
    series_order: int = 120
    density_points: int = 2001
    grid_range: Optional[Tuple[float, float]] = None
    log_grid: bool = False
    output_format: str = "csv"
    seed: int = 20240611
    tolerance: Optional[float] = None
    only: Tuple[str, ...] = field(default=())

    def __post_init__(self):
        if self.quad_panels < 2 or self.quad_nodes < 1:
            raise ValueError("quadrature needs at least 2 panels and 1 node")
        if not 0 <= self.series_order <= 200:
            raise ValueError(f"series_order must be in [0, 200], got {self.series_order}")
        if self.density_points < 2:
            raise ValueError(f"grid count must be >= 2, got {self.density_points}")
        if self.tolerance is not None and not self.tolerance > 0.0:
            raise ValueError(f"tolerance must be > 0, got {self.tolerance}")
        if self.output_format not in ("csv", "json"):
            raise ValueError(f"output format must be csv or json, got {self.output_format!r}")
        if self.grid_range is not None and not self.grid_range[0] < self.grid_range[1]:
            raise ValueError(f"empty grid range {self.grid_range}")
