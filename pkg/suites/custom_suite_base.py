import logging
import math
import sys
from abc import ABC, abstractmethod
from enum import Enum
from typing import TYPE_CHECKING, Any, ClassVar

import numpy as np
from opentelemetry import trace

if sys.version_info >= (3, 12):
    from typing import override  # pragma: no cover
else:
    from typing_extensions import override  # pragma: no cover

from algebra.errors import OperatorAlgebraError
from algebra.sampling import sample_momenta
from reporting.models import ReportBuilder, VerificationReport

if TYPE_CHECKING:
    from settings import SuiteConfig

logger = logging.getLogger(__name__)


class Suites(str, Enum):
    """Verification suites, in the order they run and appear in reports."""

    CLIFFORD = "clifford"
    PROJECTORS = "projectors"
    POINCARE = "poincare"
    IRREPS = "irreps"
    CPT = "cpt"
    MODES = "modes"
    LATTICE = "lattice"
    SO4 = "so4"
    EQUIVALENCE = "equivalence"


class SuiteBase(ABC):
    """One verification suite: a named group of checks driven by a config and its own RNG stream.

    Subclasses fill a ``ReportBuilder`` in ``build``; ``run`` wraps that in a span and turns a
    violated precondition into a single failing ``<suite>.error`` check instead of aborting the run.
    """

    suite: ClassVar[Suites]
    DESCRIPTION: ClassVar[str] = ""
    # Cap on momenta for the expensive subspace sweeps; None means config.samples.
    SAMPLE_CAP: ClassVar[int | None] = None

    def __init__(self, config: "SuiteConfig", rng: np.random.Generator) -> None:
        self.config = config
        self.rng = rng

    @property
    def name(self) -> str:
        return self.suite.value

    @property
    def samples(self) -> int:
        if self.SAMPLE_CAP is None:
            return self.config.samples
        return min(self.config.samples, self.SAMPLE_CAP)

    def momenta(self, count: int | None = None, scale_range: tuple[float, float] | None = None) -> np.ndarray:
        """Momenta from this suite's stream, over the configured scale range unless overridden."""
        return sample_momenta(
            self.rng,
            count if count is not None else self.config.samples,
            scale_range if scale_range is not None else self.config.momentum_scale_range,
        )

    def environment(self) -> dict[str, Any]:
        return {"seed": self.config.seed, "samples": self.config.samples, "suite": self.name}

    @abstractmethod
    def build(self, builder: ReportBuilder) -> None:
        """Add this suite's checks, tables and notes to ``builder``."""

    def run(self) -> VerificationReport:
        tracer = trace.get_tracer(__name__)
        with tracer.start_as_current_span(f"suite.{self.name}") as span:
            span.set_attribute("suite.samples", self.config.samples)
            builder = ReportBuilder(self.name)
            try:
                self.build(builder)
            except OperatorAlgebraError as exc:
                logger.error("Suite %s stopped on a violated precondition: %s", self.name, exc)
                builder.add(f"{self.name}.error", math.inf, 0.0, note=f"{type(exc).__name__}: {exc}")
            report = builder.build(self.environment())
            span.set_attribute("suite.checks", report.summary.total)
            span.set_attribute("suite.unexpected", report.summary.unexpected)
        logger.info(
            "Suite %s: %d checks, %d expected failures, %d unexpected",
            self.name,
            report.summary.total,
            report.summary.expected_failures,
            report.summary.unexpected,
        )
        return report

    @override
    def __repr__(self) -> str:
        return f"{type(self).__name__}(seed={self.config.seed}, samples={self.config.samples})"
