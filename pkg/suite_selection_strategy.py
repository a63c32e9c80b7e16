import logging
from collections.abc import Iterable

import numpy as np
from opentelemetry import trace

from settings import ConfigurationError, SuiteConfig
from suites.clifford_suite import CliffordSuite
from suites.cpt_suite import CptSuite
from suites.custom_suite_base import SuiteBase, Suites
from suites.equivalence_suite import EquivalenceSuite
from suites.irreps_suite import IrrepsSuite
from suites.lattice_suite import LatticeSuite
from suites.modes_suite import ModesSuite
from suites.poincare_suite import PoincareSuite
from suites.projectors_suite import ProjectorsSuite
from suites.so4_suite import So4Suite

logger = logging.getLogger(__name__)

SUITE_REGISTRY: dict[Suites, type[SuiteBase]] = {
    Suites.CLIFFORD: CliffordSuite,
    Suites.PROJECTORS: ProjectorsSuite,
    Suites.POINCARE: PoincareSuite,
    Suites.IRREPS: IrrepsSuite,
    Suites.CPT: CptSuite,
    Suites.MODES: ModesSuite,
    Suites.LATTICE: LatticeSuite,
    Suites.SO4: So4Suite,
    Suites.EQUIVALENCE: EquivalenceSuite,
}


class SuiteSelectionStrategy:
    """Resolves suite names to suite instances in canonical order.

    Each suite draws from its own child of ``SeedSequence(seed)``, indexed by its
    position in ``Suites``, so a suite's samples do not depend on which other
    suites run alongside it.
    """

    def __init__(self, config: SuiteConfig) -> None:
        self.config = config
        self._streams = np.random.SeedSequence(config.seed).spawn(len(Suites))

    @staticmethod
    def resolve(names: Iterable[str]) -> list[Suites]:
        requested = list(names)
        valid = [s.value for s in Suites]
        unknown = [name for name in requested if name not in valid]
        if unknown:
            raise ConfigurationError(
                f"Unsupported suite: {', '.join(unknown)}. Supported suites are: {', '.join(valid)}"
            )
        return [suite for suite in Suites if suite.value in requested]

    def rng_for(self, suite: Suites) -> np.random.Generator:
        return np.random.default_rng(self._streams[list(Suites).index(suite)])

    def select(self) -> list[SuiteBase]:
        tracer = trace.get_tracer(__name__)
        with tracer.start_as_current_span("selection_strategy"):
            selected = [
                SUITE_REGISTRY[suite](self.config, self.rng_for(suite)) for suite in self.resolve(self.config.suites)
            ]
            logger.info("Selected suites: %s", ", ".join(s.name for s in selected))
            return selected
