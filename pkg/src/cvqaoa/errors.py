"""Exception types shared across the simulator."""


class SimulationError(Exception):
    """Base class for numerical-guard failures during a simulation."""


class LeakageError(SimulationError):
    """Probability mass reached the boundary band of the periodic grid."""

    def __init__(self, mass, threshold, step=None):
        self.mass = mass
        self.threshold = threshold
        self.step = step
        where = "" if step is None else f" at step {step}"
        super().__init__(
            f"boundary mass {mass:.3e} exceeds leakage threshold "
            f"{threshold:.3e}{where}"
        )


class AliasingError(SimulationError):
    """A phase factor varies by more than pi per grid cell where the state lives."""

    def __init__(self, mass, threshold, step=None, context=""):
        self.mass = mass
        self.threshold = threshold
        self.step = step
        where = "" if step is None else f" at step {step}"
        ctx = f" ({context})" if context else ""
        super().__init__(
            f"probability mass {mass:.3e} in aliased region exceeds "
            f"{threshold:.3e}{where}{ctx}"
        )


class PhaseOverflowError(SimulationError):
    """A cost phase would exceed the meaningful-phase budget on the grid."""

    def __init__(self, max_phase, limit, term=None):
        self.max_phase = max_phase
        self.limit = limit
        self.term = term
        detail = f" (term: {term})" if term is not None else ""
        super().__init__(
            f"max phase magnitude {max_phase:.3e} rad exceeds limit "
            f"{limit:.3e}{detail}"
        )


class ConfigError(Exception):
    """Invalid experiment configuration or problem file."""
