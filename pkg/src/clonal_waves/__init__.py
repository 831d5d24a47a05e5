"""Multi-type branching processes with random fitness increments."""
from .model import BoundedFitness, BranchingModel, UnboundedFitness, validate

__version__ = "0.1.0"

__all__ = ["BoundedFitness", "BranchingModel", "UnboundedFitness", "validate", "__version__"]
