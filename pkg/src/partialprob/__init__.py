from .formula import parse
from .lattice import FiniteLattice
from .dmf import DmfAlgebra
from .partial_set import PartialField, PartialMeasure, PartialSet, TValue
from .sentences import SentenceProbability, WorldWeights
