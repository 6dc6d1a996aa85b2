from src.models.sequence import DegreeSequence, LabeledGraph, Perturbation
from src.models.region import RegionClassification, SimpleRegion
from src.models.trail import AlternatingTrail, HostileConfiguration

__all__ = [
    "AlternatingTrail",
    "DegreeSequence",
    "HostileConfiguration",
    "LabeledGraph",
    "Perturbation",
    "RegionClassification",
    "SimpleRegion",
]
