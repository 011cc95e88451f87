"""Exact finite models of isometry groups: hulls, rigid metrics and the doubling classification."""

from .classify import Case, Classification, admits_left_rigid, biinvariant_only, classify
from .doubling import BasePair, DoubleStructure, double, recognize_double
from .groups import FiniteGroup, GroupAction, group_from_cayley, left_regular_action, make_action
from .hull import hull_at_identity, pair_classes, symmetrized_hull
from .metrics import RationalMetric, isometries, validate_metric
from .rigidify import RigidityReport, rigid_metric
from .zoo import ZOO_NAMES, zoo, zoo_action

__version__ = "0.1.0"
