"""Constructive nine-point piercing of (4,3)-families."""
from .cases import CASE_TABLE, Classification, Token, classify, interval_order
from .curves import SupportCurve, support_line, two_component_curve
from .frame import Component, Frame, components, frame_for
from .pipeline import (
    MODES,
    ClassPartition,
    ClassResult,
    EasyResult,
    FallbackEvent,
    InvariantLog,
    PiercingCertificate,
    easy_path,
    partition_classes,
    pierce_all,
    pierce_class,
    solve_class,
)
