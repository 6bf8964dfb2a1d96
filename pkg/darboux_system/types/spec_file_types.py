from dataclasses import dataclass, field
from typing import Dict, Optional, Tuple

from darboux_system.types.system_types import SystemSpec
from expression_dsl.types.expression_nodes import Expr


@dataclass
class FileSettings:
    """
    Object representing the optional [solve], [picard] and [check] sections.
    Absent keys stay None so that CLI flags and settings.env can fill them.
    """

    halfwidth: Optional[Tuple[float, ...]] = None
    points: Optional[Tuple[int, ...]] = None
    tol: Optional[float] = None
    max_iter: Optional[int] = None
    init: Optional[str] = None
    samples: Optional[int] = None
    check_tol: Optional[float] = None
    u_radius: Optional[float] = None
    x_radius: Optional[Tuple[float, ...]] = None


@dataclass
class SystemFile:
    path: str
    system: SystemSpec
    settings: FileSettings = field(default_factory=FileSettings)


@dataclass
class ReferenceFile:
    """
    Object representing closed-form expressions per scalar component,
    used both as candidate solutions and as error references.
    """

    path: str
    expressions: Dict[str, Expr]
