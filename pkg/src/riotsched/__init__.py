"""Multi-objective cloud workflow scheduling toolkit."""

from .catalog import Catalog, VmType, default_catalog, load_catalog
from .metrics import Frontier, ObjectivePoint, hypervolume, igd, nondominated, spread
from .riot import RiotParams, riot_schedule
from .sim import Evaluation, Schedule, simulate
from .workflow import DataEdge, Task, Workflow, generate, parse_json, serialize, validate

__version__ = "0.1.0"
