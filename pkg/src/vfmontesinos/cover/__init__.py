from .tower import CellCount, CoverTower, build_cover_tower, cell_count, monodromy
from .curves import MarkedCurveSystem, MarkedPoint, build_curve_system
from .arcs import (
    Arc,
    ArcSystem,
    Endpoint,
    check_reoriented_angle_ranges,
    check_table_derivation,
    decompose_arcs,
    endpoints_from_angles,
    even_slot_oracle,
    reorient_curves,
    table1_endpoints,
    table2_oracle,
)
from .connectivity import ConnectivityReport, check_f1_connected
from .dot import f1_dot, incidence_dot
