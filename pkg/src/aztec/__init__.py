"""Aztec diamond domino tilings: exact counts, arrow fields, the flip bijection
and an exact uniform sampler."""

from .arrowfield import (
    ArrowField,
    FieldCensus,
    FieldOrientation,
    NodeClass,
    census,
    classify,
    field_from_inner_tiling,
    field_from_outer_tiling,
    flip,
    line_balance,
    orientation,
    validate_field,
)
from .bijection import (
    Decomposition,
    bold_edges,
    decompose,
    horizontal_component_count,
    tilings_for_field,
    verify_recursion,
)
from .geometry import (
    AztecDiamond,
    Cell,
    NodeContext,
    Point,
    Rectangle,
    boundary_cells,
    cell_node_corners,
    interior_nodes,
    is_node,
    region_cells,
)
from .sampler import SampleSpec, grow, sample_statistics, sample_uniform
from .tiling import (
    Domino,
    Orientation,
    Tiling,
    aztec_closed_form,
    count_tilings,
    enumerate_tilings,
    horizontal_histogram,
    kasteleyn_square,
    validate_tiling,
)

__version__ = "0.1.0"

__all__ = [
    "ArrowField",
    "AztecDiamond",
    "Cell",
    "Decomposition",
    "Domino",
    "FieldCensus",
    "FieldOrientation",
    "NodeClass",
    "NodeContext",
    "Orientation",
    "Point",
    "Rectangle",
    "SampleSpec",
    "Tiling",
    "aztec_closed_form",
    "bold_edges",
    "boundary_cells",
    "cell_node_corners",
    "census",
    "classify",
    "count_tilings",
    "decompose",
    "enumerate_tilings",
    "field_from_inner_tiling",
    "field_from_outer_tiling",
    "flip",
    "grow",
    "horizontal_component_count",
    "horizontal_histogram",
    "interior_nodes",
    "is_node",
    "kasteleyn_square",
    "line_balance",
    "orientation",
    "region_cells",
    "sample_statistics",
    "sample_uniform",
    "tilings_for_field",
    "validate_field",
    "validate_tiling",
    "verify_recursion",
]

