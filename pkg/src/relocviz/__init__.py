"""relocviz: flow-map visualization of periodic relocations between buildings.

The pipeline: three text files (vectorized map polygons, color-to-building
map, periodic relocation matrices) join into an immutable Dataset; a
ViewState (time window, threshold, selection, armed building) compiles into
a layered Scene; the Scene serializes to JSON for the interactive UI or to a
static SVG.
"""

from .arcs import ArcParams, ArcPath, arrowhead, discrete_curvature, spiral_arc
from .colors import Color
from .dataset import (
    Building,
    ColorMap,
    Dataset,
    DatasetError,
    ParseError,
    PolygonSet,
    RelocationSeries,
    building_anchor,
    format_color_map,
    format_polygon_file,
    format_relocation_file,
    load_dataset,
    parse_color_map,
    parse_polygon_file,
    parse_relocation_file,
)
from .engine import (
    AggregateMatrix,
    Link,
    SummaryCard,
    TimeWindow,
    aggregate,
    building_summary,
    period_totals,
    shift_window,
    visible_links,
)
from .geometry import Polygon
from .raster import RasterImage, parse_ppm, write_ppm
from .scene import (
    Scene,
    ViewState,
    ViewStateError,
    compile_scene,
    scene_digest,
    scene_to_dict,
    scene_to_json,
    scene_to_svg,
)
from .styling import StyleParams, arc_thickness, attention_level, context_color, histogram_height, layer_of, saturation
from .vectorize import PixelRegion, extract_regions, rasterize, simplify_collinear, trace_boundary, vectorize

__version__ = "0.1.0"
