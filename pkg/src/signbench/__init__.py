"""signbench: a SignWriting composition workbench.

Library surface in one import: glyph catalogs and their manifests,
composed-sign documents with canonical XML, movement-lattice
completion, sketch-based glyph recognition, acceptability verdicts,
and the persistent store behind the HTTP service and CLI.
"""

from .acceptability import (
    FAIL,
    PASS,
    WARN,
    CheckResult,
    PlacementContext,
    RuleSet,
    Verdict,
    check_coherence,
    check_legibility,
    check_utility,
    evaluate,
    parse_ruleset,
)
from .closure import (
    ClosureReport,
    MotionLattice,
    closure,
    closure_report,
    format_grid,
    format_records,
    lattice_from_registry,
    synthesize_entries,
)
from .document import (
    DEFAULT_CANVAS,
    GLYPH_BOX,
    DanglingRefError,
    Diagnostic,
    PlacedGlyph,
    PlacementError,
    SchemaError,
    SignDocument,
    SignMeta,
    from_xml,
    glyph_box_size,
    move,
    place,
    registry_resolver,
    remove,
    to_xml,
    validate,
)
from .geometry import PathError, format_path, normalize_to_unit_box, parse_path
from .matching import (
    EmptyIndexError,
    ShapeIndex,
    build_index,
    corpus_query,
    taxonomy_search,
)
from .registry import (
    PLANES,
    REPETITIONS,
    STATUSES,
    GlyphEntry,
    ManifestError,
    MissingVariantError,
    MotionCell,
    PlaneEditRule,
    PlaneEditTable,
    Registry,
    UnknownGlyphError,
    UnknownPathError,
    count_by_status,
    format_manifest,
    load_manifest,
    parse_manifest,
    taxonomy_children,
    transform_variant,
)
from .render import RenderError, render_glyph_svg, render_svg
from .sketch import (
    SketchError,
    StrokeSketch,
    descriptor,
    parse_sketch_text,
    rasterize,
    sketch_from_strokes,
)
from .store import SignRecord, Store, UserGlyph, ValidationRejected
from .symbols import (
    SymbolId,
    SymbolIdError,
    is_symbol_ref,
    is_user_ref,
    parse_symbol_id,
    user_ref,
)
from .workbench import PolicyError, Workbench

__version__ = "0.1.0"
