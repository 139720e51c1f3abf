"""Link invariants: diagrams, longitudes, Milnor and Alexander invariants."""

from .alexander import (
    AlexanderError,
    alexander_matrix,
    alexander_polynomial,
    branched_cover_order,
    cyclic_cover_is_qhs,
    iwasawa_growth_check,
    reduced_link_polynomial,
)
from .diagram import (
    DiagramError,
    PDCode,
    WirtingerPresentation,
    braid_to_pd,
    infer_signs,
    load_link_file,
    parse_pd_text,
    pd_from_json,
    pd_to_wirtinger,
)
from .invariants import (
    FramingError,
    LinkPresentation,
    MissingMilnorError,
    build_linking_matrix,
    cover_homology_ranks,
    link_milnor_table,
    linking_numbers,
    nilpotent_rep,
    t_l_matrix,
    wirtinger_longitudes,
)
from .laurent import LaurentPoly

__all__ = [
    "AlexanderError",
    "DiagramError",
    "FramingError",
    "LaurentPoly",
    "LinkPresentation",
    "MissingMilnorError",
    "PDCode",
    "WirtingerPresentation",
    "alexander_matrix",
    "alexander_polynomial",
    "braid_to_pd",
    "branched_cover_order",
    "build_linking_matrix",
    "cover_homology_ranks",
    "cyclic_cover_is_qhs",
    "infer_signs",
    "iwasawa_growth_check",
    "link_milnor_table",
    "linking_numbers",
    "load_link_file",
    "nilpotent_rep",
    "parse_pd_text",
    "pd_from_json",
    "pd_to_wirtinger",
    "reduced_link_polynomial",
    "t_l_matrix",
    "wirtinger_longitudes",
]
