"""chargenus: exact chi_y-genus calculus, characteristic classes, motivic
measures and stringy invariants of log-terminal singularities."""

from .exact import (
    BiPolyUV,
    CoeffY,
    ExactError,
    GeomFactor,
    LaurentPolyY,
    RatFunc,
    Rational,
    coeffy_normalize,
    parse_bipoly,
    parse_laurent,
    ratfunc_equal,
    ratfunc_to_polynomial,
    rational_arith,
)
from .rings import (
    RingElement,
    SmoothVariety,
    catalog,
    hirzebruch_surface,
    point,
    projective_space,
    pushforward_proj_bundle,
    ring_proj_bundle,
    ring_product,
)
from .charclass import (
    BundleData,
    CharSeries,
    additive_class,
    blowup_chi_y,
    ch_lambda_y_cotangent,
    chern_character,
    chi_y,
    chi_y_hypersurface,
    genus_of_hypersurface,
    genus_table,
    hirzebruch_class,
    line_bundle,
    multiplicative_class,
    projective_chi_y,
    series_builtin,
    tangent_bundle,
    trivial_bundle,
    twist_one_plus_y,
)
from .motivic import (
    Atom,
    AtomRegistry,
    CompletedClass,
    MotivicClass,
    completed_measure,
    default_registry,
    k0_arith,
    measure,
    verify_blowup_identity,
)
from .stringy import (
    SncModel,
    compare_resolutions,
    load_snc_toml,
    motivic_integral,
    strata_closed_to_open,
    strata_open_to_closed,
    stringy_chi,
    stringy_e,
    stringy_euler,
    stringy_report,
)

__version__ = "0.1.0"
