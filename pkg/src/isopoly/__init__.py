"""Isoperimetric functionals, cyclic polygon construction and conjecture sweeps."""

__version__ = "0.1.0"

from .cyclic import (  # noqa: E402
    CenterLocation,
    CyclicPolygon,
    Location,
    build_cyclic,
    circumradius_of_sides,
    cyclic_area,
    cyclic_inradius,
    max_area,
)
from .errors import *  # noqa: E402,F401,F403
from .families import (  # noqa: E402
    Family,
    FamilyPoint,
    levy_discrete,
    levy_discrete_split,
    levy_phi,
    levy_phi2,
    levy_pi,
    levy_pi2,
    macnab,
    perturbed_regular,
    regular,
)
from .functionals import (  # noqa: E402
    E_OVER_PI,
    FunctionalReport,
    classic_deficit,
    corollary2_check,
    identity_residuals,
    nu,
    p_functional,
    phi,
    phi_regular,
    phi_regular_limit,
    pseudo_perimeter,
    report,
    tau,
    zeta,
    zhang_bounds_check,
    zhang_deficit,
)
from .geometry import (  # noqa: E402
    DEFAULT_TOL,
    SideList,
    Tolerance,
    VertexPolygon,
    brahmagupta_bound,
    heron_area,
    perimeter,
    regular_polygon,
    regular_sides,
    shoelace_area,
    validate_sides,
)
from .lab import (  # noqa: E402
    Theorem1Case,
    TrialRecord,
    Verdict,
    classify_theorem1,
    reduction_check,
    sample_cyclic,
    sweep,
    verify_corpus,
)
from .search import Objective, SearchResult, search_counterexample  # noqa: E402
