"""Gaussian graph-state networks: squeezing costs and entanglement routing."""

from .cost import (
    CostReport,
    SqueezingSpectrum,
    adjacency_rank,
    analytic_cost,
    analytic_spectrum,
    cost_report,
    energy_delta,
    er_expected_cost,
    lambda_pm,
    spectrum_from_adjacency,
    squeezing_cost,
    squeezing_cost_mixed,
)
from .entangle import (
    DiamondParams,
    LogNegativity,
    PairState,
    diamond_logneg,
    diamond_pair_closed_form,
    log_negativity,
    nu_minus,
    partial_transpose,
    seralian,
)
from .errors import (
    CvnetError,
    GraphFormatError,
    NumericalError,
    ParameterError,
    SingularPivotError,
)
from .gaussian import (
    CovMatrix,
    ZGraph,
    cov_from_z,
    graph_state_cov,
    symplectic_form,
    symplectic_spectrum,
    squeezing_spectrum_numeric,
    z_from_network,
)
from .generators import (
    gen_as,
    gen_ba,
    gen_diamond_chain,
    gen_diamond_interconnected,
    gen_er,
    gen_lattice,
    gen_pp,
    gen_regular,
    gen_ws,
)
from .measure import (
    MeasurementPlan,
    apply_plan,
    conditioning_chain,
    conditioning_oracle,
    measure_p,
    measure_q,
    pair_plan,
)
from .network import (
    Network,
    PathSet,
    all_shortest_paths,
    bfs_distances,
    load_edgelist,
    save_edgelist,
)
from .routing import (
    ProtocolResult,
    SurveyReport,
    auto_alice,
    exhaustive_best_plan,
    protocol_allp,
    protocol_routing,
    protocol_shortest,
    run_protocol,
    survey,
)

__version__ = "0.1.0"
