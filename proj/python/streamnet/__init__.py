"""Sparse Gaussian graphical models over daily streamflow panels.

The heavy lifting lives in the compiled ``streamnet._core`` extension:
penalized precision estimation, donor-graph selection over a
(lambda, edge-budget) grid, record inference, and gauge-removal ranking.
"""

from streamnet._core import (  # noqa: F401
    ColumnStats,
    ComputationError,
    DataSplits,
    FailedPoint,
    Graph,
    IoError,
    LogPanel,
    OlsModel,
    ParetoPoint,
    PrecisionMatrix,
    RemovalEntry,
    RemovalPlan,
    SgmConfig,
    SgmResult,
    StandardizedPanel,
    StreamflowPanel,
    ValidationError,
    back_transform,
    coeffs_from_covariance,
    coeffs_from_precision,
    correlation_graph,
    empirical_covariance,
    fit_ols_donors,
    glasso_objective,
    glasso_solve,
    glasso_solve_constrained,
    graph_score,
    haversine_km,
    inverse_standardize,
    invert_covariance,
    lambda_sequence,
    load_panel,
    log_transform,
    nse,
    pareto_front,
    predict_ols,
    predict_z,
    r_squared,
    removal_report,
    run_rg,
    run_sgm,
    select_graph,
    split,
    standardize,
    tau_for_edge_budget,
    threshold_graph,
)

__version__ = "0.1.0"
