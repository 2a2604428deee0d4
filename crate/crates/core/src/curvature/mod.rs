//! Curvature quantities of connection metrics and the general
//! cohomogeneity-one curvature formulas used to cross-check them.

mod frame;
mod oracle;

pub use frame::{base_curvature, base_quantities, compute_frame, cyc, frame_for_piece, third, CurvatureFrame, PieceData};
pub use oracle::{basis_vec, eps_jet, eval_jet, Arg, Jet, OracleError, OrbitGeometry, OrbitVec};
mod connection;

pub use connection::{
    alpha_of, completed_table, connection_curvature, connection_jet, curvature_table, general_at, point_tensor, residuals, residuals_against, table_by_label, Axis,
    CurvComponent, Label, Residual, ResidualReport, TableEntry, UnitTensor,
};
mod checks;

pub use checks::{base_paths_agree, base_via_general, check_symmetries, sample_points, scaling_contract, tensor_symmetries, SymmetryReport};
