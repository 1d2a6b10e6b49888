//! Gradient ascent of coherent information over purified sources.

mod ascent;
mod classify;
mod gradient;
mod scan;

pub use ascent::{derive_seed, optimize_orum, optimize_source, random_state, OptResult, OptimizerConfig};
pub use classify::{
    classify_source, parity_off_block_mass, PhaseLabel, SourcePhase, NO_CODING_IC, OFF_BLOCK_TOL, PURITY_TOL,
};
pub use gradient::{
    finite_difference_gradient, ic_gradient, ic_value_and_gradient, tangent_projection, GradientMode, FD_STEP,
};
pub use scan::{linspace, point_seed, scan_phase_diagram, ScanGrid, ScanResult};
