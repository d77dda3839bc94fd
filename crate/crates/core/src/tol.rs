//! Numerical tolerances shared by every solver in the crate.

/// Smallest magnitude accepted as a simplex pivot element.
pub const PIVOT: f64 = 1e-9;

/// Allowed violation of a linear constraint by a returned LP solution.
pub const FEASIBILITY: f64 = 1e-7;

/// Allowed violation of a variable bound by a returned LP solution.
pub const BOUND: f64 = 1e-9;

/// Fractional facility values at or below this are treated as zero.
pub const LP_NOISE: f64 = 1e-9;

/// Slack on the neighborhood membership test `d(i,j) <= (1+eps) D(i)`.
pub const NEIGHBORHOOD: f64 = 1e-9;

/// Tolerance on `sum(y) = p` and unit row sums of fractional solutions.
pub const FRACTIONAL_SUM: f64 = 1e-6;
