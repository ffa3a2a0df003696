//! Distance distributions of attaining codes, optimality test functions,
//! improving polynomials and grid refinement of the certificates.

pub mod distribution;
pub mod improve;
pub mod refine;
pub mod testfn;

pub use distribution::{distance_distribution, k1_distribution, moments, DistEntry, DistanceDistribution};
pub use improve::{improving_polynomial, ImprovingPolynomial};
pub use refine::{refine_polynomials, ExtraNode, RefineOptions, RefineReport, Refinement};
pub use testfn::{scan_test_functions, scan_test_functions_m, test_function_r, test_function_s, TestFunctionReport, Verdict};
