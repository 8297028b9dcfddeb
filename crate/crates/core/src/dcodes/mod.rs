//! The random ensemble of double `λ`-twisted codes `C_{a',a}` over a finite
//! field, exact code analysis and the probabilistic bounds on the ensemble.

mod balanced;
mod bounds;
mod code;
mod oracle;
mod params;
mod weight;

pub use balanced::{balanced_witness, verify_witness, BalancedWitness};
pub use bounds::{
    entropy, expectation_bound, full_dim_prob_lower_bound, full_dim_probability, generator_ratio, scaled_delta,
    total_expectation_bound, TotalBound,
};
pub use code::{build_code, sample_code, DoubleTwistedCode};
pub use oracle::{exact_tiny_oracle, OracleChecks, OracleReport};
pub use params::{EnsembleShape, TwistParams};
pub use weight::{
    code_size, independent_rows, low_weight_count, max_weight, min_weight_of_rows, weight_at_most, weight_histogram,
    CodeReport,
};
