//! Probabilities of theories and loss measures of forgetting.

pub mod decimal;
pub mod exact;
pub mod loss;
pub mod sample;
pub mod spec;

pub use exact::{model_count, sweep, theory_probability, SweepOutcome};
pub use loss::{exact_text, loss_measures, LimitingFlag, LossReport, Mode};
pub use sample::{estimate_probability, sample_counts, Estimate, RNG_ALGORITHM};
pub use spec::ProbabilitySpec;
