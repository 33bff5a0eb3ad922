use thiserror::Error;

pub type Result<T> = std::result::Result<T, SpectralError>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpectralError {
    #[error("invalid problem: {0}")]
    InvalidProblem(String),

    #[error("boundary mismatch has the same sign at both ends of [{lo}, {hi}] ({f_lo:e}, {f_hi:e})")]
    BracketEmpty {
        lo: f64,
        hi: f64,
        f_lo: f64,
        f_hi: f64,
    },

    #[error("no convergence after {iterations} iterations (last step {last_step:e})")]
    NoConvergence { iterations: usize, last_step: f64 },

    #[error("integrator step size underflow at s = {at} (h = {step:e})")]
    StiffFailure { at: f64, step: f64 },

    #[error("eigenfunction has {found} interior zeros, expected {expected}")]
    WrongBranch { found: usize, expected: usize },

    #[error("finite-difference estimates are not monotone under refinement: {estimates:?}")]
    GridTooCoarse { estimates: Vec<f64> },

    #[error("weight vanishes or is not finite at interior point s = {at}")]
    DegenerateWeight { at: f64 },

    #[error("hypergeometric recurrence lost {digits_lost:.1} significant digits")]
    EvaluationUnstable { digits_lost: f64 },

    #[error("perturbation system is singular at order {order}")]
    NormalizationInconsistent { order: usize },

    #[error("order {order} ansatz produced a term of degree {degree} (bound {bound})")]
    AnsatzDegree {
        order: usize,
        degree: usize,
        bound: usize,
    },

    #[error("requested series order {requested} exceeds the computed order {available}")]
    OrderExceeded { requested: usize, available: usize },

    #[error("no sign change of the root function on the scanned range [{lo}, {hi}]")]
    RootNotBracketed { lo: f64, hi: f64 },

    #[error("invalid profile: {0}")]
    SpecInvalid(String),

    #[error("f'(D/2) = {value:e} does not vanish")]
    ReflectionMismatch { value: f64 },

    #[error("curvature is not finite at s = {at}")]
    PoleSingular { at: f64 },

    #[error("time stepping failed: {0}")]
    CflFailure(String),

    #[error("modulus bound violated at t = {t} for s1 = {s1}, s2 = {s2} (slack {slack:e})")]
    ModulusViolated { s1: f64, s2: f64, t: f64, slack: f64 },
}
