use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown atom `{0}`: not in the world's vocabulary")]
    UnknownAtom(String),

    #[error("formula is not ground and quantifier-free: {0}")]
    NotPropositional(String),

    #[error("formula has free variable `{var}`: {formula}")]
    OpenFormula { var: String, formula: String },

    #[error("theory quantifies over an empty domain; declare constants with `domain:`")]
    EmptyDomain,

    #[error("vocabulary of {atoms} atoms exceeds the enumeration cap of {cap}; use sampling (--mode sample) or raise --cap")]
    Capacity { atoms: usize, cap: usize },

    #[error("{line}:{column}: syntax error: expected {expected}, found {found}")]
    Syntax {
        line: usize,
        column: usize,
        expected: String,
        found: String,
    },

    #[error("{line}:{column}: duplicate `{section}` section")]
    DuplicateSection {
        line: usize,
        column: usize,
        section: String,
    },

    #[error("{line}:{column}: probability atom `{atom}` is not ground")]
    NonGroundProbability {
        line: usize,
        column: usize,
        atom: String,
    },

    #[error("invalid probability specification: {0}")]
    InvalidSpec(String),

    #[error("program is not stratifiable: negative cycle through {0}")]
    Unstratifiable(String),

    #[error("unsafe rule `{0}`")]
    UnsafeRule(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    /// True for errors raised while reading concrete syntax.
    pub fn is_parse(&self) -> bool {
        matches!(
            self,
            Error::Syntax { .. }
                | Error::DuplicateSection { .. }
                | Error::NonGroundProbability { .. }
        )
    }
}
