use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{origin}:{line}:{column}: {message}")]
    Syntax {
        origin: String,
        line: usize,
        column: usize,
        message: String,
    },

    /// An enumeration would range over more atoms than the configured guard.
    #[error("enumeration over {size} atoms exceeds the limit of {limit} ({what})")]
    GuardExceeded {
        what: &'static str,
        size: usize,
        limit: usize,
    },

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Upper bound on the number of atoms an exhaustive subset enumeration may
/// range over.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Guard(pub usize);

impl Guard {
    pub const DEFAULT: Guard = Guard(20);

    pub fn check(self, what: &'static str, size: usize) -> Result<()> {
        // Subset masks are u64; never go past that regardless of the setting.
        let limit = self.0.min(62);
        if size > limit {
            Err(Error::GuardExceeded { what, size, limit })
        } else {
            Ok(())
        }
    }
}

impl Default for Guard {
    fn default() -> Self {
        Self::DEFAULT
    }
}
