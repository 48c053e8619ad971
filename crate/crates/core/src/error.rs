use std::fmt;

/// The first failure found by a structural verifier.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation(String);

impl Violation {
    pub fn new(message: impl Into<String>) -> Self {
        Violation(message.into())
    }

    pub fn message(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Violation {}

/// Outcome of a verifier: `Ok(())` on success, otherwise a diagnostic.
pub type Check = Result<(), Violation>;

macro_rules! bail {
    ($($arg:tt)*) => {
        return Err($crate::error::Violation::new(format!($($arg)*)))
    };
}
pub(crate) use bail;
