use thiserror::Error;

use crate::report::CheckReport;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    Input(String),

    #[error("element is not a member of the lattice")]
    NotInLattice,

    #[error("index {index} out of range 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("lattice is not distributive; witness {witness}")]
    NotDistributive { witness: serde_json::Value },

    #[error("enumeration of {needed} instances exceeds the budget of {budget}")]
    BudgetExceeded { needed: u128, budget: u64 },

    #[error("0·inf is undefined without an explicit convention")]
    UndefinedProduct,

    #[error("construction refused: {reason}")]
    ConstructionRefused {
        reason: String,
        witness: Option<serde_json::Value>,
    },

    #[error("custom relation `{name}` is not transitive on the encountered values")]
    NotTransitive {
        name: String,
        report: Box<CheckReport>,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }
}
