use thiserror::Error;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected:?}, found {found:?}")]
    Dimension {
        expected: (usize, usize),
        found: (usize, usize),
    },
    #[error("singular retraction: {0}")]
    SingularRetraction(&'static str),
    #[error("matrix does not have full column rank")]
    RankDeficient,
    #[error("vector field does not provide an exact merit gradient")]
    MissingCapability,
    #[error("starting point is not on the manifold (feasibility gap {0:e})")]
    Infeasible(f64),
    #[error("invalid solver configuration: {0}")]
    InvalidConfig(&'static str),
    #[error("domain error: {0}")]
    Domain(&'static str),
}

pub(crate) fn check_shape(expected: (usize, usize), found: (usize, usize)) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::Dimension { expected, found })
    }
}
