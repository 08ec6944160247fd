use alloc::string::String;
use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// `n` below 2; Z_0 and Z_1 carry no co-maximal graph here.
    ModulusTooSmall(u64),
    /// `d` does not divide `n`, or is 1 or `n`.
    NotProperDivisor {
        n: u64,
        d: u64,
    },
    /// Graph exceeds the vertex cap of an exponential routine.
    GraphTooLarge {
        order: usize,
        cap: usize,
    },
    /// Divisor-class count exceeds the blow-up subset cap.
    TooManyClasses {
        classes: usize,
        cap: usize,
    },
    /// A closed form was asked for an `n` of the wrong shape.
    ShapeMismatch(String),
    InvalidArgument(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::ModulusTooSmall(n) => write!(f, "modulus {n} is below 2"),
            Error::NotProperDivisor { n, d } => write!(f, "{d} is not a proper divisor of {n}"),
            Error::GraphTooLarge { order, cap } => {
                write!(
                    f,
                    "graph of order {order} exceeds the cap of {cap} vertices"
                )
            }
            Error::TooManyClasses { classes, cap } => {
                write!(f, "{classes} divisor classes exceed the cap of {cap}")
            }
            Error::ShapeMismatch(msg) => f.write_str(msg),
            Error::InvalidArgument(msg) => f.write_str(msg),
        }
    }
}

impl core::error::Error for Error {}
