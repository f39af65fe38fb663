//! The `el` command-line tool: single computations, the acceptance suite
//! and JSON reports.

/// Runs `$body` with `$f` bound to the concrete field of `$desc`.
macro_rules! with_field {
    ($desc:expr, $f:ident => $body:expr) => {
        match $desc {
            entloc_algebra::FieldDescriptor::Rational => {
                let $f = &entloc_algebra::Rationals;
                $body
            }
            entloc_algebra::FieldDescriptor::Prime(p) => {
                let $f = &entloc_algebra::PrimeField::new(p)?;
                $body
            }
        }
    };
}

pub mod commands;
pub mod config;
pub mod report;
pub mod verify;

pub use commands::run;
