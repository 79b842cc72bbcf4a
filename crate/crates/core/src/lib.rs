//! Exact and numeric tools around Kuroda's family of non-finitely-generated
//! subrings `R = K[x] ∩ K[Π] ⊂ K[x₁, x₂, x₃, x₄]`.
//!
//! * [`config`]: configurations, the validity condition, continued fractions.
//! * [`algebra`]: sparse rational polynomials and coordinate changes.
//! * [`membership`]: the monoid `M`, generators of `T`, membership in `R`.
//! * [`blowup`]: exponent traces through the blowup tower and pole sets.
//! * [`regions`]: the semialgebraic sets `S′`, `S″`, `S`, `S̃` in floating point.
//! * [`expr`]: the polynomial expression language.

pub mod algebra;
pub mod blowup;
pub mod config;
pub mod expr;
pub mod membership;
pub mod regions;
mod serde_exact;

pub use algebra::{ExponentVector, Polynomial, VarSystem};
pub use config::{Axis, KurodaConfig, ValidConfig};

#[cfg(doctest)]
mod book {
    macro_rules! chapter {
        ($name:ident, $file:literal) => {
            #[doc = include_str!(concat!("../../../book/src/", $file))]
            mod $name {}
        };
    }
    chapter!(introduction, "introduction.md");
    chapter!(configurations, "configurations.md");
    chapter!(polynomials, "polynomials.md");
    chapter!(membership, "membership.md");
    chapter!(regions, "regions.md");
    chapter!(blowup, "blowup.md");
    chapter!(cli, "cli.md");
}
