//! Colored Boolean lattices: finding colored copies of small posets,
//! lower-bound constructions, and exhaustive search for the least
//! dimension that forces a pattern or a monochromatic subcube.
//!
//! The guide in `book/` walks through each module with runnable examples.

pub mod constructions;
pub mod error;
pub mod finder;
pub mod lattice;
pub mod phase;
pub mod poset;
pub mod search;

pub use error::{Error, Result};

// The guide's code blocks run as doc-tests, one module per chapter.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/patterns.md")]
    mod patterns {}
    #[doc = include_str!("../../../book/src/colorings.md")]
    mod colorings {}
    #[doc = include_str!("../../../book/src/finding.md")]
    mod finding {}
    #[doc = include_str!("../../../book/src/phases.md")]
    mod phases {}
    #[doc = include_str!("../../../book/src/constructions.md")]
    mod constructions {}
    #[doc = include_str!("../../../book/src/search.md")]
    mod search {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
