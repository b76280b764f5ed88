//! Local antimagic edge labelings of complete full t-ary trees.
//!
//! A labeling puts the numbers `1..=m` on the `m` edges of a tree; a vertex's
//! color is the sum of the labels around it, and adjacent vertices must get
//! different colors. Every tree with `l` leaves needs at least `l + 1` colors.
//! [`labeler::label_tree`] meets that bound for odd `t` and stays within one
//! of it for even `t`.
//!
//! The guide in `book/` walks through each module; its snippets run as
//! doc-tests of this crate.

pub mod error;
pub mod export;
pub mod labeler;
pub mod oracle;
pub mod partitions;
pub mod tree;
pub mod verifier;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/partitions.md")]
    mod partitions {}
    #[doc = include_str!("../../../book/src/tree_model.md")]
    mod tree_model {}
    #[doc = include_str!("../../../book/src/labeling.md")]
    mod labeling {}
    #[doc = include_str!("../../../book/src/verification.md")]
    mod verification {}
    #[doc = include_str!("../../../book/src/oracle.md")]
    mod oracle {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
