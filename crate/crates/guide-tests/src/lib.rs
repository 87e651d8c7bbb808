// mdbook cannot run code listings as tests, so every chapter is included
// here as a doc comment and `cargo test --doc` keeps the book honest. One
// module per chapter so a failing snippet names its origin.

#![allow(unused_imports)]

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/quasirandom.md")]
pub mod quasirandom {}

#[doc = include_str!("../../../book/src/normals.md")]
pub mod normals {}

#[doc = include_str!("../../../book/src/density-matrices.md")]
pub mod density_matrices {}

#[doc = include_str!("../../../book/src/criteria.md")]
pub mod criteria {}

#[doc = include_str!("../../../book/src/estimation.md")]
pub mod estimation {}

#[doc = include_str!("../../../book/src/exact.md")]
pub mod exact {}
