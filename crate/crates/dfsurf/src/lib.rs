//! Danielewski-Fieseler surfaces over (Q[x], x), classified through labelled
//! rooted trees: exact polynomial arithmetic, tree combinatorics and
//! rewriting, the tree-to-surface gluing dictionary, equation emission with
//! symbolic verification, projective-completion boundary graphs, and the
//! Makar-Limanov triviality tests.

pub mod cli;
pub mod completion;
pub mod exactalg;
pub mod labelled;
pub mod surface;
pub mod trees;
