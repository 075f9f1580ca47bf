//! Turing machines compiled into term rewriting systems, and checking of
//! diamond-like diagrammatic properties.
//!
//! * [`term`]: first-order terms, matching and one-step rewriting.
//! * [`turing`]: deterministic Turing machines and budgeted runs.
//! * [`encode`]: the machine-to-rewrite-system compiler and configuration terms.
//! * [`reach`]: budgeted reachability, termination queries and the derived
//!   relation over the reachable cone of `init`.
//! * [`diamond`]: diamond-like shapes, joinability and shape checking.
//! * [`cli`]: file formats, graph export and the command-line driver.

pub mod corpus;
pub mod encode;
pub mod term;
pub mod turing;
pub mod reach;
pub mod diamond;
pub mod cli;
