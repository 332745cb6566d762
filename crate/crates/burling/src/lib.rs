//! Text formats, parallel recognition and the `burling` command-line tool,
//! built on [`burling_core`].
//!
//! ```
//! use burling::format::{parse_graph, write_graph, AnyGraph};
//!
//! let g = parse_graph("undirected\na b\nb c\n").unwrap();
//! let AnyGraph::Undirected(g) = g else { panic!() };
//! assert_eq!(write_graph(&AnyGraph::Undirected(g)), "undirected\na b\nb c\n");
//! ```

mod error;
pub mod format;
pub mod report;
pub mod search;
mod text;

pub use burling_core as core;
pub use error::{Error, Result};
