//! Plain-text documents: graph files, tree files, sequential
//! decompositions, star-cutset decompositions and certificates.

mod certificate;
mod decomposition;
mod graph;
mod sequential;
mod tree;

pub use certificate::{is_certificate, parse_certificate, write_certificate, Certificate, CERT_VERSION};
pub use decomposition::write_decomposition;
pub use graph::{parse_graph, write_graph, AnyGraph};
pub use sequential::{parse_sequential, write_sequential};
pub use tree::{parse_tree, write_tree};
