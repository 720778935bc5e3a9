//! Recovering planted cliques and bicliques in dense graphs from degree
//! information, plus the tooling to generate instances, run exact oracles and
//! measure the algorithms.

pub mod bench;
pub mod biclique;
pub mod clique;
pub mod error;
pub mod experiment;
pub mod generators;
pub mod graph;
pub mod io;
pub mod lower_bound;
pub mod oracle;
pub mod planting;
pub mod rng;
pub mod slack;

pub use error::{Error, Result};
pub use graph::{Graph, Subgraph, VertexSet};
pub use planting::{plant, PlantedInstance, Template};
pub use rng::Seed;
