//! Generators, loaders and persistence.

pub mod cascades;
pub mod generate;
pub mod graph;
pub mod instance;
pub mod random;
pub mod ratings;
pub mod zkc;

pub use cascades::{gen_ic_cascades, simulate_cascade};
pub use generate::{bipartite_matroid, gen_bipartite_powerlaw, BipartiteSpec};
pub use graph::DiGraph;
pub use instance::{load_instance, save_instance, InstanceFile, SCHEMA_VERSION};
pub use ratings::{load_item_groups, load_ratings, Ratings};
