//! Symmetric chain decomposition constructors.

mod flow;
mod greene_kleitman;
mod product;
mod sat;
mod search;

pub use greene_kleitman::{greene_kleitman_scd, GREENE_KLEITMAN_CAP};
pub use product::{chain_product_scd, product_poset, product_scd, staircase_chains};
pub use search::{search_scd, SearchConfig, SEARCH_CAP};
