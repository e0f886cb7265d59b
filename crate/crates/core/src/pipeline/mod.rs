//! The wreath-product and power-quotient constructions.

mod grids;
mod lemma3;
mod theorem1;
mod theorem2;

use serde::Serialize;

pub use grids::{grids_from_scds, Grid, GridQuotient, GridRecord, PowerEngine};
pub use lemma3::{block_quotient_scd, chain_product_quotient_scd, BlockGroup, QuotientScd};
pub use theorem1::{base_group_factorization, theorem1_from_generators, theorem1_scd, BaseGroupFactorization, Theorem1};
pub use theorem2::{theorem2_scd, Theorem2};

use crate::group::DEFAULT_CLOSURE_CAP;
use crate::poset::DecompositionJson;
use crate::scd::SearchConfig;

#[derive(Clone, Debug)]
pub struct PipelineConfig {
    pub search: SearchConfig,
    pub closure_cap: usize,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            search: SearchConfig::default(),
            closure_cap: DEFAULT_CLOSURE_CAP,
        }
    }
}

/// Replayable account of a pipeline run.
#[derive(Clone, Debug, Serialize)]
pub struct PipelineRecord {
    pub construction: String,
    pub block_group: String,
    pub top_group: String,
    pub block_scd: Vec<Vec<usize>>,
    pub grids: Vec<GridRecord>,
    pub decomposition: DecompositionJson,
}

impl Theorem1 {
    pub fn record(&self) -> PipelineRecord {
        PipelineRecord {
            construction: format!("wreath k={} t={}", self.k, self.t),
            block_group: self.kgroup.to_string(),
            top_group: self.tspec.to_string(),
            block_scd: self.block.scd.chains.iter().map(|c| c.elements.clone()).collect(),
            grids: self.engine.records(),
            decomposition: self.scd.to_json(&self.quotient.poset),
        }
    }
}

impl Theorem2 {
    pub fn record(&self) -> PipelineRecord {
        PipelineRecord {
            construction: format!("power n={}", self.n),
            block_group: "1".into(),
            top_group: self.gspec.to_string(),
            block_scd: self.engine.block_scd.chains.iter().map(|c| c.elements.clone()).collect(),
            grids: self.engine.records(),
            decomposition: self.scd.to_json(&self.quotient.poset),
        }
    }
}
