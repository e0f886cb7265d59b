//! `P^n / G` for a decomposed `P` and `G ≤ S_n` generated by powers of
//! disjoint cycles acting on coordinates.

use crate::error::{Error, Result};
use crate::group::CycleSpec;
use crate::pipeline::grids::PowerEngine;
use crate::pipeline::PipelineConfig;
use crate::poset::{poset_power, verify_scd, ChainDecomposition, RankedPoset, TupleIndexer};
use crate::quotient::{coordinate_action, quotient, QuotientPoset};

#[derive(Clone, Debug)]
pub struct Theorem2 {
    pub n: usize,
    pub gspec: CycleSpec,
    pub base: RankedPoset,
    pub power: RankedPoset,
    pub indexer: TupleIndexer,
    pub quotient: QuotientPoset,
    pub engine: PowerEngine,
    pub scd: ChainDecomposition,
}

pub fn theorem2_scd(
    base: &RankedPoset,
    base_scd: &ChainDecomposition,
    n: usize,
    gspec: CycleSpec,
    cfg: &PipelineConfig,
) -> Result<Theorem2> {
    if gspec.degree != n {
        return Err(Error::arg(format!("G acts on {} points, expected {n}", gspec.degree)));
    }
    let (power, indexer) = poset_power(base, n)?;
    let maps = gspec
        .permutations()
        .iter()
        .map(|g| coordinate_action(g, &indexer))
        .collect::<Result<Vec<_>>>()?;
    let q = quotient(&power, &maps)?;
    let engine = PowerEngine::new(base.clone(), base_scd.clone(), gspec.clone(), &cfg.search)?;
    let map = |x: &[usize]| -> usize {
        let t: Vec<u32> = x.iter().map(|&e| e as u32).collect();
        q.orbit_of(indexer.index(&t))
    };
    let scd = engine.assemble(&q.poset, &map)?;
    Ok(Theorem2 {
        n,
        gspec,
        base: base.clone(),
        power,
        indexer,
        quotient: q,
        engine,
        scd,
    })
}

impl Theorem2 {
    pub fn tuple(&self, x: usize) -> Vec<usize> {
        self.indexer.tuple(x).into_iter().map(|a| a as usize).collect()
    }

    /// `Ψ(x̄)`: representative grid index and orbit in its stabilizer quotient.
    pub fn psi_map(&self, x: usize) -> Result<(usize, usize)> {
        self.engine.phi(&self.tuple(x))
    }

    pub fn check_psi_bijection(&self) -> Result<()> {
        self.engine
            .check_bijection(&self.quotient, self.power.len(), &|x| self.tuple(x))
    }

    pub fn verify(&self) -> bool {
        verify_scd(&self.quotient.poset, &self.scd).passed()
    }
}
