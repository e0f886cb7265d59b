//! Grids `C_{j_1} × .. × C_{j_t}` cut out of a power of a decomposed poset,
//! the coordinate action `τ̂` on them, and the per-representative quotient
//! decompositions both theorems pull back.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{act_on_tuple, canonical_tuple, orbit_reps_lex, stabilizer_cyclic_powers, CycleSpec};
use crate::perm::Permutation;
use crate::pipeline::lemma3::{chain_product_quotient_scd, QuotientScd};
use crate::poset::{grid_poset, is_symmetric_saturated_chain, verify_scd, Chain, ChainDecomposition, RankedPoset, TupleIndexer, PRODUCT_CAP};
use crate::scd::SearchConfig;

/// The grid selected by `index` (chain ids, 0-based). `grid_rank` is the sum
/// of its factor lengths and `base_offset` the ambient rank of its minimum.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Grid {
    pub index: Vec<u32>,
    pub lengths: Vec<usize>,
    pub grid_rank: u32,
    pub base_offset: u32,
}

impl Grid {
    fn new(index: Vec<u32>, chains: &[Vec<usize>], ambient_rank: u32) -> Self {
        let lengths: Vec<usize> = index.iter().map(|&j| chains[j as usize].len() - 1).collect();
        let grid_rank = lengths.iter().sum::<usize>() as u32;
        Grid {
            index,
            lengths,
            grid_rank,
            base_offset: (ambient_rank - grid_rank) / 2,
        }
    }

    pub fn size(&self) -> usize {
        self.lengths.iter().map(|l| l + 1).product()
    }
}

fn checked_chains(block: &RankedPoset, scd: &ChainDecomposition) -> Result<(Vec<Vec<usize>>, Vec<(u32, u32)>)> {
    let report = verify_scd(block, scd);
    if !report.passed() {
        return Err(Error::Hypothesis(format!(
            "block decomposition fails: {}",
            report.failures().join("; ")
        )));
    }
    let chains: Vec<Vec<usize>> = scd.chains.iter().map(|c| c.elements.clone()).collect();
    let mut chain_of = vec![(0, 0); block.len()];
    for (j, c) in chains.iter().enumerate() {
        for (p, &x) in c.iter().enumerate() {
            chain_of[x] = (j as u32, p as u32);
        }
    }
    Ok((chains, chain_of))
}

/// All `s^t` grids of `P^t` for one decomposition of `P` used in every
/// coordinate. They partition `P^t`, and each is saturated and symmetric in it.
pub fn grids_from_scds(block: &RankedPoset, scd: &ChainDecomposition, t: usize) -> Result<Vec<Grid>> {
    let (chains, _) = checked_chains(block, scd)?;
    let s = chains.len();
    let total = (s as u128).pow(t as u32);
    if total > PRODUCT_CAP as u128 {
        return Err(Error::resource(format!("{s}^{t} grids"), PRODUCT_CAP as u128));
    }
    let ambient = block.top_rank() * t as u32;
    let grids: Vec<Grid> = (0..total as usize)
        .map(|code| Grid::new(crate::group::unpack_tuple(code, s, t), &chains, ambient))
        .collect();
    let covered: u128 = grids.iter().map(|g| g.size() as u128).sum();
    if covered != (block.len() as u128).pow(t as u32) {
        return Err(Error::Internal("grids do not partition the power".into()));
    }
    Ok(grids)
}

/// `C(j̄) / T_j̄` for a representative `j̄`, over grid positions.
#[derive(Clone, Debug)]
pub struct GridQuotient {
    pub grid: Grid,
    pub stabilizer: CycleSpec,
    /// Minimal exponents `d_i` per generator of `T`.
    pub powers: Vec<u64>,
    pub indexer: TupleIndexer,
    pub local: QuotientScd,
}

/// Audit record of one representative grid.
#[derive(Clone, Debug, Serialize)]
pub struct GridRecord {
    /// 1-based chain ids.
    pub index: Vec<u32>,
    pub stabilizer: String,
    pub powers: Vec<u64>,
    /// Each chain as the position tuples of its orbit representatives.
    pub chains: Vec<Vec<Vec<u32>>>,
}

/// Everything between an SCD of `P` and an SCD of `P^t / T`: grids,
/// lexicographically least orbit representatives `J`, stabilizers, and an SCD
/// of every `C(j̄) / T_j̄`.
#[derive(Clone, Debug)]
pub struct PowerEngine {
    pub block: RankedPoset,
    pub block_scd: ChainDecomposition,
    chains: Vec<Vec<usize>>,
    chain_of: Vec<(u32, u32)>,
    pub t: usize,
    pub tspec: CycleSpec,
    tgens: Vec<Permutation>,
    pub reps: Vec<GridQuotient>,
    rep_of: HashMap<Vec<u32>, usize>,
}

impl PowerEngine {
    pub fn new(block: RankedPoset, block_scd: ChainDecomposition, tspec: CycleSpec, search: &SearchConfig) -> Result<Self> {
        let t = tspec.degree;
        if t == 0 {
            return Err(Error::arg("power must be positive"));
        }
        let (chains, chain_of) = checked_chains(&block, &block_scd)?;
        let s = chains.len();
        let tgens = tspec.permutations();
        let ambient = block.top_rank() * t as u32;
        let reps_idx = orbit_reps_lex(&tgens, s, t)?;
        let reps = reps_idx
            .into_par_iter()
            .map(|index| {
                let grid = Grid::new(index, &chains, ambient);
                let (stabilizer, powers) = stabilizer_cyclic_powers(&tspec, &grid.index)?;
                let indexer = TupleIndexer::new(grid.lengths.iter().map(|l| l + 1).collect(), PRODUCT_CAP)?;
                let local = chain_product_quotient_scd(&grid.lengths, &stabilizer, search)?;
                Ok(GridQuotient {
                    grid,
                    stabilizer,
                    powers,
                    indexer,
                    local,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let rep_of = reps.iter().enumerate().map(|(i, r)| (r.grid.index.clone(), i)).collect();
        Ok(PowerEngine {
            block,
            block_scd,
            chains,
            chain_of,
            t,
            tspec,
            tgens,
            reps,
            rep_of,
        })
    }

    /// Chain ids and positions of a tuple of block elements.
    pub fn locate(&self, x: &[usize]) -> (Vec<u32>, Vec<u32>) {
        x.iter().map(|&e| self.chain_of[e]).unzip()
    }

    /// Block elements at positions `p` of grid `j`.
    pub fn element(&self, j: &[u32], p: &[u32]) -> Vec<usize> {
        j.iter()
            .zip(p)
            .map(|(&j, &p)| self.chains[j as usize][p as usize])
            .collect()
    }

    /// `Φ`/`Ψ`: the representative grid (index into [`Self::reps`]) and the
    /// stabilizer orbit there that the `T`-orbit of `x` lands in.
    pub fn phi(&self, x: &[usize]) -> Result<(usize, usize)> {
        let (j, p) = self.locate(x);
        let (rep, tau) = canonical_tuple(&self.tgens, &j)?;
        let p = act_on_tuple(&tau, &p)?;
        let i = self.rep_of[&rep];
        let gq = &self.reps[i];
        Ok((i, gq.local.quotient.orbit_of(gq.indexer.index(&p))))
    }

    /// Number of elements of `⨆_{j̄ ∈ J} C(j̄) / T_j̄`.
    pub fn image_count(&self) -> usize {
        self.reps.iter().map(|r| r.local.quotient.len()).sum()
    }

    /// `τ̂` on an element of grid `j`: coordinates move with `τ`, so the image
    /// lies in grid `τ(j)`.
    pub fn tau_hat(&self, tau: &Permutation, j: &[u32], x: &[usize]) -> Result<Vec<usize>> {
        if x.len() != self.t || x.iter().any(|&e| e >= self.block.len()) {
            return Err(Error::arg("not an element of the power"));
        }
        if self.locate(x).0 != j {
            return Err(Error::arg("element is not in the given grid"));
        }
        act_on_tuple(tau, x)
    }

    /// `τ̂` maps grid `j` bijectively onto grid `τ(j)`, covers onto covers.
    pub fn tau_hat_is_isomorphism(&self, tau: &Permutation, j: &[u32]) -> Result<bool> {
        let src_lengths: Vec<usize> = j.iter().map(|&j| self.chains[j as usize].len() - 1).collect();
        let tj = act_on_tuple(tau, j)?;
        let dst_lengths: Vec<usize> = tj.iter().map(|&j| self.chains[j as usize].len() - 1).collect();
        let src = grid_poset(&src_lengths)?;
        let dst = grid_poset(&dst_lengths)?;
        let src_idx = TupleIndexer::new(src_lengths.iter().map(|l| l + 1).collect(), PRODUCT_CAP)?;
        let dst_idx = TupleIndexer::new(dst_lengths.iter().map(|l| l + 1).collect(), PRODUCT_CAP)?;
        let mut image = vec![usize::MAX; src.len()];
        let mut hit = vec![false; dst.len()];
        for (a, slot) in image.iter_mut().enumerate() {
            let x = self.element(j, &src_idx.tuple(a));
            let y = self.tau_hat(tau, j, &x)?;
            let (yj, yp) = self.locate(&y);
            if yj != tj {
                return Ok(false);
            }
            let b = dst_idx.index(&yp);
            if hit[b] {
                return Ok(false);
            }
            hit[b] = true;
            *slot = b;
        }
        Ok(src.cover_count() == dst.cover_count() && src.covers().all(|(a, b)| dst.is_cover(image[a], image[b])))
    }

    /// Pulls a chain of `C(j̄)/T_j̄` back to the target. `map` sends a tuple of
    /// block elements to its target element; target ranks must run from
    /// `base_offset + a` to `top - (base_offset + a)`.
    pub fn pullback_chain(
        &self,
        rep: usize,
        chain: &Chain,
        target: &RankedPoset,
        map: &(dyn Fn(&[usize]) -> usize + Sync),
    ) -> Result<Chain> {
        let gq = &self.reps[rep];
        if !is_symmetric_saturated_chain(&gq.local.quotient.poset, chain)? {
            return Err(Error::arg("chain is not symmetric and saturated in its grid quotient"));
        }
        let mut out = Vec::with_capacity(chain.len());
        for &o in &chain.elements {
            let p = gq.indexer.tuple(gq.local.quotient.rep(o));
            let y = map(&self.element(&gq.grid.index, &p));
            let expected = gq.grid.base_offset + gq.local.quotient.poset.rank(o);
            if target.rank(y) != expected {
                return Err(Error::Internal(format!(
                    "pulled-back element {} has rank {}, expected {expected}",
                    target.label(y),
                    target.rank(y)
                )));
            }
            out.push(y);
        }
        let out = Chain::new(out);
        if !is_symmetric_saturated_chain(target, &out)? {
            return Err(Error::Internal(format!(
                "pullback from grid {:?} is not symmetric and saturated",
                gq.grid.index
            )));
        }
        Ok(out)
    }

    /// Pulls back every chain of every representative grid.
    pub fn assemble(&self, target: &RankedPoset, map: &(dyn Fn(&[usize]) -> usize + Sync)) -> Result<ChainDecomposition> {
        let per_rep = (0..self.reps.len())
            .into_par_iter()
            .map(|i| {
                self.reps[i]
                    .local
                    .scd
                    .chains
                    .iter()
                    .map(|c| self.pullback_chain(i, c, target, map))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let d = ChainDecomposition::new(per_rep.into_iter().flatten().collect()).sorted(target);
        let report = verify_scd(target, &d);
        if !report.passed() {
            return Err(Error::Internal(format!(
                "assembled decomposition fails: {}",
                report.failures().join("; ")
            )));
        }
        Ok(d)
    }

    /// `Φ` is constant on the orbits of `quotient` and injective on them, and
    /// hits every element of the disjoint union of grid quotients.
    /// `tuple_of(x)` gives the block tuple of ambient element `x`.
    pub fn check_bijection(&self, quotient: &crate::quotient::QuotientPoset, ambient_len: usize, tuple_of: &(dyn Fn(usize) -> Vec<usize> + Sync)) -> Result<()> {
        let images = (0..ambient_len)
            .into_par_iter()
            .map(|x| self.phi(&tuple_of(x)))
            .collect::<Result<Vec<_>>>()?;
        let mut image_of_orbit: Vec<Option<(usize, usize)>> = vec![None; quotient.len()];
        for (x, &img) in images.iter().enumerate() {
            let o = quotient.orbit_of(x);
            match image_of_orbit[o] {
                None => image_of_orbit[o] = Some(img),
                Some(prev) if prev != img => {
                    return Err(Error::Internal(format!(
                        "map is not constant on the orbit of {}",
                        quotient.poset.label(o)
                    )))
                }
                _ => {}
            }
        }
        let mut seen = std::collections::HashSet::new();
        for img in image_of_orbit.iter().flatten() {
            if !seen.insert(*img) {
                return Err(Error::Internal("map is not injective on orbits".into()));
            }
        }
        if seen.len() != self.image_count() {
            return Err(Error::Internal(format!(
                "{} orbits but {} grid quotient elements",
                seen.len(),
                self.image_count()
            )));
        }
        Ok(())
    }

    pub fn records(&self) -> Vec<GridRecord> {
        self.reps
            .iter()
            .map(|gq| GridRecord {
                index: gq.grid.index.iter().map(|j| j + 1).collect(),
                stabilizer: gq.stabilizer.to_string(),
                powers: gq.powers.clone(),
                chains: gq
                    .local
                    .scd
                    .chains
                    .iter()
                    .map(|c| {
                        c.elements
                            .iter()
                            .map(|&o| gq.indexer.tuple(gq.local.quotient.rep(o)))
                            .collect()
                    })
                    .collect(),
            })
            .collect()
    }
}
