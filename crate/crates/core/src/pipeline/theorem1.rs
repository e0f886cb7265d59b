//! `B_{kt} / (K ≀ T)`: decompose `B_k/K`, cut `(B_k/K)^t` into grids, decompose
//! each representative grid modulo its stabilizer in `T`, and pull back.

use std::collections::HashSet;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::group::{act_on_tuple, is_powers_of_disjoint_cycles, wreath_product, CycleSpec, GeneratedGroup};
use crate::perm::Permutation;
use crate::pipeline::grids::PowerEngine;
use crate::pipeline::lemma3::{block_quotient_scd, BlockGroup, QuotientScd};
use crate::pipeline::PipelineConfig;
use crate::poset::{boolean_lattice, poset_power, verify_scd, ChainDecomposition, RankedPoset, TupleIndexer};
use crate::quotient::{permute_mask, quotient, subset_action, ElementMap, QuotientPoset};

#[derive(Clone, Debug)]
pub struct Theorem1 {
    pub k: usize,
    pub t: usize,
    pub kgroup: BlockGroup,
    pub tspec: CycleSpec,
    /// `B_k / K` and its decomposition, shared by every block.
    pub block: QuotientScd,
    /// `K ≀ T` on `[k]×[t]`, point `(i, r)` at `r·k + i`.
    pub group: GeneratedGroup,
    /// `|K|^t · |T|`, when the closure of `K ≀ T` fit under the cap and was
    /// checked against it.
    pub checked_order: Option<u128>,
    pub ambient: RankedPoset,
    pub quotient: QuotientPoset,
    pub engine: PowerEngine,
    pub scd: ChainDecomposition,
}

fn block_mask(k: usize) -> u32 {
    (1u32 << k) - 1
}

/// SCD of `B_{kt}/(K ≀ T)`, verified against the orbit poset built directly
/// from the wreath product's generators.
pub fn theorem1_scd(k: usize, t: usize, kgroup: BlockGroup, tspec: CycleSpec, cfg: &PipelineConfig) -> Result<Theorem1> {
    if k == 0 || t == 0 {
        return Err(Error::arg("k and t must be positive"));
    }
    if kgroup.degree() != k || tspec.degree != t {
        return Err(Error::arg(format!(
            "K acts on {} points and T on {}, expected {k} and {t}",
            kgroup.degree(),
            tspec.degree
        )));
    }
    let n = k * t;
    let ambient = boolean_lattice(n)?;
    let block = block_quotient_scd(&kgroup, &cfg.search)?;
    let kg = kgroup.group();
    let tg = tspec.group();
    let group = wreath_product(&kg, &tg);
    let checked_order = check_wreath_order(&kg, &tg, &group, t, cfg.closure_cap)?;
    let maps: Vec<ElementMap> = group.generators().iter().map(subset_action).collect();
    let q = quotient(&ambient, &maps)?;
    let engine = PowerEngine::new(block.quotient.poset.clone(), block.scd.clone(), tspec.clone(), &cfg.search)?;
    let reps: Vec<u32> = (0..block.quotient.len()).map(|o| block.quotient.rep(o) as u32).collect();
    let map = |x: &[usize]| -> usize {
        let mask = x
            .iter()
            .enumerate()
            .fold(0u32, |m, (r, &o)| m | reps[o] << (r * k));
        q.orbit_of(mask as usize)
    };
    let scd = engine.assemble(&q.poset, &map)?;
    Ok(Theorem1 {
        k,
        t,
        kgroup,
        tspec,
        block,
        group,
        checked_order,
        ambient,
        quotient: q,
        engine,
        scd,
    })
}

/// Same, from generator lists: `K` and `T` must each be given as powers of
/// disjoint cycles.
pub fn theorem1_from_generators(
    k: usize,
    t: usize,
    kgens: &[Permutation],
    tgens: &[Permutation],
    cfg: &PipelineConfig,
) -> Result<Theorem1> {
    let spec = |gens: &[Permutation], degree: usize, name: &str| -> Result<CycleSpec> {
        if gens.iter().any(|g| g.degree() != degree) {
            return Err(Error::arg(format!("{name} must act on {degree} points")));
        }
        if gens.is_empty() {
            return Ok(CycleSpec::trivial(degree));
        }
        is_powers_of_disjoint_cycles(gens).ok_or_else(|| {
            Error::Hypothesis(format!(
                "{name} = <{}> is not generated by powers of disjoint cycles as given",
                crate::perm::format_generators(gens)
            ))
        })
    };
    let kspec = spec(kgens, k, "K")?;
    let tspec = spec(tgens, t, "T")?;
    theorem1_scd(k, t, BlockGroup::Cycles(kspec), tspec, cfg)
}

fn check_wreath_order(kg: &GeneratedGroup, tg: &GeneratedGroup, g: &GeneratedGroup, t: usize, cap: usize) -> Result<Option<u128>> {
    let (Ok(ko), Ok(to)) = (kg.order(cap), tg.order(cap)) else {
        return Ok(None);
    };
    let expected = (ko as u128).checked_pow(t as u32).and_then(|p| p.checked_mul(to as u128));
    match expected {
        Some(e) if e <= cap as u128 => {
            let got = g.order(cap)? as u128;
            if got != e {
                return Err(Error::Internal(format!("wreath product has order {got}, expected {e}")));
            }
            Ok(Some(e))
        }
        _ => Ok(None),
    }
}

impl Theorem1 {
    pub fn n(&self) -> usize {
        self.k * self.t
    }

    /// `([Y_1]_K, .., [Y_t]_K)` for the block restrictions `Y_r` of `y`.
    pub fn block_tuple(&self, y: u32) -> Vec<usize> {
        (0..self.t)
            .map(|r| self.block.quotient.orbit_of((y >> (r * self.k) & block_mask(self.k)) as usize))
            .collect()
    }

    /// `Φ(Y)`: representative grid index and orbit in its stabilizer quotient.
    pub fn phi_map(&self, y: u32) -> Result<(usize, usize)> {
        self.engine.phi(&self.block_tuple(y))
    }

    /// `Φ` is well defined on `G`-orbits, injective, and onto the disjoint
    /// union of the grid quotients.
    pub fn check_phi_bijection(&self) -> Result<()> {
        self.engine
            .check_bijection(&self.quotient, self.ambient.len(), &|x| self.block_tuple(x as u32))
    }

    /// For all subsets `U, V`: some `φ ∈ G` has `φ(U) = V` iff some `τ ∈ T`
    /// has `τ̂(Ū) = V̄`. Both sides are enumerated from full group closures.
    pub fn check_orbit_equivalence(&self, cap: usize) -> Result<()> {
        let g_elems = self.group.elements(cap)?;
        let t_elems = self.tspec.group().elements(cap)?.to_vec();
        let bars: Vec<Vec<usize>> = (0..self.ambient.len() as u32).map(|y| self.block_tuple(y)).collect();
        let bad = (0..self.ambient.len() as u32).into_par_iter().find_any(|&u| {
            let lhs: HashSet<u32> = g_elems.iter().map(|g| permute_mask(g, u)).collect();
            let rhs: HashSet<Vec<usize>> = t_elems
                .iter()
                .map(|tau| act_on_tuple(tau, &bars[u as usize]).unwrap())
                .collect();
            (0..self.ambient.len() as u32).any(|v| lhs.contains(&v) != rhs.contains(&bars[v as usize]))
        });
        match bad {
            Some(u) => Err(Error::Internal(format!(
                "orbit equivalence fails at {}",
                self.ambient.label(u as usize)
            ))),
            None => Ok(()),
        }
    }

    pub fn verify(&self) -> bool {
        verify_scd(&self.quotient.poset, &self.scd).passed()
    }
}

/// `B_{kt}/K′ ≅ (B_k/K)^t` for the base group `K′ = K × .. × K`.
#[derive(Clone, Debug)]
pub struct BaseGroupFactorization {
    pub block: QuotientPoset,
    pub base_quotient: QuotientPoset,
    pub power: RankedPoset,
    pub indexer: TupleIndexer,
    /// `f[o]`: the power element of base orbit `o`.
    pub f: Vec<usize>,
}

/// Builds both sides independently and checks that `F` is a bijection
/// carrying covers onto covers, in both directions.
pub fn base_group_factorization(k: usize, t: usize, kgroup: &BlockGroup) -> Result<BaseGroupFactorization> {
    if k == 0 || t == 0 || kgroup.degree() != k {
        return Err(Error::arg("need k, t positive and K on k points"));
    }
    let n = k * t;
    let bk = boolean_lattice(k)?;
    let kg = kgroup.group();
    let block = quotient(&bk, &kg.generators().iter().map(subset_action).collect::<Vec<_>>())?;
    let mut base_gens = Vec::new();
    for r in 0..t {
        for rho in kg.generators() {
            let mut images: Vec<u32> = (0..n as u32).collect();
            for i in 0..k {
                images[r * k + i] = (r * k) as u32 + rho.apply(i as u32);
            }
            base_gens.push(Permutation::from_images(images)?);
        }
    }
    let bn = boolean_lattice(n)?;
    let base_quotient = quotient(&bn, &base_gens.iter().map(subset_action).collect::<Vec<_>>())?;
    let (power, indexer) = poset_power(&block.poset, t)?;
    let mut f = vec![usize::MAX; base_quotient.len()];
    for y in 0..bn.len() as u32 {
        let tuple: Vec<u32> = (0..t)
            .map(|r| block.orbit_of((y >> (r * k) & block_mask(k)) as usize) as u32)
            .collect();
        let img = indexer.index(&tuple);
        let o = base_quotient.orbit_of(y as usize);
        if f[o] != usize::MAX && f[o] != img {
            return Err(Error::Internal("F is not well defined".into()));
        }
        f[o] = img;
    }
    let mut hit = vec![false; power.len()];
    for &img in &f {
        if hit[img] {
            return Err(Error::Internal("F is not injective".into()));
        }
        hit[img] = true;
    }
    if f.len() != power.len() {
        return Err(Error::Internal("F is not onto".into()));
    }
    let preserved = base_quotient.poset.covers().all(|(a, b)| power.is_cover(f[a], f[b]));
    if !preserved || base_quotient.poset.cover_count() != power.cover_count() {
        return Err(Error::Internal("F does not match covers".into()));
    }
    Ok(BaseGroupFactorization {
        block,
        base_quotient,
        power,
        indexer,
        f,
    })
}
