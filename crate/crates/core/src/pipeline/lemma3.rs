//! Decompositions of chain-product quotients by groups generated by powers of
//! disjoint cycles, and of `B_k / K` for the groups `K` a block may carry.

use std::fmt;

use crate::error::{Error, Result};
use crate::group::{CycleSpec, GeneratedGroup};
use crate::poset::{boolean_lattice, grid_poset, verify_scd, Chain, ChainDecomposition, RankedPoset, TupleIndexer, PRODUCT_CAP};
use crate::quotient::{coordinate_action, quotient, subset_action, ElementMap, QuotientPoset};
use crate::scd::{chain_product_scd, greene_kleitman_scd, search_scd, SearchConfig};

/// An SCD of a quotient poset, over its orbit ids.
#[derive(Clone, Debug)]
pub struct QuotientScd {
    pub base: RankedPoset,
    pub quotient: QuotientPoset,
    pub scd: ChainDecomposition,
}

/// Search on `base / ⟨maps⟩`. Existence is guaranteed by the caller's
/// hypothesis, so an exhausted search is an internal error.
pub(crate) fn guaranteed_quotient_scd(
    base: RankedPoset,
    maps: &[ElementMap],
    search: &SearchConfig,
    what: &str,
) -> Result<QuotientScd> {
    let q = quotient(&base, maps)?;
    let scd = search_scd(&q.poset, search)?
        .ok_or_else(|| Error::Internal(format!("no symmetric chain decomposition of {what}")))?;
    Ok(QuotientScd {
        base,
        quotient: q,
        scd,
    })
}

/// SCD of `(C_{l_1} × .. × C_{l_m}) / K` with `K` acting by permuting
/// coordinates. Zero lengths (one-point factors) are allowed.
pub fn chain_product_quotient_scd(lengths: &[usize], spec: &CycleSpec, search: &SearchConfig) -> Result<QuotientScd> {
    if spec.degree != lengths.len() {
        return Err(Error::arg(format!(
            "group of degree {} on a product of {} chains",
            spec.degree,
            lengths.len()
        )));
    }
    let idx = TupleIndexer::new(lengths.iter().map(|l| l + 1).collect(), PRODUCT_CAP)?;
    let base = grid_poset(lengths)?;
    if spec.is_trivial() {
        let q = quotient(&base, &[])?;
        let scd = chain_product_scd(lengths)?;
        return Ok(QuotientScd { base, quotient: q, scd });
    }
    let maps = spec
        .permutations()
        .iter()
        .map(|g| coordinate_action(g, &idx))
        .collect::<Result<Vec<_>>>()?;
    guaranteed_quotient_scd(base, &maps, search, &format!("a chain product by {spec}"))
}

/// The group acting inside each block.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BlockGroup {
    Cycles(CycleSpec),
    Symmetric(usize),
    Alternating(usize),
}

impl BlockGroup {
    pub fn degree(&self) -> usize {
        match self {
            BlockGroup::Cycles(s) => s.degree,
            BlockGroup::Symmetric(k) | BlockGroup::Alternating(k) => *k,
        }
    }

    pub fn group(&self) -> GeneratedGroup {
        match self {
            BlockGroup::Cycles(s) => s.group(),
            BlockGroup::Symmetric(k) => GeneratedGroup::symmetric(*k),
            BlockGroup::Alternating(k) => GeneratedGroup::alternating(*k),
        }
    }

    /// `B_k/S_k` is always a chain, `B_k/A_k` once `A_k` is transitive on
    /// every level (`k ≥ 3`); `A_1`, `A_2` are trivial.
    fn quotient_is_chain(&self) -> bool {
        match self {
            BlockGroup::Symmetric(_) => true,
            BlockGroup::Alternating(k) => *k >= 3,
            BlockGroup::Cycles(_) => false,
        }
    }
}

impl fmt::Display for BlockGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BlockGroup::Cycles(s) => write!(f, "{s}"),
            BlockGroup::Symmetric(k) => write!(f, "S_{k}"),
            BlockGroup::Alternating(k) => write!(f, "A_{k}"),
        }
    }
}

/// SCD of `B_k / K`: the quotient itself when it is a chain, bracketing when
/// `K` is trivial, search otherwise (`B_k` is a product of two-element chains).
pub fn block_quotient_scd(kgroup: &BlockGroup, search: &SearchConfig) -> Result<QuotientScd> {
    let k = kgroup.degree();
    if k == 0 {
        return Err(Error::arg("block size must be positive"));
    }
    let base = boolean_lattice(k)?;
    let g = kgroup.group();
    let maps: Vec<ElementMap> = g.generators().iter().map(subset_action).collect();
    let trivial = g.is_trivial_by_generators();
    let out = if kgroup.quotient_is_chain() {
        let q = quotient(&base, &maps)?;
        if q.poset.level_sizes().iter().any(|&c| c != 1) {
            return Err(Error::Internal(format!("B_{k}/{kgroup} is not a chain")));
        }
        let mut chain: Vec<usize> = (0..q.len()).collect();
        chain.sort_by_key(|&o| q.poset.rank(o));
        QuotientScd {
            base,
            quotient: q,
            scd: ChainDecomposition::new(vec![Chain::new(chain)]),
        }
    } else if trivial {
        let q = quotient(&base, &[])?;
        let gk = greene_kleitman_scd(k)?;
        let scd = ChainDecomposition::new(
            gk.chains
                .iter()
                .map(|c| Chain::new(c.elements.iter().map(|&x| q.orbit_of(x)).collect()))
                .collect(),
        );
        QuotientScd { base, quotient: q, scd }
    } else {
        guaranteed_quotient_scd(base, &maps, search, &format!("B_{k}/{kgroup}"))?
    };
    let report = verify_scd(&out.quotient.poset, &out.scd);
    if !report.passed() {
        return Err(Error::Internal(format!(
            "decomposition of B_{k}/{kgroup} fails: {}",
            report.failures().join("; ")
        )));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::CyclePower;

    #[test]
    fn cyclic_quotient_of_b4() {
        let spec = CycleSpec::full_cycle(4, 1);
        let r = chain_product_quotient_scd(&[1, 1, 1, 1], &spec, &SearchConfig::default()).unwrap();
        assert_eq!(r.quotient.len(), 6);
        assert_eq!(r.scd.len(), 2);
        assert!(verify_scd(&r.quotient.poset, &r.scd).passed());
    }

    #[test]
    fn symmetric_square_of_a_three_chain() {
        let spec = CycleSpec::full_cycle(2, 1);
        let r = chain_product_quotient_scd(&[2, 2], &spec, &SearchConfig::default()).unwrap();
        assert_eq!(r.quotient.len(), 6);
        assert_eq!(r.scd.len(), 2);
    }

    #[test]
    fn single_chain_with_trivial_group() {
        let r = chain_product_quotient_scd(&[4], &CycleSpec::trivial(1), &SearchConfig::default()).unwrap();
        assert_eq!(r.scd.chains, vec![Chain::new(vec![0, 1, 2, 3, 4])]);
    }

    #[test]
    fn mismatched_lengths_are_rejected() {
        let spec = CycleSpec::new(2, vec![CyclePower { cycle: vec![0, 1], power: 1 }]).unwrap();
        assert!(matches!(
            chain_product_quotient_scd(&[1, 2], &spec, &SearchConfig::default()),
            Err(Error::Hypothesis(_))
        ));
    }

    #[test]
    fn block_groups() {
        let cfg = SearchConfig::default();
        for k in 1..=6 {
            let s = block_quotient_scd(&BlockGroup::Symmetric(k), &cfg).unwrap();
            assert_eq!(s.scd.chains[0].len(), k + 1);
            let a = block_quotient_scd(&BlockGroup::Alternating(k), &cfg).unwrap();
            assert!(verify_scd(&a.quotient.poset, &a.scd).passed());
        }
        // A_2 is trivial, so B_2/A_2 = B_2 with two chains.
        assert_eq!(block_quotient_scd(&BlockGroup::Alternating(2), &cfg).unwrap().scd.len(), 2);
        let z4 = block_quotient_scd(&BlockGroup::Cycles(CycleSpec::full_cycle(4, 1)), &cfg).unwrap();
        assert_eq!(z4.scd.len(), 2);
        let sq = block_quotient_scd(&BlockGroup::Cycles(CycleSpec::full_cycle(4, 2)), &cfg).unwrap();
        assert!(verify_scd(&sq.quotient.poset, &sq.scd).passed());
    }
}
