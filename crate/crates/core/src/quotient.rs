//! Orbit posets `P/G` for groups acting on a ranked poset by automorphisms.

use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::poset::{RankedPoset, TupleIndexer};

/// A permutation of a poset's element ids.
pub type ElementMap = Vec<u32>;

/// `P/G`: orbits ordered by `[x] ≤ [y]` iff some members compare. Orbit ids
/// follow the order of their least members, and the least member is the
/// orbit's representative.
#[derive(Clone, Debug)]
pub struct QuotientPoset {
    pub poset: RankedPoset,
    orbit_of: Vec<u32>,
    orbits: Vec<Vec<u32>>,
}

impl QuotientPoset {
    pub fn orbit_of(&self, x: usize) -> usize {
        self.orbit_of[x] as usize
    }

    /// Members of orbit `o`, ascending.
    pub fn orbit(&self, o: usize) -> &[u32] {
        &self.orbits[o]
    }

    pub fn rep(&self, o: usize) -> usize {
        self.orbits[o][0] as usize
    }

    pub fn len(&self) -> usize {
        self.orbits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orbits.is_empty()
    }

    /// Every orbit's rank equals the base rank of each of its members.
    pub fn rank_law_holds(&self, base: &RankedPoset) -> bool {
        self.orbits.iter().enumerate().all(|(o, members)| {
            members
                .iter()
                .all(|&x| base.rank(x as usize) == self.poset.rank(o))
        })
    }
}

fn check_automorphism(base: &RankedPoset, map: &[u32]) -> Result<()> {
    if map.len() != base.len() {
        return Err(Error::NotAutomorphism(format!(
            "map of length {} on a poset of {} elements",
            map.len(),
            base.len()
        )));
    }
    let mut hit = vec![false; base.len()];
    for &y in map {
        if y as usize >= base.len() || hit[y as usize] {
            return Err(Error::NotAutomorphism("not a bijection".into()));
        }
        hit[y as usize] = true;
    }
    for (x, y) in base.covers() {
        if !base.is_cover(map[x] as usize, map[y] as usize) {
            return Err(Error::NotAutomorphism(format!(
                "cover {} < {} maps to a non-cover",
                base.label(x),
                base.label(y)
            )));
        }
    }
    Ok(())
}

/// Orbit poset of `base` under the group generated by `generators`. Each
/// generator is checked to be an automorphism; covers of the quotient are the
/// rank-adjacent comparabilities, and gradedness is re-validated.
pub fn quotient(base: &RankedPoset, generators: &[ElementMap]) -> Result<QuotientPoset> {
    for g in generators {
        check_automorphism(base, g)?;
    }
    let n = base.len();
    let mut orbit_of = vec![u32::MAX; n];
    let mut orbits: Vec<Vec<u32>> = Vec::new();
    for x in 0..n {
        if orbit_of[x] != u32::MAX {
            continue;
        }
        let o = orbits.len() as u32;
        orbit_of[x] = o;
        let mut members = vec![x as u32];
        let mut i = 0;
        while i < members.len() {
            let y = members[i] as usize;
            for g in generators {
                let z = g[y];
                if orbit_of[z as usize] == u32::MAX {
                    orbit_of[z as usize] = o;
                    members.push(z);
                }
            }
            i += 1;
        }
        members.sort_unstable();
        orbits.push(members);
    }
    let mut covers: Vec<(u32, u32)> = base
        .covers()
        .map(|(x, y)| (orbit_of[x], orbit_of[y]))
        .collect();
    covers.sort_unstable();
    covers.dedup();
    let labels = orbits
        .iter()
        .map(|m| format!("[{}]", base.label(m[0] as usize)))
        .collect();
    let rank = orbits.iter().map(|m| base.rank(m[0] as usize)).collect();
    let poset = RankedPoset::new(labels, rank, &covers)?;
    let q = QuotientPoset {
        poset,
        orbit_of,
        orbits,
    };
    if !q.rank_law_holds(base) {
        return Err(Error::Internal("orbit with members of different ranks".into()));
    }
    Ok(q)
}

/// The action of a permutation of the ground set on subset bitmasks, as a
/// map on the element ids of [`crate::poset::boolean_lattice`].
pub fn subset_action(perm: &Permutation) -> ElementMap {
    let n = perm.degree();
    (0..1u32 << n).map(|mask| permute_mask(perm, mask)).collect()
}

pub fn permute_mask(perm: &Permutation, mask: u32) -> u32 {
    let mut out = 0;
    let mut m = mask;
    while m != 0 {
        let i = m.trailing_zeros();
        out |= 1 << perm.apply(i);
        m &= m - 1;
    }
    out
}

/// Coordinate permutation on tuples indexed by `idx`: the entry at position
/// `r` moves to position `perm(r)`. Only meaningful when permuted coordinates
/// have equal radix.
pub fn coordinate_action(perm: &Permutation, idx: &TupleIndexer) -> Result<ElementMap> {
    if perm.degree() != idx.dims() {
        return Err(Error::arg(format!(
            "permutation of degree {} on {}-tuples",
            perm.degree(),
            idx.dims()
        )));
    }
    for r in 0..idx.dims() {
        if idx.radix()[r] != idx.radix()[perm.apply(r as u32) as usize] {
            return Err(Error::Hypothesis(format!(
                "{perm} moves coordinate {} onto a factor of a different length",
                r + 1
            )));
        }
    }
    Ok((0..idx.total())
        .map(|x| {
            let t = idx.tuple(x);
            let mut out = vec![0u32; t.len()];
            for (r, &a) in t.iter().enumerate() {
                out[perm.apply(r as u32) as usize] = a;
            }
            idx.index(&out) as u32
        })
        .collect())
}

/// `B_n / G` for a group given by generators on the ground set.
pub fn boolean_quotient(n: usize, generators: &[Permutation]) -> Result<(RankedPoset, QuotientPoset)> {
    let b = crate::poset::boolean_lattice(n)?;
    let maps: Vec<ElementMap> = generators.iter().map(subset_action).collect();
    let q = quotient(&b, &maps)?;
    Ok((b, q))
}

/// Independent orbit count, `(1/|G|) Σ_g 2^{c(g)}` with `c(g)` the number of
/// cycles of `g` (fixed points included).
pub fn burnside_subset_orbits(elements: &[Permutation]) -> u128 {
    let total: u128 = elements
        .iter()
        .map(|g| 1u128 << g.cycle_type().len())
        .sum();
    total / elements.len() as u128
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{GeneratedGroup, DEFAULT_CLOSURE_CAP};
    use crate::perm::parse_generators;
    use crate::poset::chain_product;

    #[test]
    fn necklaces_of_six() {
        let gens = parse_generators("(1 2 3 4 5 6)", None).unwrap();
        let (b, q) = boolean_quotient(6, &gens).unwrap();
        assert_eq!(q.len(), 14);
        assert_eq!(q.poset.level_sizes(), vec![1, 1, 3, 4, 3, 1, 1]);
        assert!(q.rank_law_holds(&b));
        let g = GeneratedGroup::new(6, gens).unwrap();
        assert_eq!(burnside_subset_orbits(g.elements(DEFAULT_CLOSURE_CAP).unwrap()), 14);
    }

    #[test]
    fn dihedral_square() {
        let gens = parse_generators("(1 2 3 4), (1 3)", None).unwrap();
        let (_, q) = boolean_quotient(4, &gens).unwrap();
        assert_eq!(q.len(), 6);
        let g = GeneratedGroup::new(4, gens).unwrap();
        assert_eq!(burnside_subset_orbits(g.elements(DEFAULT_CLOSURE_CAP).unwrap()), 6);
    }

    #[test]
    fn trivial_group_gives_a_copy() {
        let p = chain_product(&[1, 2]).unwrap();
        let q = quotient(&p, &[]).unwrap();
        assert_eq!(q.len(), p.len());
        for x in 0..p.len() {
            assert_eq!(q.orbit_of(x), x);
        }
        let q_covers: Vec<_> = q.poset.covers().collect();
        let p_covers: Vec<_> = p.covers().collect();
        assert_eq!(q_covers, p_covers);
    }

    #[test]
    fn rejects_non_automorphisms() {
        let p = chain_product(&[1, 2]).unwrap();
        // Swapping the two coordinates is not an automorphism of C_2 x C_3.
        let idx = TupleIndexer::new(vec![2, 3], 100).unwrap();
        let swap = parse_generators("(1 2)", None).unwrap();
        assert!(matches!(coordinate_action(&swap[0], &idx), Err(Error::Hypothesis(_))));
        let bad: ElementMap = vec![1, 0, 2, 3, 4, 5];
        assert!(matches!(quotient(&p, &[bad]), Err(Error::NotAutomorphism(_))));
    }

    #[test]
    fn symmetric_square_of_a_three_chain() {
        let p = chain_product(&[2, 2]).unwrap();
        let idx = TupleIndexer::new(vec![3, 3], 100).unwrap();
        let swap = parse_generators("(1 2)", None).unwrap();
        let q = quotient(&p, &[coordinate_action(&swap[0], &idx).unwrap()]).unwrap();
        assert_eq!(q.len(), 6);
        assert_eq!(q.poset.level_sizes(), vec![1, 1, 2, 1, 1]);
    }
}
