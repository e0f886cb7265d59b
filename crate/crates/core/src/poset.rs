//! Finite graded posets with an explicit cover relation, chains, chain
//! decompositions, and the symmetric chain decomposition verifier.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

pub const BOOLEAN_CAP: usize = 24;
pub const PRODUCT_CAP: usize = 1_000_000;

/// A finite poset with a unique minimum whose maximal chains all have the same
/// length. Elements are `0..len()`; covers are kept in both directions in
/// compressed adjacency form, sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankedPoset {
    labels: Vec<String>,
    rank: Vec<u32>,
    up_start: Vec<u32>,
    up: Vec<u32>,
    down_start: Vec<u32>,
    down: Vec<u32>,
    top_rank: u32,
    levels: Vec<Vec<u32>>,
}

fn compress(n: usize, pairs: &[(u32, u32)]) -> (Vec<u32>, Vec<u32>) {
    let mut start = vec![0u32; n + 1];
    for &(a, _) in pairs {
        start[a as usize + 1] += 1;
    }
    for i in 0..n {
        start[i + 1] += start[i];
    }
    let mut fill = start.clone();
    let mut adj = vec![0u32; pairs.len()];
    for &(a, b) in pairs {
        adj[fill[a as usize] as usize] = b;
        fill[a as usize] += 1;
    }
    for i in 0..n {
        adj[start[i] as usize..start[i + 1] as usize].sort_unstable();
    }
    (start, adj)
}

impl RankedPoset {
    /// Validates: a unique rank-0 element that is the minimum, every cover
    /// raises rank by one, every non-minimal element covers something, and
    /// every element below the top rank is covered by something.
    pub fn new(labels: Vec<String>, rank: Vec<u32>, covers: &[(u32, u32)]) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::InvalidPoset("empty poset".into()));
        }
        if rank.len() != n {
            return Err(Error::InvalidPoset(format!(
                "{} ranks for {n} elements",
                rank.len()
            )));
        }
        for &(a, b) in covers {
            if a as usize >= n || b as usize >= n {
                return Err(Error::InvalidPoset(format!("cover ({a},{b}) out of range")));
            }
            if rank[b as usize] != rank[a as usize] + 1 {
                return Err(Error::InvalidPoset(format!(
                    "cover ({a},{b}) joins ranks {} and {}",
                    rank[a as usize], rank[b as usize]
                )));
            }
        }
        let reversed: Vec<(u32, u32)> = covers.iter().map(|&(a, b)| (b, a)).collect();
        let (up_start, up) = compress(n, covers);
        let (down_start, down) = compress(n, &reversed);
        for x in 0..n {
            let ups = &up[up_start[x] as usize..up_start[x + 1] as usize];
            if ups.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidPoset(format!("duplicate cover above element {x}")));
            }
        }
        let top_rank = *rank.iter().max().unwrap();
        let mut levels = vec![Vec::new(); top_rank as usize + 1];
        for (x, &r) in rank.iter().enumerate() {
            levels[r as usize].push(x as u32);
        }
        let p = RankedPoset {
            labels,
            rank,
            up_start,
            up,
            down_start,
            down,
            top_rank,
            levels,
        };
        if p.levels[0].len() != 1 {
            return Err(Error::InvalidPoset(format!(
                "{} elements of rank 0, expected a unique minimum",
                p.levels[0].len()
            )));
        }
        for x in 0..n {
            if p.rank[x] > 0 && p.lower_covers(x).is_empty() {
                return Err(Error::InvalidPoset(format!(
                    "element {x} of rank {} covers nothing",
                    p.rank[x]
                )));
            }
            if p.rank[x] < top_rank && p.upper_covers(x).is_empty() {
                return Err(Error::InvalidPoset(format!(
                    "maximal element {x} has rank {} below the top rank {top_rank}",
                    p.rank[x]
                )));
            }
        }
        Ok(p)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn rank(&self, x: usize) -> u32 {
        self.rank[x]
    }

    pub fn top_rank(&self) -> u32 {
        self.top_rank
    }

    pub fn minimum(&self) -> usize {
        self.levels[0][0] as usize
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn upper_covers(&self, x: usize) -> &[u32] {
        &self.up[self.up_start[x] as usize..self.up_start[x + 1] as usize]
    }

    pub fn lower_covers(&self, x: usize) -> &[u32] {
        &self.down[self.down_start[x] as usize..self.down_start[x + 1] as usize]
    }

    pub fn is_cover(&self, x: usize, y: usize) -> bool {
        self.upper_covers(x).binary_search(&(y as u32)).is_ok()
    }

    /// Elements of rank `r`, ascending.
    pub fn level(&self, r: u32) -> &[u32] {
        self.levels.get(r as usize).map_or(&[], Vec::as_slice)
    }

    pub fn level_sizes(&self) -> Vec<usize> {
        self.levels.iter().map(Vec::len).collect()
    }

    pub fn cover_count(&self) -> usize {
        self.up.len()
    }

    pub fn covers(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.len()).flat_map(move |x| self.upper_covers(x).iter().map(move |&y| (x, y as usize)))
    }

    /// `x ≤ y`, by upward search through covers.
    pub fn le(&self, x: usize, y: usize) -> bool {
        if x == y {
            return true;
        }
        let target = self.rank[y];
        if self.rank[x] >= target {
            return false;
        }
        let mut seen = vec![false; self.len()];
        let mut queue = VecDeque::from([x]);
        while let Some(z) = queue.pop_front() {
            for &w in self.upper_covers(z) {
                let w = w as usize;
                if w == y {
                    return true;
                }
                if !seen[w] && self.rank[w] < target {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        false
    }

    /// Hex SHA-256 of the canonical JSON form.
    pub fn hash(&self) -> String {
        let json = serde_json::to_string(&self.to_json()).expect("poset serializes");
        hex::encode(Sha256::digest(json.as_bytes()))
    }

    pub fn to_json(&self) -> PosetJson {
        PosetJson {
            elements: self.labels.clone(),
            covers: self.covers().map(|(a, b)| [a as u32, b as u32]).collect(),
            rank: self.rank.clone(),
        }
    }

    pub fn from_json(j: &PosetJson) -> Result<Self> {
        let covers: Vec<(u32, u32)> = j.covers.iter().map(|c| (c[0], c[1])).collect();
        RankedPoset::new(j.elements.clone(), j.rank.clone(), &covers)
    }
}

/// Interchange form: `{"elements": [...], "covers": [[lo, hi], ...], "rank": [...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetJson {
    pub elements: Vec<String>,
    pub covers: Vec<[u32; 2]>,
    pub rank: Vec<u32>,
}

/// `{1,3}`-style label for a subset of a ground set of size `n` (bit `i` is point `i+1`).
pub fn subset_label(mask: u64) -> String {
    let pts: Vec<String> = (0..64)
        .filter(|i| mask >> i & 1 == 1)
        .map(|i| (i + 1).to_string())
        .collect();
    format!("{{{}}}", pts.join(","))
}

/// `B_n`: element `x` is the subset with bitmask `x`, so element order is
/// numeric bitmask order.
pub fn boolean_lattice(ground_size: usize) -> Result<RankedPoset> {
    if ground_size > BOOLEAN_CAP {
        return Err(Error::resource(
            format!("Boolean lattice ground set of size {ground_size}"),
            BOOLEAN_CAP as u128,
        ));
    }
    let n = 1usize << ground_size;
    let mut covers = Vec::with_capacity(n * ground_size / 2);
    for x in 0..n {
        for i in 0..ground_size {
            if x >> i & 1 == 0 {
                covers.push((x as u32, (x | 1 << i) as u32));
            }
        }
    }
    let labels = (0..n).map(|x| subset_label(x as u64)).collect();
    let rank = (0..n).map(|x| (x as u32).count_ones()).collect();
    RankedPoset::new(labels, rank, &covers)
}

/// Mixed-radix indexing of tuples `0 ≤ a_r ≤ lengths[r]`, first coordinate
/// most significant, so index order is lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TupleIndexer {
    radix: Vec<usize>,
    stride: Vec<usize>,
    total: usize,
}

impl TupleIndexer {
    pub fn new(radix: Vec<usize>, cap: usize) -> Result<Self> {
        let mut stride = vec![0; radix.len()];
        let mut total: usize = 1;
        for r in (0..radix.len()).rev() {
            stride[r] = total;
            total = total
                .checked_mul(radix[r])
                .filter(|&t| t <= cap)
                .ok_or_else(|| Error::resource("chain product size", cap as u128))?;
        }
        Ok(TupleIndexer { radix, stride, total })
    }

    pub fn total(&self) -> usize {
        self.total
    }

    pub fn dims(&self) -> usize {
        self.radix.len()
    }

    pub fn radix(&self) -> &[usize] {
        &self.radix
    }

    pub fn stride(&self, r: usize) -> usize {
        self.stride[r]
    }

    pub fn index(&self, tuple: &[u32]) -> usize {
        tuple
            .iter()
            .zip(&self.stride)
            .map(|(&a, &s)| a as usize * s)
            .sum()
    }

    pub fn tuple(&self, mut index: usize) -> Vec<u32> {
        let mut out = vec![0u32; self.radix.len()];
        for r in 0..self.radix.len() {
            out[r] = (index / self.stride[r]) as u32;
            index %= self.stride[r];
        }
        out
    }
}

fn tuple_label(t: &[u32]) -> String {
    let parts: Vec<String> = t.iter().map(u32::to_string).collect();
    format!("({})", parts.join(","))
}

/// Product of chains of the given lengths (a chain of length `l` has `l+1` elements).
pub fn chain_product(lengths: &[usize]) -> Result<RankedPoset> {
    if lengths.is_empty() {
        return Err(Error::arg("chain product needs at least one factor"));
    }
    if lengths.contains(&0) {
        return Err(Error::arg("chain lengths must be positive"));
    }
    grid_poset(lengths)
}

/// [`chain_product`] allowing zero-length (one-element) factors.
pub fn grid_poset(lengths: &[usize]) -> Result<RankedPoset> {
    let idx = TupleIndexer::new(lengths.iter().map(|l| l + 1).collect(), PRODUCT_CAP)?;
    let mut covers = Vec::new();
    let mut labels = Vec::with_capacity(idx.total());
    let mut rank = Vec::with_capacity(idx.total());
    for x in 0..idx.total() {
        let t = idx.tuple(x);
        for r in 0..t.len() {
            if (t[r] as usize) < lengths[r] {
                covers.push((x as u32, (x + idx.stride(r)) as u32));
            }
        }
        rank.push(t.iter().sum());
        labels.push(tuple_label(&t));
    }
    RankedPoset::new(labels, rank, &covers)
}

/// Cartesian power `P^n`; element index is the mixed-radix code of the
/// coordinate tuple, first coordinate most significant.
pub fn poset_power(p: &RankedPoset, n: usize) -> Result<(RankedPoset, TupleIndexer)> {
    if n == 0 {
        return Err(Error::arg("power must be positive"));
    }
    let idx = TupleIndexer::new(vec![p.len(); n], PRODUCT_CAP)?;
    let mut covers = Vec::new();
    let mut labels = Vec::with_capacity(idx.total());
    let mut rank = Vec::with_capacity(idx.total());
    for x in 0..idx.total() {
        let t = idx.tuple(x);
        for r in 0..n {
            for &y in p.upper_covers(t[r] as usize) {
                let z = x + (y as usize - t[r] as usize) * idx.stride(r);
                covers.push((x as u32, z as u32));
            }
        }
        rank.push(t.iter().map(|&a| p.rank(a as usize)).sum());
        let parts: Vec<&str> = t.iter().map(|&a| p.label(a as usize)).collect();
        labels.push(format!("({})", parts.join(",")));
    }
    Ok((RankedPoset::new(labels, rank, &covers)?, idx))
}

/// A rank-ascending sequence of element ids.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Chain {
    pub elements: Vec<usize>,
}

impl Chain {
    pub fn new(elements: Vec<usize>) -> Self {
        Chain { elements }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn bottom(&self) -> usize {
        self.elements[0]
    }

    pub fn top(&self) -> usize {
        *self.elements.last().unwrap()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainDecomposition {
    pub chains: Vec<Chain>,
}

impl ChainDecomposition {
    pub fn new(chains: Vec<Chain>) -> Self {
        ChainDecomposition { chains }
    }

    pub fn len(&self) -> usize {
        self.chains.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chains.is_empty()
    }

    /// Canonical chain order: by rank of the bottom element, then bottom id.
    pub fn sorted(mut self, p: &RankedPoset) -> Self {
        self.chains.sort_by_key(|c| (p.rank(c.bottom()), c.bottom()));
        self
    }

    pub fn to_json(&self, p: &RankedPoset) -> DecompositionJson {
        DecompositionJson {
            poset_hash: p.hash(),
            chains: self.chains.iter().map(|c| c.elements.clone()).collect(),
        }
    }
}

/// Interchange form: `{"poset_hash": "...", "chains": [[...], ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionJson {
    pub poset_hash: String,
    pub chains: Vec<Vec<usize>>,
}

impl DecompositionJson {
    pub fn into_decomposition(self) -> ChainDecomposition {
        ChainDecomposition::new(self.chains.into_iter().map(Chain::new).collect())
    }
}

fn is_saturated(p: &RankedPoset, c: &[usize]) -> bool {
    c.windows(2).all(|w| p.is_cover(w[0], w[1]))
}

/// Consecutive elements are covers and the end ranks sum to the top rank.
pub fn is_symmetric_saturated_chain(p: &RankedPoset, c: &Chain) -> Result<bool> {
    if let Some(&x) = c.elements.iter().find(|&&x| x >= p.len()) {
        return Err(Error::arg(format!("element {x} is not in the poset")));
    }
    if c.is_empty() {
        return Ok(false);
    }
    Ok(is_saturated(p, &c.elements) && p.rank(c.bottom()) + p.rank(c.top()) == p.top_rank())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChainCheck {
    pub index: usize,
    pub len: usize,
    pub foreign: bool,
    pub saturated: bool,
    pub symmetric: bool,
}

impl ChainCheck {
    pub fn ok(&self) -> bool {
        !self.foreign && self.saturated && self.symmetric
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScdReport {
    pub chains: Vec<ChainCheck>,
    /// Elements of the poset in no chain.
    pub missing: Vec<usize>,
    /// Elements appearing more than once.
    pub duplicated: Vec<usize>,
}

impl ScdReport {
    pub fn partition_ok(&self) -> bool {
        self.missing.is_empty() && self.duplicated.is_empty()
    }

    pub fn passed(&self) -> bool {
        self.partition_ok() && self.chains.iter().all(ChainCheck::ok)
    }

    pub fn failures(&self) -> Vec<String> {
        let mut out = Vec::new();
        for c in self.chains.iter().filter(|c| !c.ok()) {
            let mut why = Vec::new();
            if c.foreign {
                why.push("foreign element");
            }
            if !c.saturated {
                why.push("not saturated");
            }
            if !c.symmetric {
                why.push("not symmetric");
            }
            out.push(format!("chain {}: {}", c.index, why.join(", ")));
        }
        if !self.missing.is_empty() {
            out.push(format!("partition: {} element(s) uncovered", self.missing.len()));
        }
        if !self.duplicated.is_empty() {
            out.push(format!(
                "partition: {} element(s) in more than one chain",
                self.duplicated.len()
            ));
        }
        out
    }
}

/// Checks every chain for saturation and symmetry and the family for being a
/// partition. Failures are report entries.
pub fn verify_scd(p: &RankedPoset, d: &ChainDecomposition) -> ScdReport {
    let mut hits = vec![0u32; p.len()];
    let mut chains = Vec::with_capacity(d.len());
    for (index, c) in d.chains.iter().enumerate() {
        let foreign = c.elements.iter().any(|&x| x >= p.len());
        for &x in c.elements.iter().filter(|&&x| x < p.len()) {
            hits[x] += 1;
        }
        let (saturated, symmetric) = if foreign || c.is_empty() {
            (false, false)
        } else {
            let sat = is_saturated(p, &c.elements);
            (sat, sat && p.rank(c.bottom()) + p.rank(c.top()) == p.top_rank())
        };
        chains.push(ChainCheck {
            index,
            len: c.len(),
            foreign,
            saturated,
            symmetric,
        });
    }
    ScdReport {
        chains,
        missing: (0..p.len()).filter(|&x| hits[x] == 0).collect(),
        duplicated: (0..p.len()).filter(|&x| hits[x] > 1).collect(),
    }
}

/// A subset of a host poset with the induced order, as a poset of its own.
#[derive(Clone, Debug)]
pub struct SubPoset {
    pub poset: RankedPoset,
    /// `embedding[x]` is the host element for part element `x`.
    pub embedding: Vec<usize>,
}

impl SubPoset {
    /// Induced subposet on `elements` (host ids). Fails if the induced order
    /// has a cover that is not a host cover, or is not graded with a minimum.
    pub fn induced(host: &RankedPoset, elements: &[usize]) -> Result<Self> {
        let mut embedding = elements.to_vec();
        embedding.sort_by_key(|&x| (host.rank(x), x));
        embedding.dedup();
        if embedding.len() != elements.len() {
            return Err(Error::arg("repeated element in subposet"));
        }
        let mut local = vec![u32::MAX; host.len()];
        for (i, &x) in embedding.iter().enumerate() {
            if x >= host.len() {
                return Err(Error::arg(format!("element {x} is not in the host")));
            }
            local[x] = i as u32;
        }
        let base = host.rank(embedding[0]);
        let mut covers = Vec::new();
        for (i, &x) in embedding.iter().enumerate() {
            // Members strictly above x, then keep the minimal ones.
            let mut seen = vec![false; host.len()];
            let mut above = Vec::new();
            let mut queue = VecDeque::from([x]);
            while let Some(z) = queue.pop_front() {
                for &w in host.upper_covers(z) {
                    let w = w as usize;
                    if !seen[w] {
                        seen[w] = true;
                        queue.push_back(w);
                        if local[w] != u32::MAX {
                            above.push(w);
                        }
                    }
                }
            }
            for &y in &above {
                let minimal = !above.iter().any(|&z| z != y && host.rank(z) < host.rank(y) && host.le(z, y));
                if minimal {
                    if !host.is_cover(x, y) {
                        return Err(Error::Hypothesis(format!(
                            "subposet is not saturated: {} < {} is a cover in the part only",
                            host.label(x),
                            host.label(y)
                        )));
                    }
                    covers.push((i as u32, local[y]));
                }
            }
        }
        let labels = embedding.iter().map(|&x| host.label(x).to_string()).collect();
        let rank = embedding.iter().map(|&x| host.rank(x) - base).collect();
        let poset = RankedPoset::new(labels, rank, &covers)?;
        Ok(SubPoset { poset, embedding })
    }

    /// Saturated (every part cover is a host cover) and symmetric (a unique
    /// maximum, with end ranks summing to the host's top rank).
    pub fn is_symmetric_saturated_in(&self, host: &RankedPoset) -> bool {
        let saturated = self
            .poset
            .covers()
            .all(|(a, b)| host.is_cover(self.embedding[a], self.embedding[b]));
        let tops = self.poset.level(self.poset.top_rank());
        saturated
            && tops.len() == 1
            && host.rank(self.embedding[self.poset.minimum()]) + host.rank(self.embedding[tops[0] as usize])
                == host.top_rank()
    }
}

/// Union of the decompositions of saturated, symmetric parts partitioning
/// the host, re-expressed in host ids.
pub fn partition_sum_scd(host: &RankedPoset, parts: &[(SubPoset, ChainDecomposition)]) -> Result<ChainDecomposition> {
    let mut owner = vec![usize::MAX; host.len()];
    for (i, (part, _)) in parts.iter().enumerate() {
        if part.embedding.len() != part.poset.len() {
            return Err(Error::arg(format!("part {i}: embedding size mismatch")));
        }
        for &x in &part.embedding {
            if x >= host.len() {
                return Err(Error::arg(format!("part {i}: element {x} is not in the host")));
            }
            if owner[x] != usize::MAX {
                return Err(Error::arg(format!(
                    "parts {} and {i} overlap at {}",
                    owner[x],
                    host.label(x)
                )));
            }
            owner[x] = i;
        }
    }
    if let Some(x) = owner.iter().position(|&o| o == usize::MAX) {
        return Err(Error::arg(format!("no part contains {}", host.label(x))));
    }
    let mut chains = Vec::new();
    for (i, (part, d)) in parts.iter().enumerate() {
        if !part.is_symmetric_saturated_in(host) {
            return Err(Error::Hypothesis(format!(
                "part {i} is not saturated and symmetric in the host"
            )));
        }
        let report = verify_scd(&part.poset, d);
        if !report.passed() {
            return Err(Error::Hypothesis(format!(
                "part {i}: {}",
                report.failures().join("; ")
            )));
        }
        chains.extend(
            d.chains
                .iter()
                .map(|c| Chain::new(c.elements.iter().map(|&x| part.embedding[x]).collect())),
        );
    }
    let out = ChainDecomposition::new(chains);
    let report = verify_scd(host, &out);
    if !report.passed() {
        return Err(Error::Internal(format!(
            "assembled decomposition fails: {}",
            report.failures().join("; ")
        )));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn binom(n: usize, k: usize) -> usize {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn boolean_lattice_shapes() {
        let b1 = boolean_lattice(1).unwrap();
        assert_eq!(b1.len(), 2);
        assert_eq!(b1.level_sizes(), vec![1, 1]);
        assert_eq!(boolean_lattice(3).unwrap().level_sizes(), vec![1, 3, 3, 1]);
        let b6 = boolean_lattice(6).unwrap();
        assert_eq!((b6.len(), b6.top_rank()), (64, 6));
        assert_eq!(b6.label(0b101), "{1,3}");
        assert!(matches!(boolean_lattice(25), Err(Error::Resource { .. })));
    }

    #[test]
    fn chain_product_shapes() {
        let c = chain_product(&[2]).unwrap();
        assert_eq!(c.level_sizes(), vec![1, 1, 1]);
        assert_eq!(chain_product(&[1, 1]).unwrap().level_sizes(), vec![1, 2, 1]);
        let g = chain_product(&[2, 2]).unwrap();
        assert_eq!(g.len(), 9);
        // Enumerate tuples directly.
        let mut sizes = vec![0; 5];
        for a in 0..3 {
            for b in 0..3 {
                sizes[a + b] += 1;
            }
        }
        assert_eq!(g.level_sizes(), sizes);
        assert_eq!(g.label(5), "(1,2)");
        assert!(matches!(chain_product(&[999, 999, 999]), Err(Error::Resource { .. })));
        assert!(chain_product(&[0]).is_err());
    }

    #[test]
    fn rejects_ungraded_input() {
        let labels = |n: usize| (0..n).map(|i| i.to_string()).collect::<Vec<_>>();
        // Two minima.
        assert!(RankedPoset::new(labels(2), vec![0, 0], &[]).is_err());
        // Cover skipping a rank.
        assert!(RankedPoset::new(labels(2), vec![0, 2], &[(0, 1)]).is_err());
        // Short maximal chain: 0 < 1 < 2 and 0 < 3 with 3 maximal at rank 1.
        assert!(RankedPoset::new(labels(4), vec![0, 1, 2, 1], &[(0, 1), (1, 2), (0, 3)]).is_err());
        // The "V": fine as a ranked poset.
        assert!(RankedPoset::new(labels(3), vec![0, 1, 1], &[(0, 1), (0, 2)]).is_ok());
    }

    #[test]
    fn symmetric_saturated_chain_examples() {
        let b1 = boolean_lattice(1).unwrap();
        assert!(is_symmetric_saturated_chain(&b1, &Chain::new(vec![0, 1])).unwrap());
        let b4 = boolean_lattice(4).unwrap();
        assert!(is_symmetric_saturated_chain(&b4, &Chain::new(vec![0b0011])).unwrap());
        let b3 = boolean_lattice(3).unwrap();
        assert!(!is_symmetric_saturated_chain(&b3, &Chain::new(vec![0, 1])).unwrap());
        assert!(!is_symmetric_saturated_chain(&b3, &Chain::new(vec![0, 3, 7])).unwrap());
        assert!(is_symmetric_saturated_chain(&b3, &Chain::new(vec![0, 99])).is_err());
    }

    #[test]
    fn verify_reports_asymmetric_chain() {
        let b2 = boolean_lattice(2).unwrap();
        let d = ChainDecomposition::new(vec![
            Chain::new(vec![0]),
            Chain::new(vec![0b01, 0b11]),
            Chain::new(vec![0b10]),
        ]);
        let r = verify_scd(&b2, &d);
        assert!(!r.passed());
        assert!(r.partition_ok());
        assert!(!r.chains[0].symmetric);
        assert!(!r.chains[1].symmetric);
        assert!(r.chains[2].ok());
    }

    #[test]
    fn verify_reports_partition_failures() {
        let b2 = boolean_lattice(2).unwrap();
        let d = ChainDecomposition::new(vec![Chain::new(vec![0, 1, 3]), Chain::new(vec![1])]);
        let r = verify_scd(&b2, &d);
        assert_eq!(r.missing, vec![2]);
        assert_eq!(r.duplicated, vec![1]);
        assert!(r.failures().iter().any(|f| f.starts_with("partition")));
    }

    #[test]
    fn json_round_trip_and_hash() {
        let p = chain_product(&[1, 2]).unwrap();
        let j = p.to_json();
        let text = serde_json::to_string(&j).unwrap();
        let back: PosetJson = serde_json::from_str(&text).unwrap();
        let q = RankedPoset::from_json(&back).unwrap();
        assert_eq!(p, q);
        assert_eq!(p.hash(), q.hash());
        assert_ne!(p.hash(), chain_product(&[2, 1]).unwrap().hash());
    }

    #[test]
    fn partition_sum_single_part_is_identity() {
        let b2 = boolean_lattice(2).unwrap();
        let d = ChainDecomposition::new(vec![Chain::new(vec![0, 1, 3]), Chain::new(vec![2])]);
        let whole = SubPoset::induced(&b2, &[0, 1, 2, 3]).unwrap();
        let local = ChainDecomposition::new(
            d.chains
                .iter()
                .map(|c| Chain::new(c.elements.iter().map(|x| whole.embedding.iter().position(|y| y == x).unwrap()).collect()))
                .collect(),
        );
        let out = partition_sum_scd(&b2, &[(whole, local)]).unwrap();
        assert_eq!(out, d);
    }

    #[test]
    fn partition_sum_rejects_bad_parts() {
        let b2 = boolean_lattice(2).unwrap();
        let lower = SubPoset::induced(&b2, &[0, 1]).unwrap();
        let rest = SubPoset::induced(&b2, &[2, 3]).unwrap();
        let chain = ChainDecomposition::new(vec![Chain::new(vec![0, 1])]);
        // {∅,{1}} is not symmetric in B_2.
        let err = partition_sum_scd(&b2, &[(lower.clone(), chain.clone()), (rest, chain.clone())]);
        assert!(matches!(err, Err(Error::Hypothesis(_))));
        // Missing elements.
        assert!(partition_sum_scd(&b2, &[(lower, chain)]).is_err());
        // {∅, {1,2}} induces a non-saturated cover.
        assert!(SubPoset::induced(&b2, &[0, 3]).is_err());
    }

    fn arb_boolean_n() -> impl Strategy<Value = usize> {
        1usize..9
    }

    proptest! {
        #[test]
        fn boolean_levels_are_binomial(n in arb_boolean_n()) {
            let b = boolean_lattice(n).unwrap();
            let expected: Vec<usize> = (0..=n).map(|k| binom(n, k)).collect();
            prop_assert_eq!(b.level_sizes(), expected);
            prop_assert_eq!(b.cover_count(), n << (n - 1));
        }

        #[test]
        fn product_levels_match_enumeration(lengths in prop::collection::vec(1usize..4, 1..4)) {
            let p = chain_product(&lengths).unwrap();
            let top: usize = lengths.iter().sum();
            let mut sizes = vec![0usize; top + 1];
            let count: usize = lengths.iter().map(|l| l + 1).product();
            for mut code in 0..count {
                let mut sum = 0;
                for l in &lengths {
                    sum += code % (l + 1);
                    code /= l + 1;
                }
                sizes[sum] += 1;
            }
            prop_assert_eq!(p.level_sizes(), sizes);
        }

        #[test]
        fn symmetric_chains_survive_relabeling(n in 2usize..6, seed in any::<u64>()) {
            // A coordinate permutation of B_n is a rank-preserving isomorphism.
            let b = boolean_lattice(n).unwrap();
            let mut perm: Vec<usize> = (0..n).collect();
            let mut s = seed;
            for i in (1..n).rev() {
                s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                perm.swap(i, (s >> 33) as usize % (i + 1));
            }
            let relabel = |x: usize| (0..n).filter(|i| x >> i & 1 == 1).map(|i| 1 << perm[i]).sum::<usize>();
            let full: usize = (1 << n) - 1;
            let c = Chain::new((0..=n).map(|k| full >> (n - k) ).collect());
            prop_assert!(is_symmetric_saturated_chain(&b, &c).unwrap());
            let mapped = Chain::new(c.elements.iter().map(|&x| relabel(x)).collect());
            prop_assert!(is_symmetric_saturated_chain(&b, &mapped).unwrap());
        }
    }
}
