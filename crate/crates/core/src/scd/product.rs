use crate::error::{Error, Result};
use crate::poset::{Chain, ChainDecomposition, RankedPoset, TupleIndexer, PRODUCT_CAP};

/// Symmetric chains of the grid `[0..=l_1] × .. × [0..=l_m]`, each chain a
/// list of coordinate tuples.
///
/// Two factors are split by peeling hooks: hook `h` runs along row `h` from
/// column 0 to column `n-h`, then up that column to the last row. More
/// factors fold from the left, peeling every chain built so far against the
/// next factor.
pub fn staircase_chains(lengths: &[usize]) -> Vec<Vec<Vec<u32>>> {
    let Some((&first, rest)) = lengths.split_first() else {
        return vec![vec![Vec::new()]];
    };
    let mut chains: Vec<Vec<Vec<u32>>> = vec![(0..=first as u32).map(|a| vec![a]).collect()];
    for &n in rest {
        let mut next = Vec::new();
        for c in &chains {
            let m = c.len() - 1;
            for h in 0..=m.min(n) {
                let mut hook = Vec::with_capacity(m + n + 1 - 2 * h);
                for j in 0..=(n - h) {
                    let mut p = c[h].clone();
                    p.push(j as u32);
                    hook.push(p);
                }
                for row in c.iter().take(m + 1).skip(h + 1) {
                    let mut p = row.clone();
                    p.push((n - h) as u32);
                    hook.push(p);
                }
                next.push(hook);
            }
        }
        chains = next;
    }
    chains
}

/// Decomposition of [`crate::poset::chain_product`]`(lengths)` by hook peeling.
pub fn chain_product_scd(lengths: &[usize]) -> Result<ChainDecomposition> {
    let idx = TupleIndexer::new(lengths.iter().map(|l| l + 1).collect(), PRODUCT_CAP)?;
    Ok(ChainDecomposition::new(
        staircase_chains(lengths)
            .into_iter()
            .map(|c| Chain::new(c.iter().map(|t| idx.index(t)).collect()))
            .collect(),
    ))
}

/// `P × Q` with element `(a, b)` at index `a·|Q| + b`.
pub fn product_poset(p: &RankedPoset, q: &RankedPoset) -> Result<RankedPoset> {
    let total = p
        .len()
        .checked_mul(q.len())
        .filter(|&t| t <= PRODUCT_CAP)
        .ok_or_else(|| Error::resource("product poset size", PRODUCT_CAP as u128))?;
    let mut labels = Vec::with_capacity(total);
    let mut rank = Vec::with_capacity(total);
    let mut covers = Vec::new();
    for a in 0..p.len() {
        for b in 0..q.len() {
            let x = (a * q.len() + b) as u32;
            labels.push(format!("({},{})", p.label(a), q.label(b)));
            rank.push(p.rank(a) + q.rank(b));
            for &a2 in p.upper_covers(a) {
                covers.push((x, a2 * q.len() as u32 + b as u32));
            }
            for &b2 in q.upper_covers(b) {
                covers.push((x, (a * q.len()) as u32 + b2));
            }
        }
    }
    RankedPoset::new(labels, rank, &covers)
}

/// Symmetric chain decomposition of `P × Q` from decompositions of the
/// factors: each pair of chains spans a two-dimensional grid, split by
/// hook peeling.
pub fn product_scd(
    p: &RankedPoset,
    dp: &ChainDecomposition,
    q: &RankedPoset,
    dq: &ChainDecomposition,
) -> Result<(RankedPoset, ChainDecomposition)> {
    for (name, poset, d) in [("left", p, dp), ("right", q, dq)] {
        let report = crate::poset::verify_scd(poset, d);
        if !report.passed() {
            return Err(Error::Hypothesis(format!(
                "{name} factor decomposition fails: {}",
                report.failures().join("; ")
            )));
        }
    }
    let pq = product_poset(p, q)?;
    let mut chains = Vec::new();
    for ca in &dp.chains {
        for cb in &dq.chains {
            for grid_chain in staircase_chains(&[ca.len() - 1, cb.len() - 1]) {
                chains.push(Chain::new(
                    grid_chain
                        .iter()
                        .map(|t| ca.elements[t[0] as usize] * q.len() + cb.elements[t[1] as usize])
                        .collect(),
                ));
            }
        }
    }
    let d = ChainDecomposition::new(chains).sorted(&pq);
    Ok((pq, d))
}
