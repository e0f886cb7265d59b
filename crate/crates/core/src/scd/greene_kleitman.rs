use crate::error::{Error, Result};
use crate::poset::{Chain, ChainDecomposition};

pub const GREENE_KLEITMAN_CAP: usize = 20;

/// Bracket string of a subset, positions `1..n` left to right: an absent
/// point is `(`, a present point is `)`. Returns, for each position, whether
/// it is matched.
fn matched_positions(mask: u32, n: usize) -> Vec<bool> {
    let mut matched = vec![false; n];
    let mut open = Vec::new();
    for i in 0..n {
        if mask >> i & 1 == 0 {
            open.push(i);
        } else if let Some(j) = open.pop() {
            matched[i] = true;
            matched[j] = true;
        }
    }
    matched
}

/// The Greene–Kleitman bracketing decomposition of `B_n`, over the element
/// ids of [`crate::poset::boolean_lattice`] (id = bitmask).
///
/// Unmatched positions always read `)..)(..(`; a chain starts at the subset
/// with no unmatched `)` and climbs by turning the leftmost unmatched `(` into
/// `)`. Chains come out ordered by bottom rank, then bottom bitmask.
pub fn greene_kleitman_scd(n: usize) -> Result<ChainDecomposition> {
    if n > GREENE_KLEITMAN_CAP {
        return Err(Error::resource(
            format!("bracketing decomposition of B_{n}"),
            GREENE_KLEITMAN_CAP as u128,
        ));
    }
    let mut chains = Vec::new();
    for mask in 0..1u32 << n {
        let matched = matched_positions(mask, n);
        let free: Vec<usize> = (0..n).filter(|&i| !matched[i]).collect();
        if free.iter().any(|&i| mask >> i & 1 == 1) {
            continue;
        }
        let mut x = mask;
        let mut c = vec![x as usize];
        for &i in &free {
            x |= 1 << i;
            c.push(x as usize);
        }
        chains.push((mask.count_ones(), mask, Chain::new(c)));
    }
    chains.sort_by_key(|(r, m, _)| (*r, *m));
    Ok(ChainDecomposition::new(chains.into_iter().map(|(_, _, c)| c).collect()))
}
