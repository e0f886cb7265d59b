//! Exhaustive search on instances of the open problems. Reports what the
//! search found for the instance and nothing more.

use serde::Serialize;
use sco_core::group::GeneratedGroup;
use sco_core::perm::parse_generators;
use sco_core::poset::{poset_power, verify_scd};
use sco_core::quotient::{boolean_quotient, coordinate_action, quotient};
use sco_core::scd::{search_scd, SearchConfig};
use sco_core::{ChainDecomposition, Error, Permutation, RankedPoset};

use crate::args::ExploreArgs;
use crate::artifact::Artifact;
use crate::build::base_poset;
use crate::error::CliResult;

#[derive(Clone, Debug, Serialize)]
pub struct ExploreReport {
    pub problem: u8,
    pub instance: String,
    pub elements: usize,
    pub level_profile: Vec<usize>,
    pub found: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub artifact: Option<Artifact>,
}

/// Rotation and reflection of the `n`-gon; empty for `n = 1`.
pub fn dihedral_generators(n: usize) -> sco_core::Result<Vec<Permutation>> {
    let rotation = Permutation::from_images((0..n as u32).map(|i| (i + 1) % n as u32).collect())?;
    let reflection = Permutation::from_images((0..n as u32).map(|i| n as u32 - 1 - i).collect())?;
    Ok([rotation, reflection].into_iter().filter(|g| !g.is_identity()).collect())
}

fn binomial(n: u128, k: u128) -> u128 {
    (0..k).fold(1u128, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

/// `L(k, t)`: sequences `0 ≤ a_1 ≤ .. ≤ a_t ≤ k` ordered componentwise. A
/// cover raises one entry by one.
pub fn young_lattice(k: usize, t: usize, cap: usize) -> sco_core::Result<RankedPoset> {
    let size = binomial((k + t) as u128, t as u128);
    if size > cap as u128 {
        return Err(Error::Resource {
            what: format!("L({k},{t}) with {size} elements"),
            cap: cap as u128,
        });
    }
    let mut seqs: Vec<Vec<u32>> = Vec::with_capacity(size as usize);
    let mut cur = vec![0u32; t];
    loop {
        seqs.push(cur.clone());
        // Next nondecreasing sequence in lexicographic order.
        let Some(i) = (0..t).rev().find(|&i| (cur[i] as usize) < k) else {
            break;
        };
        let v = cur[i] + 1;
        for c in cur.iter_mut().skip(i) {
            *c = v;
        }
    }
    let index = |s: &[u32]| seqs.binary_search_by(|x| x.as_slice().cmp(s)).expect("sequence listed");
    let mut covers = Vec::new();
    for (x, s) in seqs.iter().enumerate() {
        for i in 0..t {
            let up = s[i] + 1;
            if up as usize <= k && (i + 1 == t || up <= s[i + 1]) {
                let mut u = s.clone();
                u[i] = up;
                covers.push((x as u32, index(&u) as u32));
            }
        }
    }
    let labels = seqs
        .iter()
        .map(|s| s.iter().map(ToString::to_string).collect::<Vec<_>>().join(" "))
        .collect();
    let rank = seqs.iter().map(|s| s.iter().sum()).collect();
    RankedPoset::new(labels, rank, &covers)
}

fn need(v: Option<usize>, flag: &str) -> sco_core::Result<usize> {
    v.filter(|&x| x > 0)
        .ok_or_else(|| Error::InvalidArgument(format!("--{flag} must be given and positive")))
}

pub fn explore(args: &ExploreArgs, search: &SearchConfig) -> CliResult<ExploreReport> {
    let (instance, group, poset) = match args.problem {
        1 => {
            let n = need(args.n, "n")?;
            let gens = dihedral_generators(n)?;
            let order = GeneratedGroup::new(n, gens.clone())?.order(sco_core::group::DEFAULT_CLOSURE_CAP)?;
            let (_, q) = boolean_quotient(n, &gens)?;
            (format!("B_{n}/D_{}", 2 * n), format!("D_{} of order {order}", 2 * n), q.poset)
        }
        2 => {
            let k = need(args.k, "k")?;
            let t = need(args.t, "t")?;
            (format!("L({k},{t})"), format!("S_{k} wr S_{t}"), young_lattice(k, t, search.max_elements)?)
        }
        _ => {
            let n = need(args.n, "n")?;
            let (base, _, name) = base_poset(args.base_chain, args.base_boolean)?;
            let gens = parse_generators(&args.g_group, Some(n))?;
            let (power, idx) = poset_power(&base, n)?;
            let maps = gens.iter().map(|g| coordinate_action(g, &idx)).collect::<sco_core::Result<Vec<_>>>()?;
            let q = quotient(&power, &maps)?;
            let group = format!("<{}>", sco_core::perm::format_generators(&gens));
            (format!("{name}^{n}/{group}"), group, q.poset)
        }
    };
    let found: Option<ChainDecomposition> = search_scd(&poset, search)?;
    let artifact = match &found {
        Some(d) => {
            let report = verify_scd(&poset, d);
            if !report.passed() {
                return Err(Error::Internal(format!("search result fails: {}", report.failures().join("; "))).into());
            }
            Some(Artifact::new(format!("explore problem {} {instance}", args.problem), group, &poset, d, None)?)
        }
        None => None,
    };
    Ok(ExploreReport {
        problem: args.problem,
        instance,
        elements: poset.len(),
        level_profile: poset.level_sizes(),
        found: artifact.is_some(),
        artifact,
    })
}

pub fn text(r: &ExploreReport) -> String {
    let profile: Vec<String> = r.level_profile.iter().map(ToString::to_string).collect();
    let mut out = format!(
        "problem {}: {}\nelements: {}\nlevel profile: {}\n",
        r.problem,
        r.instance,
        r.elements,
        profile.join(" ")
    );
    match &r.artifact {
        Some(a) => out.push_str(&format!(
            "search: found a symmetric chain decomposition with {} chains (verified)\n",
            a.decomposition.chains.len()
        )),
        None => out.push_str("search: exhausted, no symmetric chain decomposition\n"),
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn young_lattice_sizes() {
        let l = young_lattice(2, 3, 1000).unwrap();
        assert_eq!(l.len(), 10);
        assert_eq!(l.level_sizes(), vec![1, 1, 2, 2, 2, 1, 1]);
        let chain = young_lattice(1, 5, 1000).unwrap();
        assert_eq!(chain.level_sizes(), vec![1; 6]);
        assert!(matches!(young_lattice(20, 20, 1000), Err(Error::Resource { .. })));
    }

    #[test]
    fn dihedral_orders() {
        for n in 1..=7 {
            let g = GeneratedGroup::new(n, dihedral_generators(n).unwrap()).unwrap();
            let expected = match n {
                1 => 1,
                2 => 2,
                _ => 2 * n,
            };
            assert_eq!(g.order(1000).unwrap(), expected);
        }
    }
}
