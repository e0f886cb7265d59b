//! The `build` constructions.

use sco_core::group::is_powers_of_disjoint_cycles;
use sco_core::perm::{format_generators, parse_generators};
use sco_core::pipeline::{theorem1_scd, theorem2_scd, BlockGroup, PipelineConfig};
use sco_core::poset::{boolean_lattice, grid_poset};
use sco_core::scd::{chain_product_scd, greene_kleitman_scd};
use sco_core::{ChainDecomposition, CycleSpec, Error, RankedPoset};

use crate::args::BuildArgs;
use crate::artifact::Artifact;
use crate::error::CliResult;

fn required(v: Option<usize>, flag: &str) -> sco_core::Result<usize> {
    v.ok_or_else(|| Error::InvalidArgument(format!("--{flag} is required")))
}

/// A group on `degree` points given by generators that must be powers of
/// disjoint cycles. Empty notation is the trivial group.
pub fn cycle_spec(notation: &str, degree: usize, name: &str) -> sco_core::Result<CycleSpec> {
    let gens = parse_generators(notation, Some(degree))?;
    if gens.iter().all(|g| g.is_identity()) {
        return Ok(CycleSpec::trivial(degree));
    }
    is_powers_of_disjoint_cycles(&gens).ok_or_else(|| {
        Error::Hypothesis(format!(
            "{name} = <{}> is not generated by powers of disjoint cycles",
            format_generators(&gens)
        ))
    })
}

/// `S`/`S_k`, `A`/`A_k`, or cycle notation.
pub fn block_group(notation: &str, k: usize) -> sco_core::Result<BlockGroup> {
    let s = notation.trim();
    let named = |prefix: char| -> Option<bool> {
        let rest = s.strip_prefix(prefix)?;
        let rest = rest.strip_prefix('_').unwrap_or(rest);
        Some(rest.is_empty() || rest.parse::<usize>().ok() == Some(k))
    };
    match (named('S'), named('A')) {
        (Some(true), _) => Ok(BlockGroup::Symmetric(k)),
        (_, Some(true)) => Ok(BlockGroup::Alternating(k)),
        (Some(false), _) | (_, Some(false)) => Err(Error::InvalidArgument(format!("{s} does not act on {k} points"))),
        _ => Ok(BlockGroup::Cycles(cycle_spec(s, k, "K")?)),
    }
}

/// A base poset `P` with its decomposition: an `m`-element chain or `B_m`.
pub fn base_poset(chain: Option<usize>, boolean: Option<usize>) -> sco_core::Result<(RankedPoset, ChainDecomposition, String)> {
    match (chain, boolean) {
        (Some(0), _) => Err(Error::InvalidArgument("--base-chain must be positive".into())),
        (Some(m), None) => Ok((grid_poset(&[m - 1])?, chain_product_scd(&[m - 1])?, format!("C_{m}"))),
        (None, Some(m)) => Ok((boolean_lattice(m)?, greene_kleitman_scd(m)?, format!("B_{m}"))),
        _ => Err(Error::InvalidArgument("give exactly one of --base-chain, --base-boolean".into())),
    }
}

pub fn build(args: &BuildArgs, cfg: &PipelineConfig) -> CliResult<Artifact> {
    if args.theorem1 || args.necklace {
        let (k, t, kgroup, tspec) = if args.necklace {
            let n = required(args.n, "n")?;
            if n == 0 {
                return Err(Error::InvalidArgument("--n must be positive".into()).into());
            }
            (1, n, BlockGroup::Symmetric(1), CycleSpec::full_cycle(n, 1))
        } else {
            let k = required(args.k, "k")?;
            let t = required(args.t, "t")?;
            if k == 0 || t == 0 {
                return Err(Error::InvalidArgument("--k and --t must be positive".into()).into());
            }
            (k, t, block_group(&args.k_group, k)?, cycle_spec(&args.t_group, t, "T")?)
        };
        let r = theorem1_scd(k, t, kgroup, tspec, cfg)?;
        let construction = if args.necklace {
            format!("necklace n={t}")
        } else {
            format!("theorem1 k={k} t={t}")
        };
        let group = if args.necklace {
            r.tspec.to_string()
        } else {
            format!(
                "{} wr {} = <{}>",
                r.kgroup,
                r.tspec,
                format_generators(r.group.generators())
            )
        };
        Artifact::new(construction, group, &r.quotient.poset, &r.scd, Some(&r.record()))
    } else {
        let n = required(args.n, "n")?;
        let (base, base_scd, name) = base_poset(args.base_chain, args.base_boolean)?;
        let gspec = cycle_spec(&args.g_group, n, "G")?;
        let r = theorem2_scd(&base, &base_scd, n, gspec, cfg)?;
        let construction = format!("theorem2 P={name} n={n}");
        let group = r.gspec.to_string();
        Artifact::new(construction, group, &r.quotient.poset, &r.scd, Some(&r.record()))
    }
}
