//! Reproduction of a subgroup catalog: one verified SCD of `B_n/G` per row.
//!
//! Points are split into blocks joined by generator supports, fixed points
//! forming one more block, so that `G` is the direct product of its
//! restrictions. Each block is decomposed by the first result that applies,
//! the block decompositions are multiplied, and the product is mapped onto
//! the orbit poset built directly from the row's generators.

use std::path::Path;

use serde::{Deserialize, Serialize};
use sco_core::group::{is_powers_of_disjoint_cycles, GeneratedGroup};
use sco_core::perm::parse_generators;
use sco_core::pipeline::{block_quotient_scd, theorem1_scd, BlockGroup, PipelineConfig, QuotientScd};
use sco_core::poset::verify_scd;
use sco_core::quotient::{boolean_quotient, QuotientPoset};
use sco_core::scd::product_scd;
use sco_core::{Chain, ChainDecomposition, Error, Permutation, RankedPoset};

use crate::build::{block_group, cycle_spec};
use crate::error::{CliError, CliResult};

const N6: &str = include_str!("../catalog/n6.toml");

#[derive(Clone, Debug, Deserialize)]
pub struct CatalogFile {
    pub n: usize,
    pub rows: Vec<Row>,
}

#[derive(Clone, Debug, Deserialize)]
pub struct Row {
    pub partition: String,
    pub generators: String,
    pub description: String,
    pub order: usize,
    #[serde(default)]
    pub listed: Option<String>,
    #[serde(default)]
    pub wreath: Vec<WreathHint>,
}

#[derive(Clone, Debug, Deserialize)]
pub struct WreathHint {
    /// 1-based points, one list per block of imprimitivity.
    pub blocks: Vec<Vec<u32>>,
    pub k: String,
    pub t: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct RowReport {
    pub row: usize,
    pub partition: String,
    pub generators: String,
    pub description: String,
    pub expected_order: usize,
    pub order: Option<usize>,
    pub blocks: Vec<String>,
    pub elements: usize,
    pub level_profile: Vec<usize>,
    pub chains: usize,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

pub fn load(n: usize, file: Option<&Path>) -> CliResult<CatalogFile> {
    let text = match file {
        Some(path) => std::fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.to_path_buf(),
            source,
        })?,
        None if n == 6 => N6.to_string(),
        None => return Err(Error::InvalidArgument(format!("no built-in catalog for n = {n}")).into()),
    };
    let cat: CatalogFile = toml::from_str(&text)?;
    if cat.n != n {
        return Err(Error::InvalidArgument(format!("catalog is for n = {}, not {n}", cat.n)).into());
    }
    Ok(cat)
}

/// A block's orbit poset, built from the restricted generators, with a
/// verified decomposition.
struct BlockScd {
    points: Vec<u32>,
    quotient: QuotientPoset,
    scd: ChainDecomposition,
    method: String,
}

fn components(n: usize, gens: &[Permutation]) -> Vec<Vec<u32>> {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    for g in gens {
        let support = g.support();
        for w in support.windows(2) {
            let (a, b) = (find(&mut parent, w[0] as usize), find(&mut parent, w[1] as usize));
            parent[a.max(b)] = a.min(b);
        }
    }
    let moved: Vec<bool> = (0..n).map(|x| gens.iter().any(|g| g.apply(x as u32) != x as u32)).collect();
    let mut blocks: Vec<Vec<u32>> = Vec::new();
    let mut root_block = vec![usize::MAX; n];
    let mut fixed = Vec::new();
    for x in 0..n {
        if !moved[x] {
            fixed.push(x as u32);
            continue;
        }
        let r = find(&mut parent, x);
        if root_block[r] == usize::MAX {
            root_block[r] = blocks.len();
            blocks.push(Vec::new());
        }
        blocks[root_block[r]].push(x as u32);
    }
    if !fixed.is_empty() {
        blocks.push(fixed);
    }
    blocks
}

fn restrict(g: &Permutation, points: &[u32]) -> sco_core::Result<Permutation> {
    let images = points
        .iter()
        .map(|&p| points.binary_search(&g.apply(p)).map(|i| i as u32))
        .collect::<std::result::Result<Vec<_>, _>>()
        .map_err(|_| Error::Internal("block is not invariant".into()))?;
    Permutation::from_images(images)
}

fn factorial(m: usize) -> usize {
    (1..=m).product()
}

/// Moves a decomposition of some `B_m / H` onto `local`, the orbit poset of
/// the same group presented on the block's points, through `mask_map`.
fn transfer(
    source: &QuotientScd,
    local: &QuotientPoset,
    mask_map: &dyn Fn(u32) -> u32,
) -> sco_core::Result<ChainDecomposition> {
    if source.quotient.len() != local.len() {
        return Err(Error::Internal(format!(
            "{} orbits from the construction, {} from the generators",
            source.quotient.len(),
            local.len()
        )));
    }
    let d = ChainDecomposition::new(
        source
            .scd
            .chains
            .iter()
            .map(|c| {
                Chain::new(
                    c.elements
                        .iter()
                        .map(|&o| local.orbit_of(mask_map(source.quotient.rep(o) as u32) as usize))
                        .collect(),
                )
            })
            .collect(),
    );
    Ok(d.sorted(&local.poset))
}

fn wreath_block(
    points: &[u32],
    local_gens: &[Permutation],
    local: &QuotientPoset,
    hint: &WreathHint,
    cfg: &PipelineConfig,
) -> sco_core::Result<(ChainDecomposition, String)> {
    let t = hint.blocks.len();
    let k = hint.blocks.first().map_or(0, Vec::len);
    if k == 0 || hint.blocks.iter().any(|b| b.len() != k) {
        return Err(Error::InvalidArgument("wreath blocks must be non-empty and of equal size".into()));
    }
    // lambda: local index -> point r*k + i.
    let mut lambda = vec![u32::MAX; points.len()];
    for (r, b) in hint.blocks.iter().enumerate() {
        for (i, &p) in b.iter().enumerate() {
            let local_ix = points
                .binary_search(&(p.wrapping_sub(1)))
                .map_err(|_| Error::InvalidArgument(format!("wreath point {p} is not in the block")))?;
            lambda[local_ix] = (r * k + i) as u32;
        }
    }
    if lambda.contains(&u32::MAX) || points.len() != k * t {
        return Err(Error::InvalidArgument("wreath blocks do not cover the block".into()));
    }
    let lam = Permutation::from_images(lambda)?;
    let kgroup = block_group(&hint.k, k)?;
    let tspec = cycle_spec(&hint.t, t, "T")?;
    let r = theorem1_scd(k, t, kgroup, tspec, cfg)?;
    let conj: Vec<Permutation> = local_gens
        .iter()
        .map(|g| lam.compose(g).compose(&lam.inverse()))
        .collect();
    let relabeled = GeneratedGroup::new(k * t, conj)?;
    if relabeled.elements(cfg.closure_cap)? != r.group.elements(cfg.closure_cap)? {
        return Err(Error::Hypothesis(format!(
            "the block group is not {} wr {} on blocks {:?}",
            r.kgroup, r.tspec, hint.blocks
        )));
    }
    let source = QuotientScd {
        base: r.ambient.clone(),
        quotient: r.quotient.clone(),
        scd: r.scd.clone(),
    };
    let inv = lam.inverse();
    let d = transfer(&source, local, &|mask| sco_core::quotient::permute_mask(&inv, mask))?;
    Ok((d, format!("wreath {} wr {}", r.kgroup, r.tspec)))
}

fn decompose_block(points: Vec<u32>, gens: &[Permutation], row: &Row, cfg: &PipelineConfig) -> sco_core::Result<BlockScd> {
    let m = points.len();
    let local_gens = gens
        .iter()
        .map(|g| restrict(g, &points))
        .filter(|g| g.as_ref().map_or(true, |g| !g.is_identity()))
        .collect::<sco_core::Result<Vec<_>>>()?;
    let (_, local) = boolean_quotient(m, &local_gens)?;
    let label = |pts: &[u32]| pts.iter().map(|p| (p + 1).to_string()).collect::<Vec<_>>().join(",");
    let (scd, method) = if local_gens.is_empty() {
        let s = block_quotient_scd(&BlockGroup::Cycles(sco_core::CycleSpec::trivial(m)), &cfg.search)?;
        (transfer(&s, &local, &|x| x)?, "fixed points, bracketing".to_string())
    } else {
        let order = GeneratedGroup::new(m, local_gens.clone())?.order(cfg.closure_cap)?;
        let cycles = is_powers_of_disjoint_cycles(&local_gens);
        if order == factorial(m) {
            let s = block_quotient_scd(&BlockGroup::Symmetric(m), &cfg.search)?;
            (transfer(&s, &local, &|x| x)?, format!("S_{m} chain"))
        } else if m >= 3 && order * 2 == factorial(m) {
            let s = block_quotient_scd(&BlockGroup::Alternating(m), &cfg.search)?;
            (transfer(&s, &local, &|x| x)?, format!("A_{m} chain"))
        } else if let Some(spec) = cycles {
            let s = block_quotient_scd(&BlockGroup::Cycles(spec.clone()), &cfg.search)?;
            (transfer(&s, &local, &|x| x)?, format!("cyclic powers {spec}"))
        } else {
            let hint = row
                .wreath
                .iter()
                .find(|h| {
                    let mut pts: Vec<u32> = h.blocks.iter().flatten().map(|p| p.wrapping_sub(1)).collect();
                    pts.sort_unstable();
                    pts == points
                })
                .ok_or_else(|| Error::Hypothesis(format!("no applicable result for the block on {{{}}}", label(&points))))?;
            wreath_block(&points, &local_gens, &local, hint, cfg)?
        }
    };
    let report = verify_scd(&local.poset, &scd);
    if !report.passed() {
        return Err(Error::Internal(format!(
            "block {{{}}}: {}",
            label(&points),
            report.failures().join("; ")
        )));
    }
    let method = format!("{{{}}}: {method}", label(&points));
    Ok(BlockScd {
        points,
        quotient: local,
        scd,
        method,
    })
}

struct RowOutcome {
    order: usize,
    blocks: Vec<String>,
    quotient: RankedPoset,
    scd: ChainDecomposition,
}

fn run_row_inner(n: usize, row: &Row, cfg: &PipelineConfig, order_out: &mut Option<usize>) -> sco_core::Result<RowOutcome> {
    let gens = parse_generators(&row.generators, Some(n))?;
    let group = GeneratedGroup::new(n, gens.clone())?;
    let order = group.order(cfg.closure_cap)?;
    *order_out = Some(order);
    if order != row.order {
        return Err(Error::Hypothesis(format!("group order {order}, listed {}", row.order)));
    }
    let blocks = components(n, &gens)
        .into_iter()
        .map(|pts| decompose_block(pts, &gens, row, cfg))
        .collect::<sco_core::Result<Vec<_>>>()?;

    // G is the product of its restrictions iff the orders multiply out.
    let mut product_order = 1usize;
    for b in &blocks {
        let local: Vec<Permutation> = gens.iter().map(|g| restrict(g, &b.points)).collect::<sco_core::Result<_>>()?;
        product_order *= GeneratedGroup::new(b.points.len(), local)?.order(cfg.closure_cap)?;
    }
    if product_order != order {
        return Err(Error::Hypothesis(format!(
            "G has order {order} but its block restrictions multiply to {product_order}"
        )));
    }

    let mut acc_poset = blocks[0].quotient.poset.clone();
    let mut acc_scd = blocks[0].scd.clone();
    for b in &blocks[1..] {
        (acc_poset, acc_scd) = product_scd(&acc_poset, &acc_scd, &b.quotient.poset, &b.scd)?;
    }

    let (_, global) = boolean_quotient(n, &gens)?;
    if global.len() != acc_poset.len() {
        return Err(Error::Internal(format!(
            "{} product elements for {} orbits",
            acc_poset.len(),
            global.len()
        )));
    }
    let to_global = |mut id: usize| -> usize {
        let mut mask = 0u32;
        for b in blocks.iter().rev() {
            let len = b.quotient.len();
            let local_mask = b.quotient.rep(id % len) as u32;
            id /= len;
            for (i, &p) in b.points.iter().enumerate() {
                if local_mask >> i & 1 == 1 {
                    mask |= 1 << p;
                }
            }
        }
        global.orbit_of(mask as usize)
    };
    let scd = ChainDecomposition::new(
        acc_scd
            .chains
            .iter()
            .map(|c| Chain::new(c.elements.iter().map(|&x| to_global(x)).collect()))
            .collect(),
    )
    .sorted(&global.poset);
    Ok(RowOutcome {
        order,
        blocks: blocks.into_iter().map(|b| b.method).collect(),
        quotient: global.poset,
        scd,
    })
}

pub fn run_row(n: usize, index: usize, row: &Row, cfg: &PipelineConfig) -> RowReport {
    let mut order = None;
    let mut report = RowReport {
        row: index + 1,
        partition: row.partition.clone(),
        generators: row.generators.clone(),
        description: row.description.clone(),
        expected_order: row.order,
        order: None,
        blocks: Vec::new(),
        elements: 0,
        level_profile: Vec::new(),
        chains: 0,
        passed: false,
        error: None,
    };
    match run_row_inner(n, row, cfg, &mut order) {
        Ok(out) => {
            // Fresh check of the final decomposition.
            let v = verify_scd(&out.quotient, &out.scd);
            report.order = Some(out.order);
            report.blocks = out.blocks;
            report.elements = out.quotient.len();
            report.level_profile = out.quotient.level_sizes();
            report.chains = out.scd.len();
            report.passed = v.passed();
            if !v.passed() {
                report.error = Some(v.failures().join("; "));
            }
        }
        Err(e) => {
            report.order = order;
            report.error = Some(e.to_string());
        }
    }
    report
}

pub fn run(cat: &CatalogFile, cfg: &PipelineConfig) -> Vec<RowReport> {
    cat.rows.iter().enumerate().map(|(i, r)| run_row(cat.n, i, r, cfg)).collect()
}

pub fn table(reports: &[RowReport]) -> String {
    let mut out = String::new();
    for r in reports {
        out.push_str(&format!(
            "{:>2} {:<4} {:<13} {:<38} {:<22} order {:>3}  elements {:>2}  chains {:>2}  {}\n",
            r.row,
            if r.passed { "ok" } else { "FAIL" },
            r.partition,
            r.generators,
            r.description,
            r.order.map_or("?".to_string(), |o| o.to_string()),
            r.elements,
            r.chains,
            match &r.error {
                Some(e) => e.clone(),
                None => r.blocks.join("; "),
            }
        ));
    }
    let passed = reports.iter().filter(|r| r.passed).count();
    out.push_str(&format!("{passed}/{} rows passed\n", reports.len()));
    out
}
