//! The decomposition artifact and its independent re-verification.

use std::path::Path;

use serde::{Deserialize, Serialize};
use sco_core::pipeline::PipelineRecord;
use sco_core::poset::{verify_scd, DecompositionJson, PosetJson, ScdReport};
use sco_core::{ChainDecomposition, RankedPoset};

use crate::error::{CliError, CliResult};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Artifact {
    pub construction: String,
    pub group: String,
    pub poset: PosetJson,
    pub decomposition: DecompositionJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pipeline: Option<serde_json::Value>,
}

impl Artifact {
    pub fn new(
        construction: String,
        group: String,
        poset: &RankedPoset,
        scd: &ChainDecomposition,
        pipeline: Option<&PipelineRecord>,
    ) -> CliResult<Self> {
        Ok(Artifact {
            construction,
            group,
            poset: poset.to_json(),
            decomposition: scd.to_json(poset),
            pipeline: pipeline.map(serde_json::to_value).transpose()?,
        })
    }

    pub fn to_json_string(&self) -> CliResult<String> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }

    pub fn read(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Ok(serde_json::from_str(&text)?)
    }

    /// Rebuilds the poset from its JSON, checks the hash binding, and runs
    /// [`verify_scd`] from scratch.
    pub fn check(&self) -> CliResult<(RankedPoset, ScdReport)> {
        let poset = RankedPoset::from_json(&self.poset)?;
        let actual = poset.hash();
        if actual != self.decomposition.poset_hash {
            return Err(CliError::HashMismatch {
                expected: self.decomposition.poset_hash.clone(),
                actual,
            });
        }
        let d = self.decomposition.clone().into_decomposition();
        let report = verify_scd(&poset, &d);
        Ok((poset, report))
    }

    /// Like [`Artifact::check`], with a failing report turned into an error.
    pub fn verified(&self) -> CliResult<RankedPoset> {
        let (poset, report) = self.check()?;
        if !report.passed() {
            return Err(CliError::Verification(report.failures().join("; ")));
        }
        Ok(poset)
    }
}

pub fn summary(a: &Artifact, poset: &RankedPoset, passed: bool) -> String {
    let profile: Vec<String> = poset.level_sizes().iter().map(ToString::to_string).collect();
    format!(
        "construction: {}\ngroup: {}\nelements: {}\nlevel profile: {}\nchains: {}\nverification: {}\n",
        a.construction,
        a.group,
        poset.len(),
        profile.join(" "),
        a.decomposition.chains.len(),
        if passed { "pass" } else { "FAIL" }
    )
}

/// Hasse diagram, bottom to top, with chain edges drawn bold in the chain's
/// colour and the remaining covers grey.
pub fn dot(poset: &RankedPoset, chains: &[Vec<usize>]) -> String {
    let mut chain_of = vec![usize::MAX; poset.len()];
    for (i, c) in chains.iter().enumerate() {
        for &x in c.iter().filter(|&&x| x < poset.len()) {
            chain_of[x] = i;
        }
    }
    let colour = |i: usize| format!("{:.3} 0.45 0.95", (i as f64 * 0.618_033_988_75).fract());
    let mut out = String::from("digraph hasse {\n  rankdir=BT;\n  node [shape=box, style=filled, fontname=\"monospace\"];\n");
    for r in 0..=poset.top_rank() {
        let ids: Vec<String> = poset.level(r).iter().map(|x| format!("n{x}")).collect();
        out.push_str(&format!("  {{ rank=same; {}; }}\n", ids.join("; ")));
    }
    for x in 0..poset.len() {
        let fill = match chain_of[x] {
            usize::MAX => "white".to_string(),
            c => colour(c),
        };
        out.push_str(&format!(
            "  n{x} [label=\"{}\", fillcolor=\"{fill}\"];\n",
            poset.label(x).replace('"', "\\\"")
        ));
    }
    for (x, y) in poset.covers() {
        if chain_of[x] != usize::MAX && chain_of[x] == chain_of[y] && chains[chain_of[x]].windows(2).any(|w| w == [x, y]) {
            out.push_str(&format!("  n{x} -> n{y} [color=\"{}\", penwidth=3, arrowhead=none];\n", colour(chain_of[x])));
        } else {
            out.push_str(&format!("  n{x} -> n{y} [color=gray70, arrowhead=none];\n"));
        }
    }
    out.push_str("}\n");
    out
}
