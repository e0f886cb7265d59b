//! Acceptance suite: one PASS/FAIL line per criterion. Oracles here are
//! written independently of the constructions they check.

use std::collections::BTreeMap;
use std::process::Command;
use std::time::{Duration, Instant};

use sco_cli::catalog;
use sco_core::group::{stabilizer_brute, stabilizer_cyclic_powers, unpack_tuple, CyclePower, GeneratedGroup};
use sco_core::pipeline::{theorem1_scd, theorem2_scd, BlockGroup, PipelineConfig};
use sco_core::poset::{boolean_lattice, grid_poset, poset_power, verify_scd, TupleIndexer};
use sco_core::quotient::{quotient, subset_action, ElementMap, QuotientPoset};
use sco_core::scd::{chain_product_scd, greene_kleitman_scd, search_scd, SearchConfig};
use sco_core::{ChainDecomposition, CycleSpec, Permutation, RankedPoset};

const CLOSURE: usize = 1_000_000;

struct Outcome {
    ok: bool,
    detail: String,
}

impl Outcome {
    fn new(failures: &[String], detail: String) -> Self {
        let detail = match failures.first() {
            Some(f) => format!("{} failure(s), first: {f}", failures.len()),
            None => detail,
        };
        Outcome {
            ok: failures.is_empty(),
            detail,
        }
    }
}

/// Quotients built in criteria 1 to 4, kept for the rank law and the direct
/// search check.
#[derive(Default)]
struct Ledger {
    rank_checks: usize,
    rank_failures: Vec<String>,
    posets: Vec<(String, RankedPoset)>,
}

impl Ledger {
    fn record(&mut self, name: String, base: &RankedPoset, q: &QuotientPoset, keep: bool) {
        self.rank_checks += 1;
        if !q.rank_law_holds(base) {
            self.rank_failures.push(name.clone());
        }
        if keep {
            self.posets.push((name, q.poset.clone()));
        }
    }
}

fn transpositions(pairs: &[(u32, u32)]) -> Vec<CyclePower> {
    pairs
        .iter()
        .map(|&(a, b)| CyclePower { cycle: vec![a, b], power: 1 })
        .collect()
}

/// Trivial, full cycle, squared cycle, two disjoint transpositions; each
/// only where it is a distinct group.
fn cycle_family(t: usize) -> Vec<(String, CycleSpec)> {
    let mut out = vec![("1".to_string(), CycleSpec::trivial(t))];
    if t >= 2 {
        out.push(("full".into(), CycleSpec::full_cycle(t, 1)));
    }
    if t >= 3 {
        out.push(("squared".into(), CycleSpec::full_cycle(t, 2)));
    }
    if t >= 4 {
        out.push(("transpositions".into(), CycleSpec::new(t, transpositions(&[(0, 1), (2, 3)])).unwrap()));
    }
    out
}

fn k_family(k: usize) -> Vec<BlockGroup> {
    let mut out: Vec<BlockGroup> = cycle_family(k).into_iter().map(|(_, s)| BlockGroup::Cycles(s)).collect();
    out.push(BlockGroup::Symmetric(k));
    out.push(BlockGroup::Alternating(k));
    out
}

/// `K ≀ T` on point `r·k + i` straight from the definition: every generator
/// of `K` on every block, and each generator of `T` moving whole blocks.
fn wreath_generators(k: usize, t: usize, kgens: &[Permutation], tgens: &[Permutation]) -> Vec<Permutation> {
    let n = k * t;
    let mut gens = Vec::new();
    for r in 0..t {
        for g in kgens {
            let images = (0..n)
                .map(|p| if p / k == r { (r * k + g.apply((p % k) as u32) as usize) as u32 } else { p as u32 })
                .collect();
            gens.push(Permutation::from_images(images).unwrap());
        }
    }
    for g in tgens {
        let images = (0..n).map(|p| (g.apply((p / k) as u32) as usize * k + p % k) as u32).collect();
        gens.push(Permutation::from_images(images).unwrap());
    }
    gens
}

/// Orbit partitions agree element by element.
fn same_orbits(a: &QuotientPoset, b: &QuotientPoset, n: usize) -> bool {
    a.len() == b.len() && (0..n).all(|x| a.orbit_of(x) == b.orbit_of(x))
}

fn criterion1() -> Outcome {
    let started = Instant::now();
    let cat = catalog::load(6, None).unwrap();
    let reports = catalog::run(&cat, &PipelineConfig::default());
    let mut failures: Vec<String> = reports
        .iter()
        .filter(|r| !r.passed || r.order != Some(r.expected_order))
        .map(|r| format!("row {} ({}): {}", r.row, r.generators, r.error.clone().unwrap_or_default()))
        .collect();
    let expect: BTreeMap<&str, usize> = [
        ("Z_2 wr Z_3", 24),
        ("Z_3 wr Z_2", 18),
        ("S_3 wr Z_2", 72),
        ("S_6", 720),
        ("A_6", 360),
    ]
    .into_iter()
    .collect();
    for (name, order) in &expect {
        match reports.iter().find(|r| r.description == *name) {
            Some(r) if r.order == Some(*order) => {}
            _ => failures.push(format!("{name} does not have order {order}")),
        }
    }
    if let Some(r) = reports.iter().find(|r| r.description == "S_6") {
        if r.elements != 7 || r.chains != 1 {
            failures.push("B_6/S_6 is not a 7-chain".into());
        }
    }
    let elapsed = started.elapsed();
    if elapsed > Duration::from_secs(30) {
        failures.push(format!("took {elapsed:?}"));
    }
    let table_rows = cat.rows.iter().filter(|r| r.listed.is_none()).count();
    Outcome::new(
        &failures,
        format!(
            "{}/{} rows verified ({table_rows} table rows), {:.2?}",
            reports.iter().filter(|r| r.passed).count(),
            reports.len(),
            elapsed
        ),
    )
}

fn criterion2(ledger: &mut Ledger) -> Outcome {
    let started = Instant::now();
    let cfg = PipelineConfig::default();
    let mut failures = Vec::new();
    let mut cases = 0;
    for k in 1..=10usize {
        for t in 1..=10 / k {
            let b = boolean_lattice(k * t).unwrap();
            for kg in k_family(k) {
                for (tname, ts) in cycle_family(t) {
                    cases += 1;
                    let name = format!("k={k} t={t} K={kg} T={tname}");
                    let r = match theorem1_scd(k, t, kg.clone(), ts.clone(), &cfg) {
                        Ok(r) => r,
                        Err(e) => {
                            failures.push(format!("{name}: {e}"));
                            continue;
                        }
                    };
                    let gens = wreath_generators(k, t, kg.group().generators(), &ts.permutations());
                    let maps: Vec<ElementMap> = gens.iter().map(subset_action).collect();
                    let q = quotient(&b, &maps).unwrap();
                    if !same_orbits(&q, &r.quotient, b.len()) {
                        failures.push(format!("{name}: orbit partition differs"));
                    } else if !verify_scd(&q.poset, &r.scd).passed() {
                        failures.push(format!("{name}: decomposition fails"));
                    }
                    ledger.record(name, &b, &q, true);
                }
            }
        }
    }
    Outcome::new(&failures, format!("{cases} cases verified, {:.2?}", started.elapsed()))
}

/// `(1/n) Σ_{d | n} φ(d) 2^{n/d}`.
fn necklace_count(n: u64) -> u128 {
    let phi = |d: u64| (1..=d).filter(|&i| gcd(i, d) == 1).count() as u128;
    let total: u128 = (1..=n).filter(|&d| n.is_multiple_of(d)).map(|d| phi(d) << (n / d)).sum();
    total / n as u128
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn criterion3(ledger: &mut Ledger) -> Outcome {
    let cfg = PipelineConfig::default();
    let mut failures = Vec::new();
    let mut counts = Vec::new();
    for n in 1..=12usize {
        let name = format!("necklace n={n}");
        match theorem1_scd(1, n, BlockGroup::Symmetric(1), CycleSpec::full_cycle(n, 1), &cfg) {
            Ok(r) => {
                if r.quotient.len() as u128 != necklace_count(n as u64) {
                    failures.push(format!("{name}: {} orbits, expected {}", r.quotient.len(), necklace_count(n as u64)));
                }
                if !verify_scd(&r.quotient.poset, &r.scd).passed() {
                    failures.push(format!("{name}: decomposition fails"));
                }
                counts.push(r.quotient.len().to_string());
                ledger.record(name, &r.ambient, &r.quotient, n >= 11);
            }
            Err(e) => failures.push(format!("{name}: {e}")),
        }
    }
    Outcome::new(&failures, format!("n = 1..12, orbit counts {}", counts.join(" ")))
}

/// The coordinate action on `P^n`, written against the indexer's radix
/// convention (first coordinate most significant).
fn tuple_maps(idx: &TupleIndexer, gens: &[Permutation]) -> Vec<ElementMap> {
    let dims = idx.dims();
    let radix = idx.radix()[0];
    gens.iter()
        .map(|g| {
            (0..idx.total())
                .map(|x| {
                    let mut digits = vec![0usize; dims];
                    let mut rest = x;
                    for r in (0..dims).rev() {
                        digits[r] = rest % radix;
                        rest /= radix;
                    }
                    let mut moved = vec![0usize; dims];
                    for r in 0..dims {
                        moved[g.apply(r as u32) as usize] = digits[r];
                    }
                    moved.iter().fold(0usize, |acc, &d| acc * radix + d) as u32
                })
                .collect()
        })
        .collect()
}

fn criterion4(ledger: &mut Ledger) -> Outcome {
    let cfg = PipelineConfig::default();
    let mut bases: Vec<(String, RankedPoset, ChainDecomposition)> = (1..=3usize)
        .map(|l| (format!("chain of length {l}"), grid_poset(&[l]).unwrap(), chain_product_scd(&[l]).unwrap()))
        .collect();
    for m in [2usize, 3] {
        bases.push((format!("B_{m}"), boolean_lattice(m).unwrap(), greene_kleitman_scd(m).unwrap()));
    }
    let mut failures = Vec::new();
    let mut cases = 0;
    for (pname, base, base_scd) in &bases {
        for n in 1..=4usize {
            let mut groups = vec![("full".to_string(), CycleSpec::full_cycle(n, 1))];
            if n >= 3 {
                groups.push(("squared".into(), CycleSpec::full_cycle(n, 2)));
            }
            if n >= 2 {
                let pairs: &[(u32, u32)] = if n >= 4 { &[(0, 1), (2, 3)] } else { &[(0, 1)] };
                groups.push(("transpositions".into(), CycleSpec::new(n, transpositions(pairs)).unwrap()));
            }
            for (gname, g) in groups {
                cases += 1;
                let name = format!("{pname}^{n}/{gname}");
                let r = match theorem2_scd(base, base_scd, n, g.clone(), &cfg) {
                    Ok(r) => r,
                    Err(e) => {
                        failures.push(format!("{name}: {e}"));
                        continue;
                    }
                };
                let (power, idx) = poset_power(base, n).unwrap();
                let q = quotient(&power, &tuple_maps(&idx, &g.permutations())).unwrap();
                if !same_orbits(&q, &r.quotient, power.len()) {
                    failures.push(format!("{name}: orbit partition differs"));
                } else if !verify_scd(&q.poset, &r.scd).passed() {
                    failures.push(format!("{name}: decomposition fails"));
                }
                ledger.record(name, &power, &q, true);
            }
        }
    }
    Outcome::new(&failures, format!("{cases} cases verified"))
}

fn criterion5() -> Outcome {
    let mut failures = Vec::new();
    let mut tuples = 0usize;
    for t in 1..=8usize {
        for (name, spec) in cycle_family(t) {
            let g = spec.group();
            for s in 1..=3usize {
                for code in 0..s.pow(t as u32) {
                    let tuple = unpack_tuple(code, s, t);
                    tuples += 1;
                    let (fast, _) = stabilizer_cyclic_powers(&spec, &tuple).unwrap();
                    let fast: GeneratedGroup = fast.group();
                    let brute = stabilizer_brute(&g, &tuple, CLOSURE).unwrap();
                    if fast.elements(CLOSURE).unwrap() != brute.elements(CLOSURE).unwrap() {
                        failures.push(format!("t={t} T={name} at {tuple:?}"));
                    }
                }
            }
        }
    }
    Outcome::new(&failures, format!("{tuples} (group, tuple) pairs agree"))
}

fn criterion6() -> Outcome {
    let cfg = PipelineConfig::default();
    let mut failures = Vec::new();
    let mut cases = 0;
    for k in 1..=8usize {
        for t in 1..=8 / k {
            for kg in k_family(k) {
                for (tname, ts) in cycle_family(t) {
                    cases += 1;
                    let name = format!("k={k} t={t} K={kg} T={tname}");
                    let r = theorem1_scd(k, t, kg.clone(), ts, &cfg).unwrap();
                    if let Err(e) = r.check_orbit_equivalence(CLOSURE) {
                        failures.push(format!("{name}: {e}"));
                    }
                    if let Err(e) = r.check_phi_bijection() {
                        failures.push(format!("{name}: {e}"));
                    }
                }
            }
        }
    }
    Outcome::new(&failures, format!("{cases} cases, both directions enumerated"))
}

fn criterion7(ledger: &Ledger) -> Outcome {
    Outcome::new(&ledger.rank_failures, format!("{} quotients checked", ledger.rank_checks))
}

fn criterion8(ledger: &Ledger) -> Outcome {
    let started = Instant::now();
    let cfg = SearchConfig::default();
    let mut failures = Vec::new();
    let mut seen = std::collections::HashSet::new();
    let mut searched = 0;
    for (name, p) in &ledger.posets {
        if !seen.insert(p.hash()) {
            continue;
        }
        searched += 1;
        match search_scd(p, &cfg) {
            Ok(Some(d)) if verify_scd(p, &d).passed() => {}
            Ok(Some(_)) => failures.push(format!("{name}: search result fails verification")),
            Ok(None) => failures.push(format!("{name}: search reports absent")),
            Err(e) => failures.push(format!("{name}: {e}")),
        }
    }
    let v = RankedPoset::new(vec!["0".into(), "a".into(), "b".into()], vec![0, 1, 1], &[(0, 1), (0, 2)]).unwrap();
    if !matches!(search_scd(&v, &cfg), Ok(None)) {
        failures.push("V fixture not reported absent".into());
    }
    Outcome::new(
        &failures,
        format!("{searched} distinct posets decomposed, V absent, {:.2?}", started.elapsed()),
    )
}

fn criterion9() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_sco");
    let dir = std::env::temp_dir().join(format!("sco-determinism-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let commands: Vec<Vec<&str>> = vec![
        vec!["build", "--theorem1", "--k", "2", "--t", "3", "--K", "(1 2)", "--T", "(1 2 3)"],
        vec!["build", "--theorem1", "--k", "3", "--t", "2", "--K", "S", "--T", "(1 2)"],
        vec!["build", "--theorem1", "--k", "2", "--t", "4", "--K", "(1 2)", "--T", "(1 2)(3 4)"],
        vec!["build", "--necklace", "--n", "10"],
        vec!["build", "--theorem2", "--base-boolean", "3", "--n", "3", "--G", "(1 2 3)"],
        vec!["build", "--dhand", "--base-chain", "3", "--n", "2", "--G", "(1 2)"],
    ];
    let mut failures = Vec::new();
    for (i, args) in commands.iter().enumerate() {
        let mut outputs = Vec::new();
        for run in 0..2 {
            let path = dir.join(format!("{i}-{run}.json"));
            let status = Command::new(bin).args(args).arg("--output").arg(&path).output().unwrap();
            if !status.status.success() {
                failures.push(format!("{}: exit {:?}", args.join(" "), status.status.code()));
            }
            outputs.push(std::fs::read(&path).unwrap_or_default());
        }
        if outputs[0].is_empty() || outputs[0] != outputs[1] {
            failures.push(format!("{}: outputs differ", args.join(" ")));
        }
    }
    let _ = std::fs::remove_dir_all(&dir);
    Outcome::new(&failures, format!("{} build commands byte-identical across two runs", commands.len()))
}

fn main() {
    let mut ledger = Ledger::default();
    let mut results: Vec<(u32, &str, Outcome)> = Vec::new();
    let mut report = |n: u32, name: &'static str, o: Outcome| {
        println!("criterion {n} ({name}): {} {}", if o.ok { "PASS" } else { "FAIL" }, o.detail);
        results.push((n, name, o));
    };
    report(1, "catalog reproduction", criterion1());
    report(2, "wreath suite", criterion2(&mut ledger));
    report(3, "necklaces", criterion3(&mut ledger));
    report(4, "power quotients", criterion4(&mut ledger));
    report(5, "cyclic stabilizers", criterion5());
    report(6, "orbit equivalence and bijectivity", criterion6());
    report(7, "quotient rank law", criterion7(&ledger));
    report(8, "direct search", criterion8(&ledger));
    report(9, "determinism", criterion9());
    let passed = results.iter().filter(|r| r.2.ok).count();
    println!("{passed}/{} criteria passed", results.len());
    if passed != results.len() {
        std::process::exit(1);
    }
}
