//! Backtracking search for a symmetric chain decomposition of an arbitrary
//! ranked poset.
//!
//! A flow-guided path search runs first under a step budget; if the budget
//! runs out, the problem goes to an exact satisfiability encoding.
//!
//! Chains are extracted outermost first. Once every chain starting below rank
//! `a` is placed, the uncovered elements of rank `a` are exactly the starts of
//! the chains running from `a` to `top - a`, and the uncovered elements of
//! rank `top - a` their ends. Each chain is a saturated path through
//! uncovered elements. A max-flow over the uncovered elements both proposes
//! the paths and proves when a partial choice cannot be completed.

use std::time::{Duration, Instant};

use crate::error::{Error, Result};
use crate::poset::{Chain, ChainDecomposition, RankedPoset};
use crate::scd::flow::FlowNet;
use crate::scd::sat::sat_scd;

pub const SEARCH_CAP: usize = 5000;

#[derive(Clone, Debug)]
pub struct SearchConfig {
    pub timeout: Duration,
    pub max_elements: usize,
    /// Steps of path search before switching to the exact encoding.
    pub path_steps: u64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            timeout: Duration::from_secs(60),
            max_elements: SEARCH_CAP,
            path_steps: 20_000,
        }
    }
}

/// `Ok(None)` only after the search space is exhausted; running out of time
/// is [`Error::Timeout`].
pub fn search_scd(p: &RankedPoset, cfg: &SearchConfig) -> Result<Option<ChainDecomposition>> {
    if p.len() > cfg.max_elements {
        return Err(Error::resource(
            format!("search over a poset of {} elements", p.len()),
            cfg.max_elements as u128,
        ));
    }
    let sizes = p.level_sizes();
    let top = p.top_rank() as usize;
    for i in 0..=top {
        if sizes[i] != sizes[top - i] {
            return Ok(None);
        }
        if i > 0 && 2 * i <= top && sizes[i] < sizes[i - 1] {
            return Ok(None);
        }
    }
    let mut s = Searcher {
        p,
        top: p.top_rank(),
        covered: vec![false; p.len()],
        chains: Vec::new(),
        started: Instant::now(),
        timeout: cfg.timeout,
        steps: 0,
        budget: cfg.path_steps,
    };
    match s.solve_level(0) {
        Ok(true) => {
            let d = ChainDecomposition::new(s.chains.into_iter().map(Chain::new).collect());
            Ok(Some(d.sorted(p)))
        }
        Ok(false) => Ok(None),
        Err(_) if s.steps > s.budget => {
            let left = cfg.timeout.saturating_sub(s.started.elapsed());
            sat_scd(p, left).map_err(|e| match e {
                Error::Timeout(_) => Error::Timeout(cfg.timeout),
                e => e,
            })
        }
        Err(e) => Err(e),
    }
}

struct Searcher<'a> {
    p: &'a RankedPoset,
    top: u32,
    covered: Vec<bool>,
    chains: Vec<Vec<usize>>,
    started: Instant,
    timeout: Duration,
    steps: u64,
    budget: u64,
}

impl Searcher<'_> {
    fn tick(&mut self) -> Result<()> {
        self.steps += 1;
        if self.steps > self.budget {
            return Err(Error::Internal("path search budget".into()));
        }
        if self.steps.is_multiple_of(256) && self.started.elapsed() > self.timeout {
            return Err(Error::Timeout(self.timeout));
        }
        Ok(())
    }

    fn uncovered_at(&self, r: u32) -> Vec<usize> {
        self.p
            .level(r)
            .iter()
            .map(|&x| x as usize)
            .filter(|&x| !self.covered[x])
            .collect()
    }

    fn cover(&mut self, path: &[usize], on: bool) {
        for &x in path {
            self.covered[x] = on;
        }
    }

    fn solve_level(&mut self, a: u32) -> Result<bool> {
        if 2 * a > self.top {
            return Ok(self.covered.iter().all(|&c| c));
        }
        let Some(paths) = self.route(a) else {
            return Ok(false);
        };
        self.place(a, paths)
    }

    /// Places the remaining chains of level `a`. `proposal` routes all of them.
    fn place(&mut self, a: u32, proposal: Vec<Vec<usize>>) -> Result<bool> {
        self.tick()?;
        let Some(start) = self.uncovered_at(a).first().copied() else {
            for later in a + 1..=self.top / 2 {
                if self.route(later).is_none() {
                    return Ok(false);
                }
            }
            return self.solve_level(a + 1);
        };
        let pos = proposal.iter().position(|q| q[0] == start).expect("proposal covers every start");
        let suggested = proposal[pos].clone();
        let mut rest = proposal;
        rest.swap_remove(pos);

        self.cover(&suggested, true);
        self.chains.push(suggested.clone());
        if self.place(a, rest)? {
            return Ok(true);
        }
        self.chains.pop();
        self.cover(&suggested, false);

        // Alternatives in lexicographic order.
        let end = self.top - a;
        let reach = self.reachability(a, end);
        let mut path = vec![start];
        self.alternatives(a, end, &reach, &mut path, &suggested)
    }

    fn alternatives(
        &mut self,
        a: u32,
        end: u32,
        reach: &[bool],
        path: &mut Vec<usize>,
        skip: &[usize],
    ) -> Result<bool> {
        self.tick()?;
        let x = *path.last().unwrap();
        if self.p.rank(x) == end {
            if path.as_slice() == skip {
                return Ok(false);
            }
            let chosen = path.clone();
            self.cover(&chosen, true);
            if let Some(proposal) = self.route(a) {
                self.chains.push(chosen.clone());
                if self.place(a, proposal)? {
                    return Ok(true);
                }
                self.chains.pop();
            }
            self.cover(&chosen, false);
            return Ok(false);
        }
        for &y in self.p.upper_covers(x) {
            let y = y as usize;
            if !self.covered[y] && reach[y] {
                path.push(y);
                let found = self.alternatives(a, end, reach, path, skip)?;
                path.pop();
                if found {
                    return Ok(true);
                }
            }
        }
        Ok(false)
    }

    /// `reach[x]`: uncovered `x` with rank in `[a, end]` reaching rank `end`
    /// through uncovered elements.
    fn reachability(&self, a: u32, end: u32) -> Vec<bool> {
        let mut reach = vec![false; self.p.len()];
        for r in (a..=end).rev() {
            for &x in self.p.level(r) {
                let x = x as usize;
                if self.covered[x] {
                    continue;
                }
                reach[x] = r == end
                    || self
                        .p
                        .upper_covers(x)
                        .iter()
                        .any(|&y| reach[y as usize]);
            }
        }
        reach
    }

    /// Vertex-disjoint saturated paths from every uncovered element of rank
    /// `a` to rank `top - a` through uncovered elements, if they exist.
    fn route(&self, a: u32) -> Option<Vec<Vec<usize>>> {
        let end = self.top - a;
        let starts = self.uncovered_at(a);
        if starts.is_empty() {
            return Some(Vec::new());
        }
        let mut local = vec![u32::MAX; self.p.len()];
        let mut nodes = Vec::new();
        for r in a..=end {
            for &x in self.p.level(r) {
                if !self.covered[x as usize] {
                    local[x as usize] = nodes.len() as u32;
                    nodes.push(x as usize);
                }
            }
        }
        let v = nodes.len();
        let (source, sink) = (2 * v, 2 * v + 1);
        let mut net = FlowNet::new(2 * v + 2);
        for (i, &x) in nodes.iter().enumerate() {
            net.add_edge(2 * i, 2 * i + 1);
            let r = self.p.rank(x);
            if r == a {
                net.add_edge(source, 2 * i);
            }
            if r == end {
                net.add_edge(2 * i + 1, sink);
            } else {
                for &y in self.p.upper_covers(x) {
                    let j = local[y as usize];
                    if j != u32::MAX {
                        net.add_edge(2 * i + 1, 2 * j as usize);
                    }
                }
            }
        }
        if net.max_flow(source, sink, starts.len()) < starts.len() {
            return None;
        }
        let mut paths = Vec::with_capacity(starts.len());
        for &s in &starts {
            let mut path = vec![s];
            let mut i = local[s] as usize;
            while self.p.rank(nodes[i]) != end {
                let next = net
                    .edges_from(2 * i + 1)
                    .find(|&(e, to)| to != sink && net.used(e))
                    .map(|(_, to)| to / 2)
                    .expect("flow leaves every used vertex");
                path.push(nodes[next]);
                i = next;
            }
            paths.push(path);
        }
        Some(paths)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::{boolean_lattice, chain_product, verify_scd};

    fn v_poset() -> RankedPoset {
        RankedPoset::new(vec!["0".into(), "a".into(), "b".into()], vec![0, 1, 1], &[(0, 1), (0, 2)]).unwrap()
    }

    #[test]
    fn finds_boolean_decompositions() {
        for n in 1..=8 {
            let b = boolean_lattice(n).unwrap();
            let d = search_scd(&b, &SearchConfig::default()).unwrap().unwrap();
            assert!(verify_scd(&b, &d).passed());
            assert_eq!(d.len(), *b.level_sizes().iter().max().unwrap());
        }
    }

    #[test]
    fn v_has_no_decomposition() {
        assert!(search_scd(&v_poset(), &SearchConfig::default()).unwrap().is_none());
    }

    #[test]
    fn single_point() {
        let p = RankedPoset::new(vec!["*".into()], vec![0], &[]).unwrap();
        let d = search_scd(&p, &SearchConfig::default()).unwrap().unwrap();
        assert_eq!(d.chains, vec![Chain::new(vec![0])]);
    }

    #[test]
    fn lexicographic_first_path_is_not_forced() {
        // 0 < {a, b} < {c, d} < 1 with a below c and d, b below c only. The
        // lexicographically first full chain 0 < a < c < 1 would strand b.
        let labels: Vec<String> = ["0", "a", "b", "c", "d", "1"].iter().map(|s| s.to_string()).collect();
        let covers = [(0, 1), (0, 2), (1, 3), (1, 4), (2, 3), (3, 5), (4, 5)];
        let p = RankedPoset::new(labels, vec![0, 1, 1, 2, 2, 3], &covers).unwrap();
        let d = search_scd(&p, &SearchConfig::default()).unwrap().unwrap();
        assert!(verify_scd(&p, &d).passed());
        assert_eq!(d.chains[1], Chain::new(vec![2, 3]));
    }

    #[test]
    fn chain_products() {
        for lengths in [vec![2, 2], vec![1, 2, 3], vec![3, 3, 2]] {
            let p = chain_product(&lengths).unwrap();
            let d = search_scd(&p, &SearchConfig::default()).unwrap().unwrap();
            assert!(verify_scd(&p, &d).passed());
        }
    }

    #[test]
    fn bottleneck_poset() {
        // Levels 1,1,2,1,1: one full chain and a middle singleton.
        let labels: Vec<String> = (0..6).map(|i| i.to_string()).collect();
        let covers = [(0, 1), (1, 2), (1, 3), (2, 4), (3, 4), (4, 5)];
        let p = RankedPoset::new(labels, vec![0, 1, 2, 2, 3, 4], &covers).unwrap();
        let d = search_scd(&p, &SearchConfig::default()).unwrap().unwrap();
        assert_eq!(d.len(), 2);
    }

    #[test]
    fn level_profile_rejects_without_search() {
        // 1,2,1,1,... not symmetric: 0 < a,b < c < d
        let labels: Vec<String> = (0..5).map(|i| i.to_string()).collect();
        let covers = [(0, 1), (0, 2), (1, 3), (2, 3), (3, 4)];
        let p = RankedPoset::new(labels, vec![0, 1, 1, 2, 3], &covers).unwrap();
        assert!(search_scd(&p, &SearchConfig::default()).unwrap().is_none());
    }

    #[test]
    fn caps_and_timeouts() {
        let b = boolean_lattice(13).unwrap();
        let err = search_scd(&b, &SearchConfig::default()).unwrap_err();
        assert!(matches!(err, Error::Resource { .. }));
        let b = boolean_lattice(12).unwrap();
        let cfg = SearchConfig {
            timeout: Duration::ZERO,
            ..SearchConfig::default()
        };
        assert!(matches!(search_scd(&b, &cfg), Err(Error::Timeout(_))));
    }
}
