//! Exact symmetric chain decomposition as a satisfiability problem.
//!
//! Variables: `m_xy` for every cover (y follows x in its chain) and `s_xa`
//! (the chain through x starts at rank a, hence ends at rank top - a), for
//! `a ≤ min(r(x), top - r(x))`. Every element has exactly one start rank, at
//! most one successor and one predecessor; a cover used by a chain keeps the
//! start rank; x has no predecessor iff it starts its chain (a = r(x)) and no
//! successor iff it ends it (a = top - r(x)).

use std::time::Duration;

use cadical::{Solver, Timeout};

use crate::error::{Error, Result};
use crate::poset::{Chain, ChainDecomposition, RankedPoset};

struct Encoding {
    /// First cover variable of each element's upper covers.
    cover_base: Vec<i32>,
    /// First age variable of each element; age `a` is `age_base[x] + a`.
    age_base: Vec<i32>,
    next: i32,
}

impl Encoding {
    fn new(p: &RankedPoset) -> Self {
        let mut next = 1;
        let mut cover_base = Vec::with_capacity(p.len());
        for x in 0..p.len() {
            cover_base.push(next);
            next += p.upper_covers(x).len() as i32;
        }
        let mut age_base = Vec::with_capacity(p.len());
        for x in 0..p.len() {
            age_base.push(next);
            next += max_age(p, x) as i32 + 1;
        }
        Encoding {
            cover_base,
            age_base,
            next,
        }
    }

    fn cover(&self, p: &RankedPoset, x: usize, y: usize) -> i32 {
        let pos = p.upper_covers(x).binary_search(&(y as u32)).expect("cover");
        self.cover_base[x] + pos as i32
    }

    fn age(&self, p: &RankedPoset, x: usize, a: u32) -> Option<i32> {
        (a <= max_age(p, x)).then(|| self.age_base[x] + a as i32)
    }
}

fn max_age(p: &RankedPoset, x: usize) -> u32 {
    p.rank(x).min(p.top_rank() - p.rank(x))
}

fn at_most_one(solver: &mut Solver, lits: &[i32]) {
    for i in 0..lits.len() {
        for j in i + 1..lits.len() {
            solver.add_clause([-lits[i], -lits[j]]);
        }
    }
}

pub(crate) fn sat_scd(p: &RankedPoset, timeout: Duration) -> Result<Option<ChainDecomposition>> {
    let enc = Encoding::new(p);
    let mut solver: Solver = Solver::new();
    solver.reserve(enc.next - 1);
    let top = p.top_rank();
    for x in 0..p.len() {
        let r = p.rank(x);
        let ages: Vec<i32> = (0..=max_age(p, x)).map(|a| enc.age(p, x, a).unwrap()).collect();
        solver.add_clause(ages.iter().copied());
        at_most_one(&mut solver, &ages);

        let succ: Vec<i32> = p.upper_covers(x).iter().map(|&y| enc.cover(p, x, y as usize)).collect();
        let pred: Vec<i32> = p
            .lower_covers(x)
            .iter()
            .map(|&w| enc.cover(p, w as usize, x))
            .collect();
        at_most_one(&mut solver, &succ);
        at_most_one(&mut solver, &pred);

        // Starts exactly when there is no predecessor.
        let start = enc.age(p, x, r);
        if let Some(s) = start {
            for &m in &pred {
                solver.add_clause([-s, -m]);
            }
        }
        solver.add_clause(start.into_iter().chain(pred.iter().copied()));

        // Ends exactly when there is no successor.
        let end = enc.age(p, x, top - r);
        if let Some(e) = end {
            for &m in &succ {
                solver.add_clause([-e, -m]);
            }
        }
        solver.add_clause(end.into_iter().chain(succ.iter().copied()));

        // A used cover carries the start rank upward.
        for (&y, &m) in p.upper_covers(x).iter().zip(&succ) {
            for a in 0..=max_age(p, x) {
                let sx = enc.age(p, x, a).unwrap();
                match enc.age(p, y as usize, a) {
                    Some(sy) => solver.add_clause([-m, -sx, sy]),
                    None => solver.add_clause([-m, -sx]),
                }
            }
        }
    }
    solver.set_callbacks(Some(Timeout::new(timeout.as_secs_f32())));
    match solver.solve() {
        None => Err(Error::Timeout(timeout)),
        Some(false) => Ok(None),
        Some(true) => {
            let mut next = vec![usize::MAX; p.len()];
            let mut has_pred = vec![false; p.len()];
            for x in 0..p.len() {
                for &y in p.upper_covers(x) {
                    if solver.value(enc.cover(p, x, y as usize)) == Some(true) {
                        next[x] = y as usize;
                        has_pred[y as usize] = true;
                    }
                }
            }
            let mut chains = Vec::new();
            for x in (0..p.len()).filter(|&x| !has_pred[x]) {
                let mut c = vec![x];
                while next[*c.last().unwrap()] != usize::MAX {
                    c.push(next[*c.last().unwrap()]);
                }
                chains.push(Chain::new(c));
            }
            Ok(Some(ChainDecomposition::new(chains).sorted(p)))
        }
    }
}
