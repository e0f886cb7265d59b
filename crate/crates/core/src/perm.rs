//! Permutations of `{0, .., m-1}` and the cycle notation used on the command
//! line. Points are 0-based in memory and 1-based in notation.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u32).collect(),
        }
    }

    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &x in &images {
            let x = x as usize;
            if x >= images.len() || seen[x] {
                return Err(Error::arg(format!("{images:?} is not a bijection")));
            }
            seen[x] = true;
        }
        Ok(Permutation { images })
    }

    /// Builds the product of the given cycles (0-based points), applied right to left.
    pub fn from_cycles(degree: usize, cycles: &[Vec<u32>]) -> Result<Self> {
        let mut p = Permutation::identity(degree);
        for cycle in cycles {
            let c = Self::single_cycle(degree, cycle)?;
            p = p.compose(&c);
        }
        Ok(p)
    }

    fn single_cycle(degree: usize, cycle: &[u32]) -> Result<Self> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut seen = vec![false; degree];
        for (i, &x) in cycle.iter().enumerate() {
            let xu = x as usize;
            if xu >= degree {
                return Err(Error::arg(format!(
                    "point {} outside ground set of size {degree}",
                    x + 1
                )));
            }
            if seen[xu] {
                return Err(Error::arg(format!("point {} repeated in a cycle", x + 1)));
            }
            seen[xu] = true;
            images[xu] = cycle[(i + 1) % cycle.len()];
        }
        Ok(Permutation { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, x: u32) -> u32 {
        self.images[x as usize]
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: other.images.iter().map(|&x| self.images[x as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.images.len()];
        for (x, &y) in self.images.iter().enumerate() {
            images[y as usize] = x as u32;
        }
        Permutation { images }
    }

    pub fn pow(&self, mut e: u64) -> Permutation {
        let mut base = self.clone();
        let mut acc = Permutation::identity(self.degree());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.compose(&base);
            }
            base = base.compose(&base);
            e >>= 1;
        }
        acc
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(x, &y)| x as u32 == y)
    }

    /// Same permutation on a larger ground set, fixing the new points.
    pub fn extend(&self, degree: usize) -> Permutation {
        assert!(degree >= self.degree());
        let mut images = self.images.clone();
        images.extend(self.degree() as u32..degree as u32);
        Permutation { images }
    }

    /// Nontrivial cycles, each starting at its least point, ordered by that point.
    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start as u32];
            seen[start] = true;
            let mut x = self.images[start];
            while x as usize != start {
                seen[x as usize] = true;
                cycle.push(x);
                x = self.images[x as usize];
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }

    pub fn support(&self) -> Vec<u32> {
        (0..self.degree() as u32)
            .filter(|&x| self.apply(x) != x)
            .collect()
    }

    /// Cycle lengths including fixed points, descending.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut lens: Vec<usize> = self.cycles().iter().map(Vec::len).collect();
        let moved: usize = lens.iter().sum();
        lens.extend(std::iter::repeat_n(1, self.degree() - moved));
        lens.sort_unstable_by(|a, b| b.cmp(a));
        lens
    }

    pub fn order(&self) -> u64 {
        self.cycles()
            .iter()
            .fold(1u64, |acc, c| lcm(acc, c.len() as u64))
    }
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub(crate) fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for c in cycles {
            f.write_str("(")?;
            for (i, x) in c.iter().enumerate() {
                if i > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{}", x + 1)?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Parses one permutation such as `(1 2 3)(4 5)`. `()` is the identity.
pub fn parse_permutation(s: &str, degree: usize) -> Result<Permutation> {
    let cycles = parse_cycles(s)?;
    Permutation::from_cycles(degree, &cycles)
}

fn parse_cycles(s: &str) -> Result<Vec<Vec<u32>>> {
    let mut cycles = Vec::new();
    let mut rest = s.trim();
    if rest.is_empty() {
        return Err(Error::Parse("empty permutation".into()));
    }
    while !rest.is_empty() {
        let Some(body) = rest.strip_prefix('(') else {
            return Err(Error::Parse(format!("expected '(' at {rest:?}")));
        };
        let Some(close) = body.find(')') else {
            return Err(Error::Parse(format!("unclosed cycle in {s:?}")));
        };
        let inner = &body[..close];
        if inner.contains('(') {
            return Err(Error::Parse(format!("nested '(' in {s:?}")));
        }
        let mut cycle = Vec::new();
        for tok in inner.split_whitespace() {
            let x: u32 = tok
                .parse()
                .map_err(|_| Error::Parse(format!("bad point {tok:?} in {s:?}")))?;
            if x == 0 {
                return Err(Error::Parse(format!("points are 1-based, got 0 in {s:?}")));
            }
            cycle.push(x - 1);
        }
        if cycle.len() > 1 {
            cycles.push(cycle);
        }
        rest = body[close + 1..].trim_start();
    }
    Ok(cycles)
}

/// Parses a comma-separated generator list such as `"(1 2 3)(4 5 6), (1 4)"`.
///
/// Without an explicit `degree` the ground set is `1..=max point`. An empty
/// or all-whitespace string is the empty generator list.
pub fn parse_generators(s: &str, degree: Option<usize>) -> Result<Vec<Permutation>> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() == 1 && parts[0].is_empty() {
        return Ok(Vec::new());
    }
    let mut parsed = Vec::with_capacity(parts.len());
    for part in parts {
        parsed.push(parse_cycles(part)?);
    }
    let max_point = parsed
        .iter()
        .flatten()
        .flatten()
        .map(|&x| x as usize + 1)
        .max()
        .unwrap_or(0);
    let degree = match degree {
        Some(d) if d < max_point => {
            return Err(Error::Parse(format!(
                "point {max_point} outside ground set of size {d}"
            )))
        }
        Some(d) => d,
        None => max_point,
    };
    parsed
        .iter()
        .map(|c| Permutation::from_cycles(degree, c))
        .collect()
}

pub fn format_generators(gens: &[Permutation]) -> String {
    gens.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(", ")
}
