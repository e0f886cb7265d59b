//! Groups given by generators, the wreath product on `[k]×[t]`, the
//! coordinate action on tuples, orbits, and stabilizers.

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};
use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::{format_generators, Permutation};

pub const DEFAULT_CLOSURE_CAP: usize = 1_000_000;

/// Upper bound on `s^t` for tuple enumeration.
pub const TUPLE_CAP: usize = 10_000_000;

/// A permutation group on `{0, .., degree-1}` given by generators. The full
/// element list is computed on first request.
#[derive(Clone)]
pub struct GeneratedGroup {
    degree: usize,
    generators: Vec<Permutation>,
    closure: OnceLock<Vec<Permutation>>,
}

impl GeneratedGroup {
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<Self> {
        if let Some(g) = generators.iter().find(|g| g.degree() != degree) {
            return Err(Error::arg(format!(
                "generator {g} has degree {}, expected {degree}",
                g.degree()
            )));
        }
        Ok(GeneratedGroup {
            degree,
            generators,
            closure: OnceLock::new(),
        })
    }

    pub fn trivial(degree: usize) -> Self {
        GeneratedGroup::new(degree, Vec::new()).unwrap()
    }

    /// `S_m`, generated by `(1 2)` and `(1 2 .. m)`.
    pub fn symmetric(degree: usize) -> Self {
        let mut gens = Vec::new();
        if degree >= 2 {
            gens.push(Permutation::from_cycles(degree, &[vec![0, 1]]).unwrap());
        }
        if degree >= 3 {
            let full: Vec<u32> = (0..degree as u32).collect();
            gens.push(Permutation::from_cycles(degree, &[full]).unwrap());
        }
        GeneratedGroup::new(degree, gens).unwrap()
    }

    /// `A_m`, generated by the 3-cycles `(1 2 i)`.
    pub fn alternating(degree: usize) -> Self {
        let gens = (2..degree as u32)
            .map(|i| Permutation::from_cycles(degree, &[vec![0, 1, i]]).unwrap())
            .collect();
        GeneratedGroup::new(degree, gens).unwrap()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn is_trivial_by_generators(&self) -> bool {
        self.generators.iter().all(Permutation::is_identity)
    }

    /// All elements, sorted. Breadth-first closure over the generators.
    pub fn elements(&self, cap: usize) -> Result<&[Permutation]> {
        if let Some(e) = self.closure.get() {
            return Ok(e);
        }
        let elements = close_group(self.degree, &self.generators, cap)?;
        let _ = self.closure.set(elements);
        Ok(self.closure.get().unwrap())
    }

    pub fn order(&self, cap: usize) -> Result<usize> {
        Ok(self.elements(cap)?.len())
    }

    /// Order and the multiset of cycle types. Used to match groups against
    /// presentations up to conjugacy.
    pub fn fingerprint(&self, cap: usize) -> Result<GroupFingerprint> {
        let mut types = BTreeMap::new();
        for g in self.elements(cap)? {
            *types.entry(g.cycle_type()).or_insert(0usize) += 1;
        }
        Ok(GroupFingerprint {
            order: self.order(cap)?,
            cycle_types: types,
        })
    }
}

impl fmt::Debug for GeneratedGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}> on {}", format_generators(&self.generators), self.degree)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupFingerprint {
    pub order: usize,
    pub cycle_types: BTreeMap<Vec<usize>, usize>,
}

pub fn close_group(degree: usize, generators: &[Permutation], cap: usize) -> Result<Vec<Permutation>> {
    let id = Permutation::identity(degree);
    let mut seen: HashSet<Permutation> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(id.clone());
    queue.push_back(id);
    while let Some(g) = queue.pop_front() {
        for s in generators {
            let h = s.compose(&g);
            if !seen.contains(&h) {
                if seen.len() >= cap {
                    return Err(Error::resource("group closure", cap as u128));
                }
                seen.insert(h.clone());
                queue.push_back(h);
            }
        }
    }
    let mut elements: Vec<Permutation> = seen.into_iter().collect();
    elements.sort();
    Ok(elements)
}

/// Point `(i, r)` of `[k]×[t]` (0-based) sits at `r·k + i`.
#[inline]
pub fn pair_index(k: usize, i: usize, r: usize) -> usize {
    r * k + i
}

/// `K ≀ T` acting on `[k]×[t]` by `(i, r) ↦ (ρ_r(i), τ(r))`.
///
/// Generators: every `K` generator acting on the first block of each `T`-orbit
/// of blocks, plus every `T` generator lifted to move whole blocks.
pub fn wreath_product(k_group: &GeneratedGroup, t_group: &GeneratedGroup) -> GeneratedGroup {
    let k = k_group.degree();
    let t = t_group.degree();
    let n = k * t;
    let mut gens = Vec::new();
    for block in block_orbit_leaders(t_group) {
        for rho in k_group.generators() {
            let mut images: Vec<u32> = (0..n as u32).collect();
            for i in 0..k {
                images[pair_index(k, i, block)] = pair_index(k, rho.apply(i as u32) as usize, block) as u32;
            }
            gens.push(Permutation::from_images(images).unwrap());
        }
    }
    for tau in t_group.generators() {
        let mut images = vec![0u32; n];
        for r in 0..t {
            for i in 0..k {
                images[pair_index(k, i, r)] = pair_index(k, i, tau.apply(r as u32) as usize) as u32;
            }
        }
        gens.push(Permutation::from_images(images).unwrap());
    }
    GeneratedGroup::new(n, gens).unwrap()
}

fn block_orbit_leaders(t_group: &GeneratedGroup) -> Vec<usize> {
    let t = t_group.degree();
    let mut seen = vec![false; t];
    let mut leaders = Vec::new();
    for start in 0..t {
        if seen[start] {
            continue;
        }
        leaders.push(start);
        let mut stack = vec![start];
        seen[start] = true;
        while let Some(x) = stack.pop() {
            for g in t_group.generators() {
                let y = g.apply(x as u32) as usize;
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
    }
    leaders
}

/// `τ(j̄) = (j_{τ⁻¹(1)}, .., j_{τ⁻¹(t)})`: the entry at position `r` moves to `τ(r)`.
pub fn act_on_tuple<V: Copy>(tau: &Permutation, tuple: &[V]) -> Result<Vec<V>> {
    if tau.degree() != tuple.len() {
        return Err(Error::arg(format!(
            "tuple of length {} under a permutation of degree {}",
            tuple.len(),
            tau.degree()
        )));
    }
    let mut out = tuple.to_vec();
    for (r, &v) in tuple.iter().enumerate() {
        out[tau.apply(r as u32) as usize] = v;
    }
    Ok(out)
}

pub fn stabilizer_brute(group: &GeneratedGroup, tuple: &[u32], cap: usize) -> Result<GeneratedGroup> {
    if group.degree() != tuple.len() {
        return Err(Error::arg("tuple length differs from the group degree"));
    }
    let fixing: Vec<Permutation> = group
        .elements(cap)?
        .iter()
        .filter(|g| act_on_tuple(g, tuple).unwrap() == tuple)
        .cloned()
        .collect();
    let stab = GeneratedGroup::new(group.degree(), fixing.clone())?;
    let _ = stab.closure.set(fixing);
    Ok(stab)
}

/// One generator `σ^power` where `σ` is a single cycle (0-based points).
/// An empty cycle stands for the identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CyclePower {
    pub cycle: Vec<u32>,
    pub power: u64,
}

/// A group presented as `⟨σ_1^{r_1}, .., σ_m^{r_m}⟩` with pairwise disjoint cycles `σ_i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleSpec {
    pub degree: usize,
    pub generators: Vec<CyclePower>,
}

impl CycleSpec {
    pub fn new(degree: usize, generators: Vec<CyclePower>) -> Result<Self> {
        let mut used = vec![false; degree];
        for g in &generators {
            if g.power == 0 {
                return Err(Error::arg("cycle power must be positive"));
            }
            for &x in &g.cycle {
                let x = x as usize;
                if x >= degree {
                    return Err(Error::arg(format!("point {} outside degree {degree}", x + 1)));
                }
                if used[x] {
                    return Err(Error::arg(format!(
                        "cycles are not pairwise disjoint (point {})",
                        x + 1
                    )));
                }
                used[x] = true;
            }
        }
        Ok(CycleSpec { degree, generators })
    }

    pub fn trivial(degree: usize) -> Self {
        CycleSpec {
            degree,
            generators: Vec::new(),
        }
    }

    /// `⟨(1 2 .. m)^power⟩` on `m` points.
    pub fn full_cycle(degree: usize, power: u64) -> Self {
        let cycle = if degree >= 2 { (0..degree as u32).collect() } else { Vec::new() };
        CycleSpec::new(degree, vec![CyclePower { cycle, power }]).unwrap()
    }

    pub fn generator(&self, i: usize) -> Permutation {
        let g = &self.generators[i];
        if g.cycle.len() < 2 {
            return Permutation::identity(self.degree);
        }
        Permutation::from_cycles(self.degree, std::slice::from_ref(&g.cycle))
            .unwrap()
            .pow(g.power)
    }

    pub fn permutations(&self) -> Vec<Permutation> {
        (0..self.generators.len()).map(|i| self.generator(i)).collect()
    }

    pub fn group(&self) -> GeneratedGroup {
        GeneratedGroup::new(self.degree, self.permutations()).unwrap()
    }

    pub fn is_trivial(&self) -> bool {
        self.permutations().iter().all(Permutation::is_identity)
    }
}

impl fmt::Display for CycleSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.generators.is_empty() {
            return f.write_str("<>");
        }
        f.write_str("<")?;
        for (n, g) in self.generators.iter().enumerate() {
            if n > 0 {
                f.write_str(", ")?;
            }
            let c: Vec<String> = g.cycle.iter().map(|x| (x + 1).to_string()).collect();
            write!(f, "({})", c.join(" "))?;
            if g.power != 1 {
                write!(f, "^{}", g.power)?;
            }
        }
        f.write_str(">")
    }
}

/// Minimal `d ≥ 1` per generator with `(σ_i^{r_i})^d` fixing the tuple; the
/// stabilizer is generated by the `σ_i^{r_i d_i}`.
pub fn stabilizer_cyclic_powers(spec: &CycleSpec, tuple: &[u32]) -> Result<(CycleSpec, Vec<u64>)> {
    if spec.degree != tuple.len() {
        return Err(Error::arg("tuple length differs from the group degree"));
    }
    CycleSpec::new(spec.degree, spec.generators.clone())?;
    let mut gens = Vec::with_capacity(spec.generators.len());
    let mut ds = Vec::with_capacity(spec.generators.len());
    for (i, g) in spec.generators.iter().enumerate() {
        let p = spec.generator(i);
        let order = p.order();
        let mut d = 1;
        let mut q = p.clone();
        while act_on_tuple(&q, tuple)? != tuple {
            d += 1;
            debug_assert!(d <= order);
            q = q.compose(&p);
        }
        ds.push(d);
        gens.push(CyclePower {
            cycle: g.cycle.clone(),
            power: g.power * d,
        });
    }
    Ok((CycleSpec::new(spec.degree, gens)?, ds))
}

/// Witness that each generator, as given, is a power of a single cycle and
/// that those cycles are pairwise disjoint.
///
/// A generator whose cycles all have length `ℓ` (say `c` of them) is the
/// `c`-th power of the cycle that interleaves them, so `(1 2 3)(4 5 6)` is
/// witnessed as `(1 4 2 5 3 6)^2`.
pub fn is_powers_of_disjoint_cycles(gens: &[Permutation]) -> Option<CycleSpec> {
    let degree = gens.first().map_or(0, Permutation::degree);
    let mut out = Vec::with_capacity(gens.len());
    for g in gens {
        if g.degree() != degree {
            return None;
        }
        let cycles = g.cycles();
        if cycles.is_empty() {
            out.push(CyclePower {
                cycle: Vec::new(),
                power: 1,
            });
            continue;
        }
        let len = cycles[0].len();
        if cycles.iter().any(|c| c.len() != len) {
            return None;
        }
        let mut sigma = Vec::with_capacity(len * cycles.len());
        for pos in 0..len {
            for c in &cycles {
                sigma.push(c[pos]);
            }
        }
        out.push(CyclePower {
            cycle: sigma,
            power: cycles.len() as u64,
        });
    }
    CycleSpec::new(degree, out).ok()
}

/// Tuples in `[s]^t` (values `0..s`) packed with position 0 most significant,
/// so packed order is lexicographic order.
pub fn pack_tuple(tuple: &[u32], s: usize) -> usize {
    tuple.iter().fold(0, |acc, &v| acc * s + v as usize)
}

pub fn unpack_tuple(mut code: usize, s: usize, t: usize) -> Vec<u32> {
    let mut out = vec![0u32; t];
    for slot in out.iter_mut().rev() {
        *slot = (code % s) as u32;
        code /= s;
    }
    out
}

fn tuple_count(s: usize, t: usize) -> Result<usize> {
    (s as u128)
        .checked_pow(t as u32)
        .filter(|&c| c <= TUPLE_CAP as u128)
        .map(|c| c as usize)
        .ok_or_else(|| Error::resource(format!("tuple space {s}^{t}"), TUPLE_CAP as u128))
}

pub fn orbit_of_tuple(gens: &[Permutation], tuple: &[u32]) -> Result<BTreeSet<Vec<u32>>> {
    let mut seen = BTreeSet::new();
    seen.insert(tuple.to_vec());
    let mut stack = vec![tuple.to_vec()];
    while let Some(x) = stack.pop() {
        for g in gens {
            let y = act_on_tuple(g, &x)?;
            if seen.insert(y.clone()) {
                stack.push(y);
            }
        }
    }
    Ok(seen)
}

/// The lexicographically least tuple of every orbit of the group on `[s]^t`, in lex order.
pub fn orbit_reps_lex(gens: &[Permutation], s: usize, t: usize) -> Result<Vec<Vec<u32>>> {
    let total = tuple_count(s, t)?;
    let mut seen = vec![false; total];
    let mut reps = Vec::new();
    for code in 0..total {
        if seen[code] {
            continue;
        }
        let rep = unpack_tuple(code, s, t);
        seen[code] = true;
        let mut stack = vec![rep.clone()];
        while let Some(x) = stack.pop() {
            for g in gens {
                let y = act_on_tuple(g, &x)?;
                let c = pack_tuple(&y, s);
                if !seen[c] {
                    seen[c] = true;
                    stack.push(y);
                }
            }
        }
        reps.push(rep);
    }
    Ok(reps)
}

/// The lex-least tuple in the orbit of `tuple` together with a group element
/// carrying `tuple` onto it.
pub fn canonical_tuple(gens: &[Permutation], tuple: &[u32]) -> Result<(Vec<u32>, Permutation)> {
    let t = tuple.len();
    let mut best = (tuple.to_vec(), Permutation::identity(t));
    let mut seen = BTreeSet::new();
    seen.insert(tuple.to_vec());
    let mut queue = VecDeque::from([(tuple.to_vec(), Permutation::identity(t))]);
    while let Some((x, via)) = queue.pop_front() {
        if x < best.0 {
            best = (x.clone(), via.clone());
        }
        for g in gens {
            let y = act_on_tuple(g, &x)?;
            if seen.insert(y.clone()) {
                queue.push_back((y, g.compose(&via)));
            }
        }
    }
    Ok(best)
}
