//! Permutations of `0..n` and permutation groups stored as stabilizer chains.
//!
//! Composition follows the right-action convention used throughout the
//! crate: `p.then(q)` applies `p` first and `q` second.

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Perm(Vec<usize>);

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm{:?}", self.0)
    }
}

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm((0..n).collect())
    }

    /// Builds a permutation from its image array, rejecting non-bijections.
    pub fn from_images(images: Vec<usize>) -> Option<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return None;
            }
            seen[x] = true;
        }
        Some(Perm(images))
    }

    pub(crate) fn from_images_unchecked(images: Vec<usize>) -> Self {
        debug_assert!(Perm::from_images(images.clone()).is_some());
        Perm(images)
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.0[x]
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    /// `self` first, then `other`.
    pub fn then(&self, other: &Perm) -> Perm {
        Perm(self.0.iter().map(|&x| other.0[x]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x] = i;
        }
        Perm(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// `other^-1 * self * other`, i.e. the conjugate of `self` by `other`.
    pub fn conjugate_by(&self, other: &Perm) -> Perm {
        other.inverse().then(self).then(other)
    }

    pub fn first_moved(&self) -> Option<usize> {
        self.0.iter().enumerate().find(|(i, &x)| *i != x).map(|(i, _)| i)
    }

    pub fn commutes_with(&self, other: &Perm) -> bool {
        self.then(other) == other.then(self)
    }

    pub fn image_set(&self, set: &[usize]) -> Vec<usize> {
        let mut v: Vec<usize> = set.iter().map(|&x| self.0[x]).collect();
        v.sort_unstable();
        v
    }
}

#[derive(Clone, Debug)]
struct Level {
    base: usize,
    gens: Vec<Perm>,
    orbit: Vec<usize>,
    // transversal[u] maps the base point to u
    transversal: Vec<Option<Perm>>,
}

impl Level {
    fn new(n: usize, base: usize) -> Self {
        let mut transversal = vec![None; n];
        transversal[base] = Some(Perm::identity(n));
        Level { base, gens: Vec::new(), orbit: vec![base], transversal }
    }

    fn rebuild_orbit(&mut self, n: usize) {
        self.transversal = vec![None; n];
        self.transversal[self.base] = Some(Perm::identity(n));
        self.orbit = vec![self.base];
        let mut i = 0;
        while i < self.orbit.len() {
            let u = self.orbit[i];
            let tu = self.transversal[u].clone().unwrap();
            for s in &self.gens {
                let v = s.apply(u);
                if self.transversal[v].is_none() {
                    self.transversal[v] = Some(tu.then(s));
                    self.orbit.push(v);
                }
            }
            i += 1;
        }
    }
}

/// A permutation group given by generators together with a deterministic
/// Schreier–Sims stabilizer chain.
#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Perm>,
    levels: Vec<Level>,
}

impl PermGroup {
    pub fn trivial(n: usize) -> Self {
        PermGroup { degree: n, generators: Vec::new(), levels: Vec::new() }
    }

    pub fn new(n: usize, generators: Vec<Perm>) -> Self {
        Self::with_base(n, generators, &[])
    }

    /// Builds the chain with a prescribed base prefix; further base points
    /// are the smallest points moved by the residue that needs them.
    pub fn with_base(n: usize, generators: Vec<Perm>, prefix: &[usize]) -> Self {
        let mut gens: Vec<Perm> = Vec::new();
        for g in generators {
            assert_eq!(g.degree(), n, "generator degree mismatch");
            if !g.is_identity() && !gens.contains(&g) {
                gens.push(g);
            }
        }
        let mut group = PermGroup { degree: n, generators: gens.clone(), levels: Vec::new() };
        for &b in prefix {
            group.levels.push(Level::new(n, b));
        }
        for g in &gens {
            group.ensure_base_moves(g);
        }
        let bases: Vec<usize> = group.levels.iter().map(|l| l.base).collect();
        for g in &gens {
            for (i, level) in group.levels.iter_mut().enumerate() {
                if bases[..i].iter().all(|&b| g.apply(b) == b) {
                    level.gens.push(g.clone());
                }
            }
        }
        for level in group.levels.iter_mut() {
            level.rebuild_orbit(n);
        }
        group.schreier_sims();
        group
    }

    fn ensure_base_moves(&mut self, g: &Perm) {
        let bases: Vec<usize> = self.levels.iter().map(|l| l.base).collect();
        if bases.iter().all(|&b| g.apply(b) == b) {
            let b = g.first_moved().expect("identity has no moved point");
            self.levels.push(Level::new(self.degree, b));
        }
    }

    /// Sifts `g` starting at level `from`; returns the residue and the level
    /// at which sifting stopped.
    fn sift(&self, g: &Perm, from: usize) -> (Perm, usize) {
        let mut h = g.clone();
        for j in from..self.levels.len() {
            let level = &self.levels[j];
            let u = h.apply(level.base);
            match &level.transversal[u] {
                None => return (h, j),
                Some(t) => h = h.then(&t.inverse()),
            }
        }
        (h, self.levels.len())
    }

    fn schreier_sims(&mut self) {
        let n = self.degree;
        if self.levels.is_empty() {
            return;
        }
        let mut i = self.levels.len() as isize - 1;
        'outer: while i >= 0 {
            let iu = i as usize;
            let orbit = self.levels[iu].orbit.clone();
            let gens = self.levels[iu].gens.clone();
            for &u in &orbit {
                let tu = self.levels[iu].transversal[u].clone().unwrap();
                for s in &gens {
                    let v = s.apply(u);
                    let tv = self.levels[iu].transversal[v].clone().unwrap();
                    let schreier = tu.then(s).then(&tv.inverse());
                    if schreier.is_identity() {
                        continue;
                    }
                    let (h, j) = self.sift(&schreier, iu + 1);
                    if !h.is_identity() {
                        if j == self.levels.len() {
                            let b = h.first_moved().unwrap();
                            self.levels.push(Level::new(n, b));
                        }
                        for l in iu + 1..=j {
                            self.levels[l].gens.push(h.clone());
                            self.levels[l].rebuild_orbit(n);
                        }
                        i = j as isize;
                        continue 'outer;
                    }
                }
            }
            i -= 1;
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base).collect()
    }

    pub fn order(&self) -> BigUint {
        self.levels.iter().fold(BigUint::from(1u32), |acc, l| acc * BigUint::from(l.orbit.len()))
    }

    /// Group order when it fits in 64 bits.
    pub fn order_u64(&self) -> Option<u64> {
        let mut acc: u64 = 1;
        for l in &self.levels {
            acc = acc.checked_mul(l.orbit.len() as u64)?;
        }
        Some(acc)
    }

    pub fn contains(&self, g: &Perm) -> bool {
        if g.degree() != self.degree {
            return false;
        }
        self.sift(g, 0).0.is_identity()
    }

    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.generators.iter().all(|g| other.contains(g))
    }

    /// Orbits on points, each sorted, listed by minimum.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        orbits_of(self.degree, &self.generators)
    }

    pub fn orbit_of(&self, x: usize) -> Vec<usize> {
        let mut seen = vec![false; self.degree];
        seen[x] = true;
        let mut orbit = vec![x];
        let mut i = 0;
        while i < orbit.len() {
            let u = orbit[i];
            for g in &self.generators {
                let v = g.apply(u);
                if !seen[v] {
                    seen[v] = true;
                    orbit.push(v);
                }
            }
            i += 1;
        }
        orbit.sort_unstable();
        orbit
    }

    pub fn is_transitive(&self) -> bool {
        self.degree == 0 || self.orbit_of(0).len() == self.degree
    }

    /// Regular: transitive with trivial point stabilizers.
    pub fn is_regular(&self) -> bool {
        self.is_transitive() && self.order() == BigUint::from(self.degree)
    }

    pub fn is_abelian(&self) -> bool {
        let g = &self.generators;
        (0..g.len()).all(|i| (i + 1..g.len()).all(|j| g[i].commutes_with(&g[j])))
    }

    /// Pointwise stabilizer of `points`.
    pub fn pointwise_stabilizer(&self, points: &[usize]) -> PermGroup {
        let chain = PermGroup::with_base(self.degree, self.strong_generators(), points);
        let gens = if points.len() < chain.levels.len() { chain.levels[points.len()].gens.clone() } else { Vec::new() };
        PermGroup::new(self.degree, gens)
    }

    fn strong_generators(&self) -> Vec<Perm> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for g in self.generators.iter().chain(self.levels.iter().flat_map(|l| l.gens.iter())) {
            if seen.insert(g.clone()) {
                out.push(g.clone());
            }
        }
        out
    }

    /// Enumerates all elements; only sensible for small groups.
    pub fn elements(&self) -> Vec<Perm> {
        let mut out = vec![Perm::identity(self.degree)];
        for level in self.levels.iter().rev() {
            let mut next = Vec::with_capacity(out.len() * level.orbit.len());
            for &u in &level.orbit {
                let t = level.transversal[u].as_ref().unwrap();
                for h in &out {
                    next.push(h.then(t));
                }
            }
            out = next;
        }
        out.sort();
        out
    }

    /// Subgroup of elements satisfying `pred`, found by filtering the element
    /// list. `pred` must define a subgroup.
    pub fn filter_subgroup(&self, pred: impl Fn(&Perm) -> bool) -> PermGroup {
        let gens: Vec<Perm> = self.elements().into_iter().filter(|g| pred(g)).collect();
        PermGroup::new(self.degree, gens)
    }

    pub fn same_group_as(&self, other: &PermGroup) -> bool {
        self.degree == other.degree
            && self.order() == other.order()
            && self.generators.iter().all(|g| other.contains(g))
    }
}

/// Orbits of the group generated by `gens` on `0..n`.
pub fn orbits_of(n: usize, gens: &[Perm]) -> Vec<Vec<usize>> {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut y = x;
        while p[y] != r {
            let next = p[y];
            p[y] = r;
            y = next;
        }
        r
    }
    for g in gens {
        for x in 0..n {
            let a = find(&mut parent, x);
            let b = find(&mut parent, g.apply(x));
            if a != b {
                let (lo, hi) = if a < b { (a, b) } else { (b, a) };
                parent[hi] = lo;
            }
        }
    }
    let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for x in 0..n {
        let r = find(&mut parent, x);
        groups.entry(r).or_default().push(x);
    }
    groups.into_values().collect()
}

/// The symmetric group on `n` points.
pub fn symmetric_group(n: usize) -> PermGroup {
    let mut gens = Vec::new();
    if n >= 2 {
        let mut t: Vec<usize> = (0..n).collect();
        t.swap(0, 1);
        gens.push(Perm(t));
        let c: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
        gens.push(Perm(c));
    }
    PermGroup::new(n, gens)
}
