//! Schur rings over finite abelian groups, stored as colored partitions.

use crate::arith::{gcd, is_prime};
use crate::error::{cap_check, Error, Result};
use crate::graph::ColoredDigraph;
use crate::group::{Elem, Group, Section, Subgroup};
use crate::perm::{Perm, PermGroup};
use crate::pullback::{Bound, Pullback};
use serde_json::{json, Value};
use std::collections::{BTreeSet, HashMap, HashSet};

/// Default cap on the group order for exhaustive enumeration.
pub const ENUMERATION_CAP: usize = 16;
/// Default cap on the group order for automorphism computations.
pub const AUT_CAP: usize = 256;
/// Default cap for enumerating normalized isomorphisms.
pub const ISO_CAP: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SchurRing {
    group: Group,
    color: Vec<u32>,
    classes: Vec<Vec<Elem>>,
}

/// `c[i][j][k]`: coefficient of any element of class `k` in `X_i X_j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StructureConstants {
    rank: usize,
    data: Vec<u32>,
}

impl StructureConstants {
    pub fn get(&self, i: usize, j: usize, k: usize) -> u32 {
        self.data[(i * self.rank + j) * self.rank + k]
    }
    pub fn rank(&self) -> usize {
        self.rank
    }
}

/// Sorts classes by minimum element and relabels colors accordingly.
fn normalize(group: &Group, color: &[u32]) -> (Vec<u32>, Vec<Vec<Elem>>) {
    let mut relabel: HashMap<u32, u32> = HashMap::new();
    let mut classes: Vec<Vec<Elem>> = Vec::new();
    let mut out = vec![0u32; group.order()];
    for g in group.elements() {
        let id = *relabel.entry(color[g]).or_insert_with(|| {
            classes.push(Vec::new());
            (classes.len() - 1) as u32
        });
        classes[id as usize].push(g);
        out[g] = id;
    }
    (out, classes)
}

/// Checks the S-ring axioms for a coloring of the group elements.
fn check_axioms(group: &Group, color: &[u32], classes: &[Vec<Elem>]) -> Result<()> {
    if classes[0] != [0] {
        return Err(Error::IdentityNotSingleton);
    }
    for (i, x) in classes.iter().enumerate() {
        let c = color[group.neg(x[0])];
        if x.iter().any(|&g| color[group.neg(g)] != c) || classes[c as usize].len() != x.len() {
            return Err(Error::NotInverseClosed(i));
        }
    }
    let n = group.order();
    let mut counts = vec![0u32; n];
    for (i, xi) in classes.iter().enumerate() {
        for (j, xj) in classes.iter().enumerate().skip(i) {
            counts.iter_mut().for_each(|c| *c = 0);
            for &a in xi {
                for &b in xj {
                    counts[group.add(a, b)] += 1;
                }
            }
            for xk in classes {
                let g = xk[0];
                if let Some(&h) = xk.iter().find(|&&h| counts[h] != counts[g]) {
                    return Err(Error::NotClosedUnderProduct { i, j, g, h });
                }
            }
        }
    }
    Ok(())
}

impl SchurRing {
    /// Validates a list of parts as an S-ring partition.
    pub fn validate_partition(group: &Group, parts: &[Vec<Elem>]) -> Result<SchurRing> {
        let n = group.order();
        let mut color = vec![u32::MAX; n];
        for (i, part) in parts.iter().enumerate() {
            if part.is_empty() {
                return Err(Error::NotAPartition(format!("part {i} is empty")));
            }
            for &g in part {
                if g >= n {
                    return Err(Error::NotAPartition(format!("element {g} is outside the group")));
                }
                if color[g] != u32::MAX {
                    return Err(Error::NotAPartition(format!("element {g} occurs twice")));
                }
                color[g] = i as u32;
            }
        }
        if let Some(g) = color.iter().position(|&c| c == u32::MAX) {
            return Err(Error::NotAPartition(format!("element {g} is not covered")));
        }
        SchurRing::from_coloring(group, &color)
    }

    /// Validates an element coloring as an S-ring partition.
    pub fn from_coloring(group: &Group, color: &[u32]) -> Result<SchurRing> {
        if color.len() != group.order() {
            return Err(Error::NotAPartition("coloring length differs from group order".into()));
        }
        let (color, classes) = normalize(group, color);
        check_axioms(group, &color, &classes)?;
        Ok(SchurRing { group: group.clone(), color, classes })
    }

    /// The group ring itself: all singletons.
    pub fn discrete(group: &Group) -> SchurRing {
        let color: Vec<u32> = (0..group.order() as u32).collect();
        SchurRing::from_coloring(group, &color).expect("singletons form an S-ring")
    }

    /// The rank-2 S-ring `{e}, G \ {e}`.
    pub fn rank_two(group: &Group) -> SchurRing {
        let color: Vec<u32> = group.elements().map(|g| u32::from(g != 0)).collect();
        SchurRing::from_coloring(group, &color).expect("trivial S-ring")
    }

    /// Orbits of a group of automorphisms of `G`.
    pub fn cyclotomic(group: &Group, automorphisms: &[Perm]) -> Result<SchurRing> {
        let pg = PermGroup::new(group.order(), automorphisms.to_vec());
        let mut color = vec![0u32; group.order()];
        for (i, orbit) in pg.orbits().iter().enumerate() {
            for &g in orbit {
                color[g] = i as u32;
            }
        }
        SchurRing::from_coloring(group, &color)
    }

    /// The partition of `G` into orbits of the stabilizer of `e` in `a`,
    /// which must contain the right regular representation.
    pub fn transitivity_module(group: &Group, a: &PermGroup) -> Result<SchurRing> {
        if a.degree() != group.order() || !regular_representation(group).is_subgroup_of(a) {
            return Err(Error::NotOvergroup);
        }
        let stab = a.pointwise_stabilizer(&[0]);
        let mut color = vec![0u32; group.order()];
        for (i, orbit) in stab.orbits().iter().enumerate() {
            for &g in orbit {
                color[g] = i as u32;
            }
        }
        SchurRing::from_coloring(group, &color)
    }

    pub fn group(&self) -> &Group {
        &self.group
    }
    pub fn rank(&self) -> usize {
        self.classes.len()
    }
    pub fn classes(&self) -> &[Vec<Elem>] {
        &self.classes
    }
    pub fn coloring(&self) -> &[u32] {
        &self.color
    }
    pub fn class_of(&self, g: Elem) -> usize {
        self.color[g] as usize
    }
    pub fn class_containing(&self, g: Elem) -> &[Elem] {
        &self.classes[self.class_of(g)]
    }

    pub fn structure_constants(&self) -> StructureConstants {
        let r = self.rank();
        let mut data = vec![0u32; r * r * r];
        let reps: Vec<Elem> = self.classes.iter().map(|x| x[0]).collect();
        for (i, xi) in self.classes.iter().enumerate() {
            for j in 0..r {
                for (k, &z) in reps.iter().enumerate() {
                    // number of (a, b) in Xi x Xj with a + b = z
                    let c = xi.iter().filter(|&&a| self.color[self.group.sub(z, a)] as usize == j).count();
                    data[(i * r + j) * r + k] = c as u32;
                }
            }
        }
        StructureConstants { rank: r, data }
    }

    pub fn is_a_set(&self, set: &[Elem]) -> bool {
        let members: HashSet<Elem> = set.iter().copied().collect();
        set.iter().all(|&g| self.class_containing(g).iter().all(|h| members.contains(h)))
    }

    /// Every A-subgroup, sorted by `(order, members)`.
    pub fn a_subgroups(&self) -> Vec<Subgroup> {
        let g = &self.group;
        let mut seen: BTreeSet<Subgroup> = BTreeSet::new();
        let start = g.trivial_subgroup();
        seen.insert(start.clone());
        let mut frontier = vec![start];
        while let Some(h) = frontier.pop() {
            for x in &self.classes {
                if h.contains(x[0]) {
                    continue;
                }
                let mut gens: Vec<Elem> = h.members().to_vec();
                gens.extend_from_slice(x);
                let k = g.generated(&gens);
                if seen.insert(k.clone()) {
                    frontier.push(k);
                }
            }
        }
        seen.into_iter().collect()
    }

    pub fn is_a_subgroup(&self, h: &Subgroup) -> bool {
        self.is_a_set(h.members())
    }

    pub fn is_primitive(&self) -> bool {
        self.a_subgroups().len() == 2
    }

    /// `X^(m)` for a basic set `X`, which must again be a basic set.
    pub fn power_map(&self, x: &[Elem], m: i64) -> Result<Vec<Elem>> {
        if gcd(m.unsigned_abs(), self.group.order() as u64) != 1 {
            return Err(Error::NotCoprime(m.unsigned_abs()));
        }
        let mut sorted = x.to_vec();
        sorted.sort_unstable();
        if sorted.is_empty() || self.class_containing(sorted[0]) != sorted.as_slice() {
            return Err(Error::NotABasicSet);
        }
        let mut img: Vec<Elem> = sorted.iter().map(|&g| self.group.scale(g, m)).collect();
        img.sort_unstable();
        if self.class_containing(img[0]) != img.as_slice() {
            return Err(Error::NotABasicSet);
        }
        Ok(img)
    }

    /// `X^[p,k]`; with `k = None` the union over all `k` in `1..p`.
    pub fn sw_layer(&self, x: &[Elem], p: u64, k: Option<u64>) -> Result<Vec<Elem>> {
        let g = &self.group;
        if !is_prime(p) || !(g.order() as u64).is_multiple_of(p) {
            return Err(Error::NotApplicable(format!("{p} is not a prime divisor of the order")));
        }
        if let Some(k) = k {
            if k == 0 || k >= p {
                return Err(Error::NotApplicable(format!("k = {k} outside 1..{p}")));
            }
        }
        if !self.is_a_set(x) {
            return Err(Error::NotAnASet);
        }
        let out = sw_layer_raw(g, x, p, k);
        if !self.is_a_set(&out) {
            return Err(Error::NotAnASet);
        }
        Ok(out)
    }

    /// The S-ring induced on a section `U/L` of A-subgroups.
    pub fn quotient(&self, section: &Section) -> Result<SchurRing> {
        if !self.is_a_subgroup(&section.upper) {
            return Err(Error::NotASection("upper subgroup is not an A-subgroup".into()));
        }
        if !self.is_a_subgroup(&section.lower) {
            return Err(Error::NotASection("lower subgroup is not an A-subgroup".into()));
        }
        let q = &section.quotient;
        let mut color = vec![u32::MAX; q.order()];
        for (i, x) in self.classes.iter().enumerate() {
            if !section.upper.contains(x[0]) {
                continue;
            }
            for &g in x {
                let img = section.project(g).expect("inside the upper subgroup");
                if color[img] == u32::MAX {
                    color[img] = i as u32;
                }
            }
        }
        SchurRing::from_coloring(q, &color)
    }

    pub fn section_ring(&self, upper: &Subgroup, lower: &Subgroup) -> Result<(SchurRing, Section)> {
        let s = self.group.section(upper, lower)?;
        Ok((self.quotient(&s)?, s))
    }

    pub fn quotient_by(&self, lower: &Subgroup) -> Result<(SchurRing, Section)> {
        self.section_ring(&self.group.whole(), lower)
    }

    pub fn restriction(&self, upper: &Subgroup) -> Result<(SchurRing, Section)> {
        self.section_ring(upper, &self.group.trivial_subgroup())
    }

    /// The colored Cayley digraph: arc `(g, h)` carries the class of `h - g`.
    pub fn cayley_graph(&self) -> ColoredDigraph {
        ColoredDigraph::cayley(&self.group, &self.color)
    }

    pub fn automorphisms(&self) -> Result<PermGroup> {
        self.automorphisms_capped(AUT_CAP)
    }

    pub fn automorphisms_capped(&self, cap: usize) -> Result<PermGroup> {
        cap_check("S-ring automorphism group", self.group.order(), cap)?;
        Ok(self.cayley_graph().automorphism_group())
    }

    pub fn is_schurian(&self) -> Result<bool> {
        let aut = self.automorphisms()?;
        Ok(SchurRing::transitivity_module(&self.group, &aut)? == *self)
    }

    /// True iff the classes are the orbits of some group of automorphisms
    /// of `G`; the witness group is the stabilizer of every class.
    pub fn is_cyclotomic(&self, aut_g: &PermGroup) -> bool {
        let k = aut_g.filter_subgroup(|a| self.group.elements().all(|g| self.color[a.apply(g)] == self.color[g]));
        SchurRing::cyclotomic(&self.group, k.generators()).is_ok_and(|c| c == *self)
    }

    /// Normalized isomorphisms onto `other`, one for each class bijection
    /// that some isomorphism induces. Every other normalized isomorphism is
    /// the composite of one of these with an element of `aut(A)_e`.
    pub fn isomorphisms_e(&self, other: &SchurRing, cap: usize) -> Result<Vec<Perm>> {
        if self.group != other.group {
            return Err(Error::GroupMismatch);
        }
        cap_check("normalized isomorphisms", self.group.order(), cap)?;
        if self.rank() != other.rank() || self.class_sizes() != other.class_sizes() {
            return Ok(Vec::new());
        }
        let target = other.cayley_graph();
        let aut_b = target.automorphism_group();
        let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
        let mut out = Vec::new();
        Pullback::new(&self.group).bound(Bound::Relabel { graph: &target, target: &self.color }).prune_by(&aut_b).run(
            &mut |psi| {
                let sigma: Vec<usize> = self.classes.iter().map(|x| other.class_of(psi[x[0]])).collect();
                if seen.insert(sigma) {
                    out.push(Perm::from_images(psi.to_vec()).expect("bijection"));
                }
                false
            },
        );
        Ok(out)
    }

    fn class_sizes(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.classes.iter().map(|x| x.len()).collect();
        v.sort_unstable();
        v
    }

    /// Image of the S-ring under a bijection fixing the identity.
    pub fn relabeled(&self, phi: &Perm) -> Result<SchurRing> {
        let mut color = vec![0u32; self.group.order()];
        for g in self.group.elements() {
            color[phi.apply(g)] = self.color[g];
        }
        SchurRing::from_coloring(&self.group, &color)
    }

    /// Canonical JSON: classes as lists of element coordinates.
    pub fn to_json(&self) -> Value {
        let classes: Vec<Value> = self
            .classes
            .iter()
            .map(|x| Value::Array(x.iter().map(|&g| json!(self.group.coords(g))).collect()))
            .collect();
        json!({ "group": { "factors": self.group.factors() }, "classes": classes })
    }

    pub fn from_json(v: &Value) -> Result<SchurRing> {
        let factors: Vec<u64> =
            serde_json::from_value(v["group"]["factors"].clone()).map_err(|e| Error::Parse(format!("group: {e}")))?;
        let group = Group::new(&factors)?;
        let classes: Vec<Vec<Vec<u64>>> =
            serde_json::from_value(v["classes"].clone()).map_err(|e| Error::Parse(format!("classes: {e}")))?;
        let parts = classes
            .iter()
            .map(|c| c.iter().map(|coords| group.try_elem(coords)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        SchurRing::validate_partition(&group, &parts)
    }
}

pub(crate) fn sw_layer_raw(g: &Group, x: &[Elem], p: u64, k: Option<u64>) -> Vec<Elem> {
    let members: HashSet<Elem> = x.iter().copied().collect();
    let gp = g.omega_p(p);
    let mut out: BTreeSet<Elem> = BTreeSet::new();
    for &a in x {
        let cnt = gp.iter().filter(|&&t| members.contains(&g.add(a, t))).count() as u64 % p;
        let keep = match k {
            Some(k) => cnt == k,
            None => cnt != 0,
        };
        if keep {
            out.insert(g.scale(a, p as i64));
        }
    }
    out.into_iter().collect()
}

/// `rad(X)`; the radical of the empty set is the whole group.
pub fn radical(group: &Group, x: &[Elem]) -> Subgroup {
    let members: HashSet<Elem> = x.iter().copied().collect();
    let rad: Vec<Elem> = group.elements().filter(|&g| x.iter().all(|&a| members.contains(&group.add(a, g)))).collect();
    group.subgroup_from_members(&rad).expect("stabilizers are subgroups")
}

/// The right regular representation.
pub fn regular_representation(group: &Group) -> PermGroup {
    let gens = group
        .unit_generators()
        .iter()
        .map(|&x| Perm::from_images(group.elements().map(|g| group.add(g, x)).collect()).expect("translation"))
        .collect();
    PermGroup::new(group.order(), gens)
}

/// Union of the images of `X` under all power automorphisms.
pub fn trace_set(group: &Group, x: &[Elem]) -> Vec<Elem> {
    let mut out: BTreeSet<Elem> = BTreeSet::new();
    for m in group.power_multipliers(None) {
        for &g in x {
            out.insert(group.scale(g, m as i64));
        }
    }
    out.into_iter().collect()
}

/// The complete S-ring of traces: orbits of all power automorphisms.
pub fn complete_traces(group: &Group) -> SchurRing {
    let p = group.power_automorphisms(None).expect("no prime restriction");
    SchurRing::cyclotomic(group, p.generators()).expect("orbits of automorphisms form an S-ring")
}

/// `A ∩ W(G)`: the finest common coarsening of `A` and the trace S-ring.
pub fn rational_closure(a: &SchurRing) -> SchurRing {
    let g = a.group();
    let w = complete_traces(g);
    let n = g.order();
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
    for part in a.classes().iter().chain(w.classes()) {
        for &x in &part[1..] {
            let (ra, rb) = (find(&mut parent, part[0]), find(&mut parent, x));
            if ra != rb {
                parent[ra.max(rb)] = ra.min(rb);
            }
        }
    }
    let color: Vec<u32> = (0..n).map(|x| find(&mut parent, x) as u32).collect();
    SchurRing::from_coloring(g, &color).expect("the intersection of S-rings is an S-ring")
}

/// Coarsest S-ring whose partition refines the given coloring, in which the
/// identity is put in its own class.
pub fn closure(group: &Group, color: &[u32]) -> SchurRing {
    let n = group.order();
    let (mut col, mut classes) = normalize(group, &separate_identity(color));
    loop {
        let r = classes.len();
        let mut sigs: Vec<(Vec<u32>, usize)> = Vec::with_capacity(n);
        let mut counts = vec![0u32; r * r];
        for x in 0..n {
            counts.iter_mut().for_each(|c| *c = 0);
            for y in 0..n {
                let z = group.sub(x, y);
                counts[col[y] as usize * r + col[z] as usize] += 1;
            }
            let mut sig = Vec::with_capacity(2 + r * r);
            sig.push(col[x]);
            sig.push(col[group.neg(x)]);
            sig.extend_from_slice(&counts);
            sigs.push((sig, x));
        }
        let mut ids: HashMap<&Vec<u32>, u32> = HashMap::new();
        let mut next = vec![0u32; n];
        for (sig, x) in &sigs {
            let len = ids.len() as u32;
            next[*x] = *ids.entry(sig).or_insert(len);
        }
        let (ncol, ncl) = normalize(group, &next);
        let done = ncl.len() == r;
        col = ncol;
        classes = ncl;
        if done {
            break;
        }
    }
    SchurRing { group: group.clone(), color: col, classes }
}

fn separate_identity(color: &[u32]) -> Vec<u32> {
    let fresh = color.iter().max().copied().unwrap_or(0) + 1;
    let mut c = color.to_vec();
    c[0] = fresh;
    c
}

/// All S-rings over `G`, sorted by rank and then by class list.
pub fn enumerate_srings(group: &Group, cap: usize) -> Result<Vec<SchurRing>> {
    cap_check("S-ring enumeration", group.order(), cap)?;
    let top = SchurRing::rank_two(group);
    let mut seen: HashSet<Vec<u32>> = HashSet::new();
    seen.insert(top.color.clone());
    let mut all = vec![top.clone()];
    let mut frontier = vec![top];
    while !frontier.is_empty() {
        let found: Vec<Vec<SchurRing>> = {
            use rayon::prelude::*;
            frontier.par_iter().map(refinements).collect()
        };
        let mut next = Vec::new();
        for ring in found.into_iter().flatten() {
            if seen.insert(ring.color.clone()) {
                next.push(ring.clone());
                all.push(ring);
            }
        }
        frontier = next;
    }
    all.sort_by(|a, b| (a.rank(), &a.classes).cmp(&(b.rank(), &b.classes)));
    Ok(all)
}

/// Closures obtained by splitting one class into two parts.
fn refinements(a: &SchurRing) -> Vec<SchurRing> {
    let mut out: Vec<SchurRing> = Vec::new();
    let mut local: HashSet<Vec<u32>> = HashSet::new();
    for x in &a.classes {
        if x.len() < 2 {
            continue;
        }
        let rest = &x[1..];
        let fresh = a.rank() as u32;
        // subsets containing the minimum element, excluding the whole class
        for mask in 0u64..(1u64 << rest.len()) - 1 {
            let mut color = a.color.clone();
            for (b, &g) in rest.iter().enumerate() {
                if mask >> b & 1 == 0 {
                    color[g] = fresh;
                }
            }
            let c = closure(&a.group, &color);
            if local.insert(c.color.clone()) {
                out.push(c);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: u64) -> Group {
        Group::new(&[n]).unwrap()
    }

    #[test]
    fn validate_examples() {
        let g = z(4);
        let a = SchurRing::validate_partition(&g, &[vec![0], vec![2], vec![1, 3]]).unwrap();
        assert_eq!(a.rank(), 3);
        assert_eq!(SchurRing::validate_partition(&g, &[vec![0], vec![1, 2], vec![3]]), Err(Error::NotInverseClosed(1)));
        assert_eq!(SchurRing::discrete(&g).rank(), 4);
        assert!(matches!(
            SchurRing::validate_partition(&g, &[vec![0, 2], vec![1, 3]]),
            Err(Error::IdentityNotSingleton)
        ));
        assert!(matches!(SchurRing::validate_partition(&g, &[vec![0], vec![1, 3]]), Err(Error::NotAPartition(_))));
        let z6 = z(6);
        assert!(matches!(
            SchurRing::validate_partition(&z6, &[vec![0], vec![1, 5], vec![2, 3, 4]]),
            Err(Error::NotClosedUnderProduct { .. })
        ));
    }

    #[test]
    fn structure_constant_row_sums() {
        let g = Group::new(&[2, 4]).unwrap();
        for a in enumerate_srings(&g, 16).unwrap() {
            let c = a.structure_constants();
            for i in 0..a.rank() {
                for j in 0..a.rank() {
                    let total: usize = (0..a.rank()).map(|k| c.get(i, j, k) as usize * a.classes[k].len()).sum();
                    assert_eq!(total, a.classes[i].len() * a.classes[j].len());
                }
            }
        }
    }

    #[test]
    fn a_subgroup_examples() {
        let g = z(4);
        let a = SchurRing::validate_partition(&g, &[vec![0], vec![2], vec![1, 3]]).unwrap();
        let subs: Vec<Vec<Elem>> = a.a_subgroups().iter().map(|h| h.members().to_vec()).collect();
        assert_eq!(subs, vec![vec![0], vec![0, 2], vec![0, 1, 2, 3]]);
        assert!(!a.is_primitive());
        assert_eq!(SchurRing::rank_two(&z(5)).a_subgroups().len(), 2);
        assert!(SchurRing::rank_two(&z(6)).is_primitive());
        assert!(!SchurRing::discrete(&z(6)).is_primitive());
        let c = Group::new(&[2, 6]).unwrap();
        assert_eq!(SchurRing::discrete(&c).a_subgroups(), c.all_subgroups(64).unwrap());
    }

    #[test]
    fn radical_examples() {
        let g = z(4);
        assert_eq!(radical(&g, &[1, 3]).members(), &[0, 2]);
        assert_eq!(radical(&z(5), &[1, 2]).members(), &[0]);
        assert_eq!(radical(&g, &[]).order(), 4);
        let h = g.generated(&[2]);
        assert_eq!(radical(&g, h.members()), h);
    }

    #[test]
    fn power_map_examples() {
        let g = z(5);
        let a = SchurRing::validate_partition(&g, &[vec![0], vec![1, 4], vec![2, 3]]).unwrap();
        assert_eq!(a.power_map(&[1, 4], 2).unwrap(), vec![2, 3]);
        assert_eq!(a.power_map(&[1, 4], 1).unwrap(), vec![1, 4]);
        assert_eq!(a.power_map(&[1, 4], 5), Err(Error::NotCoprime(5)));
        assert_eq!(a.power_map(&[1], 2), Err(Error::NotABasicSet));
        let g7 = z(7);
        let b = SchurRing::validate_partition(&g7, &[vec![0], vec![1, 2, 4], vec![3, 5, 6]]).unwrap();
        assert_eq!(b.power_map(&[1, 2, 4], 3).unwrap(), vec![3, 5, 6]);
    }

    #[test]
    fn sw_layer_examples() {
        let g = z(4);
        let zg = SchurRing::discrete(&g);
        assert_eq!(zg.sw_layer(&[1], 2, Some(1)).unwrap(), vec![2]);
        let a = SchurRing::validate_partition(&g, &[vec![0], vec![2], vec![1, 3]]).unwrap();
        assert_eq!(a.sw_layer(&[1, 3], 2, None).unwrap(), Vec::<Elem>::new());
        assert_eq!(a.sw_layer(&[0], 2, Some(1)).unwrap(), vec![0]);
        assert_eq!(a.sw_layer(&[1], 2, Some(1)), Err(Error::NotAnASet));
    }

    #[test]
    fn traces() {
        assert_eq!(complete_traces(&Group::new(&[2, 2, 3, 3]).unwrap()).rank(), 20);
        assert_eq!(complete_traces(&Group::new(&[3, 3]).unwrap()).rank(), 5);
        assert_eq!(trace_set(&z(7), &[1, 2, 4]), vec![1, 2, 3, 4, 5, 6]);
        let g = z(7);
        let b = SchurRing::validate_partition(&g, &[vec![0], vec![1, 2, 4], vec![3, 5, 6]]).unwrap();
        assert_eq!(rational_closure(&b).rank(), 2);
    }

    #[test]
    fn quotients_and_restrictions() {
        let z6 = z(6);
        let (q, _) = SchurRing::discrete(&z6).quotient_by(&z6.generated(&[3])).unwrap();
        assert_eq!(q, SchurRing::discrete(&z(3)));
        let g = z(4);
        let a = SchurRing::validate_partition(&g, &[vec![0], vec![2], vec![1, 3]]).unwrap();
        let (r, _) = a.restriction(&g.generated(&[2])).unwrap();
        assert_eq!(r, SchurRing::discrete(&z(2)));
        let (same, _) = a.quotient_by(&g.trivial_subgroup()).unwrap();
        assert_eq!(same, a);
        let r2 = SchurRing::rank_two(&z6);
        assert!(matches!(r2.quotient_by(&z6.generated(&[3])), Err(Error::NotASection(_))));
    }

    #[test]
    fn automorphism_examples() {
        let g = z(4);
        assert_eq!(SchurRing::discrete(&g).automorphisms().unwrap().order_u64(), Some(4));
        assert_eq!(SchurRing::rank_two(&z(5)).automorphisms().unwrap().order_u64(), Some(120));
        let a = SchurRing::validate_partition(&g, &[vec![0], vec![2], vec![1, 3]]).unwrap();
        assert_eq!(a.automorphisms().unwrap().order_u64(), Some(8));
    }

    #[test]
    fn schurity_and_isomorphisms() {
        for a in enumerate_srings(&z(5), 16).unwrap() {
            assert!(a.is_schurian().unwrap());
        }
        assert!(SchurRing::discrete(&Group::new(&[2, 4]).unwrap()).is_schurian().unwrap());
        let g = z(5);
        let a = SchurRing::validate_partition(&g, &[vec![0], vec![1, 4], vec![2, 3]]).unwrap();
        let isos = a.isomorphisms_e(&a, ISO_CAP).unwrap();
        let sigmas: BTreeSet<Vec<usize>> =
            isos.iter().map(|p| a.classes().iter().map(|x| a.class_of(p.apply(x[0]))).collect()).collect();
        // the doubling map swaps the two nontrivial classes
        assert!(sigmas.contains(&vec![0, 2, 1]));
        assert!(sigmas.contains(&vec![0, 1, 2]));
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_srings(&z(4), 16).unwrap().len(), 3);
        assert_eq!(enumerate_srings(&z(5), 16).unwrap().len(), 3);
        assert_eq!(enumerate_srings(&Group::new(&[2, 2]).unwrap(), 16).unwrap().len(), 5);
        assert!(matches!(enumerate_srings(&z(17), 16), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn json_round_trip() {
        let g = Group::new(&[2, 2]).unwrap();
        for a in enumerate_srings(&g, 16).unwrap() {
            assert_eq!(SchurRing::from_json(&a.to_json()).unwrap(), a);
        }
    }
}
