//! Finite abelian groups in invariant-factor form.
//!
//! Elements are indices `0..order` into the mixed-radix enumeration of
//! coordinate tuples, so index order coincides with lexicographic order on
//! coordinates and `0` is the identity.

use crate::arith::{factorize, gcd, lcm};
use crate::error::{cap_check, Error, Result};
use crate::perm::{Perm, PermGroup};
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

pub type Elem = usize;

/// Largest group order accepted by [`Group::new`].
pub const MAX_GROUP_ORDER: usize = 4096;
/// Default cap for subgroup and automorphism enumeration.
pub const DEFAULT_CAP: usize = 64;
const TABLE_LIMIT: usize = 256;

#[derive(Clone)]
pub struct Group {
    factors: Vec<u64>,
    strides: Vec<usize>,
    order: usize,
    exponent: u64,
    omega: u32,
    table: Option<Arc<Vec<u16>>>,
}

impl PartialEq for Group {
    fn eq(&self, other: &Self) -> bool {
        self.factors == other.factors
    }
}
impl Eq for Group {}
impl Hash for Group {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.factors.hash(state)
    }
}

impl fmt::Debug for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Group({})", self.name())
    }
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// JSON form of a group: `{"factors": [...]}`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct GroupJson {
    pub factors: Vec<u64>,
}

/// Canonical invariant factors `d1 | d2 | ... | dk` of the product of cyclic
/// groups of the given orders.
pub fn invariant_factors(raw: &[u64]) -> Vec<u64> {
    let mut powers: HashMap<u64, Vec<u64>> = HashMap::new();
    for &f in raw {
        for (p, e) in factorize(f) {
            powers.entry(p).or_default().push(p.pow(e));
        }
    }
    let k = powers.values().map(|v| v.len()).max().unwrap_or(0);
    let mut out = vec![1u64; k];
    for v in powers.values_mut() {
        v.sort_unstable_by(|a, b| b.cmp(a));
        for (t, &q) in v.iter().enumerate() {
            out[k - 1 - t] *= q;
        }
    }
    out
}

impl Group {
    pub fn new(raw_factors: &[u64]) -> Result<Group> {
        if raw_factors.contains(&0) {
            return Err(Error::InvalidGroup("factor 0".into()));
        }
        let factors = invariant_factors(raw_factors);
        if factors.is_empty() {
            return Err(Error::InvalidGroup("empty or trivial factor list".into()));
        }
        Group::build(factors)
    }

    /// The trivial group, only produced as a quotient or section.
    pub fn trivial() -> Group {
        Group::build(Vec::new()).expect("trivial group")
    }

    fn build(factors: Vec<u64>) -> Result<Group> {
        let order: u64 = factors.iter().product();
        if order as usize > MAX_GROUP_ORDER {
            return Err(Error::InvalidGroup(format!("order {order} exceeds {MAX_GROUP_ORDER}")));
        }
        let order = order as usize;
        let mut strides = vec![1usize; factors.len()];
        for i in (0..factors.len().saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * factors[i + 1] as usize;
        }
        let exponent = factors.iter().fold(1, |a, &b| lcm(a, b));
        let omega = factorize(order as u64).iter().map(|&(_, e)| e).sum();
        let mut g = Group { factors, strides, order, exponent, omega, table: None };
        if order <= TABLE_LIMIT {
            let mut t = vec![0u16; order * order];
            for a in 0..order {
                for b in 0..order {
                    t[a * order + b] = g.add_slow(a, b) as u16;
                }
            }
            g.table = Some(Arc::new(t));
        }
        Ok(g)
    }

    /// Parses `"C2xC2xC3xC3"`, `"Z8"` (`Z` and `C` are synonyms).
    pub fn parse(s: &str) -> Result<Group> {
        let mut raw = Vec::new();
        for part in s.split(['x', 'X', '*', '×']) {
            let part = part.trim();
            let digits = part
                .strip_prefix('C')
                .or_else(|| part.strip_prefix('Z'))
                .or_else(|| part.strip_prefix('c'))
                .or_else(|| part.strip_prefix('z'))
                .ok_or_else(|| Error::Parse(format!("bad cyclic factor `{part}`")))?;
            let n: u64 = digits.parse().map_err(|_| Error::Parse(format!("bad order `{digits}`")))?;
            raw.push(n);
        }
        Group::new(&raw)
    }

    pub fn from_json(j: &GroupJson) -> Result<Group> {
        Group::new(&j.factors)
    }

    pub fn to_json(&self) -> GroupJson {
        GroupJson { factors: self.factors.clone() }
    }

    pub fn name(&self) -> String {
        if self.factors.is_empty() {
            return "C1".into();
        }
        self.factors.iter().map(|d| format!("C{d}")).collect::<Vec<_>>().join("x")
    }

    pub fn factors(&self) -> &[u64] {
        &self.factors
    }
    pub fn order(&self) -> usize {
        self.order
    }
    pub fn exponent(&self) -> u64 {
        self.exponent
    }
    /// Number of prime divisors of the order counted with multiplicity.
    pub fn omega(&self) -> u32 {
        self.omega
    }
    pub fn rank(&self) -> usize {
        self.factors.len()
    }
    pub fn identity(&self) -> Elem {
        0
    }
    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.order
    }
    pub fn is_cyclic(&self) -> bool {
        self.factors.len() == 1
    }

    pub fn coords(&self, x: Elem) -> Vec<u64> {
        self.factors.iter().zip(&self.strides).map(|(&d, &s)| ((x / s) as u64) % d).collect()
    }

    /// Element with the given coordinates (reduced modulo each factor).
    pub fn elem(&self, coords: &[i64]) -> Elem {
        assert_eq!(coords.len(), self.factors.len(), "coordinate arity");
        coords
            .iter()
            .zip(self.factors.iter().zip(&self.strides))
            .map(|(&c, (&d, &s))| (c.rem_euclid(d as i64) as usize) * s)
            .sum()
    }

    pub fn try_elem(&self, coords: &[u64]) -> Result<Elem> {
        if coords.len() != self.factors.len() || coords.iter().zip(&self.factors).any(|(c, d)| c >= d) {
            return Err(Error::Parse(format!("{coords:?} is not an element of {}", self.name())));
        }
        Ok(coords.iter().zip(&self.strides).map(|(&c, &s)| c as usize * s).sum())
    }

    fn add_slow(&self, a: Elem, b: Elem) -> Elem {
        let mut out = 0;
        for (&d, &s) in self.factors.iter().zip(&self.strides) {
            let ca = (a / s) % d as usize;
            let cb = (b / s) % d as usize;
            out += ((ca + cb) % d as usize) * s;
        }
        out
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        match &self.table {
            Some(t) => t[a * self.order + b] as Elem,
            None => self.add_slow(a, b),
        }
    }

    pub fn neg(&self, a: Elem) -> Elem {
        let mut out = 0;
        for (&d, &s) in self.factors.iter().zip(&self.strides) {
            let ca = (a / s) % d as usize;
            out += ((d as usize - ca) % d as usize) * s;
        }
        out
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    /// `m * x` (the power `x^m` in multiplicative notation).
    pub fn scale(&self, x: Elem, m: i64) -> Elem {
        let c: Vec<i64> = self.coords(x).iter().map(|&c| (c as i64).wrapping_mul(m)).collect();
        let c: Vec<i64> = c.iter().zip(&self.factors).map(|(&v, &d)| v.rem_euclid(d as i64)).collect();
        self.elem(&c)
    }

    pub fn element_order(&self, x: Elem) -> u64 {
        self.coords(x).iter().zip(&self.factors).fold(1, |acc, (&c, &d)| lcm(acc, d / gcd(c, d)))
    }

    /// Standard generators: the coordinate unit vectors.
    pub fn unit_generators(&self) -> Vec<Elem> {
        self.strides.clone()
    }

    /// Translate a sorted set by `g`.
    pub fn translate(&self, set: &[Elem], g: Elem) -> Vec<Elem> {
        let mut v: Vec<Elem> = set.iter().map(|&x| self.add(x, g)).collect();
        v.sort_unstable();
        v
    }

    /// Sum set `X + Y`, sorted and deduplicated.
    pub fn sumset(&self, x: &[Elem], y: &[Elem]) -> Vec<Elem> {
        let mut mark = vec![false; self.order];
        for &a in x {
            for &b in y {
                mark[self.add(a, b)] = true;
            }
        }
        (0..self.order).filter(|&g| mark[g]).collect()
    }

    pub fn generated(&self, gens: &[Elem]) -> Subgroup {
        let mut mark = vec![false; self.order];
        mark[0] = true;
        let mut members = vec![0];
        let mut i = 0;
        while i < members.len() {
            let x = members[i];
            for &g in gens {
                let y = self.add(x, g);
                if !mark[y] {
                    mark[y] = true;
                    members.push(y);
                }
            }
            i += 1;
        }
        members.sort_unstable();
        Subgroup { members }
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup { members: self.elements().collect() }
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        Subgroup { members: vec![0] }
    }

    /// Checks closure and returns the subgroup with the given members.
    pub fn subgroup_from_members(&self, members: &[Elem]) -> Option<Subgroup> {
        let mut m: Vec<Elem> = members.to_vec();
        m.sort_unstable();
        m.dedup();
        if m.first() != Some(&0) {
            return None;
        }
        let set: BTreeSet<Elem> = m.iter().copied().collect();
        for &a in &m {
            for &b in &m {
                if !set.contains(&self.add(a, b)) {
                    return None;
                }
            }
        }
        Some(Subgroup { members: m })
    }

    /// Elements whose order is a power of `p`.
    pub fn sylow(&self, p: u64) -> Subgroup {
        let members = self.elements().filter(|&x| crate::arith::is_power_of(self.element_order(x), p)).collect();
        Subgroup { members }
    }

    /// Elements whose order is coprime to `p`.
    pub fn hall_complement(&self, p: u64) -> Subgroup {
        let members = self.elements().filter(|&x| !self.element_order(x).is_multiple_of(p)).collect();
        Subgroup { members }
    }

    /// `{ g : p g = 0 }`.
    pub fn omega_p(&self, p: u64) -> Vec<Elem> {
        self.elements().filter(|&x| self.scale(x, p as i64) == 0).collect()
    }

    pub fn primes(&self) -> Vec<u64> {
        factorize(self.order as u64).into_iter().map(|(p, _)| p).collect()
    }

    pub fn cyclic_subgroups(&self) -> Vec<Subgroup> {
        let set: BTreeSet<Subgroup> = self.elements().map(|x| self.generated(&[x])).collect();
        set.into_iter().collect()
    }

    /// Every subgroup, sorted by `(order, members)`.
    pub fn all_subgroups(&self, cap: usize) -> Result<Vec<Subgroup>> {
        cap_check("subgroup enumeration", self.order, cap)?;
        let cyclic = self.cyclic_subgroups();
        let mut seen: BTreeSet<Subgroup> = cyclic.iter().cloned().collect();
        let mut frontier: Vec<Subgroup> = cyclic.clone();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for h in &frontier {
                for c in &cyclic {
                    if c.members.iter().all(|x| h.contains(*x)) {
                        continue;
                    }
                    let gens = union_members(h, c);
                    let j = self.generated(&gens);
                    if seen.insert(j.clone()) {
                        next.push(j);
                    }
                }
            }
            frontier = next;
        }
        Ok(seen.into_iter().collect())
    }

    /// The section `upper / lower` with its quotient in canonical form.
    pub fn section(&self, upper: &Subgroup, lower: &Subgroup) -> Result<Section> {
        if !lower.is_subset_of(upper) {
            return Err(Error::NotNested);
        }
        // coset representatives: minimum element of each coset
        let mut coset_id = vec![usize::MAX; self.order];
        let mut reps = Vec::new();
        for &u in &upper.members {
            if coset_id[u] != usize::MAX {
                continue;
            }
            let id = reps.len();
            reps.push(u);
            for &l in &lower.members {
                coset_id[self.add(u, l)] = id;
            }
        }
        let m = reps.len();
        let add = |a: usize, b: usize| coset_id[self.add(reps[a], reps[b])];
        let (quotient, iso) = canonicalize_table(m, 0, &add)?;
        let mut projection = vec![None; self.order];
        for &u in &upper.members {
            projection[u] = Some(iso[coset_id[u]]);
        }
        let mut lift = vec![0; m];
        for (abstract_id, &rep) in reps.iter().enumerate() {
            lift[iso[abstract_id]] = rep;
        }
        Ok(Section { upper: upper.clone(), lower: lower.clone(), quotient, projection, lift })
    }

    /// The automorphism group of the group acting on its elements.
    pub fn automorphism_group(&self, cap: usize) -> Result<PermGroup> {
        cap_check("automorphism group", self.order, cap)?;
        let gens = self.unit_generators();
        let orders: Vec<u64> = self.factors.clone();
        let k = gens.len();
        let candidates: Vec<Vec<Elem>> =
            orders.iter().map(|&d| self.elements().filter(|&y| self.element_order(y) == d).collect()).collect();
        let mut found: Vec<Perm> = Vec::new();
        for level in (0..k).rev() {
            let mut orbit = orbit_under(self.order, gens[level], &found);
            for &c in &candidates[level] {
                if orbit[c] {
                    continue;
                }
                let mut prefix: Vec<Elem> = gens[..level].to_vec();
                prefix.push(c);
                if let Some(images) = self.complete_images(&prefix, &candidates) {
                    found.push(self.hom_from_images(&images));
                    orbit = orbit_under(self.order, gens[level], &found);
                }
            }
        }
        Ok(PermGroup::new(self.order, found))
    }

    fn complete_images(&self, prefix: &[Elem], candidates: &[Vec<Elem>]) -> Option<Vec<Elem>> {
        // the images so far must generate a subgroup of the full product order
        let expected: u64 = self.factors[..prefix.len()].iter().product();
        if self.generated(prefix).order() as u64 != expected {
            return None;
        }
        if prefix.len() == self.factors.len() {
            return Some(prefix.to_vec());
        }
        let span = self.generated(prefix);
        for &y in &candidates[prefix.len()] {
            if span.contains(y) {
                continue;
            }
            let mut p = prefix.to_vec();
            p.push(y);
            if let Some(r) = self.complete_images(&p, candidates) {
                return Some(r);
            }
        }
        None
    }

    fn hom_from_images(&self, images: &[Elem]) -> Perm {
        let img: Vec<Elem> = self
            .elements()
            .map(|x| self.coords(x).iter().zip(images).fold(0, |acc, (&c, &y)| self.add(acc, self.scale(y, c as i64))))
            .collect();
        Perm::from_images(img).expect("images of a basis define a bijection")
    }

    /// True iff `p` fixes the identity and preserves addition.
    pub fn is_automorphism(&self, p: &Perm) -> bool {
        p.degree() == self.order
            && p.apply(0) == 0
            && self.elements().all(|a| {
                self.unit_generators().iter().all(|&b| p.apply(self.add(a, b)) == self.add(p.apply(a), p.apply(b)))
            })
    }

    /// The power map `x -> m x` as a permutation.
    pub fn power_map(&self, m: i64) -> Perm {
        Perm::from_images_unchecked(self.elements().map(|x| self.scale(x, m)).collect())
    }

    /// Units `m` modulo the exponent, optionally restricted to
    /// `m = 1 (mod exp_{p'})`.
    pub fn power_multipliers(&self, restrict_prime: Option<u64>) -> Vec<u64> {
        let e = self.exponent;
        let mut pprime = e;
        if let Some(p) = restrict_prime {
            while pprime.is_multiple_of(p) {
                pprime /= p;
            }
        }
        (1..=e).filter(|&m| gcd(m, e) == 1).filter(|&m| restrict_prime.is_none() || m % pprime == 1 % pprime).collect()
    }

    /// `P(G)`, or `P_p(G)` when `restrict_prime` is given.
    pub fn power_automorphisms(&self, restrict_prime: Option<u64>) -> Result<PermGroup> {
        if let Some(p) = restrict_prime {
            if !(self.order as u64).is_multiple_of(p) {
                return Err(Error::InvalidGroup(format!("{p} does not divide the order")));
            }
        }
        let gens = self.power_multipliers(restrict_prime).into_iter().map(|m| self.power_map(m as i64)).collect();
        Ok(PermGroup::new(self.order, gens))
    }

    /// Direct product with `other`, in canonical form, with embeddings of
    /// both factors.
    /// A small generating set of `h`: elements of largest order first, each
    /// added when it lies outside the span so far.
    pub fn subgroup_generators(&self, h: &Subgroup) -> Vec<Elem> {
        let mut gens = Vec::new();
        let mut span = self.trivial_subgroup();
        let mut candidates: Vec<Elem> = h.members().to_vec();
        candidates.sort_by_key(|&x| (std::cmp::Reverse(self.element_order(x)), x));
        for x in candidates {
            if span.order() == h.order() {
                break;
            }
            if !span.contains(x) {
                gens.push(x);
                let mut all = span.members().to_vec();
                all.push(x);
                span = self.generated(&all);
            }
        }
        gens
    }

    /// All abelian groups of the given order, one per isomorphism type,
    /// sorted by invariant factors.
    pub fn abelian_groups(order: u64) -> Result<Vec<Group>> {
        let mut lists: Vec<Vec<u64>> = vec![vec![]];
        for (p, e) in factorize(order) {
            let mut next = Vec::new();
            for parts in partitions(e, e) {
                for l in &lists {
                    let mut l = l.clone();
                    l.extend(parts.iter().map(|&k| p.pow(k)));
                    next.push(l);
                }
            }
            lists = next;
        }
        let mut groups = lists.iter().map(|l| Group::new(l)).collect::<Result<Vec<_>>>()?;
        groups.sort_by(|a, b| a.factors.cmp(&b.factors));
        Ok(groups)
    }

    pub fn direct_product(&self, other: &Group) -> Result<DirectProduct> {
        let n1 = self.order;
        let n2 = other.order;
        let add = |a: usize, b: usize| {
            let (a1, a2) = (a / n2, a % n2);
            let (b1, b2) = (b / n2, b % n2);
            self.add(a1, b1) * n2 + other.add(a2, b2)
        };
        let (group, iso) = canonicalize_table(n1 * n2, 0, &add)?;
        let pair = |x: Elem, y: Elem| iso[x * n2 + y];
        let left: Vec<Elem> = (0..n1).map(|x| pair(x, 0)).collect();
        let right: Vec<Elem> = (0..n2).map(|y| pair(0, y)).collect();
        Ok(DirectProduct { group, left, right })
    }
}

fn orbit_under(n: usize, x: usize, gens: &[Perm]) -> Vec<bool> {
    let mut seen = vec![false; n];
    seen[x] = true;
    let mut stack = vec![x];
    while let Some(u) = stack.pop() {
        for g in gens {
            let v = g.apply(u);
            if !seen[v] {
                seen[v] = true;
                stack.push(v);
            }
        }
    }
    seen
}

/// Identifies an abstract abelian group given by its addition table with its
/// canonical form. Returns the canonical group and the map from abstract
/// indices to canonical elements.
pub fn canonicalize_table(n: usize, zero: usize, add: &dyn Fn(usize, usize) -> usize) -> Result<(Group, Vec<Elem>)> {
    let order_of = |x: usize| -> u64 {
        let mut y = x;
        let mut k = 1;
        while y != zero {
            y = add(y, x);
            k += 1;
        }
        k
    };
    let orders: Vec<u64> = (0..n).map(order_of).collect();
    let mut prime_powers = Vec::new();
    for (p, e) in factorize(n as u64) {
        // ranks[j] = number of cyclic factors of order >= p^j
        let count = |j: u32| orders.iter().filter(|&&o| p.pow(j) % o == 0).count() as u64;
        let mut prev = 1u64;
        let mut ranks = vec![];
        for j in 1..=e {
            let c = count(j);
            let mut r = 0;
            let mut q = c / prev;
            while q > 1 {
                q /= p;
                r += 1;
            }
            ranks.push(r);
            prev = c;
        }
        ranks.push(0);
        for j in 1..=e as usize {
            for _ in 0..(ranks[j - 1] - ranks[j]) {
                prime_powers.push(p.pow(j as u32));
            }
        }
    }
    if n == 1 {
        return Ok((Group::trivial(), vec![0]));
    }
    let group = Group::new(&prime_powers)?;
    let factors = group.factors().to_vec();
    let mut basis = Vec::new();
    if !find_basis(n, zero, add, &orders, &factors, &mut basis, &[zero]) {
        return Err(Error::InvalidGroup("no basis found".into()));
    }
    let mut iso = vec![usize::MAX; n];
    for g in group.elements() {
        let mut acc = zero;
        for (c, &b) in group.coords(g).iter().zip(&basis) {
            for _ in 0..*c {
                acc = add(acc, b);
            }
        }
        iso[acc] = g;
    }
    debug_assert!(iso.iter().all(|&x| x != usize::MAX));
    Ok((group, iso))
}

fn find_basis(
    n: usize,
    zero: usize,
    add: &dyn Fn(usize, usize) -> usize,
    orders: &[u64],
    factors: &[u64],
    basis: &mut Vec<usize>,
    span: &[usize],
) -> bool {
    let i = basis.len();
    if i == factors.len() {
        return span.len() == n;
    }
    let d = factors[i];
    let in_span: BTreeSet<usize> = span.iter().copied().collect();
    for x in 0..n {
        if orders[x] != d || in_span.contains(&x) {
            continue;
        }
        let mut next = BTreeSet::new();
        let mut mult = zero;
        for _ in 0..d {
            for &s in span {
                next.insert(add(s, mult));
            }
            mult = add(mult, x);
        }
        if next.len() as u64 != span.len() as u64 * d {
            continue;
        }
        basis.push(x);
        let nv: Vec<usize> = next.into_iter().collect();
        if find_basis(n, zero, add, orders, factors, basis, &nv) {
            return true;
        }
        basis.pop();
    }
    false
}

/// A subgroup as its sorted member list.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Subgroup {
    members: Vec<Elem>,
}

impl Ord for Subgroup {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.members.len(), &self.members).cmp(&(other.members.len(), &other.members))
    }
}
impl PartialOrd for Subgroup {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Subgroup {
    pub fn members(&self) -> &[Elem] {
        &self.members
    }
    pub fn order(&self) -> usize {
        self.members.len()
    }
    pub fn contains(&self, x: Elem) -> bool {
        self.members.binary_search(&x).is_ok()
    }
    pub fn is_trivial(&self) -> bool {
        self.members.len() == 1
    }
    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.members.iter().all(|&x| other.contains(x))
    }
    pub fn intersect(&self, other: &Subgroup) -> Subgroup {
        Subgroup { members: self.members.iter().copied().filter(|&x| other.contains(x)).collect() }
    }
    /// `H + K`.
    pub fn join(&self, other: &Subgroup, g: &Group) -> Subgroup {
        Subgroup { members: g.sumset(&self.members, &other.members) }
    }
    /// Non-identity members.
    pub fn nonidentity(&self) -> Vec<Elem> {
        self.members[1..].to_vec()
    }
}

/// A section `U/L` with its canonical quotient.
#[derive(Clone, Debug)]
pub struct Section {
    pub upper: Subgroup,
    pub lower: Subgroup,
    pub quotient: Group,
    /// `projection[g]` is the quotient element of `g + L` for `g` in `U`.
    pub projection: Vec<Option<Elem>>,
    /// Minimum element of each coset, indexed by quotient element.
    pub lift: Vec<Elem>,
}

impl Section {
    pub fn project(&self, g: Elem) -> Option<Elem> {
        self.projection[g]
    }

    pub fn project_set(&self, set: &[Elem]) -> Option<Vec<Elem>> {
        let mut out: Vec<Elem> = set.iter().map(|&g| self.projection[g]).collect::<Option<_>>()?;
        out.sort_unstable();
        out.dedup();
        Some(out)
    }
}

/// `H1 x H2` in canonical form with both coordinate embeddings.
#[derive(Clone, Debug)]
pub struct DirectProduct {
    pub group: Group,
    pub left: Vec<Elem>,
    pub right: Vec<Elem>,
}

impl DirectProduct {
    pub fn pair(&self, x: Elem, y: Elem) -> Elem {
        self.group.add(self.left[x], self.right[y])
    }
}

fn union_members(h: &Subgroup, c: &Subgroup) -> Vec<Elem> {
    let mut gens: Vec<Elem> = h.members.clone();
    gens.extend(c.members.iter().copied());
    gens
}

/// Partitions of `n` into parts at most `max`, parts non-increasing.
fn partitions(n: u32, max: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in (1..=n.min(max)).rev() {
        for mut rest in partitions(n - first, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}
