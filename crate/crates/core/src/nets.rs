//! Partial congruence partitions, translation nets and their collinearity
//! graphs.

use crate::arith::exact_sqrt;
use crate::error::{cap_check, Error, Result};
use crate::graph::ColoredDigraph;
use crate::group::{Elem, Group, Subgroup};
use crate::overgroups::RegularSearch;
use crate::perm::{Perm, PermGroup};
use crate::products::{star_check, DecompositionKind};
use crate::sring::SchurRing;
use serde::Serialize;
use serde_json::{json, Value};
use std::collections::{BTreeSet, HashSet};

/// Default cap on the group order for net computations.
pub const NET_CAP: usize = 144;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Pcp {
    group: Group,
    subgroups: Vec<Subgroup>,
}

impl Pcp {
    pub fn new(group: &Group, subgroups: Vec<Subgroup>) -> Result<Pcp> {
        let n = side(group)?;
        if subgroups.is_empty() {
            return Err(Error::AxiomViolation("a partial congruence partition needs at least one subgroup".into()));
        }
        for (i, h) in subgroups.iter().enumerate() {
            if h.order() != n {
                return Err(Error::AxiomViolation(format!("subgroup {i} has order {} instead of {n}", h.order())));
            }
            if group.subgroup_from_members(h.members()).is_none() {
                return Err(Error::AxiomViolation(format!("member list {i} is not a subgroup")));
            }
            for (j, k) in subgroups.iter().enumerate().skip(i + 1) {
                if !h.intersect(k).is_trivial() {
                    return Err(Error::AxiomViolation(format!("subgroups {i} and {j} intersect non-trivially")));
                }
            }
        }
        Ok(Pcp { group: group.clone(), subgroups })
    }

    pub fn group(&self) -> &Group {
        &self.group
    }
    pub fn subgroups(&self) -> &[Subgroup] {
        &self.subgroups
    }
    pub fn n(&self) -> usize {
        self.subgroups[0].order()
    }
    pub fn k(&self) -> usize {
        self.subgroups.len()
    }

    /// `H_1^# ∪ ... ∪ H_k^#`.
    pub fn connection_set(&self) -> Vec<Elem> {
        let set: BTreeSet<Elem> = self.subgroups.iter().flat_map(|h| h.nonidentity()).collect();
        set.into_iter().collect()
    }

    /// Subgroups listed by generating element coordinates.
    pub fn to_json(&self) -> Value {
        let subs: Vec<Value> = self
            .subgroups
            .iter()
            .map(|h| {
                let gens = self.group.subgroup_generators(h);
                Value::Array(gens.iter().map(|&g| json!(self.group.coords(g))).collect())
            })
            .collect();
        json!({ "group": { "factors": self.group.factors() }, "subgroups": subs })
    }

    pub fn from_json(v: &Value) -> Result<Pcp> {
        let factors: Vec<u64> =
            serde_json::from_value(v["group"]["factors"].clone()).map_err(|e| Error::Parse(format!("group: {e}")))?;
        let group = Group::new(&factors)?;
        let subs: Vec<Vec<Vec<u64>>> =
            serde_json::from_value(v["subgroups"].clone()).map_err(|e| Error::Parse(format!("subgroups: {e}")))?;
        let subgroups = subs
            .iter()
            .map(|gens| {
                let elems = gens.iter().map(|c| group.try_elem(c)).collect::<Result<Vec<_>>>()?;
                Ok(group.generated(&elems))
            })
            .collect::<Result<Vec<_>>>()?;
        Pcp::new(&group, subgroups)
    }
}

fn side(group: &Group) -> Result<usize> {
    exact_sqrt(group.order() as u64).map(|n| n as usize).ok_or(Error::NotSquareOrder(group.order()))
}

/// All partial congruence partitions with `k` subgroups, optionally one
/// per orbit of `Aut(G)`.
pub fn find_pcps(group: &Group, k: usize, up_to_automorphism: bool) -> Result<Vec<Pcp>> {
    let n = side(group)?;
    cap_check("PCP search", group.order(), NET_CAP)?;
    let candidates: Vec<Subgroup> = group.all_subgroups(NET_CAP)?.into_iter().filter(|h| h.order() == n).collect();
    let mut found: Vec<Vec<usize>> = Vec::new();
    let mut chosen = Vec::new();
    extend_pcp(&candidates, k, 0, &mut chosen, &mut found);
    let mut pcps: Vec<Pcp> = found
        .into_iter()
        .map(|idx| Pcp { group: group.clone(), subgroups: idx.iter().map(|&i| candidates[i].clone()).collect() })
        .collect();
    if up_to_automorphism && !pcps.is_empty() {
        let aut = group.automorphism_group(NET_CAP)?.elements();
        let mut seen: HashSet<Vec<Vec<Elem>>> = HashSet::new();
        pcps.retain(|p| {
            let canon = aut
                .iter()
                .map(|a| {
                    let mut subs: Vec<Vec<Elem>> = p.subgroups.iter().map(|h| a.image_set(h.members())).collect();
                    subs.sort();
                    subs
                })
                .min()
                .expect("identity automorphism");
            seen.insert(canon)
        });
    }
    Ok(pcps)
}

fn extend_pcp(cands: &[Subgroup], k: usize, from: usize, chosen: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if chosen.len() == k {
        out.push(chosen.clone());
        return;
    }
    for i in from..cands.len() {
        if chosen.iter().all(|&j| cands[j].intersect(&cands[i]).is_trivial()) {
            chosen.push(i);
            extend_pcp(cands, k, i + 1, chosen, out);
            chosen.pop();
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TranslationNet {
    pcp: Pcp,
    lines: Vec<Vec<Elem>>,
    /// `class_of_line[i]` is the parallel class of line `i`.
    class_of_line: Vec<usize>,
}

pub fn build_net(pcp: &Pcp) -> Result<TranslationNet> {
    let g = &pcp.group;
    let n = pcp.n();
    let mut lines = Vec::new();
    let mut class_of_line = Vec::new();
    for (i, h) in pcp.subgroups.iter().enumerate() {
        let mut seen: BTreeSet<Vec<Elem>> = BTreeSet::new();
        for x in g.elements() {
            let coset = g.translate(h.members(), x);
            if seen.insert(coset.clone()) {
                lines.push(coset);
                class_of_line.push(i);
            }
        }
    }
    let net = TranslationNet { pcp: pcp.clone(), lines, class_of_line };
    net.verify_axioms()?;
    if net.lines.len() != n * pcp.k() {
        return Err(Error::AxiomViolation(format!("{} lines instead of {}", net.lines.len(), n * pcp.k())));
    }
    Ok(net)
}

impl TranslationNet {
    pub fn pcp(&self) -> &Pcp {
        &self.pcp
    }
    pub fn lines(&self) -> &[Vec<Elem>] {
        &self.lines
    }
    pub fn parallel_class(&self, line: usize) -> usize {
        self.class_of_line[line]
    }
    pub fn points(&self) -> usize {
        self.pcp.group.order()
    }

    fn verify_axioms(&self) -> Result<()> {
        let n = self.pcp.n();
        for (i, l) in self.lines.iter().enumerate() {
            if l.len() != n {
                return Err(Error::AxiomViolation(format!("line {i} has {} points", l.len())));
            }
        }
        for c in 0..self.pcp.k() {
            let mut cover = vec![0usize; self.points()];
            for (l, _) in self.lines.iter().zip(&self.class_of_line).filter(|(_, &k)| k == c) {
                for &x in l {
                    cover[x] += 1;
                }
            }
            if cover.iter().any(|&m| m != 1) {
                return Err(Error::AxiomViolation(format!("parallel class {c} does not partition the points")));
            }
        }
        for (i, a) in self.lines.iter().enumerate() {
            for (j, b) in self.lines.iter().enumerate().skip(i + 1) {
                if self.class_of_line[i] == self.class_of_line[j] {
                    continue;
                }
                let meet = a.iter().filter(|x| b.binary_search(x).is_ok()).count();
                if meet != 1 {
                    return Err(Error::AxiomViolation(format!("lines {i} and {j} meet in {meet} points")));
                }
            }
        }
        Ok(())
    }

    /// Adjacency matrix of the collinearity graph, checked against
    /// `Cay(G, H_1^# ∪ ... ∪ H_k^#)`.
    pub fn collinearity_graph(&self) -> Result<SimpleGraph> {
        let v = self.points();
        let mut adj = vec![false; v * v];
        for l in &self.lines {
            for &a in l {
                for &b in l {
                    if a != b {
                        adj[a * v + b] = true;
                    }
                }
            }
        }
        let g = &self.pcp.group;
        let d: HashSet<Elem> = self.pcp.connection_set().into_iter().collect();
        for a in 0..v {
            for b in 0..v {
                if adj[a * v + b] != d.contains(&g.sub(b, a)) {
                    return Err(Error::AxiomViolation(format!(
                        "collinearity differs from the Cayley graph at ({a}, {b})"
                    )));
                }
            }
        }
        Ok(SimpleGraph { v, adj })
    }

    pub fn is_weak_automorphism(&self, p: &Perm) -> bool {
        let set: HashSet<&Vec<Elem>> = self.lines.iter().collect();
        p.degree() == self.points() && self.lines.iter().all(|l| set.contains(&p.image_set(l)))
    }

    fn line_index(&self, line: &[Elem]) -> Option<usize> {
        self.lines.iter().position(|l| l.as_slice() == line)
    }

    /// Permutations of the points that preserve the line set.
    pub fn weak_automorphism_group(&self) -> PermGroup {
        let v = self.points();
        let total = v + self.lines.len();
        let incident: Vec<HashSet<Elem>> = self.lines.iter().map(|l| l.iter().copied().collect()).collect();
        let graph = ColoredDigraph::new(total, |a, b| match (a < v, b < v) {
            _ if a == b => u32::from(a >= v),
            (true, false) => 2 + u32::from(incident[b - v].contains(&a)),
            (false, true) => 4 + u32::from(incident[a - v].contains(&b)),
            _ => 6,
        });
        let aut = graph.automorphism_group();
        let gens: Vec<Perm> = aut
            .generators()
            .iter()
            .map(|g| Perm::from_images(g.images()[..v].to_vec()).expect("points are preserved"))
            .collect();
        PermGroup::new(v, gens)
    }

    /// Whether every element of `h` preserves each parallel class. `h` must
    /// be an abelian regular group of weak automorphisms and `k < n`.
    pub fn strong_automorphism_check(&self, h: &PermGroup) -> Result<bool> {
        if h.generators().iter().any(|g| !self.is_weak_automorphism(g)) {
            return Err(Error::NotWeakAutomorphism);
        }
        if !h.is_abelian() || !h.is_regular() {
            return Err(Error::NotApplicable("the group must be abelian and regular on the points".into()));
        }
        if self.pcp.k() >= self.pcp.n() {
            return Err(Error::NotApplicable("the net must have fewer parallel classes than points per line".into()));
        }
        Ok(h.generators().iter().all(|g| {
            self.lines.iter().enumerate().all(|(i, l)| {
                let j = self.line_index(&g.image_set(l)).expect("weak automorphism");
                self.class_of_line[i] == self.class_of_line[j]
            })
        }))
    }

    /// SRG parameters compared with `(n^2, k(n-1), n-2+(k-1)(k-2), k(k-1))`.
    pub fn srg_check(&self) -> Result<SrgReport> {
        let graph = self.collinearity_graph()?;
        let mut r = srg_parameters(&graph)?;
        let (n, k) = (self.pcp.n() as i64, self.pcp.k() as i64);
        let expected = (n * n, k * (n - 1), n - 2 + (k - 1) * (k - 2), k * (k - 1));
        r.matches_formula = Some((r.v, r.degree, r.lambda, r.mu) == expected);
        Ok(r)
    }

    pub fn line_clique_check(&self) -> Result<CliqueReport> {
        let (n, k) = (self.pcp.n(), self.pcp.k());
        if n <= (k - 1) * (k - 1) {
            return Err(Error::NotApplicable(format!("n = {n} does not exceed (k-1)^2 = {}", (k - 1) * (k - 1))));
        }
        let graph = self.collinearity_graph()?;
        let cliques = graph.maximal_cliques();
        let lines: HashSet<&Vec<Elem>> = self.lines.iter().collect();
        let max_clique = cliques.iter().map(|c| c.len()).max().unwrap_or(0);
        let big: Vec<&Vec<usize>> = cliques.iter().filter(|c| c.len() >= n).collect();
        let exceptional: Vec<Vec<usize>> =
            big.iter().filter(|c| c.len() > n || !lines.contains(*c)).map(|c| (*c).clone()).collect();
        Ok(CliqueReport {
            n_cliques: big.iter().filter(|c| c.len() == n).count(),
            max_clique,
            all_lines: exceptional.is_empty(),
            exceptional,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CliqueReport {
    pub n_cliques: usize,
    pub max_clique: usize,
    pub all_lines: bool,
    pub exceptional: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SrgReport {
    pub v: i64,
    pub degree: i64,
    pub lambda: i64,
    pub mu: i64,
    /// `A^2 = (λ-μ)A + (k-μ)I + μJ` checked entrywise.
    pub identity_holds: bool,
    /// Non-principal eigenvalues when they are integers.
    pub eigenvalues: Option<(i64, i64)>,
    pub matches_formula: Option<bool>,
}

/// An undirected simple graph as a dense adjacency matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleGraph {
    v: usize,
    adj: Vec<bool>,
}

impl SimpleGraph {
    pub fn new(v: usize, adj: impl Fn(usize, usize) -> bool) -> Self {
        let mut m = vec![false; v * v];
        for a in 0..v {
            for b in 0..v {
                m[a * v + b] = a != b && adj(a, b);
            }
        }
        SimpleGraph { v, adj: m }
    }

    pub fn order(&self) -> usize {
        self.v
    }

    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        self.adj[a * self.v + b]
    }

    fn degree(&self, a: usize) -> usize {
        (0..self.v).filter(|&b| self.adjacent(a, b)).count()
    }

    /// Maximal cliques by Bron–Kerbosch with pivoting, each sorted, in
    /// lexicographic order.
    pub fn maximal_cliques(&self) -> Vec<Vec<usize>> {
        let mut order: Vec<usize> = (0..self.v).collect();
        order.sort_by_key(|&a| (std::cmp::Reverse(self.degree(a)), a));
        let mut out = Vec::new();
        self.bron_kerbosch(&mut Vec::new(), order, Vec::new(), &mut out);
        for c in out.iter_mut() {
            c.sort_unstable();
        }
        out.sort();
        out
    }

    fn bron_kerbosch(&self, r: &mut Vec<usize>, p: Vec<usize>, x: Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if p.is_empty() {
            if x.is_empty() {
                out.push(r.clone());
            }
            return;
        }
        let pivot = p
            .iter()
            .chain(&x)
            .copied()
            .max_by_key(|&u| (p.iter().filter(|&&w| self.adjacent(u, w)).count(), std::cmp::Reverse(u)))
            .expect("non-empty");
        let mut p = p;
        let mut x = x;
        let branch: Vec<usize> = p.iter().copied().filter(|&w| !self.adjacent(pivot, w)).collect();
        for w in branch {
            let np: Vec<usize> = p.iter().copied().filter(|&u| self.adjacent(w, u)).collect();
            let nx: Vec<usize> = x.iter().copied().filter(|&u| self.adjacent(w, u)).collect();
            r.push(w);
            self.bron_kerbosch(r, np, nx, out);
            r.pop();
            p.retain(|&u| u != w);
            x.push(w);
        }
    }
}

/// Measured parameters of a strongly regular graph.
pub fn srg_parameters(graph: &SimpleGraph) -> Result<SrgReport> {
    let v = graph.order();
    let degree = graph.degree(0);
    if degree + 1 == v {
        return Err(Error::NotApplicable("complete graph: μ is undefined".into()));
    }
    let mut lambda = None;
    let mut mu = None;
    for a in 0..v {
        if graph.degree(a) != degree {
            return Err(Error::NotStronglyRegular(0, a));
        }
        for b in 0..v {
            if a == b {
                continue;
            }
            let common = (0..v).filter(|&c| graph.adjacent(a, c) && graph.adjacent(b, c)).count();
            let slot = if graph.adjacent(a, b) { &mut lambda } else { &mut mu };
            match *slot {
                None => *slot = Some(common),
                Some(x) if x != common => return Err(Error::NotStronglyRegular(a, b)),
                _ => {}
            }
        }
    }
    let (k, l, m) = (degree as i64, lambda.unwrap_or(0) as i64, mu.unwrap_or(0) as i64);
    let mut identity_holds = true;
    for a in 0..v {
        for b in 0..v {
            let sq = (0..v).filter(|&c| graph.adjacent(a, c) && graph.adjacent(c, b)).count() as i64;
            let rhs = (l - m) * i64::from(graph.adjacent(a, b)) + (k - m) * i64::from(a == b) + m;
            if sq != rhs {
                identity_holds = false;
            }
        }
    }
    // roots of x^2 - (λ-μ)x - (k-μ)
    let disc = (l - m) * (l - m) + 4 * (k - m);
    let eigenvalues = exact_sqrt(disc as u64).and_then(|s| {
        let s = s as i64;
        let (r, t) = ((l - m) + s, (l - m) - s);
        (r % 2 == 0 && t % 2 == 0).then_some((r / 2, t / 2))
    });
    Ok(SrgReport { v: v as i64, degree: k, lambda: l, mu: m, identity_holds, eigenvalues, matches_formula: None })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PcpPipelineReport {
    pub subgroups: Vec<Vec<Elem>>,
    /// Each `H_i` is an A-subgroup.
    pub all_a_subgroups: bool,
    /// For `k > 1`, `A = A_{H_1} ⊗ A_{H_2}`.
    pub tensor: Option<bool>,
}

/// Looks for an A-set `H_1^# ∪ ... ∪ H_k^#` over a partial congruence
/// partition with parts of order `sqrt|G|`, largest `k` first, and checks
/// that every `H_i` is an A-subgroup.
pub fn lemma_pcp_pipeline(a: &SchurRing) -> Result<PcpPipelineReport> {
    let g = a.group();
    let n = side(g)?;
    for k in (1..=n + 1).rev() {
        for pcp in find_pcps(g, k, false)? {
            if !a.is_a_set(&pcp.connection_set()) {
                continue;
            }
            let all = pcp.subgroups.iter().all(|h| a.is_a_subgroup(h));
            let tensor = (k > 1 && all).then(|| {
                star_check(a, &pcp.subgroups[0], &pcp.subgroups[1]).is_ok_and(|r| r.kind == DecompositionKind::Tensor)
            });
            return Ok(PcpPipelineReport {
                subgroups: pcp.subgroups.iter().map(|h| h.members().to_vec()).collect(),
                all_a_subgroups: all,
                tensor,
            });
        }
    }
    Err(Error::NoPcpSetFound)
}

/// The group generated by all regular subgroups isomorphic to `G` of the
/// weak automorphism group of the net.
pub fn regular_closure(net: &TranslationNet) -> Result<PermGroup> {
    let g = net.pcp.group();
    let weak = net.weak_automorphism_group();
    let search = RegularSearch::new(g, &weak, NET_CAP)?;
    let mut gens: Vec<Perm> = Vec::new();
    for rep in search.class_representatives() {
        gens.extend(rep.generators(g));
    }
    // normal closure in the weak automorphism group
    let mut group = PermGroup::new(g.order(), gens.clone());
    loop {
        let extra: Vec<Perm> = gens
            .iter()
            .flat_map(|x| weak.generators().iter().map(move |w| x.conjugate_by(w)))
            .filter(|c| !group.contains(c))
            .collect();
        if extra.is_empty() {
            return Ok(group);
        }
        gens.extend(extra);
        group = PermGroup::new(g.order(), gens.clone());
    }
}


#[cfg(test)]
mod pipeline_tests {
    use super::*;

    #[test]
    fn closure_pipeline_on_the_six_three_net() {
        let g = Group::new(&[6, 6]).unwrap();
        let subs =
            vec![g.generated(&[g.elem(&[1, 0])]), g.generated(&[g.elem(&[0, 1])]), g.generated(&[g.elem(&[1, 1])])];
        let net = build_net(&Pcp::new(&g, subs).unwrap()).unwrap();
        let d = regular_closure(&net).unwrap();
        let a = crate::sring::SchurRing::transitivity_module(&g, &d).unwrap();
        let report = lemma_pcp_pipeline(&a).unwrap();
        eprintln!("|D| = {}, rank {}, {:?}", d.order(), a.rank(), report);
        assert!(report.all_a_subgroups);
    }
}
