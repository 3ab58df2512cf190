//! Backtracking search for bijections `psi: G -> points` that pull colored
//! digraphs back to Cayley colorings of `G`.
//!
//! A bijection `psi` with `psi(0) = start` is accepted when
//! * for the free graph `F`, `F(psi g, psi h)` depends only on `h - g`;
//! * for the bound graph `B`, `B(psi g, psi h) = target(h - g)` exactly, or
//!   `sigma(target(h - g))` for one injective recoloring `sigma`;
//! * the optional leaf predicate holds.
//!
//! Equivalently, `psi rho(x) psi^-1` is an automorphism of `F` for every
//! translation `rho(x)`, so accepted maps describe regular subgroups.

use crate::graph::ColoredDigraph;
use crate::group::{Elem, Group};
use crate::perm::{Perm, PermGroup};
use std::collections::HashMap;

pub enum Bound<'a> {
    Exact { graph: &'a ColoredDigraph, target: &'a [u32] },
    Relabel { graph: &'a ColoredDigraph, target: &'a [u32] },
}

pub struct Pullback<'a> {
    group: &'a Group,
    free: Option<&'a ColoredDigraph>,
    bound: Option<Bound<'a>>,
    leaf: Option<&'a dyn Fn(&[usize]) -> bool>,
    prune: Option<&'a PermGroup>,
    start: usize,
    sequence: Vec<Elem>,
}

struct State {
    psi: Vec<Option<usize>>,
    used: Vec<bool>,
    kappa: Vec<Option<u32>>,
    sigma: HashMap<u32, u32>,
    sigma_inv: HashMap<u32, u32>,
}

impl<'a> Pullback<'a> {
    pub fn new(group: &'a Group) -> Self {
        // assignment order: breadth first along the unit generators
        let mut seen = vec![false; group.order()];
        let mut sequence = vec![0];
        seen[0] = true;
        let mut i = 0;
        while i < sequence.len() {
            let x = sequence[i];
            for &e in &group.unit_generators() {
                let y = group.add(x, e);
                if !seen[y] {
                    seen[y] = true;
                    sequence.push(y);
                }
            }
            i += 1;
        }
        Pullback { group, free: None, bound: None, leaf: None, prune: None, start: 0, sequence }
    }

    pub fn free(mut self, graph: &'a ColoredDigraph) -> Self {
        self.free = Some(graph);
        self
    }

    pub fn bound(mut self, bound: Bound<'a>) -> Self {
        self.bound = Some(bound);
        self
    }

    pub fn leaf_check(mut self, f: &'a dyn Fn(&[usize]) -> bool) -> Self {
        self.leaf = Some(f);
        self
    }

    /// Prunes children by orbits of point stabilizers of `group`, which must
    /// preserve every constraint of the search.
    pub fn prune_by(mut self, group: &'a PermGroup) -> Self {
        self.prune = Some(group);
        self
    }

    pub fn start(mut self, point: usize) -> Self {
        self.start = point;
        self
    }

    /// Calls `visit` with each accepted `psi` (as an image array indexed by
    /// group elements) until it returns `true`. Returns whether stopped.
    pub fn run(&self, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        let n = self.group.order();
        let mut st = State {
            psi: vec![None; n],
            used: vec![false; n],
            kappa: vec![None; n],
            sigma: HashMap::new(),
            sigma_inv: HashMap::new(),
        };
        let mut images = Vec::with_capacity(n);
        let stab = self.prune.cloned();
        self.dfs(0, &mut st, &mut images, stab, visit)
    }

    /// First accepted map, if any.
    pub fn find(&self) -> Option<Vec<usize>> {
        let mut out = None;
        self.run(&mut |psi| {
            out = Some(psi.to_vec());
            true
        });
        out
    }

    pub fn collect(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        self.run(&mut |psi| {
            out.push(psi.to_vec());
            false
        });
        out
    }

    fn dfs(
        &self,
        depth: usize,
        st: &mut State,
        images: &mut Vec<usize>,
        stab: Option<PermGroup>,
        visit: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        let n = self.group.order();
        if depth == n {
            let psi: Vec<usize> = st.psi.iter().map(|p| p.unwrap()).collect();
            if self.leaf.is_none_or(|f| f(&psi)) {
                return visit(&psi);
            }
            return false;
        }
        let g = self.sequence[depth];
        let candidates: Vec<usize> =
            if depth == 0 { vec![self.start] } else { (0..n).filter(|&w| !st.used[w]).collect() };
        let mut explored = vec![false; n];
        for w in candidates {
            if explored[w] {
                continue;
            }
            let mark = self.try_assign(st, g, w);
            let Some(log) = mark else { continue };
            let stab_here = stab.as_ref().filter(|s| !s.generators().is_empty());
            if let Some(s) = stab_here {
                for u in s.orbit_of(w) {
                    explored[u] = true;
                }
            }
            let child = stab_here.map(|s| s.pointwise_stabilizer(&[w]));
            images.push(w);
            let stop = self.dfs(depth + 1, st, images, child, visit);
            images.pop();
            self.undo(st, g, w, log);
            if stop {
                return true;
            }
        }
        false
    }

    fn try_assign(&self, st: &mut State, g: Elem, w: usize) -> Option<Undo> {
        let grp = self.group;
        let mut log = Undo::default();
        let ok = (|| {
            // pairs (g, h) and (h, g) for every assigned h, including h = g
            let assigned: Vec<(Elem, usize)> = std::iter::once((g, w))
                .chain(self.sequence.iter().filter_map(|&h| st.psi[h].map(|p| (h, p))))
                .collect();
            for &(h, ph) in &assigned {
                for (a, pa, b, pb) in [(g, w, h, ph), (h, ph, g, w)] {
                    let d = grp.sub(b, a);
                    if let Some(f) = self.free {
                        let c = f.color(pa, pb);
                        match st.kappa[d] {
                            Some(k) if k != c => return false,
                            Some(_) => {}
                            None => {
                                st.kappa[d] = Some(c);
                                log.kappa.push(d);
                            }
                        }
                    }
                    match &self.bound {
                        None => {}
                        Some(Bound::Exact { graph, target }) => {
                            if graph.color(pa, pb) != target[d] {
                                return false;
                            }
                        }
                        Some(Bound::Relabel { graph, target }) => {
                            let c = graph.color(pa, pb);
                            let t = target[d];
                            match (st.sigma.get(&t), st.sigma_inv.get(&c)) {
                                (Some(&x), _) if x != c => return false,
                                (_, Some(&y)) if y != t => return false,
                                (Some(_), Some(_)) => {}
                                _ => {
                                    st.sigma.insert(t, c);
                                    st.sigma_inv.insert(c, t);
                                    log.sigma.push((t, c));
                                }
                            }
                        }
                    }
                }
            }
            true
        })();
        if ok {
            st.psi[g] = Some(w);
            st.used[w] = true;
            Some(log)
        } else {
            self.rollback(st, log);
            None
        }
    }

    fn rollback(&self, st: &mut State, log: Undo) {
        for d in log.kappa {
            st.kappa[d] = None;
        }
        for (t, c) in log.sigma {
            st.sigma.remove(&t);
            st.sigma_inv.remove(&c);
        }
    }

    fn undo(&self, st: &mut State, g: Elem, w: usize, log: Undo) {
        st.psi[g] = None;
        st.used[w] = false;
        self.rollback(st, log);
    }
}

#[derive(Default)]
struct Undo {
    kappa: Vec<usize>,
    sigma: Vec<(u32, u32)>,
}

/// The permutations `psi rho(x) psi^-1` for the unit generators `x`.
pub fn transported_generators(group: &Group, psi: &[usize]) -> Vec<Perm> {
    let n = group.order();
    let mut inv = vec![0; n];
    for (g, &p) in psi.iter().enumerate() {
        inv[p] = g;
    }
    group
        .unit_generators()
        .iter()
        .map(|&x| Perm::from_images((0..n).map(|u| psi[group.add(inv[u], x)]).collect()).expect("bijection"))
        .collect()
}

/// The Cayley coloring `kappa(d) = graph(psi 0, psi d)` pulled back by `psi`.
pub fn pulled_coloring(graph: &ColoredDigraph, psi: &[usize]) -> Vec<u32> {
    (0..psi.len()).map(|d| graph.color(psi[0], psi[d])).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::symmetric_group;

    #[test]
    fn directed_cycle_has_only_translations() {
        let g = Group::new(&[4]).unwrap();
        let cyc = ColoredDigraph::new(4, |u, v| u32::from((u + 1) % 4 == v));
        let all = Pullback::new(&g).free(&cyc).collect();
        // the identity and inversion, which pulls back to the reversed cycle
        assert_eq!(all, vec![vec![0, 1, 2, 3], vec![0, 3, 2, 1]]);
    }

    #[test]
    fn complete_graph_counts() {
        // every bijection fixing 0 works: 3! maps
        let g = Group::new(&[2, 2]).unwrap();
        let k4 = ColoredDigraph::new(4, |u, v| u32::from(u != v));
        assert_eq!(Pullback::new(&g).free(&k4).collect().len(), 6);
        let s4 = symmetric_group(4);
        assert_eq!(Pullback::new(&g).free(&k4).prune_by(&s4).collect().len(), 1);
    }
}
