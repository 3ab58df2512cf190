//! Arc-colored complete digraphs: automorphism groups, canonical forms and
//! isomorphisms by individualization and refinement.

use crate::group::Group;
use crate::perm::{orbits_of, Perm, PermGroup};
use std::cmp::Ordering;
use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};

/// Every ordered pair `(u, v)` carries a color; `(v, v)` is the vertex color.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColoredDigraph {
    n: usize,
    colors: Vec<u32>,
}

type Cells = Vec<Vec<usize>>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalForm {
    pub invariants: Vec<u64>,
    pub encoding: Vec<u32>,
    /// `labeling[i]` is the vertex placed at position `i`.
    pub labeling: Vec<usize>,
}

impl CanonicalForm {
    fn certificate_cmp(&self, other: &CanonicalForm) -> Ordering {
        (&self.invariants, &self.encoding).cmp(&(&other.invariants, &other.encoding))
    }

    pub fn same_certificate(&self, other: &CanonicalForm) -> bool {
        self.certificate_cmp(other) == Ordering::Equal
    }
}

impl ColoredDigraph {
    pub fn new(n: usize, color: impl Fn(usize, usize) -> u32) -> Self {
        let mut colors = Vec::with_capacity(n * n);
        for u in 0..n {
            for v in 0..n {
                colors.push(color(u, v));
            }
        }
        ColoredDigraph { n, colors }
    }

    /// Cayley coloring: the arc `(g, h)` gets `elem_color[h - g]`.
    pub fn cayley(group: &Group, elem_color: &[u32]) -> Self {
        Self::new(group.order(), |u, v| elem_color[group.sub(v, u)])
    }

    /// Orbital coloring of a permutation group: arcs in the same orbit on
    /// ordered pairs share a color.
    pub fn orbitals(group: &PermGroup) -> Self {
        let n = group.degree();
        let pair_gens: Vec<Perm> = group
            .generators()
            .iter()
            .map(|g| Perm::from_images_unchecked((0..n * n).map(|x| g.apply(x / n) * n + g.apply(x % n)).collect()))
            .collect();
        let mut colors = vec![0u32; n * n];
        for (c, orbit) in orbits_of(n * n, &pair_gens).iter().enumerate() {
            for &x in orbit {
                colors[x] = c as u32;
            }
        }
        ColoredDigraph { n, colors }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn color(&self, u: usize, v: usize) -> u32 {
        self.colors[u * self.n + v]
    }

    pub fn is_automorphism(&self, p: &Perm) -> bool {
        self.is_isomorphism_to(self, p)
    }

    /// True iff `p` maps this graph onto `other` color for color.
    pub fn is_isomorphism_to(&self, other: &ColoredDigraph, p: &Perm) -> bool {
        if p.degree() != self.n || other.n != self.n {
            return false;
        }
        let img = p.images();
        (0..self.n).all(|u| (0..self.n).all(|v| self.color(u, v) == other.color(img[u], img[v])))
    }

    fn initial_cells(&self) -> Cells {
        let mut by_color: Vec<(u32, usize)> = (0..self.n).map(|v| (self.color(v, v), v)).collect();
        by_color.sort_unstable();
        let mut cells: Cells = Vec::new();
        let mut last = None;
        for (c, v) in by_color {
            if last != Some(c) {
                cells.push(Vec::new());
                last = Some(c);
            }
            cells.last_mut().unwrap().push(v);
        }
        cells
    }

    /// Equitable refinement. Returns the refined cells and an invariant that
    /// depends only on the isomorphism type of the input.
    fn refine(&self, mut cells: Cells) -> (Cells, u64) {
        let n = self.n;
        let mut hasher = DefaultHasher::new();
        let mut cell_of = vec![0usize; n];
        loop {
            for (i, cell) in cells.iter().enumerate() {
                for &v in cell {
                    cell_of[v] = i;
                }
            }
            let mut next: Cells = Vec::with_capacity(cells.len());
            for cell in &cells {
                if cell.len() == 1 {
                    next.push(cell.clone());
                    continue;
                }
                let mut keyed: Vec<(Vec<u64>, usize)> = cell
                    .iter()
                    .map(|&v| {
                        let mut sig: Vec<u64> = (0..n)
                            .map(|w| {
                                ((self.color(v, w) as u64) << 42)
                                    | ((self.color(w, v) as u64) << 21)
                                    | cell_of[w] as u64
                            })
                            .collect();
                        sig.sort_unstable();
                        (sig, v)
                    })
                    .collect();
                keyed.sort_unstable();
                let mut start = 0;
                while start < keyed.len() {
                    let mut end = start + 1;
                    while end < keyed.len() && keyed[end].0 == keyed[start].0 {
                        end += 1;
                    }
                    keyed[start].0.hash(&mut hasher);
                    (end - start).hash(&mut hasher);
                    next.push(keyed[start..end].iter().map(|(_, v)| *v).collect());
                    start = end;
                }
            }
            next.len().hash(&mut hasher);
            let done = next.len() == cells.len();
            cells = next;
            if done {
                break;
            }
        }
        for cell in cells.iter_mut() {
            cell.sort_unstable();
        }
        (cells, hasher.finish())
    }

    fn target_cell(cells: &Cells) -> Option<usize> {
        cells.iter().enumerate().filter(|(_, c)| c.len() > 1).min_by_key(|(i, c)| (c.len(), *i)).map(|(i, _)| i)
    }

    fn individualize(cells: &Cells, target: usize, v: usize) -> Cells {
        let mut out = Vec::with_capacity(cells.len() + 1);
        for (i, cell) in cells.iter().enumerate() {
            if i == target {
                out.push(vec![v]);
                out.push(cell.iter().copied().filter(|&w| w != v).collect());
            } else {
                out.push(cell.clone());
            }
        }
        out
    }

    fn leaf_labeling(cells: &Cells) -> Vec<usize> {
        cells.iter().map(|c| c[0]).collect()
    }

    fn encode(&self, lab: &[usize]) -> Vec<u32> {
        let mut enc = Vec::with_capacity(self.n * self.n);
        for &u in lab {
            for &v in lab {
                enc.push(self.color(u, v));
            }
        }
        enc
    }

    /// The full automorphism group.
    pub fn automorphism_group(&self) -> PermGroup {
        let n = self.n;
        if n == 0 {
            return PermGroup::trivial(0);
        }
        // leftmost path
        let mut path_cells: Vec<Cells> = Vec::new();
        let mut path_inv: Vec<u64> = Vec::new();
        let mut choices: Vec<usize> = Vec::new();
        let (mut cells, mut inv) = self.refine(self.initial_cells());
        loop {
            path_cells.push(cells.clone());
            path_inv.push(inv);
            match Self::target_cell(&cells) {
                None => break,
                Some(t) => {
                    let v = cells[t][0];
                    choices.push(v);
                    let (c, i) = self.refine(Self::individualize(&cells, t, v));
                    cells = c;
                    inv = i;
                }
            }
        }
        let first_leaf = Self::leaf_labeling(&cells);
        let mut gens: Vec<Perm> = Vec::new();
        for d in (0..choices.len()).rev() {
            let node = &path_cells[d];
            let t = Self::target_cell(node).unwrap();
            let mut in_orbit = orbit_mask(n, choices[d], &gens);
            for &w in &node[t] {
                if in_orbit[w] {
                    continue;
                }
                let child = Self::individualize(node, t, w);
                if let Some(g) = self.search_leaf(child, d + 1, &path_inv, &first_leaf) {
                    gens.push(g);
                    in_orbit = orbit_mask(n, choices[d], &gens);
                }
            }
        }
        PermGroup::with_base(n, gens, &choices)
    }

    /// Looks below the given node for a leaf that is the image of
    /// `first_leaf` under an automorphism.
    fn search_leaf(&self, cells: Cells, depth: usize, path_inv: &[u64], first_leaf: &[usize]) -> Option<Perm> {
        let (cells, inv) = self.refine(cells);
        if depth >= path_inv.len() || inv != path_inv[depth] {
            return None;
        }
        match Self::target_cell(&cells) {
            None => {
                let lab = Self::leaf_labeling(&cells);
                let mut img = vec![0; self.n];
                for (i, &u) in first_leaf.iter().enumerate() {
                    img[u] = lab[i];
                }
                let p = Perm::from_images_unchecked(img);
                self.is_automorphism(&p).then_some(p)
            }
            Some(t) => {
                for &w in &cells[t] {
                    let child = Self::individualize(&cells, t, w);
                    if let Some(p) = self.search_leaf(child, depth + 1, path_inv, first_leaf) {
                        return Some(p);
                    }
                }
                None
            }
        }
    }

    /// Canonical form; two graphs are isomorphic iff their certificates
    /// coincide.
    pub fn canonical_form(&self) -> CanonicalForm {
        let aut = self.automorphism_group();
        self.canonical_form_with(&aut)
    }

    /// Canonical form using a known full automorphism group for pruning.
    pub fn canonical_form_with(&self, aut: &PermGroup) -> CanonicalForm {
        let mut best: Option<CanonicalForm> = None;
        let (cells, inv) = self.refine(self.initial_cells());
        let mut prefix = Vec::new();
        self.canon_dfs(cells, vec![inv], &mut prefix, aut, &mut best);
        best.expect("search visits at least one leaf")
    }

    fn canon_dfs(
        &self,
        cells: Cells,
        invs: Vec<u64>,
        prefix: &mut Vec<usize>,
        aut: &PermGroup,
        best: &mut Option<CanonicalForm>,
    ) {
        if let Some(b) = best.as_ref() {
            let d = invs.len();
            let cmp = invs[..d.min(b.invariants.len())].cmp(&b.invariants[..d.min(b.invariants.len())]);
            if cmp == Ordering::Greater {
                return;
            }
        }
        match Self::target_cell(&cells) {
            None => {
                let labeling = Self::leaf_labeling(&cells);
                let cand = CanonicalForm { invariants: invs, encoding: self.encode(&labeling), labeling };
                let better = match best.as_ref() {
                    None => true,
                    Some(b) => cand.certificate_cmp(b) == Ordering::Less,
                };
                if better {
                    *best = Some(cand);
                }
            }
            Some(t) => {
                let stab = aut.pointwise_stabilizer(prefix);
                let mut explored = vec![false; self.n];
                for &w in &cells[t] {
                    if explored[w] {
                        continue;
                    }
                    for u in stab.orbit_of(w) {
                        explored[u] = true;
                    }
                    let (child, inv) = self.refine(Self::individualize(&cells, t, w));
                    let mut child_invs = invs.clone();
                    child_invs.push(inv);
                    prefix.push(w);
                    self.canon_dfs(child, child_invs, prefix, aut, best);
                    prefix.pop();
                }
            }
        }
    }

    /// An isomorphism onto `other`, if one exists.
    pub fn isomorphism(&self, other: &ColoredDigraph) -> Option<Perm> {
        if self.n != other.n {
            return None;
        }
        let a = self.canonical_form();
        let b = other.canonical_form();
        if !a.same_certificate(&b) {
            return None;
        }
        let mut img = vec![0; self.n];
        for (i, &u) in a.labeling.iter().enumerate() {
            img[u] = b.labeling[i];
        }
        let p = Perm::from_images_unchecked(img);
        debug_assert!(self.is_isomorphism_to(other, &p));
        Some(p)
    }
}

pub(crate) fn orbit_mask(n: usize, x: usize, gens: &[Perm]) -> Vec<bool> {
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
