//! Cayley digraphs and the CI property.

use crate::error::{cap_check, Error, Result};
use crate::graph::ColoredDigraph;
use crate::group::{Elem, Group};
use crate::overgroups::{RegularCopy, RegularSearch};
use crate::perm::{Perm, PermGroup};
use crate::pullback::Pullback;
use crate::sring::SchurRing;
use rayon::prelude::*;
use serde::Serialize;
use std::collections::{HashMap, HashSet};
use std::sync::{Mutex, OnceLock};

/// Default cap on the group order for CI checks.
pub const CI_CAP: usize = 64;
/// Default cap for the brute-force oracle.
pub const ORACLE_CAP: usize = 10;
/// Default cap for exhaustive DCI scans.
pub const SCAN_CAP: usize = 10;
/// Default cap for the CI-S-ring test.
pub const CI_SRING_CAP: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CayleyDigraph {
    group: Group,
    connection: Vec<Elem>,
}

pub fn cayley(group: &Group, set: &[Elem]) -> Result<CayleyDigraph> {
    let mut connection = set.to_vec();
    connection.sort_unstable();
    connection.dedup();
    if connection.contains(&0) {
        return Err(Error::IdentityInConnectionSet);
    }
    if let Some(&bad) = connection.iter().find(|&&x| x >= group.order()) {
        return Err(Error::Parse(format!("{bad} is not an element of {group}")));
    }
    Ok(CayleyDigraph { group: group.clone(), connection })
}

impl CayleyDigraph {
    pub fn group(&self) -> &Group {
        &self.group
    }
    pub fn connection(&self) -> &[Elem] {
        &self.connection
    }

    /// Element coloring: 2 on the identity, 1 on the connection set.
    pub fn element_coloring(&self) -> Vec<u32> {
        let mut c = vec![0u32; self.group.order()];
        for &s in &self.connection {
            c[s] = 1;
        }
        c[0] = 2;
        c
    }

    pub fn has_arc(&self, g: Elem, h: Elem) -> bool {
        self.connection.binary_search(&self.group.sub(h, g)).is_ok()
    }

    pub fn out_degree(&self, g: Elem) -> usize {
        self.group.elements().filter(|&h| self.has_arc(g, h)).count()
    }

    pub fn graph(&self) -> ColoredDigraph {
        ColoredDigraph::cayley(&self.group, &self.element_coloring())
    }

    pub fn automorphisms(&self, cap: usize) -> Result<PermGroup> {
        cap_check("Cayley digraph automorphisms", self.group.order(), cap)?;
        Ok(self.graph().automorphism_group())
    }
}

pub fn digraph_automorphisms(g: &CayleyDigraph) -> Result<PermGroup> {
    g.automorphisms(CI_CAP)
}

/// An isomorphism between two Cayley digraphs on groups of equal order.
pub fn digraph_isomorphism(a: &CayleyDigraph, b: &CayleyDigraph) -> Result<Option<Perm>> {
    cap_check("digraph isomorphism", a.group.order().max(b.group.order()), CI_CAP)?;
    Ok(a.graph().isomorphism(&b.graph()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CiWitness {
    /// A connection set with an isomorphic Cayley digraph outside the
    /// automorphism orbit of the input.
    pub other_set: Vec<Elem>,
    /// Generators of a regular subgroup not conjugate to the right regular
    /// representation.
    pub regular_generators: Vec<Vec<usize>>,
    /// An isomorphism from `Cay(G, other_set)` to `Cay(G, set)`.
    pub isomorphism: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CiVerdict {
    pub ci: bool,
    pub classes: usize,
    pub witness: Option<CiWitness>,
}

/// Decides the CI property through conjugacy classes of regular subgroups of
/// `Aut(Cay(G, S))`.
pub fn is_ci_subset(group: &Group, set: &[Elem]) -> Result<CiVerdict> {
    let cay = cayley(group, set)?;
    let aut = cay.automorphisms(CI_CAP)?;
    let search = RegularSearch::new(group, &aut, CI_CAP)?;
    let identity = RegularCopy { psi: group.elements().collect() };
    let reps = search.class_representatives();
    let others: Vec<&RegularCopy> = reps.iter().filter(|r| !search.conjugate(&identity, r)).collect();
    let classes = others.len() + 1;
    let witness = others.first().map(|r| {
        let other_set: Vec<Elem> = group.elements().filter(|&d| d != 0 && cay.has_arc(r.psi[0], r.psi[d])).collect();
        // re-anchor so that the isomorphism fixes the identity
        let shift = r.psi[0];
        let iso: Vec<usize> = r.psi.iter().map(|&p| group.sub(p, shift)).collect();
        CiWitness {
            other_set,
            regular_generators: r.generators(group).iter().map(|p| p.images().to_vec()).collect(),
            isomorphism: iso,
        }
    });
    Ok(CiVerdict { ci: witness.is_none(), classes, witness })
}

/// Images of a set under every automorphism, as sorted lists.
fn automorphic_images(aut: &[Perm], set: &[Elem]) -> HashSet<Vec<Elem>> {
    aut.iter().map(|a| a.image_set(set)).collect()
}

/// Brute force: every `T` of the same size with `Cay(G, T) ≅ Cay(G, S)` must
/// be an automorphic image of `S`.
pub fn is_ci_subset_oracle(group: &Group, set: &[Elem]) -> Result<bool> {
    cap_check("CI oracle", group.order(), ORACLE_CAP)?;
    let oracle = OracleTable::new(group)?;
    oracle.is_ci(set)
}

/// Canonical certificates of every connection set of a group.
pub struct OracleTable {
    group: Group,
    aut: Vec<Perm>,
    forms: HashMap<u64, crate::graph::CanonicalForm>,
}

impl OracleTable {
    pub fn new(group: &Group) -> Result<Self> {
        cap_check("CI oracle", group.order(), ORACLE_CAP)?;
        let aut = group.automorphism_group(ORACLE_CAP)?.elements();
        let n = group.order();
        let forms = (0u64..1 << (n - 1))
            .into_par_iter()
            .map(|mask| {
                let set = mask_to_set(mask);
                (mask, cayley(group, &set).expect("valid").graph().canonical_form())
            })
            .collect();
        Ok(OracleTable { group: group.clone(), aut, forms })
    }

    pub fn is_ci(&self, set: &[Elem]) -> Result<bool> {
        let cay = cayley(&self.group, set)?;
        let mask = set_to_mask(cay.connection());
        let form = &self.forms[&mask];
        let orbit = automorphic_images(&self.aut, cay.connection());
        Ok(self.forms.iter().filter(|(_, f)| f.same_certificate(form)).all(|(&m, _)| orbit.contains(&mask_to_set(m))))
    }
}

fn mask_to_set(mask: u64) -> Vec<Elem> {
    (0..63).filter(|b| mask >> b & 1 == 1).map(|b| b + 1).collect()
}

fn set_to_mask(set: &[Elem]) -> u64 {
    set.iter().fold(0, |m, &x| m | 1 << (x - 1))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DciReport {
    pub dci: bool,
    /// Number of connection sets up to automorphisms.
    pub orbit_representatives: usize,
    pub non_ci_orbits: usize,
    /// Lexicographically least non-CI connection set.
    pub least_non_ci: Option<Vec<Elem>>,
    pub witness: Option<CiWitness>,
    /// Orbit representatives with their verdicts, in lexicographic order.
    pub verdicts: Vec<(Vec<Elem>, bool)>,
}

type CacheKey = (Vec<u64>, Vec<Elem>);

fn verdict_cache() -> &'static Mutex<HashMap<CacheKey, CiVerdict>> {
    static CACHE: OnceLock<Mutex<HashMap<CacheKey, CiVerdict>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn cached_verdict(group: &Group, rep: &[Elem]) -> Result<CiVerdict> {
    let key = (group.factors().to_vec(), rep.to_vec());
    if let Some(v) = verdict_cache().lock().expect("cache lock").get(&key) {
        return Ok(v.clone());
    }
    let v = is_ci_subset(group, rep)?;
    verdict_cache().lock().expect("cache lock").insert(key, v.clone());
    Ok(v)
}

/// Least sets of the orbits of `Aut(G)` on connection sets.
pub fn connection_set_orbits(group: &Group, aut: &[Perm]) -> Vec<Vec<Elem>> {
    let n = group.order();
    let total = 1u64 << (n - 1);
    let mut seen = vec![false; total as usize];
    let mut reps: Vec<Vec<Elem>> = Vec::new();
    for mask in 0..total {
        if seen[mask as usize] {
            continue;
        }
        let set = mask_to_set(mask);
        let mut least = set.clone();
        for a in aut {
            let img = a.image_set(&set);
            seen[set_to_mask(&img) as usize] = true;
            if img < least {
                least = img;
            }
        }
        reps.push(least);
    }
    reps.sort();
    reps
}

/// Exhaustive scan of all connection sets up to automorphisms.
pub fn is_dci_group(group: &Group, cap: usize, jobs: Option<usize>) -> Result<DciReport> {
    cap_check("DCI scan", group.order(), cap)?;
    let aut = group.automorphism_group(cap.max(crate::group::DEFAULT_CAP))?.elements();
    let reps = connection_set_orbits(group, &aut);
    let run = || -> Result<Vec<(Vec<Elem>, CiVerdict)>> {
        reps.par_iter().map(|r| Ok((r.clone(), cached_verdict(group, r)?))).collect()
    };
    let verdicts = match jobs {
        Some(j) => rayon::ThreadPoolBuilder::new()
            .num_threads(j.max(1))
            .build()
            .map_err(|e| Error::Io(e.to_string()))?
            .install(run)?,
        None => run()?,
    };
    let bad: Vec<&(Vec<Elem>, CiVerdict)> = verdicts.iter().filter(|(_, v)| !v.ci).collect();
    let least = bad.iter().min_by(|a, b| a.0.cmp(&b.0));
    Ok(DciReport {
        dci: bad.is_empty(),
        orbit_representatives: reps.len(),
        non_ci_orbits: bad.len(),
        least_non_ci: least.map(|(s, _)| s.clone()),
        witness: least.and_then(|(_, v)| v.witness.clone()),
        verdicts: verdicts.iter().map(|(r, v)| (r.clone(), v.ci)).collect(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CiSringVerdict {
    pub ci: bool,
    /// Coloring of an S-ring normally isomorphic to the input but not an
    /// automorphic image of it, with the isomorphism onto the input.
    pub witness: Option<(SchurRing, Perm)>,
}

/// `Iso_e(A) = aut(A)_e Aut(G)`: every S-ring obtained by pulling `A` back
/// along a normalized isomorphism is an automorphic image of `A` with the
/// same class correspondence.
pub fn is_ci_sring(a: &SchurRing, cap: usize) -> Result<CiSringVerdict> {
    let group = a.group();
    cap_check("CI-S-ring test", group.order(), cap)?;
    let aut_g = group.automorphism_group(crate::group::DEFAULT_CAP.max(group.order()))?.elements();
    let images: HashSet<Vec<u32>> =
        aut_g.iter().map(|alpha| group.elements().map(|d| a.coloring()[alpha.apply(d)]).collect()).collect();
    let graph = a.cayley_graph();
    let aut_a = graph.automorphism_group();
    let mut witness = None;
    Pullback::new(group).free(&graph).prune_by(&aut_a).run(&mut |psi| {
        let pulled: Vec<u32> = psi.iter().map(|&p| a.coloring()[p]).collect();
        if images.contains(&pulled) {
            return false;
        }
        let b = SchurRing::from_coloring(group, &pulled).expect("pullback of an S-ring");
        witness = Some((b, Perm::from_images(psi.to_vec()).expect("bijection")));
        true
    });
    Ok(CiSringVerdict { ci: witness.is_none(), witness })
}
