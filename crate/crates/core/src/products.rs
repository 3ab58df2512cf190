//! Tensor, star, wreath and generalized wreath products, p-S-rings,
//! Cayley equivalence and the factorization condition for generalized
//! wreath products.

use crate::arith::is_power_of;
use crate::error::{Error, Result};
use crate::group::{DirectProduct, Elem, Group, Section, Subgroup, DEFAULT_CAP};
use crate::perm::{orbits_of, Perm};
use crate::sring::SchurRing;
use serde::Serialize;
use std::collections::{BTreeSet, HashSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DecompositionKind {
    Tensor,
    Star,
    Wreath,
    GeneralizedWreath,
    None,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub condition: String,
    pub basic_set: Vec<Elem>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DecompositionReport {
    pub kind: DecompositionKind,
    pub first: Vec<Elem>,
    pub second: Vec<Elem>,
    pub nontrivial: bool,
    pub failure: Option<Failure>,
}

impl DecompositionReport {
    pub fn holds(&self) -> bool {
        self.kind != DecompositionKind::None
    }
}

/// `A1 ⊗ A2` over the canonical form of `H1 x H2`.
pub fn tensor(a1: &SchurRing, a2: &SchurRing) -> Result<(SchurRing, DirectProduct)> {
    let dp = a1.group().direct_product(a2.group())?;
    let r2 = a2.rank() as u32;
    let mut color = vec![0u32; dp.group.order()];
    for x in a1.group().elements() {
        for y in a2.group().elements() {
            color[dp.pair(x, y)] = a1.coloring()[x] * r2 + a2.coloring()[y];
        }
    }
    Ok((SchurRing::from_coloring(&dp.group, &color)?, dp))
}

/// `Au ≀ Aq` over the canonical form of `H1 x H2`, where `H1` is the
/// subgroup and `H2` plays the quotient.
pub fn wreath(au: &SchurRing, aq: &SchurRing) -> Result<(SchurRing, DirectProduct)> {
    let dp = au.group().direct_product(aq.group())?;
    let ru = au.rank() as u32;
    let mut color = vec![0u32; dp.group.order()];
    for x in au.group().elements() {
        for y in aq.group().elements() {
            color[dp.pair(x, y)] = if y == 0 { au.coloring()[x] } else { ru + aq.coloring()[y] };
        }
    }
    Ok((SchurRing::from_coloring(&dp.group, &color)?, dp))
}

fn is_coset_union(g: &Group, x: &[Elem], h: &Subgroup) -> bool {
    let members: HashSet<Elem> = x.iter().copied().collect();
    x.iter().all(|&a| h.members().iter().all(|&l| members.contains(&g.add(a, l))))
}

fn require_a_subgroup(a: &SchurRing, h: &Subgroup) -> Result<()> {
    if a.is_a_subgroup(h) {
        Ok(())
    } else {
        Err(Error::NotASubgroup)
    }
}

/// Star product recognition `A = A_V ⋆ A_W`.
pub fn star_check(a: &SchurRing, v: &Subgroup, w: &Subgroup) -> Result<DecompositionReport> {
    require_a_subgroup(a, v)?;
    require_a_subgroup(a, w)?;
    let g = a.group();
    let vw = v.intersect(w);
    let v_classes: Vec<&Vec<Elem>> = a.classes().iter().filter(|x| v.contains(x[0])).collect();
    let w_classes: Vec<&Vec<Elem>> = a.classes().iter().filter(|x| w.contains(x[0])).collect();
    let mut failure = None;
    // condition (1) holds in abelian groups
    for x in a.classes() {
        let in_v = v.contains(x[0]);
        let in_w = w.contains(x[0]);
        if in_w && !in_v && !is_coset_union(g, x, &vw) {
            failure = Some(Failure { condition: "star-2".into(), basic_set: x.clone() });
            break;
        }
        if !in_v && !in_w {
            let found = v_classes.iter().any(|y| w_classes.iter().any(|z| g.sumset(y, z) == *x));
            if !found {
                failure = Some(Failure { condition: "star-3".into(), basic_set: x.clone() });
                break;
            }
        }
    }
    let kind = match (&failure, vw.is_trivial()) {
        (Some(_), _) => DecompositionKind::None,
        (None, true) => DecompositionKind::Tensor,
        (None, false) => DecompositionKind::Star,
    };
    Ok(DecompositionReport {
        kind,
        first: v.members().to_vec(),
        second: w.members().to_vec(),
        nontrivial: !v.is_trivial() && v.order() != g.order(),
        failure,
    })
}

/// `U/L`-wreath product recognition.
pub fn generalized_wreath_check(a: &SchurRing, u: &Subgroup, l: &Subgroup) -> Result<DecompositionReport> {
    if !l.is_subset_of(u) {
        return Err(Error::NotNested);
    }
    require_a_subgroup(a, u)?;
    require_a_subgroup(a, l)?;
    let g = a.group();
    // condition (1) holds in abelian groups
    let failure = a
        .classes()
        .iter()
        .find(|x| !u.contains(x[0]) && !is_coset_union(g, x, l))
        .map(|x| Failure { condition: "gw-2".into(), basic_set: x.clone() });
    let kind = match (&failure, u == l) {
        (Some(_), _) => DecompositionKind::None,
        (None, true) => DecompositionKind::Wreath,
        (None, false) => DecompositionKind::GeneralizedWreath,
    };
    Ok(DecompositionReport {
        kind,
        first: u.members().to_vec(),
        second: l.members().to_vec(),
        nontrivial: !l.is_trivial() && u.order() != g.order(),
        failure,
    })
}

/// Some non-trivial `U/L`-wreath decomposition, if any.
pub fn find_nontrivial_wreath(a: &SchurRing) -> Option<(Subgroup, Subgroup)> {
    let subs = a.a_subgroups();
    for l in subs.iter().filter(|l| !l.is_trivial()) {
        for u in subs.iter().filter(|u| u.order() < a.group().order() && l.is_subset_of(u)) {
            if generalized_wreath_check(a, u, l).is_ok_and(|r| r.holds()) {
                return Some((u.clone(), l.clone()));
            }
        }
    }
    None
}

pub fn is_decomposable(a: &SchurRing) -> bool {
    find_nontrivial_wreath(a).is_some()
}

pub fn is_p_sring(a: &SchurRing, p: u64) -> bool {
    is_power_of(a.group().order() as u64, p) && a.classes().iter().all(|x| is_power_of(x.len() as u64, p))
}

fn check_automorphisms(group: &Group, k: &[Perm]) -> Result<()> {
    if k.iter().all(|p| group.is_automorphism(p)) {
        Ok(())
    } else {
        Err(Error::NotAutomorphisms)
    }
}

/// Equal orbit partitions on the group.
pub fn cayley_equivalent(group: &Group, k1: &[Perm], k2: &[Perm]) -> Result<bool> {
    check_automorphisms(group, k1)?;
    check_automorphisms(group, k2)?;
    Ok(orbits_of(group.order(), k1) == orbits_of(group.order(), k2))
}

/// `aut_G(A) = Aut(G) ∩ aut(A)`, as its element list.
pub fn aut_g(a: &SchurRing) -> Result<Vec<Perm>> {
    let g = a.group();
    if g.order() == 1 {
        return Ok(vec![Perm::identity(1)]);
    }
    let aut = g.automorphism_group(DEFAULT_CAP.max(g.order()))?;
    Ok(aut
        .elements()
        .into_iter()
        .filter(|p| g.elements().all(|x| a.coloring()[p.apply(x)] == a.coloring()[x]))
        .collect())
}

/// Whether the orbits of `aut_G(A)` are the classes of `A`.
pub fn is_cyclotomic(a: &SchurRing) -> Result<bool> {
    let k = aut_g(a)?;
    Ok(SchurRing::cyclotomic(a.group(), &k).is_ok_and(|c| c == *a))
}

/// A cyclotomic S-ring is Cayley minimal when no proper subgroup of
/// `aut_G(A)` has the same orbits.
pub fn is_cayley_minimal(a: &SchurRing) -> Result<bool> {
    if !is_cyclotomic(a)? {
        return Err(Error::NotApplicable("the S-ring is not cyclotomic".into()));
    }
    let k = aut_g(a)?;
    let full = k.len();
    let n = a.group().order();
    let target = orbits_of(n, &k);
    // subgroups generated by joins of cyclic subgroups
    let cyclic: BTreeSet<Vec<Perm>> = k.iter().map(|x| generated_elements(n, std::slice::from_ref(x))).collect();
    let mut seen: BTreeSet<Vec<Perm>> = cyclic.clone();
    let mut frontier: Vec<Vec<Perm>> = cyclic.iter().cloned().collect();
    while let Some(h) = frontier.pop() {
        if h.len() < full && orbits_of(n, &h) == target {
            return Ok(false);
        }
        for c in &cyclic {
            if c.iter().all(|x| h.binary_search(x).is_ok()) {
                continue;
            }
            let mut gens = h.clone();
            gens.push(c[c.len() - 1].clone());
            gens.extend(c.iter().cloned());
            let j = generated_elements(n, &gens);
            if j.len() < full && seen.insert(j.clone()) {
                frontier.push(j);
            }
        }
    }
    Ok(true)
}

fn generated_elements(n: usize, gens: &[Perm]) -> Vec<Perm> {
    let mut seen: BTreeSet<Perm> = BTreeSet::new();
    seen.insert(Perm::identity(n));
    let mut stack = vec![Perm::identity(n)];
    while let Some(x) = stack.pop() {
        for g in gens {
            let y = x.then(g);
            if seen.insert(y.clone()) {
                stack.push(y);
            }
        }
    }
    seen.into_iter().collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KrReport {
    pub holds: bool,
    /// `A_S` is the group ring of `S`, the shortcut case.
    pub section_discrete: bool,
    pub aut_s: usize,
    pub from_u: usize,
    pub from_quotient: usize,
    pub product: usize,
}

/// `aut_S(A_S) = aut_U(A_U)^S aut_{G/L}(A_{G/L})^S` for a `U/L`-wreath
/// product `A`.
pub fn kr_condition(a: &SchurRing, u: &Subgroup, l: &Subgroup) -> Result<KrReport> {
    let report = generalized_wreath_check(a, u, l).map_err(|e| match e {
        Error::NotASubgroup | Error::NotNested => Error::NotGeneralizedWreath,
        other => other,
    })?;
    if !report.holds() {
        return Err(Error::NotGeneralizedWreath);
    }
    let g = a.group();
    let (a_s, sec_s) = a.section_ring(u, l)?;
    let s_order = sec_s.quotient.order();
    if s_order == 1 {
        return Ok(KrReport { holds: true, section_discrete: true, aut_s: 1, from_u: 1, from_quotient: 1, product: 1 });
    }
    let section_discrete = a_s.rank() == s_order;
    let aut_s: HashSet<Perm> = aut_g(&a_s)?.into_iter().collect();

    // aut_U(A_U) acting on S
    let (a_u, sec_u) = a.restriction(u)?;
    let from_u: HashSet<Perm> = aut_g(&a_u)?
        .iter()
        .map(|alpha| {
            induced(s_order, |s| {
                let x = sec_s.lift[s];
                let y = sec_u.lift[alpha.apply(sec_u.project(x).expect("x in U"))];
                sec_s.project(y).expect("automorphism preserves U")
            })
        })
        .collect();

    // aut_{G/L}(A_{G/L}) acting on S inside G/L
    let (a_q, sec_q) = a.quotient_by(l)?;
    let from_quotient: HashSet<Perm> = aut_g(&a_q)?
        .iter()
        .map(|alpha| {
            induced(s_order, |s| {
                let x = sec_s.lift[s];
                let y = sec_q.lift[alpha.apply(sec_q.project(x).expect("total projection"))];
                project_mod(g, &sec_s, y, l)
            })
        })
        .collect();

    let product: HashSet<Perm> = from_u.iter().flat_map(|x| from_quotient.iter().map(move |y| x.then(y))).collect();
    Ok(KrReport {
        holds: product == aut_s,
        section_discrete,
        aut_s: aut_s.len(),
        from_u: from_u.len(),
        from_quotient: from_quotient.len(),
        product: product.len(),
    })
}

/// Projects an element of `U + L` (given by any coset representative) to
/// the section.
fn project_mod(g: &Group, sec: &Section, y: Elem, l: &Subgroup) -> Elem {
    l.members().iter().find_map(|&t| sec.project(g.add(y, t))).expect("automorphism of the quotient preserves U/L")
}

fn induced(n: usize, f: impl Fn(usize) -> usize) -> Perm {
    Perm::from_images((0..n).map(f).collect()).expect("induced map is a bijection")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: u64) -> Group {
        Group::new(&[n]).unwrap()
    }

    #[test]
    fn tensor_examples() {
        let (t, _) = tensor(&SchurRing::discrete(&z(2)), &SchurRing::discrete(&z(3))).unwrap();
        assert_eq!(t, SchurRing::discrete(&z(6)));
        let b = SchurRing::validate_partition(&z(3), &[vec![0], vec![1, 2]]).unwrap();
        let (t, _) = tensor(&SchurRing::discrete(&z(2)), &b).unwrap();
        assert_eq!(t.classes(), &[vec![0], vec![1, 5], vec![2, 4], vec![3]]);
        let a1 = SchurRing::validate_partition(&z(4), &[vec![0], vec![2], vec![1, 3]]).unwrap();
        let (t, _) = tensor(&a1, &SchurRing::rank_two(&z(5))).unwrap();
        assert_eq!(t.rank(), 2 * a1.rank());
    }

    #[test]
    fn star_examples() {
        let g = z(6);
        let a = SchurRing::validate_partition(&g, &[vec![0], vec![3], vec![1, 4], vec![2, 5]]).unwrap();
        let v = g.generated(&[3]);
        let r = star_check(&a, &v, &g.whole()).unwrap();
        assert_eq!(r.kind, DecompositionKind::Star);
        assert!(r.nontrivial);
        let (t, _) = tensor(&SchurRing::discrete(&z(2)), &SchurRing::rank_two(&z(3))).unwrap();
        let r = star_check(&t, &g.generated(&[3]), &g.generated(&[2])).unwrap();
        assert_eq!(r.kind, DecompositionKind::Tensor);
        assert_eq!(star_check(&SchurRing::rank_two(&g), &v, &g.whole()), Err(Error::NotASubgroup));
        // rank-two factor over the 3-part: condition 3 fails for a Z_6 wreath
        let w = SchurRing::validate_partition(&g, &[vec![0], vec![2, 4], vec![1, 3, 5]]).unwrap();
        let r = star_check(&w, &g.generated(&[2]), &g.trivial_subgroup()).unwrap();
        assert_eq!(r.failure.unwrap().condition, "star-3");
    }

    #[test]
    fn wreath_examples() {
        let g = z(4);
        let a = SchurRing::validate_partition(&g, &[vec![0], vec![2], vec![1, 3]]).unwrap();
        let l = g.generated(&[2]);
        let r = generalized_wreath_check(&a, &l, &l).unwrap();
        assert_eq!(r.kind, DecompositionKind::Wreath);
        let (w, _) = wreath(&SchurRing::discrete(&z(2)), &SchurRing::discrete(&z(2))).unwrap();
        assert_eq!(w.rank(), 3);
        assert!(generalized_wreath_check(&a, &g.whole(), &g.trivial_subgroup()).unwrap().holds());
        assert!(!generalized_wreath_check(&a, &g.whole(), &g.trivial_subgroup()).unwrap().nontrivial);
        let z6 = z(6);
        let t = SchurRing::validate_partition(&z6, &[vec![0], vec![3], vec![2, 4], vec![1, 5]]).unwrap();
        let l = z6.generated(&[3]);
        let r = generalized_wreath_check(&t, &l, &l).unwrap();
        assert_eq!(r.failure.unwrap().condition, "gw-2");
        assert_eq!(generalized_wreath_check(&t, &l, &z6.whole()), Err(Error::NotNested));
    }

    #[test]
    fn p_srings() {
        let c33 = Group::new(&[3, 3]).unwrap();
        assert!(is_p_sring(&SchurRing::discrete(&c33), 3));
        let a = SchurRing::validate_partition(&z(4), &[vec![0], vec![2], vec![1, 3]]).unwrap();
        assert!(is_p_sring(&a, 2));
        assert!(!is_p_sring(&SchurRing::rank_two(&c33), 3));
    }

    #[test]
    fn cayley_equivalence_and_minimality() {
        let v4 = Group::new(&[2, 2]).unwrap();
        let inv = v4.power_map(-1);
        assert!(cayley_equivalent(&v4, &[inv], &[]).unwrap());
        let z7 = z(7);
        let k = vec![z7.power_map(2)];
        assert!(cayley_equivalent(&z7, &k, &k).unwrap());
        let bad = Perm::from_images(vec![1, 0, 2, 3, 4, 5, 6]).unwrap();
        assert_eq!(cayley_equivalent(&z7, &[bad], &[]), Err(Error::NotAutomorphisms));
        for ring in crate::sring::enumerate_srings(&z(7), 16).unwrap() {
            assert!(is_cayley_minimal(&ring).unwrap());
        }
        // the full automorphism group of C2 x C2 and its order-3 subgroup
        // have the same orbits
        assert!(!is_cayley_minimal(&SchurRing::rank_two(&v4)).unwrap());
    }

    #[test]
    fn kr_examples() {
        let g = z(4);
        let a = SchurRing::validate_partition(&g, &[vec![0], vec![2], vec![1, 3]]).unwrap();
        let l = g.generated(&[2]);
        let r = kr_condition(&a, &l, &l).unwrap();
        assert!(r.holds && r.section_discrete);
        assert_eq!(
            kr_condition(&SchurRing::rank_two(&g), &g.whole(), &g.trivial_subgroup()).map(|r| r.holds),
            Ok(true)
        );
        assert_eq!(kr_condition(&SchurRing::discrete(&g), &l, &l), Err(Error::NotGeneralizedWreath));
        // G = C2 x C2 x C3, A = Z U wreathed over S = U/L with
        // A_{G/L} = Z S ⊗ (rank two over C3)
        let v4 = Group::new(&[2, 2]).unwrap();
        let dp = v4.direct_product(&z(3)).unwrap();
        let c = dp.group.clone();
        let mut color = vec![0u32; c.order()];
        for x in v4.elements() {
            for y in z(3).elements() {
                color[dp.pair(x, y)] = if y == 0 { x as u32 } else { 4 + (x / 2) as u32 };
            }
        }
        let a = SchurRing::from_coloring(&c, &color).unwrap();
        let l = c.generated(&[dp.left[1]]);
        let u = c.generated(&[dp.left[1], dp.left[2]]);
        let r = kr_condition(&a, &u, &l).unwrap();
        assert!(r.section_discrete);
        assert!(r.holds);
    }
}
