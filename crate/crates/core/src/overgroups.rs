//! Overgroups of the regular representation: 2-closure, regular subgroups
//! and their conjugacy, the complete-subgroup order and its minimal
//! elements.

use crate::error::{cap_check, Error, Result};
use crate::graph::ColoredDigraph;
use crate::group::{Group, DEFAULT_CAP};
use crate::perm::{Perm, PermGroup};
use crate::pullback::{transported_generators, Pullback};
use crate::sring::{enumerate_srings, SchurRing};
use std::collections::BTreeSet;

pub use crate::sring::regular_representation;

/// Default cap on the degree for regular-subgroup searches.
pub const REGULAR_CAP: usize = 16;
/// Default cap on the group order for `sup_min`.
pub const SUP_MIN_CAP: usize = 12;

pub fn transitivity_module(group: &Group, a: &PermGroup) -> Result<SchurRing> {
    SchurRing::transitivity_module(group, a)
}

pub fn two_closure(a: &PermGroup, cap: usize) -> Result<PermGroup> {
    cap_check("2-closure", a.degree(), cap)?;
    Ok(ColoredDigraph::orbitals(a).automorphism_group())
}

/// A regular subgroup `psi G_R psi^-1`, recorded by the bijection `psi`
/// from the group onto the points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegularCopy {
    pub psi: Vec<usize>,
}

impl RegularCopy {
    pub fn generators(&self, group: &Group) -> Vec<Perm> {
        transported_generators(group, &self.psi)
    }

    pub fn as_group(&self, group: &Group) -> PermGroup {
        PermGroup::new(group.order(), self.generators(group))
    }

    /// All elements, sorted; determines the subgroup.
    pub fn elements(&self, group: &Group) -> Vec<Perm> {
        let n = group.order();
        let mut inv = vec![0; n];
        for (g, &p) in self.psi.iter().enumerate() {
            inv[p] = g;
        }
        let mut out: Vec<Perm> = group
            .elements()
            .map(|x| Perm::from_images((0..n).map(|u| self.psi[group.add(inv[u], x)]).collect()).expect("bijection"))
            .collect();
        out.sort();
        out
    }
}

/// Context for conjugacy tests inside a fixed overgroup.
pub struct RegularSearch<'a> {
    group: &'a Group,
    a: &'a PermGroup,
    aut_g: Vec<Perm>,
}

impl<'a> RegularSearch<'a> {
    pub fn new(group: &'a Group, a: &'a PermGroup, cap: usize) -> Result<Self> {
        cap_check("regular subgroup search", a.degree(), cap)?;
        if a.degree() != group.order() {
            return Err(Error::GroupMismatch);
        }
        let aut_g = group.automorphism_group(DEFAULT_CAP.max(group.order()))?.elements();
        Ok(RegularSearch { group, a, aut_g })
    }

    /// Representatives of the conjugacy classes under `A` of regular
    /// subgroups of `A` isomorphic to the group.
    pub fn class_representatives(&self) -> Vec<RegularCopy> {
        let orbitals = ColoredDigraph::orbitals(self.a);
        let mut reps: Vec<RegularCopy> = Vec::new();
        let check = |psi: &[usize]| transported_generators(self.group, psi).iter().all(|g| self.a.contains(g));
        for orbit in self.a.orbits() {
            let start = orbit[0];
            Pullback::new(self.group).free(&orbitals).leaf_check(&check).prune_by(self.a).start(start).run(
                &mut |psi| {
                    let cand = RegularCopy { psi: psi.to_vec() };
                    if !reps.iter().any(|r| self.conjugate(r, &cand)) {
                        reps.push(cand);
                    }
                    false
                },
            );
            if self.a.is_transitive() {
                break;
            }
        }
        reps
    }

    /// Whether two regular copies are conjugate in `A`.
    pub fn conjugate(&self, x: &RegularCopy, y: &RegularCopy) -> bool {
        let n = self.group.order();
        let mut inv = vec![0; n];
        for (g, &p) in x.psi.iter().enumerate() {
            inv[p] = g;
        }
        // y.psi . alpha . x.psi^-1 lies in A for some automorphism alpha
        self.aut_g.iter().any(|alpha| {
            let img: Vec<usize> = (0..n).map(|u| y.psi[alpha.apply(inv[u])]).collect();
            self.a.contains(&Perm::from_images(img).expect("bijection"))
        })
    }

    /// Every regular subgroup isomorphic to the group, each as its sorted
    /// element list.
    pub fn all_regular_subgroups(&self) -> Vec<Vec<Perm>> {
        let mut seen: BTreeSet<Vec<Perm>> = BTreeSet::new();
        for rep in self.class_representatives() {
            let start = rep.elements(self.group);
            if !seen.insert(start.clone()) {
                continue;
            }
            let mut stack = vec![start];
            while let Some(f) = stack.pop() {
                for a in self.a.generators() {
                    let mut conj: Vec<Perm> = f.iter().map(|x| x.conjugate_by(a)).collect();
                    conj.sort();
                    if seen.insert(conj.clone()) {
                        stack.push(conj);
                    }
                }
            }
        }
        seen.into_iter().collect()
    }
}

pub fn regular_subgroups(a: &PermGroup, group: &Group) -> Result<Vec<Vec<Perm>>> {
    Ok(RegularSearch::new(group, a, REGULAR_CAP)?.all_regular_subgroups())
}

pub fn conjugacy_classes_regular(a: &PermGroup, group: &Group) -> Result<Vec<RegularCopy>> {
    Ok(RegularSearch::new(group, a, REGULAR_CAP)?.class_representatives())
}

/// `Asub ⪯_G B`: every regular subgroup of `B` isomorphic to the group is
/// conjugate in `B` to a subgroup of `Asub`.
pub fn is_complete_sub(asub: &PermGroup, b: &PermGroup, group: &Group) -> Result<bool> {
    if !asub.is_subgroup_of(b) {
        return Err(Error::NotSubgroup);
    }
    let in_b = RegularSearch::new(group, b, REGULAR_CAP)?;
    let in_a = RegularSearch::new(group, asub, REGULAR_CAP)?;
    let b_classes = in_b.class_representatives();
    let a_classes = in_a.class_representatives();
    Ok(b_classes.iter().all(|f| a_classes.iter().any(|h| in_b.conjugate(h, f))))
}

/// The 2-closed overgroup `aut(A)` of a schurian S-ring together with the
/// S-ring.
#[derive(Clone, Debug)]
pub struct ClosedOvergroup {
    pub sring: SchurRing,
    pub group: PermGroup,
}

/// Minimal elements, under the complete-subgroup order, of the 2-closed
/// overgroups of the regular representation.
pub fn sup_min(group: &Group, cap: usize) -> Result<Vec<ClosedOvergroup>> {
    cap_check("minimal overgroups", group.order(), cap)?;
    let mut candidates: Vec<ClosedOvergroup> = Vec::new();
    for s in enumerate_srings(group, cap.max(group.order()))? {
        let aut = s.automorphisms()?;
        if SchurRing::transitivity_module(group, &aut)? == s {
            candidates.push(ClosedOvergroup { sring: s, group: aut });
        }
    }
    let mut minimal = Vec::new();
    for (i, b) in candidates.iter().enumerate() {
        let mut is_min = true;
        for (j, a) in candidates.iter().enumerate() {
            if i == j || !a.group.is_subgroup_of(&b.group) || a.group.order() == b.group.order() {
                continue;
            }
            if is_complete_sub(&a.group, &b.group, group)? {
                is_min = false;
                break;
            }
        }
        if is_min {
            minimal.push(b.clone());
        }
    }
    Ok(minimal)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::symmetric_group;

    fn z(n: u64) -> Group {
        Group::new(&[n]).unwrap()
    }

    #[test]
    fn regular_representation_examples() {
        let r = regular_representation(&z(3));
        assert_eq!(r.order_u64(), Some(3));
        let k = regular_representation(&Group::new(&[2, 2]).unwrap());
        assert!(k.is_regular() && k.order_u64() == Some(4));
        let r8 = regular_representation(&z(8));
        assert_eq!(r8.pointwise_stabilizer(&[0]).order_u64(), Some(1));
    }

    #[test]
    fn transitivity_module_examples() {
        let g = z(5);
        assert_eq!(transitivity_module(&g, &regular_representation(&g)).unwrap(), SchurRing::discrete(&g));
        assert_eq!(transitivity_module(&g, &symmetric_group(5)).unwrap().rank(), 2);
        let a = PermGroup::new(5, vec![Perm::from_images(vec![1, 2, 3, 4, 0]).unwrap(), g.power_map(2)]);
        assert_eq!(a.order_u64(), Some(20));
        let m = transitivity_module(&g, &a).unwrap();
        assert_eq!(m.classes(), &[vec![0], vec![1, 2, 3, 4]]);
        let stab = PermGroup::new(5, vec![g.power_map(2)]);
        assert_eq!(transitivity_module(&g, &stab), Err(Error::NotOvergroup));
    }

    #[test]
    fn two_closure_examples() {
        let s5 = symmetric_group(5);
        assert!(two_closure(&s5, 64).unwrap().same_group_as(&s5));
        let r4 = regular_representation(&z(4));
        assert_eq!(two_closure(&r4, 64).unwrap().order_u64(), Some(4));
        let c = two_closure(&two_closure(&r4, 64).unwrap(), 64).unwrap();
        assert_eq!(c.order_u64(), Some(4));
        // the alternating group A4 on 4 points is not 2-closed
        let a4 = PermGroup::new(
            4,
            vec![Perm::from_images(vec![1, 2, 0, 3]).unwrap(), Perm::from_images(vec![0, 2, 3, 1]).unwrap()],
        );
        assert_eq!(two_closure(&a4, 64).unwrap().order_u64(), Some(24));
    }

    #[test]
    fn regular_subgroup_examples() {
        let r4 = regular_representation(&z(4));
        assert_eq!(regular_subgroups(&r4, &z(4)).unwrap().len(), 1);
        let s4 = symmetric_group(4);
        let klein = Group::new(&[2, 2]).unwrap();
        assert_eq!(regular_subgroups(&s4, &klein).unwrap().len(), 1);
        assert_eq!(conjugacy_classes_regular(&s4, &klein).unwrap().len(), 1);
        assert_eq!(regular_subgroups(&s4, &z(4)).unwrap().len(), 3);
        assert_eq!(conjugacy_classes_regular(&s4, &z(4)).unwrap().len(), 1);
    }

    #[test]
    fn complete_sub_examples() {
        let s4 = symmetric_group(4);
        assert!(is_complete_sub(&s4, &s4, &z(4)).unwrap());
        let r4 = regular_representation(&z(4));
        assert!(is_complete_sub(&r4, &s4, &z(4)).unwrap());
        // the dihedral group of the 4-cycle contains a regular Klein group
        // that is not conjugate into the cyclic one
        let klein = Group::new(&[2, 2]).unwrap();
        let r = regular_representation(&klein);
        assert!(matches!(is_complete_sub(&s4, &r, &klein), Err(Error::NotSubgroup)));
    }

    #[test]
    fn sup_min_of_prime_order_is_regular() {
        for p in [2, 3, 5, 7] {
            let g = z(p);
            let m = sup_min(&g, SUP_MIN_CAP).unwrap();
            assert_eq!(m.len(), 1);
            assert_eq!(m[0].group.order_u64(), Some(p));
        }
        let z4 = z(4);
        assert!(sup_min(&z4, SUP_MIN_CAP).unwrap().iter().any(|a| a.group.order_u64() == Some(4)));
    }
}
