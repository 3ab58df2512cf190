//! The integer group ring over a finite abelian group.

use crate::error::{Error, Result};
use crate::group::{Elem, Group};
use std::ops::Add;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupRingVector {
    group: Group,
    coeffs: Vec<i64>,
}

impl GroupRingVector {
    pub fn zero(group: &Group) -> Self {
        GroupRingVector { group: group.clone(), coeffs: vec![0; group.order()] }
    }

    /// The simple quantity of a set: coefficient 1 on each member.
    pub fn simple(group: &Group, set: &[Elem]) -> Self {
        let mut v = Self::zero(group);
        for &x in set {
            v.coeffs[x] = 1;
        }
        v
    }

    pub fn from_coeffs(group: &Group, coeffs: Vec<i64>) -> Result<Self> {
        if coeffs.len() != group.order() {
            return Err(Error::GroupMismatch);
        }
        Ok(GroupRingVector { group: group.clone(), coeffs })
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn coeff(&self, g: Elem) -> i64 {
        self.coeffs[g]
    }

    pub fn support(&self) -> Vec<Elem> {
        (0..self.coeffs.len()).filter(|&g| self.coeffs[g] != 0).collect()
    }

    pub fn scaled(&self, k: i64) -> Self {
        GroupRingVector { group: self.group.clone(), coeffs: self.coeffs.iter().map(|c| c * k).collect() }
    }

    /// Image under `x -> m x`.
    pub fn power(&self, m: i64) -> Self {
        let mut out = Self::zero(&self.group);
        for (g, &c) in self.coeffs.iter().enumerate() {
            if c != 0 {
                out.coeffs[self.group.scale(g, m)] += c;
            }
        }
        out
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        if self.group != other.group {
            return Err(Error::GroupMismatch);
        }
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(GroupRingVector { group: self.group.clone(), coeffs })
    }

    /// Convolution product.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        if self.group != other.group {
            return Err(Error::GroupMismatch);
        }
        let g = &self.group;
        let mut out = vec![0i64; g.order()];
        let rhs: Vec<(Elem, i64)> = other.coeffs.iter().copied().enumerate().filter(|&(_, c)| c != 0).collect();
        for (a, &ca) in self.coeffs.iter().enumerate() {
            if ca == 0 {
                continue;
            }
            for &(b, cb) in &rhs {
                out[g.add(a, b)] += ca * cb;
            }
        }
        Ok(GroupRingVector { group: g.clone(), coeffs: out })
    }
}

impl Add for &GroupRingVector {
    type Output = GroupRingVector;
    fn add(self, rhs: Self) -> GroupRingVector {
        self.try_add(rhs).expect("operands over the same group")
    }
}

pub fn ring_multiply(a: &GroupRingVector, b: &GroupRingVector) -> Result<GroupRingVector> {
    a.multiply(b)
}
