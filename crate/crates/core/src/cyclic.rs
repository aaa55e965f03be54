//! The cyclic group `Z/N`, its automorphisms, and embedding data.
//!
//! The group of the theory is a finite cyclic group of order `N`, written
//! additively here: the identity is `0` and composition is `g + h mod N`.
//! An embedding `ι : G → C^×` is recorded through the distinguished
//! generator `g_ι = ι^{-1}(e^{2πi/N})`.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Element of `Z/N`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CyclicElem {
    n: u32,
    residue: u32,
}

impl CyclicElem {
    pub fn new(n: u32, value: i64) -> Self {
        assert!(n >= 1, "group order must be >= 1");
        let m = n as i64;
        let residue = value.rem_euclid(m) as u32;
        CyclicElem { n, residue }
    }

    pub fn zero(n: u32) -> Self {
        CyclicElem::new(n, 0)
    }

    pub fn order(&self) -> u32 {
        self.n
    }

    pub fn residue(&self) -> u32 {
        self.residue
    }

    pub fn add(&self, other: &CyclicElem) -> CyclicElem {
        assert_eq!(self.n, other.n, "mixed group orders");
        CyclicElem::new(self.n, self.residue as i64 + other.residue as i64)
    }

    pub fn sub(&self, other: &CyclicElem) -> CyclicElem {
        assert_eq!(self.n, other.n, "mixed group orders");
        CyclicElem::new(self.n, self.residue as i64 - other.residue as i64)
    }

    pub fn neg(&self) -> CyclicElem {
        CyclicElem::new(self.n, -(self.residue as i64))
    }

    /// Multiple `k·g`.
    pub fn times(&self, k: i64) -> CyclicElem {
        CyclicElem::new(self.n, k * self.residue as i64)
    }

    /// True when this element generates the whole group.
    pub fn is_generator(&self) -> bool {
        (self.residue as i64).gcd(&(self.n as i64)) == 1
    }
}

/// Automorphism of `Z/N`: multiplication by a unit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupAut {
    n: u32,
    unit: u32,
}

impl GroupAut {
    pub fn new(n: u32, unit: i64) -> Result<Self> {
        assert!(n >= 1);
        let u = unit.rem_euclid(n as i64) as u32;
        // Z/1 is the trivial group; 0 is its only (identity) map.
        let g = if n == 1 { 1 } else { (u as i64).gcd(&(n as i64)) };
        if g != 1 {
            return Err(Error::Param(format!(
                "unit {unit} is not invertible mod {n}"
            )));
        }
        Ok(GroupAut { n, unit: u })
    }

    pub fn identity(n: u32) -> Self {
        GroupAut {
            n,
            unit: if n == 1 { 0 } else { 1 },
        }
    }

    pub fn order(&self) -> u32 {
        self.n
    }

    pub fn unit(&self) -> u32 {
        self.unit
    }

    pub fn apply(&self, g: &CyclicElem) -> CyclicElem {
        assert_eq!(self.n, g.order());
        g.times(self.unit as i64)
    }

    pub fn compose(&self, other: &GroupAut) -> GroupAut {
        assert_eq!(self.n, other.n);
        GroupAut {
            n: self.n,
            unit: ((self.unit as u64 * other.unit as u64) % self.n as u64) as u32,
        }
    }

    pub fn inverse(&self) -> GroupAut {
        if self.n == 1 {
            return *self;
        }
        // Unit group of Z/N is finite; iterate to the inverse.
        let mut inv = 1u64;
        let mut acc = self.unit as u64;
        while acc % self.n as u64 != 1 {
            acc = acc * self.unit as u64 % self.n as u64;
            inv = inv * self.unit as u64 % self.n as u64;
        }
        GroupAut {
            n: self.n,
            unit: inv as u32,
        }
    }

    /// All automorphisms of `Z/N`.
    pub fn all(n: u32) -> Vec<GroupAut> {
        (0..n.max(1))
            .filter_map(|u| GroupAut::new(n, u as i64).ok())
            .collect()
    }
}

/// Embedding datum: `ι` is recorded by the generator `g_ι = ι^{-1}(e^{2πi/N})`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EmbeddingDatum {
    generator: CyclicElem,
}

impl EmbeddingDatum {
    pub fn new(generator: CyclicElem) -> Result<Self> {
        if !generator.is_generator() {
            return Err(Error::Param(format!(
                "residue {} does not generate Z/{}",
                generator.residue(),
                generator.order()
            )));
        }
        Ok(EmbeddingDatum { generator })
    }

    /// The reference embedding with `g_ι = 1` (or `0` when `N = 1`).
    pub fn reference(n: u32) -> Self {
        EmbeddingDatum {
            generator: CyclicElem::new(n, if n == 1 { 0 } else { 1 }),
        }
    }

    pub fn order(&self) -> u32 {
        self.generator.order()
    }

    /// The distinguished generator `g_ι`.
    pub fn g_iota(&self) -> CyclicElem {
        self.generator
    }

    /// The embedding `ι ∘ φ^{-1}`, whose generator is `φ(g_ι)`.
    pub fn twist(&self, phi: &GroupAut) -> EmbeddingDatum {
        EmbeddingDatum {
            generator: phi.apply(&self.generator),
        }
    }

    /// The unique `φ` with `self = reference ∘ φ^{-1}`,
    /// i.e. `φ(g_{ι_0}) = g_ι`.
    pub fn from_reference(&self) -> GroupAut {
        let n = self.order();
        GroupAut::new(n, self.generator.residue() as i64)
            .expect("generator residue is a unit")
    }
}
