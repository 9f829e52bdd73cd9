//! Mixed spaces V = F_{q_1} × … × F_{q_n}, their words and codes.
//!
//! Words are byte vectors, one symbol index per coordinate. Everywhere an
//! arbitrary but fixed order is needed, words are compared lexicographically
//! with the first coordinate most significant; [`MixedSpace::index_of`] is
//! the matching mixed-radix rank, so index order and word order agree.

mod code;
mod equiv;
mod io;
mod radius;

use std::fmt;
use std::ops::Deref;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::galois::{field, FieldTable};

pub use code::{extend_code, hamming_distance, is_additive, is_even, parity, relabel, Code, ZeroWord};
pub use equiv::{
    are_equivalent, fingerprint, Equivalence, Fingerprint, Invariant, Witness,
    DEFAULT_EQUIV_BUDGET,
};
pub use io::{format_code, parse_code};
pub use radius::{
    covering_radius, distance_scan, is_perfect, packing_radius, DistanceScan, PerfectCertificate,
};

/// Upper bound on |V| for operations that enumerate the whole space.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Gate(pub u64);

impl Gate {
    pub const DEFAULT: u64 = 1 << 25;
    pub const CEILING: u64 = 1 << 28;

    /// A gate of `limit` words, refusing anything above [`Gate::CEILING`].
    pub fn new(limit: u64) -> Result<Gate> {
        if limit > Self::CEILING {
            return Err(Error::BadParameters(format!(
                "gate {limit} exceeds the hard ceiling {}",
                Self::CEILING
            )));
        }
        Ok(Gate(limit))
    }
}

impl Default for Gate {
    fn default() -> Self {
        Gate(Self::DEFAULT)
    }
}

/// A word: one symbol index per coordinate.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct Word(pub Vec<u8>);

impl Word {
    pub fn zero(n: usize) -> Word {
        Word(vec![0; n])
    }

    pub fn as_slice(&self) -> &[u8] {
        &self.0
    }

    pub fn weight(&self) -> usize {
        self.0.iter().filter(|&&x| x != 0).count()
    }

    /// Concatenation (u|v).
    pub fn concat(&self, other: &[u8]) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(other);
        Word(v)
    }
}

impl Deref for Word {
    type Target = [u8];
    fn deref(&self) -> &[u8] {
        &self.0
    }
}

impl std::borrow::Borrow<[u8]> for Word {
    fn borrow(&self) -> &[u8] {
        &self.0
    }
}

impl From<Vec<u8>> for Word {
    fn from(v: Vec<u8>) -> Self {
        Word(v)
    }
}

impl From<&[u8]> for Word {
    fn from(v: &[u8]) -> Self {
        Word(v.to_vec())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

/// Cartesian product of finite fields, given by the list of their orders.
#[derive(Clone)]
pub struct MixedSpace {
    orders: Vec<u8>,
    fields: Vec<Arc<FieldTable>>,
}

impl PartialEq for MixedSpace {
    fn eq(&self, other: &Self) -> bool {
        self.orders == other.orders
    }
}

impl Eq for MixedSpace {}

impl fmt::Debug for MixedSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MixedSpace{:?}", self.orders)
    }
}

impl MixedSpace {
    pub fn new(orders: &[u8]) -> Result<MixedSpace> {
        if orders.is_empty() {
            return Err(Error::BadParameters("a space needs at least one coordinate".into()));
        }
        let fields = orders.iter().map(|&q| field(q)).collect::<Result<Vec<_>>>()?;
        Ok(MixedSpace {
            orders: orders.to_vec(),
            fields,
        })
    }

    /// F_q^n.
    pub fn uniform(q: u8, n: usize) -> Result<MixedSpace> {
        Self::new(&vec![q; n])
    }

    /// Product of two spaces, coordinates of `self` first.
    pub fn concat(&self, other: &MixedSpace) -> MixedSpace {
        let mut orders = self.orders.clone();
        orders.extend_from_slice(&other.orders);
        let mut fields = self.fields.clone();
        fields.extend(other.fields.iter().cloned());
        MixedSpace { orders, fields }
    }

    /// The space with coordinate `pos` removed.
    pub fn without(&self, pos: usize) -> Result<MixedSpace> {
        let mut orders = self.orders.clone();
        orders.remove(pos);
        Self::new(&orders)
    }

    pub fn len(&self) -> usize {
        self.orders.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orders.is_empty()
    }

    pub fn orders(&self) -> &[u8] {
        &self.orders
    }

    pub fn field(&self, i: usize) -> &FieldTable {
        &self.fields[i]
    }

    /// The common alphabet order, if every coordinate has the same one.
    pub fn uniform_order(&self) -> Option<u8> {
        let q = self.orders[0];
        self.orders.iter().all(|&x| x == q).then_some(q)
    }

    /// |V| = Π q_i.
    pub fn size(&self) -> u128 {
        self.orders
            .iter()
            .try_fold(1u128, |acc, &q| acc.checked_mul(q as u128))
            .unwrap_or(u128::MAX)
    }

    /// |V| as a machine integer, or `SpaceTooLarge` when above the gate.
    pub fn check_gate(&self, gate: Gate) -> Result<usize> {
        let size = self.size();
        if size > gate.0 as u128 {
            return Err(Error::SpaceTooLarge { size, gate: gate.0 });
        }
        Ok(size as usize)
    }

    pub fn contains(&self, w: &[u8]) -> bool {
        w.len() == self.orders.len() && w.iter().zip(&self.orders).all(|(&s, &q)| s < q)
    }

    pub fn check_word(&self, w: &[u8]) -> Result<()> {
        if self.contains(w) {
            Ok(())
        } else {
            Err(Error::WordOutsideSpace(w.to_vec()))
        }
    }

    /// Mixed-radix rank of `w`, first coordinate most significant.
    pub fn index_of(&self, w: &[u8]) -> u64 {
        w.iter()
            .zip(&self.orders)
            .fold(0u64, |acc, (&s, &q)| acc * q as u64 + s as u64)
    }

    /// Inverse of [`MixedSpace::index_of`].
    pub fn word_at(&self, mut idx: u64) -> Word {
        let mut w = vec![0u8; self.orders.len()];
        for (s, &q) in w.iter_mut().zip(&self.orders).rev() {
            *s = (idx % q as u64) as u8;
            idx /= q as u64;
        }
        Word(w)
    }

    /// Place value of each coordinate in the mixed-radix rank.
    pub fn strides(&self) -> Vec<u64> {
        let mut strides = vec![1u64; self.orders.len()];
        for i in (0..self.orders.len().saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * self.orders[i + 1] as u64;
        }
        strides
    }

    /// Every word in lexicographic order.
    pub fn words(&self, gate: Gate) -> Result<impl Iterator<Item = Word> + '_> {
        let size = self.check_gate(gate)?;
        Ok((0..size as u64).map(move |i| self.word_at(i)))
    }

    pub fn add(&self, x: &[u8], y: &[u8]) -> Word {
        Word(
            x.iter()
                .zip(y)
                .zip(&self.fields)
                .map(|((&a, &b), f)| f.sym_add(a, b))
                .collect(),
        )
    }

    pub fn sub(&self, x: &[u8], y: &[u8]) -> Word {
        Word(
            x.iter()
                .zip(y)
                .zip(&self.fields)
                .map(|((&a, &b), f)| f.sym_sub(a, b))
                .collect(),
        )
    }

    pub fn sphere(&self, radius: usize) -> SphereProfile {
        SphereProfile::new(self, radius)
    }
}

/// Size of a Hamming ball of a given radius in a mixed space.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SphereProfile {
    pub radius: usize,
    pub size: u128,
}

impl SphereProfile {
    /// |B_r| = Σ over coordinate subsets S with |S| ≤ r of Π_{i∈S} (q_i − 1).
    pub fn new(space: &MixedSpace, radius: usize) -> SphereProfile {
        // Elementary symmetric polynomials of the (q_i - 1), by dynamic programming.
        let mut e = vec![0u128; radius + 1];
        e[0] = 1;
        for &q in space.orders() {
            let w = q as u128 - 1;
            for j in (1..=radius).rev() {
                e[j] += e[j - 1] * w;
            }
        }
        SphereProfile {
            radius,
            size: e.iter().sum(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_round_trip_and_order() {
        let s = MixedSpace::new(&[4, 2, 3]).unwrap();
        assert_eq!(s.size(), 24);
        let words: Vec<Word> = s.words(Gate::default()).unwrap().collect();
        for (i, w) in words.iter().enumerate() {
            assert_eq!(s.index_of(w), i as u64);
        }
        assert!(words.windows(2).all(|p| p[0] < p[1]));
    }

    #[test]
    fn sphere_sizes() {
        let s = MixedSpace::new(&[4, 2, 2, 2, 2]).unwrap();
        assert_eq!(s.sphere(1).size, 1 + 3 + 4);
        let t = MixedSpace::uniform(2, 7).unwrap();
        assert_eq!(t.sphere(1).size, 8);
        assert_eq!(t.sphere(2).size, 1 + 7 + 21);
    }

    #[test]
    fn gate_is_enforced() {
        let s = MixedSpace::uniform(2, 30).unwrap();
        assert!(matches!(
            s.check_gate(Gate::default()),
            Err(Error::SpaceTooLarge { .. })
        ));
        assert!(Gate::new(Gate::CEILING + 1).is_err());
    }

    #[test]
    fn rejects_unsupported_alphabets() {
        assert_eq!(MixedSpace::new(&[6]).unwrap_err(), Error::NotPrimePower(6));
    }
}
