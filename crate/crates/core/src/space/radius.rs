use serde::{Deserialize, Serialize};

use super::{Code, Gate};
use crate::error::Result;

const UNSEEN: u8 = u8::MAX;

/// Distance from every word of the space to its nearest codeword,
/// summarized as a histogram.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceScan {
    /// `histogram[r]` words lie at distance exactly r from the code.
    pub histogram: Vec<u64>,
}

impl DistanceScan {
    pub fn covering_radius(&self) -> usize {
        self.histogram.len() - 1
    }

    /// Words within distance `r` of the code.
    pub fn covered_within(&self, r: usize) -> u64 {
        self.histogram.iter().take(r + 1).sum()
    }
}

/// Multi-source breadth-first search over the whole space.
pub fn distance_scan(c: &Code, gate: Gate) -> Result<DistanceScan> {
    let space = c.space();
    let size = space.check_gate(gate)?;
    let orders = space.orders();
    let strides = space.strides();
    let mut dist = vec![UNSEEN; size];
    let mut frontier: Vec<u32> = c
        .words()
        .iter()
        .map(|w| space.index_of(w) as u32)
        .collect();
    for &v in &frontier {
        dist[v as usize] = 0;
    }
    let mut histogram = vec![frontier.len() as u64];
    let mut level = 0u8;
    let mut digits = vec![0u8; orders.len()];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for &v in &frontier {
            let mut rest = v as u64;
            for (d, &q) in digits.iter_mut().zip(orders).rev() {
                *d = (rest % q as u64) as u8;
                rest /= q as u64;
            }
            for i in 0..orders.len() {
                let base = v as u64 - digits[i] as u64 * strides[i];
                for s in 0..orders[i] as u64 {
                    let w = (base + s * strides[i]) as usize;
                    if dist[w] == UNSEEN {
                        dist[w] = level + 1;
                        next.push(w as u32);
                    }
                }
            }
        }
        if !next.is_empty() {
            histogram.push(next.len() as u64);
        }
        frontier = next;
        level += 1;
    }
    Ok(DistanceScan { histogram })
}

/// ρ(C): the largest distance from a word of the space to the code.
pub fn covering_radius(c: &Code, gate: Gate) -> Result<usize> {
    Ok(distance_scan(c, gate)?.covering_radius())
}

/// e(C): the largest e for which the radius-e balls around codewords are
/// pairwise disjoint, found by comparing |∪ B_e(c)| with |C|·|B_e|.
///
/// # Panics
///
/// If the count disagrees with ⌊(d − 1)/2⌋, which would be a bug.
pub fn packing_radius(c: &Code, gate: Gate) -> Result<usize> {
    let scan = distance_scan(c, gate)?;
    let d = c.minimum_distance()?;
    let e = packing_from_scan(c, &scan);
    assert_eq!(e, (d - 1) / 2, "sphere count and minimum distance disagree");
    Ok(e)
}

fn packing_from_scan(c: &Code, scan: &DistanceScan) -> usize {
    let disjoint = |e: usize| {
        scan.covered_within(e) as u128 == c.len() as u128 * c.space().sphere(e).size
    };
    let mut e = 0;
    while e < c.length() && disjoint(e + 1) {
        e += 1;
    }
    e
}

/// Outcome of a perfection check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PerfectCertificate {
    pub e: usize,
    pub packing_radius: usize,
    pub covering_radius: usize,
    pub min_distance: usize,
    pub code_size: u64,
    pub sphere_size: u128,
    pub space_size: u128,
    /// |C|·|B_e| = |V|.
    pub sphere_identity: bool,
    pub quasi_perfect: bool,
    pub perfect: bool,
}

/// Checks that C is e-perfect: packing radius e, covering radius e, and the
/// sphere-count identity all hold.
pub fn is_perfect(c: &Code, e: usize, gate: Gate) -> Result<PerfectCertificate> {
    let scan = distance_scan(c, gate)?;
    let min_distance = c.minimum_distance()?;
    let packing = packing_from_scan(c, &scan);
    assert_eq!(packing, (min_distance - 1) / 2, "sphere count and minimum distance disagree");
    let covering = scan.covering_radius();
    let sphere_size = c.space().sphere(e).size;
    let space_size = c.space().size();
    let sphere_identity = c.len() as u128 * sphere_size == space_size;
    Ok(PerfectCertificate {
        e,
        packing_radius: packing,
        covering_radius: covering,
        min_distance,
        code_size: c.len() as u64,
        sphere_size,
        space_size,
        sphere_identity,
        quasi_perfect: covering == packing + 1,
        perfect: packing == e && covering == e && sphere_identity,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::{MixedSpace, Word, ZeroWord};

    fn code(orders: &[u8], words: &[&[u8]]) -> Code {
        Code::new(
            MixedSpace::new(orders).unwrap(),
            words.iter().map(|w| Word::from(*w)),
            ZeroWord::Optional,
        )
        .unwrap()
    }

    fn even4() -> Code {
        let s = MixedSpace::uniform(2, 4).unwrap();
        let words: Vec<Word> = s
            .words(Gate::default())
            .unwrap()
            .filter(|w| w.weight() % 2 == 0)
            .collect();
        Code::new(s, words, ZeroWord::Required).unwrap()
    }

    #[test]
    fn repetition_code() {
        let rep = code(&[2, 2, 2], &[&[0, 0, 0], &[1, 1, 1]]);
        assert_eq!(packing_radius(&rep, Gate::default()).unwrap(), 1);
        assert_eq!(covering_radius(&rep, Gate::default()).unwrap(), 1);
        let cert = is_perfect(&rep, 1, Gate::default()).unwrap();
        assert!(cert.perfect);
        assert!(cert.sphere_identity);
    }

    #[test]
    fn even_weight_code_is_quasi_perfect() {
        let c = even4();
        assert_eq!(packing_radius(&c, Gate::default()).unwrap(), 0);
        assert_eq!(covering_radius(&c, Gate::default()).unwrap(), 1);
        let cert = is_perfect(&c, 1, Gate::default()).unwrap();
        assert!(!cert.perfect);
        assert!(cert.quasi_perfect);
        assert_eq!((cert.packing_radius, cert.covering_radius), (0, 1));
    }

    #[test]
    fn whole_space_has_covering_radius_zero() {
        let c = Code::full_space(MixedSpace::new(&[3, 2]).unwrap(), Gate::default()).unwrap();
        assert_eq!(covering_radius(&c, Gate::default()).unwrap(), 0);
    }

    #[test]
    fn gate_refuses_large_spaces() {
        let c = code(&[2; 12], &[&[0; 12], &[1; 12]]);
        assert!(covering_radius(&c, Gate(4095)).is_err());
        assert_eq!(covering_radius(&c, Gate(4096)).unwrap(), 6);
    }
}
