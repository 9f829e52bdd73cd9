//! Equivalence of mixed codes: C ~ D when a coordinate permutation σ that
//! respects alphabet orders, composed with symbol permutations π_i, maps C
//! onto D.
//!
//! Cheap invariants are compared first. The search itself encodes each code
//! as a coloured graph (codeword vertices, coordinate vertices coloured by
//! alphabet order, one vertex per coordinate symbol) and runs colour
//! refinement with individualization on the disjoint union of both graphs.
//! The search tree is complete, so exhausting it proves nonequivalence.
//!
//! Only this notion of equivalence is implemented. A stricter one, under which
//! a Hamming code is equivalent only to itself and its translates, is not.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::code::dist;
use super::{Code, MixedSpace, Word, ZeroWord};
use crate::error::{Error, Result};

/// Default number of search-tree nodes before giving up.
pub const DEFAULT_EQUIV_BUDGET: u64 = 200_000;

/// An explicit equivalence: codeword u of C maps to the word w of D with
/// `w[sigma[i]] = pis[i][u[i]]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub sigma: Vec<usize>,
    pub pis: Vec<Vec<u8>>,
}

impl Witness {
    pub fn identity(space: &MixedSpace) -> Witness {
        Witness {
            sigma: (0..space.len()).collect(),
            pis: space.orders().iter().map(|&q| (0..q).collect()).collect(),
        }
    }

    pub fn map_word(&self, u: &[u8]) -> Word {
        let mut w = vec![0u8; u.len()];
        for (i, &s) in u.iter().enumerate() {
            w[self.sigma[i]] = self.pis[i][s as usize];
        }
        Word(w)
    }

    /// The image of `c` in the space `target`.
    pub fn apply(&self, c: &Code, target: &MixedSpace) -> Result<Code> {
        let words = c.words().iter().map(|u| self.map_word(u));
        Code::new(target.clone(), words, ZeroWord::Optional)
    }

    /// True when the witness maps `c` exactly onto `d`.
    pub fn verify(&self, c: &Code, d: &Code) -> bool {
        self.apply(c, d.space()).map(|img| img == *d).unwrap_or(false)
    }
}

/// The invariant that separated two codes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Invariant {
    Size,
    CoordinateSpectra,
    DistanceDistribution,
    DistanceProfiles,
    /// The complete search found no mapping.
    Exhausted,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Equivalence {
    Equivalent(Witness),
    Nonequivalent(Invariant),
    Unknown,
}

/// Equivalence invariants of a code.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Fingerprint {
    pub size: u64,
    /// Sorted alphabet orders.
    pub orders: Vec<u8>,
    /// Per coordinate: its order and its sorted symbol frequencies; the list
    /// itself is sorted.
    pub coordinate_spectra: Vec<(u8, Vec<u64>)>,
    /// Number of unordered codeword pairs at each distance.
    pub distance_distribution: Vec<u64>,
}

pub fn fingerprint(c: &Code) -> Fingerprint {
    let mut orders = c.space().orders().to_vec();
    orders.sort_unstable();
    Fingerprint {
        size: c.len() as u64,
        orders,
        coordinate_spectra: spectra(c),
        distance_distribution: distance_distribution(c),
    }
}

fn spectra(c: &Code) -> Vec<(u8, Vec<u64>)> {
    let mut out: Vec<(u8, Vec<u64>)> = c
        .space()
        .orders()
        .iter()
        .enumerate()
        .map(|(i, &q)| {
            let mut freq = vec![0u64; q as usize];
            for w in c.words() {
                freq[w[i] as usize] += 1;
            }
            freq.sort_unstable();
            (q, freq)
        })
        .collect();
    out.sort();
    out
}

fn distance_distribution(c: &Code) -> Vec<u64> {
    let n = c.length();
    let words = c.words();
    (0..words.len())
        .into_par_iter()
        .fold(
            || vec![0u64; n + 1],
            |mut acc, i| {
                for y in &words[i + 1..] {
                    acc[dist(&words[i], y)] += 1;
                }
                acc
            },
        )
        .reduce(
            || vec![0u64; n + 1],
            |mut a, b| {
                for (x, y) in a.iter_mut().zip(b) {
                    *x += y;
                }
                a
            },
        )
}

fn distance_profiles(c: &Code) -> Vec<Vec<u32>> {
    let n = c.length();
    let words = c.words();
    let mut profiles: Vec<Vec<u32>> = words
        .par_iter()
        .map(|x| {
            let mut h = vec![0u32; n + 1];
            for y in words {
                h[dist(x, y)] += 1;
            }
            h
        })
        .collect();
    profiles.sort_unstable();
    profiles
}

/// Decides whether `c` and `d` are equivalent, exploring at most `budget`
/// search nodes.
pub fn are_equivalent(c: &Code, d: &Code, budget: u64) -> Result<Equivalence> {
    let mut oc = c.space().orders().to_vec();
    let mut od = d.space().orders().to_vec();
    oc.sort_unstable();
    od.sort_unstable();
    if oc != od {
        return Err(Error::AlphabetMultisetMismatch);
    }
    if c.len() != d.len() {
        return Ok(Equivalence::Nonequivalent(Invariant::Size));
    }
    if c == d {
        return Ok(Equivalence::Equivalent(Witness::identity(c.space())));
    }
    if spectra(c) != spectra(d) {
        return Ok(Equivalence::Nonequivalent(Invariant::CoordinateSpectra));
    }
    if distance_distribution(c) != distance_distribution(d) {
        return Ok(Equivalence::Nonequivalent(Invariant::DistanceDistribution));
    }
    if c.len() <= 4096 && distance_profiles(c) != distance_profiles(d) {
        return Ok(Equivalence::Nonequivalent(Invariant::DistanceProfiles));
    }
    let g1 = Graph::new(c);
    let g2 = Graph::new(d);
    let (c1, c2) = (g1.initial_colors(), g2.initial_colors());
    let mut left = budget;
    match search(&g1, &g2, c1, c2, &mut left) {
        Search::Found(w) => {
            assert!(w.verify(c, d), "equivalence witness failed verification");
            Ok(Equivalence::Equivalent(w))
        }
        Search::None => Ok(Equivalence::Nonequivalent(Invariant::Exhausted)),
        Search::OutOfBudget => Ok(Equivalence::Unknown),
    }
}

// Vertex layout: codewords, then coordinates, then (coordinate, symbol) pairs.
struct Graph {
    m: usize,
    n: usize,
    orders: Vec<u8>,
    sym_offset: Vec<usize>,
    adj: Vec<Vec<u32>>,
}

impl Graph {
    fn new(c: &Code) -> Graph {
        let m = c.len();
        let n = c.length();
        let orders = c.space().orders().to_vec();
        let mut sym_offset = Vec::with_capacity(n);
        let mut next = m + n;
        for &q in &orders {
            sym_offset.push(next);
            next += q as usize;
        }
        let mut adj = vec![Vec::new(); next];
        for (wi, w) in c.words().iter().enumerate() {
            for (i, &s) in w.iter().enumerate() {
                let sv = sym_offset[i] + s as usize;
                adj[wi].push(sv as u32);
                adj[sv].push(wi as u32);
            }
        }
        for (i, &q) in orders.iter().enumerate() {
            for s in 0..q as usize {
                let sv = sym_offset[i] + s;
                adj[sv].push((m + i) as u32);
                adj[m + i].push(sv as u32);
            }
        }
        Graph {
            m,
            n,
            orders,
            sym_offset,
            adj,
        }
    }

    fn initial_colors(&self) -> Vec<u32> {
        let mut colors = vec![0u32; self.adj.len()];
        for i in 0..self.n {
            let q = self.orders[i] as u32;
            colors[self.m + i] = 1 + q;
            for s in 0..q as usize {
                colors[self.sym_offset[i] + s] = 100 + q;
            }
        }
        colors
    }
}

enum Search {
    Found(Witness),
    None,
    OutOfBudget,
}

// Refines both colourings jointly to a stable partition. Returns false when
// some colour class has different sizes in the two graphs.
fn refine(g1: &Graph, g2: &Graph, c1: &mut Vec<u32>, c2: &mut Vec<u32>) -> bool {
    let mut classes = count_classes(c1);
    loop {
        let sig = |g: &Graph, c: &[u32], v: usize| {
            let mut nb: Vec<u32> = g.adj[v].iter().map(|&u| c[u as usize]).collect();
            nb.sort_unstable();
            (c[v], nb)
        };
        let s1: Vec<(u32, Vec<u32>)> = (0..c1.len()).map(|v| sig(g1, c1, v)).collect();
        let s2: Vec<(u32, Vec<u32>)> = (0..c2.len()).map(|v| sig(g2, c2, v)).collect();
        let mut distinct: Vec<&(u32, Vec<u32>)> = s1.iter().chain(s2.iter()).collect();
        distinct.sort_unstable();
        distinct.dedup();
        let rank: HashMap<&(u32, Vec<u32>), u32> = distinct
            .iter()
            .enumerate()
            .map(|(i, s)| (*s, i as u32))
            .collect();
        let n1: Vec<u32> = s1.iter().map(|s| rank[s]).collect();
        let n2: Vec<u32> = s2.iter().map(|s| rank[s]).collect();
        let mut h1 = vec![0usize; distinct.len()];
        let mut h2 = vec![0usize; distinct.len()];
        for &x in &n1 {
            h1[x as usize] += 1;
        }
        for &x in &n2 {
            h2[x as usize] += 1;
        }
        *c1 = n1;
        *c2 = n2;
        if h1 != h2 {
            return false;
        }
        let now = distinct.len();
        if now == classes {
            return true;
        }
        classes = now;
    }
}

fn count_classes(c: &[u32]) -> usize {
    let mut v = c.to_vec();
    v.sort_unstable();
    v.dedup();
    v.len()
}

fn search(g1: &Graph, g2: &Graph, mut c1: Vec<u32>, mut c2: Vec<u32>, budget: &mut u64) -> Search {
    if !refine(g1, g2, &mut c1, &mut c2) {
        return Search::None;
    }
    let max = c1.iter().copied().max().unwrap_or(0) as usize;
    let mut size = vec![0usize; max + 1];
    for &x in &c1 {
        size[x as usize] += 1;
    }
    let target = (0..=max)
        .filter(|&k| size[k] > 1)
        .min_by_key(|&k| (size[k], k));
    let Some(target) = target else {
        return match witness_from(g1, g2, &c1, &c2) {
            Some(w) => Search::Found(w),
            None => Search::None,
        };
    };
    let v = c1.iter().position(|&x| x as usize == target).unwrap();
    let fresh = max as u32 + 1;
    for w in (0..c2.len()).filter(|&w| c2[w] as usize == target) {
        if *budget == 0 {
            return Search::OutOfBudget;
        }
        *budget -= 1;
        let mut d1 = c1.clone();
        let mut d2 = c2.clone();
        d1[v] = fresh;
        d2[w] = fresh;
        match search(g1, g2, d1, d2, budget) {
            Search::None => continue,
            other => return other,
        }
    }
    Search::None
}

fn witness_from(g1: &Graph, g2: &Graph, c1: &[u32], c2: &[u32]) -> Option<Witness> {
    let mut where2: HashMap<u32, usize> = HashMap::new();
    for (v, &x) in c2.iter().enumerate() {
        where2.insert(x, v);
    }
    let mut sigma = vec![0usize; g1.n];
    let mut pis = Vec::with_capacity(g1.n);
    for i in 0..g1.n {
        let j = where2[&c1[g1.m + i]].checked_sub(g2.m)?;
        if j >= g2.n || g1.orders[i] != g2.orders[j] {
            return None;
        }
        sigma[i] = j;
        let mut pi = vec![0u8; g1.orders[i] as usize];
        for (s, p) in pi.iter_mut().enumerate() {
            let t = where2[&c1[g1.sym_offset[i] + s]].checked_sub(g2.sym_offset[j])?;
            if t >= g2.orders[j] as usize {
                return None;
            }
            *p = t as u8;
        }
        pis.push(pi);
    }
    Some(Witness { sigma, pis })
}
