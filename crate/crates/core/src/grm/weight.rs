//! Exact minimum distance of linear codes of length ≤ 64.
//!
//! Three routes, chosen by size:
//!
//! - full enumeration of codewords (one representative per scalar multiple);
//! - a meet-in-the-middle search for dependent columns of the parity-check
//!   matrix when the codimension is at most 8;
//! - information-set enumeration for codes invariant under a transitive
//!   permutation group. If some codeword of weight w exists, one of its images
//!   meets a fixed information set of size k in at most ⌊wk/n⌋ positions, so
//!   after enumerating every message of weight ≤ t, all codewords of weight
//!   below (t + 1)n/k have been seen up to the group action.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::lanes::{with_lanes, Lanes, WithLanes};
use crate::error::{Error, Result};
use crate::galois::FieldTable;
use crate::linalg::{combine, Echelon};

/// How a minimum distance was established.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Route {
    Enumeration,
    ParityCheck,
    InformationSet { t: usize },
}

impl std::fmt::Display for Route {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Route::Enumeration => write!(f, "enumeration"),
            Route::ParityCheck => write!(f, "parity-check"),
            Route::InformationSet { t } => write!(f, "information-set(t={t})"),
        }
    }
}

/// A minimum distance together with a codeword attaining it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MeasuredDistance {
    pub d: usize,
    pub route: Route,
    pub witness: Vec<u8>,
}

// Precomputed c · row_j for every row j and scalar c.
fn multiples<L: Lanes>(f: &FieldTable, rows: &[Vec<u8>]) -> Vec<Vec<L>> {
    rows.iter()
        .map(|row| {
            (0..f.order())
                .map(|c| {
                    let v: Vec<u8> = row.iter().map(|&x| f.sym_mul(c, x)).collect();
                    L::from_symbols(&v)
                })
                .collect()
        })
        .collect()
}

struct Search<'a, L> {
    mult: &'a [Vec<L>],
    q: u8,
    best: u32,
    best_path: Vec<(usize, u8)>,
    path: Vec<(usize, u8)>,
}

impl<L: Lanes> Search<'_, L> {
    fn note(&mut self, w: u32, extra: Option<(usize, u8)>) {
        if w < self.best {
            self.best = w;
            self.best_path = self.path.clone();
            self.best_path.extend(extra);
        }
    }

    // Every combination of rows start.. with nonzero coefficients.
    fn all(&mut self, acc: L, start: usize) {
        let k = self.mult.len();
        for j in start..k {
            for c in 1..self.q {
                let nx = acc.add(&self.mult[j][c as usize]);
                let w = nx.weight();
                self.note(w, Some((j, c)));
                if j + 1 < k {
                    self.path.push((j, c));
                    self.all(nx, j + 1);
                    self.path.pop();
                }
            }
        }
    }

    // Combinations of exactly `left` more rows from start.., nonzero coefficients.
    fn level(&mut self, acc: L, start: usize, left: usize) {
        let k = self.mult.len();
        if left == 1 {
            let mut best = self.best;
            let mut hit = None;
            for j in start..k {
                for c in 1..self.q {
                    let w = acc.add(&self.mult[j][c as usize]).weight();
                    if w < best {
                        best = w;
                        hit = Some((j, c));
                    }
                }
            }
            if let Some(h) = hit {
                self.note(best, Some(h));
            }
            return;
        }
        for j in start..=k - left {
            for c in 1..self.q {
                let nx = acc.add(&self.mult[j][c as usize]);
                self.path.push((j, c));
                self.level(nx, j + 1, left - 1);
                self.path.pop();
            }
        }
    }

    fn witness(&self, f: &FieldTable, rows: &[Vec<u8>], n: usize) -> Vec<u8> {
        let mut coeffs = vec![0u8; rows.len()];
        for &(j, c) in &self.best_path {
            coeffs[j] = c;
        }
        combine(f, rows, &coeffs, n)
    }
}

struct EnumerateAll<'a> {
    f: &'a FieldTable,
    rows: &'a [Vec<u8>],
    n: usize,
}

impl WithLanes for EnumerateAll<'_> {
    type Out = (u32, Vec<u8>);
    fn run<L: Lanes>(self) -> Self::Out {
        let mult = multiples::<L>(self.f, self.rows);
        let mut s = Search {
            mult: &mult,
            q: self.f.order(),
            best: u32::MAX,
            best_path: Vec::new(),
            path: Vec::new(),
        };
        // Leading coefficient 1: scalar multiples share a weight.
        for j in 0..mult.len() {
            let acc = mult[j][1];
            s.path.push((j, 1));
            s.note(acc.weight(), None);
            s.all(acc, j + 1);
            s.path.pop();
        }
        let w = s.witness(self.f, self.rows, self.n);
        (s.best, w)
    }
}

/// Minimum nonzero weight by enumerating every codeword up to scalars.
pub fn enumerate_min_distance(f: &FieldTable, rows: &[Vec<u8>], n: usize) -> Result<MeasuredDistance> {
    check_shape(rows, n)?;
    let e = Echelon::new(f, rows, n);
    let (d, witness) = with_lanes(
        f.order(),
        EnumerateAll {
            f,
            rows: e.rows(),
            n,
        },
    );
    Ok(MeasuredDistance {
        d: d as usize,
        route: Route::Enumeration,
        witness,
    })
}

fn check_shape(rows: &[Vec<u8>], n: usize) -> Result<()> {
    if n > 64 {
        return Err(Error::TooLarge(format!("length {n} exceeds 64")));
    }
    if rows.is_empty() {
        return Err(Error::BadParameters("the zero code has no minimum distance".into()));
    }
    Ok(())
}

struct InfoSet<'a> {
    f: &'a FieldTable,
    rows: &'a [Vec<u8>],
    n: usize,
}

impl WithLanes for InfoSet<'_> {
    type Out = (u32, usize, Vec<u8>);
    fn run<L: Lanes>(self) -> Self::Out {
        let k = self.rows.len();
        let mult = multiples::<L>(self.f, self.rows);
        let mut s = Search {
            mult: &mult,
            q: self.f.order(),
            best: u32::MAX,
            best_path: Vec::new(),
            path: Vec::new(),
        };
        let mut t = 0;
        loop {
            t += 1;
            for j in 0..=k - t {
                let acc = mult[j][1];
                s.path.push((j, 1));
                if t == 1 {
                    s.note(acc.weight(), None);
                } else {
                    s.level(acc, j + 1, t - 1);
                }
                s.path.pop();
            }
            // Every codeword of weight < (t+1)n/k has an image among those seen.
            if t == k || ((s.best as usize) - 1) * k < (t + 1) * self.n {
                break;
            }
        }
        let w = s.witness(self.f, self.rows, self.n);
        (s.best, t, w)
    }
}

/// Minimum distance of a code invariant under the group generated by
/// `generators` (each a coordinate permutation, `perm[i]` being the image of
/// coordinate i). The invariance and the transitivity of the group are
/// checked before the search.
pub fn info_set_min_distance(
    f: &FieldTable,
    rows: &[Vec<u8>],
    n: usize,
    generators: &[Vec<usize>],
) -> Result<MeasuredDistance> {
    check_shape(rows, n)?;
    let e = Echelon::new(f, rows, n);
    for g in generators {
        if g.len() != n {
            return Err(Error::ShapeMismatch("generator length differs from n".into()));
        }
        for row in e.rows() {
            let mut img = vec![0u8; n];
            for (i, &x) in row.iter().enumerate() {
                img[g[i]] = x;
            }
            if !e.contains(f, &img) {
                return Err(Error::BadParameters(
                    "code is not invariant under the supplied permutations".into(),
                ));
            }
        }
    }
    let mut seen = vec![false; n];
    let mut stack = vec![0usize];
    seen[0] = true;
    while let Some(i) = stack.pop() {
        for g in generators {
            if !seen[g[i]] {
                seen[g[i]] = true;
                stack.push(g[i]);
            }
        }
    }
    if seen.iter().any(|&s| !s) {
        return Err(Error::BadParameters("permutation group is not transitive".into()));
    }
    // In reduced echelon form the pivot columns are an information set on
    // which each row is a unit vector.
    let (d, t, witness) = with_lanes(
        f.order(),
        InfoSet {
            f,
            rows: e.rows(),
            n,
        },
    );
    Ok(MeasuredDistance {
        d: d as usize,
        route: Route::InformationSet { t },
        witness,
    })
}

/// Parity-check matrix: a basis of the dual code.
pub fn parity_check(f: &FieldTable, rows: &[Vec<u8>], n: usize) -> Vec<Vec<u8>> {
    Echelon::new(f, rows, n).null_space(f)
}

// Sparse vector: (position, nonzero coefficient), positions increasing.
type Combo = Vec<(usize, u8)>;

fn syndrome_key(f: &FieldTable, h_cols: &[Vec<u8>], combo: &Combo, negate: bool) -> u64 {
    let r = h_cols.first().map_or(0, |c| c.len());
    let mut s = vec![0u8; r];
    for &(pos, c) in combo {
        for (x, &h) in s.iter_mut().zip(&h_cols[pos]) {
            *x = f.sym_add(*x, f.sym_mul(c, h));
        }
    }
    s.iter().fold(0u64, |acc, &x| {
        let x = if negate { f.sym_neg(x) } else { x };
        acc * f.order() as u64 + x as u64
    })
}

fn for_each_combo(
    n: usize,
    q: u8,
    size: usize,
    lead_one: bool,
    f: &mut dyn FnMut(&Combo) -> bool,
) -> bool {
    fn rec(
        n: usize,
        q: u8,
        start: usize,
        left: usize,
        lead_one: bool,
        cur: &mut Combo,
        f: &mut dyn FnMut(&Combo) -> bool,
    ) -> bool {
        if left == 0 {
            return f(cur);
        }
        for pos in start..=n - left {
            let coeffs = if lead_one && cur.is_empty() { 1..2 } else { 1..q };
            for c in coeffs {
                cur.push((pos, c));
                let stop = rec(n, q, pos + 1, left - 1, lead_one, cur, f);
                cur.pop();
                if stop {
                    return true;
                }
            }
        }
        false
    }
    if size > n {
        return false;
    }
    rec(n, q, 0, size, lead_one, &mut Vec::new(), f)
}

fn sparse_sum(f: &FieldTable, n: usize, a: &Combo, b: &Combo, sub: bool) -> Vec<u8> {
    let mut v = vec![0u8; n];
    for &(p, c) in a {
        v[p] = f.sym_add(v[p], c);
    }
    for &(p, c) in b {
        let c = if sub { f.sym_neg(c) } else { c };
        v[p] = f.sym_add(v[p], c);
    }
    v
}

/// Finds a nonzero vector x of weight ≤ w with Hx = 0, where `h` is the
/// parity-check matrix, by meeting in the middle on syndromes.
pub fn low_weight_codeword(f: &FieldTable, h: &[Vec<u8>], n: usize, w: usize) -> Option<Vec<u8>> {
    let h_cols: Vec<Vec<u8>> = (0..n).map(|j| h.iter().map(|row| row[j]).collect()).collect();
    let a = w / 2;
    let b = w - a;
    let q = f.order();
    let mut table: HashMap<u64, Combo> = HashMap::new();
    let mut found: Option<Vec<u8>> = None;
    for size in 0..=a {
        for_each_combo(n, q, size, false, &mut |combo| {
            let key = syndrome_key(f, &h_cols, combo, false);
            match table.get(&key) {
                Some(other) => {
                    // Two combinations with one syndrome differ by a codeword.
                    found = Some(sparse_sum(f, n, combo, other, true));
                    true
                }
                None => {
                    table.insert(key, combo.clone());
                    false
                }
            }
        });
        if found.is_some() {
            return found;
        }
    }
    for size in 1..=b {
        for_each_combo(n, q, size, true, &mut |combo| {
            let key = syndrome_key(f, &h_cols, combo, true);
            if let Some(other) = table.get(&key) {
                let v = sparse_sum(f, n, other, combo, false);
                if v.iter().any(|&x| x != 0) {
                    found = Some(v);
                    return true;
                }
            }
            false
        });
        if found.is_some() {
            return found;
        }
    }
    None
}

/// Confirms that the code spanned by `rows` has minimum distance exactly `d`:
/// no nonzero codeword of weight ≤ d − 1 exists, and one of weight d does.
/// Needs codimension at most 8.
pub fn low_weight_check(f: &FieldTable, rows: &[Vec<u8>], n: usize, d: usize) -> Result<bool> {
    Ok(low_weight_witness(f, rows, n, d)?.is_some())
}

pub(crate) fn low_weight_witness(
    f: &FieldTable,
    rows: &[Vec<u8>],
    n: usize,
    d: usize,
) -> Result<Option<Vec<u8>>> {
    let e = Echelon::new(f, rows, n);
    let h = e.null_space(f);
    if h.len() > 8 {
        return Err(Error::CodimensionTooLarge(h.len()));
    }
    if d == 0 || d > n || e.rank() == 0 {
        return Ok(None);
    }
    if low_weight_codeword(f, &h, n, d - 1).is_some() {
        return Ok(None);
    }
    let Some(x) = low_weight_codeword(f, &h, n, d) else {
        return Ok(None);
    };
    let weight = x.iter().filter(|&&s| s != 0).count();
    Ok((weight == d && e.contains(f, &x)).then_some(x))
}

/// Minimum distance through [`low_weight_codeword`], increasing the weight
/// until a codeword appears.
pub fn parity_check_min_distance(f: &FieldTable, rows: &[Vec<u8>], n: usize) -> Result<MeasuredDistance> {
    check_shape(rows, n)?;
    let e = Echelon::new(f, rows, n);
    let h = e.null_space(f);
    if h.len() > 8 {
        return Err(Error::CodimensionTooLarge(h.len()));
    }
    for w in 1..=n {
        if let Some(x) = low_weight_codeword(f, &h, n, w) {
            let d = x.iter().filter(|&&s| s != 0).count();
            assert!(e.contains(f, &x), "parity-check witness outside the code");
            return Ok(MeasuredDistance {
                d,
                route: Route::ParityCheck,
                witness: x,
            });
        }
    }
    unreachable!("a nonzero code has a nonzero codeword")
}
