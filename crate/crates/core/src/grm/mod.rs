//! Generalized Reed-Muller codes RM_q(r, m).
//!
//! Points P_1, …, P_n of AG(m, q) are listed lexicographically, first
//! coordinate most significant, using field index order. The basis consists
//! of the reduced monomials X_1^{e_1}···X_m^{e_m} with every e_i ≤ q − 1 and
//! Σ e_i ≤ r, ordered by total degree and then lexicographically.
//!
//! The dimension formula uses the binomial convention C(x, y) = 0 whenever
//! y < 0 or x < y, negative x included.

mod lanes;
mod weight;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::galois::{field, FieldTable};
use crate::linalg::Echelon;
use crate::space::{Code, MixedSpace, Word, ZeroWord};

pub use weight::{
    enumerate_min_distance, info_set_min_distance, low_weight_check, low_weight_codeword,
    parity_check, parity_check_min_distance, MeasuredDistance, Route,
};

/// Largest code length for which generator matrices are built.
pub const MAX_LENGTH: usize = 64;
/// Codes with q^k above this are not expanded into explicit word lists.
pub const EXPANSION_LIMIT: u64 = 1 << 18;
/// Full codeword enumeration is used when q^k is at most this.
pub const ENUMERATION_LIMIT: u64 = 1 << 22;

fn binom(x: i64, y: i64) -> i128 {
    if y < 0 || x < y {
        return 0;
    }
    let mut acc: i128 = 1;
    for i in 0..y {
        acc = acc * (x - i) as i128 / (i + 1) as i128;
    }
    acc
}

fn check_order(q: u8, m: u32, r: i64) -> Result<()> {
    let max = (q as i64 - 1) * m as i64;
    if r < 0 || r > max {
        return Err(Error::OrderOutOfRange { r, max });
    }
    Ok(())
}

/// Dimension of RM_q(r, m):
/// Σ_{i=0}^{r} Σ_{k=0}^{m} (−1)^k C(m, k) C(i − kq + m − 1, i − kq).
pub fn grm_dimension(q: u8, m: u32, r: i64) -> Result<u64> {
    check_order(q, m, r)?;
    let (q, m) = (q as i64, m as i64);
    let mut total: i128 = 0;
    for i in 0..=r {
        for k in 0..=m {
            let sign = if k % 2 == 0 { 1 } else { -1 };
            total += sign * binom(m, k) * binom(i - k * q + m - 1, i - k * q);
        }
    }
    Ok(total as u64)
}

/// Minimum distance of RM_q(r, m): (q − b)·q^{m−a−1} with r = (q − 1)a + b,
/// 0 ≤ b < q − 1; equal to 1 at the top order r = (q − 1)m.
pub fn grm_min_distance(q: u8, m: u32, r: i64) -> Result<u64> {
    check_order(q, m, r)?;
    let a = r / (q as i64 - 1);
    let b = r % (q as i64 - 1);
    if a == m as i64 {
        return Ok(1);
    }
    Ok((q as i64 - b) as u64 * (q as u64).pow(m - a as u32 - 1))
}

/// Parameters (q, m, r) of a generalized Reed-Muller code.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GrmSpec {
    pub q: u8,
    pub m: u32,
    pub r: i64,
}

impl GrmSpec {
    pub fn new(q: u8, m: u32, r: i64) -> Result<GrmSpec> {
        field(q)?;
        if m == 0 {
            return Err(Error::BadParameters("m must be positive".into()));
        }
        check_order(q, m, r)?;
        Ok(GrmSpec { q, m, r })
    }

    /// n = q^m, saturating.
    pub fn length(&self) -> u64 {
        (self.q as u64).saturating_pow(self.m)
    }

    fn check_length(&self) -> Result<usize> {
        let n = self.length();
        if n > MAX_LENGTH as u64 {
            return Err(Error::TooLarge(format!(
                "length q^m = {n} exceeds {MAX_LENGTH}"
            )));
        }
        Ok(n as usize)
    }

    /// The points of AG(m, q) in lexicographic order.
    pub fn points(&self) -> Result<Vec<Vec<u8>>> {
        let n = self.check_length()?;
        let s = MixedSpace::uniform(self.q, self.m as usize)?;
        Ok((0..n as u64).map(|i| s.word_at(i).0).collect())
    }

    /// Exponent vectors of the basis monomials.
    pub fn monomials(&self) -> Vec<Vec<u32>> {
        let q = self.q as u32;
        let m = self.m as usize;
        let mut out = Vec::new();
        let mut e = vec![0u32; m];
        loop {
            if e.iter().sum::<u32>() as i64 <= self.r {
                out.push(e.clone());
            }
            // Odometer over {0..q-1}^m, last exponent fastest.
            let mut i = m;
            loop {
                if i == 0 {
                    out.sort_by_key(|v| (v.iter().sum::<u32>(), v.clone()));
                    return out;
                }
                i -= 1;
                e[i] += 1;
                if e[i] < q {
                    break;
                }
                e[i] = 0;
            }
        }
    }

    /// Indices of the points after translating by `shift`.
    fn translation(&self, f: &FieldTable, points: &[Vec<u8>], shift: &[u8]) -> Vec<usize> {
        let s = MixedSpace::uniform(self.q, self.m as usize).unwrap();
        points
            .iter()
            .map(|p| {
                let moved: Vec<u8> = p.iter().zip(shift).map(|(&x, &y)| f.sym_add(x, y)).collect();
                s.index_of(&moved) as usize
            })
            .collect()
    }

    /// Translations by b·e_j, b running over the F_p-basis of F_q: they
    /// generate the translation group of AG(m, q).
    pub fn translation_generators(&self) -> Result<Vec<Vec<usize>>> {
        let f = field(self.q)?;
        let points = self.points()?;
        let mut gens = Vec::new();
        for j in 0..self.m as usize {
            let mut b = 1u8;
            for _ in 0..f.degree() {
                let mut shift = vec![0u8; self.m as usize];
                shift[j] = b;
                gens.push(self.translation(&f, &points, &shift));
                b = b.saturating_mul(f.characteristic());
            }
        }
        Ok(gens)
    }
}

/// Evaluation vectors of the monomial basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorMatrix {
    pub q: u8,
    pub n: usize,
    pub rows: Vec<Vec<u8>>,
    /// Rank over F_q.
    pub k: usize,
}

impl GeneratorMatrix {
    pub fn field(&self) -> std::sync::Arc<FieldTable> {
        field(self.q).expect("matrix over a supported field")
    }

    pub fn echelon(&self) -> Echelon {
        Echelon::new(&self.field(), &self.rows, self.n)
    }
}

/// Builds the evaluation matrix of RM_q(r, m), and the explicit code when
/// q^k ≤ [`EXPANSION_LIMIT`].
pub fn grm_generate(spec: GrmSpec) -> Result<(GeneratorMatrix, Option<Code>)> {
    let matrix = grm_matrix(spec)?;
    let code = if (spec.q as u64)
        .checked_pow(matrix.k as u32)
        .is_some_and(|size| size <= EXPANSION_LIMIT)
    {
        Some(expand(&matrix)?)
    } else {
        None
    };
    Ok((matrix, code))
}

pub fn grm_matrix(spec: GrmSpec) -> Result<GeneratorMatrix> {
    let n = spec.check_length()?;
    let f = field(spec.q)?;
    let points = spec.points()?;
    let rows: Vec<Vec<u8>> = spec
        .monomials()
        .iter()
        .map(|e| {
            points
                .iter()
                .map(|p| {
                    p.iter()
                        .zip(e)
                        .fold(1u8, |acc, (&x, &ei)| f.sym_mul(acc, f.sym_pow(x, ei)))
                })
                .collect()
        })
        .collect();
    let k = Echelon::new(&f, &rows, n).rank();
    Ok(GeneratorMatrix {
        q: spec.q,
        n,
        rows,
        k,
    })
}

/// Every codeword of the row space.
pub fn expand(matrix: &GeneratorMatrix) -> Result<Code> {
    let f = matrix.field();
    let e = matrix.echelon();
    let q = matrix.q as u64;
    let size = q
        .checked_pow(e.rank() as u32)
        .filter(|&s| s <= EXPANSION_LIMIT)
        .ok_or_else(|| Error::TooLarge(format!("q^k above {EXPANSION_LIMIT}")))?;
    let mut words = Vec::with_capacity(size as usize);
    let mut stack: Vec<(usize, Vec<u8>)> = vec![(0, vec![0u8; matrix.n])];
    while let Some((j, acc)) = stack.pop() {
        if j == e.rank() {
            words.push(Word(acc));
            continue;
        }
        for c in 0..matrix.q {
            let v: Vec<u8> = acc
                .iter()
                .zip(&e.rows()[j])
                .map(|(&a, &b)| f.sym_add(a, f.sym_mul(c, b)))
                .collect();
            stack.push((j + 1, v));
        }
    }
    Code::new(MixedSpace::uniform(matrix.q, matrix.n)?, words, ZeroWord::Required)
}

/// Exact minimum distance of RM_q(r, m), choosing the cheapest exact route.
pub fn measure_min_distance(spec: GrmSpec, matrix: &GeneratorMatrix) -> Result<MeasuredDistance> {
    let f = matrix.field();
    let small = (spec.q as u64)
        .checked_pow(matrix.k as u32)
        .is_some_and(|s| s <= ENUMERATION_LIMIT);
    if small {
        return enumerate_min_distance(&f, &matrix.rows, matrix.n);
    }
    if matrix.n - matrix.k <= 8 {
        return parity_check_min_distance(&f, &matrix.rows, matrix.n);
    }
    let gens = spec.translation_generators()?;
    info_set_min_distance(&f, &matrix.rows, matrix.n, &gens)
}

/// One row of the parameter table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GrmTableRow {
    pub q: u8,
    pub m: u32,
    pub r: i64,
    pub n: usize,
    pub k_formula: u64,
    pub k_rank: usize,
    pub d_formula: u64,
    pub d_measured: usize,
    pub route: Route,
}

impl GrmTableRow {
    pub fn matches(&self) -> bool {
        self.k_formula == self.k_rank as u64 && self.d_formula == self.d_measured as u64
    }
}

pub fn grm_table_row(q: u8, m: u32, r: i64) -> Result<GrmTableRow> {
    let spec = GrmSpec::new(q, m, r)?;
    let matrix = grm_matrix(spec)?;
    let measured = measure_min_distance(spec, &matrix)?;
    Ok(GrmTableRow {
        q,
        m,
        r,
        n: matrix.n,
        k_formula: grm_dimension(q, m, r)?,
        k_rank: matrix.k,
        d_formula: grm_min_distance(q, m, r)?,
        d_measured: measured.d,
        route: measured.route,
    })
}

/// The (q, m) pairs with q ∈ {2, 3, 4, 5, 7, 8, 9} and q^m ≤ 64.
pub fn table_range() -> Vec<(u8, u32)> {
    let mut out = Vec::new();
    for q in [2u8, 3, 4, 5, 7, 8, 9] {
        let mut m = 1;
        while (q as u64).pow(m) <= MAX_LENGTH as u64 {
            out.push((q, m));
            m += 1;
        }
    }
    out
}

/// Outcome of a Reed-Muller-likeness check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RmLikeCertificate {
    pub q: u8,
    pub m: u32,
    pub r: i64,
    pub expected_size: Option<u128>,
    pub size: u64,
    pub expected_distance: Option<u64>,
    pub distance: Option<usize>,
    pub pass: bool,
    pub violation: Option<String>,
}

/// A code is RM-like of order r when it has the length, size and minimum
/// distance of RM_q(r, m). Linearity is not required.
pub fn is_rm_like(c: &Code, q: u8, m: u32, r: i64) -> RmLikeCertificate {
    let mut cert = RmLikeCertificate {
        q,
        m,
        r,
        expected_size: None,
        size: c.len() as u64,
        expected_distance: None,
        distance: None,
        pass: false,
        violation: None,
    };
    let (k, d) = match (grm_dimension(q, m, r), grm_min_distance(q, m, r)) {
        (Ok(k), Ok(d)) => (k, d),
        (Err(e), _) | (_, Err(e)) => {
            cert.violation = Some(e.to_string());
            return cert;
        }
    };
    cert.expected_size = (q as u128).checked_pow(k as u32);
    cert.expected_distance = Some(d);
    if c.space().uniform_order() != Some(q) {
        cert.violation = Some(format!("alphabet orders {:?} are not all {q}", c.space().orders()));
        return cert;
    }
    if (c.length() as u64) != (q as u64).saturating_pow(m) {
        cert.violation = Some(format!("length {} differs from q^m", c.length()));
        return cert;
    }
    if cert.expected_size != Some(c.len() as u128) {
        cert.violation = Some(format!("size {} differs from q^{k}", c.len()));
        return cert;
    }
    let measured = if c.len() == 1 { Ok(c.length() + 1) } else { c.minimum_distance() };
    match measured {
        Ok(md) => {
            cert.distance = Some(md);
            // A single word meets the distance requirement only for k = 0.
            if c.len() == 1 || md as u64 == d {
                cert.pass = true;
            } else {
                cert.violation = Some(format!("minimum distance {md} differs from {d}"));
            }
        }
        Err(e) => cert.violation = Some(e.to_string()),
    }
    cert
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::null_space;

    #[test]
    fn dimension_examples() {
        assert_eq!(grm_dimension(2, 3, 1).unwrap(), 4);
        assert_eq!(grm_dimension(3, 2, 2).unwrap(), 6);
        for (q, m) in table_range() {
            let top = (q as i64 - 1) * m as i64;
            assert_eq!(grm_dimension(q, m, top).unwrap(), (q as u64).pow(m));
        }
        assert_eq!(
            grm_dimension(2, 3, 4).unwrap_err(),
            Error::OrderOutOfRange { r: 4, max: 3 }
        );
        assert!(grm_dimension(2, 3, -1).is_err());
    }

    #[test]
    fn distance_examples() {
        assert_eq!(grm_min_distance(3, 2, 0).unwrap(), 9);
        assert_eq!(grm_min_distance(5, 2, 0).unwrap(), 25);
        assert_eq!(grm_min_distance(3, 2, 3).unwrap(), 2);
        assert_eq!(grm_min_distance(3, 2, 1).unwrap(), 6);
        assert_eq!(grm_min_distance(3, 2, 4).unwrap(), 1);
    }

    #[test]
    fn small_codes() {
        let (_, c) = grm_generate(GrmSpec::new(2, 2, 0).unwrap()).unwrap();
        let words: Vec<Vec<u8>> = c.unwrap().words().iter().map(|w| w.0.clone()).collect();
        assert_eq!(words, vec![vec![0, 0, 0, 0], vec![1, 1, 1, 1]]);

        let (g, c) = grm_generate(GrmSpec::new(2, 3, 1).unwrap()).unwrap();
        let c = c.unwrap();
        assert_eq!((g.n, g.k, c.len()), (8, 4, 16));
        assert_eq!(c.minimum_distance().unwrap(), 4);

        let (g, c) = grm_generate(GrmSpec::new(3, 1, 1).unwrap()).unwrap();
        let c = c.unwrap();
        assert_eq!((g.n, g.k, c.len()), (3, 2, 9));
        assert_eq!(c.minimum_distance().unwrap(), 2);
        let f = g.field();
        assert!(c
            .words()
            .iter()
            .all(|w| w.iter().fold(0, |a, &x| f.sym_add(a, x)) == 0));
    }

    #[test]
    fn ternary_order_one_has_distance_six() {
        let spec = GrmSpec::new(3, 2, 1).unwrap();
        let (g, c) = grm_generate(spec).unwrap();
        assert_eq!(c.unwrap().len(), 27);
        assert_eq!(measure_min_distance(spec, &g).unwrap().d, 6);
    }

    #[test]
    fn parity_check_route_examples() {
        for (q, m, r, d) in [(2u8, 3u32, 1i64, 4usize), (3, 2, 2, 3), (3, 2, 3, 2)] {
            let g = grm_matrix(GrmSpec::new(q, m, r).unwrap()).unwrap();
            let f = g.field();
            assert!(low_weight_check(&f, &g.rows, g.n, d).unwrap());
            assert!(!low_weight_check(&f, &g.rows, g.n, d + 1).unwrap());
        }
    }

    #[test]
    fn nested_and_even() {
        for (q, m) in [(2u8, 3u32), (3, 2), (4, 1), (5, 1), (4, 2)] {
            let top = (q as i64 - 1) * m as i64;
            for r in 0..top {
                let lo = grm_matrix(GrmSpec::new(q, m, r).unwrap()).unwrap();
                let hi = grm_matrix(GrmSpec::new(q, m, r + 1).unwrap()).unwrap();
                let f = lo.field();
                let e = hi.echelon();
                assert!(lo.rows.iter().all(|row| e.contains(&f, row)));
                // Orders below the top consist of even words.
                assert!(lo
                    .rows
                    .iter()
                    .all(|row| row.iter().fold(0, |a, &x| f.sym_add(a, x)) == 0));
            }
        }
    }

    #[test]
    fn dual_identities() {
        for (q, m) in [(2u8, 2u32), (2, 3), (2, 4), (3, 1), (3, 2), (4, 1), (4, 2), (5, 1), (7, 1)] {
            let top = (q as i64 - 1) * m as i64;
            let g = grm_matrix(GrmSpec::new(q, m, top - 1).unwrap()).unwrap();
            let f = g.field();
            let dual = null_space(&f, &g.rows, g.n);
            assert_eq!(dual.len(), 1);
            assert!(dual[0].iter().all(|&x| x == dual[0][0] && x != 0));
            if top >= 2 {
                let g2 = grm_matrix(GrmSpec::new(q, m, top - 2).unwrap()).unwrap();
                let dual2 = null_space(&f, &g2.rows, g2.n);
                assert_eq!(dual2.len(), m as usize + 1);
                let order1 = grm_matrix(GrmSpec::new(q, m, 1).unwrap()).unwrap().echelon();
                assert!(dual2.iter().all(|v| order1.contains(&f, v)));
            }
        }
    }

    #[test]
    fn rm_like_examples() {
        let (_, c) = grm_generate(GrmSpec::new(3, 2, 2).unwrap()).unwrap();
        let c = c.unwrap();
        assert!(is_rm_like(&c, 3, 2, 2).pass);
        // A translate of the code by a word of RM_3(3, 2) outside it.
        let mut v = vec![0u8; 9];
        v[0] = 1;
        v[1] = 2;
        let coset = c.translate(&v);
        assert!(!coset.contains_zero());
        assert!(is_rm_like(&coset, 3, 2, 2).pass);

        let s = MixedSpace::uniform(2, 4).unwrap();
        let even: Vec<Word> = s
            .words(crate::space::Gate::default())
            .unwrap()
            .filter(|w| w.weight() % 2 == 0)
            .collect();
        let even = Code::new(s, even, ZeroWord::Required).unwrap();
        let cert = is_rm_like(&even, 2, 2, 0);
        assert!(!cert.pass);
        assert!(cert.violation.unwrap().contains("size"));
    }

    #[test]
    fn translations_preserve_codes() {
        let spec = GrmSpec::new(4, 2, 3).unwrap();
        let g = grm_matrix(spec).unwrap();
        let f = g.field();
        let e = g.echelon();
        let gens = spec.translation_generators().unwrap();
        assert_eq!(gens.len(), 4);
        for perm in gens {
            for row in &g.rows {
                let mut img = vec![0u8; g.n];
                for (i, &x) in row.iter().enumerate() {
                    img[perm[i]] = x;
                }
                assert!(e.contains(&f, &img));
            }
        }
    }

    #[test]
    fn too_long() {
        assert!(matches!(
            grm_generate(GrmSpec::new(3, 4, 1).unwrap()),
            Err(Error::TooLarge(_))
        ));
    }
}
