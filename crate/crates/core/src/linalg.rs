//! Dense linear algebra over a [`FieldTable`]: echelon forms, rank, null
//! spaces and span membership. Vectors are symbol slices.

use crate::galois::FieldTable;

/// Reduced row echelon form of a list of vectors.
#[derive(Clone, Debug)]
pub struct Echelon {
    rows: Vec<Vec<u8>>,
    pivots: Vec<usize>,
    ncols: usize,
}

impl Echelon {
    pub fn new(f: &FieldTable, rows: &[Vec<u8>], ncols: usize) -> Echelon {
        let mut m: Vec<Vec<u8>> = rows.to_vec();
        let mut pivots = Vec::new();
        let mut r = 0;
        for col in 0..ncols {
            let Some(pr) = (r..m.len()).find(|&i| m[i][col] != 0) else {
                continue;
            };
            m.swap(r, pr);
            let inv = f.sym_inv(m[r][col]);
            for x in m[r].iter_mut() {
                *x = f.sym_mul(*x, inv);
            }
            let pivot_row = m[r].clone();
            for (i, row) in m.iter_mut().enumerate() {
                if i == r || row[col] == 0 {
                    continue;
                }
                let c = row[col];
                for (x, &y) in row.iter_mut().zip(&pivot_row) {
                    *x = f.sym_sub(*x, f.sym_mul(c, y));
                }
            }
            pivots.push(col);
            r += 1;
            if r == m.len() {
                break;
            }
        }
        m.truncate(r);
        Echelon {
            rows: m,
            pivots,
            ncols,
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<u8>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Remainder of `v` after clearing every pivot column.
    pub fn reduce(&self, f: &FieldTable, v: &[u8]) -> Vec<u8> {
        let mut v = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let c = v[p];
            if c == 0 {
                continue;
            }
            for (x, &y) in v.iter_mut().zip(row) {
                *x = f.sym_sub(*x, f.sym_mul(c, y));
            }
        }
        v
    }

    pub fn contains(&self, f: &FieldTable, v: &[u8]) -> bool {
        self.reduce(f, v).iter().all(|&x| x == 0)
    }

    /// Basis of {x : row · x = 0 for every row}.
    pub fn null_space(&self, f: &FieldTable) -> Vec<Vec<u8>> {
        let mut is_pivot = vec![false; self.ncols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.ncols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![0u8; self.ncols];
            v[free] = 1;
            for (row, &p) in self.rows.iter().zip(&self.pivots) {
                v[p] = f.sym_neg(row[free]);
            }
            basis.push(v);
        }
        basis
    }
}

pub fn rank(f: &FieldTable, rows: &[Vec<u8>], ncols: usize) -> usize {
    Echelon::new(f, rows, ncols).rank()
}

pub fn null_space(f: &FieldTable, rows: &[Vec<u8>], ncols: usize) -> Vec<Vec<u8>> {
    Echelon::new(f, rows, ncols).null_space(f)
}

/// Sum of `c_i · rows[i]`.
pub fn combine(f: &FieldTable, rows: &[Vec<u8>], coeffs: &[u8], ncols: usize) -> Vec<u8> {
    let mut out = vec![0u8; ncols];
    for (row, &c) in rows.iter().zip(coeffs) {
        if c == 0 {
            continue;
        }
        for (x, &y) in out.iter_mut().zip(row) {
            *x = f.sym_add(*x, f.sym_mul(c, y));
        }
    }
    out
}

pub fn dot(f: &FieldTable, a: &[u8], b: &[u8]) -> u8 {
    a.iter()
        .zip(b)
        .fold(0, |acc, (&x, &y)| f.sym_add(acc, f.sym_mul(x, y)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galois::make_field;

    #[test]
    fn rank_and_null_space_over_f3() {
        let f = make_field(3).unwrap();
        let rows = vec![vec![1, 1, 1, 1], vec![0, 1, 2, 0], vec![1, 2, 0, 1]];
        let e = Echelon::new(&f, &rows, 4);
        assert_eq!(e.rank(), 2);
        let ns = e.null_space(&f);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            for r in &rows {
                assert_eq!(dot(&f, r, v), 0);
            }
        }
    }

    #[test]
    fn span_membership_over_f4() {
        let f = make_field(4).unwrap();
        let rows = vec![vec![1, 2, 3], vec![0, 1, 1]];
        let e = Echelon::new(&f, &rows, 3);
        let v = combine(&f, &rows, &[3, 2], 3);
        assert!(e.contains(&f, &v));
        assert!(!e.contains(&f, &[0, 0, 1]));
    }
}
