//! Finite fields F_q for prime powers q ≤ 16, as dense lookup tables.
//!
//! Elements are indices in `0..q`. Index 0 is the additive identity and 1 the
//! multiplicative identity. For q = p^t with t > 1 the index is the base-p
//! encoding of the coefficient vector of the polynomial representative, the
//! constant term being the least significant digit. So in F_4 (reduction
//! polynomial x² + x + 1) the labels are 0, 1, α = x ↦ 2 and β = x + 1 ↦ 3.
//!
//! Reduction polynomials are the smallest irreducible monic polynomials of
//! degree t when the lower coefficients (c_{t-1}, …, c_0) are compared
//! lexicographically:
//!
//! | q  | polynomial      |
//! |----|-----------------|
//! | 4  | x² + x + 1      |
//! | 8  | x³ + x + 1      |
//! | 9  | x² + 1          |
//! | 16 | x⁴ + x + 1      |
//!
//! Because addition acts digit-wise modulo p, the additive group of every
//! table is visibly elementary abelian: in characteristic 2 it is plain XOR
//! on the indices.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};

/// Largest supported field order.
pub const MAX_ORDER: u32 = 16;

/// An element of a field, identified by its table index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FieldElem(pub u8);

impl FieldElem {
    pub const ZERO: FieldElem = FieldElem(0);
    pub const ONE: FieldElem = FieldElem(1);

    pub fn index(self) -> u8 {
        self.0
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Addition, multiplication, negation and inversion tables for F_q.
#[derive(Clone, PartialEq, Eq)]
pub struct FieldTable {
    q: u8,
    p: u8,
    t: u8,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    // inv[0] is a placeholder; `inv` refuses zero.
    inv: Vec<u8>,
    reduction_poly: Vec<u8>,
}

impl fmt::Debug for FieldTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldTable")
            .field("q", &self.q)
            .field("p", &self.p)
            .field("t", &self.t)
            .field("reduction_poly", &self.reduction_poly)
            .finish()
    }
}

/// Splits `q` into (p, t) with q = p^t, or reports why it cannot.
pub fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q % d == 0)?;
    let mut rest = q;
    let mut t = 0;
    while rest % p == 0 {
        rest /= p;
        t += 1;
    }
    (rest == 1).then_some((p, t))
}

/// Builds the table for F_q. Deterministic: repeated calls return equal tables.
pub fn make_field(q: u32) -> Result<FieldTable> {
    let (p, t) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
    if q > MAX_ORDER {
        return Err(Error::Unsupported(format!(
            "field order {q} exceeds {MAX_ORDER}"
        )));
    }
    let (p, t) = (p as usize, t as usize);
    let q = q as usize;
    let reduction = if t == 1 {
        Vec::new()
    } else {
        smallest_irreducible(p, t)
    };

    let digits = |x: usize| -> Vec<usize> {
        let mut v = vec![0; t];
        let mut x = x;
        for d in v.iter_mut() {
            *d = x % p;
            x /= p;
        }
        v
    };
    let undigits = |v: &[usize]| -> usize { v.iter().rev().fold(0, |acc, &d| acc * p + d) };

    let mut add = vec![0u8; q * q];
    let mut mul = vec![0u8; q * q];
    for a in 0..q {
        let da = digits(a);
        for b in 0..q {
            let db = digits(b);
            let sum: Vec<usize> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
            add[a * q + b] = undigits(&sum) as u8;
            mul[a * q + b] = undigits(&poly_mulmod(&da, &db, &reduction, p)) as u8;
        }
    }
    let neg = (0..q)
        .map(|a| (0..q).find(|&b| add[a * q + b] == 0).unwrap() as u8)
        .collect();
    let mut inv = vec![0u8; q];
    for a in 1..q {
        inv[a] = (1..q).find(|&b| mul[a * q + b] == 1).unwrap() as u8;
    }
    Ok(FieldTable {
        q: q as u8,
        p: p as u8,
        t: t as u8,
        add,
        mul,
        neg,
        inv,
        reduction_poly: reduction.iter().map(|&c| c as u8).collect(),
    })
}

/// Shared, lazily built table for F_q.
pub fn field(q: u8) -> Result<Arc<FieldTable>> {
    static CACHE: OnceLock<Mutex<HashMap<u8, Arc<FieldTable>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(f) = cache.lock().unwrap().get(&q) {
        return Ok(f.clone());
    }
    let f = Arc::new(make_field(q as u32)?);
    cache.lock().unwrap().insert(q, f.clone());
    Ok(f)
}

// Product of two polynomials (coefficient vectors, low degree first) reduced
// modulo the monic `modulus` (full coefficient list including the leading 1).
fn poly_mulmod(a: &[usize], b: &[usize], modulus: &[usize], p: usize) -> Vec<usize> {
    let t = a.len();
    if t == 1 {
        return vec![(a[0] * b[0]) % p];
    }
    let mut prod = vec![0usize; 2 * t - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    poly_rem(&mut prod, modulus, p);
    prod.truncate(t);
    prod.resize(t, 0);
    prod
}

fn poly_rem(num: &mut [usize], modulus: &[usize], p: usize) {
    let deg = modulus.len() - 1;
    for top in (deg..num.len()).rev() {
        let c = num[top];
        if c == 0 {
            continue;
        }
        for (k, &m) in modulus.iter().enumerate() {
            let idx = top - deg + k;
            num[idx] = (num[idx] + (p - c) * m) % p;
        }
    }
}

fn smallest_irreducible(p: usize, t: usize) -> Vec<usize> {
    // Enumerate lower coefficients so that (c_{t-1}, ..., c_0) increases
    // lexicographically; that is the base-p counter with c_0 least significant.
    let count = p.pow(t as u32);
    for code in 0..count {
        let mut poly = Vec::with_capacity(t + 1);
        let mut x = code;
        for _ in 0..t {
            poly.push(x % p);
            x /= p;
        }
        poly.push(1);
        if is_irreducible(&poly, p) {
            return poly;
        }
    }
    unreachable!("an irreducible polynomial of every degree exists")
}

fn is_irreducible(poly: &[usize], p: usize) -> bool {
    let deg = poly.len() - 1;
    for d in 1..=deg / 2 {
        for code in 0..p.pow(d as u32) {
            let mut divisor = Vec::with_capacity(d + 1);
            let mut x = code;
            for _ in 0..d {
                divisor.push(x % p);
                x /= p;
            }
            divisor.push(1);
            let mut rem = poly.to_vec();
            poly_rem(&mut rem, &divisor, p);
            if rem[..d].iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

impl FieldTable {
    pub fn order(&self) -> u8 {
        self.q
    }

    pub fn characteristic(&self) -> u8 {
        self.p
    }

    pub fn degree(&self) -> u8 {
        self.t
    }

    /// Full coefficient list (low degree first, leading 1 included) of the
    /// reduction polynomial; empty for prime fields.
    pub fn reduction_poly(&self) -> &[u8] {
        &self.reduction_poly
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElem> {
        (0..self.q).map(FieldElem)
    }

    pub fn elem(&self, index: u8) -> Result<FieldElem> {
        if index < self.q {
            Ok(FieldElem(index))
        } else {
            Err(Error::SymbolOutOfRange {
                symbol: index,
                order: self.q,
            })
        }
    }

    pub fn add(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        FieldElem(self.sym_add(a.0, b.0))
    }

    pub fn sub(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        FieldElem(self.sym_sub(a.0, b.0))
    }

    pub fn mul(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        FieldElem(self.sym_mul(a.0, b.0))
    }

    pub fn neg(&self, a: FieldElem) -> FieldElem {
        FieldElem(self.sym_neg(a.0))
    }

    pub fn inv(&self, a: FieldElem) -> Result<FieldElem> {
        if a.0 == 0 {
            return Err(Error::ZeroInverse);
        }
        Ok(FieldElem(self.inv[a.0 as usize]))
    }

    pub fn pow(&self, a: FieldElem, e: u32) -> FieldElem {
        FieldElem(self.sym_pow(a.0, e))
    }

    // Raw symbol-level operations used by word and matrix code.

    #[inline]
    pub fn sym_add(&self, a: u8, b: u8) -> u8 {
        self.add[a as usize * self.q as usize + b as usize]
    }

    #[inline]
    pub fn sym_sub(&self, a: u8, b: u8) -> u8 {
        self.sym_add(a, self.neg[b as usize])
    }

    #[inline]
    pub fn sym_mul(&self, a: u8, b: u8) -> u8 {
        self.mul[a as usize * self.q as usize + b as usize]
    }

    #[inline]
    pub fn sym_neg(&self, a: u8) -> u8 {
        self.neg[a as usize]
    }

    /// Inverse of a nonzero symbol. Panics on zero.
    #[inline]
    pub fn sym_inv(&self, a: u8) -> u8 {
        assert!(a != 0, "inverse of zero");
        self.inv[a as usize]
    }

    pub fn sym_pow(&self, a: u8, e: u32) -> u8 {
        let mut acc = 1u8;
        for _ in 0..e {
            acc = self.sym_mul(acc, a);
        }
        acc
    }
}
