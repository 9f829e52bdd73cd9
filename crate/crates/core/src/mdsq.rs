//! Distance-2 MDS codes, Latin hypercubes and n-ary quasigroups.
//!
//! Quasigroup symbols are 1-based, {1..k}; code symbols are 0-based field
//! indices. [`symbol_to_index`] and [`index_to_symbol`] are the only places
//! where the two conventions meet.

use std::collections::HashSet;
use std::fmt::Write;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{parse_err, Error, Result};
use crate::galois::field;
use crate::space::{Code, MixedSpace, Word, ZeroWord};

/// Largest table (k^arity cells) handled explicitly.
pub const TABLE_LIMIT: u64 = 1 << 20;
/// Largest distance-2 MDS code built by [`linear_mds2`].
pub const LINEAR_MDS2_LIMIT: u64 = 1 << 21;

/// Quasigroup symbol j ∈ {1..k} to code symbol j − 1.
pub fn symbol_to_index(j: u8) -> u8 {
    j - 1
}

/// Code symbol s to quasigroup symbol s + 1.
pub fn index_to_symbol(s: u8) -> u8 {
    s + 1
}

fn table_size(order: usize, arity: usize) -> Result<usize> {
    (order as u64)
        .checked_pow(arity as u32)
        .filter(|&s| s <= TABLE_LIMIT)
        .map(|s| s as usize)
        .ok_or_else(|| Error::TooLarge(format!("table of order {order} and arity {arity}")))
}

/// Checks that every axis-aligned line of a k^n array of 0-based symbols is a
/// permutation. Returns the first failing axis.
fn first_non_latin_axis(cells: &[u8], order: usize, dim: usize) -> Option<usize> {
    (0..dim).into_par_iter().find_first(|&axis| {
        let stride = order.pow((dim - 1 - axis) as u32);
        let mut seen = vec![false; order];
        for base in 0..cells.len() {
            if (base / stride) % order != 0 {
                continue;
            }
            seen.iter_mut().for_each(|s| *s = false);
            for t in 0..order {
                let v = cells[base + t * stride] as usize;
                if v >= order || seen[v] {
                    return true;
                }
                seen[v] = true;
            }
        }
        false
    })
}

/// An n-ary quasigroup of order k, stored as its table in lexicographic
/// argument order. Arguments and values are 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quasigroup {
    arity: usize,
    order: usize,
    table: Vec<u8>,
}

impl Quasigroup {
    /// Validates the table: right length, symbols in range, Latin in every
    /// argument.
    pub fn new(arity: usize, order: usize, table: Vec<u8>) -> Result<Quasigroup> {
        if arity == 0 || order == 0 || order > 255 {
            return Err(Error::BadParameters(format!(
                "arity {arity} and order {order} must be in 1.. and 1..=255"
            )));
        }
        let size = table_size(order, arity)?;
        if table.len() != size {
            return Err(Error::ShapeMismatch(format!(
                "table has {} cells, expected {size}",
                table.len()
            )));
        }
        if let Some(&bad) = table.iter().find(|&&v| v == 0 || v as usize > order) {
            return Err(Error::SymbolOutOfRange {
                symbol: bad,
                order: order as u8,
            });
        }
        let cells: Vec<u8> = table.iter().map(|&v| symbol_to_index(v)).collect();
        if let Some(axis) = first_non_latin_axis(&cells, order, arity) {
            return Err(Error::NotLatin { axis });
        }
        Ok(Quasigroup {
            arity,
            order,
            table,
        })
    }

    /// Tabulates `f` over all 1-based argument tuples.
    pub fn from_fn(arity: usize, order: usize, f: impl Fn(&[u8]) -> u8) -> Result<Quasigroup> {
        let size = table_size(order, arity)?;
        let mut args = vec![1u8; arity];
        let mut table = Vec::with_capacity(size);
        for _ in 0..size {
            table.push(f(&args));
            for a in args.iter_mut().rev() {
                if (*a as usize) < order {
                    *a += 1;
                    break;
                }
                *a = 1;
            }
        }
        Quasigroup::new(arity, order, table)
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn table(&self) -> &[u8] {
        &self.table
    }

    fn position(&self, args: &[u8]) -> usize {
        args.iter()
            .fold(0, |acc, &j| acc * self.order + symbol_to_index(j) as usize)
    }

    /// f(j_2, …, j_{n+1}) for 1-based arguments.
    pub fn eval(&self, args: &[u8]) -> u8 {
        assert_eq!(args.len(), self.arity, "wrong number of arguments");
        self.table[self.position(args)]
    }

    /// Lexicographic list of all argument tuples (1-based).
    pub fn arguments(&self) -> impl Iterator<Item = Vec<u8>> + '_ {
        (0..self.table.len()).map(move |mut i| {
            let mut args = vec![0u8; self.arity];
            for a in args.iter_mut().rev() {
                *a = index_to_symbol((i % self.order) as u8);
                i /= self.order;
            }
            args
        })
    }
}

/// The multiplication table of a quasigroup as a cell array of 0-based
/// symbols.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatinHypercube {
    dim: usize,
    order: usize,
    cells: Vec<u8>,
}

impl LatinHypercube {
    pub fn new(dim: usize, order: usize, cells: Vec<u8>) -> Result<LatinHypercube> {
        let table = cells.iter().map(|&c| index_to_symbol(c)).collect();
        Quasigroup::new(dim, order, table)?;
        Ok(LatinHypercube { dim, order, cells })
    }

    pub fn from_quasigroup(g: &Quasigroup) -> LatinHypercube {
        LatinHypercube {
            dim: g.arity,
            order: g.order,
            cells: g.table.iter().map(|&v| symbol_to_index(v)).collect(),
        }
    }

    pub fn to_quasigroup(&self) -> Quasigroup {
        Quasigroup {
            arity: self.dim,
            order: self.order,
            table: self.cells.iter().map(|&c| index_to_symbol(c)).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn cells(&self) -> &[u8] {
        &self.cells
    }

    /// Cell at 0-based coordinates.
    pub fn cell(&self, coords: &[u8]) -> u8 {
        let i = coords
            .iter()
            .fold(0, |acc, &c| acc * self.order + c as usize);
        self.cells[i]
    }

    pub fn is_latin(&self) -> bool {
        first_non_latin_axis(&self.cells, self.order, self.dim).is_none()
    }
}

/// A q-ary code of length n with q^{n−1} words and minimum distance 2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mds2Code(Code);

impl Mds2Code {
    /// Certifies `c` with [`is_mds2`].
    pub fn new(c: Code) -> Result<Mds2Code> {
        let cert = is_mds2(&c);
        if !cert.pass {
            return Err(Error::NotMds2(cert.violation.unwrap_or_default()));
        }
        Ok(Mds2Code(c))
    }

    pub fn code(&self) -> &Code {
        &self.0
    }

    pub fn into_code(self) -> Code {
        self.0
    }

    pub fn order(&self) -> u8 {
        self.0.space().orders()[0]
    }
}

/// Result of [`is_mds2`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Mds2Certificate {
    pub length: usize,
    pub size: u64,
    pub expected_size: Option<u128>,
    pub min_distance: Option<usize>,
    /// Size q^{n−1} and minimum distance 2.
    pub by_distance: bool,
    /// Deleting any one coordinate is a bijection onto F_q^{n−1}.
    pub by_deletion: bool,
    pub pass: bool,
    pub violation: Option<String>,
}

fn deletion_bijective(c: &Code, q: u8) -> bool {
    let n = c.length();
    let target = (q as u64).pow(n as u32 - 1);
    if c.len() as u64 != target {
        return false;
    }
    (0..n).into_par_iter().all(|pos| {
        let mut hit = vec![false; target as usize];
        for w in c.words() {
            let idx = w
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != pos)
                .fold(0usize, |acc, (_, &s)| acc * q as usize + s as usize);
            if hit[idx] {
                return false;
            }
            hit[idx] = true;
        }
        true
    })
}

/// Certifies a distance-2 MDS code by two independent criteria and checks
/// that they agree.
pub fn is_mds2(c: &Code) -> Mds2Certificate {
    let n = c.length();
    let mut cert = Mds2Certificate {
        length: n,
        size: c.len() as u64,
        expected_size: None,
        min_distance: None,
        by_distance: false,
        by_deletion: false,
        pass: false,
        violation: None,
    };
    let Some(q) = c.space().uniform_order() else {
        cert.violation = Some(format!("mixed alphabets {:?}", c.space().orders()));
        return cert;
    };
    if n < 2 {
        cert.violation = Some("length below 2".into());
        return cert;
    }
    let expected = (q as u128).checked_pow(n as u32 - 1);
    cert.expected_size = expected;
    if c.len() >= 2 {
        cert.min_distance = c.minimum_distance().ok();
    }
    cert.by_distance = expected == Some(c.len() as u128) && cert.min_distance == Some(2);
    cert.by_deletion = expected == Some(c.len() as u128) && deletion_bijective(c, q);
    assert_eq!(
        cert.by_distance, cert.by_deletion,
        "distance and deletion criteria disagree"
    );
    cert.pass = cert.by_distance;
    if !cert.pass {
        cert.violation = Some(if expected != Some(c.len() as u128) {
            format!("size {} differs from q^(n-1)", c.len())
        } else {
            format!("minimum distance {:?} differs from 2", cert.min_distance)
        });
    }
    cert
}

/// The graph {(x, g(x))} of a quasigroup whose order is a field order.
pub fn code_from_quasigroup(g: &Quasigroup) -> Result<Mds2Code> {
    let q = u8::try_from(g.order).map_err(|_| Error::Unsupported(format!("order {}", g.order)))?;
    let space = MixedSpace::uniform(q, g.arity + 1)?;
    let words: Vec<Word> = g
        .arguments()
        .zip(&g.table)
        .map(|(args, &v)| {
            let mut w: Vec<u8> = args.iter().map(|&j| symbol_to_index(j)).collect();
            w.push(symbol_to_index(v));
            Word(w)
        })
        .collect();
    Mds2Code::new(Code::new(space, words, ZeroWord::Optional)?)
}

/// The last coordinate of `c` as a function of the others.
pub fn quasigroup_from_code(c: &Code) -> Result<Quasigroup> {
    let cert = is_mds2(c);
    if !cert.pass {
        return Err(Error::NotMds2(cert.violation.unwrap_or_default()));
    }
    let q = c.space().orders()[0] as usize;
    let arity = c.length() - 1;
    let mut table = vec![0u8; table_size(q, arity)?];
    for w in c.words() {
        let pos = w[..arity].iter().fold(0, |acc, &s| acc * q + s as usize);
        table[pos] = index_to_symbol(w[arity]);
    }
    Quasigroup::new(arity, q, table)
}

/// The zero-sum code {x ∈ F_q^n : Σ x_i = 0}.
pub fn linear_mds2(q: u8, n: usize) -> Result<Mds2Code> {
    let f = field(q)?;
    if !(2..=16).contains(&n) {
        return Err(Error::Unsupported(format!("length {n} outside 2..=16")));
    }
    let prefix = MixedSpace::uniform(q, n - 1)?;
    let size = (q as u64)
        .checked_pow(n as u32 - 1)
        .filter(|&s| s <= LINEAR_MDS2_LIMIT)
        .ok_or_else(|| Error::TooLarge(format!("q^(n-1) above {LINEAR_MDS2_LIMIT}")))?;
    let words: Vec<Word> = (0..size)
        .into_par_iter()
        .map(|i| {
            let mut w = prefix.word_at(i).0;
            let s = w.iter().fold(0, |a, &x| f.sym_add(a, x));
            w.push(f.sym_neg(s));
            Word(w)
        })
        .collect();
    Ok(Mds2Code(Code::new(
        MixedSpace::uniform(q, n)?,
        words,
        ZeroWord::Required,
    )?))
}

/// An abelian group structure on {0..k−1} with a list of automorphisms
/// x ↦ λx.
struct AffineGroup {
    add: Box<dyn Fn(u8, u8) -> u8>,
    scalings: Vec<Vec<u8>>,
}

fn field_group(k: usize) -> Option<AffineGroup> {
    let f = field(u8::try_from(k).ok()?).ok()?;
    let scalings = (1..k as u8)
        .map(|l| (0..k as u8).map(|x| f.sym_mul(l, x)).collect())
        .collect();
    Some(AffineGroup {
        add: Box::new(move |a, b| f.sym_add(a, b)),
        scalings,
    })
}

fn cyclic_group(k: usize) -> AffineGroup {
    fn gcd(a: usize, b: usize) -> usize {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    let scalings = (1..k.max(2))
        .filter(|&l| gcd(l, k) == 1)
        .map(|l| (0..k).map(|x| (l * x % k) as u8).collect())
        .collect();
    AffineGroup {
        add: Box::new(move |a, b| ((a as usize + b as usize) % k) as u8),
        scalings,
    }
}

/// Upper bound on the total number of cells the library materializes.
const LIBRARY_CELLS: u64 = 1 << 24;

/// Deterministic affine quasigroups c + Σ λ_i x_i of order k and the given
/// arity, first over F_k (when k is a supported field order), then over the
/// cyclic group Z_k; duplicates are dropped. For k = 4 the two group
/// structures give the two main classes of Latin squares of order 4.
///
/// All scaling vectors (λ_1, …, λ_n) are used when the library stays within
/// 2^24 cells; otherwise only (λ, 1, …, 1).
pub fn quasigroup_library(order: usize, arity: usize) -> Result<Vec<Quasigroup>> {
    let size = table_size(order, arity)?;
    if arity == 0 || order == 0 {
        return Err(Error::BadParameters("order and arity must be positive".into()));
    }
    if order == 1 {
        return Ok(vec![Quasigroup::new(arity, 1, vec![1; size])?]);
    }
    let mut groups: Vec<AffineGroup> = Vec::new();
    groups.extend(field_group(order));
    groups.push(cyclic_group(order));

    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for g in &groups {
        let units = g.scalings.len();
        let full = (units as u64)
            .checked_pow(arity as u32)
            .and_then(|c| c.checked_mul(order as u64 * size as u64))
            .is_some_and(|cells| cells <= LIBRARY_CELLS);
        let vectors: Vec<Vec<usize>> = if full {
            let mut all = vec![vec![]];
            for _ in 0..arity {
                all = all
                    .into_iter()
                    .flat_map(|v: Vec<usize>| {
                        (0..units).map(move |u| {
                            let mut v = v.clone();
                            v.push(u);
                            v
                        })
                    })
                    .collect();
            }
            all
        } else {
            (0..units)
                .map(|u| {
                    let mut v = vec![0; arity];
                    v[0] = u;
                    v
                })
                .collect()
        };
        for c in 0..order as u8 {
            for lambdas in &vectors {
                let q = Quasigroup::from_fn(arity, order, |args| {
                    let v = args.iter().zip(lambdas).fold(c, |acc, (&j, &l)| {
                        (g.add)(acc, g.scalings[l][symbol_to_index(j) as usize])
                    });
                    index_to_symbol(v)
                })?;
                if seen.insert(q.table.clone()) {
                    out.push(q);
                }
            }
        }
    }
    Ok(out)
}

fn check_perm(p: &[u8], k: usize) -> Result<()> {
    let mut seen = vec![false; k];
    if p.len() != k {
        return Err(Error::ShapeMismatch(format!("permutation of length {}, expected {k}", p.len())));
    }
    for &x in p {
        if x == 0 || x as usize > k || seen[x as usize - 1] {
            return Err(Error::BadParameters(format!("{p:?} is not a permutation of 1..={k}")));
        }
        seen[x as usize - 1] = true;
    }
    Ok(())
}

/// The isotope h(x) = π_0(g(π_1(x_1), …, π_n(x_n))). `perms[i][j − 1]` is the
/// image of j under π_i.
pub fn isotope(g: &Quasigroup, perms: &[Vec<u8>]) -> Result<Quasigroup> {
    if perms.len() != g.arity + 1 {
        return Err(Error::ShapeMismatch(format!(
            "{} permutations, expected {}",
            perms.len(),
            g.arity + 1
        )));
    }
    for p in perms {
        check_perm(p, g.order)?;
    }
    Quasigroup::from_fn(g.arity, g.order, |args| {
        let inner: Vec<u8> = args
            .iter()
            .zip(&perms[1..])
            .map(|(&j, p)| p[j as usize - 1])
            .collect();
        perms[0][g.eval(&inner) as usize - 1]
    })
}

/// All permutations of 1..=k in lexicographic order.
fn permutations(k: usize) -> Vec<Vec<u8>> {
    let mut p: Vec<u8> = (1..=k as u8).collect();
    let mut out = vec![p.clone()];
    loop {
        let Some(i) = (1..k).rev().find(|&i| p[i - 1] < p[i]) else {
            return out;
        };
        let j = (i..k).rev().find(|&j| p[j] > p[i - 1]).unwrap();
        p.swap(i - 1, j);
        p[i..].reverse();
        out.push(p.clone());
    }
}

/// Searches all argument permutations (k!^n of them) for an isotopy taking
/// `g` to `h`; the output permutation is then forced.
pub fn are_isotopic(g: &Quasigroup, h: &Quasigroup) -> Result<Option<Vec<Vec<u8>>>> {
    if g.arity != h.arity || g.order != h.order {
        return Err(Error::ShapeMismatch("quasigroups of different shape".into()));
    }
    let k = g.order;
    let perms = permutations(k);
    let total = (perms.len() as u64)
        .checked_pow(g.arity as u32)
        .filter(|&t| t <= 1 << 22)
        .ok_or_else(|| Error::TooLarge(format!("{k}!^{} isotopy candidates", g.arity)))?;
    let args: Vec<Vec<u8>> = g.arguments().collect();
    let found = (0..total).into_par_iter().find_map_first(|mut code| {
        let mut chosen = Vec::with_capacity(g.arity);
        for _ in 0..g.arity {
            chosen.push(&perms[(code % perms.len() as u64) as usize]);
            code /= perms.len() as u64;
        }
        let mut outer = vec![0u8; k];
        let mut used = vec![false; k];
        for (x, &hx) in args.iter().zip(&h.table) {
            let inner: Vec<u8> = x.iter().zip(&chosen).map(|(&j, p)| p[j as usize - 1]).collect();
            let gx = g.eval(&inner) as usize - 1;
            if outer[gx] == 0 {
                if used[hx as usize - 1] {
                    return None;
                }
                used[hx as usize - 1] = true;
                outer[gx] = hx;
            } else if outer[gx] != hx {
                return None;
            }
        }
        let mut all = vec![outer];
        all.extend(chosen.into_iter().cloned());
        Some(all)
    });
    if let Some(p) = &found {
        assert_eq!(&isotope(g, p)?, h, "isotopy witness failed to verify");
    }
    Ok(found)
}

/// True iff superimposing the two hypercubes gives every ordered symbol pair
/// exactly once in every 2-dimensional axis-aligned slice.
pub fn orthogonal_pair_check(h1: &LatinHypercube, h2: &LatinHypercube) -> Result<bool> {
    if h1.dim != h2.dim || h1.order != h2.order {
        return Err(Error::ShapeMismatch(format!(
            "dimensions {}/{} and orders {}/{}",
            h1.dim, h2.dim, h1.order, h2.order
        )));
    }
    if h1.dim < 2 {
        return Err(Error::ShapeMismatch("dimension below 2 has no 2-dimensional slices".into()));
    }
    let (k, n) = (h1.order, h1.dim);
    let stride = |axis: usize| k.pow((n - 1 - axis) as u32);
    let axes: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .collect();
    Ok(axes.into_par_iter().all(|(a, b)| {
        let (sa, sb) = (stride(a), stride(b));
        let mut seen = vec![false; k * k];
        (0..h1.cells.len())
            .filter(|&base| (base / sa) % k == 0 && (base / sb) % k == 0)
            .all(|base| {
                seen.iter_mut().for_each(|s| *s = false);
                for x in 0..k {
                    for y in 0..k {
                        let i = base + x * sa + y * sb;
                        let pair = h1.cells[i] as usize * k + h2.cells[i] as usize;
                        if seen[pair] {
                            return false;
                        }
                        seen[pair] = true;
                    }
                }
                true
            })
    }))
}

/// Every Latin hypercube of the given order and dimension, by backtracking
/// over cells in index order. Fails with `TooLarge` past `limit` results.
pub fn enumerate_latin_hypercubes(
    order: usize,
    dim: usize,
    limit: usize,
) -> Result<Vec<LatinHypercube>> {
    let size = table_size(order, dim)?;
    let strides: Vec<usize> = (0..dim).map(|a| order.pow((dim - 1 - a) as u32)).collect();
    let mut cells = vec![0u8; size];
    let mut out = Vec::new();

    fn fill(
        i: usize,
        cells: &mut Vec<u8>,
        order: usize,
        strides: &[usize],
        out: &mut Vec<LatinHypercube>,
        limit: usize,
    ) -> Result<()> {
        if i == cells.len() {
            if out.len() == limit {
                return Err(Error::TooLarge(format!("more than {limit} hypercubes")));
            }
            out.push(LatinHypercube {
                dim: strides.len(),
                order,
                cells: cells.clone(),
            });
            return Ok(());
        }
        for s in 0..order as u8 {
            // Only earlier cells on each line through i are filled.
            let clash = strides.iter().any(|&st| {
                let digit = (i / st) % order;
                (1..=digit).any(|t| cells[i - t * st] == s)
            });
            if !clash {
                cells[i] = s;
                fill(i + 1, cells, order, strides, out, limit)?;
            }
        }
        Ok(())
    }

    fill(0, &mut cells, order, &strides, &mut out, limit)?;
    Ok(out)
}

/// Renders a quasigroup file: `qgroup ARITY ORDER`, then one line
/// `j2 ... jn -> j1` per argument tuple in lexicographic order.
pub fn format_quasigroup(g: &Quasigroup) -> String {
    let mut out = format!("qgroup {} {}\n", g.arity, g.order);
    for (args, v) in g.arguments().zip(&g.table) {
        for a in &args {
            write!(out, "{a} ").unwrap();
        }
        writeln!(out, "-> {v}").unwrap();
    }
    out
}

/// Parses a quasigroup file. Argument lines may come in any order but each
/// tuple must appear exactly once.
pub fn parse_quasigroup(text: &str) -> Result<Quasigroup> {
    let mut header: Option<(usize, usize)> = None;
    let mut table: Vec<u8> = Vec::new();
    let mut filled: Vec<bool> = Vec::new();
    let num = |t: &str, line: usize| {
        t.parse::<usize>()
            .map_err(|e| parse_err(line, format!("{t}: {e}")))
    };
    for (ln, raw) in text.lines().enumerate() {
        let line_no = ln + 1;
        let line = raw.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        match header {
            None => {
                let t: Vec<&str> = line.split_whitespace().collect();
                if t.len() != 3 || t[0] != "qgroup" {
                    return Err(parse_err(line_no, "expected `qgroup ARITY ORDER` header"));
                }
                let (arity, order) = (num(t[1], line_no)?, num(t[2], line_no)?);
                if arity == 0 || order == 0 || order > 255 {
                    return Err(parse_err(line_no, "arity and order must be positive, order ≤ 255"));
                }
                let size = table_size(order, arity).map_err(|e| parse_err(line_no, e.to_string()))?;
                table = vec![0; size];
                filled = vec![false; size];
                header = Some((arity, order));
            }
            Some((arity, order)) => {
                let (lhs, rhs) = line
                    .split_once("->")
                    .ok_or_else(|| parse_err(line_no, "expected `j2 ... jn -> j1`"))?;
                let args = lhs
                    .split_whitespace()
                    .map(|t| num(t, line_no))
                    .collect::<Result<Vec<usize>>>()?;
                let value = num(rhs.trim(), line_no)?;
                if args.len() != arity {
                    return Err(parse_err(line_no, format!("expected {arity} arguments")));
                }
                if args.iter().chain([&value]).any(|&j| j == 0 || j > order) {
                    return Err(parse_err(line_no, format!("symbols must lie in 1..={order}")));
                }
                let pos = args.iter().fold(0, |acc, &j| acc * order + j - 1);
                if filled[pos] {
                    return Err(parse_err(line_no, "repeated argument tuple"));
                }
                filled[pos] = true;
                table[pos] = value as u8;
            }
        }
    }
    let (arity, order) = header.ok_or_else(|| parse_err(0, "missing `qgroup` header"))?;
    if let Some(missing) = filled.iter().position(|&f| !f) {
        return Err(parse_err(0, format!("argument tuple number {} is missing", missing + 1)));
    }
    Quasigroup::new(arity, order, table)
}
