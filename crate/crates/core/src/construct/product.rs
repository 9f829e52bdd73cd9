//! Product constructions: distance-2 MDS codes of length q^{m1+m2} from
//! parity classes, and RM-like codes of order (q − 1)(m1 + m2) − 2 from
//! partitions of those classes steered by quasigroups.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::mdsq::{index_to_symbol, symbol_to_index, Mds2Code, Quasigroup};
use crate::partition::{coset_partition_rm, Partition};
use crate::space::{Code, MixedSpace, Word, ZeroWord};

/// Largest code the product constructions materialize.
pub const PRODUCT_LIMIT: u64 = 1 << 22;

/// All concatenations u_1 | … | u_L with u_i drawn from `factors[i]`.
fn cartesian(factors: &[&Code]) -> Vec<Word> {
    let mut acc: Vec<Vec<u8>> = vec![Vec::new()];
    for f in factors {
        acc = acc
            .iter()
            .flat_map(|prefix| {
                f.words()
                    .iter()
                    .map(move |w| prefix.iter().chain(w.iter()).copied().collect())
            })
            .collect();
    }
    acc.into_iter().map(Word).collect()
}

fn check_size(size: u128) -> Result<()> {
    if size > PRODUCT_LIMIT as u128 {
        return Err(Error::TooLarge(format!("{size} words exceed {PRODUCT_LIMIT}")));
    }
    Ok(())
}

/// Checks that `a` is q codes partitioning the whole space F_q^{L}.
fn check_space_partition(a: &[&Code]) -> Result<(u8, usize)> {
    let first = a
        .first()
        .ok_or_else(|| Error::NotAPartitionOfSpace("no classes".into()))?;
    let q = first
        .space()
        .uniform_order()
        .ok_or_else(|| Error::NotAPartitionOfSpace("mixed alphabets".into()))?;
    if a.len() != q as usize || a.iter().any(|c| c.space() != first.space()) {
        return Err(Error::NotAPartitionOfSpace(format!(
            "expected {q} classes over one space, got {}",
            a.len()
        )));
    }
    let p = Partition::new(a.iter().map(|&c| c.clone()).collect(), None)
        .map_err(|e| Error::NotAPartitionOfSpace(e.to_string()))?;
    if p.target().len() as u128 != first.space().size() {
        return Err(Error::NotAPartitionOfSpace("classes do not cover the space".into()));
    }
    Ok((q, first.length()))
}

/// {(u_1 | … | u_L) : u_i ∈ A^{v_i}, v ∈ B}, where superscript k is paired
/// with the field element of index k − 1 (`a[s]` for symbol s).
pub fn prop1_product(a: &[Mds2Code], b: &Mds2Code) -> Result<Mds2Code> {
    let codes: Vec<&Code> = a.iter().map(Mds2Code::code).collect();
    let (q, len_a) = check_space_partition(&codes)?;
    if b.order() != q {
        return Err(Error::NotAPartitionOfSpace(format!(
            "outer code over F_{} but classes over F_{q}",
            b.order()
        )));
    }
    let len_b = b.code().length();
    check_size(b.code().len() as u128 * (codes[0].len() as u128).pow(len_b as u32))?;
    let space = MixedSpace::uniform(q, len_a * len_b)?;
    let words: Vec<Word> = b
        .code()
        .words()
        .par_iter()
        .flat_map_iter(|v| {
            let factors: Vec<&Code> = v.iter().map(|&s| codes[s as usize]).collect();
            cartesian(&factors)
        })
        .collect();
    Mds2Code::new(Code::new(space, words, ZeroWord::Optional)?)
}

/// Quasigroup choices q_v for the outer codewords v: `overrides` where
/// given, `default` elsewhere.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductSpec {
    pub m1: u32,
    pub m2: u32,
    pub default: Quasigroup,
    pub overrides: BTreeMap<Word, Quasigroup>,
}

impl ProductSpec {
    pub fn uniform(m1: u32, m2: u32, default: Quasigroup) -> ProductSpec {
        ProductSpec {
            m1,
            m2,
            default,
            overrides: BTreeMap::new(),
        }
    }

    pub fn quasigroup_for(&self, v: &[u8]) -> &Quasigroup {
        self.overrides.get(v).unwrap_or(&self.default)
    }

    fn check(&self, q: u8) -> Result<()> {
        let want_arity = (q as usize).pow(self.m2) - 1;
        let want_order = (q as usize).pow(self.m1);
        for g in std::iter::once(&self.default).chain(self.overrides.values()) {
            if g.arity() != want_arity || g.order() != want_order {
                return Err(Error::BadQuasigroupShape {
                    arity: g.arity(),
                    order: g.order(),
                    want_arity,
                    want_order,
                });
            }
        }
        Ok(())
    }
}

fn check_orders(q: u8, m1: u32, m2: u32) -> Result<()> {
    for m in [m1, m2] {
        let r = (q as i64 - 1) * m as i64 - 2;
        if r < 0 {
            return Err(Error::DegenerateOrder(r));
        }
    }
    Ok(())
}

/// Checks the inner partitions: q of them, the k-th splitting the k-th
/// parity class of F_q^{q^{m1}} into q^{m1} classes.
fn check_inner(a: &[Partition], q: u8, m1: u32) -> Result<()> {
    let k = (q as usize).pow(m1);
    if a.len() != q as usize
        || a.iter().any(|p| {
            p.len() != k || p.space().uniform_order() != Some(q) || p.space().len() != k
        })
    {
        return Err(Error::PartitionShapeMismatch(format!(
            "need {q} partitions into {k} classes of length {k}"
        )));
    }
    let targets: Vec<&Code> = a.iter().map(Partition::target).collect();
    check_space_partition(&targets)?;
    Ok(())
}

/// The RM-like product code with class index j_1 shifted cyclically by
/// `shift`: j_1 = ((q_v(j_2, …, j_L) − 1 + shift) mod K) + 1, K = q^{m1}.
fn product_words(a: &[Partition], b: &Code, spec: &ProductSpec, shift: usize) -> Vec<Word> {
    let k = a[0].len();
    let len_b = b.length();
    b.words()
        .par_iter()
        .flat_map_iter(|v| {
            let g = spec.quasigroup_for(v);
            g.arguments()
                .flat_map(|args| {
                    let j1 = (symbol_to_index(g.eval(&args)) as usize + shift) % k;
                    let mut js = vec![j1];
                    js.extend(args.iter().map(|&j| symbol_to_index(j) as usize));
                    let factors: Vec<&Code> =
                        (0..len_b).map(|i| a[v[i] as usize].class(js[i])).collect();
                    cartesian(&factors)
                })
                .collect::<Vec<_>>()
        })
        .collect()
}

fn check_outer(b: &Code, q: u8, m2: u32) -> Result<()> {
    if b.space().uniform_order() != Some(q) || b.length() != (q as usize).pow(m2) {
        return Err(Error::PartitionShapeMismatch(format!(
            "outer code must have length {q}^{m2} over F_{q}"
        )));
    }
    Ok(())
}

/// {(u_1 | … | u_L) : u_i ∈ A^{v_i}_{j_i}, v ∈ B, j_1 = q_v(j_2, …, j_L)}.
/// Superscripts follow the field index of v_i; subscripts are 1-based
/// quasigroup symbols, class j − 1 of the partition.
pub fn theorem6_product(a: &[Partition], b: &Code, spec: &ProductSpec) -> Result<Code> {
    let q = a
        .first()
        .and_then(|p| p.space().uniform_order())
        .ok_or_else(|| Error::PartitionShapeMismatch("no inner partitions".into()))?;
    check_orders(q, spec.m1, spec.m2)?;
    spec.check(q)?;
    check_inner(a, q, spec.m1)?;
    check_outer(b, q, spec.m2)?;
    let class = a[0].class(0).len() as u128;
    let k = a[0].len() as u128;
    check_size(b.len() as u128 * class * (class * k).pow(b.length() as u32 - 1))?;
    let space = MixedSpace::uniform(q, a[0].space().len() * b.length())?;
    Code::new(space, product_words(a, b, spec, 0), ZeroWord::Optional)
}

/// All q^{m1+m2} siblings of the product: for every class B_l of
/// `b_partition` and every cyclic shift s of j_1, one RM-like code. The
/// classes are ordered by their smallest word.
pub fn theorem6_family(a: &[Partition], b_partition: &Partition, spec: &ProductSpec) -> Result<Partition> {
    let q = b_partition
        .space()
        .uniform_order()
        .ok_or_else(|| Error::PartitionShapeMismatch("mixed alphabets".into()))?;
    check_orders(q, spec.m1, spec.m2)?;
    spec.check(q)?;
    check_inner(a, q, spec.m1)?;
    check_outer(b_partition.target(), q, spec.m2)?;
    let k = a[0].len();
    let total: usize = b_partition.classes().iter().map(Code::len).sum::<usize>()
        * (a[0].class(0).len() * k).pow(b_partition.space().len() as u32);
    check_size(total as u128)?;
    let space = MixedSpace::uniform(q, a[0].space().len() * b_partition.space().len())?;
    let mut classes = b_partition
        .classes()
        .iter()
        .flat_map(|bl| (0..k).map(move |s| (bl, s)))
        .map(|(bl, s)| Code::new(space.clone(), product_words(a, bl, spec, s), ZeroWord::Optional))
        .collect::<Result<Vec<Code>>>()?;
    classes.sort_by(|x, y| x.min_word().cmp(y.min_word()));
    Partition::new(classes, Some((q, spec.m1 + spec.m2)))
}

/// Default inner partitions: the coset partition of the zero-sum code of
/// length q^{m1}, translated by c·e_1 onto the parity class of each c.
pub fn default_inner_partitions(q: u8, m1: u32) -> Result<Vec<Partition>> {
    let base = coset_partition_rm(q, m1)?;
    Ok((0..q)
        .map(|c| {
            let mut v = vec![0u8; base.space().len()];
            v[0] = c;
            if c == 0 {
                base.clone()
            } else {
                base.translate(&v)
            }
        })
        .collect())
}

/// The quasigroup g(j_2, …, j_L) = j_2 + … + j_L over Z_K, in 1-based form.
pub fn cyclic_sum_quasigroup(arity: usize, order: usize) -> Result<Quasigroup> {
    Quasigroup::from_fn(arity, order, |args| {
        let s: usize = args.iter().map(|&j| symbol_to_index(j) as usize).sum();
        index_to_symbol((s % order) as u8)
    })
}
