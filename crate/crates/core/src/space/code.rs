use std::sync::OnceLock;

use rayon::prelude::*;

use super::{Gate, MixedSpace, Word};
use crate::error::{Error, Result};
use crate::galois::FieldElem;

/// Whether a code constructor insists on the zero word.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ZeroWord {
    Required,
    Optional,
}

/// A non-empty set of words of one mixed space, kept sorted.
#[derive(Clone)]
pub struct Code {
    space: MixedSpace,
    words: Vec<Word>,
    min_distance: OnceLock<usize>,
}

impl PartialEq for Code {
    fn eq(&self, other: &Self) -> bool {
        self.space == other.space && self.words == other.words
    }
}

impl Eq for Code {}

impl std::fmt::Debug for Code {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Code")
            .field("space", &self.space)
            .field("size", &self.words.len())
            .finish()
    }
}

impl Code {
    pub fn new(
        space: MixedSpace,
        words: impl IntoIterator<Item = Word>,
        zero: ZeroWord,
    ) -> Result<Code> {
        let mut words: Vec<Word> = words.into_iter().collect();
        for w in &words {
            space.check_word(w)?;
        }
        if words.is_empty() {
            return Err(Error::EmptyCode);
        }
        words.par_sort_unstable();
        words.dedup();
        let code = Code {
            space,
            words,
            min_distance: OnceLock::new(),
        };
        if zero == ZeroWord::Required && !code.contains_zero() {
            return Err(Error::MissingZeroWord);
        }
        Ok(code)
    }

    /// The whole space as a code.
    pub fn full_space(space: MixedSpace, gate: Gate) -> Result<Code> {
        let words: Vec<Word> = space.words(gate)?.collect();
        Code::new(space, words, ZeroWord::Required)
    }

    pub fn space(&self) -> &MixedSpace {
        &self.space
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn into_words(self) -> Vec<Word> {
        self.words
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    /// Code length n.
    pub fn length(&self) -> usize {
        self.space.len()
    }

    pub fn contains(&self, w: &[u8]) -> bool {
        self.words
            .binary_search_by(|x| x.as_slice().cmp(w))
            .is_ok()
    }

    pub fn contains_zero(&self) -> bool {
        self.words[0].iter().all(|&s| s == 0)
    }

    /// Lexicographically smallest codeword.
    pub fn min_word(&self) -> &Word {
        &self.words[0]
    }

    /// The translate C + v.
    pub fn translate(&self, v: &[u8]) -> Code {
        let words = self.words.iter().map(|w| self.space.add(w, v));
        Code::new(self.space.clone(), words, ZeroWord::Optional).expect("translate stays in space")
    }

    /// Fast membership test: a bitmap over the space when it is small enough,
    /// otherwise binary search.
    pub fn membership(&self) -> Membership<'_> {
        match self.space.check_gate(Gate::default()) {
            Ok(size) => {
                let mut bits = vec![0u64; size.div_ceil(64)];
                for w in &self.words {
                    let i = self.space.index_of(w) as usize;
                    bits[i / 64] |= 1 << (i % 64);
                }
                Membership::Bitmap {
                    space: &self.space,
                    bits,
                }
            }
            Err(_) => Membership::Sorted(self),
        }
    }

    /// Minimum distance, computed once and cached.
    pub fn minimum_distance(&self) -> Result<usize> {
        if self.words.len() < 2 {
            return Err(Error::SingletonCode);
        }
        Ok(*self.min_distance.get_or_init(|| self.compute_min_distance()))
    }

    fn compute_min_distance(&self) -> usize {
        let m = self.words.len();
        let n = self.length();
        if m <= 2048 {
            return pairwise_min_distance(&self.words);
        }
        // Search growing shells around every codeword; fall back to pairs when
        // the shells become larger than the code.
        let member = self.membership();
        let mut shell = vec![0u128; n + 1];
        shell[0] = 1;
        for &q in self.space.orders() {
            for j in (1..=n).rev() {
                shell[j] += shell[j - 1] * (q as u128 - 1);
            }
        }
        for r in 1..=n {
            if shell[r] > m as u128 / 2 {
                break;
            }
            let found = self.words.par_iter().any(|c| {
                let mut hit = false;
                for_each_at_distance(&self.space, c, r, &mut |w| {
                    hit = member.contains(w);
                    hit
                });
                hit
            });
            if found {
                return r;
            }
        }
        pairwise_min_distance(&self.words)
    }
}

/// Membership oracle returned by [`Code::membership`].
pub enum Membership<'a> {
    Bitmap { space: &'a MixedSpace, bits: Vec<u64> },
    Sorted(&'a Code),
}

impl Membership<'_> {
    pub fn contains(&self, w: &[u8]) -> bool {
        match self {
            Membership::Bitmap { space, bits } => {
                let i = space.index_of(w) as usize;
                bits[i / 64] >> (i % 64) & 1 == 1
            }
            Membership::Sorted(c) => c.contains(w),
        }
    }
}

fn pairwise_min_distance(words: &[Word]) -> usize {
    let n = words[0].len();
    (0..words.len())
        .into_par_iter()
        .map(|i| {
            let mut best = n;
            for y in &words[i + 1..] {
                let d = dist(&words[i], y);
                if d < best {
                    best = d;
                }
            }
            best
        })
        .min()
        .unwrap_or(n)
}

#[inline]
pub(crate) fn dist(x: &[u8], y: &[u8]) -> usize {
    x.iter().zip(y).filter(|(a, b)| a != b).count()
}

/// Calls `f` on every word at distance exactly `r` from `center`, stopping
/// early when `f` returns true.
pub(crate) fn for_each_at_distance(
    space: &MixedSpace,
    center: &[u8],
    r: usize,
    f: &mut dyn FnMut(&[u8]) -> bool,
) -> bool {
    fn rec(
        orders: &[u8],
        w: &mut Vec<u8>,
        start: usize,
        left: usize,
        f: &mut dyn FnMut(&[u8]) -> bool,
    ) -> bool {
        if left == 0 {
            return f(w);
        }
        for i in start..=orders.len() - left {
            let orig = w[i];
            for s in 0..orders[i] {
                if s == orig {
                    continue;
                }
                w[i] = s;
                if rec(orders, w, i + 1, left - 1, f) {
                    w[i] = orig;
                    return true;
                }
            }
            w[i] = orig;
        }
        false
    }
    if r > center.len() {
        return false;
    }
    let mut w = center.to_vec();
    rec(space.orders(), &mut w, 0, r, f)
}

/// Number of coordinates where `x` and `y` differ.
pub fn hamming_distance(space: &MixedSpace, x: &[u8], y: &[u8]) -> Result<usize> {
    if !space.contains(x) || !space.contains(y) {
        return Err(Error::SpaceMismatch);
    }
    Ok(dist(x, y))
}

/// p(x) = Σ x_i for a word of a single-alphabet space.
pub fn parity(space: &MixedSpace, x: &[u8]) -> Result<FieldElem> {
    if space.uniform_order().is_none() {
        return Err(Error::MixedAlphabets(space.orders().to_vec()));
    }
    space.check_word(x)?;
    let f = space.field(0);
    Ok(FieldElem(x.iter().fold(0, |acc, &s| f.sym_add(acc, s))))
}

pub fn is_even(space: &MixedSpace, x: &[u8]) -> Result<bool> {
    Ok(parity(space, x)? == FieldElem::ZERO)
}

/// Appends to each codeword the symbol that makes its coordinate sum zero.
pub fn extend_code(c: &Code) -> Result<Code> {
    let q = c
        .space()
        .uniform_order()
        .ok_or_else(|| Error::MixedAlphabets(c.space().orders().to_vec()))?;
    let space = MixedSpace::uniform(q, c.length() + 1)?;
    let f = c.space().field(0);
    let words = c.words().iter().map(|w| {
        let p = w.iter().fold(0, |acc, &s| f.sym_add(acc, s));
        let mut v = w.0.clone();
        v.push(f.sym_neg(p));
        Word(v)
    });
    Code::new(space, words, ZeroWord::Optional)
}

/// True when the code is a subgroup of the additive group of its space.
pub fn is_additive(c: &Code) -> bool {
    if !c.contains_zero() {
        return false;
    }
    let member = c.membership();
    let words = c.words();
    words.par_iter().enumerate().all(|(i, x)| {
        words[i..]
            .iter()
            .all(|y| member.contains(&c.space().add(x, y)))
    })
}

/// Applies the symbol permutation `perm` to coordinate `coord` of every codeword.
pub fn relabel(c: &Code, coord: usize, perm: &[u8]) -> Result<Code> {
    let q = *c
        .space()
        .orders()
        .get(coord)
        .ok_or_else(|| Error::BadParameters(format!("no coordinate {coord}")))?;
    let mut seen = vec![false; q as usize];
    if perm.len() != q as usize
        || perm.iter().any(|&s| s >= q || std::mem::replace(&mut seen[s as usize], true))
    {
        return Err(Error::BadParameters(format!(
            "{perm:?} is not a permutation of {q} symbols"
        )));
    }
    let words = c.words().iter().map(|w| {
        let mut v = w.0.clone();
        v[coord] = perm[v[coord] as usize];
        Word(v)
    });
    Code::new(c.space().clone(), words, ZeroWord::Optional)
}
