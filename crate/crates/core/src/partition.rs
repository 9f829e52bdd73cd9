//! Partitions of codes into subcodes: coset partitions of distance-2 MDS
//! codes into Reed-Muller-like codes, Hamming coset partitions of whole
//! spaces, and the Graeco-Latin correspondence at m = 1.
//!
//! Class order convention: the class holding the lexicographically smallest
//! target word comes first (the zero class, when the target contains zero),
//! and the remaining classes follow the order of their smallest words. Class
//! i (0-based) is paired with the field element of index i wherever a
//! construction needs class labels.

use std::collections::HashMap;
use std::fmt::Write;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{parse_err, Error, Result};
use crate::galois::{field, FieldTable};
use crate::grm::{grm_matrix, is_rm_like, GrmSpec};
use crate::linalg::{dot, null_space};
use crate::mdsq::{is_mds2, linear_mds2, LatinHypercube, Mds2Code};
use crate::space::{Code, Gate, MixedSpace, Word, ZeroWord};

/// Largest target code built by [`coset_partition_rm`].
pub const COSET_TARGET_LIMIT: u64 = 1 << 20;

/// An ordered list of classes together with their union. When `params` is
/// set to (q, m), every class is meant to be Reed-Muller-like of order
/// (q − 1)m − 2.
#[derive(Clone, Debug)]
pub struct Partition {
    target: Code,
    classes: Vec<Code>,
    params: Option<(u8, u32)>,
    index: HashMap<Word, usize>,
}

impl PartialEq for Partition {
    fn eq(&self, other: &Self) -> bool {
        self.target == other.target && self.classes == other.classes && self.params == other.params
    }
}

impl Eq for Partition {}

fn build_index(classes: &[Code]) -> HashMap<Word, usize> {
    let mut index = HashMap::with_capacity(classes.iter().map(Code::len).sum());
    for (i, c) in classes.iter().enumerate() {
        for w in c.words() {
            index.entry(w.clone()).or_insert(i);
        }
    }
    index
}

impl Partition {
    /// Classes must be pairwise disjoint, share one space, and be non-empty;
    /// the target is their union.
    pub fn new(classes: Vec<Code>, params: Option<(u8, u32)>) -> Result<Partition> {
        let first = classes
            .first()
            .ok_or_else(|| Error::NotAPartition("no classes".into()))?;
        let space = first.space().clone();
        if classes.iter().any(|c| c.space() != &space) {
            return Err(Error::NotAPartition("classes live in different spaces".into()));
        }
        let index = build_index(&classes);
        let total: usize = classes.iter().map(Code::len).sum();
        if index.len() != total {
            return Err(Error::NotAPartition("classes are not pairwise disjoint".into()));
        }
        let target = Code::new(space, index.keys().cloned(), ZeroWord::Optional)?;
        Ok(Partition {
            target,
            classes,
            params,
            index,
        })
    }

    /// Like [`Partition::new`], additionally requiring the union to be
    /// `target`.
    pub fn with_target(
        target: Code,
        classes: Vec<Code>,
        params: Option<(u8, u32)>,
    ) -> Result<Partition> {
        let p = Partition::new(classes, params)?;
        if p.target != target {
            return Err(Error::NotAPartition("union of the classes differs from the target".into()));
        }
        Ok(p)
    }

    /// No checks at all; [`validate_partition`] reports what is wrong.
    pub fn new_unchecked(
        target: Code,
        classes: Vec<Code>,
        params: Option<(u8, u32)>,
    ) -> Partition {
        let index = build_index(&classes);
        Partition {
            target,
            classes,
            params,
            index,
        }
    }

    pub fn target(&self) -> &Code {
        &self.target
    }

    pub fn classes(&self) -> &[Code] {
        &self.classes
    }

    pub fn class(&self, i: usize) -> &Code {
        &self.classes[i]
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn space(&self) -> &MixedSpace {
        self.target.space()
    }

    /// (q, m) for partitions into RM-like codes of order (q − 1)m − 2.
    pub fn params(&self) -> Option<(u8, u32)> {
        self.params
    }

    pub fn class_of(&self, w: &[u8]) -> Option<usize> {
        self.index.get(w).copied()
    }

    /// The translate of every class by v.
    pub fn translate(&self, v: &[u8]) -> Partition {
        let classes: Vec<Code> = self.classes.iter().map(|c| c.translate(v)).collect();
        Partition::new_unchecked(self.target.translate(v), classes, self.params)
    }
}

/// Result of [`validate_partition`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PartitionCertificate {
    pub params: Option<(u8, u32)>,
    pub class_count: usize,
    pub class_sizes: Vec<u64>,
    pub disjoint: bool,
    pub union_matches: bool,
    pub target_mds2: bool,
    pub classes_rm_like: Vec<bool>,
    pub pass: bool,
    pub violations: Vec<String>,
}

/// Checks the hypotheses of the main construction: the classes partition the
/// target, the target is a distance-2 MDS code and every class is RM-like of
/// order (q − 1)m − 2.
pub fn validate_partition(p: &Partition) -> PartitionCertificate {
    let mut violations = Vec::new();
    let total: usize = p.classes.iter().map(Code::len).sum();
    let disjoint = p.index.len() == total;
    if !disjoint {
        violations.push("classes are not pairwise disjoint".to_string());
    }
    let union_matches = p.classes.iter().all(|c| c.space() == p.target.space())
        && p.index.len() == p.target.len()
        && p.target.words().iter().all(|w| p.index.contains_key(w));
    if !union_matches {
        violations.push("union of the classes differs from the target".to_string());
    }
    let mds = is_mds2(&p.target);
    if !mds.pass {
        violations.push(format!("target: {}", mds.violation.unwrap_or_default()));
    }
    let classes_rm_like: Vec<bool> = match p.params {
        None => {
            violations.push("no class parameters (q, m)".to_string());
            vec![false; p.classes.len()]
        }
        Some((q, m)) => {
            let r = (q as i64 - 1) * m as i64 - 2;
            p.classes
                .par_iter()
                .map(|c| is_rm_like(c, q, m, r))
                .collect::<Vec<_>>()
                .into_iter()
                .enumerate()
                .map(|(i, cert)| {
                    if !cert.pass {
                        violations.push(format!(
                            "class {i}: {}",
                            cert.violation.unwrap_or_default()
                        ));
                    }
                    cert.pass
                })
                .collect()
        }
    };
    let pass = violations.is_empty();
    PartitionCertificate {
        params: p.params,
        class_count: p.classes.len(),
        class_sizes: p.classes.iter().map(|c| c.len() as u64).collect(),
        disjoint,
        union_matches,
        target_mds2: mds.pass,
        classes_rm_like,
        pass,
        violations,
    }
}

/// Groups the sorted words of `target` by the syndrome under `h`, numbering
/// classes in order of first appearance.
fn cosets_by_syndrome(f: &FieldTable, target: &Code, h: &[Vec<u8>]) -> Result<Vec<Code>> {
    let syndromes: Vec<Vec<u8>> = target
        .words()
        .par_iter()
        .map(|w| h.iter().map(|row| dot(f, row, w)).collect())
        .collect();
    let mut ids: HashMap<&[u8], usize> = HashMap::new();
    let mut members: Vec<Vec<Word>> = Vec::new();
    for (w, s) in target.words().iter().zip(&syndromes) {
        let next = ids.len();
        let id = *ids.entry(s.as_slice()).or_insert(next);
        if id == members.len() {
            members.push(Vec::new());
        }
        members[id].push(w.clone());
    }
    members
        .into_iter()
        .map(|ws| Code::new(target.space().clone(), ws, ZeroWord::Optional))
        .collect()
}

/// The cosets of RM_q((q−1)m−2, m) inside RM_q((q−1)m−1, m), which is the
/// zero-sum code of length q^m.
pub fn coset_partition_rm(q: u8, m: u32) -> Result<Partition> {
    let r = (q as i64 - 1) * m as i64 - 2;
    if r < 0 {
        return Err(Error::DegenerateOrder(r));
    }
    let n = (q as u64).checked_pow(m).filter(|&n| n <= 16).ok_or_else(|| {
        Error::TooLarge(format!("length q^m above 16 for q = {q}, m = {m}"))
    })?;
    if (q as u64).checked_pow(n as u32 - 1).is_none_or(|s| s > COSET_TARGET_LIMIT) {
        return Err(Error::TooLarge(format!(
            "target of size {q}^{} exceeds {COSET_TARGET_LIMIT}",
            n - 1
        )));
    }
    let f = field(q)?;
    let target = linear_mds2(q, n as usize)?.into_code();
    let sub = grm_matrix(GrmSpec::new(q, m, r)?)?;
    let h = null_space(&f, &sub.rows, sub.n);
    let classes = cosets_by_syndrome(&f, &target, &h)?;
    Partition::with_target(target, classes, Some((q, m)))
}

/// The q-ary Hamming code of redundancy r: parity-check columns are the
/// nonzero vectors of F_q^r whose first nonzero entry is 1, in lexicographic
/// order.
pub fn hamming_parity_check(q: u8, r: u32) -> Result<Vec<Vec<u8>>> {
    let space = MixedSpace::uniform(q, r as usize)?;
    let size = space.check_gate(Gate::default())?;
    let columns: Vec<Word> = (0..size as u64)
        .map(|i| space.word_at(i))
        .filter(|w| w.iter().find(|&&x| x != 0) == Some(&1))
        .collect();
    Ok((0..r as usize)
        .map(|row| columns.iter().map(|c| c[row]).collect())
        .collect())
}

/// The q-ary Hamming code of length (q^r − 1)/(q − 1).
pub fn hamming_code(q: u8, r: u32) -> Result<Code> {
    Ok(hamming_coset_partition(q, r)?.classes.swap_remove(0))
}

/// F_q^n, n = (q^r − 1)/(q − 1), split into the q^r cosets of the Hamming
/// code.
pub fn hamming_coset_partition(q: u8, r: u32) -> Result<Partition> {
    if r < 2 {
        return Err(Error::BadParameters("Hamming redundancy must be at least 2".into()));
    }
    let f = field(q)?;
    let h = hamming_parity_check(q, r)?;
    let n = h[0].len();
    let full = Code::full_space(MixedSpace::uniform(q, n)?, Gate::default())?;
    let classes = cosets_by_syndrome(&f, &full, &h)?;
    Partition::with_target(full, classes, None)
}

/// The q parity classes {x : Σ x_i = c} of F_q^n, c in index order.
pub fn space_partition_mds(q: u8, n: usize) -> Result<Vec<Mds2Code>> {
    let zero = linear_mds2(q, n)?.into_code();
    (0..q)
        .map(|c| {
            let mut v = vec![0u8; n];
            v[0] = c;
            Mds2Code::new(zero.translate(&v))
        })
        .collect()
}

fn m1_order(p: &Partition) -> Result<usize> {
    let q = p.space().uniform_order().ok_or_else(|| {
        Error::NotM1Partition(format!("mixed alphabets {:?}", p.space().orders()))
    })?;
    if p.params != Some((q, 1)) || q < 3 {
        return Err(Error::NotM1Partition(format!(
            "parameters {:?} are not (q, 1) with q ≥ 3",
            p.params
        )));
    }
    if p.space().len() != q as usize || p.classes.len() != q as usize {
        return Err(Error::NotM1Partition(format!(
            "length {} and {} classes, expected {q} each",
            p.space().len(),
            p.classes.len()
        )));
    }
    Ok(q as usize)
}

/// For m = 1: the first hypercube gives the last symbol of a target word as a
/// function of the others, the second gives its class index.
pub fn partition_to_graeco_latin(p: &Partition) -> Result<(LatinHypercube, LatinHypercube)> {
    let q = m1_order(p)?;
    let mds = is_mds2(p.target());
    if !mds.pass {
        return Err(Error::NotM1Partition(format!(
            "target: {}",
            mds.violation.unwrap_or_default()
        )));
    }
    let dim = q - 1;
    let size = q.pow(dim as u32);
    let mut h1 = vec![0u8; size];
    let mut h2 = vec![0u8; size];
    for w in p.target.words() {
        let pos = w[..dim].iter().fold(0, |acc, &s| acc * q + s as usize);
        h1[pos] = w[dim];
        h2[pos] = p.class_of(w).expect("target word in some class") as u8;
    }
    let h1 = LatinHypercube::new(dim, q, h1)?;
    let h2 = LatinHypercube::new(dim, q, h2)
        .map_err(|e| Error::NotM1Partition(format!("class map: {e}")))?;
    Ok((h1, h2))
}

/// Inverse of [`partition_to_graeco_latin`].
pub fn graeco_latin_to_partition(h1: &LatinHypercube, h2: &LatinHypercube) -> Result<Partition> {
    if h1.dim() != h2.dim() || h1.order() != h2.order() || h1.dim() + 1 != h1.order() {
        return Err(Error::ShapeMismatch(
            "expected two hypercubes of order q and dimension q - 1".into(),
        ));
    }
    let q = h1.order();
    let space = MixedSpace::uniform(q as u8, q)?;
    let mut members: Vec<Vec<Word>> = vec![Vec::new(); q];
    for (pos, (&a, &b)) in h1.cells().iter().zip(h2.cells()).enumerate() {
        let mut w = space.without(q - 1)?.word_at(pos as u64).0;
        w.push(a);
        members[b as usize].push(Word(w));
    }
    let classes = members
        .into_iter()
        .map(|ws| Code::new(space.clone(), ws, ZeroWord::Optional))
        .collect::<Result<Vec<_>>>()?;
    Partition::new(classes, Some((q as u8, 1)))
}

/// Partition file: `partition q n t`, then `CLASSID: w1 ... wn` per word with
/// 0-based class ids.
pub fn format_partition(p: &Partition) -> Result<String> {
    let q = p
        .space()
        .uniform_order()
        .ok_or_else(|| Error::MixedAlphabets(p.space().orders().to_vec()))?;
    let mut out = format!("partition {q} {} {}\n", p.space().len(), p.classes.len());
    for (i, c) in p.classes.iter().enumerate() {
        for w in c.words() {
            writeln!(out, "{i}: {w}").unwrap();
        }
    }
    Ok(out)
}

/// Parses a partition file. The class parameters are set to (q, m) when the
/// length is q^m.
pub fn parse_partition(text: &str) -> Result<Partition> {
    let mut header: Option<(u8, usize, usize)> = None;
    let mut members: Vec<Vec<Word>> = Vec::new();
    let mut space: Option<MixedSpace> = None;
    for (ln, raw) in text.lines().enumerate() {
        let line_no = ln + 1;
        let line = raw.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        match header {
            None => {
                let t: Vec<&str> = line.split_whitespace().collect();
                if t.len() != 4 || t[0] != "partition" {
                    return Err(parse_err(line_no, "expected `partition q n t` header"));
                }
                let q: u8 = t[1].parse().map_err(|e| parse_err(line_no, format!("{}: {e}", t[1])))?;
                let n: usize = t[2].parse().map_err(|e| parse_err(line_no, format!("{}: {e}", t[2])))?;
                let k: usize = t[3].parse().map_err(|e| parse_err(line_no, format!("{}: {e}", t[3])))?;
                space = Some(
                    MixedSpace::uniform(q, n).map_err(|e| parse_err(line_no, e.to_string()))?,
                );
                members = vec![Vec::new(); k];
                header = Some((q, n, k));
            }
            Some((_, _, k)) => {
                let (id, rest) = line
                    .split_once(':')
                    .ok_or_else(|| parse_err(line_no, "expected `CLASSID: w1 ... wn`"))?;
                let id: usize = id
                    .trim()
                    .parse()
                    .map_err(|e| parse_err(line_no, format!("class id: {e}")))?;
                if id >= k {
                    return Err(parse_err(line_no, format!("class id {id} is not below {k}")));
                }
                let w = rest
                    .split_whitespace()
                    .map(|t| t.parse::<u8>().map_err(|e| parse_err(line_no, format!("{t}: {e}"))))
                    .collect::<Result<Vec<u8>>>()?;
                if !space.as_ref().unwrap().contains(&w) {
                    return Err(parse_err(line_no, format!("word {w:?} is outside the space")));
                }
                members[id].push(Word(w));
            }
        }
    }
    let (q, n, _) = header.ok_or_else(|| parse_err(0, "missing `partition` header"))?;
    let space = space.unwrap();
    if let Some(empty) = members.iter().position(Vec::is_empty) {
        return Err(parse_err(0, format!("class {empty} is empty")));
    }
    let classes = members
        .into_iter()
        .map(|ws| Code::new(space.clone(), ws, ZeroWord::Optional))
        .collect::<Result<Vec<_>>>()?;
    let params = (1..=16u32).find(|&m| (q as u64).checked_pow(m) == Some(n as u64));
    Partition::new(classes, params.map(|m| (q, m)))
}
