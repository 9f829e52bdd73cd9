//! Substitution and concatenation of perfect codes along partitions.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::space::{Code, MixedSpace, Word, ZeroWord};

fn check_perm(pi: &[usize], n: usize) -> Result<()> {
    let mut seen = vec![false; n];
    if pi.len() != n || pi.iter().any(|&x| x >= n || std::mem::replace(&mut seen[x], true)) {
        return Err(Error::BadParameters(format!("{pi:?} is not a permutation of 0..{n}")));
    }
    Ok(())
}

fn covers_space(p: &Partition) -> bool {
    p.target().len() as u128 == p.space().size()
}

/// Replaces the symbol at `position` of every word of `cp` by the words of
/// the partition class with the same index: symbol s ↦ class s. Output
/// coordinates are those of `cp` without `position`, followed by the
/// partition's space.
pub fn heden_substitute(cp: &Code, partition: &Partition, position: usize) -> Result<Code> {
    if position >= cp.length() {
        return Err(Error::BadParameters(format!(
            "position {position} outside length {}",
            cp.length()
        )));
    }
    let order = cp.space().orders()[position];
    let sphere = partition.space().sphere(1).size;
    if sphere != order as u128 {
        return Err(Error::SphereMismatch { sphere, order });
    }
    if partition.len() != order as usize || !covers_space(partition) {
        return Err(Error::NotAPartition(format!(
            "need {order} classes covering the space, got {} classes of total size {}",
            partition.len(),
            partition.target().len()
        )));
    }
    let space = cp.space().without(position)?.concat(partition.space());
    let words: Vec<Word> = cp
        .words()
        .par_iter()
        .flat_map_iter(|c| {
            let mut prefix = c.0.clone();
            let s = prefix.remove(position);
            partition
                .class(s as usize)
                .words()
                .iter()
                .map(move |v| Word(prefix.iter().chain(v.iter()).copied().collect()))
        })
        .collect();
    Code::new(space, words, ZeroWord::Optional)
}

/// Repeats [`heden_substitute`] at the last coordinate whose order equals
/// the sphere size of the partition's space, while one exists. Returns every
/// intermediate code.
pub fn heden_chain(start: &Code, partition: &Partition) -> Result<Vec<Code>> {
    let sphere = partition.space().sphere(1).size;
    let mut out = Vec::new();
    let mut current = start.clone();
    while let Some(pos) = current
        .space()
        .orders()
        .iter()
        .rposition(|&q| q as u128 == sphere)
    {
        current = heden_substitute(&current, partition, pos)?;
        out.push(current.clone());
    }
    Ok(out)
}

/// {(u | v) : u ∈ P_i, v ∈ H_{π(i)}}.
fn concatenate(p: &Partition, h: &Partition, pi: &[usize]) -> Result<Code> {
    let space: MixedSpace = p.space().concat(h.space());
    let words: Vec<Word> = (0..p.len())
        .into_par_iter()
        .flat_map_iter(|i| {
            let right = h.class(pi[i]);
            p.class(i)
                .words()
                .iter()
                .flat_map(move |u| right.words().iter().map(move |v| u.concat(v)))
        })
        .collect();
    Code::new(space, words, ZeroWord::Optional)
}

/// Binary doubling: `cp` splits the even words of F_2^{2^m} into extended
/// 1-perfect codes, `cpp` splits F_2^{2^m − 1} into 1-perfect codes, and
/// class i of `cp` is glued to class π(i) of `cpp` (0-based).
pub fn doubling(cp: &Partition, cpp: &Partition, pi: &[usize]) -> Result<Code> {
    let n = cp.space().len();
    let shape_ok = cp.space().uniform_order() == Some(2)
        && cpp.space().uniform_order() == Some(2)
        && n.is_power_of_two()
        && cpp.space().len() + 1 == n
        && cp.len() == n
        && cpp.len() == n
        && covers_space(cpp);
    if !shape_ok {
        return Err(Error::PartitionShapeMismatch(format!(
            "lengths {} and {}, class counts {} and {}",
            n,
            cpp.space().len(),
            cp.len(),
            cpp.len()
        )));
    }
    check_perm(pi, n)?;
    concatenate(cp, cpp, pi)
}

/// q-ary concatenation: `p` is a partition of a distance-2 MDS code of
/// length n = q^m, m ≥ 2, into n RM-like classes; `hp` splits
/// F_q^{(n−1)/(q−1)} into n 1-perfect codes.
pub fn theorem5_concatenate(p: &Partition, hp: &Partition, pi: &[usize]) -> Result<Code> {
    let (q, m) = p
        .params()
        .ok_or_else(|| Error::InvalidPartition("partition carries no (q, m)".into()))?;
    if m < 2 {
        return Err(Error::ExcludedParameters(format!("m = {m} < 2")));
    }
    let n = (q as usize).pow(m);
    if p.len() != n {
        return Err(Error::ClassCountMismatch {
            expected: n,
            found: p.len(),
        });
    }
    if hp.len() != n {
        return Err(Error::ClassCountMismatch {
            expected: n,
            found: hp.len(),
        });
    }
    if hp.space().uniform_order() != Some(q) || hp.space().len() != (n - 1) / (q as usize - 1) || !covers_space(hp)
    {
        return Err(Error::PartitionShapeMismatch(format!(
            "second partition must cover F_{q}^{}",
            (n - 1) / (q as usize - 1)
        )));
    }
    check_perm(pi, n)?;
    concatenate(p, hp, pi)
}
