//! 1-perfect codes in F_n × F_q^n, n = q^m, from partitions of distance-2
//! MDS codes into RM-like codes of order (q − 1)m − 2, and back.

use crate::error::{Error, Result};
use crate::galois::field;
use crate::partition::{validate_partition, Partition};
use crate::space::{is_perfect, Code, Gate, MixedSpace, Word, ZeroWord};

/// {(ω_i | v) : v ∈ C′_i}, where ω_i is the element of F_n with index i − 1
/// (class i − 1 in 0-based terms).
pub fn theorem4_construct(p: &Partition) -> Result<Code> {
    let (q, m) = p
        .params()
        .ok_or_else(|| Error::InvalidPartition("partition carries no (q, m)".into()))?;
    if (q, m) == (2, 1) {
        return Err(Error::ExcludedParameters("(q, m) = (2, 1)".into()));
    }
    let cert = validate_partition(p);
    if !cert.pass {
        return Err(Error::InvalidPartition(cert.violations.join("; ")));
    }
    let n = (q as u64).pow(m);
    let n8 = u8::try_from(n).map_err(|_| Error::Unsupported(format!("F_{n}")))?;
    field(n8)?;
    if p.len() as u64 != n {
        return Err(Error::InvalidPartition(format!("{} classes, expected {n}", p.len())));
    }
    let space = MixedSpace::new(&[n8])?.concat(p.space());
    let words: Vec<Word> = p
        .classes()
        .iter()
        .enumerate()
        .flat_map(|(i, c)| c.words().iter().map(move |v| Word(vec![i as u8]).concat(v)))
        .collect();
    Code::new(space, words, ZeroWord::Optional)
}

/// C′_i = {v : (ω_i | v) ∈ C} for a 1-perfect code C in F_n × F_q^n. The
/// code is certified 1-perfect by a full scan first.
pub fn theorem4_extract(c: &Code, gate: Gate) -> Result<Partition> {
    let orders = c.space().orders();
    let n = orders[0] as usize;
    let q = orders.get(1).copied().unwrap_or(0);
    let m = (1..=4u32).find(|&m| (q as usize).checked_pow(m) == Some(n));
    let Some(m) = m.filter(|_| orders.len() == n + 1 && orders[1..].iter().all(|&o| o == q)) else {
        return Err(Error::ShapeMismatch(format!(
            "space {orders:?} is not F_n × F_q^n with n a power of q"
        )));
    };
    if !is_perfect(c, 1, gate)?.perfect {
        return Err(Error::NotPerfect);
    }
    let tail = MixedSpace::uniform(q, n)?;
    let mut members: Vec<Vec<Word>> = vec![Vec::new(); n];
    for w in c.words() {
        members[w[0] as usize].push(Word(w[1..].to_vec()));
    }
    let classes = members
        .into_iter()
        .map(|ws| Code::new(tail.clone(), ws, ZeroWord::Optional))
        .collect::<Result<Vec<_>>>()?;
    Partition::new(classes, Some((q, m)))
}
