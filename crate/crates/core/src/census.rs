//! Families of RM-like product codes under varying quasigroup assignments:
//! distinctness as sets, nonequivalence where the equivalence engine
//! decides, and the class-size inequality behind the counting argument.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::construct::{default_inner_partitions, theorem6_product, ProductSpec};
use crate::error::{Error, Result};
use crate::mdsq::{quasigroup_library, Quasigroup};
use crate::partition::coset_partition_rm;
use crate::space::{are_equivalent, fingerprint, Code, Equivalence, Fingerprint, Word};

/// Largest space the nonequivalence census accepts.
pub const CENSUS_SPACE_LIMIT: u64 = 4096;

/// How quasigroups are assigned to the slots (the words of the outer code B,
/// in lexicographic order). Assignments are lists of library indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Enumerator {
    /// Every slot gets `base` except `slot`, which runs through the library.
    SingleSlot { slot: usize, base: usize },
    /// Independent uniform library indices per slot from a ChaCha8 stream.
    Seeded { seed: u64 },
    /// All assignments in odometer order, last slot fastest.
    Exhaustive,
    /// The given assignments.
    Explicit(Vec<Vec<usize>>),
}

#[derive(Clone, Debug, Serialize)]
pub struct CensusReport {
    /// (q, m1, m2) when the codes come from a product census.
    pub params: Option<(u8, u32, u32)>,
    pub slots: usize,
    pub library_size: usize,
    pub assignments_tried: usize,
    pub distinct_code_count: usize,
    /// Proven number of equivalence classes among the distinct codes, when
    /// equivalence was examined.
    pub nonequivalent_lower_bound: Option<usize>,
    pub undecided_pairs: usize,
    /// Fingerprints of the distinct codes, sorted.
    pub fingerprints: Vec<Fingerprint>,
    #[serde(skip)]
    pub codes: Vec<Code>,
}

fn assignments(
    enumerator: &Enumerator,
    slots: usize,
    library: usize,
    limit: usize,
) -> Result<Vec<Vec<usize>>> {
    let out: Vec<Vec<usize>> = match enumerator {
        Enumerator::SingleSlot { slot, base } => {
            if *slot >= slots || *base >= library {
                return Err(Error::BadParameters(format!(
                    "slot {slot} / base {base} outside {slots} slots and {library} quasigroups"
                )));
            }
            (0..library.min(limit))
                .map(|g| {
                    let mut a = vec![*base; slots];
                    a[*slot] = g;
                    a
                })
                .collect()
        }
        Enumerator::Seeded { seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            (0..limit)
                .map(|_| (0..slots).map(|_| rng.gen_range(0..library)).collect())
                .collect()
        }
        Enumerator::Exhaustive => {
            let mut out = Vec::new();
            let mut a = vec![0usize; slots];
            'outer: while out.len() < limit {
                out.push(a.clone());
                for x in a.iter_mut().rev() {
                    *x += 1;
                    if *x < library {
                        continue 'outer;
                    }
                    *x = 0;
                }
                break;
            }
            out
        }
        Enumerator::Explicit(list) => {
            if list.iter().any(|a| a.len() != slots || a.iter().any(|&g| g >= library)) {
                return Err(Error::BadParameters(format!(
                    "assignments must list {slots} indices below {library}"
                )));
            }
            list.iter().take(limit).cloned().collect()
        }
    };
    Ok(out)
}

/// Builds one product code per assignment and counts the distinct word sets.
/// The inner partitions and the outer code are the defaults: translated coset
/// partitions of length q^{m1} and the zero class of the coset partition of
/// length q^{m2}.
pub fn census_distinct(
    q: u8,
    m1: u32,
    m2: u32,
    enumerator: &Enumerator,
    limit: usize,
) -> Result<CensusReport> {
    for m in [m1, m2] {
        let r = (q as i64 - 1) * m as i64 - 2;
        if r < 0 {
            return Err(Error::DegenerateOrder(r));
        }
    }
    let library = quasigroup_library((q as usize).pow(m1), (q as usize).pow(m2) - 1)?;
    let inner = default_inner_partitions(q, m1)?;
    let outer = coset_partition_rm(q, m2)?.class(0).clone();
    let slot_words: Vec<Word> = outer.words().to_vec();
    let plan = assignments(enumerator, slot_words.len(), library.len(), limit)?;
    let codes = plan
        .par_iter()
        .map(|a| {
            let spec = assignment_spec(m1, m2, &library, &slot_words, a);
            theorem6_product(&inner, &outer, &spec)
        })
        .collect::<Result<Vec<Code>>>()?;
    let mut seen = BTreeSet::new();
    let mut distinct = Vec::new();
    for c in codes {
        if seen.insert(c.words().to_vec()) {
            distinct.push(c);
        }
    }
    let mut fingerprints: Vec<Fingerprint> = distinct.par_iter().map(fingerprint).collect();
    fingerprints.sort();
    Ok(CensusReport {
        params: Some((q, m1, m2)),
        slots: slot_words.len(),
        library_size: library.len(),
        assignments_tried: plan.len(),
        distinct_code_count: distinct.len(),
        nonequivalent_lower_bound: None,
        undecided_pairs: 0,
        fingerprints,
        codes: distinct,
    })
}

fn assignment_spec(
    m1: u32,
    m2: u32,
    library: &[Quasigroup],
    slots: &[Word],
    a: &[usize],
) -> ProductSpec {
    let mut spec = ProductSpec::uniform(m1, m2, library[a[0]].clone());
    for (v, &g) in slots.iter().zip(a) {
        spec.overrides.insert(v.clone(), library[g].clone());
    }
    spec
}

/// Groups distinct codes by fingerprint and runs the equivalence search
/// inside each group. A code opens a new class only when it is proven
/// nonequivalent to every representative so far; otherwise the undecided
/// comparisons are counted and the code is left out of the bound.
pub fn census_nonequivalent(codes: &[Code], budget: u64) -> Result<CensusReport> {
    let first = codes.first().ok_or(Error::EmptyCode)?;
    let space = first.space();
    if codes.iter().any(|c| c.space() != space) {
        return Err(Error::SpaceMismatch);
    }
    if space.size() > CENSUS_SPACE_LIMIT as u128 {
        return Err(Error::SpaceTooLarge {
            size: space.size(),
            gate: CENSUS_SPACE_LIMIT,
        });
    }
    let mut seen = BTreeSet::new();
    let distinct: Vec<&Code> = codes
        .iter()
        .filter(|c| seen.insert(c.words().to_vec()))
        .collect();
    let prints: Vec<Fingerprint> = distinct.par_iter().map(|c| fingerprint(c)).collect();
    let mut groups: BTreeMap<&Fingerprint, Vec<&Code>> = BTreeMap::new();
    for (c, f) in distinct.iter().zip(&prints) {
        groups.entry(f).or_default().push(c);
    }
    let mut classes = 0;
    let mut undecided = 0;
    for members in groups.values() {
        let mut reps: Vec<&Code> = Vec::new();
        for c in members {
            let mut unknown = 0;
            let mut equivalent = false;
            for r in &reps {
                match are_equivalent(c, r, budget)? {
                    Equivalence::Equivalent(_) => {
                        equivalent = true;
                        break;
                    }
                    Equivalence::Nonequivalent(_) => {}
                    Equivalence::Unknown => unknown += 1,
                }
            }
            if equivalent {
                continue;
            }
            if unknown == 0 {
                reps.push(c);
            } else {
                undecided += unknown;
            }
        }
        classes += reps.len();
    }
    let mut fingerprints = prints.clone();
    fingerprints.sort();
    Ok(CensusReport {
        params: None,
        slots: 0,
        library_size: 0,
        assignments_tried: codes.len(),
        distinct_code_count: distinct.len(),
        nonequivalent_lower_bound: Some(classes),
        undecided_pairs: undecided,
        fingerprints,
        codes: distinct.into_iter().cloned().collect(),
    })
}

/// Exact evaluation of n!·n!·(q!)^n ≤ n^{2(n+1)}·q^{(q+1)n} =
/// q^{2m(q^m+1)}·q^{(q+1)q^m} for n = q^m.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassSizeBound {
    pub q: u32,
    pub m: u32,
    pub class_size: String,
    pub bound: String,
    /// The two closed forms of the right-hand side agree.
    pub forms_agree: bool,
    pub holds: bool,
}

pub fn class_size_bound_check(q: u32, m: u32) -> ClassSizeBound {
    let n = q.pow(m);
    let fact = |k: u32| (1..=k).fold(BigUint::from(1u32), |acc, i| acc * i);
    let big_q = BigUint::from(q);
    let big_n = BigUint::from(n);
    let class_size = fact(n) * fact(n) * fact(q).pow(n);
    let middle = big_n.pow(2 * (n + 1)) * big_q.pow((q + 1) * n);
    let bound = big_q.pow(2 * m * (n + 1)) * big_q.pow((q + 1) * n);
    ClassSizeBound {
        q,
        m,
        holds: class_size <= bound,
        forms_agree: middle == bound,
        class_size: class_size.to_string(),
        bound: bound.to_string(),
    }
}
