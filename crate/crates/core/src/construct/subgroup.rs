//! Additive 1-perfect codes from partitions of F_p^r into subspaces.

use crate::error::{Error, Result};
use crate::galois::field;
use crate::space::{Code, Gate, MixedSpace, Word, ZeroWord};

/// Largest ambient group handled.
pub const AMBIENT_LIMIT: u64 = 1 << 14;

/// Subspaces G_1, …, G_n of F_p^r, each given by an F_p-basis, whose union
/// is F_p^r and whose pairwise intersections are {0}.
///
/// Element Σ c_b·basis[b] of G_i is identified with the element of index
/// Σ c_b p^b of F_{p^{d_i}}. The map is additive and sends 0 to 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgroupPartition {
    p: u8,
    dim: usize,
    subgroups: Vec<Vec<Vec<u8>>>,
}

fn vec_index(p: u8, v: &[u8]) -> usize {
    v.iter().fold(0, |acc, &x| acc * p as usize + x as usize)
}

impl SubgroupPartition {
    pub fn new(p: u8, dim: usize, subgroups: Vec<Vec<Vec<u8>>>) -> Result<SubgroupPartition> {
        let f = field(p)?;
        if f.degree() != 1 {
            return Err(Error::NotAPartition(format!("{p} is not prime")));
        }
        let size = (p as u64)
            .checked_pow(dim as u32)
            .filter(|&s| s <= AMBIENT_LIMIT)
            .ok_or_else(|| Error::BadParameters(format!("F_{p}^{dim} exceeds {AMBIENT_LIMIT}")))?;
        let sp = SubgroupPartition { p, dim, subgroups };
        let mut owner = vec![usize::MAX; size as usize];
        for (i, basis) in sp.subgroups.iter().enumerate() {
            if basis.is_empty() || basis.iter().any(|b| b.len() != dim || b.iter().any(|&x| x >= p)) {
                return Err(Error::NotAPartition(format!("subgroup {i} has a malformed basis")));
            }
            for v in sp.elements(i) {
                let idx = vec_index(p, &v);
                if idx == 0 {
                    continue;
                }
                if owner[idx] != usize::MAX {
                    return Err(Error::NotAPartition(if owner[idx] == i {
                        format!("basis of subgroup {i} is dependent")
                    } else {
                        format!("subgroups {} and {i} meet outside 0", owner[idx])
                    }));
                }
                owner[idx] = i;
            }
        }
        if owner[1..].contains(&usize::MAX) {
            return Err(Error::NotAPartition("subgroups do not cover the group".into()));
        }
        Ok(sp)
    }

    pub fn characteristic(&self) -> u8 {
        self.p
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.subgroups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subgroups.is_empty()
    }

    pub fn bases(&self) -> &[Vec<Vec<u8>>] {
        &self.subgroups
    }

    pub fn dims(&self) -> Vec<usize> {
        self.subgroups.iter().map(Vec::len).collect()
    }

    /// |G_i| for every subgroup.
    pub fn orders(&self) -> Vec<u64> {
        self.dims().iter().map(|&d| (self.p as u64).pow(d as u32)).collect()
    }

    /// Elements of G_i in label order.
    pub fn elements(&self, i: usize) -> Vec<Vec<u8>> {
        let p = self.p as usize;
        let basis = &self.subgroups[i];
        (0..p.pow(basis.len() as u32))
            .map(|mut label| {
                let mut v = vec![0u8; self.dim];
                for b in basis {
                    let c = label % p;
                    label /= p;
                    for (x, &y) in v.iter_mut().zip(b) {
                        *x = ((*x as usize + c * y as usize) % p) as u8;
                    }
                }
                v
            })
            .collect()
    }
}

/// {(g_1, …, g_n) ∈ G_1 × … × G_n : Σ g_i = 0}, with G_i written over the
/// alphabet F_{|G_i|}.
pub fn herzog_schonheim(sp: &SubgroupPartition) -> Result<Code> {
    if sp.len() < 2 {
        return Err(Error::NotAPartition("at least two subgroups are needed".into()));
    }
    let orders = sp
        .orders()
        .iter()
        .map(|&o| u8::try_from(o).map_err(|_| Error::Unsupported(format!("alphabet of order {o}"))))
        .collect::<Result<Vec<u8>>>()?;
    let space = MixedSpace::new(&orders)?;
    space.check_gate(Gate::default())?;
    let p = sp.p as usize;
    let size = p.pow(sp.dim as u32);
    let elems: Vec<Vec<usize>> = (0..sp.len())
        .map(|i| sp.elements(i).iter().map(|v| vec_index(sp.p, v)).collect())
        .collect();
    let mut first_label = vec![None; size];
    for (label, &idx) in elems[0].iter().enumerate() {
        first_label[idx] = Some(label as u8);
    }
    let strides: Vec<usize> = (0..sp.dim).map(|i| p.pow((sp.dim - 1 - i) as u32)).collect();
    let add = |a: usize, b: usize| -> usize {
        strides
            .iter()
            .map(|&s| ((a / s % p + b / s % p) % p) * s)
            .sum()
    };
    let neg = |a: usize| -> usize { strides.iter().map(|&s| ((p - a / s % p) % p) * s).sum() };

    let mut words = Vec::new();
    let mut word = vec![0u8; sp.len()];
    fn walk(
        i: usize,
        sum: usize,
        word: &mut Vec<u8>,
        words: &mut Vec<Word>,
        elems: &[Vec<usize>],
        first_label: &[Option<u8>],
        add: &dyn Fn(usize, usize) -> usize,
        neg: &dyn Fn(usize) -> usize,
    ) {
        if i == elems.len() {
            if let Some(l) = first_label[neg(sum)] {
                word[0] = l;
                words.push(Word(word.clone()));
            }
            return;
        }
        for (label, &g) in elems[i].iter().enumerate() {
            word[i] = label as u8;
            walk(i + 1, add(sum, g), word, words, elems, first_label, add, neg);
        }
    }
    walk(1, 0, &mut word, &mut words, &elems, &first_label, &add, &neg);
    Code::new(space, words, ZeroWord::Required)
}

/// One α-dimensional subspace W of F_q^m together with every 1-dimensional
/// subspace not inside W, as a partition of F_p^{mt} (q = p^t).
///
/// W is spanned by the first α coordinate vectors; its F_p-basis is x^j·e_i
/// (i outer, j inner), so the W-part (w_1, …, w_α) gets the label
/// Σ index(w_i)·q^{i−1}. Lines are listed by their tail on the last m − α
/// coordinates, scaled to have leading entry 1, in lexicographic order; for
/// one tail the W-parts follow with nonzero labels increasing and the zero
/// W-part last. Each line spanned by v gets the F_p-basis x^j·v.
pub fn hs_subgroup_partition(q: u8, m: u32, alpha: u32) -> Result<SubgroupPartition> {
    let f = field(q)?;
    if !(m > alpha && alpha >= 2) {
        return Err(Error::BadParameters(format!("need m > α ≥ 2, got m = {m}, α = {alpha}")));
    }
    if (q as u64).checked_pow(m).is_none_or(|s| s > AMBIENT_LIMIT) {
        return Err(Error::BadParameters(format!("q^m above {AMBIENT_LIMIT}")));
    }
    let (p, t) = (f.characteristic(), f.degree() as usize);
    let (m, alpha) = (m as usize, alpha as usize);
    let x_pow: Vec<u8> = (0..t).map(|j| p.pow(j as u32)).collect();
    let flatten = |v: &[u8]| -> Vec<u8> {
        v.iter()
            .flat_map(|&s| (0..t).map(move |j| s / p.pow(j as u32) % p))
            .collect()
    };
    let scaled = |v: &[u8], c: u8| -> Vec<u8> { v.iter().map(|&s| f.sym_mul(c, s)).collect() };

    let mut subgroups = Vec::new();
    let mut w_basis = Vec::new();
    for i in 0..alpha {
        let mut e = vec![0u8; m];
        e[i] = 1;
        for &x in &x_pow {
            w_basis.push(flatten(&scaled(&e, x)));
        }
    }
    subgroups.push(w_basis);

    let tails = MixedSpace::uniform(q, m - alpha)?;
    let w_space = (q as u64).pow(alpha as u32);
    let w_part = |label: u64| -> Vec<u8> {
        (0..alpha)
            .map(|i| (label / (q as u64).pow(i as u32) % q as u64) as u8)
            .collect()
    };
    for ti in 0..tails.size() as u64 {
        let tail = tails.word_at(ti);
        if tail.iter().find(|&&s| s != 0) != Some(&1) {
            continue;
        }
        for label in (1..w_space).chain([0]) {
            let mut v = w_part(label);
            v.extend_from_slice(&tail);
            subgroups.push(x_pow.iter().map(|&x| flatten(&scaled(&v, x))).collect());
        }
    }
    SubgroupPartition::new(p, m * t, subgroups)
}
