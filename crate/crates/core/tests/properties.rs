use proptest::prelude::*;

use perfmix::construct::theorem4_construct;
use perfmix::mdsq::{format_quasigroup, isotope, parse_quasigroup, quasigroup_library};
use perfmix::partition::{coset_partition_rm, format_partition, parse_partition};
use perfmix::space::{
    are_equivalent, fingerprint, format_code, hamming_distance, is_perfect, parse_code, relabel, Equivalence,
    Witness, DEFAULT_EQUIV_BUDGET,
};
use perfmix::{field, Code, Gate, MixedSpace, Word, ZeroWord};

const FIELDS: [u8; 10] = [2, 3, 4, 5, 7, 8, 9, 11, 13, 16];

fn small_space() -> impl Strategy<Value = MixedSpace> {
    prop::collection::vec(prop::sample::select(vec![2u8, 3, 4, 5]), 1..6)
        .prop_map(|orders| MixedSpace::new(&orders).unwrap())
}

fn word_in(space: &MixedSpace) -> impl Strategy<Value = Word> {
    let size = space.size() as u64;
    let s = space.clone();
    (0..size).prop_map(move |i| s.word_at(i))
}

fn code_in(space: MixedSpace) -> impl Strategy<Value = Code> {
    let size = space.size() as u64;
    prop::collection::btree_set(0..size, 2..12).prop_map(move |idx| {
        Code::new(space.clone(), idx.into_iter().map(|i| space.word_at(i)), ZeroWord::Optional).unwrap()
    })
}

/// A random coordinate permutation within equal orders, plus a random
/// symbol permutation per coordinate.
fn witness_for(space: &MixedSpace, seed: u64) -> Witness {
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let orders = space.orders();
    let mut sigma: Vec<usize> = (0..orders.len()).collect();
    for q in 2..=16u8 {
        let slots: Vec<usize> = (0..orders.len()).filter(|&i| orders[i] == q).collect();
        let mut shuffled = slots.clone();
        shuffled.shuffle(&mut rng);
        for (&from, &to) in slots.iter().zip(&shuffled) {
            sigma[from] = to;
        }
    }
    let pis = orders
        .iter()
        .map(|&q| {
            let mut p: Vec<u8> = (0..q).collect();
            p.shuffle(&mut rng);
            p
        })
        .collect();
    Witness { sigma, pis }
}

proptest! {
    #[test]
    fn frobenius(qi in 0usize..FIELDS.len(), a in 0u8..16, b in 0u8..16) {
        let q = FIELDS[qi];
        let f = field(q).unwrap();
        let (a, b) = (a % q, b % q);
        let p = f.characteristic() as u32;
        prop_assert_eq!(f.sym_pow(f.sym_add(a, b), p), f.sym_add(f.sym_pow(a, p), f.sym_pow(b, p)));
        // a^q = a
        prop_assert_eq!(f.sym_pow(a, q as u32), a);
    }

    #[test]
    fn field_laws(qi in 0usize..FIELDS.len(), a in 0u8..16, b in 0u8..16, c in 0u8..16) {
        let q = FIELDS[qi];
        let f = field(q).unwrap();
        let (a, b, c) = (a % q, b % q, c % q);
        prop_assert_eq!(f.sym_mul(a, f.sym_add(b, c)), f.sym_add(f.sym_mul(a, b), f.sym_mul(a, c)));
        prop_assert_eq!(f.sym_sub(f.sym_add(a, b), b), a);
        if b != 0 {
            prop_assert_eq!(f.sym_mul(f.sym_mul(a, b), f.sym_inv(b)), a);
        }
    }

    #[test]
    fn index_round_trip((space, i) in small_space().prop_flat_map(|s| {
        let size = s.size() as u64;
        (Just(s), 0..size)
    })) {
        let w = space.word_at(i);
        prop_assert!(space.contains(&w));
        prop_assert_eq!(space.index_of(&w), i);
    }

    #[test]
    fn distance_is_a_metric((space, x, y, z) in small_space().prop_flat_map(|s| {
        (Just(s.clone()), word_in(&s), word_in(&s), word_in(&s))
    })) {
        let d = |u: &Word, v: &Word| hamming_distance(&space, u, v).unwrap();
        prop_assert_eq!(d(&x, &x), 0);
        prop_assert_eq!(d(&x, &y), d(&y, &x));
        prop_assert!(d(&x, &z) <= d(&x, &y) + d(&y, &z));
        prop_assert_eq!(d(&x, &y) == 0, x == y);
        // translation invariance
        prop_assert_eq!(d(&space.add(&x, &z), &space.add(&y, &z)), d(&x, &y));
    }

    #[test]
    fn code_file_round_trip(c in small_space().prop_flat_map(code_in)) {
        let text = format_code(&c);
        let back = parse_code(&text).unwrap();
        prop_assert_eq!(&back, &c);
        prop_assert_eq!(format_code(&back), text);
    }

    #[test]
    fn fingerprint_is_invariant(c in small_space().prop_flat_map(code_in), seed in any::<u64>()) {
        let w = witness_for(c.space(), seed);
        let mut target = c.space().orders().to_vec();
        for (i, &q) in c.space().orders().iter().enumerate() {
            target[w.sigma[i]] = q;
        }
        let image = w.apply(&c, &MixedSpace::new(&target).unwrap()).unwrap();
        prop_assert_eq!(fingerprint(&image), fingerprint(&c));
        match are_equivalent(&c, &image, DEFAULT_EQUIV_BUDGET).unwrap() {
            Equivalence::Equivalent(found) => prop_assert!(found.verify(&c, &image)),
            Equivalence::Unknown => {}
            Equivalence::Nonequivalent(inv) => prop_assert!(false, "separated by {:?}", inv),
        }
    }

    #[test]
    fn perfection_survives_relabeling(coord in 0usize..5, seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let c = theorem4_construct(&coset_partition_rm(2, 2).unwrap()).unwrap();
        let q = c.space().orders()[coord];
        let mut perm: Vec<u8> = (0..q).collect();
        perm.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
        let r = relabel(&c, coord, &perm).unwrap();
        prop_assert_eq!(fingerprint(&r), fingerprint(&c));
        prop_assert!(is_perfect(&r, 1, Gate::default()).unwrap().perfect);
    }

    #[test]
    fn quasigroup_file_round_trip(order in 2usize..6, arity in 1usize..4, pick in any::<prop::sample::Index>(), seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let lib = quasigroup_library(order, arity).unwrap();
        let g = pick.get(&lib);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let perms: Vec<Vec<u8>> = (0..=arity)
            .map(|_| {
                let mut p: Vec<u8> = (1..=order as u8).collect();
                p.shuffle(&mut rng);
                p
            })
            .collect();
        let h = isotope(g, &perms).unwrap();
        let text = format_quasigroup(&h);
        let back = parse_quasigroup(&text).unwrap();
        prop_assert_eq!(&back, &h);
        prop_assert_eq!(format_quasigroup(&back), text);
    }

    #[test]
    fn partition_file_round_trip(params in prop::sample::select(vec![(2u8, 2u32), (2, 3), (3, 1), (3, 2), (4, 1)]), shift in any::<u64>()) {
        let p = coset_partition_rm(params.0, params.1).unwrap();
        let v = p.space().word_at(shift % p.space().size() as u64);
        let p = p.translate(&v);
        let text = format_partition(&p).unwrap();
        let back = parse_partition(&text).unwrap();
        prop_assert_eq!(back.classes(), p.classes());
        prop_assert_eq!(back.params(), Some(params));
        prop_assert_eq!(format_partition(&back).unwrap(), text);
    }
}
