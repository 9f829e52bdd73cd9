//! Packed vectors of length ≤ 64 over F_q, used by the weight searches.
//!
//! A symbol of F_{p^t} is stored as its t base-p digits, one digit per plane,
//! so field addition is plane-wise addition mod p. In characteristic 2 each
//! plane is a single `u64` bitmask and addition is XOR.

pub(crate) trait Lanes: Copy + Send + Sync + 'static {
    fn from_symbols(v: &[u8]) -> Self;
    fn add(&self, o: &Self) -> Self;
    fn weight(&self) -> u32;
}

#[derive(Clone, Copy)]
pub(crate) struct Bits<const T: usize>([u64; T]);

impl<const T: usize> Lanes for Bits<T> {
    fn from_symbols(v: &[u8]) -> Self {
        let mut b = [0u64; T];
        for (i, &s) in v.iter().enumerate() {
            for (j, plane) in b.iter_mut().enumerate() {
                if (s >> j) & 1 == 1 {
                    *plane |= 1 << i;
                }
            }
        }
        Bits(b)
    }

    #[inline(always)]
    fn add(&self, o: &Self) -> Self {
        let mut r = self.0;
        for (x, y) in r.iter_mut().zip(&o.0) {
            *x ^= y;
        }
        Bits(r)
    }

    #[inline(always)]
    fn weight(&self) -> u32 {
        self.0.iter().fold(0u64, |acc, x| acc | x).count_ones()
    }
}

#[derive(Clone, Copy)]
pub(crate) struct Digits<const P: u8, const T: usize>([[u8; 64]; T]);

impl<const P: u8, const T: usize> Lanes for Digits<P, T> {
    fn from_symbols(v: &[u8]) -> Self {
        let mut d = [[0u8; 64]; T];
        for (i, &s) in v.iter().enumerate() {
            let mut s = s;
            for plane in d.iter_mut() {
                plane[i] = s % P;
                s /= P;
            }
        }
        Digits(d)
    }

    #[inline(always)]
    fn add(&self, o: &Self) -> Self {
        let mut r = self.0;
        for (x, y) in r.iter_mut().zip(&o.0) {
            for (a, &b) in x.iter_mut().zip(y) {
                let s = *a + b;
                *a = if s >= P { s - P } else { s };
            }
        }
        Digits(r)
    }

    #[inline(always)]
    fn weight(&self) -> u32 {
        let mut any = [0u8; 64];
        for plane in &self.0 {
            for (a, &b) in any.iter_mut().zip(plane) {
                *a |= b;
            }
        }
        any.iter().map(|&a| (a != 0) as u32).sum()
    }
}

/// A computation generic over the lane type of some field.
pub(crate) trait WithLanes {
    type Out;
    fn run<L: Lanes>(self) -> Self::Out;
}

/// Runs `w` with the lane type matching F_q.
pub(crate) fn with_lanes<W: WithLanes>(q: u8, w: W) -> W::Out {
    match q {
        2 => w.run::<Bits<1>>(),
        4 => w.run::<Bits<2>>(),
        8 => w.run::<Bits<3>>(),
        16 => w.run::<Bits<4>>(),
        3 => w.run::<Digits<3, 1>>(),
        9 => w.run::<Digits<3, 2>>(),
        5 => w.run::<Digits<5, 1>>(),
        7 => w.run::<Digits<7, 1>>(),
        11 => w.run::<Digits<11, 1>>(),
        13 => w.run::<Digits<13, 1>>(),
        _ => unreachable!("unsupported field order {q}"),
    }
}
