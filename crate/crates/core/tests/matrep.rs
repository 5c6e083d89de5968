mod common;

use proptest::prelude::*;
use synchro_core::matrep::{fingerprint, BitMatrix};

const DIM: usize = 8;

/// Block diagonal with `blocks` copies of `[[1,1],[0,1]]`.
fn involution(blocks: usize) -> BitMatrix {
    let mut m = BitMatrix::identity(2, DIM).unwrap();
    for b in 0..blocks {
        m.set(2 * b, 2 * b + 1, 1);
    }
    m
}

/// `L U P`, unit lower / unit upper triangular times a permutation matrix.
fn invertible() -> impl Strategy<Value = BitMatrix> {
    let bits = prop::collection::vec(0u32..2, DIM * DIM);
    let perm = Just((0..DIM).collect::<Vec<_>>()).prop_shuffle();
    (bits.clone(), bits, perm).prop_map(|(l, u, p)| {
        let mut lo = BitMatrix::identity(2, DIM).unwrap();
        let mut up = BitMatrix::identity(2, DIM).unwrap();
        for i in 0..DIM {
            for j in 0..i {
                lo.set(i, j, l[i * DIM + j]);
                up.set(j, i, u[i * DIM + j]);
            }
        }
        lo.mul(&up).mul(&BitMatrix::permutation(2, &p).unwrap())
    })
}

fn conj(f: &BitMatrix, x: &BitMatrix) -> BitMatrix {
    f.inverse().unwrap().mul(x).mul(f)
}

proptest! {
    #![proptest_config(common::config(128))]

    #[test]
    fn conjugation_invariance(bx in 1usize..=4, by in 1usize..=4, g in invertible(), f in invertible()) {
        let x = involution(bx);
        let y = conj(&g, &involution(by));
        prop_assert!(y.mul(&y).is_identity());
        let before = fingerprint(&x, &y).unwrap();
        let after = fingerprint(&conj(&f, &x), &conj(&f, &y)).unwrap();
        prop_assert_eq!(before, after);
    }

    #[test]
    fn swapping_exchanges_primed_entries(bx in 1usize..=4, by in 1usize..=4, g in invertible()) {
        let x = involution(bx);
        let y = conj(&g, &involution(by));
        let (d1, d2, d1p, d2p) = fingerprint(&x, &y).unwrap().as_tuple();
        prop_assert_eq!(fingerprint(&y, &x).unwrap().as_tuple(), (d1, d2, d2p, d1p));
        prop_assert!(d2 <= d1 && d1 <= DIM);
        prop_assert!(x.one_minus().rank() <= d1p && d1p <= d1);
    }
}
