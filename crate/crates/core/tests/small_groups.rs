//! Classical invariant rings in two and three variables.

use modinv::action::MatrixGroup;
use modinv::algebra::{Matrix, PrimeField};
use modinv::homology::{diagnose, free_resolution, transfer_ideal_height, DiagnoseOptions};
use modinv::invariants::{default_bound, fundamental_invariants, presentation, Presentation};
use modinv::{Error, Limits};

fn present(p: u64, n: usize, perms: &[&[usize]]) -> Presentation {
    let f = PrimeField::new(p).unwrap();
    let gens: Vec<Matrix> = perms.iter().map(|s| Matrix::permutation(f, s)).collect();
    let g = MatrixGroup::closure(f, n, &gens, 1000).unwrap();
    let fs = fundamental_invariants(&g, default_bound(&g)).unwrap();
    presentation(&fs, &Limits::default()).unwrap()
}

#[test]
fn symmetric_groups_give_polynomial_rings() {
    // elementary symmetric polynomials, in every characteristic
    for (p, n, perms) in [
        (2, 2, vec![&[1usize, 0][..]]),
        (2, 3, vec![&[1, 0, 2][..], &[1, 2, 0][..]]),
    ] {
        let pr = present(p, n, &perms);
        assert_eq!(pr.fundamental().degrees(), (1..=n as u32).collect::<Vec<_>>());
        assert!(pr.relations().elements().is_empty());
        assert_eq!(free_resolution(&pr, &Limits::default()).unwrap().betti_numbers(), vec![1]);
    }
}

#[test]
fn shift_over_f3_is_a_hypersurface() {
    let pr = present(3, 3, &[&[1, 2, 0]]);
    assert_eq!(pr.fundamental().degrees(), vec![1, 2, 3, 3]);
    let res = free_resolution(&pr, &Limits::default()).unwrap();
    assert_eq!(res.betti_numbers(), vec![1, 1]);
    assert_eq!(res.graded_betti_numbers(), vec![(0, 0, 1), (1, 6, 1)]);
    let r = diagnose(&pr, DiagnoseOptions::default(), &Limits::default()).unwrap();
    assert!(r.is_cm && r.is_consistent(), "{:?}", r.failed_checks());
    // V(im tr) is the line of fixed points
    assert_eq!(r.transfer.unwrap().height, 2);
}

#[test]
fn non_modular_shift_is_cm_without_transfer() {
    let pr = present(2, 3, &[&[1, 2, 0]]);
    let r = diagnose(&pr, DiagnoseOptions::default(), &Limits::default()).unwrap();
    assert!(r.is_cm && r.is_consistent(), "{:?}", r.failed_checks());
    assert!(r.transfer.is_none());
    assert_eq!(
        transfer_ideal_height(&pr, pr.bound(), &Limits::default()),
        Err(Error::NonModular { order: 3 })
    );
}

#[test]
fn trivial_group() {
    let pr = present(2, 4, &[&[0, 1, 2, 3]]);
    assert_eq!(pr.fundamental().degrees(), vec![1, 1, 1, 1]);
    let r = diagnose(&pr, DiagnoseOptions::default(), &Limits::default()).unwrap();
    assert_eq!((r.dim, r.depth, r.pd), (4, 4, 0));
    assert!(r.is_cm);
}
