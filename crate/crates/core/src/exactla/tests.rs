use proptest::prelude::*;

use super::*;

fn gf(p: u32) -> Field {
    Field::new(p).unwrap()
}

#[test]
fn rref_fixtures() {
    let f = gf(5);
    let id = Mat::identity(f, 2);
    assert_eq!(rref(&id), (id.clone(), vec![0, 1]));
    let z = Mat::zeros(f, 2, 3);
    assert_eq!(rref(&z), (z.clone(), vec![]));
    let m = Mat::from_rows(f, 2, &[vec![1, 2], vec![2, 4]]);
    let (r, piv) = rref(&m);
    assert_eq!(r, Mat::from_rows(f, 2, &[vec![1, 2], vec![0, 0]]));
    assert_eq!(piv, vec![0]);
}

#[test]
fn kernel_fixtures() {
    let f = gf(5);
    assert!(kernel(&Mat::identity(f, 3)).is_zero());
    assert!(kernel(&Mat::zeros(f, 3, 3)).is_full());
    let k = kernel(&Mat::from_rows(f, 2, &[vec![1, 2], vec![2, 4]]));
    assert_eq!(k.dim(), 1);
    // canonical basis is (1, 2); (-2, 1) = (3, 1) spans the same line
    assert!(k.contains(&[3, 1]));
    assert_eq!(k.vectors(), vec![vec![1, 2]]);
}

#[test]
fn solve_fixtures() {
    let f = gf(7);
    assert_eq!(solve(&Mat::identity(f, 2), &[4, 5]), Some(vec![4, 5]));
    assert_eq!(solve(&Mat::zeros(f, 2, 2), &[1, 0]), None);
    let m = Mat::from_rows(f, 2, &[vec![1, 1], vec![0, 1]]);
    assert_eq!(solve(&m, &[3, 1]), Some(vec![2, 1]));
}

#[test]
fn quotient_fixtures() {
    let f = gf(11);
    let (p, s) = quotient_basis(&Subspace::zero(f, 2));
    assert!(p.is_identity() && s.is_identity());
    let (p, _) = quotient_basis(&Subspace::full(f, 3));
    assert_eq!(p.rows(), 0);
    let sub = Subspace::from_vectors(f, 2, &[vec![1, 0]]);
    let (p, s) = quotient_basis(&sub);
    assert_eq!(p, Mat::from_rows(f, 2, &[vec![0, 1]]));
    assert_eq!(s, Mat::from_rows(f, 1, &[vec![0], vec![1]]));
}

#[test]
fn field_checks() {
    assert!(Field::new(32003).is_ok());
    assert!(Field::new(32001).is_err());
    let f = gf(32003);
    assert_eq!(f.mul(f.inv(12345), 12345), 1);
    assert_eq!(f.sign(-3), f.neg(1));
}

#[test]
fn intersection_and_preimage() {
    let f = gf(13);
    let a = Subspace::from_vectors(f, 3, &[vec![1, 0, 0], vec![0, 1, 0]]);
    let b = Subspace::from_vectors(f, 3, &[vec![0, 1, 0], vec![0, 0, 1]]);
    assert_eq!(a.intersect(&b), Subspace::from_vectors(f, 3, &[vec![0, 1, 0]]));
    assert_eq!(a.sum(&b), Subspace::full(f, 3));
    let m = Mat::from_rows(f, 3, &[vec![0, 0, 1], vec![1, 0, 0], vec![0, 1, 0]]);
    // m sends e1->e2, e2->e3, e3->e1; preimage of span{e1,e2} is span{e1,e3}
    let pre = a.preimage(&m);
    assert_eq!(pre, Subspace::from_vectors(f, 3, &[vec![1, 0, 0], vec![0, 0, 1]]));
}

fn small_mat() -> impl Strategy<Value = Mat> {
    (1usize..7, 1usize..7).prop_flat_map(|(r, c)| {
        proptest::collection::vec(0u32..7, r * c).prop_map(move |d| Mat::from_data(gf(7), r, c, d))
    })
}

proptest! {
    #[test]
    fn rank_nullity(m in small_mat()) {
        prop_assert_eq!(m.rank() + kernel(&m).dim(), m.cols());
        for v in kernel(&m).vectors() {
            prop_assert!(m.mul_vec(&v).iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn rref_idempotent(m in small_mat()) {
        let (r, p) = rref(&m);
        prop_assert_eq!(rref(&r), (r.clone(), p));
    }

    #[test]
    fn solve_is_exact(m in small_mat(), x in proptest::collection::vec(0u32..7, 7)) {
        let x = &x[..m.cols()];
        let b = m.mul_vec(x);
        let y = solve(&m, &b).expect("consistent system");
        prop_assert_eq!(m.mul_vec(&y), b);
    }

    #[test]
    fn quotient_projection(m in small_mat()) {
        let sub = Subspace::row_space(&m);
        let (p, s) = quotient_basis(&sub);
        prop_assert_eq!(p.rank(), sub.ambient_dim() - sub.dim());
        prop_assert_eq!(kernel(&p), sub.clone());
        prop_assert!(p.mul(&s).is_identity());
    }

    #[test]
    fn image_rank(m in small_mat()) {
        prop_assert_eq!(m.image().dim(), m.rank());
        prop_assert_eq!(m.image(), Subspace::row_space(&m.transpose()));
    }
}
