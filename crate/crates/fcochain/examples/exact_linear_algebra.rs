//! The exact-arithmetic substrate: kernels, linear solving and canonical
//! quotient presentations over the rationals. Everything downstream reduces
//! to these three operations.

use fcochain::linalg::{quotient_space, rat, rint, solve_linear, ExactMatrix};

fn main() {
    // A rank-one 2x2 matrix has a one-dimensional kernel.
    let m = ExactMatrix::from_rows(vec![
        vec![rint(1), rint(2)],
        vec![rint(2), rint(4)],
    ])
    .unwrap();
    let kernel = m.kernel_basis();
    println!("kernel of [[1,2],[2,4]]:\n{kernel}");
    assert!(m.mul(&kernel).is_zero());
    assert_eq!(m.rank() + kernel.cols(), m.cols());

    // Solving picks the representative with zero free variables, and
    // inconsistent systems are detected exactly.
    let b = ExactMatrix::from_rows(vec![vec![rat(1, 3)], vec![rat(2, 3)]]).unwrap();
    let x = solve_linear(&m, &b).unwrap();
    println!("one solution of m x = (1/3, 2/3):\n{x}");
    assert_eq!(m.mul(&x), b);
    let bad = ExactMatrix::from_rows(vec![vec![rint(1)], vec![rint(1)]]).unwrap();
    assert!(solve_linear(&m, &bad).is_err());

    // A quotient of an ambient space comes with explicit projection and
    // section; the section hits the classes of non-pivot basis vectors.
    let relations = ExactMatrix::from_rows(vec![vec![rint(1)], vec![rint(1)], vec![rint(0)]]).unwrap();
    let q = quotient_space(3, &relations).unwrap();
    println!(
        "quotient of k^3 by span(1,1,0): dimension {}\nprojection:\n{}",
        q.quotient_dim, q.projection
    );
    assert_eq!(q.quotient_dim, 2);
    assert!(q.projection.mul(&q.section).is_identity());
    assert!(q.projection.mul(&relations).is_zero());

    println!("exact linear algebra: all identities hold with no tolerance");
}
