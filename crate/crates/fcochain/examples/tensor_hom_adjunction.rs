//! The representable endofunctor `F = B (x)_A -`, its right adjoint
//! `G = Hom_A(B, -)`, the unit and counit, and the currying bijection.
//! The triangle identities hold as exact matrix equations.

use fcochain::algebra::{dual_bimodule, hom_space, path_algebra_an, simple_an, Module};
use fcochain::functor::AdjointPair;
use fcochain::linalg::ExactMatrix;

fn main() {
    let a2 = path_algebra_an(2);
    let pair = AdjointPair::for_bimodule(dual_bimodule(&a2)).unwrap();

    // applying the Nakayama functor DA (x) - to the vertex simples
    let s0 = simple_an(&a2, 0);
    let s1 = simple_an(&a2, 1);
    println!("DA (x) S_0 has dimension {}", pair.tensor.apply(&s0).module.dim());
    println!("DA (x) S_1 has dimension {}", pair.tensor.apply(&s1).module.dim());
    assert_eq!(pair.tensor.apply(&s0).module.dim(), 0);
    assert_eq!(pair.tensor.apply(&s1).module.dim(), 2);

    // unit, counit, and both triangle identities
    let m = Module::regular(a2.clone());
    let fm = pair.tensor.apply(&m).module.clone();
    let eta = pair.unit(&m);
    let eps = pair.counit(&fm);
    let first_triangle = eps.compose(&pair.tensor.apply_hom(&eta));
    assert!(first_triangle.matrix().is_identity());
    let gm = pair.hom.apply(&m).module.clone();
    let second_triangle = pair
        .hom
        .apply_hom(&pair.counit(&m))
        .compose(&pair.unit(&gm));
    assert!(second_triangle.matrix().is_identity());
    println!("both triangle identities hold exactly");

    // currying is a bijection Hom(F(M), N) = Hom(M, G(N))
    let n = Module::regular(a2.clone());
    for h in hom_space(&fm, &n) {
        let curried = pair.curry(&m, &n, h.matrix());
        let back = pair.uncurry(&m, &n, &curried);
        assert_eq!(&back, h.matrix());
    }
    println!("curry and uncurry are mutually inverse on the whole hom space");

    // curry of the counit is the identity on G(N)
    let eps_n = pair.counit(&n);
    let gn = pair.hom.apply(&n).module.clone();
    assert_eq!(
        pair.curry(&gn, &n, eps_n.matrix()),
        ExactMatrix::identity(gn.dim())
    );
}
