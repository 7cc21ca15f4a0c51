//! The Nakayama functor `DA (x)_A -` exchanges projectives and injectives,
//! with `Hom_A(DA, -)` as its inverse on those subcategories. Both
//! directions are certified by explicit invertible homomorphisms.

use fcochain::algebra::{dual_bimodule, injective_at, is_isomorphic, path_algebra_an, projective_at};
use fcochain::functor::AdjointPair;

fn main() {
    for n in [2usize, 3] {
        let a = path_algebra_an(n);
        let pair = AdjointPair::for_bimodule(dual_bimodule(&a)).unwrap();
        println!("A{n} path algebra (dimension {}):", a.dim());
        for v in 0..n {
            let e = a.basis_vector(v);
            let p = projective_at(&a, &e).unwrap();
            let i = injective_at(&a, &e).unwrap();
            let np = pair.tensor.apply(&p).module.clone();
            let cert = is_isomorphic(&np, &i).unwrap();
            let gi = pair.hom.apply(&i).module.clone();
            let cert_back = is_isomorphic(&gi, &p).unwrap();
            assert!(cert.is_invertible() && cert_back.is_invertible());
            println!(
                "  vertex {v}: N(P_{v}) has dim {} = dim I_{v} = {}, certificates found both ways",
                np.dim(),
                i.dim()
            );
        }
    }
}
