//! Kernels and cokernels of chain morphisms, computed degreewise with the
//! induced differentials, together with their universal properties.

use fcochain::algebra::{dual_bimodule, dual_numbers};
use fcochain::complex::{cokernel_complex, kernel_complex, morphism_space};
use fcochain::functor::RepEndofunctor;
use fcochain::linalg::solve_linear;
use fcochain::sample::{module_pool, Sampler};

fn main() {
    let a = dual_numbers();
    let f = RepEndofunctor::new(dual_bimodule(&a)).unwrap();
    let pool = module_pool(&a, 4);
    let mut sampler = Sampler::new(42);

    let c = sampler.random_complex(&f, &pool, -1, 1, 3, 4);
    let d = sampler.random_complex(&f, &pool, -1, 1, 3, 4);
    let phi = sampler.random_chain_map(&c, &d);
    println!("source window {:?}, target window {:?}", c.window(), d.window());

    let (ker, iota) = kernel_complex(&phi).unwrap();
    println!("kernel dimensions: {:?}", dims(&ker));
    assert!(phi.compose(&iota).is_zero());

    // universal property: any cone through phi factors uniquely through iota
    for eta_base in morphism_space(&ker, &ker) {
        let eta = iota.compose(&eta_base);
        let mut ok = true;
        if let Some((lo, hi)) = ker.window() {
            for n in lo..=hi {
                let w = solve_linear(iota.component(n).matrix(), eta.component(n).matrix())
                    .expect("cone factors");
                ok &= iota.component(n).matrix().mul(&w) == eta.component(n).matrix().clone();
            }
        }
        assert!(ok);
    }
    println!("kernel universal property verified on the endomorphism space");

    let (coker, pi) = cokernel_complex(&phi).unwrap();
    println!("cokernel dimensions: {:?}", dims(&coker));
    assert!(pi.compose(&phi).is_zero());
    assert!(pi.is_degreewise_epi());
    println!("cokernel projection is a degreewise epimorphism");
}

fn dims(c: &fcochain::complex::LeftComplex) -> Vec<usize> {
    match c.window() {
        None => vec![],
        Some((lo, hi)) => (lo..=hi).map(|n| c.term(n).dim()).collect(),
    }
}
