//! Two-term complexes concentrated in adjacent degrees and their lifting and
//! extension properties: the pieces built on a projective module lift
//! against every degreewise epimorphism, the ones built on an injective
//! module extend against every degreewise monomorphism.

use fcochain::algebra::{dual_bimodule, path_algebra_an, projective_at, injective_at};
use fcochain::functor::AdjointPair;
use fcochain::proj_inj::{extend_through_mono, lift_through_epi, sigma_injective_left, sigma_projective_left};
use fcochain::sample::{module_pool, Sampler};

fn main() {
    let a2 = path_algebra_an(2);
    let pair = AdjointPair::for_bimodule(dual_bimodule(&a2)).unwrap();
    let pool = module_pool(&a2, 4);
    let mut sampler = Sampler::new(5);

    // a projective two-term piece: P in degree 0, F(P) in degree 1, with the
    // identity differential
    let p = projective_at(&a2, &a2.basis_vector(0)).unwrap();
    let sigma = sigma_projective_left(&pair.tensor, 0, &p).unwrap();
    println!(
        "projective piece: dims ({}, {}) in degrees (0, 1)",
        sigma.term(0).dim(),
        sigma.term(1).dim()
    );

    // lift against a random degreewise epimorphism
    let target = sampler.random_complex(&pair.tensor, &pool, 0, 1, 2, 4);
    let epi = sampler.random_epi(&pair.tensor, &pool, &target, 4).unwrap();
    let psi = sampler.random_chain_map(&sigma, &target);
    let lambda = lift_through_epi(&epi, &psi).unwrap();
    assert!(epi.compose(&lambda).eq_as_map(&psi));
    println!("lift found and verified by composition");

    // an injective two-term piece: G(I) in degree 0, I in degree 1, with the
    // counit as differential
    let i = injective_at(&a2, &a2.basis_vector(1)).unwrap();
    let sigma_i = sigma_injective_left(&pair, 0, &i).unwrap();
    println!(
        "injective piece: dims ({}, {}) in degrees (0, 1)",
        sigma_i.term(0).dim(),
        sigma_i.term(1).dim()
    );

    let source = sampler.random_complex(&pair.tensor, &pool, 0, 1, 2, 4);
    let mono = sampler.random_mono(&pair.tensor, &pool, &source, 4).unwrap();
    let psi = sampler.random_chain_map(&source, &sigma_i);
    let lambda = extend_through_mono(&pair, &mono, &psi).unwrap();
    assert!(lambda.compose(&mono).eq_as_map(&psi));
    println!("extension found and verified by composition");
}
