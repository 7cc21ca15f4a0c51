//! The bridge between the two flavours: a left complex over `B (x) -` is the
//! same data as a right complex over `Hom(B, -)`, with differentials related
//! by the adjunction bijection. The roundtrip is the identity on the nose,
//! and the projective two-term piece crosses to the unit differential.

use fcochain::algebra::{dual_bimodule, dual_numbers, Module};
use fcochain::bridge::{adjoint_bridge, adjoint_bridge_inverse, bridge_map, bridge_map_inverse};
use fcochain::functor::AdjointPair;
use fcochain::proj_inj::sigma_projective_left;
use fcochain::sample::{module_pool, Sampler};

fn main() {
    let a = dual_numbers();
    let pair = AdjointPair::for_bimodule(dual_bimodule(&a)).unwrap();
    let pool = module_pool(&a, 4);
    let mut sampler = Sampler::new(11);

    let c = sampler.random_complex(&pair.tensor, &pool, -2, 2, 4, 4);
    let r = adjoint_bridge(&pair, &c).unwrap();
    println!("left window {:?} bridges to right window {:?}", c.window(), r.window());
    let back = adjoint_bridge_inverse(&pair, &r).unwrap();
    assert!(back.as_ref() == c.as_ref());
    println!("bridge then inverse is the identity, bit for bit");

    // morphisms cross with unchanged components and stay valid
    let c2 = sampler.random_complex(&pair.tensor, &pool, -2, 2, 4, 4);
    let r2 = adjoint_bridge(&pair, &c2).unwrap();
    let phi = sampler.random_chain_map(&c, &c2);
    let moved = bridge_map(&phi, &r, &r2).unwrap();
    let back = bridge_map_inverse(&moved, &c, &c2).unwrap();
    assert!(back.eq_as_map(&phi));
    println!("morphisms cross the bridge unchanged and return unchanged");

    // the projective piece (P, F(P), identity) crosses to (P, F(P), unit)
    let p = Module::regular(a.clone());
    let sigma = sigma_projective_left(&pair.tensor, 0, &p).unwrap();
    let crossed = adjoint_bridge(&pair, &sigma).unwrap();
    let eta = pair.unit(&p);
    assert_eq!(crossed.diff(0).matrix(), eta.matrix());
    println!("identity differential curries to the adjunction unit");
}
