//! Natural transformations between tensor functors (always induced by
//! bimodule homomorphisms) transport complexes contravariantly; composition
//! of functors is again representable, with explicit pointwise associators
//! that carry complexes between the composed and the nested realization.

use fcochain::algebra::{dual_bimodule, dual_numbers, Bimodule};
use fcochain::bridge::transport_complex;
use fcochain::functor::{bimodule_hom_basis, compose_representables, NatTrans, RepEndofunctor};
use fcochain::sample::{module_pool, Sampler};

fn main() {
    let a = dual_numbers();
    let f_id = RepEndofunctor::new(Bimodule::regular(a.clone())).unwrap();
    let f_da = RepEndofunctor::new(dual_bimodule(&a)).unwrap();
    let pool = module_pool(&a, 4);
    let mut sampler = Sampler::new(1);

    // transport along a bimodule homomorphism A -> DA
    let basis = bimodule_hom_basis(f_id.bimodule(), f_da.bimodule());
    println!("bimodule homomorphisms A -> DA form a space of dimension {}", basis.len());
    let t = NatTrans::new(f_id.clone(), f_da.clone(), basis[0].clone()).unwrap();
    let c = sampler.random_complex(&f_da, &pool, -1, 1, 3, 4);
    let moved = transport_complex(&t, &c).unwrap();
    println!("transported a complex over DA(x)- to one over A(x)- = Id");
    assert_eq!(moved.window(), c.window());

    // identity transformation transports to the same complex
    let idt = NatTrans::identity(f_da.clone());
    assert!(transport_complex(&idt, &c).unwrap().as_ref() == c.as_ref());

    // composition of representables and the associator
    let comp = compose_representables(&f_da, &f_da).unwrap();
    println!(
        "DA (x) DA as a bimodule has dimension {}",
        comp.composed.bimodule().dim()
    );
    let c2 = sampler.random_complex(&comp.composed, &pool, -1, 1, 3, 3);
    if let Some((lo, hi)) = c2.window() {
        for n in lo..hi {
            let alpha = comp.associator(&c2.term(n)).unwrap();
            let nested = c2.diff(n).compose(&alpha.inverse().unwrap());
            // transporting back recovers the composed differential exactly
            assert_eq!(nested.compose(&alpha).matrix(), c2.diff(n).matrix());
        }
    }
    println!("associator transport between composed and nested forms is exact");
}
