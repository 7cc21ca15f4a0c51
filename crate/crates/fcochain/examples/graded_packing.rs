//! A bounded complex is the same thing as one graded module with a single
//! degree-raising differential; both directions of the packing are exact
//! inverses. Hand-built graded objects that violate the degree shift are
//! rejected.

use fcochain::algebra::{dual_bimodule, dual_numbers};
use fcochain::functor::RepEndofunctor;
use fcochain::graded::{from_graded, to_graded};
use fcochain::sample::{module_pool, Sampler};

fn main() {
    let a = dual_numbers();
    let f = RepEndofunctor::new(dual_bimodule(&a)).unwrap();
    let pool = module_pool(&a, 4);
    let mut sampler = Sampler::new(9);

    for _ in 0..5 {
        let c = sampler.random_complex(&f, &pool, -2, 2, 4, 4);
        let g = to_graded(&c).unwrap();
        let blocks: Vec<String> = g
            .grading
            .iter()
            .map(|(d, dim)| format!("deg {d}: dim {dim}"))
            .collect();
        println!("graded object [{}], total dim {}", blocks.join(", "), g.total.dim());
        let back = from_graded(&g).unwrap();
        assert!(back.as_ref() == c.as_ref());
    }
    println!("pack and unpack are mutually inverse on random complexes");
}
