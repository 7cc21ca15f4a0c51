//! The truncated repetitive algebra of a bimodule: a matrix algebra with the
//! base algebra on the diagonal and the bimodule on the subdiagonal,
//! products of two subdiagonal entries vanishing. Modules over it are
//! exactly bounded complexes over the tensor functor, and the packing
//! functors realize that equivalence exactly.

use fcochain::algebra::{dual_bimodule, dual_numbers, Module};
use fcochain::linalg::Rat;
use fcochain::repetitive::{pack_complex, truncated_repetitive, unpack_module};
use fcochain::sample::{module_pool, Sampler};
use num::Zero;

fn main() {
    let a = dual_numbers();
    let b = dual_bimodule(&a);
    let r = truncated_repetitive(&a, &b, 0, 2).unwrap();
    println!(
        "truncated repetitive algebra on window [0, 2]: dimension {} = 3*{} + 2*{}",
        r.total().dim(),
        a.dim(),
        b.dim()
    );

    // the slot idempotents are orthogonal and complete
    let e: Vec<Vec<Rat>> = (0..=2).map(|n| r.idempotent(n)).collect();
    for (i, ei) in e.iter().enumerate() {
        for (j, ej) in e.iter().enumerate() {
            let prod = r.total().multiply(ei, ej);
            if i == j {
                assert_eq!(&prod, ei);
            } else {
                assert!(prod.iter().all(Rat::is_zero));
            }
        }
    }
    let sum: Vec<Rat> = (0..r.total().dim())
        .map(|k| e.iter().map(|v| v[k].clone()).sum())
        .collect();
    assert_eq!(sum.as_slice(), r.total().unit());
    println!("slot idempotents are pairwise orthogonal and sum to the unit");

    // pure subdiagonal elements square to zero
    let x = r.phi(0, &[Rat::from_integer(1.into()), Rat::zero()]);
    assert!(r.total().multiply(&x, &x).iter().all(Rat::is_zero));

    // packing a complex gives a module over the truncated algebra, and
    // unpacking recovers the complex on the nose
    let pool = module_pool(&a, 4);
    let mut sampler = Sampler::new(2);
    let c = sampler.random_complex(r.functor(), &pool, 0, 2, 3, 4);
    let packed = pack_complex(&c, &r).unwrap();
    println!(
        "packed a complex with windows {:?} into a module of dimension {}",
        c.window(),
        packed.dim()
    );
    let back = unpack_module(&packed, &r).unwrap();
    assert!(back.as_ref() == c.as_ref());
    println!("unpack(pack(complex)) is the identity, bit for bit");

    // the regular module unpacks to the corner dimensions
    let reg = Module::regular(r.total().clone());
    let corners = unpack_module(&reg, &r).unwrap();
    let dims: Vec<usize> = (0..=2).map(|n| corners.term(n).dim()).collect();
    println!("the regular module unpacks with slot dimensions {dims:?}");
    assert_eq!(dims, vec![a.dim(), a.dim() + b.dim(), a.dim() + b.dim()]);
}
