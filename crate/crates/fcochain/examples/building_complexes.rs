//! Constructing and validating complexes whose differentials go out of a
//! functor: `d^n: F(M^n) -> M^(n+1)` with `d^(n+1) o F(d^n) = 0`. Shows the
//! validator rejecting a non-complex with the offending degree, plus
//! biproducts, pullbacks and exactness checks.

use fcochain::algebra::{ground_field, Bimodule, Module};
use fcochain::complex::{biproduct, is_short_exact, pullback, ChainMap, LeftComplex};
use fcochain::error::Error;
use fcochain::functor::RepEndofunctor;
use fcochain::linalg::ExactMatrix;

fn main() {
    // Over the ground field with the regular bimodule, complexes over the
    // functor are ordinary cochain complexes of vector spaces.
    let k = ground_field();
    let f = RepEndofunctor::new(Bimodule::regular(k.clone())).unwrap();
    let line = Module::regular(k.clone());

    // k --1--> k --1--> k is not a complex: 1 o 1 != 0 at degree 0.
    let one = ExactMatrix::identity(1);
    let err = LeftComplex::new(
        f.clone(),
        0,
        vec![line.clone(), line.clone(), line.clone()],
        vec![one.clone(), one.clone()],
    )
    .unwrap_err();
    println!("rejected: {err}");
    assert!(matches!(err, Error::NotAComplex(0)));

    // k --1--> k --0--> k is a complex.
    let zero = ExactMatrix::zero(1, 1);
    let c = LeftComplex::new(
        f.clone(),
        0,
        vec![line.clone(), line.clone(), line.clone()],
        vec![one, zero],
    )
    .unwrap();
    println!("accepted: window {:?}", c.window().unwrap());

    // biproducts come with injections and projections satisfying the
    // biproduct identities
    let bp = biproduct(&f, &[c.clone(), c.clone()]).unwrap();
    assert!(bp.projections[0].compose(&bp.injections[0]).is_identity());
    assert!(bp.projections[1].compose(&bp.injections[0]).is_zero());
    println!("biproduct of two copies has degree-0 dimension {}", bp.total.term(0).dim());

    // the split sequence C -> C + C -> C is short exact, degree by degree
    let verdict = is_short_exact(&bp.injections[0], &bp.projections[1]);
    assert!(verdict.exact);
    println!("split biproduct sequence is short exact at every degree");

    // pullback of the identity along the identity is the diagonal
    let id = ChainMap::identity(c.clone());
    let (pb, pr1, _pr2) = pullback(&id, &id).unwrap();
    assert_eq!(pb.term(0).dim(), c.term(0).dim());
    assert!(pr1.is_degreewise_mono() && pr1.is_degreewise_epi());
    println!("pullback along identities recovers the object");
}
