//! Exact computations in categories of cochain complexes over an endofunctor.
//!
//! The objects handled here are families `(M^n, d^n)` of modules over a
//! finite-dimensional algebra, with differentials `d^n: F(M^n) -> M^(n+1)`
//! against a representable endofunctor `F = B (x)_A -` (left flavour) or
//! `d^n: M^n -> G(M^(n+1))` against its right adjoint `G = Hom_A(B, -)`
//! (right flavour), subject to `d^(n+1) o F(d^n) = 0`. Everything reduces to
//! exact rational linear algebra, so each categorical statement the crate
//! implements (kernels, cokernels, projectivity of two-term objects, split
//! decompositions, the left/right bridge, repetitive-algebra packing) is
//! checked as a matrix identity with no tolerances.
//!
//! Start with the runnable programs in `examples/`; each one exercises a
//! single capability end to end. The `fcochain` binary drives the same
//! library from declarative workspace files.

pub mod algebra;
pub mod bridge;
pub mod cli;
pub mod complex;
pub mod error;
pub mod format;
pub mod functor;
pub mod graded;
pub mod linalg;
pub mod proj_inj;
pub mod repetitive;
pub mod sample;

pub use error::{Error, Result};

#[cfg(test)]
mod concurrency_contract {
    use crate::{algebra, complex, functor, linalg};

    fn shareable<T: Send + Sync>() {}

    #[test]
    fn values_are_safe_to_share_across_threads() {
        shareable::<linalg::ExactMatrix>();
        shareable::<algebra::Algebra>();
        shareable::<algebra::Module>();
        shareable::<algebra::ModuleHom>();
        shareable::<algebra::Bimodule>();
        shareable::<functor::RepEndofunctor>();
        shareable::<functor::HomEndofunctor>();
        shareable::<complex::LeftComplex>();
        shareable::<complex::RightComplex>();
        shareable::<complex::ChainMap>();
    }

    #[test]
    fn memo_fill_is_idempotent_across_threads() {
        use std::sync::Arc;
        let a = algebra::dual_numbers();
        let f = functor::RepEndofunctor::new(algebra::dual_bimodule(&a)).unwrap();
        let reg = algebra::Module::regular(a);
        let mut handles = Vec::new();
        for _ in 0..4 {
            let f = Arc::clone(&f);
            let reg = Arc::clone(&reg);
            handles.push(std::thread::spawn(move || f.apply(&reg).module.dim()));
        }
        let dims: Vec<usize> = handles.into_iter().map(|h| h.join().unwrap()).collect();
        assert!(dims.windows(2).all(|w| w[0] == w[1]));
    }
}
