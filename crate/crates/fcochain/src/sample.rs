//! Seeded random generators for test data: modules from a deterministic
//! pool, valid complexes built degree by degree inside the constraint space,
//! chain morphisms sampled from the morphism space, and guaranteed
//! degreewise epis and monos. Identical seeds give identical data.

use std::sync::Arc;

use num::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{
    cokernel_of_hom, hom_space, injective_at, kernel_of_hom, projective_at, Algebra, Module,
    ModuleHom,
};
use crate::complex::{biproduct, morphism_space, ChainMap, LeftComplex};
use crate::error::Result;
use crate::functor::{bimodule_hom_basis, NatTrans, RepEndofunctor};
use crate::linalg::{rint, ExactMatrix};

/// Deterministic pool of small modules over an algebra: zero, the regular
/// module, projectives and injectives at basis idempotents, and kernels and
/// cokernels of regular endomorphisms, capped at `max_dim`.
pub fn module_pool(a: &Arc<Algebra>, max_dim: usize) -> Vec<Arc<Module>> {
    let mut pool: Vec<Arc<Module>> = vec![Module::zero(a.clone())];
    let reg = Module::regular(a.clone());
    if reg.dim() <= max_dim {
        pool.push(reg.clone());
    }
    for i in 0..a.dim() {
        let e = a.basis_vector(i);
        if a.is_idempotent(&e) {
            if let Ok(p) = projective_at(a, &e) {
                if p.dim() > 0 && p.dim() <= max_dim {
                    pool.push(p);
                }
            }
            if let Ok(inj) = injective_at(a, &e) {
                if inj.dim() > 0 && inj.dim() <= max_dim {
                    pool.push(inj);
                }
            }
        }
    }
    for h in hom_space(&reg, &reg) {
        if let Ok((k, _)) = kernel_of_hom(&h) {
            if k.dim() > 0 && k.dim() <= max_dim {
                pool.push(k);
            }
        }
        if let Ok((c, _, _)) = cokernel_of_hom(&h) {
            if c.dim() > 0 && c.dim() <= max_dim {
                pool.push(c);
            }
        }
    }
    pool.dedup_by(|x, y| x == y);
    let mut seen: Vec<Arc<Module>> = Vec::new();
    for m in pool {
        if !seen.iter().any(|s| s.as_ref() == m.as_ref()) {
            seen.push(m);
        }
    }
    seen
}

/// Seeded sampler; all draws are reproducible from the seed.
pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn coeff(&mut self) -> crate::linalg::Rat {
        rint(self.rng.random_range(-2..=2))
    }

    pub fn pick<'a, T>(&mut self, items: &'a [T]) -> &'a T {
        &items[self.rng.random_range(0..items.len())]
    }

    pub fn random_module(&mut self, pool: &[Arc<Module>], max_dim: usize) -> Arc<Module> {
        let first = self.pick(pool).clone();
        if self.rng.random_bool(0.3) {
            let second = self.pick(pool).clone();
            if first.dim() + second.dim() <= max_dim && first.dim() + second.dim() > 0 {
                let (sum, _, _) = Module::direct_sum(&[first, second]);
                return sum;
            }
        }
        first
    }

    /// A random homomorphism as a small-coefficient combination of the
    /// hom-space basis.
    pub fn random_hom(&mut self, m: &Arc<Module>, n: &Arc<Module>) -> ModuleHom {
        let basis = hom_space(m, n);
        let mut out = ModuleHom::zero(m.clone(), n.clone());
        for b in &basis {
            let c = self.coeff();
            if !c.is_zero() {
                out = out.add(&b.scale(&c));
            }
        }
        out
    }

    /// A random valid complex on a window inside `[wlo, whi]`, built from the
    /// top degree down: each differential is drawn from the kernel of
    /// `h -> d^(n+1) o F(h)`.
    pub fn random_complex(
        &mut self,
        functor: &Arc<RepEndofunctor>,
        pool: &[Arc<Module>],
        wlo: i64,
        whi: i64,
        max_len: usize,
        max_dim: usize,
    ) -> Arc<LeftComplex> {
        let span = (whi - wlo + 1) as usize;
        let len = self.rng.random_range(1..=max_len.min(span));
        let lo = wlo + self.rng.random_range(0..=(span - len) as i64);
        let terms: Vec<Arc<Module>> = (0..len)
            .map(|_| self.random_module(pool, max_dim))
            .collect();
        let mut diffs: Vec<ExactMatrix> = Vec::new();
        let mut next: Option<ModuleHom> = None; // d^(n+1)
        for k in (0..len.saturating_sub(1)).rev() {
            let src = functor.apply(&terms[k]).module.clone();
            let tgt = terms[k + 1].clone();
            let basis = hom_space(&src, &tgt);
            let valid: Vec<ModuleHom> = match &next {
                None => basis,
                Some(d_up) => {
                    // kernel of h -> d_up o F(h)
                    if basis.is_empty() {
                        vec![]
                    } else {
                        let cols: Vec<ExactMatrix> = basis
                            .iter()
                            .map(|h| {
                                d_up.compose(&functor.apply_hom(h)).matrix().vectorize()
                            })
                            .collect();
                        let sys = ExactMatrix::hstack_all(&cols);
                        let kernel = sys.kernel_basis();
                        (0..kernel.cols())
                            .map(|j| {
                                let mut h = ModuleHom::zero(src.clone(), tgt.clone());
                                for (i, b) in basis.iter().enumerate() {
                                    let c = kernel.at(i, j).clone();
                                    if !c.is_zero() {
                                        h = h.add(&b.scale(&c));
                                    }
                                }
                                h
                            })
                            .collect()
                    }
                }
            };
            let mut d = ModuleHom::zero(src.clone(), tgt.clone());
            for h in &valid {
                let c = self.coeff();
                if !c.is_zero() {
                    d = d.add(&h.scale(&c));
                }
            }
            diffs.push(d.matrix().clone());
            next = Some(d);
        }
        diffs.reverse();
        LeftComplex::new(functor.clone(), lo, terms, diffs)
            .expect("construction stays inside the constraint space")
    }

    /// A candidate family of differentials that is NOT forced to satisfy the
    /// complex condition: per-degree random homomorphisms. Returns the raw
    /// data for feeding the validator.
    pub fn random_candidate(
        &mut self,
        functor: &Arc<RepEndofunctor>,
        pool: &[Arc<Module>],
        wlo: i64,
        whi: i64,
        max_len: usize,
        max_dim: usize,
    ) -> (i64, Vec<Arc<Module>>, Vec<ExactMatrix>) {
        let span = (whi - wlo + 1) as usize;
        let len = self.rng.random_range(1..=max_len.min(span));
        let lo = wlo + self.rng.random_range(0..=(span - len) as i64);
        let terms: Vec<Arc<Module>> = (0..len)
            .map(|_| self.random_module(pool, max_dim))
            .collect();
        let mut diffs = Vec::new();
        for k in 0..len.saturating_sub(1) {
            let src = functor.apply(&terms[k]).module.clone();
            let h = self.random_hom(&src, &terms[k + 1]);
            diffs.push(h.matrix().clone());
        }
        (lo, terms, diffs)
    }

    /// A random morphism between two complexes.
    pub fn random_chain_map(
        &mut self,
        m: &Arc<LeftComplex>,
        n: &Arc<LeftComplex>,
    ) -> ChainMap {
        let basis = morphism_space(m, n);
        let mut out = ChainMap::zero(m.clone(), n.clone());
        for b in &basis {
            let c = self.coeff();
            if !c.is_zero() {
                out = out.add(&b.scale(&c));
            }
        }
        out
    }

    /// A random invertible chain endomorphism, or the identity if none of
    /// the perturbations is invertible.
    pub fn random_automorphism(&mut self, m: &Arc<LeftComplex>) -> ChainMap {
        let id = ChainMap::identity(m.clone());
        for _ in 0..8 {
            let nu = self.random_chain_map(m, m);
            let cand = id.add(&nu);
            let ok = m
                .joint_degrees(m)
                .all(|n| cand.component(n).is_invertible());
            if ok {
                return cand;
            }
        }
        id
    }

    /// A degreewise epimorphism onto `target`: a biproduct projection
    /// twisted by a random automorphism of the total.
    pub fn random_epi(
        &mut self,
        functor: &Arc<RepEndofunctor>,
        pool: &[Arc<Module>],
        target: &Arc<LeftComplex>,
        max_dim: usize,
    ) -> Result<ChainMap> {
        let (wlo, whi) = target.window().unwrap_or((0, 0));
        let filler = self.random_complex(functor, pool, wlo, whi, 2, max_dim);
        let bp = biproduct(functor, &[target.clone(), filler])?;
        let theta = self.random_automorphism(&bp.total);
        Ok(bp.projections[0].compose(&theta))
    }

    /// A degreewise monomorphism out of `source`.
    pub fn random_mono(
        &mut self,
        functor: &Arc<RepEndofunctor>,
        pool: &[Arc<Module>],
        source: &Arc<LeftComplex>,
        max_dim: usize,
    ) -> Result<ChainMap> {
        let (wlo, whi) = source.window().unwrap_or((0, 0));
        let filler = self.random_complex(functor, pool, wlo, whi, 2, max_dim);
        let bp = biproduct(functor, &[source.clone(), filler])?;
        let theta = self.random_automorphism(&bp.total);
        Ok(theta.compose(&bp.injections[0]))
    }

    /// A random natural transformation `f1 -> f2`.
    pub fn random_nat_trans(
        &mut self,
        f1: &Arc<RepEndofunctor>,
        f2: &Arc<RepEndofunctor>,
    ) -> NatTrans {
        let basis = bimodule_hom_basis(f1.bimodule(), f2.bimodule());
        let mut mat = ExactMatrix::zero(f2.bimodule().dim(), f1.bimodule().dim());
        for b in &basis {
            let c = self.coeff();
            if !c.is_zero() {
                mat = mat.add(&b.scale(&c));
            }
        }
        NatTrans::new(f1.clone(), f2.clone(), mat)
            .expect("combinations of bimodule homs are bimodule homs")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{dual_bimodule, dual_numbers, path_algebra_an, Bimodule};

    #[test]
    fn pool_is_deterministic_and_small_dimensional() {
        let a = path_algebra_an(3);
        let pool = module_pool(&a, 4);
        let pool2 = module_pool(&a, 4);
        assert_eq!(pool.len(), pool2.len());
        for (x, y) in pool.iter().zip(&pool2) {
            assert_eq!(x.as_ref(), y.as_ref());
        }
        assert!(pool.iter().all(|m| m.dim() <= 4));
        assert!(pool.len() >= 3);
    }

    #[test]
    fn random_complexes_are_valid_and_reproducible() {
        let a = dual_numbers();
        let f = RepEndofunctor::new(dual_bimodule(&a)).unwrap();
        let pool = module_pool(&a, 4);
        let mut s1 = Sampler::new(7);
        let mut s2 = Sampler::new(7);
        for _ in 0..10 {
            let c1 = s1.random_complex(&f, &pool, -2, 2, 4, 4);
            let c2 = s2.random_complex(&f, &pool, -2, 2, 4, 4);
            assert_eq!(c1.as_ref(), c2.as_ref());
        }
    }

    #[test]
    fn epis_and_monos_are_what_they_claim() {
        let a = dual_numbers();
        let f = RepEndofunctor::new(Bimodule::regular(a.clone())).unwrap();
        let pool = module_pool(&a, 4);
        let mut s = Sampler::new(3);
        for _ in 0..5 {
            let target = s.random_complex(&f, &pool, -1, 1, 3, 4);
            let epi = s.random_epi(&f, &pool, &target, 4).unwrap();
            assert!(epi.is_degreewise_epi());
            let mono = s.random_mono(&f, &pool, &target, 4).unwrap();
            assert!(mono.is_degreewise_mono());
        }
    }
}
