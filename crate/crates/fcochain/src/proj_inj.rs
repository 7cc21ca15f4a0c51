//! Two-term complexes concentrated in adjacent degrees, the lifting and
//! extension properties that make them projective or injective, fundamental
//! exact sequences, and the split decomposition of `hat F` applied to a
//! split complex.

use std::sync::Arc;

use crate::algebra::{
    hom_space, injective_extend, kernel_of_hom, projective_lift, quotient_module,
    submodule_on_basis, Module, ModuleHom,
};
use crate::complex::{biproduct, hat_f, ChainMap, LeftComplex, RightChainMap, RightComplex};
use crate::error::{Error, Result};
use crate::functor::{AdjointPair, HomEndofunctor, RepEndofunctor};
use crate::linalg::{solve_linear, ExactMatrix};

/// `Sigma^k(psi)` in the left category: `X` in degree `k`, `Y` in degree
/// `k+1`, differential `psi: F(X) -> Y`.
pub fn sigma_plain_left(
    functor: &Arc<RepEndofunctor>,
    k: i64,
    x: Arc<Module>,
    y: Arc<Module>,
    psi: ExactMatrix,
) -> Result<Arc<LeftComplex>> {
    LeftComplex::new(functor.clone(), k, vec![x, y], vec![psi])
}

/// `Sigma^k(1_F(P))`, projective in the left category when `P` is projective.
pub fn sigma_projective_left(
    functor: &Arc<RepEndofunctor>,
    k: i64,
    p: &Arc<Module>,
) -> Result<Arc<LeftComplex>> {
    let fp = functor.apply(p).module.clone();
    let id = ExactMatrix::identity(fp.dim());
    sigma_plain_left(functor, k, p.clone(), fp, id)
}

/// `Sigma^k(eps_I)`, injective in the left category when `I` is injective.
pub fn sigma_injective_left(
    pair: &AdjointPair,
    k: i64,
    i: &Arc<Module>,
) -> Result<Arc<LeftComplex>> {
    let gi = pair.hom.apply(i).module.clone();
    let eps = pair.counit(i);
    sigma_plain_left(&pair.tensor, k, gi, i.clone(), eps.matrix().clone())
}

/// `Sigma^k(psi)` in the right category: differential `psi: X -> G(Y)`.
pub fn sigma_plain_right(
    functor: &Arc<HomEndofunctor>,
    k: i64,
    x: Arc<Module>,
    y: Arc<Module>,
    psi: ExactMatrix,
) -> Result<Arc<RightComplex>> {
    RightComplex::new(functor.clone(), k, vec![x, y], vec![psi])
}

/// `Sigma^k(eta_P)`, projective in the right category when `P` is projective.
pub fn sigma_projective_right(
    pair: &AdjointPair,
    k: i64,
    p: &Arc<Module>,
) -> Result<Arc<RightComplex>> {
    let fp = pair.tensor.apply(p).module.clone();
    let eta = pair.unit(p);
    sigma_plain_right(&pair.hom, k, p.clone(), fp, eta.matrix().clone())
}

/// `Sigma^k(1_G(I))`, injective in the right category when `I` is injective.
pub fn sigma_injective_right(
    functor: &Arc<HomEndofunctor>,
    k: i64,
    i: &Arc<Module>,
) -> Result<Arc<RightComplex>> {
    let gi = functor.apply(i).module.clone();
    let id = ExactMatrix::identity(gi.dim());
    sigma_plain_right(functor, k, gi, i.clone(), id)
}

/// Lifts `psi: Sigma -> N` through a degreewise epimorphism `phi: M -> N`
/// when `Sigma = Sigma^k(1_F(P))`: the degree-`k` component lifts because
/// `P` is projective, the degree-`k+1` component is forced to
/// `d_M^k o F(lambda^k)`.
pub fn lift_through_epi(phi: &ChainMap, psi: &ChainMap) -> Result<ChainMap> {
    let sigma = psi.source();
    let m = phi.source();
    let Some((k, hi)) = sigma.window() else {
        return Ok(ChainMap::zero(sigma.clone(), m.clone()));
    };
    if hi != k + 1
        || sigma.term(k + 1).as_ref() != sigma.f_term(k).module.as_ref()
        || !sigma.diff(k).matrix().is_identity()
    {
        return Err(Error::NoLift);
    }
    if psi.target().as_ref() != phi.target().as_ref() {
        return Err(Error::NoLift);
    }
    let lambda_k = projective_lift(&phi.component(k), &psi.component(k))?;
    let lambda_k1 = m
        .diff(k)
        .compose(&m.functor().apply_hom(&lambda_k));
    let lifted = ChainMap::new(
        sigma.clone(),
        m.clone(),
        k,
        vec![lambda_k.matrix().clone(), lambda_k1.matrix().clone()],
    )?;
    if !phi.compose(&lifted).eq_as_map(psi) {
        return Err(Error::NoLift);
    }
    Ok(lifted)
}

/// Right-flavour lifting through a degreewise epimorphism when
/// `Sigma = Sigma^k(eta_P)`: the degree-`k+1` component is the unique map
/// with `G(lambda^(k+1)) o eta_P = d_M^k o lambda^k`, i.e. the uncurry of
/// the composite.
pub fn lift_through_epi_right(
    pair: &AdjointPair,
    phi: &RightChainMap,
    psi: &RightChainMap,
) -> Result<RightChainMap> {
    let sigma = psi.source();
    let m = phi.source();
    let Some((k, hi)) = sigma.window() else {
        return Ok(RightChainMap::new(sigma.clone(), m.clone(), 0, vec![])?);
    };
    let p = sigma.term(k);
    let eta = pair.unit(&p);
    if hi != k + 1
        || sigma.term(k + 1).as_ref() != pair.tensor.apply(&p).module.as_ref()
        || sigma.diff(k).matrix() != eta.matrix()
    {
        return Err(Error::NoLift);
    }
    if psi.target().as_ref() != phi.target().as_ref() {
        return Err(Error::NoLift);
    }
    let lambda_k = projective_lift(&phi.component(k), &psi.component(k))?;
    let composite = m.diff(k).compose(&lambda_k); // P -> G(M^(k+1))
    let lambda_k1 = pair.uncurry(&p, &m.term(k + 1), composite.matrix());
    let lifted = RightChainMap::new(
        sigma.clone(),
        m.clone(),
        k,
        vec![lambda_k.matrix().clone(), lambda_k1],
    )?;
    if !phi.compose(&lifted).eq_as_map(psi) {
        return Err(Error::NoLift);
    }
    Ok(lifted)
}

/// Extends `psi: M -> Sigma` through a degreewise monomorphism `phi: M -> N`
/// when `Sigma = Sigma^k(eps_I)`: the degree-`k+1` component extends because
/// `I` is injective, the degree-`k` component is the curry of
/// `lambda^(k+1) o d_N^k`.
pub fn extend_through_mono(
    pair: &AdjointPair,
    phi: &ChainMap,
    psi: &ChainMap,
) -> Result<ChainMap> {
    let sigma = psi.target();
    let n = phi.target();
    let Some((k, hi)) = sigma.window() else {
        return Ok(ChainMap::zero(n.clone(), sigma.clone()));
    };
    let i = sigma.term(k + 1);
    let eps = pair.counit(&i);
    if hi != k + 1
        || sigma.term(k).as_ref() != pair.hom.apply(&i).module.as_ref()
        || sigma.diff(k).matrix() != eps.matrix()
    {
        return Err(Error::NoExtension);
    }
    if psi.source().as_ref() != phi.source().as_ref() {
        return Err(Error::NoExtension);
    }
    let lambda_k1 = injective_extend(&phi.component(k + 1), &psi.component(k + 1))?;
    let through = lambda_k1.compose(&n.diff(k)); // F(N^k) -> I
    let lambda_k = pair.curry(&n.term(k), &i, through.matrix());
    let extended = ChainMap::new(
        n.clone(),
        sigma.clone(),
        k,
        vec![lambda_k, lambda_k1.matrix().clone()],
    )?;
    if !extended.compose(phi).eq_as_map(psi) {
        return Err(Error::NoExtension);
    }
    Ok(extended)
}

/// Right-flavour extension through a degreewise monomorphism when
/// `Sigma = Sigma^k(1_G(I))`: the degree-`k` component is
/// `G(lambda^(k+1)) o d_N^k`.
pub fn extend_through_mono_right(
    pair: &AdjointPair,
    phi: &RightChainMap,
    psi: &RightChainMap,
) -> Result<RightChainMap> {
    let sigma = psi.target();
    let n = phi.target();
    let Some((k, hi)) = sigma.window() else {
        return Ok(RightChainMap::new(n.clone(), sigma.clone(), 0, vec![])?);
    };
    let i = sigma.term(k + 1);
    if hi != k + 1
        || sigma.term(k).as_ref() != pair.hom.apply(&i).module.as_ref()
        || !sigma.diff(k).matrix().is_identity()
    {
        return Err(Error::NoExtension);
    }
    if psi.source().as_ref() != phi.source().as_ref() {
        return Err(Error::NoExtension);
    }
    let lambda_k1 = injective_extend(&phi.component(k + 1), &psi.component(k + 1))?;
    let lambda_k = pair
        .hom
        .apply_hom(&lambda_k1)
        .compose(&n.diff(k));
    let extended = RightChainMap::new(
        n.clone(),
        sigma.clone(),
        k,
        vec![lambda_k.matrix().clone(), lambda_k1.matrix().clone()],
    )?;
    if !extended.compose(phi).eq_as_map(psi) {
        return Err(Error::NoExtension);
    }
    Ok(extended)
}

/// The two fundamental short exact sequences of a complex at one degree:
/// `0 -> Im F(d^(n-1)) -> ker d^n -> ker/Im -> 0` and
/// `0 -> ker d^n -> F(M^n) -> Im d^n -> 0`.
#[derive(Debug, Clone)]
pub struct FundamentalSequences {
    pub degree: i64,
    /// `Im F(d^(n-1))` as a submodule of `F(M^n)`.
    pub prev_image: Arc<Module>,
    /// `iota^(n-1): Im F(d^(n-1)) -> ker d^n`.
    pub iota: ModuleHom,
    /// projection `ker d^n -> ker/Im`.
    pub seq1_proj: ModuleHom,
    pub seq1_coker: Arc<Module>,
    /// `ker d^n` as a submodule of `F(M^n)`.
    pub kernel: Arc<Module>,
    /// `i_hat^n: ker d^n -> F(M^n)`.
    pub i_hat: ModuleHom,
    /// `delta^n: F(M^n) -> Im d^n`, the epi with `d^n = i^n o delta^n`.
    pub delta: ModuleHom,
    /// `Im d^n` as a submodule of `M^(n+1)`.
    pub image: Arc<Module>,
    /// `i^n: Im d^n -> M^(n+1)`.
    pub image_inclusion: ModuleHom,
}

/// Module-level exactness of `0 -> A -> B -> C -> 0` given the two maps.
pub fn ses_exact(f: &ModuleHom, g: &ModuleHom) -> bool {
    f.is_injective()
        && g.is_surjective()
        && g.compose(f).is_zero()
        && f.matrix().rank() == f.target().dim() - g.matrix().rank()
}

pub fn fundamental_sequences(m: &Arc<LeftComplex>, n: i64) -> Result<FundamentalSequences> {
    let functor = m.functor().clone();
    let fmn = m.f_term(n).module.clone();
    let d = m.diff(n);
    let (kernel, i_hat) = kernel_of_hom(&d)?;
    let (image, image_inclusion) = submodule_on_basis(&m.term(n + 1), d.matrix().image_basis())?;
    let delta_mat = solve_linear(image_inclusion.matrix(), d.matrix())
        .map_err(|_| Error::Internal("image factorization failed".into()))?;
    let delta = ModuleHom::new(fmn.clone(), image.clone(), delta_mat)?;

    let f_dprev = functor.apply_hom(&m.diff(n - 1));
    let (prev_image, prev_inc) = submodule_on_basis(&fmn, f_dprev.matrix().image_basis())?;
    let iota_mat = solve_linear(i_hat.matrix(), prev_inc.matrix())
        .map_err(|_| Error::Internal("Im F(d) does not land in ker d".into()))?;
    let iota = ModuleHom::new(prev_image.clone(), kernel.clone(), iota_mat)?;
    let (seq1_coker, seq1_proj, _) = quotient_module(&kernel, iota.matrix())?;

    let fs = FundamentalSequences {
        degree: n,
        prev_image,
        iota,
        seq1_proj,
        seq1_coker,
        kernel,
        i_hat,
        delta,
        image,
        image_inclusion,
    };
    if !ses_exact(&fs.iota, &fs.seq1_proj) || !ses_exact(&fs.i_hat, &fs.delta) {
        return Err(Error::Internal("fundamental sequences failed exactness".into()));
    }
    // d^n = i^n o delta^n
    if fs.image_inclusion.compose(&fs.delta).matrix() != d.matrix() {
        return Err(Error::Internal("delta does not factor the differential".into()));
    }
    Ok(fs)
}

/// Retraction/section data for the second fundamental sequence at one degree,
/// with all five split identities verified.
#[derive(Debug, Clone)]
pub struct DegreeSplit {
    pub fs: FundamentalSequences,
    /// `p^n: F(M^n) -> ker d^n` with `p o i_hat = 1`.
    pub p: ModuleHom,
    /// `q^n: Im d^n -> F(M^n)` with `delta o q = 1`.
    pub q: ModuleHom,
}

/// Splits every degree of the complex or reports the first degree whose
/// retraction system is unsolvable.
pub fn split_data(m: &Arc<LeftComplex>) -> Result<Vec<DegreeSplit>> {
    let Some((lo, hi)) = m.window() else {
        return Ok(vec![]);
    };
    let mut out = Vec::new();
    for n in lo..=hi {
        let fs = fundamental_sequences(m, n)?;
        let fmn = m.f_term(n).module.clone();
        // solve p over the intertwiner space: p o i_hat = 1
        let basis = hom_space(&fmn, &fs.kernel);
        let cols: Vec<ExactMatrix> = basis
            .iter()
            .map(|h| h.compose(&fs.i_hat).matrix().vectorize())
            .collect();
        let sys = if cols.is_empty() {
            ExactMatrix::zero(fs.kernel.dim() * fs.kernel.dim(), 0)
        } else {
            ExactMatrix::hstack_all(&cols)
        };
        let rhs = ExactMatrix::identity(fs.kernel.dim()).vectorize();
        let sol = solve_linear(&sys, &rhs).map_err(|_| Error::NotSplit {
            degree: n,
            system: "p o i_hat = 1".into(),
        })?;
        let mut p = ModuleHom::zero(fmn.clone(), fs.kernel.clone());
        for (i, b) in basis.iter().enumerate() {
            p = p.add(&b.scale(sol.at(i, 0)));
        }
        // q is forced: q o delta = 1 - i_hat o p, solved through the transpose
        let residual = ExactMatrix::identity(fmn.dim()).sub(&fs.i_hat.compose(&p).matrix());
        let q_t = solve_linear(&fs.delta.matrix().transpose(), &residual.transpose()).map_err(
            |_| Error::NotSplit {
                degree: n,
                system: "q o delta = 1 - i_hat o p".into(),
            },
        )?;
        let q = ModuleHom::new(fs.image.clone(), fmn.clone(), q_t.transpose())?;
        // the five identities
        let ok = p.compose(&fs.i_hat).matrix().is_identity()
            && fs.delta.compose(&q).matrix().is_identity()
            && fs.delta.compose(&fs.i_hat).is_zero()
            && p.compose(&q).is_zero()
            && fs
                .i_hat
                .compose(&p)
                .matrix()
                .add(&q.compose(&fs.delta).matrix())
                .is_identity();
        if !ok {
            return Err(Error::Internal(format!(
                "split identities failed at degree {n}"
            )));
        }
        out.push(DegreeSplit { fs, p, q });
    }
    Ok(out)
}

/// The decomposition of `hat F(M)` of a split complex into two-term pieces
/// `Sigma^k(iota^k)`, with mutually inverse comparison morphisms.
pub struct SplitDecomposition {
    pub hat: Arc<LeftComplex>,
    pub sigmas: Vec<Arc<LeftComplex>>,
    pub sum: Arc<LeftComplex>,
    pub forward: ChainMap,
    pub backward: ChainMap,
}

pub fn split_decomposition(m: &Arc<LeftComplex>) -> Result<SplitDecomposition> {
    let functor = m.functor().clone();
    let splits = split_data(m)?;
    let hat = hat_f(m)?;
    let Some((lo, hi)) = m.window() else {
        let z = LeftComplex::zero(functor.clone());
        return Ok(SplitDecomposition {
            hat: hat.clone(),
            sigmas: vec![],
            sum: z.clone(),
            forward: ChainMap::zero(hat.clone(), z.clone()),
            backward: ChainMap::zero(z, hat),
        });
    };
    let zero_mod = Module::zero(functor.bimodule().algebra().clone());
    let split_at = |n: i64| -> Option<&DegreeSplit> {
        if n >= lo && n <= hi {
            Some(&splits[(n - lo) as usize])
        } else {
            None
        }
    };
    let mut sigmas = Vec::new();
    for k in (lo - 1)..=hi {
        let x = split_at(k).map_or(zero_mod.clone(), |s| s.fs.image.clone());
        let y = split_at(k + 1).map_or(zero_mod.clone(), |s| s.fs.kernel.clone());
        let fx_dim = functor.apply(&x).module.dim();
        let psi = match (split_at(k), split_at(k + 1)) {
            (Some(sk), Some(sk1)) => {
                // factor F(i^k) through i_hat^(k+1)
                let f_ik = functor.apply_hom(&sk.fs.image_inclusion);
                solve_linear(sk1.fs.i_hat.matrix(), f_ik.matrix()).map_err(|_| {
                    Error::Internal("Im F(d^k) failed to factor through ker d^(k+1)".into())
                })?
            }
            _ => ExactMatrix::zero(y.dim(), fx_dim),
        };
        sigmas.push(sigma_plain_left(&functor, k, x, y, psi)?);
    }
    let bp = biproduct(&functor, &sigmas)?;
    let sum = bp.total.clone();

    let mut fwd_mats = Vec::new();
    let mut bwd_mats = Vec::new();
    for n in lo..=hi {
        let s = split_at(n).expect("degree inside window");
        let fm_dim = hat.term(n).dim();
        let mut fwd = ExactMatrix::zero(sum.term(n).dim(), fm_dim);
        let mut bwd = ExactMatrix::zero(fm_dim, sum.term(n).dim());
        for (idx, k) in ((lo - 1)..=hi).enumerate() {
            let block_fwd = if k == n - 1 {
                Some(s.p.matrix().clone())
            } else if k == n {
                Some(s.fs.delta.matrix().clone())
            } else {
                None
            };
            if let Some(b) = block_fwd {
                let inj = bp.injections[idx].component(n);
                fwd = fwd.add(&inj.matrix().mul(&b));
            }
            let block_bwd = if k == n - 1 {
                Some(s.fs.i_hat.matrix().clone())
            } else if k == n {
                Some(s.q.matrix().clone())
            } else {
                None
            };
            if let Some(b) = block_bwd {
                let proj = bp.projections[idx].component(n);
                bwd = bwd.add(&b.mul(proj.matrix()));
            }
        }
        fwd_mats.push(fwd);
        bwd_mats.push(bwd);
    }
    let forward = ChainMap::new(hat.clone(), sum.clone(), lo, fwd_mats)?;
    let backward = ChainMap::new(sum.clone(), hat.clone(), lo, bwd_mats)?;
    if !forward.compose(&backward).is_identity() || !backward.compose(&forward).is_identity() {
        return Err(Error::Internal("split decomposition composites are not identities".into()));
    }
    Ok(SplitDecomposition {
        hat,
        sigmas,
        sum,
        forward,
        backward,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{dual_bimodule, dual_numbers, truncated_poly, Bimodule};
    use crate::complex::morphism_space;

    fn pair_dual() -> AdjointPair {
        AdjointPair::for_bimodule(dual_bimodule(&dual_numbers())).unwrap()
    }

    #[test]
    fn sigma_constructors_validate() {
        let pair = pair_dual();
        let a = dual_numbers();
        let p = Module::regular(a.clone());
        let s = sigma_projective_left(&pair.tensor, 0, &p).unwrap();
        assert_eq!(s.window(), Some((0, 1)));
        // terms (A, DA (x) A) with identity differential
        assert_eq!(s.term(1).dim(), pair.tensor.apply(&p).module.dim());

        let zero = Module::zero(a.clone());
        let sz = sigma_projective_left(&pair.tensor, 2, &zero).unwrap();
        assert!(sz.is_zero());

        let i = dual_bimodule(&a).as_left_module();
        let si = sigma_injective_left(&pair, -1, &i).unwrap();
        assert_eq!(si.window(), Some((-1, 0)));

        let sr = sigma_projective_right(&pair, 0, &p).unwrap();
        assert_eq!(sr.diff(0).matrix(), pair.unit(&p).matrix());
        let sir = sigma_injective_right(&pair.hom, 0, &i).unwrap();
        assert!(sir.diff(0).matrix().is_identity());
    }

    #[test]
    fn lift_through_projection() {
        let pair = pair_dual();
        let a = dual_numbers();
        let p = Module::regular(a.clone());
        let sigma = sigma_projective_left(&pair.tensor, 0, &p).unwrap();
        // N = sigma itself, M = sigma + sigma, phi = first projection
        let bp = biproduct(&pair.tensor, &[sigma.clone(), sigma.clone()]).unwrap();
        let phi = bp.projections[0].clone();
        let psi = ChainMap::identity(sigma.clone());
        let lifted = lift_through_epi(&phi, &psi).unwrap();
        assert!(phi.compose(&lifted).eq_as_map(&psi));

        // trivial cases
        let zero_psi = ChainMap::zero(sigma.clone(), sigma.clone());
        let l0 = lift_through_epi(&phi, &zero_psi).unwrap();
        assert!(phi.compose(&l0).eq_as_map(&zero_psi));
        let idphi = ChainMap::identity(sigma.clone());
        let l1 = lift_through_epi(&idphi, &psi).unwrap();
        assert!(l1.eq_as_map(&psi));
    }

    #[test]
    fn extend_through_inclusion() {
        let pair = pair_dual();
        let a = dual_numbers();
        let i = Module::regular(a.clone()); // dual numbers are self-injective
        let sigma = sigma_injective_left(&pair, 0, &i).unwrap();
        let bp = biproduct(&pair.tensor, &[sigma.clone(), sigma.clone()]).unwrap();
        let phi = bp.injections[0].clone();
        let psi = ChainMap::identity(sigma.clone());
        let ext = extend_through_mono(&pair, &phi, &psi).unwrap();
        assert!(ext.compose(&phi).eq_as_map(&psi));
    }

    #[test]
    fn right_flavour_lift_and_extend() {
        let pair = pair_dual();
        let a = dual_numbers();
        let p = Module::regular(a.clone());
        let sigma = sigma_projective_right(&pair, 0, &p).unwrap();
        // phi: sigma -> sigma identity is epi
        let id = RightChainMap::new(
            sigma.clone(),
            sigma.clone(),
            0,
            vec![
                ExactMatrix::identity(sigma.term(0).dim()),
                ExactMatrix::identity(sigma.term(1).dim()),
            ],
        )
        .unwrap();
        let lifted = lift_through_epi_right(&pair, &id, &id).unwrap();
        assert!(lifted.eq_as_map(&id));

        let i = Module::regular(a.clone());
        let sigma_i = sigma_injective_right(&pair.hom, 0, &i).unwrap();
        let idi = RightChainMap::new(
            sigma_i.clone(),
            sigma_i.clone(),
            0,
            vec![
                ExactMatrix::identity(sigma_i.term(0).dim()),
                ExactMatrix::identity(sigma_i.term(1).dim()),
            ],
        )
        .unwrap();
        let ext = extend_through_mono_right(&pair, &idi, &idi).unwrap();
        assert!(ext.eq_as_map(&idi));
    }

    fn x_complex_over_identity() -> Arc<LeftComplex> {
        // identity functor on dual numbers, differential = mult by x
        let a = dual_numbers();
        let f = RepEndofunctor::new(Bimodule::regular(a.clone())).unwrap();
        let reg = Module::regular(a.clone());
        let fa = f.apply(&reg);
        let x = a.left_mult_matrix(&a.basis_vector(1));
        let d0 = x.mul(
            &{
                // canonical F(A) -> A
                let mut k = ExactMatrix::zero(2, 4);
                for i in 0..2 {
                    for ai in 0..2 {
                        let prod = a.multiply(&a.basis_vector(i), &a.basis_vector(ai));
                        for (pi, c) in prod.iter().enumerate() {
                            if !num::Zero::is_zero(c) {
                                k.set(pi, i * 2 + ai, c.clone());
                            }
                        }
                    }
                }
                k
            }
            .mul(&fa.quot.section),
        );
        LeftComplex::new(f, 0, vec![reg.clone(), reg.clone()], vec![d0]).unwrap()
    }

    #[test]
    fn fundamental_sequences_shapes() {
        let c = x_complex_over_identity();
        let fs = fundamental_sequences(&c, 0).unwrap();
        assert_eq!(fs.kernel.dim(), 1);
        assert_eq!(fs.image.dim(), 1);
        assert!(ses_exact(&fs.i_hat, &fs.delta));
        // degree outside the window: everything zero
        let fs_out = fundamental_sequences(&c, 5).unwrap();
        assert_eq!(fs_out.kernel.dim(), 0);
        assert_eq!(fs_out.image.dim(), 0);
        // zero differentials degenerate seq2 to 0 -> F(M) -> F(M) -> 0
        let fs1 = fundamental_sequences(&c, 1).unwrap();
        assert_eq!(fs1.kernel.dim(), c.f_term(1).module.dim());
        assert_eq!(fs1.image.dim(), 0);
    }

    #[test]
    fn mult_by_x_is_not_split() {
        let c = x_complex_over_identity();
        let err = split_data(&c).unwrap_err();
        match err {
            Error::NotSplit { degree, .. } => assert_eq!(degree, 0),
            other => panic!("expected NotSplit, got {other:?}"),
        }
        // same over k[x]/(x^3)
        let a = truncated_poly(3);
        let f = RepEndofunctor::new(Bimodule::regular(a.clone())).unwrap();
        let reg = Module::regular(a.clone());
        let fa = f.apply(&reg);
        let x = a.left_mult_matrix(&a.basis_vector(1));
        let mut k = ExactMatrix::zero(3, 9);
        for i in 0..3 {
            for ai in 0..3 {
                let prod = a.multiply(&a.basis_vector(i), &a.basis_vector(ai));
                for (pi, cc) in prod.iter().enumerate() {
                    if !num::Zero::is_zero(cc) {
                        k.set(pi, i * 3 + ai, cc.clone());
                    }
                }
            }
        }
        let d0 = x.mul(&k.mul(&fa.quot.section));
        let c3 = LeftComplex::new(f, -1, vec![reg.clone(), reg.clone()], vec![d0]).unwrap();
        let err = split_data(&c3).unwrap_err();
        match err {
            Error::NotSplit { degree, .. } => assert_eq!(degree, -1),
            other => panic!("expected NotSplit, got {other:?}"),
        }
    }

    #[test]
    fn zero_differentials_split_trivially() {
        let pair = pair_dual();
        let a = dual_numbers();
        let reg = Module::regular(a.clone());
        let fdim = pair.tensor.apply(&reg).module.dim();
        let c = LeftComplex::new(
            pair.tensor.clone(),
            0,
            vec![reg.clone(), reg.clone()],
            vec![ExactMatrix::zero(reg.dim(), fdim)],
        )
        .unwrap();
        let splits = split_data(&c).unwrap();
        assert_eq!(splits.len(), 2);
        for s in &splits {
            assert!(s.p.matrix().is_identity());
            assert!(s.q.is_zero());
        }
        let dec = split_decomposition(&c).unwrap();
        assert!(dec.forward.compose(&dec.backward).is_identity());
    }

    #[test]
    fn sigma_biproducts_split_and_decompose() {
        let pair = pair_dual();
        let a = dual_numbers();
        let p = Module::regular(a.clone());
        let s0 = sigma_projective_left(&pair.tensor, 0, &p).unwrap();
        let s1 = sigma_projective_left(&pair.tensor, 1, &p).unwrap();
        let bp = biproduct(&pair.tensor, &[s0, s1]).unwrap();
        let dec = split_decomposition(&bp.total).unwrap();
        assert!(dec.forward.compose(&dec.backward).is_identity());
        assert!(dec.backward.compose(&dec.forward).is_identity());
        // the decomposition and hat F agree degreewise in dimension
        let (lo, hi) = dec.hat.window().unwrap();
        for n in lo..=hi {
            assert_eq!(dec.hat.term(n).dim(), dec.sum.term(n).dim());
        }
    }

    #[test]
    fn zero_complex_has_empty_decomposition() {
        let pair = pair_dual();
        let z = LeftComplex::zero(pair.tensor.clone());
        let dec = split_decomposition(&z).unwrap();
        assert!(dec.sigmas.is_empty());
        assert!(dec.sum.is_zero());
    }

    #[test]
    fn morphism_space_is_nonempty_for_identity() {
        let c = x_complex_over_identity();
        let space = morphism_space(&c, &c);
        assert!(!space.is_empty());
    }
}
