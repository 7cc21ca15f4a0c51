//! Functors between complex categories: transport along natural
//! transformations, the isomorphism between left complexes over a tensor
//! functor and right complexes over its adjoint, and restriction along an
//! algebra isomorphism.

use std::sync::Arc;

use num::Zero;

use crate::algebra::{Algebra, Bimodule, Module};
use crate::complex::{ChainMap, LeftComplex, RightChainMap, RightComplex};
use crate::error::{Error, Result};
use crate::functor::{AdjointPair, NatTrans, RepEndofunctor};
use crate::linalg::ExactMatrix;

/// Transport of a complex along a natural transformation `t: F -> F'`:
/// a complex over `F'` becomes one over `F` by precomposing each
/// differential with the component of `t`. Contravariant in `t`.
pub fn transport_complex(t: &NatTrans, m: &Arc<LeftComplex>) -> Result<Arc<LeftComplex>> {
    if m.functor().bimodule() != t.target().bimodule() {
        return Err(Error::ShapeMismatch(
            "complex must live over the target functor of the transformation".into(),
        ));
    }
    let Some((lo, hi)) = m.window() else {
        return Ok(LeftComplex::zero(t.source().clone()));
    };
    let terms: Vec<Arc<Module>> = (lo..=hi).map(|n| m.term(n)).collect();
    let diffs: Vec<ExactMatrix> = (lo..hi)
        .map(|n| {
            let comp = t.component(&m.term(n));
            m.diff(n).matrix().mul(comp.matrix())
        })
        .collect();
    LeftComplex::new(t.source().clone(), lo, terms, diffs)
}

/// Transport of a morphism: the components pass through unchanged.
pub fn transport_map(
    t: &NatTrans,
    phi: &ChainMap,
    new_source: &Arc<LeftComplex>,
    new_target: &Arc<LeftComplex>,
) -> Result<ChainMap> {
    let _ = t;
    let range = phi.source().joint_degrees(phi.target());
    let lo = *range.start();
    let mats: Vec<ExactMatrix> = range.map(|n| phi.component(n).matrix().clone()).collect();
    ChainMap::new(new_source.clone(), new_target.clone(), lo, mats)
}

/// The bridge to the adjoint side: a left complex over `F = B (x) -` becomes
/// a right complex over `G = Hom(B, -)` with the same terms and curried
/// differentials.
pub fn adjoint_bridge(pair: &AdjointPair, m: &Arc<LeftComplex>) -> Result<Arc<RightComplex>> {
    if m.functor().bimodule() != pair.tensor.bimodule() {
        return Err(Error::ShapeMismatch("bridge requires the pair's tensor functor".into()));
    }
    let Some((lo, hi)) = m.window() else {
        return Ok(RightComplex::zero(pair.hom.clone()));
    };
    let terms: Vec<Arc<Module>> = (lo..=hi).map(|n| m.term(n)).collect();
    let diffs: Vec<ExactMatrix> = (lo..hi)
        .map(|n| {
            let mn = m.term(n);
            let mn1 = m.term(n + 1);
            pair.curry(&mn, &mn1, m.diff(n).matrix())
        })
        .collect();
    RightComplex::new(pair.hom.clone(), lo, terms, diffs)
}

/// Inverse bridge: uncurry the differentials of a right complex.
pub fn adjoint_bridge_inverse(
    pair: &AdjointPair,
    m: &Arc<RightComplex>,
) -> Result<Arc<LeftComplex>> {
    if m.functor().bimodule() != pair.hom.bimodule() {
        return Err(Error::ShapeMismatch("bridge requires the pair's hom functor".into()));
    }
    let Some((lo, hi)) = m.window() else {
        return Ok(LeftComplex::zero(pair.tensor.clone()));
    };
    let terms: Vec<Arc<Module>> = (lo..=hi).map(|n| m.term(n)).collect();
    let diffs: Vec<ExactMatrix> = (lo..hi)
        .map(|n| {
            let mn = m.term(n);
            let mn1 = m.term(n + 1);
            pair.uncurry(&mn, &mn1, m.diff(n).matrix())
        })
        .collect();
    LeftComplex::new(pair.tensor.clone(), lo, terms, diffs)
}

/// Morphisms cross the bridge unchanged.
pub fn bridge_map(
    phi: &ChainMap,
    new_source: &Arc<RightComplex>,
    new_target: &Arc<RightComplex>,
) -> Result<RightChainMap> {
    let range = phi.source().joint_degrees(phi.target());
    let lo = *range.start();
    let mats: Vec<ExactMatrix> = range.map(|n| phi.component(n).matrix().clone()).collect();
    RightChainMap::new(new_source.clone(), new_target.clone(), lo, mats)
}

/// And back.
pub fn bridge_map_inverse(
    phi: &RightChainMap,
    new_source: &Arc<LeftComplex>,
    new_target: &Arc<LeftComplex>,
) -> Result<ChainMap> {
    let range = phi.source().joint_degrees(phi.target());
    let lo = *range.start();
    let mats: Vec<ExactMatrix> = range.map(|n| phi.component(n).matrix().clone()).collect();
    ChainMap::new(new_source.clone(), new_target.clone(), lo, mats)
}

/// An isomorphism of algebras `f: B -> A`, stored as the matrix whose column
/// `i` expresses `f(e_i)` in the basis of `A`.
#[derive(Clone, Debug)]
pub struct AlgebraIso {
    source: Arc<Algebra>,
    target: Arc<Algebra>,
    matrix: ExactMatrix,
}

impl AlgebraIso {
    pub fn new(source: Arc<Algebra>, target: Arc<Algebra>, matrix: ExactMatrix) -> Result<Self> {
        if source.dim() != target.dim()
            || matrix.rows() != target.dim()
            || matrix.cols() != source.dim()
        {
            return Err(Error::NotAnIsomorphism("dimension mismatch".into()));
        }
        if matrix.rank() != matrix.cols() {
            return Err(Error::NotAnIsomorphism("matrix is singular".into()));
        }
        let col = |i: usize| -> Vec<_> { (0..matrix.rows()).map(|r| matrix.at(r, i).clone()).collect() };
        for i in 0..source.dim() {
            for j in 0..source.dim() {
                let prod_src = source.multiply(&source.basis_vector(i), &source.basis_vector(j));
                let mut lhs: Vec<crate::linalg::Rat> = vec![num::Zero::zero(); target.dim()];
                for (k, c) in prod_src.iter().enumerate() {
                    if !c.is_zero() {
                        for (r, v) in col(k).iter().enumerate() {
                            lhs[r] += c * v;
                        }
                    }
                }
                let rhs = target.multiply(&col(i), &col(j));
                if lhs != rhs {
                    return Err(Error::NotAnIsomorphism(format!(
                        "f(e_{i} e_{j}) differs from f(e_{i}) f(e_{j})"
                    )));
                }
            }
        }
        let unit_image: Vec<crate::linalg::Rat> = {
            let mut v: Vec<crate::linalg::Rat> = vec![num::Zero::zero(); target.dim()];
            for (i, c) in source.unit().iter().enumerate() {
                if !c.is_zero() {
                    for (r, w) in col(i).iter().enumerate() {
                        v[r] += c * w;
                    }
                }
            }
            v
        };
        if unit_image.as_slice() != target.unit() {
            return Err(Error::NotAnIsomorphism("unit is not preserved".into()));
        }
        Ok(Self { source, target, matrix })
    }

    pub fn identity(a: Arc<Algebra>) -> Self {
        let matrix = ExactMatrix::identity(a.dim());
        Self {
            source: a.clone(),
            target: a,
            matrix,
        }
    }

    pub fn inverse(&self) -> Result<Self> {
        Ok(Self {
            source: self.target.clone(),
            target: self.source.clone(),
            matrix: self.matrix.inverse()?,
        })
    }

    pub fn source(&self) -> &Arc<Algebra> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Algebra> {
        &self.target
    }

    pub fn matrix(&self) -> &ExactMatrix {
        &self.matrix
    }

    /// The image of `e_i` of the source in the target basis.
    fn image_of_basis(&self, i: usize) -> Vec<crate::linalg::Rat> {
        (0..self.matrix.rows()).map(|r| self.matrix.at(r, i).clone()).collect()
    }

    /// Restriction of a module along `f`: same space, basis element `e_i` of
    /// the source acting as `f(e_i)` did.
    pub fn restrict_module(&self, m: &Arc<Module>) -> Result<Arc<Module>> {
        if m.algebra() != &self.target {
            return Err(Error::ShapeMismatch("module lives over the wrong algebra".into()));
        }
        let action: Vec<ExactMatrix> = (0..self.source.dim())
            .map(|i| {
                let img = self.image_of_basis(i);
                m.act(&img)
            })
            .collect();
        Module::new(self.source.clone(), m.dim(), action)
    }

    /// Restriction of a bimodule along `f` on both sides.
    pub fn restrict_bimodule(&self, b: &Arc<Bimodule>) -> Result<Arc<Bimodule>> {
        if b.algebra() != &self.target {
            return Err(Error::ShapeMismatch("bimodule lives over the wrong algebra".into()));
        }
        let mix = |acts: &[ExactMatrix], i: usize| -> ExactMatrix {
            let img = self.image_of_basis(i);
            let mut out = ExactMatrix::zero(b.dim(), b.dim());
            for (k, c) in img.iter().enumerate() {
                if !c.is_zero() {
                    out = out.add(&acts[k].scale(c));
                }
            }
            out
        };
        let left: Vec<ExactMatrix> = (0..self.source.dim())
            .map(|i| mix(b.left_actions(), i))
            .collect();
        let right: Vec<ExactMatrix> = (0..self.source.dim())
            .map(|i| mix(b.right_actions(), i))
            .collect();
        Bimodule::new(self.source.clone(), b.dim(), left, right)
    }
}

/// Restriction of a whole complex along an algebra isomorphism `f: B -> A`:
/// the terms are restricted, the transported functor is the restricted
/// bimodule, and the differential matrices carry over verbatim because the
/// tensor relation span is unchanged.
pub fn induced_along_iso(
    iso: &AlgebraIso,
    m: &Arc<LeftComplex>,
) -> Result<(Arc<RepEndofunctor>, Arc<LeftComplex>)> {
    let b = m.functor().bimodule();
    let new_bim = iso.restrict_bimodule(b)?;
    let new_functor = RepEndofunctor::new(new_bim)?;
    let Some((lo, hi)) = m.window() else {
        return Ok((new_functor.clone(), LeftComplex::zero(new_functor)));
    };
    let mut terms = Vec::new();
    for n in lo..=hi {
        terms.push(iso.restrict_module(&m.term(n))?);
    }
    // The relation spans agree, so the quotient presentations agree and the
    // differential matrices transport unchanged; anything else is a bug.
    for (k, t) in terms.iter().enumerate() {
        let n = lo + k as i64;
        let old = m.f_term(n);
        let new = new_functor.apply(t);
        if old.quot.projection != new.quot.projection || old.quot.section != new.quot.section {
            return Err(Error::Internal(
                "tensor presentation changed under restriction".into(),
            ));
        }
    }
    let diffs: Vec<ExactMatrix> = (lo..hi).map(|n| m.diff(n).matrix().clone()).collect();
    let out = LeftComplex::new(new_functor.clone(), lo, terms, diffs)?;
    Ok((new_functor, out))
}

/// Morphisms restrict with unchanged components.
pub fn induced_map_along_iso(
    phi: &ChainMap,
    new_source: &Arc<LeftComplex>,
    new_target: &Arc<LeftComplex>,
) -> Result<ChainMap> {
    let range = phi.source().joint_degrees(phi.target());
    let lo = *range.start();
    let mats: Vec<ExactMatrix> = range.map(|n| phi.component(n).matrix().clone()).collect();
    ChainMap::new(new_source.clone(), new_target.clone(), lo, mats)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{dual_bimodule, dual_numbers, ground_field, hom_space};
    use crate::functor::{bimodule_hom_basis, HomEndofunctor};
    use crate::linalg::{rat, rint};

    fn x_complex() -> (AdjointPair, Arc<LeftComplex>) {
        // DA (x) - over the dual numbers with a made-up valid differential
        let a = dual_numbers();
        let pair = AdjointPair::for_bimodule(dual_bimodule(&a)).unwrap();
        let reg = Module::regular(a.clone());
        let fa = pair.tensor.apply(&reg);
        // pick any nonzero hom F(A) -> A whose square through F vanishes
        let homs = hom_space(&fa.module, &reg);
        let mut chosen = None;
        for h in &homs {
            if let Ok(c) = LeftComplex::new(
                pair.tensor.clone(),
                0,
                vec![reg.clone(), reg.clone(), reg.clone()],
                vec![h.matrix().clone(), h.matrix().clone()],
            ) {
                chosen = Some(c);
                break;
            }
        }
        let c = chosen.expect("some repeated differential squares to zero");
        (pair, c)
    }

    #[test]
    fn bridge_roundtrip_is_identity() {
        let (pair, c) = x_complex();
        let r = adjoint_bridge(&pair, &c).unwrap();
        let back = adjoint_bridge_inverse(&pair, &r).unwrap();
        assert_eq!(back.as_ref(), c.as_ref());
    }

    #[test]
    fn bridge_of_zero_differentials() {
        let a = dual_numbers();
        let pair = AdjointPair::for_bimodule(dual_bimodule(&a)).unwrap();
        let reg = Module::regular(a.clone());
        let fa_dim = pair.tensor.apply(&reg).module.dim();
        let c = LeftComplex::new(
            pair.tensor.clone(),
            0,
            vec![reg.clone(), reg.clone()],
            vec![ExactMatrix::zero(reg.dim(), fa_dim)],
        )
        .unwrap();
        let r = adjoint_bridge(&pair, &c).unwrap();
        assert!(r.diff(0).is_zero());
    }

    #[test]
    fn bridge_sends_projective_sigma_to_unit_differential() {
        // terms (P, F(P)) with identity differential map to the unit
        let a = dual_numbers();
        let pair = AdjointPair::for_bimodule(dual_bimodule(&a)).unwrap();
        let p = Module::regular(a.clone());
        let fp = pair.tensor.apply(&p).module.clone();
        let c = LeftComplex::new(
            pair.tensor.clone(),
            0,
            vec![p.clone(), fp.clone()],
            vec![ExactMatrix::identity(fp.dim())],
        )
        .unwrap();
        let r = adjoint_bridge(&pair, &c).unwrap();
        let eta = pair.unit(&p);
        assert_eq!(r.diff(0).matrix(), eta.matrix());
    }

    #[test]
    fn transport_identity_and_zero() {
        let (_, c) = x_complex();
        let f = c.functor().clone();
        let idt = NatTrans::identity(f.clone());
        let moved = transport_complex(&idt, &c).unwrap();
        assert_eq!(moved.as_ref(), c.as_ref());

        let z = NatTrans::zero(f.clone(), f.clone());
        let killed = transport_complex(&z, &c).unwrap();
        assert!(killed.diff(0).is_zero() && killed.diff(1).is_zero());
    }

    #[test]
    fn transport_composes_contravariantly() {
        let a = dual_numbers();
        let f1 = RepEndofunctor::new(Bimodule::regular(a.clone())).unwrap();
        let f2 = RepEndofunctor::new(dual_bimodule(&a)).unwrap();
        let basis12 = bimodule_hom_basis(f1.bimodule(), f2.bimodule());
        let basis22 = bimodule_hom_basis(f2.bimodule(), f2.bimodule());
        let s = NatTrans::new(f1.clone(), f2.clone(), basis12[0].clone()).unwrap();
        let t = NatTrans::new(f2.clone(), f2.clone(), basis22[0].clone()).unwrap();
        let ts = t.compose(&s).unwrap();
        let (_, c) = x_complex(); // lives over f2
        let via_composite = transport_complex(&ts, &c).unwrap();
        let via_steps = transport_complex(&s, &transport_complex(&t, &c).unwrap()).unwrap();
        assert_eq!(via_composite.as_ref(), via_steps.as_ref());
    }

    #[test]
    fn restriction_along_scaling_automorphism() {
        // the dual numbers have automorphisms 1 -> 1, x -> c x for c != 0
        let a = dual_numbers();
        let mut mat = ExactMatrix::identity(2);
        mat.set(1, 1, rat(3, 2));
        let iso = AlgebraIso::new(a.clone(), a.clone(), mat).unwrap();
        let (_, c) = x_complex();
        let (_, moved) = induced_along_iso(&iso, &c).unwrap();
        let inv = iso.inverse().unwrap();
        let (_, back) = induced_along_iso(&inv, &moved).unwrap();
        assert_eq!(back.as_ref(), c.as_ref());

        let id_iso = AlgebraIso::identity(a.clone());
        let (_, same) = induced_along_iso(&id_iso, &c).unwrap();
        assert_eq!(same.as_ref(), c.as_ref());

        let z = LeftComplex::zero(c.functor().clone());
        let (_, zz) = induced_along_iso(&iso, &z).unwrap();
        assert!(zz.is_zero());
    }

    #[test]
    fn non_isomorphisms_are_rejected() {
        let a = dual_numbers();
        let k = ground_field();
        assert!(matches!(
            AlgebraIso::new(a.clone(), k.clone(), ExactMatrix::identity(1)),
            Err(Error::NotAnIsomorphism(_))
        ));
        // x -> 1 + x does not preserve multiplication
        let mut mat = ExactMatrix::identity(2);
        mat.set(0, 1, rint(1));
        assert!(matches!(
            AlgebraIso::new(a.clone(), a.clone(), mat),
            Err(Error::NotAnIsomorphism(_))
        ));
    }

    #[test]
    fn bridged_morphisms_satisfy_right_squares() {
        let (pair, c) = x_complex();
        let r = adjoint_bridge(&pair, &c).unwrap();
        for phi in crate::complex::morphism_space(&c, &c) {
            let moved = bridge_map(&phi, &r, &r).unwrap();
            let back = bridge_map_inverse(&moved, &c, &c).unwrap();
            assert!(back.eq_as_map(&phi));
        }
        let _ = HomEndofunctor::new(dual_bimodule(&dual_numbers()));
    }
}
