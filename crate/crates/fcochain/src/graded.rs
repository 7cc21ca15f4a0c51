//! The graded packing of a bounded complex: one total module with a single
//! differential `d: F(total) -> total` shifting each degree block into the
//! next. Packing and unpacking are mutually inverse on the nose.

use std::sync::Arc;

use crate::algebra::{Module, ModuleHom};
use crate::complex::LeftComplex;
use crate::error::{Error, Result};
use crate::functor::RepEndofunctor;
use crate::linalg::ExactMatrix;

/// A graded module with a degree-raising differential.
#[derive(Debug)]
pub struct GradedObject {
    pub functor: Arc<RepEndofunctor>,
    pub total: Arc<Module>,
    /// `(degree, block dimension)` in ascending degree order; block order
    /// matches the basis order of `total`.
    pub grading: Vec<(i64, usize)>,
    /// `d: F(total) -> total`.
    pub differential: ModuleHom,
}

impl GradedObject {
    /// Validates a hand-built graded object: the action of the algebra must
    /// be block-diagonal for the grading, the differential must shift degree
    /// blocks by one, and `d o F(d) = 0`.
    pub fn new(
        functor: Arc<RepEndofunctor>,
        total: Arc<Module>,
        grading: Vec<(i64, usize)>,
        differential: ExactMatrix,
    ) -> Result<Self> {
        let total_dim: usize = grading.iter().map(|g| g.1).sum();
        if total_dim != total.dim() {
            return Err(Error::GradingViolation(format!(
                "grading blocks sum to {total_dim}, total has dimension {}",
                total.dim()
            )));
        }
        for w in grading.windows(2) {
            if w[1].0 != w[0].0 + 1 {
                return Err(Error::GradingViolation(
                    "grading degrees must be consecutive".into(),
                ));
            }
        }
        let g = Self {
            functor: functor.clone(),
            total: total.clone(),
            grading,
            differential: ModuleHom::new(
                functor.apply(&total).module.clone(),
                total,
                differential,
            )?,
        };
        g.check_action_blocks()?;
        g.check_shift()?;
        let fd = g.functor.apply_hom(&g.differential);
        if !g.differential.compose(&fd).is_zero() {
            return Err(Error::NotAComplex(
                g.grading.first().map_or(0, |b| b.0),
            ));
        }
        Ok(g)
    }

    fn block_offsets(&self) -> Vec<(i64, usize, usize)> {
        let mut out = Vec::new();
        let mut off = 0;
        for &(deg, dim) in &self.grading {
            out.push((deg, off, dim));
            off += dim;
        }
        out
    }

    fn check_action_blocks(&self) -> Result<()> {
        let blocks = self.block_offsets();
        for act in self.total.actions() {
            for &(_, off_r, dim_r) in &blocks {
                for &(_, off_c, dim_c) in &blocks {
                    if off_r == off_c {
                        continue;
                    }
                    for r in 0..dim_r {
                        for c in 0..dim_c {
                            if !num::Zero::is_zero(act.at(off_r + r, off_c + c)) {
                                return Err(Error::GradingViolation(
                                    "algebra action does not preserve the grading".into(),
                                ));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Inclusion of the degree-`n` block into the total module, as a matrix.
    fn block_inclusion(&self, n: i64) -> ExactMatrix {
        let blocks = self.block_offsets();
        let Some(&(_, off, dim)) = blocks.iter().find(|b| b.0 == n) else {
            return ExactMatrix::zero(self.total.dim(), 0);
        };
        let mut m = ExactMatrix::zero(self.total.dim(), dim);
        for r in 0..dim {
            m.set(off + r, r, num::One::one());
        }
        m
    }

    fn block_projection(&self, n: i64) -> ExactMatrix {
        self.block_inclusion(n).transpose()
    }

    fn check_shift(&self) -> Result<()> {
        // d(F(M_n)) must land in M_(n+1): for every block n and every block
        // m != n+1, the composite pi_m o d o F(iota_n) vanishes.
        for &(n, _, _) in &self.block_offsets() {
            let sub = submodule_of_total(self, n)?;
            let f_inc = self.functor.apply_hom(&sub);
            let image = self.differential.matrix().mul(f_inc.matrix());
            for &(m, _, _) in &self.block_offsets() {
                if m == n + 1 {
                    continue;
                }
                let pi = self.block_projection(m);
                if !pi.mul(&image).is_zero() {
                    return Err(Error::GradingViolation(format!(
                        "d(F(block {n})) meets block {m}"
                    )));
                }
            }
        }
        Ok(())
    }
}

fn submodule_of_total(g: &GradedObject, n: i64) -> Result<ModuleHom> {
    let inc = g.block_inclusion(n);
    let (sub, hom) = crate::algebra::submodule_on_basis(&g.total, inc)?;
    let _ = sub;
    Ok(hom)
}

/// Packs a bounded complex into one graded module with a single differential.
pub fn to_graded(m: &Arc<LeftComplex>) -> Result<GradedObject> {
    let functor = m.functor().clone();
    let Some((lo, hi)) = m.window() else {
        let zero = Module::zero(functor.bimodule().algebra().clone());
        let fz = functor.apply(&zero).module.clone();
        return Ok(GradedObject {
            functor: functor.clone(),
            total: zero.clone(),
            grading: vec![],
            differential: ModuleHom::zero(fz, zero),
        });
    };
    let parts: Vec<Arc<Module>> = (lo..=hi).map(|n| m.term(n)).collect();
    let (total, injs, _) = Module::direct_sum(&parts);
    let grading: Vec<(i64, usize)> = (lo..=hi)
        .map(|n| (n, m.term(n).dim()))
        .collect();
    // d o F(iota_n) = iota_(n+1) o d^n forces d through the canonical
    // identification F(total) = sum of F(blocks).
    let f_injs: Vec<ExactMatrix> = injs
        .iter()
        .map(|h| functor.apply_hom(h).matrix().clone())
        .collect();
    let j = ExactMatrix::hstack_all(&f_injs);
    if !(j.is_square() && j.rank() == j.rows()) {
        return Err(Error::Internal("F failed to preserve the total direct sum".into()));
    }
    let cols: Vec<ExactMatrix> = (lo..=hi)
        .map(|n| {
            if n < hi {
                injs[(n + 1 - lo) as usize].matrix().mul(m.diff(n).matrix())
            } else {
                ExactMatrix::zero(total.dim(), m.f_term(n).module.dim())
            }
        })
        .collect();
    let d = ExactMatrix::hstack_all(&cols).mul(&j.inverse()?);
    GradedObject::new(functor, total, grading, d)
}

/// Unpacks a graded object back into a bounded complex.
pub fn from_graded(g: &GradedObject) -> Result<Arc<LeftComplex>> {
    if g.grading.is_empty() {
        return Ok(LeftComplex::zero(g.functor.clone()));
    }
    let lo = g.grading[0].0;
    let hi = g.grading.last().unwrap().0;
    let mut terms = Vec::new();
    let mut incs = Vec::new();
    for n in lo..=hi {
        let inc_mat = g.block_inclusion(n);
        let (sub, inc) = crate::algebra::submodule_on_basis(&g.total, inc_mat)?;
        terms.push(sub);
        incs.push(inc);
    }
    let mut diffs = Vec::new();
    for n in lo..hi {
        let f_inc = g.functor.apply_hom(&incs[(n - lo) as usize]);
        let pi = g.block_projection(n + 1);
        let d = pi.mul(g.differential.matrix()).mul(f_inc.matrix());
        diffs.push(d);
    }
    LeftComplex::new(g.functor.clone(), lo, terms, diffs)
}
