//! Bounded cochain complexes over an endofunctor and their morphisms.
//!
//! A left complex stores modules `M^n` on an explicit window `[lo, hi]` and
//! differentials `d^n: F(M^n) -> M^(n+1)` with `d^(n+1) o F(d^n) = 0`; a right
//! complex stores `d^n: M^n -> G(M^(n+1))` with `G(d^(n+1)) o d^n = 0`. Terms
//! outside the window are zero, and degenerate windows (empty, single degree)
//! are first-class. Construction always validates, and every operation that
//! outputs a complex goes back through the validating constructor.

use std::sync::Arc;

use crate::algebra::{
    cokernel_of_hom, hom_space, kernel_of_hom, Module, ModuleHom,
};
use crate::error::{Error, Result};
use crate::functor::{HomEndofunctor, RepEndofunctor, TensorApp};
use crate::linalg::{solve_linear, ExactMatrix};

/// A bounded complex with differentials out of the functor: `d^n: F(M^n) -> M^(n+1)`.
pub struct LeftComplex {
    functor: Arc<RepEndofunctor>,
    lo: i64,
    terms: Vec<Arc<Module>>,
    /// `diffs[k]: F(terms[k]) -> terms[k+1]`, one per degree including the
    /// final map into the zero module.
    diffs: Vec<ModuleHom>,
}

impl std::fmt::Debug for LeftComplex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let dims: Vec<usize> = self.terms.iter().map(|t| t.dim()).collect();
        write!(f, "LeftComplex(lo={}, dims={:?})", self.lo, dims)
    }
}

impl LeftComplex {
    /// Builds and validates a complex. `diffs[k]` maps `F(terms[k])` to
    /// `terms[k+1]`; the trailing differential into the zero module is
    /// implied. Reports the degree of the first failing composite.
    pub fn new(
        functor: Arc<RepEndofunctor>,
        lo: i64,
        terms: Vec<Arc<Module>>,
        diffs: Vec<ExactMatrix>,
    ) -> Result<Arc<Self>> {
        let algebra = functor.bimodule().algebra().clone();
        for t in &terms {
            if t.algebra() != &algebra {
                return Err(Error::ShapeMismatch(
                    "complex terms must live over the functor's algebra".into(),
                ));
            }
        }
        if !terms.is_empty() && diffs.len() != terms.len() - 1 {
            return Err(Error::ShapeMismatch(format!(
                "{} terms need {} differentials, got {}",
                terms.len(),
                terms.len() - 1,
                diffs.len()
            )));
        }
        if terms.is_empty() && !diffs.is_empty() {
            return Err(Error::ShapeMismatch("empty complex takes no differentials".into()));
        }
        let mut homs = Vec::new();
        for (k, d) in diffs.into_iter().enumerate() {
            let src = functor.apply(&terms[k]).module.clone();
            homs.push(ModuleHom::new(src, terms[k + 1].clone(), d)?);
        }
        if let Some(last) = terms.last() {
            let src = functor.apply(last).module.clone();
            let zero = Module::zero(algebra);
            homs.push(ModuleHom::zero(src, zero));
        }
        let c = Self {
            functor,
            lo,
            terms,
            diffs: homs,
        };
        c.check_complex_condition()?;
        Ok(Arc::new(c))
    }

    fn check_complex_condition(&self) -> Result<()> {
        for k in 0..self.diffs.len().saturating_sub(1) {
            let fd = self.functor.apply_hom(&self.diffs[k]);
            if !self.diffs[k + 1].compose(&fd).is_zero() {
                return Err(Error::NotAComplex(self.lo + k as i64));
            }
        }
        Ok(())
    }

    pub fn zero(functor: Arc<RepEndofunctor>) -> Arc<Self> {
        Arc::new(Self {
            functor,
            lo: 0,
            terms: vec![],
            diffs: vec![],
        })
    }

    pub fn functor(&self) -> &Arc<RepEndofunctor> {
        &self.functor
    }

    pub fn algebra(&self) -> Arc<crate::algebra::Algebra> {
        self.functor.bimodule().algebra().clone()
    }

    /// `Some((lo, hi))` of the stored window, `None` for the zero complex.
    pub fn window(&self) -> Option<(i64, i64)> {
        if self.terms.is_empty() {
            None
        } else {
            Some((self.lo, self.lo + self.terms.len() as i64 - 1))
        }
    }

    pub fn term(&self, n: i64) -> Arc<Module> {
        let idx = n - self.lo;
        if idx >= 0 && (idx as usize) < self.terms.len() {
            self.terms[idx as usize].clone()
        } else {
            Module::zero(self.algebra())
        }
    }

    /// The differential `d^n: F(M^n) -> M^(n+1)` as a homomorphism, a zero
    /// map outside the window.
    pub fn diff(&self, n: i64) -> ModuleHom {
        let idx = n - self.lo;
        if idx >= 0 && (idx as usize) < self.diffs.len() {
            self.diffs[idx as usize].clone()
        } else {
            let src = self.functor.apply(&self.term(n)).module.clone();
            ModuleHom::zero(src, self.term(n + 1))
        }
    }

    pub fn f_term(&self, n: i64) -> Arc<TensorApp> {
        self.functor.apply(&self.term(n))
    }

    /// Degrees at which either this or `other` can have content.
    pub fn joint_degrees(&self, other: &LeftComplex) -> std::ops::RangeInclusive<i64> {
        let lo = match (self.window(), other.window()) {
            (Some((a, _)), Some((b, _))) => a.min(b),
            (Some((a, _)), None) => a,
            (None, Some((b, _))) => b,
            (None, None) => 0,
        };
        let hi = match (self.window(), other.window()) {
            (Some((_, a)), Some((_, b))) => a.max(b),
            (Some((_, a)), None) => a,
            (None, Some((_, b))) => b,
            (None, None) => -1,
        };
        lo..=hi
    }

    pub fn is_zero(&self) -> bool {
        self.terms.iter().all(|t| t.dim() == 0)
    }
}

impl PartialEq for LeftComplex {
    /// Degreewise content equality: same bimodule, and equal terms and
    /// differential matrices at every degree (windows may pad with zeros).
    fn eq(&self, other: &Self) -> bool {
        if self.functor.bimodule() != other.functor.bimodule() {
            return false;
        }
        for n in self.joint_degrees(other) {
            if self.term(n) != other.term(n) {
                return false;
            }
            if self.diff(n).matrix() != other.diff(n).matrix() {
                return false;
            }
        }
        true
    }
}

/// A bounded complex with differentials into the functor: `d^n: M^n -> G(M^(n+1))`.
pub struct RightComplex {
    functor: Arc<HomEndofunctor>,
    lo: i64,
    terms: Vec<Arc<Module>>,
    /// `diffs[k]: terms[k] -> G(terms[k+1])`, including the final map out of
    /// the last term into `G(0) = 0`.
    diffs: Vec<ModuleHom>,
}

impl std::fmt::Debug for RightComplex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let dims: Vec<usize> = self.terms.iter().map(|t| t.dim()).collect();
        write!(f, "RightComplex(lo={}, dims={:?})", self.lo, dims)
    }
}

impl RightComplex {
    pub fn new(
        functor: Arc<HomEndofunctor>,
        lo: i64,
        terms: Vec<Arc<Module>>,
        diffs: Vec<ExactMatrix>,
    ) -> Result<Arc<Self>> {
        let algebra = functor.bimodule().algebra().clone();
        for t in &terms {
            if t.algebra() != &algebra {
                return Err(Error::ShapeMismatch(
                    "complex terms must live over the functor's algebra".into(),
                ));
            }
        }
        if !terms.is_empty() && diffs.len() != terms.len() - 1 {
            return Err(Error::ShapeMismatch(format!(
                "{} terms need {} differentials, got {}",
                terms.len(),
                terms.len() - 1,
                diffs.len()
            )));
        }
        if terms.is_empty() && !diffs.is_empty() {
            return Err(Error::ShapeMismatch("empty complex takes no differentials".into()));
        }
        let mut homs = Vec::new();
        for (k, d) in diffs.into_iter().enumerate() {
            let tgt = functor.apply(&terms[k + 1]).module.clone();
            homs.push(ModuleHom::new(terms[k].clone(), tgt, d)?);
        }
        if let Some(last) = terms.last() {
            let zero = Module::zero(algebra);
            let tgt = functor.apply(&zero).module.clone();
            homs.push(ModuleHom::zero(last.clone(), tgt));
        }
        let c = Self {
            functor,
            lo,
            terms,
            diffs: homs,
        };
        c.check_complex_condition()?;
        Ok(Arc::new(c))
    }

    fn check_complex_condition(&self) -> Result<()> {
        for k in 0..self.diffs.len().saturating_sub(1) {
            let gd = self.functor.apply_hom(&self.diffs[k + 1]);
            if !gd.compose(&self.diffs[k]).is_zero() {
                return Err(Error::NotAComplex(self.lo + k as i64));
            }
        }
        Ok(())
    }

    pub fn zero(functor: Arc<HomEndofunctor>) -> Arc<Self> {
        Arc::new(Self {
            functor,
            lo: 0,
            terms: vec![],
            diffs: vec![],
        })
    }

    pub fn functor(&self) -> &Arc<HomEndofunctor> {
        &self.functor
    }

    pub fn algebra(&self) -> Arc<crate::algebra::Algebra> {
        self.functor.bimodule().algebra().clone()
    }

    pub fn window(&self) -> Option<(i64, i64)> {
        if self.terms.is_empty() {
            None
        } else {
            Some((self.lo, self.lo + self.terms.len() as i64 - 1))
        }
    }

    pub fn term(&self, n: i64) -> Arc<Module> {
        let idx = n - self.lo;
        if idx >= 0 && (idx as usize) < self.terms.len() {
            self.terms[idx as usize].clone()
        } else {
            Module::zero(self.algebra())
        }
    }

    pub fn diff(&self, n: i64) -> ModuleHom {
        let idx = n - self.lo;
        if idx >= 0 && (idx as usize) < self.diffs.len() {
            self.diffs[idx as usize].clone()
        } else {
            let tgt = self.functor.apply(&self.term(n + 1)).module.clone();
            ModuleHom::zero(self.term(n), tgt)
        }
    }

    pub fn joint_degrees(&self, other: &RightComplex) -> std::ops::RangeInclusive<i64> {
        let lo = match (self.window(), other.window()) {
            (Some((a, _)), Some((b, _))) => a.min(b),
            (Some((a, _)), None) => a,
            (None, Some((b, _))) => b,
            (None, None) => 0,
        };
        let hi = match (self.window(), other.window()) {
            (Some((_, a)), Some((_, b))) => a.max(b),
            (Some((_, a)), None) => a,
            (None, Some((_, b))) => b,
            (None, None) => -1,
        };
        lo..=hi
    }
}

impl PartialEq for RightComplex {
    fn eq(&self, other: &Self) -> bool {
        if self.functor.bimodule() != other.functor.bimodule() {
            return false;
        }
        for n in self.joint_degrees(other) {
            if self.term(n) != other.term(n) {
                return false;
            }
            if self.diff(n).matrix() != other.diff(n).matrix() {
                return false;
            }
        }
        true
    }
}

/// A morphism of left complexes: degreewise maps commuting with the
/// differentials through `F`.
#[derive(Clone)]
pub struct ChainMap {
    source: Arc<LeftComplex>,
    target: Arc<LeftComplex>,
    lo: i64,
    comps: Vec<ModuleHom>,
}

impl std::fmt::Debug for ChainMap {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "ChainMap(lo={}, len={})", self.lo, self.comps.len())
    }
}

impl ChainMap {
    /// Builds and validates a morphism from per-degree matrices starting at
    /// degree `lo`; missing degrees are zero maps.
    pub fn new(
        source: Arc<LeftComplex>,
        target: Arc<LeftComplex>,
        lo: i64,
        mats: Vec<ExactMatrix>,
    ) -> Result<Self> {
        let mut comps = Vec::new();
        for (k, m) in mats.into_iter().enumerate() {
            let n = lo + k as i64;
            comps.push(ModuleHom::new(source.term(n), target.term(n), m)?);
        }
        let map = Self {
            source,
            target,
            lo,
            comps,
        };
        map.validate()?;
        Ok(map)
    }

    fn validate(&self) -> Result<()> {
        let lo = self
            .source
            .joint_degrees(&self.target)
            .start()
            .min(&(self.lo - 1))
            - 1;
        let hi = self
            .source
            .joint_degrees(&self.target)
            .end()
            .max(&(self.lo + self.comps.len() as i64))
            + 1;
        for n in lo..=hi {
            let lhs = self.component(n + 1).compose(&self.source.diff(n));
            let rhs = self
                .target
                .diff(n)
                .compose(&self.source.functor().apply_hom(&self.component(n)));
            if lhs.matrix() != rhs.matrix() {
                return Err(Error::NotIntertwiner(0));
            }
        }
        Ok(())
    }

    pub fn source(&self) -> &Arc<LeftComplex> {
        &self.source
    }

    pub fn target(&self) -> &Arc<LeftComplex> {
        &self.target
    }

    pub fn component(&self, n: i64) -> ModuleHom {
        let idx = n - self.lo;
        if idx >= 0 && (idx as usize) < self.comps.len() {
            self.comps[idx as usize].clone()
        } else {
            ModuleHom::zero(self.source.term(n), self.target.term(n))
        }
    }

    pub fn identity(c: Arc<LeftComplex>) -> Self {
        let (lo, comps) = match c.window() {
            None => (0, vec![]),
            Some((lo, hi)) => (
                lo,
                (lo..=hi).map(|n| ModuleHom::identity(c.term(n))).collect(),
            ),
        };
        Self {
            source: c.clone(),
            target: c,
            lo,
            comps,
        }
    }

    pub fn zero(source: Arc<LeftComplex>, target: Arc<LeftComplex>) -> Self {
        Self {
            source,
            target,
            lo: 0,
            comps: vec![],
        }
    }

    /// `self` after `other`.
    pub fn compose(&self, other: &ChainMap) -> ChainMap {
        let range = other.source.joint_degrees(&self.target);
        let lo = *range.start();
        let comps = range
            .map(|n| self.component(n).compose(&other.component(n)))
            .collect();
        ChainMap {
            source: other.source.clone(),
            target: self.target.clone(),
            lo,
            comps,
        }
    }

    pub fn add(&self, other: &ChainMap) -> ChainMap {
        let range = self.source.joint_degrees(&self.target);
        let lo = *range.start();
        let comps = range
            .map(|n| self.component(n).add(&other.component(n)))
            .collect();
        ChainMap {
            source: self.source.clone(),
            target: self.target.clone(),
            lo,
            comps,
        }
    }

    pub fn scale(&self, s: &crate::linalg::Rat) -> ChainMap {
        ChainMap {
            source: self.source.clone(),
            target: self.target.clone(),
            lo: self.lo,
            comps: self.comps.iter().map(|c| c.scale(s)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(ModuleHom::is_zero)
    }

    pub fn is_degreewise_epi(&self) -> bool {
        self.source
            .joint_degrees(&self.target)
            .all(|n| self.component(n).is_surjective())
    }

    pub fn is_degreewise_mono(&self) -> bool {
        self.source
            .joint_degrees(&self.target)
            .all(|n| self.component(n).is_injective())
    }

    pub fn is_identity(&self) -> bool {
        self.source
            .joint_degrees(&self.target)
            .all(|n| self.component(n).matrix().is_identity())
    }

    pub fn eq_as_map(&self, other: &ChainMap) -> bool {
        let range = self.source.joint_degrees(&self.target);
        range.clone().all(|n| self.component(n).matrix() == other.component(n).matrix())
    }
}

/// A morphism of right complexes.
#[derive(Clone)]
pub struct RightChainMap {
    source: Arc<RightComplex>,
    target: Arc<RightComplex>,
    lo: i64,
    comps: Vec<ModuleHom>,
}

impl RightChainMap {
    pub fn new(
        source: Arc<RightComplex>,
        target: Arc<RightComplex>,
        lo: i64,
        mats: Vec<ExactMatrix>,
    ) -> Result<Self> {
        let mut comps = Vec::new();
        for (k, m) in mats.into_iter().enumerate() {
            let n = lo + k as i64;
            comps.push(ModuleHom::new(source.term(n), target.term(n), m)?);
        }
        let map = Self {
            source,
            target,
            lo,
            comps,
        };
        map.validate()?;
        Ok(map)
    }

    fn validate(&self) -> Result<()> {
        let range = self.source.joint_degrees(&self.target);
        let lo = range.start() - 1;
        let hi = range.end() + 1;
        for n in lo..=hi {
            // G(phi^(n+1)) o d_M^n = d_N^n o phi^n
            let lhs = self
                .source
                .functor()
                .apply_hom(&self.component(n + 1))
                .compose(&self.source.diff(n));
            let rhs = self.target.diff(n).compose(&self.component(n));
            if lhs.matrix() != rhs.matrix() {
                return Err(Error::NotIntertwiner(0));
            }
        }
        Ok(())
    }

    pub fn source(&self) -> &Arc<RightComplex> {
        &self.source
    }

    pub fn target(&self) -> &Arc<RightComplex> {
        &self.target
    }

    pub fn component(&self, n: i64) -> ModuleHom {
        let idx = n - self.lo;
        if idx >= 0 && (idx as usize) < self.comps.len() {
            self.comps[idx as usize].clone()
        } else {
            ModuleHom::zero(self.source.term(n), self.target.term(n))
        }
    }

    pub fn compose(&self, other: &RightChainMap) -> RightChainMap {
        let range = other.source.joint_degrees(&self.target);
        let lo = *range.start();
        let comps = range
            .map(|n| self.component(n).compose(&other.component(n)))
            .collect();
        RightChainMap {
            source: other.source.clone(),
            target: self.target.clone(),
            lo,
            comps,
        }
    }

    pub fn is_degreewise_epi(&self) -> bool {
        self.source
            .joint_degrees(&self.target)
            .all(|n| self.component(n).is_surjective())
    }

    pub fn is_degreewise_mono(&self) -> bool {
        self.source
            .joint_degrees(&self.target)
            .all(|n| self.component(n).is_injective())
    }

    pub fn eq_as_map(&self, other: &RightChainMap) -> bool {
        let range = self.source.joint_degrees(&self.target);
        range.clone().all(|n| self.component(n).matrix() == other.component(n).matrix())
    }
}

/// Basis of the space of chain morphisms `m -> n`, found by solving the
/// commuting-square constraints over the degreewise homomorphism spaces.
pub fn morphism_space(m: &Arc<LeftComplex>, n: &Arc<LeftComplex>) -> Vec<ChainMap> {
    let (Some((mlo, mhi)), Some((nlo, nhi))) = (m.window(), n.window()) else {
        return vec![];
    };
    let lo = mlo.max(nlo);
    let hi = mhi.min(nhi);
    if lo > hi {
        return vec![];
    }
    // unknowns: coefficients over hom bases per degree
    let degrees: Vec<i64> = (lo..=hi).collect();
    let bases: Vec<Vec<ModuleHom>> = degrees
        .iter()
        .map(|&d| hom_space(&m.term(d), &n.term(d)))
        .collect();
    let f_bases: Vec<Vec<ModuleHom>> = bases
        .iter()
        .map(|hs| hs.iter().map(|h| m.functor().apply_hom(h)).collect())
        .collect();
    let total: usize = bases.iter().map(Vec::len).sum();
    if total == 0 {
        return vec![];
    }
    // constraints at degrees lo-1 ..= hi
    let mut rows = 0usize;
    let mut row_offsets = Vec::new();
    for cn in (lo - 1)..=hi {
        row_offsets.push(rows);
        rows += n.term(cn + 1).dim() * m.f_term(cn).module.dim();
    }
    let mut sys = ExactMatrix::zero(rows, total);
    let mut col = 0usize;
    for (di, &d) in degrees.iter().enumerate() {
        for (bi, h) in bases[di].iter().enumerate() {
            // square at d-1: + vec(h o d_M^(d-1))
            if d - 1 >= lo - 1 {
                let c = h.compose(&m.diff(d - 1));
                let v = c.matrix().vectorize();
                let off = row_offsets[(d - 1 - (lo - 1)) as usize];
                for r in 0..v.rows() {
                    sys.set(off + r, col, v.at(r, 0).clone());
                }
            }
            // square at d: - vec(d_N^d o F(h))
            if d <= hi {
                let c = n.diff(d).compose(&f_bases[di][bi]);
                let v = c.matrix().vectorize();
                let off = row_offsets[(d - (lo - 1)) as usize];
                for r in 0..v.rows() {
                    let cur = sys.at(off + r, col) - v.at(r, 0);
                    sys.set(off + r, col, cur);
                }
            }
            col += 1;
        }
    }
    let kernel = sys.kernel_basis();
    let mut out = Vec::new();
    for j in 0..kernel.cols() {
        let mut mats = Vec::new();
        let mut idx = 0usize;
        for (di, &d) in degrees.iter().enumerate() {
            let mut mat = ExactMatrix::zero(n.term(d).dim(), m.term(d).dim());
            for h in &bases[di] {
                let c = kernel.at(idx, j).clone();
                idx += 1;
                if !num::Zero::is_zero(&c) {
                    mat = mat.add(&h.matrix().scale(&c));
                }
            }
            mats.push(mat);
        }
        out.push(
            ChainMap::new(m.clone(), n.clone(), lo, mats)
                .expect("kernel of the square constraints is a chain map"),
        );
    }
    out
}

/// Kernel of a chain morphism: degreewise kernels with the unique induced
/// differential, plus the inclusion.
pub fn kernel_complex(phi: &ChainMap) -> Result<(Arc<LeftComplex>, ChainMap)> {
    let m = phi.source();
    let functor = m.functor().clone();
    let Some((lo, hi)) = m.window() else {
        let z = LeftComplex::zero(functor);
        let inc = ChainMap::zero(z.clone(), m.clone());
        return Ok((z, inc));
    };
    let mut kers = Vec::new();
    let mut incs = Vec::new();
    for n in lo..=hi {
        let (k, inc) = kernel_of_hom(&phi.component(n))?;
        kers.push(k);
        incs.push(inc);
    }
    let mut diffs = Vec::new();
    for k in 0..kers.len().saturating_sub(1) {
        let n = lo + k as i64;
        let f_inc = functor.apply_hom(&incs[k]);
        let rhs = m.diff(n).compose(&f_inc);
        let d = solve_linear(incs[k + 1].matrix(), rhs.matrix()).map_err(|_| {
            Error::Internal(format!(
                "kernel differential failed to factor at degree {n}"
            ))
        })?;
        diffs.push(d);
    }
    let kc = LeftComplex::new(functor, lo, kers, diffs)?;
    let inc_mats = incs.iter().map(|h| h.matrix().clone()).collect();
    let inc = ChainMap::new(kc.clone(), m.clone(), lo, inc_mats)?;
    Ok((kc, inc))
}

/// Cokernel of a chain morphism: degreewise cokernels with the unique induced
/// differential, plus the projection. The canonical comparison
/// `coker F(phi^n) -> F(coker phi^n)` is materialized and must be invertible.
pub fn cokernel_complex(phi: &ChainMap) -> Result<(Arc<LeftComplex>, ChainMap)> {
    let n_cx = phi.target();
    let functor = n_cx.functor().clone();
    let Some((lo, hi)) = n_cx.window() else {
        let z = LeftComplex::zero(functor);
        let proj = ChainMap::zero(n_cx.clone(), z.clone());
        return Ok((z, proj));
    };
    let mut cokers = Vec::new();
    let mut projs = Vec::new();
    for n in lo..=hi {
        let (c, proj, _) = cokernel_of_hom(&phi.component(n))?;
        cokers.push(c);
        projs.push(proj);
    }
    // right-exactness identification, verified invertible degreewise
    for (k, proj) in projs.iter().enumerate() {
        let n = lo + k as i64;
        let f_phi = functor.apply_hom(&phi.component(n));
        let (_, _, qd) = cokernel_of_hom(&f_phi)?;
        let comparison = functor.apply_hom(proj).matrix().mul(&qd.section);
        if !(comparison.is_square() && comparison.rank() == comparison.rows()) {
            return Err(Error::Internal(format!(
                "F(coker) and coker(F) failed to agree at degree {n}"
            )));
        }
    }
    let mut diffs = Vec::new();
    for k in 0..cokers.len().saturating_sub(1) {
        let n = lo + k as i64;
        let f_proj = functor.apply_hom(&projs[k]);
        let rhs = projs[k + 1].compose(&n_cx.diff(n));
        // d_C^n o F(pi^n) = pi^(n+1) o d_N^n, solved through the transpose
        let d_t = solve_linear(&f_proj.matrix().transpose(), &rhs.matrix().transpose())
            .map_err(|_| {
                Error::Internal(format!(
                    "cokernel differential failed to factor at degree {n}"
                ))
            })?;
        diffs.push(d_t.transpose());
    }
    let cc = LeftComplex::new(functor, lo, cokers, diffs)?;
    let proj_mats = projs.iter().map(|h| h.matrix().clone()).collect();
    let proj = ChainMap::new(n_cx.clone(), cc.clone(), lo, proj_mats)?;
    Ok((cc, proj))
}

/// A finite biproduct with its structure maps.
pub struct Biproduct {
    pub total: Arc<LeftComplex>,
    pub injections: Vec<ChainMap>,
    pub projections: Vec<ChainMap>,
}

/// Degreewise direct sum with block differentials transported through the
/// canonical identification `F(sum) = sum of F`.
pub fn biproduct(functor: &Arc<RepEndofunctor>, items: &[Arc<LeftComplex>]) -> Result<Biproduct> {
    for it in items {
        if it.functor().bimodule() != functor.bimodule() {
            return Err(Error::ShapeMismatch(
                "biproduct items must share the functor".into(),
            ));
        }
    }
    let windows: Vec<(i64, i64)> = items.iter().filter_map(|c| c.window()).collect();
    if windows.is_empty() {
        let z = LeftComplex::zero(functor.clone());
        return Ok(Biproduct {
            total: z.clone(),
            injections: items.iter().map(|c| ChainMap::zero(c.clone(), z.clone())).collect(),
            projections: items.iter().map(|c| ChainMap::zero(z.clone(), c.clone())).collect(),
        });
    }
    let lo = windows.iter().map(|w| w.0).min().unwrap();
    let hi = windows.iter().map(|w| w.1).max().unwrap();

    let mut terms = Vec::new();
    let mut inj_mats: Vec<Vec<ExactMatrix>> = vec![Vec::new(); items.len()];
    let mut proj_mats: Vec<Vec<ExactMatrix>> = vec![Vec::new(); items.len()];
    let mut inj_homs_by_degree = Vec::new();
    for n in lo..=hi {
        let parts: Vec<Arc<Module>> = items.iter().map(|c| c.term(n)).collect();
        let (total, injs, projs) = Module::direct_sum(&parts);
        for (i, h) in injs.iter().enumerate() {
            inj_mats[i].push(h.matrix().clone());
        }
        for (i, h) in projs.iter().enumerate() {
            proj_mats[i].push(h.matrix().clone());
        }
        inj_homs_by_degree.push(injs);
        terms.push(total);
    }

    let mut diffs = Vec::new();
    for k in 0..terms.len() - 1 {
        let n = lo + k as i64;
        let f_injs: Vec<ExactMatrix> = inj_homs_by_degree[k]
            .iter()
            .map(|h| functor.apply_hom(h).matrix().clone())
            .collect();
        let j = ExactMatrix::hstack_all(&f_injs);
        if !(j.is_square() && j.rank() == j.rows()) {
            return Err(Error::Internal(
                "F failed to preserve the finite direct sum".into(),
            ));
        }
        let cols: Vec<ExactMatrix> = items
            .iter()
            .enumerate()
            .map(|(i, c)| inj_homs_by_degree[k + 1][i].matrix().mul(c.diff(n).matrix()))
            .collect();
        let d = ExactMatrix::hstack_all(&cols).mul(&j.inverse()?);
        diffs.push(d);
    }
    let total = LeftComplex::new(functor.clone(), lo, terms, diffs)?;
    let mut injections = Vec::new();
    let mut projections = Vec::new();
    for (i, c) in items.iter().enumerate() {
        injections.push(ChainMap::new(c.clone(), total.clone(), lo, inj_mats[i].clone())?);
        projections.push(ChainMap::new(total.clone(), c.clone(), lo, proj_mats[i].clone())?);
    }
    Ok(Biproduct {
        total,
        injections,
        projections,
    })
}

/// Degreewise pullback of `phi: M -> N` and `psi: P -> N` with its two
/// projections.
pub fn pullback(phi: &ChainMap, psi: &ChainMap) -> Result<(Arc<LeftComplex>, ChainMap, ChainMap)> {
    if phi.target().as_ref() != psi.target().as_ref() {
        return Err(Error::ShapeMismatch("pullback needs a common target".into()));
    }
    let m = phi.source();
    let p = psi.source();
    let functor = m.functor().clone();
    let range = m.joint_degrees(p);
    let (lo, hi) = (*range.start(), *range.end());
    if lo > hi {
        let z = LeftComplex::zero(functor);
        return Ok((
            z.clone(),
            ChainMap::zero(z.clone(), m.clone()),
            ChainMap::zero(z, p.clone()),
        ));
    }
    let mut kers = Vec::new();
    let mut to_m = Vec::new();
    let mut to_p = Vec::new();
    for n in lo..=hi {
        let parts = [m.term(n), p.term(n)];
        let (sum, _injs, projs) = Module::direct_sum(&parts);
        let h_mat = phi
            .component(n)
            .matrix()
            .hstack(&psi.component(n).matrix().neg());
        let h = ModuleHom::new(sum.clone(), phi.target().term(n), h_mat)?;
        let (k, inc) = kernel_of_hom(&h)?;
        to_m.push(projs[0].compose(&inc));
        to_p.push(projs[1].compose(&inc));
        kers.push((k, inc));
    }
    let mut diffs = Vec::new();
    for k in 0..kers.len().saturating_sub(1) {
        let n = lo + k as i64;
        let cone_m = m.diff(n).compose(&functor.apply_hom(&to_m[k]));
        let cone_p = p.diff(n).compose(&functor.apply_hom(&to_p[k]));
        let cone = cone_m.matrix().vstack(cone_p.matrix());
        let d = solve_linear(kers[k + 1].1.matrix(), &cone).map_err(|_| {
            Error::Internal(format!("pullback differential failed to factor at degree {n}"))
        })?;
        diffs.push(d);
    }
    let terms: Vec<Arc<Module>> = kers.iter().map(|(k, _)| k.clone()).collect();
    let pb = LeftComplex::new(functor, lo, terms, diffs)?;
    let pr_m = ChainMap::new(
        pb.clone(),
        m.clone(),
        lo,
        to_m.iter().map(|h| h.matrix().clone()).collect(),
    )?;
    let pr_p = ChainMap::new(
        pb.clone(),
        p.clone(),
        lo,
        to_p.iter().map(|h| h.matrix().clone()).collect(),
    )?;
    Ok((pb, pr_m, pr_p))
}

/// Per-degree exactness witness for a candidate short exact sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SesDegree {
    pub degree: i64,
    pub injective: bool,
    pub surjective: bool,
    pub middle_exact: bool,
}

#[derive(Debug, Clone)]
pub struct SesVerdict {
    pub exact: bool,
    pub degrees: Vec<SesDegree>,
}

impl SesVerdict {
    pub fn first_failure(&self) -> Option<&SesDegree> {
        self.degrees
            .iter()
            .find(|d| !(d.injective && d.surjective && d.middle_exact))
    }
}

/// Componentwise short-exactness check of `0 -> M -> N -> P -> 0`:
/// `phi` injective, `psi` surjective and `im phi = ker psi`, degree by degree.
pub fn is_short_exact(phi: &ChainMap, psi: &ChainMap) -> SesVerdict {
    let mut degrees = Vec::new();
    let lo_range = phi.source().joint_degrees(psi.target());
    let mid = phi.target();
    let lo = *lo_range.start().min(&mid.window().map_or(0, |w| w.0));
    let hi = *lo_range.end().max(&mid.window().map_or(-1, |w| w.1));
    for n in lo..=hi {
        let f = phi.component(n);
        let g = psi.component(n);
        let injective = f.is_injective();
        let surjective = g.is_surjective();
        let composite_zero = g.compose(&f).is_zero();
        let middle_exact = composite_zero
            && f.matrix().rank() == f.target().dim() - g.matrix().rank();
        degrees.push(SesDegree {
            degree: n,
            injective,
            surjective,
            middle_exact,
        });
    }
    SesVerdict {
        exact: degrees
            .iter()
            .all(|d| d.injective && d.surjective && d.middle_exact),
        degrees,
    }
}

/// The extension of `F` to complexes: terms `F(M^n)`, differentials `F(d^n)`.
pub fn hat_f(m: &Arc<LeftComplex>) -> Result<Arc<LeftComplex>> {
    let functor = m.functor().clone();
    let Some((lo, hi)) = m.window() else {
        return Ok(LeftComplex::zero(functor));
    };
    let terms: Vec<Arc<Module>> = (lo..=hi).map(|n| m.f_term(n).module.clone()).collect();
    let diffs: Vec<ExactMatrix> = (lo..hi)
        .map(|n| functor.apply_hom(&m.diff(n)).matrix().clone())
        .collect();
    LeftComplex::new(functor, lo, terms, diffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{dual_bimodule, dual_numbers, Bimodule, Module};
    use crate::functor::RepEndofunctor;
    use crate::linalg::rint;

    fn id_functor_dual() -> Arc<RepEndofunctor> {
        RepEndofunctor::new(Bimodule::regular(dual_numbers())).unwrap()
    }

    fn da_functor_dual() -> Arc<RepEndofunctor> {
        RepEndofunctor::new(dual_bimodule(&dual_numbers())).unwrap()
    }

    #[test]
    fn zero_differentials_always_valid() {
        let f = da_functor_dual();
        let a = dual_numbers();
        let reg = Module::regular(a.clone());
        let fm = f.apply(&reg).module.clone();
        let c = LeftComplex::new(
            f.clone(),
            0,
            vec![reg.clone(), reg.clone(), reg.clone()],
            vec![
                ExactMatrix::zero(reg.dim(), fm.dim()),
                ExactMatrix::zero(reg.dim(), fm.dim()),
            ],
        )
        .unwrap();
        assert_eq!(c.window(), Some((0, 2)));
    }

    #[test]
    fn single_term_always_valid() {
        let f = id_functor_dual();
        let reg = Module::regular(dual_numbers());
        let c = LeftComplex::new(f, 5, vec![reg], vec![]).unwrap();
        assert_eq!(c.window(), Some((5, 5)));
    }

    #[test]
    fn identity_differentials_twice_is_not_a_complex() {
        // identity functor (regular bimodule over the ground field):
        // k -> k -> k with both maps 1 fails at degree 0.
        let k = crate::algebra::ground_field();
        let f = RepEndofunctor::new(Bimodule::regular(k.clone())).unwrap();
        let reg = Module::regular(k.clone());
        let fdim = f.apply(&reg).module.dim();
        let one = ExactMatrix::identity(fdim);
        let err = LeftComplex::new(
            f,
            0,
            vec![reg.clone(), reg.clone(), reg.clone()],
            vec![one.clone(), one],
        )
        .unwrap_err();
        assert!(matches!(err, Error::NotAComplex(0)));
    }

    fn mult_by_x_complex() -> Arc<LeftComplex> {
        // over the identity functor on dual numbers: A --x--> A in degrees 0,1
        let f = id_functor_dual();
        let a = dual_numbers();
        let reg = Module::regular(a.clone());
        let fa = f.apply(&reg);
        // F(A) -> A canonical followed by multiplication by x
        let x = a.left_mult_matrix(&a.basis_vector(1));
        let kappa = {
            // x_i (x) e_a -> x_i . e_a for the regular bimodule is just
            // multiplication, recovered from the projection/section pair
            let mut k = ExactMatrix::zero(2, 4);
            for i in 0..2 {
                for ai in 0..2 {
                    let prod = a.multiply(&a.basis_vector(i), &a.basis_vector(ai));
                    for (p, c) in prod.iter().enumerate() {
                        if !num::Zero::is_zero(c) {
                            k.set(p, i * 2 + ai, c.clone());
                        }
                    }
                }
            }
            k.mul(&fa.quot.section)
        };
        let d0 = x.mul(&kappa);
        LeftComplex::new(f, 0, vec![reg.clone(), reg.clone()], vec![d0]).unwrap()
    }

    #[test]
    fn kernel_and_cokernel_of_chain_maps() {
        let c = mult_by_x_complex();
        let id = ChainMap::identity(c.clone());
        let (kc, _) = kernel_complex(&id).unwrap();
        assert!(kc.is_zero());
        let (cc, _) = cokernel_complex(&id).unwrap();
        assert!(cc.is_zero());

        let z = ChainMap::zero(c.clone(), c.clone());
        let (kz, inc) = kernel_complex(&z).unwrap();
        assert_eq!(kz.as_ref(), c.as_ref());
        assert!(inc.component(0).matrix().is_identity());
        let (cz, proj) = cokernel_complex(&z).unwrap();
        assert_eq!(cz.as_ref(), c.as_ref());
        assert!(proj.component(1).matrix().is_identity());
    }

    #[test]
    fn kernel_universal_property_on_endomorphisms() {
        let c = mult_by_x_complex();
        let space = morphism_space(&c, &c);
        assert!(!space.is_empty());
        for phi in &space {
            let (kc, iota) = kernel_complex(phi).unwrap();
            assert!(phi.compose(&iota).is_zero());
            // cones: every eta with phi o eta = 0 factors uniquely
            for eta in &space {
                if !phi.compose(eta).is_zero() {
                    continue;
                }
                let mut mats = Vec::new();
                let (lo, hi) = c.window().unwrap();
                for n in lo..=hi {
                    let w = solve_linear(iota.component(n).matrix(), eta.component(n).matrix())
                        .unwrap();
                    mats.push(w);
                }
                let omega = ChainMap::new(c.clone(), kc.clone(), lo, mats).unwrap();
                assert!(iota.compose(&omega).eq_as_map(eta));
                // uniqueness: iota is degreewise mono
                assert!(iota.is_degreewise_mono());
            }
        }
    }

    #[test]
    fn biproduct_block_structure() {
        let c = mult_by_x_complex();
        let f = c.functor().clone();
        let b = biproduct(&f, &[c.clone(), c.clone()]).unwrap();
        assert_eq!(b.total.term(0).dim(), 4);
        // biproduct identities
        for i in 0..2 {
            for j in 0..2 {
                let comp = b.projections[j].compose(&b.injections[i]);
                if i == j {
                    assert!(comp.is_identity());
                } else {
                    assert!(comp.is_zero());
                }
            }
        }
        // sum of inj o proj = identity
        let sum = b.injections[0]
            .compose(&b.projections[0])
            .add(&b.injections[1].compose(&b.projections[1]));
        assert!(sum.is_identity());
        // empty and singleton cases
        let empty = biproduct(&f, &[]).unwrap();
        assert!(empty.total.is_zero());
        let single = biproduct(&f, &[c.clone()]).unwrap();
        assert_eq!(single.total.as_ref(), c.as_ref());
        assert!(single.injections[0].is_identity());
    }

    #[test]
    fn pullback_of_identity_and_zero() {
        let c = mult_by_x_complex();
        let id = ChainMap::identity(c.clone());
        let (pb, pr_m, _) = pullback(&id, &id).unwrap();
        // pullback of id along id is the diagonal, isomorphic to c through pr_m
        assert_eq!(pb.term(0).dim(), c.term(0).dim());
        assert!(pr_m.is_degreewise_epi() && pr_m.is_degreewise_mono());

        // pullback along zero from the zero complex recovers the kernel
        let z = LeftComplex::zero(c.functor().clone());
        let zmap = ChainMap::zero(z.clone(), c.clone());
        for phi in morphism_space(&c, &c) {
            let (pb, _, pr_p) = pullback(&zmap, &phi).unwrap();
            let (kc, _) = kernel_complex(&phi).unwrap();
            let (lo, hi) = c.window().unwrap();
            for n in lo..=hi {
                assert_eq!(pb.term(n).dim(), kc.term(n).dim());
            }
            let _ = pr_p;
        }
    }

    #[test]
    fn pullback_universal_property_on_random_cones() {
        let c = mult_by_x_complex();
        let space = morphism_space(&c, &c);
        let phi = &space[space.len() - 1];
        let psi = &space[0];
        let (pb, pr_m, pr_p) = pullback(phi, psi).unwrap();
        assert!(phi.compose(&pr_m).eq_as_map(&psi.compose(&pr_p)));
        // cones: pairs (f, g) with phi o f = psi o g, built from the
        // pullback's own endomorphism space and factored back uniquely
        let mut cones = 0;
        for rho in morphism_space(&pb, &pb) {
            let f = pr_m.compose(&rho);
            let g = pr_p.compose(&rho);
            assert!(phi.compose(&f).eq_as_map(&psi.compose(&g)));
            let (lo, hi) = pb.window().unwrap();
            let mut mats = Vec::new();
            for n in lo..=hi {
                // factor through the kernel inclusion into M + P
                let stacked = f.component(n).matrix().vstack(g.component(n).matrix());
                // the inclusion is recovered by stacking the two projections
                let inc = pr_m
                    .component(n)
                    .matrix()
                    .vstack(pr_p.component(n).matrix());
                let u = solve_linear(&inc, &stacked).unwrap();
                mats.push(u);
            }
            let u = ChainMap::new(pb.clone(), pb.clone(), lo, mats).unwrap();
            assert!(pr_m.compose(&u).eq_as_map(&f));
            assert!(pr_p.compose(&u).eq_as_map(&g));
            assert!(u.eq_as_map(&rho), "factorization through the pullback is unique");
            cones += 1;
            if cones >= 10 {
                break;
            }
        }
        assert!(cones >= 1);
    }

    #[test]
    fn short_exactness_verdicts() {
        let c = mult_by_x_complex();
        let f = c.functor().clone();
        let z = LeftComplex::zero(f.clone());
        // 0 -> C -> C -> 0 exact iff the identity in the middle: use the
        // split sequence C -> C + C -> C instead.
        let b = biproduct(&f, &[c.clone(), c.clone()]).unwrap();
        let v = is_short_exact(&b.injections[0], &b.projections[1]);
        assert!(v.exact);

        // 0 -> C --id--> C -> 0 -> 0
        let id = ChainMap::identity(c.clone());
        let to_zero = ChainMap::zero(c.clone(), z.clone());
        let v = is_short_exact(&id, &to_zero);
        assert!(v.exact);

        // failing case: psi not surjective
        let zero_self = ChainMap::zero(c.clone(), c.clone());
        let v = is_short_exact(&id, &zero_self);
        assert!(!v.exact);
        let w = v.first_failure().unwrap();
        assert!(!w.surjective);
    }

    #[test]
    fn hat_f_revalidates() {
        let c = mult_by_x_complex();
        let h = hat_f(&c).unwrap();
        assert_eq!(h.window(), c.window());
        // identity functor: hat_F has the same dimensions
        assert_eq!(h.term(0).dim(), c.f_term(0).module.dim());

        let f = da_functor_dual();
        let z = LeftComplex::zero(f);
        assert!(hat_f(&z).unwrap().is_zero());
        let _ = rint(0);
    }
}
