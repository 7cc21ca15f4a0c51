//! Representable endofunctors `F = B (x)_A -`, their right adjoints
//! `G = Hom_A(B, -)`, and the unit/counit machinery connecting them.
//!
//! Tensor application materializes `B (x)_A M` as an explicit quotient of the
//! `dim B * dim M` ambient space by the middle-action relations
//! `(x.a)(x)m - x(x)(a.m)`, with the basis `x_i (x) m_j` ordered `i`-major.
//! Hom application materializes `Hom_A(B, N)` on the deterministic
//! intertwiner basis. Both applications are memoized per module so that
//! iterated applications (`F(F(M))` and friends) reuse identical bases;
//! without that, the validation identities downstream would not even be
//! well-posed as matrix equations. The memo table is filled idempotently:
//! racing fills compute the same value.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num::Zero;

use crate::algebra::{intertwiner_basis, Bimodule, Module, ModuleHom};
use crate::error::{Error, Result};
use crate::linalg::{quotient_space, solve_linear, ExactMatrix, QuotientData};

/// Result of applying a tensor functor to a module: the quotient module and
/// the presentation of the tensor space it was carved from.
#[derive(Clone, Debug)]
pub struct TensorApp {
    pub module: Arc<Module>,
    pub quot: QuotientData,
}

/// `B (x)_A -` for a fixed bimodule `B`.
pub struct RepEndofunctor {
    bimodule: Arc<Bimodule>,
    cache: Mutex<HashMap<Module, Arc<TensorApp>>>,
}

impl std::fmt::Debug for RepEndofunctor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "RepEndofunctor(dim B = {})", self.bimodule.dim())
    }
}

impl RepEndofunctor {
    /// Wraps a bimodule as a tensor endofunctor, verifying the canonical
    /// isomorphism `B (x)_A A = B` on construction.
    pub fn new(bimodule: Arc<Bimodule>) -> Result<Arc<Self>> {
        let f = Arc::new(Self {
            bimodule,
            cache: Mutex::new(HashMap::new()),
        });
        let a = f.bimodule.algebra().clone();
        let regular = Module::regular(a.clone());
        let fa = f.apply(&regular);
        // canonical map x (x) a -> x.a
        let db = f.bimodule.dim();
        let mut kappa = ExactMatrix::zero(db, db * a.dim());
        for i in 0..db {
            for ai in 0..a.dim() {
                for p in 0..db {
                    kappa.set(p, i * a.dim() + ai, f.bimodule.right(ai).at(p, i).clone());
                }
            }
        }
        let on_quot = kappa.mul(&fa.quot.section);
        if !(kappa.mul(&fa.quot.relation_basis).is_zero()
            && on_quot.rows() == on_quot.cols()
            && on_quot.rank() == db)
        {
            return Err(Error::Internal(
                "canonical isomorphism B (x) A = B failed to materialize".into(),
            ));
        }
        Ok(f)
    }

    pub fn bimodule(&self) -> &Arc<Bimodule> {
        &self.bimodule
    }

    /// `B (x)_A M` with its quotient presentation, memoized per module.
    pub fn apply(&self, m: &Arc<Module>) -> Arc<TensorApp> {
        if let Some(hit) = self.cache.lock().unwrap().get(m.as_ref()) {
            return hit.clone();
        }
        let computed = Arc::new(self.compute(m));
        let mut table = self.cache.lock().unwrap();
        table
            .entry(m.as_ref().clone())
            .or_insert(computed)
            .clone()
    }

    fn compute(&self, m: &Arc<Module>) -> TensorApp {
        let b = &self.bimodule;
        let a = b.algebra();
        let (db, dm, da) = (b.dim(), m.dim(), a.dim());
        let ambient = db * dm;
        // relations (x_i . e_a) (x) m_j - x_i (x) (e_a . m_j)
        let mut rel = ExactMatrix::zero(ambient, db * da * dm);
        let mut col = 0;
        for i in 0..db {
            for ai in 0..da {
                for j in 0..dm {
                    for p in 0..db {
                        let c = b.right(ai).at(p, i);
                        if !c.is_zero() {
                            rel.set(p * dm + j, col, c.clone());
                        }
                    }
                    for q in 0..dm {
                        let c = m.action(ai).at(q, j);
                        if !c.is_zero() {
                            let cur = rel.at(i * dm + q, col) - c;
                            rel.set(i * dm + q, col, cur);
                        }
                    }
                    col += 1;
                }
            }
        }
        let quot = quotient_space(ambient, &rel).expect("relation shape is consistent");
        let idm = ExactMatrix::identity(dm);
        let action: Vec<ExactMatrix> = (0..da)
            .map(|c| {
                quot.projection
                    .mul(&b.left(c).kron(&idm))
                    .mul(&quot.section)
            })
            .collect();
        let module = Module::new(a.clone(), quot.quotient_dim, action)
            .expect("induced left action on the tensor quotient is a module");
        TensorApp { module, quot }
    }

    /// `F(h)` for `h: M -> N`, the map `1 (x) h` descended to the quotients.
    pub fn apply_hom(&self, h: &ModuleHom) -> ModuleHom {
        let fm = self.apply(h.source());
        let fn_ = self.apply(h.target());
        let idb = ExactMatrix::identity(self.bimodule.dim());
        let matrix = fn_
            .quot
            .projection
            .mul(&idb.kron(h.matrix()))
            .mul(&fm.quot.section);
        ModuleHom::new(fm.module.clone(), fn_.module.clone(), matrix)
            .expect("1 (x) h descends to a module homomorphism")
    }
}

/// Result of applying a hom functor: the module `Hom_A(B, N)` together with
/// the intertwiner basis realizing its elements as `dim N x dim B` matrices.
#[derive(Clone, Debug)]
pub struct HomApp {
    pub module: Arc<Module>,
    pub basis: Vec<ExactMatrix>,
    /// `dim N * dim B`, the length of a vectorized intertwiner.
    ambient_rows: usize,
}

impl HomApp {
    /// Vectorized basis matrix used to expand intertwiners in this basis.
    pub fn basis_matrix(&self) -> ExactMatrix {
        let cols: Vec<ExactMatrix> = self.basis.iter().map(ExactMatrix::vectorize).collect();
        if cols.is_empty() {
            ExactMatrix::zero(self.ambient_rows, 0)
        } else {
            ExactMatrix::hstack_all(&cols)
        }
    }
}

/// `Hom_A(B, -)` for a fixed bimodule `B`; right adjoint of the tensor
/// functor on the same bimodule.
pub struct HomEndofunctor {
    bimodule: Arc<Bimodule>,
    cache: Mutex<HashMap<Module, Arc<HomApp>>>,
}

impl std::fmt::Debug for HomEndofunctor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "HomEndofunctor(dim B = {})", self.bimodule.dim())
    }
}

impl HomEndofunctor {
    pub fn new(bimodule: Arc<Bimodule>) -> Arc<Self> {
        Arc::new(Self {
            bimodule,
            cache: Mutex::new(HashMap::new()),
        })
    }

    pub fn bimodule(&self) -> &Arc<Bimodule> {
        &self.bimodule
    }

    pub fn apply(&self, n: &Arc<Module>) -> Arc<HomApp> {
        if let Some(hit) = self.cache.lock().unwrap().get(n.as_ref()) {
            return hit.clone();
        }
        let computed = Arc::new(self.compute(n));
        let mut table = self.cache.lock().unwrap();
        table
            .entry(n.as_ref().clone())
            .or_insert(computed)
            .clone()
    }

    fn compute(&self, n: &Arc<Module>) -> HomApp {
        let b = &self.bimodule;
        let a = b.algebra();
        let basis = intertwiner_basis(b.dim(), b.left_actions(), n.dim(), n.actions());
        let dim = basis.len();
        // (e_c . phi)(x) = phi(x . e_c): as matrices, phi composed with the
        // right action of e_c on B.
        let cols: Vec<ExactMatrix> = basis.iter().map(ExactMatrix::vectorize).collect();
        let basis_mat = if cols.is_empty() {
            ExactMatrix::zero(n.dim() * b.dim(), 0)
        } else {
            ExactMatrix::hstack_all(&cols)
        };
        let action: Vec<ExactMatrix> = (0..a.dim())
            .map(|c| {
                let mut act = ExactMatrix::zero(dim, dim);
                for (s, phi) in basis.iter().enumerate() {
                    let moved = phi.mul(b.right(c));
                    let coeffs = solve_linear(&basis_mat, &moved.vectorize())
                        .expect("a . phi stays an intertwiner");
                    for t in 0..dim {
                        act.set(t, s, coeffs.at(t, 0).clone());
                    }
                }
                act
            })
            .collect();
        let module = Module::new(a.clone(), dim, action)
            .expect("the action (a.phi)(x) = phi(x.a) is a module structure");
        HomApp {
            module,
            basis,
            ambient_rows: n.dim() * b.dim(),
        }
    }

    /// `G(h)` for `h: N -> N'`: post-composition on intertwiners.
    pub fn apply_hom(&self, h: &ModuleHom) -> ModuleHom {
        let gn = self.apply(h.source());
        let gn2 = self.apply(h.target());
        let mut matrix = ExactMatrix::zero(gn2.basis.len(), gn.basis.len());
        let target_mat = gn2.basis_matrix();
        for (s, phi) in gn.basis.iter().enumerate() {
            let moved = h.matrix().mul(phi);
            let coeffs =
                solve_linear(&target_mat, &moved.vectorize()).expect("h o phi is an intertwiner");
            for t in 0..gn2.basis.len() {
                matrix.set(t, s, coeffs.at(t, 0).clone());
            }
        }
        ModuleHom::new(gn.module.clone(), gn2.module.clone(), matrix)
            .expect("post-composition is a module homomorphism")
    }
}

/// An adjoint pair `(F, G)` sharing one bimodule.
pub struct AdjointPair {
    pub tensor: Arc<RepEndofunctor>,
    pub hom: Arc<HomEndofunctor>,
}

impl AdjointPair {
    pub fn new(tensor: Arc<RepEndofunctor>, hom: Arc<HomEndofunctor>) -> Result<Self> {
        if tensor.bimodule() != hom.bimodule() {
            return Err(Error::ShapeMismatch(
                "adjoint pair requires the same bimodule on both sides".into(),
            ));
        }
        Ok(Self { tensor, hom })
    }

    pub fn for_bimodule(b: Arc<Bimodule>) -> Result<Self> {
        let tensor = RepEndofunctor::new(b.clone())?;
        let hom = HomEndofunctor::new(b);
        Ok(Self { tensor, hom })
    }

    /// The adjunction bijection `Hom(F(M), N) -> Hom(M, G(N))`. Input and
    /// output are raw matrices against the materialized bases.
    pub fn curry(&self, m: &Arc<Module>, n: &Arc<Module>, h: &ExactMatrix) -> ExactMatrix {
        let fm = self.tensor.apply(m);
        let gn = self.hom.apply(n);
        let db = self.tensor.bimodule().dim();
        let dm = m.dim();
        assert_eq!(
            (h.rows(), h.cols()),
            (n.dim(), fm.module.dim()),
            "curry: h must map F(M) to N"
        );
        let basis_mat = gn.basis_matrix();
        let mut out = ExactMatrix::zero(gn.basis.len(), dm);
        for j in 0..dm {
            // the intertwiner x -> h(class(x (x) m_j))
            let mut phi = ExactMatrix::zero(n.dim(), db);
            for i in 0..db {
                let v = h.mul(&fm.quot.projection.column(i * dm + j));
                for r in 0..n.dim() {
                    phi.set(r, i, v.at(r, 0).clone());
                }
            }
            let coeffs = expand_over_basis_mat(&basis_mat, &phi)
                .expect("curried map lies in Hom_A(B, N)");
            for t in 0..gn.basis.len() {
                out.set(t, j, coeffs.at(t, 0).clone());
            }
        }
        out
    }

    /// The inverse bijection `Hom(M, G(N)) -> Hom(F(M), N)`.
    pub fn uncurry(&self, m: &Arc<Module>, n: &Arc<Module>, k: &ExactMatrix) -> ExactMatrix {
        let fm = self.tensor.apply(m);
        let gn = self.hom.apply(n);
        let db = self.tensor.bimodule().dim();
        let dm = m.dim();
        assert_eq!(
            (k.rows(), k.cols()),
            (gn.module.dim(), dm),
            "uncurry: k must map M to G(N)"
        );
        // ambient evaluation x_i (x) m_j -> (sum_s k[s][j] phi_s)(x_i)
        let mut ambient = ExactMatrix::zero(n.dim(), db * dm);
        for j in 0..dm {
            for (s, phi) in gn.basis.iter().enumerate() {
                let c = k.at(s, j);
                if c.is_zero() {
                    continue;
                }
                for i in 0..db {
                    for r in 0..n.dim() {
                        let cur = ambient.at(r, i * dm + j) + c * phi.at(r, i);
                        ambient.set(r, i * dm + j, cur);
                    }
                }
            }
        }
        ambient.mul(&fm.quot.section)
    }

    /// Unit `eta_M: M -> G(F(M))`, `m -> (x -> x (x) m)`.
    pub fn unit(&self, m: &Arc<Module>) -> ModuleHom {
        let fm = self.tensor.apply(m);
        let gfm = self.hom.apply(&fm.module);
        let matrix = self.curry(m, &fm.module, &ExactMatrix::identity(fm.module.dim()));
        ModuleHom::new(m.clone(), gfm.module.clone(), matrix)
            .expect("the unit is a module homomorphism")
    }

    /// Counit `eps_N: F(G(N)) -> N`, `x (x) phi -> phi(x)`.
    pub fn counit(&self, n: &Arc<Module>) -> ModuleHom {
        let gn = self.hom.apply(n);
        let fgn = self.tensor.apply(&gn.module);
        let matrix = self.uncurry(&gn.module, n, &ExactMatrix::identity(gn.module.dim()));
        ModuleHom::new(fgn.module.clone(), n.clone(), matrix)
            .expect("the counit is a module homomorphism")
    }
}

fn expand_over_basis_mat(basis_mat: &ExactMatrix, x: &ExactMatrix) -> Result<ExactMatrix> {
    solve_linear(basis_mat, &x.vectorize())
}

/// A natural transformation between tensor functors, required to come from a
/// homomorphism of bimodules (the only natural transformations representable
/// in finite data).
#[derive(Clone, Debug)]
pub struct NatTrans {
    source: Arc<RepEndofunctor>,
    target: Arc<RepEndofunctor>,
    matrix: ExactMatrix,
}

impl NatTrans {
    pub fn new(
        source: Arc<RepEndofunctor>,
        target: Arc<RepEndofunctor>,
        matrix: ExactMatrix,
    ) -> Result<Self> {
        let b = source.bimodule();
        let b2 = target.bimodule();
        if b.algebra() != b2.algebra() {
            return Err(Error::ShapeMismatch("bimodules over different algebras".into()));
        }
        if matrix.rows() != b2.dim() || matrix.cols() != b.dim() {
            return Err(Error::ShapeMismatch(format!(
                "bimodule hom must be {}x{}",
                b2.dim(),
                b.dim()
            )));
        }
        for i in 0..b.algebra().dim() {
            if matrix.mul(b.left(i)) != b2.left(i).mul(&matrix) {
                return Err(Error::NotIntertwiner(i));
            }
            if matrix.mul(b.right(i)) != b2.right(i).mul(&matrix) {
                return Err(Error::NotIntertwiner(i));
            }
        }
        Ok(Self { source, target, matrix })
    }

    pub fn identity(f: Arc<RepEndofunctor>) -> Self {
        let d = f.bimodule().dim();
        Self {
            source: f.clone(),
            target: f,
            matrix: ExactMatrix::identity(d),
        }
    }

    pub fn zero(source: Arc<RepEndofunctor>, target: Arc<RepEndofunctor>) -> Self {
        let matrix = ExactMatrix::zero(target.bimodule().dim(), source.bimodule().dim());
        Self { source, target, matrix }
    }

    pub fn source(&self) -> &Arc<RepEndofunctor> {
        &self.source
    }

    pub fn target(&self) -> &Arc<RepEndofunctor> {
        &self.target
    }

    pub fn matrix(&self) -> &ExactMatrix {
        &self.matrix
    }

    /// Vertical composition `self o other`.
    pub fn compose(&self, other: &NatTrans) -> Result<NatTrans> {
        if self.source.bimodule() != other.target.bimodule() {
            return Err(Error::ShapeMismatch("non-composable transformations".into()));
        }
        NatTrans::new(
            other.source.clone(),
            self.target.clone(),
            self.matrix.mul(&other.matrix),
        )
    }

    /// Component at `M`: `beta (x) 1_M` descended to the tensor quotients.
    pub fn component(&self, m: &Arc<Module>) -> ModuleHom {
        let fm = self.source.apply(m);
        let f2m = self.target.apply(m);
        let idm = ExactMatrix::identity(m.dim());
        let matrix = f2m
            .quot
            .projection
            .mul(&self.matrix.kron(&idm))
            .mul(&fm.quot.section);
        ModuleHom::new(fm.module.clone(), f2m.module.clone(), matrix)
            .expect("bimodule homs descend to natural components")
    }
}

/// Basis of all bimodule homomorphisms `B -> B'` (maps intertwining both
/// actions), in deterministic order.
pub fn bimodule_hom_basis(b: &Arc<Bimodule>, b2: &Arc<Bimodule>) -> Vec<ExactMatrix> {
    let mut acts_src: Vec<ExactMatrix> = b.left_actions().to_vec();
    acts_src.extend(b.right_actions().iter().cloned());
    let mut acts_tgt: Vec<ExactMatrix> = b2.left_actions().to_vec();
    acts_tgt.extend(b2.right_actions().iter().cloned());
    intertwiner_basis(b.dim(), &acts_src, b2.dim(), &acts_tgt)
}

/// The composite `F1 o F2` of two tensor functors, represented by the tensor
/// product bimodule `B1 (x)_A B2`, together with everything needed to build
/// the pointwise associator isomorphisms.
pub struct ComposedRep {
    pub outer: Arc<RepEndofunctor>,
    pub inner: Arc<RepEndofunctor>,
    pub composed: Arc<RepEndofunctor>,
    /// Presentation of `B1 (x)_A B2` inside the `dim B1 * dim B2` space.
    pub quot: QuotientData,
}

/// Builds `B1 (x)_A B2` as a bimodule and wraps it as a tensor functor.
pub fn compose_representables(
    outer: &Arc<RepEndofunctor>,
    inner: &Arc<RepEndofunctor>,
) -> Result<ComposedRep> {
    let b1 = outer.bimodule();
    let b2 = inner.bimodule();
    if b1.algebra() != b2.algebra() {
        return Err(Error::ShapeMismatch("bimodules over different algebras".into()));
    }
    let a = b1.algebra();
    let (d1, d2, da) = (b1.dim(), b2.dim(), a.dim());
    let ambient = d1 * d2;
    let mut rel = ExactMatrix::zero(ambient, d1 * da * d2);
    let mut col = 0;
    for i in 0..d1 {
        for ai in 0..da {
            for s in 0..d2 {
                for p in 0..d1 {
                    let c = b1.right(ai).at(p, i);
                    if !c.is_zero() {
                        rel.set(p * d2 + s, col, c.clone());
                    }
                }
                for q in 0..d2 {
                    let c = b2.left(ai).at(q, s);
                    if !c.is_zero() {
                        let cur = rel.at(i * d2 + q, col) - c;
                        rel.set(i * d2 + q, col, cur);
                    }
                }
                col += 1;
            }
        }
    }
    let quot = quotient_space(ambient, &rel)?;
    let id2 = ExactMatrix::identity(d2);
    let id1 = ExactMatrix::identity(d1);
    let left: Vec<ExactMatrix> = (0..da)
        .map(|c| quot.projection.mul(&b1.left(c).kron(&id2)).mul(&quot.section))
        .collect();
    let right: Vec<ExactMatrix> = (0..da)
        .map(|c| quot.projection.mul(&id1.kron(b2.right(c))).mul(&quot.section))
        .collect();
    let bim = Bimodule::new(a.clone(), quot.quotient_dim, left, right)?;
    let composed = RepEndofunctor::new(bim)?;
    Ok(ComposedRep {
        outer: outer.clone(),
        inner: inner.clone(),
        composed,
        quot,
    })
}

impl ComposedRep {
    /// `F1(F2(M))`, applying the factors in sequence.
    pub fn nested_apply(&self, m: &Arc<Module>) -> Arc<Module> {
        let inner = self.inner.apply(m);
        self.outer.apply(&inner.module).module.clone()
    }

    /// `F1(F2(h))`.
    pub fn nested_apply_hom(&self, h: &ModuleHom) -> ModuleHom {
        self.outer.apply_hom(&self.inner.apply_hom(h))
    }

    /// The invertible comparison `(B1 (x) B2) (x) M -> B1 (x) (B2 (x) M)`,
    /// natural in `M`.
    pub fn associator(&self, m: &Arc<Module>) -> Result<ModuleHom> {
        let b1 = self.outer.bimodule();
        let b2 = self.inner.bimodule();
        let (d1, d2, dm) = (b1.dim(), b2.dim(), m.dim());
        let comp_app = self.composed.apply(m);
        let inner_app = self.inner.apply(m);
        let outer_app = self.outer.apply(&inner_app.module);
        // chi: triple ambient (i, s, j) -> B1 (x) (B2 (x) M)
        let inner_dim = inner_app.module.dim();
        let mut chi = ExactMatrix::zero(outer_app.module.dim(), d1 * d2 * dm);
        for i in 0..d1 {
            for s in 0..d2 {
                for j in 0..dm {
                    let va = inner_app.quot.projection.column(s * dm + j);
                    let mut amb = ExactMatrix::zero(d1 * inner_dim, 1);
                    for t in 0..inner_dim {
                        amb.set(i * inner_dim + t, 0, va.at(t, 0).clone());
                    }
                    let out = outer_app.quot.projection.mul(&amb);
                    for r in 0..outer_app.module.dim() {
                        chi.set(r, (i * d2 + s) * dm + j, out.at(r, 0).clone());
                    }
                }
            }
        }
        let idm = ExactMatrix::identity(dm);
        let matrix = chi
            .mul(&self.quot.section.kron(&idm))
            .mul(&comp_app.quot.section);
        let hom = ModuleHom::new(comp_app.module.clone(), outer_app.module.clone(), matrix)?;
        if !hom.is_invertible() {
            return Err(Error::Internal("associator failed to be invertible".into()));
        }
        Ok(hom)
    }
}
