//! Finite-dimensional algebras by structure constants, their modules and
//! homomorphism spaces, duality, and the projective/injective constructors.

use fcochain::algebra::{
    dual_bimodule, dual_numbers, hom_space, injective_at, is_isomorphic, kernel_of_hom,
    path_algebra_an, projective_at, Module, ModuleHom,
};

fn main() {
    // The path algebra of the quiver 0 -> 1: basis {e0, e1, arrow}.
    let a2 = path_algebra_an(2);
    println!("A2 path algebra has dimension {}", a2.dim());

    // Projective and injective modules at a vertex idempotent.
    let e0 = a2.basis_vector(0);
    let p0 = projective_at(&a2, &e0).unwrap();
    let i0 = injective_at(&a2, &e0).unwrap();
    println!("P_0 = A e_0 has dimension {}; I_0 = D(e_0 A) has dimension {}", p0.dim(), i0.dim());
    assert_eq!((p0.dim(), i0.dim()), (2, 1));

    // Hom spaces are computed as intertwiner spaces; the regular module is
    // free, so Hom(A, M) always has dimension dim M.
    let reg = Module::regular(a2.clone());
    assert_eq!(hom_space(&reg, &p0).len(), p0.dim());

    // Over the dual numbers k[x]/(x^2), multiplication by x has a
    // one-dimensional kernel inside the regular module.
    let dn = dual_numbers();
    let reg_dn = Module::regular(dn.clone());
    let x = dn.left_mult_matrix(&dn.basis_vector(1));
    let mult_x = ModuleHom::new(reg_dn.clone(), reg_dn.clone(), x).unwrap();
    let (ker, inclusion) = kernel_of_hom(&mult_x).unwrap();
    println!("kernel of multiplication by x has dimension {}", ker.dim());
    assert_eq!(ker.dim(), 1);
    assert!(mult_x.compose(&inclusion).is_zero());

    // The dual numbers are self-injective: D(A) is isomorphic to A as a
    // left module, and the search produces an explicit certificate.
    let da = dual_bimodule(&dn).as_left_module();
    let cert = is_isomorphic(&da, &reg_dn).unwrap();
    println!("self-injectivity certificate:\n{}", cert.matrix());
    assert!(cert.is_invertible());
}
