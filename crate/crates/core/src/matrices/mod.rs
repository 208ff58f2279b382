//! Matrices over the ring tower, quaternionic determinants through the
//! ∨-embedding, Hurwitz elementary divisors and integer lattice images.

mod hurwitz;
mod lattice_image;
mod mat;
mod zlattice;

pub use hurwitz::{
    adjoint2, content_rho, det2, det_vee, hurwitz_elementary_divisors, lemma2_checks, sqrt_det_vee, vee, vee_mat,
    ElemDivResult, ElemDivShape, Lemma2Report,
};
pub use lattice_image::{z_lattice_image, LatticeImage};
pub use mat::Mat;
pub use zlattice::ZLattice;
