//! Reidemeister numbers, decision procedures for the Klein bottle group and
//! `Z ⋊ Z_2`, the central product formula, bounded scans, and certificates
//! with an independent verifier.

mod abelian;
mod certificate;
mod certify;
mod klein;
mod laws;
pub mod leaf;
mod scan;
mod tower;
mod verify;

pub use abelian::{fix_finite, reid_fg_abelian, scalar, torsion_relations};
pub use certificate::{Certificate, Claim, Fact, Premise, PremiseBody, Rule};
pub use certify::{
    certify, certify_abelian, certify_dihedral, certify_free_nilpotent, certify_klein, certify_klein_zn,
    certify_tower, reid_dihedral, reid_klein, Problem, DIHEDRAL_WINDOW, KLEIN_WINDOW,
};
pub use klein::{
    analyze_family, dihedral_conjugator, dihedral_reflection_class, dihedral_twisted_conjugate,
    family_window, klein_conjugator, klein_twisted_conjugate, FamilyAnalysis, FamilyWindow, KleinFamily,
};
pub use laws::{
    fixed_element_law, layer_two_law, FixedElementCase, FixedElementReport, LayerTwoCase, LayerTwoReport,
    FIXED_ELEMENT_SEED, LAYER_TWO_SEED,
};
pub use scan::{
    q42_checkpoint, q42_standard_checkpoints, scan_g53, scan_q42, scan_q42_sampled, G53ScanReport, G53Tuple,
    Q42Checkpoint, Q42ScanReport, MAX_Q42_BOUND,
};
pub use tower::{reid_central_tower, TowerLayerReid, TowerReid};
pub use verify::{verify, verify_json};
