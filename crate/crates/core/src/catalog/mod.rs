//! Concrete groups: the Klein bottle group, the infinite dihedral group,
//! `π_1(K) × Z^n`, central towers of small class and finite polycyclic
//! groups for brute-force checks.

mod dihedral;
mod finite_pc;
mod klein;
mod klein_zn;
mod q42;
mod tower;

pub use dihedral::{DihedralAut, DihedralElement};
pub use finite_pc::{FinitePcGroup, PcRelation, PcVector, MAX_ELEMENTS, MAX_TABLE};
pub use klein::{KleinAut, KleinCase, KleinElement};
pub use klein_zn::{KleinZnElement, KleinZnEndo};
pub use q42::{minor, q42_induced_n, q42_lifts, Q42_KILLED, Q42_SURVIVING};
pub(crate) use q42::q42_induced_n_unchecked;
pub use tower::{
    build_free_abelian, build_g53, build_heisenberg_mod_tower, build_n_r, build_q42, AbelianLayer,
    BracketRule, CentralTower, GenRef, TowerEndo, MAX_TOWER_CLASS,
};
