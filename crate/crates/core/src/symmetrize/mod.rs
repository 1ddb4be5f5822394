//! Symmetrization of the Hurwitz generating functions and the operator
//! calculus around the rooted tree series `w(x)`.

pub mod boxes;
pub mod ftable;
pub mod lemma31;
pub mod master;
pub mod trees;

pub use boxes::{box_n, box_phi, box_split};
pub use ftable::{f2_sum_formula, f_table, verify_ftable, FCoeffTable};
pub use lemma31::lemma31_check;
pub use master::{master_eq_check, master_eq_check_with, MasterOptions};
pub use trees::{
    f_direct, lemma32_check, leading_coeff_report, phi_series, rooted_tree_w, w_identity_check,
    y_of_x,
};
