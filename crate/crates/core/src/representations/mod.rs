//! Representations of integers by forms: `Γ_t(s)`, the congruence
//! `u^2 = Δ (mod 4|k|)`, its classes, bounded enumeration and oracles.

mod cache;
mod classes;
mod enumerate;
mod gamma;

pub use cache::RepCache;
pub use classes::{
    class_from_proper_rep, decompose, leftmost_positive_matrix, normalize_query, rep_classes,
    small_rep_for_class, AxisPolicy, ClassDecomposition, RepClass,
};
pub use enumerate::{
    brute_force_reps, brute_force_table, enumerate_reps_bounded, m_order, n_bound, order_key,
    solve_for_n, zero_representations, Representation, ZeroSet,
};
pub use gamma::{
    gamma, gamma_prime_power, solve_congruence, stratified_congruence_count, CongruenceSolution,
};

pub use crate::arith::divisor_count;
