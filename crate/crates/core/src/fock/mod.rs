//! Imaginary-frequency boson algebra in a truncated biorthogonal Fock
//! representation.
//!
//! Ket-frame matrix entries are pairings `ₗ⟨m|Ô|n⟩ᵣ`. The lowering operator
//! `â₋` has `√n` at `(n−1, n)` and `â₊` has `√n` at `(n, n−1)`; `n̂ = â₊â₋`
//! and `Ĥ = iω(n̂ + ½)` are diagonal with purely imaginary energies.
//!
//! The physical adjoint is not the matrix conjugate transpose in this frame.
//! It is applied structurally on [`OperatorExpression`] with `â∓† = σ·i·â∓`.

mod dual;
mod expr;
mod operator;
mod parse;
mod su11;

pub use dual::{
    bra_frame_action, bra_ladder_chain_residual, bra_lowering, bra_raising, dual_pairing, ket_ladder_chain_residual, DualVector,
    BRA_LADDER_PHASE,
};
pub use expr::{identity_residual, AdjointSign, IdentityResidual, OperatorExpression};
pub use operator::{build_hamiltonian, build_lowering, build_number, build_raising, commutator, fock_state, TruncatedOperator};
pub use parse::{parse_equation, Equation};
pub use su11::{build_su11, Su11};
