use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::operator::{build_lowering, build_raising, TruncatedOperator};
use crate::{check_omega, Result, C64, I};

/// Global sign `σ` in the physical adjoint `g† = σ·i·g` of both generators.
///
/// `Minus` (`â∓† = −i â∓`) is what direct conjugation of the `√(i/2)`
/// prefactor gives and is the default; `Plus` is the opposite convention.
/// None of the algebraic identities depend on the choice.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub enum AdjointSign {
    Plus,
    #[default]
    Minus,
}

impl AdjointSign {
    pub const BOTH: [AdjointSign; 2] = [AdjointSign::Plus, AdjointSign::Minus];

    pub fn sigma(self) -> f64 {
        match self {
            AdjointSign::Plus => 1.0,
            AdjointSign::Minus => -1.0,
        }
    }

    /// The factor `σ·i` a generator picks up under the adjoint.
    pub fn generator_factor(self) -> C64 {
        I * self.sigma()
    }
}

impl fmt::Display for AdjointSign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AdjointSign::Plus => f.write_str("+1"),
            AdjointSign::Minus => f.write_str("-1"),
        }
    }
}

/// Symbolic operator built from `â₋`, `â₊`, the identity and complex scalars.
#[derive(Debug, Clone, PartialEq)]
pub enum OperatorExpression {
    GeneratorMinus,
    GeneratorPlus,
    Identity,
    Scaled(C64, Box<OperatorExpression>),
    Sum(Vec<OperatorExpression>),
    /// Ordered product; evaluation multiplies left to right, so the rightmost
    /// factor acts first on a ket.
    Product(Vec<OperatorExpression>),
}

use OperatorExpression as E;

fn re(x: f64) -> C64 {
    C64::new(x, 0.0)
}

impl OperatorExpression {
    pub fn lowering() -> Self {
        E::GeneratorMinus
    }

    pub fn raising() -> Self {
        E::GeneratorPlus
    }

    pub fn identity() -> Self {
        E::Identity
    }

    pub fn scalar(c: C64) -> Self {
        E::Scaled(c, Box::new(E::Identity))
    }

    pub fn scaled(self, c: C64) -> Self {
        E::Scaled(c, Box::new(self))
    }

    pub fn sum(terms: Vec<Self>) -> Self {
        E::Sum(terms)
    }

    pub fn product(factors: Vec<Self>) -> Self {
        E::Product(factors)
    }

    pub fn negated(self) -> Self {
        self.scaled(re(-1.0))
    }

    pub fn plus(self, rhs: Self) -> Self {
        E::Sum(vec![self, rhs])
    }

    pub fn minus(self, rhs: Self) -> Self {
        E::Sum(vec![self, rhs.negated()])
    }

    pub fn times(self, rhs: Self) -> Self {
        E::Product(vec![self, rhs])
    }

    /// `AB − BA`.
    pub fn commutator(a: Self, b: Self) -> Self {
        E::product(vec![a.clone(), b.clone()]).minus(E::product(vec![b, a]))
    }

    /// `n̂ = â₊â₋`.
    pub fn number() -> Self {
        E::raising().times(E::lowering())
    }

    /// `Ĥ = iω(n̂ + ½)`.
    pub fn hamiltonian(omega: f64) -> Result<Self> {
        check_omega(omega)?;
        Ok(E::number().plus(E::scalar(re(0.5))).scaled(I * omega))
    }

    /// `Ŝz = ½(â₊â₋ + ½)`.
    pub fn s_z() -> Self {
        E::number().plus(E::scalar(re(0.5))).scaled(re(0.5))
    }

    /// `Ŝ₊ = ½â₊²`.
    pub fn s_plus() -> Self {
        E::product(vec![E::raising(), E::raising()]).scaled(re(0.5))
    }

    /// `Ŝ₋ = ½â₋²`.
    pub fn s_minus() -> Self {
        E::product(vec![E::lowering(), E::lowering()]).scaled(re(0.5))
    }

    /// `Ŝx = ½(Ŝ₊ + Ŝ₋)`.
    pub fn s_x() -> Self {
        E::s_plus().plus(E::s_minus()).scaled(re(0.5))
    }

    /// `Ŝy = (1/2i)(Ŝ₋ − Ŝ₊)`, oriented so that `[Ŝx, Ŝy] = iŜz`.
    pub fn s_y() -> Self {
        E::s_minus().minus(E::s_plus()).scaled(1.0 / (2.0 * I))
    }

    /// `x̂ = (â₋ + â₊)/√(2i)`.
    pub fn position() -> Self {
        E::lowering().plus(E::raising()).scaled(1.0 / (2.0 * I).sqrt())
    }

    /// `p̂ = (â₋ − â₊)/√(2i)`.
    pub fn momentum() -> Self {
        E::lowering().minus(E::raising()).scaled(1.0 / (2.0 * I).sqrt())
    }

    /// Physical adjoint: reverses products, conjugates scalars and maps each
    /// generator `g` to `σ·i·g`.
    pub fn adjoint(&self, sign: AdjointSign) -> Self {
        match self {
            E::GeneratorMinus | E::GeneratorPlus => E::Scaled(sign.generator_factor(), Box::new(self.clone())),
            E::Identity => E::Identity,
            E::Scaled(c, inner) => E::Scaled(c.conj(), Box::new(inner.adjoint(sign))),
            E::Sum(terms) => E::Sum(terms.iter().map(|t| t.adjoint(sign)).collect()),
            E::Product(factors) => E::Product(factors.iter().rev().map(|f| f.adjoint(sign)).collect()),
        }
    }

    /// Matrix in the truncated ket frame.
    pub fn evaluate(&self, dim: usize) -> Result<TruncatedOperator> {
        let lowering = build_lowering(dim)?;
        let raising = build_raising(dim)?;
        self.eval_with(dim, &lowering, &raising)
    }

    fn eval_with(&self, dim: usize, lowering: &TruncatedOperator, raising: &TruncatedOperator) -> Result<TruncatedOperator> {
        Ok(match self {
            E::GeneratorMinus => lowering.clone(),
            E::GeneratorPlus => raising.clone(),
            E::Identity => TruncatedOperator::identity(dim)?,
            E::Scaled(c, inner) => inner.eval_with(dim, lowering, raising)?.scale(*c),
            E::Sum(terms) => {
                let mut acc = TruncatedOperator::zeros(dim)?;
                for t in terms {
                    acc = acc.try_add(&t.eval_with(dim, lowering, raising)?)?;
                }
                acc
            }
            E::Product(factors) => {
                let mut acc = TruncatedOperator::identity(dim)?;
                for f in factors {
                    acc = acc.try_mul(&f.eval_with(dim, lowering, raising)?)?;
                }
                acc
            }
        })
    }

    /// Highest level above the starting one that any monomial visits while
    /// acting on a ket. Column `n` of the truncated matrix is exact whenever
    /// `n + excursion ≤ dim − 1`.
    pub fn excursion(&self) -> usize {
        self.signatures().into_iter().map(|(_, e)| e).max().unwrap_or(0) as usize
    }

    /// Size of the leading block on which the truncated matrix equals the
    /// untruncated operator. `None` if no column is exact.
    pub fn exact_block(&self, dim: usize) -> Option<usize> {
        dim.checked_sub(self.excursion()).filter(|&b| b > 0)
    }

    // (net level change, max excursion) for every monomial shape
    fn signatures(&self) -> BTreeSet<(i64, i64)> {
        match self {
            E::GeneratorMinus => [(-1, 0)].into(),
            E::GeneratorPlus => [(1, 1)].into(),
            E::Identity => [(0, 0)].into(),
            E::Scaled(_, inner) => inner.signatures(),
            E::Sum(terms) => terms.iter().flat_map(|t| t.signatures()).collect(),
            E::Product(factors) => {
                let mut acc: BTreeSet<(i64, i64)> = [(0, 0)].into();
                for f in factors.iter().rev() {
                    let child = f.signatures();
                    acc = acc
                        .iter()
                        .flat_map(|&(net, exc)| child.iter().map(move |&(cn, ce)| (net + cn, exc.max(net + ce))))
                        .collect();
                }
                acc
            }
        }
    }
}

impl fmt::Display for OperatorExpression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            E::GeneratorMinus => f.write_str("a-"),
            E::GeneratorPlus => f.write_str("a+"),
            E::Identity => f.write_str("I"),
            E::Scaled(c, inner) => write!(f, "({}{:+}i)*{}", c.re, c.im, inner),
            E::Sum(terms) => {
                f.write_str("(")?;
                for (k, t) in terms.iter().enumerate() {
                    if k > 0 {
                        f.write_str(" + ")?;
                    }
                    write!(f, "{t}")?;
                }
                f.write_str(")")
            }
            E::Product(factors) => {
                if factors.is_empty() {
                    return f.write_str("I");
                }
                for (k, t) in factors.iter().enumerate() {
                    if k > 0 {
                        f.write_str("*")?;
                    }
                    write!(f, "{t}")?;
                }
                Ok(())
            }
        }
    }
}

/// Residual of `lhs − rhs` on the leading block where both are exact.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IdentityResidual {
    pub residual: f64,
    pub block: usize,
    pub dim: usize,
}

pub fn identity_residual(lhs: &OperatorExpression, rhs: &OperatorExpression, dim: usize) -> Result<IdentityResidual> {
    let excursion = lhs.excursion().max(rhs.excursion());
    let block = dim.checked_sub(excursion).filter(|&b| b > 0).ok_or(crate::Error::InvalidDimension {
        dim,
        min: excursion + 1,
    })?;
    let residual = lhs.evaluate(dim)?.max_abs_diff_on_block(&rhs.evaluate(dim)?, block)?;
    Ok(IdentityResidual { residual, block, dim })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const TOL: f64 = 1e-12;

    fn check(lhs: &E, rhs: &E, dim: usize) -> IdentityResidual {
        identity_residual(lhs, rhs, dim).unwrap()
    }

    #[test]
    fn adjoint_of_number_is_minus_number_plus_one() {
        let target = E::number().plus(E::identity()).negated();
        for sign in AdjointSign::BOTH {
            let r = check(&E::number().adjoint(sign), &target, 10);
            assert!(r.residual <= TOL, "{sign}: {r:?}");
            assert_eq!(r.block, 9);
        }
    }

    #[test]
    fn hamiltonian_is_self_adjoint() {
        for sign in AdjointSign::BOTH {
            let h = E::hamiltonian(1.7).unwrap();
            let r = check(&h.adjoint(sign), &h, 12);
            assert!(r.residual <= TOL);
        }
    }

    #[test]
    fn adjoint_involution_on_generators() {
        for sign in AdjointSign::BOTH {
            for g in [E::lowering(), E::raising()] {
                let twice = g.adjoint(sign).adjoint(sign);
                assert_eq!(twice.evaluate(5).unwrap(), g.evaluate(5).unwrap());
            }
        }
    }

    #[test]
    fn single_generator_adjoint_factor() {
        let m = E::lowering().adjoint(AdjointSign::Minus).evaluate(4).unwrap();
        let want = crate::fock::build_lowering(4).unwrap().scale(-I);
        assert_eq!(m, want);
        let m = E::raising().adjoint(AdjointSign::Plus).evaluate(4).unwrap();
        assert_eq!(m, crate::fock::build_raising(4).unwrap().scale(I));
    }

    #[test]
    fn su11_adjoint_table() {
        for sign in AdjointSign::BOTH {
            for (name, op, hermitian) in [
                ("Sz", E::s_z(), false),
                ("S+", E::s_plus(), false),
                ("S-", E::s_minus(), false),
                ("Sx", E::s_x(), false),
                ("Sy", E::s_y(), true),
            ] {
                let target = if hermitian { op.clone() } else { op.clone().negated() };
                let r = check(&op.adjoint(sign), &target, 12);
                assert!(r.residual <= TOL, "{name} under {sign}: {r:?}");
            }
        }
    }

    #[test]
    fn excursion_of_basic_shapes() {
        assert_eq!(E::number().excursion(), 0);
        assert_eq!(E::s_plus().excursion(), 2);
        assert_eq!(E::s_minus().excursion(), 0);
        assert_eq!(E::commutator(E::lowering(), E::raising()).excursion(), 1);
        assert_eq!(E::commutator(E::s_plus(), E::s_minus()).excursion(), 2);
        assert_eq!(E::hamiltonian(1.0).unwrap().exact_block(8), Some(8));
        assert_eq!(E::s_plus().exact_block(2), None);
    }

    #[test]
    fn empty_product_and_sum() {
        assert_eq!(E::product(vec![]).evaluate(3).unwrap(), TruncatedOperator::identity(3).unwrap());
        assert_eq!(E::sum(vec![]).evaluate(3).unwrap(), TruncatedOperator::zeros(3).unwrap());
    }

    #[test]
    fn products_evaluate_left_to_right() {
        let ab = E::product(vec![E::lowering(), E::raising()]).evaluate(6).unwrap();
        let expected = &crate::fock::build_lowering(6).unwrap() * &crate::fock::build_raising(6).unwrap();
        assert_eq!(ab, expected);
    }

    fn arb_expr() -> impl Strategy<Value = E> {
        let leaf = prop_oneof![Just(E::lowering()), Just(E::raising()), Just(E::identity())];
        leaf.prop_recursive(4, 24, 3, |inner| {
            prop_oneof![
                ((-2.0..2.0, -2.0..2.0), inner.clone()).prop_map(|((a, b), e)| e.scaled(C64::new(a, b))),
                prop::collection::vec(inner.clone(), 1..3).prop_map(E::Sum),
                prop::collection::vec(inner, 1..3).prop_map(E::Product),
            ]
        })
    }

    proptest! {
        #[test]
        fn adjoint_is_an_involution(e in arb_expr(), plus in any::<bool>()) {
            let sign = if plus { AdjointSign::Plus } else { AdjointSign::Minus };
            let dim = 8;
            let back = e.adjoint(sign).adjoint(sign);
            let diff = back.evaluate(dim).unwrap().max_abs_diff_on_block(&e.evaluate(dim).unwrap(), dim).unwrap();
            let scale = 1.0 + e.evaluate(dim).unwrap().max_abs();
            prop_assert!(diff <= 1e-12 * scale);
        }

        #[test]
        fn adjoint_reverses_products(a in arb_expr(), b in arb_expr()) {
            let sign = AdjointSign::Minus;
            let lhs = a.clone().times(b.clone()).adjoint(sign);
            let rhs = b.adjoint(sign).times(a.adjoint(sign));
            prop_assert_eq!(lhs.evaluate(6).unwrap(), rhs.evaluate(6).unwrap());
        }

        #[test]
        fn truncated_columns_within_block_are_exact(e in arb_expr()) {
            // a larger truncation must agree with a smaller one on the exact block
            let small = 7;
            if let Some(block) = e.exact_block(small) {
                let a = e.evaluate(small).unwrap();
                let b = e.evaluate(small + 6).unwrap();
                let mut worst = 0.0_f64;
                for r in 0..block {
                    for c in 0..block {
                        worst = worst.max((a.get(r, c) - b.get(r, c)).norm());
                    }
                }
                let scale = 1.0 + b.max_abs();
                prop_assert!(worst <= 1e-12 * scale, "worst {}", worst);
            }
        }
    }
}
