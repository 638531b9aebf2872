//! Translation, dilation, differentiation and unit-step finite differences
//! on polynomials, plus polynomial operators `P(∂)` and `P(Δ)`.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{check_dim, Result};
use crate::multiindex::MultiIndex;
use crate::polynomial::{from_biguint, pow, Point, Polynomial, Rational};

/// How the variables of an operator polynomial `P` are interpreted.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum OperatorMode {
    /// `t_k ↦ ∂_k`
    Derivative,
    /// `t_k ↦ Δ_k`
    Difference,
}

fn binomial(n: u32, k: u32) -> BigUint {
    (0..k).fold(BigUint::one(), |acc, i| {
        acc * BigUint::from(n - i) / BigUint::from(i + 1)
    })
}

fn falling_factorial(n: u32, k: u32) -> BigUint {
    (0..k).fold(BigUint::one(), |acc, i| acc * BigUint::from(n - i))
}

/// `τ_y p (x) = p(x + y)`, expanded term by term with the binomial theorem.
pub fn translate(p: &Polynomial, y: &Point) -> Result<Polynomial> {
    check_dim(p.dim(), y.dim())?;
    if y.coords().iter().all(Zero::is_zero) {
        return Ok(p.clone());
    }
    let mut out = Polynomial::zero(p.dim());
    for (alpha, c) in p.terms() {
        for beta in alpha.initial_section() {
            let mut coeff = c.clone();
            for (k, (&a, &b)) in alpha.entries().iter().zip(beta.entries()).enumerate() {
                if a > b {
                    coeff *= from_biguint(binomial(a, b)) * pow(&y.coords()[k], a - b);
                }
            }
            out.add_term(beta, coeff);
        }
    }
    Ok(out)
}

/// `σ_λ p (x) = p(λ·x)`: the coefficient of `x^α` is scaled by `λ^α`.
pub fn dilate(p: &Polynomial, lambda: &Point) -> Result<Polynomial> {
    check_dim(p.dim(), lambda.dim())?;
    Ok(p.map_terms(|a, c| c * lambda.power(a)))
}

/// `x ↦ p(a·x + b)`, i.e. `σ_a τ_b p`.
pub fn affine_map(p: &Polynomial, a: &Point, b: &Point) -> Result<Polynomial> {
    dilate(&translate(p, b)?, a)
}

/// `∂^a p`.
pub fn partial(p: &Polynomial, a: &MultiIndex) -> Result<Polynomial> {
    check_dim(p.dim(), a.dim())?;
    Ok(Polynomial::from_terms(
        p.dim(),
        p.terms().filter_map(|(alpha, c)| {
            let rest = alpha.checked_sub(a)?;
            let scale = alpha
                .entries()
                .iter()
                .zip(a.entries())
                .fold(BigUint::one(), |acc, (&n, &k)| {
                    acc * falling_factorial(n, k)
                });
            Some((rest, c * from_biguint(scale)))
        }),
    ))
}

/// `Δ^a p` with unit increments, `Δ_k p(x) = p(x + e_k) − p(x)`.
pub fn difference(p: &Polynomial, a: &MultiIndex) -> Result<Polynomial> {
    check_dim(p.dim(), a.dim())?;
    let dim = p.dim();
    let mut out = p.clone();
    for (axis, &steps) in a.entries().iter().enumerate() {
        for _ in 0..steps {
            if out.is_zero() {
                return Ok(out);
            }
            let mut shift = vec![Rational::zero(); dim];
            shift[axis] = Rational::one();
            let shifted = translate(&out, &Point::new(shift))?;
            out = &shifted - &out;
        }
    }
    Ok(out)
}

/// `P(∂) p` or `P(Δ) p`. The zero polynomial `P` acts as the zero operator.
pub fn apply_operator(
    operator: &Polynomial,
    p: &Polynomial,
    mode: OperatorMode,
) -> Result<Polynomial> {
    check_dim(operator.dim(), p.dim())?;
    let mut out = Polynomial::zero(p.dim());
    for (alpha, c) in operator.terms() {
        let image = match mode {
            OperatorMode::Derivative => partial(p, alpha)?,
            OperatorMode::Difference => difference(p, alpha)?,
        };
        out.sub_scaled(&-c, &image);
    }
    Ok(out)
}

/// `α ↦ ∂^α p(0)`, which is `α!` times the coefficient of `x^α`. Zero values
/// are omitted.
pub fn taylor_coefficients(p: &Polynomial) -> BTreeMap<MultiIndex, Rational> {
    p.terms()
        .map(|(a, c)| (a.clone(), c * from_biguint(a.factorial())))
        .collect()
}
