//! 2-adic divisibility of the top Segre number over the complex cobordism
//! models, and parity-witness polynomials.
//!
//! The top Segre number `s_d` is a linear combination of Chern numbers. Its
//! divisibility by powers of two is governed by the dyadic digit sum: `s_d`
//! is divisible by `2^e` exactly when `alpha(d+e-1) > 2(e-1)`, and the
//! halved functional `s_d / 2^e` agrees mod 2 with an integral combination
//! of Chern numbers exactly when `alpha(d+e) >= 2e`. The solver below turns
//! the second statement into a mod-2 linear system over the generator
//! monomials and either produces a witness polynomial or certifies that
//! none exists.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use thiserror::Error;

use crate::cobordism::{f2_vector, MuModel};
use crate::combinatorics::{alpha, partitions};
use crate::lattices::{f2_solve, functional_gcd, F2Vector, LatticeError};
use crate::manifolds::CharVector;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum DivisibilityError {
    #[error("s_{degree}({generator}) = {value} is not divisible by 2^{exponent}")]
    NonIntegralSegre {
        degree: u32,
        generator: String,
        value: BigInt,
        exponent: u32,
    },
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// Default cap on the exponent `e`; the divisibility predicate already
/// fails at `e = 3` for every degree within the desk bound.
pub const MAX_EXPONENT: u32 = 4;

/// Whether `s_d` is divisible by `2^e` on the whole degree-`d` group:
/// `alpha(d + e - 1) > 2(e - 1)`.
pub fn rt_predicate(d: u32, e: u32) -> bool {
    assert!(e >= 1);
    alpha((d + e - 1) as u64) > 2 * (e - 1)
}

/// Largest `e <= MAX_EXPONENT` satisfying the divisibility predicate. The
/// predicate is downward closed in `e`, so a linear scan suffices.
pub fn predicted_v2(d: u32) -> u32 {
    let mut best = 0;
    for e in 1..=MAX_EXPONENT {
        if rt_predicate(d, e) {
            best = e;
        } else {
            break;
        }
    }
    best
}

/// Whether `s_d / 2^e` mod 2 is an integral combination of Chern numbers:
/// `alpha(d + e) >= 2e`.
pub fn divtop_predicate(d: u32, e: u32) -> bool {
    alpha((d + e) as u64) >= 2 * e
}

/// Comparison of the observed and predicted 2-adic valuation of the top
/// Segre number over a degree-`d` model.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RtReport {
    pub degree: u32,
    /// 2-adic valuation of the gcd of `s_d` over the generator monomials.
    pub computed_v2: u32,
    /// Largest `e` allowed by the divisibility predicate.
    pub predicted_v2: u32,
}

impl RtReport {
    pub fn pass(&self) -> bool {
        self.computed_v2 == self.predicted_v2
    }
}

/// Computes both sides of the divisibility statement on a model.
pub fn rt_verify(model: &MuModel) -> RtReport {
    let values: Vec<BigInt> = model.generators.iter().map(|g| g.segre.clone()).collect();
    let gcd = functional_gcd(&values);
    let computed_v2 = gcd
        .trailing_zeros()
        .expect("the top Segre number does not vanish identically on the generators")
        as u32;
    RtReport {
        degree: model.degree,
        computed_v2,
        predicted_v2: predicted_v2(model.degree),
    }
}

/// Evenness of `s_d` on every generator and divisibility by 4 on every
/// decomposable monomial.
#[derive(Clone, Debug)]
pub struct Cor4Report {
    pub degree: u32,
    /// Generators with an odd Segre number.
    pub odd_generators: Vec<String>,
    /// Decomposable monomials whose Segre number is not divisible by 4.
    pub stubborn_decomposables: Vec<String>,
}

impl Cor4Report {
    pub fn pass(&self) -> bool {
        self.odd_generators.is_empty() && self.stubborn_decomposables.is_empty()
    }
}

pub fn cor4_check(model: &MuModel) -> Cor4Report {
    let mut odd_generators = Vec::new();
    let mut stubborn_decomposables = Vec::new();
    for generator in &model.generators {
        if generator.segre.is_odd() {
            odd_generators.push(generator.monomial.label());
        }
        if generator.monomial.is_decomposable() && !(&generator.segre % BigInt::from(4)).is_zero() {
            stubborn_decomposables.push(generator.monomial.label());
        }
    }
    Cor4Report {
        degree: model.degree,
        odd_generators,
        stubborn_decomposables,
    }
}

/// A degree-1 homogeneous polynomial `P` over F2 in the Chern-number
/// coordinates of weight `d`, with `s_d(g)/2^e = P(c_I(g)) mod 2` on every
/// generator monomial `g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParityWitness {
    pub degree: u32,
    pub exponent: u32,
    /// Coefficients over the partitions of `degree` in canonical order.
    coefficients: Vec<bool>,
}

impl ParityWitness {
    pub fn new(degree: u32, exponent: u32, coefficients: Vec<bool>) -> Self {
        debug_assert_eq!(coefficients.len(), partitions(degree).len());
        ParityWitness {
            degree,
            exponent,
            coefficients,
        }
    }

    pub fn coefficients(&self) -> &[bool] {
        &self.coefficients
    }

    /// `P` as a readable polynomial in the classes `c_I`. The witness is
    /// unique only modulo functionals that are even on the lattice.
    pub fn polynomial_string(&self) -> String {
        let order = partitions(self.degree);
        let pieces: Vec<String> = order
            .iter()
            .zip(&self.coefficients)
            .filter(|(_, &on)| on)
            .map(|(p, _)| p.monomial_string('c'))
            .collect();
        if pieces.is_empty() {
            "0".to_string()
        } else {
            pieces.join(" + ")
        }
    }

    /// Re-verifies the defining congruence on one generator: requires the
    /// Segre value to be divisible by `2^e`.
    pub fn verify_on(
        &self,
        vector: &CharVector<BigInt>,
        segre: &BigInt,
    ) -> Result<bool, DivisibilityError> {
        let halved = exact_shift(segre, self.exponent).ok_or_else(|| {
            DivisibilityError::NonIntegralSegre {
                degree: self.degree,
                generator: "ad-hoc vector".to_string(),
                value: segre.clone(),
                exponent: self.exponent,
            }
        })?;
        let mut rhs = false;
        for (value, &on) in vector.values().iter().zip(&self.coefficients) {
            if on && value.is_odd() {
                rhs = !rhs;
            }
        }
        Ok(halved.is_odd() == rhs)
    }
}

impl fmt::Display for ParityWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.polynomial_string())
    }
}

/// Exact division by `2^e`, `None` when not divisible.
fn exact_shift(value: &BigInt, e: u32) -> Option<BigInt> {
    let (q, r) = value.div_rem(&(BigInt::from(1) << e));
    if r.is_zero() {
        Some(q)
    } else {
        None
    }
}

/// Builds the mod-2 system (rows: reduced Chern vectors of the generators,
/// targets: `s_d(g)/2^e` mod 2) and solves for a parity witness. Returns
/// `None` when the system is inconsistent, which certifies that no integral
/// combination of Chern numbers matches the halved Segre functional mod 2
/// on the generator span.
///
/// The division must be exact on every generator; a failure names the
/// offending monomial.
pub fn divtop_solve(model: &MuModel, e: u32) -> Result<Option<ParityWitness>, DivisibilityError> {
    let columns = partitions(model.degree).len();
    let mut rows = Vec::with_capacity(model.generators.len());
    let mut targets = Vec::with_capacity(model.generators.len());
    for generator in &model.generators {
        let halved = exact_shift(&generator.segre, e).ok_or_else(|| {
            DivisibilityError::NonIntegralSegre {
                degree: model.degree,
                generator: generator.monomial.label(),
                value: generator.segre.clone(),
                exponent: e,
            }
        })?;
        rows.push(f2_vector(&generator.char_vector.mod2()));
        targets.push(halved.is_odd());
    }
    let solution = f2_solve(&rows, &F2Vector::from_bools(&targets), columns)?;
    Ok(solution.map(|witness| ParityWitness::new(model.degree, e, witness.to_bools())))
}
