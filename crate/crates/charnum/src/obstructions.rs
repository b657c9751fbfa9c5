//! Geometric-input calculators: Gram matrices of invariant classes on
//! products of conjugate abelian varieties, the double-point congruence
//! evaluator, and the applicability predicates of the obstruction theorems.
//!
//! The Gram data lives in the symbolic calculus `Q[l, l']/(l^{d+1}, l'^{d+1})`
//! with the degree functional `deg(l^a l'^b) = (d!)^2` when `a = b = d` and
//! zero otherwise. The invariant classes are
//! `delta_k = l^k/k! l'^{d-k}/(d-k)! + l^{d-k}/(d-k)! l'^k/k!` for
//! `k < d/2`, with a single symmetric term at `k = d/2` for even `d`.
//! Intermediate arithmetic is rational; every degree is asserted integral.
//!
//! The double-point evaluator consumes supplied intersection data: a source
//! model `W`, the pullback of the ambient total Chern class, and the
//! self-intersection degree. It integrates the top part of
//! `pullback * s(W)` - the top Chern class of the virtual normal bundle -
//! and compares, exactly or modulo a given modulus.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Deserialize;
use thiserror::Error;

use crate::cobordism::{parse_manifold_spec, CatalogModel, SpecParseError};
use crate::combinatorics::{alpha, binomial, factorial};
use crate::divisibility::divtop_predicate;
use crate::manifolds::{total_segre_class, ManifoldError, ManifoldModel};
use crate::ringcalc::{Element, PolyRing, RingError, VarSpec};

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum ObstructionError {
    #[error("Gram entry ({row}, {col}) disagrees: closed form {closed}, symbolic {symbolic}")]
    GramMismatch {
        row: usize,
        col: usize,
        closed: BigInt,
        symbolic: BigInt,
    },
    #[error("degree pairing produced a non-integer: {0}")]
    NonIntegralDegree(String),
    #[error("assertion failed: {0}")]
    AssertionFailed(String),
    #[error("invalid double-point input: {0}")]
    InvalidInput(String),
    #[error("cannot parse JSON input: {0}")]
    Json(String),
    #[error(transparent)]
    Spec(#[from] SpecParseError),
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Manifold(#[from] ManifoldError),
}

/// The symbolic two-polarization calculus in dimension `d`.
struct PolarizationCalculus {
    d: u32,
    ring: std::sync::Arc<PolyRing<BigRational>>,
    scale: BigRational,
}

impl PolarizationCalculus {
    fn new(d: u32) -> Result<Self, ObstructionError> {
        let ring =
            PolyRing::<BigRational>::new(vec![VarSpec::new("l", 2, d), VarSpec::new("l'", 2, d)])?;
        let d_factorial = factorial(d as u64);
        let scale = BigRational::from_integer(&d_factorial * &d_factorial);
        Ok(PolarizationCalculus { d, ring, scale })
    }

    /// `l^a l'^b / (a! b!)`-style monomial with explicit factorials.
    fn cross_term(&self, a: u32, b: u32) -> Element<BigRational> {
        let coeff = BigRational::new(BigInt::one(), factorial(a as u64) * factorial(b as u64));
        Element::monomial(&self.ring, vec![a as u16, b as u16], coeff).unwrap()
    }

    /// The invariant basis class `delta_k`.
    fn delta(&self, k: u32) -> Element<BigRational> {
        let d = self.d;
        if 2 * k == d {
            self.cross_term(k, k)
        } else {
            &self.cross_term(k, d - k) + &self.cross_term(d - k, k)
        }
    }

    /// Degree functional: `(d!)^2` times the coefficient of `l^d l'^d`,
    /// asserted integral.
    fn degree(&self, element: &Element<BigRational>) -> Result<BigInt, ObstructionError> {
        let coeff = element.coefficient(&[self.d as u16, self.d as u16])?;
        let value = coeff * &self.scale;
        if !value.is_integer() {
            return Err(ObstructionError::NonIntegralDegree(value.to_string()));
        }
        Ok(value.to_integer())
    }

    /// The class of the two coordinate cross cycles: `l^d/d! + l'^d/d!`.
    fn beta(&self) -> Element<BigRational> {
        &self.cross_term(self.d, 0) + &self.cross_term(0, self.d)
    }
}

/// Gram matrix of the invariant classes `delta_0, ..., delta_{floor(d/2)}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GramModel {
    pub dimension: u32,
    pub labels: Vec<String>,
    pub matrix: Vec<Vec<BigInt>>,
}

impl GramModel {
    pub fn size(&self) -> usize {
        self.matrix.len()
    }

    pub fn all_entries_even(&self) -> bool {
        self.matrix
            .iter()
            .flatten()
            .all(|entry| (entry % BigInt::from(2)).is_zero())
    }
}

/// Closed-form Gram diagonal: `2 * binomial(d,k)^2` for `k < d/2` and
/// `binomial(d, d/2)^2` at the middle for even `d`; off-diagonal zero.
fn closed_form_entry(d: u32, row: u32, col: u32) -> BigInt {
    if row != col {
        return BigInt::zero();
    }
    let b = binomial(d as u64, row as i64);
    if 2 * row == d {
        &b * &b
    } else {
        BigInt::from(2) * &b * &b
    }
}

/// Computes the Gram matrix twice - closed forms and the symbolic
/// calculus - and asserts agreement and integrality.
pub fn abelian_gram(d: u32) -> Result<GramModel, ObstructionError> {
    assert!(d >= 1, "abelian_gram needs d >= 1");
    let calculus = PolarizationCalculus::new(d)?;
    let size = d / 2 + 1;
    let deltas: Vec<Element<BigRational>> = (0..size).map(|k| calculus.delta(k)).collect();
    let mut matrix = Vec::with_capacity(size as usize);
    for row in 0..size {
        let mut entries = Vec::with_capacity(size as usize);
        for col in 0..size {
            let symbolic = calculus.degree(&(&deltas[row as usize] * &deltas[col as usize]))?;
            let closed = closed_form_entry(d, row, col);
            if symbolic != closed {
                return Err(ObstructionError::GramMismatch {
                    row: row as usize,
                    col: col as usize,
                    closed,
                    symbolic,
                });
            }
            entries.push(symbolic);
        }
        matrix.push(entries);
    }
    let labels = (0..size).map(|k| format!("delta_{k}")).collect();
    Ok(GramModel {
        dimension: d,
        labels,
        matrix,
    })
}

/// Parity facts about the invariant intersection form in dimension `d`.
#[derive(Clone, Debug)]
pub struct ResabReport {
    pub dimension: u32,
    pub all_entries_even: bool,
    /// For even `d`: the middle diagonal entry equals four times the
    /// preceding binomial square.
    pub corner_identity: Option<bool>,
    pub beta_squared: BigInt,
    pub beta_squared_is_two_mod_four: bool,
}

impl ResabReport {
    pub fn pass(&self) -> bool {
        self.all_entries_even
            && self.corner_identity.unwrap_or(true)
            && self.beta_squared_is_two_mod_four
    }
}

pub fn resab_checks(d: u32) -> Result<ResabReport, ObstructionError> {
    let gram = abelian_gram(d)?;
    let corner_identity = if d.is_multiple_of(2) {
        let middle = binomial(d as u64, (d / 2) as i64);
        let previous = binomial(d as u64 - 1, (d / 2) as i64);
        Some(&middle * &middle == BigInt::from(4) * &previous * &previous)
    } else {
        None
    };
    let calculus = PolarizationCalculus::new(d)?;
    let beta = calculus.beta();
    let beta_squared = calculus.degree(&(&beta * &beta))?;
    Ok(ResabReport {
        dimension: d,
        all_entries_even: gram.all_entries_even(),
        corner_identity,
        beta_squared_is_two_mod_four: beta_squared.mod_floor(&BigInt::from(4)) == BigInt::from(2),
        beta_squared,
    })
}

/// Intersection numbers after pulling back along the degree-4 quotient: the
/// cross class pulls back to four coordinate cycles, pairs to 8, and the
/// quotient degree recovers `beta^2 = 2`; invariant classes pull back into
/// twice the invariant span, so their products pair to multiples of 8.
#[derive(Clone, Debug)]
pub struct QuotabReport {
    pub dimension: u32,
    pub pulled_back_beta_squared: BigInt,
    pub quotient_degree: BigInt,
    pub beta_squared: BigInt,
    pub beta_squared_is_two_mod_four: bool,
    /// `deg(2 delta_j * 2 delta_k) = 0 mod 8` for all j, k, and for the
    /// aggregate combination `sum_k 2 delta_k`.
    pub doubled_pairings_divisible_by_eight: bool,
}

impl QuotabReport {
    pub fn pass(&self) -> bool {
        self.pulled_back_beta_squared == BigInt::from(8)
            && self.beta_squared == BigInt::from(2)
            && self.beta_squared_is_two_mod_four
            && self.doubled_pairings_divisible_by_eight
    }
}

pub fn quotab_checks(d: u32) -> Result<QuotabReport, ObstructionError> {
    let calculus = PolarizationCalculus::new(d)?;
    // Four coordinate cross cycles; torsion translates share a class, so the
    // pullback is twice the cross class.
    let pulled_back_beta = calculus
        .beta()
        .scaled(&BigRational::from_integer(BigInt::from(2)));
    let pulled_back_beta_squared = calculus.degree(&(&pulled_back_beta * &pulled_back_beta))?;
    let quotient_degree = BigInt::from(4);
    let beta_squared = &pulled_back_beta_squared / &quotient_degree;

    let size = d / 2 + 1;
    let doubled: Vec<Element<BigRational>> = (0..size)
        .map(|k| {
            calculus
                .delta(k)
                .scaled(&BigRational::from_integer(BigInt::from(2)))
        })
        .collect();
    let eight = BigInt::from(8);
    let mut divisible = true;
    let mut aggregate = Element::zero(&calculus.ring);
    for gamma in &doubled {
        aggregate = &aggregate + gamma;
        for gamma_prime in &doubled {
            let pairing = calculus.degree(&(gamma * gamma_prime))?;
            divisible &= pairing.mod_floor(&eight).is_zero();
        }
    }
    // deg(p* 0 . anything) = 0 trivially; also check one aggregate class.
    divisible &= calculus
        .degree(&(&aggregate * &aggregate))?
        .mod_floor(&eight)
        .is_zero();
    let zero = Element::zero(&calculus.ring);
    divisible &= calculus.degree(&(&zero * &aggregate))?.is_zero();

    Ok(QuotabReport {
        dimension: d,
        pulled_back_beta_squared,
        quotient_degree,
        beta_squared_is_two_mod_four: beta_squared.mod_floor(&BigInt::from(4)) == BigInt::from(2),
        beta_squared,
        doubled_pairings_divisible_by_eight: divisible,
    })
}

/// Intersection data for one double-point congruence check: a source model
/// `W`, the pullback of the ambient total Chern class into `W`'s ring, the
/// self-intersection degree of the image cycle, and an optional modulus
/// (0 means exact equality).
pub struct DoublePointInput {
    pub source: ManifoldModel<BigInt>,
    pub pullback_class: Element<BigInt>,
    pub self_intersection: BigInt,
    pub modulus: u64,
}

impl DoublePointInput {
    pub fn new(
        source: ManifoldModel<BigInt>,
        pullback_class: Element<BigInt>,
        self_intersection: BigInt,
        modulus: u64,
    ) -> Result<Self, ObstructionError> {
        if pullback_class.ring() != source.ring() {
            return Err(ObstructionError::InvalidInput(
                "the pullback class must live in the source model's ring".to_string(),
            ));
        }
        if !pullback_class.constant_term().is_one() {
            return Err(ObstructionError::InvalidInput(
                "the pullback class must have constant term 1".to_string(),
            ));
        }
        Ok(DoublePointInput {
            source,
            pullback_class,
            self_intersection,
            modulus,
        })
    }

    /// Parses the JSON document format; see the repository README for the
    /// schema.
    pub fn from_json_str(text: &str) -> Result<Self, ObstructionError> {
        let raw: RawDoublePointInput =
            serde_json::from_str(text).map_err(|e| ObstructionError::Json(e.to_string()))?;
        raw.build()
    }
}

/// Top Chern degree of the virtual normal bundle: the integral over `W` of
/// the dimension-degree part of `pullback * s(W)`.
pub fn double_point_rhs(input: &DoublePointInput) -> Result<BigInt, ObstructionError> {
    let source = &input.source;
    let segre = total_segre_class(source);
    let product = &input.pullback_class * &segre;
    let top = product.graded_part(source.grading() * source.dimension());
    Ok(source.integrate(&top)?)
}

#[derive(Clone, Debug)]
pub struct DoublePointReport {
    pub self_intersection: BigInt,
    pub normal_degree: BigInt,
    pub modulus: u64,
    pub congruent: bool,
}

/// Compares the self-intersection degree against the normal-bundle degree,
/// exactly (modulus 0, the embedding case) or modulo the given modulus.
pub fn double_point_check(input: &DoublePointInput) -> Result<DoublePointReport, ObstructionError> {
    let normal_degree = double_point_rhs(input)?;
    let congruent = if input.modulus == 0 {
        input.self_intersection == normal_degree
    } else {
        let modulus = BigInt::from(input.modulus);
        (&input.self_intersection - &normal_degree)
            .mod_floor(&modulus)
            .is_zero()
    };
    Ok(DoublePointReport {
        self_intersection: input.self_intersection.clone(),
        normal_degree,
        modulus: input.modulus,
        congruent,
    })
}

#[derive(Deserialize)]
struct RawTerm {
    exponents: Vec<u16>,
    coeff: String,
}

#[derive(Deserialize)]
struct RawVar {
    name: String,
    degree: u32,
    order: u32,
}

#[derive(Deserialize)]
struct RawRing {
    vars: Vec<RawVar>,
}

#[derive(Deserialize)]
struct RawModel {
    label: Option<String>,
    dimension: u32,
    ring: RawRing,
    total_class: Vec<RawTerm>,
    multiplier: Option<Vec<RawTerm>>,
    top_monomial: Vec<u16>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawSource {
    Spec(String),
    Explicit(RawModel),
}

#[derive(Deserialize)]
struct RawDoublePointInput {
    source: RawSource,
    pullback_class: Vec<RawTerm>,
    self_intersection: String,
    #[serde(default)]
    modulus: u64,
}

fn parse_bigint(text: &str) -> Result<BigInt, ObstructionError> {
    text.trim()
        .parse::<BigInt>()
        .map_err(|_| ObstructionError::InvalidInput(format!("bad integer literal `{text}`")))
}

fn element_from_terms(
    ring: &std::sync::Arc<PolyRing<BigInt>>,
    terms: &[RawTerm],
) -> Result<Element<BigInt>, ObstructionError> {
    let mut out = Element::zero(ring);
    for term in terms {
        let coeff = parse_bigint(&term.coeff)?;
        let monomial = Element::monomial(ring, term.exponents.clone(), coeff)?;
        out = &out + &monomial;
    }
    Ok(out)
}

impl RawDoublePointInput {
    fn build(self) -> Result<DoublePointInput, ObstructionError> {
        let source = match self.source {
            RawSource::Spec(spec) => match parse_manifold_spec(&spec)? {
                CatalogModel::Complex(model) => model,
                CatalogModel::Real(_) => {
                    return Err(ObstructionError::InvalidInput(
                        "double-point sources must be complex models".to_string(),
                    ))
                }
            },
            RawSource::Explicit(raw) => {
                let ring = PolyRing::<BigInt>::new(
                    raw.ring
                        .vars
                        .iter()
                        .map(|v| VarSpec::new(v.name.clone(), v.degree, v.order))
                        .collect(),
                )?;
                let total_class = element_from_terms(&ring, &raw.total_class)?;
                let multiplier = match &raw.multiplier {
                    Some(terms) => element_from_terms(&ring, terms)?,
                    None => Element::one(&ring),
                };
                ManifoldModel::from_parts(
                    raw.label.unwrap_or_else(|| "source".to_string()),
                    raw.dimension,
                    2,
                    total_class,
                    multiplier,
                    raw.top_monomial,
                )?
            }
        };
        let ring = source.ring().clone();
        let pullback_class = element_from_terms(&ring, &self.pullback_class)?;
        DoublePointInput::new(
            source,
            pullback_class,
            parse_bigint(&self.self_intersection)?,
            self.modulus,
        )
    }
}

/// Which obstruction regimes apply at codimension `c` and dimension `d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PredicateReport {
    pub codimension: u32,
    pub dimension: u32,
    /// `d < c`: the smoothing range, where no obstruction applies.
    pub positive_regime: bool,
    /// `d >= c` and `alpha(c+1) >= 3`: obstructions to generation by
    /// subvarieties smooth along their real loci.
    pub smooth_real_locus_obstruction: bool,
    /// `d >= c` and `alpha(c+1) >= 2`: obstructions to generation by
    /// subvarieties with empty real loci.
    pub empty_real_locus_obstruction: bool,
    /// Per-exponent approximation obstruction: `d >= c` and
    /// `alpha(c+e) = 2e`.
    pub approximation_obstruction: Vec<(u32, bool)>,
    /// `c = d = 2^k` with `k >= 1`: the projective-product instance.
    pub projective_product_instance: bool,
}

pub fn predicate_report(c: u32, d: u32, e: Option<u32>) -> PredicateReport {
    let in_range = d >= c;
    let exponents: Vec<u32> = match e {
        Some(e) => vec![e],
        None => (1..=4).collect(),
    };
    let approximation_obstruction = exponents
        .into_iter()
        .map(|e| (e, in_range && alpha((c + e) as u64) == 2 * e))
        .collect();
    PredicateReport {
        codimension: c,
        dimension: d,
        positive_regime: d < c,
        smooth_real_locus_obstruction: in_range && alpha((c + 1) as u64) >= 3,
        empty_real_locus_obstruction: in_range && alpha((c + 1) as u64) >= 2,
        approximation_obstruction,
        projective_product_instance: c == d && c >= 2 && c.is_power_of_two(),
    }
}

/// Codimensions `c <= max` with `alpha(c+1) = 2`: the values where the
/// `e = 1` approximation obstruction can bite.
pub fn two_bit_codimensions(max: u32) -> Vec<u32> {
    (0..=max).filter(|&c| alpha((c + 1) as u64) == 2).collect()
}

/// Consistency of the approximation predicate with the parity-witness
/// predicate: the former at `(c, e)` requires the latter at the same
/// parameters.
pub fn predicates_consistent(max_c: u32) -> bool {
    for c in 0..=max_c {
        for e in 1..=4u32 {
            if alpha((c + e) as u64) == 2 * e && !divtop_predicate(c, e) {
                return false;
            }
        }
    }
    true
}
