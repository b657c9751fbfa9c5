//! Generator manifolds as cohomology-ring presentations with exact Chern,
//! Stiefel-Whitney and Segre numbers.
//!
//! A model is a triple: a truncated ring, the total tangent characteristic
//! class, and an integration functional (multiply by a fixed class, read the
//! coefficient of a fixed top monomial). The complex catalog consists of
//! projective spaces `cp(n)` and Milnor hypersurfaces `h(m,n)`; the real
//! catalog of even projective spaces `rp(2k)` and Dold manifolds
//! `dold(m,n)`.
//!
//! The Milnor hypersurface is presented on the ambient ring of
//! `CP^m x CP^n`, with integration twisted by the hyperplane-section class
//! `a + b`; restriction to the hypersurface is invisible to
//! characteristic-number integrals, so no quotient ring is needed. The same
//! trick presents complete intersections for the double-point calculator.
//!
//! Segre classes are the multiplicative inverse of the total Chern class,
//! exactly as the defining relation `c(M) s(M) = 1` reads, so `s_1 = -c_1`.
//! The classical power-sum class is not used anywhere.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::combinatorics::{partitions, Partition};
use crate::ringcalc::{
    product_coefficient, reduce_mod2, triple_product_coefficient, Element, PolyRing, RingError,
    Scalar, VarSpec, F2,
};

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum ManifoldError {
    #[error("expected a class of weight {expected}, got {got}")]
    DimensionMismatch { expected: u32, got: u32 },
    #[error("total class must have constant term 1")]
    NonUnitTotalClass,
    #[error("element does not live in the manifold's ring")]
    ForeignElement,
    #[error(transparent)]
    Ring(#[from] RingError),
}

/// Exact vector of characteristic numbers of one manifold, indexed by the
/// partitions of its dimension in canonical order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CharVector<K: Scalar> {
    weight: u32,
    values: Vec<K>,
}

impl<K: Scalar> CharVector<K> {
    pub fn new(weight: u32, values: Vec<K>) -> Self {
        debug_assert_eq!(values.len(), partitions(weight).len());
        CharVector { weight, values }
    }

    pub fn weight(&self) -> u32 {
        self.weight
    }

    pub fn values(&self) -> &[K] {
        &self.values
    }

    pub fn scaled(&self, factor: &K) -> Self {
        CharVector {
            weight: self.weight,
            values: self.values.iter().map(|v| v.ref_mul(factor)).collect(),
        }
    }
}

impl CharVector<BigInt> {
    /// Componentwise mod-2 reduction.
    pub fn mod2(&self) -> CharVector<F2> {
        CharVector {
            weight: self.weight,
            values: self.values.iter().map(|v| F2(v.bit(0))).collect(),
        }
    }
}

/// Cohomology-ring presentation of a generator manifold together with its
/// total tangent class and integration functional. Immutable; safe to share
/// across threads.
#[derive(Clone, PartialEq, Debug)]
pub struct ManifoldModel<K: Scalar> {
    label: String,
    /// Complex dimension for complex models, real dimension for real ones.
    dimension: u32,
    ring: Arc<PolyRing<K>>,
    total_class: Element<K>,
    /// Multiplied in before reading the top coefficient; identity for
    /// projective spaces, the hyperplane-section class for hypersurface
    /// presentations.
    multiplier: Element<K>,
    top_monomial: Vec<u16>,
    /// Cohomological degree carried by one unit of dimension: 2 for complex
    /// models, 1 for real ones.
    grading: u32,
}

impl<K: Scalar> ManifoldModel<K> {
    /// Assembles a model from raw parts, validating the unit constant term
    /// of the total class and the integration data.
    pub fn from_parts(
        label: impl Into<String>,
        dimension: u32,
        grading: u32,
        total_class: Element<K>,
        multiplier: Element<K>,
        top_monomial: Vec<u16>,
    ) -> Result<Self, ManifoldError> {
        let ring = Arc::clone(total_class.ring());
        if !total_class.constant_term().is_one() {
            return Err(ManifoldError::NonUnitTotalClass);
        }
        if multiplier.ring() != &ring {
            return Err(ManifoldError::ForeignElement);
        }
        // Validates arity and truncation bounds.
        total_class.coefficient(&top_monomial)?;
        assert!(grading == 1 || grading == 2);
        Ok(ManifoldModel {
            label: label.into(),
            dimension,
            ring,
            total_class,
            multiplier,
            top_monomial,
            grading,
        })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn dimension(&self) -> u32 {
        self.dimension
    }

    pub fn ring(&self) -> &Arc<PolyRing<K>> {
        &self.ring
    }

    pub fn total_class(&self) -> &Element<K> {
        &self.total_class
    }

    pub fn grading(&self) -> u32 {
        self.grading
    }

    /// The degree-`r` characteristic class `c_r` (complex) or `w_r` (real).
    pub fn class(&self, r: u32) -> Element<K> {
        self.total_class.graded_part(self.grading * r)
    }

    /// Linear integration functional: the coefficient of the top monomial
    /// in `element * multiplier`, computed by convolution rather than by
    /// materializing the product.
    pub fn integrate(&self, element: &Element<K>) -> Result<K, ManifoldError> {
        if element.ring() != &self.ring {
            return Err(ManifoldError::ForeignElement);
        }
        Ok(product_coefficient(
            element,
            &self.multiplier,
            &self.top_monomial,
        )?)
    }

    /// Integral of a product `a * b` without materializing it.
    fn integrate_product(&self, a: &Element<K>, b: &Element<K>) -> Result<K, ManifoldError> {
        Ok(triple_product_coefficient(
            a,
            b,
            &self.multiplier,
            &self.top_monomial,
        )?)
    }

    /// The characteristic-number vector in weight `d`, which must equal the
    /// model's dimension.
    pub fn char_vector(&self, d: u32) -> Result<CharVector<K>, ManifoldError> {
        if d != self.dimension {
            return Err(ManifoldError::DimensionMismatch {
                expected: self.dimension,
                got: d,
            });
        }
        // Powers of each class are cached across partitions; the last
        // multiplication of every partition product is fused into the
        // integration, so the top power of a class is never materialized.
        let mut powers: Vec<Vec<Element<K>>> = (1..=d)
            .map(|r| vec![Element::one(&self.ring), self.class(r)])
            .collect();
        let mut values = Vec::new();
        for partition in partitions(d) {
            // Split off one copy of some class so at least two factors
            // remain for the fused step.
            let mut specs: Vec<(usize, u32)> = Vec::new();
            for (idx, &count) in partition.exponents().iter().enumerate() {
                if count > 0 {
                    specs.push((idx, count));
                }
            }
            let value = match specs.len() {
                0 => self.integrate(&Element::one(&self.ring))?,
                _ => {
                    let (last_idx, last_count) = specs.pop().unwrap();
                    if last_count > 1 {
                        specs.push((last_idx, last_count - 1));
                    }
                    specs.push((last_idx, 1));
                    for &(idx, count) in &specs {
                        let table = &mut powers[idx];
                        while table.len() <= count as usize {
                            let next = &table[table.len() - 1] * &table[1];
                            table.push(next);
                        }
                    }
                    let mut factors: Vec<&Element<K>> = specs
                        .iter()
                        .map(|&(idx, count)| &powers[idx][count as usize])
                        .collect();
                    factors.sort_by_key(|f| f.term_count());
                    let largest = factors.pop().unwrap();
                    match factors.len() {
                        0 => self.integrate(largest)?,
                        1 => self.integrate_product(largest, factors[0])?,
                        _ => {
                            // Combine the small factors first.
                            let mut acc = factors[0].clone();
                            for factor in &factors[1..] {
                                acc = &acc * factor;
                            }
                            self.integrate_product(largest, &acc)?
                        }
                    }
                }
            };
            values.push(value);
        }
        Ok(CharVector { weight: d, values })
    }

    /// Product model: tensor of the rings (variables renamed apart when they
    /// clash), product of the total classes, product integration functional.
    pub fn product(&self, other: &ManifoldModel<K>) -> ManifoldModel<K> {
        assert_eq!(
            self.grading, other.grading,
            "cannot mix complex and real models"
        );
        let mut vars = self.ring.vars().to_vec();
        for var in other.ring.vars() {
            let mut name = var.name.clone();
            while vars.iter().any(|v| v.name == name) {
                name.push('\'');
            }
            vars.push(VarSpec::new(name, var.degree, var.order));
        }
        let ring = PolyRing::<K>::new(vars).expect("validated variable specs");

        let left = embed(&ring, 0, &self.total_class);
        let right = embed(&ring, self.ring.arity(), &other.total_class);
        let left_mult = embed(&ring, 0, &self.multiplier);
        let right_mult = embed(&ring, self.ring.arity(), &other.multiplier);

        let mut top = self.top_monomial.clone();
        top.extend_from_slice(&other.top_monomial);

        ManifoldModel {
            label: format!("{}*{}", self.label, other.label),
            dimension: self.dimension + other.dimension,
            ring,
            total_class: &left * &right,
            multiplier: &left_mult * &right_mult,
            top_monomial: top,
            grading: self.grading,
        }
    }
}

/// Re-embeds an element into a larger ring whose variables contain the
/// original ones as a contiguous block starting at `offset`.
fn embed<K: Scalar>(ring: &Arc<PolyRing<K>>, offset: usize, element: &Element<K>) -> Element<K> {
    let mut out = Element::zero(ring);
    for (exponents, coeff) in element.terms() {
        let mut padded = vec![0u16; ring.arity()];
        padded[offset..offset + exponents.len()].copy_from_slice(&exponents);
        out = &out + &Element::monomial(ring, padded, coeff.clone()).unwrap();
    }
    out
}

/// The point, as a complex model of dimension 0.
pub fn point() -> ManifoldModel<BigInt> {
    let ring = PolyRing::<BigInt>::trivial();
    ManifoldModel {
        label: "point".to_string(),
        dimension: 0,
        ring: Arc::clone(&ring),
        total_class: Element::one(&ring),
        multiplier: Element::one(&ring),
        top_monomial: Vec::new(),
        grading: 2,
    }
}

/// The point, as a real model of dimension 0.
pub fn real_point() -> ManifoldModel<F2> {
    let ring = PolyRing::<F2>::trivial();
    ManifoldModel {
        label: "point".to_string(),
        dimension: 0,
        ring: Arc::clone(&ring),
        total_class: Element::one(&ring),
        multiplier: Element::one(&ring),
        top_monomial: Vec::new(),
        grading: 1,
    }
}

/// Complex projective space: ring `Z[x]/(x^{n+1})`, total class
/// `(1+x)^{n+1}`, integral the coefficient of `x^n`.
pub fn complex_projective(n: u32) -> ManifoldModel<BigInt> {
    if n == 0 {
        let mut model = point();
        model.label = "cp(0)".to_string();
        return model;
    }
    let ring = PolyRing::<BigInt>::new(vec![VarSpec::new("x", 2, n)]).unwrap();
    let x = Element::variable(&ring, 0).unwrap();
    let total = (&Element::one(&ring) + &x).pow(n + 1);
    ManifoldModel {
        label: format!("cp({n})"),
        dimension: n,
        ring: Arc::clone(&ring),
        total_class: total,
        multiplier: Element::one(&ring),
        top_monomial: vec![n as u16],
        grading: 2,
    }
}

/// Milnor hypersurface `h(m,n)`, the smooth bidegree-(1,1) hypersurface in
/// `CP^m x CP^n`, presented on the ambient ring `Z[a,b]/(a^{m+1}, b^{n+1})`
/// with the adjunction total class and integration against `a + b`.
pub fn milnor_hypersurface(m: u32, n: u32) -> ManifoldModel<BigInt> {
    assert!(m >= 1 && n >= 1, "milnor_hypersurface needs m, n >= 1");
    let ring =
        PolyRing::<BigInt>::new(vec![VarSpec::new("a", 2, m), VarSpec::new("b", 2, n)]).unwrap();
    let a = Element::variable(&ring, 0).unwrap();
    let b = Element::variable(&ring, 1).unwrap();
    let one = Element::one(&ring);
    let section = &a + &b;
    let ambient = &(&one + &a).pow(m + 1) * &(&one + &b).pow(n + 1);
    let total = &ambient * &(&one + &section).inverse().unwrap();
    ManifoldModel {
        label: format!("h({m},{n})"),
        dimension: m + n - 1,
        ring: Arc::clone(&ring),
        total_class: total,
        multiplier: section,
        top_monomial: vec![m as u16, n as u16],
        grading: 2,
    }
}

/// Real projective space: ring `F2[a]/(a^{n+1})` with `deg a = 1`, total
/// class `(1+a)^{n+1}`.
pub fn real_projective(n: u32) -> ManifoldModel<F2> {
    if n == 0 {
        let mut model = real_point();
        model.label = "rp(0)".to_string();
        return model;
    }
    let ring = PolyRing::<F2>::new(vec![VarSpec::new("a", 1, n)]).unwrap();
    let a = Element::variable(&ring, 0).unwrap();
    let total = (&Element::one(&ring) + &a).pow(n + 1);
    ManifoldModel {
        label: format!("rp({n})"),
        dimension: n,
        ring: Arc::clone(&ring),
        total_class: total,
        multiplier: Element::one(&ring),
        top_monomial: vec![n as u16],
        grading: 1,
    }
}

/// Dold manifold `dold(m,n)` of real dimension `m + 2n`: ring
/// `F2[c,d]/(c^{m+1}, d^{n+1})` with `deg c = 1`, `deg d = 2`, total class
/// `(1+c)^m (1+c+d)^{n+1}`, integral the coefficient of `c^m d^n`.
pub fn dold(m: u32, n: u32) -> ManifoldModel<F2> {
    assert!(m >= 1 && n >= 1, "dold needs m, n >= 1");
    let ring = PolyRing::<F2>::new(vec![VarSpec::new("c", 1, m), VarSpec::new("d", 2, n)]).unwrap();
    let c = Element::variable(&ring, 0).unwrap();
    let d = Element::variable(&ring, 1).unwrap();
    let one = Element::one(&ring);
    let total = &(&one + &c).pow(m) * &(&(&one + &c) + &d).pow(n + 1);
    ManifoldModel {
        label: format!("dold({m},{n})"),
        dimension: m + 2 * n,
        ring: Arc::clone(&ring),
        total_class: total,
        multiplier: one,
        top_monomial: vec![m as u16, n as u16],
        grading: 1,
    }
}

/// Total Segre class: the multiplicative inverse of the total tangent class.
pub fn total_segre_class(model: &ManifoldModel<BigInt>) -> Element<BigInt> {
    model
        .total_class()
        .inverse()
        .expect("total classes have constant term 1")
}

/// Top Segre number: the integral of the degree-`d` part of the inverse
/// total class, `d` the complex dimension.
pub fn segre_number(model: &ManifoldModel<BigInt>) -> Result<BigInt, ManifoldError> {
    if model.dimension == 0 {
        return Err(ManifoldError::DimensionMismatch {
            expected: 1,
            got: 0,
        });
    }
    let segre = total_segre_class(model);
    let top_part = segre.graded_part(model.grading * model.dimension);
    model.integrate(&top_part)
}

/// Mod-2 reduction of a complex model's total class, in the same variables.
pub fn total_class_mod2(model: &ManifoldModel<BigInt>) -> Element<F2> {
    reduce_mod2(model.total_class()).expect("degree-2 variables reduce to any domain")
}

/// An integer polynomial in the universal classes `c_1, ..., c_d`, graded by
/// partition weight: the universal expression of a characteristic number as
/// a linear combination of monomials `c_I`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PartitionPolynomial {
    weight: u32,
    terms: BTreeMap<Partition, BigInt>,
}

impl PartitionPolynomial {
    fn zero(weight: u32) -> Self {
        PartitionPolynomial {
            weight,
            terms: BTreeMap::new(),
        }
    }

    pub fn weight(&self) -> u32 {
        self.weight
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Partition, &BigInt)> {
        self.terms.iter()
    }

    /// Coefficient vector in canonical partition order.
    pub fn coefficient_vector(&self) -> Vec<BigInt> {
        partitions(self.weight)
            .iter()
            .map(|p| self.terms.get(p).cloned().unwrap_or_else(BigInt::zero))
            .collect()
    }

    fn add_term(&mut self, partition: Partition, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(partition) {
            std::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut slot) => {
                *slot.get_mut() += coeff;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    /// Evaluates the polynomial on a characteristic-number vector of the
    /// same weight: monomial `c_I` takes the value of coordinate `I`.
    pub fn evaluate(&self, vector: &CharVector<BigInt>) -> Result<BigInt, ManifoldError> {
        if vector.weight() != self.weight {
            return Err(ManifoldError::DimensionMismatch {
                expected: self.weight,
                got: vector.weight(),
            });
        }
        let order = partitions(self.weight);
        let mut total = BigInt::zero();
        for (partition, coeff) in &self.terms {
            let index = order
                .iter()
                .position(|p| p == partition)
                .expect("weight checked");
            total += coeff * &vector.values()[index];
        }
        Ok(total)
    }
}

impl fmt::Display for PartitionPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for partition in partitions(self.weight) {
            let Some(coeff) = self.terms.get(&partition) else {
                continue;
            };
            let (sign, magnitude) = if coeff.is_zero() {
                continue;
            } else if coeff < &BigInt::zero() {
                ("-", -coeff)
            } else {
                ("+", coeff.clone())
            };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {sign} ")?;
            }
            let monomial = partition.monomial_string('c');
            if magnitude.is_one() && monomial != "1" {
                write!(f, "{monomial}")?;
            } else if monomial == "1" {
                write!(f, "{magnitude}")?;
            } else {
                write!(f, "{magnitude} {monomial}")?;
            }
        }
        Ok(())
    }
}

/// The universal expression of the top Segre number `s_d` as an integer
/// polynomial in `c_1, ..., c_d`, obtained by formally inverting
/// `1 + c_1 + ... + c_d` degree by degree.
pub fn segre_polynomial(d: u32) -> PartitionPolynomial {
    assert!(d >= 1, "segre_polynomial needs d >= 1");
    // s_0 = 1; s_n = -(c_1 s_{n-1} + c_2 s_{n-2} + ... + c_n s_0).
    let mut table: Vec<PartitionPolynomial> = Vec::with_capacity(d as usize + 1);
    let mut s0 = PartitionPolynomial::zero(0);
    s0.add_term(Partition::empty(), BigInt::one());
    table.push(s0);
    for n in 1..=d {
        let mut current = PartitionPolynomial::zero(n);
        for r in 1..=n {
            let lower = &table[(n - r) as usize];
            for (partition, coeff) in lower.terms() {
                let mut exponents = partition.padded(r as usize);
                exponents[r as usize - 1] += 1;
                current.add_term(Partition::from_exponents(exponents), -coeff);
            }
        }
        table.push(current);
    }
    table.pop().unwrap()
}
