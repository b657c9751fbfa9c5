//! Exact arithmetic in truncated multivariate polynomial rings
//! `R[x_1, ..., x_k] / (x_1^{n_1+1}, ..., x_k^{n_k+1})` over the integers,
//! the rationals, or the field with two elements.
//!
//! Elements are sparse maps from exponent tuples to nonzero coefficients.
//! Every variable carries a cohomological degree (1 or 2; degree 1 only over
//! mod-2 coefficients), which grades the ring. Units, i.e. elements whose
//! constant term is invertible, can be inverted exactly; this is what turns a
//! total Chern class into a total Segre class.
//!
//! Exponent tuples are packed into fixed-width byte arrays, which caps rings
//! at [`MAX_VARS`] variables and nilpotency orders at 255. Both bounds are
//! far beyond desk scale.
//!
//! Elements are immutable values; rings are shared behind `Arc`. Two
//! independently built rings with the same variable descriptors are the same
//! ring. Arithmetic between elements of different rings panics.

use std::collections::BTreeMap;
use std::fmt;
use std::marker::PhantomData;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Maximum number of variables per ring.
pub const MAX_VARS: usize = 32;

/// Coefficient domain tag.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Domain {
    Integer,
    Rational,
    Mod2,
}

/// Exact coefficient domains: arbitrary-precision integers and rationals,
/// and the field with two elements.
pub trait Scalar: Clone + PartialEq + Eq + fmt::Debug + fmt::Display + Zero + One {
    const DOMAIN: Domain;

    fn ref_add(&self, rhs: &Self) -> Self;
    fn ref_neg(&self) -> Self;
    fn ref_mul(&self, rhs: &Self) -> Self;
    /// Multiplicative inverse, when the element is a unit of the domain.
    fn inverse(&self) -> Option<Self>;
    fn from_i64(value: i64) -> Self;
}

impl Scalar for BigInt {
    const DOMAIN: Domain = Domain::Integer;

    fn ref_add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn ref_neg(&self) -> Self {
        -self
    }
    fn ref_mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn inverse(&self) -> Option<Self> {
        if self.abs().is_one() {
            Some(self.clone())
        } else {
            None
        }
    }
    fn from_i64(value: i64) -> Self {
        BigInt::from(value)
    }
}

impl Scalar for BigRational {
    const DOMAIN: Domain = Domain::Rational;

    fn ref_add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn ref_neg(&self) -> Self {
        -self
    }
    fn ref_mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn inverse(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn from_i64(value: i64) -> Self {
        BigRational::from_integer(BigInt::from(value))
    }
}

/// The field with two elements.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct F2(pub bool);

impl fmt::Display for F2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", if self.0 { 1 } else { 0 })
    }
}

impl std::ops::Add for F2 {
    type Output = F2;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn add(self, rhs: F2) -> F2 {
        F2(self.0 ^ rhs.0)
    }
}

impl std::ops::Mul for F2 {
    type Output = F2;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn mul(self, rhs: F2) -> F2 {
        F2(self.0 & rhs.0)
    }
}

impl Zero for F2 {
    fn zero() -> Self {
        F2(false)
    }
    fn is_zero(&self) -> bool {
        !self.0
    }
}

impl One for F2 {
    fn one() -> Self {
        F2(true)
    }
}

impl Scalar for F2 {
    const DOMAIN: Domain = Domain::Mod2;

    fn ref_add(&self, rhs: &Self) -> Self {
        F2(self.0 ^ rhs.0)
    }
    fn ref_neg(&self) -> Self {
        *self
    }
    fn ref_mul(&self, rhs: &Self) -> Self {
        F2(self.0 & rhs.0)
    }
    fn inverse(&self) -> Option<Self> {
        if self.0 {
            Some(*self)
        } else {
            None
        }
    }
    fn from_i64(value: i64) -> Self {
        F2(value.rem_euclid(2) == 1)
    }
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum RingError {
    #[error("duplicate variable name `{0}`")]
    DuplicateVariable(String),
    #[error("variable `{0}` must have nilpotency order at least 1")]
    ZeroOrder(String),
    #[error("variable `{0}` has nilpotency order beyond 255")]
    OrderTooLarge(String),
    #[error("rings support at most {MAX_VARS} variables, got {0}")]
    TooManyVariables(usize),
    #[error("variable `{name}` has cohomological degree {degree}; only 1 and 2 are supported")]
    BadDegree { name: String, degree: u32 },
    #[error("degree-1 variable `{0}` is only permitted over mod-2 coefficients")]
    DegreeOneNeedsMod2(String),
    #[error("expected {expected} exponents, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("exponent {exponent} of `{var}` exceeds the nilpotency order {order}")]
    ExponentOutOfRange {
        var: String,
        exponent: u16,
        order: u32,
    },
    #[error("constant term {0} is not a unit of the coefficient domain")]
    NonUnitConstant(String),
    #[error("coefficient {coeff} of {monomial} is not an integer")]
    NonIntegralCoefficient { monomial: String, coeff: String },
}

/// Packed exponent tuple. Entries beyond the ring's arity stay zero, so the
/// derived lexicographic order agrees with the order on exponent vectors.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
struct Exponents([u8; MAX_VARS]);

impl Exponents {
    const ZERO: Exponents = Exponents([0; MAX_VARS]);
}

/// Descriptor of a single ring variable.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct VarSpec {
    pub name: String,
    /// Cohomological degree, 1 or 2.
    pub degree: u32,
    /// Nilpotency order `n`: the relation is `x^{n+1} = 0`.
    pub order: u32,
}

impl VarSpec {
    pub fn new(name: impl Into<String>, degree: u32, order: u32) -> Self {
        VarSpec {
            name: name.into(),
            degree,
            order,
        }
    }
}

/// A truncated polynomial ring with a fixed coefficient domain.
#[derive(Debug)]
pub struct PolyRing<K: Scalar> {
    vars: Vec<VarSpec>,
    orders: [u8; MAX_VARS],
    degrees: [u8; MAX_VARS],
    _domain: PhantomData<K>,
}

impl<K: Scalar> PartialEq for PolyRing<K> {
    fn eq(&self, other: &Self) -> bool {
        self.vars == other.vars
    }
}

impl<K: Scalar> Eq for PolyRing<K> {}

impl<K: Scalar> PolyRing<K> {
    /// Builds a ring, validating variable names, degrees and orders.
    pub fn new(vars: Vec<VarSpec>) -> Result<Arc<Self>, RingError> {
        if vars.len() > MAX_VARS {
            return Err(RingError::TooManyVariables(vars.len()));
        }
        let mut orders = [0u8; MAX_VARS];
        let mut degrees = [0u8; MAX_VARS];
        for (idx, var) in vars.iter().enumerate() {
            if vars[..idx].iter().any(|other| other.name == var.name) {
                return Err(RingError::DuplicateVariable(var.name.clone()));
            }
            if var.order == 0 {
                return Err(RingError::ZeroOrder(var.name.clone()));
            }
            if var.order > 255 {
                return Err(RingError::OrderTooLarge(var.name.clone()));
            }
            if var.degree != 1 && var.degree != 2 {
                return Err(RingError::BadDegree {
                    name: var.name.clone(),
                    degree: var.degree,
                });
            }
            if var.degree == 1 && K::DOMAIN != Domain::Mod2 {
                return Err(RingError::DegreeOneNeedsMod2(var.name.clone()));
            }
            orders[idx] = var.order as u8;
            degrees[idx] = var.degree as u8;
        }
        Ok(Arc::new(PolyRing {
            vars,
            orders,
            degrees,
            _domain: PhantomData,
        }))
    }

    /// The ring with no variables (coefficients only).
    pub fn trivial() -> Arc<Self> {
        Arc::new(PolyRing {
            vars: Vec::new(),
            orders: [0; MAX_VARS],
            degrees: [0; MAX_VARS],
            _domain: PhantomData,
        })
    }

    pub fn vars(&self) -> &[VarSpec] {
        &self.vars
    }

    pub fn arity(&self) -> usize {
        self.vars.len()
    }

    /// Cohomological degree of a monomial.
    pub fn monomial_degree(&self, exponents: &[u16]) -> u32 {
        exponents
            .iter()
            .zip(&self.vars)
            .map(|(&e, var)| e as u32 * var.degree)
            .sum()
    }

    fn packed_degree(&self, key: &Exponents) -> u32 {
        let mut total = 0u32;
        for i in 0..self.vars.len() {
            total += key.0[i] as u32 * self.degrees[i] as u32;
        }
        total
    }

    /// Largest cohomological degree of any nonzero monomial.
    pub fn top_degree(&self) -> u32 {
        self.vars.iter().map(|v| v.order * v.degree).sum()
    }

    fn pack(&self, exponents: &[u16]) -> Result<Exponents, RingError> {
        if exponents.len() != self.vars.len() {
            return Err(RingError::ArityMismatch {
                expected: self.vars.len(),
                got: exponents.len(),
            });
        }
        let mut key = Exponents::ZERO;
        for (i, (&e, var)) in exponents.iter().zip(&self.vars).enumerate() {
            if e as u32 > var.order {
                return Err(RingError::ExponentOutOfRange {
                    var: var.name.clone(),
                    exponent: e,
                    order: var.order,
                });
            }
            key.0[i] = e as u8;
        }
        Ok(key)
    }

    fn unpack(&self, key: &Exponents) -> Vec<u16> {
        key.0[..self.vars.len()].iter().map(|&e| e as u16).collect()
    }

    fn monomial_string(&self, exponents: &[u16]) -> String {
        let mut pieces = Vec::new();
        for (&e, var) in exponents.iter().zip(&self.vars) {
            match e {
                0 => {}
                1 => pieces.push(var.name.clone()),
                _ => pieces.push(format!("{}^{}", var.name, e)),
            }
        }
        if pieces.is_empty() {
            "1".to_string()
        } else {
            pieces.join(" ")
        }
    }
}

/// An element of a truncated polynomial ring: a sparse map from exponent
/// tuples to nonzero coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Element<K: Scalar> {
    ring: Arc<PolyRing<K>>,
    terms: BTreeMap<Exponents, K>,
}

impl<K: Scalar> Element<K> {
    pub fn zero(ring: &Arc<PolyRing<K>>) -> Self {
        Element {
            ring: Arc::clone(ring),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ring: &Arc<PolyRing<K>>) -> Self {
        Self::constant(ring, K::one())
    }

    pub fn constant(ring: &Arc<PolyRing<K>>, value: K) -> Self {
        let mut terms = BTreeMap::new();
        if !value.is_zero() {
            terms.insert(Exponents::ZERO, value);
        }
        Element {
            ring: Arc::clone(ring),
            terms,
        }
    }

    /// The `index`-th variable as an element.
    pub fn variable(ring: &Arc<PolyRing<K>>, index: usize) -> Result<Self, RingError> {
        if index >= ring.arity() {
            return Err(RingError::ArityMismatch {
                expected: ring.arity(),
                got: index + 1,
            });
        }
        let mut exponents = vec![0u16; ring.arity()];
        exponents[index] = 1;
        Self::monomial(ring, exponents, K::one())
    }

    /// A single monomial term, validated against the truncation bounds.
    pub fn monomial(
        ring: &Arc<PolyRing<K>>,
        exponents: Vec<u16>,
        coeff: K,
    ) -> Result<Self, RingError> {
        let key = ring.pack(&exponents)?;
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(key, coeff);
        }
        Ok(Element {
            ring: Arc::clone(ring),
            terms,
        })
    }

    pub fn ring(&self) -> &Arc<PolyRing<K>> {
        &self.ring
    }

    /// Iterates terms in the canonical (lexicographic) monomial order.
    pub fn terms(&self) -> impl Iterator<Item = (Vec<u16>, &K)> {
        self.terms
            .iter()
            .map(|(key, coeff)| (self.ring.unpack(key), coeff))
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.constant_term().is_one()
    }

    /// Stored coefficient of the given exponent tuple, or zero.
    pub fn coefficient(&self, exponents: &[u16]) -> Result<K, RingError> {
        let key = self.ring.pack(exponents)?;
        Ok(self.terms.get(&key).cloned().unwrap_or_else(K::zero))
    }

    pub fn constant_term(&self) -> K {
        self.terms
            .get(&Exponents::ZERO)
            .cloned()
            .unwrap_or_else(K::zero)
    }

    /// The sum of monomials of the given cohomological degree.
    pub fn graded_part(&self, degree: u32) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|(key, _)| self.ring.packed_degree(key) == degree)
            .map(|(key, coeff)| (*key, coeff.clone()))
            .collect();
        Element {
            ring: Arc::clone(&self.ring),
            terms,
        }
    }

    pub fn scaled(&self, factor: &K) -> Self {
        if factor.is_zero() {
            return Self::zero(&self.ring);
        }
        let terms = self
            .terms
            .iter()
            .map(|(key, coeff)| (*key, coeff.ref_mul(factor)))
            .filter(|(_, coeff)| !coeff.is_zero())
            .collect();
        Element {
            ring: Arc::clone(&self.ring),
            terms,
        }
    }

    pub fn pow(&self, exponent: u32) -> Self {
        let mut acc = Self::one(&self.ring);
        for _ in 0..exponent {
            acc = &acc * self;
        }
        acc
    }

    fn add_assign_term(&mut self, key: Exponents, coeff: K) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            std::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut slot) => {
                let sum = slot.get().ref_add(&coeff);
                if sum.is_zero() {
                    slot.remove();
                } else {
                    slot.insert(sum);
                }
            }
        }
    }

    /// Inverse of a graded unit: the constant term must be invertible in the
    /// coefficient domain. Computed through the geometric series of the
    /// nilpotent part, which terminates by truncation.
    pub fn inverse(&self) -> Result<Self, RingError> {
        let constant = self.constant_term();
        let constant_inv = constant
            .inverse()
            .ok_or_else(|| RingError::NonUnitConstant(constant.to_string()))?;

        // self = c (1 + w); inverse = c^{-1} sum_k (-w)^k.
        let mut minus_w = self.scaled(&constant_inv.ref_neg());
        minus_w.add_assign_term(Exponents::ZERO, K::one());

        let mut series = Self::one(&self.ring);
        let mut power = Self::one(&self.ring);
        for _ in 0..=self.ring.top_degree() {
            power = &power * &minus_w;
            if power.is_zero() {
                break;
            }
            series = &series + &power;
        }
        Ok(series.scaled(&constant_inv))
    }
}

fn assert_same_ring<K: Scalar>(a: &Element<K>, b: &Element<K>) {
    assert!(
        a.ring == b.ring,
        "elements belong to different rings: [{}] vs [{}]",
        a.ring
            .vars
            .iter()
            .map(|v| v.name.as_str())
            .collect::<Vec<_>>()
            .join(", "),
        b.ring
            .vars
            .iter()
            .map(|v| v.name.as_str())
            .collect::<Vec<_>>()
            .join(", "),
    );
}

impl<K: Scalar> std::ops::Add for &Element<K> {
    type Output = Element<K>;

    fn add(self, rhs: Self) -> Element<K> {
        assert_same_ring(self, rhs);
        let mut out = self.clone();
        for (key, coeff) in &rhs.terms {
            out.add_assign_term(*key, coeff.clone());
        }
        out
    }
}

impl<K: Scalar> std::ops::Sub for &Element<K> {
    type Output = Element<K>;

    fn sub(self, rhs: Self) -> Element<K> {
        assert_same_ring(self, rhs);
        let mut out = self.clone();
        for (key, coeff) in &rhs.terms {
            out.add_assign_term(*key, coeff.ref_neg());
        }
        out
    }
}

impl<K: Scalar> std::ops::Neg for &Element<K> {
    type Output = Element<K>;

    fn neg(self) -> Element<K> {
        let terms = self
            .terms
            .iter()
            .map(|(key, coeff)| (*key, coeff.ref_neg()))
            .collect();
        Element {
            ring: Arc::clone(&self.ring),
            terms,
        }
    }
}

/// Truncated key sum: `None` when some exponent exceeds its order.
#[inline]
fn key_sum(
    arity: usize,
    orders: &[u8; MAX_VARS],
    a: &Exponents,
    b: &Exponents,
) -> Option<Exponents> {
    let mut out = Exponents::ZERO;
    let pairs = out
        .0
        .iter_mut()
        .zip(a.0.iter().zip(&b.0).zip(orders))
        .take(arity);
    for (slot, ((&ea, &eb), &order)) in pairs {
        let sum = ea as u16 + eb as u16;
        if sum > order as u16 {
            return None;
        }
        *slot = sum as u8;
    }
    Some(out)
}

/// Componentwise key difference: `None` when it would go negative.
#[inline]
fn key_diff(arity: usize, a: &Exponents, b: &Exponents) -> Option<Exponents> {
    let mut out = Exponents::ZERO;
    let pairs = out.0.iter_mut().zip(a.0.iter().zip(&b.0)).take(arity);
    for (slot, (&ea, &eb)) in pairs {
        if eb > ea {
            return None;
        }
        *slot = ea - eb;
    }
    Some(out)
}

impl<K: Scalar> std::ops::Mul for &Element<K> {
    type Output = Element<K>;

    fn mul(self, rhs: Self) -> Element<K> {
        assert_same_ring(self, rhs);
        let arity = self.ring.arity();
        let orders = &self.ring.orders;
        let mut out = Element::zero(&self.ring);
        for (ea, ka) in &self.terms {
            for (eb, kb) in &rhs.terms {
                if let Some(key) = key_sum(arity, orders, ea, eb) {
                    out.add_assign_term(key, ka.ref_mul(kb));
                }
            }
        }
        out
    }
}

/// Coefficient of `target` in the product `a * b`, computed by convolution:
/// iterates the smaller factor and looks terms up in the larger one.
pub fn product_coefficient<K: Scalar>(
    a: &Element<K>,
    b: &Element<K>,
    target: &[u16],
) -> Result<K, RingError> {
    assert_same_ring(a, b);
    let arity = a.ring.arity();
    let target_key = a.ring.pack(target)?;
    let (iterated, looked_up) = if a.term_count() <= b.term_count() {
        (a, b)
    } else {
        (b, a)
    };
    let mut total = K::zero();
    for (key, coeff) in &iterated.terms {
        if let Some(rest) = key_diff(arity, &target_key, key) {
            if let Some(partner) = looked_up.terms.get(&rest) {
                total = total.ref_add(&coeff.ref_mul(partner));
            }
        }
    }
    Ok(total)
}

/// Coefficient of `target` in the product `a * b * c`, iterating the two
/// smallest factors and looking up the largest.
pub fn triple_product_coefficient<K: Scalar>(
    a: &Element<K>,
    b: &Element<K>,
    c: &Element<K>,
    target: &[u16],
) -> Result<K, RingError> {
    assert_same_ring(a, b);
    assert_same_ring(a, c);
    let arity = a.ring.arity();
    let target_key = a.ring.pack(target)?;
    let mut factors = [a, b, c];
    factors.sort_by_key(|f| f.term_count());
    let [small, medium, large] = factors;
    let mut total = K::zero();
    for (ks, cs) in &small.terms {
        let Some(rest) = key_diff(arity, &target_key, ks) else {
            continue;
        };
        for (km, cm) in &medium.terms {
            if let Some(final_key) = key_diff(arity, &rest, km) {
                if let Some(partner) = large.terms.get(&final_key) {
                    total = total.ref_add(&cs.ref_mul(cm).ref_mul(partner));
                }
            }
        }
    }
    Ok(total)
}

impl<K: Scalar> fmt::Display for Element<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (exponents, coeff) in self.terms() {
            let coeff_str = coeff.to_string();
            let (sign, magnitude) = match coeff_str.strip_prefix('-') {
                Some(rest) => ("-", rest.to_string()),
                None => ("+", coeff_str),
            };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {} ", sign)?;
            }
            let monomial = self.ring.monomial_string(&exponents);
            if monomial == "1" {
                write!(f, "{magnitude}")?;
            } else if magnitude == "1" {
                write!(f, "{monomial}")?;
            } else {
                write!(f, "{magnitude} {monomial}")?;
            }
        }
        Ok(())
    }
}

/// Converts a rational element to an integer one, failing loudly on any
/// surviving denominator.
pub fn assert_integral(element: &Element<BigRational>) -> Result<Element<BigInt>, RingError> {
    let ring = PolyRing::<BigInt>::new(element.ring().vars().to_vec())?;
    let mut out = Element::zero(&ring);
    for (key, coeff) in &element.terms {
        if !coeff.is_integer() {
            return Err(RingError::NonIntegralCoefficient {
                monomial: element.ring().monomial_string(&element.ring().unpack(key)),
                coeff: coeff.to_string(),
            });
        }
        out.add_assign_term(*key, coeff.to_integer());
    }
    Ok(out)
}

/// Converts the coefficients of an integer element to mod-2 coefficients in
/// the same variables.
pub fn reduce_mod2(element: &Element<BigInt>) -> Result<Element<F2>, RingError> {
    let ring = PolyRing::<F2>::new(element.ring().vars().to_vec())?;
    let mut out = Element::zero(&ring);
    for (key, coeff) in &element.terms {
        out.add_assign_term(*key, F2(coeff.bit(0)));
    }
    Ok(out)
}
