//! Exact coefficient fields: arbitrary-precision rationals and prime fields.
//!
//! The algebra engine is generic over [`Field`], a field *object* that owns the
//! arithmetic; elements are plain values (`BigRational`, `u32` residues). The
//! dynamically typed [`FieldElement`] is the interchange form used at API
//! boundaries, where mixing fields is an error rather than a type mismatch.

use std::fmt::{self, Debug, Display};
use std::hash::Hash;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{usage, Error, Result};
use crate::groebner::GroebnerBasis;
use crate::poly::{PolyRing, Polynomial};

/// Default characteristic for the fast mode.
pub const DEFAULT_PRIME: u32 = 32003;

/// Which field a computation runs over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FieldSpec {
    Rationals,
    PrimeField(u32),
}

impl FieldSpec {
    pub fn characteristic(&self) -> u32 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::PrimeField(p) => *p,
        }
    }
}

impl Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "q"),
            FieldSpec::PrimeField(p) => write!(f, "gf:{p}"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = Error;

    /// Accepts `q` or `gf:<p>`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("q") {
            return Ok(FieldSpec::Rationals);
        }
        let Some(rest) = s.strip_prefix("gf:") else {
            return Err(usage(format!(
                "unknown field `{s}` (expected `q` or `gf:<p>`)"
            )));
        };
        let p: u32 = rest
            .trim()
            .parse()
            .map_err(|_| usage(format!("invalid characteristic `{rest}`")))?;
        PrimeField::new(p)?;
        Ok(FieldSpec::PrimeField(p))
    }
}

/// Arithmetic of one concrete field.
pub trait Field: Clone + Debug + Send + Sync + 'static {
    type Elem: Clone + PartialEq + Eq + Hash + Debug + Send + Sync;

    fn spec(&self) -> FieldSpec;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn is_one(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem>;
    fn from_bigint(&self, n: &BigInt) -> Self::Elem;
    /// `num/den`, failing when `den` vanishes in the field.
    fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Result<Self::Elem>;
    /// Plain text form used inside polynomials: `num/den` or a residue.
    fn render(&self, a: &Self::Elem) -> String;
    fn to_dynamic(&self, a: &Self::Elem) -> FieldElement;

    /// Division-free coefficient domain used by the Gröbner engine.
    type Domain: EngineDomain;
    fn domain(&self) -> Self::Domain;
    /// `(s·coeffs, s)`: the coefficients scaled by some nonzero `s` into the domain.
    fn to_domain(&self, coeffs: &[Self::Elem]) -> (Vec<DomainElem<Self>>, Self::Elem);
    fn from_domain(&self, c: &DomainElem<Self>) -> Self::Elem;

    /// Whether [`Field::modular_basis`] is implemented.
    const HAS_MODULAR_ROUTE: bool = false;

    /// A reduced basis assembled from images over prime fields and checked
    /// exactly; `None` when unsupported or unsuccessful.
    fn modular_basis(
        ring: &PolyRing<Self>,
        gens: &[Polynomial<Self::Elem>],
    ) -> Option<GroebnerBasis<Self>> {
        let _ = (ring, gens);
        None
    }

    fn from_i64(&self, n: i64) -> Self::Elem {
        self.from_bigint(&BigInt::from(n))
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// `a -= b * c`.
    fn sub_mul_assign(&self, a: &mut Self::Elem, b: &Self::Elem, c: &Self::Elem) {
        *a = self.sub(a, &self.mul(b, c));
    }
}

pub type DomainElem<F> = <<F as Field>::Domain as EngineDomain>::C;

/// Coefficients of a Gröbner computation that avoids division: reductions
/// take the form `a·p − b·m·g`, and polynomials are kept normalized by
/// dividing out their content.
pub trait EngineDomain: Clone + Debug + Send + Sync + 'static {
    type C: Clone + PartialEq + Debug + Send + Sync;

    fn zero(&self) -> Self::C;
    fn one(&self) -> Self::C;
    fn is_zero(&self, a: &Self::C) -> bool;
    fn is_one(&self, a: &Self::C) -> bool;
    fn neg(&self, a: &Self::C) -> Self::C;
    fn mul(&self, a: &Self::C, b: &Self::C) -> Self::C;
    /// `a·x − b·y`.
    fn mul_sub(&self, a: &Self::C, x: &Self::C, b: &Self::C, y: &Self::C) -> Self::C;
    /// Smallest `(a, b)` with `a·c = b·lead`; `a` is one when `lead` divides `c`.
    fn multipliers(&self, c: &Self::C, lead: &Self::C) -> (Self::C, Self::C);
    /// Divides all coefficients by their content, leading coefficient first,
    /// and returns the divisor.
    fn normalize(&self, coeffs: &mut [&mut Self::C]) -> Self::C;
    /// Size measure for coefficient growth; zero for fixed-size residues.
    fn bits(&self, a: &Self::C) -> u64;
}

/// The integers, as the domain behind [`Rationals`].
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct Integers;

impl EngineDomain for Integers {
    type C = BigInt;

    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }
    fn is_one(&self, a: &BigInt) -> bool {
        a.is_one()
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn mul_sub(&self, a: &BigInt, x: &BigInt, b: &BigInt, y: &BigInt) -> BigInt {
        if a.is_one() {
            x - b * y
        } else {
            a * x - b * y
        }
    }
    fn multipliers(&self, c: &BigInt, lead: &BigInt) -> (BigInt, BigInt) {
        let g = c.gcd(lead);
        let (mut a, mut b) = (lead / &g, c / &g);
        if a.is_negative() {
            a = -a;
            b = -b;
        }
        (a, b)
    }
    fn normalize(&self, coeffs: &mut [&mut BigInt]) -> BigInt {
        let Some(first) = coeffs.first() else {
            return BigInt::one();
        };
        let negative = first.is_negative();
        let mut g = BigInt::zero();
        for c in coeffs.iter() {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        if negative {
            g = -g;
        }
        if !g.is_one() {
            for c in coeffs.iter_mut() {
                **c = &**c / &g;
            }
        }
        g
    }
    fn bits(&self, a: &BigInt) -> u64 {
        a.bits()
    }
}

/// The rational numbers, normalized after every operation.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn spec(&self) -> FieldSpec {
        FieldSpec::Rationals
    }
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn is_one(&self, a: &BigRational) -> bool {
        a.is_one()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn inv(&self, a: &BigRational) -> Result<BigRational> {
        if a.is_zero() {
            return Err(Error::Arithmetic("inversion of zero".into()));
        }
        Ok(a.recip())
    }
    fn from_bigint(&self, n: &BigInt) -> BigRational {
        BigRational::from_integer(n.clone())
    }
    fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Result<BigRational> {
        if den.is_zero() {
            return Err(Error::Arithmetic("division by zero".into()));
        }
        Ok(BigRational::new(num.clone(), den.clone()))
    }
    fn render(&self, a: &BigRational) -> String {
        a.to_string()
    }
    fn to_dynamic(&self, a: &BigRational) -> FieldElement {
        FieldElement::Rational(a.clone())
    }
    fn sub_mul_assign(&self, a: &mut BigRational, b: &BigRational, c: &BigRational) {
        *a -= b * c;
    }

    type Domain = Integers;
    fn domain(&self) -> Integers {
        Integers
    }
    fn to_domain(&self, coeffs: &[BigRational]) -> (Vec<BigInt>, BigRational) {
        let den = coeffs.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        let mut out: Vec<BigInt> = coeffs
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        let mut refs: Vec<&mut BigInt> = out.iter_mut().collect();
        let g = Integers.normalize(&mut refs);
        (out, BigRational::new(den, g))
    }
    fn from_domain(&self, c: &BigInt) -> BigRational {
        BigRational::from_integer(c.clone())
    }

    const HAS_MODULAR_ROUTE: bool = true;

    fn modular_basis(
        ring: &PolyRing<Self>,
        gens: &[Polynomial<BigRational>],
    ) -> Option<GroebnerBasis<Self>> {
        crate::modular::rational_basis(ring, gens)
    }
}

/// `GF(p)` with residues stored as `u32` in `[0, p)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    /// Odd primes below 2^31 only.
    pub fn new(p: u32) -> Result<Self> {
        if p <= 2 || p >= (1 << 31) || !is_prime(p) {
            return Err(usage(format!(
                "characteristic {p} is not an odd prime below 2^31"
            )));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn reduce_u64(&self, v: u64) -> u32 {
        (v % self.p as u64) as u32
    }
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

impl Field for PrimeField {
    type Elem = u32;

    fn spec(&self) -> FieldSpec {
        FieldSpec::PrimeField(self.p)
    }
    #[inline]
    fn zero(&self) -> u32 {
        0
    }
    #[inline]
    fn one(&self) -> u32 {
        1
    }
    #[inline]
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }
    #[inline]
    fn is_one(&self, a: &u32) -> bool {
        *a == 1
    }
    #[inline]
    fn add(&self, a: &u32, b: &u32) -> u32 {
        let s = *a + *b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    #[inline]
    fn sub(&self, a: &u32, b: &u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    #[inline]
    fn neg(&self, a: &u32) -> u32 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    #[inline]
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        self.reduce_u64(*a as u64 * *b as u64)
    }
    fn inv(&self, a: &u32) -> Result<u32> {
        if *a == 0 {
            return Err(Error::Arithmetic("inversion of zero".into()));
        }
        // extended Euclid on (a, p)
        let (mut r0, mut r1) = (self.p as i64, *a as i64);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        debug_assert_eq!(r0, 1);
        Ok(t0.rem_euclid(self.p as i64) as u32)
    }
    fn from_bigint(&self, n: &BigInt) -> u32 {
        let p = BigInt::from(self.p);
        n.mod_floor(&p).to_u32().expect("residue fits in u32")
    }
    fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Result<u32> {
        let d = self.from_bigint(den);
        if d == 0 {
            return Err(Error::Arithmetic(format!(
                "denominator {den} vanishes modulo {}",
                self.p
            )));
        }
        Ok(self.mul(&self.from_bigint(num), &self.inv(&d)?))
    }
    fn render(&self, a: &u32) -> String {
        a.to_string()
    }
    fn to_dynamic(&self, a: &u32) -> FieldElement {
        FieldElement::Modular {
            residue: *a,
            modulus: self.p,
        }
    }
    #[inline]
    fn sub_mul_assign(&self, a: &mut u32, b: &u32, c: &u32) {
        let prod = self.mul(b, c);
        *a = self.sub(a, &prod);
    }

    type Domain = Residues;
    fn domain(&self) -> Residues {
        Residues(*self)
    }
    fn to_domain(&self, coeffs: &[u32]) -> (Vec<u32>, u32) {
        (coeffs.to_vec(), 1)
    }
    fn from_domain(&self, c: &u32) -> u32 {
        *c
    }
}

/// Residues modulo `p`, as the domain behind [`PrimeField`]; normalization
/// makes polynomials monic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Residues(pub PrimeField);

impl EngineDomain for Residues {
    type C = u32;

    fn zero(&self) -> u32 {
        0
    }
    fn one(&self) -> u32 {
        1
    }
    #[inline]
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }
    #[inline]
    fn is_one(&self, a: &u32) -> bool {
        *a == 1
    }
    fn neg(&self, a: &u32) -> u32 {
        self.0.neg(a)
    }
    #[inline]
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        self.0.mul(a, b)
    }
    #[inline]
    fn mul_sub(&self, a: &u32, x: &u32, b: &u32, y: &u32) -> u32 {
        let p = self.0.p as u64;
        let ax = if *a == 1 {
            *x as u64
        } else {
            *a as u64 * *x as u64 % p
        };
        let by = *b as u64 * *y as u64 % p;
        ((ax + p - by) % p) as u32
    }
    fn multipliers(&self, c: &u32, lead: &u32) -> (u32, u32) {
        if *lead == 1 {
            (1, *c)
        } else {
            (
                1,
                self.0
                    .mul(c, &self.0.inv(lead).expect("nonzero leading coefficient")),
            )
        }
    }
    fn normalize(&self, coeffs: &mut [&mut u32]) -> u32 {
        let Some(lead) = coeffs.first().map(|c| **c) else {
            return 1;
        };
        if lead != 1 {
            let inv = self.0.inv(&lead).expect("nonzero leading coefficient");
            for c in coeffs.iter_mut() {
                **c = self.0.mul(c, &inv);
            }
        }
        lead
    }
    fn bits(&self, _: &u32) -> u64 {
        0
    }
}

/// A field element that carries its field; used where operands may come from
/// different sources and mixing must be rejected.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum FieldElement {
    Rational(BigRational),
    Modular { residue: u32, modulus: u32 },
}

impl FieldElement {
    pub fn rational(num: i64, den: i64) -> Result<Self> {
        Rationals
            .from_ratio(&BigInt::from(num), &BigInt::from(den))
            .map(FieldElement::Rational)
    }

    pub fn modular(value: i64, p: u32) -> Result<Self> {
        let field = PrimeField::new(p)?;
        Ok(field.to_dynamic(&field.from_i64(value)))
    }

    pub fn spec(&self) -> FieldSpec {
        match self {
            FieldElement::Rational(_) => FieldSpec::Rationals,
            FieldElement::Modular { modulus, .. } => FieldSpec::PrimeField(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldElement::Rational(r) => r.is_zero(),
            FieldElement::Modular { residue, .. } => *residue == 0,
        }
    }

    /// Maps a rational into `GF(p)`; used when instantiating parameters.
    pub fn to_modular(&self, p: u32) -> Result<FieldElement> {
        match self {
            FieldElement::Rational(r) => {
                let field = PrimeField::new(p)?;
                let v = field.from_ratio(r.numer(), r.denom())?;
                Ok(field.to_dynamic(&v))
            }
            FieldElement::Modular { modulus, .. } if *modulus == p => Ok(self.clone()),
            FieldElement::Modular { modulus, .. } => Err(usage(format!(
                "cannot map an element of GF({modulus}) into GF({p})"
            ))),
        }
    }
}

impl Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldElement::Rational(r) => write!(f, "{r}"),
            FieldElement::Modular { residue, modulus } => write!(f, "{residue} mod {modulus}"),
        }
    }
}

impl Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        Display::fmt(self, f)
    }
}

fn check_same(a: &FieldElement, b: &FieldElement) -> Result<()> {
    if a.spec() != b.spec() {
        return Err(usage(format!(
            "mixed-field operands: {} and {}",
            a.spec(),
            b.spec()
        )));
    }
    Ok(())
}

fn modular_field(modulus: u32) -> PrimeField {
    PrimeField { p: modulus }
}

pub fn field_add(a: &FieldElement, b: &FieldElement) -> Result<FieldElement> {
    check_same(a, b)?;
    Ok(match (a, b) {
        (FieldElement::Rational(x), FieldElement::Rational(y)) => FieldElement::Rational(x + y),
        (
            FieldElement::Modular {
                residue: x,
                modulus,
            },
            FieldElement::Modular { residue: y, .. },
        ) => modular_field(*modulus).to_dynamic(&modular_field(*modulus).add(x, y)),
        _ => unreachable!(),
    })
}

pub fn field_mul(a: &FieldElement, b: &FieldElement) -> Result<FieldElement> {
    check_same(a, b)?;
    Ok(match (a, b) {
        (FieldElement::Rational(x), FieldElement::Rational(y)) => FieldElement::Rational(x * y),
        (
            FieldElement::Modular {
                residue: x,
                modulus,
            },
            FieldElement::Modular { residue: y, .. },
        ) => modular_field(*modulus).to_dynamic(&modular_field(*modulus).mul(x, y)),
        _ => unreachable!(),
    })
}

pub fn field_inv(a: &FieldElement) -> Result<FieldElement> {
    match a {
        FieldElement::Rational(x) => Rationals.inv(x).map(FieldElement::Rational),
        FieldElement::Modular { residue, modulus } => {
            let field = modular_field(*modulus);
            Ok(field.to_dynamic(&field.inv(residue)?))
        }
    }
}

pub fn field_neg(a: &FieldElement) -> FieldElement {
    match a {
        FieldElement::Rational(x) => FieldElement::Rational(-x),
        FieldElement::Modular { residue, modulus } => {
            let field = modular_field(*modulus);
            field.to_dynamic(&field.neg(residue))
        }
    }
}

/// Converts an interchange element into the concrete field `field`.
pub fn from_dynamic<F: Field>(field: &F, a: &FieldElement) -> Result<F::Elem> {
    match (field.spec(), a) {
        (_, FieldElement::Rational(r)) => field.from_ratio(r.numer(), r.denom()),
        (FieldSpec::PrimeField(p), FieldElement::Modular { residue, modulus }) if p == *modulus => {
            Ok(field.from_bigint(&BigInt::from(*residue)))
        }
        (spec, other) => Err(usage(format!(
            "element {other} does not belong to field {spec}"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> FieldElement {
        FieldElement::rational(n, d).unwrap()
    }

    fn gf(v: i64, p: u32) -> FieldElement {
        FieldElement::modular(v, p).unwrap()
    }

    #[test]
    fn rational_examples() {
        assert_eq!(field_add(&q(1, 2), &q(1, 3)).unwrap(), q(5, 6));
        assert_eq!(field_add(&q(0, 1), &q(7, 3)).unwrap(), q(7, 3));
        assert_eq!(field_mul(&q(2, 3), &q(3, 4)).unwrap(), q(1, 2));
        assert_eq!(field_inv(&q(1, 1)).unwrap(), q(1, 1));
    }

    #[test]
    fn modular_examples() {
        assert_eq!(field_add(&gf(5, 7), &gf(4, 7)).unwrap(), gf(2, 7));
        assert_eq!(field_inv(&gf(3, 7)).unwrap(), gf(5, 7));
        assert_eq!(gf(-1, 7), gf(6, 7));
    }

    #[test]
    fn errors() {
        assert!(matches!(
            field_add(&q(1, 2), &gf(1, 7)),
            Err(Error::Usage(_))
        ));
        assert!(matches!(
            field_mul(&gf(1, 11), &gf(1, 7)),
            Err(Error::Usage(_))
        ));
        assert!(matches!(field_inv(&q(0, 1)), Err(Error::Arithmetic(_))));
        assert!(matches!(field_inv(&gf(0, 7)), Err(Error::Arithmetic(_))));
        assert!(PrimeField::new(2).is_err());
        assert!(PrimeField::new(9).is_err());
        assert!(FieldElement::rational(1, 0).is_err());
    }

    #[test]
    fn rendering() {
        assert_eq!(q(-3, 6).to_string(), "-1/2");
        assert_eq!(q(4, 2).to_string(), "2");
        assert_eq!(gf(10, 7).to_string(), "3 mod 7");
        assert_eq!(
            "gf:32003".parse::<FieldSpec>().unwrap(),
            FieldSpec::PrimeField(32003)
        );
        assert_eq!("q".parse::<FieldSpec>().unwrap(), FieldSpec::Rationals);
        assert!("gf:32002".parse::<FieldSpec>().is_err());
        assert!("r".parse::<FieldSpec>().is_err());
    }

    #[test]
    fn modular_image_of_rationals() {
        assert_eq!(q(1, 2).to_modular(7).unwrap(), gf(4, 7));
        assert!(q(1, 7).to_modular(7).is_err());
    }

    fn arb_q() -> impl Strategy<Value = FieldElement> {
        (-50i64..50, 1i64..20).prop_map(|(n, d)| q(n, d))
    }

    fn arb_gf() -> impl Strategy<Value = FieldElement> {
        (0i64..32003).prop_map(|v| gf(v, DEFAULT_PRIME))
    }

    fn check_axioms(a: &FieldElement, b: &FieldElement, c: &FieldElement) {
        let ab_c = field_add(&field_add(a, b).unwrap(), c).unwrap();
        let a_bc = field_add(a, &field_add(b, c).unwrap()).unwrap();
        assert_eq!(ab_c, a_bc);
        let m1 = field_mul(&field_mul(a, b).unwrap(), c).unwrap();
        let m2 = field_mul(a, &field_mul(b, c).unwrap()).unwrap();
        assert_eq!(m1, m2);
        let lhs = field_mul(a, &field_add(b, c).unwrap()).unwrap();
        let rhs = field_add(&field_mul(a, b).unwrap(), &field_mul(a, c).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
        assert!(field_add(a, &field_neg(a)).unwrap().is_zero());
        if !a.is_zero() {
            let one = field_mul(a, &field_inv(a).unwrap()).unwrap();
            let expected = match a.spec() {
                FieldSpec::Rationals => q(1, 1),
                FieldSpec::PrimeField(p) => gf(1, p),
            };
            assert_eq!(one, expected);
        }
    }

    proptest! {
        #[test]
        fn rational_field_axioms(a in arb_q(), b in arb_q(), c in arb_q()) {
            check_axioms(&a, &b, &c);
        }

        #[test]
        fn prime_field_axioms(a in arb_gf(), b in arb_gf(), c in arb_gf()) {
            check_axioms(&a, &b, &c);
        }

        #[test]
        fn canonical_form_is_unique(n in -40i64..40, d in 1i64..15, k in 1i64..6) {
            // n/d and (kn)/(kd) are the same number and must render identically
            let a = q(n, d);
            let b = q(k * n, k * d);
            prop_assert_eq!(a.to_string(), b.to_string());
            prop_assert_eq!(a, b);
        }
    }
}
