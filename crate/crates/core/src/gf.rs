//! Arithmetic in GF(2^m) for 1 <= m <= 16.
//!
//! Elements are stored as polynomial coefficient bitmasks: bit `i` of the
//! value is the coefficient of `x^i` (LSB first). GF(2) is the degenerate
//! `m = 1` field, so binary and extension-field code paths share one layer.
//!
//! Multiplication goes through log/antilog tables built once per field.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg::{BitVec, Matrix};

pub const MAX_DEGREE: u32 = 16;

/// Conventional primitive polynomials, indexed by degree.
const DEFAULT_POLYNOMIALS: [u32; 17] = [
    0, 0x3, 0x7, 0xB, 0x13, 0x25, 0x43, 0x89, 0x11D, 0x211, 0x409, 0x805, 0x1053, 0x201B, 0x4443,
    0x8003, 0x1100B,
];

/// Defining data of GF(2^m): degree, reducing polynomial and lookup tables.
pub struct FieldSpec {
    degree: u32,
    polynomial: u32,
    generator: u16,
    // exp has length 2(q-1) so a log sum never needs a modulo.
    exp: Vec<u16>,
    log: Vec<u16>,
}

/// Shared handle to an immutable [`FieldSpec`].
#[derive(Clone)]
pub struct Field(Arc<FieldSpec>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.degree == other.0.degree && self.0.polynomial == other.0.polynomial)
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF(2^{}; {:#x})", self.0.degree, self.0.polynomial)
    }
}

/// Carry-less multiply followed by reduction modulo `poly` of degree `m`.
pub(crate) fn clmul_mod(a: u32, b: u32, poly: u32, m: u32) -> u32 {
    let mut acc: u64 = 0;
    for i in 0..32 {
        if (b >> i) & 1 == 1 {
            acc ^= (a as u64) << i;
        }
    }
    poly_mod(acc, poly as u64, m)
}

fn poly_mod(mut a: u64, poly: u64, m: u32) -> u32 {
    for bit in (m..64).rev() {
        if (a >> bit) & 1 == 1 {
            a ^= poly << (bit - m);
        }
    }
    a as u32
}

fn poly_degree(p: u64) -> Option<u32> {
    (p != 0).then(|| 63 - p.leading_zeros())
}

/// Irreducibility over GF(2) by trial division with every polynomial of
/// degree at most `deg / 2`.
pub fn is_irreducible(poly: u32) -> bool {
    let Some(deg) = poly_degree(poly as u64) else {
        return false;
    };
    if deg == 0 {
        return false;
    }
    for d in 1..=deg / 2 {
        for low in 0..(1u64 << d) {
            let divisor = (1u64 << d) | low;
            if poly_mod(poly as u64, divisor, d) == 0 {
                return false;
            }
        }
    }
    true
}

impl Field {
    /// GF(2^m) with an explicit reducing polynomial (bitmask including the
    /// leading `x^m` term).
    pub fn new(degree: u32, polynomial: u32) -> Result<Field> {
        if degree == 0 || degree > MAX_DEGREE {
            return Err(Error::domain(format!(
                "field degree must be in 1..={MAX_DEGREE}, got {degree}"
            )));
        }
        if poly_degree(polynomial as u64) != Some(degree) {
            return Err(Error::domain(format!(
                "polynomial {polynomial:#x} does not have degree {degree}"
            )));
        }
        if !is_irreducible(polynomial) {
            return Err(Error::domain(format!(
                "polynomial {polynomial:#x} is reducible over GF(2)"
            )));
        }
        let order = 1usize << degree;
        let generator = find_generator(polynomial, degree);
        let mut exp = vec![0u16; 2 * (order - 1)];
        let mut log = vec![0u16; order];
        let mut x = 1u32;
        for i in 0..order - 1 {
            exp[i] = x as u16;
            exp[i + order - 1] = x as u16;
            log[x as usize] = i as u16;
            x = clmul_mod(x, generator as u32, polynomial, degree);
        }
        Ok(Field(Arc::new(FieldSpec {
            degree,
            polynomial,
            generator,
            exp,
            log,
        })))
    }

    /// GF(2^m) with the conventional primitive polynomial for that degree.
    pub fn with_degree(degree: u32) -> Result<Field> {
        if degree == 0 || degree > MAX_DEGREE {
            return Err(Error::domain(format!(
                "field degree must be in 1..={MAX_DEGREE}, got {degree}"
            )));
        }
        Field::new(degree, DEFAULT_POLYNOMIALS[degree as usize])
    }

    pub fn binary() -> Field {
        Field::with_degree(1).expect("GF(2) is valid")
    }

    /// GF(256) reduced by x^8 + x^4 + x^3 + x^2 + 1.
    pub fn gf256() -> Field {
        Field::with_degree(8).expect("GF(256) is valid")
    }

    pub fn degree(&self) -> u32 {
        self.0.degree
    }

    pub fn polynomial(&self) -> u32 {
        self.0.polynomial
    }

    /// Number of elements, `2^m`.
    pub fn order(&self) -> usize {
        1usize << self.0.degree
    }

    pub fn is_binary(&self) -> bool {
        self.0.degree == 1
    }

    /// A primitive element (generator of the multiplicative group).
    pub fn primitive_element(&self) -> u16 {
        self.0.generator
    }

    pub fn element(&self, value: u16) -> Result<FieldElement> {
        if (value as usize) >= self.order() {
            return Err(Error::usage(format!(
                "value {value} out of range for GF(2^{})",
                self.degree()
            )));
        }
        Ok(FieldElement {
            value,
            field: self.clone(),
        })
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement {
            value: 0,
            field: self.clone(),
        }
    }

    pub fn one(&self) -> FieldElement {
        FieldElement {
            value: 1,
            field: self.clone(),
        }
    }

    // Raw arithmetic on representations. Callers guarantee values < 2^m.

    #[inline]
    pub fn add_raw(&self, a: u16, b: u16) -> u16 {
        a ^ b
    }

    #[inline]
    pub fn mul_raw(&self, a: u16, b: u16) -> u16 {
        if a == 0 || b == 0 {
            return 0;
        }
        let spec = &*self.0;
        spec.exp[spec.log[a as usize] as usize + spec.log[b as usize] as usize]
    }

    #[inline]
    pub fn inv_raw(&self, a: u16) -> Option<u16> {
        if a == 0 {
            return None;
        }
        let spec = &*self.0;
        let q1 = self.order() - 1;
        Some(spec.exp[(q1 - spec.log[a as usize] as usize) % q1])
    }

    /// `a^e` with `0^0 = 1`.
    pub fn pow_raw(&self, a: u16, e: u64) -> u16 {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let spec = &*self.0;
        let q1 = (self.order() - 1) as u64;
        let l = (spec.log[a as usize] as u64 * (e % q1)) % q1;
        spec.exp[l as usize]
    }

    /// `generator^i`.
    pub fn exp_raw(&self, i: usize) -> u16 {
        self.0.exp[i % (self.order() - 1)]
    }

    /// Inverse of [`FieldElement::ivec`]: reads an LSB-first coefficient
    /// vector of length `m` back into an element.
    pub fn ivec_inv(&self, bits: &BitVec) -> Result<FieldElement> {
        if bits.len() != self.degree() as usize {
            return Err(Error::usage(format!(
                "coefficient vector has length {}, expected {}",
                bits.len(),
                self.degree()
            )));
        }
        let mut value = 0u16;
        for i in 0..bits.len() {
            if bits.get(i) {
                value |= 1 << i;
            }
        }
        self.element(value)
    }

    /// Matrix of `beta -> a * beta` on coefficient vectors, as raw bits:
    /// entry `(row, col)` is bit `row` of `a * x^col`.
    pub(crate) fn imat_columns(&self, a: u16) -> Vec<u16> {
        (0..self.degree())
            .map(|col| self.mul_raw(a, 1 << col))
            .collect()
    }
}

fn find_generator(poly: u32, degree: u32) -> u16 {
    let q1 = (1u64 << degree) - 1;
    if q1 == 1 {
        return 1;
    }
    let factors = prime_factors(q1);
    'candidates: for g in 2..(1u32 << degree) {
        for &p in &factors {
            if pow_slow(g, q1 / p, poly, degree) == 1 {
                continue 'candidates;
            }
        }
        return g as u16;
    }
    unreachable!("the multiplicative group of a finite field is cyclic")
}

fn pow_slow(mut base: u32, mut e: u64, poly: u32, degree: u32) -> u32 {
    let mut acc = 1u32;
    while e > 0 {
        if e & 1 == 1 {
            acc = clmul_mod(acc, base, poly, degree);
        }
        base = clmul_mod(base, base, poly, degree);
        e >>= 1;
    }
    acc
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// An element of a specific GF(2^m).
#[derive(Clone, PartialEq, Eq)]
pub struct FieldElement {
    value: u16,
    field: Field,
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:#x}@{:?}", self.value, self.field)
    }
}

impl FieldElement {
    pub fn value(&self) -> u16 {
        self.value
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    fn check_same(&self, other: &FieldElement) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch {
                left: self.field.degree(),
                right: other.field.degree(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check_same(other)?;
        Ok(FieldElement {
            value: self.value ^ other.value,
            field: self.field.clone(),
        })
    }

    pub fn mul(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check_same(other)?;
        Ok(FieldElement {
            value: self.field.mul_raw(self.value, other.value),
            field: self.field.clone(),
        })
    }

    pub fn inv(&self) -> Result<FieldElement> {
        let value = self
            .field
            .inv_raw(self.value)
            .ok_or_else(|| Error::domain("zero has no multiplicative inverse"))?;
        Ok(FieldElement {
            value,
            field: self.field.clone(),
        })
    }

    /// Coefficient vector over GF(2), LSB first.
    pub fn ivec(&self) -> BitVec {
        let m = self.field.degree() as usize;
        let mut v = BitVec::zeros(m);
        for i in 0..m {
            if (self.value >> i) & 1 == 1 {
                v.set(i, true);
            }
        }
        v
    }

    /// The m x m binary matrix `M` with `M * ivec(b) = ivec(self * b)`.
    pub fn imat(&self) -> Matrix {
        let m = self.field.degree() as usize;
        let binary = Field::binary();
        let mut out = Matrix::zeros(&binary, m, m);
        for (col, image) in self.field.imat_columns(self.value).into_iter().enumerate() {
            for row in 0..m {
                out.set_raw(row, col, (image >> row) & 1);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f256(v: u16) -> FieldElement {
        Field::gf256().element(v).unwrap()
    }

    #[test]
    fn add_is_xor() {
        let f2 = Field::binary();
        assert_eq!(f2.one().add(&f2.one()).unwrap(), f2.zero());
        assert_eq!(f256(0x53).add(&f256(0xCA)).unwrap().value(), 0x53 ^ 0xCA);
        assert_eq!(f256(0x53).add(&f256(0xCA)).unwrap().value(), 0x99);
        for a in 0..256 {
            assert_eq!(f256(a).add(&f256(0)).unwrap().value(), a);
        }
    }

    #[test]
    fn mul_matches_clmul_oracle() {
        // 0x02 * 0x80 = x^8 = x^4 + x^3 + x^2 + 1
        assert_eq!(f256(0x02).mul(&f256(0x80)).unwrap().value(), 0x1D);
        let field = Field::gf256();
        for a in 0..256u32 {
            for b in 0..256u32 {
                assert_eq!(
                    field.mul_raw(a as u16, b as u16) as u32,
                    clmul_mod(a, b, 0x11D, 8)
                );
            }
        }
    }

    #[test]
    fn inverses() {
        assert_eq!(f256(1).inv().unwrap().value(), 1);
        for a in 1..256 {
            let x = f256(a);
            assert_eq!(x.mul(&x.inv().unwrap()).unwrap().value(), 1);
        }
        assert!(matches!(f256(0).inv(), Err(Error::Domain(_))));
    }

    #[test]
    fn field_mismatch_is_rejected() {
        let a = Field::gf256().one();
        let b = Field::with_degree(4).unwrap().one();
        assert!(matches!(a.add(&b), Err(Error::FieldMismatch { .. })));
        let c = Field::new(8, 0x11B).unwrap().one();
        assert!(a.mul(&c).is_err());
    }

    #[test]
    fn construction_rejects_bad_polynomials() {
        assert!(Field::new(8, 0x100).is_err()); // x^8 is reducible
        assert!(Field::new(8, 0x1D).is_err()); // wrong degree
        assert!(Field::new(0, 1).is_err());
        assert!(Field::new(17, 0x20009).is_err());
        // AES polynomial is irreducible but not primitive; tables still work
        let aes = Field::new(8, 0x11B).unwrap();
        for a in 0..256u32 {
            for b in [1u32, 3, 0x53, 0xCA, 0xFF] {
                assert_eq!(aes.mul_raw(a as u16, b as u16) as u32, clmul_mod(a, b, 0x11B, 8));
            }
        }
    }

    #[test]
    fn default_polynomials_are_irreducible() {
        for m in 1..=MAX_DEGREE {
            let f = Field::with_degree(m).unwrap();
            assert_eq!(f.order(), 1 << m);
        }
    }

    #[test]
    fn ivec_lsb_first() {
        assert!(f256(0).ivec().is_zero());
        let v = f256(0x05).ivec();
        let bits: Vec<bool> = (0..8).map(|i| v.get(i)).collect();
        assert_eq!(bits, [true, false, true, false, false, false, false, false]);
        let field = Field::gf256();
        for a in 0..256 {
            assert_eq!(field.ivec_inv(&f256(a).ivec()).unwrap().value(), a);
        }
        assert!(field.ivec_inv(&BitVec::zeros(7)).is_err());
    }

    #[test]
    fn imat_identity_and_zero() {
        let one = f256(1).imat();
        let zero = f256(0).imat();
        for r in 0..8 {
            for c in 0..8 {
                assert_eq!(one.get_raw(r, c), (r == c) as u16);
                assert_eq!(zero.get_raw(r, c), 0);
            }
        }
    }

    #[test]
    fn imat_acts_as_multiplication() {
        for a in 0..256 {
            let m = f256(a).imat();
            for b in 0..256 {
                let image = m.mul_bits(&f256(b).ivec()).unwrap();
                assert_eq!(image, f256(a).mul(&f256(b)).unwrap().ivec());
            }
        }
    }
}
