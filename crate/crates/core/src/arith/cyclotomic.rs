//! Exact arithmetic in the cyclotomic fields `Q(zeta_n) = Q[x]/(Phi_n)`.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use super::format_rational;

fn phi_cache() -> &'static RwLock<HashMap<u64, Arc<Vec<BigInt>>>> {
    static CACHE: OnceLock<RwLock<HashMap<u64, Arc<Vec<BigInt>>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Coefficients (ascending degree) of the `n`-th cyclotomic polynomial.
///
/// Computed as `(x^n - 1) / prod_{d | n, d < n} Phi_d` by exact integer
/// division and cached process-wide.
pub fn cyclotomic_polynomial(n: u64) -> Arc<Vec<BigInt>> {
    assert!(n >= 1, "cyclotomic order must be positive");
    if let Some(p) = phi_cache().read().expect("phi cache poisoned").get(&n) {
        return p.clone();
    }
    let mut num = vec![BigInt::zero(); n as usize + 1];
    num[0] = -BigInt::one();
    num[n as usize] = BigInt::one();
    for d in 1..n {
        if n.is_multiple_of(d) {
            let phi_d = cyclotomic_polynomial(d);
            num = poly_div_exact(&num, &phi_d);
        }
    }
    let phi = Arc::new(num);
    phi_cache()
        .write()
        .expect("phi cache poisoned")
        .entry(n)
        .or_insert(phi)
        .clone()
}

fn poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let dn = den.len() - 1;
    assert!(den[dn].is_one(), "divisor must be monic");
    let mut rem = num.to_vec();
    let qlen = num.len() - dn;
    let mut quot = vec![BigInt::zero(); qlen];
    for k in (0..qlen).rev() {
        let c = rem[k + dn].clone();
        if c.is_zero() {
            continue;
        }
        for (i, d) in den.iter().enumerate() {
            rem[k + i] -= &c * d;
        }
        quot[k] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero), "inexact cyclotomic division");
    quot
}

/// Euler phi of a small integer.
pub fn euler_phi(n: u64) -> u64 {
    let mut result = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            while m.is_multiple_of(p) {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

/// An element of `Q(zeta_n)` in the power basis `1, zeta, ..., zeta^(phi(n)-1)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CyclotomicNumber {
    order: u64,
    coeffs: Vec<BigRational>,
}

impl CyclotomicNumber {
    pub fn zero(order: u64) -> Self {
        CyclotomicNumber {
            order,
            coeffs: vec![BigRational::zero(); euler_phi(order) as usize],
        }
    }

    pub fn from_rational(order: u64, q: BigRational) -> Self {
        let mut z = Self::zero(order);
        z.coeffs[0] = q;
        z
    }

    pub fn one(order: u64) -> Self {
        Self::from_rational(order, BigRational::one())
    }

    /// `zeta_order ^ k`.
    pub fn zeta_power(order: u64, k: i64) -> Self {
        let e = k.rem_euclid(order as i64) as usize;
        let mut v = vec![BigRational::zero(); order as usize];
        v[e] = BigRational::one();
        Self::reduce_from(order, v)
    }

    /// Reduces an arbitrary coefficient vector (powers of zeta) modulo `Phi_n`.
    pub fn reduce_from(order: u64, mut coeffs: Vec<BigRational>) -> Self {
        let phi = cyclotomic_polynomial(order);
        let deg = phi.len() - 1;
        if coeffs.len() < deg {
            coeffs.resize(deg, BigRational::zero());
        }
        for k in (deg..coeffs.len()).rev() {
            let c = std::mem::take(&mut coeffs[k]);
            if c.is_zero() {
                continue;
            }
            // x^k = x^(k-deg) * x^deg and x^deg = -sum_{i<deg} phi_i x^i
            for (i, p) in phi.iter().enumerate().take(deg) {
                if !p.is_zero() {
                    coeffs[k - deg + i] -= &c * BigRational::from_integer(p.clone());
                }
            }
        }
        coeffs.truncate(deg);
        CyclotomicNumber { order, coeffs }
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn coefficients(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_rational(&self) -> bool {
        self.coeffs.iter().skip(1).all(Zero::is_zero)
    }

    /// The rational value, when every coefficient beyond degree 0 vanishes.
    pub fn to_rational(&self) -> Option<BigRational> {
        self.is_rational().then(|| self.coeffs[0].clone())
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.order, other.order, "cyclotomic order mismatch");
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        CyclotomicNumber {
            order: self.order,
            coeffs,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        CyclotomicNumber {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        CyclotomicNumber {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| c * q).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.order, other.order, "cyclotomic order mismatch");
        let d = self.coeffs.len();
        let mut prod = vec![BigRational::zero(); (2 * d).saturating_sub(1).max(1)];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        Self::reduce_from(self.order, prod)
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.order);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// The automorphism `zeta -> zeta^j` (`j` coprime to the order).
    pub fn galois(&self, j: u64) -> Self {
        let n = self.order;
        assert_eq!(j.gcd(&n), 1, "Galois exponent must be a unit");
        let mut v = vec![BigRational::zero(); n as usize];
        for (k, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                v[((k as u64 * j) % n) as usize] += c;
            }
        }
        Self::reduce_from(n, v)
    }

    /// Complex conjugation `zeta -> zeta^-1`.
    pub fn conjugate(&self) -> Self {
        self.galois(self.order - 1 + (self.order == 1) as u64)
    }

    /// Embeds into `Q(zeta_m)` for a multiple `m` of the order.
    pub fn lift(&self, m: u64) -> Self {
        assert_eq!(m % self.order, 0, "lift target must be a multiple of the order");
        let step = m / self.order;
        let mut v = vec![BigRational::zero(); m as usize];
        for (k, c) in self.coeffs.iter().enumerate() {
            v[k * step as usize] += c;
        }
        Self::reduce_from(m, v)
    }

    /// `Tr_{Q(zeta_n)/Q}`.
    pub fn trace(&self) -> BigRational {
        let n = self.order;
        let mut acc = Self::zero(n);
        for j in (1..=n).filter(|j| j.gcd(&n) == 1) {
            acc = acc.add(&self.galois(j % n.max(1)));
        }
        acc.to_rational().expect("trace is rational")
    }

    /// `N_{Q(zeta_n)/Q}`.
    pub fn norm(&self) -> BigRational {
        let n = self.order;
        let mut acc = Self::one(n);
        for j in (1..=n).filter(|j| j.gcd(&n) == 1) {
            acc = acc.mul(&self.galois(j % n.max(1)));
        }
        acc.to_rational().expect("norm is rational")
    }
}

impl fmt::Debug for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| match k {
                0 => format_rational(c),
                1 => format!("({})*z{}", format_rational(c), self.order),
                _ => format!("({})*z{}^{}", format_rational(c), self.order, k),
            })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

impl Serialize for CyclotomicNumber {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr {
            order: u64,
            coefficients: Vec<String>,
            display: String,
        }
        Repr {
            order: self.order,
            coefficients: self.coeffs.iter().map(format_rational).collect(),
            display: self.to_string(),
        }
        .serialize(serializer)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn coeffs(n: u64) -> Vec<i64> {
        use num_traits::ToPrimitive;
        cyclotomic_polynomial(n).iter().map(|c| c.to_i64().unwrap()).collect()
    }

    #[test]
    fn known_cyclotomic_polynomials() {
        assert_eq!(coeffs(1), vec![-1, 1]);
        assert_eq!(coeffs(2), vec![1, 1]);
        assert_eq!(coeffs(4), vec![1, 0, 1]);
        assert_eq!(coeffs(6), vec![1, -1, 1]);
        assert_eq!(coeffs(12), vec![1, 0, -1, 0, 1]);
        assert_eq!(coeffs(105).len() - 1, 48);
        assert_eq!(coeffs(105)[7], -2);
    }

    #[test]
    fn zeta_has_order_n() {
        for n in 1..=24 {
            let z = CyclotomicNumber::zeta_power(n, 1);
            assert_eq!(z.pow(n), CyclotomicNumber::one(n), "n = {n}");
        }
    }

    #[test]
    fn trace_of_rational_is_degree_times_value() {
        let q = BigRational::new(3.into(), 7.into());
        for n in [1, 3, 5, 8, 12] {
            let x = CyclotomicNumber::from_rational(n, q.clone());
            assert_eq!(x.trace(), q.clone() * BigRational::from_integer(euler_phi(n).into()));
        }
    }

    #[test]
    fn trace_and_norm_of_roots() {
        // sum of primitive 5th roots is mu(5) = -1
        assert_eq!(CyclotomicNumber::zeta_power(5, 1).trace(), BigRational::from_integer((-1).into()));
        // N(1 - zeta_p) = p
        let one = CyclotomicNumber::one(7);
        let x = one.sub(&CyclotomicNumber::zeta_power(7, 1));
        assert_eq!(x.norm(), BigRational::from_integer(7.into()));
    }

    #[test]
    fn lift_preserves_value() {
        let z = CyclotomicNumber::zeta_power(4, 1);
        let l = z.lift(12);
        assert_eq!(l, CyclotomicNumber::zeta_power(12, 3));
        assert_eq!(l.mul(&l), CyclotomicNumber::from_rational(12, BigRational::from_integer((-1).into())));
    }

    #[test]
    fn conjugation() {
        let z = CyclotomicNumber::zeta_power(8, 1);
        assert_eq!(z.mul(&z.conjugate()), CyclotomicNumber::one(8));
        assert_eq!(CyclotomicNumber::one(1).conjugate(), CyclotomicNumber::one(1));
    }
}
