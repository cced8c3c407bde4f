//! Coefficient rings: checked integers, exact rationals, cyclotomic fields,
//! and Laurent polynomials in the Hecke parameter `v` over any of them.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// A commutative ring with exact equality.
pub trait Ring: Clone + PartialEq + fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn from_int(n: i64) -> Self;

    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }
}

impl Ring for i64 {
    fn zero() -> Self {
        0
    }
    fn one() -> Self {
        1
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn add(&self, other: &Self) -> Self {
        self.checked_add(*other).expect("integer overflow")
    }
    fn mul(&self, other: &Self) -> Self {
        self.checked_mul(*other).expect("integer overflow")
    }
    fn neg(&self) -> Self {
        self.checked_neg().expect("integer overflow")
    }
    fn from_int(n: i64) -> Self {
        n
    }
}

pub type Rational = BigRational;

pub fn rzero() -> Rational {
    <BigRational as Zero>::zero()
}

pub fn rone() -> Rational {
    <BigRational as One>::one()
}

pub fn rat(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl Ring for Rational {
    fn zero() -> Self {
        rzero()
    }
    fn one() -> Self {
        rone()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn from_int(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
}

/// Coefficients of the `n`-th cyclotomic polynomial, constant term first.
pub fn cyclotomic_polynomial(n: u32) -> Vec<i64> {
    assert!(n > 0);
    // x^n - 1 divided by Phi_d for all proper divisors d
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            num = exact_div_monic(&num, &cyclotomic_polynomial(d));
        }
    }
    num
}

fn exact_div_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let qd = rem.len() - 1 - dd;
    let mut q = vec![0i64; qd + 1];
    for k in (0..=qd).rev() {
        let c = rem[k + dd];
        q[k] = c;
        for (j, &b) in den.iter().enumerate() {
            rem[k + j] -= c * b;
        }
    }
    debug_assert!(rem.iter().all(|&x| x == 0));
    q
}

fn totient(n: u32) -> u32 {
    (1..=n).filter(|k| k.gcd(&n) == 1).count() as u32
}

/// An element of the cyclotomic field `Q(z)`, `z` a primitive `order`-th root of
/// unity, stored in the power basis `1, z, ..., z^{phi(order)-1}`.
#[derive(Clone)]
pub struct Cyclotomic {
    order: u32,
    coeffs: Vec<Rational>,
}

impl Cyclotomic {
    pub fn rational(r: Rational) -> Self {
        Self { order: 1, coeffs: vec![r] }
    }

    pub fn int(n: i64) -> Self {
        Self::rational(Rational::from_int(n))
    }

    /// `z^k` for `z = exp(2 pi i / order)`.
    pub fn root_of_unity(order: u32, k: i64) -> Self {
        let k = k.rem_euclid(order as i64) as usize;
        let mut c = vec![rzero(); k + 1];
        c[k] = rone();
        Self::reduce_poly(order, c)
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    fn reduce_poly(order: u32, mut c: Vec<Rational>) -> Self {
        let phi = cyclotomic_polynomial(order);
        let deg = phi.len() - 1;
        while c.len() > deg {
            let top = c.pop().expect("nonempty");
            if Zero::is_zero(&top) {
                continue;
            }
            let shift = c.len() - deg;
            for (j, &p) in phi.iter().take(deg).enumerate() {
                c[shift + j] = &c[shift + j] - &top * Rational::from_int(p);
            }
        }
        c.resize(deg, rzero());
        Self { order, coeffs: c }
    }

    /// Re-expresses the element in `Q(z_m)` where `order | m`.
    fn lift_to(&self, m: u32) -> Self {
        if m == self.order {
            return self.clone();
        }
        assert_eq!(m % self.order, 0);
        let step = (m / self.order) as usize;
        let mut c = vec![rzero(); step * self.coeffs.len().max(1)];
        for (i, x) in self.coeffs.iter().enumerate() {
            c[i * step] = x.clone();
        }
        Self::reduce_poly(m, c)
    }

    fn common(&self, other: &Self) -> (Self, Self) {
        let m = self.order.lcm(&other.order);
        (self.lift_to(m), other.lift_to(m))
    }

    /// The element as a rational number, if it is one.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.coeffs.iter().skip(1).all(Zero::is_zero) {
            Some(self.coeffs.first().cloned().unwrap_or_else(rzero))
        } else {
            None
        }
    }

    pub fn as_integer(&self) -> Option<i64> {
        self.as_rational().filter(|r| r.is_integer()).and_then(|r| r.to_integer().to_i64())
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Self { order: self.order, coeffs: self.coeffs.iter().map(|c| c * r).collect() }
    }

    /// Multiplicative inverse, by solving the multiplication-by-self system over Q.
    pub fn inverse(&self) -> Option<Self> {
        if Ring::is_zero(self) {
            return None;
        }
        let n = self.coeffs.len();
        // column j = self * z^j
        let mut m: Vec<Vec<Rational>> = vec![vec![rzero(); n + 1]; n];
        for j in 0..n {
            let zj = Self::root_of_unity(self.order, j as i64);
            let col = Ring::mul(self, &zj).lift_to(self.order);
            for i in 0..n {
                m[i][j] = col.coeffs[i].clone();
            }
        }
        m[0][n] = rone();
        let sol = solve_rational(m, n)?;
        Some(Self { order: self.order, coeffs: sol })
    }

    /// Complex conjugate (`z -> z^{-1}`).
    pub fn conj(&self) -> Self {
        let mut acc = Self::zero();
        for (i, c) in self.coeffs.iter().enumerate() {
            if !Zero::is_zero(c) {
                acc = Ring::add(&acc, &Self::root_of_unity(self.order, -(i as i64)).scale(c));
            }
        }
        acc
    }
}

/// Gaussian elimination on an augmented `n x (n+1)` system.
fn solve_rational(mut m: Vec<Vec<Rational>>, n: usize) -> Option<Vec<Rational>> {
    for col in 0..n {
        let p = (col..n).find(|&r| !Zero::is_zero(&m[r][col]))?;
        m.swap(col, p);
        let inv = rone() / m[col][col].clone();
        for c in col..=n {
            m[col][c] = &m[col][c] * &inv;
        }
        for r in 0..n {
            if r != col && !Zero::is_zero(&m[r][col]) {
                let f = m[r][col].clone();
                for c in col..=n {
                    m[r][c] = &m[r][c] - &f * &m[col][c];
                }
            }
        }
    }
    Some(m.into_iter().map(|row| row[n].clone()).collect())
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = self.common(other);
        a.coeffs == b.coeffs
    }
}

impl Eq for Cyclotomic {}

impl Ring for Cyclotomic {
    fn zero() -> Self {
        Self::int(0)
    }
    fn one() -> Self {
        Self::int(1)
    }
    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }
    fn add(&self, other: &Self) -> Self {
        let (a, b) = self.common(other);
        Self { order: a.order, coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect() }
    }
    fn mul(&self, other: &Self) -> Self {
        let (a, b) = self.common(other);
        let mut c = vec![rzero(); a.coeffs.len() + b.coeffs.len()];
        for (i, x) in a.coeffs.iter().enumerate() {
            if Zero::is_zero(x) {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                c[i + j] = &c[i + j] + x * y;
            }
        }
        Self::reduce_poly(a.order, c)
    }
    fn neg(&self) -> Self {
        Self { order: self.order, coeffs: self.coeffs.iter().map(|x| -x).collect() }
    }
    fn from_int(n: i64) -> Self {
        Self::int(n)
    }
}

impl From<i64> for Cyclotomic {
    fn from(n: i64) -> Self {
        Self::int(n)
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Exact string encoding: `p/q` for rationals, otherwise
/// `Q(z<order>)[c0,c1,...]` in the power basis.
impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(r) = self.as_rational() {
            return write!(f, "{r}");
        }
        write!(f, "Q(z{})[", self.order)?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str("]")
    }
}

impl Cyclotomic {
    /// Inverse of the `Display` encoding.
    pub fn parse(s: &str) -> Option<Self> {
        let s = s.trim();
        if let Some(rest) = s.strip_prefix("Q(z") {
            let (ord, body) = rest.split_once(")[")?;
            let order: u32 = ord.parse().ok()?;
            let body = body.strip_suffix(']')?;
            let coeffs: Option<Vec<Rational>> = body.split(',').map(parse_rational).collect();
            let coeffs = coeffs?;
            if order == 0 || coeffs.len() != totient(order) as usize {
                return None;
            }
            Some(Self { order, coeffs })
        } else {
            parse_rational(s).map(Self::rational)
        }
    }
}

pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let d: BigInt = d.trim().parse().ok()?;
            if Zero::is_zero(&d) {
                return None;
            }
            Some(BigRational::new(n.trim().parse().ok()?, d))
        }
        None => Some(BigRational::from_integer(s.parse().ok()?)),
    }
}

/// Laurent polynomial in `v` with coefficients in `R`; zero coefficients are never stored.
#[derive(Clone, PartialEq)]
pub struct Laurent<R: Ring> {
    terms: BTreeMap<i32, R>,
}

pub type LaurentZ = Laurent<i64>;

impl<R: Ring> Laurent<R> {
    pub fn zero() -> Self {
        Self { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::monomial(R::one(), 0)
    }

    pub fn constant(c: R) -> Self {
        Self::monomial(c, 0)
    }

    pub fn monomial(c: R, exp: i32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        Self { terms }
    }

    /// `v^exp`.
    pub fn v_pow(exp: i32) -> Self {
        Self::monomial(R::one(), exp)
    }

    pub fn from_terms(iter: impl IntoIterator<Item = (i32, R)>) -> Self {
        let mut out = Self::zero();
        for (e, c) in iter {
            out.add_term(e, &c);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, &R)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn coeff(&self, exp: i32) -> R {
        self.terms.get(&exp).cloned().unwrap_or_else(R::zero)
    }

    pub fn min_exp(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i32> {
        self.terms.keys().next_back().copied()
    }

    pub fn add_term(&mut self, exp: i32, c: &R) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(exp).or_insert_with(R::zero);
        *slot = slot.add(c);
        if slot.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn add_assign(&mut self, other: &Self) {
        for (e, c) in &other.terms {
            self.add_term(*e, c);
        }
    }

    pub fn scale(&self, c: &R) -> Self {
        Self::from_terms(self.terms.iter().map(|(e, x)| (*e, x.mul(c))))
    }

    /// Multiplication by `v^k`.
    pub fn shift(&self, k: i32) -> Self {
        Self { terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect() }
    }

    /// Substitution `v -> v^k`.
    pub fn substitute_power(&self, k: i32) -> Self {
        assert!(k != 0);
        Self::from_terms(self.terms.iter().map(|(e, c)| (e * k, c.clone())))
    }

    /// Inverse of [`substitute_power`](Self::substitute_power), if every exponent is divisible by `k`.
    pub fn unsubstitute_power(&self, k: i32) -> Option<Self> {
        if self.terms.keys().any(|e| e % k != 0) {
            return None;
        }
        Some(Self { terms: self.terms.iter().map(|(e, c)| (e / k, c.clone())).collect() })
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> Laurent<S> {
        Laurent::from_terms(self.terms.iter().map(|(e, c)| (*e, f(c))))
    }

    /// Exact division by a polynomial whose lowest and highest coefficients are 1.
    pub fn div_exact(&self, den: &Laurent<R>) -> Option<Self> {
        if den.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let dlo = den.min_exp().expect("nonzero");
        let dhi = den.max_exp().expect("nonzero");
        if den.coeff(dhi) != R::one() {
            return None;
        }
        let mut rem = self.clone();
        let mut q = Self::zero();
        while let Some(top) = rem.max_exp() {
            if top - (dhi - dlo) < rem.min_exp().expect("nonzero") {
                return None;
            }
            let c = rem.coeff(top);
            let e = top - dhi;
            let t = Self::monomial(c, e);
            q.add_assign(&t);
            rem = Ring::sub(&rem, &Ring::mul(&t, den));
        }
        Some(q)
    }
}

impl<R: Ring> Ring for Laurent<R> {
    fn zero() -> Self {
        Laurent::zero()
    }
    fn one() -> Self {
        Laurent::one()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }
    fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                out.add_term(e1 + e2, &c1.mul(c2));
            }
        }
        out
    }
    fn neg(&self) -> Self {
        Self { terms: self.terms.iter().map(|(e, c)| (*e, c.neg())).collect() }
    }
    fn from_int(n: i64) -> Self {
        Self::constant(R::from_int(n))
    }
}

impl<R: Ring> fmt::Debug for Laurent<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(e, c)| alloc::format!("({c:?})v^{e}")).collect();
        f.write_str(&parts.join(" + "))
    }
}

impl<R: Ring> Add for &Laurent<R> {
    type Output = Laurent<R>;
    fn add(self, rhs: Self) -> Laurent<R> {
        Ring::add(self, rhs)
    }
}

impl<R: Ring> Sub for &Laurent<R> {
    type Output = Laurent<R>;
    fn sub(self, rhs: Self) -> Laurent<R> {
        Ring::sub(self, rhs)
    }
}

impl<R: Ring> Mul for &Laurent<R> {
    type Output = Laurent<R>;
    fn mul(self, rhs: Self) -> Laurent<R> {
        Ring::mul(self, rhs)
    }
}

impl<R: Ring> Neg for &Laurent<R> {
    type Output = Laurent<R>;
    fn neg(self) -> Laurent<R> {
        Ring::neg(self)
    }
}

/// `v^L - v^{-L}`, the linear coefficient of the quadratic relation.
pub fn quadratic_coefficient<R: Ring>(l: i32) -> Laurent<R> {
    Laurent::from_terms([(l, R::one()), (-l, R::one().neg())])
}

/// Lifts an integer Laurent polynomial into another coefficient ring.
pub fn embed<R: Ring>(p: &LaurentZ) -> Laurent<R> {
    p.map(|c| R::from_int(*c))
}

pub fn rational_to_i64(r: &Rational) -> Option<i64> {
    if r.is_integer() {
        r.to_integer().to_i64()
    } else {
        None
    }
}

pub fn abs_rational(r: &Rational) -> Rational {
    r.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(2), vec![1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn roots_of_unity_arithmetic() {
        let z3 = Cyclotomic::root_of_unity(3, 1);
        // 1 + z + z^2 = 0
        let s = Ring::add(&Ring::add(&Cyclotomic::int(1), &z3), &Ring::mul(&z3, &z3));
        assert!(Ring::is_zero(&s));
        // z_4^2 = -1 = z_2
        let i = Cyclotomic::root_of_unity(4, 1);
        assert_eq!(Ring::mul(&i, &i), Cyclotomic::int(-1));
        assert_eq!(Cyclotomic::root_of_unity(2, 1), Cyclotomic::int(-1));
        // mixed orders: z_3 * z_4 has order 12
        let p = Ring::mul(&z3, &i);
        assert_eq!(p.order(), 12);
        let inv = p.inverse().unwrap();
        assert_eq!(Ring::mul(&p, &inv), Cyclotomic::int(1));
        assert_eq!(p.conj(), inv);
    }

    #[test]
    fn cyclotomic_string_roundtrip() {
        let x = Ring::add(&Cyclotomic::root_of_unity(5, 2), &Cyclotomic::rational(rat(3, 7)));
        let s = alloc::format!("{x}");
        assert_eq!(Cyclotomic::parse(&s), Some(x));
        assert_eq!(Cyclotomic::parse("-5/10"), Some(Cyclotomic::rational(rat(-1, 2))));
    }

    #[test]
    fn laurent_quadratic_and_division() {
        let c: LaurentZ = quadratic_coefficient(1);
        assert_eq!(c.coeff(1), 1);
        assert_eq!(c.coeff(-1), -1);
        // (1 + v^2)(1 - v^2 + v^4) / (1 + v^2)
        let a = LaurentZ::from_terms([(0, 1), (2, 1)]);
        let b = LaurentZ::from_terms([(0, 1), (2, -1), (4, 1)]);
        assert_eq!(Ring::mul(&a, &b).div_exact(&a), Some(b.clone()));
        assert_eq!(b.div_exact(&a), None);
        assert_eq!(a.substitute_power(2).unsubstitute_power(2), Some(a));
    }
}
