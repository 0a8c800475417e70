//! Exact arithmetic in the ring of cyclotomic integers `Z[ζ_e]`.
//!
//! Values are stored in the power basis `1, ζ, …, ζ^{e-1}` and kept in a
//! canonical form: the coefficient vector is reduced modulo the cyclotomic
//! polynomial `Φ_e`, so every index `≥ φ(e)` is zero. Equality of values of the
//! same order is therefore equality of coefficient vectors.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::AlgebraError;

/// Integer coefficients of `Φ_e`, lowest degree first.
pub fn cyclotomic_polynomial(e: u32) -> Arc<Vec<i64>> {
    static CACHE: OnceLock<RwLock<HashMap<u32, Arc<Vec<i64>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| RwLock::new(HashMap::new()));
    if let Some(poly) = cache.read().unwrap().get(&e) {
        return poly.clone();
    }
    assert!(e >= 1, "cyclotomic order must be positive");
    // Φ_e = (x^e - 1) / Π_{d | e, d < e} Φ_d
    let mut num = vec![0i64; e as usize + 1];
    num[0] = -1;
    num[e as usize] = 1;
    for d in 1..e {
        if e.is_multiple_of(d) {
            let div = cyclotomic_polynomial(d);
            num = poly_div_exact(&num, &div);
        }
    }
    let poly = Arc::new(num);
    cache.write().unwrap().insert(e, poly.clone());
    poly
}

fn poly_div_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dn = den.len() - 1;
    let nn = rem.len() - 1;
    let mut quot = vec![0i64; nn - dn + 1];
    debug_assert_eq!(den[dn], 1);
    for i in (0..=nn - dn).rev() {
        let c = rem[i + dn];
        quot[i] = c;
        if c != 0 {
            for (j, &d) in den.iter().enumerate() {
                rem[i + j] -= c * d;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    quot
}

/// Euler's totient.
pub fn totient(n: u32) -> u32 {
    let mut n = n;
    let mut result = n;
    let mut q = 2;
    while q * q <= n {
        if n.is_multiple_of(q) {
            while n.is_multiple_of(q) {
                n /= q;
            }
            result -= result / q;
        }
        q += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// An element of `Z[ζ_e]` in canonical power-basis form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CyclotomicInt {
    order: u32,
    coeffs: Vec<BigInt>,
}

impl CyclotomicInt {
    pub fn zero(order: u32) -> Self {
        assert!(order >= 1);
        CyclotomicInt {
            order,
            coeffs: vec![BigInt::zero(); order as usize],
        }
    }

    pub fn one(order: u32) -> Self {
        Self::from_int(order, 1)
    }

    pub fn from_int(order: u32, n: impl Into<BigInt>) -> Self {
        let mut z = Self::zero(order);
        z.coeffs[0] = n.into();
        z
    }

    /// `ζ_e^k`.
    pub fn root_of_unity(order: u32, k: i64) -> Self {
        let mut z = Self::zero(order);
        let idx = k.rem_euclid(order as i64) as usize;
        z.coeffs[idx] = BigInt::one();
        z.reduce();
        z
    }

    /// Builds a value from raw (not necessarily reduced) power-basis coefficients.
    /// Exponents are taken modulo `order`.
    pub fn from_coeffs<T: Into<BigInt>>(order: u32, raw: impl IntoIterator<Item = T>) -> Self {
        let mut z = Self::zero(order);
        for (i, c) in raw.into_iter().enumerate() {
            z.coeffs[i % order as usize] += c.into();
        }
        z.reduce();
        z
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    fn reduce(&mut self) {
        let e = self.order;
        let phi = cyclotomic_polynomial(e);
        let deg = phi.len() - 1;
        for i in (deg..e as usize).rev() {
            if self.coeffs[i].is_zero() {
                continue;
            }
            let c = std::mem::take(&mut self.coeffs[i]);
            for (j, &pj) in phi.iter().enumerate().take(deg) {
                if pj != 0 {
                    self.coeffs[i - deg + j] -= &c * pj;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// The rational integer this value equals, if it is one.
    pub fn as_integer(&self) -> Option<&BigInt> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    pub fn as_i64(&self) -> Option<i64> {
        self.as_integer().and_then(|n| n.to_i64())
    }

    /// Re-expresses the value in `Z[ζ_{e'}]` via `ζ_e ↦ ζ_{e'}^{e'/e}`.
    pub fn embed(&self, new_order: u32) -> Result<Self, AlgebraError> {
        if !new_order.is_multiple_of(self.order) {
            return Err(AlgebraError::BadEmbedding {
                from: self.order,
                to: new_order,
            });
        }
        if new_order == self.order {
            return Ok(self.clone());
        }
        let step = (new_order / self.order) as usize;
        let mut z = Self::zero(new_order);
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                z.coeffs[i * step] = c.clone();
            }
        }
        z.reduce();
        Ok(z)
    }

    /// Lifts both operands to the lcm of their orders.
    pub fn common_order(a: &Self, b: &Self) -> u32 {
        a.order.lcm(&b.order)
    }

    fn lifted(&self, order: u32) -> std::borrow::Cow<'_, Self> {
        if self.order == order {
            std::borrow::Cow::Borrowed(self)
        } else {
            std::borrow::Cow::Owned(self.embed(order).expect("order divides lcm"))
        }
    }

    /// Complex conjugation, `ζ ↦ ζ^{-1}`.
    pub fn conj(&self) -> Self {
        self.galois(-1)
    }

    /// The Galois automorphism `ζ ↦ ζ^k`, `gcd(k, e) = 1`.
    pub fn galois(&self, k: i64) -> Self {
        let e = self.order as i64;
        debug_assert!(e == 1 || k.rem_euclid(e).gcd(&e) == 1);
        let mut z = Self::zero(self.order);
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                let j = ((i as i64) * k).rem_euclid(e) as usize;
                z.coeffs[j] += c;
            }
        }
        z.reduce();
        z
    }

    pub fn scale(&self, n: &BigInt) -> Self {
        CyclotomicInt {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| c * n).collect(),
        }
    }

    /// Exact division by a rational integer. Since the power basis below
    /// `φ(e)` is an integral basis, divisibility is coefficientwise.
    pub fn div_int(&self, n: &BigInt) -> Option<Self> {
        if n.is_zero() {
            return None;
        }
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            let (q, r) = c.div_rem(n);
            if !r.is_zero() {
                return None;
            }
            coeffs.push(q);
        }
        Some(CyclotomicInt {
            order: self.order,
            coeffs,
        })
    }

    /// Product of all non-trivial Galois conjugates; `self * cofactor` is the norm.
    pub fn norm_cofactor(&self) -> Self {
        let e = self.order as i64;
        let mut acc = Self::one(self.order);
        for k in 2..=e.max(2) {
            if k >= e && e > 1 {
                break;
            }
            if k.gcd(&e) == 1 {
                acc = &acc * &self.galois(k);
            }
        }
        acc
    }

    /// Exact quotient `self / d` in `Z[ζ_e]`, or `None` if `d` does not divide.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let order = Self::common_order(self, d);
        let a = self.lifted(order);
        let d = d.lifted(order);
        if d.is_zero() {
            return None;
        }
        if let Some(n) = d.as_integer() {
            return a.div_int(n);
        }
        let cof = d.norm_cofactor();
        let norm = &*d * &cof;
        let n = norm.as_integer()?.clone();
        (&*a * &cof).div_int(&n)
    }

    pub fn pow(&self, mut k: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.order);
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            k >>= 1;
        }
        acc
    }

    /// Numerical value, for diagnostics only.
    pub fn to_complex(&self) -> (f64, f64) {
        let e = self.order as f64;
        let mut re = 0.0;
        let mut im = 0.0;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let c = c.to_f64().unwrap_or(f64::NAN);
            let t = 2.0 * std::f64::consts::PI * i as f64 / e;
            re += c * t.cos();
            im += c * t.sin();
        }
        (re, im)
    }

    /// Smallest order in which this value can be written.
    pub fn minimal_order(&self) -> u32 {
        let e = self.order;
        let mut best = e;
        for d in 1..e {
            if e.is_multiple_of(d) && d < best {
                let step = (e / d) as usize;
                // A value lies in Z[ζ_d] iff its image under every automorphism fixing ζ_d is itself.
                let fixed = (0..e as i64)
                    .filter(|k| k.gcd(&(e as i64)) == 1 && (k - 1).rem_euclid(d as i64) == 0)
                    .all(|k| self.galois(k) == *self);
                if fixed && step > 0 {
                    best = d;
                }
            }
        }
        best
    }
}

impl fmt::Debug for CyclotomicInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for CyclotomicInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(n) = self.as_integer() {
            return write!(f, "{n}");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            match (i, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (_, true) => write!(f, "z{}^{}", self.order, i)?,
                (_, false) => write!(f, "{mag}*z{}^{}", self.order, i)?,
            }
        }
        Ok(())
    }
}

impl PartialOrd for CyclotomicInt {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Lexicographic on `(order, coefficients)`; used only for canonical sorting.
impl Ord for CyclotomicInt {
    fn cmp(&self, other: &Self) -> Ordering {
        self.order
            .cmp(&other.order)
            .then_with(|| self.coeffs.cmp(&other.coeffs))
    }
}

impl<'a> std::ops::Add<&'a CyclotomicInt> for &'a CyclotomicInt {
    type Output = CyclotomicInt;
    fn add(self, rhs: &'a CyclotomicInt) -> CyclotomicInt {
        let order = CyclotomicInt::common_order(self, rhs);
        let a = self.lifted(order);
        let b = rhs.lifted(order);
        CyclotomicInt {
            order,
            coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect(),
        }
    }
}

impl<'a> std::ops::Sub<&'a CyclotomicInt> for &'a CyclotomicInt {
    type Output = CyclotomicInt;
    fn sub(self, rhs: &'a CyclotomicInt) -> CyclotomicInt {
        let order = CyclotomicInt::common_order(self, rhs);
        let a = self.lifted(order);
        let b = rhs.lifted(order);
        CyclotomicInt {
            order,
            coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x - y).collect(),
        }
    }
}

impl std::ops::Neg for &CyclotomicInt {
    type Output = CyclotomicInt;
    fn neg(self) -> CyclotomicInt {
        CyclotomicInt {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl<'a> std::ops::Mul<&'a CyclotomicInt> for &'a CyclotomicInt {
    type Output = CyclotomicInt;
    fn mul(self, rhs: &'a CyclotomicInt) -> CyclotomicInt {
        let order = CyclotomicInt::common_order(self, rhs);
        let a = self.lifted(order);
        let b = rhs.lifted(order);
        let e = order as usize;
        let nz_b: Vec<(usize, &BigInt)> = b
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .collect();
        let mut out = CyclotomicInt::zero(order);
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for &(j, y) in &nz_b {
                let k = (i + j) % e;
                out.coeffs[k] += x * y;
            }
        }
        out.reduce();
        out
    }
}

impl std::ops::AddAssign<&CyclotomicInt> for CyclotomicInt {
    fn add_assign(&mut self, rhs: &CyclotomicInt) {
        if self.order == rhs.order {
            for (x, y) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
                if !y.is_zero() {
                    *x += y;
                }
            }
        } else {
            *self = &*self + rhs;
        }
    }
}

impl std::ops::SubAssign<&CyclotomicInt> for CyclotomicInt {
    fn sub_assign(&mut self, rhs: &CyclotomicInt) {
        if self.order == rhs.order {
            for (x, y) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
                if !y.is_zero() {
                    *x -= y;
                }
            }
        } else {
            *self = &*self - rhs;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(e: u32, k: i64) -> CyclotomicInt {
        CyclotomicInt::root_of_unity(e, k)
    }

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(*cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(*cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(*cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(*cyclotomic_polynomial(9), vec![1, 0, 0, 1, 0, 0, 1]);
        assert_eq!(cyclotomic_polynomial(105).len() - 1, 48);
        assert!(cyclotomic_polynomial(105).contains(&-2));
    }

    #[test]
    fn i_squared_is_minus_one() {
        let i = z(4, 1);
        assert_eq!(&i * &i, CyclotomicInt::from_int(4, -1));
    }

    #[test]
    fn sum_of_nontrivial_pth_roots() {
        for p in [3u32, 5, 7, 11] {
            let mut acc = CyclotomicInt::zero(p);
            for i in 1..p {
                acc += &z(p, i as i64);
            }
            assert_eq!(acc.as_i64(), Some(-1));
        }
    }

    #[test]
    fn conjugation_of_eighth_root() {
        let w = z(8, 1);
        assert_eq!(w.conj(), z(8, 7));
        assert_eq!((&w * &w.conj()).as_i64(), Some(1));
    }

    #[test]
    fn embedding_preserves_value() {
        let w = z(3, 1);
        let up = w.embed(12).unwrap();
        assert_eq!(up, z(12, 4));
        assert!(w.embed(10).is_err());
        // mixed-order addition lifts to the lcm
        let s = &z(4, 1) + &z(6, 1);
        assert_eq!(s.order(), 12);
        assert_eq!(s, &z(12, 3) + &z(12, 2));
    }

    #[test]
    fn exact_division() {
        let a = &z(5, 1) + &CyclotomicInt::from_int(5, 2);
        let b = &z(5, 2) - &z(5, 3);
        let prod = &a * &b;
        assert_eq!(prod.div_exact(&b).unwrap(), a);
        assert_eq!(prod.div_exact(&a).unwrap(), b);
        // 1 - ζ does not divide 1
        let one_minus = &CyclotomicInt::one(5) - &z(5, 1);
        assert!(CyclotomicInt::one(5).div_exact(&one_minus).is_none());
        // but it divides 5
        assert!(CyclotomicInt::from_int(5, 5).div_exact(&one_minus).is_some());
    }

    #[test]
    fn golden_ratio_in_fifth_roots() {
        // (-1 + √5)/2 = ζ5 + ζ5^4, a root of x^2 + x - 1
        let g = &z(5, 1) + &z(5, 4);
        let val = &(&(&g * &g) + &g) - &CyclotomicInt::one(5);
        assert!(val.is_zero());
        let (re, _) = g.to_complex();
        assert!((re - 0.618_033_988_7).abs() < 1e-9);
    }

    #[test]
    fn minimal_order_detection() {
        assert_eq!(z(12, 4).minimal_order(), 3);
        assert_eq!(CyclotomicInt::from_int(12, 7).minimal_order(), 1);
        assert_eq!(z(12, 1).minimal_order(), 12);
    }
}
