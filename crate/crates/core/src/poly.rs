//! Univariate polynomials over Q(i) and exact root extraction.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::{gaussian_sqrt, Gaussian, Rational};

/// Coefficients in ascending degree; the leading coefficient is nonzero, and
/// the zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    coeffs: Vec<Gaussian>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<Gaussian>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Polynomial::new(coeffs.iter().map(|&c| Gaussian::from_int(c)).collect())
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Polynomial::constant(Gaussian::one())
    }

    pub fn constant(c: Gaussian) -> Self {
        Polynomial::new(vec![c])
    }

    /// `z - root`.
    pub fn linear(root: &Gaussian) -> Self {
        Polynomial::new(vec![-root, Gaussian::one()])
    }

    /// `Π (z - root)^mult`.
    pub fn from_roots(roots: &[(Gaussian, usize)]) -> Self {
        roots.iter().fold(Polynomial::one(), |acc, (r, m)| {
            (0..*m).fold(acc, |p, _| &p * &Polynomial::linear(r))
        })
    }

    pub fn coeffs(&self) -> &[Gaussian] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&Gaussian> {
        self.coeffs.last()
    }

    pub fn is_real(&self) -> bool {
        self.coeffs.iter().all(Gaussian::is_real)
    }

    pub fn monic(&self) -> Polynomial {
        match self.lead() {
            None => Polynomial::zero(),
            Some(l) => {
                let inv = l.inv().expect("leading coefficient is nonzero");
                Polynomial::new(self.coeffs.iter().map(|c| c * &inv).collect())
            }
        }
    }

    pub fn eval(&self, z: &Gaussian) -> Gaussian {
        self.coeffs
            .iter()
            .rev()
            .fold(Gaussian::zero(), |acc, c| &(&acc * z) + c)
    }

    /// `P(A)` by Horner's scheme.
    pub fn eval_matrix(&self, a: &Matrix) -> Matrix {
        let n = a.rows();
        let mut acc = Matrix::zeros(n, n);
        for c in self.coeffs.iter().rev() {
            acc = &acc * a;
            for k in 0..n {
                acc[(k, k)] += c;
            }
        }
        acc
    }

    pub fn derivative(&self) -> Polynomial {
        Polynomial::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * &Gaussian::from_int(k as i64))
                .collect(),
        )
    }

    /// Euclidean division. Panics when dividing by zero.
    pub fn div_rem(&self, divisor: &Polynomial) -> (Polynomial, Polynomial) {
        let d = divisor.degree().expect("polynomial division by zero");
        let lead_inv = divisor.coeffs[d].inv().expect("nonzero lead");
        let mut rem = self.coeffs.clone();
        if rem.len() <= d {
            return (Polynomial::zero(), self.clone());
        }
        let mut quot = vec![Gaussian::zero(); rem.len() - d];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + d] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                let t = &c * dc;
                rem[k + j] -= &t;
            }
            quot[k] = c;
        }
        rem.truncate(d);
        (Polynomial::new(quot), Polynomial::new(rem))
    }

    /// Synthetic division by `z - root`: quotient and remainder `P(root)`.
    pub fn deflate(&self, root: &Gaussian) -> (Polynomial, Gaussian) {
        let Some(deg) = self.degree() else {
            return (Polynomial::zero(), Gaussian::zero());
        };
        let mut quot = vec![Gaussian::zero(); deg];
        let mut carry = Gaussian::zero();
        for k in (0..=deg).rev() {
            carry = &(&carry * root) + &self.coeffs[k];
            if k > 0 {
                quot[k - 1] = carry.clone();
            }
        }
        (Polynomial::new(quot), carry)
    }

    /// Monic greatest common divisor (zero if both are zero).
    pub fn gcd(&self, other: &Polynomial) -> Polynomial {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Monic least common multiple.
    pub fn lcm(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero();
        }
        let g = self.gcd(other);
        (self * &other.div_rem(&g).0).monic()
    }

    /// `P / gcd(P, P')`, monic: same roots, all simple.
    pub fn squarefree_part(&self) -> Polynomial {
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0.monic()
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let zero = Gaussian::zero();
        Polynomial::new(
            (0..n)
                .map(|k| self.coeffs.get(k).unwrap_or(&zero) + rhs.coeffs.get(k).unwrap_or(&zero))
                .collect(),
        )
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let zero = Gaussian::zero();
        Polynomial::new(
            (0..n)
                .map(|k| self.coeffs.get(k).unwrap_or(&zero) - rhs.coeffs.get(k).unwrap_or(&zero))
                .collect(),
        )
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![Gaussian::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += &(a * b);
            }
        }
        Polynomial::new(out)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let (neg, mag) = if c.is_real() && c.re.is_negative() {
                (true, -c)
            } else {
                (false, c.clone())
            };
            match (first, neg) {
                (true, true) => write!(f, "-")?,
                (true, false) => {}
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
            }
            first = false;
            let coeff = if mag.is_real() {
                mag.to_string()
            } else {
                format!("({mag})")
            };
            let var = match k {
                0 => String::new(),
                1 => "z".to_string(),
                _ => format!("z^{k}"),
            };
            if k == 0 {
                write!(f, "{coeff}")?;
            } else if mag.is_one() {
                write!(f, "{var}")?;
            } else {
                write!(f, "{coeff}{var}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

fn factorize(n: &BigInt) -> Vec<(BigInt, u32)> {
    let mut n = n.abs();
    let mut out = Vec::new();
    if let Some(mut m) = n.to_u64() {
        let mut p = 2u64;
        while p.saturating_mul(p) <= m {
            if m % p == 0 {
                let mut e = 0;
                while m % p == 0 {
                    m /= p;
                    e += 1;
                }
                out.push((BigInt::from(p), e));
            }
            p += if p == 2 { 1 } else { 2 };
        }
        if m > 1 {
            out.push((BigInt::from(m), 1));
        }
        return out;
    }
    let mut p = BigInt::from(2);
    while &p * &p <= n {
        if (&n % &p).is_zero() {
            let mut e = 0;
            while (&n % &p).is_zero() {
                n /= &p;
                e += 1;
            }
            out.push((p.clone(), e));
        }
        p += 1;
    }
    if n > BigInt::one() {
        out.push((n, 1));
    }
    out
}

/// Positive divisors of a nonzero integer, ascending.
fn divisors(n: &BigInt) -> Vec<BigInt> {
    let mut divs = vec![BigInt::one()];
    for (p, e) in factorize(n) {
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        for d in &divs {
            let mut pk = BigInt::one();
            for _ in 0..=e {
                next.push(d * &pk);
                pk *= &p;
            }
        }
        divs = next;
    }
    divs.sort();
    divs
}

/// Gaussian integers as (re, im) pairs.
type GaussInt = (BigInt, BigInt);

/// Every Gaussian integer dividing `g` (all four associates of each).
fn gaussian_divisors(g: &GaussInt) -> Vec<GaussInt> {
    let norm = &g.0 * &g.0 + &g.1 * &g.1;
    let mut out = BTreeSet::new();
    for m in divisors(&norm) {
        let top = m.sqrt();
        let mut x = BigInt::zero();
        while x <= top {
            let rest = &m - &x * &x;
            let y = rest.sqrt();
            if &y * &y == rest {
                for (sx, sy) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                    let d = (&x * sx, &y * sy);
                    // d | g  <=>  g * conj(d) ≡ 0 (mod m)
                    let re: BigInt = &g.0 * &d.0 + &g.1 * &d.1;
                    let im: BigInt = &g.1 * &d.0 - &g.0 * &d.1;
                    if (&re % &m).is_zero() && (&im % &m).is_zero() {
                        out.insert(d);
                    }
                }
            }
            x += 1;
        }
    }
    out.into_iter().collect()
}

/// Scales to coefficients with integer real and imaginary parts.
fn integer_coefficients(p: &Polynomial) -> Vec<GaussInt> {
    let mut l = BigInt::one();
    for c in p.coeffs() {
        l = l.lcm(c.re.denom()).lcm(c.im.denom());
    }
    let scale = Rational::from_integer(l);
    p.coeffs()
        .iter()
        .map(|c| {
            let re = &c.re * &scale;
            let im = &c.im * &scale;
            (re.to_integer(), im.to_integer())
        })
        .collect()
}

/// Candidate roots `p/q` with `p | a0`, `q | an` over the integers.
fn rational_candidates(p: &Polynomial) -> Vec<Gaussian> {
    let ints = integer_coefficients(p);
    let a0 = &ints[0].0;
    let an = &ints[ints.len() - 1].0;
    let mut out = BTreeSet::new();
    for num in divisors(a0) {
        for den in divisors(an) {
            let r = Rational::new(num.clone(), den);
            out.insert(Gaussian::real(-&r));
            out.insert(Gaussian::real(r));
        }
    }
    out.into_iter().collect()
}

/// Candidate roots `p/q` with `p | a0`, `q | an` in Z[i].
fn gaussian_candidates(p: &Polynomial) -> Vec<Gaussian> {
    let ints = integer_coefficients(p);
    let nums = gaussian_divisors(&ints[0]);
    // one denominator per associate class suffices since numerators cover all units
    let dens: Vec<GaussInt> = gaussian_divisors(&ints[ints.len() - 1])
        .into_iter()
        .filter(|(x, y)| x.is_positive() && !y.is_negative())
        .collect();
    let mut out = BTreeSet::new();
    for (a, b) in &nums {
        let num = Gaussian::new(
            Rational::from_integer(a.clone()),
            Rational::from_integer(b.clone()),
        );
        for (c, d) in &dens {
            let den = Gaussian::new(
                Rational::from_integer(c.clone()),
                Rational::from_integer(d.clone()),
            );
            out.insert(&num / &den);
        }
    }
    out.into_iter().collect()
}

/// Divides out `candidate` as often as it is a root; returns the count.
fn strip_root(work: &mut Polynomial, candidate: &Gaussian) -> usize {
    let mut count = 0;
    loop {
        if work.degree().unwrap_or(0) == 0 {
            return count;
        }
        let (q, r) = work.deflate(candidate);
        if !r.is_zero() {
            return count;
        }
        *work = q;
        count += 1;
    }
}

/// All roots in Q(i) with multiplicities, in canonical scalar order.
///
/// Strategy: strip zero roots; for real coefficients run the rational root
/// theorem with deflation; solve a leftover quadratic with the quadratic
/// formula; for a leftover of degree three or more, enumerate Gaussian
/// divisor candidates. Whatever remains has no roots in Q(i) and is reported
/// as [`Error::SpectrumNotRepresentable`].
pub fn poly_roots_exact(p: &Polynomial) -> Result<Vec<(Gaussian, usize)>> {
    if p.is_zero() {
        return Err(Error::InternalInvariantViolation(
            "poly_roots_exact: zero polynomial".into(),
        ));
    }
    let mut work = p.monic();
    let mut roots: Vec<(Gaussian, usize)> = Vec::new();
    let record = |r: Gaussian, m: usize, roots: &mut Vec<(Gaussian, usize)>| {
        if m == 0 {
            return;
        }
        match roots.iter_mut().find(|(x, _)| *x == r) {
            Some(entry) => entry.1 += m,
            None => roots.push((r, m)),
        }
    };

    let zeros = strip_root(&mut work, &Gaussian::zero());
    record(Gaussian::zero(), zeros, &mut roots);

    if work.degree().unwrap_or(0) >= 1 && work.is_real() {
        for c in rational_candidates(&work.squarefree_part()) {
            let m = strip_root(&mut work, &c);
            record(c, m, &mut roots);
        }
    }

    if work.degree().unwrap_or(0) >= 3 {
        for c in gaussian_candidates(&work.squarefree_part()) {
            let m = strip_root(&mut work, &c);
            record(c, m, &mut roots);
        }
    }

    match work.degree().unwrap_or(0) {
        0 => {}
        1 => {
            let r = -&(&work.coeffs[0] / &work.coeffs[1]);
            record(r, 1, &mut roots);
        }
        2 => {
            // monic z² + bz + c
            let b = &work.coeffs[1];
            let c = &work.coeffs[0];
            let disc = &(b * b) - &(&Gaussian::from_int(4) * c);
            let Some(s) = gaussian_sqrt(&disc) else {
                return Err(Error::SpectrumNotRepresentable { factor: work });
            };
            let half = Gaussian::from_ratio(1, 2);
            let r1 = &(&-b + &s) * &half;
            let r2 = &(&-b - &s) * &half;
            record(r1, 1, &mut roots);
            record(r2, 1, &mut roots);
        }
        _ => return Err(Error::SpectrumNotRepresentable { factor: work }),
    }

    roots.sort();
    Ok(roots)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::parse_scalar;

    fn g(s: &str) -> Gaussian {
        parse_scalar(s).unwrap()
    }

    #[test]
    fn roots_examples() {
        assert_eq!(
            poly_roots_exact(&Polynomial::from_ints(&[1, -2, 1])).unwrap(),
            vec![(g("1"), 2)]
        );
        assert_eq!(
            poly_roots_exact(&Polynomial::from_ints(&[1, 0, 1])).unwrap(),
            vec![(g("-1i"), 1), (g("1i"), 1)]
        );
        let cube = Polynomial::from_ints(&[-2, 0, 0, 1]);
        assert_eq!(
            poly_roots_exact(&cube),
            Err(Error::SpectrumNotRepresentable {
                factor: cube.clone()
            })
        );
    }

    #[test]
    fn roots_mixed() {
        // z^2 (z - 1/2)^3 (z + 3) (z^2 + 4)
        let p = Polynomial::from_roots(&[
            (g("0"), 2),
            (g("1/2"), 3),
            (g("-3"), 1),
            (g("2i"), 1),
            (g("-2i"), 1),
        ]);
        assert_eq!(
            poly_roots_exact(&p).unwrap(),
            vec![
                (g("-3"), 1),
                (g("-2i"), 1),
                (g("0"), 2),
                (g("2i"), 1),
                (g("1/2"), 3)
            ]
        );
    }

    #[test]
    fn roots_gaussian_coefficients() {
        // palette-style minimal polynomial with a lone i
        let p = Polynomial::from_roots(&[
            (g("0"), 1),
            (g("1"), 1),
            (g("-1"), 1),
            (g("2"), 2),
            (g("1i"), 1),
        ]);
        assert!(!p.is_real());
        assert_eq!(
            poly_roots_exact(&p).unwrap(),
            vec![
                (g("-1"), 1),
                (g("0"), 1),
                (g("1i"), 1),
                (g("1"), 1),
                (g("2"), 2)
            ]
        );
        let q = Polynomial::from_roots(&[(g("1/2+3/2i"), 2), (g("-2i"), 1), (g("3"), 1)]);
        assert_eq!(
            poly_roots_exact(&q).unwrap(),
            vec![(g("-2i"), 1), (g("1/2+3/2i"), 2), (g("3"), 1)]
        );
    }

    #[test]
    fn quadratic_with_irrational_discriminant() {
        let p = Polynomial::from_ints(&[-2, 0, 1]);
        assert!(matches!(
            poly_roots_exact(&p),
            Err(Error::SpectrumNotRepresentable { .. })
        ));
        // (z - 1)(z^2 - 2): the rational root is stripped first
        let p = &Polynomial::from_ints(&[-1, 1]) * &Polynomial::from_ints(&[-2, 0, 1]);
        assert_eq!(
            poly_roots_exact(&p),
            Err(Error::SpectrumNotRepresentable {
                factor: Polynomial::from_ints(&[-2, 0, 1])
            })
        );
    }

    #[test]
    fn division_and_gcd() {
        let a = Polynomial::from_roots(&[(g("1"), 2), (g("2"), 1)]);
        let b = Polynomial::from_roots(&[(g("1"), 1), (g("3"), 1)]);
        assert_eq!(a.gcd(&b), Polynomial::linear(&g("1")));
        assert_eq!(
            a.lcm(&b),
            Polynomial::from_roots(&[(g("1"), 2), (g("2"), 1), (g("3"), 1)])
        );
        let (q, r) = a.div_rem(&b);
        assert_eq!(&(&q * &b) + &r, a);
        assert!(r.degree().unwrap_or(0) < 2);
        assert_eq!(
            a.squarefree_part(),
            Polynomial::from_roots(&[(g("1"), 1), (g("2"), 1)])
        );
    }

    #[test]
    fn display() {
        assert_eq!(Polynomial::from_ints(&[-2, 0, 0, 1]).to_string(), "z^3 - 2");
        assert_eq!(
            Polynomial::from_ints(&[1, -2, 1]).to_string(),
            "z^2 - 2z + 1"
        );
        assert_eq!(Polynomial::linear(&g("1i")).to_string(), "z + (-1i)");
        assert_eq!(Polynomial::zero().to_string(), "0");
    }

    #[test]
    fn gaussian_divisors_of_five() {
        // 5 = (2+i)(2-i); divisors are the units, the associates of 2±i, and of 5
        let d = gaussian_divisors(&(BigInt::from(5), BigInt::zero()));
        assert_eq!(d.len(), 4 * 4);
    }
}
