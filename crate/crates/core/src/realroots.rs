//! Exact univariate polynomial machinery: discriminants via resultants,
//! Descartes sign-change bounds, Sturm sequences, and real-root isolation.
//! No floating point anywhere in this module.

use crate::exact::{rat_int, Rat};
use num_traits::{One, Signed, Zero};
use std::fmt;

/// Univariate polynomial with exact rational coefficients, ascending degree.
/// Trailing zeros are trimmed; the zero polynomial has an empty coefficient
/// list.
#[derive(Clone, PartialEq, Eq)]
pub struct IntPolynomial {
    coeffs: Vec<Rat>,
}

/// Endpoint of a root-counting interval.
#[derive(Clone, Debug, PartialEq)]
pub enum Bound {
    NegInf,
    Finite(Rat),
    PosInf,
}

#[derive(Debug, thiserror::Error)]
pub enum RootError {
    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("degree {0} is too low")]
    DegreeTooLow(usize),
    #[error("polynomial is not squarefree; gcd with derivative has degree {}", .witness.degree())]
    NotSquarefree { witness: IntPolynomial },
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    /// From integer coefficients, ascending degree.
    pub fn from_ints(coeffs: &[i64]) -> Self {
        IntPolynomial::new(coeffs.iter().map(|&c| rat_int(c)).collect())
    }

    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<&Rat> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> IntPolynomial {
        if self.coeffs.len() <= 1 {
            return IntPolynomial::zero();
        }
        IntPolynomial::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * rat_int(i as i64))
                .collect(),
        )
    }

    pub fn neg(&self) -> IntPolynomial {
        IntPolynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn mul(&self, other: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || other.is_zero() {
            return IntPolynomial::zero();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::new(out)
    }

    pub fn scale(&self, factor: &Rat) -> IntPolynomial {
        IntPolynomial::new(self.coeffs.iter().map(|c| c * factor).collect())
    }

    /// Euclidean division; `other` must be nonzero.
    pub fn div_rem(&self, other: &IntPolynomial) -> (IntPolynomial, IntPolynomial) {
        assert!(!other.is_zero(), "division by the zero polynomial");
        let mut rem = self.coeffs.clone();
        let dn = other.coeffs.len();
        if rem.len() < dn {
            return (IntPolynomial::zero(), self.clone());
        }
        let mut quot = vec![Rat::zero(); rem.len() - dn + 1];
        let lead = other.coeffs.last().unwrap().clone();
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dn - 1] / &lead;
            if !c.is_zero() {
                for (i, b) in other.coeffs.iter().enumerate() {
                    let v = c.clone() * b;
                    rem[k + i] -= v;
                }
            }
            quot[k] = c;
        }
        (IntPolynomial::new(quot), IntPolynomial::new(rem))
    }

    /// Monic gcd with another polynomial.
    pub fn gcd(&self, other: &IntPolynomial) -> IntPolynomial {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            return a;
        }
        let lead = a.leading().unwrap().clone();
        a.scale(&(Rat::one() / lead))
    }

    /// Sign of the polynomial at a bound: at ±∞ from the leading term, else
    /// the sign of the value. Returns −1, 0 or 1.
    fn sign_at(&self, at: &Bound) -> i32 {
        if self.is_zero() {
            return 0;
        }
        match at {
            Bound::Finite(x) => rational_sign(&self.eval(x)),
            Bound::PosInf => rational_sign(self.leading().unwrap()),
            Bound::NegInf => {
                let s = rational_sign(self.leading().unwrap());
                if self.degree() % 2 == 0 {
                    s
                } else {
                    -s
                }
            }
        }
    }
}

fn rational_sign(r: &Rat) -> i32 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

impl fmt::Debug for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            write!(f, "({c})x^{i}")?;
            first = false;
        }
        Ok(())
    }
}

/// Resultant of two polynomials via the Euclidean recurrence.
pub fn resultant(f: &IntPolynomial, g: &IntPolynomial) -> Rat {
    if f.is_zero() || g.is_zero() {
        return Rat::zero();
    }
    if g.degree() == 0 {
        return pow_rat(g.leading().unwrap(), f.degree() as u32);
    }
    if f.degree() < g.degree() {
        let sign = if (f.degree() * g.degree()) % 2 == 1 {
            -Rat::one()
        } else {
            Rat::one()
        };
        return sign * resultant(g, f);
    }
    let (_, r) = f.div_rem(g);
    if r.is_zero() {
        return Rat::zero();
    }
    let sign = if (f.degree() * g.degree()) % 2 == 1 {
        -Rat::one()
    } else {
        Rat::one()
    };
    let lead = pow_rat(g.leading().unwrap(), (f.degree() - r.degree()) as u32);
    sign * lead * resultant(g, &r)
}

fn pow_rat(base: &Rat, exp: u32) -> Rat {
    let mut out = Rat::one();
    for _ in 0..exp {
        out *= base;
    }
    out
}

/// Exact discriminant `(−1)^{n(n−1)/2} Res(p, p′) / lc(p)`; requires
/// degree ≥ 2.
pub fn discriminant(p: &IntPolynomial) -> Result<Rat, RootError> {
    if p.is_zero() {
        return Err(RootError::ZeroPolynomial);
    }
    let n = p.degree();
    if n < 2 {
        return Err(RootError::DegreeTooLow(n));
    }
    let res = resultant(p, &p.derivative());
    let sign = if (n * (n - 1) / 2) % 2 == 1 {
        -Rat::one()
    } else {
        Rat::one()
    };
    Ok(sign * res / p.leading().unwrap())
}

/// Number of sign changes in the coefficient sequence: Descartes' bound on
/// the count of positive roots (equal to it modulo 2).
pub fn descartes_positive_bound(p: &IntPolynomial) -> Result<usize, RootError> {
    if p.is_zero() {
        return Err(RootError::ZeroPolynomial);
    }
    let signs: Vec<i32> = p
        .coeffs
        .iter()
        .map(rational_sign)
        .filter(|s| *s != 0)
        .collect();
    Ok(signs.windows(2).filter(|w| w[0] != w[1]).count())
}

fn sturm_chain(p: &IntPolynomial) -> Vec<IntPolynomial> {
    let mut chain = vec![p.clone(), p.derivative()];
    while !chain.last().unwrap().is_zero() {
        let len = chain.len();
        let (_, r) = chain[len - 2].div_rem(&chain[len - 1]);
        chain.push(r.neg());
    }
    chain.pop();
    chain
}

fn sign_variations(chain: &[IntPolynomial], at: &Bound) -> usize {
    let signs: Vec<i32> = chain
        .iter()
        .map(|p| p.sign_at(at))
        .filter(|s| *s != 0)
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

fn require_squarefree(p: &IntPolynomial) -> Result<(), RootError> {
    if p.is_zero() {
        return Err(RootError::ZeroPolynomial);
    }
    let g = p.gcd(&p.derivative());
    if g.degree() > 0 {
        return Err(RootError::NotSquarefree { witness: g });
    }
    Ok(())
}

/// Exact count of distinct real roots of a squarefree polynomial in `(a, b]`.
/// Non-squarefree input is rejected with the gcd as witness.
pub fn sturm_count(p: &IntPolynomial, a: &Bound, b: &Bound) -> Result<usize, RootError> {
    require_squarefree(p)?;
    let chain = sturm_chain(p);
    let va = sign_variations(&chain, a);
    let vb = sign_variations(&chain, b);
    Ok(va.saturating_sub(vb))
}

/// An isolating interval `(lo, hi]` with a refined midpoint.
#[derive(Clone, Debug, PartialEq)]
pub struct IsolatedRoot {
    pub lo: Rat,
    pub hi: Rat,
    pub midpoint: Rat,
}

/// Isolates every real root of a squarefree polynomial by bisection on
/// Sturm counts, each interval refined to width ≤ `precision`.
pub fn isolate_roots(p: &IntPolynomial, precision: &Rat) -> Result<Vec<IsolatedRoot>, RootError> {
    require_squarefree(p)?;
    assert!(precision.is_positive(), "precision must be positive");
    let chain = sturm_chain(p);
    let count = |a: &Rat, b: &Rat| -> usize {
        sign_variations(&chain, &Bound::Finite(a.clone()))
            - sign_variations(&chain, &Bound::Finite(b.clone()))
    };

    // Cauchy bound: all roots lie in (−M, M].
    let lead = p.leading().unwrap();
    let mut max_ratio = Rat::zero();
    for c in &p.coeffs[..p.coeffs.len() - 1] {
        let ratio = (c / lead).abs();
        if ratio > max_ratio {
            max_ratio = ratio;
        }
    }
    let bound = max_ratio + Rat::one();
    let lo = -bound.clone();

    let total = count(&lo, &bound);
    let mut stack = vec![(lo, bound, total)];
    let mut isolated: Vec<(Rat, Rat)> = Vec::new();
    while let Some((a, b, n)) = stack.pop() {
        if n == 0 {
            continue;
        }
        if n == 1 {
            isolated.push((a, b));
            continue;
        }
        let mid = (&a + &b) / rat_int(2);
        let left = count(&a, &mid);
        stack.push((mid.clone(), b, n - left));
        stack.push((a, mid, left));
    }
    isolated.sort_by(|x, y| x.0.cmp(&y.0));

    let two = rat_int(2);
    let mut out = Vec::with_capacity(isolated.len());
    for (mut a, mut b) in isolated {
        while &b - &a > *precision {
            let mid = (&a + &b) / &two;
            if count(&a, &mid) == 1 {
                b = mid;
            } else {
                a = mid;
            }
        }
        let midpoint = (&a + &b) / &two;
        out.push(IsolatedRoot { lo: a, hi: b, midpoint });
    }
    Ok(out)
}
