//! Exponential generating functions of quotient dimensions.
//!
//! A quotient with dimensions d_1, d_2, ... gets the series
//! f(x) = sum d_n x^n / n!.  The inversion partner of f is the unique g with
//! g(-f(x)) = -x; for a dual pair of presentations the two saturated series
//! must be inversion partners order by order, which is the numerical test
//! this module exists to run.  Everything is truncated, exact, and rational.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{rat, rat_int, Rational};

/// Truncated exponential generating function with no constant term.
/// `coeffs[i]` is the coefficient of x^(i+1).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Egf {
    coeffs: Vec<Rational>,
}

/// Truncated product of two constant-term-free series, kept to `terms` terms.
fn mul_trunc(a: &[Rational], b: &[Rational], terms: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); terms];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            let deg = i + j + 2;
            if deg > terms {
                break;
            }
            out[deg - 1] += ai * bj;
        }
    }
    out
}

fn factorial(n: usize) -> BigInt {
    let mut f = BigInt::one();
    for k in 2..=n {
        f *= k;
    }
    f
}

impl Egf {
    pub fn from_coeffs(coeffs: Vec<Rational>) -> Egf {
        Egf { coeffs }
    }

    /// Series of a dimension table (arity 1 first).
    pub fn from_dims(dims: &[u64]) -> Egf {
        let coeffs = dims
            .iter()
            .enumerate()
            .map(|(i, &d)| {
                Rational::new(BigInt::from(d), factorial(i + 1))
            })
            .collect();
        Egf { coeffs }
    }

    /// Closed forms for the six quotients whose dimensions are known exactly
    /// at every arity.
    pub fn named(name: &str, terms: usize) -> Result<Egf> {
        let coeff = |n: usize| -> Option<Rational> {
            match name {
                "Lie" => Some(rat(1, n as i64)),
                "Com" => Some(Rational::new(BigInt::one(), factorial(n))),
                "Ass" => Some(rat_int(1)),
                "sLeib" => {
                    let extra = if n == 2 { rat(1, 2) } else { rat_int(0) };
                    Some(rat(1, n as i64) + extra)
                }
                "sDiAss" => Some(rat_int(if n == 2 { 2 } else { 1 })),
                "sPerm" => {
                    let extra = if n == 2 { rat(1, 2) } else { rat_int(0) };
                    Some(Rational::new(BigInt::one(), factorial(n)) + extra)
                }
                _ => None,
            }
        };
        if coeff(1).is_none() {
            return Err(Error::NoClosedForm(name.to_string()));
        }
        Ok(Egf {
            coeffs: (1..=terms).map(|n| coeff(n).unwrap()).collect(),
        })
    }

    pub fn terms(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, n: usize) -> &Rational {
        &self.coeffs[n - 1]
    }

    /// n! times the nth coefficient, for every term.
    pub fn dim_terms(&self) -> Vec<Rational> {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| c * Rational::from(factorial(i + 1)))
            .collect()
    }

    /// The dimension table, insisting every entry is a non-negative integer.
    pub fn integer_dims(&self) -> Result<Vec<BigInt>> {
        self.dim_terms()
            .into_iter()
            .enumerate()
            .map(|(i, d)| {
                if d.is_integer() && !d.is_negative() {
                    Ok(d.to_integer())
                } else {
                    Err(Error::DimensionMismatch(format!(
                        "term {} of the dimension series is {}, not a non-negative integer",
                        i + 1,
                        d
                    )))
                }
            })
            .collect()
    }

    /// The inversion partner: the unique g with g(-f(x)) = -x, to as many
    /// terms as f has.  The linear coefficient must be 1.
    pub fn invert(&self) -> Result<Egf> {
        let n = self.coeffs.len();
        if n == 0 || !self.coeffs[0].is_one() {
            return Err(Error::DimensionMismatch(
                "series inversion needs a unit linear coefficient".to_string(),
            ));
        }
        let h: Vec<Rational> = self.coeffs.iter().map(|c| -c).collect();
        let mut powers = Vec::with_capacity(n);
        powers.push(h.clone());
        for _ in 1..n {
            let next = mul_trunc(powers.last().unwrap(), &h, n);
            powers.push(next);
        }
        let mut g = vec![Rational::zero(); n];
        g[0] = rat_int(1);
        for m in 2..=n {
            let mut s = Rational::zero();
            for k in 1..m {
                s += &g[k - 1] * &powers[k - 1][m - 1];
            }
            g[m - 1] = if m % 2 == 0 { -s } else { s };
        }
        Ok(Egf { coeffs: g })
    }
}

/// First order at which g(-f(x)) differs from -x, through the shared
/// truncation; None when the identity holds at every available order.
pub fn inversion_defect(f: &Egf, g: &Egf) -> Option<usize> {
    let n = f.terms().min(g.terms());
    let h: Vec<Rational> = f.coeffs[..n].iter().map(|c| -c).collect();
    let mut composite = vec![Rational::zero(); n];
    let mut power = h.clone();
    for k in 1..=n {
        if !g.coeffs[k - 1].is_zero() {
            for (deg, c) in power.iter().enumerate() {
                composite[deg] += &g.coeffs[k - 1] * c;
            }
        }
        if k < n {
            power = mul_trunc(&power, &h, n);
        }
    }
    for (deg, c) in composite.iter().enumerate() {
        let expect = if deg == 0 { rat_int(-1) } else { Rational::zero() };
        if *c != expect {
            return Some(deg + 1);
        }
    }
    None
}
