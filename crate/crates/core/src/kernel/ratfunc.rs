//! Rational functions `num/den` with lazy reduction.
//!
//! Equality is decided by cross-multiplication, so no multivariate gcd is
//! needed. Cheap reductions are still applied after every operation: exact
//! division, univariate gcd, and a monic denominator.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use super::poly::{Exponents, Poly};
use super::scalar::Scalar;

#[derive(Clone, Debug)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl RatFunc {
    /// `None` when `den` is zero.
    pub fn new(num: Poly, den: Poly) -> Option<Self> {
        if den.is_zero() || num.nvars() != den.nvars() {
            return None;
        }
        Some(RatFunc { num, den }.reduced())
    }

    pub fn from_poly(p: Poly) -> Self {
        let n = p.nvars();
        RatFunc {
            num: p,
            den: Poly::one(n),
        }
        .reduced()
    }

    pub fn zero(nvars: usize) -> Self {
        RatFunc {
            num: Poly::zero(nvars),
            den: Poly::one(nvars),
        }
    }

    pub fn constant(nvars: usize, c: Scalar) -> Self {
        RatFunc {
            num: Poly::constant(nvars, c),
            den: Poly::one(nvars),
        }
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// `Some(c)` iff the function equals the constant `c`, regardless of how
    /// far `num/den` has been reduced.
    pub fn constant_value(&self) -> Option<Scalar> {
        if self.num.is_zero() {
            return Some(Scalar::zero());
        }
        let (_, ln) = self.num.leading_term()?;
        let (_, ld) = self.den.leading_term()?;
        let c = ln / ld;
        (self.num == self.den.scale(&c)).then_some(c)
    }

    pub fn is_constant(&self) -> bool {
        self.constant_value().is_some()
    }

    /// `None` when `other` is zero.
    pub fn checked_div(&self, other: &RatFunc) -> Option<RatFunc> {
        if other.is_zero() {
            return None;
        }
        RatFunc::new(&self.num * &other.den, &self.den * &other.num)
    }

    /// Quotient rule.
    pub fn derivative(&self, index: usize) -> RatFunc {
        let n =
            &(&self.num.derivative(index) * &self.den) - &(&self.num * &self.den.derivative(index));
        RatFunc::new(n, &self.den * &self.den).expect("nonzero denominator")
    }

    pub fn scale(&self, c: &Scalar) -> RatFunc {
        RatFunc {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
        .reduced()
    }

    /// Evaluates at a point; `None` if the denominator vanishes there.
    pub fn evaluate(&self, point: &[Scalar]) -> Option<Scalar> {
        let d = self.den.evaluate(point)?;
        if d.is_zero() {
            return None;
        }
        Some(&self.num.evaluate(point)? / &d)
    }

    fn reduced(mut self) -> Self {
        let n = self.num.nvars();
        if self.num.is_zero() {
            self.den = Poly::one(n);
            return self;
        }
        // Laurent denominators: clear negative exponents into the numerator.
        if self.num.has_negative_exponents() || self.den.has_negative_exponents() {
            let mut shift = vec![0i32; n];
            for p in [&self.num, &self.den] {
                for (e, _) in p.terms() {
                    for (s, &k) in shift.iter_mut().zip(&e.0) {
                        *s = (*s).max(-k);
                    }
                }
            }
            let m = Poly::monomial(n, Scalar::one(), Exponents(shift));
            self.num = &self.num * &m;
            self.den = &self.den * &m;
        }
        if let Some(q) = self.num.div_exact(&self.den) {
            self.num = q;
            self.den = Poly::one(n);
            return self;
        }
        if n == 1 {
            if let Some(g) = self.num.gcd_univariate(&self.den) {
                if !g.is_constant() {
                    self.num = self.num.div_exact(&g).expect("gcd divides");
                    self.den = self.den.div_exact(&g).expect("gcd divides");
                }
            }
        }
        let lc = self
            .den
            .leading_term()
            .expect("nonzero")
            .1
            .inv()
            .expect("nonzero");
        if !lc.is_one() {
            self.num = self.num.scale(&lc);
            self.den = self.den.scale(&lc);
        }
        self
    }

    pub fn display<'a>(&'a self, vars: &'a [String]) -> RatFuncDisplay<'a> {
        RatFuncDisplay { f: self, vars }
    }
}

impl PartialEq for RatFunc {
    fn eq(&self, other: &Self) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }
}

pub struct RatFuncDisplay<'a> {
    f: &'a RatFunc,
    vars: &'a [String],
}

impl fmt::Display for RatFuncDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.f.den.is_constant() {
            return write!(f, "{}", self.f.num.display(self.vars));
        }
        let wrap = |p: &Poly| {
            let s = p.display(self.vars).to_string();
            if p.num_terms() > 1 || s.starts_with('-') {
                format!("({s})")
            } else {
                s
            }
        };
        write!(f, "{}/{}", wrap(&self.f.num), wrap(&self.f.den))
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.nvars()).map(|i| format!("x{i}")).collect();
        write!(f, "{}", self.display(&names))
    }
}

impl<'a> Add<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn add(self, o: &RatFunc) -> RatFunc {
        if self.den == o.den {
            return RatFunc::new(&self.num + &o.num, self.den.clone()).unwrap();
        }
        RatFunc::new(
            &(&self.num * &o.den) + &(&o.num * &self.den),
            &self.den * &o.den,
        )
        .unwrap()
    }
}

impl<'a> Sub<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn sub(self, o: &RatFunc) -> RatFunc {
        self + &-o
    }
}

impl<'a> Mul<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn mul(self, o: &RatFunc) -> RatFunc {
        RatFunc::new(&self.num * &o.num, &self.den * &o.den).unwrap()
    }
}

impl<'a> Div<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    /// Panics on division by zero; see [`RatFunc::checked_div`].
    fn div(self, o: &RatFunc) -> RatFunc {
        self.checked_div(o)
            .expect("division by zero rational function")
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lam() -> Poly {
        Poly::var(1, 0)
    }

    #[test]
    fn cross_multiplication_equality() {
        let a = RatFunc::new(lam(), &lam() * &lam()).unwrap();
        let b = RatFunc::new(Poly::one(1), lam()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn quotient_rule() {
        // d/dl (1/l) = -1/l^2
        let f = RatFunc::new(Poly::one(1), lam()).unwrap();
        let expected =
            RatFunc::new(Poly::constant(1, Scalar::from_int(-1)), &lam() * &lam()).unwrap();
        assert_eq!(f.derivative(0), expected);
    }

    #[test]
    fn constant_detection_survives_common_factors() {
        let x = Poly::var(2, 0);
        let y = Poly::var(2, 1);
        let common = &(&x * &y) + &Poly::one(2);
        let f = RatFunc {
            num: common.scale(&Scalar::from_int(3)),
            den: common.clone(),
        };
        assert_eq!(f.constant_value(), Some(Scalar::from_int(3)));
        let g = RatFunc {
            num: &common * &x,
            den: common,
        };
        assert!(g.constant_value().is_none());
    }

    #[test]
    fn zero_denominator_rejected() {
        assert!(RatFunc::new(lam(), Poly::zero(1)).is_none());
        assert!(RatFunc::from_poly(lam())
            .checked_div(&RatFunc::zero(1))
            .is_none());
    }
}
