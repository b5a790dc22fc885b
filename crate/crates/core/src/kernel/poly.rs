//! Sparse multivariate (Laurent) polynomials over [`Scalar`].
//!
//! Variable names are not stored in the polynomial; a [`Vars`] context
//! supplies them for parsing and printing. Two polynomials may be combined
//! only when they have the same number of variables.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use super::scalar::Scalar;
use super::KernelError;

/// Exponent vector, ordered graded-lexicographically (total degree first).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Exponents(pub Vec<i32>);

impl Exponents {
    pub fn zero(nvars: usize) -> Self {
        Exponents(vec![0; nvars])
    }

    pub fn total_degree(&self) -> i64 {
        self.0.iter().map(|&e| e as i64).sum()
    }

    pub fn has_negative(&self) -> bool {
        self.0.iter().any(|&e| e < 0)
    }
}

impl Ord for Exponents {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Exponents {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Ordered variable names plus the ring flavour they live in.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vars {
    pub names: Arc<[String]>,
    pub laurent: bool,
}

impl Vars {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Self {
        Vars {
            names: names.iter().map(|s| s.as_ref().to_string()).collect(),
            laurent: false,
        }
    }

    pub fn laurent<S: AsRef<str>>(names: &[S]) -> Self {
        Vars {
            laurent: true,
            ..Vars::new(names)
        }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Exponents, Scalar>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Poly::constant(nvars, Scalar::one())
    }

    pub fn constant(nvars: usize, c: Scalar) -> Self {
        Poly::monomial(nvars, c, Exponents::zero(nvars))
    }

    pub fn monomial(nvars: usize, c: Scalar, exps: Exponents) -> Self {
        assert_eq!(exps.0.len(), nvars, "exponent vector length mismatch");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        Poly { nvars, terms }
    }

    /// The coordinate function `x_index`.
    pub fn var(nvars: usize, index: usize) -> Self {
        Poly::var_pow(nvars, index, 1)
    }

    pub fn var_pow(nvars: usize, index: usize, power: i32) -> Self {
        let mut e = Exponents::zero(nvars);
        e.0[index] = power;
        Poly::monomial(nvars, Scalar::one(), e)
    }

    /// Builds from `(coefficient, exponents)` pairs, merging duplicates.
    pub fn from_terms<I: IntoIterator<Item = (Scalar, Vec<i32>)>>(nvars: usize, terms: I) -> Self {
        let mut p = Poly::zero(nvars);
        for (c, e) in terms {
            p.add_term(Exponents(e), &c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exponents, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &[i32]) -> Scalar {
        self.terms
            .get(&Exponents(exps.to_vec()))
            .cloned()
            .unwrap_or_else(Scalar::zero)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty()
            || (self.terms.len() == 1
                && self.terms.keys().next().unwrap().0.iter().all(|&e| e == 0))
    }

    pub fn constant_value(&self) -> Option<Scalar> {
        if self.is_zero() {
            Some(Scalar::zero())
        } else if self.is_constant() {
            self.terms.values().next().cloned()
        } else {
            None
        }
    }

    /// Single term `c * x^e`, including nonzero constants.
    pub fn as_monomial(&self) -> Option<(&Exponents, &Scalar)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    pub fn has_negative_exponents(&self) -> bool {
        self.terms.keys().any(Exponents::has_negative)
    }

    /// Largest term in graded-lex order.
    pub fn leading_term(&self) -> Option<(&Exponents, &Scalar)> {
        self.terms.iter().next_back()
    }

    pub fn is_real(&self) -> bool {
        self.terms.values().all(Scalar::is_real)
    }

    fn add_term(&mut self, e: Exponents, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        assert_eq!(e.0.len(), self.nvars, "exponent vector length mismatch");
        match self.terms.get_mut(&e) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c.clone());
            }
        }
    }

    fn check_compat(&self, other: &Poly) -> Result<(), KernelError> {
        if self.nvars != other.nvars {
            return Err(KernelError::VariableMismatch {
                left: self.nvars,
                right: other.nvars,
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Poly) -> Result<Poly, KernelError> {
        self.check_compat(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c);
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Poly) -> Result<Poly, KernelError> {
        self.check_compat(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), &-c);
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Poly) -> Result<Poly, KernelError> {
        self.check_compat(other)?;
        let mut out = Poly::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = Exponents(ea.0.iter().zip(&eb.0).map(|(a, b)| a + b).collect());
                out.add_term(e, &(ca * cb));
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    /// Integer power; negative powers only for monomials.
    pub fn pow(&self, exp: i32) -> Option<Poly> {
        if exp < 0 {
            let (e, c) = self.as_monomial()?;
            let inv = c.inv()?;
            let m = Poly::monomial(self.nvars, inv, Exponents(e.0.iter().map(|x| -x).collect()));
            return m.pow(-exp);
        }
        let mut acc = Poly::one(self.nvars);
        let mut base = self.clone();
        let mut e = exp as u32;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        Some(acc)
    }

    /// Partial derivative with respect to variable `index` (power rule, Laurent-safe).
    pub fn derivative(&self, index: usize) -> Poly {
        assert!(index < self.nvars, "derivative index out of range");
        let mut out = Poly::zero(self.nvars);
        for (e, c) in &self.terms {
            let k = e.0[index];
            if k == 0 {
                continue;
            }
            let mut ne = e.clone();
            ne.0[index] -= 1;
            out.add_term(ne, &(c * &Scalar::from_int(k as i64)));
        }
        out
    }

    /// Exact quotient when `divisor` divides `self`; polynomial (non-Laurent) inputs only.
    pub fn div_exact(&self, divisor: &Poly) -> Option<Poly> {
        let (q, r) = self.div_rem_lex(divisor)?;
        r.is_zero().then_some(q)
    }

    /// Multivariate division by the graded-lex leading term of `divisor`.
    pub fn div_rem_lex(&self, divisor: &Poly) -> Option<(Poly, Poly)> {
        if divisor.is_zero() || self.nvars != divisor.nvars {
            return None;
        }
        if self.has_negative_exponents() || divisor.has_negative_exponents() {
            return None;
        }
        let (lead_e, lead_c) = divisor.leading_term().unwrap();
        let lead_inv = lead_c.inv().unwrap();
        let mut rem = self.clone();
        let mut quot = Poly::zero(self.nvars);
        let mut out_rem = Poly::zero(self.nvars);
        while let Some((e, c)) = rem.leading_term().map(|(e, c)| (e.clone(), c.clone())) {
            if e.0.iter().zip(&lead_e.0).all(|(a, b)| a >= b) {
                let qe = Exponents(e.0.iter().zip(&lead_e.0).map(|(a, b)| a - b).collect());
                let qc = &c * &lead_inv;
                let t = Poly::monomial(self.nvars, qc, qe);
                rem = &rem - &(&t * divisor);
                quot = &quot + &t;
            } else {
                rem.terms.remove(&e);
                out_rem.add_term(e, &c);
            }
        }
        Some((quot, out_rem))
    }

    /// Monic gcd for univariate, non-Laurent polynomials.
    pub fn gcd_univariate(&self, other: &Poly) -> Option<Poly> {
        if self.nvars != 1 || other.nvars != 1 {
            return None;
        }
        if self.has_negative_exponents() || other.has_negative_exponents() {
            return None;
        }
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem_lex(&b)?;
            a = b;
            b = r;
        }
        if a.is_zero() {
            return Some(a);
        }
        let lc = a.leading_term().unwrap().1.inv().unwrap();
        Some(a.scale(&lc))
    }

    /// Substitutes scalar values for every variable (Laurent terms need nonzero values).
    pub fn evaluate(&self, point: &[Scalar]) -> Option<Scalar> {
        assert_eq!(point.len(), self.nvars);
        let mut acc = Scalar::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &k) in point.iter().zip(&e.0) {
                t = &t * &x.pow(k as i64)?;
            }
            acc += &t;
        }
        Some(acc)
    }

    /// Applies `f` to every coefficient.
    pub fn map_coeffs(&self, f: impl Fn(&Scalar) -> Scalar) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), &f(c));
        }
        out
    }

    /// Canonical text using the given variable names.
    pub fn display<'a>(&'a self, vars: &'a [String]) -> PolyDisplay<'a> {
        PolyDisplay { poly: self, vars }
    }

    /// Text with generated names `x0, x1, ...`.
    pub fn to_generic_string(&self) -> String {
        let names: Vec<String> = (0..self.nvars).map(|i| format!("x{i}")).collect();
        self.display(&names).to_string()
    }
}

pub struct PolyDisplay<'a> {
    poly: &'a Poly,
    vars: &'a [String],
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        for (n, (e, c)) in self.poly.terms.iter().rev().enumerate() {
            let mono: Vec<String> =
                e.0.iter()
                    .enumerate()
                    .filter(|(_, &k)| k != 0)
                    .map(|(i, &k)| {
                        let name = self.vars.get(i).cloned().unwrap_or_else(|| format!("x{i}"));
                        if k == 1 {
                            name
                        } else {
                            format!("{name}^{k}")
                        }
                    })
                    .collect();
            let negative = c.is_negative_real() || c.is_negative_imaginary();
            let abs = if negative { -c } else { c.clone() };
            if n == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if mono.is_empty() {
                write!(f, "{abs}")?;
            } else {
                if !abs.is_one() {
                    write!(f, "{abs}*")?;
                }
                write!(f, "{}", mono.join("*"))?;
            }
        }
        Ok(())
    }
}

macro_rules! poly_binop {
    ($tr:ident, $m:ident, $checked:ident) => {
        /// Panics when the variable counts differ; use the `try_` form to get an error.
        impl<'a> $tr<&'a Poly> for &'a Poly {
            type Output = Poly;
            fn $m(self, o: &Poly) -> Poly {
                self.$checked(o).expect("polynomial variable lists differ")
            }
        }
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $m(self, o: Poly) -> Poly {
                (&self).$m(&o)
            }
        }
    };
}
poly_binop!(Add, add, try_add);
poly_binop!(Sub, sub, try_sub);
poly_binop!(Mul, mul, try_mul);

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&-Scalar::one())
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xyz() -> (Poly, Poly, Poly) {
        (Poly::var(3, 0), Poly::var(3, 1), Poly::var(3, 2))
    }

    #[test]
    fn derivative_of_dubrovin_entry() {
        let (x, y, z) = xyz();
        let p = &(&x * &y) - &z.scale(&Scalar::from_int(2));
        assert_eq!(p.derivative(0), y);
    }

    #[test]
    fn difference_of_squares() {
        let x = Poly::var(2, 0);
        let y = Poly::var(2, 1);
        let lhs = &(&x + &y) * &(&x - &y);
        let rhs = &(&x * &x) - &(&y * &y);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn laurent_power_rule() {
        // d/da (a^2 - a^-2) = 2a + 2a^-3, checked term by term
        let p = Poly::from_terms(
            3,
            [
                (Scalar::one(), vec![2, 0, 0]),
                (-Scalar::one(), vec![-2, 0, 0]),
            ],
        );
        let expected = Poly::from_terms(
            3,
            [
                (Scalar::from_int(2), vec![1, 0, 0]),
                (Scalar::from_int(2), vec![-3, 0, 0]),
            ],
        );
        assert_eq!(p.derivative(0), expected);
    }

    #[test]
    fn mismatched_variables() {
        let a = Poly::var(2, 0);
        let b = Poly::var(3, 0);
        assert!(matches!(
            a.try_add(&b),
            Err(KernelError::VariableMismatch { .. })
        ));
    }

    #[test]
    fn canonical_print_order() {
        let (x, y, z) = xyz();
        let p = &(&x * &y) - &z.scale(&Scalar::from_int(2));
        let names: Vec<String> = ["x", "y", "z"].iter().map(|s| s.to_string()).collect();
        assert_eq!(p.display(&names).to_string(), "x*y - 2*z");
        let q = Poly::from_terms(1, [(Scalar::one(), vec![2]), (-Scalar::one(), vec![-2])]);
        assert_eq!(q.display(&["a".to_string()]).to_string(), "a^2 - a^-2");
    }

    #[test]
    fn exact_division_and_gcd() {
        let x = Poly::var(1, 0);
        let one = Poly::one(1);
        let a = &(&x - &one) * &(&x + &one);
        let b = &(&x - &one) * &x;
        assert_eq!(a.div_exact(&(&x + &one)), Some(&x - &one));
        assert_eq!(a.gcd_univariate(&b), Some(&x - &one));
        assert_eq!(a.div_exact(&x), None);
    }
}
