//! Expression language for coefficients, polynomials and rational functions.
//!
//! ```text
//! expr     := term (('+' | '-') term)*
//! term     := unary (('*' | '/') unary)*
//! unary    := ('+' | '-') unary | power
//! power    := atom ('^' exponent)?
//! exponent := ['-'] integer | '(' ['-'] integer ')'
//! atom     := integer | identifier | '(' expr ')'
//! ```
//!
//! Identifiers are the declared variables; in Gaussian mode `i` denotes the
//! imaginary unit. Whitespace is ignored. Positions in errors are byte
//! offsets into the source.

use super::poly::{Exponents, Poly};
use super::ratfunc::RatFunc;
use super::scalar::Scalar;
use super::KernelError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    /// Polynomials: division only by nonzero constants.
    Poly,
    /// Laurent polynomials: division by monomials, negative exponents allowed.
    Laurent,
    /// Rational functions.
    RatFunc,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Parsed {
    Poly(Poly),
    RatFunc(RatFunc),
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(num_bigint::BigInt),
    Ident(String),
    Op(char),
}

fn tokenize(src: &str) -> Result<Vec<(Tok, usize)>, KernelError> {
    let mut out = Vec::new();
    let bytes: Vec<(usize, char)> = src.char_indices().collect();
    let mut k = 0;
    while k < bytes.len() {
        let (pos, ch) = bytes[k];
        if ch.is_whitespace() {
            k += 1;
        } else if ch.is_ascii_digit() {
            let start = k;
            while k < bytes.len() && bytes[k].1.is_ascii_digit() {
                k += 1;
            }
            let end = if k < bytes.len() {
                bytes[k].0
            } else {
                src.len()
            };
            let digits = &src[bytes[start].0..end];
            out.push((Tok::Int(digits.parse().expect("digits")), pos));
        } else if ch.is_alphabetic() || ch == '_' {
            let start = k;
            while k < bytes.len() && (bytes[k].1.is_alphanumeric() || bytes[k].1 == '_') {
                k += 1;
            }
            let end = if k < bytes.len() {
                bytes[k].0
            } else {
                src.len()
            };
            out.push((Tok::Ident(src[bytes[start].0..end].to_string()), pos));
        } else if "+-*/^()".contains(ch) {
            out.push((Tok::Op(ch), pos));
            k += 1;
        } else {
            return Err(KernelError::Syntax {
                pos,
                msg: format!("unexpected character '{ch}'"),
            });
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    at: usize,
    end: usize,
    vars: &'a [String],
    mode: Mode,
    gaussian: bool,
}

impl Parser<'_> {
    fn nvars(&self) -> usize {
        self.vars.len()
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(t, _)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map(|(_, p)| *p).unwrap_or(self.end)
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Tok::Op(op)) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<RatFunc, KernelError> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<RatFunc, KernelError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = &acc * &self.unary()?;
            } else if self.peek() == Some(&Tok::Op('/')) {
                let pos = self.pos();
                self.at += 1;
                let d = self.unary()?;
                acc = self.divide(&acc, &d, pos)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn divide(&self, a: &RatFunc, d: &RatFunc, pos: usize) -> Result<RatFunc, KernelError> {
        if d.is_zero() {
            return Err(KernelError::DivisionByZero { pos });
        }
        match self.mode {
            Mode::Poly if !d.is_constant() => return Err(KernelError::DivisionByVariable { pos }),
            Mode::Laurent if !is_monomial(d) => {
                return Err(KernelError::DivisionByVariable { pos })
            }
            _ => {}
        }
        Ok(a.checked_div(d).expect("nonzero divisor"))
    }

    fn unary(&mut self) -> Result<RatFunc, KernelError> {
        if self.eat('-') {
            return Ok(-&self.unary()?);
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<RatFunc, KernelError> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let pos = self.pos();
        let paren = self.eat('(');
        let neg = self.eat('-');
        let exp = match self.peek() {
            Some(Tok::Int(n)) => {
                let n: i32 = n.try_into().map_err(|_| KernelError::Syntax {
                    pos: self.pos(),
                    msg: "exponent too large".into(),
                })?;
                self.at += 1;
                if neg {
                    -n
                } else {
                    n
                }
            }
            _ => {
                return Err(KernelError::Syntax {
                    pos: self.pos(),
                    msg: "expected integer exponent".into(),
                })
            }
        };
        if paren && !self.eat(')') {
            return Err(KernelError::Syntax {
                pos: self.pos(),
                msg: "expected ')'".into(),
            });
        }
        if exp >= 0 {
            let mut acc = RatFunc::constant(self.nvars(), Scalar::one());
            for _ in 0..exp {
                acc = &acc * &base;
            }
            return Ok(acc);
        }
        let one = RatFunc::constant(self.nvars(), Scalar::one());
        let mut inv = one.clone();
        for _ in 0..-exp {
            inv = self.divide(&inv, &base, pos)?;
        }
        Ok(inv)
    }

    fn atom(&mut self) -> Result<RatFunc, KernelError> {
        let pos = self.pos();
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.at += 1;
                let q = num_rational::BigRational::from_integer(n);
                Ok(RatFunc::constant(self.nvars(), Scalar::from(q)))
            }
            Some(Tok::Ident(name)) => {
                self.at += 1;
                if let Some(k) = self.vars.iter().position(|v| *v == name) {
                    return Ok(RatFunc::from_poly(Poly::var(self.nvars(), k)));
                }
                if self.gaussian && name == "i" {
                    return Ok(RatFunc::constant(self.nvars(), Scalar::i()));
                }
                Err(KernelError::UnknownVariable { name, pos })
            }
            Some(Tok::Op('(')) => {
                self.at += 1;
                let v = self.expr()?;
                if !self.eat(')') {
                    return Err(KernelError::Syntax {
                        pos: self.pos(),
                        msg: "expected ')'".into(),
                    });
                }
                Ok(v)
            }
            Some(Tok::Op(c)) => Err(KernelError::Syntax {
                pos,
                msg: format!("unexpected '{c}'"),
            }),
            None => Err(KernelError::Syntax {
                pos,
                msg: "unexpected end of input".into(),
            }),
        }
    }
}

fn is_monomial(f: &RatFunc) -> bool {
    f.den().is_constant() && f.num().as_monomial().is_some()
        || f.num().is_constant() && f.den().as_monomial().is_some()
}

/// Converts a rational function whose denominator is a monomial into a Laurent polynomial.
fn to_laurent(f: &RatFunc) -> Option<Poly> {
    let (e, c) = f.den().as_monomial()?;
    let inv = Poly::monomial(
        f.nvars(),
        c.inv()?,
        Exponents(e.0.iter().map(|k| -k).collect()),
    );
    Some(f.num() * &inv)
}

/// Parses `src` over the variables `vars` in the given mode.
pub fn parse_expression(
    src: &str,
    vars: &[String],
    mode: Mode,
    gaussian: bool,
) -> Result<Parsed, KernelError> {
    if gaussian && vars.iter().any(|v| v == "i") {
        return Err(KernelError::ReservedName("i".into()));
    }
    let toks = tokenize(src)?;
    let mut p = Parser {
        toks,
        at: 0,
        end: src.len(),
        vars,
        mode,
        gaussian,
    };
    let value = p.expr()?;
    if p.at != p.toks.len() {
        return Err(KernelError::Syntax {
            pos: p.pos(),
            msg: "trailing input".into(),
        });
    }
    match mode {
        Mode::RatFunc => Ok(Parsed::RatFunc(value)),
        Mode::Poly | Mode::Laurent => {
            let poly = to_laurent(&value).ok_or(KernelError::DivisionByVariable { pos: 0 })?;
            if mode == Mode::Poly && poly.has_negative_exponents() {
                return Err(KernelError::DivisionByVariable { pos: 0 });
            }
            Ok(Parsed::Poly(poly))
        }
    }
}

/// Polynomial or Laurent polynomial, following the flag on `vars`.
pub fn parse_poly(
    src: &str,
    vars: &super::poly::Vars,
    gaussian: bool,
) -> Result<Poly, KernelError> {
    let mode = if vars.laurent {
        Mode::Laurent
    } else {
        Mode::Poly
    };
    match parse_expression(src, &vars.names, mode, gaussian)? {
        Parsed::Poly(p) => Ok(p),
        Parsed::RatFunc(_) => unreachable!("polynomial modes return polynomials"),
    }
}

pub fn parse_ratfunc(src: &str, vars: &[String], gaussian: bool) -> Result<RatFunc, KernelError> {
    match parse_expression(src, vars, Mode::RatFunc, gaussian)? {
        Parsed::RatFunc(f) => Ok(f),
        Parsed::Poly(_) => unreachable!("rational mode returns rational functions"),
    }
}

/// A constant expression such as `-3/4` or `(1 + 2*i)/3`.
pub fn parse_scalar(src: &str, gaussian: bool) -> Result<Scalar, KernelError> {
    match parse_expression(src, &[], Mode::Poly, gaussian)? {
        Parsed::Poly(p) => Ok(p.constant_value().expect("no variables")),
        Parsed::RatFunc(_) => unreachable!(),
    }
}

/// A linear combination of the named basis elements, e.g. `2*e - h/3`.
pub fn parse_linear(
    src: &str,
    basis: &[String],
    gaussian: bool,
) -> Result<Vec<Scalar>, KernelError> {
    let p = match parse_expression(src, basis, Mode::Poly, gaussian)? {
        Parsed::Poly(p) => p,
        Parsed::RatFunc(_) => unreachable!(),
    };
    let mut out = vec![Scalar::zero(); basis.len()];
    for (e, c) in p.terms() {
        let deg: Vec<usize> =
            e.0.iter()
                .enumerate()
                .filter(|(_, &k)| k != 0)
                .map(|(i, _)| i)
                .collect();
        match deg.as_slice() {
            [k] if e.0[*k] == 1 => out[*k] = c.clone(),
            _ => return Err(KernelError::NotLinear(src.to_string())),
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::poly::Vars;

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn dubrovin_entry_term_map() {
        let p = parse_poly("x*y - 2*z", &Vars::new(&["x", "y", "z"]), false).unwrap();
        assert_eq!(p.num_terms(), 2);
        assert_eq!(p.coeff(&[1, 1, 0]), Scalar::one());
        assert_eq!(p.coeff(&[0, 0, 1]), Scalar::from_int(-2));
    }

    #[test]
    fn zero_is_empty() {
        let p = parse_poly("0", &Vars::new(&["x"]), false).unwrap();
        assert!(p.is_zero());
    }

    #[test]
    fn laurent_negative_exponent() {
        let p = parse_poly("a^2 - a^-2", &Vars::laurent(&["a", "b", "c"]), false).unwrap();
        assert_eq!(p.num_terms(), 2);
        assert_eq!(p.coeff(&[2, 0, 0]), Scalar::one());
        assert_eq!(p.coeff(&[-2, 0, 0]), Scalar::from_int(-1));
        let q = parse_poly("a^2 - 1/a^2", &Vars::laurent(&["a", "b", "c"]), false).unwrap();
        assert_eq!(p, q);
    }

    #[test]
    fn poly_mode_rejects_division_by_variable() {
        let err = parse_poly("x/y", &Vars::new(&["x", "y"]), false).unwrap_err();
        assert!(matches!(err, KernelError::DivisionByVariable { pos: 1 }));
        assert!(parse_poly("x^-1", &Vars::new(&["x"]), false).is_err());
        assert!(parse_poly("x/2", &Vars::new(&["x"]), false).is_ok());
    }

    #[test]
    fn laurent_rejects_division_by_binomial() {
        assert!(parse_poly("1/(a+b)", &Vars::laurent(&["a", "b"]), false).is_err());
    }

    #[test]
    fn errors_carry_positions() {
        let v = Vars::new(&["x"]);
        assert!(matches!(
            parse_poly("x + q", &v, false),
            Err(KernelError::UnknownVariable { pos: 4, .. })
        ));
        assert!(matches!(
            parse_poly("x + ", &v, false),
            Err(KernelError::Syntax { pos: 4, .. })
        ));
        assert!(matches!(
            parse_poly("x $ 1", &v, false),
            Err(KernelError::Syntax { pos: 2, .. })
        ));
        assert!(matches!(
            parse_poly("x/(x-x)", &v, false),
            Err(KernelError::DivisionByZero { .. })
        ));
    }

    #[test]
    fn gaussian_unit() {
        let z = parse_scalar("(1 + 2*i)/3", true).unwrap();
        assert_eq!(
            z,
            Scalar::gaussian(Scalar::ratio(1, 3), Scalar::ratio(2, 3))
        );
        assert!(parse_scalar("i", false).is_err());
        assert!(matches!(
            parse_expression("i", &names(&["i"]), Mode::Poly, true),
            Err(KernelError::ReservedName(_))
        ));
    }

    #[test]
    fn rational_functions() {
        let f = parse_ratfunc("1/lambda - 2/(lambda^2)", &names(&["lambda"]), false).unwrap();
        let g = parse_ratfunc("(lambda - 2)/lambda^2", &names(&["lambda"]), false).unwrap();
        assert_eq!(f, g);
    }

    #[test]
    fn linear_combinations() {
        let b = names(&["e", "f", "h"]);
        assert_eq!(
            parse_linear("2*e - h/2", &b, false).unwrap(),
            vec![Scalar::from_int(2), Scalar::zero(), Scalar::ratio(-1, 2)]
        );
        assert!(matches!(
            parse_linear("e*f", &b, false),
            Err(KernelError::NotLinear(_))
        ));
        assert!(matches!(
            parse_linear("e + 1", &b, false),
            Err(KernelError::NotLinear(_))
        ));
    }
}
