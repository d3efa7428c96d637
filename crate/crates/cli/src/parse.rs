//! Value parsers for command-line arguments.

use std::str::FromStr;

use num_rational::BigRational;
use padic_heights::curve::Point;
use padic_heights::padic::{LogBranch, Padic};
use padic_heights::{Error, Result};

/// Integer, `a/b`, or a p-adic token `p^v * u mod p^N`.
#[derive(Debug, Clone)]
pub enum Number {
    Rational(BigRational),
    Token(Padic),
}

impl FromStr for Number {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Number, String> {
        if s.contains(" mod ") {
            return Padic::parse_token(s).map(Number::Token).map_err(|e| e.to_string());
        }
        s.trim().parse::<BigRational>().map(Number::Rational).map_err(|_| format!("not a number: `{s}`"))
    }
}

impl Number {
    pub fn to_padic(&self, p: u64, prec: i64) -> Result<Padic> {
        match self {
            Number::Rational(r) => padic_heights::global::rational::to_padic(r, p, prec),
            Number::Token(x) if x.p() == p => Ok(x.clone()),
            Number::Token(x) => Err(Error::PrimeMismatch(x.p(), p)),
        }
    }

    pub fn rational(&self) -> Result<&BigRational> {
        match self {
            Number::Rational(r) => Ok(r),
            Number::Token(_) => Err(Error::Parse("expected a rational number".into())),
        }
    }
}

/// `λ(p)`: `iwasawa`, or a value; an exact `0` also selects the Iwasawa branch.
#[derive(Debug, Clone)]
pub enum BranchArg {
    Iwasawa,
    Value(Number),
}

impl FromStr for BranchArg {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<BranchArg, String> {
        if s.trim().eq_ignore_ascii_case("iwasawa") {
            return Ok(BranchArg::Iwasawa);
        }
        match s.parse::<Number>()? {
            Number::Rational(r) if r == BigRational::from_integer(0.into()) => Ok(BranchArg::Iwasawa),
            n => Ok(BranchArg::Value(n)),
        }
    }
}

impl BranchArg {
    pub fn branch(&self, p: u64, prec: i64) -> Result<LogBranch> {
        match self {
            BranchArg::Iwasawa => Ok(LogBranch::iwasawa(p)),
            BranchArg::Value(n) => Ok(LogBranch::new(n.to_padic(p, prec)?)),
        }
    }
}

pub fn rational_list(s: &str, len: usize) -> Result<Vec<BigRational>> {
    let out = s
        .split(',')
        .map(|t| t.trim().parse::<BigRational>().map_err(|_| Error::Parse(format!("not a rational: `{t}`"))))
        .collect::<Result<Vec<_>>>()?;
    if out.len() != len {
        return Err(Error::Parse(format!("expected {len} comma-separated values, got {}", out.len())));
    }
    Ok(out)
}

pub fn int_list(s: &str, len: usize) -> Result<Vec<i64>> {
    let out = s
        .split(',')
        .map(|t| t.trim().parse::<i64>().map_err(|_| Error::Parse(format!("not an integer: `{t}`"))))
        .collect::<Result<Vec<_>>>()?;
    if out.len() != len {
        return Err(Error::Parse(format!("expected {len} comma-separated integers, got {}", out.len())));
    }
    Ok(out)
}

pub fn rational_point(s: &str) -> Result<Point<BigRational>> {
    if s.trim().eq_ignore_ascii_case("o") || s.trim() == "inf" {
        return Ok(Point::Infinity);
    }
    let mut xy = rational_list(s, 2)?.into_iter();
    Ok(Point::Affine(xy.next().expect("two"), xy.next().expect("two")))
}
