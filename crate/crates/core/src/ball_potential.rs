//! General (not necessarily radial) potentials on the unit ball.
//!
//! Spec grammar: a product of factors joined by ` x `, or `sum:[p1;p2;...]`.
//! Factors are `radial:<radial spec>`, `monomial:i,j,k` (`x₁^i x₂^j x₃^k`),
//! `bump:r0,w` (unit-height radial bump), or any radial spec directly.

use alloc::boxed::Box;
use alloc::vec::Vec;
use num_traits::Float;

use crate::error::Result;
use crate::parse::{floats, head, parse_err, split_top};
use crate::potential::RadialPotential;

#[derive(Debug, Clone, PartialEq)]
pub enum BallPotential {
    Radial(RadialPotential),
    Monomial([u32; 3]),
    Product(Vec<BallPotential>),
    Sum(Vec<BallPotential>),
    Scaled(f64, Box<BallPotential>),
}

impl BallPotential {
    pub fn eval(&self, x: &[f64]) -> f64 {
        match self {
            BallPotential::Radial(q) => q.eval(Float::sqrt(x.iter().map(|c| c * c).sum::<f64>())),
            BallPotential::Monomial(e) => x
                .iter()
                .zip(e)
                .map(|(c, p)| Float::powi(*c, *p as i32))
                .product(),
            BallPotential::Product(fs) => fs.iter().map(|f| f.eval(x)).product(),
            BallPotential::Sum(fs) => fs.iter().map(|f| f.eval(x)).sum(),
            BallPotential::Scaled(t, f) => t * f.eval(x),
        }
    }

    pub fn scaled(self, t: f64) -> Self {
        BallPotential::Scaled(t, Box::new(self))
    }

    /// Total degree if the potential is a polynomial in `x`.
    pub fn polynomial_degree(&self) -> Option<usize> {
        match self {
            BallPotential::Radial(RadialPotential::Const(_)) => Some(0),
            BallPotential::Radial(RadialPotential::Well { p, .. }) if *p == Float::round(*p) => {
                Some(2 * *p as usize)
            }
            BallPotential::Radial(_) => None,
            BallPotential::Monomial(e) => Some(e.iter().sum::<u32>() as usize),
            BallPotential::Product(fs) => fs.iter().map(|f| f.polynomial_degree()).sum(),
            BallPotential::Sum(fs) => fs
                .iter()
                .map(|f| f.polynomial_degree())
                .try_fold(0, |a, d| d.map(|d| a.max(d))),
            BallPotential::Scaled(_, f) => f.polynomial_degree(),
        }
    }

    /// Degree in the direction variable on each sphere `|x| = r`.
    pub fn angular_degree(&self) -> usize {
        match self {
            BallPotential::Radial(_) => 0,
            BallPotential::Monomial(e) => e.iter().sum::<u32>() as usize,
            BallPotential::Product(fs) => fs.iter().map(|f| f.angular_degree()).sum(),
            BallPotential::Sum(fs) => fs.iter().map(|f| f.angular_degree()).max().unwrap_or(0),
            BallPotential::Scaled(_, f) => f.angular_degree(),
        }
    }

    /// True when the potential is built from radial factors only.
    pub fn is_structurally_radial(&self) -> bool {
        match self {
            BallPotential::Radial(_) => true,
            BallPotential::Monomial(e) => e.iter().all(|p| *p == 0),
            BallPotential::Product(fs) | BallPotential::Sum(fs) => {
                fs.iter().all(|f| f.is_structurally_radial())
            }
            BallPotential::Scaled(_, f) => f.is_structurally_radial(),
        }
    }

    pub fn parse_with(
        input: &str,
        load: &mut dyn FnMut(&str) -> Result<Vec<(f64, f64)>>,
    ) -> Result<Self> {
        let s = input.trim();
        if let Some(rest) = s.strip_prefix("sum:") {
            let inner = rest
                .trim()
                .strip_prefix('[')
                .and_then(|r| r.strip_suffix(']'))
                .ok_or_else(|| parse_err(input, "sum needs a bracketed list `sum:[a;b]`"))?;
            let parts = split_top(inner, ';')
                .into_iter()
                .map(|p| Self::parse_with(p, load))
                .collect::<Result<Vec<_>>>()?;
            if parts.is_empty() {
                return Err(parse_err(input, "empty sum"));
            }
            return Ok(BallPotential::Sum(parts));
        }
        let factors: Vec<&str> = split_product(s);
        if factors.len() > 1 {
            let fs = factors
                .into_iter()
                .map(|f| Self::parse_with(f, load))
                .collect::<Result<Vec<_>>>()?;
            return Ok(BallPotential::Product(fs));
        }
        let (family, body) = head(s)?;
        match family {
            "radial" => Ok(BallPotential::Radial(RadialPotential::parse_with(
                body, load,
            )?)),
            "monomial" => {
                let v = floats(input, body)?;
                if v.len() != 3 || v.iter().any(|e| *e < 0.0 || *e != Float::round(*e)) {
                    return Err(parse_err(
                        input,
                        "monomial needs three nonnegative integers",
                    ));
                }
                Ok(BallPotential::Monomial([
                    v[0] as u32,
                    v[1] as u32,
                    v[2] as u32,
                ]))
            }
            "bump" => {
                let v = floats(input, body)?;
                let spec = match v.len() {
                    2 => alloc::format!("bump:1,{},{}", v[0], v[1]),
                    3 => alloc::format!("bump:{}", body),
                    _ => return Err(parse_err(input, "bump takes `r0,w` or `a,r0,w`")),
                };
                Ok(BallPotential::Radial(RadialPotential::parse(&spec)?))
            }
            _ => Ok(BallPotential::Radial(RadialPotential::parse_with(s, load)?)),
        }
    }

    pub fn parse(input: &str) -> Result<Self> {
        Self::parse_with(input, &mut |_| {
            Err(parse_err(input, "table files need the std front end"))
        })
    }
}

/// Split on the product separator ` x ` outside brackets.
fn split_product(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let bytes = s.as_bytes();
    let mut depth = 0i32;
    let mut start = 0;
    let mut i = 0;
    while i < bytes.len() {
        match bytes[i] {
            b'[' => depth += 1,
            b']' => depth -= 1,
            b'x' if depth == 0
                && i > 0
                && bytes[i - 1] == b' '
                && bytes.get(i + 1) == Some(&b' ') =>
            {
                out.push(s[start..i - 1].trim());
                start = i + 2;
            }
            _ => {}
        }
        i += 1;
    }
    out.push(s[start..].trim());
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_product_and_sum() {
        let q = BallPotential::parse("monomial:0,0,1 x bump:0.5,0.2").unwrap();
        assert!(matches!(&q, BallPotential::Product(f) if f.len() == 2));
        assert_eq!(q.eval(&[0.0, 0.0, 0.2]), 0.2);
        assert_eq!(q.eval(&[0.0, 0.0, 0.6]), 0.0);
        let s = BallPotential::parse("sum:[radial:const:1;monomial:1,0,0]").unwrap();
        assert_eq!(s.eval(&[0.5, 0.0, 0.0]), 1.5);
        assert_eq!(s.polynomial_degree(), Some(1));
        let w = BallPotential::parse("radial:well:1,2").unwrap();
        assert!(w.is_structurally_radial());
        assert_eq!(w.polynomial_degree(), Some(4));
        assert!(BallPotential::parse("monomial:1,2").is_err());
        assert!(BallPotential::parse("sum:radial:const:1").is_err());
    }
}
