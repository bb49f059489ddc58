//! Sparse multivariate polynomials over ℚ.
//!
//! Monomials are exponent vectors aligned with the variable list, variable 0
//! being the distinguished `X`. Terms are kept in graded-lexicographic order
//! with `X` first; rendering walks them from the highest monomial down.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, var: usize) -> Self {
        let mut e = vec![0; nvars];
        e[var] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn exponent(&self, var: usize) -> u32 {
        self.0[var]
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    fn with_exponent(&self, var: usize, e: u32) -> Monomial {
        let mut m = self.0.clone();
        m[var] = e;
        Monomial(m)
    }

    /// All monomials in `nvars` variables of total degree `degree`, highest first.
    pub fn all_of_degree(nvars: usize, degree: u32) -> Vec<Monomial> {
        fn rec(nvars: usize, left: u32, prefix: &mut Vec<u32>, out: &mut Vec<Monomial>) {
            if prefix.len() + 1 == nvars {
                prefix.push(left);
                out.push(Monomial(prefix.clone()));
                prefix.pop();
                return;
            }
            for e in (0..=left).rev() {
                prefix.push(e);
                rec(nvars, left - e, prefix, out);
                prefix.pop();
            }
        }
        if nvars == 0 {
            return if degree == 0 { vec![Monomial(vec![])] } else { vec![] };
        }
        let mut out = Vec::new();
        rec(nvars, degree, &mut Vec::new(), &mut out);
        out
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Monomial, BigRational>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Poly { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Poly::constant(nvars, BigRational::one())
    }

    pub fn constant(nvars: usize, c: BigRational) -> Self {
        Poly::term(nvars, Monomial::one(nvars), c)
    }

    pub fn var(nvars: usize, var: usize) -> Self {
        Poly::term(nvars, Monomial::var(nvars, var), BigRational::one())
    }

    pub fn term(nvars: usize, monomial: Monomial, c: BigRational) -> Self {
        assert_eq!(monomial.0.len(), nvars, "monomial arity");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(monomial, c);
        }
        Poly { nvars, terms }
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, BigRational)>) -> Self {
        let mut p = Poly::zero(nvars);
        for (m, c) in terms {
            assert_eq!(m.0.len(), nvars, "monomial arity");
            p.add_term(m, c);
        }
        p
    }

    /// Σ coeffs[i]·x_i.
    pub fn linear(coeffs: &[BigRational]) -> Self {
        let n = coeffs.len();
        Poly::from_terms(
            n,
            coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| (Monomial::var(n, i), c.clone())),
        )
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.degree() == 0)
    }

    pub fn constant_term(&self) -> BigRational {
        self.coefficient(&Monomial::one(self.nvars))
    }

    pub fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &BigRational) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one(self.nvars);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Highest total degree, `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// The common total degree of all terms, or `None` if not homogeneous.
    /// The zero polynomial is homogeneous of every degree and reports `Some(0)`.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => Some(0),
            Some(d) => degs.all(|e| e == d).then_some(d),
        }
    }

    pub fn is_homogeneous_of(&self, degree: u32) -> bool {
        self.terms.keys().all(|m| m.degree() == degree)
    }

    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.0[var]).max()
    }

    pub fn involves(&self, var: usize) -> bool {
        self.terms.keys().any(|m| m.0[var] > 0)
    }

    /// Coefficient of `var^k`, as a polynomial in which `var` no longer occurs.
    pub fn coeff_in(&self, var: usize, k: u32) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.0[var] == k)
                .map(|(m, c)| (m.with_exponent(var, 0), c.clone()))
                .collect(),
        }
    }

    /// `[c_0, c_1, …]` with `self = Σ c_k var^k`.
    pub fn split_in(&self, var: usize) -> Vec<Poly> {
        let d = match self.degree_in(var) {
            None => return Vec::new(),
            Some(d) => d,
        };
        let mut out = vec![Poly::zero(self.nvars); d as usize + 1];
        for (m, c) in &self.terms {
            let k = m.0[var] as usize;
            out[k].terms.insert(m.with_exponent(var, 0), c.clone());
        }
        out
    }

    /// Drops every term whose exponent in `var` is at least `k`.
    pub fn truncate_in(&self, var: usize, k: u32) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.0[var] < k)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn mul_var_pow(&self, var: usize, k: u32) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.with_exponent(var, m.0[var] + k), c.clone()))
                .collect(),
        }
    }

    /// Product truncated to `var`-degree below `k`.
    pub fn mul_truncated(&self, other: &Poly, var: usize, k: u32) -> Poly {
        assert_eq!(self.nvars, other.nvars);
        let mut out = Poly::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                if ma.0[var] + mb.0[var] < k {
                    out.add_term(ma.mul(mb), ca * cb);
                }
            }
        }
        out
    }

    /// Replaces each variable `x_i` by `images[i]`. The images may live in a
    /// different number of variables; all must agree.
    pub fn substitute(&self, images: &[Poly]) -> Poly {
        assert_eq!(images.len(), self.nvars, "one image per variable");
        let target = images.first().map_or(0, Poly::nvars);
        let mut powers: Vec<Vec<Poly>> = images.iter().map(|p| vec![Poly::one(p.nvars)]).collect();
        let mut out = Poly::zero(target);
        for (m, c) in &self.terms {
            let mut t = Poly::constant(target, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().unwrap() * &images[i];
                    powers[i].push(next);
                }
                t = &t * &powers[i][e as usize];
            }
            out = &out + &t;
        }
        out
    }

    /// Linear change of variables `x_i ↦ Σ_k rows[i][k]·x_k`.
    pub fn linear_substitute(&self, rows: &[Vec<BigRational>]) -> Poly {
        let images: Vec<Poly> = rows.iter().map(|r| Poly::linear(r)).collect();
        if images.is_empty() {
            return self.clone();
        }
        self.substitute(&images)
    }

    pub fn derivative(&self, var: usize) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[var];
            if e > 0 {
                out.add_term(m.with_exponent(var, e - 1), c * BigRational::from_integer(BigInt::from(e)));
            }
        }
        out
    }

    /// Coefficients of a homogeneous linear polynomial; `None` if `self` has
    /// a constant or nonlinear term.
    pub fn linear_coefficients(&self) -> Option<Vec<BigRational>> {
        let mut out = vec![BigRational::zero(); self.nvars];
        for (m, c) in &self.terms {
            if m.degree() != 1 {
                return None;
            }
            let i = m.0.iter().position(|&e| e == 1).unwrap();
            out[i] = c.clone();
        }
        Some(out)
    }

    /// Exact division by the linear form `Σ coeffs[i]·x_i`, or `None` if it
    /// does not divide. Synthetic division in a variable the form involves.
    pub fn div_linear(&self, coeffs: &[BigRational]) -> Option<Poly> {
        assert_eq!(coeffs.len(), self.nvars);
        let var = coeffs.iter().position(|c| !c.is_zero())?;
        if self.is_zero() {
            return Some(self.clone());
        }
        let lead = &coeffs[var];
        let mut rest = coeffs.to_vec();
        rest[var] = BigRational::zero();
        let rest = Poly::linear(&rest);
        let parts = self.split_in(var);
        let d = parts.len() - 1;
        if d == 0 {
            return None;
        }
        // p_j = lead·q_{j-1} + rest·q_j, highest first
        let mut q = vec![Poly::zero(self.nvars); d];
        let inv = lead.recip();
        q[d - 1] = parts[d].scale(&inv);
        for j in (1..d).rev() {
            q[j - 1] = (&parts[j] - &(&rest * &q[j])).scale(&inv);
        }
        let remainder = &parts[0] - &(&rest * &q[0]);
        if !remainder.is_zero() {
            return None;
        }
        let mut out = Poly::zero(self.nvars);
        for (j, qj) in q.into_iter().enumerate() {
            out = &out + &qj.mul_var_pow(var, j as u32);
        }
        Some(out)
    }

    /// Smallest positive integer making every coefficient integral.
    pub fn denominator_lcm(&self) -> BigInt {
        use num_integer::Integer;
        self.terms
            .values()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }

    pub fn display_with(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mono = render_monomial(m, names);
            if mono.is_empty() {
                let _ = write!(s, "{abs}");
            } else if abs.is_one() {
                s.push_str(&mono);
            } else {
                let _ = write!(s, "{abs}*{mono}");
            }
        }
        s
    }
}

fn render_monomial(m: &Monomial, names: &[String]) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.0.iter().enumerate() {
        let name = names.get(i).cloned().unwrap_or_else(|| format!("x{i}"));
        match e {
            0 => {}
            1 => parts.push(name),
            _ => parts.push(format!("{name}^{e}")),
        }
    }
    parts.join("*")
}

/// Default variable names: `X, Y1, …, Ym`.
pub fn default_names(nvars: usize) -> Vec<String> {
    (0..nvars)
        .map(|i| if i == 0 { "X".to_string() } else { format!("Y{i}") })
        .collect()
}

impl std::fmt::Display for Poly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.display_with(&default_names(self.nvars)))
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut out = Poly::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

/// Parses a rational written as `p`, `-p` or `p/q`.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let t = s.trim();
    let r: BigRational = t
        .parse()
        .map_err(|_| Error::Parse(format!("not a rational number: {s:?}")))?;
    Ok(r)
}

pub fn rational_string(r: &BigRational) -> String {
    r.to_string()
}

/// Parses polynomial text such as `X^2 - 3/2*X*Y1 + 1` over the given
/// variable names. Errors carry the character offset.
pub fn parse_poly(text: &str, names: &[String]) -> Result<Poly> {
    let mut parser = PolyParser { chars: text.chars().collect(), pos: 0, names };
    let p = parser.sum()?;
    parser.skip_ws();
    if parser.pos != parser.chars.len() {
        return Err(parser.error("unexpected trailing input"));
    }
    Ok(p)
}

struct PolyParser<'a> {
    chars: Vec<char>,
    pos: usize,
    names: &'a [String],
}

impl PolyParser<'_> {
    fn error(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} at offset {}", self.pos))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn sum(&mut self) -> Result<Poly> {
        let n = self.names.len();
        let mut acc = Poly::zero(n);
        let mut sign = BigRational::one();
        match self.peek() {
            Some('-') => {
                self.pos += 1;
                sign = -sign;
            }
            Some('+') => self.pos += 1,
            _ => {}
        }
        loop {
            let t = self.product()?;
            acc = &acc + &t.scale(&sign);
            match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    sign = BigRational::one();
                }
                Some('-') => {
                    self.pos += 1;
                    sign = -BigRational::one();
                }
                _ => return Ok(acc),
            }
        }
    }

    fn product(&mut self) -> Result<Poly> {
        let mut acc = self.factor()?;
        while self.peek() == Some('*') {
            self.pos += 1;
            let f = self.factor()?;
            acc = &acc * &f;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Poly> {
        let n = self.names.len();
        let base = match self.peek() {
            None => return Err(self.error("unexpected end of input")),
            Some('(') => {
                self.pos += 1;
                let inner = self.sum()?;
                if self.peek() != Some(')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                inner
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.chars.len()
                    && (self.chars[self.pos].is_ascii_digit() || self.chars[self.pos] == '/')
                {
                    self.pos += 1;
                }
                let lit: String = self.chars[start..self.pos].iter().collect();
                let r = parse_rational(&lit).map_err(|_| {
                    Error::Parse(format!("bad number {lit:?} at offset {start}"))
                })?;
                Poly::constant(n, r)
            }
            Some(c) if c.is_alphabetic() || c == '_' => {
                let start = self.pos;
                while self.pos < self.chars.len()
                    && (self.chars[self.pos].is_alphanumeric() || self.chars[self.pos] == '_')
                {
                    self.pos += 1;
                }
                let ident: String = self.chars[start..self.pos].iter().collect();
                let idx = self.names.iter().position(|v| *v == ident).ok_or_else(|| {
                    Error::Parse(format!("unknown variable {ident:?} at offset {start}"))
                })?;
                Poly::var(n, idx)
            }
            Some(_) => return Err(self.error("unexpected character")),
        };
        if self.peek() == Some('^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            let lit: String = self.chars[start..self.pos].iter().collect();
            let e: u32 = lit
                .parse()
                .map_err(|_| Error::Parse(format!("bad exponent at offset {start}")))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    fn names() -> Vec<String> {
        default_names(2)
    }

    #[test]
    fn grlex_display_order() {
        let p = parse_poly("Y1^2 + X*Y1 + X^2 + 1", &names()).unwrap();
        assert_eq!(p.to_string(), "X^2 + X*Y1 + Y1^2 + 1");
    }

    #[test]
    fn parse_and_render_roundtrip() {
        let p = parse_poly("-3/2*X^2*Y1 + 7 - Y1", &names()).unwrap();
        let again = parse_poly(&p.to_string(), &names()).unwrap();
        assert_eq!(p, again);
    }

    #[test]
    fn parse_error_has_offset() {
        let err = parse_poly("X + Z", &names()).unwrap_err();
        assert!(err.to_string().contains("offset 4"), "{err}");
    }

    #[test]
    fn divides_by_linear_form() {
        let p = parse_poly("X^2 - Y1^2", &names()).unwrap();
        let quo = p.div_linear(&[q(1), q(-1)]).unwrap();
        assert_eq!(quo, parse_poly("X + Y1", &names()).unwrap());
        assert!(parse_poly("X^2 + Y1^2", &names()).unwrap().div_linear(&[q(1), q(-1)]).is_none());
        // form only involving Y1
        let r = parse_poly("X*Y1 + 2*Y1^2", &names()).unwrap();
        assert_eq!(r.div_linear(&[q(0), q(2)]).unwrap(), parse_poly("1/2*X + Y1", &names()).unwrap());
    }

    #[test]
    fn substitution_and_derivative() {
        let p = parse_poly("X^2*Y1", &names()).unwrap();
        let images = vec![parse_poly("X + Y1", &names()).unwrap(), Poly::var(2, 1)];
        assert_eq!(p.substitute(&images), parse_poly("X^2*Y1 + 2*X*Y1^2 + Y1^3", &names()).unwrap());
        assert_eq!(p.derivative(0), parse_poly("2*X*Y1", &names()).unwrap());
    }

    #[test]
    fn monomials_of_degree() {
        let ms = Monomial::all_of_degree(3, 2);
        assert_eq!(ms.len(), 6);
        assert_eq!(ms[0].exponents(), &[2, 0, 0]);
    }
}
