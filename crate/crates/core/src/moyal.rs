//! Flat phase space: polynomials in `(u_i, v_i, ħ)` with the Moyal product.
//!
//! With the bidifferential operator
//! `△ = Σ_i (←∂_{v_i} →∂_{u_i} − ←∂_{u_i} →∂_{v_i})` the product is
//! `f ⋆ g = f exp(½ iħ △) g`, the Poisson bracket is `{f, g} = f △ g`, and
//! `f ⋆ g − g ⋆ f = 2i f sin(½ ħ △) g = iħ {f, g} + O(ħ³)`.
//! In particular `[v, u]_M = iħ` and `{v, u} = 1`.
//!
//! A one-sided exponential `f exp(c ∂_v ∂_u) g` would also be associative, but
//! its commutator carries even powers of ħ and does not reduce to the sine
//! form, so the antisymmetric operator is used throughout.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};


use crate::error::{Error, Result};
use crate::exact::{cq, format_cq, frac, CRational, Rational};

/// `ħ^h Π u_i^{u[i]} v_i^{v[i]}`. Ordered by ħ power first.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    pub h: u32,
    pub u: Vec<u32>,
    pub v: Vec<u32>,
}

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial { h: 0, u: vec![0; n], v: vec![0; n] }
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial {
            h: self.h + other.h,
            u: self.u.iter().zip(&other.u).map(|(a, b)| a + b).collect(),
            v: self.v.iter().zip(&other.v).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn degree(&self) -> u32 {
        self.u.iter().chain(&self.v).sum()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhasePolynomial {
    n_pairs: usize,
    terms: BTreeMap<Monomial, CRational>,
}

/// `x^a ↦ a!/(a−k)! x^{a−k}`, or `None` when it vanishes.
fn falling(a: u32, k: u32) -> Option<i128> {
    if k > a {
        return None;
    }
    Some(((a - k + 1)..=a).map(|x| x as i128).product())
}

fn factorial(n: u32) -> i128 {
    (1..=n as i128).product()
}

fn rat(x: i128) -> CRational {
    cq(x, 0)
}

impl PhasePolynomial {
    pub fn zero(n_pairs: usize) -> Self {
        PhasePolynomial { n_pairs, terms: BTreeMap::new() }
    }

    pub fn constant(n_pairs: usize, c: CRational) -> Self {
        let mut p = Self::zero(n_pairs);
        p.add_term(Monomial::one(n_pairs), c);
        p
    }

    pub fn one(n_pairs: usize) -> Self {
        Self::constant(n_pairs, cq(1, 0))
    }

    /// `u_i` (0-based pair index).
    pub fn u(n_pairs: usize, i: usize) -> Self {
        let mut m = Monomial::one(n_pairs);
        m.u[i] = 1;
        Self::from_monomial(n_pairs, m, cq(1, 0))
    }

    pub fn v(n_pairs: usize, i: usize) -> Self {
        let mut m = Monomial::one(n_pairs);
        m.v[i] = 1;
        Self::from_monomial(n_pairs, m, cq(1, 0))
    }

    pub fn hbar(n_pairs: usize) -> Self {
        let mut m = Monomial::one(n_pairs);
        m.h = 1;
        Self::from_monomial(n_pairs, m, cq(1, 0))
    }

    pub fn from_monomial(n_pairs: usize, m: Monomial, c: CRational) -> Self {
        let mut p = Self::zero(n_pairs);
        p.add_term(m, c);
        p
    }

    pub fn n_pairs(&self) -> usize {
        self.n_pairs
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, CRational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> CRational {
        self.terms.get(m).cloned().unwrap_or_else(|| cq(0, 0))
    }

    pub fn add_term(&mut self, m: Monomial, c: CRational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m.clone()).or_insert_with(|| cq(0, 0));
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.n_pairs != other.n_pairs {
            return Err(Error::DimensionMismatch { expected: self.n_pairs, found: other.n_pairs });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), *c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&cq(-1, 0)))
    }

    pub fn scale(&self, c: &CRational) -> Self {
        let mut out = Self::zero(self.n_pairs);
        for (m, x) in &self.terms {
            out.add_term(m.clone(), x * c);
        }
        out
    }

    /// Pointwise (commutative) product.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = Self::zero(self.n_pairs);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::one(self.n_pairs);
        for _ in 0..k {
            out = out.mul(self).unwrap();
        }
        out
    }

    /// Sets ħ = 0.
    pub fn classical_limit(&self) -> Self {
        let mut out = Self::zero(self.n_pairs);
        for (m, c) in &self.terms {
            if m.h == 0 {
                out.add_term(m.clone(), *c);
            }
        }
        out
    }

    /// Coefficient of ħ^k as a polynomial in `(u, v)`.
    pub fn hbar_coefficient(&self, k: u32) -> Self {
        let mut out = Self::zero(self.n_pairs);
        for (m, c) in &self.terms {
            if m.h == k {
                let mut m2 = m.clone();
                m2.h = 0;
                out.add_term(m2, *c);
            }
        }
        out
    }

    pub fn min_hbar_power(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.h).min()
    }

    /// Applies `∂_u^{du} ∂_v^{dv}` (per-pair orders) to every term.
    fn derive(&self, du: &[u32], dv: &[u32]) -> Self {
        let mut out = Self::zero(self.n_pairs);
        'terms: for (m, c) in &self.terms {
            let mut factor: i128 = 1;
            let mut m2 = m.clone();
            for i in 0..self.n_pairs {
                match (falling(m.u[i], du[i]), falling(m.v[i], dv[i])) {
                    (Some(a), Some(b)) => {
                        factor *= a * b;
                        m2.u[i] -= du[i];
                        m2.v[i] -= dv[i];
                    }
                    _ => continue 'terms,
                }
            }
            out.add_term(m2, c * rat(factor));
        }
        out
    }

    fn max_degrees(&self) -> (Vec<u32>, Vec<u32>) {
        let mut du = vec![0; self.n_pairs];
        let mut dv = vec![0; self.n_pairs];
        for m in self.terms.keys() {
            for i in 0..self.n_pairs {
                du[i] = du[i].max(m.u[i]);
                dv[i] = dv[i].max(m.v[i]);
            }
        }
        (du, dv)
    }
}

/// All vectors `k` with `0 ≤ k[i] ≤ bound[i]`.
fn multi_indices(bound: &[u32]) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for &b in bound {
        let mut next = Vec::with_capacity(out.len() * (b as usize + 1));
        for prefix in &out {
            for k in 0..=b {
                let mut p = prefix.clone();
                p.push(k);
                next.push(p);
            }
        }
        out = next;
    }
    out
}

fn multi_factorial(a: &[u32]) -> i128 {
    a.iter().map(|&k| factorial(k)).product()
}

fn hbar_monomial(n: usize, k: u32) -> Monomial {
    let mut m = Monomial::one(n);
    m.h = k;
    m
}

/// `f exp(½ iħ △) g`, summed over the finitely many surviving derivative
/// orders `α` (on `(∂_v f, ∂_u g)`) and `β` (on `(∂_u f, ∂_v g)`).
pub fn star_product(f: &PhasePolynomial, g: &PhasePolynomial) -> Result<PhasePolynomial> {
    f.check(g)?;
    let n = f.n_pairs;
    let (fu, fv) = f.max_degrees();
    let (gu, gv) = g.max_degrees();
    let alpha_bound: Vec<u32> = (0..n).map(|i| fv[i].min(gu[i])).collect();
    let beta_bound: Vec<u32> = (0..n).map(|i| fu[i].min(gv[i])).collect();
    let half_i = CRational::new(Rational::zero(), Rational::new(1, 2));
    let mut out = PhasePolynomial::zero(n);
    for alpha in multi_indices(&alpha_bound) {
        for beta in multi_indices(&beta_bound) {
            let order: u32 = alpha.iter().chain(&beta).sum();
            let fd = f.derive(&beta, &alpha);
            if fd.is_zero() {
                continue;
            }
            let gd = g.derive(&alpha, &beta);
            if gd.is_zero() {
                continue;
            }
            let sign = if beta.iter().sum::<u32>() % 2 == 0 { 1 } else { -1 };
            let coeff = half_i.powu(order) * frac(sign, multi_factorial(&alpha) * multi_factorial(&beta));
            let term = fd.mul(&gd)?.mul(&PhasePolynomial::from_monomial(n, hbar_monomial(n, order), coeff))?;
            out = out.add(&term)?;
        }
    }
    Ok(out)
}

/// `f △ⁿ g` without ħ, from the multinomial expansion of `(A − B)ⁿ`.
fn triangle_power(f: &PhasePolynomial, g: &PhasePolynomial, order: u32) -> PhasePolynomial {
    let n = f.n_pairs;
    let mut out = PhasePolynomial::zero(n);
    // Distribute `order` derivatives over 2n commuting slots.
    fn compositions(total: u32, slots: usize) -> Vec<Vec<u32>> {
        if slots == 1 {
            return vec![vec![total]];
        }
        let mut out = Vec::new();
        for first in 0..=total {
            for mut rest in compositions(total - first, slots - 1) {
                rest.insert(0, first);
                out.push(rest);
            }
        }
        out
    }
    for comp in compositions(order, 2 * n) {
        let (alpha, beta) = comp.split_at(n);
        let weight = factorial(order) / (multi_factorial(alpha) * multi_factorial(beta));
        let sign = if beta.iter().sum::<u32>() % 2 == 0 { 1 } else { -1 };
        let fd = f.derive(beta, alpha);
        let gd = g.derive(alpha, beta);
        if fd.is_zero() || gd.is_zero() {
            continue;
        }
        out = out.add(&fd.mul(&gd).unwrap().scale(&rat(sign * weight))).unwrap();
    }
    out
}

/// `f ⋆ g − g ⋆ f`.
pub fn moyal_bracket(f: &PhasePolynomial, g: &PhasePolynomial) -> Result<PhasePolynomial> {
    star_product(f, g)?.sub(&star_product(g, f)?)
}

/// `2i f sin(½ ħ △) g`, summed over odd powers until they vanish.
pub fn moyal_bracket_sine(f: &PhasePolynomial, g: &PhasePolynomial) -> Result<PhasePolynomial> {
    f.check(g)?;
    let n = f.n_pairs;
    let (fu, fv) = f.max_degrees();
    let (gu, gv) = g.max_degrees();
    let max_order: u32 = (0..n).map(|i| fv[i].min(gu[i]) + fu[i].min(gv[i])).sum();
    let mut out = PhasePolynomial::zero(n);
    let mut k = 1;
    while k <= max_order {
        let tri = triangle_power(f, g, k);
        let sign = if (k - 1) / 2 % 2 == 0 { 1 } else { -1 };
        // 2i · (−1)^{(k−1)/2} (1/2)^k / k!
        let coeff = CRational::new(Rational::zero(), Rational::new(2 * sign, (1i128 << k) * factorial(k)));
        let term = tri.mul(&PhasePolynomial::from_monomial(n, hbar_monomial(n, k), coeff))?;
        out = out.add(&term)?;
        k += 2;
    }
    Ok(out)
}

/// `{f, g} = Σ_i ∂_{v_i} f ∂_{u_i} g − ∂_{u_i} f ∂_{v_i} g`.
pub fn poisson_bracket(f: &PhasePolynomial, g: &PhasePolynomial) -> Result<PhasePolynomial> {
    f.check(g)?;
    let n = f.n_pairs;
    let mut out = PhasePolynomial::zero(n);
    for i in 0..n {
        let mut e = vec![0; n];
        e[i] = 1;
        let z = vec![0; n];
        let a = f.derive(&z, &e).mul(&g.derive(&e, &z))?;
        let b = f.derive(&e, &z).mul(&g.derive(&z, &e))?;
        out = out.add(&a)?.sub(&b)?;
    }
    Ok(out)
}

impl fmt::Display for PhasePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (m, c)) in self.terms.iter().enumerate() {
            let mut factors = Vec::new();
            if m.h > 0 {
                factors.push(if m.h == 1 { "hbar".to_string() } else { format!("hbar^{}", m.h) });
            }
            for i in 0..self.n_pairs {
                for (name, e) in [("u", m.u[i]), ("v", m.v[i])] {
                    match e {
                        0 => {}
                        1 => factors.push(format!("{name}{}", i + 1)),
                        _ => factors.push(format!("{name}{}^{e}", i + 1)),
                    }
                }
            }
            let negative = (c.im.is_zero() && c.re.is_negative()) || (c.re.is_zero() && c.im.is_negative());
            let mag = if negative { -*c } else { *c };
            let sep = match (n, negative) {
                (0, false) => "",
                (0, true) => "-",
                (_, false) => " + ",
                (_, true) => " - ",
            };
            let coeff = if !mag.re.is_zero() && !mag.im.is_zero() {
                format!("({})", format_cq(&mag))
            } else {
                format_cq(&mag)
            };
            let body = if factors.is_empty() {
                coeff
            } else if mag.is_one() {
                factors.join("*")
            } else {
                format!("{coeff}*{}", factors.join("*"))
            };
            write!(f, "{sep}{body}")?;
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Parser for `u1..un, v1..vn, hbar, i, rationals, + - * / ^ ( )`.

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(i128),
    U(usize),
    V(usize),
    Hbar,
    I,
    Op(char),
}

fn tokenize(src: &str) -> Result<Vec<(usize, Tok)>> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut pos = 0;
    while pos < chars.len() {
        let ch = chars[pos];
        let col = pos + 1;
        if ch.is_whitespace() {
            pos += 1;
        } else if ch.is_ascii_digit() {
            let start = pos;
            while pos < chars.len() && chars[pos].is_ascii_digit() {
                pos += 1;
            }
            let s: String = chars[start..pos].iter().collect();
            let n = s.parse::<i128>().map_err(|e| Error::Parse { column: col, message: e.to_string() })?;
            out.push((col, Tok::Num(n)));
        } else if ch.is_ascii_alphabetic() {
            let start = pos;
            while pos < chars.len() && chars[pos].is_ascii_alphanumeric() {
                pos += 1;
            }
            let word: String = chars[start..pos].iter().collect();
            let tok = match word.as_str() {
                "hbar" => Tok::Hbar,
                "i" => Tok::I,
                "u" => Tok::U(0),
                "v" => Tok::V(0),
                w if (w.starts_with('u') || w.starts_with('v')) && w[1..].chars().all(|c| c.is_ascii_digit()) => {
                    let idx: usize = w[1..].parse().map_err(|_| Error::Parse { column: col, message: format!("bad index in `{w}`") })?;
                    if idx == 0 {
                        return Err(Error::Parse { column: col, message: "variable indices start at 1".into() });
                    }
                    if w.starts_with('u') {
                        Tok::U(idx - 1)
                    } else {
                        Tok::V(idx - 1)
                    }
                }
                _ => return Err(Error::Parse { column: col, message: format!("unknown token `{word}`") }),
            };
            out.push((col, tok));
        } else if "+-*/^()".contains(ch) {
            out.push((col, Tok::Op(ch)));
            pos += 1;
        } else {
            return Err(Error::Parse { column: col, message: format!("unexpected character `{ch}`") });
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    n: usize,
    end_col: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map(|(c, _)| *c).unwrap_or(self.end_col)
    }

    fn err<T>(&self, msg: &str) -> Result<T> {
        Err(Error::Parse { column: self.col(), message: msg.into() })
    }

    fn expr(&mut self) -> Result<PhasePolynomial> {
        let mut acc = self.term()?;
        while let Some(Tok::Op(op @ ('+' | '-'))) = self.peek().cloned() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if op == '+' { acc.add(&rhs)? } else { acc.sub(&rhs)? };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<PhasePolynomial> {
        let mut acc = self.unary()?;
        while let Some(Tok::Op(op @ ('*' | '/'))) = self.peek().cloned() {
            self.pos += 1;
            let rhs = self.unary()?;
            if op == '*' {
                acc = acc.mul(&rhs)?;
            } else {
                let mut it = rhs.terms.iter();
                match (it.next(), it.next()) {
                    (Some((m, c)), None) if *m == Monomial::one(self.n) && c.im.is_zero() && !c.re.is_zero() => {
                        let inv = CRational::new(c.re.recip(), Rational::zero());
                        acc = acc.scale(&inv);
                    }
                    _ => return self.err("division is only by nonzero rational constants"),
                }
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<PhasePolynomial> {
        if let Some(Tok::Op('-')) = self.peek() {
            self.pos += 1;
            return Ok(self.unary()?.scale(&cq(-1, 0)));
        }
        if let Some(Tok::Op('+')) = self.peek() {
            self.pos += 1;
        }
        self.power()
    }

    fn power(&mut self) -> Result<PhasePolynomial> {
        let base = self.atom()?;
        if let Some(Tok::Op('^')) = self.peek() {
            self.pos += 1;
            match self.peek().cloned() {
                Some(Tok::Num(k)) if k <= 64 => {
                    self.pos += 1;
                    return Ok(base.pow(k as u32));
                }
                _ => return self.err("exponent must be an integer literal ≤ 64"),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<PhasePolynomial> {
        let n = self.n;
        let tok = match self.peek().cloned() {
            Some(t) => t,
            None => return self.err("unexpected end of input"),
        };
        self.pos += 1;
        Ok(match tok {
            Tok::Num(k) => PhasePolynomial::constant(n, rat(k)),
            Tok::U(i) => PhasePolynomial::u(n, i),
            Tok::V(i) => PhasePolynomial::v(n, i),
            Tok::Hbar => PhasePolynomial::hbar(n),
            Tok::I => PhasePolynomial::constant(n, cq(0, 1)),
            Tok::Op('(') => {
                let inner = self.expr()?;
                match self.peek() {
                    Some(Tok::Op(')')) => {
                        self.pos += 1;
                        inner
                    }
                    _ => return self.err("expected `)`"),
                }
            }
            Tok::Op(c) => {
                self.pos -= 1;
                return self.err(&format!("unexpected `{c}`"));
            }
        })
    }
}

impl PhasePolynomial {
    /// Parses an infix expression. `n_pairs = None` infers it from the
    /// largest variable index (at least 1).
    pub fn parse(src: &str, n_pairs: Option<usize>) -> Result<Self> {
        let toks = tokenize(src)?;
        let inferred = toks
            .iter()
            .filter_map(|(_, t)| match t {
                Tok::U(i) | Tok::V(i) => Some(i + 1),
                _ => None,
            })
            .max()
            .unwrap_or(1);
        let n = match n_pairs {
            Some(n) if n < inferred => {
                return Err(Error::Parse { column: 1, message: format!("expression uses {inferred} pairs but {n} were requested") })
            }
            Some(n) => n,
            None => inferred,
        };
        let mut p = Parser { toks, pos: 0, n, end_col: src.chars().count() + 1 };
        let out = p.expr()?;
        if p.pos != p.toks.len() {
            return p.err("trailing input");
        }
        Ok(out)
    }
}
