//! Integer Laurent polynomials and Alexander polynomials of self-indexed graphs.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::Error;
use crate::graph::{component_of, SelfIndexedGraph};

/// An element of `Z[t, 1/t]`; no zero coefficients are stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct LaurentPolynomial {
    terms: BTreeMap<i64, BigInt>,
}

impl LaurentPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    /// `c * t^k`.
    pub fn monomial(c: impl Into<BigInt>, k: i64) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(k, c);
        }
        LaurentPolynomial { terms }
    }

    pub fn t() -> Self {
        Self::monomial(1, 1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(c, 0)
    }

    /// From coefficients of `t^low, t^(low+1), ...`.
    pub fn from_coeffs(low: i64, coeffs: &[i64]) -> Self {
        let mut p = Self::zero();
        for (i, &c) in coeffs.iter().enumerate() {
            p.add_term(low + i as i64, BigInt::from(c));
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<i64, BigInt> {
        &self.terms
    }

    pub fn coeff(&self, k: i64) -> BigInt {
        self.terms.get(&k).cloned().unwrap_or_default()
    }

    pub fn low_degree(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn high_degree(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    fn add_term(&mut self, k: i64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(k).or_default();
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&k);
        }
    }

    pub fn evaluate_at_1(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Evaluates at an integer, allowed only when no negative powers occur or `x = ±1`.
    pub fn shift(&self, by: i64) -> Self {
        LaurentPolynomial { terms: self.terms.iter().map(|(k, c)| (k + by, c.clone())).collect() }
    }

    /// The representative of `p * (±t^k)` with lowest exponent 0 and positive
    /// leading coefficient.
    pub fn unit_normalize(&self) -> Self {
        let Some(low) = self.low_degree() else { return Self::zero() };
        let p = self.shift(-low);
        if p.terms.values().next_back().unwrap().is_negative() {
            -p
        } else {
            p
        }
    }

    fn to_dense(&self) -> (i64, Vec<BigInt>) {
        let Some(low) = self.low_degree() else { return (0, Vec::new()) };
        let high = self.high_degree().unwrap();
        let mut v = vec![BigInt::zero(); (high - low + 1) as usize];
        for (k, c) in &self.terms {
            v[(k - low) as usize] = c.clone();
        }
        (low, v)
    }

    fn from_dense(low: i64, v: &[BigInt]) -> Self {
        let mut p = Self::zero();
        for (i, c) in v.iter().enumerate() {
            p.add_term(low + i as i64, c.clone());
        }
        p
    }

    /// `self / other` when the quotient is again a Laurent polynomial.
    pub fn div_exact(&self, other: &Self) -> Option<Self> {
        if other.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let (la, a) = self.to_dense();
        let (lb, b) = other.to_dense();
        let q = poly_div_exact(&a, &b)?;
        Some(Self::from_dense(la - lb, &q))
    }

    pub fn divides(&self, other: &Self) -> bool {
        other.div_exact(self).is_some()
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut r = Self::one();
        for _ in 0..e {
            r = &r * self;
        }
        r
    }
}

impl Add for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn add(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(*k, c.clone());
        }
        out
    }
}

impl Sub for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn sub(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(*k, -c);
        }
        out
    }
}

impl Mul for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn mul(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        let mut out = LaurentPolynomial::zero();
        for (i, a) in &self.terms {
            for (j, b) in &rhs.terms {
                out.add_term(i + j, a * b);
            }
        }
        out
    }
}

impl Neg for LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn neg(self) -> LaurentPolynomial {
        LaurentPolynomial { terms: self.terms.into_iter().map(|(k, c)| (k, -c)).collect() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for LaurentPolynomial {
            type Output = LaurentPolynomial;
            fn $m(self, rhs: LaurentPolynomial) -> LaurentPolynomial {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

/// Text form `a_k*t^k + ...`, highest exponent first.
impl fmt::Display for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (k, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            let unit = abs.is_one();
            match (*k, unit) {
                (0, _) => write!(f, "{abs}")?,
                (1, true) => f.write_str("t")?,
                (1, false) => write!(f, "{abs}*t")?,
                (k, true) => write!(f, "t^{k}")?,
                (k, false) => write!(f, "{abs}*t^{k}")?,
            }
        }
        Ok(())
    }
}

impl FromStr for LaurentPolynomial {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let bad = || Error::Parse(format!("cannot parse polynomial {s:?}"));
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(bad());
        }
        let mut p = LaurentPolynomial::zero();
        let mut terms = Vec::new();
        let mut cur = String::new();
        for (i, ch) in compact.char_indices() {
            let after_caret = compact[..i].ends_with('^');
            if (ch == '+' || ch == '-') && i > 0 && !after_caret {
                terms.push(std::mem::take(&mut cur));
            }
            cur.push(ch);
        }
        terms.push(cur);
        for term in terms {
            let (sign, body) = match term.strip_prefix('-') {
                Some(b) => (-1, b),
                None => (1, term.strip_prefix('+').unwrap_or(&term)),
            };
            let (coef, var) = match body.find('t') {
                None => (body, None),
                Some(pos) => {
                    let c = body[..pos].trim_end_matches('*');
                    (c, Some(&body[pos + 1..]))
                }
            };
            let c: BigInt = if coef.is_empty() { BigInt::one() } else { coef.parse().map_err(|_| bad())? };
            let k: i64 = match var {
                None => 0,
                Some("") => 1,
                Some(e) => e.strip_prefix('^').ok_or_else(bad)?.parse().map_err(|_| bad())?,
            };
            p.add_term(k, c * sign);
        }
        Ok(p)
    }
}

// dense polynomial helpers, coefficients from degree 0 upwards

fn trim(v: &mut Vec<BigInt>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

fn content(v: &[BigInt]) -> BigInt {
    v.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

fn poly_div_exact(a: &[BigInt], b: &[BigInt]) -> Option<Vec<BigInt>> {
    let mut r: Vec<BigInt> = a.to_vec();
    trim(&mut r);
    let mut b = b.to_vec();
    trim(&mut b);
    if b.is_empty() {
        return None;
    }
    if r.len() < b.len() {
        return if r.is_empty() { Some(Vec::new()) } else { None };
    }
    let lb = b.last().unwrap().clone();
    let mut q = vec![BigInt::zero(); r.len() - b.len() + 1];
    for i in (0..q.len()).rev() {
        let top = r[i + b.len() - 1].clone();
        if top.is_zero() {
            continue;
        }
        let (qc, rem) = top.div_rem(&lb);
        if !rem.is_zero() {
            return None;
        }
        for (j, bj) in b.iter().enumerate() {
            r[i + j] -= &qc * bj;
        }
        q[i] = qc;
    }
    if r.iter().all(|c| c.is_zero()) {
        Some(q)
    } else {
        None
    }
}

/// Pseudo-remainder of `a` by `b`.
fn prem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lb = b[db].clone();
    while r.len() > db && !r.is_empty() {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        for c in r.iter_mut() {
            *c *= &lb;
        }
        for (j, bj) in b.iter().enumerate() {
            r[dr - db + j] -= &lr * bj;
        }
        trim(&mut r);
    }
    r
}

fn primitive(v: &[BigInt]) -> Vec<BigInt> {
    let c = content(v);
    let mut out: Vec<BigInt> = v.iter().map(|x| x / &c).collect();
    if out.last().is_some_and(|x| x.is_negative()) {
        for x in &mut out {
            *x = -&*x;
        }
    }
    out
}

/// Gcd of polynomials over Z by the subresultant remainder sequence.
fn poly_gcd(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    trim(&mut a);
    trim(&mut b);
    if a.is_empty() {
        return primitive(&b).into_iter().map(|x| x * content(&b)).collect();
    }
    if b.is_empty() {
        return primitive(&a).into_iter().map(|x| x * content(&a)).collect();
    }
    let g_content = content(&a).gcd(&content(&b));
    let (mut p, mut q) = (primitive(&a), primitive(&b));
    if p.len() < q.len() {
        std::mem::swap(&mut p, &mut q);
    }
    let mut g = BigInt::one();
    let mut h = BigInt::one();
    loop {
        if q.len() == 1 {
            return vec![g_content];
        }
        let delta = (p.len() - q.len()) as u32;
        let r = prem(&p, &q);
        if r.is_empty() {
            break;
        }
        if r.len() == 1 {
            return vec![g_content];
        }
        let div = &g * num_traits::pow(h.clone(), delta as usize);
        let next: Vec<BigInt> = r.iter().map(|c| c / &div).collect();
        p = q;
        q = next;
        g = p.last().unwrap().clone();
        h = if delta == 0 {
            h
        } else {
            num_traits::pow(g.clone(), delta as usize) / num_traits::pow(h.clone(), (delta - 1) as usize)
        };
    }
    primitive(&q).into_iter().map(|x| x * &g_content).collect()
}

/// A gcd in the Laurent ring, unit-normalized.
pub fn laurent_gcd(p: &LaurentPolynomial, q: &LaurentPolynomial) -> LaurentPolynomial {
    if p.is_zero() {
        return q.unit_normalize();
    }
    if q.is_zero() {
        return p.unit_normalize();
    }
    let (_, a) = p.unit_normalize().to_dense();
    let (_, b) = q.unit_normalize().to_dense();
    LaurentPolynomial::from_dense(0, &poly_gcd(&a, &b)).unit_normalize()
}

/// Rows are arrows and columns vertices: `t` at the source, `-1` at the
/// target, `1 - t` at the label, added up where these coincide.
pub fn relation_matrix(g: &SelfIndexedGraph) -> Vec<Vec<LaurentPolynomial>> {
    let t = LaurentPolynomial::t();
    let one_minus_t = &LaurentPolynomial::one() - &t;
    g.arrows()
        .iter()
        .map(|a| {
            let mut row = vec![LaurentPolynomial::zero(); g.vertex_count()];
            row[a.source] = &row[a.source] + &t;
            row[a.target] = &row[a.target] - &LaurentPolynomial::one();
            row[a.label] = &row[a.label] + &one_minus_t;
            row
        })
        .collect()
}

/// Fraction-free determinant over the Laurent ring.
pub fn determinant(m: &[Vec<LaurentPolynomial>]) -> LaurentPolynomial {
    let n = m.len();
    if n == 0 {
        return LaurentPolynomial::one();
    }
    let mut a: Vec<Vec<LaurentPolynomial>> = m.to_vec();
    let mut sign = false;
    let mut prev = LaurentPolynomial::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = !sign;
                }
                None => return LaurentPolynomial::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = num.div_exact(&prev).expect("Bareiss division is exact");
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if sign {
        -d
    } else {
        d
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// `Δ_i`: gcd of all minors of size `#V - i` of the relation matrix.
pub fn alexander_polynomial(g: &SelfIndexedGraph, i: usize) -> LaurentPolynomial {
    let n = g.vertex_count();
    let m = g.arrow_count();
    if n <= i {
        return LaurentPolynomial::one();
    }
    let r = n - i;
    if r > m {
        return LaurentPolynomial::zero();
    }
    let matrix = relation_matrix(g);
    let rows = subsets(m, r);
    let cols = subsets(n, r);
    let mut acc = LaurentPolynomial::zero();
    let one = LaurentPolynomial::one();
    for rs in &rows {
        for cs in &cols {
            let minor: Vec<Vec<LaurentPolynomial>> =
                rs.iter().map(|&x| cs.iter().map(|&y| matrix[x][y].clone()).collect()).collect();
            let d = determinant(&minor);
            if d.is_zero() {
                continue;
            }
            acc = laurent_gcd(&acc, &d);
            if acc == one {
                return acc;
            }
        }
    }
    acc
}

/// Polynomial in `t_1, ..., t_n` keyed by exponent vectors.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct MultiPolynomial {
    pub terms: BTreeMap<Vec<i64>, BigInt>,
}

impl MultiPolynomial {
    fn add_term(&mut self, exps: Vec<i64>, c: BigInt) {
        let e = self.terms.entry(exps.clone()).or_default();
        *e += c;
        if e.is_zero() {
            self.terms.remove(&exps);
        }
    }

    /// Substitutes `t_i := t` for every `i`.
    pub fn specialize(&self) -> LaurentPolynomial {
        let mut p = LaurentPolynomial::zero();
        for (e, c) in &self.terms {
            p.add_term(e.iter().sum(), c.clone());
        }
        p
    }
}

impl fmt::Display for MultiPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (n, (e, c)) in self.terms.iter().rev().enumerate() {
            let vars: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k != 0)
                .map(|(i, &k)| if k == 1 { format!("t{}", i + 1) } else { format!("t{}^{k}", i + 1) })
                .collect();
            let mag = c.magnitude();
            let sign = match (n, c.is_negative()) {
                (0, true) => "-",
                (0, false) => "",
                (_, true) => " - ",
                (_, false) => " + ",
            };
            f.write_str(sign)?;
            if vars.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                f.write_str(&vars.join("*"))?;
            } else {
                write!(f, "{mag}*{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}

/// Sign in front of the `(1 - t_j)` term of the multivariable relation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum RelationSign {
    /// `c = t_i b + (1 - t_j) a`, which specializes to the one-variable matrix.
    #[default]
    Plus,
    /// `c = t_i b - (1 - t_j) a`.
    Minus,
}

/// Row per arrow `b --a--> c`: `t_i` at `b`, `-1` at `c`, `±(1 - t_j)` at `a`,
/// where `i` is the component of the label `a` and `j` that of `b` and `c`.
/// Components are numbered as by [`crate::graph::components`].
pub fn multivariable_relation_matrix(g: &SelfIndexedGraph, sign: RelationSign) -> Vec<Vec<MultiPolynomial>> {
    let comp = component_of(g);
    let k = comp.iter().map(|&c| c + 1).max().unwrap_or(0);
    let var = |i: usize| {
        let mut e = vec![0i64; k];
        e[i] = 1;
        e
    };
    let s = match sign {
        RelationSign::Plus => BigInt::one(),
        RelationSign::Minus => -BigInt::one(),
    };
    g.arrows()
        .iter()
        .map(|a| {
            let mut row = vec![MultiPolynomial::default(); g.vertex_count()];
            let (i, j) = (comp[a.label], comp[a.source]);
            row[a.source].add_term(var(i), BigInt::one());
            row[a.target].add_term(vec![0; k], -BigInt::one());
            row[a.label].add_term(vec![0; k], s.clone());
            row[a.label].add_term(var(j), -s.clone());
            row
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> LaurentPolynomial {
        s.parse().unwrap()
    }

    #[test]
    fn normalization_examples() {
        assert_eq!(p("-t^3 + 2*t^2").unit_normalize(), p("t - 2"));
        assert_eq!(LaurentPolynomial::zero().unit_normalize(), LaurentPolynomial::zero());
        assert_eq!(p("t^2 - t + 1").evaluate_at_1(), BigInt::one());
    }

    #[test]
    fn text_round_trip() {
        for s in ["t^2 - t + 1", "t - 3*t^-2", "0", "7", "-t"] {
            assert_eq!(p(s).to_string(), s);
        }
        assert!("t^".parse::<LaurentPolynomial>().is_err());
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(laurent_gcd(&p("t^2 - t"), &p("t - 1")), p("t - 1"));
        assert_eq!(laurent_gcd(&p("2*t"), &p("3*t^3")), p("1"));
        assert_eq!(laurent_gcd(&LaurentPolynomial::zero(), &p("-2*t^3 + t")), p("2*t^2 - 1"));
        assert_eq!(laurent_gcd(&p("6*t^2 - 6"), &p("4*t + 4")), p("2*t + 2"));
        // (t^2+1)(t-3)(t+2) and (t^2+1)(t+5)^2
        let a = &(&p("t^2 + 1") * &p("t - 3")) * &p("t + 2");
        let b = &p("t^2 + 1") * &p("t^2 + 10*t + 25");
        assert_eq!(laurent_gcd(&a, &b), p("t^2 + 1"));
    }

    #[test]
    fn worked_example_matrix() {
        let g = SelfIndexedGraph::from_names(&["a", "b", "c"], &[("a", "c", "b"), ("a", "b", "c")]).unwrap();
        let m = relation_matrix(&g);
        let expect = [[p("t"), p("-1"), p("1 - t")], [p("t"), p("1 - t"), p("-1")]];
        for (row, e) in m.iter().zip(&expect) {
            assert_eq!(row.as_slice(), e.as_slice());
        }
        assert_eq!(alexander_polynomial(&g, 1), p("t - 2"));
    }

    #[test]
    fn boundary_conventions() {
        let g = SelfIndexedGraph::from_names(&["a", "b"], &[("a", "a", "b")]).unwrap();
        assert_eq!(alexander_polynomial(&g, 2), LaurentPolynomial::one());
        assert_eq!(alexander_polynomial(&g, 0), LaurentPolynomial::zero());
        let lp = SelfIndexedGraph::from_names(&["a"], &[("a", "a", "a")]).unwrap();
        assert_eq!(relation_matrix(&lp), vec![vec![LaurentPolynomial::zero()]]);
        assert!(relation_matrix(&SelfIndexedGraph::empty()).is_empty());
    }

    #[test]
    fn determinant_small() {
        let m = vec![vec![p("t"), p("1")], vec![p("1"), p("t")]];
        assert_eq!(determinant(&m), p("t^2 - 1"));
        let z = vec![vec![p("0"), p("1")], vec![p("1"), p("0")]];
        assert_eq!(determinant(&z), p("-1"));
    }

    #[test]
    fn multivariable_specializes() {
        let g = SelfIndexedGraph::from_names(&["a", "b", "c"], &[("a", "c", "b"), ("b", "a", "c"), ("c", "b", "a")])
            .unwrap();
        let mv = multivariable_relation_matrix(&g, RelationSign::Plus);
        let single = relation_matrix(&g);
        for (r1, r2) in mv.iter().zip(&single) {
            for (x, y) in r1.iter().zip(r2) {
                assert_eq!(&x.specialize(), y);
            }
        }
        let shown: Vec<String> = mv[0].iter().map(|x| x.to_string()).collect();
        assert_eq!(shown, ["t1", "-1", "-t1 + 1"]);
    }
}
