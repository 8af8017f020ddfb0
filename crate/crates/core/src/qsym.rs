//! Formal linear combinations over the composition-indexed bases `M`, `F`
//! and `θ`, the `M ↔ F` change of basis, and the finite polynomial
//! realization used as an oracle.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::composition::Composition;
use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Basis {
    M,
    F,
    #[serde(rename = "theta")]
    Theta,
}

impl Basis {
    pub fn symbol(self) -> &'static str {
        match self {
            Basis::M => "M",
            Basis::F => "F",
            Basis::Theta => "θ",
        }
    }
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

impl FromStr for Basis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "M" | "m" => Ok(Basis::M),
            "F" | "f" => Ok(Basis::F),
            "θ" | "theta" | "Theta" => Ok(Basis::Theta),
            other => Err(Error::parse(0, format!("unknown basis {other:?}"))),
        }
    }
}

/// A finite rational combination of basis functions indexed by compositions.
#[derive(Clone, Debug)]
pub struct QSymElement {
    basis: Basis,
    terms: BTreeMap<Composition, Rational>,
}

/// Zero elements compare equal whatever their basis tag.
impl PartialEq for QSymElement {
    fn eq(&self, other: &Self) -> bool {
        if self.is_zero() && other.is_zero() {
            return true;
        }
        self.basis == other.basis && self.terms == other.terms
    }
}

impl Eq for QSymElement {}

impl QSymElement {
    pub fn zero(basis: Basis) -> Self {
        QSymElement {
            basis,
            terms: BTreeMap::new(),
        }
    }

    /// The unit `1 = M_∅` (tagged with `basis`).
    pub fn one(basis: Basis) -> Self {
        Self::basis_element(basis, Composition::empty())
    }

    pub fn basis_element(basis: Basis, alpha: Composition) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(alpha, Rational::one());
        QSymElement { basis, terms }
    }

    pub fn from_terms<I>(basis: Basis, terms: I) -> Self
    where
        I: IntoIterator<Item = (Composition, Rational)>,
    {
        let mut out = Self::zero(basis);
        for (alpha, c) in terms {
            out.add_term(alpha, c);
        }
        out
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn terms(&self) -> &BTreeMap<Composition, Rational> {
        &self.terms
    }

    pub fn into_terms(self) -> BTreeMap<Composition, Rational> {
        self.terms
    }

    pub fn coeff(&self, alpha: &Composition) -> Rational {
        self.terms.get(alpha).cloned().unwrap_or_else(Rational::zero)
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

    /// The common degree of all terms, `None` for zero or inhomogeneous elements.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let mut degrees = self.terms.keys().map(Composition::degree);
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }

    pub fn add_term(&mut self, alpha: Composition, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(alpha) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_basis(&self, other: &QSymElement) -> Result<()> {
        if self.basis != other.basis && !self.is_zero() && !other.is_zero() {
            return Err(Error::BasisMismatch(self.basis, other.basis));
        }
        Ok(())
    }

    pub fn add(&self, other: &QSymElement) -> Result<QSymElement> {
        self.check_basis(other)?;
        let basis = if self.is_zero() { other.basis } else { self.basis };
        let mut out = QSymElement {
            basis,
            terms: self.terms.clone(),
        };
        for (alpha, c) in &other.terms {
            out.add_term(alpha.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &QSymElement) -> Result<QSymElement> {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, c: &Rational) -> QSymElement {
        if c.is_zero() {
            return QSymElement::zero(self.basis);
        }
        QSymElement {
            basis: self.basis,
            terms: self
                .terms
                .iter()
                .map(|(a, v)| (a.clone(), v * c))
                .collect(),
        }
    }

    /// Re-tag the element with another basis without changing coefficients.
    pub fn with_basis(mut self, basis: Basis) -> QSymElement {
        self.basis = basis;
        self
    }

    /// Change of basis between `M` and `F`.
    pub fn convert(&self, target: Basis) -> Result<QSymElement> {
        if self.basis == Basis::Theta || target == Basis::Theta {
            return Err(Error::ThetaConversion);
        }
        if self.basis == target {
            return Ok(self.clone());
        }
        let mut out = QSymElement::zero(target);
        for (alpha, c) in &self.terms {
            let k = alpha.len() as i64;
            for beta in refinements(alpha) {
                let coeff = match target {
                    // F_α = Σ_{β ≼ α} M_β
                    Basis::M => c.clone(),
                    // M_α = Σ_{β ≼ α} (-1)^{k(β)-k(α)} F_β
                    _ => {
                        if (beta.len() as i64 - k) % 2 == 0 {
                            c.clone()
                        } else {
                            -c.clone()
                        }
                    }
                };
                out.add_term(beta, coeff);
            }
        }
        Ok(out)
    }

    pub fn to_m(&self) -> Result<QSymElement> {
        self.convert(Basis::M)
    }

    /// Truncation to `num_vars` variables of the formal power series.
    pub fn expand(&self, num_vars: usize) -> Result<SparsePolynomial> {
        let m = self.to_m()?;
        let mut out = SparsePolynomial::zero(num_vars);
        for (alpha, c) in &m.terms {
            expand_monomial_into(alpha, c, &mut out);
        }
        Ok(out)
    }

    /// Inverse of [`QSymElement::expand`] on homogeneous degree-`degree`
    /// quasi-symmetric polynomials.
    pub fn from_polynomial(p: &SparsePolynomial, degree: usize) -> Result<QSymElement> {
        Self::read_off(p, Some(degree))
    }

    /// Like [`QSymElement::from_polynomial`] but keeps every degree present in `p`.
    pub fn from_polynomial_graded(p: &SparsePolynomial) -> Result<QSymElement> {
        Self::read_off(p, None)
    }

    fn read_off(p: &SparsePolynomial, degree: Option<usize>) -> Result<QSymElement> {
        let mut out = QSymElement::zero(Basis::M);
        for (exps, c) in &p.terms {
            let k = exps.iter().take_while(|&&e| e > 0).count();
            if exps[k..].iter().any(|&e| e > 0) {
                continue;
            }
            let parts: Vec<usize> = exps[..k].iter().map(|&e| e as usize).collect();
            if degree.is_some_and(|d| parts.iter().sum::<usize>() != d) {
                continue;
            }
            out.add_term(Composition::from_parts_unchecked(parts), c.clone());
        }
        if &out.expand(p.num_vars)? != p {
            return Err(Error::NotQuasiSymmetric(p.num_vars));
        }
        Ok(out)
    }

    /// Text form, e.g. `4*M[2,1] + 4*M[1,2] + 8*M[1,1,1]`.
    pub fn render(&self) -> String {
        render_sum(
            self.terms
                .iter()
                .map(|(a, c)| (format!("{}[{}]", self.basis.symbol(), a), c)),
        )
    }

    pub fn to_records(&self) -> Result<Vec<ElementRecord>> {
        self.terms
            .iter()
            .map(|(a, c)| {
                let (num, den) = fraction_parts(c)?;
                Ok(ElementRecord {
                    basis: self.basis,
                    parts: a.parts().to_vec(),
                    num,
                    den,
                })
            })
            .collect()
    }

    pub fn from_records(records: &[ElementRecord]) -> Result<QSymElement> {
        let basis = records.first().map(|r| r.basis).unwrap_or(Basis::M);
        let mut out = QSymElement::zero(basis);
        for r in records {
            if r.basis != basis {
                return Err(Error::BasisMismatch(basis, r.basis));
            }
            if r.den == 0 {
                return Err(Error::parse(0, "zero denominator"));
            }
            let c = Rational::new(BigInt::from(r.num), BigInt::from(r.den));
            out.add_term(Composition::new(r.parts.clone())?, c);
        }
        Ok(out)
    }
}

impl fmt::Display for QSymElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Parses the text rendering: `±c*B[parts]` terms joined by `+`/`-`, with
/// `B` one of `M`, `F`, `θ`/`theta`. `0` is the zero element of `M`.
impl FromStr for QSymElement {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let terms = parse_sum(s)?;
        let mut basis = None;
        let mut out = Vec::new();
        for (coeff, label, pos) in terms {
            let open = label
                .find('[')
                .ok_or_else(|| Error::parse(pos, format!("expected B[parts], got {label:?}")))?;
            let b: Basis = label[..open]
                .parse()
                .map_err(|_| Error::parse(pos, format!("unknown basis in {label:?}")))?;
            if let Some(prev) = basis {
                if prev != b {
                    return Err(Error::BasisMismatch(prev, b));
                }
            }
            basis = Some(b);
            let alpha: Composition = label[open..]
                .parse()
                .map_err(|e| shift_parse_error(e, pos + open))?;
            out.push((alpha, coeff));
        }
        Ok(QSymElement::from_terms(basis.unwrap_or(Basis::M), out))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementRecord {
    pub basis: Basis,
    pub parts: Vec<usize>,
    pub num: i64,
    pub den: i64,
}

pub(crate) fn fraction_parts(c: &Rational) -> Result<(i64, i64)> {
    let num = c
        .numer()
        .to_i64()
        .ok_or_else(|| Error::parse(0, "numerator exceeds 64 bits"))?;
    let den = c
        .denom()
        .to_i64()
        .ok_or_else(|| Error::parse(0, "denominator exceeds 64 bits"))?;
    Ok((num, den))
}

pub(crate) fn shift_parse_error(e: Error, by: usize) -> Error {
    match e {
        Error::Parse { pos, msg } => Error::Parse { pos: pos + by, msg },
        other => other,
    }
}

/// Joins `(label, coefficient)` pairs as `c*label + ... − c*label`.
pub(crate) fn render_sum<'a, I>(terms: I) -> String
where
    I: IntoIterator<Item = (String, &'a Rational)>,
{
    let mut out = String::new();
    for (label, c) in terms {
        let negative = c.is_negative();
        if out.is_empty() {
            if negative {
                out.push('−');
            }
        } else {
            out.push_str(if negative { " − " } else { " + " });
        }
        let abs = c.abs();
        if !abs.is_one() {
            out.push_str(&abs.to_string());
            out.push('*');
        }
        out.push_str(&label);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Splits a rendered sum into `(coefficient, label, byte offset)` triples.
pub(crate) fn parse_sum(s: &str) -> Result<Vec<(Rational, String, usize)>> {
    let normalized: String = s.replace('−', "-");
    let trimmed = normalized.trim();
    if trimmed == "0" || trimmed.is_empty() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let mut sign = 1i64;
    let mut current = String::new();
    let mut start = 0;
    let mut depth = 0usize;
    let flush = |current: &mut String, sign: i64, start: usize, out: &mut Vec<_>| -> Result<()> {
        let term = current.trim();
        if term.is_empty() {
            return Err(Error::parse(start, "empty term"));
        }
        let (coeff, label) = match term.split_once('*') {
            Some((c, l)) => (parse_rational(c.trim(), start)?, l.trim().to_string()),
            None => (Rational::one(), term.to_string()),
        };
        out.push((coeff * rat(sign), label, start));
        current.clear();
        Ok(())
    };
    for (i, ch) in trimmed.char_indices() {
        match ch {
            '[' => {
                depth += 1;
                current.push(ch);
            }
            ']' => {
                depth = depth.saturating_sub(1);
                current.push(ch);
            }
            '+' | '-' if depth == 0 => {
                if current.trim().is_empty() {
                    if ch == '-' {
                        sign = -sign;
                    }
                    start = i + 1;
                    continue;
                }
                flush(&mut current, sign, start, &mut out)?;
                sign = if ch == '-' { -1 } else { 1 };
                start = i + 1;
            }
            _ => current.push(ch),
        }
    }
    flush(&mut current, sign, start, &mut out)?;
    Ok(out)
}

fn parse_rational(s: &str, pos: usize) -> Result<Rational> {
    let bad = || Error::parse(pos, format!("invalid coefficient {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// All `β` with `I(α) ⊆ I(β)`, i.e. the refinements of `α` (including `α`).
pub fn refinements(alpha: &Composition) -> Vec<Composition> {
    let n = alpha.degree();
    if n == 0 {
        return vec![Composition::empty()];
    }
    let base = alpha.descent_set();
    let free: Vec<usize> = (1..n).filter(|i| !base.contains(i)).collect();
    (0u64..1u64 << free.len())
        .map(|mask| {
            let mut set = base.clone();
            set.extend(
                free.iter()
                    .enumerate()
                    .filter(|(b, _)| mask >> b & 1 == 1)
                    .map(|(_, &i)| i),
            );
            Composition::from_descent_set(n, &set).expect("valid descent set")
        })
        .collect()
}

/// Polynomial in `num_vars` commuting variables with rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparsePolynomial {
    num_vars: usize,
    terms: BTreeMap<Vec<u32>, Rational>,
}

impl SparsePolynomial {
    pub fn zero(num_vars: usize) -> Self {
        assert!(num_vars >= 1, "a polynomial needs at least one variable");
        SparsePolynomial {
            num_vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, Rational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exps: &[u32]) -> Rational {
        self.terms.get(exps).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, exps: Vec<u32>, c: Rational) {
        assert_eq!(exps.len(), self.num_vars, "exponent vector length");
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &SparsePolynomial) -> SparsePolynomial {
        assert_eq!(self.num_vars, other.num_vars);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn mul(&self, other: &SparsePolynomial) -> SparsePolynomial {
        assert_eq!(self.num_vars, other.num_vars);
        let mut out = SparsePolynomial::zero(self.num_vars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> SparsePolynomial {
        let mut out = SparsePolynomial::zero(self.num_vars);
        for (e, v) in &self.terms {
            out.add_term(e.clone(), v * c);
        }
        out
    }

    /// Variables with positive exponent in some term (1-based).
    pub fn support(&self) -> BTreeSet<usize> {
        self.terms
            .keys()
            .flat_map(|e| e.iter().enumerate().filter(|(_, &x)| x > 0).map(|(i, _)| i + 1))
            .collect()
    }
}

impl fmt::Display for SparsePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels = self.terms.iter().rev().map(|(e, c)| {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &x)| x > 0)
                .map(|(i, &x)| {
                    if x == 1 {
                        format!("x{}", i + 1)
                    } else {
                        format!("x{}^{}", i + 1, x)
                    }
                })
                .collect();
            let label = if mono.is_empty() {
                "1".to_string()
            } else {
                mono.join("*")
            };
            (label, c)
        });
        f.write_str(&render_sum(labels))
    }
}

/// Adds `c · M_α(x_1, ..., x_N)`: every placement of the parts at strictly
/// increasing variable indices.
fn expand_monomial_into(alpha: &Composition, c: &Rational, out: &mut SparsePolynomial) {
    let n = out.num_vars;
    let parts = alpha.parts();
    let mut exps = vec![0u32; n];
    fn place(
        parts: &[usize],
        from: usize,
        exps: &mut Vec<u32>,
        c: &Rational,
        out: &mut SparsePolynomial,
    ) {
        let Some((&first, rest)) = parts.split_first() else {
            out.add_term(exps.clone(), c.clone());
            return;
        };
        let n = exps.len();
        // leave room for the remaining parts
        for var in from..n.saturating_sub(rest.len()) {
            exps[var] = first as u32;
            place(rest, var + 1, exps, c, out);
            exps[var] = 0;
        }
    }
    if parts.len() <= n {
        place(parts, 0, &mut exps, c, out);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::composition::{enumerate, Filter};

    fn c(s: &str) -> Composition {
        s.parse().unwrap()
    }

    fn m(s: &str) -> QSymElement {
        s.parse().unwrap()
    }

    fn poly(n: usize, terms: &[(&[u32], i64)]) -> SparsePolynomial {
        let mut p = SparsePolynomial::zero(n);
        for (e, v) in terms {
            p.add_term(e.to_vec(), rat(*v));
        }
        p
    }

    #[test]
    fn add_and_scale() {
        let f = m("4*M[2,1] + 4*M[1,2]");
        assert_eq!(f.add(&QSymElement::zero(Basis::M)).unwrap(), f);
        assert_eq!(m("M[2,1]").add(&m("M[2,1]")).unwrap(), m("2*M[2,1]"));
        assert_eq!(
            f.add(&m("8*M[1,1,1]")).unwrap(),
            m("4*M[2,1] + 4*M[1,2] + 8*M[1,1,1]")
        );
        assert!(f.scale(&rat(0)).is_zero());
        assert_eq!(m("2*M[2] + 4*M[1,1]").scale(&rat(2)), m("4*M[2] + 8*M[1,1]"));
        assert!(matches!(
            m("M[1]").add(&m("F[1]")),
            Err(Error::BasisMismatch(Basis::M, Basis::F))
        ));
        assert_eq!(m("M[1]").sub(&m("M[1]")).unwrap(), QSymElement::zero(Basis::F));
    }

    #[test]
    fn convert_examples() {
        assert_eq!(m("F[2]").convert(Basis::M).unwrap(), m("M[2] + M[1,1]"));
        assert_eq!(m("F[1,1,1]").convert(Basis::M).unwrap(), m("M[1,1,1]"));
        assert_eq!(
            m("M[2]").convert(Basis::F).unwrap(),
            m("F[2] − F[1,1]")
        );
        assert_eq!(
            m("θ[2]").convert(Basis::M).unwrap_err().to_string(),
            "convert via theta module"
        );
    }

    #[test]
    fn expand_examples() {
        assert_eq!(m("M[1,1]").expand(2).unwrap(), poly(2, &[(&[1, 1], 1)]));
        assert_eq!(
            m("M[2]").expand(3).unwrap(),
            poly(3, &[(&[2, 0, 0], 1), (&[0, 2, 0], 1), (&[0, 0, 2], 1)])
        );
        assert_eq!(
            m("M[2,1]").expand(3).unwrap(),
            poly(3, &[(&[2, 1, 0], 1), (&[2, 0, 1], 1), (&[0, 2, 1], 1)])
        );
        assert!(m("M[1,1,1]").expand(2).unwrap().is_zero());
        assert_eq!(m("F[2]").expand(2).unwrap(), m("M[2] + M[1,1]").expand(2).unwrap());
    }

    #[test]
    fn from_polynomial_examples() {
        let p = m("M[2,1]").expand(3).unwrap();
        assert_eq!(QSymElement::from_polynomial(&p, 3).unwrap(), m("M[2,1]"));
        let e2 = poly(3, &[(&[1, 1, 0], 1), (&[1, 0, 1], 1), (&[0, 1, 1], 1)]);
        assert_eq!(QSymElement::from_polynomial(&e2, 2).unwrap(), m("M[1,1]"));
        let p = poly(2, &[(&[2, 1], 1), (&[1, 2], 1)]);
        assert_eq!(
            QSymElement::from_polynomial(&p, 3).unwrap(),
            m("M[2,1] + M[1,2]")
        );
        let bad = poly(2, &[(&[0, 3], 1)]);
        assert_eq!(
            QSymElement::from_polynomial(&bad, 3).unwrap_err().to_string(),
            "input not quasi-symmetric in 2 variables"
        );
    }

    #[test]
    fn conversion_round_trip_on_basis_elements() {
        for n in 0..=7 {
            for alpha in enumerate(n, Filter::All) {
                let f = QSymElement::basis_element(Basis::F, alpha.clone());
                assert_eq!(f.convert(Basis::M).unwrap().convert(Basis::F).unwrap(), f);
                let g = QSymElement::basis_element(Basis::M, alpha);
                assert_eq!(g.convert(Basis::F).unwrap().convert(Basis::M).unwrap(), g);
            }
        }
    }

    #[test]
    fn oracle_soundness() {
        for n in 1..=7 {
            for alpha in enumerate(n, Filter::All) {
                let f = QSymElement::basis_element(Basis::M, alpha);
                let p = f.expand(n).unwrap();
                assert_eq!(QSymElement::from_polynomial(&p, n).unwrap(), f);
            }
        }
    }

    #[test]
    fn render_and_parse() {
        let f = m("4*M[2,1] + 4*M[1,2] + 8*M[1,1,1]");
        assert_eq!(f.render(), "4*M[2,1] + 4*M[1,2] + 8*M[1,1,1]");
        let g = m("-1/2*F[3] - F[1,2]");
        assert_eq!(g.render(), "−1/2*F[3] − F[1,2]");
        assert_eq!(g.render().parse::<QSymElement>().unwrap(), g);
        assert_eq!(m("theta[2,1]").basis(), Basis::Theta);
        assert_eq!(m("M[]").render(), "M[]");
        assert_eq!(QSymElement::zero(Basis::F).render(), "0");
        assert!("M[1] + F[1]".parse::<QSymElement>().is_err());
        assert!(matches!("M[1] + 2*X[1]".parse::<QSymElement>(), Err(Error::Parse { .. })));
        assert_eq!(c("2,1"), m("M[2,1]").terms().keys().next().unwrap().clone());
    }

    #[test]
    fn records_round_trip() {
        let f = m("4*M[2,1] − 1/3*M[1,2]");
        let recs = f.to_records().unwrap();
        let json = serde_json::to_string(&recs).unwrap();
        assert!(json.contains("\"basis\":\"M\""));
        let back: Vec<ElementRecord> = serde_json::from_str(&json).unwrap();
        assert_eq!(QSymElement::from_records(&back).unwrap(), f);
    }
}
