//! Compositions of an integer and their combinatorics.
//!
//! A composition `[a_1, ..., a_k]` of `n` corresponds to the subset of
//! partial sums `{a_1, a_1 + a_2, ...} ⊆ [n-1]`. Everything in this module is
//! phrased in terms of one side of that bijection or the other: refinement,
//! the collapse map `Λ`, the star refinements, peak and sqs predicates,
//! internal peaks, the path graphs `G(α)` and the `3^(i)` wedge.
//!
//! Compositions are totally ordered by degree and then by the characteristic
//! vector `c_1 c_2 ... c_{n-1}` of their subset read as a binary number with
//! `c_1` most significant. This is the order `enumerate` produces and the
//! order every rendered sum uses.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Composition(Vec<usize>);

impl Composition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if let Some(pos) = parts.iter().position(|&p| p == 0) {
            return Err(Error::ZeroPart(pos));
        }
        Ok(Composition(parts))
    }

    /// The empty composition of 0.
    pub fn empty() -> Self {
        Composition(Vec::new())
    }

    /// `[n]`, or the empty composition when `n == 0`.
    pub fn single(n: usize) -> Self {
        if n == 0 {
            Self::empty()
        } else {
            Composition(vec![n])
        }
    }

    /// `[1^n]`.
    pub fn ones(n: usize) -> Self {
        Composition(vec![1; n])
    }

    pub(crate) fn from_parts_unchecked(parts: Vec<usize>) -> Self {
        debug_assert!(parts.iter().all(|&p| p > 0));
        Composition(parts)
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn into_parts(self) -> Vec<usize> {
        self.0
    }

    pub fn degree(&self) -> usize {
        self.0.iter().sum()
    }

    /// Number of parts, `k(α)`.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Partial sums `a_1 < a_2 < ... < a_{k-1}`, excluding the degree itself.
    pub fn descents(&self) -> impl Iterator<Item = usize> + '_ {
        let k = self.0.len();
        self.0
            .iter()
            .take(k.saturating_sub(1))
            .scan(0, |acc, &p| {
                *acc += p;
                Some(*acc)
            })
    }

    pub fn descent_set(&self) -> BTreeSet<usize> {
        self.descents().collect()
    }

    pub fn to_subset(&self) -> Result<SubsetRep> {
        if self.is_empty() {
            return Err(Error::DegreeZero);
        }
        Ok(SubsetRep {
            degree: self.degree(),
            elements: self.descents().collect(),
        })
    }

    /// Composition of `n` whose descent set is `set`. Elements must lie in `[1, n-1]`.
    pub fn from_descent_set(n: usize, set: &BTreeSet<usize>) -> Result<Self> {
        let elements: Vec<usize> = set.iter().copied().collect();
        SubsetRep::new(n, elements)?.to_composition()
    }

    /// `α ≼ β`: `self` is finer than (or equal to) `other`, i.e. `I(other) ⊆ I(self)`.
    pub fn refines(&self, other: &Composition) -> Result<bool> {
        let (n, m) = (self.degree(), other.degree());
        if n != m {
            return Err(Error::DegreeMismatch(n, m));
        }
        let mine = self.descent_set();
        Ok(other.descents().all(|d| mine.contains(&d)))
    }

    pub fn concat(&self, other: &Composition) -> Composition {
        let mut parts = self.0.clone();
        parts.extend_from_slice(&other.0);
        Composition(parts)
    }

    /// The composition whose descent set is `[n-1] \ I(α)`.
    pub fn complement(&self) -> Result<Composition> {
        let n = self.degree();
        if n == 0 {
            return Err(Error::DegreeZero);
        }
        let mine = self.descent_set();
        let rest: BTreeSet<usize> = (1..n).filter(|i| !mine.contains(i)).collect();
        Composition::from_descent_set(n, &rest)
    }

    /// `Λ(α)`: each maximal run of 1s is added into the part that ends it; a
    /// trailing run of 1s is summed into a single final part.
    pub fn lambda_collapse(&self) -> Composition {
        let mut out = Vec::with_capacity(self.0.len());
        let mut run = 0;
        for &p in &self.0 {
            if p == 1 {
                run += 1;
            } else {
                out.push(run + p);
                run = 0;
            }
        }
        if run > 0 {
            out.push(run);
        }
        Composition(out)
    }

    /// `β*`: every part after the first that exceeds 1 is split as `1, p-1`.
    pub fn star(&self) -> Composition {
        let mut out = Vec::with_capacity(2 * self.0.len());
        for (i, &p) in self.0.iter().enumerate() {
            if i > 0 && p > 1 {
                out.push(1);
                out.push(p - 1);
            } else {
                out.push(p);
            }
        }
        Composition(out)
    }

    /// `δ**`: `δ*` with the first part split as well.
    pub fn double_star(&self) -> Composition {
        let mut out = Vec::with_capacity(2 * self.0.len());
        for &p in &self.0 {
            if p > 1 {
                out.push(1);
                out.push(p - 1);
            } else {
                out.push(p);
            }
        }
        Composition(out)
    }

    /// Every part equal to 1 is the last part.
    pub fn is_peak(&self) -> bool {
        let k = self.0.len();
        self.0
            .iter()
            .enumerate()
            .all(|(i, &p)| p != 1 || i + 1 == k)
    }

    /// Degree at most 1, or first part at least 2.
    pub fn is_sqs(&self) -> bool {
        self.degree() <= 1 || self.0[0] >= 2
    }

    /// Descents `i ∈ {3, ..., n-2}` with neither `i-1` nor `i+1` a descent.
    pub fn internal_peaks(&self) -> Vec<usize> {
        let n = self.degree();
        let set = self.descent_set();
        set.iter()
            .copied()
            .filter(|&i| i >= 3 && i + 2 <= n)
            .filter(|&i| !set.contains(&(i - 1)) && !set.contains(&(i + 1)))
            .collect()
    }

    /// Part positions `j` (1-based) where parts `j, j+1` carry an internal
    /// peak by the component test: `α_{j+1} ≥ 2` and `α_j ≥ 2` (`≥ 3` for `j = 1`).
    pub fn internal_peak_positions(&self) -> Vec<usize> {
        self.0
            .windows(2)
            .enumerate()
            .filter(|(idx, w)| {
                let first_ok = if *idx == 0 { w[0] >= 3 } else { w[0] >= 2 };
                first_ok && w[1] >= 2
            })
            .map(|(idx, _)| idx + 1)
            .collect()
    }

    /// The path graph `G(α)` on vertices `1..=n`.
    pub fn graph(&self) -> PathGraph {
        let n = self.degree();
        let cuts = self.descent_set();
        PathGraph {
            vertices: n,
            edges: (1..n).filter(|i| !cuts.contains(i)).collect(),
        }
    }

    /// Largest vertex of each connected component of `G(α)`, omitting `n`.
    pub fn end_points(&self) -> Result<Vec<usize>> {
        if self.is_empty() {
            return Err(Error::DegreeZero);
        }
        Ok(self.graph().end_points())
    }
}

/// Canonical order: degree first, then the characteristic vector of the
/// descent set as a binary number with `c_1` most significant.
impl Ord for Composition {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        let mut a = self.descents().peekable();
        let mut b = other.descents().peekable();
        loop {
            match (a.peek(), b.peek()) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some(x), Some(y)) => match x.cmp(y) {
                    Ordering::Equal => {
                        a.next();
                        b.next();
                    }
                    // the smaller cut is present only on the left
                    Ordering::Less => return Ordering::Greater,
                    Ordering::Greater => return Ordering::Less,
                },
            }
        }
    }
}

impl PartialOrd for Composition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}

/// Accepts `2,1,1`, the digit shorthand `211`, optionally wrapped in brackets.
/// The empty string (or `[]`) is the empty composition.
impl FromStr for Composition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let trimmed = s.trim();
        let (body, offset) = match trimmed.strip_prefix('[') {
            Some(rest) => match rest.strip_suffix(']') {
                Some(body) => (body, 1),
                None => return Err(Error::parse(trimmed.len(), "missing closing ']'")),
            },
            None => (trimmed, 0),
        };
        if body.trim().is_empty() {
            return Ok(Composition::empty());
        }
        let mut parts = Vec::new();
        if body.contains(',') {
            let mut pos = offset;
            for field in body.split(',') {
                let f = field.trim();
                let part: usize = f
                    .parse()
                    .map_err(|_| Error::parse(pos, format!("invalid part {f:?}")))?;
                if part == 0 {
                    return Err(Error::parse(pos, "parts must be positive"));
                }
                parts.push(part);
                pos += field.len() + 1;
            }
        } else {
            for (i, c) in body.chars().enumerate() {
                match c.to_digit(10) {
                    Some(0) => return Err(Error::parse(offset + i, "parts must be positive")),
                    Some(d) => parts.push(d as usize),
                    None => return Err(Error::parse(offset + i, format!("unexpected {c:?}"))),
                }
            }
        }
        Ok(Composition(parts))
    }
}

/// Subset of `[n-1]` representing a composition of `n >= 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SubsetRep {
    degree: usize,
    elements: Vec<usize>,
}

impl SubsetRep {
    pub fn new(degree: usize, elements: Vec<usize>) -> Result<Self> {
        if degree == 0 {
            return Err(Error::DegreeZero);
        }
        for &e in &elements {
            if e == 0 || e >= degree {
                return Err(Error::SubsetOutOfRange {
                    element: e,
                    max: degree - 1,
                });
            }
        }
        if elements.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::SubsetNotIncreasing);
        }
        Ok(SubsetRep { degree, elements })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    /// Consecutive differences of `0, a_1, ..., a_{k-1}, n`.
    pub fn to_composition(&self) -> Result<Composition> {
        let mut parts = Vec::with_capacity(self.elements.len() + 1);
        let mut prev = 0;
        for &e in self.elements.iter().chain(std::iter::once(&self.degree)) {
            parts.push(e - prev);
            prev = e;
        }
        Composition::new(parts)
    }
}

impl fmt::Display for SubsetRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, e) in self.elements.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}/n={}", self.degree)
    }
}

impl FromStr for SubsetRep {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let close = s
            .find('}')
            .ok_or_else(|| Error::parse(s.len(), "missing '}'"))?;
        let body = s
            .strip_prefix('{')
            .ok_or_else(|| Error::parse(0, "expected '{'"))?;
        let inner = &body[..close - 1];
        let tail = &s[close + 1..];
        let n_str = tail
            .strip_prefix("/n=")
            .ok_or_else(|| Error::parse(close + 1, "expected '/n='"))?;
        let degree: usize = n_str
            .trim()
            .parse()
            .map_err(|_| Error::parse(close + 4, "invalid degree"))?;
        let mut elements = Vec::new();
        if !inner.trim().is_empty() {
            let mut pos = 1;
            for field in inner.split(',') {
                let e: usize = field
                    .trim()
                    .parse()
                    .map_err(|_| Error::parse(pos, format!("invalid element {field:?}")))?;
                elements.push(e);
                pos += field.len() + 1;
            }
        }
        SubsetRep::new(degree, elements)
    }
}

/// A subgraph of the path `1 - 2 - ... - n`; `edges` holds the `i` for which
/// the edge `(i, i+1)` is present.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathGraph {
    pub vertices: usize,
    pub edges: BTreeSet<usize>,
}

impl PathGraph {
    pub fn end_points(&self) -> Vec<usize> {
        (1..self.vertices)
            .filter(|i| !self.edges.contains(i))
            .collect()
    }

    /// The composition whose graph is `self`.
    pub fn to_composition(&self) -> Composition {
        let mut parts = Vec::new();
        let mut size = 0;
        for v in 1..=self.vertices {
            size += 1;
            if v == self.vertices || !self.edges.contains(&v) {
                parts.push(size);
                size = 0;
            }
        }
        Composition(parts)
    }
}

/// `3^(i) = [1^{i-2}, 3, 1^{n-i-1}]` as a composition of `n`.
pub fn three_i(n: usize, i: usize) -> Result<Composition> {
    if n < 3 || i < 2 || i + 1 > n {
        return Err(Error::ThreeIndexOutOfRange { n, i });
    }
    let mut parts = vec![1; i - 2];
    parts.push(3);
    parts.extend(std::iter::repeat_n(1, n - i - 1));
    Ok(Composition(parts))
}

/// `⋀_{i ∈ S} 3^(i)`: the composition whose graph has the union of the edges
/// of the `G(3^(i))`.
pub fn wedge(n: usize, indices: &BTreeSet<usize>) -> Result<Composition> {
    if indices.is_empty() {
        return Err(Error::EmptyWedge);
    }
    let mut edges = BTreeSet::new();
    for &i in indices {
        edges.extend(three_i(n, i)?.graph().edges);
    }
    Ok(PathGraph { vertices: n, edges }.to_composition())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Filter {
    All,
    Peak,
    Sqs,
    SqsNoInternalPeak,
}

impl Filter {
    pub fn accepts(self, alpha: &Composition) -> bool {
        match self {
            Filter::All => true,
            Filter::Peak => alpha.is_peak(),
            Filter::Sqs => alpha.is_sqs(),
            Filter::SqsNoInternalPeak => alpha.is_sqs() && alpha.internal_peaks().is_empty(),
        }
    }
}

/// All compositions of `n` passing `filter`, in canonical order: the
/// characteristic vector of the descent set counts up in binary.
pub fn enumerate(n: usize, filter: Filter) -> Vec<Composition> {
    if n == 0 {
        return vec![Composition::empty()];
    }
    assert!(n <= 63, "enumeration beyond degree 63 is not supported");
    let cuts = n - 1;
    (0u64..1u64 << cuts)
        .map(|counter| {
            let mut parts = Vec::new();
            let mut size = 0;
            for i in 1..=cuts {
                size += 1;
                if counter >> (cuts - i) & 1 == 1 {
                    parts.push(size);
                    size = 0;
                }
            }
            parts.push(size + 1);
            Composition(parts)
        })
        .filter(|c| filter.accepts(c))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(s: &str) -> Composition {
        s.parse().unwrap()
    }

    fn set(xs: &[usize]) -> BTreeSet<usize> {
        xs.iter().copied().collect()
    }

    #[test]
    fn subset_examples() {
        assert_eq!(c("2,1").to_subset().unwrap().elements(), &[2]);
        assert!(c("5").to_subset().unwrap().elements().is_empty());
        assert_eq!(c("1,1,1,1").to_subset().unwrap().elements(), &[1, 2, 3]);
        assert_eq!(
            Composition::empty().to_subset().unwrap_err().to_string(),
            "degree-zero composition has no subset representative"
        );

        let s = SubsetRep::new(3, vec![2]).unwrap();
        assert_eq!(s.to_composition().unwrap(), c("2,1"));
        assert_eq!(SubsetRep::new(5, vec![]).unwrap().to_composition().unwrap(), c("5"));
        assert_eq!(
            SubsetRep::new(4, vec![1, 3]).unwrap().to_composition().unwrap(),
            c("1,2,1")
        );
        assert!(SubsetRep::new(4, vec![4]).is_err());
        assert!(SubsetRep::new(4, vec![0]).is_err());
        assert!(SubsetRep::new(4, vec![2, 1]).is_err());
    }

    #[test]
    fn subset_text_format() {
        let s: SubsetRep = "{2,3}/n=5".parse().unwrap();
        assert_eq!(s.elements(), &[2, 3]);
        assert_eq!(s.to_string(), "{2,3}/n=5");
        let e: SubsetRep = "{}/n=4".parse().unwrap();
        assert_eq!(e.to_composition().unwrap(), c("4"));
        assert!("{5}/n=5".parse::<SubsetRep>().is_err());
    }

    #[test]
    fn refinement() {
        assert!(c("1,1,2").refines(&c("2,2")).unwrap());
        assert!(!c("2,2").refines(&c("1,1,2")).unwrap());
        assert!(matches!(c("2").refines(&c("3")), Err(Error::DegreeMismatch(2, 3))));
    }

    #[test]
    fn concat_examples() {
        assert_eq!(c("3").concat(&c("2")), c("3,2"));
        assert_eq!(Composition::empty().concat(&c("4,1")), c("4,1"));
        assert_eq!(c("2,1").concat(&c("1,3")), c("2,1,1,3"));
    }

    #[test]
    fn complement_examples() {
        assert_eq!(c("4").complement().unwrap(), Composition::ones(4));
        assert_eq!(c("2,1").complement().unwrap(), c("1,2"));
        assert!(Composition::empty().complement().is_err());
    }

    #[test]
    fn lambda_examples() {
        assert_eq!(c("3,1,1,2,5,1,1,1").lambda_collapse(), c("3,4,5,3"));
        assert_eq!(c("2,2").lambda_collapse(), c("2,2"));
        assert_eq!(c("1,1,1").lambda_collapse(), c("3"));
        assert_eq!(c("2,1").lambda_collapse(), c("2,1"));
    }

    #[test]
    fn star_examples() {
        assert_eq!(c("2,2").star(), c("2,1,1"));
        assert_eq!(c("3").star(), c("3"));
        assert_eq!(c("1,1").star(), c("1,1"));
        assert_eq!(c("2,2").double_star(), c("1,1,1,1"));
        assert_eq!(c("1,3").double_star(), c("1,1,2"));
        assert_eq!(c("1").double_star(), c("1"));
    }

    #[test]
    fn predicates() {
        assert!(c("2,1").is_peak());
        assert!(!c("1,2").is_peak());
        assert!(c("1").is_sqs());
        assert!(!c("1,2").is_sqs());
        assert!(Composition::empty().is_sqs());
    }

    #[test]
    fn internal_peak_examples() {
        assert_eq!(c("3,2").internal_peaks(), vec![3]);
        for alpha in enumerate(4, Filter::All) {
            assert!(alpha.internal_peaks().is_empty());
        }
        assert!(c("2,2,1").internal_peaks().is_empty());
        assert_eq!(c("3,2").internal_peak_positions(), vec![1]);
    }

    #[test]
    fn three_i_and_wedge() {
        assert_eq!(three_i(4, 2).unwrap(), c("3,1"));
        assert_eq!(three_i(4, 3).unwrap(), c("1,3"));
        assert_eq!(three_i(3, 2).unwrap(), c("3"));
        assert!(three_i(4, 1).is_err());
        assert!(three_i(4, 4).is_err());

        assert_eq!(wedge(4, &set(&[2, 3])).unwrap(), c("4"));
        assert_eq!(wedge(6, &set(&[3])).unwrap(), three_i(6, 3).unwrap());
        let a = three_i(5, 2).unwrap().descent_set();
        let b = three_i(5, 4).unwrap().descent_set();
        let both: BTreeSet<usize> = a.intersection(&b).copied().collect();
        assert_eq!(
            wedge(5, &set(&[2, 4])).unwrap(),
            Composition::from_descent_set(5, &both).unwrap()
        );
        assert_eq!(wedge(5, &BTreeSet::new()), Err(Error::EmptyWedge));
        assert!(wedge(5, &set(&[5])).is_err());
    }

    #[test]
    fn end_point_examples() {
        assert_eq!(c("2,1").end_points().unwrap(), vec![2]);
        assert!(c("6").end_points().unwrap().is_empty());
        assert!(Composition::empty().end_points().is_err());
    }

    #[test]
    fn enumerate_order() {
        let got = enumerate(3, Filter::All);
        assert_eq!(got, vec![c("3"), c("2,1"), c("1,2"), c("1,1,1")]);
        let mut sorted = got.clone();
        sorted.sort();
        assert_eq!(sorted, got);
        assert_eq!(enumerate(0, Filter::All), vec![Composition::empty()]);
        assert_eq!(enumerate(5, Filter::SqsNoInternalPeak).len(), 7);
    }

    #[test]
    fn parse_forms() {
        assert_eq!(c("211"), c("2,1,1"));
        assert_eq!(c("[2,1,1]"), c("2,1,1"));
        assert_eq!(c("12,3").parts(), &[12, 3]);
        assert_eq!(c(""), Composition::empty());
        assert!(matches!("2,x".parse::<Composition>(), Err(Error::Parse { pos: 2, .. })));
        assert!(matches!("2a".parse::<Composition>(), Err(Error::Parse { pos: 1, .. })));
        assert!("2,0".parse::<Composition>().is_err());
    }
}
