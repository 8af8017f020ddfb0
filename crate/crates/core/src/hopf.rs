//! Hopf structure on quasi-symmetric functions: quasi-shuffle product,
//! deconcatenation coproduct, counit, the structural coproduct of `θ_α`, and
//! the retraction `Θ(F_α) = θ_{Λ(α)}` with its kernel.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::composition::{enumerate, Composition, Filter};
use crate::error::{Error, Result};
use crate::qsym::{fraction_parts, parse_sum, render_sum, Basis, QSymElement, Rational};
use crate::theta;

/// A finite combination of `B_β ⊗ B'_γ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorElement {
    left_basis: Basis,
    right_basis: Basis,
    terms: BTreeMap<(Composition, Composition), Rational>,
}

impl TensorElement {
    pub fn zero(left_basis: Basis, right_basis: Basis) -> Self {
        TensorElement {
            left_basis,
            right_basis,
            terms: BTreeMap::new(),
        }
    }

    pub fn left_basis(&self) -> Basis {
        self.left_basis
    }

    pub fn right_basis(&self) -> Basis {
        self.right_basis
    }

    pub fn terms(&self) -> &BTreeMap<(Composition, Composition), Rational> {
        &self.terms
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

    pub fn coeff(&self, left: &Composition, right: &Composition) -> Rational {
        self.terms
            .get(&(left.clone(), right.clone()))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, left: Composition, right: Composition, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry((left, right)) {
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

    pub fn add(&self, other: &TensorElement) -> Result<TensorElement> {
        if !other.is_zero() && !self.is_zero() {
            if self.left_basis != other.left_basis {
                return Err(Error::BasisMismatch(self.left_basis, other.left_basis));
            }
            if self.right_basis != other.right_basis {
                return Err(Error::BasisMismatch(self.right_basis, other.right_basis));
            }
        }
        let mut out = self.clone();
        for ((l, r), c) in &other.terms {
            out.add_term(l.clone(), r.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> TensorElement {
        let mut out = TensorElement::zero(self.left_basis, self.right_basis);
        for ((l, r), v) in &self.terms {
            out.add_term(l.clone(), r.clone(), v * c);
        }
        out
    }

    /// `Σ c (f(β) ⊗ g(γ))`, each side mapped to an element of a fixed basis.
    pub fn map_sides<F, G>(&self, left_basis: Basis, right_basis: Basis, f: F, g: G) -> Result<TensorElement>
    where
        F: Fn(&Composition) -> Result<QSymElement>,
        G: Fn(&Composition) -> Result<QSymElement>,
    {
        let mut out = TensorElement::zero(left_basis, right_basis);
        for ((l, r), c) in &self.terms {
            let fl = f(l)?;
            let gr = g(r)?;
            for (a, ca) in fl.terms() {
                for (b, cb) in gr.terms() {
                    out.add_term(a.clone(), b.clone(), c * ca * cb);
                }
            }
        }
        Ok(out)
    }

    /// Change of basis on both sides (`M`/`F` only).
    pub fn convert(&self, left: Basis, right: Basis) -> Result<TensorElement> {
        let (lb, rb) = (self.left_basis, self.right_basis);
        self.map_sides(
            left,
            right,
            |a| QSymElement::basis_element(lb, a.clone()).convert(left),
            |b| QSymElement::basis_element(rb, b.clone()).convert(right),
        )
    }

    /// Rewrites both sides in the `M` basis, expanding `θ` indices.
    pub fn to_m(&self) -> Result<TensorElement> {
        let (lb, rb) = (self.left_basis, self.right_basis);
        self.map_sides(
            Basis::M,
            Basis::M,
            |a| theta::to_monomial(&QSymElement::basis_element(lb, a.clone())),
            |b| theta::to_monomial(&QSymElement::basis_element(rb, b.clone())),
        )
    }

    /// Componentwise product `(a ⊗ b)(c ⊗ d) = ac ⊗ bd`, in `M ⊗ M`.
    pub fn mul(&self, other: &TensorElement) -> Result<TensorElement> {
        let x = self.to_m()?;
        let y = other.to_m()?;
        let mut out = TensorElement::zero(Basis::M, Basis::M);
        for ((a, b), cx) in &x.terms {
            for ((c, d), cy) in &y.terms {
                let left = quasi_shuffle(a, c);
                let right = quasi_shuffle(b, d);
                let coeff = cx * cy;
                for (l, cl) in left.terms() {
                    for (r, cr) in right.terms() {
                        out.add_term(l.clone(), r.clone(), &coeff * cl * cr);
                    }
                }
            }
        }
        Ok(out)
    }

    /// `(ε ⊗ id)`: the right factors of the terms whose left factor is `1`.
    pub fn counit_left(&self) -> Result<QSymElement> {
        self.require_m()?;
        Ok(QSymElement::from_terms(
            Basis::M,
            self.terms
                .iter()
                .filter(|((l, _), _)| l.is_empty())
                .map(|((_, r), c)| (r.clone(), c.clone())),
        ))
    }

    /// `(id ⊗ ε)`.
    pub fn counit_right(&self) -> Result<QSymElement> {
        self.require_m()?;
        Ok(QSymElement::from_terms(
            Basis::M,
            self.terms
                .iter()
                .filter(|((_, r), _)| r.is_empty())
                .map(|((l, _), c)| (l.clone(), c.clone())),
        ))
    }

    fn require_m(&self) -> Result<()> {
        if self.left_basis != Basis::M {
            return Err(Error::BasisMismatch(self.left_basis, Basis::M));
        }
        if self.right_basis != Basis::M {
            return Err(Error::BasisMismatch(self.right_basis, Basis::M));
        }
        Ok(())
    }

    /// Text form, e.g. `1⊗M[3,2] + M[3]⊗M[2] + M[3,2]⊗1`.
    pub fn render(&self) -> String {
        let label = |b: Basis, a: &Composition| {
            if a.is_empty() {
                "1".to_string()
            } else {
                format!("{}[{}]", b.symbol(), a)
            }
        };
        render_sum(self.terms.iter().map(|((l, r), c)| {
            (
                format!("{}⊗{}", label(self.left_basis, l), label(self.right_basis, r)),
                c,
            )
        }))
    }

    pub fn to_records(&self) -> Result<Vec<TensorRecord>> {
        self.terms
            .iter()
            .map(|((l, r), c)| {
                let (num, den) = fraction_parts(c)?;
                Ok(TensorRecord {
                    left_parts: l.parts().to_vec(),
                    right_parts: r.parts().to_vec(),
                    num,
                    den,
                })
            })
            .collect()
    }

    pub fn from_records(left: Basis, right: Basis, records: &[TensorRecord]) -> Result<Self> {
        let mut out = TensorElement::zero(left, right);
        for r in records {
            if r.den == 0 {
                return Err(Error::parse(0, "zero denominator"));
            }
            out.add_term(
                Composition::new(r.left_parts.clone())?,
                Composition::new(r.right_parts.clone())?,
                BigRational::new(r.num.into(), r.den.into()),
            );
        }
        Ok(out)
    }
}

impl fmt::Display for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Parses the text rendering. Bases are read from the factors; sides made
/// only of `1` factors default to `M`.
impl FromStr for TensorElement {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut left_basis = None;
        let mut right_basis = None;
        let mut terms = Vec::new();
        for (coeff, label, pos) in parse_sum(s)? {
            let (l, r) = label
                .split_once('⊗')
                .ok_or_else(|| Error::parse(pos, format!("expected a⊗b, got {label:?}")))?;
            let (lb, la) = parse_factor(l, pos)?;
            let (rb, ra) = parse_factor(r, pos)?;
            for (slot, b) in [(&mut left_basis, lb), (&mut right_basis, rb)] {
                if let Some(b) = b {
                    match slot {
                        Some(prev) if *prev != b => return Err(Error::BasisMismatch(*prev, b)),
                        _ => *slot = Some(b),
                    }
                }
            }
            terms.push((la, ra, coeff));
        }
        let mut out = TensorElement::zero(left_basis.unwrap_or(Basis::M), right_basis.unwrap_or(Basis::M));
        for (l, r, c) in terms {
            out.add_term(l, r, c);
        }
        Ok(out)
    }
}

fn parse_factor(s: &str, pos: usize) -> Result<(Option<Basis>, Composition)> {
    let s = s.trim();
    if s == "1" {
        return Ok((None, Composition::empty()));
    }
    let open = s
        .find('[')
        .ok_or_else(|| Error::parse(pos, format!("expected B[parts] or 1, got {s:?}")))?;
    let basis: Basis = s[..open].parse()?;
    Ok((Some(basis), s[open..].parse()?))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TensorRecord {
    pub left_parts: Vec<usize>,
    pub right_parts: Vec<usize>,
    pub num: i64,
    pub den: i64,
}

/// `M_α · M_β` by the quasi-shuffle recursion: the result starts with the
/// first part of `α`, the first part of `β`, or their sum.
pub fn quasi_shuffle(alpha: &Composition, beta: &Composition) -> QSymElement {
    let mut counts: BTreeMap<Vec<usize>, u64> = BTreeMap::new();
    let mut prefix = Vec::with_capacity(alpha.len() + beta.len());
    shuffle_into(alpha.parts(), beta.parts(), &mut prefix, &mut counts);
    QSymElement::from_terms(
        Basis::M,
        counts.into_iter().map(|(parts, n)| {
            (
                Composition::from_parts_unchecked(parts),
                Rational::from_integer(n.into()),
            )
        }),
    )
}

fn shuffle_into(a: &[usize], b: &[usize], prefix: &mut Vec<usize>, out: &mut BTreeMap<Vec<usize>, u64>) {
    match (a.split_first(), b.split_first()) {
        (None, _) | (_, None) => {
            let mut parts = prefix.clone();
            parts.extend_from_slice(a);
            parts.extend_from_slice(b);
            *out.entry(parts).or_insert(0) += 1;
        }
        (Some((&x, ra)), Some((&y, rb))) => {
            prefix.push(x);
            shuffle_into(ra, b, prefix, out);
            prefix.pop();
            prefix.push(y);
            shuffle_into(a, rb, prefix, out);
            prefix.pop();
            prefix.push(x + y);
            shuffle_into(ra, rb, prefix, out);
            prefix.pop();
        }
    }
}

/// Bilinear extension of [`quasi_shuffle`]; the result is in the `M` basis.
pub fn product(f: &QSymElement, g: &QSymElement) -> Result<QSymElement> {
    let f = theta::to_monomial(f)?;
    let g = theta::to_monomial(g)?;
    let mut out = QSymElement::zero(Basis::M);
    for (a, ca) in f.terms() {
        for (b, cb) in g.terms() {
            let coeff = ca * cb;
            for (gamma, c) in quasi_shuffle(a, b).terms() {
                out.add_term(gamma.clone(), &coeff * c);
            }
        }
    }
    Ok(out)
}

/// `Δ(M_α) = Σ_{α = β·γ} M_β ⊗ M_γ`.
pub fn coproduct_m(alpha: &Composition) -> TensorElement {
    let parts = alpha.parts();
    let mut out = TensorElement::zero(Basis::M, Basis::M);
    for split in 0..=parts.len() {
        out.add_term(
            Composition::from_parts_unchecked(parts[..split].to_vec()),
            Composition::from_parts_unchecked(parts[split..].to_vec()),
            Rational::one(),
        );
    }
    out
}

/// Linear extension of [`coproduct_m`]; `θ` and `F` inputs are rewritten in `M` first.
pub fn coproduct(f: &QSymElement) -> Result<TensorElement> {
    let m = theta::to_monomial(f)?;
    let mut out = TensorElement::zero(Basis::M, Basis::M);
    for (alpha, c) in m.terms() {
        for ((l, r), v) in coproduct_m(alpha).terms() {
            out.add_term(l.clone(), r.clone(), c * v);
        }
    }
    Ok(out)
}

/// Coefficient of `M_∅` once `f` is written in the `M` basis.
pub fn counit(f: &QSymElement) -> Result<Rational> {
    Ok(theta::to_monomial(f)?.coeff(&Composition::empty()))
}

/// `φ(b·ζ)`: `[1 + ζ_1, ζ_2, ...]` when `b = 1`, otherwise `b·ζ` (with `0·ζ = ζ`).
pub fn phi(b: usize, zeta: &Composition) -> Composition {
    let mut parts = Vec::with_capacity(zeta.len() + 1);
    match b {
        0 => parts.extend_from_slice(zeta.parts()),
        1 => match zeta.parts().split_first() {
            Some((&first, rest)) => {
                parts.push(first + 1);
                parts.extend_from_slice(rest);
            }
            None => parts.push(1),
        },
        _ => {
            parts.push(b);
            parts.extend_from_slice(zeta.parts());
        }
    }
    Composition::from_parts_unchecked(parts)
}

/// `Δ(θ_α) = Σ θ_{ε·a} ⊗ θ_{φ(b·ζ)}`, as a formal `θ ⊗ θ` combination.
///
/// One term per cut point `c ∈ {0, ..., n}`. The end cuts give `1 ⊗ θ_α` and
/// `θ_α ⊗ 1`. Every other cut falls in some part `α_m = a + b` with `a ≥ 0`,
/// `b ≥ 1`; a boundary cut is read as `(0, α_m)`, so a following part equal
/// to 1 is absorbed by `φ`. Reading `(α_{m-1}, 0)` as well would count each
/// boundary twice, and reading it instead of `(0, α_m)` loses the merge.
pub fn theta_coproduct(alpha: &Composition) -> TensorElement {
    let parts = alpha.parts();
    let mut out = TensorElement::zero(Basis::Theta, Basis::Theta);
    out.add_term(Composition::empty(), alpha.clone(), Rational::one());
    if alpha.is_empty() {
        return out;
    }
    out.add_term(alpha.clone(), Composition::empty(), Rational::one());
    for (m, &part) in parts.iter().enumerate() {
        let zeta = Composition::from_parts_unchecked(parts[m + 1..].to_vec());
        let first = if m == 0 { 1 } else { 0 };
        for a in first..part {
            let mut left = parts[..m].to_vec();
            if a > 0 {
                left.push(a);
            }
            out.add_term(
                Composition::from_parts_unchecked(left),
                phi(part - a, &zeta),
                Rational::one(),
            );
        }
    }
    out
}

/// `Θ(F_α) = θ_{Λ(α)}`, extended linearly. `M` inputs are converted to `F` first.
pub fn theta_map(f: &QSymElement) -> Result<QSymElement> {
    let f = f.convert(Basis::F)?;
    Ok(QSymElement::from_terms(
        Basis::Theta,
        f.terms()
            .iter()
            .map(|(alpha, c)| (alpha.lambda_collapse(), c.clone())),
    ))
}

/// `(Θ ⊗ Θ)` on an `F ⊗ F` (or `M ⊗ M`) tensor.
pub fn theta_map_tensor(t: &TensorElement) -> Result<TensorElement> {
    let f = t.convert(Basis::F, Basis::F)?;
    let mut out = TensorElement::zero(Basis::Theta, Basis::Theta);
    for ((l, r), c) in f.terms() {
        out.add_term(l.lambda_collapse(), r.lambda_collapse(), c.clone());
    }
    Ok(out)
}

/// The non-zero differences `F_α − F_{Λ(α)}` over `α ⊨ n`, in canonical order.
pub fn kernel_basis(n: usize) -> Vec<QSymElement> {
    enumerate(n, Filter::All)
        .into_iter()
        .filter_map(|alpha| {
            let collapsed = alpha.lambda_collapse();
            (collapsed != alpha).then(|| {
                QSymElement::from_terms(
                    Basis::F,
                    [(alpha, Rational::one()), (collapsed, -Rational::one())],
                )
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qsym::rat;

    fn c(s: &str) -> Composition {
        s.parse().unwrap()
    }

    fn e(s: &str) -> QSymElement {
        s.parse().unwrap()
    }

    #[test]
    fn quasi_shuffle_examples() {
        assert_eq!(quasi_shuffle(&c("1"), &c("1")), e("2*M[1,1] + M[2]"));
        assert_eq!(quasi_shuffle(&Composition::empty(), &c("2,1")), e("M[2,1]"));
        assert_eq!(quasi_shuffle(&c("2"), &c("1")), e("M[2,1] + M[1,2] + M[3]"));
    }

    #[test]
    fn product_examples() {
        let f = e("3*M[2,1] − M[1]");
        assert_eq!(product(&f, &QSymElement::one(Basis::M)).unwrap(), f);
        let ff = product(&e("F[1]"), &e("F[1]")).unwrap();
        assert_eq!(ff.convert(Basis::F).unwrap(), e("F[2] + F[1,1]"));
    }

    #[test]
    fn coproduct_m_examples() {
        assert_eq!(coproduct_m(&c("3,2")).render(), "1⊗M[3,2] + M[3]⊗M[2] + M[3,2]⊗1");
        assert_eq!(coproduct_m(&Composition::empty()).render(), "1⊗1");
        assert_eq!(coproduct_m(&c("1,1")).render(), "1⊗M[1,1] + M[1]⊗M[1] + M[1,1]⊗1");
        assert_eq!(coproduct(&e("M[3,2]")).unwrap(), coproduct_m(&c("3,2")));
        assert_eq!(coproduct(&QSymElement::one(Basis::M)).unwrap().render(), "1⊗1");
    }

    #[test]
    fn coproduct_of_theta_2() {
        let theta2 = e("2*M[2] + 4*M[1,1]");
        let theta1 = e("2*M[1]");
        let one = QSymElement::one(Basis::M);
        let mut expected = TensorElement::zero(Basis::M, Basis::M);
        for (l, r) in [(&one, &theta2), (&theta1, &theta1), (&theta2, &one)] {
            for (a, ca) in l.terms() {
                for (b, cb) in r.terms() {
                    expected.add_term(a.clone(), b.clone(), ca * cb);
                }
            }
        }
        assert_eq!(coproduct(&theta2).unwrap(), expected);
    }

    #[test]
    fn counit_examples() {
        assert_eq!(counit(&QSymElement::one(Basis::M)).unwrap(), rat(1));
        assert_eq!(counit(&e("M[2,1]")).unwrap(), rat(0));
        for n in 0..=5 {
            for alpha in enumerate(n, Filter::All) {
                let m = QSymElement::basis_element(Basis::M, alpha.clone());
                let d = coproduct_m(&alpha);
                assert_eq!(d.counit_left().unwrap(), m);
                assert_eq!(d.counit_right().unwrap(), m);
            }
        }
    }

    #[test]
    fn phi_examples() {
        assert_eq!(phi(2, &c("3")), c("2,3"));
        assert_eq!(phi(1, &c("3,1")), c("4,1"));
        assert_eq!(phi(1, &Composition::empty()), c("1"));
        assert_eq!(phi(0, &c("2,2")), c("2,2"));
    }

    #[test]
    fn theta_coproduct_examples() {
        assert_eq!(theta_coproduct(&c("2")).render(), "1⊗θ[2] + θ[1]⊗θ[1] + θ[2]⊗1");
        assert_eq!(theta_coproduct(&Composition::empty()).render(), "1⊗1");
        assert_eq!(
            theta_coproduct(&c("2,1")).render(),
            "1⊗θ[2,1] + θ[1]⊗θ[2] + θ[2]⊗θ[1] + θ[2,1]⊗1"
        );
    }

    /// Every `(m, a, b)` with `a, b ≥ 0` taken separately counts each
    /// boundary cut twice; the M-basis coproduct has each once.
    #[test]
    fn per_part_split_reading_double_counts_boundaries() {
        let alpha = c("2,1");
        let mut literal = TensorElement::zero(Basis::Theta, Basis::Theta);
        let parts = alpha.parts();
        for (m, &part) in parts.iter().enumerate() {
            let zeta = Composition::from_parts_unchecked(parts[m + 1..].to_vec());
            for a in 0..=part {
                let mut left = parts[..m].to_vec();
                if a > 0 {
                    left.push(a);
                }
                literal.add_term(Composition::new(left).unwrap(), phi(part - a, &zeta), rat(1));
            }
        }
        assert_eq!(literal.coeff(&c("2"), &c("1")), rat(2));
        let m_route = coproduct(&theta::theta_m(&alpha)).unwrap();
        assert_ne!(literal.to_m().unwrap(), m_route);
        assert_eq!(theta_coproduct(&alpha).to_m().unwrap(), m_route);
    }

    /// A boundary followed by a part 1 must merge it: θ_1 ⊗ θ_2, not θ_1 ⊗ θ_11.
    /// The leading cut must not: 1 ⊗ θ_11, not 1 ⊗ θ_2.
    #[test]
    fn boundary_cuts_merge_following_one() {
        let t = theta_coproduct(&c("1,1,1"));
        assert_eq!(t.coeff(&c("1"), &c("2")), rat(1));
        assert!(t.coeff(&c("1"), &c("1,1")).is_zero());
        assert_eq!(t.to_m().unwrap(), coproduct(&theta::theta_m(&c("1,1,1"))).unwrap());
        let u = theta_coproduct(&c("1,1"));
        assert_eq!(u.coeff(&Composition::empty(), &c("1,1")), rat(1));
        assert_eq!(u.to_m().unwrap(), coproduct(&theta::theta_m(&c("1,1"))).unwrap());
    }

    #[test]
    fn theta_coproduct_matches_m_route_small() {
        for n in 0..=6 {
            for alpha in enumerate(n, Filter::All) {
                let structural = theta_coproduct(&alpha).to_m().unwrap();
                let direct = coproduct(&theta::theta_m(&alpha)).unwrap();
                assert_eq!(structural, direct, "{alpha:?}");
            }
        }
    }

    #[test]
    fn theta_map_examples() {
        let f = QSymElement::basis_element(Basis::F, c("3,1,1,2,5,1,1,1"));
        assert_eq!(theta_map(&f).unwrap().render(), "θ[3,4,5,3]");
        let peak = QSymElement::basis_element(Basis::F, c("3,2,1"));
        assert_eq!(theta_map(&peak).unwrap().render(), "θ[3,2,1]");
        assert!(theta_map(&e("F[2,1,1] − F[2,2]")).unwrap().is_zero());
    }

    #[test]
    fn kernel_examples() {
        assert!(kernel_basis(1).is_empty());
        assert_eq!(kernel_basis(3).len(), 2);
        let k6 = kernel_basis(6);
        assert_eq!(k6.len(), 24);
        assert_eq!(crate::linalg::rank_of_elements(&k6), 24);
    }

    #[test]
    fn tensor_text_round_trip() {
        let t = theta_coproduct(&c("3,2"));
        let back: TensorElement = t.render().parse().unwrap();
        assert_eq!(back, t);
        let u = coproduct(&e("2*M[2] − 1/2*M[1,1]")).unwrap();
        assert_eq!(u.render().parse::<TensorElement>().unwrap(), u);
        let json = serde_json::to_string(&u.to_records().unwrap()).unwrap();
        let recs: Vec<TensorRecord> = serde_json::from_str(&json).unwrap();
        assert_eq!(TensorElement::from_records(Basis::M, Basis::M, &recs).unwrap(), u);
    }
}
