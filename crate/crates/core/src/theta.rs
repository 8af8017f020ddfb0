//! The functions `θ_α`: three independent constructions, the spaces they
//! span (peak functions `Π`, shifted quasi-symmetric functions `Ξ`), the
//! internal-peak rewriting to a basis of `Ξ`, and rank computations.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::composition::{enumerate, wedge, Composition, Filter};
use crate::error::{Error, Result};
use crate::linalg;
use crate::qsym::{rat, render_sum, Basis, QSymElement, Rational, SparsePolynomial};

/// `θ_α = Σ 2^{k(β)} M_β` over `β ⊨ n` with `I(α) ⊆ I(β) ∪ (I(β) + 1)`.
pub fn theta_m(alpha: &Composition) -> QSymElement {
    let n = alpha.degree();
    let required = alpha.descent_set();
    QSymElement::from_terms(
        Basis::M,
        enumerate(n, Filter::All).into_iter().filter_map(|beta| {
            let cuts = beta.descent_set();
            let admissible = required
                .iter()
                .all(|&i| cuts.contains(&i) || cuts.contains(&(i - 1)));
            admissible.then(|| {
                let weight = pow2(beta.len());
                (beta, weight)
            })
        }),
    )
}

/// `θ_α = Σ 2^{k(β)} M_β` over `β ⊨ n` with `β*` refining `α`.
pub fn theta_star_form(alpha: &Composition) -> QSymElement {
    let n = alpha.degree();
    QSymElement::from_terms(
        Basis::M,
        enumerate(n, Filter::All).into_iter().filter_map(|beta| {
            let refines = beta.star().refines(alpha).expect("equal degrees");
            refines.then(|| {
                let weight = pow2(beta.len());
                (beta, weight)
            })
        }),
    )
}

fn pow2(k: usize) -> Rational {
    Rational::from_integer(num_bigint::BigInt::one() << k)
}

/// Rewrites `f` in the `M` basis; `θ` indices are expanded with [`theta_m`].
pub fn to_monomial(f: &QSymElement) -> Result<QSymElement> {
    match f.basis() {
        Basis::Theta => {
            let mut out = QSymElement::zero(Basis::M);
            for (alpha, c) in f.terms() {
                for (beta, v) in theta_m(alpha).terms() {
                    out.add_term(beta.clone(), c * v);
                }
            }
            Ok(out)
        }
        _ => f.to_m(),
    }
}

/// `Σ 2^{|j|} x_{j_1} ⋯ x_{j_n}` over weakly increasing `j_1 ≤ ⋯ ≤ j_n` in
/// `[1, N]` with no `j_{i-1} = j_i = j_{i+1}` for `i ∈ I(α)`, where `|j|`
/// counts distinct values.
pub fn theta_bh(alpha: &Composition, num_vars: usize) -> Result<SparsePolynomial> {
    if !alpha.is_sqs() {
        return Err(Error::NotSqs(alpha.to_string()));
    }
    let n = alpha.degree();
    // forbidden[p] marks 0-based sequence positions p with p + 1 ∈ I(α)
    let mut forbidden = vec![false; n];
    for i in alpha.descents() {
        forbidden[i - 1] = true;
    }
    let mut out = SparsePolynomial::zero(num_vars);
    let mut seq = Vec::with_capacity(n);
    bh_sequences(n, num_vars, &forbidden, &mut seq, &mut out);
    Ok(out)
}

fn bh_sequences(
    n: usize,
    num_vars: usize,
    forbidden: &[bool],
    seq: &mut Vec<usize>,
    out: &mut SparsePolynomial,
) {
    let pos = seq.len();
    if pos == n {
        let mut exps = vec![0u32; num_vars];
        for &j in seq.iter() {
            exps[j] += 1;
        }
        let distinct = exps.iter().filter(|&&e| e > 0).count();
        out.add_term(exps, pow2(distinct));
        return;
    }
    let start = seq.last().copied().unwrap_or(0);
    for j in start..num_vars {
        // placing j at `pos` closes the triple centred at pos - 1
        if pos >= 2 && forbidden[pos - 1] && seq[pos - 2] == j && seq[pos - 1] == j {
            continue;
        }
        seq.push(j);
        bh_sequences(n, num_vars, forbidden, seq, out);
        seq.pop();
    }
}

/// Compositions `β` of `θ_α`'s `M`-support with no strictly coarser
/// composition (`I(γ) ⊊ I(β)`) also in the support.
pub fn maximal_terms(alpha: &Composition) -> Vec<Composition> {
    let support: Vec<Composition> = theta_m(alpha).terms().keys().cloned().collect();
    let sets: Vec<BTreeSet<usize>> = support.iter().map(Composition::descent_set).collect();
    support
        .iter()
        .zip(&sets)
        .filter(|(_, s)| !sets.iter().any(|t| t.len() < s.len() && t.is_subset(s)))
        .map(|(b, _)| b.clone())
        .collect()
}

/// The wedge-and-merge construction of candidate maximal terms, compared
/// against [`maximal_terms`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MaximalTermCheck {
    pub alpha: Vec<usize>,
    pub direct: Vec<Vec<usize>>,
    /// Runs of 1s paired from the left.
    pub greedy_left: Vec<Vec<usize>>,
    /// Runs of 1s paired from the right.
    pub greedy_right: Vec<Vec<usize>>,
    /// Every maximal pairing of adjacent 1s.
    pub all_groupings: Vec<Vec<usize>>,
    pub left_covers: bool,
    pub right_covers: bool,
    pub all_cover: bool,
    pub all_exact: bool,
}

impl MaximalTermCheck {
    /// Some grouping reproduces the directly computed maximal terms.
    pub fn agrees(&self) -> bool {
        self.all_cover
    }
}

/// For each set obtained from `I(α)` by adding `i - 1` or `i + 1` at every
/// internal peak `i`, wedge the `3^(i)` over the remaining indices of
/// `{2, ..., n-1}` and merge adjacent 1s into 2s.
pub fn maximal_terms_by_wedge(alpha: &Composition) -> MaximalTermCheck {
    let n = alpha.degree();
    let base = alpha.descent_set();
    let peaks = alpha.internal_peaks();
    let mut variants = vec![base];
    for &i in &peaks {
        variants = variants
            .into_iter()
            .flat_map(|s| {
                [i - 1, i + 1].into_iter().map(move |extra| {
                    let mut t = s.clone();
                    t.insert(extra);
                    t
                })
            })
            .collect();
    }
    let mut left = BTreeSet::new();
    let mut right = BTreeSet::new();
    let mut all = BTreeSet::new();
    for s in variants {
        let complement: BTreeSet<usize> = (2..n).filter(|i| !s.contains(i)).collect();
        let wedged = if complement.is_empty() {
            Composition::ones(n)
        } else {
            wedge(n, &complement).expect("indices lie in 2..n-1")
        };
        left.insert(pair_ones(&wedged, true));
        right.insert(pair_ones(&wedged, false));
        all.extend(all_pairings(&wedged));
    }
    let direct: BTreeSet<Composition> = maximal_terms(alpha).into_iter().collect();
    let to_vecs =
        |s: &BTreeSet<Composition>| s.iter().map(|c| c.parts().to_vec()).collect::<Vec<_>>();
    MaximalTermCheck {
        alpha: alpha.parts().to_vec(),
        direct: to_vecs(&direct),
        greedy_left: to_vecs(&left),
        greedy_right: to_vecs(&right),
        all_groupings: to_vecs(&all),
        left_covers: direct.is_subset(&left),
        right_covers: direct.is_subset(&right),
        all_cover: direct.is_subset(&all),
        all_exact: direct == all,
    }
}

fn pair_ones(alpha: &Composition, from_left: bool) -> Composition {
    let mut out = Vec::new();
    let parts = alpha.parts();
    let mut i = 0;
    while i < parts.len() {
        if parts[i] != 1 {
            out.push(parts[i]);
            i += 1;
            continue;
        }
        let run = parts[i..].iter().take_while(|&&p| p == 1).count();
        let (pairs, single) = (run / 2, run % 2 == 1);
        if single && !from_left {
            out.push(1);
        }
        out.extend(std::iter::repeat_n(2, pairs));
        if single && from_left {
            out.push(1);
        }
        i += run;
    }
    Composition::from_parts_unchecked(out)
}

/// Every way to merge adjacent 1s into 2s so that no two unmerged 1s remain adjacent.
fn all_pairings(alpha: &Composition) -> Vec<Composition> {
    fn run_tilings(len: usize) -> Vec<Vec<usize>> {
        // blocks of size 1 or 2, never two 1-blocks side by side
        fn go(left: usize, prev_single: bool, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if left == 0 {
                out.push(acc.clone());
                return;
            }
            if left >= 2 {
                acc.push(2);
                go(left - 2, false, acc, out);
                acc.pop();
            }
            if !prev_single {
                acc.push(1);
                go(left - 1, true, acc, out);
                acc.pop();
            }
        }
        let mut out = Vec::new();
        go(len, false, &mut Vec::new(), &mut out);
        out
    }
    let parts = alpha.parts();
    let mut results: Vec<Vec<usize>> = vec![Vec::new()];
    let mut i = 0;
    while i < parts.len() {
        if parts[i] != 1 {
            for r in results.iter_mut() {
                r.push(parts[i]);
            }
            i += 1;
            continue;
        }
        let run = parts[i..].iter().take_while(|&&p| p == 1).count();
        let tilings = run_tilings(run);
        results = results
            .into_iter()
            .flat_map(|r| {
                tilings.iter().map(move |t| {
                    let mut r = r.clone();
                    r.extend_from_slice(t);
                    r
                })
            })
            .collect();
        i += run;
    }
    results
        .into_iter()
        .map(Composition::from_parts_unchecked)
        .collect()
}

/// A rational combination of `θ_α` over sqs compositions.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ThetaElement {
    terms: BTreeMap<Composition, Rational>,
}

impl ThetaElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn single(alpha: Composition) -> Result<Self> {
        let mut out = Self::zero();
        out.add_term(alpha, Rational::one())?;
        Ok(out)
    }

    pub fn from_terms<I>(terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Composition, Rational)>,
    {
        let mut out = Self::zero();
        for (a, c) in terms {
            out.add_term(a, c)?;
        }
        Ok(out)
    }

    pub fn add_term(&mut self, alpha: Composition, c: Rational) -> Result<()> {
        if !alpha.is_sqs() {
            return Err(Error::NotSqsIndex(alpha.to_string()));
        }
        if c.is_zero() {
            return Ok(());
        }
        let slot = self.terms.entry(alpha.clone()).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&alpha);
        }
        Ok(())
    }

    pub fn terms(&self) -> &BTreeMap<Composition, Rational> {
        &self.terms
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

    pub fn to_qsym(&self) -> QSymElement {
        QSymElement::from_terms(Basis::Theta, self.terms.clone())
    }

    pub fn to_m(&self) -> QSymElement {
        to_monomial(&self.to_qsym()).expect("θ expansion is total")
    }

    pub fn render(&self) -> String {
        render_sum(self.terms.iter().map(|(a, c)| (format!("θ[{a}]"), c)))
    }
}

impl fmt::Display for ThetaElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl TryFrom<&QSymElement> for ThetaElement {
    type Error = Error;

    fn try_from(f: &QSymElement) -> Result<Self> {
        if f.basis() != Basis::Theta && !f.is_zero() {
            return Err(Error::BasisMismatch(f.basis(), Basis::Theta));
        }
        ThetaElement::from_terms(f.terms().clone())
    }
}

/// `θ_α = θ_{[…, α_j − 1, 1, α_{j+1}, …]} + θ_{[…, α_j, 1, α_{j+1} − 1, …]}
/// − θ_{[…, α_j − 1, 1, 1, α_{j+1} − 1, …]}` for an internal peak between
/// parts `j` and `j + 1` (1-based).
pub fn relation_expand(alpha: &Composition, j: usize) -> Result<ThetaElement> {
    if !alpha.is_sqs() {
        return Err(Error::NotSqsIndex(alpha.to_string()));
    }
    if !alpha.internal_peak_positions().contains(&j) {
        return Err(Error::NotInternalPeak {
            alpha: alpha.to_string(),
            j,
        });
    }
    let parts = alpha.parts();
    let (head, tail) = (&parts[..j - 1], &parts[j + 1..]);
    let (x, y) = (parts[j - 1], parts[j]);
    let build = |middle: &[usize]| {
        let mut v = head.to_vec();
        v.extend_from_slice(middle);
        v.extend_from_slice(tail);
        Composition::from_parts_unchecked(v)
    };
    ThetaElement::from_terms([
        (build(&[x - 1, 1, y]), rat(1)),
        (build(&[x, 1, y - 1]), rat(1)),
        (build(&[x - 1, 1, 1, y - 1]), rat(-1)),
    ])
}

/// Rewrites at the leftmost internal peak until every index is internal-peak free.
pub fn reduce(f: &ThetaElement) -> ThetaElement {
    let mut done = ThetaElement::zero();
    let mut pending: BTreeMap<Composition, Rational> = f.terms.clone();
    while let Some((alpha, c)) = pending.pop_first() {
        if c.is_zero() {
            continue;
        }
        match alpha.internal_peak_positions().first() {
            None => done.add_term(alpha, c).expect("sqs index"),
            Some(&j) => {
                let rhs = relation_expand(&alpha, j).expect("leftmost internal peak");
                for (beta, v) in rhs.terms {
                    *pending.entry(beta).or_insert_with(Rational::zero) += &c * v;
                }
            }
        }
    }
    done
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Ambient {
    Pi,
    Xi,
}

impl Ambient {
    pub fn basis_indices(self, n: usize) -> Vec<Composition> {
        match self {
            Ambient::Pi => enumerate(n, Filter::Peak),
            Ambient::Xi => enumerate(n, Filter::SqsNoInternalPeak),
        }
    }
}

/// Coefficients `c_α` with `Σ c_α θ_α = f`, over peak indices (`Π`) or
/// internal-peak-free sqs indices (`Ξ`).
pub fn express_in_theta(f: &QSymElement, ambient: Ambient) -> Result<ThetaElement> {
    let m = to_monomial(f)?;
    if m.is_zero() {
        return Ok(ThetaElement::zero());
    }
    let n = m.homogeneous_degree().ok_or(Error::NotHomogeneous)?;
    let indices = ambient.basis_indices(n);
    let all = enumerate(n, Filter::All);
    let column = |e: &QSymElement| all.iter().map(|a| e.coeff(a)).collect::<Vec<_>>();
    let columns: Vec<Vec<Rational>> = indices.iter().map(|a| column(&theta_m(a))).collect();
    let x = linalg::solve(&columns, &column(&m)).ok_or(Error::NotInSubspace)?;
    ThetaElement::from_terms(indices.into_iter().zip(x))
}

pub fn fibonacci(n: usize) -> u128 {
    let (mut a, mut b) = (0u128, 1u128);
    for _ in 0..n {
        (a, b) = (b, a + b);
    }
    a
}

/// `π_n = π_{n-1} + π_{n-2} + π_{n-4}` seeded with `1, 1, 2, 4`.
pub fn pi_recurrence(n: usize) -> Result<u128> {
    if n == 0 {
        return Err(Error::ZeroDegreeRank);
    }
    let mut pi = vec![0u128, 1, 1, 2, 4];
    for k in 5..=n {
        pi.push(pi[k - 1] + pi[k - 2] + pi[k - 4]);
    }
    Ok(pi[n])
}

/// Binary words of length `n - 2` avoiding `010`, counted by final pair:
/// `a` ends in 00, `b` in 01, `c` in 10, `d` in 11. Degrees 1..=3 have no
/// final pair and are counted directly (1, 1, 2).
pub fn pi_words(n: usize) -> Result<u128> {
    match n {
        0 => Err(Error::ZeroDegreeRank),
        1 | 2 => Ok(1),
        3 => Ok(2),
        _ => {
            let (mut a, mut b, mut c, mut d) = (1u128, 1u128, 1u128, 1u128);
            for _ in 5..=n {
                (a, b, c, d) = (a + c, a + c, d, b + d);
            }
            Ok(a + b + c + d)
        }
    }
}

pub fn matrix_rank(n: usize, filter: Filter) -> usize {
    let rows: Vec<QSymElement> = enumerate(n, filter).iter().map(theta_m).collect();
    linalg::rank_of_elements(&rows)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankReport {
    pub n: usize,
    pub rank_recurrence: u128,
    pub rank_words: u128,
    pub rank_matrix: Option<usize>,
    pub agree: bool,
}

/// Rank of `Ξ^n` three ways; the matrix route only when `n <= matrix_cap`.
pub fn rank_pi(n: usize, matrix_cap: usize) -> Result<RankReport> {
    let rank_recurrence = pi_recurrence(n)?;
    let rank_words = pi_words(n)?;
    let rank_matrix = (n <= matrix_cap).then(|| matrix_rank(n, Filter::Sqs));
    let agree = rank_recurrence == rank_words
        && rank_matrix.is_none_or(|r| r as u128 == rank_recurrence);
    Ok(RankReport {
        n,
        rank_recurrence,
        rank_words,
        rank_matrix,
        agree,
    })
}

/// Number of peak compositions of `n`.
pub fn rank_peak(n: usize) -> usize {
    enumerate(n, Filter::Peak).len()
}
