//! Exact linear algebra over the rationals: rank and linear solve for
//! families of elements written in a common basis.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::composition::Composition;
use crate::qsym::{QSymElement, Rational};

/// Coordinate vectors of `elements` over the union of their supports, in
/// canonical composition order.
pub fn coordinate_matrix(elements: &[QSymElement]) -> (Vec<Composition>, Vec<Vec<Rational>>) {
    let mut columns: BTreeMap<Composition, usize> = BTreeMap::new();
    for e in elements {
        for alpha in e.terms().keys() {
            columns.entry(alpha.clone()).or_insert(0);
        }
    }
    for (i, slot) in columns.values_mut().enumerate() {
        *slot = i;
    }
    let rows = elements
        .iter()
        .map(|e| {
            let mut row = vec![Rational::zero(); columns.len()];
            for (alpha, c) in e.terms() {
                row[columns[alpha]] = c.clone();
            }
            row
        })
        .collect();
    (columns.into_keys().collect(), rows)
}

pub fn rank_of_elements(elements: &[QSymElement]) -> usize {
    rank(&coordinate_matrix(elements).1)
}

/// Rank by fraction-free elimination: each row is scaled to a primitive
/// integer vector, eliminations cross-multiply and re-normalize by content.
pub fn rank(rows: &[Vec<Rational>]) -> usize {
    let mut mat: Vec<Vec<BigInt>> = rows.iter().map(|r| integer_row(r)).collect();
    let cols = mat.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        if r == mat.len() {
            break;
        }
        let Some(p) = (r..mat.len())
            .filter(|&i| !mat[i][c].is_zero())
            .min_by_key(|&i| mat[i][c].abs())
        else {
            continue;
        };
        mat.swap(r, p);
        let (head, tail) = mat.split_at_mut(r + 1);
        let pivot_row = &head[r];
        for row in tail.iter_mut() {
            if row[c].is_zero() {
                continue;
            }
            let g = pivot_row[c].gcd(&row[c]);
            let mp = &row[c] / &g;
            let mr = &pivot_row[c] / &g;
            for j in c..cols {
                row[j] = &row[j] * &mr - &pivot_row[j] * &mp;
            }
            normalize(row);
        }
        r += 1;
    }
    r
}

fn integer_row(row: &[Rational]) -> Vec<BigInt> {
    let lcm = row
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let mut out: Vec<BigInt> = row
        .iter()
        .map(|x| x.numer() * (&lcm / x.denom()))
        .collect();
    normalize(&mut out);
    out
}

fn normalize(row: &mut [BigInt]) {
    let g = row.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in row.iter_mut() {
            *x = &*x / &g;
        }
    }
}

/// Solves `Σ_i x_i · columns[i] = target` by Gauss-Jordan elimination.
/// Free variables are set to zero; `None` if the system is inconsistent.
pub fn solve(columns: &[Vec<Rational>], target: &[Rational]) -> Option<Vec<Rational>> {
    let unknowns = columns.len();
    let dim = target.len();
    debug_assert!(columns.iter().all(|c| c.len() == dim));
    let mut aug: Vec<Vec<Rational>> = (0..dim)
        .map(|i| {
            let mut row: Vec<Rational> = columns.iter().map(|col| col[i].clone()).collect();
            row.push(target[i].clone());
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..unknowns {
        let Some(p) = (r..dim).find(|&i| !aug[i][c].is_zero()) else {
            continue;
        };
        aug.swap(r, p);
        let inv = Rational::one() / &aug[r][c];
        for x in aug[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..dim {
            if i != r && !aug[i][c].is_zero() {
                let factor = aug[i][c].clone();
                let pivot = aug[r].clone();
                for (x, p) in aug[i][c..].iter_mut().zip(&pivot[c..]) {
                    *x -= &factor * p;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == dim {
            break;
        }
    }
    if aug[r..].iter().any(|row| !row[unknowns].is_zero()) {
        return None;
    }
    let mut x = vec![Rational::zero(); unknowns];
    for (row, &c) in pivots.iter().enumerate() {
        x[c] = aug[row][unknowns].clone();
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qsym::rat;

    fn rows(m: &[&[i64]]) -> Vec<Vec<Rational>> {
        m.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect()
    }

    #[test]
    fn rank_small() {
        assert_eq!(rank(&rows(&[&[1, 2], &[2, 4]])), 1);
        assert_eq!(rank(&rows(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]])), 2);
        assert_eq!(rank(&rows(&[&[0, 0], &[0, 0]])), 0);
        assert_eq!(rank(&rows(&[&[0, 1], &[1, 0], &[1, 1]])), 2);
        assert_eq!(rank(&[]), 0);
        let half = vec![vec![Rational::new(1.into(), 2.into()), rat(1)], vec![rat(1), rat(2)]];
        assert_eq!(rank(&half), 1);
    }

    #[test]
    fn solve_small() {
        let cols = rows(&[&[1, 0, 1], &[0, 1, 1]]);
        let x = solve(&cols, &[rat(2), rat(3), rat(5)]).unwrap();
        assert_eq!(x, vec![rat(2), rat(3)]);
        assert!(solve(&cols, &[rat(2), rat(3), rat(4)]).is_none());
    }
}
