//! Row-style Hermite normal form over the integers, and its rational
//! extension used to canonicalize lattices.
//!
//! Rows generate a `Z`-module. The normal form keeps the nonzero rows of an
//! echelon basis: pivots strictly move right, every pivot is positive, and
//! entries above a pivot are reduced into `[0, pivot)`. Two generator sets
//! span the same module iff their normal forms are equal.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Hermite normal form of the module spanned by `rows`. Zero rows are dropped,
/// so the number of returned rows is the rank.
pub fn hnf(mut rows: Vec<Vec<BigInt>>) -> Vec<Vec<BigInt>> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        loop {
            let pivot = (r..rows.len())
                .filter(|&i| !rows[i][c].is_zero())
                .min_by(|&a, &b| rows[a][c].abs().cmp(&rows[b][c].abs()));
            let Some(p) = pivot else { break };
            rows.swap(r, p);
            let mut done = true;
            for i in r + 1..rows.len() {
                if rows[i][c].is_zero() {
                    continue;
                }
                let q = rows[i][c].div_floor(&rows[r][c]);
                sub_multiple(&mut rows, i, r, &q);
                if !rows[i][c].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if r >= rows.len() || rows[r][c].is_zero() {
            continue;
        }
        if rows[r][c].is_negative() {
            for x in rows[r].iter_mut() {
                *x = -std::mem::take(x);
            }
        }
        for i in 0..r {
            let q = rows[i][c].div_floor(&rows[r][c]);
            if !q.is_zero() {
                sub_multiple(&mut rows, i, r, &q);
            }
        }
        r += 1;
    }
    rows.truncate(r);
    rows.retain(|row| row.iter().any(|x| !x.is_zero()));
    rows
}

fn sub_multiple(rows: &mut [Vec<BigInt>], target: usize, source: usize, q: &BigInt) {
    let (t, s) = if target < source {
        let (a, b) = rows.split_at_mut(source);
        (&mut a[target], &b[0])
    } else {
        let (a, b) = rows.split_at_mut(target);
        (&mut b[0], &a[source])
    };
    for (x, y) in t.iter_mut().zip(s.iter()) {
        *x -= q * y;
    }
}

/// Least common multiple of all denominators.
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a BigRational>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()))
}

/// Hermite normal form of a `Z`-module of rational row vectors. Scaling by a
/// common denominator commutes with the normal form, so the result does not
/// depend on which denominator is used.
pub fn rational_hnf(rows: &[Vec<BigRational>]) -> Vec<Vec<BigRational>> {
    let d = common_denominator(rows.iter().flatten());
    let int_rows = rows
        .iter()
        .map(|row| {
            row.iter()
                .map(|q| (q * BigRational::from_integer(d.clone())).to_integer())
                .collect()
        })
        .collect();
    hnf(int_rows)
        .into_iter()
        .map(|row| {
            row.into_iter()
                .map(|x| BigRational::new(x, d.clone()))
                .collect()
        })
        .collect()
}

/// Extended Euclid: `(g, x, y)` with `a·x + b·y = g = gcd(a, b) ≥ 0`.
pub fn ext_gcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let e = a.extended_gcd(b);
    if e.gcd.is_negative() {
        (-e.gcd, -e.x, -e.y)
    } else {
        (e.gcd, e.x, e.y)
    }
}
