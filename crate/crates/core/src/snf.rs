//! Smith normal form and determinant over the integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// Fraction-free Bareiss elimination.
pub fn determinant(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::from(1);
    }
    let mut a: Vec<Vec<BigInt>> = m.to_vec();
    let mut sign = 1i32;
    let mut prev = BigInt::from(1);
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    if sign < 0 {
        -det
    } else {
        det
    }
}

/// Diagonal of the Smith normal form, nonnegative, each entry dividing the
/// next, zeros last. Length = min(rows, cols).
pub fn smith_diagonal(m: &[Vec<BigInt>]) -> Vec<BigInt> {
    let square = m.iter().all(|r| r.len() == m.len());
    let modulus = if square && !m.is_empty() { determinant(m).abs() } else { BigInt::zero() };
    let mut diag = if modulus.is_zero() {
        eliminate(m, None)
    } else {
        // columns of m span a lattice containing |det|·Z^n, so entries may be
        // reduced mod |det| without changing the cokernel
        eliminate(m, Some(&modulus)).into_iter().map(|d| d.gcd(&modulus)).collect()
    };
    normalize(&mut diag);
    diag
}

/// Rewrites a diagonal into invariant-factor order without changing the
/// group it presents.
fn normalize(d: &mut [BigInt]) {
    for i in 0..d.len() {
        for j in i + 1..d.len() {
            let (g, l) = (d[i].gcd(&d[j]), d[i].lcm(&d[j]));
            if d[i].is_zero() {
                d.swap(i, j);
            } else if !d[j].is_zero() {
                d[i] = g;
                d[j] = l;
            }
        }
    }
}

#[allow(clippy::needless_range_loop)]
fn eliminate(m: &[Vec<BigInt>], modulus: Option<&BigInt>) -> Vec<BigInt> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let reduce = |x: BigInt| match modulus {
        Some(d) => x.mod_floor(d),
        None => x,
    };
    let mut a: Vec<Vec<BigInt>> = m.iter().map(|r| r.iter().cloned().map(reduce).collect()).collect();
    let mut diag = Vec::new();
    for t in 0..rows.min(cols) {
        // pivot: smallest nonzero absolute value in the remaining block
        let pivot = (t..rows)
            .flat_map(|i| (t..cols).map(move |j| (i, j)))
            .filter(|&(i, j)| !a[i][j].is_zero())
            .min_by(|&(i, j), &(k, l)| a[i][j].abs().cmp(&a[k][l].abs()));
        let Some((pi, pj)) = pivot else {
            diag.extend(std::iter::repeat_n(BigInt::zero(), rows.min(cols) - t));
            break;
        };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&a[t][t]);
                for j in t..cols {
                    let v = &a[i][j] - &q * &a[t][j];
                    a[i][j] = reduce(v);
                }
                if !a[i][t].is_zero() {
                    a.swap(t, i);
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&a[t][t]);
                for row in a.iter_mut().skip(t) {
                    let v = &row[j] - &q * &row[t];
                    row[j] = reduce(v);
                }
                if !a[t][j].is_zero() {
                    for row in a.iter_mut() {
                        row.swap(t, j);
                    }
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }
            // divisibility: fold any entry not divisible by the pivot into row t
            let bad = (t + 1..rows)
                .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| !(&a[i][j] % &a[t][t]).is_zero());
            match bad {
                Some((i, _)) => {
                    for j in t..cols {
                        let v = &a[t][j] + &a[i][j];
                        a[t][j] = reduce(v);
                    }
                }
                None => break,
            }
        }
        diag.push(a[t][t].abs());
    }
    diag
}
