//! Exact rank of small integer matrices.

use alloc::vec::Vec;

/// Rank over `ℚ` of the matrix whose rows are `rows`.
///
/// Fraction-free Gaussian elimination in `i128`; each reduced row is divided
/// by the gcd of its entries to keep them small. Returns `None` if the rows
/// have different lengths or an intermediate value overflows.
pub fn rational_rank(rows: &[Vec<i64>]) -> Option<usize> {
    let width = rows.first().map_or(0, Vec::len);
    if rows.iter().any(|r| r.len() != width) {
        return None;
    }
    let mut m: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| i128::from(x)).collect())
        .collect();

    let mut rank = 0;
    for col in 0..width {
        let Some(pivot) = (rank..m.len()).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(rank, pivot);
        let p = m[rank][col];
        let (head, tail) = m.split_at_mut(rank + 1);
        let pivot_row = &head[rank];
        for row in tail.iter_mut() {
            let f = row[col];
            if f == 0 {
                continue;
            }
            for (x, &pv) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                *x = x.checked_mul(p)?.checked_sub(f.checked_mul(pv)?)?;
            }
            let g = row.iter().fold(0i128, |g, &x| gcd(g, x));
            if g > 1 {
                row.iter_mut().for_each(|x| *x /= g);
            }
        }
        rank += 1;
    }
    Some(rank)
}

fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.unsigned_abs(), b.unsigned_abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a as i128
}
