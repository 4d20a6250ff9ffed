//! Gaussian elimination over a prime field `F_p`.

fn inv_mod(x: u64, p: u64) -> u64 {
    let mut result = 1u64;
    let mut base = x % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    result
}

/// Reduces `rows` in place to reduced row echelon form and returns the pivot columns.
/// Zero rows are removed.
pub fn rref(rows: &mut Vec<Vec<u64>>, p: u64) -> Vec<usize> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(k) = (r..rows.len()).find(|&k| !rows[k][c].is_multiple_of(p)) else { continue };
        rows.swap(r, k);
        let inv = inv_mod(rows[r][c], p);
        for v in rows[r].iter_mut() {
            *v = *v * inv % p;
        }
        let pivot_row = rows[r].clone();
        for (k, row) in rows.iter_mut().enumerate() {
            if k == r || row[c] == 0 {
                continue;
            }
            let f = row[c];
            for (v, &pv) in row.iter_mut().zip(&pivot_row) {
                *v = (*v + (p - f) * pv) % p;
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

/// A basis (in reduced echelon form) of the span of `vectors`.
pub fn basis(vectors: &[Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    let mut rows = vectors.to_vec();
    rref(&mut rows, p);
    rows
}

/// Finds `x` with `sum_j x_j * columns[j] = target`, if one exists.
pub fn solve(columns: &[Vec<u64>], target: &[u64], p: u64) -> Option<Vec<u64>> {
    let n = columns.len();
    let m = target.len();
    // augmented system: one row per coordinate
    let mut rows: Vec<Vec<u64>> = (0..m)
        .map(|i| {
            let mut row: Vec<u64> = columns.iter().map(|c| c[i] % p).collect();
            row.push(target[i] % p);
            row
        })
        .collect();
    let pivots = rref(&mut rows, p);
    if pivots.last() == Some(&n) {
        return None;
    }
    let mut x = vec![0u64; n];
    for (row, &c) in rows.iter().zip(&pivots) {
        x[c] = row[n];
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solves_small_system() {
        // columns (1,1,0), (0,1,1) over F_3; target (2,0,1) = 2*c0 + 1*c1
        let cols = vec![vec![1, 1, 0], vec![0, 1, 1]];
        assert_eq!(solve(&cols, &[2, 0, 1], 3), Some(vec![2, 1]));
        assert_eq!(solve(&cols, &[1, 0, 0], 3), None);
    }

    #[test]
    fn basis_drops_dependent_rows() {
        let b = basis(&[vec![1, 1, 0], vec![0, 1, 1], vec![1, 0, 1]], 2);
        assert_eq!(b.len(), 2);
        let b = basis(&[vec![1, 1, 0], vec![0, 1, 1], vec![1, 0, 1]], 3);
        assert_eq!(b.len(), 3);
    }
}
