//! Integral `±1` eigenvectors of an integer involution matrix.

use num_integer::Integer;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EigenVector {
    pub v: Vec<i64>,
    pub eps: i64,
}

/// Basis of the `+1` eigenspace (columns of `I + A`) followed by the `−1`
/// eigenspace (columns of `I − A`), echelonized, primitive, first nonzero
/// entry positive.
pub fn pm_eigenbasis(a: &[Vec<i64>]) -> Vec<EigenVector> {
    let n = a.len();
    let mut out = Vec::new();
    for eps in [1i64, -1] {
        let cols: Vec<Vec<i64>> = (0..n)
            .map(|t| (0..n).map(|s| i64::from(s == t) + eps * a[s][t]).collect())
            .collect();
        for v in row_echelon(cols) {
            out.push(EigenVector { v, eps });
        }
    }
    out
}

/// Integer row echelon form of the lattice spanned by `rows`, keeping
/// nonzero rows only, each made primitive.
fn row_echelon(mut rows: Vec<Vec<i64>>) -> Vec<Vec<i64>> {
    let n = rows.first().map_or(0, |r| r.len());
    let mut pivot_row = 0;
    for col in 0..n {
        if pivot_row >= rows.len() {
            break;
        }
        // Euclid on the column until a single nonzero entry remains at or below the pivot
        loop {
            let nz: Vec<usize> = (pivot_row..rows.len()).filter(|&r| rows[r][col] != 0).collect();
            if nz.is_empty() {
                break;
            }
            let best = *nz.iter().min_by_key(|&&r| rows[r][col].abs()).unwrap();
            rows.swap(pivot_row, best);
            let p = rows[pivot_row][col];
            let mut done = true;
            for r in pivot_row + 1..rows.len() {
                let q = Integer::div_floor(&rows[r][col], &p);
                if q != 0 {
                    let pr = rows[pivot_row].clone();
                    for (x, y) in rows[r].iter_mut().zip(pr) {
                        *x -= q * y;
                    }
                }
                if rows[r][col] != 0 {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if rows[pivot_row][col] != 0 {
            pivot_row += 1;
        }
    }
    rows.truncate(pivot_row);
    for r in rows.iter_mut() {
        let g = r.iter().fold(0i64, |g, &x| g.gcd(&x));
        let lead = r.iter().find(|&&x| x != 0).copied().unwrap_or(1);
        let s = if lead < 0 { -g } else { g };
        for x in r.iter_mut() {
            *x /= s;
        }
    }
    rows
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_and_negation() {
        let i = vec![vec![1, 0], vec![0, 1]];
        let e = pm_eigenbasis(&i);
        assert_eq!(e, vec![EigenVector { v: vec![1, 0], eps: 1 }, EigenVector { v: vec![0, 1], eps: 1 }]);
        let m = vec![vec![-1, 0], vec![0, -1]];
        let e = pm_eigenbasis(&m);
        assert!(e.iter().all(|x| x.eps == -1));
        assert_eq!(e[0].v, vec![1, 0]);
        assert_eq!(e[1].v, vec![0, 1]);
    }

    #[test]
    fn swap_matrix() {
        let s = vec![vec![0, 1], vec![1, 0]];
        let e = pm_eigenbasis(&s);
        assert_eq!(e, vec![EigenVector { v: vec![1, 1], eps: 1 }, EigenVector { v: vec![1, -1], eps: -1 }]);
    }

    #[test]
    fn non_diagonal_involution() {
        // A = [[1, 2], [0, -1]]
        let a = vec![vec![1, 2], vec![0, -1]];
        let e = pm_eigenbasis(&a);
        assert_eq!(e.len(), 2);
        for ev in &e {
            let av: Vec<i64> = (0..2).map(|s| (0..2).map(|t| a[s][t] * ev.v[t]).sum()).collect();
            let ev_scaled: Vec<i64> = ev.v.iter().map(|x| x * ev.eps).collect();
            assert_eq!(av, ev_scaled);
        }
    }
}
