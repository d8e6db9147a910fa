//! Small dense integer matrices: row Hermite form (optionally with the
//! unimodular transform) and Smith form with both column transforms.
//! Entries are `i128`; the matrices here have at most a handful of rows.

pub type Row = Vec<i128>;

fn sub_mul(rows: &mut [Row], dst: usize, src: usize, q: i128) {
    if q == 0 {
        return;
    }
    let (a, b) = if dst < src {
        let (x, y) = rows.split_at_mut(src);
        (&mut x[dst], &y[0])
    } else {
        let (x, y) = rows.split_at_mut(dst);
        (&mut y[0], &x[src])
    };
    for (x, y) in a.iter_mut().zip(b.iter()) {
        *x -= q * y;
    }
}

/// Row-style Hermite normal form in place, tracking `u` so that `u·M = H`
/// holds throughout. Pivots end up positive and entries above each pivot lie
/// in `[0, pivot)`. Zero rows sink to the bottom. Returns the pivot columns.
pub fn echelon(m: &mut [Row], mut u: Option<&mut [Row]>) -> Vec<usize> {
    let nrows = m.len();
    let ncols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        if r == nrows {
            break;
        }
        loop {
            let best = (r..nrows)
                .filter(|&i| m[i][col] != 0)
                .min_by_key(|&i| m[i][col].unsigned_abs());
            let Some(best) = best else { break };
            m.swap(r, best);
            if let Some(u) = u.as_deref_mut() {
                u.swap(r, best);
            }
            let mut clean = true;
            for i in r + 1..nrows {
                if m[i][col] != 0 {
                    let q = m[i][col] / m[r][col];
                    sub_mul(m, i, r, q);
                    if let Some(u) = u.as_deref_mut() {
                        sub_mul(u, i, r, q);
                    }
                    if m[i][col] != 0 {
                        clean = false;
                    }
                }
            }
            if clean {
                break;
            }
        }
        if m[r][col] == 0 {
            continue;
        }
        if m[r][col] < 0 {
            m[r].iter_mut().for_each(|x| *x = -*x);
            if let Some(u) = u.as_deref_mut() {
                u[r].iter_mut().for_each(|x| *x = -*x);
            }
        }
        for i in 0..r {
            let q = m[i][col].div_euclid(m[r][col]);
            sub_mul(m, i, r, q);
            if let Some(u) = u.as_deref_mut() {
                sub_mul(u, i, r, q);
            }
        }
        pivots.push(col);
        r += 1;
    }
    pivots
}

/// Canonical Hermite basis of the row lattice; zero rows dropped.
pub fn hnf(mut rows: Vec<Row>) -> Vec<Row> {
    echelon(&mut rows, None);
    rows.retain(|r| r.iter().any(|&x| x != 0));
    rows
}

pub fn identity(n: usize) -> Vec<Row> {
    (0..n)
        .map(|i| (0..n).map(|j| i128::from(i == j)).collect())
        .collect()
}

/// Smith form `U·A·V = diag(d)` with `d` a divisibility chain of
/// nonnegative entries. Only `V` and `V⁻¹` are kept.
#[derive(Debug, Clone)]
pub struct Smith {
    pub diag: Vec<i128>,
    pub v: Vec<Row>,
    pub v_inv: Vec<Row>,
}

pub fn smith(a: &[Row]) -> Smith {
    let mut a: Vec<Row> = a.to_vec();
    let n = a.len();
    let m = a.first().map_or(0, Vec::len);
    let mut v = identity(m);
    let mut v_inv = identity(m);

    // Column operation col_j -= q·col_t, mirrored as row_t += q·row_j on V⁻¹.
    fn col_sub(a: &mut [Row], v: &mut [Row], v_inv: &mut [Row], j: usize, t: usize, q: i128) {
        if q == 0 {
            return;
        }
        for row in a.iter_mut().chain(v.iter_mut()) {
            row[j] -= q * row[t];
        }
        let src = v_inv[j].clone();
        for (x, y) in v_inv[t].iter_mut().zip(src) {
            *x += q * y;
        }
    }
    fn col_swap(a: &mut [Row], v: &mut [Row], v_inv: &mut [Row], i: usize, j: usize) {
        if i == j {
            return;
        }
        for row in a.iter_mut().chain(v.iter_mut()) {
            row.swap(i, j);
        }
        v_inv.swap(i, j);
    }

    let k = n.min(m);
    for t in 0..k {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..n {
                for j in t..m {
                    if a[i][j] != 0
                        && best.is_none_or(|(bi, bj)| {
                            a[i][j].unsigned_abs() < a[bi][bj].unsigned_abs()
                        })
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else { break };
            a.swap(t, bi);
            col_swap(&mut a, &mut v, &mut v_inv, t, bj);
            let mut clean = true;
            for i in t + 1..n {
                let q = a[i][t] / a[t][t];
                sub_mul(&mut a, i, t, q);
                if a[i][t] != 0 {
                    clean = false;
                }
            }
            for j in t + 1..m {
                let q = a[t][j] / a[t][t];
                col_sub(&mut a, &mut v, &mut v_inv, j, t, q);
                if a[t][j] != 0 {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            let p = a[t][t];
            let bad = (t + 1..n).find(|&i| (t + 1..m).any(|j| a[i][j] % p != 0));
            match bad {
                Some(i) => {
                    let src = a[i].clone();
                    for (x, y) in a[t].iter_mut().zip(src) {
                        *x += y;
                    }
                }
                None => break,
            }
        }
        if a[t][t] < 0 {
            a[t].iter_mut().for_each(|x| *x = -*x);
        }
    }
    Smith {
        diag: (0..k).map(|t| a[t][t]).collect(),
        v,
        v_inv,
    }
}

pub fn mat_mul(a: &[Row], b: &[Row]) -> Vec<Row> {
    let m = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..m)
                .map(|j| row.iter().zip(b).map(|(&x, br)| x * br[j]).sum())
                .collect()
        })
        .collect()
}

pub fn vec_mat(x: &[i128], b: &[Row]) -> Row {
    let m = b.first().map_or(0, Vec::len);
    (0..m)
        .map(|j| x.iter().zip(b).map(|(&xi, br)| xi * br[j]).sum())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(v: &[i128]) -> Row {
        v.to_vec()
    }

    #[test]
    fn hermite_is_canonical() {
        let a = hnf(vec![r(&[4, 6]), r(&[6, 9]), r(&[0, 3])]);
        let b = hnf(vec![r(&[2, 0]), r(&[0, 3])]);
        assert_eq!(a, hnf(vec![r(&[2, 3]), r(&[0, 3])]));
        assert_eq!(b, vec![r(&[2, 0]), r(&[0, 3])]);
    }

    #[test]
    fn transform_tracks_rows() {
        let orig = vec![r(&[2, 4]), r(&[3, 6]), r(&[1, 1])];
        let mut m = orig.clone();
        let mut u = identity(3);
        echelon(&mut m, Some(&mut u));
        assert_eq!(mat_mul(&u, &orig), m);
        assert!(m[2].iter().all(|&x| x == 0));
    }

    #[test]
    fn smith_invariants() {
        let a = vec![r(&[2, 4, 4]), r(&[-6, 6, 12]), r(&[10, -4, -16])];
        let s = smith(&a);
        assert_eq!(s.diag, vec![2, 6, 12]);
        assert_eq!(mat_mul(&s.v, &s.v_inv), identity(3));
        let b = vec![r(&[6, 0]), r(&[0, 4])];
        assert_eq!(smith(&b).diag, vec![2, 12]);
    }
}
