//! Smith normal form over the integers, specialised to the one job it has
//! here: decomposing a finite abelian group `Z^k / L` into cyclic factors.

use alloc::vec;
use alloc::vec::Vec;

/// Result of diagonalising an integer matrix `H` as `P·H·Q = D`.
///
/// Only the column transform is tracked; the row transform is irrelevant for
/// describing the quotient `Z^k / rowspace(H)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm {
    /// Nonnegative diagonal, each entry dividing the next (zeros last).
    pub diagonal: Vec<i128>,
    /// Column transform `Q`, unimodular, `k×k`.
    pub q: Vec<Vec<i128>>,
    /// `Q⁻¹`.
    pub q_inv: Vec<Vec<i128>>,
}

/// Diagonalise `rows` (each of length `ncols`).
pub fn smith_form(rows: &[Vec<i128>], ncols: usize) -> SmithForm {
    let mut a: Vec<Vec<i128>> = rows.to_vec();
    let nrows = a.len();
    let mut q = identity(ncols);
    let mut q_inv = identity(ncols);
    let diag_len = nrows.min(ncols);

    let mut t = 0;
    while t < diag_len {
        // Pivot: smallest nonzero absolute value in the trailing block.
        let Some((pi, pj)) = min_nonzero(&a, t) else { break };
        a.swap(t, pi);
        if pj != t {
            for row in a.iter_mut() {
                row.swap(t, pj);
            }
            for row in q.iter_mut() {
                row.swap(t, pj);
            }
            q_inv.swap(t, pj);
        }

        let mut clean = true;
        for i in t + 1..nrows {
            if a[i][t] != 0 {
                let f = a[i][t].div_euclid(a[t][t]);
                let pivot_row = a[t].clone();
                for (x, p) in a[i].iter_mut().zip(&pivot_row) {
                    *x -= f * p;
                }
                if a[i][t] != 0 {
                    clean = false;
                }
            }
        }
        for j in t + 1..ncols {
            if a[t][j] != 0 {
                let f = a[t][j].div_euclid(a[t][t]);
                col_axpy(&mut a, j, t, -f);
                col_axpy(&mut q, j, t, -f);
                // inverse op on Q⁻¹: row_t += f·row_j
                let rj = q_inv[j].clone();
                for (x, y) in q_inv[t].iter_mut().zip(&rj) {
                    *x += f * y;
                }
                if a[t][j] != 0 {
                    clean = false;
                }
            }
        }
        if !clean {
            continue;
        }

        // Enforce the divisibility chain.
        let p = a[t][t];
        let bad_row = (t + 1..nrows).find(|&i| (t + 1..ncols).any(|j| a[i][j] % p != 0));
        if let Some(i) = bad_row {
            let ri = a[i].clone();
            for (x, y) in a[t].iter_mut().zip(&ri) {
                *x += y;
            }
            continue;
        }

        if a[t][t] < 0 {
            for x in a[t].iter_mut() {
                *x = -*x;
            }
        }
        t += 1;
    }

    let mut diagonal = vec![0; ncols];
    for (i, d) in diagonal.iter_mut().enumerate().take(diag_len) {
        *d = a[i][i];
    }
    SmithForm { diagonal, q, q_inv }
}

/// Cyclic decomposition of `Z^k / L` where `L` contains `orders[i]·e_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclicDecomposition {
    /// Orders of the nontrivial cyclic factors, each dividing the next.
    pub orders: Vec<u64>,
    /// Row `j`: coordinates of the old generator `e_j` in the new factors.
    pub project: Vec<Vec<u64>>,
    /// Row `i`: an old-coordinate lift of new generator `i`.
    pub lift: Vec<Vec<i128>>,
}

/// Decompose `(⊕ Z/orders[i]) / ⟨relations⟩`.
///
/// The relation lattice is first brought to a triangular basis with entries
/// reduced modulo `lcm(orders)`; the lattice contains every `lcm·e_i`, so
/// those vectors are appended before diagonalising.
pub fn relation_quotient(orders: &[u64], relations: &[Vec<i64>]) -> CyclicDecomposition {
    let k = orders.len();
    let modulus = orders.iter().fold(1i128, |l, &d| lcm(l, d as i128)).max(1);

    let mut basis: Vec<Option<Vec<i128>>> = vec![None; k];
    let mut insert = |v: Vec<i128>| {
        let mut v: Vec<i128> = v.into_iter().map(|x| x.rem_euclid(modulus)).collect();
        for c in 0..k {
            if v[c] == 0 {
                continue;
            }
            match basis[c].take() {
                None => {
                    basis[c] = Some(v);
                    return;
                }
                Some(b) => {
                    let (g, x, y) = ext_gcd(b[c], v[c]);
                    let (bc, vc) = (b[c] / g, v[c] / g);
                    let nb: Vec<i128> = b.iter().zip(&v).map(|(p, r)| (x * p + y * r).rem_euclid(modulus)).collect();
                    let nv: Vec<i128> = b.iter().zip(&v).map(|(p, r)| (vc * p - bc * r).rem_euclid(modulus)).collect();
                    basis[c] = Some(nb);
                    v = nv;
                }
            }
        }
    };
    for (i, &d) in orders.iter().enumerate() {
        let mut e = vec![0i128; k];
        e[i] = d as i128;
        insert(e);
    }
    for r in relations {
        insert(r.iter().map(|&x| x as i128).collect());
    }
    // reduced entries are only meaningful modulo these
    let mut rows: Vec<Vec<i128>> = basis.into_iter().flatten().collect();
    for i in 0..k {
        let mut e = vec![0i128; k];
        e[i] = modulus;
        rows.push(e);
    }
    let snf = smith_form(&rows, k);

    let keep: Vec<usize> = (0..k).filter(|&i| snf.diagonal[i] != 1).collect();
    let factor_orders: Vec<u64> = keep.iter().map(|&i| snf.diagonal[i] as u64).collect();
    let project =
        (0..k).map(|j| keep.iter().zip(&factor_orders).map(|(&i, &s)| snf.q[j][i].rem_euclid(s as i128) as u64).collect()).collect();
    let lift = keep.iter().map(|&i| snf.q_inv[i].clone()).collect();
    CyclicDecomposition { orders: factor_orders, project, lift }
}

fn identity(n: usize) -> Vec<Vec<i128>> {
    (0..n).map(|i| (0..n).map(|j| i128::from(i == j)).collect()).collect()
}

fn min_nonzero(a: &[Vec<i128>], t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for (i, row) in a.iter().enumerate().skip(t) {
        for (j, &x) in row.iter().enumerate().skip(t) {
            if x != 0 && best.is_none_or(|(bi, bj)| x.abs() < a[bi][bj].abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

/// `col_dst += f · col_src`
fn col_axpy(a: &mut [Vec<i128>], dst: usize, src: usize, f: i128) {
    for row in a.iter_mut() {
        row[dst] += f * row[src];
    }
}

pub(crate) fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    let (mut old_r, mut r) = (a, b);
    let (mut old_s, mut s) = (1i128, 0i128);
    let (mut old_t, mut t) = (0i128, 1i128);
    while r != 0 {
        let quo = old_r.div_euclid(r);
        (old_r, r) = (r, old_r - quo * r);
        (old_s, s) = (s, old_s - quo * s);
        (old_t, t) = (t, old_t - quo * t);
    }
    if old_r < 0 {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

fn gcd(a: i128, b: i128) -> i128 {
    ext_gcd(a, b).0
}

fn lcm(a: i128, b: i128) -> i128 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat_mul(a: &[Vec<i128>], b: &[Vec<i128>]) -> Vec<Vec<i128>> {
        let n = b[0].len();
        a.iter().map(|row| (0..n).map(|j| row.iter().zip(b).map(|(x, br)| x * br[j]).sum()).collect()).collect()
    }

    // determinantal divisors: gcd of all i×i minors
    fn det(m: &[Vec<i128>]) -> i128 {
        if m.is_empty() {
            return 1;
        }
        (0..m.len())
            .map(|j| {
                let minor: Vec<Vec<i128>> =
                    m[1..].iter().map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &x)| x).collect()).collect();
                let sign = if j % 2 == 0 { 1 } else { -1 };
                sign * m[0][j] * det(&minor)
            })
            .sum()
    }

    fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
        if k == 0 {
            return vec![vec![]];
        }
        if n < k {
            return vec![];
        }
        let mut out = subsets(n - 1, k);
        for mut s in subsets(n - 1, k - 1) {
            s.push(n - 1);
            out.push(s);
        }
        out
    }

    fn invariant_factors_oracle(m: &[Vec<i128>], ncols: usize) -> Vec<i128> {
        let r = m.len().min(ncols);
        let mut divisors = vec![1i128];
        for k in 1..=r {
            let mut g = 0;
            for rs in subsets(m.len(), k) {
                for cs in subsets(ncols, k) {
                    let minor: Vec<Vec<i128>> = rs.iter().map(|&i| cs.iter().map(|&j| m[i][j]).collect()).collect();
                    g = gcd(g, det(&minor));
                }
            }
            divisors.push(g);
        }
        let mut out: Vec<i128> = (1..=r).map(|k| if divisors[k] == 0 { 0 } else { divisors[k] / divisors[k - 1] }).collect();
        out.resize(ncols, 0);
        out
    }

    #[test]
    fn diagonal_matches_determinantal_divisors() {
        let cases: Vec<Vec<Vec<i128>>> = vec![
            vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]],
            vec![vec![4, 0], vec![0, 6]],
            vec![vec![0, 0], vec![0, 0]],
            vec![vec![3, 9], vec![6, 12], vec![1, 0]],
            vec![vec![8, 0, 0], vec![0, 2, 0], vec![4, 2, 0]],
        ];
        for m in cases {
            let n = m[0].len();
            let s = smith_form(&m, n);
            assert_eq!(s.diagonal, invariant_factors_oracle(&m, n), "{m:?}");
            assert_eq!(mat_mul(&s.q, &s.q_inv), identity(n));
        }
    }

    #[test]
    fn quotient_of_z4_by_two() {
        let d = relation_quotient(&[4], &[vec![2]]);
        assert_eq!(d.orders, vec![2]);
        assert_eq!(d.project, vec![vec![1]]);
    }

    #[test]
    fn reorders_factors_into_divisibility_chain() {
        let d = relation_quotient(&[4, 2], &[]);
        assert_eq!(d.orders, vec![2, 4]);
        let d = relation_quotient(&[2, 3], &[]);
        assert_eq!(d.orders, vec![6]);
    }

    #[test]
    fn full_relations_give_trivial_group() {
        let d = relation_quotient(&[4, 2], &[vec![1, 0], vec![0, 1]]);
        assert!(d.orders.is_empty());
        assert_eq!(d.project, vec![Vec::<u64>::new(), vec![]]);
    }

    #[test]
    fn projection_of_lift_is_identity() {
        let d = relation_quotient(&[8, 4, 2], &[vec![2, 2, 0], vec![0, 2, 1]]);
        let total: u64 = d.orders.iter().product();
        assert_eq!(total, 64 / 8);
        for (i, lift) in d.lift.iter().enumerate() {
            for (f, &s) in d.orders.iter().enumerate() {
                let coord: i128 = lift.iter().zip(&d.project).map(|(&c, p)| c * p[f] as i128).sum();
                assert_eq!(coord.rem_euclid(s as i128), i128::from(i == f));
            }
        }
    }
}
