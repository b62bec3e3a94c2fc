//! Deliberately naive oracles and the golden fixtures derived from them.
//!
//! Everything here is written the slow, obvious way — textbook loops over
//! `u8` tables, full-group scans, union-find orbits — and stays separate
//! from the optimized library paths so the two cannot share a bug. The
//! fixtures file freezes every value these oracles derive; regeneration
//! must reproduce it bit for bit.

#![forbid(unsafe_code)]

use spincover_core::gf2::{GF2Mat, GF2Vec};
use spincover_core::{Error, Result};

pub mod fixtures;

/// Guard for full matrix-space scans: 2^(dim^2) candidates.
pub const MATRIX_SCAN_GUARD: usize = 4;

fn to_table(m: &GF2Mat) -> Vec<Vec<u8>> {
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| m.get(i, j)).collect())
        .collect()
}

fn from_table(t: &[Vec<u8>]) -> GF2Mat {
    let mut m = GF2Mat::zeros(t.len(), t.first().map_or(0, Vec::len));
    for (i, row) in t.iter().enumerate() {
        for (j, &v) in row.iter().enumerate() {
            m.set(i, j, v);
        }
    }
    m
}

/// Naive triple-loop product.
#[must_use]
#[allow(clippy::needless_range_loop)] // textbook index loops are the point here
pub fn naive_mul(a: &GF2Mat, b: &GF2Mat) -> GF2Mat {
    assert_eq!(a.cols(), b.rows());
    let (ta, tb) = (to_table(a), to_table(b));
    let mut out = vec![vec![0u8; b.cols()]; a.rows()];
    for i in 0..a.rows() {
        for j in 0..b.cols() {
            let mut acc = 0u8;
            for (k, tb_row) in tb.iter().enumerate() {
                acc ^= ta[i][k] & tb_row[j];
            }
            out[i][j] = acc;
        }
    }
    from_table(&out)
}

/// Textbook elimination rank.
#[must_use]
#[allow(clippy::needless_range_loop)] // textbook index loops are the point here
pub fn naive_rank(m: &GF2Mat) -> usize {
    let mut t = to_table(m);
    let (rows, cols) = (m.rows(), m.cols());
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&i| t[i][c] == 1) else {
            continue;
        };
        t.swap(rank, p);
        for i in 0..rows {
            if i != rank && t[i][c] == 1 {
                for j in 0..cols {
                    t[i][j] ^= t[rank][j];
                }
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

/// Dot-product isometry: `M^t M = I` entry by entry, plus full rank.
#[must_use]
pub fn is_orthogonal_dot(m: &GF2Mat) -> bool {
    if !m.is_square() {
        return false;
    }
    let n = m.rows();
    let t = to_table(m);
    for i in 0..n {
        for j in 0..n {
            let mut acc = 0u8;
            for t_row in &t {
                acc ^= t_row[i] & t_row[j];
            }
            if acc != u8::from(i == j) {
                return false;
            }
        }
    }
    naive_rank(m) == n
}

/// Pairing-basis symplectic isometry: `M^t K M = K` with `K` the
/// consecutive-pair Gram matrix.
#[must_use]
pub fn is_symplectic_pairs(m: &GF2Mat) -> bool {
    if !m.is_square() || !m.rows().is_multiple_of(2) {
        return false;
    }
    let n = m.rows();
    let g = n / 2;
    let t = to_table(m);
    let k_pair = |x: &[u8], y: &[u8]| -> u8 {
        let mut acc = 0u8;
        for p in 0..g {
            acc ^= (x[2 * p] & y[2 * p + 1]) ^ (x[2 * p + 1] & y[2 * p]);
        }
        acc
    };
    let col = |j: usize| -> Vec<u8> { (0..n).map(|i| t[i][j]).collect() };
    for i in 0..n {
        for j in 0..n {
            let same_pair = i / 2 == j / 2 && i != j;
            if k_pair(&col(i), &col(j)) != u8::from(same_pair) {
                return false;
            }
        }
    }
    naive_rank(m) == n
}

/// Every dim x dim matrix satisfying the predicate, by full scan of all
/// 2^(dim^2) candidates. Guarded.
pub fn enumerate_matrices(
    dim: usize,
    predicate: impl Fn(&GF2Mat) -> bool,
) -> Result<Vec<GF2Mat>> {
    if dim > MATRIX_SCAN_GUARD {
        return Err(Error::TooLarge {
            dim,
            guard: MATRIX_SCAN_GUARD,
        });
    }
    let cells = dim * dim;
    let mut out = Vec::new();
    for bits in 0..(1u64 << cells) {
        let mut m = GF2Mat::zeros(dim, dim);
        for k in 0..cells {
            m.set(k / dim, k % dim, ((bits >> k) & 1) as u8);
        }
        if predicate(&m) {
            out.push(m);
        }
    }
    Ok(out)
}

/// Quadratic-time union-find orbit partition over the full group list (no
/// generator closure): ground truth for the orbit machinery at tiny sizes.
/// Orbits are sorted by smallest member, members ascending.
#[must_use]
pub fn naive_orbits(
    points: &[GF2Vec],
    group: &[GF2Mat],
    act: impl Fn(&GF2Vec, &GF2Mat) -> GF2Vec,
) -> Vec<Vec<GF2Vec>> {
    let index: std::collections::BTreeMap<&GF2Vec, usize> =
        points.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let mut parent: Vec<usize> = (0..points.len()).collect();
    fn find(parent: &mut Vec<usize>, i: usize) -> usize {
        if parent[i] != i {
            let root = find(parent, parent[i]);
            parent[i] = root;
        }
        parent[i]
    }
    for (i, p) in points.iter().enumerate() {
        for m in group {
            let q = act(p, m);
            let j = *index.get(&q).expect("action must stay inside the point set");
            let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
            if ri != rj {
                parent[ri] = rj;
            }
        }
    }
    let mut buckets: std::collections::BTreeMap<usize, Vec<GF2Vec>> = Default::default();
    for (i, p) in points.iter().enumerate() {
        let root = find(&mut parent, i);
        buckets.entry(root).or_default().push(p.clone());
    }
    let mut orbits: Vec<Vec<GF2Vec>> = buckets
        .into_values()
        .map(|mut v| {
            v.sort();
            v
        })
        .collect();
    orbits.sort_by(|a, b| a[0].cmp(&b[0]));
    orbits
}

/// Naive quadratic section: the fiber value is `sum x_i r_i` plus the
/// pairwise products inside each coordinate pair.
#[must_use]
pub fn naive_section(r: &[u8], x: &[u8]) -> Vec<u8> {
    let g = r.len() / 2;
    let mut out = x.to_vec();
    let mut fiber = 0u8;
    for i in 0..2 * g {
        fiber ^= x[i] & r[i];
    }
    for p in 0..g {
        fiber ^= x[2 * p] & x[2 * p + 1];
    }
    out.push(fiber);
    out
}

/// Naive action of a symplectic map on a covering of the cover side,
/// computed through the defining relation of the lift: the moved covering
/// takes, on the j-th barred class, the old covering's value on the section
/// image of the moved basis vector, corrected by `r_j`. This route never
/// touches the defect-row formula of the optimized lift.
#[must_use]
pub fn naive_covering_action(phi: &GF2Vec, f: &GF2Mat, r: &[u8]) -> GF2Vec {
    let n2 = r.len();
    assert_eq!(phi.len(), n2 + 1);
    assert_eq!(f.rows(), n2);
    let mut out = GF2Vec::zeros(n2 + 1);
    for j in 0..n2 {
        let fc: Vec<u8> = (0..n2).map(|i| f.get(i, j)).collect();
        let lifted = naive_section(r, &fc);
        let mut value = 0u8;
        for (idx, &bit) in lifted.iter().enumerate() {
            value ^= bit & phi.get(idx);
        }
        out.set(j, value ^ r[j]); // phi(s(f c_j)) + r_j
    }
    out.set(n2, phi.get(n2));
    out
}

/// Family membership by the literal definition: value 1 on the fiber class
/// and equal values inside every coordinate pair.
#[must_use]
pub fn naive_in_family(phi: &GF2Vec) -> bool {
    let g = phi.len() / 2;
    if phi.get(2 * g) != 1 {
        return false;
    }
    (0..g).all(|p| phi.get(2 * p) == phi.get(2 * p + 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn naive_mul_agrees_with_packed() {
        let a = GF2Mat::parse_text("101\n110\n011").unwrap();
        let b = GF2Mat::parse_text("010\n111\n001").unwrap();
        assert_eq!(naive_mul(&a, &b), a.mul(&b).unwrap());
    }

    #[test]
    fn orthogonal_counts() {
        for (dim, expected) in [(1, 1), (2, 2), (3, 6), (4, 48)] {
            let group = enumerate_matrices(dim, is_orthogonal_dot).unwrap();
            assert_eq!(group.len(), expected, "dim {dim}");
        }
    }

    #[test]
    fn symplectic_counts() {
        assert_eq!(enumerate_matrices(2, is_symplectic_pairs).unwrap().len(), 6);
        assert_eq!(enumerate_matrices(4, is_symplectic_pairs).unwrap().len(), 720);
    }

    #[test]
    fn invertible_count_dim2() {
        let gl2 = enumerate_matrices(2, |m| naive_rank(m) == 2).unwrap();
        assert_eq!(gl2.len(), 6);
    }

    #[test]
    fn scan_guard() {
        assert!(enumerate_matrices(5, |_| true).is_err());
    }

    #[test]
    fn naive_orbits_singletons_under_identity() {
        let points: Vec<GF2Vec> = (0..4).map(|k| GF2Vec::from_counter_msb(k, 2)).collect();
        let orbits = naive_orbits(&points, &[GF2Mat::identity(2)], |p, m| m.pullback(p));
        assert_eq!(orbits.len(), 4);
    }

    #[test]
    fn section_matches_core() {
        use spincover_core::surfaces::{s_eval, SectionParams};
        let g = 3;
        let mut rng = spincover_core::rng::SplitMix64::new(10);
        for _ in 0..20 {
            let r = rng.vector(2 * g);
            let r_bits: Vec<u8> = (0..2 * g).map(|i| r.get(i)).collect();
            let params = SectionParams::with_r(g, r.clone()).unwrap();
            let x = rng.vector(2 * g);
            let x_bits: Vec<u8> = (0..2 * g).map(|i| x.get(i)).collect();
            let naive = naive_section(&r_bits, &x_bits);
            let fast = s_eval(&params, &x);
            for (i, &bit) in naive.iter().enumerate() {
                assert_eq!(bit, fast.get(i));
            }
        }
    }
}
