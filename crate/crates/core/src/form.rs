//! Bilinear forms over GF(2) and their isometry groups.
//!
//! Two form spaces matter here: GF(2)^n with the dot product (Gram matrix
//! the identity) and GF(2)^{2g} with the symplectic product (2x2 blocks
//! `[[0,1],[1,0]]` down the diagonal in the standard pairing basis). Full
//! group enumeration uses frame backtracking and is guarded by dimension
//! bounds; past the guard only generator-driven computations are offered.

use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gf2::{GF2Mat, GF2Vec};

/// Enumeration guard for the dot form (the group at dimension 8 already has
/// ~1.9e8 elements).
pub const DOT_ENUM_GUARD: usize = 8;
/// Enumeration guard for the symplectic form (dimension 8 is ~4.7e10; the
/// guard is a refusal bound, not a promise of feasibility near it).
pub const SYMPLECTIC_ENUM_GUARD: usize = 12;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum FormKind {
    Dot,
    Symplectic,
}

/// A GF(2) vector space with a fixed symmetric bilinear form.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FormSpace {
    dim: usize,
    gram: GF2Mat,
    kind: FormKind,
}

impl FormSpace {
    /// GF(2)^n with the dot product.
    #[must_use]
    pub fn dot(n: usize) -> Arc<Self> {
        Arc::new(Self {
            dim: n,
            gram: GF2Mat::identity(n),
            kind: FormKind::Dot,
        })
    }

    /// GF(2)^{2g} with the symplectic product in the standard pairing basis:
    /// all products zero except between the two members of each consecutive
    /// pair (coordinates 2p and 2p+1).
    #[must_use]
    pub fn symplectic(g: usize) -> Arc<Self> {
        let mut gram = GF2Mat::zeros(2 * g, 2 * g);
        for p in 0..g {
            gram.set(2 * p, 2 * p + 1, 1);
            gram.set(2 * p + 1, 2 * p, 1);
        }
        Arc::new(Self {
            dim: 2 * g,
            gram,
            kind: FormKind::Symplectic,
        })
    }

    /// GF(2)^{2g} with the symplectic product in a split basis
    /// (u_1..u_g, w_1..w_g) where the only nonzero products are
    /// u_i . w_i = 1; Gram matrix `[[0,I],[I,0]]`.
    #[must_use]
    pub fn symplectic_split(g: usize) -> Arc<Self> {
        let mut gram = GF2Mat::zeros(2 * g, 2 * g);
        for i in 0..g {
            gram.set(i, g + i, 1);
            gram.set(g + i, i, 1);
        }
        Arc::new(Self {
            dim: 2 * g,
            gram,
            kind: FormKind::Symplectic,
        })
    }

    #[must_use]
    pub const fn dim(&self) -> usize {
        self.dim
    }

    #[must_use]
    pub const fn gram(&self) -> &GF2Mat {
        &self.gram
    }

    #[must_use]
    pub const fn kind(&self) -> FormKind {
        self.kind
    }

    fn enum_guard(&self) -> usize {
        match self.kind {
            FormKind::Dot => DOT_ENUM_GUARD,
            FormKind::Symplectic => SYMPLECTIC_ENUM_GUARD,
        }
    }
}

/// Bilinear pairing `u^t . gram . v` over GF(2).
pub fn pair(space: &FormSpace, u: &GF2Vec, v: &GF2Vec) -> Result<u8> {
    if u.len() != space.dim || v.len() != space.dim {
        return Err(Error::Shape(format!(
            "pair: expected vectors of length {}, got {} and {}",
            space.dim,
            u.len(),
            v.len()
        )));
    }
    Ok(u.dot(&space.gram.apply(v)))
}

/// True iff `m` is invertible and preserves the form: `m^t . gram . m = gram`.
#[must_use]
pub fn is_isometry(space: &FormSpace, m: &GF2Mat) -> bool {
    if m.rows() != space.dim || m.cols() != space.dim {
        return false;
    }
    if m.transpose().mul(&space.gram).unwrap().mul(m).unwrap() != space.gram {
        return false;
    }
    m.rank() == space.dim
}

/// An invertible form-preserving map, columns = images of basis vectors.
///
/// Equality and hashing compare the matrix only; all isometries mixed in one
/// computation must share a space, which the operations assert.
#[derive(Clone)]
pub struct Isometry {
    space: Arc<FormSpace>,
    mat: GF2Mat,
}

impl Isometry {
    /// Validates and wraps a matrix.
    pub fn new(space: Arc<FormSpace>, mat: GF2Mat) -> Result<Self> {
        if mat.rows() != space.dim() || mat.cols() != space.dim() {
            return Err(Error::Shape(format!(
                "isometry matrix must be {0}x{0}, got {1}x{2}",
                space.dim(),
                mat.rows(),
                mat.cols()
            )));
        }
        if !is_isometry(&space, &mat) {
            return Err(Error::NotIsometry);
        }
        Ok(Self { space, mat })
    }

    #[must_use]
    pub fn identity(space: Arc<FormSpace>) -> Self {
        let mat = GF2Mat::identity(space.dim());
        Self { space, mat }
    }

    #[must_use]
    pub fn space(&self) -> &Arc<FormSpace> {
        &self.space
    }

    #[must_use]
    pub fn matrix(&self) -> &GF2Mat {
        &self.mat
    }

    #[must_use]
    pub fn is_identity(&self) -> bool {
        self.mat.is_identity()
    }

    /// Image of a vector.
    #[must_use]
    pub fn apply(&self, x: &GF2Vec) -> GF2Vec {
        self.mat.apply(x)
    }

    /// Composition `self . other` (apply `other` first).
    #[must_use]
    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(self.space.dim(), other.space.dim(), "compose: space mismatch");
        debug_assert_eq!(self.space.gram(), other.space.gram(), "compose: space mismatch");
        Self {
            space: Arc::clone(&self.space),
            mat: &self.mat * &other.mat,
        }
    }

    #[must_use]
    pub fn inverse(&self) -> Self {
        let mat = self.mat.inverse().expect("isometries are invertible");
        Self {
            space: Arc::clone(&self.space),
            mat,
        }
    }
}

impl PartialEq for Isometry {
    fn eq(&self, other: &Self) -> bool {
        self.mat == other.mat
    }
}

impl Eq for Isometry {}

impl std::hash::Hash for Isometry {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.mat.hash(state);
    }
}

impl fmt::Debug for Isometry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Isometry({:?}, {:?})", self.space.kind(), self.mat)
    }
}

/// The transvection `x -> x + <x,y> y`.
///
/// Over the dot form this is an isometry only for isotropic `y`
/// (even weight); non-isotropic vectors are rejected. Over the symplectic
/// form every `y` is allowed.
pub fn transvection(space: &Arc<FormSpace>, y: &GF2Vec) -> Result<Isometry> {
    if y.len() != space.dim() {
        return Err(Error::Shape(format!(
            "transvection: expected vector of length {}, got {}",
            space.dim(),
            y.len()
        )));
    }
    if space.kind() == FormKind::Dot && pair(space, y, y)? == 1 {
        return Err(Error::NonIsotropic(y.to_string()));
    }
    // column j = e_j + <e_j, y> y, and <e_j, y> = (gram . y)_j
    let gy = space.gram().apply(y);
    let mut mat = GF2Mat::identity(space.dim());
    for j in gy.ones() {
        for i in y.ones() {
            let cur = mat.get(i, j);
            mat.set(i, j, cur ^ 1);
        }
    }
    Ok(Isometry {
        space: Arc::clone(space),
        mat,
    })
}

/// All isometries of the space, each exactly once, found by choosing images
/// of basis vectors subject to the Gram constraints. Deterministic order.
///
/// Refuses dimensions above the form's enumeration guard.
pub fn enumerate_isometries(space: &Arc<FormSpace>) -> Result<Vec<Isometry>> {
    enumerate_isometries_with_guard(space, space.enum_guard())
}

/// Same as [`enumerate_isometries`] with an explicit guard override.
pub fn enumerate_isometries_with_guard(
    space: &Arc<FormSpace>,
    guard: usize,
) -> Result<Vec<Isometry>> {
    let n = space.dim();
    if n > guard {
        return Err(Error::TooLarge { dim: n, guard });
    }
    let mut result = Vec::new();
    let mut columns: Vec<GF2Vec> = Vec::with_capacity(n);
    let mut out_mat = GF2Mat::zeros(n, n);
    frame_search(space, n, &mut columns, &mut out_mat, &mut result);
    result.sort();
    Ok(result
        .into_iter()
        .map(|mat| Isometry {
            space: Arc::clone(space),
            mat,
        })
        .collect())
}

fn frame_search(
    space: &FormSpace,
    n: usize,
    columns: &mut Vec<GF2Vec>,
    out_mat: &mut GF2Mat,
    result: &mut Vec<GF2Mat>,
) {
    let k = columns.len();
    if k == n {
        // Gram-compatible full frames are automatically independent because
        // the form is nondegenerate, so this is an isometry.
        result.push(out_mat.clone());
        return;
    }
    // Candidates for the next image: <b_i, x> = gram[i][k] for chosen i, and
    // for the dot form additionally x.x = gram[k][k] (x.x = sum of
    // coordinates is linear over GF(2)).
    let mut rows: Vec<GF2Vec> = columns.iter().map(|b| space.gram().apply(b)).collect();
    let mut rhs = GF2Vec::zeros(rows.len() + usize::from(space.kind() == FormKind::Dot));
    for (i, _) in columns.iter().enumerate() {
        rhs.set(i, space.gram().get(i, k));
    }
    if space.kind() == FormKind::Dot {
        let mut ones = GF2Vec::zeros(n);
        for i in 0..n {
            ones.set(i, 1);
        }
        rhs.set(rows.len(), space.gram().get(k, k));
        rows.push(ones);
    }
    let mut system = GF2Mat::zeros(rows.len(), n);
    for (i, row) in rows.iter().enumerate() {
        for j in row.ones() {
            system.set(i, j, 1);
        }
    }
    let Some(sol) = system.solve(&rhs).expect("shapes agree") else {
        return;
    };
    let mut candidates = enumerate_affine(&sol.particular, &sol.kernel);
    candidates.sort();
    for x in candidates {
        for i in 0..n {
            out_mat.set(i, k, x.get(i));
        }
        columns.push(x);
        frame_search(space, n, columns, out_mat, result);
        columns.pop();
    }
}

fn enumerate_affine(base: &GF2Vec, kernel: &[GF2Vec]) -> Vec<GF2Vec> {
    let mut out = Vec::with_capacity(1 << kernel.len());
    for mask in 0..(1u64 << kernel.len()) {
        let mut x = base.clone();
        for (k, kv) in kernel.iter().enumerate() {
            if (mask >> k) & 1 == 1 {
                x.xor_assign(kv);
            }
        }
        out.push(x);
    }
    out
}

/// Breadth-first product closure of a generator list: the generated
/// subgroup, identity included, sorted deterministically. An empty generator
/// list yields an empty result (there is no space to take an identity from).
pub fn closure(gens: &[Isometry]) -> Result<Vec<Isometry>> {
    let Some(first) = gens.first() else {
        return Ok(Vec::new());
    };
    let space = first.space();
    for g in gens {
        if g.space().dim() != space.dim() || g.space().gram() != space.gram() {
            return Err(Error::Precondition(
                "closure: generators do not share one space".into(),
            ));
        }
    }
    let mut seen: HashSet<GF2Mat> = HashSet::new();
    let identity = GF2Mat::identity(space.dim());
    seen.insert(identity.clone());
    let mut frontier = vec![identity];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for m in &frontier {
            for g in gens {
                let prod = m * g.matrix();
                if seen.insert(prod.clone()) {
                    next.push(prod);
                }
            }
        }
        frontier = next;
    }
    let mut mats: Vec<GF2Mat> = seen.into_iter().collect();
    mats.sort();
    Ok(mats
        .into_iter()
        .map(|mat| Isometry {
            space: Arc::clone(space),
            mat,
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dot_pairing_is_kronecker_on_basis() {
        let space = FormSpace::dot(4);
        for i in 0..4 {
            for j in 0..4 {
                let vi = GF2Vec::unit(4, i);
                let vj = GF2Vec::unit(4, j);
                assert_eq!(pair(&space, &vi, &vj).unwrap(), u8::from(i == j));
            }
        }
    }

    #[test]
    fn symplectic_pairing_on_basis() {
        // g = 2: product 1 exactly between the members of each pair
        let space = FormSpace::symplectic(2);
        let c = |i: usize| GF2Vec::unit(4, i);
        assert_eq!(pair(&space, &c(0), &c(1)).unwrap(), 1);
        assert_eq!(pair(&space, &c(0), &c(2)).unwrap(), 0);
        assert_eq!(pair(&space, &c(2), &c(3)).unwrap(), 1);
        assert_eq!(pair(&space, &c(1), &c(3)).unwrap(), 0);
    }

    #[test]
    fn pair_shape_error() {
        let space = FormSpace::dot(3);
        let u = GF2Vec::zeros(2);
        let v = GF2Vec::zeros(3);
        assert!(matches!(pair(&space, &u, &v), Err(Error::Shape(_))));
    }

    #[test]
    fn identity_and_swap_are_dot_isometries() {
        let space = FormSpace::dot(2);
        assert!(is_isometry(&space, &GF2Mat::identity(2)));
        let swap = GF2Mat::parse_text("01\n10").unwrap();
        assert!(is_isometry(&space, &swap));
        let not = GF2Mat::parse_text("11\n01").unwrap();
        assert!(!is_isometry(&space, &not));
    }

    #[test]
    fn unipotent_is_a_symplectic_isometry() {
        let space = FormSpace::symplectic(1);
        let m = GF2Mat::parse_text("10\n11").unwrap();
        assert!(is_isometry(&space, &m));
        let singular = GF2Mat::parse_text("10\n10").unwrap();
        assert!(!is_isometry(&space, &singular));
    }

    #[test]
    fn symplectic_transvection_matrix() {
        // g = 1: T_{c_1} has matrix [[1,1],[0,1]] and is an isometry
        let space = FormSpace::symplectic(1);
        let t = transvection(&space, &GF2Vec::unit(2, 0)).unwrap();
        assert_eq!(t.matrix(), &GF2Mat::parse_text("11\n01").unwrap());
        assert!(is_isometry(&space, t.matrix()));
    }

    #[test]
    fn zero_transvection_is_identity() {
        let space = FormSpace::dot(4);
        let t = transvection(&space, &GF2Vec::zeros(4)).unwrap();
        assert!(t.is_identity());
    }

    #[test]
    fn dot_transvection_rejects_non_isotropic() {
        let space = FormSpace::dot(3);
        let odd = GF2Vec::parse("110").unwrap();
        assert!(transvection(&space, &odd).is_ok());
        let bad = GF2Vec::parse("100").unwrap();
        assert!(matches!(transvection(&space, &bad), Err(Error::NonIsotropic(_))));
    }

    #[test]
    fn transvections_are_involutions() {
        let mut rng = crate::rng::SplitMix64::new(7);
        let dot = FormSpace::dot(6);
        let symp = FormSpace::symplectic(3);
        let mut checked = 0;
        while checked < 100 {
            let y = rng.vector(6);
            if y.parity() == 0 {
                let t = transvection(&dot, &y).unwrap();
                assert!(t.compose(&t).is_identity());
                checked += 1;
            }
            let z = rng.vector(6);
            let t = transvection(&symp, &z).unwrap();
            assert!(t.compose(&t).is_identity());
        }
    }

    #[test]
    fn enumerate_dot_small() {
        // dimension 2: identity and the swap; dimension 3: the 6 permutations
        let o2 = enumerate_isometries(&FormSpace::dot(2)).unwrap();
        assert_eq!(o2.len(), 2);
        let o3 = enumerate_isometries(&FormSpace::dot(3)).unwrap();
        assert_eq!(o3.len(), 6);
        for f in &o3 {
            // permutation matrix: every row and column has weight 1
            for i in 0..3 {
                assert_eq!(f.matrix().row(i).weight(), 1);
                assert_eq!(f.matrix().col(i).weight(), 1);
            }
        }
        let o4 = enumerate_isometries(&FormSpace::dot(4)).unwrap();
        assert_eq!(o4.len(), 48);
    }

    #[test]
    fn enumerate_symplectic_small() {
        let sp2 = enumerate_isometries(&FormSpace::symplectic(1)).unwrap();
        assert_eq!(sp2.len(), 6);
        let sp4 = enumerate_isometries(&FormSpace::symplectic(2)).unwrap();
        assert_eq!(sp4.len(), 720);
        for f in sp2.iter().chain(&sp4) {
            assert!(is_isometry(f.space(), f.matrix()));
        }
    }

    #[test]
    fn enumerate_guard_refuses() {
        let space = FormSpace::dot(9);
        assert!(matches!(
            enumerate_isometries(&space),
            Err(Error::TooLarge { dim: 9, guard: 8 })
        ));
        assert!(enumerate_isometries_with_guard(&FormSpace::dot(3), 2).is_err());
    }

    #[test]
    fn closure_of_identity() {
        let space = FormSpace::dot(3);
        let id = Isometry::identity(space);
        let c = closure(&[id]).unwrap();
        assert_eq!(c.len(), 1);
        assert!(c[0].is_identity());
    }

    #[test]
    fn closure_of_adjacent_transpositions_is_all_permutations() {
        let space = FormSpace::dot(3);
        let mut gens = Vec::new();
        for i in 0..2 {
            let mut m = GF2Mat::identity(3);
            m.set(i, i, 0);
            m.set(i + 1, i + 1, 0);
            m.set(i, i + 1, 1);
            m.set(i + 1, i, 1);
            gens.push(Isometry::new(Arc::clone(&space), m).unwrap());
        }
        let c = closure(&gens).unwrap();
        let full = enumerate_isometries(&space).unwrap();
        assert_eq!(c, full);
    }

    #[test]
    fn closure_of_symplectic_transvections_g1() {
        let space = FormSpace::symplectic(1);
        let t1 = transvection(&space, &GF2Vec::unit(2, 0)).unwrap();
        let t2 = transvection(&space, &GF2Vec::unit(2, 1)).unwrap();
        let c = closure(&[t1, t2]).unwrap();
        let full = enumerate_isometries(&space).unwrap();
        assert_eq!(c, full);
    }

    #[test]
    fn closure_members_are_isometries() {
        let space = FormSpace::symplectic(2);
        let mut rng = crate::rng::SplitMix64::new(3);
        let gens: Vec<Isometry> = (0..3)
            .map(|_| transvection(&space, &rng.nonzero_vector(4)).unwrap())
            .collect();
        for f in closure(&gens).unwrap() {
            assert!(is_isometry(f.space(), f.matrix()));
        }
    }
}
