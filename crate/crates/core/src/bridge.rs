//! Bridge between the two group worlds, and the realizability /
//! weak-equivalence layer.
//!
//! A symplectic map of the cover written in the split basis
//! (e_1..e_g, e'_1..e'_g) projects to the base exactly when its matrix is
//! block lower triangular (it preserves the projection kernel); the
//! projection is orthogonal exactly when the top block preserves the
//! restricted scalar product `S` with entries `1 + delta_ij`. The orthogonal
//! extension from the image hyperplane to the whole base is unique for even
//! genus and double for odd genus. Conversely every orthogonal base map
//! lifts, with the inverse-transpose completing the symplectic matrix.
//!
//! A total-space automorphism is realizable (induced by an automorphism of
//! the fundamental group) exactly when it fixes the fiber class, its base
//! block is orthogonal, and its fiber-defect row vanishes on the all-ones
//! class. Weak equivalence of special coverings is decided by this criterion
//! and coincides with equality of the base value-sum parity.



use crate::error::{Error, Result};
use crate::form::{is_isometry, FormKind, FormSpace, Isometry};
use crate::gf2::{GF2Mat, GF2Vec};
use crate::surfaces::{pi_star, Host, OSurface, SpecialCovering};
use crate::verify::CheckReport;

/// An automorphism of the total-space homology of the non-orientable side,
/// on the basis (v̄_0..v̄_g, h).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TotalAut {
    g: usize,
    mat: GF2Mat,
}

impl TotalAut {
    pub fn new(g: usize, mat: GF2Mat) -> Result<Self> {
        if mat.rows() != g + 2 || mat.cols() != g + 2 {
            return Err(Error::Shape(format!(
                "total-space automorphism must be {0}x{0}, got {1}x{2}",
                g + 2,
                mat.rows(),
                mat.cols()
            )));
        }
        if mat.rank() != g + 2 {
            return Err(Error::Precondition(
                "total-space map must be invertible".into(),
            ));
        }
        Ok(Self { g, mat })
    }

    #[must_use]
    pub fn identity(g: usize) -> Self {
        Self {
            g,
            mat: GF2Mat::identity(g + 2),
        }
    }

    #[must_use]
    pub const fn g(&self) -> usize {
        self.g
    }

    #[must_use]
    pub fn matrix(&self) -> &GF2Mat {
        &self.mat
    }

    /// True when the fiber class is fixed (last column is the fiber unit).
    #[must_use]
    pub fn fixes_fiber(&self) -> bool {
        self.mat.col(self.g + 1) == GF2Vec::unit(self.g + 2, self.g + 1)
    }

    /// The induced base block (top-left (g+1) square).
    #[must_use]
    pub fn base_block(&self) -> GF2Mat {
        self.mat.block(0, 0, self.g + 1, self.g + 1)
    }

    /// The fiber-defect row: the linear form `delta` with
    /// image(v̄_j) = overline(base(v_j)) + delta_j h.
    #[must_use]
    pub fn defect_row(&self) -> GF2Vec {
        self.mat.row(self.g + 1).prefix(self.g + 1)
    }

    #[must_use]
    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(self.g, other.g);
        Self {
            g: self.g,
            mat: &self.mat * &other.mat,
        }
    }

    #[must_use]
    pub fn inverse(&self) -> Self {
        Self {
            g: self.g,
            mat: self.mat.inverse().expect("validated invertible"),
        }
    }
}

/// Realizability criterion: fiber class fixed, orthogonal base block, and
/// defect row vanishing on the all-ones base class.
#[must_use]
pub fn is_realizable(aut: &TotalAut) -> bool {
    if !aut.fixes_fiber() {
        return false;
    }
    let base = aut.base_block();
    if !is_isometry(&FormSpace::dot(aut.g + 1), &base) {
        return false;
    }
    aut.defect_row().parity() == 0
}

/// The restricted scalar product on the projection image, in the basis
/// `v_0 + v_i`: entries `1 + delta_ij` (zero diagonal).
#[must_use]
pub fn s_matrix(g: usize) -> GF2Mat {
    let mut s = GF2Mat::zeros(g, g);
    for i in 0..g {
        for j in 0..g {
            if i != j {
                s.set(i, j, 1);
            }
        }
    }
    s
}

/// The projection to base homology written on split coordinates
/// (e_1..e_g, e'_1..e'_g): a (g+1) x (2g) matrix.
#[must_use]
pub fn pi_star_split(g: usize) -> GF2Mat {
    pi_star(g)
        .mul(&OSurface::new(g).split_to_pairs())
        .expect("shapes agree")
}

/// The lifting relation: `F . pi_star = pi_star . f`, with `f` on split
/// coordinates.
#[must_use]
pub fn is_lift_pair(f: &Isometry, base: &Isometry) -> bool {
    let g = f.space().dim() / 2;
    if base.space().dim() != g + 1 {
        return false;
    }
    let proj = pi_star_split(g);
    base.matrix().mul(&proj).expect("shapes agree") == proj.mul(f.matrix()).expect("shapes agree")
}

fn require_split_basis(f: &Isometry) -> Result<usize> {
    let dim = f.space().dim();
    if f.space().kind() != FormKind::Symplectic
        || !dim.is_multiple_of(2)
        || f.space().gram() != FormSpace::symplectic_split(dim / 2).gram()
    {
        return Err(Error::Precondition(
            "expected a symplectic map written on the split basis".into(),
        ));
    }
    Ok(dim / 2)
}

/// Ambient coordinates of `v_0 + v_k` (1-based k).
fn image_basis_vector(g: usize, k: usize) -> GF2Vec {
    let mut u = GF2Vec::zeros(g + 1);
    u.set(0, 1);
    u.set(k, 1);
    u
}

/// Ambient coordinates of the image of `v_0 + v_k` under the hyperplane map
/// with matrix `a` in the basis `v_0 + v_i`.
fn embed_hyperplane_image(a: &GF2Mat, k: usize) -> GF2Vec {
    let g = a.rows();
    let mut w = GF2Vec::zeros(g + 1);
    let mut parity = 0u8;
    for i in 0..g {
        let bit = a.get(i, k - 1);
        w.set(i + 1, bit);
        parity ^= bit;
    }
    w.set(0, parity);
    w
}

/// Solves the extension equations of a hyperplane isometry: returns the
/// vectors `v'` with `v'.fhat(x) = v.x` for all `x` in the hyperplane and
/// `v'` outside the hyperplane. One solution when the all-ones vector is
/// outside the hyperplane (even genus), two when it is inside (odd genus).
pub fn lemma_gene_extend(fhat: &GF2Mat, v: &GF2Vec) -> Result<Vec<GF2Vec>> {
    let g = fhat.rows();
    if fhat.cols() != g || v.len() != g + 1 {
        return Err(Error::Shape(
            "hyperplane map must be g x g with an ambient vector of length g+1".into(),
        ));
    }
    let s = s_matrix(g);
    if fhat.transpose().mul(&s)?.mul(fhat)? != s {
        return Err(Error::Precondition(
            "hyperplane map does not preserve the restricted product".into(),
        ));
    }
    // the restricted product is degenerate at odd genus, so preservation
    // alone does not force invertibility
    if fhat.rank() != g {
        return Err(Error::Precondition("hyperplane map must be invertible".into()));
    }
    if v.parity() != 1 {
        return Err(Error::Precondition(
            "the vector to extend over must lie outside the hyperplane".into(),
        ));
    }
    // rows: images of the hyperplane basis; rhs: pairings with v
    let mut system = GF2Mat::zeros(g, g + 1);
    let mut rhs = GF2Vec::zeros(g);
    for k in 1..=g {
        let row = embed_hyperplane_image(fhat, k);
        for j in row.ones() {
            system.set(k - 1, j, 1);
        }
        rhs.set(k - 1, v.dot(&image_basis_vector(g, k)));
    }
    let solution = system
        .solve(&rhs)?
        .ok_or_else(|| Error::Defect("extension system is inconsistent".into()))?;
    if solution.kernel.len() != 1 {
        return Err(Error::Defect(format!(
            "extension system has kernel dimension {}, expected 1",
            solution.kernel.len()
        )));
    }
    let mut out: Vec<GF2Vec> = [
        solution.particular.clone(),
        solution.particular.xor(&solution.kernel[0]),
    ]
    .into_iter()
    .filter(|cand| cand.parity() == 1)
    .collect();
    for cand in &out {
        debug_assert_eq!(cand.dot(cand), v.dot(v), "extensions preserve the self-product");
    }
    out.sort();
    Ok(out)
}

/// Assembles the orthogonal extension determined by a hyperplane map and the
/// image `v'` of `v_0`.
fn assemble_extension(fhat: &GF2Mat, vprime: &GF2Vec) -> Result<Isometry> {
    let g = fhat.rows();
    let mut cols = Vec::with_capacity(g + 1);
    cols.push(vprime.clone());
    for k in 1..=g {
        // v_k = (v_0 + v_k) + v_0
        cols.push(embed_hyperplane_image(fhat, k).xor(vprime));
    }
    let mat = GF2Mat::from_cols(&cols)?;
    Isometry::new(FormSpace::dot(g + 1), mat)
        .map_err(|_| Error::Defect("assembled extension is not orthogonal".into()))
}

/// Projects a symplectic map (split basis) to the orthogonal maps of the
/// base covering it. Errors when the map does not preserve the projection
/// kernel; returns no candidates when the top block fails the restricted
/// product condition; otherwise one candidate for even genus, two for odd.
pub fn project_to_orth(f: &Isometry) -> Result<Vec<Isometry>> {
    let g = require_split_basis(f)?;
    let m = f.matrix();
    for i in 0..g {
        for j in g..2 * g {
            if m.get(i, j) == 1 {
                return Err(Error::KernelNotPreserved);
            }
        }
    }
    let a = m.block(0, 0, g, g);
    let s = s_matrix(g);
    if a.transpose().mul(&s)?.mul(&a)? != s {
        return Ok(Vec::new());
    }
    let v0 = GF2Vec::unit(g + 1, 0);
    let mut out = Vec::new();
    for vprime in lemma_gene_extend(&a, &v0)? {
        let candidate = assemble_extension(&a, &vprime)?;
        debug_assert!(is_lift_pair(f, &candidate));
        out.push(candidate);
    }
    out.sort_by(|x, y| x.matrix().cmp(y.matrix()));
    Ok(out)
}

/// Lifts an orthogonal base map to a symplectic map on split coordinates:
/// top block the restriction to the projection image, bottom-right its
/// inverse transpose, off-diagonal blocks zero.
pub fn lift_to_symp(base: &Isometry) -> Result<Isometry> {
    if base.space().kind() != FormKind::Dot {
        return Err(Error::Precondition("expected an orthogonal base map".into()));
    }
    let g = base.space().dim() - 1;
    if g == 0 {
        return Err(Error::Precondition("the base dimension must be at least 2".into()));
    }
    let mut a = GF2Mat::zeros(g, g);
    for k in 1..=g {
        let image = base.apply(&image_basis_vector(g, k));
        debug_assert_eq!(
            image.get(0),
            (1..=g).fold(0u8, |acc, i| acc ^ image.get(i)),
            "images of the projection image stay inside it"
        );
        for i in 1..=g {
            a.set(i - 1, k - 1, image.get(i));
        }
    }
    let d = a
        .transpose()
        .inverse()
        .ok_or_else(|| Error::Defect("restriction of an orthogonal map is singular".into()))?;
    let mut mat = GF2Mat::zeros(2 * g, 2 * g);
    mat.set_block(0, 0, &a);
    mat.set_block(g, g, &d);
    let f = Isometry::new(FormSpace::symplectic_split(g), mat)
        .map_err(|_| Error::Defect("assembled lift is not symplectic".into()))?;
    debug_assert!(is_lift_pair(&f, base));
    Ok(f)
}

/// Weak-equivalence class of a special covering of the non-orientable side:
/// the parity of its value sum on the barred base classes.
pub fn weak_class(psi: &SpecialCovering) -> Result<u8> {
    match psi.host() {
        Host::N(_) => Ok(psi.base_sum()),
        Host::O(_) => Err(Error::WrongHost(
            "weak classes are defined for coverings over the non-orientable side".into(),
        )),
    }
}

/// A realizable total-space automorphism carrying one covering to the other:
/// identity on the base block, defect row the value difference. Exists
/// exactly when the weak classes agree.
pub fn weak_witness(
    psi: &SpecialCovering,
    psi2: &SpecialCovering,
) -> Result<Option<TotalAut>> {
    let (Host::N(a), Host::N(b)) = (psi.host(), psi2.host()) else {
        return Err(Error::WrongHost(
            "weak witnesses connect coverings over the non-orientable side".into(),
        ));
    };
    if a.g != b.g {
        return Err(Error::Shape("coverings live at different genus".into()));
    }
    if weak_class(psi)? != weak_class(psi2)? {
        return Ok(None);
    }
    let g = a.g;
    let delta = psi.base_values().xor(&psi2.base_values());
    let mut mat = GF2Mat::identity(g + 2);
    for j in 0..=g {
        mat.set(g + 1, j, delta.get(j));
    }
    let aut = TotalAut::new(g, mat)?;
    debug_assert!(is_realizable(&aut));
    debug_assert_eq!(
        psi.pullback_through(aut.matrix(), psi.host())?,
        *psi2,
        "the witness must carry one covering to the other"
    );
    Ok(Some(aut))
}

/// Four-way equivalence crosscheck over every pair of special coverings at
/// one genus: realizable-witness existence, equality of presentation
/// exponents, equality of value-sum parities, and existence of a section
/// choice making the pair orbit-equivalent (searched over every rho). Also
/// replays the explicit section construction for equal-class pairs.
#[must_use]
pub fn thm_an_crosscheck(g: usize) -> CheckReport {
    use crate::orth_action::classify_a1;
    use crate::surfaces::{presentation, specials, SectionParams, TotalN};

    let mut report = CheckReport::new("an");
    let all = specials(TotalN { g });
    // orbit id per rho: member bitstring -> orbit index
    let mut orbit_ids: Vec<std::collections::BTreeMap<GF2Vec, usize>> = Vec::new();
    for rho_k in 0..(1u64 << (g + 1)) {
        let params =
            SectionParams::with_rho(g, GF2Vec::from_counter_msb(rho_k, g + 1)).expect("length");
        let orbits = match classify_a1(g, &params) {
            Ok(r) => r,
            Err(e) => {
                report.require(false, || format!("orbit computation failed: {e}"));
                return report;
            }
        };
        let mut ids = std::collections::BTreeMap::new();
        for (idx, orbit) in orbits.orbits.iter().enumerate() {
            for m in &orbit.members {
                ids.insert(m.clone(), idx);
            }
        }
        orbit_ids.push(ids);
    }
    let mut pairs = 0usize;
    for psi in &all {
        for psi2 in &all {
            pairs += 1;
            let p3 = psi.base_sum() == psi2.base_sum();
            let p2 = presentation(psi).expect("host").epsilon()
                == presentation(psi2).expect("host").epsilon();
            let witness = weak_witness(psi, psi2).expect("hosts agree");
            let p1 = match &witness {
                Some(aut) => {
                    let ok = is_realizable(aut)
                        && psi.pullback_through(aut.matrix(), psi.host()).expect("shape")
                            == *psi2;
                    report.require(ok, || {
                        format!(
                            "witness for {} vs {} fails verification",
                            psi.bitstring(),
                            psi2.bitstring()
                        )
                    });
                    true
                }
                None => false,
            };
            let p4 = orbit_ids
                .iter()
                .any(|ids| ids.get(psi.values()) == ids.get(psi2.values()));
            report.require(p1 == p3 && p2 == p3 && p4 == p3, || {
                format!(
                    "properties disagree for {} vs {}: witness={p1} exponent={p2} sum={p3} orbit={p4}",
                    psi.bitstring(),
                    psi2.bitstring()
                )
            });
            // the explicit section construction from the equal-class case
            if p3 && psi != psi2 {
                let delta = psi.base_values().xor(&psi2.base_values());
                let mut ones = delta.ones();
                let (i, j) = (ones.next().expect("nonzero"), ones.next().expect("even weight"));
                let mut rho = GF2Vec::zeros(g + 1);
                rho.set(i, psi.value(i));
                rho.set(j, psi2.value(j));
                let params = SectionParams::with_rho(g, rho).expect("length");
                let orbits = classify_a1(g, &params).expect("within guard");
                let shared = orbits
                    .orbits
                    .iter()
                    .any(|o| o.members.contains(psi.values()) && o.members.contains(psi2.values()));
                report.require(shared, || {
                    format!(
                        "explicit section construction fails for {} vs {}",
                        psi.bitstring(),
                        psi2.bitstring()
                    )
                });
            }
        }
    }
    report.detail(format!("g={g}: {pairs} pairs consistent across all four properties"));
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::form::{enumerate_isometries, transvection};
    use crate::orth_action::coordinate_transposition;
    use crate::surfaces::{specials, SectionParams, TotalN};

    #[test]
    fn s_matrix_small() {
        assert_eq!(s_matrix(1), GF2Mat::zeros(1, 1));
        assert_eq!(s_matrix(2), GF2Mat::parse_text("01\n10").unwrap());
    }

    #[test]
    fn lift_identity_and_roundtrip() {
        for g in 1..=4 {
            let id = Isometry::identity(FormSpace::dot(g + 1));
            let f = lift_to_symp(&id).unwrap();
            assert!(f.is_identity());
            let candidates = project_to_orth(&f).unwrap();
            assert!(candidates.contains(&id));
            assert_eq!(candidates.len(), if g % 2 == 0 { 1 } else { 2 });
        }
    }

    #[test]
    fn lift_swap_g1_is_lift_pair() {
        let swap = coordinate_transposition(&FormSpace::dot(2), 0, 1);
        let f = lift_to_symp(&swap).unwrap();
        assert!(is_lift_pair(&f, &swap));
        // the swap fixes v_0 + v_1, so its restriction to the image is
        // trivial and the lift is the identity
        assert!(f.is_identity());
    }

    #[test]
    fn every_orthogonal_map_lifts_small() {
        for g in 1..=4 {
            for base in enumerate_isometries(&FormSpace::dot(g + 1)).unwrap() {
                let f = lift_to_symp(&base).unwrap();
                assert!(is_lift_pair(&f, &base), "g={g}");
                let candidates = project_to_orth(&f).unwrap();
                assert!(candidates.contains(&base), "roundtrip must recover the map");
                assert_eq!(candidates.len(), if g % 2 == 0 { 1 } else { 2 });
            }
        }
    }

    #[test]
    fn kernel_transvections_project_to_identity() {
        // transvection along a kernel vector: written on split coordinates
        // its top block is the identity
        let g = 2;
        let space = FormSpace::symplectic_split(g);
        let mut w1 = GF2Vec::zeros(2 * g);
        w1.set(g, 1); // first kernel basis vector in split coordinates
        let t = transvection(&space, &w1).unwrap();
        let candidates = project_to_orth(&t).unwrap();
        assert_eq!(candidates.len(), 1);
        assert!(candidates[0].is_identity());
    }

    #[test]
    fn project_rejects_kernel_movers() {
        let g = 2;
        let space = FormSpace::symplectic_split(g);
        // a transvection along e_1 moves the kernel
        let t = transvection(&space, &GF2Vec::unit(2 * g, 0)).unwrap();
        assert!(matches!(project_to_orth(&t), Err(Error::KernelNotPreserved)));
    }

    #[test]
    fn project_requires_split_basis() {
        let f = Isometry::identity(FormSpace::symplectic(2));
        assert!(matches!(project_to_orth(&f), Err(Error::Precondition(_))));
    }

    #[test]
    fn lemma_gene_counts() {
        // even genus: ambient dimension odd, all-ones vector outside the
        // hyperplane, unique admissible extension vector
        let counts = [(2usize, 1usize), (3, 2), (4, 1)];
        for (g, expected) in counts {
            let fhat = GF2Mat::identity(g);
            let v0 = GF2Vec::unit(g + 1, 0);
            let sols = lemma_gene_extend(&fhat, &v0).unwrap();
            assert_eq!(sols.len(), expected, "g={g}");
            assert!(sols.contains(&v0), "identity extends by itself");
            for v in &sols {
                assert_eq!(v.parity(), 1, "extension vectors lie outside the hyperplane");
            }
        }
    }

    #[test]
    fn lemma_gene_rejects_bad_inputs() {
        let fhat = GF2Mat::identity(2);
        let inside = GF2Vec::from_bits(&[1, 1, 0]); // even parity: inside the hyperplane
        assert!(matches!(
            lemma_gene_extend(&fhat, &inside),
            Err(Error::Precondition(_))
        ));
        // singular maps never preserve the restricted product
        let singular = GF2Mat::parse_text("11\n11").unwrap();
        assert!(matches!(
            lemma_gene_extend(&singular, &GF2Vec::unit(3, 0)),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn is_lift_pair_examples() {
        let g = 1;
        let id_f = Isometry::identity(FormSpace::symplectic_split(g));
        let id_base = Isometry::identity(FormSpace::dot(g + 1));
        assert!(is_lift_pair(&id_f, &id_base));
        // kernel transvection covers the identity
        let mut w = GF2Vec::zeros(2);
        w.set(1, 1);
        let t_kernel = transvection(&FormSpace::symplectic_split(g), &w).unwrap();
        assert!(is_lift_pair(&t_kernel, &id_base));
        // a transvection moving the image does not
        let t_e = transvection(&FormSpace::symplectic_split(g), &GF2Vec::unit(2, 0)).unwrap();
        assert!(!is_lift_pair(&t_e, &id_base));
    }

    #[test]
    fn realizability_examples() {
        let g = 2;
        assert!(is_realizable(&TotalAut::identity(g)));
        // identity base block with an even-weight defect row
        let mut mat = GF2Mat::identity(g + 2);
        mat.set(g + 1, 0, 1);
        mat.set(g + 1, 1, 1);
        let aut = TotalAut::new(g, mat).unwrap();
        assert!(is_realizable(&aut));
        // odd-weight defect row fails
        let mut mat = GF2Mat::identity(g + 2);
        mat.set(g + 1, 0, 1);
        assert!(!is_realizable(&TotalAut::new(g, mat).unwrap()));
        // moving the fiber class fails
        let mut mat = GF2Mat::identity(g + 2);
        mat.set(0, g + 1, 1);
        assert!(!is_realizable(&TotalAut::new(g, mat).unwrap()));
    }

    #[test]
    fn realizable_maps_form_a_group_sampled() {
        let mut rng = crate::rng::SplitMix64::new(31);
        for g in 1..=4 {
            let gens = crate::orth_action::orth_generators(g + 1);
            let sample_realizable = |rng: &mut crate::rng::SplitMix64| -> TotalAut {
                let mut base = Isometry::identity(FormSpace::dot(g + 1));
                for _ in 0..5 {
                    base = base.compose(&gens[rng.below(gens.len())]);
                }
                let mut delta = rng.vector(g + 1);
                if delta.parity() == 1 {
                    delta.flip(0);
                }
                let mut mat = GF2Mat::zeros(g + 2, g + 2);
                mat.set_block(0, 0, base.matrix());
                for j in 0..=g {
                    mat.set(g + 1, j, delta.get(j));
                }
                mat.set(g + 1, g + 1, 1);
                TotalAut::new(g, mat).unwrap()
            };
            for _ in 0..25 {
                let a = sample_realizable(&mut rng);
                let b = sample_realizable(&mut rng);
                assert!(is_realizable(&a));
                assert!(is_realizable(&a.compose(&b)));
                assert!(is_realizable(&a.inverse()));
            }
        }
    }

    #[test]
    fn weak_class_and_witness() {
        let psi = SpecialCovering::over_n(1, &GF2Vec::from_bits(&[1, 0])).unwrap();
        let psi2 = SpecialCovering::over_n(1, &GF2Vec::from_bits(&[0, 1])).unwrap();
        assert_eq!(weak_class(&psi).unwrap(), 1);
        let aut = weak_witness(&psi, &psi2).unwrap().unwrap();
        assert!(is_realizable(&aut));
        assert_eq!(aut.defect_row().to_string(), "11");
        let zero = SpecialCovering::over_n(1, &GF2Vec::zeros(2)).unwrap();
        assert_eq!(weak_class(&zero).unwrap(), 0);
        assert!(weak_witness(&psi, &zero).unwrap().is_none());
    }

    #[test]
    fn witness_exists_iff_classes_agree_small() {
        for g in 1..=3 {
            for psi in specials(TotalN { g }) {
                for psi2 in specials(TotalN { g }) {
                    let witness = weak_witness(&psi, &psi2).unwrap();
                    assert_eq!(
                        witness.is_some(),
                        psi.base_sum() == psi2.base_sum(),
                        "g={g}"
                    );
                }
            }
        }
    }

    #[test]
    fn weak_class_equals_presentation_exponent() {
        for g in 1..=5 {
            for psi in specials(TotalN { g }) {
                assert_eq!(
                    weak_class(&psi).unwrap(),
                    crate::surfaces::presentation(&psi).unwrap().epsilon()
                );
            }
        }
    }

    #[test]
    fn crosscheck_small_genus() {
        for g in 1..=2 {
            let report = thm_an_crosscheck(g);
            assert!(report.passed, "{report}");
        }
    }

    #[test]
    fn lifts_of_orthogonal_maps_are_realizable() {
        let g = 2;
        let mut rng = crate::rng::SplitMix64::new(41);
        for _ in 0..10 {
            let params = SectionParams::with_rho(g, rng.vector(g + 1)).unwrap();
            for base in enumerate_isometries(&FormSpace::dot(g + 1)).unwrap() {
                let lifted = crate::orth_action::lift_f_sigma(&base, &params).unwrap();
                let aut = TotalAut::new(g, lifted.matrix().clone()).unwrap();
                assert!(is_realizable(&aut));
            }
        }
    }
}
