//! The right action of the orthogonal group on special coverings of the
//! non-orientable side.
//!
//! An orthogonal map F of the base lifts to the total space through the
//! linear section: the lift fixes the fiber class and acts by
//! `[[A, 0], [d, 1]]` with `d_j = sum_i rho_i a_ij + rho_j`. The action on
//! coverings is precomposition with the lift. Through `theta = psi . sigma`
//! the coverings correspond to linear forms on the base, where the orbits
//! are: the zero form, the all-ones form (both fixed), and the two classes
//! cut out by the value-sum parity.

use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::form::{
    enumerate_isometries, transvection, FormKind, FormSpace, Isometry,
};
use crate::gf2::{GF2Mat, GF2Vec};
use crate::orbit::{orbit_decompose, OrbitReport};
use crate::surfaces::{sigma_eval, specials, Host, SectionParams, SpecialCovering, TotalN};
use crate::verify::CheckReport;

/// Lift of an orthogonal base map to the total space: block shape
/// `[[A, 0], [d, 1]]` on the basis (v̄_0..v̄_g, h).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftedAut {
    g: usize,
    mat: GF2Mat,
}

impl LiftedAut {
    #[must_use]
    pub const fn g(&self) -> usize {
        self.g
    }

    #[must_use]
    pub fn matrix(&self) -> &GF2Mat {
        &self.mat
    }

    /// The orthogonal block acting on the barred base classes.
    #[must_use]
    pub fn base_block(&self) -> GF2Mat {
        self.mat.block(0, 0, self.g + 1, self.g + 1)
    }

    /// The fiber-defect row `d`.
    #[must_use]
    pub fn defect_row(&self) -> GF2Vec {
        self.mat.row(self.g + 1).prefix(self.g + 1)
    }
}

/// Lifts an orthogonal map through the linear section:
/// `d_j = sum_i rho_i a_ij + rho_j`, fiber class fixed.
pub fn lift_f_sigma(f: &Isometry, params: &SectionParams) -> Result<LiftedAut> {
    let g = params.g();
    if f.space().kind() != FormKind::Dot || f.space().dim() != g + 1 {
        return Err(Error::Precondition(format!(
            "lift expects an orthogonal map of dimension {}",
            g + 1
        )));
    }
    let a = f.matrix();
    let mut mat = GF2Mat::zeros(g + 2, g + 2);
    mat.set_block(0, 0, a);
    let d = a.pullback(params.rho()).xor(params.rho());
    for j in 0..=g {
        mat.set(g + 1, j, d.get(j));
    }
    mat.set(g + 1, g + 1, 1);
    Ok(LiftedAut { g, mat })
}

/// The action: precomposition of the covering with the lift of `f`.
/// The result is special again since the lift fixes the fiber class.
pub fn act_a1(
    psi: &SpecialCovering,
    f: &Isometry,
    params: &SectionParams,
) -> Result<SpecialCovering> {
    let Host::N(total) = psi.host() else {
        return Err(Error::WrongHost(
            "the orthogonal action acts on coverings over the non-orientable side".into(),
        ));
    };
    if total.g != params.g() {
        return Err(Error::Shape(format!(
            "covering genus {} does not match section genus {}",
            total.g,
            params.g()
        )));
    }
    let lifted = lift_f_sigma(f, params)?;
    psi.pullback_through(lifted.matrix(), psi.host())
}

/// The linear form `theta = psi . sigma` on the base:
/// `theta(v_i) = psi(v̄_i) + rho_i`.
#[must_use]
pub fn theta_of(psi: &SpecialCovering, params: &SectionParams) -> GF2Vec {
    psi.base_values().xor(params.rho())
}

/// The special covering with a prescribed `theta = psi . sigma`.
pub fn psi_from_theta(theta: &GF2Vec, params: &SectionParams) -> Result<SpecialCovering> {
    SpecialCovering::over_n(params.g(), &theta.xor(params.rho()))
}

/// Orbit class of a linear form under right composition with the orthogonal
/// group: the zero and all-ones forms are fixed points; everything else is
/// classified by the parity of the value sum.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum FormClass {
    /// The zero form (a fixed point).
    Zero,
    /// The all-ones form `x -> sum x_i` (a fixed point).
    AllOnes,
    /// Value sum 0, not a fixed point.
    Orbit0,
    /// Value sum 1, not a fixed point.
    Orbit1,
}

impl FormClass {
    #[must_use]
    pub const fn label(self) -> &'static str {
        match self {
            FormClass::Zero => "theta0",
            FormClass::AllOnes => "theta1",
            FormClass::Orbit0 => "orbit0",
            FormClass::Orbit1 => "orbit1",
        }
    }

    #[must_use]
    pub const fn is_fixed(self) -> bool {
        matches!(self, FormClass::Zero | FormClass::AllOnes)
    }
}

#[must_use]
pub fn classify_form(theta: &GF2Vec) -> FormClass {
    if theta.is_zero() {
        FormClass::Zero
    } else if theta.weight() == theta.len() {
        FormClass::AllOnes
    } else if theta.parity() == 0 {
        FormClass::Orbit0
    } else {
        FormClass::Orbit1
    }
}

/// Adjacent coordinate transpositions plus every weight-4 transvection:
/// generates the full orthogonal group (verified against enumeration for
/// dimensions up to 6; weight-2 transvections are the transpositions).
#[must_use]
pub fn orth_generators(n: usize) -> Vec<Isometry> {
    let space = FormSpace::dot(n);
    let mut gens = Vec::new();
    for i in 0..n.saturating_sub(1) {
        gens.push(coordinate_transposition(&space, i, i + 1));
    }
    for support in combinations(n, 4) {
        let mut y = GF2Vec::zeros(n);
        for i in support {
            y.set(i, 1);
        }
        gens.push(transvection(&space, &y).expect("even weight is isotropic"));
    }
    gens
}

/// The isometry exchanging coordinates `i` and `j`.
#[must_use]
pub fn coordinate_transposition(space: &Arc<FormSpace>, i: usize, j: usize) -> Isometry {
    let n = space.dim();
    let mut m = GF2Mat::identity(n);
    m.set(i, i, 0);
    m.set(j, j, 0);
    m.set(i, j, 1);
    m.set(j, i, 1);
    Isometry::new(Arc::clone(space), m).expect("transpositions preserve the dot product")
}

/// The isometry applying a permutation of the coordinates: `perm[k]` is the
/// coordinate that position `k` reads from, i.e. basis vector `k` maps to
/// basis vector `perm[k]`.
#[must_use]
pub fn permutation_isometry(space: &Arc<FormSpace>, perm: &[usize]) -> Isometry {
    let n = space.dim();
    assert_eq!(perm.len(), n);
    let mut m = GF2Mat::zeros(n, n);
    for (k, &image) in perm.iter().enumerate() {
        m.set(image, k, 1);
    }
    Isometry::new(Arc::clone(space), m).expect("permutations preserve the dot product")
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut current: Vec<usize> = (0..k).collect();
    loop {
        out.push(current.clone());
        // advance to the next ascending k-subset
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if current[i] != i + n - k {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        current[i] += 1;
        for j in i + 1..k {
            current[j] = current[j - 1] + 1;
        }
    }
}

fn orbit_label(psi_values: &GF2Vec, params: &SectionParams) -> String {
    let g = params.g();
    let theta = psi_values.prefix(g + 1).xor(params.rho());
    match classify_form(&theta) {
        FormClass::Zero => "psi0".into(),
        FormClass::AllOnes => "psi1".into(),
        FormClass::Orbit0 => "sum=0".into(),
        FormClass::Orbit1 => "sum=1".into(),
    }
}

fn classify_a1_with(
    g: usize,
    params: &SectionParams,
    gens: &[Isometry],
) -> Result<OrbitReport> {
    let points: Vec<GF2Vec> = specials(TotalN { g })
        .iter()
        .map(|psi| psi.values().clone())
        .collect();
    // one lift per generator, keyed by the generator matrix
    let lifted: HashMap<GF2Mat, GF2Mat> = gens
        .iter()
        .map(|f| {
            let lift = lift_f_sigma(f, params).expect("generators live on the right space");
            (f.matrix().clone(), lift.mat)
        })
        .collect();
    let act = |p: &GF2Vec, f: &Isometry| lifted[f.matrix()].pullback(p);
    let mut report = orbit_decompose(&points, gens, act, |p| orbit_label(p, params))?;
    report.sort_by_size_then_member();
    Ok(report)
}

/// Orbit decomposition of all special coverings under the orthogonal action,
/// computed with the generator set of [`orth_generators`]. Orbits are
/// labeled `psi0` / `psi1` (the fixed points) and `sum=0` / `sum=1`.
pub fn classify_a1(g: usize, params: &SectionParams) -> Result<OrbitReport> {
    if params.g() != g {
        return Err(Error::Shape("section parameters have the wrong genus".into()));
    }
    classify_a1_with(g, params, &orth_generators(g + 1))
}

/// Same orbit decomposition driven by the fully enumerated group (guarded);
/// used to validate the generator-driven route.
pub fn classify_a1_full(g: usize, params: &SectionParams) -> Result<OrbitReport> {
    let full = enumerate_isometries(&FormSpace::dot(g + 1))?;
    classify_a1_with(g, params, &full)
}

/// The orbit sizes the parity rule predicts, sorted ascending: the two fixed
/// points, then for even g two classes of 2^g - 1, for odd g classes of
/// 2^g - 2 and 2^g (empty classes omitted).
#[must_use]
pub fn expected_a1_sizes(g: usize) -> Vec<usize> {
    let half = 1usize << g;
    let mut sizes = vec![1, 1];
    if g.is_multiple_of(2) {
        sizes.push(half - 1);
        sizes.push(half - 1);
    } else {
        if half > 2 {
            sizes.push(half - 2);
        }
        sizes.push(half);
    }
    sizes.sort_unstable();
    sizes
}

/// One explicit equivalence between two linear forms of the same class:
/// a product of coordinate permutations and isotropic transvections `T`
/// with `theta . T = theta2`. `None` when the classes differ.
pub fn equivalence_witness(theta: &GF2Vec, theta2: &GF2Vec) -> Result<Option<Isometry>> {
    if theta.len() != theta2.len() {
        return Err(Error::Shape(format!(
            "forms have different lengths {} and {}",
            theta.len(),
            theta2.len()
        )));
    }
    let space = FormSpace::dot(theta.len());
    if theta == theta2 {
        return Ok(Some(Isometry::identity(space)));
    }
    let class = classify_form(theta);
    if class != classify_form(theta2) || class.is_fixed() {
        return Ok(None);
    }
    let left = reduction_to_canonical(&space, theta);
    let right = reduction_to_canonical(&space, theta2);
    debug_assert_eq!(
        left.matrix().pullback(theta),
        right.matrix().pullback(theta2),
        "both reductions reach one canonical form"
    );
    Ok(Some(left.compose(&right.inverse())))
}

/// An isometry R with `theta . R` in canonical shape `(1, lambda, 0, .., 0)`:
/// first a permutation bringing a zero value to position 0 and a one value
/// to position 1, then the isotropic transvection from the classification
/// proof.
fn reduction_to_canonical(space: &Arc<FormSpace>, theta: &GF2Vec) -> Isometry {
    let n = space.dim();
    let zero_at = (0..n).find(|&i| theta.get(i) == 0).expect("not the all-ones form");
    let one_at = (0..n).find(|&i| theta.get(i) == 1).expect("not the zero form");
    let mut perm = vec![usize::MAX; n];
    perm[0] = zero_at;
    perm[1] = one_at;
    let mut rest: Vec<usize> = (0..n).filter(|&i| i != zero_at && i != one_at).collect();
    rest.sort_unstable();
    for (slot, value) in perm.iter_mut().skip(2).zip(rest) {
        *slot = value;
    }
    let p = permutation_isometry(space, &perm);
    let permuted = p.matrix().pullback(theta);
    debug_assert_eq!(permuted.get(0), 0);
    debug_assert_eq!(permuted.get(1), 1);
    let lambda = (2..n).fold(0u8, |acc, i| acc ^ permuted.get(i));
    let mut a = GF2Vec::zeros(n);
    a.set(0, 1);
    a.set(1, 1 ^ lambda);
    for i in 2..n {
        a.set(i, permuted.get(i));
    }
    let t = transvection(space, &a).expect("constructed vector has even weight");
    p.compose(&t)
}

/// Monomorphism check for the lift: the lift respects products and is
/// injective over the whole enumerated orthogonal group, and satisfies its
/// defining relations on the section images.
#[must_use]
pub fn jn_check(g: usize, params: &SectionParams) -> CheckReport {
    let mut report = CheckReport::new("jn");
    let Some(group) = report.require_ok(
        enumerate_isometries(&FormSpace::dot(g + 1)),
        "enumerate orthogonal group",
    ) else {
        return report;
    };
    report.detail(format!("g={g}: group order {}", group.len()));
    let lifted: Vec<GF2Mat> = group
        .iter()
        .map(|f| lift_f_sigma(f, params).expect("valid input").mat)
        .collect();
    let distinct: HashSet<&GF2Mat> = lifted.iter().collect();
    report.require(distinct.len() == group.len(), || {
        "two group elements share one lift".into()
    });
    for (fa, la) in group.iter().zip(&lifted) {
        // defining relations on the section images of the basis
        for i in 0..=g {
            let vi = GF2Vec::unit(g + 1, i);
            let lhs = la.apply(&sigma_eval(params, &vi));
            let rhs = sigma_eval(params, &fa.apply(&vi));
            report.require(lhs == rhs, || {
                format!("defining relation fails for F={:?} at basis {i}", fa.matrix())
            });
        }
        for (fb, lb) in group.iter().zip(&lifted) {
            let prod = fa.compose(fb);
            let lifted_prod = lift_f_sigma(&prod, params).expect("valid input").mat;
            report.require((la * lb) == lifted_prod, || {
                format!(
                    "lift is not multiplicative for\n{}\nand\n{}",
                    fa.matrix(),
                    fb.matrix()
                )
            });
        }
    }
    report
}

/// The two distinguished coverings: value-sum identities over every choice
/// of the linear section.
#[must_use]
pub fn lemma01_check(g: usize) -> CheckReport {
    let mut report = CheckReport::new("01");
    for rho_k in 0..(1u64 << (g + 1)) {
        let rho = GF2Vec::from_counter_msb(rho_k, g + 1);
        let params = SectionParams::with_rho(g, rho.clone()).expect("valid length");
        let rho_sum = rho.parity();
        let psi0 = psi_from_theta(&GF2Vec::zeros(g + 1), &params).expect("valid");
        report.require(psi0.base_sum() == rho_sum, || {
            format!("g={g} rho={rho}: distinguished zero-form covering has wrong value sum")
        });
        let ones = GF2Vec::from_bits(&vec![1; g + 1]);
        let psi1 = psi_from_theta(&ones, &params).expect("valid");
        let expect = (((g + 1) & 1) as u8) ^ rho_sum;
        report.require(psi1.base_sum() == expect, || {
            format!("g={g} rho={rho}: distinguished all-ones covering has wrong value sum")
        });
    }
    report.detail(format!("g={g}: both identities hold for all {} rho", 1u64 << (g + 1)));
    report
}

/// Which distinguished non-fixed form a stabilizer check targets.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum AlphaClass {
    /// Values (1, 1, 0, .., 0): sum 0.
    Alpha0,
    /// Values (1, 0, .., 0): sum 1.
    Alpha1,
}

impl AlphaClass {
    #[must_use]
    pub fn form(self, n: usize) -> GF2Vec {
        let mut v = GF2Vec::zeros(n);
        v.set(0, 1);
        if self == AlphaClass::Alpha0 {
            v.set(1, 1);
        }
        v
    }
}

/// The theorem's generator list for the stabilizer of the target form.
/// For `Alpha1`: permutations of the last g coordinates, plus the weight-4
/// transvection on coordinates 1..4 once g >= 4. For `Alpha0`: the product
/// of the groups on coordinates {0,1} and {2..g}, plus the weight-4
/// transvection on coordinates 0..3 once g >= 3.
#[must_use]
pub fn stabilizer_generators(g: usize, which: AlphaClass) -> Vec<Isometry> {
    let n = g + 1;
    let space = FormSpace::dot(n);
    let mut gens = Vec::new();
    match which {
        AlphaClass::Alpha1 => {
            for i in 1..n.saturating_sub(1) {
                gens.push(coordinate_transposition(&space, i, i + 1));
            }
            if g >= 4 {
                gens.push(
                    transvection(&space, &GF2Vec::from_bits(&weight4_at(n, 1)))
                        .expect("isotropic"),
                );
            }
        }
        AlphaClass::Alpha0 => {
            gens.push(coordinate_transposition(&space, 0, 1));
            for i in 2..n.saturating_sub(1) {
                gens.push(coordinate_transposition(&space, i, i + 1));
            }
            if g >= 5 {
                // the factor on coordinates 2..g needs its own weight-4
                // transvections once it has dimension at least 4
                for support in combinations(g - 1, 4) {
                    let mut y = GF2Vec::zeros(n);
                    for s in support {
                        y.set(s + 2, 1);
                    }
                    gens.push(transvection(&space, &y).expect("isotropic"));
                }
            }
            if g >= 3 {
                gens.push(
                    transvection(&space, &GF2Vec::from_bits(&weight4_at(n, 0)))
                        .expect("isotropic"),
                );
            }
        }
    }
    gens
}

fn weight4_at(n: usize, start: usize) -> Vec<u8> {
    let mut bits = vec![0u8; n];
    for b in bits.iter_mut().skip(start).take(4) {
        *b = 1;
    }
    bits
}

/// Stabilizer statement: the filtered stabilizer of the target form equals
/// the closure of the theorem's generator list, the transvection generator
/// is needed exactly when the theorem includes it, and the fixed-vector
/// characterizations hold.
#[must_use]
pub fn stabilizer_check(g: usize, which: AlphaClass) -> CheckReport {
    let mut report = CheckReport::new("1234");
    let n = g + 1;
    let Some(group) = report.require_ok(
        enumerate_isometries(&FormSpace::dot(n)),
        "enumerate orthogonal group",
    ) else {
        return report;
    };
    let alpha = which.form(n);
    let stab: HashSet<GF2Mat> = group
        .iter()
        .filter(|f| f.matrix().pullback(&alpha) == alpha)
        .map(|f| f.matrix().clone())
        .collect();

    // fixed-vector characterization
    let fixed_vector = match which {
        AlphaClass::Alpha1 => GF2Vec::unit(n, 0),
        AlphaClass::Alpha0 => {
            let mut v = GF2Vec::zeros(n);
            v.set(0, 1);
            v.set(1, 1);
            v
        }
    };
    let by_fixed: HashSet<GF2Mat> = group
        .iter()
        .filter(|f| f.apply(&fixed_vector) == fixed_vector)
        .map(|f| f.matrix().clone())
        .collect();
    report.require(stab == by_fixed, || {
        format!("g={g}: stabilizer differs from maps fixing {fixed_vector}")
    });

    let mut gens = stabilizer_generators(g, which);
    if gens.is_empty() {
        gens.push(Isometry::identity(FormSpace::dot(n)));
    }
    let closed = crate::form::closure(&gens).expect("generators share one space");
    let closed_set: HashSet<GF2Mat> = closed.iter().map(|f| f.matrix().clone()).collect();
    report.detail(format!(
        "g={g} {:?}: stabilizer order {}, generator closure order {}",
        which,
        stab.len(),
        closed_set.len()
    ));
    report.require(closed_set == stab, || {
        format!(
            "g={g} {:?}: generator closure (order {}) differs from stabilizer (order {})",
            which,
            closed_set.len(),
            stab.len()
        )
    });

    // the transvection generator is required exactly when the statement
    // includes it
    let threshold = match which {
        AlphaClass::Alpha1 => 4,
        AlphaClass::Alpha0 => 3,
    };
    if g >= threshold {
        // drop exactly the distinguished weight-4 transvection and confirm
        // the closure shrinks
        let distinguished = transvection(
            &FormSpace::dot(n),
            &GF2Vec::from_bits(&weight4_at(n, usize::from(which == AlphaClass::Alpha1))),
        )
        .expect("isotropic");
        let without: Vec<Isometry> = gens
            .iter()
            .filter(|f| **f != distinguished)
            .cloned()
            .collect();
        let smaller = crate::form::closure(&without).expect("generators share one space");
        report.require(smaller.len() < stab.len(), || {
            format!("g={g} {:?}: the weight-4 transvection generator is redundant", which)
        });
    }

    if which == AlphaClass::Alpha1 {
        // restriction to the fixed hyperplane coordinates is a bijection
        // onto the orthogonal group one dimension down
        let restricted: HashSet<GF2Mat> = stab.iter().map(|m| m.block(1, 1, g, g)).collect();
        report.require(restricted.len() == stab.len(), || {
            format!("g={g}: restriction map is not injective")
        });
        if let Some(smaller) = report.require_ok(
            enumerate_isometries(&FormSpace::dot(g)),
            "enumerate restricted group",
        ) {
            let smaller_set: HashSet<GF2Mat> =
                smaller.iter().map(|f| f.matrix().clone()).collect();
            report.require(restricted == smaller_set, || {
                format!("g={g}: restriction map is not onto")
            });
        }
    }
    report
}

/// Brute verification that the enumerated orthogonal group fixes the
/// all-ones vector (dimension g+1), and that the group one dimension down
/// acts transitively on the two distinguished vector classes.
#[must_use]
pub fn lemma_checks(g: usize) -> CheckReport {
    let mut report = CheckReport::new("uti+trans");
    let n = g + 1;
    let Some(group) = report.require_ok(
        enumerate_isometries(&FormSpace::dot(n)),
        "enumerate orthogonal group",
    ) else {
        return report;
    };
    let ones = GF2Vec::from_bits(&vec![1; n]);
    for f in &group {
        report.require(f.apply(&ones) == ones, || {
            format!("g={g}: {:?} moves the all-ones vector", f.matrix())
        });
    }
    report.detail(format!("uti: all {} maps fix the all-ones vector (dim {n})", group.len()));

    // transitivity on H0 and H1 inside dimension g
    if g >= 1 {
        let e = GF2Vec::from_bits(&vec![1; g]);
        let all: Vec<GF2Vec> = (0..(1u64 << g)).map(|k| GF2Vec::from_counter_msb(k, g)).collect();
        let h: Vec<GF2Vec> = all
            .into_iter()
            .filter(|x| !x.is_zero() && *x != e)
            .collect();
        let h0: Vec<GF2Vec> = h.iter().filter(|x| x.dot(&e) == 0).cloned().collect();
        let h1: Vec<GF2Vec> = h.iter().filter(|x| x.dot(&e) == 1).cloned().collect();
        let Some(small_group) = report.require_ok(
            enumerate_isometries(&FormSpace::dot(g)),
            "enumerate acting group",
        ) else {
            return report;
        };
        for (name, set) in [("H0", h0), ("H1", h1)] {
            if set.is_empty() {
                report.detail(format!("trans: {name} empty at g={g}"));
                continue;
            }
            let orbits = orbit_decompose(
                &set,
                &small_group,
                |x, f| f.apply(x),
                |_| String::new(),
            );
            match orbits {
                Ok(rep) => {
                    report.require(rep.orbits.len() == 1, || {
                        format!("trans: {name} splits into {} orbits at g={g}", rep.orbits.len())
                    });
                    report.detail(format!(
                        "trans: {name} at g={g} is a single orbit of size {}",
                        rep.orbits[0].size()
                    ));
                }
                Err(e) => report.require(false, || format!("trans: {name} at g={g}: {e}")),
            }
        }
    }
    report
}
