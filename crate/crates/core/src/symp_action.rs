//! The symplectic side: lifts through the quadratic section, the subgroups
//! preserving the pulled-back covering family, transvection generation and
//! factorization, and the Arf classification of the family.
//!
//! A symplectic map f of the cover surface lifts to the total space as
//! `[[L, 0], [b, 1]]` with `b_j = sum_i a_ij r_i + S_j + r_j` where
//! `S_j = sum_p a_{2p+1,j} a_{2p,j}` collects the pairwise column products.
//! The subgroup preserving the pulled-back family acts on it with orbits
//! classified by the Arf invariant of `phi . s`; the transvections with
//! vector in the projection kernel and orthogonal to `t` generate a small
//! subgroup realizing the same orbits.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::form::{
    enumerate_isometries, pair, transvection, FormKind, FormSpace, Isometry,
};
use crate::gf2::{GF2Mat, GF2Vec};
use crate::orbit::{orbit_decompose, OrbitReport};
use crate::quad::{arf, QuadForm};
use crate::surfaces::{
    epi_set, in_epi_set, Host, OSurface, SectionParams, SpecialCovering, TotalO,
};
use crate::verify::CheckReport;

/// Guard for classifying through the fully enumerated symplectic group.
pub const GS_ENUM_GUARD_G: usize = 3;

/// Lift of a symplectic map to the total space of the pulled-back bundle:
/// block shape `[[L, 0], [b, 1]]` on the basis (c̄_1..c̄_{2g}, h).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftedSymp {
    g: usize,
    mat: GF2Mat,
}

impl LiftedSymp {
    #[must_use]
    pub const fn g(&self) -> usize {
        self.g
    }

    #[must_use]
    pub fn matrix(&self) -> &GF2Mat {
        &self.mat
    }

    /// The symplectic block acting on the barred cover classes.
    #[must_use]
    pub fn base_block(&self) -> GF2Mat {
        self.mat.block(0, 0, 2 * self.g, 2 * self.g)
    }

    /// The fiber-defect row `b`.
    #[must_use]
    pub fn defect_row(&self) -> GF2Vec {
        self.mat.row(2 * self.g).prefix(2 * self.g)
    }
}

/// Lifts a symplectic map (pairing basis) through the quadratic section.
pub fn f_s_matrix(f: &Isometry, params: &SectionParams) -> Result<LiftedSymp> {
    let g = params.g();
    if f.space().kind() != FormKind::Symplectic || f.space().dim() != 2 * g {
        return Err(Error::Precondition(format!(
            "lift expects a symplectic map of dimension {}",
            2 * g
        )));
    }
    let l = f.matrix();
    let mut mat = GF2Mat::zeros(2 * g + 1, 2 * g + 1);
    mat.set_block(0, 0, l);
    let mut defect = l.pullback(params.r()).xor(params.r());
    for j in 0..2 * g {
        let mut s_j = 0u8;
        for p in 0..g {
            s_j ^= l.get(2 * p + 1, j) & l.get(2 * p, j);
        }
        if s_j == 1 {
            defect.flip(j);
        }
    }
    for j in 0..2 * g {
        mat.set(2 * g, j, defect.get(j));
    }
    mat.set(2 * g, 2 * g, 1);
    Ok(LiftedSymp { g, mat })
}

/// The action on coverings of the cover side: precomposition with the lift.
pub fn act_symp(
    phi: &SpecialCovering,
    f: &Isometry,
    params: &SectionParams,
) -> Result<SpecialCovering> {
    let Host::O(total) = phi.host() else {
        return Err(Error::WrongHost(
            "the symplectic action acts on coverings over the orientation cover".into(),
        ));
    };
    if total.g != params.g() {
        return Err(Error::Shape(format!(
            "covering genus {} does not match section genus {}",
            total.g,
            params.g()
        )));
    }
    let lifted = f_s_matrix(f, params)?;
    phi.pullback_through(lifted.matrix(), phi.host())
}

fn in_kernel_span(g: usize, w: &GF2Vec) -> bool {
    // membership in span(ē'_1..ē'_g): fiber coordinate zero, paired
    // coordinates equal
    if w.get(2 * g) == 1 {
        return false;
    }
    (0..g).all(|p| w.get(2 * p) == w.get(2 * p + 1))
}

/// Membership in the subgroup whose lifts preserve the kernel of the
/// total-space covering projection (equivalently: preserve the pulled-back
/// covering family).
pub fn in_gs(f: &Isometry, params: &SectionParams) -> Result<bool> {
    let g = params.g();
    let lifted = f_s_matrix(f, params)?;
    let total = TotalO { g };
    Ok((1..=g).all(|i| in_kernel_span(g, &lifted.matrix().apply(&total.e_prime_bar(i)))))
}

/// Membership in the transvection subgroup: the image of `f - id` pairs to
/// zero with the projection kernel and with `t`.
pub fn in_kt(f: &Isometry, params: &SectionParams) -> Result<bool> {
    let g = params.g();
    if f.space().dim() != 2 * g {
        return Err(Error::Shape("map has the wrong dimension".into()));
    }
    let surface = OSurface::new(g);
    let t = params.t_vec();
    for j in 0..2 * g {
        let w = f.matrix().col(j).xor(&GF2Vec::unit(2 * g, j));
        for i in 1..=g {
            if pair(surface.space(), &w, &surface.e_prime(i))? == 1 {
                return Ok(false);
            }
        }
        if pair(surface.space(), &w, &t)? == 1 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The generating transvections of the subgroup: every `T_Y` with `Y` a
/// nonzero kernel vector pairing to zero with `t`, ascending.
#[must_use]
pub fn kt_generators(g: usize, params: &SectionParams) -> Vec<Isometry> {
    let surface = OSurface::new(g);
    let t = params.t_vec();
    let mut gens = Vec::new();
    for k in 1..(1u64 << g) {
        let coeffs = GF2Vec::from_counter_msb(k, g);
        let mut y = GF2Vec::zeros(2 * g);
        for p in 0..g {
            if coeffs.get(p) == 1 {
                y.set(2 * p, 1);
                y.set(2 * p + 1, 1);
            }
        }
        if pair(surface.space(), &y, &t).expect("same dimension") == 0 {
            gens.push(transvection(surface.space(), &y).expect("symplectic transvection"));
        }
    }
    gens
}

/// Writes a symplectic map with `Im(f - id)` orthogonal to the span of
/// `v_basis` as a product of transvections whose vectors are orthogonal to
/// that span: returns `y_1..y_m` with `T_{y_1} . ... . T_{y_m} = f`.
///
/// The recursion peels one transvection per step: when some vector `z` has
/// `f(z).z = 1` the difference `f(z) - z` strictly shrinks the moved
/// subspace; otherwise one auxiliary peel creates such a vector. Choices are
/// resolved in ascending bitstring order. A step-count guard of 4g turns
/// impossible non-termination into a defect error.
pub fn factorize_transvections(f: &Isometry, v_basis: &[GF2Vec]) -> Result<Vec<GF2Vec>> {
    let space = f.space();
    if space.kind() != FormKind::Symplectic {
        return Err(Error::Precondition(
            "transvection factorization runs over a symplectic space".into(),
        ));
    }
    let n = space.dim();
    for v in v_basis {
        if v.len() != n {
            return Err(Error::Shape("subspace basis vector has the wrong length".into()));
        }
    }
    // precondition: Im(f - id) is orthogonal to the subspace
    for j in 0..n {
        let w = f.matrix().col(j).xor(&GF2Vec::unit(n, j));
        for v in v_basis {
            if pair(space, &w, v)? == 1 {
                return Err(Error::Precondition(
                    "the moved image is not orthogonal to the given subspace".into(),
                ));
            }
        }
    }
    let guard = 2 * n; // 4g
    let mut factors = Vec::new();
    let mut current = f.clone();
    while !current.is_identity() {
        if factors.len() >= guard {
            return Err(Error::Defect(
                "transvection factorization exceeded its step guard".into(),
            ));
        }
        let vector_of = |k: u64| GF2Vec::from_counter_msb(k, n);
        let mut peeled = None;
        for k in 1..(1u64 << n) {
            let z = vector_of(k);
            if pair(space, &current.apply(&z), &z)? == 1 {
                peeled = Some(current.apply(&z).xor(&z));
                break;
            }
        }
        let y = match peeled {
            Some(y) => y,
            None => {
                // every f(z).z vanishes: peel the first moved difference,
                // which hands the next round a vector with product 1
                (1..(1u64 << n))
                    .map(vector_of)
                    .map(|u| current.apply(&u).xor(&u))
                    .find(|e| !e.is_zero())
                    .ok_or_else(|| Error::Defect("non-identity map moves nothing".into()))?
            }
        };
        let t = transvection(space, &y)?;
        current = t.compose(&current);
        factors.push(y);
    }
    Ok(factors)
}

/// How the orbit decomposition of the pulled-back family is driven.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum EpiMode {
    /// Generator-driven: the kernel transvections orthogonal to `t`.
    Kt,
    /// Full enumeration of the symplectic group, filtered to the
    /// family-preserving subgroup. Guarded.
    Gs,
    /// Both routes; asserts the partitions coincide.
    Both,
}

impl std::str::FromStr for EpiMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "kt" => Ok(EpiMode::Kt),
            "gs" => Ok(EpiMode::Gs),
            "both" => Ok(EpiMode::Both),
            other => Err(Error::Parse(format!("unknown mode {other:?} (kt|gs|both)"))),
        }
    }
}

fn epi_points(g: usize) -> Vec<GF2Vec> {
    epi_set(g).iter().map(|m| m.phi.values().clone()).collect()
}

fn arf_label(g: usize, phi_values: &GF2Vec, params: &SectionParams) -> String {
    let phi = SpecialCovering::new(Host::O(TotalO { g }), phi_values.clone())
        .expect("family members are special");
    let (value, _) = arf_closed_form(&phi, params).expect("family members admit the invariant");
    format!("arf={value}")
}

fn gs_members(g: usize, params: &SectionParams, guard_g: usize) -> Result<Vec<Isometry>> {
    if g > guard_g {
        return Err(Error::TooLarge {
            dim: 2 * g,
            guard: 2 * guard_g,
        });
    }
    let all = enumerate_isometries(&FormSpace::symplectic(g))?;
    let mut members = Vec::new();
    for f in all {
        if in_gs(&f, params)? {
            members.push(f);
        }
    }
    Ok(members)
}

/// Orbit decomposition of the pulled-back family under the chosen route,
/// orbits labeled by the Arf invariant, sorted by (size, smallest member).
pub fn classify_epi(g: usize, params: &SectionParams, mode: EpiMode) -> Result<OrbitReport> {
    classify_epi_guarded(g, params, mode, GS_ENUM_GUARD_G)
}

/// Same with an explicit genus guard for the full-enumeration route.
pub fn classify_epi_guarded(
    g: usize,
    params: &SectionParams,
    mode: EpiMode,
    gs_guard_g: usize,
) -> Result<OrbitReport> {
    if params.g() != g {
        return Err(Error::Shape("section parameters have the wrong genus".into()));
    }
    let points = epi_points(g);
    let label = |p: &GF2Vec| arf_label(g, p, params);
    let run = |gens: &[Isometry]| -> Result<OrbitReport> {
        // one lift per generator, keyed by the generator matrix
        let lifted: std::collections::HashMap<GF2Mat, GF2Mat> = gens
            .iter()
            .map(|f| {
                let lift = f_s_matrix(f, params).expect("generators live on the right space");
                (f.matrix().clone(), lift.mat)
            })
            .collect();
        let act = |p: &GF2Vec, f: &Isometry| lifted[f.matrix()].pullback(p);
        let mut report = orbit_decompose(&points, gens, act, label)?;
        report.sort_by_size_then_member();
        Ok(report)
    };
    match mode {
        EpiMode::Kt => run(&kt_generators(g, params)),
        EpiMode::Gs => run(&gs_members(g, params, gs_guard_g)?),
        EpiMode::Both => {
            let by_kt = run(&kt_generators(g, params))?;
            let by_gs = run(&gs_members(g, params, gs_guard_g)?)?;
            if !by_kt.same_partition(&by_gs) {
                return Err(Error::Defect(
                    "generator-driven and filtered orbit partitions differ".into(),
                ));
            }
            Ok(by_kt)
        }
    }
}

/// The Arf invariant of `phi . s` computed twice: through the basis-sum
/// definition over the pairs `(e_i, e'_i)`, and through the closed form
/// `r_const + phi(t̄)`. The two components agree.
pub fn arf_closed_form(phi: &SpecialCovering, params: &SectionParams) -> Result<(u8, u8)> {
    let g = params.g();
    let Host::O(total) = phi.host() else {
        return Err(Error::WrongHost(
            "the Arf identity applies to coverings over the orientation cover".into(),
        ));
    };
    if total.g != g {
        return Err(Error::Shape("covering genus does not match section genus".into()));
    }
    if !in_epi_set(phi) {
        return Err(Error::NotInduced);
    }
    let surface = OSurface::new(g);
    // q(c_i) = phi(s(c_i)) = phi(c̄_i) + r_i
    let mut basis_values = GF2Vec::zeros(2 * g);
    for i in 0..2 * g {
        basis_values.set(i, phi.value(i) ^ params.r().get(i));
    }
    let q = QuadForm::new(Arc::clone(surface.space()), basis_values)?;
    let pairs: Vec<(GF2Vec, GF2Vec)> = (1..=g)
        .map(|i| (surface.e(i), surface.e_prime(i)))
        .collect();
    let by_basis = arf(&q, &pairs)?;
    let by_formula = params.r_const() ^ phi.eval(&params.t_bar());
    Ok((by_basis, by_formula))
}

/// Containment of the transvection subgroup in the family-preserving
/// subgroup, plus the fixed-image property of the kernel-transvection lifts.
#[must_use]
pub fn kt_in_gs_check(g: usize, params: &SectionParams) -> CheckReport {
    let mut report = CheckReport::new("kt-in-gs");
    let members: Vec<Isometry> = if g <= 2 {
        let all = match enumerate_isometries(&FormSpace::symplectic(g)) {
            Ok(v) => v,
            Err(e) => {
                report.require(false, || format!("enumerate symplectic group: {e}"));
                return report;
            }
        };
        all.into_iter()
            .filter(|f| in_kt(f, params).expect("same dimension"))
            .collect()
    } else {
        crate::form::closure(&kt_generators(g, params)).expect("generators share one space")
    };
    report.detail(format!("g={g}: checking {} members", members.len()));
    for f in &members {
        match in_gs(f, params) {
            Ok(true) => {}
            Ok(false) => report.require(false, || {
                format!("member outside the family-preserving subgroup:\n{}", f.matrix())
            }),
            Err(e) => report.require(false, || e.to_string()),
        }
    }
    // lifts of kernel transvections fix the barred kernel basis pointwise
    // (the displayed generator-image identity, read on the kernel basis)
    let surface = OSurface::new(g);
    let total = TotalO { g };
    for k in 1..(1u64 << g) {
        let coeffs = GF2Vec::from_counter_msb(k, g);
        let mut y = GF2Vec::zeros(2 * g);
        for p in 0..g {
            if coeffs.get(p) == 1 {
                y.set(2 * p, 1);
                y.set(2 * p + 1, 1);
            }
        }
        let t_y = transvection(surface.space(), &y).expect("symplectic");
        let lifted = f_s_matrix(&t_y, params).expect("valid");
        for i in 1..=g {
            let ep_bar = total.e_prime_bar(i);
            report.require(lifted.matrix().apply(&ep_bar) == ep_bar, || {
                format!("lift of the kernel transvection with vector {y} moves a barred kernel class")
            });
        }
    }
    report
}

/// Explicit transvection connecting two coverings of the non-orientable
/// side through the pulled-back family: with `delta_j` the value difference
/// on `v̄_j`, the connecting vector is `V = sum_j (delta_0 + delta_j) e'_j`
/// and the witness exists precisely when `sum_j beta_j (delta_0 + delta_j)`
/// vanishes (both sums over j = 1..g). Returns the transvection, or `None`
/// when the obstruction is nonzero.
pub fn cor_witness(
    psi: &SpecialCovering,
    psi2: &SpecialCovering,
    params: &SectionParams,
) -> Result<Option<Isometry>> {
    let g = params.g();
    let (Host::N(a), Host::N(b)) = (psi.host(), psi2.host()) else {
        return Err(Error::WrongHost(
            "the witness connects coverings over the non-orientable side".into(),
        ));
    };
    if a.g != g || b.g != g {
        return Err(Error::Shape("covering genus does not match section genus".into()));
    }
    let delta = psi.base_values().xor(&psi2.base_values());
    let d0 = delta.get(0);
    let mut obstruction = 0u8;
    let surface = OSurface::new(g);
    let mut v = GF2Vec::zeros(2 * g);
    for j in 1..=g {
        let dj = d0 ^ delta.get(j);
        obstruction ^= params.beta(j) & dj;
        if dj == 1 {
            v.xor_assign(&surface.e_prime(j));
        }
    }
    if obstruction == 1 {
        return Ok(None);
    }
    let witness = transvection(surface.space(), &v)?;
    debug_assert!(in_kt(&witness, params)?);
    Ok(Some(witness))
}
