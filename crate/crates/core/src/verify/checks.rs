//! Implementations of the named checks.
//!
//! Sampling is seeded and deterministic; exhaustive ranges follow the
//! enumeration guards. Each check narrows through [`VerifyOptions`]: an
//! explicit genus restricts the range, explicit section parameters replace
//! the parameter sweeps.

use std::collections::BTreeSet;
use std::sync::Arc;

use super::{CheckReport, VerifyOptions};
use crate::bridge::{
    self, is_lift_pair, is_realizable, lemma_gene_extend, lift_to_symp, project_to_orth,
    s_matrix, TotalAut,
};
use crate::form::{enumerate_isometries, is_isometry, pair, transvection, FormSpace, Isometry};
use crate::gf2::{GF2Mat, GF2Vec};
use crate::orbit::orbit_decompose;
use crate::orth_action::{
    classify_a1, classify_a1_full, classify_form, equivalence_witness, expected_a1_sizes,
    jn_check, lemma01_check, lemma_checks, psi_from_theta, stabilizer_check, AlphaClass,
    FormClass,
};
use crate::quad::QuadForm;
use crate::rng::SplitMix64;
use crate::surfaces::{
    epi_set, in_epi_set, presentation, s_eval, specials, tilde_pi_star, OSurface, SectionParams,
    SpecialCovering, TotalN, TotalO,
};
use crate::symp_action::{
    act_symp, arf_closed_form, classify_epi, cor_witness, f_s_matrix, factorize_transvections,
    in_gs, in_kt, kt_generators, kt_in_gs_check, EpiMode,
};

fn rho_values(g: usize, opts: &VerifyOptions, sample: usize, seed: u64) -> Vec<GF2Vec> {
    if let Some(rho) = &opts.rho {
        if rho.len() == g + 1 {
            return vec![rho.clone()];
        }
    }
    let total = 1u64 << (g + 1);
    if total <= sample as u64 {
        return (0..total).map(|k| GF2Vec::from_counter_msb(k, g + 1)).collect();
    }
    let mut rng = SplitMix64::new(seed ^ g as u64);
    let mut seen = BTreeSet::new();
    seen.insert(GF2Vec::zeros(g + 1));
    while seen.len() < sample {
        seen.insert(rng.vector(g + 1));
    }
    seen.into_iter().collect()
}

fn r_values(g: usize, opts: &VerifyOptions, sample: usize, seed: u64) -> Vec<GF2Vec> {
    if let Some(r) = &opts.r {
        if r.len() == 2 * g {
            return vec![r.clone()];
        }
    }
    let total = 1u64 << (2 * g);
    if total <= sample as u64 {
        return (0..total).map(|k| GF2Vec::from_counter_msb(k, 2 * g)).collect();
    }
    let mut rng = SplitMix64::new(seed ^ (g as u64).rotate_left(7));
    let mut seen = BTreeSet::new();
    seen.insert(GF2Vec::zeros(2 * g));
    while seen.len() < sample {
        seen.insert(rng.vector(2 * g));
    }
    seen.into_iter().collect()
}

fn random_symplectic(g: usize, rng: &mut SplitMix64) -> Isometry {
    let space = FormSpace::symplectic(g);
    let mut f = Isometry::identity(Arc::clone(&space));
    for _ in 0..10 {
        f = f.compose(&transvection(&space, &rng.nonzero_vector(2 * g)).unwrap());
    }
    f
}

/// Presentations: the relator exponent equals the value-sum parity, two
/// presentations share their exponent exactly when the value sums agree,
/// and the embedding data reads off the covering values.
pub fn check_kernon(opts: &VerifyOptions) -> CheckReport {
    let mut report = CheckReport::new("kernon");
    for g in opts.genus_range(5) {
        let all = specials(TotalN { g });
        for psi in &all {
            let p = match presentation(psi) {
                Ok(p) => p,
                Err(e) => {
                    report.require(false, || e.to_string());
                    return report;
                }
            };
            report.require(p.epsilon() == psi.base_sum(), || {
                format!("g={g} psi={}: exponent differs from the value sum", psi.bitstring())
            });
            for (i, &e) in p.lift_exponents().iter().enumerate() {
                report.require(e == psi.value(i), || {
                    format!("g={g} psi={}: embedding exponent {i} wrong", psi.bitstring())
                });
            }
            report.require(p.generators().len() == g + 2, || {
                format!("g={g}: wrong generator count")
            });
        }
        for psi in &all {
            for psi2 in &all {
                let same_eps = presentation(psi).unwrap().epsilon()
                    == presentation(psi2).unwrap().epsilon();
                report.require(same_eps == (psi.base_sum() == psi2.base_sum()), || {
                    format!(
                        "g={g}: exponent equality disagrees with sum equality for {} vs {}",
                        psi.bitstring(),
                        psi2.bitstring()
                    )
                });
            }
        }
        report.detail(format!("g={g}: {} presentations consistent", all.len()));
    }
    report
}

/// The lift of the orthogonal group into the total-space automorphisms is a
/// monomorphism, for several section choices.
pub fn check_jn(opts: &VerifyOptions) -> CheckReport {
    let mut report = CheckReport::new("jn");
    for g in opts.genus_range(4) {
        let sample = if g >= 4 { 3 } else { 9 };
        for rho in rho_values(g, opts, sample, 0x1111) {
            let params = SectionParams::with_rho(g, rho.clone()).expect("length");
            let sub = jn_check(g, &params);
            report.require(sub.passed, || {
                format!("g={g} rho={rho}: {}", sub.counterexample.unwrap_or_default())
            });
        }
        report.detail(format!("g={g}: monomorphism confirmed"));
    }
    report
}

/// Classification of linear forms: the four label classes are exactly the
/// orbits of the enumerated group, and the explicit witness transports
/// same-class forms.
pub fn check_mi(opts: &VerifyOptions) -> CheckReport {
    let mut report = CheckReport::new("mi");
    for g in opts.genus_range(4) {
        let n = g + 1;
        let group = match enumerate_isometries(&FormSpace::dot(n)) {
            Ok(v) => v,
            Err(e) => {
                report.require(false, || e.to_string());
                return report;
            }
        };
        let forms: Vec<GF2Vec> =
            (0..(1u64 << n)).map(|k| GF2Vec::from_counter_msb(k, n)).collect();
        let orbits = orbit_decompose(
            &forms,
            &group,
            |theta, f| f.matrix().pullback(theta),
            |theta| classify_form(theta).label().to_string(),
        );
        match orbits {
            Ok(rep) => {
                let mut labels: Vec<&str> = rep.orbits.iter().map(|o| o.label.as_str()).collect();
                labels.sort_unstable();
                let mut expected = vec!["theta0", "theta1", "orbit1"];
                if (1usize << g) > 2 {
                    expected.push("orbit0");
                }
                expected.sort_unstable();
                report.require(labels == expected, || format!("g={g}: orbit labels {labels:?}"));
                for orbit in &rep.orbits {
                    let expected_size = match classify_form(&orbit.members[0]) {
                        FormClass::Zero | FormClass::AllOnes => 1,
                        FormClass::Orbit0 => (1 << g) - 2 + usize::from(g % 2 == 0),
                        FormClass::Orbit1 => (1 << g) - usize::from(g % 2 == 0),
                    };
                    report.require(orbit.size() == expected_size, || {
                        format!("g={g}: class {} has size {}", orbit.label, orbit.size())
                    });
                }
            }
            Err(e) => report.require(false, || format!("g={g}: {e}")),
        }
    }
    // witness spot checks across a seeded sample
    let mut rng = SplitMix64::new(0x2222);
    let mut found = 0;
    while found < 200 {
        let g = 1 + rng.below(5);
        let a = rng.vector(g + 1);
        let b = rng.vector(g + 1);
        let ca = classify_form(&a);
        if ca != classify_form(&b) || ca.is_fixed() {
            continue;
        }
        found += 1;
        match equivalence_witness(&a, &b) {
            Ok(Some(w)) => {
                report.require(w.matrix().pullback(&a) == b, || {
                    format!("witness does not transport {a} to {b}")
                });
                report.require(is_isometry(&FormSpace::dot(g + 1), w.matrix()), || {
                    format!("witness for {a} vs {b} is not orthogonal")
                });
            }
            Ok(None) => report.require(false, || format!("missing witness for {a} vs {b}")),
            Err(e) => report.require(false, || e.to_string()),
        }
    }
    report.detail("200 sampled witnesses verified".to_string());
    report
}

/// Orbit profile of the covering action: two fixed points and the
/// parity-rule class sizes, against full enumeration where feasible.
pub fn check_thm1(opts: &VerifyOptions) -> CheckReport {
    let mut report = CheckReport::new("1");
    for g in opts.genus_range(5) {
        let rhos = rho_values(g, opts, if g <= 3 { usize::MAX } else { 16 }, 0x3333);
        let mut compared_full = 0;
        for (idx, rho) in rhos.iter().enumerate() {
            let params = SectionParams::with_rho(g, rho.clone()).expect("length");
            let orbits = match classify_a1(g, &params) {
                Ok(r) => r,
                Err(e) => {
                    report.require(false, || format!("g={g} rho={rho}: {e}"));
                    continue;
                }
            };
            report.require(orbits.sizes() == expected_a1_sizes(g), || {
                format!("g={g} rho={rho}: sizes {:?}", orbits.sizes())
            });
            let fixed: Vec<&str> = orbits
                .orbits
                .iter()
                .filter(|o| o.size() == 1)
                .map(|o| o.label.as_str())
                .collect();
            report.require(fixed == ["psi0", "psi1"] || fixed == ["psi1", "psi0"], || {
                format!("g={g} rho={rho}: fixed points {fixed:?}")
            });
            // the fixed coverings are exactly the two distinguished ones
            let psi0 = psi_from_theta(&GF2Vec::zeros(g + 1), &params).expect("valid");
            let ones = GF2Vec::from_bits(&vec![1; g + 1]);
            let psi1 = psi_from_theta(&ones, &params).expect("valid");
            let fixed_members: BTreeSet<&GF2Vec> = orbits
                .orbits
                .iter()
                .filter(|o| o.size() == 1)
                .map(|o| &o.members[0])
                .collect();
            report.require(
                fixed_members.contains(psi0.values()) && fixed_members.contains(psi1.values()),
                || format!("g={g} rho={rho}: fixed points are not the distinguished coverings"),
            );
            if g < 4 || (g < 5 && idx < 2) {
                compared_full += 1;
                match classify_a1_full(g, &params) {
                    Ok(full) => report.require(orbits.same_partition(&full), || {
                        format!("g={g} rho={rho}: generator orbits differ from full enumeration")
                    }),
                    Err(e) => report.require(false, || format!("g={g} rho={rho}: {e}")),
                }
            }
        }
        report.detail(format!(
            "g={g}: {} section choices, sizes {:?} ({} against full enumeration)",
            rhos.len(),
            expected_a1_sizes(g),
            compared_full
        ));
    }
    report
}

/// Stabilizers and their generator lists.
pub fn check_1234(opts: &VerifyOptions) -> CheckReport {
    let mut report = CheckReport::new("1234");
    for g in opts.genus_range(5) {
        let sub = stabilizer_check(g, AlphaClass::Alpha1);
        report.require(sub.passed, || {
            format!("alpha1 g={g}: {}", sub.counterexample.clone().unwrap_or_default())
        });
        for line in sub.details {
            report.detail(line);
        }
        if g <= 4 {
            let sub = stabilizer_check(g, AlphaClass::Alpha0);
            report.require(sub.passed, || {
                format!("alpha0 g={g}: {}", sub.counterexample.clone().unwrap_or_default())
            });
            for line in sub.details {
                report.detail(line);
            }
        }
    }
    report
}

/// Every enumerated orthogonal map fixes the all-ones vector.
pub fn check_uti(opts: &VerifyOptions) -> CheckReport {
    let mut report = CheckReport::new("uti");
    for g in opts.genus_range(5) {
        let n = g + 1;
        let group = match enumerate_isometries(&FormSpace::dot(n)) {
            Ok(v) => v,
            Err(e) => {
                report.require(false, || e.to_string());
                return report;
            }
        };
        let ones = GF2Vec::from_bits(&vec![1; n]);
        for f in &group {
            report.require(f.apply(&ones) == ones, || {
                format!("dim {n}: a map moves the all-ones vector:\n{}", f.matrix())
            });
        }
        report.detail(format!("dim {n}: all {} maps fix the all-ones vector", group.len()));
    }
    report
}

/// Transitivity on the two distinguished vector classes (through the shared
/// report of [`lemma_checks`]).
pub fn check_trans(opts: &VerifyOptions) -> CheckReport {
    let mut report = CheckReport::new("trans");
    for g in opts.genus_range(5) {
        let sub = lemma_checks(g);
        report.require(sub.passed, || {
            format!("g={g}: {}", sub.counterexample.clone().unwrap_or_default())
        });
        for line in sub.details.into_iter().filter(|l| l.starts_with("trans")) {
            report.detail(line);
        }
    }
    report
}

/// Value-sum identities of the two distinguished coverings.
pub fn check_01(opts: &VerifyOptions) -> CheckReport {
    let mut report = CheckReport::new("01");
    for g in opts.genus_range(5) {
        let sub = lemma01_check(g);
        report.require(sub.passed, || {
            format!("g={g}: {}", sub.counterexample.clone().unwrap_or_default())
        });
        for line in sub.details {
            report.detail(line);
        }
    }
    report
}

/// The quadratic section: its law on every pair, the section property, and
/// the refinement law of the derived quadratic forms.
pub fn check_s(opts: &VerifyOptions) -> CheckReport {
    let mut report = CheckReport::new("s");
    for g in opts.genus_range(3) {
        let surface = OSurface::new(g);
        for r in r_values(g, opts, usize::MAX, 0) {
            let params = SectionParams::with_r(g, r.clone()).expect("length");
            for ka in 0..(1u64 << (2 * g)) {
                let a = GF2Vec::from_counter_msb(ka, 2 * g);
                let sa = s_eval(&params, &a);
                // section property
                report.require(sa.prefix(2 * g) == a, || {
                    format!("g={g} r={r}: not a section at {a}")
                });
                for kb in ka..(1u64 << (2 * g)) {
                    let b = GF2Vec::from_counter_msb(kb, 2 * g);
                    let mut rhs = sa.xor(&s_eval(&params, &b));
                    if pair(surface.space(), &a, &b).expect("lengths agree") == 1 {
                        rhs.flip(2 * g);
                    }
                    report.require(s_eval(&params, &a.xor(&b)) == rhs, || {
                        format!("g={g} r={r}: law fails at a={a} b={b}")
                    });
                }
            }
        }
        report.detail(format!("g={g}: quadratic law exhaustive over all r"));
    }
    // refinement law of quadratic forms per se
    let mut rng = SplitMix64::new(0x5555);
    for g in opts.genus_range(4) {
        let q = QuadForm::new(FormSpace::symplectic(g), rng.vector(2 * g)).expect("symplectic");
        report.require(q.law_holds_exhaustively(), || {
            format!("refinement law fails at dimension {}", 2 * g)
        });
    }
    report.detail("refinement law exhaustive".to_string());
    report
}

/// Counting: 2^{g+1} special coverings, 2^g pulled-back members, and the
/// two preimages of each member differing by the all-ones shift.
pub fn check_2g(opts: &VerifyOptions) -> CheckReport {
    let mut report = CheckReport::new("2g");
    for g in opts.genus_range(8) {
        let all = specials(TotalN { g });
        report.require(all.len() == 1 << (g + 1), || {
            format!("g={g}: {} special coverings", all.len())
        });
        let family = epi_set(g);
        report.require(family.len() == 1 << g, || {
            format!("g={g}: {} pulled-back members", family.len())
        });
        let tps = tilde_pi_star(g);
        for member in &family {
            for psi in [&member.preimages.0, &member.preimages.1] {
                report.require(&tps.pullback(psi.values()) == member.phi.values(), || {
                    format!("g={g}: preimage does not induce {}", member.phi.bitstring())
                });
            }
            let delta = member
                .preimages
                .0
                .base_values()
                .xor(&member.preimages.1.base_values());
            report.require(delta.weight() == g + 1, || {
                format!("g={g}: preimages do not differ by the all-ones shift")
            });
        }
        report.detail(format!("g={g}: counts {} and {}", all.len(), family.len()));
    }
    report
}

/// Membership of the pulled-back family through kernel vanishing, and the
/// common kernel of the family.
pub fn check_bot(opts: &VerifyOptions) -> CheckReport {
    let mut report = CheckReport::new("bot");
    for g in opts.genus_range(6) {
        let total = TotalO { g };
        let family: BTreeSet<GF2Vec> =
            epi_set(g).into_iter().map(|m| m.phi.values().clone()).collect();
        // membership: specials vanishing on the kernel are exactly the family
        for k in 0..(1u64 << (2 * g)) {
            let cbar = GF2Vec::from_counter_msb(k, 2 * g);
            let phi = SpecialCovering::over_o(g, &cbar).expect("special");
            let vanishes = (1..=g).all(|i| phi.eval(&total.e_prime_bar(i)) == 0);
            report.require(vanishes == family.contains(phi.values()), || {
                format!("g={g}: membership mismatch at {}", phi.bitstring())
            });
            report.require(vanishes == in_epi_set(&phi), || {
                format!("g={g}: membership helper mismatch at {}", phi.bitstring())
            });
        }
        // common kernel equals the projection kernel
        let rows: Vec<GF2Vec> = family.iter().cloned().collect();
        let stack = GF2Mat::from_rows(&rows).expect("lengths agree");
        let common = stack.kernel_basis();
        let tps = tilde_pi_star(g);
        report.require(common.len() == g, || {
            format!("g={g}: common kernel has dimension {}", common.len())
        });
        for v in &common {
            report.require(tps.apply(v).is_zero(), || {
                format!("g={g}: common kernel vector {v} survives the projection")
            });
        }
        report.detail(format!("g={g}: membership and common kernel verified"));
    }
    report
}

/// The family-preserving subgroup: kernel stability coincides with the
/// literal definition.
pub fn check_gs(opts: &VerifyOptions) -> CheckReport {
    let mut report = CheckReport::new("gs");
    for g in opts.genus_range(3) {
        let r_sample = if g <= 2 { usize::MAX } else { 4 };
        for r in r_values(g, opts, r_sample, 0x6666) {
            let params = SectionParams::with_r(g, r.clone()).expect("length");
            let family = epi_set(g);
            let coincide = |f: &Isometry, report: &mut CheckReport| {
                let by_kernel = in_gs(f, &params).expect("dimension");
                let by_definition = family.iter().all(|m| {
                    act_symp(&m.phi, f, &params)
                        .map(|moved| in_epi_set(&moved))
                        .unwrap_or(false)
                });
                report.require(by_kernel == by_definition, || {
                    format!("g={g} r={r}: membership routes disagree on\n{}", f.matrix())
                });
            };
            if g <= 2 {
                for f in enumerate_isometries(&FormSpace::symplectic(g)).expect("guard") {
                    coincide(&f, &mut report);
                }
            } else {
                let mut rng = SplitMix64::new(0x7777);
                for _ in 0..60 {
                    coincide(&random_symplectic(g, &mut rng), &mut report);
                }
            }
        }
        report.detail(format!("g={g}: membership routes coincide"));
    }
    report
}

/// Transvection generation of the orthogonality subgroups: exhaustive
/// factorization replay at genus 2, random replay above.
pub fn check_genkt(opts: &VerifyOptions) -> CheckReport {
    let mut report = CheckReport::new("genkt");
    // closure of the generating transvections equals the filtered subgroup
    for g in opts.genus_range(2) {
        for r in r_values(g, opts, usize::MAX, 0) {
            let params = SectionParams::with_r(g, r.clone()).expect("length");
            let filtered: Vec<Isometry> = enumerate_isometries(&FormSpace::symplectic(g))
                .expect("guard")
                .into_iter()
                .filter(|f| in_kt(f, &params).expect("dimension"))
                .collect();
            let gens = kt_generators(g, &params);
            let generated = if gens.is_empty() {
                vec![Isometry::identity(FormSpace::symplectic(g))]
            } else {
                crate::form::closure(&gens).expect("one space")
            };
            report.require(generated == filtered, || {
                format!(
                    "g={g} r={r}: closure order {} vs filtered order {}",
                    generated.len(),
                    filtered.len()
                )
            });
        }
    }
    // exhaustive factorization replay at genus 2
    if opts.genus_range(2).contains(&2) {
        let g = 2;
        let r = opts
            .r
            .clone()
            .filter(|r| r.len() == 2 * g)
            .unwrap_or_else(|| GF2Vec::zeros(2 * g));
        let params = SectionParams::with_r(g, r).expect("length");
        let surface = OSurface::new(g);
        let mut v_basis: Vec<GF2Vec> = (1..=g).map(|i| surface.e_prime(i)).collect();
        if !params.t_vec().is_zero() {
            v_basis.push(params.t_vec());
        }
        let space = FormSpace::symplectic(g);
        let mut replayed = 0;
        for f in enumerate_isometries(&space).expect("guard") {
            if !in_kt(&f, &params).expect("dimension") {
                continue;
            }
            replayed += 1;
            match factorize_transvections(&f, &v_basis) {
                Ok(factors) => {
                    report.require(factors.len() <= 4 * g, || {
                        format!("factorization too long: {} factors", factors.len())
                    });
                    let mut product = Isometry::identity(Arc::clone(&space));
                    for y in &factors {
                        for v in &v_basis {
                            report.require(pair(&space, y, v).expect("length") == 0, || {
                                format!("factor {y} not orthogonal to the subspace")
                            });
                        }
                        product = product.compose(&transvection(&space, y).expect("symplectic"));
                    }
                    report.require(product == f, || format!("replay differs for\n{}", f.matrix()));
                }
                Err(e) => report.require(false, || format!("factorization failed: {e}")),
            }
        }
        report.detail(format!("g=2: {replayed} subgroup members replayed exhaustively"));
    }
    // random products at higher genus
    for g in opts.genus_range(5) {
        if g < 3 {
            continue;
        }
        let params = SectionParams::zero(g);
        let surface = OSurface::new(g);
        let mut v_basis: Vec<GF2Vec> = (1..=g).map(|i| surface.e_prime(i)).collect();
        v_basis.push(params.t_vec());
        let space = FormSpace::symplectic(g);
        let gens = kt_generators(g, &params);
        let mut rng = SplitMix64::new(0x8888 + g as u64);
        for _ in 0..100 {
            let mut f = Isometry::identity(Arc::clone(&space));
            for _ in 0..8 {
                f = f.compose(&gens[rng.below(gens.len())]);
            }
            match factorize_transvections(&f, &v_basis) {
                Ok(factors) => {
                    let mut product = Isometry::identity(Arc::clone(&space));
                    for y in &factors {
                        product = product.compose(&transvection(&space, y).expect("symplectic"));
                    }
                    report.require(product == f, || format!("g={g}: replay differs"));
                }
                Err(e) => report.require(false, || format!("g={g}: {e}")),
            }
        }
        report.detail(format!("g={g}: 100 random products replayed"));
    }
    report
}

/// The Arf classification: containment of the transvection subgroup, the
/// closed-form identity, coincidence of the two orbit routes, and the
/// orbit-size pattern with its exceptional case.
pub fn check_2eq4(opts: &VerifyOptions) -> CheckReport {
    let mut report = CheckReport::new("2=4");
    for g in opts.genus_range(3) {
        // the generator route sweeps every r; the full-enumeration
        // comparison only runs where the guard allows
        for r in r_values(g, opts, usize::MAX, 0x9999) {
            let params = SectionParams::with_r(g, r.clone()).expect("length");
            // (i) containment
            let sub = kt_in_gs_check(g, &params);
            report.require(sub.passed, || {
                format!("g={g} r={r}: {}", sub.counterexample.clone().unwrap_or_default())
            });
            // (ii) closed form
            for member in epi_set(g) {
                match arf_closed_form(&member.phi, &params) {
                    Ok((a, b)) => report.require(a == b, || {
                        format!(
                            "g={g} r={r}: invariant routes differ at {}",
                            member.phi.bitstring()
                        )
                    }),
                    Err(e) => report.require(false, || e.to_string()),
                }
            }
            // (iii)+(iv) orbits
            let mode = if g <= 2 { EpiMode::Both } else { EpiMode::Kt };
            match classify_epi(g, &params, mode) {
                Ok(orbits) => {
                    let expected = if params.is_exceptional() {
                        vec![1 << g]
                    } else {
                        vec![1 << (g - 1), 1 << (g - 1)]
                    };
                    report.require(orbits.sizes() == expected, || {
                        format!("g={g} r={r}: orbit sizes {:?}", orbits.sizes())
                    });
                    if params.is_exceptional() {
                        report.detail(format!(
                            "g={g} r={r}: exceptional section, single orbit of size {}",
                            1 << g
                        ));
                    }
                    // orbits are exactly the invariant level sets
                    let mut level_sets: std::collections::BTreeMap<String, BTreeSet<GF2Vec>> =
                        Default::default();
                    for member in epi_set(g) {
                        let (value, _) = arf_closed_form(&member.phi, &params).expect("family");
                        level_sets
                            .entry(format!("arf={value}"))
                            .or_default()
                            .insert(member.phi.values().clone());
                    }
                    let orbit_sets: std::collections::BTreeMap<String, BTreeSet<GF2Vec>> = orbits
                        .orbits
                        .iter()
                        .map(|o| (o.label.clone(), o.members.iter().cloned().collect()))
                        .collect();
                    report.require(level_sets == orbit_sets, || {
                        format!("g={g} r={r}: orbits are not the invariant level sets")
                    });
                }
                Err(e) => report.require(false, || format!("g={g} r={r}: {e}")),
            }
        }
        report.detail(format!("g={g}: containment, invariant identity and orbit pattern hold"));
    }
    report
}

/// The connecting-transvection criterion between coverings of the
/// non-orientable side, crosschecked against the orbit partition.
pub fn check_cor124(opts: &VerifyOptions) -> CheckReport {
    let mut report = CheckReport::new("1,24");
    for g in opts.genus_range(2) {
        for r in r_values(g, opts, usize::MAX, 0) {
            let params = SectionParams::with_r(g, r.clone()).expect("length");
            let orbits = match classify_epi(g, &params, EpiMode::Kt) {
                Ok(o) => o,
                Err(e) => {
                    report.require(false, || format!("g={g} r={r}: {e}"));
                    continue;
                }
            };
            let tps = tilde_pi_star(g);
            for psi in specials(TotalN { g }) {
                let phi = tps.pullback(psi.values());
                for psi2 in specials(TotalN { g }) {
                    let phi2 = tps.pullback(psi2.values());
                    let same_orbit = orbits
                        .orbits
                        .iter()
                        .any(|o| o.members.contains(&phi) && o.members.contains(&phi2));
                    match cor_witness(&psi, &psi2, &params) {
                        Ok(Some(w)) => {
                            report.require(same_orbit, || {
                                format!(
                                    "g={g} r={r}: witness exists but orbits differ for {} vs {}",
                                    psi.bitstring(),
                                    psi2.bitstring()
                                )
                            });
                            report.require(in_kt(&w, &params).expect("dimension"), || {
                                format!("g={g} r={r}: witness outside the subgroup")
                            });
                            let lifted = f_s_matrix(&w, &params).expect("valid");
                            report.require(lifted.matrix().pullback(&phi) == phi2, || {
                                format!(
                                    "g={g} r={r}: witness does not intertwine {} and {}",
                                    psi.bitstring(),
                                    psi2.bitstring()
                                )
                            });
                        }
                        Ok(None) => report.require(!same_orbit, || {
                            format!(
                                "g={g} r={r}: orbits agree but no witness for {} vs {}",
                                psi.bitstring(),
                                psi2.bitstring()
                            )
                        }),
                        Err(e) => report.require(false, || e.to_string()),
                    }
                }
            }
        }
        report.detail(format!("g={g}: witness criterion matches the orbit partition"));
    }
    report
}

/// The lift/projection correspondence between the two isometry groups.
pub fn check_symsym(opts: &VerifyOptions) -> CheckReport {
    let mut report = CheckReport::new("symsym");
    for g in opts.genus_range(4) {
        // every orthogonal base map lifts, and the roundtrip recovers it
        let group = match enumerate_isometries(&FormSpace::dot(g + 1)) {
            Ok(v) => v,
            Err(e) => {
                report.require(false, || e.to_string());
                return report;
            }
        };
        let expected_count = if g % 2 == 0 { 1 } else { 2 };
        for base in &group {
            match lift_to_symp(base) {
                Ok(f) => {
                    report.require(is_lift_pair(&f, base), || {
                        format!("g={g}: lift does not cover its base map")
                    });
                    match project_to_orth(&f) {
                        Ok(cands) => {
                            report.require(cands.contains(base), || {
                                format!("g={g}: roundtrip loses the base map")
                            });
                            report.require(cands.len() == expected_count, || {
                                format!(
                                    "g={g}: {} extensions, expected {expected_count}",
                                    cands.len()
                                )
                            });
                        }
                        Err(e) => report.require(false, || format!("g={g}: {e}")),
                    }
                }
                Err(e) => report.require(false, || format!("g={g}: {e}")),
            }
        }
        report.detail(format!("g={g}: all {} orthogonal maps lift and roundtrip", group.len()));

        // block maps satisfying the restricted-product condition project;
        // the projection depends only on the top block
        let s = s_matrix(g);
        let mut condition_holds = 0u64;
        let mut condition_fails = 0u64;
        let split = FormSpace::symplectic_split(g);
        for bits in 0..(1u64 << (g * g)) {
            let mut a = GF2Mat::zeros(g, g);
            for k in 0..(g * g) {
                a.set(k / g, k % g, ((bits >> k) & 1) as u8);
            }
            let Some(a_inv_t) = a.transpose().inverse() else {
                continue;
            };
            let s_condition = a.transpose().mul(&s).expect("shape").mul(&a).expect("shape") == s;
            if !s_condition {
                condition_fails += 1;
                // such maps must project to nothing
                let mut mat = GF2Mat::zeros(2 * g, 2 * g);
                mat.set_block(0, 0, &a);
                mat.set_block(g, g, &a_inv_t);
                let f = Isometry::new(Arc::clone(&split), mat).expect("block symplectic");
                match project_to_orth(&f) {
                    Ok(cands) => report.require(cands.is_empty(), || {
                        format!("g={g}: a map violating the product condition projected")
                    }),
                    Err(e) => report.require(false, || format!("g={g}: {e}")),
                }
                continue;
            }
            condition_holds += 1;
            // sweep the symmetric completions: all at small genus, a seeded
            // sample at genus 4 (the projection reads only the top block)
            let sym_dims = g * (g + 1) / 2;
            let sweep: Vec<u64> = if g <= 3 {
                (0..(1u64 << sym_dims)).collect()
            } else {
                let mut rng = SplitMix64::new(bits ^ 0xaaaa);
                (0..8).map(|_| rng.next_u64() & ((1 << sym_dims) - 1)).collect()
            };
            let mut reference: Option<Vec<Isometry>> = None;
            for m_bits in sweep {
                let mut m_sym = GF2Mat::zeros(g, g);
                let mut bit = 0;
                for i in 0..g {
                    for j in i..g {
                        let v = ((m_bits >> bit) & 1) as u8;
                        m_sym.set(i, j, v);
                        m_sym.set(j, i, v);
                        bit += 1;
                    }
                }
                let c = a_inv_t.mul(&m_sym).expect("shape");
                let mut mat = GF2Mat::zeros(2 * g, 2 * g);
                mat.set_block(0, 0, &a);
                mat.set_block(g, 0, &c);
                mat.set_block(g, g, &a_inv_t);
                let f = match Isometry::new(Arc::clone(&split), mat) {
                    Ok(f) => f,
                    Err(e) => {
                        report.require(false, || format!("g={g}: completion not symplectic: {e}"));
                        continue;
                    }
                };
                match project_to_orth(&f) {
                    Ok(cands) => {
                        report.require(cands.len() == expected_count, || {
                            format!("g={g}: {} extensions, expected {expected_count}", cands.len())
                        });
                        for base in &cands {
                            report.require(is_lift_pair(&f, base), || {
                                format!("g={g}: projected map does not cover")
                            });
                        }
                        match &reference {
                            None => reference = Some(cands),
                            Some(prev) => report.require(prev == &cands, || {
                                format!("g={g}: projection depends on the lower block")
                            }),
                        }
                    }
                    Err(e) => report.require(false, || format!("g={g}: {e}")),
                }
            }
        }
        report.detail(format!(
            "g={g}: {condition_holds} top blocks project, {condition_fails} correctly refused"
        ));
    }
    report
}

/// Extension of hyperplane isometries: solution counts by parity, and the
/// assembled extensions restrict correctly.
pub fn check_gene(opts: &VerifyOptions) -> CheckReport {
    let mut report = CheckReport::new("gene");
    for g in opts.genus_range(4) {
        let s = s_matrix(g);
        let expected = if g % 2 == 0 { 1 } else { 2 };
        let mut count = 0u64;
        for bits in 0..(1u64 << (g * g)) {
            let mut a = GF2Mat::zeros(g, g);
            for k in 0..(g * g) {
                a.set(k / g, k % g, ((bits >> k) & 1) as u8);
            }
            if a.rank() < g || a.transpose().mul(&s).expect("shape").mul(&a).expect("shape") != s {
                continue;
            }
            count += 1;
            let v0 = GF2Vec::unit(g + 1, 0);
            match lemma_gene_extend(&a, &v0) {
                Ok(sols) => {
                    report.require(sols.len() == expected, || {
                        format!("g={g}: {} extension vectors, expected {expected}", sols.len())
                    });
                    for vp in &sols {
                        report.require(vp.parity() == 1, || {
                            format!("g={g}: extension vector inside the hyperplane")
                        });
                        report.require(vp.dot(vp) == v0.dot(&v0), || {
                            format!("g={g}: extension changes the self-product")
                        });
                    }
                }
                Err(e) => report.require(false, || format!("g={g}: {e}")),
            }
        }
        report.detail(format!(
            "g={g}: {count} hyperplane isometries extend with multiplicity {expected}"
        ));
    }
    report
}

/// Realizability: the criterion on examples, closure under the group
/// operations, and realizability of every section lift.
pub fn check_ader(opts: &VerifyOptions) -> CheckReport {
    let mut report = CheckReport::new("ader");
    for g in opts.genus_range(4) {
        report.require(is_realizable(&TotalAut::identity(g)), || {
            format!("g={g}: identity not realizable")
        });
        let mut mat = GF2Mat::identity(g + 2);
        mat.set(g + 1, 0, 1);
        mat.set(g + 1, 1, 1);
        report.require(is_realizable(&TotalAut::new(g, mat).expect("invertible")), || {
            format!("g={g}: even defect row rejected")
        });
        let mut mat = GF2Mat::identity(g + 2);
        mat.set(0, g + 1, 1);
        report.require(!is_realizable(&TotalAut::new(g, mat).expect("invertible")), || {
            format!("g={g}: fiber mover accepted")
        });
        let mut mat = GF2Mat::identity(g + 2);
        mat.set(g + 1, 0, 1);
        report.require(!is_realizable(&TotalAut::new(g, mat).expect("invertible")), || {
            format!("g={g}: odd defect row accepted")
        });

        // closure under composition and inverse, seeded sample
        let gens = crate::orth_action::orth_generators(g + 1);
        let mut rng = SplitMix64::new(0xbbbb + g as u64);
        let sample = |rng: &mut SplitMix64| -> TotalAut {
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
            TotalAut::new(g, mat).expect("invertible")
        };
        for _ in 0..30 {
            let a = sample(&mut rng);
            let b = sample(&mut rng);
            report.require(is_realizable(&a) && is_realizable(&b), || {
                format!("g={g}: sampled map not realizable")
            });
            report.require(is_realizable(&a.compose(&b)), || {
                format!("g={g}: composition leaves the realizable set")
            });
            report.require(is_realizable(&a.inverse()), || {
                format!("g={g}: inverse leaves the realizable set")
            });
        }
        // lifts through the linear section are realizable
        for rho in rho_values(g, opts, 4, 0xcccc) {
            let params = SectionParams::with_rho(g, rho).expect("length");
            let group = enumerate_isometries(&FormSpace::dot(g + 1)).expect("guard");
            for base in group.iter().take(100) {
                let lifted = crate::orth_action::lift_f_sigma(base, &params).expect("valid");
                let aut = TotalAut::new(g, lifted.matrix().clone()).expect("invertible");
                report.require(is_realizable(&aut), || {
                    format!("g={g}: section lift not realizable")
                });
            }
        }
        report.detail(format!("g={g}: criterion, closure and section lifts verified"));
    }
    report
}

/// The four-way equivalence between weak equivalence, presentation
/// exponents, value sums, and orbit equivalence over section choices.
pub fn check_an(opts: &VerifyOptions) -> CheckReport {
    let mut report = CheckReport::new("an");
    for g in opts.genus_range(4) {
        let sub = bridge::thm_an_crosscheck(g);
        report.require(sub.passed, || {
            format!("g={g}: {}", sub.counterexample.clone().unwrap_or_default())
        });
        for line in sub.details {
            report.detail(line);
        }
    }
    report
}
