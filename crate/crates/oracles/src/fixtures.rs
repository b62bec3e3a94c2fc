//! Golden fixtures: every countable value the naive oracles derive, frozen
//! into a structured document checked into the repository.

use serde_json::{json, Value};
use spincover_core::gf2::{GF2Mat, GF2Vec};

use crate::{
    enumerate_matrices, is_orthogonal_dot, is_symplectic_pairs, naive_covering_action,
    naive_in_family, naive_orbits, naive_rank,
};

/// The checked-in fixtures document; regeneration must reproduce it
/// bit-identically.
pub const CHECKED_IN: &str = include_str!("../fixtures.json");

#[derive(Clone, Debug)]
pub struct Fixture {
    pub name: String,
    pub oracle: String,
    pub input: String,
    pub expected: Value,
}

impl Fixture {
    fn new(
        name: impl Into<String>,
        oracle: impl Into<String>,
        input: impl Into<String>,
        expected: Value,
    ) -> Self {
        Self {
            name: name.into(),
            oracle: oracle.into(),
            input: input.into(),
            expected,
        }
    }

    #[must_use]
    pub fn to_json(&self) -> Value {
        json!({
            "name": self.name,
            "oracle": self.oracle,
            "input": self.input,
            "expected": self.expected,
        })
    }
}

fn all_forms(n: usize) -> Vec<GF2Vec> {
    (0..(1u64 << n)).map(|k| GF2Vec::from_counter_msb(k, n)).collect()
}

fn family_points(g: usize) -> Vec<GF2Vec> {
    let mut out = Vec::new();
    for k in 0..(1u64 << (2 * g)) {
        let mut phi = GF2Vec::from_counter_msb(k, 2 * g).extended(2 * g + 1);
        phi.set(2 * g, 1);
        if naive_in_family(&phi) {
            out.push(phi);
        }
    }
    out
}

fn restricted_product_table(g: usize) -> Vec<Vec<u8>> {
    (0..g)
        .map(|i| (0..g).map(|j| u8::from(i != j)).collect())
        .collect()
}

#[allow(clippy::needless_range_loop)] // textbook index loops are the point here
fn preserves_restricted_product(a: &GF2Mat) -> bool {
    let g = a.rows();
    let s = restricted_product_table(g);
    for i in 0..g {
        for j in 0..g {
            let mut acc = 0u8;
            for k in 0..g {
                for l in 0..g {
                    acc ^= a.get(k, i) & s[k][l] & a.get(l, j);
                }
            }
            if acc != s[i][j] {
                return false;
            }
        }
    }
    true
}

/// Recomputes every fixture from its oracle.
#[must_use]
pub fn build_fixtures() -> Vec<Fixture> {
    let mut out = Vec::new();

    for dim in 1..=4usize {
        let count = enumerate_matrices(dim, is_orthogonal_dot).expect("guard").len();
        out.push(Fixture::new(
            format!("orthogonal_group_order_dim{dim}"),
            "matrix-scan + naive dot-isometry filter",
            format!("all {dim}x{dim} matrices"),
            json!(count),
        ));
    }
    for dim in [2usize, 4] {
        let count = enumerate_matrices(dim, is_symplectic_pairs).expect("guard").len();
        out.push(Fixture::new(
            format!("symplectic_group_order_dim{dim}"),
            "matrix-scan + naive symplectic filter",
            format!("all {dim}x{dim} matrices"),
            json!(count),
        ));
    }
    out.push(Fixture::new(
        "invertible_count_dim2",
        "matrix-scan + naive rank",
        "all 2x2 matrices",
        json!(enumerate_matrices(2, |m| naive_rank(m) == 2).expect("guard").len()),
    ));

    // orbit profiles of the form action under the full orthogonal group
    for g in 1..=3usize {
        let n = g + 1;
        let group = enumerate_matrices(n, is_orthogonal_dot).expect("guard");
        let orbits = naive_orbits(&all_forms(n), &group, |p, m| m.pullback(p));
        let mut sizes: Vec<usize> = orbits.iter().map(Vec::len).collect();
        sizes.sort_unstable();
        out.push(Fixture::new(
            format!("form_orbit_sizes_g{g}"),
            "naive union-find over the full orthogonal group",
            format!("all linear forms on dimension {n}"),
            json!(sizes),
        ));
    }

    // orbit profiles of the covering family under the full filtered group
    for (g, r_text) in [(1usize, "00"), (1, "10"), (2, "0000"), (2, "1010")] {
        let r: Vec<u8> = r_text.bytes().map(|b| b - b'0').collect();
        let family = family_points(g);
        let group: Vec<GF2Mat> = enumerate_matrices(2 * g, is_symplectic_pairs)
            .expect("guard")
            .into_iter()
            .filter(|f| {
                family
                    .iter()
                    .all(|phi| naive_in_family(&naive_covering_action(phi, f, &r)))
            })
            .collect();
        let orbits = naive_orbits(&family, &group, |p, m| naive_covering_action(p, m, &r));
        let mut sizes: Vec<usize> = orbits.iter().map(Vec::len).collect();
        sizes.sort_unstable();
        out.push(Fixture::new(
            format!("family_orbit_sizes_g{g}_r{r_text}"),
            "naive union-find over the full family-preserving subgroup",
            format!("pulled-back family at genus {g}, section parameters {r_text}"),
            json!(sizes),
        ));
    }

    // stabilizer orders of the two distinguished forms
    for g in 2..=3usize {
        let n = g + 1;
        let group = enumerate_matrices(n, is_orthogonal_dot).expect("guard");
        for (tag, alpha) in [
            ("alpha1", {
                let mut v = GF2Vec::zeros(n);
                v.set(0, 1);
                v
            }),
            ("alpha0", {
                let mut v = GF2Vec::zeros(n);
                v.set(0, 1);
                v.set(1, 1);
                v
            }),
        ] {
            let order = group.iter().filter(|m| m.pullback(&alpha) == alpha).count();
            out.push(Fixture::new(
                format!("stabilizer_order_{tag}_g{g}"),
                "full-group filter",
                format!("forms fixed-value test at genus {g}"),
                json!(order),
            ));
        }
    }

    // invertible maps preserving the restricted product on the image
    for g in 2..=4usize {
        let count = enumerate_matrices(g, |a| {
            naive_rank(a) == g && preserves_restricted_product(a)
        })
        .expect("guard")
        .len();
        out.push(Fixture::new(
            format!("restricted_product_isometry_count_g{g}"),
            "matrix-scan + naive product check",
            format!("all {g}x{g} matrices"),
            json!(count),
        ));
    }

    // extension-vector counts for the identity hyperplane map
    for g in 2..=3usize {
        let n = g + 1;
        let mut count = 0usize;
        for k in 0..(1u64 << n) {
            let cand = GF2Vec::from_counter_msb(k, n);
            if cand.parity() != 1 {
                continue; // must lie outside the hyperplane
            }
            // v'.(v_0 + v_k) = v_0.(v_0 + v_k) for every k
            let ok = (1..=g).all(|i| {
                let mut u = GF2Vec::zeros(n);
                u.set(0, 1);
                u.set(i, 1);
                cand.dot(&u) == GF2Vec::unit(n, 0).dot(&u)
            });
            if ok {
                count += 1;
            }
        }
        out.push(Fixture::new(
            format!("extension_vector_count_dim{n}"),
            "brute scan of candidate vectors",
            format!("identity hyperplane map, ambient dimension {n}"),
            json!(count),
        ));
    }

    // transitivity classes at dimension 3
    {
        let g = 3usize;
        let group = enumerate_matrices(g, is_orthogonal_dot).expect("guard");
        let e = GF2Vec::from_bits(&vec![1; g]);
        let all: Vec<GF2Vec> = all_forms(g)
            .into_iter()
            .filter(|x| !x.is_zero() && *x != e)
            .collect();
        for (tag, parity) in [("h0", 0u8), ("h1", 1u8)] {
            let set: Vec<GF2Vec> = all.iter().filter(|x| x.dot(&e) == parity).cloned().collect();
            let orbits = naive_orbits(&set, &group, |p, m| m.apply(p));
            out.push(Fixture::new(
                format!("{tag}_orbit_count_dim{g}"),
                "naive union-find over the full orthogonal group",
                format!("distinguished vectors of pairing {parity} in dimension {g}"),
                json!(orbits.len()),
            ));
        }
    }

    out
}

/// Canonical document form: pretty JSON with a trailing newline.
#[must_use]
pub fn to_canonical_json(fixtures: &[Fixture]) -> String {
    let doc = json!({
        "schema": spincover_core::SCHEMA,
        "kind": "fixtures",
        "fixtures": fixtures.iter().map(Fixture::to_json).collect::<Vec<_>>(),
    });
    let mut text = serde_json::to_string_pretty(&doc).expect("serializable");
    text.push('\n');
    text
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn regeneration_is_bit_identical() {
        let regenerated = to_canonical_json(&build_fixtures());
        assert_eq!(
            regenerated, CHECKED_IN,
            "fixtures.json is stale; regenerate with `spincover verify --regen-fixtures`"
        );
    }

    #[test]
    fn fixture_names_are_unique() {
        let fixtures = build_fixtures();
        let names: std::collections::BTreeSet<&str> =
            fixtures.iter().map(|f| f.name.as_str()).collect();
        assert_eq!(names.len(), fixtures.len());
    }

    #[test]
    fn known_values_are_frozen() {
        let fixtures = build_fixtures();
        let get = |name: &str| -> &Value {
            &fixtures.iter().find(|f| f.name == name).expect(name).expected
        };
        assert_eq!(get("orthogonal_group_order_dim4"), &json!(48));
        assert_eq!(get("symplectic_group_order_dim4"), &json!(720));
        assert_eq!(get("invertible_count_dim2"), &json!(6));
        assert_eq!(get("form_orbit_sizes_g1"), &json!([1, 1, 2]));
        assert_eq!(get("form_orbit_sizes_g2"), &json!([1, 1, 3, 3]));
        assert_eq!(get("form_orbit_sizes_g3"), &json!([1, 1, 6, 8]));
        assert_eq!(get("family_orbit_sizes_g1_r00"), &json!([1, 1]));
        assert_eq!(get("family_orbit_sizes_g1_r10"), &json!([2]));
        assert_eq!(get("family_orbit_sizes_g2_r0000"), &json!([2, 2]));
        assert_eq!(get("family_orbit_sizes_g2_r1010"), &json!([4]));
        assert_eq!(get("stabilizer_order_alpha1_g2"), &json!(2));
        assert_eq!(get("stabilizer_order_alpha0_g2"), &json!(2));
        assert_eq!(get("stabilizer_order_alpha1_g3"), &json!(6));
        assert_eq!(get("stabilizer_order_alpha0_g3"), &json!(8));
        assert_eq!(get("restricted_product_isometry_count_g2"), &json!(6));
        assert_eq!(get("restricted_product_isometry_count_g3"), &json!(24));
        assert_eq!(get("restricted_product_isometry_count_g4"), &json!(720));
        assert_eq!(get("extension_vector_count_dim3"), &json!(1));
        assert_eq!(get("extension_vector_count_dim4"), &json!(2));
        assert_eq!(get("h0_orbit_count_dim3"), &json!(1));
        assert_eq!(get("h1_orbit_count_dim3"), &json!(1));
    }
}
