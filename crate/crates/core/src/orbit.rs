//! Generic orbit decomposition of a finite action, with invariant labels.

use std::collections::{BTreeMap, BTreeSet};

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::form::Isometry;
use crate::gf2::GF2Vec;

/// One orbit: an invariant label and the member list in ascending bitstring
/// order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orbit {
    pub label: String,
    pub members: Vec<GF2Vec>,
}

impl Orbit {
    #[must_use]
    pub fn size(&self) -> usize {
        self.members.len()
    }

    #[must_use]
    pub fn to_json(&self) -> Value {
        json!({
            "label": self.label,
            "size": self.size(),
            "members": self.members.iter().map(GF2Vec::to_string).collect::<Vec<_>>(),
        })
    }
}

/// An orbit partition. Construction via [`orbit_decompose`] orders orbits by
/// smallest member; [`OrbitReport::sort_by_size_then_member`] switches to the
/// report ordering used by the classification commands.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitReport {
    pub orbits: Vec<Orbit>,
}

impl OrbitReport {
    #[must_use]
    pub fn sizes(&self) -> Vec<usize> {
        self.orbits.iter().map(Orbit::size).collect()
    }

    pub fn sort_by_size_then_member(&mut self) {
        self.orbits
            .sort_by(|a, b| (a.size(), &a.members[0]).cmp(&(b.size(), &b.members[0])));
    }

    /// True when the two reports induce the same partition of the same point
    /// set, labels ignored.
    #[must_use]
    pub fn same_partition(&self, other: &Self) -> bool {
        let canon = |r: &Self| -> BTreeSet<Vec<GF2Vec>> {
            r.orbits.iter().map(|o| o.members.clone()).collect()
        };
        canon(self) == canon(other)
    }

    #[must_use]
    pub fn to_json(&self) -> Value {
        json!({
            "orbit_count": self.orbits.len(),
            "sizes": self.sizes(),
            "orbits": self.orbits.iter().map(Orbit::to_json).collect::<Vec<_>>(),
        })
    }
}

impl std::fmt::Display for OrbitReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "{} orbit(s), sizes {:?}", self.orbits.len(), self.sizes())?;
        for orbit in &self.orbits {
            let members: Vec<String> = orbit.members.iter().map(GF2Vec::to_string).collect();
            writeln!(
                f,
                "  [{}] size {}: {}",
                orbit.label,
                orbit.size(),
                members.join(" ")
            )?;
        }
        Ok(())
    }
}

/// Partitions `points` into orbits under the group generated by `gens`,
/// acting through `act`. Orbits are discovered by breadth-first search from
/// unvisited seeds in ascending bitstring order.
///
/// `label` must be constant on orbits; a violation is reported as
/// [`Error::MixedLabels`] naming the offending pair. An action value outside
/// the point set is reported as [`Error::NotClosed`] naming the escaping
/// point.
pub fn orbit_decompose(
    points: &[GF2Vec],
    gens: &[Isometry],
    act: impl Fn(&GF2Vec, &Isometry) -> GF2Vec,
    label: impl Fn(&GF2Vec) -> String,
) -> Result<OrbitReport> {
    let universe: BTreeSet<GF2Vec> = points.iter().cloned().collect();
    let mut unvisited = universe.clone();
    let mut orbits = Vec::new();
    while let Some(seed) = unvisited.iter().next().cloned() {
        let seed_label = label(&seed);
        let mut members: BTreeMap<GF2Vec, ()> = BTreeMap::new();
        members.insert(seed.clone(), ());
        let mut frontier = std::collections::VecDeque::from([seed.clone()]);
        while let Some(current) = frontier.pop_front() {
            for g in gens {
                let image = act(&current, g);
                if !universe.contains(&image) {
                    return Err(Error::NotClosed(image.to_string()));
                }
                if members.insert(image.clone(), ()).is_none() {
                    let image_label = label(&image);
                    if image_label != seed_label {
                        return Err(Error::MixedLabels {
                            member: seed.to_string(),
                            label: seed_label,
                            other: image.to_string(),
                            other_label: image_label,
                        });
                    }
                    frontier.push_back(image);
                }
            }
        }
        for m in members.keys() {
            unvisited.remove(m);
        }
        orbits.push(Orbit {
            label: seed_label,
            members: members.into_keys().collect(),
        });
    }
    Ok(OrbitReport { orbits })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::form::{transvection, FormSpace, Isometry};
    use crate::gf2::GF2Mat;
    use std::sync::Arc;

    fn all_points(n: usize) -> Vec<GF2Vec> {
        (0..(1u64 << n)).map(|k| GF2Vec::from_counter_msb(k, n)).collect()
    }

    #[test]
    fn empty_generators_give_singletons() {
        let pts = all_points(2);
        let report = orbit_decompose(&pts, &[], |p, _| p.clone(), |_| "x".into()).unwrap();
        assert_eq!(report.sizes(), vec![1, 1, 1, 1]);
    }

    #[test]
    fn duplicate_generators_change_nothing() {
        let space = FormSpace::symplectic(1);
        let t = transvection(&space, &GF2Vec::unit(2, 0)).unwrap();
        let pts = all_points(2);
        let act = |p: &GF2Vec, g: &Isometry| g.matrix().pullback(p);
        let one = orbit_decompose(&pts, std::slice::from_ref(&t), act, |_| String::new()).unwrap();
        let two = orbit_decompose(&pts, &[t.clone(), t.clone()], act, |_| String::new()).unwrap();
        assert_eq!(one, two);
    }

    #[test]
    fn partition_covers_and_is_disjoint() {
        let space = FormSpace::symplectic(2);
        let mut rng = crate::rng::SplitMix64::new(11);
        let gens: Vec<Isometry> = (0..4)
            .map(|_| transvection(&space, &rng.nonzero_vector(4)).unwrap())
            .collect();
        let pts = all_points(4);
        let report =
            orbit_decompose(&pts, &gens, |p, g| g.matrix().pullback(p), |_| String::new())
                .unwrap();
        let mut seen = BTreeSet::new();
        for orbit in &report.orbits {
            for m in &orbit.members {
                assert!(seen.insert(m.clone()), "orbits overlap");
            }
        }
        assert_eq!(seen.len(), pts.len(), "orbits must cover the point set");
    }

    #[test]
    fn not_closed_is_reported() {
        let space = FormSpace::dot(2);
        let swap = Isometry::new(
            Arc::clone(&space),
            GF2Mat::parse_text("01\n10").unwrap(),
        )
        .unwrap();
        // point set missing the image of 10 under the swap
        let pts = vec![GF2Vec::parse("10").unwrap()];
        let err = orbit_decompose(&pts, &[swap], |p, g| g.matrix().pullback(p), |_| String::new())
            .unwrap_err();
        assert_eq!(err, Error::NotClosed("01".into()));
    }

    #[test]
    fn mixed_labels_are_reported() {
        let space = FormSpace::dot(2);
        let swap = Isometry::new(
            Arc::clone(&space),
            GF2Mat::parse_text("01\n10").unwrap(),
        )
        .unwrap();
        let pts = all_points(2);
        let err = orbit_decompose(
            &pts,
            &[swap],
            |p, g| g.matrix().pullback(p),
            |p| p.to_string(), // not invariant
        )
        .unwrap_err();
        assert!(matches!(err, Error::MixedLabels { .. }));
    }

    #[test]
    fn report_sorting_is_by_size_then_member() {
        let mut report = OrbitReport {
            orbits: vec![
                Orbit { label: "b".into(), members: vec![GF2Vec::parse("01").unwrap(), GF2Vec::parse("10").unwrap()] },
                Orbit { label: "a".into(), members: vec![GF2Vec::parse("11").unwrap()] },
                Orbit { label: "c".into(), members: vec![GF2Vec::parse("00").unwrap()] },
            ],
        };
        report.sort_by_size_then_member();
        assert_eq!(report.sizes(), vec![1, 1, 2]);
        assert_eq!(report.orbits[0].members[0].to_string(), "00");
        assert_eq!(report.orbits[1].members[0].to_string(), "11");
    }
}
