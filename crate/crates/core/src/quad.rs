//! Quadratic refinements of a symplectic form and the Arf invariant.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::form::{pair, FormKind, FormSpace};
use crate::gf2::GF2Vec;

/// A quadratic refinement `q` of the symplectic product: determined by its
/// values on the standard basis through the law
/// `q(x + y) = q(x) + q(y) + x.y`.
#[derive(Clone, Debug)]
pub struct QuadForm {
    space: Arc<FormSpace>,
    basis_values: GF2Vec,
}

impl QuadForm {
    pub fn new(space: Arc<FormSpace>, basis_values: GF2Vec) -> Result<Self> {
        if space.kind() != FormKind::Symplectic {
            return Err(Error::Precondition(
                "quadratic refinements require a symplectic space".into(),
            ));
        }
        if basis_values.len() != space.dim() {
            return Err(Error::Shape(format!(
                "expected {} basis values, got {}",
                space.dim(),
                basis_values.len()
            )));
        }
        Ok(Self {
            space,
            basis_values,
        })
    }

    #[must_use]
    pub fn space(&self) -> &Arc<FormSpace> {
        &self.space
    }

    /// Value on a vector, by polarization from the basis values:
    /// `q(sum_S e_i) = sum_S q(e_i) + sum_{i<j in S} e_i.e_j`.
    ///
    /// # Panics
    /// Panics if `x.len()` differs from the space dimension.
    #[must_use]
    pub fn eval(&self, x: &GF2Vec) -> u8 {
        assert_eq!(x.len(), self.space.dim(), "eval: wrong length");
        let support: Vec<usize> = x.ones().collect();
        let mut acc = 0u8;
        for &i in &support {
            acc ^= self.basis_values.get(i);
        }
        for (a, &i) in support.iter().enumerate() {
            for &j in &support[a + 1..] {
                acc ^= self.space.gram().get(i, j);
            }
        }
        acc
    }

    /// Checks the refinement law on every pair of vectors. Exponential in the
    /// dimension; meant for desk-scale verification.
    #[must_use]
    pub fn law_holds_exhaustively(&self) -> bool {
        let n = self.space.dim();
        assert!(n <= 16, "exhaustive law check is a desk-scale tool");
        let count = 1u64 << n;
        for a in 0..count {
            let x = GF2Vec::from_counter_msb(a, n);
            let qx = self.eval(&x);
            for b in 0..count {
                let y = GF2Vec::from_counter_msb(b, n);
                let lhs = self.eval(&x.xor(&y)) ^ qx ^ self.eval(&y);
                if lhs != pair(&self.space, &x, &y).unwrap() {
                    return false;
                }
            }
        }
        true
    }
}

/// Arf invariant `sum_i q(e_i) q(e'_i)` over a symplectic basis given as
/// pairs `(e_i, e'_i)`. The pairs must satisfy `e_i.e'_j = delta_ij`,
/// `e_i.e_j = e'_i.e'_j = 0`.
pub fn arf(q: &QuadForm, pairs: &[(GF2Vec, GF2Vec)]) -> Result<u8> {
    let space = q.space();
    if 2 * pairs.len() != space.dim() {
        return Err(Error::NotSymplecticBasis);
    }
    for (i, (ei, fi)) in pairs.iter().enumerate() {
        for (j, (ej, fj)) in pairs.iter().enumerate() {
            let delta = u8::from(i == j);
            if pair(space, ei, fj)? != delta
                || pair(space, ei, ej)? != 0
                || pair(space, fi, fj)? != 0
            {
                return Err(Error::NotSymplecticBasis);
            }
        }
    }
    // pairwise products as required plus nondegeneracy force independence
    let mut acc = 0u8;
    for (e, f) in pairs {
        acc ^= q.eval(e) & q.eval(f);
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::form::transvection;

    fn std_pairs(g: usize) -> Vec<(GF2Vec, GF2Vec)> {
        (0..g)
            .map(|p| (GF2Vec::unit(2 * g, 2 * p), GF2Vec::unit(2 * g, 2 * p + 1)))
            .collect()
    }

    #[test]
    fn arf_zero_form() {
        let q = QuadForm::new(FormSpace::symplectic(1), GF2Vec::zeros(2)).unwrap();
        assert_eq!(arf(&q, &std_pairs(1)).unwrap(), 0);
    }

    #[test]
    fn arf_single_product() {
        let q = QuadForm::new(FormSpace::symplectic(1), GF2Vec::from_bits(&[1, 1])).unwrap();
        assert_eq!(arf(&q, &std_pairs(1)).unwrap(), 1);
    }

    #[test]
    fn arf_rejects_non_symplectic_basis() {
        let q = QuadForm::new(FormSpace::symplectic(1), GF2Vec::zeros(2)).unwrap();
        let bad = vec![(GF2Vec::unit(2, 0), GF2Vec::unit(2, 0))];
        assert!(matches!(arf(&q, &bad), Err(Error::NotSymplecticBasis)));
    }

    #[test]
    fn refinement_law_exhaustive() {
        for g in 1..=4 {
            let mut rng = crate::rng::SplitMix64::new(g as u64);
            let q = QuadForm::new(FormSpace::symplectic(g), rng.vector(2 * g)).unwrap();
            assert!(q.law_holds_exhaustively());
        }
    }

    #[test]
    fn arf_invariant_under_symplectic_basis_change() {
        // transport the standard pairs by random symplectic maps; the Arf
        // value must not move
        let g = 2;
        let space = FormSpace::symplectic(g);
        let mut rng = crate::rng::SplitMix64::new(99);
        let q = QuadForm::new(Arc::clone(&space), GF2Vec::from_bits(&[1, 0, 1, 1])).unwrap();
        let reference = arf(&q, &std_pairs(g)).unwrap();
        for _ in 0..20 {
            let mut f = crate::form::Isometry::identity(Arc::clone(&space));
            for _ in 0..6 {
                let t = transvection(&space, &rng.nonzero_vector(2 * g)).unwrap();
                f = f.compose(&t);
            }
            let moved: Vec<(GF2Vec, GF2Vec)> = std_pairs(g)
                .iter()
                .map(|(e, ep)| (f.apply(e), f.apply(ep)))
                .collect();
            assert_eq!(arf(&q, &moved).unwrap(), reference);
        }
    }
}
