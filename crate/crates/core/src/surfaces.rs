//! The specific homology spaces and structure maps of the covering setup.
//!
//! Base surfaces: a non-orientable closed surface with first GF(2)-homology
//! of dimension g+1 carrying the dot product (basis `v_0..v_g`), and its
//! orientation double cover of genus g with the symplectic product (basis
//! `c_1..c_{2g}`, consecutive pairs pairing to 1). Over each sits the total
//! space of a trivial circle bundle, adding the fiber class `h` as the last
//! coordinate.
//!
//! Derived symplectic basis: `e_i = c_{2i-1}`, `e'_i = c_{2i-1} + c_{2i}`;
//! the `e'_i` span the kernel of the covering projection on homology.
//!
//! A special covering is a linear form on a total-space homology taking the
//! value 1 on `h`. Coordinates of coverings are always written on the named
//! basis with `h` last; bitstrings print the `h` value as the final
//! character.

use std::sync::Arc;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::form::FormSpace;
use crate::gf2::{GF2Mat, GF2Vec};

/// Homology of the non-orientable base: dimension g+1, dot product.
#[derive(Clone, Debug)]
pub struct NSurface {
    g: usize,
    space: Arc<FormSpace>,
}

impl NSurface {
    #[must_use]
    pub fn new(g: usize) -> Self {
        assert!(g >= 1, "genus parameter must be at least 1");
        Self {
            g,
            space: FormSpace::dot(g + 1),
        }
    }

    #[must_use]
    pub const fn g(&self) -> usize {
        self.g
    }

    #[must_use]
    pub fn dim(&self) -> usize {
        self.g + 1
    }

    #[must_use]
    pub fn space(&self) -> &Arc<FormSpace> {
        &self.space
    }

    /// Basis vector `v_i`.
    #[must_use]
    pub fn v(&self, i: usize) -> GF2Vec {
        GF2Vec::unit(self.dim(), i)
    }

    /// The all-ones vector `v_0 + ... + v_g`, fixed by every isometry.
    #[must_use]
    pub fn v_sum(&self) -> GF2Vec {
        GF2Vec::from_bits(&vec![1; self.dim()])
    }
}

/// Homology of the orientation cover: dimension 2g, symplectic product in
/// the pairing basis `c_1..c_{2g}` (coordinate `2p` is `c_{2p+1}`).
#[derive(Clone, Debug)]
pub struct OSurface {
    g: usize,
    space: Arc<FormSpace>,
}

impl OSurface {
    #[must_use]
    pub fn new(g: usize) -> Self {
        assert!(g >= 1, "genus parameter must be at least 1");
        Self {
            g,
            space: FormSpace::symplectic(g),
        }
    }

    #[must_use]
    pub const fn g(&self) -> usize {
        self.g
    }

    #[must_use]
    pub fn dim(&self) -> usize {
        2 * self.g
    }

    #[must_use]
    pub fn space(&self) -> &Arc<FormSpace> {
        &self.space
    }

    /// Basis vector `c_i`, 1-based to match the naming `c_1..c_{2g}`.
    #[must_use]
    pub fn c(&self, i: usize) -> GF2Vec {
        assert!((1..=2 * self.g).contains(&i));
        GF2Vec::unit(self.dim(), i - 1)
    }

    /// Derived basis vector `e_i = c_{2i-1}`, 1-based.
    #[must_use]
    pub fn e(&self, i: usize) -> GF2Vec {
        assert!((1..=self.g).contains(&i));
        GF2Vec::unit(self.dim(), 2 * (i - 1))
    }

    /// Derived basis vector `e'_i = c_{2i-1} + c_{2i}`, 1-based. These span
    /// the kernel of the covering projection.
    #[must_use]
    pub fn e_prime(&self, i: usize) -> GF2Vec {
        assert!((1..=self.g).contains(&i));
        let mut v = GF2Vec::zeros(self.dim());
        v.set(2 * (i - 1), 1);
        v.set(2 * (i - 1) + 1, 1);
        v
    }

    /// Change of basis from (e, e')-coordinates to c-coordinates: the columns
    /// are `e_1..e_g, e'_1..e'_g` written in the c basis.
    #[must_use]
    pub fn split_to_pairs(&self) -> GF2Mat {
        let mut cols = Vec::with_capacity(2 * self.g);
        for i in 1..=self.g {
            cols.push(self.e(i));
        }
        for i in 1..=self.g {
            cols.push(self.e_prime(i));
        }
        GF2Mat::from_cols(&cols).expect("columns share the dimension")
    }
}

/// Total space of the trivial circle bundle over the non-orientable base:
/// coordinates `v̄_0..v̄_g` then `h`.
#[derive(Clone, Copy, PartialEq, Eq, Debug, PartialOrd, Ord, Hash)]
pub struct TotalN {
    pub g: usize,
}

impl TotalN {
    #[must_use]
    pub const fn dim(&self) -> usize {
        self.g + 2
    }

    #[must_use]
    pub const fn h_index(&self) -> usize {
        self.g + 1
    }
}

/// Total space of the pulled-back bundle over the orientation cover:
/// coordinates `c̄_1..c̄_{2g}` then `h`.
#[derive(Clone, Copy, PartialEq, Eq, Debug, PartialOrd, Ord, Hash)]
pub struct TotalO {
    pub g: usize,
}

impl TotalO {
    #[must_use]
    pub const fn dim(&self) -> usize {
        2 * self.g + 1
    }

    #[must_use]
    pub const fn h_index(&self) -> usize {
        2 * self.g
    }

    /// `ē'_i = c̄_{2i-1} + c̄_{2i}`, 1-based; these span the kernel of the
    /// total-space covering projection.
    #[must_use]
    pub fn e_prime_bar(&self, i: usize) -> GF2Vec {
        assert!((1..=self.g).contains(&i));
        let mut v = GF2Vec::zeros(self.dim());
        v.set(2 * (i - 1), 1);
        v.set(2 * (i - 1) + 1, 1);
        v
    }

    /// `ē_i = c̄_{2i-1}`, 1-based.
    #[must_use]
    pub fn e_bar(&self, i: usize) -> GF2Vec {
        assert!((1..=self.g).contains(&i));
        GF2Vec::unit(self.dim(), 2 * (i - 1))
    }
}

/// Which total space a covering lives on.
#[derive(Clone, Copy, PartialEq, Eq, Debug, PartialOrd, Ord, Hash)]
pub enum Host {
    N(TotalN),
    O(TotalO),
}

impl Host {
    #[must_use]
    pub const fn dim(&self) -> usize {
        match self {
            Host::N(t) => t.dim(),
            Host::O(t) => t.dim(),
        }
    }

    #[must_use]
    pub const fn h_index(&self) -> usize {
        match self {
            Host::N(t) => t.h_index(),
            Host::O(t) => t.h_index(),
        }
    }

    #[must_use]
    pub const fn g(&self) -> usize {
        match self {
            Host::N(t) => t.g,
            Host::O(t) => t.g,
        }
    }
}

/// A special covering: a linear form on a total-space homology with value 1
/// on the fiber class. Stored as the row of values on the named basis.
#[derive(Clone, PartialEq, Eq, Debug, PartialOrd, Ord, Hash)]
pub struct SpecialCovering {
    host: Host,
    values: GF2Vec,
}

impl SpecialCovering {
    /// Wraps a full value row, checking the fiber condition.
    pub fn new(host: Host, values: GF2Vec) -> Result<Self> {
        if values.len() != host.dim() {
            return Err(Error::Shape(format!(
                "covering values must have length {}, got {}",
                host.dim(),
                values.len()
            )));
        }
        if values.get(host.h_index()) != 1 {
            return Err(Error::NotSpecial);
        }
        Ok(Self { host, values })
    }

    /// Covering over the non-orientable side from its values on `v̄_0..v̄_g`
    /// (the fiber value is appended).
    pub fn over_n(g: usize, vbar_values: &GF2Vec) -> Result<Self> {
        if vbar_values.len() != g + 1 {
            return Err(Error::Shape(format!(
                "expected {} values on the base classes, got {}",
                g + 1,
                vbar_values.len()
            )));
        }
        let mut values = vbar_values.extended(g + 2);
        values.set(g + 1, 1);
        Self::new(Host::N(TotalN { g }), values)
    }

    /// Covering over the orientation-cover side from its values on
    /// `c̄_1..c̄_{2g}`.
    pub fn over_o(g: usize, cbar_values: &GF2Vec) -> Result<Self> {
        if cbar_values.len() != 2 * g {
            return Err(Error::Shape(format!(
                "expected {} values on the cover classes, got {}",
                2 * g,
                cbar_values.len()
            )));
        }
        let mut values = cbar_values.extended(2 * g + 1);
        values.set(2 * g, 1);
        Self::new(Host::O(TotalO { g }), values)
    }

    #[must_use]
    pub const fn host(&self) -> Host {
        self.host
    }

    /// The full value row (fiber value last).
    #[must_use]
    pub fn values(&self) -> &GF2Vec {
        &self.values
    }

    /// Value on basis vector `i` of the host.
    #[must_use]
    pub fn value(&self, i: usize) -> u8 {
        self.values.get(i)
    }

    /// Evaluates the form on an arbitrary homology class of the host.
    #[must_use]
    pub fn eval(&self, x: &GF2Vec) -> u8 {
        self.values.dot(x)
    }

    /// Values on the base classes only (everything except the fiber).
    #[must_use]
    pub fn base_values(&self) -> GF2Vec {
        self.values.prefix(self.host.dim() - 1)
    }

    /// Parity of the value sum over the base classes; for the
    /// non-orientable side this is the weak-equivalence class.
    #[must_use]
    pub fn base_sum(&self) -> u8 {
        self.base_values().parity()
    }

    #[must_use]
    pub fn bitstring(&self) -> String {
        self.values.to_string()
    }

    /// Precomposes with a total-space map given by its matrix (columns are
    /// images). The result must again be special, which callers guarantee by
    /// using fiber-fixing maps.
    pub(crate) fn pullback_through(&self, mat: &GF2Mat, host: Host) -> Result<Self> {
        Self::new(host, mat.pullback(&self.values))
    }
}

/// The free parameters of the two sections: `rho` (length g+1) for the
/// linear section over the non-orientable side and `r` (length 2g) for the
/// quadratic section over the cover. Derived quantities are recomputed on
/// demand, never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectionParams {
    g: usize,
    rho: GF2Vec,
    r: GF2Vec,
}

impl SectionParams {
    pub fn new(g: usize, rho: GF2Vec, r: GF2Vec) -> Result<Self> {
        if rho.len() != g + 1 {
            return Err(Error::Shape(format!(
                "rho must have length {}, got {}",
                g + 1,
                rho.len()
            )));
        }
        if r.len() != 2 * g {
            return Err(Error::Shape(format!(
                "r must have length {}, got {}",
                2 * g,
                r.len()
            )));
        }
        Ok(Self { g, rho, r })
    }

    /// Both parameter vectors zero.
    #[must_use]
    pub fn zero(g: usize) -> Self {
        Self {
            g,
            rho: GF2Vec::zeros(g + 1),
            r: GF2Vec::zeros(2 * g),
        }
    }

    pub fn with_rho(g: usize, rho: GF2Vec) -> Result<Self> {
        Self::new(g, rho, GF2Vec::zeros(2 * g))
    }

    pub fn with_r(g: usize, r: GF2Vec) -> Result<Self> {
        Self::new(g, GF2Vec::zeros(g + 1), r)
    }

    #[must_use]
    pub const fn g(&self) -> usize {
        self.g
    }

    #[must_use]
    pub fn rho(&self) -> &GF2Vec {
        &self.rho
    }

    #[must_use]
    pub fn r(&self) -> &GF2Vec {
        &self.r
    }

    /// `beta_i = r_{2i-1} + r_{2i} + 1`, 1-based.
    #[must_use]
    pub fn beta(&self, i: usize) -> u8 {
        assert!((1..=self.g).contains(&i));
        self.r.get(2 * (i - 1)) ^ self.r.get(2 * (i - 1) + 1) ^ 1
    }

    /// `t = sum_i beta_i e_i` in c-coordinates of the cover surface.
    #[must_use]
    pub fn t_vec(&self) -> GF2Vec {
        let mut t = GF2Vec::zeros(2 * self.g);
        for i in 1..=self.g {
            t.set(2 * (i - 1), self.beta(i));
        }
        t
    }

    /// The linear-section image of `t` in the total space of the cover
    /// (same c̄-coordinates, fiber coordinate 0).
    #[must_use]
    pub fn t_bar(&self) -> GF2Vec {
        self.t_vec().extended(2 * self.g + 1)
    }

    /// `sum_i r_{2i-1} r_{2i}`.
    #[must_use]
    pub fn r_const(&self) -> u8 {
        let mut acc = 0u8;
        for p in 0..self.g {
            acc ^= self.r.get(2 * p) & self.r.get(2 * p + 1);
        }
        acc
    }

    /// True in the exceptional configuration `r_{2i-1} + r_{2i} = 1` for all
    /// i, equivalently `t = 0`.
    #[must_use]
    pub fn is_exceptional(&self) -> bool {
        self.t_vec().is_zero()
    }
}

/// Projection of the orientation-cover map on base homology: the
/// (g+1) x (2g) matrix sending both members of pair `i` to `v_0 + v_i`.
/// Kernel spanned by the `e'_i`, image spanned by the `v_0 + v_i`.
#[must_use]
pub fn pi_star(g: usize) -> GF2Mat {
    let mut m = GF2Mat::zeros(g + 1, 2 * g);
    for i in 1..=g {
        for col in [2 * (i - 1), 2 * (i - 1) + 1] {
            m.set(0, col, 1);
            m.set(i, col, 1);
        }
    }
    m
}

/// Total-space version of [`pi_star`]: (g+2) x (2g+1), acting as `pi_star`
/// on the barred classes and fixing the fiber class.
#[must_use]
pub fn tilde_pi_star(g: usize) -> GF2Mat {
    let base = pi_star(g);
    let mut m = GF2Mat::zeros(g + 2, 2 * g + 1);
    m.set_block(0, 0, &base);
    m.set(g + 1, 2 * g, 1);
    m
}

/// Bundle projection on homology for the non-orientable side: drops the
/// fiber coordinate, (g+1) x (g+2).
#[must_use]
pub fn pn_star(g: usize) -> GF2Mat {
    let mut m = GF2Mat::zeros(g + 1, g + 2);
    m.set_block(0, 0, &GF2Mat::identity(g + 1));
    m
}

/// Bundle projection on homology for the cover side: drops the fiber
/// coordinate, (2g) x (2g+1).
#[must_use]
pub fn po_star(g: usize) -> GF2Mat {
    let mut m = GF2Mat::zeros(2 * g, 2 * g + 1);
    m.set_block(0, 0, &GF2Mat::identity(2 * g));
    m
}

/// All 2^{g+1} special coverings of the non-orientable side, in ascending
/// bitstring order of their values on `v̄_0..v̄_g`.
#[must_use]
pub fn specials(host: TotalN) -> Vec<SpecialCovering> {
    let g = host.g;
    (0..(1u64 << (g + 1)))
        .map(|k| {
            let vbar = GF2Vec::from_counter_msb(k, g + 1);
            SpecialCovering::over_n(g, &vbar).expect("constructed special")
        })
        .collect()
}

/// A member of the pulled-back family on the cover side: the covering
/// itself, plus the two coverings of the non-orientable side inducing it
/// (they differ by the all-ones shift on the barred base classes).
#[derive(Clone, Debug)]
pub struct EpiMember {
    pub phi: SpecialCovering,
    pub preimages: (SpecialCovering, SpecialCovering),
}

/// The special coverings of the cover side that factor through the covering
/// projection: value 1 on the fiber class and 0 on every `ē'_i`. Exactly
/// 2^g of them, ascending by bitstring.
#[must_use]
pub fn epi_set(g: usize) -> Vec<EpiMember> {
    let mut out = Vec::with_capacity(1 << g);
    for k in 0..(1u64 << g) {
        let pair_bits = GF2Vec::from_counter_msb(k, g);
        let mut cbar = GF2Vec::zeros(2 * g);
        for p in 0..g {
            cbar.set(2 * p, pair_bits.get(p));
            cbar.set(2 * p + 1, pair_bits.get(p));
        }
        let phi = SpecialCovering::over_o(g, &cbar).expect("constructed special");
        // psi with psi(vbar_0) = 0 forces psi(vbar_i) = phi(cbar_{2i-1});
        // the other choice shifts every value by 1.
        let mut base0 = GF2Vec::zeros(g + 1);
        let mut base1 = GF2Vec::zeros(g + 1);
        base1.set(0, 1);
        for i in 1..=g {
            base0.set(i, pair_bits.get(i - 1));
            base1.set(i, pair_bits.get(i - 1) ^ 1);
        }
        let psi0 = SpecialCovering::over_n(g, &base0).expect("constructed special");
        let psi1 = SpecialCovering::over_n(g, &base1).expect("constructed special");
        out.push(EpiMember {
            phi,
            preimages: (psi0, psi1),
        });
    }
    out
}

/// Membership test for the pulled-back family.
#[must_use]
pub fn in_epi_set(phi: &SpecialCovering) -> bool {
    match phi.host() {
        Host::O(total) => (1..=total.g).all(|i| phi.eval(&total.e_prime_bar(i)) == 0),
        Host::N(_) => false,
    }
}

/// Linear section of the bundle projection on the non-orientable side:
/// `v_i -> v̄_i + rho_i h`, extended linearly.
#[must_use]
pub fn sigma_eval(params: &SectionParams, x: &GF2Vec) -> GF2Vec {
    let g = params.g();
    assert_eq!(x.len(), g + 1, "sigma_eval: expected length {}", g + 1);
    let mut out = x.extended(g + 2);
    out.set(g + 1, x.dot(params.rho()));
    out
}

/// Matrix of the linear section, (g+2) x (g+1).
#[must_use]
pub fn sigma_matrix(params: &SectionParams) -> GF2Mat {
    let g = params.g();
    let mut m = GF2Mat::zeros(g + 2, g + 1);
    m.set_block(0, 0, &GF2Mat::identity(g + 1));
    for j in 0..=g {
        m.set(g + 1, j, params.rho().get(j));
    }
    m
}

/// Quadratic section of the bundle projection on the cover side. Closed
/// form: `s(sum x_i c_i) = sum x_i (c̄_i + r_i h) + (sum_p x_{2p} x_{2p+1}) h`,
/// the unique extension of `s(c_i) = c̄_i + r_i h` satisfying
/// `s(a+b) = s(a) + s(b) + (a.b) h`.
#[must_use]
pub fn s_eval(params: &SectionParams, a: &GF2Vec) -> GF2Vec {
    let g = params.g();
    assert_eq!(a.len(), 2 * g, "s_eval: expected length {}", 2 * g);
    let mut out = a.extended(2 * g + 1);
    let mut fiber = a.dot(params.r());
    for p in 0..g {
        fiber ^= a.get(2 * p) & a.get(2 * p + 1);
    }
    out.set(2 * g, fiber);
    out
}

/// Finitely presented description of the covering space group, plus its
/// embedding into the total-space group.
///
/// Generators `w_0..w_g, k`; relators: the commutators `[w_j, k]` and the
/// main relator `w_0^2 ... w_g^2 k^epsilon`. The embedding sends `k` to
/// `h^2` and `w_i` to `u_i h^{epsilon_i}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    g: usize,
    epsilon: u8,
    lift_exponents: Vec<u8>,
}

impl Presentation {
    #[must_use]
    pub const fn g(&self) -> usize {
        self.g
    }

    /// Exponent of `k` in the main relator.
    #[must_use]
    pub const fn epsilon(&self) -> u8 {
        self.epsilon
    }

    /// The exponents `epsilon_i` in the embedding `w_i -> u_i h^{epsilon_i}`.
    #[must_use]
    pub fn lift_exponents(&self) -> &[u8] {
        &self.lift_exponents
    }

    #[must_use]
    pub fn generators(&self) -> Vec<String> {
        let mut names: Vec<String> = (0..=self.g).map(|i| format!("w{i}")).collect();
        names.push("k".into());
        names
    }

    #[must_use]
    pub fn commutator_relators(&self) -> Vec<String> {
        (0..=self.g).map(|j| format!("[w{j},k]")).collect()
    }

    #[must_use]
    pub fn main_relator(&self) -> String {
        let mut s = (0..=self.g)
            .map(|j| format!("w{j}^2"))
            .collect::<Vec<_>>()
            .join(" ");
        if self.epsilon == 1 {
            s.push_str(" k^1");
        }
        s
    }

    /// Text form, e.g. `<w0,w1,k | [w0,k],[w1,k], w0^2 w1^2 k^1>`.
    #[must_use]
    pub fn text(&self) -> String {
        format!(
            "<{} | {}, {}>",
            self.generators().join(","),
            self.commutator_relators().join(","),
            self.main_relator()
        )
    }

    #[must_use]
    pub fn to_json(&self) -> Value {
        let embedding: Vec<Value> = std::iter::once(json!({"generator": "k", "image": "h^2"}))
            .chain(self.lift_exponents.iter().enumerate().map(|(i, &e)| {
                json!({
                    "generator": format!("w{i}"),
                    "image": format!("u{i} h^{e}"),
                })
            }))
            .collect();
        json!({
            "generators": self.generators(),
            "relators": {
                "commutators": self.commutator_relators(),
                "main": self.main_relator(),
            },
            "epsilon": self.epsilon,
            "embedding": embedding,
        })
    }
}

impl std::fmt::Display for Presentation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.text())
    }
}

/// Presentation of the covering space determined by a special covering of
/// the non-orientable side: `epsilon` is the parity of the value sum on the
/// barred base classes.
pub fn presentation(psi: &SpecialCovering) -> Result<Presentation> {
    let Host::N(total) = psi.host() else {
        return Err(Error::WrongHost(
            "presentations are emitted for coverings over the non-orientable side".into(),
        ));
    };
    let lift_exponents: Vec<u8> = (0..=total.g).map(|i| psi.value(i)).collect();
    Ok(Presentation {
        g: total.g,
        epsilon: psi.base_sum(),
        lift_exponents,
    })
}
