//! Johnson filtration depths, σ, η, η⁻¹, τ_k and τ_{1,k}, and the two explicit
//! families of mapping classes: boundary twists and braid (point-push)
//! automorphisms.

use num_traits::{One, Signed};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::magnus::{weight_of, MagnusSeries};
use crate::matrix::{determinant, Matrix};
use crate::surface::{braid_boundary, standard_relator, Graded, SurfaceModel};
use crate::word::{GroupEndomorphism, Word};
use crate::{Depth, Int, LieElement};

/// An endomorphism of the free group on `a₁..a_g, b₁..b_g` fixing a boundary
/// word exactly and invertible on first homology.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MappingClassData {
    genus: usize,
    map: GroupEndomorphism,
    boundary: Word,
}

impl MappingClassData {
    /// Requires `φ([a₁,b₁]⋯[a_g,b_g]) = [a₁,b₁]⋯[a_g,b_g]`.
    pub fn new(genus: usize, map: GroupEndomorphism) -> Result<Self> {
        Self::with_boundary(genus, map, standard_relator(genus))
    }

    pub fn with_boundary(genus: usize, map: GroupEndomorphism, boundary: Word) -> Result<Self> {
        if map.rank() != 2 * genus {
            return Err(Error::DimensionMismatch { expected: 2 * genus, found: map.rank() });
        }
        if map.apply(&boundary)? != boundary {
            return Err(Error::BoundaryNotFixed);
        }
        let f = MappingClassData { genus, map, boundary };
        if !determinant(&f.homology_matrix()).abs().is_one() {
            return Err(Error::NotInvertible);
        }
        Ok(f)
    }

    pub fn identity(genus: usize) -> Self {
        Self::new(genus, GroupEndomorphism::identity(2 * genus)).expect("identity is valid")
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn map(&self) -> &GroupEndomorphism {
        &self.map
    }

    pub fn boundary(&self) -> &Word {
        &self.boundary
    }

    /// `φ(x) x⁻¹` for generator `x`.
    pub fn defect(&self, generator: usize) -> Word {
        let mut w = self.map.image(generator).clone();
        w.append_inverse(&Word::generator(generator));
        w
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &MappingClassData) -> Result<MappingClassData> {
        if self.boundary != other.boundary {
            return Err(Error::BoundaryMismatch);
        }
        Ok(MappingClassData { genus: self.genus, map: self.map.compose(&other.map)?, boundary: self.boundary.clone() })
    }

    /// Action on `H₁` in the basis `(α, β)`; column `j` is the image of generator `j`.
    pub fn homology_matrix(&self) -> Matrix<Int> {
        let n = 2 * self.genus;
        let mut m = Matrix::<Int>::zeros(n, n);
        for j in 0..n {
            for l in self.map.image(j).letters() {
                let v = m.get(l.generator, j).clone() + Int::from(l.exponent());
                m.set(l.generator, j, v);
            }
        }
        m
    }
}

/// The Dehn twist about a boundary-parallel curve: conjugation by the relator.
pub fn boundary_twist(genus: usize) -> MappingClassData {
    boundary_twist_about(genus, &standard_relator(genus)).expect("conjugation fixes its own word")
}

/// Conjugation by `w`, recorded with boundary word `w`.
pub fn boundary_twist_about(genus: usize, w: &Word) -> Result<MappingClassData> {
    MappingClassData::with_boundary(genus, GroupEndomorphism::inner(2 * genus, w), w.clone())
}

fn check_point_push(genus: usize, lambdas: &[Word]) -> Result<()> {
    if lambdas.len() != genus {
        return Err(Error::DimensionMismatch { expected: genus, found: lambdas.len() });
    }
    if lambdas.iter().any(|w| w.letters().iter().any(|l| l.generator < genus || l.generator >= 2 * genus)) {
        return Err(Error::InvalidArgument("point-push words must use b-letters only".into()));
    }
    let mut lhs = Word::empty();
    let mut rhs = Word::empty();
    for (i, lam) in lambdas.iter().enumerate() {
        lhs.append(&Word::generator(genus + i).conjugate_by(lam));
        rhs.append(&Word::generator(genus + i));
    }
    if lhs != rhs {
        return Err(Error::RelationViolated("Π λᵢ bᵢ λᵢ⁻¹ ≠ b₁⋯b_g".into()));
    }
    Ok(())
}

/// `bᵢ ↦ λᵢbᵢλᵢ⁻¹, aᵢ ↦ λᵢaᵢ`. Its fixed boundary word is [`braid_boundary`].
pub fn braid_automorphism(lambdas: &[Word]) -> Result<MappingClassData> {
    let g = lambdas.len();
    check_point_push(g, lambdas)?;
    let mut images = Vec::with_capacity(2 * g);
    for (i, lam) in lambdas.iter().enumerate() {
        images.push(lam.mul(&Word::generator(i)));
    }
    for (i, lam) in lambdas.iter().enumerate() {
        images.push(Word::generator(g + i).conjugate_by(lam));
    }
    MappingClassData::with_boundary(g, GroupEndomorphism::new(images)?, braid_boundary(g))
}

/// Largest `k ≤ cap` with every defect `φ(x)x⁻¹` in `F_k`.
pub fn johnson_depth(f: &MappingClassData, cap: usize) -> Depth {
    let mut depth = Depth::AtLeast(cap);
    if cap <= 1 {
        return depth;
    }
    for x in 0..2 * f.genus {
        let d = match weight_of(&f.defect(x), cap - 1) {
            Depth::Exact(k) => Depth::Exact(k),
            Depth::AtLeast(_) => Depth::AtLeast(cap),
        };
        depth = depth.min(d);
    }
    depth
}

/// Like [`johnson_depth`], with defects measured in the surface group.
pub fn jprime_depth(model: &SurfaceModel, f: &MappingClassData, cap: usize) -> Result<Depth> {
    if model.relator() != f.boundary() {
        return Err(Error::BoundaryMismatch);
    }
    let mut depth = Depth::AtLeast(cap);
    if cap <= 1 {
        return Ok(depth);
    }
    for x in 0..2 * f.genus {
        match model.surface_class(&f.defect(x), cap - 1)? {
            Graded::Class { weight, .. } => depth = depth.min(Depth::Exact(weight)),
            Graded::Trivial { .. } => {}
        }
    }
    Ok(depth)
}

/// Whether Lie parts live in the free Lie ring or modulo the symplectic ideal.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TauKind {
    Free,
    Surface,
}

/// A homomorphism `H₁ → ℒ_k`, given on the basis `(α₁..α_g, β₁..β_g)`.
#[derive(Clone, Debug, PartialEq)]
pub struct HomValue {
    pub genus: usize,
    pub weight: usize,
    pub kind: TauKind,
    pub values: Vec<LieElement>,
}

/// An element `Σ e_j ⊗ ℓ_j` of `H₁ ⊗ ℒ_k`, indexed by the basis `(α, β)`.
#[derive(Clone, Debug, PartialEq)]
pub struct TauValue {
    pub genus: usize,
    pub weight: usize,
    pub kind: TauKind,
    pub parts: Vec<LieElement>,
}

/// `alpha1`, …, `beta1`, …
pub fn basis_symbol(genus: usize, j: usize) -> String {
    if j < genus { format!("alpha{}", j + 1) } else { format!("beta{}", j - genus + 1) }
}

pub fn parse_basis_symbol(genus: usize, s: &str) -> Result<usize> {
    let parse = |rest: &str| rest.parse::<usize>().ok().filter(|&i| (1..=genus).contains(&i));
    if let Some(i) = s.strip_prefix("alpha").and_then(parse) {
        return Ok(i - 1);
    }
    if let Some(i) = s.strip_prefix("beta").and_then(parse) {
        return Ok(genus + i - 1);
    }
    Err(Error::Parse(format!("unknown basis symbol `{s}`")))
}

impl HomValue {
    pub fn zero(genus: usize, weight: usize, kind: TauKind) -> Self {
        HomValue { genus, weight, kind, values: vec![LieElement::zero(weight); 2 * genus] }
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(LieElement::is_zero)
    }
}

impl TauValue {
    pub fn zero(genus: usize, weight: usize, kind: TauKind) -> Self {
        TauValue { genus, weight, kind, parts: vec![LieElement::zero(weight); 2 * genus] }
    }

    pub fn is_zero(&self) -> bool {
        self.parts.iter().all(LieElement::is_zero)
    }

    /// Nonzero `(basis index, Lie part)` pairs.
    pub fn terms(&self) -> impl Iterator<Item = (usize, &LieElement)> {
        self.parts.iter().enumerate().filter(|(_, e)| !e.is_zero())
    }

    /// Termwise sum. Surface values must be re-normalized with [`surface_reduce`].
    pub fn add(&self, other: &TauValue) -> Result<TauValue> {
        if (self.genus, self.weight, self.kind) != (other.genus, other.weight, other.kind) {
            return Err(Error::InvalidArgument("adding tensors of different shape".into()));
        }
        let parts = self.parts.iter().zip(&other.parts).map(|(a, b)| a.add(b)).collect();
        Ok(TauValue { parts, ..self.clone() })
    }
}

/// Reduces every Lie part modulo the symplectic ideal.
pub fn surface_reduce(model: &SurfaceModel, t: &TauValue) -> TauValue {
    TauValue {
        genus: t.genus,
        weight: t.weight,
        kind: TauKind::Surface,
        parts: t.parts.iter().map(|e| model.reduce(e).normal_form).collect(),
    }
}

/// `η(Σ h ⊗ ℓ)(x) = Σ ω(h, x) ℓ`.
pub fn eta(t: &TauValue) -> HomValue {
    let g = t.genus;
    let mut values = vec![LieElement::zero(t.weight); 2 * g];
    for i in 0..g {
        values[g + i] = t.parts[i].clone();
        values[i] = t.parts[g + i].neg();
    }
    HomValue { genus: g, weight: t.weight, kind: t.kind, values }
}

/// `η⁻¹(h) = Σᵢ αᵢ ⊗ h(βᵢ) − βᵢ ⊗ h(αᵢ)`.
pub fn eta_inverse(h: &HomValue) -> TauValue {
    let g = h.genus;
    let mut parts = vec![LieElement::zero(h.weight); 2 * g];
    for i in 0..g {
        parts[i] = h.values[g + i].clone();
        parts[g + i] = h.values[i].neg();
    }
    TauValue { genus: g, weight: h.weight, kind: h.kind, parts }
}

fn require_depth(f: &MappingClassData, k: usize) -> Result<()> {
    if k == 0 {
        return Err(Error::InvalidArgument("weight must be positive".into()));
    }
    let d = johnson_depth(f, k);
    if d.at_least(k) {
        Ok(())
    } else {
        Err(Error::DepthTooShallow { required: k, found: d })
    }
}

fn free_classes(f: &MappingClassData, k: usize) -> Result<Vec<LieElement>> {
    let n = 2 * f.genus;
    (0..n)
        .map(|x| MagnusSeries::<Int>::of_word(&f.defect(x), n, k).lie_component(k))
        .collect()
}

/// `[x] ↦ [φ(x)x⁻¹] ∈ ℒ_k` of the surface group.
pub fn sigma(model: &SurfaceModel, f: &MappingClassData, k: usize) -> Result<HomValue> {
    require_depth(f, k)?;
    let values = free_classes(f, k)?.iter().map(|e| model.reduce(e).normal_form).collect();
    Ok(HomValue { genus: f.genus, weight: k, kind: TauKind::Surface, values })
}

/// `[x] ↦ [φ(x)x⁻¹] ∈ ℒ_k` of the free group.
pub fn sigma_free(f: &MappingClassData, k: usize) -> Result<HomValue> {
    require_depth(f, k)?;
    Ok(HomValue { genus: f.genus, weight: k, kind: TauKind::Free, values: free_classes(f, k)? })
}

/// `τ_k = η⁻¹ ∘ σ`, surface-reduced.
pub fn tau(model: &SurfaceModel, f: &MappingClassData, k: usize) -> Result<TauValue> {
    Ok(eta_inverse(&sigma(model, f, k)?))
}

/// `τ_{1,k}`, valued in the free Lie ring.
pub fn tau1(f: &MappingClassData, k: usize) -> Result<TauValue> {
    Ok(eta_inverse(&sigma_free(f, k)?))
}

/// `−Σᵢ βᵢ ⊗ [λᵢ]` for point-push data with every `λᵢ ∈ F_k`.
pub fn point_push_tau(model: &SurfaceModel, lambdas: &[Word], k: usize) -> Result<TauValue> {
    let g = model.genus();
    check_point_push(g, lambdas)?;
    if k == 0 {
        return Err(Error::InvalidArgument("weight must be positive".into()));
    }
    let mut t = TauValue::zero(g, k, TauKind::Surface);
    for (i, lam) in lambdas.iter().enumerate() {
        if k > 1 {
            if let Depth::Exact(d) = weight_of(lam, k - 1) {
                return Err(Error::WeightTooLow { required: k, found: Depth::Exact(d) });
            }
        }
        let class = model.free_class(lam, k)?;
        t.parts[g + i] = model.reduce(&class.neg()).normal_form;
    }
    Ok(t)
}

/// Whether `λ` satisfies the boundary relation (and uses only b-letters).
pub fn is_point_push(genus: usize, lambdas: &[Word]) -> bool {
    check_point_push(genus, lambdas).is_ok()
}
