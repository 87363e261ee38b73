//! First homology of the closed surface: the intersection form, symplectic
//! matrices, Lagrangians and the H₁-level extension checks.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::{determinant, hermite_rows, integer_kernel, inverse, kernel, rank, rref, smith, solve_integer, Matrix};
use crate::quadratic::Surd;
use crate::{Int, Rational};

/// Gram matrix of ω in the basis `(α₁..α_g, β₁..β_g)`: `[[0, I], [−I, 0]]`.
pub fn gram(genus: usize) -> Matrix<Int> {
    let mut j = Matrix::zeros(2 * genus, 2 * genus);
    for i in 0..genus {
        j.set(i, genus + i, Int::one());
        j.set(genus + i, i, -Int::one());
    }
    j
}

/// Algebraic intersection number `ω(u, v)`.
pub fn omega(u: &[Int], v: &[Int]) -> Result<Int> {
    if u.len() != v.len() || !u.len().is_multiple_of(2) {
        return Err(Error::DimensionMismatch { expected: u.len(), found: v.len() });
    }
    Ok(omega_generic(u, v))
}

fn omega_generic<T: crate::Scalar>(u: &[T], v: &[T]) -> T {
    let g = u.len() / 2;
    (0..g).fold(T::zero(), |acc, i| acc + u[i].clone() * v[g + i].clone() - u[g + i].clone() * v[i].clone())
}

pub fn is_symplectic(m: &Matrix<Int>) -> bool {
    if !m.is_square() || !m.rows().is_multiple_of(2) {
        return false;
    }
    let j = gram(m.rows() / 2);
    m.transpose().mul(&j).mul(m) == j
}

/// Whether `det(M − I) = 0` or `det(M + I) = 0`.
pub fn eigen_pm1_condition(m: &Matrix<Int>) -> bool {
    let id = Matrix::identity(m.rows());
    determinant(&m.sub(&id)).is_zero() || determinant(&m.add(&id)).is_zero()
}

/// A rank-`g` isotropic direct summand of `ℤ^{2g}`, stored by its Hermite
/// normal form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Lagrangian {
    genus: usize,
    basis: Matrix<Int>,
}

impl Lagrangian {
    pub fn new(genus: usize, span: Vec<Vec<Int>>) -> Result<Self> {
        if let Some(v) = span.iter().find(|v| v.len() != 2 * genus) {
            return Err(Error::DimensionMismatch { expected: 2 * genus, found: v.len() });
        }
        let m = if span.is_empty() { Matrix::zeros(0, 2 * genus) } else { Matrix::from_rows(span) };
        let basis = hermite_rows(&m);
        if basis.rows() != genus {
            return Err(Error::RankDeficient { expected: genus, found: basis.rows() });
        }
        for i in 0..genus {
            for j in i + 1..genus {
                if !omega_generic(basis.row(i), basis.row(j)).is_zero() {
                    return Err(Error::NotIsotropic);
                }
            }
        }
        if smith(&basis).divisors.iter().any(|d| !d.is_one()) {
            return Err(Error::NotDirectSummand);
        }
        Ok(Lagrangian { genus, basis })
    }

    pub fn from_i64(genus: usize, span: &[Vec<i64>]) -> Result<Self> {
        Lagrangian::new(genus, span.iter().map(|r| r.iter().map(|&v| Int::from(v)).collect()).collect())
    }

    /// `span{α₁..α_g}`: the kernel for the standard handlebody.
    pub fn standard(genus: usize) -> Self {
        Lagrangian::coordinate(genus, 0)
    }

    /// Coordinate Lagrangian taking `β_i` instead of `α_i` for each set bit `i`.
    pub fn coordinate(genus: usize, mask: u64) -> Self {
        let span = (0..genus)
            .map(|i| {
                let mut v = vec![Int::zero(); 2 * genus];
                v[if mask >> i & 1 == 1 { genus + i } else { i }] = Int::one();
                v
            })
            .collect();
        Lagrangian::new(genus, span).expect("coordinate Lagrangians are valid")
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn basis(&self) -> &Matrix<Int> {
        &self.basis
    }

    pub fn span(&self) -> Vec<Vec<Int>> {
        self.basis.to_rows()
    }
}

/// Whether `M · span(L) ⊆ span(L)` over ℚ.
pub fn is_invariant(m: &Matrix<Int>, l: &Lagrangian) -> Result<bool> {
    if m.rows() != 2 * l.genus || !m.is_square() {
        return Err(Error::DimensionMismatch { expected: 2 * l.genus, found: m.rows() });
    }
    let q = |v: &Int| BigRational::from_integer(v.clone());
    for i in 0..l.genus {
        let image = m.mul_vec(l.basis.row(i));
        let mut rows = l.basis.to_rows();
        rows.push(image);
        if rank(&Matrix::from_rows(rows).map(q)) > l.genus {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A symplectic basis `(x₁..x_g, y₁..y_g)` whose `x`'s span `L`, as the columns
/// of `S`. Satisfies `SᵀJS = J`.
pub fn adapt_symplectic_basis(l: &Lagrangian) -> Result<Matrix<Int>> {
    let g = l.genus;
    let x = l.basis.clone();
    let j = gram(g);
    // ω(x_i, z) = δ_ij: try z = −J Xᵀ (X Xᵀ)⁻¹ first, then a Smith solve
    let q = |v: &Int| BigRational::from_integer(v.clone());
    let gm = x.mul(&x.transpose()).map(q);
    let gi = inverse(&gm).ok_or(Error::RankDeficient { expected: g, found: rank(&gm) })?;
    let z = j.map(q).mul(&x.transpose().map(q)).mul(&gi).scale(&-Rational::one());
    let mut zs: Vec<Vec<Int>> = Vec::with_capacity(g);
    if z.to_rows().iter().flatten().all(|v| v.is_integer()) {
        for c in 0..g {
            zs.push(z.column(c).iter().map(|v| v.to_integer()).collect());
        }
    } else {
        let a = x.mul(&j);
        for c in 0..g {
            let e: Vec<Int> = (0..g).map(|i| if i == c { Int::one() } else { Int::zero() }).collect();
            zs.push(solve_integer(&a, &e).ok_or(Error::NotDirectSummand)?);
        }
    }
    let mut ys: Vec<Vec<Int>> = Vec::with_capacity(g);
    for (jdx, z) in zs.into_iter().enumerate() {
        let mut y = z.clone();
        for (i, yi) in ys.iter().enumerate() {
            let c = omega_generic(yi, &z);
            for (t, xv) in y.iter_mut().zip(x.row(i)) {
                *t += &c * xv;
            }
        }
        debug_assert!(ys.iter().all(|yi| omega_generic(yi, &y).is_zero()), "column {jdx}");
        ys.push(y);
    }
    let mut s = Matrix::zeros(2 * g, 2 * g);
    for (c, y) in ys.iter().enumerate() {
        for (r, v) in y.iter().enumerate() {
            s.set(r, c, x.get(c, r).clone());
            s.set(r, g + c, v.clone());
        }
    }
    if s.transpose().mul(&j).mul(&s) != j {
        return Err(Error::InternalFault("adapted basis is not symplectic".into()));
    }
    Ok(s)
}

/// Characteristic polynomial `det(λI − M)`, coefficients from the constant term up.
pub fn characteristic_polynomial(m: &Matrix<Int>) -> Vec<Int> {
    let n = m.rows();
    let a = m.map(|v| BigRational::from_integer(v.clone()));
    let mut coeffs = vec![Rational::zero(); n + 1];
    coeffs[n] = Rational::one();
    let mut mk = Matrix::<Rational>::zeros(n, n);
    let id = Matrix::<Rational>::identity(n);
    for k in 1..=n {
        mk = a.mul(&mk).add(&id.scale(&coeffs[n - k + 1]));
        let am = a.mul(&mk);
        let tr = (0..n).fold(Rational::zero(), |acc, i| acc + am.get(i, i).clone());
        coeffs[n - k] = -tr / Rational::from_integer(Int::from(k));
    }
    coeffs.into_iter().map(|c| c.to_integer()).collect()
}

/// Exact isotropy test of one real invariant plane `ker(M² − sM + I)`.
#[derive(Clone, Debug, Serialize)]
pub struct RealPlaneCheck {
    /// `s = λ + λ⁻¹` for the eigenvalue pair spanning the plane.
    #[serde(serialize_with = "ser_display")]
    pub s: Surd,
    /// Spanning vectors `u` and `M u`.
    #[serde(serialize_with = "ser_display_rows")]
    pub basis: Vec<Vec<Surd>>,
    /// `ω(u, M u)`; the plane is isotropic iff this vanishes.
    #[serde(serialize_with = "ser_display")]
    pub omega: Surd,
}

fn ser_display<S: serde::Serializer, T: std::fmt::Display>(v: &T, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

fn ser_display_rows<S: serde::Serializer>(v: &[Vec<Surd>], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::Serialize;
    let rows: Vec<Vec<String>> = v.iter().map(|r| r.iter().map(ToString::to_string).collect()).collect();
    rows.serialize(s)
}

#[derive(Clone, Debug)]
pub struct InvariantSearch {
    pub lagrangian: Option<Lagrangian>,
    pub candidates_examined: usize,
    pub real_planes: Vec<RealPlaneCheck>,
}

pub const MAX_SEARCH_GENUS: usize = 3;

/// Searches invariant Lagrangians among sums of ±1-eigenspace pieces (subsets
/// of an eigenvector basis, generalized eigenspace chains) and rational planes
/// cut out by rational quadratic factors. At most `bound` candidates are
/// examined. A `None` verdict is exhaustive only over that family.
pub fn invariant_lagrangian_search(m: &Matrix<Int>, bound: usize) -> Result<InvariantSearch> {
    if !m.is_square() || !m.rows().is_multiple_of(2) {
        return Err(Error::DimensionMismatch { expected: m.cols(), found: m.rows() });
    }
    let g = m.rows() / 2;
    if g > MAX_SEARCH_GENUS {
        return Err(Error::GenusTooLarge { genus: g, max: MAX_SEARCH_GENUS });
    }
    if !is_symplectic(m) {
        return Err(Error::Precondition("matrix is not symplectic".into()));
    }
    let n = 2 * g;
    let mq = m.map(|v| BigRational::from_integer(v.clone()));
    let id = Matrix::<Rational>::identity(n);

    let mut pieces: Vec<Vec<Vec<Vec<Rational>>>> = Vec::new();
    for eps in [1i64, -1] {
        let nm = mq.sub(&id.scale(&Rational::from_integer(Int::from(eps))));
        let eigen = kernel(&nm);
        let mut family: Vec<Vec<Vec<Rational>>> = vec![Vec::new()];
        let d = eigen.len();
        let mut subsets: Vec<u64> = (1..(1u64 << d)).collect();
        subsets.sort_by_key(|s| (s.count_ones(), (0..d).filter(|i| s >> i & 1 == 1).collect::<Vec<_>>()));
        for s in subsets {
            family.push((0..d).filter(|i| s >> i & 1 == 1).map(|i| eigen[i].clone()).collect());
        }
        let mut power = nm.clone();
        let mut last = d;
        for _ in 1..n {
            power = power.mul(&nm);
            let k = kernel(&power);
            if k.len() == last {
                break;
            }
            last = k.len();
            family.push(k);
        }
        pieces.push(family);
    }

    let (rational_planes, real_planes) = quadratic_planes(m, &mq, g);

    let mut candidates: Vec<Vec<Vec<Rational>>> = Vec::new();
    for p in &pieces[0] {
        for q in &pieces[1] {
            if p.len() + q.len() == g {
                candidates.push(p.iter().chain(q.iter()).cloned().collect());
            }
        }
    }
    candidates.extend(rational_planes.into_iter().filter(|p| p.len() == g));

    let mut examined = 0;
    for c in candidates {
        if examined >= bound {
            break;
        }
        examined += 1;
        let isotropic = (0..c.len()).all(|i| (i + 1..c.len()).all(|j| omega_generic(&c[i], &c[j]).is_zero()));
        if !isotropic {
            continue;
        }
        let l = saturate(g, &c)?;
        if is_invariant(m, &l)? {
            return Ok(InvariantSearch { lagrangian: Some(l), candidates_examined: examined, real_planes });
        }
    }
    Ok(InvariantSearch { lagrangian: None, candidates_examined: examined, real_planes })
}

/// Invariant planes `ker(M² − sM + I)` for the roots `s` of the reduced
/// quadratic of a genus-2 characteristic polynomial. Rational planes are
/// returned as candidates; irrational ones are checked for isotropy exactly.
fn quadratic_planes(m: &Matrix<Int>, mq: &Matrix<Rational>, g: usize) -> (Vec<Vec<Vec<Rational>>>, Vec<RealPlaneCheck>) {
    let mut rational = Vec::new();
    let mut real = Vec::new();
    if g != 2 {
        return (rational, real);
    }
    let p = characteristic_polynomial(m);
    // λ⁴ + c3 λ³ + c2 λ² + c3 λ + 1 = λ² R(λ + λ⁻¹), R(s) = s² + c3 s + (c2 − 2)
    let (c3, c2) = (p[3].clone(), p[2].clone());
    let disc = &c3 * &c3 - Int::from(4) * (&c2 - Int::from(2));
    if disc.is_negative() {
        return (rational, real);
    }
    let root = Surd::sqrt_of(&disc);
    let half = Rational::new(Int::one(), Int::from(2));
    let base = Surd::rational(-Rational::from_integer(c3) * half.clone());
    let signs: &[i64] = if disc.is_zero() { &[1] } else { &[1, -1] };
    for &sg in signs {
        let s = base.clone() + root.clone() * Surd::rational(half.clone() * Rational::from_integer(Int::from(sg)));
        if s.is_rational() {
            let sq = s.a.clone();
            let quad = mq.mul(mq).sub(&mq.scale(&sq)).add(&Matrix::identity(4));
            rational.push(kernel(&quad));
        } else {
            let ms = m.map(|v| Surd::rational(BigRational::from_integer(v.clone())));
            let quad = ms.mul(&ms).sub(&ms.scale(&s)).add(&Matrix::identity(4));
            let k = kernel(&quad);
            if let Some(u) = k.first() {
                let mu = ms.mul_vec(u);
                let w = omega_generic(u, &mu);
                real.push(RealPlaneCheck { s, basis: vec![u.clone(), mu], omega: w });
            }
        }
    }
    (rational, real)
}

/// The Lagrangian `span_ℚ(rows) ∩ ℤ^{2g}`.
fn saturate(g: usize, rows: &[Vec<Rational>]) -> Result<Lagrangian> {
    let ints: Vec<Vec<Int>> = rows
        .iter()
        .map(|r| {
            let den = r.iter().fold(Int::one(), |acc, v| num_integer::Integer::lcm(&acc, v.denom()));
            r.iter().map(|v| (v * Rational::from_integer(den.clone())).to_integer()).collect()
        })
        .collect();
    let perp = integer_kernel(&Matrix::from_rows(ints));
    let sat = integer_kernel(&perp);
    Lagrangian::new(g, hermite_rows(&sat).to_rows())
}

/// `rref` over ℚ exposed for callers checking spans.
pub fn rational_rref(m: &Matrix<Rational>) -> (Matrix<Rational>, Vec<usize>) {
    rref(m)
}
