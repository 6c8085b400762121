//! S-matrix on boundary admissible weights and Verlinde fusion coefficients.
//!
//! Entries follow
//!
//! ```text
//!   a(Λ,Λ′) = |Q/uh∨Q*|^{−½} ε(yy′) ∏_{α>0} 2 sin(πu(ρ|α)/h∨)
//!             · e^{−2πi((ρ|β+β′) + h∨(β|β′)/u)}
//! ```
//!
//! By default the global positive scalar is rescaled so the vacuum row has
//! unit norm; for `sl₂` this is exactly a factor ½.

use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;
use num_traits::One;
use serde::Serialize;

use crate::affine::{boundary_level, enumerate_boundary, AdmissibleDescriptor};
use crate::error::{Error, Result};
use crate::linalg::{vadd, Matrix, RVec};
use crate::rational::Rational;
use crate::roots::RootSystem;

/// How to read the sine factor.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum SineReading {
    /// `sin(πu(ρ|α)/h∨)`.
    #[default]
    Real,
    /// `sin(πiu(ρ|α)/h∨) = i·sinh(πu(ρ|α)/h∨)`, with the extra `i` kept.
    Literal,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Normalization {
    /// Positive rescaling so the vacuum row has norm 1.
    #[default]
    Calibrated,
    /// The `|Q/uh∨Q*|^{−½}` prefactor, unchanged.
    Verbatim,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SConfig {
    pub sine: SineReading,
    pub normalization: Normalization,
}

/// `|Q/uh∨Q*|`, the covolume ratio `(uh∨)^ℓ / det((αᵢ|αⱼ))`.
pub fn lattice_index(rs: &RootSystem, u: i64) -> Rational {
    let n = rs.rank();
    let b = Matrix::from_rows(
        (0..n).map(|i| (0..n).map(|j| rs.inner(&rs.simple_roots[i], &rs.simple_roots[j])).collect()).collect(),
    );
    Rational::from_integer(u * rs.h_dual).pow(n as i32) / b.det()
}

fn sine_product(rs: &RootSystem, u: i64, reading: SineReading) -> Complex64 {
    let mut p = Complex64::one();
    for a in &rs.positive_roots {
        let x = PI * u as f64 * rs.inner(&rs.rho, a).to_f64() / rs.h_dual as f64;
        p *= match reading {
            SineReading::Real => Complex64::new(2.0 * x.sin(), 0.0),
            SineReading::Literal => Complex64::new(0.0, 2.0 * x.sinh()),
        };
    }
    p
}

/// `e^{−2πi r}` with `r` reduced mod 1 exactly first.
fn phase(r: &Rational) -> Complex64 {
    let frac = r - &Rational::from_bigints(r.floor(), 1.into());
    Complex64::from_polar(1.0, -2.0 * PI * frac.to_f64())
}

/// The uncalibrated entry.
pub fn s_entry_verbatim(d: &AdmissibleDescriptor, e: &AdmissibleDescriptor, reading: SineReading) -> Result<Complex64> {
    if d.u != e.u || d.rs.cartan_type != e.rs.cartan_type {
        return Err(Error::LevelMismatch);
    }
    let rs = &d.rs;
    let idx = lattice_index(rs, d.u).to_f64();
    let sign = (d.y.sign * e.y.sign) as f64;
    let r =
        &rs.inner(&rs.rho, &vadd(&d.beta, &e.beta)) + &(&Rational::new(rs.h_dual, d.u) * &rs.inner(&d.beta, &e.beta));
    Ok(sine_product(rs, d.u, reading) * phase(&r) * (sign / idx.sqrt()))
}

#[derive(Clone, Debug)]
pub struct SMatrix {
    pub rs: Arc<RootSystem>,
    pub u: i64,
    pub config: SConfig,
    pub weights: Vec<AdmissibleDescriptor>,
    pub entries: Vec<Vec<Complex64>>,
    /// Positive factor applied to the uncalibrated entries.
    pub scale: f64,
}

impl SMatrix {
    pub fn build(rs: &Arc<RootSystem>, u: i64, config: SConfig) -> Result<SMatrix> {
        let weights = enumerate_boundary(rs, u)?;
        let mut entries = Vec::with_capacity(weights.len());
        for d in &weights {
            let row: Result<Vec<Complex64>> = weights.iter().map(|e| s_entry_verbatim(d, e, config.sine)).collect();
            entries.push(row?);
        }
        let vac = vacuum_index(&weights)?;
        let scale = match config.normalization {
            Normalization::Verbatim => 1.0,
            Normalization::Calibrated => {
                let norm: f64 = entries[vac].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
                1.0 / norm
            }
        };
        for row in &mut entries {
            for z in row.iter_mut() {
                *z *= scale;
            }
        }
        Ok(SMatrix { rs: rs.clone(), u, config, weights, entries, scale })
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn index_of(&self, d: &AdmissibleDescriptor) -> Option<usize> {
        self.weights.iter().position(|w| w.lambda == d.lambda)
    }

    pub fn vacuum(&self) -> usize {
        vacuum_index(&self.weights).expect("built with a vacuum")
    }

    /// `max |(SS†)ᵢⱼ − δᵢⱼ|`.
    pub fn unitarity_defect(&self) -> f64 {
        let n = self.len();
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                let s: Complex64 = (0..n).map(|k| self.entries[i][k] * self.entries[j][k].conj()).sum();
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((s - target).norm());
            }
        }
        worst
    }

    pub fn symmetry_defect(&self) -> f64 {
        let n = self.len();
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                worst = worst.max((self.entries[i][j] - self.entries[j][i]).norm());
            }
        }
        worst
    }

    /// `N = Σ_μ a(Λ₁,μ) a(Λ₂,μ) a(Λ₃,μ) / a(kΛ₀,μ)`, rounded.
    pub fn fusion(&self, i: usize, j: usize, k: usize) -> Result<i64> {
        let v = self.fusion_raw(i, j, k);
        round_fusion(v)
    }

    pub fn fusion_raw(&self, i: usize, j: usize, k: usize) -> Complex64 {
        let vac = self.vacuum();
        (0..self.len())
            .map(|m| self.entries[i][m] * self.entries[j][m] * self.entries[k][m] / self.entries[vac][m])
            .sum()
    }

    pub fn fusion_tensor(&self) -> Result<Vec<Vec<Vec<i64>>>> {
        let n = self.len();
        let mut t = vec![vec![vec![0; n]; n]; n];
        for (i, ti) in t.iter_mut().enumerate() {
            for (j, tij) in ti.iter_mut().enumerate() {
                for (k, v) in tij.iter_mut().enumerate() {
                    *v = self.fusion(i, j, k)?;
                }
            }
        }
        Ok(t)
    }
}

pub const FUSION_TOL: f64 = 1e-6;

fn round_fusion(v: Complex64) -> Result<i64> {
    let r = v.re.round();
    if (v.re - r).abs() < FUSION_TOL && v.im.abs() < FUSION_TOL {
        Ok(r as i64)
    } else {
        Err(Error::NonIntegerFusion { value: v.re, tol: FUSION_TOL })
    }
}

fn vacuum_index(ws: &[AdmissibleDescriptor]) -> Result<usize> {
    ws.iter().position(|d| d.is_vacuum()).ok_or_else(|| Error::InvalidInput("no vacuum weight".into()))
}

/// Calibrated S-matrix entry for a single pair.
pub fn s_entry(d: &AdmissibleDescriptor, e: &AdmissibleDescriptor) -> Result<Complex64> {
    let raw = s_entry_verbatim(d, e, SineReading::Real)?;
    let n = enumerate_boundary(&d.rs, d.u)?.len() as f64;
    // All entries share one modulus, so unit row norm means modulus n^{−½}.
    let modulus = raw.norm();
    if modulus == 0.0 {
        return Ok(raw);
    }
    Ok(raw / (modulus * n.sqrt()))
}

/// Fusion coefficient of three descriptors of the same level.
pub fn verlinde_fusion(d1: &AdmissibleDescriptor, d2: &AdmissibleDescriptor, d3: &AdmissibleDescriptor) -> Result<i64> {
    for d in [d2, d3] {
        if d.u != d1.u || d.rs.cartan_type != d1.rs.cartan_type {
            return Err(Error::LevelMismatch);
        }
    }
    let s = SMatrix::build(&d1.rs, d1.u, SConfig::default())?;
    let idx =
        |d: &AdmissibleDescriptor| s.index_of(d).ok_or_else(|| Error::InvalidInput("weight not enumerated".into()));
    s.fusion(idx(d1)?, idx(d2)?, idx(d3)?)
}

/// `(−1)^{j+j′} e^{−2πijj′/u} u^{−½} sin(uπ/2)`.
pub fn sl2_s_closed_form(u: i64, j: i64, jp: i64) -> Complex64 {
    let sign = if (j + jp).rem_euclid(2) == 0 { 1.0 } else { -1.0 };
    let s = (u as f64 * PI / 2.0).sin();
    phase(&Rational::new(j * jp, u)) * (sign * s / (u as f64).sqrt())
}

pub fn sl2_fusion_closed_form(u: i64, j1: i64, j2: i64, j3: i64) -> i64 {
    let s = j1 + j2 + j3;
    if s.rem_euclid(u) == 0 {
        if s.rem_euclid(2) == 0 {
            1
        } else {
            -1
        }
    } else {
        0
    }
}

/// The index `j` of an `sl₂` boundary weight, `Λ = t_{−jα/2}.(kΛ₀)`.
pub fn sl2_label(d: &AdmissibleDescriptor) -> Option<i64> {
    let j = -(&d.lambda.finite[0] * &Rational::new(d.u, 2));
    j.to_integer()
}

/// Label `(p, k₁, k₂)` of an `sl₃` boundary weight.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Sl3Label {
    pub p: i64,
    pub k1: i64,
    pub k2: i64,
}

/// All labels with `kᵢ ≥ δ_{p,1}` and `k₁ + k₂ ≤ u − δ_{p,0}`.
pub fn sl3_labels(u: i64) -> Vec<Sl3Label> {
    let mut out = Vec::new();
    for p in 0..2 {
        let lo = if p == 1 { 1 } else { 0 };
        let hi = if p == 0 { u - 1 } else { u };
        for k1 in lo..=hi {
            for k2 in lo..=(hi - k1) {
                out.push(Sl3Label { p, k1, k2 });
            }
        }
    }
    out
}

/// `β = −(−1)^p (k₁Λ̄₁ + k₂Λ̄₂)`, `y = r_θ^p`.
pub fn sl3_descriptor(rs: &Arc<RootSystem>, u: i64, l: Sl3Label) -> Result<AdmissibleDescriptor> {
    if rs.cartan_type.to_string() != "A2" {
        return Err(Error::InvalidInput("labels (p, k1, k2) are for A2".into()));
    }
    boundary_level(rs, u)?;
    let s = if l.p == 0 { -1 } else { 1 };
    let beta: RVec = vec![Rational::from_integer(s * l.k1), Rational::from_integer(s * l.k2)];
    let y = if l.p == 0 { rs.weyl_elements()?[0].clone() } else { rs.weyl_from_matrix(&rs.reflection(&rs.theta)?)? };
    AdmissibleDescriptor::new(rs, u, beta, y)
}

pub fn sl3_fusion_closed_form(u: i64, a: Sl3Label, b: Sl3Label, c: Sl3Label) -> i64 {
    let sg = |p: i64| if p.rem_euclid(2) == 0 { 1 } else { -1 };
    let ok = |ka: i64, kb: i64, kc: i64| (sg(a.p) * ka + sg(b.p) * kb + sg(c.p) * kc).rem_euclid(u) == 0;
    if ok(a.k1, b.k1, c.k1) && ok(a.k2, b.k2, c.k2) {
        sg(a.p + b.p + c.p)
    } else {
        0
    }
}

/// A weight's position in `weights`, matched by `Λ`.
pub fn position_of(weights: &[AdmissibleDescriptor], d: &AdmissibleDescriptor) -> Option<usize> {
    weights.iter().position(|w| w.lambda == d.lambda)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lattice_indices() {
        let a1 = RootSystem::parse("A1").unwrap();
        let a2 = RootSystem::parse("A2").unwrap();
        assert_eq!(lattice_index(&a1, 3), Rational::from_integer(3));
        assert_eq!(lattice_index(&a2, 2), Rational::from_integer(12));
    }

    #[test]
    fn sl2_matches_closed_form() {
        let rs = RootSystem::parse("A1").unwrap();
        for u in [3, 5, 7] {
            let s = SMatrix::build(&rs, u, SConfig::default()).unwrap();
            assert!((s.scale - 0.5).abs() < 1e-12);
            for (a, da) in s.weights.iter().enumerate() {
                for (b, db) in s.weights.iter().enumerate() {
                    let (j, jp) = (sl2_label(da).unwrap(), sl2_label(db).unwrap());
                    assert!((s.entries[a][b] - sl2_s_closed_form(u, j, jp)).norm() < 1e-12);
                }
            }
            assert!(s.unitarity_defect() < 1e-9);
            assert!(s.symmetry_defect() < 1e-9);
        }
    }

    #[test]
    fn verbatim_is_not_unitary() {
        let rs = RootSystem::parse("A1").unwrap();
        let cfg = SConfig { sine: SineReading::Real, normalization: Normalization::Verbatim };
        let s = SMatrix::build(&rs, 3, cfg).unwrap();
        assert!(s.unitarity_defect() > 1.0);
        let lit = SConfig { sine: SineReading::Literal, normalization: Normalization::Calibrated };
        let s = SMatrix::build(&rs, 3, lit).unwrap();
        assert!(s.fusion(0, 0, 0).is_ok());
    }

    #[test]
    fn sl3_labels_cover_enumeration() {
        let rs = RootSystem::parse("A2").unwrap();
        for u in [2, 4, 5] {
            let ws = enumerate_boundary(&rs, u).unwrap();
            let labels = sl3_labels(u);
            assert_eq!(labels.len() as i64, u * u);
            for l in labels {
                let d = sl3_descriptor(&rs, u, l).unwrap();
                assert!(position_of(&ws, &d).is_some(), "{l:?}");
            }
        }
    }

    #[test]
    fn fusion_closed_forms() {
        let rs = RootSystem::parse("A1").unwrap();
        let s = SMatrix::build(&rs, 5, SConfig::default()).unwrap();
        let labels: Vec<i64> = s.weights.iter().map(|d| sl2_label(d).unwrap()).collect();
        for a in 0..s.len() {
            for b in 0..s.len() {
                for c in 0..s.len() {
                    let n = s.fusion(a, b, c).unwrap();
                    assert_eq!(n, sl2_fusion_closed_form(5, labels[a], labels[b], labels[c]));
                }
            }
        }
        let rs = RootSystem::parse("A2").unwrap();
        let s = SMatrix::build(&rs, 2, SConfig::default()).unwrap();
        let labels = sl3_labels(2);
        let idx: Vec<usize> =
            labels.iter().map(|l| s.index_of(&sl3_descriptor(&rs, 2, *l).unwrap()).unwrap()).collect();
        for (x, lx) in labels.iter().enumerate() {
            for (y, ly) in labels.iter().enumerate() {
                for (z, lz) in labels.iter().enumerate() {
                    assert_eq!(s.fusion(idx[x], idx[y], idx[z]).unwrap(), sl3_fusion_closed_form(2, *lx, *ly, *lz));
                }
            }
        }
    }

    #[test]
    fn single_entry_and_triple() {
        let rs = RootSystem::parse("A1").unwrap();
        let ws = enumerate_boundary(&rs, 3).unwrap();
        let z = s_entry(&ws[1], &ws[2]).unwrap();
        assert!((z - sl2_s_closed_form(3, 1, 2)).norm() < 1e-12);
        assert_eq!(verlinde_fusion(&ws[1], &ws[2], &ws[0]).unwrap(), -1);
        assert_eq!(verlinde_fusion(&ws[1], &ws[1], &ws[0]).unwrap(), 0);
        let other = enumerate_boundary(&rs, 5).unwrap();
        assert!(matches!(s_entry(&ws[0], &other[0]), Err(Error::LevelMismatch)));
    }
}
