//! Seeded random matrices and channels.
//!
//! Every draw comes from ChaCha20 (`rand_chacha::ChaCha20Rng`) seeded through
//! `SeedableRng::seed_from_u64`, with standard normals from `rand_distr`'s
//! ziggurat sampler. A complex Ginibre entry is `(x + iy)/√2` with `x, y`
//! drawn in that order, row-major. Identical `(kind, dim, seed)` therefore
//! reproduces identical matrices bit for bit on every platform.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{inverse_sqrt, Complex64, ComplexMatrix};
use crate::quantum::QuantumChannel;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EnsembleKind {
    Ginibre,
    Psd,
    Hermitian,
    PovmElement,
    Density,
}

impl EnsembleKind {
    pub const ALL: [EnsembleKind; 5] = [
        Self::Ginibre,
        Self::Psd,
        Self::Hermitian,
        Self::PovmElement,
        Self::Density,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Self::Ginibre => "ginibre",
            Self::Psd => "psd",
            Self::Hermitian => "hermitian",
            Self::PovmElement => "povm_element",
            Self::Density => "density",
        }
    }
}

impl fmt::Display for EnsembleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for EnsembleKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Domain(format!("unknown ensemble kind `{s}`")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RandomEnsemble {
    pub kind: EnsembleKind,
    pub dim: usize,
    pub seed: u64,
}

/// Draws `count` matrices from the ensemble.
///
/// `povm_element` returns one POVM with `count` elements: a random PSD family
/// `G_i†G_i` conjugated by the inverse square root of its sum.
pub fn sample(ensemble: &RandomEnsemble, count: usize) -> Result<Vec<ComplexMatrix>> {
    if count == 0 {
        return Err(Error::Domain("sample count must be >= 1".into()));
    }
    if ensemble.dim == 0 {
        return Err(Error::Domain("ensemble dimension must be >= 1".into()));
    }
    let mut s = MatrixSampler::new(ensemble.seed);
    match ensemble.kind {
        EnsembleKind::PovmElement => s.povm(ensemble.dim, count),
        kind => (0..count).map(|_| s.draw(kind, ensemble.dim)).collect(),
    }
}

/// Stateful generator behind [`sample`]; suites use it to mix kinds from one stream.
#[derive(Debug, Clone)]
pub struct MatrixSampler {
    rng: ChaCha20Rng,
}

impl MatrixSampler {
    pub fn new(seed: u64) -> Self {
        Self {
            rng: ChaCha20Rng::seed_from_u64(seed),
        }
    }

    pub fn normal(&mut self) -> f64 {
        self.rng.sample(StandardNormal)
    }

    pub fn uniform(&mut self) -> f64 {
        self.rng.random::<f64>()
    }

    pub fn complex_normal(&mut self) -> Complex64 {
        let re = self.normal();
        let im = self.normal();
        Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
    }

    pub fn ginibre_rect(&mut self, rows: usize, cols: usize) -> ComplexMatrix {
        let data = (0..rows * cols).map(|_| self.complex_normal()).collect();
        ComplexMatrix::from_vec(rows, cols, data).expect("shape")
    }

    pub fn ginibre(&mut self, dim: usize) -> ComplexMatrix {
        self.ginibre_rect(dim, dim)
    }

    /// `G†G`, not trace-normalized.
    pub fn psd(&mut self, dim: usize) -> ComplexMatrix {
        let g = self.ginibre(dim);
        (&g.dagger() * &g).hermitian_part()
    }

    /// `(G + G†)/2`.
    pub fn hermitian(&mut self, dim: usize) -> ComplexMatrix {
        self.ginibre(dim).hermitian_part()
    }

    pub fn density(&mut self, dim: usize) -> ComplexMatrix {
        let p = self.psd(dim);
        let tr = p.trace().re;
        p.scale(1.0 / tr)
    }

    /// Random POVM with `count` elements on `dim`.
    pub fn povm(&mut self, dim: usize, count: usize) -> Result<Vec<ComplexMatrix>> {
        let family: Vec<ComplexMatrix> = (0..count).map(|_| self.psd(dim)).collect();
        let mut total = ComplexMatrix::zeros(dim, dim);
        for f in &family {
            total += f;
        }
        let w = inverse_sqrt(&total)?;
        Ok(family
            .iter()
            .map(|f| (&(&w * f) * &w).hermitian_part())
            .collect())
    }

    pub fn draw(&mut self, kind: EnsembleKind, dim: usize) -> Result<ComplexMatrix> {
        Ok(match kind {
            EnsembleKind::Ginibre => self.ginibre(dim),
            EnsembleKind::Psd => self.psd(dim),
            EnsembleKind::Hermitian => self.hermitian(dim),
            EnsembleKind::Density => self.density(dim),
            EnsembleKind::PovmElement => self.povm(dim, 2)?.swap_remove(0),
        })
    }

    /// Random isometry `V = G (G†G)^{-1/2}` of shape `rows × cols`, `rows ≥ cols`.
    pub fn isometry(&mut self, rows: usize, cols: usize) -> Result<ComplexMatrix> {
        if rows < cols {
            return Err(Error::Domain(format!(
                "isometry needs rows >= cols, got {rows}x{cols}"
            )));
        }
        let g = self.ginibre_rect(rows, cols);
        let w = inverse_sqrt(&(&g.dagger() * &g).hermitian_part())?;
        Ok(&g * &w)
    }

    /// Trace-preserving channel whose Kraus operators are the `out_dim`-row
    /// blocks of a random isometry.
    pub fn channel(&mut self, in_dim: usize, out_dim: usize) -> Result<QuantumChannel> {
        let blocks = in_dim.div_ceil(out_dim) + 1;
        let v = self.isometry(blocks * out_dim, in_dim)?;
        let kraus = (0..blocks)
            .map(|b| {
                let mut k = ComplexMatrix::zeros(out_dim, in_dim);
                for r in 0..out_dim {
                    for c in 0..in_dim {
                        k[(r, c)] = v[(b * out_dim + r, c)];
                    }
                }
                k
            })
            .collect();
        QuantumChannel::new(kraus)
    }

    /// Trace-nonincreasing sub-channel: a random channel scaled by `√u`, `u ∈ [0, 1)`.
    pub fn subchannel(&mut self, in_dim: usize, out_dim: usize) -> Result<QuantumChannel> {
        let c = self.channel(in_dim, out_dim)?;
        let w = self.uniform().sqrt();
        QuantumChannel::new(c.kraus().iter().map(|k| k.scale(w)).collect())
    }
}
