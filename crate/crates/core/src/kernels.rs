//! Dirichlet, Fejér and T-mean kernels.
//!
//! All kernels are built from their defining character sums. The closed forms
//! for `D_{M_s}` and `K_{M_n}` are evaluated independently so the two can be
//! compared point by point.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::group::GroupSpec;
use crate::means::WeightSeq;
use crate::spectral::{character, GridFunction};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

fn check_index(spec: &GroupSpec, n: usize) -> Result<()> {
    if n == 0 || n > spec.size() {
        return Err(Error::OutOfRange { what: "n", value: n, max: spec.size() });
    }
    Ok(())
}

fn check_level(spec: &GroupSpec, n: usize) -> Result<()> {
    if n > spec.level() {
        return Err(Error::OutOfRange { what: "level", value: n, max: spec.level() });
    }
    Ok(())
}

/// `Σ_{k<n} c_k ψ_k`, accumulated one character at a time.
fn character_sum(spec: &GroupSpec, n: usize, mut coeff: impl FnMut(usize) -> f64) -> GridFunction {
    let mut acc = alloc::vec![ZERO; spec.size()];
    for k in 0..n {
        let c = coeff(k);
        if c == 0.0 {
            continue;
        }
        let psi = character(spec, k).expect("k < M_L");
        for (a, v) in acc.iter_mut().zip(psi.values()) {
            *a += v * c;
        }
    }
    GridFunction::new(spec.clone(), acc).expect("finite character sums")
}

/// `D_n` for `0 <= n <= M_L`, with `D_0 = 0`.
fn dirichlet_any(spec: &GroupSpec, n: usize) -> GridFunction {
    character_sum(spec, n, |_| 1.0)
}

/// `D_n = Σ_{k<n} ψ_k`.
pub fn dirichlet_kernel(spec: &GroupSpec, n: usize) -> Result<GridFunction> {
    check_index(spec, n)?;
    Ok(dirichlet_any(spec, n))
}

/// `K_n = (1/n) Σ_{k=1}^{n} D_k = Σ_{k<n} (1 - k/n) ψ_k`.
pub fn fejer_kernel(spec: &GroupSpec, n: usize) -> Result<GridFunction> {
    check_index(spec, n)?;
    let nf = n as f64;
    Ok(character_sum(spec, n, |k| (n - k) as f64 / nf))
}

/// `M_s · 1_{I_s}`, the closed form of `D_{M_s}`.
pub fn dirichlet_closed(spec: &GroupSpec, s: usize) -> Result<GridFunction> {
    check_level(spec, s)?;
    let m = spec.power(s) as f64;
    Ok(spec.indicator(s)?.scale(Complex64::new(m, 0.0)))
}

/// Three-branch closed form of `K_{M_n}`:
///
/// * `(M_n + 1)/2` on `I_n`;
/// * `M_t / (1 - r_t(x))` when `x ∈ I_t \ I_{t+1}` and `x - x_t e_t ∈ I_n`;
/// * `0` otherwise.
pub fn fejer_mn_closed(spec: &GroupSpec, n: usize) -> Result<GridFunction> {
    check_level(spec, n)?;
    let mn = spec.power(n) as f64;
    let values = (0..spec.size())
        .map(|r| {
            let digits = spec.unrank(r).expect("rank in range");
            let digits = digits.digits();
            match digits[..n].iter().position(|&d| d != 0) {
                None => Complex64::new((mn + 1.0) / 2.0, 0.0),
                Some(t) => {
                    // zeroing digit t must land in I_n
                    if digits[t + 1..n].iter().any(|&d| d != 0) {
                        return ZERO;
                    }
                    let rt = Complex64::from_polar(
                        1.0,
                        core::f64::consts::TAU * digits[t] as f64 / spec.radix(t) as f64,
                    );
                    let denom = Complex64::new(1.0, 0.0) - rt;
                    assert!(denom.norm() > 0.0, "r_t(x) = 1 with x_t != 0");
                    Complex64::new(spec.power(t) as f64, 0.0) / denom
                }
            }
        })
        .collect();
    GridFunction::new(spec.clone(), values)
}

/// Residual of `D_{M_n - j} = D_{M_n} - ψ_{M_n - 1} conj(D_j)`, maximized over the grid.
pub fn dirichlet_complement(spec: &GroupSpec, n: usize, j: usize) -> Result<f64> {
    check_level(spec, n)?;
    let mn = spec.power(n);
    if j >= mn {
        return Err(Error::OutOfRange { what: "j", value: j, max: mn - 1 });
    }
    let lhs = dirichlet_any(spec, mn - j);
    let full = dirichlet_any(spec, mn);
    let top = character(spec, mn - 1)?;
    let dj = dirichlet_any(spec, j);
    let residual = lhs
        .values()
        .iter()
        .zip(full.values())
        .zip(top.values().iter().zip(dj.values()))
        .map(|((l, d), (t, dj))| (l - (d - t * dj.conj())).norm())
        .fold(0.0, f64::max);
    Ok(residual)
}

/// `F_n = (1/Q_n) Σ_{k<n} q_k D_k`.
pub fn t_kernel(spec: &GroupSpec, q: &WeightSeq, n: usize) -> Result<GridFunction> {
    check_index(spec, n)?;
    let qn = q.check_mean_index(n)?;
    let mut dirichlet = alloc::vec![ZERO; spec.size()];
    let mut acc = alloc::vec![ZERO; spec.size()];
    for k in 0..n {
        let w = q.q(k);
        if w != 0.0 {
            for (a, d) in acc.iter_mut().zip(&dirichlet) {
                *a += d * w;
            }
        }
        let psi = character(spec, k)?;
        for (d, v) in dirichlet.iter_mut().zip(psi.values()) {
            *d += v;
        }
    }
    acc.iter_mut().for_each(|a| *a /= qn);
    GridFunction::new(spec.clone(), acc)
}

/// Incremental `(n, D_n, K_n)` for `n = 1, …, M_L`.
///
/// Each step adds one character, so a full sweep costs `O(M_L² L)`.
pub struct FejerSweep<'a> {
    spec: &'a GroupSpec,
    n: usize,
    dirichlet: Vec<Complex64>,
    dirichlet_total: Vec<Complex64>,
}

impl<'a> FejerSweep<'a> {
    pub fn new(spec: &'a GroupSpec) -> Self {
        Self {
            spec,
            n: 0,
            dirichlet: alloc::vec![ZERO; spec.size()],
            dirichlet_total: alloc::vec![ZERO; spec.size()],
        }
    }
}

impl Iterator for FejerSweep<'_> {
    type Item = (usize, GridFunction, GridFunction);

    fn next(&mut self) -> Option<Self::Item> {
        if self.n >= self.spec.size() {
            return None;
        }
        let psi = character(self.spec, self.n).ok()?;
        self.n += 1;
        for ((d, t), v) in self.dirichlet.iter_mut().zip(self.dirichlet_total.iter_mut()).zip(psi.values()) {
            *d += v;
            *t += *d;
        }
        let inv = 1.0 / self.n as f64;
        let fejer = self.dirichlet_total.iter().map(|t| t * inv).collect();
        Some((
            self.n,
            GridFunction::new(self.spec.clone(), self.dirichlet.clone()).ok()?,
            GridFunction::new(self.spec.clone(), fejer).ok()?,
        ))
    }
}

/// Which kernel a [`KernelFamily`] produces.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum KernelKind {
    Dirichlet,
    Fejer,
    TKernel,
}

/// Memoized kernels of one kind on one group.
#[derive(Debug, Clone)]
pub struct KernelFamily {
    spec: GroupSpec,
    kind: KernelKind,
    weights: Option<WeightSeq>,
    cache: BTreeMap<usize, GridFunction>,
}

impl KernelFamily {
    pub fn dirichlet(spec: &GroupSpec) -> Self {
        Self { spec: spec.clone(), kind: KernelKind::Dirichlet, weights: None, cache: BTreeMap::new() }
    }

    pub fn fejer(spec: &GroupSpec) -> Self {
        Self { spec: spec.clone(), kind: KernelKind::Fejer, weights: None, cache: BTreeMap::new() }
    }

    pub fn t_kernel(spec: &GroupSpec, weights: WeightSeq) -> Self {
        Self { spec: spec.clone(), kind: KernelKind::TKernel, weights: Some(weights), cache: BTreeMap::new() }
    }

    pub fn kind(&self) -> KernelKind {
        self.kind
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    /// Kernel of index `n`, computed on first use.
    pub fn get(&mut self, n: usize) -> Result<&GridFunction> {
        if !self.cache.contains_key(&n) {
            let kernel = match self.kind {
                KernelKind::Dirichlet => dirichlet_kernel(&self.spec, n)?,
                KernelKind::Fejer => fejer_kernel(&self.spec, n)?,
                KernelKind::TKernel => {
                    t_kernel(&self.spec, self.weights.as_ref().expect("t-kernel weights"), n)?
                }
            };
            self.cache.insert(n, kernel);
        }
        Ok(&self.cache[&n])
    }
}
