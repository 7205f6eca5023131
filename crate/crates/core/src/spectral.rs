//! Vilenkin characters and the Vilenkin–Fourier transform.
//!
//! `analyze` computes `f̂(k) = (1/M_L) Σ_x f(x) conj(ψ_k(x))` and `synthesize`
//! computes `Σ_k c_k ψ_k(x)`, so the pair round-trips to the identity. Both
//! have a fast separable form (one small DFT per digit axis, `O(M_L Σ m_k)`)
//! and a naive `O(M_L²)` form kept as an oracle.

use alloc::vec::Vec;
use core::f64::consts::TAU;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::group::{GroupSpec, Point, VIndex};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Largest supported Lebesgue exponent.
pub const MAX_EXPONENT: f64 = 64.0;

/// Step function on the grid of a [`GroupSpec`], values indexed by rank.
#[derive(Debug, Clone, PartialEq)]
pub struct GridFunction {
    spec: GroupSpec,
    values: Vec<Complex64>,
}

/// Vilenkin–Fourier coefficients `f̂(0), …, f̂(M_L - 1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    spec: GroupSpec,
    coeffs: Vec<Complex64>,
}

fn check_values(spec: &GroupSpec, values: &[Complex64]) -> Result<()> {
    if values.len() != spec.size() {
        return Err(Error::OutOfRange { what: "length", value: values.len(), max: spec.size() });
    }
    if values.iter().any(|v| !v.re.is_finite() || !v.im.is_finite()) {
        return Err(Error::NonFinite);
    }
    Ok(())
}

impl GridFunction {
    pub fn new(spec: GroupSpec, values: Vec<Complex64>) -> Result<Self> {
        check_values(&spec, &values)?;
        Ok(Self { spec, values })
    }

    pub fn zero(spec: &GroupSpec) -> Self {
        Self { spec: spec.clone(), values: alloc::vec![ZERO; spec.size()] }
    }

    pub fn constant(spec: &GroupSpec, c: Complex64) -> Self {
        Self { spec: spec.clone(), values: alloc::vec![c; spec.size()] }
    }

    pub fn from_fn(spec: &GroupSpec, mut f: impl FnMut(usize) -> Complex64) -> Result<Self> {
        let values = (0..spec.size()).map(&mut f).collect();
        Self::new(spec.clone(), values)
    }

    pub(crate) fn from_raw(spec: &GroupSpec, values: Vec<Complex64>) -> Self {
        debug_assert_eq!(values.len(), spec.size());
        Self { spec: spec.clone(), values }
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<Complex64> {
        self.values
    }

    pub fn at(&self, x: &Point) -> Complex64 {
        self.values[self.spec.rank(x)]
    }

    /// Normalized Haar integral.
    pub fn integral(&self) -> Complex64 {
        self.values.iter().sum::<Complex64>() / self.values.len() as f64
    }

    pub fn lp_norm(&self, p: f64) -> Result<f64> {
        lp_norm(self, p)
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self::from_raw(&self.spec, self.values.iter().map(|v| v * c).collect())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    fn zip_with(&self, other: &Self, op: impl Fn(Complex64, Complex64) -> Complex64) -> Result<Self> {
        if self.spec != other.spec {
            return Err(Error::SpecMismatch);
        }
        let values = self.values.iter().zip(&other.values).map(|(&a, &b)| op(a, b)).collect();
        Ok(Self::from_raw(&self.spec, values))
    }

    /// Largest pointwise modulus of the difference.
    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        if self.spec != other.spec {
            return Err(Error::SpecMismatch);
        }
        Ok(self.values.iter().zip(&other.values).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max))
    }

    /// `x ↦ f(x - t)`, with `t` given by rank.
    pub fn translate(&self, t: usize) -> Self {
        let spec = &self.spec;
        let t_digits = spec.expand(t);
        let mut out = alloc::vec![ZERO; spec.size()];
        // odometer over x; track digits of x - t incrementally
        let mut x_digits = alloc::vec![0usize; spec.level()];
        let mut shifted: usize = t_digits
            .iter()
            .zip(spec.radices())
            .zip(spec.powers())
            .map(|((&d, &m), &stride)| ((m - d) % m) * stride)
            .sum();
        for slot in out.iter_mut() {
            *slot = self.values[shifted];
            for k in 0..spec.level() {
                let m = spec.radix(k);
                let stride = spec.power(k);
                let old = (x_digits[k] + m - t_digits[k]) % m;
                x_digits[k] += 1;
                if x_digits[k] < m {
                    let new = (old + 1) % m;
                    shifted = shifted - old * stride + new * stride;
                    break;
                }
                x_digits[k] = 0;
                let new = (m - t_digits[k]) % m;
                shifted = shifted - old * stride + new * stride;
            }
        }
        Self::from_raw(spec, out)
    }
}

impl Spectrum {
    pub fn new(spec: GroupSpec, coeffs: Vec<Complex64>) -> Result<Self> {
        check_values(&spec, &coeffs)?;
        Ok(Self { spec, coeffs })
    }

    /// Coefficient vector with a single 1 at index `k`.
    pub fn unit(spec: &GroupSpec, k: usize) -> Result<Self> {
        if k >= spec.size() {
            return Err(Error::OutOfRange { what: "k", value: k, max: spec.size() - 1 });
        }
        let mut coeffs = alloc::vec![ZERO; spec.size()];
        coeffs[k] = Complex64::new(1.0, 0.0);
        Ok(Self { spec: spec.clone(), coeffs })
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Complex64> {
        self.coeffs
    }

    /// `Σ_k |f̂(k)|²`.
    pub fn energy(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum()
    }

    /// Multiplies coefficient `k` by `weight(k)`.
    pub fn weighted(&self, mut weight: impl FnMut(usize) -> f64) -> Self {
        let coeffs = self.coeffs.iter().enumerate().map(|(k, c)| c * weight(k)).collect();
        Self { spec: self.spec.clone(), coeffs }
    }

    pub fn max_abs_diff(&self, other: &Self) -> Result<f64> {
        if self.spec != other.spec {
            return Err(Error::SpecMismatch);
        }
        Ok(self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max))
    }
}

/// Numerator of the phase of `ψ_n(x)` over the common denominator `M_L`.
fn phase_numerator(spec: &GroupSpec, n: usize, x: usize) -> usize {
    let size = spec.size();
    let (mut n, mut x) = (n, x);
    let mut acc = 0usize;
    for &m in spec.radices() {
        let term = ((n % m) * (x % m)) % m;
        acc = (acc + term * (size / m)) % size;
        n /= m;
        x /= m;
    }
    acc
}

fn unit_root(numerator: usize, denominator: usize) -> Complex64 {
    let angle = TAU * numerator as f64 / denominator as f64;
    Complex64::new(libm::cos(angle), libm::sin(angle))
}

/// `ψ_n(x) = Π_k exp(2πi n_k x_k / m_k)`.
pub fn psi(spec: &GroupSpec, n: &VIndex, x: &Point) -> Complex64 {
    let phase = phase_numerator(spec, n.value(), spec.rank(x));
    unit_root(phase, spec.size())
}

/// `ψ_n(x)` with both arguments given by rank.
pub fn psi_at(spec: &GroupSpec, n: usize, x: usize) -> Complex64 {
    unit_root(phase_numerator(spec, n, x), spec.size())
}

/// The character `ψ_n` as a grid function.
pub fn character(spec: &GroupSpec, n: usize) -> Result<GridFunction> {
    if n >= spec.size() {
        return Err(Error::OutOfRange { what: "n", value: n, max: spec.size() - 1 });
    }
    let roots = root_table(spec.size());
    Ok(GridFunction::from_raw(
        spec,
        (0..spec.size()).map(|x| roots[phase_numerator(spec, n, x)]).collect(),
    ))
}

/// Rademacher function `r_k = ψ_{M_k}`.
pub fn rademacher(spec: &GroupSpec, k: usize) -> Result<GridFunction> {
    if k >= spec.level() {
        return Err(Error::OutOfRange { what: "k", value: k, max: spec.level() - 1 });
    }
    character(spec, spec.power(k))
}

fn root_table(order: usize) -> Vec<Complex64> {
    (0..order).map(|j| unit_root(j, order)).collect()
}

/// In-place separable transform: one DFT of size `m_k` per digit axis.
fn axis_transform(spec: &GroupSpec, data: &mut [Complex64], inverse: bool) {
    let mut scratch: Vec<Complex64> = Vec::new();
    let mut out: Vec<Complex64> = Vec::new();
    for k in 0..spec.level() {
        let m = spec.radix(k);
        let stride = spec.power(k);
        let block = spec.power(k + 1);
        let twiddles: Vec<Complex64> = (0..m)
            .map(|j| {
                let w = unit_root(j, m);
                if inverse { w } else { w.conj() }
            })
            .collect();
        scratch.resize(m, ZERO);
        out.resize(m, ZERO);
        for base in (0..data.len()).step_by(block) {
            for offset in 0..stride {
                let start = base + offset;
                for (a, s) in scratch.iter_mut().enumerate() {
                    *s = data[start + a * stride];
                }
                for (j, o) in out.iter_mut().enumerate() {
                    let mut acc = ZERO;
                    for (a, s) in scratch.iter().enumerate() {
                        acc += s * twiddles[(j * a) % m];
                    }
                    *o = acc;
                }
                for (j, o) in out.iter().enumerate() {
                    data[start + j * stride] = *o;
                }
            }
        }
    }
}

/// Fast forward transform.
pub fn analyze(f: &GridFunction) -> Spectrum {
    let mut data = f.values.clone();
    axis_transform(&f.spec, &mut data, false);
    let scale = 1.0 / f.spec.size() as f64;
    data.iter_mut().for_each(|c| *c *= scale);
    Spectrum { spec: f.spec.clone(), coeffs: data }
}

/// Direct `O(M_L²)` forward transform.
pub fn analyze_naive(f: &GridFunction) -> Spectrum {
    let spec = &f.spec;
    let size = spec.size();
    let roots = root_table(size);
    let coeffs = (0..size)
        .map(|k| {
            let acc: Complex64 = f
                .values
                .iter()
                .enumerate()
                .map(|(x, v)| v * roots[phase_numerator(spec, k, x)].conj())
                .sum();
            acc / size as f64
        })
        .collect();
    Spectrum { spec: spec.clone(), coeffs }
}

/// Fast inverse transform.
pub fn synthesize(s: &Spectrum) -> GridFunction {
    let mut data = s.coeffs.clone();
    axis_transform(&s.spec, &mut data, true);
    GridFunction::from_raw(&s.spec, data)
}

/// Direct `O(M_L²)` inverse transform.
pub fn synthesize_naive(s: &Spectrum) -> GridFunction {
    let spec = &s.spec;
    let size = spec.size();
    let roots = root_table(size);
    let values = (0..size)
        .map(|x| {
            s.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| c * roots[phase_numerator(spec, k, x)])
                .sum()
        })
        .collect();
    GridFunction::from_raw(spec, values)
}

/// `S_n f = Σ_{k<n} f̂(k) ψ_k`, with `S_0 f = 0`.
pub fn partial_sum(f: &GridFunction, n: usize) -> Result<GridFunction> {
    let size = f.spec.size();
    if n > size {
        return Err(Error::OutOfRange { what: "n", value: n, max: size });
    }
    Ok(partial_sum_of(&analyze(f), n))
}

/// Partial sum from an already computed spectrum.
pub fn partial_sum_of(spectrum: &Spectrum, n: usize) -> GridFunction {
    synthesize(&spectrum.weighted(|k| if k < n { 1.0 } else { 0.0 }))
}

/// Validates a Lebesgue exponent.
pub fn check_exponent(p: f64) -> Result<()> {
    if p.is_infinite() && p > 0.0 {
        return Err(Error::InfiniteExponent);
    }
    if !(1.0..=MAX_EXPONENT).contains(&p) {
        return Err(Error::InvalidExponent(p));
    }
    Ok(())
}

/// `‖f‖_p = ((1/M_L) Σ_x |f(x)|^p)^{1/p}`.
pub fn lp_norm(f: &GridFunction, p: f64) -> Result<f64> {
    check_exponent(p)?;
    let size = f.values.len() as f64;
    let norm = if p == 1.0 {
        f.values.iter().map(|v| v.norm()).sum::<f64>() / size
    } else if p == 2.0 {
        libm::sqrt(f.values.iter().map(|v| v.norm_sqr()).sum::<f64>() / size)
    } else {
        // scale by the maximum to keep |v|^p representable for large p
        let peak = f.values.iter().map(|v| v.norm()).fold(0.0, f64::max);
        if peak == 0.0 {
            return Ok(0.0);
        }
        let mean = f.values.iter().map(|v| libm::pow(v.norm() / peak, p)).sum::<f64>() / size;
        peak * libm::pow(mean, 1.0 / p)
    };
    Ok(norm)
}

/// `(f * g)(x) = ∫ f(x - t) g(t) dμ(t)`, via the product of spectra.
pub fn convolve(f: &GridFunction, g: &GridFunction) -> Result<GridFunction> {
    if f.spec != g.spec {
        return Err(Error::SpecMismatch);
    }
    let (fs, gs) = (analyze(f), analyze(g));
    let coeffs = fs.coeffs.iter().zip(&gs.coeffs).map(|(a, b)| a * b).collect();
    Ok(synthesize(&Spectrum { spec: f.spec.clone(), coeffs }))
}

/// Direct double-sum convolution.
pub fn convolve_naive(f: &GridFunction, g: &GridFunction) -> Result<GridFunction> {
    if f.spec != g.spec {
        return Err(Error::SpecMismatch);
    }
    let spec = &f.spec;
    let size = spec.size();
    let values = (0..size)
        .map(|x| {
            let acc: Complex64 =
                (0..size).map(|t| f.values[spec.sub_ranks(x, t)] * g.values[t]).sum();
            acc / size as f64
        })
        .collect();
    Ok(GridFunction::from_raw(spec, values))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::SplitMix64;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn character_values() {
        let g = GroupSpec::new(&[3, 3, 3], 3).unwrap();
        let x = g.point(&[2, 0, 0]).unwrap();
        let one = g.digits(1).unwrap();
        let expected = Complex64::from_polar(1.0, 4.0 * core::f64::consts::PI / 3.0);
        assert!((psi(&g, &one, &x) - expected).norm() < 1e-14);

        let w = GroupSpec::walsh(3).unwrap();
        let three = w.digits(3).unwrap();
        let x = w.point(&[1, 1, 0]).unwrap();
        assert!((psi(&w, &three, &x) - c(1.0, 0.0)).norm() < 1e-14);
        let zero = w.digits(0).unwrap();
        for r in 0..w.size() {
            let x = w.unrank(r).unwrap();
            assert_eq!(psi(&w, &zero, &x), c(1.0, 0.0));
        }
    }

    #[test]
    fn rademacher_is_character_at_power() {
        let g = GroupSpec::new(&[3, 2, 4], 3).unwrap();
        for k in 0..3 {
            let r = rademacher(&g, k).unwrap();
            for x in 0..g.size() {
                let xk = g.unrank(x).unwrap().digits()[k];
                let expected = unit_root(xk, g.radix(k));
                assert!((r.values()[x] - expected).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn analyze_examples() {
        let w = GroupSpec::walsh(3).unwrap();
        let s = analyze(&character(&w, 5).unwrap());
        for (k, v) in s.coeffs().iter().enumerate() {
            let want = if k == 5 { 1.0 } else { 0.0 };
            assert!((v - c(want, 0.0)).norm() < 1e-12);
        }
        let s = analyze(&w.indicator(1).unwrap());
        let want = [0.5, 0.5, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0];
        for (v, w) in s.coeffs().iter().zip(want) {
            assert!((v - c(w, 0.0)).norm() < 1e-12);
        }
        let k = c(0.3, -1.25);
        let s = analyze(&GridFunction::constant(&w, k));
        assert!((s.coeffs()[0] - k).norm() < 1e-12);
        assert!(s.coeffs()[1..].iter().all(|v| v.norm() < 1e-12));
    }

    #[test]
    fn synthesize_examples() {
        let w = GroupSpec::walsh(3).unwrap();
        let f = synthesize(&Spectrum::unit(&w, 0).unwrap());
        assert!(f.values().iter().all(|v| (v - c(1.0, 0.0)).norm() < 1e-14));
        let mut coeffs = alloc::vec![ZERO; 8];
        coeffs[0] = c(0.5, 0.0);
        coeffs[1] = c(0.5, 0.0);
        let f = synthesize(&Spectrum::new(w.clone(), coeffs).unwrap());
        assert!(f.max_abs_diff(&w.indicator(1).unwrap()).unwrap() < 1e-12);
    }

    #[test]
    fn fast_matches_naive_mixed() {
        let g = GroupSpec::new(&[2, 3, 4, 5], 4).unwrap();
        let f = SplitMix64::new(7).grid_function(&g);
        let fast = analyze(&f);
        let slow = analyze_naive(&f);
        assert!(fast.max_abs_diff(&slow).unwrap() < 1e-12);
        let back = synthesize(&fast);
        assert!(back.max_abs_diff(&f).unwrap() < 1e-12);
        assert!(synthesize_naive(&fast).max_abs_diff(&f).unwrap() < 1e-12);
    }

    #[test]
    fn partial_sums() {
        let w = GroupSpec::walsh(3).unwrap();
        let psi5 = character(&w, 5).unwrap();
        assert!(partial_sum(&psi5, 6).unwrap().max_abs_diff(&psi5).unwrap() < 1e-12);
        assert!(partial_sum(&psi5, 5).unwrap().lp_norm(1.0).unwrap() < 1e-12);
        let ind = w.indicator(1).unwrap();
        assert!(partial_sum(&ind, 2).unwrap().max_abs_diff(&ind).unwrap() < 1e-12);
        assert_eq!(partial_sum(&ind, 0).unwrap(), GridFunction::zero(&w));
        assert!(partial_sum(&ind, 8).unwrap().max_abs_diff(&ind).unwrap() < 1e-12);
        assert!(partial_sum(&ind, 9).is_err());
    }

    #[test]
    fn norms() {
        let g = GroupSpec::new(&[3, 2, 4], 3).unwrap();
        for n in [0, 1, 7, 23] {
            let f = character(&g, n).unwrap();
            for p in [1.0, 1.5, 2.0, 4.0, 64.0] {
                assert!((lp_norm(&f, p).unwrap() - 1.0).abs() < 1e-12);
            }
        }
        let w = GroupSpec::walsh(3).unwrap();
        let d2 = w.indicator(1).unwrap().scale(c(2.0, 0.0));
        assert!((lp_norm(&d2, 1.0).unwrap() - 1.0).abs() < 1e-15);
        assert_eq!(lp_norm(&GridFunction::zero(&w), 3.0).unwrap(), 0.0);
        assert_eq!(lp_norm(&d2, 0.5), Err(Error::InvalidExponent(0.5)));
        assert_eq!(lp_norm(&d2, f64::INFINITY), Err(Error::InfiniteExponent));
        assert!(matches!(lp_norm(&d2, f64::NAN), Err(Error::InvalidExponent(_))));
        assert!(lp_norm(&d2, 65.0).is_err());
    }

    #[test]
    fn convolution_examples() {
        let w = GroupSpec::walsh(3).unwrap();
        let d2 = w.indicator(1).unwrap().scale(c(2.0, 0.0));
        let psi1 = character(&w, 1).unwrap();
        assert!(convolve(&psi1, &d2).unwrap().max_abs_diff(&psi1).unwrap() < 1e-12);

        let f = SplitMix64::new(3).grid_function(&w);
        let one = GridFunction::constant(&w, c(1.0, 0.0));
        let conv = convolve(&f, &one).unwrap();
        let mean = analyze(&f).coeffs()[0];
        assert!(conv.values().iter().all(|v| (v - mean).norm() < 1e-12));

        let g = GroupSpec::new(&[3, 2, 4], 3).unwrap();
        let f = SplitMix64::new(11).grid_function(&g);
        let h = SplitMix64::new(12).grid_function(&g);
        let fast = convolve(&f, &h).unwrap();
        let slow = convolve_naive(&f, &h).unwrap();
        assert!(fast.max_abs_diff(&slow).unwrap() < 1e-12);
        assert_eq!(convolve(&f, &psi1), Err(Error::SpecMismatch));
    }

    #[test]
    fn translation_matches_point_arithmetic() {
        let g = GroupSpec::new(&[3, 2, 4], 3).unwrap();
        let f = SplitMix64::new(5).grid_function(&g);
        for t in 0..g.size() {
            let moved = f.translate(t);
            for x in 0..g.size() {
                assert_eq!(moved.values()[x], f.values()[g.sub_ranks(x, t)]);
            }
        }
    }
}
