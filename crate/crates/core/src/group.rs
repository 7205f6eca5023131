//! Truncated bounded Vilenkin groups.
//!
//! A [`GroupSpec`] fixes the radices `m_0, …, m_{L-1}` and models the
//! quotient `G_m / I_L`: a grid of `M_L = m_0 ⋯ m_{L-1}` points. Functions on
//! the grid are step functions constant on the cosets of `I_L`, and points are
//! enumerated by their mixed-radix rank `Σ x_k M_k`.

use alloc::string::ToString;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::spectral::GridFunction;

/// Default upper bound on `M_L`.
pub const DEFAULT_MAX_GRID: usize = 1 << 22;

/// Truncated bounded Vilenkin group.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupSpec {
    radices: Vec<usize>,
    powers: Vec<usize>,
    bound: usize,
}

impl GroupSpec {
    /// Builds the group with the default size cap.
    ///
    /// When `radices` is shorter than `level` it is repeated periodically, so
    /// `GroupSpec::new(&[2], 10)` is the Walsh group with 1024 points. Extra
    /// radices beyond `level` are ignored.
    pub fn new(radices: &[usize], level: usize) -> Result<Self> {
        Self::with_cap(radices, level, DEFAULT_MAX_GRID)
    }

    pub fn with_cap(radices: &[usize], level: usize, cap: usize) -> Result<Self> {
        if level < 1 || radices.is_empty() {
            return Err(Error::InvalidLevel(level));
        }
        for (k, &m) in radices.iter().enumerate() {
            if m < 2 {
                return Err(Error::InvalidRadix { level: k, radix: m as u64 });
            }
        }
        let radices: Vec<usize> = radices.iter().copied().cycle().take(level).collect();
        let mut powers = Vec::with_capacity(level + 1);
        let mut size: u128 = 1;
        powers.push(1usize);
        for &m in &radices {
            size *= m as u128;
            if size > cap as u128 {
                return Err(Error::GridTooLarge { size, cap });
            }
            powers.push(size as usize);
        }
        let bound = radices.iter().copied().max().unwrap_or(2);
        Ok(Self { radices, powers, bound })
    }

    /// Walsh (dyadic) group of depth `level`.
    pub fn walsh(level: usize) -> Result<Self> {
        Self::new(&[2], level)
    }

    /// Parses `m=<r0>,<r1>,...;L=<n>` with an explicit size cap.
    pub fn parse_with_cap(text: &str, cap: usize) -> Result<Self> {
        let mut radices: Option<Vec<usize>> = None;
        let mut level: Option<usize> = None;
        for part in text.split(';') {
            let part = part.trim();
            if part.is_empty() {
                continue;
            }
            let (key, value) = part
                .split_once('=')
                .ok_or_else(|| Error::Parse(alloc::format!("expected key=value, got `{part}`")))?;
            match key.trim() {
                "m" => {
                    let list = value
                        .split(',')
                        .map(|r| {
                            r.trim().parse::<usize>().map_err(|_| {
                                Error::Parse(alloc::format!("bad radix `{}`", r.trim()))
                            })
                        })
                        .collect::<Result<Vec<_>>>()?;
                    radices = Some(list);
                }
                "L" => {
                    level = Some(value.trim().parse::<usize>().map_err(|_| {
                        Error::Parse(alloc::format!("bad level `{}`", value.trim()))
                    })?);
                }
                other => return Err(Error::Parse(alloc::format!("unknown key `{other}`"))),
            }
        }
        let radices = radices.ok_or_else(|| Error::Parse("missing `m=`".to_string()))?;
        let level = level.ok_or_else(|| Error::Parse("missing `L=`".to_string()))?;
        Self::with_cap(&radices, level, cap)
    }

    /// Truncation level `L`.
    pub fn level(&self) -> usize {
        self.radices.len()
    }

    pub fn radices(&self) -> &[usize] {
        &self.radices
    }

    pub fn radix(&self, k: usize) -> usize {
        self.radices[k]
    }

    /// Generalized powers `M_0, …, M_L`.
    pub fn powers(&self) -> &[usize] {
        &self.powers
    }

    /// `M_k`.
    pub fn power(&self, k: usize) -> usize {
        self.powers[k]
    }

    /// Number of grid points, `M_L`.
    pub fn size(&self) -> usize {
        self.powers[self.level()]
    }

    /// `R = max m_k`.
    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn is_walsh(&self) -> bool {
        self.radices.iter().all(|&m| m == 2)
    }

    /// The block index `N` with `M_N <= n < M_{N+1}`, for `1 <= n < M_L`.
    pub fn block_of(&self, n: usize) -> Result<usize> {
        if n == 0 || n >= self.size() {
            return Err(Error::OutOfRange { what: "n", value: n, max: self.size() - 1 });
        }
        Ok(self.powers.partition_point(|&m| m <= n) - 1)
    }

    /// Mixed-radix expansion of an index.
    pub fn digits(&self, n: usize) -> Result<VIndex> {
        if n >= self.size() {
            return Err(Error::OutOfRange { what: "index", value: n, max: self.size() - 1 });
        }
        let digits = self.expand(n);
        let order = digits.iter().rposition(|&d| d != 0).unwrap_or(0);
        Ok(VIndex { value: n, digits, order })
    }

    /// Builds a validated point from its digits.
    pub fn point(&self, digits: &[usize]) -> Result<Point> {
        self.check_point(digits)?;
        Ok(Point { digits: digits.to_vec() })
    }

    /// Coordinate-wise `(x_k - t_k) mod m_k`.
    pub fn point_sub(&self, x: &Point, t: &Point) -> Result<Point> {
        self.check_point(&x.digits)?;
        self.check_point(&t.digits)?;
        let digits = x
            .digits
            .iter()
            .zip(&t.digits)
            .zip(&self.radices)
            .map(|((&a, &b), &m)| (a + m - b) % m)
            .collect();
        Ok(Point { digits })
    }

    /// Coordinate-wise `(-x_k) mod m_k`.
    pub fn point_neg(&self, x: &Point) -> Result<Point> {
        self.point_sub(&self.zero(), x)
    }

    pub fn zero(&self) -> Point {
        Point { digits: alloc::vec![0; self.level()] }
    }

    /// `Σ x_k M_k`.
    pub fn rank(&self, x: &Point) -> usize {
        x.digits.iter().zip(&self.powers).map(|(&d, &m)| d * m).sum()
    }

    pub fn unrank(&self, r: usize) -> Result<Point> {
        if r >= self.size() {
            return Err(Error::OutOfRange { what: "rank", value: r, max: self.size() - 1 });
        }
        Ok(Point { digits: self.expand(r) })
    }

    /// Rank of `x - t`, both given by rank.
    pub fn sub_ranks(&self, x: usize, t: usize) -> usize {
        let (mut x, mut t) = (x, t);
        let mut out = 0;
        for (&m, &stride) in self.radices.iter().zip(&self.powers) {
            let (a, b) = (x % m, t % m);
            out += ((a + m - b) % m) * stride;
            x /= m;
            t /= m;
        }
        out
    }

    /// One point per coset of `I_L` inside `I_s`: digits `0..s` zero, the
    /// remaining digits free. Returned in increasing rank order.
    pub fn coset_reps(&self, s: usize) -> Result<Vec<Point>> {
        Ok(self.coset_rep_ranks(s)?.into_iter().map(|r| Point { digits: self.expand(r) }).collect())
    }

    /// Ranks of [`coset_reps`](Self::coset_reps): the multiples of `M_s`.
    pub fn coset_rep_ranks(&self, s: usize) -> Result<Vec<usize>> {
        if s > self.level() {
            return Err(Error::OutOfRange { what: "s", value: s, max: self.level() });
        }
        let step = self.powers[s];
        Ok((0..self.size()).step_by(step).collect())
    }

    /// Whether the point of rank `r` lies in `I_s = I_s(0)`.
    pub fn in_coset(&self, r: usize, s: usize) -> bool {
        r.is_multiple_of(self.powers[s])
    }

    /// Indicator of `I_s`.
    pub fn indicator(&self, s: usize) -> Result<GridFunction> {
        if s > self.level() {
            return Err(Error::OutOfRange { what: "s", value: s, max: self.level() });
        }
        let values = (0..self.size())
            .map(|r| if self.in_coset(r, s) { Complex64::new(1.0, 0.0) } else { Complex64::new(0.0, 0.0) })
            .collect();
        GridFunction::new(self.clone(), values)
    }

    pub(crate) fn expand(&self, mut n: usize) -> Vec<usize> {
        self.radices
            .iter()
            .map(|&m| {
                let d = n % m;
                n /= m;
                d
            })
            .collect()
    }

    fn check_point(&self, digits: &[usize]) -> Result<()> {
        if digits.len() != self.level() {
            return Err(Error::SpecMismatch);
        }
        for (&d, &m) in digits.iter().zip(&self.radices) {
            if d >= m {
                return Err(Error::OutOfRange { what: "digit", value: d, max: m - 1 });
            }
        }
        Ok(())
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("m=")?;
        for (k, m) in self.radices.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{m}")?;
        }
        write!(f, ";L={}", self.level())
    }
}

impl FromStr for GroupSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse_with_cap(s, DEFAULT_MAX_GRID)
    }
}

/// A grid point, given by its digits `x_0, …, x_{L-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    digits: Vec<usize>,
}

impl Point {
    pub fn digits(&self) -> &[usize] {
        &self.digits
    }
}

/// An index `n = Σ n_j M_j` together with its digits and order `|n|`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VIndex {
    value: usize,
    digits: Vec<usize>,
    order: usize,
}

impl VIndex {
    pub fn value(&self) -> usize {
        self.value
    }

    pub fn digits(&self) -> &[usize] {
        &self.digits
    }

    /// `|n| = max{j : n_j != 0}`, with `|0| = 0`.
    pub fn order(&self) -> usize {
        self.order
    }
}

/// Normalized Haar integral `(1/M_L) Σ_x f(x)`.
pub fn haar_integral(f: &GridFunction) -> Complex64 {
    f.integral()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builds_generalized_powers() {
        let g = GroupSpec::new(&[2, 2, 2], 3).unwrap();
        assert_eq!(g.powers(), &[1, 2, 4, 8]);
        assert_eq!(g.bound(), 2);
        let g = GroupSpec::new(&[3, 2, 4], 3).unwrap();
        assert_eq!(g.powers(), &[1, 3, 6, 24]);
        assert_eq!(g.bound(), 4);
    }

    #[test]
    fn rejects_bad_groups() {
        assert_eq!(
            GroupSpec::new(&[2, 1], 2),
            Err(Error::InvalidRadix { level: 1, radix: 1 })
        );
        assert_eq!(GroupSpec::new(&[2], 0), Err(Error::InvalidLevel(0)));
        assert!(matches!(GroupSpec::with_cap(&[2], 11, 1024), Err(Error::GridTooLarge { .. })));
        assert!(GroupSpec::with_cap(&[2], 10, 1024).is_ok());
    }

    #[test]
    fn radices_cycle_to_level() {
        let g: GroupSpec = "m=2,3,4;L=6".parse().unwrap();
        assert_eq!(g.radices(), &[2, 3, 4, 2, 3, 4]);
        assert_eq!(g.to_string(), "m=2,3,4,2,3,4;L=6");
        let back: GroupSpec = g.to_string().parse().unwrap();
        assert_eq!(back, g);
        assert!("m=2,x;L=3".parse::<GroupSpec>().is_err());
        assert!("m=2,3".parse::<GroupSpec>().is_err());
        assert!("m=2;L=3;q=1".parse::<GroupSpec>().is_err());
    }

    #[test]
    fn digit_expansion() {
        let g = GroupSpec::new(&[2, 2, 2], 3).unwrap();
        let v = g.digits(5).unwrap();
        assert_eq!(v.digits(), &[1, 0, 1]);
        assert_eq!(v.order(), 2);
        let z = g.digits(0).unwrap();
        assert_eq!(z.digits(), &[0, 0, 0]);
        assert_eq!(z.order(), 0);
        assert!(g.digits(8).is_err());

        // 7 = 1 + 0*3 + 1*6: digit n_1 lives in Z_2
        let g = GroupSpec::new(&[3, 2, 4], 3).unwrap();
        let v = g.digits(7).unwrap();
        assert_eq!(v.digits(), &[1, 0, 1]);
        assert_eq!(v.order(), 2);
    }

    #[test]
    fn subtraction_and_rank() {
        let g = GroupSpec::new(&[3, 3, 2], 3).unwrap();
        let x = g.point(&[1, 2, 0]).unwrap();
        let t = g.point(&[2, 1, 0]).unwrap();
        assert_eq!(g.point_sub(&x, &t).unwrap().digits(), &[2, 1, 0]);
        assert_eq!(g.point_sub(&x, &x).unwrap(), g.zero());

        let g2 = GroupSpec::new(&[2, 2], 2).unwrap();
        let a = g2.point(&[0, 1]).unwrap();
        let b = g2.point(&[1, 0]).unwrap();
        assert_eq!(g2.point_sub(&a, &b).unwrap().digits(), &[1, 1]);
        assert_eq!(g2.point_sub(&a, &x), Err(Error::SpecMismatch));

        let g = GroupSpec::new(&[2, 2, 2], 3).unwrap();
        assert_eq!(g.rank(&g.point(&[1, 0, 1]).unwrap()), 5);
        assert_eq!(g.rank(&g.zero()), 0);
        let g = GroupSpec::new(&[3, 2, 4], 3).unwrap();
        assert_eq!(g.rank(&g.point(&[2, 1, 3]).unwrap()), 23);
        assert!(g.point(&[3, 0, 0]).is_err());
    }

    #[test]
    fn coset_representatives() {
        let g = GroupSpec::new(&[2, 2, 2], 3).unwrap();
        assert_eq!(g.coset_reps(3).unwrap(), alloc::vec![g.zero()]);
        assert_eq!(g.coset_reps(0).unwrap().len(), 8);
        let reps = g.coset_reps(1).unwrap();
        assert_eq!(reps.len(), 4);
        assert!(reps.iter().all(|p| p.digits()[0] == 0));
        assert!(g.coset_reps(4).is_err());
    }

    #[test]
    fn block_index() {
        let g = GroupSpec::new(&[3, 2, 4], 3).unwrap();
        assert_eq!(g.block_of(1).unwrap(), 0);
        assert_eq!(g.block_of(2).unwrap(), 0);
        assert_eq!(g.block_of(3).unwrap(), 1);
        assert_eq!(g.block_of(6).unwrap(), 2);
        assert_eq!(g.block_of(23).unwrap(), 2);
        assert!(g.block_of(24).is_err());
        assert!(g.block_of(0).is_err());
    }
}
