//! Designed phase offsets `f(Δφ)` built from Gaussian bumps.
//!
//! The pairwise interaction of two oscillators is `cos(Δφ + f(Δφ))`. The
//! offset `f` is chosen per problem so that, at the grid separations
//! `Δφ = 2πk/order`, the sum `Δφ + f(Δφ)` lands on a prescribed target
//! phase (π for a cut edge, 0 for tour-adjacent cities, ...). Away from the
//! bump centers `f` is flat, so the interaction reduces to `cos(Δφ)`.
//!
//! Bumps are requested as `(center, amplitude)` with centers in `(0, 2π]`,
//! the way the formulas are usually written. Internally every request is
//! folded onto the half circle `(0, π]` and mirrored: a bump at `c` with
//! target `c + a` becomes a lobe at `|wrap(c)|` whose amplitude is the
//! smallest offset reaching the same target modulo 2π. That makes `f`
//! exactly odd and 2π-periodic, and leaves `e^{i(Δφ + f)}` unchanged at
//! every grid point. Two consequences of oddness:
//!
//! - `f(0) = 0`, so a bump centered on `2π ≡ 0` has no effect and is dropped.
//! - `e^{i(π + f(π))}` must be real. A bump at π may therefore only target
//!   π (amplitude ≡ 0, dropped) or 0, which is realized by a smooth 2π ramp
//!   across Δφ = π instead of a bump.

use alloc::vec::Vec;
use core::f64::consts::{FRAC_PI_2, PI, SQRT_2, TAU};

use crate::error::{Error, Result};
use crate::math::{angular_distance, cos, erfc, exp, sin, wrap_pi};

/// Minimum lobe separation, in units of sigma.
pub const MIN_SEPARATION_SIGMAS: f64 = 6.0;

/// `exp(-x)` is exactly zero in f64 beyond this exponent.
const EXP_CUTOFF: f64 = 750.0;

/// Centers closer than this are treated as the same point.
const CENTER_EPS: f64 = 1e-9;

/// One requested Gaussian bump. Its negated mirror at `-center` is implied.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BumpSpec {
    /// Bump center in `(0, 2π]`.
    pub center: f64,
    /// Offset contributed at the center, radians.
    pub amplitude: f64,
}

impl BumpSpec {
    pub const fn new(center: f64, amplitude: f64) -> Self {
        BumpSpec { center, amplitude }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct Lobe {
    center: f64,
    amplitude: f64,
}

/// A 2π-periodic odd phase offset made of Gaussian bumps of common width.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseInteraction {
    requested: Vec<BumpSpec>,
    sigma: f64,
    grid_order: usize,
    lobes: Vec<Lobe>,
    antipodal_ramp: bool,
}

impl PhaseInteraction {
    /// Builds an interaction from arbitrary bumps on the `2π/grid_order` grid.
    pub fn from_bumps(bumps: &[BumpSpec], sigma: f64, grid_order: usize) -> Result<Self> {
        if !(sigma.is_finite() && sigma > 0.0) {
            return Err(Error::InvalidArgument("sigma must be positive and finite"));
        }
        if grid_order < 2 {
            return Err(Error::InvalidArgument("grid order must be at least 2"));
        }
        let spacing = TAU / grid_order as f64;
        let mut lobes: Vec<Lobe> = Vec::new();
        let mut antipodal: Option<bool> = None;
        for b in bumps {
            if !(b.center > 0.0 && b.center <= TAU + CENTER_EPS) || !b.amplitude.is_finite() {
                return Err(Error::InvalidArgument("bump center must lie in (0, 2π]"));
            }
            let steps = b.center / spacing;
            if (steps - crate::math::round(steps)).abs() > 1e-6 {
                return Err(Error::InvalidArgument("bump center is not on the grid"));
            }
            let mut center = wrap_pi(b.center);
            let mut target = b.center + b.amplitude;
            if center.abs() < CENTER_EPS {
                continue;
            }
            if center < 0.0 {
                center = -center;
                target = -target;
            }
            if (center - PI).abs() < CENTER_EPS {
                let rel = wrap_pi(target - PI);
                let ramp = if rel.abs() < CENTER_EPS {
                    false
                } else if PI - rel.abs() < CENTER_EPS {
                    true
                } else {
                    return Err(Error::UnrealizableAntipodalTarget { target });
                };
                if antipodal.is_some_and(|prev| prev != ramp) {
                    return Err(Error::ConflictingBumps { center: PI });
                }
                antipodal = Some(ramp);
                continue;
            }
            let amplitude = wrap_pi(target - center);
            match lobes.iter().find(|l| (l.center - center).abs() < CENTER_EPS) {
                Some(l) if angular_distance(l.amplitude, amplitude) > CENTER_EPS => {
                    return Err(Error::ConflictingBumps { center });
                }
                Some(_) => {}
                None => lobes.push(Lobe { center, amplitude }),
            }
        }
        lobes.retain(|l| l.amplitude.abs() > 1e-15);
        lobes.sort_by(|a, b| a.center.total_cmp(&b.center));
        let antipodal_ramp = antipodal.unwrap_or(false);

        let mut points: Vec<f64> = lobes.iter().flat_map(|l| [l.center, -l.center]).collect();
        if antipodal_ramp {
            points.push(PI);
        }
        let min_sep = MIN_SEPARATION_SIGMAS * sigma;
        for (i, &a) in points.iter().enumerate() {
            for &b in &points[i + 1..] {
                if angular_distance(a, b) < min_sep - 1e-12 {
                    return Err(Error::BumpOverlap { first: a, second: b, min_separation: min_sep });
                }
            }
        }
        Ok(PhaseInteraction { requested: bumps.to_vec(), sigma, grid_order, lobes, antipodal_ramp })
    }

    /// Zero offset on the given grid (plain `cos(Δφ)` interaction).
    pub fn zero(grid_order: usize, sigma: f64) -> Result<Self> {
        Self::from_bumps(&[], sigma, grid_order)
    }

    /// Max-K-Cut offset: every nonzero grid separation targets π.
    ///
    /// Bumps sit at `2kπ/K` with amplitude `(2k-1)π - 2kπ/K`, `k = 1..K-1`.
    pub fn max_k_cut(k: usize, sigma: f64) -> Result<Self> {
        if k < 2 {
            return Err(Error::InvalidArgument("Max-K-Cut needs K >= 2"));
        }
        check_sigma(sigma, k)?;
        let step = TAU / k as f64;
        let bumps: Vec<_> = (1..k)
            .map(|m| {
                let c = step * m as f64;
                BumpSpec::new(c, (2 * m - 1) as f64 * PI - c)
            })
            .collect();
        Self::from_bumps(&bumps, sigma, k)
    }

    /// Traveling salesman offset on an `n`-slot ring.
    ///
    /// Neighbouring slots (`±2π/n`) target 0, every other slot targets π.
    pub fn tsp(n: usize, sigma: f64) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidArgument("TSP needs at least 3 cities"));
        }
        check_sigma(sigma, n)?;
        let step = TAU / n as f64;
        let mut bumps = Vec::with_capacity(n);
        for g in [1, n - 1] {
            let c = step * g as f64;
            bumps.push(BumpSpec::new(c, -c));
        }
        for m in (2..=n).filter(|&m| m != n - 1) {
            let c = step * m as f64;
            bumps.push(BumpSpec::new(c, PI - c));
        }
        Self::from_bumps(&bumps, sigma, n)
    }

    /// Hamiltonian cycle offset on an `n`-slot ring.
    ///
    /// Neighbouring slots target π (an edge between ring neighbours lowers
    /// the energy) and other slots target ±π/2 (no reward; the sign is fixed
    /// by oddness, π/2 on the upper half-circle). For even `n` the
    /// slot opposite a node cannot target π/2 and targets 0 instead, which
    /// penalizes an edge placed across the ring.
    pub fn hamiltonian(n: usize, sigma: f64) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidArgument("Hamiltonian cycle needs at least 3 nodes"));
        }
        check_sigma(sigma, n)?;
        let step = TAU / n as f64;
        let mut bumps = Vec::with_capacity(n);
        for g in [1, n - 1] {
            let c = step * g as f64;
            bumps.push(BumpSpec::new(c, PI - c));
        }
        for m in (2..=n).filter(|&m| m != n - 1) {
            let c = step * m as f64;
            if 2 * m == n {
                bumps.push(BumpSpec::new(c, -PI));
            } else if 2 * m < n {
                bumps.push(BumpSpec::new(c, FRAC_PI_2 - c));
            } else {
                // oddness forces -π/2 on the lower half; cos is 0 either way
                bumps.push(BumpSpec::new(c, 1.5 * PI - c));
            }
        }
        Self::from_bumps(&bumps, sigma, n)
    }

    /// Appends caller-supplied bumps (for example extra penalty terms).
    pub fn with_extra_bumps(&self, extra: &[BumpSpec]) -> Result<Self> {
        let mut all = self.requested.clone();
        all.extend_from_slice(extra);
        Self::from_bumps(&all, self.sigma, self.grid_order)
    }

    /// Bumps as requested, before folding.
    pub fn bumps(&self) -> &[BumpSpec] {
        &self.requested
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn grid_order(&self) -> usize {
        self.grid_order
    }

    /// True when `f` is identically zero.
    pub fn is_zero(&self) -> bool {
        self.lobes.is_empty() && !self.antipodal_ramp
    }

    /// Centers where `f` varies, as angles in `(-π, π]`.
    pub fn centers(&self) -> Vec<f64> {
        let mut out: Vec<f64> = self.lobes.iter().flat_map(|l| [l.center, -l.center]).collect();
        if self.antipodal_ramp {
            out.push(PI);
        }
        out
    }

    /// Wrapped distance from `dphi` to the nearest center; infinite if `f ≡ 0`.
    pub fn distance_to_nearest_center(&self, dphi: f64) -> f64 {
        self.centers()
            .into_iter()
            .map(|c| angular_distance(dphi, c))
            .fold(f64::INFINITY, f64::min)
    }

    /// Evaluates `f(dphi)`.
    pub fn eval(&self, dphi: f64) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let x = wrap_pi(dphi);
        let inv = 1.0 / (2.0 * self.sigma * self.sigma);
        let mut f = 0.0;
        for l in &self.lobes {
            for image in [-TAU, 0.0, TAU] {
                f += l.amplitude * (gauss(x - l.center - image, inv) - gauss(x + l.center - image, inv));
            }
        }
        if self.antipodal_ramp {
            let s = self.sigma * SQRT_2;
            f += PI * (erfc((PI - x) / s) - erfc((PI + x) / s));
        }
        f
    }

    /// `(cos f(dphi), sin f(dphi))`: the in-phase and quadrature coupling gains.
    pub fn quadrature(&self, dphi: f64) -> (f64, f64) {
        let f = self.eval(dphi);
        (cos(f), sin(f))
    }

    /// `sin(dphi + f(dphi))`, the pairwise drive.
    #[inline]
    pub fn drive(&self, dphi: f64) -> f64 {
        sin(dphi + self.eval(dphi))
    }

    /// `cos(dphi + f(dphi))`, the pairwise energy term.
    #[inline]
    pub fn alignment(&self, dphi: f64) -> f64 {
        cos(dphi + self.eval(dphi))
    }
}

#[inline]
fn gauss(d: f64, inv_two_sigma_sq: f64) -> f64 {
    let e = d * d * inv_two_sigma_sq;
    if e > EXP_CUTOFF {
        0.0
    } else {
        exp(-e)
    }
}

fn check_sigma(sigma: f64, order: usize) -> Result<()> {
    if !(sigma.is_finite() && sigma > 0.0) {
        return Err(Error::InvalidArgument("sigma must be positive and finite"));
    }
    if sigma > PI / (4.0 * order as f64) * (1.0 + 1e-12) {
        return Err(Error::InvalidArgument("sigma exceeds π/(4·order); bumps would overlap"));
    }
    Ok(())
}

/// Default width for a grid of the given order: `π/(8·order)`.
pub fn default_sigma(order: usize) -> f64 {
    PI / (8.0 * order as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::math::wrap_2pi;
    use proptest::prelude::*;

    /// Unfolded, image-free offset exactly as a sum over `k` is written.
    fn raw_offset(bumps: &[BumpSpec], sigma: f64, x: f64) -> f64 {
        let g = |d: f64| libm::exp(-d * d / (2.0 * sigma * sigma));
        bumps.iter().map(|b| b.amplitude * (g(x - b.center) - g(x + b.center))).sum()
    }

    fn assert_close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() < tol, "{a} vs {b}");
    }

    #[test]
    fn max_cut_offset_vanishes() {
        let fi = PhaseInteraction::max_k_cut(2, default_sigma(2)).unwrap();
        assert!(fi.is_zero());
        for x in [0.0, 0.3, PI, -2.0, 10.0] {
            assert_eq!(fi.eval(x), 0.0);
        }
        assert_eq!(fi.bumps()[0].amplitude, 0.0);
    }

    #[test]
    fn k3_worked_example() {
        let fi = PhaseInteraction::max_k_cut(3, default_sigma(3)).unwrap();
        assert_close(fi.eval(TAU / 3.0), PI / 3.0, 1e-9);
        let b = fi.bumps();
        assert_close(b[1].center, 4.0 * PI / 3.0, 1e-15);
        assert_close(b[1].amplitude, 5.0 * PI / 3.0, 1e-15);
        // 4π/3 + f reaches the same target as 4π/3 + 5π/3 = 3π
        let x = 4.0 * PI / 3.0;
        assert_close(cos(x + fi.eval(x)), -1.0, 1e-12);
        assert_close(wrap_pi(fi.eval(x) - 5.0 * PI / 3.0), 0.0, 1e-9);
    }

    #[test]
    fn k3_rejects_wide_sigma() {
        assert!(PhaseInteraction::max_k_cut(3, PI / 11.0).is_err());
        assert!(PhaseInteraction::max_k_cut(1, 0.1).is_err());
    }

    #[test]
    fn folded_matches_unfolded_formula_on_grid() {
        // the unfolded sum is evaluated on Δθ ∈ (-2π, 2π), where its targets are defined
        for k in 2..=8 {
            let fi = PhaseInteraction::max_k_cut(k, default_sigma(k)).unwrap();
            for m in -(k as i64 - 1)..=(k as i64 - 1) {
                let x = TAU * m as f64 / k as f64;
                let raw = raw_offset(fi.bumps(), fi.sigma(), x);
                assert_close(cos(x + fi.eval(x)), cos(x + raw), 1e-9);
                assert_close(sin(x + fi.eval(x)), sin(x + raw), 1e-9);
            }
        }
    }

    #[test]
    fn tsp_targets() {
        let fi = PhaseInteraction::tsp(4, default_sigma(4)).unwrap();
        let adj = FRAC_PI_2;
        assert_close(adj + fi.eval(adj), 0.0, 1e-9);
        assert_close(cos(adj + fi.eval(adj)), 1.0, 1e-12);
        assert_close(wrap_2pi(PI + fi.eval(PI)), PI, 1e-9);
        assert_close(cos(PI + fi.eval(PI)), -1.0, 1e-12);
        assert_eq!(fi.eval(0.0), 0.0);
        let raw = raw_offset(fi.bumps(), fi.sigma(), adj);
        assert_close(adj + raw, 0.0, 1e-9);
    }

    #[test]
    fn hamiltonian_targets_odd_n() {
        let fi = PhaseInteraction::hamiltonian(5, default_sigma(5)).unwrap();
        let adj = TAU / 5.0;
        assert_close(adj + fi.eval(adj), PI, 1e-9);
        let far = 2.0 * TAU / 5.0;
        assert_close(far + fi.eval(far), FRAC_PI_2, 1e-9);
        let low = 3.0 * TAU / 5.0;
        assert_close(cos(low + fi.eval(low)), 0.0, 1e-9);
        assert_close(fi.eval(-0.7), -fi.eval(0.7), 1e-12);
    }

    #[test]
    fn hamiltonian_even_n_penalizes_antipode() {
        let fi = PhaseInteraction::hamiltonian(8, default_sigma(8)).unwrap();
        assert!(fi.centers().contains(&PI));
        assert_close(cos(PI + fi.eval(PI)), 1.0, 1e-12);
        assert_close(cos(PI - 1e-3 + fi.eval(PI - 1e-3)), cos(-PI + 1e-3 + fi.eval(-PI + 1e-3)), 1e-12);
        let far = 2.0 * TAU / 8.0;
        assert_close(far + fi.eval(far), FRAC_PI_2, 1e-9);
    }

    #[test]
    fn quadrature_examples() {
        let zero = PhaseInteraction::max_k_cut(2, 0.1).unwrap();
        assert_eq!(zero.quadrature(1.234), (1.0, 0.0));
        let fi = PhaseInteraction::max_k_cut(3, default_sigma(3)).unwrap();
        let x = TAU / 3.0;
        let (c, s) = fi.quadrature(x);
        assert_close(c, 0.5, 1e-9);
        assert_close(s, 3f64.sqrt() / 2.0, 1e-9);
        assert_close(c * sin(x) + s * cos(x), sin(x + PI / 3.0), 1e-9);
    }

    #[test]
    fn extra_bumps_respect_separation() {
        let fi = PhaseInteraction::hamiltonian(5, default_sigma(5)).unwrap();
        // conflicts with the existing lobe at 2π/5
        assert!(fi.with_extra_bumps(&[BumpSpec::new(TAU / 5.0, 0.0)]).is_err());
        let fi = PhaseInteraction::zero(10, default_sigma(10)).unwrap();
        let more = fi.with_extra_bumps(&[BumpSpec::new(TAU / 10.0, 0.2)]).unwrap();
        assert_close(more.eval(TAU / 10.0), 0.2, 1e-9);
    }

    #[test]
    fn unrealizable_antipodal_target() {
        let err = PhaseInteraction::from_bumps(&[BumpSpec::new(PI, -FRAC_PI_2)], 0.05, 4);
        assert!(matches!(err, Err(Error::UnrealizableAntipodalTarget { .. })));
    }

    fn all_interactions() -> Vec<PhaseInteraction> {
        let mut v = Vec::new();
        for k in 2..=8 {
            v.push(PhaseInteraction::max_k_cut(k, default_sigma(k)).unwrap());
        }
        for n in 3..=12 {
            v.push(PhaseInteraction::tsp(n, default_sigma(n)).unwrap());
            v.push(PhaseInteraction::hamiltonian(n, default_sigma(n)).unwrap());
        }
        v
    }

    #[test]
    fn flat_beyond_seven_sigma() {
        for fi in all_interactions() {
            let h = 1e-6;
            for i in 0..2000 {
                let x = -PI + TAU * (i as f64 + 0.5) / 2000.0;
                if fi.distance_to_nearest_center(x) >= 7.0 * fi.sigma() {
                    let d = (fi.eval(x + h) - fi.eval(x - h)) / (2.0 * h);
                    assert!(d.abs() < 1e-6, "f'({x}) = {d}");
                }
            }
        }
    }

    proptest! {
        #[test]
        fn odd_and_periodic(x in -4.0 * PI..4.0 * PI) {
            for fi in all_interactions() {
                prop_assert!((fi.eval(x) + fi.eval(-x)).abs() < 1e-9);
                prop_assert!((fi.eval(x + TAU) - fi.eval(x)).abs() < 1e-9);
            }
        }

        #[test]
        fn quadrature_identity(x in -4.0 * PI..4.0 * PI) {
            for fi in all_interactions() {
                let (c, s) = fi.quadrature(x);
                let lhs = c * sin(x) + s * cos(x);
                prop_assert!((lhs - sin(x + fi.eval(x))).abs() < 1e-12);
            }
        }
    }
}
