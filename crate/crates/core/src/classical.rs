//! Classical baker dynamics on the torus and its lift to the plane.
//!
//! The plane map uses four affine branches selected by the half-open
//! regions `l`/`r` (x mod 1 below or above 1/2) and `e_p`/`o_p`
//! (p mod 2 below or above 1). Its inverse uses the conjugate regions
//! `e_x`/`o_x` and `b`/`t`. Taken modulo 1 both reduce to the baker's map
//! on the torus.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{BakerError, Result};

/// `x mod period` in `[0, period)`, floor-based so negative inputs land
/// in the right coset.
pub(crate) fn wrap(x: f64, period: f64) -> f64 {
    let r = x - period * (x / period).floor();
    // x slightly below a multiple of the period can round up to it
    if r >= period {
        0.0
    } else {
        r
    }
}

fn check_finite(x: f64, p: f64) -> Result<()> {
    if x.is_finite() && p.is_finite() {
        Ok(())
    } else {
        Err(BakerError::NonFinite { x, p })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TorusPoint {
    x: f64,
    p: f64,
}

impl TorusPoint {
    pub fn new(x: f64, p: f64) -> Result<Self> {
        check_finite(x, p)?;
        if !(0.0..1.0).contains(&x) || !(0.0..1.0).contains(&p) {
            return Err(BakerError::OffTorus { x, p });
        }
        Ok(Self { x, p })
    }

    /// Reduces arbitrary finite coordinates onto the unit torus.
    pub fn wrapped(x: f64, p: f64) -> Result<Self> {
        check_finite(x, p)?;
        Ok(Self {
            x: wrap(x, 1.0),
            p: wrap(p, 1.0),
        })
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    pub fn p(&self) -> f64 {
        self.p
    }
}

impl From<TorusPoint> for PlanePoint {
    fn from(t: TorusPoint) -> Self {
        PlanePoint { x: t.x, p: t.p }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlanePoint {
    x: f64,
    p: f64,
}

impl PlanePoint {
    pub fn new(x: f64, p: f64) -> Result<Self> {
        check_finite(x, p)?;
        Ok(Self { x, p })
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn to_torus(self) -> TorusPoint {
        TorusPoint {
            x: wrap(self.x, 1.0),
            p: wrap(self.p, 1.0),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RegionLabel {
    /// x ∈ [0, 1/2) + Z
    Left,
    /// x ∈ [1/2, 1) + Z
    Right,
    /// p ∈ [0, 1/2) + Z
    Bottom,
    /// p ∈ [1/2, 1) + Z
    Top,
    /// x ∈ [0, 1) + 2Z
    EvenX,
    /// x ∈ [1, 2) + 2Z
    OddX,
    /// p ∈ [0, 1) + 2Z
    EvenP,
    /// p ∈ [1, 2) + 2Z
    OddP,
}

impl RegionLabel {
    pub const ALL: [RegionLabel; 8] = [
        RegionLabel::Left,
        RegionLabel::Right,
        RegionLabel::Bottom,
        RegionLabel::Top,
        RegionLabel::EvenX,
        RegionLabel::OddX,
        RegionLabel::EvenP,
        RegionLabel::OddP,
    ];

    pub fn complement(self) -> Self {
        use RegionLabel::*;
        match self {
            Left => Right,
            Right => Left,
            Bottom => Top,
            Top => Bottom,
            EvenX => OddX,
            OddX => EvenX,
            EvenP => OddP,
            OddP => EvenP,
        }
    }

    /// True when the region constrains the momentum coordinate.
    pub fn acts_on_momentum(self) -> bool {
        use RegionLabel::*;
        matches!(self, Bottom | Top | EvenP | OddP)
    }

    /// `(period, lo, hi)`: the region is `[lo, hi) + period·Z` in the
    /// coordinate it constrains.
    pub fn coset(self) -> (f64, f64, f64) {
        use RegionLabel::*;
        match self {
            Left | Bottom => (1.0, 0.0, 0.5),
            Right | Top => (1.0, 0.5, 1.0),
            EvenX | EvenP => (2.0, 0.0, 1.0),
            OddX | OddP => (2.0, 1.0, 2.0),
        }
    }

    pub fn short_name(self) -> &'static str {
        use RegionLabel::*;
        match self {
            Left => "l",
            Right => "r",
            Bottom => "b",
            Top => "t",
            EvenX => "e_x",
            OddX => "o_x",
            EvenP => "e_p",
            OddP => "o_p",
        }
    }

    pub fn contains(self, pt: PlanePoint) -> bool {
        let coord = if self.acts_on_momentum() { pt.p } else { pt.x };
        let (period, lo, hi) = self.coset();
        let r = wrap(coord, period);
        lo <= r && r < hi
    }
}

/// Region memberships of `pt`, one from each complementary pair, in the
/// order `[l|r, b|t, e_x|o_x, e_p|o_p]`.
pub fn classify(pt: PlanePoint) -> [RegionLabel; 4] {
    use RegionLabel::*;
    let pick = |a: RegionLabel, b: RegionLabel| if a.contains(pt) { a } else { b };
    [
        pick(Left, Right),
        pick(Bottom, Top),
        pick(EvenX, OddX),
        pick(EvenP, OddP),
    ]
}

pub fn torus_baker(pt: TorusPoint) -> TorusPoint {
    let (x, p) = (pt.x, pt.p);
    if x < 0.5 {
        TorusPoint {
            x: 2.0 * x,
            p: p / 2.0,
        }
    } else {
        TorusPoint {
            x: 2.0 * x - 1.0,
            p: p / 2.0 + 0.5,
        }
    }
}

pub fn cover_baker(pt: PlanePoint) -> PlanePoint {
    let (x, p) = (pt.x, pt.p);
    let left = RegionLabel::Left.contains(pt);
    let even_p = RegionLabel::EvenP.contains(pt);
    let (x2, p2) = match (left, even_p) {
        (true, true) => (2.0 * x, p / 2.0),
        (false, true) => (2.0 * x - 1.0, p / 2.0 + 0.5),
        (true, false) => (2.0 * x + 1.0, p / 2.0 + 0.5),
        (false, false) => (2.0 * x, p / 2.0),
    };
    PlanePoint { x: x2, p: p2 }
}

pub fn cover_baker_inverse(pt: PlanePoint) -> PlanePoint {
    let (x, p) = (pt.x, pt.p);
    let even_x = RegionLabel::EvenX.contains(pt);
    let bottom = RegionLabel::Bottom.contains(pt);
    let (x2, p2) = match (even_x, bottom) {
        (true, true) => (x / 2.0, 2.0 * p),
        (false, true) => (x / 2.0 - 0.5, 2.0 * p - 1.0),
        (true, false) => (x / 2.0 + 0.5, 2.0 * p - 1.0),
        (false, false) => (x / 2.0, 2.0 * p),
    };
    PlanePoint { x: x2, p: p2 }
}

/// True when `pt` sits on a boundary of `l`/`r` or `e_p`/`o_p`.
pub fn on_forward_boundary(pt: PlanePoint) -> bool {
    wrap(pt.x, 0.5) == 0.0 || wrap(pt.p, 1.0) == 0.0
}

/// Pullback of the torus harmonic `e^{2πi(ax+bp)}` under the covering
/// map, evaluated from the product-of-indicators form
/// `e^{4πiax} e^{iπbp} (χ_l + (−1)^b χ_r)(χ_{e_p} + (−1)^b χ_{o_p})`.
pub fn pullback_harmonic(a: i64, b: i64, pt: PlanePoint) -> Result<Complex64> {
    if on_forward_boundary(pt) {
        return Err(BakerError::OnBoundary { x: pt.x, p: pt.p });
    }
    let sign_b = if b.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
    let indicator = |r: RegionLabel| if r.contains(pt) { 1.0 } else { 0.0 };
    let horizontal = indicator(RegionLabel::Left) + sign_b * indicator(RegionLabel::Right);
    let vertical = indicator(RegionLabel::EvenP) + sign_b * indicator(RegionLabel::OddP);
    let phase = 4.0 * PI * a as f64 * pt.x + PI * b as f64 * pt.p;
    Ok(Complex64::from_polar(horizontal * vertical, phase))
}

/// `x → 1 − x`, `p → 1 − p` on the torus.
pub fn parity_point(pt: TorusPoint) -> TorusPoint {
    TorusPoint {
        x: wrap(1.0 - pt.x, 1.0),
        p: wrap(1.0 - pt.p, 1.0),
    }
}

pub fn torus_orbit(start: TorusPoint, steps: usize) -> Vec<TorusPoint> {
    std::iter::successors(Some(start), |&pt| Some(torus_baker(pt)))
        .take(steps + 1)
        .collect()
}

pub fn cover_orbit(start: PlanePoint, steps: usize) -> Vec<PlanePoint> {
    std::iter::successors(Some(start), |&pt| Some(cover_baker(pt)))
        .take(steps + 1)
        .collect()
}

pub fn inverse_orbit(start: PlanePoint, steps: usize) -> Vec<PlanePoint> {
    std::iter::successors(Some(start), |&pt| Some(cover_baker_inverse(pt)))
        .take(steps + 1)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use RegionLabel::*;

    fn plane(x: f64, p: f64) -> PlanePoint {
        PlanePoint::new(x, p).unwrap()
    }

    fn torus_dist(a: f64, b: f64) -> f64 {
        let d = wrap(a - b, 1.0);
        d.min(1.0 - d)
    }

    #[test]
    fn torus_map_branches() {
        let t = |x, p| torus_baker(TorusPoint::new(x, p).unwrap());
        assert_eq!(t(0.3, 0.4), TorusPoint { x: 0.6, p: 0.2 });
        assert_eq!(t(0.75, 0.2), TorusPoint { x: 0.5, p: 0.6 });
        assert_eq!(t(0.0, 0.0), TorusPoint { x: 0.0, p: 0.0 });
    }

    #[test]
    fn torus_point_validation() {
        assert!(matches!(
            TorusPoint::new(f64::NAN, 0.1),
            Err(BakerError::NonFinite { .. })
        ));
        assert!(matches!(
            TorusPoint::new(1.0, 0.1),
            Err(BakerError::OffTorus { .. })
        ));
        assert!(PlanePoint::new(0.0, f64::INFINITY).is_err());
        let w = TorusPoint::wrapped(-0.25, 3.5).unwrap();
        assert_eq!((w.x(), w.p()), (0.75, 0.5));
        // tiny negative input must not wrap to exactly 1.0
        let w = TorusPoint::wrapped(-1e-20, 0.0).unwrap();
        assert!(w.x() < 1.0);
    }

    #[test]
    fn cover_map_branches() {
        let c = |x, p| {
            let q = cover_baker(plane(x, p));
            (q.x, q.p)
        };
        assert_eq!(c(0.3, 0.4), (0.6, 0.2));
        let (x, p) = c(0.3, 1.4);
        assert!((x - 1.6).abs() < 1e-15 && (p - 1.2).abs() < 1e-15);
        let (x, p) = c(0.75, 1.4);
        assert!((x - 1.5).abs() < 1e-15 && (p - 0.7).abs() < 1e-15);
    }

    #[test]
    fn inverse_map_branches() {
        let c = |x, p| {
            let q = cover_baker_inverse(plane(x, p));
            (q.x, q.p)
        };
        let (x, p) = c(0.6, 0.2);
        assert!((x - 0.3).abs() < 1e-15 && (p - 0.4).abs() < 1e-15);
        let (x, p) = c(1.6, 1.2);
        assert!((x - 0.3).abs() < 1e-15 && (p - 1.4).abs() < 1e-15);
        let (x, p) = c(1.5, 0.7);
        assert!((x - 0.75).abs() < 1e-15 && (p - 1.4).abs() < 1e-15);
    }

    #[test]
    fn classification_examples() {
        assert_eq!(classify(plane(0.3, 0.4)), [Left, Bottom, EvenX, EvenP]);
        assert_eq!(classify(plane(0.75, 1.4)), [Right, Bottom, EvenX, OddP]);
        assert_eq!(classify(plane(1.5, 0.7)), [Right, Top, OddX, EvenP]);
        // half-open boundaries and negative coordinates
        assert_eq!(classify(plane(0.5, 1.0)), [Right, Bottom, EvenX, OddP]);
        assert_eq!(classify(plane(-0.25, -0.5)), [Right, Top, OddX, OddP]);
    }

    #[test]
    fn pullback_examples() {
        let v = pullback_harmonic(1, 0, plane(0.3, 0.4)).unwrap();
        assert!((v - Complex64::from_polar(1.0, 2.0 * PI * 0.6)).norm() < 1e-12);
        let v = pullback_harmonic(0, 1, plane(0.3, 1.4)).unwrap();
        assert!((v - Complex64::from_polar(1.0, 2.0 * PI * 1.2)).norm() < 1e-12);
        for (x, p) in [(0.3, 0.4), (0.8, 1.3), (-0.4, 2.7)] {
            let v = pullback_harmonic(0, 2, plane(x, p)).unwrap();
            assert!((v - Complex64::from_polar(1.0, 2.0 * PI * p)).norm() < 1e-12);
        }
    }

    #[test]
    fn pullback_rejects_boundaries() {
        for (x, p) in [(0.5, 0.3), (0.0, 0.3), (0.2, 1.0), (-1.5, 0.2)] {
            assert!(matches!(
                pullback_harmonic(1, 1, plane(x, p)),
                Err(BakerError::OnBoundary { .. })
            ));
        }
    }

    #[test]
    fn parity_examples() {
        let s = parity_point(TorusPoint::new(0.3, 0.4).unwrap());
        assert!((s.x - 0.7).abs() < 1e-15 && (s.p - 0.6).abs() < 1e-15);
        assert_eq!(
            parity_point(TorusPoint::new(0.0, 0.0).unwrap()),
            TorusPoint { x: 0.0, p: 0.0 }
        );
        let pt = TorusPoint::new(0.3, 0.4).unwrap();
        let lhs = torus_baker(parity_point(pt));
        let rhs = parity_point(torus_baker(pt));
        assert!(torus_dist(lhs.x, 0.4) < 1e-12 && torus_dist(lhs.p, 0.8) < 1e-12);
        assert!(torus_dist(rhs.x, 0.4) < 1e-12 && torus_dist(rhs.p, 0.8) < 1e-12);
    }

    #[test]
    fn orbits_have_requested_length() {
        let o = torus_orbit(TorusPoint::new(0.3, 0.4).unwrap(), 3);
        assert_eq!(o.len(), 4);
        assert_eq!(o[1], TorusPoint { x: 0.6, p: 0.2 });
        assert_eq!(cover_orbit(plane(0.3, 1.4), 0).len(), 1);
        assert_eq!(inverse_orbit(plane(0.6, 0.2), 2).len(), 3);
    }

    proptest! {
        #[test]
        fn regions_partition_the_plane(x in -20.0f64..20.0, p in -20.0f64..20.0) {
            let pt = plane(x, p);
            for r in RegionLabel::ALL {
                prop_assert!(r.contains(pt) != r.complement().contains(pt));
            }
        }

        #[test]
        fn inverse_undoes_cover(x in -20.0f64..20.0, p in -20.0f64..20.0) {
            let pt = plane(x, p);
            prop_assume!(!on_forward_boundary(pt));
            let back = cover_baker_inverse(cover_baker(pt));
            prop_assert!((back.x - x).abs() < 1e-12 && (back.p - p).abs() < 1e-12);
        }

        #[test]
        fn left_maps_to_bottom(x in -20.0f64..20.0, p in -20.0f64..20.0) {
            let pt = plane(x, p);
            let image = cover_baker(pt);
            let bottom = Bottom.contains(image);
            prop_assert_eq!(Left.contains(pt), bottom);
        }
    }
}
