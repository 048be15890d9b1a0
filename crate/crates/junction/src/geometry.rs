//! Concentric disk-in-disk geometry: superconducting disk Ω₁ = {|x| < R1}
//! inside the sample Ω = {|x| < R2}, normal annulus Ω₂ between them, and the
//! tubular coordinates (s, t) around the interface circle Γ = {|x| = R1}.

use std::fmt;

#[derive(Clone, Copy, Debug)]
pub struct DiskInDisk {
    pub r1: f64,
    pub r2: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub enum GeometryError {
    /// Requires 0 < R1 < R2, all finite.
    InvalidRadii { r1: f64, r2: f64 },
    /// Tube half-width must satisfy 0 < t0 < R1.
    InvalidTube { t0: f64, r1: f64 },
}

impl fmt::Display for GeometryError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeometryError::InvalidRadii { r1, r2 } => {
                write!(f, "radii must satisfy 0 < R1 < R2 (got R1 = {r1}, R2 = {r2})")
            }
            GeometryError::InvalidTube { t0, r1 } => {
                write!(f, "tube half-width must satisfy 0 < t0 < R1 (got t0 = {t0}, R1 = {r1})")
            }
        }
    }
}

impl std::error::Error for GeometryError {}

impl DiskInDisk {
    pub fn new(r1: f64, r2: f64) -> Result<Self, GeometryError> {
        if !(r1.is_finite() && r2.is_finite() && 0.0 < r1 && r1 < r2) {
            return Err(GeometryError::InvalidRadii { r1, r2 });
        }
        Ok(DiskInDisk { r1, r2 })
    }

    /// Signed distance to Γ, positive inside Ω₁: t(x) = R1 − |x|.
    pub fn signed_distance(&self, x: [f64; 2]) -> f64 {
        self.r1 - (x[0] * x[0] + x[1] * x[1]).sqrt()
    }

    /// Curvature of Γ (constant for a circle).
    pub fn curvature(&self) -> f64 {
        1.0 / self.r1
    }

    pub fn perimeter(&self) -> f64 {
        2.0 * std::f64::consts::PI * self.r1
    }

    /// ∫_Γ κ ds = 2π for any closed convex curve; exact here by construction.
    pub fn total_curvature(&self) -> f64 {
        self.curvature() * self.perimeter()
    }

    pub fn area_inner(&self) -> f64 {
        std::f64::consts::PI * self.r1 * self.r1
    }

    pub fn area_outer(&self) -> f64 {
        std::f64::consts::PI * (self.r2 * self.r2 - self.r1 * self.r1)
    }

    pub fn area_total(&self) -> f64 {
        std::f64::consts::PI * self.r2 * self.r2
    }

    /// Arc-length coordinates on the tube {|t| < t0} around Γ.
    pub fn boundary_coords(&self, t0: f64) -> Result<BoundaryCoords, GeometryError> {
        if !(t0.is_finite() && 0.0 < t0 && t0 < self.r1) {
            return Err(GeometryError::InvalidTube { t0, r1: self.r1 });
        }
        Ok(BoundaryCoords { r1: self.r1, t0 })
    }

    /// Indices of sample points with |t| < threshold (the interface tube).
    pub fn tube_mask(&self, ts: &[f64], threshold: f64) -> Vec<usize> {
        ts.iter()
            .enumerate()
            .filter(|(_, &t)| t.abs() < threshold)
            .map(|(i, _)| i)
            .collect()
    }
}

/// The tubular chart Φ(s, t) around Γ: s is arc length along the circle,
/// t the signed distance inward.
#[derive(Clone, Copy, Debug)]
pub struct BoundaryCoords {
    r1: f64,
    pub t0: f64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OutOfTube {
    pub t: f64,
    pub t0: f64,
}

impl fmt::Display for OutOfTube {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "|t| = {} is outside the tube half-width t0 = {}", self.t.abs(), self.t0)
    }
}

impl std::error::Error for OutOfTube {}

impl BoundaryCoords {
    /// The interface point at arc length s: M(s) = R1(cos(s/R1), sin(s/R1)).
    pub fn boundary_map(&self, s: f64) -> [f64; 2] {
        let th = s / self.r1;
        [self.r1 * th.cos(), self.r1 * th.sin()]
    }

    /// Φ(s, t): the point at signed distance t inward from M(s).
    pub fn map(&self, s: f64, t: f64) -> Result<[f64; 2], OutOfTube> {
        if t.abs() >= self.t0 {
            return Err(OutOfTube { t, t0: self.t0 });
        }
        let th = s / self.r1;
        let r = self.r1 - t;
        Ok([r * th.cos(), r * th.sin()])
    }

    /// Jacobian of Φ: 1 − t·κ = 1 − t/R1 (positive on the tube).
    pub fn jacobian(&self, t: f64) -> Result<f64, OutOfTube> {
        if t.abs() >= self.t0 {
            return Err(OutOfTube { t, t0: self.t0 });
        }
        Ok(1.0 - t / self.r1)
    }

    /// Invert Φ for a point inside the tube: returns (s, t) with s ∈ [0, 2πR1).
    pub fn unmap(&self, x: [f64; 2]) -> Result<(f64, f64), OutOfTube> {
        let rho = (x[0] * x[0] + x[1] * x[1]).sqrt();
        let t = self.r1 - rho;
        if t.abs() >= self.t0 {
            return Err(OutOfTube { t, t0: self.t0 });
        }
        let mut th = x[1].atan2(x[0]);
        if th < 0.0 {
            th += 2.0 * std::f64::consts::PI;
        }
        Ok((self.r1 * th, t))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    #[test]
    fn validation() {
        assert!(DiskInDisk::new(1.0, 2.0).is_ok());
        assert!(DiskInDisk::new(2.0, 1.0).is_err());
        assert!(DiskInDisk::new(0.0, 1.0).is_err());
        assert!(DiskInDisk::new(1.0, f64::NAN).is_err());
        let g = DiskInDisk::new(1.0, 2.0).unwrap();
        assert!(g.boundary_coords(1.0).is_err());
        assert!(g.boundary_coords(0.5).is_ok());
    }

    #[test]
    fn signed_distance_and_curvature() {
        let g = DiskInDisk::new(1.0, 2.0).unwrap();
        assert_relative_eq!(g.signed_distance([0.5, 0.0]), 0.5);
        assert_relative_eq!(g.signed_distance([0.0, 1.5]), -0.5);
        assert_relative_eq!(g.signed_distance([1.0, 0.0]), 0.0);
        assert_relative_eq!(g.total_curvature(), 2.0 * PI, epsilon = 1e-15);
        assert_relative_eq!(g.area_inner() + g.area_outer(), g.area_total(), epsilon = 1e-12);
    }

    #[test]
    fn tube_chart_round_trip() {
        let g = DiskInDisk::new(1.0, 2.0).unwrap();
        let bc = g.boundary_coords(0.5).unwrap();
        for i in 0..40 {
            let s = 2.0 * PI * 1.0 * i as f64 / 40.0;
            for t in [-0.4, -0.1, 0.0, 0.2, 0.45] {
                let x = bc.map(s, t).unwrap();
                assert_relative_eq!(g.signed_distance(x), t, epsilon = 1e-12);
                let (s2, t2) = bc.unmap(x).unwrap();
                assert_relative_eq!(t2, t, epsilon = 1e-12);
                let ds = (s2 - s).abs();
                let per = g.perimeter();
                assert!(ds.min((ds - per).abs()) < 1e-12 * per.max(1.0), "s mismatch {ds}");
            }
        }
        assert!(bc.map(0.0, 0.5).is_err());
        assert!(bc.map(0.0, -0.7).is_err());
    }

    #[test]
    fn boundary_map_on_circle() {
        let g = DiskInDisk::new(2.0, 3.0).unwrap();
        let bc = g.boundary_coords(1.0).unwrap();
        let x = bc.boundary_map(0.0);
        assert_relative_eq!(x[0], 2.0, epsilon = 1e-15);
        assert_relative_eq!(x[1], 0.0, epsilon = 1e-15);
        // arc length parametrization has unit speed: |M(s+ds) - M(s)| ~ ds
        let ds = 1e-6;
        let x2 = bc.boundary_map(ds);
        let speed = ((x2[0] - x[0]).powi(2) + (x2[1] - x[1]).powi(2)).sqrt() / ds;
        assert_relative_eq!(speed, 1.0, epsilon = 1e-6);
    }

    #[test]
    fn jacobian_values() {
        let g = DiskInDisk::new(1.0, 2.0).unwrap();
        let bc = g.boundary_coords(0.9).unwrap();
        assert_relative_eq!(bc.jacobian(0.0).unwrap(), 1.0);
        assert_relative_eq!(bc.jacobian(0.5).unwrap(), 0.5);
        assert_relative_eq!(bc.jacobian(-0.5).unwrap(), 1.5);
        assert!(bc.jacobian(0.9).is_err());
    }

    #[test]
    fn tube_mask_selects_small_t() {
        let g = DiskInDisk::new(1.0, 2.0).unwrap();
        let ts = [-0.5, -0.05, 0.0, 0.02, 0.3];
        assert_eq!(g.tube_mask(&ts, 0.1), vec![1, 2, 3]);
    }
}
