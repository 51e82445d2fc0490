//! Everything derived once from a unit Pisot substitution.

use crate::algebra::{PisotData, Projection};
use crate::dual::DualMapTables;
use crate::error::{Error, Result};
use crate::subst::Substitution;

#[derive(Clone, Debug)]
pub struct Model {
    pub sub: Substitution,
    pub pd: PisotData,
    pub proj: Projection,
    pub n: usize,
    pub d: usize,
    /// n̄ = n − d + 1
    pub nbar: usize,
    /// E^{d−1} on (d−1)-faces
    pub top: DualMapTables,
    /// E^{d−2} on (d−2)-faces
    pub edge: DualMapTables,
    /// planar K_c coordinates of π_c(e_a), indexed by letter − 1
    pub unit_kc: Vec<[f64; 2]>,
}

impl Model {
    pub fn new(sub: Substitution) -> Result<Self> {
        let (pd, proj) = Projection::from_substitution(&sub)?;
        let n = sub.n();
        let d = pd.d;
        if d < 2 {
            return Err(Error::GeometryUnsupported(d.saturating_sub(1)));
        }
        let top = DualMapTables::geometric(&sub, d - 1)?;
        let edge = DualMapTables::geometric(&sub, d - 2)?;
        let unit_kc = (0..n).map(|a| proj.kc_unit(a)).collect();
        Ok(Model { n, d, nbar: n - d + 1, sub, pd, proj, top, edge, unit_kc })
    }

    /// Planar geometry is available when K_c is a plane.
    pub fn require_planar(&self) -> Result<()> {
        if self.d - 1 == 2 {
            Ok(())
        } else {
            Err(Error::GeometryUnsupported(self.d - 1))
        }
    }

    pub fn kc(&self, x: &[i64]) -> [f64; 2] {
        self.proj.kc(x)
    }

    pub fn beta(&self) -> f64 {
        self.pd.beta
    }
}
