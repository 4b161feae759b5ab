use super::VectorField;
use crate::error::{Error, Result};
use crate::linkage::{geodesic_field, reduced_field, singular_field, ConfigPoint, Params, PhaseState, ReducedState};

/// Geodesic equations on the eight-dimensional phase space.
#[derive(Debug, Clone, Copy)]
pub struct GeodesicField {
    pub params: Params,
}

impl VectorField for GeodesicField {
    fn dim(&self) -> usize {
        8
    }

    fn name(&self) -> &str {
        "geodesic"
    }

    fn eval(&self, _t: f64, y: &[f64], dy: &mut [f64]) -> Result<()> {
        let d = geodesic_field(&PhaseState::from_slice(y), &self.params);
        dy.copy_from_slice(&d.to_array());
        Ok(())
    }

    fn params(&self) -> Option<Params> {
        Some(self.params)
    }
}

/// Singular-curve field on the configuration space.
#[derive(Debug, Clone, Copy)]
pub struct SingularField {
    pub params: Params,
}

impl VectorField for SingularField {
    fn dim(&self) -> usize {
        4
    }

    fn name(&self) -> &str {
        "singular"
    }

    fn eval(&self, _t: f64, y: &[f64], dy: &mut [f64]) -> Result<()> {
        let v = singular_field(&ConfigPoint::from_slice(y), &self.params)?;
        dy.copy_from_slice(&v.dq.to_array());
        Ok(())
    }

    fn params(&self) -> Option<Params> {
        Some(self.params)
    }
}

/// Unit equal-length reduced system in `(a1, a2, gamma)`.
#[derive(Debug, Clone, Copy)]
pub struct ReducedField {
    pub p1: f64,
    pub p2: f64,
}

impl VectorField for ReducedField {
    fn dim(&self) -> usize {
        3
    }

    fn name(&self) -> &str {
        "reduced"
    }

    fn eval(&self, _t: f64, y: &[f64], dy: &mut [f64]) -> Result<()> {
        let r = ReducedState { alpha1: y[0], alpha2: y[1], gamma: y[2] };
        let d = reduced_field(&r, self.p1, self.p2)?;
        dy.copy_from_slice(&[d.alpha1, d.alpha2, d.gamma]);
        Ok(())
    }

    fn params(&self) -> Option<Params> {
        Some(Params::unit())
    }
}

/// Unit equal-length geodesics in `(x1, x2, a1, a2, gamma, kappa)`.
///
/// Uses `kappa' = p1 sin(gamma) - p2 cos(gamma)`, which holds on the unit-energy
/// level. Unlike the phase variables, nothing here blows up as `m1` and `m2` merge.
#[derive(Debug, Clone, Copy)]
pub struct TangentField {
    pub p1: f64,
    pub p2: f64,
}

impl VectorField for TangentField {
    fn dim(&self) -> usize {
        6
    }

    fn name(&self) -> &str {
        "tangent"
    }

    fn eval(&self, _t: f64, y: &[f64], dy: &mut [f64]) -> Result<()> {
        let (sg, cg) = y[4].sin_cos();
        dy[0] = cg;
        dy[1] = sg;
        dy[2] = (y[4] - y[2]).sin();
        dy[3] = (y[4] - y[3]).sin();
        dy[4] = y[5];
        dy[5] = self.p1 * sg - self.p2 * cg;
        Ok(())
    }

    fn params(&self) -> Option<Params> {
        Some(Params::unit())
    }
}

/// Field given by a closure.
pub struct FnField<C> {
    name: String,
    dim: usize,
    f: C,
}

pub fn fn_field<C>(name: &str, dim: usize, f: C) -> FnField<C>
where
    C: Fn(f64, &[f64], &mut [f64]) -> Result<()>,
{
    FnField { name: name.to_string(), dim, f }
}

impl<C> VectorField for FnField<C>
where
    C: Fn(f64, &[f64], &mut [f64]) -> Result<()>,
{
    fn dim(&self) -> usize {
        self.dim
    }

    fn name(&self) -> &str {
        &self.name
    }

    fn eval(&self, t: f64, y: &[f64], dy: &mut [f64]) -> Result<()> {
        (self.f)(t, y, dy)
    }
}

/// A field divided pointwise by a positive speed function.
pub struct UnitSpeed<F, S> {
    inner: F,
    speed: S,
    name: String,
}

impl<F: VectorField, S: Fn(&[f64]) -> f64> UnitSpeed<F, S> {
    pub fn new(inner: F, speed: S) -> Self {
        let name = format!("{} (unit speed)", inner.name());
        Self { inner, speed, name }
    }
}

impl<F: VectorField, S: Fn(&[f64]) -> f64> VectorField for UnitSpeed<F, S> {
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    fn name(&self) -> &str {
        &self.name
    }

    fn eval(&self, t: f64, y: &[f64], dy: &mut [f64]) -> Result<()> {
        self.inner.eval(t, y, dy)?;
        let s = (self.speed)(y);
        if !(s >= 1e-12) {
            return Err(Error::Degenerate(format!("speed {s:e} too small to normalize")));
        }
        dy.iter_mut().for_each(|v| *v /= s);
        Ok(())
    }

    fn params(&self) -> Option<Params> {
        self.inner.params()
    }
}
