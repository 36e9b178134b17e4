use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::function::{DiskFunction, RadialProfile};
use crate::transform::{partial_sum, ModeCoefficients};

/// Groups of registered functions used by the studies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    /// `C^infinity` on the closed disk (in Cartesian coordinates).
    Smooth,
    /// Finite sums of eigenfunctions.
    EigenSum,
    /// Singular at the origin.
    Singular,
    /// Finitely many angular modes with rough radial profiles.
    BandLimited,
}

/// Exponent ranges of the spaces a function belongs to. `None` means every
/// `p >= 1`; `Some(b)` means exactly the `p < b`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Membership {
    pub lp_below: Option<f64>,
    pub mixed_below: Option<f64>,
    pub note: String,
}

impl Membership {
    pub fn everywhere(note: &str) -> Self {
        Membership { lp_below: None, mixed_below: None, note: note.into() }
    }

    pub fn in_lp(&self, p: f64) -> bool {
        self.lp_below.map_or(true, |b| p < b)
    }

    /// Membership of `L^p_rad(l^q_ang)` with `q` conjugate to `p`.
    pub fn in_mixed(&self, p: f64) -> bool {
        self.mixed_below.map_or(true, |b| p < b)
    }
}

#[derive(Debug, Clone)]
pub struct NamedTestFunction {
    id: String,
    description: String,
    function: DiskFunction,
    suites: Vec<Suite>,
    membership: Membership,
}

impl NamedTestFunction {
    pub fn new(id: &str, description: &str, function: DiskFunction, suites: Vec<Suite>, membership: Membership) -> Self {
        NamedTestFunction { id: id.into(), description: description.into(), function, suites, membership }
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn description(&self) -> &str {
        &self.description
    }

    pub fn function(&self) -> &DiskFunction {
        &self.function
    }

    pub fn suites(&self) -> &[Suite] {
        &self.suites
    }

    pub fn in_suite(&self, s: Suite) -> bool {
        self.suites.contains(&s)
    }

    pub fn membership(&self) -> &Membership {
        &self.membership
    }
}

fn real(f: impl Fn(f64, f64) -> f64 + Send + Sync + 'static) -> DiskFunction {
    DiskFunction::from_fn(RadialProfile::Smooth, move |r, t| Complex64::new(f(r, t), 0.0))
}

fn cos_turns(t: f64) -> f64 {
    (2.0 * PI * t).cos()
}

/// The fixed eigen-sum of the registry: angular band limit 2, radial index up to 3.
pub fn eigen_sum_coefficients() -> ModeCoefficients {
    let mut c = ModeCoefficients::zeros(2, 3);
    let entries = [
        (0, 1, Complex64::new(1.0, 0.0)),
        (-1, 1, Complex64::new(-0.4, 0.0)),
        (1, 2, Complex64::new(0.5, 0.0)),
        (-2, 1, Complex64::new(0.25, 0.0)),
        (2, 3, Complex64::new(0.0, 0.3)),
    ];
    for (m, n, v) in entries {
        c.set(m, n, v).expect("inside the window");
    }
    c
}

/// Registered test functions, looked up by id.
#[derive(Debug, Clone)]
pub struct Registry {
    functions: Vec<NamedTestFunction>,
}

impl Registry {
    pub fn empty() -> Self {
        Registry { functions: Vec::new() }
    }

    pub fn builtin() -> Self {
        let bounded = "bounded on the disk with finitely many angular modes";
        let mut reg = Registry::empty();
        let mut add = |f: NamedTestFunction| reg.register(f).expect("builtin ids are unique");
        add(NamedTestFunction::new(
            "smooth_radial",
            "1 - r^2",
            DiskFunction::radial(RadialProfile::Smooth, |r| 1.0 - r * r),
            vec![Suite::Smooth],
            Membership::everywhere("polynomial in x, y"),
        ));
        add(NamedTestFunction::new(
            "smooth_dipole",
            "x (1 - r^2) = r (1 - r^2) cos(2 pi t)",
            real(|r, t| r * (1.0 - r * r) * cos_turns(t)),
            vec![Suite::Smooth],
            Membership::everywhere("polynomial in x, y"),
        ));
        add(NamedTestFunction::new(
            "smooth_exp",
            "exp(x) (1 - r^2)",
            real(|r, t| (r * cos_turns(t)).exp() * (1.0 - r * r)),
            vec![Suite::Smooth],
            Membership::everywhere("entire in x, y; angular coefficients decay faster than any power"),
        ));
        let coeffs = eigen_sum_coefficients();
        add(NamedTestFunction::new(
            "eigen_sum",
            "five eigenfunctions with |m| <= 2, n <= 3",
            partial_sum(&coeffs, 3, 2).expect("window matches"),
            vec![Suite::Smooth, Suite::EigenSum],
            Membership::everywhere("finite eigenfunction sum"),
        ));
        add(NamedTestFunction::new(
            "wing",
            "r^(-3/2)",
            DiskFunction::radial(RadialProfile::SingularAtZero, |r| r.powf(-1.5)),
            vec![Suite::Singular],
            Membership {
                lp_below: Some(4.0 / 3.0),
                mixed_below: Some(4.0 / 3.0),
                note: "int_0^1 r^(1 - 3p/2) dr < inf iff p < 4/3; radial, so both norms agree".into(),
            },
        ));
        add(NamedTestFunction::new(
            "smooth_cos",
            "(1 - r^2) cos(2 pi t); smooth in (r, t) but discontinuous at the origin",
            real(|r, t| (1.0 - r * r) * cos_turns(t)),
            vec![Suite::BandLimited],
            Membership::everywhere(bounded),
        ));
        add(NamedTestFunction::new(
            "kink_band",
            "(x^2 - y^2) (1 - r^2) |r - 1/2| = r^2 (1 - r^2) |r - 1/2| cos(4 pi t)",
            real(|r, t| r * r * (1.0 - r * r) * (r - 0.5).abs() * (2.0 * cos_turns(t) * cos_turns(t) - 1.0)),
            vec![Suite::BandLimited],
            Membership::everywhere(bounded),
        ));
        add(NamedTestFunction::new(
            "root_band",
            "sqrt(r) (1 - r) e^(2 pi i t)",
            DiskFunction::from_fn(RadialProfile::Smooth, |r, t| {
                Complex64::from_polar(r.sqrt() * (1.0 - r), 2.0 * PI * t)
            }),
            vec![Suite::BandLimited],
            Membership::everywhere(bounded),
        ));
        reg
    }

    /// Adds `f`; ids must be unique.
    pub fn register(&mut self, f: NamedTestFunction) -> Result<()> {
        if self.get(f.id()).is_some() {
            return Err(Error::InvalidParameter(format!("function id `{}` is already registered", f.id())));
        }
        self.functions.push(f);
        Ok(())
    }

    pub fn get(&self, id: &str) -> Option<&NamedTestFunction> {
        self.functions.iter().find(|f| f.id() == id)
    }

    pub fn lookup(&self, id: &str) -> Result<&NamedTestFunction> {
        self.get(id).ok_or_else(|| Error::UnknownFunction(id.into()))
    }

    pub fn iter(&self) -> impl Iterator<Item = &NamedTestFunction> {
        self.functions.iter()
    }

    pub fn suite(&self, s: Suite) -> impl Iterator<Item = &NamedTestFunction> {
        self.functions.iter().filter(move |f| f.in_suite(s))
    }

    pub fn ids(&self) -> Vec<&str> {
        self.functions.iter().map(|f| f.id()).collect()
    }
}

impl Default for Registry {
    fn default() -> Self {
        Self::builtin()
    }
}
