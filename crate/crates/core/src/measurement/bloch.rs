use num_complex::Complex;

use crate::error::{Error, Result};
use crate::linalg::{CMatrix, DensityMatrix, Unitary};
use crate::scalar::Real;

/// Measurement outcome of a dichotomic projective measurement.
///
/// Stored as an index: `Plus` (index 0) ↔ +1, `Minus` (index 1) ↔ −1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Outcome {
    Plus,
    Minus,
}

impl Outcome {
    pub const BOTH: [Outcome; 2] = [Outcome::Plus, Outcome::Minus];

    pub fn index(self) -> usize {
        match self {
            Outcome::Plus => 0,
            Outcome::Minus => 1,
        }
    }

    pub fn from_index(i: usize) -> Result<Self> {
        match i {
            0 => Ok(Outcome::Plus),
            1 => Ok(Outcome::Minus),
            _ => Err(Error::arg(format!("outcome index {i} is not 0 or 1"))),
        }
    }

    pub fn from_sign(s: i32) -> Result<Self> {
        match s {
            1 => Ok(Outcome::Plus),
            -1 => Ok(Outcome::Minus),
            _ => Err(Error::arg(format!("outcome {s} is not ±1"))),
        }
    }

    pub fn sign(self) -> i32 {
        match self {
            Outcome::Plus => 1,
            Outcome::Minus => -1,
        }
    }

    pub fn flipped(self) -> Self {
        match self {
            Outcome::Plus => Outcome::Minus,
            Outcome::Minus => Outcome::Plus,
        }
    }
}

/// Measurement direction on the Bloch sphere, canonicalised to
/// `theta ∈ [0, π]`, `phi ∈ [0, 2π)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochDirection<T> {
    theta: T,
    phi: T,
}

impl<T: Real> BlochDirection<T> {
    /// Any finite angles are accepted; `theta` outside `[0, π]` is
    /// reflected back with `phi` shifted by `π`.
    pub fn new(theta: T, phi: T) -> Result<Self> {
        if !theta.is_finite() || !phi.is_finite() {
            return Err(Error::arg("Bloch angles must be finite"));
        }
        let two_pi = T::TAU();
        let mut theta = theta.rem_euclid(&two_pi);
        let mut phi = phi;
        if theta > T::PI() {
            theta = two_pi - theta;
            phi += T::PI();
        }
        Ok(Self {
            theta,
            phi: wrap_phi(phi),
        })
    }

    /// Direction of a nonzero vector.
    pub fn from_vector(v: [T; 3]) -> Result<Self> {
        let norm = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        if !(norm > T::zero()) || !norm.is_finite() {
            return Err(Error::arg("direction vector must be nonzero and finite"));
        }
        let z = (v[2] / norm).max(-T::one()).min(T::one());
        let theta = z.acos();
        let phi = if v[0] == T::zero() && v[1] == T::zero() {
            T::zero()
        } else {
            v[1].atan2(v[0])
        };
        Self::new(theta, phi)
    }

    pub fn z() -> Self {
        Self {
            theta: T::zero(),
            phi: T::zero(),
        }
    }

    pub fn x() -> Self {
        Self {
            theta: T::FRAC_PI_2(),
            phi: T::zero(),
        }
    }

    pub fn y() -> Self {
        Self {
            theta: T::FRAC_PI_2(),
            phi: T::FRAC_PI_2(),
        }
    }

    pub fn theta(&self) -> T {
        self.theta
    }

    pub fn phi(&self) -> T {
        self.phi
    }

    /// `(sinθ cosφ, sinθ sinφ, cosθ)`.
    pub fn unit_vector(&self) -> [T; 3] {
        let (st, ct) = self.theta.sin_cos();
        let (sp, cp) = self.phi.sin_cos();
        [st * cp, st * sp, ct]
    }

    /// Antipodal direction `(π − θ, φ + π)`.
    pub fn negated(&self) -> Self {
        Self {
            theta: T::PI() - self.theta,
            phi: wrap_phi(self.phi + T::PI()),
        }
    }

    /// True at the poles, where `phi` carries no information.
    pub fn is_pole(&self, tol: T) -> bool {
        self.theta.sin().abs() <= tol
    }

    /// Same direction with `phi` set to zero at the poles.
    pub fn canonical(&self, tol: T) -> Self {
        if self.is_pole(tol) {
            let theta = if self.theta < T::FRAC_PI_2() {
                T::zero()
            } else {
                T::PI()
            };
            Self {
                theta,
                phi: T::zero(),
            }
        } else {
            *self
        }
    }

    /// Eigenket of `n̂·σ` with eigenvalue `outcome.sign()`.
    pub fn eigenket(&self, outcome: Outcome) -> [Complex<T>; 2] {
        let half = self.theta / T::lit(2.0);
        let (s, c) = half.sin_cos();
        let phase = Complex::from_polar(T::one(), self.phi);
        let zero = T::zero();
        match outcome {
            Outcome::Plus => [Complex::new(c, zero), phase * s],
            Outcome::Minus => [Complex::new(s, zero), -(phase * c)],
        }
    }

    /// `½(I + o n̂·σ)`.
    pub fn projector(&self, outcome: Outcome) -> DensityMatrix<T> {
        let [nx, ny, nz] = self.unit_vector();
        let o = T::lit(f64::from(outcome.sign()));
        let h = T::lit(0.5);
        let zero = T::zero();
        let m = CMatrix::from_vec(
            2,
            2,
            vec![
                Complex::new(h * (T::one() + o * nz), zero),
                Complex::new(h * o * nx, -h * o * ny),
                Complex::new(h * o * nx, h * o * ny),
                Complex::new(h * (T::one() - o * nz), zero),
            ],
        )
        .expect("2x2");
        DensityMatrix::from_matrix(m).expect("Bloch projector is a pure state")
    }

    /// Unitary whose rows are `⟨n₊|` and `⟨n₋|`: rotates this measurement
    /// onto the computational basis.
    pub fn basis_change(&self) -> Unitary<T> {
        let plus = self.eigenket(Outcome::Plus);
        let minus = self.eigenket(Outcome::Minus);
        let m = CMatrix::from_vec(
            2,
            2,
            vec![plus[0].conj(), plus[1].conj(), minus[0].conj(), minus[1].conj()],
        )
        .expect("2x2");
        Unitary::from_trusted(m)
    }
}

fn wrap_phi<T: Real>(phi: T) -> T {
    let two_pi = T::TAU();
    let w = phi.rem_euclid(&two_pi);
    // rem_euclid can round up to exactly 2π for tiny negative inputs.
    if w >= two_pi {
        T::zero()
    } else {
        w
    }
}

/// Relabeling applied to the Bloch-projector outcome of one input.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Keep,
    Flip,
}

impl Sign {
    pub fn value(self) -> i32 {
        match self {
            Sign::Keep => 1,
            Sign::Flip => -1,
        }
    }
}

/// One party's measurement choice for each of its inputs.
#[derive(Debug, Clone, PartialEq)]
pub struct PartySettings<T> {
    directions: Vec<BlochDirection<T>>,
    signs: Vec<Sign>,
}

impl<T: Real> PartySettings<T> {
    pub fn new(directions: Vec<BlochDirection<T>>, signs: Vec<Sign>) -> Result<Self> {
        if directions.is_empty() {
            return Err(Error::arg("a party needs at least one input"));
        }
        if directions.len() != signs.len() {
            return Err(Error::arg("one outcome sign per input is required"));
        }
        Ok(Self { directions, signs })
    }

    /// Standard outcome labeling for every input.
    pub fn unsigned(directions: Vec<BlochDirection<T>>) -> Result<Self> {
        let signs = vec![Sign::Keep; directions.len()];
        Self::new(directions, signs)
    }

    /// Both inputs measured along the same direction.
    pub fn same_for_both(dir: BlochDirection<T>) -> Self {
        Self::unsigned(vec![dir, dir]).expect("two inputs")
    }

    pub fn from_angles(angles: &[(T, T)]) -> Result<Self> {
        Self::unsigned(
            angles
                .iter()
                .map(|&(t, p)| BlochDirection::new(t, p))
                .collect::<Result<_>>()?,
        )
    }

    pub fn inputs(&self) -> usize {
        self.directions.len()
    }

    pub fn direction(&self, input: usize) -> BlochDirection<T> {
        self.directions[input]
    }

    pub fn sign(&self, input: usize) -> Sign {
        self.signs[input]
    }

    pub fn directions(&self) -> &[BlochDirection<T>] {
        &self.directions
    }

    /// Direction whose `+1` projector the reported `+1` outcome uses.
    pub fn effective_direction(&self, input: usize) -> BlochDirection<T> {
        match self.signs[input] {
            Sign::Keep => self.directions[input],
            Sign::Flip => self.directions[input].negated(),
        }
    }

    pub fn effective_vector(&self, input: usize) -> [T; 3] {
        self.effective_direction(input).unit_vector()
    }

    pub fn projector(&self, input: usize, outcome: Outcome) -> DensityMatrix<T> {
        let o = match self.signs[input] {
            Sign::Keep => outcome,
            Sign::Flip => outcome.flipped(),
        };
        self.directions[input].projector(o)
    }

    pub(crate) fn check_input(&self, input: usize) -> Result<()> {
        if input >= self.directions.len() {
            return Err(Error::arg(format!(
                "input {input} has no measurement setting ({} configured)",
                self.directions.len()
            )));
        }
        Ok(())
    }
}
