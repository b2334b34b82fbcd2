//! Measurement bases under which the bipartite oracles reproduce the PR
//! box exactly: closed-form families, their trigonometric residuals, and
//! a brute-force grid search that rediscovers them independently.

use std::fmt;

use rayon::prelude::*;

use crate::behavior::{is_pr_box, Behavior};
use crate::circuits::{run_oracle, OracleSpec, PrimedState};
use crate::error::{Error, Result};
use crate::linalg::Limits;
use crate::measurement::{
    clamp_probability, outcome_distribution, BlochDirection, Measurable, PartySettings,
};
use crate::scalar::Real;

/// Members sampled per family when certifying [`enumerate_pr_families`].
pub const CERTIFICATION_SAMPLES: usize = 24;

/// Default number of points per angle in [`grid_search`].
pub const DEFAULT_GRID_POINTS: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PrBasisKind {
    /// All four directions at the same pole; azimuths free.
    Computational,
    /// All four polar angles equal to a free `k`; Alice at `φ = π/2`,
    /// Bob at `φ = 3π/2`.
    NovelQuantum,
    /// Mirror image of [`PrBasisKind::NovelQuantum`]: Alice at
    /// `φ = 3π/2`, Bob at `φ = π/2`. Solves the same two conditions
    /// (`2φ_a ≡ π mod 2π` has two roots) but is not among the listed
    /// families; the grid search rediscovers it.
    MirroredNovel,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrBasisFamily {
    kind: PrBasisKind,
}

impl PrBasisFamily {
    pub const COMPUTATIONAL: Self = Self {
        kind: PrBasisKind::Computational,
    };
    pub const NOVEL_QUANTUM: Self = Self {
        kind: PrBasisKind::NovelQuantum,
    };
    pub const MIRRORED_NOVEL: Self = Self {
        kind: PrBasisKind::MirroredNovel,
    };

    pub fn kind(&self) -> PrBasisKind {
        self.kind
    }

    /// Human-readable parameter ranges.
    pub fn describe(&self) -> &'static str {
        match self.kind {
            PrBasisKind::Computational => {
                "theta_a0=theta_a1=theta_b0=theta_b1 in {0,pi}; phi_a0,phi_a1,phi_b0,phi_b1 free"
            }
            PrBasisKind::NovelQuantum => {
                "theta_a0=theta_a1=theta_b0=theta_b1=k in [0,pi]; phi_a0=phi_a1=pi/2; phi_b0=phi_b1=3pi/2"
            }
            PrBasisKind::MirroredNovel => {
                "theta_a0=theta_a1=theta_b0=theta_b1=k in [0,pi]; phi_a0=phi_a1=3pi/2; phi_b0=phi_b1=pi/2"
            }
        }
    }

    /// The `i`-th of `count` deterministic members, spread across the
    /// family's free parameters.
    pub fn sample<T: Real>(&self, i: usize, count: usize) -> (PartySettings<T>, PartySettings<T>) {
        let dir = |t: f64, p: f64| BlochDirection::new(T::lit(t), T::lit(p)).expect("finite angles");
        match self.kind {
            PrBasisKind::Computational => {
                let theta = if i % 2 == 0 { 0.0 } else { std::f64::consts::PI };
                // Golden-ratio offsets make the free azimuths differ per input.
                let tau = std::f64::consts::TAU;
                let g = 0.618_033_988_749_894_9;
                let phi = |j: usize| ((i * 4 + j) as f64 * g).fract() * tau;
                let alice = PartySettings::unsigned(vec![dir(theta, phi(0)), dir(theta, phi(1))]);
                let bob = PartySettings::unsigned(vec![dir(theta, phi(2)), dir(theta, phi(3))]);
                (alice.expect("two inputs"), bob.expect("two inputs"))
            }
            PrBasisKind::NovelQuantum | PrBasisKind::MirroredNovel => {
                let k = if count <= 1 {
                    std::f64::consts::FRAC_PI_2
                } else {
                    std::f64::consts::PI * i as f64 / (count - 1) as f64
                };
                let (a, b) = novel_member(T::lit(k));
                if self.kind == PrBasisKind::MirroredNovel {
                    (b, a)
                } else {
                    (a, b)
                }
            }
        }
    }

    /// Whether `theta` (shared) and the two azimuths lie on this family.
    pub fn contains<T: Real>(&self, theta: T, phi_a: T, phi_b: T, tol: T) -> bool {
        let at_pole = theta.sin().abs() <= tol;
        match self.kind {
            PrBasisKind::Computational => at_pole,
            PrBasisKind::NovelQuantum => {
                at_pole
                    || (angle_distance(phi_a, T::FRAC_PI_2()) <= tol
                        && angle_distance(phi_b, T::lit(1.5) * T::PI()) <= tol)
            }
            PrBasisKind::MirroredNovel => {
                at_pole
                    || (angle_distance(phi_a, T::lit(1.5) * T::PI()) <= tol
                        && angle_distance(phi_b, T::FRAC_PI_2()) <= tol)
            }
        }
    }
}

impl fmt::Display for PrBasisFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            PrBasisKind::Computational => write!(f, "computational"),
            PrBasisKind::NovelQuantum => write!(f, "novel-quantum"),
            PrBasisKind::MirroredNovel => write!(f, "mirrored-novel"),
        }
    }
}

fn angle_distance<T: Real>(a: T, b: T) -> T {
    let d = (a - b).rem_euclid(&T::TAU());
    d.min(T::TAU() - d)
}

/// NovelQuantum member with shared polar angle `k`.
pub fn novel_member<T: Real>(k: T) -> (PartySettings<T>, PartySettings<T>) {
    let a = BlochDirection::new(k, T::FRAC_PI_2()).expect("finite angles");
    let b = BlochDirection::new(k, T::lit(1.5) * T::PI()).expect("finite angles");
    (PartySettings::same_for_both(a), PartySettings::same_for_both(b))
}

fn require_bipartite(spec: &OracleSpec) -> Result<()> {
    if !spec.is_bipartite() {
        return Err(Error::arg(format!("PR bases are defined for bipartite oracles, got {spec}")));
    }
    Ok(())
}

fn require_two_inputs<T: Real>(s: &PartySettings<T>) -> Result<()> {
    if s.inputs() != 2 {
        return Err(Error::arg("each party needs exactly two settings"));
    }
    Ok(())
}

/// True iff the oracle measured with these settings is the PR box
/// entrywise within `tol`.
pub fn pr_basis_check<T: Real>(
    spec: &OracleSpec,
    alice: &PartySettings<T>,
    bob: &PartySettings<T>,
    tol: T,
) -> Result<bool> {
    let states = primed_states(spec)?;
    Ok(is_pr_box(&behavior_from_cached(&states, alice, bob)?, tol))
}

fn primed_states<T: Real>(spec: &OracleSpec) -> Result<Vec<PrimedState<T>>> {
    require_bipartite(spec)?;
    let limits = Limits::default();
    (0..4u8)
        .map(|r| run_oracle(spec, &[r >> 1, r & 1], &limits))
        .collect()
}

fn behavior_from_cached<T: Real>(
    states: &[PrimedState<T>],
    alice: &PartySettings<T>,
    bob: &PartySettings<T>,
) -> Result<Behavior<T>> {
    require_two_inputs(alice)?;
    require_two_inputs(bob)?;
    let settings = [alice.clone(), bob.clone()];
    let mut table = Vec::with_capacity(16);
    for (r, state) in states.iter().enumerate() {
        table.extend(outcome_distribution(state, &settings, &[r >> 1, r & 1])?);
    }
    Behavior::new(vec![2, 2], vec![2, 2], table)
}

/// Left-minus-right residuals of the two trigonometric PR conditions.
///
/// `r1[k]` is `sinθa sinθb cos(φa + φb) + cosθa cosθb − 1` for
/// `(x, y) = (0,0), (0,1), (1,0)`; `r2` is
/// `sinθa sinθb cos(φb − φa) − cosθa cosθb + 1` for `(1,1)`. Angles are
/// the effective directions (after any outcome-sign flip).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Residuals<T> {
    pub r1: [T; 3],
    pub r2: T,
}

impl<T: Real> Residuals<T> {
    /// The first condition's residual with the largest magnitude.
    pub fn worst_r1(&self) -> T {
        self.r1
            .iter()
            .copied()
            .fold(T::zero(), |acc, r| if r.abs() > acc.abs() { r } else { acc })
    }

    pub fn max_abs(&self) -> T {
        self.worst_r1().abs().max(self.r2.abs())
    }

    pub fn vanish(&self, tol: T) -> bool {
        self.max_abs() <= tol
    }
}

pub fn residuals<T: Real>(alice: &PartySettings<T>, bob: &PartySettings<T>) -> Result<Residuals<T>> {
    require_two_inputs(alice)?;
    require_two_inputs(bob)?;
    let parts = |x: usize, y: usize| {
        let a = alice.effective_direction(x);
        let b = bob.effective_direction(y);
        (
            a.theta().sin() * b.theta().sin(),
            a.theta().cos() * b.theta().cos(),
            a.phi(),
            b.phi(),
        )
    };
    let first = |x, y| {
        let (ss, cc, pa, pb) = parts(x, y);
        ss * (pa + pb).cos() + cc - T::one()
    };
    let (ss, cc, pa, pb) = parts(1, 1);
    Ok(Residuals {
        r1: [first(0, 0), first(0, 1), first(1, 0)],
        r2: ss * (pb - pa).cos() - cc + T::one(),
    })
}

fn listed_families(spec: &OracleSpec) -> Vec<PrBasisFamily> {
    if spec.is_quantum() {
        vec![PrBasisFamily::COMPUTATIONAL, PrBasisFamily::NOVEL_QUANTUM]
    } else {
        vec![PrBasisFamily::COMPUTATIONAL]
    }
}

/// Closed-form PR families of a bipartite oracle, each certified by
/// [`pr_basis_check`] on [`CERTIFICATION_SAMPLES`] members.
///
/// Only the tabulated families are returned; see
/// [`PrBasisKind::MirroredNovel`] for the additional quantum solution.
pub fn enumerate_pr_families(spec: &OracleSpec) -> Result<Vec<PrBasisFamily>> {
    require_bipartite(spec)?;
    let families = listed_families(spec);
    certify(spec, &families)?;
    Ok(families)
}

/// Checks [`CERTIFICATION_SAMPLES`] members of each family.
pub fn certify(spec: &OracleSpec, families: &[PrBasisFamily]) -> Result<()> {
    let states = primed_states::<f64>(spec)?;
    let tol = f64::physics_tol();
    for family in families {
        for i in 0..CERTIFICATION_SAMPLES {
            let (alice, bob) = family.sample::<f64>(i, CERTIFICATION_SAMPLES);
            if !is_pr_box(&behavior_from_cached(&states, &alice, &bob)?, tol) {
                return Err(Error::Consistency(format!(
                    "{family} member {i} does not reproduce the PR box on {spec}"
                )));
            }
        }
    }
    Ok(())
}

/// A grid point `(θ shared by all four directions, φ_a for both of
/// Alice's inputs, φ_b for both of Bob's)` at which the oracle is a PR box.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridHit<T> {
    pub theta: T,
    pub phi_a: T,
    pub phi_b: T,
    /// First known family containing the point, listed families first.
    pub family: Option<PrBasisKind>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GridReport<T> {
    pub points_per_angle: usize,
    pub points_evaluated: usize,
    /// Families [`enumerate_pr_families`] returns for this oracle.
    pub listed: Vec<PrBasisFamily>,
    /// Canonicalized, deduplicated hits in grid order.
    pub hits: Vec<GridHit<T>>,
}

impl<T> GridReport<T> {
    /// Hits lying on none of the listed families.
    pub fn off_family(&self) -> impl Iterator<Item = &GridHit<T>> {
        self.hits
            .iter()
            .filter(|h| !self.listed.iter().any(|f| Some(f.kind()) == h.family))
    }
}

/// Polar grid `θ_i = iπ/(n−1)` (both poles included) and azimuth grid
/// `φ_j = 2πj/n`.
pub fn grid_axes<T: Real>(n: usize) -> Result<(Vec<T>, Vec<T>)> {
    if n < 2 {
        return Err(Error::arg("grid needs at least two points per angle"));
    }
    let thetas = (0..n)
        .map(|i| T::PI() * (T::lit(i as f64) / T::lit((n - 1) as f64)))
        .collect();
    let phis = (0..n).map(|j| T::TAU() * T::lit(j as f64) / T::lit(n as f64)).collect();
    Ok((thetas, phis))
}

/// Evaluates the oracle's behavior at every grid point and reports where
/// it is a PR box within `tol`. Pole hits are canonicalized to `φ = 0`
/// and deduplicated.
pub fn grid_search<T: Real>(spec: &OracleSpec, points: usize, tol: T) -> Result<GridReport<T>> {
    let (thetas, phis) = grid_axes::<T>(points)?;
    let states = primed_states::<T>(spec)?;
    let listed = listed_families(spec);
    let mut families = listed.clone();
    if spec.is_quantum() {
        families.push(PrBasisFamily::MIRRORED_NOVEL);
    }
    let member_tol = T::physics_tol();

    // Alice's rotation is applied once per (θ, φ_a); only Bob's qubit is
    // rotated in the innermost loop.
    let per_theta: Vec<Vec<GridHit<T>>> = thetas
        .par_iter()
        .map(|&theta| -> Result<Vec<GridHit<T>>> {
            let mut hits = Vec::new();
            for &phi_a in &phis {
                let a = BlochDirection::new(theta, phi_a)?;
                let rotated: Vec<PrimedState<T>> = states
                    .iter()
                    .map(|s| s.rotate_qubit(0, &a))
                    .collect::<Result<_>>()?;
                for &phi_b in &phis {
                    let b = BlochDirection::new(theta, phi_b)?;
                    let mut table = Vec::with_capacity(16);
                    for s in &rotated {
                        for p in s.rotate_qubit(1, &b)?.computational_probabilities() {
                            table.push(clamp_probability(p)?);
                        }
                    }
                    if is_pr_box(&Behavior::new(vec![2, 2], vec![2, 2], table)?, tol) {
                        hits.push(canonical_hit(theta, phi_a, phi_b, &families, member_tol));
                    }
                }
            }
            Ok(hits)
        })
        .collect::<Result<_>>()?;

    let mut hits: Vec<GridHit<T>> = Vec::new();
    for hit in per_theta.into_iter().flatten() {
        if !hits.contains(&hit) {
            hits.push(hit);
        }
    }
    Ok(GridReport {
        points_per_angle: points,
        points_evaluated: points * points * points,
        listed,
        hits,
    })
}

fn canonical_hit<T: Real>(
    theta: T,
    phi_a: T,
    phi_b: T,
    families: &[PrBasisFamily],
    tol: T,
) -> GridHit<T> {
    let (theta, phi_a, phi_b) = if theta.sin().abs() <= tol {
        let pole = if theta < T::FRAC_PI_2() { T::zero() } else { T::PI() };
        (pole, T::zero(), T::zero())
    } else {
        (theta, phi_a, phi_b)
    };
    let family = families
        .iter()
        .find(|f| f.contains(theta, phi_a, phi_b, tol))
        .map(|f| f.kind());
    GridHit {
        theta,
        phi_a,
        phi_b,
        family,
    }
}
