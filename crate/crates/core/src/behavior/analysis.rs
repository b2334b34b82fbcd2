use std::collections::HashMap;

use super::table::{compose, digits, Behavior};
use crate::circuits::BoxFunction;
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Band around the local and Tsirelson thresholds inside which a value
/// resolves to the lower class.
pub const CLASSIFICATION_BAND: f64 = 1e-6;

/// Location of the largest marginal discrepancy found by
/// [`no_signaling_check`].
#[derive(Debug, Clone, PartialEq)]
pub struct SignalingWitness {
    /// Parties whose joint marginal moved.
    pub subset: Vec<usize>,
    /// The two full input tuples that disagree (equal on `subset`).
    pub inputs: (Vec<usize>, Vec<usize>),
    /// Output tuple of `subset` at which the marginals differ most.
    pub marginal_outcome: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct NsReport<T> {
    pub passed: bool,
    pub max_violation: T,
    pub worst_case: Option<SignalingWitness>,
}

/// Checks that, for every proper nonempty party subset, the subset's
/// marginal depends only on the subset's own inputs.
pub fn no_signaling_check<T: Real>(b: &Behavior<T>, tol: T) -> NsReport<T> {
    let n = b.parties();
    let outputs = b.outputs();
    let inputs = b.inputs();
    let cols = b.num_output_tuples();
    let rows = b.num_input_tuples();
    let mut max_violation = T::zero();
    let mut worst: Option<SignalingWitness> = None;

    for mask in 1..(1usize << n) - 1 {
        let subset: Vec<usize> = (0..n).filter(|k| mask >> (n - 1 - k) & 1 == 1).collect();
        let sub_out: Vec<usize> = subset.iter().map(|&k| outputs[k]).collect();
        let sub_in: Vec<usize> = subset.iter().map(|&k| inputs[k]).collect();
        let marg_len: usize = sub_out.iter().product();
        let col_to_marg: Vec<usize> = (0..cols)
            .map(|c| {
                let o = digits(c, outputs);
                compose(&subset.iter().map(|&k| o[k]).collect::<Vec<_>>(), &sub_out)
            })
            .collect();

        let mut reference: HashMap<usize, (usize, Vec<T>)> = HashMap::new();
        for r in 0..rows {
            let x = digits(r, inputs);
            let row = b.row(&x);
            let mut marg = vec![T::zero(); marg_len];
            for (c, &p) in row.iter().enumerate() {
                marg[col_to_marg[c]] += p;
            }
            let key = compose(&subset.iter().map(|&k| x[k]).collect::<Vec<_>>(), &sub_in);
            match reference.get(&key) {
                None => {
                    reference.insert(key, (r, marg));
                }
                Some((r0, m0)) => {
                    for (i, (p, q)) in marg.iter().zip(m0).enumerate() {
                        let d = (*p - *q).abs();
                        if d > max_violation {
                            max_violation = d;
                            worst = Some(SignalingWitness {
                                subset: subset.clone(),
                                inputs: (digits(*r0, inputs), x.clone()),
                                marginal_outcome: digits(i, &sub_out),
                            });
                        }
                    }
                }
            }
        }
    }
    NsReport {
        passed: max_violation <= tol,
        max_violation,
        worst_case: worst,
    }
}

fn require_chsh_shape<T: Real>(b: &Behavior<T>) -> Result<()> {
    if !b.is_binary(2) {
        return Err(Error::arg(format!(
            "CHSH needs two parties with binary inputs and outputs, got inputs {:?} outputs {:?}",
            b.inputs(),
            b.outputs()
        )));
    }
    Ok(())
}

/// `⟨a_x b_y⟩ = Σ ab p(a,b|x,y)` with output index 0 ↦ +1, 1 ↦ −1.
pub fn correlator<T: Real>(b: &Behavior<T>, x: usize, y: usize) -> Result<T> {
    require_chsh_shape(b)?;
    let row = b.row(&[x, y]);
    Ok(row[0] - row[1] - row[2] + row[3])
}

/// Signed `⟨a₀b₀⟩ + ⟨a₀b₁⟩ + ⟨a₁b₀⟩ − ⟨a₁b₁⟩`.
pub fn chsh_expression<T: Real>(b: &Behavior<T>) -> Result<T> {
    Ok(correlator(b, 0, 0)? + correlator(b, 0, 1)? + correlator(b, 1, 0)? - correlator(b, 1, 1)?)
}

/// CHSH score: absolute value of [`chsh_expression`].
pub fn chsh_score<T: Real>(b: &Behavior<T>) -> Result<T> {
    Ok(chsh_expression(b)?.abs())
}

/// Largest absolute CHSH value over the eight local relabelings (the
/// minus sign on any one of the four correlators, both overall signs).
pub fn chsh_max<T: Real>(b: &Behavior<T>) -> Result<T> {
    let e = [
        correlator(b, 0, 0)?,
        correlator(b, 0, 1)?,
        correlator(b, 1, 0)?,
        correlator(b, 1, 1)?,
    ];
    let total: T = e.iter().copied().sum();
    Ok(e
        .iter()
        .map(|&ek| (total - ek - ek).abs())
        .fold(T::zero(), T::max))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Locality {
    Local,
    QuantumCompatible,
    BeyondQuantum,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LocalityClass<T> {
    pub classification: Locality,
    pub chsh_max: T,
}

/// Classifies a no-signaling 2-2-2 behavior by its maximal CHSH value,
/// which decides locality exactly in this scenario.
pub fn locality_classify<T: Real>(b: &Behavior<T>, tol: T) -> Result<LocalityClass<T>> {
    locality_classify_with_band(b, tol, T::lit(CLASSIFICATION_BAND))
}

pub fn locality_classify_with_band<T: Real>(
    b: &Behavior<T>,
    tol: T,
    band: T,
) -> Result<LocalityClass<T>> {
    require_chsh_shape(b)?;
    let ns = no_signaling_check(b, tol);
    if !ns.passed {
        return Err(Error::Precondition(format!(
            "behavior is signaling (max violation {})",
            ns.max_violation
        )));
    }
    let s = chsh_max(b)?;
    let two = T::lit(2.0);
    let classification = if s <= two + band {
        Locality::Local
    } else if s <= two * T::SQRT_2() + band {
        Locality::QuantumCompatible
    } else {
        Locality::BeyondQuantum
    };
    Ok(LocalityClass {
        classification,
        chsh_max: s,
    })
}

/// Every entry within `tol` of the PR box (`½` when `a ⊕ b = xy`).
pub fn is_pr_box<T: Real>(b: &Behavior<T>, tol: T) -> bool {
    let half = T::lit(0.5);
    b.is_binary(2)
        && b.table().iter().enumerate().all(|(i, &p)| {
            // row r = 2x + y, column c = 2a + b
            let (r, c) = (i / 4, i % 4);
            let parity_ok = ((c >> 1) ^ (c & 1)) == ((r >> 1) & r & 1);
            let want = if parity_ok { half } else { T::zero() };
            (p - want).abs() <= tol
        })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoxCheck<T> {
    pub holds: bool,
    /// Largest deviation from the box's `2^{1−n}` / 0 table.
    pub max_deviation: T,
    /// Largest deviation of any strict-subset marginal from uniform.
    pub max_marginal_deviation: T,
}

/// Checks the full-correlation box identity for `f` with the default
/// physics tolerance.
pub fn multiparty_box_check<T: Real>(b: &Behavior<T>, f: BoxFunction) -> Result<BoxCheck<T>> {
    multiparty_box_check_with(b, f, T::physics_tol())
}

pub fn multiparty_box_check_with<T: Real>(
    b: &Behavior<T>,
    f: BoxFunction,
    tol: T,
) -> Result<BoxCheck<T>> {
    let n = b.parties();
    if !b.is_binary(n) {
        return Err(Error::arg("box check needs binary inputs and outputs"));
    }
    f.monomials(n)?;
    let weight = T::one() / T::lit((1u64 << (n - 1)) as f64);
    let reference = Behavior::binary(n, |x, o| {
        let bits: Vec<u8> = x.iter().map(|&v| v as u8).collect();
        let parity = o.iter().fold(0usize, |acc, &v| acc ^ v) as u8;
        if parity == f.eval(&bits).expect("arity checked") {
            weight
        } else {
            T::zero()
        }
    })?;
    let max_deviation = b.max_abs_diff(&reference);

    let mut max_marginal_deviation = T::zero();
    for mask in 1..(1usize << n) - 1 {
        let subset: Vec<usize> = (0..n).filter(|k| mask >> (n - 1 - k) & 1 == 1).collect();
        let expected = T::one() / T::lit((1u64 << subset.len()) as f64);
        for r in 0..b.num_input_tuples() {
            let x = b.input_tuple(r);
            let mut marg = vec![T::zero(); 1 << subset.len()];
            for (c, &p) in b.row(&x).iter().enumerate() {
                let o = b.output_tuple(c);
                let idx = subset.iter().fold(0usize, |acc, &k| (acc << 1) | o[k]);
                marg[idx] += p;
            }
            for m in marg {
                max_marginal_deviation = max_marginal_deviation.max((m - expected).abs());
            }
        }
    }
    Ok(BoxCheck {
        holds: max_deviation <= tol && max_marginal_deviation <= tol,
        max_deviation,
        max_marginal_deviation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn deterministic(fa: impl Fn(usize) -> usize, fb: impl Fn(usize) -> usize) -> Behavior<f64> {
        Behavior::binary(2, |x, o| {
            if o[0] == fa(x[0]) && o[1] == fb(x[1]) {
                1.0
            } else {
                0.0
            }
        })
        .unwrap()
    }

    #[test]
    fn pr_box_scores_four_and_is_no_signaling() {
        let pr = Behavior::<f64>::pr_box();
        assert!((chsh_score(&pr).unwrap() - 4.0).abs() < 1e-15);
        let ns = no_signaling_check(&pr, 1e-12);
        assert!(ns.passed);
        assert_eq!(ns.max_violation, 0.0);
        assert!(ns.worst_case.is_none());
    }

    #[test]
    fn bob_copying_alice_input_signals() {
        let b = Behavior::<f64>::binary(2, |x, o| {
            if o[0] == 0 && o[1] == x[0] {
                1.0
            } else {
                0.0
            }
        })
        .unwrap();
        let ns = no_signaling_check(&b, 1e-12);
        assert!(!ns.passed);
        assert_eq!(ns.max_violation, 1.0);
        let w = ns.worst_case.unwrap();
        assert_eq!(w.subset, vec![1]);
        assert!(matches!(locality_classify(&b, 1e-9), Err(Error::Precondition(_))));
    }

    #[test]
    fn uniform_has_zero_score() {
        assert_eq!(chsh_score(&Behavior::<f64>::uniform(2)).unwrap(), 0.0);
    }

    #[test]
    fn deterministic_vertex_is_local() {
        let b = deterministic(|_| 0, |_| 0);
        let c = locality_classify(&b, 1e-9).unwrap();
        assert_eq!(c.classification, Locality::Local);
        assert!((c.chsh_max - 2.0).abs() < 1e-15);
    }

    #[test]
    fn all_deterministic_vertices_are_local() {
        let fns: [fn(usize) -> usize; 4] = [|_| 0, |_| 1, |x| x, |x| 1 - x];
        for fa in fns {
            for fb in fns {
                let c = locality_classify(&deterministic(fa, fb), 1e-9).unwrap();
                assert_eq!(c.classification, Locality::Local);
                assert!((c.chsh_max - 2.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn pr_relabeled_on_one_input_is_not_pr_but_still_beyond_quantum() {
        let pr = Behavior::<f64>::pr_box();
        let relabeled = pr
            .relabel_outputs(&[vec![false, true], vec![false, false]])
            .unwrap();
        assert!(!is_pr_box(&relabeled, 1e-9));
        let c = locality_classify(&relabeled, 1e-9).unwrap();
        assert_eq!(c.classification, Locality::BeyondQuantum);
        assert!((c.chsh_max - 4.0).abs() < 1e-12);
    }

    #[test]
    fn chsh_rejects_wrong_shape() {
        let tri = Behavior::<f64>::uniform(3);
        assert!(chsh_score(&tri).is_err());
        assert!(!is_pr_box(&tri, 1e-9));
    }

    #[test]
    fn two_party_xyz_box_is_pr() {
        let pr = Behavior::<f64>::pr_box();
        let check = multiparty_box_check(&pr, BoxFunction::Xyz).unwrap();
        assert!(check.holds);
        assert_eq!(check.max_deviation, 0.0);
        assert!(!multiparty_box_check(&Behavior::<f64>::uniform(2), BoxFunction::Xyz).unwrap().holds);
        assert!(multiparty_box_check(&pr, BoxFunction::Svetlichny).is_err());
    }
}
