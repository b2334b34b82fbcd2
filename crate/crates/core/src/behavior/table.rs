use serde_json::Value;

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Conditional probability table `p(outputs | inputs)` for n parties.
///
/// Storage is row-major: the input tuple (party 0 most significant) selects
/// a row, the output tuple (same order) a column. Outputs are indices;
/// index 0 stands for the ±1 value +1 and index 1 for −1.
#[derive(Debug, Clone, PartialEq)]
pub struct Behavior<T> {
    inputs: Vec<usize>,
    outputs: Vec<usize>,
    table: Vec<T>,
}

/// Mixed-radix decomposition of `index`, most significant digit first.
pub(crate) fn digits(mut index: usize, radices: &[usize]) -> Vec<usize> {
    let mut out = vec![0; radices.len()];
    for (slot, &r) in out.iter_mut().zip(radices).rev() {
        *slot = index % r;
        index /= r;
    }
    out
}

pub(crate) fn compose(digits: &[usize], radices: &[usize]) -> usize {
    digits.iter().zip(radices).fold(0, |acc, (&d, &r)| acc * r + d)
}

impl<T: Real> Behavior<T> {
    /// Validates the table: entries down to `-algebraic_tol` are clamped to
    /// zero and every row must sum to one within `physics_tol`.
    pub fn new(inputs: Vec<usize>, outputs: Vec<usize>, mut table: Vec<T>) -> Result<Self> {
        if inputs.len() < 2 || inputs.len() != outputs.len() {
            return Err(Error::arg(
                "a behavior needs at least two parties with input and output cardinalities each",
            ));
        }
        if inputs.iter().chain(&outputs).any(|&c| c == 0) {
            return Err(Error::arg("cardinalities must be positive"));
        }
        let rows: usize = inputs.iter().product();
        let cols: usize = outputs.iter().product();
        if table.len() != rows * cols {
            return Err(Error::arg(format!(
                "table has {} entries, expected {}",
                table.len(),
                rows * cols
            )));
        }
        for p in table.iter_mut() {
            if !p.is_finite() || *p < -T::algebraic_tol() {
                return Err(Error::arg(format!("invalid probability {p}")));
            }
            *p = p.max(T::zero());
        }
        for r in 0..rows {
            let s: T = table[r * cols..(r + 1) * cols].iter().copied().sum();
            if (s - T::one()).abs() > T::physics_tol() {
                return Err(Error::arg(format!(
                    "row for inputs {:?} sums to {s}",
                    digits(r, &inputs)
                )));
            }
        }
        Ok(Self {
            inputs,
            outputs,
            table,
        })
    }

    /// Builds a behavior from `p(inputs, outputs)`.
    pub fn from_fn(
        inputs: Vec<usize>,
        outputs: Vec<usize>,
        mut p: impl FnMut(&[usize], &[usize]) -> T,
    ) -> Result<Self> {
        let rows: usize = inputs.iter().product();
        let cols: usize = outputs.iter().product();
        let mut table = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            let x = digits(r, &inputs);
            for c in 0..cols {
                table.push(p(&x, &digits(c, &outputs)));
            }
        }
        Self::new(inputs, outputs, table)
    }

    /// Binary-input binary-output scenario with `parties` parties.
    pub fn binary(parties: usize, f: impl FnMut(&[usize], &[usize]) -> T) -> Result<Self> {
        Self::from_fn(vec![2; parties], vec![2; parties], f)
    }

    /// The PR box: `½` when `a ⊕ b = x·y`, else 0.
    pub fn pr_box() -> Self {
        Self::binary(2, |x, o| {
            if (o[0] ^ o[1]) == (x[0] & x[1]) {
                T::lit(0.5)
            } else {
                T::zero()
            }
        })
        .expect("PR box is a valid behavior")
    }

    /// Every outcome equally likely for every input.
    pub fn uniform(parties: usize) -> Self {
        let w = T::one() / T::lit((1u64 << parties) as f64);
        Self::binary(parties, |_, _| w).expect("uniform behavior is valid")
    }

    pub fn parties(&self) -> usize {
        self.inputs.len()
    }

    pub fn inputs(&self) -> &[usize] {
        &self.inputs
    }

    pub fn outputs(&self) -> &[usize] {
        &self.outputs
    }

    pub fn table(&self) -> &[T] {
        &self.table
    }

    pub fn num_input_tuples(&self) -> usize {
        self.inputs.iter().product()
    }

    pub fn num_output_tuples(&self) -> usize {
        self.outputs.iter().product()
    }

    pub fn input_tuple(&self, row: usize) -> Vec<usize> {
        digits(row, &self.inputs)
    }

    pub fn output_tuple(&self, col: usize) -> Vec<usize> {
        digits(col, &self.outputs)
    }

    /// Outcome distribution for one input tuple.
    pub fn row(&self, inputs: &[usize]) -> &[T] {
        let cols = self.num_output_tuples();
        let r = compose(inputs, &self.inputs);
        &self.table[r * cols..(r + 1) * cols]
    }

    pub fn p(&self, inputs: &[usize], outputs: &[usize]) -> T {
        self.row(inputs)[compose(outputs, &self.outputs)]
    }

    /// True for the 2-input 2-output scenario of `parties` parties.
    pub fn is_binary(&self, parties: usize) -> bool {
        self.parties() == parties
            && self.inputs.iter().all(|&c| c == 2)
            && self.outputs.iter().all(|&c| c == 2)
    }

    pub fn max_abs_diff(&self, other: &Self) -> T {
        if self.inputs != other.inputs || self.outputs != other.outputs {
            return T::infinity();
        }
        self.table
            .iter()
            .zip(&other.table)
            .map(|(a, b)| (*a - *b).abs())
            .fold(T::zero(), T::max)
    }

    /// Convex combination `w·self + (1−w)·other`.
    pub fn mix(&self, other: &Self, w: T) -> Result<Self> {
        if self.inputs != other.inputs || self.outputs != other.outputs {
            return Err(Error::arg("cannot mix behaviors of different scenarios"));
        }
        Self::new(
            self.inputs.clone(),
            self.outputs.clone(),
            self.table
                .iter()
                .zip(&other.table)
                .map(|(a, b)| w * *a + (T::one() - w) * *b)
                .collect(),
        )
    }

    /// Applies per-party output permutations `relabel[party][input]`:
    /// when `true`, that party's binary output is flipped for that input.
    pub fn relabel_outputs(&self, flips: &[Vec<bool>]) -> Result<Self> {
        if !self.outputs.iter().all(|&c| c == 2) || flips.len() != self.parties() {
            return Err(Error::arg("relabeling needs binary outputs and one entry per party"));
        }
        Self::from_fn(self.inputs.clone(), self.outputs.clone(), |x, o| {
            let src: Vec<usize> = o
                .iter()
                .enumerate()
                .map(|(k, &ok)| if flips[k][x[k]] { ok ^ 1 } else { ok })
                .collect();
            self.p(x, &src)
        })
    }

    /// JSON form: `{"parties", "inputs", "outputs", "table"}` where `table`
    /// nests one array level per input and then per output, in party order.
    /// `map` post-processes each probability (e.g. rounding).
    pub fn to_json_with(&self, map: impl Fn(f64) -> f64) -> Value {
        let dims: Vec<usize> = self.inputs.iter().chain(&self.outputs).copied().collect();
        let flat: Vec<f64> = self.table.iter().map(|p| map(p.as_f64())).collect();
        serde_json::json!({
            "parties": self.parties(),
            "inputs": self.inputs,
            "outputs": self.outputs,
            "table": nest(&flat, &dims),
        })
    }

    pub fn to_json(&self) -> Value {
        self.to_json_with(|v| v)
    }

    pub fn from_json(value: &Value) -> Result<Self> {
        let field = |k: &str| {
            value
                .get(k)
                .ok_or_else(|| Error::arg(format!("behavior JSON lacks {k:?}")))
        };
        let cards = |k: &str| -> Result<Vec<usize>> {
            field(k)?
                .as_array()
                .ok_or_else(|| Error::arg(format!("{k:?} must be an array")))?
                .iter()
                .map(|v| {
                    v.as_u64()
                        .map(|u| u as usize)
                        .ok_or_else(|| Error::arg(format!("{k:?} entries must be integers")))
                })
                .collect()
        };
        let parties = field("parties")?
            .as_u64()
            .ok_or_else(|| Error::arg("\"parties\" must be an integer"))? as usize;
        let inputs = cards("inputs")?;
        let outputs = cards("outputs")?;
        if inputs.len() != parties || outputs.len() != parties {
            return Err(Error::arg("cardinality arrays disagree with \"parties\""));
        }
        let dims: Vec<usize> = inputs.iter().chain(&outputs).copied().collect();
        let mut flat = Vec::new();
        flatten(field("table")?, &dims, &mut flat)?;
        Self::new(inputs, outputs, flat.into_iter().map(T::lit).collect())
    }
}

fn nest(flat: &[f64], dims: &[usize]) -> Value {
    match dims.split_first() {
        None => serde_json::json!(flat[0]),
        Some((&d, rest)) => {
            let stride = flat.len() / d;
            Value::Array(
                (0..d)
                    .map(|i| nest(&flat[i * stride..(i + 1) * stride], rest))
                    .collect(),
            )
        }
    }
}

fn flatten(v: &Value, dims: &[usize], out: &mut Vec<f64>) -> Result<()> {
    match dims.split_first() {
        None => {
            out.push(
                v.as_f64()
                    .ok_or_else(|| Error::arg("table leaves must be numbers"))?,
            );
            Ok(())
        }
        Some((&d, rest)) => {
            let arr = v
                .as_array()
                .filter(|a| a.len() == d)
                .ok_or_else(|| Error::arg(format!("table level must be an array of length {d}")))?;
            arr.iter().try_for_each(|item| flatten(item, rest, out))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mixed_radix_round_trip() {
        let r = [2, 3, 2];
        for i in 0..12 {
            assert_eq!(compose(&digits(i, &r), &r), i);
        }
        assert_eq!(digits(5, &[2, 2, 2]), vec![1, 0, 1]);
    }

    #[test]
    fn rejects_bad_rows() {
        assert!(Behavior::<f64>::binary(2, |_, _| 0.3).is_err());
        assert!(Behavior::<f64>::new(vec![2, 2], vec![2, 2], vec![0.25; 15]).is_err());
        assert!(Behavior::<f64>::binary(2, |_, o| if o == [0, 0] { 1.1 } else { -0.1 / 3.0 }).is_err());
    }

    #[test]
    fn clamps_tiny_negative_entries() {
        let b = Behavior::<f64>::binary(2, |_, o| if o == [0, 0] { 0.5 + 1e-13 } else if o == [1, 1] { 0.5 } else if o == [0, 1] { -1e-13 } else { 0.0 }).unwrap();
        assert_eq!(b.p(&[0, 0], &[0, 1]), 0.0);
    }

    #[test]
    fn json_nests_inputs_then_outputs() {
        let pr = Behavior::<f64>::pr_box();
        let v = pr.to_json();
        assert_eq!(v["parties"], 2);
        assert_eq!(v["table"][1][1][0][1], 0.5);
        assert_eq!(v["table"][1][1][0][0], 0.0);
        assert_eq!(Behavior::<f64>::from_json(&v).unwrap(), pr);
        assert!(Behavior::<f64>::from_json(&serde_json::json!({"parties": 2})).is_err());
    }
}
