use crate::error::{Error, Result};

/// Two score lists over the same items, paired by position.
#[derive(Debug, Clone, PartialEq)]
pub struct JointScoreList {
    pairs: Vec<(f64, f64)>,
}

impl JointScoreList {
    pub fn new(x: &[f64], y: &[f64]) -> Result<Self> {
        if x.len() != y.len() {
            return Err(Error::invalid(format!("score lists differ in length: {} vs {}", x.len(), y.len())));
        }
        if x.iter().chain(y).any(|v| v.is_nan()) {
            return Err(Error::invalid("score lists contain NaN"));
        }
        Ok(Self { pairs: x.iter().copied().zip(y.iter().copied()).collect() })
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn pairs(&self) -> &[(f64, f64)] {
        &self.pairs
    }

    /// Kendall's tau-a: (concordant − discordant) / (n(n−1)/2). Tied pairs
    /// count as neither.
    ///
    /// Sorting by (x, y) then merge-sorting y counts the discordant pairs
    /// as inversions, and the tie counts recover the concordant ones, so
    /// this runs in O(n log n).
    pub fn kendall_tau(&self) -> Result<f64> {
        let n = self.pairs.len();
        if n < 2 {
            return Err(Error::invalid("Kendall tau needs at least two items"));
        }
        let mut sorted = self.pairs.clone();
        sorted.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.total_cmp(&b.1)));
        let x_ties = tied_pairs(&sorted, |a, b| a.0 == b.0);
        let joint_ties = tied_pairs(&sorted, |a, b| a.0 == b.0 && a.1 == b.1);

        let mut ys: Vec<f64> = sorted.iter().map(|p| p.1).collect();
        let mut buf = vec![0.0; n];
        let discordant = count_inversions(&mut ys, &mut buf);
        let y_ties = tied_pairs(&ys, |a, b| a == b);

        let total = (n as u64) * (n as u64 - 1) / 2;
        let untied = (total + joint_ties - x_ties - y_ties) as i64;
        let diff = untied - 2 * discordant as i64;
        Ok(diff as f64 / total as f64)
    }
}

/// Pairs inside runs of equal neighbours of a sorted slice.
fn tied_pairs<T>(sorted: &[T], eq: impl Fn(&T, &T) -> bool) -> u64 {
    let mut total = 0;
    let mut run = 1u64;
    for w in sorted.windows(2) {
        if eq(&w[0], &w[1]) {
            run += 1;
        } else {
            total += run * (run - 1) / 2;
            run = 1;
        }
    }
    total + run * (run - 1) / 2
}

/// Sorts `v` ascending and returns the number of pairs i < j with v[i] > v[j].
fn count_inversions(v: &mut [f64], buf: &mut [f64]) -> u64 {
    let n = v.len();
    if n < 2 {
        return 0;
    }
    let mid = n / 2;
    let mut inv = count_inversions(&mut v[..mid], &mut buf[..mid]) + count_inversions(&mut v[mid..], &mut buf[mid..]);
    let (mut i, mut j, mut k) = (0, mid, 0);
    while i < mid && j < n {
        // Equal values are not inversions, so the left side goes first.
        if v[i] <= v[j] {
            buf[k] = v[i];
            i += 1;
        } else {
            buf[k] = v[j];
            inv += (mid - i) as u64;
            j += 1;
        }
        k += 1;
    }
    buf[k..k + mid - i].copy_from_slice(&v[i..mid]);
    k += mid - i;
    buf[k..k + n - j].copy_from_slice(&v[j..n]);
    v.copy_from_slice(&buf[..n]);
    inv
}

/// Tau-a between two score lists.
pub fn kendall_tau(x: &[f64], y: &[f64]) -> Result<f64> {
    JointScoreList::new(x, y)?.kendall_tau()
}

/// Mean of the two per-type correlations.
pub fn average_tau(tau_type1: f64, tau_type2: f64) -> f64 {
    0.5 * (tau_type1 + tau_type2)
}
