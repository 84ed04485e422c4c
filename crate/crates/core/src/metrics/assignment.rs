//! Linear assignment by the O(p³) shortest augmenting path method with
//! row/column potentials.

use crate::matrix::Matrix;

/// Minimum-cost perfect assignment on a square cost matrix.
///
/// Returns `col_to_row` with `col_to_row[j]` the row assigned to column `j`.
pub fn min_cost_assignment(cost: &Matrix) -> Vec<usize> {
    assert!(cost.is_square(), "assignment needs a square cost matrix");
    let n = cost.rows();
    if n == 0 {
        return Vec::new();
    }
    // 1-based internally; index 0 is the virtual start column.
    let mut u = vec![0.0f64; n + 1];
    let mut v = vec![0.0f64; n + 1];
    let mut row_of = vec![0usize; n + 1];
    let mut way = vec![0usize; n + 1];
    for i in 1..=n {
        row_of[0] = i;
        let mut j0 = 0usize;
        let mut minv = vec![f64::INFINITY; n + 1];
        let mut used = vec![false; n + 1];
        loop {
            used[j0] = true;
            let i0 = row_of[j0];
            let mut delta = f64::INFINITY;
            let mut j1 = 0usize;
            for j in 1..=n {
                if used[j] {
                    continue;
                }
                let cur = cost[(i0 - 1, j - 1)] - u[i0] - v[j];
                if cur < minv[j] {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if minv[j] < delta {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for j in 0..=n {
                if used[j] {
                    u[row_of[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if row_of[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            row_of[j0] = row_of[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }
    (1..=n).map(|j| row_of[j] - 1).collect()
}

/// Maximum-weight perfect assignment; same output convention.
pub fn max_weight_assignment(weight: &Matrix) -> Vec<usize> {
    min_cost_assignment(&weight.scale(-1.0))
}
