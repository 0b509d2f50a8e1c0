//! Maximum-weight bipartite matching via shortest augmenting paths with
//! potentials, O(n³) in the smaller side of the rectangle.
//!
//! Weights may be negative; negative pairs never improve a matching, so they
//! are clamped for the search and dropped from the result. Ties between
//! optimal matchings are broken deterministically: pairs the caller marks as
//! preferred win first; where optima differ in which rows or columns are
//! matched at all, smaller indices win; any tie left after that falls to the
//! fixed search order. The preferences are encoded as bonuses too small to
//! disturb the true weights.

const INF: i128 = i128::MAX / 4;

/// Returns a matching of maximum total weight, keeping only pairs of
/// strictly positive weight, as `(row, column)` pairs sorted by row.
pub fn max_weight_matching(weights: &[Vec<i64>]) -> Vec<(usize, usize)> {
    max_weight_matching_with(weights, |_, _| false)
}

/// Like [`max_weight_matching`], with a tie-breaking predicate: among
/// matchings of equal weight, those containing more preferred pairs win.
pub fn max_weight_matching_with(
    weights: &[Vec<i64>],
    prefer: impl Fn(usize, usize) -> bool,
) -> Vec<(usize, usize)> {
    let rows = weights.len();
    let cols = weights.first().map_or(0, Vec::len);
    if rows == 0 || cols == 0 {
        return Vec::new();
    }
    assert!(
        weights.iter().all(|row| row.len() == cols),
        "weight matrix must be rectangular"
    );

    // Tie-break bonuses: one unit of preference outweighs every possible sum
    // of index bonuses, and one unit of real weight outweighs every possible
    // sum of bonuses.
    let (r, c) = (rows as i128, cols as i128);
    let idx_sum_bound = r.min(c) * (r * (c + 1) + c);
    let prefer_unit = idx_sum_bound + 1;
    let weight_unit = r.min(c) * prefer_unit + idx_sum_bound + 1;

    let transposed = rows > cols;
    let (sr, sc) = if transposed {
        (cols, rows)
    } else {
        (rows, cols)
    };
    let mut scaled = vec![vec![0i128; sc]; sr];
    for (i, row) in scaled.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            let (oi, oj) = if transposed { (j, i) } else { (i, j) };
            let base = i128::from(weights[oi][oj].max(0));
            let idx_bonus = (r - oi as i128) * (c + 1) + (c - oj as i128);
            let eq_bonus = if prefer(oi, oj) { prefer_unit } else { 0 };
            *cell = base * weight_unit + eq_bonus + idx_bonus;
        }
    }

    let row_to_col = assign_rows(&scaled);
    let mut pairs: Vec<(usize, usize)> = row_to_col
        .iter()
        .enumerate()
        .map(|(i, &j)| if transposed { (j, i) } else { (i, j) })
        .filter(|&(oi, oj)| weights[oi][oj] > 0)
        .collect();
    pairs.sort_unstable();
    pairs
}

/// Minimum-cost assignment of every row to a distinct column (requires
/// rows ≤ columns), maximizing the scaled weights by negating them.
fn assign_rows(scaled: &[Vec<i128>]) -> Vec<usize> {
    let rows = scaled.len();
    let cols = scaled[0].len();
    debug_assert!(rows <= cols);

    // 1-based arrays; matched_row[j] is the row matched to column j, 0 if none.
    let mut row_potential = vec![0i128; rows + 1];
    let mut col_potential = vec![0i128; cols + 1];
    let mut matched_row = vec![0usize; cols + 1];
    let mut way = vec![0usize; cols + 1];

    for i in 1..=rows {
        matched_row[0] = i;
        let mut j0 = 0usize;
        let mut min_slack = vec![INF; cols + 1];
        let mut used = vec![false; cols + 1];
        loop {
            used[j0] = true;
            let i0 = matched_row[j0];
            let mut delta = INF;
            let mut j1 = 0usize;
            for j in 1..=cols {
                if used[j] {
                    continue;
                }
                let cost = -scaled[i0 - 1][j - 1];
                let slack = cost - row_potential[i0] - col_potential[j];
                if slack < min_slack[j] {
                    min_slack[j] = slack;
                    way[j] = j0;
                }
                if min_slack[j] < delta {
                    delta = min_slack[j];
                    j1 = j;
                }
            }
            debug_assert!(delta < INF, "no augmenting column found");
            for j in 0..=cols {
                if used[j] {
                    row_potential[matched_row[j]] += delta;
                    col_potential[j] -= delta;
                } else {
                    min_slack[j] -= delta;
                }
            }
            j0 = j1;
            if matched_row[j0] == 0 {
                break;
            }
        }
        // augment along the recorded path
        loop {
            let j1 = way[j0];
            matched_row[j0] = matched_row[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }

    let mut row_to_col = vec![usize::MAX; rows];
    for j in 1..=cols {
        if matched_row[j] != 0 {
            row_to_col[matched_row[j] - 1] = j - 1;
        }
    }
    debug_assert!(row_to_col.iter().all(|&j| j != usize::MAX));
    row_to_col
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// Exhaustive maximum over all (partial) matchings.
    pub(crate) fn brute_force_max(weights: &[Vec<i64>]) -> i64 {
        fn go(weights: &[Vec<i64>], row: usize, used: &mut [bool]) -> i64 {
            if row == weights.len() {
                return 0;
            }
            let mut best = go(weights, row + 1, used); // leave this row unmatched
            for j in 0..used.len() {
                if !used[j] {
                    used[j] = true;
                    best = best.max(weights[row][j] + go(weights, row + 1, used));
                    used[j] = false;
                }
            }
            best
        }
        let cols = weights.first().map_or(0, Vec::len);
        go(weights, 0, &mut vec![false; cols])
    }

    fn matching_weight(weights: &[Vec<i64>], pairs: &[(usize, usize)]) -> i64 {
        pairs.iter().map(|&(i, j)| weights[i][j]).sum()
    }

    #[test]
    fn identity_matrix_gives_identity_matching() {
        let w = vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]];
        assert_eq!(max_weight_matching(&w), vec![(0, 0), (1, 1), (2, 2)]);
    }

    #[test]
    fn crossing_weights_give_anti_diagonal() {
        let w = vec![vec![5, 9], vec![9, 5]];
        let m = max_weight_matching(&w);
        assert_eq!(m, vec![(0, 1), (1, 0)]);
        assert_eq!(matching_weight(&w, &m), 18);
    }

    #[test]
    fn empty_matrix_gives_empty_matching() {
        assert!(max_weight_matching(&[]).is_empty());
        let w: Vec<Vec<i64>> = vec![];
        assert!(max_weight_matching(&w).is_empty());
    }

    #[test]
    fn non_positive_pairs_are_dropped() {
        let w = vec![vec![-5]];
        assert!(max_weight_matching(&w).is_empty());
        let w = vec![vec![0, -1], vec![-1, 3]];
        assert_eq!(max_weight_matching(&w), vec![(1, 1)]);
    }

    #[test]
    fn rectangular_matrices_work_both_ways() {
        let w = vec![vec![1, 8, 2]];
        assert_eq!(max_weight_matching(&w), vec![(0, 1)]);
        let w = vec![vec![1], vec![8], vec![2]];
        assert_eq!(max_weight_matching(&w), vec![(1, 0)]);
    }

    #[test]
    fn ties_prefer_preferred_pairs_then_smaller_indices() {
        // preferred pairs win among equal-weight matchings
        let w = vec![vec![1, 1], vec![1, 1]];
        let m = max_weight_matching_with(&w, |i, j| (i, j) == (0, 1) || (i, j) == (1, 0));
        assert_eq!(m, vec![(0, 1), (1, 0)]);
        let m = max_weight_matching_with(&w, |i, j| i == j);
        assert_eq!(m, vec![(0, 0), (1, 1)]);

        // where only a subset of rows can be matched, smaller indices win
        let w = vec![vec![1], vec![1], vec![1]];
        assert_eq!(max_weight_matching(&w), vec![(0, 0)]);
        let w = vec![vec![1, 1, 1]];
        assert_eq!(max_weight_matching(&w), vec![(0, 0)]);
    }

    #[test]
    fn matches_brute_force_on_random_matrices() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..300 {
            let rows = rng.gen_range(0..=5);
            let cols = rng.gen_range(0..=5);
            let w: Vec<Vec<i64>> = (0..rows)
                .map(|_| (0..cols).map(|_| rng.gen_range(-6..=9)).collect())
                .collect();
            let m = max_weight_matching(&w);
            // mutual injectivity
            for (a, pa) in m.iter().enumerate() {
                for pb in &m[a + 1..] {
                    assert_ne!(pa.0, pb.0);
                    assert_ne!(pa.1, pb.1);
                }
            }
            assert_eq!(matching_weight(&w, &m), brute_force_max(&w), "{w:?}");
        }
    }
}
