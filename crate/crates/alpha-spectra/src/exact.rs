//! Exact rank of small integer matrices by fraction-free elimination.

/// Rank of an integer matrix via Bareiss-style fraction-free Gaussian
/// elimination. All intermediate values stay integral; i128 comfortably
/// holds the growth for the matrix sizes and entry magnitudes this crate
/// produces (n <= 5, entries bounded by a few hundred).
pub fn integer_rank(n: usize, entries: &[i128]) -> usize {
    assert_eq!(entries.len(), n * n);
    let mut m = entries.to_vec();
    let at = |m: &Vec<i128>, i: usize, j: usize| m[i * n + j];
    let mut rank = 0usize;
    let mut prev_pivot: i128 = 1;

    for col in 0..n {
        let Some(pivot_row) = (rank..n).find(|&r| at(&m, r, col) != 0) else {
            continue;
        };
        if pivot_row != rank {
            for j in 0..n {
                m.swap(rank * n + j, pivot_row * n + j);
            }
        }
        let pivot = at(&m, rank, col);
        for r in (rank + 1)..n {
            let lead = at(&m, r, col);
            for j in 0..n {
                let v = pivot * at(&m, r, j) - lead * at(&m, rank, j);
                debug_assert_eq!(v % prev_pivot, 0, "fraction-free division must be exact");
                m[r * n + j] = v / prev_pivot;
            }
        }
        prev_pivot = pivot;
        rank += 1;
    }
    rank
}
