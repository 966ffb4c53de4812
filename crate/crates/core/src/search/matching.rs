//! Bipartite matching for completing partial diagonals of Latin squares.

use crate::hypercube::Hypercube;

/// Completes the partial diagonal `partial` (flat indices) of a square to a
/// full diagonal using only cells not flagged in `avoid`. Returns the flat
/// indices of the whole diagonal.
pub(super) fn complete_square_diagonal(h: &Hypercube, partial: &[usize], avoid: &[bool]) -> Option<Vec<u32>> {
    debug_assert_eq!(h.dim(), 2);
    let n = h.order();
    let mut row_used = vec![false; n];
    let mut col_used = vec![false; n];
    for &f in partial {
        let (r, c) = (f / n, f % n);
        if row_used[r] || col_used[c] {
            return None;
        }
        row_used[r] = true;
        col_used[c] = true;
    }
    let rows: Vec<usize> = (0..n).filter(|&r| !row_used[r]).collect();
    let adj: Vec<Vec<usize>> = rows
        .iter()
        .map(|&r| (0..n).filter(|&c| !col_used[c] && !avoid[r * n + c]).collect())
        .collect();

    // owner[c] = index into `rows` currently matched to column c
    let mut owner: Vec<Option<usize>> = vec![None; n];
    for i in 0..rows.len() {
        let mut seen = vec![false; n];
        if !augment(i, &adj, &mut owner, &mut seen) {
            return None;
        }
    }
    let mut out: Vec<u32> = partial.iter().map(|&f| f as u32).collect();
    for (c, o) in owner.iter().enumerate() {
        if let Some(i) = o {
            out.push((rows[*i] * n + c) as u32);
        }
    }
    out.sort_unstable();
    Some(out)
}

fn augment(i: usize, adj: &[Vec<usize>], owner: &mut [Option<usize>], seen: &mut [bool]) -> bool {
    for &c in &adj[i] {
        if seen[c] {
            continue;
        }
        seen[c] = true;
        if owner[c].is_none_or(|j| augment(j, adj, owner, seen)) {
            owner[c] = Some(i);
            return true;
        }
    }
    false
}
