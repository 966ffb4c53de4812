//! Naive reference implementations, kept free of the search machinery so
//! they can cross-check it.

use crate::hypercube::Hypercube;

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    loop {
        out.push(p.clone());
        // next lexicographic permutation
        let Some(i) = (1..n).rev().find(|&i| p[i - 1] < p[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| p[j] > p[i - 1]).expect("successor exists");
        p.swap(i - 1, j);
        p[i..].reverse();
    }
}

/// Counts transversals by trying every tuple of permutations for axes
/// `2..d` and checking symbol distinctness directly.
pub fn brute_force_transversals(h: &Hypercube) -> u64 {
    let (n, d) = (h.order(), h.dim());
    let perms = permutations(n);
    let mut idx = vec![0usize; d - 1];
    let mut count = 0;
    let mut cell = vec![0usize; d];
    loop {
        let mut seen = vec![false; n];
        let mut ok = true;
        for i in 0..n {
            cell[0] = i;
            for a in 1..d {
                cell[a] = perms[idx[a - 1]][i];
            }
            let s = h.get(&cell);
            if seen[s] {
                ok = false;
                break;
            }
            seen[s] = true;
        }
        if ok {
            count += 1;
        }
        let mut a = d - 1;
        loop {
            if a == 0 {
                return count;
            }
            a -= 1;
            idx[a] += 1;
            if idx[a] < perms.len() {
                break;
            }
            idx[a] = 0;
        }
    }
}

/// Every Latin square of order `n` (as row-major symbol lists), by
/// cell-by-cell backtracking.
pub fn latin_squares(n: usize) -> Vec<Vec<usize>> {
    fn rec(pos: usize, n: usize, grid: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if pos == n * n {
            out.push(grid.clone());
            return;
        }
        let (r, c) = (pos / n, pos % n);
        for s in 0..n {
            let clash = (0..c).any(|k| grid[r * n + k] == s) || (0..r).any(|k| grid[k * n + c] == s);
            if !clash {
                grid[pos] = s;
                rec(pos + 1, n, grid, out);
            }
        }
    }
    let mut out = Vec::new();
    rec(0, n, &mut vec![0; n * n], &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalogue_sizes() {
        assert_eq!(latin_squares(1).len(), 1);
        assert_eq!(latin_squares(2).len(), 2);
        assert_eq!(latin_squares(3).len(), 12);
        assert_eq!(latin_squares(4).len(), 576);
    }

    #[test]
    fn permutation_counts() {
        assert_eq!(permutations(4).len(), 24);
        assert_eq!(permutations(0).len(), 1);
        assert_eq!(permutations(3)[1], vec![0, 2, 1]);
    }
}
