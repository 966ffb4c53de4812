//! Independent reference implementations used as test oracles. They share
//! no code with the library beyond reading cells of a hypercube.
#![allow(dead_code)]

use transversal_lab::Hypercube;

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        let n = used.len();
        if prefix.len() == n {
            out.push(prefix.clone());
            return;
        }
        for v in 0..n {
            if !used[v] {
                used[v] = true;
                prefix.push(v);
                rec(prefix, used, out);
                prefix.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// Every diagonal, as the list of cells `(i, p_2(i), ..., p_d(i))`, one per
/// tuple of permutations for axes 2..d.
pub fn all_diagonals(n: usize, d: usize) -> Vec<Vec<Vec<usize>>> {
    let perms = permutations(n);
    let mut out = Vec::new();
    let mut idx = vec![0usize; d - 1];
    loop {
        out.push(
            (0..n)
                .map(|i| {
                    let mut c = vec![i];
                    c.extend(idx.iter().map(|&k| perms[k][i]));
                    c
                })
                .collect(),
        );
        let mut a = d - 1;
        loop {
            if a == 0 {
                return out;
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

pub fn symbol(h: &Hypercube, c: &[usize]) -> usize {
    h.get(c)
}

/// Brute-force transversal count.
pub fn count_transversals(h: &Hypercube) -> usize {
    all_diagonals(h.order(), h.dim())
        .into_iter()
        .filter(|cells| {
            let mut seen = vec![false; h.order()];
            cells.iter().all(|c| !std::mem::replace(&mut seen[symbol(h, c)], true))
        })
        .count()
}

/// Delta under the cyclic labeling, computed with plain integers.
pub fn delta_mod(h: &Hypercube, c: &[usize]) -> usize {
    let n = h.order() as i64;
    let s = symbol(h, c) as i64 - c.iter().map(|&x| x as i64).sum::<i64>();
    s.rem_euclid(n) as usize
}

/// Brute-force count of diagonals with cyclic Delta sum `target`.
pub fn count_diagonals_with_sum(h: &Hypercube, target: usize) -> usize {
    let n = h.order();
    all_diagonals(n, h.dim())
        .into_iter()
        .filter(|cells| cells.iter().map(|c| delta_mod(h, c)).sum::<usize>() % n == target)
        .count()
}

/// Naive Latin check: every line holds `n` distinct symbols.
pub fn is_latin(h: &Hypercube) -> bool {
    let (n, d) = (h.order(), h.dim());
    let total = n.pow(d as u32);
    for axis in 0..d {
        for flat in 0..total {
            let c = coords(flat, n, d);
            if c[axis] != 0 {
                continue;
            }
            let mut seen = vec![false; n];
            for v in 0..n {
                let mut x = c.clone();
                x[axis] = v;
                if std::mem::replace(&mut seen[symbol(h, &x)], true) {
                    return false;
                }
            }
        }
    }
    true
}

pub fn coords(mut flat: usize, n: usize, d: usize) -> Vec<usize> {
    let mut c = vec![0; d];
    for x in c.iter_mut().rev() {
        *x = flat % n;
        flat /= n;
    }
    c
}

/// Naive transversal check on explicit cells.
pub fn is_transversal_cells(h: &Hypercube, cells: &[Vec<usize>]) -> bool {
    let (n, d) = (h.order(), h.dim());
    if cells.len() != n {
        return false;
    }
    for a in 0..d {
        let mut seen = vec![false; n];
        if cells.iter().any(|c| std::mem::replace(&mut seen[c[a]], true)) {
            return false;
        }
    }
    let mut seen = vec![false; n];
    cells.iter().all(|c| !std::mem::replace(&mut seen[symbol(h, c)], true))
}
