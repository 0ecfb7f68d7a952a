//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

/// Carry-less product of `a` and `b` reduced by `poly` of degree `m`.
pub fn clmul_mod(a: u16, b: u16, poly: u32, m: u32) -> u16 {
    let mut acc = 0u32;
    for i in 0..m {
        if (b >> i) & 1 == 1 {
            acc ^= (a as u32) << i;
        }
    }
    for bit in (m..2 * m).rev() {
        if (acc >> bit) & 1 == 1 {
            acc ^= poly << (bit - m);
        }
    }
    acc as u16
}

/// All `size`-element subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, size: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, size: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, size, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, size, &mut Vec::new(), &mut out);
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// Exact laws of the unseen count and of the completion time, obtained by
/// replaying every combination of per-source send orders under round-robin.
///
/// Returns `unseen[step][u]` and `completion[k][l]` (row 0 unused).
pub fn chain_by_enumeration(n: usize, sources: usize) -> (Vec<Vec<f64>>, Vec<Vec<f64>>) {
    let perms = permutations(n);
    let horizon = n * sources;
    let mut unseen = vec![vec![0.0; n + 1]; horizon + 1];
    let mut completion = vec![vec![0.0; horizon + 1]; n + 1];
    let total = perms.len().pow(sources as u32);
    let weight = 1.0 / total as f64;
    for combo in 0..total {
        let mut rest = combo;
        let orders: Vec<&Vec<usize>> = (0..sources)
            .map(|_| {
                let p = &perms[rest % perms.len()];
                rest /= perms.len();
                p
            })
            .collect();
        let mut seen = vec![false; n];
        let mut distinct = 0;
        unseen[0][n] += weight;
        for step in 0..horizon {
            let sym = orders[step % sources][step / sources];
            if !std::mem::replace(&mut seen[sym], true) {
                distinct += 1;
                completion[distinct][step + 1] += weight;
            }
            unseen[step + 1][n - distinct] += weight;
        }
    }
    (unseen, completion)
}
