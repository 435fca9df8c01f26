//! Helpers shared by the integration tests.

/// The stage recurrences evaluated by plain recursion: returns `(q, n)`.
pub fn stage_oracle(p: &[u32], b: &[u64], l: &[u32]) -> (Vec<u128>, u128) {
    let s = l.len();
    let unit = |i: usize| (0..s).map(|j| if i == j { 1 } else { 0 }).collect::<Vec<u128>>();
    if let Some(i) = (0..s).find(|&i| p[i] == l[i]) {
        return (unit(i), 0);
    }
    if let Some(i) = (0..s).find(|&i| p[i] + 1 == l[i]) {
        return (unit(i), 1);
    }
    let kids: Vec<Vec<u128>> = (0..s)
        .map(|i| {
            let mut c = p.to_vec();
            c[i] += 1;
            stage_oracle(&c, b, l).0
        })
        .collect();
    let n: u128 = 1 + (0..s).map(|i| (kids[i][i] - 1) * (b[i] as u128 + 1)).sum::<u128>();
    let btot: u128 = b.iter().map(|&x| x as u128).sum();
    let q = (0..s)
        .map(|i| {
            (0..s)
                .filter(|&j| j != i && kids[j][i] > 0)
                .map(|j| kids[j][i] + n + n * (btot + s as u128 - 1))
                .fold(n, u128::max)
        })
        .collect();
    (q, n)
}

pub fn oracle_longest(p: &[u32], b: &[u64], l: &[u32]) -> u128 {
    let (_, n) = stage_oracle(p, b, l);
    if (0..l.len()).any(|i| p[i] + 1 >= l[i]) {
        return n;
    }
    n + (0..l.len())
        .map(|i| {
            let mut c = p.to_vec();
            c[i] += 1;
            oracle_longest(&c, b, l)
        })
        .max()
        .unwrap_or(0)
}
