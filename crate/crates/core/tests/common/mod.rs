//! Independent oracles for colengths: rank computations on Macaulay matrices
//! over F_p, sharing no code with the Gröbner and staircase machinery.

#![allow(dead_code)]

use std::collections::HashMap;

use hkmult::Polynomial;

/// A polynomial as `(exponents, coefficient)` pairs.
pub type Terms = Vec<(Vec<u32>, u64)>;

pub fn terms(f: &Polynomial) -> Terms {
    f.terms()
        .iter()
        .map(|(m, c)| (m.exponents().to_vec(), *c as u64))
        .collect()
}

pub fn all_terms<'a>(fs: impl IntoIterator<Item = &'a Polynomial>) -> Vec<Terms> {
    fs.into_iter().map(terms).filter(|t| !t.is_empty()).collect()
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * a % p;
        }
        a = a * a % p;
        e >>= 1;
    }
    r
}

/// Incremental row echelon form over F_p with sparse rows keyed by column.
struct Echelon {
    p: u64,
    pivots: HashMap<usize, Vec<(usize, u64)>>,
}

impl Echelon {
    fn new(p: u64) -> Self {
        Echelon {
            p,
            pivots: HashMap::new(),
        }
    }

    /// Adds a row (sorted by column, nonzero entries); returns whether the
    /// rank grew.
    fn insert(&mut self, mut row: Vec<(usize, u64)>) -> bool {
        let p = self.p;
        loop {
            let Some(&(lead, c)) = row.first() else {
                return false;
            };
            match self.pivots.get(&lead) {
                None => {
                    let inv = pow_mod(c, p - 2, p);
                    for e in row.iter_mut() {
                        e.1 = e.1 * inv % p;
                    }
                    self.pivots.insert(lead, row);
                    return true;
                }
                Some(piv) => {
                    // row -= c * piv
                    let mut out = Vec::with_capacity(row.len() + piv.len());
                    let (mut i, mut j) = (0, 0);
                    while i < row.len() || j < piv.len() {
                        let take_row = j >= piv.len() || (i < row.len() && row[i].0 < piv[j].0);
                        let take_piv = i >= row.len() || (j < piv.len() && piv[j].0 < row[i].0);
                        if take_row {
                            out.push(row[i]);
                            i += 1;
                        } else if take_piv {
                            out.push((piv[j].0, (p - c * piv[j].1 % p) % p));
                            j += 1;
                        } else {
                            let v = (row[i].1 + p - c * piv[j].1 % p) % p;
                            if v != 0 {
                                out.push((row[i].0, v));
                            }
                            i += 1;
                            j += 1;
                        }
                    }
                    row = out;
                }
            }
        }
    }

    fn rank(&self) -> usize {
        self.pivots.len()
    }
}

/// Monomials in `n` variables of weighted degree exactly `k`.
fn monomials_of_degree(n: usize, weights: &[u64], k: u64) -> Vec<Vec<u32>> {
    fn rec(v: usize, weights: &[u64], left: u64, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if v == weights.len() {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let mut e = 0;
        while e * weights[v] <= left {
            cur.push(e as u32);
            rec(v + 1, weights, left - e * weights[v], cur, out);
            cur.pop();
            e += 1;
        }
    }
    let mut out = Vec::new();
    rec(0, &weights[..n], k, &mut Vec::new(), &mut out);
    out
}

fn wdeg(e: &[u32], weights: &[u64]) -> u64 {
    e.iter().zip(weights).map(|(&a, &w)| a as u64 * w).sum()
}

fn mul_exps(a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// `dim_F_p F_p[x]/(gens)` for generators homogeneous with respect to the
/// positive `weights`, computed degree by degree. Panics if the quotient is
/// still nonzero at `max_degree`.
pub fn graded_colength(p: u64, weights: &[u64], gens: &[Terms], max_degree: u64) -> u64 {
    let n = weights.len();
    let wmax = *weights.iter().max().unwrap();
    let gdeg: Vec<u64> = gens.iter().map(|g| wdeg(&g[0].0, weights)).collect();
    for (g, &d) in gens.iter().zip(&gdeg) {
        assert!(
            g.iter().all(|(e, _)| wdeg(e, weights) == d),
            "generator not homogeneous"
        );
    }
    let mut total = 0u64;
    let mut zeros = 0u64;
    for k in 0..=max_degree {
        let cols = monomials_of_degree(n, weights, k);
        let index: HashMap<&[u32], usize> = cols.iter().enumerate().map(|(i, m)| (m.as_slice(), i)).collect();
        let mut ech = Echelon::new(p);
        'outer: for (g, &d) in gens.iter().zip(&gdeg) {
            if d > k {
                continue;
            }
            for u in monomials_of_degree(n, weights, k - d) {
                let mut row: Vec<(usize, u64)> = g
                    .iter()
                    .map(|(e, c)| (index[mul_exps(e, &u).as_slice()], c % p))
                    .filter(|&(_, c)| c != 0)
                    .collect();
                row.sort_unstable();
                ech.insert(row);
                if ech.rank() == cols.len() {
                    break 'outer;
                }
            }
        }
        let dim = (cols.len() - ech.rank()) as u64;
        total += dim;
        if dim == 0 {
            zeros += 1;
            if zeros >= wmax {
                return total;
            }
        } else {
            zeros = 0;
        }
    }
    panic!("quotient not zero by degree {max_degree}");
}

/// `dim_F_p F_p[x]/((gens) + m^D)`: the span of the truncated multiples
/// `g*u` inside polynomials of total degree below `D`. For `D` beyond the
/// nilpotency index of the local factor this is the length at the origin.
pub fn truncated_colength(p: u64, nvars: usize, gens: &[Terms], d: u64) -> u64 {
    let ones = vec![1u64; nvars];
    let mut cols: Vec<Vec<u32>> = Vec::new();
    for k in 0..d {
        cols.extend(monomials_of_degree(nvars, &ones, k));
    }
    let index: HashMap<&[u32], usize> = cols.iter().enumerate().map(|(i, m)| (m.as_slice(), i)).collect();
    let mut ech = Echelon::new(p);
    for g in gens {
        let low = g.iter().map(|(e, _)| wdeg(e, &ones)).min().unwrap();
        for u in &cols {
            if wdeg(u, &ones) + low >= d {
                continue;
            }
            let mut row: Vec<(usize, u64)> = g
                .iter()
                .filter_map(|(e, c)| {
                    let m = mul_exps(e, u);
                    (wdeg(&m, &ones) < d && c % p != 0).then(|| (index[m.as_slice()], c % p))
                })
                .collect();
            row.sort_unstable();
            ech.insert(row);
        }
    }
    (cols.len() - ech.rank()) as u64
}

/// Generators `x_var^n` as terms.
pub fn pure_power(nvars: usize, var: usize, n: u32) -> Terms {
    let mut e = vec![0; nvars];
    e[var] = n;
    vec![(e, 1)]
}
