//! Exact linear algebra over a [`Domain`]: reduced row echelon form, rank,
//! nullspace and particular solutions, plus an incremental sparse echelon
//! basis for very tall sparse matrices.
//!
//! Dense routines over prime fields run on raw `u64` residues.

use std::collections::BTreeMap;

use crate::field::{add_mod, inv_mod, mul_mod, Coeff, Domain};

/// Reduced row echelon form. Returns the reduced rows (zero rows dropped) and
/// the pivot column of each.
pub fn rref(domain: Domain, rows: &[Vec<Coeff>], ncols: usize) -> (Vec<Vec<Coeff>>, Vec<usize>) {
    match domain {
        Domain::Prime(p) => {
            let raw: Vec<Vec<u64>> = rows
                .iter()
                .map(|r| r.iter().map(|c| domain.to_u64(c).unwrap()).collect())
                .collect();
            let (red, piv) = rref_mod(raw, ncols, p);
            let red = red
                .into_iter()
                .map(|r| r.into_iter().map(Coeff::Mod).collect())
                .collect();
            (red, piv)
        }
        Domain::Rational => rref_generic(domain, rows.to_vec(), ncols),
    }
}

fn rref_generic(d: Domain, mut m: Vec<Vec<Coeff>>, ncols: usize) -> (Vec<Vec<Coeff>>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == m.len() {
            break;
        }
        let Some(pr) = (r..m.len()).find(|&i| !d.is_zero(&m[i][c])) else {
            continue;
        };
        m.swap(r, pr);
        let inv = d.inv(&m[r][c]).unwrap();
        for x in m[r].iter_mut().skip(c) {
            *x = d.mul(x, &inv);
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || d.is_zero(&row[c]) {
                continue;
            }
            let f = row[c].clone();
            for j in c..ncols {
                if !d.is_zero(&pivot_row[j]) {
                    row[j] = d.sub(&row[j], &d.mul(&f, &pivot_row[j]));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    (m, pivots)
}

fn rref_mod(mut m: Vec<Vec<u64>>, ncols: usize, p: u64) -> (Vec<Vec<u64>>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == m.len() {
            break;
        }
        let Some(pr) = (r..m.len()).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, pr);
        let inv = inv_mod(m[r][c], p).unwrap();
        for x in m[r].iter_mut().skip(c) {
            *x = mul_mod(*x, inv, p);
        }
        let pivot_row = std::mem::take(&mut m[r]);
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || row[c] == 0 {
                continue;
            }
            let f = p - row[c];
            for j in c..ncols {
                if pivot_row[j] != 0 {
                    row[j] = add_mod(row[j], mul_mod(f, pivot_row[j], p), p);
                }
            }
        }
        m[r] = pivot_row;
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    (m, pivots)
}

pub fn rank(domain: Domain, rows: &[Vec<Coeff>], ncols: usize) -> usize {
    rref(domain, rows, ncols).1.len()
}

/// Basis of `{v : A v = 0}`, one vector per free column in increasing column
/// order. The vector for free column `f` has a 1 at `f` and is supported on
/// `f` and pivot columns left of `f`.
pub fn nullspace(domain: Domain, rows: &[Vec<Coeff>], ncols: usize) -> Vec<Vec<Coeff>> {
    let (red, pivots) = rref(domain, rows, ncols);
    let mut is_pivot = vec![false; ncols];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    (0..ncols)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = vec![domain.zero(); ncols];
            v[f] = domain.one();
            for (row, &pc) in red.iter().zip(&pivots) {
                if !domain.is_zero(&row[f]) {
                    v[pc] = domain.neg(&row[f]);
                }
            }
            v
        })
        .collect()
}

/// A particular solution of `A x = b` with every free variable set to zero.
pub fn solve(domain: Domain, a: &[Vec<Coeff>], b: &[Coeff], ncols: usize) -> Option<Vec<Coeff>> {
    let aug: Vec<Vec<Coeff>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let (red, pivots) = rref(domain, &aug, ncols + 1);
    if pivots.last() == Some(&ncols) {
        return None;
    }
    let mut x = vec![domain.zero(); ncols];
    for (row, &pc) in red.iter().zip(&pivots) {
        x[pc] = row[ncols].clone();
    }
    Some(x)
}

/// Incremental row-echelon basis over sparse rows.
///
/// Each stored row is normalized to a leading 1 at its pivot; inserting a row
/// reduces it against the basis and reports whether it was independent.
pub struct SparseEchelon {
    domain: Domain,
    basis: BTreeMap<usize, Vec<(usize, Coeff)>>,
}

impl SparseEchelon {
    pub fn new(domain: Domain) -> Self {
        SparseEchelon {
            domain,
            basis: BTreeMap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// `row` must be sorted by column with no zero entries.
    pub fn insert(&mut self, row: Vec<(usize, Coeff)>) -> bool {
        let d = self.domain;
        let mut cur: BTreeMap<usize, Coeff> = row.into_iter().collect();
        loop {
            let Some((&lead, lc)) = cur.iter().next() else {
                return false;
            };
            match self.basis.get(&lead) {
                Some(b) => {
                    let f = lc.clone();
                    for (c, v) in b {
                        let delta = d.mul(&f, v);
                        let entry = cur.entry(*c).or_insert_with(|| d.zero());
                        *entry = d.sub(entry, &delta);
                        if d.is_zero(entry) {
                            cur.remove(c);
                        }
                    }
                }
                None => {
                    let inv = d.inv(lc).unwrap();
                    let normalized = cur.into_iter().map(|(c, v)| (c, d.mul(&v, &inv))).collect();
                    self.basis.insert(lead, normalized);
                    return true;
                }
            }
        }
    }
}
