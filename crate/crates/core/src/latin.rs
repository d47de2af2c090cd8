//! Latin squares and hypercubes: validation, the circuit families they
//! induce, conjugates and main-class canonical forms, enumeration,
//! orthogonal families, subsquares and the matroids built from them.

use std::collections::HashSet;

use num_integer::Integer;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bits::{self, Mask};
use crate::matroid::{matroid_from_top_circuits, CircuitFamily, Matroid, MatroidError};

/// Largest order for which main classes are enumerated.
pub const MAX_CLASSIFY_ORDER: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatinError {
    #[error("invalid shape: {0}")]
    InvalidShape(String),
    #[error("symbol {symbol} at cell {cell:?} outside [1, {order}]")]
    SymbolOutOfRange {
        symbol: usize,
        cell: Vec<usize>,
        order: usize,
    },
    #[error("not Latin: symbol {symbol} repeats along axis {axis} through cell {cell:?}")]
    NotLatin {
        axis: usize,
        cell: Vec<usize>,
        symbol: usize,
    },
    #[error("squares {0} and {1} are not orthogonal")]
    NotOrthogonal(usize, usize),
    #[error("squares have different orders")]
    OrderMismatch,
    #[error("{0} is not prime")]
    NotPrime(usize),
    #[error("a prime {p} admits at most {max} orthogonal squares from the linear construction, requested {s}")]
    TooManySquares { p: usize, s: usize, max: usize },
    #[error("unsupported order {0}: classification is limited to orders 1..={MAX_CLASSIFY_ORDER}")]
    UnsupportedOrder(usize),
    #[error("invalid subsquare: {0}")]
    InvalidSubsquare(String),
    #[error("invalid block matroids: {0}")]
    InvalidBlocks(String),
    #[error("invalid labels: {0}")]
    InvalidLabels(String),
    #[error("not a permutation of {{1, 2, 3}}: {0:?}")]
    InvalidRolePermutation([usize; 3]),
    #[error(transparent)]
    Matroid(#[from] MatroidError),
}

/// An `l`-dimensional array of order `m` over the symbols `1..=m` in which
/// every axis-parallel line is a permutation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LatinHypercube {
    dim: usize,
    order: usize,
    cells: Vec<usize>,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct HypercubeJson {
    pub dim: usize,
    pub order: usize,
    pub cells: Vec<usize>,
}

impl LatinHypercube {
    /// `cells` is the flat row-major array: the first coordinate varies
    /// slowest.
    pub fn new(dim: usize, order: usize, cells: Vec<usize>) -> Result<Self, LatinError> {
        let k = LatinHypercube { dim, order, cells };
        k.validate()?;
        Ok(k)
    }

    /// `k(i_1, .., i_l) = 1 + (sum_t c_t (i_t - 1) mod m)`; every `c_t` must
    /// be a unit modulo `m`.
    pub fn linear(dim: usize, order: usize, coeffs: &[i64]) -> Result<Self, LatinError> {
        if coeffs.len() != dim {
            return Err(LatinError::InvalidShape(format!(
                "{} coefficients for dimension {dim}",
                coeffs.len()
            )));
        }
        if order == 0 {
            return Err(LatinError::InvalidShape("order must be positive".into()));
        }
        let m = order as i64;
        let total = order.checked_pow(dim as u32).ok_or_else(|| {
            LatinError::InvalidShape(format!("order {order} dimension {dim} too large"))
        })?;
        let cells = (0..total)
            .map(|flat| {
                let idx = unflatten(flat, dim, order);
                let s: i64 = idx
                    .iter()
                    .zip(coeffs)
                    .map(|(&i, &c)| c * (i as i64 - 1))
                    .sum();
                s.rem_euclid(m) as usize + 1
            })
            .collect();
        Self::new(dim, order, cells)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn cells(&self) -> &[usize] {
        &self.cells
    }

    /// Entry at 1-based coordinates.
    pub fn get(&self, idx: &[usize]) -> usize {
        self.cells[flatten(idx, self.order)]
    }

    pub fn validate(&self) -> Result<(), LatinError> {
        let (l, m) = (self.dim, self.order);
        if l == 0 || m == 0 {
            return Err(LatinError::InvalidShape(format!(
                "dimension {l} and order {m} must be positive"
            )));
        }
        let total = m
            .checked_pow(l as u32)
            .ok_or_else(|| LatinError::InvalidShape("array too large".into()))?;
        if self.cells.len() != total {
            return Err(LatinError::InvalidShape(format!(
                "expected {total} cells, found {}",
                self.cells.len()
            )));
        }
        for (flat, &s) in self.cells.iter().enumerate() {
            if s == 0 || s > m {
                return Err(LatinError::SymbolOutOfRange {
                    symbol: s,
                    cell: unflatten(flat, l, m),
                    order: m,
                });
            }
        }
        for axis in 0..l {
            let stride = m.pow((l - 1 - axis) as u32);
            for flat in 0..total {
                if (flat / stride) % m != 0 {
                    continue;
                }
                let mut seen = vec![false; m + 1];
                for t in 0..m {
                    let pos = flat + t * stride;
                    let s = self.cells[pos];
                    if seen[s] {
                        return Err(LatinError::NotLatin {
                            axis: axis + 1,
                            cell: unflatten(pos, l, m),
                            symbol: s,
                        });
                    }
                    seen[s] = true;
                }
            }
        }
        Ok(())
    }

    /// `C[K]`: the `(l+1)`-sets `(i_1, m+i_2, .., (l-1)m+i_l, lm+k(i))` on
    /// `[(l+1)m]`.
    pub fn circuit_family(&self) -> Result<CircuitFamily, LatinError> {
        self.validate()?;
        let (l, m) = (self.dim, self.order);
        let n = (l + 1) * m;
        let members = (0..self.cells.len())
            .map(|flat| {
                let idx = unflatten(flat, l, m);
                let mut s: Vec<usize> = idx.iter().enumerate().map(|(t, &i)| t * m + i).collect();
                s.push(l * m + self.cells[flat]);
                s
            })
            .collect();
        Ok(CircuitFamily::new(n, l + 1, members)?)
    }

    /// The unique `l`-generic rank-`(l+1)` matroid `M[K]` whose
    /// `(l+1)`-circuits are `C[K]`. Order 1 yields `U_{l,l+1}`.
    pub fn build_matroid(&self) -> Result<Matroid, LatinError> {
        let c = self.circuit_family()?;
        let n = (self.dim + 1) * self.order;
        if self.order == 1 {
            return Ok(Matroid::uniform(self.dim, n)?);
        }
        Ok(matroid_from_top_circuits(&c, self.dim, n)?)
    }

    pub fn to_json(&self) -> HypercubeJson {
        HypercubeJson {
            dim: self.dim,
            order: self.order,
            cells: self.cells.clone(),
        }
    }

    pub fn from_json(j: &HypercubeJson) -> Result<Self, LatinError> {
        Self::new(j.dim, j.order, j.cells.clone())
    }
}

fn flatten(idx: &[usize], m: usize) -> usize {
    idx.iter().fold(0, |acc, &i| acc * m + (i - 1))
}

fn unflatten(mut flat: usize, l: usize, m: usize) -> Vec<usize> {
    let mut idx = vec![0; l];
    for t in (0..l).rev() {
        idx[t] = flat % m + 1;
        flat /= m;
    }
    idx
}

/// Index roles of a Latin square.
pub const ROWS: usize = 0;
pub const COLS: usize = 1;
pub const SYMBOLS: usize = 2;

/// A Latin square of order `m` whose rows, columns and symbols are labelled
/// by three disjoint `m`-subsets of `[3m]` (by default `[m]`, `[m]+m`,
/// `[m]+2m`). Its triple system `T(K)` is the set of label triples of its
/// cells.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LatinSquare {
    order: usize,
    cells: Vec<usize>,
    labels: [Vec<usize>; 3],
}

fn default_labels(m: usize) -> [Vec<usize>; 3] {
    [
        (1..=m).collect(),
        (m + 1..=2 * m).collect(),
        (2 * m + 1..=3 * m).collect(),
    ]
}

impl LatinSquare {
    pub fn new(rows: Vec<Vec<usize>>) -> Result<Self, LatinError> {
        let m = rows.len();
        if rows.iter().any(|r| r.len() != m) {
            return Err(LatinError::InvalidShape("rows must have length equal to the order".into()));
        }
        Self::from_cells(m, rows.concat())
    }

    pub fn from_cells(order: usize, cells: Vec<usize>) -> Result<Self, LatinError> {
        LatinHypercube::new(2, order, cells.clone())?;
        Ok(LatinSquare {
            order,
            cells,
            labels: default_labels(order),
        })
    }

    pub fn from_hypercube(k: &LatinHypercube) -> Result<Self, LatinError> {
        if k.dim() != 2 {
            return Err(LatinError::InvalidShape(format!(
                "expected dimension 2, found {}",
                k.dim()
            )));
        }
        Self::from_cells(k.order(), k.cells().to_vec())
    }

    /// `k(i, j) = ((j - i) mod m) + 1`.
    pub fn cyclic(order: usize) -> Self {
        let k = LatinHypercube::linear(2, order, &[-1, 1]).expect("units always give Latin arrays");
        Self::from_hypercube(&k).expect("dimension 2")
    }

    /// The Cayley table of `(Z/2)^k`, `k(i, j) = ((i-1) xor (j-1)) + 1`;
    /// `order` must be a power of two.
    pub fn elementary_abelian(order: usize) -> Result<Self, LatinError> {
        if !order.is_power_of_two() {
            return Err(LatinError::InvalidShape(format!("{order} is not a power of two")));
        }
        let cells = (0..order * order)
            .map(|f| ((f / order) ^ (f % order)) + 1)
            .collect();
        Self::from_cells(order, cells)
    }

    /// Replaces the labels; the three sets must be disjoint `m`-subsets of
    /// `[3m]` given in index order.
    pub fn with_labels(mut self, labels: [Vec<usize>; 3]) -> Result<Self, LatinError> {
        let m = self.order;
        let mut seen: Mask = 0;
        for l in &labels {
            if l.len() != m {
                return Err(LatinError::InvalidLabels(format!("expected {m} labels, found {}", l.len())));
            }
            for &x in l {
                if x == 0 || x > 3 * m || seen & bits::bit(x) != 0 {
                    return Err(LatinError::InvalidLabels(format!(
                        "label {x} repeated or outside [1, {}]",
                        3 * m
                    )));
                }
                seen |= bits::bit(x);
            }
        }
        self.labels = labels;
        Ok(self)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, i: usize, j: usize) -> usize {
        self.cells[(i - 1) * self.order + (j - 1)]
    }

    pub fn cells(&self) -> &[usize] {
        &self.cells
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.cells.chunks(self.order).map(|r| r.to_vec()).collect()
    }

    pub fn labels(&self, role: usize) -> &[usize] {
        &self.labels[role]
    }

    pub fn as_hypercube(&self) -> LatinHypercube {
        LatinHypercube {
            dim: 2,
            order: self.order,
            cells: self.cells.clone(),
        }
    }

    /// Label triples `(row, column, symbol)` of all cells.
    pub fn triples(&self) -> Vec<[usize; 3]> {
        let m = self.order;
        (0..m * m)
            .map(|f| {
                [
                    self.labels[ROWS][f / m],
                    self.labels[COLS][f % m],
                    self.labels[SYMBOLS][self.cells[f] - 1],
                ]
            })
            .collect()
    }

    /// `T(K)` as a family of 3-subsets of `[3m]`; equals `C[K]` for the
    /// default labels.
    pub fn circuit_family(&self) -> Result<CircuitFamily, LatinError> {
        let members = self.triples().iter().map(|t| t.to_vec()).collect();
        Ok(CircuitFamily::new(3 * self.order, 3, members)?)
    }

    pub fn build_matroid(&self) -> Result<Matroid, LatinError> {
        let n = 3 * self.order;
        if self.order == 1 {
            return Ok(Matroid::uniform(2, n)?);
        }
        Ok(matroid_from_top_circuits(&self.circuit_family()?, 2, n)?)
    }

    /// The conjugate in which role `a` of the new square is played by role
    /// `sigma[a]` of this one (roles numbered 1 = rows, 2 = columns,
    /// 3 = symbols). Labels travel with their roles, so the triple system is
    /// unchanged.
    pub fn conjugate(&self, sigma: [usize; 3]) -> Result<Self, LatinError> {
        let mut check = sigma;
        check.sort_unstable();
        if check != [1, 2, 3] {
            return Err(LatinError::InvalidRolePermutation(sigma));
        }
        let s = sigma.map(|x| x - 1);
        let m = self.order;
        let mut cells = vec![0; m * m];
        for f in 0..m * m {
            let t = [f / m + 1, f % m + 1, self.cells[f]];
            cells[(t[s[0]] - 1) * m + (t[s[1]] - 1)] = t[s[2]];
        }
        Ok(LatinSquare {
            order: m,
            cells,
            labels: [
                self.labels[s[0]].clone(),
                self.labels[s[1]].clone(),
                self.labels[s[2]].clone(),
            ],
        })
    }

    /// Representative of the isotopy class: the lexicographically least
    /// array reachable by row, column and symbol permutations.
    pub fn isotopy_canonical(&self) -> LatinSquare {
        let cells = canonical_cells(&to_u8(&self.cells), self.order, false);
        from_u8(self.order, &cells)
    }

    /// Representative of the main class: the lexicographically least array
    /// over isotopies of all six conjugates. Labels are reset to defaults.
    pub fn main_class_canonical(&self) -> LatinSquare {
        let cells = canonical_cells(&to_u8(&self.cells), self.order, true);
        from_u8(self.order, &cells)
    }

    pub fn is_isotopic(&self, other: &LatinSquare) -> bool {
        self.order == other.order && self.isotopy_canonical() == other.isotopy_canonical()
    }

    pub fn same_main_class(&self, other: &LatinSquare) -> bool {
        self.order == other.order && self.main_class_canonical() == other.main_class_canonical()
    }

    /// Positional isotopy: permute rows, columns and symbols (each given as
    /// 1-based images).
    pub fn permuted(&self, rows: &[usize], cols: &[usize], symbols: &[usize]) -> Result<Self, LatinError> {
        let m = self.order;
        for p in [rows, cols, symbols] {
            let mut v = p.to_vec();
            v.sort_unstable();
            if v != (1..=m).collect::<Vec<_>>() {
                return Err(LatinError::InvalidShape(format!("{p:?} is not a permutation of [{m}]")));
            }
        }
        let mut cells = vec![0; m * m];
        for f in 0..m * m {
            let (i, j) = (f / m, f % m);
            cells[(rows[i] - 1) * m + (cols[j] - 1)] = symbols[self.cells[f] - 1];
        }
        Self::from_cells(m, cells)
    }

    pub fn to_json(&self) -> HypercubeJson {
        self.as_hypercube().to_json()
    }

    pub fn from_json(j: &HypercubeJson) -> Result<Self, LatinError> {
        Self::from_hypercube(&LatinHypercube::from_json(j)?)
    }
}

fn to_u8(cells: &[usize]) -> Vec<u8> {
    cells.iter().map(|&s| (s - 1) as u8).collect()
}

fn from_u8(m: usize, cells: &[u8]) -> LatinSquare {
    LatinSquare {
        order: m,
        cells: cells.iter().map(|&s| s as usize + 1).collect(),
        labels: default_labels(m),
    }
}

/// Next permutation in lexicographic order; false after the last one.
fn next_permutation(p: &mut [u8]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// The six role conjugates of a 0-based square.
fn all_conjugates(cells: &[u8], m: usize) -> Vec<Vec<u8>> {
    const SIGMAS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    SIGMAS
        .iter()
        .map(|s| {
            let mut out = vec![0u8; m * m];
            for f in 0..m * m {
                let t = [(f / m) as u8, (f % m) as u8, cells[f]];
                out[t[s[0]] as usize * m + t[s[1]] as usize] = t[s[2]];
            }
            out
        })
        .collect()
}

/// Lexicographic minimum over isotopies (and conjugates when requested).
///
/// Every normalized image has first row and first column equal to the
/// identity; it is determined by the row moved to the top and the column
/// order, after which symbols are renamed so the top row reads 0..m-1 and
/// rows are placed by their first symbol.
fn canonical_cells(cells: &[u8], m: usize, conjugates: bool) -> Vec<u8> {
    let variants = if conjugates {
        all_conjugates(cells, m)
    } else {
        vec![cells.to_vec()]
    };
    let mut best = vec![u8::MAX; m * m];
    for j in 0..m {
        best[j] = j as u8;
    }
    let mut cand = best.clone();
    let mut sig = vec![0u8; m];
    let mut row_at = vec![0usize; m];
    for l in &variants {
        for r0 in 0..m {
            let mut perm: Vec<u8> = (0..m as u8).collect();
            loop {
                for j in 0..m {
                    sig[l[r0 * m + perm[j] as usize] as usize] = j as u8;
                }
                for r in 0..m {
                    row_at[sig[l[r * m + perm[0] as usize] as usize] as usize] = r;
                }
                let mut less = false;
                let mut abort = false;
                'rows: for i in 1..m {
                    let base = row_at[i] * m;
                    for j in 0..m {
                        let v = sig[l[base + perm[j] as usize] as usize];
                        let at = i * m + j;
                        if !less {
                            if v > best[at] {
                                abort = true;
                                break 'rows;
                            }
                            if v < best[at] {
                                less = true;
                            }
                        }
                        cand[at] = v;
                    }
                }
                if less && !abort {
                    best[m..].copy_from_slice(&cand[m..]);
                }
                if !next_permutation(&mut perm) {
                    break;
                }
            }
        }
    }
    best
}

/// All reduced Latin squares of order `m` (first row and column in natural
/// order), as 0-based flat arrays.
fn reduced_squares(m: usize) -> Vec<Vec<u8>> {
    let mut cells = vec![0u8; m * m];
    let mut row_used = vec![0u32; m];
    let mut col_used = vec![0u32; m];
    for j in 0..m {
        cells[j] = j as u8;
        cells[j * m] = j as u8;
        row_used[0] |= 1 << j;
        col_used[j] |= 1 << j;
        if j > 0 {
            row_used[j] |= 1 << j;
            col_used[0] |= 1 << j;
        }
    }
    let mut out = Vec::new();
    fill_reduced(m, m + 1, &mut cells, &mut row_used, &mut col_used, &mut out);
    out
}

fn fill_reduced(
    m: usize,
    pos: usize,
    cells: &mut [u8],
    row_used: &mut [u32],
    col_used: &mut [u32],
    out: &mut Vec<Vec<u8>>,
) {
    if pos >= m * m {
        out.push(cells.to_vec());
        return;
    }
    let (i, j) = (pos / m, pos % m);
    if j == 0 {
        fill_reduced(m, pos + 1, cells, row_used, col_used, out);
        return;
    }
    let free = !(row_used[i] | col_used[j]) & ((1u32 << m) - 1);
    let mut rest = free;
    while rest != 0 {
        let s = rest.trailing_zeros();
        let b = 1u32 << s;
        cells[pos] = s as u8;
        row_used[i] |= b;
        col_used[j] |= b;
        fill_reduced(m, pos + 1, cells, row_used, col_used, out);
        row_used[i] &= !b;
        col_used[j] &= !b;
        rest &= rest - 1;
    }
}

fn check_classify_order(m: usize) -> Result<(), LatinError> {
    if m == 0 || m > MAX_CLASSIFY_ORDER {
        Err(LatinError::UnsupportedOrder(m))
    } else {
        Ok(())
    }
}

/// Number of reduced Latin squares of order `m <= 6`.
pub fn count_reduced_squares(m: usize) -> Result<usize, LatinError> {
    check_classify_order(m)?;
    Ok(reduced_squares(m).len())
}

/// One canonical representative per main class of order `m <= 6`, sorted.
pub fn main_class_representatives(m: usize) -> Result<Vec<LatinSquare>, LatinError> {
    check_classify_order(m)?;
    let canon: HashSet<Vec<u8>> = reduced_squares(m)
        .par_iter()
        .map(|c| canonical_cells(c, m, true))
        .collect();
    let mut canon: Vec<Vec<u8>> = canon.into_iter().collect();
    canon.sort();
    Ok(canon.iter().map(|c| from_u8(m, c)).collect())
}

pub fn count_main_classes(m: usize) -> Result<usize, LatinError> {
    Ok(main_class_representatives(m)?.len())
}

/// All `m^2` superposed pairs are distinct.
pub fn are_orthogonal(a: &LatinSquare, b: &LatinSquare) -> bool {
    if a.order != b.order {
        return false;
    }
    let m = a.order;
    let mut seen = vec![false; m * m];
    for f in 0..m * m {
        let key = (a.cells[f] - 1) * m + (b.cells[f] - 1);
        if seen[key] {
            return false;
        }
        seen[key] = true;
    }
    true
}

fn check_mutually_orthogonal(ks: &[LatinSquare]) -> Result<usize, LatinError> {
    let first = ks
        .first()
        .ok_or_else(|| LatinError::InvalidShape("at least one square is required".into()))?;
    let m = first.order;
    if ks.iter().any(|k| k.order != m) {
        return Err(LatinError::OrderMismatch);
    }
    for p in 0..ks.len() {
        for q in p + 1..ks.len() {
            if !are_orthogonal(&ks[p], &ks[q]) {
                return Err(LatinError::NotOrthogonal(p + 1, q + 1));
            }
        }
    }
    Ok(m)
}

fn is_prime(p: usize) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// `s` mutually orthogonal squares of prime order `p`:
/// `K_t(i, j) = ((i - 1) + t (j - 1) mod p) + 1` for `t = 1..=s`.
pub fn mols_prime(p: usize, s: usize) -> Result<Vec<LatinSquare>, LatinError> {
    if !is_prime(p) {
        return Err(LatinError::NotPrime(p));
    }
    if s == 0 || s > p - 1 {
        return Err(LatinError::TooManySquares { p, s, max: p - 1 });
    }
    (1..=s as i64)
        .map(|t| {
            let k = LatinHypercube::linear(2, p, &[1, t])?;
            LatinSquare::from_hypercube(&k)
        })
        .collect()
}

/// Three mutually orthogonal squares of order 4 from the field with four
/// elements: `L_t(x, y) = x + t y` for the nonzero field elements `t`.
pub fn mols_order4() -> Vec<LatinSquare> {
    // elements 0, 1, a, a+1 encoded as 0..3; addition is xor
    const MUL: [[usize; 4]; 4] = [[0, 0, 0, 0], [0, 1, 2, 3], [0, 2, 3, 1], [0, 3, 1, 2]];
    (1..4)
        .map(|t| {
            let cells = (0..16).map(|f| ((f / 4) ^ MUL[t][f % 4]) + 1).collect();
            LatinSquare::from_cells(4, cells).expect("field construction is Latin")
        })
        .collect()
}

/// The sets `X_{i,j} = {i, m+j, 2m+k^1_{i,j}, .., (s+1)m+k^s_{i,j}}` on
/// `[(s+2)m]`, in row-major cell order.
pub fn mols_x_sets(ks: &[LatinSquare]) -> Result<Vec<Vec<usize>>, LatinError> {
    let m = check_mutually_orthogonal(ks)?;
    Ok((0..m * m)
        .map(|f| {
            let mut x = vec![f / m + 1, m + f % m + 1];
            for (p, k) in ks.iter().enumerate() {
                x.push((p + 2) * m + k.cells[f]);
            }
            x
        })
        .collect())
}

fn all_triples(set: &[usize]) -> impl Iterator<Item = Mask> + '_ {
    let k = set.len();
    bits::k_subsets(k, 3.min(k))
        .into_iter()
        .filter(move |_| k >= 3)
        .map(move |sub| bits::elements(sub).iter().fold(0, |acc, &t| acc | bits::bit(set[t - 1])))
}

/// `C[K_1, .., K_s]` together with all 3-subsets of every `X_{i,j}`.
pub fn mols_circuit_family(ks: &[LatinSquare]) -> Result<CircuitFamily, LatinError> {
    let m = check_mutually_orthogonal(ks)?;
    let n = (ks.len() + 2) * m;
    let mut masks = Vec::new();
    for x in mols_x_sets(ks)? {
        masks.extend(all_triples(&x));
    }
    Ok(CircuitFamily::from_masks(n, 3, masks))
}

/// The rank-3 matroid `M[K_1, .., K_s]` on `(s+2)m` elements built from
/// mutually orthogonal squares. Order 1 gives `U_{2,s+2}`.
pub fn build_matroid_mols(ks: &[LatinSquare]) -> Result<Matroid, LatinError> {
    degenerate(ks, None, &[])
}

/// A set of row and column indices whose block in a square is itself a
/// Latin square on as many symbols.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subsquare {
    rows: Vec<usize>,
    cols: Vec<usize>,
    symbols: Vec<usize>,
}

impl Subsquare {
    pub fn new(k: &LatinSquare, rows: &[usize], cols: &[usize]) -> Result<Self, LatinError> {
        let m = k.order;
        let mut r = rows.to_vec();
        let mut c = cols.to_vec();
        r.sort_unstable();
        r.dedup();
        c.sort_unstable();
        c.dedup();
        if r.len() != rows.len() || c.len() != cols.len() || r.len() != c.len() || r.is_empty() {
            return Err(LatinError::InvalidSubsquare(
                "rows and columns must be nonempty sets of equal size".into(),
            ));
        }
        if r.iter().chain(&c).any(|&x| x == 0 || x > m) {
            return Err(LatinError::InvalidSubsquare(format!("indices must lie in [1, {m}]")));
        }
        let mut symbols: Vec<usize> = r
            .iter()
            .flat_map(|&i| c.iter().map(move |&j| (i, j)))
            .map(|(i, j)| k.get(i, j))
            .collect();
        symbols.sort_unstable();
        symbols.dedup();
        if symbols.len() != r.len() {
            return Err(LatinError::InvalidSubsquare(format!(
                "block on rows {r:?}, columns {c:?} uses {} symbols",
                symbols.len()
            )));
        }
        Ok(Subsquare {
            rows: r,
            cols: c,
            symbols,
        })
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[usize] {
        &self.rows
    }

    pub fn cols(&self) -> &[usize] {
        &self.cols
    }

    pub fn symbols(&self) -> &[usize] {
        &self.symbols
    }

    /// `X(J)`: the labels of the subsquare's rows, columns and symbols.
    pub fn x_set(&self, k: &LatinSquare) -> Vec<usize> {
        let mut x: Vec<usize> = self
            .rows
            .iter()
            .map(|&i| k.labels[ROWS][i - 1])
            .chain(self.cols.iter().map(|&j| k.labels[COLS][j - 1]))
            .chain(self.symbols.iter().map(|&s| k.labels[SYMBOLS][s - 1]))
            .collect();
        x.sort_unstable();
        x
    }
}

/// All Latin `s`-subsquares of `k`. Proper subsquares need `2 <= s <= m/2`;
/// any other `s` yields an empty list.
pub fn find_subsquares(k: &LatinSquare, s: usize) -> Vec<Subsquare> {
    let m = k.order;
    if s < 2 || 2 * s > m {
        return Vec::new();
    }
    let subsets = bits::k_subsets(m, s);
    let mut out = Vec::new();
    for &rm in &subsets {
        let rows = bits::elements(rm);
        for &cm in &subsets {
            let cols = bits::elements(cm);
            let mut syms: Mask = 0;
            for &i in &rows {
                for &j in &cols {
                    syms |= bits::bit(k.get(i, j));
                }
            }
            if bits::size(syms) == s {
                out.push(Subsquare {
                    rows: rows.clone(),
                    cols: cols.clone(),
                    symbols: bits::elements(syms),
                });
            }
        }
    }
    out
}

/// `M[K_1, .., K_s : M_1, .., M_{s+2}]`: the orthogonal-family matroid with
/// the 3-circuits of simple block matroids `M_i` (on `I_i`, relabelled to
/// `1..=m`) added.
pub fn degenerate_with_blocks(ks: &[LatinSquare], blocks: &[Matroid]) -> Result<Matroid, LatinError> {
    degenerate(ks, Some(blocks), &[])
}

/// `M[K; J]`: adds every 3-subset of `X(J)`.
pub fn degenerate_with_subsquare(k: &LatinSquare, j: &Subsquare) -> Result<Matroid, LatinError> {
    degenerate(std::slice::from_ref(k), None, std::slice::from_ref(j))
}

/// The general degeneration: the family of `ks` plus block 3-circuits plus
/// all 3-subsets of each `X(J)`. Subsquares require a single square.
pub fn degenerate(
    ks: &[LatinSquare],
    blocks: Option<&[Matroid]>,
    subsquares: &[Subsquare],
) -> Result<Matroid, LatinError> {
    let m = check_mutually_orthogonal(ks)?;
    let n = (ks.len() + 2) * m;
    if m == 1 {
        return Ok(Matroid::uniform(2, n)?);
    }
    let mut masks = mols_circuit_family(ks)?.masks();
    if ks.len() == 1 {
        // single square: labels may be custom
        masks = ks[0].circuit_family()?.masks();
    }
    if let Some(blocks) = blocks {
        if blocks.len() != ks.len() + 2 {
            return Err(LatinError::InvalidBlocks(format!(
                "expected {} block matroids, found {}",
                ks.len() + 2,
                blocks.len()
            )));
        }
        for (b, mb) in blocks.iter().enumerate() {
            if mb.n() != m {
                return Err(LatinError::InvalidBlocks(format!(
                    "block {} has {} elements, expected {m}",
                    b + 1,
                    mb.n()
                )));
            }
            if !mb.is_simple() {
                return Err(LatinError::InvalidBlocks(format!("block {} is not simple", b + 1)));
            }
            if mb.rank() < 2 && m >= 2 {
                return Err(LatinError::InvalidBlocks(format!("block {} has rank below 2", b + 1)));
            }
            let block: Vec<usize> = if ks.len() == 1 {
                ks[0].labels[b].clone()
            } else {
                (b * m + 1..=(b + 1) * m).collect()
            };
            for &c in mb.circuits_of_size_masks(3) {
                masks.push(bits::elements(c).iter().fold(0, |acc, &e| acc | bits::bit(block[e - 1])));
            }
        }
    }
    if !subsquares.is_empty() && ks.len() != 1 {
        return Err(LatinError::InvalidSubsquare(
            "subsquare degenerations take a single square".into(),
        ));
    }
    for j in subsquares {
        let fresh = Subsquare::new(&ks[0], &j.rows, &j.cols)?;
        if fresh != *j {
            return Err(LatinError::InvalidSubsquare("subsquare does not match the square".into()));
        }
        masks.extend(all_triples(&j.x_set(&ks[0])));
    }
    let family = CircuitFamily::from_masks(n, 3, masks);
    Ok(matroid_from_top_circuits(&family, 2, n)?)
}

/// `gcd(c, m) == 1` for every coefficient, the condition for
/// [`LatinHypercube::linear`] to produce a Latin array.
pub fn linear_coefficients_are_units(order: usize, coeffs: &[i64]) -> bool {
    coeffs.iter().all(|&c| c.rem_euclid(order as i64).gcd(&(order as i64)) == 1)
}
