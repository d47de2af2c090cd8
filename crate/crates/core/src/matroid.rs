//! Matroids given by their circuits: construction from a family of
//! top-size circuits, rank/independence/closure oracles, broken circuits
//! and nbc sets, restriction and isomorphism.

use std::collections::{HashMap, HashSet, VecDeque};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bits::{self, Mask, MAX_GROUND};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatroidError {
    #[error("circuit family members must have size {expected}, found {found:?}")]
    WrongCircuitSize { expected: usize, found: Vec<usize> },
    #[error("not a circuit family: {0:?} and {1:?} span a set with a missing subset {2:?}")]
    NotCircuitFamily(Vec<usize>, Vec<usize>, Vec<usize>),
    #[error("degenerate: uniform U_{{{l},{n}}}")]
    Degenerate { l: usize, n: usize },
    #[error("loop: element {0} is dependent on its own")]
    Loop(usize),
    #[error("element {element} outside [1, {n}]")]
    OutOfRange { element: usize, n: usize },
    #[error("ground set of {0} elements exceeds the supported maximum of {MAX_GROUND}")]
    TooLarge(usize),
    #[error("invalid circuit family: {0}")]
    InvalidCircuits(String),
    #[error("order is not a permutation of [{0}]")]
    InvalidOrder(usize),
    #[error("stated rank {stated} does not match the circuits (computed {computed})")]
    RankMismatch { stated: usize, computed: usize },
}

fn check_ground(n: usize) -> Result<(), MatroidError> {
    if n > MAX_GROUND {
        Err(MatroidError::TooLarge(n))
    } else {
        Ok(())
    }
}

fn checked_mask(set: &[usize], n: usize) -> Result<Mask, MatroidError> {
    for &e in set {
        if e == 0 || e > n {
            return Err(MatroidError::OutOfRange { element: e, n });
        }
    }
    Ok(bits::mask_of(set))
}

/// A family of `k`-subsets of `[n]`, kept sorted and duplicate free.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CircuitFamily {
    n: usize,
    k: usize,
    members: Vec<Vec<usize>>,
}

impl CircuitFamily {
    pub fn new(n: usize, k: usize, members: Vec<Vec<usize>>) -> Result<Self, MatroidError> {
        check_ground(n)?;
        let mut masks = Vec::with_capacity(members.len());
        for s in &members {
            let m = checked_mask(s, n)?;
            if bits::size(m) != k || s.len() != k {
                return Err(MatroidError::WrongCircuitSize {
                    expected: k,
                    found: s.clone(),
                });
            }
            masks.push(m);
        }
        Ok(Self::from_masks(n, k, masks))
    }

    pub(crate) fn from_masks(n: usize, k: usize, mut masks: Vec<Mask>) -> Self {
        masks.sort_by(|a, b| bits::lex_cmp(*a, *b));
        masks.dedup();
        CircuitFamily {
            n,
            k,
            members: masks.into_iter().map(bits::elements).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Members as increasing tuples, sorted lexicographically.
    pub fn members(&self) -> &[Vec<usize>] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, set: &[usize]) -> bool {
        let mut s = set.to_vec();
        s.sort_unstable();
        self.members.binary_search(&s).is_ok()
    }

    pub(crate) fn masks(&self) -> Vec<Mask> {
        self.members.iter().map(|s| bits::mask_of(s)).collect()
    }

    /// Union of two families on the same ground set and member size.
    pub fn union(&self, other: &CircuitFamily) -> Result<CircuitFamily, MatroidError> {
        if self.n != other.n || self.k != other.k {
            return Err(MatroidError::InvalidCircuits(format!(
                "cannot merge families on ({}, {}) and ({}, {})",
                self.n, self.k, other.n, other.k
            )));
        }
        let mut masks = self.masks();
        masks.extend(other.masks());
        Ok(Self::from_masks(self.n, self.k, masks))
    }
}

/// Condition on a family of `(l+1)`-sets: whenever two members span only
/// `l+2` elements, every `(l+1)`-subset of their union is a member.
pub fn check_condition(c: &CircuitFamily, l: usize) -> Result<bool, MatroidError> {
    Ok(first_condition_violation(c, l)?.is_none())
}

fn first_condition_violation(
    c: &CircuitFamily,
    l: usize,
) -> Result<Option<(Mask, Mask, Mask)>, MatroidError> {
    if c.k != l + 1 {
        let found = c.members.first().cloned().unwrap_or_default();
        return Err(MatroidError::WrongCircuitSize {
            expected: l + 1,
            found,
        });
    }
    let masks = c.masks();
    let set: HashSet<Mask> = masks.iter().copied().collect();
    for (i, &a) in masks.iter().enumerate() {
        for &b in &masks[i + 1..] {
            let u = a | b;
            if bits::size(u) != l + 2 {
                continue;
            }
            let mut rest = u;
            while rest != 0 {
                let low = rest & rest.wrapping_neg();
                let sub = u & !low;
                if !set.contains(&sub) {
                    return Ok(Some((a, b, sub)));
                }
                rest &= rest - 1;
            }
        }
    }
    Ok(None)
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// A matroid on `[n]` stored by its complete circuit family.
#[derive(Clone, Debug)]
pub struct Matroid {
    n: usize,
    rank: usize,
    /// Sorted lexicographically as increasing tuples.
    circuits: Vec<Mask>,
    /// Index into `circuits` grouped by size.
    by_size: Vec<Vec<Mask>>,
    circuit_set: HashSet<Mask>,
}

impl PartialEq for Matroid {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.rank == other.rank && self.circuits == other.circuits
    }
}

impl Eq for Matroid {}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct MatroidJson {
    pub n: usize,
    pub rank: usize,
    pub circuits: Vec<Vec<usize>>,
}

impl Matroid {
    /// Builds a matroid from a trusted, complete circuit family; computes
    /// the rank greedily.
    pub(crate) fn from_circuit_masks(n: usize, mut circuits: Vec<Mask>) -> Self {
        circuits.sort_by(|a, b| bits::lex_cmp(*a, *b));
        circuits.dedup();
        let max = circuits.iter().map(|&c| bits::size(c)).max().unwrap_or(0);
        let mut by_size = vec![Vec::new(); max + 1];
        for &c in &circuits {
            by_size[bits::size(c)].push(c);
        }
        let circuit_set = circuits.iter().copied().collect();
        let mut m = Matroid {
            n,
            rank: n,
            circuits,
            by_size,
            circuit_set,
        };
        m.rank = m.greedy_rank(bits::full(n));
        m
    }

    /// Builds a matroid from an explicit circuit list, validating the
    /// clutter and elimination axioms.
    pub fn from_circuits(n: usize, circuits: &[Vec<usize>]) -> Result<Self, MatroidError> {
        check_ground(n)?;
        let masks = circuits
            .iter()
            .map(|c| {
                if c.is_empty() {
                    return Err(MatroidError::InvalidCircuits("empty circuit".into()));
                }
                checked_mask(c, n)
            })
            .collect::<Result<Vec<_>, _>>()?;
        let m = Self::from_circuit_masks(n, masks);
        m.check_circuit_axioms()
            .map_err(MatroidError::InvalidCircuits)?;
        Ok(m)
    }

    /// The uniform matroid `U_{r,n}`.
    pub fn uniform(r: usize, n: usize) -> Result<Self, MatroidError> {
        check_ground(n)?;
        if r > n {
            return Err(MatroidError::InvalidCircuits(format!("U_{{{r},{n}}} needs r <= n")));
        }
        let circuits = if r == n { Vec::new() } else { bits::k_subsets(n, r + 1) };
        Ok(Self::from_circuit_masks(n, circuits))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn num_circuits(&self) -> usize {
        self.circuits.len()
    }

    /// All circuits as increasing tuples, lexicographically sorted.
    pub fn circuits(&self) -> Vec<Vec<usize>> {
        self.circuits.iter().map(|&c| bits::elements(c)).collect()
    }

    pub(crate) fn circuit_masks(&self) -> &[Mask] {
        &self.circuits
    }

    pub(crate) fn circuits_of_size_masks(&self, k: usize) -> &[Mask] {
        self.by_size.get(k).map(|v| v.as_slice()).unwrap_or(&[])
    }

    /// The circuits of size `k`.
    pub fn circuits_of_size(&self, k: usize) -> CircuitFamily {
        CircuitFamily::from_masks(self.n, k, self.circuits_of_size_masks(k).to_vec())
    }

    pub fn is_circuit(&self, set: &[usize]) -> bool {
        self.circuit_set.contains(&bits::mask_of(set))
    }

    pub(crate) fn is_circuit_mask(&self, m: Mask) -> bool {
        self.circuit_set.contains(&m)
    }

    /// Counts of circuits indexed by size.
    pub fn circuit_size_profile(&self) -> Vec<usize> {
        self.by_size.iter().map(|v| v.len()).collect()
    }

    pub(crate) fn is_independent_mask(&self, s: Mask) -> bool {
        let k = bits::size(s);
        if k > self.rank {
            return false;
        }
        self.by_size
            .iter()
            .take(k + 1)
            .flatten()
            .all(|&c| c & !s != 0)
    }

    pub fn is_independent(&self, set: &[usize]) -> bool {
        self.is_independent_mask(bits::mask_of(set))
    }

    /// Contains some circuit; does not consult the rank.
    fn contains_circuit(&self, s: Mask) -> bool {
        let k = bits::size(s);
        self.by_size.iter().take(k + 1).flatten().any(|&c| c & !s == 0)
    }

    fn greedy_rank(&self, s: Mask) -> usize {
        let mut basis: Mask = 0;
        let mut rest = s;
        while rest != 0 {
            let low = rest & rest.wrapping_neg();
            if !self.contains_circuit(basis | low) {
                basis |= low;
            }
            rest &= rest - 1;
        }
        bits::size(basis)
    }

    pub(crate) fn rank_of_mask(&self, s: Mask) -> usize {
        let mut basis: Mask = 0;
        let mut rest = s;
        while rest != 0 {
            let low = rest & rest.wrapping_neg();
            if self.is_independent_mask(basis | low) {
                basis |= low;
                if bits::size(basis) == self.rank {
                    break;
                }
            }
            rest &= rest - 1;
        }
        bits::size(basis)
    }

    pub fn rank_of(&self, set: &[usize]) -> usize {
        self.rank_of_mask(bits::mask_of(set))
    }

    pub(crate) fn closure_mask(&self, s: Mask) -> Mask {
        let r = self.rank_of_mask(s);
        let mut cl = s;
        for e in 1..=self.n {
            let b = bits::bit(e);
            if s & b == 0 && self.rank_of_mask(s | b) == r {
                cl |= b;
            }
        }
        cl
    }

    pub fn closure(&self, set: &[usize]) -> Vec<usize> {
        bits::elements(self.closure_mask(bits::mask_of(set)))
    }

    /// All flats of rank `k`, each as an increasing tuple, sorted.
    pub fn flats_of_rank(&self, k: usize) -> Vec<Vec<usize>> {
        let mut flats: Vec<Mask> = bits::k_subsets(self.n, k)
            .into_iter()
            .filter(|&s| self.is_independent_mask(s))
            .map(|s| self.closure_mask(s))
            .collect::<HashSet<_>>()
            .into_iter()
            .collect();
        flats.sort_by(|a, b| bits::lex_cmp(*a, *b));
        flats.into_iter().map(bits::elements).collect()
    }

    pub fn loops(&self) -> Vec<usize> {
        self.circuits_of_size_masks(1)
            .iter()
            .map(|&c| bits::min_element(c))
            .collect()
    }

    /// True iff every circuit has more than `l` elements.
    pub fn is_generic(&self, l: usize) -> bool {
        self.by_size.iter().take(l + 1).all(|v| v.is_empty())
    }

    pub fn is_simple(&self) -> bool {
        self.is_generic(2)
    }

    /// Validates a linear order given as the list of elements from least to
    /// greatest; returns each element's position.
    pub(crate) fn order_positions(&self, order: &[usize]) -> Result<Vec<usize>, MatroidError> {
        if order.len() != self.n {
            return Err(MatroidError::InvalidOrder(self.n));
        }
        let mut pos = vec![usize::MAX; self.n + 1];
        for (i, &e) in order.iter().enumerate() {
            if e == 0 || e > self.n || pos[e] != usize::MAX {
                return Err(MatroidError::InvalidOrder(self.n));
            }
            pos[e] = i;
        }
        Ok(pos)
    }

    fn ensure_loopless(&self) -> Result<(), MatroidError> {
        match self.loops().first() {
            Some(&e) => Err(MatroidError::Loop(e)),
            None => Ok(()),
        }
    }

    /// Broken circuits with respect to `order`: each circuit minus its
    /// least element.
    pub fn broken_circuits(&self, order: &[usize]) -> Result<Vec<Vec<usize>>, MatroidError> {
        self.ensure_loopless()?;
        let pos = self.order_positions(order)?;
        let mut out: Vec<Mask> = self
            .circuits
            .iter()
            .map(|&c| {
                let least = bits::elements(c)
                    .into_iter()
                    .min_by_key(|&e| pos[e])
                    .expect("circuits are nonempty");
                c & !bits::bit(least)
            })
            .collect();
        out.sort_by(|a, b| bits::lex_cmp(*a, *b));
        out.dedup();
        Ok(out.into_iter().map(bits::elements).collect())
    }

    /// The `p`-subsets containing no broken circuit, for `order`.
    pub fn nbc_sets(&self, order: &[usize], p: usize) -> Result<Vec<Vec<usize>>, MatroidError> {
        let broken: Vec<Mask> = self
            .broken_circuits(order)?
            .iter()
            .map(|s| bits::mask_of(s))
            .collect();
        Ok(bits::k_subsets(self.n, p)
            .into_iter()
            .filter(|&s| broken.iter().all(|&b| b & !s != 0))
            .map(bits::elements)
            .collect())
    }

    /// Restriction to `set`, relabelled to `1..=|set|` in increasing order.
    pub fn restriction(&self, set: &[usize]) -> Result<Matroid, MatroidError> {
        let s = checked_mask(set, self.n)?;
        let elems = bits::elements(s);
        let relabel = |c: Mask| -> Mask {
            bits::elements(c).iter().fold(0, |acc, e| {
                let idx = elems.binary_search(e).expect("circuit inside the set") + 1;
                acc | bits::bit(idx)
            })
        };
        let circuits = self
            .circuits
            .iter()
            .filter(|&&c| c & !s == 0)
            .map(|&c| relabel(c))
            .collect();
        Ok(Matroid::from_circuit_masks(elems.len(), circuits))
    }

    /// Deletes loops and keeps the least element of each parallel class.
    /// Returns the simple matroid and the kept elements in order.
    pub fn simplification(&self) -> (Matroid, Vec<usize>) {
        let loops = bits::mask_of(&self.loops());
        let mut keep = Vec::new();
        let mut covered: Mask = loops;
        for e in 1..=self.n {
            if covered & bits::bit(e) != 0 {
                continue;
            }
            keep.push(e);
            for &c in self.circuits_of_size_masks(2) {
                if c & bits::bit(e) != 0 {
                    covered |= c;
                }
            }
        }
        let m = self
            .restriction(&keep)
            .expect("kept elements lie in the ground set");
        (m, keep)
    }

    /// Verifies the circuit axioms exhaustively: no empty circuit, no
    /// circuit inside another, and circuit elimination.
    pub fn check_circuit_axioms(&self) -> Result<(), String> {
        for &c in &self.circuits {
            if c == 0 {
                return Err("empty circuit".into());
            }
        }
        for (i, &a) in self.circuits.iter().enumerate() {
            for &b in &self.circuits[i + 1..] {
                if a & !b == 0 || b & !a == 0 {
                    return Err(format!(
                        "{:?} and {:?} are nested",
                        bits::elements(a),
                        bits::elements(b)
                    ));
                }
            }
        }
        let dependent: Box<dyn Fn(Mask) -> bool> = if self.n <= 20 {
            let size = 1usize << self.n;
            let mut table = vec![false; size];
            for &c in &self.circuits {
                table[c as usize] = true;
            }
            for i in 0..self.n {
                let b = 1usize << i;
                for s in 0..size {
                    if s & b != 0 && table[s ^ b] {
                        table[s] = true;
                    }
                }
            }
            Box::new(move |s: Mask| table[s as usize])
        } else {
            Box::new(|s: Mask| self.contains_circuit(s))
        };
        for (i, &a) in self.circuits.iter().enumerate() {
            for &b in &self.circuits[i + 1..] {
                let common = a & b;
                if common == 0 {
                    continue;
                }
                let union = a | b;
                let mut rest = common;
                while rest != 0 {
                    let low = rest & rest.wrapping_neg();
                    if !dependent(union & !low) {
                        return Err(format!(
                            "elimination fails for {:?}, {:?} at {}",
                            bits::elements(a),
                            bits::elements(b),
                            bits::min_element(low)
                        ));
                    }
                    rest &= rest - 1;
                }
            }
        }
        Ok(())
    }

    /// A bijection `perm` of the ground sets (`perm[i-1]` is the image of
    /// `i`) carrying the circuits of `self` onto those of `other`, if any.
    pub fn isomorphic(&self, other: &Matroid) -> Option<Vec<usize>> {
        Isomorphism::new(self, other)?.search()
    }

    pub fn to_json(&self) -> MatroidJson {
        MatroidJson {
            n: self.n,
            rank: self.rank,
            circuits: self.circuits(),
        }
    }

    pub fn from_json(j: &MatroidJson) -> Result<Matroid, MatroidError> {
        let m = Matroid::from_circuits(j.n, &j.circuits)?;
        if m.rank != j.rank {
            return Err(MatroidError::RankMismatch {
                stated: j.rank,
                computed: m.rank,
            });
        }
        Ok(m)
    }
}

/// The unique `l`-generic matroid of rank `l+1` on `[n]` whose
/// `(l+1)`-circuits are exactly `c`.
pub fn matroid_from_top_circuits(
    c: &CircuitFamily,
    l: usize,
    n: usize,
) -> Result<Matroid, MatroidError> {
    check_ground(n)?;
    if c.n != n {
        return Err(MatroidError::InvalidCircuits(format!(
            "family lives on [{}], expected [{}]",
            c.n, n
        )));
    }
    if n < l + 1 {
        return Err(MatroidError::InvalidCircuits(format!(
            "a rank {} matroid needs at least {} elements, got {n}",
            l + 1,
            l + 1
        )));
    }
    if let Some((a, b, missing)) = first_condition_violation(c, l)? {
        return Err(MatroidError::NotCircuitFamily(
            bits::elements(a),
            bits::elements(b),
            bits::elements(missing),
        ));
    }
    if c.len() as u128 == binomial(n, l + 1) {
        return Err(MatroidError::Degenerate { l, n });
    }
    let top = c.masks();
    let set: HashSet<Mask> = top.iter().copied().collect();
    let mut circuits = top;
    for s in bits::k_subsets(n, l + 2) {
        let mut rest = s;
        let mut free = true;
        while rest != 0 {
            let low = rest & rest.wrapping_neg();
            if set.contains(&(s & !low)) {
                free = false;
                break;
            }
            rest &= rest - 1;
        }
        if free {
            circuits.push(s);
        }
    }
    let m = Matroid::from_circuit_masks(n, circuits);
    debug_assert_eq!(m.rank, l + 1);
    Ok(m)
}

struct Isomorphism<'a> {
    a: &'a Matroid,
    b: &'a Matroid,
    /// Circuits of size at most the rank; the rest are determined by them.
    small_a: Vec<Mask>,
    small_b: Vec<Mask>,
    sig_a: Vec<Vec<usize>>,
    sig_b: Vec<Vec<usize>>,
    pair_a: Vec<Vec<u32>>,
    pair_b: Vec<Vec<u32>>,
    through_a: Vec<Vec<Mask>>,
    through_b: Vec<Vec<Mask>>,
}

impl<'a> Isomorphism<'a> {
    fn new(a: &'a Matroid, b: &'a Matroid) -> Option<Self> {
        if a.n != b.n || a.rank != b.rank || a.circuit_size_profile() != b.circuit_size_profile() {
            return None;
        }
        let r = a.rank;
        let small = |m: &Matroid| -> Vec<Mask> {
            m.circuits.iter().copied().filter(|&c| bits::size(c) <= r).collect()
        };
        let small_a = small(a);
        let small_b = small(b);
        let n = a.n;
        let sig = |m: &Matroid| -> Vec<Vec<usize>> {
            (1..=n)
                .map(|e| {
                    let mut v = vec![0usize; m.by_size.len()];
                    for &c in &m.circuits {
                        if c & bits::bit(e) != 0 {
                            v[bits::size(c)] += 1;
                        }
                    }
                    v
                })
                .collect()
        };
        let pair = |cs: &[Mask]| -> Vec<Vec<u32>> {
            let mut p = vec![vec![0u32; n + 1]; n + 1];
            for &c in cs {
                let el = bits::elements(c);
                for &x in &el {
                    for &y in &el {
                        if x != y {
                            p[x][y] += 1;
                        }
                    }
                }
            }
            p
        };
        let through = |cs: &[Mask]| -> Vec<Vec<Mask>> {
            let mut t = vec![Vec::new(); n + 1];
            for &c in cs {
                for e in bits::elements(c) {
                    t[e].push(c);
                }
            }
            t
        };
        let sig_a = sig(a);
        let sig_b = sig(b);
        let mut sa = sig_a.clone();
        let mut sb = sig_b.clone();
        sa.sort();
        sb.sort();
        if sa != sb {
            return None;
        }
        Some(Isomorphism {
            a,
            b,
            pair_a: pair(&small_a),
            pair_b: pair(&small_b),
            through_a: through(&small_a),
            through_b: through(&small_b),
            small_a,
            small_b,
            sig_a,
            sig_b,
        })
    }

    /// Elements of `a` in breadth-first order along small circuits, so that
    /// each assignment is constrained by earlier ones.
    fn element_order(&self) -> Vec<usize> {
        let n = self.a.n;
        let mut seen = vec![false; n + 1];
        let mut order = Vec::with_capacity(n);
        for start in 1..=n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut queue = VecDeque::from([start]);
            while let Some(x) = queue.pop_front() {
                order.push(x);
                let mut nbrs: Vec<usize> = (1..=n)
                    .filter(|&y| !seen[y] && self.pair_a[x][y] > 0)
                    .collect();
                nbrs.sort_by_key(|&y| std::cmp::Reverse(self.pair_a[x][y]));
                for y in nbrs {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        order
    }

    fn search(&self) -> Option<Vec<usize>> {
        let n = self.a.n;
        let order = self.element_order();
        let mut map = vec![0usize; n + 1];
        let mut used = vec![false; n + 1];
        if self.extend(&order, 0, &mut map, &mut used, 0, 0) {
            Some(map[1..].to_vec())
        } else {
            None
        }
    }

    fn extend(
        &self,
        order: &[usize],
        depth: usize,
        map: &mut [usize],
        used: &mut [bool],
        dom: Mask,
        img: Mask,
    ) -> bool {
        if depth == order.len() {
            return self.full_check(map);
        }
        let x = order[depth];
        for y in 1..=self.b.n {
            if used[y] || self.sig_a[x - 1] != self.sig_b[y - 1] {
                continue;
            }
            if !order[..depth]
                .iter()
                .all(|&z| self.pair_a[x][z] == self.pair_b[y][map[z]])
            {
                continue;
            }
            map[x] = y;
            let dom2 = dom | bits::bit(x);
            let img2 = img | bits::bit(y);
            if !self.closed_circuits_agree(x, y, map, dom2, img2) {
                continue;
            }
            used[y] = true;
            if self.extend(order, depth + 1, map, used, dom2, img2) {
                return true;
            }
            used[y] = false;
        }
        false
    }

    /// Small circuits through `x` lying in the assigned domain must map to
    /// circuits, and their number must match those through `y` in the image.
    fn closed_circuits_agree(&self, x: usize, y: usize, map: &[usize], dom: Mask, img: Mask) -> bool {
        let mut count_a = 0;
        for &c in &self.through_a[x] {
            if c & !dom == 0 {
                let image = bits::elements(c).iter().fold(0, |acc, &e| acc | bits::bit(map[e]));
                if !self.b.is_circuit_mask(image) {
                    return false;
                }
                count_a += 1;
            }
        }
        let count_b = self.through_b[y].iter().filter(|&&c| c & !img == 0).count();
        count_a == count_b
    }

    fn full_check(&self, map: &[usize]) -> bool {
        let image = |c: Mask| bits::elements(c).iter().fold(0, |acc, &e| acc | bits::bit(map[e]));
        let mapped: HashSet<Mask> = self.small_a.iter().map(|&c| image(c)).collect();
        let target: HashSet<Mask> = self.small_b.iter().copied().collect();
        if mapped != target {
            return false;
        }
        self.a.circuits.iter().all(|&c| self.b.is_circuit_mask(image(c)))
    }
}

/// Counts of `p`-element nbc sets, `p = 0..=rank`, for the natural order.
pub fn nbc_counts(m: &Matroid) -> Result<Vec<usize>, MatroidError> {
    let order: Vec<usize> = (1..=m.n()).collect();
    (0..=m.rank())
        .map(|p| m.nbc_sets(&order, p).map(|v| v.len()))
        .collect()
}

/// Groups parallel elements; maps each element to its class minimum.
pub fn parallel_classes(m: &Matroid) -> HashMap<usize, usize> {
    let mut rep: HashMap<usize, usize> = (1..=m.n()).map(|e| (e, e)).collect();
    for c in m.circuits_of_size_masks(2) {
        let e = bits::elements(*c);
        let r = rep[&e[0]].min(rep[&e[1]]);
        rep.insert(e[0], r);
        rep.insert(e[1], r);
    }
    rep
}
