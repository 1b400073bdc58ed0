//! Finite posets, read as finite T0-spaces.
//!
//! A point `x` has minimal open set `U_x = {y : y <= x}`, so the open sets of
//! the space are exactly the down-closed subsets. Elements carry opaque string
//! ids and every operation breaks ties by declaration order.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};

/// Largest poset accepted by [`Poset::topology_census`].
pub const CENSUS_LIMIT: usize = 20;

#[inline]
fn words_for(n: usize) -> usize {
    n.div_ceil(64)
}

#[inline]
fn bit(row: &[u64], j: usize) -> bool {
    row[j / 64] >> (j % 64) & 1 == 1
}

#[inline]
fn set_bit(row: &mut [u64], j: usize) {
    row[j / 64] |= 1 << (j % 64);
}

fn ones(row: &[u64]) -> impl Iterator<Item = usize> + '_ {
    row.iter().enumerate().flat_map(|(w, &word)| {
        let mut word = word;
        core::iter::from_fn(move || {
            if word == 0 {
                return None;
            }
            let tz = word.trailing_zeros() as usize;
            word &= word - 1;
            Some(w * 64 + tz)
        })
    })
}

/// A finite partially ordered set with named elements.
///
/// The order is stored twice, as per-element down-set rows and up-set rows,
/// each a bit row of length `len()`.
#[derive(Clone, PartialEq, Eq)]
pub struct Poset {
    names: Vec<String>,
    index: BTreeMap<String, usize>,
    stride: usize,
    down: Vec<u64>,
    up: Vec<u64>,
}

impl fmt::Debug for Poset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let covers: Vec<_> = self
            .covers()
            .into_iter()
            .map(|(x, y)| format!("{}<{}", self.names[x], self.names[y]))
            .collect();
        f.debug_struct("Poset")
            .field("elements", &self.names)
            .field("covers", &covers)
            .finish()
    }
}

impl Poset {
    /// The empty poset.
    pub fn empty() -> Self {
        Poset {
            names: Vec::new(),
            index: BTreeMap::new(),
            stride: 0,
            down: Vec::new(),
            up: Vec::new(),
        }
    }

    /// Builds the poset generated by `relations`, where each pair `(a, b)`
    /// asserts `a <= b`. Pairs may be covers or any comparabilities; the
    /// reflexive-transitive closure is taken.
    pub fn new<E, R>(elements: E, relations: R) -> Result<Self>
    where
        E: IntoIterator,
        E::Item: Into<String>,
        R: IntoIterator<Item = (E::Item, E::Item)>,
    {
        let names: Vec<String> = elements.into_iter().map(Into::into).collect();
        let index = build_index(&names)?;
        let mut pairs = Vec::new();
        for (a, b) in relations {
            let (a, b): (String, String) = (a.into(), b.into());
            let ia = *index.get(&a).ok_or(Error::UnknownElement(a))?;
            let ib = *index.get(&b).ok_or(Error::UnknownElement(b))?;
            pairs.push((ia, ib));
        }
        Self::from_pairs(names, &pairs)
    }

    /// Builds a poset from index pairs `(a, b)` meaning `a <= b`.
    pub fn from_pairs(names: Vec<String>, pairs: &[(usize, usize)]) -> Result<Self> {
        let n = names.len();
        let stride = words_for(n);
        let mut down = vec![0u64; n * stride];
        for i in 0..n {
            set_bit(&mut down[i * stride..(i + 1) * stride], i);
        }
        for &(a, b) in pairs {
            if a >= n || b >= n {
                return Err(Error::UnknownElement(format!("#{}", a.max(b))));
            }
            set_bit(&mut down[b * stride..(b + 1) * stride], a);
        }
        Self::close(names, stride, down)
    }

    /// Builds a poset from an arbitrary relation predicate `leq(i, j)`,
    /// closing it transitively.
    pub fn from_relation<F>(names: Vec<String>, leq: F) -> Result<Self>
    where
        F: Fn(usize, usize) -> bool,
    {
        let n = names.len();
        let stride = words_for(n);
        let mut down = vec![0u64; n * stride];
        for j in 0..n {
            let row = &mut down[j * stride..(j + 1) * stride];
            for i in 0..n {
                if i == j || leq(i, j) {
                    set_bit(row, i);
                }
            }
        }
        Self::close(names, stride, down)
    }

    fn close(names: Vec<String>, stride: usize, mut down: Vec<u64>) -> Result<Self> {
        let n = names.len();
        // Warshall over bit rows: if k <= i then everything below k is below i.
        let mut row_k = vec![0u64; stride];
        for k in 0..n {
            row_k.copy_from_slice(&down[k * stride..(k + 1) * stride]);
            for i in 0..n {
                let row_i = &mut down[i * stride..(i + 1) * stride];
                if bit(row_i, k) {
                    for (dst, src) in row_i.iter_mut().zip(&row_k) {
                        *dst |= *src;
                    }
                }
            }
        }
        for i in 0..n {
            for j in ones(&down[i * stride..(i + 1) * stride]) {
                if j != i && bit(&down[j * stride..(j + 1) * stride], i) {
                    let (a, b) = (i.min(j), i.max(j));
                    return Err(Error::Cycle {
                        first: names[a].clone(),
                        second: names[b].clone(),
                    });
                }
            }
        }
        let index = build_index(&names)?;
        Ok(Self::from_closed(names, index, stride, down))
    }

    fn from_closed(
        names: Vec<String>,
        index: BTreeMap<String, usize>,
        stride: usize,
        down: Vec<u64>,
    ) -> Self {
        let n = names.len();
        let mut up = vec![0u64; n * stride];
        for j in 0..n {
            for i in ones(&down[j * stride..(j + 1) * stride]) {
                set_bit(&mut up[i * stride..(i + 1) * stride], j);
            }
        }
        Poset {
            names,
            index,
            stride,
            down,
            up,
        }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    /// Like [`Poset::index_of`], failing with [`Error::UnknownElement`].
    pub fn require(&self, name: &str) -> Result<usize> {
        self.index_of(name)
            .ok_or_else(|| Error::UnknownElement(name.to_string()))
    }

    fn down_row(&self, i: usize) -> &[u64] {
        &self.down[i * self.stride..(i + 1) * self.stride]
    }

    fn up_row(&self, i: usize) -> &[u64] {
        &self.up[i * self.stride..(i + 1) * self.stride]
    }

    /// `i <= j`.
    #[inline]
    pub fn leq(&self, i: usize, j: usize) -> bool {
        bit(self.down_row(j), i)
    }

    #[inline]
    pub fn lt(&self, i: usize, j: usize) -> bool {
        i != j && self.leq(i, j)
    }

    #[inline]
    pub fn comparable(&self, i: usize, j: usize) -> bool {
        self.leq(i, j) || self.leq(j, i)
    }

    /// Indices `y` with `y <= i`, in element order.
    pub fn down_set(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        ones(self.down_row(i))
    }

    /// Indices `y` with `i <= y`, in element order.
    pub fn up_set(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        ones(self.up_row(i))
    }

    /// Number of elements strictly below `i`.
    pub fn below_count(&self, i: usize) -> usize {
        self.down_row(i).iter().map(|w| w.count_ones() as usize).sum::<usize>() - 1
    }

    /// Number of elements strictly above `i`.
    pub fn above_count(&self, i: usize) -> usize {
        self.up_row(i).iter().map(|w| w.count_ones() as usize).sum::<usize>() - 1
    }

    /// Whether `i` is a maximal element.
    pub fn is_maximal(&self, i: usize) -> bool {
        self.above_count(i) == 0
    }

    pub fn is_minimal(&self, i: usize) -> bool {
        self.below_count(i) == 0
    }

    /// The maximum element, if there is one.
    pub fn maximum(&self) -> Option<usize> {
        (0..self.len()).find(|&i| self.below_count(i) + 1 == self.len())
    }

    pub fn minimum(&self) -> Option<usize> {
        (0..self.len()).find(|&i| self.above_count(i) + 1 == self.len())
    }

    /// Cover pairs `(x, y)`: `x < y` with nothing strictly between. Ordered
    /// by `x`, then `y`, in element order.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for x in 0..self.len() {
            for y in self.up_set(x) {
                if y == x {
                    continue;
                }
                let between: u32 = self
                    .up_row(x)
                    .iter()
                    .zip(self.down_row(y))
                    .map(|(a, b)| (a & b).count_ones())
                    .sum();
                if between == 2 {
                    out.push((x, y));
                }
            }
        }
        out
    }

    /// [`Poset::covers`] with element names.
    pub fn cover_names(&self) -> Vec<(&str, &str)> {
        self.covers()
            .into_iter()
            .map(|(x, y)| (self.name(x), self.name(y)))
            .collect()
    }

    /// The minimal open set `U_x = {y : y <= x}`, in element order.
    pub fn minimal_open_set(&self, name: &str) -> Result<Vec<&str>> {
        let x = self.require(name)?;
        Ok(self.down_set(x).map(|y| self.name(y)).collect())
    }

    /// Same elements, order reversed. Open sets of the result are the closed
    /// sets of `self`.
    pub fn opposite(&self) -> Poset {
        Poset {
            names: self.names.clone(),
            index: self.index.clone(),
            stride: self.stride,
            down: self.up.clone(),
            up: self.down.clone(),
        }
    }

    /// The product order on pairs. Element `(x, y)` is named `(x,y)`; pairs
    /// are listed with the left factor varying slowest.
    pub fn product(&self, other: &Poset) -> Poset {
        let (n, m) = (self.len(), other.len());
        let mut names = Vec::with_capacity(n * m);
        for x in &self.names {
            for y in &other.names {
                names.push(format!("({x},{y})"));
            }
        }
        self.product_with_names(other, names)
    }

    pub(crate) fn product_with_names(&self, other: &Poset, names: Vec<String>) -> Poset {
        let m = other.len();
        let total = names.len();
        let stride = words_for(total);
        let mut down = vec![0u64; total * stride];
        for p in 0..total {
            let (x, y) = (p / m, p % m);
            let row = &mut down[p * stride..(p + 1) * stride];
            for x2 in self.down_set(x) {
                for y2 in other.down_set(y) {
                    set_bit(row, x2 * m + y2);
                }
            }
        }
        let index = build_index(&names).expect("product names are distinct");
        Poset::from_closed(names, index, stride, down)
    }

    /// Side-by-side union with no cross comparabilities. Names are kept when
    /// the two sides are disjoint; otherwise every element is tagged `0.` or
    /// `1.` by side.
    pub fn disjoint_union(&self, other: &Poset) -> Poset {
        self.glue(other, false)
    }

    /// Ordinal sum: the union of both sides with every element of `self`
    /// below every element of `other`. Naming follows
    /// [`Poset::disjoint_union`].
    pub fn join(&self, other: &Poset) -> Poset {
        self.glue(other, true)
    }

    fn glue(&self, other: &Poset, stacked: bool) -> Poset {
        let (n, m) = (self.len(), other.len());
        let clash = other.names.iter().any(|s| self.index.contains_key(s));
        let names: Vec<String> = if clash {
            self.names
                .iter()
                .map(|s| format!("0.{s}"))
                .chain(other.names.iter().map(|s| format!("1.{s}")))
                .collect()
        } else {
            self.names.iter().chain(&other.names).cloned().collect()
        };
        let total = n + m;
        let stride = words_for(total);
        let mut down = vec![0u64; total * stride];
        for i in 0..n {
            let row = &mut down[i * stride..(i + 1) * stride];
            for j in self.down_set(i) {
                set_bit(row, j);
            }
        }
        for i in 0..m {
            let row = &mut down[(n + i) * stride..(n + i + 1) * stride];
            for j in other.down_set(i) {
                set_bit(row, n + j);
            }
            if stacked {
                for j in 0..n {
                    set_bit(row, j);
                }
            }
        }
        let index = build_index(&names).expect("glued names are distinct");
        Poset::from_closed(names, index, stride, down)
    }

    /// The subposet on the named elements, listed in `self`'s element order.
    pub fn induced_subposet<'a, I>(&self, subset: I) -> Result<Poset>
    where
        I: IntoIterator<Item = &'a str>,
    {
        let mut keep = vec![false; self.len()];
        for name in subset {
            keep[self.require(name)?] = true;
        }
        let indices: Vec<usize> = (0..self.len()).filter(|&i| keep[i]).collect();
        Ok(self.restrict(&indices))
    }

    /// The subposet on `indices`, in the given order.
    pub fn restrict(&self, indices: &[usize]) -> Poset {
        let k = indices.len();
        let stride = words_for(k);
        let mut down = vec![0u64; k * stride];
        for (a, &i) in indices.iter().enumerate() {
            let row = &mut down[a * stride..(a + 1) * stride];
            for (b, &j) in indices.iter().enumerate() {
                if self.leq(j, i) {
                    set_bit(row, b);
                }
            }
        }
        let names: Vec<String> = indices.iter().map(|&i| self.names[i].clone()).collect();
        let index = build_index(&names).expect("restricted names are distinct");
        Poset::from_closed(names, index, stride, down)
    }

    /// `self` with the element at `i` removed.
    pub fn without(&self, i: usize) -> Poset {
        let keep: Vec<usize> = (0..self.len()).filter(|&j| j != i).collect();
        self.restrict(&keep)
    }

    /// The same poset with elements renamed; the order is carried along by
    /// position.
    pub fn renamed(&self, names: Vec<String>) -> Result<Poset> {
        if names.len() != self.len() {
            return Err(Error::InvalidMap(format!(
                "renaming {} elements with {} names",
                self.len(),
                names.len()
            )));
        }
        let index = build_index(&names)?;
        Ok(Poset::from_closed(
            names,
            index,
            self.stride,
            self.down.clone(),
        ))
    }

    /// Counts the open (down-closed) subsets and the antichains. The map
    /// sending an open set to its maximal elements is a bijection, so the
    /// two counts agree.
    pub fn topology_census(&self) -> Result<TopologyCensus> {
        let n = self.len();
        if n > CENSUS_LIMIT {
            return Err(Error::TooLarge {
                what: "topology census",
                size: n,
                limit: CENSUS_LIMIT,
            });
        }
        let down: Vec<u64> = (0..n).map(|i| self.down_row(i)[0]).collect();
        let comp: Vec<u64> = (0..n)
            .map(|i| (self.down_row(i)[0] | self.up_row(i)[0]) & !(1 << i))
            .collect();
        let (mut open_sets, mut antichains) = (0, 0);
        for set in 0u64..(1 << n) {
            let members = ones(core::slice::from_ref(&set));
            let (mut closed, mut free) = (true, true);
            for x in members {
                closed &= down[x] & !set == 0;
                free &= comp[x] & set == 0;
            }
            open_sets += usize::from(closed);
            antichains += usize::from(free);
        }
        Ok(TopologyCensus {
            open_sets,
            antichains,
        })
    }

    /// For every element, the length of the longest chain ending at it.
    pub fn heights_below(&self) -> Vec<usize> {
        let mut rank = vec![0usize; self.len()];
        for x in self.linear_extension() {
            rank[x] = self
                .down_set(x)
                .filter(|&y| y != x)
                .map(|y| rank[y] + 1)
                .max()
                .unwrap_or(0);
        }
        rank
    }

    /// For every element, the length of the longest chain starting at it.
    pub fn heights_above(&self) -> Vec<usize> {
        let mut rank = vec![0usize; self.len()];
        for x in self.linear_extension().into_iter().rev() {
            rank[x] = self
                .up_set(x)
                .filter(|&y| y != x)
                .map(|y| rank[y] + 1)
                .max()
                .unwrap_or(0);
        }
        rank
    }

    /// A total order refining `<=`. At each step the earliest declared
    /// element whose lower covers are all placed comes next.
    pub fn linear_extension(&self) -> Vec<usize> {
        let n = self.len();
        let mut pending: Vec<usize> = (0..n).map(|i| self.below_count(i)).collect();
        let mut placed = vec![false; n];
        let mut order = Vec::with_capacity(n);
        while order.len() < n {
            let next = (0..n)
                .find(|&i| !placed[i] && pending[i] == 0)
                .expect("a finite poset has a minimal unplaced element");
            placed[next] = true;
            order.push(next);
            for y in self.up_set(next) {
                if y != next {
                    pending[y] -= 1;
                }
            }
        }
        order
    }

    /// Length of the longest chain minus one; zero for the empty poset.
    pub fn height(&self) -> usize {
        self.heights_below().into_iter().max().unwrap_or(0)
    }

    pub fn structure_stats(&self) -> StructureStats {
        StructureStats {
            height: self.height(),
            linear_extension: self.linear_extension(),
        }
    }
}

fn build_index(names: &[String]) -> Result<BTreeMap<String, usize>> {
    let mut index = BTreeMap::new();
    for (i, name) in names.iter().enumerate() {
        if index.insert(name.clone(), i).is_some() {
            return Err(Error::DuplicateElement(name.clone()));
        }
    }
    Ok(index)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TopologyCensus {
    pub open_sets: usize,
    pub antichains: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureStats {
    pub height: usize,
    /// Element indices in extension order.
    pub linear_extension: Vec<usize>,
}

/// An order-preserving (equivalently, continuous) map between posets.
#[derive(Debug, Clone)]
pub struct MonotoneMap<'a> {
    source: &'a Poset,
    target: &'a Poset,
    assignment: Vec<usize>,
}

impl<'a> MonotoneMap<'a> {
    /// `assignment[i]` is the target index of source element `i`.
    pub fn new(source: &'a Poset, target: &'a Poset, assignment: Vec<usize>) -> Result<Self> {
        if assignment.len() != source.len() {
            return Err(Error::InvalidMap(format!(
                "assignment covers {} of {} source elements",
                assignment.len(),
                source.len()
            )));
        }
        if let Some(&bad) = assignment.iter().find(|&&t| t >= target.len()) {
            return Err(Error::InvalidMap(format!("target index {bad} out of range")));
        }
        for x in 0..source.len() {
            for y in source.up_set(x) {
                if !target.leq(assignment[x], assignment[y]) {
                    return Err(Error::InvalidMap(format!(
                        "{} <= {} but their images are not ordered",
                        source.name(x),
                        source.name(y)
                    )));
                }
            }
        }
        Ok(MonotoneMap {
            source,
            target,
            assignment,
        })
    }

    /// Builds a map from `(source name, target name)` pairs.
    pub fn from_names<'n, I>(source: &'a Poset, target: &'a Poset, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (&'n str, &'n str)>,
    {
        let mut assignment = vec![usize::MAX; source.len()];
        for (a, b) in pairs {
            assignment[source.require(a)?] = target.require(b)?;
        }
        if let Some(i) = assignment.iter().position(|&t| t == usize::MAX) {
            return Err(Error::InvalidMap(format!(
                "no image for {}",
                source.name(i)
            )));
        }
        Self::new(source, target, assignment)
    }

    /// The inclusion of `sub` into `sup`, matching elements by name.
    pub fn inclusion(sub: &'a Poset, sup: &'a Poset) -> Result<Self> {
        let assignment = sub
            .names()
            .iter()
            .map(|s| sup.require(s))
            .collect::<Result<Vec<_>>>()?;
        Self::new(sub, sup, assignment)
    }

    pub fn source(&self) -> &Poset {
        self.source
    }

    pub fn target(&self) -> &Poset {
        self.target
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    /// Whether `x <= x'` holds exactly when `f(x) <= f(x')`. For a T0 source
    /// this makes the map injective, i.e. a subspace embedding.
    pub fn is_initial(&self) -> bool {
        let n = self.source.len();
        (0..n).all(|x| {
            (0..n).all(|y| {
                self.source.leq(x, y) == self.target.leq(self.assignment[x], self.assignment[y])
            })
        })
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.target.len()];
        self.assignment
            .iter()
            .all(|&t| !core::mem::replace(&mut seen[t], true))
    }
}
