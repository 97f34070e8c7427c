//! Grids `[n_1] x ... x [n_d]`, the hypergraph families `K` and `P` living on
//! them, the extremal set `U` and its closed-form size.
//!
//! Coordinates are 1-based throughout. The only place 0-based vertex ids
//! show up is [`GridSpec::encode`] / [`GridSpec::decode`].

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GridError {
    #[error("grid needs at least one axis")]
    NoAxes,
    #[error("dims has {dims} entries but thick has {thick}")]
    LengthMismatch { dims: usize, thick: usize },
    #[error("axis {axis}: need 2 <= t <= n, got n={n}, t={t}")]
    BadThickness { axis: usize, n: usize, t: usize },
    #[error("copy rank r={r} must satisfy 1 <= r <= d={d}")]
    BadRank { r: usize, d: usize },
    #[error("grid has too many vertices to index")]
    TooLarge,
    #[error("coordinate {value} on axis {axis} is outside 1..={n}")]
    CoordinateOutOfRange { axis: usize, value: usize, n: usize },
    #[error("multi-index has {got} coordinates, grid has {want} axes")]
    WrongArity { got: usize, want: usize },
    #[error("vertex id {id} out of range (grid has {size} vertices)")]
    IdOutOfRange { id: usize, size: usize },
    #[error("count overflows 128 bits")]
    Overflow,
}

/// Which grid hypergraph family: all induced copies of `K_t^r` (`K`) or only
/// the interval-aligned ones (`P`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    K,
    P,
}

impl Family {
    pub fn as_str(self) -> &'static str {
        match self {
            Family::K => "K",
            Family::P => "P",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "K" | "k" => Ok(Family::K),
            "P" | "p" => Ok(Family::P),
            other => Err(format!("unknown family {other:?} (expected K or P)")),
        }
    }
}

/// Side lengths `n_k`, thicknesses `t_k` and copy rank `r` of a grid family
/// instance. Homogeneous instances are stored in the same per-axis form.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct GridSpec {
    dims: Vec<usize>,
    thick: Vec<usize>,
    r: usize,
}

impl GridSpec {
    pub fn new(dims: Vec<usize>, thick: Vec<usize>, r: usize) -> Result<Self, GridError> {
        if dims.is_empty() {
            return Err(GridError::NoAxes);
        }
        if dims.len() != thick.len() {
            return Err(GridError::LengthMismatch {
                dims: dims.len(),
                thick: thick.len(),
            });
        }
        for (axis, (&n, &t)) in dims.iter().zip(&thick).enumerate() {
            if t < 2 || t > n {
                return Err(GridError::BadThickness { axis, n, t });
            }
        }
        let d = dims.len();
        if r < 1 || r > d {
            return Err(GridError::BadRank { r, d });
        }
        dims.iter()
            .try_fold(1usize, |acc, &n| acc.checked_mul(n))
            .ok_or(GridError::TooLarge)?;
        Ok(GridSpec { dims, thick, r })
    }

    /// `[n]^d` with thickness `t` on every axis.
    pub fn homogeneous(n: usize, d: usize, t: usize, r: usize) -> Result<Self, GridError> {
        Self::new(vec![n; d], vec![t; d], r)
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn thick(&self) -> &[usize] {
        &self.thick
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn d(&self) -> usize {
        self.dims.len()
    }

    /// Number of coordinates projected out by each certificate component,
    /// `d - r + 1`.
    pub fn projected(&self) -> usize {
        self.d() - self.r + 1
    }

    pub fn is_homogeneous(&self) -> bool {
        self.dims.iter().all(|&n| n == self.dims[0])
            && self.thick.iter().all(|&t| t == self.thick[0])
    }

    pub fn num_vertices(&self) -> usize {
        self.dims.iter().product()
    }

    /// Coordinate `k` of `v` is large when `v_k >= t_k`.
    pub fn is_large(&self, axis: usize, value: usize) -> bool {
        value >= self.thick[axis]
    }

    pub fn large_count(&self, v: &MultiIndex) -> usize {
        v.coords()
            .iter()
            .enumerate()
            .filter(|&(k, &x)| self.is_large(k, x))
            .count()
    }

    pub fn in_u(&self, v: &MultiIndex) -> bool {
        self.large_count(v) < self.r
    }

    pub fn check(&self, v: &MultiIndex) -> Result<(), GridError> {
        if v.coords.len() != self.d() {
            return Err(GridError::WrongArity {
                got: v.coords.len(),
                want: self.d(),
            });
        }
        for (axis, (&value, &n)) in v.coords.iter().zip(&self.dims).enumerate() {
            if value < 1 || value > n {
                return Err(GridError::CoordinateOutOfRange { axis, value, n });
            }
        }
        Ok(())
    }

    /// Row-major id: `sum_k (v_k - 1) * prod_{l > k} n_l`.
    pub fn encode(&self, v: &MultiIndex) -> Result<usize, GridError> {
        self.check(v)?;
        Ok(self.encode_unchecked(v.coords()))
    }

    pub(crate) fn encode_unchecked(&self, coords: &[usize]) -> usize {
        coords
            .iter()
            .zip(&self.dims)
            .fold(0, |acc, (&x, &n)| acc * n + (x - 1))
    }

    pub fn decode(&self, id: usize) -> Result<MultiIndex, GridError> {
        let size = self.num_vertices();
        if id >= size {
            return Err(GridError::IdOutOfRange { id, size });
        }
        Ok(self.decode_unchecked(id))
    }

    pub(crate) fn decode_unchecked(&self, mut id: usize) -> MultiIndex {
        let mut coords = vec![0; self.d()];
        for (slot, &n) in coords.iter_mut().zip(&self.dims).rev() {
            *slot = id % n + 1;
            id /= n;
        }
        MultiIndex::new(coords)
    }

    /// All vertices in id order.
    pub fn vertices(&self) -> impl Iterator<Item = MultiIndex> + '_ {
        (0..self.num_vertices()).map(move |id| self.decode_unchecked(id))
    }
}

impl fmt::Display for GridSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |xs: &[usize]| {
            xs.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        write!(
            f,
            "n=({}) t=({}) r={}",
            join(&self.dims),
            join(&self.thick),
            self.r
        )
    }
}

/// A grid point `v = (v_1, ..., v_d)`, 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MultiIndex {
    coords: Vec<usize>,
}

impl MultiIndex {
    pub fn new(coords: Vec<usize>) -> Self {
        MultiIndex { coords }
    }

    pub fn coords(&self) -> &[usize] {
        &self.coords
    }

    /// Coordinate sum `|v|`.
    pub fn weight(&self) -> usize {
        self.coords.iter().sum()
    }

    pub fn get(&self, axis: usize) -> usize {
        self.coords[axis]
    }

    pub fn into_coords(self) -> Vec<usize> {
        self.coords
    }
}

impl From<Vec<usize>> for MultiIndex {
    fn from(coords: Vec<usize>) -> Self {
        MultiIndex::new(coords)
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// One hyperedge `S = I_1 x ... x I_d` of `K` or `P`: the axes in `varying`
/// (sorted) take the value sets in `values`, every other axis is pinned to a
/// single value in `fixed`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GridEdge {
    varying: Vec<usize>,
    values: Vec<Vec<usize>>,
    fixed: Vec<(usize, usize)>,
}

impl GridEdge {
    pub fn new(varying: Vec<usize>, values: Vec<Vec<usize>>, fixed: Vec<(usize, usize)>) -> Self {
        debug_assert_eq!(varying.len(), values.len());
        GridEdge {
            varying,
            values,
            fixed,
        }
    }

    /// The varying coordinate set `D(S)`.
    pub fn varying(&self) -> &[usize] {
        &self.varying
    }

    /// Value sets `I_l(S)` in the order of [`GridEdge::varying`].
    pub fn values(&self) -> &[Vec<usize>] {
        &self.values
    }

    pub fn fixed(&self) -> &[(usize, usize)] {
        &self.fixed
    }

    pub fn d(&self) -> usize {
        self.varying.len() + self.fixed.len()
    }

    /// `I_axis(S)`, or `None` when the axis is pinned.
    pub fn value_set(&self, axis: usize) -> Option<&[usize]> {
        self.varying
            .iter()
            .position(|&a| a == axis)
            .map(|i| self.values[i].as_slice())
    }

    pub fn size(&self) -> usize {
        self.values.iter().map(Vec::len).product()
    }

    pub fn contains(&self, v: &MultiIndex) -> bool {
        if v.coords().len() != self.d() {
            return false;
        }
        self.fixed.iter().all(|&(axis, x)| v.get(axis) == x)
            && self
                .varying
                .iter()
                .zip(&self.values)
                .all(|(&axis, set)| set.binary_search(&v.get(axis)).is_ok())
    }

    /// The `prod |I_l|` vertices of the edge in row-major order.
    pub fn vertices(&self) -> Vec<MultiIndex> {
        let d = self.d();
        let mut base = vec![0; d];
        for &(axis, x) in &self.fixed {
            base[axis] = x;
        }
        let mut pos = vec![0usize; self.varying.len()];
        let mut out = Vec::with_capacity(self.size());
        loop {
            let mut coords = base.clone();
            for (i, &axis) in self.varying.iter().enumerate() {
                coords[axis] = self.values[i][pos[i]];
            }
            out.push(MultiIndex::new(coords));
            // odometer, last varying axis fastest
            let mut i = self.varying.len();
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                pos[i] += 1;
                if pos[i] < self.values[i].len() {
                    break;
                }
                pos[i] = 0;
            }
        }
    }
}

impl fmt::Display for GridEdge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for axis in 0..self.d() {
            if axis > 0 {
                write!(f, "x")?;
            }
            match self.value_set(axis) {
                Some(set) => {
                    let s: Vec<String> = set.iter().map(|x| x.to_string()).collect();
                    write!(f, "{{{}}}", s.join(","))?;
                }
                None => {
                    let x = self
                        .fixed
                        .iter()
                        .find(|&&(a, _)| a == axis)
                        .map(|&(_, x)| x);
                    write!(f, "{{{}}}", x.unwrap_or(0))?;
                }
            }
        }
        Ok(())
    }
}

/// Advance a strictly increasing selection of values bounded by `hi` to its
/// lexicographic successor. Returns false when `sel` is already the last one.
pub(crate) fn next_combination(sel: &mut [usize], hi: usize) -> bool {
    let k = sel.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        // largest value position i may take
        let cap = hi - (k - 1 - i);
        if sel[i] < cap {
            sel[i] += 1;
            for j in i + 1..k {
                sel[j] = sel[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

fn first_combination(k: usize, lo: usize) -> Vec<usize> {
    (lo..lo + k).collect()
}

/// Lazy, deterministic edge stream: varying sets `D` in lexicographic order,
/// then value sets lexicographically (first varying axis slowest), then the
/// pinned values in row-major order.
pub struct EdgeIter<'a> {
    spec: &'a GridSpec,
    family: Family,
    varying: Vec<usize>,
    fixed_axes: Vec<usize>,
    values: Vec<Vec<usize>>,
    fixed_values: Vec<usize>,
    done: bool,
}

impl<'a> EdgeIter<'a> {
    fn new(spec: &'a GridSpec, family: Family) -> Self {
        let mut it = EdgeIter {
            spec,
            family,
            varying: first_combination(spec.r(), 0),
            fixed_axes: Vec::new(),
            values: Vec::new(),
            fixed_values: Vec::new(),
            done: false,
        };
        it.reset_for_varying();
        it
    }

    fn reset_for_varying(&mut self) {
        let d = self.spec.d();
        self.fixed_axes = (0..d).filter(|a| !self.varying.contains(a)).collect();
        self.values = self
            .varying
            .iter()
            .map(|&axis| first_combination(self.spec.thick[axis], 1))
            .collect();
        self.fixed_values = vec![1; self.fixed_axes.len()];
    }

    fn advance_value_set(&self, slot: usize, set: &mut [usize]) -> bool {
        let axis = self.varying[slot];
        let n = self.spec.dims[axis];
        match self.family {
            Family::K => next_combination(set, n),
            Family::P => {
                if set[set.len() - 1] < n {
                    set.iter_mut().for_each(|x| *x += 1);
                    true
                } else {
                    false
                }
            }
        }
    }

    fn advance(&mut self) {
        // pinned values, last axis fastest
        for i in (0..self.fixed_axes.len()).rev() {
            let n = self.spec.dims[self.fixed_axes[i]];
            if self.fixed_values[i] < n {
                self.fixed_values[i] += 1;
                return;
            }
            self.fixed_values[i] = 1;
        }
        for slot in (0..self.varying.len()).rev() {
            let mut set = std::mem::take(&mut self.values[slot]);
            let moved = self.advance_value_set(slot, &mut set);
            if moved {
                self.values[slot] = set;
                return;
            }
            let axis = self.varying[slot];
            self.values[slot] = first_combination(self.spec.thick[axis], 1);
        }
        if next_combination(&mut self.varying, self.spec.d() - 1) {
            self.reset_for_varying();
        } else {
            self.done = true;
        }
    }
}

impl Iterator for EdgeIter<'_> {
    type Item = GridEdge;

    fn next(&mut self) -> Option<GridEdge> {
        if self.done {
            return None;
        }
        let edge = GridEdge::new(
            self.varying.clone(),
            self.values.clone(),
            self.fixed_axes
                .iter()
                .copied()
                .zip(self.fixed_values.iter().copied())
                .collect(),
        );
        self.advance();
        Some(edge)
    }
}

pub fn enumerate_edges(spec: &GridSpec, family: Family) -> EdgeIter<'_> {
    EdgeIter::new(spec, family)
}

pub fn binomial(n: usize, k: usize) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.checked_mul((n - i) as u128)? / (i as u128 + 1);
    }
    Some(acc)
}

/// Closed-form edge count: for each `r`-set `D` of axes,
/// `prod_{l in D} C(n_l, t_l)` (or `n_l - t_l + 1` for `P`) times
/// `prod_{k not in D} n_k`.
pub fn count_edges(spec: &GridSpec, family: Family) -> Result<u128, GridError> {
    let d = spec.d();
    let mut total: u128 = 0;
    let mut varying = first_combination(spec.r(), 0);
    loop {
        let mut term: u128 = 1;
        for axis in 0..d {
            let n = spec.dims[axis];
            let factor = if varying.contains(&axis) {
                let t = spec.thick[axis];
                match family {
                    Family::K => binomial(n, t).ok_or(GridError::Overflow)?,
                    Family::P => (n - t + 1) as u128,
                }
            } else {
                n as u128
            };
            term = term.checked_mul(factor).ok_or(GridError::Overflow)?;
        }
        total = total.checked_add(term).ok_or(GridError::Overflow)?;
        if !next_combination(&mut varying, d - 1) {
            return Ok(total);
        }
    }
}

/// The vertices with at most `r - 1` large coordinates, in id order.
pub fn construct_u(spec: &GridSpec) -> Vec<MultiIndex> {
    spec.vertices().filter(|v| spec.in_u(v)).collect()
}

/// `sum_{S subset [d], |S| <= r-1} prod_{k in S} (n_k + 1 - t_k) prod_{k not in S} (t_k - 1)`.
///
/// Evaluated as the low-order coefficients of
/// `prod_k ((t_k - 1) + (n_k + 1 - t_k) x)`.
pub fn extremal_size(spec: &GridSpec) -> Result<u128, GridError> {
    let mut poly: Vec<u128> = vec![1];
    for (&n, &t) in spec.dims.iter().zip(&spec.thick) {
        let small = (t - 1) as u128;
        let large = (n + 1 - t) as u128;
        let mut next = vec![0u128; poly.len() + 1];
        for (s, &c) in poly.iter().enumerate() {
            next[s] = next[s]
                .checked_add(c.checked_mul(small).ok_or(GridError::Overflow)?)
                .ok_or(GridError::Overflow)?;
            next[s + 1] = next[s + 1]
                .checked_add(c.checked_mul(large).ok_or(GridError::Overflow)?)
                .ok_or(GridError::Overflow)?;
        }
        poly = next;
    }
    poly[..spec.r()]
        .iter()
        .try_fold(0u128, |acc, &c| acc.checked_add(c))
        .ok_or(GridError::Overflow)
}

/// The homogeneous sum `sum_{s=0}^{r-1} C(d,s) (t-1)^{d-s} (n+1-t)^s`.
pub fn homogeneous_extremal_size(n: usize, d: usize, t: usize, r: usize) -> Option<u128> {
    let small = (t - 1) as u128;
    let large = (n + 1 - t) as u128;
    (0..r).try_fold(0u128, |acc, s| {
        let term = binomial(d, s)?
            .checked_mul(small.checked_pow((d - s) as u32)?)?
            .checked_mul(large.checked_pow(s as u32)?)?;
        acc.checked_add(term)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn spec(n: usize, d: usize, t: usize, r: usize) -> GridSpec {
        GridSpec::homogeneous(n, d, t, r).unwrap()
    }

    #[test]
    fn rejects_bad_specs() {
        assert_eq!(GridSpec::new(vec![], vec![], 1), Err(GridError::NoAxes));
        assert!(matches!(
            GridSpec::new(vec![3], vec![4], 1),
            Err(GridError::BadThickness { .. })
        ));
        assert!(matches!(
            GridSpec::new(vec![3], vec![1], 1),
            Err(GridError::BadThickness { .. })
        ));
        assert!(matches!(
            GridSpec::homogeneous(3, 2, 2, 3),
            Err(GridError::BadRank { .. })
        ));
        assert!(matches!(
            GridSpec::homogeneous(3, 2, 2, 0),
            Err(GridError::BadRank { .. })
        ));
        assert!(matches!(
            GridSpec::new(vec![3, 3], vec![2], 1),
            Err(GridError::LengthMismatch { .. })
        ));
    }

    #[test]
    fn homogeneity() {
        assert!(spec(3, 2, 2, 2).is_homogeneous());
        assert!(!GridSpec::new(vec![3, 4], vec![2, 3], 2)
            .unwrap()
            .is_homogeneous());
        assert!(!GridSpec::new(vec![3, 3], vec![2, 3], 2)
            .unwrap()
            .is_homogeneous());
    }

    #[test]
    fn codec_examples() {
        let s = spec(3, 2, 2, 2);
        assert_eq!(s.encode(&vec![1, 1].into()).unwrap(), 0);
        assert_eq!(s.encode(&vec![2, 3].into()).unwrap(), 5);
        let cube = spec(2, 3, 2, 1);
        assert_eq!(cube.decode(7).unwrap().coords(), &[2, 2, 2]);
    }

    #[test]
    fn codec_errors() {
        let s = spec(3, 2, 2, 2);
        assert!(matches!(
            s.encode(&vec![0, 1].into()),
            Err(GridError::CoordinateOutOfRange { .. })
        ));
        assert!(matches!(
            s.encode(&vec![1, 4].into()),
            Err(GridError::CoordinateOutOfRange { .. })
        ));
        assert!(matches!(
            s.encode(&vec![1].into()),
            Err(GridError::WrongArity { .. })
        ));
        assert!(matches!(s.decode(9), Err(GridError::IdOutOfRange { .. })));
    }

    #[test]
    fn weight_is_coordinate_sum() {
        assert_eq!(MultiIndex::new(vec![2, 3, 1]).weight(), 6);
    }

    #[test]
    fn edge_counts_small() {
        assert_eq!(enumerate_edges(&spec(3, 2, 2, 2), Family::K).count(), 9);
        assert_eq!(count_edges(&spec(3, 2, 2, 2), Family::K).unwrap(), 9);
        assert_eq!(enumerate_edges(&spec(3, 2, 2, 2), Family::P).count(), 4);
        assert_eq!(count_edges(&spec(3, 2, 2, 2), Family::P).unwrap(), 4);
        assert_eq!(count_edges(&spec(4, 3, 2, 1), Family::K).unwrap(), 288);
        assert_eq!(enumerate_edges(&spec(4, 3, 2, 1), Family::K).count(), 288);
    }

    #[test]
    fn single_edge_line() {
        let edges: Vec<_> = enumerate_edges(&spec(2, 1, 2, 1), Family::K).collect();
        assert_eq!(edges.len(), 1);
        assert_eq!(edges[0].values(), &[vec![1, 2]]);
        assert_eq!(edges[0].vertices().len(), 2);
    }

    #[test]
    fn p_edges_are_unit_squares() {
        let squares: Vec<Vec<Vec<usize>>> = enumerate_edges(&spec(3, 2, 2, 2), Family::P)
            .map(|e| e.values().to_vec())
            .collect();
        assert_eq!(
            squares,
            vec![
                vec![vec![1, 2], vec![1, 2]],
                vec![vec![1, 2], vec![2, 3]],
                vec![vec![2, 3], vec![1, 2]],
                vec![vec![2, 3], vec![2, 3]],
            ]
        );
    }

    #[test]
    fn enumeration_order_is_fixed() {
        // d=2, r=1: D={0} with pinned axis 1 running fastest, then D={1}.
        let edges: Vec<String> = enumerate_edges(&spec(3, 2, 3, 1), Family::K)
            .map(|e| e.to_string())
            .collect();
        assert_eq!(
            edges,
            vec![
                "{1,2,3}x{1}",
                "{1,2,3}x{2}",
                "{1,2,3}x{3}",
                "{1}x{1,2,3}",
                "{2}x{1,2,3}",
                "{3}x{1,2,3}",
            ]
        );
    }

    #[test]
    fn u_examples() {
        let u: Vec<Vec<usize>> = construct_u(&spec(3, 2, 2, 2))
            .into_iter()
            .map(MultiIndex::into_coords)
            .collect();
        let mut want = vec![vec![1, 1], vec![1, 2], vec![1, 3], vec![2, 1], vec![3, 1]];
        want.sort();
        assert_eq!(u, want);

        let u = construct_u(&spec(2, 3, 2, 1));
        assert_eq!(u, vec![MultiIndex::new(vec![1, 1, 1])]);

        let inhom = GridSpec::new(vec![3, 4], vec![2, 3], 2).unwrap();
        let u = construct_u(&inhom);
        assert_eq!(u.len(), 8);
        assert!(u.iter().all(|v| !(v.get(0) >= 2 && v.get(1) >= 3)));
    }

    #[test]
    fn extremal_size_examples() {
        assert_eq!(extremal_size(&spec(3, 2, 2, 2)).unwrap(), 5);
        assert_eq!(extremal_size(&spec(5, 3, 3, 2)).unwrap(), 44);
        let inhom = GridSpec::new(vec![3, 4], vec![2, 3], 2).unwrap();
        assert_eq!(extremal_size(&inhom).unwrap(), 8);
        assert_eq!(extremal_size(&spec(2, 4, 2, 1)).unwrap(), 1);
    }

    /// Direct subset sum over `S subset [d]`, independent of the polynomial
    /// evaluation in `extremal_size`.
    fn subset_sum(spec: &GridSpec) -> u128 {
        let d = spec.d();
        (0u32..1 << d)
            .filter(|mask| (mask.count_ones() as usize) < spec.r())
            .map(|mask| {
                (0..d)
                    .map(|k| {
                        if mask >> k & 1 == 1 {
                            (spec.dims()[k] + 1 - spec.thick()[k]) as u128
                        } else {
                            (spec.thick()[k] - 1) as u128
                        }
                    })
                    .product::<u128>()
            })
            .sum()
    }

    fn small_specs() -> Vec<GridSpec> {
        let mut out = Vec::new();
        for d in 1..=3 {
            for r in 1..=d {
                for n in 2..=5 {
                    for t in 2..=n {
                        out.push(spec(n, d, t, r));
                    }
                }
            }
        }
        out.push(GridSpec::new(vec![3, 4], vec![2, 3], 1).unwrap());
        out.push(GridSpec::new(vec![3, 4], vec![2, 3], 2).unwrap());
        out.push(GridSpec::new(vec![2, 3, 4], vec![2, 2, 3], 2).unwrap());
        out.push(GridSpec::new(vec![4, 2, 5], vec![3, 2, 2], 3).unwrap());
        out
    }

    #[test]
    fn u_size_matches_formula_and_subset_sum() {
        for s in small_specs() {
            let size = extremal_size(&s).unwrap();
            assert_eq!(construct_u(&s).len() as u128, size, "{s}");
            assert_eq!(subset_sum(&s), size, "{s}");
            if s.is_homogeneous() {
                let (n, t) = (s.dims()[0], s.thick()[0]);
                assert_eq!(homogeneous_extremal_size(n, s.d(), t, s.r()), Some(size));
            }
        }
    }

    /// Brute force: every subset of the grid that is a product of singletons
    /// and `t`-sets (intervals for `P`) with exactly `r` non-singletons.
    fn brute_force_edges(s: &GridSpec, family: Family) -> HashSet<Vec<usize>> {
        let verts: Vec<MultiIndex> = s.vertices().collect();
        let mut out = HashSet::new();
        let size = verts.len();
        assert!(size <= 16);
        for mask in 1u32..1 << size {
            let members: Vec<&MultiIndex> = (0..size)
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| &verts[i])
                .collect();
            let mut varying = 0;
            let mut ok = true;
            let mut expected = 1;
            for axis in 0..s.d() {
                let mut vals: Vec<usize> = members.iter().map(|v| v.get(axis)).collect();
                vals.sort();
                vals.dedup();
                if vals.len() == 1 {
                    continue;
                }
                let t = s.thick()[axis];
                if vals.len() != t {
                    ok = false;
                    break;
                }
                if family == Family::P && vals[t - 1] - vals[0] != t - 1 {
                    ok = false;
                    break;
                }
                varying += 1;
                expected *= t;
            }
            // a product set has exactly prod |I_l| members
            if ok && varying == s.r() && members.len() == expected {
                let mut ids: Vec<usize> = members.iter().map(|v| s.encode(v).unwrap()).collect();
                ids.sort();
                out.insert(ids);
            }
        }
        out
    }

    #[test]
    fn enumeration_matches_brute_force() {
        let specs = [
            spec(3, 2, 2, 2),
            spec(3, 2, 2, 1),
            spec(4, 2, 2, 2),
            spec(4, 2, 3, 1),
            spec(2, 3, 2, 2),
            GridSpec::new(vec![3, 4], vec![2, 3], 2).unwrap(),
            GridSpec::new(vec![3, 4], vec![3, 2], 1).unwrap(),
        ];
        for s in specs {
            for family in [Family::K, Family::P] {
                let listed: Vec<Vec<usize>> = enumerate_edges(&s, family)
                    .map(|e| {
                        let mut ids: Vec<usize> =
                            e.vertices().iter().map(|v| s.encode(v).unwrap()).collect();
                        ids.sort();
                        ids
                    })
                    .collect();
                let unique: HashSet<Vec<usize>> = listed.iter().cloned().collect();
                assert_eq!(unique.len(), listed.len(), "duplicate edge in {s} {family}");
                assert_eq!(unique, brute_force_edges(&s, family), "{s} {family}");
                assert_eq!(listed.len() as u128, count_edges(&s, family).unwrap());
            }
        }
    }

    #[test]
    fn edge_vertices_and_membership() {
        let s = GridSpec::new(vec![3, 4, 2], vec![2, 3, 2], 2).unwrap();
        for e in enumerate_edges(&s, Family::K) {
            let vs = e.vertices();
            assert_eq!(vs.len(), e.size());
            let unique: HashSet<&MultiIndex> = vs.iter().collect();
            assert_eq!(unique.len(), vs.len());
            for v in &vs {
                assert!(e.contains(v));
            }
            assert_eq!(s.vertices().filter(|v| e.contains(v)).count(), vs.len());
        }
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), Some(10));
        assert_eq!(binomial(4, 5), Some(0));
        assert_eq!(binomial(8, 0), Some(1));
        assert_eq!(binomial(60, 30), Some(118264581564861424));
    }
}
