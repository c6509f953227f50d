//! Permutations, their diagrams, and the constructions built from them.
//!
//! A [`Permutation`] stores its one-line form with 1-based values. A
//! [`PointSet`] is a list of labeled integer points that may share single
//! coordinates; [`PointSet::reduce`] turns it into the permutation it is
//! order-isomorphic to after an infinitesimal clockwise rotation.

use std::cmp::Reverse;
use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A permutation of `1..=n` in one-line notation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Permutation {
    elems: Vec<usize>,
}

impl Permutation {
    /// Validates that `elems` is a bijection on `1..=elems.len()`.
    pub fn new(elems: Vec<usize>) -> Result<Self> {
        let n = elems.len();
        let mut seen = vec![false; n + 1];
        for &v in &elems {
            if v == 0 || v > n {
                return Err(Error::NotAPermutation(format!(
                    "value {v} outside 1..={n}"
                )));
            }
            if std::mem::replace(&mut seen[v], true) {
                return Err(Error::NotAPermutation(format!("value {v} repeated")));
            }
        }
        Ok(Permutation { elems })
    }

    pub fn empty() -> Self {
        Permutation { elems: Vec::new() }
    }

    pub fn increasing(n: usize) -> Self {
        Permutation {
            elems: (1..=n).collect(),
        }
    }

    pub fn decreasing(n: usize) -> Self {
        Permutation {
            elems: (1..=n).rev().collect(),
        }
    }

    /// The permutation order-isomorphic to a sequence of distinct values.
    pub fn standardize<T: Ord>(values: &[T]) -> Result<Self> {
        let mut order: Vec<usize> = (0..values.len()).collect();
        order.sort_by(|&a, &b| values[a].cmp(&values[b]));
        if order.windows(2).any(|w| values[w[0]] == values[w[1]]) {
            return Err(Error::NotAPermutation("repeated value".into()));
        }
        let mut elems = vec![0; values.len()];
        for (rank, &pos) in order.iter().enumerate() {
            elems[pos] = rank + 1;
        }
        Ok(Permutation { elems })
    }

    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        let mut elems: Vec<usize> = (1..=n).collect();
        elems.shuffle(rng);
        Permutation { elems }
    }

    /// All permutations of length `n` in lexicographic order.
    pub fn all(n: usize) -> impl Iterator<Item = Permutation> {
        (1..=n)
            .permutations(n)
            .map(|elems| Permutation { elems })
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.elems
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.elems
    }

    /// Value at 1-based position `i`.
    pub fn at(&self, i: usize) -> usize {
        self.elems[i - 1]
    }

    pub fn is_increasing(&self) -> bool {
        self.elems.windows(2).all(|w| w[0] < w[1])
    }

    pub fn is_decreasing(&self) -> bool {
        self.elems.windows(2).all(|w| w[0] > w[1])
    }

    pub fn reverse(&self) -> Self {
        Permutation {
            elems: self.elems.iter().rev().copied().collect(),
        }
    }

    pub fn complement(&self) -> Self {
        let n = self.len();
        Permutation {
            elems: self.elems.iter().map(|&v| n + 1 - v).collect(),
        }
    }

    /// The diagram `{(i, p_i)}` with every point labeled plain.
    pub fn diagram(&self) -> PointSet {
        PointSet::from_points(
            self.elems
                .iter()
                .enumerate()
                .map(|(i, &v)| Point::new(i as i64 + 1, v as i64)),
        )
    }

    /// Removes the leftmost entry and re-ranks the rest.
    pub fn delete_leftmost(&self) -> Result<Self> {
        let (&first, rest) = self.elems.split_first().ok_or(Error::EmptyPermutation)?;
        Ok(Permutation {
            elems: rest
                .iter()
                .map(|&v| if v > first { v - 1 } else { v })
                .collect(),
        })
    }

    /// Reduction of the entries at 0-based positions `start..`.
    pub fn suffix(&self, start: usize) -> Self {
        let start = start.min(self.len());
        Permutation::standardize(&self.elems[start..]).expect("entries are distinct")
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.elems.iter().join(" "))
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// Accepts whitespace-separated integers, or a bare digit string such as
    /// `24153` for lengths up to 9.
    fn from_str(s: &str) -> Result<Self> {
        let tokens: Vec<&str> = s.split_whitespace().collect();
        let elems = if tokens.len() == 1 && tokens[0].len() > 1 {
            let token = tokens[0];
            if token.len() > 9 || !token.bytes().all(|b| (b'1'..=b'9').contains(&b)) {
                return Err(Error::Parse(format!(
                    "'{token}' is not a digit string of length at most 9; separate values with spaces"
                )));
            }
            token.bytes().map(|b| (b - b'0') as usize).collect()
        } else {
            tokens
                .iter()
                .map(|t| {
                    t.parse::<usize>()
                        .map_err(|_| Error::Parse(format!("'{t}' is not a positive integer")))
                })
                .collect::<Result<Vec<_>>>()?
        };
        Permutation::new(elems)
    }
}

impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// What a point stands for inside a gadget.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Role {
    Anchor,
    APair,
    BPair,
    CPair,
    DPair,
    Cell,
    Diagonal,
    #[default]
    Plain,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Point {
    pub x: i64,
    pub y: i64,
    #[serde(default)]
    pub role: Role,
}

impl Point {
    pub fn new(x: i64, y: i64) -> Self {
        Point {
            x,
            y,
            role: Role::Plain,
        }
    }

    pub fn with_role(x: i64, y: i64, role: Role) -> Self {
        Point { x, y, role }
    }
}

/// A finite list of labeled points.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PointSet {
    points: Vec<Point>,
}

impl PointSet {
    pub fn new() -> Self {
        PointSet::default()
    }

    pub fn from_points(points: impl IntoIterator<Item = Point>) -> Self {
        PointSet {
            points: points.into_iter().collect(),
        }
    }

    pub fn push(&mut self, p: Point) {
        self.points.push(p);
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn with_role(&self, role: Role) -> impl Iterator<Item = &Point> {
        self.points.iter().filter(move |p| p.role == role)
    }

    /// True when no two points share an x- or a y-coordinate.
    pub fn is_general_position(&self) -> bool {
        let xs: HashSet<i64> = self.points.iter().map(|p| p.x).collect();
        let ys: HashSet<i64> = self.points.iter().map(|p| p.y).collect();
        xs.len() == self.len() && ys.len() == self.len()
    }

    /// For each point (in storage order), its 0-based position in the reduction.
    ///
    /// Ties are broken as the limit of a clockwise rotation by a vanishing
    /// angle: horizontally by `(x, y)`, vertically by `(y, -x)`.
    pub fn reduction_positions(&self) -> Result<Vec<usize>> {
        let mut seen = HashSet::with_capacity(self.len());
        for p in &self.points {
            if !seen.insert((p.x, p.y)) {
                return Err(Error::DegeneratePointSet { x: p.x, y: p.y });
            }
        }
        let mut by_x: Vec<usize> = (0..self.len()).collect();
        by_x.sort_by_key(|&i| (self.points[i].x, self.points[i].y));
        let mut position = vec![0; self.len()];
        for (pos, &i) in by_x.iter().enumerate() {
            position[i] = pos;
        }
        Ok(position)
    }

    /// The permutation this point set reduces to.
    pub fn reduce(&self) -> Result<Permutation> {
        let position = self.reduction_positions()?;
        let mut by_y: Vec<usize> = (0..self.len()).collect();
        by_y.sort_by_key(|&i| (self.points[i].y, Reverse(self.points[i].x)));
        let mut elems = vec![0; self.len()];
        for (rank, &i) in by_y.iter().enumerate() {
            elems[position[i]] = rank + 1;
        }
        Ok(Permutation { elems })
    }
}

impl FromIterator<Point> for PointSet {
    fn from_iter<I: IntoIterator<Item = Point>>(iter: I) -> Self {
        PointSet::from_points(iter)
    }
}

/// Inflation of `sigma` by `blocks`: entry `i` of `sigma` is replaced by a
/// scaled copy of `blocks[i]`.
pub fn inflate(sigma: &Permutation, blocks: &[Permutation]) -> Result<Permutation> {
    if sigma.len() != blocks.len() {
        return Err(Error::BlockCountMismatch {
            len: sigma.len(),
            blocks: blocks.len(),
        });
    }
    if let Some(i) = blocks.iter().position(Permutation::is_empty) {
        return Err(Error::EmptyBlock(i + 1));
    }
    // offset[v] = total size of the blocks sitting on values below v
    let mut size_by_value = vec![0; sigma.len() + 1];
    for (&v, block) in sigma.as_slice().iter().zip(blocks) {
        size_by_value[v] = block.len();
    }
    let mut offset = vec![0; sigma.len() + 1];
    for v in 1..=sigma.len() {
        offset[v] = if v == 1 { 0 } else { offset[v - 1] + size_by_value[v - 1] };
    }
    let total = blocks.iter().map(Permutation::len).sum();
    let mut elems = Vec::with_capacity(total);
    for (&v, block) in sigma.as_slice().iter().zip(blocks) {
        elems.extend(block.as_slice().iter().map(|&b| offset[v] + b));
    }
    Ok(Permutation { elems })
}

fn check_sizes(sizes: &[usize]) -> Result<()> {
    match sizes.iter().position(|&s| s == 0) {
        Some(i) => Err(Error::ZeroSize(i + 1)),
        None => Ok(()),
    }
}

/// Layered permutation: increasing sequence of decreasing layers.
pub fn layered(layer_sizes: &[usize]) -> Result<Permutation> {
    check_sizes(layer_sizes)?;
    let mut elems = Vec::with_capacity(layer_sizes.iter().sum());
    let mut base = 0;
    for &size in layer_sizes {
        elems.extend((base + 1..=base + size).rev());
        base += size;
    }
    Ok(Permutation { elems })
}

/// Co-layered permutation: decreasing sequence of increasing runs.
pub fn colayered(run_sizes: &[usize]) -> Result<Permutation> {
    check_sizes(run_sizes)?;
    let total: usize = run_sizes.iter().sum();
    let mut elems = Vec::with_capacity(total);
    let mut top = total;
    for &size in run_sizes {
        elems.extend(top - size + 1..=top);
        top -= size;
    }
    Ok(Permutation { elems })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn coords(ps: &PointSet) -> Vec<(i64, i64)> {
        ps.points().iter().map(|q| (q.x, q.y)).collect()
    }

    #[test]
    fn parses_both_notations() {
        assert_eq!(p("24153").as_slice(), &[2, 4, 1, 5, 3]);
        assert_eq!(p("2 4 1 5 3"), p("24153"));
        assert_eq!(p("1").as_slice(), &[1]);
        assert_eq!(p("").len(), 0);
        let ten = "10 9 8 7 6 5 4 3 2 1".parse::<Permutation>().unwrap();
        assert_eq!(ten.len(), 10);
        assert!("1 1 2".parse::<Permutation>().is_err());
        assert!("0 1".parse::<Permutation>().is_err());
        assert!("1234567891".parse::<Permutation>().is_err());
        assert!("13".parse::<Permutation>().is_err());
        assert!("a b".parse::<Permutation>().is_err());
        assert_eq!(p("24153").to_string(), "2 4 1 5 3");
    }

    #[test]
    fn diagram_examples() {
        assert_eq!(
            coords(&p("24153").diagram()),
            vec![(1, 2), (2, 4), (3, 1), (4, 5), (5, 3)]
        );
        assert!(Permutation::empty().diagram().is_empty());
        assert_eq!(coords(&p("1").diagram()), vec![(1, 1)]);
        assert!(p("24153").diagram().is_general_position());
        assert!(p("24153")
            .diagram()
            .points()
            .iter()
            .all(|q| q.role == Role::Plain));
    }

    #[test]
    fn reduce_examples() {
        let set = |pts: &[(i64, i64)]| PointSet::from_points(pts.iter().map(|&(x, y)| Point::new(x, y)));
        assert_eq!(set(&[(1, 2), (2, 1)]).reduce().unwrap(), p("21"));
        assert_eq!(set(&[(1, 1), (1, 2), (2, 3)]).reduce().unwrap(), p("123"));
        assert_eq!(set(&[(1, 1), (2, 1)]).reduce().unwrap(), p("21"));
        assert_eq!(
            set(&[(3, 3), (1, 1), (3, 3)]).reduce(),
            Err(Error::DegeneratePointSet { x: 3, y: 3 })
        );
    }

    #[test]
    fn inflate_examples() {
        let infl = inflate(&p("132"), &[p("21"), p("1"), p("123")]).unwrap();
        assert_eq!(infl.as_slice(), &[2, 1, 6, 3, 4, 5]);
        let sigma = p("24153");
        let singletons = vec![p("1"); 5];
        assert_eq!(inflate(&sigma, &singletons).unwrap(), sigma);
        assert_eq!(inflate(&p("1"), std::slice::from_ref(&sigma)).unwrap(), sigma);
    }

    #[test]
    fn inflate_errors() {
        assert_eq!(
            inflate(&p("12"), &[p("1")]),
            Err(Error::BlockCountMismatch { len: 2, blocks: 1 })
        );
        assert_eq!(
            inflate(&p("12"), &[p("1"), Permutation::empty()]),
            Err(Error::EmptyBlock(2))
        );
    }

    #[test]
    fn layered_and_colayered_examples() {
        assert_eq!(layered(&[2, 1, 3]).unwrap().as_slice(), &[2, 1, 3, 6, 5, 4]);
        assert_eq!(layered(&[1, 1, 1]).unwrap(), p("123"));
        assert_eq!(layered(&[3]).unwrap(), p("321"));
        assert_eq!(colayered(&[2, 2]).unwrap(), p("3412"));
        assert_eq!(colayered(&[1, 1]).unwrap(), p("21"));
        assert_eq!(colayered(&[4]).unwrap(), p("1234"));
        assert_eq!(layered(&[1, 0]), Err(Error::ZeroSize(2)));
        assert_eq!(colayered(&[0]), Err(Error::ZeroSize(1)));
    }

    #[test]
    fn delete_leftmost_examples() {
        assert_eq!(p("24153").delete_leftmost().unwrap(), p("3142"));
        assert_eq!(p("1").delete_leftmost().unwrap(), Permutation::empty());
        assert_eq!(p("12").delete_leftmost().unwrap(), p("1"));
        assert_eq!(Permutation::empty().delete_leftmost(), Err(Error::EmptyPermutation));
    }

    #[test]
    fn symmetries_and_suffix() {
        assert_eq!(p("24153").reverse(), p("35142"));
        assert_eq!(p("24153").complement(), p("42513"));
        assert_eq!(p("24153").suffix(2), p("132"));
        assert_eq!(p("24153").suffix(9), Permutation::empty());
    }

    #[test]
    fn round_trip_exhaustive() {
        for n in 0..=7 {
            for perm in Permutation::all(n) {
                assert_eq!(perm.diagram().reduce().unwrap(), perm);
            }
        }
    }

    #[test]
    fn all_counts() {
        assert_eq!(Permutation::all(0).count(), 1);
        assert_eq!(Permutation::all(5).count(), 120);
    }

    #[test]
    fn inflations_match_layered_constructors() {
        fn compositions(total: usize) -> Vec<Vec<usize>> {
            if total == 0 {
                return vec![vec![]];
            }
            (1..=total)
                .flat_map(|first| {
                    compositions(total - first).into_iter().map(move |mut rest| {
                        rest.insert(0, first);
                        rest
                    })
                })
                .collect()
        }
        for total in 1..=8 {
            for sizes in compositions(total) {
                let m = sizes.len();
                let dec: Vec<_> = sizes.iter().map(|&s| Permutation::decreasing(s)).collect();
                let inc: Vec<_> = sizes.iter().map(|&s| Permutation::increasing(s)).collect();
                assert_eq!(
                    inflate(&Permutation::increasing(m), &dec).unwrap(),
                    layered(&sizes).unwrap()
                );
                assert_eq!(
                    inflate(&Permutation::decreasing(m), &inc).unwrap(),
                    colayered(&sizes).unwrap()
                );
            }
        }
    }
}
