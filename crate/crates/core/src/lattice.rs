//! Combinatorial face lattices of polytopes.
//!
//! A [`FaceLattice`] stores each face as a set of vertex indices together
//! with its rank (`-1` for the empty face, `d` for the polytope itself).
//! Containment is inclusion of vertex sets. Everything in this module is
//! brute force on purpose: it is the ground truth the closed forms and the
//! symbolic machinery are tested against.

use std::collections::{HashMap, HashSet};
use std::ops::Range;

use fixedbitset::FixedBitSet;
use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::flagalg::{FVector, FlagVector};
use crate::flagset::FlagSet;
use crate::{Error, Result};

/// Lattices above this dimension are refused.
pub const MAX_LATTICE_DIM: usize = 8;

/// Default bound on the total number of faces of a lattice.
pub const DEFAULT_MAX_FACES: usize = 1_000_000;

/// Face bound in effect, honouring the `FLAGVEC_MAX_FACES` override.
pub fn max_faces() -> usize {
    std::env::var("FLAGVEC_MAX_FACES")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_MAX_FACES)
}

pub type FaceId = usize;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub rank: i32,
    pub vertices: Vec<usize>,
    set: FixedBitSet,
}

impl Face {
    fn new(rank: i32, mut vertices: Vec<usize>, universe: usize) -> Self {
        vertices.sort_unstable();
        vertices.dedup();
        let mut set = FixedBitSet::with_capacity(universe);
        for &v in &vertices {
            set.insert(v);
        }
        Face { rank, vertices, set }
    }

    pub fn is_subface_of(&self, other: &Face) -> bool {
        self.set.is_subset(&other.set)
    }
}

/// A chain of faces whose ranks are exactly a prescribed set `S`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Flag {
    pub ranks: FlagSet,
    pub chain: Vec<FaceId>,
}

/// Ranked face poset of a `d`-polytope. Immutable once built.
#[derive(Clone, Debug)]
pub struct FaceLattice {
    d: usize,
    n_vertices: usize,
    faces: Vec<Face>,
    /// Index range of the faces of rank `r` is `rank_ranges[r + 1]`.
    rank_ranges: Vec<Range<usize>>,
    /// Strictly greater faces, ascending by id (hence grouped by rank).
    up: Vec<Vec<FaceId>>,
    /// Strictly smaller faces, ascending by id.
    down: Vec<Vec<FaceId>>,
}

impl PartialEq for FaceLattice {
    fn eq(&self, other: &Self) -> bool {
        self.d == other.d && self.n_vertices == other.n_vertices && self.faces == other.faces
    }
}

impl FaceLattice {
    /// Builds a lattice from `(rank, vertices)` pairs after checking the
    /// structural invariants: unique bottom and top, singleton vertices,
    /// strictly monotone ranks and gradedness. Eulerian-ness is not
    /// required; see [`FaceLattice::is_eulerian`].
    pub fn from_faces(d: usize, faces: Vec<(i32, Vec<usize>)>) -> Result<Self> {
        let lattice = Self::assemble(d, faces)?;
        lattice.validate()?;
        Ok(lattice)
    }

    fn assemble(d: usize, faces: Vec<(i32, Vec<usize>)>) -> Result<Self> {
        if d > MAX_LATTICE_DIM {
            return Err(Error::TooLarge(format!(
                "dimension {d} exceeds the limit of {MAX_LATTICE_DIM}"
            )));
        }
        let limit = max_faces();
        if faces.len() > limit {
            return Err(Error::TooLarge(format!(
                "{} faces exceed the bound of {limit} (set FLAGVEC_MAX_FACES to raise it)",
                faces.len()
            )));
        }
        let universe = faces
            .iter()
            .flat_map(|(_, vs)| vs.iter().copied())
            .max()
            .map_or(0, |m| m + 1);
        let mut faces: Vec<Face> = faces
            .into_iter()
            .map(|(rank, vs)| Face::new(rank, vs, universe))
            .collect();
        for f in &faces {
            if f.rank < -1 || f.rank > d as i32 {
                return Err(Error::InvalidParams(format!(
                    "face rank {} outside [-1, {d}]",
                    f.rank
                )));
            }
        }
        faces.sort_by(|a, b| (a.rank, &a.vertices).cmp(&(b.rank, &b.vertices)));
        if faces.windows(2).any(|w| w[0].vertices == w[1].vertices) {
            return Err(Error::InvalidParams("duplicate face".into()));
        }

        let rank_ranges = (-1..=d as i32)
            .map(|r| {
                let lo = faces.partition_point(|f| f.rank < r);
                let hi = faces.partition_point(|f| f.rank <= r);
                lo..hi
            })
            .collect();

        // faces containing each vertex, used to prune containment tests
        let mut containing: Vec<Vec<FaceId>> = vec![Vec::new(); universe];
        for (id, f) in faces.iter().enumerate() {
            for &v in &f.vertices {
                containing[v].push(id);
            }
        }
        let n = faces.len();
        let mut up: Vec<Vec<FaceId>> = vec![Vec::new(); n];
        let mut down: Vec<Vec<FaceId>> = vec![Vec::new(); n];
        for (id, f) in faces.iter().enumerate() {
            let candidates: Box<dyn Iterator<Item = FaceId>> = match f
                .vertices
                .iter()
                .min_by_key(|&&v| containing[v].len())
            {
                Some(&v) => Box::new(containing[v].iter().copied()),
                None => Box::new(0..n),
            };
            for g in candidates {
                if g != id && faces[g].vertices.len() > f.vertices.len() && f.is_subface_of(&faces[g])
                {
                    up[id].push(g);
                    down[g].push(id);
                }
            }
        }
        for list in up.iter_mut().chain(down.iter_mut()) {
            list.sort_unstable();
        }

        Ok(FaceLattice {
            d,
            n_vertices: universe,
            faces,
            rank_ranges,
            up,
            down,
        })
    }

    fn validate(&self) -> Result<()> {
        let bad = |msg: &str| Err(Error::InvalidParams(msg.to_string()));
        let d = self.d as i32;
        if self.rank_range(-1).len() != 1 || !self.faces[0].vertices.is_empty() {
            return bad("lattice needs exactly one empty face of rank -1");
        }
        if self.rank_range(d).len() != 1 {
            return bad("lattice needs exactly one face of rank d");
        }
        let top = self.top();
        if self.faces[top].vertices.len() != self.n_vertices {
            return bad("top face must contain every vertex");
        }
        let mut seen = HashSet::new();
        for id in self.rank_range(0) {
            match self.faces[id].vertices.as_slice() {
                [v] => {
                    seen.insert(*v);
                }
                _ if self.d == 0 => {}
                _ => return bad("rank-0 faces must be single vertices"),
            }
        }
        if self.d > 0 && seen.len() != self.n_vertices {
            return bad("every vertex index must be a rank-0 face");
        }
        for (id, f) in self.faces.iter().enumerate() {
            if f.rank == -1 && id != 0 {
                return bad("empty face must be unique");
            }
            for &g in &self.up[id] {
                if self.faces[g].rank <= f.rank {
                    return bad("rank must strictly increase along containment");
                }
                // gradedness: something of rank r+1 sits between f and g
                if self.faces[g].rank > f.rank + 1
                    && !self.up_of_rank(id, f.rank + 1).any(|h| self.up[h].binary_search(&g).is_ok())
                {
                    return bad("lattice is not graded");
                }
            }
            if id != top && self.up[id].is_empty() {
                return bad("every proper face must lie below the top");
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn n_vertices(&self) -> usize {
        self.n_vertices
    }

    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn face(&self, id: FaceId) -> &Face {
        &self.faces[id]
    }

    pub fn bottom(&self) -> FaceId {
        0
    }

    pub fn top(&self) -> FaceId {
        self.faces.len() - 1
    }

    pub fn rank_range(&self, rank: i32) -> Range<usize> {
        let idx = rank + 1;
        if idx < 0 || idx as usize >= self.rank_ranges.len() {
            return 0..0;
        }
        self.rank_ranges[idx as usize].clone()
    }

    pub fn faces_of_rank(&self, rank: i32) -> impl Iterator<Item = FaceId> {
        self.rank_range(rank)
    }

    pub fn find(&self, vertices: &[usize]) -> Option<FaceId> {
        let mut vs = vertices.to_vec();
        vs.sort_unstable();
        vs.dedup();
        self.faces.iter().position(|f| f.vertices == vs)
    }

    /// Faces strictly above `id` that have rank `rank`.
    pub fn up_of_rank(&self, id: FaceId, rank: i32) -> impl Iterator<Item = FaceId> + '_ {
        let range = self.rank_range(rank);
        let list = &self.up[id];
        let lo = list.partition_point(|&g| g < range.start);
        let hi = list.partition_point(|&g| g < range.end);
        list[lo..hi].iter().copied()
    }

    pub fn above(&self, id: FaceId) -> &[FaceId] {
        &self.up[id]
    }

    pub fn below(&self, id: FaceId) -> &[FaceId] {
        &self.down[id]
    }

    pub fn leq(&self, a: FaceId, b: FaceId) -> bool {
        a == b || self.up[a].binary_search(&b).is_ok()
    }

    pub fn f_vector(&self) -> FVector {
        FVector::new(
            (0..self.d as i32)
                .map(|r| BigInt::from(self.rank_range(r).len()))
                .collect(),
        )
    }

    /// Every proper face has `rank + 1` vertices.
    pub fn is_simplicial(&self) -> bool {
        let top = self.top();
        self.faces
            .iter()
            .enumerate()
            .all(|(id, f)| id == top || f.vertices.len() as i32 == f.rank + 1)
    }

    pub fn is_simple(&self) -> bool {
        self.dual().is_simplicial()
    }

    /// Number of chains with rank set `S` (a single entry of the flag vector).
    pub fn flag_number(&self, s: FlagSet) -> BigInt {
        let ranks: Vec<i32> = s.iter().map(|r| r as i32).collect();
        let Some((&first, rest)) = ranks.split_first() else {
            return BigInt::one();
        };
        let mut counts: HashMap<FaceId, BigInt> =
            self.faces_of_rank(first).map(|id| (id, BigInt::one())).collect();
        for &next in rest {
            counts = self.extend_counts(&counts, next);
        }
        counts.into_values().sum()
    }

    fn extend_counts(&self, counts: &HashMap<FaceId, BigInt>, next: i32) -> HashMap<FaceId, BigInt> {
        let mut out: HashMap<FaceId, BigInt> = HashMap::new();
        for (&g, c) in counts {
            for h in self.up_of_rank(g, next) {
                *out.entry(h).or_insert_with(BigInt::zero) += c;
            }
        }
        out
    }

    /// All `2^d` flag numbers, by depth-first extension of rank sets: the
    /// chain counts ending at each face of the current top rank are extended
    /// to every higher rank in turn.
    pub fn flag_vector(&self) -> FlagVector {
        let mut entries = vec![(FlagSet::EMPTY, BigInt::one())];
        for r in 0..self.d as i32 {
            let counts: HashMap<FaceId, BigInt> =
                self.faces_of_rank(r).map(|id| (id, BigInt::one())).collect();
            self.extend_flags(FlagSet::single(r as usize), r, counts, &mut entries);
        }
        FlagVector::from_entries(self.d, entries)
    }

    fn extend_flags(
        &self,
        set: FlagSet,
        last: i32,
        counts: HashMap<FaceId, BigInt>,
        out: &mut Vec<(FlagSet, BigInt)>,
    ) {
        out.push((set, counts.values().sum()));
        for next in last + 1..self.d as i32 {
            let extended = self.extend_counts(&counts, next);
            self.extend_flags(set.insert(next as usize), next, extended, out);
        }
    }

    /// Explicit enumeration of the chains with rank set `S`.
    pub fn flags(&self, s: FlagSet) -> Vec<Flag> {
        let ranks: Vec<i32> = s.iter().map(|r| r as i32).collect();
        let mut out = Vec::new();
        let mut chain = Vec::with_capacity(ranks.len());
        self.flags_from(None, &ranks, &mut chain, s, &mut out);
        out
    }

    fn flags_from(
        &self,
        below: Option<FaceId>,
        ranks: &[i32],
        chain: &mut Vec<FaceId>,
        s: FlagSet,
        out: &mut Vec<Flag>,
    ) {
        let Some((&r, rest)) = ranks.split_first() else {
            out.push(Flag { ranks: s, chain: chain.clone() });
            return;
        };
        let next: Vec<FaceId> = match below {
            None => self.faces_of_rank(r).collect(),
            Some(f) => self.up_of_rank(f, r).collect(),
        };
        for g in next {
            chain.push(g);
            self.flags_from(Some(g), rest, chain, s, out);
            chain.pop();
        }
    }

    /// Every interval `[x, y]` with `x < y` has as many elements of even
    /// rank as of odd rank.
    pub fn is_eulerian(&self) -> bool {
        let sign = |id: FaceId| if self.faces[id].rank.rem_euclid(2) == 0 { 1i64 } else { -1 };
        let mut acc = vec![0i64; self.faces.len()];
        for x in 0..self.faces.len() {
            for &y in &self.up[x] {
                acc[y] = sign(x) + sign(y);
            }
            for &z in &self.up[x] {
                for &y in &self.up[z] {
                    acc[y] += sign(z);
                }
            }
            if self.up[x].iter().any(|&y| acc[y] != 0) {
                return false;
            }
        }
        true
    }

    /// The order-reversed lattice. Vertices of the dual are the facets.
    pub fn dual(&self) -> FaceLattice {
        let d = self.d as i32;
        let facets: Vec<FaceId> = self.faces_of_rank(d - 1).collect();
        let facet_index: HashMap<FaceId, usize> =
            facets.iter().enumerate().map(|(i, &f)| (f, i)).collect();
        let faces = self
            .faces
            .iter()
            .enumerate()
            .map(|(id, f)| {
                let mut vs: Vec<usize> = self.up[id]
                    .iter()
                    .filter_map(|g| facet_index.get(g).copied())
                    .collect();
                if let Some(&i) = facet_index.get(&id) {
                    vs.push(i);
                }
                (d - 1 - f.rank, vs)
            })
            .collect();
        Self::assemble(self.d, faces).expect("dual of a valid lattice is valid")
    }

    /// The interval `[F, top]`, a lattice of dimension `d - 1 - rank(F)`
    /// whose vertices are the faces covering `F`.
    pub fn quotient(&self, face: FaceId) -> Result<FaceLattice> {
        if face >= self.faces.len() || face == self.top() {
            return Err(Error::FaceNotInLattice);
        }
        let base = self.faces[face].rank;
        let atoms: Vec<FaceId> = self.up_of_rank(face, base + 1).collect();
        let atom_index: HashMap<FaceId, usize> =
            atoms.iter().enumerate().map(|(i, &a)| (a, i)).collect();
        let mut faces = vec![(-1, Vec::new())];
        for &g in &self.up[face] {
            let mut vs: Vec<usize> = self.down[g]
                .iter()
                .filter_map(|h| atom_index.get(h).copied())
                .collect();
            if let Some(&i) = atom_index.get(&g) {
                vs.push(i);
            }
            faces.push((self.faces[g].rank - base - 1, vs));
        }
        Self::assemble((self.d as i32 - 1 - base) as usize, faces)
    }

    /// The interval `[∅, F]`: the face lattice of `F` itself, with its
    /// vertices renumbered from zero.
    pub fn lower(&self, face: FaceId) -> Result<FaceLattice> {
        if face >= self.faces.len() || face == self.bottom() {
            return Err(Error::FaceNotInLattice);
        }
        let verts = &self.faces[face].vertices;
        let relabel: HashMap<usize, usize> =
            verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let faces = self.down[face]
            .iter()
            .chain(std::iter::once(&face))
            .map(|&g| {
                let f = &self.faces[g];
                (f.rank, f.vertices.iter().map(|v| relabel[v]).collect())
            })
            .collect();
        Self::assemble(self.faces[face].rank as usize, faces)
    }

    pub fn to_doc(&self) -> LatticeDoc {
        LatticeDoc {
            d: self.d,
            faces: self
                .faces
                .iter()
                .map(|f| FaceDoc { rank: f.rank, vertices: f.vertices.clone() })
                .collect(),
        }
    }

    pub fn from_doc(doc: LatticeDoc) -> Result<Self> {
        Self::from_faces(doc.d, doc.faces.into_iter().map(|f| (f.rank, f.vertices)).collect())
    }
}

/// Serialized form `{d, faces: [{rank, vertices}]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeDoc {
    pub d: usize,
    pub faces: Vec<FaceDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceDoc {
    pub rank: i32,
    pub vertices: Vec<usize>,
}

fn closure_of_facets(d: usize, n: usize, facets: &[Vec<usize>]) -> Result<FaceLattice> {
    let limit = max_faces();
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    for facet in facets {
        for k in 0..=facet.len() {
            for sub in facet.iter().copied().combinations(k) {
                seen.insert(sub);
            }
            if seen.len() > limit {
                return Err(Error::TooLarge(format!(
                    "more than {limit} faces (set FLAGVEC_MAX_FACES to raise it)"
                )));
            }
        }
    }
    let mut faces: Vec<(i32, Vec<usize>)> =
        seen.into_iter().map(|vs| (vs.len() as i32 - 1, vs)).collect();
    faces.push((d as i32, (0..n).collect()));
    FaceLattice::assemble(d, faces)
}

fn check_dim(d: usize) -> Result<()> {
    if d > MAX_LATTICE_DIM {
        Err(Error::TooLarge(format!("dimension {d} exceeds the limit of {MAX_LATTICE_DIM}")))
    } else {
        Ok(())
    }
}

/// The `d`-simplex: every subset of `d + 1` vertices is a face.
pub fn build_simplex(d: usize) -> Result<FaceLattice> {
    check_dim(d)?;
    let n = d + 1;
    let faces = (0..1usize << n)
        .map(|mask| {
            let vs: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
            (vs.len() as i32 - 1, vs)
        })
        .collect();
    FaceLattice::assemble(d, faces)
}

/// Gale's evenness condition on a sorted `d`-subset of `{0, …, n-1}`.
pub fn gale_evenness(facet: &[usize], n: usize) -> bool {
    let mut inside = vec![false; n];
    for &v in facet {
        inside[v] = true;
    }
    let outside: Vec<usize> = (0..n).filter(|&v| !inside[v]).collect();
    outside
        .iter()
        .tuple_windows()
        .all(|(&i, &j)| (i + 1..j).filter(|&k| inside[k]).count() % 2 == 0)
}

/// Facets of the cyclic polytope `C_d(n)` with vertices in natural order.
pub fn cyclic_facets(d: usize, n: usize) -> Vec<Vec<usize>> {
    (0..n)
        .combinations(d)
        .filter(|s| gale_evenness(s, n))
        .collect()
}

/// The cyclic polytope `C_d(n)`, realized combinatorially: the facets are
/// the Gale-evenness `d`-subsets and every proper face is a subset of one.
pub fn build_cyclic(d: usize, n: usize) -> Result<FaceLattice> {
    if d < 2 || n <= d {
        return Err(Error::InvalidParams(format!(
            "cyclic polytope needs d >= 2 and n > d (got d={d}, n={n})"
        )));
    }
    check_dim(d)?;
    closure_of_facets(d, n, &cyclic_facets(d, n))
}

/// The `d`-cube: faces are the sign patterns in `{0, 1, *}^d`.
pub fn build_cube(d: usize) -> Result<FaceLattice> {
    if d < 1 {
        return Err(Error::InvalidParams("cube needs d >= 1".into()));
    }
    check_dim(d)?;
    let n = 1usize << d;
    let mut faces = vec![(-1, Vec::new())];
    for pattern in (0..d).map(|_| 0..3u8).multi_cartesian_product() {
        let rank = pattern.iter().filter(|&&p| p == 2).count() as i32;
        let vs = (0..n)
            .filter(|&v| {
                pattern
                    .iter()
                    .enumerate()
                    .all(|(i, &p)| p == 2 || (v >> i & 1) as u8 == p)
            })
            .collect();
        faces.push((rank, vs));
    }
    FaceLattice::assemble(d, faces)
}

/// The `d`-dimensional cross-polytope on vertices `±e_i` (indices `2i`,
/// `2i+1`); proper faces are the sets without an antipodal pair.
pub fn build_crosspolytope(d: usize) -> Result<FaceLattice> {
    if d < 1 {
        return Err(Error::InvalidParams("cross-polytope needs d >= 1".into()));
    }
    check_dim(d)?;
    let mut faces = Vec::new();
    for choice in (0..d).map(|_| 0..3u8).multi_cartesian_product() {
        let vs: Vec<usize> = choice
            .iter()
            .enumerate()
            .filter(|&(_, &c)| c < 2)
            .map(|(i, &c)| 2 * i + c as usize)
            .collect();
        faces.push((vs.len() as i32 - 1, vs));
    }
    // the choice with every coordinate picked gives a facet; the top is all vertices
    faces.push((d as i32, (0..2 * d).collect()));
    FaceLattice::assemble(d, faces)
}

/// The `n`-gon.
pub fn build_polygon(n: usize) -> Result<FaceLattice> {
    if n < 3 {
        return Err(Error::InvalidParams(format!("polygon needs n >= 3 (got {n})")));
    }
    let mut faces = vec![(-1, Vec::new())];
    faces.extend((0..n).map(|v| (0, vec![v])));
    faces.extend((0..n).map(|v| (1, vec![v, (v + 1) % n])));
    faces.push((2, (0..n).collect()));
    FaceLattice::assemble(2, faces)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fv(l: &FaceLattice) -> Vec<i64> {
        l.f_vector()
            .components()
            .iter()
            .map(|x| i64::try_from(x).unwrap())
            .collect()
    }

    fn set(k: &str) -> FlagSet {
        k.parse().unwrap()
    }

    #[test]
    fn simplex_f_vectors() {
        let p = build_simplex(0).unwrap();
        assert_eq!(p.len(), 2);
        assert_eq!(p.face(p.top()).rank, 0);
        assert_eq!(fv(&build_simplex(3).unwrap()), [4, 6, 4]);
        assert_eq!(fv(&build_simplex(6).unwrap()), [7, 21, 35, 35, 21, 7]);
    }

    #[test]
    fn cyclic_f_vectors() {
        assert_eq!(fv(&build_cyclic(5, 8).unwrap()), [8, 28, 52, 50, 20]);
        assert_eq!(fv(&build_cyclic(7, 8).unwrap()), [8, 28, 56, 70, 56, 28, 8]);
        let c = fv(&build_cyclic(6, 10).unwrap());
        assert_eq!((c[1], c[2]), (45, 120));
        assert_eq!(fv(&build_cyclic(2, 6).unwrap()), [6, 6]);
    }

    #[test]
    fn cyclic_rejects_bad_params() {
        assert!(matches!(build_cyclic(5, 5), Err(Error::InvalidParams(_))));
        assert!(matches!(build_cyclic(1, 5), Err(Error::InvalidParams(_))));
        assert!(matches!(build_cyclic(9, 12), Err(Error::TooLarge(_))));
    }

    #[test]
    fn other_families() {
        assert_eq!(fv(&build_cube(3).unwrap()), [8, 12, 6]);
        assert_eq!(fv(&build_crosspolytope(4).unwrap()), [8, 24, 32, 16]);
        assert_eq!(fv(&build_polygon(5).unwrap()), [5, 5]);
        assert!(build_polygon(2).is_err());
        assert!(build_cube(0).is_err());
        assert!(build_crosspolytope(0).is_err());
    }

    #[test]
    fn dual_reverses_f_vector() {
        assert_eq!(fv(&build_cube(3).unwrap().dual()), [6, 12, 8]);
        assert_eq!(fv(&build_simplex(4).unwrap().dual()), fv(&build_simplex(4).unwrap()));
        let c = build_cyclic(5, 8).unwrap().dual();
        assert_eq!(c.flag_number(set("0")), BigInt::from(20));
        assert_eq!(
            fv(&build_crosspolytope(4).unwrap()),
            fv(&build_cube(4).unwrap().dual())
        );
    }

    #[test]
    fn quotients() {
        let cube = build_cube(3).unwrap();
        assert_eq!(cube.quotient(cube.bottom()).unwrap(), cube);
        let tet = build_simplex(3).unwrap();
        let v = tet.faces_of_rank(0).next().unwrap();
        assert_eq!(fv(&tet.quotient(v).unwrap()), [3, 3]);
        let e = cube.faces_of_rank(1).next().unwrap();
        let q = cube.quotient(e).unwrap();
        assert_eq!(q.dim(), 1);
        assert_eq!(fv(&q), [2]);
        assert_eq!(cube.quotient(cube.top()), Err(Error::FaceNotInLattice));
        let facet = cube.faces_of_rank(2).next().unwrap();
        assert_eq!(cube.quotient(facet).unwrap().dim(), 0);
    }

    #[test]
    fn lower_interval_is_face_lattice() {
        let c = build_cube(4).unwrap();
        let facet = c.faces_of_rank(3).next().unwrap();
        assert_eq!(fv(&c.lower(facet).unwrap()), [8, 12, 6]);
    }

    #[test]
    fn flag_numbers_by_enumeration() {
        assert_eq!(build_simplex(5).unwrap().flag_number(set("02")), BigInt::from(60));
        let tet = build_simplex(3).unwrap();
        assert_eq!(tet.flag_number(set("012")), BigInt::from(24));
        assert_eq!(tet.flags(set("012")).len(), 24);
        assert_eq!(build_cyclic(5, 8).unwrap().flag_number(set("0")), BigInt::from(8));
        assert_eq!(tet.flag_number(FlagSet::EMPTY), BigInt::one());
    }

    #[test]
    fn flag_vector_agrees_with_single_entries() {
        let l = build_cube(4).unwrap();
        let v = l.flag_vector();
        for s in FlagSet::all(4) {
            assert_eq!(v.get(s), Some(&l.flag_number(s)), "f_{s}");
            assert_eq!(l.flags(s).len(), usize::try_from(l.flag_number(s)).unwrap());
        }
    }

    #[test]
    fn enumerated_flags_are_chains() {
        let l = build_cyclic(4, 7).unwrap();
        for fl in l.flags(set("023")) {
            let ranks: Vec<i32> = fl.chain.iter().map(|&f| l.face(f).rank).collect();
            assert_eq!(ranks, [0, 2, 3]);
            assert!(fl.chain.windows(2).all(|w| l.leq(w[0], w[1])));
        }
    }

    #[test]
    fn eulerian_detection() {
        assert!(build_simplex(4).unwrap().is_eulerian());
        assert!(build_cyclic(7, 10).unwrap().is_eulerian());
        let tet = build_simplex(3).unwrap();
        let facet = tet.faces_of_rank(2).next().unwrap();
        let faces = tet
            .faces()
            .iter()
            .enumerate()
            .filter(|&(id, _)| id != facet)
            .map(|(_, f)| (f.rank, f.vertices.clone()))
            .collect();
        let broken = FaceLattice::from_faces(3, faces).unwrap();
        assert!(!broken.is_eulerian());
    }

    #[test]
    fn from_faces_rejects_malformed() {
        // no empty face
        assert!(FaceLattice::from_faces(1, vec![(0, vec![0]), (0, vec![1]), (1, vec![0, 1])]).is_err());
        // skips rank 1 between vertex and top of a triangle
        let faces = vec![(-1, vec![]), (0, vec![0]), (0, vec![1]), (0, vec![2]), (2, vec![0, 1, 2])];
        assert!(FaceLattice::from_faces(2, faces).is_err());
        // non-singleton vertex
        let faces = vec![(-1, vec![]), (0, vec![0, 1]), (1, vec![0, 1])];
        assert!(FaceLattice::from_faces(1, faces).is_err());
    }

    #[test]
    fn json_round_trip() {
        let l = build_cyclic(4, 6).unwrap();
        let text = serde_json::to_string(&l.to_doc()).unwrap();
        let back = FaceLattice::from_doc(serde_json::from_str(&text).unwrap()).unwrap();
        assert_eq!(back, l);
    }

    #[test]
    fn simplicial_and_simple() {
        assert!(build_cyclic(5, 9).unwrap().is_simplicial());
        assert!(!build_cube(3).unwrap().is_simplicial());
        assert!(build_cube(3).unwrap().is_simple());
        assert!(build_crosspolytope(3).unwrap().is_simplicial());
    }
}
