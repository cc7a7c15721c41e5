//! Matroids given by their bases over a totally ordered ground set `0 < 1 < … < n-1`.

mod error;
pub mod subset;
mod tutte;

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::sync::OnceLock;

pub use error::MatroidError;
pub use subset::{Subset, MAX_GROUND_SET};
pub use tutte::{tutte_by_deletion_contraction, ActivityRecord, TuttePoly};

use subset::{elements, full, is_subset, k_subsets, size};

/// Ground sets up to this size get a full rank table on first use.
const RANK_TABLE_LIMIT: usize = 16;

pub struct Matroid {
    n: usize,
    rank: usize,
    /// sorted ascending
    bases: Vec<Subset>,
    basis_set: HashSet<Subset>,
    rank_table: OnceLock<Vec<u8>>,
}

impl Clone for Matroid {
    fn clone(&self) -> Self {
        Matroid::from_valid_bases(self.n, self.bases.clone())
    }
}

impl PartialEq for Matroid {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.bases == other.bases
    }
}

impl Eq for Matroid {}

impl fmt::Debug for Matroid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Matroid")
            .field("n", &self.n)
            .field("rank", &self.rank)
            .field(
                "bases",
                &self
                    .bases
                    .iter()
                    .map(|&b| subset::format(b))
                    .collect::<Vec<_>>(),
            )
            .finish()
    }
}

/// A minor `M(F)/E`, relabeled onto `0..|F∖E|` in the ambient order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Minor {
    pub matroid: Matroid,
    /// `embedding[i]` is the ambient element carrying local label `i`; increasing.
    pub embedding: Vec<usize>,
}

impl Minor {
    pub fn to_ambient(&self, s: Subset) -> Subset {
        elements(s).fold(0, |acc, i| acc | 1 << self.embedding[i])
    }

    /// Local labels of an ambient subset; elements outside the embedding are dropped.
    pub fn from_ambient(&self, s: Subset) -> Subset {
        self.embedding
            .iter()
            .enumerate()
            .filter(|(_, &a)| subset::contains(s, a))
            .fold(0, |acc, (i, _)| acc | 1 << i)
    }

    pub fn ground(&self) -> Subset {
        subset::from_elements(self.embedding.iter().copied())
    }
}

/// Coloop-free flats of a matroid, listed in a linear extension of inclusion
/// (by size, then by mask).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicFlatPoset {
    flats: Vec<Subset>,
}

impl CyclicFlatPoset {
    pub fn flats(&self) -> &[Subset] {
        &self.flats
    }

    pub fn len(&self) -> usize {
        self.flats.len()
    }

    pub fn is_empty(&self) -> bool {
        self.flats.is_empty()
    }

    /// The smallest cyclic flat: the set of loops.
    pub fn smallest(&self) -> Subset {
        self.flats[0]
    }

    /// The largest cyclic flat: the complement of the coloops.
    pub fn largest(&self) -> Subset {
        *self.flats.last().expect("poset is never empty")
    }

    pub fn index_of(&self, flat: Subset) -> Option<usize> {
        self.flats.iter().position(|&f| f == flat)
    }

    pub fn contains(&self, flat: Subset) -> bool {
        self.index_of(flat).is_some()
    }

    /// Index pairs `(i, j)` with `flats[i] ⊆ flats[j]`, including `i == j`.
    pub fn nested_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (i, &e) in self.flats.iter().enumerate() {
            for (j, &f) in self.flats.iter().enumerate() {
                if is_subset(e, f) {
                    out.push((i, j));
                }
            }
        }
        out
    }
}

impl Matroid {
    fn from_valid_bases(n: usize, mut bases: Vec<Subset>) -> Self {
        bases.sort_unstable();
        bases.dedup();
        let rank = size(bases[0]);
        let basis_set = bases.iter().copied().collect();
        Matroid {
            n,
            rank,
            bases,
            basis_set,
            rank_table: OnceLock::new(),
        }
    }

    /// Validates the basis axioms and builds the matroid.
    pub fn from_bases(n: usize, bases: Vec<Subset>) -> Result<Self, MatroidError> {
        if n > MAX_GROUND_SET {
            return Err(MatroidError::GroundSetTooLarge(n));
        }
        let Some(&first) = bases.first() else {
            return Err(MatroidError::EmptyBasisList);
        };
        for &b in &bases {
            if !is_subset(b, full(n)) {
                return Err(MatroidError::ElementOutOfRange { set: b, n });
            }
            if size(b) != size(first) {
                return Err(MatroidError::EqualCardinalityViolation { first, second: b });
            }
        }
        let m = Matroid::from_valid_bases(n, bases);
        m.check_exchange()?;
        Ok(m)
    }

    fn check_exchange(&self) -> Result<(), MatroidError> {
        for &b1 in &self.bases {
            for &b2 in &self.bases {
                if b1 == b2 {
                    continue;
                }
                for x in elements(b1 & !b2) {
                    let ok = elements(b2 & !b1)
                        .any(|y| self.basis_set.contains(&(b1 & !(1 << x) | 1 << y)));
                    if !ok {
                        return Err(MatroidError::ExchangeViolation {
                            first: b1,
                            second: b2,
                            element: x,
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// Uniform matroid `U_{r,n}`: every `r`-subset is a basis.
    pub fn uniform(r: usize, n: usize) -> Result<Self, MatroidError> {
        if n > MAX_GROUND_SET {
            return Err(MatroidError::GroundSetTooLarge(n));
        }
        if r > n {
            return Err(MatroidError::RankExceedsSize { rank: r, n });
        }
        Ok(Matroid::from_valid_bases(n, k_subsets(full(n), r)))
    }

    /// Cycle matroid of a multigraph; edge `i` is ground element `i`.
    pub fn from_graph(vertices: usize, edges: &[(usize, usize)]) -> Result<Self, MatroidError> {
        let n = edges.len();
        if n > MAX_GROUND_SET {
            return Err(MatroidError::GroundSetTooLarge(n));
        }
        for (i, &(u, v)) in edges.iter().enumerate() {
            if u >= vertices || v >= vertices {
                return Err(MatroidError::VertexOutOfRange {
                    edge: i,
                    vertex: u.max(v),
                    vertices,
                });
            }
        }
        let forest = |s: Subset| -> bool {
            let mut uf = UnionFind::new(vertices);
            elements(s).all(|e| uf.union(edges[e].0, edges[e].1))
        };
        let mut uf = UnionFind::new(vertices);
        let mut rank = 0;
        for &(u, v) in edges {
            if uf.union(u, v) {
                rank += 1;
            }
        }
        let bases = k_subsets(full(n), rank)
            .into_iter()
            .filter(|&s| forest(s))
            .collect();
        Ok(Matroid::from_valid_bases(n, bases))
    }

    /// Direct sum; the elements of `other` are shifted past those of `self`.
    pub fn direct_sum(&self, other: &Matroid) -> Result<Self, MatroidError> {
        let n = self.n + other.n;
        if n > MAX_GROUND_SET {
            return Err(MatroidError::GroundSetTooLarge(n));
        }
        let bases = self
            .bases
            .iter()
            .flat_map(|&a| other.bases.iter().map(move |&b| a | b << self.n))
            .collect();
        Ok(Matroid::from_valid_bases(n, bases))
    }

    pub fn ground_size(&self) -> usize {
        self.n
    }

    pub fn ground(&self) -> Subset {
        full(self.n)
    }

    /// Common size of the bases.
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn bases(&self) -> &[Subset] {
        &self.bases
    }

    pub fn is_basis(&self, s: Subset) -> bool {
        self.basis_set.contains(&s)
    }

    pub fn is_independent(&self, s: Subset) -> bool {
        self.rank_of(s) == size(s)
    }

    fn rank_table(&self) -> &[u8] {
        self.rank_table.get_or_init(|| {
            let total = 1usize << self.n;
            let mut indep = vec![false; total];
            for &b in &self.bases {
                indep[b as usize] = true;
            }
            for s in (0..total).rev() {
                if indep[s] {
                    let mut rest = s;
                    while rest != 0 {
                        let low = rest & rest.wrapping_neg();
                        indep[s ^ low] = true;
                        rest ^= low;
                    }
                }
            }
            let mut table = vec![0u8; total];
            for s in 1..total {
                table[s] = if indep[s] {
                    s.count_ones() as u8
                } else {
                    let mut best = 0;
                    let mut rest = s;
                    while rest != 0 {
                        let low = rest & rest.wrapping_neg();
                        best = best.max(table[s ^ low]);
                        rest ^= low;
                    }
                    best
                };
            }
            table
        })
    }

    /// Size of a largest independent subset of `s`.
    pub fn rank_of(&self, s: Subset) -> usize {
        debug_assert!(is_subset(s, self.ground()));
        if self.n <= RANK_TABLE_LIMIT {
            self.rank_table()[s as usize] as usize
        } else {
            self.bases.iter().map(|&b| size(b & s)).max().unwrap_or(0)
        }
    }

    pub fn closure(&self, s: Subset) -> Subset {
        let r = self.rank_of(s);
        (0..self.n)
            .filter(|&x| subset::contains(s, x) || self.rank_of(s | 1 << x) == r)
            .fold(s, |acc, x| acc | 1 << x)
    }

    pub fn is_flat(&self, s: Subset) -> bool {
        self.closure(s) == s
    }

    pub fn loops(&self) -> Subset {
        self.ground() & !self.bases.iter().fold(0, |acc, &b| acc | b)
    }

    pub fn coloops(&self) -> Subset {
        self.bases.iter().fold(self.ground(), |acc, &b| acc & b)
    }

    pub fn dual(&self) -> Matroid {
        let g = self.ground();
        Matroid::from_valid_bases(self.n, self.bases.iter().map(|&b| g & !b).collect())
    }

    /// `M(F)/E` for `E ⊆ F`, relabeled onto `0..|F∖E|`.
    pub fn minor(&self, contract: Subset, restrict: Subset) -> Result<Minor, MatroidError> {
        if !is_subset(restrict, self.ground()) {
            return Err(MatroidError::ElementOutOfRange {
                set: restrict,
                n: self.n,
            });
        }
        if !is_subset(contract, restrict) {
            return Err(MatroidError::NotNested {
                inner: contract,
                outer: restrict,
            });
        }
        let ground = restrict & !contract;
        let embedding: Vec<usize> = elements(ground).collect();
        let r_outer = self.rank_of(restrict);
        let r_inner = self.rank_of(contract);
        let local: Vec<Subset> = k_subsets(ground, r_outer - r_inner)
            .into_iter()
            .filter(|&s| self.rank_of(s | contract) == r_outer)
            .map(|s| {
                embedding
                    .iter()
                    .enumerate()
                    .filter(|(_, &a)| subset::contains(s, a))
                    .fold(0, |acc, (i, _)| acc | 1 << i)
            })
            .collect();
        Ok(Minor {
            matroid: Matroid::from_valid_bases(embedding.len(), local),
            embedding,
        })
    }

    /// Restriction `M(X)`, relabeled.
    pub fn restriction(&self, x: Subset) -> Result<Minor, MatroidError> {
        self.minor(0, x)
    }

    /// Contraction `M/E`, relabeled.
    pub fn contraction(&self, e: Subset) -> Result<Minor, MatroidError> {
        self.minor(e, self.ground())
    }

    /// All flats, ascending by mask.
    pub fn flats(&self) -> Vec<Subset> {
        let set: BTreeSet<Subset> = subset::subsets_of(self.ground())
            .map(|s| self.closure(s))
            .collect();
        set.into_iter().collect()
    }

    /// Flats whose restriction has no coloop.
    pub fn cyclic_flats(&self) -> CyclicFlatPoset {
        let mut flats: Vec<Subset> = self
            .flats()
            .into_iter()
            .filter(|&f| {
                let r = self.rank_of(f);
                elements(f).all(|x| self.rank_of(f & !(1 << x)) == r)
            })
            .collect();
        flats.sort_by_key(|&f| (size(f), f));
        CyclicFlatPoset { flats }
    }

    /// All minimal dependent sets, by enumeration.
    pub fn circuits(&self) -> Vec<Subset> {
        let mut out: Vec<Subset> = Vec::new();
        let mut by_size: Vec<Subset> = subset::subsets_of(self.ground()).collect();
        by_size.sort_by_key(|&s| (size(s), s));
        for s in by_size {
            if self.is_independent(s) || out.iter().any(|&c| is_subset(c, s)) {
                continue;
            }
            out.push(s);
        }
        out
    }

    /// The unique circuit in `B ∪ {p}` for a basis `B` and `p ∉ B`.
    pub fn fundamental_circuit(&self, basis: Subset, p: usize) -> Subset {
        debug_assert!(self.is_basis(basis) && !subset::contains(basis, p));
        elements(basis)
            .filter(|&b| self.is_basis(basis & !(1 << b) | 1 << p))
            .fold(1 << p, |acc, b| acc | 1 << b)
    }

    /// The unique bond in `(I∖B) ∪ {b}` for a basis `B` and `b ∈ B`.
    pub fn fundamental_bond(&self, basis: Subset, b: usize) -> Subset {
        debug_assert!(self.is_basis(basis) && subset::contains(basis, b));
        elements(self.ground() & !basis)
            .filter(|&p| self.is_basis(basis & !(1 << b) | 1 << p))
            .fold(1 << b, |acc, p| acc | 1 << p)
    }

    /// Every two elements lie on a common circuit. Single elements count as connected.
    pub fn is_connected(&self) -> Result<bool, MatroidError> {
        if self.n == 0 {
            return Err(MatroidError::EmptyGroundSet);
        }
        // components are generated by the fundamental circuits of any one basis
        let basis = self.bases[0];
        let mut uf = UnionFind::new(self.n);
        for p in elements(self.ground() & !basis) {
            let c = self.fundamental_circuit(basis, p);
            for x in elements(c) {
                uf.union(p, x);
            }
        }
        let root = uf.find(0);
        Ok((1..self.n).all(|x| uf.find(x) == root))
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut c = x;
        while self.parent[c] != r {
            let next = self.parent[c];
            self.parent[c] = r;
            c = next;
        }
        r
    }

    /// Merges the classes; false if already joined.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        true
    }
}

/// Edges of the complete graph `K_4` in lexicographic order:
/// `01, 02, 03, 12, 13, 23`.
pub const K4_EDGES: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

/// Cycle matroid of `K_4`.
pub fn k4() -> Matroid {
    Matroid::from_graph(4, &K4_EDGES).expect("K4 edges are valid")
}

#[cfg(test)]
mod tests {
    use super::subset::from_elements;
    use super::*;

    fn brute_connected(m: &Matroid) -> bool {
        let circuits = m.circuits();
        (0..m.ground_size()).all(|x| {
            (0..m.ground_size()).all(|y| {
                x == y
                    || circuits
                        .iter()
                        .any(|&c| subset::contains(c, x) && subset::contains(c, y))
            })
        })
    }

    #[test]
    fn from_bases_accepts_uniform() {
        let m = Matroid::from_bases(2, vec![0b01, 0b10]).unwrap();
        assert_eq!(m, Matroid::uniform(1, 2).unwrap());
    }

    #[test]
    fn from_bases_rejects_unequal_sizes() {
        assert!(matches!(
            Matroid::from_bases(2, vec![0b01, 0b11]),
            Err(MatroidError::EqualCardinalityViolation { .. })
        ));
    }

    #[test]
    fn from_bases_rejects_exchange_failure() {
        let err = Matroid::from_bases(4, vec![0b0011, 0b1100]).unwrap_err();
        let MatroidError::ExchangeViolation {
            first,
            second,
            element,
        } = err
        else {
            panic!("unexpected error {err:?}");
        };
        // the witness really fails the exchange
        assert!(subset::contains(first & !second, element));
        for y in elements(second & !first) {
            let swapped = first & !(1 << element) | 1 << y;
            assert!(swapped != 0b0011 && swapped != 0b1100);
        }
    }

    #[test]
    fn from_bases_rejects_empty_list() {
        assert_eq!(
            Matroid::from_bases(3, vec![]),
            Err(MatroidError::EmptyBasisList)
        );
    }

    #[test]
    fn graph_constructors() {
        assert_eq!(k4().bases().len(), 16);
        let coloop = Matroid::from_graph(2, &[(0, 1)]).unwrap();
        assert_eq!(coloop.bases(), &[0b1]);
        let lp = Matroid::from_graph(1, &[(0, 0)]).unwrap();
        assert_eq!(lp.bases(), &[0]);
        assert!(matches!(
            Matroid::from_graph(2, &[(0, 2)]),
            Err(MatroidError::VertexOutOfRange { .. })
        ));
    }

    #[test]
    fn uniform_and_dual() {
        let m = Matroid::uniform(1, 3).unwrap();
        assert_eq!(m.bases(), &[0b001, 0b010, 0b100]);
        assert_eq!(m.dual(), Matroid::uniform(2, 3).unwrap());
        let z = Matroid::uniform(0, 2).unwrap();
        assert_eq!(z.bases(), &[0]);
        assert_eq!(z.loops(), 0b11);
        assert!(Matroid::uniform(3, 2).is_err());
        let coloop = Matroid::uniform(1, 1).unwrap();
        assert_eq!(coloop.dual(), Matroid::uniform(0, 1).unwrap());
        assert_eq!(k4().dual().bases().len(), 16);
    }

    #[test]
    fn rank_and_closure() {
        let g = k4();
        // edges 01, 02, 12 form a triangle
        assert_eq!(g.rank_of(from_elements([0, 1, 3])), 2);
        let u24 = Matroid::uniform(2, 4).unwrap();
        assert_eq!(u24.rank_of(0b1), 1);
        assert_eq!(u24.rank_of(u24.ground()), 2);
        let u13 = Matroid::uniform(1, 3).unwrap();
        assert_eq!(u13.closure(0b1), 0b111);
        assert_eq!(u24.closure(0b1), 0b1);
        assert_eq!(g.closure(from_elements([0, 1])), from_elements([0, 1, 3]));
    }

    #[test]
    fn big_ground_set_uses_basis_scan() {
        let m = Matroid::uniform(2, 17).unwrap();
        assert_eq!(m.rank_of(0b111), 2);
        assert_eq!(m.rank_of(0b1), 1);
        assert_eq!(m.closure(0b1), 0b1);
    }

    #[test]
    fn minors() {
        let g = k4();
        let triangle = from_elements([0, 1, 3]);
        let quotient = g.minor(triangle, g.ground()).unwrap();
        assert_eq!(quotient.matroid, Matroid::uniform(1, 3).unwrap());
        assert_eq!(quotient.embedding, vec![2, 4, 5]);
        assert_eq!(quotient.to_ambient(0b101), from_elements([2, 5]));
        assert_eq!(quotient.from_ambient(from_elements([2, 5, 0])), 0b101);
        assert_eq!(g.minor(0, g.ground()).unwrap().matroid, g);
        let empty = Matroid::uniform(1, 4).unwrap().minor(0, 0).unwrap();
        assert_eq!(empty.matroid.bases(), &[0]);
        assert_eq!(empty.matroid.ground_size(), 0);
        assert!(matches!(
            g.minor(0b11, 0b01),
            Err(MatroidError::NotNested { .. })
        ));
    }

    #[test]
    fn contraction_matches_double_dual() {
        let g = k4();
        for e in subset::subsets_of(g.ground()) {
            let direct = g.contraction(e).unwrap().matroid;
            // M/E = (M*(I∖E))*
            let via_dual = g
                .dual()
                .restriction(g.ground() & !e)
                .unwrap()
                .matroid
                .dual();
            assert_eq!(direct, via_dual, "contracting {}", subset::format(e));
        }
    }

    #[test]
    fn cyclic_flats_of_examples() {
        let m3 = Matroid::uniform(1, 3).unwrap();
        assert_eq!(m3.cyclic_flats().flats(), &[0, 0b111]);
        let g = k4();
        let cf = g.cyclic_flats();
        assert_eq!(cf.len(), 6);
        assert_eq!(cf.smallest(), 0);
        assert_eq!(cf.largest(), g.ground());
        let triangles: Vec<_> = cf.flats()[1..5].to_vec();
        for t in triangles {
            assert_eq!(size(t), 3);
            assert_eq!(g.rank_of(t), 2);
        }
    }

    #[test]
    fn cyclic_flats_complement_under_duality() {
        let cases = [
            k4(),
            Matroid::uniform(2, 5).unwrap(),
            Matroid::uniform(0, 2)
                .unwrap()
                .direct_sum(&Matroid::uniform(1, 3).unwrap())
                .unwrap(),
        ];
        for m in cases {
            let g = m.ground();
            let mut lhs: Vec<_> = m.cyclic_flats().flats().iter().map(|&f| g & !f).collect();
            lhs.sort_by_key(|&f| (size(f), f));
            assert_eq!(lhs, m.dual().cyclic_flats().flats());
        }
    }

    #[test]
    fn connectivity() {
        assert!(Matroid::uniform(1, 2).unwrap().is_connected().unwrap());
        let two_coloops = Matroid::uniform(2, 2).unwrap();
        assert!(!two_coloops.is_connected().unwrap());
        assert!(k4().is_connected().unwrap());
        assert!(Matroid::uniform(0, 1).unwrap().is_connected().unwrap());
        assert_eq!(
            Matroid::uniform(0, 0).unwrap().is_connected(),
            Err(MatroidError::EmptyGroundSet)
        );
        let cases = [
            k4(),
            Matroid::uniform(1, 3)
                .unwrap()
                .direct_sum(&Matroid::uniform(1, 2).unwrap())
                .unwrap(),
            Matroid::uniform(0, 2).unwrap(),
            Matroid::uniform(3, 5).unwrap(),
            Matroid::from_graph(4, &[(0, 1), (1, 2), (2, 0), (2, 3)]).unwrap(),
        ];
        for m in cases {
            assert_eq!(m.is_connected().unwrap(), brute_connected(&m), "{m:?}");
        }
    }

    #[test]
    fn fundamental_circuit_and_bond() {
        let m = Matroid::uniform(1, 3).unwrap();
        assert_eq!(m.fundamental_circuit(0b001, 2), 0b101);
        assert_eq!(m.fundamental_bond(0b001, 0), 0b111);
    }
}
