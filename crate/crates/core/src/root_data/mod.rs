//! Root systems, coroots and Weyl groups as exact integer-lattice
//! objects.
//!
//! Roots live in simple-root coordinates, coroots in simple-coroot
//! coordinates. The Cartan matrix convention is
//! `cartan[i][j] = <alpha_j, coroot(alpha_i)>`, so the simple
//! reflections act by
//! `s_i(alpha_j) = alpha_j - cartan[i][j] * alpha_i` on the root
//! lattice and `s_i(coroot_j) = coroot_j - cartan[j][i] * coroot_i` on
//! the coroot lattice, both integrally.

mod weyl;

pub use weyl::{
    IntMatrix, WeylElement, WeylGroup, act_on_coroot, generate_weyl, negative_simple_set,
};

use serde::Serialize;
use thiserror::Error;

/// Errors from root-datum construction.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RootError {
    #[error("unsupported series/rank: {0}")]
    UnsupportedSeries(String),
    #[error("epsilon = 1 is only supported for rank-one data")]
    EpsilonNotRankOne,
    #[error("epsilon entries must be 0 or 1")]
    BadEpsilon,
}

/// Supported Cartan series.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Series {
    A,
    B,
    C,
    D,
    G2,
}

impl Series {
    pub fn parse(s: &str) -> Option<Series> {
        match s {
            "A" | "a" => Some(Series::A),
            "B" | "b" => Some(Series::B),
            "C" | "c" => Some(Series::C),
            "D" | "d" => Some(Series::D),
            "G2" | "g2" | "G" | "g" => Some(Series::G2),
            _ => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Series::A => "A",
            Series::B => "B",
            Series::C => "C",
            Series::D => "D",
            Series::G2 => "G2",
        }
    }

    /// Number of positive roots for a valid (series, rank) pair.
    pub fn positive_root_count(&self, rank: usize) -> usize {
        match self {
            Series::A => rank * (rank + 1) / 2,
            Series::B | Series::C => rank * rank,
            Series::D => rank * (rank - 1),
            Series::G2 => 6,
        }
    }

    /// Order of the Weyl group for a valid (series, rank) pair.
    pub fn weyl_order(&self, rank: usize) -> usize {
        let factorial = |n: usize| (1..=n).product::<usize>();
        match self {
            Series::A => factorial(rank + 1),
            Series::B | Series::C => (1 << rank) * factorial(rank),
            Series::D => (1 << (rank - 1)) * factorial(rank),
            Series::G2 => 12,
        }
    }
}

/// A root in simple-root coordinates.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct RootVector {
    pub coords: Vec<i64>,
}

impl RootVector {
    pub fn is_positive(&self) -> bool {
        match self.coords.iter().find(|&&c| c != 0) {
            Some(&c) => c > 0,
            None => false, // zero vector is never a root
        }
    }

    pub fn is_negative(&self) -> bool {
        match self.coords.iter().find(|&&c| c != 0) {
            Some(&c) => c < 0,
            None => false,
        }
    }

    pub fn neg(&self) -> RootVector {
        RootVector {
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }
}

/// A coroot in simple-coroot coordinates.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct CorootVector {
    pub coords: Vec<i64>,
}

impl CorootVector {
    pub fn neg(&self) -> CorootVector {
        CorootVector {
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }
}

/// A positive root together with its coroot expansion.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PositiveRoot {
    pub root: RootVector,
    pub coroot: CorootVector,
}

/// A root datum: Cartan matrix, epsilon flags on the simple roots, and
/// the full list of positive roots with coroot expansions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RootDatum {
    pub series: Series,
    pub rank: usize,
    pub cartan: Vec<Vec<i64>>,
    pub epsilon: Vec<u8>,
    pub positive_roots: Vec<PositiveRoot>,
}

impl RootDatum {
    /// `<root, coroot>` via Cartan-matrix contraction.
    pub fn pairing(&self, root: &RootVector, coroot: &CorootVector) -> i64 {
        let mut acc = 0i64;
        for (i, &ci) in coroot.coords.iter().enumerate() {
            for (j, &vj) in root.coords.iter().enumerate() {
                acc += ci * self.cartan[i][j] * vj;
            }
        }
        acc
    }

    /// Simple reflection `s_i` on the root lattice.
    pub fn reflect_root(&self, i: usize, v: &RootVector) -> RootVector {
        let pair: i64 = (0..self.rank).map(|j| self.cartan[i][j] * v.coords[j]).sum();
        let mut coords = v.coords.clone();
        coords[i] -= pair;
        RootVector { coords }
    }

    /// Simple reflection `s_i` on the coroot lattice.
    pub fn reflect_coroot(&self, i: usize, c: &CorootVector) -> CorootVector {
        let pair: i64 = (0..self.rank).map(|j| self.cartan[j][i] * c.coords[j]).sum();
        let mut coords = c.coords.clone();
        coords[i] -= pair;
        CorootVector { coords }
    }

    /// Look up the coroot expansion of any root (positive or negative).
    pub fn coroot_of(&self, root: &RootVector) -> Option<CorootVector> {
        if root.is_positive() {
            self.positive_roots
                .iter()
                .find(|p| &p.root == root)
                .map(|p| p.coroot.clone())
        } else {
            let pos = root.neg();
            self.positive_roots
                .iter()
                .find(|p| p.root == pos)
                .map(|p| p.coroot.neg())
        }
    }

    /// All roots, positives then negatives, each in the deterministic
    /// positive-root order.
    pub fn all_roots(&self) -> Vec<RootVector> {
        let mut out: Vec<RootVector> =
            self.positive_roots.iter().map(|p| p.root.clone()).collect();
        out.extend(self.positive_roots.iter().map(|p| p.root.neg()));
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("datum serializes")
    }
}

fn cartan_matrix(series: Series, rank: usize) -> Result<Vec<Vec<i64>>, RootError> {
    let supported = match series {
        Series::A => (1..=6).contains(&rank),
        Series::B | Series::C => (2..=4).contains(&rank),
        Series::D => rank == 4,
        Series::G2 => rank == 2,
    };
    if !supported {
        return Err(RootError::UnsupportedSeries(format!(
            "{}{rank}",
            series.name()
        )));
    }
    let mut m = vec![vec![0i64; rank]; rank];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = 2;
    }
    match series {
        Series::A => {
            for i in 0..rank.saturating_sub(1) {
                m[i][i + 1] = -1;
                m[i + 1][i] = -1;
            }
        }
        Series::B => {
            // last simple root short
            for i in 0..rank - 1 {
                m[i][i + 1] = -1;
                m[i + 1][i] = -1;
            }
            m[rank - 1][rank - 2] = -2;
        }
        Series::C => {
            // last simple root long
            for i in 0..rank - 1 {
                m[i][i + 1] = -1;
                m[i + 1][i] = -1;
            }
            m[rank - 2][rank - 1] = -2;
        }
        Series::D => {
            // chain 0-1-2 with 3 attached to 1
            for &(a, b) in &[(0usize, 1usize), (1, 2), (1, 3)] {
                m[a][b] = -1;
                m[b][a] = -1;
            }
        }
        Series::G2 => {
            // first simple root short
            m[0][1] = -3;
            m[1][0] = -1;
        }
    }
    Ok(m)
}

/// Build a root datum: positive roots are the reflection closure of the
/// simple roots, with coroot expansions carried along under the
/// corresponding coroot reflections.
pub fn build_root_datum(
    series: Series,
    rank: usize,
    epsilon: &[u8],
) -> Result<RootDatum, RootError> {
    if epsilon.len() != rank {
        return Err(RootError::BadEpsilon);
    }
    if epsilon.iter().any(|&e| e > 1) {
        return Err(RootError::BadEpsilon);
    }
    if epsilon.iter().any(|&e| e == 1) && rank > 1 {
        return Err(RootError::EpsilonNotRankOne);
    }
    let cartan = cartan_matrix(series, rank)?;

    let mut datum = RootDatum {
        series,
        rank,
        cartan,
        epsilon: epsilon.to_vec(),
        positive_roots: Vec::new(),
    };

    let mut found: std::collections::BTreeMap<RootVector, CorootVector> =
        std::collections::BTreeMap::new();
    let mut queue: Vec<(RootVector, CorootVector)> = Vec::new();
    for i in 0..rank {
        let mut rc = vec![0i64; rank];
        rc[i] = 1;
        let root = RootVector { coords: rc.clone() };
        let coroot = CorootVector { coords: rc };
        found.insert(root.clone(), coroot.clone());
        queue.push((root, coroot));
    }
    while let Some((root, coroot)) = queue.pop() {
        for i in 0..rank {
            let r2 = datum.reflect_root(i, &root);
            if !r2.is_positive() || found.contains_key(&r2) {
                continue;
            }
            let c2 = datum.reflect_coroot(i, &coroot);
            found.insert(r2.clone(), c2.clone());
            queue.push((r2, c2));
        }
    }

    datum.positive_roots = found
        .into_iter()
        .map(|(root, coroot)| PositiveRoot { root, coroot })
        .collect();

    debug_assert_eq!(
        datum.positive_roots.len(),
        series.positive_root_count(rank),
        "closure count mismatch"
    );
    debug_assert!(
        datum
            .positive_roots
            .iter()
            .all(|p| p.coroot.coords.iter().all(|&c| c >= 0)),
        "positive coroot expansions"
    );
    Ok(datum)
}
