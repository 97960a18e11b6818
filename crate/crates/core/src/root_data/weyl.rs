//! Weyl group generation by breadth-first closure over simple
//! reflections.

use std::collections::HashMap;

use serde::Serialize;

use super::{CorootVector, RootDatum, RootVector};

/// Small dense integer matrix, row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct IntMatrix {
    pub n: usize,
    pub rows: Vec<Vec<i64>>,
}

impl IntMatrix {
    pub fn identity(n: usize) -> Self {
        let mut rows = vec![vec![0i64; n]; n];
        for (i, row) in rows.iter_mut().enumerate() {
            row[i] = 1;
        }
        IntMatrix { n, rows }
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let mut rows = vec![vec![0i64; n]; n];
        for i in 0..n {
            for k in 0..n {
                let a = self.rows[i][k];
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    rows[i][j] += a * other.rows[k][j];
                }
            }
        }
        IntMatrix { n, rows }
    }

    pub fn apply(&self, v: &[i64]) -> Vec<i64> {
        assert_eq!(v.len(), self.n);
        self.rows
            .iter()
            .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// Column `j` of the matrix (the image of the j-th basis vector).
    pub fn column(&self, j: usize) -> Vec<i64> {
        self.rows.iter().map(|row| row[j]).collect()
    }

    /// Determinant by cofactor expansion; fine at these ranks.
    pub fn det(&self) -> i64 {
        fn go(rows: &[Vec<i64>], cols: &[usize]) -> i64 {
            if cols.len() == 1 {
                return rows[0][cols[0]];
            }
            let mut acc = 0i64;
            for (k, &c) in cols.iter().enumerate() {
                let a = rows[0][c];
                if a == 0 {
                    continue;
                }
                let rest: Vec<usize> =
                    cols.iter().copied().filter(|&cc| cc != c).collect();
                let sign = if k % 2 == 0 { 1 } else { -1 };
                acc += sign * a * go(&rows[1..], &rest);
            }
            acc
        }
        let cols: Vec<usize> = (0..self.n).collect();
        go(&self.rows, &cols)
    }
}

/// An element of the Weyl group: a reduced word in the simple
/// reflections plus its integer actions on the root and coroot
/// lattices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WeylElement {
    pub word: Vec<usize>,
    pub length: usize,
    pub root_action: IntMatrix,
    pub coroot_action: IntMatrix,
}

impl WeylElement {
    pub fn sign(&self) -> i64 {
        if self.length % 2 == 0 { 1 } else { -1 }
    }

    pub fn apply_to_root(&self, v: &RootVector) -> RootVector {
        RootVector {
            coords: self.root_action.apply(&v.coords),
        }
    }

    pub fn apply_to_coroot(&self, c: &CorootVector) -> CorootVector {
        CorootVector {
            coords: self.coroot_action.apply(&c.coords),
        }
    }

    /// Apply the inverse element to a coroot by running the word
    /// forward through the simple coroot reflections (the inverse of
    /// `s_{i1}...s_{il}` applies `s_{i1}` first).
    pub fn apply_inverse_to_coroot(&self, datum: &RootDatum, c: &CorootVector) -> CorootVector {
        let mut acc = c.clone();
        for &i in &self.word {
            acc = datum.reflect_coroot(i, &acc);
        }
        acc
    }

    /// Apply the inverse element to a root, same word trick.
    pub fn apply_inverse_to_root(&self, datum: &RootDatum, v: &RootVector) -> RootVector {
        let mut acc = v.clone();
        for &i in &self.word {
            acc = datum.reflect_root(i, &acc);
        }
        acc
    }
}

/// The full Weyl group, deduplicated by root action, in breadth-first
/// order from the identity (deterministic for a fixed generator order).
#[derive(Debug, Clone, Serialize)]
pub struct WeylGroup {
    pub elements: Vec<WeylElement>,
    pub longest: usize,
}

impl WeylGroup {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn longest_element(&self) -> &WeylElement {
        &self.elements[self.longest]
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "order": self.order(),
            "longest": self.longest,
            "elements": self.elements,
        })
    }
}

/// Generate the Weyl group of a root datum by breadth-first products
/// with the simple reflections.
pub fn generate_weyl(datum: &RootDatum) -> WeylGroup {
    let rank = datum.rank;
    let simple_root_actions: Vec<IntMatrix> = (0..rank)
        .map(|i| {
            let mut m = IntMatrix::identity(rank);
            for j in 0..rank {
                let e = RootVector {
                    coords: {
                        let mut v = vec![0i64; rank];
                        v[j] = 1;
                        v
                    },
                };
                let img = datum.reflect_root(i, &e);
                for k in 0..rank {
                    m.rows[k][j] = img.coords[k];
                }
            }
            m
        })
        .collect();
    let simple_coroot_actions: Vec<IntMatrix> = (0..rank)
        .map(|i| {
            let mut m = IntMatrix::identity(rank);
            for j in 0..rank {
                let e = CorootVector {
                    coords: {
                        let mut v = vec![0i64; rank];
                        v[j] = 1;
                        v
                    },
                };
                let img = datum.reflect_coroot(i, &e);
                for k in 0..rank {
                    m.rows[k][j] = img.coords[k];
                }
            }
            m
        })
        .collect();

    let identity = WeylElement {
        word: Vec::new(),
        length: 0,
        root_action: IntMatrix::identity(rank),
        coroot_action: IntMatrix::identity(rank),
    };
    let mut elements = vec![identity];
    let mut seen: HashMap<IntMatrix, usize> = HashMap::new();
    seen.insert(elements[0].root_action.clone(), 0);

    let mut head = 0;
    while head < elements.len() {
        for i in 0..rank {
            let root_action = elements[head].root_action.mul(&simple_root_actions[i]);
            if seen.contains_key(&root_action) {
                continue;
            }
            let coroot_action = elements[head]
                .coroot_action
                .mul(&simple_coroot_actions[i]);
            let mut word = elements[head].word.clone();
            word.push(i);
            let length = word.len();
            seen.insert(root_action.clone(), elements.len());
            elements.push(WeylElement {
                word,
                length,
                root_action,
                coroot_action,
            });
        }
        head += 1;
    }

    let longest = elements
        .iter()
        .enumerate()
        .max_by_key(|(_, w)| w.length)
        .map(|(i, _)| i)
        .expect("nonempty group");
    WeylGroup { elements, longest }
}

/// Indices of the simple roots sent negative by `w`.
pub fn negative_simple_set(w: &WeylElement, _datum: &RootDatum) -> Vec<usize> {
    (0..w.root_action.n)
        .filter(|&i| {
            let col = w.root_action.column(i);
            matches!(col.iter().find(|&&c| c != 0), Some(&c) if c < 0)
        })
        .collect()
}

/// Matrix-vector action of `w` on a coroot.
pub fn act_on_coroot(w: &WeylElement, c: &CorootVector) -> CorootVector {
    w.apply_to_coroot(c)
}
