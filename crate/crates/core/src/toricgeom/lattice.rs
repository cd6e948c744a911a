//! Integral bases for the lattice spanned by curve classes.

use super::fan::{Edge, Fan};

/// Row-echelon (Hermite) basis of a sublattice of `Z^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeBasis {
    pub rows: Vec<Vec<i64>>,
    pivots: Vec<usize>,
}

impl LatticeBasis {
    pub fn from_vectors(vectors: &[Vec<i64>]) -> Self {
        let mut m: Vec<Vec<i64>> = vectors.iter().filter(|v| v.iter().any(|&x| x != 0)).cloned().collect();
        let ncols = vectors.first().map_or(0, Vec::len);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..ncols {
            if r == m.len() {
                break;
            }
            // Euclid on column c among rows r.. until one nonzero entry remains.
            loop {
                let nz: Vec<usize> = (r..m.len()).filter(|&i| m[i][c] != 0).collect();
                if nz.len() <= 1 {
                    if let Some(&i) = nz.first() {
                        m.swap(r, i);
                    }
                    break;
                }
                let &p = nz.iter().min_by_key(|&&i| m[i][c].abs()).unwrap();
                for &i in &nz {
                    if i != p {
                        let k = m[i][c] / m[p][c];
                        for j in 0..ncols {
                            m[i][j] -= k * m[p][j];
                        }
                    }
                }
            }
            if m[r][c] == 0 {
                continue;
            }
            if m[r][c] < 0 {
                m[r].iter_mut().for_each(|x| *x = -*x);
            }
            for i in 0..r {
                let k = m[i][c].div_euclid(m[r][c]);
                for j in 0..ncols {
                    m[i][j] -= k * m[r][j];
                }
            }
            pivots.push(c);
            r += 1;
        }
        m.truncate(r);
        LatticeBasis { rows: m, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Integer coordinates of `v`, if it lies in the lattice.
    pub fn coordinates(&self, v: &[i64]) -> Option<Vec<i64>> {
        let mut r = v.to_vec();
        let mut x = Vec::with_capacity(self.rank());
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if r[p] % row[p] != 0 {
                return None;
            }
            let k = r[p] / row[p];
            for (a, b) in r.iter_mut().zip(row) {
                *a -= k * b;
            }
            x.push(k);
        }
        r.iter().all(|&a| a == 0).then_some(x)
    }

    /// Flips basis vectors so that the given vectors have mostly nonnegative
    /// coordinates.
    fn orient(&mut self, vectors: &[Vec<i64>]) {
        let coords: Vec<Vec<i64>> = vectors.iter().filter_map(|v| self.coordinates(v)).collect();
        for k in 0..self.rank() {
            if coords.iter().map(|c| c[k]).sum::<i64>() < 0 {
                self.rows[k].iter_mut().for_each(|x| *x = -*x);
            }
        }
    }
}

/// Basis of the span of all interior-edge classes and each edge's coordinates.
pub fn homology_basis(fan: &Fan) -> (LatticeBasis, Vec<(Edge, Vec<i64>)>) {
    let classes: Vec<(Edge, Vec<i64>)> = fan
        .interior_edges()
        .into_iter()
        .filter_map(|e| fan.curve_class(e).ok().map(|c| (e, c.l)))
        .collect();
    let ls: Vec<Vec<i64>> = classes.iter().map(|(_, l)| l.clone()).collect();
    let mut basis = LatticeBasis::from_vectors(&ls);
    basis.orient(&ls);
    let coords = classes
        .into_iter()
        .map(|(e, l)| (e, basis.coordinates(&l).expect("edge class lies in its own span")))
        .collect();
    (basis, coords)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn examples() {
        let con = Fan::new(vec![[0, 0], [1, 0], [0, 1], [1, 1]], vec![[0, 1, 2], [1, 2, 3]]);
        let (b, c) = homology_basis(&con);
        assert_eq!(b.rank(), 1);
        assert_eq!(c[0].1, vec![1]);
        let p2 = Fan::new(vec![[0, 0], [1, 0], [0, 1], [-1, -1]], vec![[0, 1, 2], [0, 2, 3], [0, 3, 1]]);
        let (b, c) = homology_basis(&p2);
        assert_eq!(b.rank(), 1);
        assert!(c.iter().all(|(_, x)| x == &vec![1]));
    }

    proptest! {
        #[test]
        fn spans_the_input(vs in prop::collection::vec(prop::collection::vec(-5i64..5, 4), 1..5)) {
            let b = LatticeBasis::from_vectors(&vs);
            for v in &vs {
                let x = b.coordinates(v).expect("input vector in lattice");
                let mut back = vec![0; 4];
                for (k, row) in x.iter().zip(&b.rows) {
                    for j in 0..4 {
                        back[j] += k * row[j];
                    }
                }
                prop_assert_eq!(&back, v);
            }
        }
    }
}
