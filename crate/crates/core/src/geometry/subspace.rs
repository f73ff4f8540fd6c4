//! Projective linear subspaces over the Gaussian rationals.
//!
//! A subspace of `P^N` is stored as the reduced row echelon form of a basis of its
//! cone in `C^{N+1}`, so equal subspaces have identical representations.

use std::fmt;

use crate::error::{Error, Result};
use crate::geometry::gauss::GaussRat;

/// Reduced row echelon form; zero rows are dropped.
pub fn rref(mut rows: Vec<Vec<GaussRat>>) -> Vec<Vec<GaussRat>> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivot_row = 0;
    for col in 0..ncols {
        if pivot_row == rows.len() {
            break;
        }
        let Some(found) = (pivot_row..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(pivot_row, found);
        let inv = rows[pivot_row][col].inv().expect("pivot is nonzero");
        if !inv.is_one() {
            for entry in rows[pivot_row].iter_mut().skip(col) {
                *entry = &*entry * &inv;
            }
        }
        let pivot = rows[pivot_row].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r == pivot_row || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for c in col..ncols {
                if !pivot[c].is_zero() {
                    row[c] = &row[c] - &(&factor * &pivot[c]);
                }
            }
        }
        pivot_row += 1;
    }
    rows.truncate(pivot_row);
    rows
}

pub fn rank(rows: Vec<Vec<GaussRat>>) -> usize {
    rref(rows).len()
}

/// Basis of `{x : row·x = 0 for every row}` in `ncols` unknowns.
pub fn null_space(rows: Vec<Vec<GaussRat>>, ncols: usize) -> Vec<Vec<GaussRat>> {
    let reduced = rref(rows);
    let pivots: Vec<usize> =
        reduced.iter().map(|row| row.iter().position(|x| !x.is_zero()).expect("rref rows are nonzero")).collect();
    (0..ncols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![GaussRat::zero(); ncols];
            v[free] = GaussRat::one();
            for (row, &p) in reduced.iter().zip(&pivots) {
                v[p] = -&row[free];
            }
            v
        })
        .collect()
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjSubspace {
    ambient_dim: usize,
    basis: Vec<Vec<GaussRat>>,
}

/// Outcome of [`separation_test`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Separation {
    Separated,
    /// `(U+B) ∩ (V+B)`, strictly larger than `B`.
    Excess(ProjSubspace),
}

impl ProjSubspace {
    /// Span of the given homogeneous coordinate rows in `P^ambient_dim`.
    pub fn from_rows(ambient_dim: usize, rows: Vec<Vec<GaussRat>>) -> Result<Self> {
        if let Some(bad) = rows.iter().find(|r| r.len() != ambient_dim + 1) {
            return Err(Error::Geometry(format!(
                "row of length {} in P^{ambient_dim} (expected {})",
                bad.len(),
                ambient_dim + 1
            )));
        }
        let basis = rref(rows);
        if basis.is_empty() {
            return Err(Error::Geometry("subspace spanned by zero vectors is empty".into()));
        }
        Ok(ProjSubspace { ambient_dim, basis })
    }

    pub fn point(ambient_dim: usize, coords: Vec<GaussRat>) -> Result<Self> {
        ProjSubspace::from_rows(ambient_dim, vec![coords])
    }

    /// The whole projective space `P^n`.
    pub fn full(n: usize) -> Self {
        let rows = (0..=n)
            .map(|i| (0..=n).map(|j| if i == j { GaussRat::one() } else { GaussRat::zero() }).collect())
            .collect();
        ProjSubspace { ambient_dim: n, basis: rows }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn basis(&self) -> &[Vec<GaussRat>] {
        &self.basis
    }

    pub fn proj_dim(&self) -> usize {
        self.basis.len() - 1
    }

    pub fn cone_dim(&self) -> usize {
        self.basis.len()
    }

    fn check_ambient(&self, other: &ProjSubspace) -> Result<()> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::Geometry(format!(
                "ambient mismatch: P^{} vs P^{}",
                self.ambient_dim, other.ambient_dim
            )));
        }
        Ok(())
    }

    pub fn intersect(&self, other: &ProjSubspace) -> Result<Option<ProjSubspace>> {
        self.check_ambient(other)?;
        let mut equations = self.equations();
        equations.extend(other.equations());
        Ok(ProjSubspace::cut_out(self.ambient_dim, equations))
    }

    /// Linear forms vanishing exactly on the cone over `self`.
    pub fn equations(&self) -> Vec<Vec<GaussRat>> {
        null_space(self.basis.clone(), self.ambient_dim + 1)
    }

    /// Common zero locus of linear forms in `P^ambient_dim`; `None` when empty.
    pub fn cut_out(ambient_dim: usize, equations: Vec<Vec<GaussRat>>) -> Option<ProjSubspace> {
        let cone = null_space(equations, ambient_dim + 1);
        if cone.is_empty() {
            return None;
        }
        Some(ProjSubspace { ambient_dim, basis: rref(cone) })
    }

    pub fn span_sum(&self, other: &ProjSubspace) -> Result<ProjSubspace> {
        self.check_ambient(other)?;
        let mut rows = self.basis.clone();
        rows.extend(other.basis.iter().cloned());
        Ok(ProjSubspace { ambient_dim: self.ambient_dim, basis: rref(rows) })
    }

    /// `other ⊆ self`.
    pub fn contains(&self, other: &ProjSubspace) -> bool {
        self.ambient_dim == other.ambient_dim
            && other.cone_dim() <= self.cone_dim()
            && self.span_sum(other).map(|s| s.cone_dim() == self.cone_dim()).unwrap_or(false)
    }

    pub fn conjugate(&self) -> ProjSubspace {
        let rows = self.basis.iter().map(|r| r.iter().map(GaussRat::conj).collect()).collect();
        ProjSubspace { ambient_dim: self.ambient_dim, basis: rref(rows) }
    }

    /// Invariant under complex conjugation (equivalently: defined over `Q`).
    pub fn is_real(&self) -> bool {
        self.basis.iter().flatten().all(GaussRat::is_real)
    }
}

impl fmt::Debug for ProjSubspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "P{}[", self.proj_dim())?;
        for (i, row) in self.basis.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
            write!(f, "{}", cells.join(":"))?;
        }
        write!(f, "]")
    }
}

/// Smallest subspace containing all the given points.
pub fn span_points(points: &[ProjSubspace]) -> Result<ProjSubspace> {
    let (first, rest) = points.split_first().ok_or_else(|| Error::Geometry("span of an empty point list".into()))?;
    rest.iter().try_fold(first.clone(), |acc, p| acc.span_sum(p))
}

/// Decides whether dominant transforms of `u` and `v` still meet after blowing up `b`:
/// `Separated` iff `(u+b) ∩ (v+b) = b`.
pub fn separation_test(u: &ProjSubspace, v: &ProjSubspace, b: &ProjSubspace) -> Result<Separation> {
    u.check_ambient(v)?;
    u.check_ambient(b)?;
    if let Some(meet) = u.intersect(v)? {
        if !b.contains(&meet) {
            return Err(Error::Geometry("separation_test: U ∩ V is not inside B".into()));
        }
    }
    if b.contains(u) || b.contains(v) {
        return Err(Error::Geometry("separation_test: U or V lies inside B".into()));
    }
    let ub = u.span_sum(b)?;
    let vb = v.span_sum(b)?;
    let meet = ub.intersect(&vb)?.expect("both sums contain B");
    if meet.cone_dim() == b.cone_dim() {
        Ok(Separation::Separated)
    } else {
        Ok(Separation::Excess(meet))
    }
}

/// Points `[1 : t : t² : … : t^N]` on the rational normal curve of `P^N`.
/// Any `N+1` of them are linearly independent (Vandermonde).
pub fn rnc_points(ambient_dim: usize, params: &[GaussRat]) -> Result<Vec<ProjSubspace>> {
    for (i, a) in params.iter().enumerate() {
        if params[..i].contains(a) {
            return Err(Error::Input(format!("repeated curve parameter {a}")));
        }
    }
    params
        .iter()
        .map(|t| {
            let coords = (0..=ambient_dim as u32).map(|e| t.pow(e)).collect();
            ProjSubspace::point(ambient_dim, coords)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(n: usize, params: &[i64]) -> Vec<ProjSubspace> {
        let params: Vec<GaussRat> = params.iter().map(|&t| GaussRat::from_int(t)).collect();
        rnc_points(n, &params).unwrap()
    }

    #[test]
    fn span_examples() {
        let pts = ints(3, &[0, 1]);
        assert_eq!(span_points(&pts).unwrap().proj_dim(), 1);
        assert_eq!(span_points(&pts[..1]).unwrap(), pts[0]);
        let pts = ints(2, &[1, 2, 3]);
        assert_eq!(span_points(&pts).unwrap(), ProjSubspace::full(2));
        assert!(span_points(&[]).is_err());
    }

    #[test]
    fn intersect_examples() {
        let p = ints(3, &[0, 1, 2]);
        let l1 = span_points(&[p[0].clone(), p[1].clone()]).unwrap();
        let l2 = span_points(&[p[0].clone(), p[2].clone()]).unwrap();
        assert_eq!(l1.intersect(&l2).unwrap(), Some(p[0].clone()));

        let q = ints(4, &[0, 1, 2, 3, 4, 5]);
        let a = span_points(&q[..3]).unwrap();
        let b = span_points(&q[3..]).unwrap();
        assert_eq!(a.intersect(&b).unwrap().unwrap().proj_dim(), 0);

        let r = ints(3, &[0, 1, 2, 3]);
        let m = span_points(&r[..2]).unwrap();
        let n = span_points(&r[2..]).unwrap();
        assert_eq!(m.intersect(&n).unwrap(), None);
    }

    #[test]
    fn sum_examples() {
        let p = ints(4, &[0, 1, 2, 3, 4]);
        assert_eq!(p[0].span_sum(&p[1]).unwrap().proj_dim(), 1);
        let line = span_points(&p[..2]).unwrap();
        assert_eq!(line.span_sum(&line).unwrap(), line);
        let other = span_points(&p[2..4]).unwrap();
        assert_eq!(line.span_sum(&other).unwrap().proj_dim(), 3);
        assert!(line.span_sum(&ProjSubspace::full(2)).is_err());
    }

    #[test]
    fn separation_examples() {
        let p = ints(3, &[0, 1, 2]);
        let u = span_points(&[p[0].clone(), p[1].clone()]).unwrap();
        let v = span_points(&[p[0].clone(), p[2].clone()]).unwrap();
        assert_eq!(separation_test(&u, &v, &p[0]).unwrap(), Separation::Separated);

        // planes U, V in P⁴ meeting in a point o, B a line through o in neither:
        // U+B and V+B are 3-spaces, which always share a plane in P⁴
        let q = ints(4, &[0, 1, 2, 3, 4, 5]);
        let u = span_points(&q[0..3]).unwrap();
        let v = span_points(&q[3..6]).unwrap();
        let o = u.intersect(&v).unwrap().unwrap();
        let b = span_points(&[o, ints(4, &[7])[0].clone()]).unwrap();
        match separation_test(&u, &v, &b).unwrap() {
            Separation::Excess(e) => assert_eq!(e.proj_dim(), 2),
            Separation::Separated => panic!("expected excess"),
        }

        // two planes sharing exactly the line B are separated by blowing up B
        let l = span_points(&q[0..2]).unwrap();
        let u = span_points(&q[0..3]).unwrap();
        let v = span_points(&[q[0].clone(), q[1].clone(), q[3].clone()]).unwrap();
        assert_eq!(separation_test(&u, &v, &l).unwrap(), Separation::Separated);
        assert!(separation_test(&u, &v, &q[5]).is_err());
    }

    #[test]
    fn rnc_examples() {
        let pts = ints(2, &[0, 1, 2, 3]);
        for skip in 0..4 {
            let triple: Vec<_> = (0..4).filter(|&i| i != skip).map(|i| pts[i].clone()).collect();
            assert_eq!(span_points(&triple).unwrap().proj_dim(), 2);
        }
        let params: Vec<GaussRat> = ["0", "1", "i", "-i"].iter().map(|s| s.parse().unwrap()).collect();
        let pts = rnc_points(2, &params).unwrap();
        assert!(pts[0].is_real() && pts[1].is_real());
        assert!(!pts[2].is_real());
        assert_eq!(pts[2].conjugate(), pts[3]);
        assert_eq!(ints(1, &[0]).len(), 1);
        assert!(rnc_points(2, &[GaussRat::one(), GaussRat::one()]).is_err());
    }

    #[test]
    fn conjugation_examples() {
        let p = ints(2, &[5]);
        assert_eq!(p[0].conjugate(), p[0]);
        let q = ProjSubspace::point(1, vec![GaussRat::one(), "i".parse().unwrap()]).unwrap();
        let qbar = ProjSubspace::point(1, vec![GaussRat::one(), "-i".parse().unwrap()]).unwrap();
        assert_eq!(q.conjugate(), qbar);
        assert_eq!(q.conjugate().conjugate(), q);
    }

    #[test]
    fn canonical_form() {
        let a = ProjSubspace::from_rows(2, vec![vec![GaussRat::from_int(2), GaussRat::from_int(4), GaussRat::zero()]])
            .unwrap();
        let b =
            ProjSubspace::from_rows(2, vec![vec![GaussRat::from_int(-1), GaussRat::from_int(-2), GaussRat::zero()]])
                .unwrap();
        assert_eq!(a, b);
    }
}
