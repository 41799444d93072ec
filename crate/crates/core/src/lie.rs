//! Finite-dimensional Lie algebras given by structure constants.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{int, Rational};

/// Coefficient vector with respect to the basis of a Lie algebra.
pub type Vector = Vec<Rational>;

pub fn zero_vector(dim: usize) -> Vector {
    vec![Rational::zero(); dim]
}

pub fn basis_vector(dim: usize, i: usize) -> Vector {
    let mut v = zero_vector(dim);
    v[i] = Rational::one();
    v
}

pub fn is_zero_vector(v: &[Rational]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn scale_vector(v: &[Rational], c: &Rational) -> Vector {
    v.iter().map(|a| a * c).collect()
}

pub fn add_vectors(v: &[Rational], w: &[Rational]) -> Vector {
    v.iter().zip(w).map(|(a, b)| a + b).collect()
}

/// Lie algebra with structure constants `[e_i, e_j] = sum_k c_ij^k e_k`.
///
/// Only the constants for `i < j` are stored; `[e_i, e_i] = 0` and
/// `[e_j, e_i] = -[e_i, e_j]` are implied, so antisymmetry cannot be violated.
#[derive(Clone, Debug, PartialEq)]
pub struct LieAlgebra {
    basis: Vec<String>,
    // pair index of (i, j), i < j, into a dense vector of length dim
    structure: Vec<Vector>,
}

/// Outcome of checking the Jacobi identity.
#[derive(Clone, Debug, PartialEq)]
pub enum Validation {
    Ok,
    /// First triple `i < j < k` whose cyclic Jacobi sum is nonzero.
    Violation { triple: (usize, usize, usize), residual: Vector },
}

impl Validation {
    pub fn is_ok(&self) -> bool {
        matches!(self, Validation::Ok)
    }
}

impl LieAlgebra {
    /// Builds an algebra from basis names and the nonzero brackets
    /// `(i, j, [e_i, e_j])` with `i < j`.
    pub fn new<I>(basis: Vec<String>, brackets: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, Vector)>,
    {
        let dim = basis.len();
        if dim == 0 {
            return Err(Error::InvalidParameter("Lie algebra must have positive dimension".into()));
        }
        let mut structure = vec![zero_vector(dim); dim * (dim - 1) / 2];
        for (i, j, coeffs) in brackets {
            if i >= j || j >= dim {
                return Err(Error::InvalidParameter(format!(
                    "bracket indices must satisfy i < j < dim, got ({i}, {j})"
                )));
            }
            if coeffs.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: coeffs.len() });
            }
            structure[pair_index(dim, i, j)] = coeffs;
        }
        Ok(LieAlgebra { basis, structure })
    }

    pub fn abelian(dim: usize) -> Self {
        let names = (0..dim).map(|i| format!("e{i}")).collect();
        LieAlgebra::new(names, []).expect("abelian algebra")
    }

    /// Three-dimensional Heisenberg algebra, basis `P, Q, E`, `[P, Q] = E`.
    pub fn heisenberg() -> Self {
        let names = ["P", "Q", "E"].map(String::from).to_vec();
        LieAlgebra::new(names, [(0, 1, vec![int(0), int(0), int(1)])]).unwrap()
    }

    /// `sl(2)` with basis `H, E, F`: `[H,E] = 2E`, `[H,F] = -2F`, `[E,F] = H`.
    pub fn sl2() -> Self {
        let names = ["H", "E", "F"].map(String::from).to_vec();
        LieAlgebra::new(
            names,
            [
                (0, 1, vec![int(0), int(2), int(0)]),
                (0, 2, vec![int(0), int(0), int(-2)]),
                (1, 2, vec![int(1), int(0), int(0)]),
            ],
        )
        .unwrap()
    }

    /// `so(3)`: `[X,Y] = Z`, `[Y,Z] = X`, `[Z,X] = Y`.
    pub fn so3() -> Self {
        let names = ["X", "Y", "Z"].map(String::from).to_vec();
        LieAlgebra::new(
            names,
            [
                (0, 1, vec![int(0), int(0), int(1)]),
                (1, 2, vec![int(1), int(0), int(0)]),
                (0, 2, vec![int(0), int(-1), int(0)]),
            ],
        )
        .unwrap()
    }

    /// Four-dimensional filiform algebra: `[e0,e1] = e2`, `[e0,e2] = e3`.
    /// Nilpotent of index 3.
    pub fn filiform4() -> Self {
        let names = ["A", "B", "C", "D"].map(String::from).to_vec();
        LieAlgebra::new(
            names,
            [
                (0, 1, vec![int(0), int(0), int(1), int(0)]),
                (0, 2, vec![int(0), int(0), int(0), int(1)]),
            ],
        )
        .unwrap()
    }

    /// `gl(2) = sl(2) + center`, basis `H, E, F, C`.
    pub fn gl2() -> Self {
        let names = ["H", "E", "F", "C"].map(String::from).to_vec();
        LieAlgebra::new(
            names,
            [
                (0, 1, vec![int(0), int(2), int(0), int(0)]),
                (0, 2, vec![int(0), int(0), int(-2), int(0)]),
                (1, 2, vec![int(1), int(0), int(0), int(0)]),
            ],
        )
        .unwrap()
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis_names(&self) -> &[String] {
        &self.basis
    }

    pub fn basis_index(&self, name: &str) -> Option<usize> {
        self.basis.iter().position(|b| b == name)
    }

    /// `[e_i, e_j]`
    pub fn basis_bracket(&self, i: usize, j: usize) -> Vector {
        use std::cmp::Ordering::*;
        match i.cmp(&j) {
            Equal => zero_vector(self.dim()),
            Less => self.structure[pair_index(self.dim(), i, j)].clone(),
            Greater => self.structure[pair_index(self.dim(), j, i)].iter().map(|c| -c).collect(),
        }
    }

    /// Structure constant `c_ij^k`.
    pub fn constant(&self, i: usize, j: usize, k: usize) -> Rational {
        use std::cmp::Ordering::*;
        match i.cmp(&j) {
            Equal => Rational::zero(),
            Less => self.structure[pair_index(self.dim(), i, j)][k].clone(),
            Greater => -self.structure[pair_index(self.dim(), j, i)][k].clone(),
        }
    }

    /// Nonzero brackets `(i, j, [e_i, e_j])` with `i < j`.
    pub fn nonzero_brackets(&self) -> impl Iterator<Item = (usize, usize, &Vector)> {
        let dim = self.dim();
        (0..dim)
            .flat_map(move |i| (i + 1..dim).map(move |j| (i, j)))
            .map(move |(i, j)| (i, j, &self.structure[pair_index(dim, i, j)]))
            .filter(|(_, _, v)| !is_zero_vector(v))
    }

    pub fn is_abelian(&self) -> bool {
        self.nonzero_brackets().next().is_none()
    }

    pub fn bracket(&self, v: &[Rational], w: &[Rational]) -> Result<Vector> {
        let dim = self.dim();
        for len in [v.len(), w.len()] {
            if len != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: len });
            }
        }
        Ok(self.bracket_unchecked(v, w))
    }

    pub(crate) fn bracket_unchecked(&self, v: &[Rational], w: &[Rational]) -> Vector {
        let dim = self.dim();
        let mut out = zero_vector(dim);
        for i in 0..dim {
            if v[i].is_zero() {
                continue;
            }
            for j in 0..dim {
                if i == j || w[j].is_zero() {
                    continue;
                }
                let (a, b, sign) = if i < j { (i, j, 1) } else { (j, i, -1) };
                let c = &self.structure[pair_index(dim, a, b)];
                if is_zero_vector(c) {
                    continue;
                }
                let f = &v[i] * &w[j];
                for k in 0..dim {
                    if c[k].is_zero() {
                        continue;
                    }
                    if sign > 0 {
                        out[k] += &f * &c[k];
                    } else {
                        out[k] -= &f * &c[k];
                    }
                }
            }
        }
        out
    }

    /// Checks the Jacobi identity on all basis triples `i < j < k`.
    pub fn validate(&self) -> Validation {
        let dim = self.dim();
        for i in 0..dim {
            for j in i + 1..dim {
                for k in j + 1..dim {
                    let residual = self.jacobi_residual(
                        &basis_vector(dim, i),
                        &basis_vector(dim, j),
                        &basis_vector(dim, k),
                    );
                    if !is_zero_vector(&residual) {
                        return Validation::Violation { triple: (i, j, k), residual };
                    }
                }
            }
        }
        Validation::Ok
    }

    /// `[[u,v],w] + [[v,w],u] + [[w,u],v]`
    pub fn jacobi_residual(&self, u: &[Rational], v: &[Rational], w: &[Rational]) -> Vector {
        let a = self.bracket_unchecked(&self.bracket_unchecked(u, v), w);
        let b = self.bracket_unchecked(&self.bracket_unchecked(v, w), u);
        let c = self.bracket_unchecked(&self.bracket_unchecked(w, u), v);
        a.iter().zip(&b).zip(&c).map(|((x, y), z)| x + y + z).collect()
    }

    /// Smallest `N` with `g^(N+1) = 0` in the lower central series
    /// `g^(1) = g`, `g^(k+1) = [g, g^(k)]`; `None` if the series stalls at a
    /// nonzero ideal.
    pub fn nilpotency_index(&self) -> Option<usize> {
        let dim = self.dim();
        let mut current = row_basis((0..dim).map(|i| basis_vector(dim, i)).collect());
        let mut n = 1;
        loop {
            let mut spanning = Vec::new();
            for i in 0..dim {
                let e = basis_vector(dim, i);
                for v in &current {
                    let b = self.bracket_unchecked(&e, v);
                    if !is_zero_vector(&b) {
                        spanning.push(b);
                    }
                }
            }
            let next = row_basis(spanning);
            if next.is_empty() {
                return Some(n);
            }
            if next.len() == current.len() {
                return None;
            }
            current = next;
            n += 1;
        }
    }
}

fn pair_index(dim: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < dim);
    // rows 0..i contribute (dim-1) + (dim-2) + ... + (dim-i)
    i * dim - i * (i + 1) / 2 + (j - i - 1)
}

/// Reduced row echelon basis of the span of `rows`, by exact elimination.
pub(crate) fn row_basis(mut rows: Vec<Vector>) -> Vec<Vector> {
    let Some(width) = rows.first().map(Vec::len) else {
        return Vec::new();
    };
    let mut rank = 0;
    for col in 0..width {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let inv = rows[rank][col].recip();
        rows[rank] = scale_vector(&rows[rank], &inv);
        for r in 0..rows.len() {
            if r != rank && !rows[r][col].is_zero() {
                let f = rows[r][col].clone();
                let pivot = rows[rank].clone();
                for (a, b) in rows[r].iter_mut().zip(&pivot) {
                    *a -= &f * b;
                }
            }
        }
        rank += 1;
    }
    rows.truncate(rank);
    rows
}

/// Linear map between Lie algebras, as a `target.dim x source.dim` matrix
/// (column `i` is the image of the `i`-th source basis vector).
#[derive(Clone, Debug, PartialEq)]
pub struct LieHom {
    source: LieAlgebra,
    target: LieAlgebra,
    matrix: Vec<Vector>,
}

/// Outcome of checking that a linear map intertwines brackets.
#[derive(Clone, Debug, PartialEq)]
pub enum HomCheck {
    Ok,
    Violation { pair: (usize, usize) },
}

impl HomCheck {
    pub fn is_ok(&self) -> bool {
        matches!(self, HomCheck::Ok)
    }
}

impl LieHom {
    /// `matrix[r][c]` is the coefficient of target basis `r` in the image of
    /// source basis `c`.
    pub fn new(source: LieAlgebra, target: LieAlgebra, matrix: Vec<Vector>) -> Result<Self> {
        if matrix.len() != target.dim() {
            return Err(Error::DimensionMismatch { expected: target.dim(), found: matrix.len() });
        }
        if let Some(row) = matrix.iter().find(|r| r.len() != source.dim()) {
            return Err(Error::DimensionMismatch { expected: source.dim(), found: row.len() });
        }
        Ok(LieHom { source, target, matrix })
    }

    /// Builds a hom from the images of the source basis vectors.
    pub fn from_images(source: LieAlgebra, target: LieAlgebra, images: Vec<Vector>) -> Result<Self> {
        if images.len() != source.dim() {
            return Err(Error::DimensionMismatch { expected: source.dim(), found: images.len() });
        }
        let m = target.dim();
        if let Some(img) = images.iter().find(|v| v.len() != m) {
            return Err(Error::DimensionMismatch { expected: m, found: img.len() });
        }
        let matrix = (0..m).map(|r| images.iter().map(|img| img[r].clone()).collect()).collect();
        LieHom::new(source, target, matrix)
    }

    pub fn identity(algebra: LieAlgebra) -> Self {
        let d = algebra.dim();
        let images = (0..d).map(|i| basis_vector(d, i)).collect();
        LieHom::from_images(algebra.clone(), algebra, images).unwrap()
    }

    pub fn source(&self) -> &LieAlgebra {
        &self.source
    }

    pub fn target(&self) -> &LieAlgebra {
        &self.target
    }

    pub fn matrix(&self) -> &[Vector] {
        &self.matrix
    }

    /// Image of source basis vector `i`.
    pub fn image_of_basis(&self, i: usize) -> Vector {
        self.matrix.iter().map(|row| row[i].clone()).collect()
    }

    pub fn apply(&self, v: &[Rational]) -> Result<Vector> {
        if v.len() != self.source.dim() {
            return Err(Error::DimensionMismatch { expected: self.source.dim(), found: v.len() });
        }
        Ok(self
            .matrix
            .iter()
            .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect())
    }

    /// `phi([e_i, e_j]) == [phi(e_i), phi(e_j)]` for every basis pair.
    pub fn check(&self) -> HomCheck {
        let n = self.source.dim();
        for i in 0..n {
            for j in i + 1..n {
                let lhs = self.apply(&self.source.basis_bracket(i, j)).unwrap();
                let rhs = self
                    .target
                    .bracket_unchecked(&self.image_of_basis(i), &self.image_of_basis(j));
                if lhs != rhs {
                    return HomCheck::Violation { pair: (i, j) };
                }
            }
        }
        HomCheck::Ok
    }

    /// `self ∘ inner`
    pub fn compose(&self, inner: &LieHom) -> Result<LieHom> {
        if inner.target.dim() != self.source.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.source.dim(),
                found: inner.target.dim(),
            });
        }
        let images = (0..inner.source.dim())
            .map(|i| self.apply(&inner.image_of_basis(i)))
            .collect::<Result<Vec<_>>>()?;
        LieHom::from_images(inner.source.clone(), self.target.clone(), images)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bad_algebra() -> LieAlgebra {
        let names = ["a", "b", "c"].map(String::from).to_vec();
        LieAlgebra::new(
            names,
            [
                (0, 1, vec![int(0), int(0), int(1)]),
                (0, 2, vec![int(0), int(1), int(0)]),
                (1, 2, vec![int(0), int(1), int(0)]),
            ],
        )
        .unwrap()
    }

    #[test]
    fn standard_algebras_validate() {
        for alg in [
            LieAlgebra::heisenberg(),
            LieAlgebra::sl2(),
            LieAlgebra::so3(),
            LieAlgebra::filiform4(),
            LieAlgebra::gl2(),
            LieAlgebra::abelian(4),
        ] {
            assert!(alg.validate().is_ok(), "{:?}", alg.basis_names());
        }
    }

    #[test]
    fn jacobi_violation_reports_first_triple() {
        match bad_algebra().validate() {
            Validation::Violation { triple, residual } => {
                assert_eq!(triple, (0, 1, 2));
                // [[a,b],c] = 0, [[b,c],a] = -c, [[c,a],b] = 0
                assert_eq!(residual, vec![int(0), int(0), int(-1)]);
            }
            Validation::Ok => panic!("expected a violation"),
        }
    }

    #[test]
    fn brackets() {
        let h = LieAlgebra::heisenberg();
        let (p, q) = (basis_vector(3, 0), basis_vector(3, 1));
        assert_eq!(h.bracket(&p, &q).unwrap(), basis_vector(3, 2));
        assert!(is_zero_vector(&h.bracket(&p, &p).unwrap()));
        let s = LieAlgebra::sl2();
        assert_eq!(s.bracket(&basis_vector(3, 1), &basis_vector(3, 2)).unwrap(), basis_vector(3, 0));
        assert!(matches!(h.bracket(&p, &[int(1)]), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn nilpotency() {
        assert_eq!(LieAlgebra::heisenberg().nilpotency_index(), Some(2));
        assert_eq!(LieAlgebra::abelian(3).nilpotency_index(), Some(1));
        assert_eq!(LieAlgebra::filiform4().nilpotency_index(), Some(3));
        assert_eq!(LieAlgebra::sl2().nilpotency_index(), None);
        assert_eq!(LieAlgebra::gl2().nilpotency_index(), None);
    }

    #[test]
    fn rejects_bad_indices() {
        let names = ["a", "b"].map(String::from).to_vec();
        assert!(LieAlgebra::new(names.clone(), [(1, 0, vec![int(0), int(0)])]).is_err());
        assert!(LieAlgebra::new(names, [(0, 1, vec![int(0)])]).is_err());
    }

    #[test]
    fn homomorphisms() {
        let h = LieAlgebra::heisenberg();
        assert!(LieHom::identity(h.clone()).check().is_ok());
        let zero = LieHom::new(h.clone(), LieAlgebra::abelian(3), vec![zero_vector(3); 3]).unwrap();
        assert!(zero.check().is_ok());
        let swap = LieHom::from_images(
            h.clone(),
            h.clone(),
            vec![basis_vector(3, 1), basis_vector(3, 0), basis_vector(3, 2)],
        )
        .unwrap();
        assert_eq!(swap.check(), HomCheck::Violation { pair: (0, 1) });
        assert!(LieHom::new(h.clone(), h, vec![zero_vector(2); 3]).is_err());
    }
}
