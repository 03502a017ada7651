//! Small exact linear algebra over a [`FieldSpec`]: an incrementally built
//! reduced echelon basis that remembers how each row was combined from the
//! inserted generators.

use super::field::{Coeff, FieldSpec};
use super::poly::Poly;

#[derive(Clone, Debug)]
struct Row {
    pivot: usize,
    v: Vec<Coeff>,
    combo: Vec<Coeff>,
}

/// Span of a sequence of generator vectors in `F^dim`.
///
/// Pivots are the highest nonzero index of each row, and rows are kept fully
/// reduced, so [`EchelonBasis::reduce`] returns a canonical residual: it
/// vanishes at every pivot index.
#[derive(Clone, Debug)]
pub struct EchelonBasis {
    field: FieldSpec,
    dim: usize,
    rows: Vec<Row>,
    ngen: usize,
    relations: Vec<Vec<Coeff>>,
}

fn axpy(y: &mut [Coeff], a: &Coeff, x: &[Coeff]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        if !xi.is_zero() {
            *yi = &*yi + &(a * xi);
        }
    }
}

impl EchelonBasis {
    pub fn new(field: FieldSpec, dim: usize) -> Self {
        EchelonBasis {
            field,
            dim,
            rows: Vec::new(),
            ngen: 0,
            relations: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn generator_count(&self) -> usize {
        self.ngen
    }

    /// Rows of the reduced echelon basis, in increasing pivot order.
    pub fn basis_rows(&self) -> Vec<Vec<Coeff>> {
        self.rows.iter().rev().map(|r| r.v.clone()).collect()
    }

    /// Pivot indices of the current rows.
    pub fn pivots(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.pivot).collect()
    }

    fn pad(&self, mut v: Vec<Coeff>) -> Vec<Coeff> {
        assert!(v.len() <= self.dim, "vector longer than ambient dimension");
        v.resize(self.dim, self.field.zero());
        v
    }

    /// Coefficient vector of a polynomial, padded to the ambient dimension.
    pub fn poly_vector(&self, f: &Poly) -> Vec<Coeff> {
        self.pad(f.coeffs().to_vec())
    }

    /// Write `v = residual + Σ combo_k · generator_k`.
    pub fn reduce(&self, v: Vec<Coeff>) -> (Vec<Coeff>, Vec<Coeff>) {
        let mut v = self.pad(v);
        let mut combo = vec![self.field.zero(); self.ngen];
        for r in &self.rows {
            let a = v[r.pivot].clone();
            if a.is_zero() {
                continue;
            }
            axpy(&mut v, &-&a, &r.v);
            axpy(&mut combo, &a, &r.combo);
        }
        (v, combo)
    }

    pub fn contains(&self, v: Vec<Coeff>) -> bool {
        self.reduce(v).0.iter().all(Coeff::is_zero)
    }

    /// Add a generator. Returns `true` if it enlarged the span; otherwise the
    /// linear relation it satisfies is recorded (see [`EchelonBasis::relations`]).
    pub fn insert(&mut self, v: Vec<Coeff>) -> bool {
        let k = self.ngen;
        self.ngen += 1;
        for r in &mut self.rows {
            r.combo.push(self.field.zero());
        }
        let (res, mut combo) = self.reduce(v);
        // res = v − Σ combo·gen; as a combination of generators: e_k − combo
        for c in combo.iter_mut() {
            *c = -&*c;
        }
        combo[k] = self.field.one();
        let Some(pivot) = res.iter().rposition(|a| !a.is_zero()) else {
            self.relations.push(combo);
            return false;
        };
        let inv = res[pivot].inv().expect("nonzero pivot");
        let v: Vec<Coeff> = res.iter().map(|a| a * &inv).collect();
        let combo: Vec<Coeff> = combo.iter().map(|a| a * &inv).collect();
        for r in &mut self.rows {
            let a = r.v[pivot].clone();
            if !a.is_zero() {
                let na = -&a;
                axpy(&mut r.v, &na, &v);
                axpy(&mut r.combo, &na, &combo);
            }
        }
        let pos = self
            .rows
            .iter()
            .position(|r| r.pivot < pivot)
            .unwrap_or(self.rows.len());
        self.rows.insert(pos, Row { pivot, v, combo });
        true
    }

    /// Linear relations `Σ c_k generator_k = 0` found among dependent inserts;
    /// together they span the kernel of the generator map.
    pub fn relations(&self) -> Vec<Vec<Coeff>> {
        self.relations
            .iter()
            .map(|r| {
                let mut r = r.clone();
                r.resize(self.ngen, self.field.zero());
                r
            })
            .collect()
    }
}

/// Convert a coefficient vector back to a polynomial.
pub fn vector_poly(field: FieldSpec, v: &[Coeff]) -> Poly {
    Poly::from_coeffs(field, v.to_vec())
}
