//! Linear spans of operator families: algebra closure and centralizers.

use super::error::XalgError;
use super::field::Field;
use super::matrix::Matrix;

/// Vectors kept in semi-echelon form so membership tests are a single reduction pass.
pub struct IncrementalBasis<F: Field> {
    field: F,
    rows: Vec<(usize, Vec<F::Elem>)>,
}

impl<F: Field> IncrementalBasis<F> {
    pub fn new(field: &F) -> Self {
        IncrementalBasis {
            field: field.clone(),
            rows: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &mut [F::Elem]) {
        let f = &self.field;
        for (pivot, row) in &self.rows {
            let c = v[*pivot].clone();
            if f.is_zero(&c) {
                continue;
            }
            for (x, r) in v.iter_mut().zip(row) {
                if !f.is_zero(r) {
                    *x = f.sub(x, &f.mul(&c, r));
                }
            }
        }
    }

    pub fn contains(&self, v: &[F::Elem]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|x| self.field.is_zero(x))
    }

    /// Adds `v` if it is independent of the current rows; returns whether it was added.
    pub fn insert(&mut self, v: &[F::Elem]) -> bool {
        let f = &self.field;
        let mut w = v.to_vec();
        self.reduce(&mut w);
        let Some(pivot) = w.iter().position(|x| !f.is_zero(x)) else {
            return false;
        };
        let inv = f.inv(&w[pivot]).expect("nonzero pivot");
        for x in w.iter_mut() {
            *x = f.mul(x, &inv);
        }
        self.rows.push((pivot, w));
        true
    }
}

fn check_shapes<F: Field>(gens: &[Matrix<F>], square: bool) -> Result<(usize, usize), XalgError> {
    let Some(first) = gens.first() else {
        return Ok((0, 0));
    };
    let shape = (first.rows(), first.cols());
    for g in gens {
        if (g.rows(), g.cols()) != shape {
            return Err(XalgError::ShapeMismatch {
                expected: shape,
                found: (g.rows(), g.cols()),
            });
        }
    }
    if square && shape.0 != shape.1 {
        return Err(XalgError::NotSquare {
            rows: shape.0,
            cols: shape.1,
        });
    }
    Ok(shape)
}

/// Dimension of the linear span of `gens`; with `closed_under_product`, dimension of the
/// unital algebra they generate.
pub fn span_dimension<F: Field>(
    field: &F,
    gens: &[Matrix<F>],
    closed_under_product: bool,
) -> Result<usize, XalgError> {
    let (rows, _) = check_shapes(gens, closed_under_product)?;
    let mut basis = IncrementalBasis::new(field);
    if !closed_under_product {
        for g in gens {
            basis.insert(g.as_slice());
        }
        return Ok(basis.dim());
    }
    if gens.is_empty() {
        return Ok(0);
    }
    // words in the generators, grown by left multiplication until the span stops growing
    let mut frontier = vec![Matrix::identity(field, rows)];
    basis.insert(frontier[0].as_slice());
    for g in gens {
        if basis.insert(g.as_slice()) {
            frontier.push(g.clone());
        }
    }
    while let Some(x) = frontier.pop() {
        for g in gens {
            let y = g.mul(&x)?;
            if basis.insert(y.as_slice()) {
                frontier.push(y);
            }
        }
    }
    Ok(basis.dim())
}

/// Dimension of `{X : X g = g X for all g in ops}`.
pub fn centralizer_dimension<F: Field>(
    field: &F,
    d: usize,
    ops: &[Matrix<F>],
) -> Result<usize, XalgError> {
    let (rows, _) = check_shapes(ops, true)?;
    if !ops.is_empty() && rows != d {
        return Err(XalgError::ShapeMismatch {
            expected: (d, d),
            found: (rows, rows),
        });
    }
    let mut eqs = IncrementalBasis::new(field);
    let unknowns = d * d;
    for g in ops {
        for i in 0..d {
            for j in 0..d {
                // (X g - g X)_{ij} = Σ_k x_{ik} g_{kj} - Σ_k g_{ik} x_{kj}
                let mut row = vec![field.zero(); unknowns];
                for k in 0..d {
                    let gkj = g.get(k, j);
                    row[i * d + k] = field.add(&row[i * d + k], gkj);
                    let gik = g.get(i, k);
                    row[k * d + j] = field.sub(&row[k * d + j], gik);
                }
                eqs.insert(&row);
                if eqs.dim() == unknowns {
                    return Ok(0);
                }
            }
        }
    }
    Ok(unknowns - eqs.dim())
}
