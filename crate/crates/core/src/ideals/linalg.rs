use std::collections::HashMap;

use crate::poly::{add_scaled, Monomial, MonomialOrder, PrimeField, Term};

/// Row-echelon basis of the `F_p`-span of `rows`: monic rows with pairwise
/// distinct leading monomials. Each input row is sorted descending in `order`.
pub(crate) fn echelon(rows: Vec<Vec<Term>>, field: PrimeField, order: &MonomialOrder) -> Vec<Vec<Term>> {
    let mut basis: Vec<Vec<Term>> = Vec::new();
    let mut pivots: HashMap<Monomial, usize> = HashMap::new();
    for row in rows {
        if let Some(reduced) = reduce_against(row, &basis, &pivots, field, order) {
            pivots.insert(reduced[0].0.clone(), basis.len());
            basis.push(reduced);
        }
    }
    basis
}

/// Incremental version of [`echelon`] for callers that add rows over time.
#[derive(Default)]
pub(crate) struct EchelonBasis {
    rows: Vec<Vec<Term>>,
    pivots: HashMap<Monomial, usize>,
}

impl EchelonBasis {
    /// Adds a row, returning whether it enlarged the span.
    pub(crate) fn insert(&mut self, row: Vec<Term>, field: PrimeField, order: &MonomialOrder) -> bool {
        match reduce_against(row, &self.rows, &self.pivots, field, order) {
            Some(reduced) => {
                self.pivots.insert(reduced[0].0.clone(), self.rows.len());
                self.rows.push(reduced);
                true
            }
            None => false,
        }
    }

    pub(crate) fn into_rows(self) -> Vec<Vec<Term>> {
        self.rows
    }
}

fn reduce_against(
    mut row: Vec<Term>,
    basis: &[Vec<Term>],
    pivots: &HashMap<Monomial, usize>,
    field: PrimeField,
    order: &MonomialOrder,
) -> Option<Vec<Term>> {
    loop {
        let (lm, lc) = row.first()?;
        match pivots.get(lm) {
            Some(&k) => {
                let c = field.neg(*lc);
                row = add_scaled(&row[1..], &basis[k][1..], c, None, field, order);
            }
            None => {
                let inv = field.inv(*lc);
                if inv != 1 {
                    for t in row.iter_mut() {
                        t.1 = field.mul(t.1, inv);
                    }
                }
                return Some(row);
            }
        }
    }
}
