use std::collections::{BTreeMap, BTreeSet, HashMap};

use num::Zero;

use crate::poly::{MultiPoly, Q};
use crate::ring::Key;

/// Particular solution of a consistent linear system.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearSolution {
    /// One value per unknown, free unknowns set to zero.
    pub values: Vec<Q>,
    /// Dimension of the solution space of the homogeneous system.
    pub nullity: usize,
}

type Row = BTreeMap<usize, Q>;

/// Solves `sum_j x_j * columns[j] = target` coefficient by coefficient.
///
/// Returns `None` when no rational combination of the columns equals the target.
pub fn solve_combination(columns: &[MultiPoly], target: &MultiPoly) -> Option<LinearSolution> {
    let mut keys: BTreeSet<Key> = target.keyed_terms().keys().copied().collect();
    for c in columns {
        keys.extend(c.keyed_terms().keys().copied());
    }
    let mut rows: Vec<(Row, Q)> = Vec::with_capacity(keys.len());
    for k in keys {
        let row: Row = columns
            .iter()
            .enumerate()
            .filter_map(|(j, c)| c.keyed_terms().get(&k).map(|v| (j, v.clone())))
            .collect();
        let rhs = target.keyed_terms().get(&k).cloned().unwrap_or_else(Q::zero);
        rows.push((row, rhs));
    }
    solve_sparse(columns.len(), rows)
}

/// Sparse exact elimination; pivots are eliminated in insertion order.
fn solve_sparse(ncols: usize, rows: Vec<(Row, Q)>) -> Option<LinearSolution> {
    let mut pivots: Vec<(usize, Row, Q)> = Vec::new();
    let mut pivot_of: HashMap<usize, usize> = HashMap::new();
    for (mut row, mut rhs) in rows {
        while let Some((&col, coef)) = row.iter().find(|(c, _)| pivot_of.contains_key(c)) {
            let coef = coef.clone();
            let (_, prow, prhs) = &pivots[pivot_of[&col]];
            for (c, v) in prow {
                let e = row.entry(*c).or_insert_with(Q::zero);
                *e -= &coef * v;
                if e.is_zero() {
                    row.remove(c);
                }
            }
            rhs -= &coef * prhs;
        }
        match row.iter().next().map(|(c, v)| (*c, v.clone())) {
            None if !rhs.is_zero() => return None,
            None => {}
            Some((col, lead)) => {
                let inv = lead.recip();
                for v in row.values_mut() {
                    *v *= &inv;
                }
                rhs *= &inv;
                pivot_of.insert(col, pivots.len());
                pivots.push((col, row, rhs));
            }
        }
    }
    // a pivot row only mentions columns that were free when it was inserted
    let mut values = vec![Q::zero(); ncols];
    for (col, row, rhs) in pivots.iter().rev() {
        let mut v = rhs.clone();
        for (c, a) in row {
            if c != col {
                v -= a * &values[*c];
            }
        }
        values[*col] = v;
    }
    Some(LinearSolution { values, nullity: ncols - pivots.len() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;
    use crate::ring::{MonomialOrder, Ring};
    use std::sync::Arc;

    #[test]
    fn recovers_coefficients() {
        let r = Arc::new(Ring::new(&["x", "y"], MonomialOrder::GrevLex).unwrap());
        let (x, y, one) = (MultiPoly::var(&r, 0), MultiPoly::var(&r, 1), MultiPoly::one(&r));
        let cols = [&x + &y, &x - &y, one.clone(), &x * &y];
        let target = x.scale(&rat(3, 1)) + y.scale(&rat(1, 1)) + one.scale(&rat(-1, 2));
        let s = solve_combination(&cols, &target).unwrap();
        assert_eq!(s.values, vec![rat(2, 1), rat(1, 1), rat(-1, 2), rat(0, 1)]);
        assert_eq!(s.nullity, 0);
        assert!(solve_combination(&cols, &(&y * &y)).is_none());
    }

    #[test]
    fn dependent_columns_report_nullity() {
        let r = Arc::new(Ring::new(&["x"], MonomialOrder::GrevLex).unwrap());
        let x = MultiPoly::var(&r, 0);
        let cols = [x.clone(), x.scale(&rat(2, 1))];
        let s = solve_combination(&cols, &x.scale(&rat(4, 1))).unwrap();
        assert_eq!(s.nullity, 1);
        let combo = cols[0].scale(&s.values[0]) + cols[1].scale(&s.values[1]);
        assert_eq!(combo, x.scale(&rat(4, 1)));
    }
}
