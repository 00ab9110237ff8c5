//! Small dense exact linear solver over the rationals (Gaussian
//! elimination). Used by the tree-equivalence decision procedure.

use num_traits::Zero;

use super::Rat;

/// A consistent system's full solution set: one particular solution plus a
/// basis of the homogeneous null space.
#[derive(Debug, Clone)]
pub struct LinearSolution {
    pub particular: Vec<Rat>,
    pub nullspace: Vec<Vec<Rat>>,
}

/// Solves `A u = b` exactly. Returns None when inconsistent.
pub fn solve_linear(a: &[Vec<Rat>], b: &[Rat]) -> Option<LinearSolution> {
    let rows = a.len();
    assert_eq!(rows, b.len());
    let cols = a.first().map_or(0, |r| r.len());
    let mut m: Vec<Vec<Rat>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            assert_eq!(row.len(), cols);
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();

    let mut pivot_cols = Vec::new();
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pivot);
        let inv = m[rank][col].clone();
        for v in m[rank].iter_mut() {
            *v = &*v / &inv;
        }
        for r in 0..rows {
            if r != rank && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in 0..=cols {
                    let delta = &m[rank][c] * &f;
                    m[r][c] = &m[r][c] - &delta;
                }
            }
        }
        pivot_cols.push(col);
        rank += 1;
        if rank == rows {
            break;
        }
    }

    // Inconsistent iff a zero row has nonzero rhs.
    for r in rank..rows {
        if !m[r][cols].is_zero() {
            return None;
        }
    }

    let mut particular = vec![Rat::zero(); cols];
    for (i, &col) in pivot_cols.iter().enumerate() {
        particular[col] = m[i][cols].clone();
    }

    let free_cols: Vec<usize> = (0..cols).filter(|c| !pivot_cols.contains(c)).collect();
    let mut nullspace = Vec::with_capacity(free_cols.len());
    for &fc in &free_cols {
        let mut v = vec![Rat::zero(); cols];
        v[fc] = Rat::from_integer(1.into());
        for (i, &col) in pivot_cols.iter().enumerate() {
            v[col] = -&m[i][fc];
        }
        nullspace.push(v);
    }

    Some(LinearSolution {
        particular,
        nullspace,
    })
}
