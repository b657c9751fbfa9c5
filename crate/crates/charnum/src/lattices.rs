//! Exact integer-lattice algebra via Hermite normal form, and mod-2 linear
//! algebra on bit vectors.
//!
//! Lattices are spanned by rows of exact big integers. The Hermite normal
//! form is canonical (pivots positive, entries above each pivot reduced into
//! `[0, pivot)`), so equal lattices have equal bases regardless of generator
//! order. Everything is immutable once built; queries are read-only.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("generator {index} has length {got}, expected {expected}")]
    RaggedInput {
        index: usize,
        expected: usize,
        got: usize,
    },
    #[error("vector has length {got}, expected {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("the claimed sublattice is not contained in the lattice")]
    NotSublattice,
}

/// An integer lattice in `Z^ambient`, stored through its canonical Hermite
/// normal form basis (rows in echelon shape).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IntegerLattice {
    ambient: usize,
    basis: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
}

impl IntegerLattice {
    /// Builds the lattice spanned by the given generators.
    pub fn from_generators(
        ambient: usize,
        generators: &[Vec<BigInt>],
    ) -> Result<Self, LatticeError> {
        for (index, g) in generators.iter().enumerate() {
            if g.len() != ambient {
                return Err(LatticeError::RaggedInput {
                    index,
                    expected: ambient,
                    got: g.len(),
                });
            }
        }
        let mut rows: Vec<Vec<BigInt>> = generators
            .iter()
            .filter(|g| !g.iter().all(|x| x.is_zero()))
            .cloned()
            .collect();
        let (basis, pivots) = hermite_normal_form(ambient, &mut rows);
        Ok(IntegerLattice {
            ambient,
            basis,
            pivots,
        })
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Canonical HNF basis rows.
    pub fn basis(&self) -> &[Vec<BigInt>] {
        &self.basis
    }

    /// Exact membership by back-substitution against the echelon basis.
    pub fn contains(&self, vector: &[BigInt]) -> Result<bool, LatticeError> {
        Ok(self.coordinates(vector)?.is_some())
    }

    /// Integer coordinates of `vector` with respect to the HNF basis, when
    /// the vector lies in the lattice.
    pub fn coordinates(&self, vector: &[BigInt]) -> Result<Option<Vec<BigInt>>, LatticeError> {
        if vector.len() != self.ambient {
            return Err(LatticeError::LengthMismatch {
                expected: self.ambient,
                got: vector.len(),
            });
        }
        let mut residue = vector.to_vec();
        let mut coords = Vec::with_capacity(self.basis.len());
        for (row, &pivot_col) in self.basis.iter().zip(&self.pivots) {
            let pivot = &row[pivot_col];
            let (q, r) = residue[pivot_col].div_rem(pivot);
            if !r.is_zero() {
                return Ok(None);
            }
            if !q.is_zero() {
                for (slot, entry) in residue.iter_mut().zip(row) {
                    *slot -= &q * entry;
                }
            }
            coords.push(q);
        }
        if residue.iter().all(|x| x.is_zero()) {
            Ok(Some(coords))
        } else {
            Ok(None)
        }
    }

    /// Index of the lattice in the ambient `Z^n`; `None` when the rank is
    /// deficient (infinite index).
    pub fn index_in_ambient(&self) -> Option<BigInt> {
        if self.rank() < self.ambient {
            return None;
        }
        let mut det = BigInt::one();
        for (row, &col) in self.basis.iter().zip(&self.pivots) {
            det *= &row[col];
        }
        Some(det)
    }

    /// Index `[self : sub]` of a sublattice of equal rank; `None` when the
    /// ranks differ (infinite index), an error when `sub` is not contained
    /// in `self`.
    pub fn index_of(&self, sub: &IntegerLattice) -> Result<Option<BigInt>, LatticeError> {
        if sub.ambient != self.ambient {
            return Err(LatticeError::LengthMismatch {
                expected: self.ambient,
                got: sub.ambient,
            });
        }
        let mut coordinate_rows = Vec::with_capacity(sub.rank());
        for row in &sub.basis {
            match self.coordinates(row)? {
                Some(coords) => coordinate_rows.push(coords),
                None => return Err(LatticeError::NotSublattice),
            }
        }
        if sub.rank() < self.rank() {
            return Ok(None);
        }
        Ok(Some(determinant(&coordinate_rows).abs()))
    }
}

/// Row-style Hermite normal form with exact big-integer pivots. Returns the
/// echelon rows plus their pivot columns.
#[allow(clippy::needless_range_loop)] // rows of one matrix are combined in place
fn hermite_normal_form(ambient: usize, rows: &mut [Vec<BigInt>]) -> (Vec<Vec<BigInt>>, Vec<usize>) {
    let mut done: Vec<Vec<BigInt>> = Vec::new();
    let mut pivots: Vec<usize> = Vec::new();
    let mut next = 0usize;
    for col in 0..ambient {
        // Use gcd-style elimination among the remaining rows on this column.
        loop {
            let mut best: Option<usize> = None;
            for i in next..rows.len() {
                if rows[i][col].is_zero() {
                    continue;
                }
                best = match best {
                    None => Some(i),
                    Some(j) => {
                        if rows[i][col].abs() < rows[j][col].abs() {
                            Some(i)
                        } else {
                            Some(j)
                        }
                    }
                };
            }
            let Some(best) = best else { break };
            rows.swap(next, best);
            let mut finished = true;
            for i in next + 1..rows.len() {
                if rows[i][col].is_zero() {
                    continue;
                }
                let q = quotient_round(&rows[i][col], &rows[next][col]);
                for c in 0..ambient {
                    let delta = &q * &rows[next][c];
                    rows[i][c] -= delta;
                }
                if !rows[i][col].is_zero() {
                    finished = false;
                }
            }
            if finished {
                break;
            }
        }
        if next < rows.len() && !rows[next][col].is_zero() {
            if rows[next][col].is_negative() {
                for entry in rows[next].iter_mut() {
                    *entry = -std::mem::take(entry);
                }
            }
            pivots.push(col);
            let pivot_row = rows[next].clone();
            for earlier in done.iter_mut() {
                let q = earlier[col].div_floor(&pivot_row[col]);
                if !q.is_zero() {
                    for c in 0..ambient {
                        let delta = &q * &pivot_row[c];
                        earlier[c] -= delta;
                    }
                }
            }
            done.push(pivot_row);
            next += 1;
        }
    }
    (done, pivots)
}

/// Rounded quotient, used so remainders shrink in absolute value.
fn quotient_round(a: &BigInt, b: &BigInt) -> BigInt {
    let (q, r) = a.div_rem(b);
    if r.abs() * BigInt::from(2) > b.abs() {
        if (r.is_negative()) == (b.is_negative()) {
            q + BigInt::one()
        } else {
            q - BigInt::one()
        }
    } else {
        q
    }
}

/// Exact determinant via fraction-free (Bareiss) elimination.
fn determinant(matrix: &[Vec<BigInt>]) -> BigInt {
    let n = matrix.len();
    if n == 0 {
        return BigInt::one();
    }
    assert!(
        matrix.iter().all(|row| row.len() == n),
        "determinant needs a square matrix"
    );
    let mut m: Vec<Vec<BigInt>> = matrix.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let numerator = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = numerator / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * m[n - 1][n - 1].clone()
}

/// gcd of the values of a linear functional on lattice generators; the image
/// subgroup of the functional is `gcd * Z`. Zero when all values vanish.
pub fn functional_gcd(values: &[BigInt]) -> BigInt {
    values.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v))
}

/// A packed vector over the field with two elements.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct F2Vector {
    len: usize,
    blocks: Vec<u64>,
}

impl F2Vector {
    pub fn zeros(len: usize) -> Self {
        F2Vector {
            len,
            blocks: vec![0; len.div_ceil(64)],
        }
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut out = Self::zeros(bits.len());
        for (i, &bit) in bits.iter().enumerate() {
            if bit {
                out.set(i, true);
            }
        }
        out
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, index: usize) -> bool {
        assert!(index < self.len);
        self.blocks[index / 64] >> (index % 64) & 1 == 1
    }

    pub fn set(&mut self, index: usize, value: bool) {
        assert!(index < self.len);
        let mask = 1u64 << (index % 64);
        if value {
            self.blocks[index / 64] |= mask;
        } else {
            self.blocks[index / 64] &= !mask;
        }
    }

    pub fn xor_assign(&mut self, rhs: &F2Vector) {
        assert_eq!(self.len, rhs.len, "length mismatch");
        for (a, b) in self.blocks.iter_mut().zip(&rhs.blocks) {
            *a ^= b;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(|&b| b == 0)
    }

    /// Index of the first set bit.
    pub fn leading_one(&self) -> Option<usize> {
        for (i, &block) in self.blocks.iter().enumerate() {
            if block != 0 {
                return Some(i * 64 + block.trailing_zeros() as usize);
            }
        }
        None
    }

    pub fn to_bools(&self) -> Vec<bool> {
        (0..self.len).map(|i| self.get(i)).collect()
    }
}

/// A subspace of `F2^ambient` stored through its canonical reduced
/// row-echelon basis.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct F2Space {
    ambient: usize,
    basis: Vec<F2Vector>,
}

impl F2Space {
    pub fn from_generators(ambient: usize, generators: &[F2Vector]) -> Result<Self, LatticeError> {
        let mut basis: Vec<F2Vector> = Vec::new();
        for (index, g) in generators.iter().enumerate() {
            if g.len() != ambient {
                return Err(LatticeError::RaggedInput {
                    index,
                    expected: ambient,
                    got: g.len(),
                });
            }
            let mut candidate = g.clone();
            for row in &basis {
                let pivot = row.leading_one().expect("basis rows are nonzero");
                if candidate.get(pivot) {
                    candidate.xor_assign(row);
                }
            }
            if !candidate.is_zero() {
                // Eliminate the new pivot from existing rows, keep rows
                // sorted by pivot column: reduced echelon form is canonical.
                let pivot = candidate.leading_one().unwrap();
                for row in basis.iter_mut() {
                    if row.get(pivot) {
                        row.xor_assign(&candidate);
                    }
                }
                basis.push(candidate);
                basis.sort_by_key(|row| row.leading_one());
            }
        }
        Ok(F2Space { ambient, basis })
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[F2Vector] {
        &self.basis
    }

    pub fn contains(&self, vector: &F2Vector) -> Result<bool, LatticeError> {
        if vector.len() != self.ambient {
            return Err(LatticeError::LengthMismatch {
                expected: self.ambient,
                got: vector.len(),
            });
        }
        let mut residue = vector.clone();
        for row in &self.basis {
            let pivot = row.leading_one().expect("basis rows are nonzero");
            if residue.get(pivot) {
                residue.xor_assign(row);
            }
        }
        Ok(residue.is_zero())
    }
}

/// Solves `rows[g] . x = targets[g]` over F2 for all `g`, i.e. finds a mod-2
/// functional on `F2^columns` with prescribed values on each generator row.
/// Returns the canonical witness (free coordinates zero) or `None` when the
/// system is inconsistent.
pub fn f2_solve(
    rows: &[F2Vector],
    targets: &F2Vector,
    columns: usize,
) -> Result<Option<F2Vector>, LatticeError> {
    if targets.len() != rows.len() {
        return Err(LatticeError::LengthMismatch {
            expected: rows.len(),
            got: targets.len(),
        });
    }
    // Augmented elimination: one extra column holds the target bit.
    let mut augmented: Vec<F2Vector> = Vec::with_capacity(rows.len());
    for (index, row) in rows.iter().enumerate() {
        if row.len() != columns {
            return Err(LatticeError::RaggedInput {
                index,
                expected: columns,
                got: row.len(),
            });
        }
        let mut aug = F2Vector::zeros(columns + 1);
        for c in 0..columns {
            if row.get(c) {
                aug.set(c, true);
            }
        }
        if targets.get(index) {
            aug.set(columns, true);
        }
        augmented.push(aug);
    }

    let mut echelon: Vec<F2Vector> = Vec::new();
    for mut row in augmented {
        for pivot_row in &echelon {
            let pivot = pivot_row.leading_one().unwrap();
            if row.get(pivot) {
                row.xor_assign(pivot_row);
            }
        }
        if !row.is_zero() {
            let pivot = row.leading_one().unwrap();
            if pivot == columns {
                // 0 = 1: certified inconsistency.
                return Ok(None);
            }
            for existing in echelon.iter_mut() {
                if existing.get(pivot) {
                    existing.xor_assign(&row);
                }
            }
            echelon.push(row);
            echelon.sort_by_key(|r| r.leading_one());
        }
    }

    let mut solution = F2Vector::zeros(columns);
    for row in &echelon {
        let pivot = row.leading_one().unwrap();
        solution.set(pivot, row.get(columns));
    }
    Ok(Some(solution))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn vecs(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect()
    }

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn diagonal_generators_keep_their_basis() {
        let lattice = IntegerLattice::from_generators(2, &vecs(&[&[2, 0], &[0, 3]])).unwrap();
        assert_eq!(lattice.basis(), vecs(&[&[2, 0], &[0, 3]]).as_slice());
        assert_eq!(lattice.index_in_ambient(), Some(BigInt::from(6)));
    }

    #[test]
    fn weight_two_chern_lattice_has_index_twelve() {
        let lattice = IntegerLattice::from_generators(2, &vecs(&[&[9, 3], &[8, 4]])).unwrap();
        assert_eq!(lattice.index_in_ambient(), Some(BigInt::from(12)));
    }

    #[test]
    fn empty_generator_set_gives_zero_lattice() {
        let lattice = IntegerLattice::from_generators(2, &[]).unwrap();
        assert_eq!(lattice.rank(), 0);
        assert_eq!(lattice.index_in_ambient(), None);
        assert!(lattice.contains(&big(&[0, 0])).unwrap());
        assert!(!lattice.contains(&big(&[1, 0])).unwrap());
    }

    #[test]
    fn membership_in_weight_two_chern_lattice() {
        let lattice = IntegerLattice::from_generators(2, &vecs(&[&[9, 3], &[8, 4]])).unwrap();
        // 4*(9,3) - 3*(8,4) = (12,0)
        assert!(lattice.contains(&big(&[12, 0])).unwrap());
        assert!(lattice.contains(&big(&[0, 0])).unwrap());
        // Direct 2x2 solve oracle: (x,y) = a*(9,3) + b*(8,4) has the integer
        // solution a = (4x-8y)/12, b = (9y-3x)/12, so membership holds
        // exactly when x + y = 0 mod 12.
        for x in -15i64..=15 {
            for y in -15i64..=15 {
                let expected = (x + y).rem_euclid(12) == 0;
                assert_eq!(
                    lattice.contains(&big(&[x, y])).unwrap(),
                    expected,
                    "({x}, {y})"
                );
            }
        }
        assert!(lattice.contains(&big(&[1, 11])).unwrap());
    }

    #[test]
    fn index_of_sublattice() {
        let full = IntegerLattice::from_generators(2, &vecs(&[&[1, 0], &[0, 1]])).unwrap();
        let sub = IntegerLattice::from_generators(2, &vecs(&[&[2, 0], &[0, 3]])).unwrap();
        assert_eq!(full.index_of(&sub).unwrap(), Some(BigInt::from(6)));
        let line = IntegerLattice::from_generators(2, &vecs(&[&[2, 0]])).unwrap();
        assert_eq!(full.index_of(&line).unwrap(), None);
        let outside = IntegerLattice::from_generators(2, &vecs(&[&[0, 1]])).unwrap();
        assert_eq!(sub.index_of(&outside), Err(LatticeError::NotSublattice));
    }

    #[test]
    fn ragged_input_is_reported() {
        let err = IntegerLattice::from_generators(2, &vecs(&[&[1, 2, 3]]));
        assert!(matches!(err, Err(LatticeError::RaggedInput { .. })));
    }

    #[test]
    fn functional_gcd_values() {
        assert_eq!(functional_gcd(&big(&[6, 4, 4, 4, 4])), BigInt::from(2));
        assert_eq!(functional_gcd(&big(&[0, 0])), BigInt::from(0));
        assert_eq!(
            functional_gcd(&big(&[-20, -12, -8, -6, -12])),
            BigInt::from(2)
        );
    }

    #[test]
    fn solve_weight_two_parity_system() {
        // Rows are the mod-2 Chern vectors of the weight-2 generator
        // monomials, targets the halved Segre numbers mod 2.
        let rows = vec![
            F2Vector::from_bools(&[true, true]),
            F2Vector::from_bools(&[false, false]),
            F2Vector::from_bools(&[false, false]),
        ];
        let targets = F2Vector::from_bools(&[true, false, false]);
        let witness = f2_solve(&rows, &targets, 2).unwrap().unwrap();
        // Canonical witness selects the first column; c2 is an equally valid
        // solution modulo functionals vanishing on the rows.
        assert_eq!(witness.to_bools(), vec![true, false]);
        let c2 = F2Vector::from_bools(&[false, true]);
        for (row, target) in rows.iter().zip(targets.to_bools()) {
            let dot = (0..2).fold(false, |acc, i| acc ^ (row.get(i) & c2.get(i)));
            assert_eq!(dot, target);
        }
    }

    #[test]
    fn zero_target_has_zero_witness() {
        let rows = vec![F2Vector::from_bools(&[true, false, true])];
        let targets = F2Vector::from_bools(&[false]);
        let witness = f2_solve(&rows, &targets, 3).unwrap().unwrap();
        assert!(witness.is_zero());
    }

    #[test]
    fn inconsistent_single_row_system() {
        // One generator with all characteristic numbers even but odd target.
        let rows = vec![F2Vector::from_bools(&[false])];
        let targets = F2Vector::from_bools(&[true]);
        assert_eq!(f2_solve(&rows, &targets, 1).unwrap(), None);
    }

    #[test]
    fn f2_space_rank_and_membership() {
        let space = F2Space::from_generators(
            3,
            &[
                F2Vector::from_bools(&[true, true, false]),
                F2Vector::from_bools(&[false, true, true]),
                F2Vector::from_bools(&[true, false, true]),
            ],
        )
        .unwrap();
        assert_eq!(space.rank(), 2);
        assert!(space
            .contains(&F2Vector::from_bools(&[true, false, true]))
            .unwrap());
        assert!(!space
            .contains(&F2Vector::from_bools(&[true, false, false]))
            .unwrap());
    }

    fn arb_matrix() -> impl Strategy<Value = Vec<Vec<BigInt>>> {
        (1usize..=4).prop_flat_map(|cols| {
            proptest::collection::vec(
                proptest::collection::vec(-9i64..=9, cols).prop_map(|row| big(&row)),
                0..=5,
            )
        })
    }

    proptest! {
        #[test]
        fn hnf_is_generator_order_independent(rows in arb_matrix(), seed in 0u64..1000) {
            let cols = rows.first().map_or(1, |r| r.len());
            let lattice = IntegerLattice::from_generators(cols, &rows).unwrap();
            // Deterministic shuffle driven by the seed.
            let mut shuffled = rows.clone();
            let mut state = seed.wrapping_add(1);
            for i in (1..shuffled.len()).rev() {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                shuffled.swap(i, (state % (i as u64 + 1)) as usize);
            }
            let relattice = IntegerLattice::from_generators(cols, &shuffled).unwrap();
            prop_assert_eq!(lattice.basis(), relattice.basis());
        }

        #[test]
        fn hnf_is_idempotent(rows in arb_matrix()) {
            let cols = rows.first().map_or(1, |r| r.len());
            let lattice = IntegerLattice::from_generators(cols, &rows).unwrap();
            let again = IntegerLattice::from_generators(cols, lattice.basis()).unwrap();
            prop_assert_eq!(lattice.basis(), again.basis());
        }

        #[test]
        fn generators_are_members(rows in arb_matrix()) {
            let cols = rows.first().map_or(1, |r| r.len());
            let lattice = IntegerLattice::from_generators(cols, &rows).unwrap();
            for row in &rows {
                prop_assert!(lattice.contains(row).unwrap());
            }
        }

        #[test]
        fn f2_solver_matches_exhaustive_search(
            rows_bits in proptest::collection::vec(
                proptest::collection::vec(prop::bool::ANY, 5), 0..=6),
            targets_bits in proptest::collection::vec(prop::bool::ANY, 6),
        ) {
            let columns = 5usize;
            let rows: Vec<F2Vector> =
                rows_bits.iter().map(|r| F2Vector::from_bools(r)).collect();
            let targets = F2Vector::from_bools(&targets_bits[..rows.len()]);
            let solved = f2_solve(&rows, &targets, columns).unwrap();

            let satisfies = |x: u32| {
                rows.iter().zip(targets.to_bools()).all(|(row, t)| {
                    let dot = (0..columns)
                        .fold(false, |acc, i| acc ^ (row.get(i) & (x >> i & 1 == 1)));
                    dot == t
                })
            };
            let brute = (0u32..1 << columns).find(|&x| satisfies(x));
            prop_assert_eq!(solved.is_some(), brute.is_some());
            if let Some(witness) = solved {
                let packed = (0..columns).fold(0u32, |acc, i| {
                    acc | ((witness.get(i) as u32) << i)
                });
                prop_assert!(satisfies(packed));
            }
        }
    }
}
