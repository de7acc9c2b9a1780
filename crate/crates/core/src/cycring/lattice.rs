use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::CycError;

/// A sublattice of `Z^dim` kept in canonical Hermite form.
///
/// Rows are in echelon form: each row's first nonzero entry (its pivot)
/// is positive and lies strictly right of the previous row's pivot, and
/// every entry above a pivot is reduced into `[0, pivot)`. This form is
/// unique for a given lattice, so derived equality is lattice equality.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ImageLattice {
    dim: usize,
    rows: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
    small: Option<Vec<Vec<i128>>>,
}

impl ImageLattice {
    /// The zero lattice in `Z^dim`.
    pub fn zero(dim: usize) -> Self {
        ImageLattice { dim, rows: Vec::new(), pivots: Vec::new(), small: Some(Vec::new()) }
    }

    /// `Z`-span of the given vectors.
    pub fn from_generators<I>(dim: usize, gens: I) -> Result<Self, CycError>
    where
        I: IntoIterator<Item = Vec<BigInt>>,
    {
        let mut lat = Self::zero(dim);
        for g in gens {
            lat.insert(g)?;
        }
        Ok(lat)
    }

    pub fn from_i64_rows(dim: usize, rows: &[Vec<i64>]) -> Result<Self, CycError> {
        Self::from_generators(dim, rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()))
    }

    /// Adds a generator and restores the canonical form.
    pub fn insert(&mut self, mut v: Vec<BigInt>) -> Result<(), CycError> {
        self.check_dim(v.len())?;
        let mut at = 0;
        loop {
            let Some(c) = v.iter().position(|x| !x.is_zero()) else {
                break;
            };
            while at < self.pivots.len() && self.pivots[at] < c {
                at += 1;
            }
            if at == self.pivots.len() || self.pivots[at] != c {
                self.rows.insert(at, v);
                self.pivots.insert(at, c);
                break;
            }
            let row = &mut self.rows[at];
            let (bp, vc) = (row[c].clone(), v[c].clone());
            if (&vc % &bp).is_zero() {
                let q = &vc / &bp;
                for (x, r) in v.iter_mut().zip(row.iter()) {
                    *x -= &q * r;
                }
            } else {
                // unimodular 2×2 step: the new pivot is gcd(bp, vc)
                let e = bp.extended_gcd(&vc);
                let (a, b) = (&bp / &e.gcd, &vc / &e.gcd);
                for (x, r) in v.iter_mut().zip(row.iter_mut()) {
                    let new_r = &e.x * &*r + &e.y * &*x;
                    let new_x = &a * &*x - &b * &*r;
                    *r = new_r;
                    *x = new_x;
                }
            }
        }
        self.canonicalize();
        Ok(())
    }

    fn canonicalize(&mut self) {
        for (row, &c) in self.rows.iter_mut().zip(&self.pivots) {
            if row[c].is_negative() {
                row.iter_mut().for_each(|x| *x = -&*x);
            }
        }
        for j in 0..self.rows.len() {
            let c = self.pivots[j];
            let (above, rest) = self.rows.split_at_mut(j);
            let pivot_row = &rest[0];
            let p = &pivot_row[c];
            for row in above.iter_mut() {
                let q = row[c].div_floor(p);
                if !q.is_zero() {
                    for (x, r) in row.iter_mut().zip(pivot_row) {
                        *x -= &q * r;
                    }
                }
            }
        }
        self.small = self
            .rows
            .iter()
            .map(|r| r.iter().map(ToPrimitive::to_i128).collect::<Option<Vec<_>>>())
            .collect();
    }

    fn check_dim(&self, got: usize) -> Result<(), CycError> {
        if got != self.dim {
            return Err(CycError::Dimension { expected: self.dim, got });
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full_rank(&self) -> bool {
        self.rank() == self.dim
    }

    /// Canonical basis rows.
    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// `[Z^dim : L]` for a full-rank lattice; `None` otherwise.
    pub fn index(&self) -> Option<BigInt> {
        self.is_full_rank().then(|| {
            self.rows
                .iter()
                .zip(&self.pivots)
                .fold(BigInt::one(), |acc, (r, &c)| acc * &r[c])
        })
    }

    /// Whether `v` is an integer combination of the generators.
    pub fn contains(&self, v: &[BigInt]) -> Result<bool, CycError> {
        self.check_dim(v.len())?;
        if let Some(small) = v.iter().map(ToPrimitive::to_i128).collect::<Option<Vec<_>>>() {
            if let Some(ans) = self.contains_small(small) {
                return Ok(ans);
            }
        }
        Ok(self.contains_big(v.to_vec()))
    }

    /// Same as [`contains`](Self::contains) for machine-integer input.
    pub fn contains_i64(&self, v: &[i64]) -> Result<bool, CycError> {
        self.check_dim(v.len())?;
        if let Some(ans) = self.contains_small(v.iter().map(|&x| x as i128).collect()) {
            return Ok(ans);
        }
        Ok(self.contains_big(v.iter().map(|&x| BigInt::from(x)).collect()))
    }

    /// Pivot reduction in `i128`; `None` on overflow.
    fn contains_small(&self, mut v: Vec<i128>) -> Option<bool> {
        let rows = self.small.as_ref()?;
        for (row, &c) in rows.iter().zip(&self.pivots) {
            if v[..c].iter().any(|&x| x != 0) {
                return Some(false);
            }
            if v[c] == 0 {
                continue;
            }
            if v[c] % row[c] != 0 {
                return Some(false);
            }
            let q = v[c] / row[c];
            for (x, &r) in v[c..].iter_mut().zip(&row[c..]) {
                *x = x.checked_sub(q.checked_mul(r)?)?;
            }
        }
        Some(v.iter().all(|&x| x == 0))
    }

    fn contains_big(&self, mut v: Vec<BigInt>) -> bool {
        for (row, &c) in self.rows.iter().zip(&self.pivots) {
            if v[..c].iter().any(|x| !x.is_zero()) {
                return false;
            }
            if v[c].is_zero() {
                continue;
            }
            let (q, r) = v[c].div_rem(&row[c]);
            if !r.is_zero() {
                return false;
            }
            for (x, rr) in v[c..].iter_mut().zip(&row[c..]) {
                *x -= &q * rr;
            }
        }
        v.iter().all(Zero::is_zero)
    }

    /// Stable text dump: one canonical row per line, space separated.
    pub fn dump(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for ImageLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.rows {
            let line: Vec<String> = row.iter().map(ToString::to_string).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}
