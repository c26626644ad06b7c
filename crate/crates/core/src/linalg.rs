//! Dense exact linear algebra over GF(2^k).
//!
//! Vectors are bit-packed per field-element bit-plane: a length-n vector over
//! GF(2^k) is k bit-vectors of n bits each. Row operations decompose
//! multiplication by a fixed scalar into GF(2)-linear combinations of planes,
//! so GF(2) work runs at one word per 64 coordinates and GF(2^k) costs at
//! most k^2 plane operations.

use crate::error::{Error, Result};
use crate::gf::FieldSpec;

/// Dense vector over GF(2^k), one bit-plane per coefficient bit.
#[derive(Clone, PartialEq, Eq)]
pub struct GfVec {
    field: FieldSpec,
    len: usize,
    words: usize,
    planes: Vec<u64>, // k planes, each `words` u64s, concatenated
}

impl GfVec {
    pub fn zeros(field: FieldSpec, len: usize) -> Self {
        let words = len.div_ceil(64);
        GfVec {
            field,
            len,
            words,
            planes: vec![0; words * field.degree() as usize],
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    fn plane(&self, p: usize) -> &[u64] {
        &self.planes[p * self.words..(p + 1) * self.words]
    }

    pub fn get(&self, i: usize) -> u8 {
        debug_assert!(i < self.len);
        let (w, b) = (i / 64, i % 64);
        let mut v = 0u8;
        for p in 0..self.field.degree() as usize {
            v |= (((self.planes[p * self.words + w] >> b) & 1) as u8) << p;
        }
        v
    }

    pub fn set(&mut self, i: usize, value: u8) {
        debug_assert!(i < self.len);
        let (w, b) = (i / 64, i % 64);
        for p in 0..self.field.degree() as usize {
            let word = &mut self.planes[p * self.words + w];
            *word = (*word & !(1u64 << b)) | ((((value >> p) & 1) as u64) << b);
        }
    }

    /// self[i] += value.
    pub fn add_at(&mut self, i: usize, value: u8) {
        let (w, b) = (i / 64, i % 64);
        for p in 0..self.field.degree() as usize {
            self.planes[p * self.words + w] ^= (((value >> p) & 1) as u64) << b;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.planes.iter().all(|&w| w == 0)
    }

    pub fn add_assign(&mut self, other: &GfVec) {
        debug_assert_eq!(self.len, other.len);
        debug_assert_eq!(self.field, other.field);
        for (a, b) in self.planes.iter_mut().zip(other.planes.iter()) {
            *a ^= *b;
        }
    }

    /// self += alpha * other.
    pub fn add_scaled(&mut self, other: &GfVec, alpha: u8) {
        if alpha == 0 {
            return;
        }
        let k = self.field.degree() as usize;
        if k == 1 {
            self.add_assign(other);
            return;
        }
        // Multiplication by alpha is GF(2)-linear on planes: output plane i
        // collects input plane j whenever bit i of alpha * x^j is set.
        for j in 0..k {
            let col = self.field.mul(alpha, 1 << j);
            for i in 0..k {
                if (col >> i) & 1 == 1 {
                    let (dst, src) = planes_mut(&mut self.planes, other.plane(j), i, self.words);
                    for (a, b) in dst.iter_mut().zip(src) {
                        *a ^= *b;
                    }
                }
            }
        }
    }

    pub fn scale(&mut self, alpha: u8) {
        if alpha == 1 {
            return;
        }
        let k = self.field.degree() as usize;
        let mut out = vec![0u64; self.planes.len()];
        if alpha != 0 {
            for j in 0..k {
                let col = self.field.mul(alpha, 1 << j);
                for i in 0..k {
                    if (col >> i) & 1 == 1 {
                        for (a, b) in out[i * self.words..(i + 1) * self.words]
                            .iter_mut()
                            .zip(self.plane(j))
                        {
                            *a ^= *b;
                        }
                    }
                }
            }
        }
        self.planes = out;
    }

    /// Indices with a nonzero coefficient.
    pub fn support(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for w in 0..self.words {
            let mut or = 0u64;
            for p in 0..self.field.degree() as usize {
                or |= self.planes[p * self.words + w];
            }
            while or != 0 {
                let b = or.trailing_zeros() as usize;
                let i = w * 64 + b;
                if i < self.len {
                    out.push(i);
                }
                or &= or - 1;
            }
        }
        out
    }

    pub fn support_len(&self) -> usize {
        let mut n = 0usize;
        for w in 0..self.words {
            let mut or = 0u64;
            for p in 0..self.field.degree() as usize {
                or |= self.planes[p * self.words + w];
            }
            n += or.count_ones() as usize;
        }
        n
    }

    pub fn first_nonzero(&self) -> Option<usize> {
        for w in 0..self.words {
            let mut or = 0u64;
            for p in 0..self.field.degree() as usize {
                or |= self.planes[p * self.words + w];
            }
            if or != 0 {
                let i = w * 64 + or.trailing_zeros() as usize;
                return (i < self.len).then_some(i);
            }
        }
        None
    }

    /// Sum of all coefficients.
    pub fn coeff_sum(&self) -> u8 {
        let mut v = 0u8;
        for p in 0..self.field.degree() as usize {
            let parity = self
                .plane(p)
                .iter()
                .fold(0u32, |acc, w| acc ^ w.count_ones())
                & 1;
            v |= (parity as u8) << p;
        }
        v
    }

    /// Dot product sum_i self[i] * other[i].
    pub fn dot(&self, other: &GfVec) -> u8 {
        debug_assert_eq!(self.len, other.len);
        let k = self.field.degree() as usize;
        let mut out = 0u8;
        for i in 0..k {
            for j in 0..k {
                let parity = self
                    .plane(i)
                    .iter()
                    .zip(other.plane(j))
                    .fold(0u32, |acc, (a, b)| acc ^ (a & b).count_ones())
                    & 1;
                if parity == 1 {
                    out ^= self.field.mul(1 << i, 1 << j);
                }
            }
        }
        out
    }
}

fn planes_mut<'a>(
    planes: &'a mut [u64],
    src: &'a [u64],
    dst_plane: usize,
    words: usize,
) -> (&'a mut [u64], &'a [u64]) {
    (&mut planes[dst_plane * words..(dst_plane + 1) * words], src)
}

impl std::fmt::Debug for GfVec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "GfVec[")?;
        for (c, i) in self.support().iter().map(|&i| (self.get(i), i)) {
            write!(f, " {i}:{c}")?;
        }
        write!(f, " ]")
    }
}

/// Row space in reduced echelon form. Rows are kept normalized (pivot
/// coefficient 1) and fully back-substituted, so `reduce` yields canonical
/// representatives modulo the span.
pub struct Echelon {
    field: FieldSpec,
    len: usize,
    rows: Vec<GfVec>,
    pivots: Vec<usize>, // strictly increasing
}

impl Echelon {
    pub fn new(field: FieldSpec, len: usize) -> Self {
        Echelon {
            field,
            len,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn rows(&self) -> &[GfVec] {
        &self.rows
    }

    pub fn reduce_in_place(&self, v: &mut GfVec) {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let c = v.get(p);
            if c != 0 {
                v.add_scaled(row, c);
            }
        }
    }

    /// Canonical representative of `v` modulo the row space.
    pub fn reduce(&self, v: &GfVec) -> GfVec {
        let mut out = v.clone();
        self.reduce_in_place(&mut out);
        out
    }

    pub fn contains(&self, v: &GfVec) -> bool {
        self.reduce(v).is_zero()
    }

    /// Insert a vector; returns true when it enlarged the span.
    pub fn insert(&mut self, v: GfVec) -> bool {
        debug_assert_eq!(v.len(), self.len);
        let mut v = v;
        self.reduce_in_place(&mut v);
        let Some(p) = v.first_nonzero() else {
            return false;
        };
        let c = v.get(p);
        if c != 1 {
            v.scale(self.field.inv(c).expect("pivot coefficient nonzero"));
        }
        // Back-substitute the new pivot out of the existing rows.
        for row in self.rows.iter_mut() {
            let c = row.get(p);
            if c != 0 {
                row.add_scaled(&v, c);
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, v);
        true
    }

    pub fn insert_all<I: IntoIterator<Item = GfVec>>(&mut self, vs: I) {
        for v in vs {
            self.insert(v);
        }
    }

    /// Span equality as subspaces.
    pub fn same_span(&self, other: &Echelon) -> bool {
        self.rank() == other.rank() && self.rows.iter().all(|r| other.contains(r))
    }
}

/// Rank of a list of vectors.
pub fn rank_of(field: FieldSpec, len: usize, rows: impl IntoIterator<Item = GfVec>) -> usize {
    let mut e = Echelon::new(field, len);
    e.insert_all(rows);
    e.rank()
}

/// Invert a square matrix given by rows; errors if singular.
pub fn invert_rows(field: FieldSpec, rows: &[GfVec]) -> Result<Vec<GfVec>> {
    let n = rows.len();
    let mut a: Vec<GfVec> = rows.to_vec();
    let mut inv: Vec<GfVec> = (0..n)
        .map(|i| {
            let mut v = GfVec::zeros(field, n);
            v.set(i, 1);
            v
        })
        .collect();
    let mut pivot_row_of_col: Vec<Option<usize>> = vec![None; n];
    let mut used = vec![false; n];
    for col in 0..n {
        let Some(r) = (0..n).find(|&r| !used[r] && a[r].get(col) != 0) else {
            return Err(Error::Unsupported(format!(
                "singular matrix (no pivot in column {col})"
            )));
        };
        used[r] = true;
        pivot_row_of_col[col] = Some(r);
        let c = a[r].get(col);
        if c != 1 {
            let ci = field.inv(c)?;
            a[r].scale(ci);
            inv[r].scale(ci);
        }
        let (ar, ir) = (a[r].clone(), inv[r].clone());
        for s in 0..n {
            if s == r {
                continue;
            }
            let c = a[s].get(col);
            if c != 0 {
                a[s].add_scaled(&ar, c);
                inv[s].add_scaled(&ir, c);
            }
        }
    }
    // Reorder so that row i of the output is row i of A^{-1}.
    let mut out = vec![GfVec::zeros(field, n); n];
    for col in 0..n {
        let r = pivot_row_of_col[col].expect("all pivots assigned");
        out[col] = inv[r].clone();
    }
    Ok(out)
}

/// Transpose a square bit matrix given as rows.
pub fn transpose_rows(field: FieldSpec, rows: &[GfVec]) -> Vec<GfVec> {
    let n = rows.len();
    let mut out = vec![GfVec::zeros(field, n); n];
    for (i, row) in rows.iter().enumerate() {
        for j in row.support() {
            out[j].set(i, row.get(j));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_vec(rng: &mut ChaCha8Rng, field: FieldSpec, len: usize) -> GfVec {
        let mut v = GfVec::zeros(field, len);
        for i in 0..len {
            v.set(i, rng.gen_range(0..field.order()) as u8);
        }
        v
    }

    #[test]
    fn get_set_roundtrip() {
        for k in [1u8, 2, 3, 8] {
            let f = FieldSpec::new(k).unwrap();
            let mut v = GfVec::zeros(f, 130);
            v.set(0, 1);
            v.set(129, (f.order() - 1) as u8);
            assert_eq!(v.get(0), 1);
            assert_eq!(v.get(129), (f.order() - 1) as u8);
            assert_eq!(v.get(64), 0);
            assert_eq!(v.support(), vec![0, 129]);
        }
    }

    #[test]
    fn add_scaled_matches_pointwise() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for k in [2u8, 3, 4, 8] {
            let f = FieldSpec::new(k).unwrap();
            let a = random_vec(&mut rng, f, 99);
            let b = random_vec(&mut rng, f, 99);
            for alpha in f.elements() {
                let mut got = a.clone();
                got.add_scaled(&b, alpha);
                for i in 0..99 {
                    assert_eq!(got.get(i), f.add(a.get(i), f.mul(alpha, b.get(i))));
                }
            }
        }
    }

    #[test]
    fn echelon_reduce_is_canonical() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let f = FieldSpec::new(2).unwrap();
        let mut e = Echelon::new(f, 40);
        let basis: Vec<GfVec> = (0..10).map(|_| random_vec(&mut rng, f, 40)).collect();
        for v in &basis {
            e.insert(v.clone());
        }
        // Members reduce to zero, and reduction is stable under adding members.
        for _ in 0..20 {
            let mut x = GfVec::zeros(f, 40);
            for v in &basis {
                let c = rng.gen_range(0..4) as u8;
                x.add_scaled(v, c);
            }
            assert!(e.contains(&x));
            let probe = random_vec(&mut rng, f, 40);
            let mut shifted = probe.clone();
            shifted.add_assign(&x);
            assert_eq!(e.reduce(&probe), e.reduce(&shifted));
        }
    }

    #[test]
    fn invert_rows_roundtrip() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for k in [1u8, 2, 4] {
            let f = FieldSpec::new(k).unwrap();
            let n = 24;
            // Random invertible matrix: retry until full rank.
            let rows = loop {
                let rows: Vec<GfVec> = (0..n).map(|_| random_vec(&mut rng, f, n)).collect();
                if rank_of(f, n, rows.iter().cloned()) == n {
                    break rows;
                }
            };
            let inv = invert_rows(f, &rows).unwrap();
            // Check A * A^{-1} = I via (A * A^{-1})[i][j] = row_i(A) . col_j(A^{-1}).
            let inv_t = transpose_rows(f, &inv);
            for i in 0..n {
                for j in 0..n {
                    let expect = u8::from(i == j);
                    assert_eq!(rows[i].dot(&inv_t[j]), expect);
                }
            }
        }
    }
}
