//! Dense linear algebra over a small prime field.

/// Dense matrix over `F_p`, row major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mat {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<u32>,
}

pub fn inv(a: u32, p: u32) -> u32 {
    debug_assert!(!a.is_multiple_of(p));
    let mut r = 1u64;
    let (mut b, mut e) = (u64::from(a % p), u64::from(p - 2));
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % u64::from(p);
        }
        b = b * b % u64::from(p);
        e >>= 1;
    }
    r as u32
}

pub fn reduce(x: i64, p: u32) -> u32 {
    x.rem_euclid(i64::from(p)) as u32
}

impl Mat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.data[r * self.cols + c] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn mul(&self, other: &Mat, p: u32) -> Mat {
        assert_eq!(self.cols, other.rows);
        let mut out = Mat::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * other.cols + j;
                    out.data[idx] = (out.data[idx] + a * other.get(k, j)) % p;
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Mat, p: u32) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| (a + b) % p).collect(),
        }
    }

    pub fn scale(&self, s: u32, p: u32) -> Mat {
        Mat { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a * s % p).collect() }
    }

    pub fn transpose(&self) -> Mat {
        let mut out = Mat::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j));
            }
        }
        out
    }

    pub fn apply(&self, v: &[u32], p: u32) -> Vec<u32> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let row = &self.data[i * self.cols..(i + 1) * self.cols];
                (row.iter().zip(v).map(|(a, b)| u64::from(*a) * u64::from(*b)).sum::<u64>() % u64::from(p)) as u32
            })
            .collect()
    }

    pub fn column(&self, c: usize) -> Vec<u32> {
        (0..self.rows).map(|r| self.get(r, c)).collect()
    }

    pub fn from_columns(rows: usize, cols: &[Vec<u32>]) -> Mat {
        let mut m = Mat::zero(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for (i, &x) in c.iter().enumerate() {
                m.set(i, j, x);
            }
        }
        m
    }

    /// Basis of the kernel `{x : Mx = 0}`.
    pub fn kernel(&self, p: u32) -> Vec<Vec<u32>> {
        let (rref, pivots) =
            rref(self.data.chunks(self.cols.max(1)).take(self.rows).map(<[u32]>::to_vec).collect(), self.cols, p);
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![0; self.cols];
                v[f] = 1;
                for (row, &pc) in rref.iter().zip(&pivots) {
                    v[pc] = (p - row[f]) % p;
                }
                v
            })
            .collect()
    }

    pub fn rank(&self, p: u32) -> usize {
        rref(self.data.chunks(self.cols.max(1)).take(self.rows).map(<[u32]>::to_vec).collect(), self.cols, p).1.len()
    }
}

/// Reduced row echelon form of the given rows; returns nonzero rows and pivot columns.
pub fn rref(mut rows: Vec<Vec<u32>>, cols: usize, p: u32) -> (Vec<Vec<u32>>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(k) = (r..rows.len()).find(|&k| rows[k][c] != 0) else {
            continue;
        };
        rows.swap(r, k);
        let s = inv(rows[r][c], p);
        for x in rows[r].iter_mut() {
            *x = *x * s % p;
        }
        let pivot_row = rows[r].clone();
        for (k, row) in rows.iter_mut().enumerate() {
            if k != r && row[c] != 0 {
                let f = row[c];
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x = (*x + (p - f) * y) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    (rows, pivots)
}

/// A subspace of `F_p^n` held in reduced row echelon form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    pub n: usize,
    pub rows: Vec<Vec<u32>>,
    pub pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(n: usize) -> Self {
        Subspace { n, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(n: usize) -> Self {
        Subspace { n, rows: (0..n).map(|i| unit(n, i)).collect(), pivots: (0..n).collect() }
    }

    pub fn span(n: usize, vectors: Vec<Vec<u32>>, p: u32) -> Self {
        let (rows, pivots) = rref(vectors, n, p);
        Subspace { n, rows, pivots }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// `v` minus its component along the subspace, relative to the echelon basis.
    pub fn reduce(&self, v: &[u32], p: u32) -> Vec<u32> {
        let mut v = v.to_vec();
        for (row, &c) in self.rows.iter().zip(&self.pivots) {
            let f = v[c];
            if f != 0 {
                for (x, y) in v.iter_mut().zip(row) {
                    *x = (*x + (p - f) * y) % p;
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[u32], p: u32) -> bool {
        self.reduce(v, p).iter().all(|&x| x == 0)
    }

    /// Coordinates not used as pivots: a basis of a complement.
    pub fn free_columns(&self) -> Vec<usize> {
        (0..self.n).filter(|c| !self.pivots.contains(c)).collect()
    }

    /// Image in `F_p^n / self`, in the coordinates of [`Subspace::free_columns`].
    pub fn quotient_coords(&self, v: &[u32], p: u32) -> Vec<u32> {
        let r = self.reduce(v, p);
        self.free_columns().into_iter().map(|c| r[c]).collect()
    }

    pub fn add_vector(&mut self, v: Vec<u32>, p: u32) -> bool {
        if self.contains(&v, p) {
            return false;
        }
        let mut rows = std::mem::take(&mut self.rows);
        rows.push(v);
        *self = Subspace::span(self.n, rows, p);
        true
    }

    /// `{x ∈ self : Mx ∈ target}`.
    pub fn preimage_within(&self, m: &Mat, target: &Subspace, p: u32) -> Subspace {
        if self.rows.is_empty() {
            return self.clone();
        }
        let images: Vec<Vec<u32>> = self.rows.iter().map(|b| target.quotient_coords(&m.apply(b, p), p)).collect();
        let k = target.n - target.dim();
        if k == 0 {
            return self.clone();
        }
        let cond = Mat::from_columns(k, &images);
        let coeffs = cond.kernel(p);
        let vectors = coeffs
            .iter()
            .map(|c| {
                let mut v = vec![0u32; self.n];
                for (ci, row) in c.iter().zip(&self.rows) {
                    if *ci != 0 {
                        for (x, y) in v.iter_mut().zip(row) {
                            *x = (*x + ci * y) % p;
                        }
                    }
                }
                v
            })
            .collect();
        Subspace::span(self.n, vectors, p)
    }
}

pub fn unit(n: usize, i: usize) -> Vec<u32> {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverses() {
        for p in [2, 3, 5, 7, 11] {
            for a in 1..p {
                assert_eq!(a * inv(a, p) % p, 1);
            }
        }
    }

    #[test]
    fn kernel_and_rank() {
        let p = 5;
        let m = Mat { rows: 2, cols: 3, data: vec![1, 2, 3, 2, 4, 0] };
        assert_eq!(m.rank(p), 2);
        let k = m.kernel(p);
        assert_eq!(k.len(), 1);
        assert!(m.apply(&k[0], p).iter().all(|&x| x == 0));
    }

    #[test]
    fn subspace_ops() {
        let p = 7;
        let s = Subspace::span(3, vec![vec![1, 1, 0], vec![2, 2, 0]], p);
        assert_eq!(s.dim(), 1);
        assert!(s.contains(&[3, 3, 0], p));
        assert!(!s.contains(&[1, 0, 0], p));
        assert_eq!(s.quotient_coords(&[1, 1, 0], p), vec![0, 0]);
        // x ↦ (x0, 0, 0); preimage of span(e0+e1) within F^3 is span(e1, e2)
        let m = Mat { rows: 3, cols: 3, data: vec![1, 0, 0, 0, 0, 0, 0, 0, 0] };
        let pre = Subspace::full(3).preimage_within(&m, &s, p);
        assert_eq!(pre.dim(), 2);
        assert!(pre.contains(&[0, 1, 0], p) && pre.contains(&[0, 0, 1], p));
    }
}
