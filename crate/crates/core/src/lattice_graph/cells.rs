//! Uniform bucket grid for fixed-radius neighbour queries over integer points.
//!
//! With bucket side `2r`, any two points at distance `< 2r` differ by less than
//! `2r` in every coordinate and therefore sit in buckets whose indices differ by
//! at most one per axis. A query only has to scan the `3^n` surrounding buckets.

use super::points::Points;

#[derive(Debug, Clone)]
pub struct CellList {
    side: i64,
    origin: Vec<i64>,
    dims: Vec<i64>,
    strides: Vec<usize>,
    /// `start[c]..start[c + 1]` indexes `items` for bucket `c`.
    start: Vec<usize>,
    items: Vec<u32>,
    /// Offsets in `{-1, 0, 1}^n`, lexicographic.
    stencil: Vec<Vec<i64>>,
}

impl CellList {
    /// Number of buckets a grid over `points` with this side would need, or
    /// `None` if it does not fit in memory-sized integers.
    pub fn bucket_count(points: &Points, side: u64) -> Option<u128> {
        let (lo, hi) = bounding_box(points)?;
        let mut total: u128 = 1;
        for (l, h) in lo.iter().zip(&hi) {
            let extent = (h - l) as u128 / side as u128 + 1;
            total = total.checked_mul(extent)?;
        }
        Some(total)
    }

    /// Whether scanning `3^n` buckets per point beats comparing all pairs.
    pub fn worthwhile(points: &Points, side: u64) -> bool {
        let n = points.dim() as u32;
        match (Self::bucket_count(points, side), 3u128.checked_pow(n)) {
            (Some(buckets), Some(stencil)) => stencil <= buckets && buckets <= 4 * points.len() as u128 + 64,
            _ => false,
        }
    }

    pub fn new(points: &Points, side: u64) -> Self {
        assert!(side > 0);
        let n = points.dim();
        let side = side as i64;
        let (origin, hi) = bounding_box(points).unwrap_or((vec![0; n], vec![0; n]));
        let dims: Vec<i64> = origin
            .iter()
            .zip(&hi)
            .map(|(l, h)| (h - l) / side + 1)
            .collect();
        let mut strides = vec![1usize; n];
        for i in (0..n.saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * dims[i + 1] as usize;
        }
        let total = if n == 0 { 1 } else { strides[0] * dims[0] as usize };

        let mut cell_of = Vec::with_capacity(points.len());
        let mut counts = vec![0usize; total + 1];
        for p in points.iter() {
            let c = p
                .iter()
                .zip(&origin)
                .zip(&strides)
                .map(|((x, o), s)| ((x - o) / side) as usize * s)
                .sum::<usize>();
            cell_of.push(c);
            counts[c + 1] += 1;
        }
        for c in 0..total {
            counts[c + 1] += counts[c];
        }
        let start = counts.clone();
        let mut fill = counts;
        let mut items = vec![0u32; points.len()];
        for (i, &c) in cell_of.iter().enumerate() {
            items[fill[c]] = i as u32;
            fill[c] += 1;
        }

        CellList {
            side,
            origin,
            dims,
            strides,
            start,
            items,
            stencil: stencil(n),
        }
    }

    fn cell_coords(&self, p: &[i64]) -> Vec<i64> {
        p.iter()
            .zip(&self.origin)
            .map(|(x, o)| (x - o).div_euclid(self.side))
            .collect()
    }

    /// Bucket coordinates of a real point, unclamped.
    pub fn cell_coords_real(&self, x: &[f64]) -> Vec<i64> {
        x.iter()
            .zip(&self.origin)
            .map(|(x, &o)| ((x - o as f64) / self.side as f64).floor() as i64)
            .collect()
    }

    /// Visit every point stored in the `3^n` buckets around bucket `center`.
    pub fn for_each_near_cell(&self, center: &[i64], mut visit: impl FnMut(u32)) {
        let mut cell = vec![0i64; center.len()];
        'stencil: for off in &self.stencil {
            let mut idx = 0usize;
            for (k, (&c, &o)) in center.iter().zip(off).enumerate() {
                let v = c + o;
                if v < 0 || v >= self.dims[k] {
                    continue 'stencil;
                }
                cell[k] = v;
                idx += v as usize * self.strides[k];
            }
            for &j in &self.items[self.start[idx]..self.start[idx + 1]] {
                visit(j);
            }
        }
    }

    /// Visit every point that may lie within distance `side` of integer point `p`.
    pub fn for_each_candidate(&self, p: &[i64], visit: impl FnMut(u32)) {
        let c = self.cell_coords(p);
        self.for_each_near_cell(&c, visit);
    }

    /// Exact number of pair comparisons a full neighbour scan will perform.
    pub fn comparison_count(&self) -> u128 {
        let n = self.dims.len();
        let total = self.start.len() - 1;
        let mut sum: u128 = 0;
        let mut coords = vec![0i64; n];
        for c in 0..total {
            let own = (self.start[c + 1] - self.start[c]) as u128;
            if own == 0 {
                continue;
            }
            let mut rem = c;
            for (x, &stride) in coords.iter_mut().zip(&self.strides) {
                *x = (rem / stride) as i64;
                rem %= stride;
            }
            let mut near: u128 = 0;
            self.for_each_near_cell(&coords, |_| near += 1);
            sum += own * near;
        }
        sum
    }
}

fn bounding_box(points: &Points) -> Option<(Vec<i64>, Vec<i64>)> {
    let mut it = points.iter();
    let first = it.next()?;
    let mut lo = first.to_vec();
    let mut hi = first.to_vec();
    for p in it {
        for k in 0..p.len() {
            lo[k] = lo[k].min(p[k]);
            hi[k] = hi[k].max(p[k]);
        }
    }
    Some((lo, hi))
}

fn stencil(n: usize) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::with_capacity(n)];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v| {
                (-1..=1).map(move |d| {
                    let mut w = v.clone();
                    w.push(d);
                    w
                })
            })
            .collect();
    }
    out
}
