use crate::error::Result;
use crate::params::Budget;

/// A list of integer points of one dimension stored row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Points {
    dim: usize,
    data: Vec<i64>,
}

impl Points {
    pub fn new(dim: usize) -> Self {
        Points {
            dim,
            data: Vec::new(),
        }
    }

    pub fn with_capacity(dim: usize, len: usize) -> Self {
        Points {
            dim,
            data: Vec::with_capacity(dim * len),
        }
    }

    pub fn from_rows<I, R>(dim: usize, rows: I) -> Self
    where
        I: IntoIterator<Item = R>,
        R: AsRef<[i64]>,
    {
        let mut pts = Points::new(dim);
        for row in rows {
            pts.push(row.as_ref());
        }
        pts
    }

    pub fn push(&mut self, p: &[i64]) {
        assert_eq!(p.len(), self.dim, "point dimension mismatch");
        self.data.extend_from_slice(p);
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.data.len().checked_div(self.dim).unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn get(&self, i: usize) -> &[i64] {
        &self.data[i * self.dim..(i + 1) * self.dim]
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = &[i64]> + '_ {
        self.data.chunks_exact(self.dim.max(1))
    }

    pub fn is_sorted_lex(&self) -> bool {
        self.iter().zip(self.iter().skip(1)).all(|(a, b)| a < b)
    }

    /// Index of `p`, assuming the points are sorted lexicographically.
    pub fn position_sorted(&self, p: &[i64]) -> Option<usize> {
        let (mut lo, mut hi) = (0, self.len());
        while lo < hi {
            let mid = (lo + hi) / 2;
            match self.get(mid).cmp(p) {
                std::cmp::Ordering::Less => lo = mid + 1,
                std::cmp::Ordering::Greater => hi = mid,
                std::cmp::Ordering::Equal => return Some(mid),
            }
        }
        None
    }
}

pub fn squared_distance(a: &[i64], b: &[i64]) -> u64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| {
            let d = x.abs_diff(*y);
            d * d
        })
        .sum()
}

pub fn squared_norm(a: &[i64]) -> u64 {
    a.iter().map(|x| x.unsigned_abs() * x.unsigned_abs()).sum()
}

/// All points of `{-s/2, ..., s/2}^n` in lexicographic order.
pub fn enumerate_cube_points(n: usize, s: u64, budget: &Budget) -> Result<Points> {
    let count = (s as u128 + 1).checked_pow(n as u32);
    budget.check_vertices(count)?;
    let half = (s / 2) as i64;
    let len = count.unwrap_or(0) as usize;
    let mut pts = Points::with_capacity(n, len);
    let mut cur = vec![-half; n];
    for _ in 0..len {
        pts.push(&cur);
        // odometer: last coordinate runs fastest
        for i in (0..n).rev() {
            if cur[i] < half {
                cur[i] += 1;
                break;
            }
            cur[i] = -half;
        }
    }
    Ok(pts)
}

fn ball_budget(n: usize, r: u64, budget: &Budget) -> Result<()> {
    budget.check_vertices((4 * r as u128 - 1).checked_pow(n as u32))
}

/// Integer points of the open ball of radius `2r` about the origin, that is
/// `|v|^2 <= 4r^2 - 1`, in lexicographic order.
pub fn ball_points(n: usize, r: u64, budget: &Budget) -> Result<Points> {
    ball_budget(n, r, budget)?;
    let mut pts = Points::new(n);
    let mut cur = vec![0i64; n];
    walk_ball(&mut cur, 0, 4 * r * r - 1, &mut |p| pts.push(p));
    Ok(pts)
}

/// `|Z^n ∩ S(2r)|`, counted without materializing the points.
pub fn count_ball_lattice_points(n: usize, r: u64, budget: &Budget) -> Result<u64> {
    ball_budget(n, r, budget)?;
    Ok(count_ball(n, 4 * r * r - 1))
}

fn walk_ball(cur: &mut [i64], depth: usize, remaining: u64, visit: &mut dyn FnMut(&[i64])) {
    if depth == cur.len() {
        visit(cur);
        return;
    }
    let m = remaining.isqrt() as i64;
    for x in -m..=m {
        cur[depth] = x;
        walk_ball(cur, depth + 1, remaining - (x * x) as u64, visit);
    }
}

fn count_ball(dims_left: usize, remaining: u64) -> u64 {
    if dims_left == 0 {
        return 1;
    }
    let m = remaining.isqrt();
    if dims_left == 1 {
        return 2 * m + 1;
    }
    let mut total = count_ball(dims_left - 1, remaining);
    for x in 1..=m {
        total += 2 * count_ball(dims_left - 1, remaining - x * x);
    }
    total
}
