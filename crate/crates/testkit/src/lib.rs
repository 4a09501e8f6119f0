//! Reference oracles for the test suites.
//!
//! Everything here works on plain triangle soups (`[[f64; 3]; 3]`) and is
//! written without reference to the library under test, so the suites can
//! check it against independent arithmetic.

pub mod distance;
pub mod raycast;
pub mod stl;

pub type Point = [f64; 3];
pub type Tri = [Point; 3];

pub fn sub(a: Point, b: Point) -> Point {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

pub fn add(a: Point, b: Point) -> Point {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

pub fn scale(a: Point, k: f64) -> Point {
    [a[0] * k, a[1] * k, a[2] * k]
}

pub fn dot(a: Point, b: Point) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub fn cross(a: Point, b: Point) -> Point {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

pub fn norm(a: Point) -> f64 {
    dot(a, a).sqrt()
}

pub fn area(t: &Tri) -> f64 {
    0.5 * norm(cross(sub(t[1], t[0]), sub(t[2], t[0])))
}

/// Axis-aligned box.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Aabb {
    pub lo: Point,
    pub hi: Point,
}

impl Aabb {
    pub fn empty() -> Self {
        Self { lo: [f64::INFINITY; 3], hi: [f64::NEG_INFINITY; 3] }
    }

    pub fn of(tris: &[Tri]) -> Self {
        let mut b = Self::empty();
        for t in tris {
            for p in t {
                b.grow(*p);
            }
        }
        b
    }

    pub fn grow(&mut self, p: Point) {
        for (k, &x) in p.iter().enumerate() {
            self.lo[k] = self.lo[k].min(x);
            self.hi[k] = self.hi[k].max(x);
        }
    }

    pub fn sq_distance(&self, p: Point) -> f64 {
        (0..3).map(|k| (self.lo[k] - p[k]).max(p[k] - self.hi[k]).max(0.0).powi(2)).sum()
    }

    /// Slab test for the segment `o + s·d`, `s ∈ [0, 1]`.
    pub fn hit_by_segment(&self, o: Point, d: Point) -> bool {
        let (mut t0, mut t1) = (0.0_f64, 1.0_f64);
        for k in 0..3 {
            if d[k].abs() < 1e-300 {
                if o[k] < self.lo[k] || o[k] > self.hi[k] {
                    return false;
                }
                continue;
            }
            let inv = 1.0 / d[k];
            let (mut a, mut b) = ((self.lo[k] - o[k]) * inv, (self.hi[k] - o[k]) * inv);
            if a > b {
                std::mem::swap(&mut a, &mut b);
            }
            t0 = t0.max(a);
            t1 = t1.min(b);
            if t0 > t1 {
                return false;
            }
        }
        true
    }
}

/// Deterministic low-discrepancy points on a triangle soup, area weighted.
pub fn surface_samples(tris: &[Tri], n: usize) -> Vec<Point> {
    // R3 sequence from the plastic-number generalization of the golden ratio
    let g = 1.220_744_084_605_759_5_f64;
    let alpha = [1.0 / g, 1.0 / (g * g), 1.0 / (g * g * g)];
    let mut cumulative = Vec::with_capacity(tris.len());
    let mut total = 0.0;
    for t in tris {
        total += area(t);
        cumulative.push(total);
    }
    (1..=n)
        .map(|i| {
            let u = alpha.map(|a| (0.5 + a * i as f64).fract());
            let target = u[0] * total;
            let k = cumulative.partition_point(|&c| c < target).min(tris.len() - 1);
            let t = &tris[k];
            let (s, r) = (u[1].sqrt(), u[2]);
            let (w0, w1, w2) = (1.0 - s, s * (1.0 - r), s * r);
            add(add(scale(t[0], w0), scale(t[1], w1)), scale(t[2], w2))
        })
        .collect()
}

/// Pearson correlation of `x[i]` with `x[i + lag]`.
pub fn autocorrelation(x: &[f64], lag: usize) -> f64 {
    assert!(lag < x.len());
    let (a, b) = (&x[..x.len() - lag], &x[lag..]);
    let n = a.len() as f64;
    let (ma, mb) = (a.iter().sum::<f64>() / n, b.iter().sum::<f64>() / n);
    let (mut sab, mut saa, mut sbb) = (0.0, 0.0, 0.0);
    for (p, q) in a.iter().zip(b) {
        sab += (p - ma) * (q - mb);
        saa += (p - ma).powi(2);
        sbb += (q - mb).powi(2);
    }
    sab / (saa * sbb).sqrt()
}
