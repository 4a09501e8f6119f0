//! Point-to-surface distance through a bounding volume hierarchy.

use super::{add, dot, scale, sub, Aabb, Point, Tri};

/// Closest point on a triangle (Ericson, Real-Time Collision Detection 5.1.5).
pub fn closest_point(p: Point, t: &Tri) -> Point {
    let [a, b, c] = *t;
    let ab = sub(b, a);
    let ac = sub(c, a);
    let ap = sub(p, a);
    let d1 = dot(ab, ap);
    let d2 = dot(ac, ap);
    if d1 <= 0.0 && d2 <= 0.0 {
        return a;
    }
    let bp = sub(p, b);
    let d3 = dot(ab, bp);
    let d4 = dot(ac, bp);
    if d3 >= 0.0 && d4 <= d3 {
        return b;
    }
    let vc = d1 * d4 - d3 * d2;
    if vc <= 0.0 && d1 >= 0.0 && d3 <= 0.0 {
        return add(a, scale(ab, d1 / (d1 - d3)));
    }
    let cp = sub(p, c);
    let d5 = dot(ab, cp);
    let d6 = dot(ac, cp);
    if d6 >= 0.0 && d5 <= d6 {
        return c;
    }
    let vb = d5 * d2 - d1 * d6;
    if vb <= 0.0 && d2 >= 0.0 && d6 <= 0.0 {
        return add(a, scale(ac, d2 / (d2 - d6)));
    }
    let va = d3 * d6 - d5 * d4;
    if va <= 0.0 && (d4 - d3) >= 0.0 && (d5 - d6) >= 0.0 {
        return add(b, scale(sub(c, b), (d4 - d3) / ((d4 - d3) + (d5 - d6))));
    }
    let denom = 1.0 / (va + vb + vc);
    add(a, add(scale(ab, vb * denom), scale(ac, vc * denom)))
}

enum Node {
    Leaf { bounds: Aabb, tris: Vec<Tri> },
    Split { bounds: Aabb, left: Box<Node>, right: Box<Node> },
}

impl Node {
    fn bounds(&self) -> &Aabb {
        match self {
            Node::Leaf { bounds, .. } | Node::Split { bounds, .. } => bounds,
        }
    }

    fn build(mut tris: Vec<Tri>) -> Node {
        let bounds = Aabb::of(&tris);
        if tris.len() <= 4 {
            return Node::Leaf { bounds, tris };
        }
        let extent = sub(bounds.hi, bounds.lo);
        let axis = (0..3).max_by(|&i, &j| extent[i].total_cmp(&extent[j])).unwrap_or(0);
        let key = |t: &Tri| t[0][axis] + t[1][axis] + t[2][axis];
        tris.sort_by(|a, b| key(a).total_cmp(&key(b)));
        let right = tris.split_off(tris.len() / 2);
        Node::Split { bounds, left: Box::new(Node::build(tris)), right: Box::new(Node::build(right)) }
    }
}

pub struct DistanceField {
    root: Node,
}

impl DistanceField {
    pub fn new(tris: &[Tri]) -> Self {
        assert!(!tris.is_empty());
        Self { root: Node::build(tris.to_vec()) }
    }

    /// Unsigned distance from `p` to the nearest triangle.
    pub fn distance(&self, p: Point) -> f64 {
        let mut best = f64::INFINITY;
        let mut stack = vec![&self.root];
        while let Some(n) = stack.pop() {
            if n.bounds().sq_distance(p) >= best {
                continue;
            }
            match n {
                Node::Leaf { tris, .. } => {
                    for t in tris {
                        let d = sub(closest_point(p, t), p);
                        best = best.min(dot(d, d));
                    }
                }
                Node::Split { left, right, .. } => {
                    let (dl, dr) = (left.bounds().sq_distance(p), right.bounds().sq_distance(p));
                    // visit the nearer child first
                    if dl < dr {
                        stack.push(right);
                        stack.push(left);
                    } else {
                        stack.push(left);
                        stack.push(right);
                    }
                }
            }
        }
        best.sqrt()
    }
}
