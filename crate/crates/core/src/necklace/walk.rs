use super::Word;

/// The lattice path `S_0 = (0, 0)`, `S_{k+1} = S_k + a(x_{k+1})`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WalkTrace {
    points: Vec<(i64, i64)>,
}

impl WalkTrace {
    pub fn points(&self) -> &[(i64, i64)] {
        &self.points
    }

    pub fn endpoint(&self) -> (i64, i64) {
        *self.points.last().unwrap()
    }

    pub fn xs(&self) -> impl Iterator<Item = i64> + '_ {
        self.points.iter().map(|p| p.0)
    }

    pub fn ys(&self) -> impl Iterator<Item = i64> + '_ {
        self.points.iter().map(|p| p.1)
    }

    pub fn len(&self) -> usize {
        self.points.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.points.len() == 1
    }
}

pub fn walk(word: &Word) -> WalkTrace {
    let mut points = Vec::with_capacity(word.len() + 1);
    let (mut x, mut y) = (0i64, 0i64);
    points.push((x, y));
    for l in word.letters() {
        let (dx, dy) = l.increment();
        x += dx;
        y += dy;
        points.push((x, y));
    }
    WalkTrace { points }
}

/// Degree of the vertex `0` in `T_+(X)`, read off the first coordinate of
/// the walk alone.
///
/// Vertex `0` carries the edge `[0, 1]` as soon as a face exists. Afterwards
/// every step that lands on `0` or leaves `0` adds one edge at `0`, and the
/// first step from `0` to `-1` adds the line edge `[0, -1]` and ends the
/// count: `0` is buried below the blue chain from then on.
pub fn degree_of_origin_from_walk(word: &Word) -> u32 {
    if word.is_empty() {
        return 0;
    }
    let mut degree = 1;
    let mut x = 0i64;
    for l in word.letters() {
        let before = x;
        x += l.increment().0;
        if before == 0 || x == 0 {
            degree += 1;
        }
        if x < 0 {
            break;
        }
    }
    degree
}

/// `|{1 <= j <= n : X_j = 0, X_i >= 0 for all i < j}|`.
pub fn origin_visit_count(word: &Word) -> u32 {
    let mut count = 0;
    let mut x = 0i64;
    for l in word.letters() {
        x += l.increment().0;
        if x < 0 {
            break;
        }
        if x == 0 {
            count += 1;
        }
    }
    count
}

/// `X_j >= 0` for every `1 <= j <= n`.
pub fn origin_on_outer_boundary(word: &Word) -> bool {
    walk(word).xs().all(|x| x >= 0)
}

/// The walk quantities bounding the boundary length of `T_+(X)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BoundaryBound {
    /// Depth of the blue excursion below zero, `max(0, -min_k X_k)`.
    pub a: i64,
    /// Depth of the red excursion below zero, `max(0, -min_k Y_k)`.
    pub b: i64,
    pub x_n: i64,
    pub y_n: i64,
}

impl BoundaryBound {
    /// `a + b + |X_n + a| + |Y_n + b|`.
    pub fn value(&self) -> i64 {
        self.a + self.b + (self.x_n + self.a).abs() + (self.y_n + self.b).abs()
    }

    /// The bound plus the two integer vertices `0` and `1`, which every
    /// non-empty map contains. For non-empty words this equals `|∂T_+(X)|`.
    pub fn dominating(&self) -> i64 {
        self.value() + 2
    }

    /// Value zero: the outer boundary is just the active edge over the line.
    pub fn is_degenerate(&self) -> bool {
        self.value() == 0
    }
}

pub fn boundary_size_bound(word: &Word) -> BoundaryBound {
    let trace = walk(word);
    let a = -trace.xs().min().unwrap_or(0).min(0);
    let b = -trace.ys().min().unwrap_or(0).min(0);
    let (x_n, y_n) = trace.endpoint();
    BoundaryBound { a, b, x_n, y_n }
}
