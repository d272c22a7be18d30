//! Crossingless tangles in a rectangle with at most six boundary points.

use std::fmt;

/// Largest number of boundary points a rectangle may carry.
pub const MAX_POINTS: usize = 6;

const NONE: u8 = u8::MAX;

/// A flat tangle in `D^n_m`: `m` points on the bottom edge (indices `0..m`,
/// left to right), `n` points on the top edge (indices `m..m+n`, left to
/// right), a planar perfect matching `mate` and a number of closed circles.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FlatTangle {
    m: u8,
    n: u8,
    mate: [u8; MAX_POINTS],
    circles: u8,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TangleError {
    #[error("too many boundary points ({0})")]
    TooManyPoints(usize),
    #[error("odd number of boundary points")]
    Odd,
    #[error("point {0} is matched twice or not at all")]
    NotPerfect(usize),
    #[error("arcs cross")]
    NotPlanar,
    #[error("arity mismatch: {0} vs {1}")]
    Arity(usize, usize),
}

/// What happened in the middle of a vertical stacking.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GlueInfo {
    /// One middle point on each closed loop created by the stacking, in
    /// increasing order; new loops are appended after the existing circles.
    pub new_loops: Vec<u8>,
}

impl FlatTangle {
    /// Build from a list of arcs given as point pairs.
    pub fn new(
        m: usize,
        n: usize,
        arcs: &[(usize, usize)],
        circles: usize,
    ) -> Result<Self, TangleError> {
        let total = m + n;
        if total > MAX_POINTS {
            return Err(TangleError::TooManyPoints(total));
        }
        if !total.is_multiple_of(2) {
            return Err(TangleError::Odd);
        }
        let mut mate = [NONE; MAX_POINTS];
        for &(x, y) in arcs {
            for p in [x, y] {
                if p >= total || mate[p] != NONE || x == y {
                    return Err(TangleError::NotPerfect(p));
                }
            }
            mate[x] = y as u8;
            mate[y] = x as u8;
        }
        if let Some(p) = (0..total).find(|&p| mate[p] == NONE) {
            return Err(TangleError::NotPerfect(p));
        }
        let t = FlatTangle {
            m: m as u8,
            n: n as u8,
            mate,
            circles: circles as u8,
        };
        if !t.is_planar() {
            return Err(TangleError::NotPlanar);
        }
        Ok(t)
    }

    fn from_mate(m: usize, n: usize, mate: [u8; MAX_POINTS], circles: usize) -> Self {
        FlatTangle {
            m: m as u8,
            n: n as u8,
            mate,
            circles: circles as u8,
        }
    }

    fn cyclic_position(&self, p: usize) -> usize {
        let m = self.m as usize;
        if p < m {
            p
        } else {
            m + self.n as usize - 1 - (p - m)
        }
    }

    fn is_planar(&self) -> bool {
        let arcs: Vec<(usize, usize)> = (0..self.points())
            .filter(|&p| p < self.mate(p))
            .map(|p| {
                let (a, b) = (self.cyclic_position(p), self.cyclic_position(self.mate(p)));
                (a.min(b), a.max(b))
            })
            .collect();
        for (i, &(a, b)) in arcs.iter().enumerate() {
            for &(c, d) in &arcs[i + 1..] {
                if (a < c && c < b && b < d) || (c < a && a < d && d < b) {
                    return false;
                }
            }
        }
        true
    }

    /// Identity tangle on `k` strands.
    pub fn identity(k: usize) -> Self {
        let arcs: Vec<_> = (0..k).map(|i| (i, k + i)).collect();
        Self::new(k, k, &arcs, 0).expect("identity is planar")
    }

    /// The empty tangle in `D^0_0` with `c` circles.
    pub fn circles_only(c: usize) -> Self {
        Self::from_mate(0, 0, [NONE; MAX_POINTS], c)
    }

    pub fn bottom(&self) -> usize {
        self.m as usize
    }

    pub fn top(&self) -> usize {
        self.n as usize
    }

    pub fn points(&self) -> usize {
        (self.m + self.n) as usize
    }

    pub fn mate(&self, p: usize) -> usize {
        self.mate[p] as usize
    }

    pub fn circles(&self) -> usize {
        self.circles as usize
    }

    pub fn with_circles(&self, c: usize) -> Self {
        FlatTangle {
            circles: c as u8,
            ..*self
        }
    }

    /// The same tangle with its circles removed.
    pub fn circle_free(&self) -> Self {
        self.with_circles(0)
    }

    pub fn arcs(&self) -> Vec<(usize, usize)> {
        (0..self.points())
            .filter(|&p| p < self.mate(p))
            .map(|p| (p, self.mate(p)))
            .collect()
    }

    /// Stack `upper` (in `D^p_n`) on top of `self` (in `D^n_m`).
    pub fn glue(&self, upper: &FlatTangle) -> Result<(FlatTangle, GlueInfo), TangleError> {
        let (m, n, p) = (self.bottom(), self.top(), upper.top());
        if upper.bottom() != n {
            return Err(TangleError::Arity(n, upper.bottom()));
        }
        if m + p > MAX_POINTS {
            return Err(TangleError::TooManyPoints(m + p));
        }
        let mut mate = [NONE; MAX_POINTS];
        let mut seen_mid = [false; MAX_POINTS];
        // Follow a strand entering the middle from the lower tangle at middle point i.
        let trace = |mut from_lower: bool, mut i: usize, seen: &mut [bool; MAX_POINTS]| -> usize {
            loop {
                seen[i] = true;
                if from_lower {
                    let j = upper.mate(i);
                    if j >= n {
                        return m + (j - n);
                    }
                    i = j;
                    from_lower = false;
                } else {
                    let j = self.mate(m + i);
                    if j < m {
                        return j;
                    }
                    i = j - m;
                    from_lower = true;
                }
            }
        };
        for q in 0..m {
            if mate[q] != NONE {
                continue;
            }
            let j = self.mate(q);
            let end = if j < m {
                j
            } else {
                trace(true, j - m, &mut seen_mid)
            };
            mate[q] = end as u8;
            mate[end] = q as u8;
        }
        for q in 0..p {
            let r = m + q;
            if mate[r] != NONE {
                continue;
            }
            let j = upper.mate(n + q);
            let end = if j >= n {
                m + (j - n)
            } else {
                trace(false, j, &mut seen_mid)
            };
            mate[r] = end as u8;
            mate[end] = r as u8;
        }
        let mut new_loops = Vec::new();
        for i in 0..n {
            if !seen_mid[i] {
                new_loops.push(i as u8);
                let mut k = i;
                loop {
                    seen_mid[k] = true;
                    let up = upper.mate(k);
                    seen_mid[up] = true;
                    k = self.mate(m + up) - m;
                    if k == i {
                        break;
                    }
                }
            }
        }
        let circles = self.circles() + upper.circles() + new_loops.len();
        Ok((
            FlatTangle::from_mate(m, p, mate, circles),
            GlueInfo { new_loops },
        ))
    }

    /// Join bottom point `b` to top point `t` by an arc running outside the
    /// rectangle. Returns the closed tangle and whether a new circle appeared.
    /// Only the leftmost or the rightmost pair can be closed planarly.
    pub fn close(&self, b: usize, t: usize) -> (FlatTangle, bool) {
        let (m, n) = (self.bottom(), self.top());
        assert!(
            b < m && t >= m && t < m + n,
            "close needs a bottom and a top point"
        );
        let leftmost = b == 0 && t == m;
        let rightmost = b == m - 1 && t == m + n - 1;
        assert!(leftmost || rightmost, "only outermost points can be closed");
        let renum = |q: usize| -> usize {
            if q < b {
                q
            } else if q < t {
                q - 1
            } else {
                q - 2
            }
        };
        let mut mate = [NONE; MAX_POINTS];
        let mut new_loop = false;
        if self.mate(b) == t {
            new_loop = true;
        } else {
            let (x, y) = (self.mate(b), self.mate(t));
            mate[renum(x)] = renum(y) as u8;
            mate[renum(y)] = renum(x) as u8;
        }
        for q in 0..m + n {
            if q == b || q == t || q == self.mate(b) || q == self.mate(t) {
                continue;
            }
            mate[renum(q)] = renum(self.mate(q)) as u8;
        }
        let circles = self.circles() + new_loop as usize;
        (FlatTangle::from_mate(m - 1, n - 1, mate, circles), new_loop)
    }

    /// Human-readable name: one of the named smoothings when it matches,
    /// otherwise an arc list.
    pub fn name(&self) -> String {
        let base = self.circle_free();
        let named = named_smoothings()
            .into_iter()
            .find(|(_, t)| *t == base)
            .map(|(s, _)| s.to_string());
        let core = named.unwrap_or_else(|| {
            let arcs: Vec<String> = self
                .arcs()
                .iter()
                .map(|(x, y)| format!("{x}-{y}"))
                .collect();
            format!("D{}_{}[{}]", self.n, self.m, arcs.join(","))
        });
        if self.circles > 0 {
            format!("{core}+{}o", self.circles)
        } else {
            core
        }
    }
}

impl fmt::Debug for FlatTangle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

impl fmt::Display for FlatTangle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

fn mk(m: usize, n: usize, arcs: &[(usize, usize)]) -> FlatTangle {
    FlatTangle::new(m, n, arcs, 0).expect("named smoothing is planar")
}

/// ω: the identity on three strands.
pub fn omega() -> FlatTangle {
    FlatTangle::identity(3)
}

/// α: cap on bottom points 1,2, cup on top points 1,2, third strand vertical.
pub fn alpha() -> FlatTangle {
    mk(3, 3, &[(0, 1), (3, 4), (2, 5)])
}

/// β: cap on bottom points 2,3, cup on top points 2,3, first strand vertical.
pub fn beta() -> FlatTangle {
    mk(3, 3, &[(1, 2), (4, 5), (0, 3)])
}

/// γ = ε ⊗ ζ*.
pub fn gamma() -> FlatTangle {
    mk(3, 3, &[(0, 1), (2, 3), (4, 5)])
}

/// δ = ζ ⊗ ε*.
pub fn delta() -> FlatTangle {
    mk(3, 3, &[(1, 2), (0, 5), (3, 4)])
}

/// ε in `D^1_3`.
pub fn epsilon() -> FlatTangle {
    mk(3, 1, &[(0, 1), (2, 3)])
}

/// ζ in `D^1_3`.
pub fn zeta() -> FlatTangle {
    mk(3, 1, &[(1, 2), (0, 3)])
}

/// ε* in `D^3_1`.
pub fn epsilon_star() -> FlatTangle {
    mk(1, 3, &[(0, 3), (1, 2)])
}

/// ζ* in `D^3_1`.
pub fn zeta_star() -> FlatTangle {
    mk(1, 3, &[(0, 1), (2, 3)])
}

/// ω̃: the identity on two strands.
pub fn omega_tilde() -> FlatTangle {
    FlatTangle::identity(2)
}

/// α̃: cap and cup in `D^2_2`.
pub fn alpha_tilde() -> FlatTangle {
    mk(2, 2, &[(0, 1), (2, 3)])
}

/// The single arc in `D^1_1`.
pub fn arc() -> FlatTangle {
    FlatTangle::identity(1)
}

pub fn named_smoothings() -> Vec<(&'static str, FlatTangle)> {
    vec![
        ("ω", omega()),
        ("α", alpha()),
        ("β", beta()),
        ("γ", gamma()),
        ("δ", delta()),
        ("ε", epsilon()),
        ("ζ", zeta()),
        ("ε*", epsilon_star()),
        ("ζ*", zeta_star()),
        ("ω̃", omega_tilde()),
        ("α̃", alpha_tilde()),
        ("|", arc()),
        ("∅", FlatTangle::circles_only(0)),
    ]
}

/// The boundary cycles of a pair of tangles with the same boundary: closed
/// curves obtained by alternating arcs of the source and the target, followed
/// by the source circles and then the target circles.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Cycles {
    point_cycle: [u8; MAX_POINTS],
    arc_cycles: u8,
    source_circles: u8,
    target_circles: u8,
}

impl Cycles {
    pub fn of(source: &FlatTangle, target: &FlatTangle) -> Cycles {
        assert_eq!(
            (source.bottom(), source.top()),
            (target.bottom(), target.top()),
            "cycles need tangles with the same boundary"
        );
        let mut point_cycle = [NONE; MAX_POINTS];
        let mut count = 0u8;
        for start in 0..source.points() {
            if point_cycle[start] != NONE {
                continue;
            }
            let mut p = start;
            loop {
                point_cycle[p] = count;
                let q = source.mate(p);
                point_cycle[q] = count;
                p = target.mate(q);
                if p == start {
                    break;
                }
            }
            count += 1;
        }
        Cycles {
            point_cycle,
            arc_cycles: count,
            source_circles: source.circles,
            target_circles: target.circles,
        }
    }

    pub fn len(&self) -> usize {
        (self.arc_cycles + self.source_circles + self.target_circles) as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn arc_cycles(&self) -> usize {
        self.arc_cycles as usize
    }

    /// Index of the cycle through boundary point `p`.
    pub fn at_point(&self, p: usize) -> usize {
        self.point_cycle[p] as usize
    }

    pub fn source_circle(&self, i: usize) -> usize {
        debug_assert!(i < self.source_circles as usize);
        self.arc_cycles as usize + i
    }

    pub fn target_circle(&self, i: usize) -> usize {
        debug_assert!(i < self.target_circles as usize);
        (self.arc_cycles + self.source_circles) as usize + i
    }

    /// Smallest boundary point on each arc cycle.
    pub fn representatives(&self) -> Vec<usize> {
        let mut reps = vec![usize::MAX; self.arc_cycles as usize];
        for (p, &c) in self.point_cycle.iter().enumerate() {
            if c != NONE && reps[c as usize] == usize::MAX {
                reps[c as usize] = p;
            }
        }
        reps
    }
}
