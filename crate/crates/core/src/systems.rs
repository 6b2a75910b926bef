//! Piecewise-linear interval maps: the tent family, the three-piece map with
//! fixed points `½` and `1`, and a perturbation of it.

use std::fmt;
use std::str::FromStr;

use num_rational::Rational64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::space::{Grid, Space};

/// A self-map of an interval that can be iterated.
pub trait Dynamics: Sync {
    fn apply(&self, x: f64) -> f64;
    fn domain(&self) -> Space;

    fn iterate(&self, x: f64, n: usize) -> f64 {
        (0..n).fold(x, |acc, _| self.apply(acc))
    }

    /// `[x, f(x), …, fⁿ(x)]`
    fn orbit(&self, x: f64, n: usize) -> Vec<f64> {
        let mut out = Vec::with_capacity(n + 1);
        let mut cur = x;
        out.push(cur);
        for _ in 0..n {
            cur = self.apply(cur);
            debug_assert!(self.domain().contains(cur), "orbit escaped the domain at {cur}");
            out.push(cur);
        }
        out
    }
}

impl<D: Dynamics + ?Sized> Dynamics for &D {
    fn apply(&self, x: f64) -> f64 {
        (**self).apply(x)
    }
    fn domain(&self) -> Space {
        (**self).domain()
    }
}

/// `fᵏ` viewed as a map in its own right.
#[derive(Debug, Clone, Copy)]
pub struct Power<D> {
    pub map: D,
    pub k: usize,
}

impl<D: Dynamics> Dynamics for Power<D> {
    fn apply(&self, x: f64) -> f64 {
        self.map.iterate(x, self.k)
    }
    fn domain(&self) -> Space {
        self.map.domain()
    }
}

/// A piece coefficient: exact when the construction supplies a rational.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Coeff {
    Exact(Rational64),
    Real(f64),
}

impl Coeff {
    pub fn value(self) -> f64 {
        match self {
            Coeff::Exact(r) => *r.numer() as f64 / *r.denom() as f64,
            Coeff::Real(v) => v,
        }
    }

    fn exact(self) -> Option<Rational64> {
        match self {
            Coeff::Exact(r) => Some(r),
            Coeff::Real(_) => None,
        }
    }
}

impl Serialize for Coeff {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Coeff::Exact(r) => s.serialize_str(&r.to_string()),
            Coeff::Real(v) => s.serialize_f64(*v),
        }
    }
}

fn q(n: i64, d: i64) -> Coeff {
    Coeff::Exact(Rational64::new(n, d))
}

/// `slope · x + intercept` on `[lo, hi]`.
#[derive(Debug, Clone, Serialize)]
pub struct Piece {
    pub lo: Coeff,
    pub hi: Coeff,
    pub slope: Coeff,
    pub intercept: Coeff,
    #[serde(skip)]
    at_lo: f64,
    #[serde(skip)]
    at_hi: f64,
}

impl Piece {
    fn new(lo: Coeff, hi: Coeff, slope: Coeff, intercept: Coeff) -> Self {
        let value_at = |x: Coeff| match (x, slope, intercept) {
            (Coeff::Exact(x), Coeff::Exact(a), Coeff::Exact(b)) => Coeff::Exact(a * x + b).value(),
            _ => slope.value() * x.value() + intercept.value(),
        };
        Piece {
            at_lo: value_at(lo),
            at_hi: value_at(hi),
            lo,
            hi,
            slope,
            intercept,
        }
    }

    /// Piece through `(x0, y0)` and `(x1, y1)`, with endpoint values pinned.
    fn through(x0: f64, y0: f64, x1: f64, y1: f64) -> Self {
        let slope = (y1 - y0) / (x1 - x0);
        Piece {
            lo: Coeff::Real(x0),
            hi: Coeff::Real(x1),
            slope: Coeff::Real(slope),
            intercept: Coeff::Real(y0 - slope * x0),
            at_lo: y0,
            at_hi: y1,
        }
    }

    #[inline]
    fn eval(&self, x: f64) -> f64 {
        if x == self.lo.value() {
            self.at_lo
        } else if x == self.hi.value() {
            self.at_hi
        } else {
            self.slope.value() * x + self.intercept.value()
        }
    }

    fn exact_at(&self, x: Rational64) -> Option<Rational64> {
        Some(self.slope.exact()? * x + self.intercept.exact()?)
    }
}

/// Continuous piecewise-linear self-map of an interval.
#[derive(Debug, Clone, Serialize)]
pub struct IntervalMap {
    label: String,
    domain: Space,
    pieces: Vec<Piece>,
    #[serde(skip)]
    uppers: Vec<f64>,
}

impl IntervalMap {
    fn from_pieces(label: String, domain: Space, pieces: Vec<Piece>) -> Result<Self> {
        let uppers = pieces.iter().map(|p| p.hi.value()).collect();
        let map = IntervalMap {
            label,
            domain,
            pieces,
            uppers,
        };
        map.check_continuity()?;
        Ok(map)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    /// Interior breakpoints, in increasing order.
    pub fn breakpoints(&self) -> Vec<f64> {
        self.uppers[..self.uppers.len() - 1].to_vec()
    }

    fn check_continuity(&self) -> Result<()> {
        for w in self.pieces.windows(2) {
            let (left, right) = (&w[0], &w[1]);
            if left.hi != right.lo && left.hi.value() != right.lo.value() {
                return Err(Error::Construction(format!("pieces of {} leave a gap", self.label)));
            }
            let joined = match left.hi.exact() {
                Some(b) => match (left.exact_at(b), right.exact_at(b)) {
                    (Some(l), Some(r)) => l == r,
                    _ => (left.at_hi - right.at_lo).abs() <= 1e-12,
                },
                None => (left.at_hi - right.at_lo).abs() <= 1e-12,
            };
            if !joined {
                return Err(Error::Construction(format!(
                    "{} is discontinuous at {}",
                    self.label,
                    left.hi.value()
                )));
            }
        }
        Ok(())
    }

    /// Exact value at a rational point, when every coefficient involved is rational.
    pub fn eval_exact(&self, x: Rational64) -> Option<Rational64> {
        let xf = Coeff::Exact(x).value();
        let i = self.uppers.partition_point(|&u| u < xf).min(self.pieces.len() - 1);
        self.pieces[i].exact_at(x)
    }

    /// Values at each interior breakpoint from the left and from the right
    /// piece, in exact arithmetic. `None` when some coefficient is irrational.
    pub fn exact_breakpoint_values(&self) -> Option<Vec<(Rational64, Rational64)>> {
        self.pieces
            .windows(2)
            .map(|w| {
                let b = w[0].hi.exact()?;
                Some((w[0].exact_at(b)?, w[1].exact_at(b)?))
            })
            .collect()
    }

    /// Smallest interval containing `f([lo, hi])`.
    pub fn image(&self, lo: f64, hi: f64) -> (f64, f64) {
        let mut a = self.apply(lo).min(self.apply(hi));
        let mut b = self.apply(lo).max(self.apply(hi));
        for &p in &self.uppers {
            if p > lo && p < hi {
                let v = self.apply(p);
                a = a.min(v);
                b = b.max(v);
            }
        }
        (a, b)
    }

    /// Points of `grid` mapped outside the domain.
    pub fn escapes(&self, grid: &Grid) -> Vec<f64> {
        grid.points()
            .iter()
            .copied()
            .filter(|&x| !self.domain.contains(self.apply(x)))
            .collect()
    }
}

impl Dynamics for IntervalMap {
    #[inline]
    fn apply(&self, x: f64) -> f64 {
        let i = self.uppers.partition_point(|&u| u < x).min(self.pieces.len() - 1);
        self.pieces[i].eval(x)
    }

    fn domain(&self) -> Space {
        self.domain
    }
}

/// Tent slope: exact when rational.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Beta(pub Coeff);

impl Beta {
    pub fn sqrt2() -> Self {
        Beta(Coeff::Real(std::f64::consts::SQRT_2))
    }
}

/// `x ↦ βx` on `[0, ½]`, `β(1 - x)` on `[½, 1]`, for `√2 ≤ β ≤ 2`.
pub fn tent(beta: Beta) -> Result<IntervalMap> {
    let b = beta.0;
    let v = b.value();
    // √2 itself arrives as the rounded constant
    if !(std::f64::consts::SQRT_2..=2.0).contains(&v) {
        return Err(Error::domain("beta", v, "[sqrt 2, 2]"));
    }
    let zero = q(0, 1);
    let half = q(1, 2);
    let one = q(1, 1);
    let neg = match b {
        Coeff::Exact(r) => Coeff::Exact(-r),
        Coeff::Real(r) => Coeff::Real(-r),
    };
    let label = match b {
        Coeff::Exact(r) => format!("tent:{r}"),
        Coeff::Real(r) if r == std::f64::consts::SQRT_2 => "tent:sqrt2".to_string(),
        Coeff::Real(r) => format!("tent:{r}"),
    };
    IntervalMap::from_pieces(
        label,
        Space::unit_closed(),
        vec![Piece::new(zero, half, b, zero), Piece::new(half, one, neg, b)],
    )
}

/// The three-piece increasing map on `(0, 1]`: `¾x + ⅛`, `3/2·x − ¼`, `½x + ½`
/// with breakpoints `½` and `¾`. Fixed points are exactly `½` and `1`.
pub fn example43_map() -> IntervalMap {
    IntervalMap::from_pieces(
        "example43".to_string(),
        Space::unit_half_open(),
        vec![
            Piece::new(q(0, 1), q(1, 2), q(3, 4), q(1, 8)),
            Piece::new(q(1, 2), q(3, 4), q(3, 2), q(-1, 4)),
            Piece::new(q(3, 4), q(1, 1), q(1, 2), q(1, 2)),
        ],
    )
    .expect("three-piece map is continuous")
}

/// Knot spacing for [`perturbation_g`]; a dyadic step that lands on `½` and `¾`.
const G_KNOTS: usize = 128;
const G_CHECK_STEP: f64 = 1e-5;

/// A continuous increasing map `g` within `alpha` of [`example43_map`] in sup
/// distance, with `g(½) = ½`, `g(1) = 1` and `g(x) > x` everywhere else.
///
/// Each knot value of `f` on a `1/128` lattice is pulled toward the diagonal by
/// `min(alpha/2, (f(x) - x)/2)`, then the knots are joined linearly. The
/// defining properties are re-checked on a `1e-5` grid before returning.
pub fn perturbation_g(alpha: f64) -> Result<IntervalMap> {
    if !(alpha > 0.0 && alpha < 1.0 / 128.0) {
        return Err(Error::domain("alpha", alpha, "(0, 1/128)"));
    }
    let f = example43_map();
    let knots: Vec<(f64, f64)> = (0..=G_KNOTS)
        .map(|j| {
            let x = j as f64 / G_KNOTS as f64;
            let fx = f.apply(x);
            let pull = (alpha / 2.0).min((fx - x) / 2.0);
            (x, fx - pull)
        })
        .collect();
    let pieces = knots
        .windows(2)
        .map(|w| Piece::through(w[0].0, w[0].1, w[1].0, w[1].1))
        .collect();
    let g = IntervalMap::from_pieces(format!("g:{alpha}"), Space::unit_half_open(), pieces)?;
    verify_perturbation(&f, &g, alpha)?;
    Ok(g)
}

fn verify_perturbation(f: &IntervalMap, g: &IntervalMap, alpha: f64) -> Result<()> {
    let fail = |what: String| Err(Error::Construction(format!("g:{alpha}: {what}")));
    if g.apply(0.5) != 0.5 || g.apply(1.0) != 1.0 {
        return fail("fixed points ½ and 1 not preserved".into());
    }
    let grid = Grid::uniform(Space::unit_half_open(), G_CHECK_STEP)?;
    let mut prev = f64::NEG_INFINITY;
    for &x in grid.points() {
        let gx = g.apply(x);
        if (f.apply(x) - gx).abs() >= alpha {
            return fail(format!("|f - g| ≥ alpha at {x}"));
        }
        if x != 0.5 && x != 1.0 && gx <= x {
            return fail(format!("g(x) ≤ x at {x}"));
        }
        if gx <= prev {
            return fail(format!("not increasing at {x}"));
        }
        if !g.domain().contains(gx) {
            return fail(format!("leaves the domain at {x}"));
        }
        prev = gx;
    }
    Ok(())
}

/// Parsed form of a map descriptor: `tent:<beta>`, `example43` or `g:<alpha>`.
#[derive(Debug, Clone, PartialEq)]
pub enum MapSpec {
    Tent(Beta),
    Example43,
    Perturbation(f64),
}

impl MapSpec {
    pub fn build(&self) -> Result<IntervalMap> {
        match self {
            MapSpec::Tent(b) => tent(*b),
            MapSpec::Example43 => Ok(example43_map()),
            MapSpec::Perturbation(a) => perturbation_g(*a),
        }
    }
}

/// Parses `"2"`, `"1.6"`, `"8/5"` or `"sqrt2"`. Short decimals and fractions
/// stay exact.
fn parse_beta(s: &str) -> Result<Beta> {
    let bad = || Error::UnknownName {
        kind: "tent parameter",
        name: s.to_string(),
    };
    if s == "sqrt2" {
        return Ok(Beta::sqrt2());
    }
    if let Some((n, d)) = s.split_once('/') {
        let n: i64 = n.trim().parse().map_err(|_| bad())?;
        let d: i64 = d.trim().parse().map_err(|_| bad())?;
        if d == 0 {
            return Err(bad());
        }
        return Ok(Beta(Coeff::Exact(Rational64::new(n, d))));
    }
    let v: f64 = s.parse().map_err(|_| bad())?;
    Ok(Beta(decimal_to_rational(s).map_or(Coeff::Real(v), Coeff::Exact)))
}

fn decimal_to_rational(s: &str) -> Option<Rational64> {
    let (int, frac) = s.split_once('.').unwrap_or((s, ""));
    if frac.len() > 12 || !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let denom = 10i64.checked_pow(frac.len() as u32)?;
    let digits: i64 = format!("{int}{frac}").parse().ok()?;
    Some(Rational64::new(digits, denom))
}

fn parse_alpha(s: &str) -> Result<f64> {
    let bad = || Error::UnknownName {
        kind: "perturbation parameter",
        name: s.to_string(),
    };
    if let Some((n, d)) = s.split_once('/') {
        let n: f64 = n.trim().parse().map_err(|_| bad())?;
        let d: f64 = d.trim().parse().map_err(|_| bad())?;
        return Ok(n / d);
    }
    s.parse().map_err(|_| bad())
}

impl FromStr for MapSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.split_once(':') {
            None if s == "example43" => Ok(MapSpec::Example43),
            Some(("tent", b)) => Ok(MapSpec::Tent(parse_beta(b)?)),
            Some(("g", a)) => Ok(MapSpec::Perturbation(parse_alpha(a)?)),
            _ => Err(Error::UnknownName {
                kind: "map",
                name: s.to_string(),
            }),
        }
    }
}

impl fmt::Display for MapSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MapSpec::Tent(Beta(Coeff::Exact(r))) => write!(f, "tent:{r}"),
            MapSpec::Tent(Beta(Coeff::Real(v))) if *v == std::f64::consts::SQRT_2 => f.write_str("tent:sqrt2"),
            MapSpec::Tent(Beta(Coeff::Real(v))) => write!(f, "tent:{v}"),
            MapSpec::Example43 => f.write_str("example43"),
            MapSpec::Perturbation(a) => write!(f, "g:{a}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tent2() -> IntervalMap {
        tent(Beta(q(2, 1))).unwrap()
    }

    #[test]
    fn tent_values() {
        let f = tent2();
        assert_eq!(f.apply(0.25), 0.5);
        assert_eq!(f.apply(0.5), 1.0);
        assert_eq!(f.apply(0.75), 0.5);
        assert_eq!(f.iterate(0.25, 2), 1.0);
        let s = tent(Beta::sqrt2()).unwrap();
        assert_eq!(s.apply(0.5), std::f64::consts::SQRT_2 / 2.0);
    }

    #[test]
    fn tent_rejects_out_of_range() {
        assert!(tent(Beta(q(1, 1))).is_err());
        assert!(tent(Beta(q(21, 10))).is_err());
    }

    #[test]
    fn example43_values() {
        let f = example43_map();
        assert_eq!(f.apply(0.5), 0.5);
        assert_eq!(f.apply(0.75), 0.875);
        assert_eq!(f.apply(1.0), 1.0);
        assert_eq!(f.eval_exact(Rational64::new(3, 4)), Some(Rational64::new(7, 8)));
    }

    #[test]
    fn example43_fixed_points_by_piece() {
        // each piece a·x + b = x solved exactly, kept if inside the piece
        let f = example43_map();
        let mut fixed = Vec::new();
        for p in f.pieces() {
            let (a, b) = (p.slope.exact().unwrap(), p.intercept.exact().unwrap());
            if a == Rational64::new(1, 1) {
                continue;
            }
            let x = b / (Rational64::new(1, 1) - a);
            if x >= p.lo.exact().unwrap() && x <= p.hi.exact().unwrap() && x > Rational64::new(0, 1) {
                fixed.push(x);
            }
        }
        fixed.sort();
        fixed.dedup();
        assert_eq!(fixed, vec![Rational64::new(1, 2), Rational64::new(1, 1)]);
    }

    #[test]
    fn breakpoints_join_exactly() {
        for f in [tent2(), tent(Beta(q(8, 5))).unwrap(), example43_map()] {
            for (l, r) in f.exact_breakpoint_values().unwrap() {
                assert_eq!(l, r, "{}", f.label());
            }
        }
    }

    #[test]
    fn orbit_and_iterate() {
        let f = example43_map();
        assert!((f.iterate(0.9, 50) - 1.0).abs() < 1e-6);
        assert_eq!(f.iterate(0.3, 0), 0.3);
        let o = tent2().orbit(0.3, 20);
        assert_eq!(o.len(), 21);
        for i in 0..20 {
            assert_eq!(o[i + 1], tent2().apply(o[i]));
        }
    }

    #[test]
    fn self_map_on_fine_grid() {
        let grid = Grid::uniform(Space::unit_closed(), 1e-5).unwrap();
        for f in [tent2(), tent(Beta::sqrt2()).unwrap()] {
            assert!(f.escapes(&grid).is_empty());
        }
        let grid = Grid::uniform(Space::unit_half_open(), 1e-5).unwrap();
        assert!(example43_map().escapes(&grid).is_empty());
    }

    #[test]
    fn perturbation_properties() {
        let alpha = 1.0 / 256.0;
        let g = perturbation_g(alpha).unwrap();
        let f = example43_map();
        assert_eq!(g.apply(0.5), 0.5);
        assert_eq!(g.apply(1.0), 1.0);
        assert!(g.apply(0.25) > 0.25);
        let grid = Grid::uniform(Space::unit_half_open(), 1e-5).unwrap();
        let sup = grid
            .points()
            .iter()
            .map(|&x| (f.apply(x) - g.apply(x)).abs())
            .fold(0.0, f64::max);
        assert!(sup < alpha, "{sup}");
        assert!(perturbation_g(1.0 / 64.0).is_err());
        assert!(perturbation_g(0.0).is_err());
    }

    #[test]
    fn image_of_intervals() {
        let f = tent2();
        assert_eq!(f.image(0.4, 0.6), (0.8, 1.0));
        assert_eq!(f.image(0.0, 0.25), (0.0, 0.5));
        let g = example43_map();
        assert_eq!(g.image(0.5, 0.75), (0.5, 0.875));
    }

    #[test]
    fn power_composes() {
        let f = tent2();
        let p = Power { map: &f, k: 3 };
        assert_eq!(p.apply(0.1), f.apply(f.apply(f.apply(0.1))));
    }

    #[test]
    fn map_specs_parse() {
        assert_eq!("example43".parse::<MapSpec>().unwrap(), MapSpec::Example43);
        assert_eq!("tent:2".parse::<MapSpec>().unwrap(), MapSpec::Tent(Beta(q(2, 1))));
        assert_eq!("tent:1.6".parse::<MapSpec>().unwrap(), MapSpec::Tent(Beta(q(8, 5))));
        assert_eq!("tent:sqrt2".parse::<MapSpec>().unwrap(), MapSpec::Tent(Beta::sqrt2()));
        assert_eq!(
            "g:1/256".parse::<MapSpec>().unwrap(),
            MapSpec::Perturbation(1.0 / 256.0)
        );
        assert!("logistic:4".parse::<MapSpec>().is_err());
        assert!("tent:abc".parse::<MapSpec>().is_err());
        for s in ["tent:2", "tent:8/5", "tent:sqrt2", "example43"] {
            let spec: MapSpec = s.parse().unwrap();
            assert_eq!(spec.to_string().parse::<MapSpec>().unwrap(), spec);
        }
    }
}
