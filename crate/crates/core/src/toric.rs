//! The weighted blow-up of a smooth 3-fold point as a toric model.
//!
//! Blowing up with weights `(w1, w2, w3)` subdivides the positive octant at
//! the ray `(w1, w2, w3)`. Each of the three new maximal cones is an affine
//! chart `C^3 / mu_{w_k}` whose group acts with weights `-w_j` on the other
//! coordinates and `1` on the `k`-th. For weights `(1, a, b)` these charts
//! carry the non-Gorenstein points that make up the basket.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::{gcd, mod_inverse, smallest_residue, Rational};
use crate::error::{Error, Result};
use crate::monomial::{valuation_ideal, WeightTriple};
use crate::rr::{Basket, BasketEntry, QuotientSingularity};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::X, Axis::Y, Axis::Z];

    fn position(self) -> usize {
        self as usize
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Axis::X => "x",
            Axis::Y => "y",
            Axis::Z => "z",
        };
        write!(f, "{name}")
    }
}

/// The cyclic quotient `C^3 / mu_index` covering one chart of a weighted blow-up.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChartQuotient {
    pub chart: Axis,
    pub index: i64,
    /// Action weights on `(x, y, z)`, reduced modulo `index`.
    pub weights: [i64; 3],
}

impl ChartQuotient {
    pub fn is_smooth(&self) -> bool {
        self.index == 1
    }
}

/// The three chart quotients of the weighted blow-up with weights `w`.
pub fn chart_quotients(w: WeightTriple) -> [ChartQuotient; 3] {
    let ws = w.as_array();
    Axis::ALL.map(|chart| {
        let k = chart.position();
        let index = ws[k];
        let weights = std::array::from_fn(|j| {
            let raw = if j == k { 1 } else { -ws[j] };
            raw.rem_euclid(index)
        });
        ChartQuotient {
            chart,
            index,
            weights,
        }
    })
}

/// Terminality of the weighted blow-up `(r, a, b)`, `r <= a <= b`, by the
/// closed criterion: smallest weight 1 and the other two coprime.
pub fn terminal_by_theorem(w: WeightTriple) -> bool {
    w.wx == 1 && gcd(w.wy, w.wz) == 1
}

/// Reid-Tai: `1/r(w1, w2, w3)` is terminal iff for every `k` in `1..r`
/// the residues of `k * w_i` sum to more than `r`.
pub fn reid_tai_terminal(r: i64, weights: [i64; 3]) -> Result<bool> {
    if r < 2 {
        return Err(Error::IndexTooSmall(r));
    }
    for k in 1..r {
        let mut age = 0;
        for w in weights {
            age += smallest_residue(k * w, r)?;
        }
        if age <= r {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Terminality decided chart by chart with [`reid_tai_terminal`].
pub fn terminal_by_charts(w: WeightTriple) -> bool {
    chart_quotients(w)
        .iter()
        .filter(|c| !c.is_smooth())
        .all(|c| reid_tai_terminal(c.index, c.weights).unwrap_or(false))
}

/// A chart singularity of the `(1, a, b)` blow-up written as `1/r(1, -1, b')`,
/// together with its basket entry `(r, v)` with `v = e b' mod r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChartPoint {
    pub chart: Axis,
    pub quotient: QuotientSingularity,
    pub entry: BasketEntry,
}

/// Invariants of the weighted blow-up with weights `(1, a, b)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WbuProfile {
    pub a: i64,
    pub b: i64,
    pub discrepancy: i64,
    pub e3: Rational,
    pub basket: Basket,
    /// Least positive inverse of the discrepancy modulo the basket index.
    pub e: i64,
    pub points: Vec<ChartPoint>,
}

impl WbuProfile {
    pub fn weights(&self) -> WeightTriple {
        WeightTriple {
            wx: 1,
            wy: self.a,
            wz: self.b,
        }
    }

    /// `discrepancy * E^3`.
    pub fn ae3(&self) -> Rational {
        self.e3 * self.discrepancy
    }
}

/// Brings a chart quotient of a `(1, a, b)` blow-up to the form `1/r(1, -1, b')`:
/// rescale the action so `x` has weight 1, after which the chart coordinate
/// has weight -1 and the remaining coordinate carries `b'`.
fn normal_form(c: &ChartQuotient) -> Result<QuotientSingularity> {
    let r = c.index;
    let unit = mod_inverse(c.weights[0], r).ok_or(Error::NotCoprime {
        what: "x-weight of chart",
        value: c.weights[0],
        modulus: r,
    })?;
    let scaled = c.weights.map(|w| (w * unit).rem_euclid(r));
    let k = c.chart.position();
    debug_assert_eq!(scaled[k], r - 1);
    let other = (1..3).find(|&j| j != k).expect("two non-x coordinates");
    QuotientSingularity::new(r, scaled[other])
}

/// Builds the profile of the weighted blow-up `(1, a, b)`, `1 <= a <= b`, `gcd(a, b) = 1`.
pub fn wbu_profile(a: i64, b: i64) -> Result<WbuProfile> {
    if a < 1 || b < 1 {
        return Err(Error::NonPositiveWeight(1, a, b));
    }
    if a > b {
        return Err(Error::UnorderedPair(a, b));
    }
    if gcd(a, b) != 1 {
        return Err(Error::NotCoprime {
            what: "blow-up weight",
            value: a,
            modulus: b,
        });
    }
    let w = WeightTriple::new(1, a, b)?;
    let discrepancy = a + b;
    let e3 = Rational::new(1, a as i128 * b as i128)?;

    let quotients = chart_quotients(w)
        .into_iter()
        .filter(|c| !c.is_smooth())
        .map(|c| normal_form(&c).map(|q| (c.chart, q)))
        .collect::<Result<Vec<_>>>()?;
    let index = quotients
        .iter()
        .try_fold(1, |acc, (_, q)| crate::arith::lcm(acc, q.r))?;
    let e = mod_inverse(discrepancy, index).ok_or(Error::NotCoprime {
        what: "discrepancy",
        value: discrepancy,
        modulus: index,
    })?;
    let points = quotients
        .into_iter()
        .map(|(chart, quotient)| {
            let v = smallest_residue(e * quotient.b, quotient.r)?;
            Ok(ChartPoint {
                chart,
                quotient,
                entry: BasketEntry::new(quotient.r, v)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let basket = Basket::new(points.iter().map(|p| p.entry).collect());

    Ok(WbuProfile {
        a,
        b,
        discrepancy,
        e3,
        basket,
        e,
        points,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CenterKind {
    Point,
    Curve,
}

impl fmt::Display for CenterKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CenterKind::Point => write!(f, "point"),
            CenterKind::Curve => write!(f, "curve"),
        }
    }
}

/// One blow-up in the tower towards the `(1, m, n)` valuation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TowerStep {
    /// 1-based step number `i`.
    pub step: i64,
    /// Kind of the blown-up center `Z_{i-1}`.
    pub center: CenterKind,
    /// Ray of the new exceptional divisor `F_i`; its valuation has these weights.
    pub ray: [i64; 3],
    /// Coefficient of `F_n` in the pull-back of `F_i`.
    pub coefficient: i64,
    /// Coefficient of `F_i` in the relative canonical divisor of the step: 2 for a point, 1 for a curve.
    pub canonical_coefficient: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TowerProfile {
    pub m: i64,
    pub n: i64,
    pub steps: Vec<TowerStep>,
    /// Coefficient of `F_n` in `K_{X_n} - g^* K_X`, accumulated over the steps.
    pub discrepancy: i64,
}

impl TowerProfile {
    pub fn point_steps(&self) -> usize {
        self.steps
            .iter()
            .filter(|s| s.center == CenterKind::Point)
            .count()
    }

    /// The two ideal conditions that single out a `(1, m, n)` weighted
    /// blow-up: the second valuation ideal is not the maximal ideal, and the
    /// `n`-th is not inside its square.
    pub fn restate_conditions(&self) -> Result<(bool, bool)> {
        let w = WeightTriple::new(1, self.m, self.n)?;
        let first = !valuation_ideal(w, 2)?.equals_max();
        let second = !valuation_ideal(w, self.n)?.inside_max_squared();
        Ok((first, second))
    }
}

/// Replays the tower of blow-ups `X_n -> ... -> X_0` whose last exceptional
/// divisor is the `(1, m, n)` valuation.
///
/// Each step blows up the torus orbit whose cone contains the target ray in
/// its relative interior (the center of the valuation). In the smooth
/// subdivided cone the target is a positive combination of the generators;
/// the coefficient on the new ray is the multiplicity of `F_n` in the
/// pull-back of `F_i`.
pub fn tower_profile(m: i64, n: i64) -> Result<TowerProfile> {
    if m < 1 || n < 1 {
        return Err(Error::NonPositiveWeight(1, m, n));
    }
    if m > n {
        return Err(Error::UnorderedPair(m, n));
    }
    if gcd(m, n) != 1 {
        return Err(Error::NotCoprime {
            what: "tower weight",
            value: m,
            modulus: n,
        });
    }
    let target = [1, m, n];
    // generators of the current minimal cone and the target's coordinates in them
    let mut cone: Vec<([i64; 3], i64)> = vec![([1, 0, 0], 1), ([0, 1, 0], m), ([0, 0, 1], n)];
    let mut steps = Vec::new();
    let mut discrepancy = 0;
    loop {
        if let [(ray, 1)] = cone.as_slice() {
            if *ray == target {
                break;
            }
        }
        let center = match cone.len() {
            3 => CenterKind::Point,
            2 => CenterKind::Curve,
            _ => unreachable!("target is primitive, so a single-ray cone is the target itself"),
        };
        let canonical_coefficient = cone.len() as i64 - 1;
        let ray = cone.iter().fold([0; 3], |acc, (g, _)| {
            [acc[0] + g[0], acc[1] + g[1], acc[2] + g[2]]
        });
        let coefficient = cone.iter().map(|(_, c)| *c).min().expect("nonempty cone");
        let mut next = vec![(ray, coefficient)];
        next.extend(
            cone.iter()
                .filter(|(_, c)| *c > coefficient)
                .map(|(g, c)| (*g, c - coefficient)),
        );
        cone = next;
        discrepancy += canonical_coefficient * coefficient;
        steps.push(TowerStep {
            step: steps.len() as i64 + 1,
            center,
            ray,
            coefficient,
            canonical_coefficient,
        });
    }
    Ok(TowerProfile {
        m,
        n,
        steps,
        discrepancy,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::colength_bruteforce;
    use crate::rr::{
        ae3_from_basket, colength_from_basket, linear_part_dim, max_discrepancy, pair_sum,
    };

    fn w(a: i64, b: i64, c: i64) -> WeightTriple {
        WeightTriple::new(a, b, c).unwrap()
    }

    fn q(n: i128, d: i128) -> Rational {
        Rational::new(n, d).unwrap()
    }

    #[test]
    fn ordinary_blow_up() {
        let p = wbu_profile(1, 1).unwrap();
        assert_eq!(p.discrepancy, 2);
        assert_eq!(p.e3, Rational::ONE);
        assert!(p.basket.is_empty());
        assert_eq!(p.e, 1);
    }

    #[test]
    fn line_case_profile() {
        for n in 2..=10 {
            let p = wbu_profile(1, n).unwrap();
            assert_eq!(p.discrepancy, n + 1);
            assert_eq!(p.e3, q(1, n as i128));
            assert_eq!(p.basket.pairs(), vec![(n, 1)]);
            assert_eq!(p.ae3(), q(n as i128 + 1, n as i128));
        }
    }

    #[test]
    fn profile_2_3() {
        let p = wbu_profile(2, 3).unwrap();
        assert_eq!(p.discrepancy, 5);
        assert_eq!(p.e3, q(1, 6));
        assert_eq!(p.basket.pairs(), vec![(2, 1), (3, 1)]);
        assert_eq!(p.e, 5);
        // 1 = (5/6)/2 + 7/12
        assert_eq!(pair_sum(&p.basket, 1), q(7, 12));
        assert_eq!(p.ae3() / 2 + pair_sum(&p.basket, 1), Rational::ONE);
        let y = p.points.iter().find(|pt| pt.chart == Axis::Y).unwrap();
        assert_eq!((y.quotient.r, y.quotient.b), (2, 1));
        let z = p.points.iter().find(|pt| pt.chart == Axis::Z).unwrap();
        assert_eq!((z.quotient.r, z.quotient.b), (3, 2));
    }

    #[test]
    fn profile_rejects_bad_input() {
        assert!(matches!(wbu_profile(2, 4), Err(Error::NotCoprime { .. })));
        assert!(matches!(
            wbu_profile(0, 3),
            Err(Error::NonPositiveWeight(..))
        ));
        assert!(matches!(wbu_profile(3, 2), Err(Error::UnorderedPair(3, 2))));
    }

    #[test]
    fn profile_identities() {
        for a in 1..=9 {
            for b in (a..=9).filter(|b| gcd(a, *b) == 1) {
                let p = wbu_profile(a, b).unwrap();
                let index = p.basket.index().unwrap();
                assert_eq!((p.discrepancy * p.e).rem_euclid(index), 1 % index);
                assert_eq!(ae3_from_basket(&p.basket).unwrap(), p.ae3());
                assert_eq!(max_discrepancy(&p.basket).unwrap(), Some(a + b));
                for i in 1..=a + b {
                    assert_eq!(
                        colength_from_basket(&p.basket, i).unwrap() as u64,
                        colength_bruteforce(p.weights(), i).unwrap()
                    );
                }
                let linear = valuation_ideal(p.weights(), 2).unwrap().linear_part_dim();
                assert_eq!(linear_part_dim(&p.basket), linear as i64);
                let expected = if b == 1 {
                    0
                } else if a == 1 {
                    1
                } else {
                    2
                };
                assert_eq!(linear, expected);
            }
        }
    }

    #[test]
    fn theorem_examples() {
        assert!(terminal_by_theorem(w(1, 2, 3)));
        assert!(!terminal_by_theorem(w(1, 2, 4)));
        assert!(!terminal_by_theorem(w(2, 3, 5)));
    }

    #[test]
    fn reid_tai_examples() {
        assert!(reid_tai_terminal(2, [1, 1, 1]).unwrap());
        assert!(!reid_tai_terminal(3, [1, 1, 1]).unwrap());
        assert!(reid_tai_terminal(5, [1, 4, 2]).unwrap());
        assert_eq!(
            reid_tai_terminal(1, [0, 0, 0]),
            Err(Error::IndexTooSmall(1))
        );
    }

    #[test]
    fn charts_of_1_2_3() {
        let charts = chart_quotients(w(1, 2, 3));
        assert!(charts[0].is_smooth());
        assert_eq!(charts[1].weights, [1, 1, 1]);
        assert_eq!(charts[2].weights, [2, 1, 1]);
    }

    #[test]
    fn theorem_agrees_with_charts_small() {
        for a in 1..=7 {
            for b in a..=7 {
                for c in b..=7 {
                    assert_eq!(
                        terminal_by_theorem(w(a, b, c)),
                        terminal_by_charts(w(a, b, c)),
                        "({a},{b},{c})"
                    );
                }
            }
        }
    }

    #[test]
    fn tower_examples() {
        let t = tower_profile(1, 1).unwrap();
        assert_eq!(t.steps.len(), 1);
        assert_eq!(t.discrepancy, 2);

        let t = tower_profile(1, 2).unwrap();
        let kinds: Vec<_> = t.steps.iter().map(|s| s.center).collect();
        assert_eq!(kinds, vec![CenterKind::Point, CenterKind::Curve]);
        assert_eq!(t.discrepancy, 3);

        let t = tower_profile(2, 3).unwrap();
        let kinds: Vec<_> = t.steps.iter().map(|s| s.center).collect();
        assert_eq!(
            kinds,
            vec![CenterKind::Point, CenterKind::Point, CenterKind::Curve]
        );
        assert_eq!(t.discrepancy, 5);
        let rays: Vec<_> = t.steps.iter().map(|s| s.ray).collect();
        assert_eq!(rays, vec![[1, 1, 1], [1, 2, 2], [1, 2, 3]]);
    }

    #[test]
    fn tower_rejects_bad_input() {
        assert!(matches!(tower_profile(2, 4), Err(Error::NotCoprime { .. })));
        assert!(matches!(
            tower_profile(3, 2),
            Err(Error::UnorderedPair(3, 2))
        ));
        assert!(tower_profile(0, 2).is_err());
    }

    #[test]
    fn tower_structure() {
        for n in 1..=15 {
            for m in (1..=n).filter(|m| gcd(*m, n) == 1) {
                let t = tower_profile(m, n).unwrap();
                assert_eq!(t.steps.len() as i64, n);
                assert_eq!(t.point_steps() as i64, m);
                for s in &t.steps {
                    let i = s.step;
                    assert_eq!(s.ray, [1, i.min(m), i]);
                    assert_eq!(s.coefficient, 1);
                    let expected = if i <= m {
                        CenterKind::Point
                    } else {
                        CenterKind::Curve
                    };
                    assert_eq!(s.center, expected);
                }
                assert_eq!(t.discrepancy, m + n);
                assert!(n < t.discrepancy);
                assert_eq!(t.restate_conditions().unwrap(), (true, true));
            }
        }
    }
}
