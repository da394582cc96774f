//! Monomial valuation ideals in `k[x, y, z]`.
//!
//! A weight triple `(wx, wy, wz)` defines the monomial valuation
//! `v(x^s y^t z^u) = s*wx + t*wy + u*wz`. The ideal of functions with
//! valuation at least `i` is monomial, and counting the monomials below the
//! threshold gives its colength. These brute-force counts are the oracle
//! for the closed-form colength formulas in [`crate::rr`].

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Valuation weights of the local parameters `x, y, z`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WeightTriple {
    pub wx: i64,
    pub wy: i64,
    pub wz: i64,
}

impl WeightTriple {
    pub fn new(wx: i64, wy: i64, wz: i64) -> Result<Self> {
        if wx < 1 || wy < 1 || wz < 1 {
            return Err(Error::NonPositiveWeight(wx, wy, wz));
        }
        Ok(WeightTriple { wx, wy, wz })
    }

    pub fn as_array(&self) -> [i64; 3] {
        [self.wx, self.wy, self.wz]
    }

    /// Sorted ascending, together with the permutation used:
    /// `perm[k]` is the original position of the `k`-th smallest weight.
    pub fn canonicalize(&self) -> (WeightTriple, [usize; 3]) {
        let w = self.as_array();
        let mut perm = [0, 1, 2];
        perm.sort_by_key(|&k| (w[k], k));
        let sorted = WeightTriple {
            wx: w[perm[0]],
            wy: w[perm[1]],
            wz: w[perm[2]],
        };
        (sorted, perm)
    }

    pub fn is_canonical(&self) -> bool {
        self.wx <= self.wy && self.wy <= self.wz
    }

    pub fn value(&self, m: Monomial) -> i64 {
        m.s * self.wx + m.t * self.wy + m.u * self.wz
    }
}

impl fmt::Display for WeightTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.wx, self.wy, self.wz)
    }
}

/// Exponent vector of `x^s y^t z^u`.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize,
)]
pub struct Monomial {
    pub s: i64,
    pub t: i64,
    pub u: i64,
}

impl Monomial {
    pub const fn new(s: i64, t: i64, u: i64) -> Self {
        Monomial { s, t, u }
    }

    pub fn degree(&self) -> i64 {
        self.s + self.t + self.u
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.s <= other.s && self.t <= other.t && self.u <= other.u
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.degree() == 0 {
            return write!(f, "1");
        }
        let mut first = true;
        for (var, e) in [("x", self.s), ("y", self.t), ("z", self.u)] {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{var}")?;
            } else {
                write!(f, "{var}^{e}")?;
            }
        }
        Ok(())
    }
}

const X: Monomial = Monomial::new(1, 0, 0);
const Y: Monomial = Monomial::new(0, 1, 0);
const Z: Monomial = Monomial::new(0, 0, 1);

/// A monomial ideal given by its minimal generators, sorted by `(s, t, u)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct MonomialIdeal {
    generators: Vec<Monomial>,
}

impl MonomialIdeal {
    /// Builds the ideal from any generating set; redundant generators are dropped.
    pub fn from_generators<I: IntoIterator<Item = Monomial>>(gens: I) -> Self {
        let mut gens: Vec<Monomial> = gens.into_iter().collect();
        gens.sort();
        gens.dedup();
        let minimal = gens
            .iter()
            .filter(|g| !gens.iter().any(|h| h != *g && h.divides(g)))
            .copied()
            .collect();
        MonomialIdeal {
            generators: minimal,
        }
    }

    /// The maximal ideal `(x, y, z)`.
    pub fn maximal() -> Self {
        MonomialIdeal::from_generators([X, Y, Z])
    }

    pub fn generators(&self) -> &[Monomial] {
        &self.generators
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.generators.iter().any(|g| g.divides(m))
    }

    pub fn is_subset_of(&self, other: &MonomialIdeal) -> bool {
        self.generators.iter().all(|g| other.contains(g))
    }

    /// True iff this is exactly `(x, y, z)`.
    pub fn equals_max(&self) -> bool {
        *self == MonomialIdeal::maximal()
    }

    /// True iff every generator has degree at least 2, i.e. the ideal lies in `m^2`.
    pub fn inside_max_squared(&self) -> bool {
        self.generators.iter().all(|g| g.degree() >= 2)
    }

    /// `dim (I + m^2) / m^2`: the number of variables among the generators.
    pub fn linear_part_dim(&self) -> usize {
        self.generators.iter().filter(|g| g.degree() == 1).count()
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, g) in self.generators.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ")")
    }
}

fn ceil_div(a: i64, b: i64) -> i64 {
    (a + b - 1) / b
}

/// Minimal generators of `(x^s y^t z^u | s*wx + t*wy + u*wz >= threshold)`.
pub fn valuation_ideal(w: WeightTriple, threshold: i64) -> Result<MonomialIdeal> {
    if threshold < 1 {
        return Err(Error::NonPositiveThreshold(threshold));
    }
    let [ws, wt, wu] = w.as_array();
    let mut gens = Vec::new();
    for s in 0..=ceil_div(threshold, ws) {
        for t in 0..=ceil_div(threshold, wt) {
            for u in 0..=ceil_div(threshold, wu) {
                let m = Monomial::new(s, t, u);
                let value = w.value(m);
                if value < threshold {
                    continue;
                }
                // minimal iff lowering any positive exponent drops below the threshold
                let minimal = (s == 0 || value - ws < threshold)
                    && (t == 0 || value - wt < threshold)
                    && (u == 0 || value - wu < threshold);
                if minimal {
                    gens.push(m);
                }
            }
        }
    }
    gens.sort();
    Ok(MonomialIdeal { generators: gens })
}

/// Number of monomials with valuation below `threshold`, by direct enumeration.
pub fn colength_bruteforce(w: WeightTriple, threshold: i64) -> Result<u64> {
    if threshold < 1 {
        return Err(Error::NonPositiveThreshold(threshold));
    }
    let [ws, wt, wu] = w.as_array();
    let mut count = 0;
    for s in 0..ceil_div(threshold, ws) {
        for t in 0..ceil_div(threshold, wt) {
            for u in 0..ceil_div(threshold, wu) {
                if s * ws + t * wt + u * wu < threshold {
                    count += 1;
                }
            }
        }
    }
    Ok(count)
}

/// Colength of `(x^s y^t z^u | s + min(l, m) t + l u >= l)` in closed form:
/// `l - (1/2) min_{0 <= j < l} ((1 + j) m - 2 l) j`.
pub fn colength_closed_form(l: i64, m: i64) -> Result<u64> {
    if l < 1 {
        return Err(Error::NonPositiveThreshold(l));
    }
    if m < 1 {
        return Err(Error::NonPositiveWeight(1, m, l));
    }
    let min = (0..l).map(|j| ((1 + j) * m - 2 * l) * j).min().unwrap_or(0);
    // (1 + j) j m is even, so the halving is exact
    debug_assert_eq!(min % 2, 0);
    Ok((l - min / 2) as u64)
}
