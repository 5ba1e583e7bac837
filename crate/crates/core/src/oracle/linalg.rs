//! Exact span membership and rank over the rationals.
//!
//! Systems are stored as deduplicated integer rows; each row is one
//! evaluation point (a pair or triple of vertices) and each column one
//! function. A target column lies in the span of the preceding columns iff it
//! is not a pivot column of the row echelon form.
//!
//! Elimination is fraction-free. It runs over checked `i64` first and is
//! repeated over `BigInt` if any intermediate overflows. Coefficients and
//! infeasibility certificates are computed in `BigRational`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::HashSet;

/// Integer rows with a representative evaluation point per distinct row.
#[derive(Debug, Clone)]
pub(crate) struct System {
    cols: usize,
    rows: Vec<Vec<i64>>,
    points: Vec<Vec<usize>>,
    index: HashSet<Vec<i64>>,
}

impl System {
    pub fn new(cols: usize) -> System {
        System {
            cols,
            rows: Vec::new(),
            points: Vec::new(),
            index: HashSet::new(),
        }
    }

    /// Adds a row unless an identical one is already present.
    pub fn push(&mut self, point: &[usize], row: Vec<i64>) {
        debug_assert_eq!(row.len(), self.cols);
        if !self.index.insert(row.clone()) {
            return;
        }
        self.rows.push(row);
        self.points.push(point.to_vec());
    }

    /// Appends the rows of `other`, keeping first occurrences.
    pub fn absorb(&mut self, other: System) {
        for (row, point) in other.rows.into_iter().zip(other.points) {
            if self.index.insert(row.clone()) {
                self.rows.push(row);
                self.points.push(point);
            }
        }
    }

    #[cfg(test)]
    pub fn distinct_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn rows_with_points(&self) -> impl Iterator<Item = (&[i64], &[usize])> {
        self.rows.iter().map(|r| r.as_slice()).zip(self.points.iter().map(|p| p.as_slice()))
    }

    /// Column projection, deduplicated again.
    pub fn project(&self, cols: &[usize]) -> System {
        let mut out = System::new(cols.len());
        for (row, point) in self.rows_with_points() {
            out.push(point, cols.iter().map(|&c| row[c]).collect());
        }
        out
    }
}

trait Entry: Clone + PartialEq + Zero + std::ops::Neg<Output = Self> {
    fn from_i64(v: i64) -> Self;
    /// `a*x - b*y`, or `None` on overflow.
    fn mul_sub(a: &Self, x: &Self, b: &Self, y: &Self) -> Option<Self>;
    fn gcd(&self, other: &Self) -> Self;
    fn div_exact(&self, d: &Self) -> Self;
    fn is_negative(&self) -> bool;
    fn to_bigint(&self) -> BigInt;
}

impl Entry for i64 {
    fn from_i64(v: i64) -> Self {
        v
    }
    fn mul_sub(a: &i64, x: &i64, b: &i64, y: &i64) -> Option<i64> {
        a.checked_mul(*x)?.checked_sub(b.checked_mul(*y)?)
    }
    fn gcd(&self, other: &i64) -> i64 {
        Integer::gcd(self, other)
    }
    fn div_exact(&self, d: &i64) -> i64 {
        self / d
    }
    fn is_negative(&self) -> bool {
        *self < 0
    }
    fn to_bigint(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl Entry for BigInt {
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn mul_sub(a: &BigInt, x: &BigInt, b: &BigInt, y: &BigInt) -> Option<BigInt> {
        Some(a * x - b * y)
    }
    fn gcd(&self, other: &BigInt) -> BigInt {
        Integer::gcd(self, other)
    }
    fn div_exact(&self, d: &BigInt) -> BigInt {
        self / d
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn to_bigint(&self) -> BigInt {
        self.clone()
    }
}

struct BasisRow<T> {
    pivot: usize,
    values: Vec<T>,
    origin: usize,
}

struct Echelon<T> {
    rows: Vec<BasisRow<T>>,
    pivot_of: Vec<Option<usize>>,
}

impl<T: Entry> Echelon<T> {
    fn build(sys: &System, cols: &[usize]) -> Option<Echelon<T>> {
        let mut e = Echelon {
            rows: Vec::new(),
            pivot_of: vec![None; cols.len()],
        };
        for (origin, row) in sys.rows.iter().enumerate() {
            let r = cols.iter().map(|&c| T::from_i64(row[c])).collect();
            e.insert(r, origin)?;
            if e.rows.len() == cols.len() {
                break;
            }
        }
        Some(e)
    }

    /// Reduces `row` against the basis and keeps it if independent.
    fn insert(&mut self, mut row: Vec<T>, origin: usize) -> Option<()> {
        loop {
            let Some(lead) = row.iter().position(|v| !v.is_zero()) else {
                return Some(());
            };
            match self.pivot_of[lead] {
                Some(i) => {
                    let b = &self.rows[i].values;
                    let (bp, rp) = (b[lead].clone(), row[lead].clone());
                    for j in lead..row.len() {
                        row[j] = T::mul_sub(&row[j], &bp, &b[j], &rp)?;
                    }
                }
                None => {
                    normalise(&mut row, lead);
                    self.pivot_of[lead] = Some(self.rows.len());
                    self.rows.push(BasisRow {
                        pivot: lead,
                        values: row,
                        origin,
                    });
                    return Some(());
                }
            }
        }
    }

    fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Solves for the last column in terms of the others; free unknowns are 0.
    fn solve(&self) -> Vec<BigRational> {
        let t = self.pivot_of.len() - 1;
        let mut x = vec![BigRational::zero(); t];
        let mut order: Vec<&BasisRow<T>> = self.rows.iter().collect();
        order.sort_by_key(|r| std::cmp::Reverse(r.pivot));
        for r in order {
            let mut acc = BigRational::from_integer(r.values[t].to_bigint());
            for j in (r.pivot + 1)..t {
                if !r.values[j].is_zero() && !x[j].is_zero() {
                    acc -= BigRational::from_integer(r.values[j].to_bigint()) * &x[j];
                }
            }
            x[r.pivot] = acc / BigRational::from_integer(r.values[r.pivot].to_bigint());
        }
        x
    }
}

fn normalise<T: Entry>(row: &mut [T], lead: usize) {
    let mut g = T::zero();
    for v in row.iter() {
        if !v.is_zero() {
            g = g.gcd(v);
        }
    }
    if row[lead].is_negative() {
        g = -g;
    }
    if !g.is_zero() && g != T::from_i64(1) {
        for v in row.iter_mut() {
            *v = v.div_exact(&g);
        }
    }
}

enum AnyEchelon {
    Small(Echelon<i64>),
    Big(Echelon<BigInt>),
}

impl AnyEchelon {
    fn build(sys: &System, cols: &[usize]) -> AnyEchelon {
        match Echelon::<i64>::build(sys, cols) {
            Some(e) => AnyEchelon::Small(e),
            None => AnyEchelon::Big(Echelon::<BigInt>::build(sys, cols).expect("BigInt never overflows")),
        }
    }

    fn rank(&self) -> usize {
        match self {
            AnyEchelon::Small(e) => e.rank(),
            AnyEchelon::Big(e) => e.rank(),
        }
    }

    fn last_is_pivot(&self) -> bool {
        match self {
            AnyEchelon::Small(e) => e.pivot_of.last().is_some_and(|p| p.is_some()),
            AnyEchelon::Big(e) => e.pivot_of.last().is_some_and(|p| p.is_some()),
        }
    }

    fn solve(&self) -> Vec<BigRational> {
        match self {
            AnyEchelon::Small(e) => e.solve(),
            AnyEchelon::Big(e) => e.solve(),
        }
    }

    fn origins(&self) -> Vec<usize> {
        match self {
            AnyEchelon::Small(e) => e.rows.iter().map(|r| r.origin).collect(),
            AnyEchelon::Big(e) => e.rows.iter().map(|r| r.origin).collect(),
        }
    }
}

/// A rational combination of evaluation points that annihilates every
/// spanning column but not the target.
#[derive(Debug, Clone, PartialEq)]
pub struct Certificate {
    /// `(point, multiplier, target value at the point)`.
    pub terms: Vec<(Vec<usize>, BigRational, i64)>,
    /// `Σ multiplier · target`, never zero.
    pub residual: BigRational,
}

#[derive(Debug, Clone, PartialEq)]
pub(crate) enum Membership {
    Holds(Vec<BigRational>),
    Fails(Certificate),
}

/// Rank of the submatrix on `cols`.
pub(crate) fn rank(sys: &System, cols: &[usize]) -> usize {
    AnyEchelon::build(sys, cols).rank()
}

/// Whether column `target` lies in the span of `span`.
pub(crate) fn in_span(sys: &System, span: &[usize], target: usize) -> bool {
    let cols: Vec<usize> = span.iter().copied().chain([target]).collect();
    !AnyEchelon::build(sys, &cols).last_is_pivot()
}

/// Span membership with coefficients (indexed like `span`) or a certificate.
pub(crate) fn membership(sys: &System, span: &[usize], target: usize) -> Membership {
    let cols: Vec<usize> = span.iter().copied().chain([target]).collect();
    let e = AnyEchelon::build(sys, &cols);
    if !e.last_is_pivot() {
        return Membership::Holds(e.solve());
    }
    Membership::Fails(certificate(sys, &cols, &e.origins()))
}

/// Gauss-Jordan on the spanning columns of the independent rows, tracking
/// row combinations, until a combination vanishes on them but not on the
/// target.
fn certificate(sys: &System, cols: &[usize], origins: &[usize]) -> Certificate {
    let m = origins.len();
    let t = cols.len() - 1;
    let mut rows: Vec<(Vec<BigRational>, Vec<BigRational>)> = origins
        .iter()
        .enumerate()
        .map(|(i, &o)| {
            let vals = cols.iter().map(|&c| BigRational::from_integer(sys.rows[o][c].into())).collect();
            let mut track = vec![BigRational::zero(); m];
            track[i] = BigRational::one();
            (vals, track)
        })
        .collect();
    let mut used = vec![false; m];
    for c in 0..t {
        let Some(p) = (0..m).find(|&i| !used[i] && !rows[i].0[c].is_zero()) else {
            continue;
        };
        used[p] = true;
        let (pv, pt) = rows[p].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == p || row.0[c].is_zero() {
                continue;
            }
            let f = &row.0[c] / &pv[c];
            for j in 0..=t {
                row.0[j] -= &f * &pv[j];
            }
            for j in 0..m {
                row.1[j] -= &f * &pt[j];
            }
        }
    }
    let (vals, track) = (0..m)
        .filter(|&i| !used[i])
        .map(|i| &rows[i])
        .find(|(v, _)| !v[t].is_zero())
        .expect("target column is a pivot, so some combination isolates it");
    // Scale to integer multipliers.
    let denom = track.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let scale = BigRational::from_integer(denom);
    let terms = origins
        .iter()
        .zip(track)
        .filter(|(_, y)| !y.is_zero())
        .map(|(&o, y)| (sys.points[o].clone(), y * &scale, sys.rows[o][cols[t]]))
        .collect();
    Certificate {
        terms,
        residual: &vals[t] * &scale,
    }
}
