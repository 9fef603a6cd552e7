//! Exact linear algebra over the rationals and prime fields.
//!
//! Matrices over ℚ are stored as integer rows: any rational row can be
//! scaled by the least common multiple of its denominators without changing
//! rank or row dependencies. Rank over ℚ uses fraction-free (Bareiss)
//! elimination, first in `i128` with overflow checks and then in
//! arbitrary precision if an intermediate minor does not fit.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Coefficient field: the rationals or a prime field GF(p).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldSpec {
    Rationals,
    PrimeField(u64),
}

/// Moduli are restricted to `p < 2^32` so that products fit in `u64`.
pub const MAX_MODULUS: u64 = u32::MAX as u64;

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p < 4 {
        return true;
    }
    if p.is_multiple_of(2) {
        return false;
    }
    let mut d = 3;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

impl FieldSpec {
    pub fn prime(p: u64) -> Result<Self> {
        if p > MAX_MODULUS {
            return Err(Error::InvalidField(format!("modulus {p} exceeds 2^32 - 1")));
        }
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        Ok(FieldSpec::PrimeField(p))
    }

    pub fn modulus(&self) -> Option<u64> {
        match self {
            FieldSpec::Rationals => None,
            FieldSpec::PrimeField(p) => Some(*p),
        }
    }

    /// Characteristic of the field (0 for ℚ).
    pub fn characteristic(&self) -> u64 {
        self.modulus().unwrap_or(0)
    }

    /// Maps an integer into the field's canonical representative range.
    fn reduce(&self, v: i64) -> u64 {
        match self {
            FieldSpec::Rationals => unreachable!("reduce is only used for prime fields"),
            FieldSpec::PrimeField(p) => v.rem_euclid(*p as i64) as u64,
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "q"),
            FieldSpec::PrimeField(p) => write!(f, "gf:{p}"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = Error;

    /// Accepts `q` (or `Q`, `rationals`) and `gf:<p>`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        match t {
            "q" | "Q" | "rationals" => Ok(FieldSpec::Rationals),
            _ => {
                let rest = t
                    .strip_prefix("gf:")
                    .or_else(|| t.strip_prefix("GF:"))
                    .ok_or_else(|| Error::InvalidField(format!("unrecognized field '{s}'")))?;
                let p: u64 = rest
                    .parse()
                    .map_err(|_| Error::InvalidField(format!("bad modulus '{rest}'")))?;
                FieldSpec::prime(p)
            }
        }
    }
}

impl Serialize for FieldSpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for FieldSpec {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

pub(crate) fn mod_pow(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

pub(crate) fn mod_inv(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    mod_pow(a, p - 2, p)
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Storage {
    Integer(Vec<BigInt>),
    Modular(Vec<u64>),
}

/// Dense row-major matrix whose entries live in a [`FieldSpec`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    field: FieldSpec,
    data: Storage,
}

impl ExactMatrix {
    pub fn zeros(field: FieldSpec, rows: usize, cols: usize) -> Self {
        let data = match field {
            FieldSpec::Rationals => Storage::Integer(vec![BigInt::zero(); rows * cols]),
            FieldSpec::PrimeField(_) => Storage::Modular(vec![0; rows * cols]),
        };
        ExactMatrix {
            rows,
            cols,
            field,
            data,
        }
    }

    pub fn from_fn(
        field: FieldSpec,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> i64,
    ) -> Self {
        let mut m = Self::zeros(field, rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                let v = f(r, c);
                if v != 0 {
                    m.set(r, c, v);
                }
            }
        }
        m
    }

    /// Builds a matrix from integer rows. Panics if rows are ragged.
    pub fn from_rows(field: FieldSpec, rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        Self::from_fn(field, rows.len(), cols, |r, c| rows[r][c])
    }

    /// Builds a matrix from rational rows. Over GF(p) every denominator must
    /// be invertible.
    pub fn from_rational_rows(field: FieldSpec, rows: &[Vec<BigRational>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::PreconditionFailed("ragged rows".into()));
        }
        let mut m = Self::zeros(field, rows.len(), cols);
        for (r, row) in rows.iter().enumerate() {
            match &mut m.data {
                Storage::Integer(d) => {
                    let lcm = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
                    for (c, x) in row.iter().enumerate() {
                        d[r * cols + c] = x.numer() * (&lcm / x.denom());
                    }
                }
                Storage::Modular(d) => {
                    let p = field.modulus().unwrap();
                    let pb = BigInt::from(p);
                    for (c, x) in row.iter().enumerate() {
                        let num = x.numer().mod_floor(&pb).to_u64().unwrap();
                        let den = x.denom().mod_floor(&pb).to_u64().unwrap();
                        if den == 0 {
                            return Err(Error::PreconditionFailed(format!(
                                "denominator of {x} vanishes in GF({p})"
                            )));
                        }
                        d[r * cols + c] = num * mod_inv(den, p) % p;
                    }
                }
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn set(&mut self, r: usize, c: usize, v: i64) {
        assert!(r < self.rows && c < self.cols);
        let idx = r * self.cols + c;
        match &mut self.data {
            Storage::Integer(d) => d[idx] = BigInt::from(v),
            Storage::Modular(d) => d[idx] = self.field.reduce(v),
        }
    }

    /// Entry as an integer representative (over GF(p), in `0..p`).
    pub fn get(&self, r: usize, c: usize) -> BigInt {
        let idx = r * self.cols + c;
        match &self.data {
            Storage::Integer(d) => d[idx].clone(),
            Storage::Modular(d) => BigInt::from(d[idx]),
        }
    }

    pub fn is_zero_entry(&self, r: usize, c: usize) -> bool {
        let idx = r * self.cols + c;
        match &self.data {
            Storage::Integer(d) => d[idx].is_zero(),
            Storage::Modular(d) => d[idx] == 0,
        }
    }

    pub fn transpose(&self) -> Self {
        let (rows, cols) = (self.rows, self.cols);
        let data = match &self.data {
            Storage::Integer(d) => Storage::Integer(
                (0..rows * cols)
                    .map(|k| d[(k % rows) * cols + k / rows].clone())
                    .collect(),
            ),
            Storage::Modular(d) => Storage::Modular(
                (0..rows * cols)
                    .map(|k| d[(k % rows) * cols + k / rows])
                    .collect(),
            ),
        };
        ExactMatrix {
            rows: cols,
            cols: rows,
            field: self.field,
            data,
        }
    }

    /// Submatrix formed by the given rows, in the given order.
    pub fn select_rows(&self, idx: &[usize]) -> Self {
        let cols = self.cols;
        let data = match &self.data {
            Storage::Integer(d) => Storage::Integer(
                idx.iter()
                    .flat_map(|&r| d[r * cols..(r + 1) * cols].iter().cloned())
                    .collect(),
            ),
            Storage::Modular(d) => Storage::Modular(
                idx.iter()
                    .flat_map(|&r| d[r * cols..(r + 1) * cols].iter().copied())
                    .collect(),
            ),
        };
        ExactMatrix {
            rows: idx.len(),
            cols,
            field: self.field,
            data,
        }
    }

    /// Product `self * other`. Both operands must share a field.
    pub fn mul(&self, other: &ExactMatrix) -> Self {
        assert_eq!(self.field, other.field);
        assert_eq!(self.cols, other.rows);
        let (n, k, m) = (self.rows, self.cols, other.cols);
        let data = match (&self.data, &other.data) {
            (Storage::Integer(a), Storage::Integer(b)) => {
                let mut out = vec![BigInt::zero(); n * m];
                for i in 0..n {
                    for t in 0..k {
                        let x = &a[i * k + t];
                        if x.is_zero() {
                            continue;
                        }
                        for j in 0..m {
                            let y = &b[t * m + j];
                            if !y.is_zero() {
                                out[i * m + j] += x * y;
                            }
                        }
                    }
                }
                Storage::Integer(out)
            }
            (Storage::Modular(a), Storage::Modular(b)) => {
                let p = self.field.modulus().unwrap();
                let mut out = vec![0u64; n * m];
                for i in 0..n {
                    for t in 0..k {
                        let x = a[i * k + t];
                        if x == 0 {
                            continue;
                        }
                        for j in 0..m {
                            out[i * m + j] = (out[i * m + j] + x * b[t * m + j]) % p;
                        }
                    }
                }
                Storage::Modular(out)
            }
            _ => unreachable!("field mismatch"),
        };
        ExactMatrix {
            rows: n,
            cols: m,
            field: self.field,
            data,
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.data {
            Storage::Integer(d) => d.iter().all(Zero::is_zero),
            Storage::Modular(d) => d.iter().all(|&x| x == 0),
        }
    }

    pub fn rank(&self) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        match &self.data {
            Storage::Integer(d) => rank_rational(d, self.rows, self.cols),
            Storage::Modular(d) => rank_modular(d.clone(), self.rows, self.cols, self.field),
        }
    }

    /// Greedy scan in ascending row order: a row is kept iff it is
    /// independent of the rows kept before it.
    pub fn select_independent_rows(&self) -> Vec<usize> {
        match &self.data {
            Storage::Integer(d) => select_rows_rational(d, self.rows, self.cols),
            Storage::Modular(d) => select_rows_modular(d, self.rows, self.cols, self.field),
        }
    }
}

pub fn rank(m: &ExactMatrix) -> usize {
    m.rank()
}

pub fn select_independent_rows(m: &ExactMatrix) -> Vec<usize> {
    m.select_independent_rows()
}

/// Integer types usable for Bareiss elimination; `None` signals overflow.
trait BareissScalar: Clone {
    fn is_nil(&self) -> bool;
    /// `(a*b - c*d) / div`, exact by Sylvester's identity.
    fn step(a: &Self, b: &Self, c: &Self, d: &Self, div: &Self) -> Option<Self>;
}

impl BareissScalar for i128 {
    fn is_nil(&self) -> bool {
        *self == 0
    }
    fn step(a: &Self, b: &Self, c: &Self, d: &Self, div: &Self) -> Option<Self> {
        let x = a.checked_mul(*b)?;
        let y = c.checked_mul(*d)?;
        let z = x.checked_sub(y)?;
        Some(z / div)
    }
}

impl BareissScalar for BigInt {
    fn is_nil(&self) -> bool {
        Zero::is_zero(self)
    }
    fn step(a: &Self, b: &Self, c: &Self, d: &Self, div: &Self) -> Option<Self> {
        Some((a * b - c * d) / div)
    }
}

fn bareiss_rank<T: BareissScalar>(
    mut a: Vec<T>,
    rows: usize,
    cols: usize,
    one: T,
) -> Option<usize> {
    let mut prev = one;
    let mut r = 0;
    for col in 0..cols {
        if r == rows {
            break;
        }
        let Some(piv) = (r..rows).find(|&i| !a[i * cols + col].is_nil()) else {
            continue;
        };
        if piv != r {
            for j in 0..cols {
                a.swap(piv * cols + j, r * cols + j);
            }
        }
        let pv = a[r * cols + col].clone();
        for i in r + 1..rows {
            let lead = a[i * cols + col].clone();
            for j in col + 1..cols {
                let v = T::step(&pv, &a[i * cols + j], &lead, &a[r * cols + j], &prev)?;
                a[i * cols + j] = v;
            }
            a[i * cols + col] = T::step(&pv, &a[i * cols + col], &lead, &a[r * cols + col], &prev)?;
        }
        prev = pv;
        r += 1;
    }
    Some(r)
}

fn rank_rational(d: &[BigInt], rows: usize, cols: usize) -> usize {
    let small: Option<Vec<i128>> = d.iter().map(|x| x.to_i128()).collect();
    if let Some(small) = small {
        if let Some(r) = bareiss_rank(small, rows, cols, 1i128) {
            return r;
        }
    }
    bareiss_rank(d.to_vec(), rows, cols, BigInt::one()).expect("BigInt elimination cannot overflow")
}

fn rank_modular(mut a: Vec<u64>, rows: usize, cols: usize, field: FieldSpec) -> usize {
    let p = field.modulus().unwrap();
    let mut r = 0;
    for col in 0..cols {
        if r == rows {
            break;
        }
        let Some(piv) = (r..rows).find(|&i| a[i * cols + col] != 0) else {
            continue;
        };
        if piv != r {
            for j in 0..cols {
                a.swap(piv * cols + j, r * cols + j);
            }
        }
        let inv = mod_inv(a[r * cols + col], p);
        for j in col..cols {
            a[r * cols + j] = a[r * cols + j] * inv % p;
        }
        for i in r + 1..rows {
            let f = a[i * cols + col];
            if f == 0 {
                continue;
            }
            for j in col..cols {
                let sub = f * a[r * cols + j] % p;
                a[i * cols + j] = (a[i * cols + j] + p - sub) % p;
            }
        }
        r += 1;
    }
    r
}

fn select_rows_modular(d: &[u64], rows: usize, cols: usize, field: FieldSpec) -> Vec<usize> {
    let p = field.modulus().unwrap();
    // Reduced basis rows, each normalized to a leading 1 at its pivot.
    let mut basis: Vec<(usize, Vec<u64>)> = Vec::new();
    let mut keep = Vec::new();
    for r in 0..rows {
        let mut v = d[r * cols..(r + 1) * cols].to_vec();
        for (pc, b) in &basis {
            let f = v[*pc];
            if f != 0 {
                for j in 0..cols {
                    v[j] = (v[j] + p - f * b[j] % p) % p;
                }
            }
        }
        if let Some(pc) = v.iter().position(|&x| x != 0) {
            let inv = mod_inv(v[pc], p);
            for x in v.iter_mut() {
                *x = *x * inv % p;
            }
            basis.push((pc, v));
            keep.push(r);
        }
    }
    keep
}

fn select_rows_rational(d: &[BigInt], rows: usize, cols: usize) -> Vec<usize> {
    let mut basis: Vec<(usize, Vec<BigInt>)> = Vec::new();
    let mut keep = Vec::new();
    for r in 0..rows {
        let mut v = d[r * cols..(r + 1) * cols].to_vec();
        for (pc, b) in &basis {
            if v[*pc].is_zero() {
                continue;
            }
            let f = v[*pc].clone();
            let bp = &b[*pc];
            for j in 0..cols {
                v[j] = bp * &v[j] - &f * &b[j];
            }
            normalize_content(&mut v);
        }
        if let Some(pc) = v.iter().position(|x| !x.is_zero()) {
            if v[pc].is_negative() {
                for x in v.iter_mut() {
                    *x = -x.clone();
                }
            }
            basis.push((pc, v));
            keep.push(r);
        }
    }
    keep
}

fn normalize_content(v: &mut [BigInt]) {
    let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in v.iter_mut() {
            *x = &*x / &g;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: FieldSpec = FieldSpec::Rationals;

    #[test]
    fn identity_over_gf2_has_full_rank() {
        let m = ExactMatrix::from_rows(FieldSpec::prime(2).unwrap(), &[vec![1, 0], vec![0, 1]]);
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn empty_matrix_has_rank_zero() {
        assert_eq!(ExactMatrix::zeros(Q, 0, 5).rank(), 0);
        assert_eq!(ExactMatrix::zeros(Q, 3, 0).rank(), 0);
        assert!(ExactMatrix::zeros(Q, 0, 5)
            .select_independent_rows()
            .is_empty());
    }

    #[test]
    fn five_cycle_incidence_rank() {
        // Edge-vertex incidence of the 5-cycle: rank = 5 vertices - 1 component.
        let m = ExactMatrix::from_fn(Q, 5, 5, |e, v| {
            if v == e {
                -1
            } else if v == (e + 1) % 5 {
                1
            } else {
                0
            }
        });
        assert_eq!(m.rank(), 4);
    }

    #[test]
    fn row_selection_examples() {
        let m = ExactMatrix::from_rows(Q, &[vec![1, 0], vec![0, 1], vec![1, 1]]);
        assert_eq!(m.select_independent_rows(), vec![0, 1]);
        let m = ExactMatrix::from_rows(Q, &[vec![0, 0], vec![1, 1]]);
        assert_eq!(m.select_independent_rows(), vec![1]);
        let m = ExactMatrix::from_rows(Q, &[vec![1, 1], vec![2, 2], vec![1, 0]]);
        assert_eq!(m.select_independent_rows(), vec![0, 2]);
    }

    #[test]
    fn characteristic_matters() {
        // det = 2: singular mod 2 only.
        let rows = [vec![1, 1], vec![1, -1]];
        assert_eq!(ExactMatrix::from_rows(Q, &rows).rank(), 2);
        assert_eq!(
            ExactMatrix::from_rows(FieldSpec::prime(2).unwrap(), &rows).rank(),
            1
        );
        assert_eq!(
            ExactMatrix::from_rows(FieldSpec::prime(3).unwrap(), &rows).rank(),
            2
        );
    }

    #[test]
    fn bigint_fallback_matches_modular() {
        // Entries near 2^62 overflow i128 products after a couple of steps.
        let big = 1i64 << 62;
        let rows = vec![
            vec![big, big - 1, 3, 7],
            vec![big - 5, big, 11, 13],
            vec![2 * (big / 4), big / 3, big / 5, 1],
            vec![big - 1, big - 7, big - 9, big - 11],
        ];
        let r = ExactMatrix::from_rows(Q, &rows).rank();
        let rp = ExactMatrix::from_rows(FieldSpec::prime(1_000_003).unwrap(), &rows).rank();
        assert_eq!(r, 4);
        assert_eq!(rp, 4);
    }

    #[test]
    fn rational_rows_are_scaled() {
        let half = BigRational::new(1.into(), 2.into());
        let one = BigRational::one();
        let rows = vec![
            vec![half.clone(), one.clone()],
            vec![one.clone(), one.clone() + one.clone()],
        ];
        let m = ExactMatrix::from_rational_rows(Q, &rows).unwrap();
        assert_eq!(m.rank(), 1);
        let m3 = ExactMatrix::from_rational_rows(FieldSpec::prime(3).unwrap(), &rows).unwrap();
        assert_eq!(m3.rank(), 1);
        assert!(ExactMatrix::from_rational_rows(FieldSpec::prime(2).unwrap(), &rows).is_err());
    }

    #[test]
    fn field_parsing() {
        assert_eq!("q".parse::<FieldSpec>().unwrap(), Q);
        assert_eq!(
            "gf:32003".parse::<FieldSpec>().unwrap(),
            FieldSpec::PrimeField(32003)
        );
        assert!("gf:4".parse::<FieldSpec>().is_err());
        assert!("gf:1".parse::<FieldSpec>().is_err());
        assert!("r".parse::<FieldSpec>().is_err());
        assert_eq!(FieldSpec::PrimeField(7).to_string(), "gf:7");
    }
}
