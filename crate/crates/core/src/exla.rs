//! Exact linear algebra over sparse rows: reduced row-echelon form,
//! subspace membership and normal forms, over ℚ or a prime field.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExlaError {
    #[error("basis mismatch: expected handle {expected}, found {found}")]
    BasisMismatch { expected: u64, found: u64 },
    #[error("coordinate {index} outside a basis of size {dim}")]
    OutOfRange { index: usize, dim: usize },
}

/// A field element usable by the elimination routines.
pub trait Scalar: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse; the caller guarantees `self` is non-zero.
    fn inv(&self) -> Self;

    /// Reduced row-echelon rows (leading coefficient 1) spanning the same space,
    /// sorted by pivot column.
    fn echelonize(rows: Vec<SparseRow<Self>>) -> Vec<SparseRow<Self>> {
        field_echelonize(rows)
    }
}

pub type SparseRow<S> = BTreeMap<usize, S>;

pub type Rational = BigRational;

impl Scalar for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Self {
        self.recip()
    }
    fn echelonize(rows: Vec<SparseRow<Self>>) -> Vec<SparseRow<Self>> {
        fraction_free_echelonize(rows)
    }
}

/// Element of the prime field F_P.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp<const P: u64>(u64);

pub const DEFAULT_PRIME: u64 = 32003;
pub type F32003 = Fp<DEFAULT_PRIME>;

impl<const P: u64> Fp<P> {
    pub fn new(v: i64) -> Self {
        Fp(v.rem_euclid(P as i64) as u64)
    }

    pub fn value(self) -> u64 {
        self.0
    }

    fn pow(self, mut e: u64) -> Self {
        let (mut base, mut acc) = (self.0, 1u64);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % P;
            }
            base = base * base % P;
            e >>= 1;
        }
        Fp(acc)
    }
}

impl<const P: u64> fmt::Display for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u64> Scalar for Fp<P> {
    fn zero() -> Self {
        Fp(0)
    }
    fn one() -> Self {
        Fp(1 % P)
    }
    fn from_i64(v: i64) -> Self {
        Fp::new(v)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
    fn add(&self, o: &Self) -> Self {
        Fp((self.0 + o.0) % P)
    }
    fn sub(&self, o: &Self) -> Self {
        Fp((self.0 + P - o.0) % P)
    }
    fn mul(&self, o: &Self) -> Self {
        Fp(self.0 * o.0 % P)
    }
    fn neg(&self) -> Self {
        Fp((P - self.0) % P)
    }
    fn inv(&self) -> Self {
        debug_assert!(self.0 != 0);
        self.pow(P - 2)
    }
}

/// Identity of an ordered basis, plus its size.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BasisHandle {
    pub id: u64,
    pub dim: usize,
}

/// Sparse coordinate vector in a fixed basis; never stores explicit zeros.
#[derive(Debug, Clone, PartialEq)]
pub struct VectorInBasis<S> {
    basis: BasisHandle,
    coords: SparseRow<S>,
}

impl<S: Scalar> VectorInBasis<S> {
    pub fn zero(basis: BasisHandle) -> Self {
        VectorInBasis {
            basis,
            coords: BTreeMap::new(),
        }
    }

    pub fn unit(basis: BasisHandle, index: usize) -> Result<Self, ExlaError> {
        Self::from_coords(basis, [(index, S::one())])
    }

    /// Sums repeated indices and drops zeros.
    pub fn from_coords(
        basis: BasisHandle,
        coords: impl IntoIterator<Item = (usize, S)>,
    ) -> Result<Self, ExlaError> {
        let mut v = Self::zero(basis);
        for (i, c) in coords {
            if i >= basis.dim {
                return Err(ExlaError::OutOfRange {
                    index: i,
                    dim: basis.dim,
                });
            }
            v.add_at(i, &c);
        }
        Ok(v)
    }

    fn add_at(&mut self, i: usize, c: &S) {
        if c.is_zero() {
            return;
        }
        let sum = match self.coords.get(&i) {
            Some(old) => old.add(c),
            None => c.clone(),
        };
        if sum.is_zero() {
            self.coords.remove(&i);
        } else {
            self.coords.insert(i, sum);
        }
    }

    pub fn basis(&self) -> BasisHandle {
        self.basis
    }

    pub fn get(&self, i: usize) -> S {
        self.coords.get(&i).cloned().unwrap_or_else(S::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.coords.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &S)> {
        self.coords.iter().map(|(&i, c)| (i, c))
    }

    pub fn coords(&self) -> &SparseRow<S> {
        &self.coords
    }

    fn check(&self, other: &Self) -> Result<(), ExlaError> {
        if self.basis != other.basis {
            return Err(ExlaError::BasisMismatch {
                expected: self.basis.id,
                found: other.basis.id,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, ExlaError> {
        self.check(other)?;
        let mut out = self.clone();
        for (i, c) in other.iter() {
            out.add_at(i, c);
        }
        Ok(out)
    }

    pub fn scale(&self, k: &S) -> Self {
        let mut out = Self::zero(self.basis);
        if !k.is_zero() {
            out.coords = self.coords.iter().map(|(&i, c)| (i, c.mul(k))).collect();
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(&S::one().neg())
    }
}

/// Reduced row-echelon form of a set of rows in one basis.
#[derive(Debug, Clone, PartialEq)]
pub struct Echelon<S> {
    basis: BasisHandle,
    rows: Vec<VectorInBasis<S>>,
    pivots: Vec<usize>,
}

impl<S: Scalar> Echelon<S> {
    pub fn empty(basis: BasisHandle) -> Self {
        Echelon {
            basis,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn basis(&self) -> BasisHandle {
        self.basis
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn rows(&self) -> &[VectorInBasis<S>] {
        &self.rows
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.pivots.binary_search(&col).is_ok()
    }

    /// Unique reduced representative of `v` modulo the row space.
    pub fn normal_form(&self, v: &VectorInBasis<S>) -> Result<VectorInBasis<S>, ExlaError> {
        if v.basis != self.basis {
            return Err(ExlaError::BasisMismatch {
                expected: self.basis.id,
                found: v.basis.id,
            });
        }
        let mut coords = v.coords.clone();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if let Some(c) = coords.get(&p).cloned() {
                axpy(&mut coords, &c.neg(), &row.coords);
            }
        }
        Ok(VectorInBasis {
            basis: self.basis,
            coords,
        })
    }
}

/// `target += k * row`, dropping cancelled entries.
fn axpy<S: Scalar>(target: &mut SparseRow<S>, k: &S, row: &SparseRow<S>) {
    for (&i, c) in row {
        let add = c.mul(k);
        match target.get_mut(&i) {
            Some(old) => {
                *old = old.add(&add);
                if old.is_zero() {
                    target.remove(&i);
                }
            }
            None => {
                if !add.is_zero() {
                    target.insert(i, add);
                }
            }
        }
    }
}

/// Gauss–Jordan over any field, inserting rows one at a time.
fn field_echelonize<S: Scalar>(rows: Vec<SparseRow<S>>) -> Vec<SparseRow<S>> {
    let mut reduced: BTreeMap<usize, SparseRow<S>> = BTreeMap::new();
    for mut r in rows {
        let hits: Vec<usize> = r.keys().copied().filter(|c| reduced.contains_key(c)).collect();
        for c in hits {
            if let Some(k) = r.get(&c).cloned() {
                axpy(&mut r, &k.neg(), &reduced[&c]);
            }
        }
        let Some((&lead, lc)) = r.iter().next() else { continue };
        let inv = lc.inv();
        for v in r.values_mut() {
            *v = v.mul(&inv);
        }
        for row in reduced.values_mut() {
            if let Some(k) = row.get(&lead).cloned() {
                axpy(row, &k.neg(), &r);
            }
        }
        reduced.insert(lead, r);
    }
    reduced.into_values().collect()
}

type IntRow = BTreeMap<usize, BigInt>;

fn make_primitive(row: &mut IntRow) {
    let mut g = BigInt::zero();
    for v in row.values() {
        g = g.gcd(v);
        if g.is_one() {
            break;
        }
    }
    let lead_negative = row.values().next().map_or(false, |v| v.is_negative());
    if lead_negative {
        g = -g;
    }
    if !g.is_zero() && !g.is_one() {
        for v in row.values_mut() {
            *v = &*v / &g;
        }
    }
}

/// `target = a * target - b * row`, then made primitive.
fn cross_eliminate(target: &mut IntRow, a: &BigInt, b: &BigInt, row: &IntRow) {
    if !a.is_one() {
        for v in target.values_mut() {
            *v *= a;
        }
    }
    for (&i, c) in row {
        let sub = c * b;
        let e = target.entry(i).or_insert_with(BigInt::zero);
        *e -= sub;
        if e.is_zero() {
            target.remove(&i);
        }
    }
    make_primitive(target);
}

/// Fraction-free elimination: rows are cleared to primitive integer rows,
/// combined by cross-multiplication, and only divided by their pivots at the end.
fn fraction_free_echelonize(rows: Vec<SparseRow<BigRational>>) -> Vec<SparseRow<BigRational>> {
    let mut reduced: BTreeMap<usize, IntRow> = BTreeMap::new();
    for r in rows {
        let lcm = r
            .values()
            .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
        let mut ir: IntRow = r
            .iter()
            .map(|(&i, v)| (i, v.numer() * (&lcm / v.denom())))
            .filter(|(_, v)| !v.is_zero())
            .collect();
        make_primitive(&mut ir);
        let hits: Vec<usize> = ir.keys().copied().filter(|c| reduced.contains_key(c)).collect();
        for c in hits {
            if let Some(b) = ir.get(&c).cloned() {
                let row = &reduced[&c];
                let a = row[&c].clone();
                cross_eliminate(&mut ir, &a, &b, row);
            }
        }
        let Some((&lead, lc)) = ir.iter().next() else { continue };
        let a = lc.clone();
        for row in reduced.values_mut() {
            if let Some(b) = row.get(&lead).cloned() {
                cross_eliminate(row, &a, &b, &ir);
            }
        }
        reduced.insert(lead, ir);
    }
    reduced
        .into_iter()
        .map(|(p, row)| {
            let lead = row[&p].clone();
            row.into_iter()
                .map(|(i, v)| (i, BigRational::new(v, lead.clone())))
                .collect()
        })
        .collect()
}

/// Reduced row-echelon form of `rows`. The result is unique for the row space;
/// pivots are the leading columns, ascending.
pub fn row_reduce<S: Scalar>(
    basis: BasisHandle,
    rows: &[VectorInBasis<S>],
) -> Result<Echelon<S>, ExlaError> {
    for r in rows {
        if r.basis != basis {
            return Err(ExlaError::BasisMismatch {
                expected: basis.id,
                found: r.basis.id,
            });
        }
    }
    let reduced = S::echelonize(rows.iter().map(|r| r.coords.clone()).collect());
    let pivots = reduced
        .iter()
        .map(|r| *r.keys().next().expect("echelon rows are non-zero"))
        .collect();
    Ok(Echelon {
        basis,
        rows: reduced
            .into_iter()
            .map(|coords| VectorInBasis { basis, coords })
            .collect(),
        pivots,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub enum Membership<S> {
    Inside,
    Outside { residual: VectorInBasis<S> },
}

impl<S> Membership<S> {
    pub fn is_inside(&self) -> bool {
        matches!(self, Membership::Inside)
    }
}

/// Whether `v` lies in the row space of `span`; otherwise its reduced residual.
pub fn membership<S: Scalar>(
    v: &VectorInBasis<S>,
    span: &Echelon<S>,
) -> Result<Membership<S>, ExlaError> {
    let residual = span.normal_form(v)?;
    Ok(if residual.is_zero() {
        Membership::Inside
    } else {
        Membership::Outside { residual }
    })
}

/// Converts an integer-entry rational vector to F_P.
pub fn to_prime_field<const P: u64>(v: &VectorInBasis<BigRational>) -> VectorInBasis<Fp<P>> {
    let coords = v
        .iter()
        .map(|(i, c)| {
            let modulus = BigInt::from(P);
            let num = (c.numer() % &modulus + &modulus) % &modulus;
            let den = (c.denom() % &modulus + &modulus) % &modulus;
            let num: u64 = num.try_into().expect("reduced below P");
            let den: u64 = den.try_into().expect("reduced below P");
            (i, Fp::<P>(num).mul(&Fp::<P>(den).inv()))
        })
        .filter(|(_, c)| !c.is_zero())
        .collect();
    VectorInBasis {
        basis: v.basis,
        coords,
    }
}
