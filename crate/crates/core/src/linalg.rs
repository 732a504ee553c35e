//! Exact dense linear algebra over a prime field or the rationals.
//!
//! Entries are stored as reduced residues (`u64`, modulus below 2^32) or as
//! normalized `BigRational`s. Elimination routines are written once against
//! a small arithmetic trait and dispatched per storage variant; rank over
//! 𝔽₂ additionally has a bit-packed path because it dominates the test
//! suite's running time.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Coefficient field.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Field {
    /// 𝔽_p, p prime and below 2^32.
    Prime(u64),
    /// ℚ.
    Rational,
}

impl Field {
    pub const F2: Field = Field::Prime(2);

    pub fn prime(p: u64) -> Result<Self> {
        if p >= 1 << 32 || !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not a prime below 2^32")));
        }
        Ok(Field::Prime(p))
    }

    pub fn zero(&self) -> Scalar {
        match self {
            Field::Prime(_) => Scalar::Mod(0),
            Field::Rational => Scalar::Rat(BigRational::zero()),
        }
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, k: i64) -> Scalar {
        match self {
            Field::Prime(p) => Scalar::Mod(k.rem_euclid(*p as i64) as u64),
            Field::Rational => Scalar::Rat(BigRational::from_integer(BigInt::from(k))),
        }
    }

    /// Interprets `num/den` in this field; fails when `den` vanishes.
    pub fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Result<Scalar> {
        match self {
            Field::Prime(p) => {
                let pb = BigInt::from(*p);
                let n = reduce_big(num, &pb);
                let d = reduce_big(den, &pb);
                if d == 0 {
                    return Err(Error::InvalidField(format!(
                        "denominator {den} vanishes in {self}"
                    )));
                }
                let ar = ModP(*p);
                Ok(Scalar::Mod(ar.mul(&n, &ar.inv(&d))))
            }
            Field::Rational => {
                if den.is_zero() {
                    return Err(Error::InvalidField("zero denominator".into()));
                }
                Ok(Scalar::Rat(BigRational::new(num.clone(), den.clone())))
            }
        }
    }

    /// Converts a scalar of any field into this one when that is meaningful.
    pub fn coerce(&self, s: &Scalar) -> Result<Scalar> {
        match s {
            Scalar::Mod(v) => Ok(self.from_i64(*v as i64)),
            Scalar::Rat(r) => self.from_ratio(r.numer(), r.denom()),
        }
    }
}

fn reduce_big(x: &BigInt, p: &BigInt) -> u64 {
    let r = ((x % p) + p) % p;
    u64::try_from(r).expect("residue fits in u64")
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut i = 2u64;
    while i * i <= p {
        if p % i == 0 {
            return false;
        }
        i += 1;
    }
    true
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Prime(2) => write!(f, "F2"),
            Field::Prime(p) => write!(f, "Fp:{p}"),
            Field::Rational => write!(f, "Q"),
        }
    }
}

impl FromStr for Field {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "F2" => Ok(Field::F2),
            "Q" => Ok(Field::Rational),
            _ => match s.strip_prefix("Fp:") {
                Some(p) => {
                    let p: u64 = p
                        .parse()
                        .map_err(|_| Error::InvalidField(format!("bad modulus in `{s}`")))?;
                    Field::prime(p)
                }
                None => Err(Error::InvalidField(format!("`{s}` (expected F2, Fp:<p> or Q)"))),
            },
        }
    }
}

/// A field element.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Mod(u64),
    Rat(BigRational),
}

impl Scalar {
    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Mod(v) => *v == 0,
            Scalar::Rat(r) => r.is_zero(),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Mod(v) => write!(f, "{v}"),
            Scalar::Rat(r) if r.denom().is_one() => write!(f, "{}", r.numer()),
            Scalar::Rat(r) => write!(f, "{}/{}", r.numer(), r.denom()),
        }
    }
}

trait Arith {
    type E: Clone + PartialEq;
    fn zero(&self) -> Self::E;
    fn one(&self) -> Self::E;
    fn is_zero(&self, a: &Self::E) -> bool;
    fn add(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn sub(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn neg(&self, a: &Self::E) -> Self::E;
    fn inv(&self, a: &Self::E) -> Self::E;
    fn scalar(&self, a: &Self::E) -> Scalar;
}

#[derive(Clone, Copy)]
struct ModP(u64);

impl Arith for ModP {
    type E = u64;
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.0
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.0
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.0 - b) % self.0
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        (a * b) % self.0
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.0 - a) % self.0
    }
    fn inv(&self, a: &u64) -> u64 {
        // Fermat: a^(p-2)
        let mut base = *a;
        let mut e = self.0 - 2;
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % self.0;
            }
            base = base * base % self.0;
            e >>= 1;
        }
        acc
    }
    fn scalar(&self, a: &u64) -> Scalar {
        Scalar::Mod(*a)
    }
}

#[derive(Clone, Copy)]
struct Rat;

impl Arith for Rat {
    type E = BigRational;
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        a.recip()
    }
    fn scalar(&self, a: &BigRational) -> Scalar {
        Scalar::Rat(a.clone())
    }
}

#[derive(Clone, PartialEq, Eq)]
enum Data {
    Mod(Vec<u64>),
    Rat(Vec<BigRational>),
}

/// Dense row-major matrix over a [`Field`].
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Data,
}

macro_rules! dispatch {
    ($m:expr, |$ar:ident, $v:ident| $body:expr) => {
        match (&$m.field, &$m.data) {
            (Field::Prime(p), Data::Mod($v)) => {
                let $ar = ModP(*p);
                $body
            }
            (Field::Rational, Data::Rat($v)) => {
                let $ar = Rat;
                $body
            }
            _ => unreachable!("matrix storage does not match its field"),
        }
    };
}

impl Matrix {
    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Self {
        let n = rows * cols;
        let data = match field {
            Field::Prime(_) => Data::Mod(vec![0; n]),
            Field::Rational => Data::Rat(vec![BigRational::zero(); n]),
        };
        Matrix { field: field.clone(), rows, cols, data }
    }

    pub fn identity(field: &Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        let one = field.one();
        for i in 0..n {
            m.set(i, i, one.clone());
        }
        m
    }

    /// Builds a matrix from integer entries in row-major order.
    pub fn from_i64(field: &Field, rows: usize, cols: usize, entries: &[i64]) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count must equal rows * cols");
        let mut m = Self::zeros(field, rows, cols);
        for (k, &e) in entries.iter().enumerate() {
            if e != 0 {
                m.set(k / cols, k % cols, field.from_i64(e));
            }
        }
        m
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, i: usize, j: usize) -> Scalar {
        let k = i * self.cols + j;
        match &self.data {
            Data::Mod(v) => Scalar::Mod(v[k]),
            Data::Rat(v) => Scalar::Rat(v[k].clone()),
        }
    }

    pub fn set(&mut self, i: usize, j: usize, s: Scalar) {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of range");
        let k = i * self.cols + j;
        match (&mut self.data, s) {
            (Data::Mod(v), Scalar::Mod(x)) => v[k] = x,
            (Data::Rat(v), Scalar::Rat(x)) => v[k] = x,
            _ => panic!("scalar does not belong to {}", self.field),
        }
    }

    /// Sets entry `(i, j)` to the integer `k` read in this field.
    pub fn set_i64(&mut self, i: usize, j: usize, k: i64) {
        let s = self.field.from_i64(k);
        self.set(i, j, s);
    }

    pub fn is_zero(&self) -> bool {
        dispatch!(self, |ar, v| v.iter().all(|x| ar.is_zero(x)))
    }

    /// Nonzero entries in row-major order.
    pub fn nonzero_entries(&self) -> Vec<(usize, usize, Scalar)> {
        let mut out = Vec::new();
        for i in 0..self.rows {
            for j in 0..self.cols {
                let s = self.get(i, j);
                if !s.is_zero() {
                    out.push((i, j, s));
                }
            }
        }
        out
    }

    fn check_field(&self, other: &Matrix) {
        assert_eq!(self.field, other.field, "matrix field mismatch");
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        self.check_field(other);
        assert_eq!(
            self.cols, other.rows,
            "cannot multiply {}x{} by {}x{}",
            self.rows, self.cols, other.rows, other.cols
        );
        let (n, m, l) = (self.rows, self.cols, other.cols);
        let data = match (&self.field, &self.data, &other.data) {
            (Field::Prime(p), Data::Mod(a), Data::Mod(b)) => Data::Mod(mul_mod(*p, a, b, n, m, l)),
            (Field::Rational, Data::Rat(a), Data::Rat(b)) => Data::Rat(mul_generic(&Rat, a, b, n, m, l)),
            _ => unreachable!(),
        };
        Matrix { field: self.field.clone(), rows: n, cols: l, data }
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        self.zip(other, false)
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        self.zip(other, true)
    }

    fn zip(&self, other: &Matrix, subtract: bool) -> Matrix {
        self.check_field(other);
        assert_eq!(self.shape(), other.shape(), "shape mismatch in matrix sum");
        let data = match (&self.field, &self.data, &other.data) {
            (Field::Prime(p), Data::Mod(a), Data::Mod(b)) => {
                let ar = ModP(*p);
                Data::Mod(
                    a.iter()
                        .zip(b)
                        .map(|(x, y)| if subtract { ar.sub(x, y) } else { ar.add(x, y) })
                        .collect(),
                )
            }
            (Field::Rational, Data::Rat(a), Data::Rat(b)) => Data::Rat(
                a.iter()
                    .zip(b)
                    .map(|(x, y)| if subtract { x - y } else { x + y })
                    .collect(),
            ),
            _ => unreachable!(),
        };
        Matrix { field: self.field.clone(), rows: self.rows, cols: self.cols, data }
    }

    pub fn neg(&self) -> Matrix {
        self.scale_i64(-1)
    }

    pub fn scale_i64(&self, k: i64) -> Matrix {
        let s = self.field.from_i64(k);
        self.scale(&s)
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        let data = match (&self.field, &self.data, s) {
            (Field::Prime(p), Data::Mod(a), Scalar::Mod(k)) => {
                let ar = ModP(*p);
                Data::Mod(a.iter().map(|x| ar.mul(x, k)).collect())
            }
            (Field::Rational, Data::Rat(a), Scalar::Rat(k)) => Data::Rat(a.iter().map(|x| x * k).collect()),
            _ => panic!("scalar does not belong to {}", self.field),
        };
        Matrix { field: self.field.clone(), rows: self.rows, cols: self.cols, data }
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let s = self.get(i, j);
                if !s.is_zero() {
                    t.set(j, i, s);
                }
            }
        }
        t
    }

    /// Kronecker product; row index `i*b.rows + k`, column index `j*b.cols + l`.
    pub fn kron(&self, b: &Matrix) -> Matrix {
        self.check_field(b);
        let mut out = Matrix::zeros(&self.field, self.rows * b.rows, self.cols * b.cols);
        let bnz = b.nonzero_entries();
        for (i, j, a) in self.nonzero_entries() {
            for (k, l, x) in &bnz {
                let v = scalar_mul(&self.field, &a, x);
                out.set(i * b.rows + k, j * b.cols + l, v);
            }
        }
        out
    }

    /// Copies `block` into `self` with its top-left corner at `(r0, c0)`.
    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Matrix) {
        self.check_field(block);
        assert!(r0 + block.rows <= self.rows && c0 + block.cols <= self.cols, "block out of range");
        match (&mut self.data, &block.data) {
            (Data::Mod(dst), Data::Mod(src)) => {
                for i in 0..block.rows {
                    let d0 = (r0 + i) * self.cols + c0;
                    dst[d0..d0 + block.cols].copy_from_slice(&src[i * block.cols..(i + 1) * block.cols]);
                }
            }
            (Data::Rat(dst), Data::Rat(src)) => {
                for i in 0..block.rows {
                    let d0 = (r0 + i) * self.cols + c0;
                    dst[d0..d0 + block.cols].clone_from_slice(&src[i * block.cols..(i + 1) * block.cols]);
                }
            }
            _ => unreachable!(),
        }
    }

    /// Adds `block` into `self` at `(r0, c0)`.
    pub fn add_block(&mut self, r0: usize, c0: usize, block: &Matrix) {
        self.check_field(block);
        assert!(r0 + block.rows <= self.rows && c0 + block.cols <= self.cols, "block out of range");
        let cols = self.cols;
        match (&self.field, &mut self.data, &block.data) {
            (Field::Prime(p), Data::Mod(dst), Data::Mod(src)) => {
                for i in 0..block.rows {
                    for j in 0..block.cols {
                        let x = src[i * block.cols + j];
                        if x != 0 {
                            let k = (r0 + i) * cols + c0 + j;
                            dst[k] = (dst[k] + x) % p;
                        }
                    }
                }
            }
            (Field::Rational, Data::Rat(dst), Data::Rat(src)) => {
                for i in 0..block.rows {
                    for j in 0..block.cols {
                        let x = &src[i * block.cols + j];
                        if !x.is_zero() {
                            let k = (r0 + i) * cols + c0 + j;
                            dst[k] = &dst[k] + x;
                        }
                    }
                }
            }
            _ => unreachable!(),
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Matrix {
        assert!(r0 + rows <= self.rows && c0 + cols <= self.cols, "block out of range");
        let mut out = Matrix::zeros(&self.field, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                let s = self.get(r0 + i, c0 + j);
                if !s.is_zero() {
                    out.set(i, j, s);
                }
            }
        }
        out
    }

    pub fn rank(&self) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        match (&self.field, &self.data) {
            (Field::Prime(2), Data::Mod(v)) => rank_f2(v, self.rows, self.cols),
            _ => dispatch!(self, |ar, v| {
                let mut work = v.clone();
                row_reduce(&ar, self.rows, self.cols, &mut work).len()
            }),
        }
    }

    /// Basis of the right null space, as the columns of the returned matrix.
    pub fn nullspace(&self) -> Matrix {
        let basis = dispatch!(self, |ar, v| {
            let mut work = v.clone();
            let pivots = row_reduce(&ar, self.rows, self.cols, &mut work);
            let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
            let mut cols_out: Vec<Vec<Scalar>> = Vec::with_capacity(free.len());
            for &f in &free {
                let mut vec = vec![ar.scalar(&ar.zero()); self.cols];
                vec[f] = ar.scalar(&ar.one());
                for (r, &pc) in pivots.iter().enumerate() {
                    let x = &work[r * self.cols + f];
                    if !ar.is_zero(x) {
                        vec[pc] = ar.scalar(&ar.neg(x));
                    }
                }
                cols_out.push(vec);
            }
            cols_out
        });
        let mut out = Matrix::zeros(&self.field, self.cols, basis.len());
        for (j, col) in basis.into_iter().enumerate() {
            for (i, s) in col.into_iter().enumerate() {
                if !s.is_zero() {
                    out.set(i, j, s);
                }
            }
        }
        out
    }

    /// Inverse of a square matrix, if it is invertible.
    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(&self.field, n, 2 * n);
        aug.set_block(0, 0, self);
        aug.set_block(0, n, &Matrix::identity(&self.field, n));
        let pivots = match (&self.field, &mut aug.data) {
            (Field::Prime(p), Data::Mod(v)) => row_reduce(&ModP(*p), n, 2 * n, v),
            (Field::Rational, Data::Rat(v)) => row_reduce(&Rat, n, 2 * n, v),
            _ => unreachable!(),
        };
        if pivots.len() < n || pivots.iter().enumerate().any(|(i, &c)| c != i) {
            return None;
        }
        Some(aug.block(0, n, n, n))
    }

    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows, "hstack row mismatch");
        let mut out = Matrix::zeros(&self.field, self.rows, self.cols + other.cols);
        out.set_block(0, 0, self);
        out.set_block(0, self.cols, other);
        out
    }

    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols, "vstack column mismatch");
        let mut out = Matrix::zeros(&self.field, self.rows + other.rows, self.cols);
        out.set_block(0, 0, self);
        out.set_block(self.rows, 0, other);
        out
    }

    /// Re-reads every entry in another field.
    pub fn coerce(&self, field: &Field) -> Result<Matrix> {
        let mut out = Matrix::zeros(field, self.rows, self.cols);
        for (i, j, s) in self.nonzero_entries() {
            out.set(i, j, field.coerce(&s)?);
        }
        Ok(out)
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix[{}x{} over {}]", self.rows, self.cols, self.field)?;
        for i in 0..self.rows {
            write!(f, "\n  [")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            write!(f, "]")?;
        }
        Ok(())
    }
}

pub(crate) fn scalar_mul(field: &Field, a: &Scalar, b: &Scalar) -> Scalar {
    match (field, a, b) {
        (Field::Prime(p), Scalar::Mod(x), Scalar::Mod(y)) => Scalar::Mod(x * y % p),
        (Field::Rational, Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x * y),
        _ => panic!("scalar does not belong to {field}"),
    }
}

fn mul_mod(p: u64, a: &[u64], b: &[u64], n: usize, m: usize, l: usize) -> Vec<u64> {
    let mut out = vec![0u64; n * l];
    for i in 0..n {
        let row = &mut out[i * l..(i + 1) * l];
        for k in 0..m {
            let x = a[i * m + k];
            if x == 0 {
                continue;
            }
            let brow = &b[k * l..(k + 1) * l];
            for (o, y) in row.iter_mut().zip(brow) {
                if *y != 0 {
                    *o = (*o + x * y) % p;
                }
            }
        }
    }
    out
}

fn mul_generic<A: Arith>(ar: &A, a: &[A::E], b: &[A::E], n: usize, m: usize, l: usize) -> Vec<A::E> {
    let mut out = vec![ar.zero(); n * l];
    for i in 0..n {
        for k in 0..m {
            let x = &a[i * m + k];
            if ar.is_zero(x) {
                continue;
            }
            for j in 0..l {
                let y = &b[k * l + j];
                if !ar.is_zero(y) {
                    out[i * l + j] = ar.add(&out[i * l + j], &ar.mul(x, y));
                }
            }
        }
    }
    out
}

/// Reduced row echelon form in place; returns pivot columns by row.
fn row_reduce<A: Arith>(ar: &A, rows: usize, cols: usize, a: &mut [A::E]) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| !ar.is_zero(&a[i * cols + c])) else {
            continue;
        };
        if pr != r {
            for j in 0..cols {
                a.swap(pr * cols + j, r * cols + j);
            }
        }
        let inv = ar.inv(&a[r * cols + c]);
        for j in c..cols {
            a[r * cols + j] = ar.mul(&a[r * cols + j], &inv);
        }
        for i in 0..rows {
            if i == r {
                continue;
            }
            let f = a[i * cols + c].clone();
            if ar.is_zero(&f) {
                continue;
            }
            for j in c..cols {
                let t = ar.mul(&f, &a[r * cols + j]);
                if !ar.is_zero(&t) {
                    a[i * cols + j] = ar.sub(&a[i * cols + j], &t);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

fn rank_f2(v: &[u64], rows: usize, cols: usize) -> usize {
    let words = cols.div_ceil(64);
    let mut packed: Vec<Vec<u64>> = (0..rows)
        .map(|i| {
            let mut w = vec![0u64; words];
            for j in 0..cols {
                if v[i * cols + j] & 1 == 1 {
                    w[j / 64] |= 1 << (j % 64);
                }
            }
            w
        })
        .collect();
    let mut rank = 0;
    for c in 0..cols {
        let (wi, bit) = (c / 64, 1u64 << (c % 64));
        let Some(pr) = (rank..rows).find(|&i| packed[i][wi] & bit != 0) else {
            continue;
        };
        packed.swap(rank, pr);
        let pivot = packed[rank].clone();
        for row in packed.iter_mut().skip(rank + 1) {
            if row[wi] & bit != 0 {
                for (x, y) in row.iter_mut().zip(&pivot).skip(wi) {
                    *x ^= y;
                }
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}
