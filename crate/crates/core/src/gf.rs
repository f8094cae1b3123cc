//! Exact arithmetic in GF(q), q = p^n.
//!
//! Elements are polynomials over Z_p of degree < n, reduced modulo the
//! lexicographically smallest monic irreducible of degree n. Every element is
//! stored as its *rank*: the position of its coefficient vector
//! `[c_0, c_1, .., c_{n-1}]` in lexicographic order (low degree first). With
//! that encoding the derived ordering of [`FieldElement`] is exactly the
//! element order used for every deterministic choice downstream.

use std::fmt;

use thiserror::Error;

/// Largest supported field order.
pub const MAX_ORDER: u64 = 1 << 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GfError {
    #[error("field order must be at least 2, got {0}")]
    OrderTooSmall(u64),
    #[error("field order {q} exceeds the supported maximum {max}")]
    OrderTooLarge { q: u64, max: u64 },
    #[error("{q} is not a prime power ({q} = {factorization})")]
    NotPrimePower { q: u64, factorization: String },
    #[error("zero has no multiplicative inverse")]
    InverseOfZero,
    #[error("zero raised to the negative power {0}")]
    ZeroToNegativePower(i64),
    #[error("discrete logarithm of zero is undefined")]
    LogOfZero,
    #[error("operand belongs to GF({found}), expected GF({expected})")]
    MixedFields { expected: u64, found: u64 },
    #[error("coefficients {0:?} do not describe an element of this field")]
    BadCoefficients(Vec<u32>),
    #[error("{0:?} needs a second operand")]
    MissingOperand(ArithOp),
}

/// An element of some GF(p^n).
///
/// The element remembers `(p, n)` so that operands from different fields are
/// rejected; the modulus is a function of `(p, n)` alone.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FieldElement {
    p: u32,
    n: u32,
    rank: u32,
}

impl FieldElement {
    /// Position of the element in the field's total order.
    pub fn rank(&self) -> u32 {
        self.rank
    }

    pub fn is_zero(&self) -> bool {
        self.rank == 0
    }

    pub fn field_order(&self) -> u64 {
        (self.p as u64).pow(self.n)
    }

    /// Coefficients `[c_0, .., c_{n-1}]`, low degree first, zero padded.
    pub fn coeffs(&self) -> Vec<u32> {
        rank_to_coeffs(self.rank, self.p, self.n)
    }
}

impl fmt::Display for FieldElement {
    /// Prime fields print as integers; extension fields as polynomials in `x`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.n == 1 {
            return write!(f, "{}", self.rank);
        }
        let coeffs = self.coeffs();
        let mut terms = Vec::new();
        for (deg, &c) in coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let term = match (deg, c) {
                (0, c) => format!("{c}"),
                (1, 1) => "x".to_string(),
                (1, c) => format!("{c}x"),
                (d, 1) => format!("x^{d}"),
                (d, c) => format!("{c}x^{d}"),
            };
            terms.push(term);
        }
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join("+"))
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Inv,
    Neg,
}

/// GF(p^n) with a fixed modulus and primitive element.
#[derive(Clone, Debug)]
pub struct Field {
    p: u32,
    n: u32,
    q: u32,
    /// `n + 1` coefficients, low degree first, monic.
    modulus: Vec<u32>,
    alpha: FieldElement,
    /// `p^(n-1-k)`: weight of coefficient `k` inside a rank.
    weights: Vec<u32>,
    /// `exp[k]` is the rank of `alpha^k`, `k < q - 1`.
    exp: Vec<u32>,
    /// `log[rank]` is the discrete log of a nonzero element.
    log: Vec<u32>,
}

/// Builds GF(q). See [`Field::new`].
pub fn make_field(q: u64) -> Result<Field, GfError> {
    Field::new(q)
}

impl Field {
    /// Builds GF(q) with the lexicographically smallest monic irreducible
    /// modulus and the smallest primitive element.
    pub fn new(q: u64) -> Result<Field, GfError> {
        if q < 2 {
            return Err(GfError::OrderTooSmall(q));
        }
        if q > MAX_ORDER {
            return Err(GfError::OrderTooLarge { q, max: MAX_ORDER });
        }
        let (p, n) = prime_power(q)?;
        let (p, q) = (p as u32, q as u32);
        let modulus = smallest_irreducible(p, n);
        let weights = (0..n).map(|k| p.pow(n - 1 - k)).collect();

        let mut field = Field {
            p,
            n,
            q,
            modulus,
            alpha: FieldElement { p, n, rank: 0 },
            weights,
            exp: Vec::new(),
            log: Vec::new(),
        };

        let one = field.one_coeffs();
        let alpha_rank = (1..q)
            .find(|&r| field.slow_order(r, &one) == q - 1)
            .expect("the multiplicative group of a finite field is cyclic");
        field.alpha = FieldElement { p, n, rank: alpha_rank };

        let mut exp = Vec::with_capacity((q - 1) as usize);
        let mut log = vec![u32::MAX; q as usize];
        let alpha_coeffs = rank_to_coeffs(alpha_rank, p, n);
        let mut cur = one;
        for k in 0..q - 1 {
            let r = coeffs_to_rank(&cur, p);
            exp.push(r);
            log[r as usize] = k;
            cur = poly_mulmod(&cur, &alpha_coeffs, &field.modulus, p);
        }
        field.exp = exp;
        field.log = log;
        Ok(field)
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.n
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    pub fn is_prime_field(&self) -> bool {
        self.n == 1
    }

    /// Monic modulus, low degree first (`x` for prime fields, where it is unused).
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// The designated primitive element.
    pub fn alpha(&self) -> FieldElement {
        self.alpha
    }

    pub fn zero(&self) -> FieldElement {
        self.at(0)
    }

    pub fn one(&self) -> FieldElement {
        self.at(self.exp[0])
    }

    /// All elements in increasing order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.q).map(move |r| self.at(r))
    }

    /// Nonzero elements in increasing order.
    pub fn nonzero_elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (1..self.q).map(move |r| self.at(r))
    }

    /// Element with the given rank, if in range.
    pub fn from_rank(&self, rank: u32) -> Option<FieldElement> {
        (rank < self.q).then(|| self.at(rank))
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<FieldElement, GfError> {
        if coeffs.len() > self.n as usize || coeffs.iter().any(|&c| c >= self.p) {
            return Err(GfError::BadCoefficients(coeffs.to_vec()));
        }
        let mut padded = coeffs.to_vec();
        padded.resize(self.n as usize, 0);
        Ok(self.at(coeffs_to_rank(&padded, self.p)))
    }

    /// The integer `i` reduced into the prime subfield.
    pub fn from_int(&self, i: i64) -> FieldElement {
        let c = i.rem_euclid(self.p as i64) as u32;
        self.at(c * self.weights[0])
    }

    /// `alpha^k`, any integer `k`.
    pub fn alpha_pow(&self, k: i64) -> FieldElement {
        let e = k.rem_euclid(self.q as i64 - 1) as usize;
        self.at(self.exp[e])
    }

    pub fn contains(&self, a: FieldElement) -> bool {
        a.p == self.p && a.n == self.n
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement, GfError> {
        self.check(a)?;
        self.check(b)?;
        if self.p == 2 {
            // coefficient-wise XOR is position independent
            return Ok(self.at(a.rank ^ b.rank));
        }
        let mut r = 0;
        let (mut x, mut y) = (a.rank, b.rank);
        let mut w = 1;
        for _ in 0..self.n {
            r += ((x % self.p + y % self.p) % self.p) * w;
            x /= self.p;
            y /= self.p;
            w *= self.p;
        }
        Ok(self.at(r))
    }

    pub fn neg(&self, a: FieldElement) -> Result<FieldElement, GfError> {
        self.check(a)?;
        if self.p == 2 {
            return Ok(a);
        }
        let mut r = 0;
        let mut x = a.rank;
        let mut w = 1;
        for _ in 0..self.n {
            r += ((self.p - x % self.p) % self.p) * w;
            x /= self.p;
            w *= self.p;
        }
        Ok(self.at(r))
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement, GfError> {
        let nb = self.neg(b)?;
        self.add(a, nb)
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement, GfError> {
        self.check(a)?;
        self.check(b)?;
        if a.is_zero() || b.is_zero() {
            return Ok(self.zero());
        }
        let e = (self.log[a.rank as usize] + self.log[b.rank as usize]) % (self.q - 1);
        Ok(self.at(self.exp[e as usize]))
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement, GfError> {
        self.check(a)?;
        if a.is_zero() {
            return Err(GfError::InverseOfZero);
        }
        let e = (self.q - 1 - self.log[a.rank as usize]) % (self.q - 1);
        Ok(self.at(self.exp[e as usize]))
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement, GfError> {
        let ib = self.inv(b)?;
        self.mul(a, ib)
    }

    /// Single entry point over the basic operations; `b` is ignored by the
    /// unary ones.
    pub fn arith(
        &self,
        op: ArithOp,
        a: FieldElement,
        b: Option<FieldElement>,
    ) -> Result<FieldElement, GfError> {
        let second = || b.ok_or(GfError::MissingOperand(op));
        match op {
            ArithOp::Add => self.add(a, second()?),
            ArithOp::Sub => self.sub(a, second()?),
            ArithOp::Mul => self.mul(a, second()?),
            ArithOp::Inv => self.inv(a),
            ArithOp::Neg => self.neg(a),
        }
    }

    /// Square-and-multiply; for nonzero `a` the exponent is reduced mod q-1.
    pub fn pow(&self, a: FieldElement, k: i64) -> Result<FieldElement, GfError> {
        self.check(a)?;
        if a.is_zero() {
            return match k {
                k if k < 0 => Err(GfError::ZeroToNegativePower(k)),
                0 => Ok(self.one()),
                _ => Ok(self.zero()),
            };
        }
        let mut e = k.rem_euclid(self.q as i64 - 1) as u64;
        let mut base = a;
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base)?;
            }
            base = self.mul(base, base)?;
            e >>= 1;
        }
        Ok(acc)
    }

    /// The unique `e` in `[0, q-1)` with `alpha^e = a`.
    pub fn discrete_log(&self, a: FieldElement) -> Result<u32, GfError> {
        self.check(a)?;
        if a.is_zero() {
            return Err(GfError::LogOfZero);
        }
        Ok(self.log[a.rank as usize])
    }

    fn at(&self, rank: u32) -> FieldElement {
        FieldElement { p: self.p, n: self.n, rank }
    }

    fn check(&self, a: FieldElement) -> Result<(), GfError> {
        if self.contains(a) {
            Ok(())
        } else {
            Err(GfError::MixedFields { expected: self.q as u64, found: a.field_order() })
        }
    }

    fn one_coeffs(&self) -> Vec<u32> {
        let mut one = vec![0; self.n as usize];
        one[0] = 1;
        one
    }

    /// Multiplicative order by repeated multiplication; used before the
    /// log tables exist.
    fn slow_order(&self, rank: u32, one: &[u32]) -> u32 {
        let a = rank_to_coeffs(rank, self.p, self.n);
        let mut cur = a.clone();
        let mut k = 1;
        while cur != one {
            cur = poly_mulmod(&cur, &a, &self.modulus, self.p);
            k += 1;
            if k > self.q {
                break;
            }
        }
        k
    }
}

/// Splits `q` as `p^n`, or reports its factorization.
pub fn prime_power(q: u64) -> Result<(u64, u32), GfError> {
    let factors = factorize(q);
    match factors.as_slice() {
        [(p, n)] => Ok((*p, *n)),
        _ => Err(GfError::NotPrimePower {
            q,
            factorization: factors
                .iter()
                .map(|&(p, e)| if e == 1 { p.to_string() } else { format!("{p}^{e}") })
                .collect::<Vec<_>>()
                .join("·"),
        }),
    }
}

fn factorize(mut m: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= m {
        let mut e = 0;
        while m.is_multiple_of(d) {
            m /= d;
            e += 1;
        }
        if e > 0 {
            out.push((d, e));
        }
        d += 1;
    }
    if m > 1 {
        out.push((m, 1));
    }
    out
}

fn rank_to_coeffs(rank: u32, p: u32, n: u32) -> Vec<u32> {
    let mut coeffs = vec![0; n as usize];
    let mut r = rank;
    for k in (0..n as usize).rev() {
        coeffs[k] = r % p;
        r /= p;
    }
    coeffs
}

fn coeffs_to_rank(coeffs: &[u32], p: u32) -> u32 {
    coeffs.iter().fold(0, |acc, &c| acc * p + c)
}

/// `a * b mod modulus` over Z_p; `a`, `b` have `deg(modulus)` coefficients.
fn poly_mulmod(a: &[u32], b: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
    let n = modulus.len() - 1;
    let mut prod = vec![0u64; 2 * n];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p as u64;
        }
    }
    // x^n = -(m_0 + .. + m_{n-1} x^{n-1})
    for d in (n..2 * n).rev() {
        let c = prod[d];
        if c == 0 {
            continue;
        }
        prod[d] = 0;
        for k in 0..n {
            let sub = c * modulus[k] as u64 % p as u64;
            prod[d - n + k] = (prod[d - n + k] + p as u64 - sub) % p as u64;
        }
    }
    prod[..n].iter().map(|&c| c as u32).collect()
}

/// Remainder of `a` modulo the monic `b`, both low degree first.
fn poly_rem_monic(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    while r.len() > db {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - db;
        if lead != 0 {
            for (k, &c) in b.iter().enumerate() {
                let sub = (lead as u64 * c as u64 % p as u64) as u32;
                r[shift + k] = (r[shift + k] + p - sub) % p;
            }
        }
        r.pop();
    }
    r
}

fn is_irreducible(f: &[u32], p: u32) -> bool {
    let n = f.len() - 1;
    for d in 1..=n / 2 {
        for tail in 0..p.pow(d as u32) {
            let mut g = rank_to_coeffs(tail, p, d as u32);
            g.push(1);
            if poly_rem_monic(f, &g, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

/// Lexicographically smallest (low degree first) monic irreducible of
/// degree `n` over Z_p.
fn smallest_irreducible(p: u32, n: u32) -> Vec<u32> {
    (0..p.pow(n))
        .map(|tail| {
            let mut f = rank_to_coeffs(tail, p, n);
            f.push(1);
            f
        })
        .find(|f| is_irreducible(f, p))
        .expect("irreducible polynomials exist in every degree")
}
