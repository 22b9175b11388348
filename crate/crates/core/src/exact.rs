//! Closed-form exact counting.
//!
//! Two families of counts, both exact at every size:
//!
//! - `hultman(n, k)`: circular permutations `psi` of `n` points such that
//!   the product of the standard circular permutation with `psi` has `k`
//!   cycles. Equivalently, unicellular hypermonopoles on `n` points with
//!   `k` hyperedges. Equal to `c(n+1, k) / C(n+1, 2)` when `n - k` is
//!   even, else `0`, where `c` is the unsigned Stirling number of the
//!   first kind.
//! - `reduced_count(n, k)`: the subset with no bud, by inclusion and
//!   exclusion over the bud positions.
//!
//! Summing `reduced_count` over the feasible window `2g+1 <= n <= 4g`
//! gives `u_of_g(g)`, the number of reduced unicellular hypermonopoles of
//! genus `g`. Both families also arise as coefficients of explicit
//! polynomials built from rising and falling factorials; see
//! [`hultman_genpoly`] and [`reduced_genpoly`].

use std::sync::{OnceLock, RwLock};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

/// Triangle of unsigned Stirling numbers of the first kind, grown on
/// demand and kept for the process lifetime. Reads are concurrent;
/// growth takes the write lock.
static STIRLING: OnceLock<RwLock<Vec<Vec<BigUint>>>> = OnceLock::new();

fn stirling_table() -> &'static RwLock<Vec<Vec<BigUint>>> {
    STIRLING.get_or_init(|| RwLock::new(vec![vec![BigUint::one()]]))
}

fn ensure_stirling_rows(n: usize) {
    {
        let rows = stirling_table().read().unwrap();
        if rows.len() > n {
            return;
        }
    }
    let mut rows = stirling_table().write().unwrap();
    while rows.len() <= n {
        let row_n = rows.len();
        let prev = rows.last().unwrap();
        let mut row = Vec::with_capacity(row_n + 1);
        row.push(BigUint::zero());
        for k in 1..=row_n {
            let mut v = prev[k - 1].clone();
            if k < row_n {
                v += &prev[k] * ((row_n - 1) as u64);
            }
            row.push(v);
        }
        rows.push(row);
    }
}

/// Unsigned Stirling number of the first kind `c(n, k)`: permutations of
/// `n` elements with exactly `k` cycles. Zero when `k > n` or when
/// `k = 0` with `n >= 1`.
pub fn stirling_first(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    ensure_stirling_rows(n);
    stirling_table().read().unwrap()[n][k].clone()
}

/// Binomial coefficient `C(n, k)`, zero outside `0 <= k <= n`.
pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 1..=k {
        acc = acc * ((n - k + i) as u64) / (i as u64);
    }
    acc
}

/// `n!` as an exact integer.
pub fn factorial(n: usize) -> BigUint {
    let mut acc = BigUint::one();
    for i in 2..=n {
        acc *= i as u64;
    }
    acc
}

/// Number of circular permutations `psi` of `n` points such that the
/// product of `(0, 1, .., n-1)` with `psi` has exactly `k` cycles;
/// equivalently, unicellular hypermonopoles on `n` points with `k`
/// hyperedges. Zero when `n - k` is odd or `k` is outside `1..=n`.
pub fn hultman(n: usize, k: usize) -> BigUint {
    assert!(n >= 1, "hultman needs n >= 1");
    if k == 0 || k > n || !(n - k).is_multiple_of(2) {
        return BigUint::zero();
    }
    let num = stirling_first(n + 1, k);
    let den = binomial(n + 1, 2);
    let q = &num / &den;
    assert!(
        &q * &den == num,
        "c({}, {}) is not divisible by C({}, 2)",
        n + 1,
        k,
        n + 1
    );
    q
}

/// The row `hultman(n, 1), .., hultman(n, n)`.
pub fn hultman_row(n: usize) -> Vec<BigUint> {
    (1..=n).map(|k| hultman(n, k)).collect()
}

/// Number of reduced unicellular hypermonopoles on `n` points with `k`
/// hyperedges: inclusion and exclusion over bud positions,
/// `sum_{i=0}^{k-1} (-1)^i C(n, i) hultman(n-i, k-i)`.
///
/// The count is only meaningful for `1 <= k <= n/2` (a map with no bud
/// has every hyperedge of size at least two); callers must stay in that
/// range. Zero when `n - k` is odd.
pub fn reduced_count(n: usize, k: usize) -> BigUint {
    assert!(n >= 2, "reduced_count needs n >= 2");
    assert!(
        (1..=n / 2).contains(&k),
        "reduced_count needs 1 <= k <= n/2, got n={n} k={k}"
    );
    if !(n - k).is_multiple_of(2) {
        return BigUint::zero();
    }
    let mut acc = BigInt::zero();
    for i in 0..k {
        let term = BigInt::from(binomial(n, i) * hultman(n - i, k - i));
        if i % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc.to_biguint()
        .expect("alternating sum for reduced_count went negative")
}

/// The row `reduced_count(n, 1), .., reduced_count(n, n/2)`.
pub fn reduced_row(n: usize) -> Vec<BigUint> {
    (1..=n / 2).map(|k| reduced_count(n, k)).collect()
}

/// The summands of [`u_of_g`]: pairs `(n, reduced_count(n, n - 2g))` for
/// `n` in the feasible window `2g+1 ..= 4g`. Empty for `g = 0`.
pub fn u_terms(g: usize) -> Vec<(usize, BigUint)> {
    if g == 0 {
        return Vec::new();
    }
    (2 * g + 1..=4 * g)
        .map(|n| (n, reduced_count(n, n - 2 * g)))
        .collect()
}

/// Total number of reduced unicellular hypermonopoles of genus `g`,
/// summed over all feasible point counts. `u_of_g(0) = 0`.
pub fn u_of_g(g: usize) -> BigUint {
    u_terms(g).into_iter().map(|(_, v)| v).sum()
}

/// Dense polynomial with exact integer coefficients, `coeffs[i]` the
/// coefficient of `x^i`, trailing zeros trimmed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    coeffs: Vec<BigInt>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Self {
        let mut p = Poly { coeffs };
        p.trim();
        p
    }

    /// The monomial `x`.
    pub fn x() -> Self {
        Poly {
            coeffs: vec![BigInt::zero(), BigInt::one()],
        }
    }

    fn trim(&mut self) {
        while matches!(self.coeffs.last(), Some(c) if c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficient of `x^k` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::from_coeffs((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::from_coeffs((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Poly::from_coeffs(coeffs)
    }

    pub fn scale(&self, c: &BigInt) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Multiplies by `x^k`.
    pub fn mul_xpow(&self, k: usize) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    /// Divides every coefficient by `d`, asserting exactness.
    pub fn div_exact(&self, d: &BigInt) -> Poly {
        assert!(!d.is_zero(), "division by zero");
        Poly::from_coeffs(
            self.coeffs
                .iter()
                .map(|a| {
                    let q = a / d;
                    assert!(&q * d == *a, "coefficient {a} not divisible by {d}");
                    q
                })
                .collect(),
        )
    }

    /// Evaluates at `x` by Horner's rule.
    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }
}

/// Rising factorial product `x (x+1) (x+2) .. (x+n)`, with `n + 1`
/// linear factors.
pub fn rising_factorial(n: usize) -> Poly {
    let mut p = Poly::x();
    for j in 1..=n {
        p = p.mul(&Poly::from_coeffs(vec![BigInt::from(j), BigInt::one()]));
    }
    p
}

/// Falling factorial product `x (x-1) (x-2) .. (x-n)`, with `n + 1`
/// linear factors.
pub fn falling_factorial(n: usize) -> Poly {
    let mut p = Poly::x();
    for j in 1..=n {
        p = p.mul(&Poly::from_coeffs(vec![
            BigInt::from(-(j as i64)),
            BigInt::one(),
        ]));
    }
    p
}

/// The polynomial whose coefficient of `x^k` is `hultman(n, k)`:
/// `(rising_factorial(n) - falling_factorial(n)) / (n (n+1))`.
pub fn hultman_genpoly(n: usize) -> Poly {
    assert!(n >= 1, "hultman_genpoly needs n >= 1");
    rising_factorial(n)
        .sub(&falling_factorial(n))
        .div_exact(&BigInt::from((n * (n + 1)) as u64))
}

/// The alternating sum `sum_{i=0}^{n-1} C(n, i) (-x)^i hultman_genpoly(n-i)`.
///
/// Its coefficient of `x^k` equals `reduced_count(n, k)` for
/// `1 <= k <= n/2`; coefficients above `n/2` are artifacts of the
/// truncated inclusion and exclusion and carry no counting meaning.
pub fn reduced_genpoly(n: usize) -> Poly {
    assert!(n >= 2, "reduced_genpoly needs n >= 2");
    let mut acc = Poly::zero();
    for i in 0..n {
        let mut c = BigInt::from(binomial(n, i));
        if i % 2 == 1 {
            c = -c;
        }
        acc = acc.add(&hultman_genpoly(n - i).mul_xpow(i).scale(&c));
    }
    acc
}
