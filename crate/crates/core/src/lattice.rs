//! The exponent lattice of the three-variable ring: labels `(n, c, omega)`
//! in bijection with monomials, extremal `omega` values over a fiber,
//! minimal congruent `c` values, the remainder function on convergent
//! windows, and the module-generation check for the distinguished weight
//! spaces.

use num::{Integer, One, Signed, Zero};

use crate::error::Error;
use crate::exact::{int, rem, HjExpansion, Int};
use crate::pair::{DerivedInvariants, PopovPair, SequenceTable};

/// A point of the exponent lattice. Membership requires
/// `n + omega >= 0`, `(q - p) | (q c - omega)` and both quotients
/// `(q c - omega)/(q - p)`, `(p c - omega)/(q - p)` nonnegative.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LambdaLabel {
    pub n: Int,
    pub c: Int,
    pub omega: Int,
}

impl LambdaLabel {
    pub fn new(n: Int, c: Int, omega: Int) -> Self {
        LambdaLabel { n, c, omega }
    }

    pub fn add(&self, other: &LambdaLabel) -> LambdaLabel {
        LambdaLabel {
            n: &self.n + &other.n,
            c: &self.c + &other.c,
            omega: &self.omega + &other.omega,
        }
    }
}

impl std::fmt::Display for LambdaLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {}, {})", self.n, self.c, self.omega)
    }
}

/// Exponents of a monomial in a three-variable ring. The slots mean
/// `(X0, X1, X3)` in the default ring; the engine for the hypersurface
/// family reuses the same layout with `X4` in the last slot.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial3(pub [Int; 3]);

impl Monomial3 {
    pub fn new(d0: i64, d1: i64, d3: i64) -> Self {
        Monomial3([int(d0), int(d1), int(d3)])
    }

    pub fn one() -> Self {
        Monomial3([Int::zero(), Int::zero(), Int::zero()])
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|e| e.is_zero())
    }

    pub fn degree(&self) -> Int {
        &(&self.0[0] + &self.0[1]) + &self.0[2]
    }

    pub fn mul(&self, other: &Monomial3) -> Monomial3 {
        Monomial3([
            &self.0[0] + &other.0[0],
            &self.0[1] + &other.0[1],
            &self.0[2] + &other.0[2],
        ])
    }

    pub fn divides(&self, other: &Monomial3) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    pub fn div(&self, other: &Monomial3) -> Option<Monomial3> {
        if other.divides(self) {
            Some(Monomial3([
                &self.0[0] - &other.0[0],
                &self.0[1] - &other.0[1],
                &self.0[2] - &other.0[2],
            ]))
        } else {
            None
        }
    }

    pub fn display(&self, vars: [&str; 3]) -> String {
        let mut parts = Vec::new();
        for (e, v) in self.0.iter().zip(vars.iter()) {
            if e.is_zero() {
                continue;
            }
            if e.is_one() {
                parts.push(v.to_string());
            } else {
                parts.push(format!("{v}^{e}"));
            }
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

/// A character of the diagonal torus times the cyclic group: the integer
/// weight `n` and the residue `d` modulo `m`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeightLabel {
    pub n: Int,
    pub d: Int,
}

impl WeightLabel {
    pub fn new(m: &Int, n: Int, d: &Int) -> Self {
        WeightLabel {
            n,
            d: d.mod_floor(m),
        }
    }
}

/// The defining injective linear map from exponents to labels.
pub fn mu(pair: &PopovPair, mon: &Monomial3) -> LambdaLabel {
    let [d0, d1, d3] = &mon.0;
    LambdaLabel {
        n: d0 - &pair.p * d1 + &pair.q * d3,
        c: d1 - d3,
        omega: &pair.p * d1 - &pair.q * d3,
    }
}

/// Weight of a monomial: `(n, c mod m)`.
pub fn weight_of(pair: &PopovPair, mon: &Monomial3) -> WeightLabel {
    let lam = mu(pair, mon);
    WeightLabel::new(&pair.m, lam.n, &lam.c)
}

pub fn lambda_member(pair: &PopovPair, lam: &LambdaLabel) -> bool {
    let qp = pair.q_minus_p();
    if (&lam.n + &lam.omega).is_negative() {
        return false;
    }
    let num1 = &pair.q * &lam.c - &lam.omega;
    if !(&num1 % &qp).is_zero() || num1.is_negative() {
        return false;
    }
    let num3 = &pair.p * &lam.c - &lam.omega;
    !num3.is_negative()
}

/// The unique monomial with label `lam`:
/// `X0^{n+omega} X1^{(qc-omega)/(q-p)} X3^{(pc-omega)/(q-p)}`.
pub fn f_lambda(pair: &PopovPair, lam: &LambdaLabel) -> Result<Monomial3, Error> {
    if !lambda_member(pair, lam) {
        return Err(Error::NotInLattice {
            n: lam.n.clone(),
            c: lam.c.clone(),
            omega: lam.omega.clone(),
        });
    }
    let qp = pair.q_minus_p();
    Ok(Monomial3([
        &lam.n + &lam.omega,
        (&pair.q * &lam.c - &lam.omega) / &qp,
        (&pair.p * &lam.c - &lam.omega) / &qp,
    ]))
}

fn fiber_nonempty(pair: &PopovPair, n: &Int, c: &Int) -> bool {
    let cap = if c.is_negative() {
        &pair.q * c
    } else {
        &pair.p * c
    };
    !(n + cap).is_negative()
}

/// Largest `omega` with `(n, c, omega)` on the lattice: `qc` when `c < 0`,
/// otherwise `pc`.
pub fn omega_max(pair: &PopovPair, n: &Int, c: &Int) -> Result<Int, Error> {
    if !fiber_nonempty(pair, n, c) {
        return Err(Error::EmptyFiber {
            n: n.clone(),
            c: c.clone(),
        });
    }
    Ok(if c.is_negative() {
        &pair.q * c
    } else {
        &pair.p * c
    })
}

/// Smallest `omega` over the fiber, computed by descending from
/// `omega_max` in steps of `q - p` while membership holds. This is the
/// definitional search; `omega_min_closed` is the derived closed form and
/// the two are compared in the verification suite.
pub fn omega_min(pair: &PopovPair, n: &Int, c: &Int) -> Result<Int, Error> {
    let mut omega = omega_max(pair, n, c)?;
    let qp = pair.q_minus_p();
    loop {
        let next = &omega - &qp;
        let lam = LambdaLabel::new(n.clone(), c.clone(), next.clone());
        if lambda_member(pair, &lam) {
            omega = next;
        } else {
            return Ok(omega);
        }
    }
}

/// Closed form for `n, c >= 0`: `-n + rem(p c + n, q - p)`.
pub fn omega_min_closed(pair: &PopovPair, n: &Int, c: &Int) -> Result<Int, Error> {
    if n.is_negative() || c.is_negative() {
        return Err(Error::PreconditionFailure(
            "closed form requires n >= 0 and c >= 0".into(),
        ));
    }
    let qp = pair.q_minus_p();
    Ok(-n + rem(&(&pair.p * c + n), &qp)?)
}

/// All `omega` in the fiber over `(n, c)`, ascending.
pub fn fiber_omegas(pair: &PopovPair, n: &Int, c: &Int) -> Result<Vec<Int>, Error> {
    let lo = omega_min(pair, n, c)?;
    let hi = omega_max(pair, n, c)?;
    let qp = pair.q_minus_p();
    let mut out = Vec::new();
    let mut w = lo;
    while w <= hi {
        out.push(w.clone());
        w += &qp;
    }
    Ok(out)
}

/// Smallest `c` congruent to `w.d` modulo `m` whose fiber over `w.n` is
/// nonempty. The scan starts at the analytic lower bound `ceil(-n/p)`.
pub fn c_min(pair: &PopovPair, w: &WeightLabel) -> Int {
    let d = w.d.mod_floor(&pair.m);
    let lower = (-&w.n).div_ceil(&pair.p);
    let mut c = &lower + (&d - &lower).mod_floor(&pair.m);
    while !fiber_nonempty(pair, &w.n, &c) {
        c += &pair.m;
    }
    c
}

/// For an index with `1 < i <= r+1`, the largest `l <= i-1` whose
/// coefficient exceeds 2, provided every coefficient strictly between `l`
/// and `i` equals 2. Returns `None` when all preceding coefficients are 2.
pub fn theta_anchor(hj: &HjExpansion, i: usize) -> Option<usize> {
    (1..i).rev().find(|&l| hj.coeffs[l - 1] > int(2))
}

/// The remainder `rem(t_1 (P_{i-1} + x), b)` on the window
/// `0 <= x < P_i - P_{i-1}`, defined only under the anchor conditions.
pub fn theta(
    inv: &DerivedInvariants,
    hj: &HjExpansion,
    i: usize,
    x: &Int,
) -> Result<Int, Error> {
    let r = hj.depth();
    if !(1 < i && i <= r + 1) {
        return Err(Error::PreconditionFailure(format!(
            "index must satisfy 1 < i <= {}, got {i}",
            r + 1
        )));
    }
    if theta_anchor(hj, i).is_none() {
        return Err(Error::PreconditionFailure(format!(
            "no coefficient above 2 precedes index {i}"
        )));
    }
    let width = &hj.pconv[i] - &hj.pconv[i - 1];
    if x.is_negative() || *x >= width {
        return Err(Error::PreconditionFailure(format!(
            "offset {x} outside window [0, {width})"
        )));
    }
    rem(&(&inv.t * (&hj.pconv[i - 1] + x)), &inv.b)
}

/// The distinguished invariant-free monomial of weight `(0, m j)`:
/// `f` of `(0, m j, omega_min)`.
pub fn big_f(pair: &PopovPair, inv: &DerivedInvariants, j: &Int) -> Result<Monomial3, Error> {
    if !j.is_positive() || *j >= inv.b {
        return Err(Error::IndexOutOfRange(format!(
            "index must lie in [1, {}), got {j}",
            inv.b
        )));
    }
    let c = &pair.m * j;
    let omega = omega_min(pair, &Int::zero(), &c)?;
    f_lambda(pair, &LambdaLabel::new(Int::zero(), c, omega))
}

/// The label `(q-p-omega_{(0,c)}, c, omega_{(0,c)}-(q-p))` attached to a
/// positive multiple `c` of `m`; its monomial has no `X0` factor.
pub fn lambda_c(pair: &PopovPair, c: &Int) -> Result<LambdaLabel, Error> {
    if !c.is_positive() || !(c % &pair.m).is_zero() {
        return Err(Error::IndexOutOfRange(format!(
            "expected a positive multiple of {}, got {c}",
            pair.m
        )));
    }
    let qp = pair.q_minus_p();
    let omega0 = omega_min(pair, &Int::zero(), c)?;
    let lam = LambdaLabel::new(&qp - &omega0, c.clone(), &omega0 - &qp);
    debug_assert!((&lam.n + &lam.omega).is_zero());
    Ok(lam)
}

/// Result of the module-generation check for the weight space at
/// `(n_i, 0)`: every enumerated monomial must factor as an invariant
/// monomial times a basis monomial of the two distinguished fibers.
#[derive(Debug, Clone)]
pub struct GenerationCheck {
    pub ok: bool,
    pub witnesses: Vec<(LambdaLabel, Monomial3)>,
    pub counterexample: Option<LambdaLabel>,
}

pub fn check_generation(
    pair: &PopovPair,
    hj: &HjExpansion,
    seq: &SequenceTable,
    i: usize,
    c_bound: &Int,
) -> Result<GenerationCheck, Error> {
    let r = hj.depth();
    if i > r {
        return Err(Error::IndexOutOfRange(format!(
            "generation check is defined for 0 <= i <= {r}, got {i}"
        )));
    }
    let ni = &seq.n[i];
    let mpi = &pair.m * &hj.pconv[i];

    let mut basis = Vec::new();
    for c in [Int::zero(), mpi.clone()] {
        for omega in fiber_omegas(pair, ni, &c)? {
            let mon = f_lambda(pair, &LambdaLabel::new(ni.clone(), c.clone(), omega))?;
            if !basis.contains(&mon) {
                basis.push(mon);
            }
        }
    }

    let mut witnesses = Vec::new();
    let mut c = Int::zero();
    while c <= *c_bound {
        if fiber_nonempty(pair, ni, &c) {
            for omega in fiber_omegas(pair, ni, &c)? {
                let lam = LambdaLabel::new(ni.clone(), c.clone(), omega);
                let mon = f_lambda(pair, &lam)?;
                match basis.iter().find(|h| h.divides(&mon)) {
                    Some(h) => {
                        // the cofactor is automatically an invariant monomial
                        let g = mon.div(h).unwrap();
                        let w = weight_of(pair, &g);
                        debug_assert!(w.n.is_zero() && w.d.is_zero());
                        witnesses.push((lam, h.clone()));
                    }
                    None => {
                        return Ok(GenerationCheck {
                            ok: false,
                            witnesses,
                            counterexample: Some(lam),
                        })
                    }
                }
            }
        }
        c += &pair.m;
    }
    Ok(GenerationCheck {
        ok: true,
        witnesses,
        counterexample: None,
    })
}
