//! The per-pair verification suites: every structural identity, bound and
//! biconditional the library relies on, evaluated exhaustively at desk
//! scale with brute-force oracles where one exists. Each suite reports
//! pass/fail/skipped with a minimal counterexample on failure.

use num::{Integer, One, Signed, ToPrimitive, Zero};

use crate::cg::{cg_vector, lowering_action};
use crate::error::Error;
use crate::exact::{int, rem, Int};
use crate::fan::{det2, in_span, in_valuation_cone, validate_fan, valuation_pairing, Color};
use crate::ideal::{
    borel_fixed_points, complete_rewrite_system, monomial_in_ideal, reduced_ideals_equal,
    structural_membership, tangent_dimension, weight_space_dim_auto, Family, Gen3, IdealSpec,
};
use crate::lattice::{
    big_f, check_generation, f_lambda, fiber_omegas, lambda_member, mu, omega_max, omega_min,
    theta, theta_anchor, LambdaLabel, Monomial3, WeightLabel,
};
use crate::pair::{semigroup_contains, PopovPair};
use crate::pipeline::Pipeline;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckStatus {
    Pass,
    Fail,
    Skipped,
}

impl std::fmt::Display for CheckStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CheckStatus::Pass => write!(f, "pass"),
            CheckStatus::Fail => write!(f, "FAIL"),
            CheckStatus::Skipped => write!(f, "skipped"),
        }
    }
}

/// One verified statement: how many instances were checked and, on
/// failure, the first counterexample.
#[derive(Debug, Clone)]
pub struct Check {
    pub name: String,
    pub status: CheckStatus,
    pub cases: u64,
    pub detail: String,
}

impl Check {
    fn pass(name: &str, cases: u64) -> Self {
        Check {
            name: name.into(),
            status: CheckStatus::Pass,
            cases,
            detail: String::new(),
        }
    }

    fn fail(name: &str, cases: u64, detail: String) -> Self {
        Check {
            name: name.into(),
            status: CheckStatus::Fail,
            cases,
            detail,
        }
    }

    fn skipped(name: &str, detail: &str) -> Self {
        Check {
            name: name.into(),
            status: CheckStatus::Skipped,
            cases: 0,
            detail: detail.into(),
        }
    }

    fn finish(name: &str, cases: u64, failures: Vec<String>) -> Self {
        if failures.is_empty() {
            if cases == 0 {
                Check::skipped(name, "no applicable instances")
            } else {
                Check::pass(name, cases)
            }
        } else {
            let shown = failures.len().min(3);
            Check::fail(
                name,
                cases,
                format!(
                    "{} failure(s); first: {}",
                    failures.len(),
                    failures[..shown].join(" | ")
                ),
            )
        }
    }
}

/// Corruptions applied to the first fixed-point ideal, used to confirm
/// the dimension checks are sensitive to missing generators.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mutation {
    /// Drop the idx-th semigroup generator monomial (0-based) from the
    /// definitional generator list.
    DropSemigroupGenerator(usize),
    /// Drop the j-th invariant generator (1-based) from the alternative
    /// presentation and verify that presentation instead.
    DropInvariantGenerator(usize),
}

#[derive(Debug, Clone)]
pub struct VerifyOptions {
    /// Weight box: all weights with `|n| <=` this bound are checked.
    pub max_weight: Option<Int>,
    /// Label box bound on `|c|`.
    pub c_bound: Option<Int>,
    pub completion_budget: usize,
    /// Run the quotient-dimension checks (the slow part).
    pub hilbert: bool,
    pub mutation: Option<Mutation>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            max_weight: None,
            c_bound: None,
            completion_budget: crate::ideal::DEFAULT_COMPLETION_BUDGET,
            hilbert: true,
            mutation: None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct VerifyReport {
    pub pair: PopovPair,
    pub toric: bool,
    pub depth: usize,
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != CheckStatus::Fail)
    }
}

fn default_max_weight(pl: &Pipeline) -> Int {
    int(2) * pl.pair.q_minus_p()
}

fn default_c_bound(pl: &Pipeline) -> Int {
    &pl.pair.m * (pl.hj.pconv.last().unwrap() + 2)
}

/// The generator list actually verified for an ideal, with the requested
/// corruption applied to the first fixed-point ideal.
fn effective_reduced(
    pl: &Pipeline,
    spec: &IdealSpec,
    mutation: Option<Mutation>,
) -> Result<Vec<Gen3>, Error> {
    let targeted = spec.family == Family::J0 && spec.index == Some(1);
    let Some(mutation) = mutation.filter(|_| targeted) else {
        return Ok(spec.reduced.clone());
    };
    match mutation {
        Mutation::DropSemigroupGenerator(idx) => {
            let (u1, u2) = pl.sg.gens.get(idx).ok_or_else(|| {
                Error::InvalidArgument(format!("no semigroup generator with index {idx}"))
            })?;
            let mono = Monomial3([&pl.pair.p * u1 - &pl.pair.q * u2, u1.clone(), u2.clone()]);
            let mut gens = spec.reduced.clone();
            let pos = gens
                .iter()
                .position(|g| matches!(g, Gen3::Mono(m) if *m == mono))
                .ok_or_else(|| {
                    Error::InvalidArgument(
                        "the targeted ideal does not list that semigroup generator".into(),
                    )
                })?;
            gens.remove(pos);
            Ok(gens)
        }
        Mutation::DropInvariantGenerator(j) => {
            let mono = big_f(&pl.pair, &pl.inv, &int(j as i64))?;
            let mut gens = spec.f_reduced.clone().ok_or_else(|| {
                Error::InvalidArgument("the targeted ideal has no alternative presentation".into())
            })?;
            let pos = gens
                .iter()
                .position(|g| matches!(g, Gen3::Mono(m) if *m == mono))
                .ok_or_else(|| {
                    Error::InvalidArgument(format!("invariant generator {j} not present"))
                })?;
            gens.remove(pos);
            Ok(gens)
        }
    }
}

fn check_expansion(pl: &Pipeline) -> Check {
    let name = "expansion-invariants";
    let hj = &pl.hj;
    let r = hj.depth();
    let mut cases = 0;
    let mut failures = Vec::new();
    for c in &hj.coeffs {
        cases += 1;
        if *c < int(2) {
            failures.push(format!("coefficient {c} below 2"));
        }
    }
    for i in 1..=r + 1 {
        cases += 1;
        let det = &hj.pconv[i - 1] * &hj.qconv[i] - &hj.pconv[i] * &hj.qconv[i - 1];
        if !det.is_one() {
            failures.push(format!("determinant {det} at index {i}"));
        }
        if hj.pconv[i - 1] >= hj.pconv[i] || hj.qconv[i - 1] >= hj.qconv[i] {
            failures.push(format!("convergents not increasing at index {i}"));
        }
    }
    for i in 1..=r {
        cases += 1;
        if hj.tchain[i - 1] != &hj.coeffs[i - 1] * &hj.tchain[i] - &hj.tchain[i + 1] {
            failures.push(format!("remainder recursion fails at index {i}"));
        }
        if hj.tchain[i - 1] <= hj.tchain[i] {
            failures.push(format!("remainder chain not descending at index {i}"));
        }
    }
    cases += 1;
    let expect = num::BigRational::new(hj.b.clone(), hj.t.clone());
    if hj.value() != expect {
        failures.push(format!("reconstruction gives {} not {}/{}", hj.value(), hj.b, hj.t));
    }
    Check::finish(name, cases, failures)
}

fn check_sequences(pl: &Pipeline) -> Check {
    let name = "sequence-identities";
    let (hj, seq, inv, pair) = (&pl.hj, &pl.seq, &pl.inv, &pl.pair);
    let r = hj.depth();
    let qp = pair.q_minus_p();
    let mut cases = 0;
    let mut failures = Vec::new();

    let top = if r == 0 { 0 } else { r + 1 };
    for i in 0..=top {
        cases += 1;
        let scaled = &inv.k * (&inv.t * &hj.pconv[i] - &inv.b * &hj.qconv[i]);
        if seq.n[i] != scaled {
            failures.push(format!("scaled identity fails at index {i}"));
        }
    }
    for i in 2..=r + 1 {
        cases += 1;
        if seq.n[i] != &hj.coeffs[i - 2] * &seq.n[i - 1] - &seq.n[i - 2] {
            failures.push(format!("three-term recursion fails at index {i}"));
        }
    }
    cases += 1;
    if seq.n[0] != qp {
        failures.push("n_0 differs from q-p".into());
    }
    if r >= 1 {
        cases += 1;
        if seq.n[1] != &qp - &inv.beta {
            failures.push("n_1 differs from q-p-beta".into());
        }
        cases += 1;
        if seq.n[r] != inv.k {
            failures.push("n_r differs from k".into());
        }
    }
    cases += 1;
    if !seq.n[r + 1].is_zero() {
        failures.push("terminal entry nonzero".into());
    }
    for i in 0..=r {
        cases += 1;
        if seq.n[i] <= seq.n[i + 1] {
            failures.push(format!("chain not strictly descending at index {i}"));
        }
    }
    for i in 1..=r {
        cases += 1;
        if hj.tchain[i] != &seq.n[i] / &inv.k {
            failures.push(format!("remainder/chain ratio fails at index {i}"));
        }
    }
    cases += 2;
    if *seq.e.last().unwrap() != &inv.a * &pair.q || *seq.l.last().unwrap() != &inv.a * &pair.p {
        failures.push("terminal exponents differ from (aq, ap)".into());
    }
    Check::finish(name, cases, failures)
}

fn check_resolution_fan(pl: &Pipeline) -> Check {
    let name = "resolution-fan";
    let fan = &pl.resolution;
    let mut cases = 0;
    let mut failures = Vec::new();
    for cone in fan.maximal_cones() {
        cases += 1;
        let d = det2(fan.ray(cone.rays[0]), fan.ray(cone.rays[1]));
        if !d.is_one() && !(-&d).is_one() {
            failures.push(format!("cone {} has determinant {d}", cone.label));
        }
    }
    cases += 1;
    if det2(&pl.base.d_prime, &pl.base.d) != pl.inv.b {
        failures.push("blow-up cone determinant differs from b".into());
    }
    for ray in &fan.rays {
        cases += 2;
        if !ray.is_primitive() {
            failures.push(format!("ray {ray} not primitive"));
        }
        if !in_span(&pl.base.d_prime, &pl.base.d, ray) {
            failures.push(format!("ray {ray} escapes the blow-up cone"));
        }
        cases += 1;
        if !in_valuation_cone(&pl.pair.m, ray) {
            failures.push(format!("ray {ray} outside the valuation cone"));
        }
    }
    cases += 1;
    if let Err(e) = validate_fan(&pl.pair.m, fan) {
        failures.push(e);
    }
    cases += 1;
    let minimal = pl.poset.minimal_elements();
    if minimal.len() != pl.depth() + 1 {
        failures.push(format!(
            "{} minimal orbits, expected {}",
            minimal.len(),
            pl.depth() + 1
        ));
    }
    Check::finish(name, cases, failures)
}

fn check_embedding_fans(pl: &Pipeline) -> Check {
    let name = "embedding-fans";
    let mut cases = 0;
    let mut failures = Vec::new();
    let expected: [(&str, &crate::fan::ColoredFan, Vec<Color>); 4] = [
        ("E", &pl.fans.e, vec![Color::SPlus, Color::SMinus]),
        ("E-", &pl.fans.e_minus, vec![Color::SPlus]),
        ("E+", &pl.fans.e_plus, vec![Color::SMinus]),
        ("E'", &pl.fans.e_prime, vec![]),
    ];
    for (tag, fan, colors) in expected {
        cases += 1;
        if let Err(e) = validate_fan(&pl.pair.m, fan) {
            failures.push(format!("{tag}: {e}"));
        }
        cases += 1;
        let full = fan.maximal_cones().next().unwrap();
        if full.colors != colors.iter().copied().collect() {
            failures.push(format!("{tag}: unexpected color set"));
        }
        cases += 1;
        if !fan.cones.iter().any(|c| c.rays.is_empty()) {
            failures.push(format!("{tag}: zero cone missing"));
        }
    }
    Check::finish(name, cases, failures)
}

fn check_pairing_signs(pl: &Pipeline) -> Check {
    let name = "valuation-pairing-signs";
    let top = pl.depth() + 1;
    let mut cases = 0;
    let mut failures = Vec::new();
    for j in 0..=top {
        for i in 0..=top {
            cases += 1;
            let v = match valuation_pairing(&pl.pair, &pl.hj, &pl.seq, j, i) {
                Ok(v) => v,
                Err(e) => {
                    failures.push(format!("({j},{i}): {e}"));
                    continue;
                }
            };
            let ok = match i.cmp(&j) {
                std::cmp::Ordering::Greater => v.is_positive(),
                std::cmp::Ordering::Equal => v.is_zero(),
                std::cmp::Ordering::Less => v.is_negative(),
            };
            if !ok {
                failures.push(format!("sign pattern fails at (j, i) = ({j}, {i})"));
            }
            if i == j + 1 && !v.is_one() {
                failures.push(format!("adjacent value at (j, {i}) is {v}, not 1"));
            }
        }
    }
    Check::finish(name, cases, failures)
}

fn check_global_generation(pl: &Pipeline) -> Check {
    let name = "global-generation";
    let gg = &pl.global_generation;
    if gg.ok() {
        Check::pass(name, (pl.depth() as u64 + 1) * (pl.depth() as u64 + 1) + pl.depth() as u64 + 1)
    } else {
        Check::fail(name, 1, gg.failures.join(" | "))
    }
}

fn check_semigroup(pl: &Pipeline) -> Check {
    let name = "semigroup-generators";
    let mut cases = 0;
    let mut failures = Vec::new();
    for (u1, u2) in &pl.sg.gens {
        cases += 1;
        if !semigroup_contains(&pl.pair, u1, u2) {
            failures.push(format!("({u1}, {u2}) is not a member"));
        }
    }
    // removing any generator loses it: it is not a sum of the others
    for (drop_idx, target) in pl.sg.gens.iter().enumerate() {
        cases += 1;
        let others: Vec<_> = pl
            .sg
            .gens
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != drop_idx)
            .map(|(_, g)| g.clone())
            .collect();
        let mut reachable = std::collections::HashSet::new();
        let mut frontier = vec![(Int::zero(), Int::zero())];
        let mut hit = false;
        while let Some((x1, x2)) = frontier.pop() {
            for (g1, g2) in &others {
                let y = (&x1 + g1, &x2 + g2);
                if y.0 <= target.0 && y.1 <= target.1 && reachable.insert(y.clone()) {
                    if y.0 == target.0 && y.1 == target.1 {
                        hit = true;
                    }
                    frontier.push(y);
                }
            }
        }
        if hit {
            failures.push(format!("generator ({}, {}) is redundant", target.0, target.1));
        }
    }
    Check::finish(name, cases, failures)
}

fn check_multiplicativity(pl: &Pipeline) -> Check {
    let name = "label-multiplicativity";
    let pair = &pl.pair;
    let qp = pair.q_minus_p();
    let mut labels = Vec::new();
    let mut n = -qp.clone();
    while n <= qp {
        let mut c = -pair.m.clone();
        let ctop = int(2) * &pair.m;
        while c <= ctop {
            if let Ok(omegas) = fiber_omegas(pair, &n, &c) {
                for w in omegas {
                    labels.push(LambdaLabel::new(n.clone(), c.clone(), w));
                }
            }
            c += 1;
        }
        n += 1;
    }
    let mut cases = 0;
    let mut failures = Vec::new();
    for a in &labels {
        for b in &labels {
            let sum = a.add(b);
            if !lambda_member(pair, &sum) {
                failures.push(format!("sum of members {a} + {b} escapes the lattice"));
                continue;
            }
            cases += 1;
            let fa = f_lambda(pair, a).unwrap();
            let fb = f_lambda(pair, b).unwrap();
            if fa.mul(&fb) != f_lambda(pair, &sum).unwrap() {
                failures.push(format!("multiplicativity fails at {a}, {b}"));
            }
        }
    }
    Check::finish(name, cases, failures)
}

fn check_omega_min_boundary(pl: &Pipeline, nmax: &Int, cmax: &Int) -> Check {
    let name = "omega-min-boundary";
    let pair = &pl.pair;
    let qp = pair.q_minus_p();
    let mut cases = 0;
    let mut failures = Vec::new();
    let mut n = -nmax.clone();
    while n <= *nmax {
        let mut c = -cmax.clone();
        while c <= *cmax {
            if let Ok(omegas) = fiber_omegas(pair, &n, &c) {
                let wmin = omegas.first().unwrap().clone();
                for w in omegas {
                    cases += 1;
                    let boundary = &n + &w < qp;
                    if boundary != (w == wmin) {
                        failures.push(format!("boundary criterion fails at ({n}, {c}, {w})"));
                    }
                }
            }
            c += 1;
        }
        n += 1;
    }
    Check::finish(name, cases, failures)
}

fn check_omega_min_additivity(pl: &Pipeline) -> Check {
    let name = "omega-min-additivity";
    let pair = &pl.pair;
    let qp = pair.q_minus_p();
    let mut cases = 0;
    let mut failures = Vec::new();

    // nonnegative window for the zero-weight fibers
    let mut c = Int::zero();
    let ctop = &pair.m * (pl.hj.pconv.last().unwrap() + 2);
    while c <= ctop {
        if let Ok(w) = omega_min(pair, &Int::zero(), &c) {
            cases += 1;
            if w.is_negative() || w >= qp {
                failures.push(format!("zero-weight minimum {w} escapes [0, q-p) at c = {c}"));
            }
        }
        c += 1;
    }

    let span = {
        let cap = Int::from(&pl.inv.b + 2).min(int(6));
        &pair.m * (int(2) + cap)
    };
    let mut fibers = Vec::new();
    let mut n = -qp.clone();
    while n <= qp {
        let mut c = -int(2) * &pair.m;
        while c <= span {
            if let Ok(w) = omega_min(pair, &n, &c) {
                fibers.push((n.clone(), c.clone(), w));
            }
            c += 1;
        }
        n += 1;
    }
    for (n1, c1, w1) in &fibers {
        for (n2, c2, w2) in &fibers {
            cases += 1;
            let sum_min = omega_min(pair, &(n1 + n2), &(c1 + c2)).unwrap();
            let additive = sum_min == w1 + w2;
            let small = &(&(w1 + w2) + n1) + n2 < qp;
            if additive != small {
                failures.push(format!(
                    "additivity criterion fails at ({n1}, {c1}), ({n2}, {c2})"
                ));
            }
        }
    }
    Check::finish(name, cases, failures)
}

/// Dumb enumeration of the largest omega: walk the third exponent upward
/// from its smallest admissible value and keep everything with a
/// nonnegative first exponent.
fn omega_max_oracle(pair: &PopovPair, n: &Int, c: &Int) -> Option<Int> {
    let qp = pair.q_minus_p();
    let mut d3 = if c.is_negative() { -c.clone() } else { Int::zero() };
    let mut best: Option<Int> = None;
    loop {
        let omega = &pair.p * c - &qp * &d3;
        if (n + &omega).is_negative() {
            return best;
        }
        best = Some(best.map_or(omega.clone(), |b| b.max(omega)));
        d3 += 1;
    }
}

fn check_omega_max(pl: &Pipeline, nmax: &Int, cmax: &Int) -> Check {
    let name = "omega-max-formula";
    let pair = &pl.pair;
    let mut cases = 0;
    let mut failures = Vec::new();
    let mut n = -nmax.clone();
    while n <= *nmax {
        let mut c = -cmax.clone();
        while c <= *cmax {
            cases += 1;
            let formula = omega_max(pair, &n, &c).ok();
            let oracle = omega_max_oracle(pair, &n, &c);
            if formula != oracle {
                failures.push(format!(
                    "formula {formula:?} vs enumeration {oracle:?} at ({n}, {c})"
                ));
            }
            c += 1;
        }
        n += 1;
    }
    Check::finish(name, cases, failures)
}

fn check_window_remainder(pl: &Pipeline) -> Vec<Check> {
    let (hj, inv) = (&pl.hj, &pl.inv);
    let r = hj.depth();
    let applicable: Vec<(usize, usize)> = (2..=r + 1)
        .filter_map(|i| theta_anchor(hj, i).map(|l| (i, l)))
        .collect();
    if applicable.is_empty() {
        return vec![Check::skipped(
            "window-remainder",
            "no index satisfies the window hypotheses",
        )];
    }
    let mut base_cases = 0;
    let mut base_failures = Vec::new();
    let mut inj_cases = 0;
    let mut inj_failures = Vec::new();
    let mut low_cases = 0;
    let mut low_failures = Vec::new();
    let mut max_cases = 0;
    let mut max_failures = Vec::new();
    for &(i, l) in &applicable {
        let width = (&hj.pconv[i] - &hj.pconv[i - 1]).to_i64().unwrap();
        let tprev = &hj.tchain[i - 1];
        base_cases += 1;
        if theta(inv, hj, i, &Int::zero()).unwrap() != *tprev {
            base_failures.push(format!("base value differs at index {i}"));
        }
        let values: Vec<Int> = (0..width)
            .map(|x| theta(inv, hj, i, &int(x)).unwrap())
            .collect();
        for (x1, v1) in values.iter().enumerate() {
            for (x2, v2) in values.iter().enumerate().skip(x1 + 1) {
                inj_cases += 1;
                if v1 == v2 {
                    inj_failures.push(format!("collision at i = {i}: x = {x1}, {x2}"));
                }
            }
        }
        for (x, v) in values.iter().enumerate() {
            low_cases += 1;
            if v < tprev || (v == tprev) != (x == 0) {
                low_failures.push(format!("lower bound fails at i = {i}, x = {x}"));
            }
        }
        for j in 1..l {
            max_cases += 1;
            let pj1 = hj.pconv[j + 1].to_i64().unwrap();
            let observed = (0..pj1)
                .map(|x| theta(inv, hj, i, &int(x)).unwrap())
                .max()
                .unwrap();
            let at_gap = theta(inv, hj, i, &(&hj.pconv[j + 1] - &hj.pconv[j])).unwrap();
            let closed = tprev + &inv.b - &hj.tchain[j] + &hj.tchain[j + 1];
            if observed != at_gap || observed != closed {
                max_failures.push(format!("maximum fails at i = {i}, j = {j}"));
            }
        }
    }
    vec![
        Check::finish("window-remainder-base", base_cases, base_failures),
        Check::finish("window-remainder-injective", inj_cases, inj_failures),
        Check::finish("window-remainder-lower-bound", low_cases, low_failures),
        Check::finish("window-remainder-maxima", max_cases, max_failures),
    ]
}

fn check_remainder_corollaries(pl: &Pipeline) -> Vec<Check> {
    let (pair, hj, inv, seq) = (&pl.pair, &pl.hj, &pl.inv, &pl.seq);
    let r = hj.depth();
    let qp = pair.q_minus_p();

    let mut conv_cases = 0;
    let mut conv_failures = Vec::new();
    let mut up_cases = 0;
    let mut up_failures = Vec::new();
    let mut shift_cases = 0;
    let mut shift_failures = Vec::new();
    let mut window_cases = 0;
    let mut window_failures = Vec::new();
    for i in 1..=r + 1 {
        conv_cases += 1;
        if rem(&(&inv.t * &hj.pconv[i]), &inv.b).unwrap() != hj.tchain[i] {
            conv_failures.push(format!("convergent remainder differs at index {i}"));
        }
        let pi = hj.pconv[i].to_i64().unwrap();
        for x in 1..pi {
            let x = int(x);
            let rx = rem(&(&inv.t * &x), &inv.b).unwrap();
            conv_cases += 1;
            if rx < hj.tchain[i - 1] {
                conv_failures.push(format!("lower bound fails at i = {i}, x = {x}"));
            }
            up_cases += 1;
            if rx > &inv.b + &hj.tchain[i] - &hj.tchain[i - 1] {
                up_failures.push(format!("upper bound fails at i = {i}, x = {x}"));
            }
            shift_cases += 1;
            let pmx = &pair.p * &pair.m * &x;
            let lhs = rem(&(&pmx + &seq.n[i]), &qp).unwrap();
            let rhs = &seq.n[i] + rem(&pmx, &qp).unwrap();
            if lhs != rhs {
                shift_failures.push(format!("shift identity fails at i = {i}, x = {x}"));
            }
            window_cases += 1;
            let w = omega_min(pair, &Int::zero(), &(&pair.m * &x)).unwrap();
            let lo = &seq.n[i - 1] - &seq.n[i];
            let hi = &qp - &seq.n[i - 1];
            if w < lo || w > hi {
                window_failures.push(format!("window bound fails at i = {i}, x = {x}"));
            }
        }
    }
    vec![
        Check::finish("remainder-convergent", conv_cases, conv_failures),
        Check::finish("remainder-upper-bound", up_cases, up_failures),
        Check::finish("remainder-shift", shift_cases, shift_failures),
        Check::finish("omega-min-window", window_cases, window_failures),
    ]
}

fn check_module_generation(pl: &Pipeline, cmax: &Int) -> Check {
    let name = "module-generation";
    let mut cases = 0;
    let mut failures = Vec::new();
    for i in 0..=pl.depth() {
        match check_generation(&pl.pair, &pl.hj, &pl.seq, i, cmax) {
            Ok(res) => {
                cases += res.witnesses.len() as u64;
                if !res.ok {
                    failures.push(format!(
                        "no factorization for {} at index {i}",
                        res.counterexample.unwrap()
                    ));
                }
            }
            Err(e) => failures.push(format!("index {i}: {e}")),
        }
    }
    Check::finish(name, cases, failures)
}

fn check_presentations(pl: &Pipeline, opts: &VerifyOptions) -> Result<Check, Error> {
    let name = "presentation-equality";
    let mut cases = 0;
    let mut failures = Vec::new();
    for spec in &pl.ideals {
        let Some(f_reduced) = spec.f_reduced.as_ref() else {
            continue;
        };
        cases += 1;
        let main = effective_reduced(pl, spec, opts.mutation)?;
        let alt = if matches!(opts.mutation, Some(Mutation::DropInvariantGenerator(_)))
            && spec.family == Family::J0
            && spec.index == Some(1)
        {
            // the corruption targets the alternative presentation itself;
            // compare it against the intact definitional list
            spec.reduced.clone()
        } else {
            f_reduced.clone()
        };
        if !reduced_ideals_equal(&main, &alt, opts.completion_budget)? {
            failures.push(format!("presentations of {} differ", spec.name()));
        }
    }
    Ok(Check::finish(name, cases, failures))
}

fn check_hilbert(pl: &Pipeline, opts: &VerifyOptions, nmax: &Int) -> Result<Check, Error> {
    let name = "hilbert-dimension";
    let mut cases = 0;
    let mut failures = Vec::new();
    for spec in &pl.ideals {
        let gens = effective_reduced(pl, spec, opts.mutation)?;
        let sys = complete_rewrite_system(&gens, opts.completion_budget)?;
        let mut n = -nmax.clone();
        while n <= *nmax {
            let mut d = Int::zero();
            while d < pl.pair.m {
                cases += 1;
                let w = WeightLabel::new(&pl.pair.m, n.clone(), &d);
                let (dim, stabilized, bound) = weight_space_dim_auto(&pl.pair, &sys, &w)?;
                if dim != 1 || !stabilized {
                    failures.push(format!(
                        "{} at weight ({n}, {d}): dimension {dim}{} within c <= {bound}",
                        spec.name(),
                        if stabilized { "" } else { ", not stabilized" },
                    ));
                }
                d += 1;
            }
            n += 1;
        }
    }
    Ok(Check::finish(name, cases, failures))
}

fn check_membership_oracle(pl: &Pipeline, opts: &VerifyOptions) -> Result<Check, Error> {
    let name = "membership-oracle";
    let pair = &pl.pair;
    let qp = pair.q_minus_p();
    let xmax: Int = pl.hj.pconv.last().unwrap() + 2;
    let xmax = xmax.to_i64().expect("convergent exceeds enumerable range");
    let mut cases = 0;
    let mut failures = Vec::new();
    for spec in &pl.ideals {
        if spec.family.is_hypersurface_family() {
            continue;
        }
        let i = spec.index.unwrap();
        let gens = effective_reduced(pl, spec, opts.mutation)?;
        let sys = complete_rewrite_system(&gens, opts.completion_budget)?;
        let mut n = Int::zero();
        while n < qp {
            for x in 0..=xmax {
                let c = &pair.m * int(x);
                let Ok(omegas) = fiber_omegas(pair, &n, &c) else {
                    continue;
                };
                for w in omegas {
                    let lam = LambdaLabel::new(n.clone(), c.clone(), w);
                    let Some(claim) =
                        structural_membership(pair, &pl.hj, &pl.seq, &lam, i, spec.family)
                    else {
                        continue;
                    };
                    cases += 1;
                    let mon = f_lambda(pair, &lam)?;
                    if claim != monomial_in_ideal(&mon, &sys) {
                        failures.push(format!(
                            "{} disagrees with rewriting at {lam}",
                            spec.name()
                        ));
                    }
                }
            }
            n += 1;
        }
    }
    Ok(Check::finish(name, cases, failures))
}

fn check_fixed_points(pl: &Pipeline, opts: &VerifyOptions) -> Result<Check, Error> {
    let name = "fixed-point-count";
    match borel_fixed_points(
        &pl.pair,
        &pl.inv,
        &pl.hj,
        &pl.seq,
        &pl.sg,
        opts.completion_budget,
    ) {
        Ok(points) => {
            if points.len() == pl.depth() + 1 {
                Ok(Check::pass(name, points.len() as u64))
            } else {
                Ok(Check::fail(
                    name,
                    points.len() as u64,
                    format!("{} fixed points, expected {}", points.len(), pl.depth() + 1),
                ))
            }
        }
        Err(Error::BudgetExceeded { rules }) => Err(Error::BudgetExceeded { rules }),
        Err(e) => Ok(Check::fail(name, 0, e.to_string())),
    }
}

fn check_tangent(pl: &Pipeline, opts: &VerifyOptions) -> Result<Check, Error> {
    let name = "tangent-dimension";
    let mut cases = 0;
    let mut failures = Vec::new();
    for i in 1..=pl.depth() + 1 {
        cases += 1;
        match tangent_dimension(
            &pl.pair,
            &pl.inv,
            &pl.hj,
            &pl.seq,
            &pl.sg,
            i,
            opts.completion_budget,
        ) {
            Ok(3) => {}
            Ok(dim) => failures.push(format!("dimension {dim} at index {i}")),
            Err(Error::BudgetExceeded { rules }) => {
                return Err(Error::BudgetExceeded { rules })
            }
            Err(e) => failures.push(format!("index {i}: {e}")),
        }
    }
    Ok(Check::finish(name, cases, failures))
}

fn check_coupling() -> Check {
    let name = "coupling-equivariance";
    fn compositions(total: u64) -> Vec<Vec<u64>> {
        if total == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for first in 1..=total {
            for rest in compositions(total - first) {
                let mut c = vec![first];
                c.extend(rest);
                out.push(c);
            }
        }
        out
    }
    let mut cases = 0;
    let mut failures = Vec::new();
    for n in 1..=8u64 {
        for part in compositions(n) {
            for i in 0..n {
                cases += 1;
                let lhs = lowering_action(&cg_vector(&part, i).unwrap(), &part);
                let rhs = cg_vector(&part, i + 1)
                    .unwrap()
                    .scaled(&num::BigRational::from(int((n - i) as i64)));
                if lhs != rhs {
                    failures.push(format!("equivariance fails for {part:?} at index {i}"));
                }
            }
        }
    }
    Check::finish(name, cases, failures)
}

fn check_labels_roundtrip(pl: &Pipeline, nmax: &Int) -> Check {
    let name = "label-roundtrip";
    let pair = &pl.pair;
    let mut cases = 0;
    let mut failures = Vec::new();
    let cap = nmax.to_i64().unwrap_or(8).min(12);
    for d0 in 0..=cap {
        for d1 in 0..=cap {
            for d3 in 0..=cap {
                cases += 1;
                let mon = Monomial3::new(d0, d1, d3);
                let lam = mu(pair, &mon);
                if !lambda_member(pair, &lam) || f_lambda(pair, &lam).unwrap() != mon {
                    failures.push(format!("roundtrip fails at ({d0}, {d1}, {d3})"));
                }
            }
        }
    }
    Check::finish(name, cases, failures)
}

/// Runs every suite for one pair.
pub fn verify_pair(pair: &PopovPair, opts: &VerifyOptions) -> Result<VerifyReport, Error> {
    let pl = Pipeline::new(pair)?;
    let nmax = opts.max_weight.clone().unwrap_or_else(|| default_max_weight(&pl));
    let cmax = opts.c_bound.clone().unwrap_or_else(|| default_c_bound(&pl));

    let mut checks = vec![
        check_expansion(&pl),
        check_sequences(&pl),
        check_resolution_fan(&pl),
        check_embedding_fans(&pl),
        check_pairing_signs(&pl),
        check_global_generation(&pl),
        check_semigroup(&pl),
        check_labels_roundtrip(&pl, &nmax),
        check_multiplicativity(&pl),
        check_omega_min_boundary(&pl, &nmax, &cmax),
        check_omega_min_additivity(&pl),
        check_omega_max(&pl, &nmax, &cmax),
    ];
    checks.extend(check_window_remainder(&pl));
    checks.extend(check_remainder_corollaries(&pl));
    checks.push(check_module_generation(&pl, &cmax));
    checks.push(check_presentations(&pl, opts)?);
    if opts.hilbert {
        checks.push(check_hilbert(&pl, opts, &nmax)?);
    }
    checks.push(check_membership_oracle(&pl, opts)?);
    checks.push(check_fixed_points(&pl, opts)?);
    checks.push(check_tangent(&pl, opts)?);
    checks.push(check_coupling());

    Ok(VerifyReport {
        pair: pl.pair.clone(),
        toric: pl.toric,
        depth: pl.depth(),
        checks,
    })
}

/// The cheap structural subset re-asserted when assembling a report.
pub fn consistency_checks(pl: &Pipeline, budget: usize) -> Result<Vec<Check>, Error> {
    let opts = VerifyOptions {
        completion_budget: budget,
        ..VerifyOptions::default()
    };
    Ok(vec![
        check_expansion(pl),
        check_sequences(pl),
        check_resolution_fan(pl),
        check_embedding_fans(pl),
        check_pairing_signs(pl),
        check_global_generation(pl),
        check_semigroup(pl),
        check_presentations(pl, &opts)?,
        check_fixed_points(pl, &opts)?,
        check_tangent(pl, &opts)?,
    ])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepFilter {
    All,
    ToricOnly,
    NonToricOnly,
}

#[derive(Debug, Clone)]
pub struct SweepRow {
    pub p: i64,
    pub q: i64,
    pub m: i64,
    pub toric: bool,
    pub depth: usize,
    pub passed: bool,
    pub failed_checks: Vec<String>,
}

#[derive(Debug, Clone)]
pub struct SweepReport {
    pub rows: Vec<SweepRow>,
}

impl SweepReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.passed)
    }
}

/// Enumerates the valid pairs with `q <= q_max`, `m <= m_max`, `p < q`, in
/// lexicographic `(q, p, m)` order.
pub fn sweep_pairs(q_max: i64, m_max: i64) -> Vec<(i64, i64, i64)> {
    let mut out = Vec::new();
    for q in 2..=q_max {
        for p in 1..q {
            if int(p).gcd(&int(q)).is_one() {
                for m in 1..=m_max {
                    out.push((q, p, m));
                }
            }
        }
    }
    out
}

/// Runs `verify_pair` over the grid and aggregates one row per pair.
pub fn sweep(
    q_max: i64,
    m_max: i64,
    filter: SweepFilter,
    opts: &VerifyOptions,
) -> Result<SweepReport, Error> {
    let mut rows = Vec::new();
    for (q, p, m) in sweep_pairs(q_max, m_max) {
        let pair = PopovPair::new(p, q, m)?;
        let toric = is_toric_pair(&pair)?;
        match filter {
            SweepFilter::ToricOnly if !toric => continue,
            SweepFilter::NonToricOnly if toric => continue,
            _ => {}
        }
        let report = verify_pair(&pair, opts)?;
        rows.push(SweepRow {
            p,
            q,
            m,
            toric: report.toric,
            depth: report.depth,
            passed: report.passed(),
            failed_checks: report
                .checks
                .iter()
                .filter(|c| c.status == CheckStatus::Fail)
                .map(|c| c.name.clone())
                .collect(),
        });
    }
    Ok(SweepReport { rows })
}

fn is_toric_pair(pair: &PopovPair) -> Result<bool, Error> {
    crate::pair::is_toric(pair)
}
