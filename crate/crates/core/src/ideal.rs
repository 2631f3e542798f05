//! The equivariant ideal families attached to a pair: definitional
//! generator lists over the five-variable ring, their images in a
//! three-variable ring, a confluent rewriting engine for monomial
//! membership and truncated weight-space dimensions, the fixed-point
//! ideals, and the tangent-space dimension at each of them.
//!
//! Generators are monomials and pure differences of monomials with unit
//! coefficients; completion keeps that shape, so every rule rewrites a
//! monomial to a monomial or to zero.

use std::cmp::Ordering;
use std::collections::{HashMap, HashSet, VecDeque};

use num::{BigRational, One, Signed, ToPrimitive, Zero};

use crate::error::Error;
use crate::exact::{int, HjExpansion, Int};
use crate::lattice::{
    big_f, c_min, f_lambda, fiber_omegas, lambda_c, lambda_member, omega_min, LambdaLabel,
    Monomial3, WeightLabel,
};
use crate::pair::{DerivedInvariants, PopovPair, SemigroupGenerators, SequenceTable};

pub const DEFAULT_COMPLETION_BUDGET: usize = 10_000;

/// The four ideal families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Family {
    I0,
    I1,
    J0,
    J1,
}

impl Family {
    pub fn is_hypersurface_family(self) -> bool {
        matches!(self, Family::I0 | Family::I1)
    }

    pub fn tag(self) -> &'static str {
        match self {
            Family::I0 => "I0",
            Family::I1 => "I1",
            Family::J0 => "J0",
            Family::J1 => "J1",
        }
    }
}

/// Exponents of a monomial in `X0..X4`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial5(pub [Int; 5]);

impl Monomial5 {
    pub fn new(e: [i64; 5]) -> Self {
        Monomial5(e.map(int))
    }

    pub fn display(&self) -> String {
        let vars = ["X0", "X1", "X2", "X3", "X4"];
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
            "1".into()
        } else {
            parts.join("*")
        }
    }
}

/// A generator: a monomial or the pure difference `lhs - rhs`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Gen5 {
    Mono(Monomial5),
    Diff(Monomial5, Monomial5),
}

impl Gen5 {
    pub fn display(&self) -> String {
        match self {
            Gen5::Mono(m) => m.display(),
            Gen5::Diff(a, b) => format!("{} - {}", a.display(), b.display()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Gen3 {
    Mono(Monomial3),
    Diff(Monomial3, Monomial3),
}

impl Gen3 {
    pub fn display(&self, vars: [&str; 3]) -> String {
        match self {
            Gen3::Mono(m) => m.display(vars),
            Gen3::Diff(a, b) => format!("{} - {}", a.display(vars), b.display(vars)),
        }
    }
}

/// Which three variables survive the reduction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReducedRing {
    /// `C[X0, X1, X3]`, the image after killing `X2` and `X4`.
    X0X1X3,
    /// `C[X0, X1, X4]`, the image after killing `X2` and `X3`.
    X0X1X4,
}

impl ReducedRing {
    pub fn vars(self) -> [&'static str; 3] {
        match self {
            ReducedRing::X0X1X3 => ["X0", "X1", "X3"],
            ReducedRing::X0X1X4 => ["X0", "X1", "X4"],
        }
    }

    fn kept_slots(self) -> [usize; 3] {
        match self {
            ReducedRing::X0X1X3 => [0, 1, 3],
            ReducedRing::X0X1X4 => [0, 1, 4],
        }
    }

    fn killed_slots(self) -> [usize; 2] {
        match self {
            ReducedRing::X0X1X3 => [2, 4],
            ReducedRing::X0X1X4 => [2, 3],
        }
    }
}

fn project5(ring: ReducedRing, m: &Monomial5) -> Option<Monomial3> {
    if ring.killed_slots().iter().any(|&s| !m.0[s].is_zero()) {
        return None;
    }
    let k = ring.kept_slots();
    Some(Monomial3([
        m.0[k[0]].clone(),
        m.0[k[1]].clone(),
        m.0[k[2]].clone(),
    ]))
}

fn reduce_gens(ring: ReducedRing, gens: &[Gen5]) -> Vec<Gen3> {
    let mut out = Vec::new();
    for g in gens {
        match g {
            Gen5::Mono(m) => {
                if let Some(m3) = project5(ring, m) {
                    out.push(Gen3::Mono(m3));
                }
            }
            Gen5::Diff(a, b) => match (project5(ring, a), project5(ring, b)) {
                (Some(a3), Some(b3)) => out.push(Gen3::Diff(a3, b3)),
                (Some(a3), None) => out.push(Gen3::Mono(a3)),
                (None, Some(b3)) => out.push(Gen3::Mono(b3)),
                (None, None) => {}
            },
        }
    }
    out
}

/// A member of one of the ideal families, carrying the definitional
/// generators, the alternative presentation through the distinguished
/// invariant monomials `F_1..F_{b-1}` (for the `J` families), and the
/// images of both in the three-variable ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdealSpec {
    pub family: Family,
    /// The index `i` for the `J` families.
    pub index: Option<usize>,
    pub generators: Vec<Gen5>,
    pub f_generators: Option<Vec<Gen5>>,
    pub ring: ReducedRing,
    pub reduced: Vec<Gen3>,
    pub f_reduced: Option<Vec<Gen3>>,
}

impl IdealSpec {
    pub fn name(&self) -> String {
        match self.index {
            Some(i) => format!("{}^{}", self.family.tag(), i),
            None => self.family.tag().to_string(),
        }
    }
}

fn mono5_x0(e: Int) -> Monomial5 {
    Monomial5([e, Int::zero(), Int::zero(), Int::zero(), Int::zero()])
}

fn mono5_x1x3(e1: Int, e3: Int) -> Monomial5 {
    Monomial5([Int::zero(), e1, Int::zero(), e3, Int::zero()])
}

fn lift3(ring: ReducedRing, m: &Monomial3) -> Monomial5 {
    let mut e = [
        Int::zero(),
        Int::zero(),
        Int::zero(),
        Int::zero(),
        Int::zero(),
    ];
    for (slot, v) in ring.kept_slots().into_iter().zip(m.0.iter()) {
        e[slot] = v.clone();
    }
    Monomial5(e)
}

/// Builds a member of one of the four families. The `J` families take
/// `1 <= i <= r+1`; at `i = r+1` the semigroup part of the generator list
/// is already implied and is omitted, matching the definitional
/// presentation. The hypersurface families ignore `i`.
pub fn build_ideal(
    family: Family,
    i: usize,
    pair: &PopovPair,
    inv: &DerivedInvariants,
    seq: &SequenceTable,
    sg: &SemigroupGenerators,
) -> Result<IdealSpec, Error> {
    let qp = pair.q_minus_p();
    match family {
        Family::I0 | Family::I1 => {
            let ring = ReducedRing::X0X1X4;
            let hyper = Gen5::Diff(
                mono5_x0(qp.clone()),
                Monomial5([
                    Int::zero(),
                    Int::one(),
                    Int::zero(),
                    Int::zero(),
                    Int::one(),
                ]),
            );
            let x2 = Gen5::Mono(Monomial5::new([0, 0, 1, 0, 0]));
            let x3 = Gen5::Mono(Monomial5::new([0, 0, 0, 1, 0]));
            let marker = Monomial5([
                &pair.m * &pair.p,
                pair.m.clone(),
                Int::zero(),
                Int::zero(),
                Int::zero(),
            ]);
            let last = match family {
                Family::I1 => Gen5::Diff(Monomial5::new([0, 0, 0, 0, 0]), marker),
                _ => Gen5::Mono(marker),
            };
            let generators = vec![hyper, x2, x3, last];
            let reduced = reduce_gens(ring, &generators);
            Ok(IdealSpec {
                family,
                index: None,
                generators,
                f_generators: None,
                ring,
                reduced,
                f_reduced: None,
            })
        }
        Family::J0 | Family::J1 => {
            let r = seq.last_index() - 1;
            if i < 1 || i > r + 1 {
                return Err(Error::IndexOutOfRange(format!(
                    "family index must lie in 1..={}, got {i}",
                    r + 1
                )));
            }
            let ring = ReducedRing::X0X1X3;
            let binomial_side = mono5_x1x3(seq.e[i].clone(), seq.l[i].clone());
            let fourth = match family {
                Family::J1 => Gen5::Diff(mono5_x0(seq.n[i].clone()), binomial_side),
                _ => Gen5::Mono(binomial_side),
            };
            let mut core = vec![
                Gen5::Mono(mono5_x0(seq.n[i - 1].clone())),
                Gen5::Mono(Monomial5::new([0, 0, 1, 0, 0])),
                Gen5::Mono(Monomial5::new([0, 0, 0, 0, 1])),
                fourth,
            ];
            let mut generators = core.clone();
            if i <= r {
                for (u1, u2) in &sg.gens {
                    let x0 = &pair.p * u1 - &pair.q * u2;
                    generators.push(Gen5::Mono(Monomial5([
                        x0,
                        u1.clone(),
                        Int::zero(),
                        u2.clone(),
                        Int::zero(),
                    ])));
                }
            }
            let mut j = Int::one();
            while j < inv.b {
                core.push(Gen5::Mono(lift3(ring, &big_f(pair, inv, &j)?)));
                j += 1;
            }
            let f_generators = core;
            let reduced = reduce_gens(ring, &generators);
            let f_reduced = reduce_gens(ring, &f_generators);
            Ok(IdealSpec {
                family,
                index: Some(i),
                generators,
                f_generators: Some(f_generators),
                ring,
                reduced,
                f_reduced: Some(f_reduced),
            })
        }
    }
}

/// Graded lexicographic order with `X0 > X1 >` last variable.
pub fn grlex_cmp(a: &Monomial3, b: &Monomial3) -> Ordering {
    a.degree().cmp(&b.degree()).then_with(|| a.0.cmp(&b.0))
}

/// One oriented rule: the left side rewrites to the right side, or to
/// zero when `rhs` is `None`. Orientation always decreases `grlex_cmp`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rule {
    pub lhs: Monomial3,
    pub rhs: Option<Monomial3>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RewriteSystem {
    pub rules: Vec<Rule>,
}

/// Reduces `m` to its unique normal form; `None` means the zero class,
/// i.e. membership in the ideal.
pub fn normal_form(m: &Monomial3, sys: &RewriteSystem) -> Option<Monomial3> {
    let mut cur = m.clone();
    'outer: loop {
        for rule in &sys.rules {
            if rule.lhs.divides(&cur) {
                let cof = cur.div(&rule.lhs).unwrap();
                match &rule.rhs {
                    None => return None,
                    Some(r) => {
                        cur = cof.mul(r);
                        continue 'outer;
                    }
                }
            }
        }
        return Some(cur);
    }
}

pub fn monomial_in_ideal(m: &Monomial3, sys: &RewriteSystem) -> bool {
    normal_form(m, sys).is_none()
}

/// A pure difference lies in the ideal exactly when both sides share a
/// normal form.
pub fn difference_in_ideal(a: &Monomial3, b: &Monomial3, sys: &RewriteSystem) -> bool {
    normal_form(a, sys) == normal_form(b, sys)
}

type Equation = (Option<Monomial3>, Option<Monomial3>);

fn overlap_equation(r1: &Rule, r2: &Rule) -> Option<Equation> {
    // disjoint supports always join; skip those pairs
    let coprime = r1
        .lhs
        .0
        .iter()
        .zip(r2.lhs.0.iter())
        .all(|(a, b)| a.is_zero() || b.is_zero());
    if coprime {
        return None;
    }
    let lcm = Monomial3([
        r1.lhs.0[0].clone().max(r2.lhs.0[0].clone()),
        r1.lhs.0[1].clone().max(r2.lhs.0[1].clone()),
        r1.lhs.0[2].clone().max(r2.lhs.0[2].clone()),
    ]);
    let c1 = lcm.div(&r1.lhs).unwrap();
    let c2 = lcm.div(&r2.lhs).unwrap();
    let s1 = r1.rhs.as_ref().map(|r| c1.mul(r));
    let s2 = r2.rhs.as_ref().map(|r| c2.mul(r));
    Some((s1, s2))
}

/// Knuth–Bendix style completion specialised to monomials and pure
/// differences: every critical pair is itself a difference of monomials,
/// so the completed system stays unit-coefficient. Returns an error when
/// the rule budget is exhausted.
pub fn complete_rewrite_system(gens: &[Gen3], budget: usize) -> Result<RewriteSystem, Error> {
    let mut sys = RewriteSystem::default();
    let mut queue: VecDeque<Equation> = gens
        .iter()
        .map(|g| match g {
            Gen3::Mono(m) => (Some(m.clone()), None),
            Gen3::Diff(a, b) => (Some(a.clone()), Some(b.clone())),
        })
        .collect();

    while let Some((a, b)) = queue.pop_front() {
        let na = a.and_then(|x| normal_form(&x, &sys));
        let nb = b.and_then(|x| normal_form(&x, &sys));
        let rule = match (na, nb) {
            (None, None) => continue,
            (Some(x), None) | (None, Some(x)) => Rule { lhs: x, rhs: None },
            (Some(x), Some(y)) => match grlex_cmp(&x, &y) {
                Ordering::Equal => continue,
                Ordering::Greater => Rule { lhs: x, rhs: Some(y) },
                Ordering::Less => Rule { lhs: y, rhs: Some(x) },
            },
        };
        if sys.rules.len() >= budget {
            return Err(Error::BudgetExceeded { rules: sys.rules.len() });
        }
        // retire rules whose left side the new rule reduces
        let mut kept = Vec::with_capacity(sys.rules.len());
        for old in sys.rules.drain(..) {
            if rule.lhs.divides(&old.lhs) {
                queue.push_back((Some(old.lhs), old.rhs));
            } else {
                kept.push(old);
            }
        }
        sys.rules = kept;
        for old in &sys.rules {
            if let Some(eq) = overlap_equation(&rule, old) {
                queue.push_back(eq);
            }
        }
        sys.rules.push(rule);
        // keep right sides fully reduced
        let snapshot = sys.clone();
        for r in &mut sys.rules {
            r.rhs = r.rhs.take().and_then(|m| normal_form(&m, &snapshot));
        }
    }
    Ok(sys)
}

/// Local confluence witness: every overlap of two left sides joins.
/// Completion guarantees this; the check is exposed for the test suites.
pub fn is_locally_confluent(sys: &RewriteSystem) -> bool {
    for (i, r1) in sys.rules.iter().enumerate() {
        for r2 in sys.rules.iter().skip(i) {
            if let Some((a, b)) = overlap_equation(r1, r2) {
                let na = a.and_then(|x| normal_form(&x, sys));
                let nb = b.and_then(|x| normal_form(&x, sys));
                if na != nb {
                    return false;
                }
            }
        }
    }
    true
}

/// Two reduced generating sets present the same ideal: each generator of
/// one reduces to zero (or to an equal pair of normal forms) in the
/// completion of the other.
pub fn reduced_ideals_equal(a: &[Gen3], b: &[Gen3], budget: usize) -> Result<bool, Error> {
    let sys_a = complete_rewrite_system(a, budget)?;
    let sys_b = complete_rewrite_system(b, budget)?;
    let contains = |sys: &RewriteSystem, gens: &[Gen3]| {
        gens.iter().all(|g| match g {
            Gen3::Mono(m) => monomial_in_ideal(m, sys),
            Gen3::Diff(x, y) => difference_in_ideal(x, y, sys),
        })
    };
    Ok(contains(&sys_b, a) && contains(&sys_a, b))
}

/// Truncated dimension of the weight space of the quotient: the number of
/// distinct nonzero normal forms among the monomials of weight `w` with
/// `c <= c_bound`. `stabilized` records that the count was unchanged over
/// the last two increments of `c_bound` by `m`.
pub fn weight_space_dim(
    pair: &PopovPair,
    sys: &RewriteSystem,
    w: &WeightLabel,
    c_bound: &Int,
) -> Result<(usize, bool), Error> {
    let c0 = c_min(pair, w);
    if *c_bound < c0 {
        return Err(Error::InvalidArgument(format!(
            "c bound {c_bound} below the minimal congruent value {c0}"
        )));
    }
    let mut seen: HashSet<Monomial3> = HashSet::new();
    let mut counts: Vec<usize> = Vec::new();
    let mut c = c0;
    while c <= *c_bound {
        for omega in fiber_omegas(pair, &w.n, &c)? {
            let mon = f_lambda(pair, &LambdaLabel::new(w.n.clone(), c.clone(), omega))?;
            if let Some(nf) = normal_form(&mon, sys) {
                seen.insert(nf);
            }
        }
        counts.push(seen.len());
        c += &pair.m;
    }
    let k = counts.len();
    let stabilized = k >= 3 && counts[k - 1] == counts[k - 2] && counts[k - 2] == counts[k - 3];
    Ok((seen.len(), stabilized))
}

/// Growth policy on top of [`weight_space_dim`]: start at
/// `c_min + 4m`, extend by `m` until the count stabilizes or the growth
/// budget runs out. Returns the dimension, the stabilization flag, and
/// the bound that was reached.
pub fn weight_space_dim_auto(
    pair: &PopovPair,
    sys: &RewriteSystem,
    w: &WeightLabel,
) -> Result<(usize, bool, Int), Error> {
    const GROWTH_STEPS: i64 = 64;
    let c0 = c_min(pair, w);
    let mut dims: Vec<usize> = Vec::new();
    let mut seen: HashSet<Monomial3> = HashSet::new();
    let mut c = c0.clone();
    let hard_bound = &c0 + &pair.m * int(4 + GROWTH_STEPS);
    let mut steps = 0i64;
    while c <= hard_bound {
        for omega in fiber_omegas(pair, &w.n, &c)? {
            let mon = f_lambda(pair, &LambdaLabel::new(w.n.clone(), c.clone(), omega))?;
            if let Some(nf) = normal_form(&mon, sys) {
                seen.insert(nf);
            }
        }
        dims.push(seen.len());
        let k = dims.len();
        if steps >= 4 && k >= 3 && dims[k - 1] == dims[k - 2] && dims[k - 2] == dims[k - 3] {
            return Ok((seen.len(), true, c));
        }
        c += &pair.m;
        steps += 1;
    }
    Ok((seen.len(), false, hard_bound))
}

/// The `c` value of the unique weight-`(n, 0)` monomial class surviving
/// in the quotient by the `i`-th monomial fixed-point ideal: `0` below
/// `n_{i-1}`, and `m` times the greedy convergent sum above it.
fn survivor_c(
    pair: &PopovPair,
    hj: &HjExpansion,
    seq: &SequenceTable,
    i: usize,
    n: &Int,
) -> Int {
    let nim1 = &seq.n[i - 1];
    if n < nim1 {
        return Int::zero();
    }
    let mut cur = n.clone();
    let mut psum = Int::zero();
    while cur >= *nim1 {
        let j = (1..i)
            .find(|&j| seq.n[j] <= cur && cur < seq.n[j - 1])
            .expect("descending chain covers [n_{i-1}, q-p)");
        psum += &hj.pconv[j];
        cur -= &seq.n[j];
    }
    &pair.m * psum
}

/// Structural membership of the monomial with label `lam` in the reduced
/// `J`-family ideal, decided by the case analysis on the convergent
/// windows — no rewriting. Returns `None` where the case analysis does
/// not apply; callers fall back to [`normal_form`].
pub fn structural_membership(
    pair: &PopovPair,
    hj: &HjExpansion,
    seq: &SequenceTable,
    lam: &LambdaLabel,
    i: usize,
    family: Family,
) -> Option<bool> {
    if family.is_hypersurface_family() {
        return None;
    }
    let r = hj.depth();
    if i < 1 || i > r + 1 || !lambda_member(pair, lam) {
        return None;
    }
    let qp = pair.q_minus_p();
    if lam.n.is_negative() || lam.n >= qp {
        return None;
    }
    if !(&lam.c % &pair.m).is_zero() {
        return None;
    }
    match family {
        Family::J0 => {
            let cstar = survivor_c(pair, hj, seq, i, &lam.n);
            let wstar = omega_min(pair, &lam.n, &cstar).expect("survivor fiber is nonempty");
            Some(!(lam.c == cstar && lam.omega == wstar))
        }
        Family::J1 => {
            let wmin = omega_min(pair, &lam.n, &lam.c).expect("member fiber is nonempty");
            if lam.omega > wmin {
                // a higher lattice point is a multiple of the pure X0 generator
                return Some(true);
            }
            let x = &lam.c / &pair.m;
            let pi = &hj.pconv[i];
            let ni = &seq.n[i];
            let nim1 = &seq.n[i - 1];
            if x.is_positive() && &x < pi && lam.n < *nim1 {
                Some(true)
            } else if x == *pi && lam.n < *ni {
                Some(true)
            } else if &x > pi && lam.n < *ni {
                Some(true)
            } else if &x > pi && *ni <= lam.n && lam.n < *nim1 && !(&x % pi).is_zero() {
                Some(true)
            } else {
                None
            }
        }
        _ => unreachable!(),
    }
}

/// The fixed-point ideals, one per maximal cone of the resolution fan.
/// Each is checked against the selection pattern: the pure `X0` power
/// enters at indices below `i` and the mixed monomial from `i` on.
pub fn borel_fixed_points(
    pair: &PopovPair,
    inv: &DerivedInvariants,
    hj: &HjExpansion,
    seq: &SequenceTable,
    sg: &SemigroupGenerators,
    budget: usize,
) -> Result<Vec<IdealSpec>, Error> {
    let r = hj.depth();
    let mut out = Vec::with_capacity(r + 1);
    for i in 1..=r + 1 {
        let spec = build_ideal(Family::J0, i, pair, inv, seq, sg)?;
        let sys = complete_rewrite_system(&spec.reduced, budget)?;
        for j in 1..=r + 1 {
            let x0 = Monomial3([seq.n[j].clone(), Int::zero(), Int::zero()]);
            let mixed = Monomial3([Int::zero(), seq.e[j].clone(), seq.l[j].clone()]);
            let in_x0 = monomial_in_ideal(&x0, &sys);
            let in_mixed = monomial_in_ideal(&mixed, &sys);
            if in_x0 != (j < i) || in_mixed != (j >= i) {
                return Err(Error::ConsistencyFailure(format!(
                    "fixed-point pattern fails for {} at j = {j}",
                    spec.name()
                )));
            }
        }
        // the semigroup ideal is contained even where it is left implicit
        for (u1, u2) in &sg.gens {
            let k = Monomial3([&pair.p * u1 - &pair.q * u2, u1.clone(), u2.clone()]);
            if !monomial_in_ideal(&k, &sys) {
                return Err(Error::ConsistencyFailure(format!(
                    "semigroup generator missing from {}",
                    spec.name()
                )));
            }
        }
        out.push(spec);
    }
    Ok(out)
}

fn rational_rank(mut rows: Vec<Vec<BigRational>>) -> usize {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let head = rows[rank][col].clone();
        for r in rank + 1..rows.len() {
            if !rows[r][col].is_zero() {
                let factor = &rows[r][col] / &head;
                for c in col..ncols {
                    let delta = &factor * &rows[rank][c];
                    rows[r][c] = &rows[r][c] - delta;
                }
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

struct RelationBuilder<'a> {
    sys: &'a RewriteSystem,
    n_unknowns: usize,
    rows: Vec<Vec<BigRational>>,
}

impl<'a> RelationBuilder<'a> {
    fn new(sys: &'a RewriteSystem, n_unknowns: usize) -> Self {
        RelationBuilder {
            sys,
            n_unknowns,
            rows: Vec::new(),
        }
    }

    /// One module relation: a signed sum of `unknown * monomial` terms
    /// that must vanish in the quotient. Terms are grouped by the normal
    /// form of their monomial; every class yields one linear equation.
    fn push(&mut self, terms: &[(i64, usize, &Monomial3)]) {
        let mut per_class: HashMap<Monomial3, Vec<BigRational>> = HashMap::new();
        for (sign, unknown, mono) in terms {
            if let Some(nf) = normal_form(mono, self.sys) {
                let row = per_class
                    .entry(nf)
                    .or_insert_with(|| vec![BigRational::zero(); self.n_unknowns]);
                row[*unknown] += BigRational::from(int(*sign));
            }
        }
        self.rows
            .extend(per_class.into_values().filter(|r| r.iter().any(|x| !x.is_zero())));
    }
}

/// Dimension of the space of equivariant module homomorphisms from the
/// `i`-th fixed-point ideal to the quotient ring, computed from the
/// explicit relation system on the generator images. Unknowns are the
/// four coefficients on the distinguished generators plus one per
/// invariant generator `F_j`.
pub fn tangent_dimension(
    pair: &PopovPair,
    inv: &DerivedInvariants,
    hj: &HjExpansion,
    seq: &SequenceTable,
    sg: &SemigroupGenerators,
    i: usize,
    budget: usize,
) -> Result<usize, Error> {
    let r = hj.depth();
    if i < 1 || i > r + 1 {
        return Err(Error::IndexOutOfRange(format!(
            "tangent index must lie in 1..={}, got {i}",
            r + 1
        )));
    }
    let spec = build_ideal(Family::J0, i, pair, inv, seq, sg)?;
    let sys = complete_rewrite_system(&spec.reduced, budget)?;
    let b = inv
        .b
        .to_usize()
        .ok_or_else(|| Error::BoundFailure("b too large for the tangent system".into()))?;
    let n_unknowns = 4 + (b - 1);
    const A1: usize = 0;
    const A2: usize = 1;
    const A3: usize = 2;
    const A4: usize = 3;
    let beta = |j: usize| 3 + j;

    let qp = pair.q_minus_p();
    let x1x3 = Monomial3::new(0, 1, 1);
    if monomial_in_ideal(&x1x3, &sys) {
        return Err(Error::ConsistencyFailure(
            "X1*X3 unexpectedly lies in the fixed-point ideal".into(),
        ));
    }

    let mut builder = RelationBuilder::new(&sys, n_unknowns);

    // image of the hypersurface relation among the generators
    let hmon = Monomial3([
        &qp - &seq.n[i - 1],
        seq.e[i - 1].clone(),
        seq.l[i - 1].clone(),
    ]);
    if i > 1 && !monomial_in_ideal(&hmon, &sys) {
        return Err(Error::ConsistencyFailure(
            "the shifted generator image fails to vanish".into(),
        ));
    }
    builder.push(&[(1, A1, &hmon), (1, A2, &x1x3), (-1, A3, &x1x3)]);

    let pi = &hj.pconv[i];
    let ni = &seq.n[i];
    let ei = &seq.e[i];
    let li = &seq.l[i];
    for j in 1..b {
        let jj = int(j as i64);
        let fj = big_f(pair, inv, &jj)?;
        let (w, d1, d3) = (&fj.0[0], &fj.0[1], &fj.0[2]);
        if jj > *pi {
            let e1: Int = d1 + 1 - ei;
            let e3: Int = d3 + 1 - li;
            if e1.is_negative() || e3.is_negative() {
                return Err(Error::ConsistencyFailure(format!(
                    "invariant generator {j} does not dominate the mixed monomial"
                )));
            }
            let cof = Monomial3([w + ni, e1, e3]);
            if !monomial_in_ideal(&cof, &sys) {
                return Err(Error::ConsistencyFailure(format!(
                    "relation cofactor for generator {j} fails to vanish"
                )));
            }
            builder.push(&[(1, beta(j), &x1x3), (-1, A4, &cof)]);
        } else if jj == *pi {
            let x0qp = Monomial3([qp.clone(), Int::zero(), Int::zero()]);
            if !monomial_in_ideal(&x0qp, &sys) {
                return Err(Error::ConsistencyFailure(
                    "the full X0 power fails to vanish".into(),
                ));
            }
            builder.push(&[(1, beta(j), &x1x3), (-1, A4, &x0qp)]);
        } else {
            if d1 >= ei || d3 >= li {
                return Err(Error::ConsistencyFailure(format!(
                    "invariant generator {j} unexpectedly dominates the mixed monomial"
                )));
            }
            let c = &pair.m * (pi - &jj);
            let lamc = lambda_c(pair, &c)?;
            let flc = f_lambda(pair, &lamc)?;
            if flc != Monomial3([Int::zero(), ei - d1, li - d3]) {
                return Err(Error::ConsistencyFailure(format!(
                    "complementary monomial mismatch at generator {j}"
                )));
            }
            let x0n = Monomial3([w + ni, Int::zero(), Int::zero()]);
            if !monomial_in_ideal(&x0n, &sys) || monomial_in_ideal(&flc, &sys) {
                return Err(Error::ConsistencyFailure(format!(
                    "membership pattern fails at generator {j}"
                )));
            }
            builder.push(&[(1, beta(j), &flc), (-1, A4, &x0n)]);
        }
    }

    Ok(n_unknowns - rational_rank(builder.rows))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::hj_expand;
    use crate::pair::{derive_invariants, eln_sequences, semigroup_generators};

    struct Ctx {
        pair: PopovPair,
        inv: DerivedInvariants,
        hj: HjExpansion,
        seq: SequenceTable,
        sg: SemigroupGenerators,
    }

    fn ctx(p: i64, q: i64, m: i64) -> Ctx {
        let pair = PopovPair::new(p, q, m).unwrap();
        let inv = derive_invariants(&pair).unwrap();
        let hj = hj_expand(&inv.b, &inv.t).unwrap();
        let seq = eln_sequences(&inv, &hj, &pair).unwrap();
        let sg = semigroup_generators(&pair).unwrap();
        Ctx { pair, inv, hj, seq, sg }
    }

    fn displays5(gens: &[Gen5]) -> Vec<String> {
        gens.iter().map(|g| g.display()).collect()
    }

    #[test]
    fn ideal_lists_1_4_2() {
        let c = ctx(1, 4, 2);
        let i1 = build_ideal(Family::I1, 0, &c.pair, &c.inv, &c.seq, &c.sg).unwrap();
        assert_eq!(
            displays5(&i1.generators),
            vec!["X0^3 - X1*X4", "X2", "X3", "1 - X0^2*X1^2"]
        );
        let i0 = build_ideal(Family::I0, 0, &c.pair, &c.inv, &c.seq, &c.sg).unwrap();
        assert_eq!(
            displays5(&i0.generators),
            vec!["X0^3 - X1*X4", "X2", "X3", "X0^2*X1^2"]
        );

        let j11 = build_ideal(Family::J1, 1, &c.pair, &c.inv, &c.seq, &c.sg).unwrap();
        assert_eq!(
            displays5(j11.f_generators.as_ref().unwrap()),
            vec!["X0^3", "X2", "X4", "X0 - X1^3*X3", "X0^2*X1^2", "X0*X1^5*X3"]
        );
        assert_eq!(
            displays5(&j11.generators),
            vec![
                "X0^3",
                "X2",
                "X4",
                "X0 - X1^3*X3",
                "X0^2*X1^2",
                "X0*X1^5*X3",
                "X1^8*X3^2"
            ]
        );

        let j01 = build_ideal(Family::J0, 1, &c.pair, &c.inv, &c.seq, &c.sg).unwrap();
        assert_eq!(
            displays5(j01.f_generators.as_ref().unwrap()),
            vec!["X0^3", "X2", "X4", "X1^3*X3", "X0^2*X1^2", "X0*X1^5*X3"]
        );

        let j12 = build_ideal(Family::J1, 2, &c.pair, &c.inv, &c.seq, &c.sg).unwrap();
        assert_eq!(
            displays5(&j12.generators),
            vec!["X0", "X2", "X4", "1 - X1^8*X3^2"]
        );
        let j02 = build_ideal(Family::J0, 2, &c.pair, &c.inv, &c.seq, &c.sg).unwrap();
        assert_eq!(
            displays5(&j02.generators),
            vec!["X0", "X2", "X4", "X1^8*X3^2"]
        );

        assert!(build_ideal(Family::J0, 3, &c.pair, &c.inv, &c.seq, &c.sg).is_err());
        assert!(build_ideal(Family::J0, 0, &c.pair, &c.inv, &c.seq, &c.sg).is_err());
    }

    #[test]
    fn presentations_agree() {
        for (p, q, m) in [(1, 4, 2), (1, 3, 3), (1, 2, 1), (2, 7, 4)] {
            let c = ctx(p, q, m);
            for fam in [Family::J0, Family::J1] {
                for i in 1..=c.hj.depth() + 1 {
                    let spec = build_ideal(fam, i, &c.pair, &c.inv, &c.seq, &c.sg).unwrap();
                    assert!(
                        reduced_ideals_equal(
                            &spec.reduced,
                            spec.f_reduced.as_ref().unwrap(),
                            DEFAULT_COMPLETION_BUDGET
                        )
                        .unwrap(),
                        "({p},{q},{m}) {} presentations differ",
                        spec.name()
                    );
                }
            }
        }
    }

    #[test]
    fn completion_j11() {
        let c = ctx(1, 4, 2);
        let spec = build_ideal(Family::J1, 1, &c.pair, &c.inv, &c.seq, &c.sg).unwrap();
        let sys = complete_rewrite_system(&spec.reduced, DEFAULT_COMPLETION_BUDGET).unwrap();
        assert!(is_locally_confluent(&sys));
        assert!(sys.rules.contains(&Rule {
            lhs: Monomial3::new(0, 3, 1),
            rhs: Some(Monomial3::new(1, 0, 0)),
        }));
        assert!(sys.rules.contains(&Rule {
            lhs: Monomial3::new(3, 0, 0),
            rhs: None,
        }));
        assert!(sys.rules.contains(&Rule {
            lhs: Monomial3::new(2, 2, 0),
            rhs: None,
        }));
        // one binomial application
        assert_eq!(
            normal_form(&Monomial3::new(0, 3, 1), &sys),
            Some(Monomial3::new(1, 0, 0))
        );
    }

    #[test]
    fn completion_i1() {
        let c = ctx(1, 4, 2);
        let spec = build_ideal(Family::I1, 0, &c.pair, &c.inv, &c.seq, &c.sg).unwrap();
        let sys = complete_rewrite_system(&spec.reduced, DEFAULT_COMPLETION_BUDGET).unwrap();
        assert!(is_locally_confluent(&sys));
        // X0^3 -> X1X4 and X0^2 X1^2 -> 1 under the graded order
        assert!(sys.rules.contains(&Rule {
            lhs: Monomial3::new(3, 0, 0),
            rhs: Some(Monomial3::new(0, 1, 1)),
        }));
        assert!(sys.rules.contains(&Rule {
            lhs: Monomial3::new(2, 2, 0),
            rhs: Some(Monomial3::one()),
        }));
    }

    #[test]
    fn monomial_only_systems_interreduce() {
        let gens = vec![
            Gen3::Mono(Monomial3::new(2, 0, 0)),
            Gen3::Mono(Monomial3::new(2, 1, 0)),
            Gen3::Mono(Monomial3::new(0, 1, 1)),
        ];
        let sys = complete_rewrite_system(&gens, 100).unwrap();
        assert_eq!(sys.rules.len(), 2);
        assert!(sys.rules.iter().all(|r| r.rhs.is_none()));
    }

    #[test]
    fn normal_form_examples() {
        let c = ctx(1, 4, 2);
        let j10 = build_ideal(Family::J0, 1, &c.pair, &c.inv, &c.seq, &c.sg).unwrap();
        let sys = complete_rewrite_system(&j10.reduced, DEFAULT_COMPLETION_BUDGET).unwrap();
        assert_eq!(normal_form(&Monomial3::one(), &sys), Some(Monomial3::one()));
        assert_eq!(normal_form(&Monomial3::new(3, 0, 0), &sys), None);
        assert!(monomial_in_ideal(&Monomial3::new(0, 3, 1), &sys));
    }

    #[test]
    fn weight_space_dims_1_4_2() {
        let c = ctx(1, 4, 2);
        for (fam, idx) in [
            (Family::I0, 0),
            (Family::I1, 0),
            (Family::J0, 1),
            (Family::J0, 2),
            (Family::J1, 1),
            (Family::J1, 2),
        ] {
            let spec = build_ideal(fam, idx, &c.pair, &c.inv, &c.seq, &c.sg).unwrap();
            let sys = complete_rewrite_system(&spec.reduced, DEFAULT_COMPLETION_BUDGET).unwrap();
            for n in -6i64..=6 {
                for d in 0..2i64 {
                    let w = WeightLabel::new(&c.pair.m, int(n), &int(d));
                    let (dim, stable, _) = weight_space_dim_auto(&c.pair, &sys, &w).unwrap();
                    assert_eq!(
                        (dim, stable),
                        (1, true),
                        "{} at ({n},{d})",
                        spec.name()
                    );
                }
            }
        }
    }

    #[test]
    fn weight_space_dim_explicit_bound() {
        let c = ctx(1, 4, 2);
        let spec = build_ideal(Family::J0, 1, &c.pair, &c.inv, &c.seq, &c.sg).unwrap();
        let sys = complete_rewrite_system(&spec.reduced, DEFAULT_COMPLETION_BUDGET).unwrap();
        let w = WeightLabel::new(&c.pair.m, int(0), &int(0));
        let (dim, stable) = weight_space_dim(&c.pair, &sys, &w, &int(6)).unwrap();
        assert_eq!((dim, stable), (1, true));
        assert!(weight_space_dim(&c.pair, &sys, &w, &int(-2)).is_err());
    }

    #[test]
    fn structural_membership_examples() {
        let c = ctx(1, 4, 2);
        // the surviving class at each n below n_{i-1} is the pure X0 label
        let lam_x0 = LambdaLabel::new(int(1), int(0), int(0));
        assert_eq!(
            structural_membership(&c.pair, &c.hj, &c.seq, &lam_x0, 1, Family::J0),
            Some(false)
        );
        // at i = 2 the boundary n = n_1 = 1 survives through c = m P_1
        assert_eq!(
            structural_membership(&c.pair, &c.hj, &c.seq, &lam_x0, 2, Family::J0),
            Some(true)
        );
        let lam_mixed = LambdaLabel::new(int(1), int(2), int(-1));
        assert_eq!(
            structural_membership(&c.pair, &c.hj, &c.seq, &lam_mixed, 2, Family::J0),
            Some(false)
        );
        assert_eq!(
            structural_membership(&c.pair, &c.hj, &c.seq, &lam_mixed, 1, Family::J0),
            Some(true)
        );
        // outside the window nothing is claimed
        assert_eq!(
            structural_membership(&c.pair, &c.hj, &c.seq, &lam_mixed, 1, Family::I1),
            None
        );
        let lam_big = LambdaLabel::new(int(4), int(0), int(0));
        assert_eq!(
            structural_membership(&c.pair, &c.hj, &c.seq, &lam_big, 1, Family::J0),
            None
        );
    }

    #[test]
    fn structural_agrees_with_rewriting_1_4_2() {
        let c = ctx(1, 4, 2);
        for fam in [Family::J0, Family::J1] {
            for i in 1..=2usize {
                let spec = build_ideal(fam, i, &c.pair, &c.inv, &c.seq, &c.sg).unwrap();
                let sys =
                    complete_rewrite_system(&spec.reduced, DEFAULT_COMPLETION_BUDGET).unwrap();
                for n in 0..3i64 {
                    for x in 0..=5i64 {
                        let cc = int(2 * x);
                        for omega in fiber_omegas(&c.pair, &int(n), &cc).unwrap() {
                            let lam = LambdaLabel::new(int(n), cc.clone(), omega);
                            if let Some(claim) =
                                structural_membership(&c.pair, &c.hj, &c.seq, &lam, i, fam)
                            {
                                let mon = f_lambda(&c.pair, &lam).unwrap();
                                assert_eq!(
                                    claim,
                                    monomial_in_ideal(&mon, &sys),
                                    "{:?} i={i} lam={lam}",
                                    fam
                                );
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn fixed_points_counts() {
        for (p, q, m, expect) in [(1, 4, 2, 2usize), (1, 3, 3, 2), (1, 2, 1, 1)] {
            let c = ctx(p, q, m);
            let pts = borel_fixed_points(
                &c.pair,
                &c.inv,
                &c.hj,
                &c.seq,
                &c.sg,
                DEFAULT_COMPLETION_BUDGET,
            )
            .unwrap();
            assert_eq!(pts.len(), expect, "({p},{q},{m})");
            assert_eq!(pts.len(), c.hj.depth() + 1);
        }
    }

    #[test]
    fn tangent_dimensions() {
        for (p, q, m) in [(1, 4, 2), (1, 3, 3), (1, 2, 1)] {
            let c = ctx(p, q, m);
            for i in 1..=c.hj.depth() + 1 {
                let dim = tangent_dimension(
                    &c.pair,
                    &c.inv,
                    &c.hj,
                    &c.seq,
                    &c.sg,
                    i,
                    DEFAULT_COMPLETION_BUDGET,
                )
                .unwrap();
                assert_eq!(dim, 3, "({p},{q},{m}) at i = {i}");
            }
        }
    }
}
