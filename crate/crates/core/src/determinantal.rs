//! Generic matrices, determinantal ideals and the maximal-minor test ideal
//! formula `τ(λ•I_m) = I_m^(⌊λ⌋ - n + m)`.


use num_integer::binomial;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::frobenius::decompose;
use crate::ideals::Ideal;
use crate::poly::{Monomial, MonomialOrder, Polynomial, Ring, RingSpec};
use crate::rational::ExactRational;
use crate::testideal::{
    detect_jumps, fpt_bracket, test_ideal, Stabilization, StabilizationPolicy, TestIdeal,
    ThresholdEstimate,
};

/// An `m × n` matrix of indeterminates `x_i_j` over `F_p`, with `m ≤ n`.
#[derive(Clone, Debug)]
pub struct GenericMatrixSpec {
    m: usize,
    n: usize,
    ring: Ring,
}

impl GenericMatrixSpec {
    /// Builds the matrix ring; `m > n` is replaced by the transpose shape.
    pub fn new(m: usize, n: usize, p: u64) -> Result<Self> {
        if m == 0 || n == 0 {
            return Err(Error::InvalidArgument("matrix dimensions must be positive".into()));
        }
        let (m, n) = if m > n { (n, m) } else { (m, n) };
        let names: Vec<String> = (1..=m)
            .flat_map(|i| (1..=n).map(move |j| format!("x_{i}_{j}")))
            .collect();
        let ring = RingSpec::new(p, &names)?;
        Ok(GenericMatrixSpec { m, n, ring })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn characteristic(&self) -> u64 {
        u64::from(self.ring.characteristic())
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    /// Index of `x_{i,j}` (zero-based) in the row-major variable order.
    pub fn index(&self, i: usize, j: usize) -> usize {
        i * self.n + j
    }

    pub fn entry(&self, i: usize, j: usize) -> Polynomial {
        Polynomial::variable(&self.ring, self.index(i, j))
    }

    /// Lex order `x_1_1 ≻ x_1_2 ≻ … ≻ x_m_n`.
    pub fn lex(&self) -> MonomialOrder {
        MonomialOrder::Lex
    }

    /// Determinant of the submatrix on `rows × cols` by cofactor expansion.
    pub fn minor(&self, rows: &[usize], cols: &[usize]) -> Result<Polynomial> {
        assert_eq!(rows.len(), cols.len(), "minor needs a square selection");
        if rows.is_empty() {
            return Ok(Polynomial::one(&self.ring));
        }
        if rows.len() == 1 {
            return Ok(self.entry(rows[0], cols[0]));
        }
        let mut det = Polynomial::zero(&self.ring);
        let rest = &rows[1..];
        for (k, &c) in cols.iter().enumerate() {
            let sub: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
            let term = self.entry(rows[0], c).checked_mul(&self.minor(rest, &sub)?)?;
            det = if k % 2 == 0 { det.checked_add(&term)? } else { det.checked_sub(&term)? };
        }
        Ok(det)
    }
}

/// `I_t` of a generic matrix.
#[derive(Clone, Debug)]
pub struct MinorIdealSpec {
    pub matrix: GenericMatrixSpec,
    pub t: usize,
}

impl MinorIdealSpec {
    pub fn new(m: usize, n: usize, t: usize, p: u64) -> Result<Self> {
        let matrix = GenericMatrixSpec::new(m, n, p)?;
        if t == 0 || t > matrix.m {
            return Err(Error::InvalidArgument(format!(
                "minor size {t} outside 1..={}",
                matrix.m
            )));
        }
        Ok(MinorIdealSpec { matrix, t })
    }

    /// Maximal minors, `t = min(m, n)`.
    pub fn maximal(m: usize, n: usize, p: u64) -> Result<Self> {
        Self::new(m, n, m.min(n), p)
    }

    pub fn generator_count(&self) -> u64 {
        let (m, n, t) = (self.matrix.m as u64, self.matrix.n as u64, self.t as u64);
        binomial(m, t) * binomial(n, t)
    }

    pub fn is_maximal(&self) -> bool {
        self.t == self.matrix.m
    }

    fn require_maximal(&self) -> Result<()> {
        if self.is_maximal() {
            Ok(())
        } else {
            Err(Error::InvalidArgument(format!(
                "needs maximal minors (t = {}), got t = {}",
                self.matrix.m, self.t
            )))
        }
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// The ideal of all `t × t` minors, rows then columns in lexicographic order.
pub fn minors_ideal(spec: &MinorIdealSpec) -> Result<Ideal> {
    let mx = &spec.matrix;
    let mut gens = Vec::new();
    for rows in subsets(mx.m, spec.t) {
        for cols in subsets(mx.n, spec.t) {
            gens.push(mx.minor(&rows, &cols)?);
        }
    }
    Ideal::new(mx.ring(), gens)
}

/// `min { (n-k)(m-k)/(t-k) : 0 ≤ k < t }`, the F-pure threshold of `I_t`.
pub fn msv_fpt(m: usize, n: usize, t: usize) -> Result<ExactRational> {
    let (m, n) = if m > n { (n, m) } else { (m, n) };
    if t == 0 || t > m {
        return Err(Error::InvalidArgument(format!("need 1 ≤ t ≤ {m}, got t = {t}")));
    }
    (0..t)
        .map(|k| ExactRational::new(((n - k) * (m - k)) as u64, (t - k) as u64))
        .try_fold(None::<ExactRational>, |best, v| {
            let v = v?;
            Ok(Some(match best {
                Some(b) if b <= v => b,
                _ => v,
            }))
        })
        .map(|best| best.expect("t ≥ 1"))
}

/// Exponent `⌊λ⌋ - n + m` of the closed form, or `0` below it.
pub fn closed_form_exponent(spec: &MinorIdealSpec, lambda: &ExactRational) -> Result<u64> {
    spec.require_maximal()?;
    let gap = (spec.matrix.n - spec.matrix.m) as u64;
    Ok(lambda.floor().saturating_sub(gap))
}

/// `τ(λ•I_m) = I_m^(⌊λ⌋ - n + m)`, the unit ideal when the exponent is not positive.
pub fn closed_form_test_ideal(spec: &MinorIdealSpec, lambda: &ExactRational) -> Result<Ideal> {
    let k = closed_form_exponent(spec, lambda)?;
    minors_ideal(spec)?.power(k)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PointOutcome {
    Match,
    Mismatch,
    /// Resource budget exhausted; not evaluated.
    Skipped(String),
}

#[derive(Clone, Debug)]
pub struct MainPoint {
    pub lambda: ExactRational,
    pub expected_exponent: u64,
    /// Exponent and status of the chain member that was compared.
    pub e: u32,
    pub status: Option<Stabilization>,
    pub outcome: PointOutcome,
    pub computed: Option<Ideal>,
}

#[derive(Clone, Debug)]
pub struct MainReport {
    pub m: usize,
    pub n: usize,
    pub p: u64,
    pub fpt: ExactRational,
    pub points: Vec<MainPoint>,
    pub jumps: Vec<ExactRational>,
    pub expected_jumps: Vec<ExactRational>,
    pub chain_error: Option<String>,
    pub bracket: Option<ThresholdEstimate>,
}

impl MainReport {
    pub fn jumps_match(&self) -> bool {
        self.jumps == self.expected_jumps
    }

    pub fn skipped(&self) -> usize {
        self.points.iter().filter(|pt| matches!(pt.outcome, PointOutcome::Skipped(_))).count()
    }

    pub fn passed(&self) -> bool {
        self.chain_error.is_none()
            && self.jumps_match()
            && self.points.iter().all(|pt| pt.outcome != PointOutcome::Mismatch)
            && self.bracket.as_ref().is_none_or(|b| b.contains(&self.fpt))
    }
}

/// Compares computed test ideals of `I_m` against the closed form on `grid`,
/// and the grid-detected jumps against the expected drops of the closed form
/// between consecutive evaluated points. `bracket_e` additionally brackets
/// the F-pure threshold with `ν` values up to that exponent.
pub fn verify_main(
    spec: &MinorIdealSpec,
    grid: &[ExactRational],
    policy: &StabilizationPolicy,
    bracket_e: Option<u32>,
) -> Result<MainReport> {
    spec.require_maximal()?;
    policy.validate()?;
    let mut grid = grid.to_vec();
    grid.sort();
    grid.dedup();
    let ideal = minors_ideal(spec)?;
    let evaluated: Vec<Result<TestIdeal>> =
        grid.par_iter().map(|lambda| test_ideal(&ideal, lambda, policy)).collect();

    let mut points = Vec::with_capacity(grid.len());
    let mut computed = Vec::new();
    let mut expected_jumps = Vec::new();
    let mut last_exponent: Option<u64> = None;
    for (lambda, result) in grid.iter().zip(evaluated) {
        let expected_exponent = closed_form_exponent(spec, lambda)?;
        let point = match result {
            Ok(t) => {
                let closed = ideal.power(expected_exponent)?;
                let outcome = if t.ideal.equals(&closed)? {
                    PointOutcome::Match
                } else {
                    PointOutcome::Mismatch
                };
                if last_exponent.is_some_and(|k| k != expected_exponent) {
                    expected_jumps.push(lambda.clone());
                }
                last_exponent = Some(expected_exponent);
                computed.push(t.clone());
                MainPoint {
                    lambda: lambda.clone(),
                    expected_exponent,
                    e: t.e,
                    status: Some(t.status),
                    outcome,
                    computed: Some(t.ideal),
                }
            }
            Err(Error::BudgetExceeded(why)) => MainPoint {
                lambda: lambda.clone(),
                expected_exponent,
                e: 0,
                status: None,
                outcome: PointOutcome::Skipped(why),
                computed: None,
            },
            Err(other) => return Err(other),
        };
        points.push(point);
    }
    let (jumps, chain_error) = match detect_jumps(&computed) {
        Ok(j) => (j, None),
        Err(Error::ChainViolation(msg)) => (Vec::new(), Some(msg)),
        Err(other) => return Err(other),
    };
    let bracket = bracket_e.map(|e| fpt_bracket(&ideal, e)).transpose()?;
    Ok(MainReport {
        m: spec.matrix.m,
        n: spec.matrix.n,
        p: spec.matrix.characteristic(),
        fpt: msv_fpt(spec.matrix.m, spec.matrix.n, spec.t)?,
        points,
        jumps,
        expected_jumps,
        chain_error,
        bracket,
    })
}

/// The lex witness built from the minors on consecutive columns.
#[derive(Clone, Debug)]
pub struct WitnessData {
    pub q: u64,
    /// `δ_i = [1 … m | 1+i … m+i]` for `i = 0..=n-m`.
    pub deltas: Vec<Polynomial>,
    /// Diagonal monomials `x_{1,1+i} ⋯ x_{m,m+i}`.
    pub mus: Vec<Monomial>,
    /// `Δ = Π δ_i^(q-1)`.
    pub big_delta: Polynomial,
    /// `η = Π μ_i^(q-1)`.
    pub eta: Monomial,
}

impl WitnessData {
    pub fn new(spec: &MinorIdealSpec, e: u32) -> Result<Self> {
        spec.require_maximal()?;
        if e == 0 {
            return Err(Error::InvalidArgument("witness needs e ≥ 1".into()));
        }
        let mx = &spec.matrix;
        let ring = mx.ring();
        let q = mx
            .characteristic()
            .checked_pow(e)
            .ok_or_else(|| Error::InvalidArgument("p^e too large".into()))?;
        let rows: Vec<usize> = (0..mx.m).collect();
        let mut deltas = Vec::new();
        let mut mus = Vec::new();
        for i in 0..=(mx.n - mx.m) {
            let cols: Vec<usize> = (i..i + mx.m).collect();
            deltas.push(mx.minor(&rows, &cols)?);
            let vars = rows.iter().map(|&r| Monomial::variable(ring.nvars(), mx.index(r, r + i)));
            mus.push(vars.fold(Monomial::one(ring.nvars()), |acc, v| acc.mul(&v)));
        }
        let mut big_delta = Polynomial::one(ring);
        for d in &deltas {
            big_delta = big_delta.checked_mul(&d.pow(q - 1)?)?;
        }
        let product = mus.iter().fold(Monomial::one(ring.nvars()), |acc, mu| acc.mul(mu));
        let eta = product
            .checked_scale(q - 1, ring.max_exponent())
            .ok_or(Error::ExponentOverflow(q - 1))?;
        Ok(WitnessData { q, deltas, mus, big_delta, eta })
    }
}

#[derive(Clone, Debug)]
pub struct WitnessReport {
    pub m: usize,
    pub n: usize,
    pub p: u64,
    pub e: u32,
    pub data: WitnessData,
    pub initial_forms_match: bool,
    pub eta_is_initial: bool,
    pub eta_in_basis: bool,
    /// The part `g_η` of `Δ` at basis monomial `η`, when constant.
    pub g_eta: Option<u32>,
    pub g_eta_constant_nonzero: bool,
    pub failures: Vec<String>,
}

impl WitnessReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks the lex witness: `in(δ_i) = μ_i`, `in(Δ) = η`, `η ∈ B_e`, and
/// that `Δ` decomposes at `η` with a nonzero constant part.
pub fn witness_check(spec: &MinorIdealSpec, e: u32) -> Result<WitnessReport> {
    let data = WitnessData::new(spec, e)?;
    let order = spec.matrix.lex();
    let mut failures = Vec::new();

    let mut initial_forms_match = true;
    for (i, (d, mu)) in data.deltas.iter().zip(&data.mus).enumerate() {
        let (lead, _) = d.initial_form(&order)?;
        if &lead != mu {
            initial_forms_match = false;
            failures.push(format!("in(δ_{i}) ≠ μ_{i}"));
        }
    }
    let eta_is_initial = data.big_delta.initial_form(&order)?.0 == data.eta;
    if !eta_is_initial {
        failures.push("in(Δ) ≠ η".into());
    }
    let eta_in_basis = u64::from(data.eta.max_exponent()) < data.q;
    if !eta_in_basis {
        failures.push("η has an exponent ≥ q".into());
    }
    let decomposition = decompose(&data.big_delta, e)?;
    let g_eta = decomposition.part(&data.eta).and_then(Polynomial::as_constant);
    let g_eta_constant_nonzero = g_eta.is_some_and(|c| c != 0);
    if !g_eta_constant_nonzero {
        failures.push("g_η is not a nonzero constant".into());
    }
    Ok(WitnessReport {
        m: spec.matrix.m,
        n: spec.matrix.n,
        p: spec.matrix.characteristic(),
        e,
        data,
        initial_forms_match,
        eta_is_initial,
        eta_in_basis,
        g_eta,
        g_eta_constant_nonzero,
        failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_polynomial;

    fn q(s: &str) -> ExactRational {
        s.parse().unwrap()
    }

    #[test]
    fn small_minor_ideals() {
        let one = MinorIdealSpec::new(1, 1, 1, 2).unwrap();
        let i = minors_ideal(&one).unwrap();
        assert_eq!(i.generators().len(), 1);
        assert_eq!(i.generators()[0].to_string(), "x_1_1");

        let square = MinorIdealSpec::new(2, 2, 2, 5).unwrap();
        let det = parse_polynomial("x_1_1*x_2_2 - x_1_2*x_2_1", square.matrix.ring()).unwrap();
        assert_eq!(minors_ideal(&square).unwrap().generators(), &[det]);

        let wide = MinorIdealSpec::new(2, 3, 2, 3).unwrap();
        assert_eq!(wide.generator_count(), 3);
        assert_eq!(minors_ideal(&wide).unwrap().generators().len(), 3);
    }

    #[test]
    fn tall_shapes_are_transposed() {
        let tall = MinorIdealSpec::new(3, 2, 2, 2).unwrap();
        assert_eq!((tall.matrix.m(), tall.matrix.n()), (2, 3));
        assert!(MinorIdealSpec::new(2, 3, 3, 2).is_err());
        assert!(MinorIdealSpec::new(2, 3, 0, 2).is_err());
    }

    #[test]
    fn msv_examples() {
        assert_eq!(msv_fpt(2, 3, 2).unwrap(), q("2"));
        assert_eq!(msv_fpt(3, 4, 1).unwrap(), q("12"));
        assert_eq!(msv_fpt(3, 3, 2).unwrap(), q("4"));
        assert!(msv_fpt(2, 3, 3).is_err());
        for n in 1..=6usize {
            for m in 1..=n {
                assert_eq!(msv_fpt(m, n, m).unwrap(), ExactRational::integer((n - m + 1) as u64));
            }
        }
    }

    #[test]
    fn closed_forms() {
        let spec = MinorIdealSpec::maximal(2, 3, 2).unwrap();
        let i = minors_ideal(&spec).unwrap();
        assert!(closed_form_test_ideal(&spec, &q("2")).unwrap().equals(&i).unwrap());
        let sq = closed_form_test_ideal(&spec, &q("7/2")).unwrap();
        assert!(sq.equals(&i.power(2).unwrap()).unwrap());
        assert!(closed_form_test_ideal(&spec, &q("3/2")).unwrap().is_unit().unwrap());
        let sub = MinorIdealSpec::new(3, 3, 2, 2).unwrap();
        assert!(closed_form_test_ideal(&sub, &q("1")).is_err());
    }

    #[test]
    fn witness_for_two_by_three() {
        let spec = MinorIdealSpec::maximal(2, 3, 2).unwrap();
        let report = witness_check(&spec, 1).unwrap();
        assert!(report.passed(), "{:?}", report.failures);
        let ring = spec.matrix.ring();
        let eta = parse_polynomial("x_1_1*x_2_2*x_1_2*x_2_3", ring).unwrap();
        assert_eq!(report.data.eta, eta.terms()[0].0);
        assert_eq!(report.g_eta, Some(1));
    }

    #[test]
    fn witness_for_square_and_row() {
        let square = MinorIdealSpec::maximal(2, 2, 3).unwrap();
        let report = witness_check(&square, 1).unwrap();
        assert!(report.passed());
        let eta = parse_polynomial("x_1_1^2*x_2_2^2", square.matrix.ring()).unwrap();
        assert_eq!(report.data.eta, eta.terms()[0].0);

        let row = MinorIdealSpec::maximal(1, 3, 5).unwrap();
        let report = witness_check(&row, 1).unwrap();
        assert!(report.passed());
        assert_eq!(report.data.big_delta.terms().len(), 1);
    }

    #[test]
    fn main_theorem_for_a_row() {
        let spec = MinorIdealSpec::maximal(1, 2, 2).unwrap();
        let grid: Vec<_> = ["0", "1/2", "1", "3/2", "2"].iter().map(|s| q(s)).collect();
        let report = verify_main(&spec, &grid, &StabilizationPolicy::default(), Some(2)).unwrap();
        assert!(report.passed(), "{report:?}");
        assert_eq!(report.jumps, vec![q("2")]);
    }
}
