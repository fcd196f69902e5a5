//! Vandermonde-cofactor coefficient families, the weighted grid functional Φ, and
//! nonvanishing certificates on product grids.
//!
//! For an evaluation set `S = (s_1, …, s_m)` let `A` be its Vandermonde
//! matrix (`a_ij = s_j^(i-1)`). The cofactors of the bottom row of `A`,
//! `λ_j = (-1)^(m+j)·det A^(mj)`, satisfy
//!
//! ```text
//! Σ_j λ_j s_j^ℓ = 0        for 0 ≤ ℓ ≤ m-2
//! Σ_j λ_j s_j^(m-1) = det A ≠ 0
//! ```
//!
//! in any integral domain. Taking one such family per axis of a grid
//! `S_1 × ⋯ × S_n`, the linear form
//!
//! ```text
//! Φ(g) = Σ_{(s_1..s_n) ∈ grid} λ_{s_1}⋯λ_{s_n} · g(s_1, …, s_n)
//! ```
//!
//! kills every monomial with some exponent below `|S_k|-1` and sends
//! `c·x_1^(|S_1|-1)⋯x_n^(|S_n|-1)` to `c·∏ det A_k`. When that monomial is a
//! maximal-degree term of `f`, `Φ(f)` is therefore nonzero and `f` cannot
//! vanish on the whole grid.

use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::{determinant_cofactor, vandermonde_matrix, MAX_COFACTOR_ORDER};
use crate::multipoly::{ExponentVector, Polynomial, Term};
use crate::parse::{split_with_offsets, ParseError};
use crate::ring::Domain;

/// Grids with at most this many points are summed both ways during
/// certification.
pub const CROSS_CHECK_LIMIT: u128 = 10_000;

/// An ordered list of pairwise distinct domain elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EvaluationSet<D>(Vec<D>);

impl<D: Domain> EvaluationSet<D> {
    pub fn new(points: Vec<D>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::EmptySet);
        }
        for (j, b) in points.iter().enumerate() {
            if let Some(i) = points[..j].iter().position(|a| a == b) {
                return Err(Error::DuplicateElement {
                    element: b.to_string(),
                    first: i,
                    second: j,
                });
            }
        }
        Ok(Self(points))
    }

    /// Parses a comma-separated element list such as `0, t, t^2+1`.
    pub fn parse(text: &str) -> Result<Self> {
        Self::parse_at(text, 0)
    }

    fn parse_at(text: &str, offset: usize) -> Result<Self> {
        if text.trim().is_empty() {
            return Err(Error::EmptySet);
        }
        let points = split_with_offsets(text, ',')
            .into_iter()
            .map(|(at, piece)| {
                piece.parse::<D>().map_err(|e| {
                    ParseError::new(offset + at + e.position, e.message)
                })
            })
            .collect::<Result<Vec<_>, ParseError>>()?;
        Self::new(points)
    }

    pub fn points(&self) -> &[D] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl<D: Domain> fmt::Display for EvaluationSet<D> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, s) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

/// One evaluation set per variable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridSpec<D> {
    axes: Vec<EvaluationSet<D>>,
}

impl<D: Domain> GridSpec<D> {
    pub fn new(axes: Vec<EvaluationSet<D>>) -> Self {
        Self { axes }
    }

    /// Parses `axis1;axis2;…`, each axis a comma-separated list.
    pub fn parse(text: &str) -> Result<Self> {
        if text.trim().is_empty() {
            return Ok(Self::new(Vec::new()));
        }
        let axes = split_with_offsets(text, ';')
            .into_iter()
            .map(|(at, piece)| EvaluationSet::parse_at(piece, at))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::new(axes))
    }

    pub fn axes(&self) -> &[EvaluationSet<D>] {
        &self.axes
    }

    pub fn arity(&self) -> usize {
        self.axes.len()
    }

    /// `∏ |S_k|`, saturating at `u128::MAX`.
    pub fn size(&self) -> u128 {
        self.axes
            .iter()
            .fold(1u128, |acc, s| acc.saturating_mul(s.len() as u128))
    }

    fn check_arity(&self, arity: usize) -> Result<()> {
        if self.arity() != arity {
            return Err(Error::ArityMismatch {
                expected: arity,
                found: self.arity(),
            });
        }
        Ok(())
    }

    /// The point with per-axis positions `indices`.
    pub fn point(&self, indices: &[usize]) -> Vec<D> {
        self.axes
            .iter()
            .zip(indices)
            .map(|(axis, &i)| axis.points()[i].clone())
            .collect()
    }
}

impl<D: Domain> fmt::Display for GridSpec<D> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, axis) in self.axes.iter().enumerate() {
            if k > 0 {
                write!(f, ";")?;
            }
            write!(f, "{axis}")?;
        }
        Ok(())
    }
}

/// Row-major odometer over per-axis positions; the last axis moves fastest.
struct GridIndices {
    lengths: Vec<usize>,
    current: Option<Vec<usize>>,
}

impl GridIndices {
    fn new(lengths: Vec<usize>) -> Self {
        let current = lengths.iter().all(|&l| l > 0).then(|| vec![0; lengths.len()]);
        Self { lengths, current }
    }
}

impl Iterator for GridIndices {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.clone()?;
        let cur = self.current.as_mut().expect("checked above");
        let mut axis = self.lengths.len();
        loop {
            if axis == 0 {
                self.current = None;
                break;
            }
            axis -= 1;
            cur[axis] += 1;
            if cur[axis] < self.lengths[axis] {
                break;
            }
            cur[axis] = 0;
        }
        Some(out)
    }
}

/// Where a family's coefficients came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    /// Cofactors of the bottom row of the Vandermonde matrix.
    VandermondeCofactors,
    /// Supplied by the caller; nothing is known about them.
    Supplied,
}

impl Provenance {
    pub fn label(self) -> &'static str {
        match self {
            Provenance::VandermondeCofactors => "vandermonde-bottom-row-cofactors",
            Provenance::Supplied => "supplied",
        }
    }

    pub fn from_label(label: &str) -> Option<Self> {
        match label {
            "vandermonde-bottom-row-cofactors" => Some(Provenance::VandermondeCofactors),
            "supplied" => Some(Provenance::Supplied),
            _ => None,
        }
    }
}

/// Coefficients `λ_j` attached to the points of an evaluation set, with the
/// value `r = Σ λ_j s_j^(m-1)` they realise on the top power.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LambdaFamily<D> {
    set: EvaluationSet<D>,
    coefficients: Vec<D>,
    top_value: D,
    provenance: Provenance,
}

impl<D: Domain> LambdaFamily<D> {
    /// Wraps caller-supplied coefficients without checking anything; use
    /// [`verify_lambda_family`] to audit them.
    pub fn from_parts(set: EvaluationSet<D>, coefficients: Vec<D>, top_value: D) -> Result<Self> {
        if coefficients.len() != set.len() {
            return Err(Error::ShapeMismatch {
                expected: set.len(),
                found: coefficients.len(),
            });
        }
        Ok(Self {
            set,
            coefficients,
            top_value,
            provenance: Provenance::Supplied,
        })
    }

    pub fn set(&self) -> &EvaluationSet<D> {
        &self.set
    }

    pub fn coefficients(&self) -> &[D] {
        &self.coefficients
    }

    pub fn top_value(&self) -> &D {
        &self.top_value
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    /// `Σ_j λ_j s_j^exp`.
    pub fn power_sum(&self, exp: u32) -> D {
        self.coefficients
            .iter()
            .zip(self.set.points())
            .fold(D::zero(), |acc, (l, s)| acc.add(&l.mul(&s.pow(exp))))
    }
}

/// Builds the cofactor family of `set` and checks both defining identities
/// before returning it.
pub fn lambda_family<D: Domain>(set: &EvaluationSet<D>) -> Result<LambdaFamily<D>> {
    if set.len() > MAX_COFACTOR_ORDER {
        return Err(Error::OrderTooLarge {
            order: set.len(),
            max: MAX_COFACTOR_ORDER,
        });
    }
    let matrix = vandermonde_matrix(set.points())?;
    let bottom = matrix.order() - 1;
    let coefficients = (0..matrix.order())
        .map(|j| matrix.cofactor(bottom, j))
        .collect::<Result<Vec<_>>>()?;
    let top_value = determinant_cofactor(&matrix);
    let family = LambdaFamily {
        set: set.clone(),
        coefficients,
        top_value,
        provenance: Provenance::VandermondeCofactors,
    };
    let report = verify_lambda_family(&family);
    if !report.passed() {
        return Err(Error::Internal(format!(
            "cofactor family for [{set}] fails its power-sum identities"
        )));
    }
    Ok(family)
}

/// One power-sum identity: `Σ λ_j s_j^exponent` should equal `expected`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerSumCheck<D> {
    pub exponent: u32,
    pub expected: D,
    pub actual: D,
}

impl<D: Domain> PowerSumCheck<D> {
    pub fn passed(&self) -> bool {
        self.expected == self.actual
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LambdaReport<D> {
    /// One check per exponent `0..m`, the last one against `r`.
    pub checks: Vec<PowerSumCheck<D>>,
    pub top_value_nonzero: bool,
}

impl<D: Domain> LambdaReport<D> {
    pub fn passed(&self) -> bool {
        self.top_value_nonzero && self.checks.iter().all(PowerSumCheck::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &PowerSumCheck<D>> {
        self.checks.iter().filter(|c| !c.passed())
    }
}

/// Recomputes every power sum of `family` directly.
pub fn verify_lambda_family<D: Domain>(family: &LambdaFamily<D>) -> LambdaReport<D> {
    let top = family.set.len() as u32 - 1;
    let checks = (0..=top)
        .map(|exponent| PowerSumCheck {
            exponent,
            expected: if exponent == top {
                family.top_value.clone()
            } else {
                D::zero()
            },
            actual: family.power_sum(exponent),
        })
        .collect();
    LambdaReport {
        checks,
        top_value_nonzero: !family.top_value.is_zero(),
    }
}

fn grid_of<D: Domain>(families: &[LambdaFamily<D>]) -> GridSpec<D> {
    GridSpec::new(families.iter().map(|f| f.set.clone()).collect())
}

fn check_families<D: Domain>(arity: usize, families: &[LambdaFamily<D>]) -> Result<()> {
    if families.len() != arity {
        return Err(Error::ArityMismatch {
            expected: arity,
            found: families.len(),
        });
    }
    Ok(())
}

/// Evaluates `f` at grid points addressed by per-axis positions, reusing
/// per-axis power tables.
struct GridEvaluator<'a, D> {
    f: &'a Polynomial<D>,
    /// powers[k][i][d] = (i-th point of axis k)^d
    powers: Vec<Vec<Vec<D>>>,
}

impl<'a, D: Domain> GridEvaluator<'a, D> {
    fn new(f: &'a Polynomial<D>, grid: &GridSpec<D>) -> Self {
        let max = f.max_exponents();
        let powers = grid
            .axes()
            .iter()
            .zip(&max)
            .map(|(axis, &top)| {
                axis.points()
                    .iter()
                    .map(|s| {
                        let mut row = vec![D::one()];
                        for d in 1..=top as usize {
                            let next = row[d - 1].mul(s);
                            row.push(next);
                        }
                        row
                    })
                    .collect()
            })
            .collect();
        Self { f, powers }
    }

    fn value(&self, indices: &[usize]) -> D {
        self.f.raw_terms().fold(D::zero(), |acc, (exps, c)| {
            let mut term = c.clone();
            for (k, &d) in exps.exponents().iter().enumerate() {
                if d > 0 {
                    term = term.mul(&self.powers[k][indices[k]][d as usize]);
                }
            }
            acc.add(&term)
        })
    }
}

fn lambda_weight<D: Domain>(families: &[LambdaFamily<D>], indices: &[usize]) -> D {
    families
        .iter()
        .zip(indices)
        .fold(D::one(), |acc, (fam, &i)| acc.mul(&fam.coefficients[i]))
}

fn lengths<D: Domain>(grid: &GridSpec<D>) -> Vec<usize> {
    grid.axes().iter().map(EvaluationSet::len).collect()
}

/// Φ(f) by its definition: a weighted sum of `f` over every grid point.
pub fn phi_grid<D: Domain>(f: &Polynomial<D>, families: &[LambdaFamily<D>]) -> Result<D> {
    check_families(f.arity(), families)?;
    let grid = grid_of(families);
    let eval = GridEvaluator::new(f, &grid);
    Ok(GridIndices::new(lengths(&grid)).fold(D::zero(), |acc, idx| {
        let weight = lambda_weight(families, &idx);
        if weight.is_zero() {
            return acc;
        }
        acc.add(&weight.mul(&eval.value(&idx)))
    }))
}

/// Φ of a single term in product form: `c·∏_k Σ_{s∈S_k} λ_s s^(d_k)`.
pub fn phi_term_product<D: Domain>(term: &Term<D>, families: &[LambdaFamily<D>]) -> Result<D> {
    check_families(term.exponents.arity(), families)?;
    let mut acc = term.coefficient.clone();
    for (fam, &d) in families.iter().zip(term.exponents.exponents()) {
        if acc.is_zero() {
            break;
        }
        acc = acc.mul(&fam.power_sum(d));
    }
    Ok(acc)
}

/// Φ(f) term by term in product form.
pub fn phi_fast<D: Domain>(f: &Polynomial<D>, families: &[LambdaFamily<D>]) -> Result<D> {
    check_families(f.arity(), families)?;
    f.terms().try_fold(D::zero(), |acc, term| {
        Ok(acc.add(&phi_term_product(&term, families)?))
    })
}

/// A grid point where `f` does not vanish.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness<D> {
    pub indices: Vec<usize>,
    pub point: Vec<D>,
    pub value: D,
}

/// First grid point in row-major order where `f` is nonzero. Independent of
/// Φ, so it also works on grids that violate the size hypothesis.
pub fn find_witness<D: Domain>(f: &Polynomial<D>, grid: &GridSpec<D>) -> Result<Option<Witness<D>>> {
    grid.check_arity(f.arity())?;
    let eval = GridEvaluator::new(f, grid);
    Ok(GridIndices::new(lengths(grid)).find_map(|idx| {
        let value = eval.value(&idx);
        (!value.is_zero()).then(|| Witness {
            point: grid.point(&idx),
            indices: idx,
            value,
        })
    }))
}

#[cfg(feature = "parallel")]
mod parallel {
    use rayon::prelude::*;

    use super::*;

    fn unflatten(mut flat: usize, lengths: &[usize]) -> Vec<usize> {
        let mut idx = vec![0; lengths.len()];
        for axis in (0..lengths.len()).rev() {
            idx[axis] = flat % lengths[axis];
            flat /= lengths[axis];
        }
        idx
    }

    fn flat_size<D: Domain>(grid: &GridSpec<D>) -> Option<usize> {
        usize::try_from(grid.size()).ok().filter(|&s| s != usize::MAX)
    }

    /// [`phi_grid`] summed on the rayon pool; the result is the same element.
    pub fn phi_grid_parallel<D: Domain>(f: &Polynomial<D>, families: &[LambdaFamily<D>]) -> Result<D> {
        check_families(f.arity(), families)?;
        let grid = grid_of(families);
        let Some(size) = flat_size(&grid) else {
            return phi_grid(f, families);
        };
        let lengths = lengths(&grid);
        let eval = GridEvaluator::new(f, &grid);
        Ok((0..size)
            .into_par_iter()
            .map(|flat| {
                let idx = unflatten(flat, &lengths);
                let weight = lambda_weight(families, &idx);
                if weight.is_zero() {
                    D::zero()
                } else {
                    weight.mul(&eval.value(&idx))
                }
            })
            .reduce(D::zero, |a, b| a.add(&b)))
    }

    /// [`find_witness`] on the rayon pool; returns the same (row-major
    /// first) witness.
    pub fn find_witness_parallel<D: Domain>(
        f: &Polynomial<D>,
        grid: &GridSpec<D>,
    ) -> Result<Option<Witness<D>>> {
        grid.check_arity(f.arity())?;
        let Some(size) = flat_size(grid) else {
            return find_witness(f, grid);
        };
        let lengths = lengths(grid);
        let eval = GridEvaluator::new(f, grid);
        Ok((0..size).into_par_iter().find_map_first(|flat| {
            let idx = unflatten(flat, &lengths);
            let value = eval.value(&idx);
            (!value.is_zero()).then(|| Witness {
                point: grid.point(&idx),
                indices: idx,
                value,
            })
        }))
    }
}

#[cfg(feature = "parallel")]
pub use parallel::{find_witness_parallel, phi_grid_parallel};

/// The recorded outcome of a successful certification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate<D> {
    pub polynomial: Polynomial<D>,
    pub grid: GridSpec<D>,
    pub term: Term<D>,
    pub lambdas: Vec<Vec<D>>,
    pub provenance: Provenance,
    /// `r_k = det Vandermonde(S_k)`, one per axis.
    pub top_values: Vec<D>,
    /// Φ(f) in product form.
    pub phi: D,
    /// Φ(f) by the grid sum, when the grid was small enough to cross-check.
    pub phi_grid: Option<D>,
    /// `c·∏ r_k`.
    pub predicted: D,
    pub grid_size: u128,
    pub witness: Vec<D>,
    pub witness_value: D,
}

/// Certification settings.
#[derive(Debug, Clone, Copy)]
pub struct Certifier {
    /// Grids up to this many points are also summed by definition.
    pub cross_check_limit: u128,
    /// Use the rayon pool for grid scans (needs the `parallel` feature).
    pub parallel: bool,
}

impl Default for Certifier {
    fn default() -> Self {
        Self {
            cross_check_limit: CROSS_CHECK_LIMIT,
            parallel: false,
        }
    }
}

impl Certifier {
    fn phi_by_grid<D: Domain>(&self, f: &Polynomial<D>, families: &[LambdaFamily<D>]) -> Result<D> {
        #[cfg(feature = "parallel")]
        if self.parallel {
            return phi_grid_parallel(f, families);
        }
        phi_grid(f, families)
    }

    fn witness<D: Domain>(&self, f: &Polynomial<D>, grid: &GridSpec<D>) -> Result<Option<Witness<D>>> {
        #[cfg(feature = "parallel")]
        if self.parallel {
            return find_witness_parallel(f, grid);
        }
        find_witness(f, grid)
    }

    pub fn certify<D: Domain>(
        &self,
        f: &Polynomial<D>,
        grid: &GridSpec<D>,
        requested: Option<&ExponentVector>,
    ) -> Result<Certificate<D>> {
        if f.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        grid.check_arity(f.arity())?;
        let term = f.select_leading_term(requested)?;
        for (axis, (set, &d)) in grid.axes().iter().zip(term.exponents.exponents()).enumerate() {
            let required = d as usize + 1;
            if set.len() != required {
                return Err(Error::SizeHypothesis {
                    axis,
                    required,
                    actual: set.len(),
                });
            }
        }

        let families = grid
            .axes()
            .iter()
            .map(lambda_family)
            .collect::<Result<Vec<_>>>()?;
        let phi = phi_fast(f, &families)?;
        let grid_size = grid.size();
        let phi_grid = if grid_size <= self.cross_check_limit {
            let by_grid = self.phi_by_grid(f, &families)?;
            if by_grid != phi {
                return Err(Error::Internal(format!(
                    "grid sum {by_grid} disagrees with product form {phi}"
                )));
            }
            Some(by_grid)
        } else {
            None
        };

        let top_values: Vec<D> = families.iter().map(|f| f.top_value.clone()).collect();
        let predicted = top_values
            .iter()
            .fold(term.coefficient.clone(), |acc, r| acc.mul(r));
        if phi != predicted {
            return Err(Error::Internal(format!(
                "Φ(f) = {phi} but c·∏r_k = {predicted}"
            )));
        }
        if phi.is_zero() {
            return Err(Error::Internal("Φ(f) vanished for a nonzero term".into()));
        }
        let witness = self.witness(f, grid)?.ok_or_else(|| {
            Error::Internal("Φ(f) ≠ 0 yet no grid point is a witness".into())
        })?;

        Ok(Certificate {
            polynomial: f.clone(),
            grid: grid.clone(),
            term,
            lambdas: families.iter().map(|f| f.coefficients.clone()).collect(),
            provenance: Provenance::VandermondeCofactors,
            top_values,
            phi,
            phi_grid,
            predicted,
            grid_size,
            witness: witness.point,
            witness_value: witness.value,
        })
    }
}

/// Certifies that `f` cannot vanish on `grid`, using the default
/// [`Certifier`].
pub fn certify_nonvanishing<D: Domain>(
    f: &Polynomial<D>,
    grid: &GridSpec<D>,
    requested: Option<&ExponentVector>,
) -> Result<Certificate<D>> {
    Certifier::default().certify(f, grid, requested)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{Int, IntPoly};

    fn set(values: &[i64]) -> EvaluationSet<Int> {
        EvaluationSet::new(values.iter().map(|&v| Int::from(v)).collect()).unwrap()
    }

    fn ints(values: &[i64]) -> Vec<Int> {
        values.iter().map(|&v| Int::from(v)).collect()
    }

    fn poly(text: &str, arity: usize) -> Polynomial<Int> {
        Polynomial::parse(text, arity).unwrap()
    }

    #[test]
    fn lambda_examples() {
        let single = lambda_family(&set(&[9])).unwrap();
        assert_eq!(single.coefficients(), ints(&[1]));
        assert_eq!(single.top_value(), &Int::from(1));

        let two = lambda_family(&set(&[0, 1])).unwrap();
        assert_eq!(two.coefficients(), ints(&[-1, 1]));
        assert_eq!(two.top_value(), &Int::from(1));

        let three = lambda_family(&set(&[0, 1, 2])).unwrap();
        assert_eq!(three.coefficients(), ints(&[1, -2, 1]));
        assert_eq!(three.top_value(), &Int::from(2));
        assert_eq!(three.provenance(), Provenance::VandermondeCofactors);
    }

    #[test]
    fn tampered_family_fails_at_exponent_zero() {
        let good = lambda_family(&set(&[0, 1])).unwrap();
        let mut lambdas = good.coefficients().to_vec();
        lambdas[0] = lambdas[0].add(&Int::one());
        let bad = LambdaFamily::from_parts(good.set().clone(), lambdas, Int::from(1)).unwrap();
        let report = verify_lambda_family(&bad);
        assert!(!report.passed());
        let failed: Vec<u32> = report.failures().map(|c| c.exponent).collect();
        assert_eq!(failed, vec![0]);
        assert_eq!(report.checks[0].actual, Int::from(1));
    }

    #[test]
    fn family_over_polynomials() {
        let s = EvaluationSet::new(vec![IntPoly::zero(), IntPoly::t()]).unwrap();
        let fam = lambda_family(&s).unwrap();
        assert_eq!(fam.coefficients(), &[IntPoly::from_coeffs([-1]), IntPoly::one()]);
        assert_eq!(fam.top_value(), &IntPoly::t());
        assert!(verify_lambda_family(&fam).passed());
    }

    #[test]
    fn set_errors() {
        assert!(matches!(
            EvaluationSet::<Int>::parse("0,0"),
            Err(Error::DuplicateElement { first: 0, second: 1, .. })
        ));
        assert_eq!(EvaluationSet::<Int>::parse(""), Err(Error::EmptySet));
        match EvaluationSet::<Int>::parse("1, 2, x") {
            Err(Error::Parse(e)) => assert_eq!(e.position, 6),
            other => panic!("unexpected {other:?}"),
        }
        match GridSpec::<Int>::parse("0,1;0,$") {
            Err(Error::Parse(e)) => assert_eq!(e.position, 6),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn grid_scan_order() {
        let grid = GridSpec::<Int>::parse("0,1;0,1").unwrap();
        let points: Vec<_> = GridIndices::new(lengths(&grid)).map(|i| grid.point(&i)).collect();
        assert_eq!(points, vec![ints(&[0, 0]), ints(&[0, 1]), ints(&[1, 0]), ints(&[1, 1])]);
        assert_eq!(GridIndices::new(vec![]).count(), 1);
    }

    #[test]
    fn phi_examples() {
        let fams = vec![lambda_family(&set(&[0, 1])).unwrap(), lambda_family(&set(&[0, 1])).unwrap()];
        assert_eq!(phi_grid(&poly("x1*x2", 2), &fams).unwrap(), Int::from(1));
        assert_eq!(phi_fast(&poly("x1*x2", 2), &fams).unwrap(), Int::from(1));
        assert_eq!(phi_grid(&Polynomial::zero(2), &fams).unwrap(), Int::zero());
        assert_eq!(phi_fast(&Polynomial::zero(2), &fams).unwrap(), Int::zero());
        let one = vec![lambda_family(&set(&[0, 1])).unwrap()];
        assert_eq!(phi_grid(&poly("7", 1), &one).unwrap(), Int::zero());
        assert!(phi_grid(&poly("x1", 1), &fams).is_err());
    }

    #[test]
    fn term_product_examples() {
        let fams = vec![lambda_family(&set(&[0, 1])).unwrap(), lambda_family(&set(&[0, 1])).unwrap()];
        let xy = Term::new(Int::one(), vec![1, 1]);
        assert_eq!(phi_term_product(&xy, &fams).unwrap(), Int::from(1));
        let x = Term::new(Int::from(5), vec![1, 0]);
        assert_eq!(phi_term_product(&x, &fams).unwrap(), Int::zero());

        let fams = vec![lambda_family(&set(&[0, 1, 2])).unwrap(), lambda_family(&set(&[3, -1])).unwrap()];
        let top = Term::new(Int::from(-3), vec![2, 1]);
        let r: Vec<Int> = fams.iter().map(|f| f.top_value().clone()).collect();
        assert_eq!(
            phi_term_product(&top, &fams).unwrap(),
            Int::from(-3).mul(&r[0]).mul(&r[1])
        );
    }

    #[test]
    fn overflowing_exponents_are_computed_honestly() {
        // x1*x2^2 on a grid sized for (2,1): axis 1 annihilates it, but the
        // axis-2 power sum is evaluated rather than assumed.
        let fams = vec![lambda_family(&set(&[-1, 0, 1])).unwrap(), lambda_family(&set(&[0, 1])).unwrap()];
        assert_eq!(fams[1].power_sum(2), Int::from(1));
        let f = poly("x1^2*x2 + x1*x2^2", 2);
        assert_eq!(phi_fast(&f, &fams).unwrap(), phi_grid(&f, &fams).unwrap());
        let beyond = poly("x1^3", 2);
        assert_eq!(phi_fast(&beyond, &fams).unwrap(), phi_grid(&beyond, &fams).unwrap());
    }

    #[test]
    fn certify_examples() {
        let grid = GridSpec::<Int>::parse("0,1;0,1").unwrap();
        let cert = certify_nonvanishing(&poly("x1*x2", 2), &grid, None).unwrap();
        assert_eq!(cert.phi, Int::from(1));
        assert_eq!(cert.predicted, Int::from(1));
        assert_eq!(cert.witness, ints(&[1, 1]));
        assert_eq!(cert.witness_value, Int::from(1));
        assert_eq!(cert.grid_size, 4);

        // The term x1 has exponents (1, 0), so axis 2 takes a single point.
        let grid = GridSpec::<IntPoly>::parse("0,t;0").unwrap();
        let f = Polynomial::<IntPoly>::parse("x1 + x2", 2).unwrap();
        let cert = certify_nonvanishing(&f, &grid, Some(&vec![1, 0].into())).unwrap();
        assert_eq!(cert.phi, IntPoly::t());
        assert_eq!(cert.top_values, vec![IntPoly::t(), IntPoly::one()]);
        assert_eq!(cert.witness, vec![IntPoly::t(), IntPoly::zero()]);
        // A second point on axis 2 breaks the hypothesis, and Φ drops to 0.
        let oversized = GridSpec::<IntPoly>::parse("0,t;0,1").unwrap();
        assert_eq!(
            certify_nonvanishing(&f, &oversized, None),
            Err(Error::SizeHypothesis { axis: 1, required: 1, actual: 2 })
        );
        let fams: Vec<_> = oversized.axes().iter().map(|s| lambda_family(s).unwrap()).collect();
        assert_eq!(phi_grid(&f, &fams).unwrap(), IntPoly::zero());

        let grid = GridSpec::<Int>::parse("-1,0,1;0,1").unwrap();
        let f = poly("x1^2*x2 + x1*x2^2", 2);
        let cert = certify_nonvanishing(&f, &grid, Some(&vec![2, 1].into())).unwrap();
        let competing = Term::new(Int::one(), vec![1, 2]);
        let fams: Vec<_> = grid.axes().iter().map(|s| lambda_family(s).unwrap()).collect();
        assert_eq!(phi_term_product(&competing, &fams).unwrap(), Int::zero());
        assert_eq!(cert.phi_grid, Some(cert.phi.clone()));
    }

    #[test]
    fn certify_errors() {
        let f = poly("x1*x2", 2);
        let undersized = GridSpec::<Int>::parse("0,1;0").unwrap();
        assert_eq!(
            certify_nonvanishing(&f, &undersized, None),
            Err(Error::SizeHypothesis { axis: 1, required: 2, actual: 1 })
        );
        assert_eq!(
            certify_nonvanishing(&Polynomial::zero(2), &undersized, None),
            Err(Error::ZeroPolynomial)
        );
        let one_axis = GridSpec::<Int>::parse("0,1").unwrap();
        assert!(matches!(
            certify_nonvanishing(&f, &one_axis, None),
            Err(Error::ArityMismatch { .. })
        ));
        assert_eq!(
            Error::SizeHypothesis { axis: 1, required: 2, actual: 1 }.to_string(),
            "axis 2 needs exactly 2 points for the chosen term, found 1"
        );
    }

    #[test]
    fn witness_examples() {
        let grid = GridSpec::<Int>::parse("0,1;0,1").unwrap();
        let w = find_witness(&poly("x1*x2", 2), &grid).unwrap().unwrap();
        assert_eq!(w.point, ints(&[1, 1]));
        assert_eq!(w.indices, vec![1, 1]);

        let grid = GridSpec::<Int>::parse("0,1").unwrap();
        assert_eq!(find_witness(&poly("x1^2 - x1", 1), &grid).unwrap(), None);

        let grid = GridSpec::<Int>::parse("4,5;-2,7,8").unwrap();
        let w = find_witness(&poly("5", 2), &grid).unwrap().unwrap();
        assert_eq!(w.point, ints(&[4, -2]));
    }

    #[cfg(feature = "parallel")]
    #[test]
    fn parallel_matches_sequential() {
        let grid = GridSpec::<Int>::parse("0,1,2,3;-1,4,5;2,7").unwrap();
        let f = poly("x1^3*x2^2*x3 - 4*x1*x2 + x3^2 - 9", 3);
        let fams: Vec<_> = grid.axes().iter().map(|s| lambda_family(s).unwrap()).collect();
        assert_eq!(phi_grid_parallel(&f, &fams).unwrap(), phi_grid(&f, &fams).unwrap());
        let g = poly("x1*x2*x3 - 24", 3);
        assert_eq!(find_witness_parallel(&g, &grid).unwrap(), find_witness(&g, &grid).unwrap());
        let parallel = Certifier { parallel: true, ..Certifier::default() };
        assert_eq!(
            parallel.certify(&f, &grid, None).unwrap(),
            certify_nonvanishing(&f, &grid, None).unwrap()
        );
    }
}
