//! Representations of the Drinfeld double stored as factorized matrix
//! families, trace functionals on endomorphisms, and the three distinguished
//! constructions: the left regular representation, the R-matrix
//! representation on the factor algebra, and the one-dimensional irreducibles
//! of doubles of abelian groups.
//!
//! A representation rho of D(H) is kept as `A[b] = rho(eps (x) b)` indexed by
//! the basis of H and `B[f] = rho(f (x) 1)` indexed by the dual basis, since
//! rho(f (x) b) = B[f] A[b] and the bracket only ever consumes these slots.

use crate::double::DoubleAlgebra;
use crate::error::{Error, Result};
use crate::group::GroupTable;
use crate::hopf::{HopfAlgebraData, HopfOps, IntegralPair};
use crate::linalg::Matrix;
use crate::scalar::{ExactScalar, Field};

/// A representation of D(H) as factorized matrix families.
#[derive(Debug, Clone, PartialEq)]
pub struct DoubleRep {
    pub dim_v: usize,
    /// `a_family[i]` is the action of (eps (x) x_i).
    pub a_family: Vec<Matrix>,
    /// `b_family[p]` is the action of (f_p (x) 1).
    pub b_family: Vec<Matrix>,
}

impl DoubleRep {
    /// The action of the double's basis element f_p (x) x_i.
    pub fn rho(&self, p: usize, i: usize) -> Matrix {
        self.b_family[p].mul(&self.a_family[i])
    }

    /// Action of x_i precomposed with the eta-th antipode power:
    /// `A[S^eta(x_i)]`.
    pub fn a_twisted(&self, h: &HopfAlgebraData, eta: u8, i: usize) -> Matrix {
        if eta == 0 {
            return self.a_family[i].clone();
        }
        let mut m = Matrix::zeros(self.a_family[0].field, self.dim_v, self.dim_v);
        for (s, c) in h.antipode_basis(i) {
            m = m.add(&self.a_family[*s].scale(c));
        }
        m
    }

    fn shape_ok(&self, factor_dim: usize) -> bool {
        self.a_family.len() == factor_dim
            && self.b_family.len() == factor_dim
            && self
                .a_family
                .iter()
                .chain(&self.b_family)
                .all(|m| m.rows == self.dim_v && m.cols == self.dim_v)
    }
}

/// A trace-like functional on endomorphisms, as a weight matrix:
/// `T(X) = sum_{p,q} W[q,p] X[p,q] = tr(W X)`.
#[derive(Debug, Clone, PartialEq)]
pub struct TraceFunctional {
    pub weight: Matrix,
    pub trace_like_verified: bool,
    pub antipode_invariant_verified: bool,
}

impl TraceFunctional {
    pub fn new(weight: Matrix) -> TraceFunctional {
        TraceFunctional { weight, trace_like_verified: false, antipode_invariant_verified: false }
    }

    /// The ordinary matrix trace.
    pub fn usual(field: Field, dim_v: usize) -> TraceFunctional {
        TraceFunctional::new(Matrix::identity(field, dim_v))
    }

    /// The functional X -> functional(X(unit_vector)); this realizes both
    /// "integral evaluated at the unit" traces used downstream.
    pub fn from_integral_at_unit(
        field: Field,
        functional: &[ExactScalar],
        unit: &[ExactScalar],
    ) -> TraceFunctional {
        let n = functional.len();
        let mut w = Matrix::zeros(field, n, n);
        for r in 0..n {
            if unit[r].is_zero() {
                continue;
            }
            for c in 0..n {
                let v = unit[r].clone() * functional[c].clone();
                if !v.is_zero() {
                    w[(r, c)] = v;
                }
            }
        }
        TraceFunctional::new(w)
    }

    pub fn evaluate(&self, x: &Matrix) -> ExactScalar {
        trace_of_product(&self.weight, x)
    }
}

/// tr(A B) without materializing the product.
pub(crate) fn trace_of_product(a: &Matrix, b: &Matrix) -> ExactScalar {
    let mut t = a.field.zero();
    for i in 0..a.rows {
        for j in 0..a.cols {
            let x = a.get(i, j);
            if x.is_zero() {
                continue;
            }
            let y = b.get(j, i);
            if y.is_zero() {
                continue;
            }
            t = t + x.clone() * y.clone();
        }
    }
    t
}

/// Outcome of the double-representation compatibility checks.
#[derive(Debug, Clone)]
pub struct RepReport {
    pub a_algebra_map: bool,
    pub a_unit: bool,
    pub b_algebra_map: bool,
    pub b_unit: bool,
    pub straightening: bool,
    /// Basis pair at which the first failure occurred.
    pub witness: Option<String>,
}

impl RepReport {
    pub fn all_pass(&self) -> bool {
        self.a_algebra_map && self.a_unit && self.b_algebra_map && self.b_unit && self.straightening
    }
}

/// Verifies that the A/B families assemble into a representation of D(H):
/// A is an algebra map of H, B an algebra map of the convolution algebra H*,
/// and the straightening law `A[x] B[f] = sum B[f'] A[x']` holds with
/// `(f', x')` the cross-relation element `sum f(S(x_(3)) - x_(1)) (x) x_(2)`.
pub fn check_double_rep(d: &DoubleAlgebra, rep: &DoubleRep) -> Result<RepReport> {
    check_double_rep_factor(&d.factor, rep)
}

/// The same checks phrased over the factor algebra H only.
pub fn check_double_rep_factor(h: &HopfAlgebraData, rep: &DoubleRep) -> Result<RepReport> {
    if !rep.shape_ok(h.dim) {
        return Err(Error::ShapeMismatch(
            "representation families must be square and indexed by the factor basis".into(),
        ));
    }
    let n = h.dim;
    let field = h.field;
    let mut report = RepReport {
        a_algebra_map: true,
        a_unit: true,
        b_algebra_map: true,
        b_unit: true,
        straightening: true,
        witness: None,
    };

    // A[x_i] A[x_j] = sum_k M[i,j,k] A[x_k]
    'a_map: for i in 0..n {
        for j in 0..n {
            let lhs = rep.a_family[i].mul(&rep.a_family[j]);
            let mut rhs = Matrix::zeros(field, rep.dim_v, rep.dim_v);
            for (k, c) in h.mul_basis(i, j) {
                rhs = rhs.add(&rep.a_family[*k].scale(c));
            }
            if lhs != rhs {
                report.a_algebra_map = false;
                report.witness.get_or_insert(format!("A-family at ({i},{j})"));
                break 'a_map;
            }
        }
    }
    {
        let one = h.one_vec();
        let mut a1 = Matrix::zeros(field, rep.dim_v, rep.dim_v);
        for (i, c) in one.iter().enumerate() {
            if !c.is_zero() {
                a1 = a1.add(&rep.a_family[i].scale(c));
            }
        }
        if !a1.is_identity() {
            report.a_unit = false;
            report.witness.get_or_insert("A at the unit".into());
        }
    }

    // B[f_p] B[f_q] = sum_r Delta[r -> (p,q)] B[f_r]
    'b_map: for p in 0..n {
        for q in 0..n {
            let lhs = rep.b_family[p].mul(&rep.b_family[q]);
            let mut rhs = Matrix::zeros(field, rep.dim_v, rep.dim_v);
            for r in 0..n {
                for (r1, r2, c) in h.comul_basis(r) {
                    if *r1 == p && *r2 == q {
                        rhs = rhs.add(&rep.b_family[r].scale(c));
                    }
                }
            }
            if lhs != rhs {
                report.b_algebra_map = false;
                report.witness.get_or_insert(format!("B-family at ({p},{q})"));
                break 'b_map;
            }
        }
    }
    {
        let eps = h.counit_coords();
        let mut beps = Matrix::zeros(field, rep.dim_v, rep.dim_v);
        for (p, c) in eps.iter().enumerate() {
            if !c.is_zero() {
                beps = beps.add(&rep.b_family[p].scale(c));
            }
        }
        if !beps.is_identity() {
            report.b_unit = false;
            report.witness.get_or_insert("B at the counit".into());
        }
    }

    // Straightening: A[x_i] B[f_q] = sum cross B[f_m] A[x_c]
    'straight: for i in 0..n {
        for q in 0..n {
            let lhs = rep.a_family[i].mul(&rep.b_family[q]);
            let mut rhs = Matrix::zeros(field, rep.dim_v, rep.dim_v);
            for ((m, c), coef) in cross_relation(h, i, q) {
                rhs = rhs.add(&rep.b_family[m].mul(&rep.a_family[c]).scale(&coef));
            }
            if lhs != rhs {
                report.straightening = false;
                report.witness.get_or_insert(format!("straightening at (x_{i}, f_{q})"));
                break 'straight;
            }
        }
    }

    Ok(report)
}

/// The cross-relation element of (eps (x) x_i)(f_q (x) 1) in D(H):
/// list of ((dual index m, basis index c), coefficient).
pub fn cross_relation(h: &HopfAlgebraData, i: usize, q: usize) -> Vec<((usize, usize), ExactScalar)> {
    let n = h.dim;
    let mut out: std::collections::BTreeMap<(usize, usize), ExactScalar> =
        std::collections::BTreeMap::new();
    for ((i1, i2, i3), c1) in h.comul3_basis(i) {
        for (s, cs) in h.antipode_basis(i3) {
            for m in 0..n {
                for (u, cu) in h.mul_basis(*s, m) {
                    for (v, cv) in h.mul_basis(*u, i1) {
                        if *v == q {
                            let e = out.entry((m, i2)).or_insert_with(|| h.field.zero());
                            *e = e.clone() + c1.clone() * cs.clone() * cu.clone() * cv.clone();
                        }
                    }
                }
            }
        }
    }
    out.into_iter().filter(|(_, v)| !v.is_zero()).collect()
}

/// The left regular representation of D(H) on itself (carrier dimension
/// dim(H)^2) with the integral trace `T(X) = lambda(X(1))`.
pub fn make_regular_rep(d: &DoubleAlgebra) -> (DoubleRep, TraceFunctional) {
    let n = d.factor.dim;
    let dim_v = d.dim;
    let field = d.field();
    let eps = d.factor.counit_coords();
    let one = d.factor.one_vec();

    let left_mult = |elem: &[(usize, ExactScalar)]| -> Matrix {
        let mut m = Matrix::zeros(field, dim_v, dim_v);
        for b in 0..dim_v {
            let basis = vec![(b, field.one())];
            for (r, v) in crate::double::mul_sparse(d, elem, &basis) {
                m[(r, b)] = v;
            }
        }
        m
    };

    let mut a_family = Vec::with_capacity(n);
    for i in 0..n {
        let elem: Vec<(usize, ExactScalar)> = (0..n)
            .filter(|&p| !eps[p].is_zero())
            .map(|p| (d.flat(p, i), eps[p].clone()))
            .collect();
        a_family.push(left_mult(&elem));
    }
    let mut b_family = Vec::with_capacity(n);
    for p in 0..n {
        let elem: Vec<(usize, ExactScalar)> = (0..n)
            .filter(|&j| !one[j].is_zero())
            .map(|j| (d.flat(p, j), one[j].clone()))
            .collect();
        b_family.push(left_mult(&elem));
    }

    let trace = TraceFunctional::from_integral_at_unit(field, &d.lambda_coords(), &d.one_coords());
    (DoubleRep { dim_v, a_family, b_family }, trace)
}

/// The representation of D(H) on H itself induced by the R-matrix:
/// `rho(f (x) v) h = f(R') R'' v h`, so `A[b]` is left multiplication by `b`
/// and `B[f]` is left multiplication by `(f (x) id)(R)`. The trace is
/// `T(X) = mu(X(1))`.
pub fn make_rho_r(
    q: &crate::double::QuasitriangularData,
    pair: &IntegralPair,
) -> Result<(DoubleRep, TraceFunctional)> {
    let h = &q.algebra;
    let n = h.dim;
    let field = h.field;

    let mut a_family = Vec::with_capacity(n);
    for i in 0..n {
        a_family.push(h.left_mult_matrix(&h.basis_vec(i)));
    }
    // r(f_p) = sum_j R[p, j] x_j
    let mut r_slices: Vec<Vec<ExactScalar>> = vec![vec![field.zero(); n]; n];
    for (idx, v) in q.r_matrix.entries() {
        r_slices[idx[0] as usize][idx[1] as usize] = v.clone();
    }
    let mut b_family = Vec::with_capacity(n);
    for p in 0..n {
        b_family.push(h.left_mult_matrix(&r_slices[p]));
    }

    let rep = DoubleRep { dim_v: n, a_family, b_family };
    let report = check_double_rep_factor(h, &rep)?;
    if !report.all_pass() {
        return Err(Error::RepCheckFailure(format!(
            "R-matrix representation failed: {:?}",
            report.witness
        )));
    }
    let trace = TraceFunctional::from_integral_at_unit(field, &pair.mu_coords(), &h.one_vec());
    Ok((rep, trace))
}

/// The |A|^2 one-dimensional representations of D(k[A]) for an abelian group
/// A, indexed by (group element a, character chi): the A-family acts by
/// chi(b), the B-family by the indicator of a. Characters need primitive
/// roots of unity of the factor orders in the ground field.
pub fn abelian_double_irreps(
    group: &GroupTable,
    field: Field,
) -> Result<Vec<(DoubleRep, TraceFunctional)>> {
    if !group.is_abelian() {
        return Err(Error::NotAbelian("group is not abelian".into()));
    }
    let n = group.order();
    let factors: Vec<usize>;
    let mut log_table: Option<Vec<usize>> = None;
    if !group.cyclic_factors.is_empty() && group.cyclic_factors.iter().product::<usize>() == n {
        factors = group.cyclic_factors.clone();
    } else if let Some(g) = (0..n).find(|&g| group.element_order(g) == n) {
        // cyclic group presented as a bare table: use discrete logs
        factors = vec![n];
        let mut log = vec![0usize; n];
        let mut x = group.identity();
        for k in 0..n {
            log[x] = k;
            x = group.mul(x, g);
        }
        log_table = Some(log);
    } else {
        return Err(Error::NotAbelian(
            "no cyclic factor decomposition available for this table".into(),
        ));
    }

    // mixed-radix digits of an element index in the factor ordering
    let digits = |mut x: usize| -> Vec<usize> {
        let mut out = vec![0; factors.len()];
        for (j, f) in factors.iter().enumerate().rev() {
            out[j] = x % f;
            x /= f;
        }
        out
    };

    let roots: Vec<ExactScalar> = factors
        .iter()
        .map(|&m| primitive_root_of_unity(field, m))
        .collect::<Result<_>>()?;

    let mut out = Vec::with_capacity(n * n);
    for a in 0..n {
        for chi in 0..n {
            let chi_digits = digits(chi);
            let chi_of = |g: usize| -> ExactScalar {
                let g_digits = match &log_table {
                    Some(log) => vec![log[g]],
                    None => digits(g),
                };
                let mut v = field.one();
                for j in 0..factors.len() {
                    let exp = (chi_digits[j] * g_digits[j]) % factors[j];
                    let mut pow = field.one();
                    for _ in 0..exp {
                        pow = pow * roots[j].clone();
                    }
                    v = v * pow;
                }
                v
            };
            let a_family: Vec<Matrix> = (0..n)
                .map(|g| {
                    let mut m = Matrix::zeros(field, 1, 1);
                    m[(0, 0)] = chi_of(g);
                    m
                })
                .collect();
            let b_family: Vec<Matrix> = (0..n)
                .map(|h| {
                    let mut m = Matrix::zeros(field, 1, 1);
                    m[(0, 0)] = if h == a { field.one() } else { field.zero() };
                    m
                })
                .collect();
            out.push((
                DoubleRep { dim_v: 1, a_family, b_family },
                TraceFunctional::usual(field, 1),
            ));
        }
    }
    Ok(out)
}

/// Smallest element of multiplicative order exactly `m` in the field.
fn primitive_root_of_unity(field: Field, m: usize) -> Result<ExactScalar> {
    match field {
        Field::Rational => match m {
            1 => Ok(field.one()),
            2 => Ok(field.from_i64(-1)),
            _ => Err(Error::MissingRootOfUnity(format!(
                "the rationals have no primitive {m}-th root of unity; use a prime field with {m} | p - 1"
            ))),
        },
        Field::Prime(p) => {
            if m == 0 || (p as usize - 1) % m != 0 {
                return Err(Error::MissingRootOfUnity(format!(
                    "F_{p} has no element of order {m}"
                )));
            }
            for cand in 1..p {
                let x = field.from_i64(cand as i64);
                let mut pow = field.one();
                let mut order = 0usize;
                for k in 1..=m {
                    pow = pow * x.clone();
                    if pow.is_one() {
                        order = k;
                        break;
                    }
                }
                if order == m {
                    return Ok(x);
                }
            }
            Err(Error::MissingRootOfUnity(format!("F_{p} has no element of order {m}")))
        }
    }
}

/// Outcome of the trace-functional checks.
#[derive(Debug, Clone)]
pub struct TraceReport {
    pub trace_like: bool,
    pub antipode_invariant: bool,
    pub witness: Option<String>,
}

impl TraceReport {
    pub fn all_pass(&self) -> bool {
        self.trace_like && self.antipode_invariant
    }
}

/// Checks T(rho(x) rho(y)) = T(rho(y) rho(x)) on all basis pairs of D(H) and
/// antipode invariance T(rho(S x)) = T(rho(x)) on all basis elements.
pub fn check_trace(
    rep: &DoubleRep,
    trace: &TraceFunctional,
    d: &DoubleAlgebra,
) -> Result<TraceReport> {
    let n = d.factor.dim;
    if !rep.shape_ok(n) || trace.weight.rows != rep.dim_v || trace.weight.cols != rep.dim_v {
        return Err(Error::ShapeMismatch("trace/representation shapes disagree".into()));
    }
    let mut report = TraceReport { trace_like: true, antipode_invariant: true, witness: None };

    // precompute rho of every double basis element and its weighted form
    let mut mats = Vec::with_capacity(d.dim);
    for k in 0..d.dim {
        let (p, i) = d.unflat(k);
        mats.push(rep.rho(p, i));
    }
    let weighted: Vec<Matrix> = mats.iter().map(|m| trace.weight.mul(m)).collect();

    'pairs: for x in 0..d.dim {
        for y in 0..d.dim {
            let lhs = trace_of_product(&weighted[x], &mats[y]);
            let rhs = trace_of_product(&weighted[y], &mats[x]);
            if lhs != rhs {
                report.trace_like = false;
                report.witness.get_or_insert(format!("trace-like at pair ({x},{y})"));
                break 'pairs;
            }
        }
    }

    for x in 0..d.dim {
        let mut s_img = Matrix::zeros(d.field(), rep.dim_v, rep.dim_v);
        for (y, c) in d.antipode_basis_owned(x) {
            let (p, i) = d.unflat(y);
            s_img = s_img.add(&rep.rho(p, i).scale(&c));
        }
        if trace.evaluate(&s_img) != trace.evaluate(&mats[x]) {
            report.antipode_invariant = false;
            report.witness.get_or_insert(format!("antipode invariance at basis {x}"));
            break;
        }
    }

    Ok(report)
}

/// Applies the outcome of [`check_trace`] to the functional's flags.
pub fn mark_trace(trace: &mut TraceFunctional, report: &TraceReport) {
    trace.trace_like_verified = report.trace_like;
    trace.antipode_invariant_verified = report.antipode_invariant;
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::double::drinfeld_double;
    use crate::group;
    use crate::hopf::{build_group_algebra, solve_integrals};

    fn double_of(gr: &group::GroupTable) -> DoubleAlgebra {
        let h = build_group_algebra(gr, Field::Rational).unwrap();
        let pair = solve_integrals(&h).unwrap();
        drinfeld_double(&h, &pair).unwrap()
    }

    #[test]
    fn regular_rep_of_z3_double_passes() {
        let d = double_of(&group::cyclic(3));
        let (rep, trace) = make_regular_rep(&d);
        assert_eq!(rep.dim_v, 9);
        let report = check_double_rep(&d, &rep).unwrap();
        assert!(report.all_pass(), "{report:?}");
        let t = check_trace(&rep, &trace, &d).unwrap();
        assert!(t.all_pass(), "{t:?}");
        // T(rho(1)) = lambda(1) = |G| = 3
        let one_mat = Matrix::identity(Field::Rational, 9);
        assert_eq!(trace.evaluate(&one_mat), Field::Rational.from_i64(3));
        // T(rho(x)) = lambda(x) on every basis element
        for k in 0..d.dim {
            let (p, i) = d.unflat(k);
            let mut basis = vec![Field::Rational.zero(); d.dim];
            basis[k] = Field::Rational.one();
            assert_eq!(trace.evaluate(&rep.rho(p, i)), d.lambda_of(&basis));
        }
    }

    #[test]
    fn regular_rep_dimension_of_s3_double() {
        let d = double_of(&group::symmetric(3));
        let (rep, _) = make_regular_rep(&d);
        assert_eq!(rep.dim_v, 36);
    }

    #[test]
    fn regular_trace_like_on_z2_double_all_pairs() {
        let d = double_of(&group::cyclic(2));
        let (rep, trace) = make_regular_rep(&d);
        let t = check_trace(&rep, &trace, &d).unwrap();
        assert!(t.trace_like && t.antipode_invariant);
    }

    #[test]
    fn transposed_a_family_fails_straightening_on_s3() {
        let d = double_of(&group::symmetric(3));
        let (mut rep, _) = make_regular_rep(&d);
        rep.a_family = rep.a_family.iter().map(|m| m.transpose()).collect();
        let report = check_double_rep(&d, &rep).unwrap();
        assert!(!report.all_pass());
        assert!(report.witness.is_some());
    }

    #[test]
    fn trivial_group_rep_passes() {
        let d = double_of(&group::cyclic(1));
        let (rep, trace) = make_regular_rep(&d);
        assert!(check_double_rep(&d, &rep).unwrap().all_pass());
        assert!(check_trace(&rep, &trace, &d).unwrap().all_pass());
    }

    #[test]
    fn rho_r_on_double_of_z2() {
        let d = double_of(&group::cyclic(2));
        let q = d.as_quasitriangular().unwrap();
        let (rep, trace) = make_rho_r(&q, &d.double_pair()).unwrap();
        assert_eq!(rep.dim_v, 4);
        // verify against the double of D(k[Z/2]) built lazily
        let dd =
            crate::double::drinfeld_double_with_threshold(&q.algebra, &d.double_pair(), 0).unwrap();
        let report = check_double_rep(&dd, &rep).unwrap();
        assert!(report.all_pass(), "{report:?}");
        let t = check_trace(&rep, &trace, &dd).unwrap();
        assert!(t.all_pass(), "{t:?}");
        // B evaluated on the counit acts as the identity, by (eps x id) R = 1
        let eps = q.algebra.counit_coords();
        let mut b_eps = Matrix::zeros(Field::Rational, 4, 4);
        for (p, c) in eps.iter().enumerate() {
            if !c.is_zero() {
                b_eps = b_eps.add(&rep.b_family[p].scale(c));
            }
        }
        assert!(b_eps.is_identity());
    }

    #[test]
    fn rho_r_trivial_algebra() {
        let d = double_of(&group::cyclic(1));
        let q = d.as_quasitriangular().unwrap();
        let (rep, _) = make_rho_r(&q, &d.double_pair()).unwrap();
        assert_eq!(rep.dim_v, 1);
        assert!(rep.a_family[0].is_identity());
    }

    #[test]
    fn abelian_irreps_of_z2() {
        let d = double_of(&group::cyclic(2));
        let reps = abelian_double_irreps(&group::cyclic(2), Field::Rational).unwrap();
        assert_eq!(reps.len(), 4);
        for (rep, trace) in &reps {
            assert_eq!(rep.dim_v, 1);
            assert!(check_double_rep(&d, rep).unwrap().all_pass());
            // usual trace is trace-like for 1-dimensional carriers
            let t = check_trace(rep, trace, &d).unwrap();
            assert!(t.trace_like);
        }
        // pairwise distinct
        for i in 0..4 {
            for j in i + 1..4 {
                assert_ne!(reps[i].0, reps[j].0);
            }
        }
    }

    #[test]
    fn abelian_irreps_of_z3_need_prime_field() {
        assert!(matches!(
            abelian_double_irreps(&group::cyclic(3), Field::Rational),
            Err(Error::MissingRootOfUnity(_))
        ));
        let field = Field::Prime(7);
        let h = build_group_algebra(&group::cyclic(3), field).unwrap();
        let pair = solve_integrals(&h).unwrap();
        let d = drinfeld_double(&h, &pair).unwrap();
        let reps = abelian_double_irreps(&group::cyclic(3), field).unwrap();
        assert_eq!(reps.len(), 9);
        for (rep, _) in &reps {
            assert!(check_double_rep(&d, rep).unwrap().all_pass());
        }
        for i in 0..9 {
            for j in i + 1..9 {
                assert_ne!(reps[i].0, reps[j].0);
            }
        }
    }

    #[test]
    fn nonabelian_group_rejected() {
        assert!(matches!(
            abelian_double_irreps(&group::symmetric(3), Field::Rational),
            Err(Error::NotAbelian(_))
        ));
    }

    #[test]
    fn bad_weight_matrix_fails_trace_like() {
        // An elementary matrix unit is not trace-like on a noncommutative image.
        let d = double_of(&group::symmetric(3));
        let (rep, _) = make_regular_rep(&d);
        let mut w = Matrix::zeros(Field::Rational, 36, 36);
        w[(0, 1)] = Field::Rational.one();
        let trace = TraceFunctional::new(w);
        let t = check_trace(&rep, &trace, &d).unwrap();
        assert!(!t.trace_like);
        assert!(t.witness.is_some());
    }
}
