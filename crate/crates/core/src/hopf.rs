//! Finite-dimensional Hopf algebras as structure constants, with executable
//! axiom verification, integral/cointegral solving, and the standard
//! constructions (group algebras, duals, opposites).
//!
//! Structure tensors use fixed leg layouts:
//! multiplication `(2,1)` as `[In a, In b, Out c]` with `x_a x_b = sum M[a,b,c] x_c`,
//! comultiplication `(1,2)` as `[In a, Out b, Out c]` with the first Sweedler
//! factor on leg 1, unit `(0,1)`, counit `(1,0)`, antipode `(1,1)`.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::group::GroupTable;
use crate::linalg::{self, Matrix};
use crate::scalar::{ExactScalar, Field};
use crate::tensor::{Leg, Tensor};

/// A Hopf algebra given by its structure-constant tensors over a chosen basis.
#[derive(Debug, Clone)]
pub struct HopfAlgebraData {
    pub dim: usize,
    pub labels: Vec<String>,
    pub field: Field,
    pub mult: Tensor,
    pub unit: Tensor,
    pub comult: Tensor,
    pub counit: Tensor,
    pub antipode: Tensor,
    axioms_verified: bool,
    involutory_verified: bool,
    cache: Cache,
}

/// Index caches for the hot loops (double construction, axiom checks).
#[derive(Debug, Clone, Default)]
struct Cache {
    /// `mult[a][b]` = sparse product of basis elements a, b.
    mult: Vec<Vec<Vec<(usize, ExactScalar)>>>,
    /// `comult[a]` = sparse list of (first, second, coefficient).
    comult: Vec<Vec<(usize, usize, ExactScalar)>>,
    /// `antipode[a]` = sparse image of basis element a.
    antipode: Vec<Vec<(usize, ExactScalar)>>,
    unit: Vec<ExactScalar>,
    counit: Vec<ExactScalar>,
    /// `mult_by_out[p]` = list of (a, b, coeff) with coeff = (x_a x_b)[p].
    mult_by_out: Vec<Vec<(usize, usize, ExactScalar)>>,
    /// `comult_by_first[p]` = list of (a, second, coeff) with
    /// Delta(x_a) carrying coeff at (p, second).
    comult_by_first: Vec<Vec<(usize, usize, ExactScalar)>>,
}

/// Structure-map access shared by dense Hopf data and lazily multiplied
/// algebras (large Drinfeld doubles).
pub trait HopfOps {
    fn dim(&self) -> usize;
    fn field(&self) -> Field;
    fn mul_basis_owned(&self, a: usize, b: usize) -> Vec<(usize, ExactScalar)>;
    fn comul_basis_owned(&self, a: usize) -> Vec<(usize, usize, ExactScalar)>;
    fn antipode_basis_owned(&self, a: usize) -> Vec<(usize, ExactScalar)>;
    fn one_coords(&self) -> Vec<ExactScalar>;
    fn counit_coords_owned(&self) -> Vec<ExactScalar>;

    fn mul_elems(&self, x: &[ExactScalar], y: &[ExactScalar]) -> Vec<ExactScalar> {
        let mut out = vec![self.field().zero(); self.dim()];
        for a in 0..self.dim() {
            if x[a].is_zero() {
                continue;
            }
            for b in 0..self.dim() {
                if y[b].is_zero() {
                    continue;
                }
                let coef = x[a].clone() * y[b].clone();
                for (c, m) in self.mul_basis_owned(a, b) {
                    out[c] = out[c].clone() + coef.clone() * m;
                }
            }
        }
        out
    }

    fn antipode_elem(&self, x: &[ExactScalar]) -> Vec<ExactScalar> {
        let mut out = vec![self.field().zero(); self.dim()];
        for a in 0..self.dim() {
            if x[a].is_zero() {
                continue;
            }
            for (b, s) in self.antipode_basis_owned(a) {
                out[b] = out[b].clone() + x[a].clone() * s;
            }
        }
        out
    }
}

impl HopfOps for HopfAlgebraData {
    fn dim(&self) -> usize {
        self.dim
    }
    fn field(&self) -> Field {
        self.field
    }
    fn mul_basis_owned(&self, a: usize, b: usize) -> Vec<(usize, ExactScalar)> {
        self.cache.mult[a][b].clone()
    }
    fn comul_basis_owned(&self, a: usize) -> Vec<(usize, usize, ExactScalar)> {
        self.cache.comult[a].clone()
    }
    fn antipode_basis_owned(&self, a: usize) -> Vec<(usize, ExactScalar)> {
        self.cache.antipode[a].clone()
    }
    fn one_coords(&self) -> Vec<ExactScalar> {
        self.cache.unit.clone()
    }
    fn counit_coords_owned(&self) -> Vec<ExactScalar> {
        self.cache.counit.clone()
    }
}

impl PartialEq for HopfAlgebraData {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim
            && self.field == other.field
            && self.mult == other.mult
            && self.unit == other.unit
            && self.comult == other.comult
            && self.counit == other.counit
            && self.antipode == other.antipode
    }
}

impl HopfAlgebraData {
    /// Assembles the data and validates tensor shapes. Axioms are *not*
    /// checked here; call [`HopfAlgebraData::verify`].
    pub fn from_tensors(
        dim: usize,
        labels: Vec<String>,
        field: Field,
        mult: Tensor,
        unit: Tensor,
        comult: Tensor,
        counit: Tensor,
        antipode: Tensor,
    ) -> Result<HopfAlgebraData> {
        let expect = |t: &Tensor, ins: usize, outs: usize, what: &str| -> Result<()> {
            let in_ok = t.in_legs().len() == ins && t.out_legs().len() == outs;
            let layout_ok = t.in_legs().iter().all(|&i| i < ins) // ins first, outs after
                && t.legs().iter().all(|l| l.dim == dim);
            if !in_ok || !layout_ok || t.field() != field {
                return Err(Error::ShapeMismatch(format!(
                    "{what} tensor must be ({ins},{outs}) at dimension {dim} with in-legs first"
                )));
            }
            Ok(())
        };
        expect(&mult, 2, 1, "multiplication")?;
        expect(&unit, 0, 1, "unit")?;
        expect(&comult, 1, 2, "comultiplication")?;
        expect(&counit, 1, 0, "counit")?;
        expect(&antipode, 1, 1, "antipode")?;
        if labels.len() != dim {
            return Err(Error::ShapeMismatch("label count differs from dimension".into()));
        }
        let mut h = HopfAlgebraData {
            dim,
            labels,
            field,
            mult,
            unit,
            comult,
            counit,
            antipode,
            axioms_verified: false,
            involutory_verified: false,
            cache: Cache::default(),
        };
        h.rebuild_cache();
        Ok(h)
    }

    fn rebuild_cache(&mut self) {
        let n = self.dim;
        let mut cache = Cache {
            mult: vec![vec![Vec::new(); n]; n],
            comult: vec![Vec::new(); n],
            antipode: vec![Vec::new(); n],
            unit: vec![self.field.zero(); n],
            counit: vec![self.field.zero(); n],
            mult_by_out: vec![Vec::new(); n],
            comult_by_first: vec![Vec::new(); n],
        };
        for (idx, v) in self.mult.entries() {
            cache.mult[idx[0] as usize][idx[1] as usize].push((idx[2] as usize, v.clone()));
            cache.mult_by_out[idx[2] as usize].push((idx[0] as usize, idx[1] as usize, v.clone()));
        }
        for (idx, v) in self.comult.entries() {
            cache.comult[idx[0] as usize].push((idx[1] as usize, idx[2] as usize, v.clone()));
            cache.comult_by_first[idx[1] as usize].push((idx[0] as usize, idx[2] as usize, v.clone()));
        }
        for (idx, v) in self.antipode.entries() {
            cache.antipode[idx[0] as usize].push((idx[1] as usize, v.clone()));
        }
        for (idx, v) in self.unit.entries() {
            cache.unit[idx[0] as usize] = v.clone();
        }
        for (idx, v) in self.counit.entries() {
            cache.counit[idx[0] as usize] = v.clone();
        }
        self.cache = cache;
    }

    pub fn axioms_verified(&self) -> bool {
        self.axioms_verified
    }

    pub fn involutory_verified(&self) -> bool {
        self.involutory_verified
    }

    /// Runs the axiom suite and records the outcome in the flags.
    pub fn verify(&mut self) -> Result<AxiomReport> {
        let report = check_axioms(self)?;
        self.axioms_verified = report.all_pass();
        self.involutory_verified = self.axioms_verified && report.passed("involutory");
        Ok(report)
    }

    // --- coordinate helpers -------------------------------------------------

    pub fn zero_vec(&self) -> Vec<ExactScalar> {
        vec![self.field.zero(); self.dim]
    }

    /// Coordinates of 1.
    pub fn one_vec(&self) -> Vec<ExactScalar> {
        self.cache.unit.clone()
    }

    /// Coordinates of the counit functional.
    pub fn counit_coords(&self) -> Vec<ExactScalar> {
        self.cache.counit.clone()
    }

    pub fn basis_vec(&self, a: usize) -> Vec<ExactScalar> {
        let mut v = self.zero_vec();
        v[a] = self.field.one();
        v
    }

    pub fn mul_basis(&self, a: usize, b: usize) -> &[(usize, ExactScalar)] {
        &self.cache.mult[a][b]
    }

    pub fn comul_basis(&self, a: usize) -> &[(usize, usize, ExactScalar)] {
        &self.cache.comult[a]
    }

    pub fn antipode_basis(&self, a: usize) -> &[(usize, ExactScalar)] {
        &self.cache.antipode[a]
    }

    /// All (a, b, coeff) with `(x_a x_b)[p] = coeff`.
    pub fn mult_with_out(&self, p: usize) -> &[(usize, usize, ExactScalar)] {
        &self.cache.mult_by_out[p]
    }

    /// All (a, second, coeff) with `Delta(x_a)` carrying `coeff` at `(p, second)`.
    pub fn comult_with_first(&self, p: usize) -> &[(usize, usize, ExactScalar)] {
        &self.cache.comult_by_first[p]
    }

    pub fn mul_vecs(&self, x: &[ExactScalar], y: &[ExactScalar]) -> Vec<ExactScalar> {
        let mut out = self.zero_vec();
        for a in 0..self.dim {
            if x[a].is_zero() {
                continue;
            }
            for b in 0..self.dim {
                if y[b].is_zero() {
                    continue;
                }
                let coef = x[a].clone() * y[b].clone();
                for (c, m) in &self.cache.mult[a][b] {
                    out[*c] = out[*c].clone() + coef.clone() * m.clone();
                }
            }
        }
        out
    }

    pub fn antipode_vec(&self, x: &[ExactScalar]) -> Vec<ExactScalar> {
        let mut out = self.zero_vec();
        for a in 0..self.dim {
            if x[a].is_zero() {
                continue;
            }
            for (b, s) in &self.cache.antipode[a] {
                out[*b] = out[*b].clone() + x[a].clone() * s.clone();
            }
        }
        out
    }

    pub fn counit_of(&self, x: &[ExactScalar]) -> ExactScalar {
        let mut t = self.field.zero();
        for a in 0..self.dim {
            if !x[a].is_zero() {
                t = t + x[a].clone() * self.cache.counit[a].clone();
            }
        }
        t
    }

    /// Iterated coproduct of a basis element: list of ((b, c, d), coeff) with
    /// `(id x Delta) Delta`.
    pub fn comul3_basis(&self, a: usize) -> Vec<((usize, usize, usize), ExactScalar)> {
        let mut out = Vec::new();
        for (b, c, v) in &self.cache.comult[a] {
            for (c1, c2, w) in &self.cache.comult[*c] {
                out.push(((*b, *c1, *c2), v.clone() * w.clone()));
            }
        }
        out
    }

    /// The matrix of left multiplication by the element `x`.
    pub fn left_mult_matrix(&self, x: &[ExactScalar]) -> Matrix {
        let mut m = Matrix::zeros(self.field, self.dim, self.dim);
        for b in 0..self.dim {
            let col = self.mul_vecs(x, &self.basis_vec(b));
            for (r, v) in col.into_iter().enumerate() {
                if !v.is_zero() {
                    m[(r, b)] = v;
                }
            }
        }
        m
    }

    /// The antipode as a matrix (column `a` = image of basis element `a`).
    pub fn antipode_matrix(&self) -> Matrix {
        let mut m = Matrix::zeros(self.field, self.dim, self.dim);
        for a in 0..self.dim {
            for (b, s) in &self.cache.antipode[a] {
                m[(*b, a)] = s.clone();
            }
        }
        m
    }
}

/// One named identity in the axiom report.
#[derive(Debug, Clone)]
pub struct AxiomCheck {
    pub name: &'static str,
    pub pass: bool,
    /// Basis multi-index at which the identity first failed.
    pub witness: Option<String>,
}

/// Per-axiom pass/fail results for a Hopf algebra candidate.
#[derive(Debug, Clone)]
pub struct AxiomReport {
    pub checks: Vec<AxiomCheck>,
}

impl AxiomReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn passed(&self, name: &str) -> bool {
        self.checks.iter().any(|c| c.name == name && c.pass)
    }

    pub fn first_failure(&self) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| !c.pass)
    }
}

fn vecs_equal(a: &[ExactScalar], b: &[ExactScalar]) -> bool {
    a == b
}

/// Evaluates every defining identity of a Hopf algebra (plus the involutory
/// condition, the standard derived identities, and ladder invertibility) as
/// exact tensor equations, reporting a witness index on each failure.
pub fn check_axioms(h: &HopfAlgebraData) -> Result<AxiomReport> {
    let n = h.dim;
    let field = h.field;
    let mut checks: Vec<AxiomCheck> = Vec::new();
    let mut push = |name: &'static str, witness: Option<String>| {
        checks.push(AxiomCheck { name, pass: witness.is_none(), witness });
    };

    // Axiom 1: associativity
    let mut wit = None;
    'assoc: for a in 0..n {
        for b in 0..n {
            let ab = h.mul_vecs(&h.basis_vec(a), &h.basis_vec(b));
            for c in 0..n {
                let left = h.mul_vecs(&ab, &h.basis_vec(c));
                let bc = h.mul_vecs(&h.basis_vec(b), &h.basis_vec(c));
                let right = h.mul_vecs(&h.basis_vec(a), &bc);
                if !vecs_equal(&left, &right) {
                    wit = Some(format!("({a},{b},{c})"));
                    break 'assoc;
                }
            }
        }
    }
    push("associativity", wit);

    // Axiom 2: unit
    let one = h.one_vec();
    let mut wit = None;
    for a in 0..n {
        let ea = h.basis_vec(a);
        if !vecs_equal(&h.mul_vecs(&one, &ea), &ea) || !vecs_equal(&h.mul_vecs(&ea, &one), &ea) {
            wit = Some(format!("{a}"));
            break;
        }
    }
    push("unit", wit);

    // Axiom 3: coassociativity
    let mut wit = None;
    for a in 0..n {
        // (Delta x id) Delta
        let mut left: BTreeMap<(usize, usize, usize), ExactScalar> = BTreeMap::new();
        for (b, c, v) in h.comul_basis(a) {
            for (b1, b2, w) in h.comul_basis(*b) {
                let e = left.entry((*b1, *b2, *c)).or_insert_with(|| field.zero());
                *e = e.clone() + v.clone() * w.clone();
            }
        }
        left.retain(|_, v| !v.is_zero());
        let mut right: BTreeMap<(usize, usize, usize), ExactScalar> = BTreeMap::new();
        for ((x, y, z), v) in h.comul3_basis(a) {
            let e = right.entry((x, y, z)).or_insert_with(|| field.zero());
            *e = e.clone() + v;
        }
        right.retain(|_, v| !v.is_zero());
        if left != right {
            wit = Some(format!("{a}"));
            break;
        }
    }
    push("coassociativity", wit);

    // Axiom 4: counit
    let mut wit = None;
    for a in 0..n {
        let mut left = h.zero_vec();
        let mut right = h.zero_vec();
        for (b, c, v) in h.comul_basis(a) {
            // (id x eps) Delta and (eps x id) Delta
            left[*b] = left[*b].clone() + v.clone() * h.cache.counit[*c].clone();
            right[*c] = right[*c].clone() + v.clone() * h.cache.counit[*b].clone();
        }
        let ea = h.basis_vec(a);
        if !vecs_equal(&left, &ea) || !vecs_equal(&right, &ea) {
            wit = Some(format!("{a}"));
            break;
        }
    }
    push("counit", wit);

    // Axiom 5: bialgebra (Delta and eps are algebra maps, Delta(1) = 1 x 1)
    let comul_vec = |x: &[ExactScalar]| -> BTreeMap<(usize, usize), ExactScalar> {
        let mut out: BTreeMap<(usize, usize), ExactScalar> = BTreeMap::new();
        for a in 0..n {
            if x[a].is_zero() {
                continue;
            }
            for (b, c, v) in h.comul_basis(a) {
                let e = out.entry((*b, *c)).or_insert_with(|| field.zero());
                *e = e.clone() + x[a].clone() * v.clone();
            }
        }
        out.retain(|_, v| !v.is_zero());
        out
    };
    let mut wit = None;
    'bialg: for a in 0..n {
        for b in 0..n {
            let ab = h.mul_vecs(&h.basis_vec(a), &h.basis_vec(b));
            let left = comul_vec(&ab);
            // Delta(a) Delta(b) with componentwise multiplication in H x H
            let mut right: BTreeMap<(usize, usize), ExactScalar> = BTreeMap::new();
            for (a1, a2, v) in h.comul_basis(a) {
                for (b1, b2, w) in h.comul_basis(b) {
                    let coef = v.clone() * w.clone();
                    for (c1, m1) in h.mul_basis(*a1, *b1) {
                        for (c2, m2) in h.mul_basis(*a2, *b2) {
                            let e = right.entry((*c1, *c2)).or_insert_with(|| field.zero());
                            *e = e.clone() + coef.clone() * m1.clone() * m2.clone();
                        }
                    }
                }
            }
            right.retain(|_, v| !v.is_zero());
            if left != right {
                wit = Some(format!("({a},{b})"));
                break 'bialg;
            }
        }
    }
    push("bialgebra_mult", wit);

    let mut wit = None;
    {
        let left = comul_vec(&one);
        let mut right: BTreeMap<(usize, usize), ExactScalar> = BTreeMap::new();
        for i in 0..n {
            for j in 0..n {
                let v = one[i].clone() * one[j].clone();
                if !v.is_zero() {
                    right.insert((i, j), v);
                }
            }
        }
        if left != right {
            wit = Some("unit".into());
        }
    }
    push("bialgebra_unit", wit);

    // eps(ab) = eps(a) eps(b) (holds in any Hopf algebra; kept as a named check)
    let mut wit = None;
    'counitmul: for a in 0..n {
        for b in 0..n {
            let ab = h.mul_vecs(&h.basis_vec(a), &h.basis_vec(b));
            let left = h.counit_of(&ab);
            let right = h.cache.counit[a].clone() * h.cache.counit[b].clone();
            if left != right {
                wit = Some(format!("({a},{b})"));
                break 'counitmul;
            }
        }
    }
    push("counit_mult", wit);

    // Axiom 6: antipode
    let mut wit = None;
    for a in 0..n {
        let mut left = h.zero_vec();
        let mut right = h.zero_vec();
        for (b, c, v) in h.comul_basis(a) {
            // M(S(b) x c) and M(b x S(c))
            for (sb, s) in h.antipode_basis(*b) {
                for (d, m) in h.mul_basis(*sb, *c) {
                    left[*d] = left[*d].clone() + v.clone() * s.clone() * m.clone();
                }
            }
            for (sc, s) in h.antipode_basis(*c) {
                for (d, m) in h.mul_basis(*b, *sc) {
                    right[*d] = right[*d].clone() + v.clone() * s.clone() * m.clone();
                }
            }
        }
        let target: Vec<ExactScalar> =
            one.iter().map(|u| u.clone() * h.cache.counit[a].clone()).collect();
        if !vecs_equal(&left, &target) || !vecs_equal(&right, &target) {
            wit = Some(format!("{a}"));
            break;
        }
    }
    push("antipode", wit);

    // involutory: S(S(x)) = x
    let mut wit = None;
    for a in 0..n {
        let ss = h.antipode_vec(&h.antipode_vec(&h.basis_vec(a)));
        if !vecs_equal(&ss, &h.basis_vec(a)) {
            wit = Some(format!("{a}"));
            break;
        }
    }
    push("involutory", wit);

    // S is an anti-algebra morphism, S(1) = 1
    let mut wit = None;
    'antihom: for a in 0..n {
        for b in 0..n {
            let left = h.antipode_vec(&h.mul_vecs(&h.basis_vec(a), &h.basis_vec(b)));
            let right = h.mul_vecs(
                &h.antipode_vec(&h.basis_vec(b)),
                &h.antipode_vec(&h.basis_vec(a)),
            );
            if !vecs_equal(&left, &right) {
                wit = Some(format!("({a},{b})"));
                break 'antihom;
            }
        }
    }
    push("antipode_antihom", wit);

    let wit = if vecs_equal(&h.antipode_vec(&one), &one) {
        None
    } else {
        Some("unit".into())
    };
    push("antipode_unit", wit);

    // Ladder invertibility: four operators on H x H of size dim^2.
    let idx = |x: usize, y: usize| x * n + y;
    let mut ladders: Vec<(&'static str, Matrix)> = Vec::new();
    for (name, use_s, cop) in [
        ("ladder_m_delta", false, false),
        ("ladder_m_s_delta", true, false),
        ("ladder_m_delta_cop", false, true),
        ("ladder_m_s_delta_cop", true, true),
    ] {
        let mut m = Matrix::zeros(field, n * n, n * n);
        for x in 0..n {
            for y in 0..n {
                for (y1, y2, v) in h.comul_basis(y) {
                    let (first, second) = if cop { (*y2, *y1) } else { (*y1, *y2) };
                    let targets: Vec<(usize, ExactScalar)> = if use_s {
                        h.antipode_basis(first).to_vec()
                    } else {
                        vec![(first, field.one())]
                    };
                    for (f, s) in targets {
                        for (c, mm) in h.mul_basis(x, f) {
                            let r = idx(*c, second);
                            let cur = m[(r, idx(x, y))].clone();
                            m[(r, idx(x, y))] = cur + v.clone() * s.clone() * mm.clone();
                        }
                    }
                }
            }
        }
        ladders.push((name, m));
    }
    for (name, m) in ladders {
        let wit = if linalg::is_invertible(&m) { None } else { Some("singular".into()) };
        push(name, wit);
    }

    Ok(AxiomReport { checks })
}

/// The normalized two-sided integral/cointegral pair.
#[derive(Debug, Clone, PartialEq)]
pub struct IntegralPair {
    /// Two-sided integral as a (1,0) tensor (functional coordinates).
    pub mu: Tensor,
    /// Two-sided cointegral as a (0,1) tensor (element coordinates).
    pub e: Tensor,
    /// The value mu(e) produced by the raw nullspace solutions, before the
    /// rescale to mu(e) = 1.
    pub normalization: ExactScalar,
}

impl IntegralPair {
    pub fn mu_coords(&self) -> Vec<ExactScalar> {
        let field = self.mu.field();
        let dim = self.mu.legs()[0].dim;
        let mut v = vec![field.zero(); dim];
        for (idx, val) in self.mu.entries() {
            v[idx[0] as usize] = val.clone();
        }
        v
    }

    pub fn e_coords(&self) -> Vec<ExactScalar> {
        let field = self.e.field();
        let dim = self.e.legs()[0].dim;
        let mut v = vec![field.zero(); dim];
        for (idx, val) in self.e.entries() {
            v[idx[0] as usize] = val.clone();
        }
        v
    }

    /// mu applied to a coordinate vector.
    pub fn mu_of(&self, x: &[ExactScalar]) -> ExactScalar {
        let mu = self.mu_coords();
        let mut t = mu[0].field().zero();
        for (m, v) in mu.iter().zip(x) {
            if !m.is_zero() && !v.is_zero() {
                t = t + m.clone() * v.clone();
            }
        }
        t
    }
}

/// Solves the one-dimensional integral and cointegral spaces, verifies
/// two-sidedness, and rescales so that mu(e) = 1.
pub fn solve_integrals(h: &HopfAlgebraData) -> Result<IntegralPair> {
    if !h.axioms_verified() {
        return Err(Error::VerificationFailure("axioms must be verified before solving integrals".into()));
    }
    let n = h.dim;
    let field = h.field;
    let one = h.one_vec();

    // Left integral: for all a, sum_{(a)} a_(1) mu(a_(2)) = mu(a) 1.
    // Rows indexed by (a, b): sum_c [Delta_a^{(b,c)}] mu_c - delta_{b-th coord of 1} mu_a = 0.
    let mut rows = Vec::with_capacity(n * n);
    for a in 0..n {
        let mut block = vec![vec![field.zero(); n]; n];
        for (b, c, v) in h.comul_basis(a) {
            block[*b][*c] = block[*b][*c].clone() + v.clone();
        }
        for (b, row) in block.iter_mut().enumerate() {
            row[a] = row[a].clone() - one[b].clone();
            rows.push(row.clone());
        }
    }
    let sys = Matrix::from_rows(field, rows);
    let mu_basis = linalg::nullspace(&sys);
    let mu_raw = mu_basis
        .first()
        .cloned()
        .ok_or_else(|| Error::VerificationFailure("no left integral found".into()))?;

    // Verify the right-integral identity (mu x id) Delta = mu . 1.
    for a in 0..n {
        let mut lhs = h.zero_vec();
        for (b, c, v) in h.comul_basis(a) {
            lhs[*c] = lhs[*c].clone() + v.clone() * mu_raw[*b].clone();
        }
        let rhs: Vec<ExactScalar> = one.iter().map(|u| u.clone() * mu_raw[a].clone()).collect();
        if !vecs_equal(&lhs, &rhs) {
            return Err(Error::NotTwoSided(format!("integral fails the right identity at basis {a}")));
        }
    }

    // Left cointegral: x e = eps(x) e for all basis x.
    // Rows indexed by (a, c): sum_b M[a,b,c] e_b - eps_a e_c = 0.
    let mut rows = Vec::with_capacity(n * n);
    let eps = h.counit_coords();
    for a in 0..n {
        let mut block = vec![vec![field.zero(); n]; n];
        for b in 0..n {
            for (c, m) in h.mul_basis(a, b) {
                block[*c][b] = block[*c][b].clone() + m.clone();
            }
        }
        for (c, row) in block.iter_mut().enumerate() {
            row[c] = row[c].clone() - eps[a].clone();
            rows.push(row.clone());
        }
    }
    let sys = Matrix::from_rows(field, rows);
    let e_basis = linalg::nullspace(&sys);
    let e_raw = e_basis
        .first()
        .cloned()
        .ok_or_else(|| Error::VerificationFailure("no left cointegral found".into()))?;

    // Verify the right-cointegral identity e x = eps(x) e.
    for a in 0..n {
        let lhs = h.mul_vecs(&e_raw, &h.basis_vec(a));
        let rhs: Vec<ExactScalar> = e_raw.iter().map(|u| u.clone() * eps[a].clone()).collect();
        if !vecs_equal(&lhs, &rhs) {
            return Err(Error::NotTwoSided(format!("cointegral fails the right identity at basis {a}")));
        }
    }

    // Normalize mu(e) = 1.
    let mut pairing = field.zero();
    for (m, e) in mu_raw.iter().zip(&e_raw) {
        pairing = pairing + m.clone() * e.clone();
    }
    if pairing.is_zero() {
        return Err(Error::NotNormalizable(
            "mu(e) = 0 in this field; the integral pair cannot be normalized".into(),
        ));
    }
    let scale = pairing.inverse().expect("nonzero");
    let mu: Vec<ExactScalar> = mu_raw.iter().map(|m| m.clone() * scale.clone()).collect();

    // mu . S = mu and S(e) = e (involutory two-sided case).
    let s_e = h.antipode_vec(&e_raw);
    if !vecs_equal(&s_e, &e_raw) {
        return Err(Error::VerificationFailure("S(e) differs from e".into()));
    }
    let st = h.antipode_matrix().transpose();
    let mu_s = st.apply(&mu);
    if !vecs_equal(&mu_s, &mu) {
        return Err(Error::VerificationFailure("mu composed with S differs from mu".into()));
    }

    let mut mu_t = Tensor::zeros(field, vec![Leg::input(n)]);
    for (i, v) in mu.iter().enumerate() {
        mu_t.set(&[i as u32], v.clone());
    }
    let mut e_t = Tensor::zeros(field, vec![Leg::output(n)]);
    for (i, v) in e_raw.iter().enumerate() {
        e_t.set(&[i as u32], v.clone());
    }
    Ok(IntegralPair { mu: mu_t, e: e_t, normalization: pairing })
}

/// Builds the group algebra k[G]: basis = group elements, Delta(g) = g x g,
/// eps(g) = 1, S(g) = the inverse.
pub fn build_group_algebra(table: &GroupTable, field: Field) -> Result<HopfAlgebraData> {
    table.check()?;
    let n = table.order();
    let one = field.one();

    let mut mult = Tensor::zeros(field, vec![Leg::input(n), Leg::input(n), Leg::output(n)]);
    for a in 0..n {
        for b in 0..n {
            mult.set(&[a as u32, b as u32, table.mul(a, b) as u32], one.clone());
        }
    }
    let mut unit = Tensor::zeros(field, vec![Leg::output(n)]);
    unit.set(&[table.identity() as u32], one.clone());
    let mut comult = Tensor::zeros(field, vec![Leg::input(n), Leg::output(n), Leg::output(n)]);
    for a in 0..n {
        comult.set(&[a as u32, a as u32, a as u32], one.clone());
    }
    let mut counit = Tensor::zeros(field, vec![Leg::input(n)]);
    for a in 0..n {
        counit.set(&[a as u32], one.clone());
    }
    let mut antipode = Tensor::zeros(field, vec![Leg::input(n), Leg::output(n)]);
    for a in 0..n {
        antipode.set(&[a as u32, table.inverse(a) as u32], one.clone());
    }

    let mut h = HopfAlgebraData::from_tensors(
        n,
        table.labels.clone(),
        field,
        mult,
        unit,
        comult,
        counit,
        antipode,
    )?;
    let report = h.verify()?;
    if !h.axioms_verified() {
        return Err(Error::VerificationFailure(format!(
            "group algebra failed axiom {:?}",
            report.first_failure().map(|c| c.name)
        )));
    }
    Ok(h)
}

/// The dual Hopf algebra: swap multiplication with comultiplication and unit
/// with counit, transposing everything.
pub fn build_dual(h: &HopfAlgebraData) -> Result<HopfAlgebraData> {
    require_verified(h)?;
    let n = h.dim;
    let field = h.field;
    let mut mult = Tensor::zeros(field, vec![Leg::input(n), Leg::input(n), Leg::output(n)]);
    for (idx, v) in h.comult.entries() {
        // (f_p * f_q)(x_r) = Delta(x_r)[(p,q)]
        mult.set(&[idx[1], idx[2], idx[0]], v.clone());
    }
    let mut unit = Tensor::zeros(field, vec![Leg::output(n)]);
    for (idx, v) in h.counit.entries() {
        unit.set(&[idx[0]], v.clone());
    }
    let mut comult = Tensor::zeros(field, vec![Leg::input(n), Leg::output(n), Leg::output(n)]);
    for (idx, v) in h.mult.entries() {
        comult.set(&[idx[2], idx[0], idx[1]], v.clone());
    }
    let mut counit = Tensor::zeros(field, vec![Leg::input(n)]);
    for (idx, v) in h.unit.entries() {
        counit.set(&[idx[0]], v.clone());
    }
    let mut antipode = Tensor::zeros(field, vec![Leg::input(n), Leg::output(n)]);
    for (idx, v) in h.antipode.entries() {
        antipode.set(&[idx[1], idx[0]], v.clone());
    }
    let labels = h.labels.iter().map(|l| format!("{l}*")).collect();
    let mut d = HopfAlgebraData::from_tensors(n, labels, field, mult, unit, comult, counit, antipode)?;
    let report = d.verify()?;
    if !d.axioms_verified() {
        return Err(Error::VerificationFailure(format!(
            "dual failed axiom {:?}",
            report.first_failure().map(|c| c.name)
        )));
    }
    Ok(d)
}

/// The opposite algebra (H, M^op, i, Delta, eps, S^{-1}).
pub fn build_op(h: &HopfAlgebraData) -> Result<HopfAlgebraData> {
    require_verified(h)?;
    let n = h.dim;
    let mut mult = Tensor::zeros(h.field, vec![Leg::input(n), Leg::input(n), Leg::output(n)]);
    for (idx, v) in h.mult.entries() {
        mult.set(&[idx[1], idx[0], idx[2]], v.clone());
    }
    let mut d = HopfAlgebraData::from_tensors(
        n,
        h.labels.clone(),
        h.field,
        mult,
        h.unit.clone(),
        h.comult.clone(),
        h.counit.clone(),
        antipode_inverse(h)?,
        )?;
    let report = d.verify()?;
    if !d.axioms_verified() {
        return Err(Error::VerificationFailure(format!(
            "opposite failed axiom {:?}",
            report.first_failure().map(|c| c.name)
        )));
    }
    Ok(d)
}

/// The co-opposite algebra (H, M, i, Delta^cop, eps, S^{-1}).
pub fn build_cop(h: &HopfAlgebraData) -> Result<HopfAlgebraData> {
    require_verified(h)?;
    let n = h.dim;
    let mut comult = Tensor::zeros(h.field, vec![Leg::input(n), Leg::output(n), Leg::output(n)]);
    for (idx, v) in h.comult.entries() {
        comult.set(&[idx[0], idx[2], idx[1]], v.clone());
    }
    let mut d = HopfAlgebraData::from_tensors(
        n,
        h.labels.clone(),
        h.field,
        h.mult.clone(),
        h.unit.clone(),
        comult,
        h.counit.clone(),
        antipode_inverse(h)?,
    )?;
    let report = d.verify()?;
    if !d.axioms_verified() {
        return Err(Error::VerificationFailure(format!(
            "co-opposite failed axiom {:?}",
            report.first_failure().map(|c| c.name)
        )));
    }
    Ok(d)
}

fn require_verified(h: &HopfAlgebraData) -> Result<()> {
    if h.axioms_verified() {
        Ok(())
    } else {
        Err(Error::VerificationFailure("operation requires a verified Hopf algebra".into()))
    }
}

fn antipode_inverse(h: &HopfAlgebraData) -> Result<Tensor> {
    let inv = linalg::inverse(&h.antipode_matrix())
        .map_err(|_| Error::VerificationFailure("antipode is not invertible".into()))?;
    let n = h.dim;
    let mut t = Tensor::zeros(h.field, vec![Leg::input(n), Leg::output(n)]);
    for a in 0..n {
        for b in 0..n {
            let v = inv.get(b, a).clone();
            if !v.is_zero() {
                t.set(&[a as u32, b as u32], v);
            }
        }
    }
    Ok(t)
}

/// Which iterated structure map [`power_tensor`] builds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PowerKind {
    Multiply,
    Comultiply,
}

/// Iterated multiplication `(n,1)` or comultiplication `(1,n)`. `n = 0` gives
/// the unit / counit; `n = 1` the identity. The association order is
/// irrelevant by (co)associativity, which the tests pin down.
pub fn power_tensor(h: &HopfAlgebraData, kind: PowerKind, n: usize) -> Result<Tensor> {
    require_verified(h)?;
    match kind {
        PowerKind::Multiply => match n {
            0 => Ok(h.unit.clone()),
            1 => Ok(Tensor::identity(h.field, h.dim)),
            _ => {
                let mut acc = h.mult.clone();
                for _ in 2..n {
                    // contract acc's out-leg into the first in-leg of M
                    acc = acc.contract_with(acc.num_legs() - 1, &h.mult, 0)?;
                }
                Ok(acc)
            }
        },
        PowerKind::Comultiply => match n {
            0 => Ok(h.counit.clone()),
            1 => Ok(Tensor::identity(h.field, h.dim)),
            _ => {
                let mut acc = h.comult.clone();
                for _ in 2..n {
                    // expand the last out-leg with another Delta
                    let last = acc.num_legs() - 1;
                    acc = acc.contract_with(last, &h.comult, 0)?;
                }
                Ok(acc)
            }
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group;

    fn zn(n: usize) -> HopfAlgebraData {
        build_group_algebra(&group::cyclic(n), Field::Rational).unwrap()
    }

    #[test]
    fn one_dimensional_hopf_algebra_passes() {
        let h = zn(1);
        assert!(h.axioms_verified() && h.involutory_verified());
        let pair = solve_integrals(&h).unwrap();
        // mu = eps, e = 1
        assert_eq!(pair.mu_coords(), vec![Field::Rational.from_i64(1)]);
        assert_eq!(pair.e_coords(), vec![Field::Rational.from_i64(1)]);
    }

    #[test]
    fn z2_group_algebra_all_axioms_pass() {
        let h = zn(2);
        let report = check_axioms(&h).unwrap();
        assert!(report.all_pass(), "failed: {:?}", report.first_failure());
        assert!(report.passed("involutory"));
    }

    #[test]
    fn corrupted_antipode_fails_with_witness() {
        // Z/2 group algebra with S replaced by the swap map (not the inverse
        // permutation composed correctly): antipode axiom must fail.
        let mut h = zn(2);
        let mut bad = Tensor::zeros(Field::Rational, vec![Leg::input(2), Leg::output(2)]);
        // send both basis vectors to g (a rank-1 map; not an antipode)
        bad.set(&[0, 1], Field::Rational.from_i64(1));
        bad.set(&[1, 1], Field::Rational.from_i64(1));
        h.antipode = bad;
        h.rebuild_cache();
        let report = check_axioms(&h).unwrap();
        assert!(!report.all_pass());
        let fail = report.checks.iter().find(|c| c.name == "antipode").unwrap();
        assert!(!fail.pass);
        assert!(fail.witness.is_some());
    }

    #[test]
    fn s3_group_algebra_noncommutative_and_valid() {
        let h = build_group_algebra(&group::symmetric(3), Field::Rational).unwrap();
        assert_eq!(h.dim, 6);
        assert!(h.axioms_verified());
        // noncommutative: some pair with ab != ba
        let g = group::symmetric(3);
        assert!((0..6).any(|a| (0..6).any(|b| g.mul(a, b) != g.mul(b, a))));
    }

    #[test]
    fn z3_integrals_are_the_expected_pair() {
        let h = zn(3);
        let pair = solve_integrals(&h).unwrap();
        let q = |x: i64| Field::Rational.from_i64(x);
        // mu = coefficient of the identity, e = sum of the group elements
        assert_eq!(pair.mu_coords(), vec![q(1), q(0), q(0)]);
        assert_eq!(pair.e_coords(), vec![q(1), q(1), q(1)]);
        assert!(pair.normalization.is_one());
        // defining identities, directly
        for a in 0..3 {
            let mut lhs = h.zero_vec();
            for (b, c, v) in h.comul_basis(a) {
                lhs[*b] = lhs[*b].clone() + v.clone() * pair.mu_coords()[*c].clone();
            }
            let rhs: Vec<_> = h
                .one_vec()
                .iter()
                .map(|u| u.clone() * pair.mu_coords()[a].clone())
                .collect();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn z2_over_f2_normalizes_with_mu_e_equal_one() {
        // In characteristic 2 the integral pair of k[Z/2] is still mu = delta
        // at the identity and e = 1 + g, and mu(e) = 1, so normalization
        // succeeds even though the algebra is no longer semisimple.
        let h = build_group_algebra(&group::cyclic(2), Field::Prime(2)).unwrap();
        let pair = solve_integrals(&h).unwrap();
        let f = Field::Prime(2);
        assert_eq!(pair.mu_coords(), vec![f.one(), f.zero()]);
        assert_eq!(pair.e_coords(), vec![f.one(), f.one()]);
        assert!(pair.normalization.is_one());
    }

    #[test]
    fn dual_of_z2_is_the_function_algebra() {
        let h = zn(2);
        let d = build_dual(&h).unwrap();
        assert!(d.axioms_verified());
        // multiplication is diagonal (pointwise): f_p f_q = delta_{pq} f_p
        for p in 0..2 {
            for q in 0..2 {
                let prod = d.mul_vecs(&d.basis_vec(p), &d.basis_vec(q));
                let expect = if p == q { d.basis_vec(p) } else { d.zero_vec() };
                assert_eq!(prod, expect);
            }
        }
        // comultiplication follows the group law
        let got: Vec<_> = d.comul_basis(0).to_vec();
        // Delta(f_0) = f_0 x f_0 + f_1 x f_1 for Z/2
        assert_eq!(got.len(), 2);
    }

    #[test]
    fn dual_of_dual_is_original() {
        for h in [zn(3), build_group_algebra(&group::symmetric(3), Field::Rational).unwrap()] {
            let dd = build_dual(&build_dual(&h).unwrap()).unwrap();
            assert_eq!(dd.mult, h.mult);
            assert_eq!(dd.comult, h.comult);
            assert_eq!(dd.unit, h.unit);
            assert_eq!(dd.counit, h.counit);
            assert_eq!(dd.antipode, h.antipode);
        }
    }

    #[test]
    fn op_of_commutative_algebra_is_itself() {
        let h = zn(4);
        let op = build_op(&h).unwrap();
        assert_eq!(op.mult, h.mult);
        assert_eq!(op.antipode, h.antipode); // involutory: S^{-1} = S
    }

    #[test]
    fn power_tensor_edge_cases() {
        let h = zn(2);
        assert_eq!(power_tensor(&h, PowerKind::Multiply, 0).unwrap(), h.unit);
        assert_eq!(
            power_tensor(&h, PowerKind::Comultiply, 1).unwrap(),
            Tensor::identity(Field::Rational, 2)
        );
        assert_eq!(power_tensor(&h, PowerKind::Comultiply, 0).unwrap(), h.counit);
    }

    #[test]
    fn comultiply_cubed_of_cointegral_is_diagonal_sum() {
        // In k[Z/2], Delta^(3) applied to e = sum_g g gives sum_g g x g x g.
        let h = zn(2);
        let pair = solve_integrals(&h).unwrap();
        let d3 = power_tensor(&h, PowerKind::Comultiply, 3).unwrap();
        let applied = pair.e.contract_with(0, &d3, 0).unwrap();
        let one = Field::Rational.from_i64(1);
        assert_eq!(applied.num_entries(), 2);
        assert_eq!(applied.get(&[0, 0, 0]), one);
        assert_eq!(applied.get(&[1, 1, 1]), one);
    }

    #[test]
    fn power_tensor_association_order_irrelevant() {
        let h = build_group_algebra(&group::symmetric(3), Field::Rational).unwrap();
        for n in 2..=5 {
            // left fold (as implemented) vs an explicit right fold
            let left = power_tensor(&h, PowerKind::Multiply, n).unwrap();
            let mut right = h.mult.clone();
            for _ in 2..n {
                right = h.mult.contract_with(2, &right, 0).unwrap();
            }
            assert_eq!(left, right, "multiply power {n}");
        }
    }
}
