//! Multi-leg tensors over an exact field.
//!
//! A tensor has an ordered list of legs, each directed `In` or `Out`, and its
//! entries are stored sparsely: only nonzero coefficients are kept, in a
//! `BTreeMap` so all iteration (and therefore all arithmetic) is
//! deterministic. Dense row-major import/export is provided for I/O.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::scalar::{ExactScalar, Field};

/// Direction of a tensor leg. `Out` legs carry elements of the vector space,
/// `In` legs eat them; contraction joins an `Out` leg to an `In` leg.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LegDir {
    In,
    Out,
}

/// One leg: a direction and a dimension.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Leg {
    pub dir: LegDir,
    pub dim: usize,
}

impl Leg {
    pub fn input(dim: usize) -> Leg {
        Leg { dir: LegDir::In, dim }
    }

    pub fn output(dim: usize) -> Leg {
        Leg { dir: LegDir::Out, dim }
    }
}

/// A sparse exact tensor. Zero entries are never stored, so structural
/// equality is semantic equality.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tensor {
    field: Field,
    legs: Vec<Leg>,
    entries: BTreeMap<Vec<u32>, ExactScalar>,
}

impl Tensor {
    /// The zero tensor with the given legs.
    pub fn zeros(field: Field, legs: Vec<Leg>) -> Tensor {
        Tensor { field, legs, entries: BTreeMap::new() }
    }

    /// A 0-leg tensor holding a single scalar.
    pub fn scalar(value: ExactScalar) -> Tensor {
        let field = value.field();
        let mut entries = BTreeMap::new();
        if !value.is_zero() {
            entries.insert(Vec::new(), value);
        }
        Tensor { field, legs: Vec::new(), entries }
    }

    /// The identity map as a (1,1) tensor of the given dimension.
    pub fn identity(field: Field, dim: usize) -> Tensor {
        let mut t = Tensor::zeros(field, vec![Leg::input(dim), Leg::output(dim)]);
        for i in 0..dim as u32 {
            t.set(&[i, i], field.one());
        }
        t
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn legs(&self) -> &[Leg] {
        &self.legs
    }

    pub fn num_legs(&self) -> usize {
        self.legs.len()
    }

    /// Product of all leg dimensions (the dense size).
    pub fn dense_len(&self) -> usize {
        self.legs.iter().map(|l| l.dim).product()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Vec<u32>, &ExactScalar)> {
        self.entries.iter()
    }

    pub fn num_entries(&self) -> usize {
        self.entries.len()
    }

    fn check_index(&self, idx: &[u32]) {
        assert_eq!(idx.len(), self.legs.len(), "index arity mismatch");
        for (i, leg) in idx.iter().zip(&self.legs) {
            assert!((*i as usize) < leg.dim, "index out of range");
        }
    }

    /// Reads one coefficient.
    pub fn get(&self, idx: &[u32]) -> ExactScalar {
        self.check_index(idx);
        self.entries
            .get(idx)
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    /// Writes one coefficient (removing it when zero).
    pub fn set(&mut self, idx: &[u32], value: ExactScalar) {
        self.check_index(idx);
        if value.is_zero() {
            self.entries.remove(idx);
        } else {
            self.entries.insert(idx.to_vec(), value);
        }
    }

    /// Adds `value` into one coefficient.
    pub fn add_at(&mut self, idx: &[u32], value: ExactScalar) {
        if value.is_zero() {
            return;
        }
        self.check_index(idx);
        let cur = self.entries.remove(idx).unwrap_or_else(|| self.field.zero());
        let next = cur + value;
        if !next.is_zero() {
            self.entries.insert(idx.to_vec(), next);
        }
    }

    /// Builds a tensor from dense row-major data (last leg fastest).
    pub fn from_dense(field: Field, legs: Vec<Leg>, data: Vec<ExactScalar>) -> Result<Tensor> {
        let expected: usize = legs.iter().map(|l| l.dim).product();
        if data.len() != expected {
            return Err(Error::ShapeMismatch(format!(
                "dense data length {} but legs require {}",
                data.len(),
                expected
            )));
        }
        let mut t = Tensor::zeros(field, legs);
        let mut idx = vec![0u32; t.legs.len()];
        for value in data {
            if !value.is_zero() {
                if value.field() != field {
                    return Err(Error::FieldMismatch("dense entry from wrong field".into()));
                }
                t.entries.insert(idx.clone(), value);
            }
            // advance row-major index
            for k in (0..t.legs.len()).rev() {
                idx[k] += 1;
                if (idx[k] as usize) < t.legs[k].dim {
                    break;
                }
                idx[k] = 0;
            }
        }
        Ok(t)
    }

    /// Exports dense row-major data.
    pub fn to_dense(&self) -> Vec<ExactScalar> {
        let mut out = vec![self.field.zero(); self.dense_len()];
        let strides = self.strides();
        for (idx, v) in &self.entries {
            let flat: usize = idx
                .iter()
                .zip(&strides)
                .map(|(i, s)| *i as usize * s)
                .sum();
            out[flat] = v.clone();
        }
        out
    }

    fn strides(&self) -> Vec<usize> {
        let mut strides = vec![1usize; self.legs.len()];
        for k in (0..self.legs.len().saturating_sub(1)).rev() {
            strides[k] = strides[k + 1] * self.legs[k + 1].dim;
        }
        strides
    }

    /// The scalar value of a 0-leg tensor.
    pub fn scalar_value(&self) -> Result<ExactScalar> {
        if !self.legs.is_empty() {
            return Err(Error::ShapeMismatch(format!(
                "expected scalar, tensor has {} legs",
                self.legs.len()
            )));
        }
        Ok(self
            .entries
            .get(&Vec::new())
            .cloned()
            .unwrap_or_else(|| self.field.zero()))
    }

    /// Multiplies every entry by `c`.
    pub fn scale(&self, c: &ExactScalar) -> Tensor {
        let mut t = Tensor::zeros(self.field, self.legs.clone());
        if c.is_zero() {
            return t;
        }
        for (idx, v) in &self.entries {
            t.entries.insert(idx.clone(), v.clone() * c.clone());
        }
        t
    }

    /// Entrywise sum; legs must agree exactly.
    pub fn add(&self, other: &Tensor) -> Result<Tensor> {
        if self.legs != other.legs {
            return Err(Error::ShapeMismatch("tensor addition with unequal legs".into()));
        }
        let mut t = self.clone();
        for (idx, v) in &other.entries {
            t.add_at(idx, v.clone());
        }
        Ok(t)
    }

    /// Reorders legs by `perm`, where the new leg `k` is the old leg `perm[k]`.
    pub fn permute_legs(&self, perm: &[usize]) -> Tensor {
        assert_eq!(perm.len(), self.legs.len());
        let legs = perm.iter().map(|&p| self.legs[p]).collect();
        let mut t = Tensor::zeros(self.field, legs);
        for (idx, v) in &self.entries {
            let new_idx: Vec<u32> = perm.iter().map(|&p| idx[p]).collect();
            t.entries.insert(new_idx, v.clone());
        }
        t
    }

    /// Contracts `self`'s leg `self_leg` (must be Out) with `other`'s leg
    /// `other_leg` (must be In). Result legs: self's remaining legs in order,
    /// then other's remaining legs in order.
    pub fn contract_with(&self, self_leg: usize, other: &Tensor, other_leg: usize) -> Result<Tensor> {
        if self.field != other.field {
            return Err(Error::FieldMismatch("contracting tensors over different fields".into()));
        }
        let a = self.legs.get(self_leg).ok_or_else(|| {
            Error::LegMismatch(format!("no leg {self_leg} on left tensor"))
        })?;
        let b = other.legs.get(other_leg).ok_or_else(|| {
            Error::LegMismatch(format!("no leg {other_leg} on right tensor"))
        })?;
        if a.dir != LegDir::Out || b.dir != LegDir::In {
            return Err(Error::LegMismatch(
                "contraction must join an out-leg to an in-leg".into(),
            ));
        }
        if a.dim != b.dim {
            return Err(Error::LegMismatch(format!(
                "dimension mismatch {} vs {}",
                a.dim, b.dim
            )));
        }

        let mut legs: Vec<Leg> = Vec::with_capacity(self.legs.len() + other.legs.len() - 2);
        legs.extend(self.legs.iter().enumerate().filter(|(i, _)| *i != self_leg).map(|(_, l)| *l));
        legs.extend(other.legs.iter().enumerate().filter(|(i, _)| *i != other_leg).map(|(_, l)| *l));
        let mut out = Tensor::zeros(self.field, legs);

        // Bucket the right tensor's entries by the contracted index value.
        let mut buckets: BTreeMap<u32, Vec<(Vec<u32>, &ExactScalar)>> = BTreeMap::new();
        for (idx, v) in &other.entries {
            let key = idx[other_leg];
            let rest: Vec<u32> = idx
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != other_leg)
                .map(|(_, x)| *x)
                .collect();
            buckets.entry(key).or_default().push((rest, v));
        }

        for (idx, v) in &self.entries {
            let key = idx[self_leg];
            let Some(matches) = buckets.get(&key) else { continue };
            let left_rest: Vec<u32> = idx
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != self_leg)
                .map(|(_, x)| *x)
                .collect();
            for (right_rest, w) in matches {
                let mut full = left_rest.clone();
                full.extend_from_slice(right_rest);
                out.add_at(&full, v.clone() * (*w).clone());
            }
        }
        Ok(out)
    }

    /// Partial trace: contracts this tensor's own `out_leg` with its `in_leg`.
    pub fn trace_pair(&self, out_leg: usize, in_leg: usize) -> Result<Tensor> {
        if out_leg == in_leg {
            return Err(Error::LegMismatch("trace of a leg with itself".into()));
        }
        let a = self.legs[out_leg];
        let b = self.legs[in_leg];
        if a.dir != LegDir::Out || b.dir != LegDir::In || a.dim != b.dim {
            return Err(Error::LegMismatch("trace legs must be out/in of equal dimension".into()));
        }
        let legs: Vec<Leg> = self
            .legs
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != out_leg && *i != in_leg)
            .map(|(_, l)| *l)
            .collect();
        let mut out = Tensor::zeros(self.field, legs);
        for (idx, v) in &self.entries {
            if idx[out_leg] != idx[in_leg] {
                continue;
            }
            let rest: Vec<u32> = idx
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != out_leg && *i != in_leg)
                .map(|(_, x)| *x)
                .collect();
            out.add_at(&rest, v.clone());
        }
        Ok(out)
    }

    /// Tensor (outer) product; result legs are self's then other's.
    pub fn outer(&self, other: &Tensor) -> Tensor {
        assert_eq!(self.field, other.field, "outer product across fields");
        let mut legs = self.legs.clone();
        legs.extend_from_slice(&other.legs);
        let mut out = Tensor::zeros(self.field, legs);
        for (ia, va) in &self.entries {
            for (ib, vb) in &other.entries {
                let mut idx = ia.clone();
                idx.extend_from_slice(ib);
                out.entries.insert(idx, va.clone() * vb.clone());
            }
        }
        out
    }

    /// Positions of the in-legs, in order.
    pub fn in_legs(&self) -> Vec<usize> {
        self.legs
            .iter()
            .enumerate()
            .filter(|(_, l)| l.dir == LegDir::In)
            .map(|(i, _)| i)
            .collect()
    }

    /// Positions of the out-legs, in order.
    pub fn out_legs(&self) -> Vec<usize> {
        self.legs
            .iter()
            .enumerate()
            .filter(|(_, l)| l.dir == LegDir::Out)
            .map(|(i, _)| i)
            .collect()
    }
}

/// Pairwise contraction with the diagrammatic ordering convention: the result
/// lists `b`'s remaining in-legs, then `a`'s in-legs, then `a`'s remaining
/// out-legs, then `b`'s out-legs. This is the single place the convention is
/// encoded; everything downstream addresses legs positionally.
pub fn tensor_compose(a: &Tensor, a_out: usize, b: &Tensor, b_in: usize) -> Result<Tensor> {
    let raw = a.contract_with(a_out, b, b_in)?;
    // raw legs: a-rest (a's order) ++ b-rest (b's order)
    let a_rest: Vec<usize> = (0..a.num_legs()).filter(|i| *i != a_out).collect();
    let b_rest: Vec<usize> = (0..b.num_legs()).filter(|i| *i != b_in).collect();
    let mut perm: Vec<usize> = Vec::with_capacity(raw.num_legs());
    // b's remaining in-legs
    for (k, &orig) in b_rest.iter().enumerate() {
        if b.legs()[orig].dir == LegDir::In {
            perm.push(a_rest.len() + k);
        }
    }
    // a's in-legs
    for (k, &orig) in a_rest.iter().enumerate() {
        if a.legs()[orig].dir == LegDir::In {
            perm.push(k);
        }
    }
    // a's remaining out-legs
    for (k, &orig) in a_rest.iter().enumerate() {
        if a.legs()[orig].dir == LegDir::Out {
            perm.push(k);
        }
    }
    // b's out-legs
    for (k, &orig) in b_rest.iter().enumerate() {
        if b.legs()[orig].dir == LegDir::Out {
            perm.push(a_rest.len() + k);
        }
    }
    Ok(raw.permute_legs(&perm))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> ExactScalar {
        Field::Rational.from_i64(n)
    }

    fn matrix(rows: &[&[i64]]) -> Tensor {
        // (1,1) tensor: legs [in, out], entry [i,j] = rows[i][j]
        let r = rows.len();
        let c = rows[0].len();
        let mut t = Tensor::zeros(Field::Rational, vec![Leg::input(r), Leg::output(c)]);
        for (i, row) in rows.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                t.set(&[i as u32, j as u32], q(*v));
            }
        }
        t
    }

    #[test]
    fn dense_round_trip() {
        let t = matrix(&[&[1, 2], &[0, -3]]);
        let d = t.to_dense();
        let back = Tensor::from_dense(Field::Rational, t.legs().to_vec(), d).unwrap();
        assert_eq!(t, back);
    }

    #[test]
    fn matrix_product_via_compose() {
        // A (1,1) chained into B (1,1) computes the matrix product A*B
        // wait: A's out leg feeds B's in leg, so entry [i,k] = sum_j A[i,j] B[j,k].
        let a = matrix(&[&[1, 2], &[3, 4]]);
        let b = matrix(&[&[0, 1], &[1, 0]]);
        let ab = tensor_compose(&a, 1, &b, 0).unwrap();
        assert_eq!(ab, matrix(&[&[2, 1], &[4, 3]]));
    }

    #[test]
    fn trace_of_identity_is_dimension() {
        for d in 1..=5 {
            let id = Tensor::identity(Field::Rational, d);
            let tr = id.trace_pair(1, 0).unwrap();
            assert_eq!(tr.scalar_value().unwrap(), q(d as i64));
        }
    }

    #[test]
    fn dual_pairing() {
        // (0,1) vector into (1,0) covector -> sum f_i v_i
        let mut v = Tensor::zeros(Field::Rational, vec![Leg::output(3)]);
        v.set(&[0], q(2));
        v.set(&[1], q(-1));
        v.set(&[2], q(5));
        let mut f = Tensor::zeros(Field::Rational, vec![Leg::input(3)]);
        f.set(&[0], q(1));
        f.set(&[1], q(4));
        f.set(&[2], q(1));
        let s = tensor_compose(&v, 0, &f, 0).unwrap();
        assert_eq!(s.scalar_value().unwrap(), q(2 - 4 + 5));
    }

    #[test]
    fn identity_composes_to_identity() {
        let id = Tensor::identity(Field::Rational, 4);
        let c = tensor_compose(&id, 1, &id, 0).unwrap();
        assert_eq!(c, id);
    }

    #[test]
    fn compose_leg_ordering_matches_convention() {
        // a: (3,1), b: (3,2); contract a's only out-leg into b's second in-leg.
        // Result legs: b-in-rest (2) ++ a-in (3) ++ a-out-rest (0) ++ b-out (2).
        let a = Tensor::zeros(
            Field::Rational,
            vec![Leg::input(2), Leg::input(3), Leg::input(4), Leg::output(5)],
        );
        let b = Tensor::zeros(
            Field::Rational,
            vec![Leg::input(6), Leg::input(5), Leg::input(7), Leg::output(8), Leg::output(9)],
        );
        let c = tensor_compose(&a, 3, &b, 1).unwrap();
        let dims: Vec<usize> = c.legs().iter().map(|l| l.dim).collect();
        assert_eq!(dims, vec![6, 7, 2, 3, 4, 8, 9]);
        let dirs: Vec<LegDir> = c.legs().iter().map(|l| l.dir).collect();
        assert_eq!(
            dirs,
            vec![LegDir::In, LegDir::In, LegDir::In, LegDir::In, LegDir::In, LegDir::Out, LegDir::Out]
        );
    }

    #[test]
    fn compose_value_matches_brute_force_sum() {
        // Fill a (3,1) and a (3,2)-shaped pattern at dimension 2 with all-ones
        // tensors and compare the composed value against full-index summation.
        let dim = 2usize;
        let mut a = Tensor::zeros(
            Field::Rational,
            vec![Leg::input(dim), Leg::input(dim), Leg::input(dim), Leg::output(dim)],
        );
        let mut b = Tensor::zeros(
            Field::Rational,
            vec![Leg::input(dim), Leg::input(dim), Leg::input(dim), Leg::output(dim), Leg::output(dim)],
        );
        for i in 0..dim as u32 {
            for j in 0..dim as u32 {
                for k in 0..dim as u32 {
                    for l in 0..dim as u32 {
                        a.set(&[i, j, k, l], q(1));
                        for m in 0..dim as u32 {
                            b.set(&[i, j, k, l, m], q(1));
                        }
                    }
                }
            }
        }
        let c = tensor_compose(&a, 3, &b, 1).unwrap();
        // Brute force: result[b0,b2, a0,a1,a2, b3,b4] = sum_d a[a0,a1,a2,d] b[b0,d,b2,b3,b4]
        for (idx, v) in c.entries() {
            let (b0, b2, a0, a1, a2, b3, b4) =
                (idx[0], idx[1], idx[2], idx[3], idx[4], idx[5], idx[6]);
            let mut total = q(0);
            for d in 0..dim as u32 {
                total = total + a.get(&[a0, a1, a2, d]) * b.get(&[b0, d, b2, b3, b4]);
            }
            assert_eq!(&total, v);
        }
        assert_eq!(c.num_entries(), 2usize.pow(7));
    }
}
