//! Finite groups as multiplication tables, plus the builders used by the CLI
//! group specs (`cyclic:n`, `symmetric:n`, `product:a,b`, `table:FILE`).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finite group given by its full multiplication table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupTable {
    pub labels: Vec<String>,
    /// `table[a][b]` is the index of the product `a * b`.
    pub table: Vec<Vec<usize>>,
    /// Cyclic factor structure when known (orders of the factors); used to
    /// enumerate characters of abelian groups.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub cyclic_factors: Vec<usize>,
}

impl GroupTable {
    pub fn order(&self) -> usize {
        self.table.len()
    }

    /// Index of the identity element.
    pub fn identity(&self) -> usize {
        // verified by `check` to exist at construction
        (0..self.order())
            .find(|&e| (0..self.order()).all(|a| self.table[e][a] == a && self.table[a][e] == a))
            .expect("group has an identity")
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        let e = self.identity();
        (0..self.order())
            .find(|&b| self.table[a][b] == e)
            .expect("group has inverses")
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (0..n).all(|b| self.table[a][b] == self.table[b][a]))
    }

    /// Order of the element `a`.
    pub fn element_order(&self, a: usize) -> usize {
        let e = self.identity();
        let mut x = a;
        let mut k = 1;
        while x != e {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// `a^k` for `k >= 0`.
    pub fn power(&self, a: usize, k: usize) -> usize {
        let mut x = self.identity();
        for _ in 0..k {
            x = self.mul(x, a);
        }
        x
    }

    /// Validates the table as a group: closure/shape, identity, inverses,
    /// associativity. Returns a witness triple on associativity failure.
    pub fn check(&self) -> Result<()> {
        let n = self.table.len();
        if self.labels.len() != n {
            return Err(Error::NotAGroup("label count differs from table size".into()));
        }
        for row in &self.table {
            if row.len() != n || row.iter().any(|&x| x >= n) {
                return Err(Error::NotAGroup("table is not square or has out-of-range entries".into()));
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|a| self.table[e][a] == a && self.table[a][e] == a))
            .ok_or_else(|| Error::NotAGroup("no identity element".into()))?;
        for a in 0..n {
            if !(0..n).any(|b| self.table[a][b] == identity && self.table[b][a] == identity) {
                return Err(Error::NotAGroup(format!("element {a} has no inverse")));
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let left = self.table[self.table[a][b]][c];
                    let right = self.table[a][self.table[b][c]];
                    if left != right {
                        return Err(Error::NotAGroup(format!(
                            "associativity fails at witness ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

/// The cyclic group of order `n`.
pub fn cyclic(n: usize) -> GroupTable {
    assert!(n >= 1);
    let labels = (0..n).map(|i| format!("g{i}")).collect();
    let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
    GroupTable { labels, table, cyclic_factors: vec![n] }
}

/// The symmetric group on `n` letters, elements in lexicographic order of
/// their one-line notation.
pub fn symmetric(n: usize) -> GroupTable {
    assert!((1..=6).contains(&n), "symmetric group size out of supported range");
    let mut perms: Vec<Vec<usize>> = Vec::new();
    fn gen(cur: &mut Vec<usize>, rest: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest.is_empty() {
            out.push(cur.clone());
            return;
        }
        for i in 0..rest.len() {
            let x = rest.remove(i);
            cur.push(x);
            gen(cur, rest, out);
            cur.pop();
            rest.insert(i, x);
        }
    }
    gen(&mut Vec::new(), &mut (0..n).collect(), &mut perms);
    perms.sort();
    let idx = |p: &Vec<usize>| perms.iter().position(|q| q == p).unwrap();
    let table = perms
        .iter()
        .map(|a| {
            perms
                .iter()
                .map(|b| {
                    // (a*b)(i) = a(b(i)): apply b first, then a
                    let prod: Vec<usize> = (0..n).map(|i| a[b[i]]).collect();
                    idx(&prod)
                })
                .collect()
        })
        .collect();
    let labels = perms
        .iter()
        .map(|p| p.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(""))
        .collect();
    GroupTable { labels, table, cyclic_factors: Vec::new() }
}

/// Direct product of two groups.
pub fn product(a: &GroupTable, b: &GroupTable) -> GroupTable {
    let na = a.order();
    let nb = b.order();
    let mut labels = Vec::with_capacity(na * nb);
    for i in 0..na {
        for j in 0..nb {
            labels.push(format!("({},{})", a.labels[i], b.labels[j]));
        }
    }
    let table = (0..na * nb)
        .map(|x| {
            let (xa, xb) = (x / nb, x % nb);
            (0..na * nb)
                .map(|y| {
                    let (ya, yb) = (y / nb, y % nb);
                    a.table[xa][ya] * nb + b.table[xb][yb]
                })
                .collect()
        })
        .collect();
    let mut cyclic_factors = a.cyclic_factors.clone();
    cyclic_factors.extend(&b.cyclic_factors);
    if cyclic_factors.len() != a.cyclic_factors.len() + b.cyclic_factors.len()
        || a.cyclic_factors.is_empty() && a.order() > 1
        || b.cyclic_factors.is_empty() && b.order() > 1
    {
        cyclic_factors = Vec::new();
    }
    GroupTable { labels, table, cyclic_factors }
}

/// Parses a group spec: `cyclic:n`, `symmetric:n`, `product:spec,spec`,
/// `table:FILE` (JSON `GroupTable`). Product arguments split at the top level
/// only, so nested products are written `product:product:c2,c2,c2`.
pub fn parse_spec(spec: &str) -> Result<GroupTable> {
    let spec = spec.trim();
    if let Some(n) = spec.strip_prefix("cyclic:") {
        let n: usize = n.parse().map_err(|_| Error::Parse(format!("bad cyclic order {n:?}")))?;
        if n == 0 {
            return Err(Error::Parse("cyclic group order must be positive".into()));
        }
        return Ok(cyclic(n));
    }
    if let Some(n) = spec.strip_prefix("symmetric:") {
        let n: usize = n.parse().map_err(|_| Error::Parse(format!("bad symmetric degree {n:?}")))?;
        if !(1..=6).contains(&n) {
            return Err(Error::Parse("symmetric degree must be between 1 and 6".into()));
        }
        return Ok(symmetric(n));
    }
    if let Some(rest) = spec.strip_prefix("product:") {
        let (first, second) = split_product_args(rest)?;
        let a = parse_spec(first)?;
        let b = parse_spec(second)?;
        return Ok(product(&a, &b));
    }
    if let Some(path) = spec.strip_prefix("table:") {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Parse(format!("cannot read {path}: {e}")))?;
        let table: GroupTable =
            serde_json::from_str(&text).map_err(|e| Error::Parse(format!("bad group table: {e}")))?;
        table.check()?;
        return Ok(table);
    }
    Err(Error::Parse(format!("unknown group spec {spec:?}")))
}

/// Splits `a,b` at the top-level comma. A well-formed left argument contains
/// exactly one comma per nested `product:` it mentions, so the separator is
/// the first comma where the prefix's comma count equals its `product:` count.
fn split_product_args(rest: &str) -> Result<(&str, &str)> {
    for (i, ch) in rest.char_indices() {
        if ch != ',' {
            continue;
        }
        let prefix = &rest[..i];
        let commas = prefix.matches(',').count();
        let products = prefix.matches("product:").count();
        if commas == products {
            return Ok((prefix, &rest[i + 1..]));
        }
    }
    Err(Error::Parse("product spec needs two arguments".into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_groups_are_groups() {
        for n in 1..=7 {
            cyclic(n).check().unwrap();
        }
    }

    #[test]
    fn symmetric_group_s3() {
        let s3 = symmetric(3);
        assert_eq!(s3.order(), 6);
        s3.check().unwrap();
        assert!(!s3.is_abelian());
        // four solutions of g^2 = 1 in S3: identity and the three transpositions
        let e = s3.identity();
        let inv_count = (0..6).filter(|&g| s3.mul(g, g) == e).count();
        assert_eq!(inv_count, 4);
    }

    #[test]
    fn klein_four_group() {
        let v4 = product(&cyclic(2), &cyclic(2));
        v4.check().unwrap();
        assert!(v4.is_abelian());
        assert_eq!(v4.cyclic_factors, vec![2, 2]);
        let e = v4.identity();
        assert!((0..4).all(|g| v4.mul(g, g) == e));
    }

    #[test]
    fn broken_table_rejected() {
        let mut t = cyclic(3);
        t.table[1][2] = 1; // breaks the Latin square / associativity
        assert!(t.check().is_err());
    }

    #[test]
    fn spec_parsing() {
        assert_eq!(parse_spec("cyclic:4").unwrap().order(), 4);
        assert_eq!(parse_spec("symmetric:3").unwrap().order(), 6);
        assert_eq!(parse_spec("product:cyclic:2,cyclic:3").unwrap().order(), 6);
        assert!(parse_spec("frobnicate:9").is_err());
    }
}
