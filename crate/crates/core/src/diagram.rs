//! Combinatorial Heegaard-link diagrams: genus, alpha/beta/link curves as
//! cyclic crossing sequences with signed crossings, the move calculus,
//! braid-closure import, link-crossing sorting, and the surgery transform.
//!
//! Diagrams are abstract combinatorics. No embedded-surface data is stored
//! and realizability is not certified; every builder in this crate produces
//! realizable diagrams, and the bracket only reads the combinatorics.

use std::collections::BTreeMap;

use crate::error::{Error, Result};

/// Which family a curve belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CurveKind {
    Alpha,
    Beta,
    Link,
}

/// Which pair of families a crossing joins.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CrossingKind {
    AlphaBeta,
    AlphaLink,
    BetaLink,
}

impl CrossingKind {
    /// The crossing kind joining two curve families, if they may cross.
    pub fn between(a: CurveKind, b: CurveKind) -> Option<CrossingKind> {
        use CurveKind::*;
        match (a, b) {
            (Alpha, Beta) | (Beta, Alpha) => Some(CrossingKind::AlphaBeta),
            (Alpha, Link) | (Link, Alpha) => Some(CrossingKind::AlphaLink),
            (Beta, Link) | (Link, Beta) => Some(CrossingKind::BetaLink),
            _ => None,
        }
    }

    pub fn tag(self) -> &'static str {
        match self {
            CrossingKind::AlphaBeta => "ab",
            CrossingKind::AlphaLink => "aL",
            CrossingKind::BetaLink => "bL",
        }
    }

    pub fn from_tag(tag: &str) -> Option<CrossingKind> {
        match tag {
            "ab" => Some(CrossingKind::AlphaBeta),
            "aL" => Some(CrossingKind::AlphaLink),
            "bL" => Some(CrossingKind::BetaLink),
            _ => None,
        }
    }
}

/// A signed crossing between two curves.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Crossing {
    pub kind: CrossingKind,
    pub sign: i8,
}

impl Crossing {
    /// The antipode exponent at this crossing: 0 for positive, 1 for negative.
    pub fn eta(&self) -> u8 {
        if self.sign > 0 {
            0
        } else {
            1
        }
    }
}

/// A closed curve as a cyclic sequence of crossing ids; index 0 is the base
/// point position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Curve {
    pub id: String,
    pub kind: CurveKind,
    pub seq: Vec<String>,
}

/// The combinatorial form of a Heegaard diagram with embedded link curves.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeegaardLinkDiagram {
    pub genus: usize,
    pub alpha: Vec<Curve>,
    pub beta: Vec<Curve>,
    pub links: Vec<Curve>,
    pub crossings: BTreeMap<String, Crossing>,
}

/// Outcome of structural validation; carries the first violation found.
#[derive(Debug, Clone)]
pub struct ValidationReport {
    pub ok: bool,
    pub violation: Option<String>,
}

impl HeegaardLinkDiagram {
    /// The genus-1 diagram of the 3-sphere: one alpha and one beta curve
    /// crossing once, positively.
    pub fn sphere() -> HeegaardLinkDiagram {
        let mut crossings = BTreeMap::new();
        crossings.insert("c0".to_string(), Crossing { kind: CrossingKind::AlphaBeta, sign: 1 });
        HeegaardLinkDiagram {
            genus: 1,
            alpha: vec![Curve { id: "a0".into(), kind: CurveKind::Alpha, seq: vec!["c0".into()] }],
            beta: vec![Curve { id: "b0".into(), kind: CurveKind::Beta, seq: vec!["c0".into()] }],
            links: Vec::new(),
            crossings,
        }
    }

    /// A genus-1 diagram of the lens space L(p,1): the beta curve meets the
    /// alpha curve p times with uniform sign. p = 0 gives S^1 x S^2 (disjoint
    /// curves), p = 1 gives the sphere.
    pub fn lens(p: usize) -> HeegaardLinkDiagram {
        let mut crossings = BTreeMap::new();
        let ids: Vec<String> = (0..p).map(|i| format!("c{i}")).collect();
        for id in &ids {
            crossings.insert(id.clone(), Crossing { kind: CrossingKind::AlphaBeta, sign: 1 });
        }
        HeegaardLinkDiagram {
            genus: 1,
            alpha: vec![Curve { id: "a0".into(), kind: CurveKind::Alpha, seq: ids.clone() }],
            beta: vec![Curve { id: "b0".into(), kind: CurveKind::Beta, seq: ids }],
            links: Vec::new(),
            crossings,
        }
    }

    pub fn all_curves(&self) -> impl Iterator<Item = &Curve> {
        self.alpha.iter().chain(&self.beta).chain(&self.links)
    }

    pub fn curve(&self, id: &str) -> Option<&Curve> {
        self.all_curves().find(|c| c.id == id)
    }

    fn curve_mut(&mut self, id: &str) -> Option<&mut Curve> {
        self.alpha
            .iter_mut()
            .chain(self.beta.iter_mut())
            .chain(self.links.iter_mut())
            .find(|c| c.id == id)
    }

    /// Every (curve id, curve kind, position) where the crossing occurs.
    pub fn occurrences(&self, crossing: &str) -> Vec<(&str, CurveKind, usize)> {
        let mut out = Vec::new();
        for c in self.all_curves() {
            for (i, x) in c.seq.iter().enumerate() {
                if x == crossing {
                    out.push((c.id.as_str(), c.kind, i));
                }
            }
        }
        out
    }

    /// The two curves a crossing joins (alpha/beta side first for ab,
    /// the Heegaard side first for link crossings).
    pub fn crossing_curves(&self, crossing: &str) -> Option<(String, String)> {
        let occ = self.occurrences(crossing);
        if occ.len() != 2 {
            return None;
        }
        Some((occ[0].0.to_string(), occ[1].0.to_string()))
    }

    fn fresh_id(&self, prefix: &str) -> String {
        let used: std::collections::BTreeSet<&str> = self
            .all_curves()
            .map(|c| c.id.as_str())
            .chain(self.crossings.keys().map(|k| k.as_str()))
            .collect();
        let mut k = 0usize;
        loop {
            let cand = format!("{prefix}{k}");
            if !used.contains(cand.as_str()) {
                return cand;
            }
            k += 1;
        }
    }

    /// Checks every structural invariant; reports the first violation.
    pub fn validate(&self) -> ValidationReport {
        let fail = |msg: String| ValidationReport { ok: false, violation: Some(msg) };
        if self.alpha.len() != self.genus || self.beta.len() != self.genus {
            return fail(format!(
                "genus {} but {} alpha and {} beta curves",
                self.genus,
                self.alpha.len(),
                self.beta.len()
            ));
        }
        let mut seen = std::collections::BTreeSet::new();
        for c in self.all_curves() {
            if !seen.insert(&c.id) {
                return fail(format!("duplicate curve id {}", c.id));
            }
        }
        for (kind, list) in [
            (CurveKind::Alpha, &self.alpha),
            (CurveKind::Beta, &self.beta),
            (CurveKind::Link, &self.links),
        ] {
            for c in list {
                if c.kind != kind {
                    return fail(format!("curve {} stored under the wrong family", c.id));
                }
            }
        }
        // every sequence entry exists
        for c in self.all_curves() {
            for x in &c.seq {
                if !self.crossings.contains_key(x) {
                    return fail(format!("curve {} references unknown crossing {x}", c.id));
                }
            }
        }
        // occurrence discipline per crossing
        for (id, cr) in &self.crossings {
            if cr.sign != 1 && cr.sign != -1 {
                return fail(format!("crossing {id} has sign {}", cr.sign));
            }
            let occ = self.occurrences(id);
            // no curve may list a crossing twice
            for c in self.all_curves() {
                let count = c.seq.iter().filter(|x| *x == id).count();
                if count > 1 {
                    return fail(format!("crossing {id} listed {count} times on curve {}", c.id));
                }
            }
            let count_kind = |k: CurveKind| occ.iter().filter(|(_, kk, _)| *kk == k).count();
            let (need_a, need_b, need_l) = match cr.kind {
                CrossingKind::AlphaBeta => (1, 1, 0),
                CrossingKind::AlphaLink => (1, 0, 1),
                CrossingKind::BetaLink => (0, 1, 1),
            };
            if count_kind(CurveKind::Alpha) != need_a
                || count_kind(CurveKind::Beta) != need_b
                || count_kind(CurveKind::Link) != need_l
            {
                return fail(format!(
                    "crossing {id} of kind {} occurs on the wrong curve families",
                    cr.kind.tag()
                ));
            }
        }
        ValidationReport { ok: true, violation: None }
    }
}

/// Parameters of a two-point creation: the fresh pair goes in as
/// `[c1, c2]` at `pos_a` on `curve_a` and `[c2, c1]` at `pos_b` on `curve_b`,
/// with signs `(first_sign, -first_sign)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoPointCreateSpec {
    pub curve_a: String,
    pub pos_a: usize,
    pub curve_b: String,
    pub pos_b: usize,
    pub first_sign: i8,
}

/// The move calculus on Heegaard-link diagrams.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Move {
    /// Rotate the base point of a curve by `offset`.
    Basepoint { curve: String, offset: usize },
    /// Reverse a curve's orientation (flips all its crossing signs).
    Reverse { curve: String },
    /// Cancel an adjacent opposite-sign bigon pair.
    TwoPointCancel { c1: String, c2: String },
    /// Create a bigon pair.
    TwoPointCreate(TwoPointCreateSpec),
    /// Triangle move on crossings x in A&B, y in A&C, z in B&C.
    ThreePoint { x: String, y: String, z: String },
    /// Slide `slider` over the full circle `over`, inserting the copied
    /// block at `position` of the slider's sequence.
    HandleSlide { slider: String, over: String, position: usize },
    /// Add a fresh once-crossing alpha/beta pair.
    Stabilize,
    /// Remove an alpha/beta pair crossing once and meeting nothing else.
    Destabilize { alpha: String, beta: String },
}

/// True when `(first, second)` appear cyclically adjacent in this order.
fn cyclically_adjacent(seq: &[String], first: &str, second: &str) -> Option<usize> {
    let n = seq.len();
    (0..n).find(|&i| seq[i] == first && seq[(i + 1) % n] == second)
}

/// Applies one move, returning the new diagram. The input must validate, the
/// move's preconditions are enforced, and the output validates again.
pub fn apply_move(diagram: &HeegaardLinkDiagram, mv: &Move) -> Result<HeegaardLinkDiagram> {
    let report = diagram.validate();
    if !report.ok {
        return Err(Error::InvalidDiagram(report.violation.unwrap_or_default()));
    }
    let mut out = diagram.clone();
    match mv {
        Move::Basepoint { curve, offset } => {
            let c = out
                .curve_mut(curve)
                .ok_or_else(|| Error::PreconditionViolated(format!("no curve {curve}")))?;
            if !c.seq.is_empty() {
                let k = offset % c.seq.len();
                c.seq.rotate_left(k);
            }
        }
        Move::Reverse { curve } => {
            let ids: Vec<String> = {
                let c = out
                    .curve_mut(curve)
                    .ok_or_else(|| Error::PreconditionViolated(format!("no curve {curve}")))?;
                c.seq.reverse();
                c.seq.clone()
            };
            for id in ids {
                if let Some(cr) = out.crossings.get_mut(&id) {
                    cr.sign = -cr.sign;
                }
            }
        }
        Move::TwoPointCancel { c1, c2 } => {
            if c1 == c2 {
                return Err(Error::PreconditionViolated("two-point cancel needs two crossings".into()));
            }
            let (k1, s1) = {
                let cr = out.crossings.get(c1).ok_or_else(|| {
                    Error::PreconditionViolated(format!("no crossing {c1}"))
                })?;
                (cr.kind, cr.sign)
            };
            let (k2, s2) = {
                let cr = out.crossings.get(c2).ok_or_else(|| {
                    Error::PreconditionViolated(format!("no crossing {c2}"))
                })?;
                (cr.kind, cr.sign)
            };
            if k1 != k2 {
                return Err(Error::PreconditionViolated("pair joins different curve families".into()));
            }
            if s1 + s2 != 0 {
                return Err(Error::PreconditionViolated("pair must have opposite signs".into()));
            }
            let pair1 = out.crossing_curves(c1);
            let pair2 = out.crossing_curves(c2);
            match (&pair1, &pair2) {
                (Some(p1), Some(p2)) => {
                    let set1 = [&p1.0, &p1.1];
                    if !(set1.contains(&&p2.0) && set1.contains(&&p2.1)) {
                        return Err(Error::PreconditionViolated(
                            "pair must join the same two curves".into(),
                        ));
                    }
                }
                _ => return Err(Error::PreconditionViolated("dangling crossing".into())),
            }
            let (cx, cy) = pair1.unwrap();
            let adjacency_ok = {
                let seq_x = &out.curve(&cx).unwrap().seq;
                let seq_y = &out.curve(&cy).unwrap().seq;
                (cyclically_adjacent(seq_x, c1, c2).is_some()
                    && cyclically_adjacent(seq_y, c2, c1).is_some())
                    || (cyclically_adjacent(seq_x, c2, c1).is_some()
                        && cyclically_adjacent(seq_y, c1, c2).is_some())
            };
            if !adjacency_ok {
                return Err(Error::PreconditionViolated(
                    "pair must be adjacent in both curves with reversed relative order".into(),
                ));
            }
            for curve_id in [cx, cy] {
                let c = out.curve_mut(&curve_id).unwrap();
                c.seq.retain(|x| x != c1 && x != c2);
            }
            out.crossings.remove(c1);
            out.crossings.remove(c2);
        }
        Move::TwoPointCreate(spec) => {
            if spec.curve_a == spec.curve_b {
                return Err(Error::PreconditionViolated("bigon needs two distinct curves".into()));
            }
            if spec.first_sign != 1 && spec.first_sign != -1 {
                return Err(Error::PreconditionViolated("sign must be +1 or -1".into()));
            }
            let ka = out
                .curve(&spec.curve_a)
                .ok_or_else(|| Error::PreconditionViolated(format!("no curve {}", spec.curve_a)))?
                .kind;
            let kb = out
                .curve(&spec.curve_b)
                .ok_or_else(|| Error::PreconditionViolated(format!("no curve {}", spec.curve_b)))?
                .kind;
            let kind = CrossingKind::between(ka, kb).ok_or_else(|| {
                Error::PreconditionViolated("these curve families may not cross".into())
            })?;
            let c1 = out.fresh_id("tp");
            out.crossings.insert(c1.clone(), Crossing { kind, sign: spec.first_sign });
            let c2 = out.fresh_id("tp");
            out.crossings.insert(c2.clone(), Crossing { kind, sign: -spec.first_sign });
            {
                let a = out.curve_mut(&spec.curve_a).unwrap();
                if spec.pos_a > a.seq.len() {
                    return Err(Error::PreconditionViolated("pos_a out of range".into()));
                }
                a.seq.insert(spec.pos_a, c2.clone());
                a.seq.insert(spec.pos_a, c1.clone());
            }
            {
                let b = out.curve_mut(&spec.curve_b).unwrap();
                if spec.pos_b > b.seq.len() {
                    return Err(Error::PreconditionViolated("pos_b out of range".into()));
                }
                b.seq.insert(spec.pos_b, c1.clone());
                b.seq.insert(spec.pos_b, c2.clone());
            }
        }
        Move::ThreePoint { x, y, z } => {
            let curves_of = |d: &HeegaardLinkDiagram, id: &str| -> Result<(String, String)> {
                d.crossing_curves(id)
                    .ok_or_else(|| Error::PreconditionViolated(format!("crossing {id} is not well placed")))
            };
            let (x1, x2) = curves_of(&out, x)?;
            let (y1, y2) = curves_of(&out, y)?;
            let (z1, z2) = curves_of(&out, z)?;
            // A = common curve of x and y, B = of x and z, C = of y and z
            let common = |p: (&str, &str), q: (&str, &str)| -> Option<String> {
                for a in [p.0, p.1] {
                    for b in [q.0, q.1] {
                        if a == b {
                            return Some(a.to_string());
                        }
                    }
                }
                None
            };
            let a = common((&x1, &x2), (&y1, &y2)).ok_or_else(|| {
                Error::PreconditionViolated("x and y share no curve".into())
            })?;
            let b = common((&x1, &x2), (&z1, &z2)).ok_or_else(|| {
                Error::PreconditionViolated("x and z share no curve".into())
            })?;
            let c = common((&y1, &y2), (&z1, &z2)).ok_or_else(|| {
                Error::PreconditionViolated("y and z share no curve".into())
            })?;
            if a == b || a == c || b == c {
                return Err(Error::PreconditionViolated("triangle needs three distinct curves".into()));
            }
            // adjacency pattern (y,x) in A, (x,z) in B, (y,z) in C
            let swap_pair = |seq: &mut Vec<String>, first: &str, second: &str| -> Result<()> {
                let n = seq.len();
                let i = cyclically_adjacent(seq, first, second).ok_or_else(|| {
                    Error::PreconditionViolated(format!(
                        "({first},{second}) not adjacent"
                    ))
                })?;
                let j = (i + 1) % n;
                seq.swap(i, j);
                Ok(())
            };
            swap_pair(&mut out.curve_mut(&a).unwrap().seq, y, x)?;
            swap_pair(&mut out.curve_mut(&b).unwrap().seq, x, z)?;
            swap_pair(&mut out.curve_mut(&c).unwrap().seq, y, z)?;
        }
        Move::HandleSlide { slider, over, position } => {
            if slider == over {
                return Err(Error::PreconditionViolated("cannot slide a curve over itself".into()));
            }
            let slider_kind = out
                .curve(slider)
                .ok_or_else(|| Error::PreconditionViolated(format!("no curve {slider}")))?
                .kind;
            let over_kind = out
                .curve(over)
                .ok_or_else(|| Error::PreconditionViolated(format!("no curve {over}")))?
                .kind;
            let legal = matches!(
                (slider_kind, over_kind),
                (CurveKind::Alpha, CurveKind::Alpha)
                    | (CurveKind::Beta, CurveKind::Beta)
                    | (CurveKind::Link, CurveKind::Alpha)
                    | (CurveKind::Link, CurveKind::Beta)
            );
            if !legal {
                return Err(Error::PreconditionViolated(
                    "handle slides go over a same-family Heegaard curve, or slide a link over a Heegaard circle".into(),
                ));
            }
            let block: Vec<String> = out.curve(over).unwrap().seq.clone();
            if slider_kind == CurveKind::Link {
                // the circle slid over must meet no link component
                for id in &block {
                    let kind = out.crossings[id].kind;
                    if kind == CrossingKind::AlphaLink || kind == CrossingKind::BetaLink {
                        return Err(Error::PreconditionViolated(
                            "link slides require the circle to meet no link component".into(),
                        ));
                    }
                }
            }
            if *position > out.curve(slider).unwrap().seq.len() {
                return Err(Error::PreconditionViolated("slide position out of range".into()));
            }
            // duplicate every crossing of `over` onto the slider
            let mut copies: Vec<String> = Vec::with_capacity(block.len());
            // per third-curve insertions: (curve id, original position, copy id, sign)
            let mut insertions: Vec<(String, usize, String, i8)> = Vec::new();
            for orig in &block {
                let sign = out.crossings[orig].sign;
                // the curve on the other side of `orig` from `over`
                let occ: Vec<(String, usize)> = out
                    .occurrences(orig)
                    .into_iter()
                    .filter(|(cid, _, _)| *cid != over)
                    .map(|(cid, _, pos)| (cid.to_string(), pos))
                    .collect();
                if occ.len() != 1 {
                    return Err(Error::PreconditionViolated(format!(
                        "crossing {orig} is not well placed"
                    )));
                }
                let (third_id, third_pos) = occ.into_iter().next().unwrap();
                let third_kind = out.curve(&third_id).unwrap().kind;
                let kind = CrossingKind::between(slider_kind, third_kind).ok_or_else(|| {
                    Error::PreconditionViolated(format!(
                        "slide would force {slider} to cross a same-family curve {third_id}"
                    ))
                })?;
                let copy = out.fresh_id("hs");
                out.crossings.insert(copy.clone(), Crossing { kind, sign });
                copies.push(copy.clone());
                insertions.push((third_id, third_pos, copy, sign));
            }
            // positive crossings place the copy before the original, negative
            // after; apply per curve in descending position order
            insertions.sort_by(|a, b| (b.0.clone(), b.1).cmp(&(a.0.clone(), a.1)));
            for (third_id, pos, copy, sign) in insertions {
                let c = out.curve_mut(&third_id).unwrap();
                let at = if sign > 0 { pos } else { pos + 1 };
                c.seq.insert(at, copy);
            }
            let s = out.curve_mut(slider).unwrap();
            for (k, copy) in copies.into_iter().enumerate() {
                s.seq.insert(position + k, copy);
            }
        }
        Move::Stabilize => {
            let a_id = out.fresh_id("sa");
            let b_id = out.fresh_id("sb");
            let c_id = out.fresh_id("st");
            out.crossings.insert(c_id.clone(), Crossing { kind: CrossingKind::AlphaBeta, sign: 1 });
            out.alpha.push(Curve { id: a_id, kind: CurveKind::Alpha, seq: vec![c_id.clone()] });
            out.beta.push(Curve { id: b_id, kind: CurveKind::Beta, seq: vec![c_id] });
            out.genus += 1;
        }
        Move::Destabilize { alpha, beta } => {
            let a = out
                .alpha
                .iter()
                .position(|c| c.id == *alpha)
                .ok_or_else(|| Error::PreconditionViolated(format!("no alpha curve {alpha}")))?;
            let b = out
                .beta
                .iter()
                .position(|c| c.id == *beta)
                .ok_or_else(|| Error::PreconditionViolated(format!("no beta curve {beta}")))?;
            let a_seq = out.alpha[a].seq.clone();
            let b_seq = out.beta[b].seq.clone();
            if a_seq.len() != 1 || b_seq != a_seq {
                return Err(Error::PreconditionViolated(
                    "destabilization needs a pair meeting once and nothing else".into(),
                ));
            }
            out.crossings.remove(&a_seq[0]);
            out.alpha.remove(a);
            out.beta.remove(b);
            out.genus -= 1;
        }
    }
    let report = out.validate();
    if !report.ok {
        return Err(Error::InvalidDiagram(format!(
            "move produced an invalid diagram: {}",
            report.violation.unwrap_or_default()
        )));
    }
    Ok(out)
}

/// Parses the CLI move grammar:
/// `basepoint:CURVE,OFFSET`, `reverse:CURVE`, `two_point_cancel:C1,C2`,
/// `two_point_create:CURVE_A,POS_A,CURVE_B,POS_B,SIGN`, `three_point:X,Y,Z`,
/// `handle_slide:SLIDER,OVER,POSITION`, `stabilize`, `destabilize:ALPHA,BETA`.
pub fn parse_move_spec(spec: &str) -> Result<Move> {
    let (name, rest) = match spec.split_once(':') {
        Some((n, r)) => (n.trim(), r.trim()),
        None => (spec.trim(), ""),
    };
    let parts: Vec<&str> = if rest.is_empty() {
        Vec::new()
    } else {
        rest.split(',').map(|s| s.trim()).collect()
    };
    let want = |n: usize| -> Result<()> {
        if parts.len() == n {
            Ok(())
        } else {
            Err(Error::Parse(format!("move {name} expects {n} arguments")))
        }
    };
    let int = |s: &str| -> Result<i64> {
        s.parse().map_err(|_| Error::Parse(format!("bad integer {s:?}")))
    };
    match name {
        "basepoint" => {
            want(2)?;
            Ok(Move::Basepoint { curve: parts[0].into(), offset: int(parts[1])? as usize })
        }
        "reverse" => {
            want(1)?;
            Ok(Move::Reverse { curve: parts[0].into() })
        }
        "two_point_cancel" => {
            want(2)?;
            Ok(Move::TwoPointCancel { c1: parts[0].into(), c2: parts[1].into() })
        }
        "two_point_create" => {
            want(5)?;
            Ok(Move::TwoPointCreate(TwoPointCreateSpec {
                curve_a: parts[0].into(),
                pos_a: int(parts[1])? as usize,
                curve_b: parts[2].into(),
                pos_b: int(parts[3])? as usize,
                first_sign: int(parts[4])? as i8,
            }))
        }
        "three_point" => {
            want(3)?;
            Ok(Move::ThreePoint { x: parts[0].into(), y: parts[1].into(), z: parts[2].into() })
        }
        "handle_slide" => {
            want(3)?;
            Ok(Move::HandleSlide {
                slider: parts[0].into(),
                over: parts[1].into(),
                position: int(parts[2])? as usize,
            })
        }
        "stabilize" => {
            want(0)?;
            Ok(Move::Stabilize)
        }
        "destabilize" => {
            want(2)?;
            Ok(Move::Destabilize { alpha: parts[0].into(), beta: parts[1].into() })
        }
        _ => Err(Error::Parse(format!("unknown move {name:?}"))),
    }
}

// ---------------------------------------------------------------------------
// Braid-closure presentations
// ---------------------------------------------------------------------------

/// A framed link presented as a braid word: letter `k` (1-based) is the
/// positive generator crossing strands k, k+1; `-k` its inverse. Framings are
/// per component; deviations from the closure's blackboard framing become
/// curl crossings during resolution.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct PlanarLinkPresentation {
    pub strands: usize,
    pub word: Vec<i64>,
    pub framings: Vec<i64>,
}

/// Which side of a crossing a strand passage takes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Role {
    Over,
    Under,
}

/// One traversal of a crossing by a component.
#[derive(Debug, Clone, Copy)]
pub struct Passage {
    pub crossing: usize,
    pub role: Role,
    /// Closure arcs traversed before this passage (each contributes +2 to
    /// the rotation bookkeeping; always even, hence inert for involutory
    /// antipodes).
    pub closure_arcs_before: usize,
}

/// The flattened diagram of a braid closure with framing curls resolved.
#[derive(Debug, Clone)]
pub struct ResolvedLink {
    /// Crossing signs, braid letters first, then framing curls.
    pub signs: Vec<i8>,
    /// Per component, the passages in traversal order from the base point.
    pub components: Vec<Vec<Passage>>,
    /// Framing matrix: framings on the diagonal, linking numbers off it.
    pub linking: Vec<Vec<i64>>,
}

/// Walks the braid closure: assigns components, passage orders, self-writhes
/// and linking numbers, then inserts framing curls.
pub fn resolve_planar(p: &PlanarLinkPresentation) -> Result<ResolvedLink> {
    if p.strands == 0 {
        return Err(Error::InvalidBraidWord("braid needs at least one strand".into()));
    }
    for &w in &p.word {
        let k = w.unsigned_abs() as usize;
        if k == 0 || k >= p.strands {
            return Err(Error::InvalidBraidWord(format!(
                "generator {w} out of range for {} strands",
                p.strands
            )));
        }
    }

    let n = p.strands;
    // strand s starts at top position s; track positions through the word
    let mut at_position: Vec<usize> = (0..n).collect(); // position -> strand
    let mut passages_per_strand: Vec<Vec<(usize, Role)>> = vec![Vec::new(); n];
    let mut signs: Vec<i8> = Vec::with_capacity(p.word.len());
    let mut over_under: Vec<(usize, usize)> = Vec::with_capacity(p.word.len());
    for (t, &w) in p.word.iter().enumerate() {
        let k = w.unsigned_abs() as usize - 1;
        let sign: i8 = if w > 0 { 1 } else { -1 };
        let left = at_position[k];
        let right = at_position[k + 1];
        let (over, under) = if sign > 0 { (left, right) } else { (right, left) };
        passages_per_strand[over].push((t, Role::Over));
        passages_per_strand[under].push((t, Role::Under));
        signs.push(sign);
        over_under.push((over, under));
        at_position.swap(k, k + 1);
    }
    // strand s ends at the position holding it now
    let mut end_position = vec![0usize; n];
    for (pos, &s) in at_position.iter().enumerate() {
        end_position[s] = pos;
    }

    // components = cycles of s -> end_position(s)
    let mut component_of = vec![usize::MAX; n];
    let mut component_order: Vec<Vec<usize>> = Vec::new();
    for start in 0..n {
        if component_of[start] != usize::MAX {
            continue;
        }
        let idx = component_order.len();
        let mut cycle = Vec::new();
        let mut s = start;
        loop {
            component_of[s] = idx;
            cycle.push(s);
            s = end_position[s];
            if s == start {
                break;
            }
        }
        component_order.push(cycle);
    }
    let m = component_order.len();
    if p.framings.len() != m {
        return Err(Error::InvalidBraidWord(format!(
            "link has {m} components but {} framings were given",
            p.framings.len()
        )));
    }

    // passage lists per component, counting closure arcs
    let mut components: Vec<Vec<Passage>> = Vec::with_capacity(m);
    for cycle in &component_order {
        let mut list = Vec::new();
        for (arc, &s) in cycle.iter().enumerate() {
            for &(crossing, role) in &passages_per_strand[s] {
                list.push(Passage { crossing, role, closure_arcs_before: arc });
            }
        }
        components.push(list);
    }

    // self-writhes and linking numbers from the braid letters
    let mut self_writhe = vec![0i64; m];
    let mut linking = vec![vec![0i64; m]; m];
    for (t, &(over, under)) in over_under.iter().enumerate() {
        let (ci, cj) = (component_of[over], component_of[under]);
        if ci == cj {
            self_writhe[ci] += signs[t] as i64;
        } else {
            linking[ci][cj] += signs[t] as i64;
            linking[cj][ci] += signs[t] as i64;
        }
    }
    for i in 0..m {
        for j in 0..m {
            if i != j {
                debug_assert_eq!(linking[i][j] % 2, 0, "odd crossing count between components");
                linking[i][j] /= 2;
            }
        }
        linking[i][i] = p.framings[i];
    }

    // framing curls: |deficit| kinks of the deficit's sign, inserted at the
    // front of the component (walked over-then-under)
    let mut signs = signs;
    for c in 0..m {
        let deficit = p.framings[c] - self_writhe[c];
        let kink_sign: i8 = if deficit >= 0 { 1 } else { -1 };
        for _ in 0..deficit.unsigned_abs() {
            let t = signs.len();
            signs.push(kink_sign);
            components[c].insert(0, Passage { crossing: t, role: Role::Under, closure_arcs_before: 0 });
            components[c].insert(0, Passage { crossing: t, role: Role::Over, closure_arcs_before: 0 });
        }
    }

    Ok(ResolvedLink { signs, components, linking })
}

/// The framing matrix of a braid-closure presentation: framings on the
/// diagonal, pairwise linking numbers (half the signed crossing count) off it.
pub fn linking_matrix(p: &PlanarLinkPresentation) -> Result<Vec<Vec<i64>>> {
    Ok(resolve_planar(p)?.linking)
}

/// Builds a Heegaard-link diagram of (S^3, L) from a braid-closure
/// presentation. Every planar crossing becomes a bridge gadget adding one
/// genus: a belt circle A crossed once by the understrand, a bridge curve B
/// crossed once by the overstrand, and one A-B crossing; all three carry the
/// planar crossing's sign. Walking the overstrand meets B where the crossing
/// was, the understrand meets A there.
pub fn from_planar_link(p: &PlanarLinkPresentation) -> Result<HeegaardLinkDiagram> {
    let resolved = resolve_planar(p)?;
    let mut diagram = HeegaardLinkDiagram::sphere();
    for (i, &sign) in resolved.signs.iter().enumerate() {
        let x = format!("x{i}");
        let o = format!("o{i}");
        let u = format!("u{i}");
        diagram.crossings.insert(x.clone(), Crossing { kind: CrossingKind::AlphaBeta, sign });
        diagram.crossings.insert(o.clone(), Crossing { kind: CrossingKind::BetaLink, sign });
        diagram.crossings.insert(u.clone(), Crossing { kind: CrossingKind::AlphaLink, sign });
        diagram.alpha.push(Curve {
            id: format!("ga{i}"),
            kind: CurveKind::Alpha,
            seq: vec![x.clone(), u],
        });
        diagram.beta.push(Curve { id: format!("gb{i}"), kind: CurveKind::Beta, seq: vec![x, o] });
        diagram.genus += 1;
    }
    for (c, passages) in resolved.components.iter().enumerate() {
        let seq = passages
            .iter()
            .map(|p| match p.role {
                Role::Over => format!("o{}", p.crossing),
                Role::Under => format!("u{}", p.crossing),
            })
            .collect();
        diagram.links.push(Curve { id: format!("l{c}"), kind: CurveKind::Link, seq });
    }
    let report = diagram.validate();
    if !report.ok {
        return Err(Error::InvalidDiagram(report.violation.unwrap_or_default()));
    }
    Ok(diagram)
}

// ---------------------------------------------------------------------------
// Sorting and surgery
// ---------------------------------------------------------------------------

fn link_curve<'d>(diagram: &'d HeegaardLinkDiagram, component: &str) -> Result<&'d Curve> {
    diagram
        .links
        .iter()
        .find(|c| c.id == component)
        .ok_or_else(|| Error::NoSuchComponent(component.to_string()))
}

/// True when the component's linear sequence is a block of beta-link
/// crossings followed by a block of alpha-link crossings.
pub fn is_sorted(diagram: &HeegaardLinkDiagram, component: &str) -> Result<bool> {
    let curve = link_curve(diagram, component)?;
    let kinds: Vec<CrossingKind> = curve.seq.iter().map(|c| diagram.crossings[c].kind).collect();
    let ok = kinds
        .windows(2)
        .all(|w| !(w[0] == CrossingKind::AlphaLink && w[1] == CrossingKind::BetaLink));
    Ok(ok)
}

/// Rewrites the component so its sequence is one beta-link block followed by
/// one alpha-link block. Each swap of an adjacent out-of-order pair is the
/// composite of a two-point creation and a three-point move, so the bracket
/// is untouched; the alpha and beta strands involved gain one opposite-sign
/// crossing pair per swap. Terminates because each swap removes an inversion.
pub fn sort_link_crossings(
    diagram: &HeegaardLinkDiagram,
    component: &str,
) -> Result<HeegaardLinkDiagram> {
    link_curve(diagram, component)?;
    let mut out = diagram.clone();
    loop {
        let curve = link_curve(&out, component)?.clone();
        let kinds: Vec<CrossingKind> =
            curve.seq.iter().map(|c| out.crossings[c].kind).collect();
        let Some(i) = kinds
            .windows(2)
            .position(|w| w[0] == CrossingKind::AlphaLink && w[1] == CrossingKind::BetaLink)
        else {
            return Ok(out);
        };
        let a_id = curve.seq[i].clone();
        let b_id = curve.seq[i + 1].clone();
        // the alpha curve through a and the beta curve through b
        let alpha_curve = out
            .occurrences(&a_id)
            .into_iter()
            .find(|(_, k, _)| *k == CurveKind::Alpha)
            .map(|(c, _, pos)| (c.to_string(), pos))
            .ok_or_else(|| Error::InvalidDiagram(format!("crossing {a_id} misses its alpha curve")))?;
        let beta_curve = out
            .occurrences(&b_id)
            .into_iter()
            .find(|(_, k, _)| *k == CurveKind::Beta)
            .map(|(c, _, pos)| (c.to_string(), pos))
            .ok_or_else(|| Error::InvalidDiagram(format!("crossing {b_id} misses its beta curve")))?;

        // remember the ids that two_point_create will allocate
        let n1 = out.fresh_id("tp");
        let created = apply_move(
            &out,
            &Move::TwoPointCreate(TwoPointCreateSpec {
                curve_a: alpha_curve.0.clone(),
                pos_a: alpha_curve.1 + 1,
                curve_b: beta_curve.0.clone(),
                pos_b: beta_curve.1,
                first_sign: 1,
            }),
        )?;
        out = apply_move(
            &created,
            &Move::ThreePoint { x: n1.clone(), y: a_id.clone(), z: b_id.clone() },
        )?;
    }
}

/// Surgery along one link component of a diagram whose blackboard framing is
/// the component's framing. The component must be sorted. The genus grows by
/// one: a new beta curve takes over the component's alpha crossings, and a
/// new alpha curve (the belt of the attached tube) replaces the component in
/// each beta curve that crossed it.
pub fn surgery(diagram: &HeegaardLinkDiagram, component: &str) -> Result<HeegaardLinkDiagram> {
    if !is_sorted(diagram, component)? {
        return Err(Error::NotSorted(component.to_string()));
    }
    let mut out = diagram.clone();
    let curve = link_curve(&out, component)?.clone();

    let mut k_beta_seq = Vec::new();
    let mut k_alpha_seq = Vec::new();
    for id in &curve.seq {
        let kind = out.crossings[id].kind;
        match kind {
            CrossingKind::AlphaLink => {
                out.crossings.get_mut(id).unwrap().kind = CrossingKind::AlphaBeta;
                k_beta_seq.push(id.clone());
            }
            CrossingKind::BetaLink => {
                out.crossings.get_mut(id).unwrap().kind = CrossingKind::AlphaBeta;
                k_alpha_seq.push(id.clone());
            }
            CrossingKind::AlphaBeta => {
                return Err(Error::InvalidDiagram(format!(
                    "link component carries an alpha-beta crossing {id}"
                )));
            }
        }
    }

    let ka = out.fresh_id("ka");
    let kb = out.fresh_id("kb");
    out.links.retain(|c| c.id != component);
    out.alpha.push(Curve { id: ka, kind: CurveKind::Alpha, seq: k_alpha_seq });
    out.beta.push(Curve { id: kb, kind: CurveKind::Beta, seq: k_beta_seq });
    out.genus += 1;

    let report = out.validate();
    if !report.ok {
        return Err(Error::InvalidDiagram(format!(
            "surgery produced an invalid diagram: {}",
            report.violation.unwrap_or_default()
        )));
    }
    Ok(out)
}

/// Sorts and surgers every link component, producing a plain Heegaard diagram
/// of the surgery manifold.
pub fn surgery_all(diagram: &HeegaardLinkDiagram) -> Result<HeegaardLinkDiagram> {
    let mut out = diagram.clone();
    while let Some(id) = out.links.first().map(|c| c.id.clone()) {
        out = sort_link_crossings(&out, &id)?;
        out = surgery(&out, &id)?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sphere_diagram_validates() {
        let d = HeegaardLinkDiagram::sphere();
        assert!(d.validate().ok);
    }

    #[test]
    fn doubled_crossing_reference_fails() {
        let mut d = HeegaardLinkDiagram::sphere();
        d.alpha[0].seq.push("c0".into());
        let r = d.validate();
        assert!(!r.ok);
        assert!(r.violation.unwrap().contains("c0"));
    }

    #[test]
    fn alpha_alpha_crossing_fails() {
        let mut d = HeegaardLinkDiagram::lens(2);
        // move one of the crossings from beta onto the alpha curve: now c1
        // occurs twice among alpha curves
        d.beta[0].seq.retain(|x| x != "c1");
        d.alpha.push(Curve { id: "a1".into(), kind: CurveKind::Alpha, seq: vec!["c1".into()] });
        d.beta.push(Curve { id: "b1".into(), kind: CurveKind::Beta, seq: vec![] });
        d.genus = 2;
        assert!(!d.validate().ok);
    }

    #[test]
    fn basepoint_and_reverse() {
        let d = HeegaardLinkDiagram::lens(3);
        let rotated = apply_move(&d, &Move::Basepoint { curve: "b0".into(), offset: 1 }).unwrap();
        assert_eq!(rotated.beta[0].seq, vec!["c1", "c2", "c0"]);
        let reversed = apply_move(&d, &Move::Reverse { curve: "a0".into() }).unwrap();
        assert_eq!(reversed.alpha[0].seq, vec!["c2", "c1", "c0"]);
        assert!(reversed.crossings.values().all(|c| c.sign == -1));
    }

    #[test]
    fn two_point_create_then_cancel_round_trips() {
        let d = HeegaardLinkDiagram::lens(2);
        let spec = TwoPointCreateSpec {
            curve_a: "a0".into(),
            pos_a: 1,
            curve_b: "b0".into(),
            pos_b: 0,
            first_sign: 1,
        };
        let created = apply_move(&d, &Move::TwoPointCreate(spec)).unwrap();
        assert_eq!(created.alpha[0].seq, vec!["c0", "tp0", "tp1", "c1"]);
        assert_eq!(created.beta[0].seq, vec!["tp1", "tp0", "c0", "c1"]);
        let back = apply_move(
            &created,
            &Move::TwoPointCancel { c1: "tp0".into(), c2: "tp1".into() },
        )
        .unwrap();
        assert_eq!(back, d);
    }

    #[test]
    fn two_point_cancel_requires_opposite_adjacent() {
        let d = HeegaardLinkDiagram::lens(2);
        // c0, c1 both have sign +1
        assert!(matches!(
            apply_move(&d, &Move::TwoPointCancel { c1: "c0".into(), c2: "c1".into() }),
            Err(Error::PreconditionViolated(_))
        ));
    }

    #[test]
    fn stabilize_destabilize_round_trips() {
        let d = HeegaardLinkDiagram::sphere();
        let up = apply_move(&d, &Move::Stabilize).unwrap();
        assert_eq!(up.genus, 2);
        assert!(up.validate().ok);
        let down =
            apply_move(&up, &Move::Destabilize { alpha: "sa0".into(), beta: "sb0".into() }).unwrap();
        assert_eq!(down, d);
    }

    #[test]
    fn destabilize_rejects_busy_pairs() {
        let d = HeegaardLinkDiagram::lens(2);
        assert!(matches!(
            apply_move(&d, &Move::Destabilize { alpha: "a0".into(), beta: "b0".into() }),
            Err(Error::PreconditionViolated(_))
        ));
    }

    #[test]
    fn unknot_framing_zero() {
        let p = PlanarLinkPresentation { strands: 1, word: vec![], framings: vec![0] };
        let d = from_planar_link(&p).unwrap();
        assert_eq!(d.genus, 1);
        assert_eq!(d.links.len(), 1);
        assert!(d.links[0].seq.is_empty());
        assert!(d.validate().ok);
    }

    #[test]
    fn unknot_framing_one_gets_a_curl_gadget() {
        let p = PlanarLinkPresentation { strands: 1, word: vec![], framings: vec![1] };
        let d = from_planar_link(&p).unwrap();
        assert_eq!(d.genus, 2);
        assert_eq!(d.links[0].seq.len(), 2);
        assert!(d.validate().ok);
    }

    #[test]
    fn hopf_link_has_two_gadgets() {
        let p = PlanarLinkPresentation { strands: 2, word: vec![1, 1], framings: vec![0, 0] };
        let d = from_planar_link(&p).unwrap();
        assert_eq!(d.genus, 3);
        assert_eq!(d.links.len(), 2);
        for l in &d.links {
            assert_eq!(l.seq.len(), 2);
        }
    }

    #[test]
    fn braid_component_count() {
        // sigma_1 closure on two strands is a single unknot
        let p = PlanarLinkPresentation { strands: 2, word: vec![1], framings: vec![1] };
        let r = resolve_planar(&p).unwrap();
        assert_eq!(r.components.len(), 1);
        // trefoil: sigma_1^3 on two strands
        let p = PlanarLinkPresentation { strands: 2, word: vec![1, 1, 1], framings: vec![3] };
        let r = resolve_planar(&p).unwrap();
        assert_eq!(r.components.len(), 1);
        assert_eq!(r.components[0].len(), 6);
    }

    #[test]
    fn framing_mismatch_is_rejected() {
        let p = PlanarLinkPresentation { strands: 2, word: vec![1, 1], framings: vec![0] };
        assert!(matches!(resolve_planar(&p), Err(Error::InvalidBraidWord(_))));
        let p = PlanarLinkPresentation { strands: 2, word: vec![5], framings: vec![0] };
        assert!(matches!(resolve_planar(&p), Err(Error::InvalidBraidWord(_))));
    }

    #[test]
    fn linking_matrix_examples() {
        // unknot framing 3
        let p = PlanarLinkPresentation { strands: 1, word: vec![], framings: vec![3] };
        assert_eq!(linking_matrix(&p).unwrap(), vec![vec![3]]);
        // 2-component unlink, framings (p, q)
        let p = PlanarLinkPresentation { strands: 2, word: vec![], framings: vec![4, -1] };
        assert_eq!(linking_matrix(&p).unwrap(), vec![vec![4, 0], vec![0, -1]]);
        // Hopf link
        let p = PlanarLinkPresentation { strands: 2, word: vec![1, 1], framings: vec![0, 0] };
        assert_eq!(linking_matrix(&p).unwrap(), vec![vec![0, 1], vec![1, 0]]);
    }

    #[test]
    fn trefoil_framing_one_needs_two_negative_curls() {
        let p = PlanarLinkPresentation { strands: 2, word: vec![1, 1, 1], framings: vec![1] };
        let r = resolve_planar(&p).unwrap();
        assert_eq!(r.signs.len(), 5);
        assert_eq!(&r.signs[3..], &[-1, -1]);
        assert_eq!(r.components[0].len(), 10);
        assert_eq!(r.linking, vec![vec![1]]);
    }

    #[test]
    fn sort_already_sorted_is_identity() {
        let p = PlanarLinkPresentation { strands: 1, word: vec![], framings: vec![1] };
        let d = from_planar_link(&p).unwrap();
        // curl gadget walks over (bL) then under (aL): already sorted
        assert!(is_sorted(&d, "l0").unwrap());
        let sorted = sort_link_crossings(&d, "l0").unwrap();
        assert_eq!(sorted, d);
    }

    #[test]
    fn sort_swaps_out_of_order_pair() {
        // build a diagram whose component reads (aL, bL)
        let mut d = HeegaardLinkDiagram::sphere();
        d.crossings.insert("la".into(), Crossing { kind: CrossingKind::AlphaLink, sign: 1 });
        d.crossings.insert("lb".into(), Crossing { kind: CrossingKind::BetaLink, sign: 1 });
        d.alpha[0].seq.push("la".into());
        d.beta[0].seq.push("lb".into());
        d.links.push(Curve { id: "l0".into(), kind: CurveKind::Link, seq: vec!["la".into(), "lb".into()] });
        assert!(d.validate().ok);
        assert!(!is_sorted(&d, "l0").unwrap());
        let sorted = sort_link_crossings(&d, "l0").unwrap();
        assert!(is_sorted(&sorted, "l0").unwrap());
        let l = sorted.links.iter().find(|c| c.id == "l0").unwrap();
        assert_eq!(l.seq, vec!["lb", "la"]);
        // one new opposite-sign alpha-beta pair
        assert_eq!(sorted.crossings.len(), d.crossings.len() + 2);
        assert!(sorted.validate().ok);
    }

    #[test]
    fn alternating_component_sorts_in_bounded_swaps() {
        let mut d = HeegaardLinkDiagram::sphere();
        for (i, kind) in [
            CrossingKind::AlphaLink,
            CrossingKind::BetaLink,
            CrossingKind::AlphaLink,
            CrossingKind::BetaLink,
        ]
        .iter()
        .enumerate()
        {
            let id = format!("L{i}");
            d.crossings.insert(id.clone(), Crossing { kind: *kind, sign: 1 });
            match kind {
                CrossingKind::AlphaLink => d.alpha[0].seq.push(id),
                CrossingKind::BetaLink => d.beta[0].seq.push(id),
                _ => unreachable!(),
            }
        }
        d.links.push(Curve {
            id: "l0".into(),
            kind: CurveKind::Link,
            seq: vec!["L0".into(), "L1".into(), "L2".into(), "L3".into()],
        });
        assert!(d.validate().ok);
        let sorted = sort_link_crossings(&d, "l0").unwrap();
        assert!(is_sorted(&sorted, "l0").unwrap());
        // 3 inversions -> 3 swaps -> 6 new crossings
        assert_eq!(sorted.crossings.len(), d.crossings.len() + 6);
    }

    #[test]
    fn surgery_on_crossing_free_component() {
        let p = PlanarLinkPresentation { strands: 1, word: vec![], framings: vec![0] };
        let d = from_planar_link(&p).unwrap();
        let s = surgery(&d, "l0").unwrap();
        assert_eq!(s.genus, 2);
        assert!(s.links.is_empty());
        // the added pair is disjoint from everything
        let ka = s.alpha.iter().find(|c| c.id == "ka0").unwrap();
        let kb = s.beta.iter().find(|c| c.id == "kb0").unwrap();
        assert!(ka.seq.is_empty() && kb.seq.is_empty());
    }

    #[test]
    fn surgery_of_torus_knot_diagram() {
        // (1,1)-curve on the genus-1 surface: crosses a0 once and b0 once;
        // the blackboard framing is the +1-framed unknot, surgery gives S^3.
        let mut d = HeegaardLinkDiagram::sphere();
        d.crossings.insert("la".into(), Crossing { kind: CrossingKind::AlphaLink, sign: 1 });
        d.crossings.insert("lb".into(), Crossing { kind: CrossingKind::BetaLink, sign: 1 });
        d.alpha[0].seq.push("la".into());
        d.beta[0].seq.push("lb".into());
        d.links.push(Curve {
            id: "l0".into(),
            kind: CurveKind::Link,
            seq: vec!["lb".into(), "la".into()],
        });
        assert!(d.validate().ok);
        let s = surgery(&d, "l0").unwrap();
        assert_eq!(s.genus, 2);
        // crossing pattern: a0-b0 once, a0-kb once, ka-b0 once, ka-kb never
        let ka = s.alpha.iter().find(|c| c.id == "ka0").unwrap();
        let kb = s.beta.iter().find(|c| c.id == "kb0").unwrap();
        assert_eq!(ka.seq, vec!["lb"]);
        assert_eq!(kb.seq, vec!["la"]);
        assert_eq!(s.crossings["la"].kind, CrossingKind::AlphaBeta);
        assert_eq!(s.crossings["lb"].kind, CrossingKind::AlphaBeta);
    }

    #[test]
    fn surgery_requires_sorted() {
        let mut d = HeegaardLinkDiagram::sphere();
        d.crossings.insert("la".into(), Crossing { kind: CrossingKind::AlphaLink, sign: 1 });
        d.crossings.insert("lb".into(), Crossing { kind: CrossingKind::BetaLink, sign: 1 });
        d.alpha[0].seq.push("la".into());
        d.beta[0].seq.push("lb".into());
        d.links.push(Curve {
            id: "l0".into(),
            kind: CurveKind::Link,
            seq: vec!["la".into(), "lb".into()],
        });
        assert!(matches!(surgery(&d, "l0"), Err(Error::NotSorted(_))));
        assert!(matches!(surgery(&d, "nope"), Err(Error::NoSuchComponent(_))));
    }

    #[test]
    fn move_spec_grammar() {
        assert_eq!(
            parse_move_spec("basepoint:a0,2").unwrap(),
            Move::Basepoint { curve: "a0".into(), offset: 2 }
        );
        assert_eq!(parse_move_spec("stabilize").unwrap(), Move::Stabilize);
        assert_eq!(
            parse_move_spec("handle_slide:b0,b1,1").unwrap(),
            Move::HandleSlide { slider: "b0".into(), over: "b1".into(), position: 1 }
        );
        assert!(parse_move_spec("frob:1").is_err());
        assert!(parse_move_spec("basepoint:a0").is_err());
    }

    #[test]
    fn handle_slide_duplicates_block() {
        // genus-2: b0 crosses a0 twice (lens-2 pattern), b1 crosses a0 once;
        // slide b1 over b0.
        let mut d = HeegaardLinkDiagram::lens(2);
        d.genus = 2;
        d.crossings.insert("c2".into(), Crossing { kind: CrossingKind::AlphaBeta, sign: 1 });
        d.alpha[0].seq.push("c2".into());
        d.alpha.push(Curve { id: "a1".into(), kind: CurveKind::Alpha, seq: vec![] });
        d.beta.push(Curve { id: "b1".into(), kind: CurveKind::Beta, seq: vec!["c2".into()] });
        assert!(d.validate().ok);
        let slid = apply_move(
            &d,
            &Move::HandleSlide { slider: "b1".into(), over: "b0".into(), position: 0 },
        )
        .unwrap();
        let b1 = slid.beta.iter().find(|c| c.id == "b1").unwrap();
        assert_eq!(b1.seq.len(), 3);
        // copies sit immediately before their originals on a0 (positive signs)
        let a0 = slid.alpha.iter().find(|c| c.id == "a0").unwrap();
        assert_eq!(a0.seq.len(), 5);
        assert!(slid.validate().ok);
    }
}
