//! Functional arrangements: marked arrangements with a propagation schedule
//! that computes every element from the inputs by joins and meets.
//!
//! Shipped gadgets: multiplication, addition, subtraction, the constants ±1,
//! the identity (used for bare variables) and a free input (a variable that
//! no equation uses). Compositions rename the non-base elements of the `K`th
//! primitive copy to `gK.name`.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::{RatFunc, Scalar};
use crate::arrangement::{
    point_join, standard_triangle, Arrangement, BasedArrangement, MarkedArrangement, Morphism,
    Sort, T_LINES, T_POINTS,
};
use crate::error::{Error, Result};
use crate::geom::{incident, join, meet, ProjLine, ProjPoint};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "rule", content = "args", rename_all = "lowercase")]
pub enum Rule {
    Input,
    Base,
    Join(String, String),
    Meet(String, String),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Step {
    pub target: String,
    #[serde(flatten)]
    pub rule: Rule,
}

impl Step {
    fn new(target: &str, rule: Rule) -> Self {
        Step {
            target: target.to_string(),
            rule,
        }
    }

    fn args(&self) -> Vec<&str> {
        match &self.rule {
            Rule::Join(a, b) | Rule::Meet(a, b) => vec![a, b],
            _ => vec![],
        }
    }
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.rule {
            Rule::Input => write!(f, "{} = input", self.target),
            Rule::Base => write!(f, "{} = base", self.target),
            Rule::Join(a, b) => write!(f, "{} = join({a}, {b})", self.target),
            Rule::Meet(a, b) => write!(f, "{} = meet({a}, {b})", self.target),
        }
    }
}

/// Coordinates of the standard realization of a triangle element.
pub fn standard_coords(t: &str) -> Option<[i64; 3]> {
    Some(match t {
        "v00" => [0, 0, 1],
        "vx" => [1, 0, 0],
        "vy" => [0, 1, 0],
        "v10" => [1, 0, 1],
        "v01" => [0, 1, 1],
        "v11" => [1, 1, 1],
        "lx" => [0, 1, 0],
        "ly" => [1, 0, 0],
        "linf" => [0, 0, 1],
        "ld" => [1, -1, 0],
        "ly1" => [1, 0, -1],
        "lx1" => [0, 1, -1],
        _ => return None,
    })
}

fn lift<S: Scalar>(c: [i64; 3]) -> [S; 3] {
    c.map(S::from_i64)
}

/// An assignment of projective coordinates to the elements of an
/// arrangement.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Realization<S> {
    pub points: BTreeMap<String, ProjPoint<S>>,
    pub lines: BTreeMap<String, ProjLine<S>>,
}

impl<S> Default for Realization<S> {
    fn default() -> Self {
        Realization {
            points: BTreeMap::new(),
            lines: BTreeMap::new(),
        }
    }
}

impl<S: Scalar> Realization<S> {
    pub fn point(&self, name: &str) -> Result<&ProjPoint<S>> {
        self.points
            .get(name)
            .ok_or_else(|| Error::UnknownElement(name.to_string()))
    }

    pub fn line(&self, name: &str) -> Result<&ProjLine<S>> {
        self.lines
            .get(name)
            .ok_or_else(|| Error::UnknownElement(name.to_string()))
    }

    /// The standard realization of the triangle.
    pub fn standard() -> Self {
        let mut r = Realization::default();
        for p in T_POINTS {
            r.points.insert(
                p.to_string(),
                ProjPoint::from_coords(lift(standard_coords(p).unwrap())).unwrap(),
            );
        }
        for l in T_LINES {
            r.lines.insert(
                l.to_string(),
                ProjLine::from_coords(lift(standard_coords(l).unwrap())).unwrap(),
            );
        }
        r
    }

    /// Incidences of `arr` that the realization violates. Missing elements
    /// count as violations.
    pub fn violations(&self, arr: &Arrangement) -> Vec<(String, String)> {
        arr.incidences()
            .iter()
            .filter(|(p, l)| match (self.points.get(p), self.lines.get(l)) {
                (Some(pv), Some(lv)) => !incident(pv, lv),
                _ => true,
            })
            .cloned()
            .collect()
    }

    pub fn verify(&self, arr: &Arrangement) -> Result<()> {
        match self.violations(arr).into_iter().next() {
            None => Ok(()),
            Some((point, line)) => Err(Error::IncidenceViolation { point, line }),
        }
    }

    /// Applies a coordinatewise ring map to every value.
    pub fn map<T: Scalar>(&self, mut f: impl FnMut(&S) -> T) -> Result<Realization<T>> {
        let mut out = Realization::default();
        for (k, p) in &self.points {
            out.points.insert(k.clone(), p.map(&mut f)?);
        }
        for (k, l) in &self.lines {
            out.lines.insert(k.clone(), l.map(&mut f)?);
        }
        Ok(out)
    }

    /// Whether every point is one of the standard triangle points or
    /// `(∞,∞)`, and every line is a standard triangle line.
    pub fn within_standard(&self) -> bool {
        let std = Realization::<S>::standard();
        let mut pts: Vec<ProjPoint<S>> = std.points.values().cloned().collect();
        pts.push(ProjPoint::from_coords(lift([1, 1, 0])).unwrap());
        let lns: Vec<&ProjLine<S>> = std.lines.values().collect();
        self.points.values().all(|p| pts.contains(p))
            && self.lines.values().all(|l| lns.contains(&l))
    }
}

/// A marked arrangement with a schedule computing every element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FunctionalArrangement {
    pub marked: MarkedArrangement,
    pub schedule: Vec<Step>,
    /// Number of primitive gadget copies glued together.
    pub gadgets: usize,
}

impl FunctionalArrangement {
    pub fn new(marked: MarkedArrangement, schedule: Vec<Step>, gadgets: usize) -> Result<Self> {
        marked.validate()?;
        let mut fa = FunctionalArrangement {
            marked,
            schedule,
            gadgets,
        };
        fa.normalize_schedule();
        fa.validate_schedule()?;
        Ok(fa)
    }

    /// Moves base and input steps to the front; they depend on nothing.
    fn normalize_schedule(&mut self) {
        let key = |s: &Step| match s.rule {
            Rule::Base => 0,
            Rule::Input => 1,
            _ => 2,
        };
        self.schedule.sort_by_key(key);
    }

    pub fn arrangement(&self) -> &Arrangement {
        self.marked.arrangement()
    }

    pub fn based(&self) -> &BasedArrangement {
        &self.marked.based
    }

    pub fn inputs(&self) -> &[String] {
        &self.marked.inputs
    }

    pub fn outputs(&self) -> &[String] {
        &self.marked.outputs
    }

    pub fn validate_schedule(&self) -> Result<()> {
        let arr = self.arrangement();
        let based = self.based();
        let inputs: HashSet<&str> = self.inputs().iter().map(String::as_str).collect();
        let mut defined: HashSet<&str> = HashSet::new();
        for step in &self.schedule {
            let t = step.target.as_str();
            let sort = arr
                .sort_of(t)
                .ok_or_else(|| Error::UnknownElement(t.to_string()))?;
            for a in step.args() {
                if arr.sort_of(a).is_none() {
                    return Err(Error::UnknownElement(a.to_string()));
                }
                if !defined.contains(a) {
                    return Err(Error::ScheduleOrder {
                        target: t.to_string(),
                        arg: a.to_string(),
                    });
                }
            }
            let ok = match &step.rule {
                Rule::Base => based.is_base(t),
                Rule::Input => inputs.contains(t),
                Rule::Join(a, b) => {
                    sort == Sort::Line
                        && arr.sort_of(a) == Some(Sort::Point)
                        && arr.sort_of(b) == Some(Sort::Point)
                }
                Rule::Meet(a, b) => {
                    sort == Sort::Point
                        && arr.sort_of(a) == Some(Sort::Line)
                        && arr.sort_of(b) == Some(Sort::Line)
                }
            };
            if !ok {
                return Err(Error::RuleSort(t.to_string()));
            }
            if !defined.insert(t) {
                return Err(Error::DuplicateRule(t.to_string()));
            }
        }
        for (e, _) in arr.elements() {
            if !defined.contains(e) {
                return Err(Error::UncoveredElement(e.to_string()));
            }
        }
        for v in self.inputs() {
            let has_input_rule = self
                .schedule
                .iter()
                .any(|s| &s.target == v && s.rule == Rule::Input);
            if !has_input_rule {
                return Err(Error::InvalidMarking(format!(
                    "input `{v}` has no input rule"
                )));
            }
        }
        Ok(())
    }

    /// Copy with non-base elements renamed for the `offset`-th slot of a
    /// composition.
    pub fn qualified(&self, offset: usize) -> Result<FunctionalArrangement> {
        let based = self.based();
        let q = |n: &str| -> String {
            if based.is_base(n) {
                n.to_string()
            } else {
                qualify(n, offset)
            }
        };
        self.renamed(&q)
    }

    fn renamed(&self, f: &dyn Fn(&str) -> String) -> Result<FunctionalArrangement> {
        let arr = self.arrangement().rename(f)?;
        let base = self
            .based()
            .base
            .iter()
            .map(|(k, v)| (k.clone(), f(v)))
            .collect();
        let marked = MarkedArrangement {
            based: BasedArrangement {
                arrangement: arr,
                base,
            },
            inputs: self.inputs().iter().map(|s| f(s)).collect(),
            outputs: self.outputs().iter().map(|s| f(s)).collect(),
        };
        let schedule = self.schedule.iter().map(|s| rename_step(s, f)).collect();
        Ok(FunctionalArrangement {
            marked,
            schedule,
            gadgets: self.gadgets,
        })
    }

    /// Identifies point `drop` with point `keep`. The rule for `drop` is
    /// discarded and `drop` leaves the marking.
    pub fn identify_points(&self, keep: &str, drop: &str) -> Result<FunctionalArrangement> {
        let arr = self.arrangement();
        for n in [keep, drop] {
            match arr.sort_of(n) {
                None => return Err(Error::UnknownElement(n.to_string())),
                Some(Sort::Line) => return Err(Error::SortClash(n.to_string())),
                _ => {}
            }
        }
        let r = |n: &str| {
            if n == drop {
                keep.to_string()
            } else {
                n.to_string()
            }
        };
        let mut merged = Arrangement::new();
        for (e, s) in arr.elements() {
            if e != drop {
                merged.add(e.to_string(), s)?;
            }
        }
        for (p, l) in arr.incidences() {
            merged.add_incidence(&r(p), l)?;
        }
        let base = self
            .based()
            .base
            .iter()
            .map(|(k, v)| (k.clone(), r(v)))
            .collect();
        let mut seen = HashSet::new();
        let inputs = self
            .inputs()
            .iter()
            .filter(|v| v.as_str() != drop)
            .filter(|v| seen.insert(v.to_string()))
            .cloned()
            .collect();
        let outputs = self
            .outputs()
            .iter()
            .filter(|v| v.as_str() != drop)
            .cloned()
            .collect();
        let schedule = self
            .schedule
            .iter()
            .filter(|s| s.target != drop)
            .map(|s| rename_step(s, &r))
            .collect();
        FunctionalArrangement::new(
            MarkedArrangement {
                based: BasedArrangement {
                    arrangement: merged,
                    base,
                },
                inputs,
                outputs,
            },
            schedule,
            self.gadgets,
        )
    }
}

fn rename_step(s: &Step, f: &dyn Fn(&str) -> String) -> Step {
    Step {
        target: f(&s.target),
        rule: match &s.rule {
            Rule::Join(a, b) => Rule::Join(f(a), f(b)),
            Rule::Meet(a, b) => Rule::Meet(f(a), f(b)),
            r => r.clone(),
        },
    }
}

/// `name` in slot `offset`: `x` becomes `g{offset}.x`, `gK.x` becomes
/// `g{K+offset}.x`.
fn qualify(name: &str, offset: usize) -> String {
    if let Some(rest) = name.strip_prefix('g') {
        if let Some((k, tail)) = rest.split_once('.') {
            if let Ok(k) = k.parse::<usize>() {
                return format!("g{}.{tail}", k + offset);
            }
        }
    }
    format!("g{offset}.{name}")
}

struct Builder {
    based: BasedArrangement,
    schedule: Vec<Step>,
}

impl Builder {
    fn new() -> Self {
        let based = standard_triangle();
        let schedule = T_POINTS
            .iter()
            .chain(T_LINES.iter())
            .map(|e| Step::new(e, Rule::Base))
            .collect();
        Builder { based, schedule }
    }

    fn points(mut self, names: &[&str]) -> Self {
        for n in names {
            self.based.arrangement.add_point(*n).unwrap();
        }
        self
    }

    fn lines(mut self, names: &[&str]) -> Self {
        for n in names {
            self.based.arrangement.add_line(*n).unwrap();
        }
        self
    }

    fn incidences(mut self, pairs: &[(&str, &str)]) -> Self {
        for (p, l) in pairs {
            self.based.arrangement.add_incidence(p, l).unwrap();
        }
        self
    }

    fn input(mut self, v: &str) -> Self {
        self.schedule.push(Step::new(v, Rule::Input));
        self
    }

    fn join(mut self, t: &str, a: &str, b: &str) -> Self {
        self.schedule
            .push(Step::new(t, Rule::Join(a.into(), b.into())));
        self
    }

    fn meet(mut self, t: &str, a: &str, b: &str) -> Self {
        self.schedule
            .push(Step::new(t, Rule::Meet(a.into(), b.into())));
        self
    }

    fn finish(self, inputs: &[&str], outputs: &[&str]) -> FunctionalArrangement {
        let marked = MarkedArrangement::new(
            self.based,
            inputs.iter().map(|s| s.to_string()).collect(),
            outputs.iter().map(|s| s.to_string()).collect(),
        )
        .expect("gadget marking");
        FunctionalArrangement::new(marked, self.schedule, 1).expect("gadget schedule")
    }
}

/// Multiplication: inputs `(v1, v2)` at `(a, b)`, output `w1` at `(ab, 0)`.
pub fn gadget_mul() -> FunctionalArrangement {
    Builder::new()
        .points(&["v1", "v2", "v", "u", "w1"])
        .lines(&["l1", "l2", "m1"])
        .incidences(&[
            ("v1", "lx"),
            ("v2", "lx"),
            ("v1", "l1"),
            ("vy", "l1"),
            ("v", "l1"),
            ("v", "ld"),
            ("v11", "l2"),
            ("v2", "l2"),
            ("u", "l2"),
            ("u", "linf"),
            ("u", "m1"),
            ("v", "m1"),
            ("w1", "m1"),
            ("w1", "lx"),
        ])
        .input("v1")
        .input("v2")
        .join("l1", "v1", "vy")
        .meet("v", "l1", "ld")
        .join("l2", "v11", "v2")
        .meet("u", "l2", "linf")
        .join("m1", "u", "v")
        .meet("w1", "m1", "lx")
        .finish(&["v1", "v2"], &["w1"])
}

fn add_arrangement() -> Builder {
    Builder::new()
        .points(&["v1", "v2", "p", "u", "w1"])
        .lines(&["l3", "l1", "l2"])
        .incidences(&[
            ("v1", "lx"),
            ("v2", "lx"),
            ("w1", "lx"),
            ("v1", "l3"),
            ("vy", "l3"),
            ("p", "l3"),
            ("p", "lx1"),
            ("v2", "l1"),
            ("v01", "l1"),
            ("u", "l1"),
            ("u", "linf"),
            ("p", "l2"),
            ("u", "l2"),
            ("w1", "l2"),
        ])
}

/// Addition: inputs `(v1, v2)` at `(a, b)`, output `w1` at `(a+b, 0)`.
///
/// `p = (a, 1)` lies over `v1`; `l1` joins `v2` to `(0, 1)`, and the
/// parallel to `l1` through `p` meets `l_x` at `a + b`.
pub fn gadget_add() -> FunctionalArrangement {
    add_arrangement()
        .input("v1")
        .input("v2")
        .join("l3", "v1", "vy")
        .meet("p", "l3", "lx1")
        .join("l1", "v2", "v01")
        .meet("u", "l1", "linf")
        .join("l2", "p", "u")
        .meet("w1", "l2", "lx")
        .finish(&["v1", "v2"], &["w1"])
}

/// Subtraction on the addition arrangement: inputs `(w1, v1)` at `(x, y)`,
/// output `v2` at `(x−y, 0)`.
pub fn gadget_sub() -> FunctionalArrangement {
    add_arrangement()
        .input("w1")
        .input("v1")
        .join("l3", "v1", "vy")
        .meet("p", "l3", "lx1")
        .join("l2", "w1", "p")
        .meet("u", "l2", "linf")
        .join("l1", "u", "v01")
        .meet("v2", "l1", "lx")
        .finish(&["w1", "v1"], &["v2"])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

/// Constant `+1` or `−1`. The input `v1` only carries a vertical line.
pub fn gadget_const(sign: Sign) -> FunctionalArrangement {
    match sign {
        Sign::Plus => Builder::new()
            .points(&["v1", "w1"])
            .lines(&["l1"])
            .incidences(&[
                ("v1", "lx"),
                ("v1", "l1"),
                ("vy", "l1"),
                ("w1", "ly1"),
                ("w1", "lx"),
            ])
            .input("v1")
            .join("l1", "v1", "vy")
            .meet("w1", "ly1", "lx")
            .finish(&["v1"], &["w1"]),
        Sign::Minus => Builder::new()
            .points(&["v1", "ud", "w1"])
            .lines(&["l1", "m1"])
            .incidences(&[
                ("v1", "lx"),
                ("v1", "l1"),
                ("vy", "l1"),
                ("ud", "ld"),
                ("ud", "linf"),
                ("v01", "m1"),
                ("ud", "m1"),
                ("w1", "m1"),
                ("w1", "lx"),
            ])
            .input("v1")
            .join("l1", "v1", "vy")
            .meet("ud", "ld", "linf")
            .join("m1", "v01", "ud")
            .meet("w1", "m1", "lx")
            .finish(&["v1"], &["w1"]),
    }
}

/// Identity: input `v1`, output `w1` on the vertical line through `v1`.
pub fn gadget_identity() -> FunctionalArrangement {
    Builder::new()
        .points(&["v1", "w1"])
        .lines(&["l1"])
        .incidences(&[
            ("v1", "lx"),
            ("v1", "l1"),
            ("vy", "l1"),
            ("w1", "l1"),
            ("w1", "lx"),
        ])
        .input("v1")
        .join("l1", "v1", "vy")
        .meet("w1", "l1", "lx")
        .finish(&["v1"], &["w1"])
}

/// The bare triangle with no inputs.
pub fn gadget_triangle() -> FunctionalArrangement {
    let mut fa = Builder::new().finish(&[], &[]);
    fa.gadgets = 0;
    fa
}

/// A single input with its vertical line and no output.
pub fn gadget_free_input() -> FunctionalArrangement {
    Builder::new()
        .points(&["v1"])
        .lines(&["l1"])
        .incidences(&[("v1", "lx"), ("v1", "l1"), ("vy", "l1")])
        .input("v1")
        .join("l1", "v1", "vy")
        .finish(&["v1"], &[])
}

/// `f(…, g(…), …)`: plugs the single output of `g` into input `input_index`
/// of `f`. Inputs of the result are those of `g` followed by the remaining
/// inputs of `f`.
pub fn compose(
    f: &FunctionalArrangement,
    g: &FunctionalArrangement,
    input_index: usize,
) -> Result<FunctionalArrangement> {
    if g.outputs().len() != 1 {
        return Err(Error::Composition(format!(
            "inner arrangement has {} outputs, expected 1",
            g.outputs().len()
        )));
    }
    if input_index >= f.inputs().len() {
        return Err(Error::Composition(format!(
            "input index {input_index} out of range for {} inputs",
            f.inputs().len()
        )));
    }
    let g2 = g.qualified(0)?;
    let f2 = f.qualified(g.gadgets)?;
    let w = &g2.outputs()[0];
    let p = &f2.inputs()[input_index];
    let (based, into) = point_join(g2.based(), f2.based(), w, p)?;
    glue(
        &g2,
        &f2,
        based,
        &into,
        Some(p),
        |g_in, f_in| {
            let mut v = g_in.to_vec();
            v.extend(f_in);
            v
        },
        f2.outputs().iter().map(|o| into[o].clone()).collect(),
    )
}

/// `a` and `b` side by side over a shared triangle. Inputs and outputs are
/// concatenated.
pub fn juxtapose(
    a: &FunctionalArrangement,
    b: &FunctionalArrangement,
) -> Result<FunctionalArrangement> {
    let a2 = a.qualified(0)?;
    let b2 = b.qualified(a.gadgets)?;
    let (based, into) = crate::arrangement::join_based(
        a2.based(),
        b2.based(),
        &Arrangement::new(),
        &Morphism::new(),
        &Morphism::new(),
    )?;
    let mut outputs = a2.outputs().to_vec();
    outputs.extend(b2.outputs().iter().map(|o| into[o].clone()));
    glue(
        &a2,
        &b2,
        based,
        &into,
        None,
        |x, y| {
            let mut v = x.to_vec();
            v.extend(y);
            v
        },
        outputs,
    )
}

fn glue(
    first: &FunctionalArrangement,
    second: &FunctionalArrangement,
    based: BasedArrangement,
    into: &Morphism,
    consumed: Option<&String>,
    order_inputs: impl Fn(&[String], Vec<String>) -> Vec<String>,
    outputs: Vec<String>,
) -> Result<FunctionalArrangement> {
    let map = |n: &str| into.get(n).cloned().unwrap_or_else(|| n.to_string());
    let rest: Vec<String> = second
        .inputs()
        .iter()
        .filter(|v| Some(*v) != consumed)
        .map(|v| map(v))
        .collect();
    let inputs = order_inputs(first.inputs(), rest);
    let mut schedule = first.schedule.clone();
    for s in &second.schedule {
        if s.rule == Rule::Base || Some(&s.target) == consumed {
            continue;
        }
        schedule.push(rename_step(s, &map));
    }
    FunctionalArrangement::new(
        MarkedArrangement::new(based, inputs, outputs)?,
        schedule,
        first.gadgets + second.gadgets,
    )
}

/// Runs the schedule: inputs go to `[z:0:1]`, base elements to the standard
/// realization, everything else by join or meet. All incidences are checked
/// afterwards.
pub fn propagate<S: Scalar>(fa: &FunctionalArrangement, inputs: &[S]) -> Result<Realization<S>> {
    let r = propagate_unchecked(fa, inputs)?;
    r.verify(fa.arrangement())?;
    Ok(r)
}

/// [`propagate`] without the final incidence check.
pub fn propagate_unchecked<S: Scalar>(
    fa: &FunctionalArrangement,
    inputs: &[S],
) -> Result<Realization<S>> {
    if inputs.len() != fa.inputs().len() {
        return Err(Error::InputCount {
            expected: fa.inputs().len(),
            got: inputs.len(),
        });
    }
    let slot: HashMap<&str, usize> = fa
        .inputs()
        .iter()
        .enumerate()
        .map(|(i, v)| (v.as_str(), i))
        .collect();
    let base_of: HashMap<&str, &str> = fa
        .based()
        .base
        .iter()
        .map(|(t, e)| (e.as_str(), t.as_str()))
        .collect();
    let mut r = Realization::default();
    for step in &fa.schedule {
        let t = step.target.clone();
        match &step.rule {
            Rule::Input => {
                let z = inputs[slot[t.as_str()]].clone();
                r.points.insert(t, ProjPoint::new(z, S::zero(), S::one())?);
            }
            Rule::Base => {
                let c = lift(standard_coords(base_of[t.as_str()]).unwrap());
                match fa.arrangement().sort_of(&t) {
                    Some(Sort::Point) => {
                        r.points.insert(t, ProjPoint::from_coords(c)?);
                    }
                    _ => {
                        r.lines.insert(t, ProjLine::from_coords(c)?);
                    }
                }
            }
            Rule::Join(a, b) => {
                let l = join(r.point(a)?, r.point(b)?)
                    .map_err(|_| Error::DependentElements(t.clone()))?;
                r.lines.insert(t, l);
            }
            Rule::Meet(a, b) => {
                let p = meet(r.line(a)?, r.line(b)?)
                    .map_err(|_| Error::DependentElements(t.clone()))?;
                r.points.insert(t, p);
            }
        }
    }
    Ok(r)
}

fn affine_x<S: Scalar>(r: &Realization<S>, names: &[String]) -> Result<Vec<S>> {
    names
        .iter()
        .map(|v| {
            let p = r.point(v)?;
            let zi = p
                .z()
                .unit_inverse()
                .ok_or_else(|| Error::InfiniteMarkedPoint(v.clone()))?;
            Ok(p.x().clone() * zi)
        })
        .collect()
}

/// Affine x-coordinates of the input points.
pub fn project_inputs<S: Scalar>(fa: &FunctionalArrangement, r: &Realization<S>) -> Result<Vec<S>> {
    affine_x(r, fa.inputs())
}

/// Affine x-coordinates of the output points.
pub fn read_outputs<S: Scalar>(fa: &FunctionalArrangement, r: &Realization<S>) -> Result<Vec<S>> {
    affine_x(r, fa.outputs())
}

/// Propagates at the generic point of ℚ(x₁, …, xₙ) and checks incidences,
/// finiteness of the outputs and that the inputs read back unchanged.
/// Returns the outputs as rational functions.
pub fn verify_functional(fa: &FunctionalArrangement) -> Result<Vec<RatFunc>> {
    fa.validate_schedule()?;
    let vars: Vec<RatFunc> = (0..fa.inputs().len()).map(RatFunc::var).collect();
    let r = propagate(fa, &vars)?;
    for (p, _) in fa.arrangement().elements() {
        if !r.points.contains_key(p) && !r.lines.contains_key(p) {
            return Err(Error::UncoveredElement(p.to_string()));
        }
    }
    let back = project_inputs(fa, &r)?;
    if back != vars {
        return Err(Error::FunctionalCheck("inputs do not read back".into()));
    }
    read_outputs(fa, &r)
}
