//! Abstract point/line incidence structures, the standard triangle, and
//! gluing (fiber sums and joins).

use std::collections::{BTreeMap, HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sort {
    Point,
    Line,
}

/// Map between arrangements, element name to element name.
pub type Morphism = BTreeMap<String, String>;

/// A finite bipartite incidence structure of named points and lines.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Arrangement {
    points: Vec<String>,
    lines: Vec<String>,
    incidences: Vec<(String, String)>,
    sorts: HashMap<String, Sort>,
    inc_set: HashSet<(String, String)>,
}

impl Arrangement {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_point(&mut self, name: impl Into<String>) -> Result<()> {
        self.add(name.into(), Sort::Point)
    }

    pub fn add_line(&mut self, name: impl Into<String>) -> Result<()> {
        self.add(name.into(), Sort::Line)
    }

    pub fn add(&mut self, name: String, sort: Sort) -> Result<()> {
        if self.sorts.contains_key(&name) {
            return Err(Error::DuplicateElement(name));
        }
        self.sorts.insert(name.clone(), sort);
        match sort {
            Sort::Point => self.points.push(name),
            Sort::Line => self.lines.push(name),
        }
        Ok(())
    }

    /// Records that `point` lies on `line`. Repeats are ignored.
    pub fn add_incidence(&mut self, point: &str, line: &str) -> Result<()> {
        self.expect_sort(point, Sort::Point)?;
        self.expect_sort(line, Sort::Line)?;
        let key = (point.to_string(), line.to_string());
        if self.inc_set.insert(key.clone()) {
            self.incidences.push(key);
        }
        Ok(())
    }

    fn expect_sort(&self, name: &str, sort: Sort) -> Result<()> {
        match self.sorts.get(name) {
            None => Err(Error::UnknownElement(name.to_string())),
            Some(s) if *s != sort => Err(Error::SortClash(name.to_string())),
            Some(_) => Ok(()),
        }
    }

    pub fn sort_of(&self, name: &str) -> Option<Sort> {
        self.sorts.get(name).copied()
    }

    pub fn contains(&self, name: &str) -> bool {
        self.sorts.contains_key(name)
    }

    pub fn points(&self) -> &[String] {
        &self.points
    }

    pub fn lines(&self) -> &[String] {
        &self.lines
    }

    /// Points first, then lines, each in insertion order.
    pub fn elements(&self) -> impl Iterator<Item = (&str, Sort)> {
        self.points
            .iter()
            .map(|p| (p.as_str(), Sort::Point))
            .chain(self.lines.iter().map(|l| (l.as_str(), Sort::Line)))
    }

    pub fn len(&self) -> usize {
        self.points.len() + self.lines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn incidences(&self) -> &[(String, String)] {
        &self.incidences
    }

    pub fn is_incident(&self, point: &str, line: &str) -> bool {
        self.inc_set
            .contains(&(point.to_string(), line.to_string()))
    }

    /// Number of elements incident to `name`.
    pub fn degree(&self, name: &str) -> usize {
        self.incidences
            .iter()
            .filter(|(p, l)| p == name || l == name)
            .count()
    }

    /// Every element is incident to at least two others.
    pub fn is_admissible(&self) -> bool {
        let mut deg: HashMap<&str, usize> = HashMap::new();
        for (p, l) in &self.incidences {
            *deg.entry(p).or_default() += 1;
            *deg.entry(l).or_default() += 1;
        }
        self.elements()
            .all(|(e, _)| deg.get(e).copied().unwrap_or(0) >= 2)
    }

    /// Checks that `f` is an injective, sort- and incidence-preserving map
    /// from `self` into `target`.
    pub fn check_monomorphism(&self, target: &Arrangement, f: &Morphism) -> Result<()> {
        let mut seen = HashSet::new();
        for (e, sort) in self.elements() {
            let img = f
                .get(e)
                .ok_or_else(|| Error::NotMonomorphism(format!("`{e}` has no image")))?;
            match target.sort_of(img) {
                None => return Err(Error::UnknownElement(img.clone())),
                Some(s) if s != sort => return Err(Error::SortClash(img.clone())),
                _ => {}
            }
            if !seen.insert(img.as_str()) {
                return Err(Error::NotMonomorphism(format!("`{img}` hit twice")));
            }
        }
        for (p, l) in &self.incidences {
            if !target.is_incident(&f[p], &f[l]) {
                return Err(Error::NotMonomorphism(format!(
                    "incidence ({p}, {l}) not preserved"
                )));
            }
        }
        Ok(())
    }

    /// Copy of `self` with every element renamed through `f`.
    pub fn rename(&self, f: impl Fn(&str) -> String) -> Result<Arrangement> {
        let mut out = Arrangement::new();
        for (e, s) in self.elements() {
            out.add(f(e), s)?;
        }
        for (p, l) in &self.incidences {
            out.add_incidence(&f(p), &f(l))?;
        }
        Ok(out)
    }
}

/// Gluing `a` and `b` along the images of `c`.
///
/// Elements of `a` keep their names. An element of `b` in the image of `psi`
/// becomes the matching element of `a`; the other elements of `b` keep their
/// names unless taken, in which case they get a `b.` prefix. Returns the sum
/// and the map from `b` into it.
pub fn fiber_sum(
    a: &Arrangement,
    b: &Arrangement,
    c: &Arrangement,
    phi: &Morphism,
    psi: &Morphism,
) -> Result<(Arrangement, Morphism)> {
    c.check_monomorphism(a, phi)?;
    c.check_monomorphism(b, psi)?;
    let mut glue: Morphism = BTreeMap::new();
    for (e, _) in c.elements() {
        glue.insert(psi[e].clone(), phi[e].clone());
    }
    let mut out = a.clone();
    let mut into: Morphism = BTreeMap::new();
    for (e, sort) in b.elements() {
        let name = match glue.get(e) {
            Some(target) => target.clone(),
            None => {
                let mut n = e.to_string();
                while out.contains(&n) {
                    n = format!("b.{n}");
                }
                out.add(n.clone(), sort)?;
                n
            }
        };
        into.insert(e.to_string(), name);
    }
    for (p, l) in b.incidences() {
        out.add_incidence(&into[p], &into[l])?;
    }
    Ok((out, into))
}

pub const T_POINTS: [&str; 6] = ["v00", "vx", "vy", "v10", "v01", "v11"];
pub const T_LINES: [&str; 6] = ["lx", "ly", "linf", "ld", "ly1", "lx1"];
pub const T_INCIDENCES: [(&str, &str); 16] = [
    ("v00", "lx"),
    ("v01", "ly"),
    ("vx", "lx"),
    ("vx", "linf"),
    ("vy", "ly"),
    ("vy", "linf"),
    ("v11", "ld"),
    ("v00", "ld"),
    ("v00", "ly"),
    ("v10", "ly1"),
    ("v01", "lx1"),
    ("v10", "lx"),
    ("vy", "ly1"),
    ("vx", "lx1"),
    ("v11", "ly1"),
    ("v11", "lx1"),
];

/// The six-point, six-line standard triangle as a bare arrangement.
pub fn triangle() -> Arrangement {
    let mut a = Arrangement::new();
    for p in T_POINTS {
        a.add_point(p).unwrap();
    }
    for l in T_LINES {
        a.add_line(l).unwrap();
    }
    for (p, l) in T_INCIDENCES {
        a.add_incidence(p, l).unwrap();
    }
    a
}

pub fn is_triangle_element(name: &str) -> bool {
    T_POINTS.contains(&name) || T_LINES.contains(&name)
}

/// An arrangement together with an embedding of the standard triangle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasedArrangement {
    pub arrangement: Arrangement,
    /// Triangle element name to arrangement element name.
    pub base: Morphism,
}

impl BasedArrangement {
    pub fn new(arrangement: Arrangement, base: Morphism) -> Result<Self> {
        triangle()
            .check_monomorphism(&arrangement, &base)
            .map_err(|e| Error::InvalidBase(e.to_string()))?;
        Ok(BasedArrangement { arrangement, base })
    }

    /// Image of a triangle element.
    pub fn base_of(&self, t: &str) -> &str {
        &self.base[t]
    }

    /// Whether `name` is the image of some triangle element.
    pub fn is_base(&self, name: &str) -> bool {
        self.base.values().any(|v| v == name)
    }
}

pub fn standard_triangle() -> BasedArrangement {
    let base = T_POINTS
        .iter()
        .chain(T_LINES.iter())
        .map(|e| (e.to_string(), e.to_string()))
        .collect();
    BasedArrangement {
        arrangement: triangle(),
        base,
    }
}

/// `a ×_{T⊔C} b`: glue two based arrangements along their triangles and
/// along `c`.
pub fn join_based(
    a: &BasedArrangement,
    b: &BasedArrangement,
    c: &Arrangement,
    phi: &Morphism,
    psi: &Morphism,
) -> Result<(BasedArrangement, Morphism)> {
    let mut tc = triangle();
    let mut phi_t = a.base.clone();
    let mut psi_t = b.base.clone();
    for (e, s) in c.elements() {
        let n = if tc.contains(e) {
            format!("c.{e}")
        } else {
            e.to_string()
        };
        tc.add(n.clone(), s)?;
        phi_t.insert(n.clone(), phi[e].clone());
        psi_t.insert(n, psi[e].clone());
    }
    for (p, l) in c.incidences() {
        let r = |x: &str| {
            if is_triangle_element(x) {
                format!("c.{x}")
            } else {
                x.to_string()
            }
        };
        tc.add_incidence(&r(p), &r(l))?;
    }
    let (sum, into) = fiber_sum(&a.arrangement, &b.arrangement, &tc, &phi_t, &psi_t)?;
    Ok((
        BasedArrangement {
            arrangement: sum,
            base: a.base.clone(),
        },
        into,
    ))
}

/// `a *_{p≡q} b`: based join identifying the single point `p` of `a` with
/// the point `q` of `b`.
pub fn point_join(
    a: &BasedArrangement,
    b: &BasedArrangement,
    p: &str,
    q: &str,
) -> Result<(BasedArrangement, Morphism)> {
    let mut c = Arrangement::new();
    c.add_point("p")?;
    let phi = BTreeMap::from([("p".to_string(), p.to_string())]);
    let psi = BTreeMap::from([("p".to_string(), q.to_string())]);
    join_based(a, b, &c, &phi, &psi)
}

/// A based arrangement with ordered input and output points, all on `l_x`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MarkedArrangement {
    pub based: BasedArrangement,
    pub inputs: Vec<String>,
    pub outputs: Vec<String>,
}

impl MarkedArrangement {
    pub fn new(based: BasedArrangement, inputs: Vec<String>, outputs: Vec<String>) -> Result<Self> {
        let m = MarkedArrangement {
            based,
            inputs,
            outputs,
        };
        m.validate()?;
        Ok(m)
    }

    pub fn validate(&self) -> Result<()> {
        let arr = &self.based.arrangement;
        let lx = self.based.base_of("lx");
        for v in self.inputs.iter().chain(&self.outputs) {
            if arr.sort_of(v) != Some(Sort::Point) {
                return Err(Error::InvalidMarking(format!("`{v}` is not a point")));
            }
            if !arr.is_incident(v, lx) {
                return Err(Error::InvalidMarking(format!("`{v}` is not on l_x")));
            }
        }
        for v in &self.inputs {
            if self.based.is_base(v) {
                return Err(Error::InvalidMarking(format!("input `{v}` lies in T")));
            }
        }
        let mut seen = HashSet::new();
        if !self.inputs.iter().all(|v| seen.insert(v)) {
            return Err(Error::InvalidMarking("repeated input".into()));
        }
        Ok(())
    }

    pub fn arrangement(&self) -> &Arrangement {
        &self.based.arrangement
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle_shape() {
        let t = standard_triangle();
        let a = &t.arrangement;
        assert_eq!(a.points().len(), 6);
        assert_eq!(a.lines().len(), 6);
        assert_eq!(a.incidences().len(), 16);
        assert!(a.is_incident("v11", "ly1"));
        assert!(a.is_incident("v11", "lx1"));
        assert!(!a.is_incident("v10", "ld"));
        assert!(a.is_admissible());
    }

    #[test]
    fn single_flag_not_admissible() {
        let mut a = Arrangement::new();
        a.add_point("p").unwrap();
        a.add_line("l").unwrap();
        a.add_incidence("p", "l").unwrap();
        assert!(!a.is_admissible());
    }

    #[test]
    fn sort_errors() {
        let mut a = Arrangement::new();
        a.add_point("p").unwrap();
        assert!(matches!(a.add_line("p"), Err(Error::DuplicateElement(_))));
        assert!(matches!(
            a.add_incidence("p", "p"),
            Err(Error::SortClash(_))
        ));
        assert!(matches!(
            a.add_incidence("p", "q"),
            Err(Error::UnknownElement(_))
        ));
    }

    #[test]
    fn empty_fiber_sum_is_disjoint_union() {
        let t = triangle();
        let (s, into) = fiber_sum(
            &t,
            &t,
            &Arrangement::new(),
            &Morphism::new(),
            &Morphism::new(),
        )
        .unwrap();
        assert_eq!(s.len(), 24);
        assert_eq!(s.incidences().len(), 32);
        assert_eq!(into["v00"], "b.v00");
    }

    #[test]
    fn fiber_sum_rejects_sort_clash() {
        let mut c = Arrangement::new();
        c.add_point("p").unwrap();
        let t = triangle();
        let phi = BTreeMap::from([("p".to_string(), "lx".to_string())]);
        let psi = BTreeMap::from([("p".to_string(), "v00".to_string())]);
        assert!(fiber_sum(&t, &t, &c, &phi, &psi).is_err());
    }

    #[test]
    fn based_join_shares_triangle() {
        let t = standard_triangle();
        let (j, _) = join_based(
            &t,
            &t,
            &Arrangement::new(),
            &Morphism::new(),
            &Morphism::new(),
        )
        .unwrap();
        assert_eq!(j.arrangement.len(), 12);
        assert_eq!(j.arrangement.incidences().len(), 16);
    }

    #[test]
    fn marking_must_be_on_lx() {
        let mut t = standard_triangle();
        t.arrangement.add_point("w").unwrap();
        assert!(MarkedArrangement::new(t.clone(), vec!["w".into()], vec![]).is_err());
        t.arrangement.add_incidence("w", "lx").unwrap();
        assert!(MarkedArrangement::new(t.clone(), vec!["w".into()], vec![]).is_ok());
        assert!(MarkedArrangement::new(t, vec!["v00".into()], vec![]).is_err());
    }
}
