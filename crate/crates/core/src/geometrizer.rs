//! Integer polynomial systems, written as straight-line programs, compiled
//! into based arrangements whose realizations are the solutions.

use std::fmt;

use crate::arith::{parse_expr, Poly, RatFunc, RingDescriptor, Scalar, ScalarIo};
use crate::error::{Error, Result};
use crate::gadgets::{
    compose, gadget_add, gadget_const, gadget_free_input, gadget_identity, gadget_mul, gadget_sub,
    gadget_triangle, juxtapose, project_inputs, propagate, propagate_unchecked,
    FunctionalArrangement, Realization, Sign,
};
use crate::geom::{affine_convert, Affine, ProjLine};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Node {
    Var(usize),
    One,
    NegOne,
    Add(usize, usize),
    Sub(usize, usize),
    Mul(usize, usize),
}

/// A straight-line program: `nodes` in topological order, `root` the value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Slp {
    pub nodes: Vec<Node>,
    pub root: usize,
}

impl Slp {
    pub fn eval<S: Scalar>(&self, x: &[S]) -> S {
        let mut vals: Vec<S> = Vec::with_capacity(self.nodes.len());
        for n in &self.nodes {
            let v = match *n {
                Node::Var(i) => x[i].clone(),
                Node::One => S::one(),
                Node::NegOne => -S::one(),
                Node::Add(a, b) => vals[a].clone() + vals[b].clone(),
                Node::Sub(a, b) => vals[a].clone() - vals[b].clone(),
                Node::Mul(a, b) => vals[a].clone() * vals[b].clone(),
            };
            vals.push(v);
        }
        vals[self.root].clone()
    }

    /// Largest variable index plus one.
    pub fn arity(&self) -> usize {
        self.nodes
            .iter()
            .filter_map(|n| match n {
                Node::Var(i) => Some(i + 1),
                _ => None,
            })
            .max()
            .unwrap_or(0)
    }

    fn render(&self, i: usize) -> String {
        match self.nodes[i] {
            Node::Var(k) => format!("x{}", k + 1),
            Node::One => "1".into(),
            Node::NegOne => "(-1)".into(),
            Node::Add(a, b) => format!("({} + {})", self.render(a), self.render(b)),
            Node::Sub(a, b) => format!("({} - {})", self.render(a), self.render(b)),
            Node::Mul(a, b) => format!("({} * {})", self.render(a), self.render(b)),
        }
    }
}

impl fmt::Display for Slp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(self.root))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolySystem {
    pub slps: Vec<Slp>,
    pub nvars: usize,
}

impl PolySystem {
    /// Index of the first equation that does not vanish at `x`.
    pub fn first_nonzero<S: Scalar>(&self, x: &[S]) -> Option<usize> {
        self.slps.iter().position(|s| !s.eval(x).is_zero())
    }
}

/// Parses `expr = 0; expr = 0; ...`. Integer literals become sums of ±1 by
/// doubling; the written parenthesization is kept as is.
pub fn parse_system(text: &str) -> Result<PolySystem> {
    let mut slps = Vec::new();
    let mut offset = 0;
    for chunk in text.split(';') {
        if !chunk.trim().is_empty() {
            slps.push(parse_equation(chunk, offset)?);
        }
        offset += chunk.len() + 1;
    }
    let nvars = slps.iter().map(Slp::arity).max().unwrap_or(0);
    Ok(PolySystem { slps, nvars })
}

fn parse_equation(src: &str, offset: usize) -> Result<Slp> {
    let mut p = SlpParser {
        src: src.as_bytes(),
        pos: 0,
        offset,
        nodes: Vec::new(),
    };
    let root = p.expr()?;
    p.expect(b'=')?;
    p.skip_ws();
    if p.src.get(p.pos) != Some(&b'0') {
        return Err(p.err("expected `0` on the right-hand side"));
    }
    p.pos += 1;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(Slp {
        nodes: p.nodes,
        root,
    })
}

struct SlpParser<'a> {
    src: &'a [u8],
    pos: usize,
    offset: usize,
    nodes: Vec<Node>,
}

impl SlpParser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Syntax {
            pos: self.offset + self.pos,
            msg: msg.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(&format!("expected `{}`", c as char)))
        }
    }

    fn push(&mut self, n: Node) -> usize {
        self.nodes.push(n);
        self.nodes.len() - 1
    }

    fn expr(&mut self) -> Result<usize> {
        let mut acc = self.term()?;
        while let Some(c @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = self.push(if c == b'+' {
                Node::Add(acc, rhs)
            } else {
                Node::Sub(acc, rhs)
            });
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<usize> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            let rhs = self.factor()?;
            acc = self.push(Node::Mul(acc, rhs));
        }
        Ok(acc)
    }

    fn digits(&mut self) -> Option<u128> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .ok()?
            .parse()
            .ok()
    }

    fn factor(&mut self) -> Result<usize> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                if self.peek().is_some_and(|c| c.is_ascii_digit()) {
                    let save = self.nodes.len();
                    let lit = self.literal()?;
                    if self.nodes.len() == save + 1 && self.nodes[lit] == Node::One {
                        self.nodes[lit] = Node::NegOne;
                        return Ok(lit);
                    }
                    let m = self.push(Node::NegOne);
                    return Ok(self.push(Node::Mul(m, lit)));
                }
                let f = self.factor()?;
                let m = self.push(Node::NegOne);
                Ok(self.push(Node::Mul(m, f)))
            }
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(b')')?;
                Ok(e)
            }
            Some(b'x') => {
                self.pos += 1;
                let at = self.pos;
                match self.digits() {
                    Some(k) if k >= 1 => Ok(self.push(Node::Var(k as usize - 1))),
                    _ => Err(Error::Syntax {
                        pos: self.offset + at,
                        msg: "expected variable index ≥ 1 after `x`".into(),
                    }),
                }
            }
            Some(c) if c.is_ascii_digit() => self.literal(),
            Some(_) => Err(self.err("unexpected character")),
            None => Err(self.err("unexpected end of input")),
        }
    }

    fn literal(&mut self) -> Result<usize> {
        let at = self.pos;
        let c = self.digits().ok_or_else(|| self.err("integer too large"))?;
        if c == 0 {
            return Err(Error::Syntax {
                pos: self.offset + at,
                msg: "zero literal not allowed".into(),
            });
        }
        let one = self.push(Node::One);
        let mut acc = one;
        let bits = 128 - c.leading_zeros();
        for k in (0..bits - 1).rev() {
            acc = self.push(Node::Add(acc, acc));
            if (c >> k) & 1 == 1 {
                acc = self.push(Node::Add(acc, one));
            }
        }
        Ok(acc)
    }
}

/// Compiled polynomial whose inputs carry variable indices; `None` marks
/// the dummy input of a constant gadget.
struct Partial {
    fa: FunctionalArrangement,
    vars: Vec<Option<usize>>,
}

fn build(slp: &Slp, i: usize) -> Result<Partial> {
    let binary = |gadget: FunctionalArrangement, a: usize, b: usize| -> Result<Partial> {
        let pa = build(slp, a)?;
        let pb = build(slp, b)?;
        let h = compose(&gadget, &pa.fa, 0)?;
        // After the first step the second gadget input sits after pa's inputs.
        let k = pa.vars.len();
        let h = compose(&h, &pb.fa, k)?;
        let mut vars = pb.vars;
        vars.extend(pa.vars);
        Ok(Partial { fa: h, vars })
    };
    match slp.nodes[i] {
        Node::Var(k) => Ok(Partial {
            fa: gadget_identity(),
            vars: vec![Some(k)],
        }),
        Node::One => Ok(Partial {
            fa: gadget_const(Sign::Plus),
            vars: vec![None],
        }),
        Node::NegOne => Ok(Partial {
            fa: gadget_const(Sign::Minus),
            vars: vec![None],
        }),
        Node::Add(a, b) => binary(gadget_add(), a, b),
        Node::Sub(a, b) => binary(gadget_sub(), a, b),
        Node::Mul(a, b) => binary(gadget_mul(), a, b),
    }
}

/// Identifies inputs carrying the same variable and puts the inputs in
/// variable order, adding free inputs for variables below `nvars` that do
/// not occur.
fn tie_inputs(
    mut fa: FunctionalArrangement,
    vars: Vec<Option<usize>>,
    nvars: usize,
) -> Result<FunctionalArrangement> {
    let used_min = vars.iter().flatten().min().copied();
    let dummy = match used_min {
        Some(v) => v,
        None if nvars > 0 => 0,
        None => {
            return Err(Error::Composition(
                "constant polynomial in a system without variables".into(),
            ))
        }
    };
    let vars: Vec<usize> = vars.into_iter().map(|v| v.unwrap_or(dummy)).collect();
    let names = fa.inputs().to_vec();
    let mut first: Vec<Option<String>> = vec![None; nvars.max(dummy + 1)];
    // Variable of each surviving input, by position.
    let mut order: Vec<usize> = Vec::new();
    for (name, &v) in names.iter().zip(&vars) {
        match &first[v] {
            None => {
                first[v] = Some(name.clone());
                order.push(v);
            }
            Some(keep) => fa = fa.identify_points(keep, name)?,
        }
    }
    for (v, slot) in first.iter().enumerate() {
        if slot.is_none() {
            fa = juxtapose(&fa, &gadget_free_input())?;
            order.push(v);
        }
    }
    let mut pos: Vec<usize> = (0..order.len()).collect();
    pos.sort_by_key(|&i| order[i]);
    let inputs = fa.inputs().to_vec();
    fa.marked.inputs = pos.into_iter().map(|i| inputs[i].clone()).collect();
    Ok(fa)
}

/// One gadget copy per node of the program, composed; inputs are the
/// variables `x1..x_nvars` in order, output the value.
pub fn compile_poly(slp: &Slp, nvars: usize) -> Result<FunctionalArrangement> {
    if slp.arity() > nvars {
        return Err(Error::Composition(format!(
            "program uses {} variables, system has {nvars}",
            slp.arity()
        )));
    }
    let p = build(slp, slp.root)?;
    tie_inputs(p.fa, p.vars, nvars)
}

/// The arrangement of a system: each equation compiled, variables shared,
/// and each output point identified with `v00`.
///
/// Identified outputs leave the output marking; the result has the system
/// variables as inputs and no outputs.
pub fn compile_system(sys: &PolySystem) -> Result<FunctionalArrangement> {
    let mut acc: Option<FunctionalArrangement> = None;
    for slp in &sys.slps {
        let fa = compile_poly(slp, sys.nvars)?;
        acc = Some(match acc {
            None => fa,
            Some(prev) => {
                let n = sys.nvars;
                let mut j = juxtapose(&prev, &fa)?;
                for v in 0..n {
                    let keep = j.inputs()[v].clone();
                    let drop = j.inputs()[n + v].clone();
                    j = j.identify_points(&keep, &drop)?;
                }
                j
            }
        });
    }
    let mut fa = match acc {
        Some(fa) => fa,
        None => {
            let mut fa = gadget_triangle();
            for _ in 0..sys.nvars {
                fa = juxtapose(&fa, &gadget_free_input())?;
            }
            fa
        }
    };
    let origin = fa.based().base_of("v00").to_string();
    for w in fa.outputs().to_vec() {
        fa = fa.identify_points(&origin, &w)?;
    }
    Ok(fa)
}

/// Realization of the compiled system at a solution `x`.
pub fn geo<S: Scalar>(
    sys: &PolySystem,
    fa: &FunctionalArrangement,
    x: &[S],
) -> Result<Realization<S>> {
    if x.len() != sys.nvars {
        return Err(Error::InputCount {
            expected: sys.nvars,
            got: x.len(),
        });
    }
    if let Some(i) = sys.first_nonzero(x) {
        return Err(Error::NotASolution(i));
    }
    propagate(fa, x)
}

/// Inverse of [`geo`]: reads the variables off the input points.
pub fn tau<S: Scalar>(fa: &FunctionalArrangement, r: &Realization<S>) -> Result<Vec<S>> {
    project_inputs(fa, r)
}

/// Incidences violated when propagating at an arbitrary `x`.
pub fn violations_at<S: Scalar>(
    fa: &FunctionalArrangement,
    x: &[S],
) -> Result<Vec<(String, String)>> {
    Ok(propagate_unchecked(fa, x)?.violations(fa.arrangement()))
}

/// Whether every non-triangle line is `L_x`, `L_y` or `L_d` and every
/// non-triangle point is one of `(0,0)`, `(0,∞)`, `(∞,0)`, `(∞,∞)`.
pub fn check_zero_fiber<S: Scalar>(fa: &FunctionalArrangement, r: &Realization<S>) -> bool {
    let based = fa.based();
    let line = |c: [i64; 3]| ProjLine::from_coords(c.map(S::from_i64)).unwrap();
    let allowed_lines = [line([0, 1, 0]), line([1, 0, 0]), line([1, -1, 0])];
    let zero = S::zero();
    let lines_ok = r
        .lines
        .iter()
        .filter(|(k, _)| !based.is_base(k))
        .all(|(_, l)| allowed_lines.contains(l));
    let points_ok = r
        .points
        .iter()
        .filter(|(k, _)| !based.is_base(k))
        .all(|(_, p)| match affine_convert(p) {
            Affine::Finite(x, y) => x == zero && y == zero,
            Affine::ZeroInf | Affine::InfZero | Affine::InfInf => true,
            Affine::Infinite => false,
        });
    lines_ok && points_ok
}

/// Degrees `u_j` with `f_j(t^w x) = t^u_j f_j(x)`, or `None` if some
/// polynomial is zero or not weighted homogeneous.
pub fn is_weighted_homogeneous(polys: &[Poly], weights: &[u64]) -> Option<Vec<u64>> {
    if weights.contains(&0) {
        return None;
    }
    polys
        .iter()
        .map(|p| {
            let mut u: Option<u64> = None;
            for (m, _) in p.terms() {
                if m.exps().len() > weights.len() {
                    return None;
                }
                let w: u64 = m
                    .exps()
                    .iter()
                    .zip(weights)
                    .map(|(&e, &w)| e as u64 * w)
                    .sum();
                match u {
                    None => u = Some(w),
                    Some(x) if x != w => return None,
                    _ => {}
                }
            }
            u
        })
        .collect()
}

/// Parses `;`-separated polynomials in the named variables. Rational
/// coefficients are cleared by the common denominator.
pub fn parse_polys(text: &str, vars: &[String]) -> Result<Vec<Poly>> {
    let ring = RingDescriptor::function_field(vars.iter().cloned())?;
    text.split(';')
        .filter(|s| !s.trim().is_empty())
        .map(|s| {
            let f = RatFunc::parse_in(&ring, s)?;
            if f.den().as_constant().is_none() {
                return Err(Error::Syntax {
                    pos: 0,
                    msg: format!("`{}` is not a polynomial", s.trim()),
                });
            }
            Ok(f.num().clone())
        })
        .collect()
}

/// Evaluates an expression string over any ring with the system variables
/// `x1, x2, ...` bound to `x`.
pub fn eval_in<S: Scalar>(expr: &str, x: &[S]) -> Result<S> {
    parse_expr(expr, |name| {
        name.strip_prefix('x')
            .and_then(|k| k.parse::<usize>().ok())
            .filter(|&k| k >= 1 && k <= x.len())
            .map(|k| x[k - 1].clone())
            .ok_or_else(|| Error::Syntax {
                pos: 0,
                msg: format!("unknown variable `{name}`"),
            })
    })
}
