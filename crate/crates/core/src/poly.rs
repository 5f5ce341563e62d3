//! Dense polynomials in at most two named variables.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::scalar::{Field, Ring};

/// Variable name.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var(Arc<str>);

impl Var {
    pub fn new(name: &str) -> Self {
        Var(Arc::from(name))
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

impl fmt::Debug for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Polynomial over `F` in zero, one or two variables.
///
/// Canonical form: variables sorted by name, each variable actually occurs,
/// the coefficient table has no trailing zeros. `coeffs[i][j]` is the
/// coefficient of `x^i y^j` where `x, y` are the stored variables in order;
/// univariate tables have inner length at most one.
#[derive(Clone, PartialEq)]
pub struct Poly<F> {
    vars: Vec<Var>,
    coeffs: Vec<Vec<F>>,
}

impl<F: Field> Poly<F> {
    pub fn constant(c: F) -> Self {
        Self::from_table(Vec::new(), vec![vec![c]])
    }

    /// The monomial `var`.
    pub fn var(name: &str) -> Self {
        Self::monomial(name, 1, F::one())
    }

    /// `c · var^k`
    pub fn monomial(name: &str, k: u32, c: F) -> Self {
        let mut coeffs = vec![vec![]; k as usize + 1];
        coeffs[k as usize] = vec![c];
        Self::from_table(vec![Var::new(name)], coeffs)
    }

    /// Univariate polynomial from coefficients in increasing degree.
    pub fn from_coeffs(name: &str, coeffs: Vec<F>) -> Self {
        let table = coeffs.into_iter().map(|c| vec![c]).collect();
        Self::from_table(vec![Var::new(name)], table)
    }

    /// Builds from an exponent table over `vars` (at most two, any order) and
    /// brings the result into canonical form.
    pub fn from_terms<I>(vars: &[Var], terms: I) -> Self
    where
        I: IntoIterator<Item = ((u32, u32), F)>,
    {
        assert!(vars.len() <= 2, "at most two variables supported");
        let mut table: Vec<Vec<F>> = Vec::new();
        for ((i, j), c) in terms {
            if c.is_zero() {
                continue;
            }
            let (i, j) = (i as usize, j as usize);
            if table.len() <= i {
                table.resize(i + 1, Vec::new());
            }
            let row = &mut table[i];
            if row.len() <= j {
                row.resize(j + 1, F::zero());
            }
            row[j].add_assign_ref(&c);
        }
        Self::from_table(vars.to_vec(), table)
    }

    fn from_table(vars: Vec<Var>, coeffs: Vec<Vec<F>>) -> Self {
        let mut p = Poly { vars, coeffs };
        p.normalize();
        p
    }

    fn normalize(&mut self) {
        for row in &mut self.coeffs {
            while row.last().is_some_and(|c| c.is_zero()) {
                row.pop();
            }
        }
        while self.coeffs.last().is_some_and(|r| r.is_empty()) {
            self.coeffs.pop();
        }
        // drop the second variable if it does not occur
        if self.vars.len() == 2 && self.coeffs.iter().all(|r| r.len() <= 1) {
            self.vars.pop();
        }
        // drop the first variable if it does not occur
        if !self.vars.is_empty() && self.coeffs.len() <= 1 {
            let row = self.coeffs.pop().unwrap_or_default();
            self.vars.remove(0);
            self.coeffs = row.into_iter().map(|c| vec![c]).collect();
            while self.coeffs.last().is_some_and(|r| r.is_empty() || r[0].is_zero()) {
                self.coeffs.pop();
            }
            if self.vars.len() == 1 && self.coeffs.len() <= 1 {
                self.vars.clear();
            }
        }
        if self.vars.len() == 2 && self.vars[0] > self.vars[1] {
            let terms: Vec<_> = self.terms().map(|((i, j), c)| ((j, i), c.clone())).collect();
            self.vars.swap(0, 1);
            let vars = self.vars.clone();
            *self = Self::from_terms(&vars, terms);
        }
    }

    pub fn vars(&self) -> &[Var] {
        &self.vars
    }

    /// Nonzero terms as `((i, j), coeff)` in lexicographic exponent order.
    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32), &F)> {
        self.coeffs.iter().enumerate().flat_map(|(i, row)| {
            row.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(move |(j, c)| ((i as u32, j as u32), c))
        })
    }

    /// Terms re-expressed over the (sorted) variable list `target`, which must
    /// contain every variable of `self`.
    pub fn terms_over(&self, target: &[Var]) -> Vec<((u32, u32), F)> {
        let pos: Vec<usize> =
            self.vars.iter().map(|v| target.iter().position(|t| t == v).expect("variable not in target")).collect();
        self.terms()
            .map(|((i, j), c)| {
                let mut e = [0u32; 2];
                if let Some(&p) = pos.first() {
                    e[p] = i;
                }
                if let Some(&p) = pos.get(1) {
                    e[p] = j;
                }
                ((e[0], e[1]), c.clone())
            })
            .collect()
    }

    fn union_vars(&self, other: &Self) -> Vec<Var> {
        let mut v: Vec<Var> = self.vars.iter().chain(other.vars.iter()).cloned().collect();
        v.sort();
        v.dedup();
        assert!(v.len() <= 2, "polynomial with more than two variables: {v:?}");
        v
    }

    /// Degree in `var` (0 if absent); `None` for the zero polynomial.
    pub fn degree_in(&self, var: &str) -> Option<u32> {
        if self.is_zero() {
            return None;
        }
        match self.vars.iter().position(|v| v.name() == var) {
            None => Some(0),
            Some(p) => self.terms().map(|(e, _)| if p == 0 { e.0 } else { e.1 }).max(),
        }
    }

    /// Largest degree in any single variable.
    pub fn max_degree(&self) -> u32 {
        self.terms().map(|((i, j), _)| i.max(j)).max().unwrap_or(0)
    }

    /// Coefficient of `var^k` of a polynomial in (at most) `var`.
    pub fn coeff(&self, var: &str, k: u32) -> F {
        match self.vars.as_slice() {
            [] => {
                if k == 0 {
                    self.constant_term()
                } else {
                    F::zero()
                }
            }
            [v] if v.name() == var => {
                self.coeffs.get(k as usize).and_then(|r| r.first()).cloned().unwrap_or_else(F::zero)
            }
            _ => panic!("coeff({var}) on a polynomial in {:?}", self.vars),
        }
    }

    pub fn constant_term(&self) -> F {
        self.coeffs.first().and_then(|r| r.first()).cloned().unwrap_or_else(F::zero)
    }

    /// Constant value, if the polynomial has no variables.
    pub fn as_constant(&self) -> Option<F> {
        self.vars.is_empty().then(|| self.constant_term())
    }

    /// Evaluates every variable; missing assignments are an error.
    pub fn eval(&self, assignment: &[(&str, F)]) -> Option<F> {
        let vals: Option<Vec<&F>> =
            self.vars.iter().map(|v| assignment.iter().find(|(n, _)| *n == v.name()).map(|(_, x)| x)).collect();
        let vals = vals?;
        let mut acc = F::zero();
        for ((i, j), c) in self.terms() {
            let mut t = c.clone();
            if i > 0 {
                t = t.mul_ref(&pow(vals[0], i));
            }
            if j > 0 {
                t = t.mul_ref(&pow(vals[1], j));
            }
            acc.add_assign_ref(&t);
        }
        Some(acc)
    }

    /// Evaluates a polynomial in at most one variable.
    pub fn eval_at(&self, x: &F) -> F {
        match self.vars.len() {
            0 => self.constant_term(),
            1 => {
                // Horner
                let mut acc = F::zero();
                for row in self.coeffs.iter().rev() {
                    acc = acc.mul_ref(x);
                    if let Some(c) = row.first() {
                        acc.add_assign_ref(c);
                    }
                }
                acc
            }
            _ => panic!("eval_at on bivariate polynomial"),
        }
    }

    /// Replaces `var` by the polynomial `value`.
    pub fn substitute(&self, var: &str, value: &Poly<F>) -> Poly<F> {
        let Some(p) = self.vars.iter().position(|v| v.name() == var) else {
            return self.clone();
        };
        let other = self.vars.iter().enumerate().find(|(k, _)| *k != p).map(|(_, v)| v.clone());
        let deg = self.degree_in(var).unwrap_or(0);
        let mut powers = vec![Poly::one()];
        for k in 1..=deg as usize {
            let next = powers[k - 1].clone() * value.clone();
            powers.push(next);
        }
        let mut acc = Poly::zero();
        for ((i, j), c) in self.terms() {
            let (e_var, e_other) = if p == 0 { (i, j) } else { (j, i) };
            let mut t = powers[e_var as usize].clone() * Poly::constant(c.clone());
            if e_other > 0 {
                let o = other.as_ref().expect("second variable");
                t = t * Poly::monomial(o.name(), e_other, F::one());
            }
            acc = acc + t;
        }
        acc
    }

    /// Replaces `var` by `−var`.
    pub fn negate_var(&self, var: &str) -> Poly<F> {
        self.substitute(var, &-Poly::var(var))
    }

    /// Renames a variable.
    pub fn rename(&self, from: &str, to: &str) -> Poly<F> {
        self.substitute(from, &Poly::var(to))
    }

    /// Coefficient-wise multiplication by a scalar.
    pub fn scale(&self, s: &F) -> Poly<F> {
        let coeffs = self.coeffs.iter().map(|r| r.iter().map(|c| c.mul_ref(s)).collect()).collect();
        Self::from_table(self.vars.clone(), coeffs)
    }

    /// Division with remainder by a univariate polynomial in the same variable.
    pub fn div_rem(&self, divisor: &Poly<F>) -> (Poly<F>, Poly<F>) {
        assert!(!divisor.is_zero(), "polynomial division by zero");
        assert!(self.vars.len() <= 1 && divisor.vars.len() <= 1, "div_rem is univariate");
        let name =
            self.vars.first().or(divisor.vars.first()).map(|v| v.name().to_string()).unwrap_or_else(|| "u".to_string());
        if let (Some(a), Some(b)) = (self.vars.first(), divisor.vars.first()) {
            assert_eq!(a, b, "div_rem over different variables");
        }
        let coeffs = |p: &Poly<F>| -> Vec<F> {
            let d = p.degree_in(&name).unwrap_or(0);
            (0..=d).map(|k| p.coeff(&name, k)).collect()
        };
        let mut rem = if self.is_zero() { Vec::new() } else { coeffs(self) };
        let div = coeffs(divisor);
        let dd = div.len() - 1;
        let lead_inv = div[dd].inv().expect("nonzero leading coefficient");
        let mut quot = vec![F::zero(); rem.len().saturating_sub(dd).max(1)];
        while rem.len() > dd && !rem.is_empty() {
            let k = rem.len() - 1 - dd;
            let f = rem.last().unwrap().mul_ref(&lead_inv);
            for (t, dc) in div.iter().enumerate() {
                let sub = dc.mul_ref(&f);
                rem[k + t] = rem[k + t].sub_ref(&sub);
            }
            quot[k] = f;
            rem.pop();
            while rem.last().is_some_and(|c| c.is_zero()) {
                rem.pop();
            }
        }
        (Poly::from_coeffs(&name, quot), Poly::from_coeffs(&name, rem))
    }
}

fn pow<F: Field>(x: &F, k: u32) -> F {
    let mut acc = F::one();
    for _ in 0..k {
        acc = acc.mul_ref(x);
    }
    acc
}

impl<F: Field> From<F> for Poly<F> {
    fn from(c: F) -> Self {
        Poly::constant(c)
    }
}

impl<F: Field> Zero for Poly<F> {
    fn zero() -> Self {
        Poly { vars: Vec::new(), coeffs: Vec::new() }
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl<F: Field> One for Poly<F> {
    fn one() -> Self {
        Poly::constant(F::one())
    }
}

impl<F: Field> Add for Poly<F> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        self.add_ref(&o)
    }
}

impl<F: Field> Sub for Poly<F> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self.sub_ref(&o)
    }
}

impl<F: Field> Mul for Poly<F> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        self.mul_ref(&o)
    }
}

impl<F: Field> Neg for Poly<F> {
    type Output = Self;
    fn neg(self) -> Self {
        let coeffs = self.coeffs.into_iter().map(|r| r.into_iter().map(|c| -c).collect()).collect();
        Poly { vars: self.vars, coeffs }
    }
}

impl<F: Field> Ring for Poly<F> {
    fn add_ref(&self, o: &Self) -> Self {
        if o.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return o.clone();
        }
        if self.vars == o.vars {
            let n = self.coeffs.len().max(o.coeffs.len());
            let mut table = Vec::with_capacity(n);
            for i in 0..n {
                let a = self.coeffs.get(i).map(Vec::as_slice).unwrap_or(&[]);
                let b = o.coeffs.get(i).map(Vec::as_slice).unwrap_or(&[]);
                let m = a.len().max(b.len());
                let row: Vec<F> = (0..m)
                    .map(|j| match (a.get(j), b.get(j)) {
                        (Some(x), Some(y)) => x.add_ref(y),
                        (Some(x), None) => x.clone(),
                        (None, Some(y)) => y.clone(),
                        (None, None) => F::zero(),
                    })
                    .collect();
                table.push(row);
            }
            return Self::from_table(self.vars.clone(), table);
        }
        let vars = self.union_vars(o);
        let terms = self.terms_over(&vars).into_iter().chain(o.terms_over(&vars));
        Self::from_terms(&vars, terms)
    }

    fn sub_ref(&self, o: &Self) -> Self {
        self.add_ref(&-o.clone())
    }

    fn mul_ref(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let vars = self.union_vars(o);
        let a = self.terms_over(&vars);
        let b = o.terms_over(&vars);
        let mut terms = Vec::with_capacity(a.len() * b.len());
        for ((i, j), x) in &a {
            for ((k, l), y) in &b {
                terms.push(((i + k, j + l), x.mul_ref(y)));
            }
        }
        Self::from_terms(&vars, terms)
    }

    fn from_int(n: i64) -> Self {
        Poly::constant(F::from_int(n))
    }
}

impl<F: fmt::Debug> fmt::Debug for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Poly").field("vars", &self.vars).field("coeffs", &self.coeffs).finish()
    }
}

/// Human-readable form, e.g. `(1-u^2)`.
impl<F: Field> fmt::Display for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut out = String::new();
        for ((i, j), c) in self.terms() {
            let mut mono = String::new();
            for (k, e) in [i, j].into_iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if !mono.is_empty() {
                    mono.push('*');
                }
                mono.push_str(self.vars[k].name());
                if e > 1 {
                    mono.push_str(&format!("^{e}"));
                }
            }
            let cs = c.to_string();
            let (neg, body) = match cs.strip_prefix('-') {
                Some(rest) if !rest.contains(['+', ' ']) => (true, rest.to_string()),
                _ => (false, cs.clone()),
            };
            let is_one = body == "1";
            let term = if mono.is_empty() {
                body
            } else if is_one {
                mono
            } else {
                format!("{body}*{mono}")
            };
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push(if neg { '-' } else { '+' });
            }
            out.push_str(&term);
        }
        write!(f, "({out})")
    }
}
