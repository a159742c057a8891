//! Sparse multivariate polynomials over a named, ordered variable catalog.
//!
//! Terms are kept sorted in decreasing lexicographic order of exponent
//! vectors, where the first catalog variable is the most significant. That
//! order is the canonical printing order.

use std::borrow::Cow;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::rational::Rational;
use crate::error::{Error, Result};

/// Scalars a [`Polynomial`] may carry.
pub trait Coefficient:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
{
    fn mul_ref(&self, rhs: &Self) -> Self;
    fn add_assign_ref(&mut self, rhs: &Self);
    fn sub_assign_ref(&mut self, rhs: &Self);
    fn div_exact(&self, rhs: &Self) -> Option<Self>;
    fn is_negative(&self) -> bool;
    fn to_rational(&self) -> Rational;
    fn parse_coefficient(s: &str) -> Option<Self>;
}

impl Coefficient for BigInt {
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn add_assign_ref(&mut self, rhs: &Self) {
        *self += rhs;
    }
    fn sub_assign_ref(&mut self, rhs: &Self) {
        *self -= rhs;
    }
    fn div_exact(&self, rhs: &Self) -> Option<Self> {
        if rhs.is_zero() {
            return None;
        }
        let (q, r) = self.div_rem(rhs);
        r.is_zero().then_some(q)
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn to_rational(&self) -> Rational {
        Rational::from_integer(self.clone())
    }
    fn parse_coefficient(s: &str) -> Option<Self> {
        s.parse().ok()
    }
}

impl Coefficient for Rational {
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn add_assign_ref(&mut self, rhs: &Self) {
        *self += rhs;
    }
    fn sub_assign_ref(&mut self, rhs: &Self) {
        *self -= rhs;
    }
    fn div_exact(&self, rhs: &Self) -> Option<Self> {
        (!rhs.is_zero()).then(|| self / rhs)
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn to_rational(&self) -> Rational {
        self.clone()
    }
    fn parse_coefficient(s: &str) -> Option<Self> {
        match s.split_once('/') {
            Some((n, d)) => {
                let d: BigInt = d.trim().parse().ok()?;
                if d.is_zero() {
                    return None;
                }
                Some(Rational::new(n.trim().parse().ok()?, d))
            }
            None => Some(Rational::from_integer(s.parse().ok()?)),
        }
    }
}

/// Ordered list of variable names shared between polynomials.
#[derive(Clone)]
pub struct Catalog(Arc<Vec<String>>);

impl Catalog {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Self {
        Catalog(Arc::new(names.into_iter().map(Into::into).collect()))
    }

    pub fn empty() -> Self {
        Catalog(Arc::new(Vec::new()))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn name(&self, idx: usize) -> &str {
        &self.0[idx]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|n| n == name)
    }

    pub fn same(&self, other: &Catalog) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }

    /// `self` followed by the names of `other` not already present.
    pub fn union(&self, other: &Catalog) -> Catalog {
        let mut names: Vec<String> = self.0.as_ref().clone();
        for n in other.names() {
            if !names.contains(n) {
                names.push(n.clone());
            }
        }
        Catalog(Arc::new(names))
    }

    fn contains_all(&self, other: &Catalog) -> bool {
        other.names().iter().all(|n| self.0.contains(n))
    }
}

impl PartialEq for Catalog {
    fn eq(&self, other: &Self) -> bool {
        self.same(other)
    }
}

impl fmt::Debug for Catalog {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.0.iter()).finish()
    }
}

/// Exponent vector indexed by catalog position.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, idx: usize) -> Self {
        let mut e = vec![0; nvars];
        e[idx] = 1;
        Monomial(e)
    }

    pub fn from_exponents(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    fn mul(&self, rhs: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }

    fn div(&self, rhs: &Monomial) -> Option<Monomial> {
        self.0
            .iter()
            .zip(&rhs.0)
            .map(|(&a, &b)| a.checked_sub(b))
            .collect::<Option<Vec<_>>>()
            .map(Monomial)
    }
}

#[derive(Clone)]
pub struct Polynomial<C> {
    catalog: Catalog,
    /// Nonzero terms, strictly decreasing by monomial.
    terms: Vec<(Monomial, C)>,
}

/// Integer-coefficient polynomial: the entries of generic matrices.
pub type ZPoly = Polynomial<BigInt>;
/// Rational-coefficient polynomial.
pub type QPoly = Polynomial<Rational>;

impl<C: Coefficient> Polynomial<C> {
    pub fn zero() -> Self {
        Polynomial {
            catalog: Catalog::empty(),
            terms: Vec::new(),
        }
    }

    pub fn constant(c: C) -> Self {
        let terms = if c.is_zero() {
            Vec::new()
        } else {
            vec![(Monomial::one(0), c)]
        };
        Polynomial {
            catalog: Catalog::empty(),
            terms,
        }
    }

    /// The single variable at catalog position `idx`.
    pub fn var(catalog: &Catalog, idx: usize) -> Self {
        Polynomial {
            catalog: catalog.clone(),
            terms: vec![(Monomial::var(catalog.len(), idx), C::one())],
        }
    }

    /// A single named variable over a one-element catalog.
    pub fn named(name: &str) -> Self {
        Self::var(&Catalog::new([name]), 0)
    }

    /// Builds a polynomial from arbitrary terms; like monomials are combined
    /// and zero coefficients dropped.
    pub fn from_terms(catalog: &Catalog, terms: impl IntoIterator<Item = (Monomial, C)>) -> Self {
        let mut acc: HashMap<Monomial, C> = HashMap::new();
        for (m, c) in terms {
            assert_eq!(m.0.len(), catalog.len(), "exponent vector length");
            match acc.get_mut(&m) {
                Some(v) => v.add_assign_ref(&c),
                None => {
                    acc.insert(m, c);
                }
            }
        }
        Self::from_map(catalog.clone(), acc)
    }

    fn from_map(catalog: Catalog, acc: HashMap<Monomial, C>) -> Self {
        let mut terms: Vec<(Monomial, C)> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        Polynomial { catalog, terms }
    }

    pub fn catalog(&self) -> &Catalog {
        &self.catalog
    }

    pub fn terms(&self) -> &[(Monomial, C)] {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn constant_term(&self) -> C {
        self.terms
            .iter()
            .find(|(m, _)| m.is_one())
            .map(|(_, c)| c.clone())
            .unwrap_or_else(C::zero)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|(m, _)| m.degree()).max().unwrap_or(0)
    }

    pub fn leading_term(&self) -> Option<&(Monomial, C)> {
        self.terms.first()
    }

    /// Names of variables that occur with positive exponent.
    pub fn variables(&self) -> Vec<&str> {
        (0..self.catalog.len())
            .filter(|&i| self.terms.iter().any(|(m, _)| m.0[i] > 0))
            .map(|i| self.catalog.name(i))
            .collect()
    }

    /// If this is `±v` for a single variable `v`, returns `(catalog index, is_negative)`.
    pub fn as_signed_variable(&self) -> Option<(usize, bool)> {
        match self.terms.as_slice() {
            [(m, c)] if m.degree() == 1 => {
                let neg = if c.is_one() {
                    false
                } else if (-c.clone()).is_one() {
                    true
                } else {
                    return None;
                };
                Some((m.0.iter().position(|&e| e == 1)?, neg))
            }
            _ => None,
        }
    }

    /// Coefficient of the monomial given as `(variable, exponent)` pairs.
    pub fn coefficient(&self, factors: &[(&str, u32)]) -> C {
        let mut exps = vec![0u32; self.catalog.len()];
        for &(name, e) in factors {
            match self.catalog.index_of(name) {
                Some(i) => exps[i] += e,
                None if e == 0 => {}
                None => return C::zero(),
            }
        }
        let key = Monomial(exps);
        self.terms
            .binary_search_by(|(m, _)| key.cmp(m))
            .map(|i| self.terms[i].1.clone())
            .unwrap_or_else(|_| C::zero())
    }

    /// Same polynomial expressed over `target`, which must contain every
    /// variable that actually occurs.
    pub fn with_catalog(&self, target: &Catalog) -> Self {
        if self.catalog.same(target) {
            return Polynomial {
                catalog: target.clone(),
                terms: self.terms.clone(),
            };
        }
        let map: Vec<Option<usize>> = self.catalog.names().iter().map(|n| target.index_of(n)).collect();
        let mut terms: Vec<(Monomial, C)> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = vec![0u32; target.len()];
                for (i, &x) in m.0.iter().enumerate() {
                    if x > 0 {
                        let j = map[i].expect("target catalog is missing a variable in use");
                        e[j] = x;
                    }
                }
                (Monomial(e), c.clone())
            })
            .collect();
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        Polynomial {
            catalog: target.clone(),
            terms,
        }
    }

    /// Replaces the catalog names position by position (same length).
    /// Constants over the empty catalog are returned unchanged.
    pub fn renamed(&self, names: &Catalog) -> Self {
        if self.catalog.is_empty() {
            return self.clone();
        }
        assert_eq!(names.len(), self.catalog.len(), "renaming must keep the catalog length");
        Polynomial {
            catalog: names.clone(),
            terms: self.terms.clone(),
        }
    }

    fn aligned<'a>(a: &'a Self, b: &'a Self) -> (Cow<'a, Self>, Cow<'a, Self>) {
        if a.catalog.same(&b.catalog) {
            (Cow::Borrowed(a), Cow::Borrowed(b))
        } else if b.is_constant() && b.catalog.is_empty() || a.catalog.contains_all(&b.catalog) {
            (Cow::Borrowed(a), Cow::Owned(b.with_catalog(&a.catalog)))
        } else if b.catalog.contains_all(&a.catalog) {
            (Cow::Owned(a.with_catalog(&b.catalog)), Cow::Borrowed(b))
        } else {
            let u = a.catalog.union(&b.catalog);
            (Cow::Owned(a.with_catalog(&u)), Cow::Owned(b.with_catalog(&u)))
        }
    }

    fn merge(&self, rhs: &Self, negate_rhs: bool) -> Self {
        if rhs.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return if negate_rhs { -rhs } else { rhs.clone() };
        }
        let (a, b) = Self::aligned(self, rhs);
        let mut out = Vec::with_capacity(a.terms.len() + b.terms.len());
        let (mut i, mut j) = (0, 0);
        let take_b = |c: &C| if negate_rhs { -c.clone() } else { c.clone() };
        while i < a.terms.len() && j < b.terms.len() {
            let (ma, ca) = &a.terms[i];
            let (mb, cb) = &b.terms[j];
            match ma.cmp(mb) {
                std::cmp::Ordering::Greater => {
                    out.push((ma.clone(), ca.clone()));
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    out.push((mb.clone(), take_b(cb)));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let mut c = ca.clone();
                    if negate_rhs {
                        c.sub_assign_ref(cb);
                    } else {
                        c.add_assign_ref(cb);
                    }
                    if !c.is_zero() {
                        out.push((ma.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a.terms[i..].iter().cloned());
        out.extend(b.terms[j..].iter().map(|(m, c)| (m.clone(), take_b(c))));
        Polynomial {
            catalog: a.catalog.clone(),
            terms: out,
        }
    }

    /// Product with the single term `c·m` (`m` over this catalog). Term
    /// order is preserved, so no re-sorting is needed.
    fn mul_term(&self, m: &Monomial, c: &C) -> Self {
        let terms = self
            .terms
            .iter()
            .filter_map(|(mm, cc)| {
                let prod = cc.mul_ref(c);
                (!prod.is_zero()).then(|| (mm.mul(m), prod))
            })
            .collect();
        Polynomial {
            catalog: self.catalog.clone(),
            terms,
        }
    }

    fn product(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let (a, b) = Self::aligned(self, rhs);
        if b.terms.len() == 1 {
            let (m, c) = &b.terms[0];
            return a.mul_term(m, c);
        }
        if a.terms.len() == 1 {
            let (m, c) = &a.terms[0];
            return b.mul_term(m, c);
        }
        let mut acc: HashMap<Monomial, C> = HashMap::with_capacity(a.terms.len() * b.terms.len());
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                let prod = ca.mul_ref(cb);
                match acc.entry(ma.mul(mb)) {
                    std::collections::hash_map::Entry::Occupied(mut e) => e.get_mut().add_assign_ref(&prod),
                    std::collections::hash_map::Entry::Vacant(e) => {
                        e.insert(prod);
                    }
                }
            }
        }
        Self::from_map(a.catalog.clone(), acc)
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        self.mul_term(&Monomial::one(self.catalog.len()), c)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Self::constant(C::one());
        for _ in 0..e {
            out = out.product(self);
        }
        out
    }

    /// Exact division; `None` if `rhs` is zero or does not divide `self`.
    pub fn div_exact(&self, rhs: &Self) -> Option<Self> {
        if rhs.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let (a, b) = Self::aligned(self, rhs);
        if b.terms.len() == 1 {
            let (bm, bc) = &b.terms[0];
            let terms = a
                .terms
                .iter()
                .map(|(m, c)| Some((m.div(bm)?, c.div_exact(bc)?)))
                .collect::<Option<Vec<_>>>()?;
            return Some(Polynomial {
                catalog: a.catalog.clone(),
                terms,
            });
        }
        let (lead_m, lead_c) = &b.terms[0];
        let mut rem: BTreeMap<Monomial, C> = a.terms.iter().cloned().collect();
        let mut quotient = Vec::new();
        while let Some((m, c)) = rem.pop_last() {
            let qm = m.div(lead_m)?;
            let qc = c.div_exact(lead_c)?;
            for (bm, bc) in &b.terms[1..] {
                let key = qm.mul(bm);
                let delta = qc.mul_ref(bc);
                match rem.get_mut(&key) {
                    Some(v) => {
                        v.sub_assign_ref(&delta);
                        if v.is_zero() {
                            rem.remove(&key);
                        }
                    }
                    None => {
                        rem.insert(key, -delta);
                    }
                }
            }
            quotient.push((qm, qc));
        }
        Some(Polynomial {
            catalog: a.catalog.clone(),
            terms: quotient,
        })
    }

    /// Exact value at a point; only variables that occur need an assignment.
    pub fn evaluate(&self, point: &BTreeMap<String, Rational>) -> Result<Rational> {
        self.evaluate_with(|name| point.get(name).cloned())
    }

    pub fn evaluate_with(&self, lookup: impl Fn(&str) -> Option<Rational>) -> Result<Rational> {
        let mut used = vec![false; self.catalog.len()];
        for (m, _) in &self.terms {
            for (i, &e) in m.0.iter().enumerate() {
                used[i] |= e > 0;
            }
        }
        let mut values = Vec::with_capacity(self.catalog.len());
        for (name, used) in self.catalog.names().iter().zip(used) {
            if used {
                values.push(lookup(name).ok_or_else(|| Error::MissingAssignment(name.clone()))?);
            } else {
                values.push(Rational::zero());
            }
        }
        Ok(self.evaluate_indexed(&values))
    }

    /// Value at a point given by catalog position.
    pub fn evaluate_indexed(&self, values: &[Rational]) -> Rational {
        if values.iter().all(Rational::is_integer) {
            let ints: Vec<BigInt> = values.iter().map(|v| v.to_integer()).collect();
            return self.evaluate_integers(&ints);
        }
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut term = c.to_rational();
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    term *= num_traits::pow(values[i].clone(), e as usize);
                }
            }
            total += term;
        }
        total
    }

    /// Evaluation at an integer point with cached powers. Rational
    /// coefficients are scaled to a common denominator first.
    fn evaluate_integers(&self, values: &[BigInt]) -> Rational {
        let denominator = self
            .terms
            .iter()
            .fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.to_rational().denom()));
        let mut powers: HashMap<(usize, u32), BigInt> = HashMap::new();
        let mut total = BigInt::zero();
        for (m, c) in &self.terms {
            let c = c.to_rational();
            let mut term = c.numer() * (&denominator / c.denom());
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    let power = powers
                        .entry((i, e))
                        .or_insert_with(|| num_traits::pow(values[i].clone(), e as usize));
                    term *= &*power;
                }
            }
            total += term;
        }
        Rational::new(total, denominator)
    }

    pub fn to_rational_coefficients(&self) -> QPoly {
        Polynomial {
            catalog: self.catalog.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.to_rational())).collect(),
        }
    }

    fn fmt_monomial(&self, m: &Monomial) -> String {
        let factors: Vec<String> =
            m.0.iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| {
                    let name = self.catalog.name(i);
                    if e == 1 {
                        name.to_string()
                    } else {
                        format!("{name}^{e}")
                    }
                })
                .collect();
        factors.join("*")
    }
}

impl<C: Coefficient> PartialEq for Polynomial<C> {
    fn eq(&self, other: &Self) -> bool {
        if self.terms.len() != other.terms.len() {
            return false;
        }
        let (a, b) = Self::aligned(self, other);
        a.terms == b.terms
    }
}

impl<C: Coefficient> fmt::Display for Polynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            let abs = if negative { -c.clone() } else { c.clone() };
            match (k, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{}", self.fmt_monomial(m))?;
            } else {
                write!(f, "{abs}*{}", self.fmt_monomial(m))?;
            }
        }
        Ok(())
    }
}

impl<C: Coefficient> fmt::Debug for Polynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

impl<C: Coefficient> FromStr for Polynomial<C> {
    type Err = Error;

    /// Parses the canonical string format (`"c^4*g*k - c^4*j^2"`). The
    /// catalog is the sorted set of variable names that appear.
    fn from_str(s: &str) -> Result<Self> {
        let fail = |reason: &str| Error::ParsePolynomial {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(fail("empty input"));
        }
        let mut raw_terms: Vec<(bool, &str)> = Vec::new();
        let mut start = 0;
        let mut negative = false;
        let bytes = compact.as_bytes();
        for (i, &ch) in bytes.iter().enumerate() {
            if (ch == b'+' || ch == b'-') && i > 0 && bytes[i - 1] != b'^' {
                raw_terms.push((negative, &compact[start..i]));
                negative = ch == b'-';
                start = i + 1;
            } else if i == 0 && (ch == b'+' || ch == b'-') {
                negative = ch == b'-';
                start = 1;
            }
        }
        raw_terms.push((negative, &compact[start..]));

        let mut parsed: Vec<(bool, C, Vec<(String, u32)>)> = Vec::new();
        let mut names = std::collections::BTreeSet::new();
        for (neg, body) in raw_terms {
            if body.is_empty() {
                return Err(fail("empty term"));
            }
            let mut coeff = C::one();
            let mut factors = Vec::new();
            for factor in body.split('*') {
                if factor.starts_with(|c: char| c.is_ascii_digit()) {
                    let c = C::parse_coefficient(factor).ok_or_else(|| fail("bad coefficient"))?;
                    coeff = coeff * c;
                } else {
                    let (name, e) = match factor.split_once('^') {
                        Some((n, e)) => (n, e.parse::<u32>().map_err(|_| fail("bad exponent"))?),
                        None => (factor, 1),
                    };
                    if name.is_empty() || !name.chars().all(|c| c.is_alphanumeric() || c == '_') {
                        return Err(fail("bad variable name"));
                    }
                    names.insert(name.to_string());
                    factors.push((name.to_string(), e));
                }
            }
            parsed.push((neg, coeff, factors));
        }
        let catalog = Catalog::new(names);
        let terms = parsed.into_iter().map(|(neg, c, factors)| {
            let mut e = vec![0u32; catalog.len()];
            for (name, x) in factors {
                e[catalog.index_of(&name).unwrap()] += x;
            }
            (Monomial(e), if neg { -c } else { c })
        });
        Ok(Polynomial::from_terms(&catalog, terms))
    }
}

impl<C: Coefficient> Add for &Polynomial<C> {
    type Output = Polynomial<C>;
    fn add(self, rhs: Self) -> Polynomial<C> {
        self.merge(rhs, false)
    }
}

impl<C: Coefficient> Sub for &Polynomial<C> {
    type Output = Polynomial<C>;
    fn sub(self, rhs: Self) -> Polynomial<C> {
        self.merge(rhs, true)
    }
}

impl<C: Coefficient> Mul for &Polynomial<C> {
    type Output = Polynomial<C>;
    fn mul(self, rhs: Self) -> Polynomial<C> {
        self.product(rhs)
    }
}

impl<C: Coefficient> Neg for &Polynomial<C> {
    type Output = Polynomial<C>;
    fn neg(self) -> Polynomial<C> {
        Polynomial {
            catalog: self.catalog.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident :: $method:ident),*) => {$(
        impl<C: Coefficient> $tr for Polynomial<C> {
            type Output = Polynomial<C>;
            fn $method(self, rhs: Self) -> Polynomial<C> {
                (&self).$method(&rhs)
            }
        }
    )*};
}

forward_owned!(Add::add, Sub::sub, Mul::mul);

impl<C: Coefficient> Neg for Polynomial<C> {
    type Output = Polynomial<C>;
    fn neg(self) -> Polynomial<C> {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(s: &str) -> ZPoly {
        s.parse().unwrap()
    }

    #[test]
    fn add_cancels() {
        let x = ZPoly::named("x");
        assert!((&x + &(-&x)).is_zero());
        assert_eq!((&x - &x).to_string(), "0");
    }

    #[test]
    fn difference_of_squares() {
        let p = &z("x + y") * &z("x - y");
        assert_eq!(p, z("x^2 - y^2"));
        assert_eq!(p.to_string(), "x^2 - y^2");
    }

    #[test]
    fn product_matches_hand_expansion() {
        let catalog = Catalog::new(["c", "g", "j", "k"]);
        let v = |i| ZPoly::var(&catalog, i);
        let (c, g, j, k) = (v(0), v(1), v(2), v(3));
        let left = &(&g * &k) - &(&j * &j);
        let right = c.pow(4);
        let prod = &left * &right;
        assert_eq!(prod.to_string(), "c^4*g*k - c^4*j^2");
        assert_eq!(prod, z("c^4*g*k - c^4*j^2"));
    }

    #[test]
    fn printing_rules() {
        assert_eq!(z("-3*a^2*b + 1 - b").to_string(), "-3*a^2*b - b + 1");
        let half: QPoly = "1/2*x - 2".parse().unwrap();
        assert_eq!(half.to_string(), "1/2*x - 2");
        assert_eq!(ZPoly::constant(BigInt::from(5)).to_string(), "5");
    }

    #[test]
    fn evaluate_examples() {
        let p = z("c^4*g*k - c^4*j^2");
        let point: BTreeMap<String, Rational> = [("c", 1), ("g", 2), ("k", 3), ("j", 1)]
            .into_iter()
            .map(|(n, v)| (n.to_string(), Rational::from_integer(v.into())))
            .collect();
        assert_eq!(p.evaluate(&point).unwrap(), Rational::from_integer(5.into()));

        let q = z("3*x*y + 7");
        let zeros: BTreeMap<String, Rational> = [("x", 0), ("y", 0)]
            .into_iter()
            .map(|(n, v)| (n.to_string(), Rational::from_integer(v.into())))
            .collect();
        assert_eq!(q.evaluate(&zeros).unwrap(), Rational::from_integer(7.into()));

        let x = ZPoly::named("x");
        let at: BTreeMap<String, Rational> = [("x".to_string(), super::super::rational(7, 3))].into_iter().collect();
        assert_eq!(x.evaluate(&at).unwrap(), super::super::rational(7, 3));
    }

    #[test]
    fn evaluate_missing_variable() {
        let p = z("x*y");
        let point: BTreeMap<String, Rational> = [("x".to_string(), Rational::one())].into_iter().collect();
        assert_eq!(p.evaluate(&point), Err(Error::MissingAssignment("y".into())));
    }

    #[test]
    fn exact_division() {
        let a = z("x^3 - y^3");
        let b = z("x - y");
        assert_eq!(a.div_exact(&b).unwrap(), z("x^2 + x*y + y^2"));
        assert!(z("x^2 + 1").div_exact(&z("x + 1")).is_none());
        assert!(z("x").div_exact(&ZPoly::zero()).is_none());
        assert_eq!(z("6*x^2*y").div_exact(&z("3*x")).unwrap(), z("2*x*y"));
        assert!(z("5*x").div_exact(&z("2")).is_none());
    }

    #[test]
    fn equality_ignores_catalog_layout() {
        let a = z("a + b");
        let b = &ZPoly::named("b") + &ZPoly::named("a");
        assert_eq!(a, b);
        assert_ne!(a, z("a - b"));
    }

    #[test]
    fn coefficient_lookup() {
        let p = z("-b^3*j*n^4 + 2*a");
        assert_eq!(p.coefficient(&[("b", 3), ("j", 1), ("n", 4)]), BigInt::from(-1));
        assert_eq!(p.coefficient(&[("a", 1)]), BigInt::from(2));
        assert_eq!(p.coefficient(&[("q", 1)]), BigInt::zero());
    }

    #[test]
    fn signed_variable_detection() {
        assert_eq!(z("-b").as_signed_variable(), Some((0, true)));
        assert_eq!(z("b").as_signed_variable(), Some((0, false)));
        assert_eq!(z("2*b").as_signed_variable(), None);
        assert_eq!(z("b^2").as_signed_variable(), None);
    }
}
