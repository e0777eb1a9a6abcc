use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::poly::{is_param, var_name, Var};
use crate::ratfunc::RatFunc;
use crate::rational::fmt_rational;

/// Total order on slot functions. Simpler functions first; for constants,
/// smaller denominators, then smaller magnitudes, then positive before negative.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SlotKey {
    den_deg: u32,
    num_deg: u32,
    terms: usize,
    const_den: BigInt,
    const_num: BigInt,
    negative: bool,
    text: String,
}

impl SlotKey {
    pub fn of(f: &RatFunc) -> SlotKey {
        let (const_den, const_num, negative) = match f.constant_value() {
            Some(c) => (c.denom().clone(), c.numer().abs(), c.is_negative()),
            None => (BigInt::zero(), BigInt::zero(), false),
        };
        SlotKey {
            den_deg: f.den().total_degree(),
            num_deg: f.num().total_degree(),
            terms: f.num().num_terms() + f.den().num_terms(),
            const_den,
            const_num,
            negative,
            text: f.to_string(),
        }
    }
}

/// A parametric locus in `□^n` in graph normal form. The parameters are the
/// variables `p0 .. p(d-1)`.
#[derive(Clone, Debug)]
pub struct Locus {
    slots: Vec<RatFunc>,
    nparams: usize,
    key: Vec<SlotKey>,
}

impl Locus {
    pub fn new(slots: Vec<RatFunc>) -> Locus {
        let nparams = count_params(&slots);
        let key = slots.iter().map(SlotKey::of).collect();
        Locus {
            slots,
            nparams,
            key,
        }
    }

    pub fn slots(&self) -> &[RatFunc] {
        &self.slots
    }

    pub fn arity(&self) -> usize {
        self.slots.len()
    }

    pub fn nparams(&self) -> usize {
        self.nparams
    }

    /// Adams weight `p = n - d`.
    pub fn weight(&self) -> usize {
        self.slots.len() - self.nparams
    }

    /// Cohomological degree `2p - n`.
    pub fn degree(&self) -> i64 {
        2 * self.weight() as i64 - self.slots.len() as i64
    }

    pub fn is_point(&self) -> bool {
        self.nparams == 0
    }

    pub fn key(&self) -> &[SlotKey] {
        &self.key
    }

    /// DSL form: `(pt 2 3)` for point classes, `(locus "p0" "1-p0" ...)` otherwise.
    pub fn render(&self) -> String {
        if self.nparams == 0 {
            let parts: Vec<String> = self.slots.iter().map(render_point).collect();
            return format!("(pt {})", parts.join(" "));
        }
        let parts: Vec<String> = self
            .slots
            .iter()
            .map(|f| format!("\"{}\"", f.render(&var_name)))
            .collect();
        format!("(locus {})", parts.join(" "))
    }

    /// Compact form used inside bar words.
    pub fn render_compact(&self) -> String {
        if self.nparams == 0 {
            let parts: Vec<String> = self.slots.iter().map(render_point).collect();
            return parts.join(",");
        }
        self.render()
    }
}

fn render_point(f: &RatFunc) -> String {
    match f.constant_value() {
        Some(c) => fmt_rational(&c),
        None => f.to_string(),
    }
}

pub fn count_params(slots: &[RatFunc]) -> usize {
    let mut vars: Vec<Var> = slots
        .iter()
        .flat_map(|f| f.vars())
        .filter(|&v| is_param(v))
        .collect();
    vars.sort_unstable();
    vars.dedup();
    vars.len()
}

impl PartialEq for Locus {
    fn eq(&self, other: &Self) -> bool {
        self.key == other.key
    }
}

impl Eq for Locus {}

impl std::hash::Hash for Locus {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.key.hash(state);
    }
}

impl PartialOrd for Locus {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Locus {
    fn cmp(&self, other: &Self) -> Ordering {
        self.slots
            .len()
            .cmp(&other.slots.len())
            .then_with(|| self.key.cmp(&other.key))
    }
}

impl fmt::Display for Locus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}
