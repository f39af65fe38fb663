use std::collections::HashSet;
use std::sync::Arc;

use crate::error::{AlgebraError, Result};
use crate::field::Field;
use crate::monomial::MonomialOrder;

/// Variables, coefficient field and active monomial order shared by a
/// family of polynomials.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolyRing<F: Field> {
    field: F,
    vars: Vec<String>,
    order: MonomialOrder,
}

pub type Ring<F> = Arc<PolyRing<F>>;

impl<F: Field> PolyRing<F> {
    pub fn new<S: AsRef<str>>(field: F, vars: &[S], order: MonomialOrder) -> Result<Ring<F>> {
        let vars: Vec<String> = vars.iter().map(|v| v.as_ref().to_string()).collect();
        let mut seen = HashSet::new();
        for v in &vars {
            let valid = v.chars().next().is_some_and(|c| c.is_ascii_alphabetic())
                && v.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !valid {
                return Err(AlgebraError::Invalid(format!("invalid variable name `{v}`")));
            }
            if !seen.insert(v.as_str()) {
                return Err(AlgebraError::DuplicateVariable(v.clone()));
            }
        }
        Ok(Arc::new(PolyRing { field, vars, order }))
    }

    /// Ring with variables `prefix0 .. prefix{n-1}`.
    pub fn with_prefix(field: F, prefix: &str, n: usize, order: MonomialOrder) -> Ring<F> {
        let vars: Vec<String> = (0..n).map(|i| format!("{prefix}{i}")).collect();
        PolyRing::new(field, &vars, order).expect("generated names are valid")
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// Same variables and field under another order.
    pub fn with_order(&self, order: MonomialOrder) -> Ring<F> {
        Arc::new(PolyRing {
            field: self.field.clone(),
            vars: self.vars.clone(),
            order,
        })
    }

    /// New ring whose variables are `extra` followed by the current ones.
    pub fn prepend_vars<S: AsRef<str>>(&self, extra: &[S], order: MonomialOrder) -> Result<Ring<F>> {
        let mut vars: Vec<String> = extra.iter().map(|v| v.as_ref().to_string()).collect();
        vars.extend(self.vars.iter().cloned());
        PolyRing::new(self.field.clone(), &vars, order)
    }

    /// Ring on the variables `range` (in order).
    pub fn subring(&self, range: std::ops::Range<usize>, order: MonomialOrder) -> Ring<F> {
        Arc::new(PolyRing {
            field: self.field.clone(),
            vars: self.vars[range].to_vec(),
            order,
        })
    }

    /// A fresh variable name not clashing with existing ones.
    pub fn fresh_name(&self, base: &str) -> String {
        let mut name = base.to_string();
        let mut i = 0;
        while self.var_index(&name).is_some() {
            name = format!("{base}{i}");
            i += 1;
        }
        name
    }
}

pub(crate) fn same_ring<F: Field>(a: &Ring<F>, b: &Ring<F>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}
