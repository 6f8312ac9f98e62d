use std::sync::Arc;

use super::field::PrimeField;
use crate::error::{Error, Result};

/// Default cap on any single exponent.
pub const DEFAULT_MAX_EXPONENT: u32 = i32::MAX as u32;

/// A polynomial ring `F_p[x_1, ..., x_s]` with named variables in declaration order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RingSpec {
    field: PrimeField,
    variables: Vec<String>,
    max_exponent: u32,
}

/// Rings are shared between every polynomial that lives in them.
pub type Ring = Arc<RingSpec>;

impl RingSpec {
    pub fn new<S: AsRef<str>>(p: u64, variables: &[S]) -> Result<Ring> {
        Self::with_max_exponent(p, variables, DEFAULT_MAX_EXPONENT)
    }

    pub fn with_max_exponent<S: AsRef<str>>(
        p: u64,
        variables: &[S],
        max_exponent: u32,
    ) -> Result<Ring> {
        let field = PrimeField::new(p)?;
        let variables: Vec<String> = variables.iter().map(|v| v.as_ref().to_owned()).collect();
        for (i, v) in variables.iter().enumerate() {
            if !is_identifier(v) {
                return Err(Error::InvalidVariables(format!("`{v}` is not an identifier")));
            }
            if variables[..i].contains(v) {
                return Err(Error::InvalidVariables(format!("`{v}` is declared twice")));
            }
        }
        Ok(Arc::new(RingSpec {
            field,
            variables,
            max_exponent,
        }))
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
    }

    #[inline]
    pub fn characteristic(&self) -> u32 {
        self.field.characteristic()
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.variables.len()
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn variable_index(&self, name: &str) -> Option<usize> {
        self.variables.iter().position(|v| v == name)
    }

    pub fn max_exponent(&self) -> u32 {
        self.max_exponent
    }

    /// The ring with `extra` appended after the existing variables.
    pub fn extended<S: AsRef<str>>(&self, extra: &[S]) -> Result<Ring> {
        let mut vars = self.variables.clone();
        vars.extend(extra.iter().map(|s| s.as_ref().to_owned()));
        Self::with_max_exponent(self.field.characteristic() as u64, &vars, self.max_exponent)
    }

    /// A variable name not already used in this ring, derived from `stem`.
    pub fn fresh_name(&self, stem: &str) -> String {
        let mut name = stem.to_owned();
        let mut k = 0;
        while self.variable_index(&name).is_some() {
            k += 1;
            name = format!("{stem}{k}");
        }
        name
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Two handles denote the same ring.
#[inline]
pub fn same_ring(a: &Ring, b: &Ring) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}
