//! Line-oriented structured output.
//!
//! Each line is `key: value`, where a value is a scalar, a list `[a, b]`,
//! or a list of lists `[[a, b], [c]]`. Domain elements are written in the
//! element grammar, which never produces `[`, `]`, `,` or newlines, so the
//! format needs no quoting. Rendering a parsed record reproduces the input
//! byte for byte.

use std::fmt;

use crate::error::{Error, Result};
use crate::multipoly::{ExponentVector, Polynomial, Term};
use crate::nullstellensatz::{
    verify_lambda_family, Certificate, EvaluationSet, GridSpec, LambdaFamily, Provenance,
};
use crate::ring::Domain;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Value {
    Scalar(String),
    List(Vec<String>),
    Nested(Vec<Vec<String>>),
}

impl Value {
    pub fn scalar(v: impl ToString) -> Self {
        Value::Scalar(v.to_string())
    }

    pub fn list<T: ToString>(items: &[T]) -> Self {
        Value::List(items.iter().map(ToString::to_string).collect())
    }

    pub fn nested<T: ToString>(rows: &[Vec<T>]) -> Self {
        Value::Nested(
            rows.iter()
                .map(|r| r.iter().map(ToString::to_string).collect())
                .collect(),
        )
    }

    fn parse(text: &str) -> Value {
        if let Some(inner) = text.strip_prefix("[[").and_then(|t| t.strip_suffix("]]")) {
            return Value::Nested(inner.split("], [").map(split_items).collect());
        }
        if let Some(inner) = text.strip_prefix('[').and_then(|t| t.strip_suffix(']')) {
            return Value::List(split_items(inner));
        }
        Value::Scalar(text.to_string())
    }
}

fn split_items(text: &str) -> Vec<String> {
    if text.is_empty() {
        Vec::new()
    } else {
        text.split(", ").map(str::to_string).collect()
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Scalar(s) => write!(f, "{s}"),
            Value::List(items) => write!(f, "[{}]", items.join(", ")),
            Value::Nested(rows) => {
                write!(f, "[")?;
                for (k, row) in rows.iter().enumerate() {
                    if k > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "[{}]", row.join(", "))?;
                }
                write!(f, "]")
            }
        }
    }
}

/// Ordered key/value lines.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Record {
    fields: Vec<(String, Value)>,
}

impl Record {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, key: &str, value: Value) -> &mut Self {
        self.fields.push((key.to_string(), value));
        self
    }

    pub fn fields(&self) -> &[(String, Value)] {
        &self.fields
    }

    pub fn get(&self, key: &str) -> Option<&Value> {
        self.fields.iter().find(|(k, _)| k == key).map(|(_, v)| v)
    }

    pub fn render(&self) -> String {
        self.fields
            .iter()
            .map(|(k, v)| format!("{k}: {v}\n"))
            .collect()
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut fields = Vec::new();
        for (n, line) in text.lines().enumerate() {
            let (key, value) = line
                .split_once(": ")
                .ok_or_else(|| Error::Record(format!("line {} has no `key: value` form", n + 1)))?;
            fields.push((key.to_string(), Value::parse(value)));
        }
        Ok(Self { fields })
    }

    fn scalar(&self, key: &str) -> Result<&str> {
        match self.get(key) {
            Some(Value::Scalar(s)) => Ok(s),
            Some(_) => Err(Error::Record(format!("`{key}` should be a scalar"))),
            None => Err(Error::Record(format!("missing `{key}`"))),
        }
    }

    fn list(&self, key: &str) -> Result<&[String]> {
        match self.get(key) {
            Some(Value::List(items)) => Ok(items),
            Some(_) => Err(Error::Record(format!("`{key}` should be a list"))),
            None => Err(Error::Record(format!("missing `{key}`"))),
        }
    }

    fn nested(&self, key: &str) -> Result<Vec<Vec<String>>> {
        match self.get(key) {
            Some(Value::Nested(rows)) => Ok(rows.clone()),
            Some(Value::List(items)) if items.is_empty() => Ok(Vec::new()),
            Some(_) => Err(Error::Record(format!("`{key}` should be a list of lists"))),
            None => Err(Error::Record(format!("missing `{key}`"))),
        }
    }

    fn expect(&self, key: &str, expected: &str) -> Result<()> {
        let found = self.scalar(key)?;
        if found != expected {
            return Err(Error::Record(format!("`{key}` is `{found}`, expected `{expected}`")));
        }
        Ok(())
    }
}

fn elements<D: Domain>(items: &[String]) -> Result<Vec<D>> {
    items
        .iter()
        .map(|s| s.parse::<D>().map_err(Error::from))
        .collect()
}

fn exponents(items: &[String]) -> Result<ExponentVector> {
    items
        .iter()
        .map(|s| {
            s.parse::<u32>()
                .map_err(|_| Error::Record(format!("bad exponent `{s}`")))
        })
        .collect::<Result<Vec<_>>>()
        .map(ExponentVector::new)
}

impl<D: Domain> LambdaFamily<D> {
    pub fn to_record(&self) -> Record {
        let report = verify_lambda_family(self);
        let sums: Vec<D> = report.checks.iter().map(|c| c.actual.clone()).collect();
        let mut r = Record::new();
        r.push("kind", Value::scalar("lambda"))
            .push("domain", Value::scalar(D::NAME))
            .push("set", Value::list(self.set().points()))
            .push("lambda_provenance", Value::scalar(self.provenance().label()))
            .push("lambdas", Value::list(self.coefficients()))
            .push("top_value", Value::scalar(self.top_value()))
            .push("power_sums", Value::list(&sums))
            .push("verified", Value::scalar(report.passed()));
        r
    }
}

impl<D: Domain> Certificate<D> {
    pub fn to_record(&self) -> Record {
        let sets: Vec<Vec<D>> = self
            .grid
            .axes()
            .iter()
            .map(|s| s.points().to_vec())
            .collect();
        let mut r = Record::new();
        r.push("kind", Value::scalar("certificate"))
            .push("domain", Value::scalar(D::NAME))
            .push("polynomial", Value::scalar(&self.polynomial))
            .push("sets", Value::nested(&sets))
            .push("term_coefficient", Value::scalar(&self.term.coefficient))
            .push("term_exponents", Value::list(self.term.exponents.exponents()))
            .push("lambda_provenance", Value::scalar(self.provenance.label()))
            .push("lambdas", Value::nested(&self.lambdas))
            .push("top_values", Value::list(&self.top_values))
            .push("phi", Value::scalar(&self.phi))
            .push(
                "phi_grid",
                Value::scalar(self.phi_grid.as_ref().map_or("skipped".to_string(), D::to_string)),
            )
            .push("predicted", Value::scalar(&self.predicted))
            .push("grid_size", Value::scalar(self.grid_size))
            .push("witness", Value::list(&self.witness))
            .push("witness_value", Value::scalar(&self.witness_value))
            .push("certified", Value::scalar(true));
        r
    }

    /// Reads back a record produced by [`to_record`](Self::to_record).
    pub fn from_record(record: &Record) -> Result<Self> {
        record.expect("kind", "certificate")?;
        record.expect("domain", D::NAME)?;
        record.expect("certified", "true")?;
        let axes = record
            .nested("sets")?
            .iter()
            .map(|row| EvaluationSet::new(elements(row)?))
            .collect::<Result<Vec<_>>>()?;
        let grid = GridSpec::new(axes);
        let polynomial = Polynomial::parse(record.scalar("polynomial")?, grid.arity())?;
        let term = Term::new(
            record.scalar("term_coefficient")?.parse::<D>()?,
            exponents(record.list("term_exponents")?)?,
        );
        let provenance_label = record.scalar("lambda_provenance")?;
        let provenance = Provenance::from_label(provenance_label)
            .ok_or_else(|| Error::Record(format!("unknown provenance `{provenance_label}`")))?;
        let lambdas = record
            .nested("lambdas")?
            .iter()
            .map(|row| elements(row))
            .collect::<Result<Vec<_>>>()?;
        let phi_grid = match record.scalar("phi_grid")? {
            "skipped" => None,
            text => Some(text.parse::<D>()?),
        };
        let grid_size = record
            .scalar("grid_size")?
            .parse::<u128>()
            .map_err(|_| Error::Record("bad `grid_size`".into()))?;
        Ok(Self {
            polynomial,
            grid,
            term,
            lambdas,
            provenance,
            top_values: elements(record.list("top_values")?)?,
            phi: record.scalar("phi")?.parse()?,
            phi_grid,
            predicted: record.scalar("predicted")?.parse()?,
            grid_size,
            witness: elements(record.list("witness")?)?,
            witness_value: record.scalar("witness_value")?.parse()?,
        })
    }
}
