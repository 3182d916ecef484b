use std::path::PathBuf;

use serde_json::{json, Map, Value};

use dmv_core::exactnum::format_rational;
use dmv_core::io::{polynomial_to_json, rational_function_to_json};
use dmv_core::{Error, Rational, RationalFunction, SparsePolynomial, VariableTable};

use crate::args::Cli;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Read {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Input { path: PathBuf, source: Error },
    #[error(transparent)]
    Core(#[from] Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Read { .. } | CliError::Input { .. } => 2,
            CliError::Core(e) if e.is_input_error() => 2,
            CliError::Core(_) => 3,
        }
    }

    fn core(&self) -> Option<&Error> {
        match self {
            CliError::Read { .. } => None,
            CliError::Input { source, .. } => Some(source),
            CliError::Core(e) => Some(e),
        }
    }
}

/// Stable kind name and certificate payload for an error.
fn describe(e: &Error) -> (&'static str, Value) {
    match e {
        Error::Dimension(_) => ("Dimension", Value::Null),
        Error::Parse(_) => ("Parse", Value::Null),
        Error::InvalidInput(_) => ("InvalidInput", Value::Null),
        Error::VariableMismatch => ("VariableMismatch", Value::Null),
        Error::UnknownVariable(v) => ("UnknownVariable", json!({ "variable": v })),
        Error::NotFullDimensional { found, ambient } => (
            "NotFullDimensional",
            json!({ "affine_dim": found, "ambient_dim": ambient }),
        ),
        Error::NotFullDimensionalInHyperplane => ("NotFullDimensionalInHyperplane", Value::Null),
        Error::NotPointed => ("NotPointed", Value::Null),
        Error::OriginNotInterior => ("OriginNotInterior", Value::Null),
        Error::Codegenerate { ray } => ("Codegenerate", json!({ "ray": ray })),
        Error::ZeroSupportValue { ray } => ("ZeroSupportValue", json!({ "ray": ray })),
        Error::NotRegular { ray } => ("NotRegular", json!({ "ray": ray })),
        Error::Pole { factor } => ("Pole", json!({ "factor": factor })),
        Error::DegenerateSubstitution { factor } => {
            ("DegenerateSubstitution", json!({ "factor": factor }))
        }
        Error::SingularCellGeometry(_) => ("SingularCellGeometry", Value::Null),
        Error::NonGenericLifting { attempts } => {
            ("NonGenericLifting", json!({ "attempts": attempts }))
        }
        Error::InvalidTiling(_) => ("InvalidTiling", Value::Null),
        Error::NotSpanningTree(_) => ("NotSpanningTree", Value::Null),
        Error::DimensionTooLarge(d) => ("DimensionTooLarge", json!({ "dim": d })),
    }
}

/// Ordered output fields plus the verification verdict, if any.
#[derive(Default)]
pub struct Report {
    fields: Vec<(String, Value, Option<String>)>,
    pub verified: Option<bool>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn value(&mut self, key: &str, v: Value) -> &mut Self {
        self.fields.push((key.to_string(), v, None));
        self
    }

    pub fn rational(&mut self, key: &str, r: &Rational) -> &mut Self {
        self.value(key, Value::String(format_rational(r)))
    }

    /// Adds `key` as JSON and `key_text` as its sum-of-fractions rendering.
    pub fn function(&mut self, key: &str, f: &RationalFunction, normal: bool) -> &mut Self {
        let text = f.render();
        self.fields.push((
            key.to_string(),
            rational_function_to_json(f, normal),
            Some(text.clone()),
        ));
        self.fields.push((
            format!("{key}_text"),
            Value::String(text),
            Some(String::new()),
        ));
        self
    }

    pub fn polynomial(
        &mut self,
        key: &str,
        p: &SparsePolynomial,
        vars: &VariableTable,
    ) -> &mut Self {
        let text = p.render(vars);
        self.fields.push((
            key.to_string(),
            polynomial_to_json(p, vars),
            Some(text.clone()),
        ));
        self.fields.push((
            format!("{key}_text"),
            Value::String(text),
            Some(String::new()),
        ));
        self
    }

    /// Records a check; the overall verdict is the conjunction.
    pub fn check(&mut self, key: &str, ok: bool) -> &mut Self {
        self.verified = Some(self.verified.unwrap_or(true) && ok);
        self.value(key, Value::Bool(ok))
    }

    pub fn from_error(e: &CliError) -> Self {
        let mut err = Map::new();
        let (kind, certificate) = match e.core() {
            Some(core) => describe(core),
            None => ("Io", Value::Null),
        };
        err.insert("kind".into(), kind.into());
        err.insert("message".into(), e.to_string().into());
        if !certificate.is_null() {
            err.insert("certificate".into(), certificate);
        }
        let mut r = Report::new();
        r.value("error", Value::Object(err));
        r
    }

    pub fn render(&self, cli: &Cli, status: u8) -> String {
        if cli.global.pretty {
            return self.render_text();
        }
        let mut out = Map::new();
        for (k, v, _) in &self.fields {
            out.insert(k.clone(), v.clone());
        }
        if let Some(ok) = self.verified {
            out.insert("verified".into(), ok.into());
        }
        let mut meta = Map::new();
        meta.insert("command".into(), cli.command.name().into());
        meta.insert("seed".into(), cli.global.seed.into());
        meta.insert("status".into(), status.into());
        if let Some(t) = cli.global.threads {
            meta.insert("threads".into(), t.into());
        }
        out.insert("meta".into(), Value::Object(meta));
        Value::Object(out).to_string()
    }

    fn render_text(&self) -> String {
        let mut lines = Vec::new();
        for (k, v, text) in &self.fields {
            match text {
                Some(t) if t.is_empty() => {}
                Some(t) => lines.push(format!("{k}: {t}")),
                None => match v {
                    Value::String(s) => lines.push(format!("{k}: {s}")),
                    other => lines.push(format!("{k}: {other}")),
                },
            }
        }
        if let Some(ok) = self.verified {
            lines.push(format!("verified: {ok}"));
        }
        lines.join("\n")
    }
}
