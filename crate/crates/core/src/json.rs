//! JSON documents for matrices, specs, verdicts and reports.
//!
//! Scalars are written as string tokens (`"3/4"`, `"2-1i"`, `"11"`); plain
//! JSON integers are accepted on input. Matrix documents carry the field tag
//! and one of three bodies:
//!
//! ```json
//! {"field": "q", "dense": [["1", "2"], ["3", "4"]]}
//! {"field": "gf:13", "toeplitz": {"m": 2, "n": 2, "coords": ["1", "2", "3"]}}
//! {"field": "q", "hankel": {"m": 2, "n": 2, "coords": ["1", "2", "3"]}}
//! ```
//!
//! Toeplitz coordinates run from the bottom-left corner to the top-right one.

use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use crate::classifier::{
    is_determinant_preserver, is_strong_preserver, regime, DeterminantReport, PreserverVerdict, Regime,
};
use crate::error::{Error, Result};
use crate::generators::{GeneratorSpec, PreserverForm};
use crate::moment::{moment_vector, ProjectiveParameter, RankOneFactorization};
use crate::oracle::{Census, Disagreement, OracleReport};
use crate::scalar::{expect_descriptor, Field, FieldDescriptor};
use crate::structmat::{DenseMatrix, HankelMatrix, ToeplitzMatrix};

/// A scalar token as it appears in a document.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Token {
    Text(String),
    Int(i64),
    UInt(u64),
}

impl Token {
    pub fn of<F: Field>(x: &F) -> Self {
        Self::Text(x.to_token())
    }

    pub fn text(&self) -> String {
        match self {
            Self::Text(s) => s.clone(),
            Self::Int(v) => v.to_string(),
            Self::UInt(v) => v.to_string(),
        }
    }

    pub fn parse<F: Field>(&self) -> Result<F> {
        F::parse_token(&self.text())
    }

    pub fn parse_point<F: Field>(&self) -> Result<ProjectiveParameter<F>> {
        ProjectiveParameter::parse_token(&self.text())
    }
}

fn tokens<F: Field>(xs: &[F]) -> Vec<Token> {
    xs.iter().map(Token::of).collect()
}

fn parse_all<F: Field>(ts: &[Token]) -> Result<Vec<F>> {
    ts.iter().map(Token::parse).collect()
}

fn json_error(e: serde_json::Error) -> Error {
    Error::Parse {
        what: "JSON document",
        token: e.to_string(),
    }
}

pub fn from_str<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(json_error)
}

pub fn from_value<T: for<'de> Deserialize<'de>>(value: Value) -> Result<T> {
    serde_json::from_value(value).map_err(json_error)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructuredBody {
    pub m: usize,
    pub n: usize,
    pub coords: Vec<Token>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MatrixBody {
    Dense(Vec<Vec<Token>>),
    Toeplitz(StructuredBody),
    Hankel(StructuredBody),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixDoc {
    pub field: FieldDescriptor,
    #[serde(flatten)]
    pub body: MatrixBody,
}

impl MatrixDoc {
    pub fn from_dense<F: Field>(a: &DenseMatrix<F>) -> Self {
        Self {
            field: F::descriptor(),
            body: MatrixBody::Dense((0..a.rows()).map(|i| tokens(a.row(i))).collect()),
        }
    }

    pub fn from_toeplitz<F: Field>(a: &ToeplitzMatrix<F>) -> Self {
        Self {
            field: F::descriptor(),
            body: MatrixBody::Toeplitz(StructuredBody {
                m: a.rows(),
                n: a.cols(),
                coords: tokens(a.coords()),
            }),
        }
    }

    pub fn from_hankel<F: Field>(a: &HankelMatrix<F>) -> Self {
        Self {
            field: F::descriptor(),
            body: MatrixBody::Hankel(StructuredBody {
                m: a.rows(),
                n: a.cols(),
                coords: tokens(a.coords()),
            }),
        }
    }

    pub fn to_dense<F: Field>(&self) -> Result<DenseMatrix<F>> {
        expect_descriptor::<F>(self.field)?;
        match &self.body {
            MatrixBody::Dense(rows) => DenseMatrix::from_rows(rows.iter().map(|r| parse_all(r)).collect::<Result<_>>()?),
            MatrixBody::Toeplitz(b) => Ok(ToeplitzMatrix::from_coords(b.m, b.n, parse_all(&b.coords)?)?.dense()),
            MatrixBody::Hankel(b) => Ok(HankelMatrix::from_coords(b.m, b.n, parse_all(&b.coords)?)?.dense()),
        }
    }

    /// A Toeplitz matrix from a `toeplitz` body or a dense Toeplitz body.
    pub fn to_toeplitz<F: Field>(&self) -> Result<ToeplitzMatrix<F>> {
        expect_descriptor::<F>(self.field)?;
        match &self.body {
            MatrixBody::Toeplitz(b) => ToeplitzMatrix::from_coords(b.m, b.n, parse_all(&b.coords)?),
            MatrixBody::Dense(_) => ToeplitzMatrix::from_dense(&self.to_dense()?),
            MatrixBody::Hankel(_) => Err(Error::NotToeplitz),
        }
    }

    pub fn to_hankel<F: Field>(&self) -> Result<HankelMatrix<F>> {
        expect_descriptor::<F>(self.field)?;
        match &self.body {
            MatrixBody::Hankel(b) => HankelMatrix::from_coords(b.m, b.n, parse_all(&b.coords)?),
            MatrixBody::Dense(_) => HankelMatrix::from_dense(&self.to_dense()?),
            MatrixBody::Toeplitz(_) => Err(Error::NotHankel),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<FieldDescriptor>,
    pub form: String,
    pub gamma: Token,
    pub r: Token,
    pub alpha: Token,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta: Option<Token>,
}

impl SpecDoc {
    pub fn from_spec<F: Field>(spec: &GeneratorSpec<F>) -> Self {
        Self {
            field: Some(F::descriptor()),
            form: spec.form.tag().to_string(),
            gamma: Token::of(&spec.gamma),
            r: Token::of(&spec.r),
            alpha: Token::of(&spec.alpha),
            beta: spec.beta.as_ref().map(Token::of),
        }
    }

    pub fn to_spec<F: Field>(&self) -> Result<GeneratorSpec<F>> {
        if let Some(field) = self.field {
            expect_descriptor::<F>(field)?;
        }
        let spec = GeneratorSpec {
            form: self.form.parse::<PreserverForm>()?,
            gamma: self.gamma.parse()?,
            r: self.r.parse()?,
            alpha: self.alpha.parse()?,
            beta: self.beta.as_ref().map(Token::parse).transpose()?,
        };
        spec.validate()?;
        Ok(spec)
    }
}

/// Read a generator spec from either a spec document or a verdict document
/// with a canonical kind.
pub fn spec_from_value<F: Field>(value: &Value) -> Result<GeneratorSpec<F>> {
    let Some(obj) = value.as_object() else {
        return Err(Error::Parse {
            what: "spec document",
            token: value.to_string(),
        });
    };
    if !obj.contains_key("kind") {
        return from_value::<SpecDoc>(value.clone())?.to_spec();
    }
    let verdict: VerdictDoc = from_value(value.clone())?;
    let kind = verdict.kind.as_str();
    if !matches!(kind, "v" | "vf" | "w") {
        return Err(Error::NotCanonical);
    }
    let mut params = verdict.params.clone();
    params.insert("form".into(), Value::String(kind.to_string()));
    params.insert("field".into(), Value::String(verdict.field.tag()));
    from_value::<SpecDoc>(Value::Object(params))?.to_spec()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerdictDoc {
    pub field: FieldDescriptor,
    pub ell: usize,
    pub preserver: bool,
    pub kind: String,
    pub params: Map<String, Value>,
    pub witness: Option<Token>,
    pub det_preserver: Option<bool>,
    pub strong: Option<bool>,
    pub regime: String,
}

fn point_token<F: Field>(p: &ProjectiveParameter<F>) -> Token {
    Token::Text(p.to_token())
}

impl VerdictDoc {
    /// Document for a verdict on `L`; the determinant and strong-preserver
    /// refinements are evaluated here.
    pub fn new<F: Field>(verdict: &PreserverVerdict<F>, l: &DenseMatrix<F>) -> Result<Self> {
        let ell = l.rows();
        let mut params = Map::new();
        match verdict {
            PreserverVerdict::Canonical { spec } => {
                if let Value::Object(obj) = serde_json::to_value(SpecDoc::from_spec(spec)).map_err(json_error)? {
                    params = obj;
                }
                params.remove("field");
                params.remove("form");
            }
            PreserverVerdict::RankOneFunctional { h, c } => {
                params.insert("eta".into(), json!(point_token(h.parameter())));
                params.insert("h".into(), json!(tokens(h.entries())));
                params.insert("c".into(), json!(tokens(c)));
            }
            PreserverVerdict::NotPreserver { .. } => {}
        }
        let det_preserver = match verdict {
            PreserverVerdict::Canonical { .. } if ell % 2 == 1 => Some(is_determinant_preserver(verdict, (ell + 1) / 2)?.0),
            _ => None,
        };
        let strong = verdict.is_preserver().then(|| is_strong_preserver(l));
        Ok(Self {
            field: F::descriptor(),
            ell,
            preserver: verdict.is_preserver(),
            kind: verdict.kind().tag().to_string(),
            params,
            witness: verdict.witness().map(point_token),
            det_preserver,
            strong,
            regime: regime::<F>(ell).tag().to_string(),
        })
    }

    /// The verdict this document describes.
    pub fn to_verdict<F: Field>(&self) -> Result<PreserverVerdict<F>> {
        expect_descriptor::<F>(self.field)?;
        let bad = || Error::Parse {
            what: "verdict document",
            token: self.kind.clone(),
        };
        match self.kind.as_str() {
            "none" => Ok(PreserverVerdict::NotPreserver {
                witness: self.witness.as_ref().map(Token::parse_point).transpose()?,
            }),
            "v" | "vf" | "w" => {
                let mut params = self.params.clone();
                params.insert("form".into(), Value::String(self.kind.clone()));
                let spec = from_value::<SpecDoc>(Value::Object(params))?.to_spec()?;
                Ok(PreserverVerdict::Canonical { spec })
            }
            "rank-one-functional" => {
                let get = |k: &str| self.params.get(k).cloned().ok_or_else(bad);
                let eta: Token = from_value(get("eta")?)?;
                let c: Vec<Token> = from_value(get("c")?)?;
                let h = moment_vector(eta.parse_point()?, F::one(), self.ell)?;
                Ok(PreserverVerdict::RankOneFunctional { h, c: parse_all(&c)? })
            }
            _ => Err(bad()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorDoc {
    pub field: FieldDescriptor,
    pub rank_one: bool,
    pub mu: Option<Token>,
    pub xi: Option<Token>,
}

impl FactorDoc {
    pub fn new<F: Field>(f: Option<&RankOneFactorization<F>>) -> Self {
        Self {
            field: F::descriptor(),
            rank_one: f.is_some(),
            mu: f.map(|f| Token::of(&f.scale)),
            xi: f.map(|f| point_token(&f.parameter)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeterminantDoc {
    pub field: FieldDescriptor,
    pub n: usize,
    pub det_preserver: bool,
    pub det_left: Token,
    pub det_right: Token,
    pub product: Token,
    pub gamma_r_factor: Token,
    pub alpha_beta_factor: Option<Token>,
    pub factored_conditions_hold: bool,
}

impl DeterminantDoc {
    pub fn new<F: Field>(n: usize, r: &DeterminantReport<F>) -> Self {
        Self {
            field: F::descriptor(),
            n,
            det_preserver: r.holds,
            det_left: Token::of(&r.det_left),
            det_right: Token::of(&r.det_right),
            product: Token::of(&r.product),
            gamma_r_factor: Token::of(&r.gamma_r_factor),
            alpha_beta_factor: r.alpha_beta_factor.as_ref().map(Token::of),
            factored_conditions_hold: r.factored_conditions_hold,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DisagreementDoc {
    pub matrix: MatrixDoc,
    pub classifier: VerdictDoc,
    pub oracle: bool,
    pub witness: Option<Token>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportDoc {
    pub field: FieldDescriptor,
    pub ell: usize,
    pub mode: String,
    pub tested: u64,
    pub agreements: u64,
    pub disagreements: Vec<DisagreementDoc>,
    pub classifier_accepted: u64,
    pub oracle_accepted: u64,
    pub seed: Option<u64>,
    pub regime: String,
}

impl ReportDoc {
    pub fn new<F: Field>(r: &OracleReport<F>) -> Result<Self> {
        let disagreements = r
            .disagreements
            .iter()
            .map(|d: &Disagreement<F>| {
                Ok(DisagreementDoc {
                    matrix: MatrixDoc::from_dense(&d.matrix),
                    classifier: VerdictDoc::new(&d.classifier, &d.matrix)?,
                    oracle: d.oracle,
                    witness: d.witness.as_ref().map(point_token),
                })
            })
            .collect::<Result<_>>()?;
        Ok(Self {
            field: r.field,
            ell: r.ell,
            mode: r.mode.tag().to_string(),
            tested: r.tested,
            agreements: r.agreements,
            disagreements,
            classifier_accepted: r.classifier_accepted,
            oracle_accepted: r.oracle_accepted,
            seed: r.seed(),
            regime: r.regime.tag().to_string(),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusDoc {
    pub field: FieldDescriptor,
    pub m: usize,
    pub n: usize,
    pub count: usize,
    pub parametric_count: usize,
    pub agree: bool,
    pub regime: String,
}

impl CensusDoc {
    pub fn new<F: Field>(c: &Census<F>) -> Self {
        let ell = c.rows + c.cols - 1;
        Self {
            field: c.field,
            m: c.rows,
            n: c.cols,
            count: c.count(),
            parametric_count: c.by_parameters.len(),
            agree: c.agree,
            regime: regime::<F>(ell).tag().to_string(),
        }
    }
}

impl std::str::FromStr for Regime {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "proven" => Ok(Self::Proven),
            "small-field" => Ok(Self::SmallField),
            _ => Err(Error::Parse {
                what: "regime",
                token: s.to_string(),
            }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classifier::classify;
    use crate::{Gf13, Gf5, Q, QI};

    #[test]
    fn matrix_documents() {
        let doc: MatrixDoc = from_str(r#"{"field": "q", "dense": [["2", 4], [1, "2"]]}"#).unwrap();
        let a = doc.to_toeplitz::<Q>().unwrap();
        assert_eq!(a.coords(), [1, 2, 4].map(Q::from_i64));
        let back: MatrixDoc = from_str(&serde_json::to_string(&MatrixDoc::from_toeplitz(&a)).unwrap()).unwrap();
        assert_eq!(back.to_toeplitz::<Q>().unwrap(), a);
        let doc: MatrixDoc = from_str(r#"{"field": "gf:13", "toeplitz": {"m": 2, "n": 3, "coords": ["1","2","3","4"]}}"#).unwrap();
        assert_eq!(doc.to_dense::<Gf13>().unwrap().shape(), (2, 3));
        assert!(matches!(doc.to_dense::<Gf5>(), Err(Error::FieldMismatch { .. })));
        let doc: MatrixDoc = from_str(r#"{"field": "q", "dense": [["1/0"]]}"#).unwrap();
        assert!(matches!(doc.to_dense::<Q>(), Err(Error::Parse { .. })));
        assert!(from_str::<MatrixDoc>(r#"{"field": "q"}"#).is_err());
        assert!(from_str::<MatrixDoc>(r#"{"field": "z", "dense": []}"#).is_err());
    }

    #[test]
    fn spec_documents() {
        let spec = GeneratorSpec::w_form(QI::i(), QI::from_i64(2), QI::from_i64(0), QI::from_i64(-1));
        let doc = SpecDoc::from_spec(&spec);
        let text = serde_json::to_string(&doc).unwrap();
        assert_eq!(from_str::<SpecDoc>(&text).unwrap().to_spec::<QI>().unwrap(), spec);
        let bad: SpecDoc = from_str(r#"{"form": "w", "gamma": "1", "r": "1", "alpha": "2", "beta": "2"}"#).unwrap();
        assert!(matches!(bad.to_spec::<Q>(), Err(Error::InvalidSpec(_))));
    }

    #[test]
    fn verdict_documents_round_trip() {
        let ls = [
            DenseMatrix::diagonal([1, 2, 4].map(Q::from_i64).to_vec()),
            DenseMatrix::outer(&[1, 0, 0].map(Q::from_i64), &[1, 0, 1].map(Q::from_i64)),
            DenseMatrix::diagonal([1, 1, 0].map(Q::from_i64).to_vec()),
        ];
        for l in ls {
            let v = classify(&l).unwrap();
            let doc = VerdictDoc::new(&v, &l).unwrap();
            let text = serde_json::to_string(&doc).unwrap();
            let back: VerdictDoc = from_str(&text).unwrap();
            assert_eq!(back, doc);
            assert_eq!(back.to_verdict::<Q>().unwrap(), v);
        }
        let l = DenseMatrix::diagonal([1, 2, 4].map(Q::from_i64).to_vec());
        let doc = serde_json::to_value(VerdictDoc::new(&classify(&l).unwrap(), &l).unwrap()).unwrap();
        assert_eq!(doc["kind"], "v");
        assert_eq!(doc["params"], json!({"gamma": "1", "r": "2", "alpha": "0"}));
        assert_eq!(doc["regime"], "proven");
        assert_eq!(spec_from_value::<Q>(&doc).unwrap(), GeneratorSpec::vandermonde(Q::from_i64(1), Q::from_i64(2), Q::from_i64(0)));
    }
}
