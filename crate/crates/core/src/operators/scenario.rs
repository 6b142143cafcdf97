use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::analytic::{CatalogFunction, CatalogName, FunctionHandle, PowerSeries};
use crate::error::{Error, Result};
use crate::radii::ClassSpec;

/// Slack allowed on `sum |gamma_i| <= M` and `sum |lambda_j| <= N`.
pub const BOUND_SLACK: f64 = 1e-12;

/// One factor of an operator: a normalized function, its complex exponent
/// and an optional class claim used by the verifier.
#[derive(Debug, Clone, PartialEq)]
pub struct Term {
    pub function: FunctionHandle,
    pub weight: Complex64,
    pub class: Option<ClassSpec>,
}

impl Term {
    pub fn new(function: FunctionHandle, weight: Complex64) -> Self {
        Self { function, weight, class: None }
    }

    pub fn with_class(mut self, class: ClassSpec) -> Self {
        self.class = Some(class);
        self
    }
}

/// Full input of the operators: derivative factors `(f_i')^{gamma_i}`,
/// quotient factors `(g_j(t)/t)^{lambda_j}` and the bounds `M`, `N`.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    id: String,
    fs: Vec<Term>,
    gs: Vec<Term>,
    m_bound: f64,
    n_bound: f64,
}

impl Scenario {
    pub fn new(fs: Vec<Term>, gs: Vec<Term>, m_bound: f64, n_bound: f64) -> Result<Self> {
        let bad = |msg: String| Err(Error::InvalidScenario(msg));
        if !(m_bound >= 0.0 && m_bound.is_finite()) {
            return bad(format!("M = {m_bound} must be finite and nonnegative"));
        }
        if !(n_bound >= 0.0 && n_bound.is_finite()) {
            return bad(format!("N = {n_bound} must be finite and nonnegative"));
        }
        for (k, t) in fs.iter().chain(&gs).enumerate() {
            if !(t.weight.re.is_finite() && t.weight.im.is_finite()) {
                return bad(format!("weight {k} is not finite"));
            }
        }
        let sum_gamma: f64 = fs.iter().map(|t| t.weight.norm()).sum();
        let sum_lambda: f64 = gs.iter().map(|t| t.weight.norm()).sum();
        if sum_gamma > m_bound + BOUND_SLACK {
            return bad(format!("sum |gamma_i| = {sum_gamma} exceeds M = {m_bound}"));
        }
        if sum_lambda > n_bound + BOUND_SLACK {
            return bad(format!("sum |lambda_j| = {sum_lambda} exceeds N = {n_bound}"));
        }
        Ok(Self { id: String::from("scenario"), fs, gs, m_bound, n_bound })
    }

    /// Uses the tightest bounds `M = sum |gamma_i|`, `N = sum |lambda_j|`.
    pub fn from_terms(fs: Vec<Term>, gs: Vec<Term>) -> Result<Self> {
        let m = fs.iter().map(|t| t.weight.norm()).sum();
        let n = gs.iter().map(|t| t.weight.norm()).sum();
        Self::new(fs, gs, m, n)
    }

    /// The scenario `J(z) = z`.
    pub fn empty() -> Self {
        Self { id: String::from("empty"), fs: Vec::new(), gs: Vec::new(), m_bound: 0.0, n_bound: 0.0 }
    }

    /// A single derivative factor `(f')^gamma`, with `M = |gamma|`.
    pub fn single_f(f: FunctionHandle, gamma: Complex64) -> Self {
        Self::from_terms(vec![Term::new(f, gamma)], Vec::new()).expect("finite weight")
    }

    /// A single quotient factor `(g/z)^lambda`, with `N = |lambda|`.
    pub fn single_g(g: FunctionHandle, lambda: Complex64) -> Self {
        Self::from_terms(Vec::new(), vec![Term::new(g, lambda)]).expect("finite weight")
    }

    pub fn with_id(mut self, id: impl Into<String>) -> Self {
        self.id = id.into();
        self
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn fs(&self) -> &[Term] {
        &self.fs
    }

    pub fn gs(&self) -> &[Term] {
        &self.gs
    }

    pub fn m_bound(&self) -> f64 {
        self.m_bound
    }

    pub fn n_bound(&self) -> f64 {
        self.n_bound
    }

    /// Both scenarios' factors together; bounds add.
    pub fn concat(&self, other: &Scenario) -> Scenario {
        Scenario {
            id: format!("{}+{}", self.id, other.id),
            fs: self.fs.iter().chain(&other.fs).cloned().collect(),
            gs: self.gs.iter().chain(&other.gs).cloned().collect(),
            m_bound: self.m_bound + other.m_bound,
            n_bound: self.n_bound + other.n_bound,
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: ScenarioFile = serde_json::from_str(text).map_err(|e| Error::InvalidScenario(e.to_string()))?;
        file.into_scenario()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&ScenarioFile::from(self)).expect("scenario serializes")
    }
}

/// On-disk form of a [`Scenario`].
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub id: Option<String>,
    pub fs: Vec<FunctionSpec>,
    pub gammas: Vec<[f64; 2]>,
    #[serde(default)]
    pub gs: Vec<FunctionSpec>,
    #[serde(default)]
    pub lambdas: Vec<[f64; 2]>,
    #[serde(rename = "M", default, skip_serializing_if = "Option::is_none")]
    pub m: Option<f64>,
    #[serde(rename = "N", default, skip_serializing_if = "Option::is_none")]
    pub n: Option<f64>,
}

/// `{"catalog": "koebe"}`, `{"catalog": "starlike_extremal", "xi": 0.25}`
/// or `{"series": [[re, im], ...]}`, each with an optional `"class"`.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctionSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub catalog: Option<CatalogName>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub series: Option<PowerSeries>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub xi: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub class: Option<ClassSpec>,
}

impl FunctionSpec {
    fn into_handle(self) -> Result<FunctionHandle> {
        match (self.catalog, self.series) {
            (Some(name), None) => {
                let param = match name {
                    CatalogName::StarlikeExtremal => self.xi,
                    CatalogName::LifExtremal => self.alpha,
                    CatalogName::OzakiExample => self.beta,
                    _ => None,
                };
                CatalogFunction::new(name, param).map(FunctionHandle::Catalog)
            }
            (None, Some(series)) => FunctionHandle::from_series(series),
            (Some(_), Some(_)) => Err(Error::BadParameter("give either `catalog` or `series`, not both".into())),
            (None, None) => Err(Error::BadParameter("missing `catalog` or `series`".into())),
        }
    }

    fn from_term(t: &Term) -> Self {
        let mut spec = FunctionSpec { class: t.class, ..Default::default() };
        match &t.function {
            FunctionHandle::Catalog(c) => {
                spec.catalog = Some(c.name());
                match *c {
                    CatalogFunction::StarlikeExtremal { xi } => spec.xi = Some(xi),
                    CatalogFunction::LifExtremal { alpha } => spec.alpha = Some(alpha),
                    CatalogFunction::OzakiExample { beta } => spec.beta = Some(beta),
                    _ => {}
                }
            }
            FunctionHandle::Series(s) => spec.series = Some(s.series().clone()),
        }
        spec
    }
}

fn build_terms(list: &str, specs: Vec<FunctionSpec>, weights: Vec<[f64; 2]>, wname: &str) -> Result<Vec<Term>> {
    if specs.len() != weights.len() {
        return Err(Error::InvalidScenario(format!(
            "`{list}` has {} entries but `{wname}` has {}",
            specs.len(),
            weights.len()
        )));
    }
    specs
        .into_iter()
        .zip(weights)
        .enumerate()
        .map(|(k, (spec, [re, im]))| {
            let class = spec.class;
            if let Some(c) = class {
                c.validate(false).map_err(|e| Error::InvalidScenario(format!("{list}[{k}].class: {e}")))?;
            }
            let function = spec.into_handle().map_err(|e| Error::InvalidScenario(format!("{list}[{k}]: {e}")))?;
            Ok(Term { function, weight: Complex64::new(re, im), class })
        })
        .collect()
}

impl ScenarioFile {
    pub fn into_scenario(self) -> Result<Scenario> {
        let fs = build_terms("fs", self.fs, self.gammas, "gammas")?;
        let gs = build_terms("gs", self.gs, self.lambdas, "lambdas")?;
        let m = self.m.unwrap_or_else(|| fs.iter().map(|t| t.weight.norm()).sum());
        let n = self.n.unwrap_or_else(|| gs.iter().map(|t| t.weight.norm()).sum());
        let s = Scenario::new(fs, gs, m, n)?;
        Ok(match self.id {
            Some(id) => s.with_id(id),
            None => s,
        })
    }
}

impl From<&Scenario> for ScenarioFile {
    fn from(s: &Scenario) -> Self {
        let pair = |t: &Term| [t.weight.re, t.weight.im];
        ScenarioFile {
            id: Some(s.id.clone()),
            fs: s.fs.iter().map(FunctionSpec::from_term).collect(),
            gammas: s.fs.iter().map(pair).collect(),
            gs: s.gs.iter().map(FunctionSpec::from_term).collect(),
            lambdas: s.gs.iter().map(pair).collect(),
            m: Some(s.m_bound),
            n: Some(s.n_bound),
        }
    }
}
