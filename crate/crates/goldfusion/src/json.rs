//! JSON file formats.
//!
//! Rings are `{"basis": [..], "unit": u, "dual": [..], "fusion": [[a,b,c,m], ..]}`
//! with zero multiplicities omitted and triples sorted, presentations are
//! `{"generators": n, "relations": [["aba","bab"], ..]}`, and elements of
//! `Z[phi]` are `[x, y]` for `x + y phi`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use goldfusion_core::classify::ClassEntry;
use goldfusion_core::ring::{AxiomReport, ObjectVec};
use goldfusion_core::words::{Conclusion, Derivation, DeriveOutcome, Presentation, SearchStats};
use goldfusion_core::{FusionRing, QuadInt};

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid data: {0}")]
    Invalid(#[from] goldfusion_core::Error),
    #[error("out of range: {0}")]
    Range(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RingFile {
    pub basis: Vec<String>,
    pub unit: usize,
    pub dual: Vec<usize>,
    pub fusion: Vec<[u64; 4]>,
}

impl RingFile {
    pub fn from_ring(ring: &FusionRing) -> Self {
        let mut fusion: Vec<[u64; 4]> = ring
            .triples()
            .map(|(a, b, c, m)| [a as u64, b as u64, c as u64, u64::from(m)])
            .collect();
        fusion.sort_unstable();
        RingFile {
            basis: ring.labels().to_vec(),
            unit: ring.unit(),
            dual: ring.dual_map().to_vec(),
            fusion,
        }
    }

    pub fn to_ring(&self) -> Result<FusionRing, FormatError> {
        let mut triples = Vec::with_capacity(self.fusion.len());
        for &[a, b, c, m] in &self.fusion {
            let m = u32::try_from(m).map_err(|_| FormatError::Range(format!("multiplicity {m}")))?;
            let idx = |v: u64| usize::try_from(v).unwrap_or(usize::MAX);
            triples.push((idx(a), idx(b), idx(c), m));
        }
        Ok(FusionRing::from_triples(self.basis.clone(), self.unit, self.dual.clone(), triples)?)
    }
}

pub fn ring_to_json(ring: &FusionRing) -> String {
    to_pretty(&RingFile::from_ring(ring))
}

pub fn ring_from_json(text: &str) -> Result<FusionRing, FormatError> {
    serde_json::from_str::<RingFile>(text)?.to_ring()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PresentationFile {
    pub generators: usize,
    pub relations: Vec<[String; 2]>,
}

impl PresentationFile {
    pub fn from_presentation(p: &Presentation) -> Self {
        PresentationFile {
            generators: p.generators,
            relations: p.relation_strings().into_iter().map(|(u, v)| [u, v]).collect(),
        }
    }

    pub fn to_presentation(&self) -> Result<Presentation, FormatError> {
        let rels: Vec<(&str, &str)> = self.relations.iter().map(|[u, v]| (u.as_str(), v.as_str())).collect();
        Ok(Presentation::parse(self.generators, &rels)?)
    }
}

pub fn presentation_from_json(text: &str) -> Result<Presentation, FormatError> {
    serde_json::from_str::<PresentationFile>(text)?.to_presentation()
}

pub fn quad(q: QuadInt) -> [i64; 2] {
    [q.x, q.y]
}

/// Pretty JSON with a trailing newline.
pub fn to_pretty<T: Serialize + ?Sized>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

#[derive(Serialize)]
pub struct ViolationJson {
    pub witness: Vec<String>,
    pub message: String,
}

#[derive(Serialize)]
pub struct CheckJson {
    pub axiom: &'static str,
    pub checked: u64,
    pub failures: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first: Option<ViolationJson>,
}

#[derive(Serialize)]
pub struct ReportJson {
    pub passed: bool,
    pub rank: usize,
    pub associativity: &'static str,
    pub assoc_targets: usize,
    pub checks: Vec<CheckJson>,
}

pub fn report_json(ring: &FusionRing, report: &AxiomReport) -> ReportJson {
    ReportJson {
        passed: report.passed(),
        rank: ring.rank(),
        associativity: if report.exhaustive { "exhaustive" } else { "generator-reduced" },
        assoc_targets: report.assoc_targets,
        checks: report
            .checks
            .iter()
            .map(|c| CheckJson {
                axiom: c.axiom.name(),
                checked: c.checked,
                failures: c.failures,
                first: c.first.as_ref().map(|v| ViolationJson {
                    witness: v.witness.iter().map(|&i| ring.label(i).to_string()).collect(),
                    message: v.message.clone(),
                }),
            })
            .collect(),
    }
}

/// An object as `{label: multiplicity}` over its support, in basis order
/// (serialized sorted by label).
pub fn object_json(ring: &FusionRing, x: &ObjectVec) -> BTreeMap<String, u64> {
    x.support().map(|i| (ring.label(i).to_string(), x.get(i))).collect()
}

#[derive(Serialize)]
pub struct StepJson {
    pub index: usize,
    pub rule: &'static str,
    pub premises: Vec<usize>,
    pub lhs: String,
    pub rhs: String,
    pub note: String,
}

#[derive(Serialize)]
pub struct StatsJson {
    pub equalities: usize,
    pub processed: usize,
    pub discarded: usize,
    pub budget_hit: bool,
}

impl From<SearchStats> for StatsJson {
    fn from(s: SearchStats) -> Self {
        StatsJson {
            equalities: s.equalities,
            processed: s.processed,
            discarded: s.discarded,
            budget_hit: s.budget_hit,
        }
    }
}

#[derive(Serialize)]
pub struct DeriveJson {
    pub outcome: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub conclusion: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kind: Option<&'static str>,
    pub steps: Vec<StepJson>,
    pub stats: StatsJson,
}

pub fn derivation_steps(d: &Derivation) -> Vec<StepJson> {
    d.steps
        .iter()
        .enumerate()
        .map(|(index, s)| StepJson {
            index,
            rule: s.rule.name(),
            premises: s.premises.clone(),
            lhs: s.lhs.to_string(),
            rhs: s.rhs.to_string(),
            note: s.note.clone(),
        })
        .collect()
}

pub fn derive_json(outcome: &DeriveOutcome) -> DeriveJson {
    match outcome {
        DeriveOutcome::Derived { derivation, stats } => DeriveJson {
            outcome: "derived",
            conclusion: Some(derivation.conclusion.to_string()),
            kind: Some(match derivation.conclusion {
                Conclusion::Collapse { .. } => "collapse",
                Conclusion::Shift { .. } => "shift",
            }),
            steps: derivation_steps(derivation),
            stats: (*stats).into(),
        },
        DeriveOutcome::Exhausted { stats } => DeriveJson {
            outcome: "exhausted",
            conclusion: None,
            kind: None,
            steps: Vec::new(),
            stats: (*stats).into(),
        },
    }
}

#[derive(Serialize)]
pub struct EntryJson {
    pub family: &'static str,
    #[serde(rename = "N")]
    pub n: usize,
    #[serde(rename = "M")]
    pub m: usize,
    pub rank: usize,
    pub global_dim: [i64; 2],
    pub generator: String,
    pub generator_count: usize,
    pub grading_order: usize,
    pub twist_count: usize,
}

pub fn entry_json(e: &ClassEntry) -> EntryJson {
    EntryJson {
        family: e.family.name(),
        n: e.n,
        m: e.m,
        rank: e.rank(),
        global_dim: quad(e.global_dim),
        generator: e.ring.label(e.generator_witness.x).to_string(),
        generator_count: e.generator_count,
        grading_order: e.grading_order,
        twist_count: e.twist_count,
    }
}
