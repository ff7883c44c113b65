use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use cfk::surgery::{CableReport, GenusReport, SignatureValue};

#[derive(Serialize, Debug, Clone, PartialEq, Eq)]
pub struct Entry {
    pub k: i64,
    pub v: i64,
}

#[derive(Serialize, Debug, Clone, PartialEq, Eq)]
pub struct HfkEntry {
    pub alexander: i64,
    pub maslov: i64,
    pub rank: usize,
}

#[derive(Serialize, Debug, Clone, PartialEq, Eq)]
pub struct Sigma {
    pub value: Option<i64>,
    pub abs_bound: Option<i64>,
    pub derivation: Vec<String>,
}

impl From<&SignatureValue> for Sigma {
    fn from(s: &SignatureValue) -> Self {
        Self { value: s.value, abs_bound: s.abs_bound, derivation: s.derivation.clone() }
    }
}

#[derive(Serialize, Debug, Clone, PartialEq, Eq)]
pub struct DInvariant {
    pub spinc: i64,
    pub lens: String,
    pub d: String,
}

/// Everything a report command can say about one knot. Fields a command
/// does not compute stay empty and are written as `null`.
#[derive(Serialize, Debug, Clone, Default, PartialEq, Eq)]
pub struct ReportDocument {
    pub expression: String,
    pub tau: Option<i64>,
    pub nu: Option<i64>,
    pub nu_plus: Option<i64>,
    pub epsilon: Option<i64>,
    #[serde(rename = "V")]
    pub v: Option<Vec<Entry>>,
    #[serde(rename = "H")]
    pub h: Option<Vec<Entry>>,
    pub hfk: Option<Vec<HfkEntry>>,
    pub sigma: Option<Sigma>,
    pub g4_lower: Option<i64>,
    pub g4_upper: Option<i64>,
    pub seifert_genus: Option<i64>,
    pub d_invariants: Option<Vec<DInvariant>>,
    pub notes: Vec<String>,
    pub warnings: Vec<String>,
}

pub fn table(m: &BTreeMap<i64, i64>) -> Vec<Entry> {
    m.iter().map(|(&k, &v)| Entry { k, v }).collect()
}

pub fn hfk_table(m: &BTreeMap<(i64, i64), usize>) -> Vec<HfkEntry> {
    m.iter().map(|(&(alexander, maslov), &rank)| HfkEntry { alexander, maslov, rank }).collect()
}

impl ReportDocument {
    pub fn apply_genus(&mut self, g: &GenusReport) {
        self.tau = Some(g.tau);
        self.nu = Some(g.nu);
        self.nu_plus = Some(g.nu_plus);
        self.sigma = Some((&g.sigma).into());
        self.g4_lower = Some(g.g4_lower);
        self.g4_upper = g.g4_upper;
        self.seifert_genus = Some(g.seifert_genus);
        self.notes.extend(g.notes.iter().cloned());
        if g.g4_upper.is_some_and(|u| u < g.g4_lower) {
            self.warnings.push(format!("genus bounds are inconsistent: {} > {}", g.g4_lower, g.g4_upper.unwrap_or(0)));
        }
    }

    pub fn apply_cable(&mut self, c: &CableReport) {
        self.tau = c.tau;
        self.nu_plus = c.nu_plus;
        self.sigma = Some((&c.sigma).into());
        self.g4_lower = Some(c.g4_lower);
        self.g4_upper = c.g4_upper;
        self.notes.push(format!("no complex for this cable; values from the cable formulas (nu_plus >= {})", c.nu_plus_lower));
        self.notes.extend(c.notes.iter().cloned());
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let opt = |x: Option<i64>| x.map_or("unknown".to_string(), |v| v.to_string());
        writeln!(out, "knot: {}", self.expression).unwrap();
        for (name, val) in [("tau", self.tau), ("nu", self.nu), ("nu_plus", self.nu_plus), ("epsilon", self.epsilon)] {
            if let Some(x) = val {
                writeln!(out, "{name:<14}{x}").unwrap();
            }
        }
        if let (Some(v), Some(h)) = (&self.v, &self.h) {
            writeln!(out, "\n{:>5} {:>5} {:>5}  V_-k = V_k + k", "k", "V_k", "H_k").unwrap();
            for (a, b) in v.iter().zip(h) {
                let ok = if b.v == a.v + a.k { "ok" } else { "VIOLATED" };
                writeln!(out, "{:>5} {:>5} {:>5}  {ok}", a.k, a.v, b.v).unwrap();
            }
        }
        if let Some(hfk) = &self.hfk {
            writeln!(out, "\nHFK-hat (alexander, maslov): rank").unwrap();
            for e in hfk {
                writeln!(out, "  ({}, {}): {}", e.alexander, e.maslov, e.rank).unwrap();
            }
        }
        if let Some(s) = &self.sigma {
            let bound = s.abs_bound.filter(|_| s.value.is_none()).map(|b| format!(" (|sigma| <= {b})")).unwrap_or_default();
            writeln!(out, "\n{:<14}{}{bound}", "sigma", opt(s.value)).unwrap();
        }
        if self.g4_lower.is_some() {
            writeln!(out, "{:<14}{}", "g4_lower", opt(self.g4_lower)).unwrap();
            writeln!(out, "{:<14}{}", "g4_upper", opt(self.g4_upper)).unwrap();
            if self.seifert_genus.is_some() {
                writeln!(out, "{:<14}{}", "seifert_genus", opt(self.seifert_genus)).unwrap();
            }
        }
        if let Some(d) = &self.d_invariants {
            writeln!(out, "\n{:>6} {:>12} {:>12}", "spinc", "d(lens)", "d").unwrap();
            for e in d {
                writeln!(out, "{:>6} {:>12} {:>12}", e.spinc, e.lens, e.d).unwrap();
            }
        }
        for n in &self.notes {
            writeln!(out, "note: {n}").unwrap();
        }
        for w in &self.warnings {
            writeln!(out, "warning: {w}").unwrap();
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_has_stable_keys() {
        let doc = ReportDocument { expression: "unknot".into(), tau: Some(0), ..Default::default() };
        let v: serde_json::Value = serde_json::from_str(&doc.to_json()).unwrap();
        let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
        for k in ["tau", "nu", "nu_plus", "epsilon", "V", "H", "hfk", "sigma", "g4_lower", "g4_upper", "seifert_genus", "d_invariants", "warnings"] {
            assert!(keys.contains(&k), "{k}");
        }
        assert_eq!(v["tau"], 0);
        assert!(v["nu"].is_null());
    }

    #[test]
    fn text_flags_broken_symmetry() {
        let doc = ReportDocument {
            expression: "x".into(),
            v: Some(vec![Entry { k: 1, v: 0 }]),
            h: Some(vec![Entry { k: 1, v: 3 }]),
            ..Default::default()
        };
        assert!(doc.to_text().contains("VIOLATED"));
    }
}
