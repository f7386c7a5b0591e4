use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::value::ReidValue;

/// Inference rules of the certificate calculus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Rule {
    /// `R(φ) = #Coker(1 - φ)` on a finitely generated abelian group.
    AbelianDet,
    /// An invariant normal subgroup whose quotient map has `R = ∞`.
    QuotientInf,
    /// Finite `R` and finite `Fix` on the quotient, `R = ∞` on the kernel.
    FixKernel,
    /// Central extension with torsion-free factors: `R = R' R̄`.
    Product,
    /// Passing to the quotient by the torsion subgroup.
    TorsionQuotient,
    /// A subgroup is invariant because it is characteristic or fully
    /// invariant.
    CharSubgroup,
    /// A parametric family meeting infinitely many classes.
    CaseAnalysis,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = serde_json::to_value(self).expect("rule serializes");
        f.write_str(s.as_str().unwrap_or("?"))
    }
}

/// What a certificate asserts. `value` is absent for subgroup statements.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Claim {
    pub group: String,
    pub endo: Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value: Option<ReidValue>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub statement: Option<String>,
}

/// A computed fact: re-running `leaf_op` on `leaf_args` must give
/// `leaf_result`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Fact {
    pub leaf_op: String,
    pub leaf_args: Value,
    pub leaf_result: Value,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PremiseBody {
    Certificate { certificate: Box<Certificate> },
    Fact(Fact),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Premise {
    pub role: String,
    #[serde(flatten)]
    pub body: PremiseBody,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Certificate {
    pub claim: Claim,
    pub rule: Rule,
    pub premises: Vec<Premise>,
}

impl Premise {
    pub fn fact(role: &str, fact: Fact) -> Self {
        Premise {
            role: role.into(),
            body: PremiseBody::Fact(fact),
        }
    }

    pub fn cert(role: &str, c: Certificate) -> Self {
        Premise {
            role: role.into(),
            body: PremiseBody::Certificate {
                certificate: Box::new(c),
            },
        }
    }
}

impl Certificate {
    /// Number of nodes (certificates and facts) in the tree.
    pub fn size(&self) -> usize {
        1 + self
            .premises
            .iter()
            .map(|p| match &p.body {
                PremiseBody::Certificate { certificate } => certificate.size(),
                PremiseBody::Fact(_) => 1,
            })
            .sum::<usize>()
    }

    /// Rules from the root down, depth first.
    pub fn rules(&self) -> Vec<Rule> {
        let mut out = vec![self.rule];
        for p in &self.premises {
            if let PremiseBody::Certificate { certificate } = &p.body {
                out.extend(certificate.rules());
            }
        }
        out
    }

    /// Indented outline for human output.
    pub fn outline(&self) -> String {
        let mut s = String::new();
        self.outline_into(&mut s, 0, "");
        s
    }

    fn outline_into(&self, s: &mut String, depth: usize, role: &str) {
        use std::fmt::Write as _;
        let pad = "  ".repeat(depth);
        let role = if role.is_empty() { String::new() } else { format!("{role}: ") };
        let what = match (&self.claim.value, &self.claim.statement) {
            (Some(v), _) => format!("R = {v}"),
            (None, Some(st)) => st.clone(),
            (None, None) => String::new(),
        };
        let _ = writeln!(s, "{pad}{role}[{}] {} {what}", self.rule, self.claim.group);
        for p in &self.premises {
            match &p.body {
                PremiseBody::Certificate { certificate } => certificate.outline_into(s, depth + 1, &p.role),
                PremiseBody::Fact(f) => {
                    let _ = writeln!(s, "{pad}  {}: {} -> {}", p.role, f.leaf_op, f.leaf_result);
                }
            }
        }
    }
}
