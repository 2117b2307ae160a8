//! Output records. Every record deserializes back under the same rules it
//! was written with (unknown fields rejected).

use serde::{Deserialize, Serialize};

use pv_core::abgroup::GradedGroup;
use pv_core::koszul::ExactnessReport;
use pv_core::pvtower::{ObjectKind, TowerReport, TowerShape};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Rank1Out {
    #[serde(rename = "K0")]
    pub k0: String,
    #[serde(rename = "K1")]
    pub k1: String,
    pub ambiguous: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupsOut {
    pub even: String,
    pub odd: String,
}

impl From<&GradedGroup> for GroupsOut {
    fn from(g: &GradedGroup) -> Self {
        GroupsOut {
            even: g.even.to_string(),
            odd: g.odd.to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LevelOut {
    pub level: usize,
    pub even: String,
    pub odd: String,
    /// Present when the level also contains a kernel that is not finitely
    /// generated.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kernel: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TowerOut {
    pub n: usize,
    pub levels: Vec<LevelOut>,
    #[serde(rename = "final")]
    pub final_group: GroupsOut,
    pub ambiguity: Vec<String>,
}

impl From<&TowerReport> for TowerOut {
    fn from(t: &TowerReport) -> Self {
        TowerOut {
            n: t.n,
            levels: t
                .levels
                .iter()
                .map(|l| LevelOut {
                    level: l.level,
                    even: l.group.even.to_string(),
                    odd: l.group.odd.to_string(),
                    kernel: l.symbolic.as_ref().map(ToString::to_string),
                })
                .collect(),
            final_group: (&t.final_group).into(),
            ambiguity: t.flags(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpotOut {
    pub spot: usize,
    pub even: String,
    pub odd: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KoszulOut {
    pub spots: Vec<SpotOut>,
}

impl KoszulOut {
    pub fn new(h: &[GradedGroup]) -> Self {
        KoszulOut {
            spots: h
                .iter()
                .enumerate()
                .map(|(spot, g)| SpotOut {
                    spot,
                    even: g.even.to_string(),
                    odd: g.odd.to_string(),
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WitnessOut {
    pub spot: usize,
    pub module_rank: usize,
    pub rank_out: usize,
    pub rank_in: usize,
    pub consistent: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExactnessOut {
    pub n: usize,
    pub seed: u64,
    pub trials: usize,
    pub max_ranks: Vec<usize>,
    pub spots: Vec<WitnessOut>,
    pub augmentation_surjects: bool,
}

impl ExactnessOut {
    pub fn new(n: usize, seed: u64, r: &ExactnessReport, augmentation_surjects: bool) -> Self {
        ExactnessOut {
            n,
            seed,
            trials: r.trial_ranks.len(),
            max_ranks: r.max_ranks.clone(),
            spots: r
                .spots
                .iter()
                .map(|s| WitnessOut {
                    spot: s.spot,
                    module_rank: s.module_rank,
                    rank_out: s.rank_out,
                    rank_in: s.rank_in,
                    consistent: s.consistent,
                })
                .collect(),
            augmentation_surjects,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OracleOut {
    #[serde(rename = "match")]
    pub matched: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ObjectOut {
    pub label: String,
    pub kind: String,
    pub suspension: usize,
    pub multiplicity: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrowOut {
    pub from: usize,
    pub to: usize,
    pub degree_one: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ShapeOut {
    pub n: usize,
    pub w: usize,
    pub dual: bool,
    pub objects: Vec<ObjectOut>,
    pub arrows: Vec<ArrowOut>,
}

impl From<&TowerShape> for ShapeOut {
    fn from(s: &TowerShape) -> Self {
        ShapeOut {
            n: s.n,
            w: s.w,
            dual: s.dual,
            objects: s
                .objects
                .iter()
                .map(|o| ObjectOut {
                    label: o.label.clone(),
                    kind: match o.kind {
                        ObjectKind::Coefficient { k_index } => format!("coefficient k{k_index}"),
                        ObjectKind::DTerm { index } => format!("D{index}"),
                        ObjectKind::CrossedProduct => "crossed product".into(),
                    },
                    suspension: o.suspension,
                    multiplicity: o.multiplicity,
                })
                .collect(),
            arrows: s
                .arrows
                .iter()
                .map(|a| ArrowOut {
                    from: a.from,
                    to: a.to,
                    degree_one: a.degree_one,
                })
                .collect(),
        }
    }
}
