use std::collections::{BTreeMap, HashSet};
use std::fmt::Write;

use serde::Serialize;
use serde_json::{json, Value};

use crate::semigroup::{eggbox_dot, greens, idempotent_poset, structure_report, StructureReport};
use crate::substitution::{
    Direction, FixedPoints, PairClassification, PairOptions, Substitution, Verdict,
};

use super::{
    cayley_of_fiber, classify_system, kernel_model, ClassificationReport, EllisError,
    FiberSemigroup, KernelModel,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AnalysisOptions {
    /// Odometer depth `K` of the kernel model.
    pub depth: usize,
    /// Positions scanned for Li-Yorke witnesses; `None` means `ℓ⁶`.
    pub horizon: Option<u64>,
    pub witnesses: usize,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        Self {
            depth: 8,
            horizon: None,
            witnesses: 5,
        }
    }
}

/// One piece of the decomposition of the Ellis semigroup suggested by the
/// fiber shadow.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Stratum {
    pub name: String,
    pub description: String,
    /// Fiber elements in the stratum; empty for the symbolic shift powers.
    pub fiber_elements: Vec<String>,
    /// Shift offsets are kept modulo this number.
    pub offset_modulus: Option<u64>,
    /// `false` when the identification with a part of the full Ellis
    /// semigroup is read off the fiber shadow without proof.
    pub established: bool,
}

/// The whole pipeline run on one substitution.
pub struct Analysis {
    pub substitution: Substitution,
    pub fixed_points: FixedPoints,
    pub fiber: FiberSemigroup,
    pub structure: StructureReport,
    pub classification: ClassificationReport,
    pub kernel_model: Result<KernelModel, String>,
    pub periodic: bool,
    pub strata: Vec<Stratum>,
    pub options: AnalysisOptions,
}

impl Analysis {
    pub fn run(sub: &Substitution, options: AnalysisOptions) -> Result<Self, EllisError> {
        let fp = FixedPoints::new(sub)?;
        let shadow = fp.column_shadow();
        let fiber = FiberSemigroup::build(&fp, &shadow)?;
        let structure = structure_report(&fiber.semigroup);
        let pair_options = PairOptions {
            witnesses: options.witnesses,
            horizon: options.horizon,
        };
        let classification = classify_system(&fp, &fiber, pair_options)?;
        let model = match kernel_model(&fiber, sub.length(), options.depth) {
            Ok(m) => Ok(m),
            Err(EllisError::Declined(why)) => Err(why),
            Err(e) => return Err(e),
        };
        let periodic = is_periodic(&fp);
        let strata = strata(&fiber, &structure, model.as_ref().ok(), periodic);
        Ok(Self {
            substitution: sub.clone(),
            fixed_points: fp,
            fiber,
            structure,
            classification,
            kernel_model: model,
            periodic,
            strata,
            options,
        })
    }

    pub fn is_consistent(&self) -> bool {
        self.classification.is_consistent()
    }

    /// One-line summary of the classification.
    pub fn verdict(&self) -> String {
        let c = &self.classification;
        if !c.minimality_guaranteed {
            return "minimality not guaranteed; no theorem applied".into();
        }
        if c.almost_distal {
            "almost distal; nearly simple predicted".into()
        } else {
            match &c.witness {
                Some(w) => format!("not completely regular; witness {w}"),
                None => "not completely regular predicted; no witness in the fiber shadow".into(),
            }
        }
    }

    fn label(&self, w: usize) -> String {
        self.fixed_points.label(w)
    }

    fn pair_json(&self, p: &PairClassification) -> Value {
        let letters: Vec<(String, String)> = p
            .recurrent_pairs
            .iter()
            .map(|&(a, b)| {
                (
                    self.substitution.letter(a).to_string(),
                    self.substitution.letter(b).to_string(),
                )
            })
            .collect();
        json!({
            "pair": [self.label(p.first), self.label(p.second)],
            "direction": p.direction,
            "verdict": p.verdict,
            "proximal": p.proximal,
            "asymptotic": p.asymptotic,
            "threshold": p.threshold,
            "witnesses": p.witnesses,
            "recurrent_letter_pairs": letters,
            "scan_horizon": p.scan_horizon,
        })
    }

    pub fn to_json(&self) -> Value {
        let sub = &self.substitution;
        let fp = &self.fixed_points;
        let rules: BTreeMap<&str, String> = (0..sub.size())
            .map(|a| (sub.letter(a), sub.render(sub.rule(a))))
            .collect();
        let seeds: Vec<Value> = (0..fp.count())
            .map(|w| {
                json!({
                    "label": fp.label(w),
                    "windows": [fp.expand_window(w, 1), fp.expand_window(w, 2)],
                })
            })
            .collect();
        let f = &self.fiber;
        let s = &f.semigroup;
        let elements: Vec<Value> = s
            .elements()
            .map(|a| {
                json!({
                    "name": f.name(a),
                    "map": f.render_map(a),
                    "column": f.columns.iter().find(|c| &c.map == f.map(a)).map(|c| c.position),
                    "forward": f.forward.contains(&a),
                    "backward": f.backward.contains(&a),
                    "idempotent": s.is_idempotent(a),
                    "completely_regular": !self.structure.non_completely_regular.contains(&a),
                })
            })
            .collect();
        let names = |xs: &[usize]| {
            xs.iter()
                .map(|&a| f.name(a).to_string())
                .collect::<Vec<_>>()
        };
        let poset = idempotent_poset(s);
        let model = match &self.kernel_model {
            Ok(m) => json!({
                "status": "built",
                "fiber_kernel": m.fiber_kernel,
                "base": m.base,
                "depth": m.depth,
                "requested_depth": m.requested_depth,
                "size": m.semigroup.size(),
                "completely_simple": m.report.is_completely_simple,
                "minimal_left_ideals": m.report.minimal_left_ideals.len(),
                "rees": m.rees,
            }),
            Err(why) => json!({ "status": "declined", "reason": why }),
        };
        json!({
            "substitution": {
                "alphabet": sub.alphabet(),
                "length": sub.length(),
                "rules": rules,
                "primitive": sub.is_primitive(),
            },
            "seeds": seeds,
            "pairs": self.classification.pairs.iter().map(|p| self.pair_json(p)).collect::<Vec<_>>(),
            "fiber_semigroup": {
                "elements": elements,
                "cayley": cayley_of_fiber(f).table,
                "idempotents": names(&self.structure.idempotents),
                "minimal_idempotents": names(&poset.minimal),
                "kernel": names(&self.structure.kernel),
                "minimal_left_ideals": self.structure.minimal_left_ideals.iter().map(|l| names(l)).collect::<Vec<_>>(),
                "forward": names(&f.forward),
                "backward": names(&f.backward),
            },
            "classification": self.classification,
            "verdict": self.verdict(),
            "kernel_model": model,
            "periodic": self.periodic,
            "strata": self.strata,
        })
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("report serializes") + "\n"
    }

    /// Egg-box diagram of the fiber semigroup.
    pub fn to_dot(&self) -> String {
        eggbox_dot(&self.fiber.semigroup, &greens(&self.fiber.semigroup))
    }

    pub fn to_text(&self) -> String {
        let sub = &self.substitution;
        let fp = &self.fixed_points;
        let f = &self.fiber;
        let c = &self.classification;
        let mut out = String::new();
        let rules: Vec<String> = (0..sub.size())
            .map(|a| format!("{}→{}", sub.letter(a), sub.render(sub.rule(a))))
            .collect();
        let _ = writeln!(out, "substitution: {}", rules.join(", "));
        let _ = writeln!(
            out,
            "length {}, {}",
            sub.length(),
            if sub.is_primitive() {
                "primitive"
            } else {
                "not primitive (minimality not guaranteed)"
            }
        );
        let _ = writeln!(out, "\nfixed points of σ∘θ: {}", fp.count());
        for w in 0..fp.count() {
            let _ = writeln!(out, "  x_{}  {}", fp.label(w), fp.expand_window(w, 1));
            let _ = writeln!(
                out,
                "  {}  {}",
                " ".repeat(fp.label(w).chars().count() + 2),
                fp.expand_window(w, 2)
            );
        }

        let _ = writeln!(out, "\npairs:");
        for p in c.pairs.iter() {
            let dir = match p.direction {
                Direction::Forward => "forward ",
                Direction::Backward => "backward",
            };
            let detail = match p.verdict {
                Verdict::Asymptotic => format!(
                    "asymptotic (agree from distance {})",
                    p.threshold.unwrap_or(0)
                ),
                Verdict::LiYorke => {
                    let ws: Vec<String> = p
                        .witnesses
                        .iter()
                        .map(|w| format!("({}, {})", w.n, w.length))
                        .collect();
                    format!("Li-Yorke, witnesses (n, N): {}", ws.join(" "))
                }
                Verdict::DistalPair => "distal".into(),
            };
            let _ = writeln!(
                out,
                "  (x_{}, x_{}) {dir} {detail}",
                self.label(p.first),
                self.label(p.second)
            );
        }

        let s = &f.semigroup;
        let _ = writeln!(out, "\nfiber semigroup: {} elements", s.size());
        for a in s.elements() {
            let _ = writeln!(out, "  {:<4} {}", f.name(a), f.render_map(a));
        }
        let names = |xs: &[usize]| {
            xs.iter()
                .map(|&a| f.name(a).to_string())
                .collect::<Vec<_>>()
                .join(", ")
        };
        let _ = writeln!(out, "  forward shadow:  {}", names(&f.forward));
        let _ = writeln!(out, "  backward shadow: {}", names(&f.backward));
        let _ = writeln!(out, "  idempotents: {}", names(&self.structure.idempotents));
        let _ = writeln!(
            out,
            "  kernel: {} ({} minimal left ideal{})",
            names(&self.structure.kernel),
            self.structure.minimal_left_ideals.len(),
            if self.structure.minimal_left_ideals.len() == 1 {
                ""
            } else {
                "s"
            }
        );
        let cayley = cayley_of_fiber(f);
        let width = cayley
            .elements
            .iter()
            .map(|x| x.chars().count())
            .max()
            .unwrap_or(1)
            + 1;
        let pad = |x: &str| format!("{x}{}", " ".repeat(width - x.chars().count()));
        let _ = writeln!(out, "  products (row · column):");
        let header: String = cayley.elements.iter().map(|x| pad(x)).collect();
        let _ = writeln!(out, "    {}{}", pad(""), header.trim_end());
        for (x, row) in cayley.elements.iter().zip(&cayley.table) {
            let cells: String = row.iter().map(|y| pad(y)).collect();
            let _ = writeln!(out, "    {}{}", pad(x), cells.trim_end());
        }

        let _ = writeln!(out, "\nclassification:");
        let ad = |b: bool| {
            if b {
                "almost distal"
            } else {
                "not almost distal"
            }
        };
        let _ = writeln!(
            out,
            "  forward {}, backward {}",
            ad(c.forward_almost_distal),
            ad(c.backward_almost_distal)
        );
        let _ = writeln!(
            out,
            "  proximality on computed pairs: forward {}, backward {}, overall {}",
            transitivity(c.forward_proximality_transitive),
            transitivity(c.backward_proximality_transitive),
            transitivity(c.proximality_transitive)
        );
        let _ = writeln!(
            out,
            "  completely regular: {}; nearly simple: {}",
            c.computed.completely_regular,
            c.computed
                .nearly_simple
                .map_or("n/a".to_string(), |b| b.to_string())
        );
        let _ = writeln!(
            out,
            "  directional kernels: forward {{{}}}, backward {{{}}}{}",
            c.computed.forward_kernel.join(", "),
            c.computed.backward_kernel.join(", "),
            if c.computed.directional_kernels_equal {
                " (equal)"
            } else {
                ""
            }
        );
        for w in &c.witness_maps {
            let _ = writeln!(
                out,
                "  {:?} Li-Yorke pair (x_{}, x_{}): {} = {}, im {}² = {{{}}} ⊊ im {} = {{{}}}",
                w.direction,
                w.pair.0,
                w.pair.1,
                w.element,
                w.map,
                w.element,
                w.square_image.join(", "),
                w.element,
                w.image.join(", ")
            );
        }
        if !c.unwitnessed_pairs.is_empty() {
            let _ = writeln!(
                out,
                "  Li-Yorke pairs without a witness map in the fiber: {}",
                c.unwitnessed_pairs.join(", ")
            );
        }
        let _ = writeln!(out, "  verdict: {}", self.verdict());

        let _ = writeln!(out, "\nkernel model:");
        match &self.kernel_model {
            Ok(m) => {
                let _ = writeln!(
                    out,
                    "  LZ_{} × ℤ/{}^{} ({} elements{}), completely simple: {}",
                    m.fiber_kernel.len(),
                    m.base,
                    m.depth,
                    m.semigroup.size(),
                    if m.depth < m.requested_depth {
                        format!(", depth reduced from {}", m.requested_depth)
                    } else {
                        String::new()
                    },
                    m.report.is_completely_simple
                );
                let _ = writeln!(
                    out,
                    "  Rees data: |G| = {} ({}), |I| = {}, |Λ| = {}",
                    m.rees.group_order,
                    if m.rees.group_is_cyclic {
                        "cyclic"
                    } else {
                        "not cyclic"
                    },
                    m.rees.i_count,
                    m.rees.lambda_count
                );
            }
            Err(why) => {
                let _ = writeln!(out, "  declined: {why}");
            }
        }

        let _ = writeln!(out, "\nstrata:");
        for st in &self.strata {
            let flag = if st.established {
                ""
            } else {
                " [read off the fiber shadow, unproven]"
            };
            let _ = writeln!(out, "  {}: {}{flag}", st.name, st.description);
        }

        if c.inconsistencies.is_empty() {
            let _ = writeln!(out, "\nconsistency: all checks pass");
        } else {
            let _ = writeln!(out, "\nconsistency: {} FAILED", c.inconsistencies.len());
            for e in &c.inconsistencies {
                let _ = writeln!(out, "  - {e}");
            }
        }
        out
    }
}

fn transitivity(b: bool) -> &'static str {
    if b {
        "transitive"
    } else {
        "not transitive"
    }
}

/// A sequence with at most `n` factors of some length `n` is eventually
/// periodic; for a minimal subshift this makes it periodic.
fn is_periodic(fp: &FixedPoints) -> bool {
    let len = 4096i64;
    let w = fp.window_covering(0, 0, len);
    let letters: Vec<usize> = (0..len).map(|m| w.get(m).expect("window covers")).collect();
    (1..=32).any(|n| {
        let factors: HashSet<&[usize]> = letters.windows(n).collect();
        factors.len() <= n
    })
}

fn strata(
    fiber: &FiberSemigroup,
    report: &StructureReport,
    model: Option<&KernelModel>,
    periodic: bool,
) -> Vec<Stratum> {
    let names = |xs: &[usize]| {
        xs.iter()
            .map(|&a| fiber.name(a).to_string())
            .collect::<Vec<_>>()
    };
    let s = &fiber.semigroup;
    if s.size() == 1 {
        let description = if periodic {
            "the subshift is periodic: the Ellis semigroup is the finite cyclic group of shift powers"
        } else {
            "trivial fiber semigroup: only the shift powers remain"
        };
        return vec![Stratum {
            name: "units".into(),
            description: description.into(),
            fiber_elements: names(&[0]),
            offset_modulus: None,
            established: periodic,
        }];
    }
    let mut out = vec![Stratum {
        name: "units".into(),
        description: "shift powers α^n, n ∈ ℤ".into(),
        fiber_elements: Vec::new(),
        offset_modulus: None,
        established: true,
    }];
    let units: Vec<usize> = report.units.clone().unwrap_or_default();
    let middle: Vec<usize> = s
        .elements()
        .filter(|a| !report.kernel.contains(a) && !units.contains(a))
        .collect();
    let modulus = model.map(|m| (m.base as u64).pow(m.depth as u32));
    if !middle.is_empty() {
        let lands = middle
            .iter()
            .all(|&x| middle.iter().all(|&y| report.kernel.contains(&s.mul(x, y))));
        let ms = names(&middle);
        let offsets = modulus.map_or("ℤ".to_string(), |m| format!("ℤ/{m}"));
        out.push(Stratum {
            name: "middle".into(),
            description: format!(
                "{{{}}} × shift offsets in {offsets}; products of two such elements {} the kernel",
                ms.join(", "),
                if lands {
                    "land in"
                } else {
                    "do not all land in"
                }
            ),
            fiber_elements: ms,
            offset_modulus: modulus,
            established: false,
        });
    }
    let description = match model {
        Some(m) => format!(
            "LZ_{} × ℤ/{}^{}, a left zero semigroup on {{{}}} times the odometer truncated at depth {}",
            m.fiber_kernel.len(),
            m.base,
            m.depth,
            m.fiber_kernel.join(", "),
            m.depth
        ),
        None => format!("kernel shadow {{{}}}; no product model", names(&report.kernel).join(", ")),
    };
    out.push(Stratum {
        name: "kernel".into(),
        description,
        fiber_elements: names(&report.kernel),
        offset_modulus: modulus,
        established: false,
    });
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::substitution::{bijective_substitution, example_substitution};

    fn quick() -> AnalysisOptions {
        AnalysisOptions {
            depth: 2,
            ..AnalysisOptions::default()
        }
    }

    #[test]
    fn example_strata() {
        let a = Analysis::run(&example_substitution(), quick()).unwrap();
        assert!(a.is_consistent());
        assert!(!a.periodic);
        let names: Vec<&str> = a.strata.iter().map(|s| s.name.as_str()).collect();
        assert_eq!(names, vec!["units", "middle", "kernel"]);
        assert_eq!(a.strata[1].fiber_elements, vec!["φ"]);
        assert!(a.strata[1].description.contains("land in the kernel"));
        assert_eq!(a.verdict(), "not completely regular; witness φ");
    }

    #[test]
    fn bijective_strata() {
        let a = Analysis::run(&bijective_substitution(), quick()).unwrap();
        assert!(a.periodic);
        assert_eq!(a.strata.len(), 2);
        assert!(a.kernel_model.is_err());
        assert_eq!(a.verdict(), "almost distal; nearly simple predicted");
    }

    #[test]
    fn one_letter_is_a_single_stratum() {
        let a = Analysis::run(&Substitution::from_words(&[("a", "aa")]).unwrap(), quick()).unwrap();
        assert!(a.periodic);
        assert_eq!(a.strata.len(), 1);
    }

    #[test]
    fn json_has_schema_keys() {
        let a = Analysis::run(&example_substitution(), quick()).unwrap();
        let v = a.to_json();
        for key in [
            "substitution",
            "seeds",
            "pairs",
            "fiber_semigroup",
            "classification",
            "kernel_model",
            "strata",
        ] {
            assert!(v.get(key).is_some(), "{key}");
        }
        assert_eq!(
            v["fiber_semigroup"]["elements"].as_array().unwrap().len(),
            5
        );
        assert_eq!(a.to_json_string(), a.to_json_string());
        assert!(a.to_text().contains("witness φ"));
        assert!(a.to_dot().starts_with("digraph"));
    }
}
