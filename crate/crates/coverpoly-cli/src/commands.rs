//! Command implementations. Every command returns `Ok(exit_code)` for a
//! completed run (0 pass, 1 check failed) and `Err(message)` for unusable
//! input, which the caller maps to exit 2.

use std::fs;
use std::ops::RangeInclusive;
use std::process::ExitCode;

use serde_json::{json, Value};

use coverpoly::wp::{
    check_degree_sum, check_five_triples, ConstructiveOutcome, IdentityOutcome, PairRecord,
    PowerAnalysis,
};
use coverpoly::{
    analyze_power, cover_ideal, find_decomposition, first_divergence, minimal_vertex_covers,
    random_decomposed_graph, variable_order, verify_decomposition, BlockLimits, Decomposition,
    Graph, Monomial, MonomialIdeal, VariableOrder, WitnessReport, WpOutcome,
};

use crate::report::{Phases, Report};

const PASS: ExitCode = ExitCode::SUCCESS;
const FAIL: ExitCode = ExitCode::FAILURE;

fn read_file(path: &str) -> Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("cannot read `{path}`: {e}"))
}

fn load_graph(path: &str) -> Result<Graph, String> {
    Graph::parse(&read_file(path)?).map_err(|e| format!("`{path}`: {e}"))
}

// ---------------------------------------------------------------------------
// check-cactus
// ---------------------------------------------------------------------------

pub fn check_cactus(path: &str, json_out: bool) -> Result<ExitCode, String> {
    let graph = load_graph(path)?;
    let cactus = graph.is_cactus();
    if json_out {
        let mut report = Report::new("check-cactus");
        report.input("graph", path);
        report.results = json!({
            "vertices": graph.vertex_count(),
            "edges": graph.edge_count(),
            "cactus": cactus,
        });
        report.findings = usize::from(!cactus);
        report.print_json();
    } else {
        println!(
            "graph: {} vertices, {} edges",
            graph.vertex_count(),
            graph.edge_count()
        );
        println!("cactus: {cactus}");
    }
    Ok(if cactus { PASS } else { FAIL })
}

// ---------------------------------------------------------------------------
// decompose
// ---------------------------------------------------------------------------

pub fn decompose(path: &str, json_out: bool) -> Result<ExitCode, String> {
    let graph = load_graph(path)?;
    if !graph.is_cactus() {
        return Err(format!("`{path}` is not a cactus; decomposition undefined"));
    }
    let found = find_decomposition(&graph).map_err(|e| e.to_string())?;
    if json_out {
        let mut report = Report::new("decompose");
        report.input("graph", path);
        report.results = json!({
            "decomposition": found
                .as_ref()
                .map(|d| serde_json::to_value(d).expect("serializes")),
        });
        report.findings = usize::from(found.is_none());
        report.print_json();
    } else {
        match &found {
            Some(d) => println!("{}", d.to_json()),
            None => println!("none"),
        }
    }
    Ok(if found.is_some() { PASS } else { FAIL })
}

// ---------------------------------------------------------------------------
// covers
// ---------------------------------------------------------------------------

pub fn covers(path: &str, json_out: bool) -> Result<ExitCode, String> {
    let graph = load_graph(path)?;
    let covers = minimal_vertex_covers(&graph).map_err(|e| e.to_string())?;
    let ideal = cover_ideal(&graph).map_err(|e| e.to_string())?;
    if json_out {
        let mut report = Report::new("covers");
        report.input("graph", path);
        report.results = json!({
            "covers": covers
                .iter()
                .map(|c| c.iter().cloned().collect::<Vec<String>>())
                .collect::<Vec<_>>(),
            "ideal": ideal_json(&ideal),
        });
        report.print_json();
    } else {
        println!("{} minimal vertex covers", covers.len());
        for cover in &covers {
            let labels: Vec<&str> = cover.iter().map(|s| s.as_str()).collect();
            println!("  {{{}}}", labels.join(", "));
        }
        println!("J(G) = ({})", join_generators(&ideal));
    }
    Ok(PASS)
}

fn ideal_json(ideal: &MonomialIdeal) -> Value {
    json!({
        "generators": ideal
            .generators()
            .iter()
            .map(|m| m.to_string())
            .collect::<Vec<_>>(),
    })
}

fn join_generators(ideal: &MonomialIdeal) -> String {
    ideal
        .generators()
        .iter()
        .map(|m| m.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

// ---------------------------------------------------------------------------
// ideal-power
// ---------------------------------------------------------------------------

pub fn ideal_power(path: &str, k: usize, json_out: bool) -> Result<ExitCode, String> {
    let graph = load_graph(path)?;
    let ideal = cover_ideal(&graph).map_err(|e| e.to_string())?;
    let power = ideal.power(k).map_err(|e| e.to_string())?;
    if json_out {
        let mut report = Report::new("ideal-power");
        report.input("graph", path);
        report.input("k", k);
        report.results = json!({
            "k": k,
            "base_generators": ideal.len(),
            "ideal": ideal_json(&power),
        });
        report.print_json();
    } else {
        println!("|G(J)| = {}, |G(J^{k})| = {}", ideal.len(), power.len());
        for gen in power.generators() {
            println!("  {gen}");
        }
    }
    Ok(PASS)
}

// ---------------------------------------------------------------------------
// shared pipeline pieces
// ---------------------------------------------------------------------------

struct Pipeline {
    graph: Graph,
    decomposition: Option<Decomposition>,
    order: VariableOrder,
}

/// Resolves graph, decomposition, and variable order from the flags.
/// `order_flag` is `auto` (derive from the decomposition, searching for
/// one when not supplied) or a path to an order file; with an explicit
/// order file the decomposition stays optional and only feeds the
/// constructive witness route.
fn resolve_pipeline(
    graph_path: &str,
    order_flag: &str,
    decomposition_path: Option<&str>,
    require_cactus: bool,
) -> Result<Pipeline, String> {
    let graph = load_graph(graph_path)?;
    if require_cactus && !graph.is_cactus() {
        return Err(format!("`{graph_path}` is not a cactus (--require-cactus)"));
    }
    let decomposition = match decomposition_path {
        Some(path) => {
            let d = Decomposition::from_json(&read_file(path)?).map_err(|e| e.to_string())?;
            let report = verify_decomposition(&graph, &d);
            if !report.is_valid() {
                return Err(format!(
                    "decomposition `{path}` invalid: {}",
                    report.violations.join("; ")
                ));
            }
            Some(d)
        }
        None if order_flag == "auto" => {
            if !graph.is_cactus() {
                return Err(format!(
                    "`{graph_path}` is not a cactus; cannot search a decomposition (use --order FILE)"
                ));
            }
            let found = find_decomposition(&graph).map_err(|e| e.to_string())?;
            match found {
                Some(d) => Some(d),
                None => {
                    return Err(format!(
                        "`{graph_path}` admits no decomposition; supply --order FILE"
                    ))
                }
            }
        }
        None => None,
    };
    let order = if order_flag == "auto" {
        let d = decomposition
            .as_ref()
            .expect("auto order implies decomposition");
        variable_order(&graph, d).map_err(|e| e.to_string())?
    } else {
        let ord = VariableOrder::parse(&read_file(order_flag)?).map_err(|e| e.to_string())?;
        for v in graph.labels() {
            if !ord.contains(v) {
                return Err(format!("order file misses vertex `{v}`"));
            }
        }
        ord
    };
    Ok(Pipeline {
        graph,
        decomposition,
        order,
    })
}

fn witness_json(report: &WitnessReport) -> Value {
    serde_json::to_value(report).expect("witness serializes")
}

fn pair_json(record: &PairRecord) -> Value {
    let witness = match &record.constructive {
        Some(ConstructiveOutcome::Witness(w)) => Some(w),
        _ => record.brute.as_ref(),
    };
    json!({
        "f": record.f.to_string(),
        "g": record.g.to_string(),
        "z": record.z,
        "block_position": record.z_block_position,
        "witness": witness.map(witness_json),
        "brute_force_w": record.brute.as_ref().map(|w| w.w.clone()),
        "constructive_error": match &record.constructive {
            Some(ConstructiveOutcome::Failed(e)) => Some(e.clone()),
            _ => None,
        },
        "identities": match &record.identities {
            Some(IdentityOutcome::Report(r)) => {
                serde_json::to_value(&r.entries).expect("identity report serializes")
            }
            Some(IdentityOutcome::Failed(e)) => json!({ "error": e }),
            None => Value::Null,
        },
    })
}

struct KSummary {
    k: usize,
    power_size: usize,
    analysis: PowerAnalysis,
    degree_sum_violations: usize,
}

impl KSummary {
    fn findings(&self) -> usize {
        usize::from(!self.analysis.wp_ok())
            + self.analysis.agreement_failures()
            + self.analysis.identity_violations()
            + self.analysis.y5_divergences()
            + self.degree_sum_violations
    }

    fn json(&self, include_pairs: bool) -> Value {
        let outcome = self.analysis.outcome();
        let mut value = json!({
            "k": self.k,
            "power_generators": self.power_size,
            "wp": if self.analysis.wp_ok() { "ok" } else { "counterexample" },
            "counterexample": match &outcome {
                WpOutcome::Ok => Value::Null,
                WpOutcome::Counterexample(ce) => json!({
                    "f": ce.f.to_string(),
                    "g": ce.g.to_string(),
                    "z": ce.z,
                }),
            },
            "divergent_pairs": self.analysis.records.len(),
            "methods": self.analysis.method_counts(),
            "agreement_failures": self.analysis.agreement_failures(),
            "identity_violations": self.analysis.identity_violations(),
            "y5_divergences": self.analysis.y5_divergences(),
            "degree_sum_violations": self.degree_sum_violations,
        });
        if include_pairs {
            value["pairs"] = Value::Array(
                self.analysis
                    .records
                    .iter()
                    .map(pair_json)
                    .collect::<Vec<_>>(),
            );
        }
        value
    }

    fn human_line(&self) -> String {
        let methods = self
            .analysis
            .method_counts()
            .iter()
            .map(|(m, c)| format!("{m}: {c}"))
            .collect::<Vec<_>>()
            .join(", ");
        let verdict = match self.analysis.outcome() {
            WpOutcome::Ok => "ok".to_string(),
            WpOutcome::Counterexample(ce) => {
                format!("counterexample f={} g={} z={}", ce.f, ce.g, ce.z)
            }
        };
        format!(
            "k={}: |G(J^{})| = {}, divergent pairs = {}, {} ({})",
            self.k,
            self.k,
            self.power_size,
            self.analysis.records.len(),
            verdict,
            if methods.is_empty() {
                "no pairs"
            } else {
                &methods
            }
        )
    }
}

fn run_ks(
    pipeline: &Pipeline,
    base: &MonomialIdeal,
    ks: RangeInclusive<usize>,
) -> Result<Vec<KSummary>, String> {
    let mut out = Vec::new();
    for k in ks {
        let power = base.power(k).map_err(|e| e.to_string())?;
        let analysis = analyze_power(
            base,
            k,
            &power,
            &pipeline.order,
            &pipeline.graph,
            pipeline.decomposition.as_ref(),
        )
        .map_err(|e| e.to_string())?;
        let degree_sum_violations = pipeline
            .decomposition
            .as_ref()
            .map(|d| check_degree_sum(&power, k, d).len())
            .unwrap_or(0);
        out.push(KSummary {
            k,
            power_size: power.len(),
            analysis,
            degree_sum_violations,
        });
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// wp-check
// ---------------------------------------------------------------------------

pub fn wp_check(
    graph_path: &str,
    ks: RangeInclusive<usize>,
    order_flag: &str,
    decomposition_path: Option<&str>,
    require_cactus: bool,
    json_out: bool,
) -> Result<ExitCode, String> {
    let mut phases = Phases::new();
    let pipeline = resolve_pipeline(graph_path, order_flag, decomposition_path, require_cactus)?;
    phases.mark("resolve");
    let base = cover_ideal(&pipeline.graph)
        .map_err(|e| e.to_string())?
        .with_order(pipeline.order.clone())
        .map_err(|e| e.to_string())?;
    let five_triple_violations = pipeline
        .decomposition
        .as_ref()
        .map(|d| check_five_triples(&base, d).len())
        .unwrap_or(0);
    phases.mark("cover-ideal");
    let summaries = run_ks(&pipeline, &base, ks.clone())?;
    phases.mark("check");

    let all_ok = summaries.iter().all(|s| s.analysis.wp_ok());
    let findings: usize =
        summaries.iter().map(|s| s.findings()).sum::<usize>() + five_triple_violations;

    if json_out {
        let mut report = Report::new("wp-check");
        report.input("graph", graph_path);
        report.input("k", format!("{}..{}", ks.start(), ks.end()));
        report.input("order", order_flag);
        report.input("decomposition", decomposition_path.unwrap_or("auto"));
        report.results = json!({
            "vertices": pipeline.graph.vertex_count(),
            "edges": pipeline.graph.edge_count(),
            "order": pipeline.order.sequence(),
            "base_generators": base.len(),
            "five_triple_violations": five_triple_violations,
            "powers": summaries.iter().map(|s| s.json(true)).collect::<Vec<_>>(),
        });
        report.findings = findings;
        report.timings_ms = phases.into_timings();
        report.print_json();
    } else {
        println!(
            "graph: {} vertices, {} edges",
            pipeline.graph.vertex_count(),
            pipeline.graph.edge_count()
        );
        if let Some(d) = &pipeline.decomposition {
            println!(
                "decomposition: {} cliques, {} five-cycles, {} four-cycle edges",
                d.cliques.len(),
                d.five_cycles.len(),
                d.four_cycle_edges.len()
            );
        }
        println!("order: {}", pipeline.order.sequence().join(" > "));
        println!("J(G): {} generators", base.len());
        for summary in &summaries {
            println!("{}", summary.human_line());
        }
        if pipeline.decomposition.is_some() {
            let disagreements: usize = summaries
                .iter()
                .map(|s| s.analysis.agreement_failures())
                .sum();
            let identity: usize = summaries
                .iter()
                .map(|s| s.analysis.identity_violations())
                .sum();
            println!(
                "cross-checks: {disagreements} witness disagreements, {identity} identity violations, {five_triple_violations} five-triple violations"
            );
        }
        println!("result: {}", if all_ok { "ok" } else { "counterexample" });
    }
    Ok(if all_ok { PASS } else { FAIL })
}

// ---------------------------------------------------------------------------
// witness
// ---------------------------------------------------------------------------

pub fn witness(
    graph_path: &str,
    k: usize,
    f_text: &str,
    g_text: &str,
    order_flag: &str,
    decomposition_path: Option<&str>,
    json_out: bool,
) -> Result<ExitCode, String> {
    let pipeline = resolve_pipeline(graph_path, order_flag, decomposition_path, false)?;
    let f = Monomial::parse(f_text).map_err(|e| e.to_string())?;
    let g = Monomial::parse(g_text).map_err(|e| e.to_string())?;
    let base = cover_ideal(&pipeline.graph)
        .map_err(|e| e.to_string())?
        .with_order(pipeline.order.clone())
        .map_err(|e| e.to_string())?;
    let power = base.power(k).map_err(|e| e.to_string())?;
    for (name, m) in [("f", &f), ("g", &g)] {
        if !power.generators().contains(m) {
            return Err(format!(
                "--{name} `{m}` is not a minimal generator of J^{k}"
            ));
        }
    }
    let record = {
        let analysis = analyze_power(
            &base,
            k,
            &MonomialIdeal::from_generators(vec![f.clone(), g.clone()])
                .with_order(pipeline.order.clone())
                .map_err(|e| e.to_string())?,
            &pipeline.order,
            &pipeline.graph,
            pipeline.decomposition.as_ref(),
        )
        .map_err(|e| e.to_string())?;
        analysis.records.into_iter().find(|r| r.f == f && r.g == g)
    };

    match record {
        None => {
            let reversed = first_divergence(&g, &f, &pipeline.order)
                .map_err(|e| e.to_string())?
                .is_some();
            if json_out {
                let mut report = Report::new("witness");
                report.input("graph", graph_path);
                report.input("k", k);
                report.input("f", f_text);
                report.input("g", g_text);
                report.results = json!({
                    "divergence": Value::Null,
                    "note": if reversed {
                        "the first differing variable favors g; swap the pair"
                    } else {
                        "the monomials agree on every variable"
                    },
                });
                report.print_json();
            } else {
                println!("no divergence with deg_z f > deg_z g; nothing to witness");
            }
            Ok(PASS)
        }
        Some(record) => {
            let ok = record.brute.is_some();
            if json_out {
                let mut report = Report::new("witness");
                report.input("graph", graph_path);
                report.input("k", k);
                report.input("f", f_text);
                report.input("g", g_text);
                report.results = pair_json(&record);
                report.findings = usize::from(!ok);
                report.print_json();
            } else {
                println!("divergence at z = {}", record.z);
                if let Some(pos) = record.z_block_position {
                    println!("z sits at position {pos} of a 5-cycle block");
                }
                match &record.constructive {
                    Some(ConstructiveOutcome::Witness(w)) => {
                        println!(
                            "constructive: w = {}, method = {}, certificate = ({}) cofactor {}",
                            w.w,
                            w.method.as_str(),
                            w.certificate
                                .factors
                                .iter()
                                .map(|m| m.to_string())
                                .collect::<Vec<_>>()
                                .join(")("),
                            w.certificate.cofactor
                        );
                    }
                    Some(ConstructiveOutcome::Failed(e)) => {
                        println!("constructive: structural violation: {e}");
                    }
                    None => println!("constructive: not applicable"),
                }
                match &record.brute {
                    Some(w) => println!(
                        "brute-force: w = {}, certificate = ({})",
                        w.w,
                        w.certificate
                            .factors
                            .iter()
                            .map(|m| m.to_string())
                            .collect::<Vec<_>>()
                            .join(")(")
                    ),
                    None => println!("brute-force: no witness; the pair is a counterexample"),
                }
            }
            Ok(if ok { PASS } else { FAIL })
        }
    }
}

// ---------------------------------------------------------------------------
// fuzz
// ---------------------------------------------------------------------------

fn parse_limits(text: &str) -> Result<BlockLimits, String> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    if parts.len() != 3 {
        return Err(format!(
            "--limits expects `cliques,five_cycles,four_cycles`, got `{text}`"
        ));
    }
    let nums: Vec<usize> = parts
        .iter()
        .map(|p| p.parse::<usize>().map_err(|_| format!("bad limit `{p}`")))
        .collect::<Result<Vec<_>, String>>()?;
    Ok(BlockLimits::new(nums[0], nums[1], nums[2]))
}

pub fn fuzz(
    seed: u64,
    n: usize,
    ks: RangeInclusive<usize>,
    limits_text: &str,
    strict: bool,
    inject_bad_decomposition: bool,
    json_out: bool,
) -> Result<ExitCode, String> {
    let limits = parse_limits(limits_text)?;
    let mut phases = Phases::new();
    let mut instance_values: Vec<Value> = Vec::new();
    let mut human_lines: Vec<String> = Vec::new();
    let mut findings = 0usize;

    let mut run_one = |index: usize, instance_seed: u64, corrupt: bool| -> Result<(), String> {
        let (graph, mut decomposition) =
            random_decomposed_graph(instance_seed, limits).map_err(|e| e.to_string())?;
        if corrupt {
            // drop one block so the decomposition no longer covers V(G)
            if !decomposition.cliques.is_empty() {
                decomposition.cliques.pop();
            } else if !decomposition.five_cycles.is_empty() {
                decomposition.five_cycles.pop();
            } else {
                decomposition.four_cycle_edges.pop();
            }
        }
        let verify = verify_decomposition(&graph, &decomposition);
        if !verify.is_valid() {
            findings += 1;
            instance_values.push(json!({
                "instance": index,
                "seed": instance_seed,
                "vertices": graph.vertex_count(),
                "invalid_decomposition": verify.violations,
            }));
            human_lines.push(format!(
                "instance {index} (seed {instance_seed}): invalid decomposition ({} violations)",
                verify.violations.len()
            ));
            return Ok(());
        }
        let pipeline = Pipeline {
            order: variable_order(&graph, &decomposition).map_err(|e| e.to_string())?,
            decomposition: Some(decomposition),
            graph,
        };
        let base = cover_ideal(&pipeline.graph)
            .map_err(|e| e.to_string())?
            .with_order(pipeline.order.clone())
            .map_err(|e| e.to_string())?;
        let five_triple_violations =
            check_five_triples(&base, pipeline.decomposition.as_ref().expect("set above")).len();
        let summaries = run_ks(&pipeline, &base, ks.clone())?;
        let instance_findings: usize =
            summaries.iter().map(|s| s.findings()).sum::<usize>() + five_triple_violations;
        findings += instance_findings;
        let wp_all = summaries.iter().all(|s| s.analysis.wp_ok());
        instance_values.push(json!({
            "instance": index,
            "seed": instance_seed,
            "vertices": pipeline.graph.vertex_count(),
            "five_triple_violations": five_triple_violations,
            "powers": summaries.iter().map(|s| s.json(false)).collect::<Vec<_>>(),
        }));
        human_lines.push(format!(
            "instance {index} (seed {instance_seed}): {} vertices, wp {} ({} findings)",
            pipeline.graph.vertex_count(),
            if wp_all { "ok" } else { "FAIL" },
            instance_findings
        ));
        Ok(())
    };

    for i in 0..n {
        run_one(i, seed.wrapping_add(i as u64), false)?;
    }
    if inject_bad_decomposition {
        run_one(n, seed, true)?;
    }
    phases.mark("campaign");

    if json_out {
        let mut report = Report::new("fuzz");
        report.input("seed", seed);
        report.input("n", n);
        report.input("k", format!("{}..{}", ks.start(), ks.end()));
        report.input("limits", limits_text);
        report.input("strict", strict);
        report.results = json!({
            "instances": instance_values,
            "total_findings": findings,
        });
        report.findings = findings;
        report.timings_ms = phases.into_timings();
        report.print_json();
    } else {
        for line in &human_lines {
            println!("{line}");
        }
        println!(
            "campaign: {} instances, {} findings",
            instance_values.len(),
            findings
        );
    }
    Ok(if strict && findings > 0 { FAIL } else { PASS })
}
